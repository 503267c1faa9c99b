//! Command implementations, parameterized over output sinks so tests can
//! capture stdout and stderr byte for byte.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use hstats::graph::{DynamicGraph, EngineConfig, GraphError};
use serde::Serialize;

use crate::bench;
use crate::parse::{self, StreamOp};
use crate::report::{render, ScalingRow};
use crate::synth::{self, SynthSpec};

/// Failures split by exit code: bad input (2) versus a broken internal
/// invariant (1).
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Assertion(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Assertion(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn op_error(line: usize, e: &GraphError) -> CliError {
    match e {
        GraphError::Inconsistency(_) => CliError::Assertion(format!("line {line}: {e}")),
        _ => CliError::Input(format!("line {line}: {e}")),
    }
}

/// Statistics snapshot serialized for `stats` and each stream query. The
/// optional fields appear exactly when the matching feature is enabled.
#[derive(Debug, Serialize)]
struct StatsDump {
    n: usize,
    m: usize,
    h: u64,
    c3: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    g0: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g1: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g2: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g3: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p2: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p3: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s1: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s2: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s3: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s4: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    total_weight: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    color_census: Option<BTreeMap<String, u64>>,
}

fn stats_dump(engine: &DynamicGraph) -> Result<StatsDump, CliError> {
    let census = engine.census_counter().is_some();
    let grab = |value: Result<u128, GraphError>| -> Result<Option<u128>, CliError> {
        match value {
            Ok(v) => Ok(Some(v)),
            Err(GraphError::Inconsistency(msg)) => Err(CliError::Assertion(msg)),
            Err(e) => Err(CliError::Input(e.to_string())),
        }
    };
    let induced = if census {
        engine.induced_census().map(Some).map_err(|e| match e {
            GraphError::Inconsistency(msg) => CliError::Assertion(msg),
            other => CliError::Input(other.to_string()),
        })?
    } else {
        None
    };
    Ok(StatsDump {
        n: engine.n(),
        m: engine.m(),
        h: engine.h_index(),
        c3: engine.triangle_count(),
        g0: induced.map(|g| g[0]),
        g1: induced.map(|g| g[1]),
        g2: induced.map(|g| g[2]),
        g3: induced.map(|g| g[3]),
        p2: if census { grab(engine.p2_count())? } else { None },
        p3: if census { grab(engine.path3_count())? } else { None },
        s1: if census { grab(engine.star_count(1))? } else { None },
        s2: if census { grab(engine.star_count(2))? } else { None },
        s3: if census { grab(engine.star_count(3))? } else { None },
        s4: if census { grab(engine.star_count(4))? } else { None },
        total_weight: engine.total_triangle_weight().ok(),
        color_census: engine.triangle_color_census().ok().map(|census| {
            census
                .iter()
                .map(|(&[a, b, c], &count)| (format!("{a},{b},{c}"), count))
                .collect()
        }),
    })
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string(value)
        .map_err(|e| CliError::Assertion(format!("serialization failed: {e}")))?;
    writeln!(out, "{text}")?;
    Ok(())
}

/// `stats`: one JSON object for a static edge list.
pub fn run_stats(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let parsed = parse::parse_edge_list(&text)
        .map_err(|e| CliError::Input(format!("{}:{}", path.display(), e)))?;
    for warning in &parsed.warnings {
        writeln!(err, "warning: {warning}")?;
    }
    let mut engine = DynamicGraph::new();
    for id in 0..parsed.interner.len() as u64 {
        engine.add_vertex(id).map_err(|e| op_error(0, &e))?;
    }
    for &(u, v, _) in &parsed.edges {
        engine.add_edge(u, v).map_err(|e| op_error(0, &e))?;
    }
    emit_json(out, &stats_dump(&engine)?)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct StreamFlags {
    pub census: bool,
    pub colors: Option<u32>,
    pub weighted: bool,
    pub lenient: bool,
}

#[derive(Debug, Serialize)]
struct CountersDump {
    core_additions: u64,
    core_removals: u64,
    harmonic_sum: f64,
    probe_counter: u64,
}

/// `stream`: replay an operation file, answering each `?` with the
/// current statistics and closing with the gradual counters.
pub fn run_stream(
    path: &Path,
    flags: StreamFlags,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut engine = DynamicGraph::with_config(EngineConfig {
        weighted: flags.weighted,
        colors: flags.colors,
        census: flags.census,
        ..EngineConfig::default()
    })
    .map_err(|e| CliError::Input(e.to_string()))?;

    let mut interner = parse::Interner::default();
    let mut skipped = 0u64;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let op = match parse::parse_op_line(raw, line, &mut interner) {
            Ok(None) => continue,
            Ok(Some(op)) => op,
            Err(e) => {
                if flags.lenient {
                    skipped += 1;
                    writeln!(err, "skipping {e}")?;
                    continue;
                }
                return Err(CliError::Input(e.to_string()));
            }
        };
        let result = match op {
            StreamOp::AddVertex { id, color: Some(c) } => engine.add_colored_vertex(id, c),
            StreamOp::AddVertex { id, color: None } => engine.add_vertex(id),
            StreamOp::RemoveVertex { id } => engine.remove_vertex(id),
            StreamOp::AddEdge { u, v, weight: Some(w) } => engine.add_weighted_edge(u, v, w),
            StreamOp::AddEdge { u, v, weight: None } => engine.add_edge(u, v),
            StreamOp::RemoveEdge { u, v } => engine.remove_edge(u, v),
            StreamOp::Query => {
                emit_json(out, &stats_dump(&engine)?)?;
                Ok(())
            }
        };
        if let Err(e) = result {
            let error = op_error(line, &e);
            match error {
                CliError::Assertion(_) => return Err(error),
                CliError::Input(ref msg) => {
                    if flags.lenient {
                        skipped += 1;
                        writeln!(err, "skipping {msg}")?;
                    } else {
                        return Err(error);
                    }
                }
            }
        }
    }
    let counters = engine.partition().counters();
    emit_json(
        out,
        &CountersDump {
            core_additions: counters.core_additions,
            core_removals: counters.core_removals,
            harmonic_sum: counters.harmonic_sum,
            probe_counter: engine.probe_count(),
        },
    )?;
    if skipped > 0 {
        writeln!(err, "skipped {skipped} illegal operations")?;
    }
    Ok(())
}

/// `synth`: write a generated edge list to a file or the output sink.
pub fn run_synth(
    spec: SynthSpec,
    out_path: Option<&PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let generated = synth::generate(spec).map_err(CliError::Input)?;
    if generated.isolated > 0 {
        writeln!(
            err,
            "warning: {} isolated vertices cannot appear in an edge list",
            generated.isolated
        )?;
    }
    let mut text = String::with_capacity(generated.edges.len() * 8);
    for (u, v) in &generated.edges {
        text.push_str(&format!("{u} {v}\n"));
    }
    match out_path {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// `hscaling`: scaling CSV over every file in a directory.
pub fn run_hscaling(dir: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let entries = fs::read_dir(dir)
        .map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| CliError::Input(e.to_string()))?;
        if entry.file_type().map_err(|e| CliError::Input(e.to_string()))?.is_file() {
            files.push(entry.path());
        }
    }
    files.sort();

    let mut rows = Vec::new();
    for path in files {
        let name = path
            .file_stem()
            .map(|stem| stem.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) => {
                writeln!(err, "{}: {e}", path.display())?;
                continue;
            }
        };
        let parsed = match parse::parse_edge_list(&text) {
            Ok(parsed) => parsed,
            Err(e) => {
                writeln!(err, "{}:{e}", path.display())?;
                continue;
            }
        };
        let mut engine = DynamicGraph::with_config(EngineConfig {
            census: false,
            ..EngineConfig::default()
        })
        .expect("static configuration is valid");
        for id in 0..parsed.interner.len() as u64 {
            engine.add_vertex(id).map_err(|e| op_error(0, &e))?;
        }
        for &(u, v, _) in &parsed.edges {
            engine.add_edge(u, v).map_err(|e| op_error(0, &e))?;
        }
        rows.push(ScalingRow { name, n: engine.n() as u64, h: engine.h_index() });
    }
    out.write_all(render(&rows).as_bytes())?;
    Ok(())
}

/// `bench`: timed synthetic replay with instrumentation counters.
pub fn run_bench(
    spec: SynthSpec,
    ops: Option<u64>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let report = bench::run(spec, ops).map_err(CliError::Input)?;
    emit_json(out, &report)
}
