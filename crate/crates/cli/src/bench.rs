//! Timed replay of generated insertion streams with the engine's own
//! instrumentation counters attached.

use std::collections::HashSet;
use std::time::Instant;

use hstats::graph::DynamicGraph;
use serde::Serialize;

use crate::synth::{self, SynthSpec};

#[derive(Debug, Serialize)]
pub struct BenchReport {
    pub model: String,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    /// Edge insertions replayed.
    pub ops: u64,
    pub wall_millis: f64,
    pub per_op_micros: f64,
    pub h_index: u64,
    pub max_core_size: usize,
    pub probe_counter: u64,
    pub probes_per_op: f64,
    /// Instrumented ceiling: three probes per update per core member plus
    /// the table lookup.
    pub probe_bound_per_op: f64,
    pub core_additions: u64,
    pub core_removals: u64,
    pub harmonic_sum: f64,
    /// (core_additions + core_removals) / harmonic_sum.
    pub churn_ratio: f64,
    pub dict_ops: u64,
}

fn model_name(spec: SynthSpec) -> (&'static str, u64) {
    match spec {
        SynthSpec::Ba { seed, .. } => ("ba", seed),
        SynthSpec::Split { .. } => ("split", 0),
        SynthSpec::CliqueIsolates { .. } => ("clique-plus-isolates", 0),
        SynthSpec::Gnp { seed, .. } => ("gnp", seed),
    }
}

/// Generate the stream, replay up to `ops_limit` edge insertions, and
/// report timing plus counters.
pub fn run(spec: SynthSpec, ops_limit: Option<u64>) -> Result<BenchReport, String> {
    let generated = synth::generate(spec)?;
    let limit = ops_limit
        .map(|cap| cap.min(generated.edges.len() as u64))
        .unwrap_or(generated.edges.len() as u64) as usize;
    let edges = &generated.edges[..limit];

    let mut engine = DynamicGraph::new();
    let mut known: HashSet<u64> = HashSet::new();
    let mut max_core = 0usize;
    let started = Instant::now();
    for &(u, v) in edges {
        for vertex in [u, v] {
            if known.insert(vertex) {
                engine
                    .add_vertex(vertex)
                    .map_err(|e| format!("generated stream broke the engine: {e}"))?;
            }
        }
        engine
            .add_edge(u, v)
            .map_err(|e| format!("generated stream broke the engine: {e}"))?;
        max_core = max_core.max(engine.core_size());
    }
    let wall = started.elapsed();

    let ops = edges.len() as u64;
    let counters = engine.partition().counters();
    let churn = counters.core_additions + counters.core_removals;
    let (model, seed) = model_name(spec);
    Ok(BenchReport {
        model: model.to_string(),
        seed,
        n: engine.n(),
        m: engine.m(),
        ops,
        wall_millis: wall.as_secs_f64() * 1e3,
        per_op_micros: if ops == 0 {
            0.0
        } else {
            wall.as_secs_f64() * 1e6 / ops as f64
        },
        h_index: engine.h_index(),
        max_core_size: max_core,
        probe_counter: engine.probe_count(),
        probes_per_op: if ops == 0 {
            0.0
        } else {
            engine.probe_count() as f64 / ops as f64
        },
        probe_bound_per_op: 3.0 * (max_core as f64 + 1.0),
        core_additions: counters.core_additions,
        core_removals: counters.core_removals,
        harmonic_sum: counters.harmonic_sum,
        churn_ratio: if counters.harmonic_sum > 0.0 {
            churn as f64 / counters.harmonic_sum
        } else {
            0.0
        },
        dict_ops: engine.dict_op_count(),
    })
}
