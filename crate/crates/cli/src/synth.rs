//! Synthetic graph generators.
//!
//! Every generator is a pure function of its parameters and seed, emitting
//! edges as (u, v) pairs over integer vertex labels. Isolated vertices
//! cannot appear in an edge list, so generators report how many were left
//! out and callers surface that as a warning.

use std::collections::BTreeSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SynthSpec {
    /// Preferential attachment: each new vertex attaches to `attach`
    /// distinct earlier vertices chosen proportionally to degree.
    Ba { n: u64, attach: u64, seed: u64 },
    /// Clique of `clique` vertices, every other vertex adjacent to the
    /// whole clique.
    Split { clique: u64, n: u64 },
    /// Clique of `clique` vertices plus n - clique isolated vertices.
    CliqueIsolates { clique: u64, n: u64 },
    /// Independent edges with probability `prob`.
    Gnp { n: u64, prob: f64, seed: u64 },
}

#[derive(Debug, Default)]
pub struct SynthOutput {
    pub edges: Vec<(u64, u64)>,
    /// Vertices the edge list cannot represent.
    pub isolated: u64,
}

pub fn generate(spec: SynthSpec) -> Result<SynthOutput, String> {
    match spec {
        SynthSpec::Ba { n, attach, seed } => {
            if attach == 0 {
                return Err("attachment count must be positive".to_string());
            }
            Ok(preferential_attachment(n, attach, seed))
        }
        SynthSpec::Split { clique, n } => {
            if clique == 0 || clique > n {
                return Err(format!("clique size {clique} must lie in 1..={n}"));
            }
            let mut out = SynthOutput::default();
            push_clique(&mut out.edges, clique);
            for pendant in clique..n {
                for hub in 0..clique {
                    out.edges.push((hub, pendant));
                }
            }
            if n == 1 {
                out.isolated = 1;
            }
            Ok(out)
        }
        SynthSpec::CliqueIsolates { clique, n } => {
            if clique == 0 || clique > n {
                return Err(format!("clique size {clique} must lie in 1..={n}"));
            }
            let mut out = SynthOutput::default();
            push_clique(&mut out.edges, clique);
            out.isolated = n - clique + u64::from(clique == 1);
            Ok(out)
        }
        SynthSpec::Gnp { n, prob, seed } => {
            if !(0.0..=1.0).contains(&prob) {
                return Err(format!("edge probability {prob} must lie in [0, 1]"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = SynthOutput::default();
            let mut touched = vec![false; n as usize];
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random::<f64>() < prob {
                        out.edges.push((u, v));
                        touched[u as usize] = true;
                        touched[v as usize] = true;
                    }
                }
            }
            out.isolated = touched.iter().filter(|&&t| !t).count() as u64;
            Ok(out)
        }
    }
}

fn push_clique(edges: &mut Vec<(u64, u64)>, size: u64) {
    for u in 0..size {
        for v in u + 1..size {
            edges.push((u, v));
        }
    }
}

fn preferential_attachment(n: u64, attach: u64, seed: u64) -> SynthOutput {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SynthOutput::default();
    // One entry per edge endpoint; sampling an index uniformly picks a
    // vertex with probability proportional to its degree.
    let mut endpoints: Vec<u64> = Vec::new();
    for v in 1..n {
        let mut targets: BTreeSet<u64> = BTreeSet::new();
        if v <= attach {
            targets.extend(0..v);
        } else {
            while (targets.len() as u64) < attach {
                let pick = endpoints[rng.random_range(0..endpoints.len())];
                targets.insert(pick);
            }
        }
        for &target in &targets {
            out.edges.push((target, v));
            endpoints.push(target);
            endpoints.push(v);
        }
    }
    if n == 1 {
        out.isolated = 1;
    }
    out
}
