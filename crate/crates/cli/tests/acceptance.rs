//! Acceptance suite: one test per release criterion, each printing a PASS
//! line when its assertions hold.
//!
//! The random-trace criteria drive the engine and a from-scratch oracle
//! side by side over seeded operation sequences on small graphs; the
//! remaining criteria cover extremal constructions, asymptotics on
//! generated scale-free graphs, instrumentation budgets, the scaling
//! report's exact column arithmetic, and algebraic identities among the
//! maintained statistics.

use std::time::Instant;

use hstats::graph::{DynamicGraph, EngineConfig};
use hstats::oracle::SimpleGraph;
use hstats_cli::report::ScalingRow;
use hstats_cli::synth::{generate, SynthSpec};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

const MAX_ID: u64 = 12;
const TRACE_LEN: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Weights {
    Off,
    Uniform,
    Unit,
}

#[derive(Debug, Clone, Copy)]
enum Op {
    AddVertex(u64, u32),
    RemoveVertex(u64),
    AddEdge(u64, u64),
    RemoveEdge(u64, u64),
}

/// One engine+oracle pair walking a seeded trace. The operation stream is
/// a function of the seed alone: weights come from a second generator so
/// every weight mode sees identical topology.
struct Trace {
    engine: DynamicGraph,
    oracle: SimpleGraph,
    rng: ChaCha8Rng,
    weight_rng: ChaCha8Rng,
    weights: Weights,
    colors: Option<u32>,
}

impl Trace {
    fn new(seed: u64, weights: Weights, colors: Option<u32>) -> Self {
        let engine = DynamicGraph::with_config(EngineConfig {
            weighted: weights != Weights::Off,
            colors,
            census: true,
            k_star: 4,
        })
        .unwrap();
        Trace {
            engine,
            oracle: SimpleGraph::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            weight_rng: ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0001),
            weights,
            colors,
        }
    }

    fn live(&self) -> Vec<u64> {
        (1..=MAX_ID).filter(|&v| self.oracle.has_vertex(v)).collect()
    }

    fn absent_pairs(&self) -> Vec<(u64, u64)> {
        let vs = self.live();
        let mut out = Vec::new();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if !self.oracle.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn present_edges(&self) -> Vec<(u64, u64)> {
        self.oracle.edges().map(|(u, v, _)| (u, v)).collect()
    }

    fn pick(&mut self) -> Op {
        let roll = self.rng.random_range(0..100u32);
        let addable = self.absent_pairs();
        let removable = self.present_edges();
        let free: Vec<u64> = (1..=MAX_ID).filter(|&v| !self.oracle.has_vertex(v)).collect();
        let lonely: Vec<u64> = self
            .live()
            .into_iter()
            .filter(|&v| self.oracle.degree(v) == 0)
            .collect();

        // The color is always drawn so every weight mode consumes the
        // generator identically.
        let color = self.rng.random_range(0..3u32);
        if roll < 45 && !addable.is_empty() {
            let (u, v) = addable[self.rng.random_range(0..addable.len())];
            return Op::AddEdge(u, v);
        }
        if roll < 70 && !removable.is_empty() {
            let (u, v) = removable[self.rng.random_range(0..removable.len())];
            return Op::RemoveEdge(u, v);
        }
        if roll < 85 && !free.is_empty() {
            return Op::AddVertex(free[self.rng.random_range(0..free.len())], color);
        }
        if !lonely.is_empty() {
            return Op::RemoveVertex(lonely[self.rng.random_range(0..lonely.len())]);
        }
        if !addable.is_empty() {
            let (u, v) = addable[self.rng.random_range(0..addable.len())];
            return Op::AddEdge(u, v);
        }
        if !free.is_empty() {
            return Op::AddVertex(free[self.rng.random_range(0..free.len())], color);
        }
        let (u, v) = removable[self.rng.random_range(0..removable.len())];
        Op::RemoveEdge(u, v)
    }

    fn step(&mut self) -> Op {
        let op = self.pick();
        match op {
            Op::AddVertex(v, color) => {
                if self.colors.is_some() {
                    self.engine.add_colored_vertex(v, color).unwrap();
                    self.oracle.add_colored_vertex(v, color);
                } else {
                    self.engine.add_vertex(v).unwrap();
                    self.oracle.add_vertex(v);
                }
            }
            Op::RemoveVertex(v) => {
                self.engine.remove_vertex(v).unwrap();
                self.oracle.remove_vertex(v);
            }
            Op::AddEdge(u, v) => {
                let weight = match self.weights {
                    Weights::Off => None,
                    Weights::Uniform => Some(self.weight_rng.random::<f64>()),
                    Weights::Unit => Some(1.0),
                };
                match weight {
                    None => {
                        self.engine.add_edge(u, v).unwrap();
                        self.oracle.add_edge(u, v);
                    }
                    Some(w) => {
                        self.engine.add_weighted_edge(u, v, w).unwrap();
                        self.oracle.add_weighted_edge(u, v, w);
                    }
                }
            }
            Op::RemoveEdge(u, v) => {
                self.engine.remove_edge(u, v).unwrap();
                self.oracle.remove_edge(u, v);
            }
        }
        op
    }
}

fn binomial3(n: u128) -> u128 {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Criterion 1: on seeded mixed traces over at most 12 vertices, every
/// maintained statistic equals the brute-force recomputation after every
/// operation, with the colored census at a three-color palette.
#[test]
fn acceptance_1_exact_oracle_equivalence_on_random_traces() {
    let started = Instant::now();
    for seed in 0..1000u64 {
        let mut trace = Trace::new(seed, Weights::Off, Some(3));
        for step in 0..TRACE_LEN {
            trace.step();
            let engine = &trace.engine;
            let oracle = &trace.oracle;
            let at = || format!("seed {seed} step {step}");
            assert_eq!(engine.h_index(), oracle.h_index_brute(), "{}", at());
            assert_eq!(engine.triangle_count(), oracle.triangle_count_brute(), "{}", at());
            assert_eq!(
                engine.induced_census().unwrap(),
                oracle.induced_census_brute().map(u128::from),
                "{}",
                at()
            );
            assert_eq!(
                engine.noninduced_counts().unwrap(),
                oracle.noninduced_brute().map(u128::from),
                "{}",
                at()
            );
            assert_eq!(engine.p2_count().unwrap(), oracle.p2_brute() as u128, "{}", at());
            assert_eq!(engine.path3_count().unwrap(), oracle.p3_brute() as u128, "{}", at());
            for order in 1..=4u64 {
                assert_eq!(
                    engine.star_count(order as usize).unwrap(),
                    oracle.stars_brute(order),
                    "{}",
                    at()
                );
            }
            assert_eq!(
                engine.triangle_color_census().unwrap(),
                &oracle.colored_triangles_brute(),
                "{}",
                at()
            );
            engine
                .partition()
                .check_invariants()
                .unwrap_or_else(|e| panic!("{}: {e}", at()));
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "trace suite took {elapsed:?}, budget is one minute"
    );
    println!(
        "[PASS] acceptance 1: 1000 mixed traces match the oracle exactly ({:.1}s)",
        elapsed.as_secs_f64()
    );
}

/// Criterion 2: the same traces with uniform random weights agree with the
/// weighted oracle to 1e-9 relative error, and with unit weights the
/// weighted total equals the plain count exactly.
#[test]
fn acceptance_2_weighted_totals_match_within_tolerance() {
    for seed in 0..1000u64 {
        let mut trace = Trace::new(seed, Weights::Uniform, None);
        for step in 0..TRACE_LEN {
            trace.step();
            assert_eq!(
                trace.engine.triangle_count(),
                trace.oracle.triangle_count_brute(),
                "seed {seed} step {step}"
            );
            let want = trace.oracle.weighted_triangles_brute();
            let got = trace.engine.total_triangle_weight().unwrap();
            assert!(
                (got - want).abs() <= 1e-9 * want.abs().max(1.0),
                "seed {seed} step {step}: weighted total {got} vs {want}"
            );
        }
    }
    for seed in 0..1000u64 {
        let mut trace = Trace::new(seed, Weights::Unit, None);
        for step in 0..TRACE_LEN {
            trace.step();
            assert_eq!(
                trace.engine.total_triangle_weight().unwrap(),
                trace.engine.triangle_count() as f64,
                "seed {seed} step {step}: unit weights must reproduce the count"
            );
        }
    }
    println!("[PASS] acceptance 2: weighted totals within 1e-9, unit weights exact");
}

fn build_static(edges: &[(u64, u64)]) -> DynamicGraph {
    let mut engine = DynamicGraph::new();
    let mut seen = std::collections::HashSet::new();
    for &(u, v) in edges {
        for x in [u, v] {
            if seen.insert(x) {
                engine.add_vertex(x).unwrap();
            }
        }
        engine.add_edge(u, v).unwrap();
    }
    engine
}

/// Criterion 3: extremal constructions hit their known h-indices: split
/// graphs realize h = ceil(m / (n - 1)), cliques realize h = c - 1 and
/// stay above the sqrt(2m) - 2 floor.
#[test]
fn acceptance_3_extremal_graphs_realize_known_h() {
    for (clique, n) in [(3u64, 10u64), (4, 14), (8, 50)] {
        let out = generate(SynthSpec::Split { clique, n }).unwrap();
        let engine = build_static(&out.edges);
        let m = engine.m() as u64;
        assert_eq!(engine.n() as u64, n);
        assert_eq!(engine.h_index(), clique, "split({clique}, {n})");
        let ceiling = m.div_ceil(n - 1);
        assert_eq!(ceiling, clique, "split({clique}, {n}): m = {m}");
    }
    for c in [5u64, 10, 20] {
        let out = generate(SynthSpec::CliqueIsolates { clique: c, n: c }).unwrap();
        let engine = build_static(&out.edges);
        let m = engine.m() as f64;
        assert_eq!(engine.h_index(), c - 1, "clique of {c}");
        assert!(
            engine.h_index() as f64 >= (2.0 * m).sqrt() - 2.0,
            "clique of {c} fell under the degeneracy floor"
        );
    }
    println!("[PASS] acceptance 3: split and clique extremals realize their h-indices");
}

fn ba_edges(n: u64, seed: u64) -> Vec<(u64, u64)> {
    generate(SynthSpec::Ba { n, attach: 3, seed }).unwrap().edges
}

/// Criterion 4: on scale-free insertion streams the core churn stays
/// within ten times the harmonic update measure, and the ratio does not
/// grow with stream length.
#[test]
fn acceptance_4_core_churn_is_harmonically_bounded() {
    for seed in 0..10u64 {
        // 3n - 6 edges: n = 3336 gives just over ten thousand.
        let edges = ba_edges(3336, seed);
        assert!(edges.len() >= 10_000);
        let mut engine = DynamicGraph::new();
        let mut seen = std::collections::HashSet::new();
        let mut ratio_at_1k = 0.0f64;
        for (index, &(u, v)) in edges.iter().take(10_000).enumerate() {
            for x in [u, v] {
                if seen.insert(x) {
                    engine.add_vertex(x).unwrap();
                }
            }
            engine.add_edge(u, v).unwrap();
            if index + 1 == 1_000 {
                let c = engine.partition().counters();
                ratio_at_1k =
                    (c.core_additions + c.core_removals) as f64 / c.harmonic_sum;
            }
        }
        let c = engine.partition().counters();
        let ratio_at_10k = (c.core_additions + c.core_removals) as f64 / c.harmonic_sum;
        assert!(
            ratio_at_10k <= 10.0,
            "seed {seed}: churn ratio {ratio_at_10k} out of budget"
        );
        if ratio_at_10k > 0.0 {
            assert!(
                ratio_at_10k < 2.0 * ratio_at_1k,
                "seed {seed}: churn ratio grew from {ratio_at_1k} to {ratio_at_10k}"
            );
        }
    }
    println!("[PASS] acceptance 4: churn ratio bounded by 10 and non-increasing");
}

/// Criterion 5: probe counts stay within three per core member (plus the
/// table lookup) per update, and the mean update cost stays below fifty
/// microseconds on ten-thousand and hundred-thousand edge streams.
#[test]
fn acceptance_5_probe_and_time_budgets_hold() {
    let mut total = 0.0f64;
    for (n, ops) in [(3_336u64, 10_000usize), (33_336, 100_000)] {
        let edges = ba_edges(n, 1);
        assert!(edges.len() >= ops);
        let mut engine = DynamicGraph::new();
        let mut seen = std::collections::HashSet::new();
        let mut max_core = 0usize;
        let started = Instant::now();
        for &(u, v) in edges.iter().take(ops) {
            for x in [u, v] {
                if seen.insert(x) {
                    engine.add_vertex(x).unwrap();
                }
            }
            engine.add_edge(u, v).unwrap();
            max_core = max_core.max(engine.core_size());
        }
        let elapsed = started.elapsed().as_secs_f64();
        total += elapsed;
        let per_op_micros = elapsed * 1e6 / ops as f64;
        let probes_per_op = engine.probe_count() as f64 / ops as f64;
        let bound = 3.0 * (max_core as f64 + 1.0);
        assert!(
            probes_per_op <= bound,
            "{ops} ops: {probes_per_op} probes/op over bound {bound}"
        );
        assert!(
            per_op_micros < 50.0,
            "{ops} ops: mean update cost {per_op_micros:.2} microseconds"
        );
    }
    assert!(total < 5.0, "insertion streams took {total:.2}s, budget five seconds");
    println!("[PASS] acceptance 5: probe bound and 50-microsecond mean update hold");
}

/// Criterion 6: the path table never stores more cells than the two-edge
/// paths with non-core midpoints, checked on every hundredth operation.
#[test]
fn acceptance_6_path_table_size_is_bounded() {
    for seed in 0..200u64 {
        let mut trace = Trace::new(seed, Weights::Off, None);
        for step in 1..=TRACE_LEN {
            trace.step();
            if step % 100 != 0 {
                continue;
            }
            let bound: u64 = trace
                .oracle
                .vertices()
                .filter(|&v| !trace.engine.in_core(v).unwrap())
                .map(|v| {
                    let d = trace.oracle.degree(v) as u64;
                    d * d.saturating_sub(1) / 2
                })
                .sum();
            assert!(
                (trace.engine.path_cell_count() as u64) <= bound,
                "seed {seed} step {step}: {} cells over bound {bound}",
                trace.engine.path_cell_count()
            );
        }
    }
    println!("[PASS] acceptance 6: path-table size within the non-core midpoint bound");
}

/// Criterion 7: scale-free graphs keep the h-index within the cube-root
/// envelope, and growing the graph tenfold raises h by at most 10^0.45.
#[test]
fn acceptance_7_scale_free_h_growth_is_sublinear() {
    for seed in [1u64, 2, 3] {
        let small = build_static(&ba_edges(1_000, seed));
        let large = build_static(&ba_edges(10_000, seed));
        let h_small = small.h_index() as f64;
        let h_large = large.h_index() as f64;
        assert!(
            h_small <= 3.0 * 1_000f64.cbrt(),
            "seed {seed}: h = {h_small} at a thousand vertices"
        );
        assert!(
            h_large <= 3.0 * 10_000f64.cbrt(),
            "seed {seed}: h = {h_large} at ten thousand vertices"
        );
        assert!(
            h_large / h_small <= 10f64.powf(0.45),
            "seed {seed}: h grew from {h_small} to {h_large}"
        );
    }
    println!("[PASS] acceptance 7: h-index growth stays inside the scale-free envelope");
}

/// Criterion 8: the scaling report's column arithmetic is exact: known
/// rows print bit-for-bit, including the n = 34, h = 34 reference row and
/// the empty-ratio convention.
#[test]
fn acceptance_8_scaling_report_columns_are_exact() {
    // Column computation on the reference values.
    let check = ScalingRow { name: "check".to_string(), n: 34, h: 34 };
    assert_eq!(check.csv(), "check,34,34,3.5264,3.5264,1.0000");

    // Full pipeline over a corpus with hand-computed output.
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("k3.edges"), "a b\nb c\nc a\n").unwrap();
    let k34 = generate(SynthSpec::CliqueIsolates { clique: 34, n: 34 }).unwrap();
    let mut k34_text = String::new();
    for (u, v) in k34.edges {
        k34_text.push_str(&format!("{u} {v}\n"));
    }
    std::fs::write(dir.path().join("k34.edges"), k34_text).unwrap();
    std::fs::write(dir.path().join("pair.edges"), "x y\n").unwrap();

    let mut out = Vec::new();
    let mut err = Vec::new();
    hstats_cli::commands::run_hscaling(dir.path(), &mut out, &mut err).unwrap();
    let expected = "\
name,n,h,log_n,log_h,log_h_over_log_n
k3,3,2,1.0986,0.6931,0.6309
k34,34,33,3.5264,3.4965,0.9915
pair,2,1,0.6931,0.0000,
min,2.0000,1.0000,0.6931,0.0000,0.6309
median,3.0000,2.0000,1.0986,0.6931,0.8112
mean,13.0000,12.0000,1.7727,1.3966,0.8112
max,34.0000,33.0000,3.5264,3.4965,0.9915
";
    assert_eq!(String::from_utf8(out).unwrap(), expected);
    assert!(err.is_empty());
    println!("[PASS] acceptance 8: scaling report rows match hand-computed bytes");
}

/// Criterion 9: algebraic identities among the statistics hold after every
/// operation, and an insert-then-delete round trip restores them all.
#[test]
fn acceptance_9_identities_and_round_trips_hold() {
    for seed in 0..500u64 {
        let mut trace = Trace::new(seed, Weights::Off, Some(3));
        for step in 0..TRACE_LEN {
            trace.step();
            let engine = &trace.engine;
            let at = || format!("seed {seed} step {step}");

            let [g0, g1, g2, g3] = engine.induced_census().unwrap();
            let n = engine.n() as u128;
            let m = engine.m() as u128;
            let p2 = engine.p2_count().unwrap();
            let c3 = engine.triangle_count() as u128;
            assert_eq!(g0 + g1 + g2 + g3, binomial3(n), "{}", at());
            assert_eq!(g2 + 3 * g3, p2, "{}", at());
            assert_eq!(g1 + 2 * g2 + 3 * g3, m * n.saturating_sub(2), "{}", at());

            let q = engine.census_counter().unwrap().q();
            let p3_brute = trace.oracle.p3_brute() as u128;
            let c3_brute = trace.oracle.triangle_count_brute() as u128;
            assert_eq!(q, p3_brute + 3 * c3_brute, "{}", at());
            assert_eq!(engine.path3_count().unwrap(), p3_brute, "{}", at());

            let colored_total: u64 = engine
                .triangle_color_census()
                .unwrap()
                .values()
                .sum();
            assert_eq!(colored_total as u128, c3, "{}", at());

            if step % 20 == 0 {
                let base = statistics(engine);
                let addable = trace.absent_pairs();
                if let Some(&(u, v)) = addable.first() {
                    let mut probe = engine.clone();
                    probe.add_edge(u, v).unwrap();
                    probe.remove_edge(u, v).unwrap();
                    assert_eq!(statistics(&probe), base, "{}: insert/delete", at());
                }
                let removable = trace.present_edges();
                if let Some(&(u, v)) = removable.first() {
                    let mut probe = engine.clone();
                    probe.remove_edge(u, v).unwrap();
                    probe.add_edge(u, v).unwrap();
                    assert_eq!(statistics(&probe), base, "{}: delete/insert", at());
                }
            }
        }
    }
    println!("[PASS] acceptance 9: census identities and round-trip restoration hold");
}

type Stats = (
    usize,
    usize,
    u64,
    u64,
    [u128; 4],
    [u128; 4],
    u128,
    u128,
    [u128; 4],
    Vec<([u32; 3], u64)>,
);

fn statistics(engine: &DynamicGraph) -> Stats {
    (
        engine.n(),
        engine.m(),
        engine.h_index(),
        engine.triangle_count(),
        engine.induced_census().unwrap(),
        engine.noninduced_counts().unwrap(),
        engine.p2_count().unwrap(),
        engine.path3_count().unwrap(),
        [1, 2, 3, 4].map(|i| engine.star_count(i).unwrap()),
        engine
            .triangle_color_census()
            .unwrap()
            .iter()
            .map(|(&k, &v)| (k, v))
            .collect(),
    )
}
