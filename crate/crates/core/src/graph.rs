//! The dynamic graph engine.
//!
//! `DynamicGraph` owns the adjacency structure, the gradual core partition
//! keyed on vertex degrees, and the statistic counters. Every edge update
//! follows the same script: counters that need pre-update degrees run
//! first, the adjacency change is materialized, path cells are adjusted,
//! and finally the partition absorbs the two degree changes, forwarding
//! any core membership events to the counters one at a time.
//!
//! Vertex updates are only legal at degree zero, so they never produce
//! core events and never move any counter.

use std::collections::{BTreeMap, HashMap};

use indexmap::IndexSet;
use thiserror::Error;

use crate::census::{binomial, CensusCounter, MAX_STAR_ORDER};
use crate::gradual::{CoreEvent, GradualPartition};
use crate::triangles::TriangleCounter;

/// Vertex handle. Callers pick the values; the engine never invents ids.
pub type VertexId = u64;

/// Unordered vertex pair in canonical (low, high) form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPair {
    lo: VertexId,
    hi: VertexId,
}

impl VertexPair {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        debug_assert_ne!(a, b, "vertex pairs are loop-free");
        if a < b {
            VertexPair { lo: a, hi: b }
        } else {
            VertexPair { lo: b, hi: a }
        }
    }

    pub fn lo(&self) -> VertexId {
        self.lo
    }

    pub fn hi(&self) -> VertexId {
        self.hi
    }
}

#[derive(Debug, Clone)]
pub(crate) struct VertexRecord {
    pub(crate) neighbors: IndexSet<VertexId>,
    pub(crate) color: u32,
}

#[derive(Debug, Clone)]
struct EdgeRecord {
    weight: f64,
}

/// Adjacency storage: per-vertex neighbor sets plus one record per edge.
#[derive(Debug, Clone, Default)]
pub struct Topology {
    vertices: HashMap<VertexId, VertexRecord>,
    edges: HashMap<VertexPair, EdgeRecord>,
}

impl Topology {
    pub(crate) fn n(&self) -> usize {
        self.vertices.len()
    }

    pub(crate) fn m(&self) -> usize {
        self.edges.len()
    }

    pub(crate) fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    pub(crate) fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u != v && self.edges.contains_key(&VertexPair::new(u, v))
    }

    /// Weight of an existing edge; callers check presence first.
    pub(crate) fn weight(&self, u: VertexId, v: VertexId) -> f64 {
        self.edges[&VertexPair::new(u, v)].weight
    }

    /// Color of an existing vertex; zero when colors are disabled.
    pub(crate) fn color(&self, v: VertexId) -> u32 {
        self.vertices[&v].color
    }

    pub(crate) fn degree(&self, v: VertexId) -> usize {
        self.vertices[&v].neighbors.len()
    }

    pub(crate) fn neighbors(&self, v: VertexId) -> &IndexSet<VertexId> {
        &self.vertices[&v].neighbors
    }

    pub(crate) fn record(&self, v: VertexId) -> Option<&VertexRecord> {
        self.vertices.get(&v)
    }

    pub(crate) fn vertex_records(
        &self,
    ) -> impl Iterator<Item = (VertexId, &VertexRecord)> + '_ {
        self.vertices.iter().map(|(&v, record)| (v, record))
    }

    pub(crate) fn edge_records(
        &self,
    ) -> impl Iterator<Item = (VertexPair, f64)> + '_ {
        self.edges.iter().map(|(&pair, record)| (pair, record.weight))
    }

    pub(crate) fn insert_vertex(&mut self, v: VertexId, color: u32) {
        let previous = self.vertices.insert(
            v,
            VertexRecord { neighbors: IndexSet::new(), color },
        );
        debug_assert!(previous.is_none());
    }

    pub(crate) fn remove_vertex(&mut self, v: VertexId) {
        let record = self.vertices.remove(&v);
        debug_assert!(matches!(record, Some(ref r) if r.neighbors.is_empty()));
    }

    pub(crate) fn insert_edge(&mut self, u: VertexId, v: VertexId, weight: f64) {
        self.vertices.get_mut(&u).expect("endpoint present").neighbors.insert(v);
        self.vertices.get_mut(&v).expect("endpoint present").neighbors.insert(u);
        let previous = self.edges.insert(VertexPair::new(u, v), EdgeRecord { weight });
        debug_assert!(previous.is_none());
    }

    pub(crate) fn remove_edge(&mut self, u: VertexId, v: VertexId) {
        self.vertices
            .get_mut(&u)
            .expect("endpoint present")
            .neighbors
            .swap_remove(&v);
        self.vertices
            .get_mut(&v)
            .expect("endpoint present")
            .neighbors
            .swap_remove(&u);
        let removed = self.edges.remove(&VertexPair::new(u, v));
        debug_assert!(removed.is_some());
    }
}

/// Read-only slice of engine state handed to the statistic counters.
#[derive(Clone, Copy)]
pub(crate) struct EngineView<'a> {
    pub(crate) topo: &'a Topology,
    pub(crate) core: &'a IndexSet<VertexId>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vertex {0} already exists")]
    DuplicateVertex(VertexId),
    #[error("vertex {0} does not exist")]
    MissingVertex(VertexId),
    #[error("edge between {0} and {1} already exists")]
    DuplicateEdge(VertexId, VertexId),
    #[error("no edge between {0} and {1}")]
    MissingEdge(VertexId, VertexId),
    #[error("self-loops are not supported (vertex {0})")]
    SelfLoop(VertexId),
    #[error("vertex {vertex} still has degree {degree}; remove its edges first")]
    VertexNotIsolated { vertex: VertexId, degree: usize },
    #[error("weight {weight} for edge between {u} and {v} is not finite")]
    NonFiniteWeight { u: VertexId, v: VertexId, weight: f64 },
    #[error("this engine was built without edge weights")]
    WeightsDisabled,
    #[error("this engine was built without vertex colors")]
    ColorsDisabled,
    #[error("color {color} is outside the palette of {palette} colors")]
    ColorOutOfRange { color: u32, palette: u32 },
    #[error("{0} support is disabled for this engine")]
    FeatureDisabled(&'static str),
    #[error("star order {requested} is outside 1..={limit}")]
    StarOrderOutOfRange { requested: usize, limit: usize },
    #[error("invalid engine configuration: {0}")]
    InvalidConfig(String),
    #[error("internal count inconsistency: {0}")]
    Inconsistency(String),
}

/// Feature switches fixed at construction time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    /// Accept per-edge weights and maintain the weighted triangle total.
    pub weighted: bool,
    /// Palette size for vertex colors and the colored triangle census.
    pub colors: Option<u32>,
    /// Maintain the path/star/census accumulators alongside triangles.
    pub census: bool,
    /// Largest star order to track, between 1 and 8.
    pub k_star: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { weighted: false, colors: None, census: true, k_star: 4 }
    }
}

/// Largest color palette accepted; per-pair path cells carry a vector of
/// this length, so an unbounded palette would turn each cell into an
/// allocation hazard.
const MAX_PALETTE: u32 = 1024;

/// Dynamic graph with incrementally maintained subgraph statistics.
#[derive(Debug, Clone)]
pub struct DynamicGraph {
    topo: Topology,
    partition: GradualPartition,
    triangles: TriangleCounter,
    census: Option<CensusCounter>,
    config: EngineConfig,
}

impl Default for DynamicGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl DynamicGraph {
    /// Unweighted, uncolored engine with the census accumulators enabled.
    pub fn new() -> Self {
        Self::with_config(EngineConfig::default()).expect("default configuration is valid")
    }

    pub fn with_config(config: EngineConfig) -> Result<Self, GraphError> {
        if let Some(palette) = config.colors {
            if palette == 0 {
                return Err(GraphError::InvalidConfig(
                    "color palette needs at least one color".to_string(),
                ));
            }
            if palette > MAX_PALETTE {
                return Err(GraphError::InvalidConfig(format!(
                    "color palette capped at {MAX_PALETTE} colors"
                )));
            }
        }
        if config.k_star == 0 || config.k_star > MAX_STAR_ORDER {
            return Err(GraphError::InvalidConfig(format!(
                "star order must lie in 1..={MAX_STAR_ORDER}"
            )));
        }
        Ok(DynamicGraph {
            topo: Topology::default(),
            partition: GradualPartition::new(),
            triangles: TriangleCounter::new(config.weighted, config.colors),
            census: config.census.then(|| CensusCounter::new(config.k_star)),
            config,
        })
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    fn view(&self) -> EngineView<'_> {
        EngineView { topo: &self.topo, core: self.partition.core_index() }
    }

    /// Forward core membership events to the counters in a fixed order.
    fn dispatch_core_events(&mut self, events: Vec<CoreEvent>) -> Result<(), GraphError> {
        for event in events {
            let view = EngineView { topo: &self.topo, core: self.partition.core_index() };
            self.triangles.on_core_event(view, event)?;
            if let Some(census) = self.census.as_mut() {
                census.on_core_event(view, event);
            }
        }
        Ok(())
    }

    pub fn add_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        self.insert_vertex_internal(v, None)
    }

    pub fn add_colored_vertex(&mut self, v: VertexId, color: u32) -> Result<(), GraphError> {
        self.insert_vertex_internal(v, Some(color))
    }

    fn insert_vertex_internal(
        &mut self,
        v: VertexId,
        color: Option<u32>,
    ) -> Result<(), GraphError> {
        if self.topo.has_vertex(v) {
            return Err(GraphError::DuplicateVertex(v));
        }
        let color = match (color, self.config.colors) {
            (Some(_), None) => return Err(GraphError::ColorsDisabled),
            (Some(c), Some(palette)) if c >= palette => {
                return Err(GraphError::ColorOutOfRange { color: c, palette })
            }
            (Some(c), Some(_)) => c,
            (None, _) => 0,
        };
        self.topo.insert_vertex(v, color);
        self.partition
            .insert_zero(v)
            .map_err(|e| GraphError::Inconsistency(format!("partition rejected new vertex: {e}")))
    }

    /// Remove an isolated vertex.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        if !self.topo.has_vertex(v) {
            return Err(GraphError::MissingVertex(v));
        }
        let degree = self.topo.degree(v);
        if degree > 0 {
            return Err(GraphError::VertexNotIsolated { vertex: v, degree });
        }
        self.partition
            .remove_zero(v)
            .map_err(|e| GraphError::Inconsistency(format!("partition lost a vertex: {e}")))?;
        self.topo.remove_vertex(v);
        Ok(())
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.insert_edge_internal(u, v, None)
    }

    pub fn add_weighted_edge(
        &mut self,
        u: VertexId,
        v: VertexId,
        weight: f64,
    ) -> Result<(), GraphError> {
        self.insert_edge_internal(u, v, Some(weight))
    }

    fn insert_edge_internal(
        &mut self,
        u: VertexId,
        v: VertexId,
        weight: Option<f64>,
    ) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !self.topo.has_vertex(u) {
            return Err(GraphError::MissingVertex(u));
        }
        if !self.topo.has_vertex(v) {
            return Err(GraphError::MissingVertex(v));
        }
        if self.topo.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        let weight = match weight {
            Some(_) if !self.config.weighted => return Err(GraphError::WeightsDisabled),
            Some(w) if !w.is_finite() => {
                return Err(GraphError::NonFiniteWeight { u, v, weight: w })
            }
            Some(w) => w,
            None => 1.0,
        };
        // Census deltas read pre-insertion degrees.
        if let Some(census) = self.census.as_mut() {
            let view = EngineView { topo: &self.topo, core: self.partition.core_index() };
            census.on_edge_insert(view, u, v);
        }
        self.topo.insert_edge(u, v, weight);
        // Triangle counting is insensitive to the new edge itself, and the
        // cell updates need the final adjacency.
        {
            let view = EngineView { topo: &self.topo, core: self.partition.core_index() };
            self.triangles.on_edge_post_insert(view, u, v)?;
        }
        let events = self
            .partition
            .increment(u)
            .map_err(|e| GraphError::Inconsistency(format!("degree bump failed: {e}")))?;
        self.dispatch_core_events(events)?;
        let events = self
            .partition
            .increment(v)
            .map_err(|e| GraphError::Inconsistency(format!("degree bump failed: {e}")))?;
        self.dispatch_core_events(events)
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if !self.topo.has_vertex(u) {
            return Err(GraphError::MissingVertex(u));
        }
        if !self.topo.has_vertex(v) {
            return Err(GraphError::MissingVertex(v));
        }
        if !self.topo.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        // Degrees drop first so the counters see the post-update core while
        // the adjacency still holds the doomed edge.
        let events = self
            .partition
            .decrement(u)
            .map_err(|e| GraphError::Inconsistency(format!("degree drop failed: {e}")))?;
        self.dispatch_core_events(events)?;
        let events = self
            .partition
            .decrement(v)
            .map_err(|e| GraphError::Inconsistency(format!("degree drop failed: {e}")))?;
        self.dispatch_core_events(events)?;
        {
            let view = EngineView { topo: &self.topo, core: self.partition.core_index() };
            self.triangles.on_edge_pre_delete(view, u, v)?;
        }
        if let Some(census) = self.census.as_mut() {
            let view = EngineView { topo: &self.topo, core: self.partition.core_index() };
            census.on_edge_delete(view, u, v)?;
        }
        self.topo.remove_edge(u, v);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.topo.n()
    }

    pub fn m(&self) -> usize {
        self.topo.m()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.topo.has_vertex(v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.topo.has_vertex(u) && self.topo.has_vertex(v) && self.topo.has_edge(u, v)
    }

    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        self.topo
            .record(v)
            .map(|record| record.neighbors.len())
            .ok_or(GraphError::MissingVertex(v))
    }

    pub fn neighbors(
        &self,
        v: VertexId,
    ) -> Result<impl Iterator<Item = VertexId> + '_, GraphError> {
        self.topo
            .record(v)
            .map(|record| record.neighbors.iter().copied())
            .ok_or(GraphError::MissingVertex(v))
    }

    /// All vertex ids, in no particular order.
    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.topo.vertex_records().map(|(v, _)| v)
    }

    /// All edges with their weights, in no particular order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        self.topo
            .edge_records()
            .map(|(pair, weight)| (pair.lo(), pair.hi(), weight))
    }

    pub fn vertex_color(&self, v: VertexId) -> Result<u32, GraphError> {
        if self.config.colors.is_none() {
            return Err(GraphError::ColorsDisabled);
        }
        self.topo
            .record(v)
            .map(|record| record.color)
            .ok_or(GraphError::MissingVertex(v))
    }

    pub fn edge_weight(&self, u: VertexId, v: VertexId) -> Result<f64, GraphError> {
        if !self.topo.has_vertex(u) {
            return Err(GraphError::MissingVertex(u));
        }
        if !self.topo.has_vertex(v) {
            return Err(GraphError::MissingVertex(v));
        }
        if !self.topo.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        Ok(self.topo.weight(u, v))
    }

    /// The degree h-index: the largest h with at least h vertices of
    /// degree at least h.
    pub fn h_index(&self) -> u64 {
        self.partition.h()
    }

    pub fn in_core(&self, v: VertexId) -> Result<bool, GraphError> {
        if !self.topo.has_vertex(v) {
            return Err(GraphError::MissingVertex(v));
        }
        Ok(self.partition.in_core(v))
    }

    pub fn core_size(&self) -> usize {
        self.partition.core_len()
    }

    pub fn core_vertices(&self) -> Vec<VertexId> {
        self.partition.core().collect()
    }

    pub fn triangle_count(&self) -> u64 {
        self.triangles.triangle_count()
    }

    /// Sum of weight products over all current triangles.
    pub fn total_triangle_weight(&self) -> Result<f64, GraphError> {
        self.triangles.total_weight()
    }

    /// Triangle counts keyed by sorted color triple.
    pub fn triangle_color_census(&self) -> Result<&BTreeMap<[u32; 3], u64>, GraphError> {
        self.triangles.color_census()
    }

    /// Number of common neighbors of u and v, counted in O(core) time.
    pub fn common_neighbors(&self, u: VertexId, v: VertexId) -> Result<u64, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !self.topo.has_vertex(u) {
            return Err(GraphError::MissingVertex(u));
        }
        if !self.topo.has_vertex(v) {
            return Err(GraphError::MissingVertex(v));
        }
        Ok(self.triangles.count_for_edge(self.view(), u, v).count)
    }

    fn census_counter_or_err(&self) -> Result<&CensusCounter, GraphError> {
        self.census
            .as_ref()
            .ok_or(GraphError::FeatureDisabled("census"))
    }

    /// Number of two-edge paths.
    pub fn p2_count(&self) -> Result<u128, GraphError> {
        Ok(self.census_counter_or_err()?.p2())
    }

    /// Number of three-edge simple paths.
    pub fn path3_count(&self) -> Result<u128, GraphError> {
        let q = self.census_counter_or_err()?.q();
        q.checked_sub(3 * self.triangle_count() as u128)
            .ok_or_else(|| {
                GraphError::Inconsistency("three-edge path count would go negative".to_string())
            })
    }

    /// Number of stars with `order` leaves.
    pub fn star_count(&self, order: usize) -> Result<u128, GraphError> {
        let census = self.census_counter_or_err()?;
        census.star(order).ok_or(GraphError::StarOrderOutOfRange {
            requested: order,
            limit: census.k_star(),
        })
    }

    /// Induced three-vertex census (g0, g1, g2, g3): triples spanning
    /// zero, one, two, and three edges.
    pub fn induced_census(&self) -> Result<[u128; 4], GraphError> {
        let census = self.census_counter_or_err()?;
        let n = self.topo.n() as u64;
        let m = self.topo.m() as u128;
        let g3 = self.triangle_count() as u128;
        let g2 = census
            .p2()
            .checked_sub(3 * g3)
            .ok_or_else(|| GraphError::Inconsistency("two-edge class underflow".to_string()))?;
        let edge_triples = m * (n as u128).saturating_sub(2);
        let g1 = edge_triples
            .checked_sub(2 * g2 + 3 * g3)
            .ok_or_else(|| GraphError::Inconsistency("one-edge class underflow".to_string()))?;
        let g0 = binomial(n, 3)
            .checked_sub(g1 + g2 + g3)
            .ok_or_else(|| GraphError::Inconsistency("empty class underflow".to_string()))?;
        Ok([g0, g1, g2, g3])
    }

    /// Non-induced counts (triples, edge-triples, two-edge paths,
    /// triangles) from which the induced census is derived.
    pub fn noninduced_counts(&self) -> Result<[u128; 4], GraphError> {
        let census = self.census_counter_or_err()?;
        let n = self.topo.n() as u64;
        let m = self.topo.m() as u128;
        Ok([
            binomial(n, 3),
            m * (n as u128).saturating_sub(2),
            census.p2(),
            self.triangle_count() as u128,
        ])
    }

    pub fn partition(&self) -> &GradualPartition {
        &self.partition
    }

    pub fn triangle_counter(&self) -> &TriangleCounter {
        &self.triangles
    }

    pub fn census_counter(&self) -> Option<&CensusCounter> {
        self.census.as_ref()
    }

    /// Core-membership probes issued by triangle counting so far.
    pub fn probe_count(&self) -> u64 {
        self.triangles.probe_count()
    }

    /// Dictionary operations spent inside the h-index structure so far.
    pub fn dict_op_count(&self) -> u64 {
        self.partition.hindex().dict_ops()
    }

    /// Stored path cells backing the triangle counter.
    pub fn path_cell_count(&self) -> usize {
        self.triangles.cell_count()
    }

    /// Cross-check every maintained structure against a scratch
    /// recomputation; test support, not constant time.
    pub fn check_invariants(&self) -> Result<(), String> {
        self.partition.check_invariants()?;
        let mut degree_total = 0usize;
        for (v, record) in self.topo.vertex_records() {
            degree_total += record.neighbors.len();
            match self.partition.value(v) {
                Some(value) if value == record.neighbors.len() as u64 => {}
                Some(value) => {
                    return Err(format!(
                        "partition value {value} for vertex {v} disagrees with degree {}",
                        record.neighbors.len()
                    ))
                }
                None => return Err(format!("vertex {v} missing from the partition")),
            }
            for &w in &record.neighbors {
                if w == v {
                    return Err(format!("vertex {v} lists itself as a neighbor"));
                }
                if !self.topo.has_edge(v, w) {
                    return Err(format!("neighbor pair ({v}, {w}) has no edge record"));
                }
                let back = self
                    .topo
                    .record(w)
                    .ok_or_else(|| format!("neighbor {w} of {v} does not exist"))?;
                if !back.neighbors.contains(&v) {
                    return Err(format!("adjacency of ({v}, {w}) is not symmetric"));
                }
            }
        }
        if degree_total != 2 * self.topo.m() {
            return Err(format!(
                "degree total {degree_total} disagrees with {} edges",
                self.topo.m()
            ));
        }
        for (pair, _) in self.topo.edge_records() {
            let lo = self
                .topo
                .record(pair.lo())
                .ok_or_else(|| format!("edge endpoint {} does not exist", pair.lo()))?;
            if !lo.neighbors.contains(&pair.hi()) {
                return Err(format!("edge {pair:?} missing from endpoint adjacency"));
            }
        }
        if self.partition.len() != self.topo.n() {
            return Err(format!(
                "partition tracks {} elements, topology has {} vertices",
                self.partition.len(),
                self.topo.n()
            ));
        }
        self.triangles.check_cells(self.view())?;
        if let Some(census) = &self.census {
            census.check_state(self.view())?;
            self.induced_census().map_err(|e| e.to_string())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: u64) -> DynamicGraph {
        let mut g = DynamicGraph::new();
        for v in 1..=n {
            g.add_vertex(v).unwrap();
        }
        for u in 1..=n {
            for v in u + 1..=n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    #[test]
    fn empty_engine_reports_zero_everything() {
        let g = DynamicGraph::new();
        assert_eq!(g.n(), 0);
        assert_eq!(g.m(), 0);
        assert_eq!(g.h_index(), 0);
        assert_eq!(g.triangle_count(), 0);
        assert_eq!(g.induced_census().unwrap(), [0, 0, 0, 0]);
        assert_eq!(g.noninduced_counts().unwrap(), [0, 0, 0, 0]);
        g.check_invariants().unwrap();
    }

    #[test]
    fn isolated_vertices_land_in_the_empty_class() {
        let mut g = DynamicGraph::new();
        for v in 1..=5 {
            g.add_vertex(v).unwrap();
        }
        assert_eq!(g.induced_census().unwrap(), [10, 0, 0, 0]);
        assert_eq!(g.h_index(), 0);
        g.check_invariants().unwrap();
    }

    #[test]
    fn triangle_statistics_match_hand_counts() {
        let g = complete(3);
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert_eq!(g.h_index(), 2);
        assert_eq!(g.triangle_count(), 1);
        assert_eq!(g.induced_census().unwrap(), [0, 0, 0, 1]);
        assert_eq!(g.noninduced_counts().unwrap(), [1, 3, 3, 1]);
        assert_eq!(g.p2_count().unwrap(), 3);
        assert_eq!(g.path3_count().unwrap(), 0);
        assert_eq!(g.star_count(1).unwrap(), 6);
        assert_eq!(g.star_count(2).unwrap(), 3);
        assert_eq!(g.star_count(3).unwrap(), 0);
        assert_eq!(g.common_neighbors(1, 2).unwrap(), 1);
        g.check_invariants().unwrap();
    }

    #[test]
    fn complete_graph_loses_triangles_with_an_edge() {
        let mut g = complete(4);
        assert_eq!(g.h_index(), 3);
        assert_eq!(g.triangle_count(), 4);
        assert_eq!(g.induced_census().unwrap(), [0, 0, 0, 4]);
        assert_eq!(g.noninduced_counts().unwrap(), [4, 12, 12, 4]);
        assert_eq!(g.path3_count().unwrap(), 12);
        assert_eq!(g.star_count(3).unwrap(), 4);
        g.remove_edge(3, 4).unwrap();
        assert_eq!(g.triangle_count(), 2);
        assert_eq!(g.induced_census().unwrap(), [0, 0, 2, 2]);
        g.check_invariants().unwrap();
    }

    #[test]
    fn four_vertex_path_census() {
        let mut g = DynamicGraph::new();
        for v in 1..=4 {
            g.add_vertex(v).unwrap();
        }
        g.add_edge(1, 2).unwrap();
        g.add_edge(2, 3).unwrap();
        g.add_edge(3, 4).unwrap();
        assert_eq!(g.p2_count().unwrap(), 2);
        assert_eq!(g.path3_count().unwrap(), 1);
        assert_eq!(g.induced_census().unwrap(), [0, 2, 2, 0]);
        g.check_invariants().unwrap();
    }

    #[test]
    fn add_errors_cover_every_misuse() {
        let mut g = DynamicGraph::new();
        g.add_vertex(1).unwrap();
        g.add_vertex(2).unwrap();
        g.add_edge(1, 2).unwrap();

        assert_eq!(g.add_vertex(1), Err(GraphError::DuplicateVertex(1)));
        assert_eq!(g.add_edge(1, 2), Err(GraphError::DuplicateEdge(1, 2)));
        assert_eq!(g.add_edge(2, 1), Err(GraphError::DuplicateEdge(2, 1)));
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert_eq!(g.add_edge(1, 9), Err(GraphError::MissingVertex(9)));
        assert_eq!(g.remove_edge(1, 9), Err(GraphError::MissingVertex(9)));
        assert_eq!(
            g.remove_vertex(1),
            Err(GraphError::VertexNotIsolated { vertex: 1, degree: 1 })
        );
        assert_eq!(g.remove_vertex(7), Err(GraphError::MissingVertex(7)));
        assert_eq!(g.degree(5).unwrap_err(), GraphError::MissingVertex(5));
        assert!(g.neighbors(5).is_err());
        assert_eq!(g.common_neighbors(1, 1), Err(GraphError::SelfLoop(1)));

        g.remove_edge(1, 2).unwrap();
        assert_eq!(g.remove_edge(1, 2), Err(GraphError::MissingEdge(1, 2)));
        g.remove_vertex(1).unwrap();
        g.remove_vertex(2).unwrap();
        assert_eq!(g.n(), 0);
        g.check_invariants().unwrap();
    }

    #[test]
    fn feature_gates_guard_optional_statistics() {
        let mut plain = DynamicGraph::new();
        plain.add_vertex(1).unwrap();
        plain.add_vertex(2).unwrap();
        assert_eq!(
            plain.add_weighted_edge(1, 2, 0.5),
            Err(GraphError::WeightsDisabled)
        );
        assert_eq!(plain.add_colored_vertex(3, 1), Err(GraphError::ColorsDisabled));
        assert_eq!(plain.vertex_color(1), Err(GraphError::ColorsDisabled));
        assert!(matches!(
            plain.total_triangle_weight(),
            Err(GraphError::FeatureDisabled("weights"))
        ));
        assert!(matches!(
            plain.triangle_color_census(),
            Err(GraphError::FeatureDisabled("colors"))
        ));
        assert!(matches!(
            plain.star_count(5),
            Err(GraphError::StarOrderOutOfRange { requested: 5, limit: 4 })
        ));

        let stripped = DynamicGraph::with_config(EngineConfig {
            census: false,
            ..EngineConfig::default()
        })
        .unwrap();
        assert!(matches!(
            stripped.p2_count(),
            Err(GraphError::FeatureDisabled("census"))
        ));
        assert!(matches!(
            stripped.induced_census(),
            Err(GraphError::FeatureDisabled("census"))
        ));
        assert_eq!(stripped.triangle_count(), 0);
    }

    #[test]
    fn config_validation_rejects_nonsense() {
        assert!(DynamicGraph::with_config(EngineConfig {
            colors: Some(0),
            ..EngineConfig::default()
        })
        .is_err());
        assert!(DynamicGraph::with_config(EngineConfig {
            colors: Some(MAX_PALETTE + 1),
            ..EngineConfig::default()
        })
        .is_err());
        assert!(DynamicGraph::with_config(EngineConfig {
            k_star: 0,
            ..EngineConfig::default()
        })
        .is_err());
        assert!(DynamicGraph::with_config(EngineConfig {
            k_star: 9,
            ..EngineConfig::default()
        })
        .is_err());
    }

    #[test]
    fn weighted_engine_tracks_products() {
        let mut g = DynamicGraph::with_config(EngineConfig {
            weighted: true,
            ..EngineConfig::default()
        })
        .unwrap();
        for v in 1..=3 {
            g.add_vertex(v).unwrap();
        }
        g.add_weighted_edge(1, 2, 0.5).unwrap();
        g.add_weighted_edge(2, 3, 0.5).unwrap();
        g.add_edge(3, 1).unwrap();
        assert_eq!(g.edge_weight(3, 1).unwrap(), 1.0);
        assert_eq!(g.edge_weight(1, 2).unwrap(), 0.5);
        assert_eq!(g.total_triangle_weight().unwrap(), 0.25);
        assert_eq!(
            g.add_weighted_edge(1, 3, f64::NAN).unwrap_err(),
            GraphError::DuplicateEdge(1, 3)
        );
        assert!(matches!(
            g.add_weighted_edge(1, 4, f64::INFINITY),
            Err(GraphError::MissingVertex(4))
        ));
        g.add_vertex(4).unwrap();
        assert!(matches!(
            g.add_weighted_edge(1, 4, f64::INFINITY),
            Err(GraphError::NonFiniteWeight { .. })
        ));
        g.check_invariants().unwrap();
    }

    #[test]
    fn colored_engine_reports_sorted_triples() {
        let mut g = DynamicGraph::with_config(EngineConfig {
            colors: Some(3),
            ..EngineConfig::default()
        })
        .unwrap();
        g.add_colored_vertex(1, 0).unwrap();
        g.add_colored_vertex(2, 0).unwrap();
        g.add_colored_vertex(3, 1).unwrap();
        g.add_vertex(4).unwrap();
        assert_eq!(g.vertex_color(4).unwrap(), 0);
        assert_eq!(
            g.add_colored_vertex(5, 3),
            Err(GraphError::ColorOutOfRange { color: 3, palette: 3 })
        );
        g.add_edge(1, 2).unwrap();
        g.add_edge(2, 3).unwrap();
        g.add_edge(3, 1).unwrap();
        let census = g.triangle_color_census().unwrap();
        assert_eq!(census.get(&[0, 0, 1]), Some(&1));
        assert_eq!(census.len(), 1);
        g.check_invariants().unwrap();
    }

    #[test]
    fn census_can_be_disabled_independently() {
        let mut g = DynamicGraph::with_config(EngineConfig {
            census: false,
            ..EngineConfig::default()
        })
        .unwrap();
        for v in 1..=3 {
            g.add_vertex(v).unwrap();
        }
        g.add_edge(1, 2).unwrap();
        g.add_edge(2, 3).unwrap();
        g.add_edge(3, 1).unwrap();
        assert_eq!(g.triangle_count(), 1);
        assert_eq!(g.h_index(), 2);
        g.check_invariants().unwrap();
    }

    #[test]
    fn insert_then_delete_restores_every_statistic() {
        let mut g = DynamicGraph::new();
        for v in 1..=6 {
            g.add_vertex(v).unwrap();
        }
        for (u, v) in [(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 6), (6, 4), (2, 5)] {
            g.add_edge(u, v).unwrap();
        }
        let snapshot = |g: &DynamicGraph| {
            (
                g.n(),
                g.m(),
                g.h_index(),
                g.triangle_count(),
                g.induced_census().unwrap(),
                g.noninduced_counts().unwrap(),
                g.p2_count().unwrap(),
                g.path3_count().unwrap(),
                [1, 2, 3, 4].map(|i| g.star_count(i).unwrap()),
            )
        };
        let before = snapshot(&g);
        g.add_edge(1, 5).unwrap();
        assert_ne!(snapshot(&g), before);
        g.remove_edge(1, 5).unwrap();
        assert_eq!(snapshot(&g), before);
        g.check_invariants().unwrap();

        // The reverse order: removing and reinserting an existing edge.
        g.remove_edge(2, 5).unwrap();
        assert_ne!(snapshot(&g), before);
        g.add_edge(2, 5).unwrap();
        assert_eq!(snapshot(&g), before);
        g.check_invariants().unwrap();
    }

    #[test]
    fn non_core_midpoints_get_path_cells() {
        // A complete triangle keeps h at 2 so the appended two-edge path
        // has a non-core midpoint; its endpoints share exactly one cell.
        let mut g = complete(3);
        for v in [10, 11, 12] {
            g.add_vertex(v).unwrap();
        }
        g.add_edge(10, 11).unwrap();
        g.add_edge(11, 12).unwrap();
        assert!(!g.in_core(11).unwrap());
        let cells: Vec<_> = g
            .triangle_counter()
            .cells()
            .filter(|(pair, _, _)| pair.lo() == 10 && pair.hi() == 12)
            .collect();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].1, 1);
        assert_eq!(g.common_neighbors(10, 12).unwrap(), 1);
        g.check_invariants().unwrap();
    }

    #[test]
    fn accounting_queries_stay_consistent() {
        let mut g = complete(4);
        let probes_before = g.probe_count();
        g.add_vertex(9).unwrap();
        g.add_edge(9, 1).unwrap();
        assert!(g.probe_count() > probes_before);
        assert!(g.dict_op_count() > 0);
        let core = g.core_vertices();
        assert_eq!(core.len(), g.core_size());
        for v in core {
            assert!(g.in_core(v).unwrap());
        }
        g.check_invariants().unwrap();
    }

    #[test]
    fn clones_do_not_share_state() {
        let mut g = complete(3);
        let copy = g.clone();
        g.add_vertex(10).unwrap();
        g.add_edge(10, 1).unwrap();
        assert_eq!(copy.n(), 3);
        assert_eq!(copy.m(), 3);
        assert_eq!(g.n(), 4);
        copy.check_invariants().unwrap();
        g.check_invariants().unwrap();
    }

    #[test]
    fn vertex_pair_orders_endpoints() {
        let p = VertexPair::new(7, 3);
        assert_eq!((p.lo(), p.hi()), (3, 7));
        assert_eq!(p, VertexPair::new(3, 7));
    }
}
