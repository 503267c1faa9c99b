//! Incremental triangle counting with optional edge weights and vertex
//! colors.
//!
//! The counter leans on the core/non-core split: for every unordered vertex
//! pair {u, v} it keeps a path cell recording the two-edge paths u-w-v whose
//! middle vertex w lies outside the core. Common neighbors of an edge's
//! endpoints are then the cell value plus a scan of the core, so each edge
//! update costs O(|core|) probes plus O(degree) cell touches for its
//! non-core endpoints. Core membership changes rebuild the affected cells
//! from the moving vertex's neighborhood in O(degree^2).
//!
//! Cells live and die by their path count: a cell is stored only while its
//! count is positive, and deletion is keyed on the count alone, never on
//! the weight sum, so zero-weight edges cannot destroy structural
//! information.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::gradual::{CoreEvent, CoreEventKind};
use crate::graph::{EngineView, GraphError, VertexId, VertexPair};

#[derive(Debug, Clone, Default)]
struct PathCell {
    count: u64,
    weight_sum: f64,
    /// Per-middle-color path counts; empty when colors are disabled.
    color_counts: Vec<u64>,
    /// Per-middle-color weight sums; empty unless weights and colors are
    /// both enabled.
    color_weights: Vec<f64>,
}

impl PathCell {
    fn new(weighted: bool, palette: Option<u32>) -> Self {
        let k = palette.unwrap_or(0) as usize;
        PathCell {
            count: 0,
            weight_sum: 0.0,
            color_counts: vec![0; k],
            color_weights: vec![0.0; if weighted { k } else { 0 }],
        }
    }
}

/// Common-neighbor breakdown for one vertex pair.
#[derive(Debug, Clone)]
pub struct EdgePaths {
    pub count: u64,
    /// Sum over common neighbors w of weight(u,w) * weight(w,v); zero when
    /// weights are disabled.
    pub weight_sum: f64,
    /// Counts by the color of w; empty when colors are disabled.
    pub mid_colors: Vec<u64>,
}

/// Triangle statistics driven by the engine's edge and core events.
#[derive(Debug)]
pub struct TriangleCounter {
    cells: HashMap<VertexPair, PathCell>,
    triangle_count: u64,
    weight_total: f64,
    color_triples: BTreeMap<[u32; 3], u64>,
    /// Core-membership probes issued by common-neighbor counting; updated
    /// through a shared reference so that read paths stay `&self`.
    probes: AtomicU64,
    weighted: bool,
    palette: Option<u32>,
}

impl Clone for TriangleCounter {
    fn clone(&self) -> Self {
        TriangleCounter {
            cells: self.cells.clone(),
            triangle_count: self.triangle_count,
            weight_total: self.weight_total,
            color_triples: self.color_triples.clone(),
            probes: AtomicU64::new(self.probes.load(Ordering::Relaxed)),
            weighted: self.weighted,
            palette: self.palette,
        }
    }
}

impl TriangleCounter {
    pub(crate) fn new(weighted: bool, palette: Option<u32>) -> Self {
        TriangleCounter {
            cells: HashMap::new(),
            triangle_count: 0,
            weight_total: 0.0,
            color_triples: BTreeMap::new(),
            probes: AtomicU64::new(0),
            weighted,
            palette,
        }
    }

    pub fn triangle_count(&self) -> u64 {
        self.triangle_count
    }

    pub fn total_weight(&self) -> Result<f64, GraphError> {
        if !self.weighted {
            return Err(GraphError::FeatureDisabled("weights"));
        }
        Ok(self.weight_total)
    }

    pub fn color_census(&self) -> Result<&BTreeMap<[u32; 3], u64>, GraphError> {
        if self.palette.is_none() {
            return Err(GraphError::FeatureDisabled("colors"));
        }
        Ok(&self.color_triples)
    }

    /// Number of core-membership probes issued so far.
    pub fn probe_count(&self) -> u64 {
        self.probes.load(Ordering::Relaxed)
    }

    /// Number of stored path cells.
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Stored cells as (pair, path count, weight sum); diagnostic view for
    /// tests and tooling.
    pub fn cells(&self) -> impl Iterator<Item = (VertexPair, u64, f64)> + '_ {
        self.cells
            .iter()
            .map(|(&pair, cell)| (pair, cell.count, cell.weight_sum))
    }

    /// Common neighbors of u and v: a core scan plus one cell lookup.
    pub(crate) fn count_for_edge(&self, view: EngineView<'_>, u: VertexId, v: VertexId) -> EdgePaths {
        let mut paths = EdgePaths {
            count: 0,
            weight_sum: 0.0,
            mid_colors: vec![0; self.palette.unwrap_or(0) as usize],
        };
        for &w in view.core {
            self.probes.fetch_add(1, Ordering::Relaxed);
            if w == u || w == v {
                continue;
            }
            if view.topo.has_edge(w, u) && view.topo.has_edge(w, v) {
                paths.count += 1;
                if self.weighted {
                    paths.weight_sum += view.topo.weight(w, u) * view.topo.weight(w, v);
                }
                if self.palette.is_some() {
                    paths.mid_colors[view.topo.color(w) as usize] += 1;
                }
            }
        }
        self.probes.fetch_add(1, Ordering::Relaxed);
        if let Some(cell) = self.cells.get(&VertexPair::new(u, v)) {
            paths.count += cell.count;
            if self.weighted {
                paths.weight_sum += cell.weight_sum;
            }
            for (total, &part) in paths.mid_colors.iter_mut().zip(&cell.color_counts) {
                *total += part;
            }
        }
        paths
    }

    /// Edge insertion, called with the edge already materialized. The
    /// common-neighbor breakdown is unaffected by the new edge itself (a
    /// midpoint is never an endpoint), so counting here sees exactly the
    /// pre-insertion values while cell updates see the final adjacency.
    pub(crate) fn on_edge_post_insert(
        &mut self,
        view: EngineView<'_>,
        u: VertexId,
        v: VertexId,
    ) -> Result<(), GraphError> {
        let paths = self.count_for_edge(view, u, v);
        let w_uv = view.topo.weight(u, v);
        self.triangle_count += paths.count;
        if self.weighted {
            self.weight_total += w_uv * paths.weight_sum;
        }
        if self.palette.is_some() {
            let cu = view.topo.color(u);
            let cv = view.topo.color(v);
            for (mid, &count) in paths.mid_colors.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                let mut key = [cu, cv, mid as u32];
                key.sort_unstable();
                *self.color_triples.entry(key).or_insert(0) += count;
            }
        }
        self.apply_midpoint_cells(view, u, v, true)
    }

    /// Edge deletion, called with the edge still materialized; mirrors
    /// [`on_edge_post_insert`](Self::on_edge_post_insert) with decrements.
    pub(crate) fn on_edge_pre_delete(
        &mut self,
        view: EngineView<'_>,
        u: VertexId,
        v: VertexId,
    ) -> Result<(), GraphError> {
        let paths = self.count_for_edge(view, u, v);
        let w_uv = view.topo.weight(u, v);
        self.triangle_count = self
            .triangle_count
            .checked_sub(paths.count)
            .ok_or_else(|| inconsistency("triangle count would go negative"))?;
        if self.weighted {
            self.weight_total -= w_uv * paths.weight_sum;
        }
        if self.palette.is_some() {
            let cu = view.topo.color(u);
            let cv = view.topo.color(v);
            for (mid, &count) in paths.mid_colors.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                let mut key = [cu, cv, mid as u32];
                key.sort_unstable();
                let slot = self
                    .color_triples
                    .get_mut(&key)
                    .ok_or_else(|| inconsistency("color census entry missing on delete"))?;
                *slot = slot
                    .checked_sub(count)
                    .ok_or_else(|| inconsistency("color census count would go negative"))?;
                if *slot == 0 {
                    self.color_triples.remove(&key);
                }
            }
        }
        self.apply_midpoint_cells(view, u, v, false)
    }

    /// Register (or unregister) the two-edge paths the edge {u, v} forms as
    /// the first or last edge, i.e. paths with midpoint u or v. Core
    /// midpoints are skipped; their paths are found by the core scan.
    fn apply_midpoint_cells(
        &mut self,
        view: EngineView<'_>,
        u: VertexId,
        v: VertexId,
        insert: bool,
    ) -> Result<(), GraphError> {
        for (mid, other) in [(u, v), (v, u)] {
            if view.core.contains(&mid) {
                continue;
            }
            let w_mid_other = view.topo.weight(mid, other);
            let color = if self.palette.is_some() {
                view.topo.color(mid) as usize
            } else {
                0
            };
            for &w in view.topo.neighbors(mid) {
                if w == other {
                    continue;
                }
                let key = VertexPair::new(other, w);
                let weight = if self.weighted {
                    w_mid_other * view.topo.weight(mid, w)
                } else {
                    0.0
                };
                if insert {
                    self.cell_increment(key, weight, color);
                } else {
                    self.cell_decrement(key, weight, color)?;
                }
            }
        }
        Ok(())
    }

    /// A core membership change moves every two-edge path with the affected
    /// midpoint into or out of the path table.
    pub(crate) fn on_core_event(
        &mut self,
        view: EngineView<'_>,
        event: CoreEvent,
    ) -> Result<(), GraphError> {
        let x = event.element;
        let neighbors = view.topo.neighbors(x);
        let color = if self.palette.is_some() {
            view.topo.color(x) as usize
        } else {
            0
        };
        for i in 0..neighbors.len() {
            let a = *neighbors.get_index(i).expect("index in range");
            let w_xa = if self.weighted { view.topo.weight(x, a) } else { 0.0 };
            for j in i + 1..neighbors.len() {
                let b = *neighbors.get_index(j).expect("index in range");
                let key = VertexPair::new(a, b);
                let weight = if self.weighted {
                    w_xa * view.topo.weight(x, b)
                } else {
                    0.0
                };
                match event.kind {
                    CoreEventKind::Leave => self.cell_increment(key, weight, color),
                    CoreEventKind::Enter => self.cell_decrement(key, weight, color)?,
                }
            }
        }
        Ok(())
    }

    fn cell_increment(&mut self, key: VertexPair, weight: f64, color: usize) {
        let cell = self
            .cells
            .entry(key)
            .or_insert_with(|| PathCell::new(self.weighted, self.palette));
        cell.count += 1;
        if self.weighted {
            cell.weight_sum += weight;
        }
        if self.palette.is_some() {
            cell.color_counts[color] += 1;
            if self.weighted {
                cell.color_weights[color] += weight;
            }
        }
    }

    fn cell_decrement(&mut self, key: VertexPair, weight: f64, color: usize) -> Result<(), GraphError> {
        let cell = self
            .cells
            .get_mut(&key)
            .ok_or_else(|| inconsistency("path cell missing on decrement"))?;
        cell.count = cell
            .count
            .checked_sub(1)
            .ok_or_else(|| inconsistency("path count would go negative"))?;
        if self.weighted {
            cell.weight_sum -= weight;
        }
        if self.palette.is_some() {
            cell.color_counts[color] = cell.color_counts[color]
                .checked_sub(1)
                .ok_or_else(|| inconsistency("per-color path count would go negative"))?;
            if self.weighted {
                cell.color_weights[color] -= weight;
            }
        }
        if cell.count == 0 {
            self.cells.remove(&key);
        }
        Ok(())
    }

    /// Recompute every cell from scratch and compare; test support,
    /// O(n * max_degree^2).
    pub(crate) fn check_cells(&self, view: EngineView<'_>) -> Result<(), String> {
        let mut expected: HashMap<VertexPair, (u64, f64, Vec<u64>)> = HashMap::new();
        let k = self.palette.unwrap_or(0) as usize;
        for (mid, record) in view.topo.vertex_records() {
            if view.core.contains(&mid) {
                continue;
            }
            let neighbors = &record.neighbors;
            for i in 0..neighbors.len() {
                let a = *neighbors.get_index(i).expect("index in range");
                for j in i + 1..neighbors.len() {
                    let b = *neighbors.get_index(j).expect("index in range");
                    let entry = expected
                        .entry(VertexPair::new(a, b))
                        .or_insert_with(|| (0, 0.0, vec![0; k]));
                    entry.0 += 1;
                    if self.weighted {
                        entry.1 += view.topo.weight(mid, a) * view.topo.weight(mid, b);
                    }
                    if k > 0 {
                        entry.2[record.color as usize] += 1;
                    }
                }
            }
        }
        if expected.len() != self.cells.len() {
            return Err(format!(
                "path table stores {} cells, expected {}",
                self.cells.len(),
                expected.len()
            ));
        }
        for (key, (count, weight, colors)) in expected {
            let cell = self
                .cells
                .get(&key)
                .ok_or_else(|| format!("missing cell for {key:?}"))?;
            if cell.count != count {
                return Err(format!(
                    "cell {key:?} count {} should be {count}",
                    cell.count
                ));
            }
            if self.weighted && (cell.weight_sum - weight).abs() > 1e-6 {
                return Err(format!(
                    "cell {key:?} weight {} should be {weight}",
                    cell.weight_sum
                ));
            }
            if cell.color_counts != colors {
                return Err(format!("cell {key:?} color breakdown mismatch"));
            }
            if self.weighted && self.palette.is_some() {
                let spread: f64 = cell.color_weights.iter().sum();
                if (spread - cell.weight_sum).abs() > 1e-6 {
                    return Err(format!(
                        "cell {key:?} per-color weights sum to {spread}, expected {}",
                        cell.weight_sum
                    ));
                }
            }
        }
        Ok(())
    }
}

fn inconsistency(message: &str) -> GraphError {
    GraphError::Inconsistency(message.to_string())
}
