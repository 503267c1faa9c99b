//! Path, star, and three-vertex census accounting.
//!
//! Everything here is degree arithmetic. An edge insertion between u and v
//! changes only terms involving u, v, or their mutual visibility, so each
//! accumulator admits a closed-form delta from the pre-update degrees:
//!
//! * `p2`, the number of two-edge paths, gains deg(u) + deg(v);
//! * `q`, the number of three-edge subsets forming a path or triangle
//!   (triangles contribute three each), gains deg(u) * deg(v) plus the
//!   two-edge paths ending at u and at v;
//! * the star counts s_i gain C(deg, i-1) at each endpoint.
//!
//! The endpoint-path values P_x feeding the q delta are maintained only for
//! core vertices; a non-core endpoint has degree below twice the h-index,
//! so recomputing its value on the fly stays within the per-update budget.

use std::collections::HashMap;

use crate::gradual::{CoreEvent, CoreEventKind};
use crate::graph::{EngineView, GraphError, VertexId};

/// Largest star order the counter will track.
pub const MAX_STAR_ORDER: usize = 8;

/// C(n, k) without overflow for the degree ranges the engine produces.
pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result * (n - i) as u128 / (i + 1) as u128;
    }
    result
}

/// Incremental counts of small subgraph patterns other than triangles.
#[derive(Debug, Clone)]
pub struct CensusCounter {
    p2: u128,
    q: u128,
    /// stars[i] counts stars with i + 1 leaves, i.e. s_{i+1}.
    stars: Vec<u128>,
    /// Two-edge paths by endpoint, kept for exactly the core vertices.
    endpoint: HashMap<VertexId, u64>,
    k_star: usize,
}

impl CensusCounter {
    pub(crate) fn new(k_star: usize) -> Self {
        debug_assert!((1..=MAX_STAR_ORDER).contains(&k_star));
        CensusCounter {
            p2: 0,
            q: 0,
            stars: vec![0; k_star],
            endpoint: HashMap::new(),
            k_star,
        }
    }

    /// Number of two-edge paths.
    pub fn p2(&self) -> u128 {
        self.p2
    }

    /// Number of three-edge subsets spanning a path or triangle; a triangle
    /// is counted once per choice of its three edges, so three times.
    pub fn q(&self) -> u128 {
        self.q
    }

    /// Number of stars with `order` leaves, or `None` beyond the configured
    /// maximum.
    pub fn star(&self, order: usize) -> Option<u128> {
        if order == 0 {
            return None;
        }
        self.stars.get(order - 1).copied()
    }

    pub fn k_star(&self) -> usize {
        self.k_star
    }

    /// Maintained endpoint-path value for a core vertex.
    pub fn endpoint_paths(&self, v: VertexId) -> Option<u64> {
        self.endpoint.get(&v).copied()
    }

    /// Two-edge paths ending at x: maintained value for core vertices,
    /// degree sum over the neighborhood otherwise.
    fn endpoint_value(&self, view: EngineView<'_>, x: VertexId) -> u64 {
        if let Some(&p) = self.endpoint.get(&x) {
            return p;
        }
        view.topo
            .neighbors(x)
            .iter()
            .map(|&w| (view.topo.degree(w) - 1) as u64)
            .sum()
    }

    /// Edge insertion, called before the edge is materialized so every
    /// degree is a pre-update degree.
    pub(crate) fn on_edge_insert(&mut self, view: EngineView<'_>, u: VertexId, v: VertexId) {
        let du = view.topo.degree(u) as u64;
        let dv = view.topo.degree(v) as u64;
        let pu = self.endpoint_value(view, u);
        let pv = self.endpoint_value(view, v);
        self.p2 += (du + dv) as u128;
        self.q += du as u128 * dv as u128 + pu as u128 + pv as u128;
        for order in 1..=self.k_star {
            self.stars[order - 1] +=
                binomial(du, order as u64 - 1) + binomial(dv, order as u64 - 1);
        }
        for (&w, pw) in self.endpoint.iter_mut() {
            if w == u {
                *pw += dv;
            } else if w == v {
                *pw += du;
            } else {
                if view.topo.has_edge(w, u) {
                    *pw += 1;
                }
                if view.topo.has_edge(w, v) {
                    *pw += 1;
                }
            }
        }
    }

    /// Edge deletion, called while the edge is still materialized; the
    /// insertion deltas are rewritten in terms of the still-inflated
    /// degrees.
    pub(crate) fn on_edge_delete(
        &mut self,
        view: EngineView<'_>,
        u: VertexId,
        v: VertexId,
    ) -> Result<(), GraphError> {
        let du = view.topo.degree(u) as u64;
        let dv = view.topo.degree(v) as u64;
        let pu = self.endpoint_value(view, u);
        let pv = self.endpoint_value(view, v);
        self.p2 = self
            .p2
            .checked_sub((du + dv - 2) as u128)
            .ok_or_else(|| inconsistency("two-edge path count would go negative"))?;
        // Paths through the doomed edge no longer count: endpoint values
        // still include the dv - 1 paths u-v-x and du - 1 paths v-u-x.
        let q_delta = (du as u128 - 1) * (dv as u128 - 1)
            + (pu - (dv - 1)) as u128
            + (pv - (du - 1)) as u128;
        self.q = self
            .q
            .checked_sub(q_delta)
            .ok_or_else(|| inconsistency("path-or-triangle count would go negative"))?;
        for order in 1..=self.k_star {
            let delta =
                binomial(du - 1, order as u64 - 1) + binomial(dv - 1, order as u64 - 1);
            self.stars[order - 1] = self.stars[order - 1]
                .checked_sub(delta)
                .ok_or_else(|| inconsistency("star count would go negative"))?;
        }
        for (&w, pw) in self.endpoint.iter_mut() {
            let delta = if w == u {
                dv - 1
            } else if w == v {
                du - 1
            } else {
                u64::from(view.topo.has_edge(w, u)) + u64::from(view.topo.has_edge(w, v))
            };
            *pw = pw
                .checked_sub(delta)
                .ok_or_else(|| inconsistency("endpoint path count would go negative"))?;
        }
        Ok(())
    }

    /// Core arrivals get a fresh endpoint-path value; departures drop it.
    pub(crate) fn on_core_event(&mut self, view: EngineView<'_>, event: CoreEvent) {
        match event.kind {
            CoreEventKind::Enter => {
                let fresh: u64 = view
                    .topo
                    .neighbors(event.element)
                    .iter()
                    .map(|&w| (view.topo.degree(w) - 1) as u64)
                    .sum();
                self.endpoint.insert(event.element, fresh);
            }
            CoreEventKind::Leave => {
                self.endpoint.remove(&event.element);
            }
        }
    }

    /// Recompute the degree-derived accumulators and the endpoint map from
    /// scratch and compare; test support.
    pub(crate) fn check_state(&self, view: EngineView<'_>) -> Result<(), String> {
        let mut p2: u128 = 0;
        let mut stars = vec![0u128; self.k_star];
        for (_, record) in view.topo.vertex_records() {
            let d = record.neighbors.len() as u64;
            p2 += binomial(d, 2);
            for order in 1..=self.k_star {
                stars[order - 1] += binomial(d, order as u64);
            }
        }
        if p2 != self.p2 {
            return Err(format!("p2 is {}, recomputation gives {p2}", self.p2));
        }
        if stars != self.stars {
            return Err(format!(
                "star counts {:?} disagree with recomputation {stars:?}",
                self.stars
            ));
        }
        if self.endpoint.len() != view.core.len() {
            return Err(format!(
                "endpoint map tracks {} vertices, core has {}",
                self.endpoint.len(),
                view.core.len()
            ));
        }
        for &x in view.core {
            let expected: u64 = view
                .topo
                .neighbors(x)
                .iter()
                .map(|&w| (view.topo.degree(w) - 1) as u64)
                .sum();
            match self.endpoint.get(&x) {
                Some(&p) if p == expected => {}
                Some(&p) => {
                    return Err(format!(
                        "endpoint paths for {x} are {p}, recomputation gives {expected}"
                    ))
                }
                None => return Err(format!("core vertex {x} missing from endpoint map")),
            }
        }
        Ok(())
    }
}

fn inconsistency(message: &str) -> GraphError {
    GraphError::Inconsistency(message.to_string())
}
