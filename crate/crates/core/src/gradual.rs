//! Gradual partition of the high-degree elements into a stable core.
//!
//! The h-index structure may shuffle its high set on every update, which is
//! too volatile for listeners that pay linear cost per membership change.
//! This layer tracks a smaller core `P` inside the high set `H` with lazier
//! movement:
//!
//! * an element is promoted into `P` once its value reaches `2 |H|`,
//! * an element is demoted only when it drops out of `H` entirely.
//!
//! Values change by single steps here (the intended use is degree
//! maintenance), so between promotion and demotion an element's value stays
//! above `|H|`, and `|P| <= |H|` while every member of `P` has value at
//! least `|H|`. Members of `H \ P` wait in buckets keyed by value; when
//! `|H|` drops by one, exactly the buckets at the two newly eligible values
//! need sweeping.
//!
//! Each operation reports the resulting core membership changes in the
//! order they were applied. Amortized over any update sequence, core
//! changes are rare: a run of `U` updates from an empty structure causes
//! `O(U / h)` of them when the h-index stays near `h`, which is what makes
//! a per-core-change cost of `O(h^2)` affordable downstream.

use std::collections::HashMap;

use indexmap::IndexSet;
use thiserror::Error;

use crate::hindex::{ElementId, HIndex, MembershipChange};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradualError {
    #[error("element {0} is already present")]
    DuplicateElement(ElementId),
    #[error("element {0} is not present")]
    MissingElement(ElementId),
    #[error("element {0} has value 0 and cannot be decremented")]
    DecrementUnderflow(ElementId),
    #[error("element {element} still has value {value}, refusing zero-removal")]
    NonZeroRemoval { element: ElementId, value: u64 },
}

/// Direction of a core membership change.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreEventKind {
    Enter,
    Leave,
}

/// One core membership change, reported by the operation that caused it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoreEvent {
    pub element: ElementId,
    pub kind: CoreEventKind,
}

impl CoreEvent {
    pub fn enter(element: ElementId) -> Self {
        CoreEvent { element, kind: CoreEventKind::Enter }
    }

    pub fn leave(element: ElementId) -> Self {
        CoreEvent { element, kind: CoreEventKind::Leave }
    }
}

/// Lifetime counters describing how much core churn a workload generated.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct CoreChangeCounters {
    pub core_additions: u64,
    pub core_removals: u64,
    /// Sum over all updates of `1 / max(h, 1)` with `h` measured after the
    /// update. Core churn is expected to stay within a constant factor of
    /// this sum.
    pub harmonic_sum: f64,
    /// Number of times the h-index doubled or halved relative to the start
    /// of the current epoch.
    pub epoch_count: u64,
    pub epoch_start_h: u64,
}

/// h-index structure extended with the gradual core partition.
#[derive(Debug, Default, Clone)]
pub struct GradualPartition {
    hindex: HIndex,
    core: IndexSet<ElementId>,
    waiting: HashMap<u64, IndexSet<ElementId>>,
    counters: CoreChangeCounters,
}

impl GradualPartition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn h(&self) -> u64 {
        self.hindex.h()
    }

    pub fn len(&self) -> usize {
        self.hindex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hindex.is_empty()
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.hindex.contains(x)
    }

    pub fn value(&self, x: ElementId) -> Option<u64> {
        self.hindex.value(x)
    }

    pub fn in_core(&self, x: ElementId) -> bool {
        self.core.contains(&x)
    }

    pub fn core_len(&self) -> usize {
        self.core.len()
    }

    /// Core members in their current promotion order.
    pub fn core(&self) -> impl ExactSizeIterator<Item = ElementId> + '_ {
        self.core.iter().copied()
    }

    pub(crate) fn core_index(&self) -> &IndexSet<ElementId> {
        &self.core
    }

    pub fn counters(&self) -> &CoreChangeCounters {
        &self.counters
    }

    pub fn hindex(&self) -> &HIndex {
        &self.hindex
    }

    /// Add a new element with value 0. Never changes the high set or the
    /// core, so no events are returned.
    pub fn insert_zero(&mut self, x: ElementId) -> Result<(), GradualError> {
        if self.hindex.contains(x) {
            return Err(GradualError::DuplicateElement(x));
        }
        let change = self
            .hindex
            .insert_tracked(x, 0)
            .expect("checked absent above");
        debug_assert_eq!(change, MembershipChange::default());
        self.note_update();
        Ok(())
    }

    /// Remove an element whose value has returned to 0. Like
    /// [`insert_zero`](Self::insert_zero) this cannot move anything.
    pub fn remove_zero(&mut self, x: ElementId) -> Result<(), GradualError> {
        match self.hindex.value(x) {
            None => return Err(GradualError::MissingElement(x)),
            Some(0) => {}
            Some(value) => return Err(GradualError::NonZeroRemoval { element: x, value }),
        }
        let change = self
            .hindex
            .remove_tracked(x)
            .expect("checked present above");
        debug_assert_eq!(change, MembershipChange::default());
        self.note_update();
        Ok(())
    }

    /// Raise the value of `x` by one.
    pub fn increment(&mut self, x: ElementId) -> Result<Vec<CoreEvent>, GradualError> {
        let Some(value) = self.hindex.value(x) else {
            return Err(GradualError::MissingElement(x));
        };
        Ok(self.change_value(x, value + 1))
    }

    /// Lower the value of `x` by one.
    pub fn decrement(&mut self, x: ElementId) -> Result<Vec<CoreEvent>, GradualError> {
        let Some(value) = self.hindex.value(x) else {
            return Err(GradualError::MissingElement(x));
        };
        if value == 0 {
            return Err(GradualError::DecrementUnderflow(x));
        }
        Ok(self.change_value(x, value - 1))
    }

    fn change_value(&mut self, x: ElementId, new_value: u64) -> Vec<CoreEvent> {
        let h_before = self.hindex.h();
        let was_high = self
            .hindex
            .in_high(x)
            .expect("presence checked by the caller");
        if was_high && !self.core.contains(&x) {
            // Pull x out of its waiting bucket before the value moves; it is
            // re-placed below if it stays high.
            let old = self.hindex.value(x).expect("present");
            self.waiting_remove(old, x);
        }

        let change = self
            .hindex
            .set_value_tracked(x, new_value)
            .expect("presence checked by the caller");
        let h = self.hindex.h();
        let mut events = Vec::new();

        if let Some(y) = change.left {
            if self.core.swap_remove(&y) {
                self.counters.core_removals += 1;
                events.push(CoreEvent::leave(y));
            } else if y != x {
                let v = self.hindex.value(y).expect("displaced elements stay stored");
                self.waiting_remove(v, y);
            }
        }
        if let Some(z) = change.entered {
            let v = self.hindex.value(z).expect("entered elements are stored");
            self.place_high(z, v, h, &mut events);
        }
        if was_high && change.left != Some(x) && change.entered != Some(x) {
            // x stayed high the whole time; decide its new resting place.
            if !self.core.contains(&x) {
                self.place_high(x, new_value, h, &mut events);
            }
        }
        if h < h_before {
            // The promotion threshold 2h fell by two, so exactly the
            // buckets at the two newly eligible values can move.
            for key in [2 * h, 2 * h + 1] {
                if let Some(bucket) = self.waiting.remove(&key) {
                    for w in bucket {
                        self.promote(w, &mut events);
                    }
                }
            }
        }

        self.note_update();
        events
    }

    fn place_high(&mut self, x: ElementId, value: u64, h: u64, events: &mut Vec<CoreEvent>) {
        if value >= 2 * h {
            self.promote(x, events);
        } else {
            self.waiting.entry(value).or_default().insert(x);
        }
    }

    fn promote(&mut self, x: ElementId, events: &mut Vec<CoreEvent>) {
        self.core.insert(x);
        self.counters.core_additions += 1;
        events.push(CoreEvent::enter(x));
    }

    fn waiting_remove(&mut self, value: u64, x: ElementId) {
        let bucket = self
            .waiting
            .get_mut(&value)
            .expect("waiting element tracked under its value");
        bucket.swap_remove(&x);
        if bucket.is_empty() {
            self.waiting.remove(&value);
        }
    }

    fn note_update(&mut self) {
        let h = self.hindex.h();
        self.counters.harmonic_sum += if h >= 1 { 1.0 / h as f64 } else { 1.0 };
        let s = self.counters.epoch_start_h;
        let new_epoch = if s == 0 { h >= 1 } else { h >= 2 * s || 2 * h <= s };
        if new_epoch {
            self.counters.epoch_count += 1;
            self.counters.epoch_start_h = h;
        }
    }

    /// Structural check for tests; linear in the number of elements.
    pub fn check_invariants(&self) -> Result<(), String> {
        self.hindex.check_invariants()?;
        let h = self.hindex.h();
        for &x in &self.core {
            if !self.hindex.in_high(x).map_err(|e| e.to_string())? {
                return Err(format!("core member {x} is not high"));
            }
        }
        let mut waiting_total = 0usize;
        for (&value, bucket) in &self.waiting {
            if bucket.is_empty() {
                return Err(format!("empty waiting bucket stored for value {value}"));
            }
            waiting_total += bucket.len();
            for &x in bucket {
                match self.hindex.value(x) {
                    Some(v) if v == value => {}
                    Some(v) => {
                        return Err(format!("waiting bucket {value} holds {x} with value {v}"))
                    }
                    None => return Err(format!("waiting bucket {value} holds unknown {x}")),
                }
                if !self.hindex.in_high(x).unwrap_or(false) {
                    return Err(format!("waiting element {x} is not high"));
                }
                if self.core.contains(&x) {
                    return Err(format!("element {x} is both core and waiting"));
                }
                if value >= 2 * h {
                    return Err(format!(
                        "waiting element {x} at value {value} should have been promoted (h = {h})"
                    ));
                }
            }
        }
        if waiting_total + self.core.len() != h as usize {
            return Err("core and waiting buckets do not partition the high set".into());
        }
        Ok(())
    }
}
