//! Bucketed h-index maintenance over a dynamic set of integer-valued
//! elements.
//!
//! The h-index of a value assignment is the largest `h` such that at least
//! `h` elements have value `>= h`. Four containers are kept in sync:
//!
//! * `values`: element id -> current value,
//! * `high`: a set `H` of exactly `h` elements, each with value `>= h`,
//! * `boundary`: `B = { x in H : value(x) == h }`,
//! * `buckets`: value `i` -> every element outside `B` with value `i`
//!   (only non-empty buckets are stored).
//!
//! Every element outside `H` has value `<= h`, which makes `|H|` the
//! h-index. Each update touches a constant number of container entries;
//! whole sets move between `boundary` and `buckets` by handle, never by
//! copying members.
//!
//! When an update forces one element of `boundary` out of `H` (or pulls one
//! element of a bucket back in), the structure takes the most recently
//! inserted candidate. Any candidate would do; using insertion order keeps
//! replays reproducible.

use std::collections::{HashMap, HashSet};

use indexmap::IndexSet;
use thiserror::Error;

/// Opaque element identifier.
pub type ElementId = u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HIndexError {
    #[error("element {0} is already present")]
    DuplicateElement(ElementId),
    #[error("element {0} is not present")]
    MissingElement(ElementId),
}

/// Net change in `high` membership caused by a single update. At most one
/// element enters and at most one leaves per update.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub(crate) struct MembershipChange {
    pub entered: Option<ElementId>,
    pub left: Option<ElementId>,
}

/// Dynamic h-index structure.
#[derive(Debug, Default, Clone)]
pub struct HIndex {
    values: HashMap<ElementId, u64>,
    high: HashSet<ElementId>,
    boundary: IndexSet<ElementId>,
    buckets: HashMap<u64, IndexSet<ElementId>>,
    dict_ops: u64,
}

impl HIndex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Current h-index; always equal to `|high|`.
    pub fn h(&self) -> u64 {
        self.high.len() as u64
    }

    /// Number of elements currently stored.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.values.contains_key(&x)
    }

    pub fn value(&self, x: ElementId) -> Option<u64> {
        self.values.get(&x).copied()
    }

    /// Whether `x` currently belongs to the high set.
    pub fn in_high(&self, x: ElementId) -> Result<bool, HIndexError> {
        if !self.contains(x) {
            return Err(HIndexError::MissingElement(x));
        }
        Ok(self.high.contains(&x))
    }

    /// Snapshot of the high set.
    pub fn high_set(&self) -> HashSet<ElementId> {
        self.high.clone()
    }

    /// Running count of container accesses performed by mutating
    /// operations. The per-operation delta is bounded by a constant.
    pub fn dict_ops(&self) -> u64 {
        self.dict_ops
    }

    /// Insert a new element with the given value.
    pub fn insert(&mut self, x: ElementId, value: u64) -> Result<(), HIndexError> {
        self.insert_tracked(x, value).map(|_| ())
    }

    /// Remove an element.
    pub fn remove(&mut self, x: ElementId) -> Result<(), HIndexError> {
        self.remove_tracked(x).map(|_| ())
    }

    /// Change the value of an existing element.
    ///
    /// If `x` is in the high set and both its old and new values are at
    /// least `|high|`, the high set is left untouched. Otherwise this
    /// behaves like remove followed by insert.
    pub fn set_value(&mut self, x: ElementId, value: u64) -> Result<(), HIndexError> {
        self.set_value_tracked(x, value).map(|_| ())
    }

    pub(crate) fn insert_tracked(
        &mut self,
        x: ElementId,
        value: u64,
    ) -> Result<MembershipChange, HIndexError> {
        self.dict_ops += 1;
        if self.values.contains_key(&x) {
            return Err(HIndexError::DuplicateElement(x));
        }
        self.dict_ops += 1;
        self.values.insert(x, value);
        self.bucket_add(value, x);

        let h = self.high.len() as u64;
        let mut change = MembershipChange::default();
        if value > h {
            // x must join the high set to keep non-members at value <= h.
            self.dict_ops += 1;
            self.high.insert(x);
            change.entered = Some(x);
            self.dict_ops += 1;
            if let Some(y) = self.boundary.pop() {
                // Swap: y sat at value exactly h, legal outside the high set.
                self.dict_ops += 2;
                self.high.remove(&y);
                self.bucket_add(h, y);
                change.left = Some(y);
            } else {
                // h-index grows by one. Everything valued h+1 was already
                // high and becomes the new boundary wholesale.
                self.dict_ops += 1;
                self.boundary = self.buckets.remove(&(h + 1)).unwrap_or_default();
            }
        }
        Ok(change)
    }

    pub(crate) fn remove_tracked(
        &mut self,
        x: ElementId,
    ) -> Result<MembershipChange, HIndexError> {
        self.dict_ops += 1;
        let Some(value) = self.values.remove(&x) else {
            return Err(HIndexError::MissingElement(x));
        };
        self.dict_ops += 1;
        if !self.boundary.swap_remove(&x) {
            self.bucket_remove(value, x);
        }

        let mut change = MembershipChange::default();
        self.dict_ops += 1;
        if self.high.remove(&x) {
            change.left = Some(x);
            let h = self.high.len() as u64 + 1; // |high| before x left
            self.dict_ops += 1;
            if let Some(bucket) = self.buckets.get_mut(&h) {
                // Restore: some element outside the high set sits at value
                // exactly h and can take x's place.
                let z = bucket.pop().expect("stored buckets are non-empty");
                if bucket.is_empty() {
                    self.buckets.remove(&h);
                }
                self.dict_ops += 2;
                self.high.insert(z);
                self.boundary.insert(z);
                change.entered = Some(z);
            } else {
                // h-index drops by one. Former boundary members keep their
                // high membership but no longer sit at the new |high|.
                if !self.boundary.is_empty() {
                    self.dict_ops += 1;
                    self.buckets.insert(h, std::mem::take(&mut self.boundary));
                }
            }
        }
        Ok(change)
    }

    pub(crate) fn set_value_tracked(
        &mut self,
        x: ElementId,
        value: u64,
    ) -> Result<MembershipChange, HIndexError> {
        self.dict_ops += 1;
        let Some(&old) = self.values.get(&x) else {
            return Err(HIndexError::MissingElement(x));
        };
        let h = self.high.len() as u64;
        self.dict_ops += 1;
        if self.high.contains(&x) && value >= h {
            // x stays eligible; the high set is untouched and only the
            // boundary/bucket position of x needs adjusting.
            self.dict_ops += 1;
            self.values.insert(x, value);
            if old != value {
                self.dict_ops += 1;
                if self.boundary.swap_remove(&x) {
                    // old == h < value
                    self.bucket_add(value, x);
                } else if value == h {
                    self.bucket_remove(old, x);
                    self.dict_ops += 1;
                    self.boundary.insert(x);
                } else {
                    self.bucket_remove(old, x);
                    self.bucket_add(value, x);
                }
            }
            return Ok(MembershipChange::default());
        }

        let removed = self.remove_tracked(x)?;
        let inserted = self.insert_tracked(x, value)?;
        Ok(MembershipChange {
            entered: inserted.entered.or(removed.entered),
            left: inserted.left.or(removed.left),
        })
    }

    fn bucket_add(&mut self, value: u64, x: ElementId) {
        self.dict_ops += 1;
        self.buckets.entry(value).or_default().insert(x);
    }

    fn bucket_remove(&mut self, value: u64, x: ElementId) {
        self.dict_ops += 1;
        let bucket = self
            .buckets
            .get_mut(&value)
            .expect("element tracked in its value bucket");
        bucket.swap_remove(&x);
        if bucket.is_empty() {
            self.buckets.remove(&value);
        }
    }

    /// Exhaustive structural check, intended for tests. Cost is linear in
    /// the number of stored elements.
    pub fn check_invariants(&self) -> Result<(), String> {
        let h = self.high.len() as u64;
        for (&x, &v) in &self.values {
            let in_high = self.high.contains(&x);
            if in_high && v < h {
                return Err(format!("high element {x} has value {v} < h {h}"));
            }
            if !in_high && v > h {
                return Err(format!("non-high element {x} has value {v} > h {h}"));
            }
            let in_boundary = self.boundary.contains(&x);
            let expected_boundary = in_high && v == h;
            if in_boundary != expected_boundary {
                return Err(format!(
                    "element {x} boundary membership {in_boundary}, expected {expected_boundary}"
                ));
            }
            let in_bucket = self
                .buckets
                .get(&v)
                .map_or(false, |bucket| bucket.contains(&x));
            if in_bucket == in_boundary {
                return Err(format!(
                    "element {x} must sit in exactly one of boundary/bucket"
                ));
            }
        }
        for x in &self.high {
            if !self.values.contains_key(x) {
                return Err(format!("high member {x} has no value entry"));
            }
        }
        for x in &self.boundary {
            if !self.high.contains(x) {
                return Err(format!("boundary member {x} is not high"));
            }
        }
        let mut bucketed = 0usize;
        for (&value, bucket) in &self.buckets {
            if bucket.is_empty() {
                return Err(format!("empty bucket stored for value {value}"));
            }
            bucketed += bucket.len();
            for x in bucket {
                match self.values.get(x) {
                    Some(&v) if v == value => {}
                    Some(&v) => {
                        return Err(format!("bucket {value} holds {x} with value {v}"))
                    }
                    None => return Err(format!("bucket {value} holds unknown element {x}")),
                }
            }
        }
        if bucketed + self.boundary.len() != self.values.len() {
            return Err("boundary and buckets do not partition the elements".into());
        }
        Ok(())
    }
}
