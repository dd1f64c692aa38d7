//! Finite carriers, bitset subsets, and the five lifting combinators.
//!
//! Everything here works on index spaces: a carrier of `n` values is
//! addressed by `0..n`, maps are slices indexed by argument, and subsets
//! are bitsets over the index space.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::Lattice;

/// A subset of a finite index space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(FixedBitSet);

impl Subset {
    pub fn empty(n: usize) -> Self {
        Subset(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Self {
        let mut s = FixedBitSet::with_capacity(n);
        s.insert_range(..);
        Subset(s)
    }

    pub fn singleton(n: usize, i: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(i);
        s
    }

    pub fn from_indices(n: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for i in items {
            s.insert(i);
        }
        s
    }

    /// Size of the index space, not the number of members.
    pub fn capacity(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, i: usize) {
        self.0.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.0.set(i, false);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.ones().next()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.0.intersect_with(&other.0);
        s
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.0.difference_with(&other.0);
        s
    }

    pub fn union_with(&mut self, other: &Subset) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &Subset) {
        self.0.intersect_with(&other.0);
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Renders `{a,b,c}`. Members sort numerically when every name is an
/// integer, otherwise they keep index order.
pub fn fmt_set(names: &[String], s: &Subset) -> String {
    let mut members: Vec<usize> = s.iter().collect();
    let numeric: Option<Vec<i64>> = members.iter().map(|&i| names[i].parse().ok()).collect();
    if let Some(values) = numeric {
        let mut pairs: Vec<(i64, usize)> = values.into_iter().zip(members).collect();
        pairs.sort();
        members = pairs.into_iter().map(|(_, i)| i).collect();
    }
    let parts: Vec<&str> = members.iter().map(|&i| names[i].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Arithmetic used to close integer operations over a bounded carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arith {
    /// Clamp into `[-N, N]`.
    Saturating,
    /// Wrap around on `[-N, N-1]`.
    Modular,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CarrierError {
    #[error("saturating carriers are [-N,N] and modular carriers [-N,N-1]; got [{lo},{hi}] {mode:?}")]
    BadRange { lo: i64, hi: i64, mode: Arith },
    #[error("duplicate carrier value {0}")]
    Duplicate(String),
    #[error("empty carrier")]
    Empty,
    #[error("unknown carrier value {0}")]
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Values {
    Ints { lo: i64, hi: i64, mode: Arith, values: Vec<i64>, pos: Vec<usize> },
    Atoms,
}

/// The concrete carrier set `A`.
///
/// Integer carriers are indexed by magnitude, positives first:
/// `0, 1, -1, 2, -2, ...`. Exhaustive checkers walk carriers in index
/// order, so counterexamples near zero are reported first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carrier {
    values: Values,
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Carrier {
    pub fn ints(lo: i64, hi: i64, mode: Arith) -> Result<Self, CarrierError> {
        let ok = match mode {
            Arith::Saturating => hi >= 0 && lo == -hi,
            Arith::Modular => hi >= 0 && lo == -hi - 1,
        };
        if !ok {
            return Err(CarrierError::BadRange { lo, hi, mode });
        }
        let mut values: Vec<i64> = (lo..=hi).collect();
        values.sort_by_key(|&v| (v.abs(), v < 0));
        let mut pos = vec![0; values.len()];
        for (i, &v) in values.iter().enumerate() {
            pos[(v - lo) as usize] = i;
        }
        let names: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Ok(Carrier { values: Values::Ints { lo, hi, mode, values, pos }, names, index })
    }

    pub fn saturating(n: i64) -> Result<Self, CarrierError> {
        Self::ints(-n, n, Arith::Saturating)
    }

    pub fn modular(n: i64) -> Result<Self, CarrierError> {
        Self::ints(-n, n - 1, Arith::Modular)
    }

    pub fn atoms<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, CarrierError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(CarrierError::Empty);
        }
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(CarrierError::Duplicate(n.clone()));
            }
        }
        Ok(Carrier { values: Values::Atoms, names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn empty(&self) -> Subset {
        Subset::empty(self.len())
    }

    pub fn fmt_set(&self, s: &Subset) -> String {
        fmt_set(&self.names, s)
    }

    /// `(lo, hi, mode)` for integer carriers.
    pub fn int_range(&self) -> Option<(i64, i64, Arith)> {
        match &self.values {
            Values::Ints { lo, hi, mode, .. } => Some((*lo, *hi, *mode)),
            Values::Atoms => None,
        }
    }

    /// The bound `N` of an integer carrier.
    pub fn bound(&self) -> Option<i64> {
        self.int_range().map(|(lo, _, _)| -lo)
    }

    pub fn int(&self, i: usize) -> Option<i64> {
        match &self.values {
            Values::Ints { values, .. } => Some(values[i]),
            Values::Atoms => None,
        }
    }

    pub fn index_of_int(&self, v: i64) -> Option<usize> {
        match &self.values {
            Values::Ints { lo, hi, pos, .. } if (*lo..=*hi).contains(&v) => Some(pos[(v - lo) as usize]),
            _ => None,
        }
    }

    /// Brings an arbitrary integer back into the carrier under its mode.
    pub fn normalize(&self, v: i64) -> Option<i64> {
        let (lo, hi, mode) = self.int_range()?;
        Some(match mode {
            Arith::Saturating => v.clamp(lo, hi),
            Arith::Modular => (v - lo).rem_euclid(hi - lo + 1) + lo,
        })
    }

    /// Index of `normalize(v)`.
    pub fn close(&self, v: i64) -> Option<usize> {
        self.index_of_int(self.normalize(v)?)
    }

    /// Indices whose integer value satisfies `pred`.
    pub fn ints_where(&self, pred: impl Fn(i64) -> bool) -> Subset {
        let mut s = self.empty();
        if let Values::Ints { values, .. } = &self.values {
            for (i, &v) in values.iter().enumerate() {
                if pred(v) {
                    s.insert(i);
                }
            }
        }
        s
    }

    /// Indices in ascending numeric order (index order for atoms).
    pub fn display_order(&self) -> Vec<usize> {
        match &self.values {
            Values::Ints { pos, .. } => pos.clone(),
            Values::Atoms => (0..self.len()).collect(),
        }
    }
}

/// `f⋄(X) = {f(x) | x ∈ X}`.
pub fn lift_diamond(f: &[usize], codomain: usize, x: &Subset) -> Subset {
    Subset::from_indices(codomain, x.iter().map(|i| f[i]))
}

/// `g*(X) = ∪ {g(x) | x ∈ X}`.
pub fn lift_star(g: &[Subset], codomain: usize, x: &Subset) -> Subset {
    let mut out = Subset::empty(codomain);
    for i in x.iter() {
        out.union_with(&g[i]);
    }
    out
}

/// `k∨(X) = ∨ {k(a) | a ∈ X}`, with `k∨(∅)` the bottom of `l`.
pub fn lift_lub(l: &Lattice, k: &[usize], x: &Subset) -> usize {
    l.join_all(x.iter().map(|i| k[i]))
}

/// `f▷(a) = {f(a)}`.
pub fn lift_singleton(f: &[usize], codomain: usize, a: usize) -> Subset {
    Subset::singleton(codomain, f[a])
}

/// `⟨h⟩(a) = h({a})`.
pub fn lower_singleton<T>(h: impl Fn(&Subset) -> T, n: usize, a: usize) -> T {
    h(&Subset::singleton(n, a))
}

/// The clause of the partition definition that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionViolation {
    EmptyBlock { block: usize },
    Overlap { element: usize, blocks: (usize, usize) },
    Uncovered { element: usize },
}

impl PartitionViolation {
    pub fn describe(&self, names: &[String]) -> String {
        match self {
            PartitionViolation::EmptyBlock { block } => format!("block #{block} is empty"),
            PartitionViolation::Overlap { element, blocks: (i, j) } => {
                format!("{} lies in blocks #{i} and #{j}", names[*element])
            }
            PartitionViolation::Uncovered { element } => format!("{} lies in no block", names[*element]),
        }
    }
}

/// Checks that `blocks` are nonempty, pairwise disjoint and cover `0..n`.
pub fn check_partition(n: usize, blocks: &[Subset]) -> Result<(), PartitionViolation> {
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (b, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(PartitionViolation::EmptyBlock { block: b });
        }
        for x in block.iter() {
            if let Some(prev) = owner[x] {
                return Err(PartitionViolation::Overlap { element: x, blocks: (prev, b) });
            }
            owner[x] = Some(b);
        }
    }
    match owner.iter().position(Option::is_none) {
        Some(x) => Err(PartitionViolation::Uncovered { element: x }),
        None => Ok(()),
    }
}

/// Deduplicates a family, keeping first occurrences.
pub fn dedup_family(family: impl IntoIterator<Item = Subset>) -> Vec<Subset> {
    let mut seen = std::collections::HashSet::new();
    family.into_iter().filter(|s| seen.insert(s.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn magnitude_index_order() {
        let c = Carrier::saturating(2).unwrap();
        assert_eq!(c.names(), ["0", "1", "-1", "2", "-2"]);
        assert_eq!(c.index_of_int(-2), Some(4));
        let m = Carrier::modular(2).unwrap();
        assert_eq!(m.names(), ["0", "1", "-1", "-2"]);
        assert_eq!(m.display_order().iter().map(|&i| m.int(i).unwrap()).collect::<Vec<_>>(), [-2, -1, 0, 1]);
    }

    #[test]
    fn range_shapes_enforced() {
        assert!(Carrier::ints(-3, 4, Arith::Saturating).is_err());
        assert!(Carrier::ints(-3, 3, Arith::Modular).is_err());
        assert!(Carrier::ints(-4, 3, Arith::Modular).is_ok());
    }

    #[test]
    fn closing_arithmetic() {
        let s = Carrier::saturating(4).unwrap();
        assert_eq!(s.normalize(9), Some(4));
        assert_eq!(s.normalize(-9), Some(-4));
        let m = Carrier::modular(4).unwrap();
        assert_eq!(m.normalize(4), Some(-4));
        assert_eq!(m.normalize(-5), Some(3));
    }

    #[test]
    fn diamond_of_square() {
        let c = Carrier::saturating(4).unwrap();
        let sq: Vec<usize> = (0..c.len()).map(|i| c.close(c.int(i).unwrap().pow(2)).unwrap()).collect();
        let x = Subset::from_indices(c.len(), [c.index_of_int(-2).unwrap(), c.index_of_int(2).unwrap()]);
        let img = lift_diamond(&sq, c.len(), &x);
        assert_eq!(c.fmt_set(&img), "{4}");
    }

    #[test]
    fn star_of_empty_is_empty() {
        let g = vec![Subset::full(3); 2];
        assert!(lift_star(&g, 3, &Subset::empty(2)).is_empty());
    }

    #[test]
    fn parity_partition() {
        let c = Carrier::modular(2).unwrap();
        let evens = c.ints_where(|v| v % 2 == 0);
        let odds = c.ints_where(|v| v % 2 != 0);
        assert_eq!(check_partition(c.len(), &[evens, odds]), Ok(()));
    }

    #[test]
    fn positives_and_all_overlap_at_one() {
        let c = Carrier::saturating(3).unwrap();
        let pos = c.ints_where(|v| v > 0);
        let err = check_partition(c.len(), &[pos, c.full()]).unwrap_err();
        assert_eq!(err, PartitionViolation::Overlap { element: c.index_of_int(1).unwrap(), blocks: (0, 1) });
    }

    #[test]
    fn empty_block_rejected() {
        assert_eq!(check_partition(0, &[Subset::empty(0)]), Err(PartitionViolation::EmptyBlock { block: 0 }));
    }

    #[test]
    fn set_rendering() {
        let c = Carrier::saturating(3).unwrap();
        let s = c.ints_where(|v| v < 0 || v == 2);
        assert_eq!(c.fmt_set(&s), "{-3,-2,-1,2}");
        let names: Vec<String> = ["b", "a"].map(String::from).to_vec();
        assert_eq!(fmt_set(&names, &Subset::full(2)), "{b,a}");
    }
}
