//! Finite posets and complete lattices.
//!
//! A [`Poset`] either stores its order as full up/down bitset matrices or,
//! for families of sets ordered by inclusion, as the sets themselves. The
//! second form keeps powersets and downset lattices cheap to build.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::setops::{fmt_set, Subset};

/// Upper bound on the number of downsets [`downsets_lattice`] enumerates.
pub const DOWNSET_LIMIT: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("{0} ≤ {1} and {1} ≤ {0} for distinct elements")]
    CycleDetected(String, String),
    #[error("relation is not a partial order at ({0}, {1})")]
    NotPartialOrder(String, String),
    #[error("{a} and {b} have no {bound}")]
    NotLattice { a: String, b: String, bound: &'static str },
    #[error("empty poset has no top or bottom")]
    Empty,
    #[error("{count} elements exceed the limit of {limit}")]
    TooLarge { count: usize, limit: usize },
}

#[derive(Clone, Debug)]
enum Order {
    Matrix { up: Vec<Subset>, down: Vec<Subset> },
    Sets { sets: Vec<Subset>, by_set: HashMap<Subset, usize> },
}

/// A finite partial order over named elements.
#[derive(Clone, Debug)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    order: Order,
}

fn index_names(names: &[String]) -> Result<HashMap<String, usize>, OrderError> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(OrderError::DuplicateElement(n.clone()));
        }
    }
    Ok(index)
}

impl Poset {
    /// Reflexive-transitive closure of `pairs` (each `(x, y)` reads `x ≤ y`).
    pub fn build<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Self, OrderError> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = index_names(&names)?;
        let n = names.len();
        let mut up: Vec<Subset> = (0..n).map(|i| Subset::singleton(n, i)).collect();
        let lookup = |s: &S| index.get(s.as_ref()).copied().ok_or_else(|| OrderError::UnknownElement(s.as_ref().into()));
        for (x, y) in pairs {
            let (i, j) = (lookup(x)?, lookup(y)?);
            up[i].insert(j);
        }
        // Warshall over bitset rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if i != j && up[j].contains(i) {
                    return Err(OrderError::CycleDetected(names[i].clone(), names[j].clone()));
                }
            }
        }
        Ok(Self::from_up(names, index, up))
    }

    /// A poset from an explicit relation, which must already be a partial order.
    pub fn from_relation(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self, OrderError> {
        let index = index_names(&names)?;
        let n = names.len();
        let up: Vec<Subset> = (0..n).map(|i| Subset::from_indices(n, (0..n).filter(|&j| leq(i, j)))).collect();
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(OrderError::NotPartialOrder(names[i].clone(), names[i].clone()));
            }
            for j in up[i].iter() {
                if i != j && up[j].contains(i) {
                    return Err(OrderError::CycleDetected(names[i].clone(), names[j].clone()));
                }
                if !up[j].is_subset(&up[i]) {
                    let k = up[j].difference(&up[i]).first().unwrap_or(j);
                    return Err(OrderError::NotPartialOrder(names[i].clone(), names[k].clone()));
                }
            }
        }
        Ok(Self::from_up(names, index, up))
    }

    fn from_up(names: Vec<String>, index: HashMap<String, usize>, up: Vec<Subset>) -> Self {
        let n = names.len();
        let mut down = vec![Subset::empty(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        Poset { names, index, order: Order::Matrix { up, down } }
    }

    pub fn discrete<S: AsRef<str>>(elements: &[S]) -> Result<Self, OrderError> {
        Self::build(elements, &[])
    }

    /// A chain in the given order, least first.
    pub fn chain<S: AsRef<str>>(elements: &[S]) -> Result<Self, OrderError> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        Self::from_relation(names, |i, j| i <= j)
    }

    /// A family of distinct sets ordered by inclusion.
    pub fn of_sets(names: Vec<String>, sets: Vec<Subset>) -> Result<Self, OrderError> {
        let index = index_names(&names)?;
        assert_eq!(names.len(), sets.len(), "one name per set");
        let mut by_set = HashMap::with_capacity(sets.len());
        for (i, s) in sets.iter().enumerate() {
            if let Some(prev) = by_set.insert(s.clone(), i) {
                return Err(OrderError::CycleDetected(names[prev].clone(), names[i].clone()));
            }
        }
        Ok(Poset { names, index, order: Order::Sets { sets, by_set } })
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

    pub fn leq(&self, i: usize, j: usize) -> bool {
        match &self.order {
            Order::Matrix { up, .. } => up[i].contains(j),
            Order::Sets { sets, .. } => sets[i].is_subset(&sets[j]),
        }
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// `{j | i ≤ j}`.
    pub fn up(&self, i: usize) -> Subset {
        match &self.order {
            Order::Matrix { up, .. } => up[i].clone(),
            Order::Sets { .. } => Subset::from_indices(self.len(), (0..self.len()).filter(|&j| self.leq(i, j))),
        }
    }

    /// `↓i = {j | j ≤ i}`.
    pub fn down(&self, i: usize) -> Subset {
        match &self.order {
            Order::Matrix { down, .. } => down[i].clone(),
            Order::Sets { .. } => Subset::from_indices(self.len(), (0..self.len()).filter(|&j| self.leq(j, i))),
        }
    }

    pub fn down_closure(&self, x: &Subset) -> Subset {
        let mut out = Subset::empty(self.len());
        for i in x.iter() {
            out.union_with(&self.down(i));
        }
        out
    }

    pub fn is_down_closed(&self, x: &Subset) -> bool {
        x.iter().all(|i| self.down(i).is_subset(x))
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.len()).all(|i| self.up(i).len() == 1)
    }

    /// The underlying sets when the order is inclusion of a set family.
    pub fn sets(&self) -> Option<&[Subset]> {
        match &self.order {
            Order::Sets { sets, .. } => Some(sets),
            Order::Matrix { .. } => None,
        }
    }

    pub fn set_index(&self, s: &Subset) -> Option<usize> {
        match &self.order {
            Order::Sets { by_set, .. } => by_set.get(s).copied(),
            Order::Matrix { .. } => None,
        }
    }

    /// Covering pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let ups: Vec<Subset> = (0..n).map(|i| self.up(i)).collect();
        let mut out = Vec::new();
        for i in 0..n {
            for j in ups[i].iter() {
                if i != j && !ups[i].iter().any(|k| k != i && k != j && ups[k].contains(j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Every downward-closed subset, least first by breadth.
    pub fn downsets(&self) -> Result<Vec<Subset>, OrderError> {
        let n = self.len();
        let strict_down: Vec<Subset> = (0..n)
            .map(|i| {
                let mut d = self.down(i);
                d.remove(i);
                d
            })
            .collect();
        let start = Subset::empty(n);
        let mut seen: HashSet<Subset> = HashSet::from([start.clone()]);
        let mut out = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(d) = queue.pop_front() {
            for (x, below) in strict_down.iter().enumerate() {
                if !d.contains(x) && below.is_subset(&d) {
                    let mut next = d.clone();
                    next.insert(x);
                    if seen.insert(next.clone()) {
                        if out.len() == DOWNSET_LIMIT {
                            return Err(OrderError::TooLarge { count: DOWNSET_LIMIT + 1, limit: DOWNSET_LIMIT });
                        }
                        out.push(next.clone());
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
struct Tables {
    join: Vec<u32>,
    meet: Vec<u32>,
}

/// A finite complete lattice.
#[derive(Clone, Debug)]
pub struct Lattice {
    poset: Poset,
    top: usize,
    bottom: usize,
    tables: Option<Tables>,
}

impl Lattice {
    /// Checks completeness through pairwise bounds; the error names the
    /// first pair lacking a join or meet.
    pub fn new(poset: Poset) -> Result<Self, OrderError> {
        if poset.is_empty() {
            return Err(OrderError::Empty);
        }
        if let Some(l) = Self::moore(&poset)? {
            return Ok(l);
        }
        let poset = match poset.order {
            Order::Sets { ref sets, .. } => {
                let sets = sets.clone();
                Poset::from_relation(poset.names.clone(), |i, j| sets[i].is_subset(&sets[j]))?
            }
            Order::Matrix { .. } => poset,
        };
        let n = poset.len();
        let (up, down) = match &poset.order {
            Order::Matrix { up, down } => (up, down),
            Order::Sets { .. } => unreachable!("converted above"),
        };
        let up_count: Vec<usize> = up.iter().map(Subset::len).collect();
        let down_count: Vec<usize> = down.iter().map(Subset::len).collect();
        let least = |bounds: &Subset, rows: &[Subset], count: &[usize]| -> Option<usize> {
            let cand = bounds.iter().max_by_key(|&k| count[k])?;
            bounds.is_subset(&rows[cand]).then_some(cand)
        };
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for i in 0..n {
            for j in i..n {
                let ub = up[i].intersection(&up[j]);
                let lb = down[i].intersection(&down[j]);
                let missing = |bound| OrderError::NotLattice { a: poset.names[i].clone(), b: poset.names[j].clone(), bound };
                let jn = least(&ub, up, &up_count).ok_or_else(|| missing("least upper bound"))?;
                let mt = least(&lb, down, &down_count).ok_or_else(|| missing("greatest lower bound"))?;
                join[i * n + j] = jn as u32;
                join[j * n + i] = jn as u32;
                meet[i * n + j] = mt as u32;
                meet[j * n + i] = mt as u32;
            }
        }
        let top = (0..n).fold(0, |acc, k| join[acc * n + k] as usize);
        let bottom = (0..n).fold(0, |acc, k| meet[acc * n + k] as usize);
        Ok(Lattice { poset, top, bottom, tables: Some(Tables { join, meet }) })
    }

    /// Fast path for a family closed under intersection with a greatest member.
    fn moore(poset: &Poset) -> Result<Option<Self>, OrderError> {
        let Some(sets) = poset.sets() else { return Ok(None) };
        let Some(top) = (0..sets.len()).max_by_key(|&i| sets[i].len()) else { return Ok(None) };
        if !sets.iter().all(|s| s.is_subset(&sets[top])) {
            return Ok(None);
        }
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if poset.set_index(&sets[i].intersection(&sets[j])).is_none() {
                    return Ok(None);
                }
            }
        }
        let bottom = (0..sets.len()).min_by_key(|&i| sets[i].len()).unwrap_or(top);
        Ok(Some(Lattice { poset: poset.clone(), top, bottom, tables: None }))
    }

    /// `℘(ground)` with element `i` the set whose bitmask is `i`.
    pub fn powerset<S: AsRef<str>>(ground: &[S]) -> Result<Self, OrderError> {
        const LIMIT: usize = 16;
        let k = ground.len();
        if k > LIMIT {
            return Err(OrderError::TooLarge { count: k, limit: LIMIT });
        }
        let ground: Vec<String> = ground.iter().map(|s| s.as_ref().to_string()).collect();
        let sets: Vec<Subset> = (0..1usize << k).map(|m| Subset::from_indices(k, (0..k).filter(|b| m >> b & 1 == 1))).collect();
        let names = sets.iter().map(|s| fmt_set(&ground, s)).collect();
        let poset = Poset::of_sets(names, sets)?;
        Ok(Lattice { poset, top: (1 << k) - 1, bottom: 0, tables: None })
    }

    /// A family of subsets ordered by inclusion, checked for completeness.
    pub fn family(names: Vec<String>, sets: Vec<Subset>) -> Result<Self, OrderError> {
        Self::new(Poset::of_sets(names, sets)?)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn into_poset(self) -> Poset {
        self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, i: usize) -> &str {
        self.poset.name(i)
    }

    pub fn names(&self) -> &[String] {
        self.poset.names()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.poset.index_of(name)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.poset.leq(i, j)
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        if let Some(t) = &self.tables {
            return t.join[i * self.len() + j] as usize;
        }
        let sets = self.poset.sets().expect("set lattice");
        let u = sets[i].union(&sets[j]);
        if let Some(k) = self.poset.set_index(&u) {
            return k;
        }
        let mut closure = sets[self.top].clone();
        for s in sets.iter().filter(|s| u.is_subset(s)) {
            closure.intersect_with(s);
        }
        self.poset.set_index(&closure).expect("intersection-closed family")
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        if let Some(t) = &self.tables {
            return t.meet[i * self.len() + j] as usize;
        }
        let sets = self.poset.sets().expect("set lattice");
        self.poset.set_index(&sets[i].intersection(&sets[j])).expect("intersection-closed family")
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Length of the longest chain, counted in edges.
    pub fn height(&self) -> usize {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.poset.down(i).len());
        let mut h = vec![0usize; n];
        for &j in &order {
            h[j] = self.poset.down(j).iter().filter(|&i| i != j).map(|i| h[i] + 1).max().unwrap_or(0);
        }
        h[self.top]
    }
}

/// Which bound [`lattice_bound`] computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Lub,
    Glb,
}

/// Reflexive-transitive closure of a Hasse-style relation.
pub fn build_poset<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Poset, OrderError> {
    Poset::build(elements, pairs)
}

pub fn lattice_bound(l: &Lattice, s: &Subset, bound: Bound) -> usize {
    match bound {
        Bound::Lub => l.join_all(s.iter()),
        Bound::Glb => l.meet_all(s.iter()),
    }
}

/// Elements that are not the join of the elements strictly below them.
pub fn join_irreducibles(l: &Lattice) -> Subset {
    let n = l.len();
    Subset::from_indices(
        n,
        (0..n).filter(|&x| {
            let below = l.poset().down(x).iter().filter(|&y| y != x).collect::<Vec<_>>();
            l.join_all(below) != x
        }),
    )
}

pub fn down_closure(p: &Poset, x: &Subset) -> Subset {
    p.down_closure(x)
}

/// All downsets of `p` ordered by inclusion, named `{a,b}`.
pub fn downsets_lattice(p: &Poset) -> Result<Lattice, OrderError> {
    let sets = p.downsets()?;
    let names = sets.iter().map(|s| fmt_set(p.names(), s)).collect();
    let poset = Poset::of_sets(names, sets)?;
    // Downsets are closed under union and intersection; no check needed.
    let bottom = poset.set_index(&Subset::empty(p.len())).expect("empty downset");
    let top = poset.set_index(&Subset::full(p.len())).expect("full downset");
    Ok(Lattice { poset, top, bottom, tables: None })
}

/// Smallest superset of `s` closed under all meets, including the empty one.
pub fn meet_closure(l: &Lattice, s: &Subset) -> Subset {
    let mut out = s.clone();
    out.insert(l.top());
    loop {
        let members: Vec<usize> = out.iter().collect();
        let mut grown = false;
        for (k, &i) in members.iter().enumerate() {
            for &j in &members[k + 1..] {
                let m = l.meet(i, j);
                if !out.contains(m) {
                    out.insert(m);
                    grown = true;
                }
            }
        }
        if !grown {
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::sign_lattice;

    fn named(l: &Lattice, s: &Subset) -> Vec<String> {
        s.iter().map(|i| l.name(i).to_string()).collect()
    }

    fn idx(l: &Lattice, n: &str) -> usize {
        l.index_of(n).unwrap()
    }

    #[test]
    fn singleton_poset() {
        let p = build_poset(&["a"], &[]).unwrap();
        assert!(p.leq(0, 0));
        assert!(p.is_discrete());
    }

    #[test]
    fn flat_bottom() {
        let p = build_poset(&["-", "0", "+", "⊥"], &[("⊥", "-"), ("⊥", "0"), ("⊥", "+")]).unwrap();
        assert!(p.leq(3, 2));
        assert!(!p.leq(0, 2));
    }

    #[test]
    fn sign_edges_close() {
        let l = sign_lattice();
        let p = l.poset();
        assert!(p.leq(idx(&l, ">0"), idx(&l, "≥0")));
        assert!(p.leq(idx(&l, ">0"), idx(&l, "≠0")));
        assert!(p.leq(idx(&l, "∅"), idx(&l, "ℤ")));
        assert!(!p.leq(idx(&l, "<0"), idx(&l, "≥0")));
    }

    #[test]
    fn cycles_and_unknowns_rejected() {
        assert_eq!(
            build_poset(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err(),
            OrderError::CycleDetected("a".into(), "b".into())
        );
        assert!(matches!(build_poset(&["a"], &[("a", "z")]), Err(OrderError::UnknownElement(_))));
        assert!(matches!(build_poset(&["a", "a"], &[]), Err(OrderError::DuplicateElement(_))));
    }

    #[test]
    fn non_lattice_reports_pair() {
        let p = build_poset(&["a", "b"], &[]).unwrap();
        let err = Lattice::new(p).unwrap_err();
        assert!(matches!(err, OrderError::NotLattice { .. }));
    }

    #[test]
    fn sign_bounds() {
        let l = sign_lattice();
        let none = Subset::empty(l.len());
        assert_eq!(l.name(lattice_bound(&l, &none, Bound::Lub)), "∅");
        assert_eq!(l.name(lattice_bound(&l, &none, Bound::Glb)), "ℤ");
        let s = Subset::from_indices(l.len(), [idx(&l, "<0"), idx(&l, ">0")]);
        assert_eq!(l.name(lattice_bound(&l, &s, Bound::Lub)), "≠0");
    }

    #[test]
    fn join_irreducibles_of_powerset_are_singletons() {
        let l = Lattice::powerset(&["x", "y", "z"]).unwrap();
        assert_eq!(named(&l, &join_irreducibles(&l)), ["{x}", "{y}", "{z}"]);
    }

    #[test]
    fn join_irreducibles_of_chain() {
        let l = Lattice::new(Poset::chain(&["⊥", "a", "⊤"]).unwrap()).unwrap();
        assert_eq!(named(&l, &join_irreducibles(&l)), ["a", "⊤"]);
    }

    /// Brute force over every subset: `x = ∨S ⇒ x ∈ S`.
    #[test]
    fn sign_join_irreducibles_match_brute_force() {
        let l = sign_lattice();
        let n = l.len();
        let brute: Vec<usize> = (0..n)
            .filter(|&x| {
                (0u32..1 << n).all(|mask| {
                    let s: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
                    l.join_all(s.iter().copied()) != x || s.contains(&x)
                })
            })
            .collect();
        let ji: Vec<usize> = join_irreducibles(&l).iter().collect();
        assert_eq!(ji, brute);
        assert_eq!(named(&l, &join_irreducibles(&l)), ["<0", "=0", ">0"]);
    }

    #[test]
    fn down_closure_examples() {
        let d = build_poset(&["a", "b"], &[]).unwrap();
        assert_eq!(down_closure(&d, &Subset::singleton(2, 0)), Subset::singleton(2, 0));
        let c = Poset::chain(&["⊥", "a", "⊤"]).unwrap();
        assert_eq!(down_closure(&c, &Subset::singleton(3, 1)), Subset::from_indices(3, [0, 1]));
    }

    /// Membership by scanning all elements for some `y ≤ x` with `x ∈ X`.
    #[test]
    fn sign_down_closure_matches_scan() {
        let l = sign_lattice();
        let p = l.poset();
        let x = Subset::singleton(p.len(), idx(&l, "≥0"));
        let scan = Subset::from_indices(p.len(), (0..p.len()).filter(|&y| x.iter().any(|x| p.leq(y, x))));
        let got = down_closure(p, &x);
        assert_eq!(got, scan);
        let mut names = named(&l, &got);
        names.sort();
        assert_eq!(names, ["=0", ">0", "∅", "≥0"]);
    }

    #[test]
    fn downsets_of_small_shapes() {
        let d = Poset::discrete(&["a", "b", "c"]).unwrap();
        assert_eq!(downsets_lattice(&d).unwrap().len(), 8);
        let c = Poset::chain(&["a", "b", "c"]).unwrap();
        let l = downsets_lattice(&c).unwrap();
        assert_eq!(l.len(), 4);
        assert_eq!(l.height(), 3);
        let anti = Poset::discrete(&["a", "b"]).unwrap();
        let l = downsets_lattice(&anti).unwrap();
        assert_eq!(l.len(), 4);
        let subsets: Vec<Subset> = (0u32..4).map(|m| Subset::from_indices(2, (0..2).filter(|b| m >> b & 1 == 1))).collect();
        let brute = subsets.iter().filter(|s| anti.is_down_closed(s)).count();
        assert_eq!(brute, 4);
    }

    #[test]
    fn downset_guard() {
        let names: Vec<String> = (0..17).map(|i| format!("e{i}")).collect();
        let p = Poset::discrete(&names).unwrap();
        assert!(matches!(downsets_lattice(&p), Err(OrderError::TooLarge { .. })));
    }

    #[test]
    fn meet_closure_examples() {
        let l = sign_lattice();
        let all = Subset::full(l.len());
        assert_eq!(meet_closure(&l, &all), all);
        let s = Subset::from_indices(l.len(), [idx(&l, "≤0"), idx(&l, "≥0")]);
        let mut got = named(&l, &meet_closure(&l, &s));
        got.sort();
        assert_eq!(got, ["=0", "ℤ", "≤0", "≥0"]);
        let p = Lattice::powerset(&["x", "y"]).unwrap();
        let closed = meet_closure(&p, &join_irreducibles(&p));
        assert_eq!(named(&p, &closed), ["{}", "{x}", "{y}", "{x,y}"]);
    }

    #[test]
    fn non_moore_family_still_a_lattice() {
        let sets = vec![
            Subset::from_indices(3, []),
            Subset::from_indices(3, [0, 1]),
            Subset::from_indices(3, [0, 2]),
            Subset::from_indices(3, [0, 1, 2]),
        ];
        let names = ["e", "ab", "ac", "abc"].map(String::from).to_vec();
        let l = Lattice::family(names, sets).unwrap();
        assert_eq!(l.name(l.meet(1, 2)), "e");
        assert_eq!(l.name(l.join(1, 2)), "abc");
    }
}
