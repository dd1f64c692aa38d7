//! Connection records and the checkers that decide class membership.
//!
//! Checkers never trust a record's kind tag. They walk abstract values in
//! declaration order and carrier values in index order, and report the
//! first pair that breaks the law.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::order::{OrderError, Lattice, Poset};
use crate::setops::{check_partition, dedup_family, fmt_set, Carrier, PartitionViolation, Subset};

/// A counterexample: the offending arguments and the evaluation that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub at: Vec<String>,
    pub chain: String,
}

impl Witness {
    pub fn new<S: Into<String>>(at: impl IntoIterator<Item = S>, chain: impl Into<String>) -> Self {
        Witness { at: at.into_iter().map(Into::into).collect(), chain: chain.into() }
    }

    /// Prefixes the chain with the name of the law that failed.
    pub fn context(mut self, law: &str) -> Self {
        self.chain = format!("{law}: {}", self.chain);
        self
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}): {}", self.at.join(", "), self.chain)
    }
}

/// `Ok` when a law holds, otherwise the first counterexample.
pub type Outcome = Result<(), Witness>;

#[derive(Debug, Error)]
pub enum GaloisError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not a {class}: {witness}")]
    NotInClass { class: &'static str, witness: Witness },
    #[error("abstract side is not a complete lattice: {0}")]
    NotCompleteLattice(OrderError),
    #[error("not isomorphic: {0}")]
    NotIsomorphic(String),
    #[error("{transform} produced an invalid {class}: {witness}")]
    BrokenTransform { transform: &'static str, class: &'static str, witness: Witness },
}

/// File-level class tags. Tags are advisory; checkers decide membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Gc,
    Cgc,
    Cgp,
    Pcgc,
    Cco,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Gc => "gc",
            Kind::Cgc => "cgc",
            Kind::Cgp => "cgp",
            Kind::Pcgc => "pcgc",
            Kind::Cco => "cco",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "gc" => Kind::Gc,
            "cgc" => Kind::Cgc,
            "cgp" => Kind::Cgp,
            "pcgc" => Kind::Pcgc,
            "cco" => Kind::Cco,
            other => return Err(format!("unknown kind {other}")),
        })
    }
}

/// The abstract side of a constructive connection.
#[derive(Clone, Debug)]
pub enum Abstract {
    Poset(Poset),
    Lattice(Lattice),
}

impl Abstract {
    /// Keeps the lattice structure when the poset has one.
    pub fn from_poset(p: Poset) -> Self {
        match Lattice::new(p.clone()) {
            Ok(l) => Abstract::Lattice(l),
            Err(_) => Abstract::Poset(p),
        }
    }

    pub fn poset(&self) -> &Poset {
        match self {
            Abstract::Poset(p) => p,
            Abstract::Lattice(l) => l.poset(),
        }
    }

    pub fn lattice(&self) -> Option<&Lattice> {
        match self {
            Abstract::Lattice(l) => Some(l),
            Abstract::Poset(_) => None,
        }
    }
}

/// `⟨η, A, B, μ⟩` with a class tag: CGC, CGP or PCGC.
#[derive(Clone, Debug)]
pub struct Constructive {
    kind: Kind,
    carrier: Carrier,
    carrier_order: Poset,
    abs: Abstract,
    eta: Vec<usize>,
    mu: Vec<Subset>,
    provenance: Vec<String>,
}

fn discrete_order(carrier: &Carrier) -> Poset {
    Poset::discrete(carrier.names()).expect("carrier names are distinct")
}

fn check_carrier_order(carrier: &Carrier, order: Option<Poset>) -> Result<Poset, GaloisError> {
    match order {
        None => Ok(discrete_order(carrier)),
        Some(p) if p.names() == carrier.names() => Ok(p),
        Some(_) => Err(GaloisError::ShapeMismatch("carrier order must list the carrier in index order".into())),
    }
}

impl Constructive {
    pub fn new(
        kind: Kind,
        carrier: Carrier,
        carrier_order: Option<Poset>,
        abs: Abstract,
        eta: Vec<usize>,
        mu: Vec<Subset>,
    ) -> Result<Self, GaloisError> {
        let carrier_order = check_carrier_order(&carrier, carrier_order)?;
        let (n, m) = (carrier.len(), abs.poset().len());
        if eta.len() != n || eta.iter().any(|&b| b >= m) {
            return Err(GaloisError::ShapeMismatch(format!("η must map {n} carrier values into {m} abstract values")));
        }
        if mu.len() != m || mu.iter().any(|s| s.capacity() != n) {
            return Err(GaloisError::ShapeMismatch(format!("μ must map {m} abstract values to subsets of {n} values")));
        }
        Ok(Constructive { kind, carrier, carrier_order, abs, eta, mu, provenance: Vec::new() })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn carrier_order(&self) -> &Poset {
        &self.carrier_order
    }

    pub fn abs(&self) -> &Abstract {
        &self.abs
    }

    pub fn abs_poset(&self) -> &Poset {
        self.abs.poset()
    }

    pub fn lattice(&self) -> Option<&Lattice> {
        self.abs.lattice()
    }

    pub fn abs_len(&self) -> usize {
        self.abs.poset().len()
    }

    pub fn eta(&self) -> &[usize] {
        &self.eta
    }

    pub fn mu(&self) -> &[Subset] {
        &self.mu
    }

    pub fn eta_at(&self, a: usize) -> usize {
        self.eta[a]
    }

    pub fn mu_at(&self, b: usize) -> &Subset {
        &self.mu[b]
    }

    /// `η(A)`.
    pub fn eta_image(&self) -> Subset {
        Subset::from_indices(self.abs_len(), self.eta.iter().copied())
    }

    pub fn a(&self, i: usize) -> &str {
        self.carrier.name(i)
    }

    pub fn b(&self, j: usize) -> &str {
        self.abs.poset().name(j)
    }

    pub fn fmt_concrete(&self, s: &Subset) -> String {
        self.carrier.fmt_set(s)
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    pub fn with_provenance(mut self, step: impl Into<String>) -> Self {
        self.provenance.push(step.into());
        self
    }

    pub(crate) fn inherit(mut self, from: &[String], step: &str) -> Self {
        self.provenance = from.to_vec();
        self.provenance.push(step.to_string());
        self
    }

    pub fn with_kind(mut self, kind: Kind) -> Self {
        self.kind = kind;
        self
    }

    /// Runs the checker matching the kind tag.
    pub fn verify(&self) -> Outcome {
        match self.kind {
            Kind::Cgc => check_cgc(self),
            Kind::Cgp => check_cgp(self),
            _ => check_pcgc(self).outcome(),
        }
    }
}

/// `x ∈ μ(y) ⇔ η(x) = y`.
pub fn check_cgc(c: &Constructive) -> Outcome {
    for y in 0..c.abs_len() {
        for x in 0..c.carrier.len() {
            let inside = c.mu[y].contains(x);
            let hit = c.eta[x] == y;
            if inside != hit {
                let (sx, sy, ex) = (c.a(x), c.b(y), c.b(c.eta[x]));
                let chain = if inside {
                    format!("{sx} ∈ μ({sy}) but η({sx}) = {ex} ≠ {sy}")
                } else {
                    format!("η({sx}) = {sy} but {sx} ∉ μ({sy})")
                };
                return Err(Witness::new([sx, sy], chain));
            }
        }
    }
    Ok(())
}

fn check_eta_monotone(c: &Constructive) -> Outcome {
    let (p, q) = (&c.carrier_order, c.abs_poset());
    for x in 0..c.carrier.len() {
        for x2 in p.up(x).iter() {
            if !q.leq(c.eta[x], c.eta[x2]) {
                let chain = format!("{} ≤ {} but η = {} ≰ {}", c.a(x), c.a(x2), c.b(c.eta[x]), c.b(c.eta[x2]));
                return Err(Witness::new([c.a(x), c.a(x2)], chain));
            }
        }
    }
    Ok(())
}

fn check_mu_shape(c: &Constructive) -> Outcome {
    let q = c.abs_poset();
    for y in 0..c.abs_len() {
        if !c.carrier_order.is_down_closed(&c.mu[y]) {
            let chain = format!("μ({}) = {} is not downward closed", c.b(y), c.fmt_concrete(&c.mu[y]));
            return Err(Witness::new([c.b(y)], chain));
        }
        for y2 in q.up(y).iter() {
            if !c.mu[y].is_subset(&c.mu[y2]) {
                let chain = format!("{} ≤ {} but μ({}) ⊄ μ({})", c.b(y), c.b(y2), c.b(y), c.b(y2));
                return Err(Witness::new([c.b(y), c.b(y2)], chain));
            }
        }
    }
    Ok(())
}

/// `x ∈ μ(y) ⇔ η(x) ≤ y`, checked before the shape conditions.
fn check_order_corr(c: &Constructive) -> Outcome {
    let q = c.abs_poset();
    for y in 0..c.abs_len() {
        for x in 0..c.carrier.len() {
            let inside = c.mu[y].contains(x);
            let below = q.leq(c.eta[x], y);
            if inside != below {
                let (sx, sy, ex) = (c.a(x), c.b(y), c.b(c.eta[x]));
                let chain = if inside {
                    format!("{sx} ∈ μ({sy}) but η({sx}) = {ex} ≰ {sy}")
                } else {
                    format!("η({sx}) = {ex} ≤ {sy} but {sx} ∉ μ({sy})")
                };
                return Err(Witness::new([sx, sy], chain));
            }
        }
    }
    Ok(())
}

/// `x ∈ μ(y) ⇔ η(x) ≤ y`, with η and μ monotone and μ landing in downsets.
pub fn check_cgp(c: &Constructive) -> Outcome {
    check_order_corr(c)?;
    check_mu_shape(c)?;
    check_eta_monotone(c)
}

/// Per-condition verdicts for a PCGC candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcgcReport {
    pub cond1: Outcome,
    pub cond2: Outcome,
    pub eta_monotone: Outcome,
}

impl PcgcReport {
    pub fn ok(&self) -> bool {
        self.outcome().is_ok()
    }

    pub fn outcome(&self) -> Outcome {
        self.cond1.clone()?;
        self.cond2.clone()?;
        self.eta_monotone.clone()
    }
}

/// `(1) x ∈ μ(η(x′)) ⇔ η(x) = η(x′)` and `(2) x ∈ μ(y) ⇔ η(x) ≤ y`.
///
/// Condition (1) walks `x′` outermost; its witness is `(x, η(x′))`.
pub fn check_pcgc(c: &Constructive) -> PcgcReport {
    let cond1 = (|| {
        for x2 in 0..c.carrier.len() {
            let y = c.eta[x2];
            for x in 0..c.carrier.len() {
                let inside = c.mu[y].contains(x);
                let same = c.eta[x] == y;
                if inside != same {
                    let (sx, sx2, sy, ex) = (c.a(x), c.a(x2), c.b(y), c.b(c.eta[x]));
                    let chain = if inside {
                        format!("{sx} ∈ μ(η({sx2})) = μ({sy}) but η({sx}) = {ex} ≠ η({sx2}) = {sy}")
                    } else {
                        format!("η({sx}) = η({sx2}) = {sy} but {sx} ∉ μ({sy})")
                    };
                    return Err(Witness::new([sx, sy], chain));
                }
            }
        }
        Ok(())
    })();
    PcgcReport { cond1, cond2: check_order_corr(c), eta_monotone: check_eta_monotone(c) }
}

/// A constructive closure operator `φ: A → ℘(A)`.
#[derive(Clone, Debug)]
pub struct ClosureOp {
    carrier: Carrier,
    phi: Vec<Subset>,
    provenance: Vec<String>,
}

/// `x ∈ φ(y) ⇔ φ(x) = φ(y)`.
pub fn check_cco(carrier: &Carrier, phi: &[Subset]) -> Outcome {
    for y in 0..carrier.len() {
        for x in 0..carrier.len() {
            let inside = phi[y].contains(x);
            let same = phi[x] == phi[y];
            if inside != same {
                let (sx, sy) = (carrier.name(x), carrier.name(y));
                let chain = if inside {
                    format!("{sx} ∈ φ({sy}) but φ({sx}) ≠ φ({sy})")
                } else {
                    format!("φ({sx}) = φ({sy}) but {sx} ∉ φ({sy})")
                };
                return Err(Witness::new([sx, sy], chain));
            }
        }
    }
    Ok(())
}

impl ClosureOp {
    pub fn new(carrier: Carrier, phi: Vec<Subset>) -> Result<Self, GaloisError> {
        if phi.len() != carrier.len() || phi.iter().any(|s| s.capacity() != carrier.len()) {
            return Err(GaloisError::ShapeMismatch("φ must map every carrier value to a subset".into()));
        }
        check_cco(&carrier, &phi).map_err(|witness| GaloisError::NotInClass { class: "CCO", witness })?;
        Ok(ClosureOp { carrier, phi, provenance: Vec::new() })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn phi(&self) -> &[Subset] {
        &self.phi
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    pub(crate) fn inherit(mut self, from: &[String], step: &str) -> Self {
        self.provenance = from.to_vec();
        self.provenance.push(step.to_string());
        self
    }
}

/// How α is stored. Every GC abstraction preserves joins, so the values
/// on principal downsets determine it; `Table` keeps an explicit map
/// over all downsets for candidates read from files.
#[derive(Clone, Debug)]
pub enum Alpha {
    /// `α(↓a)` for each carrier index; `α(X) = ∨ {α(↓a) | a ∈ X}`.
    Join(Vec<usize>),
    Table(HashMap<Subset, usize>),
}

/// A candidate GC `⟨α, ℘↓(A), D, γ⟩`; with a discrete carrier order the
/// concrete side is `℘(A)`.
#[derive(Clone, Debug)]
pub struct SetGc {
    carrier: Carrier,
    carrier_order: Poset,
    abs: Lattice,
    alpha: Alpha,
    gamma: Vec<Subset>,
    provenance: Vec<String>,
}

impl SetGc {
    pub fn new(
        carrier: Carrier,
        carrier_order: Option<Poset>,
        abs: Lattice,
        alpha: Alpha,
        gamma: Vec<Subset>,
    ) -> Result<Self, GaloisError> {
        let carrier_order = check_carrier_order(&carrier, carrier_order)?;
        let (n, m) = (carrier.len(), abs.len());
        if gamma.len() != m || gamma.iter().any(|s| s.capacity() != n) {
            return Err(GaloisError::ShapeMismatch(format!("γ must map {m} abstract values to subsets of {n} values")));
        }
        match &alpha {
            Alpha::Join(pt) => {
                if pt.len() != n || pt.iter().any(|&d| d >= m) {
                    return Err(GaloisError::ShapeMismatch("α must be given on every principal downset".into()));
                }
            }
            Alpha::Table(t) => {
                let downsets = carrier_order.downsets()?;
                if let Some(c) = downsets.iter().find(|c| !t.contains_key(c)) {
                    return Err(GaloisError::ShapeMismatch(format!("α undefined on {}", carrier.fmt_set(c))));
                }
                if t.len() != downsets.len() || t.values().any(|&d| d >= m) {
                    return Err(GaloisError::ShapeMismatch("α table must cover exactly the downsets".into()));
                }
            }
        }
        Ok(SetGc { carrier, carrier_order, abs, alpha, gamma, provenance: Vec::new() })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn carrier_order(&self) -> &Poset {
        &self.carrier_order
    }

    pub fn abs(&self) -> &Lattice {
        &self.abs
    }

    pub fn alpha_repr(&self) -> &Alpha {
        &self.alpha
    }

    pub fn gammas(&self) -> &[Subset] {
        &self.gamma
    }

    pub fn gamma(&self, d: usize) -> &Subset {
        &self.gamma[d]
    }

    /// `α(X)`, read on the down-closure of `X`.
    pub fn alpha(&self, x: &Subset) -> usize {
        match &self.alpha {
            Alpha::Join(pt) => self.abs.join_all(x.iter().map(|a| pt[a])),
            Alpha::Table(t) => t[&self.carrier_order.down_closure(x)],
        }
    }

    /// `α(↓{a})`.
    pub fn alpha_point(&self, a: usize) -> usize {
        match &self.alpha {
            Alpha::Join(pt) => pt[a],
            Alpha::Table(t) => t[&self.carrier_order.down(a)],
        }
    }

    /// Whether the concrete side is the full powerset `℘(A)`.
    pub fn is_powerset(&self) -> bool {
        self.carrier_order.is_discrete()
    }

    pub fn d(&self, j: usize) -> &str {
        self.abs.name(j)
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    pub fn with_provenance(mut self, step: impl Into<String>) -> Self {
        self.provenance.push(step.into());
        self
    }

    pub(crate) fn inherit(mut self, from: &[String], step: &str) -> Self {
        self.provenance = from.to_vec();
        self.provenance.push(step.to_string());
        self
    }

    /// The γ-image `γ(D)` as a set family.
    pub fn gamma_image(&self) -> HashSet<Subset> {
        self.gamma.iter().cloned().collect()
    }
}

/// Verdicts of [`check_gc`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcReport {
    pub adjunction: Outcome,
    pub insertion: Outcome,
    pub additive: Outcome,
}

impl GcReport {
    pub fn is_gc(&self) -> bool {
        self.adjunction.is_ok()
    }

    pub fn is_gi(&self) -> bool {
        self.is_gc() && self.insertion.is_ok()
    }

    pub fn is_disjunctive(&self) -> bool {
        self.is_gc() && self.additive.is_ok()
    }

    /// The first failing verdict, if any.
    pub fn witness(&self) -> Option<&Witness> {
        [&self.adjunction, &self.insertion, &self.additive].into_iter().find_map(|o| o.as_ref().err())
    }
}

fn check_adjunction(g: &SetGc) -> Outcome {
    let c = &g.carrier;
    for d in 0..g.abs.len() {
        if !g.carrier_order.is_down_closed(&g.gamma[d]) {
            let chain = format!("γ({}) = {} is not downward closed", g.d(d), c.fmt_set(&g.gamma[d]));
            return Err(Witness::new([g.d(d)], chain));
        }
    }
    match &g.alpha {
        Alpha::Join(pt) => {
            for a in 0..c.len() {
                for a2 in g.carrier_order.up(a).iter() {
                    if !g.abs.leq(pt[a], pt[a2]) {
                        let chain = format!("α is not monotone: α(↓{}) = {} ≰ α(↓{}) = {}", c.name(a), g.d(pt[a]), c.name(a2), g.d(pt[a2]));
                        return Err(Witness::new([c.name(a), c.name(a2)], chain));
                    }
                }
            }
            for d in 0..g.abs.len() {
                for (a, &pa) in pt.iter().enumerate() {
                    let below = g.abs.leq(pa, d);
                    let inside = g.gamma[d].contains(a);
                    if below != inside {
                        let down = c.fmt_set(&g.carrier_order.down(a));
                        let chain = if below {
                            format!("α({down}) = {} ≤ {} but {down} ⊄ γ({})", g.d(pa), g.d(d), g.d(d))
                        } else {
                            format!("{down} ⊆ γ({}) but α({down}) = {} ≰ {}", g.d(d), g.d(pa), g.d(d))
                        };
                        return Err(Witness::new([down, g.d(d).to_string()], chain));
                    }
                }
            }
        }
        Alpha::Table(t) => {
            let downsets = g.carrier_order.downsets().expect("validated at construction");
            for d in 0..g.abs.len() {
                for x in &downsets {
                    let below = g.abs.leq(t[x], d);
                    let inside = x.is_subset(&g.gamma[d]);
                    if below != inside {
                        let sx = c.fmt_set(x);
                        let chain = if below {
                            format!("α({sx}) = {} ≤ {} but {sx} ⊄ γ({})", g.d(t[x]), g.d(d), g.d(d))
                        } else {
                            format!("{sx} ⊆ γ({}) but α({sx}) = {} ≰ {}", g.d(d), g.d(t[x]), g.d(d))
                        };
                        return Err(Witness::new([sx, g.d(d).to_string()], chain));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Adjunction `α(c) ≤ d ⇔ c ⊆ γ(d)`, insertion `α∘γ = id`, and
/// additivity of γ.
///
/// With a join-represented α the adjunction is decided pointwise: γ lands
/// in downsets, α is monotone on points, and `a ∈ γ(d) ⇔ α(↓a) ≤ d`.
/// That is equivalent to the quantification over all of `℘↓(A)`.
pub fn check_gc(g: &SetGc) -> GcReport {
    let adjunction = check_adjunction(g);
    let insertion = (|| {
        for d in 0..g.abs.len() {
            let back = g.alpha(&g.gamma[d]);
            if back != d {
                return Err(Witness::new([g.d(d)], format!("α(γ({})) = {} ≠ {}", g.d(d), g.d(back), g.d(d))));
            }
        }
        Ok(())
    })();
    let additive = check_additive(g);
    GcReport { adjunction, insertion, additive }
}

fn check_additive(g: &SetGc) -> Outcome {
    let bot = g.abs.bottom();
    if !g.gamma[bot].is_empty() {
        let chain = format!("γ({}) = {} ≠ ∅", g.d(bot), g.carrier.fmt_set(&g.gamma[bot]));
        return Err(Witness::new([g.d(bot)], chain));
    }
    let m = g.abs.len();
    for x in 0..m {
        for y in x + 1..m {
            let j = g.abs.join(x, y);
            let u = g.gamma[x].union(&g.gamma[y]);
            if g.gamma[j] != u {
                let chain = format!(
                    "γ({} ∨ {}) = γ({}) = {} ≠ {}",
                    g.d(x),
                    g.d(y),
                    g.d(j),
                    g.carrier.fmt_set(&g.gamma[j]),
                    g.carrier.fmt_set(&u)
                );
                return Err(Witness::new([g.d(x), g.d(y)], chain));
            }
        }
    }
    Ok(())
}

fn require_powerset(g: &SetGc) -> Result<(), GaloisError> {
    if g.is_powerset() {
        Ok(())
    } else {
        Err(GaloisError::ShapeMismatch("concrete side must be a full powerset".into()))
    }
}

/// `prt(G) = {γ(α({a})) | a ∈ A}`, deduplicated in carrier order.
pub fn prt(g: &SetGc) -> Result<Vec<Subset>, GaloisError> {
    require_powerset(g)?;
    Ok(dedup_family((0..g.carrier.len()).map(|a| g.gamma[g.alpha_point(a)].clone())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Pgc,
    Ppgc,
    Neither,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::Pgc => "PGC",
            Class::Ppgc => "PPGC",
            Class::Neither => "neither",
        })
    }
}

/// Result of [`classify_partitioning`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partitioning {
    pub class: Class,
    pub partition: Result<(), PartitionViolation>,
    pub additive: Outcome,
    /// Whether `γ(x ∨ y) = A` for every incomparable pair. Reported only.
    pub alt2prime: bool,
}

/// PGC when `prt(G)` partitions `A` and γ is additive; PPGC when only
/// the partition condition holds.
pub fn classify_partitioning(g: &SetGc) -> Result<Partitioning, GaloisError> {
    require_powerset(g)?;
    check_adjunction(g).map_err(|witness| GaloisError::NotInClass { class: "GC", witness })?;
    let blocks = prt(g)?;
    let partition = check_partition(g.carrier.len(), &blocks);
    let additive = check_additive(g);
    let l = &g.abs;
    let full = g.carrier.full();
    let alt2prime = (0..l.len()).all(|x| {
        (x + 1..l.len()).all(|y| l.leq(x, y) || l.leq(y, x) || g.gamma[l.join(x, y)] == full)
    });
    let class = match (&partition, &additive) {
        (Ok(()), Ok(())) => Class::Pgc,
        (Ok(()), Err(_)) => Class::Ppgc,
        _ => Class::Neither,
    };
    Ok(Partitioning { class, partition, additive, alt2prime })
}

/// Relative precision of the first argument against the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    StrictlyFiner,
    StrictlyCoarser,
    Isomorphic,
    Incomparable,
}

impl Precision {
    /// From `x1 ⊑ x2` and `x2 ⊑ x1`.
    pub fn from_orders(le12: bool, le21: bool) -> Self {
        match (le12, le21) {
            (true, true) => Precision::Isomorphic,
            (true, false) => Precision::StrictlyFiner,
            (false, true) => Precision::StrictlyCoarser,
            (false, false) => Precision::Incomparable,
        }
    }

    /// Whether the first argument is at least as precise.
    pub fn finer_or_equal(self) -> bool {
        matches!(self, Precision::StrictlyFiner | Precision::Isomorphic)
    }
}

fn same_carrier(a: &Carrier, b: &Carrier) -> Result<(), GaloisError> {
    if a.names() == b.names() {
        Ok(())
    } else {
        Err(GaloisError::ShapeMismatch("connections live on different carriers".into()))
    }
}

/// GC precision: `G1 ⊑ G2` iff `γ2(D2) ⊆ γ1(D1)`, compared as families of
/// concrete sets so the abstract representations may differ.
pub fn precision_cmp_gc(g1: &SetGc, g2: &SetGc) -> Result<Precision, GaloisError> {
    same_carrier(&g1.carrier, &g2.carrier)?;
    let (i1, i2) = (g1.gamma_image(), g2.gamma_image());
    Ok(Precision::from_orders(i2.is_subset(&i1), i1.is_subset(&i2)))
}

/// Whether every `μ2(b)` is a union of `μ1`-values.
fn cgc_refines(c1: &Constructive, c2: &Constructive) -> bool {
    c2.mu.iter().all(|target| {
        let mut covered = c1.carrier.empty();
        for s in c1.mu.iter().filter(|s| s.is_subset(target)) {
            covered.union_with(s);
        }
        &covered == target
    })
}

/// CGC precision: `C1 ⊑ C2` iff each value of `C2` is representable in
/// `C1`, i.e. is a union of `C1`'s concretizations. This is the order
/// that the powerset transform carries to GC precision.
pub fn precision_cmp_cgc(c1: &Constructive, c2: &Constructive) -> Result<Precision, GaloisError> {
    same_carrier(&c1.carrier, &c2.carrier)?;
    Ok(Precision::from_orders(cgc_refines(c1, c2), cgc_refines(c2, c1)))
}

fn image_mod_empty(c: &Constructive) -> HashSet<Subset> {
    c.mu.iter().filter(|s| !s.is_empty()).cloned().collect()
}

/// `μ1(B1) ∪ {∅} = μ2(B2) ∪ {∅}`.
pub fn nonempty_iso(c1: &Constructive, c2: &Constructive) -> Result<bool, GaloisError> {
    same_carrier(&c1.carrier, &c2.carrier)?;
    Ok(image_mod_empty(c1) == image_mod_empty(c2))
}

/// `μ1(B1) = μ2(B2)`.
pub fn cgc_iso(c1: &Constructive, c2: &Constructive) -> Result<bool, GaloisError> {
    same_carrier(&c1.carrier, &c2.carrier)?;
    let i1: HashSet<&Subset> = c1.mu.iter().collect();
    let i2: HashSet<&Subset> = c2.mu.iter().collect();
    Ok(i1 == i2)
}

/// Mutually inverse renamings between `η1(A)` and `η2(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Renaming {
    pub f12: BTreeMap<usize, usize>,
    pub f21: BTreeMap<usize, usize>,
}

fn build_renaming(from: &Constructive, to: &Constructive) -> Result<BTreeMap<usize, usize>, GaloisError> {
    let mut by_block: HashMap<&Subset, usize> = HashMap::new();
    for x in 0..to.carrier.len() {
        by_block.entry(&to.mu[to.eta[x]]).or_insert(x);
    }
    let mut f = BTreeMap::new();
    for a in 0..from.carrier.len() {
        let block = &from.mu[from.eta[a]];
        let Some(&x) = by_block.get(block) else {
            return Err(GaloisError::NotIsomorphic(format!(
                "no block of the second connection equals μ(η({})) = {}",
                from.a(a),
                from.fmt_concrete(block)
            )));
        };
        f.insert(from.eta[a], to.eta[x]);
    }
    Ok(f)
}

/// Builds the renaming witnesses: for each `a`, pick `x` with
/// `μ1(η1(a)) = μ2(η2(x))` and set `f12(η1(a)) = η2(x)`; symmetrically
/// for `f21`. Both equations and invertibility are re-checked.
pub fn renaming_witnesses(c1: &Constructive, c2: &Constructive) -> Result<Renaming, GaloisError> {
    same_carrier(&c1.carrier, &c2.carrier)?;
    for c in [c1, c2] {
        check_cgc(c).map_err(|witness| GaloisError::NotInClass { class: "CGC", witness })?;
    }
    let f12 = build_renaming(c1, c2)?;
    let f21 = build_renaming(c2, c1)?;
    for (&y1, &y2) in &f12 {
        if f21.get(&y2) != Some(&y1) {
            return Err(GaloisError::NotIsomorphic(format!("f21(f12({})) ≠ {}", c1.b(y1), c1.b(y1))));
        }
    }
    for (&y2, &y1) in &f21 {
        if f12.get(&y1) != Some(&y2) {
            return Err(GaloisError::NotIsomorphic(format!("f12(f21({})) ≠ {}", c2.b(y2), c2.b(y2))));
        }
    }
    for a in 0..c1.carrier.len() {
        if c1.mu[c1.eta[a]] != c2.mu[f12[&c1.eta[a]]] || c2.mu[c2.eta[a]] != c1.mu[f21[&c2.eta[a]]] {
            return Err(GaloisError::NotIsomorphic(format!("renamed blocks disagree at {}", c1.a(a))));
        }
    }
    Ok(Renaming { f12, f21 })
}

/// A CGC whose η is surjective.
pub fn is_cgi(c: &Constructive) -> bool {
    c.eta_image().len() == c.abs_len()
}

/// Restricts the abstract side to `η(A)`.
pub fn eta_restriction(c: &Constructive) -> Result<Constructive, GaloisError> {
    let keep: Vec<usize> = c.eta_image().iter().collect();
    let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let names: Vec<&str> = keep.iter().map(|&b| c.b(b)).collect();
    let abs = Poset::from_relation(names.iter().map(|s| s.to_string()).collect(), |i, j| c.abs_poset().leq(keep[i], keep[j]))?;
    let out = Constructive::new(
        c.kind,
        c.carrier.clone(),
        Some(c.carrier_order.clone()),
        Abstract::from_poset(abs),
        c.eta.iter().map(|b| pos[b]).collect(),
        keep.iter().map(|&b| c.mu[b].clone()).collect(),
    )?;
    Ok(out.inherit(&c.provenance, "eta_restriction"))
}

fn discrete_abstract(c: &Constructive) -> Abstract {
    Abstract::from_poset(Poset::discrete(c.abs_poset().names()).expect("distinct names"))
}

/// A CGC viewed as a PCGC over the discrete order on `B`.
pub fn embed_cgc_to_pcgc(c: &Constructive) -> Result<Constructive, GaloisError> {
    check_cgc(c).map_err(|witness| GaloisError::NotInClass { class: "CGC", witness })?;
    let out = Constructive::new(Kind::Pcgc, c.carrier.clone(), None, discrete_abstract(c), c.eta.clone(), c.mu.clone())?;
    Ok(out.inherit(&c.provenance, "embed_cgc_to_pcgc"))
}

/// A PCGC viewed as a CGP over the discrete order on `A`.
pub fn embed_pcgc_to_cgp(c: &Constructive) -> Result<Constructive, GaloisError> {
    check_pcgc(c).outcome().map_err(|witness| GaloisError::NotInClass { class: "PCGC", witness })?;
    let out = Constructive::new(Kind::Cgp, c.carrier.clone(), None, c.abs.clone(), c.eta.clone(), c.mu.clone())?;
    Ok(out.inherit(&c.provenance, "embed_pcgc_to_cgp"))
}

/// Any connection record.
#[derive(Clone, Debug)]
pub enum Connection {
    Constructive(Constructive),
    Gc(SetGc),
    Cco(ClosureOp),
}

impl Connection {
    pub fn kind(&self) -> Kind {
        match self {
            Connection::Constructive(c) => c.kind(),
            Connection::Gc(_) => Kind::Gc,
            Connection::Cco(_) => Kind::Cco,
        }
    }

    pub fn carrier(&self) -> &Carrier {
        match self {
            Connection::Constructive(c) => c.carrier(),
            Connection::Gc(g) => g.carrier(),
            Connection::Cco(p) => p.carrier(),
        }
    }

    /// Runs the checker for the record's kind.
    pub fn verify(&self) -> Outcome {
        match self {
            Connection::Constructive(c) => c.verify(),
            Connection::Gc(g) => check_gc(g).adjunction,
            Connection::Cco(p) => check_cco(p.carrier(), p.phi()),
        }
    }

    pub fn as_constructive(&self) -> Option<&Constructive> {
        match self {
            Connection::Constructive(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_gc(&self) -> Option<&SetGc> {
        match self {
            Connection::Gc(g) => Some(g),
            _ => None,
        }
    }

    pub fn as_cco(&self) -> Option<&ClosureOp> {
        match self {
            Connection::Cco(p) => Some(p),
            _ => None,
        }
    }
}

/// Renders the concretization of each abstract value.
pub fn describe_mu(c: &Constructive) -> Vec<(String, String)> {
    (0..c.abs_len()).map(|b| (c.b(b).to_string(), fmt_set(c.carrier.names(), &c.mu[b]))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn identity_gc_on_small_powerset() {
        let carrier = Carrier::atoms(["p", "q"]).unwrap();
        let abs = crate::order::downsets_lattice(&Poset::discrete(carrier.names()).unwrap()).unwrap();
        let sets = abs.poset().sets().unwrap().to_vec();
        let pt = (0..2).map(|a| abs.poset().set_index(&Subset::singleton(2, a)).unwrap()).collect();
        let g = SetGc::new(carrier, None, abs, Alpha::Join(pt), sets).unwrap();
        let r = check_gc(&g);
        assert!(r.is_gc() && r.is_gi() && r.is_disjunctive(), "{r:?}");
    }

    #[test]
    fn shrunk_cgp_fails() {
        let c = catalog::plustop_cgp(8).unwrap();
        assert_eq!(check_cgp(&c), Ok(()));
        let top = c.abs_poset().index_of("⊤").unwrap();
        let mut mu = c.mu().to_vec();
        mu[top].remove(c.carrier().index_of_int(3).unwrap());
        let broken = Constructive::new(Kind::Cgp, c.carrier().clone(), None, c.abs().clone(), c.eta().to_vec(), mu).unwrap();
        let w = check_cgp(&broken).unwrap_err();
        assert_eq!(w.at, ["3", "⊤"]);
    }

    #[test]
    fn cco_examples() {
        let c = Carrier::atoms(["a", "b", "c"]).unwrap();
        let singletons: Vec<Subset> = (0..3).map(|i| Subset::singleton(3, i)).collect();
        assert_eq!(check_cco(&c, &singletons), Ok(()));
        assert_eq!(check_cco(&c, &vec![c.full(); 3]), Ok(()));
        let bad = vec![c.full(), Subset::singleton(3, 1), Subset::singleton(3, 2)];
        assert!(check_cco(&c, &bad).is_err());
    }

    #[test]
    fn precision_examples() {
        let parity = catalog::parity(4).unwrap();
        assert_eq!(precision_cmp_cgc(&parity, &parity).unwrap(), Precision::Isomorphic);
        let one = catalog::one_block(parity.carrier().clone());
        assert_eq!(precision_cmp_cgc(&parity, &one).unwrap(), Precision::StrictlyFiner);
        let sign = catalog::sign_cgc(4).unwrap();
        let sat_parity = catalog::parity_on(sign.carrier().clone());
        assert!(!nonempty_iso(&sat_parity, &sign).unwrap());
        assert_eq!(precision_cmp_cgc(&sat_parity, &sign).unwrap(), Precision::Incomparable);
    }

    #[test]
    fn renaming_of_relabelled_parity() {
        let p = catalog::parity(3).unwrap();
        let names = ["odd", "even"].map(String::from);
        let flipped = Constructive::new(
            Kind::Cgc,
            p.carrier().clone(),
            None,
            Abstract::from_poset(Poset::discrete(&names).unwrap()),
            p.eta().iter().map(|&b| 1 - b).collect(),
            vec![p.mu_at(1).clone(), p.mu_at(0).clone()],
        )
        .unwrap();
        let r = renaming_witnesses(&p, &flipped).unwrap();
        assert_eq!(r.f12, BTreeMap::from([(0, 1), (1, 0)]));
        let same = renaming_witnesses(&p, &p).unwrap();
        assert!(same.f12.iter().all(|(a, b)| a == b));
    }

    #[test]
    fn cgi_examples() {
        assert!(is_cgi(&catalog::parity(4).unwrap()));
        let s = catalog::sign_cgc(4).unwrap();
        assert!(!is_cgi(&s));
        assert!(is_cgi(&eta_restriction(&s).unwrap()));
        assert!(nonempty_iso(&s, &eta_restriction(&s).unwrap()).unwrap());
    }

    #[test]
    fn embeddings_pass_target_checkers() {
        let p = catalog::parity(4).unwrap();
        let q = embed_cgc_to_pcgc(&p).unwrap();
        assert!(check_pcgc(&q).ok());
        let i = catalog::interval_pcgc(16).unwrap();
        let g = embed_pcgc_to_cgp(&i).unwrap();
        assert_eq!(check_cgp(&g), Ok(()));
        assert_eq!(check_cgp(&embed_pcgc_to_cgp(&q).unwrap()), Ok(()));
        assert!(embed_cgc_to_pcgc(&catalog::plustop_cgp(4).unwrap()).is_err());
    }
}
