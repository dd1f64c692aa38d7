//! Concrete and abstract operations: best correct approximations, the
//! soundness and completeness laws, and the transforms on function pairs.
//!
//! Operations have arity 1 or 2. Binary laws are the unary ones taken
//! pointwise over argument pairs.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::galois::{
    check_cgc, check_pcgc, classify_partitioning, Class, Constructive, GaloisError, Outcome, SetGc, Witness,
};
use crate::order::{Lattice, OrderError, Poset};
use crate::setops::{Carrier, Subset};

#[derive(Debug, Error)]
pub enum FunctionError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("abstract function is not block-preserving: {0}")]
    NotBlockPreserving(Witness),
    #[error("pair is not sound: {0}")]
    NotSound(Witness),
    #[error("abstract side is not a complete lattice")]
    NotCompleteLattice,
    #[error("equivalent formulations disagree: {0}")]
    LawViolation(String),
    #[error("not a {class}: {detail}")]
    NotInClass { class: &'static str, detail: String },
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// A total operation table over `0..n` of arity 1 or 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpTable {
    arity: usize,
    n: usize,
    table: Vec<usize>,
}

/// An operation on carrier indices.
pub type ConcreteFn = OpTable;
/// An operation on abstract indices.
pub type AbstractFn = OpTable;

impl OpTable {
    /// Panics when the table length does not match `n^arity`.
    pub fn from_vec(arity: usize, n: usize, table: Vec<usize>) -> Self {
        assert!(arity == 1 || arity == 2, "arity must be 1 or 2");
        assert_eq!(table.len(), n.pow(arity as u32), "table must be total");
        OpTable { arity, n, table }
    }

    pub fn unary(n: usize, f: impl Fn(usize) -> usize) -> Self {
        OpTable { arity: 1, n, table: (0..n).map(f).collect() }
    }

    pub fn binary(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        OpTable { arity: 2, n, table: (0..n * n).map(|i| f(i / n, i % n)).collect() }
    }

    pub fn identity(n: usize) -> Self {
        Self::unary(n, |a| a)
    }

    /// Integer operation closed into the carrier by its arithmetic mode.
    pub fn int_unary(carrier: &Carrier, f: impl Fn(i64) -> i64) -> Result<Self, FunctionError> {
        let n = carrier.len();
        let mut table = Vec::with_capacity(n);
        for a in 0..n {
            table.push(close(carrier, carrier.int(a).map(&f))?);
        }
        Ok(OpTable { arity: 1, n, table })
    }

    pub fn int_binary(carrier: &Carrier, f: impl Fn(i64, i64) -> i64) -> Result<Self, FunctionError> {
        let n = carrier.len();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let v = carrier.int(a).zip(carrier.int(b)).map(|(x, y)| f(x, y));
                table.push(close(carrier, v)?);
            }
        }
        Ok(OpTable { arity: 2, n, table })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Size of the index space.
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, args: &[usize]) -> usize {
        self.table[self.slot(args)]
    }

    pub fn set(&mut self, args: &[usize], v: usize) {
        let s = self.slot(args);
        self.table[s] = v;
    }

    pub fn entries(&self) -> &[usize] {
        &self.table
    }

    fn slot(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        args.iter().fold(0, |acc, &a| acc * self.n + a)
    }

    /// `f⋄` on subsets, taken pointwise over argument tuples.
    pub fn apply_set(&self, args: &[&Subset]) -> Subset {
        let mut out = Subset::empty(self.n);
        each_tuple(args, &mut |t| {
            out.insert(self.get(t));
            true
        });
        out
    }

    /// All argument tuples in lexicographic index order.
    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let (n, k) = (self.n, self.arity);
        (0..n.pow(k as u32)).map(move |i| if k == 1 { vec![i] } else { vec![i / n, i % n] })
    }
}

fn close(carrier: &Carrier, v: Option<i64>) -> Result<usize, FunctionError> {
    v.and_then(|v| carrier.close(v)).ok_or_else(|| FunctionError::ShapeMismatch("integer operation on a non-integer carrier".into()))
}

/// Visits every tuple of the cartesian product of `sets`; stops when the
/// visitor returns false.
fn each_tuple(sets: &[&Subset], visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn go(sets: &[&Subset], prefix: &mut Vec<usize>, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
        match sets.split_first() {
            None => visit(prefix),
            Some((head, rest)) => {
                for x in head.iter() {
                    prefix.push(x);
                    let go_on = go(rest, prefix, visit);
                    prefix.pop();
                    if !go_on {
                        return false;
                    }
                }
                true
            }
        }
    }
    go(sets, &mut Vec::with_capacity(sets.len()), visit)
}

fn all_index_tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(arity as u32)).map(move |i| if arity == 1 { vec![i] } else { vec![i / n, i % n] })
}

fn check_shape(f: &OpTable, n: usize, what: &str) -> Result<(), FunctionError> {
    if f.n != n {
        return Err(FunctionError::ShapeMismatch(format!("{what} is over {} values, expected {n}", f.n)));
    }
    Ok(())
}

fn check_arities(f: &OpTable, fs: &OpTable) -> Result<(), FunctionError> {
    if f.arity != fs.arity {
        return Err(FunctionError::ShapeMismatch(format!("arities differ: {} and {}", f.arity, fs.arity)));
    }
    Ok(())
}

fn names(tuple: &[usize], name: impl Fn(usize) -> String) -> String {
    tuple.iter().map(|&i| name(i)).collect::<Vec<_>>().join(",")
}

// === Best correct approximations ===

/// A concrete operation on subsets of the carrier.
pub type SetFn = Box<dyn Fn(&[&Subset]) -> Subset + Send + Sync>;

/// `d ↦ α(f(γ(d)))`, pointwise over argument tuples.
pub fn bca_gc(g: &SetGc, arity: usize, f: &dyn Fn(&[&Subset]) -> Subset) -> OpTable {
    let m = g.abs().len();
    let table = all_index_tuples(m, arity)
        .map(|t| {
            let args: Vec<&Subset> = t.iter().map(|&d| g.gamma(d)).collect();
            g.alpha(&f(&args))
        })
        .collect();
    OpTable { arity, n: m, table }
}

fn require_lattice(c: &Constructive) -> Result<&Lattice, FunctionError> {
    c.lattice().ok_or(FunctionError::NotCompleteLattice)
}

/// `f_C(b) = ∨ {η(f(a)) | a ∈ μ(b)}`.
pub fn bca_pcgc(c: &Constructive, f: &ConcreteFn) -> Result<AbstractFn, FunctionError> {
    let l = require_lattice(c)?;
    check_shape(f, c.carrier().len(), "concrete function")?;
    let m = c.abs_len();
    let table = all_index_tuples(m, f.arity)
        .map(|t| {
            let args: Vec<&Subset> = t.iter().map(|&b| c.mu_at(b)).collect();
            let mut acc = l.bottom();
            each_tuple(&args, &mut |x| {
                acc = l.join(acc, c.eta_at(f.get(x)));
                true
            });
            acc
        })
        .collect();
    Ok(OpTable { arity: f.arity, n: m, table })
}

// === Quantification over concrete arguments ===

/// Concrete argument tuples for laws that quantify over subsets.
///
/// Small grounds are enumerated: every downset when the ground has at most
/// 12 points for unary laws or 8 for binary ones. Larger grounds are
/// sampled: all singletons and pairs, then 4096 seeded random downsets.
pub struct Universe {
    arity: usize,
    plan: Plan,
}

enum Plan {
    Exhaustive(Vec<Subset>),
    Sampled { singles: Vec<Subset>, pairs: Vec<Subset>, extra: Vec<Vec<Subset>> },
}

/// Random tuples added to a sampled universe.
pub const SAMPLE_COUNT: usize = 4096;
const EXHAUSTIVE_UNARY: usize = 12;
const EXHAUSTIVE_BINARY: usize = 8;

impl Universe {
    /// Downsets of `order` generated by points of `ground`.
    pub fn sample(ground: &Subset, order: &Poset, arity: usize, seed: u64) -> Self {
        let points: Vec<usize> = ground.iter().collect();
        let limit = if arity == 1 { EXHAUSTIVE_UNARY } else { EXHAUSTIVE_BINARY };
        let close = |s: Subset| order.down_closure(&s);
        let n = order.len();
        if points.len() <= limit {
            let mut all: Vec<Subset> = (0..1usize << points.len())
                .map(|m| close(Subset::from_indices(n, (0..points.len()).filter(|b| m >> b & 1 == 1).map(|b| points[b]))))
                .collect();
            all.sort();
            all.dedup();
            return Universe { arity, plan: Plan::Exhaustive(all) };
        }
        let mut singles = vec![Subset::empty(n)];
        singles.extend(points.iter().map(|&a| close(Subset::singleton(n, a))));
        let mut pairs = Vec::new();
        for (i, &a) in points.iter().enumerate() {
            for &b in &points[i + 1..] {
                pairs.push(close(Subset::from_indices(n, [a, b])));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let extra = (0..SAMPLE_COUNT)
            .map(|_| {
                (0..arity)
                    .map(|_| {
                        let density = rng.random_range(0.0..1.0);
                        close(Subset::from_indices(n, points.iter().copied().filter(|_| rng.random_bool(density))))
                    })
                    .collect()
            })
            .collect();
        Universe { arity, plan: Plan::Sampled { singles, pairs, extra } }
    }

    /// The whole carrier under its order.
    pub fn over(order: &Poset, arity: usize, seed: u64) -> Self {
        Self::sample(&Subset::full(order.len()), order, arity, seed)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self.plan, Plan::Exhaustive(_))
    }

    /// Runs `check` on every tuple; the first failure wins.
    pub fn try_each(&self, mut check: impl FnMut(&[&Subset]) -> Outcome) -> Outcome {
        let mut product = |xs: &[Subset], ys: &[Subset]| -> Outcome {
            for x in xs {
                for y in ys {
                    check(&[x, y])?;
                }
            }
            Ok(())
        };
        match (&self.plan, self.arity) {
            (Plan::Exhaustive(all), 1) => all.iter().try_for_each(|x| check(&[x])),
            (Plan::Exhaustive(all), _) => product(all, all),
            (Plan::Sampled { singles, pairs, extra }, arity) => {
                if arity == 1 {
                    singles.iter().chain(pairs).try_for_each(|x| check(&[x]))?;
                } else {
                    product(singles, singles)?;
                    product(pairs, singles)?;
                    product(singles, pairs)?;
                }
                extra.iter().try_for_each(|t| check(&t.iter().collect::<Vec<_>>()))
            }
        }
    }
}

// === GC-level pair properties ===

/// A concrete operation on the concrete lattice paired with an abstract
/// table on `D`.
pub struct GcPair {
    pub arity: usize,
    pub conc: SetFn,
    pub abs: AbstractFn,
}

impl GcPair {
    /// The pair `⟨f⋄, f♯⟩`.
    pub fn lifted(f: &ConcreteFn, abs: AbstractFn) -> Self {
        let f = f.clone();
        GcPair { arity: f.arity, conc: Box::new(move |xs: &[&Subset]| f.apply_set(xs)), abs }
    }
}

impl fmt::Debug for GcPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GcPair").field("arity", &self.arity).field("abs", &self.abs).finish_non_exhaustive()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GcProperty {
    Sound,
    Optimal,
    Backward,
    Forward,
    Precise,
}

impl GcProperty {
    pub const ALL: [GcProperty; 5] =
        [GcProperty::Sound, GcProperty::Optimal, GcProperty::Backward, GcProperty::Forward, GcProperty::Precise];

    pub fn as_str(self) -> &'static str {
        match self {
            GcProperty::Sound => "sound",
            GcProperty::Optimal => "optimal",
            GcProperty::Backward => "backward_complete",
            GcProperty::Forward => "forward_complete",
            GcProperty::Precise => "precise",
        }
    }
}

impl fmt::Display for GcProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Checks one of the GC-level relations between `f` and `f♯`:
/// sound `α∘f∘γ ⊑ f♯`, optimal `α∘f∘γ = f♯`, backward `α∘f = f♯∘α`,
/// forward `f∘γ = γ∘f♯`, precise `f = γ∘f♯∘α`. Abstract arguments are
/// enumerated; concrete ones come from `universe`.
pub fn gc_pair_property(g: &SetGc, pair: &GcPair, prop: GcProperty, universe: &Universe) -> Result<Outcome, FunctionError> {
    check_shape(&pair.abs, g.abs().len(), "abstract function")?;
    if universe.arity() != pair.arity || pair.abs.arity != pair.arity {
        return Err(FunctionError::ShapeMismatch("arity of the pair and the universe differ".into()));
    }
    let (l, c) = (g.abs(), g.carrier());
    let dn = |t: &[usize]| names(t, |d| g.d(d).to_string());
    let sets = |xs: &[&Subset]| xs.iter().map(|x| c.fmt_set(x)).collect::<Vec<_>>().join(", ");
    let out = match prop {
        GcProperty::Sound | GcProperty::Optimal | GcProperty::Forward => {
            all_index_tuples(l.len(), pair.arity).try_for_each(|t| {
                let args: Vec<&Subset> = t.iter().map(|&d| g.gamma(d)).collect();
                let image = (pair.conc)(&args);
                let fs = pair.abs.get(&t);
                let ok = match prop {
                    GcProperty::Sound => l.leq(g.alpha(&image), fs),
                    GcProperty::Optimal => g.alpha(&image) == fs,
                    _ => &image == g.gamma(fs),
                };
                if ok {
                    return Ok(());
                }
                let chain = match prop {
                    GcProperty::Forward => format!(
                        "f(γ({})) = {} but γ(f♯({})) = γ({}) = {}",
                        dn(&t),
                        c.fmt_set(&image),
                        dn(&t),
                        g.d(fs),
                        c.fmt_set(g.gamma(fs))
                    ),
                    _ => format!("α(f(γ({}))) = {} but f♯({}) = {}", dn(&t), g.d(g.alpha(&image)), dn(&t), g.d(fs)),
                };
                Err(Witness::new([dn(&t)], chain).context(prop.as_str()))
            })
        }
        GcProperty::Backward | GcProperty::Precise => universe.try_each(|xs| {
            let image = (pair.conc)(xs);
            let at: Vec<usize> = xs.iter().map(|x| g.alpha(x)).collect();
            let fs = pair.abs.get(&at);
            let (ok, chain) = if prop == GcProperty::Backward {
                let lhs = g.alpha(&image);
                (lhs == fs, format!("α(f({})) = {} but f♯(α(·)) = f♯({}) = {}", sets(xs), g.d(lhs), dn(&at), g.d(fs)))
            } else {
                let rhs = g.gamma(fs);
                (&image == rhs, format!("f({}) = {} but γ(f♯(α(·))) = {}", sets(xs), c.fmt_set(&image), c.fmt_set(rhs)))
            };
            if ok {
                Ok(())
            } else {
                Err(Witness::new([sets(xs)], chain).context(prop.as_str()))
            }
        }),
    };
    Ok(out)
}

// === CGC soundness and completeness ===

/// The four readings of the CGC laws, named by which maps frame them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    EtaMu,
    MuMu,
    EtaEta,
    MuEta,
    All,
}

impl Variant {
    pub const FOUR: [Variant; 4] = [Variant::EtaMu, Variant::MuMu, Variant::EtaEta, Variant::MuEta];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::EtaMu => "ημ",
            Variant::MuMu => "μμ",
            Variant::EtaEta => "ηη",
            Variant::MuEta => "μη",
            Variant::All => "all",
        }
    }

    /// The GC-level property matching this completeness variant on the
    /// powerset transform.
    pub fn matching_property(self) -> Option<GcProperty> {
        match self {
            Variant::EtaMu => Some(GcProperty::Optimal),
            Variant::MuMu => Some(GcProperty::Forward),
            Variant::EtaEta => Some(GcProperty::Backward),
            Variant::MuEta => Some(GcProperty::Precise),
            Variant::All => None,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "ημ" | "eta-mu" => Variant::EtaMu,
            "μμ" | "mu-mu" => Variant::MuMu,
            "ηη" | "eta-eta" => Variant::EtaEta,
            "μη" | "mu-eta" => Variant::MuEta,
            "all" => Variant::All,
            other => return Err(format!("unknown variant {other}; expected ημ, μμ, ηη, μη or all")),
        })
    }
}

fn require_cgc(c: &Constructive) -> Result<(), FunctionError> {
    check_cgc(c).map_err(|w| FunctionError::NotInClass { class: "CGC", detail: w.to_string() })
}

fn check_pair(c: &Constructive, f: &ConcreteFn, fs: &AbstractFn) -> Result<(), FunctionError> {
    check_arities(f, fs)?;
    check_shape(f, c.carrier().len(), "concrete function")?;
    check_shape(fs, c.abs_len(), "abstract function")
}

struct Ctx<'a> {
    c: &'a Constructive,
    f: &'a ConcreteFn,
    fs: &'a AbstractFn,
}

impl Ctx<'_> {
    fn a(&self, t: &[usize]) -> String {
        names(t, |x| self.c.a(x).to_string())
    }

    fn b(&self, t: &[usize]) -> String {
        names(t, |y| self.c.b(y).to_string())
    }

    fn eta(&self, t: &[usize]) -> Vec<usize> {
        t.iter().map(|&x| self.c.eta_at(x)).collect()
    }

    fn mus<'s>(&'s self, ys: &[usize]) -> Vec<&'s Subset> {
        ys.iter().map(|&y| self.c.mu_at(y)).collect()
    }

    /// Runs `check(ys, xs)` over every abstract tuple and every concrete
    /// tuple in its concretization.
    fn over_mu(&self, mut check: impl FnMut(&[usize], &[usize]) -> Outcome) -> Outcome {
        for ys in all_index_tuples(self.c.abs_len(), self.f.arity) {
            let mut res = Ok(());
            each_tuple(&self.mus(&ys), &mut |xs| {
                res = check(&ys, xs);
                res.is_ok()
            });
            res?;
        }
        Ok(())
    }

    fn over_carrier(&self, mut check: impl FnMut(&[usize]) -> Outcome) -> Outcome {
        all_index_tuples(self.c.carrier().len(), self.f.arity).try_for_each(|xs| check(&xs))
    }

    fn sound(&self, v: Variant) -> Outcome {
        let (c, f, fs) = (self.c, self.f, self.fs);
        match v {
            Variant::EtaMu => self.over_mu(|ys, xs| {
                let (fx, want) = (f.get(xs), fs.get(ys));
                if c.eta_at(fx) == want {
                    return Ok(());
                }
                let chain = format!(
                    "x = {} ∈ μ({}), f(x) = {}, η(f(x)) = {} ≠ f♯({}) = {}",
                    self.a(xs),
                    self.b(ys),
                    c.a(fx),
                    c.b(c.eta_at(fx)),
                    self.b(ys),
                    c.b(want)
                );
                Err(Witness::new([self.a(xs), self.b(ys)], chain))
            }),
            Variant::MuMu => self.over_mu(|ys, xs| {
                let (fx, want) = (f.get(xs), fs.get(ys));
                if c.mu_at(want).contains(fx) {
                    return Ok(());
                }
                let chain = format!(
                    "x = {} ∈ μ({}), f(x) = {} ∉ μ(f♯({})) = μ({}) = {}",
                    self.a(xs),
                    self.b(ys),
                    c.a(fx),
                    self.b(ys),
                    c.b(want),
                    c.fmt_concrete(c.mu_at(want))
                );
                Err(Witness::new([self.a(xs), self.b(ys)], chain))
            }),
            Variant::EtaEta | Variant::MuEta => self.over_carrier(|xs| {
                let (fx, ex) = (f.get(xs), self.eta(xs));
                let want = fs.get(&ex);
                let ok = if v == Variant::EtaEta { c.eta_at(fx) == want } else { c.mu_at(want).contains(fx) };
                if ok {
                    return Ok(());
                }
                let chain = format!(
                    "x = {}, f(x) = {}, η(x) = {}, f♯(η(x)) = {}, η(f(x)) = {}, μ(f♯(η(x))) = {}",
                    self.a(xs),
                    c.a(fx),
                    self.b(&ex),
                    c.b(want),
                    c.b(c.eta_at(fx)),
                    c.fmt_concrete(c.mu_at(want))
                );
                Err(Witness::new([self.a(xs)], chain))
            }),
            Variant::All => unreachable!("handled by the caller"),
        }
    }

    fn complete(&self, v: Variant) -> Outcome {
        let (c, f, fs) = (self.c, self.f, self.fs);
        let n = c.carrier().len();
        match v {
            Variant::EtaMu | Variant::MuMu => {
                for ys in all_index_tuples(c.abs_len(), f.arity) {
                    let image = f.apply_set(&self.mus(&ys));
                    let want = fs.get(&ys);
                    let (ok, chain) = if v == Variant::EtaMu {
                        let etas = Subset::from_indices(c.abs_len(), image.iter().map(|x| c.eta_at(x)));
                        let ok = etas.len() == 1 && etas.contains(want);
                        let shown = etas.iter().map(|y| c.b(y)).collect::<Vec<_>>().join(",");
                        (ok, format!("{{η(f(x)) | x ∈ μ({})}} = {{{shown}}} ≠ {{{}}}", self.b(&ys), c.b(want)))
                    } else {
                        let ok = &image == c.mu_at(want);
                        (
                            ok,
                            format!(
                                "f⋄(μ({})) = {} ≠ μ(f♯({})) = {}",
                                self.b(&ys),
                                c.fmt_concrete(&image),
                                self.b(&ys),
                                c.fmt_concrete(c.mu_at(want))
                            ),
                        )
                    };
                    if !ok {
                        return Err(Witness::new([self.b(&ys)], chain));
                    }
                }
                Ok(())
            }
            Variant::EtaEta => self.sound(Variant::EtaEta),
            Variant::MuEta => self.over_carrier(|xs| {
                let fx = f.get(xs);
                let want = fs.get(&self.eta(xs));
                if c.mu_at(want) == &Subset::singleton(n, fx) {
                    return Ok(());
                }
                let chain = format!(
                    "{{f({})}} = {{{}}} ≠ μ(f♯(η(x))) = μ({}) = {}",
                    self.a(xs),
                    c.a(fx),
                    c.b(want),
                    c.fmt_concrete(c.mu_at(want))
                );
                Err(Witness::new([self.a(xs)], chain))
            }),
            Variant::All => unreachable!("completeness variants are not equivalent"),
        }
    }
}

/// CGC soundness. Variants ημ and μμ range over every `y ∈ B`; values
/// outside `η(A)` have empty concretization and hold vacuously. `All`
/// evaluates the four variants and fails if they disagree.
pub fn cgc_soundness(c: &Constructive, f: &ConcreteFn, fs: &AbstractFn, v: Variant) -> Result<Outcome, FunctionError> {
    require_cgc(c)?;
    check_pair(c, f, fs)?;
    let ctx = Ctx { c, f, fs };
    if v != Variant::All {
        return Ok(ctx.sound(v));
    }
    let results: Vec<Outcome> = Variant::FOUR.iter().map(|&v| ctx.sound(v)).collect();
    let oks: Vec<bool> = results.iter().map(Result::is_ok).collect();
    if oks.iter().any(|&o| o != oks[0]) {
        let detail = Variant::FOUR.iter().zip(&oks).map(|(v, o)| format!("{v}={o}")).collect::<Vec<_>>().join(" ");
        return Err(FunctionError::LawViolation(format!("soundness variants disagree: {detail}")));
    }
    Ok(results.into_iter().find(Result::is_err).unwrap_or(Ok(())))
}

/// CGC completeness, each variant read pointwise: ημ `{η(f(x)) | x ∈ μ(y)}
/// = {f♯(y)}`, μμ `f⋄(μ(y)) = μ(f♯(y))`, ηη `η(f(x)) = f♯(η(x))`,
/// μη `{f(x)} = μ(f♯(η(x)))`.
pub fn cgc_completeness(c: &Constructive, f: &ConcreteFn, fs: &AbstractFn, v: Variant) -> Result<Outcome, FunctionError> {
    require_cgc(c)?;
    check_pair(c, f, fs)?;
    if v == Variant::All {
        return Err(FunctionError::ShapeMismatch("completeness has no combined variant".into()));
    }
    Ok(Ctx { c, f, fs }.complete(v))
}

// === PCGC soundness and pair properties ===

fn require_pcgc(c: &Constructive) -> Result<(), FunctionError> {
    check_pcgc(c).outcome().map_err(|w| FunctionError::NotInClass { class: "PCGC", detail: w.to_string() })
}

/// PCGC soundness `η(a) ≤ b ⇒ η(f(a)) ≤ f♯(b)`, also evaluated in its BCA
/// form `f_C(b) ≤ f♯(b)`; disagreement is a [`FunctionError::LawViolation`].
pub fn pcgc_sound(c: &Constructive, f: &ConcreteFn, fs: &AbstractFn) -> Result<Outcome, FunctionError> {
    require_pcgc(c)?;
    check_pair(c, f, fs)?;
    let l = require_lattice(c)?;
    let p = c.abs_poset();
    let ctx = Ctx { c, f, fs };
    let mut pointwise: Outcome = Ok(());
    'outer: for ys in all_index_tuples(c.abs_len(), f.arity) {
        for xs in all_index_tuples(c.carrier().len(), f.arity) {
            let below = xs.iter().zip(&ys).all(|(&x, &y)| p.leq(c.eta_at(x), y));
            if !below {
                continue;
            }
            let fx = f.get(&xs);
            let want = fs.get(&ys);
            if !p.leq(c.eta_at(fx), want) {
                let chain = format!(
                    "η({}) ≤ {} but η(f(x)) = η({}) = {} ≰ f♯({}) = {}",
                    ctx.a(&xs),
                    ctx.b(&ys),
                    c.a(fx),
                    c.b(c.eta_at(fx)),
                    ctx.b(&ys),
                    c.b(want)
                );
                pointwise = Err(Witness::new([ctx.a(&xs), ctx.b(&ys)], chain));
                break 'outer;
            }
        }
    }
    let bca = bca_pcgc(c, f)?;
    let by_bca = bca.tuples().all(|t| l.leq(bca.get(&t), fs.get(&t)));
    if pointwise.is_ok() != by_bca {
        return Err(FunctionError::LawViolation(format!(
            "pointwise soundness is {} but the BCA form is {by_bca}",
            pointwise.is_ok()
        )));
    }
    Ok(pointwise)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PcgcProperty {
    Optimal,
    Backward,
    Forward,
}

impl PcgcProperty {
    pub fn as_str(self) -> &'static str {
        match self {
            PcgcProperty::Optimal => "optimal",
            PcgcProperty::Backward => "backward_complete",
            PcgcProperty::Forward => "forward_complete",
        }
    }
}

/// Optimal `η∨∘f⋄∘μ = f♯`, backward `η∨∘f⋄ = f♯∘η∨`, forward
/// `f⋄∘μ = μ∘f♯`, over the whole carrier.
pub fn pcgc_pair_property(c: &Constructive, f: &ConcreteFn, fs: &AbstractFn, prop: PcgcProperty) -> Result<Outcome, FunctionError> {
    let u = Universe::over(&Poset::discrete(c.carrier().names())?, f.arity, 0);
    pcgc_pair_property_in(c, f, fs, prop, &u)
}

/// As [`pcgc_pair_property`], with the backward law quantified over the
/// subsets in `universe` only.
pub fn pcgc_pair_property_in(
    c: &Constructive,
    f: &ConcreteFn,
    fs: &AbstractFn,
    prop: PcgcProperty,
    universe: &Universe,
) -> Result<Outcome, FunctionError> {
    require_pcgc(c)?;
    check_pair(c, f, fs)?;
    let l = require_lattice(c)?;
    let ctx = Ctx { c, f, fs };
    let eta_lub = |x: &Subset| l.join_all(x.iter().map(|a| c.eta_at(a)));
    let sets = |xs: &[&Subset]| xs.iter().map(|x| c.fmt_concrete(x)).collect::<Vec<_>>().join(", ");
    let out = match prop {
        PcgcProperty::Optimal | PcgcProperty::Forward => all_index_tuples(c.abs_len(), f.arity).try_for_each(|ys| {
            let image = f.apply_set(&ctx.mus(&ys));
            let want = fs.get(&ys);
            if prop == PcgcProperty::Optimal {
                let got = eta_lub(&image);
                if got == want {
                    return Ok(());
                }
                let chain = format!("η∨(f⋄(μ({}))) = {} ≠ f♯({}) = {}", ctx.b(&ys), c.b(got), ctx.b(&ys), c.b(want));
                Err(Witness::new([ctx.b(&ys)], chain))
            } else {
                if &image == c.mu_at(want) {
                    return Ok(());
                }
                let chain = format!(
                    "f⋄(μ({})) = {} ≠ μ(f♯({})) = {}",
                    ctx.b(&ys),
                    c.fmt_concrete(&image),
                    ctx.b(&ys),
                    c.fmt_concrete(c.mu_at(want))
                );
                Err(Witness::new([ctx.b(&ys)], chain))
            }
        }),
        PcgcProperty::Backward => {
            if universe.arity() != f.arity {
                return Err(FunctionError::ShapeMismatch("universe arity differs from the pair".into()));
            }
            universe.try_each(|xs| {
                let lhs = eta_lub(&f.apply_set(xs));
                let at: Vec<usize> = xs.iter().map(|x| eta_lub(x)).collect();
                let rhs = fs.get(&at);
                if lhs == rhs {
                    return Ok(());
                }
                let chain = format!("η∨(f⋄({})) = {} ≠ f♯(η∨(·)) = f♯({}) = {}", sets(xs), c.b(lhs), ctx.b(&at), c.b(rhs));
                Err(Witness::new([sets(xs)], chain))
            })
        }
    };
    Ok(out.map_err(|w| w.context(prop.as_str())))
}

// === Block transforms ===

fn require_pgc(g: &SetGc) -> Result<(), FunctionError> {
    let p = classify_partitioning(g)?;
    if p.class == Class::Pgc {
        Ok(())
    } else {
        Err(FunctionError::NotInClass { class: "PGC", detail: format!("classified as {}", p.class) })
    }
}

/// `∀a ∃a′. g♯(α({a})) = α({a′})`.
pub fn is_block_preserving(g: &SetGc, gs: &AbstractFn) -> Result<Outcome, FunctionError> {
    require_pgc(g)?;
    check_shape(gs, g.abs().len(), "abstract function")?;
    if gs.arity != 1 {
        return Err(FunctionError::ShapeMismatch("block preservation is defined for unary functions".into()));
    }
    let n = g.carrier().len();
    let block_values = Subset::from_indices(g.abs().len(), (0..n).map(|a| g.alpha_point(a)));
    for a in 0..n {
        let d = g.alpha_point(a);
        let img = gs.get(&[d]);
        if !block_values.contains(img) {
            let chain = format!("g♯(α({{{}}})) = g♯({}) = {} is not α of any singleton", g.carrier().name(a), g.d(d), g.d(img));
            return Ok(Err(Witness::new([g.carrier().name(a)], chain)));
        }
    }
    Ok(Ok(()))
}

/// `⟨f⋄, f♯⋄⟩` on the powerset transform, whose abstract element `i` is the
/// subset of `B` with bitmask `i`.
pub fn pair_to_pgc(c: &Constructive, f: &ConcreteFn, fs: &AbstractFn) -> Result<GcPair, FunctionError> {
    check_pair(c, f, fs)?;
    let m = c.abs_len();
    if m > 16 {
        return Err(FunctionError::ShapeMismatch(format!("powerset of {m} abstract values is too large")));
    }
    let k = 1usize << m;
    let lift = |masks: &[usize]| -> usize {
        let mut out = 0usize;
        let sets: Vec<Subset> = masks.iter().map(|&s| Subset::from_indices(m, (0..m).filter(|b| s >> b & 1 == 1))).collect();
        let refs: Vec<&Subset> = sets.iter().collect();
        each_tuple(&refs, &mut |ys| {
            out |= 1 << fs.get(ys);
            true
        });
        out
    };
    let table = all_index_tuples(k, fs.arity).map(|t| lift(&t)).collect();
    Ok(GcPair::lifted(f, OpTable { arity: fs.arity, n: k, table }))
}

/// The CGC of a PGC with its value indices: `B = {α({a})}` in carrier
/// order, named as in `D`.
fn block_values(g: &SetGc) -> Vec<usize> {
    let mut seen = Vec::new();
    for a in 0..g.carrier().len() {
        let d = g.alpha_point(a);
        if !seen.contains(&d) {
            seen.push(d);
        }
    }
    seen
}

fn unary_on_blocks(g: &SetGc, c: &Constructive, value: impl Fn(usize) -> usize) -> Result<AbstractFn, FunctionError> {
    let blocks = block_values(g);
    let mut table = Vec::with_capacity(blocks.len());
    for (j, &d) in blocks.iter().enumerate() {
        debug_assert_eq!(c.b(j), g.d(d));
        let img = value(d);
        let pos = blocks.iter().position(|&e| e == img).ok_or_else(|| {
            FunctionError::NotBlockPreserving(Witness::new([g.d(d)], format!("image {} is not a block value", g.d(img))))
        })?;
        table.push(pos);
    }
    Ok(OpTable { arity: 1, n: blocks.len(), table })
}

/// `g♯ʳ(α({a})) = g♯(α({a}))`: the restriction of a block-preserving
/// `g♯` to the block values. Needs only a PGC.
pub fn restrict_to_blocks(g: &SetGc, gs: &AbstractFn) -> Result<(Constructive, AbstractFn), FunctionError> {
    is_block_preserving(g, gs)?.map_err(FunctionError::NotBlockPreserving)?;
    let c = crate::transforms::t_cgc_of_pgc(g)?;
    let r = unary_on_blocks(g, &c, |d| gs.get(&[d]))?;
    Ok((c, r))
}

/// `g♯ʳ(α({a})) = α({g(a)})`, defined when `g♯` is block-preserving and
/// `⟨g⋄, g♯⟩` is sound on the PGC.
pub fn pair_to_cgc(g: &SetGc, gf: &ConcreteFn, gs: &AbstractFn) -> Result<(Constructive, ConcreteFn, AbstractFn), FunctionError> {
    check_arities(gf, gs)?;
    check_shape(gf, g.carrier().len(), "concrete function")?;
    is_block_preserving(g, gs)?.map_err(FunctionError::NotBlockPreserving)?;
    let n = g.carrier().len();
    let u = Universe::over(g.carrier_order(), 1, 0);
    gc_pair_property(g, &GcPair::lifted(gf, gs.clone()), GcProperty::Sound, &u)?.map_err(FunctionError::NotSound)?;
    let c = crate::transforms::t_cgc_of_pgc(g)?;
    let rep: Vec<usize> = block_values(g).iter().map(|&d| (0..n).find(|&a| g.alpha_point(a) == d).expect("value of a point")).collect();
    let by_value: Vec<(usize, usize)> = block_values(g).into_iter().zip(rep).collect();
    let r = unary_on_blocks(g, &c, |d| {
        let a = by_value.iter().find(|(e, _)| *e == d).expect("block value").1;
        g.alpha_point(gf.get(&[a]))
    })?;
    Ok((c, gf.clone(), r))
}

/// Sound pairs are isomorphic when `μ1∘f1♯∘η1 = μ2∘f2♯∘η2` on every tuple.
pub fn pair_iso(
    c1: &Constructive,
    p1: (&ConcreteFn, &AbstractFn),
    c2: &Constructive,
    p2: (&ConcreteFn, &AbstractFn),
) -> Result<bool, FunctionError> {
    if c1.carrier().names() != c2.carrier().names() {
        return Err(FunctionError::ShapeMismatch("pairs live on different carriers".into()));
    }
    for (c, (f, fs)) in [(c1, p1), (c2, p2)] {
        cgc_soundness(c, f, fs, Variant::EtaEta)?.map_err(FunctionError::NotSound)?;
    }
    check_arities(p1.1, p2.1)?;
    let arity = p1.1.arity;
    Ok(all_index_tuples(c1.carrier().len(), arity).all(|xs| {
        let y1: Vec<usize> = xs.iter().map(|&x| c1.eta_at(x)).collect();
        let y2: Vec<usize> = xs.iter().map(|&x| c2.eta_at(x)).collect();
        c1.mu_at(p1.1.get(&y1)) == c2.mu_at(p2.1.get(&y2))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn succ(c: &Constructive) -> ConcreteFn {
        OpTable::int_unary(c.carrier(), |v| v + 1).unwrap()
    }

    fn flip(c: &Constructive) -> AbstractFn {
        let (e, o) = (c.abs_poset().index_of("even").unwrap(), c.abs_poset().index_of("odd").unwrap());
        OpTable::unary(2, |b| if b == e { o } else { e })
    }

    #[test]
    fn parity_succ_is_sound_in_every_variant() {
        let p = catalog::parity(4).unwrap();
        assert_eq!(cgc_soundness(&p, &succ(&p), &flip(&p), Variant::All).unwrap(), Ok(()));
    }

    #[test]
    fn parity_succ_with_identity_fails_at_zero() {
        let p = catalog::parity(4).unwrap();
        let w = cgc_soundness(&p, &succ(&p), &OpTable::identity(2), Variant::MuEta).unwrap().unwrap_err();
        assert_eq!(w.at, ["0"]);
        assert!(cgc_soundness(&p, &succ(&p), &OpTable::identity(2), Variant::All).unwrap().is_err());
    }

    #[test]
    fn parity_succ_completeness() {
        let p = catalog::parity(4).unwrap();
        let (f, fs) = (succ(&p), flip(&p));
        assert_eq!(cgc_completeness(&p, &f, &fs, Variant::EtaEta).unwrap(), Ok(()));
        assert!(cgc_completeness(&p, &f, &fs, Variant::MuEta).unwrap().is_err());
        let id = OpTable::identity(p.carrier().len());
        assert_eq!(cgc_completeness(&p, &id, &OpTable::identity(2), Variant::EtaMu).unwrap(), Ok(()));
    }

    #[test]
    fn parity_succ_bca_as_pcgc() {
        let p = crate::galois::embed_cgc_to_pcgc(&catalog::parity(4).unwrap()).unwrap();
        // Two discrete values have no lattice structure.
        assert!(matches!(bca_pcgc(&p, &succ(&p)), Err(FunctionError::NotCompleteLattice)));
    }

    #[test]
    fn apply_set_binary() {
        let c = crate::setops::Carrier::saturating(4).unwrap();
        let mul = OpTable::int_binary(&c, |x, y| x * y).unwrap();
        let x = c.ints_where(|v| v == 2 || v == 4);
        let y = c.ints_where(|v| v == -1 || v == 0);
        assert_eq!(c.fmt_set(&mul.apply_set(&[&x, &y])), "{-4,-2,0}");
    }

    #[test]
    fn sampled_universe_covers_small_sets() {
        let p = Poset::discrete(&(0..20).map(|i| i.to_string()).collect::<Vec<_>>()).unwrap();
        let u = Universe::over(&p, 1, 9);
        assert!(!u.is_exhaustive());
        let mut count = 0;
        u.try_each(|_| {
            count += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(count, 21 + 190 + SAMPLE_COUNT);
    }
}
