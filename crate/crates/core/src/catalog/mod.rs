//! Built-in example domains and seeded instance generators.

pub mod gen;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::galois::{Abstract, Alpha, Connection, Constructive, GaloisError, Kind, SetGc};
use crate::order::{build_poset, Lattice, OrderError};
use crate::setops::{Carrier, CarrierError, Subset};

pub use gen::{Sizes, SIZE_LIMIT_A, SIZE_LIMIT_B};

/// Bound used when none is given.
pub const DEFAULT_BOUND: i64 = 64;
/// Largest accepted bound.
pub const MAX_BOUND: i64 = 4096;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown builtin {0}; expected one of {names}", names = Builtin::ALL.map(|b| b.name()).join(", "))]
    UnknownName(String),
    #[error("{name} needs a bound of at least {min}, got {got}")]
    BoundTooSmall { name: &'static str, min: i64, got: i64 },
    #[error("size guard: {0}")]
    SizeGuard(String),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Carrier(#[from] CarrierError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Parity,
    PlustopCgp,
    SignPgi,
    SignMinusPpgc,
    IntervalGiD,
    IntervalPcgc,
    IntervalBprime,
    SignconstPcgc,
    SignCgc,
}

impl Builtin {
    pub const ALL: [Builtin; 9] = [
        Builtin::Parity,
        Builtin::PlustopCgp,
        Builtin::SignPgi,
        Builtin::SignMinusPpgc,
        Builtin::IntervalGiD,
        Builtin::IntervalPcgc,
        Builtin::IntervalBprime,
        Builtin::SignconstPcgc,
        Builtin::SignCgc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Parity => "parity",
            Builtin::PlustopCgp => "plustop_cgp",
            Builtin::SignPgi => "sign_pgi",
            Builtin::SignMinusPpgc => "sign_minus_ppgc",
            Builtin::IntervalGiD => "interval_gi_d",
            Builtin::IntervalPcgc => "interval_pcgc",
            Builtin::IntervalBprime => "interval_bprime",
            Builtin::SignconstPcgc => "signconst_pcgc",
            Builtin::SignCgc => "sign_cgc",
        }
    }

    /// Smallest bound that keeps every constant the example mentions.
    pub fn min_bound(self) -> i64 {
        match self {
            Builtin::IntervalGiD | Builtin::IntervalPcgc | Builtin::IntervalBprime => 10,
            Builtin::SignconstPcgc => 4,
            _ => 1,
        }
    }

    /// Whether the builtin is shipped as a counterexample to its class.
    pub fn is_negative(self) -> bool {
        matches!(self, Builtin::IntervalBprime | Builtin::PlustopCgp)
    }

    pub fn build(self, n: i64) -> Result<Connection, CatalogError> {
        check_bound(self, n)?;
        Ok(match self {
            Builtin::Parity => Connection::Constructive(parity(n)?),
            Builtin::PlustopCgp => Connection::Constructive(plustop_cgp(n)?),
            Builtin::SignPgi => Connection::Gc(sign_pgi(n)?),
            Builtin::SignMinusPpgc => Connection::Gc(sign_minus_ppgc(n)?),
            Builtin::IntervalGiD => Connection::Gc(interval_gi_d(n)?),
            Builtin::IntervalPcgc => Connection::Constructive(interval_pcgc(n)?),
            Builtin::IntervalBprime => Connection::Constructive(interval_bprime(n)?),
            Builtin::SignconstPcgc => Connection::Constructive(signconst_pcgc(n)?),
            Builtin::SignCgc => Connection::Constructive(sign_cgc(n)?),
        })
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        Builtin::ALL.into_iter().find(|b| b.name() == s).ok_or_else(|| CatalogError::UnknownName(s.to_string()))
    }
}

fn check_bound(b: Builtin, n: i64) -> Result<(), CatalogError> {
    if n < b.min_bound() {
        return Err(CatalogError::BoundTooSmall { name: b.name(), min: b.min_bound(), got: n });
    }
    if n > MAX_BOUND {
        return Err(CatalogError::SizeGuard(format!("bound {n} exceeds {MAX_BOUND}")));
    }
    Ok(())
}

/// Looks up a builtin by name.
pub fn builtin(name: &str, n: i64) -> Result<Connection, CatalogError> {
    name.parse::<Builtin>()?.build(n)
}

fn constructive(
    kind: Kind,
    carrier: Carrier,
    names: &[&str],
    hasse: &[(&str, &str)],
    eta: impl Fn(i64) -> &'static str,
    mu: impl Fn(&str, i64) -> bool,
) -> Result<Constructive, CatalogError> {
    let abs = Abstract::from_poset(build_poset(names, hasse)?);
    let p = abs.poset();
    let eta_t = (0..carrier.len()).map(|i| p.index_of(eta(carrier.int(i).expect("int carrier"))).expect("known name")).collect();
    let mu_t = names.iter().map(|b| carrier.ints_where(|v| mu(b, v))).collect();
    let c = Constructive::new(kind, carrier, None, abs, eta_t, mu_t)?;
    Ok(c)
}

/// Parity `⟨parity, [-N,N-1], {even, odd}, μ⟩` with wraparound arithmetic.
pub fn parity(n: i64) -> Result<Constructive, CatalogError> {
    check_bound(Builtin::Parity, n)?;
    Ok(parity_on(Carrier::modular(n)?).with_provenance("builtin:parity"))
}

/// Parity over any integer carrier.
pub fn parity_on(carrier: Carrier) -> Constructive {
    let even = |v: i64| v.rem_euclid(2) == 0;
    constructive(Kind::Cgc, carrier, &["even", "odd"], &[], move |v| if even(v) { "even" } else { "odd" }, move |b, v| {
        (b == "even") == even(v)
    })
    .expect("parity tables are well formed")
}

/// The one-block CGC on a carrier.
pub fn one_block(carrier: Carrier) -> Constructive {
    let n = carrier.len();
    let abs = Abstract::from_poset(build_poset(&["A"], &[]).expect("one point"));
    Constructive::new(Kind::Cgc, carrier, None, abs, vec![0; n], vec![Subset::full(n)]).expect("one block")
}

/// `B = {+, ⊤}` with `+ ≤ ⊤`, `η(x) = +` iff `x > 0`: a CGP but not a CGC.
pub fn plustop_cgp(n: i64) -> Result<Constructive, CatalogError> {
    check_bound(Builtin::PlustopCgp, n)?;
    let c = constructive(
        Kind::Cgp,
        Carrier::saturating(n)?,
        &["+", "⊤"],
        &[("+", "⊤")],
        |v| if v > 0 { "+" } else { "⊤" },
        |b, v| b == "⊤" || v > 0,
    )?;
    Ok(c.with_provenance("builtin:plustop_cgp"))
}

/// The CGC `⟨β, ℤ, {-, 0, +, ⊥}, δ⟩` with the useless value `⊥`.
pub fn sign_cgc(n: i64) -> Result<Constructive, CatalogError> {
    check_bound(Builtin::SignCgc, n)?;
    let c = constructive(
        Kind::Cgc,
        Carrier::saturating(n)?,
        &["-", "0", "+", "⊥"],
        &[],
        |v| match v.signum() {
            -1 => "-",
            0 => "0",
            _ => "+",
        },
        |b, v| match b {
            "-" => v < 0,
            "0" => v == 0,
            "+" => v > 0,
            _ => false,
        },
    )?;
    Ok(c.with_provenance("builtin:sign_cgc"))
}

const SIGN: [&str; 8] = ["∅", "<0", "=0", ">0", "≤0", "≠0", "≥0", "ℤ"];
const SIGN_HASSE: [(&str, &str); 12] = [
    ("∅", "<0"),
    ("∅", "=0"),
    ("∅", ">0"),
    ("<0", "≤0"),
    ("<0", "≠0"),
    ("=0", "≤0"),
    ("=0", "≥0"),
    (">0", "≠0"),
    (">0", "≥0"),
    ("≤0", "ℤ"),
    ("≠0", "ℤ"),
    ("≥0", "ℤ"),
];

fn sign_pred(b: &str, v: i64) -> bool {
    match b {
        "∅" => false,
        "<0" => v < 0,
        "=0" => v == 0,
        ">0" => v > 0,
        "≤0" => v <= 0,
        "≠0" => v != 0,
        "≥0" => v >= 0,
        _ => true,
    }
}

fn sign_of(v: i64) -> &'static str {
    match v.signum() {
        -1 => "<0",
        0 => "=0",
        _ => ">0",
    }
}

/// The eight-element sign lattice.
pub fn sign_lattice() -> Lattice {
    Lattice::new(build_poset(&SIGN, &SIGN_HASSE).expect("sign order")).expect("sign lattice")
}

fn sign_like(n: i64, drop_neq: bool) -> Result<SetGc, CatalogError> {
    let carrier = Carrier::saturating(n)?;
    let names: Vec<&str> = SIGN.iter().copied().filter(|b| !drop_neq || *b != "≠0").collect();
    let hasse: Vec<(&str, &str)> = SIGN_HASSE
        .iter()
        .copied()
        .filter(|(x, _)| !drop_neq || *x != "≠0")
        .chain(drop_neq.then_some([("<0", "ℤ"), (">0", "ℤ")]).into_iter().flatten())
        .filter(|(_, y)| !drop_neq || *y != "≠0")
        .collect();
    let abs = Lattice::new(build_poset(&names, &hasse)?)?;
    let pt = (0..carrier.len()).map(|i| abs.index_of(sign_of(carrier.int(i).expect("int"))).expect("sign")).collect();
    let gamma = names.iter().map(|b| carrier.ints_where(|v| sign_pred(b, v))).collect();
    Ok(SetGc::new(carrier, None, abs, Alpha::Join(pt), gamma)?)
}

/// The sign GI `⟨α, ℘(ℤ), Sign, γ⟩` over `[-N, N]`.
pub fn sign_pgi(n: i64) -> Result<SetGc, CatalogError> {
    check_bound(Builtin::SignPgi, n)?;
    Ok(sign_like(n, false)?.with_provenance("builtin:sign_pgi"))
}

/// Sign without `≠0`: still a partition, but γ is no longer additive.
pub fn sign_minus_ppgc(n: i64) -> Result<SetGc, CatalogError> {
    check_bound(Builtin::SignMinusPpgc, n)?;
    Ok(sign_like(n, true)?.with_provenance("builtin:sign_minus_ppgc"))
}

/// An interval given by optional inclusive ends; `None` is unbounded.
#[derive(Clone, Copy)]
struct Iv(Option<i64>, Option<i64>);

impl Iv {
    const EMPTY: Iv = Iv(Some(1), Some(0));

    fn contains(self, v: i64) -> bool {
        self.0.is_none_or(|lo| lo <= v) && self.1.is_none_or(|hi| v <= hi)
    }
}

fn intervals(carrier: &Carrier, spec: &[(&str, Iv)]) -> Vec<Subset> {
    spec.iter().map(|(_, iv)| carrier.ints_where(|v| iv.contains(v))).collect()
}

const D_SPEC: [(&str, Iv); 6] = [
    ("∅", Iv::EMPTY),
    ("[-5,-1]", Iv(Some(-5), Some(-1))),
    ("[1,5]", Iv(Some(1), Some(5))),
    ("[-7,7]", Iv(Some(-7), Some(7))),
    ("[-9,+∞)", Iv(Some(-9), None)),
    ("ℤ", Iv(None, None)),
];

/// The six-element interval GI: neither partitioning nor disjunctive.
pub fn interval_gi_d(n: i64) -> Result<SetGc, CatalogError> {
    check_bound(Builtin::IntervalGiD, n)?;
    let carrier = Carrier::saturating(n)?;
    let names: Vec<&str> = D_SPEC.iter().map(|(s, _)| *s).collect();
    let hasse = [("∅", "[-5,-1]"), ("∅", "[1,5]"), ("[-5,-1]", "[-7,7]"), ("[1,5]", "[-7,7]"), ("[-7,7]", "[-9,+∞)"), ("[-9,+∞)", "ℤ")];
    let abs = Lattice::new(build_poset(&names, &hasse)?)?;
    let gamma = intervals(&carrier, &D_SPEC);
    // Least interval containing the point.
    let pt = (0..carrier.len())
        .map(|a| (0..abs.len()).filter(|&d| gamma[d].contains(a)).min_by_key(|&d| gamma[d].len()).expect("ℤ covers"))
        .collect();
    Ok(SetGc::new(carrier, None, abs, Alpha::Join(pt), gamma)?.with_provenance("builtin:interval_gi_d"))
}

const BLOCKS: [(&str, Iv); 5] = [
    ("(-∞,-10]", Iv(None, Some(-10))),
    ("[-9,-1]", Iv(Some(-9), Some(-1))),
    ("[0,0]", Iv(Some(0), Some(0))),
    ("[1,9]", Iv(Some(1), Some(9))),
    ("[10,+∞)", Iv(Some(10), None)),
];

fn interval_blocks(n: i64, extra: &[(&'static str, Iv)], extra_hasse: &[(&str, &str)], name: &str) -> Result<Constructive, CatalogError> {
    let carrier = Carrier::saturating(n)?;
    let mut spec: Vec<(&str, Iv)> = vec![("∅", Iv::EMPTY)];
    spec.extend(BLOCKS);
    spec.extend_from_slice(extra);
    let names: Vec<&str> = spec.iter().map(|(s, _)| *s).collect();
    let mut hasse: Vec<(&str, &str)> = BLOCKS.iter().map(|(b, _)| ("∅", *b)).collect();
    hasse.extend_from_slice(extra_hasse);
    let abs = Abstract::from_poset(build_poset(&names, &hasse)?);
    let mu = intervals(&carrier, &spec);
    let eta = (0..carrier.len()).map(|a| (1..=BLOCKS.len()).find(|&b| mu[b].contains(a)).expect("blocks cover")).collect();
    let c = Constructive::new(Kind::Pcgc, carrier, None, abs, eta, mu)?;
    Ok(c.with_provenance(format!("builtin:{name}")))
}

/// Five interval blocks plus three selected unions: a PCGC that is not a CGC.
pub fn interval_pcgc(n: i64) -> Result<Constructive, CatalogError> {
    check_bound(Builtin::IntervalPcgc, n)?;
    interval_blocks(
        n,
        &[("[-9,9]", Iv(Some(-9), Some(9))), ("(-∞,9]", Iv(None, Some(9))), ("[-9,+∞)", Iv(Some(-9), None)), ("ℤ", Iv(None, None))],
        &[
            ("[-9,-1]", "[-9,9]"),
            ("[0,0]", "[-9,9]"),
            ("[1,9]", "[-9,9]"),
            ("(-∞,-10]", "(-∞,9]"),
            ("[-9,9]", "(-∞,9]"),
            ("[-9,9]", "[-9,+∞)"),
            ("[10,+∞)", "[-9,+∞)"),
            ("(-∞,9]", "ℤ"),
            ("[-9,+∞)", "ℤ"),
        ],
        "interval_pcgc",
    )
}

/// The variant with `[-10,10]`, which cuts through two blocks and so breaks
/// condition (2).
pub fn interval_bprime(n: i64) -> Result<Constructive, CatalogError> {
    check_bound(Builtin::IntervalBprime, n)?;
    interval_blocks(
        n,
        &[("[-10,10]", Iv(Some(-10), Some(10))), ("ℤ", Iv(None, None))],
        &[
            ("[-9,-1]", "[-10,10]"),
            ("[0,0]", "[-10,10]"),
            ("[1,9]", "[-10,10]"),
            ("[-10,10]", "ℤ"),
            ("(-∞,-10]", "ℤ"),
            ("[10,+∞)", "ℤ"),
        ],
        "interval_bprime",
    )
}

const SIGNCONST_TAIL: [&str; 6] = [">0", "<0", "≥0", "≤0", "≠0", "ℤ"];

/// Constants over `[-N, N]` combined with signs, with identity-like η.
pub fn signconst_pcgc(n: i64) -> Result<Constructive, CatalogError> {
    check_bound(Builtin::SignconstPcgc, n)?;
    let carrier = Carrier::saturating(n)?;
    let mut names: Vec<String> = vec!["∅".into()];
    names.extend(carrier.names().iter().cloned());
    names.extend(SIGNCONST_TAIL.map(String::from));
    let mut hasse: Vec<(String, String)> = Vec::new();
    let edge = |x: &str, y: &str| (x.to_string(), y.to_string());
    for (i, c) in carrier.names().iter().enumerate() {
        hasse.push(edge("∅", c));
        match carrier.int(i).expect("int").signum() {
            1 => hasse.push(edge(c, ">0")),
            -1 => hasse.push(edge(c, "<0")),
            _ => {
                hasse.push(edge(c, "≥0"));
                hasse.push(edge(c, "≤0"));
            }
        }
    }
    for (x, y) in [(">0", "≥0"), (">0", "≠0"), ("<0", "≤0"), ("<0", "≠0"), ("≥0", "ℤ"), ("≤0", "ℤ"), ("≠0", "ℤ")] {
        hasse.push(edge(x, y));
    }
    let abs = Abstract::from_poset(build_poset(&names, &hasse)?);
    let eta = (0..carrier.len()).map(|a| a + 1).collect();
    let mut mu: Vec<Subset> = vec![carrier.empty()];
    mu.extend((0..carrier.len()).map(|a| Subset::singleton(carrier.len(), a)));
    mu.extend(SIGNCONST_TAIL.iter().map(|b| carrier.ints_where(|v| sign_pred(b, v))));
    let c = Constructive::new(Kind::Pcgc, carrier, None, abs, eta, mu)?;
    Ok(c.with_provenance("builtin:signconst_pcgc"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{check_cgc, check_cgp, check_gc, check_pcgc, classify_partitioning, prt, Class};

    #[test]
    fn every_builtin_builds_at_its_minimum_bound() {
        for b in Builtin::ALL {
            b.build(b.min_bound()).unwrap();
            let err = b.build(b.min_bound() - 1).unwrap_err();
            assert!(matches!(err, CatalogError::BoundTooSmall { .. }), "{b}");
        }
        assert!(matches!(builtin("nope", 8), Err(CatalogError::UnknownName(_))));
    }

    #[test]
    fn positive_builtins_pass_their_checkers() {
        for b in Builtin::ALL.into_iter().filter(|b| !b.is_negative()) {
            let c = b.build(16).unwrap();
            assert_eq!(c.verify(), Ok(()), "{b}");
        }
    }

    #[test]
    fn plustop_is_cgp_not_cgc() {
        let c = plustop_cgp(8).unwrap();
        assert_eq!(check_cgp(&c), Ok(()));
        assert!(check_cgc(&c).is_err());
    }

    #[test]
    fn signconst_witness() {
        let c = signconst_pcgc(DEFAULT_BOUND).unwrap();
        assert!(check_pcgc(&c).ok());
        assert_eq!(check_cgc(&c).unwrap_err().at, ["1", ">0"]);
        assert_eq!(c.lattice().unwrap().height(), 4);
    }

    #[test]
    fn sign_gi_is_pgc_with_three_blocks() {
        let g = sign_pgi(DEFAULT_BOUND).unwrap();
        let r = check_gc(&g);
        assert!(r.is_gc() && r.is_gi() && r.is_disjunctive());
        assert_eq!(classify_partitioning(&g).unwrap().class, Class::Pgc);
        let blocks = prt(&g).unwrap();
        assert_eq!(blocks.len(), 3);
        let c = g.carrier();
        let mut rendered: Vec<String> = blocks.iter().map(|b| c.fmt_set(b)).collect();
        rendered.sort_by_key(String::len);
        assert_eq!(rendered[0], "{0}");
    }

    #[test]
    fn interval_d_is_gi_but_not_disjunctive() {
        let g = interval_gi_d(16).unwrap();
        let r = check_gc(&g);
        assert!(r.is_gc() && r.is_gi() && !r.is_disjunctive(), "{r:?}");
    }
}
