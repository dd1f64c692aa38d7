//! Transforms between connection classes.
//!
//! Each transform re-runs the checker of its target class on the output
//! and fails closed with [`GaloisError::BrokenTransform`].

use std::collections::HashMap;

use crate::galois::{
    check_cgc, check_cgp, check_gc, check_pcgc, classify_partitioning, Abstract, Alpha, Class, ClosureOp, Constructive,
    GaloisError, Kind, SetGc, Witness,
};
use crate::order::{join_irreducibles, meet_closure, Lattice, Poset};
use crate::setops::{lift_star, Subset};

fn broken(transform: &'static str, class: &'static str) -> impl FnOnce(Witness) -> GaloisError {
    move |witness| GaloisError::BrokenTransform { transform, class, witness }
}

fn not_in(class: &'static str) -> impl FnOnce(Witness) -> GaloisError {
    move |witness| GaloisError::NotInClass { class, witness }
}

fn require_class(g: &SetGc, allowed: &[Class], class: &'static str) -> Result<Class, GaloisError> {
    let p = classify_partitioning(g)?;
    if allowed.contains(&p.class) {
        return Ok(p.class);
    }
    let witness = match (p.partition, p.additive) {
        (Err(v), _) => Witness::new(Vec::<String>::new(), v.describe(g.carrier().names())),
        (_, Err(w)) => w,
        _ => Witness::new(Vec::<String>::new(), format!("classified as {}", p.class)),
    };
    Err(GaloisError::NotInClass { class, witness })
}

fn require_lattice(c: &Constructive) -> Result<&Lattice, GaloisError> {
    match c.abs() {
        Abstract::Lattice(l) => Ok(l),
        Abstract::Poset(p) => Err(GaloisError::NotCompleteLattice(Lattice::new(p.clone()).expect_err("not a lattice"))),
    }
}

/// `⟨η⋄, ℘(A), ℘(B), μ*⟩`. Element `i` of `℘(B)` is the set with bitmask `i`.
pub fn t_pgc(c: &Constructive) -> Result<SetGc, GaloisError> {
    check_cgc(c).map_err(not_in("CGC"))?;
    let abs = Lattice::powerset(c.abs_poset().names())?;
    let m = c.abs_len();
    let n = c.carrier().len();
    let gamma = (0..abs.len())
        .map(|mask| lift_star(c.mu(), n, &Subset::from_indices(m, (0..m).filter(|b| mask >> b & 1 == 1))))
        .collect();
    let pt = c.eta().iter().map(|&b| 1usize << b).collect();
    let g = SetGc::new(c.carrier().clone(), None, abs, Alpha::Join(pt), gamma)?.inherit(c.provenance(), "t_pgc");
    let report = check_gc(&g);
    report.adjunction.clone().map_err(broken("t_pgc", "GC"))?;
    let p = classify_partitioning(&g)?;
    p.partition.map_err(|v| GaloisError::BrokenTransform {
        transform: "t_pgc",
        class: "PGC",
        witness: Witness::new(Vec::<String>::new(), v.describe(c.carrier().names())),
    })?;
    p.additive.map_err(broken("t_pgc", "PGC"))?;
    Ok(g)
}

/// `⟨⟨α⟩, A, {α({a}) | a ∈ A}, γ⟩` with `B` listed in order of first
/// occurrence and named as in `D`.
pub fn t_cgc_of_pgc(g: &SetGc) -> Result<Constructive, GaloisError> {
    require_class(g, &[Class::Pgc], "PGC")?;
    let mut values: Vec<usize> = Vec::new();
    let mut pos: HashMap<usize, usize> = HashMap::new();
    let eta = (0..g.carrier().len())
        .map(|a| {
            let d = g.alpha_point(a);
            *pos.entry(d).or_insert_with(|| {
                values.push(d);
                values.len() - 1
            })
        })
        .collect();
    let names: Vec<&str> = values.iter().map(|&d| g.d(d)).collect();
    let abs = Abstract::from_poset(Poset::discrete(&names)?);
    let mu = values.iter().map(|&d| g.gamma(d).clone()).collect();
    let c = Constructive::new(Kind::Cgc, g.carrier().clone(), None, abs, eta, mu)?.inherit(g.provenance(), "t_cgc_of_pgc");
    check_cgc(&c).map_err(broken("t_cgc_of_pgc", "CGC"))?;
    Ok(c)
}

/// `μ∘η`.
pub fn t_cco(c: &Constructive) -> Result<ClosureOp, GaloisError> {
    check_cgc(c).map_err(not_in("CGC"))?;
    let phi = c.eta().iter().map(|&b| c.mu_at(b).clone()).collect();
    let p = ClosureOp::new(c.carrier().clone(), phi).map_err(|e| match e {
        GaloisError::NotInClass { witness, .. } => broken("t_cco", "CCO")(witness),
        other => other,
    })?;
    Ok(p.inherit(c.provenance(), "t_cco"))
}

/// `⟨φ, A, {φ(a) | a ∈ A}, id⟩`; each block is named `[m]` after its least
/// member `m`.
pub fn t_cgc_of_cco(p: &ClosureOp) -> Result<Constructive, GaloisError> {
    crate::galois::check_cco(p.carrier(), p.phi()).map_err(not_in("CCO"))?;
    let carrier = p.carrier();
    let rank: Vec<usize> = {
        let mut r = vec![0; carrier.len()];
        for (k, a) in carrier.display_order().into_iter().enumerate() {
            r[a] = k;
        }
        r
    };
    let mut blocks: Vec<Subset> = Vec::new();
    let eta = p
        .phi()
        .iter()
        .map(|s| match blocks.iter().position(|b| b == s) {
            Some(i) => i,
            None => {
                blocks.push(s.clone());
                blocks.len() - 1
            }
        })
        .collect();
    let names: Vec<String> = blocks
        .iter()
        .map(|b| format!("[{}]", carrier.name(b.iter().min_by_key(|&a| rank[a]).expect("blocks are nonempty"))))
        .collect();
    let abs = Abstract::from_poset(Poset::discrete(&names)?);
    let c = Constructive::new(Kind::Cgc, carrier.clone(), None, abs, eta, blocks)?.inherit(p.provenance(), "t_cgc_of_cco");
    check_cgc(&c).map_err(broken("t_cgc_of_cco", "CGC"))?;
    Ok(c)
}

/// `⟨η∨, ℘↓(A), B, μ⟩`.
pub fn t_gc(c: &Constructive) -> Result<SetGc, GaloisError> {
    check_cgp(c).map_err(not_in("CGP"))?;
    let l = require_lattice(c)?.clone();
    let g = SetGc::new(c.carrier().clone(), Some(c.carrier_order().clone()), l, Alpha::Join(c.eta().to_vec()), c.mu().to_vec())?
        .inherit(c.provenance(), "t_gc");
    check_gc(&g).adjunction.map_err(broken("t_gc", "GC"))?;
    Ok(g)
}

/// `⟨λa.α(↓a), A, D, γ⟩`.
pub fn t_cgp(g: &SetGc) -> Result<Constructive, GaloisError> {
    check_gc(g).adjunction.map_err(not_in("GC"))?;
    let eta = (0..g.carrier().len()).map(|a| g.alpha_point(a)).collect();
    let c = Constructive::new(
        Kind::Cgp,
        g.carrier().clone(),
        Some(g.carrier_order().clone()),
        Abstract::Lattice(g.abs().clone()),
        eta,
        g.gammas().to_vec(),
    )?
    .inherit(g.provenance(), "t_cgp");
    check_cgp(&c).map_err(broken("t_cgp", "CGP"))?;
    Ok(c)
}

/// `⟨η∨, ℘(A), B, μ⟩`.
pub fn t_ppgc(c: &Constructive) -> Result<SetGc, GaloisError> {
    check_pcgc(c).outcome().map_err(not_in("PCGC"))?;
    let l = require_lattice(c)?.clone();
    let g = SetGc::new(c.carrier().clone(), None, l, Alpha::Join(c.eta().to_vec()), c.mu().to_vec())?.inherit(c.provenance(), "t_ppgc");
    check_gc(&g).adjunction.map_err(broken("t_ppgc", "GC"))?;
    require_class(&g, &[Class::Pgc, Class::Ppgc], "PPGC").map_err(|e| match e {
        GaloisError::NotInClass { witness, .. } => broken("t_ppgc", "PPGC")(witness),
        other => other,
    })?;
    Ok(g)
}

/// `⟨α^{·}, A, D, γ⟩` where `α^{·}(a) = α({a})`.
pub fn t_pcgc(g: &SetGc) -> Result<Constructive, GaloisError> {
    require_class(g, &[Class::Pgc, Class::Ppgc], "PPGC")?;
    let eta = (0..g.carrier().len()).map(|a| g.alpha_point(a)).collect();
    let c = Constructive::new(Kind::Pcgc, g.carrier().clone(), None, Abstract::Lattice(g.abs().clone()), eta, g.gammas().to_vec())?
        .inherit(g.provenance(), "t_pcgc");
    check_pcgc(&c).outcome().map_err(broken("t_pcgc", "PCGC"))?;
    Ok(c)
}

/// The meet-closure of the join-irreducibles of the abstract lattice.
pub fn least_disjunctive_basis(g: &SetGc) -> Result<Subset, GaloisError> {
    require_class(g, &[Class::Pgc], "PGC")?;
    Ok(meet_closure(g.abs(), &join_irreducibles(g.abs())))
}

/// Closes the γ-image under unions. The result has every union of blocks
/// as an abstract value; values already present keep their names.
pub fn disjunctive_completion(g: &SetGc) -> Result<SetGc, GaloisError> {
    require_class(g, &[Class::Pgc, Class::Ppgc], "PPGC")?;
    let n = g.carrier().len();
    let mut blocks: Vec<(Subset, usize)> = Vec::new();
    for a in 0..n {
        let d = g.alpha_point(a);
        if !blocks.iter().any(|(_, e)| *e == d) {
            blocks.push((g.gamma(d).clone(), d));
        }
    }
    let k = blocks.len();
    if k > 16 {
        return Err(GaloisError::ShapeMismatch(format!("{k} blocks have too many unions")));
    }
    let mut sets: Vec<Subset> = Vec::with_capacity(1 << k);
    let mut names: Vec<String> = Vec::with_capacity(1 << k);
    for mask in 0..1usize << k {
        let members: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).collect();
        let mut s = Subset::empty(n);
        members.iter().for_each(|&b| s.union_with(&blocks[b].0));
        let name = match (0..g.abs().len()).find(|&d| g.gamma(d) == &s) {
            Some(d) => g.d(d).to_string(),
            None if members.is_empty() => "∅".to_string(),
            None => members.iter().map(|&b| g.d(blocks[b].1)).collect::<Vec<_>>().join("∪"),
        };
        sets.push(s);
        names.push(name);
    }
    let abs = Lattice::family(names, sets)?;
    let pt = (0..n)
        .map(|a| {
            let b = blocks.iter().position(|(_, e)| *e == g.alpha_point(a)).expect("block of a");
            1usize << b
        })
        .collect();
    let gamma = abs.poset().sets().expect("set family").to_vec();
    let out = SetGc::new(g.carrier().clone(), None, abs, Alpha::Join(pt), gamma)?.inherit(g.provenance(), "disjunctive_completion");
    let p = classify_partitioning(&out)?;
    p.additive.map_err(broken("disjunctive_completion", "PGC"))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::galois::{nonempty_iso, precision_cmp_gc, Precision};

    #[test]
    fn parity_round_trips() {
        let p = catalog::parity(4).unwrap();
        let g = t_pgc(&p).unwrap();
        assert_eq!(g.abs().len(), 4);
        assert!(nonempty_iso(&t_cgc_of_pgc(&g).unwrap(), &p).unwrap());
        let phi = t_cco(&p).unwrap();
        let one = p.carrier().index_of_int(1).unwrap();
        assert_eq!(p.carrier().fmt_set(&phi.phi()[one]), "{-3,-1,1,3}");
        assert!(nonempty_iso(&t_cgc_of_cco(&phi).unwrap(), &p).unwrap());
    }

    #[test]
    fn least_basis_of_parity_adds_bottom_and_top() {
        let g = t_pgc(&catalog::parity(4).unwrap()).unwrap();
        let basis = least_disjunctive_basis(&g).unwrap();
        let names: Vec<&str> = basis.iter().map(|d| g.d(d)).collect();
        assert_eq!(names, ["{}", "{even}", "{odd}", "{even,odd}"]);
    }

    #[test]
    fn sign_minus_completes_to_sign() {
        let minus = catalog::sign_minus_ppgc(8).unwrap();
        let full = catalog::sign_pgi(8).unwrap();
        let done = disjunctive_completion(&minus).unwrap();
        assert_eq!(precision_cmp_gc(&done, &full).unwrap(), Precision::Isomorphic);
        assert_eq!(precision_cmp_gc(&done, &minus).unwrap(), Precision::StrictlyFiner);
        assert!(done.abs().index_of(">0∪<0").is_some());
    }

    #[test]
    fn interval_pcgc_to_ppgc() {
        let c = catalog::interval_pcgc(16).unwrap();
        let g = t_ppgc(&c).unwrap();
        assert_eq!(classify_partitioning(&g).unwrap().class, Class::Ppgc);
        let car = c.carrier();
        let x = Subset::from_indices(car.len(), [car.index_of_int(1).unwrap(), car.index_of_int(10).unwrap()]);
        assert_eq!(g.d(g.alpha(&x)), "[-9,+∞)");
        let done = disjunctive_completion(&g).unwrap();
        assert_eq!(done.abs().len(), 32);
    }

    #[test]
    fn interval_gi_to_cgp() {
        let g = catalog::interval_gi_d(16).unwrap();
        let c = t_cgp(&g).unwrap();
        let car = c.carrier();
        assert_eq!(c.b(c.eta_at(car.index_of_int(2).unwrap())), "[1,5]");
        assert_eq!(c.b(c.eta_at(car.index_of_int(-10).unwrap())), "ℤ");
        assert!(matches!(t_pgc(&catalog::plustop_cgp(4).unwrap()), Err(GaloisError::NotInClass { .. })));
    }
}
