//! Executable statements of the lemmas and theorems relating the classes.
//!
//! Each check returns `Ok(())` when the statement holds on the given
//! instance and a witness otherwise. Errors are reserved for inputs that
//! fall outside the statement's hypotheses.

use crate::functions::{
    cgc_completeness, cgc_soundness, gc_pair_property, is_block_preserving, pair_iso, pair_to_cgc, pair_to_pgc,
    pcgc_sound, restrict_to_blocks, AbstractFn, ConcreteFn, FunctionError, GcPair, GcProperty, Universe, Variant,
};
use crate::galois::{
    check_cgc, check_gc, classify_partitioning, nonempty_iso, precision_cmp_cgc, precision_cmp_gc, renaming_witnesses,
    Alpha, Class, Constructive, GaloisError, Outcome, Precision, SetGc, Witness,
};
use crate::setops::{check_partition, Subset};
use crate::transforms::{t_cco, t_cgc_of_cco, t_cgc_of_pgc, t_cgp, t_gc, t_pcgc, t_pgc, t_ppgc};

fn fail(at: impl IntoIterator<Item = String>, chain: impl Into<String>) -> Outcome {
    Err(Witness::new(at, chain))
}

fn lub_gc(c: &Constructive) -> Option<SetGc> {
    let l = c.lattice()?.clone();
    SetGc::new(c.carrier().clone(), Some(c.carrier_order().clone()), l, Alpha::Join(c.eta().to_vec()), c.mu().to_vec()).ok()
}

fn extensive(c: &Constructive) -> Outcome {
    for a in 0..c.carrier().len() {
        if !c.mu_at(c.eta_at(a)).contains(a) {
            return fail([c.a(a).to_string()], format!("{} ∉ μ(η({}))", c.a(a), c.a(a)));
        }
    }
    Ok(())
}

/// The three-way partition law on η-images, shared by CGCs and PCGCs.
fn partition_law(c: &Constructive) -> Outcome {
    let n = c.carrier().len();
    for a1 in 0..n {
        for a2 in 0..n {
            let (m1, m2) = (c.mu_at(c.eta_at(a1)), c.mu_at(c.eta_at(a2)));
            let same_eta = c.eta_at(a1) == c.eta_at(a2);
            let same_mu = m1 == m2;
            let meet = !m1.is_disjoint(m2);
            if same_eta != same_mu || same_mu != meet {
                let chain = format!("η equal: {same_eta}, μ∘η equal: {same_mu}, μ∘η intersect: {meet}");
                return fail([c.a(a1).to_string(), c.a(a2).to_string()], chain);
            }
        }
    }
    let blocks: Vec<Subset> = crate::setops::dedup_family((0..n).map(|a| c.mu_at(c.eta_at(a)).clone()));
    check_partition(n, &blocks).map_err(|v| Witness::new(Vec::<String>::new(), v.describe(c.carrier().names())))
}

/// Partition law, `μ(b) = ∅ ⇔ b ∉ η(A)`, and `a ∈ μ(η(a))`.
pub fn cgc_properties(c: &Constructive) -> Outcome {
    extensive(c)?;
    partition_law(c)?;
    let image = c.eta_image();
    for b in 0..c.abs_len() {
        if c.mu_at(b).is_empty() == image.contains(b) {
            return fail([c.b(b).to_string()], format!("μ({}) empty: {}, in η(A): {}", c.b(b), c.mu_at(b).is_empty(), image.contains(b)));
        }
    }
    Ok(())
}

/// `η(a1) = η(a2) ⇔ μ(η(a1)) = μ(η(a2))`, `μ(b) = ∅ ⇔ ↓b ∩ η(A) = ∅`,
/// the lub connection is a GC, and `μ(η∨(μ(b))) = μ(b)`.
pub fn cgp_properties(c: &Constructive) -> Outcome {
    extensive(c)?;
    let n = c.carrier().len();
    for a1 in 0..n {
        for a2 in 0..n {
            let same_eta = c.eta_at(a1) == c.eta_at(a2);
            let same_mu = c.mu_at(c.eta_at(a1)) == c.mu_at(c.eta_at(a2));
            if same_eta != same_mu {
                return fail([c.a(a1).to_string(), c.a(a2).to_string()], format!("η equal: {same_eta}, μ∘η equal: {same_mu}"));
            }
        }
    }
    let image = c.eta_image();
    let p = c.abs_poset();
    for b in 0..c.abs_len() {
        let hits = p.down(b).iter().any(|y| image.contains(y));
        if c.mu_at(b).is_empty() == hits {
            return fail([c.b(b).to_string()], format!("μ({}) empty: {} but ↓{} meets η(A): {hits}", c.b(b), c.mu_at(b).is_empty(), c.b(b)));
        }
    }
    if let Some(l) = c.lattice() {
        let g = lub_gc(c).expect("shapes agree");
        check_gc(&g).adjunction.map_err(|w| w.context("lub connection"))?;
        for b in 0..c.abs_len() {
            let back = l.join_all(c.mu_at(b).iter().map(|a| c.eta_at(a)));
            if c.mu_at(back) != c.mu_at(b) {
                return fail([c.b(b).to_string()], format!("μ(η∨(μ({}))) = μ({}) ≠ μ({})", c.b(b), c.b(back), c.b(b)));
            }
        }
    }
    Ok(())
}

/// Partition law, `μ(b) = ∅ ⇒ b ∉ η(A)`, and the lub connection over
/// `℘(A)` is a GC.
pub fn pcgc_properties(c: &Constructive) -> Outcome {
    extensive(c)?;
    partition_law(c)?;
    let image = c.eta_image();
    for b in 0..c.abs_len() {
        if c.mu_at(b).is_empty() && image.contains(b) {
            return fail([c.b(b).to_string()], format!("μ({}) = ∅ but {} ∈ η(A)", c.b(b), c.b(b)));
        }
    }
    if c.lattice().is_some() {
        check_gc(&lub_gc(c).expect("shapes agree")).adjunction.map_err(|w| w.context("lub connection"))?;
    }
    Ok(())
}

/// An abstract value outside `η(A)` with nonempty concretization.
pub fn pcgc_converse_witness(c: &Constructive) -> Option<String> {
    let image = c.eta_image();
    (0..c.abs_len()).find(|&b| !image.contains(b) && !c.mu_at(b).is_empty()).map(|b| c.b(b).to_string())
}

/// Isomorphic CGCs are exactly those with renaming witnesses.
pub fn cgc_isomorphism(c1: &Constructive, c2: &Constructive) -> Result<Outcome, GaloisError> {
    let iso = precision_cmp_cgc(c1, c2)? == Precision::Isomorphic;
    let ne = nonempty_iso(c1, c2)?;
    let witnessed = renaming_witnesses(c1, c2).is_ok();
    if iso == ne && ne == witnessed {
        Ok(Ok(()))
    } else {
        Ok(fail(Vec::new(), format!("isomorphic: {iso}, nonempty-isomorphic: {ne}, renaming found: {witnessed}")))
    }
}

/// For a block-preserving `g♯` sound with `g⋄`: `g♯(α({a})) = α({g(a)})`
/// and `g⋄(γ(α({a}))) ⊆ γ(α({g(a)}))`.
pub fn lemma_one(g: &SetGc, gf: &ConcreteFn, gs: &AbstractFn) -> Result<Outcome, FunctionError> {
    if is_block_preserving(g, gs)?.is_err() {
        return Ok(Ok(()));
    }
    let u = Universe::over(g.carrier_order(), 1, 0);
    if gc_pair_property(g, &GcPair::lifted(gf, gs.clone()), GcProperty::Sound, &u)?.is_err() {
        return Ok(Ok(()));
    }
    let c = g.carrier();
    for a in 0..c.len() {
        let d = g.alpha_point(a);
        let target = g.alpha_point(gf.get(&[a]));
        if gs.get(&[d]) != target {
            let chain = format!("g♯(α({{{}}})) = {} ≠ α({{g({})}}) = {}", c.name(a), g.d(gs.get(&[d])), c.name(a), g.d(target));
            return Ok(fail([c.name(a).to_string()], chain));
        }
        let image = gf.apply_set(&[g.gamma(d)]);
        if !image.is_subset(g.gamma(target)) {
            return Ok(fail([c.name(a).to_string()], format!("g⋄(γ(α({{{}}}))) ⊄ γ(α({{g(a)}}))", c.name(a))));
        }
    }
    Ok(Ok(()))
}

// === Equivalence theorems ===

/// The powerset transform yields a PGC and its round trip is
/// nonempty-isomorphic to the input.
pub fn teo_pgc(c: &Constructive) -> Result<Outcome, GaloisError> {
    let g = t_pgc(c)?;
    let class = classify_partitioning(&g)?.class;
    if class != Class::Pgc {
        return Ok(fail(Vec::new(), format!("t_pgc classified as {class}")));
    }
    let back = t_cgc_of_pgc(&g)?;
    if !nonempty_iso(&back, c)? {
        return Ok(fail(Vec::new(), "t_cgc_of_pgc(t_pgc(C)) is not nonempty-isomorphic to C"));
    }
    Ok(Ok(()))
}

/// `t_pgc(t_cgc_of_pgc(G))` is isomorphic to a PGC `G`.
pub fn teo_pgc_gc(g: &SetGc) -> Result<Outcome, GaloisError> {
    let back = t_pgc(&t_cgc_of_pgc(g)?)?;
    let p = precision_cmp_gc(&back, g)?;
    Ok(if p == Precision::Isomorphic { Ok(()) } else { fail(Vec::new(), format!("round trip is {p:?}")) })
}

/// CGC precision agrees with GC precision of the powerset transforms.
pub fn coro_pgc(c1: &Constructive, c2: &Constructive) -> Result<Outcome, GaloisError> {
    let lhs = precision_cmp_cgc(c1, c2)?;
    let rhs = precision_cmp_gc(&t_pgc(c1)?, &t_pgc(c2)?)?;
    Ok(if lhs == rhs { Ok(()) } else { fail(Vec::new(), format!("CGC order says {lhs:?}, GC order says {rhs:?}")) })
}

/// The closure-operator transforms are inverse up to nonempty isomorphism.
pub fn teo_cco(c: &Constructive) -> Result<Outcome, GaloisError> {
    let phi = t_cco(c)?;
    let back = t_cgc_of_cco(&phi)?;
    if !nonempty_iso(&back, c)? {
        return Ok(fail(Vec::new(), "t_cgc_of_cco(t_cco(C)) is not nonempty-isomorphic to C"));
    }
    if t_cco(&back)?.phi() != phi.phi() {
        return Ok(fail(Vec::new(), "t_cco(t_cgc_of_cco(φ)) ≠ φ"));
    }
    Ok(Ok(()))
}

fn same_constructive(a: &Constructive, b: &Constructive) -> Outcome {
    let pa = a.abs_poset();
    let pb = b.abs_poset();
    let same_order = pa.names() == pb.names() && (0..pa.len()).all(|i| (0..pa.len()).all(|j| pa.leq(i, j) == pb.leq(i, j)));
    if !same_order {
        return fail(Vec::new(), "abstract orders differ");
    }
    if a.eta() != b.eta() {
        return fail(Vec::new(), "η differs");
    }
    if a.mu() != b.mu() {
        return fail(Vec::new(), "μ differs");
    }
    Ok(())
}

fn same_gc(a: &SetGc, b: &SetGc) -> Outcome {
    if a.abs().names() != b.abs().names() || a.gammas() != b.gammas() {
        return fail(Vec::new(), "concretizations differ");
    }
    if (0..a.carrier().len()).any(|x| a.alpha_point(x) != b.alpha_point(x)) {
        return fail(Vec::new(), "abstractions differ on points");
    }
    Ok(())
}

/// `t_cgp(t_gc(C)) = C` for a CGP with a lattice.
pub fn teo_cgp(c: &Constructive) -> Result<Outcome, GaloisError> {
    Ok(same_constructive(&t_cgp(&t_gc(c)?)?, c))
}

/// `t_cgp(G)` is a CGP and `t_gc(t_cgp(G))` is `G` up to representation.
pub fn teo_cgp_gc(g: &SetGc) -> Result<Outcome, GaloisError> {
    Ok(same_gc(&t_gc(&t_cgp(g)?)?, g))
}

/// `t_pcgc(t_ppgc(C)) = C` for a PCGC with a lattice.
pub fn teo_pcgc(c: &Constructive) -> Result<Outcome, GaloisError> {
    Ok(same_constructive(&t_pcgc(&t_ppgc(c)?)?, c))
}

/// `t_ppgc(t_pcgc(G))` is `G` up to representation.
pub fn teo_pcgc_gc(g: &SetGc) -> Result<Outcome, GaloisError> {
    Ok(same_gc(&t_ppgc(&t_pcgc(g)?)?, g))
}

// === Soundness transfer ===

fn agree(what: &str, left: bool, right: bool) -> Outcome {
    if left == right {
        Ok(())
    } else {
        fail(Vec::new(), format!("{what}: CGC side {left}, GC side {right}"))
    }
}

fn pgc_universe(c: &Constructive, arity: usize) -> Result<Universe, FunctionError> {
    Ok(Universe::over(&crate::order::Poset::discrete(c.carrier().names())?, arity, 0))
}

/// CGC soundness holds iff the lifted pair is sound on the powerset
/// transform; for sound pairs the round trip through the PGC is
/// isomorphic to the pair.
pub fn theosound(c: &Constructive, f: &ConcreteFn, fs: &AbstractFn) -> Result<Outcome, FunctionError> {
    let g = t_pgc(c)?;
    let lifted = pair_to_pgc(c, f, fs)?;
    let u = pgc_universe(c, f.arity())?;
    let snd = cgc_soundness(c, f, fs, Variant::All)?.is_ok();
    let gc_snd = gc_pair_property(&g, &lifted, GcProperty::Sound, &u)?.is_ok();
    if let Err(w) = agree("soundness", snd, gc_snd) {
        return Ok(Err(w));
    }
    if snd && f.arity() == 1 {
        let (c2, f2, fs2) = pair_to_cgc(&g, f, &lifted.abs)?;
        if !pair_iso(c, (f, fs), &c2, (&f2, &fs2))? {
            return Ok(fail(Vec::new(), "round trip through the PGC is not isomorphic to the pair"));
        }
    }
    Ok(Ok(()))
}

/// For a block-preserving `g♯` on a PGC: `⟨g⋄, g♯⟩` is sound iff the
/// restriction to block values is sound on `t_cgc_of_pgc(G)`; when sound,
/// the restriction coincides with `α({g(a)})`.
pub fn theosound_blocks(g: &SetGc, gf: &ConcreteFn, gs: &AbstractFn) -> Result<Outcome, FunctionError> {
    if is_block_preserving(g, gs)?.is_err() {
        return Ok(Ok(()));
    }
    let u = Universe::over(g.carrier_order(), 1, 0);
    let gc_snd = gc_pair_property(g, &GcPair::lifted(gf, gs.clone()), GcProperty::Sound, &u)?.is_ok();
    let (c, r) = restrict_to_blocks(g, gs)?;
    let snd = cgc_soundness(&c, gf, &r, Variant::All)?.is_ok();
    if let Err(w) = agree("soundness", snd, gc_snd) {
        return Ok(Err(w));
    }
    if gc_snd {
        let (_, _, r2) = pair_to_cgc(g, gf, gs)?;
        if r2 != r {
            return Ok(fail(Vec::new(), "α({g(a)}) differs from g♯(α({a})) on blocks"));
        }
    }
    Ok(Ok(()))
}

/// For a sound, block-preserving, additive `g♯` on a PGC, the pair
/// `⟨g⋄, g♯⟩` and the powerset transform of its restriction have the same
/// concrete projection `γ∘g♯∘α` on every subset.
pub fn theosound_additive(g: &SetGc, gf: &ConcreteFn, gs: &AbstractFn) -> Result<Outcome, FunctionError> {
    if is_block_preserving(g, gs)?.is_err() {
        return Ok(Ok(()));
    }
    let l = g.abs();
    let additive = gs.get(&[l.bottom()]) == l.bottom()
        && (0..l.len()).all(|x| (0..l.len()).all(|y| gs.get(&[l.join(x, y)]) == l.join(gs.get(&[x]), gs.get(&[y]))));
    let u = Universe::over(g.carrier_order(), 1, 0);
    if !additive || gc_pair_property(g, &GcPair::lifted(gf, gs.clone()), GcProperty::Sound, &u)?.is_err() {
        return Ok(Ok(()));
    }
    let (c, _, r) = pair_to_cgc(g, gf, gs)?;
    let g2 = t_pgc(&c)?;
    let p2 = pair_to_pgc(&c, gf, &r)?;
    Ok(u.try_each(|xs| {
        let left = g.gamma(gs.get(&[g.alpha(xs[0])]));
        let right = g2.gamma(p2.abs.get(&[g2.alpha(xs[0])]));
        if left == right {
            Ok(())
        } else {
            fail([g.carrier().fmt_set(xs[0])], "γ∘g♯∘α differs after the round trip")
        }
    }))
}

/// Each completeness variant holds iff its GC-level property holds on
/// the lifted pair: ημ optimal, μμ forward, ηη backward, μη precise.
pub fn lemsound(c: &Constructive, f: &ConcreteFn, fs: &AbstractFn) -> Result<Outcome, FunctionError> {
    let g = t_pgc(c)?;
    let lifted = pair_to_pgc(c, f, fs)?;
    let u = pgc_universe(c, f.arity())?;
    for v in Variant::FOUR {
        let prop = v.matching_property().expect("one of the four");
        let cmp = cgc_completeness(c, f, fs, v)?.is_ok();
        let gc = gc_pair_property(&g, &lifted, prop, &u)?.is_ok();
        if let Err(w) = agree(&format!("{v} vs {prop}"), cmp, gc) {
            return Ok(Err(w));
        }
    }
    Ok(Ok(()))
}

/// PCGC soundness holds iff the lifted pair is GC-sound on `t_ppgc(C)`.
pub fn teo_pcgc_sound(c: &Constructive, f: &ConcreteFn, fs: &AbstractFn) -> Result<Outcome, FunctionError> {
    let g = t_ppgc(c)?;
    let u = Universe::over(g.carrier_order(), f.arity(), 0);
    let gc = gc_pair_property(&g, &GcPair::lifted(f, fs.clone()), GcProperty::Sound, &u)?.is_ok();
    let snd = pcgc_sound(c, f, fs)?.is_ok();
    Ok(agree("PCGC soundness", snd, gc))
}

/// On a PPGC, GC soundness of `⟨f⋄, f♯⟩` holds iff PCGC soundness holds
/// on `t_pcgc(G)`; the lub of `α^{·}` is `α` itself.
pub fn teo_pcgc_sound_gc(g: &SetGc, f: &ConcreteFn, fs: &AbstractFn) -> Result<Outcome, FunctionError> {
    let c = t_pcgc(g)?;
    let l = g.abs();
    let u = Universe::over(g.carrier_order(), 1, 0);
    let lub_is_alpha = u.try_each(|xs| {
        let lub = l.join_all(xs[0].iter().map(|a| c.eta_at(a)));
        if lub == g.alpha(xs[0]) {
            Ok(())
        } else {
            fail([g.carrier().fmt_set(xs[0])], "(α^{·})∨ ≠ α")
        }
    });
    if let Err(w) = lub_is_alpha {
        return Ok(Err(w));
    }
    let uf = Universe::over(g.carrier_order(), f.arity(), 0);
    let gc = gc_pair_property(g, &GcPair::lifted(f, fs.clone()), GcProperty::Sound, &uf)?.is_ok();
    let snd = pcgc_sound(&c, f, fs)?.is_ok();
    Ok(agree("PCGC soundness", snd, gc))
}

/// `⟨f, α∘f∘γ⟩` is sound.
pub fn bca_is_sound(g: &SetGc, f: &ConcreteFn) -> Result<Outcome, FunctionError> {
    let pair = GcPair::lifted(f, crate::functions::bca_gc(g, f.arity(), &|xs: &[&Subset]| f.apply_set(xs)));
    let u = Universe::over(g.carrier_order(), f.arity(), 0);
    gc_pair_property(g, &pair, GcProperty::Sound, &u)
}

/// Whether a constructive record passes the CGC checker.
pub fn is_cgc(c: &Constructive) -> bool {
    check_cgc(c).is_ok()
}
