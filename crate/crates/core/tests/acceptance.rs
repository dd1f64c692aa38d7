//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use galcon::analyzer::{self, analyze, oracle, parse_program, PointKind, Transfer, STEP_BUDGET};
use galcon::catalog::{self, gen, Sizes};
use galcon::functions::{
    bca_gc, bca_pcgc, gc_pair_property, is_block_preserving, pcgc_pair_property_in, GcPair, GcProperty, OpTable, PcgcProperty, Universe,
};
use galcon::galois::{
    check_cgc, check_cgp, check_pcgc, classify_partitioning, embed_cgc_to_pcgc, embed_pcgc_to_cgp, renaming_witnesses, Abstract,
    Class, Constructive, Outcome,
};
use galcon::transforms::{t_cgp, t_pcgc};
use galcon::{laws, Poset};

type Check = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Check);

fn ok(o: Outcome, what: &str) -> Result<(), String> {
    o.map_err(|w| format!("{what}: {w}"))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn sizes(a: usize, b: usize) -> Sizes {
    Sizes::new(a, b).expect("within guards")
}

/// The same connection with abstract elements renamed and listed backwards.
fn renamed(c: &Constructive) -> Constructive {
    let p = c.abs_poset();
    let m = p.len();
    let names: Vec<String> = (0..m).rev().map(|k| format!("r:{}", p.name(k))).collect();
    let q = Poset::from_relation(names, |i, j| p.leq(m - 1 - i, m - 1 - j)).expect("reversed order");
    let eta = c.eta().iter().map(|&b| m - 1 - b).collect();
    let mu = (0..m).map(|k| c.mu_at(m - 1 - k).clone()).collect();
    Constructive::new(c.kind(), c.carrier().clone(), Some(c.carrier_order().clone()), Abstract::from_poset(q), eta, mu).expect("same shapes")
}

fn sq_table() -> Check {
    let g = catalog::sign_pgi(64).map_err(err)?;
    let sq = OpTable::int_unary(g.carrier(), |x| x * x).map_err(err)?;
    let t = bca_gc(&g, 1, &|xs| sq.apply_set(xs));
    let expected = [
        ("∅", "∅"),
        ("<0", ">0"),
        ("=0", "=0"),
        (">0", ">0"),
        ("≤0", "≥0"),
        ("≠0", ">0"),
        ("≥0", "≥0"),
        ("ℤ", "≥0"),
    ];
    if g.abs().len() != expected.len() {
        return Err(format!("Sign has {} elements", g.abs().len()));
    }
    for (arg, want) in expected {
        let d = g.abs().index_of(arg).ok_or(format!("no element {arg}"))?;
        let got = g.d(t.get(&[d]));
        if got != want {
            return Err(format!("sq_S({arg}) = {got}, expected {want}"));
        }
    }
    Ok("8/8 entries match".into())
}

fn times_table() -> Check {
    let c = catalog::signconst_pcgc(64).map_err(err)?;
    let mul = OpTable::int_binary(c.carrier(), |x, y| x * y).map_err(err)?;
    let ms = bca_pcgc(&c, &mul).map_err(err)?;
    let p = c.abs_poset();
    let b = |s: &str| p.index_of(s).expect("element");
    let show = |x: usize| p.name(x).to_string();
    let r1 = ms.get(&[b("2"), b("<0")]);
    if r1 != b("<0") {
        return Err(format!("⊗♯(2,<0) = {}", show(r1)));
    }
    let r2 = ms.get(&[b("-2"), b("≤0")]);
    if r2 != b("≥0") {
        return Err(format!("⊗♯(-2,≤0) = {}", show(r2)));
    }
    let car = c.carrier();
    let x = car.ints_where(|v| v == 2 || v == 4);
    let y = car.ints_where(|v| v == -1 || v == 0);
    let l = c.lattice().expect("lattice");
    let lhs = l.join_all(mul.apply_set(&[&x, &y]).iter().map(|a| c.eta_at(a)));
    let rhs = ms.get(&[b(">0"), b("≤0")]);
    if lhs != b("≤0") || rhs != lhs {
        return Err(format!("∨(⊗⋄({{2,4}},{{-1,0}})) = {}, ⊗♯(>0,≤0) = {}", show(lhs), show(rhs)));
    }
    let window = car.ints_where(|v| v.abs() <= 8);
    let u = Universe::sample(&window, c.carrier_order(), 2, 0);
    ok(pcgc_pair_property_in(&c, &mul, &ms, PcgcProperty::Backward, &u).map_err(err)?, "backward completeness on [-8,8]")?;
    Ok("⊗♯(2,<0)=<0, ⊗♯(-2,≤0)=≥0, ∨(⊗⋄({2,4},{-1,0}))=≤0=⊗♯(>0,≤0), backward complete on [-8,8]".into())
}

fn loop_invariant() -> Check {
    let c = catalog::signconst_pcgc(64).map_err(err)?;
    let src = include_str!("fixtures/while/loop_invariant.while");
    let r = analyzer::analyze_source(src, &c).map_err(err)?;
    let heads: Vec<_> = r.points.iter().enumerate().filter(|(_, p)| p.kind == PointKind::LoopHead).collect();
    let [(k, head)] = heads.as_slice() else {
        return Err(format!("{} loop heads", heads.len()));
    };
    let state: Vec<(&str, &str)> = head.state.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
    if state != [("x", ">0"), ("y", "2")] {
        return Err(format!("loop head {}", r.show_state(*k)));
    }
    Ok(format!("{}: {}", head.label, r.show_state(*k)))
}

fn teo_pgc() -> Check {
    let s = sizes(8, 8);
    for seed in 0..500 {
        let c = gen::gen_cgc(seed, s);
        ok(laws::teo_pgc(&c).map_err(err)?, &format!("seed {seed}"))?;
    }
    Ok("500 seeded CGCs".into())
}

fn coro_pgc() -> Check {
    let s = sizes(8, 8);
    let (mut comparable, mut incomparable) = (0, 0);
    for seed in 0..200 {
        let (c1, c2) = gen::gen_cgc_pair(seed, s);
        ok(laws::coro_pgc(&c1, &c2).map_err(err)?, &format!("seed {seed}"))?;
        match galcon::galois::precision_cmp_cgc(&c1, &c2).map_err(err)? {
            galcon::Precision::Incomparable => incomparable += 1,
            _ => comparable += 1,
        }
    }
    if comparable == 0 || incomparable == 0 {
        return Err(format!("degenerate sample: {comparable} comparable, {incomparable} incomparable"));
    }
    Ok(format!("200 pairs ({comparable} comparable, {incomparable} incomparable)"))
}

fn theosound() -> Check {
    let s = sizes(6, 6);
    let (mut sound, mut unsound) = (0, 0);
    for seed in 0..300 {
        let c = gen::gen_cgc(seed, s);
        let (f, fs) = if seed % 2 == 0 { gen::gen_sound_pair(&c, seed).map_err(err)? } else { gen::gen_cgc_fn_pair(&c, seed) };
        let at = format!("seed {seed}");
        ok(laws::theosound(&c, &f, &fs).map_err(err)?, &at)?;
        ok(laws::lemsound(&c, &f, &fs).map_err(err)?, &at)?;
        if galcon::functions::cgc_soundness(&c, &f, &fs, galcon::Variant::All).map_err(err)?.is_ok() {
            sound += 1;
        } else {
            unsound += 1;
        }
    }
    if unsound == 0 {
        return Err("no unsound pair was generated".into());
    }
    Ok(format!("300 instances ({sound} sound, {unsound} unsound)"))
}

fn teo_cgp() -> Check {
    let s = Sizes::default();
    for seed in 0..200 {
        let at = format!("seed {seed}");
        let g = gen::gen_downset_gc(seed, s);
        let c = t_cgp(&g).map_err(err)?;
        ok(check_cgp(&c), &at)?;
        ok(laws::teo_cgp_gc(&g).map_err(err)?, &at)?;
        ok(laws::teo_cgp(&gen::gen_cgp(seed, s)).map_err(err)?, &at)?;
    }
    Ok("200 GCs on downset lattices, 200 CGPs".into())
}

fn teo_pcgc() -> Check {
    let s = Sizes::default();
    let mut strict = 0;
    for seed in 0..300 {
        let at = format!("seed {seed}");
        let g = gen::gen_ppgc(seed, s);
        if classify_partitioning(&g).map_err(err)?.class == Class::Ppgc {
            strict += 1;
        }
        ok(laws::teo_pcgc_gc(&g).map_err(err)?, &at)?;
        let (gf, gs) = gen::gen_pcgc_fn_pair(&t_pcgc(&g).map_err(err)?, seed);
        ok(laws::teo_pcgc_sound_gc(&g, &gf, &gs).map_err(err)?, &at)?;
        let c = gen::gen_pcgc(seed, s);
        ok(laws::teo_pcgc(&c).map_err(err)?, &at)?;
        let (f, fs) = gen::gen_pcgc_fn_pair(&c, seed);
        ok(laws::teo_pcgc_sound(&c, &f, &fs).map_err(err)?, &at)?;
    }
    Ok(format!("300 PPGCs ({strict} not PGC), 300 PCGCs"))
}

fn negative_fixtures() -> Check {
    let expect = |what: &str, o: Outcome, at: &[&str]| -> Result<String, String> {
        match o {
            Err(w) if w.at == at => Ok(w.chain),
            Err(w) => Err(format!("{what}: witness {w}, expected ({})", at.join(", "))),
            Ok(()) => Err(format!("{what}: accepted")),
        }
    };
    let plustop = catalog::plustop_cgp(64).map_err(err)?;
    expect("plustop check_cgc", check_cgc(&plustop), &["1", "⊤"])?;
    let cond1 = expect("plustop condition (1)", check_pcgc(&plustop).cond1, &["1", "⊤"])?;
    if !cond1.contains("η(0)") {
        return Err(format!("plustop condition (1) chain lacks η(0): {cond1}"));
    }
    let bprime = catalog::interval_bprime(64).map_err(err)?;
    expect("interval_bprime condition (2)", check_pcgc(&bprime).cond2, &["10", "[-10,10]"])?;
    let class = classify_partitioning(&catalog::interval_gi_d(64).map_err(err)?).map_err(err)?.class;
    if class != Class::Neither {
        return Err(format!("interval_gi_d classified as {class}"));
    }
    expect("signconst check_cgc", check_cgc(&catalog::signconst_pcgc(64).map_err(err)?), &["1", ">0"])?;
    expect("interval_pcgc check_cgc", check_cgc(&catalog::interval_pcgc(64).map_err(err)?), &["0", "[-9,9]"])?;
    Ok("(1,⊤), (1,⊤) via η(0), (10,[-10,10]), neither, (1,>0), (0,[-9,9])".into())
}

fn lemma_suites() -> Check {
    let cgcs = [catalog::parity(8).map_err(err)?, catalog::sign_cgc(8).map_err(err)?];
    let pcgcs = [catalog::interval_pcgc(10).map_err(err)?, catalog::signconst_pcgc(8).map_err(err)?];
    let mut cgps = vec![catalog::plustop_cgp(8).map_err(err)?, t_cgp(&catalog::interval_gi_d(10).map_err(err)?).map_err(err)?];
    for c in &pcgcs {
        cgps.push(embed_pcgc_to_cgp(c).map_err(err)?);
    }
    for c in &cgcs {
        ok(laws::cgc_properties(c), "CGC properties on builtins")?;
        ok(laws::pcgc_properties(&embed_cgc_to_pcgc(c).map_err(err)?), "PCGC properties on embedded CGCs")?;
        ok(laws::cgc_isomorphism(c, &renamed(c)).map_err(err)?, "CGC isomorphism on builtins")?;
        renaming_witnesses(c, &renamed(c)).map_err(|e| format!("no renaming for a renamed builtin: {e}"))?;
    }
    ok(laws::cgc_isomorphism(&cgcs[0], &catalog::parity_on(cgcs[0].carrier().clone())).map_err(err)?, "parity vs itself")?;
    for c in &pcgcs {
        ok(laws::pcgc_properties(c), "PCGC properties on builtins")?;
    }
    for c in &cgps {
        ok(laws::cgp_properties(c), "CGP properties on builtins")?;
    }
    let sign = catalog::sign_pgi(8).map_err(err)?;
    let sq = OpTable::int_unary(sign.carrier(), |x| x * x).map_err(err)?;
    let sq_s = bca_gc(&sign, 1, &|xs| sq.apply_set(xs));
    if is_block_preserving(&sign, &sq_s).map_err(err)?.is_err() {
        return Err("sq_S is not block-preserving".into());
    }
    ok(laws::lemma_one(&sign, &sq, &sq_s).map_err(err)?, "lemma-one on sq_S")?;

    let s = Sizes::default();
    let mut lemma_one_live = 0;
    for seed in 0..500 {
        let at = format!("seed {seed}");
        let c = gen::gen_cgc(seed, s);
        ok(laws::cgc_properties(&c), &at)?;
        let r = renamed(&c);
        ok(laws::cgc_isomorphism(&c, &r).map_err(err)?, &at)?;
        renaming_witnesses(&c, &r).map_err(|e| format!("{at}: {e}"))?;
        let (c1, c2) = gen::gen_cgc_pair(seed, s);
        ok(laws::cgc_isomorphism(&c1, &c2).map_err(err)?, &at)?;
        ok(laws::cgp_properties(&gen::gen_cgp(seed, s)), &at)?;
        ok(laws::pcgc_properties(&gen::gen_pcgc(seed, s)), &at)?;
        let g = gen::gen_pgc(seed, s);
        let (gf, gs) = gen::gen_pgc_fn_pair(&g, seed);
        let u = Universe::over(g.carrier_order(), 1, 0);
        let sound = gc_pair_property(&g, &GcPair::lifted(&gf, gs.clone()), GcProperty::Sound, &u).map_err(err)?.is_ok();
        if sound && is_block_preserving(&g, &gs).map_err(err)?.is_ok() {
            lemma_one_live += 1;
        }
        ok(laws::lemma_one(&g, &gf, &gs).map_err(err)?, &at)?;
    }
    if lemma_one_live == 0 {
        return Err("lemma-one hypotheses never met".into());
    }
    Ok(format!("all builtins and 500 seeds; lemma-one hypotheses met on {lemma_one_live}"))
}

fn oracle_corpus() -> Check {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/while");
    let mut files: Vec<_> = fs::read_dir(&dir).map_err(err)?.map(|e| e.map(|e| e.path())).collect::<Result<_, _>>().map_err(err)?;
    files.retain(|p| p.extension().is_some_and(|e| e == "while"));
    files.sort();
    if files.len() != 10 {
        return Err(format!("corpus has {} programs", files.len()));
    }
    let c = catalog::signconst_pcgc(64).map_err(err)?;
    let t = Transfer::new(&c).map_err(err)?;
    let mut visits = 0;
    for path in &files {
        let name = path.file_name().unwrap_or_default().to_string_lossy();
        let program = parse_program(&fs::read_to_string(path).map_err(err)?).map_err(|e| format!("{name}: {e}"))?;
        let result = analyze(&program, &t).map_err(|e| format!("{name}: {e}"))?;
        let (run, bad) = oracle(&program, &c, &result, STEP_BUDGET);
        if let Some(v) = bad.first() {
            return Err(format!("{name}: {} violations, first {v}", bad.len()));
        }
        visits += run.steps;
    }
    Ok(format!("10 programs, {visits} concrete steps, 0 violations"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("sq_S reproduction", Some(Duration::from_secs(1)), sq_table),
        ("⊗♯ reproduction", Some(Duration::from_secs(5)), times_table),
        ("loop invariant", Some(Duration::from_secs(1)), loop_invariant),
        ("powerset round trip over 500 CGCs", Some(Duration::from_secs(30)), teo_pgc),
        ("precision order preserved over 200 pairs", None, coro_pgc),
        ("soundness transfer and completeness variants", None, theosound),
        ("downset GC and CGP round trips", None, teo_cgp),
        ("PCGC and PPGC round trips and soundness", None, teo_pcgc),
        ("negative fixtures", None, negative_fixtures),
        ("lemma suites", Some(Duration::from_secs(120)), lemma_suites),
        ("analyzer soundness oracle", None, oracle_corpus),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if took > l => Err(format!("took {took:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{took:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{took:.2?}]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
