//! Seeded instance generators for the property suites.
//!
//! Every generator is a pure function of its seed and sizes. Abstract
//! names are shuffled so that checkers cannot lean on declaration order.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CatalogError;
use crate::functions::{bca_pcgc, OpTable};
use crate::galois::{check_cgc, Abstract, Alpha, Constructive, Kind, SetGc};
use crate::order::{Lattice, Poset};
use crate::setops::{Carrier, Subset};

/// Largest generated carrier.
pub const SIZE_LIMIT_A: usize = 10;
/// Largest generated abstract carrier for unordered domains.
pub const SIZE_LIMIT_B: usize = 12;

/// Upper bounds on generated carrier sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sizes {
    pub amax: usize,
    pub bmax: usize,
}

impl Sizes {
    pub fn new(amax: usize, bmax: usize) -> Result<Self, CatalogError> {
        if amax == 0 || bmax == 0 {
            return Err(CatalogError::SizeGuard("sizes must be positive".into()));
        }
        if amax > SIZE_LIMIT_A || bmax > SIZE_LIMIT_B {
            return Err(CatalogError::SizeGuard(format!(
                "|A| ≤ {SIZE_LIMIT_A} and |B| ≤ {SIZE_LIMIT_B} required, got {amax} and {bmax}"
            )));
        }
        Ok(Sizes { amax, bmax })
    }
}

impl Default for Sizes {
    fn default() -> Self {
        Sizes { amax: 6, bmax: 6 }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn atoms(n: usize) -> Carrier {
    Carrier::atoms((0..n).map(|i| format!("x{i}"))).expect("distinct atoms")
}

/// Block id per element, every block in `0..k` nonempty.
fn random_blocks(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut block = vec![0; n];
    for (pos, &a) in order.iter().enumerate() {
        block[a] = if pos < k { pos } else { rng.random_range(0..k) };
    }
    block
}

fn block_sets(n: usize, block: &[usize], k: usize) -> Vec<Subset> {
    (0..k).map(|b| Subset::from_indices(n, (0..n).filter(|&a| block[a] == b))).collect()
}

fn shuffled_names(rng: &mut ChaCha8Rng, prefix: &str, m: usize) -> (Vec<String>, Vec<usize>) {
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    ((0..m).map(|i| format!("{prefix}{i}")).collect(), perm)
}

/// A CGC from a block assignment, with `junk` extra values concretizing to ∅.
fn cgc_from_blocks(rng: &mut ChaCha8Rng, carrier: Carrier, block: &[usize], k: usize, junk: usize) -> Constructive {
    let n = carrier.len();
    let m = k + junk;
    let (names, perm) = shuffled_names(rng, "b", m);
    let sets = block_sets(n, block, k);
    let mut mu = vec![Subset::empty(n); m];
    for (b, s) in sets.into_iter().enumerate() {
        mu[perm[b]] = s;
    }
    let eta = block.iter().map(|&b| perm[b]).collect();
    let abs = Abstract::from_poset(Poset::discrete(&names).expect("distinct names"));
    Constructive::new(Kind::Cgc, carrier, None, abs, eta, mu).expect("generated shapes agree")
}

/// A random CGC: partition of `A`, one value per block, up to two junk values.
pub fn gen_cgc(seed: u64, sizes: Sizes) -> Constructive {
    let mut r = rng(seed);
    let n = r.random_range(1..=sizes.amax);
    let k = r.random_range(1..=n.min(sizes.bmax));
    let junk = r.random_range(0..=2usize.min(sizes.bmax - k));
    let block = random_blocks(&mut r, n, k);
    cgc_from_blocks(&mut r, atoms(n), &block, k, junk).with_provenance(format!("gen:cgc:{seed}"))
}

/// Two random CGCs on one carrier; the second coarsens, refines or ignores
/// the first.
pub fn gen_cgc_pair(seed: u64, sizes: Sizes) -> (Constructive, Constructive) {
    let mut r = rng(seed);
    let first = gen_cgc(r.random(), sizes);
    let n = first.carrier().len();
    let k1 = first.eta_image().len();
    let relabel = |block: Vec<usize>| {
        let mut ids: Vec<usize> = Vec::new();
        let out: Vec<usize> = block
            .iter()
            .map(|b| match ids.iter().position(|x| x == b) {
                Some(p) => p,
                None => {
                    ids.push(*b);
                    ids.len() - 1
                }
            })
            .collect();
        (out, ids.len())
    };
    let (block, k) = match r.random_range(0..3) {
        0 => {
            let target: Vec<usize> = (0..first.abs_len()).map(|_| r.random_range(0..k1.max(1))).collect();
            relabel(first.eta().iter().map(|&b| target[b]).collect())
        }
        1 => relabel(first.eta().iter().map(|&b| 2 * b + usize::from(r.random_bool(0.5))).collect()),
        _ => {
            let k = r.random_range(1..=n);
            (random_blocks(&mut r, n, k), k)
        }
    };
    let k = k.min(sizes.bmax);
    let block: Vec<usize> = block.into_iter().map(|b| b.min(k - 1)).collect();
    let junk = r.random_range(0..=2usize.min(sizes.bmax - k));
    let second = cgc_from_blocks(&mut r, first.carrier().clone(), &block, k, junk).with_provenance(format!("gen:cgc_pair:{seed}"));
    (first, second)
}

/// A PGC whose abstract side is the powerset of the blocks.
pub fn gen_pgc(seed: u64, sizes: Sizes) -> SetGc {
    let mut r = rng(seed);
    let n = r.random_range(1..=sizes.amax);
    let k = r.random_range(1..=n.min(sizes.bmax).min(8));
    let block = random_blocks(&mut r, n, k);
    let names: Vec<String> = (0..k).map(|b| format!("p{b}")).collect();
    let abs = Lattice::powerset(&names).expect("small powerset");
    let sets = block_sets(n, &block, k);
    let gamma = (0..1usize << k)
        .map(|m| {
            let mut s = Subset::empty(n);
            (0..k).filter(|b| m >> b & 1 == 1).for_each(|b| s.union_with(&sets[b]));
            s
        })
        .collect();
    let pt = block.iter().map(|&b| 1 << b).collect();
    SetGc::new(atoms(n), None, abs, Alpha::Join(pt), gamma).expect("generated shapes agree").with_provenance(format!("gen:pgc:{seed}"))
}

/// Block masks: all blocks, the full mask, a few random unions, closed
/// under intersection.
fn union_family(r: &mut ChaCha8Rng, k: usize) -> Vec<u32> {
    let full = (1u32 << k) - 1;
    let mut fam: Vec<u32> = (0..k).map(|b| 1 << b).chain([full]).collect();
    for _ in 0..r.random_range(0..=3) {
        fam.push(r.random_range(0..=full));
    }
    loop {
        let mut grown = false;
        for i in 0..fam.len() {
            for j in i + 1..fam.len() {
                let m = fam[i] & fam[j];
                if !fam.contains(&m) {
                    fam.push(m);
                    grown = true;
                }
            }
        }
        if !grown {
            break;
        }
    }
    fam.sort_unstable();
    fam.dedup();
    fam
}

fn mask_set(n: usize, sets: &[Subset], m: u32) -> Subset {
    let mut s = Subset::empty(n);
    (0..sets.len()).filter(|b| m >> b & 1 == 1).for_each(|b| s.union_with(&sets[b]));
    s
}

/// A partitioning GC whose abstract side is a random intersection-closed
/// family of block unions; γ is inclusion, α the least member above.
pub fn gen_ppgc(seed: u64, sizes: Sizes) -> SetGc {
    let mut r = rng(seed);
    let n = r.random_range(1..=sizes.amax);
    let k = r.random_range(1..=n.min(sizes.bmax).min(8));
    let block = random_blocks(&mut r, n, k);
    let carrier = atoms(n);
    let blocks = block_sets(n, &block, k);
    let fam = union_family(&mut r, k);
    let sets: Vec<Subset> = fam.iter().map(|&m| mask_set(n, &blocks, m)).collect();
    let names = sets.iter().map(|s| carrier.fmt_set(s)).collect();
    let abs = Lattice::family(names, sets.clone()).expect("intersection-closed family");
    let pt = block.iter().map(|&b| fam.iter().position(|&m| m == 1 << b).expect("blocks are members")).collect();
    SetGc::new(carrier, None, abs, Alpha::Join(pt), sets).expect("generated shapes agree").with_provenance(format!("gen:ppgc:{seed}"))
}

/// An opaque lattice with shuffled names over an inclusion-ordered family.
fn opaque_lattice(r: &mut ChaCha8Rng, sets: &[Subset]) -> (Lattice, Vec<Subset>, Vec<usize>) {
    let (names, perm) = shuffled_names(r, "d", sets.len());
    let mut inv = vec![0; sets.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let placed: Vec<Subset> = (0..sets.len()).map(|p| sets[inv[p]].clone()).collect();
    let poset = Poset::from_relation(names, |i, j| placed[i].is_subset(&placed[j])).expect("inclusion is an order");
    (Lattice::new(poset).expect("intersection-closed family"), placed, perm)
}

/// A PCGC built from a partition and a family of block unions.
pub fn gen_pcgc(seed: u64, sizes: Sizes) -> Constructive {
    let mut r = rng(seed);
    let n = r.random_range(1..=sizes.amax);
    let k = r.random_range(1..=n.min(sizes.bmax).min(8));
    let block = random_blocks(&mut r, n, k);
    let blocks = block_sets(n, &block, k);
    let fam = union_family(&mut r, k);
    let sets: Vec<Subset> = fam.iter().map(|&m| mask_set(n, &blocks, m)).collect();
    let (abs, mu, perm) = opaque_lattice(&mut r, &sets);
    let eta = block.iter().map(|&b| perm[fam.iter().position(|&m| m == 1 << b).expect("blocks are members")]).collect();
    Constructive::new(Kind::Pcgc, atoms(n), None, Abstract::Lattice(abs), eta, mu)
        .expect("generated shapes agree")
        .with_provenance(format!("gen:pcgc:{seed}"))
}

/// A random poset on at most six atoms with edges only from lower to
/// higher index.
fn random_poset(r: &mut ChaCha8Rng, amax: usize) -> (Carrier, Poset) {
    let n = r.random_range(1..=amax.min(6));
    let carrier = atoms(n);
    let p = r.random_range(0.1..0.5);
    let mut pairs: Vec<(String, String)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.random_bool(p) {
                pairs.push((carrier.name(i).to_string(), carrier.name(j).to_string()));
            }
        }
    }
    let poset = Poset::build(carrier.names(), &pairs).expect("acyclic by construction");
    (carrier, poset)
}

/// A random Moore family of downsets containing the full set.
fn downset_family(r: &mut ChaCha8Rng, poset: &Poset) -> Vec<Subset> {
    let all = poset.downsets().expect("small poset");
    let full = Subset::full(poset.len());
    let mut fam: Vec<Subset> = vec![full];
    for d in &all {
        if r.random_bool(0.35) && !fam.contains(d) {
            fam.push(d.clone());
        }
    }
    loop {
        let mut grown = false;
        for i in 0..fam.len() {
            for j in i + 1..fam.len() {
                let m = fam[i].intersection(&fam[j]);
                if !fam.contains(&m) {
                    fam.push(m);
                    grown = true;
                }
            }
        }
        if !grown {
            return fam;
        }
    }
}

fn least_above(sets: &[Subset], x: &Subset) -> usize {
    (0..sets.len()).filter(|&i| x.is_subset(&sets[i])).min_by_key(|&i| sets[i].len()).expect("full set is a member")
}

/// A GC on `℘↓(A)` for a random poset `A`, with α stored as a full table.
pub fn gen_downset_gc(seed: u64, sizes: Sizes) -> SetGc {
    let mut r = rng(seed);
    let (carrier, poset) = random_poset(&mut r, sizes.amax);
    let fam = downset_family(&mut r, &poset);
    let (abs, gamma, _) = opaque_lattice(&mut r, &fam);
    let table = poset.downsets().expect("small poset").into_iter().map(|x| {
        let d = least_above(&gamma, &x);
        (x, d)
    });
    SetGc::new(carrier, Some(poset), abs, Alpha::Table(table.collect()), gamma)
        .expect("generated shapes agree")
        .with_provenance(format!("gen:downset_gc:{seed}"))
}

/// A CGP over a random poset: η(a) is the least member above `↓a`.
pub fn gen_cgp(seed: u64, sizes: Sizes) -> Constructive {
    let mut r = rng(seed);
    let (carrier, poset) = random_poset(&mut r, sizes.amax);
    let fam = downset_family(&mut r, &poset);
    let (abs, mu, _) = opaque_lattice(&mut r, &fam);
    let eta = (0..carrier.len()).map(|a| least_above(&mu, &poset.down(a))).collect();
    Constructive::new(Kind::Cgp, carrier, Some(poset), Abstract::Lattice(abs), eta, mu)
        .expect("generated shapes agree")
        .with_provenance(format!("gen:cgp:{seed}"))
}

/// A unary pair on a CGC: `f` is block-consistent or arbitrary, `f♯`
/// follows the blocks and is then perturbed now and then.
pub fn gen_cgc_fn_pair(c: &Constructive, seed: u64) -> (OpTable, OpTable) {
    let mut r = rng(seed);
    let (n, m) = (c.carrier().len(), c.abs_len());
    let members: Vec<Vec<usize>> = (0..m).map(|b| c.mu_at(b).iter().collect()).collect();
    let live: Vec<usize> = (0..m).filter(|&b| !members[b].is_empty()).collect();
    let f: Vec<usize> = if r.random_bool(0.6) {
        let target: Vec<usize> = (0..m).map(|_| live[r.random_range(0..live.len())]).collect();
        (0..n).map(|a| *members[target[c.eta_at(a)]].choose(&mut r).expect("live block")).collect()
    } else {
        (0..n).map(|_| r.random_range(0..n)).collect()
    };
    let mut fs: Vec<usize> = (0..m)
        .map(|b| match members[b].first() {
            Some(&x) => c.eta_at(f[x]),
            None => r.random_range(0..m),
        })
        .collect();
    if r.random_bool(0.3) {
        let b = r.random_range(0..m);
        fs[b] = r.random_range(0..m);
    }
    (OpTable::from_vec(1, n, f), OpTable::from_vec(1, m, fs))
}

/// A pair that is sound by construction: block-consistent `f` with its
/// induced map on a CGC, or a random `f` with its BCA raised by random
/// joins on a PCGC with a lattice.
pub fn gen_sound_pair(c: &Constructive, seed: u64) -> Result<(OpTable, OpTable), CatalogError> {
    let mut r = rng(seed);
    let (n, m) = (c.carrier().len(), c.abs_len());
    if check_cgc(c).is_ok() {
        let members: Vec<Vec<usize>> = (0..m).map(|b| c.mu_at(b).iter().collect()).collect();
        let live: Vec<usize> = (0..m).filter(|&b| !members[b].is_empty()).collect();
        let target: Vec<usize> = (0..m).map(|_| live[r.random_range(0..live.len())]).collect();
        let f = (0..n).map(|a| *members[target[c.eta_at(a)]].choose(&mut r).expect("live block")).collect();
        let fs = (0..m).map(|b| if members[b].is_empty() { r.random_range(0..m) } else { target[b] }).collect();
        return Ok((OpTable::from_vec(1, n, f), OpTable::from_vec(1, m, fs)));
    }
    let l = c.lattice().ok_or_else(|| CatalogError::SizeGuard("sound pairs need a lattice".into()))?;
    let f = OpTable::from_vec(1, n, (0..n).map(|_| r.random_range(0..n)).collect());
    let bca = bca_pcgc(c, &f).map_err(|e| CatalogError::SizeGuard(e.to_string()))?;
    let raised = (0..m)
        .map(|b| {
            let v = bca.get(&[b]);
            if r.random_bool(0.3) {
                l.join(v, r.random_range(0..m))
            } else {
                v
            }
        })
        .collect();
    Ok((f, OpTable::from_vec(1, m, raised)))
}

/// A pair on a PGC from [`gen_pgc`]: `g♯` is the lifting of a block map,
/// optionally made non-additive; `g` follows the block map or not.
pub fn gen_pgc_fn_pair(g: &SetGc, seed: u64) -> (OpTable, OpTable) {
    let mut r = rng(seed);
    let n = g.carrier().len();
    let blocks: Vec<usize> = (0..n).map(|a| g.alpha_point(a)).collect();
    let k = g.abs().len().trailing_zeros() as usize;
    let h: Vec<usize> = (0..k).map(|_| r.random_range(0..k)).collect();
    let members = |b: usize| -> Vec<usize> { (0..n).filter(|&a| blocks[a] == 1 << b).collect() };
    let gf: Vec<usize> = if r.random_bool(0.7) {
        (0..n).map(|a| *members(h[blocks[a].trailing_zeros() as usize]).choose(&mut r).expect("nonempty block")).collect()
    } else {
        (0..n).map(|_| r.random_range(0..n)).collect()
    };
    let additive = r.random_bool(0.6);
    let full = (1usize << k) - 1;
    let gs = (0..1usize << k)
        .map(|s| {
            if !additive && s.count_ones() > 1 {
                return full;
            }
            (0..k).filter(|b| s >> b & 1 == 1).fold(0, |acc, b| acc | 1 << h[b])
        })
        .collect();
    (OpTable::from_vec(1, n, gf), OpTable::from_vec(1, 1 << k, gs))
}

/// A random unary pair on a PCGC or PPGC: BCA, raised BCA, or arbitrary.
pub fn gen_pcgc_fn_pair(c: &Constructive, seed: u64) -> (OpTable, OpTable) {
    let mut r = rng(seed);
    let (n, m) = (c.carrier().len(), c.abs_len());
    let f = OpTable::from_vec(1, n, (0..n).map(|_| r.random_range(0..n)).collect());
    let fs = match (r.random_range(0..3), c.lattice()) {
        (0, Some(_)) => bca_pcgc(c, &f).expect("lattice present"),
        (1, Some(l)) => {
            let bca = bca_pcgc(c, &f).expect("lattice present");
            OpTable::from_vec(1, m, (0..m).map(|b| l.join(bca.get(&[b]), r.random_range(0..m))).collect())
        }
        _ => OpTable::from_vec(1, m, (0..m).map(|_| r.random_range(0..m)).collect()),
    };
    (f, fs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{check_cgp, check_gc, check_pcgc, classify_partitioning, Class};

    #[test]
    fn size_guard() {
        assert!(Sizes::new(11, 4).is_err());
        assert!(Sizes::new(4, 13).is_err());
        assert!(Sizes::new(0, 4).is_err());
        assert!(Sizes::new(10, 12).is_ok());
    }

    #[test]
    fn deterministic_per_seed() {
        let s = Sizes::new(6, 5).unwrap();
        let (a, b) = (gen_cgc(42, s), gen_cgc(42, s));
        assert_eq!(a.eta(), b.eta());
        assert_eq!(a.mu(), b.mu());
        assert_eq!(check_cgc(&a), Ok(()));
    }

    #[test]
    fn generators_pass_their_checkers() {
        let s = Sizes::default();
        for seed in 0..200 {
            assert_eq!(check_cgc(&gen_cgc(seed, s)), Ok(()));
            let (c1, c2) = gen_cgc_pair(seed, s);
            assert_eq!(check_cgc(&c1), Ok(()));
            assert_eq!(check_cgc(&c2), Ok(()));
            assert_eq!(c1.carrier().names(), c2.carrier().names());
            assert_eq!(classify_partitioning(&gen_pgc(seed, s)).unwrap().class, Class::Pgc);
            assert_ne!(classify_partitioning(&gen_ppgc(seed, s)).unwrap().class, Class::Neither);
            assert!(check_pcgc(&gen_pcgc(seed, s)).ok());
            assert!(check_gc(&gen_downset_gc(seed, s)).is_gc());
            assert_eq!(check_cgp(&gen_cgp(seed, s)), Ok(()));
        }
    }

    #[test]
    fn ppgc_generator_hits_the_strict_case() {
        let s = Sizes::default();
        let strict = (0..200).filter(|&seed| classify_partitioning(&gen_ppgc(seed, s)).unwrap().class == Class::Ppgc).count();
        assert!(strict > 0);
    }
}
