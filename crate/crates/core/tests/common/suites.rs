//! Property suites. Each returns a one-line summary or the first counterexample.

use super::*;
use std::collections::HashMap;
use tgrip_core::arith::{lcm, valuation};
use tgrip_core::coh::is_coboundary;
use tgrip_core::dade::{build_factors, build_y_g1, psi_cocycle_g1, DadeParams};
use tgrip_core::equivalence::{a_from_b, a_vector, b_candidates, b_from_a, b_vector, maximal_exp_subgroup, sim_equivalent_tables, SignatureTable};
use tgrip_core::error::Error;
use tgrip_core::grp::exponent_of;
use tgrip_core::wedd::{decompose, decompose_full};
use tgrip_core::yam::construct_cover_abelian;

pub type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Trivial class ⇔ a one-dimensional component over F, checked with full
/// certificates on every class of every abelian group of order at most 16.
pub fn split_component_iff_coboundary() -> Outcome {
    let mut classes = 0;
    for p in [5u32, 11, 13] {
        let f = field(p);
        for n in (1..=16u64).filter(|n| n % p as u64 != 0) {
            for inv in abelian_groups(n) {
                let (_, cs) = abelian_cocycles(&inv, &f);
                for (k, c) in cs.into_iter().enumerate() {
                    ensure(c.satisfies_identity_exhaustive(), || format!("{inv:?}/F{p} class {k}: cocycle identity fails"))?;
                    let trivial = is_coboundary(&c).is_some();
                    let a = TwistedAlgebra::new(c).map_err(|e| e.to_string())?;
                    let dec = decompose_full(&a, k as u64).map_err(|e| e.to_string())?;
                    check_certificates(&a, &dec).map_err(|e| format!("{inv:?}/F{p} class {k}: {e}"))?;
                    let split = dec.signature.count(1, 1) > 0;
                    ensure(split == trivial, || format!("{inv:?}/F{p} class {k}: coboundary {trivial} but (1,1) count {}", dec.signature.count(1, 1)))?;
                    classes += 1;
                }
            }
        }
    }
    Ok(format!("{classes} classes over F5, F11, F13"))
}

/// Cocycle identity, checked on every triple, for every construction path:
/// abelian class representatives, cover cocycles, transgressions, inflations
/// and the Dade cocycle.
pub fn cocycle_identity() -> Outcome {
    let mut count = 0;
    let mut check = |c: &Cocycle, what: &str| -> Result<(), String> {
        count += 1;
        ensure(c.satisfies_identity_exhaustive(), || format!("{what}: cocycle identity fails"))
    };
    for p in [3u32, 5, 7, 11] {
        let f = field(p);
        for n in (1..=32u64).filter(|n| n % p as u64 != 0) {
            for inv in abelian_groups(n) {
                let h2 = AbelianH2::new(&inv, &f);
                if h2.size() > 256 {
                    continue;
                }
                let (_, cs) = abelian_cocycles(&inv, &f);
                for c in &cs {
                    check(c, &format!("{inv:?}/F{p}"))?;
                }
                if n * h2.size() <= 256 {
                    let spec = construct_cover_abelian(&inv, &f).map_err(|e| e.to_string())?;
                    for c in &spec.cocycles {
                        check(c, &format!("cover of {inv:?}/F{p}"))?;
                    }
                }
            }
        }
        let (d8, cs) = d8_transgressed(&f);
        for c in cs.iter().chain(&inflated_ext_classes(&d8, &f)) {
            check(c, &format!("D8/F{p}"))?;
        }
    }
    let params = DadeParams::new(5).map_err(|e| e.to_string())?;
    let factors = build_factors(&params).map_err(|e| e.to_string())?;
    let cover = build_y_g1(&params, &factors).map_err(|e| e.to_string())?;
    let psi = psi_cocycle_g1(&params, &cover, &params.field().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    check(&psi, "ψ on G_1")?;
    Ok(format!("{count} cocycles"))
}

/// A commutative component exists exactly when the class comes from a
/// symmetric class of the abelianization.
pub fn commutative_iff_symmetric() -> Outcome {
    let mut lines = Vec::new();

    // C4 x C4 over F5: G' = 1, so membership is pointwise symmetry up to a coboundary,
    // which for abelian G is read off the commutator form α(g,h)/α(h,g).
    let f = field(5);
    let (g, cs) = abelian_cocycles(&[4, 4], &f);
    let mut hits = 0;
    for (k, c) in cs.iter().enumerate() {
        let symmetric = g.elements().all(|x| g.elements().all(|y| c.value(x, y) == c.value(y, x)));
        let a = TwistedAlgebra::new(c.clone()).map_err(|e| e.to_string())?;
        let sig = decompose(&a, k as u64).map_err(|e| e.to_string())?;
        ensure(sig.has_commutative_component() == symmetric, || format!("C4xC4/F5 class {k}: symmetric {symmetric}, signature {sig}"))?;
        hits += symmetric as u32;
    }
    lines.push(format!("C4xC4/F5 {} classes, {hits} symmetric", cs.len()));

    // D8 over F3: every class is a transgression from the order-64 cover.
    let f = field(3);
    let (d8, cs) = d8_transgressed(&f);
    ensure(cs.len() == 8, || format!("expected 8 classes of H²(D8, F3^*), found {}", cs.len()))?;
    let ext = inflated_ext_classes(&d8, &f);
    let mut hits = 0;
    for (k, c) in cs.iter().enumerate() {
        let member = ext.iter().any(|b| cohomologous(b, c).unwrap());
        let a = TwistedAlgebra::new(c.clone()).map_err(|e| e.to_string())?;
        let sig = decompose(&a, k as u64).map_err(|e| e.to_string())?;
        ensure(sig.has_commutative_component() == member, || format!("D8/F3 class {k}: inflated {member}, signature {sig}"))?;
        hits += member as u32;
    }
    lines.push(format!("D8/F3 8 classes, {hits} inflated"));
    Ok(lines.join("; "))
}

fn oracle_case(a: &TwistedAlgebra, what: &str, seed: u64) -> Result<(), String> {
    let s = decompose(a, seed).map_err(|e| format!("{what}: {e}"))?;
    let o = oracle_signature(a, seed ^ 0x5eed);
    ensure(s == o, || format!("{what}: decompose gives {s}, oracle gives {o}"))
}

/// `decompose` against the from-scratch oracle on every algebra of dimension
/// at most 12 reachable here: all classes over abelian groups, group algebras
/// of the non-abelian groups, and all classes over D_8.
pub fn idempotent_oracle() -> Outcome {
    let mut count = 0;
    for p in [3u32, 5, 7] {
        let f = field(p);
        for n in (1..=12u64).filter(|n| n % p as u64 != 0) {
            for inv in abelian_groups(n) {
                let (_, cs) = abelian_cocycles(&inv, &f);
                for (k, c) in cs.into_iter().enumerate() {
                    let a = TwistedAlgebra::new(c).map_err(|e| e.to_string())?;
                    oracle_case(&a, &format!("{inv:?}/F{p} class {k}"), k as u64)?;
                    count += 1;
                }
            }
        }
        for g in small_nonabelian().into_iter().filter(|g| g.order() % p as usize != 0) {
            let label = g.label().to_string();
            let a = TwistedAlgebra::group_algebra(Arc::new(g), f.clone()).map_err(|e| e.to_string())?;
            oracle_case(&a, &format!("{label}/F{p}"), 0)?;
            count += 1;
        }
        let (_, cs) = d8_transgressed(&f);
        for (k, c) in cs.into_iter().enumerate() {
            let a = TwistedAlgebra::new(c).map_err(|e| e.to_string())?;
            oracle_case(&a, &format!("D8/F{p} class {k}"), k as u64)?;
            count += 1;
        }
    }
    Ok(format!("{count} algebras over F3, F5, F7"))
}

/// `a_i` counted pair by pair: the pairing part has one factor `C_{gcd}` per
/// pair of cyclic factors, at level `min(v_j, v_k, m)`.
fn a_by_pairs(inv: &[u64], p: u64, m: u32) -> Vec<u64> {
    let v: Vec<u32> = inv.iter().map(|&n| valuation(n, p).min(m)).filter(|&v| v > 0).collect();
    let mut a = vec![0u64; m as usize];
    for j in 0..v.len() {
        for k in j + 1..v.len() {
            a[(v[j].min(v[k]) - 1) as usize] += 1;
        }
    }
    a
}

/// b-vectors recovered from a-vectors on every abelian 2- and 3-group of order at most 81.
pub fn b_vector_round_trip() -> Outcome {
    let mut count = 0;
    for p in [2u64, 3] {
        for e in 1..=6u32 {
            let n = p.pow(e);
            if n > 81 {
                break;
            }
            for inv in abelian_groups(n) {
                for m in 1..=e + 1 {
                    let b = b_vector(&inv, p, m);
                    let a = a_vector(&inv, p, m);
                    ensure(a == a_by_pairs(&inv, p, m), || format!("{inv:?}, m = {m}: a = {a:?}, pair count {:?}", a_by_pairs(&inv, p, m)))?;
                    ensure(a_from_b(&b) == a, || format!("{inv:?}: a_from_b disagrees"))?;
                    ensure(b_candidates(&a).contains(&b), || format!("{inv:?}, m = {m}: b missing from candidates"))?;
                    let ext_log = b.iter().enumerate().map(|(i, &x)| (i as u64 + 1) * x).sum();
                    let back = b_from_a(&a, Some(b.iter().sum()), Some(ext_log)).map_err(|e| format!("{inv:?}, m = {m}: {e}"))?;
                    ensure(back == b, || format!("{inv:?}, m = {m}: b = {b:?}, recovered {back:?}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} (group, m) pairs"))
}

/// Tables are built once per (group, field); `None` marks a capped table.
struct Tables(HashMap<(Vec<u64>, u32), Option<SignatureTable>>);

impl Tables {
    fn get(&mut self, inv: &[u64], f: &Arc<FieldDesc>) -> Result<Option<&SignatureTable>, String> {
        let key = (inv.to_vec(), f.p());
        if !self.0.contains_key(&key) {
            let t = match SignatureTable::build(inv, f, 0) {
                Ok(t) => Some(t),
                Err(Error::Cap(_)) => None,
                Err(e) => return Err(e.to_string()),
            };
            self.0.insert(key.clone(), t);
        }
        Ok(self.0[&key].as_ref())
    }
}

/// Decides `G ∼ H` for a pair of the same order, or `None` if a table is capped.
fn related(tables: &mut Tables, g: &[u64], h: &[u64], f: &Arc<FieldDesc>) -> Result<Option<bool>, String> {
    if AbelianH2::new(g, f).invariants() != AbelianH2::new(h, f).invariants() {
        return Ok(Some(false));
    }
    let tg = tables.get(g, f)?.cloned();
    let th = tables.get(h, f)?.cloned();
    Ok(match (tg, th) {
        (Some(tg), Some(th)) => Some(sim_equivalent_tables(&tg, &th).is_equivalent()),
        _ => None,
    })
}

/// Over `F_q` with `exp | q-1`, related abelian groups of order at most 64 are isomorphic.
pub fn split_field_relation_is_isomorphism() -> Outcome {
    let mut tables = Tables(HashMap::new());
    let (mut pairs, mut capped) = (0, 0);
    for n in 2..=64u64 {
        let gs = abelian_groups(n);
        for (i, g) in gs.iter().enumerate() {
            for h in &gs[i + 1..] {
                let e = lcm(exponent_of(g), exponent_of(h));
                for q in primes_one_mod(e, 2) {
                    match related(&mut tables, g, h, &field(q as u32))? {
                        Some(true) => return Err(format!("{g:?} ∼ {h:?} over F{q}")),
                        Some(false) => pairs += 1,
                        None => capped += 1,
                    }
                }
            }
        }
    }
    ensure(capped == 0, || format!("{capped} pairs hit the table cap"))?;
    Ok(format!("{pairs} (pair, field) cases, none related"))
}

/// Related p-groups of order at most p^4 share their largest subgroups of
/// exponent dividing p^m, where p^m is the p-part of q-1.
pub fn exponent_subgroups_agree() -> Outcome {
    let mut tables = Tables(HashMap::new());
    let (mut related_pairs, mut decided, mut capped) = (0, 0, 0);
    for (p, qs) in [(2u64, [3u64, 5, 17]), (3, [7, 19, 37])] {
        for q in qs {
            let f = field(q as u32);
            let m = valuation(q - 1, p);
            for e in 1..=4 {
                let gs = abelian_groups(p.pow(e));
                for (i, g) in gs.iter().enumerate() {
                    for h in &gs[i..] {
                        match related(&mut tables, g, h, &f)? {
                            Some(true) => {
                                related_pairs += 1;
                                let (sg, sh) = (maximal_exp_subgroup(g, p, m), maximal_exp_subgroup(h, p, m));
                                ensure(sg == sh, || format!("{g:?} ∼ {h:?} over F{q} but exponent-{p}^{m} parts {sg:?}, {sh:?}"))?;
                            }
                            Some(false) => {}
                            None => {
                                capped += 1;
                                continue;
                            }
                        }
                        decided += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{decided} pairs, {related_pairs} related, {capped} capped"))
}

/// Every cover of order at most `limit` the constructor builds from an abelian
/// group, over primes below 200 (one field per residue pattern of `q-1`).
/// Checks the algebra identity and surjective transgression; with `criterion`
/// also the four-bullet recognition test.
pub fn abelian_covers(limit: u64, criterion: bool) -> Outcome {
    use tgrip_core::yam::{abelian_multiplier, transgression_surjectivity, verify_cover_algebra, verify_cover_criterion};
    let mut seen = std::collections::BTreeSet::new();
    let mut built = 0;
    for n in 1..=limit {
        for inv in abelian_groups(n) {
            let e = exponent_of(&inv);
            for q in (3..200u64).filter(|&q| is_prime(q) && n % q != 0) {
                if !seen.insert((inv.clone(), gcd(e * e, q - 1))) {
                    continue;
                }
                let f = field(q as u32);
                if n * AbelianH2::new(&inv, &f).size() > limit {
                    continue;
                }
                let spec = construct_cover_abelian(&inv, &f).map_err(|e| format!("{inv:?}/F{q}: {e}"))?;
                if spec.extension.big.order() as u64 > limit {
                    continue;
                }
                let what = format!("cover of {inv:?} over F{q}");
                let alg = verify_cover_algebra(&spec, 0).map_err(|e| format!("{what}: {e}"))?;
                ensure(alg.equal, || format!("{what}: F E = {} but expected {}", alg.cover, alg.expected))?;
                let surj = transgression_surjectivity(&spec.extension, &f).map_err(|e| format!("{what}: {e}"))?;
                ensure(surj, || format!("{what}: transgression is not onto"))?;
                if criterion {
                    let r = verify_cover_criterion(&spec.extension, &f, &abelian_multiplier(&inv)).map_err(|e| format!("{what}: {e}"))?;
                    ensure(r.all(), || format!("{what}: bullets {:?}", r.bullets()))?;
                }
                built += 1;
            }
        }
    }
    Ok(format!("{built} covers of order at most {limit}"))
}
