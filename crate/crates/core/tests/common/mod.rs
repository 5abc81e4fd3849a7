//! Shared fixtures and independent oracles for the integration suites.
#![allow(dead_code)]

pub mod suites;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;
use tgrip_core::arith::{gcd, is_prime};
use tgrip_core::coh::{cohomologous, inflation, AbelianH2, CentralExtension, Cocycle};
use tgrip_core::ff::{FieldDesc, FieldElem};
use tgrip_core::grp::{Group, PcPresentation};
use tgrip_core::linalg::Mat;
use tgrip_core::tga::{AlgElem, TwistedAlgebra};
use tgrip_core::wedd::{Decomposition, WedderburnSignature};
use tgrip_core::yam::d8_extensions;

pub fn field(p: u32) -> Arc<FieldDesc> {
    Arc::new(FieldDesc::prime(p).unwrap())
}

/// Invariant factor lists `n_1 | n_2 | ... | n_r` with product `n`.
pub fn abelian_groups(n: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, last: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(cur.clone());
            return;
        }
        // next factor is a multiple of `last` dividing `rest`, and every later one is a multiple of it
        for k in (last.max(2)..=rest).filter(|k| rest % k == 0 && k % last == 0) {
            let after = rest / k;
            if after != 1 && after % k != 0 {
                continue;
            }
            cur.push(k);
            go(after, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

pub fn primes_one_mod(m: u64, count: usize) -> Vec<u64> {
    (2..).filter(|&q| is_prime(q) && (q - 1) % m == 0).take(count).collect()
}

fn pc(text: &str, label: &str) -> Group {
    Group::from_pc(&PcPresentation::parse(text).unwrap()).unwrap().with_label(label)
}

/// Non-abelian groups of order at most 12.
pub fn small_nonabelian() -> Vec<Group> {
    vec![
        pc("gen b order 2\ngen a order 3\nconj a b = a^2\n", "S3"),
        pc("gen b order 2\ngen a order 4\nconj a b = a^3\n", "D8"),
        pc("gen b order 2\ngen a order 4\npow b = a^2\nconj a b = a^3\n", "Q8"),
        pc("gen b order 2\ngen a order 5\nconj a b = a^4\n", "D10"),
        pc("gen b order 2\ngen a order 6\nconj a b = a^5\n", "D12"),
        pc("gen b order 2\ngen a order 6\npow b = a^3\nconj a b = a^5\n", "Q12"),
        pc("gen c order 3\ngen x order 2\ngen y order 2\nconj x c = y\nconj y c = x y\n", "A4"),
    ]
}

/// Every class of H²(G, F^*) for abelian `G`, as a cocycle.
pub fn abelian_cocycles(inv: &[u64], f: &Arc<FieldDesc>) -> (Arc<Group>, Vec<Cocycle>) {
    if inv.is_empty() {
        let g = Arc::new(Group::trivial());
        return (g.clone(), vec![Cocycle::trivial(g, f.clone())]);
    }
    let g = Arc::new(Group::abelian(inv).unwrap());
    let h2 = AbelianH2::new(inv, f);
    let cs = h2.enumerate().unwrap().iter().map(|p| h2.cocycle(&g, f, p).unwrap()).collect();
    (g, cs)
}

/// Characters of the kernel of `ext` into `F^*`, each extended to all of the big group.
pub fn kernel_characters(ext: &CentralExtension, f: &FieldDesc) -> Vec<Vec<u32>> {
    let (orders, gens) = ext.big.abelian_basis(&ext.kernel);
    let m = f.units();
    let mut exps: Vec<Vec<u64>> = vec![vec![]];
    for &o in &orders {
        let step = m / gcd(o, m);
        exps = exps.into_iter().flat_map(|v| (0..gcd(o, m)).map(move |k| [v.clone(), vec![k * step]].concat())).collect();
    }
    exps.iter().map(|e| ext.character(f, &gens, e).unwrap()).collect()
}

/// Drops cohomologous duplicates.
pub fn distinct_classes(cs: Vec<Cocycle>) -> Vec<Cocycle> {
    let mut out: Vec<Cocycle> = Vec::new();
    for c in cs {
        if !out.iter().any(|d| cohomologous(d, &c).unwrap()) {
            out.push(c);
        }
    }
    out
}

/// D_8 as the quotient of the order-64 cover, with every class of H²(D_8, F^*)
/// that arises by transgression from that cover.
pub fn d8_transgressed(f: &Arc<FieldDesc>) -> (Arc<Group>, Vec<Cocycle>) {
    let (ext, _) = d8_extensions().unwrap();
    let cs = kernel_characters(&ext, f).iter().map(|chi| ext.transgression(f.clone(), chi)).collect();
    (ext.quotient.clone(), distinct_classes(cs))
}

/// Projection `G -> G/G'` composed with an isomorphism onto the canonical
/// abelian group, found by search over generator images.
pub fn abelianization_map(g: &Group) -> (Vec<u64>, Arc<Group>, Vec<u32>) {
    let (inv, q) = g.abelianization().unwrap();
    let a = Group::abelian(&inv).unwrap();
    let k = q.group.num_gens();
    let n = a.order() as u64;
    let iso = (0..n.pow(k as u32))
        .find_map(|mut code| {
            let imgs: Vec<u32> = (0..k)
                .map(|_| {
                    let x = (code % n) as u32;
                    code /= n;
                    x
                })
                .collect();
            q.group.iso_to(&a, &imgs).ok()
        })
        .expect("abelianization is isomorphic to its invariant form");
    let proj = q.proj.iter().map(|&x| iso[x as usize]).collect();
    (inv, Arc::new(a), proj)
}

/// Symmetric classes of the abelianization, inflated to `g`.
pub fn inflated_ext_classes(g: &Arc<Group>, f: &Arc<FieldDesc>) -> Vec<Cocycle> {
    let (inv, a, proj) = abelianization_map(g);
    let h2 = AbelianH2::new(&inv, f);
    h2.enumerate()
        .unwrap()
        .iter()
        .filter(|p| p.is_symmetric())
        .map(|p| {
            let b = h2.cocycle(&a, f, p).unwrap();
            assert!(a.elements().all(|x| a.elements().all(|y| b.value(x, y) == b.value(y, x))));
            inflation(&b, g.clone(), &proj)
        })
        .collect()
}

fn rank(f: &FieldDesc, vs: &[AlgElem]) -> usize {
    if vs.is_empty() {
        0
    } else {
        Mat::from_rows(vs).rank(f)
    }
}

fn basis_of(f: &FieldDesc, vs: Vec<AlgElem>) -> Vec<AlgElem> {
    if vs.is_empty() {
        return vs;
    }
    let mut m = Mat::from_rows(&vs);
    let r = m.rref(f).len();
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

fn power(a: &TwistedAlgebra, x: &AlgElem, e: u64) -> AlgElem {
    let mut r = a.one();
    for _ in 0..e {
        r = a.multiply(&r, x);
    }
    r
}

fn combine(f: &FieldDesc, basis: &[AlgElem], c: &[FieldElem]) -> AlgElem {
    let mut out = vec![f.zero(); basis[0].len()];
    for (b, &k) in basis.iter().zip(c) {
        for (o, &v) in out.iter_mut().zip(b) {
            *o = f.add(*o, f.mul(k, v));
        }
    }
    out
}

/// Center computed as the joint kernel of `x -> x u_g - u_g x` over group generators.
pub fn center_by_commutators(a: &TwistedAlgebra) -> Vec<AlgElem> {
    let f = a.field();
    let g = a.group();
    let n = a.dim();
    if g.gens().is_empty() {
        return (0..n as u32).map(|x| a.basis(x)).collect();
    }
    let cols: Vec<AlgElem> = (0..n as u32)
        .map(|h| {
            let uh = a.basis(h);
            g.gens()
                .iter()
                .flat_map(|&s| {
                    let us = a.basis(s);
                    let l = a.multiply(&uh, &us);
                    let r = a.multiply(&us, &uh);
                    l.into_iter().zip(r).map(|(x, y)| f.sub(x, y)).collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    let rows: Vec<AlgElem> = (0..cols[0].len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    Mat::from_rows(&rows).kernel(f)
}

/// Wedderburn signature from scratch: the Frobenius-fixed part `Z_0` of the
/// center is a product of copies of `F`, split by idempotents `x^{q-1}` of
/// random elements until every piece is one-dimensional. When `Z_0` is small
/// enough it is also enumerated outright and its idempotents counted.
/// Only prime fields.
pub fn oracle_signature(a: &TwistedAlgebra, seed: u64) -> WedderburnSignature {
    let f = a.field();
    assert!(f.is_prime_field());
    let q = f.q() as u64;
    let z = center_by_commutators(a);
    let moved: Vec<AlgElem> = z
        .iter()
        .map(|x| power(a, x, q).into_iter().zip(x).map(|(y, &v)| f.sub(y, v)).collect())
        .collect();
    let rows: Vec<AlgElem> = (0..a.dim()).map(|i| moved.iter().map(|m| m[i]).collect()).collect();
    let z0: Vec<AlgElem> = Mat::from_rows(&rows).kernel(f).iter().map(|c| combine(f, &z, c)).collect();
    let s = z0.len();

    if (q as f64).powi(s as i32) <= 20000.0 {
        let mut idem = 0u64;
        let mut c = vec![f.zero(); s];
        loop {
            let x = combine(f, &z0, &c);
            if a.multiply(&x, &x) == x {
                idem += 1;
            }
            let mut i = 0;
            while i < s && c[i].0 as u64 == q - 1 {
                c[i] = f.zero();
                i += 1;
            }
            if i == s {
                break;
            }
            c[i] = f.elem(c[i].0 + 1);
        }
        assert_eq!(idem, 1 << s, "central idempotent count");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pieces = vec![(a.one(), z0)];
    let mut primitive = Vec::new();
    while let Some((e, basis)) = pieces.pop() {
        if basis.len() == 1 {
            primitive.push(e);
            continue;
        }
        let c: Vec<FieldElem> = (0..basis.len()).map(|_| f.elem(rng.gen_range(0..q as u32))).collect();
        let x = combine(f, &basis, &c);
        let e1 = power(a, &x, q - 1);
        if e1 == a.zero() || e1 == e {
            pieces.push((e, basis));
            continue;
        }
        let e2: AlgElem = e.iter().zip(&e1).map(|(&u, &v)| f.sub(u, v)).collect();
        for part in [e1, e2] {
            let b = basis_of(f, basis.iter().map(|y| a.multiply(&part, y)).collect());
            pieces.push((part, b));
        }
    }
    let blocks = primitive.iter().map(|e| {
        let d = rank(f, &z.iter().map(|y| a.multiply(e, y)).collect::<Vec<_>>()) as u64;
        let full = rank(f, &(0..a.dim() as u32).map(|g| a.mul_basis_right(e, g)).collect::<Vec<_>>()) as u64;
        assert_eq!(full % d, 0);
        let n = ((full / d) as f64).sqrt().round() as u64;
        assert_eq!(n * n * d, full, "block dimension is not n²d");
        (n, d)
    });
    WedderburnSignature::from_blocks(blocks.collect::<Vec<_>>())
}

/// Exact checks on a computed decomposition: idempotents orthogonal, central,
/// summing to one, `dim e_i A = n_i² d_i`, `dim e_i Z = d_i`, and `Σ n² d = dim`.
pub fn check_certificates(a: &TwistedAlgebra, dec: &Decomposition) -> Result<(), String> {
    let f = a.field();
    let sig = &dec.signature;
    let total: u64 = sig.components.iter().map(|c| c.n * c.n * c.d * c.mult).sum();
    if total != a.dim() as u64 || sig.dim != a.dim() as u64 {
        return Err(format!("Σ n²d = {total} but dim = {}", a.dim()));
    }
    let mut sum = a.zero();
    let z = center_by_commutators(a);
    for (i, b) in dec.blocks.iter().enumerate() {
        let e = &b.idempotent;
        if a.multiply(e, e) != *e {
            return Err(format!("block {i} is not idempotent"));
        }
        if !a.is_central(e) {
            return Err(format!("block {i} is not central"));
        }
        for (j, c) in dec.blocks.iter().enumerate().skip(i + 1) {
            if a.multiply(e, &c.idempotent) != a.zero() {
                return Err(format!("blocks {i} and {j} are not orthogonal"));
            }
        }
        let d = rank(f, &z.iter().map(|y| a.multiply(e, y)).collect::<Vec<_>>()) as u64;
        let full = rank(f, &(0..a.dim() as u32).map(|g| a.mul_basis_right(e, g)).collect::<Vec<_>>()) as u64;
        if d != b.d || full != b.n * b.n * b.d {
            return Err(format!("block {i}: claimed (n, d) = ({}, {}), ranks give d = {d}, dim = {full}", b.n, b.d));
        }
        sum = a.add(&sum, e);
    }
    if sum != a.one() {
        return Err("idempotents do not sum to 1".into());
    }
    Ok(())
}

/// Frobenius orbit sizes on an abelian group: `g -> g^q`. The group algebra
/// `F_q G` has one field component of degree `k` per orbit of size `k`.
pub fn frobenius_orbits(inv: &[u64], q: u64) -> BTreeMap<u64, u64> {
    let g = Group::abelian(inv).unwrap();
    let mut seen = vec![false; g.order()];
    let mut out = BTreeMap::new();
    for x in g.elements() {
        if seen[x as usize] {
            continue;
        }
        let mut y = x;
        let mut k = 0;
        loop {
            seen[y as usize] = true;
            y = g.pow(y, q as i64);
            k += 1;
            if y == x {
                break;
            }
        }
        *out.entry(k).or_default() += 1;
    }
    out
}
