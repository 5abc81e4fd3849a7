//! Wedderburn decomposition of semisimple twisted group algebras over `F_q`.
//!
//! The centre is split into fields by factoring minimal polynomials of random
//! central elements and lifting the factors to idempotents by CRT. Matrix
//! sizes come from Krylov degrees inside each block, certified by the
//! dimension count and backed by an exact rank computation.

use crate::arith::{gcd, lcm};
use crate::error::{cap, Error, Result};
use crate::ff::{factor_squarefree, Polynomial};
use crate::ff::{FieldDesc, FieldElem};
use crate::linalg::{Echelon, Insert, Mat};
use crate::tga::{AlgElem, ClassSum, TwistedAlgebra};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// One isotypic entry: `mult` copies of `M_n(F_{q^d})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Component {
    pub n: u64,
    pub d: u64,
    pub mult: u64,
}

/// Sorted multiset of `(n, d)` pairs. Components are ordered by `(d, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WedderburnSignature {
    pub dim: u64,
    pub components: Vec<Component>,
}

impl WedderburnSignature {
    pub fn from_blocks(blocks: impl IntoIterator<Item = (u64, u64)>) -> WedderburnSignature {
        let mut m: BTreeMap<(u64, u64), u64> = BTreeMap::new();
        for (n, d) in blocks {
            assert!(n >= 1 && d >= 1, "component sizes are positive");
            *m.entry((d, n)).or_default() += 1;
        }
        Self::from_map(m)
    }

    fn from_map(m: BTreeMap<(u64, u64), u64>) -> WedderburnSignature {
        let components: Vec<Component> = m.into_iter().map(|((d, n), mult)| Component { n, d, mult }).collect();
        let dim = components.iter().map(|c| c.n * c.n * c.d * c.mult).sum();
        WedderburnSignature { dim, components }
    }

    /// Number of simple components.
    pub fn len(&self) -> u64 {
        self.components.iter().map(|c| c.mult).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Multiplicity of `M_n(F_{q^d})`.
    pub fn count(&self, n: u64, d: u64) -> u64 {
        self.components.iter().find(|c| c.n == n && c.d == d).map_or(0, |c| c.mult)
    }

    pub fn has_commutative_component(&self) -> bool {
        self.components.iter().any(|c| c.n == 1)
    }

    /// Degrees of the centre's fields, sorted.
    pub fn center_degrees(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.components.iter().flat_map(|c| std::iter::repeat(c.d).take(c.mult as usize)).collect();
        v.sort_unstable();
        v
    }

    /// Human-readable form such as `4F_3 ⊕ 2M_2(F_9)`.
    pub fn render(&self, q: u64) -> String {
        if self.components.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let fld = match q.checked_pow(c.d as u32).filter(|&s| s < 1 << 32) {
                    Some(s) => format!("F_{s}"),
                    None => format!("F_{q}^{}", c.d),
                };
                let body = if c.n == 1 { fld } else { format!("M_{}({fld})", c.n) };
                if c.mult == 1 { body } else { format!("{}{body}", c.mult) }
            })
            .collect();
        parts.join(" ⊕ ")
    }
}

impl fmt::Display for WedderburnSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| format!("{}x(n={},d={})", c.mult, c.n, c.d)).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `M_n(F_{q^a}) ⊗ M_m(F_{q^b}) = gcd(a,b) M_{nm}(F_{q^{lcm(a,b)}})`, summed over pairs.
pub fn signature_of_tensor(s: &WedderburnSignature, t: &WedderburnSignature) -> WedderburnSignature {
    let mut m: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    for a in &s.components {
        for b in &t.components {
            *m.entry((lcm(a.d, b.d), a.n * b.n)).or_default() += a.mult * b.mult * gcd(a.d, b.d);
        }
    }
    WedderburnSignature::from_map(m)
}

/// A simple component: its central primitive idempotent and `(n, d)`.
#[derive(Clone, Debug)]
pub struct Block {
    pub idempotent: AlgElem,
    pub n: u64,
    pub d: u64,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub signature: WedderburnSignature,
    pub blocks: Vec<Block>,
}

/// Rounds of random central elements before the splitting gives up.
const SPLIT_ROUNDS: usize = 64;
/// Consecutive irreducible draws before a block is considered settled.
const SETTLE: usize = 3;
/// Krylov rounds for the matrix sizes before falling back to ranks.
const KRYLOV_ROUNDS: usize = 4;

/// The centre in class-sum coordinates.
struct Centre<'a> {
    alg: &'a TwistedAlgebra,
    sums: Vec<ClassSum>,
    reps: Vec<u32>,
}

impl<'a> Centre<'a> {
    fn new(alg: &'a TwistedAlgebra) -> Centre<'a> {
        let sums = alg.center_basis();
        let reps = sums.iter().map(|s| s.class.rep).collect();
        Centre { alg, sums, reps }
    }

    fn dim(&self) -> usize {
        self.sums.len()
    }

    fn dense(&self, coords: &[FieldElem]) -> AlgElem {
        let f = self.alg.field();
        let mut out = self.alg.zero();
        for (s, &c) in self.sums.iter().zip(coords) {
            if c.0 == 0 {
                continue;
            }
            for &m in &s.class.members {
                let m = m as usize;
                out[m] = f.add(out[m], f.mul(c, s.elem[m]));
            }
        }
        out
    }

    /// Coordinates of `x y` for central `x`, `y`; each `S_k` has coefficient 1 at its representative.
    fn product(&self, x: &AlgElem, y: &AlgElem) -> Vec<FieldElem> {
        let a = self.alg;
        let g = a.group();
        let f = a.field();
        let ys: Vec<(u32, u32, FieldElem)> =
            y.iter().enumerate().filter(|(_, c)| c.0 != 0).map(|(h, &c)| (h as u32, g.inv(h as u32), c)).collect();
        let prime = f.is_prime_field();
        let p = f.p() as u64;
        self.reps
            .iter()
            .map(|&r| {
                if prime {
                    let mut acc = 0u64;
                    for &(h, hi, yh) in &ys {
                        let b = g.mul(r, hi);
                        let xb = x[b as usize].0 as u64;
                        if xb != 0 {
                            acc = (acc + xb * yh.0 as u64 % p * a.alpha(b, h).0 as u64) % p;
                        }
                    }
                    return FieldElem(acc as u32);
                }
                let mut acc = FieldElem(0);
                for &(h, hi, yh) in &ys {
                    let b = g.mul(r, hi);
                    let xb = x[b as usize];
                    if xb.0 != 0 {
                        acc = f.add(acc, f.mul(f.mul(xb, yh), a.alpha(b, h)));
                    }
                }
                acc
            })
            .collect()
    }

    fn one(&self) -> Vec<FieldElem> {
        let mut v = vec![FieldElem(0); self.dim()];
        let k = self.reps.iter().position(|&r| r == 0).expect("identity class is always regular");
        v[k] = self.alg.field().one();
        v
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> Vec<FieldElem> {
        let q = self.alg.field().q();
        (0..self.dim()).map(|_| FieldElem(rng.gen_range(0..q))).collect()
    }
}

/// Minimal polynomial of the operator `step` on `start` by Krylov iteration,
/// with the Krylov vectors `start, step(start), ...` below its degree.
fn krylov_minpoly(
    f: &FieldDesc,
    start: Vec<FieldElem>,
    max_deg: usize,
    mut step: impl FnMut(&[FieldElem]) -> Vec<FieldElem>,
) -> (Polynomial, Vec<Vec<FieldElem>>) {
    let mut ech = Echelon::new(start.len());
    let mut seq = Vec::new();
    let mut v = start;
    for _ in 0..=max_deg {
        match ech.insert(f, &v) {
            Insert::Added => {
                let next = step(&v);
                seq.push(std::mem::replace(&mut v, next));
            }
            Insert::Dependent(comb) => {
                let mut c: Vec<FieldElem> = comb.iter().map(|&x| f.neg(x)).collect();
                c.push(f.one());
                return (Polynomial::new(c), seq);
            }
        }
    }
    unreachable!("Krylov sequence longer than the ambient dimension")
}

/// `p(x) e` from the Krylov vectors `x^j e`; `p` has degree below their count.
fn combine(f: &FieldDesc, p: &Polynomial, seq: &[Vec<FieldElem>]) -> Vec<FieldElem> {
    let mut v = vec![FieldElem(0); seq[0].len()];
    for (&a, w) in p.coeffs().iter().zip(seq) {
        if a.0 != 0 {
            crate::linalg::axpy(f, &mut v, w, a);
        }
    }
    v
}

struct CentreBlock {
    e: Vec<FieldElem>,
    deg: usize,
    streak: usize,
}

/// Splits the centre into fields; returns the idempotents (coordinates) with their degrees.
fn split_centre(c: &Centre, rng: &mut ChaCha8Rng) -> Result<Vec<(Vec<FieldElem>, usize)>> {
    let f = c.alg.field();
    let total = c.dim();
    let mut pending = vec![CentreBlock { e: c.one(), deg: 0, streak: 0 }];
    let mut settled: Vec<CentreBlock> = Vec::new();
    for _round in 0..SPLIT_ROUNDS {
        while let Some(mut b) = pending.pop() {
            let r = c.dense(&c.random(rng));
            let (mu, seq) = krylov_minpoly(f, b.e.clone(), total, |v| c.product(&r, &c.dense(v)));
            if mu.gcd(f, &mu.derivative(f)).deg() != 0 {
                return Err(Error::NotSemisimple);
            }
            let factors = factor_squarefree(&mu, f, rng.gen())?;
            if factors.len() == 1 {
                b.deg = b.deg.max(mu.deg());
                b.streak += 1;
                if b.streak >= SETTLE { settled.push(b) } else { pending.push(b) }
                continue;
            }
            // The Krylov relation mu(r) e = 0 is exact. With mu the product of the
            // coprime factors, h_i = 1 mod f_i and h_i = 0 mod f_j (j != i) give
            // orthogonal idempotents summing to e by CRT.
            let mut prod = Polynomial::constant(f.one());
            for fi in &factors {
                prod = prod.mul(f, fi);
            }
            if prod != mu.monic(f) {
                return Err(Error::Inconsistent("factorization does not multiply back".into()));
            }
            let one = Polynomial::constant(f.one());
            let mut hs = Vec::with_capacity(factors.len());
            for (i, fi) in factors.iter().enumerate() {
                let (co, _) = mu.divrem(f, fi);
                let inv = co.inv_mod(f, fi).expect("coprime cofactor");
                let h = co.mul(f, &inv).rem(f, &mu);
                for (j, fj) in factors.iter().enumerate() {
                    let r = h.rem(f, fj);
                    if (i == j && r != one) || (i != j && !r.is_zero()) {
                        return Err(Error::Inconsistent("CRT interpolant has the wrong residues".into()));
                    }
                }
                hs.push(h);
            }
            let children: Vec<Vec<FieldElem>> = hs.iter().map(|h| combine(f, h, &seq)).collect();
            pending.extend(children.into_iter().map(|e| CentreBlock { e, deg: 0, streak: 0 }));
        }
        // Each degree is at most its block dimension and the dimensions sum to dim Z.
        if settled.iter().map(|b| b.deg).sum::<usize>() == total {
            return Ok(settled.into_iter().map(|b| (b.e, b.deg)).collect());
        }
        for b in settled.iter_mut() {
            b.streak = SETTLE - 1;
        }
        pending = std::mem::take(&mut settled);
    }
    Err(Error::Inconsistent("centre splitting did not converge".into()))
}

fn rank_of_left_mult(alg: &TwistedAlgebra, e: &AlgElem) -> usize {
    let rows: Vec<AlgElem> = alg.group().elements().map(|g| alg.mul_basis_right(e, g)).collect();
    Mat::from_rows(&rows).rank(alg.field())
}

fn isqrt(x: u64) -> Option<u64> {
    let r = (x as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&s| s * s == x)
}

/// Full decomposition with central primitive idempotents.
pub fn decompose_full(alg: &TwistedAlgebra, seed: u64) -> Result<Decomposition> {
    alg.assert_semisimple()?;
    if alg.dim() > crate::tga::ALGEBRA_CAP {
        return cap(format!("algebra dimension {} exceeds cap", alg.dim()));
    }
    let f = alg.field();
    let n_total = alg.dim() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centre = Centre::new(alg);
    let mut parts = split_centre(&centre, &mut rng)?;
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    let idems: Vec<AlgElem> = parts.iter().map(|(e, _)| centre.dense(e)).collect();
    let mut sum = alg.zero();
    for (e, (coords, _)) in idems.iter().zip(&parts) {
        if centre.product(e, e) != *coords {
            return Err(Error::Inconsistent("block element is not idempotent".into()));
        }
        sum = alg.add(&sum, e);
        if !alg.is_central(e) {
            return Err(Error::Inconsistent("idempotent is not central".into()));
        }
    }
    if sum != alg.one() {
        return Err(Error::Inconsistent("idempotents do not sum to one".into()));
    }
    let degs: Vec<u64> = parts.iter().map(|p| p.1 as u64).collect();

    // Krylov lower bounds: a random a in e A has minimal polynomial of degree at most n d.
    let mut ns = vec![1u64; idems.len()];
    let mut certified = false;
    for _ in 0..KRYLOV_ROUNDS {
        for (i, e) in idems.iter().enumerate() {
            let x: AlgElem = (0..alg.dim()).map(|_| FieldElem(rng.gen_range(0..f.q()))).collect();
            let a = alg.multiply(e, &x);
            let k = krylov_minpoly(f, e.clone(), alg.dim(), |v| alg.multiply(&a, &v.to_vec())).0.deg() as u64;
            ns[i] = ns[i].max(k.div_ceil(degs[i]));
        }
        if ns.iter().zip(&degs).map(|(n, d)| n * n * d).sum::<u64>() == n_total {
            certified = true;
            break;
        }
    }
    if !certified {
        for (i, e) in idems.iter().enumerate() {
            let r = rank_of_left_mult(alg, e) as u64;
            ns[i] = (r % degs[i] == 0).then(|| isqrt(r / degs[i])).flatten().ok_or(Error::NotSemisimple)?;
        }
        if ns.iter().zip(&degs).map(|(n, d)| n * n * d).sum::<u64>() != n_total {
            return Err(Error::Inconsistent("component dimensions do not add up".into()));
        }
    }
    let blocks: Vec<Block> =
        idems.into_iter().zip(ns.iter().zip(&degs)).map(|(idempotent, (&n, &d))| Block { idempotent, n, d }).collect();
    let signature = WedderburnSignature::from_blocks(blocks.iter().map(|b| (b.n, b.d)));
    Ok(Decomposition { signature, blocks })
}

pub fn decompose(alg: &TwistedAlgebra, seed: u64) -> Result<WedderburnSignature> {
    Ok(decompose_full(alg, seed)?.signature)
}

pub fn has_commutative_component(alg: &TwistedAlgebra, seed: u64) -> Result<bool> {
    Ok(decompose(alg, seed)?.has_commutative_component())
}

/// Degrees of the fields in the centre, without computing matrix sizes.
pub fn center_signature(alg: &TwistedAlgebra, seed: u64) -> Result<Vec<u64>> {
    alg.assert_semisimple()?;
    let centre = Centre::new(alg);
    let mut d: Vec<u64> = split_centre(&centre, &mut ChaCha8Rng::seed_from_u64(seed))?.into_iter().map(|p| p.1 as u64).collect();
    d.sort_unstable();
    Ok(d)
}

#[cfg(test)]
mod tests;
