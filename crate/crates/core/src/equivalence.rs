//! The relations `Δ_F` and `∼_F` for finite abelian groups over `F_q`.
//!
//! Twisted group algebras are compared through their Wedderburn signatures;
//! over a finite field the signature determines the algebra up to isomorphism.

use crate::arith::{binom2, gcd, valuation};
use crate::coh::{AbelianClassParams, AbelianH2};
use crate::error::{cap, Error, Result};
use crate::ff::FieldDesc;
use crate::grp::Group;
use crate::linalg::invariant_factors;
use crate::tga::TwistedAlgebra;
use crate::wedd::{decompose, WedderburnSignature};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

pub const TABLE_H2_CAP: u64 = 1 << 12;
pub const TABLE_GROUP_CAP: u64 = 256;

/// Signature of every twisted group algebra over an abelian group.
#[derive(Clone, Debug, Serialize)]
pub struct SignatureTable {
    pub h2: AbelianH2,
    pub classes: Vec<AbelianClassParams>,
    pub signatures: Vec<WedderburnSignature>,
}

impl SignatureTable {
    pub fn build(inv: &[u64], field: &Arc<FieldDesc>, seed: u64) -> Result<SignatureTable> {
        let order: u64 = inv.iter().product();
        if order > TABLE_GROUP_CAP {
            return cap(format!("|G| = {order} exceeds {TABLE_GROUP_CAP}"));
        }
        if order % field.p() as u64 == 0 {
            return Err(Error::Modular { p: field.p(), order: order as usize });
        }
        let h2 = AbelianH2::new(inv, field);
        if h2.size() > TABLE_H2_CAP {
            return cap(format!("|H²| = {} exceeds {TABLE_H2_CAP}", h2.size()));
        }
        let g = Arc::new(Group::abelian(inv)?);
        let classes = h2.enumerate()?;
        let signatures = classes
            .par_iter()
            .map(|p| decompose(&TwistedAlgebra::new(h2.cocycle(&g, field, p)?)?, seed))
            .collect::<Result<Vec<_>>>()?;
        Ok(SignatureTable { h2, classes, signatures })
    }

    fn radices(&self) -> Vec<u64> {
        self.h2.ext_orders.iter().chain(&self.h2.pairing_orders).copied().collect()
    }

    /// Position of a class in the enumeration (mixed radix, last parameter fastest).
    pub fn index_of(&self, p: &AbelianClassParams) -> usize {
        let digits = p.ext.iter().chain(&p.pairing);
        digits.zip(self.radices()).fold(0u64, |acc, (&d, r)| acc * r + d % r) as usize
    }

    pub fn get(&self, p: &AbelianClassParams) -> &WedderburnSignature {
        &self.signatures[self.index_of(p)]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    /// Canonical generators of H²(G), one per nontrivial cyclic factor.
    pub generators: Vec<AbelianClassParams>,
    /// Their images in H²(H).
    pub images: Vec<AbelianClassParams>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// H²(G) and H²(H) are not isomorphic.
    Structure { g: Vec<u64>, h: Vec<u64> },
    /// The smallest class order at which the signature histograms differ.
    Histogram { order: u64, g: Vec<(WedderburnSignature, u64)>, h: Vec<(WedderburnSignature, u64)> },
    /// Histograms agree but no isomorphism matches every class.
    NoMatchingIsomorphism { explored: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Equivalent { witness: IsoWitness, explored: u64 },
    NotEquivalent { obstruction: Obstruction },
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent { .. })
    }
}

fn check_semisimple(inv: &[u64], field: &FieldDesc) -> Result<()> {
    let order: u64 = inv.iter().product();
    if order % field.p() as u64 == 0 {
        return Err(Error::Modular { p: field.p(), order: order as usize });
    }
    Ok(())
}

/// `FG ≅ FH`.
pub fn delta_equivalent(g: &[u64], h: &[u64], field: &Arc<FieldDesc>, seed: u64) -> Result<bool> {
    check_semisimple(g, field)?;
    check_semisimple(h, field)?;
    let sig = |inv: &[u64]| -> Result<WedderburnSignature> {
        decompose(&TwistedAlgebra::group_algebra(Arc::new(Group::abelian(inv)?), field.clone())?, seed)
    };
    Ok(sig(g)? == sig(h)?)
}

/// H² as an abstract group on enumeration indices.
struct H2Arith {
    radices: Vec<u64>,
}

impl H2Arith {
    fn digits(&self, mut x: usize) -> Vec<u64> {
        let mut d = vec![0; self.radices.len()];
        for (k, &r) in self.radices.iter().enumerate().rev() {
            d[k] = x as u64 % r;
            x /= r as usize;
        }
        d
    }
    fn index(&self, d: &[u64]) -> usize {
        d.iter().zip(&self.radices).fold(0u64, |acc, (&x, &r)| acc * r + x % r) as usize
    }
    fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.digits(x), self.digits(y));
        let s: Vec<u64> = a.iter().zip(&b).zip(&self.radices).map(|((&u, &v), &r)| (u + v) % r).collect();
        self.index(&s)
    }
    fn order(&self, x: usize) -> u64 {
        self.digits(x).iter().zip(&self.radices).map(|(&d, &r)| r / gcd(d, r)).fold(1, crate::arith::lcm)
    }
}

/// Signature ids of `x, 2x, ..., ord(x) x`.
fn fingerprints(t: &SignatureTable, ar: &H2Arith, ids: &HashMap<&WedderburnSignature, u32>) -> Vec<Vec<u32>> {
    (0..t.len())
        .map(|x| {
            let mut v = Vec::new();
            let mut y = x;
            loop {
                v.push(ids[&t.signatures[y]]);
                if y == 0 {
                    break;
                }
                y = ar.add(y, x);
            }
            v
        })
        .collect()
}

struct Search<'a> {
    tg: &'a SignatureTable,
    th: &'a SignatureTable,
    ag: H2Arith,
    ah: H2Arith,
    gens: Vec<(usize, u64)>,
    cands: Vec<Vec<usize>>,
    span: Vec<(usize, usize)>,
    used: Vec<bool>,
    images: Vec<usize>,
    explored: u64,
}

impl Search<'_> {
    fn run(&mut self, k: usize) -> bool {
        if k == self.gens.len() {
            return true;
        }
        let (g, o) = self.gens[k];
        for ci in 0..self.cands[k].len() {
            let y = self.cands[k][ci];
            self.explored += 1;
            let base = self.span.len();
            let mut ok = true;
            'grow: for s in 0..base {
                let (mut x, mut im) = self.span[s];
                for _ in 1..o {
                    x = self.ag.add(x, g);
                    im = self.ah.add(im, y);
                    if self.used[im] || self.tg.signatures[x] != self.th.signatures[im] {
                        ok = false;
                        break 'grow;
                    }
                    self.used[im] = true;
                    self.span.push((x, im));
                }
            }
            if ok {
                self.images.push(y);
                if self.run(k + 1) {
                    return true;
                }
                self.images.pop();
            }
            for &(_, im) in &self.span[base..] {
                self.used[im] = false;
            }
            self.span.truncate(base);
        }
        false
    }
}

fn histogram(t: &SignatureTable, ar: &H2Arith) -> BTreeMap<u64, BTreeMap<String, (WedderburnSignature, u64)>> {
    let mut m: BTreeMap<u64, BTreeMap<String, (WedderburnSignature, u64)>> = BTreeMap::new();
    for (x, s) in t.signatures.iter().enumerate() {
        let e = m.entry(ar.order(x)).or_default().entry(s.to_string()).or_insert((s.clone(), 0));
        e.1 += 1;
    }
    m
}

/// Decides `G ∼_F H` from two signature tables by exhaustive search over isomorphisms of H².
pub fn sim_equivalent_tables(tg: &SignatureTable, th: &SignatureTable) -> Verdict {
    let (ig, ih) = (tg.h2.invariants(), th.h2.invariants());
    if ig != ih {
        return Verdict::NotEquivalent { obstruction: Obstruction::Structure { g: ig, h: ih } };
    }
    let ag = H2Arith { radices: tg.radices() };
    let ah = H2Arith { radices: th.radices() };
    let mut ids: HashMap<&WedderburnSignature, u32> = HashMap::new();
    for s in tg.signatures.iter().chain(&th.signatures) {
        let n = ids.len() as u32;
        ids.entry(s).or_insert(n);
    }
    let (fg, fh) = (fingerprints(tg, &ag, &ids), fingerprints(th, &ah, &ids));
    let gen_params = tg.h2.generators();
    let gens: Vec<(usize, u64)> = gen_params.iter().map(|p| tg.index_of(p)).map(|x| (x, ag.order(x))).collect();
    let cands: Vec<Vec<usize>> = gens.iter().map(|&(x, _)| (0..th.len()).filter(|&y| fh[y] == fg[x]).collect()).collect();
    let mut used = vec![false; th.len()];
    used[0] = true;
    let mut s = Search { tg, th, ag, ah, gens, cands, span: vec![(0, 0)], used, images: Vec::new(), explored: 0 };
    if tg.signatures[0] == th.signatures[0] && s.run(0) {
        let images = s.images.iter().map(|&y| th.classes[y].clone()).collect();
        return Verdict::Equivalent { witness: IsoWitness { generators: gen_params, images }, explored: s.explored };
    }
    let (hg, hh) = (histogram(tg, &s.ag), histogram(th, &s.ah));
    for (o, a) in &hg {
        let b = hh.get(o).cloned().unwrap_or_default();
        if *a != b {
            return Verdict::NotEquivalent {
                obstruction: Obstruction::Histogram {
                    order: *o,
                    g: a.values().cloned().collect(),
                    h: b.values().cloned().collect(),
                },
            };
        }
    }
    Verdict::NotEquivalent { obstruction: Obstruction::NoMatchingIsomorphism { explored: s.explored } }
}

pub fn sim_equivalent(g: &[u64], h: &[u64], field: &Arc<FieldDesc>, seed: u64) -> Result<Verdict> {
    check_semisimple(g, field)?;
    check_semisimple(h, field)?;
    let (ig, ih) = (AbelianH2::new(g, field).invariants(), AbelianH2::new(h, field).invariants());
    if ig != ih {
        return Ok(Verdict::NotEquivalent { obstruction: Obstruction::Structure { g: ig, h: ih } });
    }
    let tg = SignatureTable::build(g, field, seed)?;
    let th = SignatureTable::build(h, field, seed)?;
    Ok(sim_equivalent_tables(&tg, &th))
}

/// True if the homomorphism given on the canonical generators is an
/// isomorphism H²(G) → H²(H) that preserves every signature.
pub fn check_witness(tg: &SignatureTable, th: &SignatureTable, images: &[AbelianClassParams]) -> bool {
    let gens = tg.h2.generators();
    if gens.len() != images.len() || tg.len() != th.len() {
        return false;
    }
    let mut seen = vec![false; th.len()];
    for (x, p) in tg.classes.iter().enumerate() {
        // class = sum over generators of digit * generator
        let mut im = AbelianClassParams::zero(th.h2.group.len());
        let digits: Vec<u64> = p.ext.iter().chain(&p.pairing).copied().collect();
        let radices = tg.radices();
        let mut gi = 0;
        for (d, r) in digits.iter().zip(&radices) {
            if *r > 1 {
                im = th.h2.add(&im, &th.h2.scale(&images[gi], *d));
                gi += 1;
            }
        }
        let y = th.index_of(&im);
        if seen[y] || tg.signatures[x] != th.signatures[y] {
            return false;
        }
        seen[y] = true;
    }
    gens.iter().zip(images).all(|(g, y)| tg.h2.class_order(g) == th.h2.class_order(y))
}

/// `b_i` counts cyclic factors of order `p^i` (`i < m`) or at least `p^m` (`i = m`);
/// `a_i = C(b_i, 2) + b_i (b_{i+1} + ... + b_m)`.
pub fn b_vector(inv: &[u64], p: u64, m: u32) -> Vec<u64> {
    let mut b = vec![0u64; m as usize];
    for &n in inv {
        let v = valuation(n, p);
        if v >= 1 {
            b[(v.min(m) - 1) as usize] += 1;
        }
    }
    b
}

pub fn a_vector(inv: &[u64], p: u64, m: u32) -> Vec<u64> {
    a_from_b(&b_vector(inv, p, m))
}

pub fn a_from_b(b: &[u64]) -> Vec<u64> {
    (0..b.len()).map(|i| binom2(b[i]) + b[i] * b[i + 1..].iter().sum::<u64>()).collect()
}

/// Every `b` with `a_from_b(b) = a`, solved from the top level down.
///
/// `a` alone does not pin `b` down: where `C(b,2) = 0` and nothing sits above,
/// a level may hold zero or one factor, so e.g. `C_4 x C_2` and `C_2 x C_2`
/// share `a = (1, 0)` at `m = 2`.
pub fn b_candidates(a: &[u64]) -> Vec<Vec<u64>> {
    let mut sols: Vec<Vec<u64>> = vec![Vec::new()];
    for i in (0..a.len()).rev() {
        let mut next = Vec::new();
        for s in &sols {
            let above: u64 = s.iter().sum();
            for b in 0..=a[i] + 2 {
                let v = binom2(b) + b * above;
                if v == a[i] {
                    let mut t = vec![b];
                    t.extend(s);
                    next.push(t);
                }
                if v > a[i] {
                    break;
                }
            }
        }
        sols = next;
    }
    sols
}

/// Inverts [`a_from_b`]. `rank` is the number of factors of order at least
/// `p`; `ext_log` is `log_p |Ext(G, F^*)| = Σ i b_i`, available whenever
/// H² is known alongside the a-vector. Remaining ties go to the smallest total.
pub fn b_from_a(a: &[u64], rank: Option<u64>, ext_log: Option<u64>) -> Result<Vec<u64>> {
    let mut sols = b_candidates(a);
    if let Some(r) = rank {
        sols.retain(|s| s.iter().sum::<u64>() == r);
    }
    if let Some(e) = ext_log {
        sols.retain(|s| s.iter().enumerate().map(|(i, &b)| (i as u64 + 1) * b).sum::<u64>() == e);
    }
    sols.sort_by_key(|s| s.iter().sum::<u64>());
    sols.into_iter().next().ok_or_else(|| Error::Invalid(format!("a-vector {a:?} is not realizable")))
}

/// Invariants of the largest subgroup of exponent dividing `p^m`.
pub fn maximal_exp_subgroup(inv: &[u64], p: u64, m: u32) -> Vec<u64> {
    let pm = p.pow(m);
    invariant_factors(&inv.iter().map(|&n| gcd(n, pm)).filter(|&x| x > 1).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u32) -> Arc<FieldDesc> {
        Arc::new(FieldDesc::prime(p).unwrap())
    }

    #[test]
    fn a_and_b_vectors() {
        assert_eq!(a_vector(&[3, 3], 3, 1), vec![1]);
        assert_eq!(a_vector(&[9], 3, 1), vec![0]);
        assert_eq!(a_vector(&[2, 4, 4], 2, 2), vec![2, 1]);
        assert_eq!(b_from_a(&[2, 1], None, None).unwrap(), vec![1, 2]);
        assert_eq!(b_from_a(&[0, 0], None, None).unwrap(), vec![0, 0]);
        assert_eq!(b_from_a(&[0, 1], None, None).unwrap(), vec![0, 2]);
        assert_eq!(b_from_a(&[0], Some(1), None).unwrap(), vec![1]);
        assert!(b_from_a(&[2], None, None).is_err());
        // C4 x C2 against C2 x C2: same a and rank, told apart by |Ext|
        assert_eq!(b_candidates(&[1, 0]), vec![vec![2, 0], vec![1, 1]]);
        assert_eq!(b_from_a(&[1, 0], Some(2), None).unwrap(), vec![2, 0]);
        assert_eq!(b_from_a(&[1, 0], Some(2), Some(3)).unwrap(), vec![1, 1]);
    }

    #[test]
    fn exponent_subgroups() {
        assert_eq!(maximal_exp_subgroup(&[2, 8], 2, 1), vec![2, 2]);
        assert_eq!(maximal_exp_subgroup(&[4, 4], 2, 1), vec![2, 2]);
        assert_eq!(maximal_exp_subgroup(&[9], 3, 1), vec![3]);
    }

    #[test]
    fn delta_examples() {
        let f17 = field(17);
        assert!(delta_equivalent(&[9], &[3, 3], &f17, 0).unwrap());
        assert!(!delta_equivalent(&[9], &[3, 3], &field(7), 0).unwrap());
        assert!(delta_equivalent(&[2, 4], &[2, 4], &field(5), 0).unwrap());
        assert!(matches!(delta_equivalent(&[3], &[3], &field(3), 0), Err(Error::Modular { .. })));
    }

    #[test]
    fn c9_and_c3xc3_over_f17() {
        let v = sim_equivalent(&[3, 3], &[9], &field(17), 0).unwrap();
        assert!(v.is_equivalent(), "{v:?}");
    }

    #[test]
    fn c2_table_over_f5() {
        let t = SignatureTable::build(&[2], &field(5), 0).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.signatures[0], WedderburnSignature::from_blocks([(1, 1), (1, 1)]));
        assert_eq!(t.signatures[1], WedderburnSignature::from_blocks([(1, 2)]));
        let t = SignatureTable::build(&[4, 4], &field(11), 0).unwrap();
        assert_eq!(t.len(), 8);
    }

    #[test]
    fn prop33_over_f11_fails() {
        let v = sim_equivalent(&[2, 8], &[4, 4], &field(11), 0).unwrap();
        assert!(matches!(v, Verdict::NotEquivalent { obstruction: Obstruction::Histogram { .. } }), "{v:?}");
        let v = sim_equivalent(&[2, 8], &[4, 4], &field(5), 0).unwrap();
        assert!(matches!(v, Verdict::NotEquivalent { obstruction: Obstruction::Structure { .. } }));
    }

    #[test]
    fn f31_example() {
        let f = field(31);
        let tg = SignatureTable::build(&[4, 16], &f, 0).unwrap();
        let th = SignatureTable::build(&[8, 8], &f, 0).unwrap();
        let v = sim_equivalent_tables(&tg, &th);
        let Verdict::Equivalent { witness, .. } = v else { panic!("{v:?}") };
        // generators: ext on C4, ext on C16, pairing
        let p = |e: [u64; 2], c: u64| AbelianClassParams { ext: e.to_vec(), pairing: vec![c] };
        assert_eq!(witness.images, vec![p([0, 1], 0), p([1, 0], 0), p([0, 0], 1)]);
        assert!(check_witness(&tg, &th, &witness.images));
        assert!(!check_witness(&tg, &th, &[p([0, 0], 1), p([1, 0], 0), p([0, 1], 0)]));
    }

    #[test]
    fn isomorphic_groups_are_equivalent() {
        let v = sim_equivalent(&[2, 4], &[2, 4], &field(13), 0).unwrap();
        let Verdict::Equivalent { witness, .. } = v else { panic!() };
        assert_eq!(witness.images, witness.generators);
    }
}
