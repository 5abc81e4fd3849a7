//! 2-cocycles with values in F_q^*, stored as exponents of the field generator.
//!
//! A cocycle `α` is a table `a(g, h)` with `α(g, h) = gen^{a(g, h)}`, so every
//! question about classes becomes linear algebra over Z/(q-1).

use crate::arith::{divisors, gcd, inv_mod, lcm, prime_divisors, valuation};
use crate::error::{cap, Error, Result};
use crate::ff::{FieldDesc, FieldElem};
use crate::grp::{Group, Quotient};
use crate::linalg::{invariant_factors, solve_mod};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::sync::Arc;

/// Largest group on which an explicit class representative is tabulated.
pub const COCYCLE_CAP: usize = 4096;

#[derive(Clone, Debug)]
pub struct Cocycle {
    group: Arc<Group>,
    field: Arc<FieldDesc>,
    table: Vec<u32>,
}

impl Cocycle {
    /// Wraps an exponent table, checking normalization and the cocycle identity.
    pub fn new(group: Arc<Group>, field: Arc<FieldDesc>, table: Vec<u32>) -> Result<Cocycle> {
        let n = group.order();
        if table.len() != n * n {
            return Err(Error::Invalid(format!("cocycle table needs {} entries", n * n)));
        }
        let m = field.units() as u32;
        let c = Cocycle { group, field, table: table.into_iter().map(|x| x % m).collect() };
        if !c.is_normalized() {
            return Err(Error::Invalid("cocycle is not normalized".into()));
        }
        if !c.satisfies_identity() {
            return Err(Error::Invalid("table violates the cocycle identity".into()));
        }
        Ok(c)
    }

    /// Builds a table from a function without checking it.
    pub(crate) fn from_fn_unchecked(group: Arc<Group>, field: Arc<FieldDesc>, f: impl Fn(u32, u32) -> u64) -> Cocycle {
        let n = group.order() as u32;
        let m = field.units();
        let mut table = Vec::with_capacity((n * n) as usize);
        for g in 0..n {
            for h in 0..n {
                table.push((f(g, h) % m) as u32);
            }
        }
        Cocycle { group, field, table }
    }

    pub fn from_fn(group: Arc<Group>, field: Arc<FieldDesc>, f: impl Fn(u32, u32) -> u64) -> Result<Cocycle> {
        let c = Cocycle::from_fn_unchecked(group, field, f);
        Cocycle::new(c.group, c.field, c.table)
    }

    pub fn trivial(group: Arc<Group>, field: Arc<FieldDesc>) -> Cocycle {
        let n = group.order();
        Cocycle { group, field, table: vec![0; n * n] }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }
    pub fn field(&self) -> &Arc<FieldDesc> {
        &self.field
    }
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Exponent `a(g, h)`.
    #[inline]
    pub fn exp(&self, g: u32, h: u32) -> u32 {
        self.table[g as usize * self.group.order() + h as usize]
    }

    pub fn value(&self, g: u32, h: u32) -> FieldElem {
        self.field.gen_pow(self.exp(g, h) as u64)
    }

    fn modulus(&self) -> u64 {
        self.field.units()
    }

    pub fn is_normalized(&self) -> bool {
        self.group.elements().all(|g| self.exp(0, g) == 0 && self.exp(g, 0) == 0)
    }

    /// Checks `a(x,y) + a(xy,k) = a(x,yk) + a(y,k)` for all `x, y` and all
    /// generators `k`. Associativity against a generating set propagates to
    /// all triples by induction on word length, so this is exact.
    pub fn satisfies_identity(&self) -> bool {
        let g = &*self.group;
        let m = self.modulus();
        g.elements().all(|x| {
            g.elements().all(|y| {
                let xy = g.mul(x, y);
                (0..g.num_gens()).all(|j| {
                    let k = g.gens()[j];
                    let yk = g.rmul_gen(y, j);
                    let lhs = self.exp(x, y) as u64 + self.exp(xy, k) as u64;
                    let rhs = self.exp(x, yk) as u64 + self.exp(y, k) as u64;
                    lhs % m == rhs % m
                })
            })
        })
    }

    /// Checks the identity on every triple. Cubic; meant for tests.
    pub fn satisfies_identity_exhaustive(&self) -> bool {
        let g = &*self.group;
        let m = self.modulus();
        g.elements().all(|x| {
            g.elements().all(|y| {
                let xy = g.mul(x, y);
                g.elements().all(|z| {
                    let lhs = self.exp(x, y) as u64 + self.exp(xy, z) as u64;
                    let rhs = self.exp(x, g.mul(y, z)) as u64 + self.exp(y, z) as u64;
                    lhs % m == rhs % m
                })
            })
        })
    }

    fn same_domain(&self, other: &Cocycle) -> Result<()> {
        if !Arc::ptr_eq(&self.group, &other.group) && self.group.order() != other.group.order() {
            return Err(Error::Invalid("cocycles live on different groups".into()));
        }
        if self.field != other.field {
            return Err(Error::Invalid("cocycles take values in different fields".into()));
        }
        Ok(())
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Cocycle) -> Result<Cocycle> {
        self.same_domain(other)?;
        let m = self.modulus();
        let table = self.table.iter().zip(&other.table).map(|(&a, &b)| ((a as u64 + b as u64) % m) as u32).collect();
        Ok(Cocycle { group: self.group.clone(), field: self.field.clone(), table })
    }

    /// Pointwise power, negative exponents allowed.
    pub fn pow(&self, k: i64) -> Cocycle {
        let m = self.modulus() as i128;
        let table = self.table.iter().map(|&a| (a as i128 * k as i128).rem_euclid(m) as u32).collect();
        Cocycle { group: self.group.clone(), field: self.field.clone(), table }
    }

    pub fn inverse(&self) -> Cocycle {
        self.pow(-1)
    }

    /// Largest multiplicative order among the values.
    pub fn pointwise_order(&self) -> u64 {
        let m = self.modulus();
        let g = self.table.iter().fold(m, |acc, &a| gcd(acc, a as u64));
        m / g
    }

    /// `(g, h) -> α(φ(g), φ(h))` for a homomorphism `φ` from `domain` given elementwise.
    pub fn pullback(&self, domain: Arc<Group>, map: &[u32]) -> Cocycle {
        assert_eq!(map.len(), domain.order());
        Cocycle::from_fn_unchecked(domain, self.field.clone(), |g, h| self.exp(map[g as usize], map[h as usize]) as u64)
    }

    /// Coboundary of `f` (exponents, `f(1) = 0`): `f(g) + f(h) - f(gh)`.
    pub fn coboundary(group: Arc<Group>, field: Arc<FieldDesc>, f: &[u32]) -> Cocycle {
        let m = field.units();
        let g2 = group.clone();
        Cocycle::from_fn_unchecked(group, field, move |g, h| {
            (f[g as usize] as u64 + f[h as usize] as u64 + m - f[g2.mul(g, h) as usize] as u64 % m) % m
        })
    }

    /// JSON export: `{group_id, field: {p, k}, table}`.
    pub fn to_json(&self) -> CocycleJson {
        CocycleJson {
            group_id: self.group.label().to_string(),
            field: FieldJson { p: self.field.p(), k: self.field.k() },
            table: self.table.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldJson {
    pub p: u32,
    pub k: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CocycleJson {
    pub group_id: String,
    pub field: FieldJson,
    pub table: Vec<u32>,
}

/// Decides whether `a` is a coboundary; on success returns `f` (exponents)
/// with `a(g, h) = f(g) + f(h) - f(gh)` for all `g, h`.
///
/// A breadth-first spanning tree expresses every `f(x)` as an affine function
/// of the unknowns `f(g_j)`. Each edge `x -> x g_j` yields one equation, and the
/// system over Z/(q-1) is solved by diagonalization. Matching `a` on all
/// pairs `(x, g_j)` forces equality everywhere, because the difference
/// `a - δf` is a normalized cocycle vanishing on `G × {generators}`.
pub fn is_coboundary(a: &Cocycle) -> Option<Vec<u32>> {
    let g = &*a.group;
    let n = g.order();
    let s = g.num_gens();
    let m = a.modulus() as i64;
    if n == 1 {
        return Some(vec![0]);
    }
    // affine expressions: [const, coeff_1..coeff_s]
    let mut expr: Vec<Option<Vec<i64>>> = vec![None; n];
    expr[0] = Some(vec![0; s + 1]);
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut rhs: Vec<i64> = Vec::new();
    let mut queue = VecDeque::from([0u32]);
    let mut push_eq = |lhs: &[i64], other: &[i64]| {
        // lhs - other = 0  ->  coeffs * u = other_const - lhs_const
        let coeffs: Vec<i64> = (1..=s).map(|i| (lhs[i] - other[i]).rem_euclid(m)).collect();
        let c = (other[0] - lhs[0]).rem_euclid(m);
        if coeffs.iter().any(|&x| x != 0) || c != 0 {
            rows.push(coeffs);
            rhs.push(c);
        }
    };
    while let Some(x) = queue.pop_front() {
        let ex = expr[x as usize].clone().unwrap();
        for j in 0..s {
            let y = g.rmul_gen(x, j);
            let mut e = ex.clone();
            e[0] = (e[0] - a.exp(x, g.gens()[j]) as i64).rem_euclid(m);
            e[j + 1] = (e[j + 1] + 1).rem_euclid(m);
            match &expr[y as usize] {
                None => {
                    expr[y as usize] = Some(e);
                    queue.push_back(y);
                }
                Some(prev) => push_eq(prev, &e),
            }
        }
    }
    // f(g_j) must equal the unknown u_j
    for j in 0..s {
        let gj = g.gens()[j] as usize;
        let mut unit = vec![0i64; s + 1];
        unit[j + 1] = 1;
        let prev = expr[gj].clone().unwrap();
        push_eq(&prev, &unit);
    }
    let u = if rows.is_empty() { vec![0; s] } else { solve_mod(&rows, &rhs, m)? };
    let f: Vec<u32> = expr
        .iter()
        .map(|e| {
            let e = e.as_ref().unwrap();
            let v = e[0] as i128 + (0..s).map(|j| e[j + 1] as i128 * u[j] as i128).sum::<i128>();
            v.rem_euclid(m as i128) as u32
        })
        .collect();
    // certify on the generating subsystem
    for x in g.elements() {
        for j in 0..s {
            let k = g.gens()[j];
            let d = (f[x as usize] as i64 + f[k as usize] as i64 - f[g.rmul_gen(x, j) as usize] as i64).rem_euclid(m);
            if d != a.exp(x, k) as i64 {
                return None;
            }
        }
    }
    Some(f)
}

pub fn cohomologous(a: &Cocycle, b: &Cocycle) -> Result<bool> {
    Ok(is_coboundary(&a.mul(&b.inverse())?).is_some())
}

/// Order of the class of `a` in H²(G, F^*).
pub fn class_order(a: &Cocycle) -> u64 {
    let bound = gcd(a.group.order() as u64, a.modulus());
    for d in divisors(bound) {
        if is_coboundary(&a.pow(d as i64)).is_some() {
            return d;
        }
    }
    unreachable!("H² is annihilated by gcd(|G|, q-1)")
}

/// Inflation along a quotient map: `(x, y) -> b(proj x, proj y)`.
pub fn inflation(b: &Cocycle, big: Arc<Group>, proj: &[u32]) -> Cocycle {
    b.pullback(big, proj)
}

/// Central extension `1 -> Z -> E -> G -> 1` with a chosen section.
#[derive(Clone, Debug)]
pub struct CentralExtension {
    pub big: Arc<Group>,
    /// Sorted elements of the central kernel.
    pub kernel: Vec<u32>,
    pub quotient: Arc<Group>,
    pub proj: Vec<u32>,
    pub section: Vec<u32>,
}

impl CentralExtension {
    /// Extension of `big` by the subgroup generated by `kernel_gens`, which
    /// must be central. Uses the smallest-element section.
    pub fn from_kernel(big: Arc<Group>, kernel_gens: &[u32]) -> Result<CentralExtension> {
        let kernel = big.closure(kernel_gens);
        for &z in &kernel {
            if big.gens().iter().any(|&g| big.mul(z, g) != big.mul(g, z)) {
                return Err(Error::Invalid("kernel is not central".into()));
            }
        }
        let Quotient { group, proj, section } = big.quotient(kernel_gens)?;
        Ok(CentralExtension { big, kernel, quotient: Arc::new(group), proj, section })
    }

    pub fn from_parts(big: Arc<Group>, kernel: Vec<u32>, quotient: Arc<Group>, proj: Vec<u32>, section: Vec<u32>) -> Result<CentralExtension> {
        let e = CentralExtension { big, kernel, quotient, proj, section };
        e.validate()?;
        Ok(e)
    }

    pub fn validate(&self) -> Result<()> {
        let b = &*self.big;
        if self.section.first() != Some(&0) {
            return Err(Error::Invalid("section must send 1 to 1".into()));
        }
        for (x, &s) in self.section.iter().enumerate() {
            if self.proj[s as usize] as usize != x {
                return Err(Error::Invalid("section is not a right inverse of the projection".into()));
            }
        }
        for &z in &self.kernel {
            if self.proj[z as usize] != 0 || b.gens().iter().any(|&g| b.mul(z, g) != b.mul(g, z)) {
                return Err(Error::Invalid("kernel is not central or not in the kernel of proj".into()));
            }
        }
        if self.kernel.len() * self.quotient.order() != b.order() {
            return Err(Error::Invalid("|Z| |G| != |E|".into()));
        }
        Ok(())
    }

    /// Same extension with a different section.
    pub fn with_section(&self, section: Vec<u32>) -> Result<CentralExtension> {
        let e = CentralExtension { section, ..self.clone() };
        e.validate()?;
        Ok(e)
    }

    /// Homomorphism Z -> F^* given by exponents on generators of Z, extended
    /// to all of Z. Returns exponents indexed by elements of E (`u32::MAX`
    /// outside Z).
    pub fn character(&self, field: &FieldDesc, gens: &[u32], exps: &[u64]) -> Result<Vec<u32>> {
        let b = &*self.big;
        let m = field.units();
        let mut chi = vec![u32::MAX; b.order()];
        chi[0] = 0;
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for (&g, &e) in gens.iter().zip(exps) {
                let y = b.mul(x, g);
                let v = ((chi[x as usize] as u64 + e) % m) as u32;
                if chi[y as usize] == u32::MAX {
                    chi[y as usize] = v;
                    queue.push_back(y);
                } else if chi[y as usize] != v {
                    return Err(Error::NotHom("character values violate a relation of Z".into()));
                }
            }
        }
        let reached = chi.iter().filter(|&&v| v != u32::MAX).count();
        if reached != self.kernel.len() {
            return Err(Error::Invalid("character generators do not generate Z".into()));
        }
        Ok(chi)
    }

    /// Transgression of `chi`: `(x, y) -> chi(s(x) s(y) s(xy)^{-1})`.
    pub fn transgression(&self, field: Arc<FieldDesc>, chi: &[u32]) -> Cocycle {
        let b = &*self.big;
        let g = &*self.quotient;
        let s = &self.section;
        let sinv: Vec<u32> = s.iter().map(|&x| b.inv(x)).collect();
        Cocycle::from_fn_unchecked(self.quotient.clone(), field, |x, y| {
            let f = b.mul(b.mul(s[x as usize], s[y as usize]), sinv[g.mul(x, y) as usize]);
            let v = chi[f as usize];
            debug_assert!(v != u32::MAX, "section product left the kernel");
            v as u64
        })
    }
}

/// Parameters of a class in H²(G, F^*) for abelian `G = C_{n_1} x ... x C_{n_r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianClassParams {
    /// `e_i` in Z_{gcd(n_i, q-1)}.
    pub ext: Vec<u64>,
    /// `c_ij` in Z_{d(n_i, F)} for `i < j`, in the order (1,2), (1,3), ..., (2,3), ...
    pub pairing: Vec<u64>,
}

impl AbelianClassParams {
    pub fn zero(r: usize) -> AbelianClassParams {
        AbelianClassParams { ext: vec![0; r], pairing: vec![0; r * r.saturating_sub(1) / 2] }
    }

    pub fn is_zero(&self) -> bool {
        self.ext.iter().all(|&e| e == 0) && self.pairing.iter().all(|&c| c == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairing.iter().all(|&c| c == 0)
    }

    /// Descriptor `{ext: [e_i], pairing: [[i, j, c]]}` with 1-based indices.
    pub fn descriptor(&self) -> ClassDescriptor {
        let r = self.ext.len();
        let pairing = pair_list(r)
            .into_iter()
            .zip(&self.pairing)
            .filter(|(_, &c)| c != 0)
            .map(|((i, j), &c)| [i as u64 + 1, j as u64 + 1, c])
            .collect();
        ClassDescriptor { ext: self.ext.clone(), pairing }
    }

    pub fn from_descriptor(d: &ClassDescriptor, r: usize) -> Result<AbelianClassParams> {
        if d.ext.len() != r {
            return Err(Error::Invalid(format!("descriptor needs {r} ext entries")));
        }
        let mut p = AbelianClassParams::zero(r);
        p.ext = d.ext.clone();
        let pairs = pair_list(r);
        for &[i, j, c] in &d.pairing {
            let Some(k) = pairs.iter().position(|&(a, b)| a as u64 + 1 == i && b as u64 + 1 == j) else {
                return Err(Error::Invalid(format!("bad pairing index ({i}, {j})")));
            };
            p.pairing[k] = c;
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDescriptor {
    pub ext: Vec<u64>,
    pub pairing: Vec<[u64; 3]>,
}

/// Index pairs `(i, j)`, `i < j`, in parameter order.
pub fn pair_list(r: usize) -> Vec<(usize, usize)> {
    (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect()
}

/// H²(G, F^*) for an abelian group: Ext part and pairing part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianH2 {
    pub group: Vec<u64>,
    pub q: u64,
    /// gcd(n_i, q-1) for each i.
    pub ext_orders: Vec<u64>,
    /// d(n_i, F) for each pair (i, j).
    pub pairing_orders: Vec<u64>,
}

impl AbelianH2 {
    pub fn new(inv: &[u64], field: &FieldDesc) -> AbelianH2 {
        let r = inv.len();
        let ext_orders = inv.iter().map(|&n| field.power_residue_order(n)).collect();
        let pairing_orders = pair_list(r).into_iter().map(|(i, j)| field.d_value(inv[i], inv[j])).collect();
        AbelianH2 { group: inv.to_vec(), q: field.q() as u64, ext_orders, pairing_orders }
    }

    pub fn size(&self) -> u64 {
        self.ext_orders.iter().chain(&self.pairing_orders).product()
    }

    /// Invariant factors of H².
    pub fn invariants(&self) -> Vec<u64> {
        let all: Vec<u64> = self.ext_orders.iter().chain(&self.pairing_orders).copied().filter(|&x| x > 1).collect();
        invariant_factors(&all)
    }

    /// Cyclic factors, Ext part first, dropping trivial ones.
    pub fn cyclic_factors(&self) -> Vec<u64> {
        self.ext_orders.iter().chain(&self.pairing_orders).copied().filter(|&x| x > 1).collect()
    }

    /// Order of the root of unity carried by the Ext representative for factor `i`:
    /// the part of q-1 supported on the primes dividing gcd(n_i, q-1).
    pub fn ext_root_order(&self, i: usize) -> u64 {
        let q1 = self.q - 1;
        prime_divisors(self.ext_orders[i]).into_iter().map(|l| l.pow(valuation(q1, l))).product()
    }

    /// All classes, lexicographic in (ext, pairing).
    pub fn enumerate(&self) -> Result<Vec<AbelianClassParams>> {
        if self.size() > 1 << 16 {
            return cap(format!("|H²| = {} exceeds 2^16", self.size()));
        }
        let radices: Vec<u64> = self.ext_orders.iter().chain(&self.pairing_orders).copied().collect();
        let r = self.ext_orders.len();
        let mut out = Vec::with_capacity(self.size() as usize);
        let mut digits = vec![0u64; radices.len()];
        loop {
            out.push(AbelianClassParams { ext: digits[..r].to_vec(), pairing: digits[r..].to_vec() });
            let mut i = radices.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < radices[i] {
                    break;
                }
                digits[i] = 0;
            }
        }
    }

    /// One parameter vector per nontrivial cyclic factor, Ext factors first.
    pub fn generators(&self) -> Vec<AbelianClassParams> {
        let r = self.ext_orders.len();
        let mut out = Vec::new();
        for (i, &o) in self.ext_orders.iter().enumerate() {
            if o > 1 {
                let mut p = AbelianClassParams::zero(r);
                p.ext[i] = 1;
                out.push(p);
            }
        }
        for (k, &o) in self.pairing_orders.iter().enumerate() {
            if o > 1 {
                let mut p = AbelianClassParams::zero(r);
                p.pairing[k] = 1;
                out.push(p);
            }
        }
        out
    }

    /// Order of a class, from its parameters.
    pub fn class_order(&self, p: &AbelianClassParams) -> u64 {
        let comp = |e: u64, o: u64| if o <= 1 { 1 } else { o / gcd(e % o, o) };
        let a = p.ext.iter().zip(&self.ext_orders).map(|(&e, &o)| comp(e, o));
        let b = p.pairing.iter().zip(&self.pairing_orders).map(|(&c, &o)| comp(c, o));
        a.chain(b).fold(1, lcm)
    }

    pub fn add(&self, a: &AbelianClassParams, b: &AbelianClassParams) -> AbelianClassParams {
        AbelianClassParams {
            ext: a.ext.iter().zip(&b.ext).zip(&self.ext_orders).map(|((&x, &y), &o)| (x + y) % o).collect(),
            pairing: a.pairing.iter().zip(&b.pairing).zip(&self.pairing_orders).map(|((&x, &y), &o)| (x + y) % o).collect(),
        }
    }

    pub fn scale(&self, a: &AbelianClassParams, k: u64) -> AbelianClassParams {
        AbelianClassParams {
            ext: a.ext.iter().zip(&self.ext_orders).map(|(&x, &o)| x * k % o).collect(),
            pairing: a.pairing.iter().zip(&self.pairing_orders).map(|(&x, &o)| x * k % o).collect(),
        }
    }

    pub fn check(&self, p: &AbelianClassParams) -> Result<()> {
        let ok = p.ext.len() == self.ext_orders.len()
            && p.pairing.len() == self.pairing_orders.len()
            && p.ext.iter().zip(&self.ext_orders).all(|(&e, &o)| e < o)
            && p.pairing.iter().zip(&self.pairing_orders).all(|(&c, &o)| c < o);
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(format!("class parameters {p:?} out of range for {:?}", self)))
        }
    }

    /// Representative cocycle on the canonical abelian group `g`:
    /// `prod_i ζ_i^{e_i carry_i(a, b)} prod_{i<j} ω_i^{c_ij a_i b_j}` where ζ_i
    /// has order [`AbelianH2::ext_root_order`] and ω_i has order d(n_i, F).
    pub fn cocycle(&self, g: &Arc<Group>, field: &Arc<FieldDesc>, p: &AbelianClassParams) -> Result<Cocycle> {
        self.check(p)?;
        if g.order() > COCYCLE_CAP {
            return cap(format!("cocycle table for |G| = {} exceeds |G| <= {COCYCLE_CAP}", g.order()));
        }
        let orders: Vec<u64> = g.presentation().map(|pc| pc.rel_orders.iter().map(|&m| m as u64).collect()).unwrap_or_default();
        if orders != self.group || g.order() as u64 != self.group.iter().product::<u64>() {
            return Err(Error::Invalid("group is not the canonical abelian group for these invariants".into()));
        }
        let q1 = field.units();
        let r = self.group.len();
        let ext_step: Vec<u64> = (0..r).map(|i| q1 / self.ext_root_order(i)).collect();
        let pairs = pair_list(r);
        let pair_step: Vec<u64> = self.pairing_orders.iter().map(|&o| q1 / o).collect();
        let exps: Vec<Vec<u32>> = g.elements().map(|x| g.exponents(x).unwrap_or_default()).collect();
        let inv = self.group.clone();
        let ext = p.ext.clone();
        let pairing = p.pairing.clone();
        Ok(Cocycle::from_fn_unchecked(g.clone(), field.clone(), move |x, y| {
            let (a, b) = (&exps[x as usize], &exps[y as usize]);
            let mut t = 0u64;
            for i in 0..r {
                if ext[i] != 0 && a[i] as u64 + b[i] as u64 >= inv[i] {
                    t += ext[i] * ext_step[i];
                }
            }
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if pairing[k] != 0 {
                    t += pairing[k] * pair_step[k] % q1 * (a[i] as u64 * b[j] as u64 % q1);
                }
            }
            t % q1
        }))
    }

    /// Reads the class of a cocycle on the canonical abelian group from
    /// `u_{x_i}^{n_i}` and the commutators `[u_{x_i}, u_{x_j}]`.
    pub fn identify(&self, c: &Cocycle) -> Result<AbelianClassParams> {
        let g = &**c.group();
        let q1 = c.modulus();
        let r = self.group.len();
        let gens = g.gens();
        let mut ext = vec![0u64; r];
        for i in 0..r {
            let o = self.ext_orders[i];
            if o == 1 {
                continue;
            }
            let x = gens[i];
            let mut s = 0u64;
            let mut xk = x;
            for _ in 1..self.group[i] {
                s += c.exp(xk, x) as u64;
                xk = g.mul(xk, x);
            }
            let step = (q1 / self.ext_root_order(i)) % o;
            let inv = inv_mod(step, o).expect("step is a unit modulo the ext order");
            ext[i] = (s % q1) % o * inv % o;
        }
        let mut pairing = Vec::new();
        for (k, (i, j)) in pair_list(r).into_iter().enumerate() {
            let o = self.pairing_orders[k];
            let t = (c.exp(gens[i], gens[j]) as u64 + q1 - c.exp(gens[j], gens[i]) as u64) % q1;
            let step = q1 / o;
            if t % step != 0 {
                return Err(Error::Invalid("commutator is not a root of the expected order".into()));
            }
            pairing.push(t / step % o);
        }
        Ok(AbelianClassParams { ext, pairing })
    }
}

/// A ⊗ B for finite abelian groups in invariant form.
pub fn tensor_abelian(a: &[u64], b: &[u64]) -> Vec<u64> {
    let cyc: Vec<u64> = a.iter().flat_map(|&x| b.iter().map(move |&y| gcd(x, y))).filter(|&x| x > 1).collect();
    invariant_factors(&cyc)
}

/// M(A × B) = M(A) × M(B) × (A_ab ⊗ B_ab).
pub fn multiplier_direct_product(ma: &[u64], mb: &[u64], a_ab: &[u64], b_ab: &[u64]) -> Vec<u64> {
    let mut all: Vec<u64> = ma.iter().chain(mb).copied().collect();
    all.extend(tensor_abelian(a_ab, b_ab));
    invariant_factors(&all.into_iter().filter(|&x| x > 1).collect::<Vec<_>>())
}

/// Result of [`multiplier_coprime_invariants`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedClasses {
    /// Class order of each supplied generator.
    pub gen_orders: Vec<u64>,
    /// Exponent vectors `(k_i)` with `prod gens_i^{k_i}` fixed by the action.
    pub fixed: Vec<Vec<u64>>,
    /// Invariant factors of the fixed subgroup.
    pub invariants: Vec<u64>,
}

/// Subgroup of `<gens>` ≤ H²(N, F^*) fixed by the automorphism of N that
/// sends the generators of N to `images`.
pub fn multiplier_coprime_invariants(gens: &[Cocycle], images: &[u32]) -> Result<FixedClasses> {
    let Some(first) = gens.first() else {
        return Ok(FixedClasses { gen_orders: vec![], fixed: vec![vec![]], invariants: vec![] });
    };
    let n = first.group().clone();
    let map = n.iso_to(&n, images)?;
    let gen_orders: Vec<u64> = gens.iter().map(class_order).collect();
    let total: u64 = gen_orders.iter().product();
    if total > 1 << 12 {
        return cap("more than 2^12 combinations of multiplier generators");
    }
    let mut fixed = Vec::new();
    let mut fixed_orders = Vec::new();
    for idx in 0..total {
        let mut k = Vec::new();
        let mut rest = idx;
        for &o in gen_orders.iter().rev() {
            k.push(rest % o);
            rest /= o;
        }
        k.reverse();
        let mut c = Cocycle::trivial(n.clone(), first.field().clone());
        for (g, &e) in gens.iter().zip(&k) {
            c = c.mul(&g.pow(e as i64))?;
        }
        let pulled = c.pullback(n.clone(), &map);
        if cohomologous(&pulled, &c)? {
            let ord = k.iter().zip(&gen_orders).map(|(&e, &o)| o / gcd(e, o)).fold(1, lcm);
            fixed_orders.push(ord);
            fixed.push(k);
        }
    }
    let invariants = crate::grp::invariants_from_orders(&fixed_orders);
    Ok(FixedClasses { gen_orders, fixed, invariants })
}

#[cfg(test)]
mod tests;
