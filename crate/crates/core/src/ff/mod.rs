//! Finite fields F_{p^k} with a fixed generator of the unit group.
//!
//! Elements are stored as integer codes `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! where `c_i` are the coefficients of the polynomial representative.

mod poly;

pub use poly::{factor_squarefree, Polynomial};

use crate::arith::{gcd, is_prime, prime_divisors};
use crate::error::{invalid, Result};
use std::collections::HashMap;
use std::fmt;

/// Unit groups up to this size get discrete-log tables.
const TABLE_LIMIT: u64 = 1 << 20;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub fn code(self) -> u32 {
        self.0
    }

    /// Coefficients of the polynomial representative, lowest degree first.
    pub fn coeffs(self, f: &FieldDesc) -> Vec<u32> {
        let mut c = self.0;
        (0..f.k)
            .map(|_| {
                let r = c % f.p;
                c /= f.p;
                r
            })
            .collect()
    }
}

#[derive(Clone)]
pub struct FieldDesc {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    gen: FieldElem,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)?;
        if self.k > 1 {
            write!(f, " (p={}, k={}, modulus={:?})", self.p, self.k, self.modulus)?;
        }
        Ok(())
    }
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}
impl Eq for FieldDesc {}

impl FieldDesc {
    /// Builds F_{p^k}. The modulus is the monic irreducible of degree `k`
    /// with the smallest code, and `gen` is the smallest element code of
    /// full multiplicative order.
    pub fn new(p: u32, k: u32) -> Result<FieldDesc> {
        if !is_prime(p as u64) {
            return invalid(format!("{p} is not prime"));
        }
        if !(1..=8).contains(&k) {
            return invalid(format!("extension degree {k} outside 1..=8"));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= 1 << 31);
        let Some(q) = q else {
            return invalid(format!("{p}^{k} exceeds 2^31"));
        };
        let mut f = FieldDesc {
            p,
            k,
            q: q as u32,
            modulus: vec![0, 1],
            gen: FieldElem(1),
            exp: Vec::new(),
            log: Vec::new(),
        };
        if k > 1 {
            f.modulus = smallest_irreducible(p, k);
        }
        f.gen = f.find_generator();
        if q <= TABLE_LIMIT {
            f.build_tables();
        }
        Ok(f)
    }

    pub fn prime(p: u32) -> Result<FieldDesc> {
        FieldDesc::new(p, 1)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Order of the unit group, q - 1.
    pub fn units(&self) -> u64 {
        self.q as u64 - 1
    }
    /// Monic modulus coefficients over F_p, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn gen(&self) -> FieldElem {
        self.gen
    }
    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }
    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn elem(&self, code: u32) -> FieldElem {
        debug_assert!(code < self.q);
        FieldElem(code)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.k == 1 {
            let s = a.0 + b.0;
            return FieldElem(if s >= self.p { s - self.p } else { s });
        }
        self.digitwise(a, b, |x, y, p| (x + y) % p)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.k == 1 {
            return FieldElem(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 });
        }
        self.digitwise(a, b, |x, y, p| (x + p - y) % p)
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.sub(FieldElem(0), a)
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.k == 1 {
            return FieldElem((a.0 as u64 * b.0 as u64 % self.p as u64) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        if !self.log.is_empty() {
            let e = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % self.units();
            return FieldElem(self.exp[e as usize]);
        }
        self.mul_poly(a, b)
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if a.0 == 0 {
            return None;
        }
        Some(self.pow(a, self.units() - 1))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Option<FieldElem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, mut a: FieldElem, mut e: u64) -> FieldElem {
        if a.0 == 0 {
            return if e == 0 { self.one() } else { a };
        }
        if !self.log.is_empty() {
            let l = self.log[a.0 as usize] as u128 * e as u128 % self.units() as u128;
            return FieldElem(self.exp[l as usize]);
        }
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// `gen^e`, exponent taken modulo q - 1.
    #[inline]
    pub fn gen_pow(&self, e: u64) -> FieldElem {
        let e = e % self.units();
        if !self.exp.is_empty() {
            return FieldElem(self.exp[e as usize]);
        }
        self.pow(self.gen, e)
    }

    /// Discrete logarithm to base `gen`, in `0..q-1`.
    pub fn log(&self, a: FieldElem) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        if !self.log.is_empty() {
            return Some(self.log[a.0 as usize] as u64);
        }
        // baby-step giant-step
        let n = self.units();
        let m = (n as f64).sqrt().ceil() as u64;
        let mut baby = HashMap::with_capacity(m as usize);
        let mut cur = self.one();
        for j in 0..m {
            baby.entry(cur.0).or_insert(j);
            cur = self.mul(cur, self.gen);
        }
        let step = self.inv(self.pow(self.gen, m)).expect("unit");
        let mut y = a;
        for i in 0..=m {
            if let Some(&j) = baby.get(&y.0) {
                return Some((i * m + j) % n);
            }
            y = self.mul(y, step);
        }
        None
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElem) -> u64 {
        assert!(a.0 != 0, "zero has no multiplicative order");
        let mut n = self.units();
        for l in prime_divisors(n) {
            while n % l == 0 && self.pow(a, n / l) == self.one() {
                n /= l;
            }
        }
        n
    }

    /// Element of multiplicative order exactly `n`, namely `gen^((q-1)/n)`.
    pub fn root_of_unity(&self, n: u64) -> Result<FieldElem> {
        if n == 0 || self.units() % n != 0 {
            return invalid(format!("{n} does not divide {}", self.units()));
        }
        Ok(self.gen_pow(self.units() / n))
    }

    /// Exponent `e` with `gen^e` a primitive `n`-th root of unity.
    pub fn root_exponent(&self, n: u64) -> Result<u64> {
        if n == 0 || self.units() % n != 0 {
            return invalid(format!("{n} does not divide {}", self.units()));
        }
        Ok(self.units() / n)
    }

    /// gcd(n, m, q - 1): the largest order of a root of unity in F dividing gcd(n, m).
    pub fn d_value(&self, n: u64, m: u64) -> u64 {
        gcd(gcd(n, m), self.units())
    }

    /// |F*/(F*)^n| = gcd(n, q - 1).
    pub fn power_residue_order(&self, n: u64) -> u64 {
        gcd(n, self.units())
    }

    pub fn frobenius(&self, a: FieldElem) -> FieldElem {
        self.pow(a, self.p as u64)
    }

    fn digitwise(&self, a: FieldElem, b: FieldElem, op: impl Fn(u32, u32, u32) -> u32) -> FieldElem {
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.k {
            out += op(x % self.p, y % self.p, self.p) * place;
            x /= self.p;
            y /= self.p;
            place = place.wrapping_mul(self.p);
        }
        FieldElem(out)
    }

    fn mul_poly(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.p as u64;
        let k = self.k as usize;
        let ca = a.coeffs(self);
        let cb = b.coeffs(self);
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + ca[i] as u64 * cb[j] as u64) % p;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c != 0 {
                for i in 0..k {
                    let sub = c * self.modulus[i] as u64 % p;
                    prod[d - k + i] = (prod[d - k + i] + p - sub) % p;
                }
                prod[d] = 0;
            }
        }
        let mut code = 0u64;
        for i in (0..k).rev() {
            code = code * p + prod[i];
        }
        FieldElem(code as u32)
    }

    fn find_generator(&self) -> FieldElem {
        let n = self.units();
        let ls = prime_divisors(n);
        for c in 1..self.q {
            let a = FieldElem(c);
            if ls.iter().all(|&l| self.pow(a, n / l) != self.one()) {
                return a;
            }
        }
        unreachable!("a finite field has a primitive element")
    }

    fn build_tables(&mut self) {
        let n = self.units() as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![0u32; self.q as usize];
        let mut cur = self.one();
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur.0;
            log[cur.0 as usize] = i as u32;
            cur = if self.k == 1 {
                self.mul(cur, self.gen)
            } else {
                self.mul_poly(cur, self.gen)
            };
        }
        self.exp = exp;
        self.log = log;
    }
}

/// Smallest-code monic irreducible of degree `k` over F_p.
fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let fp = FieldDesc::prime(p).expect("prime");
    let total = (p as u64).pow(k);
    for code in 0..total {
        let mut c = code;
        let mut coeffs: Vec<FieldElem> = (0..k)
            .map(|_| {
                let r = c % p as u64;
                c /= p as u64;
                FieldElem(r as u32)
            })
            .collect();
        coeffs.push(fp.one());
        let f = Polynomial::new(coeffs);
        if f.is_irreducible(&fp) {
            return f.coeffs().iter().map(|e| e.0).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
