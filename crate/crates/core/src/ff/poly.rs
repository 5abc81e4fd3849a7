use super::{FieldDesc, FieldElem};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Univariate polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    c: Vec<FieldElem>,
}

impl Polynomial {
    pub fn new(mut c: Vec<FieldElem>) -> Polynomial {
        while c.last() == Some(&FieldElem(0)) {
            c.pop();
        }
        Polynomial { c }
    }

    pub fn zero() -> Polynomial {
        Polynomial { c: Vec::new() }
    }

    pub fn constant(a: FieldElem) -> Polynomial {
        Polynomial::new(vec![a])
    }

    /// The monomial `x`.
    pub fn x() -> Polynomial {
        Polynomial { c: vec![FieldElem(0), FieldElem(1)] }
    }

    /// Builds from integer coefficients reduced into the prime subfield.
    pub fn from_ints(f: &FieldDesc, c: &[i64]) -> Polynomial {
        Polynomial::new(c.iter().map(|&v| f.from_int(v)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> FieldElem {
        self.c.last().copied().unwrap_or(FieldElem(0))
    }

    pub fn monic(&self, f: &FieldDesc) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let li = f.inv(self.lead()).expect("nonzero lead");
        self.scale(f, li)
    }

    pub fn scale(&self, f: &FieldDesc, a: FieldElem) -> Polynomial {
        Polynomial::new(self.c.iter().map(|&x| f.mul(x, a)).collect())
    }

    pub fn add(&self, f: &FieldDesc, o: &Polynomial) -> Polynomial {
        let n = self.c.len().max(o.c.len());
        let z = FieldElem(0);
        Polynomial::new(
            (0..n)
                .map(|i| f.add(*self.c.get(i).unwrap_or(&z), *o.c.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn sub(&self, f: &FieldDesc, o: &Polynomial) -> Polynomial {
        let n = self.c.len().max(o.c.len());
        let z = FieldElem(0);
        Polynomial::new(
            (0..n)
                .map(|i| f.sub(*self.c.get(i).unwrap_or(&z), *o.c.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn mul(&self, f: &FieldDesc, o: &Polynomial) -> Polynomial {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![FieldElem(0); self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.0 == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Polynomial::new(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, f: &FieldDesc, d: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.c.len() < d.c.len() {
            return (Polynomial::zero(), self.clone());
        }
        let li = f.inv(d.lead()).expect("nonzero lead");
        let dd = d.c.len() - 1;
        let mut r = self.c.clone();
        let mut quo = vec![FieldElem(0); r.len() - dd];
        for i in (0..quo.len()).rev() {
            let c = f.mul(r[i + dd], li);
            quo[i] = c;
            if c.0 != 0 {
                for (j, &dj) in d.c.iter().enumerate() {
                    r[i + j] = f.sub(r[i + j], f.mul(c, dj));
                }
            }
        }
        r.truncate(dd);
        (Polynomial::new(quo), Polynomial::new(r))
    }

    pub fn rem(&self, f: &FieldDesc, d: &Polynomial) -> Polynomial {
        self.divrem(f, d).1
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, f: &FieldDesc, o: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Inverse modulo `m` by the extended Euclidean algorithm, if it exists.
    pub fn inv_mod(&self, f: &FieldDesc, m: &Polynomial) -> Option<Polynomial> {
        let (mut r0, mut r1) = (m.clone(), self.rem(f, m));
        let (mut s0, mut s1) = (Polynomial::zero(), Polynomial::constant(f.one()));
        while !r1.is_zero() {
            let (qt, r) = r0.divrem(f, &r1);
            let s = s0.sub(f, &qt.mul(f, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.deg() != 0 || r0.is_zero() {
            return None;
        }
        let c = f.inv(r0.lead())?;
        Some(s0.scale(f, c).rem(f, m))
    }

    pub fn derivative(&self, f: &FieldDesc) -> Polynomial {
        Polynomial::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| f.mul(a, f.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn mulmod(&self, f: &FieldDesc, o: &Polynomial, m: &Polynomial) -> Polynomial {
        self.mul(f, o).rem(f, m)
    }

    pub fn powmod(&self, f: &FieldDesc, mut e: u64, m: &Polynomial) -> Polynomial {
        let mut base = self.rem(f, m);
        let mut r = Polynomial::constant(f.one()).rem(f, m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mulmod(f, &base, m);
            }
            base = base.mulmod(f, &base, m);
            e >>= 1;
        }
        r
    }

    pub fn eval(&self, f: &FieldDesc, x: FieldElem) -> FieldElem {
        self.c.iter().rev().fold(FieldElem(0), |acc, &a| f.add(f.mul(acc, x), a))
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self, f: &FieldDesc) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let m = self.monic(f);
        let q = f.q() as u64;
        let x = Polynomial::x();
        // xq[i] = x^(q^i) mod m
        let mut xq = vec![x.rem(f, &m)];
        for i in 1..=n {
            let next = xq[i - 1].powmod(f, q, &m);
            xq.push(next);
        }
        if xq[n] != x.rem(f, &m) {
            return false;
        }
        for (l, _) in crate::arith::factorize(n as u64) {
            let h = xq[n / l as usize].sub(f, &x);
            if m.gcd(f, &h).deg() != 0 {
                return false;
            }
        }
        true
    }
}

/// Complete factorization of a squarefree polynomial into monic irreducibles.
///
/// Distinct-degree splitting followed by equal-degree splitting driven by a
/// ChaCha stream seeded with `seed`; every retry draws the next element of the
/// stream, so the output is a function of `(f, seed)`. Factors come back sorted.
pub fn factor_squarefree(poly: &Polynomial, f: &FieldDesc, seed: u64) -> Result<Vec<Polynomial>> {
    let Some(deg) = poly.degree() else {
        return Err(Error::Invalid("cannot factor the zero polynomial".into()));
    };
    let mut out = Vec::new();
    if deg == 0 {
        return Ok(out);
    }
    let g = poly.monic(f);
    if g.gcd(f, &g.derivative(f)).deg() != 0 {
        return Err(Error::NotSquarefree);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = f.q() as u64;
    let x = Polynomial::x();
    let mut rest = g;
    let mut h = x.clone();
    let mut i = 1;
    while rest.deg() >= 2 * i {
        h = h.powmod(f, q, &rest);
        let part = rest.gcd(f, &h.sub(f, &x));
        if part.deg() > 0 {
            equal_degree(&part, i, f, &mut rng, &mut out);
            rest = rest.divrem(f, &part).0;
            h = h.rem(f, &rest);
        }
        i += 1;
    }
    if rest.deg() > 0 {
        out.push(rest);
    }
    out.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn equal_degree(g: &Polynomial, d: usize, f: &FieldDesc, rng: &mut ChaCha8Rng, out: &mut Vec<Polynomial>) {
    let n = g.deg();
    if n == d {
        out.push(g.clone());
        return;
    }
    let q = f.q() as u64;
    loop {
        let a = Polynomial::new((0..n).map(|_| FieldElem(rng.gen_range(0..f.q()))).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if f.p() == 2 {
            // trace from F_{q^d} down to F_2
            let steps = f.k() as usize * d;
            let mut t = a.rem(f, g);
            let mut acc = t.clone();
            for _ in 1..steps {
                t = t.mulmod(f, &t, g);
                acc = acc.add(f, &t);
            }
            acc
        } else {
            // a^((q^d - 1)/2) = (prod_{i<d} a^(q^i))^((q-1)/2)
            let mut t = a.rem(f, g);
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.powmod(f, q, g);
                norm = norm.mulmod(f, &t, g);
            }
            norm.powmod(f, (q - 1) / 2, g).sub(f, &Polynomial::constant(f.one()))
        };
        let c = g.gcd(f, &b);
        if c.deg() > 0 && c.deg() < n {
            let other = g.divrem(f, &c).0;
            equal_degree(&c, d, f, rng, out);
            equal_degree(&other, d, f, rng, out);
            return;
        }
    }
}
