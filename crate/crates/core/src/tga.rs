//! Twisted group algebras `F^α G` with basis `u_g` and `u_g u_h = α(g, h) u_{gh}`.

use crate::coh::Cocycle;
use crate::error::{cap, Error, Result};
use crate::ff::{FieldDesc, FieldElem};
use crate::grp::{ConjClass, Group};
use std::sync::Arc;

/// Largest algebra dimension that may be constructed.
pub const ALGEBRA_CAP: usize = 4096;

/// Dense coefficient vector indexed by group elements.
pub type AlgElem = Vec<FieldElem>;

#[derive(Clone, Debug)]
pub struct TwistedAlgebra {
    cocycle: Cocycle,
    vals: Vec<FieldElem>,
}

/// A basis element `S_g` of the centre with the class it is supported on.
#[derive(Clone, Debug)]
pub struct ClassSum {
    pub class: ConjClass,
    pub elem: AlgElem,
}

fn check_dim(n: usize) -> Result<()> {
    if n > ALGEBRA_CAP {
        return cap(format!("algebra dimension {n} exceeds {ALGEBRA_CAP}"));
    }
    Ok(())
}

impl TwistedAlgebra {
    pub fn new(cocycle: Cocycle) -> Result<TwistedAlgebra> {
        check_dim(cocycle.group().order())?;
        let f = cocycle.field().clone();
        let vals = cocycle.table().iter().map(|&e| f.gen_pow(e as u64)).collect();
        Ok(TwistedAlgebra { cocycle, vals })
    }

    /// The untwisted group algebra `FG`.
    pub fn group_algebra(group: Arc<Group>, field: Arc<FieldDesc>) -> Result<TwistedAlgebra> {
        check_dim(group.order())?;
        TwistedAlgebra::new(Cocycle::trivial(group, field))
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }
    pub fn group(&self) -> &Arc<Group> {
        self.cocycle.group()
    }
    pub fn field(&self) -> &Arc<FieldDesc> {
        self.cocycle.field()
    }
    pub fn dim(&self) -> usize {
        self.group().order()
    }

    /// `α(g, h)` as a field element.
    #[inline]
    pub fn alpha(&self, g: u32, h: u32) -> FieldElem {
        self.vals[g as usize * self.dim() + h as usize]
    }

    pub fn zero(&self) -> AlgElem {
        vec![FieldElem(0); self.dim()]
    }

    pub fn one(&self) -> AlgElem {
        self.basis(0)
    }

    /// `u_g`.
    pub fn basis(&self, g: u32) -> AlgElem {
        let mut v = self.zero();
        v[g as usize] = self.field().one();
        v
    }

    fn check_len(&self, x: &AlgElem) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::Invalid(format!("element of length {} in an algebra of dimension {}", x.len(), self.dim())));
        }
        Ok(())
    }

    pub fn try_multiply(&self, x: &AlgElem, y: &AlgElem) -> Result<AlgElem> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.multiply(x, y))
    }

    /// Product of two elements; panics on length mismatch.
    pub fn multiply(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        assert!(x.len() == self.dim() && y.len() == self.dim(), "element does not belong to this algebra");
        let g = self.group();
        let f = self.field();
        let n = self.dim();
        let ys: Vec<(u32, FieldElem)> = y.iter().enumerate().filter(|(_, c)| c.0 != 0).map(|(h, &c)| (h as u32, c)).collect();
        if f.is_prime_field() {
            let p = f.p() as u64;
            let mut acc = vec![0u64; n];
            for (a, &xa) in x.iter().enumerate() {
                if xa.0 == 0 {
                    continue;
                }
                let a = a as u32;
                let row = &self.vals[a as usize * n..(a as usize + 1) * n];
                for &(b, yb) in &ys {
                    let c = xa.0 as u64 * yb.0 as u64 % p * row[b as usize].0 as u64;
                    let slot = &mut acc[g.mul(a, b) as usize];
                    *slot = (*slot + c) % p;
                }
            }
            return acc.into_iter().map(|v| FieldElem(v as u32)).collect();
        }
        let mut out = self.zero();
        for (a, &xa) in x.iter().enumerate() {
            if xa.0 == 0 {
                continue;
            }
            for &(b, yb) in &ys {
                let c = f.mul(f.mul(xa, yb), self.alpha(a as u32, b));
                let k = g.mul(a as u32, b) as usize;
                out[k] = f.add(out[k], c);
            }
        }
        out
    }

    /// `x u_h`.
    pub fn mul_basis_right(&self, x: &AlgElem, h: u32) -> AlgElem {
        let g = self.group();
        let f = self.field();
        let mut out = self.zero();
        for (a, &xa) in x.iter().enumerate() {
            if xa.0 != 0 {
                out[g.mul(a as u32, h) as usize] = f.mul(xa, self.alpha(a as u32, h));
            }
        }
        out
    }

    /// `u_h x`.
    pub fn mul_basis_left(&self, h: u32, x: &AlgElem) -> AlgElem {
        let g = self.group();
        let f = self.field();
        let mut out = self.zero();
        for (a, &xa) in x.iter().enumerate() {
            if xa.0 != 0 {
                out[g.mul(h, a as u32) as usize] = f.mul(xa, self.alpha(h, a as u32));
            }
        }
        out
    }

    pub fn add(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        let f = self.field();
        x.iter().zip(y).map(|(&a, &b)| f.add(a, b)).collect()
    }

    pub fn scale(&self, x: &AlgElem, c: FieldElem) -> AlgElem {
        let f = self.field();
        x.iter().map(|&a| f.mul(a, c)).collect()
    }

    /// `u_t^{-1} = α(t, t^{-1})^{-1} u_{t^{-1}}`, returned as (coefficient, element).
    pub fn unit_inverse(&self, t: u32) -> (FieldElem, u32) {
        let ti = self.group().inv(t);
        (self.field().inv(self.alpha(t, ti)).unwrap(), ti)
    }

    /// Commutes with every `u_h` for generators `h`, hence with the whole algebra.
    pub fn is_central(&self, x: &AlgElem) -> bool {
        self.group().gens().iter().all(|&h| self.mul_basis_right(x, h) == self.mul_basis_left(h, x))
    }

    /// `g` is α-regular if `α(g, h) = α(h, g)` for all `h` commuting with `g`.
    pub fn alpha_regular(&self, g: u32) -> bool {
        let grp = self.group();
        grp.elements().all(|h| grp.mul(g, h) != grp.mul(h, g) || self.alpha(g, h) == self.alpha(h, g))
    }

    /// Class sums `S_g = sum_{t in T} u_t u_g u_t^{-1}` over the α-regular classes.
    ///
    /// The coefficient of `u_{t g t^{-1}}` is `α(t, g) α(tg, t^{-1}) / α(t, t^{-1})`.
    pub fn center_basis(&self) -> Vec<ClassSum> {
        let grp = self.group();
        let f = self.field();
        let m = f.units();
        let mut out = Vec::new();
        for class in grp.conjugacy_classes() {
            let g = class.rep;
            if !self.alpha_regular(g) {
                continue;
            }
            let mut elem = self.zero();
            for (&member, &t) in class.members.iter().zip(&class.transversal) {
                let ti = grp.inv(t);
                let a = &self.cocycle;
                let e = (a.exp(t, g) as u64 + a.exp(grp.mul(t, g), ti) as u64 + m - a.exp(t, ti) as u64) % m;
                elem[member as usize] = f.gen_pow(e);
            }
            out.push(ClassSum { class, elem });
        }
        out
    }

    pub fn assert_semisimple(&self) -> Result<()> {
        let p = self.field().p();
        if self.dim() % p as usize == 0 {
            return Err(Error::Modular { p, order: self.dim() });
        }
        Ok(())
    }

    /// `A ⊗ B` realized on the direct product with cocycle `α(g1,h1) β(g2,h2)`.
    pub fn tensor(&self, other: &TwistedAlgebra) -> Result<TwistedAlgebra> {
        if self.field() != other.field() {
            return Err(Error::Invalid("tensor factors live over different fields".into()));
        }
        let (g1, g2) = (self.group(), other.group());
        let prod = Arc::new(g1.direct_product(g2)?);
        if prod.order() > ALGEBRA_CAP {
            return cap(format!("tensor product dimension {} exceeds {ALGEBRA_CAP}", prod.order()));
        }
        let m2 = g2.order() as u32;
        let (a, b) = (&self.cocycle, &other.cocycle);
        let c = Cocycle::new(
            prod.clone(),
            self.field().clone(),
            (0..prod.order() as u32)
                .flat_map(|x| (0..prod.order() as u32).map(move |y| (x, y)))
                .map(|(x, y)| ((a.exp(x / m2, y / m2) as u64 + b.exp(x % m2, y % m2) as u64) % self.field().units()) as u32)
                .collect(),
        )?;
        TwistedAlgebra::new(c)
    }
}
