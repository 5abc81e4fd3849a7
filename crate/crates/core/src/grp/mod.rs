//! Finite groups given by right-regular generator actions.
//!
//! Every group is fully enumerated. Element `0` is the identity. Groups built
//! from a polycyclic presentation index their elements by the normal-form
//! exponent vector read in mixed radix, first generator most significant.

mod pc;
mod sub;

pub use pc::{PcPresentation, Word};
pub use sub::{exponent_of, invariants_from_orders, order_of, sylow_component, ConjClass, Quotient};

use crate::error::{cap, Error, Result};
use std::collections::VecDeque;

/// Largest group that may be enumerated.
pub const ENUM_CAP: usize = 65536;
/// Groups up to this order carry a dense multiplication table.
pub const TABLE_CAP: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Table,
    Collect,
}

#[derive(Clone, Debug)]
enum Words {
    /// Normal-form exponents; the payload is the list of relative orders.
    Pc(Vec<u32>),
    /// Shortest words from a breadth-first spanning tree, run-length encoded.
    Stored { off: Vec<u32>, letters: Vec<(u16, u16)> },
}

#[derive(Clone, Debug)]
pub struct Group {
    label: String,
    gen_names: Vec<String>,
    gens: Vec<u32>,
    rmul: Vec<Vec<u32>>,
    rmul_inv: Vec<Vec<u32>>,
    words: Words,
    inv: Vec<u32>,
    table: Option<Vec<u16>>,
    pc: Option<PcPresentation>,
}

impl Group {
    /// Enumerates the group defined by a polycyclic presentation, checking
    /// consistency exactly along the way.
    ///
    /// The group is built from the bottom: `G_k = <g_k, ..., g_s>` is a cyclic
    /// extension of `G_{k+1}`, which exists iff conjugation by `g_k` defines an
    /// automorphism `phi` of `G_{k+1}` fixing `P = g_k^{m_k}` with `phi^{m_k}`
    /// equal to conjugation by `P`.
    pub fn from_pc(p: &PcPresentation) -> Result<Group> {
        if p.is_empty() {
            return Ok(Group::trivial());
        }
        if p.order() > ENUM_CAP as u128 {
            return cap(format!("group order {} exceeds the enumeration cap {ENUM_CAP}", p.order()));
        }
        let s = p.len();
        let n = p.order() as usize;
        // place[j] = index of g_j
        let mut place = vec![1usize; s];
        for j in (0..s - 1).rev() {
            place[j] = place[j + 1] * p.rel_orders[j + 1] as usize;
        }
        let mut rmul: Vec<Vec<u32>> = vec![Vec::new(); s];
        // current subgroup G_{k+1} has order sub; rmul[j] for j > k has length sub
        let mut sub = 1usize;
        for k in (0..s).rev() {
            let m = p.rel_orders[k] as usize;
            let lower = SubView {
                rmul: &rmul[k + 1..],
                rmul_inv: rmul_inverse(&rmul[k + 1..]),
                rel: &p.rel_orders[k + 1..],
                order: sub,
                offset: k + 1,
            };
            let power = lower.eval(&p.powers[k]);
            // phi on generators of G_{k+1}
            let images: Vec<u32> = (k + 1..s)
                .map(|j| match p.conj.get(&(k, j)) {
                    Some(w) => lower.eval(w),
                    None => place[j] as u32,
                })
                .collect();
            let phi = lower.extend_hom(&images).map_err(|e| {
                Error::Inconsistent(format!("conjugation by {} on lower generators: {e}", p.names[k]))
            })?;
            lower.check_extension(&phi, power, m).map_err(|e| {
                Error::Inconsistent(format!("cyclic extension by {}: {e}", p.names[k]))
            })?;
            let new_order = sub * m;
            let mut top = vec![0u32; new_order];
            for e in 0..m {
                for t in 0..sub {
                    let ph = phi[t];
                    top[e * sub + t] = if e + 1 < m {
                        ((e + 1) * sub) as u32 + ph
                    } else {
                        lower.mul(power, ph)
                    };
                }
            }
            for (j, table) in rmul.iter_mut().enumerate().skip(k + 1) {
                let old = std::mem::take(table);
                let mut ext = Vec::with_capacity(new_order);
                for e in 0..m {
                    ext.extend(old.iter().map(|&x| x + (e * sub) as u32));
                }
                *table = ext;
                debug_assert_eq!(table.len(), new_order, "generator {j}");
            }
            rmul[k] = top;
            sub = new_order;
        }
        debug_assert_eq!(sub, n);
        let gens = place.iter().map(|&x| x as u32).collect();
        let mut g = Group::assemble(
            p.names.join(","),
            p.names.clone(),
            gens,
            rmul,
            Words::Pc(p.rel_orders.clone()),
        );
        g.pc = Some(p.clone());
        Ok(g)
    }

    /// Group generated by the given permutations of `0..n`, which must be the
    /// right-regular action of the generators with `0` the identity.
    pub fn from_action(label: &str, gen_names: Vec<String>, rmul: Vec<Vec<u32>>) -> Result<Group> {
        let n = rmul.first().map_or(1, |r| r.len());
        if n > ENUM_CAP {
            return cap(format!("group order {n} exceeds the enumeration cap {ENUM_CAP}"));
        }
        for r in &rmul {
            let mut seen = vec![false; n];
            if r.len() != n || r.iter().any(|&x| (x as usize) >= n || std::mem::replace(&mut seen[x as usize], true)) {
                return Err(Error::Invalid("generator action is not a permutation".into()));
            }
        }
        // shortest words by breadth-first search
        let s = rmul.len();
        let mut parent = vec![(u32::MAX, 0u16); n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for (j, r) in rmul.iter().enumerate() {
                let y = r[x as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    parent[y as usize] = (x, j as u16);
                    queue.push_back(y);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Invalid("generators do not act transitively".into()));
        }
        let mut word_of: Vec<Vec<(u16, u16)>> = vec![Vec::new(); n];
        for &x in order.iter().skip(1) {
            let (par, j) = parent[x as usize];
            let mut w = word_of[par as usize].clone();
            match w.last_mut() {
                Some(last) if last.0 == j && last.1 < u16::MAX => last.1 += 1,
                _ => w.push((j, 1)),
            }
            word_of[x as usize] = w;
        }
        let mut off = Vec::with_capacity(n + 1);
        let mut letters = Vec::new();
        off.push(0);
        for w in &word_of {
            letters.extend_from_slice(w);
            off.push(letters.len() as u32);
        }
        let gens = (0..s).map(|j| rmul[j][0]).collect();
        Ok(Group::assemble(label.to_string(), gen_names, gens, rmul, Words::Stored { off, letters }))
    }

    fn assemble(label: String, gen_names: Vec<String>, gens: Vec<u32>, rmul: Vec<Vec<u32>>, words: Words) -> Group {
        let rmul_inv = rmul_inverse(&rmul);
        let mut g = Group { label, gen_names, gens, rmul, rmul_inv, words, inv: Vec::new(), table: None, pc: None };
        let n = g.order();
        g.inv = (0..n as u32).map(|x| g.inverse_by_word(x)).collect();
        if n <= TABLE_CAP {
            let mut t = vec![0u16; n * n];
            for y in 0..n as u32 {
                for x in 0..n as u32 {
                    t[x as usize * n + y as usize] = g.apply_word(x, y) as u16;
                }
            }
            g.table = Some(t);
        }
        g
    }

    pub fn trivial() -> Group {
        Group::assemble(
            "1".into(),
            Vec::new(),
            Vec::new(),
            Vec::new(),
            Words::Stored { off: vec![0, 0], letters: Vec::new() },
        )
    }

    pub fn order(&self) -> usize {
        self.inv.len().max(self.rmul.first().map_or(1, |r| r.len()))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> Group {
        self.label = label.to_string();
        self
    }

    pub fn mode(&self) -> Mode {
        if self.table.is_some() {
            Mode::Table
        } else {
            Mode::Collect
        }
    }

    pub fn presentation(&self) -> Option<&PcPresentation> {
        self.pc.as_ref()
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    /// Element index of each generator.
    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn gen_by_name(&self, name: &str) -> Option<u32> {
        self.gen_names.iter().position(|n| n == name).map(|i| self.gens[i])
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.order() as u32
    }

    /// `x * g_j`.
    #[inline]
    pub fn rmul_gen(&self, x: u32, j: usize) -> u32 {
        self.rmul[j][x as usize]
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        match &self.table {
            Some(t) => t[x as usize * self.order() + y as usize] as u32,
            None => self.apply_word(x, y),
        }
    }

    #[inline]
    pub fn inv(&self, x: u32) -> u32 {
        self.inv[x as usize]
    }

    pub fn pow(&self, x: u32, e: i64) -> u32 {
        let (mut base, mut e) = if e < 0 { (self.inv(x), e.unsigned_abs()) } else { (x, e as u64) };
        let mut r = 0;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    /// `y^{-1} x y`.
    pub fn conj(&self, x: u32, y: u32) -> u32 {
        self.mul(self.mul(self.inv(y), x), y)
    }

    /// `[x, y] = x^{-1} y^{-1} x y`.
    pub fn comm(&self, x: u32, y: u32) -> u32 {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn elem_order(&self, x: u32) -> u64 {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<u64> {
        self.elements().map(|x| self.elem_order(x)).collect()
    }

    pub fn exponent(&self) -> u64 {
        self.element_orders().into_iter().fold(1, crate::arith::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Normal-form exponent vector (pc groups only).
    pub fn exponents(&self, x: u32) -> Option<Vec<u32>> {
        let Words::Pc(rel) = &self.words else { return None };
        let mut x = x;
        let mut out = vec![0u32; rel.len()];
        for j in (0..rel.len()).rev() {
            out[j] = x % rel[j];
            x /= rel[j];
        }
        Some(out)
    }

    /// Element with the given normal-form exponents (pc groups only).
    pub fn from_exponents(&self, e: &[u32]) -> Option<u32> {
        let Words::Pc(rel) = &self.words else { return None };
        if e.len() != rel.len() {
            return None;
        }
        let mut x = 0u32;
        for (j, &ej) in e.iter().enumerate() {
            x = x * rel[j] + ej % rel[j];
        }
        Some(x)
    }

    /// Word for `x` as (generator, exponent) letters.
    pub fn word(&self, x: u32) -> Vec<(usize, u32)> {
        match &self.words {
            Words::Pc(_) => {
                self.exponents(x).unwrap().into_iter().enumerate().filter(|&(_, e)| e > 0).collect()
            }
            Words::Stored { off, letters } => letters[off[x as usize] as usize..off[x as usize + 1] as usize]
                .iter()
                .map(|&(j, e)| (j as usize, e as u32))
                .collect(),
        }
    }

    fn apply_word(&self, mut x: u32, y: u32) -> u32 {
        match &self.words {
            Words::Pc(rel) => {
                let mut rest = y;
                let s = rel.len();
                // collect the exponents first: lowest generator is least significant
                let mut e = [0u32; 32];
                let mut ev = Vec::new();
                let exps: &mut [u32] = if s <= 32 {
                    &mut e[..s]
                } else {
                    ev.resize(s, 0);
                    &mut ev
                };
                for j in (0..s).rev() {
                    exps[j] = rest % rel[j];
                    rest /= rel[j];
                }
                for (j, &ej) in exps.iter().enumerate() {
                    let r = &self.rmul[j];
                    for _ in 0..ej {
                        x = r[x as usize];
                    }
                }
                x
            }
            Words::Stored { off, letters } => {
                for &(j, e) in &letters[off[y as usize] as usize..off[y as usize + 1] as usize] {
                    let r = &self.rmul[j as usize];
                    for _ in 0..e {
                        x = r[x as usize];
                    }
                }
                x
            }
        }
    }

    fn inverse_by_word(&self, x: u32) -> u32 {
        let mut y = 0u32;
        let w = self.word(x);
        for &(j, e) in w.iter().rev() {
            for _ in 0..e {
                y = self.rmul_inv[j][y as usize];
            }
        }
        y
    }

    /// Extends generator images to a homomorphism into `target`, checking
    /// that the relations hold. Returns the image of every element.
    pub fn hom_to(&self, target: &Group, images: &[u32]) -> Result<Vec<u32>> {
        if images.len() != self.num_gens() {
            return Err(Error::NotHom(format!("expected {} generator images", self.num_gens())));
        }
        let n = self.order();
        let mut map = vec![u32::MAX; n];
        map[0] = 0;
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for (j, &img) in images.iter().enumerate() {
                let y = self.rmul[j][x as usize];
                let v = target.mul(map[x as usize], img);
                if map[y as usize] == u32::MAX {
                    map[y as usize] = v;
                    queue.push_back(y);
                } else if map[y as usize] != v {
                    return Err(Error::NotHom("generator images violate a relation".into()));
                }
            }
        }
        Ok(map)
    }

    /// Like [`Group::hom_to`] but also requires bijectivity.
    pub fn iso_to(&self, target: &Group, images: &[u32]) -> Result<Vec<u32>> {
        let map = self.hom_to(target, images)?;
        if target.order() != self.order() {
            return Err(Error::NotHom("orders differ".into()));
        }
        let mut seen = vec![false; target.order()];
        for &y in &map {
            if std::mem::replace(&mut seen[y as usize], true) {
                return Err(Error::NotHom("map is not injective".into()));
            }
        }
        Ok(map)
    }

    /// Canonical abelian group with the given invariant factors, generators
    /// `x1, ..., xr` of orders `n_1 | n_2 | ... | n_r`.
    pub fn abelian(inv: &[u64]) -> Result<Group> {
        if inv.iter().any(|&n| n < 2) {
            return Err(Error::Invalid(format!("invariant factors must exceed 1: {inv:?}")));
        }
        if inv.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::Invalid(format!("invariants {inv:?} violate the divisibility chain")));
        }
        let mut p = PcPresentation::new();
        for (i, &n) in inv.iter().enumerate() {
            if n > ENUM_CAP as u64 {
                return cap(format!("cyclic factor {n} exceeds the enumeration cap"));
            }
            p.add_gen(&format!("x{}", i + 1), n as u32)?;
        }
        let label = if inv.is_empty() {
            "1".to_string()
        } else {
            inv.iter().map(|n| format!("C{n}")).collect::<Vec<_>>().join("x")
        };
        Ok(Group::from_pc(&p)?.with_label(&label))
    }

    pub fn direct_product(&self, other: &Group) -> Result<Group> {
        let n = self.order() * other.order();
        if n > ENUM_CAP {
            return cap(format!("direct product order {n} exceeds the enumeration cap {ENUM_CAP}"));
        }
        let label = format!("{} x {}", self.label, other.label);
        if let (Some(a), Some(b)) = (&self.pc, &other.pc) {
            let mut b = b.clone();
            for name in b.names.iter_mut() {
                if a.index_of(name).is_some() {
                    name.push('\'');
                }
            }
            // primes are not legal in the text format; rename deterministically
            for name in b.names.iter_mut() {
                *name = name.replace('\'', "_2");
            }
            return Ok(Group::from_pc(&a.direct_product(&b)?)?.with_label(&label));
        }
        let m = other.order() as u32;
        let mut rmul = Vec::new();
        let mut names = Vec::new();
        for j in 0..self.num_gens() {
            rmul.push((0..n as u32).map(|x| self.rmul[j][(x / m) as usize] * m + x % m).collect());
            names.push(self.gen_names[j].clone());
        }
        for j in 0..other.num_gens() {
            rmul.push((0..n as u32).map(|x| (x / m) * m + other.rmul[j][(x % m) as usize]).collect());
            names.push(format!("{}_2", other.gen_names[j]));
        }
        Group::from_action(&label, names, rmul)
    }

    /// Index of `(g, h)` in [`Group::direct_product`] of `self` and `other`.
    pub fn pair_index(&self, other: &Group, g: u32, h: u32) -> u32 {
        g * other.order() as u32 + h
    }
}

fn rmul_inverse(rmul: &[Vec<u32>]) -> Vec<Vec<u32>> {
    rmul.iter()
        .map(|r| {
            let mut inv = vec![0u32; r.len()];
            for (x, &y) in r.iter().enumerate() {
                inv[y as usize] = x as u32;
            }
            inv
        })
        .collect()
}

/// Read-only view of a partially built pc group `G_{k+1}`, whose generators
/// are the presentation's generators `offset..s`.
struct SubView<'a> {
    rmul: &'a [Vec<u32>],
    rmul_inv: Vec<Vec<u32>>,
    rel: &'a [u32],
    order: usize,
    offset: usize,
}

impl SubView<'_> {
    fn mul(&self, mut x: u32, y: u32) -> u32 {
        let mut rest = y;
        let s = self.rel.len();
        let mut exps = vec![0u32; s];
        for j in (0..s).rev() {
            exps[j] = rest % self.rel[j];
            rest /= self.rel[j];
        }
        for (j, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                x = self.rmul[j][x as usize];
            }
        }
        x
    }

    /// Evaluates a word in the generators of this view.
    fn eval(&self, w: &Word) -> u32 {
        let mut x = 0u32;
        for &(g, e) in w {
            let j = g - self.offset;
            let table = if e >= 0 { &self.rmul[j] } else { &self.rmul_inv[j] };
            for _ in 0..e.unsigned_abs() {
                x = table[x as usize];
            }
        }
        x
    }

    /// Extends images of the generators of this view to an endomorphism,
    /// checking that it is a well defined bijective homomorphism.
    fn extend_hom(&self, images: &[u32]) -> std::result::Result<Vec<u32>, String> {
        let n = self.order;
        let mut map = vec![u32::MAX; n];
        map[0] = 0;
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for (j, &img) in images.iter().enumerate() {
                let y = self.rmul[j][x as usize];
                let v = self.mul(map[x as usize], img);
                if map[y as usize] == u32::MAX {
                    map[y as usize] = v;
                    queue.push_back(y);
                } else if map[y as usize] != v {
                    return Err("images do not satisfy the relations".into());
                }
            }
        }
        let mut seen = vec![false; n];
        for &y in &map {
            if std::mem::replace(&mut seen[y as usize], true) {
                return Err("conjugation map is not injective".into());
            }
        }
        Ok(map)
    }

    /// phi(P) = P and phi^m = conjugation by P.
    fn check_extension(&self, phi: &[u32], power: u32, m: usize) -> std::result::Result<(), String> {
        if phi[power as usize] != power {
            return Err("conjugation does not fix the power relator".into());
        }
        let n = self.order;
        let p_inv = (0..n as u32).find(|&y| self.mul(power, y) == 0).unwrap();
        for t in 0..n as u32 {
            let mut x = t;
            for _ in 0..m {
                x = phi[x as usize];
            }
            if x != self.mul(self.mul(p_inv, t), power) {
                return Err("power of the conjugation differs from conjugation by the power".into());
            }
        }
        Ok(())
    }
}
