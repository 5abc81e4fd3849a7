//! Subgroups, conjugacy classes, quotients and abelian invariants.

use super::Group;
use crate::arith::{factorize, lcm, valuation};
use crate::error::{Error, Result};
use crate::linalg::invariant_factors;
use std::collections::VecDeque;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub rep: u32,
    /// Members in discovery order, starting with `rep`.
    pub members: Vec<u32>,
    /// `transversal[i] * rep * transversal[i]^{-1} = members[i]`.
    pub transversal: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Group,
    /// Coset index of every element of the parent.
    pub proj: Vec<u32>,
    /// Smallest element of each coset; `section[0] = 0`.
    pub section: Vec<u32>,
}

impl Group {
    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let n = self.order();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut elems = vec![0u32];
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    elems.push(y);
                    queue.push_back(y);
                }
            }
        }
        elems.sort_unstable();
        elems
    }

    pub fn membership(&self, elems: &[u32]) -> Vec<bool> {
        let mut m = vec![false; self.order()];
        for &x in elems {
            m[x as usize] = true;
        }
        m
    }

    pub fn is_normal(&self, elems: &[u32]) -> bool {
        let inside = self.membership(elems);
        elems.iter().all(|&x| self.gens().iter().all(|&g| inside[self.conj(x, g) as usize]))
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut gens = gens.to_vec();
        loop {
            let elems = self.closure(&gens);
            let inside = self.membership(&elems);
            let missing = elems
                .iter()
                .flat_map(|&x| self.gens().iter().map(move |&g| (x, g)))
                .map(|(x, g)| self.conj(x, g))
                .find(|&c| !inside[c as usize]);
            match missing {
                None => return elems,
                Some(c) => gens.push(c),
            }
        }
    }

    pub fn commutator_subgroup(&self) -> Vec<u32> {
        let g = self.gens();
        let comms: Vec<u32> = g
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| g[i + 1..].iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.comm(a, b))
            .collect();
        self.normal_closure(&comms)
    }

    pub fn center(&self) -> Vec<u32> {
        self.elements()
            .filter(|&x| self.gens().iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect()
    }

    /// Conjugacy classes ordered by their smallest element, which is the representative.
    pub fn conjugacy_classes(&self) -> Vec<ConjClass> {
        let n = self.order();
        let mut done = vec![false; n];
        let mut out = Vec::new();
        let ginv: Vec<u32> = self.gens().iter().map(|&g| self.inv(g)).collect();
        for rep in 0..n as u32 {
            if done[rep as usize] {
                continue;
            }
            done[rep as usize] = true;
            let mut members = vec![rep];
            let mut transversal = vec![0u32];
            let mut i = 0;
            while i < members.len() {
                let (c, t) = (members[i], transversal[i]);
                for (&g, &gi) in self.gens().iter().zip(&ginv) {
                    // g^{-1} c g = (g^{-1} t) rep (g^{-1} t)^{-1}
                    let d = self.mul(self.mul(gi, c), g);
                    if !done[d as usize] {
                        done[d as usize] = true;
                        members.push(d);
                        transversal.push(self.mul(gi, t));
                    }
                }
                i += 1;
            }
            out.push(ConjClass { rep, members, transversal });
        }
        out
    }

    /// Quotient by the subgroup generated by `gens`, which must be normal.
    pub fn quotient(&self, gens: &[u32]) -> Result<Quotient> {
        let sub = self.closure(gens);
        if !self.is_normal(&sub) {
            return Err(Error::NotNormal);
        }
        let sub_gens: Vec<u32> = gens.iter().copied().filter(|&g| g != 0).collect();
        let n = self.order();
        let mut proj = vec![u32::MAX; n];
        let mut section = Vec::new();
        for x in 0..n as u32 {
            if proj[x as usize] != u32::MAX {
                continue;
            }
            let c = section.len() as u32;
            section.push(x);
            proj[x as usize] = c;
            let mut stack = vec![x];
            while let Some(y) = stack.pop() {
                for &s in &sub_gens {
                    let z = self.mul(y, s);
                    if proj[z as usize] == u32::MAX {
                        proj[z as usize] = c;
                        stack.push(z);
                    }
                }
            }
        }
        let rmul: Vec<Vec<u32>> = (0..self.num_gens())
            .map(|j| section.iter().map(|&r| proj[self.rmul_gen(r, j) as usize]).collect())
            .collect();
        let label = format!("{}/N", self.label());
        let group = Group::from_action(&label, self.gen_names().to_vec(), rmul)?;
        Ok(Quotient { group, proj, section })
    }

    /// Invariant factors of G/G' together with the quotient map.
    pub fn abelianization(&self) -> Result<(Vec<u64>, Quotient)> {
        let derived = self.commutator_subgroup();
        let q = self.quotient(&derived)?;
        let inv = q.group.abelian_invariants_of(&q.group.elements().collect::<Vec<_>>());
        Ok((inv, q))
    }

    /// Invariant factors of an abelian subgroup given by its elements,
    /// read off from how many elements have each prime-power order.
    pub fn abelian_invariants_of(&self, elems: &[u32]) -> Vec<u64> {
        let orders: Vec<u64> = elems.iter().map(|&x| self.elem_order(x)).collect();
        invariants_from_orders(&orders)
    }

    pub fn rank_of_abelianization(&self) -> Result<usize> {
        Ok(self.abelianization()?.0.len())
    }

    /// A complement to `b` inside the abelian subgroup `z`: `c` with
    /// `c ∩ b = 1` and `|c||b| = |z|`. Exhaustive search over subgroups built
    /// by adding one generator at a time.
    pub fn complement(&self, z: &[u32], b: &[u32]) -> Result<Option<Vec<u32>>> {
        if z.iter().any(|&x| z.iter().any(|&y| self.mul(x, y) != self.mul(y, x))) {
            return Err(Error::Invalid("ambient subgroup is not abelian".into()));
        }
        if z.len() > 4096 {
            return crate::error::cap("complement search needs |Z| <= 4096");
        }
        let in_b = self.membership(b);
        let target = z.len() / b.len();
        fn search(
            g: &Group,
            z: &[u32],
            in_b: &[bool],
            target: usize,
            gens: &mut Vec<u32>,
            current: Vec<u32>,
            start: usize,
        ) -> Option<Vec<u32>> {
            if current.len() == target {
                return Some(current);
            }
            let inside = g.membership(&current);
            for i in start..z.len() {
                let x = z[i];
                if inside[x as usize] {
                    continue;
                }
                gens.push(x);
                let next = g.closure(gens);
                if target % next.len() == 0 && next.iter().all(|&y| y == 0 || !in_b[y as usize]) {
                    if let Some(c) = search(g, z, in_b, target, gens, next, i + 1) {
                        return Some(c);
                    }
                }
                gens.pop();
            }
            None
        }
        Ok(search(self, z, &in_b, target, &mut Vec::new(), vec![0], 0))
    }
}

impl Group {
    /// Invariant factors of the abelian subgroup `elems` with a basis:
    /// `basis[i]` has order `inv[i]` and `(a_i) -> prod basis[i]^{a_i}` is an
    /// isomorphism from the canonical abelian group.
    pub fn abelian_basis(&self, elems: &[u32]) -> (Vec<u64>, Vec<u32>) {
        let orders: Vec<u64> = elems.iter().map(|&x| self.elem_order(x)).collect();
        let inv = invariants_from_orders(&orders);
        let r = inv.len();
        let mut basis = vec![0u32; r];
        for (l, _) in factorize(elems.len() as u64) {
            let targets: Vec<u64> = sylow_component(&inv, l).into_iter().rev().collect();
            let pool: Vec<(u32, u64)> = elems
                .iter()
                .zip(&orders)
                .filter(|&(_, &o)| o_prime_to(o, l) == 1)
                .map(|(&x, &o)| (x, o))
                .collect();
            let picked = pick_basis(self, &pool, &targets, &mut Vec::new(), 1).expect("abelian p-group has a basis");
            // largest l-power belongs to the last invariant factor
            for (i, &x) in picked.iter().enumerate() {
                basis[r - 1 - i] = self.mul(basis[r - 1 - i], x);
            }
        }
        (inv, basis)
    }
}

fn pick_basis(g: &Group, pool: &[(u32, u64)], targets: &[u64], chosen: &mut Vec<u32>, size: usize) -> Option<Vec<u32>> {
    let Some(&t) = targets.get(chosen.len()) else {
        return Some(chosen.clone());
    };
    for &(x, o) in pool {
        if o != t {
            continue;
        }
        chosen.push(x);
        if g.closure(chosen).len() == size * t as usize {
            if let Some(b) = pick_basis(g, pool, targets, chosen, size * t as usize) {
                return Some(b);
            }
        }
        chosen.pop();
    }
    None
}

/// Invariant factors of a finite abelian group from the multiset of its element orders.
pub fn invariants_from_orders(orders: &[u64]) -> Vec<u64> {
    let n = orders.len() as u64;
    let mut cyclic = Vec::new();
    for (l, _) in factorize(n) {
        // c[k] = log_l #{x : x^(l^k) = 1}
        let mut prev = 0u32;
        let mut k = 1u32;
        let mut counts = Vec::new();
        loop {
            let lk = l.pow(k);
            let cnt = orders.iter().filter(|&&o| o_prime_to(o, l) == 1 && lk % o == 0).count() as u64;
            let c = valuation(cnt, l);
            counts.push(c - prev);
            if c == valuation(n, l) {
                break;
            }
            prev = c;
            k += 1;
        }
        // counts[k-1] = number of cyclic factors of order >= l^k
        for k in 0..counts.len() {
            let ge = counts[k];
            let ge_next = counts.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(ge - ge_next) {
                cyclic.push(l.pow(k as u32 + 1));
            }
        }
    }
    invariant_factors(&cyclic)
}

fn o_prime_to(o: u64, l: u64) -> u64 {
    let mut o = o;
    while o % l == 0 {
        o /= l;
    }
    o
}

/// The `p`-parts of the invariant factors.
pub fn sylow_component(inv: &[u64], p: u64) -> Vec<u64> {
    inv.iter()
        .map(|&n| p.pow(valuation(n, p)))
        .filter(|&x| x > 1)
        .collect()
}

pub fn order_of(inv: &[u64]) -> u64 {
    inv.iter().product()
}

pub fn exponent_of(inv: &[u64]) -> u64 {
    inv.iter().copied().fold(1, lcm)
}
