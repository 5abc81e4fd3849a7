//! Dense linear algebra over F_q and integer Smith normal form.

use crate::arith::{ext_gcd, gcd};
use crate::ff::{FieldDesc, FieldElem};

/// Row-major dense matrix over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<FieldElem>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![FieldElem(0); rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<FieldElem>]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Mat { rows: rows.len(), cols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, f: &FieldDesc, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(FieldElem(0), |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self, f: &FieldDesc) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c).0 != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c)).unwrap();
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            let (head, tail) = self.data.split_at_mut(r * self.cols);
            let (prow, tail) = tail.split_at_mut(self.cols);
            for (i, row) in head.chunks_mut(self.cols).chain(tail.chunks_mut(self.cols)).enumerate() {
                let _ = i;
                let factor = row[c];
                if factor.0 != 0 {
                    axpy(f, &mut row[c..], &prow[c..], f.neg(factor));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &FieldDesc) -> usize {
        let mut m = self.clone();
        m.echelon_rank(f)
    }

    /// Row echelon (not reduced) elimination; returns the rank.
    fn echelon_rank(&mut self, f: &FieldDesc) -> usize {
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c).0 != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c)).unwrap();
            let cols = self.cols;
            let (head, tail) = self.data.split_at_mut((r + 1) * cols);
            let prow = &head[r * cols..];
            for row in tail.chunks_mut(cols) {
                let factor = row[c];
                if factor.0 != 0 {
                    axpy(f, &mut row[c..], &prow[c..], f.neg(f.mul(factor, inv)));
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right kernel {x : M x = 0}.
    pub fn kernel(&self, f: &FieldDesc) -> Vec<Vec<FieldElem>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![FieldElem(0); self.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(m.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

/// dst += c * src
#[inline]
pub fn axpy(f: &FieldDesc, dst: &mut [FieldElem], src: &[FieldElem], c: FieldElem) {
    if c.0 == 0 {
        return;
    }
    if f.is_prime_field() {
        let p = f.p() as u64;
        let c = c.0 as u64;
        for (d, s) in dst.iter_mut().zip(src) {
            if s.0 != 0 {
                d.0 = ((d.0 as u64 + c * s.0 as u64) % p) as u32;
            }
        }
    } else {
        for (d, s) in dst.iter_mut().zip(src) {
            if s.0 != 0 {
                *d = f.add(*d, f.mul(c, *s));
            }
        }
    }
}

/// Incrementally built echelon basis that remembers how each basis row was
/// obtained from the inserted vectors. Used for Krylov minimal polynomials.
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
    combos: Vec<Vec<FieldElem>>,
    inserted: usize,
}

pub enum Insert {
    /// The vector was independent and has been added.
    Added,
    /// The vector equals this combination of the previously inserted vectors.
    Dependent(Vec<FieldElem>),
}

impl Echelon {
    pub fn new(dim: usize) -> Echelon {
        Echelon { dim, rows: Vec::new(), pivots: Vec::new(), combos: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, f: &FieldDesc, v: &[FieldElem]) -> Insert {
        assert_eq!(v.len(), self.dim);
        let n = self.inserted;
        let mut r = v.to_vec();
        // combination of inserted vectors subtracted so far
        let mut comb = vec![FieldElem(0); n + 1];
        for i in 0..self.rows.len() {
            let c = r[self.pivots[i]];
            if c.0 != 0 {
                axpy(f, &mut r, &self.rows[i], f.neg(c));
                let ci = &self.combos[i];
                axpy(f, &mut comb[..ci.len()], ci, c);
            }
        }
        match r.iter().position(|x| x.0 != 0) {
            None => {
                comb.truncate(n);
                Insert::Dependent(comb)
            }
            Some(p) => {
                // r = v - comb·inserted, normalize so r[p] = 1
                let inv = f.inv(r[p]).unwrap();
                for x in r.iter_mut() {
                    *x = f.mul(*x, inv);
                }
                let mut c: Vec<FieldElem> = comb.iter().map(|&x| f.neg(f.mul(x, inv))).collect();
                c[n] = inv;
                self.rows.push(r);
                self.pivots.push(p);
                self.combos.push(c);
                self.inserted += 1;
                Insert::Added
            }
        }
    }
}

/// Solves `A x = b` over Z/m. Rows of `a` are equations. Returns one solution.
///
/// Diagonalizes A by unimodular row and column operations modulo m, applying
/// the row operations to b and recording the column operations.
pub fn solve_mod(a: &[Vec<i64>], b: &[i64], m: i64) -> Option<Vec<i64>> {
    assert!(m >= 1);
    let n = a.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|x| x.rem_euclid(m)).collect()).collect();
    let mut rhs: Vec<i64> = b.iter().map(|x| x.rem_euclid(m)).collect();
    let mut v: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    let mr = |x: i128| x.rem_euclid(m as i128) as i64;
    let mut diag = Vec::new();
    for t in 0..n {
        loop {
            // pivot: smallest nonzero entry in the trailing block
            let mut best: Option<(i64, usize, usize)> = None;
            for (i, row) in rows.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(bx, _, _)| x < bx) {
                        best = Some((x, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            rows.swap(t, pi);
            rhs.swap(t, pi);
            if pj != t {
                for row in rows.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
            }
            let p = rows[t][t];
            let mut clean = true;
            for i in t + 1..rows.len() {
                let x = rows[i][t];
                if x == 0 {
                    continue;
                }
                let k = x / p;
                for j in t..n {
                    rows[i][j] = mr(rows[i][j] as i128 - k as i128 * rows[t][j] as i128);
                }
                rhs[i] = mr(rhs[i] as i128 - k as i128 * rhs[t] as i128);
                if rows[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let x = rows[t][j];
                if x == 0 {
                    continue;
                }
                let k = x / p;
                for row in rows.iter_mut() {
                    row[j] = mr(row[j] as i128 - k as i128 * row[t] as i128);
                }
                for row in v.iter_mut() {
                    row[j] = mr(row[j] as i128 - k as i128 * row[t] as i128);
                }
                if rows[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        diag.push(if t < rows.len() { rows[t][t] } else { 0 });
    }
    // trailing equations must read 0 = rhs
    for (i, &r) in rhs.iter().enumerate() {
        if i >= n && r != 0 {
            return None;
        }
    }
    let mut y = vec![0i64; n];
    for t in 0..n {
        let d = diag[t];
        let c = if t < rhs.len() { rhs[t] } else { 0 };
        if d == 0 {
            if c != 0 {
                return None;
            }
            continue;
        }
        let g = gcd(d as u64, m as u64) as i64;
        if c % g != 0 {
            return None;
        }
        let mg = m / g;
        let (_, inv, _) = ext_gcd((d / g).rem_euclid(mg), mg);
        y[t] = mr((c / g) as i128 * inv as i128).rem_euclid(mg);
    }
    let x = (0..n)
        .map(|i| mr((0..n).map(|j| v[i][j] as i128 * y[j] as i128).sum::<i128>()))
        .collect();
    Some(x)
}

/// Invariant factors (entries > 1, divisibility chain) of the integer matrix.
pub fn smith_invariants(a: &[Vec<i64>]) -> Vec<u64> {
    let mut rows: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let n = rows.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let m = rows.len();
    for t in 0..n.min(m) {
        loop {
            let mut best: Option<(i128, usize, usize)> = None;
            for (i, row) in rows.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(bx, _, _)| x.abs() < bx) {
                        best = Some((x.abs(), i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            rows.swap(t, pi);
            for row in rows.iter_mut() {
                row.swap(t, pj);
            }
            let p = rows[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let k = rows[i][t].div_euclid(p);
                if k != 0 {
                    for j in t..n {
                        rows[i][j] -= k * rows[t][j];
                    }
                }
                if rows[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let k = rows[t][j].div_euclid(p);
                if k != 0 {
                    for row in rows.iter_mut() {
                        row[j] -= k * row[t];
                    }
                }
                if rows[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if rows[t][t] != 0 {
            diag.push(rows[t][t].unsigned_abs() as u64);
        }
    }
    invariant_factors(&diag)
}

/// Invariant factor form of a direct product of cyclic groups of the given orders.
pub fn invariant_factors(cyclic: &[u64]) -> Vec<u64> {
    use std::collections::BTreeMap;
    let mut primary: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &c in cyclic {
        for (p, e) in crate::arith::factorize(c) {
            primary.entry(p).or_default().push(p.pow(e));
        }
    }
    let len = primary.values().map(|v| v.len()).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for powers in primary.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (i, &pp) in powers.iter().enumerate() {
            out[len - 1 - i] *= pp;
        }
    }
    out
}
