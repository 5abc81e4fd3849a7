//! Yamazaki covers: construction for abelian groups, verification through the
//! group algebra, and the group-theoretic recognition criterion.

use crate::arith::{gcd, prime_divisors, valuation};
use crate::coh::{is_coboundary, AbelianClassParams, AbelianH2, CentralExtension, Cocycle};
use crate::equivalence::SignatureTable;
use crate::error::{cap, Error, Result};
use crate::ff::FieldDesc;
use crate::grp::{invariants_from_orders, order_of, sylow_component, Group, PcPresentation, ENUM_CAP};
use crate::linalg::invariant_factors;
use crate::tga::TwistedAlgebra;
use crate::wedd::{decompose, WedderburnSignature};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Schur multiplier of an abelian group: `⊕_{i<j} C_{gcd(n_i, n_j)}`.
pub fn abelian_multiplier(inv: &[u64]) -> Vec<u64> {
    let mut c = Vec::new();
    for i in 0..inv.len() {
        for j in i + 1..inv.len() {
            c.push(gcd(inv[i], inv[j]));
        }
    }
    invariant_factors(&c.into_iter().filter(|&x| x > 1).collect::<Vec<_>>())
}

/// Invariants of `Hom(M, F_q^*)` for `M` with invariants `m`.
pub fn hom_to_units(m: &[u64], q: u64) -> Vec<u64> {
    invariant_factors(&m.iter().map(|&x| gcd(x, q - 1)).filter(|&x| x > 1).collect::<Vec<_>>())
}

/// A cover `1 -> A -> E -> G -> 1` of an abelian group built from one cocycle per
/// cyclic factor of H²(G, F^*).
#[derive(Clone, Debug)]
pub struct CoverSpec {
    pub base: Arc<Group>,
    pub field: Arc<FieldDesc>,
    pub h2: AbelianH2,
    /// `d_i`: pointwise order of the chosen cocycle, which is the order of `A_i`.
    pub kernel_orders: Vec<u64>,
    pub classes: Vec<AbelianClassParams>,
    pub cocycles: Vec<Cocycle>,
    pub extension: CentralExtension,
}

impl CoverSpec {
    pub fn kernel_order(&self) -> u64 {
        self.kernel_orders.iter().product()
    }
}

/// `E = A x G` with `(a, g)(b, h) = (a + b + β(g, h), gh)`, where `β_i` is the
/// exponent of the `i`-th chosen cocycle read in `C_{d_i}`. The section is `g -> (0, g)`.
pub fn construct_cover_abelian(inv: &[u64], field: &Arc<FieldDesc>) -> Result<CoverSpec> {
    let base = Arc::new(Group::abelian(inv)?);
    let h2 = AbelianH2::new(inv, field);
    let classes = h2.generators();
    let q1 = field.units();
    let mut kernel_orders = Vec::new();
    let mut cocycles = Vec::new();
    let ext_count = h2.ext_orders.iter().filter(|&&o| o > 1).count();
    for (k, p) in classes.iter().enumerate() {
        let d = if k < ext_count {
            let i = p.ext.iter().position(|&e| e != 0).unwrap();
            h2.ext_root_order(i)
        } else {
            let j = p.pairing.iter().position(|&c| c != 0).unwrap();
            h2.pairing_orders[j]
        };
        let c = h2.cocycle(&base, field, p)?;
        debug_assert_eq!(c.pointwise_order(), d);
        kernel_orders.push(d);
        cocycles.push(c);
    }
    let n = base.order();
    let a_order: u64 = kernel_orders.iter().product();
    if a_order.saturating_mul(n as u64) > ENUM_CAP as u64 {
        return cap(format!("cover order {} exceeds {ENUM_CAP}", a_order as u128 * n as u128));
    }
    let a_order = a_order as usize;
    // mixed radix for A, first factor most significant
    let a_digits = |mut a: usize| -> Vec<u64> {
        let mut d = vec![0; kernel_orders.len()];
        for (k, &o) in kernel_orders.iter().enumerate().rev() {
            d[k] = a as u64 % o;
            a /= o as usize;
        }
        d
    };
    let a_index = |d: &[u64]| -> usize { d.iter().zip(&kernel_orders).fold(0, |acc, (&x, &o)| acc * o as usize + (x % o) as usize) };
    // β_i(g, h) in Z_{d_i}: the chosen cocycle's exponent divided by (q-1)/d_i
    let beta = |g: u32, h: u32| -> Vec<u64> {
        cocycles.iter().zip(&kernel_orders).map(|(c, &d)| c.exp(g, h) as u64 / (q1 / d)).collect()
    };
    let mut rmul = Vec::new();
    let mut names = Vec::new();
    let total = a_order * n;
    for k in 0..kernel_orders.len() {
        names.push(format!("a{}", k + 1));
        let mut unit = vec![0; kernel_orders.len()];
        unit[k] = 1;
        rmul.push(
            (0..total)
                .map(|x| {
                    let (a, g) = (x / n, x % n);
                    let mut d = a_digits(a);
                    d[k] += 1;
                    (a_index(&d) * n + g) as u32
                })
                .collect(),
        );
    }
    for (i, &h) in base.gens().iter().enumerate() {
        names.push(base.gen_names()[i].clone());
        rmul.push(
            (0..total)
                .map(|x| {
                    let (a, g) = (x / n, x % n);
                    let d: Vec<u64> = a_digits(a).iter().zip(beta(g as u32, h)).map(|(&u, v)| u + v).collect();
                    (a_index(&d) * n + base.mul(g as u32, h) as usize) as u32
                })
                .collect(),
        );
    }
    let label = format!("Y({})", base.label());
    let big = Arc::new(Group::from_action(&label, names, rmul)?);
    let kernel: Vec<u32> = (0..a_order).map(|a| (a * n) as u32).collect();
    let proj: Vec<u32> = (0..total).map(|x| (x % n) as u32).collect();
    let section: Vec<u32> = (0..n as u32).collect();
    let extension = CentralExtension::from_parts(big, kernel, base.clone(), proj, section)?;
    Ok(CoverSpec { base, field: field.clone(), h2, kernel_orders, classes, cocycles, extension })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverAlgebraReport {
    pub cover: WedderburnSignature,
    pub expected: WedderburnSignature,
    /// `|A| / |H²|`.
    pub multiplicity: u64,
    pub equal: bool,
}

/// Compares `F E` with `|A|/|H²|` copies of the sum of all twisted group algebras of the base.
pub fn verify_cover_algebra(spec: &CoverSpec, seed: u64) -> Result<CoverAlgebraReport> {
    let big = spec.extension.big.clone();
    let cover = decompose(&TwistedAlgebra::group_algebra(big, spec.field.clone())?, seed)?;
    let table = SignatureTable::build(&spec.h2.group, &spec.field, seed)?;
    let h2 = spec.h2.size();
    let a = spec.kernel_order();
    if a % h2 != 0 {
        return Err(Error::Inconsistent(format!("|A| = {a} is not a multiple of |H²| = {h2}")));
    }
    let multiplicity = a / h2;
    let mut m: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    for s in &table.signatures {
        for c in &s.components {
            *m.entry((c.n, c.d)).or_default() += c.mult * multiplicity;
        }
    }
    let expected = WedderburnSignature::from_blocks(m.into_iter().flat_map(|((n, d), k)| std::iter::repeat((n, d)).take(k as usize)));
    Ok(CoverAlgebraReport { equal: cover == expected, cover, expected, multiplicity })
}

/// Characters of the kernel as exponent vectors on an abelian basis of it.
fn kernel_characters(ext: &CentralExtension, field: &FieldDesc) -> Result<(Vec<u32>, Vec<Vec<u64>>)> {
    let (inv, basis) = ext.big.abelian_basis(&ext.kernel);
    let q1 = field.units();
    let steps: Vec<(u64, u64)> = inv.iter().map(|&n| (gcd(n, q1), q1 / gcd(n, q1))).collect();
    let count: u64 = steps.iter().map(|s| s.0).product();
    if count > 1 << 12 {
        return cap(format!("|Hom(Z, F^*)| = {count} exceeds 2^12"));
    }
    let mut out = vec![vec![]];
    for &(o, step) in &steps {
        out = out.into_iter().flat_map(|v: Vec<u64>| (0..o).map(move |k| [v.clone(), vec![k * step]].concat())).collect();
    }
    Ok((basis, out))
}

/// Size of the image of `Tra: Hom(Z, F^*) -> H²(G, F^*)`, as `|Hom(Z, F^*)| / |ker Tra|`.
pub fn transgression_image_size(ext: &CentralExtension, field: &Arc<FieldDesc>) -> Result<u64> {
    let (basis, chars) = kernel_characters(ext, field)?;
    let mut kernel = 0u64;
    for e in &chars {
        let chi = ext.character(field, &basis, e)?;
        if is_coboundary(&ext.transgression(field.clone(), &chi)).is_some() {
            kernel += 1;
        }
    }
    Ok(chars.len() as u64 / kernel)
}

/// Every class of H²(G, F^*) is a transgression; the quotient must be abelian.
pub fn transgression_surjectivity(ext: &CentralExtension, field: &Arc<FieldDesc>) -> Result<bool> {
    let g = &ext.quotient;
    if !g.is_abelian() {
        return Err(Error::Invalid("transgression check needs an abelian quotient".into()));
    }
    let (inv, _) = g.abelianization()?;
    Ok(transgression_image_size(ext, field)? == AbelianH2::new(&inv, field).size())
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    /// `Z ∩ H' ≅ Hom(M(G), F^*)`.
    pub derived_part: bool,
    /// `rk(G/G') = rk(H/H')`.
    pub ranks: bool,
    /// `(Z / Z ∩ H')_p` is a product of `rk Ext((G/G')_p, F^*)` copies of `C_{p^m}`.
    pub torsion: bool,
    /// `Z ∩ H'` has a complement in `Z`.
    pub complement: bool,
    pub z: Vec<u64>,
    pub z_cap_derived: Vec<u64>,
    pub hom_multiplier: Vec<u64>,
    pub z_mod_derived: Vec<u64>,
    pub rank_g: usize,
    pub rank_h: usize,
}

impl CriterionReport {
    pub fn bullets(&self) -> [bool; 4] {
        [self.derived_part, self.ranks, self.torsion, self.complement]
    }
    pub fn all(&self) -> bool {
        self.bullets().iter().all(|&b| b)
    }
}

/// Invariants of `z / k` for subgroups `k ≤ z` of an abelian subgroup, from coset orders.
fn quotient_invariants(g: &Group, z: &[u32], k: &[u32]) -> Vec<u64> {
    let mut in_k = vec![false; g.order()];
    for &x in k {
        in_k[x as usize] = true;
    }
    let mut seen = vec![false; g.order()];
    let mut orders = Vec::new();
    for &x in z {
        if seen[x as usize] {
            continue;
        }
        for &y in k {
            seen[g.mul(x, y) as usize] = true;
        }
        let mut o = 1u64;
        let mut p = x;
        while !in_k[p as usize] {
            p = g.mul(p, x);
            o += 1;
        }
        orders.push(o);
    }
    invariants_from_orders(&orders)
}

/// Evaluates the four conditions for the central extension `Z -> H -> G`
/// with `mg` the invariants of the Schur multiplier of `G`.
pub fn verify_cover_criterion(ext: &CentralExtension, field: &FieldDesc, mg: &[u64]) -> Result<CriterionReport> {
    ext.validate()?;
    let h = &*ext.big;
    let q1 = field.units();
    let derived = h.membership(&h.commutator_subgroup());
    let zk: Vec<u32> = ext.kernel.iter().copied().filter(|&x| derived[x as usize]).collect();
    let z_inv = h.abelian_invariants_of(&ext.kernel);
    let zk_inv = h.abelian_invariants_of(&zk);
    let hom_multiplier = hom_to_units(mg, q1 + 1);
    let derived_part = zk_inv == hom_multiplier;

    let rank_g = ext.quotient.rank_of_abelianization()?;
    let rank_h = h.rank_of_abelianization()?;
    let ranks = rank_g == rank_h;

    let z_mod_derived = quotient_invariants(h, &ext.kernel, &zk);
    let (gab, _) = ext.quotient.abelianization()?;
    let mut primes: Vec<u64> = prime_divisors(order_of(&z_mod_derived));
    primes.extend(prime_divisors(q1));
    primes.sort_unstable();
    primes.dedup();
    let torsion = primes.iter().all(|&p| {
        let m = valuation(q1, p);
        let ext_rank = sylow_component(&gab, p).iter().filter(|_| m > 0).count();
        let want = if m == 0 { vec![] } else { vec![p.pow(m); ext_rank] };
        sylow_component(&z_mod_derived, p) == want
    });

    let complement = h.complement(&ext.kernel, &zk)?.is_some();
    Ok(CriterionReport {
        derived_part,
        ranks,
        torsion,
        complement,
        z: z_inv,
        z_cap_derived: zk_inv,
        hom_multiplier,
        z_mod_derived,
        rank_g,
        rank_h,
    })
}

/// The order-64 cover `Y(D_8)` over `F_3` and the non-cover `H` from the same family.
///
/// `Y`: `a^2 = b^8 = c^4 = 1`, `[a, b] = 1`, `a^c = a`, `b^c = a b^3`.
/// `H`: `a^4 = b^4 = c^4 = 1`, `[a, b] = 1`, `a^c = a^{-1}`, `b^c = a b`.
pub fn build_d8_example() -> Result<(Group, Group)> {
    let y = PcPresentation::parse(
        "gen c order 4\ngen b order 8\ngen a order 2\nconj b c = b^3 a\nconj a c = a\nconj a b = a\n",
    )?;
    let h = PcPresentation::parse(
        "gen c order 4\ngen b order 4\ngen a order 4\nconj b c = b a\nconj a c = a^3\nconj a b = a\n",
    )?;
    Ok((Group::from_pc(&y)?.with_label("Y(D8)"), Group::from_pc(&h)?.with_label("H")))
}

/// Central extensions `Z(Y) -> Y -> D_8` and `Z(H) -> H -> D_8`.
pub fn d8_extensions() -> Result<(CentralExtension, CentralExtension)> {
    let (y, h) = build_d8_example()?;
    let mk = |g: Group| -> Result<CentralExtension> {
        let g = Arc::new(g);
        let z = g.center();
        CentralExtension::from_kernel(g, &z)
    };
    Ok((mk(y)?, mk(h)?))
}
