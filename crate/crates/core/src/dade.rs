//! Dade's pair of groups `G = G_1 x G_2` and `H = H_1 x H_2` for `p = 2`,
//! `w = -1`, and the factor-level computations behind the claim that
//! `F^ψ G` is a sum of matrix rings over `F_{r^4}`.
//!
//! `Q_1 = (<τ_1> x <σ_1>) ⋊ <ρ_1>` with `σ_1^{ρ_1} = σ_1 τ_1`, and
//! `Q_2 = <σ_2> ⋊ <ρ_2>` with `σ_2^{ρ_2} = σ_2^{1+q}`. The involution-like
//! generators `π_1` (order 4) and `π_2` (order 2) fix `ρ_i` and invert `σ_i`, `τ_i`.
//! `G_1 = Q_1 ⋊ <π_1>`, `G_2 = Q_2 ⋊ <π_2>`, `H_1 = Q_1 ⋊ <π_2>`, `H_2 = Q_2 ⋊ <π_1>`.

use crate::arith::{gcd, is_prime, smallest_prime_1_mod};
use crate::coh::{is_coboundary, multiplier_coprime_invariants, multiplier_direct_product, CentralExtension, Cocycle};
use crate::error::{cap, invalid, Error, Result};
use crate::ff::FieldDesc;
use crate::grp::{Group, PcPresentation};
use crate::linalg::invariant_factors;
use crate::tga::TwistedAlgebra;
use crate::wedd::{decompose, decompose_full, signature_of_tensor, WedderburnSignature};
use crate::yam::hom_to_units;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

/// Search bound for the field characteristic.
const FIELD_SEARCH_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DadeParams {
    pub q: u64,
    /// Characteristic of the coefficient field.
    pub r: u64,
}

impl DadeParams {
    pub fn new(q: u64) -> Result<DadeParams> {
        Ok(DadeParams { q, r: dade_field(q)? })
    }

    pub fn field(&self) -> Result<Arc<FieldDesc>> {
        Ok(Arc::new(FieldDesc::prime(self.r as u32)?))
    }

    fn q32(&self) -> u32 {
        self.q as u32
    }
}

fn check_q(q: u64) -> Result<()> {
    if !is_prime(q) || q % 4 != 1 {
        return invalid(format!("q = {q} must be a prime with q ≡ 1 mod 4"));
    }
    if q * q > u32::MAX as u64 {
        return invalid(format!("q = {q} is too large"));
    }
    Ok(())
}

/// Smallest prime `r` with `q | r - 1`, `q^2 ∤ r - 1` and `r ≡ 5 mod 8`.
/// The last condition makes `4 ‖ r - 1` and `8 ‖ r^2 - 1`.
pub fn dade_field(q: u64) -> Result<u64> {
    check_q(q)?;
    (2..FIELD_SEARCH_CAP)
        .find(|&r| r % 8 == 5 && (r - 1) % q == 0 && (r - 1) % (q * q) != 0 && is_prime(r))
        .map_or_else(|| cap(format!("no admissible field characteristic below {FIELD_SEARCH_CAP}")), Ok)
}

fn q1_lines(q: u32, s: &mut String) {
    *s += &format!("gen rho1 order {q}\ngen sigma1 order {q}\ngen tau1 order {q}\n");
    *s += "conj sigma1 rho1 = sigma1 tau1\n";
}

fn q2_lines(q: u32, s: &mut String) {
    *s += &format!("gen rho2 order {q}\ngen sigma2 order {}\n", q * q);
    *s += &format!("conj sigma2 rho2 = sigma2^{}\n", q + 1);
}

/// `Q_1 ⋊ <pi>` or `Q_2 ⋊ <pi>` with `pi` of the given order, or the bare `Q_i` for `pi_order = 1`.
fn factor_text(q: u32, which: u8, pi: &str, pi_order: u32) -> String {
    let mut s = String::new();
    if pi_order > 1 {
        s += &format!("gen {pi} order {pi_order}\n");
    }
    if which == 1 {
        q1_lines(q, &mut s);
        if pi_order > 1 {
            s += &format!("conj sigma1 {pi} = sigma1^{}\nconj tau1 {pi} = tau1^{}\n", q - 1, q - 1);
        }
    } else {
        q2_lines(q, &mut s);
        if pi_order > 1 {
            s += &format!("conj sigma2 {pi} = sigma2^{}\n", q * q - 1);
        }
    }
    s
}

/// Presentations of `Q_1, Q_2, G_1, G_2, H_1, H_2`.
pub fn factor_presentations(q: u64) -> Result<[(&'static str, PcPresentation); 6]> {
    check_q(q)?;
    let q = q as u32;
    Ok([
        ("Q1", PcPresentation::parse(&factor_text(q, 1, "", 1))?),
        ("Q2", PcPresentation::parse(&factor_text(q, 2, "", 1))?),
        ("G1", PcPresentation::parse(&factor_text(q, 1, "pi1", 4))?),
        ("G2", PcPresentation::parse(&factor_text(q, 2, "pi2", 2))?),
        ("H1", PcPresentation::parse(&factor_text(q, 1, "pi2", 2))?),
        ("H2", PcPresentation::parse(&factor_text(q, 2, "pi1", 4))?),
    ])
}

/// Presentations of `G = G_1 x G_2` and `H = H_1 x H_2`.
pub fn dade_presentations(q: u64) -> Result<(PcPresentation, PcPresentation)> {
    let [_, _, g1, g2, h1, h2] = factor_presentations(q)?;
    Ok((g1.1.direct_product(&g2.1)?, h1.1.direct_product(&h2.1)?))
}

#[derive(Clone, Debug)]
pub struct DadeFactors {
    pub q1: Arc<Group>,
    pub q2: Arc<Group>,
    pub g1: Arc<Group>,
    pub g2: Arc<Group>,
    pub h1: Arc<Group>,
    pub h2: Arc<Group>,
}

pub fn build_factors(params: &DadeParams) -> Result<DadeFactors> {
    let ps = factor_presentations(params.q)?;
    let mut gs = Vec::new();
    for (name, p) in &ps {
        gs.push(Arc::new(Group::from_pc(p)?.with_label(name)));
    }
    let mut it = gs.into_iter();
    let mut next = || it.next().unwrap();
    Ok(DadeFactors { q1: next(), q2: next(), g1: next(), g2: next(), h1: next(), h2: next() })
}

/// The Yamazaki cover of `G_1`: `((<z> x <τ_1> x <ρ_1>) ⋊ <σ_1>) ⋊ <π_1>` of order `16 q^5`.
fn y_g1_text(q: u32, pi: &str, pi_order: u32) -> String {
    let mut s = format!("gen {pi} order {pi_order}\ngen sigma1 order {q}\ngen rho1 order {}\n", q * q);
    s += &format!("gen tau1 order {q}\ngen z order {q}\n");
    s += "conj rho1 sigma1 = rho1 tau1\nconj tau1 sigma1 = tau1 z\n";
    s += &format!("conj sigma1 {pi} = sigma1^{}\nconj tau1 {pi} = tau1^{} z\n", q - 1, q - 1);
    s
}

/// Cover of `H_2`: `(<σ_2> ⋊ <ρ_2>) ⋊ <π_1>` with `ρ_2` of order `q^2` and `π_1` of order 16.
fn y_h2_text(q: u32) -> String {
    let mut s = format!("gen pi1 order 16\ngen rho2 order {}\ngen sigma2 order {}\n", q * q, q * q);
    s += &format!("conj sigma2 rho2 = sigma2^{}\nconj sigma2 pi1 = sigma2^{}\n", q + 1, q * q - 1);
    s
}

/// Full presentation of `Y(G)` (`for_h = false`) or `Y(H)`, of order `256 q^10`.
/// These are far beyond the enumeration cap and are only emitted.
pub fn y_presentation(q: u64, for_h: bool) -> Result<PcPresentation> {
    check_q(q)?;
    let q = q as u32;
    let (top, low, top_order, low_order) = if for_h { ("pi2", "pi1", 8, 16) } else { ("pi1", "pi2", 16, 8) };
    let mut s = format!("gen {top} order {top_order}\ngen sigma1 order {q}\ngen rho1 order {}\ngen tau1 order {q}\n", q * q);
    s += &format!("gen {low} order {low_order}\ngen rho2 order {}\ngen sigma2 order {}\n", q * q, q * q);
    s += &format!("gen x order {q}\ngen y order 2\ngen z order {q}\n");
    s += "conj rho1 sigma1 = rho1 tau1\nconj tau1 sigma1 = tau1 z\n";
    s += &format!("conj sigma1 {top} = sigma1^{}\nconj tau1 {top} = tau1^{} z\n", q - 1, q - 1);
    s += &format!("conj {low} {top} = {low} y\n");
    s += "conj rho2 rho1 = rho2 x\n";
    s += &format!("conj sigma2 rho2 = sigma2^{}\n", q + 1);
    // σ_2 is inverted by whichever π sits in the Q_2 factor
    let inv_pi = if for_h { "pi1" } else { "pi2" };
    s += &format!("conj sigma2 {inv_pi} = sigma2^{}\n", q * q - 1);
    PcPresentation::parse(&s)
}

/// A central extension `Z -> Y -> X` together with the generators of `Z`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub ext: CentralExtension,
    pub kernel_gens: Vec<u32>,
    pub kernel_names: Vec<String>,
    /// `(x, y) -> s(x) s(y) s(xy)^{-1}`, row-major over the quotient.
    factor_set: Vec<u32>,
}

impl Cover {
    fn build(text: &str, label: &str, kernel: &[(&str, i64)]) -> Result<Cover> {
        let y = Arc::new(Group::from_pc(&PcPresentation::parse(text)?)?.with_label(label));
        let mut kernel_gens = Vec::new();
        let mut kernel_names = Vec::new();
        for &(name, e) in kernel {
            let g = y.gen_by_name(name).ok_or_else(|| Error::Invalid(format!("no generator {name}")))?;
            kernel_gens.push(y.pow(g, e));
            kernel_names.push(if e == 1 { name.to_string() } else { format!("{name}^{e}") });
        }
        let ext = CentralExtension::from_kernel(y, &kernel_gens)?;
        let (b, g, s) = (&*ext.big, &*ext.quotient, &ext.section);
        let n = g.order();
        let sinv: Vec<u32> = s.iter().map(|&x| b.inv(x)).collect();
        let sinv = &sinv;
        let factor_set = (0..n as u32)
            .into_par_iter()
            .flat_map_iter(|x| {
                (0..n as u32).map(move |y| b.mul(b.mul(s[x as usize], s[y as usize]), sinv[g.mul(x, y) as usize]))
            })
            .collect();
        Ok(Cover { ext, kernel_gens, kernel_names, factor_set })
    }

    pub fn big(&self) -> &Arc<Group> {
        &self.ext.big
    }

    pub fn quotient(&self) -> &Arc<Group> {
        &self.ext.quotient
    }

    /// Image of a generator of the cover in the quotient.
    pub fn image_of(&self, name: &str) -> Option<u32> {
        self.big().gen_by_name(name).map(|g| self.ext.proj[g as usize])
    }

    /// Transgression of the character with the given exponents on `kernel_gens`.
    pub fn transgression(&self, field: &Arc<FieldDesc>, exps: &[u64]) -> Result<Cocycle> {
        let chi = self.ext.character(field, &self.kernel_gens, exps)?;
        let table = self.factor_set.iter().map(|&k| chi[k as usize]).collect();
        Cocycle::new(self.quotient().clone(), field.clone(), table)
    }

    /// All characters of the kernel, as exponent vectors on `kernel_gens`.
    fn characters(&self, field: &FieldDesc) -> Vec<Vec<u64>> {
        let m = field.units();
        let b = self.big();
        let mut out = vec![vec![]];
        for &z in &self.kernel_gens {
            let o = gcd(b.elem_order(z), m);
            out = out.into_iter().flat_map(|v: Vec<u64>| (0..o).map(move |k| [v.clone(), vec![k * (m / o)]].concat())).collect();
        }
        out
    }

    /// One character per class in the image of the transgression, with its cocycle.
    pub fn class_representatives(&self, field: &Arc<FieldDesc>) -> Result<Vec<(Vec<u64>, Cocycle)>> {
        let m = field.units();
        let chars = self.characters(field);
        if chars.len() > 1 << 12 {
            return cap(format!("{} kernel characters exceed 2^12", chars.len()));
        }
        let cocycles: Vec<Cocycle> = chars.par_iter().map(|e| self.transgression(field, e)).collect::<Result<_>>()?;
        let kernel: HashSet<Vec<u64>> =
            chars.iter().zip(&cocycles).filter(|(_, c)| is_coboundary(c).is_some()).map(|(e, _)| e.clone()).collect();
        let mut reps: Vec<(Vec<u64>, Cocycle)> = Vec::new();
        for (e, c) in chars.into_iter().zip(cocycles) {
            let dup = reps.iter().any(|(r, _)| kernel.contains(&e.iter().zip(r).map(|(a, b)| (a + m - b) % m).collect::<Vec<_>>()));
            if !dup {
                reps.push((e, c));
            }
        }
        Ok(reps)
    }
}

fn require_cover_q(params: &DadeParams) -> Result<()> {
    let order = 16u128 * (params.q as u128).pow(5);
    if order > crate::grp::ENUM_CAP as u128 {
        return cap(format!("cover order {order} exceeds the enumeration cap"));
    }
    Ok(())
}

/// Checks that the quotient of `cover` is `target`, mapping the generators of
/// `target` to the named images (a leading `-` inverts).
fn quotient_matches(cover: &Cover, target: &Group, images: &[&str]) -> Result<()> {
    let qg = cover.quotient();
    let mut imgs = Vec::new();
    for name in images {
        let (inv, n) = match name.strip_prefix('-') {
            Some(n) => (true, n),
            None => (false, *name),
        };
        let x = cover.image_of(n).ok_or_else(|| Error::Invalid(format!("no generator {n}")))?;
        imgs.push(if inv { qg.inv(x) } else { x });
    }
    target.iso_to(qg, &imgs).map(|_| ()).map_err(|e| Error::Inconsistent(format!("cover quotient is not {}: {e}", target.label())))
}

/// `Y(G_1)` over `Z_1 = <z, ρ_1^q, π_1^4>`, checked against `G_1`.
///
/// The cover's relation `ρ_1^{σ_1} = ρ_1 τ_1` gives `[σ_1, ρ_1] = τ_1^{-1}` in
/// the quotient, so `G_1`'s `τ_1` goes to the inverse of the cover's.
pub fn build_y_g1(params: &DadeParams, factors: &DadeFactors) -> Result<Cover> {
    require_cover_q(params)?;
    let q = params.q32();
    let c = Cover::build(&y_g1_text(q, "pi1", 16), "Y(G1)", &[("z", 1), ("rho1", q as i64), ("pi1", 4)])?;
    quotient_matches(&c, &factors.g1, &["pi1", "rho1", "sigma1", "-tau1"])?;
    Ok(c)
}

/// `Y(H_1)` over `<z, ρ_1^q, π_2^2>`.
pub fn build_y_h1(params: &DadeParams, factors: &DadeFactors) -> Result<Cover> {
    require_cover_q(params)?;
    let q = params.q32();
    let c = Cover::build(&y_g1_text(q, "pi2", 8), "Y(H1)", &[("z", 1), ("rho1", q as i64), ("pi2", 2)])?;
    quotient_matches(&c, &factors.h1, &["pi2", "rho1", "sigma1", "-tau1"])?;
    Ok(c)
}

/// `Y(H_2)` over `<ρ_2^q, π_1^4>`.
pub fn build_y_h2(params: &DadeParams, factors: &DadeFactors) -> Result<Cover> {
    require_cover_q(params)?;
    let q = params.q32();
    let c = Cover::build(&y_h2_text(q), "Y(H2)", &[("rho2", q as i64), ("pi1", 4)])?;
    quotient_matches(&c, &factors.h2, &["pi1", "rho2", "sigma2"])?;
    Ok(c)
}

/// `ψ_1`: transgression of `χ(z) = ζ_q`, `χ(ρ_1^q) = 1`, `χ(π_1^4) = ξ` with `ξ` of order 4.
pub fn psi_cocycle_g1(params: &DadeParams, cover: &Cover, field: &Arc<FieldDesc>) -> Result<Cocycle> {
    let m = field.units();
    if m % (4 * params.q) != 0 {
        return invalid(format!("F_{} lacks roots of unity of order {}", field.q(), 4 * params.q));
    }
    cover.transgression(field, &[m / params.q, 0, m / 4])
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplierReport {
    /// `M(Q_1)` as spanned by `α` (`[u_τ, u_σ] = ζ`) and `β` (`[u_τ, u_ρ] = ζ`).
    pub m_q1: Vec<u64>,
    pub alpha_invariant: bool,
    pub beta_invariant: bool,
    pub m_g1: Vec<u64>,
    pub m_g2: Vec<u64>,
    pub m_h1: Vec<u64>,
    pub m_h2: Vec<u64>,
    pub ab_g1: Vec<u64>,
    pub ab_g2: Vec<u64>,
    pub ab_h1: Vec<u64>,
    pub ab_h2: Vec<u64>,
    pub m_g: Vec<u64>,
    pub m_h: Vec<u64>,
}

/// Cocycle on `Q_1` transgressed from the order-`q^4` extension where `z` is `[τ_1, k]`.
fn q1_class(params: &DadeParams, q1: &Arc<Group>, field: &Arc<FieldDesc>, k: &str) -> Result<Cocycle> {
    let q = params.q32();
    let mut s = String::new();
    q1_lines(q, &mut s);
    s += &format!("gen z order {q}\nconj tau1 {k} = tau1 z\n");
    let c = Cover::build(&s, "E", &[("z", 1)])?;
    let cocycle = c.transgression(field, &[field.units() / params.q])?;
    let qg = c.quotient();
    let map = q1.hom_to(qg, &[c.image_of("rho1").unwrap(), c.image_of("sigma1").unwrap(), c.image_of("tau1").unwrap()])?;
    Ok(cocycle.pullback(q1.clone(), &map))
}

/// `M(X ⋊ <π>) = M(Q)^π` for the coprime split extensions here, since cyclic groups
/// have trivial multiplier; `M(Q_2) = 1`.
pub fn multiplier_dade(params: &DadeParams, factors: &DadeFactors) -> Result<MultiplierReport> {
    let field = params.field()?;
    let q1 = &factors.q1;
    let alpha = q1_class(params, q1, &field, "sigma1")?;
    let beta = q1_class(params, q1, &field, "rho1")?;
    let gens = [alpha, beta];
    let (rho, sigma, tau) = (q1.gens()[0], q1.gens()[1], q1.gens()[2]);
    let all = multiplier_coprime_invariants(&gens, &[rho, sigma, tau])?;
    let by_pi = multiplier_coprime_invariants(&gens, &[rho, q1.inv(sigma), q1.inv(tau)])?;
    let alpha_invariant = by_pi.fixed.contains(&vec![1, 0]);
    let beta_invariant = by_pi.fixed.contains(&vec![0, 1]);
    // π_1 and π_2 act on Q_1 through the same inversion
    let m_g1 = by_pi.invariants.clone();
    let m_h1 = by_pi.invariants.clone();
    let (m_g2, m_h2) = (vec![], vec![]);
    let ab = |g: &Group| -> Result<Vec<u64>> { Ok(g.abelianization()?.0) };
    let (ab_g1, ab_g2, ab_h1, ab_h2) = (ab(&factors.g1)?, ab(&factors.g2)?, ab(&factors.h1)?, ab(&factors.h2)?);
    let m_g = multiplier_direct_product(&m_g1, &m_g2, &ab_g1, &ab_g2);
    let m_h = multiplier_direct_product(&m_h1, &m_h2, &ab_h1, &ab_h2);
    Ok(MultiplierReport {
        m_q1: all.invariants,
        alpha_invariant,
        beta_invariant,
        m_g1,
        m_g2,
        m_h1,
        m_h2,
        ab_g1,
        ab_g2,
        ab_h1,
        ab_h2,
        m_g,
        m_h,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H2Report {
    /// `Ext(X/X', F^*)`.
    pub ext: Vec<u64>,
    /// `Hom(M(X), F^*)`.
    pub hom: Vec<u64>,
    pub total: Vec<u64>,
}

/// `H²(X, F_r^*) ≅ Ext(X/X', F^*) x Hom(M(X), F^*)` from abelianization and multiplier invariants.
pub fn h2_from_invariants(ab: &[u64], m: &[u64], r: u64) -> H2Report {
    let ext = hom_to_units(ab, r);
    let hom = hom_to_units(m, r);
    let total = invariant_factors(&[ext.clone(), hom.clone()].concat());
    H2Report { ext, hom, total }
}

/// H² of `G` and `H` over `F_r`.
pub fn h2_dade(report: &MultiplierReport, r: u64) -> (H2Report, H2Report) {
    let g_ab = [report.ab_g1.clone(), report.ab_g2.clone()].concat();
    let h_ab = [report.ab_h1.clone(), report.ab_h2.clone()].concat();
    (h2_from_invariants(&g_ab, &report.m_g, r), h2_from_invariants(&h_ab, &report.m_h, r))
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaAReport {
    pub signature: WedderburnSignature,
    pub all_degree_four: bool,
    pub sum_n_squared: u64,
    /// `[u_τ, u_σ]` is the scalar `ζ`.
    pub commutator_is_zeta: bool,
    /// `u_π^4` is the scalar `ξ`.
    pub pi_fourth_is_xi: bool,
    pub coboundary: bool,
    /// `F G_2 ⊗ F^{ψ_1} G_1`.
    pub full_signature: WedderburnSignature,
    pub full_all_degree_four: bool,
    pub holds: bool,
}

fn all_degree(s: &WedderburnSignature, d: u64) -> bool {
    s.components.iter().all(|c| c.d == d)
}

/// `u_x^{-1} ... ` products of basis units: `u_a u_b ...` with optional inverses.
fn unit_word(alg: &TwistedAlgebra, letters: &[(u32, bool)]) -> crate::tga::AlgElem {
    let mut acc = alg.one();
    for &(g, inv) in letters {
        let u = if inv {
            let (c, t) = alg.unit_inverse(g);
            alg.scale(&alg.basis(t), c)
        } else {
            alg.basis(g)
        };
        acc = alg.multiply(&acc, &u);
    }
    acc
}

pub fn verify_lemma_a(params: &DadeParams, factors: &DadeFactors, cover: &Cover, seed: u64) -> Result<LemmaAReport> {
    let field = params.field()?;
    let psi = psi_cocycle_g1(params, cover, &field)?;
    let coboundary = is_coboundary(&psi).is_some();
    let alg = TwistedAlgebra::new(psi)?;
    let m = field.units();
    let zeta = alg.scale(&alg.one(), field.gen_pow(m / params.q));
    let xi = alg.scale(&alg.one(), field.gen_pow(m / 4));
    let (tau, sigma, pi) = (cover.image_of("tau1").unwrap(), cover.image_of("sigma1").unwrap(), cover.image_of("pi1").unwrap());
    let commutator_is_zeta = unit_word(&alg, &[(tau, true), (sigma, true), (tau, false), (sigma, false)]) == zeta;
    let pi_fourth_is_xi = unit_word(&alg, &[(pi, false); 4]) == xi;
    let signature = decompose(&alg, seed)?;
    let g2 = decompose(&TwistedAlgebra::group_algebra(factors.g2.clone(), field)?, seed)?;
    let full_signature = signature_of_tensor(&g2, &signature);
    let all_degree_four = all_degree(&signature, 4);
    let full_all_degree_four = all_degree(&full_signature, 4);
    let sum_n_squared = signature.components.iter().map(|c| c.n * c.n * c.mult).sum();
    Ok(LemmaAReport {
        holds: all_degree_four && full_all_degree_four && commutator_is_zeta && pi_fourth_is_xi && !coboundary,
        signature,
        all_degree_four,
        sum_n_squared,
        commutator_is_zeta,
        pi_fourth_is_xi,
        coboundary,
        full_signature,
        full_all_degree_four,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCount {
    pub degree: u64,
    pub count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubquotientReport {
    /// `|Y(G_1) / <ρ_1^q, π_1^2>|`.
    pub order: u64,
    /// `|Y(G_1) / <ρ_1^q, π_1^8>|`, recorded for comparison.
    pub order_with_pi8: u64,
    pub exponent: u64,
    /// Characteristic of the splitting field used.
    pub ell: u64,
    pub degrees: Vec<DegreeCount>,
    pub expected: Vec<DegreeCount>,
    /// `Σ n^2` over the characters with `z` in the kernel, i.e. `|R / <z>|`.
    pub z_kernel_sum_squares: u64,
    /// Characters of odd degree with `z` in the kernel.
    pub odd_with_z_in_kernel: u64,
    pub linear: u64,
    /// `2q·1 + q(q-1)/2·4 + (q-1)/2·(2q)^2 = 2q^3`.
    pub identity_z_kernel: bool,
    /// `(2q^2 - 2q) q^2 = |R| - |R/<z>|`.
    pub identity_faithful: bool,
    pub matches: bool,
}

fn counts(m: BTreeMap<u64, u64>) -> Vec<DegreeCount> {
    m.into_iter().map(|(degree, count)| DegreeCount { degree, count }).collect()
}

pub fn r_subquotient_degrees(params: &DadeParams, cover: &Cover, seed: u64) -> Result<SubquotientReport> {
    let q = params.q;
    let y = cover.big();
    let (rho, pi, z) = (y.gen_by_name("rho1").unwrap(), y.gen_by_name("pi1").unwrap(), y.gen_by_name("z").unwrap());
    let rho_q = y.pow(rho, q as i64);
    let order_with_pi8 = y.quotient(&[rho_q, y.pow(pi, 8)])?.group.order() as u64;
    let quo = y.quotient(&[rho_q, y.pow(pi, 2)])?;
    let r = Arc::new(quo.group.with_label("R"));
    let order = r.order() as u64;
    let exponent = r.exponent();
    let ell = smallest_prime_1_mod(exponent);
    let field = Arc::new(FieldDesc::prime(ell as u32)?);
    let alg = TwistedAlgebra::group_algebra(r.clone(), field)?;
    let dec = decompose_full(&alg, seed)?;
    if dec.blocks.iter().any(|b| b.d != 1) {
        return Err(Error::Inconsistent(format!("F_{ell} does not split R")));
    }
    let zbar = quo.proj[z as usize];
    let mut degrees = BTreeMap::new();
    let (mut z_kernel_sum_squares, mut odd_with_z_in_kernel) = (0, 0);
    for b in &dec.blocks {
        *degrees.entry(b.n).or_default() += 1;
        if alg.mul_basis_right(&b.idempotent, zbar) == b.idempotent {
            z_kernel_sum_squares += b.n * b.n;
            if b.n % 2 == 1 {
                odd_with_z_in_kernel += 1;
            }
        }
    }
    let mut expected = BTreeMap::new();
    *expected.entry(1).or_default() += 2 * q;
    *expected.entry(2).or_default() += q * (q - 1) / 2;
    *expected.entry(2 * q).or_default() += (q - 1) / 2;
    *expected.entry(q).or_default() += 2 * q * q - 2 * q;
    let linear = degrees.get(&1).copied().unwrap_or(0);
    let formula = 2 * q + q * (q - 1) / 2 * 4 + (q - 1) / 2 * 4 * q * q;
    let identity_z_kernel = formula == 2 * q.pow(3) && z_kernel_sum_squares == formula;
    let faithful: u64 = degrees.get(&q).copied().unwrap_or(0);
    let identity_faithful = (2 * q * q - 2 * q) * q * q == order - z_kernel_sum_squares && faithful == 2 * q * q - 2 * q;
    let matches = degrees == expected && odd_with_z_in_kernel == 2 * q && linear == 2 * q;
    Ok(SubquotientReport {
        order,
        order_with_pi8,
        exponent,
        ell,
        degrees: counts(degrees),
        expected: counts(expected),
        z_kernel_sum_squares,
        odd_with_z_in_kernel,
        linear,
        identity_z_kernel,
        identity_faithful,
        matches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorClass {
    /// Character exponents on the kernel generators of the cover.
    pub character: Vec<u64>,
    pub signature: WedderburnSignature,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorTable {
    pub group: String,
    pub kernel: Vec<String>,
    pub classes: Vec<FactorClass>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub h1: FactorTable,
    pub h2: FactorTable,
    pub pairs: u64,
    /// Pairs whose tensor product is a sum of matrix rings over `F_{r^4}`.
    pub all_f4: Vec<(usize, usize)>,
    pub trivial_has_split_component: bool,
    pub none_found: bool,
}

fn factor_table(cover: &Cover, field: &Arc<FieldDesc>, seed: u64) -> Result<FactorTable> {
    let reps = cover.class_representatives(field)?;
    let classes = reps
        .into_par_iter()
        .enumerate()
        .map(|(i, (character, c))| {
            let signature = decompose(&TwistedAlgebra::new(c)?, seed.wrapping_add(i as u64))?;
            Ok(FactorClass { character, signature })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FactorTable { group: cover.quotient().label().to_string(), kernel: cover.kernel_names.clone(), classes })
}

/// Classes of `H` that are products of a class on `H_1` and one on `H_2`
/// (trivial mixed pairing), checked for an all-`F_{r^4}` decomposition.
pub fn pairing_trivial_h_scan(params: &DadeParams, factors: &DadeFactors, seed: u64) -> Result<ScanReport> {
    let field = params.field()?;
    let h1 = factor_table(&build_y_h1(params, factors)?, &field, seed)?;
    let h2 = factor_table(&build_y_h2(params, factors)?, &field, seed)?;
    let mut all_f4 = Vec::new();
    for (i, a) in h1.classes.iter().enumerate() {
        for (j, b) in h2.classes.iter().enumerate() {
            if all_degree(&signature_of_tensor(&a.signature, &b.signature), 4) {
                all_f4.push((i, j));
            }
        }
    }
    let trivial = signature_of_tensor(&h1.classes[0].signature, &h2.classes[0].signature);
    Ok(ScanReport {
        pairs: (h1.classes.len() * h2.classes.len()) as u64,
        none_found: all_f4.is_empty(),
        trivial_has_split_component: trivial.count(1, 1) > 0,
        all_f4,
        h1,
        h2,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorDelta {
    pub g1: WedderburnSignature,
    pub g2: WedderburnSignature,
    pub h1: WedderburnSignature,
    pub h2: WedderburnSignature,
    pub g: WedderburnSignature,
    pub h: WedderburnSignature,
    pub equal: bool,
}

/// `F G = F G_1 ⊗ F G_2` against `F H = F H_1 ⊗ F H_2`.
pub fn factor_delta(params: &DadeParams, factors: &DadeFactors, seed: u64) -> Result<FactorDelta> {
    let field = params.field()?;
    let groups = [&factors.g1, &factors.g2, &factors.h1, &factors.h2];
    let sigs = groups
        .par_iter()
        .map(|g| decompose(&TwistedAlgebra::group_algebra((*g).clone(), field.clone())?, seed))
        .collect::<Result<Vec<_>>>()?;
    let g = signature_of_tensor(&sigs[0], &sigs[1]);
    let h = signature_of_tensor(&sigs[2], &sigs[3]);
    Ok(FactorDelta { equal: g == h, g1: sigs[0].clone(), g2: sigs[1].clone(), h1: sigs[2].clone(), h2: sigs[3].clone(), g, h })
}

#[derive(Clone, Debug, Serialize)]
pub struct Dossier {
    pub q: u64,
    pub r: u64,
    pub order_g: u128,
    pub order_h: u128,
    pub order_y: u128,
    pub multiplier: MultiplierReport,
    pub h2_g: H2Report,
    pub h2_h: H2Report,
    pub lemma_a: LemmaAReport,
    pub subquotient: SubquotientReport,
    pub scan: ScanReport,
    pub delta: FactorDelta,
    /// Parts of the argument that are not computed.
    pub not_mechanized: Vec<String>,
}

/// Runs every computation for the given `q`.
pub fn run_dossier(q: u64, seed: u64) -> Result<Dossier> {
    let params = DadeParams::new(q)?;
    let factors = build_factors(&params)?;
    let (pg, ph) = dade_presentations(q)?;
    let order_y = y_presentation(q, false)?.order();
    let multiplier = multiplier_dade(&params, &factors)?;
    let (h2_g, h2_h) = h2_dade(&multiplier, params.r);
    let y = build_y_g1(&params, &factors)?;
    let lemma_a = verify_lemma_a(&params, &factors, &y, seed)?;
    let subquotient = r_subquotient_degrees(&params, &y, seed)?;
    drop(y);
    let scan = pairing_trivial_h_scan(&params, &factors, seed)?;
    let delta = factor_delta(&params, &factors, seed)?;
    Ok(Dossier {
        q,
        r: params.r,
        order_g: pg.order(),
        order_h: ph.order(),
        order_y,
        multiplier,
        h2_g,
        h2_h,
        lemma_a,
        subquotient,
        scan,
        delta,
        not_mechanized: vec![
            "classes of H with a nontrivial mixed pairing part".into(),
            "the induced-character case analysis for H".into(),
            "criterion checks on the full covers Y(G), Y(H)".into(),
        ],
    })
}
