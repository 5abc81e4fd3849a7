use crate::{CheckArgs, Common, DadeArgs, Failure, Outcome, Preset, TgripArgs};
use serde::Serialize;
use std::sync::Arc;
use tgrip_core::coh::{AbelianClassParams, AbelianH2, CentralExtension, ClassDescriptor};
use tgrip_core::equivalence::{delta_equivalent, sim_equivalent, Verdict};
use tgrip_core::ff::FieldDesc;
use tgrip_core::grp::{Group, PcPresentation};
use tgrip_core::linalg::invariant_factors;
use tgrip_core::tga::TwistedAlgebra;
use tgrip_core::wedd::{decompose as wedd_decompose, WedderburnSignature};
use tgrip_core::yam::{
    abelian_multiplier, build_d8_example, construct_cover_abelian, transgression_surjectivity, verify_cover_algebra,
    verify_cover_criterion, CoverAlgebraReport, CriterionReport,
};
use tgrip_core::dade::{run_dossier, Dossier};

type Res<T> = Result<T, Failure>;

fn input<T>(msg: impl Into<String>) -> Res<T> {
    Err(Failure::Input(msg.into()))
}

#[derive(Serialize)]
struct Report<'a, C: Serialize, R: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config: &'a C,
    seed: u64,
    result: &'a R,
}

/// Human summary on stdout and the JSON report wherever `--json` points.
fn emit<C: Serialize, R: Serialize>(common: &Common, command: &str, config: &C, result: &R, summary: &str) -> Res<()> {
    let report = Report { tool: "twisted", version: env!("CARGO_PKG_VERSION"), command, config, seed: common.seed, result };
    let json = serde_json::to_string_pretty(&report).map_err(|e| Failure::Input(e.to_string()))? + "\n";
    match common.json.as_deref() {
        Some(p) if p.as_os_str() == "-" => print!("{json}"),
        Some(p) => {
            std::fs::write(p, json)?;
            println!("{summary}");
        }
        None => println!("{summary}"),
    }
    Ok(())
}

/// `8,2` -> invariant factors `[2, 8]`.
fn parse_abelian(s: &str) -> Res<Vec<u64>> {
    let mut v = Vec::new();
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match t.parse::<u64>() {
            Ok(n) if n >= 1 => v.push(n),
            _ => return input(format!("bad cyclic order {t:?} in {s:?}")),
        }
    }
    if v.is_empty() {
        return input("empty abelian group specification");
    }
    Ok(invariant_factors(&v.into_iter().filter(|&n| n > 1).collect::<Vec<_>>()))
}

fn parse_field(s: &str) -> Res<Arc<FieldDesc>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<u32>().map_err(|_| Failure::Input(format!("bad field specification {s:?}")));
    let (p, k) = match parts.as_slice() {
        [p] => (num(p)?, 1),
        [p, k] => (num(p)?, num(k)?),
        _ => return input(format!("bad field specification {s:?}")),
    };
    Ok(Arc::new(FieldDesc::new(p, k)?))
}

#[derive(Serialize)]
struct FieldInfo {
    p: u32,
    k: u32,
}

fn field_info(f: &FieldDesc) -> FieldInfo {
    FieldInfo { p: f.p(), k: f.k() }
}

fn render_invariants(inv: &[u64]) -> String {
    if inv.is_empty() {
        "trivial".into()
    } else {
        inv.iter().map(|n| format!("C_{n}")).collect::<Vec<_>>().join(" x ")
    }
}

enum Source {
    Abelian(Vec<u64>),
    Explicit(Group),
}

/// Group and default field from explicit flags, falling back to the preset.
fn load_group(c: &Common) -> Res<(Source, Option<Arc<FieldDesc>>)> {
    let field = c.field.as_deref().map(parse_field).transpose()?;
    let pick = |f: Option<Arc<FieldDesc>>, p: u32| -> Res<Option<Arc<FieldDesc>>> {
        Ok(Some(match f {
            Some(f) => f,
            None => Arc::new(FieldDesc::prime(p)?),
        }))
    };
    if let Some(a) = &c.abelian {
        return Ok((Source::Abelian(parse_abelian(a)?), field));
    }
    if let Some(path) = &c.presentation {
        let text = std::fs::read_to_string(path)?;
        let label = path.file_stem().map_or("G".into(), |s| s.to_string_lossy().into_owned());
        let g = Group::from_pc(&PcPresentation::parse(&text)?)?.with_label(&label);
        return Ok((Source::Explicit(g), field));
    }
    match c.preset {
        Some(Preset::C9F17) => Ok((Source::Abelian(vec![9]), pick(field, 17)?)),
        Some(Preset::F31Pair) => Ok((Source::Abelian(vec![4, 16]), pick(field, 31)?)),
        Some(Preset::Prop33) => Ok((Source::Abelian(vec![2, 8]), pick(field, 11)?)),
        Some(Preset::D8Cover) => Ok((Source::Explicit(build_d8_example()?.0), pick(field, 3)?)),
        Some(Preset::D8Noncover) => Ok((Source::Explicit(build_d8_example()?.1), pick(field, 3)?)),
        Some(Preset::DadeQ5) => input("preset dade-q5 belongs to `dade run`"),
        None => input("give --abelian, --presentation or --preset"),
    }
}

fn need_field(f: Option<Arc<FieldDesc>>) -> Res<Arc<FieldDesc>> {
    f.ok_or_else(|| Failure::Input("--field is required".into()))
}

#[derive(Serialize)]
struct DecomposeResult {
    group: String,
    order: usize,
    field: FieldInfo,
    class: Option<ClassDescriptor>,
    signature: WedderburnSignature,
    rendered: String,
    commutative_component: bool,
}

pub fn decompose(c: &Common) -> Res<Outcome> {
    let (src, field) = load_group(c)?;
    let field = need_field(field)?;
    let class = match c.class.as_deref().map(str::trim) {
        None | Some("trivial") => None,
        Some(s) => Some(serde_json::from_str::<ClassDescriptor>(s).map_err(|e| Failure::Input(format!("bad class descriptor: {e}")))?),
    };
    let (group, alg) = match src {
        Source::Abelian(inv) => {
            let g = Arc::new(Group::abelian(&inv)?);
            let alg = match &class {
                None => TwistedAlgebra::group_algebra(g.clone(), field.clone())?,
                Some(d) => {
                    let h2 = AbelianH2::new(&inv, &field);
                    let p = AbelianClassParams::from_descriptor(d, inv.len())?;
                    TwistedAlgebra::new(h2.cocycle(&g, &field, &p)?)?
                }
            };
            (g, alg)
        }
        Source::Explicit(g) => {
            if class.is_some() {
                return input("class descriptors are defined for abelian groups only");
            }
            let g = Arc::new(g);
            (g.clone(), TwistedAlgebra::group_algebra(g, field.clone())?)
        }
    };
    let signature = wedd_decompose(&alg, c.seed)?;
    let rendered = signature.render(field.q() as u64);
    let res = DecomposeResult {
        group: group.label().to_string(),
        order: group.order(),
        field: field_info(&field),
        class,
        commutative_component: signature.has_commutative_component(),
        signature,
        rendered: rendered.clone(),
    };
    emit(c, "decompose", c, &res, &rendered)?;
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct ClassGen {
    descriptor: ClassDescriptor,
    order: u64,
}

#[derive(Serialize)]
struct H2Result {
    group: Vec<u64>,
    field: FieldInfo,
    invariants: Vec<u64>,
    size: u64,
    ext_orders: Vec<u64>,
    pairing_orders: Vec<u64>,
    generators: Vec<ClassGen>,
}

pub fn h2(c: &Common) -> Res<Outcome> {
    let (src, field) = load_group(c)?;
    let Source::Abelian(inv) = src else {
        return input("h2 enumerates classes for abelian groups only");
    };
    let field = need_field(field)?;
    let h = AbelianH2::new(&inv, &field);
    let generators = h.generators().iter().map(|p| ClassGen { descriptor: p.descriptor(), order: h.class_order(p) }).collect();
    let res = H2Result {
        group: inv,
        field: field_info(&field),
        invariants: h.invariants(),
        size: h.size(),
        ext_orders: h.ext_orders.clone(),
        pairing_orders: h.pairing_orders.clone(),
        generators,
    };
    emit(c, "h2", c, &res, &format!("H² = {}", render_invariants(&res.invariants)))?;
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct TgripResult {
    g: Vec<u64>,
    h: Vec<u64>,
    field: FieldInfo,
    delta_equivalent: bool,
    #[serde(flatten)]
    verdict: Verdict,
}

pub fn tgrip(a: &TgripArgs) -> Res<Outcome> {
    let c = &a.common;
    let field = c.field.as_deref().map(parse_field).transpose()?;
    let (g, h, default_p) = match (&a.g, &a.h, c.preset) {
        (Some(g), Some(h), _) => (parse_abelian(g)?, parse_abelian(h)?, None),
        (None, None, Some(Preset::C9F17)) => (vec![3, 3], vec![9], Some(17)),
        (None, None, Some(Preset::F31Pair)) => (vec![4, 16], vec![8, 8], Some(31)),
        (None, None, Some(Preset::Prop33)) => (vec![2, 8], vec![4, 4], Some(11)),
        _ => return input("give --g and --h, or one of the presets c9-f17, f31-pair, prop33"),
    };
    let field = match (field, default_p) {
        (Some(f), _) => f,
        (None, Some(p)) => Arc::new(FieldDesc::prime(p)?),
        (None, None) => return input("--field is required"),
    };
    let delta = delta_equivalent(&g, &h, &field, c.seed)?;
    let verdict = sim_equivalent(&g, &h, &field, c.seed)?;
    let eq = verdict.is_equivalent();
    let summary = format!(
        "{} ; group algebras {}",
        if eq { "EQUIVALENT" } else { "NOT_EQUIVALENT" },
        if delta { "isomorphic" } else { "not isomorphic" }
    );
    let res = TgripResult { g, h, field: field_info(&field), delta_equivalent: delta, verdict };
    emit(c, "tgrip", a, &res, &summary)?;
    Ok(if eq { Outcome::Ok } else { Outcome::Negative })
}

#[derive(Serialize)]
struct BuildResult {
    base: Vec<u64>,
    field: FieldInfo,
    h2: Vec<u64>,
    kernel_orders: Vec<u64>,
    cover_order: usize,
    algebra: CoverAlgebraReport,
    transgression_surjective: bool,
    criterion: CriterionReport,
}

pub fn yamazaki_build(c: &Common) -> Res<Outcome> {
    let (src, field) = load_group(c)?;
    let Source::Abelian(inv) = src else {
        return input("the cover constructor takes abelian groups");
    };
    let field = need_field(field)?;
    let spec = construct_cover_abelian(&inv, &field)?;
    let algebra = verify_cover_algebra(&spec, c.seed)?;
    let surj = transgression_surjectivity(&spec.extension, &field)?;
    let criterion = verify_cover_criterion(&spec.extension, &field, &abelian_multiplier(&inv))?;
    let ok = algebra.equal && surj && criterion.all();
    let summary = format!(
        "cover of order {} ; F E = {} ; checks {}",
        spec.extension.big.order(),
        algebra.cover.render(field.q() as u64),
        if ok { "pass" } else { "fail" }
    );
    let res = BuildResult {
        base: inv,
        field: field_info(&field),
        h2: spec.h2.invariants(),
        kernel_orders: spec.kernel_orders.clone(),
        cover_order: spec.extension.big.order(),
        algebra,
        transgression_surjective: surj,
        criterion,
    };
    emit(c, "yamazaki build", c, &res, &summary)?;
    Ok(if ok { Outcome::Ok } else { Outcome::Negative })
}

#[derive(Serialize)]
struct CheckResult {
    group: String,
    order: usize,
    kernel: Vec<u64>,
    quotient_order: usize,
    bullets: [bool; 4],
    cover: bool,
    criterion: CriterionReport,
    algebra: WedderburnSignature,
    algebra_rendered: String,
}

fn eval_word(g: &Group, word: &str) -> Res<u32> {
    let Some(p) = g.presentation() else {
        return input("kernel words need a group given by a presentation");
    };
    let w = p.parse_word(word)?;
    Ok(w.into_iter().fold(0, |acc, (j, e)| g.mul(acc, g.pow(g.gens()[j], e))))
}

pub fn yamazaki_check(a: &CheckArgs) -> Res<Outcome> {
    let c = &a.common;
    let (src, field) = load_group(c)?;
    let Source::Explicit(g) = src else {
        return input("check takes a presentation or a d8 preset");
    };
    let field = need_field(field)?;
    let g = Arc::new(g);
    let kernel: Vec<u32> = if a.kernel.trim() == "center" {
        g.center()
    } else {
        a.kernel.split(',').map(|w| eval_word(&g, w)).collect::<Res<_>>()?
    };
    let mg = match (&a.multiplier, c.preset) {
        (Some(m), _) => parse_abelian(m)?,
        (None, Some(Preset::D8Cover | Preset::D8Noncover)) => vec![2],
        (None, _) => return input("--multiplier is required"),
    };
    let ext = CentralExtension::from_kernel(g.clone(), &kernel)?;
    let criterion = verify_cover_criterion(&ext, &field, &mg)?;
    let algebra = wedd_decompose(&TwistedAlgebra::group_algebra(g.clone(), field.clone())?, c.seed)?;
    let bullets = criterion.bullets();
    let cover = criterion.all();
    let summary = format!(
        "bullets {:?} ; {} ; F E = {}",
        bullets,
        if cover { "Yamazaki cover" } else { "not a Yamazaki cover" },
        algebra.render(field.q() as u64)
    );
    let res = CheckResult {
        group: g.label().to_string(),
        order: g.order(),
        kernel: g.abelian_invariants_of(&ext.kernel),
        quotient_order: ext.quotient.order(),
        bullets,
        cover,
        criterion,
        algebra_rendered: algebra.render(field.q() as u64),
        algebra,
    };
    emit(c, "yamazaki check", a, &res, &summary)?;
    Ok(if cover { Outcome::Ok } else { Outcome::Negative })
}

fn dade_summary(d: &Dossier) -> String {
    let r = d.r;
    let degrees: Vec<String> = d.subquotient.degrees.iter().map(|c| format!("{}^{}", c.degree, c.count)).collect();
    [
        format!("q = {}, r = {r}, |G| = |H| = {}", d.q, d.order_g),
        format!("M(G) = {}, M(H) = {}", render_invariants(&d.multiplier.m_g), render_invariants(&d.multiplier.m_h)),
        format!("H²(G) = {}, H²(H) = {}", render_invariants(&d.h2_g.total), render_invariants(&d.h2_h.total)),
        format!("F^ψ G_1 = {} ; all over F_{r}^4: {}", d.lemma_a.signature.render(r), d.lemma_a.holds),
        format!("R: order {}, degrees {}", d.subquotient.order, degrees.join(" ")),
        format!(
            "pairing-trivial classes of H: {} checked, {} with all components over F_{r}^4",
            d.scan.pairs,
            d.scan.all_f4.len()
        ),
        format!("F G_1 ⊗ F G_2 = F H_1 ⊗ F H_2: {}", d.delta.equal),
    ]
    .join("\n")
}

pub fn dade(a: &DadeArgs) -> Res<Outcome> {
    let c = &a.common;
    let q = match (a.q, c.preset) {
        (Some(q), _) => q,
        (None, Some(Preset::DadeQ5) | None) => 5,
        (None, Some(_)) => return input("only the dade-q5 preset applies to `dade run`"),
    };
    let d = run_dossier(q, c.seed)?;
    if let Some(f) = c.field.as_deref() {
        let f = parse_field(f)?;
        if f.q() as u64 != d.r {
            return input(format!("the field is fixed to F_{} for q = {q}", d.r));
        }
    }
    let ok = d.lemma_a.holds && d.subquotient.matches && d.scan.none_found && d.delta.equal;
    emit(c, "dade run", a, &d, &dade_summary(&d))?;
    Ok(if ok { Outcome::Ok } else { Outcome::Negative })
}
