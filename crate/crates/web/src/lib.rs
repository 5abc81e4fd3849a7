//! Browser bindings: decompose a twisted group algebra of an abelian group,
//! list H², and compare two groups. Every entry point takes strings and
//! returns a JSON string; failures come back as `{"error": "..."}`.

use serde_json::{json, Value};
use std::sync::Arc;
use tgrip_core::coh::{AbelianClassParams, AbelianH2, ClassDescriptor};
use tgrip_core::equivalence::{delta_equivalent, sim_equivalent};
use tgrip_core::ff::FieldDesc;
use tgrip_core::grp::Group;
use tgrip_core::linalg::invariant_factors;
use tgrip_core::tga::TwistedAlgebra;
use tgrip_core::wedd::decompose;
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest group order accepted from the page.
const WEB_ORDER_CAP: u64 = 256;

fn parse_group(s: &str) -> Result<Vec<u64>, String> {
    let mut v = Vec::new();
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match t.parse::<u64>() {
            Ok(n) if n >= 1 => v.push(n),
            _ => return Err(format!("bad cyclic order {t:?}")),
        }
    }
    let order: u64 = v.iter().try_fold(1u64, |a, &n| a.checked_mul(n)).ok_or("group too large")?;
    if v.is_empty() || order > WEB_ORDER_CAP {
        return Err(format!("give cyclic orders with product at most {WEB_ORDER_CAP}"));
    }
    Ok(invariant_factors(&v.into_iter().filter(|&n| n > 1).collect::<Vec<_>>()))
}

fn parse_field(s: &str) -> Result<Arc<FieldDesc>, String> {
    let nums: Vec<u32> = s.split(',').map(|t| t.trim().parse::<u32>().map_err(|_| format!("bad field {s:?}"))).collect::<Result<_, _>>()?;
    let f = match nums.as_slice() {
        [p] => FieldDesc::prime(*p),
        [p, k] => FieldDesc::new(*p, *k),
        _ => return Err(format!("bad field {s:?}")),
    };
    f.map(Arc::new).map_err(|e| e.to_string())
}

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn decompose_impl(group: &str, field: &str, class: &str) -> Result<Value, String> {
    let inv = parse_group(group)?;
    let f = parse_field(field)?;
    let g = Arc::new(Group::abelian(&inv).map_err(|e| e.to_string())?);
    let alg = if class.trim().is_empty() || class.trim() == "trivial" {
        TwistedAlgebra::group_algebra(g, f.clone())
    } else {
        let d: ClassDescriptor = serde_json::from_str(class).map_err(|e| format!("bad class descriptor: {e}"))?;
        let h2 = AbelianH2::new(&inv, &f);
        AbelianClassParams::from_descriptor(&d, inv.len())
            .and_then(|p| h2.cocycle(&g, &f, &p))
            .and_then(TwistedAlgebra::new)
    }
    .map_err(|e| e.to_string())?;
    let s = decompose(&alg, 0).map_err(|e| e.to_string())?;
    Ok(json!({ "group": inv, "rendered": s.render(f.q() as u64), "signature": s }))
}

fn h2_impl(group: &str, field: &str) -> Result<Value, String> {
    let inv = parse_group(group)?;
    let f = parse_field(field)?;
    let h = AbelianH2::new(&inv, &f);
    let gens: Vec<Value> =
        h.generators().iter().map(|p| json!({ "descriptor": p.descriptor(), "order": h.class_order(p) })).collect();
    Ok(json!({ "group": inv, "invariants": h.invariants(), "size": h.size(), "generators": gens }))
}

fn compare_impl(g: &str, h: &str, field: &str) -> Result<Value, String> {
    let (g, h) = (parse_group(g)?, parse_group(h)?);
    let f = parse_field(field)?;
    let delta = delta_equivalent(&g, &h, &f, 0).map_err(|e| e.to_string())?;
    let verdict = sim_equivalent(&g, &h, &f, 0).map_err(|e| e.to_string())?;
    Ok(json!({ "g": g, "h": h, "group_algebras_isomorphic": delta, "twisted": verdict }))
}

/// Wedderburn signature of `F^α G`; `class` is a descriptor or empty for the group algebra.
#[wasm_bindgen]
pub fn decompose_abelian(group: &str, field: &str, class: &str) -> String {
    respond(decompose_impl(group, field, class))
}

/// H²(G, F^*) with one descriptor per cyclic generator.
#[wasm_bindgen]
pub fn h2_abelian(group: &str, field: &str) -> String {
    respond(h2_impl(group, field))
}

/// Group ring isomorphism and the twisted relation for two abelian groups.
#[wasm_bindgen]
pub fn compare_abelian(g: &str, h: &str, field: &str) -> String {
    respond(compare_impl(g, h, field))
}
