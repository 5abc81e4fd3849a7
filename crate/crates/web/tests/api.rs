use serde_json::Value;
use tgrip_web::{compare_abelian, decompose_abelian, h2_abelian};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn decompose_group_and_twisted() {
    let r = parse(decompose_abelian("9", "17", ""));
    assert_eq!(r["rendered"], "F_17 ⊕ 4F_289");
    let r = parse(decompose_abelian("2", "5", r#"{"ext":[1],"pairing":[]}"#));
    assert_eq!(r["rendered"], "F_25");
    let r = parse(decompose_abelian("4,4", "11", r#"{"ext":[0,0],"pairing":[[1,2,1]]}"#));
    assert_eq!(r["rendered"], "4M_2(F_11)");
}

#[test]
fn h2_listing() {
    let r = parse(h2_abelian("8,2", "11"));
    assert_eq!(r["invariants"], serde_json::json!([2, 2, 2]));
    assert_eq!(r["generators"].as_array().unwrap().len(), 3);
}

#[test]
fn compare() {
    let r = parse(compare_abelian("16,4", "8,8", "31"));
    assert_eq!(r["twisted"]["verdict"], "EQUIVALENT");
    assert_eq!(r["group_algebras_isomorphic"], true);
    let r = parse(compare_abelian("8,2", "4,4", "11"));
    assert_eq!(r["twisted"]["verdict"], "NOT_EQUIVALENT");
}

#[test]
fn errors_are_reported() {
    for s in [decompose_abelian("9", "15", ""), decompose_abelian("9", "3", ""), h2_abelian("1000", "5"), decompose_abelian("x", "5", "")] {
        assert!(parse(s)["error"].is_string());
    }
}
