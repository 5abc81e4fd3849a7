use serde_json::Value;
use tgrip_core::dade::{build_factors, build_y_g1, r_subquotient_degrees, verify_lemma_a, DadeParams};
use tgrip_core::wedd::WedderburnSignature;

fn golden() -> Value {
    serde_json::from_str(include_str!("golden/lemma_a_q5.json")).unwrap()
}

#[test]
fn lemma_a_and_subquotient_match_golden() {
    let g = golden();
    let params = DadeParams::new(5).unwrap();
    assert_eq!(params.r, g["r"].as_u64().unwrap());
    let factors = build_factors(&params).unwrap();
    assert_eq!(factors.g1.order() as u64, g["group_order"].as_u64().unwrap());
    let cover = build_y_g1(&params, &factors).unwrap();

    let rep = verify_lemma_a(&params, &factors, &cover, 0).unwrap();
    let want: WedderburnSignature = serde_json::from_value(g["signature"].clone()).unwrap();
    assert_eq!(rep.signature, want);
    assert!(rep.holds, "{rep:?}");
    assert_eq!(rep.sum_n_squared, 125);

    let sub = r_subquotient_degrees(&params, &cover, 0).unwrap();
    let degrees: Vec<(u64, u64)> = sub.degrees.iter().map(|c| (c.degree, c.count)).collect();
    let want: Vec<(u64, u64)> = serde_json::from_value(g["subquotient_degrees"].clone()).unwrap();
    assert_eq!(degrees, want);
    // both counting identities, recomputed from the degree list
    let q = params.q;
    let sq: u64 = degrees.iter().map(|&(d, c)| d * d * c).sum();
    assert_eq!(sq, sub.order);
    assert_eq!(sub.z_kernel_sum_squares, 2 * q.pow(3));
    assert_eq!(sub.order - sub.z_kernel_sum_squares, (2 * q * q - 2 * q) * q * q);
    assert!(sub.matches);
}
