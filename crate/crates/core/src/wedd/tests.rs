use super::*;
use crate::coh::{AbelianClassParams, AbelianH2, Cocycle};
use crate::grp::{Group, PcPresentation};
use std::sync::Arc;

fn group_alg(g: Group, p: u32) -> TwistedAlgebra {
    TwistedAlgebra::group_algebra(Arc::new(g), Arc::new(FieldDesc::prime(p).unwrap())).unwrap()
}

fn sig(blocks: &[(u64, u64, u64)]) -> WedderburnSignature {
    WedderburnSignature::from_blocks(blocks.iter().flat_map(|&(n, d, m)| std::iter::repeat((n, d)).take(m as usize)))
}

#[test]
fn cyclic_golden() {
    let c9 = decompose(&group_alg(Group::abelian(&[9]).unwrap(), 17), 0).unwrap();
    assert_eq!(c9, sig(&[(1, 1, 1), (1, 2, 4)]));
    let c33 = decompose(&group_alg(Group::abelian(&[3, 3]).unwrap(), 17), 0).unwrap();
    assert_eq!(c33, c9);
    let c8 = decompose(&group_alg(Group::abelian(&[8]).unwrap(), 5), 0).unwrap();
    assert_eq!(c8, sig(&[(1, 1, 4), (1, 2, 2)]));
    assert_eq!(c8.render(5), "4F_5 ⊕ 2F_25");
}

#[test]
fn c9_over_f7_has_cubic_fields() {
    let s = decompose(&group_alg(Group::abelian(&[9]).unwrap(), 7), 0).unwrap();
    assert_eq!(s, sig(&[(1, 1, 3), (1, 3, 2)]));
}

#[test]
fn dihedral_group_algebra() {
    let d8 = Group::from_pc(&PcPresentation::new().gen("b", 2).gen("a", 4).conj("a", "b", "a^-1")).unwrap();
    let a = group_alg(d8, 3);
    let d = decompose_full(&a, 0).unwrap();
    assert_eq!(d.signature, sig(&[(1, 1, 4), (2, 1, 1)]));
    for b in &d.blocks {
        assert_eq!(a.multiply(&b.idempotent, &b.idempotent), b.idempotent);
    }
    assert_eq!(center_signature(&a, 1).unwrap(), vec![1, 1, 1, 1, 1]);
}

#[test]
fn c2_twisted_over_f5_is_f25() {
    let f = Arc::new(FieldDesc::prime(5).unwrap());
    let g = Arc::new(Group::abelian(&[2]).unwrap());
    let h2 = AbelianH2::new(&[2], &f);
    let beta = TwistedAlgebra::new(h2.cocycle(&g, &f, &AbelianClassParams { ext: vec![1], pairing: vec![] }).unwrap()).unwrap();
    let sb = decompose(&beta, 0).unwrap();
    assert_eq!(sb, sig(&[(1, 2, 1)]));
    let triv = TwistedAlgebra::new(Cocycle::trivial(g, f)).unwrap();
    let st = decompose(&triv, 0).unwrap();
    assert_eq!(st, sig(&[(1, 1, 2)]));
    let direct = decompose(&triv.tensor(&beta).unwrap(), 0).unwrap();
    assert_eq!(signature_of_tensor(&st, &sb), direct);
}

#[test]
fn tensor_rule() {
    let f2 = sig(&[(1, 2, 1)]);
    assert_eq!(signature_of_tensor(&f2, &f2), sig(&[(1, 2, 2)]));
    let s = sig(&[(2, 1, 3), (1, 3, 1)]);
    assert_eq!(signature_of_tensor(&sig(&[(1, 1, 1)]), &s), s);
    let t = signature_of_tensor(&sig(&[(2, 2, 1)]), &sig(&[(3, 3, 1)]));
    assert_eq!(t, sig(&[(6, 6, 1)]));
    assert_eq!(t.dim, 36 * 6);
}

#[test]
fn pairing_class_has_no_commutative_component() {
    let f = Arc::new(FieldDesc::prime(11).unwrap());
    let g = Arc::new(Group::abelian(&[4, 4]).unwrap());
    let h2 = AbelianH2::new(&[4, 4], &f);
    let a = TwistedAlgebra::new(h2.cocycle(&g, &f, &AbelianClassParams { ext: vec![0, 0], pairing: vec![1] }).unwrap()).unwrap();
    let s = decompose(&a, 3).unwrap();
    assert!(!s.has_commutative_component());
    assert_eq!(s.dim, 16);
    assert!(s.components.iter().all(|c| c.n == 2));
}

#[test]
fn seeds_agree() {
    let a = group_alg(Group::abelian(&[2, 12]).unwrap(), 13);
    let s0 = decompose(&a, 0).unwrap();
    for seed in 1..3 {
        assert_eq!(decompose(&a, seed).unwrap(), s0);
    }
}

#[test]
fn modular_input_is_rejected() {
    assert!(matches!(decompose(&group_alg(Group::abelian(&[3]).unwrap(), 3), 0), Err(Error::Modular { .. })));
}

#[test]
fn json_shape() {
    let s = sig(&[(1, 1, 1), (1, 2, 4)]);
    let j = serde_json::to_string(&s).unwrap();
    assert_eq!(j, r#"{"dim":9,"components":[{"n":1,"d":1,"mult":1},{"n":1,"d":2,"mult":4}]}"#);
}
