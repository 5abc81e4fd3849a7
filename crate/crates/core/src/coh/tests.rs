use super::*;
use crate::grp::PcPresentation;

fn field(p: u32) -> Arc<FieldDesc> {
    Arc::new(FieldDesc::prime(p).unwrap())
}

fn abelian(inv: &[u64]) -> Arc<Group> {
    Arc::new(Group::abelian(inv).unwrap())
}

/// Exhaustive search for f with a = δf.
fn brute_coboundary(a: &Cocycle) -> bool {
    let g = a.group();
    let n = g.order();
    let m = a.field().units();
    let total = m.pow(n as u32 - 1);
    'outer: for code in 0..total {
        let mut f = vec![0u64; n];
        let mut c = code;
        for v in f.iter_mut().skip(1) {
            *v = c % m;
            c /= m;
        }
        for x in g.elements() {
            for y in g.elements() {
                let d = (f[x as usize] + f[y as usize] + m - f[g.mul(x, y) as usize]) % m;
                if d != a.exp(x, y) as u64 {
                    continue 'outer;
                }
            }
        }
        return true;
    }
    false
}

#[test]
fn carry_cocycle_on_c2_over_f5() {
    let f5 = field(5);
    let g = abelian(&[2]);
    let h2 = AbelianH2::new(&[2], &f5);
    assert_eq!(h2.invariants(), vec![2]);
    assert_eq!(h2.ext_root_order(0), 4);
    let beta = h2.cocycle(&g, &f5, &AbelianClassParams { ext: vec![1], pairing: vec![] }).unwrap();
    let x = g.gens()[0];
    // u_g^2 = zeta_4
    assert_eq!(f5.order(beta.value(x, x)), 4);
    assert!(beta.satisfies_identity_exhaustive());
    assert!(is_coboundary(&beta).is_none());
    assert!(!brute_coboundary(&beta));
    // -1 = 2^2 is a square in F_5, so the square of the class is trivial
    let sq = beta.pow(2);
    assert_eq!(sq.value(x, x), f5.from_int(-1));
    assert!(is_coboundary(&sq).is_some());
    assert!(brute_coboundary(&sq));
    let fourth = beta.pow(4);
    assert!(is_coboundary(&fourth).is_some());
    assert_eq!(class_order(&beta), 2);
    assert_eq!(beta.pointwise_order(), 4);
}

#[test]
fn coboundary_solver_agrees_with_brute_force() {
    let d8 = Arc::new(Group::from_pc(&PcPresentation::new().gen("b", 2).gen("a", 4).conj("a", "b", "a^-1")).unwrap());
    for (g, p) in [(abelian(&[2, 2]), 5), (abelian(&[4]), 5), (abelian(&[2, 2]), 3), (d8.clone(), 3), (abelian(&[6]), 7)] {
        let f = field(p);
        let h2 = if g.is_abelian() && g.presentation().is_some() {
            Some(AbelianH2::new(&g.presentation().unwrap().rel_orders.iter().map(|&m| m as u64).collect::<Vec<_>>(), &f))
        } else {
            None
        };
        let mut cocycles = vec![Cocycle::trivial(g.clone(), f.clone())];
        if let Some(h2) = &h2 {
            for c in h2.enumerate().unwrap() {
                cocycles.push(h2.cocycle(&g, &f, &c).unwrap());
            }
        }
        // add coboundaries of a few functions
        for seed in 0..3u32 {
            let fun: Vec<u32> = g.elements().map(|x| if x == 0 { 0 } else { (x * 7 + seed * 3) % f.units() as u32 }).collect();
            let cb = Cocycle::coboundary(g.clone(), f.clone(), &fun);
            for c in cocycles.clone() {
                cocycles.push(c.mul(&cb).unwrap());
            }
        }
        for c in &cocycles {
            assert!(c.satisfies_identity());
            if g.order() <= 8 {
                assert_eq!(is_coboundary(c).is_some(), brute_coboundary(c));
            }
            if let Some(w) = is_coboundary(c) {
                let back = Cocycle::coboundary(g.clone(), f.clone(), &w);
                assert_eq!(back.table(), c.table());
            }
        }
    }
}

#[test]
fn identity_check_detects_corruption() {
    let f5 = field(5);
    let g = abelian(&[2, 4]);
    let h2 = AbelianH2::new(&[2, 4], &f5);
    for p in h2.enumerate().unwrap() {
        let c = h2.cocycle(&g, &f5, &p).unwrap();
        assert!(c.satisfies_identity());
        assert!(c.satisfies_identity_exhaustive());
    }
    let mut t = h2.cocycle(&g, &f5, &h2.generators()[0]).unwrap().table().to_vec();
    t[3 * 8 + 5] = (t[3 * 8 + 5] + 1) % 4;
    assert!(Cocycle::new(g.clone(), f5.clone(), t.clone()).is_err());
    let bad = Cocycle::from_fn_unchecked(g.clone(), f5.clone(), |x, y| t[(x * 8 + y) as usize] as u64);
    assert!(!bad.satisfies_identity());
    assert!(!bad.satisfies_identity_exhaustive());
}

#[test]
fn h2_structures() {
    let f11 = FieldDesc::prime(11).unwrap();
    let f17 = FieldDesc::prime(17).unwrap();
    let f31 = FieldDesc::prime(31).unwrap();
    let f5 = FieldDesc::prime(5).unwrap();
    assert_eq!(AbelianH2::new(&[2, 8], &f11).invariants(), vec![2, 2, 2]);
    assert_eq!(AbelianH2::new(&[4, 4], &f11).invariants(), vec![2, 2, 2]);
    assert_eq!(AbelianH2::new(&[4, 16], &f31).invariants(), vec![2, 2, 2]);
    assert_eq!(AbelianH2::new(&[8, 8], &f31).invariants(), vec![2, 2, 2]);
    assert_eq!(AbelianH2::new(&[9], &f17).invariants(), Vec::<u64>::new());
    assert_eq!(AbelianH2::new(&[3, 3], &f17).invariants(), Vec::<u64>::new());
    assert_eq!(AbelianH2::new(&[9], &f17).enumerate().unwrap().len(), 1);
    assert_eq!(AbelianH2::new(&[2, 8], &f11).enumerate().unwrap().len(), 8);
    // d(4, F_5) = gcd(4, 4, 4) = 4
    assert_eq!(AbelianH2::new(&[4, 4], &f5).enumerate().unwrap().len(), 64);
}

#[test]
fn identification_round_trips_and_orders_match() {
    for (inv, p) in [(vec![2, 4], 5u32), (vec![4, 4], 11), (vec![2, 2, 2], 3), (vec![3, 6], 7), (vec![4, 8], 13)] {
        let f = field(p);
        let g = abelian(&inv);
        let h2 = AbelianH2::new(&inv, &f);
        for params in h2.enumerate().unwrap() {
            let c = h2.cocycle(&g, &f, &params).unwrap();
            assert_eq!(h2.identify(&c).unwrap(), params);
            assert_eq!(class_order(&c), h2.class_order(&params));
        }
    }
}

#[test]
fn pairing_commutator_in_c4xc4_over_f11() {
    let f11 = field(11);
    let g = abelian(&[4, 4]);
    let h2 = AbelianH2::new(&[4, 4], &f11);
    let alpha = h2.cocycle(&g, &f11, &AbelianClassParams { ext: vec![0, 0], pairing: vec![1] }).unwrap();
    let (h1, h2g) = (g.gens()[0], g.gens()[1]);
    let comm = f11.div(alpha.value(h1, h2g), alpha.value(h2g, h1)).unwrap();
    assert_eq!(comm, f11.from_int(-1));
}

#[test]
fn inflation_and_transgression() {
    let f5 = field(5);
    let c4 = abelian(&[4]);
    let x = c4.gens()[0];
    let sq = c4.pow(x, 2);
    let ext = CentralExtension::from_kernel(c4.clone(), &[sq]).unwrap();
    assert_eq!(ext.quotient.order(), 2);
    // faithful character on the kernel C2
    let chi = ext.character(&f5, &[sq], &[2]).unwrap();
    let t = ext.transgression(f5.clone(), &chi);
    assert!(t.satisfies_identity());
    // u^2 = -1 and -1 is a square in F_5
    assert!(is_coboundary(&t).is_some());
    assert!(brute_coboundary(&t));
    // over F_3 the same character gives the nontrivial class
    let f3 = field(3);
    let t3 = ext.transgression(f3.clone(), &ext.character(&f3, &[sq], &[1]).unwrap());
    assert!(is_coboundary(&t3).is_none());
    assert!(!brute_coboundary(&t3));
    assert!(is_coboundary(&ext.transgression(f5.clone(), &ext.character(&f5, &[sq], &[0]).unwrap())).is_some());
    // inflating the C2 carry class to C4
    let c2 = ext.quotient.clone();
    let h2 = AbelianH2::new(&[2], &f5);
    let carry = h2.cocycle(&abelian(&[2]), &f5, &h2.generators()[0]).unwrap();
    let carry = Cocycle::new(c2.clone(), f5.clone(), carry.table().to_vec()).unwrap();
    let inf = inflation(&carry, c4.clone(), &ext.proj);
    assert!(inf.satisfies_identity_exhaustive());
    assert_eq!(class_order(&carry) % class_order(&inf), 0);
    // coboundaries inflate to coboundaries
    let cb = Cocycle::coboundary(c2.clone(), f5.clone(), &[0, 3]);
    assert!(is_coboundary(&inflation(&cb, c4.clone(), &ext.proj)).is_some());
    // the character must respect the relations of Z
    assert!(ext.character(&f5, &[sq], &[1]).is_err());
}

#[test]
fn multiplier_arithmetic() {
    assert_eq!(tensor_abelian(&[2], &[4]), vec![2]);
    assert_eq!(tensor_abelian(&[10], &[20]), vec![10]);
    assert_eq!(tensor_abelian(&[5, 2], &[]), Vec::<u64>::new());
    assert_eq!(multiplier_direct_product(&[], &[], &[3], &[3]), vec![3]);
    assert_eq!(multiplier_direct_product(&[5], &[], &[20], &[10]), vec![5, 10]);
    assert_eq!(multiplier_direct_product(&[2], &[], &[2], &[]), vec![2]);
}

#[test]
fn identity_action_fixes_everything() {
    let f5 = field(5);
    let g = abelian(&[2, 2]);
    let h2 = AbelianH2::new(&[2, 2], &f5);
    let gens: Vec<Cocycle> = h2.generators().iter().map(|p| h2.cocycle(&g, &f5, p).unwrap()).collect();
    let fixed = multiplier_coprime_invariants(&gens, g.gens()).unwrap();
    assert_eq!(fixed.fixed.len(), 8);
    assert_eq!(fixed.invariants, vec![2, 2, 2]);
    // swapping the factors is an automorphism; a non-automorphism is rejected
    assert!(multiplier_coprime_invariants(&gens, &[g.gens()[0], g.gens()[0]]).is_err());
}
