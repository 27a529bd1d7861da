use super::*;
use proptest::prelude::*;

fn x(i: u32) -> DiffPoly {
    DiffPoly::x(i)
}

fn dx(i: u32, e: &[u32]) -> DiffPoly {
    DiffPoly::indet(AlgIndet::new(Var::x(i), DerivOp::from_exponents(e.to_vec())))
}

fn u(i: u32, e: &[u32]) -> AlgIndet {
    AlgIndet::new(Var::x(i), DerivOp::from_exponents(e.to_vec()))
}

fn c(n: i64) -> DiffPoly {
    DiffPoly::constant(FieldElem::from_int(n))
}

fn t(k: usize) -> DiffPoly {
    DiffPoly::constant(FieldElem::t(k))
}

#[test]
fn ranking_examples() {
    // (1,1,1,0) vs (1,2,0,1)
    assert_eq!(rank_compare(&u(1, &[0, 1]), &u(2, &[1])), Ordering::Less);
    assert_eq!(rank_compare(&u(1, &[1]), &u(1, &[0, 1])), Ordering::Less);
    assert_eq!(rank_compare(&u(1, &[1, 1]), &u(1, &[1, 1])), Ordering::Equal);
    assert!(AlgIndet::plain(Var::x(3)) < u(1, &[1]));
    assert!(AlgIndet::plain(Var::x(3)) < AlgIndet::plain(Var::prolonged(1, 0)));
}

#[test]
fn leibniz_on_indeterminates() {
    let f = x(1).mul(&dx(1, &[0, 1]));
    let expect = dx(1, &[1]).mul(&dx(1, &[0, 1])).add(&x(1).mul(&dx(1, &[1, 1])));
    assert_eq!(f.derive(1), expect);
    let g = t(1).mul(&x(1));
    assert_eq!(g.derive(1), x(1).add(&t(1).mul(&dx(1, &[1]))));
    assert_eq!(x(1).derive(1).derive(2), x(1).derive(2).derive(1));
}

#[test]
fn theta_apply_examples() {
    assert_eq!(x(1).theta_apply(&DerivOp::from_exponents(vec![2])), dx(1, &[2]));
    assert_eq!(x(1).theta_apply(&DerivOp::from_exponents(vec![1, 1])), dx(1, &[1, 1]));
    let f = x(1).mul(&t(1));
    assert_eq!(f.theta_apply(&DerivOp::identity()), f);
}

#[test]
fn leader_separant_initial() {
    let f = dx(1, &[1]).pow(3).add(&x(1).mul(&dx(1, &[1]))).add(&c(1));
    assert_eq!(f.leader().unwrap(), u(1, &[1]));
    assert_eq!(f.degree().unwrap(), 3);
    assert_eq!(f.separant().unwrap(), dx(1, &[1]).pow(2).scale(&FieldElem::from_int(3)).add(&x(1)));
    assert_eq!(f.initial().unwrap(), DiffPoly::one());

    let g = x(2).mul(&dx(1, &[1]).pow(2)).add(&dx(1, &[0, 1]));
    assert_eq!(g.rank().unwrap(), Rank { leader: u(1, &[0, 1]), degree: 1 });

    let h = x(1).mul(&dx(1, &[1]).pow(2)).sub(&c(1));
    assert_eq!(h.separant().unwrap(), x(1).mul(&dx(1, &[1])).scale(&FieldElem::from_int(2)));
    assert_eq!(h.initial().unwrap(), x(1));

    assert_eq!(c(5).leader(), Err(Error::ConstantPolynomial));
    let l = dx(1, &[1]).sub(&x(1));
    assert!(l.separant().unwrap().is_one_poly());
    assert!(l.initial().unwrap().is_one_poly());
}

#[test]
fn evaluation_examples() {
    let k = Field::rational_functions(1, 1).unwrap();
    let f = x(1).mul(&dx(1, &[1])).sub(&t(1));
    let a = Point::from_values([FieldElem::t(1)]);
    assert!(f.evaluate(&k, &a).unwrap().is_zero());
    assert!(dx(1, &[1]).evaluate(&k, &Point::from_values([FieldElem::from_int(7)])).unwrap().is_zero());
    let b = Point::from_values([FieldElem::t(1).add(&FieldElem::one())]);
    let v = x(1).pow(2).evaluate(&k, &b).unwrap();
    assert_eq!(v, FieldElem::t(1).pow(2).add(&FieldElem::t(1).mul(&FieldElem::from_int(2))).add(&FieldElem::one()));
    assert!(matches!(x(2).evaluate(&k, &a), Err(Error::MissingIndeterminate(_))));
}

#[test]
fn rendering() {
    let f = dx(1, &[2]).sub(&x(1));
    assert_eq!(f.to_string(), "d1^2 x1 - x1");
    let g = x(1).mul(&dx(1, &[1])).sub(&t(1));
    assert_eq!(g.to_string(), "d1 x1*x1 - t1");
    let h = dx(1, &[1]).pow(3).add(&x(1).scale(&FieldElem::from_ratio(1, 2)));
    assert_eq!(h.to_string(), "(d1 x1)^3 + (1/2)*x1");
    let inv = DiffPoly::constant(FieldElem::t(1).inv().unwrap().neg()).mul(&x(1));
    assert_eq!(inv.to_string(), "-1/t1*x1");
    assert_eq!(DiffPoly::zero().to_string(), "0");
    assert_eq!(x(1).rename(|v| Var::prolonged(v.index(), 1)).to_string(), "x1_1");
    assert_eq!(dx(2, &[1, 0, 2]).to_string(), "d1 d3^2 x2");
}

impl DiffPoly {
    fn is_one_poly(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

fn arb_indet() -> impl Strategy<Value = AlgIndet> {
    (1u32..3, 0u32..3, 0u32..2).prop_map(|(i, a, b)| u(i, &[a, b]))
}

fn arb_poly() -> impl Strategy<Value = DiffPoly> {
    let term = (prop::collection::vec((arb_indet(), 1u32..3), 1..3), -3i64..4, 0u32..2);
    prop::collection::vec(term, 1..4).prop_map(|ts| {
        let mut p = DiffPoly::zero();
        for (fs, k, tp) in ts {
            let mut m = DiffPoly::constant(FieldElem::from_int(k).mul(&FieldElem::t(1).pow(tp)));
            for (v, e) in fs {
                m = m.mul(&DiffPoly::indet(v).pow(e));
            }
            p = p.add(&m);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn separant_and_initial_rank_lower(f in arb_poly()) {
        prop_assume!(!f.is_constant());
        let r = rank_or_constant(&f);
        prop_assert!(rank_or_constant(&f.separant().unwrap()) < r);
        prop_assert!(rank_or_constant(&f.initial().unwrap()) < r);
    }

    #[test]
    fn derivative_leader_is_linear(f in arb_poly(), j in 1usize..3) {
        prop_assume!(!f.is_constant());
        let v = f.leader().unwrap();
        let df = f.derive(j);
        prop_assert_eq!(df.leader().unwrap(), v.derive(j));
        prop_assert_eq!(df.degree().unwrap(), 1);
        prop_assert_eq!(df.separant().unwrap(), f.separant().unwrap());
    }

    #[test]
    fn evaluation_is_homomorphism(f in arb_poly(), g in arb_poly(), a in -3i64..4, b in 0u32..3) {
        let k = Field::rational_functions(1, 2).unwrap();
        let p = Point::from_values([FieldElem::from_int(a).add(&FieldElem::t(1).pow(b)),
                                    FieldElem::t(1).inv().unwrap()]);
        let fv = f.evaluate(&k, &p).unwrap();
        let gv = g.evaluate(&k, &p).unwrap();
        prop_assert_eq!(f.mul(&g).evaluate(&k, &p).unwrap(), fv.mul(&gv));
        prop_assert_eq!(f.add(&g).evaluate(&k, &p).unwrap(), fv.add(&gv));
    }

    #[test]
    fn derivations_commute(f in arb_poly()) {
        prop_assert_eq!(f.derive(1).derive(2), f.derive(2).derive(1));
    }
}
