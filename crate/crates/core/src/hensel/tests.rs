use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::diffpoly::{AlgIndet, DerivOp};
use crate::error::SolveFailure;
use crate::finitealg::Piece;

fn fe(n: i64) -> FieldElem {
    FieldElem::from_int(n)
}

fn fr(n: i64, d: i64) -> FieldElem {
    FieldElem::from_ratio(n, d)
}

fn t(i: usize) -> FieldElem {
    FieldElem::t(i)
}

fn k(c: FieldElem) -> DiffPoly {
    DiffPoly::constant(c)
}

fn x() -> DiffPoly {
    DiffPoly::x(1)
}

fn dx(e: &[u32]) -> DiffPoly {
    DiffPoly::indet(AlgIndet::new(Var::x(1), DerivOp::from_exponents(e.to_vec())))
}

fn qt() -> Field {
    Field::rational_functions(1, 1).unwrap()
}

fn exact() -> SolverStrategy {
    SolverStrategy::ExactAnsatz { max_degree: 2 }
}

fn at(v: FieldElem) -> Point {
    Point::from_values([v])
}

#[test]
fn nonlinear_lift_over_dual_numbers() {
    let alg = FiniteAlgebra::dual_numbers();
    let field = qt();
    // x δx − t − ε
    let f = vec![x().mul(&dx(&[1])).sub(&k(t(1))), k(fe(-1))];
    let p = LiftProblem { algebra: &alg, field: &field, system: vec![f.clone()] };
    let l = lift(&p, 0, &at(t(1)), &exact()).unwrap();
    assert_eq!(l.b, vec![vec![t(1), fe(1)]]);
    assert!(coords::evaluate(&alg, &field, &f, &l.b).unwrap().iter().all(FieldElem::is_zero));
    assert_eq!(l.render(&alg), vec!["t1 + e"]);
    assert_eq!(l.levels[0].system, vec![x().add(&k(t(1)).mul(&dx(&[1]))).sub(&k(fe(1)))]);

    let lin = assemble_linearization(&p, 0, &f, &at(t(1)), &[vec![t(1), fe(0)]], 1, 1).unwrap();
    assert_eq!(lin.to_string(), "t1*d1 x1 + x1 - 1");
}

fn newton(d: usize) -> Lift {
    let alg = FiniteAlgebra::truncated(d).unwrap();
    let field = Field::rationals(0);
    let mut f = vec![x().pow(2).sub(&k(fe(1))), k(fe(-1))];
    f.resize(d, DiffPoly::zero());
    let p = LiftProblem { algebra: &alg, field: &field, system: vec![f] };
    lift(&p, 0, &at(fe(1)), &exact()).unwrap()
}

#[test]
fn algebraic_newton_steps() {
    assert_eq!(newton(2).b, vec![vec![fe(1), fr(1, 2)]]);
    let b = newton(3).b;
    assert_eq!(b, vec![vec![fe(1), fr(1, 2), fr(-1, 8)]]);
    // squaring oracle: (1 + e/2 − e²/8)² = 1 + e mod e³
    let alg = FiniteAlgebra::truncated(3).unwrap();
    let d = DAlgebra::new(&alg, Scalars);
    assert_eq!(d.mul(&b[0], &b[0]), vec![fe(1), fe(1), fe(0)]);
}

#[test]
fn preconditions() {
    let alg = FiniteAlgebra::dual_numbers();
    let field = qt();
    let f = vec![x().mul(&dx(&[1])).sub(&k(t(1))), k(fe(-1))];
    let p = LiftProblem { algebra: &alg, field: &field, system: vec![f] };
    let e = lift(&p, 0, &at(t(1).add(&fe(1))), &exact()).unwrap_err();
    assert!(matches!(e, Error::PreconditionFailed(m) if m.starts_with("res(f)(a)")));

    let g = vec![x().mul(&dx(&[1])), k(fe(-1))];
    let p = LiftProblem { algebra: &alg, field: &field, system: vec![g] };
    let e = lift(&p, 0, &at(fe(0)), &exact()).unwrap_err();
    assert!(matches!(e, Error::PreconditionFailed(m) if m.starts_with("res(H)(a) = 0")));
}

#[test]
fn nonlocal_lift_is_componentwise() {
    let alg = FiniteAlgebra::product(&[Piece::Local(2), Piece::Point]).unwrap();
    let field = qt();
    let base = x().mul(&dx(&[1])).sub(&k(t(1)));
    // coordinates on u0, e0, u1
    let f = vec![base.clone(), k(fe(-1)), base.clone()];
    let p = LiftProblem { algebra: &alg, field: &field, system: vec![f] };
    let l = lift_nonlocal(&p, &[at(t(1)), at(t(1))], &exact()).unwrap();
    assert_eq!(l.b, vec![vec![t(1), fe(1), t(1)]]);

    let single = FiniteAlgebra::dual_numbers();
    let f1 = vec![base, k(fe(-1))];
    let p1 = LiftProblem { algebra: &single, field: &field, system: vec![f1] };
    assert_eq!(lift_nonlocal(&p1, &[at(t(1))], &exact()).unwrap().b, lift(&p1, 0, &at(t(1)), &exact()).unwrap().b);

    // H = x² vanishes at the residue 0 of the second factor
    let g = vec![dx(&[1]).sub(&k(fe(1))), k(fe(0)), x().mul(&dx(&[1]))];
    let p = LiftProblem { algebra: &alg, field: &field, system: vec![g] };
    let e = lift_nonlocal(&p, &[at(t(1)), at(fe(0))], &exact()).unwrap_err();
    assert!(matches!(&e, Error::InFactor { context, .. } if context == "local factor 1"));
    assert!(matches!(e.root(), Error::PreconditionFailed(_)));
}

#[test]
fn linear_autoreduction_examples() {
    // δy is a derivative of the leader y, so it is reduced away
    let r = linear_autoreduce(&[x().add(&dx(&[1])), dx(&[1])]).unwrap();
    assert_eq!(r.polys().cloned().collect::<Vec<_>>(), vec![x()]);
    let already = linear_autoreduce(&[dx(&[1]).sub(&k(fe(1)))]).unwrap();
    assert_eq!(already.polys().cloned().collect::<Vec<_>>(), vec![dx(&[1]).sub(&k(fe(1)))]);
    // one step gives y + 1/2 and δy − 1/2; then δ(y + 1/2) = 0 contradicts δy = 1/2
    let r = linear_autoreduce(&[dx(&[1]).scale(&fe(2)).sub(&k(fe(1))), x().add(&dx(&[1]))]);
    assert_eq!(r, Err(SolveFailure::ProvenInconsistent("the linear system implies -(1/2) = 0".into())));
}

#[test]
fn linear_completion_to_coherence() {
    // δ1 y = t2, δ2 y = t1 is coherent; δ1 y = t2, δ2 y = 0 is not
    let good = linear_autoreduce(&[dx(&[1]).sub(&k(t(2))), dx(&[0, 1]).sub(&k(t(1)))]).unwrap();
    assert!(check_coherent(&good).unwrap().is_coherent());
    let bad = linear_autoreduce(&[dx(&[1]).sub(&k(t(2))), dx(&[0, 1])]);
    assert!(matches!(bad, Err(SolveFailure::ProvenInconsistent(_))));

    let f2 = Field::rational_functions(2, 2).unwrap();
    let s = solve(&good, &f2, &exact()).unwrap();
    assert_eq!(s.values.get(Var::x(1)), Some(&t(1).mul(&t(2))));
}

#[test]
fn solver_examples() {
    let set = |ps: Vec<DiffPoly>| linear_autoreduce(&ps).unwrap();
    let field = qt();
    let s = solve(&set(vec![x().add(&k(t(1)).mul(&dx(&[1]))).sub(&k(fe(1)))]), &field, &SolverStrategy::ExactAnsatz { max_degree: 0 }).unwrap();
    assert_eq!(s.values.get(Var::x(1)), Some(&fe(1)));
    let s = solve(&set(vec![dx(&[1]).sub(&k(fe(1)))]), &field, &SolverStrategy::ExactAnsatz { max_degree: 1 }).unwrap();
    assert_eq!(s.values.get(Var::x(1)), Some(&t(1)));
    assert!(matches!(
        solve(&set(vec![dx(&[1]).sub(&k(t(1)))]), &field, &SolverStrategy::ExactAnsatz { max_degree: 1 }),
        Err(SolveFailure::NoSolutionFoundAtBound(_))
    ));
    // homogeneous: the canonical particular solution is zero in both modes
    let hom = set(vec![dx(&[1]).sub(&x())]);
    assert_eq!(solve(&hom, &field, &exact()).unwrap().values.get(Var::x(1)), Some(&fe(0)));
    let jet = SolverStrategy::Jet { point: vec![BigRational::from_integer(0.into())], order: 3 };
    let s = solve(&hom, &field, &jet).unwrap();
    assert_eq!(s.values.get(Var::x(1)), Some(&fe(0)));
    assert_eq!(s.precision.unwrap().order, 2);
    // δy = 1/(1 − t) at 0: y = t + t²/2 + t³/3
    let geo = set(vec![dx(&[1]).sub(&k(fe(1).sub(&t(1)).inv().unwrap()))]);
    let s = solve(&geo, &field, &jet).unwrap();
    assert_eq!(s.values.get(Var::x(1)), Some(&t(1).add(&t(1).pow(2).mul(&fr(1, 2))).add(&t(1).pow(3).mul(&fr(1, 3)))));
    let sing = SolverStrategy::Jet { point: vec![BigRational::from_integer(1.into())], order: 3 };
    assert!(matches!(solve(&geo, &field, &sing), Err(SolveFailure::SingularPoint(_))));
}

fn arb_q() -> impl Strategy<Value = FieldElem> {
    prop::collection::vec(-3i64..4, 1..4).prop_map(|cs| cs.iter().rev().fold(fe(0), |acc, c| acc.mul(&t(1)).add(&fe(*c))))
}

fn arb_h() -> impl Strategy<Value = DiffPoly> {
    let indet = prop::sample::select(vec![vec![], vec![1], vec![2]]);
    let term = (prop::collection::vec((indet, 1u32..3), 0..3), -3i64..4, 0u32..2);
    prop::collection::vec(term, 1..4).prop_map(|ts| {
        ts.into_iter().fold(DiffPoly::zero(), |acc, (fs, c, e)| {
            let m = fs.into_iter().fold(k(fe(c).mul(&t(1).pow(e))), |m, (o, d)| m.mul(&dx(&o).pow(d)));
            acc.add(&m)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn newton_lifts_are_exact(a in 1i64..6, c1 in -5i64..6, c2 in -5i64..6, d in 2usize..5) {
        let alg = FiniteAlgebra::truncated(d).unwrap();
        let field = Field::rationals(0);
        let mut f = vec![x().pow(2).sub(&k(fe(a * a))), k(fe(-c1)), k(fe(-c2))];
        f.resize(d.max(3), DiffPoly::zero());
        f.truncate(d);
        let p = LiftProblem { algebra: &alg, field: &field, system: vec![f.clone()] };
        let l = lift(&p, 0, &at(fe(a)), &exact()).unwrap();
        prop_assert_eq!(&l.b[0][0], &fe(a));
        prop_assert!(coords::evaluate(&alg, &field, &f, &l.b).unwrap().iter().all(FieldElem::is_zero));
    }

    #[test]
    fn linearization_commutes_with_derivation(h in arb_h(), c in arb_q(), a in arb_q()) {
        let alg = FiniteAlgebra::dual_numbers();
        let field = qt();
        let pa = at(a.clone());
        let h0 = h.sub(&k(h.evaluate(&field, &pa).unwrap()));
        let f = vec![h0, k(c)];
        let p = LiftProblem { algebra: &alg, field: &field, system: vec![] };
        let b = vec![vec![a.clone(), fe(0)]];
        let lf = assemble_linearization(&p, 0, &f, &pa, &b, 1, 1).unwrap();
        let ldf = assemble_linearization(&p, 0, &coords::derive(&f, 1), &pa, &b, 1, 1).unwrap();
        prop_assert_eq!(ldf, lf.derive(1));
    }

    #[test]
    fn linearization_scales_by_residues(h in arb_h(), g in arb_h(), c in arb_q(), a in arb_q()) {
        let alg = FiniteAlgebra::dual_numbers();
        let field = qt();
        let pa = at(a.clone());
        let f = vec![h.sub(&k(h.evaluate(&field, &pa).unwrap())), k(c)];
        let gf: Vec<DiffPoly> = f.iter().map(|fj| g.mul(fj)).collect();
        let p = LiftProblem { algebra: &alg, field: &field, system: vec![] };
        let b = vec![vec![a.clone(), fe(0)]];
        let lf = assemble_linearization(&p, 0, &f, &pa, &b, 1, 1).unwrap();
        let lgf = assemble_linearization(&p, 0, &gf, &pa, &b, 1, 1).unwrap();
        prop_assert_eq!(lgf, lf.scale(&g.evaluate(&field, &pa).unwrap()));
    }

    #[test]
    fn jet_lifts_agree_on_common_truncation(q in arb_q(), n in 1u32..4) {
        let alg = FiniteAlgebra::dual_numbers();
        let field = qt();
        // x δx − t − q ε around a = t, expanded at t = 1
        let f = vec![x().mul(&dx(&[1])).sub(&k(t(1))), k(q.neg())];
        let p = LiftProblem { algebra: &alg, field: &field, system: vec![f.clone()] };
        let one = vec![BigRational::from_integer(1.into())];
        let lo = lift(&p, 0, &at(t(1)), &SolverStrategy::Jet { point: one.clone(), order: n }).unwrap();
        let hi = lift(&p, 0, &at(t(1)), &SolverStrategy::Jet { point: one.clone(), order: n + 2 }).unwrap();
        let prec = lo.precision.clone().unwrap();
        let v = coords::evaluate(&alg, &field, &f, &lo.b).unwrap();
        for c in &v {
            prop_assert!(vanishes_to_order(c, &one, prec.order).unwrap());
        }
        let diff = lo.b[0][1].sub(&hi.b[0][1]);
        prop_assert!(vanishes_to_order(&diff, &one, prec.order).unwrap());
    }
}
