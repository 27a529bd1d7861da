//! Acceptance criteria, one line per criterion.

use std::cmp::Ordering;
use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ddh::axiom::{check_condition_i, check_witness, VStar};
use ddh::coeffield::series::shift_to_point;
use ddh::diffpoly::{rank_compare, Polys};
use ddh::dstructure::{DStructure, MapMode};
use ddh::extend::{extend_to_element, ExtensionRequest};
use ddh::finitealg::{DAlgebra, DElement, FiniteAlgebra, Piece};
use ddh::hensel::{lift, Lift, LiftProblem, SolverStrategy};
use ddh::parse::{parse_in, parse_poly};
use ddh::prolongation::{components, nabla, pihat, prolonged_var, tau_generators};
use ddh::reduction::{check_autoreduced, check_coherent, is_reduced, ritt_remainder, AutoreducedSet};
use ddh::ring::{DiffRing, Ring, Scalars};
use ddh::session::build_structure;
use ddh::{AlgIndet, DerivOp, DiffPoly, Field, FieldElem, Point, Var};

type Outcome = Result<String, String>;
type Evaluator = Box<dyn Fn(&DAlgebra<'_, Scalars>, &[DElement<FieldElem>]) -> DElement<FieldElem>>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn fe(n: i64) -> FieldElem {
    FieldElem::from_int(n)
}

fn t(k: usize) -> FieldElem {
    FieldElem::t(k)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: ddh::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn ops(m: usize, max_order: u32) -> Vec<DerivOp> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| (0..=max_order).map(move |e| [p.clone(), vec![e]].concat()))
            .collect();
    }
    out.into_iter().filter(|e| e.iter().sum::<u32>() <= max_order).map(DerivOp::from_exponents).collect()
}

fn ranking_laws() -> Outcome {
    let mut checked = 0usize;
    for m in 1..=3 {
        let thetas = ops(m, 3);
        let us: Vec<AlgIndet> =
            (1..=3).flat_map(|i| thetas.iter().map(move |th| AlgIndet::new(Var::x(i), th.clone()))).collect();
        for u in &us {
            for v in &us {
                let c = rank_compare(u, v);
                ensure((c == Ordering::Equal) == (u == v), || format!("totality fails at {u}, {v}"))?;
                ensure(c == rank_compare(v, u).reverse(), || format!("antisymmetry fails at {u}, {v}"))?;
                for w in &us {
                    if c == Ordering::Less && rank_compare(v, w) == Ordering::Less {
                        ensure(rank_compare(u, w) == Ordering::Less, || format!("transitivity fails at {u}, {v}, {w}"))?;
                    }
                }
                for th in &thetas {
                    if th.is_identity() {
                        continue;
                    }
                    ensure(rank_compare(u, &u.apply(th)) == Ordering::Less, || format!("{u} is not below its derivative"))?;
                    if c == Ordering::Less {
                        ensure(rank_compare(&u.apply(th), &v.apply(th)) == Ordering::Less, || {
                            format!("{u} < {v} but not after applying a derivative")
                        })?;
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} derivative comparisons, 0 violations"))
}

fn rand_coeff(rng: &mut ChaCha8Rng, gens: usize) -> FieldElem {
    let mut c = fe(rng.gen_range(-3..=3));
    if c.is_zero() {
        c = fe(1);
    }
    for k in 1..=gens {
        if rng.gen_bool(0.3) {
            c = c.mul(&t(k).pow(rng.gen_range(1..=2)));
        }
    }
    if rng.gen_bool(0.15) {
        c = c.div(&t(1).add(&fe(rng.gen_range(1..=3)))).unwrap();
    }
    c
}

fn rand_indet(rng: &mut ChaCha8Rng, vars: u32, m: usize, max_order: u32) -> AlgIndet {
    let mut e = vec![0u32; m];
    let order = rng.gen_range(0..=max_order);
    for _ in 0..order {
        e[rng.gen_range(0..m)] += 1;
    }
    AlgIndet::new(Var::x(rng.gen_range(1..=vars)), DerivOp::from_exponents(e))
}

fn rand_poly(rng: &mut ChaCha8Rng, vars: u32, m: usize, max_order: u32, terms: usize, gens: usize) -> DiffPoly {
    let mut p = DiffPoly::zero();
    for _ in 0..terms {
        let mut mono = DiffPoly::constant(rand_coeff(rng, gens));
        for _ in 0..rng.gen_range(0..=2) {
            mono = mono.mul(&DiffPoly::indet(rand_indet(rng, vars, m, max_order)));
        }
        p = p.add(&mono);
    }
    p
}

fn rand_set(rng: &mut ChaCha8Rng) -> AutoreducedSet {
    loop {
        let n = rng.gen_range(1..=2);
        let ps: Vec<DiffPoly> = (0..n).map(|_| rand_poly(rng, 2, 2, 1, 2, 2)).collect();
        if ps.iter().any(|p| p.is_constant()) {
            continue;
        }
        if let Ok(s) = check_autoreduced(ps) {
            return s;
        }
    }
}

fn reduction_certificates() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 200;
    for k in 0..n {
        let set = rand_set(&mut rng);
        let f = rand_poly(&mut rng, 2, 2, 2, 3, 2);
        let cert = ritt_remainder(&f, &set);
        let mut m = DiffPoly::one();
        for (&i, &(a, b)) in &cert.exponents {
            m = m.mul(&set.get(i).initial.pow(a)).mul(&set.get(i).separant.pow(b));
        }
        let mut rhs = cert.remainder.clone();
        for term in &cert.terms {
            rhs = rhs.add(&term.coeff.mul(&set.get(term.element).poly.theta_apply(&term.theta)));
        }
        ensure(m.mul(&f).sub(&rhs).is_zero(), || format!("pair {k}: M f - sum - r = {}", m.mul(&f).sub(&rhs)))?;
        ensure(is_reduced(&cert.remainder, &set), || format!("pair {k}: remainder {} is not reduced", cert.remainder))?;
        for u in cert.remainder.indeterminates() {
            for e in set.elements() {
                let v = e.leader();
                if v.derivative_quotient(&u).is_some_and(|th| !th.is_identity()) {
                    return Err(format!("pair {k}: remainder contains the derivative {u} of leader {v}"));
                }
                if *v == u && cert.remainder.degree_in(&u) >= e.degree() {
                    return Err(format!("pair {k}: remainder has degree >= {} in {u}", e.degree()));
                }
            }
        }
    }
    Ok(format!("{n} random pairs over Q(t1,t2), every identity exact"))
}

fn set_of(ps: &[&str]) -> AutoreducedSet {
    check_autoreduced(ps.iter().map(|p| parse_poly(p).unwrap()).collect()).unwrap()
}

fn coherence_ground_truth() -> Outcome {
    let good = ok(check_coherent(&set_of(&["d1 x1 - t2", "d2 x1 - t1"])), "coherence")?;
    ensure(good.is_coherent(), || format!("integrable pair reported incoherent:\n{good}"))?;
    let bad = ok(check_coherent(&set_of(&["d1 x1 - t2", "d2 x1"])), "coherence")?;
    let w = bad.witness().ok_or("non-integrable pair reported coherent")?;
    ensure(w.delta == DiffPoly::constant(fe(-1)), || format!("witness {} instead of -1", w.delta))?;
    Ok("coherent / incoherent with witness -1".into())
}

fn shift_structure(alg: FiniteAlgebra, shifts: &[Vec<i64>]) -> DStructure {
    let field = Field::rational_functions(2, 2).unwrap();
    let images = (1..=2)
        .map(|k| shifts.iter().map(|c| t(k).add(&fe(c[k - 1]))).collect::<Vec<_>>())
        .collect();
    DStructure::new(alg, field, images).unwrap()
}

fn rand_rat_poly(rng: &mut ChaCha8Rng, gens: usize) -> FieldElem {
    let mut g = FieldElem::zero();
    for _ in 0..3 {
        let mut m = fe(rng.gen_range(-3..=3));
        for k in 1..=gens {
            m = m.mul(&t(k).pow(rng.gen_range(0..=2)));
        }
        g = g.add(&m);
    }
    g
}

fn rand_coherent_set(rng: &mut ChaCha8Rng) -> AutoreducedSet {
    let x = |i: u32, e: Vec<u32>| DiffPoly::indet(AlgIndet::new(Var::x(i), DerivOp::from_exponents(e)));
    loop {
        let g = rand_rat_poly(rng, 2);
        let (g1, g2) = (g.partial(0), g.partial(1));
        let ps = match rng.gen_range(0..4) {
            0 => vec![x(1, vec![1]).sub(&DiffPoly::constant(g1)), x(1, vec![0, 1]).sub(&DiffPoly::constant(g2))],
            1 => vec![
                x(1, vec![1]).sub(&x(1, vec![]).scale(&g1)),
                x(1, vec![0, 1]).sub(&x(1, vec![]).scale(&g2)),
                rand_poly(rng, 1, 2, 1, 2, 2).add(&x(2, vec![1, 1])),
            ],
            2 => vec![rand_poly(rng, 2, 2, 2, 3, 2)],
            _ => vec![rand_poly(rng, 1, 2, 1, 2, 2).add(&x(1, vec![2])), rand_poly(rng, 1, 2, 0, 2, 2).add(&x(2, vec![]).pow(2))],
        };
        let Ok(set) = check_autoreduced(ps) else { continue };
        if set.polys().any(|p| p.variables().is_empty()) {
            continue;
        }
        if check_coherent(&set).map(|r| r.is_coherent()).unwrap_or(false) {
            return set;
        }
    }
}

fn coefficient_map_transport() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let structures = [
        shift_structure(FiniteAlgebra::split(2).unwrap(), &[vec![0, 0], vec![1, -2]]),
        shift_structure(FiniteAlgebra::split(3).unwrap(), &[vec![0, 0], vec![3, 0], vec![-1, 5]]),
    ];
    let mut n = 0;
    while n < 60 {
        let set = rand_coherent_set(&mut rng);
        for s in &structures {
            for i in 1..s.num_factors() {
                let phi = |c: &FieldElem| s.sigma(i, c);
                let hphi = ok(set.h().map_coefficients(phi), "map H")?;
                if hphi.is_zero() {
                    continue;
                }
                let mapped = ok(set.map_coefficients(phi), "map set")?;
                ensure(mapped.leaders() == set.leaders(), || format!("leaders of {set} change under sigma{i}"))?;
                ensure(*mapped.h() == hphi, || format!("H of the image of {set} differs from the image of H"))?;
                let rep = ok(check_coherent(&mapped), "coherence")?;
                ensure(rep.is_coherent(), || format!("image of {set} under sigma{i} is incoherent"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} (set, map) pairs over Q(t1,t2)"))
}

/// `f(b)` computed by a dedicated closure, independently of the lifting code.
struct Instance {
    name: String,
    alg: FiniteAlgebra,
    field: Field,
    system: Vec<String>,
    point: Point,
    eval: Evaluator,
    expect: Option<String>,
}

fn run_instance(inst: &Instance, solver: &SolverStrategy) -> Result<Lift, String> {
    let dp = DAlgebra::new(&inst.alg, Polys);
    let system = inst.system.iter().map(|p| parse_in(&dp, p)).collect::<ddh::Result<Vec<_>>>();
    let problem = LiftProblem { algebra: &inst.alg, field: &inst.field, system: ok(system, "parse")? };
    let l = ok(lift(&problem, 0, &inst.point, solver), &inst.name)?;
    let d = DAlgebra::new(&inst.alg, Scalars);
    let v = (inst.eval)(&d, &l.b);
    ensure(v.iter().all(|c| c.is_zero()), || format!("{}: f(b) = {}", inst.name, d.render(&v)))?;
    if let Some(e) = &inst.expect {
        ensure(d.render(&l.b[0]) == *e, || format!("{}: b = {} instead of {e}", inst.name, d.render(&l.b[0])))?;
    }
    Ok(l)
}

fn worked_instances() -> Vec<Instance> {
    let qt = Field::rational_functions(1, 1).unwrap();
    let q1 = Field::rationals(1);
    vec![
        Instance {
            name: "x*d1 x - t1 - e".into(),
            alg: FiniteAlgebra::dual_numbers(),
            field: qt,
            system: vec!["x1*d1 x1 - t1 - e".into()],
            point: Point::from_values([t(1)]),
            eval: Box::new(|d, b| {
                let eps = d.constant(&[q(0, 1), q(1, 1)]);
                d.sub(&d.sub(&d.mul(&b[0], &d.derive(1, &b[0])), &d.from_scalar(&t(1))), &eps)
            }),
            expect: Some("t1 + e".into()),
        },
        Instance {
            name: "x^2 - 1 - e mod e^2".into(),
            alg: FiniteAlgebra::dual_numbers(),
            field: q1.clone(),
            system: vec!["x1^2 - 1 - e".into()],
            point: Point::from_values([fe(1)]),
            eval: Box::new(|d, b| d.sub(&d.mul(&b[0], &b[0]), &d.constant(&[q(1, 1), q(1, 1)]))),
            expect: Some("1 + (1/2)*e".into()),
        },
        Instance {
            name: "x^2 - 1 - e mod e^3".into(),
            alg: FiniteAlgebra::truncated(3).unwrap(),
            field: q1,
            system: vec!["x1^2 - 1 - e".into()],
            point: Point::from_values([fe(1)]),
            eval: Box::new(|d, b| d.sub(&d.mul(&b[0], &b[0]), &d.constant(&[q(1, 1), q(1, 1), q(0, 1)]))),
            expect: Some("1 + (1/2)*e - (1/8)*e^2".into()),
        },
    ]
}

fn render_coords(alg: &FiniteAlgebra, v: &[FieldElem]) -> String {
    let parts: Vec<String> = v.iter().zip(alg.labels()).map(|(c, l)| format!("({c})*{l}")).collect();
    parts.join(" + ")
}

/// `δx - c x - g` with `g = δb - c b`, so that `b` is a root by construction.
fn random_linear(rng: &mut ChaCha8Rng, k: usize) -> Instance {
    let alg = match k % 3 {
        0 => FiniteAlgebra::dual_numbers(),
        1 => FiniteAlgebra::truncated(3).unwrap(),
        _ => FiniteAlgebra::product(&[Piece::Jets { vars: 2, order: 1 }]).unwrap(),
    };
    let field = Field::rational_functions(1, 1).unwrap();
    let dim = alg.dim();
    let b: Vec<FieldElem> = (0..dim)
        .map(|_| (0..3).fold(FieldElem::zero(), |acc, e| acc.add(&fe(rng.gen_range(-3..=3)).mul(&t(1).pow(e)))))
        .collect();
    let c: Vec<BigRational> = (0..dim).map(|_| q(rng.gen_range(-2..=2), rng.gen_range(1..=2))).collect();
    let d = DAlgebra::new(&alg, Scalars);
    let cc = d.constant(&c);
    let g = d.sub(&d.derive(1, &b), &d.mul(&cc, &b));
    let system = vec![format!("d1 x1 - ({})*x1 - ({})", render_coords(&alg, &d.constant(&c)), render_coords(&alg, &g))];
    let point = Point::from_values([b[0].clone()]);
    Instance {
        name: format!("random linear #{k} over {alg}"),
        alg,
        field,
        system,
        point,
        eval: Box::new(move |d, x| d.sub(&d.sub(&d.derive(1, &x[0]), &d.mul(&d.constant(&c), &x[0])), &g)),
        expect: None,
    }
}

fn hensel_instances() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut v = worked_instances();
    v.extend((0..36).map(|k| random_linear(&mut rng, k)));
    v
}

fn hensel_suite() -> Outcome {
    let insts = hensel_instances();
    for inst in &insts {
        run_instance(inst, &SolverStrategy::ExactAnsatz { max_degree: 4 })?;
    }
    Ok(format!("3 worked lifts and {} random linear lifts, f(b) = 0 exactly", insts.len() - 3))
}

fn filtration_invariant() -> Outcome {
    let mut stages = 0;
    for inst in &hensel_instances() {
        let l = run_instance(inst, &SolverStrategy::ExactAnsatz { max_degree: 4 })?;
        let dec = ok(inst.alg.decomposition(), "decomposition")?;
        let d = DAlgebra::new(&inst.alg, Scalars);
        for (factor, level, b) in &l.stages {
            let v = ok(d.project(*factor, &(inst.eval)(&d, b)), "project")?;
            let c = dec.adapted_coordinates(&Scalars, &v);
            for k in 0..=*level {
                for &slot in dec.level_slots(*factor, k) {
                    ensure(c[slot].is_zero(), || {
                        format!("{}: after level {level}, coefficient at filtration level {k} is {}", inst.name, c[slot])
                    })?;
                }
            }
            stages += 1;
        }
    }
    Ok(format!("{stages} intermediate lifts checked"))
}

/// `a(t1 + c)` by re-expansion.
fn shifted(a: &FieldElem, c: i64) -> FieldElem {
    let pt = [q(c, 1)];
    let n = FieldElem::from_poly(shift_to_point(a.numer(), &pt).unwrap());
    let d = FieldElem::from_poly(shift_to_point(a.denom(), &pt).unwrap());
    n.div(&d).unwrap()
}

fn section_identities() -> Outcome {
    let field = Field::rational_functions(1, 1).unwrap();
    let taylor = build_structure(FiniteAlgebra::dual_numbers(), field.clone(), Some(&["t1 + e".into()])).unwrap();
    let shift = build_structure(FiniteAlgebra::split(3).unwrap(), field.clone(), Some(&["t1*u0 + (t1 + 1)*u1 + (t1 - 2)*u2".into()]))
        .unwrap();
    let shifts = [0, 1, -2];
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let n = 100;
    for k in 0..n {
        let s = if k % 2 == 0 { &taylor } else { &shift };
        let a = Point::from_values((0..2).map(|_| rand_coeff(&mut rng, 1)));
        let na = ok(nabla(&a, s), "nabla")?;
        ensure(ok(pihat(0, &na, s), "pihat")? == a, || format!("pihat0(nabla(a)) != a for a = {a}"))?;
        if k % 2 == 1 {
            for (i, &c) in shifts.iter().enumerate() {
                let expect = Point::from_values(a.iter().map(|(_, v)| shifted(v, c)));
                ensure(ok(pihat(i, &na, s), "pihat")? == expect, || format!("pihat{i}(nabla(a)) != sigma{i}(a) for a = {a}"))?;
            }
        } else {
            let d1: Vec<FieldElem> = a.iter().map(|(_, v)| ok(field.derive(1, v), "derive")).collect::<Result<_, _>>()?;
            let comp1 = Point::from_values(d1);
            let got = ok(pihat(0, &na, s), "pihat")?;
            ensure(got == a, || "pihat0 after nabla".into())?;
            for (k1, v) in comp1.iter() {
                let j = na.get(prolonged_var(k1.index(), 1)).cloned();
                ensure(j.as_ref() == Some(v), || format!("coordinate 1 of nabla(a) is not the derivative at {a}"))?;
            }
        }
        let g = rand_poly(&mut rng, 2, 1, 2, 3, 1);
        let f = g.sub(&DiffPoly::constant(ok(g.evaluate(&field, &a), "evaluate")?));
        for c in ok(components(&f, s), "components")? {
            ensure(ok(c.evaluate(&field, &na), "evaluate")?.is_zero(), || format!("component {c} of {f} is nonzero at nabla({a})"))?;
        }
        for i in 0..s.num_factors() {
            let fs = ok(s.map_poly(&f, MapMode::Sigma(i)), "map")?;
            let p = ok(pihat(i, &na, s), "pihat")?;
            ensure(ok(fs.evaluate(&field, &p), "evaluate")?.is_zero(), || format!("transport fails for {f} in factor {i}"))?;
        }
    }
    Ok(format!("{n} random points and systems"))
}

fn extension_consistency() -> Outcome {
    let k = Field::rationals(1);
    let l = Field::rational_functions(1, 1).unwrap();
    let cases: Vec<(FiniteAlgebra, &str, Vec<FieldElem>)> = vec![
        (FiniteAlgebra::dual_numbers(), "d1 x1 - 1", vec![]),
        (FiniteAlgebra::split(2).unwrap(), "d1 x1 - 1", vec![t(1).add(&fe(1))]),
        (FiniteAlgebra::dual_numbers(), "x1*d1 x1 - t1", vec![]),
    ];
    for (idx, (alg, f, targets)) in cases.into_iter().enumerate() {
        let field = if idx == 2 { l.clone() } else { k.clone() };
        let s = ok(DStructure::trivial(alg, field), "structure")?;
        let set = set_of(&[f]).assert_characteristic();
        let req = ExtensionRequest {
            structure: &s,
            field: &l,
            element: Point::from_values([t(1)]),
            charset: Some(set.clone()),
            targets: targets.iter().map(|v| Point::from_values([v.clone()])).collect(),
        };
        let e = ok(extend_to_element(&req, &SolverStrategy::default()), "extend")?;
        let mut abar = Point::new();
        for (kx, v) in e.b.iter().enumerate() {
            for (j, c) in v.iter().enumerate() {
                abar.set(prolonged_var(kx as u32 + 1, j), c.clone());
            }
        }
        let tau = ok(tau_generators(&set, &s), "prolong")?;
        for g in tau.generators() {
            ensure(ok(g.evaluate(&l, &abar), "evaluate")?.is_zero(), || format!("{g} is nonzero at the extension of {f}"))?;
        }
        let p0 = ok(pihat(0, &abar, &s), "pihat")?;
        ensure(!ok(set.h().evaluate(&l, &p0), "evaluate")?.is_zero(), || format!("H vanishes at the extension of {f}"))?;
        ensure(p0 == Point::from_values([t(1)]), || "residue 0 differs from a".into())?;
        for (i, target) in targets.iter().enumerate() {
            let p = ok(pihat(i + 1, &abar, &s), "pihat")?;
            ensure(p == Point::from_values([target.clone()]), || format!("pihat{} = {p}, target {target}", i + 1))?;
        }
    }
    Ok("3 worked extensions lie on the prolongation with the requested residues".into())
}

fn vstar(ps: &[&str]) -> VStar {
    VStar::new(set_of(ps)).unwrap()
}

fn axiom_reports() -> Result<Vec<(bool, String)>, String> {
    let lambda = vstar(&["d1 x1 - 1"]);
    let trivial = ok(DStructure::trivial(FiniteAlgebra::dual_numbers(), Field::rationals(1)), "structure")?;
    let mut out = Vec::new();
    for gamma in [&["d1 x1_0 - 1", "d1 x1_1"], &["d1 x1_0 - 1", "x1_1"], &["d1 x1_0 - 1", "d1 x1_1 - 1"]] {
        let r = ok(check_condition_i(&lambda, &vstar(gamma), &trivial), "condition (i)")?;
        let detail = r.counterexample().map(|c| format!("{} -> {}", c.component, c.remainder)).unwrap_or_default();
        out.push((r.passed(), format!("{r}{detail}")));
    }
    let qt = Field::rational_functions(1, 1).unwrap();
    let taylor = build_structure(FiniteAlgebra::dual_numbers(), qt.clone(), Some(&["t1 + e".into()])).unwrap();
    let gamma = vstar(&["d1 x1_0 - 1", "d1 x1_1"]);
    for a in [t(1), t(1).pow(2)] {
        let w = ok(check_witness(&Point::from_values([a]), &lambda, &gamma, &taylor), "witness")?;
        out.push((w.passed(), w.to_string()));
    }
    let shift = build_structure(FiniteAlgebra::split(2).unwrap(), qt, Some(&["t1*u0 + (t1 + 1)*u1".into()])).unwrap();
    let gamma = vstar(&["d1 x1_0 - 1", "d1 x1_1 - 1"]);
    let w = ok(check_witness(&Point::from_values([t(1)]), &lambda, &gamma, &shift), "witness")?;
    out.push((w.passed(), w.to_string()));
    Ok(out)
}

fn axiom_regression() -> Outcome {
    let first = axiom_reports()?;
    let verdicts: Vec<bool> = first.iter().map(|(p, _)| *p).collect();
    ensure(verdicts == [true, true, false, true, false, true], || format!("verdicts {verdicts:?}"))?;
    ensure(first[2].1.ends_with("d1 x1_1 -> 1"), || format!("condition (i) counterexample: {}", first[2].1))?;
    ensure(first[3].1.contains("nabla(a) = x1_0 = t1, x1_1 = 1"), || "nabla(t1) in the Taylor witness".into())?;
    ensure(first[4].1.contains("in V*(Lambda): no"), || "t1^2 witness fails at Lambda".into())?;
    ensure(first[5].1.contains("x1_1 = t1 + 1"), || "nabla(t1) in the shift witness".into())?;
    let again = std::thread::spawn(axiom_reports).join().map_err(|_| "report thread panicked".to_string())??;
    ensure(first == again, || "reports differ between runs".into())?;
    Ok("6 verdicts as expected, reports byte-identical across runs".into())
}

fn parser_roundtrip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let n = 500;
    for _ in 0..n {
        let terms = rng.gen_range(1..=4);
        let mut p = rand_poly(&mut rng, 3, 2, 3, terms, 2);
        if rng.gen_bool(0.2) {
            p = p.mul(&DiffPoly::indet(AlgIndet::plain(prolonged_var(rng.gen_range(1..=2), rng.gen_range(0..=2)))));
        }
        let r = p.to_string();
        let back = ok(parse_poly(&r), &format!("parse `{r}`"))?;
        ensure(back.to_string() == r, || format!("`{r}` re-renders as `{back}`"))?;
        ensure(back == p, || format!("`{r}` parses to a different polynomial"))?;
    }
    Ok(format!("{n} random canonical polynomials"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("ranking laws", ranking_laws),
        ("reduction certificates", reduction_certificates),
        ("coherence ground truth", coherence_ground_truth),
        ("coefficient-map transport", coefficient_map_transport),
        ("differential Hensel suite", hensel_suite),
        ("filtration invariant", filtration_invariant),
        ("section and transport identities", section_identities),
        ("structure-extension consistency", extension_consistency),
        ("axiom-checker regression", axiom_regression),
        ("parser round-trip", parser_roundtrip),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let secs = || start.elapsed().as_secs_f64();
        match std::panic::catch_unwind(check) {
            Ok(Ok(detail)) => println!("PASS {name}: {detail} ({:.1}s)", secs()),
            Ok(Err(why)) => {
                failed += 1;
                println!("FAIL {name}: {why} ({:.1}s)", secs());
            }
            Err(_) => {
                failed += 1;
                println!("FAIL {name}: panicked ({:.1}s)", secs());
            }
        }
    }
    println!("{} of 10 criteria pass", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
