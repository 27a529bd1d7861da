//! Condition (i) of the prolongation axiom and witness points.

use ddh::axiom::{check_condition_i, check_witness, VStar};
use ddh::finitealg::FiniteAlgebra;
use ddh::parse::parse_poly;
use ddh::reduction::check_autoreduced;
use ddh::session::{build_structure, parse_point};
use ddh::Field;

fn vstar(ps: &[&str]) -> ddh::Result<VStar> {
    VStar::new(check_autoreduced(ps.iter().map(|p| parse_poly(p)).collect::<ddh::Result<_>>()?)?)
}

fn main() -> ddh::Result<()> {
    let lambda = vstar(&["d1 x1 - 1"])?;
    let trivial = build_structure(FiniteAlgebra::dual_numbers(), Field::rationals(1), None)?;
    for gamma in [&["d1 x1_0 - 1", "d1 x1_1"], &["d1 x1_0 - 1", "x1_1"], &["d1 x1_0 - 1", "d1 x1_1 - 1"]] {
        print!("{}", check_condition_i(&lambda, &vstar(gamma)?, &trivial)?);
    }

    let qt = Field::rational_functions(1, 1)?;
    let taylor = build_structure(FiniteAlgebra::dual_numbers(), qt.clone(), Some(&["t1 + e".into()]))?;
    let gamma = vstar(&["d1 x1_0 - 1", "d1 x1_1"])?;
    for a in ["t1", "t1^2"] {
        print!("{}", check_witness(&parse_point(a)?, &lambda, &gamma, &taylor)?);
    }
    let shift = build_structure(FiniteAlgebra::split(2)?, qt, Some(&["t1*u0 + (t1 + 1)*u1".into()]))?;
    let gamma = vstar(&["d1 x1_0 - 1", "d1 x1_1 - 1"])?;
    print!("{}", check_witness(&parse_point("t1")?, &lambda, &gamma, &shift)?);
    Ok(())
}
