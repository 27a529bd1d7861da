//! Differential Hensel lifting through the nilpotent filtration.

use ddh::finitealg::{DAlgebra, FiniteAlgebra};
use ddh::hensel::{lift, LiftProblem, SolverStrategy};
use ddh::parse::parse_in;
use ddh::session::parse_point;
use ddh::{DiffPoly, Field};

fn run(alg: &FiniteAlgebra, field: &Field, system: &[&str], a: &str, solver: SolverStrategy) -> ddh::Result<()> {
    let d = DAlgebra::new(alg, ddh::diffpoly::Polys);
    let system = system.iter().map(|p| parse_in(&d, p)).collect::<ddh::Result<Vec<Vec<DiffPoly>>>>()?;
    let problem = LiftProblem { algebra: alg, field, system };
    let l = lift(&problem, 0, &parse_point(a)?, &solver)?;
    print!("{l}");
    Ok(())
}

fn main() -> ddh::Result<()> {
    let qt = Field::rational_functions(1, 1)?;
    let q = Field::rationals(1);
    run(&FiniteAlgebra::dual_numbers(), &qt, &["x1*d1 x1 - t1 - e"], "t1", SolverStrategy::ExactAnsatz { max_degree: 2 })?;
    run(&FiniteAlgebra::truncated(3)?, &q, &["x1^2 - 1 - e"], "1", SolverStrategy::default())?;
    run(
        &FiniteAlgebra::dual_numbers(),
        &qt,
        &["d1 x1 - x1 - e"],
        "0",
        SolverStrategy::Jet { point: vec![num_rational::BigRational::from_integer(0.into())], order: 4 },
    )?;
    Ok(())
}
