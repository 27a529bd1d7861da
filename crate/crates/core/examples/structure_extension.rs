//! Extending a D-structure from `Q` to `Q(t1)` along `t1`.

use ddh::extend::{extend_to_element, ExtensionRequest};
use ddh::finitealg::FiniteAlgebra;
use ddh::hensel::SolverStrategy;
use ddh::parse::parse_poly;
use ddh::reduction::check_autoreduced;
use ddh::session::{build_structure, parse_point};
use ddh::Field;

fn main() -> ddh::Result<()> {
    let k = Field::rationals(1);
    let l = Field::rational_functions(1, 1)?;
    let charset = Some(check_autoreduced(vec![parse_poly("d1 x1 - 1")?])?.assert_characteristic());

    let dual = build_structure(FiniteAlgebra::dual_numbers(), k.clone(), None)?;
    let req = ExtensionRequest { structure: &dual, field: &l, element: parse_point("t1")?, charset: charset.clone(), targets: vec![] };
    print!("{}", extend_to_element(&req, &SolverStrategy::default())?);

    let split = build_structure(FiniteAlgebra::split(2)?, k, None)?;
    let req = ExtensionRequest {
        structure: &split,
        field: &l,
        element: parse_point("t1")?,
        charset,
        targets: vec![parse_point("t1 + 1")?],
    };
    print!("{}", extend_to_element(&req, &SolverStrategy::default())?);

    let req = ExtensionRequest { charset: None, targets: vec![parse_point("2*t1")?], ..req };
    print!("{}", extend_to_element(&req, &SolverStrategy::default())?);
    Ok(())
}
