//! Prolongation components, the canonical section and its projections.

use ddh::finitealg::FiniteAlgebra;
use ddh::parse::parse_poly;
use ddh::prolongation::{components, nabla, pihat, tau_generators};
use ddh::reduction::check_autoreduced;
use ddh::session::{build_structure, parse_point};
use ddh::Field;

fn main() -> ddh::Result<()> {
    let field = Field::rational_functions(1, 1)?;
    let s = build_structure(FiniteAlgebra::dual_numbers(), field.clone(), Some(&["t1 + e".into()]))?;
    let f = parse_poly("x1 * d1 x1 - t1")?;
    for (j, c) in components(&f, &s)?.iter().enumerate() {
        println!("f^({j}) = {c}");
    }

    let shift = build_structure(FiniteAlgebra::split(2)?, field.clone(), Some(&["t1*u0 + (t1 + 1)*u1".into()]))?;
    let set = check_autoreduced(vec![parse_poly("d1 x1 - t1")?])?;
    print!("{}", tau_generators(&set, &shift)?);

    let a = parse_point("t1^2/2")?;
    let na = nabla(&a, &shift)?;
    println!("nabla(a) = {na}");
    for i in 0..2 {
        println!("pihat{i}(nabla(a)) = {}", pihat(i, &na, &shift)?);
    }
    for c in components(&parse_poly("d1 x1 - t1")?, &shift)? {
        println!("{c} at nabla(a): {}", c.evaluate(&field, &na)?);
    }
    Ok(())
}
