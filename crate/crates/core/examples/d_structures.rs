//! D-structures on `Q(t1)`: the Taylor structure over dual numbers and the
//! shift `t1 -> t1 + 1` over `Q x Q`.

use ddh::dstructure::DStructure;
use ddh::finitealg::FiniteAlgebra;
use ddh::parse::parse_field_elem;
use ddh::session::build_structure;
use ddh::Field;

fn show(s: &DStructure, text: &str) -> ddh::Result<()> {
    let a = parse_field_elem(text)?;
    println!("  e({a}) = {}", s.render(&s.e_of(&a)?));
    for i in 0..s.num_factors() {
        println!("  sigma{i}({a}) = {}", s.sigma(i, &a)?);
    }
    Ok(())
}

fn main() -> ddh::Result<()> {
    let field = Field::rational_functions(1, 1)?;
    let taylor = build_structure(FiniteAlgebra::dual_numbers(), field.clone(), Some(&["t1 + e".into()]))?;
    let shift = build_structure(FiniteAlgebra::split(2)?, field.clone(), Some(&["t1*u0 + (t1 + 1)*u1".into()]))?;
    for (name, s) in [("taylor", &taylor), ("shift", &shift)] {
        println!("{name}:");
        show(s, "t1^2")?;
        show(s, "1/(t1 - 2)")?;
        print!("{}", s.check(10, 7));
    }

    let bad = build_structure(FiniteAlgebra::dual_numbers(), field, Some(&["t1 + t1*e".into()]))?;
    let report = bad.check(10, 7);
    println!("t1 + t1*e: {}", report.first_failure().and_then(|c| c.counterexample.clone()).unwrap_or_else(|| "passes".into()));
    Ok(())
}
