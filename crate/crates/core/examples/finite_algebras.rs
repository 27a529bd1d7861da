//! Built-in finite algebras, their local decompositions and arithmetic in `B ⊗ K`.

use ddh::finitealg::{DAlgebra, FiniteAlgebra, Piece};
use ddh::parse::parse_in;
use ddh::ring::{DiffRing, Ring, Scalars};

fn main() -> ddh::Result<()> {
    let algebras = [
        FiniteAlgebra::dual_numbers(),
        FiniteAlgebra::truncated(3)?,
        FiniteAlgebra::split(2)?,
        FiniteAlgebra::product(&[Piece::Local(2), Piece::Jets { vars: 2, order: 1 }])?,
    ];
    for alg in &algebras {
        let dec = alg.decomposition()?;
        println!("{alg}: dim {}, basis {}", alg.dim(), alg.labels().join(", "));
        for i in 0..dec.len() {
            let f = dec.factor(i)?;
            println!("  factor {i}: dim {}, nilpotency index {}", f.dim(), f.nilpotency_index);
        }
    }

    let alg = FiniteAlgebra::truncated(3)?;
    let d = DAlgebra::new(&alg, Scalars);
    let a = parse_in(&d, "1 + e")?;
    let inv = d.invert(&a)?;
    println!("(1 + e)^-1 = {}", d.render(&inv));
    println!("check: {}", d.render(&d.mul(&a, &inv)));
    let b = parse_in(&d, "t1 + (1/2)*e")?;
    println!("d1 (t1 + (1/2)*e)^2 = {}", d.render(&d.derive(1, &d.mul(&b, &b))));
    Ok(())
}
