//! Ritt reduction with a checked certificate `M f = Σ c θ(g) + r`.

use ddh::parse::parse_poly;
use ddh::reduction::{check_autoreduced, ideal_member, ritt_remainder};

fn main() -> ddh::Result<()> {
    let set = check_autoreduced(vec![parse_poly("d1 x1 - x1")?])?;
    let cert = ritt_remainder(&parse_poly("d1^2 x1")?, &set);
    print!("{}", cert.report(&set));
    println!("certificate verified: {}", cert.verify(&set));

    let set = check_autoreduced(vec![parse_poly("x1 * d1 x1 - t1")?])?.assert_characteristic();
    let f = parse_poly("d1 x1 * x1^2 - t1 * x1")?;
    println!("{f} in the ideal: {}", ideal_member(&f, &set));
    Ok(())
}
