use ddh::parse::parse_poly;
use ddh::reduction::{check_autoreduced, check_coherent};

fn main() -> ddh::Result<()> {
    for set in [["d1 x1 - t2", "d2 x1 - t1"], ["d1 x1 - t2", "d2 x1"]] {
        let polys = set.iter().map(|p| parse_poly(p)).collect::<ddh::Result<Vec<_>>>()?;
        let report = check_coherent(&check_autoreduced(polys)?)?;
        print!("{report}");
    }
    Ok(())
}
