//! Leaders, ranks, initials and separants; sorting indeterminates by rank.

use ddh::diffpoly::rank_compare;
use ddh::parse::parse_poly;

fn main() -> ddh::Result<()> {
    for text in ["x1 * d1 x1 - t1", "(d1 d2 x1)^2 + x2 * d1^2 x1", "d2 x2 - d1^3 x1"] {
        let f = parse_poly(text)?;
        let r = f.rank()?;
        println!("{f}");
        println!("  rank {r}, initial {}, separant {}", f.initial()?, f.separant()?);
    }

    let mut us: Vec<_> = parse_poly("d2 x1 + d1^2 x1 + x2 + d1 x2 + x1")?.indeterminates().into_iter().collect();
    us.sort_by(rank_compare);
    let names: Vec<String> = us.iter().map(|u| u.to_string()).collect();
    println!("increasing rank: {}", names.join(" < "));
    Ok(())
}
