//! Center of `T` compared with the parameter set of its irreducible modules
//! and the predicted block sizes.
//!
//! ```text
//! cargo run --example center_and_blocks -- 3
//! ```

use odd_terwilliger::combinatorics::DoubledOddGraph;
use odd_terwilliger::terwilliger::{block_profile, build_terwilliger, center, upsilon};

fn main() -> odd_terwilliger::Result<()> {
    let m: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let graph = DoubledOddGraph::new(m)?;
    let t = build_terwilliger(&graph)?;
    let z = center(&t)?;
    println!("dim T = {}, dim Z(T) = {}", t.dim(), z.dim());

    let u = upsilon(m);
    println!("(mu, d) pairs: {:?}", u.pairs);

    let profile = block_profile(m);
    for b in &profile.blocks {
        println!("  d = {}: {} block(s) of size {}", b.d, b.count, b.side);
    }
    println!(
        "sum of squares {}, block count {}",
        profile.total_dim(),
        profile.block_count()
    );
    Ok(())
}
