//! Generate the Terwilliger algebra from the distance matrices and the dual
//! idempotents and compare it with the orbit algebra.
//!
//! ```text
//! cargo run --example terwilliger_closure -- 3
//! ```

use std::time::Instant;

use odd_terwilliger::centralizer::build_centralizer;
use odd_terwilliger::combinatorics::DoubledOddGraph;
use odd_terwilliger::terwilliger::{build_terwilliger, center_dimension, verify_equality};

fn main() -> odd_terwilliger::Result<()> {
    let m: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let graph = DoubledOddGraph::new(m)?;

    let start = Instant::now();
    let a = build_centralizer(&graph)?;
    println!("orbit algebra: dim {} ({:.2?})", a.dim(), start.elapsed());

    let start = Instant::now();
    let t = build_terwilliger(&graph)?;
    println!(
        "T: dim {} after {} rounds ({:.2?})",
        t.dim(),
        t.iterations,
        start.elapsed()
    );

    let start = Instant::now();
    let eq = verify_equality(&t, &a)?;
    println!(
        "T = orbit algebra: {} (identical echelon bases: {}) ({:.2?})",
        eq.holds(),
        eq.identical_bases,
        start.elapsed()
    );

    let start = Instant::now();
    println!(
        "dim Z(T) = {} ({:.2?})",
        center_dimension(&t)?,
        start.elapsed()
    );
    Ok(())
}
