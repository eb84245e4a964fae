//! The orbit basis of the centralizer algebra: index sets, a few orbit
//! matrices, and the closure behaviour of the three natural subspaces.
//!
//! ```text
//! cargo run --example orbit_basis -- 2
//! ```

use odd_terwilliger::centralizer::{
    build_centralizer, check_direct_sum, check_subalgebra, index_set, subalgebra_labels, BlockTag,
};
use odd_terwilliger::combinatorics::DoubledOddGraph;

fn main() -> odd_terwilliger::Result<()> {
    let m: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2);
    let graph = DoubledOddGraph::new(m)?;

    for block in BlockTag::ALL {
        let set = index_set(block, m);
        let preview: Vec<String> = set.iter().take(4).map(|t| format!("({t})")).collect();
        println!(
            "{block:>3}: {} tuples, e.g. {}",
            set.len(),
            preview.join(" ")
        );
    }

    let a = build_centralizer(&graph)?;
    println!("orbit matrices: {}, rank {}", a.labels().len(), a.dim());
    for (label, matrix) in a.labels().iter().zip(a.matrices()).take(5) {
        println!("  {label}: {} entries", matrix.nnz());
    }

    let [a1, a2, a3] = subalgebra_labels(&a);
    for (name, labels) in [("type I", &a1), ("types II+III", &a2), ("type IV", &a3)] {
        let c = check_subalgebra(&a, labels)?;
        match &c.offender {
            None => println!("{name}: closed ({} products)", c.products_checked),
            Some(w) => println!(
                "{name}: not closed, {} * {} has support in {:?}",
                w.left, w.right, w.support_blocks
            ),
        }
    }

    let ds = check_direct_sum(&a)?;
    println!(
        "direct sum {:?} -> {} (holds: {})",
        ds.parts,
        ds.total,
        ds.holds()
    );
    Ok(())
}
