//! The covering of the Odd graph by the doubled Odd graph and the matrix
//! `ψ` that intertwines them.
//!
//! ```text
//! cargo run --example covering_psi -- 2
//! ```

use odd_terwilliger::combinatorics::DoubledOddGraph;
use odd_terwilliger::covering::{build_psi, project, verify_intertwining, OddGraph};

fn main() -> odd_terwilliger::Result<()> {
    let m: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2);
    let graph = DoubledOddGraph::new(m)?;
    let odd = OddGraph::from_doubled(&graph);
    println!(
        "O_{}: {} vertices, valency {}",
        m + 1,
        odd.n(),
        odd.neighbours(0).len()
    );

    for z in [0, graph.half()] {
        let image = project(&graph, z);
        println!("{} covers {}", graph.vertex(z), odd.vertices()[image]);
    }

    let psi = build_psi(&graph);
    println!(
        "psi is {}x{} with {} ones",
        psi.nrows(),
        psi.ncols(),
        psi.nnz()
    );

    let check = verify_intertwining(&graph)?;
    println!("{check:#?}");
    Ok(())
}
