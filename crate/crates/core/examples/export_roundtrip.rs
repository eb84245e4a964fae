//! Export every matrix for one `m` into a temporary directory and read the
//! files back.
//!
//! ```text
//! cargo run --example export_roundtrip -- 1
//! ```

use odd_terwilliger::centralizer::build_centralizer;
use odd_terwilliger::combinatorics::DoubledOddGraph;
use odd_terwilliger::export::export_matrices;
use odd_terwilliger::linalg::read_mtx_file;
use odd_terwilliger::terwilliger::build_terwilliger;

fn main() -> odd_terwilliger::Result<()> {
    let m: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let graph = DoubledOddGraph::new(m)?;
    let a = build_centralizer(&graph)?;
    let t = build_terwilliger(&graph)?;

    let dir = std::env::temp_dir().join(format!("odd-terwilliger-m{m}"));
    let summary = export_matrices(&dir, &graph, &a, Some(&t.basis))?;
    println!(
        "wrote {} files under {}",
        summary.files.len(),
        dir.display()
    );
    for prefix in ["A_", "Estar_", "orbit_", "psi", "basis_"] {
        println!(
            "  {prefix:<7} {}",
            summary.count_with_prefix(&format!("m{m}_{prefix}"))
        );
    }

    let mut entries = 0;
    for path in &summary.files {
        entries += read_mtx_file(path)?.nnz();
    }
    println!("read back {entries} nonzero entries");
    Ok(())
}
