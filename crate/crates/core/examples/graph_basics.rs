//! Vertices, distances and intersection numbers of the doubled Odd graph.
//!
//! ```text
//! cargo run --example graph_basics -- 2
//! ```

use odd_terwilliger::combinatorics::{intersection_numbers, DoubledOddGraph};

fn main() -> odd_terwilliger::Result<()> {
    let m: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2);
    let graph = DoubledOddGraph::new(m)?;
    println!(
        "m = {m}: {} vertices, diameter {}",
        graph.n(),
        graph.diameter()
    );

    let base = graph.base_index();
    println!("base vertex {}", graph.vertex(base));
    for v in graph.neighbours(base) {
        println!("  neighbour {}", graph.vertex(v));
    }

    let far = (0..graph.n())
        .max_by_key(|&v| graph.distance(base, v))
        .unwrap();
    println!(
        "a farthest vertex: {} at distance {}",
        graph.vertex(far),
        graph.distance(base, far)
    );

    let table = intersection_numbers(&graph)?;
    println!("valencies k_i: {:?}", table.valencies());
    let d = table.diameter;
    let b: Vec<u64> = (0..d).map(|i| table.get(i, 1, i + 1)).collect();
    let c: Vec<u64> = (1..=d).map(|i| table.get(i, 1, i - 1)).collect();
    println!("b_i: {b:?}");
    println!("c_i: {c:?}");
    Ok(())
}
