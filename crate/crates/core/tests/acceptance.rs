//! Headline acceptance criteria, one line of output each.
//!
//! Expected values are recomputed here from first principles (binomials,
//! explicit tuple lists, brute-force enumeration) rather than taken from the
//! library's own formula helpers.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use odd_terwilliger::centralizer::{
    build_centralizer, check_direct_sum, check_products, check_subalgebra, closure_pairs,
    index_set, index_set_by_enumeration, orbits_by_group_action, rho_partition, subalgebra_labels,
    tuple_bijection, BlockTag, CentralizerBasis, FourTuple,
};
use odd_terwilliger::combinatorics::{intersection_numbers, DoubledOddGraph};
use odd_terwilliger::covering::verify_intertwining;
use odd_terwilliger::report::{run, RunConfig};
use odd_terwilliger::terwilliger::{
    block_profile, build_terwilliger, center_dimension, upsilon, verify_equality, verify_inclusion,
    verify_sphere_identities, TerwilligerAlgebra,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn binom(n: usize, k: usize) -> usize {
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!("{what} took {elapsed:.2?}, limit {limit:?}"),
    )
}

fn e(err: odd_terwilliger::Error) -> String {
    err.to_string()
}

struct Built {
    graph: DoubledOddGraph,
    a: CentralizerBasis,
    a_time: Duration,
    t: TerwilligerAlgebra,
    t_time: Duration,
}

fn build(m: usize) -> Built {
    let graph = DoubledOddGraph::new(m).unwrap();
    let start = Instant::now();
    let a = build_centralizer(&graph).unwrap();
    let a_time = start.elapsed();
    let start = Instant::now();
    let t = build_terwilliger(&graph).unwrap();
    let t_time = start.elapsed();
    Built {
        graph,
        a,
        a_time,
        t,
        t_time,
    }
}

fn vertex_counts() -> Outcome {
    let start = Instant::now();
    let mut got = Vec::new();
    for m in 1..=4 {
        got.push(DoubledOddGraph::new(m).map_err(e)?.n());
    }
    within(start.elapsed(), Duration::from_secs(1), "enumeration")?;
    let expected: Vec<usize> = (1..=4).map(|m| 2 * binom(2 * m + 1, m)).collect();
    ensure(expected == [6, 20, 70, 252], "oracle binomials")?;
    ensure(got == expected, format!("got {got:?}"))?;
    Ok(format!("{got:?}"))
}

fn distance_regularity() -> Outcome {
    for m in 1..=3 {
        let g = DoubledOddGraph::new(m).map_err(e)?;
        let start = Instant::now();
        let table = intersection_numbers(&g).map_err(e)?;
        if m == 3 {
            within(start.elapsed(), Duration::from_secs(10), "m = 3 table")?;
        }
        // Complementation maps distance i to D - i, so k_i = k_{D-i}.
        let k = table.valencies();
        ensure(
            k.iter().sum::<u64>() == g.n() as u64,
            format!("valencies {k:?}"),
        )?;
        ensure(
            k.iter().eq(k.iter().rev()),
            format!("valencies not palindromic {k:?}"),
        )?;
    }
    Ok("consistent p^h_ij for m = 1..3".into())
}

fn index_sets() -> Outcome {
    let m1_block_i: BTreeSet<FourTuple> = [
        (1, 1, 1, 1),
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 0),
    ]
    .into_iter()
    .map(|(i, j, t, p)| FourTuple::new(i, j, t, p))
    .collect();
    ensure(
        index_set(BlockTag::I, 1) == m1_block_i,
        "m = 1 block I differs from explicit list",
    )?;
    let mut sizes = Vec::new();
    for m in 1..=4 {
        let g = DoubledOddGraph::new(m).map_err(e)?;
        for block in BlockTag::ALL {
            let closed = index_set(block, m);
            ensure(
                closed == index_set_by_enumeration(&g, block),
                format!("m = {m} block {block}: closed form differs from enumeration"),
            )?;
            ensure(
                closed.len() == binom(m + 4, 4),
                format!("m = {m} block {block}: size {}", closed.len()),
            )?;
        }
        sizes.push(index_set(BlockTag::I, m).len());
    }
    ensure(sizes == [5, 15, 35, 70], format!("sizes {sizes:?}"))?;
    Ok(format!("sizes {sizes:?}"))
}

fn bijections() -> Outcome {
    for m in 1..=4 {
        let g = DoubledOddGraph::new(m).map_err(e)?;
        let target = index_set_by_enumeration(&g, BlockTag::I);
        for block in [BlockTag::II, BlockTag::III, BlockTag::IV] {
            let source = index_set_by_enumeration(&g, block);
            let image: BTreeSet<FourTuple> = source
                .iter()
                .map(|&t| tuple_bijection(block, t, m))
                .collect::<Result<_, _>>()
                .map_err(e)?;
            ensure(
                image.len() == source.len() && image == target,
                format!("m = {m} block {block} map is not a bijection onto block I"),
            )?;
        }
    }
    Ok("II, III, IV -> I bijective for m = 1..4".into())
}

fn orbit_oracle() -> Outcome {
    let mut counts = Vec::new();
    for m in 1..=2 {
        let g = DoubledOddGraph::new(m).map_err(e)?;
        let by_group = orbits_by_group_action(&g);
        ensure(
            by_group == rho_partition(&g),
            format!("m = {m}: partitions differ"),
        )?;
        counts.push(by_group.classes);
    }
    ensure(counts == [20, 60], format!("orbit counts {counts:?}"))?;
    Ok(format!("orbit counts {counts:?}"))
}

fn centralizer_dims(built: &[Built]) -> Outcome {
    let dims: Vec<usize> = built.iter().map(|b| b.a.dim()).collect();
    within(
        built[3].a_time,
        Duration::from_secs(60),
        "m = 4 centralizer",
    )?;
    let expected: Vec<usize> = (1..=4).map(|m| 4 * binom(m + 4, 4)).collect();
    ensure(
        dims == expected && dims == [20, 60, 140, 280],
        format!("dims {dims:?}"),
    )?;
    Ok(format!("{dims:?}, m = 4 in {:.2?}", built[3].a_time))
}

fn centralizer_closure(built: &[Built]) -> Outcome {
    let mut counts = Vec::new();
    for b in built {
        let m = b.graph.m();
        let pairs = closure_pairs(&b.a, 3600, 500, 7);
        if m <= 2 {
            ensure(
                pairs.len() == b.a.dim() * b.a.dim(),
                format!("m = {m} not exhaustive"),
            )?;
        } else {
            ensure(
                pairs.len() >= 500,
                format!("m = {m}: only {} pairs", pairs.len()),
            )?;
        }
        let c = check_products(&b.a, b.a.span(), &pairs).map_err(e)?;
        ensure(c.closed, format!("m = {m}: {:?}", c.offender))?;
        counts.push(c.products_checked);
    }
    Ok(format!("products checked {counts:?}"))
}

fn subalgebras(built: &[Built]) -> Outcome {
    let mut notes = Vec::new();
    for b in &built[..3] {
        let m = b.graph.m();
        let [a1, a2, a3] = subalgebra_labels(&b.a);
        let c1 = check_subalgebra(&b.a, &a1).map_err(e)?;
        let c3 = check_subalgebra(&b.a, &a3).map_err(e)?;
        ensure(
            c1.closed && c3.closed,
            format!("m = {m}: A1 {} A3 {}", c1.closed, c3.closed),
        )?;
        let c2 = check_subalgebra(&b.a, &a2).map_err(e)?;
        notes.push(match c2.offender {
            Some(w) => format!(
                "m={m} A2 open: {}*{} in {:?}",
                w.left, w.right, w.support_blocks
            ),
            None => format!("m={m} A2 closed"),
        });
    }
    Ok(format!("A1, A3 closed; finding: {}", notes.join("; ")))
}

fn direct_sums(built: &[Built]) -> Outcome {
    for b in built {
        let ds = check_direct_sum(&b.a).map_err(e)?;
        let s = binom(b.graph.m() + 4, 4);
        ensure(
            ds.holds() && ds.parts == [s, 2 * s, s] && ds.total == b.a.dim(),
            format!("m = {}: {ds:?}", b.graph.m()),
        )?;
    }
    Ok("dims add up, pairwise trivial, m = 1..4".into())
}

fn sphere_identities(built: &[Built]) -> Outcome {
    let mut total = 0;
    for b in built {
        let o = verify_sphere_identities(&b.graph, &b.a).map_err(e)?;
        let failed: Vec<_> = o
            .identities
            .iter()
            .filter(|c| !c.holds)
            .map(|c| &c.name)
            .collect();
        ensure(
            failed.is_empty(),
            format!("m = {}: {failed:?}", b.graph.m()),
        )?;
        total += o.identities.len();
    }
    Ok(format!("{total} identities hold over m = 1..4"))
}

fn terwilliger_dims(built: &[Built]) -> Outcome {
    for b in &built[2..] {
        let expected = 4 * binom(b.graph.m() + 4, 4);
        ensure(
            b.t.dim() == expected && b.t.stabilized,
            format!(
                "m = {}: dim {} stabilized {}",
                b.graph.m(),
                b.t.dim(),
                b.t.stabilized
            ),
        )?;
    }
    within(built[3].t_time, Duration::from_secs(300), "m = 4 closure")?;
    Ok(format!(
        "140, 280; m = 4 in {:.2?} over {} rounds",
        built[3].t_time, built[3].t.iterations
    ))
}

fn inclusion_equality(built: &[Built]) -> Outcome {
    let mut notes = Vec::new();
    for b in built {
        let m = b.graph.m();
        let inc = verify_inclusion(&b.t, &b.a);
        let eq = verify_equality(&b.t, &b.a).map_err(e)?;
        if m >= 3 {
            ensure(
                inc.holds() && eq.holds(),
                format!("m = {m}: {inc:?} {eq:?}"),
            )?;
        } else {
            notes.push(format!("m={m} T=A: {}", inc.holds() && eq.holds()));
        }
    }
    Ok(format!("T = A at m = 3, 4; findings: {}", notes.join(", ")))
}

fn centers(built: &[Built]) -> Outcome {
    let mut dims = Vec::new();
    for b in &built[2..] {
        let m = b.graph.m();
        let z = center_dimension(&b.t).map_err(e)?;
        ensure(
            z == (m + 2) * (m + 2) / 4 && z == upsilon(m).len(),
            format!("m = {m}: dim Z = {z}"),
        )?;
        dims.push(z);
    }
    ensure(dims == [6, 9], format!("{dims:?}"))?;
    Ok(format!("dim Z(T) {dims:?}"))
}

fn block_profiles(built: &[Built]) -> Outcome {
    let expected_counts = [vec![2, 2, 1, 1], vec![3, 2, 2, 1, 1]];
    for (b, counts) in built[2..].iter().zip(expected_counts) {
        let m = b.graph.m();
        let p = block_profile(m);
        ensure(
            p.counts() == counts,
            format!("m = {m}: counts {:?}", p.counts()),
        )?;
        let sum: usize = counts
            .iter()
            .enumerate()
            .map(|(d, c)| c * (2 * d + 2) * (2 * d + 2))
            .sum();
        let z = center_dimension(&b.t).map_err(e)?;
        ensure(
            sum == b.t.dim() && p.total_dim() == sum && p.block_count() == z,
            format!("m = {m}: sum {sum}, dim T {}, dim Z {z}", b.t.dim()),
        )?;
    }
    Ok("140 = 2*4+2*16+36+64 over 6 blocks; 280 over 9 blocks".into())
}

fn psi() -> Outcome {
    for m in 1..=3 {
        let c = verify_intertwining(&DoubledOddGraph::new(m).map_err(e)?).map_err(e)?;
        ensure(c.holds(), format!("m = {m}: {c:?}"))?;
    }
    Ok("structure and intertwining at m = 1..3".into())
}

fn determinism() -> Outcome {
    let first = run(&RunConfig::new(3)).map_err(e)?;
    let second = run(&RunConfig::new(3)).map_err(e)?;
    ensure(
        first.reports.len() == 16,
        format!("{} reports", first.reports.len()),
    )?;
    ensure(
        first.to_json_without_timing() == second.to_json_without_timing(),
        "reports differ between runs",
    )?;
    ensure(first.exit_code() == 0, "m = 3 run has failures")?;
    Ok("identical JSON modulo elapsed_ms".into())
}

#[test]
fn acceptance_criteria() {
    let built: Vec<Built> = (1..=4).map(build).collect();
    let criteria: Vec<Criterion> = vec![
        ("vertex counts", Box::new(vertex_counts)),
        ("distance-regularity", Box::new(distance_regularity)),
        ("index sets", Box::new(index_sets)),
        ("tuple bijections", Box::new(bijections)),
        ("orbit oracle", Box::new(orbit_oracle)),
        (
            "centralizer dimension",
            Box::new(|| centralizer_dims(&built)),
        ),
        (
            "closure of the orbit algebra",
            Box::new(|| centralizer_closure(&built)),
        ),
        ("subalgebras", Box::new(|| subalgebras(&built))),
        ("direct sum", Box::new(|| direct_sums(&built))),
        ("E*/A1 identities", Box::new(|| sphere_identities(&built))),
        (
            "Terwilliger dimension",
            Box::new(|| terwilliger_dims(&built)),
        ),
        (
            "inclusion and equality",
            Box::new(|| inclusion_equality(&built)),
        ),
        ("center", Box::new(|| centers(&built))),
        ("block profile", Box::new(|| block_profiles(&built))),
        ("psi", Box::new(psi)),
        ("determinism", Box::new(determinism)),
    ];

    let mut failures = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match &outcome {
            Ok(detail) => println!("[{:>2}] PASS {name} ({elapsed:.2?}): {detail}", k + 1),
            Err(why) => {
                println!("[{:>2}] FAIL {name} ({elapsed:.2?}): {why}", k + 1);
                failures.push(format!("{}. {name}: {why}", k + 1));
            }
        }
    }
    assert!(
        failures.is_empty(),
        "failed criteria:\n{}",
        failures.join("\n")
    );
}
