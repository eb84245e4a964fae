//! Dual idempotents, the Terwilliger algebra `T` with respect to `x0`, and
//! the checks relating it to the centralizer algebra.

use serde::Serialize;

use crate::centralizer::{BlockTag, CentralizerBasis, FourTuple, OrbitLabel};
use crate::combinatorics::DoubledOddGraph;
use crate::error::{Error, Result};
use crate::formulas::{center_dimension_formula, centralizer_dimension_formula};
use crate::linalg::{algebra_closure, center_of_generated, SpanBasis, SparseExactMatrix};

/// Diagonal projection onto the sphere `{y : ∂(x0, y) = i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualIdempotent {
    pub i: usize,
    pub matrix: SparseExactMatrix,
}

pub fn dual_idempotent(graph: &DoubledOddGraph, i: usize) -> Result<DualIdempotent> {
    if i > graph.diameter() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: graph.diameter(),
        });
    }
    let b = graph.base_index();
    let sphere = (0..graph.n()).filter(|&y| graph.distance(b, y) == i);
    Ok(DualIdempotent {
        i,
        matrix: SparseExactMatrix::diagonal(graph.n(), sphere),
    })
}

pub fn dual_idempotents(graph: &DoubledOddGraph) -> Vec<DualIdempotent> {
    (0..=graph.diameter())
        .map(|i| dual_idempotent(graph, i).expect("i within diameter"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(name: impl Into<String>, holds: bool) -> Self {
        Self {
            name: name.into(),
            holds,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereIdentities {
    pub identities: Vec<IdentityCheck>,
    /// The transposed products and the decomposition of `A1` with types II
    /// and III exchanged. These are expected to fail.
    pub swapped_forms: Vec<IdentityCheck>,
}

impl SphereIdentities {
    pub fn holds(&self) -> bool {
        self.identities.iter().all(|c| c.holds)
    }
}

fn lookup(
    basis: &CentralizerBasis,
    block: BlockTag,
    t: (usize, usize, usize, usize),
) -> Option<&SparseExactMatrix> {
    basis.get(&OrbitLabel::new(block, FourTuple::new(t.0, t.1, t.2, t.3)))
}

fn equals(lhs: &SparseExactMatrix, rhs: Option<&SparseExactMatrix>) -> bool {
    rhs.is_some_and(|r| lhs == r)
}

/// Checks the orbit-matrix expressions for `E*_i`, `E*_i A1 E*_{i±1}` and
/// `A1`, plus `E*_i A1 E*_j = 0` whenever `|i - j| != 1`.
pub fn verify_sphere_identities(
    graph: &DoubledOddGraph,
    basis: &CentralizerBasis,
) -> Result<SphereIdentities> {
    let m = graph.m();
    let d = graph.diameter();
    let a1 = graph.adjacency_matrix();
    let es: Vec<SparseExactMatrix> = dual_idempotents(graph)
        .into_iter()
        .map(|e| e.matrix)
        .collect();
    let sandwich =
        |i: usize, j: usize| -> Result<SparseExactMatrix> { es[i].try_mul(&a1)?.try_mul(&es[j]) };

    let mut identities = Vec::new();
    let mut swapped_forms = Vec::new();

    for (i, e) in es.iter().enumerate() {
        let rhs = if i % 2 == 0 {
            let k = (2 * m - i) / 2;
            lookup(basis, BlockTag::I, (k, k, m, k))
        } else {
            let k = (2 * m + 1 - i) / 2;
            lookup(basis, BlockTag::IV, (k, k, m + 1, k))
        };
        identities.push(IdentityCheck::new(
            format!("E*_{i} as an orbit matrix"),
            equals(e, rhs),
        ));
    }

    // Terms of the A1 decomposition: (E*_i A1 E*_{i+1}, E*_{i+1} A1 E*_i).
    let mut up_down: Vec<(Option<&SparseExactMatrix>, Option<&SparseExactMatrix>)> = Vec::new();
    for i in 0..d {
        let (up, down, swapped_down) = if i % 2 == 0 {
            let k = (2 * m - i) / 2;
            (
                lookup(basis, BlockTag::II, (k, k, m, k)),
                lookup(basis, BlockTag::III, (k, k, m, k)),
                lookup(basis, BlockTag::II, (k, k, m, k)),
            )
        } else {
            let (hi, lo) = ((2 * m + 1 - i) / 2, (2 * m - 1 - i) / 2);
            (
                lookup(basis, BlockTag::III, (hi, lo, m, lo)),
                lookup(basis, BlockTag::II, (lo, hi, m, lo)),
                lookup(basis, BlockTag::III, (lo, hi, m, lo)),
            )
        };
        let forward = sandwich(i, i + 1)?;
        let backward = sandwich(i + 1, i)?;
        identities.push(IdentityCheck::new(
            format!("E*_{i} A1 E*_{}", i + 1),
            equals(&forward, up),
        ));
        identities.push(IdentityCheck::new(
            format!("E*_{} A1 E*_{i}", i + 1),
            equals(&backward, down) && up.is_some_and(|u| equals(&u.transpose(), down)),
        ));
        swapped_forms.push(IdentityCheck::new(
            format!("E*_{} A1 E*_{i}, types II and III exchanged", i + 1),
            equals(&backward, swapped_down),
        ));
        up_down.push((up, down));
    }

    let decomposition = up_down.iter().try_fold(
        SparseExactMatrix::zeros(graph.n(), graph.n()),
        |acc, &(u, w)| acc.try_add(u?).ok()?.try_add(w?).ok(),
    );
    identities.push(IdentityCheck::new(
        "A1 as a sum of orbit matrices",
        decomposition.is_some_and(|s| s == a1),
    ));

    let mut swapped_sum: Option<SparseExactMatrix> =
        Some(SparseExactMatrix::zeros(graph.n(), graph.n()));
    for i in 0..d {
        let terms: Vec<Option<&SparseExactMatrix>> = if i % 2 == 0 {
            let k = (2 * m - i) / 2;
            let r = lookup(basis, BlockTag::II, (k, k, m, k));
            vec![r, r]
        } else {
            let (hi, lo) = ((2 * m + 1 - i) / 2, (2 * m - 1 - i) / 2);
            vec![
                lookup(basis, BlockTag::III, (hi, lo, m, lo)),
                lookup(basis, BlockTag::III, (lo, hi, m, lo)),
            ]
        };
        swapped_sum = match (swapped_sum, terms.iter().all(Option::is_some)) {
            (Some(acc), true) => terms
                .into_iter()
                .flatten()
                .try_fold(acc, |a, t| a.try_add(t))
                .ok(),
            _ => None,
        };
    }
    swapped_forms.push(IdentityCheck::new(
        "A1 as a sum of orbit matrices, types II and III exchanged",
        swapped_sum.is_some_and(|s| s == a1),
    ));

    let mut sandwich_ok = true;
    for i in 0..=d {
        for j in 0..=d {
            if i.abs_diff(j) != 1 && !sandwich(i, j)?.is_zero() {
                sandwich_ok = false;
            }
        }
    }
    identities.push(IdentityCheck::new(
        "E*_i A1 E*_j = 0 for |i - j| != 1",
        sandwich_ok,
    ));

    Ok(SphereIdentities {
        identities,
        swapped_forms,
    })
}

/// Which matrices seed the closure for `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorChoice {
    /// `A1` and every `E*_i`.
    Adjacency,
    /// Every distance matrix `A_i` and every `E*_i`.
    AllDistanceMatrices,
}

pub fn terwilliger_generators(
    graph: &DoubledOddGraph,
    choice: GeneratorChoice,
) -> Vec<SparseExactMatrix> {
    let mut gens = match choice {
        GeneratorChoice::Adjacency => vec![graph.adjacency_matrix()],
        GeneratorChoice::AllDistanceMatrices => graph.distance_matrices(),
    };
    gens.extend(dual_idempotents(graph).into_iter().map(|e| e.matrix));
    gens
}

#[derive(Clone, Debug)]
pub struct TerwilligerAlgebra {
    pub m: usize,
    pub basis: SpanBasis,
    pub generators: Vec<SparseExactMatrix>,
    pub iterations: usize,
    pub stabilized: bool,
}

impl TerwilligerAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// `T` as the closure of every `A_i` and every `E*_i`, capped one above the
/// expected dimension.
pub fn build_terwilliger(graph: &DoubledOddGraph) -> Result<TerwilligerAlgebra> {
    build_terwilliger_from(graph, GeneratorChoice::AllDistanceMatrices)
}

pub fn build_terwilliger_from(
    graph: &DoubledOddGraph,
    choice: GeneratorChoice,
) -> Result<TerwilligerAlgebra> {
    let generators = terwilliger_generators(graph, choice);
    let cap = centralizer_dimension_formula(graph.m()) + 1;
    let closure = algebra_closure(&generators, cap)?;
    Ok(TerwilligerAlgebra {
        m: graph.m(),
        basis: closure.basis,
        generators,
        iterations: closure.iterations,
        stabilized: closure.stabilized,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionCheck {
    pub checked: usize,
    pub contained: usize,
    /// Index of the first `T` basis row outside the centralizer span.
    pub first_missing: Option<usize>,
}

impl InclusionCheck {
    pub fn holds(&self) -> bool {
        self.checked == self.contained
    }
}

/// Every basis element of `T` lies in the span of the orbit matrices.
pub fn verify_inclusion(t: &TerwilligerAlgebra, a: &CentralizerBasis) -> InclusionCheck {
    let span = a.span();
    let missing: Vec<usize> = t
        .basis
        .rows()
        .iter()
        .enumerate()
        .filter(|(_, row)| !span.contains_vector(row))
        .map(|(k, _)| k)
        .collect();
    InclusionCheck {
        checked: t.dim(),
        contained: t.dim() - missing.len(),
        first_missing: missing.first().copied(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityCheck {
    pub dim_t: usize,
    pub dim_a: usize,
    pub orbit_matrices_in_t: usize,
    pub first_missing: Option<OrbitLabel>,
    /// Both reduced echelon bases coincide.
    pub identical_bases: bool,
}

impl EqualityCheck {
    pub fn holds(&self) -> bool {
        self.dim_t == self.dim_a && self.first_missing.is_none()
    }
}

pub fn verify_equality(t: &TerwilligerAlgebra, a: &CentralizerBasis) -> Result<EqualityCheck> {
    let mut inside = 0;
    let mut first_missing = None;
    for (label, m) in a.labels().iter().zip(a.matrices()) {
        if t.basis.contains(m)? {
            inside += 1;
        } else if first_missing.is_none() {
            first_missing = Some(*label);
        }
    }
    Ok(EqualityCheck {
        dim_t: t.dim(),
        dim_a: a.dim(),
        orbit_matrices_in_t: inside,
        first_missing,
        identical_bases: t.basis == *a.span(),
    })
}

/// The center `Z(T)`.
///
/// Solves for commutation with `A1` and the `E*_i`, which generate `T`.
pub fn center(t: &TerwilligerAlgebra) -> Result<SpanBasis> {
    let graph = DoubledOddGraph::new(t.m)?;
    center_of_generated(
        &t.basis,
        &terwilliger_generators(&graph, GeneratorChoice::Adjacency),
    )
}

pub fn center_dimension(t: &TerwilligerAlgebra) -> Result<usize> {
    center(t).map(|z| z.dim())
}

/// Pairs `(μ, d)` with `0 <= d <= m` and `⌈(m-d)/2⌉ <= μ <= m-d`, ordered by
/// `d` then `μ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpsilonSet {
    pub m: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl UpsilonSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The endpoint `ν = m - d` paired with each entry.
    pub fn endpoints(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(_, d)| self.m - d).collect()
    }
}

pub fn upsilon(m: usize) -> UpsilonSet {
    let pairs = (0..=m)
        .flat_map(|d| ((m - d).div_ceil(2)..=m - d).map(move |mu| (mu, d)))
        .collect();
    UpsilonSet { m, pairs }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockEntry {
    pub d: usize,
    pub count: usize,
    pub side: usize,
}

/// Number and size of the full matrix blocks of `T`, one entry per `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockProfile {
    pub m: usize,
    pub blocks: Vec<BlockEntry>,
}

impl BlockProfile {
    /// `Σ count_d (2d+2)^2`.
    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.count * b.side * b.side).sum()
    }

    /// `Σ count_d`.
    pub fn block_count(&self) -> usize {
        self.blocks.iter().map(|b| b.count).sum()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.count).collect()
    }
}

pub fn block_profile(m: usize) -> BlockProfile {
    let blocks = (0..=m)
        .map(|d| BlockEntry {
            d,
            count: m - d - (m - d).div_ceil(2) + 1,
            side: 2 * d + 2,
        })
        .collect();
    BlockProfile { m, blocks }
}

/// Whether the profile's totals agree with the closed forms for `m`.
pub fn block_profile_consistent(p: &BlockProfile) -> bool {
    p.total_dim() == centralizer_dimension_formula(p.m)
        && p.block_count() == center_dimension_formula(p.m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::build_centralizer;
    use crate::linalg::rational;

    #[test]
    fn dual_idempotent_examples() {
        let g = DoubledOddGraph::new(3).unwrap();
        let e0 = dual_idempotent(&g, 0).unwrap();
        let b = g.base_index();
        assert_eq!(e0.matrix.support().collect::<Vec<_>>(), vec![(b, b)]);
        assert_eq!(dual_idempotent(&g, 1).unwrap().matrix.nnz(), 4);
        assert!(dual_idempotent(&g, 8).is_err());
        let sum = SparseExactMatrix::sum_of(dual_idempotents(&g).iter().map(|e| &e.matrix))
            .unwrap()
            .unwrap();
        assert_eq!(sum, SparseExactMatrix::identity(g.n()));
    }

    #[test]
    fn sphere_identities_at_m3() {
        let g = DoubledOddGraph::new(3).unwrap();
        let c = build_centralizer(&g).unwrap();
        let a1 = g.adjacency_matrix();
        let e = |i| dual_idempotent(&g, i).unwrap().matrix;
        let e0a1e1 = e(0).try_mul(&a1).unwrap().try_mul(&e(1)).unwrap();
        assert_eq!(&e0a1e1, c.orbit(BlockTag::II, 3, 3, 3, 3).unwrap());
        let e1a1e2 = e(1).try_mul(&a1).unwrap().try_mul(&e(2)).unwrap();
        assert_eq!(&e1a1e2, c.orbit(BlockTag::III, 3, 2, 3, 2).unwrap());
        let outcome = verify_sphere_identities(&g, &c).unwrap();
        assert!(outcome.holds(), "{:?}", outcome.identities);
        assert!(outcome.swapped_forms.iter().all(|c| !c.holds));
    }

    #[test]
    fn upsilon_m3() {
        let u = upsilon(3);
        assert_eq!(
            u.pairs,
            vec![(2, 0), (3, 0), (1, 1), (2, 1), (1, 2), (0, 3)]
        );
        assert_eq!(upsilon(4).len(), 9);
        assert!(u.endpoints().iter().all(|&nu| nu <= 3));
    }

    #[test]
    fn block_profiles() {
        let p3 = block_profile(3);
        assert_eq!(p3.counts(), vec![2, 2, 1, 1]);
        assert_eq!(p3.total_dim(), 140);
        assert_eq!(p3.block_count(), 6);
        let p4 = block_profile(4);
        assert_eq!(p4.counts(), vec![3, 2, 2, 1, 1]);
        assert_eq!(p4.total_dim(), 280);
        assert_eq!(p4.block_count(), 9);
        for m in 1..=8 {
            assert!(block_profile_consistent(&block_profile(m)), "m = {m}");
            assert_eq!(upsilon(m).len(), center_dimension_formula(m));
        }
    }

    #[test]
    fn small_terwilliger_is_inside_centralizer() {
        let g = DoubledOddGraph::new(2).unwrap();
        let c = build_centralizer(&g).unwrap();
        let t = build_terwilliger(&g).unwrap();
        assert!(verify_inclusion(&t, &c).holds());
        for a in g.distance_matrices() {
            assert!(c.span().contains(&a).unwrap());
        }
        assert!(t
            .basis
            .contains(&SparseExactMatrix::identity(g.n()))
            .unwrap());
        let _ = rational(0);
    }

    #[test]
    fn generator_choices_agree() {
        for m in 1..=2 {
            let g = DoubledOddGraph::new(m).unwrap();
            let a = build_terwilliger_from(&g, GeneratorChoice::Adjacency).unwrap();
            let b = build_terwilliger_from(&g, GeneratorChoice::AllDistanceMatrices).unwrap();
            assert_eq!(a.basis, b.basis);
        }
    }

    #[test]
    fn diagonal_idempotents_alone() {
        let g = DoubledOddGraph::new(2).unwrap();
        let es: Vec<_> = dual_idempotents(&g).into_iter().map(|e| e.matrix).collect();
        let r = algebra_closure(&es, g.n() * g.n()).unwrap();
        assert_eq!(r.basis.dim(), 2 * 2 + 2);
        assert_eq!(center_of_generated(&r.basis, &es).unwrap().dim(), 6);
    }
}
