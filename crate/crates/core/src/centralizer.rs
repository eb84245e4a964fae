//! Orbits of the stabilizer of `x0` on ordered vertex pairs and the
//! centralizer algebra they span.
//!
//! The stabilizer is `Sym(x0) × Sym(S - x0)`. Its orbits on `X × X` are the
//! level sets of the four-tuple invariant [`rho`] inside each of the four
//! size blocks, and each orbit gives one 0/1 basis matrix of the centralizer
//! algebra. [`orbits_by_group_action`] recomputes the same partition directly
//! from group generators so the two can be compared.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::combinatorics::{DoubledOddGraph, VertexSet};
use crate::error::{Error, Result};
use crate::linalg::{span, SpanBasis, SparseExactMatrix};

/// `(|x0 ∩ y|, |x0 ∩ z|, |y ∩ z|, |x0 ∩ y ∩ z|)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FourTuple {
    pub i: usize,
    pub j: usize,
    pub t: usize,
    pub p: usize,
}

impl FourTuple {
    pub const fn new(i: usize, j: usize, t: usize, p: usize) -> Self {
        Self { i, j, t, p }
    }

    fn from_signed(i: i64, j: i64, t: i64, p: i64) -> Option<Self> {
        let c = |x: i64| usize::try_from(x).ok();
        Some(Self::new(c(i)?, c(j)?, c(t)?, c(p)?))
    }
}

impl fmt::Display for FourTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.i, self.j, self.t, self.p)
    }
}

impl FromStr for FourTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidLabel(s.to_string()))?;
        match parts[..] {
            [i, j, t, p] => Ok(Self::new(i, j, t, p)),
            _ => Err(Error::InvalidLabel(s.to_string())),
        }
    }
}

/// Which of the four size blocks of `X × X` a pair lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockTag {
    /// `m`-set × `m`-set
    I,
    /// `m`-set × `(m+1)`-set
    II,
    /// `(m+1)`-set × `m`-set
    III,
    /// `(m+1)`-set × `(m+1)`-set
    IV,
}

impl BlockTag {
    pub const ALL: [BlockTag; 4] = [BlockTag::I, BlockTag::II, BlockTag::III, BlockTag::IV];

    pub fn of_pair(m: usize, y: &VertexSet, z: &VertexSet) -> BlockTag {
        match (y.size() == m, z.size() == m) {
            (true, true) => BlockTag::I,
            (true, false) => BlockTag::II,
            (false, true) => BlockTag::III,
            (false, false) => BlockTag::IV,
        }
    }

    /// Sizes of the row and column vertices.
    pub fn sizes(self, m: usize) -> (usize, usize) {
        match self {
            BlockTag::I => (m, m),
            BlockTag::II => (m, m + 1),
            BlockTag::III => (m + 1, m),
            BlockTag::IV => (m + 1, m + 1),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BlockTag::I => "I",
            BlockTag::II => "II",
            BlockTag::III => "III",
            BlockTag::IV => "IV",
        }
    }
}

impl fmt::Display for BlockTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BlockTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BlockTag::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| Error::InvalidLabel(s.to_string()))
    }
}

impl Serialize for BlockTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// One orbit of the stabilizer on `X × X`; serialized as `block:i,j,t,p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitLabel {
    pub block: BlockTag,
    pub tuple: FourTuple,
}

impl OrbitLabel {
    pub const fn new(block: BlockTag, tuple: FourTuple) -> Self {
        Self { block, tuple }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.block, self.tuple)
    }
}

impl FromStr for OrbitLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (block, tuple) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidLabel(s.to_string()))?;
        Ok(Self::new(block.parse()?, tuple.parse()?))
    }
}

impl Serialize for OrbitLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn rho(x0: &VertexSet, y: &VertexSet, z: &VertexSet) -> FourTuple {
    let yz = VertexSet::from_bits(y.bits() & z.bits());
    FourTuple::new(x0.meet(y), x0.meet(z), y.meet(z), x0.meet(&yz))
}

/// The index set of a block from its closed-form inequalities.
pub fn index_set(block: BlockTag, m: usize) -> BTreeSet<FourTuple> {
    let mi = m as i64;
    let mut out = BTreeSet::new();
    for i in 0..=mi {
        for j in 0..=mi {
            for t in 0..=mi + 1 {
                for p in 0..=mi {
                    let ((t_lo, t_hi), (p_lo, p_hi)) = match block {
                        BlockTag::I => (
                            ((i + j - mi).max(mi - 1 - i - j), mi - (i - j).abs()),
                            (
                                0.max(i + j - mi).max(i + t - mi).max(j + t - mi),
                                i.min(j).min(t).min(i + j + t + 1 - mi),
                            ),
                        ),
                        BlockTag::II => (
                            ((i + j - mi).abs(), mi - (i - j).max(j - i - 1)),
                            (
                                i - i.min(mi - j).min(mi - t).min(i - j - t + mi + 1),
                                i - 0.max(i - j).max(i - t).max(mi - j - t),
                            ),
                        ),
                        BlockTag::III => (
                            ((i + j - mi).abs(), mi - (i - j - 1).max(j - i)),
                            (
                                j - (mi - i).min(j).min(mi - t).min(j - i - t + mi + 1),
                                j - 0.max(j - i).max(j - t).max(mi - i - t),
                            ),
                        ),
                        BlockTag::IV => (
                            (1 + (i + j - mi - 1).max(mi - i - j), mi + 1 - (i - j).abs()),
                            (
                                i + j - mi + 0.max(mi - i - j).max(t - i - 1).max(t - j - 1),
                                i + j - mi + (mi - i).min(mi - j).min(t - 1).min(mi - i - j + t),
                            ),
                        ),
                    };
                    if (t_lo..=t_hi).contains(&t) && (p_lo..=p_hi).contains(&p) {
                        out.insert(FourTuple::from_signed(i, j, t, p).expect("nonnegative"));
                    }
                }
            }
        }
    }
    out
}

/// `{ρ(y, z) : (y, z) in the block}` by exhaustion.
pub fn index_set_by_enumeration(graph: &DoubledOddGraph, block: BlockTag) -> BTreeSet<FourTuple> {
    let m = graph.m();
    let x0 = graph.base_vertex();
    let (ry, rz) = block.sizes(m);
    let vs = graph.vertices();
    vs.iter()
        .filter(|y| y.size() == ry)
        .flat_map(|y| {
            vs.iter()
                .filter(|z| z.size() == rz)
                .map(move |z| rho(&x0, y, z))
        })
        .collect()
}

fn require_member(block: BlockTag, tuple: FourTuple, m: usize) -> Result<()> {
    if index_set(block, m).contains(&tuple) {
        Ok(())
    } else {
        Err(Error::InvalidLabel(
            OrbitLabel::new(block, tuple).to_string(),
        ))
    }
}

/// Maps an index tuple of block II, III or IV to the block I tuple obtained
/// by complementing the `(m+1)`-sets of the pair.
pub fn tuple_bijection(block: BlockTag, tuple: FourTuple, m: usize) -> Result<FourTuple> {
    require_member(block, tuple, m)?;
    let FourTuple { i, j, t, p } = tuple;
    let (i, j, t, p, m) = (i as i64, j as i64, t as i64, p as i64, m as i64);
    let image = match block {
        BlockTag::I => {
            return Err(Error::InvalidLabel(format!(
                "block I has no bijection: {tuple}"
            )))
        }
        BlockTag::II => FourTuple::from_signed(i, m - j, m - t, i - p),
        BlockTag::III => FourTuple::from_signed(m - i, j, m - t, j - p),
        BlockTag::IV => FourTuple::from_signed(m - i, m - j, t - 1, m - i - j + p),
    };
    image.ok_or_else(|| Error::InvalidLabel(tuple.to_string()))
}

/// Inverse of [`tuple_bijection`]: block I tuple back to `block`.
pub fn tuple_bijection_inverse(block: BlockTag, tuple: FourTuple, m: usize) -> Result<FourTuple> {
    require_member(BlockTag::I, tuple, m)?;
    let FourTuple { i, j, t, p } = tuple;
    let (i, j, t, p, m) = (i as i64, j as i64, t as i64, p as i64, m as i64);
    let image = match block {
        BlockTag::I => {
            return Err(Error::InvalidLabel(format!(
                "block I has no bijection: {tuple}"
            )))
        }
        BlockTag::II => FourTuple::from_signed(i, m - j, m - t, i - p),
        BlockTag::III => FourTuple::from_signed(m - i, j, m - t, j - p),
        BlockTag::IV => FourTuple::from_signed(m - i, m - j, t + 1, p + m - i - j),
    };
    image.ok_or_else(|| Error::InvalidLabel(tuple.to_string()))
}

/// All orbit labels, block by block, tuples in lexicographic order.
pub fn orbit_labels(m: usize) -> Vec<OrbitLabel> {
    BlockTag::ALL
        .into_iter()
        .flat_map(|b| {
            index_set(b, m)
                .into_iter()
                .map(move |t| OrbitLabel::new(b, t))
        })
        .collect()
}

/// 0/1 indicator of one orbit.
pub fn orbit_matrix(graph: &DoubledOddGraph, label: &OrbitLabel) -> Result<SparseExactMatrix> {
    let m = graph.m();
    require_member(label.block, label.tuple, m)?;
    let x0 = graph.base_vertex();
    let n = graph.n();
    let vs = graph.vertices();
    let positions = (0..n).flat_map(|a| {
        (0..n)
            .filter(move |&b| {
                BlockTag::of_pair(m, &vs[a], &vs[b]) == label.block
                    && rho(&x0, &vs[a], &vs[b]) == label.tuple
            })
            .map(move |b| (a, b))
    });
    SparseExactMatrix::indicator(n, n, positions)
}

/// A partition of the ordered pairs `(a, b)`, stored as a class id per pair
/// index `a * n + b`. Class ids are numbered by first occurrence, so equal
/// partitions have equal `class_of` vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairPartition {
    pub n: usize,
    pub class_of: Vec<u32>,
    pub classes: usize,
}

impl PairPartition {
    fn from_keys<K: Eq + std::hash::Hash>(n: usize, keys: impl Iterator<Item = K>) -> Self {
        let mut ids: HashMap<K, u32> = HashMap::new();
        let class_of: Vec<u32> = keys
            .map(|k| {
                let next = ids.len() as u32;
                *ids.entry(k).or_insert(next)
            })
            .collect();
        Self {
            n,
            class_of,
            classes: ids.len(),
        }
    }
}

/// Partition of `X × X` by (block, ρ).
pub fn rho_partition(graph: &DoubledOddGraph) -> PairPartition {
    let m = graph.m();
    let x0 = graph.base_vertex();
    let vs = graph.vertices();
    let n = graph.n();
    PairPartition::from_keys(
        n,
        (0..n * n).map(|k| {
            let (y, z) = (&vs[k / n], &vs[k % n]);
            (BlockTag::of_pair(m, y, z), rho(&x0, y, z))
        }),
    )
}

/// Generators of `Sym(x0) × Sym(S - x0)` as 0-based bit maps: a
/// transposition and a full cycle on each factor of size at least 2.
pub fn stabilizer_generators(m: usize) -> Vec<Vec<usize>> {
    let size = 2 * m + 1;
    let mut gens = Vec::new();
    for (lo, hi) in [(0, m), (m, size)] {
        if hi - lo < 2 {
            continue;
        }
        let mut swap: Vec<usize> = (0..size).collect();
        swap.swap(lo, lo + 1);
        gens.push(swap);
        let mut cycle: Vec<usize> = (0..size).collect();
        cycle[lo..hi].rotate_left(1);
        gens.push(cycle);
    }
    gens
}

/// Orbit partition of `X × X` computed by closing pairs under the stabilizer
/// generators with union-find.
pub fn orbits_by_group_action(graph: &DoubledOddGraph) -> PairPartition {
    let n = graph.n();
    let gens = stabilizer_generators(graph.m());
    let images: Vec<Vec<usize>> = gens
        .iter()
        .map(|g| {
            graph
                .vertices()
                .iter()
                .map(|v| {
                    graph
                        .index_of(&v.permuted(g))
                        .expect("permutations preserve X")
                })
                .collect()
        })
        .collect();
    let mut uf: UnionFind<u32> = UnionFind::new(n * n);
    for a in 0..n {
        for b in 0..n {
            for img in &images {
                uf.union((a * n + b) as u32, (img[a] * n + img[b]) as u32);
            }
        }
    }
    PairPartition::from_keys(n, (0..n * n).map(|k| uf.find(k as u32)))
}

/// The orbit basis of the centralizer algebra and its span.
#[derive(Clone, Debug)]
pub struct CentralizerBasis {
    m: usize,
    labels: Vec<OrbitLabel>,
    matrices: Vec<SparseExactMatrix>,
    span: SpanBasis,
    position: HashMap<OrbitLabel, usize>,
}

impl CentralizerBasis {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn labels(&self) -> &[OrbitLabel] {
        &self.labels
    }

    pub fn matrices(&self) -> &[SparseExactMatrix] {
        &self.matrices
    }

    pub fn span(&self) -> &SpanBasis {
        &self.span
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn get(&self, label: &OrbitLabel) -> Option<&SparseExactMatrix> {
        self.position.get(label).map(|&k| &self.matrices[k])
    }

    /// Looks up the matrix for `(block, i, j, t, p)`.
    pub fn orbit(
        &self,
        block: BlockTag,
        i: usize,
        j: usize,
        t: usize,
        p: usize,
    ) -> Option<&SparseExactMatrix> {
        self.get(&OrbitLabel::new(block, FourTuple::new(i, j, t, p)))
    }

    pub fn labels_in(&self, blocks: &[BlockTag]) -> Vec<OrbitLabel> {
        self.labels
            .iter()
            .filter(|l| blocks.contains(&l.block))
            .copied()
            .collect()
    }
}

/// Builds every orbit matrix in one pass over `X × X` and checks that they
/// are linearly independent.
pub fn build_centralizer(graph: &DoubledOddGraph) -> Result<CentralizerBasis> {
    let m = graph.m();
    let n = graph.n();
    let labels = orbit_labels(m);
    let position: HashMap<OrbitLabel, usize> =
        labels.iter().enumerate().map(|(k, l)| (*l, k)).collect();
    let x0 = graph.base_vertex();
    let vs = graph.vertices();
    let mut supports: Vec<Vec<(usize, usize)>> = vec![Vec::new(); labels.len()];
    for a in 0..n {
        for b in 0..n {
            let label = OrbitLabel::new(
                BlockTag::of_pair(m, &vs[a], &vs[b]),
                rho(&x0, &vs[a], &vs[b]),
            );
            let k = *position.get(&label).ok_or_else(|| {
                Error::InvalidLabel(format!("pair realizes {label} outside the index set"))
            })?;
            supports[k].push((a, b));
        }
    }
    let matrices: Vec<SparseExactMatrix> = supports
        .into_iter()
        .map(|s| SparseExactMatrix::indicator(n, n, s))
        .collect::<Result<_>>()?;
    let span = span(&matrices)?;
    if span.dim() < matrices.len() {
        return Err(Error::IndependenceFailure {
            rank: span.dim(),
            count: matrices.len(),
        });
    }
    Ok(CentralizerBasis {
        m,
        labels,
        matrices,
        span,
        position,
    })
}

/// A product of two basis matrices that left the span under test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductWitness {
    pub left: OrbitLabel,
    pub right: OrbitLabel,
    /// Blocks containing at least one nonzero entry of the product.
    pub support_blocks: Vec<BlockTag>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureCheck {
    pub products_checked: usize,
    pub closed: bool,
    pub offender: Option<ProductWitness>,
}

fn support_blocks(half: usize, m: &SparseExactMatrix) -> Vec<BlockTag> {
    let mut blocks: BTreeSet<BlockTag> = BTreeSet::new();
    for (r, c) in m.support() {
        let tag = match (r < half, c < half) {
            (true, true) => BlockTag::I,
            (true, false) => BlockTag::II,
            (false, true) => BlockTag::III,
            (false, false) => BlockTag::IV,
        };
        blocks.insert(tag);
    }
    blocks.into_iter().collect()
}

/// Tests `B_a * B_b ∈ target` for the given label pairs, stopping at the
/// first product outside.
pub fn check_products(
    basis: &CentralizerBasis,
    target: &SpanBasis,
    pairs: &[(OrbitLabel, OrbitLabel)],
) -> Result<ClosureCheck> {
    let half = basis.matrices.first().map_or(0, |m| m.nrows() / 2);
    for (k, (a, b)) in pairs.iter().enumerate() {
        let ma = basis
            .get(a)
            .ok_or_else(|| Error::InvalidLabel(a.to_string()))?;
        let mb = basis
            .get(b)
            .ok_or_else(|| Error::InvalidLabel(b.to_string()))?;
        let prod = ma.try_mul(mb)?;
        if !target.contains(&prod)? {
            return Ok(ClosureCheck {
                products_checked: k + 1,
                closed: false,
                offender: Some(ProductWitness {
                    left: *a,
                    right: *b,
                    support_blocks: support_blocks(half, &prod),
                }),
            });
        }
    }
    Ok(ClosureCheck {
        products_checked: pairs.len(),
        closed: true,
        offender: None,
    })
}

/// Checks that the span of the listed orbit matrices is closed under
/// multiplication, trying every ordered pair.
pub fn check_subalgebra(basis: &CentralizerBasis, sub: &[OrbitLabel]) -> Result<ClosureCheck> {
    let ms: Vec<SparseExactMatrix> = sub
        .iter()
        .map(|l| {
            basis
                .get(l)
                .cloned()
                .ok_or_else(|| Error::InvalidLabel(l.to_string()))
        })
        .collect::<Result<_>>()?;
    let target = span(&ms)?;
    let pairs: Vec<_> = sub
        .iter()
        .flat_map(|a| sub.iter().map(move |b| (*a, *b)))
        .collect();
    check_products(basis, &target, &pairs)
}

/// Label pairs for the closure check of the whole algebra: every ordered
/// pair when there are at most `exhaustive_limit` of them, otherwise
/// `samples` pairs drawn with a fixed seed.
pub fn closure_pairs(
    basis: &CentralizerBasis,
    exhaustive_limit: usize,
    samples: usize,
    seed: u64,
) -> Vec<(OrbitLabel, OrbitLabel)> {
    let labels = &basis.labels;
    let total = labels.len() * labels.len();
    if total <= exhaustive_limit {
        return labels
            .iter()
            .flat_map(|a| labels.iter().map(move |b| (*a, *b)))
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let a = labels[rng.random_range(0..labels.len())];
            let b = labels[rng.random_range(0..labels.len())];
            (a, b)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectSumCheck {
    /// Dimensions of the type I, type II+III and type IV spans.
    pub parts: [usize; 3],
    pub total: usize,
    /// Dimension of each pairwise join equals the sum of the two parts.
    pub pairwise_trivial: [bool; 3],
}

impl DirectSumCheck {
    pub fn holds(&self) -> bool {
        self.parts.iter().sum::<usize>() == self.total && self.pairwise_trivial.iter().all(|&b| b)
    }
}

/// Subalgebra label sets: type I, types II and III, type IV.
pub fn subalgebra_labels(basis: &CentralizerBasis) -> [Vec<OrbitLabel>; 3] {
    [
        basis.labels_in(&[BlockTag::I]),
        basis.labels_in(&[BlockTag::II, BlockTag::III]),
        basis.labels_in(&[BlockTag::IV]),
    ]
}

pub fn check_direct_sum(basis: &CentralizerBasis) -> Result<DirectSumCheck> {
    let spans: Vec<SpanBasis> = subalgebra_labels(basis)
        .iter()
        .map(|ls| {
            let ms: Vec<_> = ls.iter().filter_map(|l| basis.get(l).cloned()).collect();
            span(&ms)
        })
        .collect::<Result<_>>()?;
    let parts = [spans[0].dim(), spans[1].dim(), spans[2].dim()];
    let mut pairwise_trivial = [false; 3];
    for (slot, (a, b)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        pairwise_trivial[slot] = spans[a].join(&spans[b])?.dim() == parts[a] + parts[b];
    }
    let all = spans[0].join(&spans[1])?.join(&spans[2])?;
    Ok(DirectSumCheck {
        parts,
        total: all.dim(),
        pairwise_trivial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize, j: usize, t: usize, p: usize) -> FourTuple {
        FourTuple::new(i, j, t, p)
    }

    #[test]
    fn rho_examples() {
        let x0 = VertexSet::from_elements(&[1]);
        assert_eq!(
            rho(
                &x0,
                &VertexSet::from_elements(&[1]),
                &VertexSet::from_elements(&[2, 3])
            ),
            t(1, 0, 0, 0)
        );
        let x0 = VertexSet::from_elements(&[1, 2, 3]);
        assert_eq!(rho(&x0, &x0, &x0), t(3, 3, 3, 3));
        assert_eq!(
            rho(
                &x0,
                &VertexSet::from_elements(&[1, 2, 4]),
                &VertexSet::from_elements(&[1, 4, 5, 6])
            ),
            t(2, 1, 2, 1)
        );
    }

    #[test]
    fn m1_block_one_index_set() {
        let expected: BTreeSet<_> = [
            t(1, 1, 1, 1),
            t(1, 0, 0, 0),
            t(0, 1, 0, 0),
            t(0, 0, 1, 0),
            t(0, 0, 0, 0),
        ]
        .into();
        assert_eq!(index_set(BlockTag::I, 1), expected);
    }

    #[test]
    fn bijection_examples() {
        assert_eq!(
            tuple_bijection(BlockTag::II, t(1, 1, 1, 1), 1).unwrap(),
            t(1, 0, 0, 0)
        );
        assert!(tuple_bijection(BlockTag::I, t(1, 1, 1, 1), 1).is_err());
        assert!(tuple_bijection(BlockTag::II, t(0, 0, 0, 1), 1).is_err());
        let image: BTreeSet<_> = index_set(BlockTag::IV, 1)
            .into_iter()
            .map(|x| tuple_bijection(BlockTag::IV, x, 1).unwrap())
            .collect();
        assert_eq!(image, index_set(BlockTag::I, 1));
    }

    #[test]
    fn bijections_invert_at_m2() {
        for block in [BlockTag::II, BlockTag::III, BlockTag::IV] {
            for x in index_set(block, 2) {
                let y = tuple_bijection(block, x, 2).unwrap();
                assert_eq!(tuple_bijection_inverse(block, y, 2).unwrap(), x);
            }
            for y in index_set(BlockTag::I, 2) {
                let x = tuple_bijection_inverse(block, y, 2).unwrap();
                assert_eq!(tuple_bijection(block, x, 2).unwrap(), y);
            }
        }
    }

    #[test]
    fn label_text_roundtrip() {
        let l: OrbitLabel = "II:2,1,2,1".parse().unwrap();
        assert_eq!(l, OrbitLabel::new(BlockTag::II, t(2, 1, 2, 1)));
        assert_eq!(l.to_string(), "II:2,1,2,1");
        assert!("V:1,1,1,1".parse::<OrbitLabel>().is_err());
        assert!("I:1,1,1".parse::<OrbitLabel>().is_err());
    }

    #[test]
    fn base_pair_orbit_is_a_single_entry() {
        for m in 1..=3 {
            let g = DoubledOddGraph::new(m).unwrap();
            let label = OrbitLabel::new(BlockTag::I, t(m, m, m, m));
            let mat = orbit_matrix(&g, &label).unwrap();
            let b = g.base_index();
            assert_eq!(mat.support().collect::<Vec<_>>(), vec![(b, b)]);
        }
    }

    #[test]
    fn generators_for_small_m() {
        assert_eq!(stabilizer_generators(1).len(), 2);
        assert_eq!(stabilizer_generators(3).len(), 4);
    }

    #[test]
    fn m1_orbit_count() {
        let g = DoubledOddGraph::new(1).unwrap();
        let orbits = orbits_by_group_action(&g);
        assert_eq!(orbits.classes, 20);
        assert_eq!(orbits, rho_partition(&g));
    }

    #[test]
    fn m1_basis_and_transposes() {
        let g = DoubledOddGraph::new(1).unwrap();
        let c = build_centralizer(&g).unwrap();
        assert_eq!(c.dim(), 20);
        for l in c.labels() {
            let FourTuple { i, j, t, p } = l.tuple;
            let swapped = FourTuple::new(j, i, t, p);
            let partner = match l.block {
                BlockTag::I => OrbitLabel::new(BlockTag::I, swapped),
                BlockTag::II => OrbitLabel::new(BlockTag::III, swapped),
                BlockTag::III => OrbitLabel::new(BlockTag::II, swapped),
                BlockTag::IV => OrbitLabel::new(BlockTag::IV, swapped),
            };
            assert_eq!(c.get(l).unwrap().transpose(), *c.get(&partner).unwrap());
        }
    }
}
