//! Vertices, distances and distance matrices of the doubled Odd graph.
//!
//! The ground set is `S = {1, ..., 2m+1}`; a vertex is an `m`- or
//! `(m+1)`-subset of `S`, two vertices being adjacent when one strictly
//! contains the other.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::SparseExactMatrix;

/// Largest `m` whose ground set fits the 64-bit vertex mask.
pub const MAX_M: usize = 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    m: usize,
}

impl GroundSet {
    pub fn new(m: usize) -> Result<Self> {
        if (1..=MAX_M).contains(&m) {
            Ok(Self { m })
        } else {
            Err(Error::UnsupportedM {
                m,
                allowed: "1..=31",
            })
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `|S| = 2m + 1`.
    pub fn size(&self) -> usize {
        2 * self.m + 1
    }

    pub fn full_mask(&self) -> u64 {
        (1u64 << self.size()) - 1
    }

    /// The base vertex `x0 = {1, ..., m}`.
    pub fn base_vertex(&self) -> VertexSet {
        VertexSet::from_bits((1u64 << self.m) - 1)
    }

    /// The diameter `2m + 1` of the doubled Odd graph.
    pub fn diameter(&self) -> usize {
        2 * self.m + 1
    }
}

/// A subset of the ground set, element `k` stored at bit `k - 1`.
///
/// Ordered by size first and then by mask value, which is the canonical
/// vertex order used for every matrix index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: u64,
}

impl VertexSet {
    pub fn from_bits(bits: u64) -> Self {
        Self { bits }
    }

    /// Builds from 1-based elements.
    pub fn from_elements(elements: &[usize]) -> Self {
        let bits = elements.iter().fold(0u64, |acc, &e| {
            assert!((1..=64).contains(&e), "element {e} out of range");
            acc | 1 << (e - 1)
        });
        Self { bits }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn size(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..64)
            .filter(|b| self.bits >> b & 1 == 1)
            .map(|b| b + 1)
            .collect()
    }

    pub fn meet(&self, other: &VertexSet) -> usize {
        (self.bits & other.bits).count_ones() as usize
    }

    pub fn is_proper_subset_of(&self, other: &VertexSet) -> bool {
        self.bits & other.bits == self.bits && self.bits != other.bits
    }

    pub fn complement(&self, ground: &GroundSet) -> VertexSet {
        VertexSet::from_bits(ground.full_mask() & !self.bits)
    }

    /// Image under a permutation of the ground set given as a 0-based bit map.
    pub fn permuted(&self, image_of_bit: &[usize]) -> VertexSet {
        let bits = (0..image_of_bit.len())
            .filter(|b| self.bits >> b & 1 == 1)
            .fold(0u64, |acc, b| acc | 1 << image_of_bit[b]);
        VertexSet::from_bits(bits)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.size(), self.bits).cmp(&(other.size(), other.bits))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All `k`-subsets of the ground set in increasing mask order.
pub fn subsets_of_size(ground: &GroundSet, k: usize) -> Vec<VertexSet> {
    let n = ground.size();
    if k == 0 {
        return vec![VertexSet::from_bits(0)];
    }
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut x: u64 = (1u64 << k) - 1;
    let limit = 1u64 << n;
    while x < limit {
        out.push(VertexSet::from_bits(x));
        // Gosper's hack: next integer with the same popcount.
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

/// The `m`-subsets followed by the `(m+1)`-subsets, each in mask order.
pub fn enumerate_vertices(ground: &GroundSet) -> Vec<VertexSet> {
    let mut v = subsets_of_size(ground, ground.m());
    v.extend(subsets_of_size(ground, ground.m() + 1));
    v
}

/// `|y| + |z| - 2|y ∩ z|`, the size of the symmetric difference.
pub fn distance(y: &VertexSet, z: &VertexSet) -> usize {
    (y.bits ^ z.bits).count_ones() as usize
}

/// The doubled Odd graph with its canonical vertex indexing.
#[derive(Clone, Debug)]
pub struct DoubledOddGraph {
    ground: GroundSet,
    vertices: Vec<VertexSet>,
    index: HashMap<u64, usize>,
}

impl DoubledOddGraph {
    pub fn new(m: usize) -> Result<Self> {
        let ground = GroundSet::new(m)?;
        let vertices = enumerate_vertices(&ground);
        let index = vertices
            .iter()
            .enumerate()
            .map(|(k, v)| (v.bits(), k))
            .collect();
        Ok(Self {
            ground,
            vertices,
            index,
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn m(&self) -> usize {
        self.ground.m()
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// Number of `m`-subsets; vertices `0..half()` are the `m`-subsets.
    pub fn half(&self) -> usize {
        self.vertices.len() / 2
    }

    pub fn diameter(&self) -> usize {
        self.ground.diameter()
    }

    pub fn vertices(&self) -> &[VertexSet] {
        &self.vertices
    }

    pub fn vertex(&self, k: usize) -> VertexSet {
        self.vertices[k]
    }

    pub fn index_of(&self, v: &VertexSet) -> Option<usize> {
        self.index.get(&v.bits()).copied()
    }

    pub fn base_vertex(&self) -> VertexSet {
        self.ground.base_vertex()
    }

    pub fn base_index(&self) -> usize {
        self.index_of(&self.base_vertex())
            .expect("x0 is an m-subset")
    }

    pub fn distance(&self, a: usize, b: usize) -> usize {
        distance(&self.vertices[a], &self.vertices[b])
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        let (y, z) = (&self.vertices[a], &self.vertices[b]);
        y.is_proper_subset_of(z) || z.is_proper_subset_of(y)
    }

    /// Neighbours of vertex `a`, by containment.
    pub fn neighbours(&self, a: usize) -> Vec<usize> {
        let y = self.vertices[a];
        let full = self.ground.full_mask();
        let mut out: Vec<usize> = if y.size() == self.m() {
            (0..self.ground.size())
                .map(|b| 1u64 << b)
                .filter(|bit| y.bits() & bit == 0 && full & bit != 0)
                .map(|bit| self.index[&(y.bits() | bit)])
                .collect()
        } else {
            (0..self.ground.size())
                .map(|b| 1u64 << b)
                .filter(|bit| y.bits() & bit != 0)
                .map(|bit| self.index[&(y.bits() & !bit)])
                .collect()
        };
        out.sort_unstable();
        out
    }

    pub fn adjacency_matrix(&self) -> SparseExactMatrix {
        let positions =
            (0..self.n()).flat_map(|a| self.neighbours(a).into_iter().map(move |b| (a, b)));
        SparseExactMatrix::indicator(self.n(), self.n(), positions).expect("indices in range")
    }

    /// The 0/1 matrix of the relation `∂(y, z) = i`.
    pub fn distance_matrix(&self, i: usize) -> Result<SparseExactMatrix> {
        if i > self.diameter() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.diameter(),
            });
        }
        let n = self.n();
        let positions = (0..n).flat_map(|a| {
            (0..n)
                .filter(move |&b| self.distance(a, b) == i)
                .map(move |b| (a, b))
        });
        SparseExactMatrix::indicator(n, n, positions)
    }

    pub fn distance_matrices(&self) -> Vec<SparseExactMatrix> {
        (0..=self.diameter())
            .map(|i| self.distance_matrix(i).expect("i within diameter"))
            .collect()
    }

    /// Index of the complement `S - y`.
    pub fn complement_index(&self, a: usize) -> usize {
        self.index[&self.vertices[a].complement(&self.ground).bits()]
    }
}

/// Intersection numbers `p^h_{ij}` indexed as `[h][i][j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionTable {
    pub diameter: usize,
    counts: Vec<Vec<Vec<u64>>>,
}

impl IntersectionTable {
    pub fn get(&self, h: usize, i: usize, j: usize) -> u64 {
        self.counts[h][i][j]
    }

    /// `k_i = p^0_{ii}`.
    pub fn valencies(&self) -> Vec<u64> {
        (0..=self.diameter).map(|i| self.get(0, i, i)).collect()
    }
}

/// Computes `p^h_{ij}` by scanning every ordered pair of vertices and checks
/// that the counts depend only on `h = ∂(x, y)`.
pub fn intersection_numbers(graph: &DoubledOddGraph) -> Result<IntersectionTable> {
    let n = graph.n();
    let d = graph.diameter();
    let dist: Vec<u8> = (0..n * n)
        .map(|k| graph.distance(k / n, k % n) as u8)
        .collect();
    let mut table: Vec<Option<Vec<Vec<u64>>>> = vec![None; d + 1];
    let mut counts = vec![vec![0u64; d + 1]; d + 1];
    for x in 0..n {
        for y in 0..n {
            for row in &mut counts {
                row.iter_mut().for_each(|c| *c = 0);
            }
            for z in 0..n {
                counts[dist[x * n + z] as usize][dist[z * n + y] as usize] += 1;
            }
            let h = dist[x * n + y] as usize;
            match &table[h] {
                None => table[h] = Some(counts.clone()),
                Some(expected) if *expected == counts => {}
                Some(expected) => {
                    let (i, j) = (0..=d)
                        .flat_map(|i| (0..=d).map(move |j| (i, j)))
                        .find(|&(i, j)| expected[i][j] != counts[i][j])
                        .expect("tables differ somewhere");
                    return Err(Error::Violation { x, y, i, j });
                }
            }
        }
    }
    let counts = table
        .into_iter()
        .map(|t| t.expect("every distance 0..=2m+1 is realized"))
        .collect();
    Ok(IntersectionTable {
        diameter: d,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn m1_vertex_order() {
        let g = GroundSet::new(1).unwrap();
        let v: Vec<String> = enumerate_vertices(&g)
            .iter()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(v, ["{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}"]);
    }

    #[test]
    fn vertex_counts_match_binomials() {
        for m in 1..=5u64 {
            let g = GroundSet::new(m as usize).unwrap();
            let v = enumerate_vertices(&g);
            assert_eq!(v.len() as u64, 2 * binomial(2 * m + 1, m));
            assert!(v.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn rejects_m_zero() {
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(32).is_err());
    }

    #[test]
    fn distance_examples() {
        let y = VertexSet::from_elements(&[1, 2, 3]);
        assert_eq!(distance(&y, &y), 0);
        assert_eq!(distance(&y, &VertexSet::from_elements(&[1, 2, 3, 4])), 1);
        assert_eq!(distance(&y, &VertexSet::from_elements(&[4, 5, 6, 7])), 7);
    }

    #[test]
    fn adjacency_row_sums_are_m_plus_one() {
        for m in 1..=3 {
            let g = DoubledOddGraph::new(m).unwrap();
            let a = g.adjacency_matrix();
            assert!(a.row_sums().iter().all(|s| *s == rational(m as i64 + 1)));
            assert_eq!(a, a.transpose());
            assert_eq!(a, g.distance_matrix(1).unwrap());
        }
    }

    #[test]
    fn distance_matrix_range() {
        let g = DoubledOddGraph::new(2).unwrap();
        assert_eq!(
            g.distance_matrix(0).unwrap(),
            SparseExactMatrix::identity(g.n())
        );
        assert!(g.distance_matrix(6).is_err());
    }

    #[test]
    fn m1_antipodes_are_complements() {
        let g = DoubledOddGraph::new(1).unwrap();
        let a3 = g.distance_matrix(3).unwrap();
        let expected =
            SparseExactMatrix::indicator(6, 6, (0..6).map(|k| (k, g.complement_index(k)))).unwrap();
        assert_eq!(a3, expected);
    }

    #[test]
    fn valency_and_triangle_inequality() {
        for m in 1..=3 {
            let g = DoubledOddGraph::new(m).unwrap();
            let t = intersection_numbers(&g).unwrap();
            assert_eq!(t.get(0, 1, 1), m as u64 + 1);
            let d = g.diameter();
            for h in 0..=d {
                for i in 0..=d {
                    for j in 0..=d {
                        if i + j < h {
                            assert_eq!(t.get(h, i, j), 0);
                        }
                    }
                }
            }
        }
    }
}
