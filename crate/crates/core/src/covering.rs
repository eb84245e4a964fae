//! The Odd graph `O_{m+1}` and the two-to-one covering `ψ` from the doubled
//! graph onto it.

use std::collections::VecDeque;

use serde::Serialize;

use crate::combinatorics::{DoubledOddGraph, VertexSet};
use crate::error::Result;
use crate::linalg::SparseExactMatrix;

/// `m`-subsets of `{1..2m+1}`, adjacent when disjoint.
#[derive(Clone, Debug)]
pub struct OddGraph {
    m: usize,
    vertices: Vec<VertexSet>,
    neighbours: Vec<Vec<usize>>,
}

impl OddGraph {
    /// Reuses the `m`-sets of the doubled graph, in the same order.
    pub fn from_doubled(graph: &DoubledOddGraph) -> Self {
        let vertices = graph.vertices()[..graph.half()].to_vec();
        let neighbours = vertices
            .iter()
            .map(|u| {
                (0..vertices.len())
                    .filter(|&w| u.bits() & vertices[w].bits() == 0)
                    .collect()
            })
            .collect();
        Self {
            m: graph.m(),
            vertices,
            neighbours,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[VertexSet] {
        &self.vertices
    }

    pub fn neighbours(&self, a: usize) -> &[usize] {
        &self.neighbours[a]
    }

    pub fn adjacency_matrix(&self) -> SparseExactMatrix {
        let support = self
            .neighbours
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().map(move |&b| (a, b)));
        SparseExactMatrix::indicator(self.n(), self.n(), support).expect("indices in range")
    }

    /// Breadth-first distances from `source`.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(a) = queue.pop_front() {
            for &b in &self.neighbours[a] {
                if dist[b] == usize::MAX {
                    dist[b] = dist[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        dist
    }

    /// Spheres around `source`, indexed by distance.
    pub fn spheres(&self, source: usize) -> Vec<Vec<usize>> {
        let dist = self.distances_from(source);
        let diameter = dist.iter().copied().max().unwrap_or(0);
        let mut out = vec![Vec::new(); diameter + 1];
        for (v, &d) in dist.iter().enumerate() {
            out[d].push(v);
        }
        out
    }
}

/// Vertex of the Odd graph covered by vertex `a` of the doubled graph: an
/// `m`-set maps to itself, an `(m+1)`-set to its complement.
pub fn project(graph: &DoubledOddGraph, a: usize) -> usize {
    if a < graph.half() {
        a
    } else {
        graph.complement_index(a)
    }
}

/// `ψ` as a `|O| × |X|` 0/1 matrix with `ψ[π(z), z] = 1`.
pub fn build_psi(graph: &DoubledOddGraph) -> SparseExactMatrix {
    let support = (0..graph.n()).map(|z| (project(graph, z), z));
    SparseExactMatrix::indicator(graph.half(), graph.n(), support).expect("indices in range")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntertwiningCheck {
    pub odd_diameter: usize,
    pub one_per_column: bool,
    pub two_per_row: bool,
    pub psi_psi_t_is_2i: bool,
    pub adjacency_intertwined: bool,
    /// `E*_i(O) ψ = ψ (E*_i + E*_{2m+1-i})` for `i = 0..=m`.
    pub dual_idempotents_intertwined: Vec<bool>,
}

impl IntertwiningCheck {
    pub fn holds(&self) -> bool {
        self.one_per_column
            && self.two_per_row
            && self.psi_psi_t_is_2i
            && self.adjacency_intertwined
            && self.dual_idempotents_intertwined.iter().all(|&b| b)
    }
}

pub fn verify_intertwining(graph: &DoubledOddGraph) -> Result<IntertwiningCheck> {
    let m = graph.m();
    let odd = OddGraph::from_doubled(graph);
    let psi = build_psi(graph);
    let psi_t = psi.transpose();
    let all_ones = |sums: Vec<_>, k: i64| sums.iter().all(|s| *s == crate::linalg::rational(k));

    let one_per_column = all_ones(psi.col_sums(), 1) && psi.nnz() == graph.n();
    let two_per_row = all_ones(psi.row_sums(), 2);
    let psi_psi_t_is_2i = psi.try_mul(&psi_t)?
        == SparseExactMatrix::identity(odd.n()).scale(&crate::linalg::rational(2));
    let adjacency_intertwined =
        psi.try_mul(&graph.adjacency_matrix())? == odd.adjacency_matrix().try_mul(&psi)?;

    let spheres = odd.spheres(graph.base_index());
    let doubled = crate::terwilliger::dual_idempotents(graph);
    let mut dual_idempotents_intertwined = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let e_odd =
            SparseExactMatrix::diagonal(odd.n(), spheres.get(i).cloned().unwrap_or_default());
        let pair = doubled[i].matrix.try_add(&doubled[2 * m + 1 - i].matrix)?;
        dual_idempotents_intertwined.push(e_odd.try_mul(&psi)? == psi.try_mul(&pair)?);
    }

    Ok(IntertwiningCheck {
        odd_diameter: spheres.len() - 1,
        one_per_column,
        two_per_row,
        psi_psi_t_is_2i,
        adjacency_intertwined,
        dual_idempotents_intertwined,
    })
}
