//! Subalgebra generated by a set of square matrices.
//!
//! The span under construction is kept in compressed coordinates: matrix
//! positions are grouped into parts such that every vector in the span is
//! constant on each part, so a vector is stored by one value per part. A new
//! candidate that is not constant on the current parts splits them first.
//! Parts only ever split, and compression is injective on vectors constant on
//! the parts, so membership decisions in compressed coordinates are exact.
//!
//! Closure itself multiplies every basis element on the left by every
//! generator until nothing new appears. The span contains the identity, so
//! closure under left multiplication by generators already contains every
//! word in the generators, which is the whole generated algebra.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;

use super::{small_integer, Rational, SpanBasis, SparseExactMatrix, SparseVec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureResult {
    pub basis: SpanBasis,
    /// Number of product rounds, counting the last round that added nothing.
    pub iterations: usize,
    pub stabilized: bool,
}

/// Closure of `span(generators ∪ {I})` under multiplication.
///
/// Fails with [`Error::DimCapExceeded`] as soon as the dimension passes `dim_cap`.
pub fn algebra_closure(generators: &[SparseExactMatrix], dim_cap: usize) -> Result<ClosureResult> {
    let Some(first) = generators.first() else {
        return Ok(ClosureResult {
            basis: SpanBasis::empty(0, 0),
            iterations: 0,
            stabilized: true,
        });
    };
    let n = first.nrows();
    for g in generators {
        g.require_shape((n, n))?;
    }
    let gens: Vec<IntMatrix> = generators
        .iter()
        .map(IntMatrix::scaled_from)
        .collect::<Result<_>>()?;

    let mut span = CompressedSpan::new(n);
    let mut level: Vec<usize> = Vec::new();
    let identity = IntMatrix::scaled_from(&SparseExactMatrix::identity(n))?;
    for seed in std::iter::once(&identity).chain(&gens) {
        if span.insert(&seed.to_dense(n))? {
            level.push(0);
            check_cap(span.dim(), dim_cap)?;
        }
    }

    let mut k = 0;
    while k < span.dim() {
        let current = span.expand(k)?;
        let products: Vec<Result<Vec<i64>>> = gens
            .par_iter()
            .map(|g| g.left_mul_dense(&current, n))
            .collect();
        for product in products {
            if span.insert(&product?)? {
                level.push(level[k] + 1);
                check_cap(span.dim(), dim_cap)?;
            }
        }
        k += 1;
    }

    let iterations = level.iter().max().map_or(0, |l| l + 1);
    Ok(ClosureResult {
        basis: span.into_span_basis(),
        iterations,
        stabilized: true,
    })
}

fn check_cap(dim: usize, cap: usize) -> Result<()> {
    if dim > cap {
        Err(Error::DimCapExceeded { cap })
    } else {
        Ok(())
    }
}

/// Integer copy of a rational matrix scaled by the lcm of its denominators.
struct IntMatrix {
    rows: Vec<Vec<(usize, i64)>>,
}

impl IntMatrix {
    fn scaled_from(m: &SparseExactMatrix) -> Result<Self> {
        let lcm = m.iter().fold(num_bigint::BigInt::one(), |acc, (_, _, v)| {
            acc.lcm(v.denom())
        });
        let factor = Rational::from_integer(lcm);
        let rows = (0..m.nrows())
            .map(|r| {
                m.row(r)
                    .iter()
                    .map(|(c, v)| {
                        small_integer(&(v * &factor))
                            .map(|x| (*c, x))
                            .ok_or(Error::Overflow)
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(Self { rows })
    }

    fn to_dense(&self, n: usize) -> Vec<i64> {
        let mut out = vec![0; n * n];
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                out[r * n + c] = v;
            }
        }
        out
    }

    /// `self * dense`, both `n x n`, row-major.
    fn left_mul_dense(&self, dense: &[i64], n: usize) -> Result<Vec<i64>> {
        let mut out = vec![0i64; n * n];
        for (r, row) in self.rows.iter().enumerate() {
            let target = &mut out[r * n..(r + 1) * n];
            for &(w, g) in row {
                let source = &dense[w * n..(w + 1) * n];
                if g == 1 {
                    for (t, s) in target.iter_mut().zip(source) {
                        *t = t.checked_add(*s).ok_or(Error::Overflow)?;
                    }
                } else {
                    for (t, s) in target.iter_mut().zip(source) {
                        let term = s.checked_mul(g).ok_or(Error::Overflow)?;
                        *t = t.checked_add(term).ok_or(Error::Overflow)?;
                    }
                }
            }
        }
        Ok(out)
    }
}

struct CompressedSpan {
    n: usize,
    part_of: Vec<u32>,
    /// Smallest matrix position of each part.
    reps: Vec<usize>,
    /// Primitive integer rows in echelon form: row `k` vanishes on the pivots
    /// of rows `0..k`, and each pivot entry is positive.
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

impl CompressedSpan {
    fn new(n: usize) -> Self {
        Self {
            n,
            part_of: vec![0; n * n],
            reps: vec![0],
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Splits parts until `cand` is constant on each of them.
    fn refine(&mut self, cand: &[i64]) {
        let mut first_val: Vec<Option<i64>> = vec![None; self.reps.len()];
        let mut split: HashMap<(u32, i64), u32> = HashMap::new();
        let mut parents: Vec<usize> = Vec::new();
        for (c, &v) in cand.iter().enumerate() {
            let p = self.part_of[c];
            match first_val[p as usize] {
                None => first_val[p as usize] = Some(v),
                Some(f) if f == v => {}
                Some(_) => {
                    let reps = &mut self.reps;
                    let q = *split.entry((p, v)).or_insert_with(|| {
                        reps.push(c);
                        parents.push(p as usize);
                        (reps.len() - 1) as u32
                    });
                    self.part_of[c] = q;
                }
            }
        }
        for parent in parents {
            for row in &mut self.rows {
                let v = row[parent];
                row.push(v);
            }
        }
    }

    fn insert(&mut self, cand: &[i64]) -> Result<bool> {
        self.refine(cand);
        let mut v: Vec<i128> = self.reps.iter().map(|&c| cand[c] as i128).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let x = v[p];
            if x == 0 {
                continue;
            }
            let a = row[p];
            let g = a.gcd(&x);
            let (sa, sx) = (a / g, x / g);
            for (vk, rk) in v.iter_mut().zip(row) {
                let left = vk.checked_mul(sa).ok_or(Error::Overflow)?;
                let right = rk.checked_mul(sx).ok_or(Error::Overflow)?;
                *vk = left.checked_sub(right).ok_or(Error::Overflow)?;
            }
            make_primitive(&mut v);
        }
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return Ok(false);
        };
        if v[pivot] < 0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        self.rows.push(v);
        self.pivots.push(pivot);
        Ok(true)
    }

    fn expand(&self, k: usize) -> Result<Vec<i64>> {
        let row = &self.rows[k];
        self.part_of
            .iter()
            .map(|&p| i64::try_from(row[p as usize]).map_err(|_| Error::Overflow))
            .collect()
    }

    /// Reduced echelon basis in ordinary row-major matrix coordinates.
    ///
    /// Parts are ordered by their smallest position; under that column order a
    /// reduced echelon basis expands to a reduced echelon basis, because each
    /// row's pivot part holds its leftmost position.
    fn into_span_basis(self) -> SpanBasis {
        let parts = self.reps.len();
        let mut order: Vec<usize> = (0..parts).collect();
        order.sort_by_key(|&p| self.reps[p]);
        let mut rank = vec![0usize; parts];
        for (r, &p) in order.iter().enumerate() {
            rank[p] = r;
        }
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); parts];
        for (c, &p) in self.part_of.iter().enumerate() {
            members[p as usize].push(c);
        }

        let mut compressed = SpanBasis::empty_vectors(parts);
        for row in &self.rows {
            let entries = row
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(p, x)| (rank[p], Rational::from_integer((*x).into())))
                .collect();
            compressed.insert_vector(SparseVec::from_entries(parts, entries));
        }

        let n2 = self.n * self.n;
        let rows = compressed
            .rows()
            .iter()
            .map(|row| {
                let mut entries: Vec<(usize, Rational)> = row
                    .entries()
                    .iter()
                    .flat_map(|(r, x)| members[order[*r]].iter().map(move |&c| (c, x.clone())))
                    .collect();
                entries.sort_unstable_by_key(|(c, _)| *c);
                SparseVec::from_sorted(n2, entries)
            })
            .collect();
        SpanBasis::from_reduced_rows(self.n, self.n, rows)
    }
}

fn make_primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |acc, x| acc.gcd(x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}
