use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{Rational, SparseExactMatrix, SparseVec};
use crate::error::{Error, Result};

/// Reduced row echelon basis of a span of vectorized matrices.
///
/// Rows are ordered by pivot column, every pivot entry is 1 and every row is
/// zero in the pivot columns of the other rows. Two spans are equal exactly
/// when their `SpanBasis` values are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanBasis {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
}

impl SpanBasis {
    /// The zero subspace of `nrows x ncols` matrices.
    pub fn empty(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }

    /// The zero subspace of plain vectors of length `dim` (viewed as `1 x dim`).
    pub fn empty_vectors(dim: usize) -> Self {
        Self::empty(1, dim)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn ambient_dim(&self) -> usize {
        self.nrows * self.ncols
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &BTreeMap<usize, usize> {
        &self.pivots
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Basis row `k` reshaped into a matrix.
    pub fn matrix(&self, k: usize) -> SparseExactMatrix {
        SparseExactMatrix::from_vector(self.nrows, self.ncols, &self.rows[k])
            .expect("basis rows have the ambient dimension")
    }

    pub fn matrices(&self) -> Vec<SparseExactMatrix> {
        (0..self.dim()).map(|k| self.matrix(k)).collect()
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(&Rational, &SparseVec)> = v
            .entries()
            .iter()
            .filter_map(|(c, val)| self.pivots.get(c).map(|&k| (val, &self.rows[k])))
            .collect();
        match hits.len() {
            0 => v.clone(),
            1..=8 => hits
                .into_iter()
                .fold(v.clone(), |acc, (coef, row)| acc.sub_scaled(coef, row)),
            _ => {
                let mut acc: BTreeMap<usize, Rational> = v.entries().iter().cloned().collect();
                for (coef, row) in hits {
                    for (c, x) in row.entries() {
                        let slot = acc.entry(*c).or_insert_with(Rational::zero);
                        *slot -= coef * x;
                    }
                }
                let entries = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                SparseVec::from_sorted(v.dim(), entries)
            }
        }
    }

    pub fn contains_vector(&self, v: &SparseVec) -> bool {
        v.dim() == self.ambient_dim() && self.reduce(v).is_zero()
    }

    pub fn contains(&self, m: &SparseExactMatrix) -> Result<bool> {
        m.require_shape(self.shape())?;
        Ok(self.reduce(&m.vectorize()).is_zero())
    }

    /// Coefficients of `m` in the basis rows, or `None` if `m` is outside the span.
    pub fn coordinates(&self, m: &SparseExactMatrix) -> Result<Option<Vec<Rational>>> {
        m.require_shape(self.shape())?;
        let v = m.vectorize();
        if !self.reduce(&v).is_zero() {
            return Ok(None);
        }
        Ok(Some(self.pivots.keys().map(|&c| v.get(c)).collect()))
    }

    pub fn insert(&mut self, m: &SparseExactMatrix) -> Result<bool> {
        m.require_shape(self.shape())?;
        Ok(self.insert_vector(m.vectorize()))
    }

    /// Adds `v` to the span, keeping the basis reduced. Returns whether the
    /// dimension grew.
    pub fn insert_vector(&mut self, v: SparseVec) -> bool {
        assert_eq!(v.dim(), self.ambient_dim(), "vector dimension mismatch");
        let mut r = self.reduce(&v);
        let Some((pivot, lead)) = r.leading().map(|(c, x)| (c, x.clone())) else {
            return false;
        };
        if !lead.is_one() {
            r.scale(&lead.recip());
        }
        for row in &mut self.rows {
            if let Some(coef) = row.lookup(pivot).cloned() {
                *row = row.sub_scaled(&coef, &r);
            }
        }
        let at = self.rows.partition_point(|row| row.entries()[0].0 < pivot);
        self.rows.insert(at, r);
        self.pivots = self
            .rows
            .iter()
            .enumerate()
            .map(|(k, row)| (row.entries()[0].0, k))
            .collect();
        true
    }

    /// Trusted constructor for rows already in reduced echelon form.
    pub(crate) fn from_reduced_rows(nrows: usize, ncols: usize, rows: Vec<SparseVec>) -> Self {
        let pivots = rows
            .iter()
            .enumerate()
            .map(|(k, row)| (row.entries()[0].0, k))
            .collect();
        let basis = Self {
            nrows,
            ncols,
            rows,
            pivots,
        };
        debug_assert!(basis.is_reduced());
        basis
    }

    /// Accepts `rows` only if they already form a reduced echelon basis.
    pub fn from_rows_checked(nrows: usize, ncols: usize, rows: Vec<SparseVec>) -> Option<Self> {
        if rows.iter().any(|r| r.is_zero() || r.dim() != nrows * ncols) {
            return None;
        }
        let pivots = rows
            .iter()
            .enumerate()
            .map(|(k, row)| (row.entries()[0].0, k))
            .collect();
        let basis = Self {
            nrows,
            ncols,
            rows,
            pivots,
        };
        basis.is_reduced().then_some(basis)
    }

    /// Checks the reduced echelon invariants.
    pub fn is_reduced(&self) -> bool {
        let mut last: Option<usize> = None;
        for row in &self.rows {
            let Some((p, lead)) = row.leading() else {
                return false;
            };
            if !lead.is_one() || last.is_some_and(|l| l >= p) {
                return false;
            }
            last = Some(p);
            if row.dim() != self.ambient_dim() {
                return false;
            }
        }
        self.rows.iter().enumerate().all(|(k, row)| {
            self.pivots
                .iter()
                .all(|(&c, &owner)| owner == k || row.lookup(c).is_none())
        })
    }

    /// Smallest span containing both.
    pub fn join(&self, other: &SpanBasis) -> Result<SpanBasis> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                expected: self.shape(),
                found: other.shape(),
            });
        }
        let mut out = self.clone();
        for row in &other.rows {
            out.insert_vector(row.clone());
        }
        Ok(out)
    }
}

/// Reduced basis of the linear span of `ms`. An empty list spans the zero
/// space of `0 x 0` matrices.
pub fn span(ms: &[SparseExactMatrix]) -> Result<SpanBasis> {
    let Some(first) = ms.first() else {
        return Ok(SpanBasis::empty(0, 0));
    };
    let (nrows, ncols) = first.shape();
    let mut basis = SpanBasis::empty(nrows, ncols);
    for m in ms {
        basis.insert(m)?;
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ratio, rational};

    fn m(t: &[(usize, usize, i64)]) -> SparseExactMatrix {
        SparseExactMatrix::from_triplets(2, 2, t.iter().map(|&(r, c, v)| (r, c, rational(v))))
            .unwrap()
    }

    #[test]
    fn multiples_span_one_dimension() {
        let a = m(&[(0, 0, 1), (1, 0, 3)]);
        let b = a.scale(&rational(2));
        let s = span(&[a.clone(), b]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&a).unwrap());
        assert!(s.is_reduced());
    }

    #[test]
    fn empty_span() {
        assert_eq!(span(&[]).unwrap().dim(), 0);
    }

    #[test]
    fn reduced_form_is_canonical() {
        let a = m(&[(0, 0, 2), (0, 1, 4)]);
        let b = m(&[(0, 1, 1), (1, 1, 1)]);
        let c = a.try_add(&b).unwrap();
        let s1 = span(&[a.clone(), b.clone()]).unwrap();
        let s2 = span(&[c, b.scale(&ratio(-1, 3))]).unwrap();
        assert_eq!(s1, s2);
        assert!(s1.is_reduced());
    }

    #[test]
    fn coordinates_recover_combination() {
        let a = m(&[(0, 0, 1), (1, 1, 1)]);
        let b = m(&[(0, 1, 1)]);
        let s = span(&[a.clone(), b.clone()]).unwrap();
        let target = a
            .scale(&rational(3))
            .try_sub(&b.scale(&ratio(1, 2)))
            .unwrap();
        let coords = s.coordinates(&target).unwrap().unwrap();
        let rebuilt = s
            .matrices()
            .iter()
            .zip(&coords)
            .map(|(mat, c)| mat.scale(c))
            .reduce(|x, y| x.try_add(&y).unwrap())
            .unwrap();
        assert_eq!(rebuilt, target);
        assert_eq!(s.coordinates(&m(&[(1, 0, 1)])).unwrap(), None);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let s = span(&[m(&[(0, 0, 1)])]).unwrap();
        assert!(s.contains(&SparseExactMatrix::zeros(3, 3)).is_err());
    }
}
