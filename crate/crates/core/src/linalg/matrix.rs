use num_traits::{One, Zero};

use super::{rational, small_integer, Rational, SparseVec};
use crate::error::{Error, Result};

/// Sparse matrix with exact rational entries.
///
/// Rows are stored as sorted `(column, value)` lists with no explicit zeros,
/// so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseExactMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, Rational)>>,
}

impl SparseExactMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(n, 0..n)
    }

    /// Diagonal 0/1 matrix with ones at the given positions.
    pub fn diagonal(n: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        Self::indicator(n, n, ones.into_iter().map(|k| (k, k)))
            .expect("diagonal positions must be < n")
    }

    /// 0/1 matrix with a one at every listed position (repeats are ignored).
    pub fn indicator(
        nrows: usize,
        ncols: usize,
        positions: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); nrows];
        for (r, c) in positions {
            check_index(r, nrows)?;
            check_index(c, ncols)?;
            rows[r].push((c, Rational::one()));
        }
        for row in &mut rows {
            row.sort_by_key(|(c, _)| *c);
            row.dedup_by_key(|(c, _)| *c);
        }
        Ok(Self { nrows, ncols, rows })
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); nrows];
        for (r, c, v) in triplets {
            check_index(r, nrows)?;
            check_index(c, ncols)?;
            rows[r].push((c, v));
        }
        let rows = rows
            .into_iter()
            .map(|row| SparseVec::from_entries(ncols, row).into_entries())
            .collect();
        Ok(Self { nrows, ncols, rows })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.rows[r]
            .binary_search_by_key(&c, |(k, _)| *k)
            .map(|k| self.rows[r][k].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, c.to_owned(), v)))
    }

    /// Positions of the nonzero entries in row-major order.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.iter().map(|(r, c, _)| (r, c))
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.ncols];
        for (r, c, v) in self.iter() {
            rows[c].push((r, v.clone()));
        }
        Self {
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zeros(self.nrows, self.ncols);
        }
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|(c, v)| (*c, v * factor)).collect())
            .collect();
        Self {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, &Rational::one())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, &rational(-1))
    }

    fn combine(&self, other: &Self, coef: &Rational) -> Result<Self> {
        self.require_shape(other.shape())?;
        let neg = -coef;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let a = SparseVec::from_sorted(self.ncols, a.clone());
                let b = SparseVec::from_sorted(self.ncols, b.clone());
                a.sub_scaled(&neg, &b).into_entries()
            })
            .collect();
        Ok(Self {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        })
    }

    /// Sum of a nonempty list of same-shape matrices.
    pub fn sum_of<'a>(ms: impl IntoIterator<Item = &'a Self>) -> Result<Option<Self>> {
        let mut acc: Option<Self> = None;
        for m in ms {
            acc = Some(match acc {
                None => m.clone(),
                Some(a) => a.try_add(m)?,
            });
        }
        Ok(acc)
    }

    /// Matrix product. Integer inputs take a checked `i128` path.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(Error::ShapeMismatch {
                expected: (self.ncols, other.ncols),
                found: other.shape(),
            });
        }
        if let (Some(a), Some(b)) = (self.to_int_rows(), other.to_int_rows()) {
            if let Some(prod) = int_product(&a, &b, other.ncols) {
                let rows = prod
                    .into_iter()
                    .map(|row| {
                        row.into_iter()
                            .map(|(c, v)| (c, int128_rational(v)))
                            .collect()
                    })
                    .collect();
                return Ok(Self {
                    nrows: self.nrows,
                    ncols: other.ncols,
                    rows,
                });
            }
        }
        Ok(self.rational_product(other))
    }

    fn rational_product(&self, other: &Self) -> Self {
        let mut acc: Vec<Rational> = vec![Rational::zero(); other.ncols];
        let mut touched: Vec<usize> = Vec::new();
        let mut seen = vec![false; other.ncols];
        let rows = self
            .rows
            .iter()
            .map(|row| {
                for (k, a) in row {
                    for (c, b) in &other.rows[*k] {
                        if !seen[*c] {
                            seen[*c] = true;
                            touched.push(*c);
                        }
                        acc[*c] += a * b;
                    }
                }
                touched.sort_unstable();
                let out = touched
                    .drain(..)
                    .filter_map(|c| {
                        seen[c] = false;
                        let v = std::mem::replace(&mut acc[c], Rational::zero());
                        (!v.is_zero()).then_some((c, v))
                    })
                    .collect();
                out
            })
            .collect();
        Self {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        }
    }

    pub(crate) fn to_int_rows(&self) -> Option<Vec<Vec<(usize, i64)>>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(c, v)| small_integer(v).map(|v| (*c, v)))
                    .collect()
            })
            .collect()
    }

    /// True iff the supports of the two matrices share no position.
    pub fn support_disjoint(&self, other: &Self) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| {
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].0.cmp(&b[j].0) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => return false,
                }
            }
            true
        })
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|(_, v)| v).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<Rational> {
        let mut sums = vec![Rational::zero(); self.ncols];
        for (_, c, v) in self.iter() {
            sums[c] += v;
        }
        sums
    }

    /// Row-major flattening: entry `(r, c)` lands at `r * ncols + c`.
    pub fn vectorize(&self) -> SparseVec {
        let entries = self
            .iter()
            .map(|(r, c, v)| (r * self.ncols + c, v.clone()))
            .collect();
        SparseVec::from_sorted(self.nrows * self.ncols, entries)
    }

    /// Inverse of [`vectorize`](Self::vectorize).
    pub fn from_vector(nrows: usize, ncols: usize, v: &SparseVec) -> Result<Self> {
        if v.dim() != nrows * ncols {
            return Err(Error::ShapeMismatch {
                expected: (nrows * ncols, 1),
                found: (v.dim(), 1),
            });
        }
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); nrows];
        for (k, val) in v.entries() {
            rows[k / ncols].push((k % ncols, val.clone()));
        }
        Ok(Self { nrows, ncols, rows })
    }

    pub(crate) fn require_shape(&self, shape: (usize, usize)) -> Result<()> {
        if self.shape() == shape {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                expected: shape,
                found: self.shape(),
            })
        }
    }
}

fn check_index(index: usize, bound: usize) -> Result<()> {
    if index < bound {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            index,
            max: bound.saturating_sub(1),
        })
    }
}

fn int128_rational(v: i128) -> Rational {
    Rational::from_integer(v.into())
}

/// Sparse integer product; `None` on overflow.
fn int_product(
    a: &[Vec<(usize, i64)>],
    b: &[Vec<(usize, i64)>],
    ncols: usize,
) -> Option<Vec<Vec<(usize, i128)>>> {
    let mut acc = vec![0i128; ncols];
    let mut seen = vec![false; ncols];
    let mut touched: Vec<usize> = Vec::new();
    let mut out = Vec::with_capacity(a.len());
    for row in a {
        for &(k, x) in row {
            for &(c, y) in &b[k] {
                if !seen[c] {
                    seen[c] = true;
                    touched.push(c);
                }
                let term = (x as i128).checked_mul(y as i128)?;
                acc[c] = acc[c].checked_add(term)?;
            }
        }
        touched.sort_unstable();
        let mut prod_row = Vec::with_capacity(touched.len());
        for c in touched.drain(..) {
            seen[c] = false;
            let v = std::mem::take(&mut acc[c]);
            if v != 0 {
                prod_row.push((c, v));
            }
        }
        out.push(prod_row);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    fn m(nrows: usize, ncols: usize, t: &[(usize, usize, i64)]) -> SparseExactMatrix {
        SparseExactMatrix::from_triplets(
            nrows,
            ncols,
            t.iter().map(|&(r, c, v)| (r, c, rational(v))),
        )
        .unwrap()
    }

    #[test]
    fn vectorize_identity() {
        let v = SparseExactMatrix::identity(2).vectorize();
        assert_eq!(v.entries(), &[(0, rational(1)), (3, rational(1))]);
        assert!(SparseExactMatrix::zeros(3, 3).vectorize().is_zero());
    }

    #[test]
    fn vectorize_transpose_is_index_permutation() {
        let a = m(2, 3, &[(0, 1, 5), (1, 2, -2), (1, 0, 7)]);
        let v = a.vectorize();
        let vt = a.transpose().vectorize();
        for (k, val) in v.entries() {
            let (r, c) = (k / 3, k % 3);
            assert_eq!(vt.get(c * 2 + r), *val);
        }
        assert_eq!(v.nnz(), vt.nnz());
    }

    #[test]
    fn product_matches_hand_computation() {
        let a = m(2, 2, &[(0, 0, 1), (0, 1, 2), (1, 1, 3)]);
        let b = m(2, 2, &[(0, 0, 4), (1, 0, 5), (1, 1, 6)]);
        assert_eq!(
            a.try_mul(&b).unwrap(),
            m(2, 2, &[(0, 0, 14), (0, 1, 12), (1, 0, 15), (1, 1, 18)])
        );
    }

    #[test]
    fn rational_product_path() {
        let a = SparseExactMatrix::from_triplets(1, 1, [(0, 0, ratio(1, 2))]).unwrap();
        let p = a.try_mul(&a).unwrap();
        assert_eq!(p.get(0, 0), ratio(1, 4));
    }

    #[test]
    fn product_cancellation_leaves_no_stored_zero() {
        let a = m(1, 2, &[(0, 0, 1), (0, 1, -1)]);
        let b = m(2, 1, &[(0, 0, 1), (1, 0, 1)]);
        let p = a.try_mul(&b).unwrap();
        assert_eq!(p.nnz(), 0);
    }

    #[test]
    fn shape_errors() {
        let a = m(2, 3, &[]);
        assert!(matches!(a.try_mul(&a), Err(Error::ShapeMismatch { .. })));
        assert!(a.try_add(&m(3, 2, &[])).is_err());
        assert!(SparseExactMatrix::indicator(2, 2, [(2, 0)]).is_err());
    }

    #[test]
    fn vector_roundtrip() {
        let a = m(3, 2, &[(2, 1, 9), (0, 0, -1)]);
        assert_eq!(
            SparseExactMatrix::from_vector(3, 2, &a.vectorize()).unwrap(),
            a
        );
    }
}
