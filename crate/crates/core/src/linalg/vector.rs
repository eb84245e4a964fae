use num_traits::Zero;

use super::Rational;

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec {
    dim: usize,
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: Vec::new(),
        }
    }

    /// Builds a vector from unordered entries; duplicates are summed and zeros dropped.
    ///
    /// Panics if an index is `>= dim`.
    pub fn from_entries(dim: usize, mut entries: Vec<(usize, Rational)>) -> Self {
        entries.sort_by_key(|(c, _)| *c);
        let mut out: Vec<(usize, Rational)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!(c < dim, "index {c} out of range for dimension {dim}");
            match out.last_mut() {
                Some((last, acc)) if *last == c => *acc += v,
                _ => out.push((c, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        Self { dim, entries: out }
    }

    /// Trusted constructor: `entries` must already be sorted, unique and nonzero.
    pub(crate) fn from_sorted(dim: usize, entries: Vec<(usize, Rational)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(c, v)| *c < dim && !v.is_zero()));
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Rational)> {
        self.entries
    }

    pub fn get(&self, index: usize) -> Rational {
        self.lookup(index).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn lookup(&self, index: usize) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&index, |(c, _)| *c)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(c, v)| (*c, v))
    }

    pub fn scale(&mut self, factor: &Rational) {
        if factor.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, v) in &mut self.entries {
            *v *= factor;
        }
    }

    /// `self - coef * other`, merged in one pass.
    pub fn sub_scaled(&self, coef: &Rational, other: &SparseVec) -> SparseVec {
        debug_assert_eq!(self.dim, other.dim);
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                out.push((b[j].0, -(coef * &b[j].1)));
                j += 1;
            } else {
                let v = &a[i].1 - coef * &b[j].1;
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec {
            dim: self.dim,
            entries: out,
        }
    }
}
