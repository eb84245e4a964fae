use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};

use super::{Rational, SpanBasis, SparseExactMatrix, SparseVec};
use crate::error::{Error, Result};

/// Center of the algebra spanned by `b`: elements commuting with every basis
/// element.
///
/// A few basis products are spot-checked for membership first; a failure
/// there is reported as [`Error::NotClosed`].
pub fn centralizer_within(b: &SpanBasis) -> Result<SpanBasis> {
    let ms = b.matrices();
    spot_check_closed(b, &ms)?;
    commutant_in_span(b, &ms, &ms)
}

/// Center of the algebra spanned by `b`, given matrices that generate it.
///
/// An element of the algebra is central iff it commutes with a generating
/// set, so only `generators.len()` commutators per basis element are needed.
pub fn center_of_generated(b: &SpanBasis, generators: &[SparseExactMatrix]) -> Result<SpanBasis> {
    let ms = b.matrices();
    spot_check_closed(b, &ms)?;
    for (k, g) in generators.iter().enumerate() {
        if !b.contains(g)? {
            return Err(Error::NotClosed { left: k, right: k });
        }
    }
    commutant_in_span(b, &ms, generators)
}

fn spot_check_closed(b: &SpanBasis, ms: &[SparseExactMatrix]) -> Result<()> {
    let dim = ms.len();
    let mut picks: Vec<usize> = (0..dim.min(3)).collect();
    picks.extend(dim.saturating_sub(2)..dim);
    picks.sort_unstable();
    picks.dedup();
    for &l in &picks {
        for &r in &picks {
            if !b.contains(&ms[l].try_mul(&ms[r])?)? {
                return Err(Error::NotClosed { left: l, right: r });
            }
        }
    }
    Ok(())
}

/// Solves `x * g = g * x` for `x = Σ c_k B_k` and all `g` in `with`.
fn commutant_in_span(
    b: &SpanBasis,
    basis: &[SparseExactMatrix],
    with: &[SparseExactMatrix],
) -> Result<SpanBasis> {
    let dim = basis.len();
    let (nrows, ncols) = b.shape();
    let mut equations = SpanBasis::empty_vectors(dim);
    let mut seen: HashSet<Vec<(usize, Rational)>> = HashSet::new();

    for g in with {
        if equations.dim() == dim {
            break;
        }
        // Position -> (basis index, commutator entry), filled in basis order.
        let mut by_position: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for (k, bk) in basis.iter().enumerate() {
            let commutator = bk.try_mul(g)?.try_sub(&g.try_mul(bk)?)?;
            for (pos, val) in commutator.vectorize().into_entries() {
                by_position.entry(pos).or_default().push((k, val));
            }
        }
        for (_, row) in by_position {
            let row = normalized(row);
            if seen.insert(row.clone()) {
                equations.insert_vector(SparseVec::from_sorted(dim, row));
            }
        }
    }

    // One solution per free column of the equation system.
    let pivots = equations.pivots();
    let mut solutions = SpanBasis::empty(nrows, ncols);
    for free in (0..dim).filter(|c| !pivots.contains_key(c)) {
        let mut coeffs: Vec<(usize, Rational)> = vec![(free, Rational::one())];
        for (&p, &row) in pivots {
            let v = equations.rows()[row].get(free);
            if !v.is_zero() {
                coeffs.push((p, -v));
            }
        }
        let mut element = SparseExactMatrix::zeros(nrows, ncols);
        for (k, c) in coeffs {
            element = element.try_add(&basis[k].scale(&c))?;
        }
        solutions.insert(&element)?;
    }
    Ok(solutions)
}

fn normalized(mut row: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
    if let Some(lead) = row.first().map(|(_, v)| v.recip()) {
        for (_, v) in &mut row {
            *v *= &lead;
        }
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{algebra_closure, span};

    fn unit(n: usize, r: usize, c: usize) -> SparseExactMatrix {
        SparseExactMatrix::indicator(n, n, [(r, c)]).unwrap()
    }

    #[test]
    fn full_matrix_algebra_has_scalar_center() {
        let n = 3;
        let all: Vec<_> = (0..n)
            .flat_map(|r| (0..n).map(move |c| unit(n, r, c)))
            .collect();
        let b = span(&all).unwrap();
        let z = centralizer_within(&b).unwrap();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&SparseExactMatrix::identity(n)).unwrap());
    }

    #[test]
    fn diagonal_algebra_is_its_own_center() {
        let n = 4;
        let diag: Vec<_> = (0..n)
            .map(|k| SparseExactMatrix::diagonal(n, [k]))
            .collect();
        let b = span(&diag).unwrap();
        assert_eq!(centralizer_within(&b).unwrap(), b);
        assert_eq!(center_of_generated(&b, &diag).unwrap(), b);
    }

    #[test]
    fn block_algebra_center_counts_blocks() {
        // M_2 ⊕ C inside 3x3 matrices: center has dimension 2.
        let gens = vec![
            unit(3, 0, 1),
            unit(3, 1, 0),
            SparseExactMatrix::diagonal(3, [2]),
        ];
        let alg = algebra_closure(&gens, 9).unwrap().basis;
        assert_eq!(alg.dim(), 5);
        assert_eq!(centralizer_within(&alg).unwrap().dim(), 2);
        assert_eq!(center_of_generated(&alg, &gens).unwrap().dim(), 2);
    }

    #[test]
    fn non_closed_span_is_rejected() {
        let b = span(&[unit(2, 0, 1), unit(2, 1, 0)]).unwrap();
        assert!(matches!(
            centralizer_within(&b),
            Err(Error::NotClosed { .. })
        ));
    }
}
