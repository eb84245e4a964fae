//! Exact sparse linear algebra over the rationals.
//!
//! Everything here works with [`Rational`] entries and never rounds. The
//! heavy paths (matrix products of integer matrices, algebra closure) switch
//! to checked machine integers internally and report [`Error::Overflow`]
//! rather than wrapping.
//!
//! [`Error::Overflow`]: crate::Error::Overflow

mod center;
mod closure;
mod matrix;
mod mtx;
mod span;
mod vector;

pub use center::{center_of_generated, centralizer_within};
pub use closure::{algebra_closure, ClosureResult};
pub use matrix::SparseExactMatrix;
pub use mtx::{read_mtx, read_mtx_file, write_mtx, write_mtx_file};
pub use span::{span, SpanBasis};
pub use vector::SparseVec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational scalar used for every matrix entry.
pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `p` for integers and `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Returns the value as an `i64` when it is an integer that fits.
pub(crate) fn small_integer(q: &Rational) -> Option<i64> {
    if q.denom().is_one() {
        i64::try_from(q.numer()).ok()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_roundtrip() {
        for q in [rational(0), rational(-7), ratio(3, 4), ratio(-10, 6)] {
            assert_eq!(parse_rational(&format_rational(&q)), Some(q));
        }
        assert_eq!(format_rational(&ratio(-10, 6)), "-5/3");
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
