//! Closed-form counts used as expected values.

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `|X| = 2 C(2m+1, m)`.
pub fn vertex_count(m: usize) -> usize {
    2 * binomial(2 * m + 1, m)
}

/// Size of each of the four tuple index sets, `C(m+4, 4)`.
pub fn index_set_size(m: usize) -> usize {
    binomial(m + 4, 4)
}

/// `4 C(m+4, 4)`.
pub fn centralizer_dimension_formula(m: usize) -> usize {
    4 * index_set_size(m)
}

/// `⌊(m+2)^2 / 4⌋`.
pub fn center_dimension_formula(m: usize) -> usize {
    (m + 2) * (m + 2) / 4
}
