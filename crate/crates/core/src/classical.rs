//! Classical (q = 1) Stirling numbers of the second kind and Bell numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Rows `0..=n_max` of the Stirling triangle `S(n, k)`, via
/// `S(n, k) = S(n-1, k-1) + k S(n-1, k)`.
pub fn stirling2_table(n_max: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
    rows.push(vec![BigInt::one()]);
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let row = (0..=n)
            .map(|k| {
                let left = if k >= 1 {
                    prev[k - 1].clone()
                } else {
                    BigInt::zero()
                };
                let stay = prev.get(k).map_or_else(BigInt::zero, |s| s * k);
                left + stay
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// `S(n, k)`, zero outside `0 <= k <= n`.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    stirling2_table(n)[n][k].clone()
}

pub fn bell(n: usize) -> BigInt {
    stirling2_table(n)[n].iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(stirling2(0, 0), BigInt::one());
        assert_eq!(stirling2(5, 3), BigInt::from(25));
        assert_eq!(stirling2(8, 2), BigInt::from(127));
        assert_eq!(stirling2(3, 0), BigInt::zero());
        assert_eq!(stirling2(3, 4), BigInt::zero());
        let bells: Vec<BigInt> = (0..=10).map(bell).collect();
        let expected = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
        assert_eq!(bells, expected.map(BigInt::from).to_vec());
    }
}
