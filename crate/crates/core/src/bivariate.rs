//! Compositions counted jointly by total and number of parts.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::genfun::length_slice_series;
use crate::partset::PartSet;

/// `c_A(n, m)` for `0 <= m <= n <= N`, stored as a triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateTable {
    rows: Vec<Vec<BigInt>>,
}

impl BivariateTable {
    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `c_A(n, m)`; zero whenever `m > n`.
    pub fn get(&self, n: usize, m: usize) -> BigInt {
        self.rows[n].get(m).cloned().unwrap_or_default()
    }

    /// Entries `m = 0..=n` of row `n`.
    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    /// `sum_m c_A(n, m) = c_A(n)`.
    pub fn marginal(&self, n: usize) -> BigInt {
        self.rows[n].iter().sum()
    }
}

/// Fill the table with `c(n, m) = sum_{p in A, p <= n} c(n - p, m - 1)` from
/// `c(0, 0) = 1`.
pub fn bivariate_table(set: &PartSet, max_n: usize) -> BivariateTable {
    let parts = set.parts_up_to(max_n as u64);
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
    rows.push(vec![BigInt::from(1)]);
    for n in 1..=max_n {
        let mut row = vec![BigInt::zero(); n + 1];
        for &p in parts.iter().take_while(|&&p| p as usize <= n) {
            let prev = &rows[n - p as usize];
            for (m, v) in prev.iter().enumerate() {
                if !v.is_zero() {
                    row[m + 1] += v;
                }
            }
        }
        rows.push(row);
    }
    BivariateTable { rows }
}

/// Compare row `n` of the dynamic-programming table with the coefficients
/// `[x^n] S_A(x)^m` for every `m <= n`.
pub fn row_check_against_slices(set: &PartSet, n: usize) -> bool {
    let table = bivariate_table(set, n);
    (0..=n).all(|m| *length_slice_series(set, m as u64, n).coeff(n) == table.get(n, m))
}
