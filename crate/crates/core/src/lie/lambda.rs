//! The table of numbers `λ(m, n)`, `m, n ≥ 1`, with
//! `λ(2m, 2n) = 0`, `λ(m, n) = -(-1)^(mn) λ(n, m)` and
//! `λ(m+1, n) = λ(m, n) + (-1)^(m+1) λ(m, n+1)`, starting from
//! `λ(1,1) = 2`, `λ(2,1) = 1`. Filled one antidiagonal `m + n = k` at a time.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::field::Rational;

#[derive(Clone, Debug, Serialize)]
pub struct LambdaTable {
    max: usize,
    #[serde(skip)]
    values: Vec<Vec<Rational>>,
}

impl LambdaTable {
    /// All entries with `m + n <= max`; `max >= 2`. Where the recursion
    /// leaves `λ(1, k-1)` free, it is set to zero.
    pub fn new(max: usize) -> Self {
        let max = max.max(2);
        let mut values = vec![vec![Rational::zero(); max + 1]; max + 1];
        values[1][1] = Rational::from_integer(2.into());
        for k in 3..=max {
            if k % 2 == 0 {
                values[1][k - 1] = values[k - 2][1].clone();
                for m in 2..k {
                    let n = k - m;
                    values[m][n] = if m % 2 == 1 { values[m - 1][n].clone() } else { Rational::zero() };
                }
            } else {
                let r = (k - 1) / 2;
                values[1][k - 1] = if r % 2 == 1 {
                    let mut s = Rational::zero();
                    for j in 1..=r {
                        let t = &values[k - 2 * j][2 * j - 1];
                        s = if j % 2 == 1 { s + t } else { s - t };
                    }
                    -s / Rational::from_integer(2.into())
                } else {
                    Rational::zero()
                };
                for m in 2..k {
                    let n = k - m;
                    let next = &values[m - 1][n + 1];
                    values[m][n] = if m % 2 == 0 { &values[m - 1][n] + next } else { &values[m - 1][n] - next };
                }
            }
        }
        LambdaTable { max, values }
    }

    pub fn max(&self) -> usize {
        self.max
    }

    /// `λ(m, n)` for `m, n >= 1`, `m + n <= max`.
    pub fn get(&self, m: usize, n: usize) -> Option<&Rational> {
        (m >= 1 && n >= 1 && m + n <= self.max).then(|| &self.values[m][n])
    }

    /// Rows `m = 1..max-1`, each listing `λ(m, n)` for `n = 1..max-m`.
    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (1..self.max).map(|m| (1..=self.max - m).map(|n| self.values[m][n].clone()).collect()).collect()
    }

    /// First `(m, n)` where one of the three conditions fails, if any.
    pub fn violation(&self) -> Option<(usize, usize)> {
        let v = &self.values;
        for k in 2..=self.max {
            for m in 1..k {
                let n = k - m;
                if m % 2 == 0 && n % 2 == 0 && !v[m][n].is_zero() {
                    return Some((m, n));
                }
                let flip = if (m * n) % 2 == 0 { -v[n][m].clone() } else { v[n][m].clone() };
                if v[m][n] != flip {
                    return Some((m, n));
                }
                if k < self.max {
                    let sign = if m % 2 == 0 { -Rational::one() } else { Rational::one() };
                    if v[m + 1][n] != &v[m][n] + sign * &v[m][n + 1] {
                        return Some((m, n));
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn first_values() {
        let t = LambdaTable::new(6);
        assert_eq!(t.get(1, 1), Some(&q(2)));
        assert_eq!(t.get(2, 1), Some(&q(1)));
        assert_eq!(t.get(1, 2), Some(&q(-1)));
        assert_eq!(t.get(1, 3), Some(&q(1)));
        assert_eq!(t.get(3, 1), Some(&q(1)));
        assert_eq!(t.get(0, 1), None);
        assert_eq!(t.get(3, 4), None);
    }

    #[test]
    fn conditions_hold_to_twenty() {
        for max in 2..=20 {
            assert_eq!(LambdaTable::new(max).violation(), None, "max {max}");
        }
    }
}
