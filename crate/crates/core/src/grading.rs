//! Positive gradings making a binomial relation list homogeneous: the exact
//! rational nullspace of the homogeneity system and its integral points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::field::{rational_to_string, Field, Rational};

fn is_zero(q: &Rational) -> bool {
    Zero::is_zero(q)
}
use crate::presentation::Binomial;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GradingError {
    #[error("variable '{0}' does not occur in the system")]
    UnknownVariable(char),
    #[error("expected {expected} free variables, got {got}")]
    WrongFreeCount { expected: usize, got: usize },
    #[error("the chosen free variables {0:?} do not parametrize the solution space")]
    DependentFreeVariables(Vec<char>),
    #[error("expected {expected} constants, got {got}")]
    WrongConstantCount { expected: usize, got: usize },
    #[error("variable '{var}' gets {value}, not a positive integer")]
    NotPositiveIntegral { var: char, value: String },
    #[error("the solution space has dimension {0}; a minimal point needs dimension one")]
    NotARay(usize),
    #[error("no strictly positive grading on the solution ray")]
    NoPositiveGrading,
}

/// One row per binomial: exponents of the left term minus those of the right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingSystem {
    pub variables: Vec<char>,
    pub rows: Vec<Vec<i64>>,
}

/// Monomial relations give no equation; every row is kept, duplicates included.
pub fn homogeneity_system(rels: &[Binomial], variables: &[char]) -> Result<GradingSystem, GradingError> {
    let idx = |v: char| variables.iter().position(|&x| x == v).ok_or(GradingError::UnknownVariable(v));
    let mut rows = Vec::new();
    for r in rels {
        let Some(rhs) = &r.rhs else { continue };
        let mut row = vec![0i64; variables.len()];
        for (v, e) in r.lhs.variables() {
            row[idx(v)?] += i64::from(e);
        }
        for (v, e) in rhs.variables() {
            row[idx(v)?] -= i64::from(e);
        }
        rows.push(row);
    }
    Ok(GradingSystem { variables: variables.to_vec(), rows })
}

/// Solution space of a homogeneity system, parametrized by the values of the
/// free variables: `x_i = sum_j coefficients[i][j] * c_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradingSolution {
    pub variables: Vec<char>,
    pub free: Vec<char>,
    pub coefficients: Vec<Vec<Rational>>,
}

impl GradingSolution {
    pub fn nullity(&self) -> usize {
        self.free.len()
    }

    /// Basis vector for `c_j = 1`, all other constants zero.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        (0..self.nullity()).map(|j| self.coefficients.iter().map(|row| row[j].clone()).collect()).collect()
    }

    /// The value of every variable for rational constants.
    pub fn evaluate(&self, constants: &[Rational]) -> Result<Vec<Rational>, GradingError> {
        if constants.len() != self.nullity() {
            return Err(GradingError::WrongConstantCount { expected: self.nullity(), got: constants.len() });
        }
        Ok(self
            .coefficients
            .iter()
            .map(|row| row.iter().zip(constants).fold(<Rational as Zero>::zero(), |acc, (a, c)| acc + a * c))
            .collect())
    }

    /// A concrete positive integral grading, checked against `sys`.
    pub fn specialize(&self, sys: &GradingSystem, constants: &[i64]) -> Result<Vec<u64>, GradingError> {
        let c: Vec<Rational> = constants.iter().map(|&x| Rational::from_i64(x)).collect();
        let values = self.evaluate(&c)?;
        let mut out = Vec::with_capacity(values.len());
        for (v, x) in self.variables.iter().zip(&values) {
            match x.to_integer().to_u64().filter(|&n| x.is_integer() && n > 0) {
                Some(n) => out.push(n),
                None => return Err(GradingError::NotPositiveIntegral { var: *v, value: rational_to_string(x) }),
            }
        }
        debug_assert!(satisfies(sys, &out));
        Ok(out)
    }

    /// Human-readable parametrization such as `g = -7/2 c1 + 9/2 c2`.
    pub fn describe(&self) -> Vec<String> {
        self.variables
            .iter()
            .zip(&self.coefficients)
            .map(|(v, row)| {
                let terms: Vec<String> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| !is_zero(a))
                    .map(|(j, a)| format!("{} c{}", rational_to_string(a), j + 1))
                    .collect();
                let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                format!("{v} = {}", rhs.replace("+ -", "- "))
            })
            .collect()
    }
}

/// True when `weights` makes every row homogeneous.
pub fn satisfies(sys: &GradingSystem, weights: &[u64]) -> bool {
    sys.rows.iter().all(|row| row.iter().zip(weights).map(|(a, &w)| a * w as i64).sum::<i64>() == 0)
}

/// Reduced row echelon form pivoting on the columns in `order`; returns the
/// rows and the pivot column of each.
fn rref(rows: &[Vec<i64>], ncols: usize, order: &[usize]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| Rational::from_i64(x)).collect()).collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for &col in order {
        let Some(p) = (top..m.len()).find(|&r| !is_zero(&m[r][col])) else { continue };
        m.swap(top, p);
        let inv = m[top][col].inv();
        for x in m[top].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != top && !is_zero(&m[r][col]) {
                let f = m[r][col].clone();
                for c in 0..ncols {
                    let sub = &f * &m[top][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    m.truncate(top);
    (m, pivots)
}

/// Exact solution space. With `free = None` the pivots go left to right and
/// the free variables are the trailing non-pivot columns; otherwise the given
/// variables become the constants `c_1, c_2, ...` in the order listed.
pub fn solve_gradings(sys: &GradingSystem, free: Option<&[char]>) -> Result<GradingSolution, GradingError> {
    let n = sys.variables.len();
    let all: Vec<usize> = (0..n).collect();
    let (order, free_cols) = match free {
        None => (all.clone(), None),
        Some(vars) => {
            let cols = vars
                .iter()
                .map(|&v| sys.variables.iter().position(|&x| x == v).ok_or(GradingError::UnknownVariable(v)))
                .collect::<Result<Vec<_>, _>>()?;
            let order: Vec<usize> = all.iter().copied().filter(|c| !cols.contains(c)).collect();
            (order, Some(cols))
        }
    };
    let rank = rref(&sys.rows, n, &all).1.len();
    let nullity = n - rank;
    let (m, pivots) = rref(&sys.rows, n, &order);
    let free_cols = match free_cols {
        None => all.iter().copied().filter(|c| !pivots.contains(c)).collect(),
        Some(cols) => {
            if cols.len() != nullity {
                return Err(GradingError::WrongFreeCount { expected: nullity, got: cols.len() });
            }
            if pivots.len() != rank {
                return Err(GradingError::DependentFreeVariables(free.unwrap_or_default().to_vec()));
            }
            cols
        }
    };
    let mut coefficients = vec![vec![<Rational as Zero>::zero(); nullity]; n];
    for (j, &fc) in free_cols.iter().enumerate() {
        coefficients[fc][j] = <Rational as One>::one();
    }
    for (row, &pc) in m.iter().zip(&pivots) {
        for (j, &fc) in free_cols.iter().enumerate() {
            coefficients[pc][j] = -row[fc].clone();
        }
    }
    Ok(GradingSolution {
        variables: sys.variables.clone(),
        free: free_cols.iter().map(|&c| sys.variables[c]).collect(),
        coefficients,
    })
}

/// Smallest positive integral point on a one-dimensional solution space,
/// with the value of the constant `c_1` producing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalGrading {
    pub weights: Vec<u64>,
    pub constant: u64,
}

pub fn minimal_integral(sol: &GradingSolution) -> Result<MinimalGrading, GradingError> {
    if sol.nullity() != 1 {
        return Err(GradingError::NotARay(sol.nullity()));
    }
    let v: Vec<&Rational> = sol.coefficients.iter().map(|r| &r[0]).collect();
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(GradingError::NoPositiveGrading);
    }
    let sign = if ints[0].is_negative() { -BigInt::one() } else { BigInt::one() };
    let weights: Vec<BigInt> = ints.iter().map(|x| x * &sign / &g).collect();
    if weights.iter().any(|x| !x.is_positive()) {
        return Err(GradingError::NoPositiveGrading);
    }
    let weights: Vec<u64> = weights.iter().map(|x| x.to_u64().expect("weight fits in u64")).collect();
    let fi = sol.variables.iter().position(|&x| x == sol.free[0]).expect("free variable listed");
    Ok(MinimalGrading { constant: weights[fi], weights })
}
