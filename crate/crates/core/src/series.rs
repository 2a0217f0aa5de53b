//! Exact truncated power series in one and two variables, and the series
//! transforms relating Poincaré–Betti series, Hilbert series and the graded
//! dimensions of Lie superalgebras.
//!
//! Coefficients are arbitrary-precision integers. Every binary operation
//! truncates to the smaller of the two orders, so a result never claims more
//! precision than its inputs carry.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("cannot invert a series with constant term {0}")]
    NotUnit(BigInt),
    #[error("not an enveloping-algebra series: dimension {value} in degree {degree}")]
    NegativeDimension { degree: usize, value: BigInt },
    #[error("pole term does not cancel: coefficient {0} left at negative degree")]
    PoleDoesNotCancel(String),
    #[error("denominator has constant term {0}, expected ±1")]
    BadDenominator(BigInt),
}

/// Operations shared by univariate and bivariate truncated series.
pub trait PowerSeries: Clone + PartialEq + fmt::Debug {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn recip(&self) -> Result<Self, SeriesError>;
    /// The constant series 1 at the same truncation.
    fn one_like(&self) -> Self;
}

// ---------------------------------------------------------------------------
// Univariate
// ---------------------------------------------------------------------------

/// `sum_{k <= N} c_k t^k`, known exactly up to the truncation order `N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniSeries {
    coeffs: Vec<BigInt>,
}

impl UniSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least its constant term");
        UniSeries { coeffs }
    }

    pub fn from_i64(coeffs: Vec<i64>) -> Self {
        Self::new(coeffs.into_iter().map(BigInt::from).collect())
    }

    /// Polynomial `p` viewed as a series truncated at `order`.
    pub fn from_poly(p: &[i64], order: usize) -> Self {
        let mut c = vec![BigInt::zero(); order + 1];
        for (k, v) in p.iter().enumerate().take(order + 1) {
            c[k] = BigInt::from(*v);
        }
        Self::new(c)
    }

    pub fn one(order: usize) -> Self {
        Self::from_poly(&[1], order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![BigInt::zero(); order + 1])
    }

    /// `c * t^k` truncated at `order`.
    pub fn monomial(c: i64, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = BigInt::from(c);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients as `i64`; panics if one does not fit.
    pub fn coeffs_i64(&self) -> Vec<i64> {
        self.coeffs.iter().map(|c| c.to_i64().expect("coefficient fits in i64")).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self::new(self.coeffs[..=order].to_vec())
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = BigInt::from(c);
        Self::new(self.coeffs.iter().map(|x| x * &c).collect())
    }

    /// Multiply by `t^k`; the order is kept.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut c = vec![BigInt::zero(); n + 1];
        if k <= n {
            c[k..=n].clone_from_slice(&self.coeffs[..=n - k]);
        }
        Self::new(c)
    }

    /// Divide by `t`, requiring the constant term to vanish. The order drops by one.
    pub fn divide_by_t(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::PoleDoesNotCancel(self.coeffs[0].to_string()));
        }
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        Ok(Self::new(self.coeffs[1..].to_vec()))
    }

    /// `f(-t)`
    pub fn alternate(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// `f(xy)` as a bivariate series truncated at `(nx, ny)`.
    pub fn substitute_xy(&self, nx: usize, ny: usize) -> BiSeries {
        let mut out = BiSeries::zero(nx, ny);
        for k in 0..=self.order().min(nx).min(ny) {
            out.coeffs[k][k] = self.coeffs[k].clone();
        }
        out
    }
}

impl PowerSeries for UniSeries {
    fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect())
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut c = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    fn recip(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.abs() != BigInt::one() {
            return Err(SeriesError::NotUnit(c0.clone()));
        }
        let n = self.order();
        let mut inv = vec![BigInt::zero(); n + 1];
        inv[0] = c0.clone();
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &inv[k - j];
            }
            // c0 = ±1 is its own inverse
            inv[k] = -(acc * c0);
        }
        Ok(Self::new(inv))
    }

    fn one_like(&self) -> Self {
        Self::one(self.order())
    }
}

impl fmt::Display for UniSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(BigInt::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

// ---------------------------------------------------------------------------
// Bivariate
// ---------------------------------------------------------------------------

/// `sum c_ij x^i y^j` with a rectangular truncation `i <= nx`, `j <= ny`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiSeries {
    coeffs: Vec<Vec<BigInt>>,
}

impl BiSeries {
    pub fn zero(nx: usize, ny: usize) -> Self {
        BiSeries { coeffs: vec![vec![BigInt::zero(); ny + 1]; nx + 1] }
    }

    pub fn one(nx: usize, ny: usize) -> Self {
        Self::monomial(1, 0, 0, nx, ny)
    }

    /// `c x^i y^j`
    pub fn monomial(c: i64, i: usize, j: usize, nx: usize, ny: usize) -> Self {
        let mut s = Self::zero(nx, ny);
        if i <= nx && j <= ny {
            s.coeffs[i][j] = BigInt::from(c);
        }
        s
    }

    /// Sum of terms `(c, i, j)`.
    pub fn from_terms(terms: &[(i64, usize, usize)], nx: usize, ny: usize) -> Self {
        let mut s = Self::zero(nx, ny);
        for &(c, i, j) in terms {
            if i <= nx && j <= ny {
                s.coeffs[i][j] += BigInt::from(c);
            }
        }
        s
    }

    pub fn nx(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn ny(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    pub fn coeff(&self, i: usize, j: usize) -> &BigInt {
        &self.coeffs[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.coeffs
    }

    pub fn truncate(&self, nx: usize, ny: usize) -> Self {
        assert!(nx <= self.nx() && ny <= self.ny(), "cannot extend a truncated series");
        BiSeries { coeffs: self.coeffs[..=nx].iter().map(|r| r[..=ny].to_vec()).collect() }
    }

    /// Divide by `x`, requiring the `x^0` row to vanish; `nx` drops by one.
    pub fn divide_by_x(&self) -> Result<Self, SeriesError> {
        if let Some((j, c)) = self.coeffs[0].iter().enumerate().find(|(_, c)| !c.is_zero()) {
            return Err(SeriesError::PoleDoesNotCancel(format!("{c} at x^-1 y^{j}")));
        }
        if self.nx() == 0 {
            return Ok(Self::zero(0, self.ny()));
        }
        Ok(BiSeries { coeffs: self.coeffs[1..].to_vec() })
    }

    /// `P(x, 1)`; exact for `x^i` as long as the support in that row stays within `ny`.
    pub fn specialize_y1(&self) -> UniSeries {
        UniSeries::new(self.coeffs.iter().map(|row| row.iter().sum()).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| !c.is_negative())
    }
}

impl PowerSeries for BiSeries {
    fn add(&self, other: &Self) -> Self {
        let (nx, ny) = (self.nx().min(other.nx()), self.ny().min(other.ny()));
        let mut s = Self::zero(nx, ny);
        for i in 0..=nx {
            for j in 0..=ny {
                s.coeffs[i][j] = &self.coeffs[i][j] + &other.coeffs[i][j];
            }
        }
        s
    }

    fn sub(&self, other: &Self) -> Self {
        let (nx, ny) = (self.nx().min(other.nx()), self.ny().min(other.ny()));
        let mut s = Self::zero(nx, ny);
        for i in 0..=nx {
            for j in 0..=ny {
                s.coeffs[i][j] = &self.coeffs[i][j] - &other.coeffs[i][j];
            }
        }
        s
    }

    fn mul(&self, other: &Self) -> Self {
        let (nx, ny) = (self.nx().min(other.nx()), self.ny().min(other.ny()));
        let mut s = Self::zero(nx, ny);
        for i1 in 0..=nx {
            for j1 in 0..=ny {
                let a = &self.coeffs[i1][j1];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=nx - i1 {
                    for j2 in 0..=ny - j1 {
                        let b = &other.coeffs[i2][j2];
                        if !b.is_zero() {
                            s.coeffs[i1 + i2][j1 + j2] += a * b;
                        }
                    }
                }
            }
        }
        s
    }

    fn recip(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeffs[0][0].clone();
        if c0.abs() != BigInt::one() {
            return Err(SeriesError::NotUnit(c0));
        }
        let (nx, ny) = (self.nx(), self.ny());
        let mut inv = Self::zero(nx, ny);
        // Fill in graded-lex order so every needed entry is already known.
        for i in 0..=nx {
            for j in 0..=ny {
                if i == 0 && j == 0 {
                    inv.coeffs[0][0] = c0.clone();
                    continue;
                }
                let mut acc = BigInt::zero();
                for a in 0..=i {
                    for b in 0..=j {
                        if a == 0 && b == 0 {
                            continue;
                        }
                        let c = &self.coeffs[a][b];
                        if !c.is_zero() {
                            acc += c * &inv.coeffs[i - a][j - b];
                        }
                    }
                }
                inv.coeffs[i][j] = -(acc * &c0);
            }
        }
        Ok(inv)
    }

    fn one_like(&self) -> Self {
        Self::one(self.nx(), self.ny())
    }
}

/// JSON-friendly coefficient: a number when it fits in `i64`, else a decimal string.
struct Coeff<'a>(&'a BigInt);

impl Serialize for Coeff<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl Serialize for UniSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(Coeff))
    }
}

impl Serialize for BiSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|row| row.iter().map(Coeff).collect::<Vec<_>>()))
    }
}

// ---------------------------------------------------------------------------
// Polynomials and rational functions
// ---------------------------------------------------------------------------

/// Integer polynomial multiplication.
pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

pub fn poly_product(factors: &[&[i64]]) -> Vec<i64> {
    factors.iter().fold(vec![1], |acc, f| poly_mul(&acc, f))
}

/// `numerator / denominator` with integer polynomial parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalFn {
    pub numerator: Vec<i64>,
    pub denominator: Vec<i64>,
}

impl RationalFn {
    pub fn new(numerator: Vec<i64>, denominator: Vec<i64>) -> Result<Self, SeriesError> {
        match denominator.first() {
            Some(&c) if c == 1 || c == -1 => Ok(RationalFn { numerator, denominator }),
            Some(&c) => Err(SeriesError::BadDenominator(BigInt::from(c))),
            None => Err(SeriesError::BadDenominator(BigInt::zero())),
        }
    }

    /// Taylor coefficients `0..=n`.
    pub fn expand(&self, n: usize) -> UniSeries {
        let num = UniSeries::from_poly(&self.numerator, n);
        let den = UniSeries::from_poly(&self.denominator, n);
        num.mul(&den.recip().expect("checked unit denominator"))
    }
}

// ---------------------------------------------------------------------------
// Poincaré–Birkhoff–Witt
// ---------------------------------------------------------------------------

/// Graded dimensions `a_1, a_2, ...` of a graded Lie superalgebra whose
/// degree-`n` part has parity `n mod 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PbwDims(pub Vec<u64>);

impl PbwDims {
    /// Dimension in degree `n >= 1`; zero past the stored range.
    pub fn get(&self, n: usize) -> u64 {
        self.0.get(n - 1).copied().unwrap_or(0)
    }
}

fn pbw_factor(n: usize, dim: &BigInt, order: usize, inverse: bool) -> UniSeries {
    // (1 + t^n)^a for odd n, (1 - t^n)^(-a) for even n; `inverse` flips the exponent.
    let odd = n % 2 == 1;
    let mut c = vec![BigInt::zero(); order + 1];
    let mut k = 0usize;
    while k * n <= order {
        let kk = BigInt::from(k);
        let term = match (odd, inverse) {
            // (1+u)^a
            (true, false) => binomial(dim.clone(), kk.clone()),
            // (1+u)^(-a) = sum (-1)^k C(a+k-1, k) u^k
            (true, true) => signed_multiset(dim, k, true),
            // (1-u)^(-a) = sum C(a+k-1, k) u^k
            (false, false) => signed_multiset(dim, k, false),
            // (1-u)^a = sum (-1)^k C(a, k) u^k
            (false, true) => {
                let b = binomial(dim.clone(), kk.clone());
                if k % 2 == 1 {
                    -b
                } else {
                    b
                }
            }
        };
        c[k * n] = term;
        k += 1;
    }
    UniSeries::new(c)
}

fn signed_multiset(dim: &BigInt, k: usize, alternate: bool) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    let b = binomial(dim + BigInt::from(k) - 1, BigInt::from(k));
    if alternate && k % 2 == 1 {
        -b
    } else {
        b
    }
}

/// `prod_n (1 + t^(2n-1))^(a_(2n-1)) / (1 - t^(2n))^(a_(2n))` to order `order`.
pub fn pbw_product(dims: &PbwDims, order: usize) -> UniSeries {
    let mut acc = UniSeries::one(order);
    for n in 1..=order {
        let a = dims.get(n);
        if a == 0 {
            continue;
        }
        acc = acc.mul(&pbw_factor(n, &BigInt::from(a), order, false));
    }
    acc
}

/// Recovers the unique dimensions with `pbw_product(dims) = u` to the order of `u`.
pub fn pbw_invert(u: &UniSeries) -> Result<PbwDims, SeriesError> {
    if !u.coeff(0).is_one() {
        return Err(SeriesError::NotUnit(u.coeff(0).clone()));
    }
    let order = u.order();
    let mut rest = u.clone();
    let mut dims = Vec::with_capacity(order);
    for n in 1..=order {
        let a = rest.coeff(n).clone();
        if a.is_negative() {
            return Err(SeriesError::NegativeDimension { degree: n, value: a });
        }
        if !a.is_zero() {
            rest = rest.mul(&pbw_factor(n, &a, order, true));
        }
        dims.push(a.to_u64().expect("dimension fits in u64"));
    }
    Ok(PbwDims(dims))
}

// ---------------------------------------------------------------------------
// Poincaré series transforms
// ---------------------------------------------------------------------------

/// Golod transform: the series `P'` with `1/P' = 1/P + q`.
pub fn golod<S: PowerSeries>(p: &S, q: &S) -> Result<S, SeriesError> {
    p.recip()?.add(q).recip()
}

/// Gulliksen's formula for a trivial extension: `P_S / (1 - factor * P_S^M)`,
/// with `factor = z` (univariate) or `xy` (bigraded).
pub fn gulliksen<S: PowerSeries>(p_s: &S, p_m: &S, factor: &S) -> Result<S, SeriesError> {
    let denom = p_s.one_like().sub(&factor.mul(p_m));
    Ok(p_s.mul(&denom.recip()?))
}

/// Levin's Golod map `S -> S/m^3`: `P_S / (1 - z^2 P_S)`.
pub fn levin_golod_m3(p_s: &UniSeries) -> Result<UniSeries, SeriesError> {
    let z2 = UniSeries::monomial(1, 2, p_s.order());
    let denom = p_s.one_like().sub(&z2.mul(p_s));
    Ok(p_s.mul(&denom.recip()?))
}

/// `1/P = (1 + 1/z)/T^!(z) - T(-z)/z`, for a local ring with Hilbert
/// polynomial `hilbert` and Koszul-dual series `dual`. The `1/z` terms must
/// cancel; the result has order `dual.order() - 1`.
pub fn poincare_from_dual(hilbert: &[i64], dual: &UniSeries) -> Result<UniSeries, SeriesError> {
    let n = dual.order();
    let inv_dual = dual.recip()?;
    let t_minus = UniSeries::from_poly(hilbert, n).alternate();
    // (1 + 1/z) A - T(-z)/z = A + (A - T(-z)) / z
    let pole_part = inv_dual.sub(&t_minus).divide_by_t()?;
    let inv_p = inv_dual.truncate(n - 1).add(&pole_part);
    inv_p.recip()
}

/// Bigraded form: `1/P(x,y) = (1 + 1/x)/T^!(xy) - T(-xy)/x`, to `(nx, ny)`.
/// Needs `dual` known to order `nx + 1`.
pub fn poincare_from_dual_bigraded(
    hilbert: &[i64],
    dual: &UniSeries,
    nx: usize,
    ny: usize,
) -> Result<BiSeries, SeriesError> {
    let inv_dual = dual.recip()?.substitute_xy(nx + 1, ny);
    let t_minus = UniSeries::from_poly(hilbert, dual.order()).alternate().substitute_xy(nx + 1, ny);
    let pole_part = inv_dual.sub(&t_minus).divide_by_x()?;
    let inv_p = inv_dual.truncate(nx, ny).add(&pole_part);
    inv_p.recip()
}

// ---------------------------------------------------------------------------
// The Gorenstein example
// ---------------------------------------------------------------------------

/// Hilbert polynomial of the artinian ring `S` with `m^4 = 0`.
pub const S_HILBERT: [i64; 4] = [1, 6, 10, 1];

/// `(1+t)(1-2t)^2(1-3t+t^2)`
pub fn dual_rational_denominator() -> Vec<i64> {
    poly_product(&[&[1, 1], &[1, -2], &[1, -2], &[1, -3, 1]])
}

/// Series of the enveloping algebra of the quotient by the radical (with the
/// degree-two square kept): `1/((1+t)(1-2t)^2(1-3t+t^2))`.
pub fn radical_quotient_series(order: usize) -> UniSeries {
    RationalFn::new(vec![1], dual_rational_denominator()).expect("unit").expand(order)
}

/// `prod_{n>=2} (1+t^(2n-1))^2 / (1-t^(2n))^2`: the radical contributes two
/// dimensions in every degree `>= 3`.
pub fn radical_product(order: usize) -> UniSeries {
    let dims: Vec<u64> = (1..=order).map(|n| if n >= 3 { 2 } else { 0 }).collect();
    pbw_product(&PbwDims(dims), order)
}

/// Hilbert series of the Koszul dual `S^!`:
/// `1/((1+t)(1-2t)^2(1-3t+t^2)) * prod_{n>=2} (1+t^(2n-1))^2/(1-t^(2n))^2`.
pub fn koszul_dual_series(order: usize) -> UniSeries {
    radical_quotient_series(order).mul(&radical_product(order))
}

/// The same series assembled as `(1-t)/((1-2t)^2(1-3t+t^2))` (enveloping
/// algebra with the square of `c` also killed) times `1/(1-t^2)` times the
/// radical product.
pub fn koszul_dual_series_via_square(order: usize) -> UniSeries {
    let without_square =
        RationalFn::new(vec![1, -1], poly_product(&[&[1, -2], &[1, -2], &[1, -3, 1]])).expect("unit").expand(order);
    let square = RationalFn::new(vec![1], vec![1, 0, -1]).expect("unit").expand(order);
    without_square.mul(&square).mul(&radical_product(order))
}

/// All series assembled from a Koszul-dual series.
#[derive(Clone, Debug, Serialize)]
pub struct PoincareSeries {
    pub p_s: BiSeries,
    pub p_rbar: BiSeries,
    /// The two-step route: Gulliksen for `S ⋉ M̄`, then the Golod socle map.
    pub p_rbar_two_step: BiSeries,
    pub p_s_uni: UniSeries,
    pub p_rbar_uni: UniSeries,
    /// Univariate series of the one-dimensional ring: `(1+z) P_R̄(z)`.
    pub p_r_uni: UniSeries,
}

/// Assembles every Poincaré series of the example from `dual = S^!`, known
/// to order at least `max(nx, ny) + 1`.
pub fn assemble_poincare_series(dual: &UniSeries, nx: usize, ny: usize) -> Result<PoincareSeries, SeriesError> {
    assert!(dual.order() > nx.max(ny), "dual series too short for the requested truncation");
    let p_s = poincare_from_dual_bigraded(&S_HILBERT, dual, nx, ny)?;
    let inv_s = p_s.recip()?;

    // Closed form: 1/P_R̄197 = (1 - xy)/P_S - 4xy^2 - 4x^2y^3
    let one_minus_xy = BiSeries::from_terms(&[(1, 0, 0), (-1, 1, 1)], nx, ny);
    let tail = BiSeries::from_terms(&[(4, 1, 2), (4, 2, 3)], nx, ny);
    let p_rbar = one_minus_xy.mul(&inv_s).sub(&tail).recip()?;

    // Two-step: P^M̄_S = 1 + (4y + 4xy^2 + xy^3) P_S, Gulliksen with factor xy,
    // then the socle Golod map with q = x^2 y^4.
    let module_gens = BiSeries::from_terms(&[(4, 0, 1), (4, 1, 2), (1, 1, 3)], nx, ny);
    let p_m = p_s.one_like().add(&module_gens.mul(&p_s));
    let xy = BiSeries::monomial(1, 1, 1, nx, ny);
    let p_rbar_socle = gulliksen(&p_s, &p_m, &xy)?;
    let q = BiSeries::monomial(1, 2, 4, nx, ny);
    let p_rbar_two_step = golod(&p_rbar_socle, &q)?;

    let n = nx;
    let p_s_uni = poincare_from_dual(&S_HILBERT, &dual.truncate(n + 1))?;
    let one_minus_z = UniSeries::from_poly(&[1, -1], n);
    let p_rbar_uni = one_minus_z.mul(&p_s_uni.recip()?).sub(&UniSeries::from_poly(&[0, 4, 4], n)).recip()?;
    let p_r_uni = UniSeries::from_poly(&[1, 1], n).mul(&p_rbar_uni);

    Ok(PoincareSeries { p_s, p_rbar, p_rbar_two_step, p_s_uni, p_rbar_uni, p_r_uni })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_and_inverse() {
        let s = UniSeries::from_poly(&[1, -1], 4).recip().unwrap();
        assert_eq!(s.coeffs_i64(), vec![1, 1, 1, 1, 1]);
        let p = UniSeries::from_poly(&[1, 1], 3).mul(&UniSeries::from_poly(&[1, -1], 3));
        assert_eq!(p.coeffs_i64(), vec![1, 0, -1, 0]);
        let h = UniSeries::from_poly(&S_HILBERT, 10);
        assert_eq!(h.recip().unwrap().mul(&h), UniSeries::one(10));
        assert_eq!(UniSeries::from_poly(&[2, 1], 3).recip(), Err(SeriesError::NotUnit(BigInt::from(2))));
    }

    #[test]
    fn truncation_is_the_minimum() {
        let a = UniSeries::one(5);
        let b = UniSeries::one(3);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.add(&b).order(), 3);
    }

    /// a_n = 3 a_{n-1} - a_{n-2}
    #[test]
    fn rational_expand_matches_recurrence() {
        let s = RationalFn::new(vec![1], vec![1, -3, 1]).unwrap().expand(5);
        let mut rec = vec![1i64, 3];
        for n in 2..=5 {
            rec.push(3 * rec[n - 1] - rec[n - 2]);
        }
        assert_eq!(s.coeffs_i64(), rec);
        assert_eq!(s.coeffs_i64(), vec![1, 3, 8, 21, 55, 144]);
        assert_eq!(RationalFn::new(vec![1], vec![1]).unwrap().expand(3).coeffs_i64(), vec![1, 0, 0, 0]);
        assert!(RationalFn::new(vec![1], vec![2, 1]).is_err());
    }

    /// Long division of (1-t) by the expanded denominator, done by hand.
    #[test]
    fn rational_expand_enveloping_series() {
        let den = poly_product(&[&[1, -2], &[1, -2], &[1, -3, 1]]);
        assert_eq!(den, vec![1, -7, 17, -16, 4]);
        // c_n = (1-t)_n + 7c_{n-1} - 17c_{n-2} + 16c_{n-3} - 4c_{n-4}
        let num = [1i64, -1];
        let mut c: Vec<i64> = Vec::new();
        for n in 0..=7usize {
            let mut v = *num.get(n).unwrap_or(&0);
            for (k, d) in den.iter().enumerate().skip(1) {
                if n >= k {
                    v -= d * c[n - k];
                }
            }
            c.push(v);
        }
        let s = RationalFn::new(num.to_vec(), den).unwrap().expand(7);
        assert_eq!(s.coeffs_i64(), c);
        assert_eq!(&c[..4], &[1, 6, 25, 89]);
    }

    #[test]
    fn pbw_examples() {
        assert_eq!(pbw_product(&PbwDims(vec![1, 1]), 6).coeffs_i64(), vec![1; 7]);
        assert_eq!(pbw_product(&PbwDims(vec![]), 4), UniSeries::one(4));
        let free2 = UniSeries::from_poly(&[1, -2], 6).recip().unwrap();
        let dims = pbw_invert(&free2).unwrap();
        assert_eq!(&dims.0[..3], &[2, 3, 2]);
        assert_eq!(pbw_product(&dims, 6), free2);
        let geo = UniSeries::from_poly(&[1, -1], 8).recip().unwrap();
        assert_eq!(pbw_invert(&geo).unwrap().0, vec![1, 1, 0, 0, 0, 0, 0, 0]);
        let bad = UniSeries::from_poly(&[1, 1, 1], 6);
        assert_eq!(pbw_invert(&bad), Err(SeriesError::NegativeDimension { degree: 3, value: BigInt::from(-1) }));
    }

    #[test]
    fn golod_identity_and_round_trip() {
        let p = UniSeries::from_poly(&[1, 3, -2, 5], 8).recip().unwrap();
        let zero = UniSeries::zero(8);
        assert_eq!(golod(&p, &zero).unwrap(), p);
        let q = UniSeries::monomial(1, 2, 8);
        let there = golod(&p, &q).unwrap();
        assert_eq!(golod(&there, &q.scale(-1)).unwrap(), p);
        // levin_golod_m3 is the inverse direction of the q = z^2 transform
        assert_eq!(golod(&levin_golod_m3(&p).unwrap(), &q).unwrap(), p);
        assert_eq!(levin_golod_m3(&UniSeries::one(6)).unwrap(), UniSeries::from_poly(&[1, 0, -1], 6).recip().unwrap());
    }

    #[test]
    fn gulliksen_degenerate_cases() {
        let p = UniSeries::from_poly(&[1, 2, 1], 6).recip().unwrap();
        let z = UniSeries::monomial(1, 1, 6);
        assert_eq!(gulliksen(&p, &UniSeries::zero(6), &z).unwrap(), p);
        let m = UniSeries::from_poly(&[2, 1], 6);
        let expect = UniSeries::one(6).sub(&z.mul(&m)).recip().unwrap();
        assert_eq!(gulliksen(&UniSeries::one(6), &m, &z).unwrap(), expect);
    }

    #[test]
    fn poincare_from_dual_of_a_field_and_pole_check() {
        let p = poincare_from_dual(&[1], &UniSeries::one(6)).unwrap();
        assert_eq!(p, UniSeries::one(5));
        // A Hilbert series with the wrong constant term leaves a pole.
        assert!(matches!(poincare_from_dual(&[2], &UniSeries::one(6)), Err(SeriesError::PoleDoesNotCancel(_))));
    }

    #[test]
    fn bigraded_golod_specializes_to_univariate() {
        let pu = UniSeries::from_poly(&[1, -6, 9, -1], 8).recip().unwrap();
        let pb = pu.substitute_xy(8, 16);
        let golod_b = golod(&pb, &BiSeries::monomial(1, 2, 4, 8, 16)).unwrap();
        let golod_u = golod(&pu, &UniSeries::monomial(1, 2, 8)).unwrap();
        assert_eq!(golod_b.specialize_y1(), golod_u);
    }

    #[test]
    fn the_two_factorizations_agree() {
        assert_eq!(koszul_dual_series(20), koszul_dual_series_via_square(20));
        assert_eq!(&koszul_dual_series(7).coeffs_i64()[..], &[1, 6, 26, 97, 330, 1054, 3218, 9504]);
    }

    #[test]
    fn assembly_routes_agree() {
        let dual = koszul_dual_series(26);
        let t = assemble_poincare_series(&dual, 12, 24).unwrap();
        assert_eq!(t.p_rbar, t.p_rbar_two_step);
        assert!(t.p_s.is_nonnegative() && t.p_rbar.is_nonnegative());
        assert!(t.p_rbar_uni.is_nonnegative() && t.p_r_uni.is_nonnegative());
        assert_eq!(t.p_rbar.specialize_y1(), t.p_rbar_uni);
        assert_eq!(t.p_s.specialize_y1(), t.p_s_uni);
        assert_eq!(t.p_rbar_uni.coeff(1), &BigInt::from(11));
    }
}
