//! Binomial relation lists in a weighted polynomial ring: parsing, kernel
//! checks against a semigroup map, substitution, and graded quotient
//! dimensions by exact row reduction.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, Rational};
use crate::semigroup::NumericalSemigroup;
use crate::sparse::{RowSpace, SparseVec};

/// Default cap on the number of monomials in one weighted degree.
pub const DEFAULT_MONOMIAL_CAP: usize = 2_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown variable '{0}'")]
    UnknownVariable(char),
    #[error("relation {index} ({relation}) is not homogeneous: degrees {lhs} and {rhs}")]
    NotHomogeneous { index: usize, relation: String, lhs: u64, rhs: u64 },
    #[error("relation {index} ({relation}) is a monomial and cannot lie in a toric kernel")]
    MonomialInKernel { index: usize, relation: String },
    #[error("{count} monomials in degree {degree} exceed the cap {cap}")]
    TooManyMonomials { degree: u64, count: usize, cap: usize },
    #[error("weights and names differ in length ({names} names, {weights} weights)")]
    ShapeMismatch { names: usize, weights: usize },
    #[error("weight of '{0}' must be positive")]
    ZeroWeight(char),
}

/// Monomial in single-letter variables, exponent zero never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<char, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn from_pairs(pairs: &[(char, u32)]) -> Self {
        let mut m = Monomial::one();
        for &(v, e) in pairs {
            m.mul_var(v, e);
        }
        m
    }

    fn mul_var(&mut self, v: char, e: u32) {
        if e > 0 {
            *self.0.entry(v).or_insert(0) += e;
        }
    }

    pub fn exponent(&self, v: char) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn contains(&self, v: char) -> bool {
        self.0.contains_key(&v)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn variables(&self) -> impl Iterator<Item = (char, u32)> + '_ {
        self.0.iter().map(|(v, e)| (*v, *e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (v, e) in &self.0 {
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// `lhs - rhs`, or the monomial `lhs` alone when `rhs` is `None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Binomial {
    pub lhs: Monomial,
    pub rhs: Option<Monomial>,
}

impl Binomial {
    pub fn new(lhs: Monomial, rhs: Monomial) -> Self {
        Binomial { lhs, rhs: Some(rhs) }
    }

    pub fn monomial(m: Monomial) -> Self {
        Binomial { lhs: m, rhs: None }
    }

    pub fn is_monomial(&self) -> bool {
        self.rhs.is_none()
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rhs {
            Some(r) => write!(f, "{}-{}", self.lhs, r),
            None => write!(f, "{}", self.lhs),
        }
    }
}

/// Polynomial ring with one positive integer weight per variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedRing {
    names: Vec<char>,
    weights: Vec<u64>,
}

impl WeightedRing {
    pub fn new(names: &[char], weights: &[u64]) -> Result<Self, PresentationError> {
        if names.len() != weights.len() {
            return Err(PresentationError::ShapeMismatch { names: names.len(), weights: weights.len() });
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(PresentationError::ZeroWeight(names[i]));
        }
        Ok(WeightedRing { names: names.to_vec(), weights: weights.to_vec() })
    }

    /// Variables `a, b, c, ...` mapped to the generators of `s` in order.
    pub fn for_semigroup(s: &NumericalSemigroup) -> Self {
        let names = letters(s.generators().len());
        Self::new(&names, s.generators()).expect("generators are positive")
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn index(&self, v: char) -> Result<usize, PresentationError> {
        self.names.iter().position(|&n| n == v).ok_or(PresentationError::UnknownVariable(v))
    }

    pub fn weight(&self, v: char) -> Result<u64, PresentationError> {
        Ok(self.weights[self.index(v)?])
    }

    fn dense(&self, m: &Monomial) -> Result<Vec<u32>, PresentationError> {
        let mut e = vec![0u32; self.names.len()];
        for (v, k) in m.variables() {
            e[self.index(v)?] += k;
        }
        Ok(e)
    }
}

/// The first `n` lowercase letters.
pub fn letters(n: usize) -> Vec<char> {
    (b'a'..=b'z').take(n).map(char::from).collect()
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Cursor<'a> {
    chars: Vec<(usize, usize, char)>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        let mut chars = Vec::new();
        for (ln, line) in src.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            for (col, c) in body.chars().enumerate() {
                chars.push((ln + 1, col + 1, c));
            }
            // line break acts as a separator
            chars.push((ln + 1, body.chars().count() + 1, '\n'));
        }
        Cursor { chars, pos: 0, _src: src }
    }

    fn skip_blanks(&mut self) {
        while matches!(self.peek(), Some(c) if c == ' ' || c == '\t' || c == '\r') {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|t| t.2)
    }

    fn error(&self, message: impl Into<String>) -> PresentationError {
        let (line, column) = match self.chars.get(self.pos) {
            Some(&(l, c, _)) => (l, c),
            None => self.chars.last().map(|&(l, c, _)| (l, c)).unwrap_or((1, 1)),
        };
        PresentationError::Parse { line, column, message: message.into() }
    }

    fn monomial(&mut self) -> Result<Monomial, PresentationError> {
        self.skip_blanks();
        let mut m = Monomial::one();
        let mut any = false;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphabetic() {
                self.pos += 1;
                let mut e = 1u32;
                self.skip_blanks();
                if self.peek() == Some('^') {
                    self.pos += 1;
                    self.skip_blanks();
                    let start = self.pos;
                    let mut digits = String::new();
                    while let Some(d) = self.peek().filter(char::is_ascii_digit) {
                        digits.push(d);
                        self.pos += 1;
                    }
                    if digits.is_empty() {
                        self.pos = start;
                        return Err(self.error("expected an exponent after '^'"));
                    }
                    e = digits.parse().map_err(|_| self.error("exponent too large"))?;
                }
                m.mul_var(c, e);
                any = true;
                self.skip_blanks();
            } else if c == '*' && any {
                self.pos += 1;
                self.skip_blanks();
            } else {
                break;
            }
        }
        if !any {
            return Err(self.error("expected a monomial"));
        }
        Ok(m)
    }
}

/// Parses comma- or newline-separated binomials `m1-m2` and monomials `m`.
/// `#` starts a comment running to the end of the line.
pub fn parse_relations(text: &str) -> Result<Vec<Binomial>, PresentationError> {
    let mut cur = Cursor::new(text);
    let mut out = Vec::new();
    loop {
        while matches!(cur.peek(), Some(c) if c.is_whitespace() || c == ',') {
            cur.pos += 1;
        }
        if cur.peek().is_none() {
            break;
        }
        let lhs = cur.monomial()?;
        cur.skip_blanks();
        let rel = if cur.peek() == Some('-') {
            cur.pos += 1;
            let rhs = cur.monomial()?;
            if rhs == lhs {
                return Err(cur.error("both sides of the binomial are equal"));
            }
            Binomial::new(lhs, rhs)
        } else {
            Binomial::monomial(lhs)
        };
        cur.skip_blanks();
        match cur.peek() {
            None | Some(',') | Some('\n') => out.push(rel),
            Some(c) => return Err(cur.error(format!("unexpected '{c}'"))),
        }
    }
    Ok(out)
}

/// Comma-separated rendering that [`parse_relations`] reads back.
pub fn format_relations(rels: &[Binomial]) -> String {
    rels.iter().map(Binomial::to_string).collect::<Vec<_>>().join(", ")
}

// ---------------------------------------------------------------------------
// Degrees and kernels
// ---------------------------------------------------------------------------

pub fn weighted_degree(m: &Monomial, ring: &WeightedRing) -> Result<u64, PresentationError> {
    let mut d = 0;
    for (v, e) in m.variables() {
        d += ring.weight(v)? * u64::from(e);
    }
    Ok(d)
}

/// Weighted degree of a homogeneous relation.
pub fn relation_degree(r: &Binomial, ring: &WeightedRing) -> Result<u64, PresentationError> {
    weighted_degree(&r.lhs, ring)
}

/// Every relation is a binomial whose two terms have equal weighted degree,
/// hence maps to zero under `x_i -> t^(w_i)`.
pub fn verify_kernel(rels: &[Binomial], ring: &WeightedRing) -> Result<(), PresentationError> {
    for (index, r) in rels.iter().enumerate() {
        let Some(rhs) = &r.rhs else {
            return Err(PresentationError::MonomialInKernel { index, relation: r.to_string() });
        };
        let (l, h) = (weighted_degree(&r.lhs, ring)?, weighted_degree(rhs, ring)?);
        if l != h {
            return Err(PresentationError::NotHomogeneous { index, relation: r.to_string(), lhs: l, rhs: h });
        }
    }
    Ok(())
}

/// Checks homogeneity only; monomials are allowed.
pub fn verify_homogeneous(rels: &[Binomial], ring: &WeightedRing) -> Result<(), PresentationError> {
    for (index, r) in rels.iter().enumerate() {
        if let Some(rhs) = &r.rhs {
            let (l, h) = (weighted_degree(&r.lhs, ring)?, weighted_degree(rhs, ring)?);
            if l != h {
                return Err(PresentationError::NotHomogeneous { index, relation: r.to_string(), lhs: l, rhs: h });
            }
        }
    }
    Ok(())
}

/// Sets `var = 0`: a term containing `var` vanishes; relations that vanish
/// entirely are dropped and a surviving single term becomes a monomial.
pub fn substitute_zero(rels: &[Binomial], var: char) -> Vec<Binomial> {
    let mut out: Vec<Binomial> = Vec::new();
    for r in rels {
        let lhs = (!r.lhs.contains(var)).then(|| r.lhs.clone());
        let rhs = r.rhs.as_ref().filter(|m| !m.contains(var)).cloned();
        let new = match (lhs, rhs) {
            (Some(l), Some(h)) => Binomial::new(l, h),
            (Some(m), None) | (None, Some(m)) => Binomial::monomial(m),
            (None, None) => continue,
        };
        if !out.contains(&new) {
            out.push(new);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Graded linear algebra
// ---------------------------------------------------------------------------

/// All exponent vectors of weighted degree `d`.
pub fn monomials_of_degree(ring: &WeightedRing, d: u64, cap: usize) -> Result<Vec<Vec<u32>>, PresentationError> {
    fn rec(w: &[u64], i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, cap: usize) -> bool {
        if i == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return out.len() <= cap;
        }
        let max = left / w[i];
        for e in 0..=max {
            cur[i] = e as u32;
            if !rec(w, i + 1, left - e * w[i], cur, out, cap) {
                return false;
            }
        }
        cur[i] = 0;
        true
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; ring.weights.len()];
    if !rec(&ring.weights, 0, d, &mut cur, &mut out, cap) {
        return Err(PresentationError::TooManyMonomials { degree: d, count: out.len(), cap });
    }
    Ok(out)
}

struct Generator {
    degree: u64,
    lhs: Vec<u32>,
    rhs: Option<Vec<u32>>,
}

fn dense_generators(rels: &[Binomial], ring: &WeightedRing) -> Result<Vec<Generator>, PresentationError> {
    verify_homogeneous(rels, ring)?;
    rels.iter()
        .map(|r| {
            Ok(Generator {
                degree: relation_degree(r, ring)?,
                lhs: ring.dense(&r.lhs)?,
                rhs: r.rhs.as_ref().map(|m| ring.dense(m)).transpose()?,
            })
        })
        .collect()
}

fn add_exponents(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Row space of `J_d` (or `(m J)_d` when `proper` multiples only) on the
/// monomial basis of `T_d`, returning it with the number of monomials.
fn ideal_component(
    gens: &[Generator],
    ring: &WeightedRing,
    d: u64,
    cap: usize,
    proper: bool,
    index: &HashMap<Vec<u32>, usize>,
) -> Result<RowSpace<Rational>, PresentationError> {
    let mut space = RowSpace::new();
    for g in gens.iter().filter(|g| g.degree <= d) {
        if proper && g.degree == d {
            continue;
        }
        for m in monomials_of_degree(ring, d - g.degree, cap)? {
            let l = index[&add_exponents(&m, &g.lhs)];
            let row = match &g.rhs {
                Some(r) => {
                    let h = index[&add_exponents(&m, r)];
                    SparseVec::from_entries([(l, Rational::one()), (h, Rational::from_i64(-1))])
                }
                None => SparseVec::unit(l),
            };
            space.insert(&row);
        }
    }
    Ok(space)
}

fn index_monomials(ring: &WeightedRing, d: u64, cap: usize) -> Result<HashMap<Vec<u32>, usize>, PresentationError> {
    Ok(monomials_of_degree(ring, d, cap)?.into_iter().enumerate().map(|(i, m)| (m, i)).collect())
}

/// `dim (T/J)_d` for `d = 0..=max_degree`.
pub fn quotient_dims(
    rels: &[Binomial],
    ring: &WeightedRing,
    max_degree: u64,
    cap: usize,
) -> Result<Vec<usize>, PresentationError> {
    let gens = dense_generators(rels, ring)?;
    (0..=max_degree)
        .map(|d| {
            let index = index_monomials(ring, d, cap)?;
            let space = ideal_component(&gens, ring, d, cap, false, &index)?;
            Ok(index.len() - space.rank())
        })
        .collect()
}

/// Number of minimal generators of the ideal among relations of degree at
/// most `max_degree`: per degree, `dim J_d - dim (m J)_d`.
pub fn minimal_generator_count(
    rels: &[Binomial],
    ring: &WeightedRing,
    max_degree: u64,
    cap: usize,
) -> Result<usize, PresentationError> {
    let gens = dense_generators(rels, ring)?;
    let mut degrees: Vec<u64> = gens.iter().map(|g| g.degree).filter(|&d| d <= max_degree).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut count = 0;
    for d in degrees {
        let index = index_monomials(ring, d, cap)?;
        let full = ideal_component(&gens, ring, d, cap, false, &index)?.rank();
        let proper = ideal_component(&gens, ring, d, cap, true, &index)?.rank();
        count += full - proper;
    }
    Ok(count)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeMismatch {
    pub degree: u64,
    pub expected: usize,
    pub found: usize,
}

/// Checks `dim (T/J)_d = [d in S]` for every `d <= max_degree`.
pub fn verify_presentation(
    rels: &[Binomial],
    ring: &WeightedRing,
    s: &NumericalSemigroup,
    max_degree: u64,
    cap: usize,
) -> Result<Result<(), DegreeMismatch>, PresentationError> {
    let dims = quotient_dims(rels, ring, max_degree, cap)?;
    for (d, &found) in dims.iter().enumerate() {
        let expected = usize::from(s.contains(d as i64));
        if found != expected {
            return Ok(Err(DegreeMismatch { degree: d as u64, expected, found }));
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring_ab() -> WeightedRing {
        WeightedRing::new(&['a', 'b'], &[2, 3]).unwrap()
    }

    #[test]
    fn parse_examples() {
        let r = parse_relations("b^2-af").unwrap();
        assert_eq!(
            r,
            vec![Binomial::new(Monomial::from_pairs(&[('b', 2)]), Monomial::from_pairs(&[('a', 1), ('f', 1)]))]
        );
        let k = parse_relations("k^2-ehl").unwrap();
        assert_eq!(k[0].rhs.as_ref().unwrap().total_degree(), 3);
        let m = parse_relations("# comment\nb^2, c^2-bd\n cd").unwrap();
        assert_eq!(m.len(), 3);
        assert!(m[0].is_monomial() && !m[1].is_monomial());
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_relations("x^2-") {
            Err(PresentationError::Parse { line: 1, column: 5, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_relations("ab,\n c^-d"), Err(PresentationError::Parse { line: 2, column: 4, .. })));
        assert!(parse_relations("a-a").is_err());
        assert!(parse_relations("a+b").is_err());
    }

    #[test]
    fn roundtrip() {
        let text = "b^2-af, a^2b-f^2, bch, i^2";
        let r = parse_relations(text).unwrap();
        assert_eq!(parse_relations(&format_relations(&r)).unwrap(), r);
    }

    #[test]
    fn degrees() {
        let ring = WeightedRing::new(&['a', 'b', 'f'], &[36, 48, 60]).unwrap();
        assert_eq!(weighted_degree(&Monomial::from_pairs(&[('b', 2)]), &ring).unwrap(), 96);
        assert_eq!(weighted_degree(&Monomial::from_pairs(&[('a', 1), ('f', 1)]), &ring).unwrap(), 96);
        assert_eq!(weighted_degree(&Monomial::one(), &ring).unwrap(), 0);
        assert_eq!(
            weighted_degree(&Monomial::from_pairs(&[('z', 1)]), &ring),
            Err(PresentationError::UnknownVariable('z'))
        );
        let bad = WeightedRing::new(&['a', 'b', 'f'], &[37, 48, 60]).unwrap();
        assert!(verify_kernel(&parse_relations("b^2-af").unwrap(), &bad).is_err());
        assert!(verify_kernel(&parse_relations("b^2-af").unwrap(), &ring).is_ok());
    }

    #[test]
    fn substitution() {
        let r = parse_relations("b^2-af, c^2-bd, a^3-bf, a^2-ab").unwrap();
        let s = substitute_zero(&r, 'a');
        assert_eq!(format_relations(&s), "b^2, c^2-bd, bf");
    }

    /// k[t^2, t^3] = k[a, b]/(a^3 - b^2)
    #[test]
    fn cusp_presentation() {
        let s = NumericalSemigroup::new(&[2, 3]).unwrap();
        let ring = ring_ab();
        let rels = parse_relations("a^3-b^2").unwrap();
        assert_eq!(verify_presentation(&rels, &ring, &s, 30, 1000).unwrap(), Ok(()));
        let dims = quotient_dims(&[], &ring, 6, 1000).unwrap();
        assert_eq!(dims, vec![1, 0, 1, 1, 1, 1, 2]);
        assert_eq!(
            verify_presentation(&[], &ring, &s, 6, 1000).unwrap(),
            Err(DegreeMismatch { degree: 6, expected: 1, found: 2 })
        );
        assert_eq!(minimal_generator_count(&rels, &ring, 10, 1000).unwrap(), 1);
        let doubled = parse_relations("a^3-b^2, a^4-ab^2").unwrap();
        assert_eq!(minimal_generator_count(&doubled, &ring, 10, 1000).unwrap(), 1);
    }

    #[test]
    fn monomial_cap() {
        let ring = WeightedRing::new(&['a', 'b', 'c'], &[1, 1, 1]).unwrap();
        assert_eq!(monomials_of_degree(&ring, 3, 100).unwrap().len(), 10);
        assert!(matches!(monomials_of_degree(&ring, 3, 5), Err(PresentationError::TooManyMonomials { .. })));
    }
}
