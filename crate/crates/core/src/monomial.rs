//! Hilbert series of free associative algebras modulo monomial ideals, by
//! counting words that avoid a set of forbidden factors.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, Rational};
use crate::series::{RationalFn, UniSeries};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MonomialError {
    #[error("letter '{0}' is not in the alphabet")]
    UnknownLetter(String),
    #[error("forbidden word {0:?} is shorter than two letters")]
    TooShort(String),
    #[error("forbidden word {inner:?} is a factor of {outer:?}")]
    NotReduced { inner: String, outer: String },
    #[error("the alphabet is empty")]
    EmptyAlphabet,
}

/// `k<alphabet> / (forbidden words)`
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialAlgebra {
    pub alphabet: Vec<String>,
    pub forbidden: Vec<Vec<usize>>,
}

impl MonomialAlgebra {
    pub fn new(alphabet: Vec<String>, forbidden: Vec<Vec<usize>>) -> Result<Self, MonomialError> {
        if alphabet.is_empty() {
            return Err(MonomialError::EmptyAlphabet);
        }
        let alg = MonomialAlgebra { alphabet, forbidden };
        for w in &alg.forbidden {
            if let Some(&x) = w.iter().find(|&&x| x >= alg.alphabet.len()) {
                return Err(MonomialError::UnknownLetter(x.to_string()));
            }
            if w.len() < 2 {
                return Err(MonomialError::TooShort(alg.render(w)));
            }
        }
        for (i, u) in alg.forbidden.iter().enumerate() {
            for (j, v) in alg.forbidden.iter().enumerate() {
                if i != j && v.windows(u.len()).any(|f| f == u.as_slice()) {
                    return Err(MonomialError::NotReduced { inner: alg.render(u), outer: alg.render(v) });
                }
            }
        }
        Ok(alg)
    }

    /// Letters are the given names; each forbidden word is split greedily
    /// into the longest matching letter names.
    pub fn parse(alphabet: &[&str], forbidden: &[&str]) -> Result<Self, MonomialError> {
        let letters: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
        let mut words = Vec::new();
        for w in forbidden {
            let mut rest = *w;
            let mut word = Vec::new();
            while !rest.is_empty() {
                let best = letters
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| !l.is_empty() && rest.starts_with(l.as_str()))
                    .max_by_key(|(_, l)| l.len());
                match best {
                    Some((i, l)) => {
                        word.push(i);
                        rest = &rest[l.len()..];
                    }
                    None => return Err(MonomialError::UnknownLetter(rest.to_string())),
                }
            }
            words.push(word);
        }
        Self::new(letters, words)
    }

    fn render(&self, w: &[usize]) -> String {
        w.iter().map(|&x| self.alphabet.get(x).map(String::as_str).unwrap_or("?")).collect()
    }

    /// Trie of forbidden words with failure links. Returns the transition
    /// table over live states (`None` = a forbidden word was completed);
    /// state 0 is the empty prefix.
    pub fn automaton(&self) -> Vec<Vec<Option<usize>>> {
        let k = self.alphabet.len();
        let mut goto: Vec<Vec<Option<usize>>> = vec![vec![None; k]];
        let mut terminal = vec![false];
        for w in &self.forbidden {
            let mut s = 0;
            for &x in w {
                s = match goto[s][x] {
                    Some(t) => t,
                    None => {
                        goto.push(vec![None; k]);
                        terminal.push(false);
                        let t = goto.len() - 1;
                        goto[s][x] = Some(t);
                        t
                    }
                };
            }
            terminal[s] = true;
        }
        let n = goto.len();
        let mut fail = vec![0usize; n];
        let mut delta = vec![vec![0usize; k]; n];
        let mut queue = VecDeque::new();
        for x in 0..k {
            match goto[0][x] {
                Some(t) => {
                    delta[0][x] = t;
                    queue.push_back(t);
                }
                None => delta[0][x] = 0,
            }
        }
        while let Some(s) = queue.pop_front() {
            terminal[s] |= terminal[fail[s]];
            for x in 0..k {
                match goto[s][x] {
                    Some(t) => {
                        fail[t] = delta[fail[s]][x];
                        delta[s][x] = t;
                        queue.push_back(t);
                    }
                    None => delta[s][x] = delta[fail[s]][x],
                }
            }
        }
        // renumber the live states
        let mut live = vec![None; n];
        let mut next = 0;
        for s in 0..n {
            if !terminal[s] {
                live[s] = Some(next);
                next += 1;
            }
        }
        (0..n).filter(|&s| !terminal[s]).map(|s| delta[s].iter().map(|&t| live[t]).collect()).collect()
    }

    /// Number of words of each length `0..=n` avoiding every forbidden factor.
    pub fn series(&self, n: usize) -> UniSeries {
        let table = self.automaton();
        let mut counts = vec![BigInt::zero(); table.len()];
        counts[0] = BigInt::one();
        let mut out = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            out.push(counts.iter().sum());
            let mut next = vec![BigInt::zero(); table.len()];
            for (s, row) in table.iter().enumerate() {
                if counts[s].is_zero() {
                    continue;
                }
                for t in row.iter().flatten() {
                    next[*t] += &counts[s];
                }
            }
            counts = next;
        }
        UniSeries::new(out)
    }

    /// The Hilbert series as a reduced rational function
    /// `u^T adj(I - tA) 1 / det(I - tA)` from the transfer matrix `A`.
    pub fn rational_function(&self) -> RationalFn {
        let table = self.automaton();
        let n = table.len();
        let mut a = vec![vec![<Rational as Field>::zero(); n]; n];
        for (s, row) in table.iter().enumerate() {
            for t in row.iter().flatten() {
                a[s][*t] = a[s][*t].add(&<Rational as Field>::one());
            }
        }
        // det(I - tA) = t^n charpoly(1/t): the reversed characteristic polynomial
        let charpoly = faddeev_leverrier(&a);
        let den: Vec<Rational> = charpoly.into_iter().rev().collect();
        let s = self.series(2 * n + 1);
        let mut num = vec![<Rational as Field>::zero(); n + 1];
        for (i, c) in num.iter_mut().enumerate() {
            for j in 0..=i {
                let sc = Rational::from_integer(s.coeff(i - j).clone());
                *c = c.add(&sc.mul(&den[j]));
            }
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = (poly_div_exact(&num, &g), poly_div_exact(&den, &g));
        let scale = den[0].inv();
        let to_int = |p: &[Rational]| -> Vec<i64> {
            let mut v: Vec<i64> =
                p.iter().map(|c| c.mul(&scale).to_integer().to_i64().expect("small coefficient")).collect();
            while v.len() > 1 && v.last() == Some(&0) {
                v.pop();
            }
            v
        };
        RationalFn::new(to_int(&num), to_int(&den)).expect("constant term one")
    }
}

/// Coefficients `c_0..c_n` of `det(xI - A)`, lowest degree first.
fn faddeev_leverrier(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let mut c = vec![<Rational as Field>::zero(); n + 1];
    c[n] = <Rational as Field>::one();
    let mut m = vec![vec![<Rational as Field>::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![<Rational as Field>::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = <Rational as Field>::zero();
                for (l, row) in m.iter().enumerate() {
                    if !Field::is_zero(&a[i][l]) && !Field::is_zero(&row[j]) {
                        acc = acc.add(&a[i][l].mul(&row[j]));
                    }
                }
                if i == j {
                    acc = acc.add(&c[n - k + 1]);
                }
                next[i][j] = acc;
            }
        }
        m = next;
        let mut tr = <Rational as Field>::zero();
        for i in 0..n {
            for l in 0..n {
                tr = tr.add(&a[i][l].mul(&m[l][i]));
            }
        }
        c[n - k] = tr.mul(&Rational::from_i64(k as i64).inv()).neg();
    }
    c
}

fn trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && Field::is_zero(p.last().unwrap()) {
        p.pop();
    }
}

fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let lead = b.last().unwrap().inv();
    while r.len() >= b.len() && !(r.len() == 1 && Field::is_zero(&r[0])) {
        let shift = r.len() - b.len();
        let f = r.last().unwrap().mul(&lead);
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].sub(&f.mul(c));
        }
        r.pop();
        trim(&mut r);
        if r.is_empty() {
            r.push(<Rational as Field>::zero());
        }
    }
    r
}

fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !(y.len() == 1 && Field::is_zero(&y[0])) {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn poly_div_exact(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return vec![<Rational as Field>::zero()];
    }
    let mut q = vec![<Rational as Field>::zero(); r.len() - b.len() + 1];
    let lead = b.last().unwrap().inv();
    for shift in (0..q.len()).rev() {
        let f = r[shift + b.len() - 1].mul(&lead);
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].sub(&f.mul(c));
        }
        q[shift] = f;
    }
    debug_assert!(r.iter().all(Field::is_zero), "inexact polynomial division");
    q
}

/// Counts words of length `0..=n` by listing them all; a test oracle.
pub fn brute_force_counts(alg: &MonomialAlgebra, n: usize) -> Vec<u64> {
    let k = alg.alphabet.len();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    let mut out = vec![1u64];
    for _ in 1..=n {
        let mut next = Vec::new();
        for w in &layer {
            for x in 0..k {
                let mut v = w.clone();
                v.push(x);
                let bad = alg.forbidden.iter().any(|f| v.len() >= f.len() && v.ends_with(f));
                if !bad {
                    next.push(v);
                }
            }
        }
        out.push(next.len() as u64);
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_like_algebra() {
        let alg = MonomialAlgebra::parse(&["C", "D'", "G"], &["CC", "CD'G"]).unwrap();
        assert_eq!(alg.forbidden, vec![vec![0, 0], vec![0, 1, 2]]);
        assert_eq!(&alg.series(4).coeffs_i64(), &[1, 3, 8, 21, 55]);
        assert_eq!(alg.rational_function(), RationalFn::new(vec![1], vec![1, -3, 1]).unwrap());
    }

    #[test]
    fn free_and_trivial_cases() {
        let free = MonomialAlgebra::parse(&["a", "b", "c", "d"], &[]).unwrap();
        assert_eq!(free.series(3).coeffs_i64(), vec![1, 4, 16, 64]);
        assert_eq!(free.rational_function(), RationalFn::new(vec![1], vec![1, -4]).unwrap());
        let one = MonomialAlgebra::parse(&["a"], &["aa"]).unwrap();
        assert_eq!(one.series(4).coeffs_i64(), vec![1, 1, 0, 0, 0]);
        assert_eq!(one.rational_function(), RationalFn::new(vec![1, 1], vec![1]).unwrap());
    }

    #[test]
    fn validation() {
        assert!(matches!(MonomialAlgebra::parse(&["a"], &["a"]), Err(MonomialError::TooShort(_))));
        assert!(matches!(MonomialAlgebra::parse(&["a", "b"], &["ab", "aab"]), Err(MonomialError::NotReduced { .. })));
        assert!(matches!(MonomialAlgebra::parse(&["a"], &["ax"]), Err(MonomialError::UnknownLetter(_))));
    }

    #[test]
    fn overlapping_patterns_match_brute_force() {
        let alg = MonomialAlgebra::parse(&["a", "b"], &["aba", "bb"]).unwrap();
        let s = alg.series(10).coeffs_i64();
        let b: Vec<i64> = brute_force_counts(&alg, 10).into_iter().map(|x| x as i64).collect();
        assert_eq!(s, b);
        assert_eq!(alg.rational_function().expand(10).coeffs_i64(), s);
    }
}
