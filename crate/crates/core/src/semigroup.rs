//! Numerical semigroups: membership, gaps, pseudo-Frobenius numbers,
//! symmetry and the symmetrization `S -> S̄_ḡ`.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::series::UniSeries;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("generator list is empty")]
    Empty,
    #[error("generators must be positive, got 0")]
    ZeroGenerator,
    #[error("generators have gcd {0}, expected 1")]
    NotCoprime(u64),
    #[error("symmetrization needs an odd ḡ, got {0}")]
    EvenGbar(u64),
    #[error("symmetrization needs ḡ >= 3F(S)+1 = {bound}, got {gbar}")]
    GbarTooSmall { gbar: u64, bound: i64 },
    #[error("the semigroup N has no pseudo-Frobenius numbers to symmetrize")]
    Trivial,
}

/// Numerical semigroup with a minimal, strictly increasing generator list.
///
/// Membership is answered from the Apéry set with respect to the smallest
/// generator: `apery[r]` is the least element of `S` congruent to `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    apery: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapData {
    pub frobenius: i64,
    pub gaps: Vec<u64>,
    /// Pseudo-Frobenius numbers in decreasing order.
    pub pseudo_frobenius: Vec<u64>,
    #[serde(rename = "type")]
    pub semigroup_type: usize,
}

impl NumericalSemigroup {
    pub fn new(generators: &[u64]) -> Result<Self, SemigroupError> {
        if generators.is_empty() {
            return Err(SemigroupError::Empty);
        }
        if generators.contains(&0) {
            return Err(SemigroupError::ZeroGenerator);
        }
        let g = generators.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(SemigroupError::NotCoprime(g));
        }
        let mut sorted: Vec<u64> = generators.to_vec();
        sorted.sort_unstable();
        sorted.dedup();

        // Drop generators already representable by the smaller ones.
        let mut minimal: Vec<u64> = Vec::new();
        for &x in &sorted {
            if !minimal.is_empty() && representable(&minimal, x) {
                continue;
            }
            minimal.push(x);
        }
        let apery = apery_set(&minimal);
        Ok(NumericalSemigroup { generators: minimal, apery })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let n = n as u64;
        n >= self.apery[(n % self.multiplicity()) as usize]
    }

    /// Largest integer outside `S`; `-1` for `S = N`.
    pub fn frobenius(&self) -> i64 {
        let max = *self.apery.iter().max().expect("nonempty Apéry set");
        max as i64 - self.multiplicity() as i64
    }

    pub fn gaps(&self) -> Vec<u64> {
        let f = self.frobenius();
        (0..=f.max(-1)).filter(|&n| !self.contains(n)).map(|n| n as u64).collect()
    }

    /// Gaps `z` with `z + s ∈ S` for every nonzero `s ∈ S`, largest first.
    pub fn pseudo_frobenius(&self) -> Vec<u64> {
        // Closure under addition makes it enough to test the generators.
        let mut pf: Vec<u64> = self
            .gaps()
            .into_iter()
            .filter(|&z| self.generators.iter().all(|&g| self.contains((z + g) as i64)))
            .collect();
        pf.sort_unstable_by(|a, b| b.cmp(a));
        pf
    }

    pub fn gap_data(&self) -> GapData {
        let pseudo_frobenius = self.pseudo_frobenius();
        GapData {
            frobenius: self.frobenius(),
            gaps: self.gaps(),
            semigroup_type: pseudo_frobenius.len(),
            pseudo_frobenius,
        }
    }

    /// `n ∈ S` or `F(S) - n ∈ S` for all `n`; checking `0..=F(S)` suffices.
    pub fn is_symmetric(&self) -> bool {
        let f = self.frobenius();
        (0..=f).all(|n| self.contains(n) || self.contains(f - n))
    }

    /// The symmetric semigroup `(2g_1, .., 2g_n, ḡ-2n_1, .., ḡ-2n_t)` built
    /// from the generators `g_i` and pseudo-Frobenius numbers `n_j`.
    pub fn symmetrize(&self, gbar: u64) -> Result<NumericalSemigroup, SemigroupError> {
        if gbar.is_multiple_of(2) {
            return Err(SemigroupError::EvenGbar(gbar));
        }
        let f = self.frobenius();
        if f < 0 {
            return Err(SemigroupError::Trivial);
        }
        let bound = 3 * f + 1;
        if (gbar as i64) < bound {
            return Err(SemigroupError::GbarTooSmall { gbar, bound });
        }
        let mut gens: Vec<u64> = self.generators.iter().map(|g| 2 * g).collect();
        gens.extend(self.pseudo_frobenius().into_iter().map(|z| gbar - 2 * z));
        NumericalSemigroup::new(&gens)
    }

    /// `{ n | 2n ∈ S }`, returned as a semigroup.
    pub fn halve(&self) -> NumericalSemigroup {
        // Every element of the half is bounded by the Frobenius number plus
        // the multiplicity window, so a finite scan recovers generators.
        let limit = (self.frobenius().max(0) as u64 + 2 * self.multiplicity()) / 2 + 1;
        let members: Vec<u64> = (1..=limit).filter(|&n| self.contains(2 * n as i64)).collect();
        NumericalSemigroup::new(&members).expect("half of a numerical semigroup is numerical")
    }

    /// `sum_{s ∈ S, s <= n} t^s`.
    pub fn hilbert_series(&self, n: usize) -> UniSeries {
        UniSeries::from_i64((0..=n).map(|d| i64::from(self.contains(d as i64))).collect())
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn representable(gens: &[u64], n: u64) -> bool {
    let mut reach = vec![false; n as usize + 1];
    reach[0] = true;
    for i in 1..=n as usize {
        reach[i] = gens.iter().any(|&g| g as usize <= i && reach[i - g as usize]);
    }
    reach[n as usize]
}

/// Shortest paths over residues modulo the smallest generator.
fn apery_set(gens: &[u64]) -> Vec<u64> {
    let m = gens[0];
    let mut dist = vec![u64::MAX; m as usize];
    dist[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, 0u64)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r as usize] {
            continue;
        }
        for &g in &gens[1..] {
            let nd = d + g;
            let nr = (r + g) % m;
            if nd < dist[nr as usize] {
                dist[nr as usize] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    dist
}

/// Checks the round trip `{ n | 2n ∈ S̄ } = S` without building the half.
pub fn halves_to(sym: &NumericalSemigroup, original: &NumericalSemigroup, limit: u64) -> bool {
    (0..=limit).all(|n| sym.contains(2 * n as i64) == original.contains(n as i64))
}

/// Elements of `S` up to `limit`, as a set (handy for oracles and reports).
pub fn elements_up_to(s: &NumericalSemigroup, limit: u64) -> BTreeSet<u64> {
    (0..=limit).filter(|&n| s.contains(n as i64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_s() -> NumericalSemigroup {
        NumericalSemigroup::new(&[18, 24, 25, 26, 28, 30, 33]).unwrap()
    }

    /// Exhaustive nonnegative combinations, independent of the Apéry route.
    fn brute_members(gens: &[u64], limit: u64) -> Vec<bool> {
        let mut reach = vec![false; limit as usize + 1];
        let mut stack = vec![0u64];
        while let Some(x) = stack.pop() {
            if reach[x as usize] {
                continue;
            }
            reach[x as usize] = true;
            for &g in gens {
                if x + g <= limit {
                    stack.push(x + g);
                }
            }
        }
        reach
    }

    #[test]
    fn gap_data_of_the_base_semigroup() {
        let gd = example_s().gap_data();
        assert_eq!(gd.frobenius, 65);
        assert_eq!(gd.pseudo_frobenius, vec![65, 45, 38, 34, 31]);
        assert_eq!(gd.semigroup_type, 5);
    }

    #[test]
    fn small_cases() {
        let s23 = NumericalSemigroup::new(&[2, 3]).unwrap();
        let gd = s23.gap_data();
        assert_eq!((gd.frobenius, gd.gaps.clone(), gd.pseudo_frobenius.clone()), (1, vec![1], vec![1]));
        assert!(s23.is_symmetric());
        assert!(!s23.contains(1));

        let n = NumericalSemigroup::new(&[1]).unwrap();
        let gd = n.gap_data();
        assert_eq!(gd.frobenius, -1);
        assert!(gd.gaps.is_empty() && gd.pseudo_frobenius.is_empty());
        assert_eq!(gd.semigroup_type, 0);
        assert_eq!(n.symmetrize(3), Err(SemigroupError::Trivial));
    }

    #[test]
    fn construction_errors_and_minimalization() {
        assert_eq!(NumericalSemigroup::new(&[]), Err(SemigroupError::Empty));
        assert_eq!(NumericalSemigroup::new(&[4, 6]), Err(SemigroupError::NotCoprime(2)));
        assert_eq!(NumericalSemigroup::new(&[0, 1]), Err(SemigroupError::ZeroGenerator));
        let s = NumericalSemigroup::new(&[6, 3, 5, 9, 10, 5]).unwrap();
        assert_eq!(s.generators(), &[3, 5]);
    }

    #[test]
    fn symmetrizations_match_the_listed_generators() {
        let s = example_s();
        let s197 = s.symmetrize(197).unwrap();
        assert_eq!(s197.generators(), &[36, 48, 50, 52, 56, 60, 66, 67, 107, 121, 129, 135]);
        let s199 = s.symmetrize(199).unwrap();
        assert_eq!(s199.generators(), &[36, 48, 50, 52, 56, 60, 66, 69, 109, 123, 131, 137]);
        assert!(s197.is_symmetric() && s199.is_symmetric());
        assert!(!s.is_symmetric());
        assert_eq!(s.symmetrize(195), Err(SemigroupError::GbarTooSmall { gbar: 195, bound: 196 }));
        assert_eq!(s.symmetrize(198), Err(SemigroupError::EvenGbar(198)));
    }

    #[test]
    fn membership_examples() {
        let s197 = example_s().symmetrize(197).unwrap();
        assert!(s197.contains(36));
        assert!(!s197.contains(35));
        let brute = brute_members(s197.generators(), 400);
        for n in 0..=400 {
            assert_eq!(s197.contains(n as i64), brute[n], "n = {n}");
        }
        assert!(!s197.contains(-4));
    }

    #[test]
    fn hilbert_series_examples() {
        let s23 = NumericalSemigroup::new(&[2, 3]).unwrap();
        assert_eq!(s23.hilbert_series(5).coeffs_i64(), vec![1, 0, 1, 1, 1, 1]);
        let n = NumericalSemigroup::new(&[1]).unwrap();
        assert_eq!(n.hilbert_series(3).coeffs_i64(), vec![1, 1, 1, 1]);
        let s197 = example_s().symmetrize(197).unwrap();
        let h = s197.hilbert_series(48).coeffs_i64();
        let support: Vec<usize> = h.iter().enumerate().filter(|(_, &c)| c == 1).map(|(i, _)| i).collect();
        assert_eq!(support, vec![0, 36, 48]);
    }

    #[test]
    fn symmetrization_sweep_round_trips() {
        let s = example_s();
        for gbar in (197..=221).step_by(2) {
            let sym = s.symmetrize(gbar).unwrap();
            assert!(sym.is_symmetric(), "ḡ = {gbar}");
            assert!(halves_to(&sym, &s, 200), "ḡ = {gbar}");
            assert_eq!(sym.halve(), s);
        }
    }
}
