//! Sparse vectors and an incremental echelon form over any [`Field`].

use std::collections::{BTreeMap, HashMap};

use crate::field::Field;

/// Sparse vector with entries sorted by index and no explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> SparseVec<F> {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, F::one())] }
    }

    /// Builds a vector from unsorted entries, summing duplicates.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, F)>) -> Self {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (i, c) in entries {
            let slot = acc.entry(i).or_insert_with(F::zero);
            *slot = slot.add(&c);
        }
        Self::from_map(acc)
    }

    fn from_map(map: BTreeMap<usize, F>) -> Self {
        SparseVec { entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, F)> {
        self.entries.iter()
    }

    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, alpha: &F) -> Self {
        if alpha.is_zero() {
            return Self::zero();
        }
        SparseVec { entries: self.entries.iter().map(|(i, c)| (*i, c.mul(alpha))).collect() }
    }

    pub fn neg(&self) -> Self {
        SparseVec { entries: self.entries.iter().map(|(i, c)| (*i, c.neg())).collect() }
    }

    /// `self + alpha * other`
    pub fn add_scaled(&self, alpha: &F, other: &Self) -> Self {
        if alpha.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y.mul(alpha)));
                        b.next();
                    } else {
                        let v = x.add(&y.mul(alpha));
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y.mul(alpha)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&F::one().neg(), other)
    }

    /// Applies a linear map given column by column: `sum_i v_i * cols(i)`.
    pub fn apply<'a>(&self, mut cols: impl FnMut(usize) -> &'a SparseVec<F>) -> SparseVec<F>
    where
        F: 'a,
    {
        let mut acc = Accumulator::new();
        for (i, c) in &self.entries {
            acc.add_scaled(c, cols(*i));
        }
        acc.finish()
    }

    pub fn into_entries(self) -> Vec<(usize, F)> {
        self.entries
    }
}

/// Sum of many sparse vectors without repeated merging.
pub struct Accumulator<F> {
    map: BTreeMap<usize, F>,
}

impl<F: Field> Default for Accumulator<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Accumulator<F> {
    pub fn new() -> Self {
        Accumulator { map: BTreeMap::new() }
    }

    pub fn add_scaled(&mut self, alpha: &F, v: &SparseVec<F>) {
        for (i, c) in v.iter() {
            let slot = self.map.entry(*i).or_insert_with(F::zero);
            *slot = slot.add(&c.mul(alpha));
        }
    }

    pub fn add_term(&mut self, i: usize, c: &F) {
        let slot = self.map.entry(i).or_insert_with(F::zero);
        *slot = slot.add(c);
    }

    pub fn finish(self) -> SparseVec<F> {
        SparseVec::from_map(self.map)
    }
}

struct Row<F> {
    vec: SparseVec<F>,
    tag: SparseVec<F>,
}

/// Row space kept in echelon form, pivot = largest column index of a row.
///
/// Each inserted vector is fully reduced against the rows already present,
/// so [`RowSpace::reduce`] returns the canonical normal form of a vector
/// modulo the span. Rows may carry a tag vector; the tag of a reduced
/// combination is tracked alongside, which is how coordinates with respect
/// to a greedily chosen basis are recovered.
pub struct RowSpace<F> {
    rows: Vec<Row<F>>,
    pivot_row: HashMap<usize, usize>,
    tracking: bool,
}

impl<F: Field> Default for RowSpace<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> RowSpace<F> {
    pub fn new() -> Self {
        RowSpace { rows: Vec::new(), pivot_row: HashMap::new(), tracking: false }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.vec.max_index().expect("nonzero row"))
    }

    fn reduce_inner(&self, v: &SparseVec<F>, track: bool) -> (SparseVec<F>, SparseVec<F>) {
        let mut work: BTreeMap<usize, F> = v.iter().cloned().collect();
        let mut residual = Vec::new();
        let mut tag = Accumulator::new();
        while let Some((col, c)) = work.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.pivot_row.get(&col) {
                None => residual.push((col, c)),
                Some(&r) => {
                    let row = &self.rows[r];
                    // The pivot coefficient is one; the rest lies strictly below `col`.
                    for (j, a) in row.vec.iter() {
                        if *j == col {
                            continue;
                        }
                        let slot = work.entry(*j).or_insert_with(F::zero);
                        slot.sub_mul_assign(&c, a);
                    }
                    if track {
                        tag.add_scaled(&c, &row.tag);
                    }
                }
            }
        }
        residual.reverse();
        (SparseVec { entries: residual }, tag.finish())
    }

    /// Normal form of `v` modulo the row space.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        self.reduce_inner(v, false).0
    }

    /// Normal form plus the tag combination `t` with `v = residual + (rows of t)`.
    pub fn reduce_tracked(&self, v: &SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
        self.reduce_inner(v, true)
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns false when it already lies in the span.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        self.insert_tagged(v, SparseVec::zero())
    }

    pub fn insert_tagged(&mut self, v: &SparseVec<F>, tag: SparseVec<F>) -> bool {
        self.tracking |= !tag.is_zero();
        let (residual, comb) = self.reduce_inner(v, self.tracking);
        let Some((pivot, lead)) = residual.entries.last().cloned() else {
            return false;
        };
        let inv = lead.inv();
        let row = Row { vec: residual.scale(&inv), tag: tag.sub(&comb).scale(&inv) };
        self.pivot_row.insert(pivot, self.rows.len());
        self.rows.push(row);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn v(entries: &[(usize, i64)]) -> SparseVec<Rational> {
        SparseVec::from_entries(entries.iter().map(|&(i, c)| (i, Rational::from_i64(c))))
    }

    #[test]
    fn add_scaled_cancels() {
        let a = v(&[(0, 1), (3, 2)]);
        let b = v(&[(3, 1), (5, 1)]);
        let c = a.add_scaled(&Rational::from_i64(-2), &b);
        assert_eq!(c, v(&[(0, 1), (5, -2)]));
    }

    #[test]
    fn rank_and_normal_form() {
        let mut rs = RowSpace::new();
        assert!(rs.insert(&v(&[(0, 1), (1, 1)])));
        assert!(rs.insert(&v(&[(1, 1), (2, 1)])));
        assert!(!rs.insert(&v(&[(0, 1), (2, -1)])));
        assert_eq!(rs.rank(), 2);
        // e2 = e0 - (e0+e1) + (e1+e2) reduces to e0 modulo the span
        assert_eq!(rs.reduce(&v(&[(2, 1)])), v(&[(0, 1)]));
    }

    #[test]
    fn tracked_coordinates() {
        let mut rs = RowSpace::new();
        let b0 = v(&[(0, 1), (1, 1)]);
        let b1 = v(&[(1, 1), (2, 2)]);
        rs.insert_tagged(&b0, SparseVec::unit(0));
        rs.insert_tagged(&b1, SparseVec::unit(1));
        let target = b0.scale(&Rational::from_i64(3)).add_scaled(&Rational::from_ratio(-1, 2), &b1);
        let (res, coords) = rs.reduce_tracked(&target);
        assert!(res.is_zero());
        assert_eq!(coords, v(&[(0, 3)]).add(&SparseVec::from_entries([(1, Rational::from_ratio(-1, 2))])));
    }
}
