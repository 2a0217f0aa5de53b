//! A finitely presented Lie superalgebra as the Lie subalgebra of its
//! enveloping algebra generated in degree one. By Poincaré–Birkhoff–Witt the
//! Lie algebra embeds, so brackets, ideals, subalgebras and annihilators are
//! computed on normal forms in the enveloping algebra.

use crate::field::Field;
use crate::sparse::{RowSpace, SparseVec};

use super::enveloping::Enveloping;
use super::expr::{expand_to_words, LieError, LieExpr, LiePresentation};

/// Column cap for the enveloping algebra construction.
pub const DEFAULT_CAP: usize = 1 << 22;

/// Homogeneous Lie element, stored in the enveloping algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<F> {
    pub degree: usize,
    pub vec: SparseVec<F>,
}

impl<F: Field> Element<F> {
    pub fn is_zero(&self) -> bool {
        self.vec.is_zero()
    }

    pub fn scale(&self, c: &F) -> Self {
        Element { degree: self.degree, vec: self.vec.scale(c) }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding elements of different degrees");
        Element { degree: self.degree, vec: self.vec.add(&other.vec) }
    }
}

/// How the labeled basis of each degree is picked from the candidates
/// `lie[x, modbas[d-1, j]]`, listed with `x` then `j` ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BasisOrder {
    /// Scan the candidates from the end, keep the independent ones, and
    /// label them in list order.
    #[default]
    Reverse,
    /// Keep the first independent candidates.
    Forward,
}

/// A linear subspace of one degree, with a chosen basis.
pub struct Subspace<F> {
    pub degree: usize,
    pub basis: Vec<Element<F>>,
    space: RowSpace<F>,
}

impl<F: Field> Subspace<F> {
    pub fn new(degree: usize) -> Self {
        Subspace { degree, basis: Vec::new(), space: RowSpace::new() }
    }

    pub fn spanned_by(degree: usize, elems: impl IntoIterator<Item = Element<F>>) -> Self {
        let mut s = Self::new(degree);
        for e in elems {
            s.push(e);
        }
        s
    }

    /// Adds `e` when independent; returns whether it was added.
    pub fn push(&mut self, e: Element<F>) -> bool {
        assert_eq!(e.degree, self.degree, "element of the wrong degree");
        if self.space.insert_tagged(&e.vec, SparseVec::unit(self.basis.len())) {
            self.basis.push(e);
            true
        } else {
            false
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, e: &Element<F>) -> bool {
        e.degree == self.degree && self.space.contains(&e.vec)
    }

    /// Coordinates of `e` in the chosen basis, if it lies in the span.
    pub fn coordinates(&self, e: &Element<F>) -> Option<SparseVec<F>> {
        if e.degree != self.degree {
            return None;
        }
        let (res, coords) = self.space.reduce_tracked(&e.vec);
        res.is_zero().then_some(coords)
    }

    pub fn contains_all(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|e| self.contains(e))
    }

    pub fn same_as(&self, other: &Subspace<F>) -> bool {
        self.dim() == other.dim() && self.contains_all(other)
    }

    /// Sum of two subspaces of the same degree.
    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        Subspace::spanned_by(self.degree, self.basis.iter().chain(&other.basis).cloned())
    }
}

pub struct LieAlgebra<F> {
    pres: LiePresentation,
    env: Enveloping<F>,
    /// `parts[d - 1]` is the degree-`d` component with its labeled basis.
    parts: Vec<Subspace<F>>,
    defs: Vec<Vec<LieExpr>>,
}

impl<F: Field> LieAlgebra<F> {
    pub fn new(pres: &LiePresentation, maxdeg: usize, order: BasisOrder, cap: usize) -> Result<Self, LieError> {
        let n = pres.generators.len();
        let rels = pres.relations.iter().map(|r| expand_to_words::<F>(r, n)).collect::<Result<Vec<_>, _>>()?;
        let env = Enveloping::new(n, &rels, maxdeg, cap)?;
        let mut alg = LieAlgebra { pres: pres.clone(), env, parts: Vec::new(), defs: Vec::new() };
        if maxdeg == 0 {
            return Ok(alg);
        }
        let unit = SparseVec::unit(0);
        let mut first = Subspace::new(1);
        let mut defs = Vec::new();
        for x in 0..n {
            let v = alg.env.left(x, &unit, 0)?;
            if first.push(Element { degree: 1, vec: v }) {
                defs.push(LieExpr::Gen(x));
            }
        }
        alg.parts.push(first);
        alg.defs.push(defs);
        for d in 2..=maxdeg {
            let prev = &alg.parts[d - 2];
            let mut candidates = Vec::with_capacity(n * prev.dim());
            for x in 0..n {
                let gx = Element { degree: 1, vec: alg.env.left(x, &unit, 0)? };
                for (j, b) in prev.basis.iter().enumerate() {
                    let expr = LieExpr::lie(LieExpr::Gen(x), alg.defs[d - 2][j].clone());
                    candidates.push((expr, alg.bracket(&gx, b)?));
                }
            }
            let mut part = Subspace::new(d);
            let mut chosen = Vec::new();
            match order {
                BasisOrder::Forward => {
                    for (expr, e) in candidates {
                        if part.push(e) {
                            chosen.push(expr);
                        }
                    }
                }
                BasisOrder::Reverse => {
                    let mut probe = Subspace::new(d);
                    let mut picked = Vec::new();
                    for (expr, e) in candidates.into_iter().rev() {
                        if probe.push(e.clone()) {
                            picked.push((expr, e));
                        }
                    }
                    for (expr, e) in picked.into_iter().rev() {
                        part.push(e);
                        chosen.push(expr);
                    }
                }
            }
            alg.parts.push(part);
            alg.defs.push(chosen);
        }
        Ok(alg)
    }

    pub fn presentation(&self) -> &LiePresentation {
        &self.pres
    }

    pub fn enveloping(&self) -> &Enveloping<F> {
        &self.env
    }

    pub fn max_degree(&self) -> usize {
        self.parts.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(Subspace::dim).collect()
    }

    fn check(&self, d: usize) -> Result<(), LieError> {
        if d == 0 || d > self.max_degree() {
            return Err(LieError::DegreeOutOfRange { degree: d, max: self.max_degree() });
        }
        Ok(())
    }

    pub fn component(&self, d: usize) -> Result<&Subspace<F>, LieError> {
        self.check(d)?;
        Ok(&self.parts[d - 1])
    }

    /// `modbas[d, i]`, 1-based.
    pub fn basis_element(&self, d: usize, i: usize) -> Result<&Element<F>, LieError> {
        self.check(d)?;
        self.parts[d - 1].basis.get(i.wrapping_sub(1)).ok_or(LieError::NoSuchBasisElement { degree: d, index: i })
    }

    /// The defining expression of `modbas[d, i]`.
    pub fn def(&self, d: usize, i: usize) -> Result<&LieExpr, LieError> {
        self.check(d)?;
        self.defs[d - 1].get(i.wrapping_sub(1)).ok_or(LieError::NoSuchBasisElement { degree: d, index: i })
    }

    /// Coordinates of a Lie element in the labeled basis (0-based indices).
    pub fn fed(&self, e: &Element<F>) -> Result<SparseVec<F>, LieError> {
        let part = self.component(e.degree)?;
        Ok(part.coordinates(e).expect("Lie elements lie in the span of the labeled basis"))
    }

    /// Coordinates as a dense list, for display.
    pub fn fed_dense(&self, e: &Element<F>) -> Result<Vec<F>, LieError> {
        let c = self.fed(e)?;
        Ok((0..self.component(e.degree)?.dim()).map(|i| c.get(i)).collect())
    }

    pub fn bracket(&self, a: &Element<F>, b: &Element<F>) -> Result<Element<F>, LieError> {
        let degree = a.degree + b.degree;
        Ok(Element { degree, vec: self.env.bracket(&a.vec, a.degree, &b.vec, b.degree)? })
    }

    pub fn generator(&self, x: usize) -> Result<Element<F>, LieError> {
        Ok(Element { degree: 1, vec: self.env.left(x, &SparseVec::unit(0), 0)? })
    }

    /// Evaluates an expression; `modbas[d, i]` refers to this algebra's labels.
    pub fn eval(&self, e: &LieExpr) -> Result<Element<F>, LieError> {
        match e {
            LieExpr::Gen(x) => self.generator(*x),
            LieExpr::Bracket(a, b) => self.bracket(&self.eval(a)?, &self.eval(b)?),
            LieExpr::Square(a) => {
                let x = self.eval(a)?;
                if x.degree % 2 == 0 {
                    return Err(LieError::EvenSquare(x.degree));
                }
                Ok(Element { degree: 2 * x.degree, vec: self.env.mul(&x.vec, x.degree, &x.vec, x.degree)? })
            }
            LieExpr::Sum(terms) => {
                let degree = e.degree()?;
                self.check(degree)?;
                let mut acc = Element { degree, vec: SparseVec::zero() };
                for (c, t) in terms {
                    acc = acc.add(&self.eval(t)?.scale(&F::from_i64(*c)));
                }
                Ok(acc)
            }
            LieExpr::Basis { degree, index } => self.basis_element(*degree, *index).cloned(),
        }
    }

    /// `mult[x, y]`: the bracket in coordinates of the labeled basis.
    pub fn mult(&self, a: &Element<F>, b: &Element<F>) -> Result<Vec<F>, LieError> {
        self.fed_dense(&self.bracket(a, b)?)
    }

    /// Degree-`n` component of the ideal generated by `gens`.
    pub fn ideal(&self, gens: &[Element<F>], n: usize) -> Result<Subspace<F>, LieError> {
        self.check(n)?;
        let Some(low) = gens.iter().map(|g| g.degree).min() else {
            return Ok(Subspace::new(n));
        };
        if low > n {
            return Ok(Subspace::new(n));
        }
        let generators: Vec<Element<F>> =
            (0..self.pres.generators.len()).map(|x| self.generator(x)).collect::<Result<_, _>>()?;
        let mut cur = Subspace::spanned_by(low, gens.iter().filter(|g| g.degree == low).cloned());
        for d in low + 1..=n {
            let mut next = Subspace::spanned_by(d, gens.iter().filter(|g| g.degree == d).cloned());
            for x in &generators {
                for u in &cur.basis {
                    next.push(self.bracket(x, u)?);
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Components `1..=maxdeg` of the subalgebra generated by `gens`.
    pub fn suba(&self, gens: &[Element<F>], maxdeg: usize) -> Result<Vec<Subspace<F>>, LieError> {
        self.check(maxdeg)?;
        let mut parts: Vec<Subspace<F>> = Vec::with_capacity(maxdeg);
        for d in 1..=maxdeg {
            let mut part = Subspace::spanned_by(d, gens.iter().filter(|g| g.degree == d).cloned());
            for g in gens.iter().filter(|g| g.degree < d) {
                for u in parts[d - g.degree - 1].basis.clone() {
                    part.push(self.bracket(g, &u)?);
                }
            }
            parts.push(part);
        }
        Ok(parts)
    }

    /// `{x in degree s : [x, a] = 0 for all a in A}`.
    pub fn ann(&self, a: &[Element<F>], s: usize) -> Result<Subspace<F>, LieError> {
        let part = self.component(s)?;
        let mut kernel = Subspace::new(s);
        if a.is_empty() {
            for e in &part.basis {
                kernel.push(e.clone());
            }
            return Ok(kernel);
        }
        for t in a.iter().map(|x| x.degree) {
            self.check(s + t)?;
        }
        let width = self.env.dim(s + a.iter().map(|x| x.degree).max().unwrap_or(0)) + 1;
        let mut images = RowSpace::new();
        for (i, e) in part.basis.iter().enumerate() {
            let mut stacked = Vec::new();
            for (k, x) in a.iter().enumerate() {
                let img = self.bracket(e, x)?;
                stacked.extend(img.vec.iter().map(|(j, c)| (k * width + j, c.clone())));
            }
            let img = SparseVec::from_entries(stacked);
            let (res, comb) = images.reduce_tracked(&img);
            if res.is_zero() {
                let coords = SparseVec::unit(i).sub(&comb);
                kernel.push(self.from_coordinates(s, &coords));
            } else {
                images.insert_tagged(&img, SparseVec::unit(i));
            }
        }
        Ok(kernel)
    }

    /// Element with the given coordinates in the labeled basis of degree `d`.
    pub fn from_coordinates(&self, d: usize, coords: &SparseVec<F>) -> Element<F> {
        let basis = &self.parts[d - 1].basis;
        let vec = coords.apply(|i| &basis[i].vec);
        Element { degree: d, vec }
    }
}
