//! Graded quotients `T(V)/(R)` of the free associative algebra, built one
//! degree at a time.
//!
//! With `A = T(V)/(R)` known below degree `d`, `A_d` is the quotient of
//! `V ⊗ A_(d-1)` by the images of `r ⊗ A_(d-k)` for relations `r` of degree
//! `k`. Row reduction with the largest column as pivot leaves the non-pivot
//! columns as a basis of standard words, closed under taking suffixes, and
//! the normal form of every column gives left multiplication by a generator.

use crate::field::Field;
use crate::sparse::{Accumulator, RowSpace, SparseVec};

use super::expr::{word_letters, LieError, WordVec};

struct Degree<F> {
    /// Basis element `i` is `x · b_j` for `words[i] = (x, j)`, `b_j` a basis
    /// element one degree lower.
    words: Vec<(usize, usize)>,
    /// `left[x][j] = x · b_j` in this degree.
    left: Vec<Vec<SparseVec<F>>>,
    /// `right[x][j] = b_j · x` in this degree.
    right: Vec<Vec<SparseVec<F>>>,
}

pub struct Enveloping<F> {
    ngens: usize,
    degrees: Vec<Degree<F>>,
}

impl<F: Field> Enveloping<F> {
    /// `relations` are homogeneous word vectors of degree at least two.
    /// `cap` bounds the column count `ngens * dim A_(d-1)` of any step.
    pub fn new(ngens: usize, relations: &[WordVec<F>], maxdeg: usize, cap: usize) -> Result<Self, LieError> {
        let mut env = Enveloping {
            ngens,
            degrees: vec![Degree { words: vec![(usize::MAX, 0)], left: Vec::new(), right: Vec::new() }],
        };
        for d in 1..=maxdeg {
            env.extend(relations, d, cap)?;
        }
        Ok(env)
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn dim(&self, d: usize) -> usize {
        self.degrees[d].words.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|g| g.words.len()).collect()
    }

    fn check(&self, d: usize) -> Result<(), LieError> {
        if d > self.max_degree() {
            return Err(LieError::DegreeOutOfRange { degree: d, max: self.max_degree() });
        }
        Ok(())
    }

    /// Letters of basis element `i` in degree `d`.
    pub fn word(&self, d: usize, mut i: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(d);
        for k in (1..=d).rev() {
            let (x, j) = self.degrees[k].words[i];
            out.push(x);
            i = j;
        }
        out
    }

    /// `x · v` for `v` in degree `d`.
    pub fn left(&self, x: usize, v: &SparseVec<F>, d: usize) -> Result<SparseVec<F>, LieError> {
        self.check(d + 1)?;
        let cols = &self.degrees[d + 1].left[x];
        Ok(v.apply(|j| &cols[j]))
    }

    /// `v · x` for `v` in degree `d`.
    pub fn right(&self, x: usize, v: &SparseVec<F>, d: usize) -> Result<SparseVec<F>, LieError> {
        self.check(d + 1)?;
        let cols = &self.degrees[d + 1].right[x];
        Ok(v.apply(|j| &cols[j]))
    }

    /// `w · v` for a word `w` (letters first to last) and `v` in degree `d`.
    pub fn act_word(&self, w: &[usize], v: &SparseVec<F>, d: usize) -> Result<SparseVec<F>, LieError> {
        let mut cur = v.clone();
        for (k, &x) in w.iter().rev().enumerate() {
            cur = self.left(x, &cur, d + k)?;
        }
        Ok(cur)
    }

    /// Product `u · v` of homogeneous elements of degrees `du`, `dv`.
    pub fn mul(&self, u: &SparseVec<F>, du: usize, v: &SparseVec<F>, dv: usize) -> Result<SparseVec<F>, LieError> {
        self.check(du + dv)?;
        if dv == 1 {
            let mut acc = Accumulator::new();
            for (x, c) in v.iter() {
                acc.add_scaled(c, &self.right(*x, u, du)?);
            }
            return Ok(acc.finish());
        }
        let mut acc = Accumulator::new();
        for (i, c) in u.iter() {
            acc.add_scaled(c, &self.act_word(&self.word(du, *i), v, dv)?);
        }
        Ok(acc.finish())
    }

    /// `[u, v] = uv - (-1)^(|u||v|) vu`
    pub fn bracket(&self, u: &SparseVec<F>, du: usize, v: &SparseVec<F>, dv: usize) -> Result<SparseVec<F>, LieError> {
        let uv = self.mul(u, du, v, dv)?;
        let vu = self.mul(v, dv, u, du)?;
        let s = if du % 2 == 1 && dv % 2 == 1 { F::one() } else { F::one().neg() };
        Ok(uv.add_scaled(&s, &vu))
    }

    /// Image of a word-space vector.
    pub fn from_words(&self, w: &WordVec<F>) -> Result<SparseVec<F>, LieError> {
        self.check(w.degree)?;
        let unit = SparseVec::unit(0);
        let mut acc = Accumulator::new();
        for (idx, c) in w.vec.iter() {
            acc.add_scaled(c, &self.act_word(&word_letters(self.ngens, *idx, w.degree), &unit, 0)?);
        }
        Ok(acc.finish())
    }

    fn extend(&mut self, relations: &[WordVec<F>], d: usize, cap: usize) -> Result<(), LieError> {
        let g = self.ngens;
        let prev = self.dim(d - 1);
        let ncols = g * prev;
        if ncols > cap {
            return Err(LieError::TooLarge { degree: d, count: ncols, cap });
        }
        // column (x, j) of V ⊗ A_(d-1) has index x * prev + j
        let mut space = RowSpace::new();
        for r in relations.iter().filter(|r| r.degree <= d && r.degree >= 2) {
            let k = r.degree;
            for u in 0..self.dim(d - k) {
                let unit = SparseVec::unit(u);
                let mut acc = Accumulator::new();
                for (w, c) in r.vec.iter() {
                    let letters = word_letters(g, *w, k);
                    let tail = self.act_word(&letters[1..], &unit, d - k)?;
                    let shifted = SparseVec::from_entries(tail.iter().map(|(j, a)| (letters[0] * prev + j, a.clone())));
                    acc.add_scaled(c, &shifted);
                }
                space.insert(&acc.finish());
            }
        }
        let mut index = vec![usize::MAX; ncols];
        let mut words = Vec::new();
        for (col, slot) in index.iter_mut().enumerate() {
            if !space.is_pivot(col) {
                *slot = words.len();
                words.push((col / prev, col % prev));
            }
        }
        let relabel =
            |v: SparseVec<F>| SparseVec::from_entries(v.into_entries().into_iter().map(|(c, a)| (index[c], a)));
        let left: Vec<Vec<SparseVec<F>>> = (0..g)
            .map(|x| (0..prev).map(|j| relabel(space.reduce(&SparseVec::unit(x * prev + j)))).collect())
            .collect();
        self.degrees.push(Degree { words, left, right: Vec::new() });

        // right multiplication: (y · b') · x = y · (b' · x)
        let right: Vec<Vec<SparseVec<F>>> = (0..g)
            .map(|x| {
                (0..prev)
                    .map(|j| {
                        if d == 1 {
                            return self.degrees[1].left[x][0].clone();
                        }
                        let (y, tail) = self.degrees[d - 1].words[j];
                        let tx = self.degrees[d - 1].right[x][tail].clone();
                        let cols = &self.degrees[d].left[y];
                        tx.apply(|i| &cols[i])
                    })
                    .collect()
            })
            .collect();
        self.degrees[d].right = right;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};
    use crate::lie::expr::{expand_to_words, parse_presentation, LiePresentation};
    use crate::lie::words::word_assoc_dims;

    fn env<F: Field>(p: &LiePresentation, maxdeg: usize) -> Enveloping<F> {
        let rels: Vec<_> = p.relations.iter().map(|r| expand_to_words(r, p.generators.len()).unwrap()).collect();
        Enveloping::new(p.generators.len(), &rels, maxdeg, 1 << 24).unwrap()
    }

    #[test]
    fn free_and_exterior() {
        let free = parse_presentation("generators={x,y}\nrelations={}").unwrap();
        assert_eq!(env::<Rational>(&free, 4).dims(), vec![1, 2, 4, 8, 16]);
        let ext =
            parse_presentation("generators={x,y,z}\nrelations={sq[x],sq[y],sq[z],lie[x,y],lie[x,z],lie[y,z]}").unwrap();
        assert_eq!(env::<Rational>(&ext, 4).dims(), vec![1, 3, 3, 1, 0]);
    }

    #[test]
    fn matches_word_route_with_cubic_relation() {
        let p =
            parse_presentation("generators={b,c,d}\nrelations={lie[b,c], sq[c]+lie[b,d], lie[d,lie[d,b]]}").unwrap();
        let e = env::<Rational>(&p, 5);
        assert_eq!(e.dims(), word_assoc_dims::<Rational>(&p, 5, 1 << 20).unwrap());
        assert_eq!(env::<Fp>(&p, 5).dims(), e.dims());
    }

    /// Products computed through normal forms agree with word concatenation.
    #[test]
    fn products_are_associative_images() {
        let p = parse_presentation("generators={b,c,d}\nrelations={lie[b,c], sq[c]+lie[b,d]}").unwrap();
        let e = env::<Rational>(&p, 5);
        let n = 3;
        let w = |idx: usize, deg: usize| WordVec { degree: deg, vec: SparseVec::<Rational>::unit(idx) };
        for (a, da) in [(5usize, 2usize), (1, 1), (20, 3)] {
            for (b, db) in [(2usize, 1usize), (7, 2)] {
                let ua = e.from_words(&w(a, da)).unwrap();
                let ub = e.from_words(&w(b, db)).unwrap();
                let prod = e.mul(&ua, da, &ub, db).unwrap();
                let direct = e.from_words(&crate::lie::expr::concat(n, &w(a, da), &w(b, db))).unwrap();
                assert_eq!(prod, direct);
            }
        }
        // basis words reproduce their basis vectors
        for d in 0..=4 {
            for i in 0..e.dim(d) {
                let letters = e.word(d, i);
                let idx = letters.iter().fold(0, |acc, &x| acc * n + x);
                assert_eq!(e.from_words(&w(idx, d)).unwrap(), SparseVec::unit(i));
            }
        }
    }
}
