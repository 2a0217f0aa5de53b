//! Lie elements as vectors in the free associative algebra: free Lie
//! components and quotient dimensions computed entirely in the word space.
//! Exponential in the degree, so this route serves as a low-degree oracle.

use crate::field::Field;
use crate::sparse::RowSpace;

use super::expr::{expand_to_words, word_bracket, LieError, LiePresentation, WordVec};

/// Independent spanning set of a graded piece together with its echelon form.
pub struct WordSpan<F> {
    pub basis: Vec<WordVec<F>>,
    space: RowSpace<F>,
}

impl<F: Field> WordSpan<F> {
    fn new() -> Self {
        WordSpan { basis: Vec::new(), space: RowSpace::new() }
    }

    fn push(&mut self, v: WordVec<F>) -> bool {
        if self.space.insert(&v.vec) {
            self.basis.push(v);
            true
        } else {
            false
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &WordVec<F>) -> bool {
        self.space.contains(&v.vec)
    }
}

fn check_cap(degree: usize, ngens: usize, cap: usize) -> Result<(), LieError> {
    let count = ngens.checked_pow(degree as u32).unwrap_or(usize::MAX);
    if count > cap {
        return Err(LieError::TooLarge { degree, count, cap });
    }
    Ok(())
}

fn gens<F: Field>(ngens: usize) -> Vec<WordVec<F>> {
    (0..ngens).map(|g| WordVec { degree: 1, vec: crate::sparse::SparseVec::unit(g) }).collect()
}

/// Components `L_1..L_maxdeg` of the free Lie superalgebra on `ngens` odd
/// generators: `L_d = span [x, L_(d-1)]`.
pub fn free_lie<F: Field>(ngens: usize, maxdeg: usize, cap: usize) -> Result<Vec<WordSpan<F>>, LieError> {
    let mut out: Vec<WordSpan<F>> = Vec::new();
    let mut first = WordSpan::new();
    for g in gens(ngens) {
        first.push(g);
    }
    out.push(first);
    for d in 2..=maxdeg {
        check_cap(d, ngens, cap)?;
        let mut next = WordSpan::new();
        for x in gens::<F>(ngens) {
            for b in &out[d - 2].basis {
                next.push(word_bracket(ngens, &x, b));
            }
        }
        out.push(next);
    }
    Ok(out)
}

pub fn free_lie_dims(ngens: usize, maxdeg: usize, cap: usize) -> Result<Vec<usize>, LieError> {
    Ok(free_lie::<crate::field::Fp>(ngens, maxdeg, cap)?.iter().map(WordSpan::dim).collect())
}

fn relations_by_degree<F: Field>(p: &LiePresentation, maxdeg: usize) -> Result<Vec<Vec<WordVec<F>>>, LieError> {
    let n = p.generators.len();
    let mut by = vec![Vec::new(); maxdeg + 1];
    for r in &p.relations {
        let w = expand_to_words::<F>(r, n)?;
        if w.degree <= maxdeg {
            by[w.degree].push(w);
        }
    }
    Ok(by)
}

/// Ideal components `I_d = [L_1, I_(d-1)] + R_d`, and the quotient
/// dimensions `dim L_d - dim I_d`.
pub fn word_quotient_dims<F: Field>(p: &LiePresentation, maxdeg: usize, cap: usize) -> Result<Vec<usize>, LieError> {
    let n = p.generators.len();
    let free = free_lie::<F>(n, maxdeg, cap)?;
    let rels = relations_by_degree::<F>(p, maxdeg)?;
    let mut ideal: Vec<WordSpan<F>> = vec![WordSpan::new()];
    for d in 2..=maxdeg {
        let mut next = WordSpan::new();
        for x in gens::<F>(n) {
            for b in &ideal[d - 2].basis {
                next.push(word_bracket(n, &x, b));
            }
        }
        for r in &rels[d] {
            next.push(r.clone());
        }
        ideal.push(next);
    }
    Ok(free.iter().zip(&ideal).map(|(l, i)| l.dim() - i.dim()).collect())
}

/// Same ideal built from every bracket `[L_j, I_(d-j)]`; slower, used to
/// confirm that brackets with degree-one elements already suffice.
pub fn word_ideal_dims_full<F: Field>(p: &LiePresentation, maxdeg: usize, cap: usize) -> Result<Vec<usize>, LieError> {
    let n = p.generators.len();
    let free = free_lie::<F>(n, maxdeg, cap)?;
    let rels = relations_by_degree::<F>(p, maxdeg)?;
    let mut ideal: Vec<WordSpan<F>> = vec![WordSpan::new()];
    for d in 2..=maxdeg {
        let mut next = WordSpan::new();
        for j in 1..d {
            for a in &free[j - 1].basis {
                for b in &ideal[d - j - 1].basis {
                    next.push(word_bracket(n, a, b));
                }
            }
        }
        for r in &rels[d] {
            next.push(r.clone());
        }
        ideal.push(next);
    }
    Ok(ideal.iter().map(WordSpan::dim).collect())
}

/// Dimensions of `T(V) / (R)` by `I_d = V I_(d-1) + sum_r r T_(d - deg r)`,
/// listing every word product. Independent of the normal-form construction.
pub fn word_assoc_dims<F: Field>(p: &LiePresentation, maxdeg: usize, cap: usize) -> Result<Vec<usize>, LieError> {
    use super::expr::concat;
    use crate::sparse::SparseVec;
    let n = p.generators.len();
    let rels = relations_by_degree::<F>(p, maxdeg)?;
    let mut ideal: Vec<WordSpan<F>> = vec![WordSpan::new()];
    let mut dims = vec![1usize];
    for d in 1..=maxdeg {
        check_cap(d, n, cap)?;
        let mut next = WordSpan::new();
        for x in gens::<F>(n) {
            for b in &ideal[d - 1].basis {
                next.push(concat(n, &x, b));
            }
        }
        for (k, rs) in rels.iter().enumerate().take(d + 1) {
            if k == 0 || rs.is_empty() {
                continue;
            }
            let tails = d - k;
            for r in rs {
                for w in 0..n.pow(tails as u32) {
                    let tail = WordVec { degree: tails, vec: SparseVec::unit(w) };
                    next.push(concat(n, r, &tail));
                }
            }
        }
        dims.push(n.pow(d as u32) - next.dim());
        ideal.push(next);
    }
    Ok(dims)
}
