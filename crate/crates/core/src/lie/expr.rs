//! Lie expressions in bracket syntax and their expansion into the free
//! associative algebra.

use std::fmt;

use thiserror::Error;

use crate::field::Field;
use crate::sparse::{Accumulator, SparseVec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LieError {
    #[error("position {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("mixed degrees {0} and {1} in one sum")]
    NotHomogeneous(usize, usize),
    #[error("sq[...] needs an odd element, got degree {0}")]
    EvenSquare(usize),
    #[error("only odd generators are supported (gensign {0})")]
    UnsupportedSign(i64),
    #[error("degree {degree} is beyond the computed range {max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("modbas[{degree},{index}] does not exist")]
    NoSuchBasisElement { degree: usize, index: usize },
    #[error("{count} columns in degree {degree} exceed the cap {cap}")]
    TooLarge { degree: usize, count: usize, cap: usize },
    #[error("{0} cannot be expanded without a computed basis")]
    NeedsBasis(String),
    #[error("relation {0} has degree below two")]
    LowDegreeRelation(usize),
    #[error("missing section '{0}'")]
    MissingSection(&'static str),
}

/// A Lie superalgebra expression in generators of degree one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieExpr {
    Gen(usize),
    Bracket(Box<LieExpr>, Box<LieExpr>),
    /// `sq[x] = [x, x] / 2` for odd `x`
    Square(Box<LieExpr>),
    /// Integer combination of expressions of equal degree.
    Sum(Vec<(i64, LieExpr)>),
    /// `modbas[degree, index]`, 1-based.
    Basis {
        degree: usize,
        index: usize,
    },
}

impl LieExpr {
    pub fn lie(a: LieExpr, b: LieExpr) -> Self {
        LieExpr::Bracket(Box::new(a), Box::new(b))
    }

    pub fn sq(a: LieExpr) -> Self {
        LieExpr::Square(Box::new(a))
    }

    /// Right-nested bracket `[g_0, [g_1, [..., g_k]]]` of generator indices.
    pub fn right_normed(gens: &[usize]) -> Self {
        let (last, rest) = gens.split_last().expect("at least one generator");
        rest.iter().rev().fold(LieExpr::Gen(*last), |acc, &g| LieExpr::lie(LieExpr::Gen(g), acc))
    }

    pub fn degree(&self) -> Result<usize, LieError> {
        match self {
            LieExpr::Gen(_) => Ok(1),
            LieExpr::Bracket(a, b) => Ok(a.degree()? + b.degree()?),
            LieExpr::Square(a) => {
                let d = a.degree()?;
                if d % 2 == 0 {
                    return Err(LieError::EvenSquare(d));
                }
                Ok(2 * d)
            }
            LieExpr::Sum(terms) => {
                let mut deg = None;
                for (_, t) in terms {
                    let d = t.degree()?;
                    match deg {
                        None => deg = Some(d),
                        Some(e) if e != d => return Err(LieError::NotHomogeneous(e, d)),
                        _ => {}
                    }
                }
                deg.ok_or(LieError::NotHomogeneous(0, 0))
            }
            LieExpr::Basis { degree, .. } => Ok(*degree),
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> ExprDisplay<'a> {
        ExprDisplay { expr: self, names }
    }
}

pub struct ExprDisplay<'a> {
    expr: &'a LieExpr,
    names: &'a [String],
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |e: &'_ LieExpr| ExprDisplay { expr: e, names: self.names }.to_string();
        match self.expr {
            LieExpr::Gen(g) => write!(f, "{}", self.names.get(*g).map(String::as_str).unwrap_or("?")),
            LieExpr::Bracket(a, b) => write!(f, "lie[{}, {}]", sub(a), sub(b)),
            LieExpr::Square(a) => write!(f, "sq[{}]", sub(a)),
            LieExpr::Basis { degree, index } => write!(f, "modbas[{degree}, {index}]"),
            LieExpr::Sum(terms) => {
                for (i, (c, t)) in terms.iter().enumerate() {
                    let body = sub(t);
                    match (i, *c) {
                        (0, 1) => write!(f, "{body}")?,
                        (0, -1) => write!(f, "-{body}")?,
                        (0, c) => write!(f, "{c}*{body}")?,
                        (_, 1) => write!(f, "+{body}")?,
                        (_, -1) => write!(f, "-{body}")?,
                        (_, c) if c < 0 => write!(f, "{c}*{body}")?,
                        (_, c) => write!(f, "+{c}*{body}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> LieError {
        LieError::Parse { pos: self.pos, message: message.into() }
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), LieError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<i64, LieError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("expected a number"))
    }

    fn sum(&mut self) -> Result<LieExpr, LieError> {
        let mut terms = Vec::new();
        let mut sign = 1;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (c, t) = self.term()?;
            terms.push((sign * c, t));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => break,
            }
        }
        let e = if terms.len() == 1 && terms[0].0 == 1 { terms.pop().unwrap().1 } else { LieExpr::Sum(terms) };
        e.degree()?;
        Ok(e)
    }

    fn term(&mut self) -> Result<(i64, LieExpr), LieError> {
        let mut c = 1;
        if matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
            c = self.number()?;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            }
        }
        Ok((c, self.atom()?))
    }

    fn atom(&mut self) -> Result<LieExpr, LieError> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let e = self.sum()?;
            self.expect(b')')?;
            return Ok(e);
        }
        let start = self.pos;
        let Some(name) = self.ident() else { return Err(self.err("expected an expression")) };
        match name.as_str() {
            "lie" => {
                self.expect(b'[')?;
                let a = self.sum()?;
                self.expect(b',')?;
                let b = self.sum()?;
                self.expect(b']')?;
                Ok(LieExpr::lie(a, b))
            }
            "sq" => {
                self.expect(b'[')?;
                let a = self.sum()?;
                self.expect(b']')?;
                Ok(LieExpr::sq(a))
            }
            "modbas" => {
                self.expect(b'[')?;
                let degree = self.number()? as usize;
                self.expect(b',')?;
                let index = self.number()? as usize;
                self.expect(b']')?;
                if degree == 0 || index == 0 {
                    return Err(LieError::NoSuchBasisElement { degree, index });
                }
                Ok(LieExpr::Basis { degree, index })
            }
            _ => match self.names.iter().position(|n| *n == name) {
                Some(g) => Ok(LieExpr::Gen(g)),
                None => {
                    self.pos = start;
                    Err(LieError::UnknownGenerator(name))
                }
            },
        }
    }
}

/// Parses one homogeneous expression over the named generators.
pub fn parse_expr(text: &str, names: &[String]) -> Result<LieExpr, LieError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, names };
    let e = p.sum()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses a comma-separated list of expressions, brackets nesting.
pub fn parse_expr_list(text: &str, names: &[String]) -> Result<Vec<LieExpr>, LieError> {
    split_top_level(text).into_iter().filter(|s| !s.trim().is_empty()).map(|s| parse_expr(s, names)).collect()
}

fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in text.char_indices() {
        match c {
            '[' | '(' | '{' => depth += 1,
            ']' | ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// Odd generators of degree one and homogeneous relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiePresentation {
    pub generators: Vec<String>,
    pub relations: Vec<LieExpr>,
}

impl LiePresentation {
    pub fn new(generators: Vec<String>, relations: Vec<LieExpr>) -> Result<Self, LieError> {
        for (i, r) in relations.iter().enumerate() {
            if r.degree()? < 2 {
                return Err(LieError::LowDegreeRelation(i));
            }
            if contains_basis(r) {
                return Err(LieError::NeedsBasis(r.display(&generators).to_string()));
            }
        }
        Ok(LiePresentation { generators, relations })
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|n| n == name)
    }

    pub fn with_relations(&self, extra: &[LieExpr]) -> Result<Self, LieError> {
        let mut rels = self.relations.clone();
        rels.extend_from_slice(extra);
        Self::new(self.generators.clone(), rels)
    }
}

fn contains_basis(e: &LieExpr) -> bool {
    match e {
        LieExpr::Gen(_) => false,
        LieExpr::Basis { .. } => true,
        LieExpr::Bracket(a, b) => contains_basis(a) || contains_basis(b),
        LieExpr::Square(a) => contains_basis(a),
        LieExpr::Sum(t) => t.iter().any(|(_, x)| contains_basis(x)),
    }
}

/// Strips `(* ... *)` comments.
fn strip_comments(text: &str) -> String {
    let mut out = String::new();
    let mut rest = text;
    while let Some(i) = rest.find("(*") {
        out.push_str(&rest[..i]);
        rest = match rest[i..].find("*)") {
            Some(j) => &rest[i + j + 2..],
            None => "",
        };
    }
    out.push_str(rest);
    out
}

fn braced<'a>(text: &'a str, key: &'static str) -> Result<&'a str, LieError> {
    let start = text.find(key).ok_or(LieError::MissingSection(key))?;
    let after = &text[start + key.len()..];
    let open = after.find('{').ok_or(LieError::MissingSection(key))?;
    let mut depth = 0;
    for (i, c) in after[open..].char_indices() {
        match c {
            '{' => depth += 1,
            '}' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(&after[open + 1..open + i]);
                }
            }
            _ => {}
        }
    }
    Err(LieError::MissingSection(key))
}

/// Reads `generators={...}`, optional `gensigns={...}` and `relations={...}`.
pub fn parse_presentation(text: &str) -> Result<LiePresentation, LieError> {
    let text = strip_comments(text);
    let generators: Vec<String> =
        braced(&text, "generators")?.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    if let Ok(signs) = braced(&text, "gensigns") {
        for s in signs.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let v: i64 = s.parse().map_err(|_| LieError::Parse { pos: 0, message: format!("bad gensign '{s}'") })?;
            if v != 1 {
                return Err(LieError::UnsupportedSign(v));
            }
        }
    }
    let relations = parse_expr_list(braced(&text, "relations")?, &generators)?;
    LiePresentation::new(generators, relations)
}

// ---------------------------------------------------------------------------
// Word space
// ---------------------------------------------------------------------------

/// Homogeneous element of the free associative algebra on `ngens` letters:
/// words of length `degree` indexed in base `ngens`, first letter most
/// significant.
#[derive(Clone, Debug, PartialEq)]
pub struct WordVec<F> {
    pub degree: usize,
    pub vec: SparseVec<F>,
}

/// `(-1)^(|x||y|)` for homogeneous degrees.
pub fn super_sign(dx: usize, dy: usize) -> i64 {
    if dx % 2 == 1 && dy % 2 == 1 {
        -1
    } else {
        1
    }
}

pub fn concat<F: Field>(ngens: usize, a: &WordVec<F>, b: &WordVec<F>) -> WordVec<F> {
    let shift = ngens.pow(b.degree as u32);
    let mut acc = Accumulator::new();
    for (i, x) in a.vec.iter() {
        for (j, y) in b.vec.iter() {
            acc.add_term(i * shift + j, &x.mul(y));
        }
    }
    WordVec { degree: a.degree + b.degree, vec: acc.finish() }
}

/// `[a, b] = ab - (-1)^(|a||b|) ba`
pub fn word_bracket<F: Field>(ngens: usize, a: &WordVec<F>, b: &WordVec<F>) -> WordVec<F> {
    let ab = concat(ngens, a, b);
    let ba = concat(ngens, b, a);
    let s = F::from_i64(-super_sign(a.degree, b.degree));
    WordVec { degree: ab.degree, vec: ab.vec.add_scaled(&s, &ba.vec) }
}

/// Expansion into the free associative algebra.
pub fn expand_to_words<F: Field>(e: &LieExpr, ngens: usize) -> Result<WordVec<F>, LieError> {
    match e {
        LieExpr::Gen(g) => Ok(WordVec { degree: 1, vec: SparseVec::unit(*g) }),
        LieExpr::Bracket(a, b) => Ok(word_bracket(ngens, &expand_to_words(a, ngens)?, &expand_to_words(b, ngens)?)),
        LieExpr::Square(a) => {
            let x = expand_to_words(a, ngens)?;
            if x.degree % 2 == 0 {
                return Err(LieError::EvenSquare(x.degree));
            }
            Ok(concat(ngens, &x, &x))
        }
        LieExpr::Sum(terms) => {
            let degree = e.degree()?;
            let mut acc = Accumulator::new();
            for (c, t) in terms {
                acc.add_scaled(&F::from_i64(*c), &expand_to_words::<F>(t, ngens)?.vec);
            }
            Ok(WordVec { degree, vec: acc.finish() })
        }
        LieExpr::Basis { degree, index } => Err(LieError::NeedsBasis(format!("modbas[{degree}, {index}]"))),
    }
}

/// Letters of word `w` of length `len`, first letter first.
pub fn word_letters(ngens: usize, mut w: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = w % ngens;
        w /= ngens;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn names() -> Vec<String> {
        ["b", "c", "d", "e", "f", "g"].iter().map(|s| s.to_string()).collect()
    }

    fn words(e: &str) -> Vec<(Vec<usize>, i64)> {
        let x = expand_to_words::<Rational>(&parse_expr(e, &names()).unwrap(), 6).unwrap();
        x.vec.iter().map(|(w, c)| (word_letters(6, *w, x.degree), c.to_integer().try_into().unwrap())).collect()
    }

    #[test]
    fn parse_shapes() {
        let n = names();
        let e = parse_expr("sq[c]+lie[b,d]", &n).unwrap();
        assert_eq!(
            e,
            LieExpr::Sum(vec![(1, LieExpr::sq(LieExpr::Gen(1))), (1, LieExpr::lie(LieExpr::Gen(0), LieExpr::Gen(2)))])
        );
        assert_eq!(parse_expr("lie[e, lie[b, b]]", &n).unwrap(), LieExpr::right_normed(&[3, 0, 0]));
        assert_eq!(parse_expr("lie[b,c]+d", &n), Err(LieError::NotHomogeneous(2, 1)));
        assert!(matches!(parse_expr("lie[b,x]", &n), Err(LieError::UnknownGenerator(_))));
        assert!(matches!(parse_expr("lie[b,c", &n), Err(LieError::Parse { .. })));
        assert_eq!(parse_expr("d+e", &n).unwrap().degree().unwrap(), 1);
        assert_eq!(parse_expr("2*modbas[3,1]-lie[b,sq[c]]", &n).unwrap().degree().unwrap(), 3);
        assert_eq!(parse_expr("sq[lie[b,c]]", &n), Err(LieError::EvenSquare(2)));
    }

    #[test]
    fn display_roundtrip() {
        let n = names();
        for s in ["lie[e, lie[b, b]]", "sq[c]+lie[b, d]", "lie[e, f]-2*lie[c, g]", "modbas[3, 2]"] {
            let e = parse_expr(s, &n).unwrap();
            assert_eq!(e.display(&n).to_string(), s);
            assert_eq!(parse_expr(&e.display(&n).to_string(), &n).unwrap(), e);
        }
    }

    #[test]
    fn expansion_signs() {
        // [B,C] = BC + CB
        assert_eq!(words("lie[b,c]"), vec![(vec![0, 1], 1), (vec![1, 0], 1)]);
        assert_eq!(words("sq[c]"), vec![(vec![1, 1], 1)]);
        // [B,[B,C]] = BBC - CBB
        assert_eq!(words("lie[b,lie[b,c]]"), vec![(vec![0, 0, 1], 1), (vec![1, 0, 0], -1)]);
        // [B,[B,B]] = 0
        assert!(words("lie[b,lie[b,b]]").is_empty());
    }

    #[test]
    fn presentation_file() {
        let text = "(* a comment *)\ngenerators={x,y}\ngensigns={1,1}\nrelations={lie[x,y], sq[x]}";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.generators, vec!["x", "y"]);
        assert_eq!(p.relations.len(), 2);
        assert_eq!(parse_presentation("generators={x}\ngensigns={0}\nrelations={}"), Err(LieError::UnsupportedSign(0)));
        assert!(matches!(parse_presentation("generators={x}\nrelations={x}"), Err(LieError::LowDegreeRelation(0))));
    }
}
