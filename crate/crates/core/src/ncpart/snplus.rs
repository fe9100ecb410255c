use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{QwError, Result};
use crate::scalar::Scalar;

use super::moments;

/// Word in the magic-unitary entries; pairs are 1-based (row, column).
/// Ordered length-first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UWord(pub Vec<(u8, u8)>);

impl Ord for UWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for UWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Relation between two adjacent letters of a magic unitary.
enum Adjacent {
    Equal,
    Orthogonal,
    Free,
}

fn adjacent(a: (u8, u8), b: (u8, u8)) -> Adjacent {
    if a == b {
        Adjacent::Equal
    } else if a.0 == b.0 || a.1 == b.1 {
        Adjacent::Orthogonal
    } else {
        Adjacent::Free
    }
}

impl UWord {
    pub fn empty() -> Self {
        UWord(Vec::new())
    }

    pub fn letter(i: usize, j: usize) -> Self {
        UWord(vec![(i as u8, j as u8)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rows(&self) -> Vec<usize> {
        self.0.iter().map(|p| p.0 as usize).collect()
    }

    pub fn cols(&self) -> Vec<usize> {
        self.0.iter().map(|p| p.1 as usize).collect()
    }

    /// Apply u_ij·u_ij = u_ij and kill words with adjacent orthogonal
    /// projections; `None` means the word is zero.
    pub fn reduce(&self) -> Option<UWord> {
        let mut out: Vec<(u8, u8)> = Vec::with_capacity(self.0.len());
        for &x in &self.0 {
            match out.last().map(|&y| adjacent(y, x)) {
                Some(Adjacent::Equal) => {}
                Some(Adjacent::Orthogonal) => return None,
                _ => out.push(x),
            }
        }
        Some(UWord(out))
    }

    /// Further reduction valid under a trace: the first and last letters
    /// are adjacent cyclically.
    pub fn reduce_cyclic(&self) -> Option<UWord> {
        let mut w = self.reduce()?.0;
        while w.len() >= 2 {
            match adjacent(w[w.len() - 1], w[0]) {
                Adjacent::Equal => {
                    w.pop();
                }
                Adjacent::Orthogonal => return None,
                Adjacent::Free => break,
            }
        }
        Some(UWord(w))
    }

    pub fn concat(&self, other: &UWord) -> UWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        UWord(v)
    }

    pub fn reversed(&self) -> UWord {
        UWord(self.0.iter().rev().copied().collect())
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|(i, j)| format!("u({i},{j})")).collect();
        parts.join("*")
    }
}

/// Rational (or floating) linear combination of magic-unitary words in C(S_N⁺).
#[derive(Debug, Clone, PartialEq)]
pub struct SnPlus<S> {
    n: usize,
    terms: BTreeMap<UWord, S>,
}

impl<S: Scalar> SnPlus<S> {
    pub fn zero(n: usize) -> Self {
        SnPlus { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, S::one())
    }

    pub fn scalar(n: usize, c: S) -> Self {
        let mut x = Self::zero(n);
        x.add_term(UWord::empty(), c);
        x
    }

    pub fn u(n: usize, i: usize, j: usize) -> Result<Self> {
        check_index(n, i)?;
        check_index(n, j)?;
        let mut x = Self::zero(n);
        x.add_term(UWord::letter(i, j), S::one());
        Ok(x)
    }

    pub fn from_word(n: usize, w: &UWord) -> Result<Self> {
        for &(i, j) in &w.0 {
            check_index(n, i as usize)?;
            check_index(n, j as usize)?;
        }
        let mut x = Self::zero(n);
        x.add_term(w.clone(), S::one());
        Ok(x)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UWord, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of the empty word when that is the only term.
    pub fn as_scalar(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => self.terms.get(&UWord::empty()).cloned(),
            _ => None,
        }
    }

    pub fn coefficient(&self, w: &UWord) -> S {
        self.terms.get(w).cloned().unwrap_or_else(S::zero)
    }

    /// Add c·w after local reduction of w.
    pub fn add_term(&mut self, w: UWord, c: S) {
        if c.is_negligible() {
            return;
        }
        let Some(w) = w.reduce() else { return };
        let merged = match self.terms.remove(&w) {
            Some(old) => old + c,
            None => c,
        };
        if !merged.is_negligible() {
            self.terms.insert(w, merged);
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.n);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Adjoint: words reverse, coefficients are real.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (w, v) in &self.terms {
            out.add_term(w.reversed(), v.clone());
        }
        out
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(UWord::len).max().unwrap_or(0)
    }

    /// Whether every word is a single letter from row i (or empty).
    pub fn in_row_algebra(&self, i: usize) -> bool {
        self.terms.keys().all(|w| w.is_empty() || (w.len() == 1 && w.0[0].0 as usize == i))
    }

    /// Haar state, exactly.
    pub fn haar(&self) -> Result<S> {
        let mut acc = S::zero();
        for (w, c) in &self.terms {
            let h = moments::haar_word(self.n, w)?;
            acc = acc + c.clone() * S::from_rational(&h);
        }
        Ok(acc)
    }

    /// Row conditional expectation E_i(x) = N Σ_j h(x u_ij) u_ij.
    pub fn cond_expect_row(&self, i: usize) -> Result<Self> {
        check_index(self.n, i)?;
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let coeffs = moments::row_expectation(self.n, i, w)?;
            for (j, h) in coeffs.iter().enumerate() {
                if h.is_zero() {
                    continue;
                }
                out.add_term(UWord::letter(i, j + 1), c.clone() * S::from_rational(h));
            }
        }
        Ok(out)
    }
}

pub(crate) fn check_index(n: usize, i: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(QwError::OutOfRange(format!("index {i} outside 1..={n}")));
    }
    Ok(())
}

/// E_i(x) for the row conditional expectation; free-function form.
pub fn cond_expect_row<S: Scalar>(i: usize, x: &SnPlus<S>) -> Result<SnPlus<S>> {
    x.cond_expect_row(i)
}

fn same_n<S>(a: &SnPlus<S>, b: &SnPlus<S>) {
    assert_eq!(a.n, b.n, "SnPlus elements over different N");
}

impl<'a, S: Scalar> Add<&'a SnPlus<S>> for &'a SnPlus<S> {
    type Output = SnPlus<S>;
    fn add(self, rhs: &'a SnPlus<S>) -> SnPlus<S> {
        same_n(self, rhs);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<'a, S: Scalar> Sub<&'a SnPlus<S>> for &'a SnPlus<S> {
    type Output = SnPlus<S>;
    fn sub(self, rhs: &'a SnPlus<S>) -> SnPlus<S> {
        same_n(self, rhs);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl<'a, S: Scalar> Mul<&'a SnPlus<S>> for &'a SnPlus<S> {
    type Output = SnPlus<S>;
    fn mul(self, rhs: &'a SnPlus<S>) -> SnPlus<S> {
        same_n(self, rhs);
        let mut out = SnPlus::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.concat(b), x.clone() * y.clone());
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &SnPlus<S> {
    type Output = SnPlus<S>;
    fn neg(self) -> SnPlus<S> {
        self.scale(&-S::one())
    }
}

/// Render `c*w` terms joined by ` + ` / ` - `, in the expression grammar.
pub(crate) fn render_terms<'a, S: Scalar + 'a>(
    terms: impl Iterator<Item = (String, &'a S)>,
) -> String {
    let mut out = String::new();
    for (body, c) in terms {
        let negative = *c < S::zero();
        let mag = if negative { -c.clone() } else { c.clone() };
        let piece = if body.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            body
        } else {
            format!("{mag}*{body}")
        };
        match (out.is_empty(), negative) {
            (true, false) => out.push_str(&piece),
            (true, true) => {
                out.push('-');
                out.push_str(&piece);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&piece);
            }
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&piece);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<S: Scalar> fmt::Display for SnPlus<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self.terms.iter().map(|(w, c)| (w.render(), c))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn local_reductions() {
        let w = UWord(vec![(1, 1), (1, 1), (2, 2)]);
        assert_eq!(w.reduce().unwrap(), UWord(vec![(1, 1), (2, 2)]));
        assert!(UWord(vec![(1, 1), (1, 2)]).reduce().is_none());
        assert!(UWord(vec![(1, 1), (2, 1)]).reduce().is_none());
        assert_eq!(UWord(vec![(1, 1), (2, 2), (1, 1)]).reduce_cyclic().unwrap().len(), 2);
    }

    #[test]
    fn length_lex() {
        assert!(UWord(vec![(3, 3)]) < UWord(vec![(1, 1), (1, 1)]));
        assert!(UWord(vec![(1, 2)]) < UWord(vec![(2, 1)]));
    }

    #[test]
    fn expectation_examples() {
        let one = SnPlus::<Rational>::one(4);
        let e = one.cond_expect_row(2).unwrap();
        assert_eq!(e.to_string(), "u(2,1) + u(2,2) + u(2,3) + u(2,4)");
        let u11 = SnPlus::<Rational>::u(4, 1, 1).unwrap();
        assert_eq!(u11.cond_expect_row(1).unwrap(), u11);
        let u22 = SnPlus::<Rational>::u(4, 2, 2).unwrap();
        let e = u22.cond_expect_row(1).unwrap();
        assert_eq!(e.coefficient(&UWord::letter(1, 1)), q(1, 3));
        assert_eq!(e.coefficient(&UWord::letter(1, 2)), q(0, 1));
        assert_eq!(e.coefficient(&UWord::letter(1, 3)), q(1, 3));
        assert_eq!(e.coefficient(&UWord::letter(1, 4)), q(1, 3));
    }

    #[test]
    fn display() {
        let a = SnPlus::<Rational>::u(4, 1, 1).unwrap().scale(&q(1, 2));
        let b = SnPlus::<Rational>::u(4, 2, 2).unwrap().scale(&q(-1, 3));
        let one = SnPlus::<Rational>::one(4);
        let x = &(&a + &b) + &one;
        assert_eq!(x.to_string(), "1 + 1/2*u(1,1) - 1/3*u(2,2)");
        assert_eq!(SnPlus::<Rational>::zero(3).to_string(), "0");
    }
}
