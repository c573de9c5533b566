//! Linear combinations over ordered basis types, plus the Koszul sign
//! helpers every graded construction in this crate leans on.
//!
//! A basis element knows its own degree; a [`Lin`] keeps its terms in a
//! `BTreeMap` so iteration order, equality and printing are deterministic
//! and independent of evaluation order.  Zero coefficients are never
//! stored.

use crate::scalar::{FieldSpec, Scalar};
use std::collections::BTreeMap;
use std::fmt;

/// A canonical basis element: totally ordered, printable, graded.
pub trait BasisElt: Clone + Ord + fmt::Display {
    fn degree(&self) -> i64;
}

/// Finite linear combination of basis elements with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lin<B: BasisElt> {
    terms: BTreeMap<B, Scalar>,
}

impl<B: BasisElt> Default for Lin<B> {
    fn default() -> Self {
        Lin {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: BasisElt> Lin<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(b: B, c: Scalar) -> Self {
        let mut l = Self::zero();
        l.add_term(b, c);
        l
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, b: B, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&b) {
            None => {
                self.terms.insert(b, c);
            }
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(b, s);
                }
            }
        }
    }

    pub fn add(&mut self, other: &Lin<B>) {
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Lin<B>, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c.clone() * s.clone());
        }
    }

    pub fn scaled(&self, s: &Scalar) -> Lin<B> {
        let mut out = Lin::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn negated(&self, field: &FieldSpec) -> Lin<B> {
        self.scaled(&field.integer(-1))
    }

    pub fn coeff(&self, b: &B) -> Option<&Scalar> {
        self.terms.get(b)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_iter_terms(self) -> impl Iterator<Item = (B, Scalar)> {
        self.terms.into_iter()
    }

    /// Common degree of all terms; `None` for zero, error text for mixed
    /// degrees is the caller's concern so this just reports homogeneity.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        for b in it {
            if b.degree() != d {
                return None;
            }
        }
        Some(d)
    }

    /// Applies a basis-level linear map and sums the images.
    pub fn map_terms<C: BasisElt>(&self, mut f: impl FnMut(&B, &Scalar) -> Lin<C>) -> Lin<C> {
        let mut out = Lin::zero();
        for (b, c) in &self.terms {
            out.add(&f(b, c));
        }
        out
    }
}

impl<B: BasisElt> fmt::Display for Lin<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "{c}*{b}")?;
            }
        }
        Ok(())
    }
}

/// Sign `(-1)^(d1*d2)` for transposing two graded symbols, as `i64`.
pub fn swap_sign(d1: i64, d2: i64) -> i64 {
    if d1 % 2 != 0 && d2 % 2 != 0 {
        -1
    } else {
        1
    }
}

/// Koszul sign of rearranging graded symbols.
///
/// `order[i]` is the index (into `degrees`) of the symbol placed at output
/// position `i`; `order` must be a permutation.  The sign collects `-1` for
/// every pair of odd-degree symbols whose relative order flips.
pub fn koszul_reorder_sign(degrees: &[i64], order: &[usize]) -> i64 {
    debug_assert_eq!(degrees.len(), order.len());
    let mut sign = 1i64;
    for i in 0..order.len() {
        for j in (i + 1)..order.len() {
            if order[i] > order[j] {
                sign *= swap_sign(degrees[order[i]], degrees[order[j]]);
            }
        }
    }
    sign
}

/// An ordered tensor word of basis elements; degree is the sum of factor
/// degrees.  Used for diagonal and coaction outputs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TensorWord<B: BasisElt>(pub Vec<B>);

impl<B: BasisElt> BasisElt for TensorWord<B> {
    fn degree(&self) -> i64 {
        self.0.iter().map(|b| b.degree()).sum()
    }
}

impl<B: BasisElt> fmt::Display for TensorWord<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in &self.0 {
            if !first {
                write!(f, "\u{2297}")?;
            }
            first = false;
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// A pair tensor with independently typed sides, for element-and-dual style
/// expressions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Tensor2<A: BasisElt, B: BasisElt>(pub A, pub B);

impl<A: BasisElt, B: BasisElt> BasisElt for Tensor2<A, B> {
    fn degree(&self) -> i64 {
        self.0.degree() + self.1.degree()
    }
}

impl<A: BasisElt, B: BasisElt> fmt::Display for Tensor2<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\u{2297}{}", self.0, self.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
    struct Sym(&'static str, i64);

    impl fmt::Display for Sym {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{}", self.0)
        }
    }

    impl BasisElt for Sym {
        fn degree(&self) -> i64 {
            self.1
        }
    }

    #[test]
    fn cancellation_drops_terms() {
        let f = FieldSpec::Rational;
        let mut l = Lin::single(Sym("a", 1), f.one());
        l.add_term(Sym("a", 1), f.integer(-1));
        assert!(l.is_zero());
        assert_eq!(l.to_string(), "0");
    }

    #[test]
    fn display_is_sorted_and_canonical() {
        let f = FieldSpec::Rational;
        let mut l = Lin::zero();
        l.add_term(Sym("b", 1), f.integer(2));
        l.add_term(Sym("a", 1), f.one());
        assert_eq!(l.to_string(), "a + 2*b");
    }

    #[test]
    fn homogeneity_detection() {
        let f = FieldSpec::Rational;
        let mut l = Lin::single(Sym("a", 1), f.one());
        assert_eq!(l.degree(), Some(1));
        l.add_term(Sym("c", 2), f.one());
        assert_eq!(l.degree(), None);
        assert_eq!(Lin::<Sym>::zero().degree(), None);
    }

    #[test]
    fn koszul_sign_basic_swaps() {
        // Transposing two odd symbols: -1.
        assert_eq!(koszul_reorder_sign(&[1, 1], &[1, 0]), -1);
        // Odd past even: +1.
        assert_eq!(koszul_reorder_sign(&[1, 2], &[1, 0]), 1);
        // Identity: +1.
        assert_eq!(koszul_reorder_sign(&[1, 1, 1], &[0, 1, 2]), 1);
        // Cycle of three odd symbols: two transpositions worth of sign.
        assert_eq!(koszul_reorder_sign(&[1, 1, 1], &[2, 0, 1]), 1);
        assert_eq!(koszul_reorder_sign(&[1, 1, 1], &[2, 1, 0]), -1);
    }

    #[test]
    fn koszul_sign_is_multiplicative_on_composition() {
        // Spot check: sign(p then q) = sign(p)*sign(q) when degrees are
        // permuted consistently.
        let degs = [1, 2, 1, 3];
        let p = [2, 0, 3, 1];
        let q = [1, 3, 0, 2];
        let composed: Vec<usize> = (0..4).map(|i| p[q[i]]).collect();
        let permuted_degs: Vec<i64> = (0..4).map(|i| degs[p[i]]).collect();
        assert_eq!(
            koszul_reorder_sign(&degs, &composed),
            koszul_reorder_sign(&degs, &p) * koszul_reorder_sign(&permuted_degs, &q)
        );
    }
}
