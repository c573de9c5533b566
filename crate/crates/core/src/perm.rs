//! Permutations of finite sets and the substitution product that makes the
//! collection of all symmetric groups an operad.
//!
//! A permutation on `r` letters is stored as its one-line word with 0-based
//! values; display uses 1-based letters.  `compose_at(w, i, v)` substitutes
//! `v` into the i-th slot of `w`: the i-th input of `w` is blown up into a
//! block of `arity(v)` inputs, the block keeps its position on the input
//! side, and its image values start at `w(i)` rearranged within the block
//! by `v`.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(r: usize) -> Perm {
        Perm((0..r).collect())
    }

    /// Builds from a 0-based one-line word; `None` if not a permutation.
    pub fn from_word(word: Vec<usize>) -> Option<Perm> {
        let r = word.len();
        let mut seen = vec![false; r];
        for &v in &word {
            if v >= r || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(Perm(word))
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn word(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `(self . other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.arity(), other.arity());
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    /// Operadic substitution of `v` (arity s) into slot `i` of `self`
    /// (arity r), yielding a permutation of arity r+s-1.
    pub fn compose_at(&self, i: usize, v: &Perm) -> Perm {
        let r = self.arity();
        let s = v.arity();
        debug_assert!(i < r);
        let wi = self.0[i];
        // Values above the slot image shift up to make room for the block.
        let shift = |a: usize| if a > wi { a + s - 1 } else { a };
        let mut out = Vec::with_capacity(r + s - 1);
        for k in 0..i {
            out.push(shift(self.0[k]));
        }
        for t in 0..s {
            out.push(wi + v.0[t]);
        }
        for k in (i + 1)..r {
            out.push(shift(self.0[k]));
        }
        Perm(out)
    }

    /// Enumerates all permutations of arity `r` in lexicographic word order.
    pub fn all(r: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut word: Vec<usize> = (0..r).collect();
        loop {
            out.push(Perm(word.clone()));
            // Next lexicographic permutation.
            let Some(i) = (0..r.saturating_sub(1)).rev().find(|&i| word[i] < word[i + 1]) else {
                break;
            };
            let j = (i + 1..r).rev().find(|&j| word[j] > word[i]).unwrap();
            word.swap(i, j);
            word[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arity() <= 9 {
            for &v in &self.0 {
                write!(f, "{}", v + 1)?;
            }
            Ok(())
        } else {
            let words: Vec<String> = self.0.iter().map(|v| (v + 1).to_string()).collect();
            write!(f, "({})", words.join(","))
        }
    }
}

/// Full operadic composition by iterated substitution, filling the highest
/// slot first so earlier slot indices stay put.
pub fn gamma(w: &Perm, args: &[Perm]) -> Perm {
    debug_assert_eq!(w.arity(), args.len());
    let mut acc = w.clone();
    for i in (0..args.len()).rev() {
        acc = acc.compose_at(i, &args[i]);
    }
    acc
}
