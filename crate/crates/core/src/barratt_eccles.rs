//! The dg-operad of permutation tuples.
//!
//! In arity `r` and degree `d` the basis consists of `(d+1)`-tuples of
//! permutations of `r` letters with distinct adjacent entries; these are
//! the nondegenerate simplices of the classifying construction on the
//! symmetric group, so arity 1 is one-dimensional in degree 0.  The
//! boundary deletes entries with alternating signs, dropping tuples that
//! become degenerate.  Composition substitutes entrywise and spreads the
//! two degree directions by the shuffle sum with its usual signs, which
//! makes it a chain map.  The symmetric group acts freely on the right by
//! entrywise translation; canonical orbit representatives have identity
//! first entry.

use crate::error::{Error, Result};
use crate::linear::{BasisElt, Lin, Tensor2};
use crate::perm::Perm;
use crate::scalar::{FieldSpec, Scalar};
use itertools::Itertools;
use std::fmt;

/// A nondegenerate tuple of permutations: a basis element of the operad.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermTuple(Vec<Perm>);

impl PermTuple {
    pub fn new(entries: Vec<Perm>) -> Result<PermTuple> {
        if entries.is_empty() {
            return Err(Error::Validation("empty permutation tuple".into()));
        }
        let r = entries[0].arity();
        if entries.iter().any(|p| p.arity() != r) {
            return Err(Error::Validation("mixed arities in tuple".into()));
        }
        if entries.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation(format!(
                "degenerate tuple: repeated adjacent entry in {:?}",
                entries.iter().map(|p| p.to_string()).collect::<Vec<_>>()
            )));
        }
        Ok(PermTuple(entries))
    }

    /// The arity-r identity operation in degree 0.
    pub fn e(r: usize) -> PermTuple {
        PermTuple(vec![Perm::identity(r)])
    }

    /// The operadic unit: arity 1, degree 0.
    pub fn unit() -> PermTuple {
        PermTuple::e(1)
    }

    pub fn entries(&self) -> &[Perm] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0[0].arity()
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_unit(&self) -> bool {
        self.arity() == 1 && self.dim() == 0
    }

    pub fn is_canonical(&self) -> bool {
        self.0[0].is_identity()
    }

    /// Right translation by `g` applied to every entry.
    pub fn translate(&self, g: &Perm) -> PermTuple {
        PermTuple(self.0.iter().map(|p| p.compose(g)).collect())
    }

    /// Canonical representative of the translation orbit together with the
    /// translation `g` such that `self . g` is canonical.
    pub fn canonicalize(&self) -> (PermTuple, Perm) {
        let g = self.0[0].inverse();
        (self.translate(&g), g)
    }
}

impl BasisElt for PermTuple {
    fn degree(&self) -> i64 {
        self.dim() as i64
    }
}

impl fmt::Display for PermTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|p| p.to_string()).join("|"))
    }
}

/// Basis of arity `r`, degree `d`: all nondegenerate tuples.
pub fn be_basis(r: usize, d: usize) -> Vec<PermTuple> {
    let perms = Perm::all(r);
    let mut out: Vec<Vec<Perm>> = perms.iter().map(|p| vec![p.clone()]).collect();
    for _ in 0..d {
        let mut next = Vec::new();
        for t in &out {
            for p in perms.iter().filter(|p| *p != t.last().unwrap()) {
                let mut t2 = t.clone();
                t2.push(p.clone());
                next.push(t2);
            }
        }
        out = next;
    }
    out.into_iter().map(PermTuple).collect()
}

/// Canonical orbit representatives in arity `r`, degree `d`: tuples whose
/// first entry is the identity.
pub fn be_basis_canonical(r: usize, d: usize) -> Vec<PermTuple> {
    be_basis(r, d)
        .into_iter()
        .filter(|t| t.is_canonical())
        .collect()
}

/// Simplicial boundary: alternating deletion of entries, with degenerate
/// results dropped.
pub fn be_boundary(field: &FieldSpec, x: &PermTuple) -> Lin<PermTuple> {
    let mut out = Lin::zero();
    if x.dim() == 0 {
        return out;
    }
    for i in 0..x.0.len() {
        let mut entries = x.0.clone();
        entries.remove(i);
        if entries.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        out.add_term(
            PermTuple(entries),
            field.integer(if i % 2 == 0 { 1 } else { -1 }),
        );
    }
    out
}

/// Right translation extended to combinations.
pub fn sigma_act(x: &Lin<PermTuple>, g: &Perm) -> Lin<PermTuple> {
    x.map_terms(|t, c| Lin::single(t.translate(g), c.clone()))
}

/// Lattice paths through a p-by-q grid encoded as step lists, with the
/// shuffle sign collected as each vertical step counts the horizontal
/// steps still to come.
fn shuffles(p: usize, q: usize) -> Vec<(Vec<bool>, i64)> {
    // `true` advances the first (degree p) coordinate.
    let mut out = Vec::new();
    let mut steps = Vec::new();
    fn rec(
        h_left: usize,
        v_left: usize,
        steps: &mut Vec<bool>,
        sign: i64,
        out: &mut Vec<(Vec<bool>, i64)>,
    ) {
        if h_left == 0 && v_left == 0 {
            out.push((steps.clone(), sign));
            return;
        }
        if h_left > 0 {
            steps.push(true);
            rec(h_left - 1, v_left, steps, sign, out);
            steps.pop();
        }
        if v_left > 0 {
            steps.push(false);
            let extra = if h_left % 2 == 1 { -sign } else { sign };
            rec(h_left, v_left - 1, steps, extra, out);
            steps.pop();
        }
    }
    rec(p, q, &mut steps, 1, &mut out);
    out
}

/// Operadic composition `x o_slot y` as a combination of tuples.
///
/// Entrywise substitution along every lattice path through the bidegree
/// grid, each path weighted by its shuffle sign; paths whose tuple turns
/// out degenerate contribute nothing.
pub fn be_compose_i(
    field: &FieldSpec,
    x: &PermTuple,
    slot: usize,
    y: &PermTuple,
) -> Result<Lin<PermTuple>> {
    if slot >= x.arity() {
        return Err(Error::Validation(format!(
            "slot {slot} out of range for arity {}",
            x.arity()
        )));
    }
    let p = x.dim();
    let q = y.dim();
    let mut out = Lin::zero();
    for (steps, sign) in shuffles(p, q) {
        let mut a = 0usize;
        let mut b = 0usize;
        let mut entries = Vec::with_capacity(p + q + 1);
        entries.push(x.0[0].compose_at(slot, &y.0[0]));
        for adv_first in steps {
            if adv_first {
                a += 1;
            } else {
                b += 1;
            }
            entries.push(x.0[a].compose_at(slot, &y.0[b]));
        }
        if entries.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        out.add_term(PermTuple(entries), field.integer(sign));
    }
    Ok(out)
}

/// Bilinear extension of `be_compose_i`.
pub fn be_compose(
    field: &FieldSpec,
    x: &Lin<PermTuple>,
    slot: usize,
    y: &Lin<PermTuple>,
) -> Result<Lin<PermTuple>> {
    let mut out = Lin::zero();
    for (tx, cx) in x.iter() {
        for (ty, cy) in y.iter() {
            let piece = be_compose_i(field, tx, slot, ty)?;
            out.add_scaled(&piece, &(cx.clone() * cy.clone()));
        }
    }
    Ok(out)
}

/// Front-back coproduct: split the tuple at every entry; both halves stay
/// nondegenerate, and there are no signs.
pub fn be_coproduct(field: &FieldSpec, x: &PermTuple) -> Lin<Tensor2<PermTuple, PermTuple>> {
    let mut out = Lin::zero();
    for cut in 0..x.0.len() {
        let front = PermTuple(x.0[..=cut].to_vec());
        let back = PermTuple(x.0[cut..].to_vec());
        out.add_term(Tensor2(front, back), field.one());
    }
    out
}

/// Augmentation to the ground field: degree-0 tuples count with their
/// coefficient, everything else dies.
pub fn be_augmentation(field: &FieldSpec, x: &Lin<PermTuple>) -> Scalar {
    let mut acc = field.zero();
    for (t, c) in x.iter() {
        if t.dim() == 0 {
            acc = acc + c.clone();
        }
    }
    acc
}
