//! The surjection operad and its action on simplex chains by interval
//! cuts, together with the table reduction map from permutation tuples.
//!
//! A basis surjection of arity `r` and degree `d` is a map from
//! `{1,...,r+d}` onto `{1,...,r}` with no value repeated at adjacent
//! positions.  A position is a caesura when its value reappears later;
//! caesuras are the odd bookkeeping tokens of the whole theory: the
//! boundary of a surjection deletes positions with the Koszul sign of the
//! caesuras passed over, and the interval-cut signs weight each interval
//! by its dimension plus one when it sits at a caesura.
//!
//! These sign conventions are pinned jointly by the test suites here and
//! in the integration tests: boundaries square to zero, table reduction is
//! a chain map, interval cuts are chain maps over the rationals, and the
//! degree-zero and degree-one cuts reproduce the front-back diagonal and
//! the classical chain homotopy for commuting it.

use crate::barratt_eccles::PermTuple;
use crate::error::{Error, Result};
use crate::linear::{koszul_reorder_sign, BasisElt, Lin, TensorWord};
use crate::perm::Perm;
use crate::scalar::FieldSpec;
use crate::simplex::{FaceWord, SimplexFace};
use itertools::Itertools;
use std::fmt;

/// A nondegenerate surjection basis element, values stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Surjection {
    arity: usize,
    word: Vec<usize>,
}

impl Surjection {
    pub fn new(arity: usize, word: Vec<usize>) -> Result<Surjection> {
        if arity == 0 || word.len() < arity {
            return Err(Error::Validation(format!(
                "surjection word {word:?} too short for arity {arity}"
            )));
        }
        let mut seen = vec![false; arity];
        for &v in &word {
            if v >= arity {
                return Err(Error::Validation(format!(
                    "value {v} out of range for arity {arity}"
                )));
            }
            seen[v] = true;
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::Validation(format!("word {word:?} is not onto")));
        }
        if word.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation(format!(
                "degenerate surjection word {word:?}"
            )));
        }
        Ok(Surjection { arity, word })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn dim(&self) -> usize {
        self.word.len() - self.arity
    }

    /// Positions whose value reappears later.
    pub fn caesuras(&self) -> Vec<bool> {
        let n = self.word.len();
        let mut flags = vec![false; n];
        for p in 0..n {
            flags[p] = self.word[p + 1..].contains(&self.word[p]);
        }
        flags
    }
}

impl BasisElt for Surjection {
    fn degree(&self) -> i64 {
        self.dim() as i64
    }
}

impl fmt::Display for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.word.iter().map(|v| (v + 1).to_string()).join(",")
        )
    }
}

/// All surjection basis elements of the given arity and degree.
pub fn surjection_basis(arity: usize, dim: usize) -> Vec<Surjection> {
    let len = arity + dim;
    let mut out = Vec::new();
    let mut word: Vec<usize> = Vec::new();
    fn rec(arity: usize, len: usize, word: &mut Vec<usize>, out: &mut Vec<Surjection>) {
        if word.len() == len {
            if let Ok(s) = Surjection::new(arity, word.clone()) {
                out.push(s);
            }
            return;
        }
        for v in 0..arity {
            if word.last() == Some(&v) {
                continue;
            }
            // Prune: remaining slots must be able to cover missing values.
            word.push(v);
            let missing = (0..arity).filter(|x| !word.contains(x)).count();
            if missing <= len - word.len() {
                rec(arity, len, word, out);
            }
            word.pop();
        }
    }
    rec(arity, len, &mut word, &mut out);
    out
}

/// Koszul sign of regrouping the positions of a word by value, each
/// position weighing 1 if it is a caesura and 0 if it is final.
///
/// A word is oriented as the tensor of its per-value position simplices;
/// this sign converts between position order and that grouped order.
fn grouping_sign(u: &Surjection) -> i64 {
    let caes = u.caesuras();
    let weights: Vec<i64> = caes.iter().map(|&c| if c { 1 } else { 0 }).collect();
    let mut order = Vec::with_capacity(u.word.len());
    for k in 0..u.arity {
        for (p, &v) in u.word.iter().enumerate() {
            if v == k {
                order.push(p);
            }
        }
    }
    koszul_reorder_sign(&weights, &order)
}

/// Boundary of a surjection: delete one occurrence of a repeated value at
/// a time.  Viewing a word as the tensor of its per-value position
/// simplices (value `k` with `m` occurrences contributes a factor of
/// degree `m-1`), the boundary is the tensor differential transported
/// through the regrouping sign.  Deletions that drop a value entirely or
/// create an adjacent repeat contribute nothing.
pub fn surjection_boundary(field: &FieldSpec, u: &Surjection) -> Lin<Surjection> {
    let mut out = Lin::zero();
    if u.dim() == 0 {
        return out;
    }
    let eps_u = grouping_sign(u);
    let mut prefix = 0i64;
    for k in 0..u.arity {
        let occ: Vec<usize> = (0..u.word.len()).filter(|&p| u.word[p] == k).collect();
        if occ.len() >= 2 {
            for (j, &p) in occ.iter().enumerate() {
                let mut word = u.word.clone();
                word.remove(p);
                if word.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                let w = Surjection {
                    arity: u.arity,
                    word,
                };
                let mut sign = eps_u * grouping_sign(&w);
                if (prefix + j as i64) % 2 != 0 {
                    sign = -sign;
                }
                out.add_term(w, field.integer(sign));
            }
        }
        prefix += occ.len() as i64 - 1;
    }
    out
}

/// Table reduction: reads a permutation tuple row by row into a sum of
/// surjections of the same arity and degree.
///
/// For every split of `r + d` into `d+1` positive row lengths, row `i`
/// takes the first `r_i` still-active values in the order of the i-th
/// permutation; all but the last taken value retire, and the last row
/// takes every value still active.  Splits that run out of active values
/// or produce an adjacent repeat contribute nothing; all coefficients are
/// `+1`.
pub fn table_reduction(field: &FieldSpec, x: &PermTuple) -> Lin<Surjection> {
    let r = x.arity();
    let d = x.dim();
    let mut out = Lin::zero();
    for split in compositions(r + d, d + 1) {
        let mut used = vec![false; r];
        let mut word: Vec<usize> = Vec::with_capacity(r + d);
        let mut ok = true;
        for (i, &len) in split.iter().enumerate() {
            let avail: Vec<usize> = x.entries()[i]
                .word()
                .iter()
                .copied()
                .filter(|&v| !used[v])
                .collect();
            if i + 1 < split.len() {
                if avail.len() < len {
                    ok = false;
                    break;
                }
                word.extend(&avail[..len]);
                for &v in &avail[..len - 1] {
                    used[v] = true;
                }
            } else {
                if avail.len() != len {
                    ok = false;
                    break;
                }
                word.extend(&avail);
            }
        }
        if !ok || word.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        out.add_term(
            Surjection { arity: r, word },
            field.one(),
        );
    }
    out
}

/// All ways to write `total` as `parts` positive integers, in order.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            if left >= 1 {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for take in 1..=(left + 1 - parts) {
            cur.push(take);
            rec(left - take, parts - 1, cur, out);
            cur.pop();
        }
    }
    if parts >= 1 && total >= parts {
        rec(total, parts, &mut cur, &mut out);
    }
    out
}

/// Interval-cut action of a surjection on a face of a standard simplex.
///
/// A cut places `r+d-1` weakly increasing break points along the face;
/// consecutive break points span overlapping intervals, one per position
/// of the surjection word.  The output factor for a label concatenates the
/// vertex runs of its positions in order, dying when two runs share their
/// junction vertex.  The sign of a cut is the Koszul sign of regrouping
/// the intervals from position order to label order, an interval at a
/// caesura weighing its dimension plus one, times an extra `(-1)^j` for
/// every caesura interval ending at the j-th vertex of the face.
pub fn interval_cut_action(
    field: &FieldSpec,
    u: &Surjection,
    face: &SimplexFace,
) -> Lin<FaceWord> {
    let m = face.dim();
    let slots = u.word.len();
    let caes = u.caesuras();
    let mut out = Lin::zero();
    for mid in (0..slots - 1).map(|_| 0..=m).multi_cartesian_product() {
        if mid.windows(2).any(|w| w[0] > w[1]) {
            continue;
        }
        let mut cuts = Vec::with_capacity(slots + 1);
        cuts.push(0);
        cuts.extend(mid.iter().copied());
        cuts.push(m);
        process_cut(field, u, &caes, face, &cuts, &mut out);
    }
    out
}

fn process_cut(
    field: &FieldSpec,
    u: &Surjection,
    caes: &[bool],
    face: &SimplexFace,
    cuts: &[usize],
    out: &mut Lin<FaceWord>,
) {
    let slots = u.word.len();
    let dims: Vec<i64> = (0..slots).map(|p| (cuts[p + 1] - cuts[p]) as i64).collect();
    // Assemble each output factor and reject degenerate junctions.
    let mut factors: Vec<Vec<usize>> = vec![Vec::new(); u.arity];
    for p in 0..slots {
        let k = u.word[p];
        let run = &face.verts[cuts[p]..=cuts[p + 1]];
        if let Some(&last) = factors[k].last() {
            if last == run[0] {
                return;
            }
        }
        factors[k].extend_from_slice(run);
    }
    // Koszul sign of regrouping intervals by label.
    let weights: Vec<i64> = (0..slots)
        .map(|p| dims[p] + if caes[p] { 1 } else { 0 })
        .collect();
    let mut order: Vec<usize> = Vec::with_capacity(slots);
    for k in 0..u.arity {
        for p in 0..slots {
            if u.word[p] == k {
                order.push(p);
            }
        }
    }
    let mut sign = koszul_reorder_sign(&weights, &order);
    for p in 0..slots {
        if caes[p] && cuts[p + 1] % 2 == 1 {
            sign = -sign;
        }
    }
    let word = TensorWord(
        factors
            .into_iter()
            .map(|verts| SimplexFace {
                n: face.n,
                verts,
            })
            .collect(),
    );
    out.add_term(word, field.integer(sign));
}

/// The operadic coaction on simplex chains: table reduction followed by
/// interval cuts, extended bilinearly.
pub fn be_coaction(
    field: &FieldSpec,
    x: &Lin<PermTuple>,
    face: &SimplexFace,
) -> Lin<FaceWord> {
    let mut out = Lin::zero();
    for (t, c) in x.iter() {
        // Read the tuple through entrywise inverses before reducing.  The
        // cut factors of the mirrored word then permute on the same side as
        // word arguments under domain translation, so pairing factor k with
        // argument k does not depend on the chosen orbit representative.
        let mirrored = PermTuple::new(t.entries().iter().map(Perm::inverse).collect())
            .expect("entrywise inversion preserves adjacent distinctness");
        let cuts = table_reduction(field, &mirrored)
            .map_terms(|u, c2| interval_cut_action(field, u, face).scaled(c2));
        out.add_scaled(&cuts, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::swap_sign;
    use crate::perm::Perm;
    use crate::simplex::{aw_diagonal, boundary, face_basis, face_word_boundary};

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn surj(arity: usize, word_1based: &[usize]) -> Surjection {
        Surjection::new(arity, word_1based.iter().map(|v| v - 1).collect()).unwrap()
    }

    fn tuple(words: &[&[usize]]) -> PermTuple {
        PermTuple::new(
            words
                .iter()
                .map(|w| Perm::from_word(w.to_vec()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn face(n: usize, verts: &[usize]) -> SimplexFace {
        SimplexFace::new(n, verts.to_vec()).unwrap()
    }

    #[test]
    fn caesura_positions() {
        assert_eq!(surj(2, &[1, 2, 1]).caesuras(), vec![true, false, false]);
        assert_eq!(
            surj(2, &[1, 2, 1, 2]).caesuras(),
            vec![true, true, false, false]
        );
        assert_eq!(surj(3, &[1, 2, 3]).caesuras(), vec![false, false, false]);
    }

    #[test]
    fn basis_enumeration_counts() {
        assert_eq!(surjection_basis(1, 0).len(), 1);
        assert_eq!(surjection_basis(1, 1).len(), 0);
        assert_eq!(surjection_basis(2, 0).len(), 2);
        assert_eq!(surjection_basis(2, 1).len(), 2);
        assert_eq!(surjection_basis(2, 2).len(), 2);
        // (3,0): all 6 bijections.  (3,1): words of length 4 onto three
        // values with no adjacent repeat: 3 choices of doubled value times
        // 6 arrangements of a,a,b,c keeping the two a's apart.
        assert_eq!(surjection_basis(3, 0).len(), 6);
        assert_eq!(surjection_basis(3, 1).len(), 18);
    }

    #[test]
    fn boundary_squares_to_zero_over_q() {
        let f = q();
        for (r, dmax) in [(2usize, 4usize), (3, 3)] {
            for d in 1..=dmax {
                for u in surjection_basis(r, d) {
                    let once = surjection_boundary(&f, &u);
                    let twice = once.map_terms(|v, c| surjection_boundary(&f, v).scaled(c));
                    assert!(twice.is_zero(), "d^2 != 0 on {u}");
                }
            }
        }
    }

    #[test]
    fn boundary_of_the_degree_one_words() {
        let f = q();
        let b = surjection_boundary(&f, &surj(2, &[1, 2, 1]));
        assert_eq!(b.coeff(&surj(2, &[2, 1])).unwrap(), &f.one());
        assert_eq!(b.coeff(&surj(2, &[1, 2])).unwrap(), &f.integer(-1));
        let b = surjection_boundary(&f, &surj(2, &[1, 2, 1, 2]));
        assert_eq!(b.coeff(&surj(2, &[2, 1, 2])).unwrap(), &f.one());
        assert_eq!(b.coeff(&surj(2, &[1, 2, 1])).unwrap(), &f.one());
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn table_reduction_in_degree_zero_reads_the_word() {
        let f = q();
        let tr = table_reduction(&f, &tuple(&[&[0, 1]]));
        assert_eq!(tr, Lin::single(surj(2, &[1, 2]), f.one()));
        let tr = table_reduction(&f, &tuple(&[&[2, 0, 1]]));
        assert_eq!(tr, Lin::single(surj(3, &[3, 1, 2]), f.one()));
    }

    #[test]
    fn table_reduction_of_the_chain_contraction() {
        let f = q();
        let tr = table_reduction(&f, &tuple(&[&[0, 1], &[1, 0]]));
        assert_eq!(tr, Lin::single(surj(2, &[1, 2, 1]), f.one()));
        let tr = table_reduction(&f, &tuple(&[&[1, 0], &[0, 1]]));
        assert_eq!(tr, Lin::single(surj(2, &[2, 1, 2]), f.one()));
        let tr = table_reduction(&f, &tuple(&[&[0, 1], &[1, 0], &[0, 1]]));
        assert_eq!(tr, Lin::single(surj(2, &[1, 2, 1, 2]), f.one()));
    }

    #[test]
    fn table_reduction_preserves_degree_and_arity() {
        let f = q();
        for x in crate::barratt_eccles::be_basis(3, 2) {
            let tr = table_reduction(&f, &x);
            for (u, _) in tr.iter() {
                assert_eq!(u.arity(), 3);
                assert_eq!(u.dim(), 2);
            }
        }
    }

    #[test]
    fn table_reduction_is_a_chain_map() {
        let f = q();
        let mut samples: Vec<PermTuple> = Vec::new();
        for d in 1..=3 {
            samples.extend(crate::barratt_eccles::be_basis(2, d));
        }
        for d in 1..=2 {
            samples.extend(crate::barratt_eccles::be_basis(3, d));
        }
        for x in samples {
            let lhs = table_reduction(&f, &x)
                .map_terms(|u, c| surjection_boundary(&f, u).scaled(c));
            let rhs = crate::barratt_eccles::be_boundary(&f, &x)
                .map_terms(|y, c| table_reduction(&f, y).scaled(c));
            assert_eq!(lhs, rhs, "table reduction fails to chain-commute on {x}");
        }
    }

    #[test]
    fn identity_cut_is_the_identity() {
        let f = q();
        for m in 0..=2 {
            for fc in face_basis(2, m) {
                let a = interval_cut_action(&f, &surj(1, &[1]), &fc);
                assert_eq!(a, Lin::single(TensorWord(vec![fc.clone()]), f.one()));
            }
        }
    }

    #[test]
    fn order_reading_cut_is_the_front_back_diagonal() {
        let f = q();
        for m in 0..=3 {
            for fc in face_basis(3, m) {
                let cut = interval_cut_action(&f, &surj(2, &[1, 2]), &fc);
                let aw = aw_diagonal(&f, &fc).map_terms(|t, c| {
                    Lin::single(TensorWord(vec![t.0.clone(), t.1.clone()]), c.clone())
                });
                assert_eq!(cut, aw);
            }
        }
    }

    #[test]
    fn point_duplication_cut() {
        let f = q();
        let a = interval_cut_action(&f, &surj(2, &[2, 1]), &face(2, &[0]));
        assert_eq!(
            a,
            Lin::single(TensorWord(vec![face(2, &[0]), face(2, &[0])]), f.one())
        );
    }

    #[test]
    fn chain_homotopy_cut_on_the_edge() {
        let f = q();
        let a = interval_cut_action(&f, &surj(2, &[1, 2, 1]), &face(1, &[0, 1]));
        assert_eq!(
            a,
            Lin::single(
                TensorWord(vec![face(1, &[0, 1]), face(1, &[0, 1])]),
                f.one()
            )
        );
    }

    // Frozen by hand before the sign rule was implemented: the cut of
    // (1,2,1) on the triangle with correct rational signs.
    #[test]
    fn chain_homotopy_cut_on_the_triangle() {
        let f = q();
        let a = interval_cut_action(&f, &surj(2, &[1, 2, 1]), &face(2, &[0, 1, 2]));
        let mut expect = Lin::zero();
        expect.add_term(
            TensorWord(vec![face(2, &[0, 1, 2]), face(2, &[0, 1])]),
            f.integer(-1),
        );
        expect.add_term(
            TensorWord(vec![face(2, &[0, 2]), face(2, &[0, 1, 2])]),
            f.one(),
        );
        expect.add_term(
            TensorWord(vec![face(2, &[0, 1, 2]), face(2, &[1, 2])]),
            f.integer(-1),
        );
        assert_eq!(a, expect);
    }

    #[test]
    fn interval_cuts_are_chain_maps_over_q() {
        // d(u . c) = (du) . c + (-1)^|u| u . (dc) for every surjection in
        // the sample window, on every face of the 3-simplex.
        let f = q();
        let mut us: Vec<Surjection> = Vec::new();
        for d in 0..=2 {
            us.extend(surjection_basis(2, d));
        }
        us.extend(surjection_basis(3, 0));
        us.extend(surjection_basis(3, 1));
        for u in &us {
            for m in 0..=3 {
                for fc in face_basis(3, m) {
                    let act = interval_cut_action(&f, u, &fc);
                    let lhs = act.map_terms(|w, c| face_word_boundary(&f, w).scaled(c));
                    let mut rhs = surjection_boundary(&f, u)
                        .map_terms(|v, c| interval_cut_action(&f, v, &fc).scaled(c));
                    let sign = f.integer(swap_sign(u.degree(), 1));
                    rhs.add_scaled(
                        &boundary(&f, &fc)
                            .map_terms(|g, c| interval_cut_action(&f, u, g).scaled(c)),
                        &sign,
                    );
                    assert_eq!(lhs, rhs, "cut of {u} on {fc} is not a chain map");
                }
            }
        }
    }

    #[test]
    fn coaction_unit_and_diagonal() {
        let f = q();
        let unit = Lin::single(PermTuple::unit(), f.one());
        for m in 0..=2 {
            for fc in face_basis(2, m) {
                let a = be_coaction(&f, &unit, &fc);
                assert_eq!(a, Lin::single(TensorWord(vec![fc.clone()]), f.one()));
            }
        }
        let e2 = Lin::single(PermTuple::e(2), f.one());
        for fc in face_basis(2, 2) {
            let a = be_coaction(&f, &e2, &fc);
            let aw = aw_diagonal(&f, &fc).map_terms(|t, c| {
                Lin::single(TensorWord(vec![t.0.clone(), t.1.clone()]), c.clone())
            });
            assert_eq!(a, aw);
        }
    }

    #[test]
    fn coaction_respects_operad_composition() {
        // The output factors of rho are indexed by argument slots, so
        // composing a permutation x at input slot i refines the factor
        // at position i; the sign moves y past the factors before that
        // position.  Permutations of arity 2 and 3 against arity-2
        // tuples of degree <= 1, on every face of the 2-simplex, over
        // the rationals.
        let f = q();
        let mut xs: Vec<PermTuple> = crate::barratt_eccles::be_basis(2, 0);
        xs.extend(crate::barratt_eccles::be_basis(3, 0));
        let mut ys: Vec<PermTuple> = crate::barratt_eccles::be_basis(2, 0);
        ys.extend(crate::barratt_eccles::be_basis(2, 1));
        for x in &xs {
            for y in &ys {
                for i in 0..x.arity() {
                    let j = i;
                    let composed = crate::barratt_eccles::be_compose_i(&f, x, i, y).unwrap();
                    for m in 0..=2 {
                        for fc in face_basis(2, m) {
                            let lhs = be_coaction(&f, &composed, &fc);
                            let mut rhs = Lin::zero();
                            let outer =
                                be_coaction(&f, &Lin::single(x.clone(), f.one()), &fc);
                            for (w, c) in outer.iter() {
                                let before: i64 =
                                    w.0[..j].iter().map(|t| t.dim() as i64).sum();
                                let sign =
                                    f.integer(swap_sign(y.dim() as i64, before));
                                let inner = be_coaction(
                                    &f,
                                    &Lin::single(y.clone(), f.one()),
                                    &w.0[j],
                                );
                                for (v, c2) in inner.iter() {
                                    let mut parts = w.0[..j].to_vec();
                                    parts.extend(v.0.iter().cloned());
                                    parts.extend(w.0[j + 1..].iter().cloned());
                                    rhs.add_term(
                                        TensorWord(parts),
                                        c.clone() * c2.clone() * sign.clone(),
                                    );
                                }
                            }
                            assert_eq!(lhs, rhs, "composition fails for {x} o_{i} {y} on {fc}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coaction_is_equivariant_for_value_relabelling() {
        // Relabelling the values of every entry by g permutes the
        // output factors by g conjugated through the leading entry,
        // with the Koszul reordering sign of the face degrees.  All
        // arity-3 tuples of degree <= 1 and all g, on the faces of the
        // 2-simplex, over the rationals.
        let f = q();
        let mut xs: Vec<PermTuple> = crate::barratt_eccles::be_basis(3, 0);
        xs.extend(crate::barratt_eccles::be_basis(3, 1));
        for x in &xs {
            for g in Perm::all(3) {
                let gx = PermTuple::new(
                    x.entries().iter().map(|p| g.compose(p)).collect(),
                )
                .unwrap();
                let lead = &x.entries()[0];
                let conj = lead.inverse().compose(&g.compose(lead));
                let order: Vec<usize> = (0..3).map(|p| conj.apply(p)).collect();
                for m in 0..=2 {
                    for fc in face_basis(2, m) {
                        let lhs = be_coaction(&f, &Lin::single(gx.clone(), f.one()), &fc);
                        let mut rhs = Lin::zero();
                        for (w, c) in
                            be_coaction(&f, &Lin::single(x.clone(), f.one()), &fc).iter()
                        {
                            let degrees: Vec<i64> =
                                w.0.iter().map(|t| t.dim() as i64).collect();
                            let sign = koszul_reorder_sign(&degrees, &order);
                            let parts: Vec<SimplexFace> =
                                order.iter().map(|&p| w.0[p].clone()).collect();
                            rhs.add_term(
                                TensorWord(parts),
                                c.clone() * f.integer(sign),
                            );
                        }
                        assert_eq!(lhs, rhs, "equivariance fails for {g} . {x} on {fc}");
                    }
                }
            }
        }
    }

    #[test]
    fn coaction_is_equivariant_for_domain_translation() {
        // Translating the domain of every entry by g also permutes the
        // output factors by g.  Arguments of a translated word move the
        // same way, so the two permutations cancel and the induced map
        // on words is independent of the orbit representative; a
        // three-cycle g is the smallest case that tells this law apart
        // from its inverse.
        let f = q();
        let mut xs: Vec<PermTuple> = crate::barratt_eccles::be_basis(3, 0);
        xs.extend(crate::barratt_eccles::be_basis(3, 1));
        for x in &xs {
            for g in Perm::all(3) {
                let xg = x.translate(&g);
                let order: Vec<usize> = (0..3).map(|p| g.apply(p)).collect();
                for m in 0..=2 {
                    for fc in face_basis(2, m) {
                        let lhs = be_coaction(&f, &Lin::single(xg.clone(), f.one()), &fc);
                        let mut rhs = Lin::zero();
                        for (w, c) in
                            be_coaction(&f, &Lin::single(x.clone(), f.one()), &fc).iter()
                        {
                            let degrees: Vec<i64> =
                                w.0.iter().map(|t| t.dim() as i64).collect();
                            let sign = koszul_reorder_sign(&degrees, &order);
                            let parts: Vec<SimplexFace> =
                                order.iter().map(|&p| w.0[p].clone()).collect();
                            rhs.add_term(
                                TensorWord(parts),
                                c.clone() * f.integer(sign),
                            );
                        }
                        assert_eq!(lhs, rhs, "translation fails for {x} . {g} on {fc}");
                    }
                }
            }
        }
    }
}


