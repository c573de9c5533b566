//! Normalized chains and cochains of standard simplices.
//!
//! A face of the n-simplex is a strictly increasing vertex list; these are
//! exactly the nondegenerate simplices, so they form a basis of the
//! normalized chain complex.  The boundary deletes one vertex at a time
//! with alternating signs.  Cochains are spanned by the duals of faces,
//! graded negatively so that Koszul bookkeeping in mixed tensors works
//! without special cases; the cochain differential is the dual of the
//! boundary twisted by `(-1)^(m+1)` on duals of m-faces, the unique sign
//! for which the trace element is a cycle.

use crate::error::{Error, Result};
use crate::linear::{swap_sign, BasisElt, Lin, Tensor2, TensorWord};
use crate::scalar::FieldSpec;
use itertools::Itertools;
use std::fmt;

/// A nondegenerate face of the standard `n`-simplex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexFace {
    pub n: usize,
    pub verts: Vec<usize>,
}

impl SimplexFace {
    pub fn new(n: usize, verts: Vec<usize>) -> Result<SimplexFace> {
        if verts.is_empty() {
            return Err(Error::Validation("empty vertex list".into()));
        }
        if verts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Validation(format!(
                "vertex list {verts:?} is not strictly increasing"
            )));
        }
        if *verts.last().unwrap() > n {
            return Err(Error::Validation(format!(
                "vertex list {verts:?} does not fit in the {n}-simplex"
            )));
        }
        Ok(SimplexFace { n, verts })
    }

    /// The fundamental face: all vertices of the `n`-simplex.
    pub fn fundamental(n: usize) -> SimplexFace {
        SimplexFace {
            n,
            verts: (0..=n).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn is_fundamental(&self) -> bool {
        self.dim() == self.n
    }

    /// Reinterprets this face as a monotone injection from its own simplex.
    pub fn as_monotone(&self) -> MonotoneMap {
        MonotoneMap {
            dom: self.dim(),
            cod: self.n,
            vals: self.verts.clone(),
        }
    }
}

impl BasisElt for SimplexFace {
    fn degree(&self) -> i64 {
        self.dim() as i64
    }
}

impl fmt::Display for SimplexFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.verts.iter().map(|v| v.to_string()).join(",")
        )
    }
}

/// A weakly monotone map of finite ordinals `[dom] -> [cod]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MonotoneMap {
    pub dom: usize,
    pub cod: usize,
    pub vals: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(dom: usize, cod: usize, vals: Vec<usize>) -> Result<MonotoneMap> {
        if vals.len() != dom + 1 {
            return Err(Error::Validation(format!(
                "monotone map on [{dom}] needs {} values, got {}",
                dom + 1,
                vals.len()
            )));
        }
        if vals.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Validation(format!("values {vals:?} not monotone")));
        }
        if vals.last().copied().unwrap_or(0) > cod {
            return Err(Error::Validation(format!(
                "values {vals:?} exceed codomain [{cod}]"
            )));
        }
        Ok(MonotoneMap { dom, cod, vals })
    }

    pub fn identity(n: usize) -> MonotoneMap {
        MonotoneMap {
            dom: n,
            cod: n,
            vals: (0..=n).collect(),
        }
    }

    /// Coface `[n-1] -> [n]` skipping vertex `i`.
    pub fn coface(n: usize, i: usize) -> MonotoneMap {
        MonotoneMap {
            dom: n - 1,
            cod: n,
            vals: (0..=n).filter(|&v| v != i).collect(),
        }
    }

    /// Codegeneracy `[n+1] -> [n]` repeating vertex `j`.
    pub fn codegeneracy(n: usize, j: usize) -> MonotoneMap {
        let mut vals: Vec<usize> = Vec::with_capacity(n + 2);
        for v in 0..=n {
            vals.push(v);
            if v == j {
                vals.push(v);
            }
        }
        MonotoneMap {
            dom: n + 1,
            cod: n,
            vals,
        }
    }

    /// `self` after `other`: `[a] -> [b] -> [c]`.
    pub fn compose(&self, other: &MonotoneMap) -> Result<MonotoneMap> {
        if other.cod != self.dom {
            return Err(Error::Validation(format!(
                "cannot compose [{}]->[{}] after [{}]->[{}]",
                self.dom, self.cod, other.dom, other.cod
            )));
        }
        MonotoneMap::new(
            other.dom,
            self.cod,
            other.vals.iter().map(|&v| self.vals[v]).collect(),
        )
    }

    pub fn is_injective(&self) -> bool {
        self.vals.windows(2).all(|w| w[0] < w[1])
    }

    /// Vertices of the codomain missing from the image; for an injection
    /// these determine it.
    pub fn skipped(&self) -> Vec<usize> {
        (0..=self.cod)
            .filter(|v| !self.vals.contains(v))
            .collect()
    }
}

/// All faces of dimension `m` inside the `n`-simplex, in lexicographic
/// order.
pub fn face_basis(n: usize, m: usize) -> Vec<SimplexFace> {
    (0..=n)
        .combinations(m + 1)
        .map(|verts| SimplexFace { n, verts })
        .collect()
}

/// Boundary of a face: alternating sum of vertex deletions.  Faces of
/// dimension zero have zero boundary.
pub fn boundary(field: &FieldSpec, face: &SimplexFace) -> Lin<SimplexFace> {
    let mut out = Lin::zero();
    if face.dim() == 0 {
        return out;
    }
    for i in 0..face.verts.len() {
        let mut verts = face.verts.clone();
        verts.remove(i);
        out.add_term(
            SimplexFace { n: face.n, verts },
            field.integer(if i % 2 == 0 { 1 } else { -1 }),
        );
    }
    out
}

/// Pushforward of a face along a monotone map; collapsing maps kill the
/// face in normalized chains.
pub fn pushforward(map: &MonotoneMap, face: &SimplexFace) -> Result<Option<SimplexFace>> {
    if face.n != map.dom {
        return Err(Error::Validation(format!(
            "face of the {}-simplex pushed along a map from [{}]",
            face.n, map.dom
        )));
    }
    let verts: Vec<usize> = face.verts.iter().map(|&v| map.vals[v]).collect();
    if verts.windows(2).any(|w| w[0] >= w[1]) {
        return Ok(None);
    }
    Ok(Some(SimplexFace {
        n: map.cod,
        verts,
    }))
}

/// Front-back diagonal of a face: sum of (front part, back part) splittings
/// sharing the cut vertex.
pub fn aw_diagonal(field: &FieldSpec, face: &SimplexFace) -> Lin<Tensor2<SimplexFace, SimplexFace>> {
    let mut out = Lin::zero();
    for cut in 0..face.verts.len() {
        let front = SimplexFace {
            n: face.n,
            verts: face.verts[..=cut].to_vec(),
        };
        let back = SimplexFace {
            n: face.n,
            verts: face.verts[cut..].to_vec(),
        };
        out.add_term(Tensor2(front, back), field.one());
    }
    out
}

/// Dual basis element of a face; graded in negative degrees so tensor
/// degree bookkeeping stays uniform.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DualFace(pub SimplexFace);

impl BasisElt for DualFace {
    fn degree(&self) -> i64 {
        -(self.0.dim() as i64)
    }
}

impl fmt::Display for DualFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*", self.0)
    }
}

/// Differential on dual faces: transpose of the boundary with the sign
/// `(-1)^(m+1)` on duals of m-faces.
pub fn cochain_differential(field: &FieldSpec, dual: &DualFace) -> Lin<DualFace> {
    let face = &dual.0;
    let m = face.dim();
    let mut out = Lin::zero();
    // Cofaces arise by inserting one vertex.
    for v in 0..=face.n {
        if face.verts.contains(&v) {
            continue;
        }
        let pos = face.verts.partition_point(|&u| u < v);
        let mut verts = face.verts.clone();
        verts.insert(pos, v);
        // The inserted vertex sits at index `pos` of the coface, so the
        // incidence coefficient of `face` in its boundary is (-1)^pos.
        let incidence = if pos % 2 == 0 { 1 } else { -1 };
        let twist = if (m + 1) % 2 == 0 { 1 } else { -1 };
        out.add_term(
            DualFace(SimplexFace { n: face.n, verts }),
            field.integer(incidence * twist),
        );
    }
    out
}

/// The trace element of the `n`-simplex: the sum of face-dual pairs over
/// every face.  It has total degree zero and is a cycle for the mixed
/// differential.
pub fn trace_element(field: &FieldSpec, n: usize) -> Lin<Tensor2<SimplexFace, DualFace>> {
    let mut out = Lin::zero();
    for m in 0..=n {
        for f in face_basis(n, m) {
            out.add_term(Tensor2(f.clone(), DualFace(f)), field.one());
        }
    }
    out
}

/// Evaluation pairing `<dual, chain>` extended to tensor words on the
/// chain side: pairs a dual face against a face.
pub fn trace_pairing(field: &FieldSpec, dual: &DualFace, face: &SimplexFace) -> crate::scalar::Scalar {
    if dual.0 == *face {
        field.one()
    } else {
        field.zero()
    }
}

/// Mixed differential on element-dual pairs used by the trace cycle check:
/// boundary on the left factor plus Koszul-signed cochain differential on
/// the right factor.
pub fn pair_differential(
    field: &FieldSpec,
    t: &Tensor2<SimplexFace, DualFace>,
) -> Lin<Tensor2<SimplexFace, DualFace>> {
    let mut out = Lin::zero();
    for (f, c) in boundary(field, &t.0).iter() {
        out.add_term(Tensor2(f.clone(), t.1.clone()), c.clone());
    }
    let koszul = field.integer(swap_sign(t.0.degree(), 1));
    for (d, c) in cochain_differential(field, &t.1).iter() {
        out.add_term(Tensor2(t.0.clone(), d.clone()), c.clone() * koszul.clone());
    }
    out
}

/// Tensor word of faces, the output shape of operadic coactions.
pub type FaceWord = TensorWord<SimplexFace>;

/// Differential of a tensor word of faces: boundary in each factor with
/// the Koszul sign of the factors passed over.
pub fn face_word_boundary(field: &FieldSpec, w: &FaceWord) -> Lin<FaceWord> {
    let mut out = Lin::zero();
    let mut prefix = 0i64;
    for (i, f) in w.0.iter().enumerate() {
        let sign = field.integer(if prefix % 2 == 0 { 1 } else { -1 });
        for (g, c) in boundary(field, f).iter() {
            let mut factors = w.0.clone();
            factors[i] = g.clone();
            out.add_term(TensorWord(factors), c.clone() * sign.clone());
        }
        prefix += f.degree();
    }
    out
}
