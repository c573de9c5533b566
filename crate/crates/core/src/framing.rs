//! Simplex framings of free algebras: generators decorated by simplex
//! faces, the induced map f♯ on decorated generators, the cosimplicial
//! structure, and the dg-level adjunction transpose through the trace.
//!
//! The framed algebra on generators K over the n-simplex is the free
//! algebra on K ⊗ N_*(Δ^n).  A generator-level map f: K → Ε(L) induces
//! f♯ on decorated generators: split each label of f(base) by the
//! operad coproduct, let the second factor act on the face through the
//! diagonal coaction, and distribute the resulting face factors onto
//! the arguments, moving every face chain past the argument tails with
//! Koszul signs.

use crate::barratt_eccles::be_coproduct;
use crate::error::Result;
use crate::free_algebra::{canonical_form, extend_morphism, FreeWord, Mode};
use crate::linear::{BasisElt, Lin, Tensor2};
use crate::scalar::FieldSpec;
use crate::simplex::{
    boundary, face_basis, pushforward, DualFace, MonotoneMap, SimplexFace,
};
use crate::surjection::be_coaction;
use std::fmt;

/// A generator decorated by a nondegenerate simplex face.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Framed<B: BasisElt> {
    pub base: B,
    pub face: SimplexFace,
}

impl<B: BasisElt> BasisElt for Framed<B> {
    fn degree(&self) -> i64 {
        self.base.degree() + self.face.dim() as i64
    }
}

impl<B: BasisElt> fmt::Display for Framed<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}", self.base, self.face)
    }
}

/// Tensor differential on decorated generators.
pub fn framed_differential<B: BasisElt>(
    field: &FieldSpec,
    base_diff: &mut impl FnMut(&B) -> Lin<B>,
    g: &Framed<B>,
) -> Lin<Framed<B>> {
    let mut out = Lin::zero();
    for (b, c) in base_diff(&g.base).iter() {
        out.add_term(
            Framed {
                base: b.clone(),
                face: g.face.clone(),
            },
            c.clone(),
        );
    }
    let sign = field.integer(if g.base.degree() % 2 != 0 { -1 } else { 1 });
    for (f, c) in boundary(field, &g.face).iter() {
        out.add_term(
            Framed {
                base: g.base.clone(),
                face: f.clone(),
            },
            c.clone() * sign.clone(),
        );
    }
    out
}

/// The decorated extension of a generator-level map: apply `f` to the
/// base, split each label by the coproduct, let the second factor act
/// on the face, and distribute the face factors onto the arguments.
pub fn f_sharp<B: BasisElt, C: BasisElt>(
    field: &FieldSpec,
    f: &mut impl FnMut(&B) -> Lin<FreeWord<C>>,
    g: &Framed<B>,
) -> Result<Lin<FreeWord<Framed<C>>>> {
    let mut out = Lin::zero();
    for (word, cw) in f(&g.base).iter() {
        let arg_degrees: Vec<i64> = word.args.iter().map(|a| a.degree()).collect();
        let total: i64 = arg_degrees.iter().sum();
        for (Tensor2(front, back), cc) in be_coproduct(field, &word.label).iter() {
            // The second factor moves right past all the arguments
            // before it reaches the face.
            let sign1 = if back.degree() % 2 != 0 && total % 2 != 0 {
                -1
            } else {
                1
            };
            let cuts = be_coaction(field, &Lin::single(back.clone(), field.one()), &g.face);
            for (faces, cf) in cuts.iter() {
                debug_assert_eq!(faces.0.len(), word.weight());
                // Face factor i travels left past the argument tail.
                let mut sign2 = 1i64;
                let mut tail = total;
                for (i, tau) in faces.0.iter().enumerate() {
                    tail -= arg_degrees[i];
                    if tau.dim() % 2 != 0 && tail % 2 != 0 {
                        sign2 = -sign2;
                    }
                }
                let args: Vec<Framed<C>> = word
                    .args
                    .iter()
                    .zip(faces.0.iter())
                    .map(|(eta, tau)| Framed {
                        base: eta.clone(),
                        face: tau.clone(),
                    })
                    .collect();
                let canon = canonical_form(field, Mode::Labelled, front, &args)?;
                let coeff = cw.clone()
                    * cc.clone()
                    * cf.clone()
                    * field.integer(sign1 * sign2);
                out.add_scaled(&canon, &coeff);
            }
        }
    }
    Ok(out)
}

/// Linear extension of `f_sharp` over decorated elements.
pub fn f_sharp_lin<B: BasisElt, C: BasisElt>(
    field: &FieldSpec,
    f: &mut impl FnMut(&B) -> Lin<FreeWord<C>>,
    e: &Lin<Framed<B>>,
) -> Result<Lin<FreeWord<Framed<C>>>> {
    let mut out = Lin::zero();
    for (g, c) in e.iter() {
        out.add_scaled(&f_sharp(field, f, g)?, c);
    }
    Ok(out)
}

/// The framed algebra morphism φ_f ⊗ Δ^n: extension of f♯ to words.
pub fn frame_map<B: BasisElt, C: BasisElt>(
    field: &FieldSpec,
    f: &mut impl FnMut(&B) -> Lin<FreeWord<C>>,
    e: &Lin<FreeWord<Framed<B>>>,
) -> Result<Lin<FreeWord<Framed<C>>>> {
    let mut out = Lin::zero();
    for (w, c) in e.iter() {
        let image = extend_morphism(field, Mode::Labelled, w, &mut |g: &Framed<B>| {
            f_sharp(field, f, g).expect("framed extension failed")
        })?;
        out.add_scaled(&image, c);
    }
    Ok(out)
}

/// Cosimplicial structure map on a decorated generator: push the face
/// forward, keep the base; degenerate images vanish.
pub fn frame_structure_map<B: BasisElt>(
    field: &FieldSpec,
    u: &MonotoneMap,
    g: &Framed<B>,
) -> Result<Lin<Framed<B>>> {
    Ok(match pushforward(u, &g.face)? {
        None => Lin::zero(),
        Some(face) => Lin::single(
            Framed {
                base: g.base.clone(),
                face,
            },
            field.one(),
        ),
    })
}

/// Structure map extended to words of the framed algebra.
pub fn frame_structure_words<B>(
    u: &MonotoneMap,
    e: &Lin<FreeWord<B>>,
) -> Result<Lin<FreeWord<B>>>
where
    B: FramedLike,
{
    let mut out = Lin::zero();
    for (w, c) in e.iter() {
        let mut args = Vec::with_capacity(w.weight());
        let mut dead = false;
        for a in &w.args {
            match a.push_face(u)? {
                None => {
                    dead = true;
                    break;
                }
                Some(b) => args.push(b),
            }
        }
        if dead {
            continue;
        }
        out.add_term(
            FreeWord {
                label: w.label.clone(),
                args,
            },
            c.clone(),
        );
    }
    Ok(out)
}

/// Basis elements that carry a face which structure maps can push.
pub trait FramedLike: BasisElt {
    fn push_face(&self, u: &MonotoneMap) -> Result<Option<Self>>
    where
        Self: Sized;
}

impl<B: BasisElt> FramedLike for Framed<B> {
    fn push_face(&self, u: &MonotoneMap) -> Result<Option<Self>> {
        Ok(pushforward(u, &self.face)?.map(|face| Framed {
            base: self.base.clone(),
            face,
        }))
    }
}

/// Transpose of a map into cochain-decorated values: evaluate the dual
/// factor against the decorating face.
pub fn adjoint_transpose<B: BasisElt, C: BasisElt>(
    field: &FieldSpec,
    phi: &mut impl FnMut(&B) -> Lin<Tensor2<C, DualFace>>,
    g: &Framed<B>,
) -> Lin<C> {
    let mut out = Lin::zero();
    for (Tensor2(b, dual), c) in phi(&g.base).iter() {
        let pair = crate::simplex::trace_pairing(field, dual, &g.face);
        if !pair.is_zero() {
            out.add_term(b.clone(), c.clone() * pair);
        }
    }
    out
}

/// Transpose back via the trace element: sum the values on all face
/// decorations against the matching duals.
pub fn adjoint_transpose_back<B: BasisElt, C: BasisElt>(
    n: usize,
    psi: &mut impl FnMut(&Framed<B>) -> Lin<C>,
    x: &B,
) -> Lin<Tensor2<C, DualFace>> {
    let mut out = Lin::zero();
    for m in 0..=n {
        for face in face_basis(n, m) {
            let g = Framed {
                base: x.clone(),
                face: face.clone(),
            };
            for (b, c) in psi(&g).iter() {
                out.add_term(Tensor2(b.clone(), DualFace(face.clone())), c.clone());
            }
        }
    }
    out
}
