//! Realization of the simplicial resolution as one quasi-free dg algebra.
//!
//! Generators are normalized level trees, one for each level-n tree and
//! shifted n extra degrees.  The differential combines the internal
//! differential of a tree with the alternating faces of its simplex; the
//! face values are rewritten back into generators by `Reducer`, which
//! peels missing vertices off a decorated tree one at a time and
//! redistributes the cut faces over the free-algebra structure.  The
//! same machinery drives the skeletal quotient presentation used as an
//! independent check, the collapse onto the symmetric operad in
//! characteristic zero, and the unit-padding comparison.

use crate::barratt_eccles::{be_basis_canonical, be_boundary, be_coproduct, PermTuple};
use crate::cotriple::{
    normalized_tree_basis_mode, res_face_mode, tree_basis_mode, tree_degeneracy, TreeNode,
};
use crate::error::{Error, Result};
use crate::free_algebra::{
    canonical_form, free_basis_window, free_differential, free_operad_action, substitute_at,
    FreeWord, Mode,
};
use crate::framing::{f_sharp, framed_differential, Framed};
use crate::homology::{Echelon, FiniteChainComplex};
use crate::linear::{BasisElt, Lin, Tensor2};
use crate::perm::Perm;
use crate::presentation::{ABasis, AlgebraKind, AlgebraPresentation};
use crate::scalar::{FieldSpec, Scalar};
use crate::simplex::{boundary, face_basis, pushforward, MonotoneMap, SimplexFace};
use crate::surjection::be_coaction;
use itertools::Itertools;
use std::collections::BTreeMap;
use std::fmt;

/// Operad flavor a model is built over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperadMode {
    /// The permutation-tuple operad.
    E,
    /// The same operad, modelling the input with its unit adjoined: the
    /// realized complex keeps an extra unit line in degree zero.
    EUnitary,
    /// The arity-wise collapse with one operation per arity; a model
    /// only in characteristic zero.
    Com,
}

impl OperadMode {
    fn word_mode(self) -> Mode {
        match self {
            OperadMode::Com => Mode::Symmetric,
            OperadMode::E | OperadMode::EUnitary => Mode::Labelled,
        }
    }
}

/// A model generator: a normalized level tree, shifted by its level.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModelGen(pub TreeNode);

impl ModelGen {
    pub fn level(&self) -> usize {
        self.0.level()
    }
}

impl BasisElt for ModelGen {
    fn degree(&self) -> i64 {
        self.0.degree() + self.0.level() as i64
    }
}

impl fmt::Display for ModelGen {
    // The level prefix keeps names unique when a leaf is itself named
    // after a word shape, as happens for free-algebra inputs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; {}]", self.0.level(), self.0)
    }
}

/// Internal differential of a level tree: boundaries of vertex labels
/// plus the input differential on leaves, with prefix Koszul signs.
pub fn tree_delta(a: &AlgebraPresentation, mode: Mode, t: &TreeNode) -> Result<Lin<TreeNode>> {
    match t {
        TreeNode::Leaf(b) => {
            let mut out = Lin::zero();
            for (b2, c) in a.differential(b)?.iter() {
                out.add_term(TreeNode::Leaf(b2.clone()), c.clone());
            }
            Ok(out)
        }
        TreeNode::Vertex(x, ch) => {
            let w = FreeWord {
                label: x.clone(),
                args: ch.clone(),
            };
            let image = free_differential(&a.field(), mode, &w, &mut |c: &TreeNode| {
                tree_delta(a, mode, c).expect("tree differential failed")
            })?;
            let mut out = Lin::zero();
            for (w2, c) in image.iter() {
                out.add_term(TreeNode::Vertex(w2.label.clone(), w2.args.clone()), c.clone());
            }
            Ok(out)
        }
    }
}

/// Rewrites a level tree decorated by a simplex face into a polynomial
/// in model generators.  Fundamental decorations wrap normalized trees
/// and kill degenerate ones; any other face is peeled one missing
/// vertex at a time through the simplicial face operators, distributing
/// cut faces over words with the same signs as the framed morphism
/// extension.  Results are memoized per decorated tree.
pub struct Reducer<'a> {
    a: &'a AlgebraPresentation,
    field: FieldSpec,
    mode: Mode,
    cache: BTreeMap<(TreeNode, SimplexFace), Lin<FreeWord<ModelGen>>>,
}

impl<'a> Reducer<'a> {
    pub fn new(a: &'a AlgebraPresentation, operad: OperadMode) -> Reducer<'a> {
        Reducer {
            a,
            field: a.field(),
            mode: operad.word_mode(),
            cache: BTreeMap::new(),
        }
    }

    /// The class of `xi ⊗ sigma` in generators, for a level-n tree and a
    /// face of the n-simplex.
    pub fn reduce(&mut self, xi: &TreeNode, sigma: &SimplexFace) -> Result<Lin<FreeWord<ModelGen>>> {
        let n = xi.level();
        if sigma.n != n {
            return Err(Error::Validation(format!(
                "level-{n} tree decorated by a face of the {}-simplex",
                sigma.n
            )));
        }
        let key = (xi.clone(), sigma.clone());
        if let Some(hit) = self.cache.get(&key) {
            return Ok(hit.clone());
        }
        let out = if sigma.is_fundamental() {
            if xi.is_normalized() {
                Lin::single(FreeWord::wrap(ModelGen(xi.clone())), self.field.one())
            } else {
                Lin::zero()
            }
        } else {
            // Peel the outermost missing vertex: the face inclusion ends
            // with that coface, so its operator applies first.
            let j = *sigma
                .as_monotone()
                .skipped()
                .last()
                .expect("a non-fundamental face misses a vertex");
            let z = res_face_mode(
                self.a,
                self.mode,
                j,
                &Lin::single(FreeWord::wrap(xi.clone()), self.field.one()),
            )?;
            let verts: Vec<usize> = sigma
                .verts
                .iter()
                .map(|&v| if v > j { v - 1 } else { v })
                .collect();
            let target = SimplexFace::new(n - 1, verts)?;
            self.reduce_words(&z, &target)?
        };
        self.cache.insert(key, out.clone());
        Ok(out)
    }

    // Rewrite a combination of level-(m) words against a face of the
    // m-simplex: split each label by the coproduct, cut the face along
    // the second factor, reduce the decorated arguments, and reassemble
    // under the first factor.  Signs mirror the framed extension.
    fn reduce_words(
        &mut self,
        z: &Lin<FreeWord<TreeNode>>,
        sigma: &SimplexFace,
    ) -> Result<Lin<FreeWord<ModelGen>>> {
        let field = self.field;
        let mut out = Lin::zero();
        for (w, cw) in z.clone().into_iter_terms() {
            if w.weight() == 1 && w.label.is_unit() {
                let part = self.reduce(&w.args[0], sigma)?;
                out.add_scaled(&part, &cw);
                continue;
            }
            let arg_degrees: Vec<i64> = w.args.iter().map(|a| a.degree()).collect();
            let total: i64 = arg_degrees.iter().sum();
            let coproduct = be_coproduct(&field, &w.label);
            for (Tensor2(front, back), cc) in coproduct.iter() {
                let sign1 = if back.degree() % 2 != 0 && total % 2 != 0 {
                    -1
                } else {
                    1
                };
                let cuts = be_coaction(&field, &Lin::single(back.clone(), field.one()), sigma);
                for (faces, cf) in cuts.iter() {
                    let mut sign2 = 1i64;
                    let mut tail = total;
                    for (i, tau) in faces.0.iter().enumerate() {
                        tail -= arg_degrees[i];
                        if tau.dim() % 2 != 0 && tail % 2 != 0 {
                            sign2 = -sign2;
                        }
                    }
                    let mut parts = Vec::with_capacity(w.weight());
                    let mut dead = false;
                    for (t, tau) in w.args.iter().zip(faces.0.iter()) {
                        let part = self.reduce(t, tau)?;
                        if part.is_zero() {
                            dead = true;
                            break;
                        }
                        parts.push(part);
                    }
                    if dead {
                        continue;
                    }
                    let assembled = free_operad_action(
                        &field,
                        self.mode,
                        &Lin::single(front.clone(), field.one()),
                        &parts,
                    )?;
                    let coeff =
                        cw.clone() * cc.clone() * cf.clone() * field.integer(sign1 * sign2);
                    out.add_scaled(&assembled, &coeff);
                }
            }
        }
        Ok(out)
    }

    /// The twisting part of a generator's differential: the face missing
    /// the zeroth vertex, reduced to generators.  Level zero has none.
    pub fn twisting(&mut self, g: &ModelGen) -> Result<Lin<FreeWord<ModelGen>>> {
        let n = g.level();
        if n == 0 {
            return Ok(Lin::zero());
        }
        let face = SimplexFace::new(n, (1..=n).collect())?;
        self.reduce(&g.0, &face)
    }

    /// The full differential of a generator: the internal differential
    /// of its tree over the fundamental face, plus the sign-adjusted
    /// alternating faces of the simplex (the zeroth being the twisting).
    pub fn differential(&mut self, g: &ModelGen) -> Result<Lin<FreeWord<ModelGen>>> {
        let field = self.field;
        let fundamental = SimplexFace::fundamental(g.level());
        let mut out = Lin::zero();
        let internal = tree_delta(self.a, self.mode, &g.0)?;
        for (t, c) in internal.iter() {
            let part = self.reduce(t, &fundamental)?;
            out.add_scaled(&part, c);
        }
        let sign = field.integer(if g.0.degree() % 2 != 0 { -1 } else { 1 });
        let faces = boundary(&field, &fundamental);
        for (face, c) in faces.iter() {
            let part = self.reduce(&g.0, face)?;
            out.add_scaled(&part, &(c.clone() * sign.clone()));
        }
        Ok(out)
    }
}

/// A quasi-free dg algebra on tree generators with a tabulated
/// differential, truncated to a total-degree window.  The table rows
/// only involve generators of strictly smaller degree, so the truncation
/// is closed; homology is trustworthy strictly below the window edge.
#[derive(Debug, Clone)]
pub struct QuasiFreeModel {
    field: FieldSpec,
    operad: OperadMode,
    window: i64,
    generators: Vec<ModelGen>,
    diff: BTreeMap<ModelGen, Lin<FreeWord<ModelGen>>>,
}

impl QuasiFreeModel {
    fn mode(&self) -> Mode {
        self.operad.word_mode()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn operad(&self) -> OperadMode {
        self.operad
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn generators(&self) -> &[ModelGen] {
        &self.generators
    }

    fn has_unit_line(&self) -> bool {
        matches!(self.operad, OperadMode::EUnitary)
    }

    pub fn generator_differential(&self, g: &ModelGen) -> Result<&Lin<FreeWord<ModelGen>>> {
        self.diff
            .get(g)
            .ok_or_else(|| Error::Validation(format!("{g} is not a generator of this model")))
    }

    /// Word basis in one degree of the window.
    pub fn basis_in_degree(&self, degree: i64) -> Result<Vec<FreeWord<ModelGen>>> {
        if degree > self.window {
            return Err(Error::Window(format!(
                "degree {degree} lies beyond the window {}",
                self.window
            )));
        }
        if degree < 1 {
            return Ok(Vec::new());
        }
        free_basis_window(&self.field, self.mode(), &self.generators, degree)
    }

    /// Differential of a single word, extended from the generator table
    /// as a derivation over the label boundary.
    pub fn differential(&self, w: &FreeWord<ModelGen>) -> Result<Lin<FreeWord<ModelGen>>> {
        let field = self.field;
        let mode = self.mode();
        let mut out = Lin::zero();
        if matches!(mode, Mode::Labelled) {
            for (lab, c) in be_boundary(&field, &w.label).iter() {
                let canon = canonical_form(&field, mode, lab, &w.args)?;
                out.add_scaled(&canon, c);
            }
        }
        let mut prefix = w.label.degree();
        for (j, g) in w.args.iter().enumerate() {
            let row = self.generator_differential(g)?;
            if !row.is_zero() {
                let sign = field.integer(if prefix % 2 != 0 { -1 } else { 1 });
                let image = substitute_at(&field, mode, w, j, row)?;
                out.add_scaled(&image, &sign);
            }
            prefix += g.degree();
        }
        Ok(out)
    }

    /// Verifies that the differential squares to zero on every
    /// generator, which a derivation inherits on all words.  Returns the
    /// number of generators checked.
    pub fn check_square_zero(&self) -> Result<usize> {
        for g in &self.generators {
            let row = self.generator_differential(g)?;
            let mut square = Lin::zero();
            for (w, c) in row.iter() {
                square.add_scaled(&self.differential(w)?, c);
            }
            if !square.is_zero() {
                return Err(Error::CheckFailed(format!(
                    "differential does not square to zero on {g}: got {square}"
                )));
            }
        }
        Ok(self.generators.len())
    }

    /// The windowed chain complex on the word basis; construction
    /// re-validates that the differential squares to zero.
    pub fn complex(&self) -> Result<FiniteChainComplex> {
        let mut basis: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        let mut diff: BTreeMap<String, Vec<(String, Scalar)>> = BTreeMap::new();
        for d in 0..=self.window {
            let words = self.basis_in_degree(d)?;
            let mut names = Vec::with_capacity(words.len());
            for w in &words {
                let name = w.to_string();
                let image = self.differential(w)?;
                diff.insert(
                    name.clone(),
                    image.iter().map(|(w2, c)| (w2.to_string(), c.clone())).collect(),
                );
                names.push(name);
            }
            basis.insert(d, names);
        }
        if self.has_unit_line() {
            basis.entry(0).or_default().push("1".to_string());
        }
        FiniteChainComplex::new(self.field, basis, &diff)
    }

    /// Homology dimensions over `lo..=hi`, which must stay strictly
    /// below the window edge.
    pub fn homology(&self, lo: i64, hi: i64) -> Result<BTreeMap<i64, usize>> {
        if hi > self.window - 1 {
            return Err(Error::Window(format!(
                "window {} only determines homology through degree {}",
                self.window,
                self.window - 1
            )));
        }
        Ok(self.complex()?.homology_dims(lo, hi))
    }

    /// Renders the generator table: one header line per generator with
    /// its level, degree and tree, then its differential written in the
    /// numbered generators.
    pub fn dump(&self) -> String {
        let index: BTreeMap<&ModelGen, usize> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g, i))
            .collect();
        let mut out = String::new();
        for (i, g) in self.generators.iter().enumerate() {
            out.push_str(&format!(
                "g{} level={} degree={} tree={}\n",
                i,
                g.level(),
                g.degree(),
                g.0
            ));
            let row = self.diff.get(g).expect("every generator has a table row");
            out.push_str(&format!("d g{} = {}\n", i, render_row(row, &index)));
        }
        out
    }
}

fn render_row(row: &Lin<FreeWord<ModelGen>>, index: &BTreeMap<&ModelGen, usize>) -> String {
    if row.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::with_capacity(row.len());
    for (w, c) in row.iter() {
        let args: Vec<String> = w
            .args
            .iter()
            .map(|g| {
                format!(
                    "g{}",
                    index
                        .get(g)
                        .expect("differential stays inside the generator table")
                )
            })
            .collect();
        let monomial = if w.weight() == 1 && w.label.is_unit() {
            args[0].clone()
        } else {
            format!("({}; {})", w.label, args.join(", "))
        };
        if c.is_one() {
            parts.push(monomial);
        } else {
            parts.push(format!("{c}*{monomial}"));
        }
    }
    parts.join(" + ")
}

/// Builds the quasi-free model of a presented input over the chosen
/// operad flavor, with all generators of total degree within the
/// window.  Normalized trees of level n need degree at least 2n+1, so
/// the level range is finite.
pub fn build_model(
    a: &AlgebraPresentation,
    operad: OperadMode,
    window: i64,
) -> Result<QuasiFreeModel> {
    if window < 1 {
        return Err(Error::Window(format!("window {window} is empty")));
    }
    match operad {
        OperadMode::Com => {
            if a.field().characteristic() != 0 {
                return Err(Error::Unsupported(
                    "the symmetric collapse is only a model in characteristic zero".into(),
                ));
            }
            if !matches!(a.kind(), AlgebraKind::Commutative) {
                return Err(Error::Unsupported(
                    "the symmetric collapse needs a commutative input".into(),
                ));
            }
        }
        OperadMode::EUnitary => {
            if a.is_zero_algebra() {
                return Err(Error::Validation(
                    "adjoining a unit to the zero algebra is not modelled; use the plain flavor"
                        .into(),
                ));
            }
        }
        OperadMode::E => {}
    }
    let mode = operad.word_mode();
    let max_level = ((window - 1) / 2).max(0) as usize;
    let mut generators: Vec<ModelGen> = Vec::new();
    for n in 0..=max_level {
        for t in normalized_tree_basis_mode(a, mode, n, window - n as i64)? {
            generators.push(ModelGen(t));
        }
    }
    generators.sort_by(|p, q| {
        (p.degree(), p.level())
            .cmp(&(q.degree(), q.level()))
            .then_with(|| p.0.cmp(&q.0))
    });
    let mut reducer = Reducer::new(a, operad);
    let mut diff = BTreeMap::new();
    for g in &generators {
        diff.insert(g.clone(), reducer.differential(g)?);
    }
    Ok(QuasiFreeModel {
        field: a.field(),
        operad,
        window,
        generators,
        diff,
    })
}

/// Degree-by-degree comparison of model homology against the homology
/// of the input over the window.
#[derive(Debug, Clone)]
pub struct ResolutionReport {
    pub operad: OperadMode,
    pub window: i64,
    /// Degrees above this are not determined by the window.
    pub valid_to: i64,
    /// degree -> (model homology, input homology)
    pub rows: BTreeMap<i64, (usize, usize)>,
}

impl ResolutionReport {
    pub fn is_ok(&self) -> bool {
        self.rows.values().all(|(m, t)| m == t)
    }
}

pub fn verify_resolution(
    a: &AlgebraPresentation,
    operad: OperadMode,
    window: i64,
) -> Result<ResolutionReport> {
    let model = build_model(a, operad, window)?;
    let hi = window - 1;
    let model_h = model.homology(0, hi)?;
    let mut target = a.homology_dims(0, hi)?;
    if matches!(operad, OperadMode::EUnitary) {
        *target.entry(0).or_insert(0) += 1;
    }
    let rows = (0..=hi)
        .map(|d| (d, (model_h[&d], target[&d])))
        .collect();
    Ok(ResolutionReport {
        operad,
        window,
        valid_to: hi,
        rows,
    })
}

/// The augmentation of a model onto its input: level-zero generators
/// map to their leaf, higher levels to zero, and words evaluate through
/// the action on the input.
#[derive(Debug, Clone)]
pub struct AugmentationReport {
    pub values: BTreeMap<ModelGen, Lin<ABasis>>,
    pub words_checked: usize,
}

fn augment_word(
    a: &AlgebraPresentation,
    values: &BTreeMap<ModelGen, Lin<ABasis>>,
    w: &FreeWord<ModelGen>,
) -> Result<Lin<ABasis>> {
    let field = a.field();
    let mut args = Vec::with_capacity(w.weight());
    for g in &w.args {
        let v = values
            .get(g)
            .ok_or_else(|| Error::Validation(format!("{g} has no augmentation value")))?;
        if v.is_zero() {
            return Ok(Lin::zero());
        }
        args.push(v.clone());
    }
    a.evaluate_action(&Lin::single(w.label.clone(), field.one()), &args)
}

fn augment_words(
    a: &AlgebraPresentation,
    values: &BTreeMap<ModelGen, Lin<ABasis>>,
    e: &Lin<FreeWord<ModelGen>>,
) -> Result<Lin<ABasis>> {
    let mut out = Lin::zero();
    for (w, c) in e.iter() {
        out.add_scaled(&augment_word(a, values, w)?, c);
    }
    Ok(out)
}

/// Computes the augmentation and verifies it is a chain map on every
/// word of the window.
pub fn model_augmentation(
    model: &QuasiFreeModel,
    a: &AlgebraPresentation,
) -> Result<AugmentationReport> {
    let field = model.field();
    let mut values: BTreeMap<ModelGen, Lin<ABasis>> = BTreeMap::new();
    for g in model.generators() {
        let v = match &g.0 {
            TreeNode::Leaf(b) => Lin::single(b.clone(), field.one()),
            TreeNode::Vertex(..) => Lin::zero(),
        };
        values.insert(g.clone(), v);
    }
    let mut words_checked = 0usize;
    for d in 1..=model.window() {
        for w in model.basis_in_degree(d)? {
            let lhs = augment_words(a, &values, &model.differential(&w)?)?;
            let rhs = a.differential_lin(&augment_word(a, &values, &w)?)?;
            let mut delta = lhs;
            delta.add_scaled(&rhs, &field.integer(-1));
            if !delta.is_zero() {
                return Err(Error::CheckFailed(format!(
                    "augmentation is not a chain map on {w}: mismatch {delta}"
                )));
            }
            words_checked += 1;
        }
    }
    Ok(AugmentationReport {
        values,
        words_checked,
    })
}

// A framed generator or a placeholder of fixed degree used to enumerate
// one-hole contexts when closing relations into an ideal span.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum SkelB {
    Gen(Framed<TreeNode>),
    Hole(i64),
}

impl BasisElt for SkelB {
    fn degree(&self) -> i64 {
        match self {
            SkelB::Gen(g) => g.degree(),
            SkelB::Hole(e) => *e,
        }
    }
}

impl fmt::Display for SkelB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkelB::Gen(g) => write!(f, "{g}"),
            SkelB::Hole(e) => write!(f, "_{e}"),
        }
    }
}

fn span_coordinates<B: BasisElt>(basis: &[B], e: &Lin<B>) -> Result<Vec<(usize, Scalar)>> {
    let mut col = Vec::with_capacity(e.len());
    for (b, c) in e.iter() {
        let i = basis
            .binary_search(b)
            .map_err(|_| Error::Validation(format!("{b} fell outside the enumerated span")))?;
        col.push((i, c.clone()));
    }
    Ok(col)
}

/// A truncated presentation of the realized object through a fixed
/// simplicial level: the free algebra on all decorated trees of level
/// at most `skeleton`, modulo the span matching pushed-forward faces
/// against the simplicial operators, closed under multiplication by
/// arbitrary words.
pub struct CoendSkeleton {
    field: FieldSpec,
    mode: Mode,
    pub skeleton: usize,
    pub window: i64,
    basis: BTreeMap<i64, Vec<FreeWord<Framed<TreeNode>>>>,
    generating: BTreeMap<i64, Vec<Lin<FreeWord<Framed<TreeNode>>>>>,
    echelons: BTreeMap<i64, Echelon>,
}

fn framed_generators(
    a: &AlgebraPresentation,
    mode: Mode,
    skeleton: usize,
    window: i64,
) -> Result<Vec<Framed<TreeNode>>> {
    let mut out = Vec::new();
    for n in 0..=skeleton {
        for t in tree_basis_mode(a, mode, n, window)? {
            for m in 0..=n {
                for face in face_basis(n, m) {
                    if t.degree() + m as i64 <= window {
                        out.push(Framed {
                            base: t.clone(),
                            face,
                        });
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn skeletal_coend(
    a: &AlgebraPresentation,
    skeleton: usize,
    window: i64,
) -> Result<CoendSkeleton> {
    if window < 1 {
        return Err(Error::Window(format!("window {window} is empty")));
    }
    let field = a.field();
    let mode = Mode::Labelled;
    let gens = framed_generators(a, mode, skeleton, window)?;
    let mut basis = BTreeMap::new();
    for d in 1..=window {
        basis.insert(d, free_basis_window(&field, mode, &gens, d)?);
    }

    // Generating relations: a decorated tree with a pushed-forward face
    // agrees with the simplicial operator applied to the tree.  Cofaces
    // relate consecutive levels; codegeneracies kill degenerate images.
    let mut generating: BTreeMap<i64, Vec<Lin<FreeWord<Framed<TreeNode>>>>> = BTreeMap::new();
    let mut record =
        |deg: i64, rel: Lin<FreeWord<Framed<TreeNode>>>| {
            if !rel.is_zero() {
                generating.entry(deg).or_default().push(rel);
            }
        };
    for n in 1..=skeleton {
        for i in 0..=n {
            let u = MonotoneMap::coface(n, i);
            for xi in tree_basis_mode(a, mode, n, window)? {
                let z = res_face_mode(
                    a,
                    mode,
                    i,
                    &Lin::single(FreeWord::wrap(xi.clone()), field.one()),
                )?;
                for m in 0..n {
                    for sigma in face_basis(n - 1, m) {
                        let deg = xi.degree() + m as i64;
                        if deg > window {
                            continue;
                        }
                        let mut rel = Lin::zero();
                        if let Some(face) = pushforward(&u, &sigma)? {
                            rel.add_term(
                                FreeWord::wrap(Framed {
                                    base: xi.clone(),
                                    face,
                                }),
                                field.one(),
                            );
                        }
                        let spread = f_sharp(
                            &field,
                            &mut |_: &TreeNode| z.clone(),
                            &Framed {
                                base: xi.clone(),
                                face: sigma.clone(),
                            },
                        )?;
                        rel.add_scaled(&spread, &field.integer(-1));
                        record(deg, rel);
                    }
                }
            }
        }
    }
    for n in 0..skeleton {
        for j in 0..=n {
            let u = MonotoneMap::codegeneracy(n, j);
            for xi in tree_basis_mode(a, mode, n, window)? {
                let lifted = tree_degeneracy(j, &xi)?;
                let z = Lin::single(FreeWord::wrap(lifted), field.one());
                for m in 0..=(n + 1) {
                    for sigma in face_basis(n + 1, m) {
                        let deg = xi.degree() + m as i64;
                        if deg > window {
                            continue;
                        }
                        let mut rel = Lin::zero();
                        if let Some(face) = pushforward(&u, &sigma)? {
                            rel.add_term(
                                FreeWord::wrap(Framed {
                                    base: xi.clone(),
                                    face,
                                }),
                                field.one(),
                            );
                        }
                        let spread = f_sharp(
                            &field,
                            &mut |_: &TreeNode| z.clone(),
                            &Framed {
                                base: xi.clone(),
                                face: sigma.clone(),
                            },
                        )?;
                        rel.add_scaled(&spread, &field.integer(-1));
                        record(deg, rel);
                    }
                }
            }
        }
    }

    // Close the relations under word contexts: enumerate words with one
    // placeholder of the relation's degree and substitute the relation.
    let mut echelons: BTreeMap<i64, Echelon> = BTreeMap::new();
    for d in 1..=window {
        let mut ech = Echelon::new(field);
        for (&e, rels) in &generating {
            if e > d {
                continue;
            }
            let mut ext: Vec<SkelB> = gens.iter().cloned().map(SkelB::Gen).collect();
            ext.push(SkelB::Hole(e));
            ext.sort();
            for cw in free_basis_window(&field, mode, &ext, d)? {
                let holes = cw
                    .args
                    .iter()
                    .filter(|b| matches!(b, SkelB::Hole(_)))
                    .count();
                if holes != 1 {
                    continue;
                }
                for r in rels {
                    let args: Vec<Lin<FreeWord<Framed<TreeNode>>>> = cw
                        .args
                        .iter()
                        .map(|b| match b {
                            SkelB::Gen(g) => {
                                Lin::single(FreeWord::wrap(g.clone()), field.one())
                            }
                            SkelB::Hole(_) => r.clone(),
                        })
                        .collect();
                    let image = free_operad_action(
                        &field,
                        mode,
                        &Lin::single(cw.label.clone(), field.one()),
                        &args,
                    )?;
                    if image.is_zero() {
                        continue;
                    }
                    let col = span_coordinates(&basis[&d], &image)?;
                    ech.insert(col);
                }
            }
        }
        echelons.insert(d, ech);
    }
    Ok(CoendSkeleton {
        field,
        mode,
        skeleton,
        window,
        basis,
        generating,
        echelons,
    })
}

impl CoendSkeleton {
    pub fn ambient_dim(&self, degree: i64) -> usize {
        self.basis.get(&degree).map_or(0, |v| v.len())
    }

    pub fn quotient_dim(&self, degree: i64) -> usize {
        self.ambient_dim(degree) - self.echelons.get(&degree).map_or(0, |e| e.rank())
    }

    /// Whether an element lies in the relation span of its degree.
    fn contains(&self, degree: i64, e: &Lin<FreeWord<Framed<TreeNode>>>) -> Result<bool> {
        if e.is_zero() {
            return Ok(true);
        }
        let Some(basis) = self.basis.get(&degree) else {
            return Ok(false);
        };
        let col = span_coordinates(basis, e)?;
        Ok(self
            .echelons
            .get(&degree)
            .map_or(false, |ech| ech.contains(col)))
    }

    /// Whether the differential of every generating relation stays in
    /// the relation span one degree below; contexts then follow from the
    /// derivation rule.
    pub fn differential_closed(&self, a: &AlgebraPresentation) -> Result<bool> {
        for (&d, rels) in &self.generating {
            for r in rels {
                let mut dr = Lin::zero();
                for (w, c) in r.iter() {
                    let image =
                        free_differential(&self.field, self.mode, w, &mut |g: &Framed<TreeNode>| {
                            framed_differential(
                                &self.field,
                                &mut |t: &TreeNode| {
                                    tree_delta(a, Mode::Labelled, t)
                                        .expect("tree differential failed")
                                },
                                g,
                            )
                        })?;
                    dr.add_scaled(&image, c);
                }
                if dr.is_zero() {
                    continue;
                }
                if !self.contains(d - 1, &dr)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn reduce_framed_word(
    red: &mut Reducer<'_>,
    w: &FreeWord<Framed<TreeNode>>,
) -> Result<Lin<FreeWord<ModelGen>>> {
    let field = red.field;
    let mut parts = Vec::with_capacity(w.weight());
    for g in &w.args {
        parts.push(red.reduce(&g.base, &g.face)?);
    }
    free_operad_action(
        &field,
        Mode::Labelled,
        &Lin::single(w.label.clone(), field.one()),
        &parts,
    )
}

fn reduce_framed_words(
    red: &mut Reducer<'_>,
    e: &Lin<FreeWord<Framed<TreeNode>>>,
) -> Result<Lin<FreeWord<ModelGen>>> {
    let mut out = Lin::zero();
    for (w, c) in e.clone().into_iter_terms() {
        out.add_scaled(&reduce_framed_word(red, &w)?, &c);
    }
    Ok(out)
}

fn embed_model_words(e: &Lin<FreeWord<ModelGen>>) -> Lin<FreeWord<Framed<TreeNode>>> {
    let mut out = Lin::zero();
    for (w, c) in e.iter() {
        let args: Vec<Framed<TreeNode>> = w
            .args
            .iter()
            .map(|g| Framed {
                base: g.0.clone(),
                face: SimplexFace::fundamental(g.0.level()),
            })
            .collect();
        out.add_term(
            FreeWord {
                label: w.label.clone(),
                args,
            },
            c.clone(),
        );
    }
    out
}

/// Outcome of the model-versus-skeleton comparison: per-degree
/// dimensions, round trips both ways, and a note for every violation.
#[derive(Debug, Clone)]
pub struct CoendComparison {
    pub skeleton: usize,
    pub window: i64,
    /// degree -> (model dimension, skeletal quotient dimension)
    pub dims: BTreeMap<i64, (usize, usize)>,
    pub round_trips: usize,
    pub notes: Vec<String>,
}

impl CoendComparison {
    pub fn is_ok(&self) -> bool {
        self.notes.is_empty()
    }
}

/// Compares the generator model against the skeletal quotient on the
/// degrees the skeleton determines: dimensions agree, the reduction
/// kills every generating relation, reducing an embedded model word
/// returns it, and embedding a reduced ambient word lands back on it
/// modulo relations.
pub fn compare_model_coend(
    a: &AlgebraPresentation,
    skeleton: usize,
    window: i64,
) -> Result<CoendComparison> {
    let cap = window.min(2 * skeleton as i64 + 1);
    let model = build_model(a, OperadMode::E, cap)?;
    let coend = skeletal_coend(a, skeleton, cap)?;
    let field = a.field();
    let mut red = Reducer::new(a, OperadMode::E);
    let mut notes = Vec::new();
    let mut dims = BTreeMap::new();
    for d in 1..=cap {
        let m = model.basis_in_degree(d)?.len();
        let q = coend.quotient_dim(d);
        if m != q {
            notes.push(format!(
                "degree {d}: model dimension {m} differs from the skeletal quotient {q}"
            ));
        }
        dims.insert(d, (m, q));
    }
    for rels in coend.generating.values() {
        for r in rels {
            let image = reduce_framed_words(&mut red, r)?;
            if !image.is_zero() {
                let lead = r.iter().next().map(|(w, _)| w.to_string()).unwrap_or_default();
                notes.push(format!(
                    "reduction does not annihilate the matching relation at {lead}"
                ));
            }
        }
    }
    let mut round_trips = 0usize;
    for d in 1..=cap {
        for w in model.basis_in_degree(d)? {
            let there = Lin::single(w.clone(), field.one());
            let back = reduce_framed_words(&mut red, &embed_model_words(&there))?;
            if back != there {
                notes.push(format!("round trip through the skeleton moves {w}"));
            }
            round_trips += 1;
        }
        for w in coend.basis.get(&d).map_or(&[][..], |v| v.as_slice()) {
            let reduced = reduce_framed_word(&mut red, w)?;
            let mut delta = Lin::single(w.clone(), field.one());
            delta.add_scaled(&embed_model_words(&reduced), &field.integer(-1));
            if !coend.contains(d, &delta)? {
                notes.push(format!(
                    "embedding after reduction does not fix {w} modulo relations"
                ));
            }
            round_trips += 1;
        }
    }
    Ok(CoendComparison {
        skeleton,
        window: cap,
        dims,
        round_trips,
        notes,
    })
}

// Collapse of a tree onto the symmetric flavor: positive-dimension
// labels die, the rest sort their children with Koszul signs.  At most
// one term survives.
fn symmetrize_tree(field: &FieldSpec, t: &TreeNode) -> Result<Lin<TreeNode>> {
    match t {
        TreeNode::Leaf(b) => Ok(Lin::single(TreeNode::Leaf(b.clone()), field.one())),
        TreeNode::Vertex(x, ch) => {
            if x.dim() > 0 {
                return Ok(Lin::zero());
            }
            let parts: Vec<Lin<TreeNode>> = ch
                .iter()
                .map(|c| symmetrize_tree(field, c))
                .collect::<Result<_>>()?;
            let mut combos: Vec<(Vec<TreeNode>, Scalar)> = vec![(Vec::new(), field.one())];
            for part in &parts {
                let mut next = Vec::new();
                for (args, c) in &combos {
                    for (u, cu) in part.iter() {
                        let mut a2 = args.clone();
                        a2.push(u.clone());
                        next.push((a2, c.clone() * cu.clone()));
                    }
                }
                combos = next;
            }
            let mut out = Lin::zero();
            for (args, c) in combos {
                for (w, cw) in canonical_form(field, Mode::Symmetric, x, &args)?.iter() {
                    out.add_term(
                        TreeNode::Vertex(w.label.clone(), w.args.clone()),
                        c.clone() * cw.clone(),
                    );
                }
            }
            Ok(out)
        }
    }
}

fn symmetrize_row(
    field: &FieldSpec,
    row: &Lin<FreeWord<ModelGen>>,
) -> Result<Lin<FreeWord<ModelGen>>> {
    let mut out = Lin::zero();
    for (w, c) in row.iter() {
        if w.label.dim() > 0 {
            continue;
        }
        let parts: Vec<Lin<FreeWord<ModelGen>>> = w
            .args
            .iter()
            .map(|g| {
                let img = symmetrize_tree(field, &g.0)?;
                let mut lin = Lin::zero();
                for (t, ct) in img.iter() {
                    lin.add_term(FreeWord::wrap(ModelGen(t.clone())), ct.clone());
                }
                Ok(lin)
            })
            .collect::<Result<_>>()?;
        let assembled = free_operad_action(
            field,
            Mode::Symmetric,
            &Lin::single(w.label.clone(), field.one()),
            &parts,
        )?;
        out.add_scaled(&assembled, c);
    }
    Ok(out)
}

/// Pushes a permutation-operad model onto the symmetric collapse in
/// characteristic zero and checks the collapsed differential table
/// against the natively built symmetric model; any disagreement,
/// including between two preimages of one generator, is an error.
pub fn com_pushforward(
    model: &QuasiFreeModel,
    a: &AlgebraPresentation,
) -> Result<QuasiFreeModel> {
    if model.field().characteristic() != 0 {
        return Err(Error::Unsupported(
            "the symmetric collapse is only a model in characteristic zero".into(),
        ));
    }
    if !matches!(model.operad(), OperadMode::E) {
        return Err(Error::Unsupported(
            "the collapse starts from the plain permutation-operad model".into(),
        ));
    }
    let field = model.field();
    let native = build_model(a, OperadMode::Com, model.window())?;
    let mut table: BTreeMap<ModelGen, Lin<FreeWord<ModelGen>>> = BTreeMap::new();
    for g in model.generators() {
        let img = symmetrize_tree(&field, &g.0)?;
        let Some((t, c)) = img.iter().next().map(|(t, c)| (t.clone(), c.clone())) else {
            continue;
        };
        let target = ModelGen(t);
        let pushed = symmetrize_row(&field, model.generator_differential(g)?)?;
        let row = pushed.scaled(&c.inverse().expect("unit collapse coefficient"));
        if let Some(prev) = table.get(&target) {
            if *prev != row {
                return Err(Error::CheckFailed(format!(
                    "collapsed differentials of two preimages of {target} disagree"
                )));
            }
        } else {
            table.insert(target, row);
        }
    }
    if table.len() != native.generators().len() {
        return Err(Error::CheckFailed(format!(
            "collapse produced {} generators, native symmetric model has {}",
            table.len(),
            native.generators().len()
        )));
    }
    for g in native.generators() {
        let nrow = native.generator_differential(g)?;
        let prow = table.get(g).ok_or_else(|| {
            Error::CheckFailed(format!("native symmetric generator {g} is never hit"))
        })?;
        if nrow != prow {
            return Err(Error::CheckFailed(format!(
                "collapsed differential disagrees with the native one on {g}"
            )));
        }
    }
    Ok(QuasiFreeModel {
        field,
        operad: OperadMode::Com,
        window: model.window(),
        generators: native.generators().to_vec(),
        diff: table,
    })
}

// A level-n tree or the adjoined unit point, for the padding check.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum UnitB {
    One,
    Tree(TreeNode),
}

impl BasisElt for UnitB {
    fn degree(&self) -> i64 {
        match self {
            UnitB::One => 0,
            UnitB::Tree(t) => t.degree(),
        }
    }
}

impl fmt::Display for UnitB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitB::One => write!(f, "1"),
            UnitB::Tree(t) => write!(f, "{t}"),
        }
    }
}

// A basis vector of the padded span: the bare unit or a padded word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum UWord {
    Unit,
    Word(FreeWord<UnitB>),
}

impl BasisElt for UWord {
    fn degree(&self) -> i64 {
        match self {
            UWord::Unit => 0,
            UWord::Word(w) => w.degree(),
        }
    }
}

impl fmt::Display for UWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UWord::Unit => write!(f, "1"),
            UWord::Word(w) => write!(f, "{w}"),
        }
    }
}

fn ordered_tuples(trees: &[TreeNode], k: usize, cap: i64) -> Vec<(Vec<TreeNode>, i64)> {
    if k == 0 {
        return vec![(Vec::new(), 0)];
    }
    let mut out = Vec::new();
    for (tup, s) in ordered_tuples(trees, k - 1, cap) {
        for t in trees {
            let s2 = s + t.degree();
            if s2 <= cap {
                let mut v = tup.clone();
                v.push(t.clone());
                out.push((v, s2));
            }
        }
    }
    out
}

// Canonical words over the trees and the unit point, padded by at most
// two units: enough for the contraction relations to overlap without
// the label count exploding.
fn unit_padded_words(trees: &[TreeNode], window: i64) -> Vec<FreeWord<UnitB>> {
    let mut out = Vec::new();
    for k in 0..=(window.max(0) as usize) {
        let tuples = ordered_tuples(trees, k, window);
        for u in 0..=2usize {
            let r = k + u;
            if r == 0 {
                continue;
            }
            for (tup, s) in &tuples {
                for e in 0..=((window - s) as usize) {
                    for label in be_basis_canonical(r, e) {
                        for positions in (0..r).combinations(u) {
                            let mut args = Vec::with_capacity(r);
                            let mut next_tree = tup.iter();
                            for slot in 0..r {
                                if positions.contains(&slot) {
                                    args.push(UnitB::One);
                                } else {
                                    args.push(UnitB::Tree(
                                        next_tree.next().expect("tuple length").clone(),
                                    ));
                                }
                            }
                            out.push(FreeWord {
                                label: label.clone(),
                                args,
                            });
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

// Composition with the adjoined point in one slot: delete that strand
// from every entry of the label and drop the argument.  Tuples whose
// entries collapse to equal neighbours are degenerate, hence None.
fn contract_unit(w: &FreeWord<UnitB>, slot: usize) -> Result<Option<UWord>> {
    debug_assert!(matches!(w.args[slot], UnitB::One));
    if w.weight() == 1 {
        // arity-one labels are the operadic unit
        return Ok(Some(UWord::Unit));
    }
    let mut entries: Vec<Perm> = Vec::with_capacity(w.label.dim() + 1);
    for p in w.label.entries() {
        let gone = p.apply(slot);
        let word: Vec<usize> = (0..p.arity())
            .filter(|&i| i != slot)
            .map(|i| {
                let v = p.apply(i);
                if v > gone {
                    v - 1
                } else {
                    v
                }
            })
            .collect();
        entries.push(
            Perm::from_word(word)
                .ok_or_else(|| Error::Validation("strand deletion broke a permutation".into()))?,
        );
    }
    if entries.windows(2).any(|pair| pair[0] == pair[1]) {
        return Ok(None);
    }
    let label = PermTuple::new(entries)?;
    let args: Vec<UnitB> = w
        .args
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != slot)
        .map(|(_, b)| b.clone())
        .collect();
    Ok(Some(UWord::Word(FreeWord { label, args })))
}

/// Per-(level, degree) comparison of the unit-padded construction on
/// one level against the next level's plain construction.
#[derive(Debug, Clone)]
pub struct UnitizeReport {
    pub max_level: usize,
    pub window: i64,
    /// (level, degree) -> (padded quotient dimension, next level's dimension)
    pub rows: BTreeMap<(usize, i64), (usize, usize)>,
}

impl UnitizeReport {
    pub fn is_ok(&self) -> bool {
        self.rows.values().all(|(got, want)| got == want)
    }
}

fn unitize_level(
    a: &AlgebraPresentation,
    n: usize,
    window: i64,
) -> Result<BTreeMap<i64, (usize, usize)>> {
    let field = a.field();
    let trees = tree_basis_mode(a, Mode::Labelled, n, window)?;
    let words = unit_padded_words(&trees, window);
    let mut basis: BTreeMap<i64, Vec<UWord>> = BTreeMap::new();
    basis.entry(0).or_default().push(UWord::Unit);
    for w in &words {
        basis.entry(w.degree()).or_default().push(UWord::Word(w.clone()));
    }
    // One relation per unit slot: the word equals its contraction.  Two
    // padding units give every word two contraction paths, so the rank
    // can only match the plain count when the paths are confluent.
    let mut echelons: BTreeMap<i64, Echelon> = BTreeMap::new();
    for w in &words {
        let d = w.degree();
        for slot in 0..w.weight() {
            if !matches!(w.args[slot], UnitB::One) {
                continue;
            }
            let mut rel: Lin<UWord> = Lin::single(UWord::Word(w.clone()), field.one());
            if let Some(c) = contract_unit(w, slot)? {
                rel.add_term(c, field.integer(-1));
            }
            let col = span_coordinates(&basis[&d], &rel)?;
            echelons
                .entry(d)
                .or_insert_with(|| Echelon::new(field))
                .insert(col);
        }
    }
    let next = tree_basis_mode(a, Mode::Labelled, n + 1, window)?;
    let mut out = BTreeMap::new();
    for d in 0..=window {
        let total = basis.get(&d).map_or(0, |v| v.len());
        let rank = echelons.get(&d).map_or(0, |e| e.rank());
        let expected =
            next.iter().filter(|t| t.degree() == d).count() + usize::from(d == 0);
        out.insert(d, (total - rank, expected));
    }
    Ok(out)
}

/// Pads each level with an adjoined unit point (at most two per word)
/// and checks that contracting the units collapses the construction
/// onto the next level, degree by degree through the window.
pub fn unitize_check(
    a: &AlgebraPresentation,
    max_level: usize,
    window: i64,
) -> Result<UnitizeReport> {
    if a.is_zero_algebra() {
        return Err(Error::Validation(
            "the unit-padding comparison needs a nonzero input".into(),
        ));
    }
    if max_level > 3 {
        return Err(Error::Unsupported(
            "unit padding is only tabulated through level 3".into(),
        ));
    }
    if window < 1 {
        return Err(Error::Window(format!("window {window} is empty")));
    }
    let mut rows = BTreeMap::new();
    for n in 0..=max_level {
        for (d, pair) in unitize_level(a, n, window)? {
            rows.insert((n, d), pair);
        }
    }
    Ok(UnitizeReport {
        max_level,
        window,
        rows,
    })
}
