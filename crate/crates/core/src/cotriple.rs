//! Levelled-tree bases for the iterated free algebras C_n = Ε∘…∘Ε(A)
//! and the simplicial structure of the resolution Res_n = Ε(C_n).
//!
//! A tree of level n has vertices on levels 1..n, each carrying a
//! canonical operad label whose arity is the number of children, and
//! leaves at uniform depth n labelled by module basis elements of A.
//! Faces merge adjacent levels: d_0 reads the root as the top layer of a
//! free word over level-(n-1) trees, d_i for 1 <= i < n grafts level i
//! into level i+1, and d_n evaluates the bottom level into A through the
//! algebra's action.  Degeneracies insert a level of unary unit-labelled
//! vertices; normalization discards trees with a level consisting
//! entirely of such vertices.

use crate::barratt_eccles::PermTuple;
use crate::error::{Error, Result};
use crate::free_algebra::{
    canonical_form, free_basis_window, free_operad_action, FreeWord, Mode,
};
use crate::homology::rank;
use crate::linear::{BasisElt, Lin};
use crate::presentation::{ABasis, AlgebraPresentation};
use crate::scalar::Scalar;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum TreeNode {
    Leaf(ABasis),
    Vertex(PermTuple, Vec<TreeNode>),
}

impl TreeNode {
    /// Number of vertex levels above the leaves; leaves sit at uniform
    /// depth, so the first branch determines it.
    pub fn level(&self) -> usize {
        match self {
            TreeNode::Leaf(_) => 0,
            TreeNode::Vertex(_, ch) => 1 + ch[0].level(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            TreeNode::Leaf(_) => 1,
            TreeNode::Vertex(_, ch) => ch.iter().map(|c| c.leaf_count()).sum(),
        }
    }

    /// Vertices on one level, left to right (level 1 is the root).
    fn level_labels<'a>(&'a self, level: usize, out: &mut Vec<&'a PermTuple>) {
        if let TreeNode::Vertex(x, ch) = self {
            if level == 1 {
                out.push(x);
            } else {
                for c in ch {
                    c.level_labels(level - 1, out);
                }
            }
        }
    }

    /// A level consists entirely of unary unit vertices.
    fn level_is_all_units(&self, level: usize) -> bool {
        let mut labels = Vec::new();
        self.level_labels(level, &mut labels);
        labels.iter().all(|x| x.is_unit())
    }

    /// Not a degeneracy image: no level consists entirely of unary unit
    /// vertices.
    pub fn is_normalized(&self) -> bool {
        (1..=self.level()).all(|l| !self.level_is_all_units(l))
    }
}

impl BasisElt for TreeNode {
    fn degree(&self) -> i64 {
        match self {
            TreeNode::Leaf(b) => b.degree(),
            TreeNode::Vertex(x, ch) => {
                x.degree() + ch.iter().map(|c| c.degree()).sum::<i64>()
            }
        }
    }
}

impl fmt::Display for TreeNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeNode::Leaf(b) => write!(f, "{b}"),
            TreeNode::Vertex(x, ch) => {
                write!(f, "({x};")?;
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, " {c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// View a level >= 1 tree as a free word over trees one level down.
pub fn tree_as_word(t: &TreeNode) -> Result<FreeWord<TreeNode>> {
    match t {
        TreeNode::Leaf(_) => Err(Error::Validation(
            "a bare leaf has no top layer to expose".into(),
        )),
        TreeNode::Vertex(x, ch) => Ok(FreeWord {
            label: x.clone(),
            args: ch.clone(),
        }),
    }
}

fn word_as_tree(w: &FreeWord<TreeNode>) -> TreeNode {
    TreeNode::Vertex(w.label.clone(), w.args.clone())
}

/// Canonical basis of C_n(A) up to the given total degree.
pub fn tree_basis(
    a: &AlgebraPresentation,
    n: usize,
    max_degree: i64,
) -> Result<Vec<TreeNode>> {
    tree_basis_mode(a, Mode::Labelled, n, max_degree)
}

/// `tree_basis` with the word mode explicit; symmetric mode builds the
/// levels of the iterated symmetric algebra instead.
pub fn tree_basis_mode(
    a: &AlgebraPresentation,
    mode: Mode,
    n: usize,
    max_degree: i64,
) -> Result<Vec<TreeNode>> {
    let mut layer: Vec<TreeNode> = Vec::new();
    for d in 1..=max_degree {
        for b in a.basis_in_degree(d)? {
            layer.push(TreeNode::Leaf(b));
        }
    }
    for _ in 0..n {
        let mut next = Vec::new();
        for d in 1..=max_degree {
            for w in free_basis_window(&a.field(), mode, &layer, d)? {
                next.push(word_as_tree(&w));
            }
        }
        layer = next;
    }
    Ok(layer)
}

/// Trees with a vertex that is not a unary unit on every level.
pub fn normalized_tree_basis(
    a: &AlgebraPresentation,
    n: usize,
    max_degree: i64,
) -> Result<Vec<TreeNode>> {
    normalized_tree_basis_mode(a, Mode::Labelled, n, max_degree)
}

/// `normalized_tree_basis` with the word mode explicit.
pub fn normalized_tree_basis_mode(
    a: &AlgebraPresentation,
    mode: Mode,
    n: usize,
    max_degree: i64,
) -> Result<Vec<TreeNode>> {
    Ok(tree_basis_mode(a, mode, n, max_degree)?
        .into_iter()
        .filter(|t| t.is_normalized())
        .collect())
}

/// Face d_i of a level-n tree for 1 <= i <= n; the result is a
/// combination of level-(n-1) trees, since these faces preserve
/// generators.
pub fn tree_face(a: &AlgebraPresentation, i: usize, t: &TreeNode) -> Result<Lin<TreeNode>> {
    tree_face_mode(a, Mode::Labelled, i, t)
}

/// `tree_face` with the word mode explicit.
pub fn tree_face_mode(
    a: &AlgebraPresentation,
    mode: Mode,
    i: usize,
    t: &TreeNode,
) -> Result<Lin<TreeNode>> {
    let n = t.level();
    if i < 1 || i > n {
        return Err(Error::Validation(format!(
            "face {i} undefined on a level-{n} tree"
        )));
    }
    let TreeNode::Vertex(x, ch) = t else {
        unreachable!("level >= 1");
    };
    let field = a.field();
    if i == 1 {
        if n == 1 {
            // Bottom level: evaluate the label on the leaves in A.
            let args: Vec<Lin<ABasis>> = ch
                .iter()
                .map(|c| match c {
                    TreeNode::Leaf(b) => Lin::single(b.clone(), field.one()),
                    TreeNode::Vertex(..) => unreachable!("uniform depth"),
                })
                .collect();
            let image = a.act(&Lin::single(x.clone(), field.one()), &args)?;
            let mut out = Lin::zero();
            for (b, c) in image.iter() {
                out.add_term(TreeNode::Leaf(b.clone()), c.clone());
            }
            return Ok(out);
        }
        // Graft the root label into the level below.
        let args: Vec<Lin<FreeWord<TreeNode>>> = ch
            .iter()
            .map(|c| Ok(Lin::single(tree_as_word(c)?, field.one())))
            .collect::<Result<_>>()?;
        let image = free_operad_action(
            &field,
            mode,
            &Lin::single(x.clone(), field.one()),
            &args,
        )?;
        let mut out = Lin::zero();
        for (w, c) in image.iter() {
            out.add_term(word_as_tree(w), c.clone());
        }
        return Ok(out);
    }
    // Deeper faces apply one functor level down in every branch
    // simultaneously; faces have degree zero, so no signs appear beyond
    // the re-canonicalization of the rebuilt vertex.
    let images: Vec<Lin<TreeNode>> = ch
        .iter()
        .map(|c| tree_face_mode(a, mode, i - 1, c))
        .collect::<Result<_>>()?;
    let mut combos: Vec<(Vec<TreeNode>, Scalar)> = vec![(Vec::new(), field.one())];
    for img in &images {
        let mut next = Vec::new();
        for (args, c) in &combos {
            for (u, cu) in img.iter() {
                let mut a2 = args.clone();
                a2.push(u.clone());
                next.push((a2, c.clone() * cu.clone()));
            }
        }
        combos = next;
    }
    let mut out = Lin::zero();
    for (args, c) in combos {
        for (w, cw) in canonical_form(&field, mode, x, &args)?.iter() {
            out.add_term(word_as_tree(w), c.clone() * cw.clone());
        }
    }
    Ok(out)
}

/// Zeroth face of a generator: the tree read as a free word over trees
/// one level down.  Generally of weight > 1, so not generator-valued.
pub fn tree_face0(
    a: &AlgebraPresentation,
    t: &TreeNode,
) -> Result<Lin<FreeWord<TreeNode>>> {
    Ok(Lin::single(tree_as_word(t)?, a.field().one()))
}

/// Degeneracy s_j of a tree, inserting a level of unary unit vertices
/// below level j (above the root for j = 0).
pub fn tree_degeneracy(j: usize, t: &TreeNode) -> Result<TreeNode> {
    let n = t.level();
    if j > n {
        return Err(Error::Validation(format!(
            "degeneracy {j} undefined on a level-{n} tree"
        )));
    }
    if j == 0 {
        return Ok(TreeNode::Vertex(PermTuple::unit(), vec![t.clone()]));
    }
    let TreeNode::Vertex(x, ch) = t else {
        unreachable!("j >= 1 forces level >= 1");
    };
    let children: Vec<TreeNode> =
        ch.iter().map(|c| tree_degeneracy(j - 1, c)).collect::<Result<_>>()?;
    Ok(TreeNode::Vertex(x.clone(), children))
}

/// Face d_i on an element of Res_n = Ε(C_n), for trees of level n >= 1.
pub fn res_face(
    a: &AlgebraPresentation,
    i: usize,
    e: &Lin<FreeWord<TreeNode>>,
) -> Result<Lin<FreeWord<TreeNode>>> {
    res_face_mode(a, Mode::Labelled, i, e)
}

/// `res_face` with the word mode explicit.
pub fn res_face_mode(
    a: &AlgebraPresentation,
    mode: Mode,
    i: usize,
    e: &Lin<FreeWord<TreeNode>>,
) -> Result<Lin<FreeWord<TreeNode>>> {
    let field = a.field();
    let mut out = Lin::zero();
    for (w, c) in e.iter() {
        if i == 0 {
            let args: Vec<Lin<FreeWord<TreeNode>>> = w
                .args
                .iter()
                .map(|t| Ok(Lin::single(tree_as_word(t)?, field.one())))
                .collect::<Result<_>>()?;
            let image = free_operad_action(
                &field,
                mode,
                &Lin::single(w.label.clone(), field.one()),
                &args,
            )?;
            out.add_scaled(&image, c);
            continue;
        }
        let images: Vec<Lin<TreeNode>> = w
            .args
            .iter()
            .map(|t| tree_face_mode(a, mode, i, t))
            .collect::<Result<_>>()?;
        let mut combos: Vec<(Vec<TreeNode>, Scalar)> = vec![(Vec::new(), c.clone())];
        for img in &images {
            let mut next = Vec::new();
            for (args, cc) in &combos {
                for (u, cu) in img.iter() {
                    let mut a2 = args.clone();
                    a2.push(u.clone());
                    next.push((a2, cc.clone() * cu.clone()));
                }
            }
            combos = next;
        }
        for (args, cc) in combos {
            let canon = canonical_form(&field, mode, &w.label, &args)?;
            out.add_scaled(&canon, &cc);
        }
    }
    Ok(out)
}

/// Degeneracy s_j on an element of Res_n = Ε(C_n).
pub fn res_degeneracy(
    j: usize,
    e: &Lin<FreeWord<TreeNode>>,
) -> Result<Lin<FreeWord<TreeNode>>> {
    let mut out = Lin::zero();
    for (w, c) in e.iter() {
        let args: Vec<TreeNode> = w
            .args
            .iter()
            .map(|t| tree_degeneracy(j, t))
            .collect::<Result<_>>()?;
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

/// Augmentation Res_0 = Ε(A) → A: evaluate every word in the algebra.
pub fn cotriple_augmentation(
    a: &AlgebraPresentation,
    e: &Lin<FreeWord<TreeNode>>,
) -> Result<Lin<ABasis>> {
    let field = a.field();
    let mut out = Lin::zero();
    for (w, c) in e.iter() {
        let args: Vec<Lin<ABasis>> = w
            .args
            .iter()
            .map(|t| match t {
                TreeNode::Leaf(b) => Ok(Lin::single(b.clone(), field.one())),
                TreeNode::Vertex(..) => Err(Error::Validation(
                    "augmentation applies to words over bare module elements".into(),
                )),
            })
            .collect::<Result<_>>()?;
        let image = a.act(&Lin::single(w.label.clone(), field.one()), &args)?;
        out.add_scaled(&image, c);
    }
    Ok(out)
}

/// Per-degree dimensions of the degeneracy span L_n, the normalized
/// complement N_n, and the whole level C_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatchingReport {
    pub level: usize,
    /// degree → (dim L, dim N, dim C)
    pub dims: BTreeMap<i64, (usize, usize, usize)>,
}

impl LatchingReport {
    pub fn is_exact(&self) -> bool {
        self.dims.values().all(|&(l, n, c)| l + n == c)
    }
}

pub fn latching_report(
    a: &AlgebraPresentation,
    n: usize,
    max_degree: i64,
) -> Result<LatchingReport> {
    let whole = tree_basis(a, n, max_degree)?;
    let normalized: BTreeSet<TreeNode> =
        normalized_tree_basis(a, n, max_degree)?.into_iter().collect();
    let mut degrees: BTreeSet<i64> = whole.iter().map(|t| t.degree()).collect();
    degrees.extend(1..=max_degree);
    // Degeneracy images of the full previous level span L_n; their rank
    // is computed honestly rather than by counting distinct trees.
    let mut images_by_degree: BTreeMap<i64, Vec<TreeNode>> = BTreeMap::new();
    if n >= 1 {
        for t in tree_basis(a, n - 1, max_degree)? {
            for j in 0..n {
                let s = tree_degeneracy(j, &t)?;
                images_by_degree.entry(s.degree()).or_default().push(s);
            }
        }
    }
    let mut dims = BTreeMap::new();
    for d in degrees {
        let in_degree: Vec<&TreeNode> = whole.iter().filter(|t| t.degree() == d).collect();
        let index: BTreeMap<&TreeNode, usize> =
            in_degree.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let cols: Vec<Vec<(usize, Scalar)>> = images_by_degree
            .get(&d)
            .map(|images| {
                images
                    .iter()
                    .map(|s| vec![(index[s], a.field().one())])
                    .collect()
            })
            .unwrap_or_default();
        let l = rank(a.field(), in_degree.len(), cols);
        let nn = in_degree.iter().filter(|t| normalized.contains(**t)).count();
        dims.insert(d, (l, nn, in_degree.len()));
    }
    Ok(LatchingReport { level: n, dims })
}
