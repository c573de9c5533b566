//! Presented differential graded algebras: a finite graded basis with a
//! commutative multiplication table, or the free algebra on a finite dg
//! module of generators.
//!
//! Commutative presentations list their entire module basis as
//! "generators" and store products as structure constants on unordered
//! pairs; the operad acts through the augmentation, so a degree-zero
//! label acts by the iterated product and positive-degree labels act by
//! zero.  Free presentations carry the full operad action by label
//! grafting; their module basis in each degree is the canonical word
//! window.

use crate::barratt_eccles::PermTuple;
use crate::error::{Error, Result};
use crate::free_algebra::{
    free_basis_window, free_differential, free_operad_action, FreeWord, Mode,
};
use crate::homology::FiniteChainComplex;
use crate::linear::{BasisElt, Lin};
use crate::scalar::FieldSpec;
use std::collections::BTreeMap;
use std::fmt;

/// A named basis element of a presented algebra.  For free-kind algebras
/// the name of a composite word is its display form, so names stay
/// stable across enumerations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ABasis {
    pub name: String,
    pub degree: i64,
}

impl ABasis {
    pub fn new(name: impl Into<String>, degree: i64) -> ABasis {
        ABasis {
            name: name.into(),
            degree,
        }
    }
}

impl BasisElt for ABasis {
    fn degree(&self) -> i64 {
        self.degree
    }
}

impl fmt::Display for ABasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraKind {
    Commutative,
    Free,
}

/// A validated dg-algebra presentation.
#[derive(Debug, Clone)]
pub struct AlgebraPresentation {
    field: FieldSpec,
    kind: AlgebraKind,
    generators: Vec<ABasis>,
    /// Structure constants on name-sorted pairs (commutative kind only).
    products: BTreeMap<(String, String), Lin<ABasis>>,
    /// Generator differentials with values in the generator span.
    differentials: BTreeMap<String, Lin<ABasis>>,
}

impl AlgebraPresentation {
    pub fn new(
        field: FieldSpec,
        kind: AlgebraKind,
        generators: Vec<(String, i64)>,
        products: Vec<((String, String), Lin<ABasis>)>,
        differentials: Vec<(String, Lin<ABasis>)>,
    ) -> Result<AlgebraPresentation> {
        let mut gens = Vec::new();
        let mut degree_of: BTreeMap<String, i64> = BTreeMap::new();
        for (name, degree) in generators {
            if degree < 1 {
                return Err(Error::Validation(format!(
                    "generator {name} has degree {degree}, presentations need degrees >= 1"
                )));
            }
            if degree_of.insert(name.clone(), degree).is_some() {
                return Err(Error::Validation(format!("duplicate generator {name}")));
            }
            gens.push(ABasis::new(name, degree));
        }
        let check_span = |value: &Lin<ABasis>, what: &str| -> Result<()> {
            for (b, _) in value.iter() {
                match degree_of.get(&b.name) {
                    None => {
                        return Err(Error::Validation(format!(
                            "{what} mentions unknown generator {}",
                            b.name
                        )))
                    }
                    Some(&d) if d != b.degree => {
                        return Err(Error::Validation(format!(
                            "{what} lists {} in degree {}, declared {d}",
                            b.name, b.degree
                        )))
                    }
                    _ => {}
                }
            }
            Ok(())
        };

        let mut table: BTreeMap<(String, String), Lin<ABasis>> = BTreeMap::new();
        if matches!(kind, AlgebraKind::Free) && !products.is_empty() {
            return Err(Error::Validation(
                "free presentations determine their products; remove the product table".into(),
            ));
        }
        for ((g, h), value) in products {
            let dg = *degree_of
                .get(&g)
                .ok_or_else(|| Error::Validation(format!("product of unknown generator {g}")))?;
            let dh = *degree_of
                .get(&h)
                .ok_or_else(|| Error::Validation(format!("product of unknown generator {h}")))?;
            check_span(&value, &format!("product {g}*{h}"))?;
            for (b, _) in value.iter() {
                if b.degree != dg + dh {
                    return Err(Error::Validation(format!(
                        "product {g}*{h} is not degree-additive: term {} has degree {}, want {}",
                        b.name,
                        b.degree,
                        dg + dh
                    )));
                }
            }
            // Store on the name-sorted pair, flipping with the Koszul sign
            // of graded commutativity when the given order was reversed.
            let (key, stored) = if g <= h {
                ((g.clone(), h.clone()), value)
            } else {
                let sign = if dg % 2 != 0 && dh % 2 != 0 { -1 } else { 1 };
                ((h.clone(), g.clone()), value.scaled(&field.integer(sign)))
            };
            if let Some(prev) = table.get(&key) {
                if *prev != stored {
                    return Err(Error::Validation(format!(
                        "products {g}*{h} and {h}*{g} violate graded commutativity"
                    )));
                }
            } else {
                table.insert(key, stored);
            }
        }
        if field.characteristic() != 2 {
            for g in &gens {
                if g.degree % 2 != 0 {
                    if let Some(v) = table.get(&(g.name.clone(), g.name.clone())) {
                        if !v.is_zero() {
                            return Err(Error::Validation(format!(
                                "odd generator {} has nonzero square outside characteristic two",
                                g.name
                            )));
                        }
                    }
                }
            }
        }

        let mut diffs: BTreeMap<String, Lin<ABasis>> = BTreeMap::new();
        for (g, value) in differentials {
            let dg = *degree_of.get(&g).ok_or_else(|| {
                Error::Validation(format!("differential of unknown generator {g}"))
            })?;
            check_span(&value, &format!("differential of {g}"))?;
            for (b, _) in value.iter() {
                if b.degree != dg - 1 {
                    return Err(Error::Validation(format!(
                        "differential of {g} must lower degree by one, found term {} of degree {}",
                        b.name, b.degree
                    )));
                }
            }
            if diffs.insert(g.clone(), value).is_some() {
                return Err(Error::Validation(format!("duplicate differential for {g}")));
            }
        }

        let out = AlgebraPresentation {
            field,
            kind,
            generators: gens,
            products: table,
            differentials: diffs,
        };
        out.check_squares_and_leibniz()?;
        if matches!(kind, AlgebraKind::Commutative) {
            out.check_associativity()?;
        }
        Ok(out)
    }

    /// d^2 = 0 on generators; for commutative kind also the Leibniz rule
    /// on every generator pair, products defaulting to zero.
    fn check_squares_and_leibniz(&self) -> Result<()> {
        for g in &self.generators {
            let once = self.generator_differential(g);
            let mut twice = Lin::zero();
            for (b, c) in once.iter() {
                twice.add_scaled(&self.generator_differential(b), c);
            }
            if !twice.is_zero() {
                return Err(Error::Validation(format!(
                    "differential does not square to zero on {}",
                    g.name
                )));
            }
        }
        if matches!(self.kind, AlgebraKind::Free) {
            return Ok(());
        }
        for g in &self.generators {
            for h in &self.generators {
                let gh = self.product_basis(g, h)?;
                let mut lhs = Lin::zero();
                for (b, c) in gh.iter() {
                    lhs.add_scaled(&self.generator_differential(b), c);
                }
                let mut rhs = Lin::zero();
                for (b, c) in self.generator_differential(g).iter() {
                    rhs.add_scaled(&self.product_basis(b, h)?, c);
                }
                let sign = self.field.integer(if g.degree % 2 != 0 { -1 } else { 1 });
                for (b, c) in self.generator_differential(h).iter() {
                    rhs.add_scaled(&self.product_basis(g, b)?, &(c.clone() * sign.clone()));
                }
                if lhs != rhs {
                    return Err(Error::Validation(format!(
                        "Leibniz rule fails on {}*{}",
                        g.name, h.name
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<()> {
        for g in &self.generators {
            for h in &self.generators {
                for k in &self.generators {
                    let left = self.product(&self.product_basis(g, h)?, &single(&self.field, k))?;
                    let right = self.product(&single(&self.field, g), &self.product_basis(h, k)?)?;
                    if left != right {
                        return Err(Error::Validation(format!(
                            "product table is not associative on {}*{}*{}",
                            g.name, h.name, k.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn generators(&self) -> &[ABasis] {
        &self.generators
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn max_generator_degree(&self) -> i64 {
        self.generators.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    /// Module basis of the algebra in one degree.
    pub fn basis_in_degree(&self, degree: i64) -> Result<Vec<ABasis>> {
        match self.kind {
            AlgebraKind::Commutative => Ok(self
                .generators
                .iter()
                .filter(|g| g.degree == degree)
                .cloned()
                .collect()),
            AlgebraKind::Free => Ok(self
                .free_words_in_degree(degree)?
                .into_iter()
                .map(|w| encode_word(&w))
                .collect()),
        }
    }

    fn free_words_in_degree(&self, degree: i64) -> Result<Vec<FreeWord<ABasis>>> {
        free_basis_window(&self.field, Mode::Labelled, &self.generators, degree)
    }

    /// Word behind a free-kind basis name.
    fn decode(&self, b: &ABasis) -> Result<FreeWord<ABasis>> {
        self.free_words_in_degree(b.degree)?
            .into_iter()
            .find(|w| encode_word(w) == *b)
            .ok_or_else(|| Error::Validation(format!("unknown basis element {}", b.name)))
    }

    fn generator_differential(&self, g: &ABasis) -> Lin<ABasis> {
        self.differentials.get(&g.name).cloned().unwrap_or_default()
    }

    /// Differential of one basis element.
    pub fn differential(&self, b: &ABasis) -> Result<Lin<ABasis>> {
        match self.kind {
            AlgebraKind::Commutative => Ok(self.generator_differential(b)),
            AlgebraKind::Free => {
                let word = self.decode(b)?;
                let mut leaf = |g: &ABasis| self.generator_differential(g);
                let image =
                    free_differential(&self.field, Mode::Labelled, &word, &mut leaf)?;
                Ok(encode(&image))
            }
        }
    }

    pub fn differential_lin(&self, e: &Lin<ABasis>) -> Result<Lin<ABasis>> {
        let mut out = Lin::zero();
        for (b, c) in e.iter() {
            out.add_scaled(&self.differential(b)?, c);
        }
        Ok(out)
    }

    fn product_basis(&self, g: &ABasis, h: &ABasis) -> Result<Lin<ABasis>> {
        if matches!(self.kind, AlgebraKind::Free) {
            return Err(Error::Unsupported(
                "free presentations multiply through the operad action".into(),
            ));
        }
        let (key, sign) = if g.name <= h.name {
            ((g.name.clone(), h.name.clone()), 1)
        } else if g.degree % 2 != 0 && h.degree % 2 != 0 {
            ((h.name.clone(), g.name.clone()), -1)
        } else {
            ((h.name.clone(), g.name.clone()), 1)
        };
        Ok(self
            .products
            .get(&key)
            .map(|v| v.scaled(&self.field.integer(sign)))
            .unwrap_or_default())
    }

    /// Bilinear product of two module elements (commutative kind).
    pub fn product(&self, a: &Lin<ABasis>, b: &Lin<ABasis>) -> Result<Lin<ABasis>> {
        let mut out = Lin::zero();
        for (g, cg) in a.iter() {
            for (h, ch) in b.iter() {
                out.add_scaled(&self.product_basis(g, h)?, &(cg.clone() * ch.clone()));
            }
        }
        Ok(out)
    }

    /// Full operadic action on module elements.  Commutative algebras
    /// absorb the label through the augmentation: degree-zero labels act
    /// by the iterated product in argument order, positive-degree labels
    /// by zero.  Free algebras graft the label onto the argument words.
    pub fn act(&self, x: &Lin<PermTuple>, args: &[Lin<ABasis>]) -> Result<Lin<ABasis>> {
        if args.is_empty() {
            return Err(Error::Validation("action needs at least one argument".into()));
        }
        match self.kind {
            AlgebraKind::Commutative => {
                let mut out = Lin::zero();
                for (t, c) in x.iter() {
                    if t.arity() != args.len() {
                        return Err(Error::Validation(format!(
                            "arity {} label applied to {} elements",
                            t.arity(),
                            args.len()
                        )));
                    }
                    if t.dim() > 0 {
                        continue;
                    }
                    let mut acc = args[0].clone();
                    for arg in &args[1..] {
                        acc = self.product(&acc, arg)?;
                    }
                    out.add_scaled(&acc, c);
                }
                Ok(out)
            }
            AlgebraKind::Free => {
                let decoded: Vec<Lin<FreeWord<ABasis>>> = args
                    .iter()
                    .map(|arg| {
                        let mut lin = Lin::zero();
                        for (b, c) in arg.iter() {
                            lin.add_term(self.decode(b)?, c.clone());
                        }
                        Ok(lin)
                    })
                    .collect::<Result<_>>()?;
                let image = free_operad_action(&self.field, Mode::Labelled, x, &decoded)?;
                Ok(encode(&image))
            }
        }
    }

    /// The augmentation-mediated action of the spec'd interface: allowed
    /// on commutative presentations at any weight, but only at weight one
    /// on free presentations, where it is the identity.
    pub fn evaluate_action(&self, x: &Lin<PermTuple>, args: &[Lin<ABasis>]) -> Result<Lin<ABasis>> {
        if matches!(self.kind, AlgebraKind::Free)
            && x.iter().any(|(t, _)| t.arity() >= 2)
        {
            return Err(Error::Unsupported(
                "augmentation action at weight >= 2 on a free presentation".into(),
            ));
        }
        self.act(x, args)
    }

    /// Homology of the underlying complex per degree over `lo..=hi`.
    pub fn homology_dims(&self, lo: i64, hi: i64) -> Result<BTreeMap<i64, usize>> {
        let mut basis: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        let mut diff: BTreeMap<String, Vec<(String, crate::scalar::Scalar)>> = BTreeMap::new();
        for d in 0..=(hi + 1) {
            let elts = self.basis_in_degree(d)?;
            let names: Vec<String> = elts.iter().map(|b| b.name.clone()).collect();
            for b in &elts {
                let image = self.differential(b)?;
                diff.insert(
                    b.name.clone(),
                    image
                        .iter()
                        .map(|(t, c)| (t.name.clone(), c.clone()))
                        .collect(),
                );
            }
            basis.insert(d, names);
        }
        let complex = FiniteChainComplex::new(self.field, basis, &diff)?;
        Ok(complex.homology_dims(lo, hi))
    }
}

fn single(field: &FieldSpec, b: &ABasis) -> Lin<ABasis> {
    Lin::single(b.clone(), field.one())
}

fn encode_word(w: &FreeWord<ABasis>) -> ABasis {
    if w.weight() == 1 && w.label.is_unit() {
        return w.args[0].clone();
    }
    ABasis::new(w.to_string(), w.degree())
}

fn encode(e: &Lin<FreeWord<ABasis>>) -> Lin<ABasis> {
    let mut out = Lin::zero();
    for (w, c) in e.iter() {
        out.add_term(encode_word(w), c.clone());
    }
    out
}
