//! Exhaustive identity suites behind the `check` subcommands.
//!
//! Each suite replays the defining relations of one layer — the operad
//! of permutation tuples, its interval-cut coaction on simplex chains,
//! or the cosimplicial framing of decorated generators — over every
//! basis element in a caller-chosen range, and reports one line per
//! invariant with the number of cases covered.  A violation is recorded
//! as a `FAIL` line naming the invariant and the offending element.

use std::fmt;

use cotriple_core::barratt_eccles::{
    be_basis, be_basis_canonical, be_boundary, be_compose, be_compose_i, sigma_act, PermTuple,
};
use cotriple_core::framing::{
    adjoint_transpose, adjoint_transpose_back, frame_structure_map, Framed,
};
use cotriple_core::linear::{koszul_reorder_sign, swap_sign, BasisElt, Lin, Tensor2, TensorWord};
use cotriple_core::perm::Perm;
use cotriple_core::scalar::{FieldSpec, Scalar};
use cotriple_core::simplex::{
    boundary, face_basis, face_word_boundary, DualFace, MonotoneMap, SimplexFace,
};
use cotriple_core::surjection::be_coaction;

/// Outcome of one suite: per-invariant case counts plus any failures.
pub struct Suite {
    pub lines: Vec<String>,
    pub failures: Vec<String>,
}

impl Suite {
    fn new() -> Suite {
        Suite {
            lines: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        for f in &self.failures {
            out.push_str(f);
            out.push('\n');
        }
        out.push_str(if self.is_ok() { "PASS\n" } else { "FAIL\n" });
        out
    }

    fn section(&mut self, text: String) {
        self.lines.push(text);
    }

    fn note(&mut self, label: &str, cases: usize) {
        self.lines.push(format!("  {label}: {cases} cases"));
    }

    fn fail(&mut self, invariant: &str, element: impl fmt::Display) {
        self.failures.push(format!("FAIL {invariant} at {element}"));
    }
}

fn both_fields() -> [FieldSpec; 2] {
    [
        FieldSpec::from_characteristic(2).expect("2 is prime"),
        FieldSpec::Rational,
    ]
}

fn field_name(f: FieldSpec) -> String {
    match f.characteristic() {
        0 => "Q".to_string(),
        p => format!("F_{p}"),
    }
}

fn scale(f: &FieldSpec, c: &Scalar, sign: i64) -> Scalar {
    c.try_mul(&f.integer(sign)).expect("same field")
}

fn boundary_lin(f: &FieldSpec, e: &Lin<PermTuple>) -> Lin<PermTuple> {
    let mut out = Lin::zero();
    for (t, c) in e.iter() {
        out.add_scaled(&be_boundary(f, t), c);
    }
    out
}

/// Defining relations of the operad of permutation tuples: square-zero
/// boundary, equivariance, unit, and the two composition-associativity
/// shapes, all bounded by composite arity and total degree.
pub fn operad_suite(max_arity: usize, max_degree: usize) -> Suite {
    let mut suite = Suite::new();
    for f in both_fields() {
        suite.section(format!(
            "operad relations over {} (arity <= {max_arity}, degree <= {max_degree})",
            field_name(f)
        ));

        let mut cases = 0usize;
        for r in 1..=max_arity {
            for d in 0..=max_degree {
                for x in be_basis(r, d) {
                    let dx = be_boundary(&f, &x);
                    if !boundary_lin(&f, &dx).is_zero() {
                        suite.fail("boundary squares to zero", &x);
                    }
                    cases += 1;
                }
            }
        }
        suite.note("boundary squares to zero", cases);

        // Orbit representatives suffice below once the boundary is known
        // to commute with the translation action on the whole basis.
        let mut cases = 0usize;
        for r in 1..=max_arity {
            for d in 0..=max_degree {
                for x in be_basis_canonical(r, d) {
                    for g in Perm::all(r) {
                        let lhs = be_boundary(&f, &x.translate(&g));
                        let rhs = sigma_act(&be_boundary(&f, &x), &g);
                        if lhs != rhs {
                            suite.fail(
                                "boundary commutes with translation",
                                format!("{x} translated by {g}"),
                            );
                        }
                        cases += 1;
                    }
                }
            }
        }
        suite.note("boundary commutes with translation", cases);

        let unit = PermTuple::unit();
        let mut cases = 0usize;
        for r in 1..=max_arity {
            for d in 0..=max_degree {
                for x in be_basis_canonical(r, d) {
                    let wrapped = Lin::single(x.clone(), f.one());
                    for slot in 0..r {
                        if be_compose_i(&f, &x, slot, &unit).expect("arities match") != wrapped {
                            suite.fail("unit is right-neutral", format!("{x} in slot {slot}"));
                        }
                        cases += 1;
                    }
                    if be_compose_i(&f, &unit, 0, &x).expect("arities match") != wrapped {
                        suite.fail("unit is left-neutral", &x);
                    }
                    cases += 1;
                }
            }
        }
        suite.note("the unit is neutral", cases);

        let mut cases = 0usize;
        for r in 2..=max_arity {
            for s in 2..=(max_arity + 1 - r) {
                for dx in 0..=max_degree {
                    for dy in 0..=(max_degree - dx) {
                        for x in be_basis_canonical(r, dx) {
                            for y in be_basis(s, dy) {
                                for i in 0..r {
                                    let comp =
                                        be_compose_i(&f, &x, i, &y).expect("arities match");
                                    let lhs = boundary_lin(&f, &comp);
                                    let mut rhs = Lin::zero();
                                    for (t, c) in be_boundary(&f, &x).iter() {
                                        rhs.add_scaled(
                                            &be_compose_i(&f, t, i, &y).expect("arities match"),
                                            c,
                                        );
                                    }
                                    let sign = swap_sign(x.dim() as i64, 1);
                                    for (t, c) in be_boundary(&f, &y).iter() {
                                        rhs.add_scaled(
                                            &be_compose_i(&f, &x, i, t).expect("arities match"),
                                            &scale(&f, c, sign),
                                        );
                                    }
                                    if lhs != rhs {
                                        suite.fail(
                                            "composition is a chain map",
                                            format!("{x} o_{i} {y}"),
                                        );
                                    }
                                    cases += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        suite.note("composition is a chain map", cases);

        let mut nested = 0usize;
        let mut parallel = 0usize;
        for r in 2..=max_arity {
            for s in 2..=max_arity {
                for t in 2..=max_arity {
                    if r + s + t - 2 > max_arity {
                        continue;
                    }
                    for dx in 0..=max_degree {
                        for dy in 0..=(max_degree - dx) {
                            for dz in 0..=(max_degree - dx - dy) {
                                for x in be_basis_canonical(r, dx) {
                                    for y in be_basis(s, dy) {
                                        for z in be_basis(t, dz) {
                                            let zl = Lin::single(z.clone(), f.one());
                                            let xl = Lin::single(x.clone(), f.one());
                                            for i in 0..r {
                                                let xy = be_compose_i(&f, &x, i, &y)
                                                    .expect("arities match");
                                                for j in 0..s {
                                                    let lhs =
                                                        be_compose(&f, &xy, i + j, &zl)
                                                            .expect("arities match");
                                                    let yz = be_compose_i(&f, &y, j, &z)
                                                        .expect("arities match");
                                                    let rhs = be_compose(&f, &xl, i, &yz)
                                                        .expect("arities match");
                                                    if lhs != rhs {
                                                        suite.fail(
                                                            "nested associativity",
                                                            format!(
                                                                "({x} o_{i} {y}) o_{} {z}",
                                                                i + j
                                                            ),
                                                        );
                                                    }
                                                    nested += 1;
                                                }
                                                for j in 0..i {
                                                    let lhs = be_compose(&f, &xy, j, &zl)
                                                        .expect("arities match");
                                                    let xz = be_compose_i(&f, &x, j, &z)
                                                        .expect("arities match");
                                                    let yl =
                                                        Lin::single(y.clone(), f.one());
                                                    let moved = be_compose(
                                                        &f,
                                                        &xz,
                                                        i + z.arity() - 1,
                                                        &yl,
                                                    )
                                                    .expect("arities match");
                                                    let sign = swap_sign(
                                                        y.dim() as i64,
                                                        z.dim() as i64,
                                                    );
                                                    if lhs != moved.scaled(&f.integer(sign)) {
                                                        suite.fail(
                                                            "parallel associativity",
                                                            format!("({x} o_{i} {y}) o_{j} {z}"),
                                                        );
                                                    }
                                                    parallel += 1;
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        suite.note("nested associativity", nested);
        suite.note("parallel associativity with Koszul signs", parallel);
    }
    suite
}

fn all_faces(max_dim: usize) -> Vec<SimplexFace> {
    let mut out = Vec::new();
    for n in 0..=max_dim {
        for m in 0..=n {
            out.extend(face_basis(n, m));
        }
    }
    out
}

fn coaction_one(f: &FieldSpec, x: &PermTuple, sigma: &SimplexFace) -> Lin<TensorWord<SimplexFace>> {
    be_coaction(f, &Lin::single(x.clone(), f.one()), sigma)
}

/// Defining relations of the interval-cut coaction: counit, chain rule
/// over both boundaries, equivariance for relabelling of values, and
/// compatibility with operad composition at a permutation.
pub fn coaction_suite(max_dim: usize, max_arity: usize, max_degree: usize) -> Suite {
    let mut suite = Suite::new();
    let faces = all_faces(max_dim);
    for f in both_fields() {
        suite.section(format!(
            "simplex coaction over {} (dimension <= {max_dim}, arity <= {max_arity}, degree <= {max_degree})",
            field_name(f)
        ));

        let mut cases = 0usize;
        for sigma in &faces {
            let rho = coaction_one(&f, &PermTuple::unit(), sigma);
            if rho != Lin::single(TensorWord(vec![sigma.clone()]), f.one()) {
                suite.fail("counit on the operad unit", sigma);
            }
            cases += 1;
        }
        suite.note("counit on the operad unit", cases);

        let mut cases = 0usize;
        for r in 1..=max_arity {
            for d in 0..=max_degree {
                for x in be_basis(r, d) {
                    for sigma in &faces {
                        let rho = coaction_one(&f, &x, sigma);
                        let mut lhs = Lin::zero();
                        for (w, c) in rho.iter() {
                            lhs.add_scaled(&face_word_boundary(&f, w), c);
                        }
                        let mut rhs = be_coaction(&f, &be_boundary(&f, &x), sigma);
                        let sign = swap_sign(x.dim() as i64, 1);
                        for (tau, c) in boundary(&f, sigma).iter() {
                            rhs.add_scaled(&coaction_one(&f, &x, tau), &scale(&f, c, sign));
                        }
                        if lhs != rhs {
                            suite.fail("coaction chain rule", format!("{x} on {sigma}"));
                        }
                        cases += 1;
                    }
                }
            }
        }
        suite.note("coaction is a chain map", cases);

        let mut cases = 0usize;
        for r in 1..=max_arity {
            for d in 0..=max_degree {
                for x in be_basis_canonical(r, d) {
                    for g in Perm::all(r) {
                        let relabelled = PermTuple::new(
                            x.entries().iter().map(|p| g.compose(p)).collect(),
                        )
                        .expect("relabelling keeps tuples nondegenerate");
                        let inv = g.inverse();
                        let order: Vec<usize> = (0..r).map(|k| inv.apply(k)).collect();
                        for sigma in &faces {
                            let lhs = coaction_one(&f, &relabelled, sigma);
                            let mut rhs = Lin::zero();
                            let base = coaction_one(&f, &x, sigma);
                            for (w, c) in base.iter() {
                                let degrees: Vec<i64> =
                                    w.0.iter().map(|fc| fc.dim() as i64).collect();
                                let sign = koszul_reorder_sign(&degrees, &order);
                                let parts: Vec<SimplexFace> =
                                    order.iter().map(|&k| w.0[k].clone()).collect();
                                rhs.add_term(TensorWord(parts), scale(&f, c, sign));
                            }
                            if lhs != rhs {
                                suite.fail(
                                    "equivariance for value relabelling",
                                    format!("{x} relabelled by {g} on {sigma}"),
                                );
                            }
                            cases += 1;
                        }
                    }
                }
            }
        }
        suite.note("equivariance for value relabelling", cases);

        let mut cases = 0usize;
        for r in 2..=max_arity {
            for s in 2..=(max_arity + 1 - r) {
                for g in Perm::all(r) {
                    let x = PermTuple::new(vec![g.clone()]).expect("a permutation is a tuple");
                    for dy in 0..=max_degree {
                        for y in be_basis(s, dy) {
                            for i in 0..r {
                                let j = g.apply(i);
                                let composed =
                                    be_compose_i(&f, &x, i, &y).expect("arities match");
                                for sigma in &faces {
                                    let lhs = be_coaction(&f, &composed, sigma);
                                    let mut rhs = Lin::zero();
                                    let outer = coaction_one(&f, &x, sigma);
                                    for (w, c) in outer.iter() {
                                        let before: i64 =
                                            w.0[..j].iter().map(|fc| fc.dim() as i64).sum();
                                        let sign = swap_sign(y.dim() as i64, before);
                                        let inner = coaction_one(&f, &y, &w.0[j]);
                                        for (wi, ci) in inner.iter() {
                                            let mut parts = w.0[..j].to_vec();
                                            parts.extend(wi.0.iter().cloned());
                                            parts.extend(w.0[j + 1..].iter().cloned());
                                            let coeff = scale(
                                                &f,
                                                &c.try_mul(ci).expect("same field"),
                                                sign,
                                            );
                                            rhs.add_term(TensorWord(parts), coeff);
                                        }
                                    }
                                    if lhs != rhs {
                                        suite.fail(
                                            "compatibility with composition",
                                            format!("{x} o_{i} {y} on {sigma}"),
                                        );
                                    }
                                    cases += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        suite.note("compatibility with composition at a permutation", cases);
    }
    suite
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct G(&'static str, i64);

impl fmt::Display for G {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl BasisElt for G {
    fn degree(&self) -> i64 {
        self.1
    }
}

/// All cofaces out of `[n]` and, for `n >= 1`, all codegeneracies.
fn monotone_out(n: usize) -> Vec<MonotoneMap> {
    let mut v: Vec<MonotoneMap> = (0..=(n + 1)).map(|i| MonotoneMap::coface(n + 1, i)).collect();
    if n >= 1 {
        v.extend((0..n).map(|j| MonotoneMap::codegeneracy(n - 1, j)));
    }
    v
}

/// Cosimplicial structure of decorated generators: functoriality over
/// composable monotone maps, the coface exchange rule, collapse of
/// degenerate decorations, and invertibility of the two adjoint
/// transpositions.
pub fn framing_suite(max_dim: usize, max_degree: i64) -> Suite {
    let mut suite = Suite::new();
    let f = FieldSpec::Rational;
    let bases = [G("a", 1), G("b", 2), G("c", 3)];
    suite.section(format!(
        "cosimplicial framing (dimension <= {max_dim}, degree <= {max_degree})"
    ));

    let mut cases = 0usize;
    for n in 0..=max_dim {
        let mut gens = Vec::new();
        for m in 0..=n {
            for fc in face_basis(n, m) {
                for b in &bases {
                    if b.degree() + m as i64 <= max_degree {
                        gens.push(Framed {
                            base: b.clone(),
                            face: fc.clone(),
                        });
                    }
                }
            }
        }
        for u in monotone_out(n) {
            for v in monotone_out(u.cod) {
                let uv = v.compose(&u).expect("codomain matches domain");
                for g in &gens {
                    let step = frame_structure_map(&f, &u, g).expect("dimension matches");
                    let mut two = Lin::zero();
                    for (h, c) in step.iter() {
                        two.add_scaled(
                            &frame_structure_map(&f, &v, h).expect("dimension matches"),
                            c,
                        );
                    }
                    let direct = frame_structure_map(&f, &uv, g).expect("dimension matches");
                    if two != direct {
                        suite.fail(
                            "structure maps compose functorially",
                            format!("{g} along {u:?} then {v:?}"),
                        );
                    }
                    cases += 1;
                }
            }
        }
    }
    suite.note("structure maps compose along monotone maps", cases);

    let mut cases = 0usize;
    for n in 0..=max_dim {
        for fc in face_basis(n, n) {
            let g = Framed {
                base: G("a", 1),
                face: fc.clone(),
            };
            for j in 0..=(n + 1) {
                for i in 0..j {
                    let through = |first: usize, second: usize| -> Lin<Framed<G>> {
                        let s = frame_structure_map(&f, &MonotoneMap::coface(n + 1, first), &g)
                            .expect("dimension matches");
                        let mut out = Lin::zero();
                        for (h, c) in s.iter() {
                            out.add_scaled(
                                &frame_structure_map(
                                    &f,
                                    &MonotoneMap::coface(n + 2, second),
                                    h,
                                )
                                .expect("dimension matches"),
                                c,
                            );
                        }
                        out
                    };
                    if through(i, j + 1) != through(j, i) {
                        suite.fail(
                            "coface exchange rule",
                            format!("{g} under cofaces {i} and {j}"),
                        );
                    }
                    cases += 1;
                }
            }
        }
    }
    suite.note("coface exchange rule", cases);

    let mut cases = 0usize;
    let mut collapses = 0usize;
    for n in 1..=max_dim {
        for m in 1..=n {
            for fc in face_basis(n, m) {
                let g = Framed {
                    base: G("a", 1),
                    face: fc.clone(),
                };
                for j in 0..n {
                    let image =
                        frame_structure_map(&f, &MonotoneMap::codegeneracy(n - 1, j), &g)
                            .expect("dimension matches");
                    // Collapsing an edge of the decorating face must kill
                    // the generator; surviving images stay decorated.
                    let kills = fc.verts.contains(&j) && fc.verts.contains(&(j + 1));
                    if kills != image.is_zero() {
                        suite.fail(
                            "codegeneracies kill exactly the collapsed decorations",
                            format!("{g} under codegeneracy {j}"),
                        );
                    }
                    if kills {
                        collapses += 1;
                    }
                    cases += 1;
                }
            }
        }
    }
    if collapses == 0 && max_dim >= 1 {
        suite.fail(
            "codegeneracies kill exactly the collapsed decorations",
            "no collapsing pair was exercised",
        );
    }
    suite.note("codegeneracies kill exactly the collapsed decorations", cases);

    let mut roundtrips = 0usize;
    for field in both_fields() {
        for n in 0..=max_dim {
            let sources: Vec<G> = [G("x", 1), G("y", 2), G("z", 3)]
                .into_iter()
                .filter(|g| g.degree() <= max_degree)
                .collect();
            let targets: Vec<G> = [G("p", 1), G("q", 2), G("r", 3)]
                .into_iter()
                .filter(|g| g.degree() <= max_degree)
                .collect();
            for x in &sources {
                // One indicator morphism per compatible (target, dual
                // face) pair, plus one two-term combination.
                let mut values: Vec<Lin<Tensor2<G, DualFace>>> = Vec::new();
                for t in &targets {
                    for m in 0..=n {
                        if t.degree() - (m as i64) != x.degree() {
                            continue;
                        }
                        for fc in face_basis(n, m) {
                            values.push(Lin::single(
                                Tensor2(t.clone(), DualFace(fc)),
                                field.one(),
                            ));
                        }
                    }
                }
                if values.len() >= 2 {
                    let mut combo = values[0].clone();
                    combo.add_scaled(&values[1], &field.integer(-1));
                    values.push(combo);
                }
                for value in &values {
                    let mut phi = |b: &G| {
                        if b == x {
                            value.clone()
                        } else {
                            Lin::zero()
                        }
                    };
                    let mut psi = |g: &Framed<G>| adjoint_transpose(&field, &mut phi, g);
                    let back = adjoint_transpose_back(n, &mut psi, x);
                    if back != *value {
                        suite.fail(
                            "adjoint transpositions are mutually inverse",
                            format!("{x} over dimension {n} with value {value}"),
                        );
                    }
                    roundtrips += 1;
                }
                // Opposite composite, one indicator per decorated source.
                for t in &targets {
                    for m in 0..=n {
                        if t.degree() - (m as i64) != x.degree() {
                            continue;
                        }
                        for fc in face_basis(n, m) {
                            let key = Framed {
                                base: x.clone(),
                                face: fc.clone(),
                            };
                            let mut psi = |g: &Framed<G>| {
                                if *g == key {
                                    Lin::single(t.clone(), field.one())
                                } else {
                                    Lin::zero()
                                }
                            };
                            let phi_vals = adjoint_transpose_back(n, &mut psi, x);
                            let mut phi = |b: &G| {
                                if b == x {
                                    phi_vals.clone()
                                } else {
                                    Lin::zero()
                                }
                            };
                            let mut mismatch = false;
                            for m2 in 0..=n {
                                for fc2 in face_basis(n, m2) {
                                    let g = Framed {
                                        base: x.clone(),
                                        face: fc2.clone(),
                                    };
                                    if adjoint_transpose(&field, &mut phi, &g) != psi(&g) {
                                        mismatch = true;
                                    }
                                }
                            }
                            if mismatch {
                                suite.fail(
                                    "adjoint transpositions are mutually inverse",
                                    format!("{key} toward {t}"),
                                );
                            }
                            roundtrips += 1;
                        }
                    }
                }
            }
        }
    }
    suite.note("adjoint transposition round trips", roundtrips);
    suite
}
