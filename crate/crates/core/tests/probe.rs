use std::time::Instant;

use cotriple_core::linear::{BasisElt, Lin};
use cotriple_core::presentation::{ABasis, AlgebraKind, AlgebraPresentation};
use cotriple_core::realization::{
    build_model, compare_model_coend, unitize_check, verify_resolution, OperadMode,
};
use cotriple_core::scalar::FieldSpec;

fn f2() -> FieldSpec {
    FieldSpec::from_characteristic(2).unwrap()
}

fn truncated_square(f: FieldSpec) -> AlgebraPresentation {
    let y = Lin::single(ABasis::new("y", 4), f.one());
    AlgebraPresentation::new(
        f,
        AlgebraKind::Commutative,
        vec![("x".into(), 2), ("y".into(), 4)],
        vec![(("x".into(), "x".into()), y)],
        vec![],
    )
    .unwrap()
}

fn exterior_line(f: FieldSpec) -> AlgebraPresentation {
    AlgebraPresentation::new(f, AlgebraKind::Commutative, vec![("x".into(), 1)], vec![], vec![])
        .unwrap()
}

fn free_line(f: FieldSpec) -> AlgebraPresentation {
    AlgebraPresentation::new(f, AlgebraKind::Free, vec![("x".into(), 1)], vec![], vec![]).unwrap()
}

#[test]
fn probe_square_zero_window8() {
    for (label, a) in [("a1", truncated_square(f2())), ("a2", exterior_line(f2()))] {
        let t = Instant::now();
        let model = build_model(&a, OperadMode::E, 8).unwrap();
        let built = t.elapsed();
        let t = Instant::now();
        match model.check_square_zero() {
            Ok(n) => println!(
                "{label} f2 window 8: {n} generators, build {:.1?}, square {:.1?}",
                built,
                t.elapsed()
            ),
            Err(e) => println!("{label} f2 window 8 FAILS: {e}"),
        }
    }
}

#[test]
fn probe_bad_generator_chain() {
    let a = exterior_line(f2());
    let model = build_model(&a, OperadMode::E, 8).unwrap();
    let bad = model
        .generators()
        .iter()
        .find(|g| g.to_string() == "[2; ((123|231); ((1); x), ((12); x, x), ((12); x, x))]")
        .unwrap()
        .clone();
    println!("generator: {bad} degree {}", bad.degree());
    let row = model.generator_differential(&bad).unwrap();
    for (w, c) in row.iter() {
        println!("  D term ({c}) {w}");
        let dd = model.differential(w).unwrap();
        for (w2, c2) in dd.iter() {
            println!("      -> ({c2}) {w2}");
        }
    }
}

#[test]
fn probe_coend_scales() {
    let t = Instant::now();
    let c = compare_model_coend(&exterior_line(f2()), 1, 3).unwrap();
    println!(
        "a2 f2 skeleton 1 window 3: ok={} trips={} in {:.1?}",
        c.is_ok(),
        c.round_trips,
        t.elapsed()
    );
    let t = Instant::now();
    let c = compare_model_coend(&truncated_square(f2()), 2, 5).unwrap();
    println!(
        "a1 f2 skeleton 2 window 5: ok={} trips={} dims={:?} in {:.1?}",
        c.is_ok(),
        c.round_trips,
        c.dims,
        t.elapsed()
    );
}

#[test]
fn probe_free_line_window5() {
    let t = Instant::now();
    let r = verify_resolution(&free_line(f2()), OperadMode::E, 5).unwrap();
    println!("a3 f2 window 5: ok={} rows={:?} in {:.1?}", r.is_ok(), r.rows, t.elapsed());
}

#[test]
fn probe_unitize_level3() {
    let t = Instant::now();
    let r = unitize_check(&exterior_line(f2()), 3, 4).unwrap();
    println!("a2 f2 unitize level 3 window 4: ok={} rows={:?} in {:.1?}", r.is_ok(), r.rows, t.elapsed());
}

#[test]
fn probe_value_relabel_law() {
    use cotriple_core::barratt_eccles::{be_basis, be_coaction, PermTuple};
    use cotriple_core::linear::{koszul_reorder_sign, TensorWord};
    use cotriple_core::perm::Perm;
    use cotriple_core::scalar::FieldSpec;
    use cotriple_core::simplex::{face_basis, SimplexFace};
    let f = FieldSpec::Rational;
    let mut xs: Vec<PermTuple> = be_basis(3, 0);
    xs.extend(be_basis(3, 1));
    for x in &xs {
        for g in Perm::all(3) {
            let gx = PermTuple::new(x.entries().iter().map(|p| g.compose(p)).collect()).unwrap();
            let mut works: Vec<String> = Vec::new();
            for sigma in Perm::all(3) {
                let order: Vec<usize> = (0..3).map(|p| sigma.apply(p)).collect();
                let mut all_ok = true;
                for fc in face_basis(2, 2) {
                    let lhs = be_coaction(&f, &Lin::single(gx.clone(), f.one()), &fc);
                    let mut rhs: Lin<TensorWord<SimplexFace>> = Lin::zero();
                    for (w, c) in be_coaction(&f, &Lin::single(x.clone(), f.one()), &fc).iter() {
                        let degrees: Vec<i64> = w.0.iter().map(|t| t.dim() as i64).collect();
                        let sign = koszul_reorder_sign(&degrees, &order);
                        let parts: Vec<SimplexFace> =
                            order.iter().map(|&p| w.0[p].clone()).collect();
                        rhs.add_term(TensorWord(parts), c.clone() * f.integer(sign));
                    }
                    if lhs != rhs {
                        all_ok = false;
                        break;
                    }
                }
                if all_ok {
                    works.push(format!("{sigma}"));
                }
            }
            println!("x={x} g={g} works={works:?}");
        }
    }
}
