use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::error::Error;
use crate::exactalg::{Field, FieldElem, Mat};
use crate::polygeom::{
    binomial, eval_matrix, is_general_position, random_point, HomForm, PointConfig, ProjPoint,
};

fn q() -> Field {
    Field::Rational
}

fn f31() -> Field {
    Field::Prime(31)
}

fn frame(field: Field) -> PointConfig {
    PointConfig::from_ints(field, 2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap()
}

fn ten_generic() -> PointConfig {
    PointConfig::from_ints(
        q(),
        2,
        &[
            &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3],
            &[1, -1, 2], &[2, 1, -3], &[1, 3, 5], &[3, -2, 1], &[1, 4, -1],
        ],
    )
    .unwrap()
}

fn on_conic(field: Field, ts: &[i64]) -> PointConfig {
    let c: Vec<Vec<i64>> = ts.iter().map(|&t| vec![1, t, t * t]).collect();
    let refs: Vec<&[i64]> = c.iter().map(Vec::as_slice).collect();
    PointConfig::from_ints(field, 2, &refs).unwrap()
}

/// Seeded configuration of `k` points of `P^n(F_p)` in `r`-general position.
fn general_config(field: Field, n: usize, k: usize, r: usize, seed: u64) -> PointConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut pts: Vec<ProjPoint> = Vec::new();
        while pts.len() < k {
            let p = random_point(field, n, &mut rng, 20);
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let z = PointConfig::new(field, n, pts).unwrap();
        if is_general_position(&z, r).unwrap().holds {
            return z;
        }
    }
}

fn tangent(field: Field) -> SteinerPresentation {
    build_schwarzenberger(field, 2, 2).unwrap()
}

fn manual(field: Field, total: usize, m: usize, vals: &[&[i64]]) -> SteinerPresentation {
    let mats = vals.iter().map(|v| Mat::from_ints(field, total, m, v)).collect();
    SteinerPresentation::new(mats, Provenance::Manual).unwrap()
}

#[test]
fn logarithmic_shapes() {
    let p = build_logarithmic(&frame(q()), 0).unwrap();
    assert_eq!((p.m(), p.total(), p.rank(), p.nvars()), (1, 3, 2, 3));

    let p = build_logarithmic(&ten_generic(), 1).unwrap();
    assert_eq!((p.m(), p.total(), p.rank()), (10 - 6, 10 - 3, 3));

    let p = build_logarithmic(&on_conic(q(), &[0, 1, 2, -1, 3]), 0).unwrap();
    assert_eq!((p.m(), p.total(), p.rank()), (5 - 3, 5 - 1, 2));
    assert!(matches!(p.provenance(), Provenance::Logarithmic { transposed: true, r: 0, .. }));
}

#[test]
fn logarithmic_rejects_special_position() {
    let bad = PointConfig::from_ints(q(), 2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1], &[1, 2, 3]]).unwrap();
    match build_logarithmic(&bad, 0) {
        Err(Error::Precondition(msg)) => assert!(msg.contains("secant"), "{msg}"),
        other => panic!("unexpected {other:?}"),
    }
    let few = PointConfig::from_ints(q(), 2, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
    assert!(matches!(build_logarithmic(&few, 0), Err(Error::Precondition(_))));
}

#[test]
fn multiplication_preserves_the_image_of_evaluation() {
    // diag(z_i) maps im(eval_r) into im(eval_{r+1}), so the cokernel map is well defined
    let z = ten_generic();
    let ev_low = eval_matrix(&z, 1);
    let proj = eval_matrix(&z, 2).cokernel_projection().projection;
    for i in 0..3 {
        let diag = Mat::from_fn(q(), z.len(), z.len(), |a, b| {
            if a == b {
                z.points()[a].coords()[i].clone()
            } else {
                q().zero()
            }
        });
        assert!(proj.mul(&diag).unwrap().mul(&ev_low).unwrap().is_zero());
    }
}

#[test]
fn rank_law_in_the_plane_and_in_space() {
    for (n, k, r, seed) in [(2, 6, 0, 1), (2, 10, 1, 2), (2, 9, 0, 3), (2, 15, 2, 4), (3, 8, 0, 5), (3, 12, 0, 6)] {
        let z = general_config(Field::Prime(101), n, k, r, seed);
        let p = build_logarithmic(&z, r).unwrap();
        assert_eq!(p.total() - p.m(), binomial(n + r, n - 1), "n={n} k={k} r={r}");
        assert_eq!(p.m(), k - binomial(n + r + 1, n));
        assert_eq!(p.nvars(), n + 1);
    }
}

#[test]
fn schwarzenberger_matrices() {
    let p = build_schwarzenberger(q(), 2, 3).unwrap();
    assert_eq!((p.total(), p.m()), (4, 2));
    // N(X) columns (X0,X1,X2,0) and (0,X0,X1,X2)
    let expect = [
        Mat::from_ints(q(), 4, 2, &[1, 0, 0, 1, 0, 0, 0, 0]),
        Mat::from_ints(q(), 4, 2, &[0, 0, 1, 0, 0, 1, 0, 0]),
        Mat::from_ints(q(), 4, 2, &[0, 0, 0, 0, 1, 0, 0, 1]),
    ];
    assert_eq!(p.matrices(), &expect);
    assert!(matches!(p.provenance(), Provenance::Schwarzenberger { curve, .. } if curve == "[u^2 : u*v : v^2]"));

    let p = build_schwarzenberger(q(), 3, 5).unwrap();
    assert_eq!((p.total(), p.m(), p.nvars()), (6, 3, 4));

    let t = tangent(q());
    assert_eq!((t.total(), t.m()), (3, 1));
    let x: Vec<FieldElem> = [4, 5, 6].iter().map(|&c| q().from_i64(c)).collect();
    assert_eq!(t.pencil_at(&x), Mat::from_ints(q(), 3, 1, &[4, 5, 6]));

    assert!(matches!(build_schwarzenberger(q(), 3, 2), Err(Error::Precondition(_))));
}

#[test]
fn tangent_bundle_from_the_frame() {
    let log = build_logarithmic(&frame(q()), 0).unwrap();
    let out = is_isomorphic(&log, &tangent(q()), 10, 0).unwrap();
    assert!(out.isomorphic);
    assert_eq!(out.hom_dim, 1);
}

#[test]
fn curve_twist_shapes() {
    let fermat = HomForm::parse(q(), 3, "Y0^3 + Y1^3 + Y2^3").unwrap();
    let p = build_curve_twist(&fermat, 2).unwrap();
    assert_eq!((p.m(), p.total(), p.rank()), (3, 6, 3));
    let p = build_curve_twist(&fermat, 3).unwrap();
    assert_eq!((p.m(), p.total(), p.rank()), (6, 9, 3));
    let conic = HomForm::parse(q(), 3, "Y0*Y2 - Y1^2").unwrap();
    let p = build_curve_twist(&conic, 1).unwrap();
    assert_eq!((p.m(), p.total(), p.rank()), (1, 3, 2));
    // sections of O_X(a) for a cubic: C(a+2,2) - C(a-1,2)
    for a in 2..6usize {
        let p = build_curve_twist(&fermat, a).unwrap();
        let h0 = |e: usize| binomial(e + 2, 2) - if e >= 3 { binomial(e - 1, 2) } else { 0 };
        assert_eq!((p.m(), p.total()), (h0(a - 1), h0(a)));
    }
    assert!(matches!(build_curve_twist(&fermat, 1), Err(Error::Precondition(_))));
    let zero = HomForm::zero(q(), 3, 3);
    assert!(matches!(build_curve_twist(&zero, 2), Err(Error::Degenerate(_))));
}

#[test]
fn curve_twist_of_a_conic_is_the_tangent_bundle() {
    let conic = HomForm::parse(q(), 3, "Y0*Y2 - Y1^2").unwrap();
    let p = build_curve_twist(&conic, 1).unwrap();
    assert!(is_isomorphic(&p, &tangent(q()), 10, 0).unwrap().isomorphic);
}

#[test]
fn curve_twist_quotient_is_well_defined() {
    // with Y2 = -(Y0 + Y1) on the line curve, the pencil must match the
    // multiplication on monomials in Y0, Y1 only
    let line = HomForm::parse(q(), 3, "Y0 + Y1 + Y2").unwrap();
    let p = build_curve_twist(&line, 2).unwrap();
    assert_eq!((p.m(), p.total()), (2, 3));
    // quotient bases are {Y0, Y1} in degree 1 and {Y0^2, Y0Y1, Y1^2} in degree 2
    let n2 = &p.matrices()[2];
    // Y2 * Y0 = -Y0^2 - Y0Y1, Y2 * Y1 = -Y0Y1 - Y1^2
    assert_eq!(n2, &Mat::from_ints(q(), 3, 2, &[-1, 0, -1, -1, 0, -1]));
}

#[test]
fn restriction_examples() {
    let s = build_schwarzenberger(q(), 3, 5).unwrap();
    let h = ProjPoint::from_ints(q(), &[1, 1, 1, 1]).unwrap();
    let r = restrict_to_hyperplane(&s, &h).unwrap();
    assert_eq!((r.total(), r.m(), r.nvars()), (6, 3, 3));
    for j in 0..3 {
        assert_eq!(r.matrices()[j], s.matrices()[j].sub(&s.matrices()[3]).unwrap());
    }
    let e3 = ProjPoint::from_ints(q(), &[0, 0, 0, 1]).unwrap();
    let r = restrict_to_hyperplane(&s, &e3).unwrap();
    assert_eq!(r.matrices(), &s.matrices()[..3]);
    assert!(matches!(r.provenance(), Provenance::Restricted { hyperplane: Some(_), .. }));

    let line = restrict_to_hyperplane(&tangent(q()), &ProjPoint::from_ints(q(), &[1, 2, 3]).unwrap()).unwrap();
    assert_eq!(line.nvars(), 2);
    assert!(matches!(restrict_to_hyperplane(&line, &ProjPoint::from_ints(q(), &[1, 1]).unwrap()), Err(Error::Precondition(_))));
    let wrong = ProjPoint::from_ints(q(), &[1, 1, 1]).unwrap();
    assert!(matches!(restrict_to_hyperplane(&s, &wrong), Err(Error::ShapeMismatch(_))));
}

#[test]
fn restricting_twice_is_restricting_once() {
    let s = build_schwarzenberger(q(), 3, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let h1 = random_point(q(), 3, &mut rng, 5);
        let h2 = random_point(q(), 2, &mut rng, 5);
        let once = restrict_to_hyperplane(&s, &h1).unwrap();
        let twice = restrict_to_hyperplane(&once, &h2).unwrap();
        let c1 = crate::polygeom::HyperplaneChart::new(&h1).unwrap();
        let c2 = crate::polygeom::HyperplaneChart::new(&h2).unwrap();
        let composite = c1.basis.mul(&c2.basis).unwrap();
        let direct = restrict_to_subspace(&s, &composite).unwrap();
        assert_eq!(direct.matrices(), twice.matrices());
        // a different basis of the same line gives an isomorphic restriction
        let change = Mat::from_ints(q(), 2, 2, &[2, 1, 1, 1]);
        let other = restrict_to_subspace(&s, &composite.mul(&change).unwrap()).unwrap();
        let iso_rank = |p: &SteinerPresentation, x: &[i64]| {
            let v: Vec<FieldElem> = x.iter().map(|&c| q().from_i64(c)).collect();
            p.pencil_at(&v).rank()
        };
        assert_eq!(iso_rank(&direct, &[3, 1]), iso_rank(&other, &[1, 0]));
    }
}

#[test]
fn validation_examples() {
    let t = tangent(f31());
    let rep = validate_bundle(&t, ValidationStrategy::ExhaustiveFp).unwrap();
    assert!(rep.valid && rep.conclusive);
    assert_eq!(rep.checked, 993);

    let bad = manual(f31(), 3, 1, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
    let rep = validate_bundle(&bad, ValidationStrategy::ExhaustiveFp).unwrap();
    assert!(!rep.valid);
    assert_eq!(rep.failures, vec![vec!["0".to_string(), "0".into(), "1".into()]]);

    let z = general_config(f31(), 2, 10, 1, 42);
    let p = build_logarithmic(&z, 1).unwrap();
    assert!(validate_bundle(&p, ValidationStrategy::ExhaustiveFp).unwrap().valid);

    assert!(matches!(validate_bundle(&tangent(q()), ValidationStrategy::ExhaustiveFp), Err(Error::Strategy(_))));
    let sampled = validate_bundle(&tangent(q()), ValidationStrategy::Sampled { samples: 20, seed: 1 }).unwrap();
    assert!(sampled.valid && !sampled.conclusive && sampled.checked == 20);
}

#[test]
fn minors_strategy() {
    let t = tangent(q());
    let rep = validate_bundle(&t, ValidationStrategy::Minors).unwrap();
    assert!(rep.valid && rep.conclusive);
    // (X0, X1, 0): the minors X0, X1 have no common factor but vanish at [0:0:1]
    let bad = manual(q(), 3, 1, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
    assert!(!validate_bundle(&bad, ValidationStrategy::Minors).unwrap().valid);
    let p = build_logarithmic(&ten_generic(), 1).unwrap();
    assert!(validate_bundle(&p, ValidationStrategy::Minors).unwrap().valid);
    let s = build_schwarzenberger(q(), 2, 4).unwrap();
    assert!(validate_bundle(&s, ValidationStrategy::Minors).unwrap().valid);
}

#[test]
fn minors_agree_with_leibniz() {
    let p = build_schwarzenberger(q(), 2, 3).unwrap();
    let minors = maximal_minors(&p).unwrap();
    assert_eq!(minors.len(), 6);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let x: Vec<FieldElem> = (0..3).map(|_| q().from_i64(rng.gen_range(-9..10))).collect();
        let n = p.pencil_at(&x);
        let mut values: Vec<FieldElem> = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                let (w, x2, y, zz) = (n.get(a, 0), n.get(a, 1), n.get(b, 0), n.get(b, 1));
                values.push(&(w * zz) - &(x2 * y));
            }
        }
        let mut got: Vec<FieldElem> = minors.iter().map(|f| f.eval(&x)).collect();
        let nonzero_expected: Vec<_> = values.iter().filter(|v| !v.is_zero()).cloned().collect();
        got.retain(|v| !v.is_zero());
        got.sort();
        let mut exp = nonzero_expected;
        exp.sort();
        assert_eq!(got, exp);
    }
}

#[test]
fn hom_space_examples() {
    let t = tangent(q());
    let h = hom_space(&t, &t).unwrap();
    assert_eq!(h.dim(), 1);
    assert!(h.basis[0].a.is_invertible());
    let id = HomElement {
        a: Mat::identity(q(), 1),
        b: Mat::identity(q(), 3),
    };
    assert!(intertwines(&t, &t, &id));

    let p = build_logarithmic(&ten_generic(), 1).unwrap();
    let h = hom_space(&p, &p).unwrap();
    assert!(h.dim() >= 1);
    for e in &h.basis {
        assert!(intertwines(&p, &p, e));
    }
    let s = build_schwarzenberger(q(), 2, 3).unwrap();
    let mixed = hom_space(&p, &s).unwrap();
    for e in &mixed.basis {
        assert!(intertwines(&p, &s, e));
    }
    let p3 = build_schwarzenberger(q(), 3, 4).unwrap();
    assert!(matches!(hom_space(&t, &p3), Err(Error::ShapeMismatch(_))));
    assert!(matches!(hom_space(&t, &tangent(f31())), Err(Error::FieldMismatch(..))));
}

#[test]
fn isomorphism_examples() {
    let p = build_logarithmic(&ten_generic(), 1).unwrap();
    let out = is_isomorphic(&p, &p, 5, 0).unwrap();
    assert!(out.isomorphic);

    let s = build_schwarzenberger(q(), 2, 3).unwrap();
    let log = build_logarithmic(&on_conic(q(), &[0, 1, -1, 2, 5]), 0).unwrap();
    let out = is_isomorphic(&log, &s, 10, 7).unwrap();
    assert!(out.isomorphic);
    let w = out.witness.unwrap();
    assert!(intertwines(&log, &s, &w));

    let a = build_logarithmic(&general_config(q(), 2, 6, 0, 1), 0).unwrap();
    let b = build_logarithmic(&general_config(q(), 2, 6, 0, 2), 0).unwrap();
    let out = is_isomorphic(&a, &b, 10, 0).unwrap();
    assert!(!out.isomorphic, "{out:?}");

    let out = is_isomorphic(&a, &s, 3, 0).unwrap();
    assert!(!out.isomorphic && out.reason.unwrap().contains("shapes differ"));
    assert!(matches!(is_isomorphic(&a, &a, 0, 0), Err(Error::Precondition(_))));
}

#[test]
fn random_search_reports_its_bound() {
    // hom(T(-1) + T(-1)) is 4-dimensional; a random combination is invertible
    let field = q();
    let blocks: Vec<Mat> = tangent(field)
        .matrices()
        .iter()
        .map(|n| {
            let z = Mat::zeros(field, 3, 1);
            n.hstack(&z).unwrap().vstack(&z.hstack(n).unwrap()).unwrap()
        })
        .collect();
    let sum = SteinerPresentation::new(blocks, Provenance::Manual).unwrap();
    let out = is_isomorphic(&sum, &sum, 20, 3).unwrap();
    assert_eq!(out.hom_dim, 4);
    assert_eq!(out.method, "random");
    assert!(out.isomorphic);
    assert_eq!(out.failure_bound_per_trial.as_deref(), Some("8/2001"));

    let fp = SteinerPresentation::new(
        sum.matrices().iter().map(|m| Mat::from_fn(Field::Prime(7), 6, 2, |i, j| Field::Prime(7).convert(m.get(i, j)).unwrap())).collect(),
        Provenance::Manual,
    )
    .unwrap();
    let out = is_isomorphic(&fp, &fp, 20, 3).unwrap();
    assert!(out.isomorphic);
}

#[test]
fn representative_rescaling_gives_diagonal_isomorphism() {
    let z = ten_generic();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let scaled: Vec<ProjPoint> = z
        .points()
        .iter()
        .map(|p| p.rescaled(&q().from_i64(rng.gen_range(2..9))).unwrap())
        .collect();
    let z2 = PointConfig::new(q(), 2, scaled).unwrap();
    let p1 = build_logarithmic(&z, 1).unwrap();
    let p2 = build_logarithmic(&z2, 1).unwrap();
    let out = is_isomorphic(&p1, &p2, 10, 0).unwrap();
    assert!(out.isomorphic);
    let w = out.witness.unwrap();
    let diagonal = |m: &Mat| (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m.get(i, j).is_zero()));
    assert!(diagonal(&w.a) && diagonal(&w.b));
}

#[test]
fn json_round_trip() {
    let z = PointConfig::from_ints(
        q(),
        2,
        &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3], &[1, -1, 2], &[2, 5, -7]],
    )
    .unwrap();
    let presentations = vec![
        build_logarithmic(&z, 0).unwrap(),
        build_logarithmic(&general_config(f31(), 2, 10, 1, 9), 1).unwrap(),
        build_schwarzenberger(q(), 3, 5).unwrap(),
        restrict_to_hyperplane(&build_schwarzenberger(f31(), 3, 5).unwrap(), &ProjPoint::from_ints(f31(), &[1, 2, 3, 4]).unwrap()).unwrap(),
        build_curve_twist(&HomForm::parse(q(), 3, "Y0^3 + Y1^3 + Y2^3").unwrap(), 2).unwrap(),
    ];
    for p in presentations {
        let text = p.to_json();
        let back = SteinerPresentation::from_json(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.to_json(), text);
    }
    let text = build_logarithmic(&z, 0).unwrap().to_json();
    assert!(text.contains("\"field\": \"Q\""));
    assert!(text.contains("\"monomial_order\": \"deglex\""));
    assert!(SteinerPresentation::from_json(&text.replace("\"Q\"", "\"p=4\"")).is_err());
    assert!(SteinerPresentation::from_json("{}").is_err());
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]
    #[test]
    fn rank_law_and_bundle_validity(seed in 0u64..10_000, r in 0usize..2) {
        let k = if r == 0 { 6 } else { 10 };
        let z = general_config(Field::Prime(31), 2, k, r, seed);
        let p = build_logarithmic(&z, r).unwrap();
        proptest::prop_assert_eq!(p.rank(), r + 2);
        proptest::prop_assert!(validate_bundle(&p, ValidationStrategy::ExhaustiveFp).unwrap().valid);
    }
}
