use steiner_core::exactalg::Field;
use steiner_core::instability::{
    classify_w_ideal, scan_w_bundle, splitting_type, unstable_test_bundle, unstable_test_ideal, ScanDomain, WKind,
};
use steiner_core::polygeom::{projective_points, HomForm, PointConfig, ProjPoint};
use steiner_core::steiner::{
    build_logarithmic, build_schwarzenberger, is_isomorphic, restrict_to_hyperplane, validate_bundle,
    SteinerPresentation, ValidationStrategy,
};
use steiner_core::Error;

const F13: Field = Field::Prime(13);

fn seven_points(field: Field) -> PointConfig {
    PointConfig::from_ints(
        field,
        2,
        &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3], &[1, 3, 7], &[1, 5, 4]],
    )
    .unwrap()
}

#[test]
fn seven_points_through_json_and_scan() {
    let z = seven_points(F13);
    let p = build_logarithmic(&z, 0).unwrap();
    // m = k - h0(O(1)) = 7 - 3, total = m + 2
    assert_eq!((p.m(), p.total()), (4, 6));
    let back = SteinerPresentation::from_json(&p.to_json()).unwrap();
    assert_eq!(back, p);

    let validity = validate_bundle(&back, ValidationStrategy::ExhaustiveFp).unwrap();
    assert!(validity.valid && validity.conclusive);
    let scan = scan_w_bundle(&back, &ScanDomain::Exhaustive, Some(&validity)).unwrap();
    let ideal = classify_w_ideal(&z, 0).unwrap();
    assert_eq!(scan.report.kind, ideal.kind);
    for l in projective_points(F13, 2).unwrap() {
        let b = unstable_test_bundle(&back, &l, None).unwrap().unstable;
        assert_eq!(b, unstable_test_ideal(&z, 0, &l).unwrap(), "line {l}");
        assert_eq!(b, scan.found.contains(&l));
    }
}

#[test]
fn rational_and_prime_builds_agree_on_shape() {
    let q = build_logarithmic(&seven_points(Field::Rational), 0).unwrap();
    let p = build_logarithmic(&seven_points(F13), 0).unwrap();
    assert_eq!((q.m(), q.total()), (p.m(), p.total()));
    assert!(validate_bundle(&q, ValidationStrategy::Minors).unwrap().valid);
}

#[test]
fn restriction_then_splitting() {
    let s = build_schwarzenberger(F13, 3, 4).unwrap();
    let h = ProjPoint::from_ints(F13, &[1, 1, 2, 3]).unwrap();
    let plane = restrict_to_hyperplane(&s, &h).unwrap();
    assert_eq!(plane.nvars(), 3);
    assert_eq!((plane.m(), plane.total()), (s.m(), s.total()));
    let a = ProjPoint::from_ints(F13, &[1, 0, 0]).unwrap();
    let b = ProjPoint::from_ints(F13, &[0, 1, 0]).unwrap();
    assert_eq!(splitting_type(&plane, &a, &b).unwrap().sum(), plane.m());
}

#[test]
fn four_points_on_a_line_are_rejected() {
    let z = PointConfig::from_ints(F13, 2, &[&[1, 0, 0], &[1, 1, 0], &[1, 2, 0], &[1, 3, 0], &[0, 0, 1]]).unwrap();
    let p = build_logarithmic(&z, 0);
    assert!(matches!(p, Err(Error::Precondition(_))), "{p:?}");
}

#[test]
fn conic_points_versus_schwarzenberger() {
    let z = PointConfig::from_ints(Field::Rational, 2, &[&[1, 0, 0], &[1, 1, 1], &[1, 2, 4], &[1, 3, 9], &[1, -1, 1]])
        .unwrap();
    let p = build_logarithmic(&z, 0).unwrap();
    let s = build_schwarzenberger(Field::Rational, 2, 3).unwrap();
    assert!(is_isomorphic(&p, &s, 10, 1).unwrap().isomorphic);
    let conic = HomForm::parse(Field::Rational, 3, "Y0*Y2 - Y1^2").unwrap();
    match classify_w_ideal(&z, 0).unwrap().kind {
        WKind::Curve { form, degree } => assert!(degree == 2 && form.proportional(&conic)),
        other => panic!("{other:?}"),
    }
}
