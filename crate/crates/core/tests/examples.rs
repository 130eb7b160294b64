mod common;

use logtk_core::logdiff::{base_change_check, free_prelog_algebra, log_differentials};
use logtk_core::prelog::{base_point, from_base};
use logtk_core::regcheck::{
    fundamental_sequence_low_degree, is_log_complete_intersection, is_log_regular, is_log_regular_ideal,
    kato_criterion, regularity_smoothness_crosscheck, LogCiRoute,
};
use logtk_core::{replay, CheckOptions, Field, FinMonoid, PrelogHom, PrelogRing, Status};

use common::*;

const Q: Field = Field::Rational;

fn opts() -> CheckOptions {
    CheckOptions::default()
}

#[test]
fn trivial_chart_reduces_to_regularity() {
    for (ideal, regular) in [(vec![], true), (vec!["y - x^2"], true), (vec!["x*y"], false)] {
        let r = local(&["x", "y"], Q, &ideal);
        let p = PrelogRing::new(r, FinMonoid::trivial(), vec![]).unwrap();
        assert_eq!(kato_criterion(&p, &opts()).holds(), regular);
        assert_eq!(is_log_regular(&p, &opts()).holds(), regular);
    }
}

#[test]
fn log_regular_ideal_of_a_square() {
    let p = prelog(&["t"], Q, &[], FinMonoid::free(&["a"]), &["t"]);
    let j = vec![p.ring.parse_poly("t^2").unwrap()];
    let v = is_log_regular_ideal(&p, &j, &opts());
    assert!(v.holds());
    assert_eq!(v.certificate.number("tor1_dim"), Some(0));
    assert!(replay(&v.certificate).ok());
}

#[test]
fn log_ci_presentation_of_a_fat_point() {
    let q = prelog(&["t"], Q, &[], FinMonoid::free(&["a"]), &["t"]);
    let j = vec![q.ring.parse_poly("t^2").unwrap()];
    let p = q.quotient_prelog(&j, 8).unwrap();
    assert!(p.monoid.is_pointed());
    let v = is_log_complete_intersection(&p, &LogCiRoute::Presentation { q, j }, &opts());
    assert!(v.holds());
    // A = K[t]/(t^2) is not regular, so the direct test refuses
    let d = is_log_complete_intersection(&p, &LogCiRoute::Direct, &opts());
    assert_eq!(d.status, Status::Indeterminate);
}

#[test]
fn cone_through_a_point_is_not_log_ci() {
    let m = FinMonoid::parse(&["u", "v", "w"], &["u+w = 2*v"], &[]).unwrap();
    let p = prelog(&["x"], Q, &[], m, &["x^2", "x^3", "x^4"]);
    let v = is_log_complete_intersection(&p, &LogCiRoute::Direct, &opts());
    assert_eq!(v.status, Status::Fails);
    assert_eq!(v.certificate.number("minimal_generators"), Some(3));
    assert_eq!(v.certificate.number("dim_monoid_algebra"), Some(2));
}

#[test]
fn crosscheck_on_saturated_toric_charts() {
    for field in FIELDS {
        let v = regularity_smoothness_crosscheck(&cone(field), &opts());
        assert!(v.holds(), "{field}: {}", v.certificate.reason);
        assert!(replay(&v.certificate).ok());
    }
    // the numerical monoid <2, 3> is not saturated
    let cusp = prelog(
        &["x", "y"],
        Q,
        &["y^2 - x^3"],
        FinMonoid::parse(&["a", "b"], &["3*a = 2*b"], &[]).unwrap(),
        &["x", "y"],
    );
    assert_eq!(regularity_smoothness_crosscheck(&cusp, &opts()).status, Status::Indeterminate);
}

#[test]
fn base_change_along_the_diagonal() {
    let line = prelog(&["s"], Q, &[], FinMonoid::free(&["e"]), &["s"]);
    let plane = log_point(2, Q);
    let h1 = from_base(&line);
    assert!(base_change_check(&h1, &h1, &PrelogHom::identity(&line)).holds());
    let f1 = free_prelog_algebra(&line, &[], &["y"]).unwrap();
    let f2 = free_prelog_algebra(&plane, &[], &["y"]).unwrap();
    let q = PrelogHom::parse(
        f1.target.clone(),
        f2.target.clone(),
        &["t1*t2", "y"],
        vec![vec![1, 1, 0], vec![0, 0, 1]],
    )
    .unwrap();
    let v = base_change_check(&f1, &f2, &q);
    assert!(v.holds());
    assert!(replay(&v.certificate).ok());
}

#[test]
fn base_change_of_free_algebra_along_a_line() {
    let k = base_point(Q);
    let z = prelog(&["z"], Q, &[], FinMonoid::trivial(), &[]);
    let f1 = free_prelog_algebra(&k, &["x"], &["y"]).unwrap();
    let f2 = free_prelog_algebra(&z, &["x"], &["y"]).unwrap();
    let q = PrelogHom::parse(f1.target.clone(), f2.target.clone(), &["x", "y"], vec![vec![1]]).unwrap();
    let v = base_change_check(&f1, &f2, &q);
    assert!(v.holds());
    assert_eq!(log_differentials(&f1).minimalize().rank, 2);
    assert_eq!(log_differentials(&f2).minimalize().rank, 2);
}

#[test]
fn fundamental_report_on_free_algebra() {
    let p = log_point(1, Q);
    let f = free_prelog_algebra(&p, &["x", "z"], &["y"]).unwrap();
    let r = fundamental_sequence_low_degree(&f).unwrap();
    assert_eq!(r.omega_log, 3);
    assert!(r.surjective.is_none());
    assert_eq!(r.gamma.gamma, 0);
    assert!(r.consistent);
}

#[test]
fn fundamental_report_on_the_point_quotient() {
    let p = log_point(2, Q);
    let b = p.quotient_prelog(&p.maximal_ideal(), 8).unwrap();
    let s = PrelogHom::parse(p.clone(), b, &["t1", "t2"], vec![vec![1, 0], vec![0, 1]]).unwrap();
    let r = fundamental_sequence_low_degree(&s).unwrap();
    let row = r.surjective.unwrap();
    assert_eq!(row.conormal, row.conormal_pushout);
    assert_eq!(row.ideal_mod_square, 2);
    // both generators die in the pointed quotient
    assert_eq!(row.monoid_kernel, Some(2));
    assert_eq!(r.gamma.gamma, 2);
    assert_eq!(r.omega_log, 0);
    assert!(r.consistent);
}
