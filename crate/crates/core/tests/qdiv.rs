use num_rational::BigRational;
use proptest::prelude::*;

use fregcheck::family::report::Witness;
use fregcheck::family::{Characteristic, Verdict};
use fregcheck::groebner::Engine;
use fregcheck::qdiv::*;
use fregcheck::Error;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn d(s: &str) -> QDivisor {
    s.parse().unwrap()
}

#[test]
fn parse_and_render() {
    let e = d("1/2@VX, 1/2@VY, 1/4@VXY");
    assert_eq!(e, QDivisor::standard(2));
    assert_eq!(e.to_string(), "1/2@VX, 1/2@VY, 1/4@VXY");
    assert_eq!(d("1/2@VX,1/2@VY,1/4@VXY"), e);
    assert_eq!(d("2/4@P"), d("1/2@P"));
    assert_eq!(d("0"), QDivisor::zero());
    assert_eq!(d("0@P"), QDivisor::zero());
    assert_eq!(d("-3@P").to_string(), "-3@P");
    for bad in ["1/2", "x@P", "1/0@P", "1@P, 2@P", "1@3P"] {
        assert!(matches!(bad.parse::<QDivisor>(), Err(Error::Syntax { .. })), "{bad}");
    }
    let json = serde_json::to_string(&e).unwrap();
    assert_eq!(serde_json::from_str::<QDivisor>(&json).unwrap(), e);
}

#[test]
fn floors() {
    assert_eq!(d("1/2@P1, 1/2@P2, 1/4@P3").floor(), QDivisor::zero());
    assert_eq!(d("-1/2@P1").floor(), d("-1@P1"));
    let e = QDivisor::standard(2);
    assert_eq!(e.scale(&q(2, 1)).floor(), d("1@VX, 1@VY"));
}

#[test]
fn fractional_parts() {
    assert_eq!(d("1/2@P1, 1/4@P2").fractional_part_paper(), d("1/2@P1, 3/4@P2"));
    assert_eq!(d("3@P1, -2@P2").fractional_part_paper(), QDivisor::zero());
    assert_eq!(d("3/2@P1").fractional_part_paper(), d("1/2@P1"));
}

#[test]
fn cohomology() {
    let z = QDivisor::zero();
    assert_eq!((z.h0().unwrap(), z.h1().unwrap()), (1, 0));
    assert_eq!(d("-1@P").h0().unwrap(), 0);
    assert_eq!(d("-2@P").h1().unwrap(), 1);
    let e2 = QDivisor::standard(2).scale(&q(2, 1));
    assert_eq!(
        e2.class_data().unwrap(),
        DivisorClassData { floor_degree: 2, h0: 3, h1: 0 }
    );
}

#[test]
fn sections() {
    let dims = section_dims(&QDivisor::standard(2), 20).unwrap();
    assert_eq!(&dims[..3], [1, 1, 3]);
    assert_eq!(dims.len(), 21);
    assert_eq!(section_dims(&d("1@P"), 5).unwrap(), [1, 2, 3, 4, 5, 6]);
    assert!(matches!(section_dims(&d("1/2@P, -1/2@Q"), 3), Err(Error::Precondition(_))));
    assert!(section_dims(&d("-1@P"), 3).is_err());
}

#[test]
fn floor_identity() {
    assert!(floor_identity_check(&QDivisor::standard(2), -50..=50));
    // the check is not vacuous: E' replaced by 0 breaks it
    let e = QDivisor::standard(2);
    let broken = (-5i64..=5).all(|n| {
        let ne = e.scale(&q(n, 1));
        ne.neg().floor().neg() == ne.floor()
    });
    assert!(!broken);
    let integral = d("2@P, -3@Q");
    assert!(floor_identity_check(&integral, -10..=10));
    assert_eq!(integral.fractional_part_paper(), QDivisor::zero());
}

#[test]
fn heuristic() {
    let e = QDivisor::standard(2);
    // -2 + 1/2 + 1/2 + 3/4
    let kp = e.fractional_part_paper().degree() - q(2, 1);
    assert_eq!(kp, q(-1, 4));
    for p in [3u64, 5, 7] {
        let h = fpurity_degree_heuristic(&e, p).unwrap();
        assert_eq!(h.degree, (q(-(p as i64), 4)).to_string());
        // floor degree: 2 floor(p/2) + floor(3p/4) - 2p
        let fd = 2 * (p as i64 / 2) + (3 * p as i64) / 4 - 2 * p as i64;
        assert_eq!(h.h1, (-fd - 1).max(0) as u64);
    }
    let h = fpurity_degree_heuristic(&d("1@P"), 5).unwrap();
    assert_eq!((h.degree.as_str(), h.h1), ("-10", 9));
    // a point already called K does not collide with the canonical base point
    let h = fpurity_degree_heuristic(&d("1/2@K"), 3).unwrap();
    assert_eq!(h.degree, "-9/2");
}

#[test]
fn hilbert_against_sections() {
    let e = Engine::default();
    for n in [2, 3] {
        let r = hilbert_crosscheck(&e, n, Characteristic::Rational, 20).unwrap();
        assert_eq!(r.verdict, Verdict::Verified, "n = {n}");
        let Witness::HilbertComparison { sections, hilbert, .. } = &r.witnesses[0] else { panic!() };
        assert_eq!(sections.len(), 21);
        assert_eq!((sections[0], hilbert[0]), (1, 1));
    }
    let r = hilbert_crosscheck(&e, 2, Characteristic::Prime(5), 12).unwrap();
    assert_eq!(r.verdict, Verdict::Verified);
}

fn divisor_strategy() -> impl Strategy<Value = QDivisor> {
    prop::collection::vec((-30i64..30, 1i64..=12), 0..5).prop_map(|cs| {
        QDivisor::new(cs.into_iter().enumerate().map(|(i, (a, b))| (format!("P{i}"), q(a, b)))).unwrap()
    })
}

proptest! {
    #[test]
    fn floor_identity_random(e in divisor_strategy()) {
        prop_assert!(floor_identity_check(&e, -20..=20));
    }

    #[test]
    fn riemann_roch(e in divisor_strategy()) {
        let c = e.class_data().unwrap();
        prop_assert_eq!(c.h0 as i64 - c.h1 as i64, c.floor_degree + 1);
        // Serre duality on P^1: h1(D) = h0 of degree -deg[D] - 2
        let dual = QDivisor::new([("P", q(-c.floor_degree - 2, 1))]).unwrap();
        prop_assert_eq!(c.h1, dual.h0().unwrap());
    }

    #[test]
    fn render_round_trip(e in divisor_strategy()) {
        prop_assert_eq!(e.to_string().parse::<QDivisor>().unwrap(), e);
    }
}
