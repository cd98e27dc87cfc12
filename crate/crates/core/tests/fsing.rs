use fregcheck::algebra::{parse_polynomial, CoefficientField, Polynomial, Ring, RingSignature};
use fregcheck::fsing::{
    fedder_fpurity, frobenius_closure_member, frobenius_power, glassbrenner_hypersurface, radical_equal,
    singular_locus_ideal, tight_closure_witness_check, validate_localization, Purity, WitnessKind,
};
use fregcheck::groebner::{ideal_member_linear_oracle, Engine, Ideal};
use fregcheck::Error;

fn fp(p: u64) -> CoefficientField {
    CoefficientField::prime(p).unwrap()
}

fn family_ring(p: u64) -> Ring {
    RingSignature::new(&["a", "b", "c", "d", "t"], &[4, 8, 8, 24, 2], fp(p)).unwrap()
}

fn i43(p: u64) -> Ideal {
    Ideal::parse(
        &family_ring(p),
        &[
            "(a^2 + t^4)*a^2 - b*c",
            "(a^2 + t^4)*(b^3 - d) - d*c",
            "b*(b^3 - d) - d*a^2",
        ],
    )
    .unwrap()
}

fn poly(s: &str, r: &Ring) -> Polynomial {
    parse_polynomial(s, r).unwrap()
}

#[test]
fn bracket_powers() {
    let r = family_ring(3);
    let ad = Ideal::parse(&r, &["a", "d"]).unwrap();
    assert_eq!(frobenius_power(&ad, 3).unwrap().generator_strings(), ["a^3", "d^3"]);
    assert!(frobenius_power(&Ideal::zero(&r), 9).unwrap().is_zero());
    assert!(frobenius_power(&ad, 6).is_err());
    let r17 = family_ring(17);
    let ad = Ideal::parse(&r17, &["a", "d"]).unwrap();
    assert_eq!(frobenius_power(&ad, 17).unwrap().generator_strings(), ["a^17", "d^17"]);
    let q = RingSignature::standard(&["x"], CoefficientField::Rationals).unwrap();
    assert!(matches!(
        frobenius_power(&Ideal::parse(&q, &["x"]).unwrap(), 1),
        Err(Error::CharacteristicZero(_))
    ));
}

#[test]
fn bracket_power_respects_membership() {
    let i = i43(5);
    let engine = Engine::default();
    let x = &(&i.generators()[0] * &poly("a + t^2", i.ring())) + &i.generators()[2];
    assert!(engine.ideal_member(&x, &i).unwrap());
    let xq = x.pow(5).unwrap();
    assert_eq!(xq, x.frobenius_twist(5).unwrap());
    assert!(engine.ideal_member(&xq, &frobenius_power(&i, 5).unwrap()).unwrap());
}

#[test]
fn frobenius_closure_examples() {
    let engine = Engine::default();
    let i = i43(17);
    let r = i.ring().clone();
    let ad = Ideal::parse(&r, &["a", "d"]).unwrap();
    let w = frobenius_closure_member(&engine, &poly("a*b", &r), &ad, &i, 2).unwrap();
    assert_eq!(w.kind, WitnessKind::FrobeniusClosure { e: 0, q: 1 });

    let x = poly("b^3*t^3", &r);
    let w = frobenius_closure_member(&engine, &x, &ad, &i, 2).unwrap();
    assert_eq!(w.kind, WitnessKind::FrobeniusClosure { e: 1, q: 17 });
    assert_eq!(w.checks.len(), 2);
    assert!(!w.checks[0].holds);

    let i5 = i43(5);
    let r5 = i5.ring().clone();
    let ad5 = Ideal::parse(&r5, &["a", "d"]).unwrap();
    let x5 = poly("b^3*t^3", &r5);
    let w = frobenius_closure_member(&engine, &x5, &ad5, &i5, 1).unwrap();
    // q = 5 is not of the form 2mk + 1, yet the containment holds; the
    // linear-algebra oracle agrees
    let target = frobenius_power(&ad5, 5).unwrap().sum(&i5).unwrap();
    assert!(ideal_member_linear_oracle(&x5.frobenius_twist(5).unwrap(), &target, 150).unwrap());
    assert_eq!(w.kind, WitnessKind::FrobeniusClosure { e: 1, q: 5 });

    let w = frobenius_closure_member(&engine, &x5, &ad5, &i5, 0).unwrap();
    assert_eq!(w.kind, WitnessKind::NoneUpTo { e_max: 0 });
    assert!(!w.found());
}

#[test]
fn frobenius_closure_witness_persists() {
    // x^q ∈ I^[q] + I0 implies x^(qp) ∈ I^[qp] + I0
    let engine = Engine::default();
    let i = i43(3);
    let r = i.ring().clone();
    let ad = Ideal::parse(&r, &["a", "d"]).unwrap();
    let x = poly("a^2*t", &r);
    let w = frobenius_closure_member(&engine, &x, &ad, &i, 2).unwrap();
    if let WitnessKind::FrobeniusClosure { q, .. } = w.kind {
        let big = frobenius_power(&ad, q * 3).unwrap().sum(&i).unwrap();
        assert!(engine.ideal_member(&x.frobenius_twist(q * 3).unwrap(), &big).unwrap());
    } else {
        panic!("expected a witness, got {:?}", w.kind);
    }
}

#[test]
fn tight_closure_examples() {
    let engine = Engine::default();
    let i = i43(17);
    let r = i.ring().clone();
    let ad = Ideal::parse(&r, &["a", "d"]).unwrap();
    let x = poly("b^3*t^3", &r);
    let c = x.pow(7).unwrap();
    let w = tight_closure_witness_check(&engine, &x, &ad, &i, &c, &[17]).unwrap();
    assert!(matches!(w.kind, WitnessKind::TightClosure { .. }));
    assert!(w.note.is_some());

    let one = Polynomial::one(&r);
    let w = tight_closure_witness_check(&engine, &poly("a", &r), &ad, &i, &one, &[1, 17, 289]).unwrap();
    assert!(w.found());

    let w = tight_closure_witness_check(&engine, &one, &ad, &i, &poly("t", &r), &[17]).unwrap();
    assert_eq!(w.kind, WitnessKind::Failed { q: 17 });

    let zero_mult = &i.generators()[0] * &poly("t", &r);
    assert!(matches!(
        tight_closure_witness_check(&engine, &x, &ad, &i, &zero_mult, &[17]),
        Err(Error::Precondition(_))
    ));
    assert!(tight_closure_witness_check(&engine, &x, &ad, &i, &c, &[18]).is_err());
}

#[test]
fn fedder_regular_ring() {
    let engine = Engine::default();
    for p in [2, 3, 5, 7] {
        let r = RingSignature::standard(&["x", "y"], fp(p)).unwrap();
        let v = fedder_fpurity(&engine, &Ideal::zero(&r)).unwrap();
        assert_eq!(v.verdict, Purity::FPure);
    }
}

#[test]
fn fedder_on_family_member_at_seventeen() {
    let engine = Engine::default();
    let i = i43(17);
    let v = fedder_fpurity(&engine, &i).unwrap();
    assert_eq!(v.verdict, Purity::NotFPure);
    assert!(v.certificate.is_none());
}

#[test]
fn fedder_on_quotient_s() {
    let engine = Engine::default();
    let r = RingSignature::new(&["a", "b", "c", "d"], &[1, 2, 2, 4], fp(5)).unwrap();
    let j = Ideal::parse(&r, &["a^4 - b*c", "a^2*(b^2 - d) - d*c", "b*(b^2 - d) - d*a^2"]).unwrap();
    let v = fedder_fpurity(&engine, &j).unwrap();
    assert_eq!(v.verdict, Purity::FPure);
    // the certificate multiplies the ideal into its bracket power
    let cert = poly(v.certificate.as_deref().unwrap(), &r);
    let bracket = frobenius_power(&j, 5).unwrap();
    for g in j.generators() {
        assert!(engine.ideal_member(&(&cert * g), &bracket).unwrap());
    }
    assert!(cert.term_outside_bracket_power(5).is_some());
}

#[test]
fn glassbrenner_examples() {
    let engine = Engine::default();
    let r = RingSignature::standard(&["x", "y"], fp(5)).unwrap();
    let w = glassbrenner_hypersurface(&engine, &poly("x", &r), &Polynomial::one(&r), 3).unwrap();
    assert_eq!(w.kind, WitnessKind::HypersurfaceSplitting { e: 1, q: 5, monomial: "x^4".into() });

    let h = RingSignature::new(&["a", "x", "y"], &[5, 2, 4], fp(5)).unwrap();
    let f = poly("a^2 - x*y*(x^2 - y)", &h);
    let w = glassbrenner_hypersurface(&engine, &f, &poly("a", &h), 3).unwrap();
    match w.kind {
        WitnessKind::HypersurfaceSplitting { e, .. } => assert!(e <= 3),
        other => panic!("no witness: {other:?}"),
    }

    // x*y is singular at the origin and 1 does not vanish there
    let r3 = RingSignature::standard(&["x", "y"], fp(3)).unwrap();
    assert!(matches!(
        glassbrenner_hypersurface(&engine, &poly("x*y", &r3), &Polynomial::one(&r3), 3),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn chain_of_notions_on_a_hypersurface() {
    let engine = Engine::default();
    let h = RingSignature::new(&["a", "x", "y"], &[5, 2, 4], fp(7)).unwrap();
    let f = poly("a^2 - x*y*(x^2 - y)", &h);
    let w = glassbrenner_hypersurface(&engine, &f, &poly("a", &h), 3).unwrap();
    assert!(w.found());
    let v = fedder_fpurity(&engine, &Ideal::new(&h, vec![f]).unwrap()).unwrap();
    assert_eq!(v.verdict, Purity::FPure);
}

#[test]
fn localization_examples() {
    let engine = Engine::default();
    let h = RingSignature::new(&["a", "x", "y"], &[5, 2, 4], fp(5)).unwrap();
    assert!(validate_localization(&engine, &poly("a^2 - x*y*(x^2 - y)", &h), &poly("a", &h)).unwrap());
    let r = RingSignature::standard(&["x", "y"], fp(5)).unwrap();
    assert!(!validate_localization(&engine, &poly("x^2", &r), &poly("y", &r)).unwrap());
    let r3 = RingSignature::standard(&["x", "y", "z"], fp(5)).unwrap();
    assert!(validate_localization(&engine, &poly("x^2 + y^2 + z^2", &r3), &poly("x", &r3)).unwrap());
}

#[test]
fn singular_locus_examples() {
    let engine = Engine::default();
    let r = RingSignature::standard(&["x", "y"], fp(5)).unwrap();
    let curve = Ideal::parse(&r, &["x^2 + y^2"]).unwrap();
    let s = singular_locus_ideal(&curve, 1).unwrap();
    assert_eq!(s.generator_strings(), ["x^2 + y^2", "2*x", "2*y"]);
    assert!(radical_equal(&engine, &s, &Ideal::parse(&r, &["x", "y"]).unwrap()).unwrap());
    let line = Ideal::parse(&r, &["x"]).unwrap();
    let s = singular_locus_ideal(&line, 1).unwrap();
    assert!(engine.ideal_member(&Polynomial::one(&r), &s).unwrap());
    assert!(singular_locus_ideal(&line, 2).is_err());

    assert!(radical_equal(&engine, &Ideal::parse(&r, &["x^2"]).unwrap(), &line).unwrap());
    assert!(!radical_equal(&engine, &line, &Ideal::parse(&r, &["y"]).unwrap()).unwrap());
}
