use fregcheck::algebra::{parse_polynomial, CoefficientField, Polynomial, RingSignature};
use fregcheck::family::constructors::{family_ring, quotient_ring};
use fregcheck::family::instance::{check_family, check_k, exponent_is_covered};
use fregcheck::family::report::{IdealText, WindowEntry};
use fregcheck::family::*;
use fregcheck::fsing::{frobenius_power, tight_closure_witness_check, Purity, WitnessKind};
use fregcheck::groebner::{ideal_member_linear_oracle, Engine, Ideal};
use fregcheck::Error;

fn fp(p: u64) -> CoefficientField {
    CoefficientField::prime(p).unwrap()
}

fn inst(p: u64, m: u32, n: u32, k: Option<u32>) -> PaperInstance {
    PaperInstance::new(Characteristic::Prime(p), m, n, k)
}

fn sub(r: &VerificationReport, i: usize) -> &VerificationReport {
    match &r.witnesses[i] {
        Witness::SubReport(s) => s,
        w => panic!("expected a sub-report, got {w:?}"),
    }
}

#[test]
fn matrix_ideal_generators() {
    let i = matrix_ideal(4, 3, fp(17)).unwrap();
    let expected = Ideal::parse(
        i.ring(),
        &[
            "(a^2+t^4)*a^2 - b*c",
            "(a^2+t^4)*(b^3-d) - d*c",
            "b*(b^3-d) - d*a^2",
        ],
    )
    .unwrap();
    assert_eq!(i.generators(), expected.generators());
    assert_eq!(i.generators()[0].weighted_degree().unwrap(), (16, true));
    assert!(i.is_homogeneous());
}

#[test]
fn specialization_matches_quotient() {
    // t = 0 and weights divided by m, generator by generator
    for (m, n) in [(4, 3), (5, 2), (7, 4)] {
        let i = matrix_ideal(m, n, fp(5)).unwrap();
        let s = quotient_S_ideal(n, fp(5)).unwrap();
        let r = i.ring();
        let images: Vec<Polynomial> = ["a", "b", "c", "d"]
            .iter()
            .map(|v| Polynomial::var_named(s.ring(), v).unwrap())
            .chain([Polynomial::zero(s.ring())])
            .collect();
        assert_eq!(r.weights().iter().map(|w| w % m).sum::<u32>(), 2);
        for (g, h) in i.generators().iter().zip(s.generators()) {
            assert_eq!(&g.substitute(&images).unwrap(), h);
        }
    }
}

#[test]
fn quotient_ideal() {
    let s = quotient_S_ideal(2, fp(5)).unwrap();
    let expected = Ideal::parse(s.ring(), &["a^4 - b*c", "a^2*(b^2-d) - d*c", "b*(b^2-d) - d*a^2"]).unwrap();
    assert_eq!(s.generators(), expected.generators());
    assert_eq!(s.ring().weights(), [1, 2, 2, 4]);
    assert!(s.is_homogeneous());
    assert_eq!(Engine::default().krull_dimension(&s).unwrap(), 2);
}

#[test]
fn hypersurface() {
    let f = hypersurface_H(2, fp(5)).unwrap();
    assert_eq!(f, parse_polynomial("a^2 - x^3*y + x*y^2", f.ring()).unwrap());
    assert_eq!(f.ring().weights(), [5, 2, 4]);
    assert_eq!(f.weighted_degree().unwrap(), (10, true));
    for n in 1..=5 {
        let f = hypersurface_H(n, fp(7)).unwrap();
        assert_eq!(f.weighted_degree().unwrap(), (4 * n as u64 + 2, true));
    }
    assert!(matches!(
        verify_quotient_fregular(&Engine::default(), 2, Characteristic::Prime(2), 3),
        Err(Error::Hypothesis(_))
    ));
}

#[test]
fn key_lemma_instances() {
    let e = Engine::default();
    for p in [17, 5] {
        let r = verify_key_lemma(&e, &inst(p, 4, 3, Some(2))).unwrap();
        assert_eq!(r.verdict, Verdict::Verified, "p = {p}");
        assert!(r.stats.gb_calls >= 1);
    }
    assert!(matches!(
        verify_key_lemma(&e, &inst(5, 3, 3, Some(1))),
        Err(Error::Hypothesis(_))
    ));
    assert!(matches!(
        verify_key_lemma(&e, &inst(5, 4, 3, Some(1))),
        Err(Error::Hypothesis(_))
    ));
}

#[test]
fn key_lemma_membership_recheck() {
    // re-derive the membership from the report's own text
    let r = verify_key_lemma(&Engine::default(), &inst(17, 4, 3, Some(2))).unwrap();
    let Witness::Membership { element, ideal, member, .. } = &r.witnesses[0] else {
        panic!("membership witness expected")
    };
    assert!(member);
    let ideal = ideal.to_ideal().unwrap();
    let x = parse_polynomial(element, ideal.ring()).unwrap();
    assert_eq!(element, "b^51*t^51");
    let gb = Engine::new(10_000_000).groebner(&ideal, &fregcheck::groebner::default_order(ideal.ring())).unwrap();
    assert!(gb.normal_form(&x).unwrap().is_zero());
}

fn replay_ok(m: u32, n: u32, k: u32) -> VerificationReport {
    let r = replay_key_lemma_proof(&Engine::default(), m, n, k).unwrap();
    assert_eq!(r.verdict, Verdict::Verified, "({m},{n},{k})");
    r
}

#[test]
fn proof_replay() {
    let r = replay_ok(4, 3, 2);
    let Witness::KeyLemmaReplay {
        pullback,
        binomial,
        steps,
        slack_bound,
        admissible_min_slack,
        admissible_pairs,
    } = &r.witnesses[0]
    else {
        panic!()
    };
    assert!(*pullback && *binomial);
    assert_eq!(steps.iter().map(|s| s.i).collect::<Vec<_>>(), (1..=9).collect::<Vec<_>>());
    // k(m - m/n - 2) - 1 = 2 * 2/3 - 1
    assert_eq!(slack_bound, "1/3");
    assert!(*admissible_min_slack >= 1);
    assert!(*admissible_pairs > 0);
    for s in steps {
        assert_eq!(s.tau_exponent, 8 - 4 + s.i - 1);
        assert!(s.remainder_d_exponents.iter().all(|&j| 3 * (17 - j) < 4 * s.i));
    }
    assert_eq!(r.instance.p, Characteristic::Rational);

    replay_ok(5, 2, 2);
    assert!(matches!(
        replay_key_lemma_proof(&Engine::default(), 5, 2, 1),
        Err(Error::Hypothesis(_))
    ));
}

#[test]
fn slack_at_extreme_pair() {
    // at i = mk + 1 and j = 2mk + (1 - i)(1 + 1/n), the slack is exactly k(m - m/n - 2) - 1
    for (m, n, k) in [(9u32, 3u32, 1u32), (5, 2, 2), (6, 3, 1)] {
        let i = (m * k + 1) as i64;
        let num = (2 * m * k) as i64 * n as i64 + (1 - i) * (n as i64 + 1);
        if num % n as i64 != 0 {
            continue;
        }
        let j = num / n as i64;
        let slack = j - (m * k) as i64 - 2 * k as i64 + i - 2;
        let r = replay_ok(m, n, k);
        let Witness::KeyLemmaReplay { slack_bound, admissible_min_slack, .. } = &r.witnesses[0] else {
            panic!()
        };
        assert_eq!(slack_bound, &slack.to_string());
        assert!(*admissible_min_slack <= slack);
    }
}

#[test]
fn lemma_routes_agree() {
    let e = Engine::default();
    for (m, n, k) in [(4, 3, 2), (5, 2, 2), (5, 3, 1), (6, 2, 1), (4, 3, 3)] {
        let gb = verify_key_lemma(&e, &inst(7, m, n, Some(k))).unwrap();
        let replay = replay_key_lemma_proof(&e, m, n, k).unwrap();
        assert_eq!(gb.verdict, replay.verdict, "({m},{n},{k})");
        assert_eq!(gb.verdict, Verdict::Verified);
    }
}

#[test]
fn lemma_implies_witness_at_q() {
    // q = 2mk + 1 a power of p: the tight-closure check at q holds
    let e = Engine::default();
    for (p, m, n, k) in [(17u64, 4u32, 3u32, 2u32), (13, 6, 2, 1), (11, 5, 3, 1)] {
        assert_eq!(verify_key_lemma(&e, &inst(p, m, n, Some(k))).unwrap().verdict, Verdict::Verified);
        let i = matrix_ideal(m, n, fp(p)).unwrap();
        let ad = Ideal::parse(i.ring(), &["a", "d"]).unwrap();
        let x = parse_polynomial(&format!("b^{n}*t^{}", m - 1), i.ring()).unwrap();
        let c = x.pow(2 * m as u64 - 1).unwrap();
        let w = tight_closure_witness_check(&e, &x, &ad, &i, &c, &[p]).unwrap();
        assert!(w.found(), "p = {p}");
    }
}

#[test]
fn not_fpure_certificates() {
    let e = Engine::default();
    let r = verify_not_fpure(&e, &inst(17, 4, 3, None)).unwrap();
    assert_eq!(r.verdict, Verdict::Verified);
    assert!(matches!(&r.witnesses[1], Witness::Frobenius { witness, .. }
        if witness.kind == WitnessKind::FrobeniusClosure { e: 1, q: 17 }));

    let r = verify_not_fpure(&e, &inst(3, 4, 3, None)).unwrap();
    assert_eq!(r.verdict, Verdict::Verified);
    assert!(matches!(&r.witnesses[1], Witness::Skipped { .. }));

    let r = verify_not_fpure(&e, &inst(5, 4, 3, None)).unwrap();
    assert_eq!(r.verdict, Verdict::Verified);
    let Witness::Purity(v) = &r.witnesses[0] else { panic!() };
    assert_eq!(v.verdict, Purity::NotFPure);
    assert_eq!(v.degree_bound, 4 * (4 + 8 + 8 + 24 + 2));

    // every colon generator lies in m^[5] and multiplies I into I^[5]
    let i = matrix_ideal(4, 3, fp(5)).unwrap();
    let bracket = frobenius_power(&i, 5).unwrap();
    for g in &v.colon_generators {
        let g = parse_polynomial(g, i.ring()).unwrap();
        assert!(g.term_outside_bracket_power(5).is_none());
        for h in i.generators() {
            assert!(e.ideal_member(&g.try_mul(h).unwrap(), &bracket).unwrap());
        }
    }

    assert!(matches!(verify_not_fpure(&e, &inst(5, 5, 3, None)), Err(Error::Hypothesis(_))));
    assert!(matches!(verify_not_fpure(&e, &inst(2, 5, 3, None)), Err(Error::Hypothesis(_))));
}

#[test]
fn not_fregular_window() {
    let e = Engine::default();
    let r = verify_not_fregular(&e, &inst(17, 4, 3, None), 100).unwrap();
    assert_eq!(r.verdict, Verdict::Verified);
    let Witness::TightClosureWindow { entries, multiplier, .. } = &r.witnesses[1] else { panic!() };
    assert_eq!(entries, &[WindowEntry { q: 17, asserted: true, holds: true }]);
    assert_eq!(multiplier, "b^21*t^21");

    let r = verify_not_fregular(&e, &inst(5, 4, 3, None), 100).unwrap();
    assert_eq!(r.verdict, Verdict::Verified);
    let Witness::TightClosureWindow { entries, .. } = &r.witnesses[1] else { panic!() };
    assert_eq!(entries.iter().map(|x| (x.q, x.asserted)).collect::<Vec<_>>(), [(5, false), (25, true)]);

    // the window can miss every asserted exponent
    let r = verify_not_fregular(&e, &inst(5, 4, 3, None), 10).unwrap();
    assert_eq!(r.verdict, Verdict::Inconclusive);
    let r = verify_not_fregular(&e, &inst(17, 4, 3, None), 10).unwrap();
    assert_eq!(r.verdict, Verdict::Inconclusive);
}

#[test]
fn key_element_outside_parameters() {
    let r = verify_not_fregular(&Engine::default(), &inst(5, 4, 3, None), 5).unwrap();
    let Witness::Membership { element, ideal, member, expected, .. } = &r.witnesses[0] else { panic!() };
    assert!(!member && !expected);
    let ideal = ideal.to_ideal().unwrap();
    let x = parse_polynomial(element, ideal.ring()).unwrap();
    assert!(!ideal_member_linear_oracle(&x, &ideal, 40).unwrap());
}

#[test]
fn quotient_fregular_chain() {
    let e = Engine::default();
    for (n, p) in [(2, 5), (2, 7), (3, 5)] {
        let r = verify_quotient_fregular(&e, n, Characteristic::Prime(p), 3).unwrap();
        assert_eq!(r.verdict, Verdict::Verified, "n = {n}, p = {p}");
        assert!(matches!(&r.witnesses[0], Witness::Presentation { equal: true, substitution_vanishes: true, .. }));
        assert!(matches!(&r.witnesses[1], Witness::Localization { holds: true, .. }));
        let Witness::Frobenius { witness, .. } = &r.witnesses[2] else { panic!() };
        assert!(matches!(witness.kind, WitnessKind::HypersurfaceSplitting { e, .. } if e <= 3));
        assert!(matches!(&r.witnesses[3], Witness::Citation { .. }));
        assert_eq!(r.instance.m, None);
    }
}

#[test]
fn veronese_kernel() {
    let e = Engine::default();
    for (n, p) in [(2, 5), (3, 7)] {
        let check = veronese_presentation_check(&e, n, fp(p)).unwrap();
        assert!(check.holds());
        // negative control: the kernel is not J + (a)
        let bigger = check.target.with_generators(&[Polynomial::var(check.target.ring(), 0)]).unwrap();
        assert!(!e.ideals_equal(&check.kernel, &bigger).unwrap());
    }
}

#[test]
fn structure_facts() {
    let e = Engine::default();
    for p in [5, 17] {
        let reports = verify_hsop_and_nzd(&e, &inst(p, 4, 3, None)).unwrap();
        assert!(reports.iter().all(|r| r.verdict == Verdict::Verified));
        let dims: Vec<usize> = reports[0]
            .witnesses
            .iter()
            .map(|w| match w {
                Witness::Dimension { dimension, .. } => *dimension,
                _ => panic!(),
            })
            .collect();
        assert_eq!(dims, [3, 0]);
    }
}

#[test]
fn singular_locus() {
    let e = Engine::default();
    for p in [5, 3] {
        let r = verify_singular_locus(&e, &inst(p, 4, 3, None)).unwrap();
        assert_eq!(r.verdict, Verdict::Verified, "p = {p}");
        assert_eq!(r.witnesses.len(), 3);
    }
    assert!(matches!(verify_singular_locus(&e, &inst(5, 5, 3, None)), Err(Error::Hypothesis(_))));

    // negative control: c alone instead of c(c + t^4) is a strictly smaller locus
    let r = verify_singular_locus(&e, &inst(5, 4, 3, None)).unwrap();
    let Witness::IdealEquality { left, .. } = &r.witnesses[0] else { panic!() };
    let jac = left.to_ideal().unwrap();
    let i = matrix_ideal(4, 3, fp(5)).unwrap();
    let wrong = i.with_generators(Ideal::parse(i.ring(), &["a", "b", "c", "d"]).unwrap().generators()).unwrap();
    assert!(!e.radical_equal(&jac, &wrong).unwrap());
}

#[test]
fn sweep() {
    let e = Engine::default();
    let rows = prime_sweep(&e, 4, 3, &[3, 5, 7, 11, 13], VerifyOptions::default());
    assert_eq!(rows.len(), 5);
    assert_eq!(
        rows.iter().map(|r| r.instance.p).collect::<Vec<_>>(),
        [3, 5, 7, 11, 13].map(Characteristic::Prime)
    );
    for r in &rows {
        assert_eq!(r.verdict, Verdict::Verified, "{}", r.instance);
        assert_eq!(sub(r, 0).claim, "prop-4.4-not-fpure");
        assert_eq!(sub(r, 1).claim, "prop-4.3-quotient-fregular");
    }

    let rows = prime_sweep(&e, 4, 3, &[2, 5], VerifyOptions::default());
    assert!(matches!(&rows[0].witnesses[0], Witness::Rejected { p: 2, .. }));
    assert_eq!(rows[1].verdict, Verdict::Verified);

    assert!(prime_sweep(&e, 4, 3, &[], VerifyOptions::default()).is_empty());
}

#[test]
fn bundle() {
    let e = Engine::default();
    let r = verify_main_theorem(&e, &inst(5, 4, 3, Some(2)), VerifyOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Verified);
    let claims: Vec<&str> = (0..r.witnesses.len()).map(|i| sub(&r, i).claim.as_str()).collect();
    assert_eq!(
        claims,
        [
            "rem-4.1-hsop",
            "rem-4.1-nzd",
            "prop-4.3-quotient-fregular",
            "prop-4.4-not-fregular",
            "prop-4.4-not-fpure"
        ]
    );
    assert!(matches!(
        verify_main_theorem(&e, &inst(5, 3, 3, None), VerifyOptions::default()),
        Err(Error::Hypothesis(_))
    ));
    // p divides m: F-purity is not part of the bundle
    let r = verify_main_theorem(&e, &inst(3, 6, 2, None), VerifyOptions { e_max: 3, q_window: 30 }).unwrap();
    assert_eq!(r.witnesses.len(), 4);
}

#[test]
fn flagship_bundle() {
    let r = verify_main_theorem(&Engine::default(), &inst(17, 4, 3, Some(2)), VerifyOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Verified);
    assert_eq!(r.witnesses.len(), 5);
}

#[test]
fn reports_round_trip_and_repeat() {
    let e = Engine::default();
    let a = verify_main_theorem(&e, &inst(5, 4, 3, Some(2)), VerifyOptions::default()).unwrap();
    let b = verify_main_theorem(&e, &inst(5, 4, 3, Some(2)), VerifyOptions::default()).unwrap();
    let json = serde_json::to_string(&a).unwrap();
    assert_eq!(serde_json::from_str::<VerificationReport>(&json).unwrap(), a);
    assert_eq!(
        serde_json::to_string(&a.without_timings()).unwrap(),
        serde_json::to_string(&b.without_timings()).unwrap()
    );
    let r = replay_key_lemma_proof(&e, 4, 3, 2).unwrap();
    let json = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<VerificationReport>(&json).unwrap(), r);
}

#[test]
fn ideal_text_round_trip() {
    let i = matrix_ideal(4, 3, fp(17)).unwrap();
    let t = IdealText::of(&i);
    assert_eq!(t.to_ideal().unwrap().generators(), i.generators());
    let q = quotient_ring(3, CoefficientField::Rationals).unwrap();
    assert_eq!(IdealText::of(&Ideal::zero(&q)).ring.characteristic, 0);
    assert_eq!(family_ring(4, 3, fp(5)).unwrap().weights(), [4, 8, 8, 24, 2]);
    let _ = RingSignature::new(&["x"], &[1], fp(5)).unwrap();
}

#[test]
fn catalog() {
    let ids: Vec<&str> = CLAIMS.iter().map(|c| c.id).collect();
    for id in [
        "lemma-4.2",
        "prop-4.3-quotient-fregular",
        "prop-4.4-not-fpure",
        "prop-4.4-not-fregular",
        "rem-4.1-hsop",
        "rem-4.1-nzd",
        "sec6-singular-locus",
        "thm-1.1-bundle",
        "sec5-sweep",
    ] {
        assert_eq!(ids.iter().filter(|&&x| x == id).count(), 1, "{id}");
    }
    assert_eq!(claim_info("thm-1.1").unwrap().id, "thm-1.1-bundle");
    assert!(claim_info("nope").is_none());
}

#[test]
fn hypotheses() {
    assert!(check_family(4, 3).is_ok());
    assert!(matches!(check_family(3, 3), Err(Error::Hypothesis(_))));
    assert!(check_k(4, 3, 2).is_ok());
    assert!(check_k(4, 3, 1).is_err());
    assert!(check_k(5, 2, 2).is_ok());
    assert!(check_k(5, 2, 1).is_err());
}

#[test]
fn covered_exponents() {
    // m = 4, n = 3: k >= 2, windows [10, 17], [18, 25], ...
    assert!(!exponent_is_covered(5, 4, 3));
    assert!(!exponent_is_covered(9, 4, 3));
    assert!(exponent_is_covered(10, 4, 3));
    assert!(exponent_is_covered(17, 4, 3));
    assert!(exponent_is_covered(25, 4, 3));
    assert!(exponent_is_covered(81, 4, 3));
}

#[test]
fn characteristic_serde() {
    let i = PaperInstance::new(Characteristic::Prime(17), 4, 3, Some(2));
    let s = serde_json::to_string(&i).unwrap();
    assert_eq!(s, r#"{"p":17,"m":4,"n":3,"k":2}"#);
    assert_eq!(serde_json::from_str::<PaperInstance>(&s).unwrap(), i);
    let q = PaperInstance::new(Characteristic::Rational, 4, 3, None);
    let s = serde_json::to_string(&q).unwrap();
    assert_eq!(serde_json::from_str::<PaperInstance>(&s).unwrap(), q);
}
