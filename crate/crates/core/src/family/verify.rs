//! One verifier per claim. Each runs on a forked engine so its report carries
//! its own statistics.

use std::time::Instant;

use rayon::prelude::*;

use crate::algebra::{CoefficientField, Polynomial, RingSignature};
use crate::error::{Error, Result};
use crate::family::constructors::{
    hypersurface_H, hypersurface_ring, key_element, matrix_ideal, parameter_ideal, quotient_S_ideal, veronese_images,
};
use crate::family::instance::{
    check_coprime, check_family, check_k, check_odd_prime, exponent_is_covered, Characteristic, PaperInstance,
};
use crate::family::report::*;
use crate::fsing::{
    fedder_fpurity, frobenius_closure_member, glassbrenner_hypersurface, singular_locus_ideal,
    tight_closure_witness_check, validate_localization, Purity, DEFAULT_E_MAX,
};
use crate::groebner::{Engine, Ideal};

/// Largest `q` examined by the tight-closure check unless overridden.
pub const DEFAULT_Q_WINDOW: u64 = 100;

const WINDOW_NOTE: &str = "only the listed exponents are checked; \
    membership for all large q is not certified by a finite window";

const GRADING_NOTE: &str = "S is graded by (1, 2, 2, 2n), the t = 0 grading divided by m";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest Frobenius exponent searched by the Glassbrenner test.
    pub e_max: u32,
    /// Largest `q = p^e` in the tight-closure window.
    pub q_window: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            e_max: DEFAULT_E_MAX,
            q_window: DEFAULT_Q_WINDOW,
        }
    }
}

pub(crate) fn finish(
    claim: &str,
    instance: PaperInstance,
    verdict: Verdict,
    witnesses: Vec<Witness>,
    notes: Vec<String>,
    engine: &Engine,
    start: Instant,
) -> VerificationReport {
    VerificationReport {
        claim: claim.to_string(),
        instance,
        verdict,
        witnesses,
        notes,
        stats: engine.stats(),
        timings: Timings {
            wall_ms: start.elapsed().as_millis() as u64,
        },
    }
}

fn holds(ok: bool) -> Verdict {
    if ok {
        Verdict::Verified
    } else {
        Verdict::Refuted
    }
}

fn membership(engine: &Engine, label: &str, f: &Polynomial, ideal: &Ideal, expected: bool) -> Result<(Witness, bool)> {
    let member = engine.ideal_member(f, ideal)?;
    let w = Witness::Membership {
        label: label.to_string(),
        element: f.to_string(),
        ideal: IdealText::of(ideal),
        member,
        expected,
    };
    Ok((w, member == expected))
}

fn family_field(inst: &PaperInstance) -> Result<(u32, CoefficientField)> {
    let m = inst.m()?;
    check_family(m, inst.n)?;
    Ok((m, inst.field()?))
}

/// `(b^n t^{m-1})^{2mk+1} ∈ (a^{2mk+1}, d^{2mk+1}) + I_{m,n}`.
pub fn verify_key_lemma(engine: &Engine, inst: &PaperInstance) -> Result<VerificationReport> {
    let (m, field) = family_field(inst)?;
    let (n, k) = (inst.n, inst.k()?);
    check_k(m, n, k)?;
    let start = Instant::now();
    let engine = engine.fork();
    let ideal = matrix_ideal(m, n, field)?;
    let q = 2 * m as u64 * k as u64 + 1;
    let x = key_element(&ideal, m, n)?.pow(q)?;
    let target = Ideal::new(
        ideal.ring(),
        parameter_ideal(ideal.ring())?.generators().iter().map(|g| g.pow(q)).collect::<Result<_>>()?,
    )?
    .sum(&ideal)?;
    let (w, ok) = membership(&engine, "key containment", &x, &target, true)?;
    Ok(finish(LEMMA, inst.clone(), holds(ok), vec![w], Vec::new(), &engine, start))
}

/// Fedder's criterion on `I_{m,n}`, plus the `e = 1` Frobenius-closure witness
/// when `p = 2mk + 1` for an admissible `k`.
pub fn verify_not_fpure(engine: &Engine, inst: &PaperInstance) -> Result<VerificationReport> {
    let (m, field) = family_field(inst)?;
    let p = check_odd_prime(inst.p)?;
    check_coprime(p, m)?;
    let n = inst.n;
    let start = Instant::now();
    let engine = engine.fork();
    let ideal = matrix_ideal(m, n, field)?;

    let purity = fedder_fpurity(&engine, &ideal)?;
    let mut verdict = holds(purity.verdict == Purity::NotFPure);
    let mut witnesses = vec![Witness::Purity(purity)];

    let two_m = 2 * m as u64;
    let forced_k = (p % two_m == 1).then(|| (p - 1) / two_m);
    match forced_k.filter(|&k| k <= u32::MAX as u64 && check_k(m, n, k as u32).is_ok()) {
        Some(_) => {
            let x = key_element(&ideal, m, n)?;
            let w = frobenius_closure_member(&engine, &x, &parameter_ideal(ideal.ring())?, &ideal, 1)?;
            // x itself is outside (a, d), so the witness must be e = 1
            let fired = matches!(w.kind, crate::fsing::WitnessKind::FrobeniusClosure { e: 1, .. });
            verdict = verdict.combine(holds(fired));
            witnesses.push(Witness::Frobenius {
                label: "Frobenius closure at q = p".into(),
                witness: w,
            });
        }
        None => witnesses.push(Witness::Skipped {
            label: "Frobenius closure at q = p".into(),
            reason: format!("p = {p} is not 2mk + 1 for an admissible k"),
        }),
    }
    Ok(finish(NOT_FPURE, inst.clone(), verdict, witnesses, Vec::new(), &engine, start))
}

/// `b^n t^{m-1} ∉ (a, d) + I`, and `c x^q ∈ (a^q, d^q) + I` with
/// `c = x^{2m-1}` for every `q = p^e <= q_window`. Only exponents of the form
/// `2mk + delta` with admissible `k` are asserted; others are recorded.
pub fn verify_not_fregular(engine: &Engine, inst: &PaperInstance, q_window: u64) -> Result<VerificationReport> {
    let (m, field) = family_field(inst)?;
    let p = check_odd_prime(inst.p)?;
    let n = inst.n;
    let start = Instant::now();
    let engine = engine.fork();
    let ideal = matrix_ideal(m, n, field)?;
    let ad = parameter_ideal(ideal.ring())?;
    let x = key_element(&ideal, m, n)?;

    let (outside, ok) = membership(&engine, "key element outside (a, d)", &x, &ad.sum(&ideal)?, false)?;
    let mut verdict = holds(ok);
    let mut witnesses = vec![outside];
    let mut notes = vec![WINDOW_NOTE.to_string()];

    let mut qs = Vec::new();
    let mut q = p;
    while q <= q_window {
        qs.push(q);
        q = match q.checked_mul(p) {
            Some(v) => v,
            None => break,
        };
    }
    let c = x.pow(2 * m as u64 - 1)?;
    if qs.is_empty() {
        notes.push(format!("no power of {p} lies in the window q <= {q_window}"));
        verdict = verdict.combine(Verdict::Inconclusive);
    } else {
        let witness = tight_closure_witness_check(&engine, &x, &ad, &ideal, &c, &qs)?;
        let entries: Vec<WindowEntry> = witness
            .checks
            .iter()
            .map(|ch| WindowEntry {
                q: ch.q,
                asserted: exponent_is_covered(ch.q, m, n),
                holds: ch.holds,
            })
            .collect();
        if entries.iter().any(|e| e.asserted && !e.holds) {
            verdict = Verdict::Refuted;
        } else if !entries.iter().any(|e| e.asserted) {
            notes.push("no exponent in the window is of the form 2mk + delta with admissible k".into());
            verdict = verdict.combine(Verdict::Inconclusive);
        }
        witnesses.push(Witness::TightClosureWindow {
            element: x.to_string(),
            multiplier: c.to_string(),
            window: q_window,
            entries,
            witness,
        });
    }
    Ok(finish(NOT_FREGULAR, inst.clone(), verdict, witnesses, notes, &engine, start))
}

/// Outcome of comparing the kernel of `K[a,b,c,d] -> K[a,x,y]/(f_H)` with `J`.
#[derive(Clone, Debug)]
pub struct PresentationCheck {
    pub kernel: Ideal,
    pub target: Ideal,
    pub equal: bool,
    /// Every generator of `J` maps to a multiple of `f_H`.
    pub substitution_vanishes: bool,
}

impl PresentationCheck {
    pub fn holds(&self) -> bool {
        self.equal && self.substitution_vanishes
    }

    fn witness(&self) -> Witness {
        Witness::Presentation {
            kernel: IdealText::of(&self.kernel),
            target: IdealText::of(&self.target),
            equal: self.equal,
            substitution_vanishes: self.substitution_vanishes,
        }
    }
}

/// Computes the kernel of `a -> a, b -> x y^2, c -> x (x^n - y)^2, d -> y^{2n+1}`
/// into the hypersurface ring by elimination and compares it with `J`.
pub fn veronese_presentation_check(engine: &Engine, n: u32, field: CoefficientField) -> Result<PresentationCheck> {
    let target = quotient_S_ideal(n, field)?;
    let f = hypersurface_H(n, field)?;
    let h = hypersurface_ring(n, field)?;

    // the graph of the map, graded so every generator is homogeneous
    let (wx, wy, wa) = (2, 2 * n, 2 * n + 1);
    let graph = RingSignature::new(
        &["x", "y", "a", "b", "c", "d"],
        &[wx, wy, wa, 2 * wa, 2 * wa, 2 * n * wa],
        field,
    )?;
    let images = veronese_images(n, &graph)?;
    let mut gens = vec![f.map_by_name(&graph)?];
    for (name, image) in ["b", "c", "d"].iter().zip(&images) {
        gens.push(Polynomial::var_named(&graph, name)?.try_sub(image)?);
    }
    let kernel = engine.eliminate(&Ideal::new(&graph, gens)?, &[2, 3, 4, 5])?;
    let kernel = kernel.map_by_name(target.ring())?;
    let equal = engine.ideals_equal(&kernel, &target)?;

    let [b, c, d] = veronese_images(n, &h)?;
    let subs = [Polynomial::var_named(&h, "a")?, b, c, d];
    let mut substitution_vanishes = true;
    for g in target.generators() {
        substitution_vanishes &= g.substitute(&subs)?.div_exact(&f)?.is_some();
    }
    Ok(PresentationCheck {
        kernel,
        target,
        equal,
        substitution_vanishes,
    })
}

/// `S` is F-regular: it is the Veronese summand of `H`, and `H` passes
/// Glassbrenner's test with `c = a`.
pub fn verify_quotient_fregular(engine: &Engine, n: u32, p: Characteristic, e_max: u32) -> Result<VerificationReport> {
    let prime = check_odd_prime(p)?;
    let field = CoefficientField::prime(prime)?;
    let start = Instant::now();
    let engine = engine.fork();
    let presentation = veronese_presentation_check(&engine, n, field)?;
    let f = hypersurface_H(n, field)?;
    let a = Polynomial::var_named(f.ring(), "a")?;
    let localized = validate_localization(&engine, &f, &a)?;
    let mut verdict = holds(presentation.holds() && localized);
    let mut witnesses = vec![
        presentation.witness(),
        Witness::Localization {
            f: f.to_string(),
            c: a.to_string(),
            holds: localized,
        },
    ];
    if localized {
        let g = glassbrenner_hypersurface(&engine, &f, &a, e_max)?;
        if !g.found() {
            verdict = verdict.combine(Verdict::Inconclusive);
        }
        witnesses.push(Witness::Frobenius {
            label: "Glassbrenner test for H".into(),
            witness: g,
        });
    }
    witnesses.push(Witness::Citation {
        statement: "direct summands of F-regular rings are F-regular".into(),
    });
    let notes = vec![GRADING_NOTE.to_string()];
    Ok(finish(
        QUOTIENT_FREGULAR,
        PaperInstance::quotient(p, n),
        verdict,
        witnesses,
        notes,
        &engine,
        start,
    ))
}

/// `dim R = 3` and `dim R/(t, c, d) = 0`.
pub fn verify_hsop(engine: &Engine, inst: &PaperInstance) -> Result<VerificationReport> {
    let (m, field) = family_field(inst)?;
    let start = Instant::now();
    let engine = engine.fork();
    let ideal = matrix_ideal(m, inst.n, field)?;
    let ring = ideal.ring();
    let params = ["t", "c", "d"]
        .iter()
        .map(|v| Polynomial::var_named(ring, v))
        .collect::<Result<Vec<_>>>()?;
    let cut = ideal.with_generators(&params)?;
    let mut witnesses = Vec::new();
    let mut ok = true;
    for (label, id, expected) in [("R", &ideal, 3), ("R/(t, c, d)", &cut, 0)] {
        let dimension = engine.krull_dimension(id)?;
        ok &= dimension == expected;
        witnesses.push(Witness::Dimension {
            label: label.into(),
            ideal: IdealText::of(id),
            dimension,
            expected,
        });
    }
    Ok(finish(HSOP, inst.clone(), holds(ok), witnesses, Vec::new(), &engine, start))
}

/// `(I : t) = I`.
pub fn verify_nzd(engine: &Engine, inst: &PaperInstance) -> Result<VerificationReport> {
    let (m, field) = family_field(inst)?;
    let start = Instant::now();
    let engine = engine.fork();
    let ideal = matrix_ideal(m, inst.n, field)?;
    let t = Polynomial::var_named(ideal.ring(), "t")?;
    let colon = engine.colon_ideal(&ideal, &t)?;
    let equal = engine.ideals_equal(&colon, &ideal)?;
    let w = Witness::IdealEquality {
        label: "(I : t) = I".into(),
        left: IdealText::of(&colon),
        right: IdealText::of(&ideal),
        radical: false,
        equal,
    };
    Ok(finish(NZD, inst.clone(), holds(equal), vec![w], Vec::new(), &engine, start))
}

pub fn verify_hsop_and_nzd(engine: &Engine, inst: &PaperInstance) -> Result<Vec<VerificationReport>> {
    Ok(vec![verify_hsop(engine, inst)?, verify_nzd(engine, inst)?])
}

/// `√(I + 2x2 Jacobian minors) = √(I + (a, b, c(c + t^m), d))`, plus the two
/// polynomial identities used on the charts.
pub fn verify_singular_locus(engine: &Engine, inst: &PaperInstance) -> Result<VerificationReport> {
    let (m, field) = family_field(inst)?;
    let p = inst.prime()?;
    if p % 2 == 0 || p % m as u64 == 0 {
        return Err(Error::Hypothesis(format!("gcd(p, 2m) = 1 fails for p = {p}, m = {m}")));
    }
    let n = inst.n;
    let start = Instant::now();
    let engine = engine.fork();
    let ideal = matrix_ideal(m, n, field)?;
    let ring = ideal.ring();
    let v = |name: &str| Polynomial::var_named(ring, name);
    let (a, b, c, d, t) = (v("a")?, v("b")?, v("c")?, v("d")?, v("t")?);
    let tau = a.pow(2)?.try_add(&t.pow(m as u64)?)?;

    let jacobian = singular_locus_ideal(&ideal, 2)?;
    let expected = ideal.with_generators(&[a.clone(), b.clone(), c.try_mul(&c.try_add(&t.pow(m as u64)?)?)?, d.clone()])?;
    let equal = engine.radical_equal(&jacobian, &expected)?;
    let mut witnesses = vec![Witness::IdealEquality {
        label: "singular locus".into(),
        left: IdealText::of(&jacobian),
        right: IdealText::of(&expected),
        radical: true,
        equal,
    }];
    let mut ok = equal;

    let first = a.pow(2)?.try_mul(&tau)?.try_sub(&b.try_mul(&c)?)?;
    let second = d
        .try_mul(&c.try_add(&tau)?)?
        .try_sub(&b.pow(n as u64)?.try_mul(&tau)?)?;
    for (label, f) in [("first minor", first), ("cleared expression for d", second)] {
        let (w, good) = membership(&engine, label, &f, &ideal, true)?;
        ok &= good;
        witnesses.push(w);
    }
    Ok(finish(SINGULAR_LOCUS, inst.clone(), holds(ok), witnesses, Vec::new(), &engine, start))
}

fn rejected(claim: &str, inst: PaperInstance, reason: String) -> VerificationReport {
    let p = inst.p.prime().unwrap_or(0);
    VerificationReport {
        claim: claim.to_string(),
        instance: inst,
        verdict: Verdict::Inconclusive,
        witnesses: vec![Witness::Rejected { p, reason }],
        notes: Vec::new(),
        stats: Default::default(),
        timings: Timings::default(),
    }
}

fn sweep_one(engine: &Engine, m: u32, n: u32, p: u64, opts: VerifyOptions) -> VerificationReport {
    let inst = PaperInstance::new(Characteristic::Prime(p), m, n, None);
    if let Err(e) = check_odd_prime(inst.p).and_then(|_| check_family(m, n)) {
        return rejected(SWEEP, inst, e.to_string());
    }
    let start = Instant::now();
    let mut witnesses = Vec::new();
    let mut verdict = Verdict::Verified;
    let mut stats = crate::groebner::EngineStats::default();
    let mut push = |r: Result<VerificationReport>, label: &str, witnesses: &mut Vec<Witness>, verdict: &mut Verdict| match r {
        Ok(r) => {
            *verdict = verdict.combine(r.verdict);
            stats.absorb(&r.stats);
            witnesses.push(Witness::SubReport(Box::new(r)));
        }
        Err(e) => {
            *verdict = verdict.combine(Verdict::Inconclusive);
            witnesses.push(Witness::Skipped {
                label: label.to_string(),
                reason: e.to_string(),
            });
        }
    };
    if check_coprime(p, m).is_ok() {
        push(verify_not_fpure(engine, &inst), NOT_FPURE, &mut witnesses, &mut verdict);
    } else {
        witnesses.push(Witness::Skipped {
            label: NOT_FPURE.into(),
            reason: format!("p = {p} divides m = {m}"),
        });
    }
    push(
        verify_quotient_fregular(engine, n, inst.p, opts.e_max),
        QUOTIENT_FREGULAR,
        &mut witnesses,
        &mut verdict,
    );
    VerificationReport {
        claim: SWEEP.to_string(),
        instance: inst,
        verdict,
        witnesses,
        notes: Vec::new(),
        stats,
        timings: Timings {
            wall_ms: start.elapsed().as_millis() as u64,
        },
    }
}

/// Per prime: not F-pure (when `p` does not divide `m`) and the quotient
/// F-regular. Primes run in parallel; reports come back in input order.
/// Invalid primes and per-prime errors are recorded without stopping the sweep.
pub fn prime_sweep(engine: &Engine, m: u32, n: u32, primes: &[u64], opts: VerifyOptions) -> Vec<VerificationReport> {
    primes.par_iter().map(|&p| sweep_one(engine, m, n, p, opts)).collect()
}

/// The main theorem at one instance: `R/tR` F-regular, `R` not F-regular,
/// and `R` not F-pure when `gcd(p, m) = 1`.
pub fn verify_main_theorem(engine: &Engine, inst: &PaperInstance, opts: VerifyOptions) -> Result<VerificationReport> {
    let (m, _) = family_field(inst)?;
    let p = check_odd_prime(inst.p)?;
    if let Some(k) = inst.k {
        check_k(m, inst.n, k)?;
    }
    let start = Instant::now();
    let mut claims = vec![HSOP, NZD, QUOTIENT_FREGULAR, NOT_FREGULAR];
    if check_coprime(p, m).is_ok() {
        claims.push(NOT_FPURE);
    }
    let reports = claims
        .par_iter()
        .map(|&id| {
            let r = match id {
                HSOP => verify_hsop(engine, inst),
                NZD => verify_nzd(engine, inst),
                QUOTIENT_FREGULAR => verify_quotient_fregular(engine, inst.n, inst.p, opts.e_max),
                NOT_FREGULAR => verify_not_fregular(engine, inst, opts.q_window),
                _ => verify_not_fpure(engine, inst),
            };
            r.map_err(|e| e.context(id))
        })
        .collect::<Result<Vec<_>>>()?;
    let verdict = Verdict::all(reports.iter().map(|r| r.verdict));
    let mut stats = crate::groebner::EngineStats::default();
    for r in &reports {
        stats.absorb(&r.stats);
    }
    let mut notes = Vec::new();
    if claims.len() == 4 {
        notes.push(format!("p = {p} divides m = {m}: F-purity is not asserted"));
    }
    Ok(VerificationReport {
        claim: BUNDLE.to_string(),
        instance: inst.clone(),
        verdict,
        witnesses: reports.into_iter().map(|r| Witness::SubReport(Box::new(r))).collect(),
        notes,
        stats,
        timings: Timings {
            wall_ms: start.elapsed().as_millis() as u64,
        },
    })
}
