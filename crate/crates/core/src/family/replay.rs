//! Replays the division chain behind the key containment, over the rationals,
//! with every step an explicit polynomial identity.

use std::collections::HashMap;
use std::time::Instant;

use num_rational::BigRational;

use crate::algebra::{CoefficientField, MonomialOrder, Polynomial, Ring, RingSignature};
use crate::error::Result;
use crate::family::constructors::{matrix_ideal, two_by_two_minors};
use crate::family::instance::{check_k, family_margin, Characteristic, PaperInstance};
use crate::family::report::{ReplayStep, Verdict, VerificationReport, Witness, LEMMA_REPLAY};
use crate::family::verify::finish;
use crate::groebner::Engine;

struct Chain {
    ring: Ring,
    tau: Polynomial,
    alpha: Polynomial,
    b: Polynomial,
    c: Polynomial,
    d: Polynomial,
    /// `tau (B^n - D) - D C`, equal to `B^n tau - D (C + tau)`.
    m2: Polynomial,
    /// `B (B^n - D) - D alpha`.
    m3: Polynomial,
    minors: Vec<Polynomial>,
}

impl Chain {
    fn new(m: u32, n: u32) -> Result<Chain> {
        let w = 2 * m;
        let ring = RingSignature::new(
            &["tau", "alpha", "b", "c", "d"],
            &[w, w, w, w, w * n],
            CoefficientField::Rationals,
        )?;
        let v = |i| Polynomial::var(&ring, i);
        let (tau, alpha, b, c, d) = (v(0), v(1), v(2), v(3), v(4));
        let corner = b.pow(n as u64)?.try_sub(&d)?;
        let minors = two_by_two_minors([[&tau, &b, &d], [&c, &alpha, &corner]])?;
        Ok(Chain {
            m2: minors[1].clone(),
            m3: minors[2].clone(),
            minors,
            ring,
            tau,
            alpha,
            b,
            c,
            d,
        })
    }

    fn divides(&self, divisor: &Polynomial, f: &Polynomial) -> Result<bool> {
        Ok(f.div_exact(divisor)?.is_some())
    }
}

/// Checks that substituting `tau = a^2 + t^m`, `alpha = a^2` carries the
/// minors onto the generators of `I_{m,n}`, that the key element's power
/// factors as `B^{n(2mk+1)} (tau - alpha)^{2k(m-1)} t^(m-1)`, and that
/// `alpha^{mk+1}` lands in `(a^{2mk+1})`.
fn pullback(chain: &Chain, m: u32, n: u32, k: u32) -> Result<bool> {
    let target = matrix_ideal(m, n, CoefficientField::Rationals)?;
    let ring = target.ring();
    let v = |i| Polynomial::var(ring, i);
    let (a, b, c, d, t) = (v(0), v(1), v(2), v(3), v(4));
    let a2 = a.pow(2)?;
    let images = [a2.try_add(&t.pow(m as u64)?)?, a2.clone(), b.clone(), c, d];
    for (minor, g) in chain.minors.iter().zip(target.generators()) {
        if &minor.substitute(&images)? != g {
            return Ok(false);
        }
    }
    let (m64, n64, k64) = (m as u64, n as u64, k as u64);
    let q = 2 * m64 * k64 + 1;
    if (m64 - 1) * q != 2 * k64 * (m64 - 1) * m64 + (m64 - 1) {
        return Ok(false);
    }
    let lhs = b.pow(n64)?.try_mul(&t.pow(m64 - 1)?)?.pow(q)?;
    let diff = chain.tau.try_sub(&chain.alpha)?.pow(2 * k64 * (m64 - 1))?;
    let rhs = b
        .pow(n64 * q)?
        .try_mul(&diff.substitute(&images)?)?
        .try_mul(&t.pow(m64 - 1)?)?;
    if lhs != rhs {
        return Ok(false);
    }
    let alpha_power = chain.alpha.pow(m64 * k64 + 1)?.substitute(&images)?;
    Ok(alpha_power.div_exact(&a.pow(q)?)?.is_some())
}

/// The binomial terms of `(tau - alpha)^{2k(m-1)}` with `alpha`-exponent at
/// most `mk` are `± binom * alpha^{mk+1-i} tau^{mk-2k+i-1}`, and the rest is a
/// multiple of `alpha^{mk+1}`.
fn binomial(chain: &Chain, m: u32, k: u32) -> Result<bool> {
    let (m, k) = (m as u64, k as u64);
    let full = chain.tau.try_sub(&chain.alpha)?.pow(2 * k * (m - 1))?;
    let low: Vec<_> = full
        .terms()
        .iter()
        .filter(|(mono, _)| mono.exponents()[1] as u64 <= m * k)
        .cloned()
        .collect();
    for (mono, _) in &low {
        let s = mono.exponents()[1] as u64;
        let i = m * k + 1 - s;
        if mono.exponents()[0] as u64 != m * k - 2 * k + i - 1 {
            return Ok(false);
        }
    }
    if low.len() as u64 != m * k + 1 {
        return Ok(false);
    }
    let high = full.try_sub(&Polynomial::from_terms(&chain.ring, low))?;
    chain.divides(&chain.alpha.pow(m * k + 1)?, &high)
}

fn step(
    chain: &Chain,
    m: u32,
    n: u32,
    k: u32,
    i: u32,
    cache: &mut HashMap<u64, bool>,
) -> Result<ReplayStep> {
    let (m64, n64, k64, i64_) = (m as u64, n as u64, k as u64, i as u64);
    let top = 2 * m64 * k64 + 1;
    let tau_exponent = m * k - 2 * k + i - 1;
    let corner = chain.b.pow(n64)?.try_sub(&chain.d)?;

    let reduced = chain.b.pow(i64_)?.try_mul(&corner.pow(i64_)?)?;
    let alpha_form = chain.alpha.pow(i64_)?.try_mul(&chain.d.pow(i64_)?)?;
    let minor_reduction = chain.divides(&chain.m3, &reduced.try_sub(&alpha_form)?)?;

    let dividend = chain.b.pow(n64 * top)?;
    let (quot, rem) = dividend.div_rem(&reduced, &MonomialOrder::Lex)?;
    let mut remainder_identity = quot.try_mul(&reduced)?.try_add(&rem)? == dividend;
    let mut exps = Vec::new();
    for (mono, _) in rem.terms() {
        let e = mono.exponents();
        let (eb, ed) = (e[2] as u64, e[4] as u64);
        let shaped = e[0] == 0 && e[1] == 0 && e[3] == 0 && ed <= top && eb == n64 * (top - ed);
        remainder_identity &= shaped && eb < i64_ * (n64 + 1);
        exps.push(ed as u32);
    }
    exps.sort_unstable();

    let mut final_divisions = true;
    let mut min_slack: Option<i64> = None;
    for &j in &exps {
        let s = top as i64 - j as i64;
        let slack = tau_exponent as i64 - s;
        min_slack = Some(min_slack.map_or(slack, |v| v.min(slack)));
        if s <= 0 {
            continue;
        }
        if slack < 0 {
            final_divisions = false;
            continue;
        }
        let s = s as u64;
        let ok = match cache.get(&s) {
            Some(&ok) => ok,
            None => {
                let x = chain.b.pow(n64)?.try_mul(&chain.tau)?;
                let y = chain.d.try_mul(&chain.c.try_add(&chain.tau)?)?;
                let ok = chain.m2 == x.try_sub(&y)? && chain.divides(&chain.m2, &x.pow(s)?.try_sub(&y.pow(s)?)?)?;
                cache.insert(s, ok);
                ok
            }
        };
        final_divisions &= ok;
    }
    Ok(ReplayStep {
        i,
        tau_exponent,
        minor_reduction,
        remainder_d_exponents: exps,
        remainder_identity,
        final_divisions,
        min_slack,
    })
}

/// The smallest `j - mk - 2k + i - 2` over `1 <= i <= mk+1` and
/// `2mk + (1-i)(1+1/n) <= j <= 2mk+1`, whether every value is at least
/// `k(m - m/n - 2) - 1`, and the number of pairs.
fn admissible_slack(m: u32, n: u32, k: u32) -> (i64, bool, u64) {
    let (m, n, k) = (m as i64, n as i64, k as i64);
    let bound = BigRational::from_integer(k.into()) * family_margin(m as u32, n as u32) - BigRational::from_integer(1.into());
    let top = 2 * m * k + 1;
    let mut min = i64::MAX;
    let mut all = true;
    let mut count = 0;
    for i in 1..=m * k + 1 {
        // n(2mk+1-j) < i(n+1)
        let j_min = (n * top - i * (n + 1)).div_euclid(n) + 1;
        for j in j_min.max(0)..=top {
            let slack = j - m * k - 2 * k + i - 2;
            all &= BigRational::from_integer(slack.into()) >= bound;
            min = min.min(slack);
            count += 1;
        }
    }
    (min, all, count)
}

/// Replays the proof of the key containment at `(m, n, k)` over the rationals.
pub fn replay_key_lemma_proof(engine: &Engine, m: u32, n: u32, k: u32) -> Result<VerificationReport> {
    check_k(m, n, k)?;
    let start = Instant::now();
    let engine = engine.fork();
    let chain = Chain::new(m, n)?;
    let pullback = pullback(&chain, m, n, k)?;
    let binomial = binomial(&chain, m, k)?;
    let mut cache = HashMap::new();
    let steps = (1..=m * k + 1)
        .map(|i| step(&chain, m, n, k, i, &mut cache))
        .collect::<Result<Vec<_>>>()?;
    let (admissible_min_slack, above_bound, admissible_pairs) = admissible_slack(m, n, k);
    let bound = BigRational::from_integer((k as i64).into()) * family_margin(m, n) - BigRational::from_integer(1.into());

    let steps_ok = steps
        .iter()
        .all(|s| s.minor_reduction && s.remainder_identity && s.final_divisions && s.min_slack.is_some_and(|v| v >= 0));
    let ok = pullback && binomial && steps_ok && above_bound && admissible_min_slack >= 0;
    let verdict = if ok { Verdict::Verified } else { Verdict::Refuted };
    let witness = Witness::KeyLemmaReplay {
        pullback,
        binomial,
        steps,
        slack_bound: bound.to_string(),
        admissible_min_slack,
        admissible_pairs,
    };
    let inst = PaperInstance::new(Characteristic::Rational, m, n, Some(k));
    Ok(finish(LEMMA_REPLAY, inst, verdict, vec![witness], Vec::new(), &engine, start))
}
