//! Frobenius-theoretic tests: bracket powers, Frobenius and tight closure
//! witnesses, Fedder's F-purity criterion, Glassbrenner's criterion for
//! hypersurfaces, and Jacobian ideals.

use serde::{Deserialize, Serialize};

use crate::algebra::{CoefficientField, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{Engine, Ideal};

/// Default search bound for Frobenius exponents.
pub const DEFAULT_E_MAX: u32 = 4;

const R_CIRC_NOTE: &str = "multiplier checked nonzero in the quotient only; \
    avoiding every minimal prime is assumed from the ring being a domain";

const IRREDUCIBLE_NOTE: &str = "the hypersurface is assumed irreducible; this is not checked";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum WitnessKind {
    /// `x^q ∈ I^[q]` with `q = p^e`.
    FrobeniusClosure { e: u32, q: u64 },
    /// `c * x^q ∈ I^[q]` for each listed `q`.
    TightClosure { multiplier: String, exponents: Vec<u64> },
    /// `c * f^(q-1)` has the recorded monomial outside `m^[q]`.
    HypersurfaceSplitting { e: u32, q: u64, monomial: String },
    /// Nothing found for `e <= e_max`; not a disproof.
    NoneUpTo { e_max: u32 },
    /// A tight-closure containment failed at this `q`.
    Failed { q: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentCheck {
    pub q: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusWitness {
    pub kind: WitnessKind,
    pub instance: String,
    pub checks: Vec<ExponentCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl FrobeniusWitness {
    pub fn found(&self) -> bool {
        matches!(
            self.kind,
            WitnessKind::FrobeniusClosure { .. }
                | WitnessKind::TightClosure { .. }
                | WitnessKind::HypersurfaceSplitting { .. }
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Purity {
    #[serde(rename = "F-pure")]
    FPure,
    #[serde(rename = "not-F-pure")]
    NotFPure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PurityVerdict {
    pub p: u64,
    pub verdict: Purity,
    /// Generator of `(I^[p] : I)` outside `m^[p]`, when F-pure.
    pub certificate: Option<String>,
    /// Generators of the colon examined (all of degree at most `degree_bound`).
    pub colon_generators: Vec<String>,
    /// `(p-1) * sum of weights`: colon elements above this degree lie in `m^[p]`.
    pub degree_bound: u64,
}

fn characteristic(field: &CoefficientField, what: &str) -> Result<u64> {
    match field.characteristic() {
        0 => Err(Error::CharacteristicZero(what.to_string())),
        p => Ok(p as u64),
    }
}

/// `e` with `q = p^e`, or an error.
pub fn frobenius_exponent(field: &CoefficientField, q: u64) -> Result<u32> {
    let p = characteristic(field, "Frobenius powers")?;
    let (mut x, mut e) = (q, 0);
    while x > 1 && x % p == 0 {
        x /= p;
        e += 1;
    }
    if x != 1 {
        return Err(Error::InvalidArgument(format!("{q} is not a power of {p}")));
    }
    Ok(e)
}

/// `I^[q]`: the ideal generated by `q`-th powers of the generators.
pub fn frobenius_power(ideal: &Ideal, q: u64) -> Result<Ideal> {
    frobenius_exponent(ideal.ring().field(), q)?;
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.frobenius_twist(q))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ideal.ring(), gens)
}

fn describe(x: &Polynomial, ideal: &Ideal, modulus: &Ideal) -> String {
    format!("{x} over {ideal} modulo {modulus} in {}", ideal.ring())
}

fn power_in(engine: &Engine, c: &Polynomial, x: &Polynomial, q: u64, ideal: &Ideal, modulus: &Ideal) -> Result<bool> {
    let target = frobenius_power(ideal, q)?.sum(modulus)?;
    let xq = x.frobenius_twist(q)?;
    engine.ideal_member(&c.try_mul(&xq)?, &target)
}

/// Smallest `e <= e_max` with `x^(p^e) ∈ I^[p^e] + I0`.
pub fn frobenius_closure_member(
    engine: &Engine,
    x: &Polynomial,
    ideal: &Ideal,
    modulus: &Ideal,
    e_max: u32,
) -> Result<FrobeniusWitness> {
    let ring = ideal.ring();
    if modulus.ring() != ring || x.ring() != ring {
        return Err(Error::RingMismatch);
    }
    let p = characteristic(ring.field(), "Frobenius closure")?;
    let one = Polynomial::one(ring);
    let mut checks = Vec::new();
    let mut q = 1u64;
    for e in 0..=e_max {
        let holds = power_in(engine, &one, x, q, ideal, modulus)?;
        checks.push(ExponentCheck { q, holds });
        if holds {
            return Ok(FrobeniusWitness {
                kind: WitnessKind::FrobeniusClosure { e, q },
                instance: describe(x, ideal, modulus),
                checks,
                note: None,
            });
        }
        q = q.checked_mul(p).ok_or(Error::ExponentLimit(q))?;
    }
    Ok(FrobeniusWitness {
        kind: WitnessKind::NoneUpTo { e_max },
        instance: describe(x, ideal, modulus),
        checks,
        note: Some("no exponent found; this does not show non-membership".into()),
    })
}

/// Checks `c * x^q ∈ I^[q] + I0` for every listed `q`.
pub fn tight_closure_witness_check(
    engine: &Engine,
    x: &Polynomial,
    ideal: &Ideal,
    modulus: &Ideal,
    c: &Polynomial,
    exponents: &[u64],
) -> Result<FrobeniusWitness> {
    let ring = ideal.ring();
    if modulus.ring() != ring || x.ring() != ring || c.ring() != ring {
        return Err(Error::RingMismatch);
    }
    characteristic(ring.field(), "tight closure")?;
    for &q in exponents {
        frobenius_exponent(ring.field(), q)?;
    }
    if engine.ideal_member(c, modulus)? {
        return Err(Error::Precondition(format!("multiplier {c} is zero in the quotient")));
    }
    let mut checks = Vec::new();
    for &q in exponents {
        let holds = power_in(engine, c, x, q, ideal, modulus)?;
        checks.push(ExponentCheck { q, holds });
    }
    let kind = match checks.iter().find(|ch| !ch.holds) {
        Some(ch) => WitnessKind::Failed { q: ch.q },
        None => WitnessKind::TightClosure {
            multiplier: c.to_string(),
            exponents: exponents.to_vec(),
        },
    };
    Ok(FrobeniusWitness {
        kind,
        instance: describe(x, ideal, modulus),
        checks,
        note: Some(R_CIRC_NOTE.into()),
    })
}

/// Fedder's criterion at the homogeneous maximal ideal: `R/I0` is F-pure iff
/// `(I0^[p] : I0)` is not contained in `m^[p]`.
pub fn fedder_fpurity(engine: &Engine, modulus: &Ideal) -> Result<PurityVerdict> {
    let ring = modulus.ring();
    let p = characteristic(ring.field(), "Fedder's criterion")?;
    if !ring.has_positive_weights() || !modulus.is_homogeneous() {
        return Err(Error::NotHomogeneous(modulus.to_string()));
    }
    let bound = (p - 1) * ring.weights().iter().map(|&w| w as u64).sum::<u64>();
    if modulus.is_zero() {
        return Ok(PurityVerdict {
            p,
            verdict: Purity::FPure,
            certificate: Some("1".into()),
            colon_generators: vec!["1".into()],
            degree_bound: bound,
        });
    }
    if engine.ideal_member(&Polynomial::one(ring), modulus)? {
        return Err(Error::UnitIdeal(modulus.to_string()));
    }
    let bracket = frobenius_power(modulus, p)?;
    let colon = engine.colon_by_ideal(&bracket, modulus, Some(bound))?;
    let certificate = colon
        .generators()
        .iter()
        .find(|g| g.term_outside_bracket_power(p).is_some())
        .map(ToString::to_string);
    Ok(PurityVerdict {
        p,
        verdict: if certificate.is_some() { Purity::FPure } else { Purity::NotFPure },
        certificate,
        colon_generators: colon.generator_strings(),
        degree_bound: bound,
    })
}

/// The Jacobian ideal of a hypersurface together with `f` itself.
fn jacobian_with(f: &Polynomial) -> Result<Ideal> {
    let mut gens: Vec<Polynomial> = (0..f.ring().nvars()).map(|i| f.derivative(i)).collect();
    gens.push(f.clone());
    Ideal::new(f.ring(), gens)
}

/// Whether `c ∈ √(Jac(f) + (f))`, i.e. `f = 0` is regular away from `c = 0`.
pub fn validate_localization(engine: &Engine, f: &Polynomial, c: &Polynomial) -> Result<bool> {
    if f.ring() != c.ring() {
        return Err(Error::RingMismatch);
    }
    engine.radical_member(c, &jacobian_with(f)?)
}

/// Glassbrenner's criterion for `R = S/(f)`: strongly F-regular if some
/// `c * f^(q-1)` escapes `m^[q]`, where `c` cuts out a locus containing the
/// non-regular points. Searches `e = 1..=e_max`.
pub fn glassbrenner_hypersurface(engine: &Engine, f: &Polynomial, c: &Polynomial, e_max: u32) -> Result<FrobeniusWitness> {
    let ring = f.ring();
    if c.ring() != ring {
        return Err(Error::RingMismatch);
    }
    let p = characteristic(ring.field(), "Glassbrenner's criterion")?;
    if c.is_zero() || f.is_zero() {
        return Err(Error::InvalidArgument("f and c must be nonzero".into()));
    }
    if !validate_localization(engine, f, c)? {
        return Err(Error::Precondition(format!(
            "{c} does not vanish on the singular locus of {f} = 0"
        )));
    }
    let instance = format!("{f} with multiplier {c} in {ring}");
    let base = f.pow(p - 1)?;
    // f^(p^e - 1) = f^(p^(e-1) - 1) * (f^(p-1))^[p^(e-1)]
    let mut power = Polynomial::one(ring);
    let mut q = 1u64;
    let mut checks = Vec::new();
    for e in 1..=e_max {
        power = power.try_mul(&base.frobenius_twist(q)?)?;
        q = q.checked_mul(p).ok_or(Error::ExponentLimit(q))?;
        let prod = c.try_mul(&power)?;
        let hit = prod.term_outside_bracket_power(q).cloned();
        checks.push(ExponentCheck { q, holds: hit.is_some() });
        if let Some(m) = hit {
            let monomial = Polynomial::monomial(ring, m.exponents())?.to_string();
            return Ok(FrobeniusWitness {
                kind: WitnessKind::HypersurfaceSplitting { e, q, monomial },
                instance,
                checks,
                note: Some(IRREDUCIBLE_NOTE.into()),
            });
        }
    }
    Ok(FrobeniusWitness {
        kind: WitnessKind::NoneUpTo { e_max },
        instance,
        checks,
        note: Some("no exponent found; this is inconclusive".into()),
    })
}

fn determinant(m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = m.len();
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let ring = m[0][0].ring();
    let mut acc = Polynomial::zero(ring);
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = entry.try_mul(&determinant(&minor)?)?;
        acc = if j % 2 == 0 { acc.try_add(&term)? } else { acc.try_sub(&term)? };
    }
    Ok(acc)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `I` plus the `height x height` minors of the Jacobian matrix of its generators.
pub fn singular_locus_ideal(ideal: &Ideal, height: usize) -> Result<Ideal> {
    let gens = ideal.generators();
    let n = ideal.ring().nvars();
    if height == 0 || height > gens.len().min(n) {
        return Err(Error::InvalidArgument(format!(
            "height {height} out of range for {} generators in {n} variables",
            gens.len()
        )));
    }
    let jac: Vec<Vec<Polynomial>> = gens.iter().map(|g| (0..n).map(|i| g.derivative(i)).collect()).collect();
    let mut minors = Vec::new();
    for rows in subsets(gens.len(), height) {
        for cols in subsets(n, height) {
            let sub: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect())
                .collect();
            minors.push(determinant(&sub)?);
        }
    }
    ideal.with_generators(&minors)
}

/// `√I = √J`.
pub fn radical_equal(engine: &Engine, a: &Ideal, b: &Ideal) -> Result<bool> {
    engine.radical_equal(a, b)
}
