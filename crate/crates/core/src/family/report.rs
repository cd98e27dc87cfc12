use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{CoefficientField, Ring, RingSignature};
use crate::error::{Error, Result};
use crate::family::instance::PaperInstance;
use crate::fsing::{FrobeniusWitness, PurityVerdict};
use crate::groebner::{EngineStats, Ideal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Refuted,
    Inconclusive,
}

impl Verdict {
    /// Refuted beats inconclusive beats verified.
    pub fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Refuted, _) | (_, Refuted) => Refuted,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Verified,
        }
    }

    pub fn all<I: IntoIterator<Item = Verdict>>(it: I) -> Verdict {
        it.into_iter().fold(Verdict::Verified, Verdict::combine)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Enough of a ring signature to rebuild it and re-parse polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub variables: Vec<String>,
    pub weights: Vec<u32>,
    /// `0` for the rationals.
    pub characteristic: u32,
}

impl RingDescriptor {
    pub fn of(ring: &Ring) -> Self {
        RingDescriptor {
            variables: ring.names().to_vec(),
            weights: ring.weights().to_vec(),
            characteristic: ring.field().characteristic(),
        }
    }

    pub fn to_ring(&self) -> Result<Ring> {
        let field = match self.characteristic {
            0 => CoefficientField::Rationals,
            p => CoefficientField::prime(p as u64)?,
        };
        RingSignature::new(&self.variables, &self.weights, field)
    }
}

/// An ideal written out as generator strings in a described ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealText {
    pub ring: RingDescriptor,
    pub generators: Vec<String>,
}

impl IdealText {
    pub fn of(ideal: &Ideal) -> Self {
        IdealText {
            ring: RingDescriptor::of(ideal.ring()),
            generators: ideal.generator_strings(),
        }
    }

    pub fn to_ideal(&self) -> Result<Ideal> {
        Ideal::parse(&self.ring.to_ring()?, &self.generators)
    }
}

/// One exponent of the tight-closure window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowEntry {
    pub q: u64,
    /// Whether `q = 2mk + delta` with `-2m+2 <= delta <= 1` for an admissible `k`.
    pub asserted: bool,
    pub holds: bool,
}

/// The chain of one summand `i` in the key-lemma replay.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayStep {
    pub i: u32,
    pub tau_exponent: u32,
    /// `B^i (B^n - D)^i - alpha^i D^i` divisible by `B(B^n - D) - alpha D`.
    pub minor_reduction: bool,
    /// Exponents `j` of `D` in the remainder of `B^{n(2mk+1)}` modulo `B^i (B^n - D)^i`.
    pub remainder_d_exponents: Vec<u32>,
    pub remainder_identity: bool,
    /// Per remainder term, `x^s - y^s` divisible by `x - y` for `x = B^n tau`, `y = D(C + tau)`.
    pub final_divisions: bool,
    /// Smallest `(mk - 2k + i - 1) - (2mk + 1 - j)` over the remainder terms.
    pub min_slack: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    /// `element ∈ ideal` (or not), decided by a Groebner basis.
    Membership {
        label: String,
        element: String,
        ideal: IdealText,
        member: bool,
        expected: bool,
    },
    Dimension {
        label: String,
        ideal: IdealText,
        dimension: usize,
        expected: usize,
    },
    IdealEquality {
        label: String,
        left: IdealText,
        right: IdealText,
        /// `true` for equality of radicals.
        radical: bool,
        equal: bool,
    },
    Purity(PurityVerdict),
    Frobenius {
        label: String,
        witness: FrobeniusWitness,
    },
    TightClosureWindow {
        element: String,
        multiplier: String,
        window: u64,
        entries: Vec<WindowEntry>,
        witness: FrobeniusWitness,
    },
    Localization {
        f: String,
        c: String,
        holds: bool,
    },
    Presentation {
        kernel: IdealText,
        target: IdealText,
        equal: bool,
        substitution_vanishes: bool,
    },
    KeyLemmaReplay {
        pullback: bool,
        binomial: bool,
        steps: Vec<ReplayStep>,
        /// `k(m - m/n - 2) - 1` as an exact rational.
        slack_bound: String,
        /// Smallest slack over all admissible `(i, j)`.
        admissible_min_slack: i64,
        admissible_pairs: u64,
    },
    HilbertComparison {
        divisor: String,
        sections: Vec<u64>,
        hilbert: Vec<u64>,
        equal: bool,
    },
    /// A step taken from the literature rather than computed.
    Citation { statement: String },
    Skipped { label: String, reason: String },
    Rejected { p: u64, reason: String },
    SubReport(Box<VerificationReport>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub wall_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub instance: PaperInstance,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub stats: EngineStats,
    pub timings: Timings,
}

impl VerificationReport {
    /// The report with timings zeroed, for determinism comparisons.
    pub fn without_timings(&self) -> VerificationReport {
        let mut r = self.clone();
        r.timings = Timings::default();
        for w in &mut r.witnesses {
            if let Witness::SubReport(sub) = w {
                **sub = sub.without_timings();
            }
        }
        r
    }

    /// Turns a refuted verdict into an error.
    pub fn into_result(self) -> Result<VerificationReport> {
        if self.verdict == Verdict::Refuted {
            return Err(Error::Refuted(format!("{} at {}", self.claim, self.instance)));
        }
        Ok(self)
    }
}

/// Catalog entry for a verifiable claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimInfo {
    pub id: &'static str,
    pub statement: &'static str,
    pub parameters: &'static str,
}

pub const LEMMA: &str = "lemma-4.2";
pub const LEMMA_REPLAY: &str = "lemma-4.2-replay";
pub const QUOTIENT_FREGULAR: &str = "prop-4.3-quotient-fregular";
pub const QUOTIENT_HILBERT: &str = "prop-4.3-hilbert";
pub const NOT_FPURE: &str = "prop-4.4-not-fpure";
pub const NOT_FREGULAR: &str = "prop-4.4-not-fregular";
pub const HSOP: &str = "rem-4.1-hsop";
pub const NZD: &str = "rem-4.1-nzd";
pub const SINGULAR_LOCUS: &str = "sec6-singular-locus";
pub const BUNDLE: &str = "thm-1.1-bundle";
pub const SWEEP: &str = "sec5-sweep";

pub const CLAIMS: &[ClaimInfo] = &[
    ClaimInfo {
        id: LEMMA,
        statement: "(b^n t^(m-1))^(2mk+1) lies in (a^(2mk+1), d^(2mk+1)) + I_{m,n}",
        parameters: "--p --m --n --k",
    },
    ClaimInfo {
        id: LEMMA_REPLAY,
        statement: "the division chain proving the key containment replays exactly over Q",
        parameters: "--m --n --k",
    },
    ClaimInfo {
        id: QUOTIENT_FREGULAR,
        statement: "S = K[A,B,C,D]/J is F-regular: Veronese summand of an F-regular hypersurface",
        parameters: "--p --n [--e-max]",
    },
    ClaimInfo {
        id: QUOTIENT_HILBERT,
        statement: "the Hilbert function of S equals h0(iE) for E = 1/2 V(X) + 1/2 V(Y) + 1/(2n) V(X+Y)",
        parameters: "--n [--up-to]",
    },
    ClaimInfo {
        id: NOT_FPURE,
        statement: "R_{m,n} is not F-pure when p > 2 and gcd(p, m) = 1",
        parameters: "--p --m --n",
    },
    ClaimInfo {
        id: NOT_FREGULAR,
        statement: "b^n t^(m-1) is in the tight closure of (a, d) but not in (a, d)",
        parameters: "--p --m --n [--q-window]",
    },
    ClaimInfo {
        id: HSOP,
        statement: "R_{m,n} has dimension 3 and t, c, d form a homogeneous system of parameters",
        parameters: "--p --m --n",
    },
    ClaimInfo {
        id: NZD,
        statement: "t is a nonzerodivisor on R_{m,n}: (I : t) = I",
        parameters: "--p --m --n",
    },
    ClaimInfo {
        id: SINGULAR_LOCUS,
        statement: "the singular locus of R_{m,n} is V(a, b, c(c + t^m), d)",
        parameters: "--p --m --n",
    },
    ClaimInfo {
        id: BUNDLE,
        statement: "R/tR is F-regular while R is not F-regular (and not F-pure when gcd(p, m) = 1)",
        parameters: "--p --m --n [--k]",
    },
    ClaimInfo {
        id: SWEEP,
        statement: "over a range of primes the fibers are not F-pure and the quotients are F-regular",
        parameters: "--m --n --primes",
    },
];

/// Looks up a claim id; `thm-1.1` is accepted for the bundle.
pub fn claim_info(id: &str) -> Option<&'static ClaimInfo> {
    let id = if id == "thm-1.1" { BUNDLE } else { id };
    CLAIMS.iter().find(|c| c.id == id)
}
