//! Rational divisors on the projective line: floors, the denominator-only
//! fractional part `E'`, section dimensions and the socle-degree heuristic.
//!
//! Everything on `P^1` is determined by degrees, so no sheaf computations are
//! involved; points are opaque labels.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::family::instance::{Characteristic, PaperInstance};
use crate::family::report::{Verdict, VerificationReport, Witness, QUOTIENT_HILBERT};
use crate::family::{quotient_S_ideal, verify::finish};
use crate::groebner::Engine;

/// The conventional labels for `V(X)`, `V(Y)` and `V(X+Y)`.
pub const VX: &str = "VX";
pub const VY: &str = "VY";
pub const VXY: &str = "VXY";

/// A finite formal sum `sum c_i P_i` with exact rational coefficients.
/// Entries keep their first-seen order; zero coefficients are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QDivisor {
    entries: Vec<(String, BigRational)>,
}

/// Degree of the floor and the cohomology it determines on `P^1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClassData {
    pub floor_degree: i64,
    pub h0: u64,
    pub h1: u64,
}

/// `deg p(K + E')` and `h^1` of its floor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleHeuristic {
    pub degree: String,
    pub h1: u64,
}

fn valid_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn floor_int(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

fn small(v: &BigInt) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::InvalidArgument(format!("degree {v} does not fit in 64 bits")))
}

impl QDivisor {
    pub fn zero() -> Self {
        QDivisor::default()
    }

    /// Builds a divisor, merging repeated labels.
    pub fn new<S: Into<String>>(entries: impl IntoIterator<Item = (S, BigRational)>) -> Result<Self> {
        let mut d = QDivisor::zero();
        for (label, c) in entries {
            let label = label.into();
            if !valid_label(&label) {
                return Err(Error::InvalidArgument(format!("invalid point label `{label}`")));
            }
            d.add_at(label, c);
        }
        Ok(d)
    }

    /// `1/2 V(X) + 1/2 V(Y) + 1/(2n) V(X+Y)`.
    pub fn standard(n: u32) -> Self {
        let half = BigRational::new(1.into(), 2.into());
        QDivisor::new([
            (VX, half.clone()),
            (VY, half),
            (VXY, BigRational::new(1.into(), (2 * n as i64).into())),
        ])
        .expect("fixed labels are valid")
    }

    fn add_at(&mut self, label: String, c: BigRational) {
        match self.entries.iter().position(|(l, _)| *l == label) {
            Some(i) => {
                self.entries[i].1 += c;
                if self.entries[i].1.is_zero() {
                    self.entries.remove(i);
                }
            }
            None if !c.is_zero() => self.entries.push((label, c)),
            None => {}
        }
    }

    pub fn entries(&self) -> &[(String, BigRational)] {
        &self.entries
    }

    pub fn coefficient(&self, label: &str) -> BigRational {
        self.entries
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|(_, c)| c.is_integer())
    }

    pub fn degree(&self) -> BigRational {
        self.entries.iter().map(|(_, c)| c.clone()).sum()
    }

    fn map(&self, f: impl Fn(&BigRational) -> BigRational) -> QDivisor {
        let mut d = QDivisor::zero();
        for (l, c) in &self.entries {
            d.add_at(l.clone(), f(c));
        }
        d
    }

    pub fn scale(&self, k: &BigRational) -> QDivisor {
        self.map(|c| c * k)
    }

    pub fn add(&self, other: &QDivisor) -> QDivisor {
        let mut d = self.clone();
        for (l, c) in &other.entries {
            d.add_at(l.clone(), c.clone());
        }
        d
    }

    pub fn neg(&self) -> QDivisor {
        self.map(|c| -c)
    }

    /// `[D]`: the pointwise floor.
    pub fn floor(&self) -> QDivisor {
        self.map(|c| c.floor())
    }

    /// `E' = sum (q_i - 1)/q_i P_i` for reduced coefficients `p_i/q_i`.
    /// Depends only on the denominators.
    pub fn fractional_part_paper(&self) -> QDivisor {
        self.map(|c| {
            let q = c.denom().clone();
            BigRational::new(&q - BigInt::one(), q)
        })
    }

    pub fn floor_degree(&self) -> Result<i64> {
        let total: BigInt = self.entries.iter().map(|(_, c)| floor_int(c)).sum();
        small(&total)
    }

    pub fn h0(&self) -> Result<u64> {
        Ok((self.floor_degree()? + 1).max(0) as u64)
    }

    pub fn h1(&self) -> Result<u64> {
        Ok((-self.floor_degree()? - 1).max(0) as u64)
    }

    pub fn class_data(&self) -> Result<DivisorClassData> {
        Ok(DivisorClassData {
            floor_degree: self.floor_degree()?,
            h0: self.h0()?,
            h1: self.h1()?,
        })
    }
}

/// `h^0(iE)` for `i = 0..=up_to`; `E` must have positive degree.
pub fn section_dims(e: &QDivisor, up_to: u64) -> Result<Vec<u64>> {
    if !e.degree().is_positive() {
        return Err(Error::Precondition(format!("{e} has degree {} and is not ample", e.degree())));
    }
    (0..=up_to)
        .map(|i| e.scale(&BigRational::from_integer(i.into())).h0())
        .collect()
}

/// `-[-nE] = [nE + E']` at every point, for each `n` in `range`.
pub fn floor_identity_check(e: &QDivisor, range: std::ops::RangeInclusive<i64>) -> bool {
    let frac = e.fractional_part_paper();
    range.into_iter().all(|n| {
        let ne = e.scale(&BigRational::from_integer(n.into()));
        ne.neg().floor().neg() == ne.add(&frac).floor()
    })
}

/// The socle-degree numbers for `p(K + E')` with `K = -2 P` for a point `P`
/// outside the support. Reports numbers only; this is not an F-purity test.
pub fn fpurity_degree_heuristic(e: &QDivisor, p: u64) -> Result<SocleHeuristic> {
    let mut base = "K".to_string();
    while e.entries.iter().any(|(l, _)| *l == base) {
        base.push('_');
    }
    let p_rat = BigRational::from_integer(p.into());
    let canonical = QDivisor::new([(base, BigRational::from_integer((-2).into()))])?;
    let d = canonical.add(&e.fractional_part_paper()).scale(&p_rat);
    Ok(SocleHeuristic {
        degree: d.degree().to_string(),
        h1: d.h1()?,
    })
}

/// Compares `h^0(iE)` for the standard divisor with the Hilbert function of
/// `K[a,b,c,d]/J` up to degree `up_to`.
pub fn hilbert_crosscheck(engine: &Engine, n: u32, p: Characteristic, up_to: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let engine = engine.fork();
    let e = QDivisor::standard(n);
    let sections = section_dims(&e, up_to)?;
    let hilbert = engine.hilbert_function(&quotient_S_ideal(n, p.field()?)?, up_to)?;
    let equal = sections == hilbert;
    let w = Witness::HilbertComparison {
        divisor: e.to_string(),
        sections,
        hilbert,
        equal,
    };
    let verdict = if equal { Verdict::Verified } else { Verdict::Refuted };
    Ok(finish(
        QUOTIENT_HILBERT,
        PaperInstance::quotient(p, n),
        verdict,
        vec![w],
        Vec::new(),
        &engine,
        start,
    ))
}

impl fmt::Display for QDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (i, (l, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}@{l}")?;
        }
        Ok(())
    }
}

impl FromStr for QDivisor {
    type Err = Error;

    /// `coeff@label` entries separated by commas; `0` or blank is the zero divisor.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(QDivisor::zero());
        }
        let mut entries = Vec::new();
        let mut seen = Vec::new();
        let mut pos = 0;
        for part in s.split(',') {
            let syntax = |msg: String| Error::Syntax { pos, msg };
            let (c, l) = part
                .split_once('@')
                .ok_or_else(|| syntax(format!("expected `coeff@label`, got `{}`", part.trim())))?;
            let (c, l) = (c.trim(), l.trim());
            let coeff = BigRational::from_str(&c.replace(' ', ""))
                .map_err(|_| syntax(format!("invalid rational literal `{c}`")))?;
            if !valid_label(l) {
                return Err(syntax(format!("invalid point label `{l}`")));
            }
            if seen.contains(&l) {
                return Err(syntax(format!("point `{l}` appears twice")));
            }
            seen.push(l);
            entries.push((l.to_string(), coeff));
            pos += part.len() + 1;
        }
        QDivisor::new(entries)
    }
}

impl Serialize for QDivisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QDivisor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
