use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::CoefficientField;
use crate::error::{Error, Result};

/// Coefficient field of an instance: `F_p` or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Characteristic {
    Prime(u64),
    Rational,
}

impl Characteristic {
    pub fn field(&self) -> Result<CoefficientField> {
        match self {
            Characteristic::Prime(p) => CoefficientField::prime(*p),
            Characteristic::Rational => Ok(CoefficientField::Rationals),
        }
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            Characteristic::Prime(p) => Some(*p),
            Characteristic::Rational => None,
        }
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Characteristic::Prime(p) => write!(f, "{p}"),
            Characteristic::Rational => write!(f, "rational"),
        }
    }
}

impl Serialize for Characteristic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Characteristic::Prime(p) => s.serialize_u64(*p),
            Characteristic::Rational => s.serialize_str("rational"),
        }
    }
}

impl<'de> Deserialize<'de> for Characteristic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(p) => Ok(Characteristic::Prime(p)),
            Raw::Text(s) if s == "rational" => Ok(Characteristic::Rational),
            Raw::Text(s) => Err(serde::de::Error::custom(format!("expected a prime or \"rational\", got {s}"))),
        }
    }
}

/// Parameters of a family member `R_{m,n}` over a field, plus the optional `k`.
/// Claims about the quotient `S` use only `n`, so `m` is optional too.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperInstance {
    pub p: Characteristic,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
}

impl PaperInstance {
    pub fn new(p: Characteristic, m: u32, n: u32, k: Option<u32>) -> Self {
        PaperInstance { p, m: Some(m), n, k }
    }

    pub fn quotient(p: Characteristic, n: u32) -> Self {
        PaperInstance { p, m: None, n, k: None }
    }

    pub fn field(&self) -> Result<CoefficientField> {
        self.p.field()
    }

    pub fn m(&self) -> Result<u32> {
        self.m.ok_or_else(|| Error::InvalidArgument("parameter m is required".into()))
    }

    pub fn k(&self) -> Result<u32> {
        self.k.ok_or_else(|| Error::InvalidArgument("parameter k is required".into()))
    }

    /// The prime, or an error for the rationals.
    pub fn prime(&self) -> Result<u64> {
        self.p
            .prime()
            .ok_or_else(|| Error::CharacteristicZero("this claim is about positive characteristic".into()))
    }
}

impl fmt::Display for PaperInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}", self.p)?;
        if let Some(m) = self.m {
            write!(f, " m={m}")?;
        }
        write!(f, " n={}", self.n)?;
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        Ok(())
    }
}

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// `m - m/n - 2` as an exact rational.
pub fn family_margin(m: u32, n: u32) -> BigRational {
    rat(m as i64, 1) - rat(m as i64, n as i64) - rat(2, 1)
}

/// `m - m/n > 2`.
pub fn check_family(m: u32, n: u32) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::Hypothesis("m and n must be positive".into()));
    }
    if family_margin(m, n) <= rat(0, 1) {
        return Err(Error::Hypothesis(format!(
            "m - m/n > 2 fails: {m} - {m}/{n} = {}",
            rat(m as i64, 1) - rat(m as i64, n as i64)
        )));
    }
    Ok(())
}

/// `k (m - m/n - 2) >= 1`, together with the family condition.
pub fn check_k(m: u32, n: u32, k: u32) -> Result<()> {
    check_family(m, n)?;
    let lhs = rat(k as i64, 1) * family_margin(m, n);
    if k == 0 || lhs < rat(1, 1) {
        return Err(Error::Hypothesis(format!("k(m - m/n - 2) >= 1 fails: value {lhs}")));
    }
    Ok(())
}

/// Odd prime characteristic.
pub fn check_odd_prime(p: Characteristic) -> Result<u64> {
    match p {
        Characteristic::Prime(2) => Err(Error::Hypothesis("characteristic must exceed 2".into())),
        Characteristic::Prime(p) => {
            CoefficientField::prime(p)?;
            Ok(p)
        }
        Characteristic::Rational => Err(Error::CharacteristicZero("this claim is about positive characteristic".into())),
    }
}

/// `gcd(p, m) = 1`.
pub fn check_coprime(p: u64, m: u32) -> Result<()> {
    if p.gcd(&(m as u64)) != 1 {
        return Err(Error::Hypothesis(format!("p = {p} and m = {m} are not coprime")));
    }
    Ok(())
}

/// Whether `q = 2mk + delta` with `-2m + 2 <= delta <= 1` for some admissible `k`.
pub fn exponent_is_covered(q: u64, m: u32, n: u32) -> bool {
    let two_m = 2 * m as u64;
    // k ranges over values with 2mk - 2m + 2 <= q <= 2mk + 1
    let k_max = (q + two_m - 2) / two_m;
    (1..=k_max).any(|k| {
        let lo = (two_m * k).saturating_sub(two_m - 2);
        let hi = two_m * k + 1;
        (lo..=hi).contains(&q) && k <= u32::MAX as u64 && check_k(m, n, k as u32).is_ok()
    })
}
