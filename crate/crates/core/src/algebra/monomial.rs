use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponents above this are rejected.
pub const MAX_EXPONENT: u32 = 1_000_000;

pub(crate) type Exps = SmallVec<[u32; 8]>;

/// Exponent vector with its weighted degree cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
    degree: u64,
}

fn dot(exps: &[u32], weights: &[u32]) -> u64 {
    exps.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum()
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn new(exps: &[u32], weights: &[u32]) -> Result<Self> {
        debug_assert_eq!(exps.len(), weights.len());
        if let Some(&e) = exps.iter().find(|&&e| e > MAX_EXPONENT) {
            return Err(Error::ExponentLimit(e as u64));
        }
        Ok(Monomial {
            degree: dot(exps, weights),
            exps: SmallVec::from_slice(exps),
        })
    }

    pub(crate) fn from_parts(exps: Exps, weights: &[u32]) -> Self {
        Monomial {
            degree: dot(&exps, weights),
            exps,
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Weighted degree under the signature weights.
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Product without the exponent-limit check; exponents must stay in range.
    pub(crate) fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = Exps::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            let s = *a as u64 + *b as u64;
            if s > MAX_EXPONENT as u64 {
                return Err(Error::ExponentLimit(s));
            }
            exps.push(s as u32);
        }
        Ok(Monomial {
            exps,
            degree: self.degree + other.degree,
        })
    }

    pub fn checked_pow(&self, k: u64) -> Result<Monomial> {
        let mut exps = Exps::with_capacity(self.exps.len());
        for &e in &self.exps {
            let s = e as u64 * k;
            if s > MAX_EXPONENT as u64 {
                return Err(Error::ExponentLimit(s));
            }
            exps.push(s as u32);
        }
        Ok(Monomial {
            exps,
            degree: self.degree * k,
        })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let exps: Exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial::from_parts(exps, weights)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

/// Monomial orders. Ties under any graded order are broken by reverse-lex
/// on the fixed variable order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    WeightedGrevLex(Vec<u32>),
    /// Block order: total degree in the `eliminate` variables first, then
    /// weighted grevlex with `weights` on the whole monomial.
    Elimination { eliminate: Vec<usize>, weights: Vec<u32> },
}

fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::GrevLex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| revlex(&a.exps, &b.exps)),
            MonomialOrder::WeightedGrevLex(w) => dot(&a.exps, w)
                .cmp(&dot(&b.exps, w))
                .then_with(|| revlex(&a.exps, &b.exps)),
            MonomialOrder::Elimination { eliminate, weights } => {
                let block = |m: &Monomial| eliminate.iter().map(|&i| m.exps[i] as u64).sum::<u64>();
                block(a)
                    .cmp(&block(b))
                    .then_with(|| dot(&a.exps, weights).cmp(&dot(&b.exps, weights)))
                    .then_with(|| revlex(&a.exps, &b.exps))
            }
        }
    }

    /// Checks that the order makes sense for `nvars` variables.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            MonomialOrder::Lex | MonomialOrder::GrevLex => Ok(()),
            MonomialOrder::WeightedGrevLex(w) => {
                if w.len() != nvars || w.contains(&0) {
                    Err(Error::InvalidArgument(format!(
                        "weighted order needs {nvars} positive weights"
                    )))
                } else {
                    Ok(())
                }
            }
            MonomialOrder::Elimination { eliminate, weights } => {
                if weights.len() != nvars || eliminate.iter().any(|&i| i >= nvars) {
                    return Err(Error::InvalidArgument("malformed elimination order".into()));
                }
                // zero weights are only tolerated on eliminated variables
                if weights.iter().enumerate().any(|(i, &w)| w == 0 && !eliminate.contains(&i)) {
                    return Err(Error::InvalidArgument(
                        "zero weight outside the eliminated block".into(),
                    ));
                }
                Ok(())
            }
        }
    }
}
