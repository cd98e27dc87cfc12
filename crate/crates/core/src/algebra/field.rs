//! Exact coefficient arithmetic over a prime field or the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest prime accepted for `F_p`; products of two residues must fit in `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientField {
    Prime(u32),
    Rationals,
}

/// A field element. `Fp` residues are canonical representatives in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Fp(u32),
    Q(Box<BigRational>),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl CoefficientField {
    /// `F_p`, after a primality test.
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(CoefficientField::Prime(p as u32))
    }

    /// Characteristic; 0 for the rationals.
    pub fn characteristic(&self) -> u32 {
        match self {
            CoefficientField::Prime(p) => *p,
            CoefficientField::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            CoefficientField::Prime(_) => Coeff::Fp(0),
            CoefficientField::Rationals => Coeff::Q(Box::new(BigRational::zero())),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            CoefficientField::Prime(_) => Coeff::Fp(1),
            CoefficientField::Rationals => Coeff::Q(Box::new(BigRational::one())),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            CoefficientField::Prime(p) => Coeff::Fp(v.rem_euclid(*p as i64) as u32),
            CoefficientField::Rationals => Coeff::Q(Box::new(BigRational::from_integer(v.into()))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            CoefficientField::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Coeff::Fp(r.to_u32().expect("residue fits in u32"))
            }
            CoefficientField::Rationals => Coeff::Q(Box::new(BigRational::from_integer(v.clone()))),
        }
    }

    /// The element `num/den`; fails when `den` vanishes in this field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        let d = self.from_bigint(den);
        let inv = self.inv(&d).ok_or_else(|| Error::NotInvertible {
            value: den.to_string(),
            field: self.to_string(),
        })?;
        Ok(self.mul(&self.from_bigint(num), &inv))
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<Coeff> {
        self.from_fraction(r.numer(), r.denom())
    }

    #[inline]
    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Fp(v) => *v == 0,
            Coeff::Q(r) => r.is_zero(),
        }
    }

    #[inline]
    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Fp(v) => *v == 1,
            Coeff::Q(r) => r.is_one(),
        }
    }

    #[inline]
    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoefficientField::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => {
                let s = *x as u64 + *y as u64;
                let p = *p as u64;
                Coeff::Fp(if s >= p { s - p } else { s } as u32)
            }
            (CoefficientField::Rationals, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(Box::new(&**x + &**y)),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    #[inline]
    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (CoefficientField::Prime(p), Coeff::Fp(x)) => Coeff::Fp(if *x == 0 { 0 } else { p - x }),
            (CoefficientField::Rationals, Coeff::Q(x)) => Coeff::Q(Box::new(-&**x)),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    #[inline]
    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoefficientField::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => {
                Coeff::Fp(if x >= y { x - y } else { p - (y - x) })
            }
            (CoefficientField::Rationals, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(Box::new(&**x - &**y)),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    #[inline]
    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoefficientField::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => {
                Coeff::Fp(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (CoefficientField::Rationals, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(Box::new(&**x * &**y)),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    /// `a - b * c`, the inner step of every reduction.
    #[inline]
    pub fn sub_mul(&self, a: &Coeff, b: &Coeff, c: &Coeff) -> Coeff {
        match (self, a, b, c) {
            (CoefficientField::Prime(p), Coeff::Fp(x), Coeff::Fp(y), Coeff::Fp(z)) => {
                let p = *p as u64;
                let prod = (*y as u64 * *z as u64) % p;
                let x = *x as u64;
                Coeff::Fp(if x >= prod { x - prod } else { x + p - prod } as u32)
            }
            _ => self.sub(a, &self.mul(b, c)),
        }
    }

    /// Multiplicative inverse by extended Euclid; `None` for zero.
    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        match (self, a) {
            (CoefficientField::Prime(p), Coeff::Fp(x)) => {
                if *x == 0 {
                    return None;
                }
                let (mut r0, mut r1) = (*p as i64, *x as i64);
                let (mut t0, mut t1) = (0i64, 1i64);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                debug_assert_eq!(r0, 1);
                Some(Coeff::Fp(t0.rem_euclid(*p as i64) as u32))
            }
            (CoefficientField::Rationals, Coeff::Q(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Coeff::Q(Box::new(x.recip())))
                }
            }
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    pub fn pow(&self, a: &Coeff, mut k: u64) -> Coeff {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Sign and magnitude for display. Residues above `p/2` print as negatives.
    pub fn sign_magnitude(&self, a: &Coeff) -> (bool, String) {
        match (self, a) {
            (CoefficientField::Prime(p), Coeff::Fp(x)) => {
                if *x > p / 2 {
                    (true, (p - x).to_string())
                } else {
                    (false, x.to_string())
                }
            }
            (CoefficientField::Rationals, Coeff::Q(x)) => (x.is_negative(), x.abs().to_string()),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    pub fn contains(&self, a: &Coeff) -> bool {
        match (self, a) {
            (CoefficientField::Prime(p), Coeff::Fp(x)) => x < p,
            (CoefficientField::Rationals, Coeff::Q(_)) => true,
            _ => false,
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Prime(p) => write!(f, "F_{p}"),
            CoefficientField::Rationals => write!(f, "Q"),
        }
    }
}
