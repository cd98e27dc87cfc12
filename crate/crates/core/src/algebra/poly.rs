//! Sparse multivariate polynomials over a [`CoefficientField`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::algebra::field::{Coeff, CoefficientField};
use crate::algebra::monomial::{Exps, Monomial, MonomialOrder, MAX_EXPONENT};
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};

pub type Term = (Monomial, Coeff);

/// Weighted degree first, then reverse-lex: the storage order of every polynomial.
#[inline]
pub(crate) fn storage_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// A polynomial. Terms are kept strictly descending under the ring's weighted
/// graded reverse-lex order, with no zero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Ring, c: Coeff) -> Self {
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![(Monomial::one(ring.nvars()), c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_i64(ring: &Ring, v: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(v))
    }

    pub fn var(ring: &Ring, index: usize) -> Self {
        assert!(index < ring.nvars(), "variable index out of range");
        let mut exps = vec![0; ring.nvars()];
        exps[index] = 1;
        Self::term(ring, Monomial::new(&exps, ring.weights()).unwrap(), ring.field().one())
    }

    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        let i = ring.var_index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    pub fn term(ring: &Ring, m: Monomial, c: Coeff) -> Self {
        debug_assert_eq!(m.exponents().len(), ring.nvars());
        let terms = if ring.field().is_zero(&c) { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn monomial(ring: &Ring, exps: &[u32]) -> Result<Self> {
        if exps.len() != ring.nvars() {
            return Err(Error::InvalidArgument("exponent vector length".into()));
        }
        Ok(Self::term(ring, Monomial::new(exps, ring.weights())?, ring.field().one()))
    }

    /// Canonicalises an arbitrary term list: combines duplicates, drops zeros, sorts.
    pub fn from_terms(ring: &Ring, terms: Vec<Term>) -> Self {
        let field = *ring.field();
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| storage_cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds from terms already strictly descending in storage order with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| storage_cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &CoefficientField {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.field().is_one(&self.terms[0].1)
    }

    fn same_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// `(degree, homogeneous)`: maximum weighted degree among the terms, and
    /// whether all terms share it.
    pub fn weighted_degree(&self) -> Result<(u64, bool)> {
        let first = self.terms.first().ok_or(Error::ZeroPolynomial)?;
        let d = first.0.degree();
        Ok((d, self.terms.iter().all(|(m, _)| m.degree() == d)))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weighted_degree().map(|(_, h)| h).unwrap_or(true)
    }

    /// Maximum exponent of variable `var`.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponents()[var]).max().unwrap_or(0)
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<&Term> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let field = *self.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match storage_cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { field.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract {
                        field.sub(&a[i].1, &b[j].1)
                    } else {
                        field.add(&a[i].1, &b[j].1)
                    };
                    if !field.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if subtract { field.neg(&t.1) } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial::from_sorted_terms(&self.ring, out)
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let field = *self.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    /// Multiplication by a single term; storage order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Result<Polynomial> {
        let field = *self.field();
        if field.is_zero(c) {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (n, a) in &self.terms {
            terms.push((n.checked_mul(m)?, field.mul(a, c)));
        }
        Ok(Polynomial::from_sorted_terms(&self.ring, terms))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let field = *self.field();
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(small.terms.len() * large.terms.len());
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                let m = m1.checked_mul(m2)?;
                let c = field.mul(c1, c2);
                match acc.get_mut(&m) {
                    Some(v) => *v = field.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| storage_cmp(&b.0, &a.0));
        Ok(Polynomial::from_sorted_terms(&self.ring, terms))
    }

    /// Exact `k`-th power by binary exponentiation.
    pub fn pow(&self, k: u64) -> Result<Polynomial> {
        if k == 0 {
            return Ok(Polynomial::one(&self.ring));
        }
        for v in 0..self.ring.nvars() {
            let e = self.degree_in(v) as u64 * k;
            if e > MAX_EXPONENT as u64 {
                return Err(Error::ExponentLimit(e));
            }
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(Polynomial::term(&self.ring, m.checked_pow(k)?, self.field().pow(c, k)));
        }
        let mut base = self.clone();
        let mut acc: Option<Polynomial> = None;
        let mut k = k;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.try_mul(&base)?,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.try_mul(&base)?;
        }
        Ok(acc.expect("k > 0"))
    }

    /// The Frobenius twist `sum c * m^q`. Over `F_p` with `q` a power of `p`
    /// this equals `self^q`.
    pub fn frobenius_twist(&self, q: u64) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.checked_pow(q)?, c.clone()));
        }
        // raising every monomial to the same power preserves the storage order
        Ok(Polynomial::from_sorted_terms(&self.ring, terms))
    }

    /// Formal partial derivative in variable `var`, exponents multiplied in the field.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let field = *self.field();
        let w = self.ring.weights();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponents()[var] > 0)
            .map(|(m, c)| {
                let e = m.exponents()[var];
                let mut exps: Exps = m.exponents().into();
                exps[var] -= 1;
                (Monomial::from_parts(exps, w), field.mul(c, &field.from_i64(e as i64)))
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Division by a single polynomial under `order`: `self = q * divisor + r`
    /// with no term of `r` divisible by the leading monomial of `divisor`.
    pub fn div_rem(&self, divisor: &Polynomial, order: &MonomialOrder) -> Result<(Polynomial, Polynomial)> {
        self.same_ring(divisor)?;
        let (lm, lc) = divisor
            .leading_term(order)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument("division by zero".into()))?;
        let field = *self.field();
        let lc_inv = field.inv(&lc).expect("nonzero leading coefficient");
        let mut rest = self.clone();
        let mut quot = Vec::new();
        let mut rem = Vec::new();
        while let Some((m, c)) = rest.leading_term(order).cloned() {
            match m.div(&lm) {
                Some(u) => {
                    let k = field.mul(&c, &lc_inv);
                    rest = rest.try_sub(&divisor.mul_term(&u, &k)?)?;
                    quot.push((u, k));
                }
                None => {
                    rest = rest.try_sub(&Polynomial::term(&self.ring, m.clone(), c.clone()))?;
                    rem.push((m, c));
                }
            }
        }
        Ok((Polynomial::from_terms(&self.ring, quot), Polynomial::from_terms(&self.ring, rem)))
    }

    /// `self / divisor` when the division is exact.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        let order = MonomialOrder::Lex;
        let (q, r) = self.div_rem(divisor, &order)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// `var_map[i]`. Fails if a variable mapped to `None` occurs.
    pub fn map_variables(&self, target: &Ring, var_map: &[Option<usize>]) -> Result<Polynomial> {
        if target.field() != self.field() {
            return Err(Error::RingMismatch);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps: Exps = smallvec::smallvec![0; target.nvars()];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match var_map[i] {
                    Some(j) => exps[j] += e,
                    None => {
                        return Err(Error::InvalidArgument(format!(
                            "variable `{}` has no image",
                            self.ring.names()[i]
                        )))
                    }
                }
            }
            terms.push((Monomial::from_parts(exps, target.weights()), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Maps by variable name into `target` (case-insensitive).
    pub fn map_by_name(&self, target: &Ring) -> Result<Polynomial> {
        let map: Vec<Option<usize>> = self.ring.names().iter().map(|n| target.var_index(n)).collect();
        self.map_variables(target, &map)
    }

    /// Substitutes `images[i]` for variable `i`; images live in a common ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::InvalidArgument("one image per variable required".into()));
        }
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .ok_or_else(|| Error::InvalidArgument("no images".into()))?;
        let mut acc = Polynomial::zero(&target);
        let mut power_cache: HashMap<(usize, u32), Polynomial> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = match power_cache.get(&(i, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = images[i].pow(e as u64)?;
                        power_cache.insert((i, e), p.clone());
                        p
                    }
                };
                t = t.try_mul(&pw)?;
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Whether some term has every exponent below `q`, i.e. the polynomial lies
    /// outside the monomial ideal `(x_1^q, ..., x_n^q)`. Returns that monomial.
    pub fn term_outside_bracket_power(&self, q: u64) -> Option<&Monomial> {
        self.terms
            .iter()
            .map(|(m, _)| m)
            .find(|m| m.exponents().iter().all(|&e| (e as u64) < q))
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, names: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (name, &e) in names.iter().zip(m.exponents()) {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = field.sign_magnitude(c);
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if mag != "1" {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, self.ring.names(), m)?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial addition across rings")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial subtraction across rings")
    }
}

/// Panics on ring mismatch or when an exponent exceeds [`MAX_EXPONENT`];
/// use [`Polynomial::try_mul`] to handle those as errors.
impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let field = *self.field();
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }
}
