//! Ideal membership by plain linear algebra, independent of Buchberger.

use std::collections::HashMap;

use crate::algebra::{Coeff, CoefficientField, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::Ideal;

/// All exponent vectors of weighted degree exactly `d`.
fn monomials_of_degree(weights: &[u32], d: u64) -> Vec<Vec<u32>> {
    fn go(weights: &[u32], var: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if var == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[var] as u64;
        let mut e = 0;
        while e * w <= left {
            cur[var] = e as u32;
            go(weights, var + 1, left - e * w, cur, out);
            e += 1;
        }
        cur[var] = 0;
    }
    let mut out = Vec::new();
    go(weights, 0, d, &mut vec![0; weights.len()], &mut out);
    out
}

type Vector = Vec<(usize, Coeff)>;

/// Row echelon form keyed by pivot column; pivots are normalised to one.
struct Echelon {
    field: CoefficientField,
    rows: HashMap<usize, Vector>,
}

impl Echelon {
    /// Reduces `v` against the stored rows; returns the remainder.
    fn reduce(&self, mut v: Vector) -> Vector {
        let f = &self.field;
        loop {
            let Some(pos) = v.iter().position(|(i, _)| self.rows.contains_key(i)) else {
                return v;
            };
            let (col, c) = v[pos].clone();
            let row = &self.rows[&col];
            let mut acc: HashMap<usize, Coeff> = v.into_iter().collect();
            for (i, a) in row {
                let cur = acc.remove(i).unwrap_or_else(|| f.zero());
                let next = f.sub_mul(&cur, &c, a);
                if !f.is_zero(&next) {
                    acc.insert(*i, next);
                }
            }
            v = acc.into_iter().collect();
            v.sort_by_key(|(i, _)| *i);
        }
    }

    fn insert(&mut self, v: Vector) {
        let mut v = self.reduce(v);
        if let Some((col, lead)) = v.first().cloned() {
            let inv = self.field.inv(&lead).expect("nonzero pivot");
            for (_, c) in v.iter_mut() {
                *c = self.field.mul(c, &inv);
            }
            self.rows.insert(col, v);
        }
    }
}

/// Decides `f ∈ ideal` for homogeneous `f` and a homogeneous ideal by
/// checking whether `f` lies in the span of `{m * g}` over generators `g` and
/// monomials `m` of complementary degree. Inputs of degree above `cap` give
/// [`Error::Inconclusive`].
pub fn ideal_member_linear_oracle(f: &Polynomial, ideal: &Ideal, cap: u64) -> Result<bool> {
    let ring = ideal.ring();
    if f.ring() != ring {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Ok(true);
    }
    let (d, homog) = f.weighted_degree()?;
    if !homog || !ideal.is_homogeneous() || !ring.has_positive_weights() {
        return Err(Error::NotHomogeneous(format!("{f} in {ideal}")));
    }
    if d > cap {
        return Err(Error::Inconclusive(format!("degree {d} exceeds the oracle cap {cap}")));
    }
    let weights = ring.weights();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut col = |e: &[u32]| {
        let next = index.len();
        *index.entry(e.to_vec()).or_insert(next)
    };
    let to_vector = |p: &Polynomial, col: &mut dyn FnMut(&[u32]) -> usize| -> Vector {
        let mut v: Vector = p.terms().iter().map(|(m, c)| (col(m.exponents()), c.clone())).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    };

    let mut ech = Echelon {
        field: *ring.field(),
        rows: HashMap::new(),
    };
    for g in ideal.generators() {
        let (dg, _) = g.weighted_degree()?;
        if dg > d {
            continue;
        }
        for e in monomials_of_degree(weights, d - dg) {
            let m = Monomial::new(&e, weights)?;
            let shifted = g.mul_term(&m, &ring.field().one())?;
            ech.insert(to_vector(&shifted, &mut col));
        }
    }
    Ok(ech.reduce(to_vector(f, &mut col)).is_empty())
}
