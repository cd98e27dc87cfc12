//! The rings and ideals of the family, built from their matrices.

use crate::algebra::{CoefficientField, Polynomial, Ring, RingSignature};
use crate::error::{Error, Result};
use crate::groebner::Ideal;

fn positive(name: &str, v: u32) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidArgument(format!("{name} must be a positive integer")));
    }
    Ok(())
}

/// The 2x2 minors of `[[x11, x12, x13], [x21, x22, x23]]` in the order
/// (columns 1,2), (columns 1,3), (columns 2,3).
pub fn two_by_two_minors(rows: [[&Polynomial; 3]; 2]) -> Result<Vec<Polynomial>> {
    let minor = |i: usize, j: usize| -> Result<Polynomial> {
        rows[0][i].try_mul(rows[1][j])?.try_sub(&rows[0][j].try_mul(rows[1][i])?)
    };
    Ok(vec![minor(0, 1)?, minor(0, 2)?, minor(1, 2)?])
}

/// `K[a,b,c,d,t]` with weights `(m, 2m, 2m, 2mn, 2)`.
pub fn family_ring(m: u32, n: u32, field: CoefficientField) -> Result<Ring> {
    positive("m", m)?;
    positive("n", n)?;
    let w = |x: u64| u32::try_from(x).map_err(|_| Error::InvalidArgument("weights overflow".into()));
    let (m64, n64) = (m as u64, n as u64);
    RingSignature::new(
        &["a", "b", "c", "d", "t"],
        &[m, w(2 * m64)?, w(2 * m64)?, w(2 * m64 * n64)?, 2],
        field,
    )
}

/// `I_{m,n}`: the minors of `[[a^2 + t^m, b, d], [c, a^2, b^n - d]]`.
pub fn matrix_ideal(m: u32, n: u32, field: CoefficientField) -> Result<Ideal> {
    let ring = family_ring(m, n, field)?;
    let v = |i| Polynomial::var(&ring, i);
    let (a, b, c, d, t) = (v(0), v(1), v(2), v(3), v(4));
    let a2 = a.pow(2)?;
    let tau = a2.try_add(&t.pow(m as u64)?)?;
    let corner = b.pow(n as u64)?.try_sub(&d)?;
    let gens = two_by_two_minors([[&tau, &b, &d], [&c, &a2, &corner]])?;
    Ideal::new(&ring, gens)
}

/// `K[a,b,c,d]` with weights `(1, 2, 2, 2n)`.
pub fn quotient_ring(n: u32, field: CoefficientField) -> Result<Ring> {
    positive("n", n)?;
    RingSignature::new(&["a", "b", "c", "d"], &[1, 2, 2, 2 * n], field)
}

/// `J`: the minors of `[[a^2, b, d], [c, a^2, b^n - d]]`, i.e. `I_{m,n}` at `t = 0`
/// with the grading divided by `m`.
#[allow(non_snake_case)]
pub fn quotient_S_ideal(n: u32, field: CoefficientField) -> Result<Ideal> {
    let ring = quotient_ring(n, field)?;
    let v = |i| Polynomial::var(&ring, i);
    let (a, b, c, d) = (v(0), v(1), v(2), v(3));
    let a2 = a.pow(2)?;
    let corner = b.pow(n as u64)?.try_sub(&d)?;
    let gens = two_by_two_minors([[&a2, &b, &d], [&c, &a2, &corner]])?;
    Ideal::new(&ring, gens)
}

/// `K[a,x,y]` with weights `(2n+1, 2, 2n)`.
pub fn hypersurface_ring(n: u32, field: CoefficientField) -> Result<Ring> {
    positive("n", n)?;
    RingSignature::new(&["a", "x", "y"], &[2 * n + 1, 2, 2 * n], field)
}

/// `a^2 - x*y*(x^n - y)`, homogeneous of degree `4n + 2`.
#[allow(non_snake_case)]
pub fn hypersurface_H(n: u32, field: CoefficientField) -> Result<Polynomial> {
    let ring = hypersurface_ring(n, field)?;
    let v = |i| Polynomial::var(&ring, i);
    let (a, x, y) = (v(0), v(1), v(2));
    let xy = x.try_mul(&y)?;
    a.pow(2)?.try_sub(&xy.try_mul(&x.pow(n as u64)?.try_sub(&y)?)?)
}

/// The images of `b, c, d` in `K[a,x,y]`: `x*y^2`, `x*(x^n - y)^2`, `y^(2n+1)`.
pub fn veronese_images(n: u32, ring: &Ring) -> Result<[Polynomial; 3]> {
    let x = Polynomial::var_named(ring, "x")?;
    let y = Polynomial::var_named(ring, "y")?;
    let b = x.try_mul(&y.pow(2)?)?;
    let c = x.try_mul(&x.pow(n as u64)?.try_sub(&y)?.pow(2)?)?;
    let d = y.pow(2 * n as u64 + 1)?;
    Ok([b, c, d])
}

/// `b^n * t^(m-1)`, the element outside `(a, d)` that lies in its tight closure.
pub fn key_element(ideal: &Ideal, m: u32, n: u32) -> Result<Polynomial> {
    let ring = ideal.ring();
    let b = Polynomial::var_named(ring, "b")?;
    let t = Polynomial::var_named(ring, "t")?;
    b.pow(n as u64)?.try_mul(&t.pow(m as u64 - 1)?)
}

/// The ideal `(a, d)` in the family ring.
pub fn parameter_ideal(ring: &Ring) -> Result<Ideal> {
    Ideal::new(ring, vec![Polynomial::var_named(ring, "a")?, Polynomial::var_named(ring, "d")?])
}
