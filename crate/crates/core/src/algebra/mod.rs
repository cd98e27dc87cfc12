//! Coefficients, monomials, monomial orders and sparse polynomials.

pub mod field;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;

pub use field::{Coeff, CoefficientField};
pub use monomial::{Monomial, MonomialOrder, MAX_EXPONENT};
pub use parse::{parse_polynomial, parse_polynomial_list};
pub use poly::Polynomial;
pub use ring::{Ring, RingSignature};
