use std::fmt;
use std::sync::Arc;

use crate::algebra::field::CoefficientField;
use crate::error::{Error, Result};

/// Shared handle to a ring signature; polynomials carry one.
pub type Ring = Arc<RingSignature>;

/// Variable names, positive weights and the coefficient field of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSignature {
    names: Vec<String>,
    weights: Vec<u32>,
    field: CoefficientField,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingSignature {
    pub fn new<S: AsRef<str>>(names: &[S], weights: &[u32], field: CoefficientField) -> Result<Ring> {
        if weights.contains(&0) {
            return Err(Error::InvalidRing("weights must be positive".into()));
        }
        Self::build(names, weights, field)
    }

    /// All weights equal to one.
    pub fn standard<S: AsRef<str>>(names: &[S], field: CoefficientField) -> Result<Ring> {
        Self::new(names, &vec![1; names.len()], field)
    }

    fn build<S: AsRef<str>>(names: &[S], weights: &[u32], field: CoefficientField) -> Result<Ring> {
        if names.len() != weights.len() {
            return Err(Error::InvalidRing(format!(
                "{} variables but {} weights",
                names.len(),
                weights.len()
            )));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidRing(format!("`{n}` is not an identifier")));
            }
            if names[..i].iter().any(|m| m.eq_ignore_ascii_case(n)) {
                return Err(Error::InvalidRing(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(RingSignature {
            names,
            weights: weights.to_vec(),
            field,
        }))
    }

    /// Appends one auxiliary variable. Weight zero is allowed here; such rings
    /// are only ever used with an elimination order that puts the auxiliary block first.
    pub(crate) fn with_aux(&self, name: &str, weight: u32) -> Ring {
        let mut names = self.names.clone();
        let mut weights = self.weights.clone();
        names.push(name.to_string());
        weights.push(weight);
        Self::build(&names, &weights, self.field).expect("auxiliary extension of a valid ring")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn field(&self) -> &CoefficientField {
        &self.field
    }

    pub fn has_positive_weights(&self) -> bool {
        self.weights.iter().all(|&w| w > 0)
    }

    /// Case-insensitive lookup.
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n.eq_ignore_ascii_case(name))
    }

    pub fn same_variables(&self, other: &RingSignature) -> bool {
        self.field == other.field
            && self.names.len() == other.names.len()
            && self
                .names
                .iter()
                .zip(&other.names)
                .all(|(a, b)| a.eq_ignore_ascii_case(b))
    }
}

impl fmt::Display for RingSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.field)?;
        for (i, (n, w)) in self.names.iter().zip(&self.weights).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}:{w}")?;
        }
        write!(f, "]")
    }
}
