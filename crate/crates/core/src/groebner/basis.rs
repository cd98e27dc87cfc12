use crate::algebra::{Monomial, MonomialOrder, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::groebner::ideal::Ideal;
use crate::groebner::kernel::{Elem, GbStats, Kernel, Row};

/// A reduced Groebner basis: monic, sorted ascending by leading monomial.
///
/// When `truncated_at` is set the basis was computed for a homogeneous ideal
/// and is only guaranteed up to that weighted degree; normal forms are then
/// restricted to homogeneous input of at most that degree.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    rows: Vec<Elem>,
    basis: Vec<Polynomial>,
    source: Ideal,
    truncated_at: Option<u64>,
    stats: GbStats,
}

impl GroebnerBasis {
    pub(crate) fn from_rows(
        source: Ideal,
        order: MonomialOrder,
        rows: Vec<Row>,
        truncated_at: Option<u64>,
        stats: GbStats,
    ) -> Self {
        let ring = source.ring().clone();
        let basis = rows
            .iter()
            .map(|r| Polynomial::from_terms(&ring, r.clone()))
            .collect();
        GroebnerBasis {
            ring,
            order,
            rows: rows.into_iter().map(Elem::new).collect(),
            basis,
            source,
            truncated_at,
            stats,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn source(&self) -> &Ideal {
        &self.source
    }

    pub fn truncated_at(&self) -> Option<u64> {
        self.truncated_at
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.rows.iter().map(|e| e.lm().clone()).collect()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.rows.len() == 1 && self.rows[0].lm().is_one()
    }

    /// The basis as an ideal in the same ring.
    pub fn to_ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.basis.clone()).expect("basis lives in its ring")
    }

    fn check_input(&self, f: &Polynomial) -> Result<()> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if let (Some(d), false) = (self.truncated_at, f.is_zero()) {
            let (deg, homog) = f.weighted_degree()?;
            if !homog || deg > d {
                return Err(Error::InvalidArgument(format!(
                    "basis is truncated at degree {d}; input must be homogeneous of degree at most {d}"
                )));
            }
        }
        Ok(())
    }

    /// Normal form under the basis order, ties broken by the earliest divisor in the sorted basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.normal_form_counted(f, u64::MAX).map(|(p, _)| p)
    }

    pub(crate) fn normal_form_counted(&self, f: &Polynomial, budget: u64) -> Result<(Polynomial, GbStats)> {
        self.check_input(f)?;
        let mut k = Kernel::new(*self.ring.field(), &self.order, self.ring.weights(), budget);
        let row = k.sort_row(f.terms().to_vec());
        let all: Vec<usize> = (0..self.rows.len()).collect();
        let r = k.reduce(row, &self.rows, &all)?;
        Ok((Polynomial::from_terms(&self.ring, r), k.stats))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}
