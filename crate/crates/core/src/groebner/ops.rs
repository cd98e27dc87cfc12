use crate::algebra::{Monomial, MonomialOrder, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::groebner::kernel::Kernel;
use crate::groebner::{default_order, Engine, GroebnerBasis, Ideal};

/// A fresh variable name for `ring`.
fn aux_name(ring: &Ring) -> String {
    let mut name = "_z".to_string();
    let mut i = 0;
    while ring.var_index(&name).is_some() {
        i += 1;
        name = format!("_z{i}");
    }
    name
}

/// `ring` plus one trailing auxiliary variable, with the embedding map.
fn extend(ring: &Ring, weight: u32) -> (Ring, Vec<Option<usize>>) {
    let ext = ring.with_aux(&aux_name(ring), weight);
    (ext, (0..ring.nvars()).map(Some).collect())
}

/// Drops the trailing auxiliary variable; the polynomial must not involve it.
fn contract(p: &Polynomial, ring: &Ring) -> Result<Polynomial> {
    let mut map: Vec<Option<usize>> = (0..ring.nvars()).map(Some).collect();
    map.push(None);
    p.map_variables(ring, &map)
}

/// Homogeneous components, highest degree first.
pub(crate) fn homogeneous_components(f: &Polynomial) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    let mut cur = Vec::new();
    let mut deg = None;
    for t in f.terms() {
        let d = t.0.degree();
        if deg.is_some_and(|e| e != d) {
            out.push(Polynomial::from_sorted_terms(f.ring(), std::mem::take(&mut cur)));
        }
        deg = Some(d);
        cur.push(t.clone());
    }
    if !cur.is_empty() {
        out.push(Polynomial::from_sorted_terms(f.ring(), cur));
    }
    out
}

impl Engine {
    fn run(&self, ideal: &Ideal, order: &MonomialOrder, truncate: Option<u64>) -> Result<GroebnerBasis> {
        let ring = ideal.ring();
        order.validate(ring.nvars())?;
        let mut k = Kernel::new(*ring.field(), order, ring.weights(), self.budget());
        let gens = ideal.generators().iter().map(|g| g.terms().to_vec()).collect();
        let res = k.groebner(gens, truncate);
        self.record(&k.stats, true);
        Ok(GroebnerBasis::from_rows(ideal.clone(), order.clone(), res?, truncate, k.stats))
    }

    /// Reduced Groebner basis under `order`.
    pub fn groebner(&self, ideal: &Ideal, order: &MonomialOrder) -> Result<GroebnerBasis> {
        self.run(ideal, order, None)
    }

    /// Groebner basis of a homogeneous ideal, complete up to weighted degree `degree`.
    pub fn groebner_truncated(&self, ideal: &Ideal, order: &MonomialOrder, degree: u64) -> Result<GroebnerBasis> {
        if !ideal.is_homogeneous() {
            return Err(Error::NotHomogeneous(ideal.to_string()));
        }
        self.run(ideal, order, Some(degree))
    }

    pub fn normal_form(&self, f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
        let (r, stats) = gb.normal_form_counted(f, self.budget())?;
        self.record(&stats, false);
        Ok(r)
    }

    pub fn ideal_member(&self, f: &Polynomial, ideal: &Ideal) -> Result<bool> {
        Ok(self.members(std::slice::from_ref(f), ideal)?[0])
    }

    /// Membership of several polynomials, sharing one Groebner basis. For a
    /// homogeneous ideal the basis is truncated at the largest degree needed.
    pub fn members(&self, fs: &[Polynomial], ideal: &Ideal) -> Result<Vec<bool>> {
        let ring = ideal.ring();
        if fs.iter().any(|f| f.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        if ideal.is_zero() {
            return Ok(fs.iter().map(Polynomial::is_zero).collect());
        }
        if ring.has_positive_weights() && ideal.is_homogeneous() {
            let top = fs.iter().flat_map(|f| f.terms().first()).map(|t| t.0.degree()).max();
            let Some(top) = top else {
                return Ok(vec![true; fs.len()]);
            };
            let gb = self.run(ideal, &default_order(ring), Some(top))?;
            return fs
                .iter()
                .map(|f| {
                    for c in homogeneous_components(f) {
                        if !self.normal_form(&c, &gb)?.is_zero() {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                })
                .collect();
        }
        let gb = self.run(ideal, &default_order(ring), None)?;
        fs.iter().map(|f| Ok(self.normal_form(f, &gb)?.is_zero())).collect()
    }

    /// Whether `small` is contained in `big`.
    pub fn contains_ideal(&self, big: &Ideal, small: &Ideal) -> Result<bool> {
        if big.ring() != small.ring() {
            return Err(Error::RingMismatch);
        }
        Ok(self.members(small.generators(), big)?.into_iter().all(|b| b))
    }

    pub fn ideals_equal(&self, a: &Ideal, b: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(a, b)? && self.contains_ideal(b, a)?)
    }

    pub fn intersection(&self, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        self.intersection_truncated(a, b, None)
    }

    pub(crate) fn intersection_truncated(&self, a: &Ideal, b: &Ideal, truncate: Option<u64>) -> Result<Ideal> {
        self.intersection_over(a, b, &Ideal::zero(a.ring()), truncate)
    }

    /// `(a + common) ∩ (b + common)` via `z*a + (1-z)*b + common` with `z`
    /// eliminated. The auxiliary variable has weight zero, so homogeneous
    /// input stays homogeneous and the computation may stop at degree
    /// `truncate`; the result then only holds the generators up to that degree.
    pub(crate) fn intersection_over(
        &self,
        a: &Ideal,
        b: &Ideal,
        common: &Ideal,
        truncate: Option<u64>,
    ) -> Result<Ideal> {
        let ring = a.ring();
        if b.ring() != ring || common.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if a.is_zero() || b.is_zero() {
            return Ok(common.clone());
        }
        let n = ring.nvars();
        let (ext, map) = extend(ring, 0);
        let z = Polynomial::var(&ext, n);
        let one_minus_z = &Polynomial::one(&ext) - &z;
        let mut gens = Vec::new();
        for g in a.generators() {
            gens.push(z.try_mul(&g.map_variables(&ext, &map)?)?);
        }
        for g in b.generators() {
            gens.push(one_minus_z.try_mul(&g.map_variables(&ext, &map)?)?);
        }
        for g in common.generators() {
            gens.push(g.map_variables(&ext, &map)?);
        }
        let homog = ring.has_positive_weights() && a.is_homogeneous() && b.is_homogeneous() && common.is_homogeneous();
        let order = MonomialOrder::Elimination {
            eliminate: vec![n],
            weights: ext.weights().to_vec(),
        };
        let gb = self.run(&Ideal::new(&ext, gens)?, &order, truncate.filter(|_| homog))?;
        let kept = gb
            .basis()
            .iter()
            .filter(|g| g.degree_in(n) == 0)
            .map(|g| contract(g, ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, kept)
    }

    /// `(ideal : f)`. Every returned generator is checked to multiply `f` into the ideal.
    pub fn colon_ideal(&self, ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
        let q = self.colon_truncated(ideal, f, None)?;
        let products = q
            .generators()
            .iter()
            .map(|g| g.try_mul(f))
            .collect::<Result<Vec<_>>>()?;
        if !self.members(&products, ideal)?.into_iter().all(|b| b) {
            return Err(Error::Inconclusive(format!("colon ({ideal} : {f}) failed its self-check")));
        }
        Ok(q)
    }

    /// `(ideal : f)` as `(ideal ∩ (f)) / f`, generators up to degree `truncate`
    /// when everything is homogeneous.
    pub(crate) fn colon_truncated(&self, ideal: &Ideal, f: &Polynomial, truncate: Option<u64>) -> Result<Ideal> {
        let ring = ideal.ring();
        if f.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Ok(Ideal::unit(ring));
        }
        if ideal.is_zero() {
            return Ok(Ideal::zero(ring));
        }
        let (deg_f, _) = f.weighted_degree()?;
        let principal = Ideal::new(ring, vec![f.clone()])?;
        let inter = self.intersection_truncated(ideal, &principal, truncate.map(|d| d + deg_f))?;
        let gens = inter
            .generators()
            .iter()
            .map(|g| {
                g.div_exact(f)?
                    .ok_or_else(|| Error::Inconclusive(format!("{f} does not divide {g}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    /// `(ideal : by)`, one generator `g` at a time: with `K` the colon so far,
    /// `K ∩ (ideal : g) = (ideal ∩ g*K) / g`, so every intersection is taken
    /// against `ideal` itself.
    pub fn colon_by_ideal(&self, ideal: &Ideal, by: &Ideal, truncate: Option<u64>) -> Result<Ideal> {
        let ring = ideal.ring();
        if by.ring() != ring {
            return Err(Error::RingMismatch);
        }
        let homog = ring.has_positive_weights() && ideal.is_homogeneous() && by.is_homogeneous();
        let truncate = truncate.filter(|_| homog);
        let mut acc = Ideal::unit(ring);
        for g in by.generators() {
            let (deg_g, _) = g.weighted_degree()?;
            let shifted = acc.generators().iter().map(|h| h.try_mul(g)).collect::<Result<Vec<_>>>()?;
            let inter = self.intersection_truncated(ideal, &Ideal::new(ring, shifted)?, truncate.map(|d| d + deg_g))?;
            let gens = inter
                .generators()
                .iter()
                .map(|h| {
                    h.div_exact(g)?
                        .ok_or_else(|| Error::Inconclusive(format!("{g} does not divide {h}")))
                })
                .collect::<Result<Vec<_>>>()?;
            acc = Ideal::new(ring, gens)?;
        }
        Ok(acc)
    }

    /// `(ideal : f^∞)`: eliminate `z` from `ideal + (1 - z*f)`.
    pub fn saturation(&self, ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
        let ring = ideal.ring();
        if f.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Ok(Ideal::unit(ring));
        }
        let n = ring.nvars();
        let (ext, map) = extend(ring, 0);
        let mut gens = ideal
            .generators()
            .iter()
            .map(|g| g.map_variables(&ext, &map))
            .collect::<Result<Vec<_>>>()?;
        let zf = Polynomial::var(&ext, n).try_mul(&f.map_variables(&ext, &map)?)?;
        gens.push(&Polynomial::one(&ext) - &zf);
        let order = MonomialOrder::Elimination {
            eliminate: vec![n],
            weights: ext.weights().to_vec(),
        };
        let gb = self.run(&Ideal::new(&ext, gens)?, &order, None)?;
        let kept = gb
            .basis()
            .iter()
            .filter(|g| g.degree_in(n) == 0)
            .map(|g| contract(g, ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, kept)
    }

    /// `ideal ∩ k[keep]`, returned in the same ring.
    pub fn eliminate(&self, ideal: &Ideal, keep: &[usize]) -> Result<Ideal> {
        let ring = ideal.ring();
        let n = ring.nvars();
        if keep.iter().any(|&i| i >= n) {
            return Err(Error::InvalidArgument("variable index out of range".into()));
        }
        let gone: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        let order = MonomialOrder::Elimination {
            eliminate: gone.clone(),
            weights: ring.weights().to_vec(),
        };
        let gb = self.run(ideal, &order, None)?;
        let kept = gb
            .basis()
            .iter()
            .filter(|g| gone.iter().all(|&i| g.degree_in(i) == 0))
            .cloned()
            .collect();
        Ideal::new(ring, kept)
    }

    /// Whether `f` lies in the radical of `ideal`: `1 ∈ ideal + (1 - z*f)`.
    pub fn radical_member(&self, f: &Polynomial, ideal: &Ideal) -> Result<bool> {
        let ring = ideal.ring();
        if f.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        let n = ring.nvars();
        let (ext, map) = extend(ring, 1);
        let mut gens = ideal
            .generators()
            .iter()
            .map(|g| g.map_variables(&ext, &map))
            .collect::<Result<Vec<_>>>()?;
        let zf = Polynomial::var(&ext, n).try_mul(&f.map_variables(&ext, &map)?)?;
        gens.push(&Polynomial::one(&ext) - &zf);
        let gb = self.run(&Ideal::new(&ext, gens)?, &default_order(&ext), None)?;
        Ok(gb.is_unit())
    }

    /// `√a = √b`, by radical membership of generators both ways.
    pub fn radical_equal(&self, a: &Ideal, b: &Ideal) -> Result<bool> {
        if a.ring() != b.ring() {
            return Err(Error::RingMismatch);
        }
        for (x, y) in [(a, b), (b, a)] {
            for g in x.generators() {
                if !self.radical_member(g, y)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Krull dimension of `R/ideal`: the largest set of variables containing
    /// the support of no leading monomial.
    pub fn krull_dimension(&self, ideal: &Ideal) -> Result<usize> {
        let ring = ideal.ring();
        let n = ring.nvars();
        if n > 24 {
            return Err(Error::InvalidArgument("too many variables for dimension search".into()));
        }
        let gb = self.run(ideal, &default_order(ring), None)?;
        if gb.is_unit() {
            return Err(Error::UnitIdeal(ideal.to_string()));
        }
        let supports: Vec<u32> = gb
            .leading_monomials()
            .iter()
            .map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i)))
            .collect();
        let best = (0u32..(1 << n))
            .filter(|&s| supports.iter().all(|&m| m & !s != 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0);
        Ok(best)
    }

    /// `dim_k (R/ideal)_d` for `d = 0..=up_to`, for a homogeneous ideal.
    pub fn hilbert_function(&self, ideal: &Ideal, up_to: u64) -> Result<Vec<u64>> {
        let ring = ideal.ring();
        if !ring.has_positive_weights() || !ideal.is_homogeneous() {
            return Err(Error::NotHomogeneous(ideal.to_string()));
        }
        let gb = self.run(ideal, &default_order(ring), Some(up_to))?;
        let lms = gb.leading_monomials();
        let weights = ring.weights();
        let mut out = vec![0u64; up_to as usize + 1];
        let mut exps = vec![0u32; weights.len()];
        count_standard(&lms, weights, 0, 0, up_to, &mut exps, &mut out);
        Ok(out)
    }
}

/// Walks all monomials of weighted degree at most `cap`, tallying those
/// divisible by no element of `lms`.
fn count_standard(
    lms: &[Monomial],
    weights: &[u32],
    var: usize,
    deg: u64,
    cap: u64,
    exps: &mut Vec<u32>,
    out: &mut [u64],
) {
    if lms.iter().any(|m| m.exponents().iter().zip(exps.iter()).all(|(a, b)| a <= b)) {
        // every extension is divisible as well
        return;
    }
    if var == weights.len() {
        out[deg as usize] += 1;
        return;
    }
    let w = weights[var] as u64;
    let mut e = 0u32;
    loop {
        let d = deg + e as u64 * w;
        if d > cap {
            break;
        }
        exps[var] = e;
        count_standard(lms, weights, var + 1, d, cap, exps, out);
        e += 1;
    }
    exps[var] = 0;
}
