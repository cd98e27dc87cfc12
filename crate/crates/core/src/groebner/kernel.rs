//! Buchberger's algorithm on sorted term vectors.
//!
//! Rows are `Vec<Term>` kept strictly descending under the active order.
//! Pair bookkeeping follows Gebauer and Möller, which covers both the coprime
//! criterion and the chain criterion.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::algebra::field::{Coeff, CoefficientField};
use crate::algebra::monomial::{Monomial, MonomialOrder};
use crate::algebra::poly::Term;
use crate::error::{Error, Result};

pub(crate) type Row = Vec<Term>;

/// Counters for one Groebner-basis computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbStats {
    pub reductions: u64,
    pub pairs_reduced: u64,
    pub pairs_pruned: u64,
    pub zero_reductions: u64,
}

impl GbStats {
    pub fn absorb(&mut self, other: &GbStats) {
        self.reductions += other.reductions;
        self.pairs_reduced += other.pairs_reduced;
        self.pairs_pruned += other.pairs_pruned;
        self.zero_reductions += other.zero_reductions;
    }
}

/// A basis element with its leading monomial and divisibility mask.
#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub poly: Row,
    pub mask: u64,
}

impl Elem {
    pub fn new(poly: Row) -> Self {
        let mask = divmask(&poly[0].0);
        Elem { poly, mask }
    }

    pub fn lm(&self) -> &Monomial {
        &self.poly[0].0
    }
}

/// Per-variable threshold bits `e >= 1, 2, 4, ...`; `a | b` implies `mask(a) ⊆ mask(b)`.
pub(crate) fn divmask(m: &Monomial) -> u64 {
    let e = m.exponents();
    let n = e.len().max(1);
    let bits = (64 / n).clamp(1, 16);
    let mut mask = 0u64;
    for (i, &x) in e.iter().enumerate().take(64) {
        for b in 0..bits {
            if (x as u64) >= (1u64 << b) {
                let pos = i * bits + b;
                if pos < 64 {
                    mask |= 1 << pos;
                }
            } else {
                break;
            }
        }
    }
    mask
}

type PairKey = SmallVec<[i64; 12]>;

/// Sort key whose lexicographic order matches `order` (with an optional grading prefix).
fn pair_key(order: &MonomialOrder, m: &Monomial, grading: Option<&[u32]>) -> PairKey {
    let e = m.exponents();
    let mut key = PairKey::new();
    if let Some(w) = grading {
        key.push(e.iter().zip(w).map(|(&a, &b)| a as i64 * b as i64).sum());
    }
    let revlex = |key: &mut PairKey| key.extend(e.iter().rev().map(|&x| -(x as i64)));
    match order {
        MonomialOrder::Lex => key.extend(e.iter().map(|&x| x as i64)),
        MonomialOrder::GrevLex => {
            key.push(e.iter().map(|&x| x as i64).sum());
            revlex(&mut key);
        }
        MonomialOrder::WeightedGrevLex(w) => {
            key.push(e.iter().zip(w).map(|(&a, &b)| a as i64 * b as i64).sum());
            revlex(&mut key);
        }
        MonomialOrder::Elimination { eliminate, weights } => {
            key.push(eliminate.iter().map(|&i| e[i] as i64).sum());
            key.push(e.iter().zip(weights).map(|(&a, &b)| a as i64 * b as i64).sum());
            revlex(&mut key);
        }
    }
    key
}

/// Geometric buckets: bucket `i` holds at most `4^(i+1)` terms, so adding a
/// short row never touches the long tail of the polynomial being reduced.
/// Each bucket is a descending row; rows are stored reversed so the leading
/// term can be popped from the end.
struct Geobucket {
    buckets: Vec<Row>,
}

impl Geobucket {
    fn new(mut h: Row) -> Self {
        let mut b = Geobucket { buckets: Vec::new() };
        h.reverse();
        b.place(h);
        b
    }

    fn capacity(i: usize) -> usize {
        4usize.saturating_pow(i as u32 + 1)
    }

    /// Puts a reversed row into the first bucket large enough, merging upwards.
    fn place(&mut self, rev: Row) {
        let mut i = 0;
        while rev.len() > Self::capacity(i) {
            i += 1;
        }
        if self.buckets.len() <= i {
            self.buckets.resize_with(i + 1, Vec::new);
        }
        self.buckets[i] = rev;
    }

    fn add(&mut self, k: &Kernel<'_>, row: Row) {
        if row.is_empty() {
            return;
        }
        let mut i = 0;
        while row.len() > Self::capacity(i) {
            i += 1;
        }
        let mut cur = row;
        loop {
            if self.buckets.len() <= i {
                self.buckets.resize_with(i + 1, Vec::new);
            }
            let mut existing = std::mem::take(&mut self.buckets[i]);
            existing.reverse();
            cur = k.merge(existing, cur);
            if cur.len() <= Self::capacity(i) {
                cur.reverse();
                self.buckets[i] = cur;
                return;
            }
            i += 1;
        }
    }

    fn pop_leading(&mut self, k: &Kernel<'_>) -> Option<Term> {
        loop {
            let mut best: Option<usize> = None;
            for (i, b) in self.buckets.iter().enumerate() {
                if let Some(t) = b.last() {
                    best = match best {
                        Some(j) if k.cmp(&self.buckets[j].last().unwrap().0, &t.0) != Ordering::Less => Some(j),
                        _ => Some(i),
                    };
                }
            }
            let j = best?;
            let (m, mut c) = self.buckets[j].pop().unwrap();
            for i in 0..self.buckets.len() {
                if i != j && self.buckets[i].last().is_some_and(|t| t.0 == m) {
                    let (_, d) = self.buckets[i].pop().unwrap();
                    c = k.field.add(&c, &d);
                }
            }
            if !k.field.is_zero(&c) {
                return Some((m, c));
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    key: PairKey,
    i: usize,
    j: usize,
}

/// Comparison shortcuts for orders whose grading is the ring's own, so the
/// cached monomial degree can be used.
enum Fast {
    Degree,
    Block(Vec<usize>),
    General,
}

fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

pub(crate) struct Kernel<'a> {
    fast: Fast,
    pub field: CoefficientField,
    pub order: &'a MonomialOrder,
    pub weights: &'a [u32],
    pub budget: u64,
    pub stats: GbStats,
}

impl<'a> Kernel<'a> {
    pub fn new(field: CoefficientField, order: &'a MonomialOrder, weights: &'a [u32], budget: u64) -> Self {
        let fast = match order {
            MonomialOrder::WeightedGrevLex(w) if w.as_slice() == weights => Fast::Degree,
            MonomialOrder::GrevLex if weights.iter().all(|&w| w == 1) => Fast::Degree,
            MonomialOrder::Elimination { eliminate, weights: w } if w.as_slice() == weights => {
                Fast::Block(eliminate.clone())
            }
            _ => Fast::General,
        };
        Kernel {
            fast,
            field,
            order,
            weights,
            budget,
            stats: GbStats::default(),
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match &self.fast {
            Fast::Degree => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| revlex(a.exponents(), b.exponents())),
            Fast::Block(idx) => {
                let (x, y) = (a.exponents(), b.exponents());
                let bx: u64 = idx.iter().map(|&i| x[i] as u64).sum();
                let by: u64 = idx.iter().map(|&i| y[i] as u64).sum();
                bx.cmp(&by)
                    .then_with(|| a.degree().cmp(&b.degree()))
                    .then_with(|| revlex(x, y))
            }
            Fast::General => self.order.cmp(a, b),
        }
    }

    pub fn sort_row(&self, mut row: Row) -> Row {
        row.sort_unstable_by(|a, b| self.cmp(&b.0, &a.0));
        row
    }

    pub fn make_monic(&self, row: &mut Row) {
        if let Some((_, lc)) = row.first() {
            if self.field.is_one(lc) {
                return;
            }
            let inv = self.field.inv(lc).expect("nonzero leading coefficient");
            for (_, c) in row.iter_mut() {
                *c = self.field.mul(c, &inv);
            }
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.stats.reductions += 1;
        if self.stats.reductions > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    /// `h - c * u * g`, where `c * u * lm(g)` cancels `h[at]`. Terms of `h`
    /// before `at` are larger than everything subtracted and are kept as is.
    fn sub_mul(&self, h: Row, at: usize, c: &Coeff, u: &Monomial, g: &Row) -> Row {
        let field = &self.field;
        let mut out = Vec::with_capacity(h.len() + g.len());
        let mut it = h.into_iter();
        out.extend(it.by_ref().take(at));
        it.next(); // cancelled
        let mut rest = it.peekable();
        let mut gi = g[1..].iter().map(|(m, a)| (m.mul(u), a)).peekable();
        loop {
            match (rest.peek(), gi.peek()) {
                (Some(x), Some(y)) => match self.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(rest.next().unwrap()),
                    Ordering::Less => {
                        let (m, a) = gi.next().unwrap();
                        out.push((m, field.sub_mul(&field.zero(), c, a)));
                    }
                    Ordering::Equal => {
                        let (m, cx) = rest.next().unwrap();
                        let (_, a) = gi.next().unwrap();
                        let v = field.sub_mul(&cx, c, a);
                        if !field.is_zero(&v) {
                            out.push((m, v));
                        }
                    }
                },
                (Some(_), None) => {
                    out.extend(rest);
                    break;
                }
                (None, Some(_)) => {
                    for (m, a) in gi {
                        out.push((m, field.sub_mul(&field.zero(), c, a)));
                    }
                    break;
                }
                (None, None) => break,
            }
        }
        out
    }

    /// Full reduction of `h` by the elements `basis[idx]` for `idx` in `active`,
    /// choosing the first divisor in `active` order. Elements are monic.
    pub fn reduce(&mut self, h: Row, basis: &[Elem], active: &[usize]) -> Result<Row> {
        let mut bucket = Geobucket::new(h);
        let mut out = Vec::new();
        while let Some((m, c)) = bucket.pop_leading(self) {
            let mask = divmask(&m);
            let reducer = active
                .iter()
                .map(|&k| &basis[k])
                .find(|g| g.mask & !mask == 0 && g.lm().divides(&m));
            match reducer {
                Some(g) => {
                    let u = m.div(g.lm()).expect("divisibility checked");
                    let neg = self.field.neg(&c);
                    let row: Row = g.poly[1..]
                        .iter()
                        .map(|(gm, a)| (gm.mul(&u), self.field.mul(&neg, a)))
                        .collect();
                    bucket.add(self, row);
                    self.tick()?;
                }
                None => out.push((m, c)),
            }
        }
        Ok(out)
    }

    /// Merges two descending rows, adding coefficients.
    fn merge(&self, a: Row, b: Row) -> Row {
        let field = &self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut a = a.into_iter().peekable();
        let mut b = b.into_iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match self.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (m, cx) = a.next().unwrap();
                        let (_, cy) = b.next().unwrap();
                        let v = field.add(&cx, &cy);
                        if !field.is_zero(&v) {
                            out.push((m, v));
                        }
                    }
                },
                (Some(_), None) => {
                    out.extend(a);
                    break;
                }
                (None, _) => {
                    out.extend(b);
                    break;
                }
            }
        }
        out
    }

    fn spoly(&self, f: &Row, g: &Row) -> Row {
        let lcm = f[0].0.lcm(&g[0].0, self.weights);
        let uf = lcm.div(&f[0].0).unwrap();
        let ug = lcm.div(&g[0].0).unwrap();
        // both monic: S = uf*f - ug*g; the leading terms cancel
        let a: Row = f[1..].iter().map(|(m, c)| (m.mul(&uf), c.clone())).collect();
        let mut h = Vec::with_capacity(a.len() + g.len());
        h.push((lcm.clone(), self.field.one()));
        h.extend(a);
        self.sub_mul(h, 0, &self.field.one(), &ug, g)
    }

    /// Reduced Groebner basis of `gens`. With `truncate = Some(d)` and
    /// homogeneous input (under `self.weights`), S-pairs of degree above `d`
    /// are skipped: the result is then a Groebner basis up to degree `d`.
    pub fn groebner(&mut self, gens: Vec<Row>, truncate: Option<u64>) -> Result<Vec<Row>> {
        let mut gens: Vec<Row> = gens
            .into_iter()
            .filter(|g| !g.is_empty())
            .filter(|g| truncate.is_none_or(|d| g[0].0.degree() <= d || !self.is_homog(g)))
            .map(|g| {
                let mut g = self.sort_row(g);
                self.make_monic(&mut g);
                g
            })
            .collect();
        gens.sort_by(|a, b| self.cmp(&a[0].0, &b[0].0));

        let grading = truncate.map(|_| self.weights);
        let mut basis: Vec<Elem> = Vec::new();
        let mut active: Vec<usize> = Vec::new();
        let mut pairs: BinaryHeap<Reverse<Pair>> = BinaryHeap::new();

        for g in gens {
            let h = self.reduce(g, &basis, &active)?;
            if h.is_empty() {
                continue;
            }
            let mut h = h;
            self.make_monic(&mut h);
            self.update(&mut basis, &mut active, &mut pairs, h, grading);
        }

        while let Some(Reverse(pair)) = pairs.pop() {
            if let Some(d) = truncate {
                if pair.key[0] > d as i64 {
                    self.stats.pairs_pruned += 1 + pairs.len() as u64;
                    break;
                }
            }
            self.stats.pairs_reduced += 1;
            let s = self.spoly(&basis[pair.i].poly, &basis[pair.j].poly);
            let h = self.reduce(s, &basis, &active)?;
            if h.is_empty() {
                self.stats.zero_reductions += 1;
                continue;
            }
            let mut h = h;
            self.make_monic(&mut h);
            self.update(&mut basis, &mut active, &mut pairs, h, grading);
        }

        self.interreduce(basis, active)
    }

    fn is_homog(&self, g: &Row) -> bool {
        let d = g[0].0.degree();
        g.iter().all(|(m, _)| m.degree() == d)
    }

    /// Gebauer-Möller update with the new element `h`.
    fn update(
        &mut self,
        basis: &mut Vec<Elem>,
        active: &mut Vec<usize>,
        pairs: &mut BinaryHeap<Reverse<Pair>>,
        h: Row,
        grading: Option<&[u32]>,
    ) {
        let hi = basis.len();
        basis.push(Elem::new(h));
        let hlm = basis[hi].lm().clone();
        let w = self.weights;

        // candidate pairs (h, g) with their lcms
        let cands: Vec<(usize, Monomial, bool)> = active
            .iter()
            .map(|&g| {
                let lm = basis[g].lm();
                (g, hlm.lcm(lm, w), hlm.is_coprime(lm))
            })
            .collect();

        // chain criterion among the new pairs
        let mut keep: Vec<bool> = vec![true; cands.len()];
        for a in 0..cands.len() {
            let (_, ref la, coprime) = cands[a];
            if coprime {
                continue;
            }
            let dominated = cands.iter().enumerate().any(|(b, (_, lb, _))| {
                b != a && keep[b] && lb.divides(la) && (lb != la || b < a)
            });
            if dominated {
                keep[a] = false;
            }
        }
        // coprime pairs are dropped after they have served in the chain test
        let new_pairs: Vec<(usize, Monomial)> = cands
            .into_iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .filter_map(|((g, l, coprime), _)| (!coprime).then_some((g, l)))
            .collect();
        let dropped_new = active.len() - new_pairs.len();

        // prune old pairs that h makes redundant
        let before = pairs.len();
        let old: Vec<Reverse<Pair>> = std::mem::take(pairs).into_vec();
        let mut retained = Vec::with_capacity(old.len());
        for Reverse(p) in old {
            let lcm = basis[p.i].lm().lcm(basis[p.j].lm(), w);
            let redundant = hlm.divides(&lcm)
                && hlm.lcm(basis[p.i].lm(), w) != lcm
                && hlm.lcm(basis[p.j].lm(), w) != lcm;
            if !redundant {
                retained.push(Reverse(p));
            }
        }
        self.stats.pairs_pruned += (before - retained.len() + dropped_new) as u64;
        *pairs = BinaryHeap::from(retained);

        for (g, l) in new_pairs {
            let key = pair_key(self.order, &l, grading);
            pairs.push(Reverse(Pair { key, i: g, j: hi }));
        }

        active.retain(|&g| !hlm.divides(basis[g].lm()));
        active.push(hi);
    }

    /// Tail-reduces the active elements against each other; returns them monic,
    /// sorted ascending by leading monomial.
    fn interreduce(&mut self, basis: Vec<Elem>, active: Vec<usize>) -> Result<Vec<Row>> {
        let mut elems: Vec<Elem> = active.into_iter().map(|i| basis[i].clone()).collect();
        elems.sort_by(|a, b| self.cmp(a.lm(), b.lm()));
        // leading monomials are pairwise non-divisible here, so reducing
        // element k by the others leaves its leading term untouched
        for k in 0..elems.len() {
            let others: Vec<usize> = (0..elems.len()).filter(|&x| x != k).collect();
            let row = std::mem::take(&mut elems[k].poly);
            let lead = row[0].clone();
            let tail = self.reduce(row[1..].to_vec(), &elems, &others)?;
            let mut row = Vec::with_capacity(tail.len() + 1);
            row.push(lead);
            row.extend(tail);
            elems[k].poly = row;
        }
        Ok(elems.into_iter().map(|e| e.poly).collect())
    }
}
