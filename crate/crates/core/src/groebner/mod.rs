//! Buchberger's algorithm and the ideal-theoretic toolkit built on it.
//!
//! All operations go through an [`Engine`], which carries the per-call
//! reduction budget and accumulates statistics. The free functions at the
//! bottom of this module use a default engine.

mod basis;
mod ideal;
mod kernel;
mod ops;
mod oracle;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use basis::GroebnerBasis;
pub use ideal::Ideal;
pub use kernel::GbStats;
pub use oracle::ideal_member_linear_oracle;

use crate::algebra::{MonomialOrder, Polynomial, RingSignature};
use crate::error::Result;

/// Reduction steps allowed per Groebner-basis computation unless overridden.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// The default order: weighted graded reverse-lex with the signature weights.
pub fn default_order(ring: &RingSignature) -> MonomialOrder {
    if ring.has_positive_weights() {
        MonomialOrder::WeightedGrevLex(ring.weights().to_vec())
    } else {
        MonomialOrder::GrevLex
    }
}

#[derive(Debug, Default)]
struct Counters {
    gb_calls: AtomicU64,
    reductions: AtomicU64,
    pairs_reduced: AtomicU64,
    pairs_pruned: AtomicU64,
    zero_reductions: AtomicU64,
}

/// Aggregate engine statistics. Deterministic for a fixed sequence of calls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineStats {
    pub gb_calls: u64,
    pub reductions: u64,
    pub pairs_reduced: u64,
    pub pairs_pruned: u64,
    pub zero_reductions: u64,
}

impl EngineStats {
    pub fn absorb(&mut self, other: &EngineStats) {
        self.gb_calls += other.gb_calls;
        self.reductions += other.reductions;
        self.pairs_reduced += other.pairs_reduced;
        self.pairs_pruned += other.pairs_pruned;
        self.zero_reductions += other.zero_reductions;
    }
}

/// Budget plus shared statistics counters. Cloning shares the counters;
/// [`Engine::fork`] starts fresh ones.
#[derive(Clone, Debug)]
pub struct Engine {
    budget: u64,
    counters: Arc<Counters>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(DEFAULT_BUDGET)
    }
}

impl Engine {
    pub fn new(budget: u64) -> Self {
        Engine {
            budget,
            counters: Arc::new(Counters::default()),
        }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Same budget, independent counters.
    pub fn fork(&self) -> Engine {
        Engine::new(self.budget)
    }

    pub fn stats(&self) -> EngineStats {
        let c = &self.counters;
        EngineStats {
            gb_calls: c.gb_calls.load(Ordering::Relaxed),
            reductions: c.reductions.load(Ordering::Relaxed),
            pairs_reduced: c.pairs_reduced.load(Ordering::Relaxed),
            pairs_pruned: c.pairs_pruned.load(Ordering::Relaxed),
            zero_reductions: c.zero_reductions.load(Ordering::Relaxed),
        }
    }

    fn record(&self, s: &GbStats, gb_call: bool) {
        let c = &self.counters;
        if gb_call {
            c.gb_calls.fetch_add(1, Ordering::Relaxed);
        }
        c.reductions.fetch_add(s.reductions, Ordering::Relaxed);
        c.pairs_reduced.fetch_add(s.pairs_reduced, Ordering::Relaxed);
        c.pairs_pruned.fetch_add(s.pairs_pruned, Ordering::Relaxed);
        c.zero_reductions.fetch_add(s.zero_reductions, Ordering::Relaxed);
    }
}

pub fn buchberger(ideal: &Ideal, order: &MonomialOrder) -> Result<GroebnerBasis> {
    Engine::default().groebner(ideal, order)
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    Engine::default().normal_form(f, gb)
}

pub fn ideal_member(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    Engine::default().ideal_member(f, ideal)
}

pub fn colon_ideal(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    Engine::default().colon_ideal(ideal, f)
}

pub fn eliminate(ideal: &Ideal, keep: &[usize]) -> Result<Ideal> {
    Engine::default().eliminate(ideal, keep)
}

pub fn krull_dimension(ideal: &Ideal) -> Result<usize> {
    Engine::default().krull_dimension(ideal)
}

pub fn hilbert_function(ideal: &Ideal, up_to: u64) -> Result<Vec<u64>> {
    Engine::default().hilbert_function(ideal, up_to)
}

pub fn radical_member(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    Engine::default().radical_member(f, ideal)
}
