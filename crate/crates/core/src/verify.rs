//! Exhaustive secrecy and decodability oracle.
//!
//! Every combination of message and jam bits is pushed through the encoder
//! and the channel, one channel use at a time. Messages and jam bits are
//! independent and uniform, so every state has probability `2^-N` and the
//! joint distribution of `(W, Y2)` is a table of integer counts. The scheme is
//! memoryless, so exact secrecy for one use carries over to any block length
//! by independence.
//!
//! Conditional entropies are exact dyadic rationals whenever every conditional
//! distribution of `W` given `y2` is uniform over a power-of-two support, which
//! is always the case for linear plans. Anything else is reported as a float
//! with an explicit error bound.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{transmit, ChannelConfig};
use crate::error::{Error, Result};
use crate::level::LevelVector;
use crate::rates::Rational;
use crate::scheme::{build_allocation, AllocationPlan};

/// Default enumeration budget: at most `2^22` states.
pub const DEFAULT_BUDGET: u32 = 22;

/// Hard ceiling on the enumerated bits regardless of the budget asked for.
pub const MAX_BUDGET: u32 = 40;

/// An information quantity in bits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bits {
    pub value: f64,
    #[serde(with = "crate::ratio_str::option")]
    pub exact: Option<Rational>,
    /// Zero when `exact` is present.
    pub error_bound: f64,
}

impl Bits {
    pub fn exact(r: Rational) -> Self {
        Self {
            value: *r.numer() as f64 / *r.denom() as f64,
            exact: Some(r),
            error_bound: 0.0,
        }
    }

    pub fn approx(value: f64, error_bound: f64) -> Self {
        Self {
            value,
            exact: None,
            error_bound,
        }
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.exact == Some(Rational::from_integer(0))
    }
}

pub type Decoder<'a> = dyn Fn(&AllocationPlan, &LevelVector) -> Result<(Vec<bool>, Vec<bool>)> + Sync + 'a;

/// Counts gathered over the state space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JointCounts {
    /// `y2 -> (w -> count)`, with `w` packed as `w1` bits then `w2` bits.
    pub table: BTreeMap<LevelVector, BTreeMap<u64, u64>>,
    pub decode_failures: u64,
    pub states: u64,
}

impl JointCounts {
    fn merge(mut self, other: Self) -> Self {
        for (y, ws) in other.table {
            let slot = self.table.entry(y).or_default();
            for (w, c) in ws {
                *slot.entry(w).or_default() += c;
            }
        }
        self.decode_failures += other.decode_failures;
        self.states += other.states;
        self
    }

    /// True when, for every observed `y2`, all messages compatible with it
    /// are equally likely.
    pub fn conditionals_uniform(&self) -> bool {
        self.table.values().all(|ws| {
            let mut counts = ws.values();
            let first = counts.next();
            counts.all(|c| Some(c) == first)
        })
    }

    /// `H(W | Y2)` in bits.
    pub fn equivocation(&self) -> Bits {
        let total = self.states;
        let log_total = total.trailing_zeros();
        let exact_terms: Option<Vec<(u64, u32)>> = if self.conditionals_uniform() {
            self.table
                .values()
                .map(|ws| {
                    let support = ws.len() as u64;
                    support
                        .is_power_of_two()
                        .then(|| (ws.values().sum::<u64>(), support.trailing_zeros()))
                })
                .collect()
        } else {
            None
        };
        if let Some(terms) = exact_terms {
            let numer: u128 = terms.iter().map(|&(c, lg)| u128::from(c) * u128::from(lg)).sum();
            // numer / 2^log_total, reduced before it has to fit an i64
            let shift = numer.trailing_zeros().min(log_total);
            let numer = (numer >> shift) as i64;
            let denom = 1i64 << (log_total - shift);
            return Bits::exact(Rational::new(numer, denom));
        }
        let mut h = 0.0f64;
        let mut terms = 0u64;
        for ws in self.table.values() {
            let c_y: u64 = ws.values().sum();
            for &c in ws.values() {
                h += (c as f64 / total as f64) * (c_y as f64 / c as f64).log2();
                terms += 1;
            }
        }
        let bound = 4.0 * terms as f64 * (f64::from(log_total) + 1.0) * f64::EPSILON;
        Bits::approx(h, bound)
    }

    pub fn error_probability(&self) -> Rational {
        let log_total = self.states.trailing_zeros();
        let shift = self.decode_failures.trailing_zeros().min(log_total);
        if self.decode_failures == 0 {
            return Rational::from_integer(0);
        }
        Rational::new(
            (self.decode_failures >> shift) as i64,
            1i64 << (log_total - shift),
        )
    }
}

/// Enumeration settings.
#[derive(Clone, Copy, Debug)]
pub struct Enumerator {
    /// Maximum number of enumerated bits (message plus jam).
    pub budget: u32,
    /// States per parallel work item.
    pub chunk_size: u64,
}

impl Default for Enumerator {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            chunk_size: 1 << 12,
        }
    }
}

impl Enumerator {
    pub fn with_budget(budget: u32) -> Self {
        Self {
            budget,
            ..Self::default()
        }
    }

    fn check_budget(&self, plan: &AllocationPlan) -> Result<u32> {
        let required = (plan.message_bits() + plan.jam_bits()) as u32;
        if required > self.budget.min(MAX_BUDGET) {
            return Err(Error::BudgetExceeded {
                required,
                budget: self.budget.min(MAX_BUDGET),
            });
        }
        Ok(required)
    }

    /// Walks every `(w1, w2, jam)` state and tallies `(W, Y2)` together with
    /// the decoder's failures.
    pub fn run(&self, plan: &AllocationPlan, decoder: &Decoder<'_>) -> Result<JointCounts> {
        let n = self.check_budget(plan)?;
        let states = 1u64 << n;
        let chunk = self.chunk_size.max(1);
        let chunks = states.div_ceil(chunk);
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut counts = JointCounts::default();
                for s in c * chunk..((c + 1) * chunk).min(states) {
                    tally(plan, decoder, s, &mut counts)?;
                }
                Ok(counts)
            })
            .try_reduce(JointCounts::default, |a, b| Ok(a.merge(b)))
    }
}

fn unpack(s: u64, from: usize, len: usize) -> Vec<bool> {
    (from..from + len).map(|i| (s >> i) & 1 == 1).collect()
}

fn tally(plan: &AllocationPlan, decoder: &Decoder<'_>, s: u64, counts: &mut JointCounts) -> Result<()> {
    let m = plan.message_bits();
    let w1 = unpack(s, 0, plan.m1);
    let w2 = unpack(s, plan.m1, plan.m2);
    let jam = unpack(s, m, plan.jam_bits());
    let (x1, x2) = plan.encode(&w1, &w2, &jam)?;
    let (y1, y2) = transmit(&plan.cfg, &x1, &x2)?;
    let w = s & ((1u64 << m) - 1);
    *counts.table.entry(y2).or_default().entry(w).or_default() += 1;
    let (d1, d2) = decoder(plan, &y1)?;
    if d1 != w1 || d2 != w2 {
        counts.decode_failures += 1;
    }
    counts.states += 1;
    Ok(())
}

fn plan_decoder(plan: &AllocationPlan, y1: &LevelVector) -> Result<(Vec<bool>, Vec<bool>)> {
    plan.decode(y1)
}

/// `H(W1, W2 | Y2)` for uniform messages and jam bits, default budget.
pub fn equivocation(plan: &AllocationPlan) -> Result<Bits> {
    Ok(Enumerator::default().run(plan, &plan_decoder)?.equivocation())
}

/// Probability that the plan's decoder misreads `(W1, W2)`, default budget.
pub fn error_probability(plan: &AllocationPlan) -> Result<Rational> {
    Ok(Enumerator::default().run(plan, &plan_decoder)?.error_probability())
}

/// Error probability of an arbitrary decoder against the plan's encoder.
pub fn error_probability_with(
    plan: &AllocationPlan,
    enumerator: &Enumerator,
    decoder: &Decoder<'_>,
) -> Result<Rational> {
    Ok(enumerator.run(plan, decoder)?.error_probability())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub cfg: ChannelConfig,
    pub m1: usize,
    pub m2: usize,
    pub j1: usize,
    pub j2: usize,
    pub message_bits: usize,
    pub jam_bits: usize,
    pub equivocation: Bits,
    /// `I(W1, W2; Y2) = H(W) - H(W | Y2)` with `H(W) = m1 + m2`.
    pub leakage: Bits,
    #[serde(with = "crate::ratio_str")]
    pub error_probability: Rational,
    pub enumerated_states: u64,
    pub conditionals_uniform: bool,
    pub formula_rate: u64,
    pub formula_match: bool,
}

impl VerificationReport {
    pub fn is_secure(&self) -> bool {
        self.leakage.is_exactly_zero()
    }

    pub fn is_zero_error(&self) -> bool {
        self.error_probability == Rational::from_integer(0)
    }

    /// Secure, zero-error, and carrying the closed-form rate.
    pub fn passes(&self) -> bool {
        self.is_secure() && self.is_zero_error() && self.formula_match
    }
}

pub fn verify_plan(plan: &AllocationPlan, enumerator: &Enumerator) -> Result<VerificationReport> {
    let counts = enumerator.run(plan, &plan_decoder)?;
    let equivocation = counts.equivocation();
    let h_w = plan.message_bits() as i64;
    let leakage = match equivocation.exact {
        Some(e) => Bits::exact(Rational::from_integer(h_w) - e),
        None => Bits::approx(h_w as f64 - equivocation.value, equivocation.error_bound),
    };
    Ok(VerificationReport {
        cfg: plan.cfg,
        m1: plan.m1,
        m2: plan.m2,
        j1: plan.j1,
        j2: plan.j2,
        message_bits: plan.message_bits(),
        jam_bits: plan.jam_bits(),
        equivocation,
        leakage,
        error_probability: counts.error_probability(),
        enumerated_states: counts.states,
        conditionals_uniform: counts.conditionals_uniform(),
        formula_rate: plan.formula_rate(),
        formula_match: plan.formula_match(),
    })
}

pub fn verify_config(cfg: &ChannelConfig) -> Result<VerificationReport> {
    verify_config_with(cfg, &Enumerator::default())
}

pub fn verify_config_with(cfg: &ChannelConfig, enumerator: &Enumerator) -> Result<VerificationReport> {
    verify_plan(&build_allocation(cfg)?, enumerator)
}
