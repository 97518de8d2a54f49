//! Closed-form secrecy sum-rates: the achievable rate of the alignment
//! scheme and the converse upper bound, both in exact arithmetic.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::channel::{ChannelConfig, Regime};
use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Tail of the common part that does not fill a whole `3 n_delta` block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Remainder {
    /// Levels left over after the full blocks.
    pub n_q: u32,
    /// `n_q mod n_delta`.
    pub q_rem: u32,
    /// Secure bits the remainder contributes.
    pub q: u32,
}

pub fn remainder_q(n_c: u32, n_delta: u32) -> Result<Remainder> {
    if n_delta == 0 {
        return Err(Error::Singular);
    }
    let block = 3 * n_delta;
    let n_q = n_c - (n_c / block) * block;
    let q_rem = n_q - (n_q / n_delta) * n_delta;
    let q = if n_q < n_delta {
        q_rem
    } else if n_q < 2 * n_delta {
        n_delta
    } else {
        n_delta + q_rem
    };
    Ok(Remainder { n_q, q_rem, q })
}

/// Number of full `3 n_delta` blocks in the common part.
pub fn full_blocks(cfg: &ChannelConfig) -> u32 {
    if cfg.n_delta == 0 {
        0
    } else {
        cfg.n_c / (3 * cfg.n_delta)
    }
}

/// Secure bits per channel use of the alignment scheme. Zero for a
/// singular configuration.
pub fn achievable_rate(cfg: &ChannelConfig) -> u64 {
    if cfg.regime == Regime::Singular {
        return 0;
    }
    let rem = remainder_q(cfg.n_c, cfg.n_delta).expect("n_delta > 0 outside the singular regime");
    // two thirds of a whole number of 3*n_delta blocks
    let blocks = 2 * u64::from(full_blocks(cfg)) * u64::from(cfg.n_delta);
    let private = match cfg.regime {
        Regime::Case1 => u64::from(cfg.n_p),
        _ => 0,
    };
    blocks + private + u64::from(rem.q)
}

/// Converse bound on the secrecy sum-rate.
pub fn upper_bound(cfg: &ChannelConfig) -> Rational {
    let third = Rational::new(1, 3);
    let common = Rational::from_integer(2 * i64::from(cfg.n_c)) * third
        + Rational::from_integer(i64::from(cfg.n_delta)) * third;
    if cfg.n2 >= cfg.n_e {
        common + Rational::from_integer(i64::from(cfg.n1 - cfg.n_c))
    } else {
        common
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub cfg: ChannelConfig,
    pub r_ach: u64,
    #[serde(with = "crate::ratio_str")]
    pub r_ub: Rational,
    /// Remainder terms; all zero for a singular configuration.
    pub n_q: u32,
    pub q_rem: u32,
    pub q: u32,
    /// `n21 / n11` of the raw gains (the curve axis, may exceed 1); `None`
    /// when `n11 = 0`.
    #[serde(with = "crate::ratio_str::option")]
    pub alpha: Option<Rational>,
    #[serde(with = "crate::ratio_str")]
    pub r_ach_norm: Rational,
    #[serde(with = "crate::ratio_str")]
    pub r_ub_norm: Rational,
    #[serde(with = "crate::ratio_str")]
    pub red_curve_norm: Rational,
}

impl RateReport {
    pub fn n_max(&self) -> u32 {
        self.cfg.n_max()
    }

    /// True when the scheme meets the converse bound exactly.
    pub fn is_tight(&self) -> bool {
        Rational::from_integer(self.r_ach as i64) == self.r_ub
    }
}

pub fn rate_report(cfg: &ChannelConfig) -> RateReport {
    let r_ach = achievable_rate(cfg);
    let r_ub = upper_bound(cfg);
    let rem = remainder_q(cfg.n_c, cfg.n_delta).unwrap_or(Remainder {
        n_q: 0,
        q_rem: 0,
        q: 0,
    });
    let n_max = i64::from(cfg.n_max());
    let norm = |x: Rational| {
        if n_max == 0 {
            Rational::from_integer(0)
        } else {
            x / n_max
        }
    };
    let red = Rational::new(i64::from(cfg.n1 + cfg.n2), 3);
    RateReport {
        cfg: *cfg,
        r_ach,
        r_ub,
        n_q: rem.n_q,
        q_rem: rem.q_rem,
        q: rem.q,
        alpha: (cfg.n11 > 0).then(|| Rational::new(i64::from(cfg.n21), i64::from(cfg.n11))),
        r_ach_norm: norm(Rational::from_integer(r_ach as i64)),
        r_ub_norm: norm(r_ub),
        red_curve_norm: norm(red),
    }
}
