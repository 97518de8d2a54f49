//! Channel configuration and the deterministic channel transfer.
//!
//! The legitimate receiver sees user 1 with `n1` levels and user 2 with `n2`
//! levels; the eavesdropper sees both users with the same `n_e` levels. Every
//! received vector has the common ambient length `q`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::level::LevelVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// `n2 >= n_e`: the bottom `n_p` levels of `Y1` are private.
    Case1,
    /// `n_e > n2`: no private part.
    Case2,
    /// `n1 == n2`: no gain difference to exploit, secrecy rate zero.
    Singular,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Case1 => "Case1",
            Regime::Case2 => "Case2",
            Regime::Singular => "Singular",
        })
    }
}

/// Bit-level gains of the channel, with user roles normalized so that
/// `n1 >= n2` and the eavesdropper reduced to a symmetric gain `n_e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChannelConfig {
    /// Raw gains as supplied, before any role swap.
    pub n11: u32,
    pub n21: u32,
    pub n22: u32,
    pub n12: u32,
    /// True when `n21 > n11` and the two users' roles were exchanged.
    pub swapped: bool,
    pub n1: u32,
    pub n2: u32,
    pub n_e: u32,
    pub n_delta: u32,
    /// Ambient vector length, the largest raw gain.
    pub q: u32,
    /// Common part of `Y1`: its top `n_e + n_delta` levels.
    pub n_c: u32,
    /// Private part of `Y1`, zero outside [`Regime::Case1`].
    pub n_p: u32,
    pub regime: Regime,
}

/// Builds a [`ChannelConfig`] from raw gains.
///
/// An asymmetric eavesdropper is reduced to `n_e = min(n22, n12)`: the levels
/// of the stronger-heard user above the weaker one reach the eavesdropper
/// unjammable and are left unused. If `n21 > n11` the users swap roles.
pub fn normalize_config(n11: u32, n21: u32, n22: u32, n12: u32) -> ChannelConfig {
    let n_e = n22.min(n12);
    let swapped = n21 > n11;
    let (n1, n2) = if swapped { (n21, n11) } else { (n11, n21) };
    let n_delta = n1 - n2;
    let n_c = n_e + n_delta;
    let regime = if n1 == n2 {
        Regime::Singular
    } else if n2 >= n_e {
        Regime::Case1
    } else {
        Regime::Case2
    };
    let n_p = if n2 >= n_e { n1 - n_c } else { 0 };
    ChannelConfig {
        n11,
        n21,
        n22,
        n12,
        swapped,
        n1,
        n2,
        n_e,
        n_delta,
        q: n11.max(n21).max(n22).max(n12),
        n_c,
        n_p,
        regime,
    }
}

impl ChannelConfig {
    /// Shorthand for a symmetric eavesdropper, `n22 = n12 = n_e`.
    pub fn symmetric(n1: u32, n2: u32, n_e: u32) -> Self {
        normalize_config(n1, n2, n_e, n_e)
    }

    pub fn is_singular(&self) -> bool {
        self.regime == Regime::Singular
    }

    /// Largest gain at the legitimate receiver.
    pub fn n_max(&self) -> u32 {
        self.n1
    }

    /// Raw gains in the order `n11, n21, n22, n12`.
    pub fn raw_gains(&self) -> [u32; 4] {
        [self.n11, self.n21, self.n22, self.n12]
    }
}

impl fmt::Display for ChannelConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cfg({},{},{},{}) n1={} n2={} nE={} nΔ={} {}",
            self.n11, self.n21, self.n22, self.n12, self.n1, self.n2, self.n_e, self.n_delta, self.regime
        )
    }
}

/// Pushes a user signal of `n` levels through a link of gain `gain` into a
/// receiver vector of length `q`.
fn link(x: &LevelVector, q: usize, gain: u32) -> LevelVector {
    x.pad_bottom(q).shift_down(q - gain as usize)
}

/// One use of the deterministic channel: returns `(y1, y2)`, both of length
/// `q`. `x1` and `x2` carry `n1` and `n2` levels of the normalized users.
pub fn transmit(
    cfg: &ChannelConfig,
    x1: &LevelVector,
    x2: &LevelVector,
) -> Result<(LevelVector, LevelVector)> {
    for (x, n) in [(x1, cfg.n1), (x2, cfg.n2)] {
        if x.len() != n as usize {
            return Err(Error::LengthMismatch {
                expected: n as usize,
                actual: x.len(),
            });
        }
    }
    let q = cfg.q as usize;
    let y1 = link(x1, q, cfg.n1).xor_add(&link(x2, q, cfg.n2))?;
    let y2 = link(x2, q, cfg.n_e).xor_add(&link(x1, q, cfg.n_e))?;
    Ok((y1, y2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lv(bits: &[u8]) -> LevelVector {
        LevelVector::new(bits.to_vec()).unwrap()
    }

    #[test]
    fn normalize_case1_example() {
        let cfg = normalize_config(7, 6, 3, 3);
        assert_eq!(
            (cfg.n1, cfg.n2, cfg.n_e, cfg.n_delta, cfg.q, cfg.n_c, cfg.n_p),
            (7, 6, 3, 1, 7, 4, 3)
        );
        assert_eq!(cfg.regime, Regime::Case1);
        assert!(!cfg.swapped);
    }

    #[test]
    fn normalize_singular() {
        assert_eq!(normalize_config(6, 6, 4, 4).regime, Regime::Singular);
    }

    #[test]
    fn normalize_swaps_roles() {
        let cfg = normalize_config(5, 6, 3, 3);
        assert!(cfg.swapped);
        assert_eq!((cfg.n1, cfg.n2), (6, 5));
    }

    #[test]
    fn asymmetric_eavesdropper_reduces_to_min() {
        let cfg = normalize_config(7, 6, 5, 3);
        assert_eq!(cfg.n_e, 3);
        assert_eq!(cfg.q, 7);
        let cfg = normalize_config(4, 2, 9, 3);
        assert_eq!(cfg.n_e, 3);
        assert_eq!(cfg.q, 9);
        assert_eq!(cfg.regime, Regime::Case2);
    }

    #[test]
    fn transmit_zero_inputs() {
        let cfg = ChannelConfig::symmetric(5, 3, 4);
        let (y1, y2) = transmit(&cfg, &LevelVector::zeros(5), &LevelVector::zeros(3)).unwrap();
        assert!(y1.is_zero() && y2.is_zero());
        assert_eq!(y1.len(), 5);
    }

    #[test]
    fn transmit_small_example() {
        let cfg = ChannelConfig::symmetric(2, 1, 1);
        let (y1, y2) = transmit(&cfg, &lv(&[1, 1]), &lv(&[1])).unwrap();
        assert_eq!(y1, lv(&[1, 0]));
        assert_eq!(y2, lv(&[0, 0]));
    }

    #[test]
    fn transmit_single_user() {
        let cfg = ChannelConfig::symmetric(4, 2, 6);
        let x1 = lv(&[1, 0, 1, 1]);
        let (y1, _) = transmit(&cfg, &x1, &LevelVector::zeros(2)).unwrap();
        assert_eq!(y1, x1.pad_bottom(6).shift_down(2));
    }

    #[test]
    fn transmit_length_mismatch() {
        let cfg = ChannelConfig::symmetric(3, 2, 2);
        assert!(matches!(
            transmit(&cfg, &LevelVector::zeros(2), &LevelVector::zeros(2)),
            Err(Error::LengthMismatch { expected: 3, actual: 2 })
        ));
    }

    fn arb_cfg() -> impl Strategy<Value = ChannelConfig> {
        (0u32..10, 0u32..10, 0u32..10, 0u32..10).prop_map(|(a, b, c, d)| normalize_config(a, b, c, d))
    }

    fn arb_inputs(cfg: ChannelConfig) -> impl Strategy<Value = (ChannelConfig, LevelVector, LevelVector)> {
        (
            proptest::collection::vec(any::<bool>(), cfg.n1 as usize),
            proptest::collection::vec(any::<bool>(), cfg.n2 as usize),
        )
            .prop_map(move |(a, b)| (cfg, LevelVector::from_bools(a), LevelVector::from_bools(b)))
    }

    proptest! {
        #[test]
        fn normalize_invariants(cfg in arb_cfg()) {
            prop_assert!(cfg.n1 >= cfg.n2);
            prop_assert_eq!(cfg.q, *cfg.raw_gains().iter().max().unwrap());
            prop_assert_eq!(cfg.n_c, cfg.n_e + cfg.n_delta);
            if cfg.n2 >= cfg.n_e {
                prop_assert_eq!(cfg.n_p, cfg.n1 - cfg.n_c);
            } else {
                prop_assert_eq!(cfg.n_p, 0);
            }
            prop_assert_eq!(cfg.regime == Regime::Singular, cfg.n1 == cfg.n2);
        }

        #[test]
        fn normalize_idempotent(cfg in arb_cfg()) {
            let again = normalize_config(cfg.n1, cfg.n2, cfg.n_e, cfg.n_e);
            prop_assert!(!again.swapped);
            prop_assert_eq!(
                (again.n1, again.n2, again.n_e, again.n_delta, again.n_c, again.n_p, again.regime),
                (cfg.n1, cfg.n2, cfg.n_e, cfg.n_delta, cfg.n_c, cfg.n_p, cfg.regime)
            );
            let twice = normalize_config(cfg.n11, cfg.n21, cfg.n22, cfg.n12);
            prop_assert_eq!(twice, cfg);
        }

        #[test]
        fn transmit_is_linear(
            ((cfg, a, b), (a2, b2)) in arb_cfg().prop_flat_map(|cfg| (
                arb_inputs(cfg),
                arb_inputs(cfg).prop_map(|(_, x, y)| (x, y)),
            ))
        ) {
            let (y1, y2) = transmit(&cfg, &a.xor_add(&a2).unwrap(), &b.xor_add(&b2).unwrap()).unwrap();
            let (p1, p2) = transmit(&cfg, &a, &b).unwrap();
            let (r1, r2) = transmit(&cfg, &a2, &b2).unwrap();
            prop_assert_eq!(y1, p1.xor_add(&r1).unwrap());
            prop_assert_eq!(y2, p2.xor_add(&r2).unwrap());
        }

        #[test]
        fn levels_above_noise_floor_are_zero((cfg, a, b) in arb_cfg().prop_flat_map(arb_inputs)) {
            let (y1_own, _) = transmit(&cfg, &a, &LevelVector::zeros(cfg.n2 as usize)).unwrap();
            let (_, y2) = transmit(&cfg, &a, &b).unwrap();
            let q = cfg.q as usize;
            prop_assert!(y1_own.as_slice()[..q - cfg.n1 as usize].iter().all(|&v| v == 0));
            prop_assert!(y2.as_slice()[..q - cfg.n_e as usize].iter().all(|&v| v == 0));
        }
    }
}
