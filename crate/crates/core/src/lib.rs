//! Linear deterministic model of the two-user multiple access wiretap
//! channel, with a cooperative-jamming signal-scale alignment scheme.
//!
//! * [`level`]: GF(2) bit-level vectors and the shift operator.
//! * [`channel`]: gain configuration, eavesdropper reduction and the channel
//!   transfer.
//! * [`rates`]: closed-form achievable rate and converse bound, exact.
//! * [`scheme`]: the level allocation plan with its encoder and decoder.
//! * [`verify`]: exhaustive equivocation and error-probability oracle.

pub mod channel;
pub mod error;
pub mod level;
pub mod ratio_str;
pub mod rates;
pub mod scheme;
pub mod verify;

pub use channel::{normalize_config, transmit, ChannelConfig, Regime};
pub use error::{Error, Result};
pub use level::{shift_down, xor_add, LevelVector};
pub use rates::{achievable_rate, rate_report, remainder_q, upper_bound, Rational, RateReport, Remainder};
pub use scheme::{build_allocation, AllocationPlan, Defect, LevelRole, User};
pub use verify::{
    equivocation, error_probability, verify_config, verify_config_with, verify_plan, Bits, Enumerator,
    VerificationReport, DEFAULT_BUDGET,
};
