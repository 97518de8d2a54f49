//! Bit-level vectors over GF(2).
//!
//! Level 1 is the most significant level (the top of the binary expansion).
//! Indexing through [`LevelVector::level`] is 1-based to match that
//! convention; slices and iterators are 0-based as usual.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A fixed-length column of GF(2) bit-levels, top level first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct LevelVector {
    bits: Vec<u8>,
}

impl LevelVector {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidBit(b));
        }
        Ok(Self { bits })
    }

    pub fn zeros(len: usize) -> Self {
        Self { bits: vec![0; len] }
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        Self {
            bits: bits.into_iter().map(u8::from).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        self.bits.iter().copied()
    }

    /// Bit at 1-based `level` (1 = top). Panics when out of range.
    pub fn level(&self, level: usize) -> u8 {
        assert!(
            (1..=self.len()).contains(&level),
            "level {level} out of range 1..={}",
            self.len()
        );
        self.bits[level - 1]
    }

    pub fn set_level(&mut self, level: usize, bit: bool) {
        assert!(
            (1..=self.len()).contains(&level),
            "level {level} out of range 1..={}",
            self.len()
        );
        self.bits[level - 1] = u8::from(bit);
    }

    /// Multiplication by `S^k`: every level moves down by `k`, the top `k`
    /// levels become zero and whatever falls off the bottom is lost.
    pub fn shift_down(&self, k: usize) -> Self {
        let len = self.len();
        let mut bits = vec![0; len];
        if k < len {
            bits[k..].copy_from_slice(&self.bits[..len - k]);
        }
        Self { bits }
    }

    /// Level-wise addition without carries.
    pub fn xor_add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(Self {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// Extends the vector to `len` levels by appending zero levels at the
    /// bottom. The existing levels keep their positions from the top.
    pub fn pad_bottom(&self, len: usize) -> Self {
        let mut bits = self.bits.clone();
        if len > bits.len() {
            bits.resize(len, 0);
        } else {
            bits.truncate(len);
        }
        Self { bits }
    }
}

impl TryFrom<Vec<u8>> for LevelVector {
    type Error = Error;

    fn try_from(bits: Vec<u8>) -> Result<Self> {
        Self::new(bits)
    }
}

impl From<LevelVector> for Vec<u8> {
    fn from(v: LevelVector) -> Self {
        v.bits
    }
}

impl fmt::Display for LevelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Free-function form of [`LevelVector::shift_down`].
pub fn shift_down(v: &LevelVector, k: usize) -> LevelVector {
    v.shift_down(k)
}

/// Free-function form of [`LevelVector::xor_add`].
pub fn xor_add(a: &LevelVector, b: &LevelVector) -> Result<LevelVector> {
    a.xor_add(b)
}
