//! Sweep and normalized-curve specifications, from flags or a JSON file.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use ldm_wiretap::ratio_str;
use ldm_wiretap::Rational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

/// A set of gain values: `"3"`, `"1..=10"` / `"1..10"` (both inclusive),
/// `"2,4,7"`, a JSON integer or a JSON array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GainSet(pub Vec<u32>);

impl GainSet {
    pub fn values(&self) -> &[u32] {
        &self.0
    }
}

impl FromStr for GainSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("bad gain {t:?} in {s:?}"));
        if let Some((a, b)) = s.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (num(a)?, num(b)?);
            return Ok(GainSet((a..=b).collect()));
        }
        if s.is_empty() {
            return Ok(GainSet(Vec::new()));
        }
        s.split(',').map(num).collect::<Result<_, _>>().map(GainSet)
    }
}

impl fmt::Display for GainSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl<'de> Deserialize<'de> for GainSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            One(u32),
            Many(Vec<u32>),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::One(v) => Ok(GainSet(vec![v])),
            Raw::Many(v) => Ok(GainSet(v)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl Serialize for GainSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// How the eavesdropper gain is chosen for each row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EveRule {
    Fixed(u32),
    /// `n_e = max(n11, n21)`.
    NMax,
    /// `n_e = min(n11, n21)`, the weaker user.
    NMin,
}

impl EveRule {
    pub fn gain(self, n11: u32, n21: u32) -> u32 {
        match self {
            EveRule::Fixed(v) => v,
            EveRule::NMax => n11.max(n21),
            EveRule::NMin => n11.min(n21),
        }
    }
}

impl FromStr for EveRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "nmax" | "n_max" => Ok(EveRule::NMax),
            "n2" | "min" | "nmin" => Ok(EveRule::NMin),
            t => t
                .parse()
                .map(EveRule::Fixed)
                .map_err(|_| format!("eavesdropper rule must be nmax, n2 or an integer, got {t:?}")),
        }
    }
}

impl fmt::Display for EveRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EveRule::Fixed(v) => write!(f, "{v}"),
            EveRule::NMax => f.write_str("nmax"),
            EveRule::NMin => f.write_str("n2"),
        }
    }
}

impl<'de> Deserialize<'de> for EveRule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(EveRule::Fixed(v)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl Serialize for EveRule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            EveRule::Fixed(v) => s.serialize_u32(*v),
            r => s.collect_str(r),
        }
    }
}

/// A comma-separated list of positive rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphas(pub Vec<Rational>);

pub fn parse_alphas(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(ratio_str::parse)
        .collect()
}

fn de_alphas<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
    let raw = Option::<Vec<String>>::deserialize(d)?;
    raw.map(|v| {
        v.iter()
            .map(|s| ratio_str::parse(s).map_err(serde::de::Error::custom))
            .collect()
    })
    .transpose()
}

/// Everything `sweep` and `fig3` need. Fields absent from a JSON file fall
/// back to the command-line flags and then to defaults.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub n11: Option<GainSet>,
    pub n21: Option<GainSet>,
    pub n22: Option<GainSet>,
    pub n12: Option<GainSet>,
    /// Overrides `n22`/`n12` with a symmetric eavesdropper.
    pub eavesdropper: Option<EveRule>,
    /// Keep only rows with `n21 < n11`.
    #[serde(default)]
    pub n21_below_n11: bool,
    pub n1_fixed: Option<u32>,
    #[serde(default, deserialize_with = "de_alphas")]
    pub alphas: Option<Vec<Rational>>,
    pub output: Option<PathBuf>,
    pub budget: Option<u32>,
}

impl SweepSpec {
    pub fn from_file(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    /// Raw gain quadruples in lexicographic order.
    pub fn sweep_configs(&self) -> Result<Vec<[u32; 4]>, CliError> {
        let need = |g: &Option<GainSet>, name: &str| {
            g.clone()
                .ok_or_else(|| CliError::Usage(format!("sweep needs --{name}")))
        };
        let n11 = need(&self.n11, "n11")?;
        let n21 = need(&self.n21, "n21")?;
        let (n22, n12) = match self.eavesdropper {
            Some(_) => (GainSet(vec![0]), GainSet(vec![0])),
            None => {
                let n22 = need(&self.n22, "n22 (or --ne)")?;
                let n12 = self.n12.clone().unwrap_or_else(|| n22.clone());
                (n22, n12)
            }
        };
        let mut out = Vec::new();
        for &a in n11.values() {
            for &b in n21.values() {
                if self.n21_below_n11 && b >= a {
                    continue;
                }
                match self.eavesdropper {
                    Some(rule) => {
                        let e = rule.gain(a, b);
                        out.push([a, b, e, e]);
                    }
                    None => {
                        for &c in n22.values() {
                            for &d in n12.values() {
                                out.push([a, b, c, d]);
                            }
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn n1_fixed(&self) -> u32 {
        self.n1_fixed.unwrap_or(60)
    }

    /// Default grid `k / n1_fixed`, `k = 1..=2 n1_fixed`.
    pub fn alpha_grid(&self) -> Vec<Rational> {
        let n1 = i64::from(self.n1_fixed());
        self.alphas
            .clone()
            .unwrap_or_else(|| (1..=2 * n1).map(|k| Rational::new(k, n1)).collect())
    }
}
