//! Serde helpers writing exact rationals as `"p/q"` strings (`"p"` when the
//! denominator is one).

use num_rational::Ratio;
use serde::{de, Deserialize, Deserializer, Serializer};

pub fn format(r: &Ratio<i64>) -> String {
    r.to_string()
}

pub fn parse(s: &str) -> Result<Ratio<i64>, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = n.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let d: i64 = d.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if d == 0 {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Ratio::new(n, d))
}

pub fn serialize<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<i64>, D::Error> {
    let s = String::deserialize(d)?;
    parse(&s).map_err(de::Error::custom)
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Ratio<i64>>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.collect_str(r),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Ratio<i64>>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse(&s).map_err(de::Error::custom))
            .transpose()
    }
}
