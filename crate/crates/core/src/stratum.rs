use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;

/// A stratum `H(k1^s1, ..., kr^sr)`: zero orders with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Stratum {
    zeros: BTreeMap<u64, u64>,
}

impl Stratum {
    /// Builds a stratum from `(order, multiplicity)` pairs; the orders must
    /// sum to an even number.
    pub fn new(pairs: impl IntoIterator<Item = (u64, u64)>) -> Result<Self, Error> {
        let s = Self::collect(pairs);
        let total = s.total_order();
        if total % 2 != 0 {
            return Err(Error::StratumParse(format!("total order {total} is odd")));
        }
        Ok(s)
    }

    fn collect(pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut zeros = BTreeMap::new();
        for (k, s) in pairs {
            if k == 0 || s == 0 {
                continue;
            }
            *zeros.entry(k).or_insert(0) += s;
        }
        Stratum { zeros }
    }

    /// Parses zero data without the parity check, so that singularity data
    /// of odd total order can still be reported on.
    pub fn parse_lenient(s: &str) -> Result<Self, Error> {
        parse_pairs(s).map(Self::collect)
    }

    /// Sum of the zero orders, `2g − 2` for a genuine stratum.
    pub fn total_order(&self) -> u64 {
        self.zeros.iter().map(|(k, s)| k * s).sum()
    }

    pub fn uniform(k: u64, l: u64) -> Result<Self, Error> {
        Self::new([(k, l)])
    }

    /// Stratum of a permutation's cycle type: an `ℓ`-cycle is a zero of
    /// order `ℓ − 1`.
    pub fn from_cycle_type(lengths: &[usize]) -> Self {
        let mut zeros = BTreeMap::new();
        for &l in lengths {
            if l >= 2 {
                *zeros.entry(l as u64 - 1).or_insert(0) += 1;
            }
        }
        Stratum { zeros }
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn zeros(&self) -> &BTreeMap<u64, u64> {
        &self.zeros
    }

    pub fn genus(&self) -> u64 {
        self.total_order() / 2 + 1
    }

    /// `(k, ℓ)` when the stratum is `H(k^ℓ)`.
    pub fn as_uniform(&self) -> Option<(u64, u64)> {
        if self.zeros.len() == 1 {
            self.zeros.iter().next().map(|(&k, &s)| (k, s))
        } else {
            None
        }
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .zeros
            .iter()
            .rev()
            .map(|(k, s)| if *s == 1 { k.to_string() } else { format!("{k}^{s}") })
            .collect();
        write!(f, "H({})", parts.join(","))
    }
}

impl FromStr for Stratum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Stratum::new(parse_pairs(s)?)
    }
}

fn parse_pairs(s: &str) -> Result<Vec<(u64, u64)>, Error> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::StratumParse(s.to_string());
    let inner = compact
        .strip_prefix("H(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(bad)?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let mut pairs = Vec::new();
    for part in inner.split(',') {
        let (k, m) = match part.split_once('^') {
            Some((k, m)) => (k, m),
            None => (part, "1"),
        };
        let k: u64 = k.parse().map_err(|_| bad())?;
        let m: u64 = m.parse().map_err(|_| bad())?;
        if k == 0 || m == 0 {
            return Err(bad());
        }
        pairs.push((k, m));
    }
    Ok(pairs)
}

impl Serialize for Stratum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let s: Stratum = "H(10^5)".parse().unwrap();
        assert_eq!(s.as_uniform(), Some((10, 5)));
        assert_eq!(s.genus(), 26);
        assert_eq!(s.to_string(), "H(10^5)");
        let t: Stratum = "H( 1 , 2^1 ,1)".parse().unwrap();
        assert_eq!(t.to_string(), "H(2,1^2)");
        assert!("H(5^5)".parse::<Stratum>().is_err());
        assert!("H(3".parse::<Stratum>().is_err());
    }
}
