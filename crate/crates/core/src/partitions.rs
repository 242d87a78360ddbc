//! Strict partitions, which index the Schubert basis of `OG(n)_0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Strictly decreasing positive parts. The empty list is the zero partition.
///
/// The derived ordering is lexicographic on the part lists, which is the
/// canonical order used by [`all_strict`] and every table built on it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StrictPartition(Vec<u32>);

impl StrictPartition {
    pub fn empty() -> Self {
        StrictPartition(Vec::new())
    }

    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not strictly decreasing"
            )));
        }
        Ok(StrictPartition(parts))
    }

    /// Parses the comma syntax (`"2,1"`); `""` and `"0"` are the empty partition.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "0" {
            return Ok(Self::empty());
        }
        let parts = text
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition part {p:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_valid(&self, m: u32) -> bool {
        is_valid(&self.0, m)
    }

    /// Errors unless every part is at most `m`.
    pub fn check(&self, m: u32) -> Result<()> {
        if self.is_valid(m) {
            Ok(())
        } else {
            Err(Error::InvalidPartition(format!(
                "{self:?} is not in D({m})"
            )))
        }
    }
}

/// True iff `parts` is strictly decreasing, positive and bounded by `m`.
pub fn is_valid(parts: &[u32], m: u32) -> bool {
    parts.iter().all(|&p| p >= 1 && p <= m) && parts.windows(2).all(|w| w[0] > w[1])
}

/// All `2^m` strict partitions with parts at most `m`, in lexicographic order.
pub fn all_strict(m: u32) -> Vec<StrictPartition> {
    let mut out: Vec<StrictPartition> = (0u64..1 << m)
        .map(|mask| {
            StrictPartition(
                (1..=m)
                    .rev()
                    .filter(|&p| mask >> (p - 1) & 1 == 1)
                    .collect(),
            )
        })
        .collect();
    out.sort();
    out
}

/// The staircase `(k, k-1, …, 1)`.
pub fn rho(k: u32) -> StrictPartition {
    StrictPartition((1..=k).rev().collect())
}

/// Poincaré dual: the partition whose parts are `{1..m}` minus the parts of `lambda`.
pub fn dual(lambda: &StrictPartition, m: u32) -> Result<StrictPartition> {
    lambda.check(m)?;
    Ok(StrictPartition(
        (1..=m).rev().filter(|p| !lambda.0.contains(p)).collect(),
    ))
}

/// `½ m (m + 1)`, the dimension of `OG(m + 1)_0`.
pub fn staircase_weight(m: u32) -> u32 {
    m * (m + 1) / 2
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for StrictPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for StrictPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for StrictPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Self::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_small() {
        assert_eq!(all_strict(0), vec![sp(&[])]);
        assert_eq!(all_strict(1), vec![sp(&[]), sp(&[1])]);
        assert_eq!(
            all_strict(2),
            vec![sp(&[]), sp(&[1]), sp(&[2]), sp(&[2, 1])]
        );
        for m in 0..=12 {
            assert_eq!(all_strict(m).len(), 1 << m);
        }
    }

    #[test]
    fn weight_and_length() {
        assert_eq!((sp(&[]).weight(), sp(&[]).length()), (0, 0));
        assert_eq!((sp(&[2, 1]).weight(), sp(&[2, 1]).length()), (3, 2));
        assert_eq!((rho(4).weight(), rho(4).length()), (10, 4));
    }

    #[test]
    fn staircases() {
        assert_eq!(rho(0), sp(&[]));
        assert_eq!(rho(2), sp(&[2, 1]));
        assert_eq!(rho(3).weight(), staircase_weight(3));
    }

    #[test]
    fn duals() {
        assert_eq!(dual(&sp(&[]), 2).unwrap(), sp(&[2, 1]));
        assert_eq!(dual(&sp(&[1]), 2).unwrap(), sp(&[2]));
        assert_eq!(dual(&sp(&[3, 1]), 3).unwrap(), sp(&[2]));
        assert!(matches!(
            dual(&sp(&[3, 1]), 2),
            Err(Error::InvalidPartition(_))
        ));
        for m in 0..=8 {
            for lam in all_strict(m) {
                let d = dual(&lam, m).unwrap();
                assert_eq!(dual(&d, m).unwrap(), lam);
                assert_eq!(lam.weight() + d.weight(), staircase_weight(m));
            }
        }
    }

    #[test]
    fn validity() {
        assert!(!is_valid(&[2, 2], 3));
        assert!(!is_valid(&[3, 1], 2));
        assert!(is_valid(&[2, 1], 2));
        assert!(is_valid(&[], 0));
    }

    #[test]
    fn parsing() {
        assert_eq!(StrictPartition::parse("2,1").unwrap(), sp(&[2, 1]));
        assert_eq!(StrictPartition::parse("").unwrap(), sp(&[]));
        assert_eq!(StrictPartition::parse("0").unwrap(), sp(&[]));
        assert_eq!(StrictPartition::parse(" 3, 1 ").unwrap(), sp(&[3, 1]));
        assert!(StrictPartition::parse("1,2").is_err());
        assert!(StrictPartition::parse("a").is_err());
        assert_eq!(sp(&[3, 2, 1]).to_string(), "3,2,1");
    }
}
