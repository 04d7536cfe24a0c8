use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Non-negative rational in lowest terms. Serializes as `"num/den"`
/// (or just `"num"` when the denominator is 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<u64>);

impl Rational {
    /// Panics if `den` is zero.
    pub fn new(num: u64, den: u64) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub fn integer(n: u64) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn add(&self, other: &Rational) -> Rational {
        Rational(self.0 + other.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // pad so width/alignment flags work in tables
        if self.denom() == 1 {
            f.pad(&self.numer().to_string())
        } else {
            f.pad(&format!("{}/{}", self.numer(), self.denom()))
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::InvalidParams(format!("not a fraction: {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: u64 = n.parse().map_err(|_| bad())?;
        let d: u64 = d.parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(Rational::new(n, d))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_on_construction() {
        let r = Rational::new(690, 1680);
        assert_eq!((r.numer(), r.denom()), (23, 56));
        assert_eq!(Rational::new(4, 4), Rational::integer(1));
    }

    #[test]
    fn ordering_is_exact() {
        assert!(Rational::new(2, 3) < Rational::new(667, 1000));
        assert!(Rational::new(2, 3) > Rational::new(666, 1000));
        assert_eq!(Rational::new(4, 6), Rational::new(2, 3));
    }

    #[test]
    fn text_form() {
        assert_eq!(Rational::new(5, 12).to_string(), "5/12");
        assert_eq!(Rational::integer(1).to_string(), "1");
        assert_eq!("10/20".parse::<Rational>().unwrap(), Rational::new(1, 2));
        assert_eq!("1".parse::<Rational>().unwrap(), Rational::integer(1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert_eq!(serde_json::to_string(&Rational::new(3, 12)).unwrap(), "\"1/4\"");
    }
}
