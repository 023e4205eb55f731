use std::fmt;
use std::str::FromStr;

use crate::error::{MapError, Result};

/// Instance families of the test bed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Independent weights uniform in `1..=100`.
    Random,
    /// Sum of pairwise distances `d^{i,j}`, each uniform in `1..=100`.
    Clique,
    /// Clique over points in the plane; the summed distance is rounded.
    Geometric,
    /// Product of per-dimension factors uniform in `1..=10`.
    Product,
    /// Rounded square root of the sum of squared pairwise distances.
    SquareRoot,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Random, Family::Clique, Family::Geometric, Family::Product, Family::SquareRoot];

    pub fn code(self) -> &'static str {
        match self {
            Family::Random => "r",
            Family::Clique => "cq",
            Family::Geometric => "g",
            Family::Product => "p",
            Family::SquareRoot => "sr",
        }
    }

    pub fn from_code(code: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.code() == code)
            .ok_or_else(|| MapError::InvalidArgument(format!("unknown family code {code:?}")))
    }

    /// Weights built from pairwise relations rather than drawn per vector.
    pub fn is_decomposable(self) -> bool {
        self != Family::Random
    }

    /// The smallest weight any vector can have, when the family fixes it.
    pub fn known_min(self) -> Option<crate::Weight> {
        match self {
            Family::Random => Some(1),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// `<s><code><n>`, e.g. `5r40`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InstanceName {
    pub s: usize,
    pub family: Family,
    pub n: usize,
}

impl FromStr for InstanceName {
    type Err = MapError;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || MapError::InvalidArgument(format!("malformed instance name {text:?}"));
        let a = text.find(|c: char| !c.is_ascii_digit()).ok_or_else(bad)?;
        let b = text[a..].find(|c: char| c.is_ascii_digit()).map(|i| a + i).ok_or_else(bad)?;
        let s = text[..a].parse().map_err(|_| bad())?;
        let n = text[b..].parse().map_err(|_| bad())?;
        Ok(InstanceName { s, family: Family::from_code(&text[a..b])?, n })
    }
}

impl fmt::Display for InstanceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.s, self.family.code(), self.n)
    }
}
