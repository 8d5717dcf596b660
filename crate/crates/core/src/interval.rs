//! Interval objects on `{0, …, m}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::space::{int_labels, ClosureSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalFamily {
    /// Discrete.
    Bot,
    /// Indiscrete.
    Top,
    /// `c(i) = {j : |i − j| ≤ 1}`.
    Plain,
    /// Edge directions read from the binary digits of `k`.
    Bits(u64),
    /// `c(i) = {j : i ≤ j}`.
    Leq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntervalSpec {
    pub family: IntervalFamily,
    pub length: usize,
}

impl IntervalSpec {
    pub fn new(family: IntervalFamily, length: usize) -> Result<Self> {
        let spec = IntervalSpec { family, length };
        spec.validate()?;
        Ok(spec)
    }

    pub fn bot(length: usize) -> Self {
        IntervalSpec { family: IntervalFamily::Bot, length }
    }

    pub fn top(length: usize) -> Self {
        IntervalSpec { family: IntervalFamily::Top, length }
    }

    pub fn plain(length: usize) -> Self {
        IntervalSpec { family: IntervalFamily::Plain, length }
    }

    pub fn bits(length: usize, k: u64) -> Self {
        IntervalSpec { family: IntervalFamily::Bits(k), length }
    }

    pub fn leq(length: usize) -> Self {
        IntervalSpec { family: IntervalFamily::Leq, length }
    }

    /// `J_1`, the indiscrete pair.
    pub fn j1() -> Self {
        Self::plain(1)
    }

    /// `J_+`: `c(0) = {0,1}`, `c(1) = {1}`.
    pub fn j_plus() -> Self {
        Self::bits(1, 1)
    }

    /// `J_-`: `c(0) = {0}`, `c(1) = {0,1}`.
    pub fn j_minus() -> Self {
        Self::bits(1, 0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.length == 0 {
            return Err(Error::BadParameter("interval length must be positive".into()));
        }
        if let IntervalFamily::Bits(k) = self.family {
            if self.length >= 64 || k >> self.length != 0 {
                return Err(Error::BadParameter(format!(
                    "bit pattern {k} does not fit interval length {}",
                    self.length
                )));
            }
        }
        Ok(())
    }

    /// Index of the top endpoint.
    pub fn top_endpoint(&self) -> usize {
        self.length
    }

    /// Whether the generated interval is symmetric, so that one-step homotopy
    /// along it is a symmetric relation.
    pub fn is_symmetric(&self) -> bool {
        matches!(self.family, IntervalFamily::Bot | IntervalFamily::Top | IntervalFamily::Plain)
    }
}

impl fmt::Display for IntervalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.length;
        match self.family {
            IntervalFamily::Bot => write!(f, "bot:{m}"),
            IntervalFamily::Top => write!(f, "top:{m}"),
            IntervalFamily::Plain => write!(f, "plain:{m}"),
            IntervalFamily::Bits(k) => write!(f, "bits:{m}:{k}"),
            IntervalFamily::Leq => write!(f, "leq:{m}"),
        }
    }
}

impl std::str::FromStr for IntervalSpec {
    type Err = Error;

    /// Accepts `j1`, `j+`, `j-`, or `family:m[:k]` as printed by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "j1" => return Ok(Self::j1()),
            "j+" | "jplus" => return Ok(Self::j_plus()),
            "j-" | "jminus" => return Ok(Self::j_minus()),
            _ => {}
        }
        let parts: Vec<&str> = lower.split(':').collect();
        let bad = || Error::BadParameter(format!("cannot parse interval '{s}'"));
        let m: usize = parts.get(1).ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let family = match (parts[0], parts.len()) {
            ("bot", 2) => IntervalFamily::Bot,
            ("top", 2) => IntervalFamily::Top,
            ("plain", 2) => IntervalFamily::Plain,
            ("leq", 2) => IntervalFamily::Leq,
            ("bits", 3) => IntervalFamily::Bits(parts[2].parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        Self::new(family, m)
    }
}

/// The interval space named by `spec`, with points labelled `0..=m`.
pub fn interval(spec: IntervalSpec) -> Result<ClosureSpace> {
    spec.validate()?;
    let m = spec.length;
    let labels = int_labels(m + 1);
    let space = match spec.family {
        IntervalFamily::Bot => ClosureSpace::discrete(m + 1),
        IntervalFamily::Top => ClosureSpace::indiscrete(m + 1),
        IntervalFamily::Plain => ClosureSpace::from_relation(labels, |i, j| i.abs_diff(j) <= 1)?,
        IntervalFamily::Leq => ClosureSpace::from_relation(labels, |i, j| i <= j)?,
        IntervalFamily::Bits(k) => ClosureSpace::from_relation(labels, |i, j| {
            // Bit b (rightmost is b = 1) orients the edge between b − 1 and b.
            if j + 1 == i {
                (k >> (i - 1)) & 1 == 0
            } else if i + 1 == j {
                (k >> i) & 1 == 1
            } else {
                false
            }
        })?,
    };
    Ok(space)
}
