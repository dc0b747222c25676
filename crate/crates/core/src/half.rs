//! Exact half-integers stored as doubled integers.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A half-integer `x / 2`, stored as the integer `x`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Half(pub i64);

impl Half {
    /// Zero.
    pub const ZERO: Half = Half(0);

    /// The half-integer equal to the integer `v`.
    pub fn int(v: i64) -> Half {
        Half(2 * v)
    }

    /// The half-integer `doubled / 2`.
    pub fn from_doubled(doubled: i64) -> Half {
        Half(doubled)
    }

    /// The doubled representation.
    pub fn doubled(self) -> i64 {
        self.0
    }

    /// Value as a float.
    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Smallest integer not below this value.
    pub fn ceil(self) -> i64 {
        self.0.div_euclid(2) + self.0.rem_euclid(2)
    }

    /// Whether the value is an integer.
    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, o: Half) -> Half {
        Half(self.0 + o.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, o: Half) -> Half {
        Half(self.0 - o.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            let sign = if self.0 < 0 { "-" } else { "" };
            write!(f, "{sign}{}.5", self.0.abs() / 2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_and_display() {
        assert_eq!(Half(5).ceil(), 3);
        assert_eq!(Half(4).ceil(), 2);
        assert_eq!(Half(-1).ceil(), 0);
        assert_eq!(Half(-3).ceil(), -1);
        assert_eq!(Half(5).to_string(), "2.5");
        assert_eq!(Half(-1).to_string(), "-0.5");
        assert_eq!(Half(-3).to_string(), "-1.5");
        assert_eq!(Half(-4).to_string(), "-2");
    }
}
