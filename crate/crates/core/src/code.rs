use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Membership in the five classes, rendered as `PM SM 3CM MM 3*`,
/// e.g. `10111`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ClassCode {
    pub pm: bool,
    pub sm: bool,
    pub cm3: bool,
    pub mm: bool,
    pub star3: bool,
}

impl ClassCode {
    pub const NONE: Self = Self::from_bits([false; 5]);
    pub const ALL: Self = Self::from_bits([true; 5]);

    pub const fn from_bits(bits: [bool; 5]) -> Self {
        Self {
            pm: bits[0],
            sm: bits[1],
            cm3: bits[2],
            mm: bits[3],
            star3: bits[4],
        }
    }

    pub fn bits(&self) -> [bool; 5] {
        [self.pm, self.sm, self.cm3, self.mm, self.star3]
    }

    /// Componentwise AND: the class code of a product of two operators.
    pub fn and(&self, other: &Self) -> Self {
        let (a, b) = (self.bits(), other.bits());
        Self::from_bits(std::array::from_fn(|i| a[i] && b[i]))
    }

    /// Implications that hold for every monotone operator:
    /// SM ⟹ PM, 3CM ⟹ 3*, (3CM ∧ MM) ⟹ PM.
    pub fn is_closed(&self) -> bool {
        (!self.sm || self.pm) && (!self.cm3 || self.star3) && (!(self.cm3 && self.mm) || self.pm)
    }
}

impl fmt::Display for ClassCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for ClassCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let chars: Vec<char> = s.trim().chars().collect();
        if chars.len() != 5 {
            return Err(Error::Argument(format!("class code {s:?} must have 5 digits")));
        }
        let mut bits = [false; 5];
        for (slot, c) in bits.iter_mut().zip(chars) {
            *slot = match c {
                '0' => false,
                '1' => true,
                _ => return Err(Error::Argument(format!("class code {s:?} must be binary"))),
            };
        }
        Ok(Self::from_bits(bits))
    }
}

impl Serialize for ClassCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClassCode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
