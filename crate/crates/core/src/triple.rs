use std::fmt;

use serde::{Deserialize, Serialize};

use crate::numtheory::lcm;

/// An ordered triple `(a, b, c)` of positive integers: the candidate indices
/// `[G:H]`, `[G:K]` and `[G:H∩K]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[u64; 3]", into = "[u64; 3]")]
pub struct Triple {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl Triple {
    pub const UNIT: Triple = Triple { a: 1, b: 1, c: 1 };

    pub const fn new(a: u64, b: u64, c: u64) -> Self {
        Triple { a, b, c }
    }

    pub fn is_positive(&self) -> bool {
        self.a >= 1 && self.b >= 1 && self.c >= 1
    }

    pub fn swapped(&self) -> Self {
        Triple::new(self.b, self.a, self.c)
    }

    /// Orientation with `a <= b`, plus whether a swap happened.
    pub fn normalized(&self) -> (Self, bool) {
        if self.a <= self.b {
            (*self, false)
        } else {
            (self.swapped(), true)
        }
    }

    /// `lcm(a, b) | c` and `c <= ab`.
    pub fn passes_necessary(&self) -> bool {
        self.is_positive()
            && self.c.is_multiple_of(lcm(self.a, self.b))
            && (self.c as u128) <= self.a as u128 * self.b as u128
    }

    pub fn times(&self, other: &Triple) -> Triple {
        Triple::new(self.a * other.a, self.b * other.b, self.c * other.c)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl From<[u64; 3]> for Triple {
    fn from(v: [u64; 3]) -> Self {
        Triple::new(v[0], v[1], v[2])
    }
}

impl From<Triple> for [u64; 3] {
    fn from(t: Triple) -> Self {
        [t.a, t.b, t.c]
    }
}
