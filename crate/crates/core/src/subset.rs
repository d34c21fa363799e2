//! Ground sets and subsets encoded as bitmasks.
//!
//! Elements are numbered `1..=n` in every external representation (JSON, CLI
//! output, `Display`) and occupy bit positions `0..n` internally. The two
//! conversions below are the only places that translate between them.

use std::fmt;

use crate::error::{Error, Result};

/// Largest ground set a [`Subset`] can represent.
pub const MAX_ELEMENTS: usize = 63;
/// Largest ground set accepted by exhaustive enumeration.
pub const MAX_ENUMERATION: usize = 20;

/// Ground set `V = {1, .., n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::Capability {
                what: "ground set size",
                size: n,
                limit: MAX_ELEMENTS,
            });
        }
        Ok(Self { n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }

    /// All `2^n` subsets in increasing mask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..1u64 << self.n).map(Subset)
    }
}

/// Subset of the ground set; bit `i` set means element `i + 1` is present.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Self {
        if n == 0 {
            Subset(0)
        } else {
            Subset(u64::MAX >> (64 - n))
        }
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Subset(indices.into_iter().fold(0, |acc, i| acc | 1 << i))
    }

    /// Builds a subset from 1-based element labels, checking them against `n`.
    pub fn from_elements(elements: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::Invalid(format!("element {e} outside 1..={n}")));
            }
            bits |= 1 << (e - 1);
        }
        Ok(Subset(bits))
    }

    /// 1-based element labels in increasing order.
    pub fn to_elements(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Whether only the low `n` bits are set.
    pub fn fits(self, n: usize) -> bool {
        self.is_subset_of(Subset::full(n))
    }

    /// Indices (0-based) of the members, increasing.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, in increasing mask order, starting with the empty set.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Subset(cur))
        })
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.to_elements().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Serialized as the sorted list of 1-based elements.
impl serde::Serialize for Subset {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.to_elements())
    }
}
