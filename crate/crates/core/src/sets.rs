//! Feature subsets as bitmasks.
//!
//! Features are numbered 1..=m. Feature `i` occupies bit `i-1`, so the
//! natural integer order on masks sorts sets the way the enumeration code
//! wants to emit them. Capacity is bounded by [`crate::HARD_MAX_ARITY`],
//! far below the 32 bits available.

use std::fmt;
use std::ops::{BitAnd, BitOr};

/// A set of features out of 1..=m, packed into a u32.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FeatureSet(u32);

impl FeatureSet {
    pub const EMPTY: FeatureSet = FeatureSet(0);

    /// The full set {1, ..., m}.
    pub fn full(m: usize) -> Self {
        debug_assert!(m <= 32);
        FeatureSet(if m == 32 { u32::MAX } else { (1u32 << m) - 1 })
    }

    /// Builds a set from 1-based feature indices.
    pub fn from_features<I: IntoIterator<Item = usize>>(features: I) -> Self {
        let mut s = FeatureSet::EMPTY;
        for f in features {
            s = s.insert(f);
        }
        s
    }

    pub fn from_mask(mask: u32) -> Self {
        FeatureSet(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn contains(self, feature: usize) -> bool {
        debug_assert!(feature >= 1);
        self.0 >> (feature - 1) & 1 == 1
    }

    #[must_use]
    pub fn insert(self, feature: usize) -> Self {
        debug_assert!((1..=32).contains(&feature));
        FeatureSet(self.0 | 1 << (feature - 1))
    }

    #[must_use]
    pub fn remove(self, feature: usize) -> Self {
        debug_assert!(feature >= 1);
        FeatureSet(self.0 & !(1 << (feature - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: FeatureSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement within {1, ..., m}.
    #[must_use]
    pub fn complement(self, m: usize) -> Self {
        FeatureSet(!self.0 & Self::full(m).0)
    }

    /// Member features in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let bit = rest.trailing_zeros();
                rest &= rest - 1;
                Some(bit as usize + 1)
            }
        })
    }

    /// The mask of this set over truth-table point bits, where feature `i`
    /// maps to point bit `m - i` (feature 1 is the most significant).
    pub(crate) fn point_mask(self, m: usize) -> u32 {
        let mut out = 0u32;
        for f in self.iter() {
            out |= 1 << (m - f);
        }
        out
    }
}

impl BitOr for FeatureSet {
    type Output = FeatureSet;
    fn bitor(self, rhs: FeatureSet) -> FeatureSet {
        FeatureSet(self.0 | rhs.0)
    }
}

impl BitAnd for FeatureSet {
    type Output = FeatureSet;
    fn bitand(self, rhs: FeatureSet) -> FeatureSet {
        FeatureSet(self.0 & rhs.0)
    }
}

impl fmt::Display for FeatureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, feature) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{feature}")?;
        }
        write!(f, "}}")
    }
}
