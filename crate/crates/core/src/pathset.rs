//! Uncertainty sets: subsets of evader path indices `1..=n` as a bitmask.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest path count a [`PathSet`] can hold.
pub const MAX_PATHS: usize = 128;

/// A set of evader path indices (1-based). Bit `k - 1` stands for path `k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PathSet(u128);

impl PathSet {
    pub const EMPTY: PathSet = PathSet(0);

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_PATHS, "path count {n} exceeds {MAX_PATHS}");
        if n == MAX_PATHS {
            PathSet(u128::MAX)
        } else {
            PathSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(k: usize) -> Self {
        PathSet(Self::bit(k))
    }

    pub fn from_bits(bits: u128) -> Self {
        PathSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    #[inline]
    fn bit(k: usize) -> u128 {
        assert!((1..=MAX_PATHS).contains(&k), "path index {k} out of range");
        1u128 << (k - 1)
    }

    pub fn contains(self, k: usize) -> bool {
        (1..=MAX_PATHS).contains(&k) && self.0 & Self::bit(k) != 0
    }

    pub fn insert(&mut self, k: usize) {
        self.0 |= Self::bit(k);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_singleton(self) -> bool {
        self.0.count_ones() == 1
    }

    /// The only member of a singleton set.
    pub fn only(self) -> Option<usize> {
        self.is_singleton().then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn intersection(self, other: PathSet) -> PathSet {
        PathSet(self.0 & other.0)
    }

    pub fn union(self, other: PathSet) -> PathSet {
        PathSet(self.0 | other.0)
    }

    pub fn difference(self, other: PathSet) -> PathSet {
        PathSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: PathSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Proper, nonempty subset.
    pub fn is_strict_nonempty_subset(self, other: PathSet) -> bool {
        !self.is_empty() && self.is_subset(other) && self != other
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let k = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(k + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Sort key used for deterministic listings: cardinality, then bits.
    pub fn order_key(self) -> (usize, u128) {
        (self.len(), self.0)
    }

    /// Every nonempty subset of `{1..n}`, grouped by ascending cardinality.
    ///
    /// Only meaningful for small `n`; the caller is responsible for keeping
    /// `2^n` in a sane range.
    pub fn lattice(n: usize) -> Vec<PathSet> {
        assert!(n < 64, "full lattice over {n} paths is not enumerable");
        let mut all: Vec<PathSet> = (1u128..(1u128 << n)).map(PathSet).collect();
        all.sort_by_key(|s| s.order_key());
        all
    }
}

impl FromIterator<usize> for PathSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = PathSet::EMPTY;
        for k in iter {
            s.insert(k);
        }
        s
    }
}

impl fmt::Display for PathSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, k) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for PathSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for PathSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for PathSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(deserializer)?;
        if let Some(bad) = members.iter().find(|&&k| k == 0 || k > MAX_PATHS) {
            return Err(serde::de::Error::custom(format!(
                "path index {bad} out of range 1..={MAX_PATHS}"
            )));
        }
        Ok(members.into_iter().collect())
    }
}
