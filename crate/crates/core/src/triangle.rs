//! Triangles of avoider counts refined by the number of blocks and the
//! `fasc` statistic, computed by enumeration.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::enumerate::walk;
use crate::partition::fasc_word;
use crate::pattern::PatternSet;

/// Which triangle a [`FascTriangle`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TriangleVariant {
    /// `a_{n,k,t}`: members of `P_{n,k}(1123,1211)` with `fasc = t`.
    A,
    /// `b_{n,k,t}`: members of `P_{n,k}(1123,111)` with `fasc = t`.
    B,
    /// `c_{n,k,t}`: members of `P_{n,k}(1123,1222)` with `fasc = t` whose
    /// last letter is not 1.
    C,
}

impl TriangleVariant {
    /// The avoided pattern set.
    pub fn patterns(self) -> PatternSet {
        let list = match self {
            TriangleVariant::A => "1123,1211",
            TriangleVariant::B => "1123,111",
            TriangleVariant::C => "1123,1222",
        };
        PatternSet::parse_list(list).expect("static pattern list")
    }
}

impl fmt::Display for TriangleVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Exact values `x_{n,k,t}` for `2 ≤ k ≤ n ≤ max_n`. Only nonzero entries are
/// stored, so two triangles compare equal iff they agree everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FascTriangle {
    pub variant: TriangleVariant,
    pub max_n: usize,
    pub entries: BTreeMap<(usize, usize, usize), BigUint>,
}

impl FascTriangle {
    pub fn new(variant: TriangleVariant, max_n: usize) -> FascTriangle {
        FascTriangle { variant, max_n, entries: BTreeMap::new() }
    }

    pub fn get(&self, n: usize, k: usize, t: usize) -> BigUint {
        self.entries.get(&(n, k, t)).cloned().unwrap_or_else(BigUint::zero)
    }

    /// Store a value, dropping zeros.
    pub fn set(&mut self, n: usize, k: usize, t: usize, v: BigUint) {
        if v.is_zero() {
            self.entries.remove(&(n, k, t));
        } else {
            self.entries.insert((n, k, t), v);
        }
    }

    /// `Σ_t x_{n,k,t}`.
    pub fn row_sum(&self, n: usize, k: usize) -> BigUint {
        self.entries.range((n, k, 0)..=(n, k, usize::MAX)).map(|(_, v)| v).sum()
    }

    /// Entries where the two triangles differ, as `(n, k, t, self, other)`.
    pub fn differences(&self, other: &FascTriangle) -> Vec<(usize, usize, usize, BigUint, BigUint)> {
        let mut keys: Vec<_> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .filter_map(|(n, k, t)| {
                let (x, y) = (self.get(n, k, t), other.get(n, k, t));
                (x != y).then_some((n, k, t, x, y))
            })
            .collect()
    }
}

/// The triangle of `variant` up to `max_n`, by enumerating the avoiders.
pub fn fasc_triangle(variant: TriangleVariant, max_n: usize) -> FascTriangle {
    let mut counts: BTreeMap<(usize, usize, usize), u64> = BTreeMap::new();
    walk(&variant.patterns(), max_n, |w, k| {
        if k < 2 || (variant == TriangleVariant::C && w.last() == Some(&1)) {
            return;
        }
        let t = fasc_word(w).expect("two blocks give an ascent");
        *counts.entry((w.len(), k as usize, t)).or_default() += 1;
    });
    let mut tri = FascTriangle::new(variant, max_n);
    for ((n, k, t), v) in counts {
        tri.set(n, k, t, BigUint::from(v));
    }
    tri
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoted_values() {
        let a = fasc_triangle(TriangleVariant::A, 6);
        assert_eq!(a.get(4, 3, 2), BigUint::from(2u32));
        assert_eq!(a.get(4, 3, 3), BigUint::from(3u32));
        let b = fasc_triangle(TriangleVariant::B, 6);
        assert_eq!(b.get(4, 3, 2), BigUint::from(2u32));
        assert_eq!(b.get(5, 3, 3), BigUint::from(4u32));
        let c = fasc_triangle(TriangleVariant::C, 6);
        assert_eq!(c.get(4, 3, 2), BigUint::from(2u32));
        assert_eq!(c.get(5, 3, 3), BigUint::from(3u32));
    }

    #[test]
    fn entries_stay_in_range() {
        for v in [TriangleVariant::A, TriangleVariant::B, TriangleVariant::C] {
            for &(n, k, t) in fasc_triangle(v, 8).entries.keys() {
                assert!(2 <= k && k <= n && 2 <= t && t <= n - k + 2, "{v} ({n},{k},{t})");
            }
        }
    }
}
