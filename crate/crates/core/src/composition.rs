//! Compositions, the domination order and 2-free normal forms.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Composition> {
        if parts.contains(&0) {
            return Err(Error::BadParams(format!("zero part in {parts:?}")));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Composition> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() {
            return Ok(Composition::default());
        }
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Length of the longest prefix of `a` that `b` dominates (greedy scan).
fn matched(a: &[u32], b: &[u32]) -> usize {
    let mut j = 0;
    for &x in b {
        if j < a.len() && x >= a[j] {
            j += 1;
        }
    }
    j
}

/// True iff `b` has a subsequence of length `a.len()` that is componentwise
/// at least `a` ("`b` dominates `a`").
pub fn dominates(a: &Composition, b: &Composition) -> bool {
    matched(&a.0, &b.0) == a.len()
}

/// All compositions of `n` in lexicographic order.
pub fn compositions(n: u32) -> Vec<Composition> {
    fn rec(n: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if n == 0 {
            out.push(Composition(cur.clone()));
            return;
        }
        for p in 1..=n {
            cur.push(p);
            rec(n - p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// Integer partitions of `k` as weakly decreasing compositions, in
/// reverse lexicographic order.
pub fn integer_partitions(k: u32) -> Vec<Composition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if n == 0 {
            out.push(Composition(cur.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// Integer partitions of `k` with no part equal to 2.
pub fn two_free_partitions(k: u32) -> Vec<Composition> {
    integer_partitions(k).into_iter().filter(|p| !p.0.contains(&2)).collect()
}

/// Number of 2-free integer partitions of `k`.
pub fn xi(k: u32) -> BigUint {
    BigUint::from(two_free_partitions(k).len())
}

/// Count compositions of `n` that dominate `a`: enumeration up to `n = 20`,
/// dynamic programming beyond.
pub fn count_dominating(a: &Composition, n: u32) -> BigUint {
    if n <= 20 {
        count_dominating_enum(a, n)
    } else {
        count_dominating_dp(a, n)
    }
}

/// Enumeration over all `2^{n−1}` compositions, sharded by first part.
pub fn count_dominating_enum(a: &Composition, n: u32) -> BigUint {
    if n == 0 {
        return BigUint::from(a.is_empty() as u32);
    }
    let a = &a.0;
    let total: u64 = (1..=n)
        .into_par_iter()
        .map(|first| {
            let j0 = usize::from(!a.is_empty() && first >= a[0]);
            count_rest(a, n - first, j0)
        })
        .sum();
    BigUint::from(total)
}

fn count_rest(a: &[u32], rem: u32, j: usize) -> u64 {
    if j == a.len() {
        return if rem == 0 { 1 } else { 1u64 << (rem - 1) };
    }
    if rem == 0 {
        return 0;
    }
    // enumerate the remaining compositions as bit masks of cut points
    let mut count = 0u64;
    let cuts = rem - 1;
    for mask in 0u64..(1u64 << cuts) {
        let mut jj = j;
        let mut part = 1u32;
        for bit in 0..cuts {
            if mask >> bit & 1 == 1 {
                if jj < a.len() && part >= a[jj] {
                    jj += 1;
                }
                part = 1;
            } else {
                part += 1;
            }
        }
        if jj < a.len() && part >= a[jj] {
            jj += 1;
        }
        count += (jj == a.len()) as u64;
    }
    count
}

/// Dynamic programme over (remaining size, matched prefix of `a`).
pub fn count_dominating_dp(a: &Composition, n: u32) -> BigUint {
    let a = &a.0;
    let m = a.len();
    let n = n as usize;
    // d[r][j]: compositions of r that complete a[j..] greedily
    let mut d = vec![vec![BigUint::zero(); m + 1]; n + 1];
    for r in 0..=n {
        for j in (0..=m).rev() {
            d[r][j] = if j == m {
                if r == 0 { BigUint::one() } else { BigUint::one() << (r - 1) }
            } else if r == 0 {
                BigUint::zero()
            } else {
                (1..=r).map(|p| &d[r - p][if p as u32 >= a[j] { j + 1 } else { j }]).sum()
            };
        }
    }
    d[n][0].clone()
}

/// True iff `count_dominating` agrees for every `n ≤ max_n`.
pub fn simcomp_check(a: &Composition, a2: &Composition, max_n: u32) -> bool {
    first_separation(a, a2, max_n).is_none()
}

/// Smallest `n ≤ max_n` with different dominator counts.
pub fn first_separation(a: &Composition, a2: &Composition, max_n: u32) -> Option<u32> {
    (0..=max_n).find(|&n| count_dominating(a, n) != count_dominating(a2, n))
}

/// Smallest `i` with `b[..i]` dominating `a`.
fn min_prefix(a: &[u32], b: &[u32]) -> Option<usize> {
    if a.is_empty() {
        return Some(0);
    }
    let mut j = 0;
    for (i, &x) in b.iter().enumerate() {
        if x >= a[j] {
            j += 1;
            if j == a.len() {
                return Some(i + 1);
            }
        }
    }
    None
}

/// Largest `j` with `b[j..]` dominating `a`.
fn max_suffix(a: &[u32], b: &[u32]) -> Option<usize> {
    let ra: Vec<u32> = a.iter().rev().copied().collect();
    let rb: Vec<u32> = b.iter().rev().copied().collect();
    min_prefix(&ra, &rb).map(|i| b.len() - i)
}

/// The bijection of the adjacent-swap lemma: for `b` dominating `a` and
/// `1 ≤ r < a.len()`, reverse the parts of `b` strictly between the minimal
/// prefix dominating `a_1..a_{r−1}` and the maximal suffix dominating
/// `a_{r+2}..a_m`. The image dominates `a` with `a_r`, `a_{r+1}` swapped.
pub fn bijection_multi1(b: &Composition, a: &Composition, r: usize) -> Result<Composition> {
    if r == 0 || r >= a.len() {
        return Err(Error::BadParams(format!("r = {r} for a = {a}")));
    }
    if !dominates(a, b) {
        return Err(Error::NotDominating { a: a.to_string(), b: b.to_string() });
    }
    let (av, bv) = (&a.0, &b.0);
    let i = min_prefix(&av[..r - 1], bv).expect("b dominates a");
    let j = max_suffix(&av[r + 1..], bv).expect("b dominates a");
    let mut out = bv.clone();
    out[i..j].reverse();
    Ok(Composition(out))
}

/// `a` with parts `r` and `r + 1` (1-based) exchanged.
pub fn swap_adjacent(a: &Composition, r: usize) -> Composition {
    let mut v = a.0.clone();
    v.swap(r - 1, r);
    Composition(v)
}

/// `(a_1, …, a_{m−1}, 1, 1)` for `a` ending in 2.
pub fn split_last_two(a: &Composition) -> Result<Composition> {
    match a.0.last() {
        Some(2) => {
            let mut v = a.0[..a.len() - 1].to_vec();
            v.extend([1, 1]);
            Ok(Composition(v))
        }
        _ => Err(Error::PreconditionViolated(format!("{a} does not end in 2"))),
    }
}

/// The bijection of the trailing-2 lemma, from non-dominators of `a` (ending
/// in 2) to non-dominators of `(a_1, …, a_{m−1}, 1, 1)`: when `b` dominates
/// `a_1..a_{m−1}`, the parts after the minimal dominating prefix are merged.
pub fn bijection_multi2(b: &Composition, a: &Composition) -> Result<Composition> {
    split_last_two(a)?;
    if dominates(a, b) {
        return Err(Error::PreconditionViolated(format!("{b} dominates {a}")));
    }
    let head = &a.0[..a.len() - 1];
    match min_prefix(head, &b.0) {
        None => Ok(b.clone()),
        Some(i) if i == b.len() => Ok(b.clone()),
        Some(i) => {
            let mut v = b.0[..i].to_vec();
            v.push(b.0[i..].iter().sum());
            Ok(Composition(v))
        }
    }
}

/// Inverse of [`bijection_multi2`]: split the part after the minimal
/// dominating prefix back into ones.
pub fn bijection_multi2_inverse(b: &Composition, a: &Composition) -> Result<Composition> {
    let a2 = split_last_two(a)?;
    if dominates(&a2, b) {
        return Err(Error::PreconditionViolated(format!("{b} dominates {a2}")));
    }
    let head = &a.0[..a.len() - 1];
    match min_prefix(head, &b.0) {
        Some(i) if i < b.len() => {
            let mut v = b.0[..i].to_vec();
            let rest: u32 = b.0[i..].iter().sum();
            v.extend(std::iter::repeat(1).take(rest as usize));
            Ok(Composition(v))
        }
        _ => Ok(b.clone()),
    }
}

/// Sort decreasingly, replace each 2 by 1,1 and sort again.
pub fn normalize_2free(a: &Composition) -> Composition {
    let mut v: Vec<u32> = a.0.iter().flat_map(|&x| if x == 2 { vec![1, 1] } else { vec![x] }).collect();
    v.sort_unstable_by(|x, y| y.cmp(x));
    Composition(v)
}

/// Outcome of the search for dominator-count collisions.
#[derive(Clone, Debug, Serialize)]
pub struct SimcompSearch {
    pub k: u32,
    pub max_n: u32,
    pub partitions: Vec<Composition>,
    /// Pairs whose counts agree for every `n ≤ max_n`.
    pub collisions: Vec<(Composition, Composition)>,
    /// First separating `n` for every separated pair.
    pub separations: Vec<(Composition, Composition, u32)>,
}

/// Compare every pair of distinct 2-free partitions of `k` by dominator
/// counts up to `max_n`.
pub fn search_simcomp(k: u32, max_n: u32) -> SimcompSearch {
    let parts = two_free_partitions(k);
    let table: Vec<Vec<BigUint>> =
        parts.par_iter().map(|p| (0..=max_n).map(|n| count_dominating(p, n)).collect()).collect();
    let mut collisions = Vec::new();
    let mut separations = Vec::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            match (0..=max_n as usize).find(|&n| table[i][n] != table[j][n]) {
                Some(n) => separations.push((parts[i].clone(), parts[j].clone(), n as u32)),
                None => collisions.push((parts[i].clone(), parts[j].clone())),
            }
        }
    }
    SimcompSearch { k, max_n, partitions: parts, collisions, separations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn domination_examples() {
        assert!(dominates(&c("2,2"), &c("3,1,2")));
        assert!(!dominates(&c("2,2"), &c("2,1,1")));
        assert!(dominates(&c(""), &c("1,1")));
        assert!(dominates(&c(""), &c("")));
    }

    #[test]
    fn dominator_counts() {
        assert_eq!(count_dominating(&c("1"), 3), BigUint::from(4u32));
        assert_eq!(count_dominating(&c("2"), 2), BigUint::from(1u32));
        assert_eq!(count_dominating(&c(""), 0), BigUint::from(1u32));
        assert_eq!(count_dominating(&c("1"), 0), BigUint::zero());
        for n in 0..=14 {
            assert_eq!(count_dominating(&c("2"), n), count_dominating(&c("1,1"), n));
        }
        for a in ["3,1", "1,2,2", "4", "2,3,1", ""] {
            for n in 0..=16 {
                assert_eq!(count_dominating_enum(&c(a), n), count_dominating_dp(&c(a), n), "{a} {n}");
            }
        }
    }

    #[test]
    fn simcomp_examples() {
        assert!(simcomp_check(&c("1,3"), &c("3,1"), 12));
        assert!(simcomp_check(&c("3,2"), &c("3,1,1"), 12));
        assert!(!simcomp_check(&c("3"), &c("1,1,1"), 12));
        assert_eq!(first_separation(&c("3"), &c("1,1,1"), 12), Some(4));
    }

    #[test]
    fn bijection_examples() {
        let out = bijection_multi1(&c("2,1,1,2"), &c("1,2"), 1).unwrap();
        assert!(dominates(&c("2,1"), &out));
        assert_eq!(out.size(), 6);
        assert!(bijection_multi1(&c("1,1"), &c("2,2"), 1).is_err());
        assert_eq!(bijection_multi2(&c("1,1,1"), &c("2")).unwrap(), c("3"));
        assert!(!dominates(&c("1,1"), &c("3")));
        assert!(bijection_multi2(&c("2"), &c("2")).is_err());
        assert!(bijection_multi2(&c("1"), &c("3")).is_err());
    }

    #[test]
    fn normal_forms() {
        assert_eq!(normalize_2free(&c("2,3,2")), c("3,1,1,1,1"));
        assert_eq!(normalize_2free(&c("1,1,1")), c("1,1,1"));
        assert_eq!(normalize_2free(&c("2")), c("1,1"));
        // partitions containing a 2 correspond to partitions of k - 2
        let mut p = [0u64; 21];
        p[0] = 1;
        for part in 1..=20 {
            for n in part..=20 {
                p[n] += p[n - part];
            }
        }
        for k in 0..=20u32 {
            let want = p[k as usize] - if k >= 2 { p[k as usize - 2] } else { 0 };
            assert_eq!(xi(k), BigUint::from(want), "k={k}");
        }
        assert_eq!(xi(6), BigUint::from(6u32));
    }
}
