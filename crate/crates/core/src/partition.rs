//! Set partitions in canonical sequential form (restricted growth words).
//!
//! A partition of `[n]` is stored as the word `π_1 ⋯ π_n` where `π_j` is the
//! index of the block containing `j`, blocks being numbered by their minima.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// True iff `word` is a restricted growth word: it starts with 1 and every
/// letter is at most one more than the maximum of the letters before it.
/// The empty word is valid.
pub fn validate_rgs(word: &[u32]) -> bool {
    let mut max = 0u32;
    for &c in word {
        if c == 0 || c > max + 1 {
            return false;
        }
        max = max.max(c);
    }
    true
}

/// A set partition as a restricted growth word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rgs {
    word: Vec<u8>,
    blocks: u8,
}

impl Rgs {
    /// Validate and wrap a word.
    pub fn new(word: Vec<u8>) -> Result<Rgs> {
        let mut max = 0u8;
        for &c in &word {
            if c == 0 || c > max.saturating_add(1) || (max == u8::MAX && c > max) {
                return Err(Error::InvalidRgs(format_word(&word)));
            }
            max = max.max(c);
        }
        Ok(Rgs { word, blocks: max })
    }

    /// Wrap a word the caller knows to be valid.
    pub(crate) fn from_valid(word: Vec<u8>) -> Rgs {
        debug_assert!(Rgs::new(word.clone()).is_ok());
        let blocks = word.iter().copied().max().unwrap_or(0);
        Rgs { word, blocks }
    }

    pub fn empty() -> Rgs {
        Rgs::default()
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks as usize
    }

    /// Size of each block, in block order.
    pub fn block_sizes(&self) -> Vec<usize> {
        block_sizes(&self.word)
    }

    /// `max_prefix()[i]` is the maximum of the first `i` letters.
    pub fn max_prefix(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.word.len() + 1);
        let mut m = 0;
        out.push(0);
        for &c in &self.word {
            m = m.max(c);
            out.push(m);
        }
        out
    }

    /// Blocks as sets of 1-based positions, in standard order.
    pub fn to_blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (i, &c) in self.word.iter().enumerate() {
            blocks[c as usize - 1].push(i + 1);
        }
        blocks
    }

    /// `self[other]`: `other` shifted above every symbol of `self`, appended.
    pub fn bracket(&self, other: &Rgs) -> Rgs {
        let mut word = self.word.clone();
        word.extend(other.word.iter().map(|&c| c + self.blocks));
        Rgs::from_valid(word)
    }

    /// A copy with every symbol increased by `k` (no longer an RGS unless `k = 0`).
    pub fn shifted(&self, k: u8) -> Vec<u8> {
        self.word.iter().map(|&c| c + k).collect()
    }
}

/// Canonical word of a block cover of `[n]` given in any order.
pub fn from_blocks(blocks: &[Vec<usize>]) -> Result<Rgs> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut word = vec![0u8; n];
    let mut order: Vec<&Vec<usize>> = blocks.iter().collect();
    if order.iter().any(|b| b.is_empty()) {
        return Err(Error::InvalidBlockCover("empty block".into()));
    }
    order.sort_by_key(|b| *b.iter().min().unwrap());
    if order.len() > u8::MAX as usize {
        return Err(Error::InvalidBlockCover("too many blocks".into()));
    }
    for (idx, block) in order.iter().enumerate() {
        for &x in block.iter() {
            if x == 0 || x > n {
                return Err(Error::InvalidBlockCover(format!("element {x} outside [1,{n}]")));
            }
            if word[x - 1] != 0 {
                return Err(Error::InvalidBlockCover(format!("element {x} repeated")));
            }
            word[x - 1] = idx as u8 + 1;
        }
    }
    Ok(Rgs::from_valid(word))
}

pub(crate) fn block_sizes(word: &[u8]) -> Vec<usize> {
    let k = word.iter().copied().max().unwrap_or(0) as usize;
    let mut sizes = vec![0; k];
    for &c in word {
        sizes[c as usize - 1] += 1;
    }
    sizes
}

/// True iff the word has no occurrence of 1212.
pub fn is_noncrossing(word: &[u8]) -> bool {
    // A crossing is a < b with first(b) < k < l, word[k] = a, word[l] = b.
    let mut first = [usize::MAX; 256];
    for (i, &c) in word.iter().enumerate() {
        if first[c as usize] == usize::MAX {
            first[c as usize] = i;
        }
    }
    for l in 0..word.len() {
        let b = word[l];
        let f = first[b as usize];
        if f < l && word[f + 1..l].iter().any(|&a| a < b) {
            return false;
        }
    }
    true
}

/// Factor `p = σ_1[σ_2]⋯[σ_m]` into connected pieces.
///
/// A boundary sits after position `i` iff every later symbol exceeds every
/// earlier one. The same rule is applied to crossing partitions.
pub fn components(p: &Rgs) -> Vec<Rgs> {
    let w = p.word();
    let n = w.len();
    let mut suffix_min = vec![u8::MAX; n + 1];
    for i in (0..n).rev() {
        suffix_min[i] = suffix_min[i + 1].min(w[i]);
    }
    let mut out = Vec::new();
    let mut start = 0;
    let mut offset = 0u8;
    let mut max = 0u8;
    for i in 0..n {
        max = max.max(w[i]);
        if i + 1 == n || suffix_min[i + 1] > max {
            out.push(Rgs::from_valid(w[start..=i].iter().map(|&c| c - offset).collect()));
            start = i + 1;
            offset = max;
        }
    }
    out
}

/// True iff `p` is nonempty and has exactly one component.
pub fn is_connected(p: &Rgs) -> bool {
    components(p).len() == 1
}

/// `n - m + 1`, where `m` is the 1-based position of the last ascent.
pub fn fasc(p: &Rgs) -> Result<usize> {
    fasc_word(p.word()).ok_or_else(|| Error::NoAscent(p.to_string()))
}

pub(crate) fn fasc_word(w: &[u8]) -> Option<usize> {
    let n = w.len();
    (1..n).rev().find(|&i| w[i - 1] < w[i]).map(|i| n - i + 1)
}

fn format_word(word: &[u8]) -> String {
    if word.iter().all(|&c| c <= 9) {
        word.iter().map(|&c| char::from(b'0' + c)).collect()
    } else {
        word.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Rgs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(&self.word))
    }
}

impl fmt::Debug for Rgs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rgs({self})")
    }
}

impl FromStr for Rgs {
    type Err = Error;

    /// Digits (`1212`) when every symbol is at most 9, otherwise comma
    /// separated symbols (`1,2,3,10,2`), optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Rgs> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t).trim();
        let bad = || Error::Parse(s.to_string());
        let word: Vec<u8> = if t.contains(',') {
            t.split(',').map(|x| x.trim().parse::<u8>().map_err(|_| bad())).collect::<Result<_>>()?
        } else {
            t.chars().map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad)).collect::<Result<_>>()?
        };
        Rgs::new(word)
    }
}

impl Serialize for Rgs {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Serialize a big integer as a JSON number when it fits in `u64`, else as a string.
pub(crate) fn ser_big<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

fn ser_big_vec<S: Serializer>(xs: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct Big<'a>(&'a BigUint);
    impl Serialize for Big<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            ser_big(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&Big(x))?;
    }
    seq.end()
}

/// Exact avoider counts `p_0, …, p_N` for one pattern set.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct CountVector {
    #[serde(serialize_with = "ser_big_vec")]
    pub counts: Vec<BigUint>,
}

impl CountVector {
    pub fn from_u64(counts: &[u64]) -> CountVector {
        CountVector { counts: counts.iter().map(|&c| BigUint::from(c)).collect() }
    }

    pub fn max_n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn get(&self, n: usize) -> &BigUint {
        &self.counts[n]
    }

    /// The first `n` at which the two vectors differ, over their common range.
    pub fn first_difference(&self, other: &CountVector) -> Option<usize> {
        self.counts.iter().zip(&other.counts).position(|(a, b)| a != b)
    }

    pub fn truncated(&self, max_n: usize) -> CountVector {
        CountVector { counts: self.counts[..=max_n.min(self.max_n())].to_vec() }
    }
}

/// Avoider counts indexed by size and number of blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountTable {
    /// `rows[n][k]` for `0 ≤ k ≤ n`.
    pub rows: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn get(&self, n: usize, k: usize) -> BigUint {
        self.rows.get(n).and_then(|r| r.get(k)).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// Collapse the block index.
    pub fn row_sums(&self) -> CountVector {
        CountVector { counts: self.rows.iter().map(|r| r.iter().sum()).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rgs {
        s.parse().unwrap()
    }

    #[test]
    fn validation() {
        assert!(validate_rgs(&[]));
        assert!(validate_rgs(&[1, 2, 1, 3, 2, 4, 3, 1]));
        assert!(!validate_rgs(&[1, 3]));
        assert!(!validate_rgs(&[2]));
        assert!(!validate_rgs(&[0, 1]));
    }

    #[test]
    fn blocks_round_trip() {
        let p = from_blocks(&[vec![1, 3, 8], vec![2, 5], vec![4, 7], vec![6]]).unwrap();
        assert_eq!(p.to_string(), "12132431");
        assert_eq!(from_blocks(&[vec![1]]).unwrap().to_string(), "1");
        assert_eq!(from_blocks(&[vec![2, 3], vec![1]]).unwrap().to_string(), "122");
        assert_eq!(p.to_blocks(), vec![vec![1, 3, 8], vec![2, 5], vec![4, 7], vec![6]]);
        assert!(from_blocks(&[vec![1, 2], vec![2]]).is_err());
        assert!(from_blocks(&[vec![1, 3]]).is_err());
    }

    #[test]
    fn literals() {
        assert_eq!(r("1,2,3,4,5,6,7,8,9,10,2").to_string(), "1,2,3,4,5,6,7,8,9,10,2");
        assert_eq!(r("(1,2,1)").to_string(), "121");
        assert!("13".parse::<Rgs>().is_err());
        assert!("1x".parse::<Rgs>().is_err());
        assert_eq!(r("").len(), 0);
    }

    #[test]
    fn noncrossing() {
        assert!(!is_noncrossing(r("1212").word()));
        assert!(!is_noncrossing(r("12132431").word()));
        assert!(is_noncrossing(r("12332").word()));
        assert!(is_noncrossing(r("1221").word()));
    }

    #[test]
    fn component_split() {
        let show = |s: &str| components(&r(s)).iter().map(|c| c.to_string()).collect::<Vec<_>>();
        assert_eq!(show("1122"), ["11", "11"]);
        assert_eq!(show("121"), ["121"]);
        assert!(show("").is_empty());
        assert_eq!(show("11232445"), ["11", "121", "11", "1"]);
    }

    #[test]
    fn fasc_values() {
        assert_eq!(fasc(&r("123241355311")).unwrap(), 6);
        assert_eq!(fasc(&r("12")).unwrap(), 2);
        assert_eq!(fasc(&r("1223")).unwrap(), 2);
        assert_eq!(fasc(&r("1213")).unwrap(), 2);
        assert_eq!(fasc(&r("1231")).unwrap(), 3);
        assert!(matches!(fasc(&r("111")), Err(Error::NoAscent(_))));
    }
}
