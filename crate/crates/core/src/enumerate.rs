//! Depth-first enumeration of pattern avoiders.
//!
//! Words are extended one letter at a time in lexicographic order. For each
//! pattern the set of partial matches reachable in the current prefix is
//! kept up to date, so a new letter costs one pass over the states that can
//! use it. A partial match remembers how many pattern letters are matched,
//! the host values of the pattern symbols that still occur later in the
//! pattern, and the largest value used so far (new pattern symbols must map
//! above it).

use std::collections::{BTreeMap, HashSet};
use std::hash::{BuildHasherDefault, Hasher};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::partition::{block_sizes, CountTable, CountVector};
use crate::pattern::PatternSet;

/// Largest host length the packed state encoding supports.
pub const MAX_HOST_LEN: usize = 31;
const FIELD: u32 = 5;
const MASK: u128 = 31;
const FRESH: u8 = u8::MAX;

#[derive(Default, Clone, Copy)]
struct FxHasher(u64);

impl Hasher for FxHasher {
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.add(b as u64);
        }
    }
    fn write_u128(&mut self, x: u128) {
        self.add(x as u64);
        self.add((x >> 64) as u64);
    }
    fn finish(&self) -> u64 {
        self.0
    }
}

impl FxHasher {
    #[inline]
    fn add(&mut self, x: u64) {
        self.0 = (self.0.rotate_left(5) ^ x).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
    }
}

type StateSet = HashSet<u128, BuildHasherDefault<FxHasher>>;

#[derive(Clone, Debug)]
struct Step {
    /// The next pattern letter is a symbol not seen before.
    fresh: bool,
    /// Otherwise, its slot among the remembered values.
    slot: usize,
    /// Source of each remembered value after the step: an old slot, or the
    /// letter just read.
    next: Vec<Option<usize>>,
    /// The state after the step still needs the largest used value.
    keep_top: bool,
}

#[derive(Clone, Debug)]
struct Automaton {
    len: usize,
    steps: Vec<Step>,
}

#[inline]
fn field(key: u128, i: usize) -> u8 {
    ((key >> (2 * FIELD as usize + FIELD as usize * i)) & MASK) as u8
}

impl Automaton {
    fn new(pat: &[u8]) -> Automaton {
        let k = pat.len();
        let mut m = vec![0u8; k + 1];
        for j in 0..k {
            m[j + 1] = m[j].max(pat[j]);
        }
        let live: Vec<Vec<u8>> =
            (0..=k).map(|j| (1..=m[j]).filter(|s| pat[j..].contains(s)).collect()).collect();
        let widest = live.iter().map(Vec::len).max().unwrap_or(0);
        assert!(k < 32 && 2 + widest <= 25, "pattern too large for the packed automaton");
        let steps = (0..k)
            .map(|j| {
                let sym = pat[j];
                let fresh = sym > m[j];
                let pos = |x: u8| live[j].iter().position(|&y| y == x);
                Step {
                    fresh,
                    slot: if fresh { 0 } else { pos(sym).unwrap() },
                    next: live[j + 1].iter().map(|&x| if fresh && x == sym { None } else { pos(x) }).collect(),
                    keep_top: m[k] > m[j + 1],
                }
            })
            .collect();
        Automaton { len: k, steps }
    }

    /// Successor of `key` on host letter `c`, if the letter extends the match.
    #[inline]
    fn advance(&self, key: u128, c: u8) -> Option<u128> {
        let j = (key & MASK) as usize;
        let st = &self.steps[j];
        let top = ((key >> FIELD) & MASK) as u8;
        if st.fresh {
            if c <= top {
                return None;
            }
        } else if field(key, st.slot) != c {
            return None;
        }
        let mut nk = (j + 1) as u128;
        if st.keep_top {
            nk |= ((if st.fresh { c } else { top }) as u128) << FIELD;
        }
        for (i, src) in st.next.iter().enumerate() {
            let v = match src {
                Some(s) => field(key, *s),
                None => c,
            };
            nk |= (v as u128) << (2 * FIELD as usize + FIELD as usize * i);
        }
        Some(nk)
    }

    fn bucket(&self, key: u128) -> u8 {
        let st = &self.steps[(key & MASK) as usize];
        if st.fresh {
            FRESH
        } else {
            field(key, st.slot)
        }
    }
}

struct Tracker {
    auto: Automaton,
    seen: StateSet,
    need: Vec<Vec<u128>>,
    fresh: Vec<u128>,
    log: Vec<(u128, u8)>,
}

impl Tracker {
    fn new(pat: &[u8]) -> Tracker {
        let mut t = Tracker {
            auto: Automaton::new(pat),
            seen: StateSet::default(),
            need: vec![Vec::new(); 32],
            fresh: Vec::new(),
            log: Vec::new(),
        };
        t.insert(0);
        t
    }

    fn insert(&mut self, key: u128) {
        if self.seen.insert(key) {
            let b = self.auto.bucket(key);
            if b == FRESH {
                self.fresh.push(key);
            } else {
                self.need[b as usize].push(key);
            }
            self.log.push((key, b));
        }
    }

    /// Collect successors on `c` into `buf`; false if the pattern completes.
    fn successors(&self, c: u8, buf: &mut Vec<u128>) -> bool {
        buf.clear();
        let done = self.auto.len as u128;
        for &key in &self.need[c as usize] {
            let nk = self.auto.advance(key, c).expect("bucketed by required letter");
            if nk & MASK == done {
                return false;
            }
            buf.push(nk);
        }
        for &key in &self.fresh {
            if let Some(nk) = self.auto.advance(key, c) {
                if nk & MASK == done {
                    return false;
                }
                buf.push(nk);
            }
        }
        true
    }

    fn rollback(&mut self, mark: usize) {
        while self.log.len() > mark {
            let (key, b) = self.log.pop().unwrap();
            self.seen.remove(&key);
            if b == FRESH {
                self.fresh.pop();
            } else {
                self.need[b as usize].pop();
            }
        }
    }
}

/// Incremental avoidance state for a growing restricted growth word.
pub struct Avoider {
    trackers: Vec<Tracker>,
    marks: Vec<usize>,
    buf: Vec<u128>,
    word: Vec<u8>,
    max: u8,
    max_stack: Vec<u8>,
}

impl Avoider {
    pub fn new(patterns: &PatternSet) -> Avoider {
        let min = patterns.minimal();
        Avoider {
            trackers: min.patterns().iter().map(|p| Tracker::new(p.word())).collect(),
            marks: Vec::new(),
            buf: Vec::new(),
            word: Vec::new(),
            max: 0,
            max_stack: Vec::new(),
        }
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// Largest letter of the current word.
    pub fn max(&self) -> u8 {
        self.max
    }

    /// Append `c` if the result still avoids every pattern.
    pub fn push(&mut self, c: u8) -> bool {
        assert!(self.word.len() < MAX_HOST_LEN && c >= 1 && c <= self.max + 1);
        let base = self.marks.len();
        for t in &self.trackers {
            self.marks.push(t.log.len());
        }
        for i in 0..self.trackers.len() {
            if !self.trackers[i].successors(c, &mut self.buf) {
                for (t, &m) in self.trackers.iter_mut().zip(&self.marks[base..]).take(i) {
                    t.rollback(m);
                }
                self.marks.truncate(base);
                return false;
            }
            for &nk in &self.buf {
                self.trackers[i].insert(nk);
            }
        }
        self.word.push(c);
        self.max_stack.push(self.max);
        self.max = self.max.max(c);
        true
    }

    /// Undo the last successful `push`.
    pub fn pop(&mut self) {
        let base = self.marks.len() - self.trackers.len();
        for (t, &m) in self.trackers.iter_mut().zip(&self.marks[base..]) {
            t.rollback(m);
        }
        self.marks.truncate(base);
        self.word.pop();
        self.max = self.max_stack.pop().unwrap();
    }
}

fn dfs<F: FnMut(&[u8], u8)>(av: &mut Avoider, max_n: usize, f: &mut F) {
    f(&av.word, av.max);
    if av.word.len() == max_n {
        return;
    }
    for c in 1..=av.max + 1 {
        if av.push(c) {
            dfs(av, max_n, f);
            av.pop();
        }
    }
}

/// Visit every avoider of length at most `max_n` that extends `prefix`
/// (the prefix included), in lexicographic order. The callback receives the
/// word and its number of blocks. Nothing is visited if the prefix itself
/// contains a pattern.
pub fn walk_from<F: FnMut(&[u8], u8)>(patterns: &PatternSet, prefix: &[u8], max_n: usize, mut f: F) {
    assert!(max_n <= MAX_HOST_LEN, "host length above {MAX_HOST_LEN}");
    let mut av = Avoider::new(patterns);
    for &c in prefix {
        if c == 0 || c > av.max + 1 || !av.push(c) {
            return;
        }
    }
    if prefix.len() <= max_n {
        dfs(&mut av, max_n, &mut f);
    }
}

/// Visit every avoider of length at most `max_n` in lexicographic order.
pub fn walk<F: FnMut(&[u8], u8)>(patterns: &PatternSet, max_n: usize, f: F) {
    walk_from(patterns, &[], max_n, f)
}

/// Visit each member of `P_n(patterns)` once, in lexicographic order.
pub fn enumerate_avoiders<F: FnMut(&[u8])>(patterns: &PatternSet, n: usize, mut sink: F) {
    walk(patterns, n, |w, _| {
        if w.len() == n {
            sink(w)
        }
    })
}

/// Avoiders of exactly `depth` letters, in lexicographic order: the shard
/// roots for a parallel walk.
pub fn shard_prefixes(patterns: &PatternSet, depth: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    enumerate_avoiders(patterns, depth, |w| out.push(w.to_vec()));
    out
}

/// `counts[n] = |P_n(patterns)|` for `n ≤ max_n`.
pub fn count_avoiders(patterns: &PatternSet, max_n: usize) -> CountVector {
    count_avoiders_where(patterns, max_n, |_| true)
}

/// Count avoiders that also satisfy `keep`.
pub fn count_avoiders_where<P: Fn(&[u8]) -> bool>(patterns: &PatternSet, max_n: usize, keep: P) -> CountVector {
    let mut counts = vec![0u64; max_n + 1];
    walk(patterns, max_n, |w, _| {
        if keep(w) {
            counts[w.len()] += 1
        }
    });
    CountVector::from_u64(&counts)
}

/// [`count_avoiders`] split into shards at `depth` and run on the rayon
/// pool. The result does not depend on the shard depth or pool size.
pub fn count_avoiders_sharded(patterns: &PatternSet, max_n: usize, depth: usize) -> CountVector {
    let depth = depth.min(max_n);
    let mut counts = vec![0u64; max_n + 1];
    if depth > 0 {
        walk(patterns, depth - 1, |w, _| counts[w.len()] += 1);
    }
    let prefixes = shard_prefixes(patterns, depth);
    let parts: Vec<Vec<u64>> = prefixes
        .par_iter()
        .map(|p| {
            let mut local = vec![0u64; max_n + 1];
            walk_from(patterns, p, max_n, |w, _| local[w.len()] += 1);
            local
        })
        .collect();
    for part in parts {
        for (c, x) in counts.iter_mut().zip(part) {
            *c += x;
        }
    }
    CountVector::from_u64(&counts)
}

/// `rows[n][k] = |P_{n,k}(patterns)|`.
pub fn count_avoiders_by_blocks(patterns: &PatternSet, max_n: usize) -> CountTable {
    let mut rows: Vec<Vec<u64>> = (0..=max_n).map(|n| vec![0; n + 1]).collect();
    walk(patterns, max_n, |w, k| rows[w.len()][k as usize] += 1);
    CountTable { rows: rows.into_iter().map(|r| r.into_iter().map(BigUint::from).collect()).collect() }
}

/// Number of avoiders of size `n` by block-size sequence (blocks in
/// standard order).
pub fn profile_counts(patterns: &PatternSet, n: usize) -> BTreeMap<Vec<usize>, BigUint> {
    let mut map: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    enumerate_avoiders(patterns, n, |w| *map.entry(block_sizes(w)).or_default() += 1);
    map.into_iter().map(|(k, v)| (k, BigUint::from(v))).collect()
}

/// Counts by (size, number of components) for every avoider of size at most `max_n`.
pub fn component_counts(patterns: &PatternSet, max_n: usize) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = (0..=max_n).map(|n| vec![0; n + 1]).collect();
    let mut suffix_min = [0u8; MAX_HOST_LEN + 1];
    walk(patterns, max_n, |w, _| {
        let n = w.len();
        suffix_min[n] = u8::MAX;
        for i in (0..n).rev() {
            suffix_min[i] = suffix_min[i + 1].min(w[i]);
        }
        let mut max = 0;
        let mut comps = 0;
        for i in 0..n {
            max = max.max(w[i]);
            if suffix_min[i + 1] > max {
                comps += 1;
            }
        }
        rows[n][comps] += 1;
    });
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::contains;

    fn set(s: &str) -> PatternSet {
        PatternSet::parse_list(s).unwrap()
    }

    fn all_rgs(n: usize) -> Vec<Vec<u8>> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w: Vec<u8>| {
                    let m = w.iter().copied().max().unwrap_or(0);
                    (1..=m + 1).map(move |c| {
                        let mut v = w.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn small_examples() {
        let mut seen = Vec::new();
        enumerate_avoiders(&set("112"), 3, |w| seen.push(w.to_vec()));
        assert_eq!(seen, vec![vec![1, 1, 1], vec![1, 2, 1], vec![1, 2, 2], vec![1, 2, 3]]);
        let mut n = 0;
        enumerate_avoiders(&set(""), 4, |_| n += 1);
        assert_eq!(n, 15);
        let mut n = 0;
        enumerate_avoiders(&set("1"), 1, |_| n += 1);
        assert_eq!(n, 0);
        assert_eq!(count_avoiders(&set(""), 5), CountVector::from_u64(&[1, 1, 2, 5, 15, 52]));
        assert_eq!(count_avoiders(&set("1"), 3), CountVector::from_u64(&[1, 0, 0, 0]));
    }

    #[test]
    fn matches_brute_force() {
        for pats in ["1212", "1221,123", "11,1", "12312", "1123,1211", "12131,1111", "122,1232"] {
            let s = set(pats);
            let got = count_avoiders(&s, 8);
            for n in 0..=8 {
                let want = all_rgs(n).iter().filter(|w| s.patterns().iter().all(|p| !contains(w, p.word()))).count();
                assert_eq!(got.counts[n], BigUint::from(want), "{pats} n={n}");
            }
        }
    }

    #[test]
    fn lexicographic_visit_order() {
        let mut words = Vec::new();
        enumerate_avoiders(&set("1212,111"), 7, |w| words.push(w.to_vec()));
        assert!(words.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn sharding_is_invisible() {
        let s = set("1232,1111");
        let plain = count_avoiders(&s, 11);
        for d in 0..6 {
            assert_eq!(count_avoiders_sharded(&s, 11, d), plain);
        }
    }

    #[test]
    fn blocks_and_profiles() {
        let t = count_avoiders_by_blocks(&set(""), 4);
        assert_eq!(t.get(4, 2), BigUint::from(7u32));
        assert_eq!(t.get(0, 0), BigUint::from(1u32));
        let p = profile_counts(&set(""), 2);
        assert_eq!(p.len(), 2);
        assert_eq!(p[&vec![2]], BigUint::from(1u32));
        assert_eq!(p[&vec![1, 1]], BigUint::from(1u32));
    }
}
