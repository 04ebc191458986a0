//! Pattern containment, leftmost/topmost occurrences and the `σ[τ]` algebra.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::partition::{components, Rgs};

/// A partition used as a containment pattern.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    rgs: Rgs,
    connected: bool,
    components: Vec<Rgs>,
    first_pos: Vec<usize>,
}

impl Pattern {
    pub fn new(rgs: Rgs) -> Pattern {
        let components = components(&rgs);
        let mut first_pos = vec![usize::MAX; rgs.num_blocks()];
        for (i, &c) in rgs.word().iter().enumerate() {
            let slot = &mut first_pos[c as usize - 1];
            if *slot == usize::MAX {
                *slot = i;
            }
        }
        Pattern { connected: components.len() == 1, components, first_pos, rgs }
    }

    pub fn rgs(&self) -> &Rgs {
        &self.rgs
    }

    pub fn word(&self) -> &[u8] {
        self.rgs.word()
    }

    pub fn len(&self) -> usize {
        self.rgs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rgs.is_empty()
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn components(&self) -> &[Rgs] {
        &self.components
    }

    /// 0-based position of the first occurrence of each symbol.
    pub fn first_positions(&self) -> &[usize] {
        &self.first_pos
    }

    /// `self[other]`.
    pub fn bracket(&self, other: &Pattern) -> Pattern {
        Pattern::new(self.rgs.bracket(&other.rgs))
    }
}

impl From<Rgs> for Pattern {
    fn from(r: Rgs) -> Pattern {
        Pattern::new(r)
    }
}

impl FromStr for Pattern {
    type Err = Error;
    fn from_str(s: &str) -> Result<Pattern> {
        Ok(Pattern::new(s.parse()?))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rgs.fmt(f)
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({})", self.rgs)
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rgs.serialize(s)
    }
}

/// A set of nonempty patterns, kept sorted and free of duplicates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PatternSet {
    patterns: Vec<Pattern>,
}

impl PatternSet {
    pub fn new(patterns: impl IntoIterator<Item = Pattern>) -> Result<PatternSet> {
        let mut patterns: Vec<Pattern> = patterns.into_iter().collect();
        if patterns.iter().any(Pattern::is_empty) {
            return Err(Error::BadParams("the empty pattern cannot be avoided".into()));
        }
        patterns.sort();
        patterns.dedup();
        Ok(PatternSet { patterns })
    }

    /// Parse a comma separated list such as `1212,111`. A pattern whose
    /// symbols exceed 9 is written in parentheses: `(1,2,3,10),112`.
    pub fn parse_list(s: &str) -> Result<PatternSet> {
        let s = s.trim();
        let s = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(s);
        let mut items = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        for ch in s.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch)
                }
                ')' => {
                    depth -= 1;
                    cur.push(ch)
                }
                ',' if depth == 0 => items.push(std::mem::take(&mut cur)),
                _ => cur.push(ch),
            }
        }
        if depth != 0 {
            return Err(Error::Parse(s.to_string()));
        }
        items.push(cur);
        let pats = items
            .iter()
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.parse::<Pattern>())
            .collect::<Result<Vec<_>>>()?;
        PatternSet::new(pats)
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn with(&self, p: Pattern) -> PatternSet {
        PatternSet::new(self.patterns.iter().cloned().chain(std::iter::once(p)))
            .expect("patterns are nonempty")
    }

    /// Drop every pattern that contains another member: avoiding the smaller
    /// one already avoids the larger.
    pub fn minimal(&self) -> PatternSet {
        let keep = self
            .patterns
            .iter()
            .enumerate()
            .filter(|(i, p)| {
                !self.patterns.iter().enumerate().any(|(j, q)| {
                    j != *i && contains(p.word(), q.word()) && (q.len() < p.len() || j < *i)
                })
            })
            .map(|(_, p)| p.clone())
            .collect();
        PatternSet { patterns: keep }
    }

    /// True iff `host` avoids every member.
    pub fn avoided_by(&self, host: &[u8]) -> bool {
        self.patterns.iter().all(|p| !contains(host, p.word()))
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .patterns
            .iter()
            .map(|p| {
                let s = p.to_string();
                if s.contains(',') { format!("({s})") } else { s }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An occurrence: strictly increasing 1-based positions into the host.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Occurrence {
    pub indices: Vec<usize>,
}

/// Backtracking search for the lexicographically first occurrence of
/// `pat` in `host[..end]`, with optional pins on the first and last index
/// (0-based).
struct Search<'a> {
    host: &'a [u8],
    pat: &'a [u8],
    end: usize,
    last: Option<usize>,
    // next_pos[i][v]: smallest j ≥ i with host[j] = v
    next_pos: Vec<Vec<usize>>,
    assign: Vec<u8>,
    idx: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(host: &'a [u8], pat: &'a [u8]) -> Search<'a> {
        let k = host.iter().copied().max().unwrap_or(0) as usize;
        let n = host.len();
        let mut next_pos = vec![vec![usize::MAX; k + 1]; n + 1];
        for i in (0..n).rev() {
            next_pos[i] = next_pos[i + 1].clone();
            next_pos[i][host[i] as usize] = i;
        }
        let m = pat.iter().copied().max().unwrap_or(0) as usize;
        Search { host, pat, end: n, last: None, next_pos, assign: vec![0; m + 1], idx: Vec::new() }
    }

    fn run(&mut self, first: Option<usize>) -> Option<Vec<usize>> {
        self.idx.clear();
        self.assign.iter_mut().for_each(|a| *a = 0);
        if self.pat.is_empty() {
            return Some(Vec::new());
        }
        match first {
            Some(i) => {
                if i >= self.end {
                    return None;
                }
                self.assign[1] = self.host[i];
                self.idx.push(i);
                let found = self.step(1, i + 1, self.host[i]);
                found.then(|| self.idx.clone())
            }
            None => self.step(0, 0, 0).then(|| self.idx.clone()),
        }
    }

    /// Match `pat[j..]` in `host[from..end]`; `top` is the largest assigned value.
    fn step(&mut self, j: usize, from: usize, top: u8) -> bool {
        let k = self.pat.len();
        if j == k {
            return self.last.map_or(true, |l| self.idx.last() == Some(&l));
        }
        let remaining = k - j;
        if from + remaining > self.end {
            return false;
        }
        let s = self.pat[j] as usize;
        if self.assign[s] != 0 {
            let v = self.assign[s] as usize;
            let mut p = if v < self.next_pos[from].len() { self.next_pos[from][v] } else { usize::MAX };
            while p < self.end && p + remaining <= self.end {
                if j + 1 < k || self.last.map_or(true, |l| l == p) {
                    self.idx.push(p);
                    if self.step(j + 1, p + 1, top) {
                        return true;
                    }
                    self.idx.pop();
                }
                p = self.next_pos[p + 1][v];
            }
            false
        } else {
            for p in from..self.end {
                if p + remaining > self.end {
                    break;
                }
                let c = self.host[p];
                if c <= top || (j + 1 == k && self.last.is_some_and(|l| l != p)) {
                    continue;
                }
                self.assign[s] = c;
                self.idx.push(p);
                if self.step(j + 1, p + 1, c) {
                    return true;
                }
                self.idx.pop();
                self.assign[s] = 0;
            }
            false
        }
    }
}

/// True iff some subsequence of `host` is order-isomorphic to `pat`.
/// Both words must be restricted growth words.
pub fn contains(host: &[u8], pat: &[u8]) -> bool {
    if pat.len() > host.len() {
        return false;
    }
    Search::new(host, pat).run(None).is_some()
}

fn to_occurrence(idx: Vec<usize>) -> Occurrence {
    Occurrence { indices: idx.into_iter().map(|i| i + 1).collect() }
}

/// The occurrence with the smallest last index, ties broken by the
/// lexicographically smallest index sequence.
pub fn leftmost_occurrence(host: &Rgs, pattern: &Pattern) -> Option<Occurrence> {
    let (h, p) = (host.word(), pattern.word());
    if p.is_empty() {
        return Some(Occurrence { indices: Vec::new() });
    }
    let mut s = Search::new(h, p);
    for e in p.len() - 1..h.len() {
        s.end = e + 1;
        s.last = Some(e);
        if let Some(found) = s.run(None) {
            return Some(to_occurrence(found));
        }
    }
    None
}

/// The occurrence whose first letter has the largest value, with the first
/// index moved to the first position of that value and remaining ties broken
/// lexicographically.
pub fn topmost_occurrence(host: &Rgs, pattern: &Pattern) -> Option<Occurrence> {
    let (h, p) = (host.word(), pattern.word());
    if p.is_empty() {
        return Some(Occurrence { indices: Vec::new() });
    }
    let mut s = Search::new(h, p);
    for v in (1..=host.num_blocks() as u8).rev() {
        let first = h.iter().position(|&c| c == v).unwrap();
        if let Some(found) = s.run(Some(first)) {
            return Some(to_occurrence(found));
        }
    }
    None
}

/// True iff `indices` (1-based) is an occurrence of `pat` in `host`.
pub fn is_occurrence(host: &[u8], pat: &[u8], indices: &[usize]) -> bool {
    if indices.len() != pat.len() || indices.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    if indices.iter().any(|&i| i == 0 || i > host.len()) {
        return false;
    }
    let sub: Vec<u8> = indices.iter().map(|&i| host[i - 1]).collect();
    (0..pat.len()).all(|a| (0..pat.len()).all(|b| pat[a].cmp(&pat[b]) == sub[a].cmp(&sub[b])))
}

#[derive(Debug, Clone)]
enum Item {
    Sym(u32),
    Group(Vec<Item>),
}

fn parse_template(src: &str) -> Result<Vec<Item>> {
    let err = |msg: &str| Error::InvalidTemplate(src.to_string(), msg.to_string());
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut stack: Vec<Vec<Item>> = vec![Vec::new()];
    let mut i = 0;
    while i < chars.len() {
        match chars[i] {
            '[' => stack.push(Vec::new()),
            ']' => {
                let group = stack.pop().unwrap();
                if group.is_empty() {
                    return Err(err("empty bracket"));
                }
                stack.last_mut().ok_or_else(|| err("unbalanced ]"))?.push(Item::Group(group));
            }
            '(' => {
                let close = chars[i..].iter().position(|&c| c == ')').ok_or_else(|| err("unclosed ("))? + i;
                let num: String = chars[i + 1..close].iter().collect();
                let v = num.parse::<u32>().map_err(|_| err("bad symbol"))?;
                stack.last_mut().unwrap().push(Item::Sym(v));
                i = close;
            }
            ',' => {}
            c => {
                let d = c.to_digit(10).ok_or_else(|| err("unexpected character"))?;
                stack.last_mut().unwrap().push(Item::Sym(d));
            }
        }
        if stack.is_empty() {
            return Err(err("unbalanced ]"));
        }
        i += 1;
    }
    if stack.len() != 1 {
        return Err(err("unclosed ["));
    }
    Ok(stack.pop().unwrap())
}

fn eval_template(items: &[Item], src: &str) -> Result<Vec<u8>> {
    let err = |msg: &str| Error::InvalidTemplate(src.to_string(), msg.to_string());
    let skeleton: Vec<u32> = items
        .iter()
        .filter_map(|it| if let Item::Sym(s) = it { Some(*s) } else { None })
        .collect();
    if !crate::partition::validate_rgs(&skeleton) {
        return Err(err("skeleton is not a restricted growth word"));
    }
    let mut out: Vec<u8> = Vec::new();
    let mut seen = 0u8;
    let mut map: Vec<u8> = vec![0; skeleton.iter().copied().max().unwrap_or(0) as usize + 1];
    for it in items {
        match it {
            Item::Sym(s) => {
                let s = *s as usize;
                if map[s] == 0 {
                    seen = seen.checked_add(1).ok_or_else(|| err("too many symbols"))?;
                    map[s] = seen;
                }
                out.push(map[s]);
            }
            Item::Group(g) => {
                let inner = eval_template(g, src)?;
                let k = inner.iter().copied().max().unwrap_or(0);
                out.extend(inner.iter().map(|&c| c + seen));
                seen += k;
            }
        }
    }
    Ok(out)
}

/// Build a pattern from a template such as `1[112]1` or `11[121][112]`.
///
/// Every bracketed part is shifted by the number of distinct symbols written
/// before it. `$1`, `$2`, … are replaced by the corresponding entry of
/// `parts` before parsing. Symbols above 9 are written as `(10)`.
pub fn substitute(template: &str, parts: &[Pattern]) -> Result<Pattern> {
    let mut text = template.to_string();
    for (i, p) in parts.iter().enumerate().rev() {
        let lit = p.word().iter().map(|&c| if c <= 9 { c.to_string() } else { format!("({c})") }).collect::<String>();
        text = text.replace(&format!("${}", i + 1), &lit);
    }
    if text.contains('$') {
        return Err(Error::InvalidTemplate(template.to_string(), "unfilled slot".into()));
    }
    let items = parse_template(&text)?;
    let word = eval_template(&items, template)?;
    let rgs = Rgs::new(word).map_err(|e| Error::InvalidTemplate(template.to_string(), e.to_string()))?;
    Ok(Pattern::new(rgs))
}

/// Named pattern families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternFamily {
    /// `12⋯m m^{a_m−1} ⋯ 1^{a_1−1}`
    Tau112(Composition),
    /// `1^{a_1} 2^{a_2} ⋯ m^{a_m}`
    Tau121(Composition),
    /// `1^j 2 1^k`
    OnesTwoOnes(usize, usize),
    /// `12⋯(k−1) k^a`
    IncrPower(usize, usize),
    /// `1^k`
    Ones(usize),
    /// `12⋯k`
    Incr(usize),
}

/// Construct a member of a pattern family.
pub fn family(kind: &PatternFamily) -> Result<Pattern> {
    let bad = || Error::BadParams(format!("{kind:?}"));
    let word: Vec<u8> = match kind {
        PatternFamily::Tau112(a) => {
            let m = a.len() as u8;
            let mut w: Vec<u8> = (1..=m).collect();
            for (i, &ai) in a.parts().iter().enumerate().rev() {
                w.extend(std::iter::repeat(i as u8 + 1).take(ai as usize - 1));
            }
            w
        }
        PatternFamily::Tau121(a) => a
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &ai)| std::iter::repeat(i as u8 + 1).take(ai as usize))
            .collect(),
        &PatternFamily::OnesTwoOnes(j, k) => {
            if j == 0 {
                return Err(bad());
            }
            let mut w = vec![1u8; j];
            w.push(2);
            w.extend(std::iter::repeat(1).take(k));
            w
        }
        &PatternFamily::IncrPower(k, a) => {
            if k == 0 || a == 0 {
                return Err(bad());
            }
            let mut w: Vec<u8> = (1..k as u8).collect();
            w.extend(std::iter::repeat(k as u8).take(a));
            w
        }
        &PatternFamily::Ones(k) => vec![1; k],
        &PatternFamily::Incr(k) => (1..=k as u8).collect(),
    };
    if word.len() > 255 {
        return Err(bad());
    }
    Ok(Pattern::new(Rgs::new(word).map_err(|_| bad())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn containment_examples() {
        assert!(contains(p("12132431").word(), p("1212").word()));
        assert!(contains(p("123").word(), &[]));
        assert!(contains(&[], &[]));
        assert!(contains(p("11233245466233").word(), p("122").word()));
        assert!(!contains(p("123").word(), p("11").word()));
    }

    #[test]
    fn occurrence_examples() {
        let host: Rgs = "11233245466233".parse().unwrap();
        let lm = leftmost_occurrence(&host, &p("122")).unwrap();
        assert_eq!(lm.indices, vec![1, 4, 5]);
        let tm = topmost_occurrence(&host, &p("122")).unwrap();
        assert_eq!(tm.indices, vec![8, 10, 11]);
        let h: Rgs = "121".parse().unwrap();
        assert_eq!(leftmost_occurrence(&h, &p("121")).unwrap().indices, vec![1, 2, 3]);
        let h: Rgs = "123".parse().unwrap();
        assert!(leftmost_occurrence(&h, &p("11")).is_none());
        let h: Rgs = "11".parse().unwrap();
        assert_eq!(topmost_occurrence(&h, &p("11")).unwrap().indices, vec![1, 2]);
        let h: Rgs = "1122".parse().unwrap();
        assert_eq!(topmost_occurrence(&h, &p("11")).unwrap().indices, vec![3, 4]);
    }

    #[test]
    fn templates() {
        assert_eq!(substitute("1[112]1", &[]).unwrap().to_string(), "12231");
        assert_eq!(substitute("11[121][112]", &[]).unwrap().to_string(), "11232445");
        assert_eq!(substitute("1[11]", &[]).unwrap().to_string(), "122");
        assert_eq!(substitute("1[12]", &[]).unwrap().to_string(), "123");
        assert_eq!(substitute("1[$1]1", &[p("112")]).unwrap().to_string(), "12231");
        assert_eq!(substitute("1[1[1]]", &[]).unwrap().to_string(), "123");
        assert!(substitute("2[1]", &[]).is_err());
        assert!(substitute("1[21]", &[]).is_err());
        assert!(substitute("1[1", &[]).is_err());
        assert!(substitute("1]", &[]).is_err());
    }

    #[test]
    fn families() {
        let c = |s: &str| s.parse::<Composition>().unwrap();
        assert_eq!(family(&PatternFamily::Tau112(c("2,1,2"))).unwrap().to_string(), "12331");
        assert_eq!(family(&PatternFamily::Tau121(c("2,1,2"))).unwrap().to_string(), "11233");
        assert_eq!(family(&PatternFamily::OnesTwoOnes(1, 1)).unwrap().to_string(), "121");
        assert_eq!(family(&PatternFamily::IncrPower(3, 2)).unwrap().to_string(), "1233");
        assert_eq!(family(&PatternFamily::Ones(3)).unwrap().to_string(), "111");
        assert_eq!(family(&PatternFamily::Incr(4)).unwrap().to_string(), "1234");
        assert!(family(&PatternFamily::IncrPower(0, 2)).is_err());
    }

    #[test]
    fn minimal_sets() {
        let s = PatternSet::parse_list("1234,123,12,1212").unwrap();
        assert_eq!(s.minimal().to_string(), "{12}");
        let s = PatternSet::parse_list("(1,2,3,4,5,6,7,8,9,10),11").unwrap();
        assert_eq!(s.patterns().len(), 2);
        assert!(PatternSet::parse_list("1,2").is_err());
    }
}
