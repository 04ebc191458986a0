//! Pattern-pair families and their equivalence classes under several
//! counting signatures.
//!
//! A classification is evidence up to `max_n`: two pattern sets share a class
//! when their signatures agree for every size up to that bound.

mod fixture;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::composition::xi;
use crate::enumerate::{component_counts, count_avoiders, walk};
use crate::error::{Error, Result};
use crate::partition::is_noncrossing;
use crate::pattern::{Pattern, PatternSet};

pub use fixture::{fixture, fixture_ids, verify_table, verify_table_with, DiffEntry, Fixture};

/// Which counting data two pattern sets must share to be called equivalent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EquivNotion {
    /// Equal avoider counts.
    Wilf,
    /// Equal counts once 1212 is added to both sets.
    Nc,
    /// Equal counts of non-crossing avoiders by size and number of components.
    Cc,
    /// Equal counts of avoiders by block-size sequence.
    Strong,
}

impl FromStr for EquivNotion {
    type Err = Error;
    fn from_str(s: &str) -> Result<EquivNotion> {
        match s {
            "wilf" => Ok(EquivNotion::Wilf),
            "nc" => Ok(EquivNotion::Nc),
            "cc" => Ok(EquivNotion::Cc),
            "strong" => Ok(EquivNotion::Strong),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

impl fmt::Display for EquivNotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquivNotion::Wilf => "wilf",
            EquivNotion::Nc => "nc",
            EquivNotion::Cc => "cc",
            EquivNotion::Strong => "strong",
        })
    }
}

impl Serialize for EquivNotion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Families of pattern sets to classify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairFamily {
    /// `{σ, τ}` with `σ ∈ {112,121,122,123}` and `τ` a size-`k` avoider of `σ`.
    ThreeK(usize),
    /// Two distinct patterns of size four.
    FourFour,
    /// `{τ}` for every non-crossing `τ` of the given size, meant for the
    /// `nc` and `cc` notions which add 1212 themselves.
    NcTau(usize),
}

impl fmt::Display for PairFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairFamily::ThreeK(k) => write!(f, "three_k({k})"),
            PairFamily::FourFour => write!(f, "four_four"),
            PairFamily::NcTau(s) => write!(f, "nc_tau({s})"),
        }
    }
}

fn partitions_of_size(n: usize, keep: impl Fn(&[u8]) -> bool) -> Vec<Pattern> {
    let mut out = Vec::new();
    walk(&PatternSet::default(), n, |w, _| {
        if w.len() == n && keep(w) {
            out.push(Pattern::new(crate::partition::Rgs::from_valid(w.to_vec())));
        }
    });
    out
}

/// All members of a family, sorted and without repeats.
pub fn generate_pairs(family: &PairFamily) -> Vec<PatternSet> {
    let mut out: Vec<PatternSet> = match *family {
        PairFamily::ThreeK(k) => ["112", "121", "122", "123"]
            .iter()
            .flat_map(|s| {
                let sigma: Pattern = s.parse().expect("static pattern");
                partitions_of_size(k, |w| !crate::pattern::contains(w, sigma.word()))
                    .into_iter()
                    .map(move |tau| PatternSet::new([sigma.clone(), tau]).expect("nonempty"))
            })
            .collect(),
        PairFamily::FourFour => {
            let all = partitions_of_size(4, |_| true);
            let mut v = Vec::new();
            for (i, a) in all.iter().enumerate() {
                for b in &all[i + 1..] {
                    v.push(PatternSet::new([a.clone(), b.clone()]).expect("nonempty"));
                }
            }
            v
        }
        PairFamily::NcTau(size) => partitions_of_size(size, is_noncrossing)
            .into_iter()
            .map(|t| PatternSet::new([t]).expect("nonempty"))
            .collect(),
    };
    out.sort();
    out.dedup();
    out
}

fn crossing() -> Pattern {
    "1212".parse().expect("static pattern")
}

/// The counting data of `set` under `notion`, one canonical text row per
/// size `0..=max_n`.
pub fn signature(set: &PatternSet, notion: EquivNotion, max_n: usize) -> Vec<String> {
    match notion {
        EquivNotion::Wilf => count_rows(set, max_n),
        EquivNotion::Nc => count_rows(&set.with(crossing()), max_n),
        EquivNotion::Cc => component_counts(&set.with(crossing()), max_n)
            .iter()
            .map(|row| row.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
            .collect(),
        EquivNotion::Strong => strong_rows(set, max_n),
    }
}

fn count_rows(set: &PatternSet, max_n: usize) -> Vec<String> {
    count_avoiders(set, max_n).counts.iter().map(|c| c.to_string()).collect()
}

fn strong_rows(set: &PatternSet, max_n: usize) -> Vec<String> {
    let mut by_n: Vec<BTreeMap<Vec<usize>, u64>> = vec![BTreeMap::new(); max_n + 1];
    let mut sizes = Vec::new();
    walk(set, max_n, |w, k| {
        sizes.clear();
        sizes.resize(k as usize, 0);
        for &c in w {
            sizes[c as usize - 1] += 1;
        }
        *by_n[w.len()].entry(sizes.clone()).or_default() += 1;
    });
    by_n.iter().map(profile_row).collect()
}

fn profile_row(m: &BTreeMap<Vec<usize>, u64>) -> String {
    m.iter()
        .map(|(p, c)| format!("{}:{c}", p.iter().map(usize::to_string).collect::<Vec<_>>().join(".")))
        .collect::<Vec<_>>()
        .join(";")
}

fn digest(rows: &[String]) -> String {
    let mut h = Sha256::new();
    for r in rows {
        h.update(r.as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn ser_sets<S: Serializer>(xs: &[PatternSet], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

/// One equivalence class of a classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Class {
    #[serde(serialize_with = "ser_sets")]
    pub members: Vec<PatternSet>,
    /// SHA-256 of the signature rows.
    pub digest: String,
    pub signature: Vec<String>,
    /// First size at which this class and the next one in the report differ.
    pub first_separating_n_vs_next_class: Option<usize>,
}

/// Classes of a family under one notion, ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub notion: EquivNotion,
    pub max_n: usize,
    pub classes: Vec<Class>,
    pub diff: Option<Vec<DiffEntry>>,
}

impl ClassificationReport {
    pub fn class_of(&self, member: &PatternSet) -> Option<&Class> {
        self.classes.iter().find(|c| c.members.contains(member))
    }

    pub fn singletons(&self) -> usize {
        self.classes.iter().filter(|c| c.members.len() == 1).count()
    }
}

/// Group `pairs` by exact signature equality up to `max_n`. Signatures are
/// computed on the current rayon pool; the result does not depend on its
/// size or on the order of `pairs`.
pub fn classify(pairs: &[PatternSet], notion: EquivNotion, max_n: usize) -> Result<ClassificationReport> {
    if max_n < 1 {
        return Err(Error::BadParams("max_n must be at least 1".into()));
    }
    let sigs: Vec<Vec<String>> = pairs.par_iter().map(|p| signature(p, notion, max_n)).collect();
    let mut groups: BTreeMap<&Vec<String>, Vec<PatternSet>> = BTreeMap::new();
    for (p, s) in pairs.iter().zip(&sigs) {
        groups.entry(s).or_default().push(p.clone());
    }
    let mut classes: Vec<Class> = groups
        .into_iter()
        .map(|(sig, mut members)| {
            members.sort();
            members.dedup();
            Class { members, digest: digest(sig), signature: sig.clone(), first_separating_n_vs_next_class: None }
        })
        .collect();
    classes.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
    for i in 1..classes.len() {
        let n = classes[i - 1].signature.iter().zip(&classes[i].signature).position(|(a, b)| a != b);
        classes[i - 1].first_separating_n_vs_next_class = n;
    }
    Ok(ClassificationReport { notion, max_n, classes, diff: None })
}

/// Classify the `(3,k)`-pairs and return the observed number of classes
/// together with the upper bound `1 + ξ_k`.
pub fn check_3k_bound(k: usize, max_n: usize) -> Result<(usize, usize)> {
    if k < 3 {
        return Err(Error::BadParams(format!("k = {k} is below 3")));
    }
    let report = classify(&generate_pairs(&PairFamily::ThreeK(k)), EquivNotion::Wilf, max_n)?;
    let bound = 1 + xi(k as u32).to_usize().expect("xi fits in usize");
    Ok((report.classes.len(), bound))
}

/// Outcome of comparing two signatures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivCheck {
    pub equivalent: bool,
    /// The first size where the signatures differ and both rows there.
    pub witness: Option<(usize, String, String)>,
}

fn compare(a: Vec<String>, b: Vec<String>) -> EquivCheck {
    match a.iter().zip(&b).position(|(x, y)| x != y) {
        None => EquivCheck { equivalent: true, witness: None },
        Some(n) => EquivCheck { equivalent: false, witness: Some((n, a[n].clone(), b[n].clone())) },
    }
}

fn single(p: &Pattern) -> PatternSet {
    PatternSet::new([p.clone()]).expect("patterns are nonempty")
}

/// Compare the block-size profiles of `P_n(σ)` and `P_n(τ)` for `n ≤ max_n`.
/// For a mismatch, the witness names the first size where they differ.
pub fn strong_equiv_check(sigma: &Pattern, tau: &Pattern, max_n: usize) -> EquivCheck {
    let a = signature(&single(sigma), EquivNotion::Strong, max_n);
    let b = signature(&single(tau), EquivNotion::Strong, max_n);
    let Some(n) = a.iter().zip(&b).position(|(x, y)| x != y) else {
        return EquivCheck { equivalent: true, witness: None };
    };
    let (pa, pb) = (parse_profiles(&a[n]), parse_profiles(&b[n]));
    let profile = pa.keys().chain(pb.keys()).find(|k| pa.get(*k) != pb.get(*k)).cloned().unwrap_or_default();
    let show = |m: &BTreeMap<String, String>| format!("{profile}:{}", m.get(&profile).map_or("0", String::as_str));
    EquivCheck { equivalent: false, witness: Some((n, show(&pa), show(&pb))) }
}

fn parse_profiles(row: &str) -> BTreeMap<String, String> {
    row.split(';')
        .filter(|s| !s.is_empty())
        .filter_map(|s| s.split_once(':').map(|(p, c)| (p.to_string(), c.to_string())))
        .collect()
}

/// Compare `{1212, σ}` and `{1212, τ}` avoider counts for `n ≤ max_n`.
pub fn nc_equiv_check(sigma: &Pattern, tau: &Pattern, max_n: usize) -> EquivCheck {
    compare(
        signature(&single(sigma), EquivNotion::Nc, max_n),
        signature(&single(tau), EquivNotion::Nc, max_n),
    )
}

/// Compare non-crossing avoiders of `σ` and `τ` by size and number of
/// components for `n ≤ max_n`.
pub fn cc_equiv_check(sigma: &Pattern, tau: &Pattern, max_n: usize) -> Result<EquivCheck> {
    for p in [sigma, tau] {
        if !is_noncrossing(p.word()) {
            return Err(Error::CrossingPattern(p.to_string()));
        }
    }
    Ok(compare(
        signature(&single(sigma), EquivNotion::Cc, max_n),
        signature(&single(tau), EquivNotion::Cc, max_n),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn family_sizes() {
        assert_eq!(generate_pairs(&PairFamily::ThreeK(4)).len(), 32);
        assert_eq!(generate_pairs(&PairFamily::FourFour).len(), 105);
        assert_eq!(generate_pairs(&PairFamily::NcTau(4)).len(), 14);
        assert_eq!(generate_pairs(&PairFamily::NcTau(5)).len(), 42);
    }

    #[test]
    fn three_k_small_bounds() {
        assert_eq!(check_3k_bound(3, 10).unwrap(), (3, 3));
        assert_eq!(check_3k_bound(4, 12).unwrap(), (4, 4));
    }

    #[test]
    fn strong_checks() {
        assert!(strong_equiv_check(&p("121"), &p("112"), 9).equivalent);
        assert!(strong_equiv_check(&p("1121"), &p("1211"), 9).equivalent);
        assert!(strong_equiv_check(&p("1212"), &p("1221"), 9).equivalent);
        let c = strong_equiv_check(&p("122"), &p("123"), 9);
        assert!(!c.equivalent);
        assert_eq!(c.witness.unwrap().0, 3);
    }

    #[test]
    fn cc_and_nc_checks() {
        let s = p("121");
        let r = p("1");
        assert!(cc_equiv_check(&s.bracket(&r), &r.bracket(&s), 11).unwrap().equivalent);
        assert!(!cc_equiv_check(&p("112"), &p("121"), 11).unwrap().equivalent);
        assert!(!nc_equiv_check(&p("122"), &p("123"), 11).equivalent);
        assert!(matches!(cc_equiv_check(&p("1212"), &p("121"), 5), Err(Error::CrossingPattern(_))));
    }

    #[test]
    fn report_is_order_invariant() {
        let mut pairs = generate_pairs(&PairFamily::NcTau(4));
        let a = classify(&pairs, EquivNotion::Nc, 9).unwrap();
        pairs.reverse();
        assert_eq!(a, classify(&pairs, EquivNotion::Nc, 9).unwrap());
        assert_eq!(a.classes.len(), 7);
        assert!(a.classes[..a.classes.len() - 1].iter().all(|c| c.first_separating_n_vs_next_class.is_some()));
    }
}
