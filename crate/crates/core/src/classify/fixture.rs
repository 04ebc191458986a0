//! Expected class tables shipped as data files, and diffs against them.
//!
//! A fixture lists one class per line, members separated by whitespace and
//! written as pattern-set literals (`{1123,1211}` or a bare `1232`). Text
//! after `#` is a comment. Header comments of the form `# key: value` carry
//! the id, anchor, family, notion and source. Members of a classified family
//! that a fixture does not mention are expected to be singletons.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::ClassificationReport;
use crate::error::{Error, Result};
use crate::pattern::PatternSet;

const FIXTURES: &[(&str, &str)] = &[
    ("three-four", include_str!("../../data/fixtures/three-four.txt")),
    ("nc-size4", include_str!("../../data/fixtures/nc-size4.txt")),
    ("nc-size5", include_str!("../../data/fixtures/nc-size5.txt")),
    ("nc-size6", include_str!("../../data/fixtures/nc-size6.txt")),
    ("four-four", include_str!("../../data/fixtures/four-four.txt")),
];

/// A parsed expected-class table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub id: String,
    pub anchor: String,
    pub family: String,
    pub notion: String,
    pub max_n: usize,
    /// `published` for transcribed tables, `generated` for tables this tool produced.
    pub source: String,
    pub classes: Vec<Vec<PatternSet>>,
}

impl Fixture {
    pub fn parse(text: &str) -> Result<Fixture> {
        let mut header: BTreeMap<String, String> = BTreeMap::new();
        let mut classes = Vec::new();
        let mut seen = BTreeSet::new();
        for line in text.lines() {
            let (body, comment) = line.split_once('#').unwrap_or((line, ""));
            if let Some((k, v)) = comment.split_once(':') {
                if body.trim().is_empty() && !k.trim().contains(' ') {
                    header.insert(k.trim().to_string(), v.trim().to_string());
                }
            }
            let members = body
                .split_whitespace()
                .map(PatternSet::parse_list)
                .collect::<Result<Vec<_>>>()?;
            if members.is_empty() {
                continue;
            }
            for m in &members {
                if !seen.insert(m.clone()) {
                    return Err(Error::Fixture(format!("{m} listed twice")));
                }
            }
            classes.push(members);
        }
        let get = |k: &str| header.get(k).cloned().ok_or_else(|| Error::Fixture(format!("missing header {k:?}")));
        let max_n = get("max_n")?.parse().map_err(|_| Error::Fixture("max_n is not a number".into()))?;
        Ok(Fixture {
            id: get("id")?,
            anchor: get("anchor")?,
            family: get("family")?,
            notion: get("notion")?,
            max_n,
            source: get("source")?,
            classes,
        })
    }
}

/// Ids of the bundled fixtures.
pub fn fixture_ids() -> Vec<&'static str> {
    FIXTURES.iter().map(|(id, _)| *id).collect()
}

/// Load a bundled fixture.
pub fn fixture(id: &str) -> Result<Fixture> {
    let (_, text) = FIXTURES.iter().find(|(k, _)| *k == id).ok_or_else(|| Error::UnknownFixture(id.to_string()))?;
    Fixture::parse(text)
}

/// One disagreement between a classification and a fixture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DiffEntry {
    /// A fixture member absent from the classified family.
    Missing { member: String },
    /// A member found apart from every other member of its expected class
    /// and together with members of other expected classes.
    Moved { member: String, expected_with: Vec<String>, found_with: Vec<String> },
    /// An expected class spread over several computed classes.
    Split { expected: Vec<String>, found: Vec<Vec<String>> },
    /// A computed class joining several expected classes.
    Merged { found: Vec<String>, expected: Vec<Vec<String>> },
}

fn names(xs: &BTreeSet<PatternSet>) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

/// Compare a classification with a bundled fixture. An empty result means the
/// two agree as set partitions of the classified family.
pub fn verify_table(report: &ClassificationReport, fixture_id: &str) -> Result<Vec<DiffEntry>> {
    Ok(verify_table_with(report, &fixture(fixture_id)?))
}

/// [`verify_table`] against an already parsed fixture.
pub fn verify_table_with(report: &ClassificationReport, fx: &Fixture) -> Vec<DiffEntry> {
    let mut diff = Vec::new();
    let found: Vec<BTreeSet<PatternSet>> =
        report.classes.iter().map(|c| c.members.iter().cloned().collect()).collect();
    let found_of: BTreeMap<&PatternSet, usize> =
        found.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |m| (m, i))).collect();

    let mut expected: Vec<BTreeSet<PatternSet>> = Vec::new();
    for class in &fx.classes {
        let mut kept = BTreeSet::new();
        for m in class {
            if found_of.contains_key(m) {
                kept.insert(m.clone());
            } else {
                diff.push(DiffEntry::Missing { member: m.to_string() });
            }
        }
        if !kept.is_empty() {
            expected.push(kept);
        }
    }
    let listed: BTreeSet<PatternSet> = expected.iter().flatten().cloned().collect();
    for m in found_of.keys() {
        if !listed.contains(*m) {
            expected.push(BTreeSet::from([(*m).clone()]));
        }
    }
    let expected_of: BTreeMap<&PatternSet, usize> =
        expected.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |m| (m, i))).collect();

    for (m, &e) in &expected_of {
        let f = found_of[m];
        let mates_expected: BTreeSet<PatternSet> = expected[e].iter().filter(|x| x != m).cloned().collect();
        let mates_found: BTreeSet<PatternSet> = found[f].iter().filter(|x| x != m).cloned().collect();
        let detached = !mates_expected.is_empty() && mates_expected.is_disjoint(&mates_found);
        let joined_others = mates_found.iter().any(|x| expected_of[x] != e);
        if detached && joined_others {
            diff.push(DiffEntry::Moved {
                member: m.to_string(),
                expected_with: names(&mates_expected),
                found_with: names(&mates_found),
            });
        }
    }
    for class in &expected {
        let parts: BTreeSet<usize> = class.iter().map(|m| found_of[m]).collect();
        if parts.len() > 1 {
            diff.push(DiffEntry::Split {
                expected: names(class),
                found: parts.iter().map(|&i| names(&found[i].intersection(class).cloned().collect())).collect(),
            });
        }
    }
    for class in &found {
        let parts: BTreeSet<usize> = class.iter().map(|m| expected_of[m]).collect();
        if parts.len() > 1 {
            diff.push(DiffEntry::Merged {
                found: names(class),
                expected: parts.iter().map(|&i| names(&expected[i].intersection(class).cloned().collect())).collect(),
            });
        }
    }
    diff
}

#[cfg(test)]
mod tests {
    use super::super::{classify, generate_pairs, EquivNotion, PairFamily};
    use super::*;

    #[test]
    fn bundled_fixtures_parse() {
        for id in fixture_ids() {
            let fx = fixture(id).unwrap();
            assert_eq!(fx.id, id);
        }
        assert!(matches!(fixture("nope"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn nc_size4_matches_and_moved_member_is_reported() {
        let report = classify(&generate_pairs(&PairFamily::NcTau(4)), EquivNotion::Nc, 12).unwrap();
        assert!(verify_table(&report, "nc-size4").unwrap().is_empty());
        let mut fx = fixture("nc-size4").unwrap();
        let moved = fx.classes[0].pop().unwrap();
        fx.classes[1].push(moved);
        let diff = verify_table_with(&report, &fx);
        assert!(diff.iter().any(|d| matches!(d, DiffEntry::Moved { .. })), "{diff:?}");
    }
}
