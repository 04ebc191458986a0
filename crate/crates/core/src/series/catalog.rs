//! The generating-function catalog shipped in `data/catalog.toml`, and its
//! verification against enumeration.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bivariate::expand_f_a;
use super::expr::{eval_expr, Expr};
use super::recurrence::{binomial_transform, increasing_bound, lift_1a21b, prepend_one, two_ones_lift};
use super::{binomial, q, Series, Q};
use crate::composition::Composition;
use crate::enumerate::{count_avoiders, count_avoiders_where};
use crate::error::{Error, Result};
use crate::partition::{ser_big, CountVector};
use crate::pattern::PatternSet;

const CATALOG_TOML: &str = include_str!("../../data/catalog.toml");

/// How an entry's closed form is given.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Rational,
    Algebraic,
    Recurrence,
}

/// Restriction applied to an oracle's avoiders before counting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleFilter {
    /// The first `k` letters are `12⋯k`, where `k` is the number of blocks.
    InitialRun,
}

impl OracleFilter {
    fn keep(self, w: &[u8]) -> bool {
        match self {
            OracleFilter::InitialRun => {
                let k = w.iter().copied().max().unwrap_or(0) as usize;
                w.iter().take(k).enumerate().all(|(i, &c)| c as usize == i + 1)
            }
        }
    }
}

/// Where the counts fed to a recurrence come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Entry(String),
    Avoiders(PatternSet),
}

/// Closed form of one entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    /// `num / Π den_i`.
    Rational { num: Vec<i64>, den: Vec<Vec<i64>> },
    Algebraic(Expr),
    /// `F_a(x,1)`.
    FA(Composition),
    /// `1 + Σ_{a=1}^{k-1} Σ_{b=0}^{k-1} C(a+b-1,b) x^{a+b}`.
    OnesUnder123 { k: usize },
    IncreasingBound { m: usize, k: usize },
    /// `p_0 = 1`, `p_n = Σ_{i=0}^{k-2} C(n-1,i)`.
    BinomialPartialSum { k: usize },
    /// `1 / (1 - x / (1 - x·NC(τ)))`.
    NcWrap(Source),
    /// `1 / (1 - x·NC(σ))`.
    NcLift(Source),
    BinomialTransform(Source),
    Lift1a21b { k: usize, inner: Source },
    TwoOnes { init: Vec<u64> },
    PrependOne(Source),
    Sequence(NamedSequence),
}

/// Coefficient formulas quoted directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedSequence {
    /// `(3^{n-1}+1)/2` for `n ≥ 1`.
    HalfPowerOfThree,
    /// `1 + (n-1) 2^{n-2}` for `n ≥ 1`.
    OnePlusLinearPowerOfTwo,
    /// `2^{n-5}(n²-n+14)` for `n ≥ 2`.
    QuadraticPowerOfTwo,
    /// `F_{2n-2}` with `F_0 = F_1 = 1`.
    EvenFibonacci,
    /// `(n⁴-6n³+19n²-22n+16)/8` for `n ≥ 1`.
    Quartic,
}

/// One catalog record.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub kind: EntryKind,
    pub recipe: Recipe,
    pub oracle: Vec<PatternSet>,
    pub filter: Option<OracleFilter>,
    /// Entries whose expansions must coincide with this one.
    pub same_as: Vec<String>,
    pub anchor: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    id: String,
    kind: EntryKind,
    num: Option<Vec<i64>>,
    den: Option<Vec<Vec<i64>>>,
    expr: Option<String>,
    recipe: Option<String>,
    oracle: Vec<String>,
    filter: Option<OracleFilter>,
    #[serde(default)]
    same_as: Vec<String>,
    anchor: String,
}

#[derive(Deserialize)]
struct RawCatalog {
    entry: Vec<RawEntry>,
}

fn parse_source(key: &str, value: &str) -> Result<Source> {
    match key {
        "inner" => Ok(Source::Entry(value.to_string())),
        "avoid" => Ok(Source::Avoiders(PatternSet::parse_list(&value.replace('+', ","))?)),
        _ => Err(Error::Catalog(format!("unknown source {key:?}"))),
    }
}

fn parse_recipe(text: &str) -> Result<Recipe> {
    let bad = |msg: &str| Error::Catalog(format!("recipe {text:?}: {msg}"));
    let mut words = text.split_whitespace();
    let name = words.next().ok_or_else(|| bad("empty"))?;
    let mut args: BTreeMap<&str, &str> = BTreeMap::new();
    for w in words {
        let (k, v) = w.split_once('=').ok_or_else(|| bad("expected key=value"))?;
        args.insert(k, v);
    }
    let num = |key: &str| -> Result<usize> {
        args.get(key).ok_or_else(|| bad(&format!("missing {key}")))?.parse().map_err(|_| bad(&format!("bad {key}")))
    };
    let source = || -> Result<Source> {
        let (k, v) = args
            .iter()
            .find(|(k, _)| **k == "inner" || **k == "avoid")
            .ok_or_else(|| bad("needs inner= or avoid="))?;
        parse_source(k, v)
    };
    Ok(match name {
        "fa" => Recipe::FA(args.get("a").ok_or_else(|| bad("missing a"))?.parse()?),
        "obs-123-ones" => Recipe::OnesUnder123 { k: num("k")? },
        "increasing-bound" => Recipe::IncreasingBound { m: num("m")?, k: num("k")? },
        "binomial-partial-sum" => Recipe::BinomialPartialSum { k: num("k")? },
        "nc-wrap" => Recipe::NcWrap(source()?),
        "nc-lift" => Recipe::NcLift(source()?),
        "binomial-transform" => Recipe::BinomialTransform(source()?),
        "lift-1a21b" => Recipe::Lift1a21b { k: num("k")?, inner: source()? },
        "prepend-one" => Recipe::PrependOne(source()?),
        "two-ones-recurrence" => {
            let init = args.get("init").ok_or_else(|| bad("missing init"))?;
            let init: Vec<u64> =
                init.split(',').map(|s| s.parse().map_err(|_| bad("bad init"))).collect::<Result<_>>()?;
            if init.len() != 4 {
                return Err(bad("init needs the counts for n = 0..3"));
            }
            Recipe::TwoOnes { init }
        }
        "sequence" => Recipe::Sequence(match *args.get("name").ok_or_else(|| bad("missing name"))? {
            "half-power-of-three" => NamedSequence::HalfPowerOfThree,
            "one-plus-linear-power-of-two" => NamedSequence::OnePlusLinearPowerOfTwo,
            "quadratic-power-of-two" => NamedSequence::QuadraticPowerOfTwo,
            "even-fibonacci" => NamedSequence::EvenFibonacci,
            "quartic" => NamedSequence::Quartic,
            other => return Err(bad(&format!("unknown sequence {other:?}"))),
        }),
        other => return Err(bad(&format!("unknown recurrence {other:?}"))),
    })
}

fn build(raw: RawEntry) -> Result<CatalogEntry> {
    let id = raw.id.clone();
    let bad = |msg: &str| Error::Catalog(format!("entry {id}: {msg}"));
    let recipe = match raw.kind {
        EntryKind::Rational => Recipe::Rational {
            num: raw.num.ok_or_else(|| bad("rational entry without num"))?,
            den: raw.den.ok_or_else(|| bad("rational entry without den"))?,
        },
        EntryKind::Algebraic => Recipe::Algebraic(raw.expr.ok_or_else(|| bad("algebraic entry without expr"))?.parse()?),
        EntryKind::Recurrence => parse_recipe(&raw.recipe.ok_or_else(|| bad("recurrence entry without recipe"))?)?,
    };
    let oracle = raw.oracle.iter().map(|s| PatternSet::parse_list(s)).collect::<Result<Vec<_>>>()?;
    Ok(CatalogEntry {
        id: raw.id,
        kind: raw.kind,
        recipe,
        oracle,
        filter: raw.filter,
        same_as: raw.same_as,
        anchor: raw.anchor,
    })
}

/// Parse a catalog in the shipped TOML format.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let raw: RawCatalog = toml::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;
    let entries = raw.entry.into_iter().map(build).collect::<Result<Vec<_>>>()?;
    let mut seen = std::collections::BTreeSet::new();
    for e in &entries {
        if !seen.insert(e.id.as_str()) {
            return Err(Error::Catalog(format!("duplicate id {:?}", e.id)));
        }
    }
    for e in &entries {
        for other in e.same_as.iter().chain(e.references().iter()) {
            if !seen.contains(other.as_str()) {
                return Err(Error::Catalog(format!("entry {} refers to unknown {other:?}", e.id)));
            }
        }
    }
    Ok(entries)
}

impl CatalogEntry {
    /// Entries this one is computed from.
    pub fn references(&self) -> Vec<String> {
        match &self.recipe {
            Recipe::Algebraic(e) => e.references(),
            Recipe::NcWrap(Source::Entry(id))
            | Recipe::NcLift(Source::Entry(id))
            | Recipe::BinomialTransform(Source::Entry(id))
            | Recipe::Lift1a21b { inner: Source::Entry(id), .. }
            | Recipe::PrependOne(Source::Entry(id)) => vec![id.clone()],
            _ => Vec::new(),
        }
    }
}

/// The shipped catalog.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| parse_catalog(CATALOG_TOML).expect("shipped catalog parses"))
}

fn lookup(id: &str) -> Result<&'static CatalogEntry> {
    catalog().iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownEntry(id.to_string()))
}

/// Expand the closed form of entry `id` to `order`.
pub fn expand_catalog(id: &str, order: usize) -> Result<Series> {
    expand_at_depth(lookup(id)?, order, 0)
}

fn counts_to_series(c: &CountVector, order: usize) -> Series {
    Series::from_coeffs((0..=order).map(|n| Q::from_integer(BigInt::from(c.get(n).clone()))).collect())
}

fn series_to_counts(s: &Series) -> Result<CountVector> {
    let counts = s
        .coeffs()
        .iter()
        .map(|c| {
            c.is_integer()
                .then(|| c.to_integer().to_biguint())
                .flatten()
                .ok_or_else(|| Error::Catalog(format!("coefficient {c} is not a count")))
        })
        .collect::<Result<Vec<BigUint>>>()?;
    Ok(CountVector { counts })
}

fn source_series(src: &Source, order: usize, depth: usize) -> Result<Series> {
    match src {
        Source::Entry(id) => expand_at_depth(lookup(id)?, order, depth + 1),
        Source::Avoiders(set) => Ok(counts_to_series(&count_avoiders(set, order), order)),
    }
}

fn expand_at_depth(entry: &CatalogEntry, order: usize, depth: usize) -> Result<Series> {
    if depth > 16 {
        return Err(Error::Catalog(format!("reference chain through {} is too deep", entry.id)));
    }
    let n = order;
    let x = Series::var(n);
    let one = Series::one(n);
    Ok(match &entry.recipe {
        Recipe::Rational { num, den } => {
            let mut d = one.clone();
            for f in den {
                d = d.mul(&Series::from_ints(f, n));
            }
            Series::from_ints(num, n).div(&d)?
        }
        Recipe::Algebraic(e) => {
            let mut resolve = |id: &str, ord: usize| expand_at_depth(lookup(id)?, ord, depth + 1);
            eval_expr(e, n, &mut resolve)?
        }
        Recipe::FA(a) => expand_f_a(a, n)?.specialize(&q(1)),
        Recipe::OnesUnder123 { k } => {
            let mut c = vec![Q::zero(); n + 1];
            c[0] = q(1);
            for a in 1..*k {
                for b in 0..*k {
                    if a + b <= n {
                        c[a + b] += Q::from_integer(binomial((a + b) as i64 - 1, b as i64));
                    }
                }
            }
            Series::from_coeffs(c)
        }
        Recipe::IncreasingBound { m, k } => {
            if *m < 2 || k < m {
                return Err(Error::BadParams(format!("increasing-bound m={m} k={k}")));
            }
            increasing_bound(*m, *k, n)?
        }
        Recipe::BinomialPartialSum { k } => Series::from_coeffs(
            (0..=n)
                .map(|i| {
                    if i == 0 {
                        q(1)
                    } else {
                        Q::from_integer((0..=(*k as i64 - 2)).map(|j| binomial(i as i64 - 1, j)).sum())
                    }
                })
                .collect(),
        ),
        Recipe::NcWrap(src) => {
            let inner = source_series(src, n, depth)?;
            let c = x.div(&one.sub(&x.mul(&inner)))?;
            one.div(&one.sub(&c))?
        }
        Recipe::NcLift(src) => one.div(&one.sub(&x.mul(&source_series(src, n, depth)?)))?,
        Recipe::BinomialTransform(src) => {
            let base = series_to_counts(&source_series(src, n.saturating_sub(1), depth)?)?;
            counts_to_series(&binomial_transform(&base), n)
        }
        Recipe::Lift1a21b { k, inner } => {
            let base = series_to_counts(&source_series(inner, n, depth)?)?;
            counts_to_series(&lift_1a21b(*k, &base), n)
        }
        Recipe::TwoOnes { init } => {
            counts_to_series(&two_ones_lift(&CountVector::from_u64(init), None, n.max(3)), n)
        }
        Recipe::PrependOne(src) => prepend_one(&source_series(src, n, depth)?)?,
        Recipe::Sequence(seq) => Series::from_coeffs((0..=n).map(|i| named_term(*seq, i)).collect()),
    })
}

fn named_term(seq: NamedSequence, n: usize) -> Q {
    let pow = |b: i64, e: i64| -> Q {
        if e >= 0 {
            Q::from_integer(BigInt::from(b).pow(e as u32))
        } else {
            Q::from_integer(BigInt::one()) / Q::from_integer(BigInt::from(b).pow((-e) as u32))
        }
    };
    let ni = n as i64;
    match seq {
        NamedSequence::HalfPowerOfThree if n >= 1 => (pow(3, ni - 1) + q(1)) / q(2),
        NamedSequence::OnePlusLinearPowerOfTwo if n >= 1 => q(1) + q(ni - 1) * pow(2, ni - 2),
        NamedSequence::QuadraticPowerOfTwo if n >= 2 => pow(2, ni - 5) * q(ni * ni - ni + 14),
        NamedSequence::Quartic if n >= 1 => q(ni.pow(4) - 6 * ni.pow(3) + 19 * ni * ni - 22 * ni + 16) / q(8),
        NamedSequence::EvenFibonacci if n >= 1 => {
            let (mut a, mut b) = (BigInt::one(), BigInt::one());
            for _ in 0..(2 * n - 2) {
                let c = &a + &b;
                a = b;
                b = c;
            }
            Q::from_integer(a)
        }
        _ => q(1),
    }
}

/// Comparison of one oracle with the expansion.
#[derive(Clone, Debug, Serialize)]
pub struct OracleCheck {
    pub patterns: String,
    pub counts: CountVector,
    pub first_mismatch: Option<usize>,
}

/// Comparison of the expansion with another entry that must coincide.
#[derive(Clone, Debug, Serialize)]
pub struct SameAsCheck {
    pub id: String,
    pub first_mismatch: Option<usize>,
}

/// Outcome of verifying one entry to a given order.
#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub anchor: String,
    pub order: usize,
    #[serde(serialize_with = "ser_expansion")]
    pub expansion: Vec<Q>,
    pub oracles: Vec<OracleCheck>,
    pub same_as: Vec<SameAsCheck>,
    pub passed: bool,
}

fn ser_expansion<S: serde::Serializer>(xs: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct Coeff<'a>(&'a Q);
    impl Serialize for Coeff<'_> {
        fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            match self.0.is_integer().then(|| self.0.to_integer().to_biguint()).flatten() {
                Some(v) => ser_big(&v, s),
                None => s.serialize_str(&self.0.to_string()),
            }
        }
    }
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&Coeff(x))?;
    }
    seq.end()
}

fn first_mismatch(a: &[Q], b: &[Q]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y)
}

/// Expand entry `id` to `order` and compare with every oracle and every
/// entry it must coincide with.
pub fn verify_entry(id: &str, order: usize) -> Result<EntryReport> {
    let entry = lookup(id)?;
    let series = expand_catalog(id, order)?;
    let oracles: Vec<OracleCheck> = entry
        .oracle
        .iter()
        .map(|set| {
            let counts = match entry.filter {
                Some(f) => count_avoiders_where(set, order, |w| f.keep(w)),
                None => count_avoiders(set, order),
            };
            let got = counts_to_series(&counts, order);
            let first_mismatch = first_mismatch(series.coeffs(), got.coeffs());
            OracleCheck { patterns: set.to_string(), counts, first_mismatch }
        })
        .collect();
    let same_as = entry
        .same_as
        .iter()
        .map(|other| {
            let s = expand_catalog(other, order)?;
            Ok(SameAsCheck { id: other.clone(), first_mismatch: first_mismatch(series.coeffs(), s.coeffs()) })
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = oracles.iter().all(|o| o.first_mismatch.is_none()) && same_as.iter().all(|s| s.first_mismatch.is_none());
    Ok(EntryReport {
        id: entry.id.clone(),
        anchor: entry.anchor.clone(),
        order,
        expansion: series.coeffs().to_vec(),
        oracles,
        same_as,
        passed,
    })
}

/// [`verify_entry`] for the whole catalog, in catalog order; entries run in
/// parallel on the current rayon pool.
pub fn verify_all(order: usize) -> Result<Vec<EntryReport>> {
    catalog().par_iter().map(|e| verify_entry(&e.id, order)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_catalog_parses() {
        assert!(catalog().len() >= 20);
    }

    #[test]
    fn quoted_expansions() {
        let ints = |id: &str, n: usize| -> Vec<String> {
            expand_catalog(id, n).unwrap().coeffs().iter().map(|c| c.to_string()).collect()
        };
        assert_eq!(ints("nc_12321", 5), ["1", "1", "2", "5", "14", "41"]);
        assert_eq!(ints("motzkin_nc111", 6), ["1", "1", "2", "4", "9", "21", "51"]);
        assert_eq!(ints("even_fibonacci", 4), ["1", "1", "2", "5", "13"]);
        // (5^4 - 6·5^3 + 19·5^2 - 22·5 + 16)/8
        assert_eq!(ints("pair_1211_1234", 5)[5], "32");
    }

    #[test]
    fn bad_catalogs_are_rejected() {
        let dup = "[[entry]]\nid='a'\nkind='rational'\nnum=[1]\nden=[]\noracle=[]\nanchor=''\n";
        assert!(parse_catalog(&format!("{dup}{dup}")).is_err());
        let dangling = "[[entry]]\nid='a'\nkind='algebraic'\nexpr='$b'\noracle=[]\nanchor=''\n";
        assert!(parse_catalog(dangling).is_err());
        assert!(matches!(expand_catalog("no_such_entry", 3), Err(Error::UnknownEntry(_))));
    }
}
