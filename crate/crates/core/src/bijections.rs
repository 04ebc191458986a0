//! Explicit bijections between avoidance classes, checked exhaustively.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;

use num_bigint::BigUint;
use serde::Serialize;

use crate::composition::{
    bijection_multi1, bijection_multi2, compositions, dominates, split_last_two, swap_adjacent, Composition,
};
use crate::enumerate::enumerate_avoiders;
use crate::error::{Error, Result};
use crate::partition::{ser_big, Rgs};
use crate::pattern::{contains, Pattern, PatternSet};

/// Outcome of an exhaustive bijectivity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub name: String,
    /// Largest size checked.
    pub n: usize,
    #[serde(serialize_with = "ser_big")]
    pub domain_count: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub codomain_count: BigUint,
    pub is_bijective: bool,
    /// A colliding pair, an element mapped outside the codomain (with its
    /// image or the error), or an unreached codomain element.
    pub counterexample: Option<(String, String)>,
}

impl BijectionReport {
    /// Merge per-size reports of one map into a single report.
    pub fn combine(name: &str, n: usize, parts: &[BijectionReport]) -> BijectionReport {
        BijectionReport {
            name: name.to_string(),
            n,
            domain_count: parts.iter().map(|p| &p.domain_count).sum(),
            codomain_count: parts.iter().map(|p| &p.codomain_count).sum(),
            is_bijective: parts.iter().all(|p| p.is_bijective),
            counterexample: parts.iter().find_map(|p| p.counterexample.clone()),
        }
    }
}

/// Check that `map` sends `domain` injectively into `codomain` and that the
/// two sets have the same size.
pub fn check_bijection<T, F>(name: &str, n: usize, domain: &[T], codomain: &[T], map: F) -> BijectionReport
where
    T: Ord + Clone + Display,
    F: Fn(&T) -> Result<T>,
{
    let target: BTreeSet<&T> = codomain.iter().collect();
    let mut preimage: BTreeMap<T, &T> = BTreeMap::new();
    let mut counterexample = None;
    for x in domain {
        match map(x) {
            Err(e) => counterexample = Some((x.to_string(), e.to_string())),
            Ok(y) if !target.contains(&y) => counterexample = Some((x.to_string(), y.to_string())),
            Ok(y) => {
                if let Some(prev) = preimage.insert(y, x) {
                    counterexample = Some((prev.to_string(), x.to_string()));
                }
            }
        }
        if counterexample.is_some() {
            break;
        }
    }
    if counterexample.is_none() && domain.len() != codomain.len() {
        let missed = codomain.iter().find(|y| !preimage.contains_key(*y));
        counterexample = missed.map(|y| ("unreached".to_string(), y.to_string()));
    }
    BijectionReport {
        name: name.to_string(),
        n,
        domain_count: BigUint::from(domain.len()),
        codomain_count: BigUint::from(codomain.len()),
        is_bijective: counterexample.is_none() && domain.len() == codomain.len(),
        counterexample,
    }
}

fn avoiders(list: &str, n: usize) -> Vec<Rgs> {
    let set = PatternSet::parse_list(list).expect("static pattern list");
    let mut out = Vec::new();
    enumerate_avoiders(&set, n, |w| out.push(Rgs::from_valid(w.to_vec())));
    out
}

fn two_letter_image(word: &[u8]) -> Vec<u8> {
    word.iter().map(|&c| if c == 1 { 1 } else { 2 }).collect()
}

/// Keep the ones and send every other letter to 2. On 122-avoiders this is a
/// bijection onto the 123-avoiders.
pub fn f_122_to_123(p: &Rgs) -> Result<Rgs> {
    if contains(p.word(), &[1, 2, 2]) {
        return Err(Error::Not122Avoiding(p.to_string()));
    }
    Ok(Rgs::from_valid(two_letter_image(p.word())))
}

/// [`f_122_to_123`] as a map from `P_n(122)` to `P_n(123)`, for all `n ≤ max_n`.
pub fn verify_f_122(max_n: usize) -> BijectionReport {
    let parts: Vec<BijectionReport> = (0..=max_n)
        .map(|n| check_bijection("f", n, &avoiders("122", n), &avoiders("123", n), f_122_to_123))
        .collect();
    BijectionReport::combine("f: P(122) -> P(123)", max_n, &parts)
}

/// For every 122-avoider `π` of size at most `max_n`, check that `π`
/// contains `τ` iff `f(π)` contains `f(τ)`, and that `f` then maps
/// `P_n(122,τ)` onto `P_n(123,f(τ))`.
pub fn verify_lemma_122(tau: &Pattern, max_n: usize) -> Result<BijectionReport> {
    if contains(tau.word(), &[1, 2, 2]) || tau.rgs().num_blocks() < 2 {
        return Err(Error::PreconditionViolated(format!("{tau} must avoid 122 and have two blocks")));
    }
    let f_tau = two_letter_image(tau.word());
    let name = format!("f on P(122,{tau}) -> P(123,{})", Rgs::from_valid(f_tau.clone()));
    let mut parts = Vec::new();
    for n in 0..=max_n {
        let all = avoiders("122", n);
        let mismatch = all.iter().find(|p| contains(p.word(), tau.word()) != contains(&two_letter_image(p.word()), &f_tau));
        if let Some(p) = mismatch {
            let image = Rgs::from_valid(two_letter_image(p.word()));
            parts.push(BijectionReport {
                name: name.clone(),
                n,
                domain_count: BigUint::from(0u32),
                codomain_count: BigUint::from(0u32),
                is_bijective: false,
                counterexample: Some((p.to_string(), image.to_string())),
            });
            break;
        }
        let domain: Vec<Rgs> = all.into_iter().filter(|p| !contains(p.word(), tau.word())).collect();
        let codomain: Vec<Rgs> = avoiders("123", n).into_iter().filter(|p| !contains(p.word(), &f_tau)).collect();
        parts.push(check_bijection(&name, n, &domain, &codomain, f_122_to_123));
    }
    Ok(BijectionReport::combine(&name, max_n, &parts))
}

fn dominators(a: &Composition, n: u32, want: bool) -> Vec<Composition> {
    compositions(n).into_iter().filter(|b| dominates(a, b) == want).collect()
}

/// Exhaustive checks of the adjacent-swap and trailing-2 bijections on
/// compositions: every `a` of size at most `max_size`, every applicable
/// transformation, every `b` of size at most `max_size`. One report per
/// `(a, transformation)`.
pub fn verify_composition_bijections(max_size: u32) -> Vec<BijectionReport> {
    let mut reports = Vec::new();
    for size in 1..=max_size {
        for a in compositions(size) {
            for r in 1..a.len() {
                let a2 = swap_adjacent(&a, r);
                let name = format!("swap a={a} r={r}");
                let parts: Vec<BijectionReport> = (0..=max_size)
                    .map(|n| {
                        check_bijection(&name, n as usize, &dominators(&a, n, true), &dominators(&a2, n, true), |b| {
                            bijection_multi1(b, &a, r)
                        })
                    })
                    .collect();
                reports.push(BijectionReport::combine(&name, max_size as usize, &parts));
            }
            if let Ok(a2) = split_last_two(&a) {
                let name = format!("split a={a}");
                let parts: Vec<BijectionReport> = (0..=max_size)
                    .map(|n| {
                        check_bijection(
                            &name,
                            n as usize,
                            &dominators(&a, n, false),
                            &dominators(&a2, n, false),
                            |b| bijection_multi2(b, &a),
                        )
                    })
                    .collect();
                reports.push(BijectionReport::combine(&name, max_size as usize, &parts));
            }
        }
    }
    reports
}

/// `π = 1^a 2 α 3 2^b 4 5 ⋯ k` split into `(a, α, b, k)`.
fn split_1231_1233(p: &Rgs) -> Result<(usize, Vec<u8>, usize, u8)> {
    let bad = || Error::PreconditionViolated(format!("{p} is not of the form 1^a 2 α 3 2^b 4 ⋯ k"));
    let w = p.word();
    let k = p.num_blocks() as u8;
    if k < 3 {
        return Err(bad());
    }
    let a = w.iter().take_while(|&&c| c == 1).count();
    let three = w.iter().position(|&c| c == 3).ok_or_else(bad)?;
    if w.get(a) != Some(&2) {
        return Err(bad());
    }
    let alpha = w[a + 1..three].to_vec();
    let b = w[three + 1..].iter().take_while(|&&c| c == 2).count();
    let tail = &w[three + 1 + b..];
    if alpha.iter().any(|&c| c > 2) || !tail.iter().copied().eq(4..=k) {
        return Err(bad());
    }
    Ok((a, alpha, b, k))
}

/// `π ↦ π' = 12⋯(k−1) 2^{a−1} 1^b k α`, from `P_{n,k}(1231,1233)` to
/// `P_{n,k}(1123,1233)` for `k ≥ 3`.
pub fn map_pi_prime(p: &Rgs) -> Result<Rgs> {
    let (a, alpha, b, k) = split_1231_1233(p)?;
    let mut w: Vec<u8> = (1..k).collect();
    w.extend(std::iter::repeat(2).take(a - 1));
    w.extend(std::iter::repeat(1).take(b));
    w.push(k);
    w.extend(alpha);
    Rgs::new(w)
}

/// `π ↦ π'' = 12⋯(k−2) (k−1)^{b+1} 1^{a−1} k α'` with `α'` = `α` after
/// `2 ↦ k`, from `P_{n,k}(1231,1233)` to `P_{n,k}(1123,1232)` for `k ≥ 3`.
pub fn map_pi_double_prime(p: &Rgs) -> Result<Rgs> {
    let (a, alpha, b, k) = split_1231_1233(p)?;
    let mut w: Vec<u8> = (1..k - 1).collect();
    w.extend(std::iter::repeat(k - 1).take(b + 1));
    w.extend(std::iter::repeat(1).take(a - 1));
    w.push(k);
    w.extend(alpha.iter().map(|&c| if c == 2 { k } else { c }));
    Rgs::new(w)
}

/// Check both maps on every `P_{n,k}(1231,1233)` with `k ≥ 3`, `n ≤ max_n`.
pub fn verify_block_preserving_maps(max_n: usize) -> Vec<BijectionReport> {
    let by_blocks = |set: &str, n: usize| -> BTreeMap<usize, Vec<Rgs>> {
        let mut m: BTreeMap<usize, Vec<Rgs>> = BTreeMap::new();
        for p in avoiders(set, n) {
            if p.num_blocks() >= 3 {
                m.entry(p.num_blocks()).or_default().push(p);
            }
        }
        m
    };
    type Map = fn(&Rgs) -> Result<Rgs>;
    let targets: [(&str, &str, Map); 2] = [
        ("pi': P(1231,1233) -> P(1123,1233)", "1123,1233", map_pi_prime),
        ("pi'': P(1231,1233) -> P(1123,1232)", "1123,1232", map_pi_double_prime),
    ];
    targets
        .iter()
        .map(|(name, target, map)| {
            let mut parts = Vec::new();
            for n in 0..=max_n {
                let src = by_blocks("1231,1233", n);
                let dst = by_blocks(target, n);
                let ks: BTreeSet<usize> = src.keys().chain(dst.keys()).copied().collect();
                for k in ks {
                    let empty = Vec::new();
                    let (d, c) = (src.get(&k).unwrap_or(&empty), dst.get(&k).unwrap_or(&empty));
                    parts.push(check_bijection(name, n, d, c, map));
                }
            }
            BijectionReport::combine(name, max_n, &parts)
        })
        .collect()
}

/// Every check of this module: `f` and the block-preserving maps up to
/// `max_n`, the containment lemma for every admissible `τ` with
/// `|τ| ≤ max_tau` over hosts of size at most `lemma_n`, and the composition
/// bijections up to `max_size`.
pub fn bijection_suite(max_n: usize, max_tau: usize, lemma_n: usize, max_size: u32) -> Vec<BijectionReport> {
    let mut out = vec![verify_f_122(max_n)];
    for size in 2..=max_tau {
        for tau in avoiders("122", size) {
            if tau.num_blocks() >= 2 {
                out.push(verify_lemma_122(&Pattern::new(tau), lemma_n).expect("precondition holds"));
            }
        }
    }
    out.extend(verify_composition_bijections(max_size));
    out.extend(verify_block_preserving_maps(max_n));
    out
}
