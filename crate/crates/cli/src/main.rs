//! `partavoid`: batch front end for counting avoiders, classifying pattern
//! pairs, checking generating functions and bijections.
//!
//! Exit status is 0 when every check passes, 1 on a verification mismatch
//! and 2 on a usage or parse error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use partavoid::bijections::bijection_suite;
use partavoid::classify::{check_3k_bound, fixture, verify_table};
use partavoid::composition::search_simcomp;
use partavoid::{classify, count_avoiders, generate_pairs, verify_all, verify_entry, EquivNotion, PairFamily, PatternSet};

const BOUND_ANCHOR: &str = "form at most $1+\\xi_k$ equivalence classes";
const SIMCOMP_ANCHOR: &str = "Are there any more equivalences";

#[derive(Parser)]
#[command(name = "partavoid", version, about = "Pattern avoidance in set partitions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Size of the worker pool (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    workers: Option<u16>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "three_k")]
    ThreeK,
    #[value(name = "four_four")]
    FourFour,
    #[value(name = "nc_tau")]
    NcTau,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count avoiders of a pattern set for every size up to max-n.
    Count {
        /// Comma separated pattern literals; omit to count all partitions.
        #[arg(long, default_value = "")]
        patterns: String,
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        max_n: u16,
    },
    /// Classify a family of pattern sets and optionally diff against a fixture.
    Classify {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, default_value = "wilf")]
        notion: String,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u16).range(1..))]
        max_n: u16,
        #[arg(long)]
        fixture: Option<String>,
    },
    /// Expand catalog generating functions and compare with enumeration.
    VerifyGf {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        entry: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 16)]
        order: usize,
    },
    /// Run every bijection check up to max-n.
    Bijections {
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u16).range(1..))]
        max_n: u16,
    },
    /// Compare the number of (3,k)-pair classes with 1 + xi(k).
    #[command(name = "bound-3k")]
    Bound3k {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u16).range(1..))]
        max_n: u16,
    },
    /// Look for 2-free partitions of k with equal dominator counts.
    SearchSimcomp {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 14, value_parser = clap::value_parser!(u16).range(1..))]
        max_n: u16,
    },
}

/// A rendered command result.
struct Outcome {
    passed: bool,
    json: Value,
    csv: String,
    text: String,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn run_count(patterns: &str, max_n: usize) -> Result<Outcome> {
    let set = PatternSet::parse_list(patterns)?;
    let counts = count_avoiders(&set, max_n);
    let mut csv = String::from("n,count\n");
    let mut text = format!("avoiders of {set}\n");
    for (n, c) in counts.counts.iter().enumerate() {
        writeln!(csv, "{n},{c}")?;
        writeln!(text, "{n:>3} {c}")?;
    }
    let json = json!({ "patterns": set.to_string(), "counts": to_value(&counts)["counts"] });
    Ok(Outcome { passed: true, json, csv, text })
}

fn run_classify(
    family: FamilyArg,
    k: Option<usize>,
    size: Option<usize>,
    notion: &str,
    max_n: usize,
    fixture_id: Option<&str>,
) -> Result<Outcome> {
    let family = match family {
        FamilyArg::ThreeK => PairFamily::ThreeK(k.context("--k is required for three_k")?),
        FamilyArg::FourFour => PairFamily::FourFour,
        FamilyArg::NcTau => PairFamily::NcTau(size.context("--size is required for nc_tau")?),
    };
    let notion: EquivNotion = notion.parse()?;
    let mut report = classify(&generate_pairs(&family), notion, max_n)?;
    let anchor = match fixture_id {
        Some(id) => {
            report.diff = Some(verify_table(&report, id)?);
            Some(fixture(id)?.anchor)
        }
        None => None,
    };
    let passed = report.diff.as_ref().map_or(true, Vec::is_empty);
    let mut csv = String::from("class,member,first_separating_n_vs_next_class\n");
    let mut text = format!("{family} under {notion}, n <= {max_n}: {} classes\n", report.classes.len());
    if let Some(a) = &anchor {
        writeln!(text, "anchor: {a}")?;
    }
    for (i, c) in report.classes.iter().enumerate() {
        let sep = c.first_separating_n_vs_next_class.map_or(String::new(), |n| n.to_string());
        let members: Vec<String> = c.members.iter().map(|m| m.to_string()).collect();
        for m in &members {
            writeln!(csv, "{i},\"{m}\",{sep}")?;
        }
        writeln!(text, "{:>3}. {}", i + 1, members.join(" "))?;
    }
    if let Some(diff) = &report.diff {
        writeln!(text, "diff: {}", if diff.is_empty() { "none".to_string() } else { format!("{} entries", diff.len()) })?;
        for d in diff {
            writeln!(text, "  {}", serde_json::to_string(d)?)?;
        }
    }
    let mut json = to_value(&report);
    json["family"] = json!(family.to_string());
    json["anchor"] = json!(anchor);
    Ok(Outcome { passed, json, csv, text })
}

fn run_verify_gf(entry: Option<&str>, order: usize) -> Result<Outcome> {
    let reports = match entry {
        Some(id) => vec![verify_entry(id, order)?],
        None => verify_all(order)?,
    };
    let passed = reports.iter().all(|r| r.passed);
    let mut csv = String::from("id,passed,anchor\n");
    let mut text = String::new();
    for r in &reports {
        writeln!(csv, "{},{},\"{}\"", r.id, r.passed, r.anchor.replace('"', "\"\""))?;
        writeln!(text, "{} {:<28} {}", if r.passed { "PASS" } else { "FAIL" }, r.id, r.anchor)?;
        for o in &r.oracles {
            if let Some(n) = o.first_mismatch {
                writeln!(text, "     oracle {} differs at n = {n}", o.patterns)?;
            }
        }
        for s in &r.same_as {
            if let Some(n) = s.first_mismatch {
                writeln!(text, "     same_as {} differs at n = {n}", s.id)?;
            }
        }
    }
    writeln!(text, "{} of {} entries pass at order {order}", reports.iter().filter(|r| r.passed).count(), reports.len())?;
    Ok(Outcome { passed, json: json!({ "order": order, "entries": to_value(&reports) }), csv, text })
}

fn run_bijections(max_n: usize) -> Result<Outcome> {
    let reports = bijection_suite(max_n, 5.min(max_n), max_n, max_n as u32);
    let passed = reports.iter().all(|r| r.is_bijective);
    let mut csv = String::from("name,n,domain_count,codomain_count,is_bijective\n");
    let mut text = String::new();
    for r in &reports {
        writeln!(csv, "\"{}\",{},{},{},{}", r.name, r.n, r.domain_count, r.codomain_count, r.is_bijective)?;
        if !r.is_bijective {
            writeln!(text, "FAIL {} counterexample {:?}", r.name, r.counterexample)?;
        }
    }
    let good = reports.iter().filter(|r| r.is_bijective).count();
    writeln!(text, "{good} of {} maps bijective, sizes up to {max_n}", reports.len())?;
    Ok(Outcome { passed, json: json!({ "max_n": max_n, "reports": to_value(&reports) }), csv, text })
}

fn run_bound_3k(k: usize, max_n: usize) -> Result<Outcome> {
    let (observed, bound) = check_3k_bound(k, max_n)?;
    let passed = observed == bound;
    let json = json!({ "k": k, "max_n": max_n, "observed": observed, "bound": bound, "anchor": BOUND_ANCHOR });
    let csv = format!("k,max_n,observed,bound\n{k},{max_n},{observed},{bound}\n");
    let text = format!("(3,{k})-pairs, n <= {max_n}: {observed} classes, 1 + xi({k}) = {bound}\nanchor: {BOUND_ANCHOR}\n");
    Ok(Outcome { passed, json, csv, text })
}

fn run_search_simcomp(k: u32, max_n: u32) -> Result<Outcome> {
    let search = search_simcomp(k, max_n);
    let passed = search.collisions.is_empty();
    let mut csv = String::from("a,b,first_separating_n\n");
    for (a, b, n) in &search.separations {
        writeln!(csv, "\"{a}\",\"{b}\",{n}")?;
    }
    let mut text = format!(
        "2-free partitions of {k}: {}, pairs separated by n <= {max_n}: {}, collisions: {}\nanchor: {SIMCOMP_ANCHOR}\n",
        search.partitions.len(),
        search.separations.len(),
        search.collisions.len()
    );
    for (a, b) in &search.collisions {
        writeln!(text, "  collision {a} ~ {b}")?;
    }
    let mut json = to_value(&search);
    json["anchor"] = json!(SIMCOMP_ANCHOR);
    Ok(Outcome { passed, json, csv, text })
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.cmd {
        Cmd::Count { patterns, max_n } => run_count(patterns, *max_n as usize),
        Cmd::Classify { family, k, size, notion, max_n, fixture } => {
            run_classify(*family, *k, *size, notion, *max_n as usize, fixture.as_deref())
        }
        Cmd::VerifyGf { entry, order, .. } => run_verify_gf(entry.as_deref(), *order),
        Cmd::Bijections { max_n } => run_bijections(*max_n as usize),
        Cmd::Bound3k { k, max_n } => run_bound_3k(*k, *max_n as usize),
        Cmd::SearchSimcomp { k, max_n } => run_search_simcomp(*k, *max_n as u32),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        pool = pool.num_threads(w as usize);
    }
    let result = pool.build().context("building the worker pool").and_then(|p| p.install(|| run(&cli)));
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("json renders") + "\n",
        Format::Csv => outcome.csv,
        Format::Text => outcome.text,
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    ExitCode::from(if outcome.passed { 0 } else { 1 })
}
