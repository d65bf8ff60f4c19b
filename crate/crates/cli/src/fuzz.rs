//! Parallel driver for the property catalog with a JSONL failure corpus.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use unitri_core::fuzz::{case_seed, run_case, FailureRecord, FuzzConfig, Outcome, Property};

use crate::commands::print_json;
use crate::{Format, Global, InputError, Status};

#[derive(Debug, Default, Serialize)]
struct PropertySummary {
    property: &'static str,
    cases: u64,
    failures: usize,
    witnesses: usize,
}

#[derive(Debug, Serialize)]
struct FuzzReport {
    seed: u64,
    samples: u64,
    replayed: usize,
    replay_failures: Vec<FailureRecord>,
    properties: Vec<PropertySummary>,
    failures: Vec<FailureRecord>,
}

fn selected(only: &[String]) -> Result<Vec<Property>, InputError> {
    if only.is_empty() {
        return Ok(Property::ALL.to_vec());
    }
    let mut props = only
        .iter()
        .map(|name| {
            Property::from_name(name).ok_or_else(|| {
                let known: Vec<_> = Property::ALL.iter().map(|p| p.name()).collect();
                InputError(format!(
                    "unknown property `{name}` (expected one of {})",
                    known.join(", ")
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    props.sort();
    props.dedup();
    Ok(props)
}

fn load_corpus(path: &Path) -> Result<Vec<FailureRecord>, InputError> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(n, line)| {
            serde_json::from_str(line)
                .map_err(|e| InputError(format!("{}:{}: {e}", path.display(), n + 1)))
        })
        .collect()
}

fn append_corpus(path: &Path, records: &[FailureRecord]) -> Result<(), InputError> {
    if records.is_empty() {
        return Ok(());
    }
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    for r in records {
        writeln!(file, "{}", serde_json::to_string(r)?)?;
    }
    Ok(())
}

fn sort_records(records: &mut [FailureRecord]) {
    records.sort_by(|a, b| (&a.property, a.seed).cmp(&(&b.property, b.seed)));
}

pub fn run(g: &Global, corpus: &Path, jobs: Option<usize>) -> Result<Status, InputError> {
    let props = selected(&g.only)?;
    let cfg = FuzzConfig {
        rank: g.rank_or(FuzzConfig::default().rank),
        max_length: g.max_length,
    };
    if cfg.rank == 0 {
        return Err(InputError("--rank must be at least 1".into()));
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        pool = pool.num_threads(n);
    }
    let pool = pool.build()?;

    let stored = load_corpus(corpus)?;
    let replay: Vec<(Property, u64)> = stored
        .iter()
        .filter_map(|r| Some((Property::from_name(&r.property)?, r.seed)))
        .filter(|(p, _)| props.contains(p))
        .collect();
    let mut replay_failures: Vec<FailureRecord> = pool.install(|| {
        replay
            .par_iter()
            .filter_map(|&(p, seed)| run_case(p, seed, &cfg).into_record(p, seed))
            .collect()
    });
    sort_records(&mut replay_failures);

    let samples = g.samples;
    let total = props.len() as u64 * samples;
    let outcomes: Vec<(Property, u64, Outcome)> = pool.install(|| {
        (0..total)
            .into_par_iter()
            .filter_map(|k| {
                let p = props[(k / samples) as usize];
                let seed = case_seed(g.seed, p, k % samples);
                match run_case(p, seed, &cfg) {
                    Outcome::Pass => None,
                    other => Some((p, seed, other)),
                }
            })
            .collect()
    });

    let mut summaries: BTreeMap<Property, PropertySummary> = props
        .iter()
        .map(|&p| {
            (
                p,
                PropertySummary {
                    property: p.name(),
                    cases: samples,
                    ..PropertySummary::default()
                },
            )
        })
        .collect();
    let mut failures = Vec::new();
    for (p, seed, outcome) in outcomes {
        let summary = summaries.get_mut(&p).expect("selected property");
        match outcome {
            Outcome::Witness(_) => summary.witnesses += 1,
            fail => {
                summary.failures += 1;
                failures.extend(fail.into_record(p, seed));
            }
        }
    }
    sort_records(&mut failures);

    let known: Vec<(&str, u64)> = stored
        .iter()
        .map(|r| (r.property.as_str(), r.seed))
        .collect();
    let fresh: Vec<FailureRecord> = failures
        .iter()
        .filter(|r| !known.contains(&(r.property.as_str(), r.seed)))
        .cloned()
        .collect();
    append_corpus(corpus, &fresh)?;

    let report = FuzzReport {
        seed: g.seed,
        samples,
        replayed: replay.len(),
        replay_failures,
        properties: summaries.into_values().collect(),
        failures,
    };
    let passed = report.failures.is_empty() && report.replay_failures.is_empty();
    match g.format {
        Format::Text => print_text(&report),
        Format::Json => print_json(&report)?,
    }
    Ok(if passed {
        Status::Ok
    } else {
        Status::RelationFailure
    })
}

fn print_record(r: &FailureRecord) {
    println!(
        "FAIL {} seed {}: case {}; expected {}; actual {}",
        r.property, r.seed, r.case, r.expected, r.actual
    );
}

fn print_text(report: &FuzzReport) {
    println!(
        "replayed {} corpus records, {} still failing",
        report.replayed,
        report.replay_failures.len()
    );
    for r in &report.replay_failures {
        print_record(r);
    }
    for s in &report.properties {
        let witnesses = if s.witnesses > 0 {
            format!("  {} kernel witnesses", s.witnesses)
        } else {
            String::new()
        };
        println!(
            "{:<24} {:>8} cases  {} failures{witnesses}",
            s.property, s.cases, s.failures
        );
    }
    for r in &report.failures {
        print_record(r);
    }
    let failed = report.failures.len() + report.replay_failures.len();
    if failed == 0 {
        println!("ok: no failures");
    } else {
        println!("{failed} failures");
    }
}
