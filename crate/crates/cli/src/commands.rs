use serde::Serialize;
use serde_json::json;
use unitri_core::dsl::{self, eval, parse, Context, Expr, Kind, Value};
use unitri_core::hnn::{fp_image, verify_fp_relations};
use unitri_core::unitri::{check_alpha, check_relation_suite, GeneratorTable, Report};
use unitri_core::{EndoMap, HnnWord, UniTri, Word};

use crate::{read_input, Cli, Command, Format, Global, InputError, Status};

type CmdResult = Result<Status, InputError>;

/// Relation groups accepted by `check-relations --only`.
pub const RELATION_GROUPS: [&str; 9] = [
    "eq4",
    "eq5",
    "remark1",
    "commute",
    "hydra",
    "alpha",
    "fp",
    "eq7",
    "fp-commute",
];

const FP_INJECTIVE: &str = "fp-injective";

pub fn run(cli: &Cli) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Reduce { input } => {
            let w = read(input, g.rank_or(2), Kind::Word)?.into_word()?;
            emit_word(g, &w)
        }
        Command::Apply { auto, word } => {
            let rank = g.rank_or(2);
            let e = read(auto, rank, Kind::EndoWord)?.into_endo()?;
            let w = read(word, rank, Kind::Word)?.into_word()?;
            emit_word(g, &e.apply(&w)?)
        }
        Command::Compose { left, right, ut } => {
            let rank = g.rank_or(2);
            if *ut {
                let a = read(left, rank, Kind::LambdaWord)?.into_unitri()?;
                let b = read(right, rank, Kind::LambdaWord)?.into_unitri()?;
                emit_unitri(g, &a.compose(&b)?)
            } else {
                let a = read(left, rank, Kind::EndoWord)?.into_endo()?;
                let b = read(right, rank, Kind::EndoWord)?.into_endo()?;
                emit_endo(g, &a.compose(&b)?)
            }
        }
        Command::Invert { ut, word, auto } => {
            let rank = g.rank_or(2);
            let (input, kind) = match (ut, word, auto) {
                (Some(x), _, _) => (x, Kind::LambdaWord),
                (_, Some(x), _) => (x, Kind::Word),
                (_, _, Some(x)) => (x, Kind::EndoWord),
                _ => return Err(InputError("one of --ut, --word, --auto is required".into())),
            };
            let ctx = Context::new(rank, kind);
            let expr = parse(&read_input(input)?, ctx)?;
            match eval(&Expr::Inverse(Box::new(expr)), ctx)? {
                Value::Word(w) => emit_word(g, &w),
                Value::UniTri(x) => emit_unitri(g, &x),
                Value::Endo(e) => emit_endo(g, &e),
                Value::Hnn(_) => unreachable!("HNN words are not read here"),
            }
        }
        Command::UtFromImages { images } => ut_from_images(g, images),
        Command::CheckRelations {
            limit,
            corrupt_table,
        } => check_relations(g, *limit, *corrupt_table),
        Command::Britton {
            input,
            check_trivial,
        } => {
            let w = read(input, g.rank_or(2), Kind::HnnWord)?.into_hnn()?;
            let reduced = w.britton_reduce();
            if !check_trivial {
                return emit_hnn(g, &reduced);
            }
            let trivial = reduced.is_trivial();
            let verdict = if trivial { "trivial" } else { "nontrivial" };
            match g.format {
                Format::Text => println!("{verdict}\n{reduced}"),
                Format::Json => print_json(&json!({ "trivial": trivial, "reduced": reduced }))?,
            }
            Ok(if trivial {
                Status::Ok
            } else {
                Status::Nontrivial
            })
        }
        Command::FpImage { input } => {
            let w = read(input, g.rank_or(2), Kind::HnnWord)?.into_hnn()?;
            emit_unitri(g, &fp_image(&w)?)
        }
        Command::Fuzz { corpus, jobs } => crate::fuzz::run(g, corpus, *jobs),
        Command::Bench { sizes, repeats } => bench(g, sizes, *repeats),
    }
}

fn read(arg: &str, rank: u32, kind: Kind) -> Result<Value, InputError> {
    Ok(dsl::read(&read_input(arg)?, Context::new(rank, kind))?)
}

pub fn print_json<T: Serialize>(value: &T) -> Result<(), InputError> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn emit<T: Serialize + std::fmt::Display>(g: &Global, value: &T) -> CmdResult {
    match g.format {
        Format::Text => println!("{value}"),
        Format::Json => print_json(value)?,
    }
    Ok(Status::Ok)
}

fn emit_word(g: &Global, w: &Word) -> CmdResult {
    emit(g, w)
}

fn emit_unitri(g: &Global, x: &UniTri) -> CmdResult {
    emit(g, x)
}

fn emit_endo(g: &Global, e: &EndoMap) -> CmdResult {
    emit(g, e)
}

fn emit_hnn(g: &Global, w: &HnnWord) -> CmdResult {
    emit(g, w)
}

/// Exit 1 when the images do not define a unitriangular automorphism.
fn ut_from_images(g: &Global, images: &[String]) -> CmdResult {
    let rank = images.len() as u32;
    if let Some(r) = g.rank {
        if r != rank {
            return Err(InputError(format!(
                "--rank {r} but {rank} images were given"
            )));
        }
    }
    let words = images
        .iter()
        .map(|s| Ok(read(s, rank, Kind::Word)?.into_word()?))
        .collect::<Result<Vec<_>, InputError>>()?;
    let endo = EndoMap::new(rank, words)?;
    match UniTri::from_endo(&endo) {
        Some(x) => emit_unitri(g, &x),
        None => {
            match g.format {
                Format::Text => println!("not unitriangular"),
                Format::Json => print_json(&serde_json::Value::Null)?,
            }
            Ok(Status::RelationFailure)
        }
    }
}

fn check_relations(g: &Global, limit: u32, corrupt: bool) -> CmdResult {
    for name in &g.only {
        if !RELATION_GROUPS.contains(&name.as_str()) && name != FP_INJECTIVE {
            return Err(InputError(format!(
                "unknown relation group `{name}` (expected one of {}, {FP_INJECTIVE})",
                RELATION_GROUPS.join(", ")
            )));
        }
    }
    if limit < 3 {
        return Err(InputError("--limit must be at least 3".into()));
    }
    let table = if corrupt {
        GeneratorTable::corrupted()
    } else {
        GeneratorTable::standard()
    };
    let wants = |group: &str| g.only.is_empty() || g.only.iter().any(|o| o == group);

    let mut report = Report::default();
    if ["eq4", "eq5", "remark1", "commute", "hydra"]
        .iter()
        .any(|x| wants(x))
    {
        report.extend(check_relation_suite(limit, &table)?);
    }
    if wants("alpha") {
        report.extend(check_alpha(&table)?);
    }
    let mut sign = None;
    if ["fp", "eq7", "fp-commute", FP_INJECTIVE]
        .iter()
        .any(|x| wants(x))
    {
        let samples = if wants(FP_INJECTIVE) {
            g.samples as usize
        } else {
            0
        };
        let v = verify_fp_relations(&table, samples, g.seed)?;
        sign = v.sign;
        report.extend(v.report);
    }
    if !g.only.is_empty() {
        let groups: Vec<&str> = g.only.iter().map(String::as_str).collect();
        report.retain_groups(&groups);
    }

    let passed = report.all_passed();
    match g.format {
        Format::Text => {
            print!("{report}");
            let failed = report.failures().count();
            println!(
                "{} of {} checks passed",
                report.checks.len() - failed,
                report.checks.len()
            );
        }
        Format::Json => print_json(&json!({
            "passed": passed,
            "stable_letter_sign": sign,
            "checks": report.checks,
        }))?,
    }
    Ok(if passed {
        Status::Ok
    } else {
        Status::RelationFailure
    })
}

fn bench(g: &Global, sizes: &[usize], repeats: usize) -> CmdResult {
    if sizes.is_empty() {
        return Err(InputError("--sizes must not be empty".into()));
    }
    let report = unitri_bench::run(sizes, g.seed, repeats);
    match g.format {
        Format::Text => {
            for m in &report.measurements {
                println!(
                    "{:<10} {:>10} letters  {:>10.3} ms  {:>8.1} M letters/s  reduced length {}",
                    m.workload.name(),
                    m.letters,
                    m.seconds * 1e3,
                    m.letters_per_second / 1e6,
                    m.reduced_length
                );
            }
            for s in &report.steps {
                println!(
                    "{:<10} {} -> {}: time per letter x{:.2}{}",
                    s.workload.name(),
                    s.from,
                    s.to,
                    s.ratio,
                    if s.within_bound { "" } else { "  (too slow)" }
                );
            }
            println!(
                "scaling {}",
                if report.linear {
                    "linear"
                } else {
                    "NOT linear"
                }
            );
        }
        Format::Json => print_json(&report)?,
    }
    Ok(if report.linear {
        Status::Ok
    } else {
        Status::RelationFailure
    })
}
