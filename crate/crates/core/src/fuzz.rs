//! Property catalog driven by per-case seeds.
//!
//! Every case is generated from its own 64-bit seed, so a failure can be
//! replayed from `(property, seed)` alone and the catalog can be sharded
//! across workers in any order.

use std::fmt;
use std::panic::{self, AssertUnwindSafe};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dsl::{self, Context, Expr, Gen, Kind};
use crate::hnn::{fp_image, fp_image_pair, HnnWord, PairElem};
use crate::morphism::EndoMap;
use crate::unitri::{alpha_image, evaluate_lambda_word, LambdaWord, UniTri};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    WordConfluence,
    WordGroupAxioms,
    EndoHomomorphism,
    UniTriRoundTrip,
    UniTriClosure,
    UniTriInverse,
    AlphaProbe,
    HnnReduction,
    HnnSoundness,
    HnnRelatorInsertion,
    FpBaseInjectivity,
    DslRoundTrip,
    DslBytes,
}

impl Property {
    pub const ALL: [Property; 13] = [
        Property::WordConfluence,
        Property::WordGroupAxioms,
        Property::EndoHomomorphism,
        Property::UniTriRoundTrip,
        Property::UniTriClosure,
        Property::UniTriInverse,
        Property::AlphaProbe,
        Property::HnnReduction,
        Property::HnnSoundness,
        Property::HnnRelatorInsertion,
        Property::FpBaseInjectivity,
        Property::DslRoundTrip,
        Property::DslBytes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::WordConfluence => "word.confluence",
            Property::WordGroupAxioms => "word.group-axioms",
            Property::EndoHomomorphism => "morphism.homomorphism",
            Property::UniTriRoundTrip => "unitri.round-trip",
            Property::UniTriClosure => "unitri.closure",
            Property::UniTriInverse => "unitri.inverse",
            Property::AlphaProbe => "alpha.probe",
            Property::HnnReduction => "hnn.reduction",
            Property::HnnSoundness => "hnn.soundness",
            Property::HnnRelatorInsertion => "hnn.relator-insertion",
            Property::FpBaseInjectivity => "fp.base-injectivity",
            Property::DslRoundTrip => "dsl.round-trip",
            Property::DslBytes => "dsl.bytes",
        }
    }

    pub fn from_name(name: &str) -> Option<Property> {
        Property::ALL.into_iter().find(|p| p.name() == name)
    }

    fn ordinal(self) -> u64 {
        Property::ALL.iter().position(|p| *p == self).unwrap() as u64
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuzzConfig {
    /// Rank of the free group used by the word and endomorphism properties.
    pub rank: u32,
    pub max_length: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            rank: 3,
            max_length: 12,
        }
    }
}

/// One line of the JSONL failure corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub property: String,
    pub seed: u64,
    pub case: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// Passed, but produced a noteworthy witness (an element trivial in
    /// `U_4` yet nontrivial in `H(F_2)`).
    Witness(String),
    Fail {
        case: String,
        expected: String,
        actual: String,
    },
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of case `index` of `property` in a run started from `run_seed`.
pub fn case_seed(run_seed: u64, property: Property, index: u64) -> u64 {
    splitmix(splitmix(run_seed ^ (property.ordinal() << 56)) ^ index)
}

/// Runs one case. Panics inside the property are reported as failures.
pub fn run_case(property: Property, seed: u64, cfg: &FuzzConfig) -> Outcome {
    let result = panic::catch_unwind(AssertUnwindSafe(|| check(property, seed, cfg)));
    match result {
        Ok(outcome) => outcome,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Outcome::Fail {
                case: format!("seed {seed}"),
                expected: "no panic".into(),
                actual: msg,
            }
        }
    }
}

impl Outcome {
    pub fn into_record(self, property: Property, seed: u64) -> Option<FailureRecord> {
        match self {
            Outcome::Fail {
                case,
                expected,
                actual,
            } => Some(FailureRecord {
                property: property.name().to_owned(),
                seed,
                case,
                expected,
                actual,
            }),
            _ => None,
        }
    }
}

fn fail(
    case: impl fmt::Display,
    expected: impl fmt::Display,
    actual: impl fmt::Display,
) -> Outcome {
    Outcome::Fail {
        case: case.to_string(),
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

fn ensure(
    ok: bool,
    case: impl fmt::Display,
    expected: impl fmt::Display,
    actual: impl fmt::Display,
) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        fail(case, expected, actual)
    }
}

fn check(property: Property, seed: u64, cfg: &FuzzConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rng = &mut rng;
    match property {
        Property::WordConfluence => word_confluence(rng, cfg),
        Property::WordGroupAxioms => word_group_axioms(rng, cfg),
        Property::EndoHomomorphism => endo_homomorphism(rng, cfg),
        Property::UniTriRoundTrip => unitri_round_trip(rng, cfg),
        Property::UniTriClosure => unitri_closure(rng, cfg),
        Property::UniTriInverse => unitri_inverse(rng, cfg),
        Property::AlphaProbe => alpha_probe(rng),
        Property::HnnReduction => hnn_reduction(rng),
        Property::HnnSoundness => hnn_soundness(rng),
        Property::HnnRelatorInsertion => hnn_relator_insertion(rng),
        Property::FpBaseInjectivity => fp_base_injectivity(rng),
        Property::DslRoundTrip => dsl_round_trip(rng, cfg),
        Property::DslBytes => dsl_bytes(rng),
    }
}

/// Unreduced letter sequence with plenty of cancellation.
pub fn random_raw_letters<R: Rng + ?Sized>(rng: &mut R, rank: u32, len: usize) -> Vec<Letter> {
    (0..len)
        .map(|_| {
            let k = rng.gen_range(1..=rank);
            if rng.gen() {
                Letter::pos(k)
            } else {
                Letter::neg(k)
            }
        })
        .collect()
}

fn raw_text(raw: &[Letter]) -> String {
    if raw.is_empty() {
        return "e".into();
    }
    raw.iter()
        .map(Letter::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Inserts `x x^-1` at a random position and checks the reduced form is
/// unchanged.
pub fn cancelling_insertion<R: Rng + ?Sized>(rng: &mut R, rank: u32, max_len: usize) -> Outcome {
    let len = rng.gen_range(0..=max_len);
    let raw = random_raw_letters(rng, rank, len);
    let x = random_raw_letters(rng, rank, 1)[0];
    let at = rng.gen_range(0..=raw.len());
    let mut with = raw.clone();
    with.splice(at..at, [x, x.inverse()]);
    let a = Word::reduce(raw.iter().copied(), rank).unwrap();
    let b = Word::reduce(with.iter().copied(), rank).unwrap();
    let again = Word::reduce(a.letters().iter().copied(), rank).unwrap();
    if a != again {
        return fail(raw_text(&raw), &a, &again);
    }
    ensure(a == b, raw_text(&with), &a, &b)
}

fn word_confluence(rng: &mut ChaCha8Rng, cfg: &FuzzConfig) -> Outcome {
    cancelling_insertion(rng, cfg.rank, 2 * cfg.max_length)
}

fn word_group_axioms(rng: &mut ChaCha8Rng, cfg: &FuzzConfig) -> Outcome {
    let (a, b, c) = (
        Word::random_upto(rng, cfg.max_length, cfg.rank).unwrap(),
        Word::random_upto(rng, cfg.max_length, cfg.rank).unwrap(),
        Word::random_upto(rng, cfg.max_length, cfg.rank).unwrap(),
    );
    let case = format!("{a} ; {b} ; {c}");
    let l = a.multiply(&b).unwrap().multiply(&c).unwrap();
    let r = a.multiply(&b.multiply(&c).unwrap()).unwrap();
    if l != r {
        return fail(case, l, r);
    }
    let id = Word::identity(cfg.rank);
    if a.multiply(&id).unwrap() != a || id.multiply(&a).unwrap() != a {
        return fail(case, "a e = e a = a", "identity law broken");
    }
    let inv = a.multiply(&a.inverse()).unwrap();
    if !inv.is_identity() || !a.inverse().multiply(&a).unwrap().is_identity() {
        return fail(case, "e", inv);
    }
    let ab = a.multiply(&b).unwrap();
    ensure(
        ab.len() <= a.len() + b.len(),
        case,
        "|ab| <= |a| + |b|",
        ab.len(),
    )
}

fn endo_homomorphism(rng: &mut ChaCha8Rng, cfg: &FuzzConfig) -> Outcome {
    let rank = cfg.rank;
    let images = (0..rank)
        .map(|_| Word::random_upto(rng, cfg.max_length / 2 + 1, rank).unwrap())
        .collect();
    let e = EndoMap::new(rank, images).unwrap();
    let u = Word::random_upto(rng, cfg.max_length, rank).unwrap();
    let v = Word::random_upto(rng, cfg.max_length, rank).unwrap();
    let lhs = e.apply(&u.multiply(&v).unwrap()).unwrap();
    let rhs = e
        .apply(&u)
        .unwrap()
        .multiply(&e.apply(&v).unwrap())
        .unwrap();
    ensure(lhs == rhs, format!("{e} ; {u} ; {v}"), lhs, rhs)
}

fn rand_unitri(rng: &mut ChaCha8Rng, rank: u32, max_len: usize) -> UniTri {
    UniTri::random_with(rng, rank, max_len).unwrap()
}

fn unitri_round_trip(rng: &mut ChaCha8Rng, cfg: &FuzzConfig) -> Outcome {
    let rank = rng.gen_range(1..=6);
    let x = rand_unitri(rng, rank, cfg.max_length);
    let back = UniTri::from_endo(&x.to_endo());
    if back.as_ref() != Some(&x) {
        return fail(dsl::format_unitri(&x), &x, format!("{back:?}"));
    }
    let y = evaluate_lambda_word(rank, &x.to_lambda_word()).unwrap();
    ensure(y == x, dsl::format_unitri(&x), &x, &y)
}

/// `ut_compose` against composition of the induced endomorphisms.
pub fn closure_case<R: Rng + ?Sized>(rng: &mut R, rank: u32, max_len: usize) -> Outcome {
    let a = UniTri::random_with(rng, rank, max_len).unwrap();
    let b = UniTri::random_with(rng, rank, max_len).unwrap();
    let direct = a.compose(&b).unwrap();
    let oracle = UniTri::from_endo(&a.to_endo().compose(&b.to_endo()).unwrap());
    ensure(
        oracle.as_ref() == Some(&direct),
        format!("{} ; {}", dsl::format_unitri(&a), dsl::format_unitri(&b)),
        format!("{oracle:?}"),
        &direct,
    )
}

pub fn inverse_case<R: Rng + ?Sized>(rng: &mut R, rank: u32, max_len: usize) -> Outcome {
    let a = UniTri::random_with(rng, rank, max_len).unwrap();
    let inv = a.inverse();
    let right = a.compose(&inv).unwrap();
    let left = inv.compose(&a).unwrap();
    ensure(
        right.is_identity() && left.is_identity(),
        dsl::format_unitri(&a),
        "identity on both sides",
        format!("{right} / {left}"),
    )
}

fn unitri_closure(rng: &mut ChaCha8Rng, cfg: &FuzzConfig) -> Outcome {
    let rank = rng.gen_range(1..=6);
    closure_case(rng, rank, cfg.max_length)
}

fn unitri_inverse(rng: &mut ChaCha8Rng, cfg: &FuzzConfig) -> Outcome {
    let rank = rng.gen_range(1..=6);
    inverse_case(rng, rank, cfg.max_length)
}

/// Triviality of a λ-word in `U_3` against triviality of its image in
/// `Aut(F_2)`.
pub fn alpha_case<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> Outcome {
    let w = crate::unitri::alpha::probe_word(rng, max_len);
    let in_u3 = evaluate_lambda_word(3, &w).unwrap().is_identity();
    let in_aut = alpha_image(&w).unwrap().is_identity();
    ensure(
        in_u3 == in_aut,
        lambda_text(&w),
        format!("trivial in U_3: {in_u3}"),
        format!("trivial in Aut(F_2): {in_aut}"),
    )
}

fn lambda_text(w: &LambdaWord) -> String {
    serde_json::to_string(w).unwrap()
}

fn alpha_probe(rng: &mut ChaCha8Rng) -> Outcome {
    alpha_case(rng, 30)
}

/// Random HNN word over `F_2` with at most 8 stable letters and pair
/// components of length at most 10.
pub fn random_hnn<R: Rng + ?Sized>(rng: &mut R) -> HnnWord {
    let k = rng.gen_range(0..=8);
    HnnWord::random_with(rng, 2, k, 10).unwrap()
}

/// A product of conjugates of defining relators, trivial by construction.
pub fn random_trivial_hnn<R: Rng + ?Sized>(rng: &mut R) -> HnnWord {
    let mut w = HnnWord::identity(2);
    for _ in 0..rng.gen_range(1..=2) {
        let g = Word::random_upto(rng, 4, 2).unwrap();
        let x = {
            let k = rng.gen_range(0..=3);
            HnnWord::random_with(rng, 2, k, 4).unwrap()
        };
        let mut r = HnnWord::relator(&g);
        if rng.gen() {
            r = r.inverse();
        }
        w = w
            .multiply(&x.multiply(&r).unwrap().multiply(&x.inverse()).unwrap())
            .unwrap();
    }
    w
}

pub fn hnn_reduction_case<R: Rng + ?Sized>(rng: &mut R) -> Outcome {
    let w = random_hnn(rng);
    let r = w.britton_reduce();
    let rr = r.clone().unmark().britton_reduce();
    if r != rr {
        return fail(&w, &r, &rr);
    }
    let before = fp_image(&w).unwrap();
    let after = fp_image(&r).unwrap();
    ensure(before == after, &w, before, after)
}

pub fn hnn_soundness_case<R: Rng + ?Sized>(rng: &mut R) -> Outcome {
    let constructed_trivial = rng.gen_bool(0.5);
    let w = if constructed_trivial {
        random_trivial_hnn(rng)
    } else {
        random_hnn(rng)
    };
    let trivial = w.is_trivial();
    if constructed_trivial && !trivial {
        return fail(&w, "trivial", w.britton_reduce());
    }
    let image = fp_image(&w).unwrap();
    if trivial && !image.is_identity() {
        return fail(&w, "identity image", image);
    }
    if !trivial && image.is_identity() {
        return Outcome::Witness(format!("kernel element: {w}"));
    }
    Outcome::Pass
}

pub fn relator_insertion_case<R: Rng + ?Sized>(rng: &mut R) -> Outcome {
    let w = if rng.gen_bool(0.25) {
        random_trivial_hnn(rng)
    } else {
        random_hnn(rng)
    };
    let g = Word::random_upto(rng, 6, 2).unwrap();
    let at = rng.gen_range(0..=w.t_count());
    let (p, s) = w.split_at(at, rng.gen_range(0..=10), rng.gen_range(0..=10));
    let mut r = HnnWord::relator(&g);
    if rng.gen() {
        r = r.inverse();
    }
    let inserted = p.multiply(&r).unwrap().multiply(&s).unwrap();
    let (before, after) = (w.is_trivial(), inserted.is_trivial());
    ensure(before == after, format!("{w} ; {inserted}"), before, after)
}

fn hnn_reduction(rng: &mut ChaCha8Rng) -> Outcome {
    hnn_reduction_case(rng)
}

fn hnn_soundness(rng: &mut ChaCha8Rng) -> Outcome {
    hnn_soundness_case(rng)
}

fn hnn_relator_insertion(rng: &mut ChaCha8Rng) -> Outcome {
    relator_insertion_case(rng)
}

fn fp_base_injectivity(rng: &mut ChaCha8Rng) -> Outcome {
    let len = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.1) {
            0
        } else {
            rng.gen_range(0..=20)
        }
    };
    let (a, b) = (len(rng), len(rng));
    let p = PairElem::new(
        Word::random_with(rng, a, 2).unwrap(),
        Word::random_with(rng, b, 2).unwrap(),
    )
    .unwrap();
    let img = fp_image_pair(&p).unwrap();
    ensure(
        img.is_identity() == p.is_trivial(),
        &p,
        p.is_trivial(),
        img.is_identity(),
    )
}

/// Random expression of the given kind, restricted to trees the parser can
/// produce.
pub fn random_expr<R: Rng + ?Sized>(rng: &mut R, ctx: Context, depth: u32) -> Expr {
    let atom = |rng: &mut R, kind: Kind| -> Expr {
        let rank = ctx.rank;
        if rng.gen_bool(0.1) {
            return Expr::Identity;
        }
        match kind {
            Kind::Word => Expr::Gen(Gen::F(rng.gen_range(1..=rank))),
            Kind::LambdaWord => {
                let i = rng.gen_range(2..=rank);
                Expr::Gen(Gen::Lambda(i, rng.gen_range(1..i)))
            }
            Kind::EndoWord => match rng.gen_range(0..3) {
                0 => {
                    let i = rng.gen_range(1..=rank);
                    let mut j = rng.gen_range(1..rank);
                    if j >= i {
                        j += 1;
                    }
                    Expr::Gen(Gen::Lambda(i, j))
                }
                1 => Expr::Gen(Gen::Tau(rng.gen_range(1..=rank))),
                _ => Expr::Gen(Gen::Sigma),
            },
            Kind::HnnWord => Expr::Gen(Gen::T),
        }
    };
    fn go<R: Rng + ?Sized>(
        rng: &mut R,
        kind: Kind,
        depth: u32,
        atom: &dyn Fn(&mut R, Kind) -> Expr,
    ) -> Expr {
        let choice = if depth == 0 { 0 } else { rng.gen_range(0..7) };
        match choice {
            0 | 1 => {
                if kind == Kind::HnnWord && rng.gen_bool(0.6) {
                    let l = go(rng, Kind::Word, depth.saturating_sub(1), atom);
                    let r = go(rng, Kind::Word, depth.saturating_sub(1), atom);
                    Expr::Pair(Box::new(l), Box::new(r))
                } else {
                    atom(rng, kind)
                }
            }
            2 | 3 => {
                let n = rng.gen_range(2..=4);
                Expr::Product((0..n).map(|_| go(rng, kind, depth - 1, atom)).collect())
            }
            4 => Expr::Inverse(Box::new(go(rng, kind, depth - 1, atom))),
            5 => {
                let mut n = rng.gen_range(-3..=3);
                if n == -1 {
                    n = 2;
                }
                Expr::Power(Box::new(go(rng, kind, depth - 1, atom)), n)
            }
            _ => Expr::Commutator(
                Box::new(go(rng, kind, depth - 1, atom)),
                Box::new(go(rng, kind, depth - 1, atom)),
            ),
        }
    }
    go(rng, ctx.kind, depth, &atom)
}

/// Random value of a kind, formatted then re-read; for endo words the
/// expression itself is round-tripped since automorphisms have no
/// canonical word.
pub fn dsl_round_trip_case<R: Rng + ?Sized>(rng: &mut R, kind: Kind, max_len: usize) -> Outcome {
    let rank = match kind {
        Kind::HnnWord => 2,
        _ => rng.gen_range(2..=5),
    };
    let ctx = Context::new(rank, kind);
    let (text, value) = match kind {
        Kind::Word => {
            let w = Word::random_upto(rng, max_len, rank).unwrap();
            (dsl::format_word(&w), dsl::Value::Word(w))
        }
        Kind::LambdaWord => {
            let x = UniTri::random_with(rng, rank, max_len / 2).unwrap();
            (dsl::format_unitri(&x), dsl::Value::UniTri(x))
        }
        Kind::HnnWord => {
            let w = {
                let k = rng.gen_range(0..=4);
                HnnWord::random_with(rng, 2, k, max_len / 2).unwrap()
            };
            (dsl::format_hnn(&w), dsl::Value::Hnn(w))
        }
        Kind::EndoWord => {
            let expr = random_expr(rng, ctx, 3);
            let text = dsl::format_expr(&expr);
            return match dsl::parse(&text, ctx) {
                Ok(back) if back == expr => {
                    let a = dsl::eval(&expr, ctx);
                    let b = dsl::eval(&back, ctx);
                    ensure(a == b, &text, format!("{a:?}"), format!("{b:?}"))
                }
                Ok(back) => fail(&text, format!("{expr:?}"), format!("{back:?}")),
                Err(e) => fail(&text, "parse success", e),
            };
        }
    };
    match dsl::read(&text, ctx) {
        Ok(back) if back == value => {}
        Ok(back) => return fail(&text, format!("{value:?}"), format!("{back:?}")),
        Err(e) => return fail(&text, "parse success", e),
    }
    // The expression tree round-trips too.
    let expr = random_expr(rng, ctx, 3);
    let printed = dsl::format_expr(&expr);
    match dsl::parse(&printed, ctx) {
        Ok(back) => ensure(
            back == expr,
            &printed,
            format!("{expr:?}"),
            format!("{back:?}"),
        ),
        Err(e) => fail(&printed, "parse success", e),
    }
}

fn dsl_round_trip(rng: &mut ChaCha8Rng, cfg: &FuzzConfig) -> Outcome {
    let kind = [Kind::Word, Kind::LambdaWord, Kind::EndoWord, Kind::HnnWord][rng.gen_range(0..4)];
    dsl_round_trip_case(rng, kind, cfg.max_length)
}

const GRAMMAR_BYTES: &[u8] = b"ef123456789L(,)tausigm^-[]| \n";

/// Random bytes, mostly drawn from the grammar's alphabet.
pub fn random_input_bytes<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> Vec<u8> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.8) {
                GRAMMAR_BYTES[rng.gen_range(0..GRAMMAR_BYTES.len())]
            } else {
                rng.gen()
            }
        })
        .collect()
}

/// Parses arbitrary bytes in every kind; an error must carry a position
/// inside the input.
pub fn bytes_case(input: &[u8]) -> Outcome {
    let lines = 1 + input.iter().filter(|&&b| b == b'\n').count();
    for kind in [Kind::Word, Kind::LambdaWord, Kind::EndoWord, Kind::HnnWord] {
        let ctx = Context::new(3, kind);
        if let Err(e) = dsl::parse_bytes(input, ctx) {
            if e.line == 0 || e.column == 0 || e.line > lines {
                return fail(
                    String::from_utf8_lossy(input),
                    "error positioned inside the input",
                    format!("line {}, column {}", e.line, e.column),
                );
            }
        }
    }
    Outcome::Pass
}

fn dsl_bytes(rng: &mut ChaCha8Rng) -> Outcome {
    bytes_case(&random_input_bytes(rng, 40))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for p in Property::ALL {
            assert_eq!(Property::from_name(p.name()), Some(p));
        }
        assert_eq!(Property::from_name("nope"), None);
    }

    #[test]
    fn seeds_are_distinct_per_property() {
        let a = case_seed(7, Property::WordConfluence, 0);
        let b = case_seed(7, Property::WordGroupAxioms, 0);
        let c = case_seed(7, Property::WordConfluence, 1);
        assert!(a != b && a != c && b != c);
        assert_eq!(a, case_seed(7, Property::WordConfluence, 0));
    }

    #[test]
    fn every_property_passes_a_few_cases() {
        let cfg = FuzzConfig::default();
        for p in Property::ALL {
            for i in 0..200 {
                let seed = case_seed(1, p, i);
                let out = run_case(p, seed, &cfg);
                assert!(
                    !matches!(out, Outcome::Fail { .. }),
                    "{p} seed {seed}: {out:?}"
                );
            }
        }
    }

    #[test]
    fn failure_record_json() {
        let rec = FailureRecord {
            property: "word.confluence".into(),
            seed: 42,
            case: "f1 f1^-1".into(),
            expected: "e".into(),
            actual: "f1".into(),
        };
        let line = serde_json::to_string(&rec).unwrap();
        assert_eq!(
            line,
            r#"{"property":"word.confluence","seed":42,"case":"f1 f1^-1","expected":"e","actual":"f1"}"#
        );
        assert_eq!(serde_json::from_str::<FailureRecord>(&line).unwrap(), rec);
    }

    #[test]
    fn bytes_never_panic() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..2000 {
            let input = random_input_bytes(&mut rng, 60);
            assert_eq!(bytes_case(&input), Outcome::Pass);
        }
    }
}
