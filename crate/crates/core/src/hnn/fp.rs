//! The homomorphism `H(F_2) → U_4` built from the commuting subgroups
//! `gp(λ_{3,1}, λ_{3,2})` and `gp(λ_{4,1}, λ_{4,2})`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{HnnWord, PairElem, StableSign};
use crate::error::{Error, Result};
use crate::unitri::{
    evaluate_lambda_word, GeneratorTable, LambdaLetter, LambdaWord, Report, UniTri,
};
use crate::word::Word;

/// Exponent of `λ_{4,3}` that `t` is sent to. Under the right action used for
/// all products here, only `t ↦ λ_{4,3}^-1` satisfies the conjugation
/// identities; [`verify_fp_relations`] rediscovers this value.
pub const STABLE_LETTER_SIGN: StableSign = -1;

fn pair_letters(p: &PairElem, out: &mut Vec<LambdaLetter>) {
    let sign = |positive: bool| if positive { 1 } else { -1 };
    out.extend(
        p.left()
            .letters()
            .iter()
            .map(|l| LambdaLetter::new(4, l.index(), sign(l.is_positive()))),
    );
    out.extend(
        p.right()
            .letters()
            .iter()
            .map(|l| LambdaLetter::new(3, l.index(), sign(l.is_positive()))),
    );
}

fn check_base_rank(rank: u32) -> Result<()> {
    if rank == 2 {
        Ok(())
    } else {
        Err(Error::RankMismatch {
            left: 2,
            right: rank,
        })
    }
}

/// The λ-word of `w` with `t ↦ λ_{4,3}^{stable}`.
fn lambda_word(w: &HnnWord, stable: StableSign) -> LambdaWord {
    let mut out = Vec::new();
    pair_letters(&w.head, &mut out);
    for (e, g) in &w.tail {
        out.push(LambdaLetter::new(4, 3, e * stable));
        pair_letters(g, &mut out);
    }
    LambdaWord(out)
}

/// Image of `(g, h)`: `g(λ_{4,1}, λ_{4,2}) · h(λ_{3,1}, λ_{3,2})`.
pub fn fp_image_pair(p: &PairElem) -> Result<UniTri> {
    check_base_rank(p.rank())?;
    let mut letters = Vec::new();
    pair_letters(p, &mut letters);
    evaluate_lambda_word(4, &LambdaWord(letters))
}

/// Image of an element of `H(F_2)` in `U_4`.
pub fn fp_image(w: &HnnWord) -> Result<UniTri> {
    check_base_rank(w.rank())?;
    evaluate_lambda_word(4, &lambda_word(w, STABLE_LETTER_SIGN))
}

#[derive(Debug, Clone, Serialize)]
pub struct FpVerification {
    /// The unique orientation of `t` that works, if exactly one does.
    pub sign: Option<StableSign>,
    pub report: Report,
}

fn conjugation_holds(table: &GeneratorTable, sign: StableSign, j: u32) -> Result<bool> {
    let t = table.lambda(4, 4, 3)?.pow(sign.into());
    let diag = table.lambda(4, 4, j)?.compose(&table.lambda(4, 3, j)?)?;
    let lhs = t.compose(&diag)?.compose(&t.inverse())?;
    Ok(lhs == table.lambda(4, 3, j)?)
}

/// Determines the orientation of `t`, checks that the two copies of `F_2`
/// commute, and probes base injectivity on `injectivity_samples` random pairs.
pub fn verify_fp_relations(
    table: &GeneratorTable,
    injectivity_samples: usize,
    seed: u64,
) -> Result<FpVerification> {
    let mut report = Report::default();

    let mut passing = Vec::new();
    for sign in [1, -1] {
        if conjugation_holds(table, sign, 1)? && conjugation_holds(table, sign, 2)? {
            passing.push(sign);
        }
    }
    let sign = match passing.as_slice() {
        [s] => Some(*s),
        _ => None,
    };
    report.push(
        "fp",
        "exactly one orientation of t satisfies t (f_j|f_j) t^-1 = (e|f_j)",
        sign.is_some(),
    );
    report.push(
        "fp",
        format!("discovered orientation matches t -> L(4,3)^{STABLE_LETTER_SIGN}"),
        sign == Some(STABLE_LETTER_SIGN),
    );

    let s = sign.unwrap_or(STABLE_LETTER_SIGN);
    for j in 1..=2 {
        let name = if s == -1 {
            format!("L(4,3)^-1 L(3,{j}) L(4,{j}) L(4,3) = L(3,{j})")
        } else {
            format!("L(4,3) L(3,{j}) L(4,{j}) L(4,3)^-1 = L(3,{j})")
        };
        report.push("eq7", name, conjugation_holds(table, s, j)?);
    }

    for j in 1..=2 {
        for l in 1..=2 {
            let c = table.lambda(4, 3, j)?.commutator(&table.lambda(4, 4, l)?)?;
            report.push(
                "fp-commute",
                format!("[L(3,{j}), L(4,{l})] = 1"),
                c.is_identity(),
            );
        }
    }

    let failures = base_injectivity_failures(injectivity_samples, 20, seed)?;
    report.push(
        "fp-injective",
        format!("image of (g,h) is trivial iff g = h = e ({injectivity_samples} samples)"),
        failures.is_empty(),
    );

    Ok(FpVerification { sign, report })
}

/// Pairs `(g, h)` with components of length at most `max_len` on which
/// "image trivial" and "g = h = e" disagree, or whose image does not read
/// back as `f_3 ↦ h f_3`, `f_4 ↦ g f_4`.
pub fn base_injectivity_failures(
    samples: usize,
    max_len: usize,
    seed: u64,
) -> Result<Vec<PairElem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..samples {
        let len = |rng: &mut ChaCha8Rng| {
            if rng.gen_bool(0.1) {
                0
            } else {
                rng.gen_range(0..=max_len)
            }
        };
        let (a, b) = (len(&mut rng), len(&mut rng));
        let p = PairElem::new(
            Word::random_with(&mut rng, a, 2)?,
            Word::random_with(&mut rng, b, 2)?,
        )?;
        let img = fp_image_pair(&p)?;
        let reads_back = img.entry(2).is_identity()
            && img.entry(3).restrict(2)? == *p.right()
            && img.entry(4).restrict(2)? == *p.left();
        if !reads_back || img.is_identity() != p.is_trivial() {
            failures.push(p);
        }
    }
    Ok(failures)
}
