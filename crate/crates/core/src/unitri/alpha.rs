//! The embedding of `U_3` into `Aut(F_2)`: `λ_{3,j} ↦ τ_j`, `λ_{2,1} ↦ σ_{2,1}`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{evaluate_lambda_word, LambdaLetter, LambdaWord};
use crate::error::{Error, Result};
use crate::morphism::EndoMap;

fn alpha_letter(l: &LambdaLetter) -> Result<EndoMap> {
    let inverse = match l.exponent {
        1 => false,
        -1 => true,
        e => return Err(Error::BadExponent(e.into())),
    };
    let f = |k| crate::word::Word::generator(k, 2).expect("rank 2");
    match (l.i, l.j) {
        (3, j @ (1 | 2)) => {
            let c = if inverse { f(j).inverse() } else { f(j) };
            EndoMap::inner(2, &c)
        }
        (2, 1) => EndoMap::nielsen(2, 2, 1, inverse),
        (i, j) => Err(Error::DisallowedGenerator { i, j }),
    }
}

/// Evaluates a λ-word over `λ_{3,1}, λ_{3,2}, λ_{2,1}` in `Aut(F_2)`.
pub fn alpha_image(word: &LambdaWord) -> Result<EndoMap> {
    let mut acc = EndoMap::identity(2)?;
    for l in word.letters() {
        acc = acc.compose(&alpha_letter(l)?)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaMismatch {
    pub word: LambdaWord,
    pub trivial_in_u3: bool,
    pub trivial_in_aut: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct AlphaProbe {
    pub samples: usize,
    pub trivial: usize,
    pub mismatches: Vec<AlphaMismatch>,
}

const U3_GENERATORS: [(u32, u32); 3] = [(3, 1), (3, 2), (2, 1)];

pub(crate) fn random_u3_word<R: Rng + ?Sized>(rng: &mut R, len: usize) -> LambdaWord {
    LambdaWord(
        (0..len)
            .map(|_| {
                let (i, j) = U3_GENERATORS[rng.gen_range(0..3)];
                LambdaLetter::new(i, j, if rng.gen() { 1 } else { -1 })
            })
            .collect(),
    )
}

/// Random λ-word over `U_3` of length at most `max_len`. Half of the draws
/// are conjugates of defining relations, so both verdicts get exercised.
pub(crate) fn probe_word<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> LambdaWord {
    if rng.gen_bool(0.5) {
        let len = rng.gen_range(0..=max_len);
        return random_u3_word(rng, len);
    }
    let l21 = LambdaWord(vec![LambdaLetter::new(2, 1, 1)]);
    let l31 = LambdaWord(vec![LambdaLetter::new(3, 1, 1)]);
    let l32 = LambdaWord(vec![LambdaLetter::new(3, 2, 1)]);
    let relator = match rng.gen_range(0..3) {
        0 => l21
            .inverse()
            .concat(&l31)
            .concat(&l21)
            .concat(&l31.inverse()),
        1 => l21
            .inverse()
            .concat(&l32)
            .concat(&l21)
            .concat(&l31.concat(&l32).inverse()),
        _ => l32.commutator(&l21).commutator(&l21),
    };
    let budget = max_len.saturating_sub(relator.len()) / 2;
    let len = rng.gen_range(0..=budget);
    let x = random_u3_word(rng, len);
    let w = x.concat(&relator).concat(&x.inverse());
    if rng.gen_bool(0.5) {
        w.inverse()
    } else {
        w
    }
}

/// Compares triviality in `U_3` with triviality of the `Aut(F_2)` image on
/// random λ-words.
pub fn alpha_faithfulness_probe(samples: usize, max_len: usize, seed: u64) -> AlphaProbe {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AlphaProbe {
        samples,
        ..AlphaProbe::default()
    };
    for _ in 0..samples {
        let w = probe_word(&mut rng, max_len);
        let in_u3 = evaluate_lambda_word(3, &w)
            .expect("U_3 generators")
            .is_identity();
        let in_aut = alpha_image(&w).expect("U_3 generators").is_identity();
        if in_u3 {
            report.trivial += 1;
        }
        if in_u3 != in_aut {
            report.mismatches.push(AlphaMismatch {
                word: w,
                trivial_in_u3: in_u3,
                trivial_in_aut: in_aut,
            });
        }
    }
    report
}
