//! Reduction workloads and a linear-scaling check for free reduction.

use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use unitri_core::{Letter, Word};

/// Rank used for all benchmark inputs.
pub const BENCH_RANK: u32 = 4;

/// Largest allowed growth of time per letter from one size decade to the next.
pub const MAX_DECADE_RATIO: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Workload {
    /// `w w^-1` with `w` reduced, so the stack grows to half the input and
    /// then empties completely.
    Palindrome,
    /// Uniform random letters, with no structure.
    Random,
}

impl Workload {
    pub const ALL: [Workload; 2] = [Workload::Palindrome, Workload::Random];

    pub fn name(self) -> &'static str {
        match self {
            Workload::Palindrome => "palindrome",
            Workload::Random => "random",
        }
    }
}

/// `w w^-1` of exactly `len` letters (`len` rounded down to even).
pub fn palindrome(len: usize, seed: u64) -> Vec<Letter> {
    let half = Word::random(len / 2, BENCH_RANK, seed)
        .expect("rank is nonzero")
        .into_letters();
    let mut out = Vec::with_capacity(half.len() * 2);
    out.extend_from_slice(&half);
    out.extend(half.iter().rev().map(|l| l.inverse()));
    out
}

pub fn random_letters(len: usize, seed: u64) -> Vec<Letter> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|_| {
            let k = rng.gen_range(1..=BENCH_RANK);
            if rng.gen() {
                Letter::pos(k)
            } else {
                Letter::neg(k)
            }
        })
        .collect()
}

pub fn input(workload: Workload, len: usize, seed: u64) -> Vec<Letter> {
    match workload {
        Workload::Palindrome => palindrome(len, seed),
        Workload::Random => random_letters(len, seed),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Measurement {
    pub workload: Workload,
    pub letters: usize,
    pub reduced_length: usize,
    pub seconds: f64,
    pub letters_per_second: f64,
}

/// Times `Word::reduce` on one input, keeping the fastest of `repeats` runs.
pub fn measure(workload: Workload, len: usize, seed: u64, repeats: usize) -> Measurement {
    let raw = input(workload, len, seed);
    let mut best = Duration::MAX;
    let mut reduced_length = 0;
    for _ in 0..repeats.max(1) {
        let raw = raw.clone();
        let start = Instant::now();
        let w = Word::reduce(raw, BENCH_RANK).expect("letters are in range");
        best = best.min(start.elapsed());
        reduced_length = w.len();
    }
    let seconds = best.as_secs_f64().max(1e-9);
    Measurement {
        workload,
        letters: raw.len(),
        reduced_length,
        seconds,
        letters_per_second: raw.len() as f64 / seconds,
    }
}

/// Time-per-letter growth between two consecutive sizes of one workload.
#[derive(Debug, Clone, Serialize)]
pub struct Step {
    pub workload: Workload,
    pub from: usize,
    pub to: usize,
    pub ratio: f64,
    pub within_bound: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub measurements: Vec<Measurement>,
    pub steps: Vec<Step>,
    pub linear: bool,
}

/// Measures every workload at every size and compares the per-letter cost of
/// consecutive sizes against [`MAX_DECADE_RATIO`].
pub fn run(sizes: &[usize], seed: u64, repeats: usize) -> BenchReport {
    let mut measurements = Vec::new();
    let mut steps = Vec::new();
    for workload in Workload::ALL {
        let ms: Vec<Measurement> = sizes
            .iter()
            .map(|&n| measure(workload, n, seed, repeats))
            .collect();
        for pair in ms.windows(2) {
            let per_letter = |m: &Measurement| m.seconds / m.letters.max(1) as f64;
            let ratio = per_letter(&pair[1]) / per_letter(&pair[0]);
            steps.push(Step {
                workload,
                from: pair[0].letters,
                to: pair[1].letters,
                ratio,
                within_bound: ratio <= MAX_DECADE_RATIO,
            });
        }
        measurements.extend(ms);
    }
    let linear = steps.iter().all(|s| s.within_bound);
    BenchReport {
        measurements,
        steps,
        linear,
    }
}
