//! The group `U_n` of unitriangular automorphisms of `F_n`.
//!
//! An element is stored as its canonical tuple `(u_2, ..., u_n)`, meaning the
//! automorphism `f_1 ↦ f_1`, `f_i ↦ u_i f_i` with `u_i ∈ F_{i-1}`. Products use
//! the same right action as [`EndoMap::compose`].

pub(crate) mod alpha;
mod relations;

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morphism::{substitute, EndoMap};
use crate::word::{Letter, Word};

pub use alpha::{alpha_faithfulness_probe, alpha_image, AlphaMismatch, AlphaProbe};
pub use relations::{check_alpha, check_relation_suite, Check, GeneratorTable, Report};

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct UniTri {
    rank: u32,
    tuple: Vec<Word>,
}

impl UniTri {
    pub fn identity(rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(UniTri {
            rank,
            tuple: (2..=rank).map(|_| Word::identity(rank)).collect(),
        })
    }

    /// Builds `(u_2, ..., u_n)`; each `u_i` must have ambient rank `n` and
    /// only use `f_1, ..., f_{i-1}`.
    pub fn new(rank: u32, tuple: Vec<Word>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        if tuple.len() != rank as usize - 1 {
            return Err(Error::ArityMismatch {
                expected: rank as usize - 1,
                got: tuple.len(),
            });
        }
        for (k, u) in tuple.iter().enumerate() {
            let i = k as u32 + 2;
            if u.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: u.rank(),
                });
            }
            if u.max_generator() >= i {
                return Err(Error::RankViolation {
                    index: u.max_generator(),
                    rank: i - 1,
                });
            }
        }
        Ok(UniTri { rank, tuple })
    }

    /// The Nielsen generator `λ_{i,j}`: `f_i ↦ f_j f_i`, `1 <= j < i <= rank`.
    pub fn lambda(rank: u32, i: u32, j: u32) -> Result<Self> {
        if j == 0 || j >= i || i > rank {
            return Err(Error::IndexViolation { i, j, rank });
        }
        let mut out = UniTri::identity(rank)?;
        out.tuple[i as usize - 2] = Word::generator(j, rank)?;
        Ok(out)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn tuple(&self) -> &[Word] {
        &self.tuple
    }

    /// `u_i` for `2 <= i <= rank`.
    pub fn entry(&self, i: u32) -> &Word {
        &self.tuple[i as usize - 2]
    }

    pub fn is_identity(&self) -> bool {
        self.tuple.iter().all(Word::is_identity)
    }

    fn images(&self) -> Vec<Word> {
        let mut images = Vec::with_capacity(self.rank as usize);
        images.push(Word::generator(1, self.rank).expect("rank >= 1"));
        for (k, u) in self.tuple.iter().enumerate() {
            let mut letters = u.letters().to_vec();
            letters.push(Letter::pos(k as u32 + 2));
            images.push(Word::from_reduced_unchecked(letters, self.rank));
        }
        images
    }

    pub fn to_endo(&self) -> EndoMap {
        EndoMap::new(self.rank, self.images()).expect("well-formed images")
    }

    /// Recognizes the unitriangular form; `None` when `e` is not of it.
    pub fn from_endo(e: &EndoMap) -> Option<UniTri> {
        let rank = e.rank();
        let first = e.image(1).letters();
        if first.len() != 1 || first[0] != Letter::pos(1) {
            return None;
        }
        let mut tuple = Vec::with_capacity(rank as usize - 1);
        for i in 2..=rank {
            let (last, prefix) = e.image(i).letters().split_last()?;
            if *last != Letter::pos(i) || prefix.iter().any(|l| l.index() >= i) {
                return None;
            }
            tuple.push(Word::from_reduced_unchecked(prefix.to_vec(), rank));
        }
        Some(UniTri { rank, tuple })
    }

    fn check_rank(&self, other: &UniTri) -> Result<()> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            })
        }
    }

    /// Right action: `self` first, then `other`. Entry `i` of the result is
    /// `other(u_i) · v_i`.
    pub fn compose(&self, other: &UniTri) -> Result<UniTri> {
        self.check_rank(other)?;
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &UniTri) -> UniTri {
        let images = other.images();
        let tuple = self
            .tuple
            .iter()
            .zip(&other.tuple)
            .map(|(u, v)| substitute(&images, u, self.rank).mul_unchecked(v))
            .collect();
        UniTri {
            rank: self.rank,
            tuple,
        }
    }

    /// Builds the inverse entry by entry: `v_i = ψ(u_i^-1)` where `ψ` is the
    /// inverse already known on `F_{i-1}`.
    pub fn inverse(&self) -> UniTri {
        let rank = self.rank;
        let mut images = vec![Word::generator(1, rank).expect("rank >= 1")];
        let mut tuple = Vec::with_capacity(self.tuple.len());
        for (k, u) in self.tuple.iter().enumerate() {
            let v = substitute(&images, &u.inverse(), rank);
            let mut img = v.letters().to_vec();
            img.push(Letter::pos(k as u32 + 2));
            images.push(Word::from_reduced_unchecked(img, rank));
            tuple.push(v);
        }
        UniTri { rank, tuple }
    }

    /// `[self, other] = self·other·self^-1·other^-1`.
    pub fn commutator(&self, other: &UniTri) -> Result<UniTri> {
        self.check_rank(other)?;
        Ok(self
            .compose_unchecked(other)
            .compose_unchecked(&self.inverse())
            .compose_unchecked(&other.inverse()))
    }

    pub fn pow(&self, exponent: i64) -> UniTri {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut out = UniTri::identity(self.rank).expect("rank >= 1");
        for _ in 0..exponent.unsigned_abs() {
            out = out.compose_unchecked(&base);
        }
        out
    }

    /// Whether `f_1, ..., f_m` are all fixed. Since `f_1` is always fixed and
    /// `f_k ↦ u_k f_k`, this is `u_2 = ... = u_m = e`. Prefixes longer than
    /// the rank are clamped.
    pub fn fixes(&self, m: u32) -> bool {
        let m = m.min(self.rank) as usize;
        self.tuple
            .iter()
            .take(m.saturating_sub(1))
            .all(Word::is_identity)
    }

    /// A λ-word evaluating to this element: `u_2(λ_{2,·}) u_3(λ_{3,·}) ⋯`.
    pub fn to_lambda_word(&self) -> LambdaWord {
        let mut out = Vec::new();
        for (k, u) in self.tuple.iter().enumerate() {
            let i = k as u32 + 2;
            out.extend(u.letters().iter().map(|l| LambdaLetter {
                i,
                j: l.index(),
                exponent: if l.is_positive() { 1 } else { -1 },
            }));
        }
        LambdaWord(out)
    }

    /// Random element with each `u_i` a uniformly random reduced word in
    /// `F_{i-1}` of length at most `max_len`.
    pub fn random_with<R: Rng + ?Sized>(rng: &mut R, rank: u32, max_len: usize) -> Result<UniTri> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        let tuple = (2..=rank)
            .map(|i| {
                let len = rng.gen_range(0..=max_len);
                Word::random_with(rng, len, i - 1)?.embed(rank)
            })
            .collect::<Result<_>>()?;
        Ok(UniTri { rank, tuple })
    }
}

impl fmt::Display for UniTri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, u) in self.tuple.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for UniTri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniTri[U{}]{}", self.rank, self)
    }
}

#[derive(Deserialize)]
struct RawUniTri {
    rank: u32,
    tuple: Vec<Vec<i64>>,
}

impl<'de> Deserialize<'de> for UniTri {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawUniTri::deserialize(d)?;
        let tuple = raw
            .tuple
            .iter()
            .map(|w| Word::from_signed(w, raw.rank))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        UniTri::new(raw.rank, tuple).map_err(serde::de::Error::custom)
    }
}

/// `λ_{i,j}^{exponent}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LambdaLetter {
    pub i: u32,
    pub j: u32,
    pub exponent: i8,
}

impl LambdaLetter {
    pub fn new(i: u32, j: u32, exponent: i8) -> Self {
        LambdaLetter { i, j, exponent }
    }

    pub fn inverse(self) -> Self {
        LambdaLetter {
            exponent: -self.exponent,
            ..self
        }
    }
}

impl Serialize for LambdaLetter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.i, self.j, self.exponent).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LambdaLetter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (i, j, exponent) = <(u32, u32, i8)>::deserialize(d)?;
        if exponent != 1 && exponent != -1 {
            return Err(serde::de::Error::custom(Error::BadExponent(
                exponent.into(),
            )));
        }
        Ok(LambdaLetter { i, j, exponent })
    }
}

/// A word in the Nielsen generators; JSON form `[[i, j, e], ...]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LambdaWord(pub Vec<LambdaLetter>);

impl LambdaWord {
    pub fn letters(&self) -> &[LambdaLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> LambdaWord {
        LambdaWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &LambdaWord) -> LambdaWord {
        LambdaWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn commutator(&self, other: &LambdaWord) -> LambdaWord {
        self.concat(other)
            .concat(&self.inverse())
            .concat(&other.inverse())
    }

    /// Random word of exactly `len` letters over all `λ_{i,j}^{±1}` of `U_rank`.
    pub fn random_with<R: Rng + ?Sized>(rng: &mut R, rank: u32, len: usize) -> LambdaWord {
        let pairs: Vec<(u32, u32)> = (2..=rank)
            .flat_map(|i| (1..i).map(move |j| (i, j)))
            .collect();
        LambdaWord(
            (0..len)
                .map(|_| {
                    let (i, j) = pairs[rng.gen_range(0..pairs.len())];
                    LambdaLetter::new(i, j, if rng.gen() { 1 } else { -1 })
                })
                .collect(),
        )
    }
}

/// Folds a λ-word by [`UniTri::compose`], left factor first.
pub fn evaluate_lambda_word(rank: u32, word: &LambdaWord) -> Result<UniTri> {
    let mut acc = UniTri::identity(rank)?;
    for l in word.letters() {
        let g = UniTri::lambda(rank, l.i, l.j)?;
        let g = match l.exponent {
            1 => g,
            -1 => g.inverse(),
            e => return Err(Error::BadExponent(e.into())),
        };
        acc = acc.compose_unchecked(&g);
    }
    Ok(acc)
}

/// Left-normed commutators `[...[[x_1, x_2], x_3], ..., x_k]` of random
/// λ-words, each an element of `γ_k U_rank`.
pub fn gamma_sample(rank: u32, weight: u32, count: usize, seed: u64) -> Result<Vec<UniTri>> {
    if weight == 0 {
        return Err(Error::Domain("commutator weight must be at least 1"));
    }
    if rank < 2 {
        return Ok(vec![UniTri::identity(rank)?; count]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let draw = |rng: &mut ChaCha8Rng| {
            let len = rng.gen_range(1..=GAMMA_FACTOR_LEN);
            evaluate_lambda_word(rank, &LambdaWord::random_with(rng, rank, len))
        };
        let mut acc = draw(&mut rng)?;
        for _ in 1..weight {
            let x = draw(&mut rng)?;
            acc = acc.commutator(&x)?;
        }
        out.push(acc);
    }
    Ok(out)
}

const GAMMA_FACTOR_LEN: usize = 3;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::word;

    fn lw(letters: &[((u32, u32), i8)]) -> LambdaWord {
        LambdaWord(
            letters
                .iter()
                .map(|&((i, j), e)| LambdaLetter::new(i, j, e))
                .collect(),
        )
    }

    fn ut(rank: u32, entries: &[&[i64]]) -> UniTri {
        UniTri::new(rank, entries.iter().map(|w| word(w, rank)).collect()).unwrap()
    }

    fn lam(rank: u32, i: u32, j: u32) -> UniTri {
        UniTri::lambda(rank, i, j).unwrap()
    }

    /// Composition through the endomorphism pathway.
    fn oracle_compose(a: &UniTri, b: &UniTri) -> Option<UniTri> {
        UniTri::from_endo(&a.to_endo().compose(&b.to_endo()).unwrap())
    }

    #[test]
    fn to_endo_examples() {
        assert!(UniTri::identity(3).unwrap().to_endo().is_identity());
        let e = lam(2, 2, 1).to_endo();
        assert_eq!(e.image(2), &word(&[1, 2], 2));
        let e = ut(3, &[&[1], &[2]]).to_endo();
        assert_eq!(e.image(2), &word(&[1, 2], 3));
        assert_eq!(e.image(3), &word(&[2, 3], 3));
    }

    #[test]
    fn from_endo_examples() {
        assert_eq!(
            UniTri::from_endo(&EndoMap::identity(3).unwrap()),
            Some(UniTri::identity(3).unwrap())
        );
        let l32 = EndoMap::nielsen(3, 3, 2, false).unwrap();
        assert_eq!(UniTri::from_endo(&l32), Some(ut(3, &[&[], &[2]])));
        assert_eq!(UniTri::from_endo(&EndoMap::tau(2, 1).unwrap()), None);
        // f2 ↦ f2 f1: ends in the wrong letter
        let bad = EndoMap::new(2, vec![word(&[1], 2), word(&[2, 1], 2)]).unwrap();
        assert_eq!(UniTri::from_endo(&bad), None);
        // f3 ↦ f3 f3: prefix outside F_2
        let bad = EndoMap::new(3, vec![word(&[1], 3), word(&[2], 3), word(&[3, 3], 3)]).unwrap();
        assert_eq!(UniTri::from_endo(&bad), None);
        // f1 must be fixed
        let bad = EndoMap::new(2, vec![word(&[1, 1], 2), word(&[2], 2)]).unwrap();
        assert_eq!(UniTri::from_endo(&bad), None);
    }

    #[test]
    fn new_rejects_non_triangular_entries() {
        assert!(UniTri::new(3, vec![word(&[2], 3), Word::identity(3)]).is_err());
        assert!(UniTri::new(3, vec![Word::identity(3)]).is_err());
        assert!(UniTri::new(3, vec![Word::identity(2), Word::identity(3)]).is_err());
    }

    #[test]
    fn compose_examples() {
        let c = lam(3, 2, 1).compose(&lam(3, 3, 2)).unwrap();
        assert_eq!(c, ut(3, &[&[1], &[2]]));
        assert_eq!(oracle_compose(&lam(3, 2, 1), &lam(3, 3, 2)), Some(c));
        let phi = ut(3, &[&[1, 1], &[2, -1]]);
        assert_eq!(phi.compose(&UniTri::identity(3).unwrap()).unwrap(), phi);
        let c = lam(3, 3, 1).compose(&lam(3, 3, 2)).unwrap();
        assert_eq!(c, ut(3, &[&[], &[1, 2]]));
        assert!(lam(3, 2, 1).compose(&lam(2, 2, 1)).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(lam(2, 2, 1).inverse(), ut(2, &[&[-1]]));
        let phi = ut(3, &[&[1], &[2, 1]]);
        let inv = phi.inverse();
        assert_eq!(inv, ut(3, &[&[-1], &[-1, -2, 1]]));
        assert!(phi.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&phi).unwrap().is_identity());
        assert!(UniTri::identity(4).unwrap().inverse().is_identity());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lam(3, 3, 2), ut(3, &[&[], &[2]]));
        assert_eq!(lam(4, 4, 3), ut(4, &[&[], &[], &[3]]));
        assert_eq!(lam(2, 2, 1), ut(2, &[&[1]]));
        assert!(UniTri::lambda(3, 2, 2).is_err());
        assert!(UniTri::lambda(3, 2, 3).is_err());
        assert!(UniTri::lambda(3, 4, 1).is_err());
        assert!(UniTri::lambda(3, 2, 0).is_err());
    }

    #[test]
    fn lambda_word_examples() {
        assert!(evaluate_lambda_word(2, &lw(&[((2, 1), 1), ((2, 1), -1)]))
            .unwrap()
            .is_identity());
        let comm = lw(&[((3, 2), 1), ((2, 1), 1), ((3, 2), -1), ((2, 1), -1)]);
        assert_eq!(evaluate_lambda_word(3, &comm).unwrap(), lam(3, 3, 1));
        let conj = lw(&[((2, 1), -1), ((3, 2), 1), ((2, 1), 1)]);
        assert_eq!(
            evaluate_lambda_word(3, &conj).unwrap(),
            lam(3, 3, 1).compose(&lam(3, 3, 2)).unwrap()
        );
        assert!(evaluate_lambda_word(3, &lw(&[((4, 1), 1)])).is_err());
        assert!(evaluate_lambda_word(3, &lw(&[((2, 1), 2)])).is_err());
    }

    #[test]
    fn small_ranks() {
        // U_1 is trivial, U_2 is infinite cyclic on λ_{2,1}.
        let u1 = UniTri::identity(1).unwrap();
        assert!(u1.tuple().is_empty());
        assert_eq!(UniTri::from_endo(&EndoMap::identity(1).unwrap()), Some(u1));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = UniTri::random_with(&mut rng, 2, 8).unwrap();
            let u = x.entry(2);
            assert!(u.letters().windows(2).all(|p| p[0] == p[1]));
            let k = if u.is_empty() {
                0
            } else if u.letters()[0].is_positive() {
                u.len() as i64
            } else {
                -(u.len() as i64)
            };
            assert_eq!(lam(2, 2, 1).pow(k), x);
        }
    }

    #[test]
    fn fixes_examples() {
        let id = UniTri::identity(4).unwrap();
        assert!((0..=4).all(|m| id.fixes(m)));
        assert!(lam(2, 2, 1).fixes(1));
        assert!(!lam(2, 2, 1).fixes(2));
        let c = lam(3, 3, 2).commutator(&lam(3, 2, 1)).unwrap();
        assert!(c.fixes(1));
    }

    #[test]
    fn fixes_agrees_with_endo_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let mut x = UniTri::random_with(&mut rng, 5, 2).unwrap();
            for k in 2..=5 {
                if rng.gen_bool(0.5) {
                    x.tuple[k - 2] = Word::identity(5);
                }
            }
            let e = x.to_endo();
            for m in 0..=5 {
                let expected = (1..=m).all(|k| {
                    let f = Word::generator(k, 5).unwrap();
                    e.apply(&f).unwrap() == f
                });
                assert_eq!(x.fixes(m), expected, "{x} m={m}");
            }
        }
    }

    #[test]
    fn gamma_sample_examples() {
        let s = gamma_sample(4, 1, 20, 1).unwrap();
        assert_eq!(s.len(), 20);
        for x in gamma_sample(4, 2, 200, 2).unwrap() {
            assert!(x.fixes(1));
        }
        for n in [4, 5] {
            for x in gamma_sample(n, n - 2, 300, 3).unwrap() {
                assert!(x.fixes(n - 3), "{x}");
            }
        }
        assert_eq!(
            gamma_sample(4, 2, 5, 9).unwrap(),
            gamma_sample(4, 2, 5, 9).unwrap()
        );
        assert!(gamma_sample(4, 0, 5, 9).is_err());
    }

    /// `U_3` is not nilpotent, so weight-4 commutators of its generators
    /// survive inside `U_6` and move `f_3`.
    #[test]
    fn weight_four_commutator_moves_f3_in_rank_6() {
        let a = lam(6, 3, 1);
        let b = lam(6, 3, 2);
        let c = a
            .commutator(&b)
            .unwrap()
            .commutator(&a)
            .unwrap()
            .commutator(&b)
            .unwrap();
        assert!(!c.entry(3).is_identity());
        assert!(!c.fixes(3));
    }

    #[test]
    fn lambda_word_json() {
        let w = lw(&[((3, 2), 1), ((2, 1), -1)]);
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, "[[3,2,1],[2,1,-1]]");
        assert_eq!(serde_json::from_str::<LambdaWord>(&json).unwrap(), w);
        assert!(serde_json::from_str::<LambdaWord>("[[3,2,2]]").is_err());
        let x = ut(3, &[&[1], &[-2, 1]]);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"rank":3,"tuple":[[1],[-2,1]]}"#);
        assert_eq!(serde_json::from_str::<UniTri>(&json).unwrap(), x);
        assert!(serde_json::from_str::<UniTri>(r#"{"rank":3,"tuple":[[2],[]]}"#).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn unitri(rank: u32) -> impl Strategy<Value = UniTri> {
            any::<u64>().prop_map(move |s| {
                UniTri::random_with(&mut ChaCha8Rng::seed_from_u64(s), rank, 8).unwrap()
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(256))]

            #[test]
            fn endo_round_trip(x in unitri(5)) {
                prop_assert_eq!(UniTri::from_endo(&x.to_endo()), Some(x.clone()));
            }

            #[test]
            fn closure_matches_oracle(a in unitri(5), b in unitri(5)) {
                prop_assert_eq!(oracle_compose(&a, &b), Some(a.compose(&b).unwrap()));
            }

            #[test]
            fn two_sided_inverse(a in unitri(6)) {
                prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
                prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
            }

            #[test]
            fn lambda_word_round_trip(a in unitri(5)) {
                prop_assert_eq!(evaluate_lambda_word(5, &a.to_lambda_word()).unwrap(), a);
            }

            #[test]
            fn associativity(a in unitri(4), b in unitri(4), c in unitri(4)) {
                let l = a.compose(&b).unwrap().compose(&c).unwrap();
                let r = a.compose(&b.compose(&c).unwrap()).unwrap();
                prop_assert_eq!(l, r);
            }
        }
    }
}
