//! The HNN extension `H(G) = <G × G, t | t(g,g)t^-1 = (1,g)>` for a free
//! group `G = F_m`, with Britton reduction as a word-problem solver.

mod fp;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

pub use fp::{
    base_injectivity_failures, fp_image, fp_image_pair, verify_fp_relations, FpVerification,
    STABLE_LETTER_SIGN,
};

/// An element `(left, right)` of `F_m × F_m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairElem {
    left: Word,
    right: Word,
}

impl PairElem {
    pub fn new(left: Word, right: Word) -> Result<Self> {
        if left.rank() != right.rank() {
            return Err(Error::RankMismatch {
                left: left.rank(),
                right: right.rank(),
            });
        }
        Ok(PairElem { left, right })
    }

    pub fn identity(rank: u32) -> Self {
        PairElem {
            left: Word::identity(rank),
            right: Word::identity(rank),
        }
    }

    /// `(g, g)`.
    pub fn diagonal(g: Word) -> Self {
        PairElem {
            left: g.clone(),
            right: g,
        }
    }

    pub fn left(&self) -> &Word {
        &self.left
    }

    pub fn right(&self) -> &Word {
        &self.right
    }

    pub fn rank(&self) -> u32 {
        self.left.rank()
    }

    pub fn len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    pub fn is_trivial(&self) -> bool {
        self.left.is_identity() && self.right.is_identity()
    }

    pub fn multiply(&self, other: &PairElem) -> Result<PairElem> {
        Ok(PairElem {
            left: self.left.multiply(&other.left)?,
            right: self.right.multiply(&other.right)?,
        })
    }

    pub fn inverse(&self) -> PairElem {
        PairElem {
            left: self.left.inverse(),
            right: self.right.inverse(),
        }
    }

    /// Membership in the diagonal `A = {(g, g)}`.
    pub fn in_a(&self) -> bool {
        self.left == self.right
    }

    /// Membership in `B = {(1, g)}`.
    pub fn in_b(&self) -> bool {
        self.left.is_identity()
    }

    /// `(g, g) ↦ (1, g)`.
    pub fn phi(&self) -> Result<PairElem> {
        if !self.in_a() {
            return Err(Error::Domain(
                "phi is only defined on the diagonal subgroup",
            ));
        }
        Ok(PairElem {
            left: Word::identity(self.rank()),
            right: self.right.clone(),
        })
    }

    /// `(1, g) ↦ (g, g)`.
    pub fn phi_inv(&self) -> Result<PairElem> {
        if !self.in_b() {
            return Err(Error::Domain("phi_inv is only defined on 1 × G"));
        }
        Ok(PairElem::diagonal(self.right.clone()))
    }

    pub fn random_with<R: Rng + ?Sized>(rng: &mut R, rank: u32, max_len: usize) -> Result<Self> {
        let a = rng.gen_range(0..=max_len);
        let b = rng.gen_range(0..=max_len);
        Ok(PairElem {
            left: Word::random_with(rng, a, rank)?,
            right: Word::random_with(rng, b, rank)?,
        })
    }
}

impl fmt::Display for PairElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", self.left, self.right)
    }
}

impl fmt::Debug for PairElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for PairElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.left, &self.right).serialize(s)
    }
}

/// Sign of a stable letter: `t` or `t^-1`.
pub type StableSign = i8;

/// `g_0 t^{e_1} g_1 ⋯ t^{e_k} g_k`. Equality is syntactic and ignores
/// whether the word is marked as Britton-reduced.
#[derive(Clone)]
pub struct HnnWord {
    rank: u32,
    head: PairElem,
    tail: Vec<(StableSign, PairElem)>,
    reduced: bool,
}

impl HnnWord {
    pub fn new(head: PairElem, tail: Vec<(StableSign, PairElem)>) -> Result<Self> {
        let rank = head.rank();
        for (e, g) in &tail {
            if *e != 1 && *e != -1 {
                return Err(Error::BadExponent((*e).into()));
            }
            if g.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: g.rank(),
                });
            }
        }
        Ok(HnnWord {
            rank,
            head,
            tail,
            reduced: false,
        })
    }

    pub fn identity(rank: u32) -> Self {
        HnnWord::from_pair(PairElem::identity(rank))
    }

    pub fn from_pair(p: PairElem) -> Self {
        HnnWord {
            rank: p.rank(),
            head: p,
            tail: Vec::new(),
            reduced: false,
        }
    }

    /// The stable letter `t^sign` alone.
    pub fn stable(rank: u32, sign: StableSign) -> Result<Self> {
        HnnWord::new(
            PairElem::identity(rank),
            vec![(sign, PairElem::identity(rank))],
        )
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn head(&self) -> &PairElem {
        &self.head
    }

    pub fn tail(&self) -> &[(StableSign, PairElem)] {
        &self.tail
    }

    /// Number of stable letters.
    pub fn t_count(&self) -> usize {
        self.tail.len()
    }

    pub fn is_britton_reduced(&self) -> bool {
        self.reduced
    }

    /// Forgets the reduced flag, as if the word had been built by hand.
    pub fn unmark(mut self) -> Self {
        self.reduced = false;
        self
    }

    fn last_mut(&mut self) -> &mut PairElem {
        match self.tail.last_mut() {
            Some((_, g)) => g,
            None => &mut self.head,
        }
    }

    fn check_rank(&self, other: &HnnWord) -> Result<()> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            })
        }
    }

    /// Concatenation; the boundary pair elements merge.
    pub fn multiply(&self, other: &HnnWord) -> Result<HnnWord> {
        self.check_rank(other)?;
        let mut out = self.clone();
        out.reduced = false;
        let merged = out.last_mut().multiply(&other.head)?;
        *out.last_mut() = merged;
        out.tail.extend(other.tail.iter().cloned());
        Ok(out)
    }

    pub fn inverse(&self) -> HnnWord {
        let mut elems: Vec<&PairElem> = vec![&self.head];
        elems.extend(self.tail.iter().map(|(_, g)| g));
        let head = elems.last().unwrap().inverse();
        let tail = self
            .tail
            .iter()
            .rev()
            .zip(elems.iter().rev().skip(1))
            .map(|((e, _), g)| (-e, g.inverse()))
            .collect();
        HnnWord {
            rank: self.rank,
            head,
            tail,
            reduced: false,
        }
    }

    /// Splits after the pair element preceding stable letter `at` (so
    /// `at == 0` splits inside the head). `left_cut` and `right_cut` choose
    /// where that element's two components are divided.
    pub fn split_at(&self, at: usize, left_cut: usize, right_cut: usize) -> (HnnWord, HnnWord) {
        let at = at.min(self.tail.len());
        let elem = if at == 0 {
            &self.head
        } else {
            &self.tail[at - 1].1
        };
        let (l, r) = (elem.left.letters(), elem.right.letters());
        let (lc, rc) = (left_cut.min(l.len()), right_cut.min(r.len()));
        let word = |s: &[crate::word::Letter]| Word::from_reduced_unchecked(s.to_vec(), self.rank);
        let first = PairElem {
            left: word(&l[..lc]),
            right: word(&r[..rc]),
        };
        let second = PairElem {
            left: word(&l[lc..]),
            right: word(&r[rc..]),
        };
        let mut prefix = HnnWord {
            rank: self.rank,
            head: self.head.clone(),
            tail: self.tail[..at].to_vec(),
            reduced: false,
        };
        *prefix.last_mut() = first;
        let suffix = HnnWord {
            rank: self.rank,
            head: second,
            tail: self.tail[at..].to_vec(),
            reduced: false,
        };
        (prefix, suffix)
    }

    /// `t (g,g) t^-1 (1,g)^-1`, a defining relator.
    pub fn relator(g: &Word) -> HnnWord {
        let rank = g.rank();
        HnnWord {
            rank,
            head: PairElem::identity(rank),
            tail: vec![
                (1, PairElem::diagonal(g.clone())),
                (
                    -1,
                    PairElem {
                        left: Word::identity(rank),
                        right: g.inverse(),
                    },
                ),
            ],
            reduced: false,
        }
    }

    /// Removes every pinch `t a t^-1` (`a ∈ A`) and `t^-1 b t` (`b ∈ B`).
    ///
    /// Runs as a single left-to-right stack pass: a pinch is detected as soon
    /// as its closing stable letter arrives, which is the leftmost innermost
    /// pinch of the word read so far.
    pub fn britton_reduce(&self) -> HnnWord {
        if self.reduced {
            return self.clone();
        }
        let mut out = HnnWord {
            rank: self.rank,
            head: self.head.clone(),
            tail: Vec::with_capacity(self.tail.len()),
            reduced: true,
        };
        for (e, g) in &self.tail {
            let pinch = match out.tail.last() {
                Some((prev, mid)) if *prev == -e => {
                    if *prev == 1 && mid.in_a() {
                        Some(mid.phi().unwrap())
                    } else if *prev == -1 && mid.in_b() {
                        Some(mid.phi_inv().unwrap())
                    } else {
                        None
                    }
                }
                _ => None,
            };
            match pinch {
                Some(replacement) => {
                    out.tail.pop();
                    let target = out.last_mut();
                    *target = target
                        .multiply(&replacement)
                        .and_then(|x| x.multiply(g))
                        .expect("equal ranks");
                }
                None => out.tail.push((*e, g.clone())),
            }
        }
        out
    }

    /// Exact word problem: the element is trivial iff its Britton-reduced
    /// form has no stable letters and a trivial base element.
    pub fn is_trivial(&self) -> bool {
        let r = self.britton_reduce();
        r.tail.is_empty() && r.head.is_trivial()
    }

    /// Random word with `t_letters` stable letters and pair components of
    /// length at most `max_len`.
    pub fn random_with<R: Rng + ?Sized>(
        rng: &mut R,
        rank: u32,
        t_letters: usize,
        max_len: usize,
    ) -> Result<HnnWord> {
        let head = PairElem::random_with(rng, rank, max_len)?;
        let mut tail = Vec::with_capacity(t_letters);
        for _ in 0..t_letters {
            let sign = if rng.gen() { 1 } else { -1 };
            // Bias towards pinch-shaped elements so reduction gets exercised.
            let g = match rng.gen_range(0..4) {
                0 => PairElem::diagonal(Word::random_upto(rng, max_len, rank)?),
                1 => PairElem {
                    left: Word::identity(rank),
                    right: Word::random_upto(rng, max_len, rank)?,
                },
                _ => PairElem::random_with(rng, rank, max_len)?,
            };
            tail.push((sign, g));
        }
        HnnWord::new(head, tail)
    }
}

impl PartialEq for HnnWord {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.head == other.head && self.tail == other.tail
    }
}

impl Eq for HnnWord {}

impl std::hash::Hash for HnnWord {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rank.hash(state);
        self.head.hash(state);
        self.tail.hash(state);
    }
}

impl fmt::Display for HnnWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.head.is_trivial() || self.tail.is_empty() {
            parts.push(self.head.to_string());
        }
        for (e, g) in &self.tail {
            parts.push(if *e == 1 { "t".into() } else { "t^-1".into() });
            if !g.is_trivial() {
                parts.push(g.to_string());
            }
        }
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for HnnWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HnnWord[F{}]({})", self.rank, self)
    }
}

impl Serialize for HnnWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            rank: u32,
            head: &'a PairElem,
            tail: &'a [(StableSign, PairElem)],
        }
        Wire {
            rank: self.rank,
            head: &self.head,
            tail: &self.tail,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HnnWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        type RawPair = (Vec<i64>, Vec<i64>);
        #[derive(Deserialize)]
        struct Wire {
            rank: u32,
            head: RawPair,
            tail: Vec<(i8, RawPair)>,
        }
        let raw = Wire::deserialize(d)?;
        let pair = |(l, r): &RawPair| -> Result<PairElem> {
            PairElem::new(
                Word::from_signed(l, raw.rank)?,
                Word::from_signed(r, raw.rank)?,
            )
        };
        let build = || -> Result<HnnWord> {
            let head = pair(&raw.head)?;
            let tail = raw
                .tail
                .iter()
                .map(|(e, p)| Ok((*e, pair(p)?)))
                .collect::<Result<_>>()?;
            HnnWord::new(head, tail)
        };
        build().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::word;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pair(l: &[i64], r: &[i64]) -> PairElem {
        PairElem::new(word(l, 2), word(r, 2)).unwrap()
    }

    fn hnn(head: PairElem, tail: Vec<(i8, PairElem)>) -> HnnWord {
        HnnWord::new(head, tail).unwrap()
    }

    #[test]
    fn pair_arithmetic() {
        assert_eq!(
            pair(&[1], &[]).multiply(&pair(&[], &[1])).unwrap(),
            pair(&[1], &[1])
        );
        assert_eq!(pair(&[1], &[2]).inverse(), pair(&[-1], &[-2]));
        assert!(pair(&[], &[]).is_trivial());
        assert!(!pair(&[1], &[]).is_trivial());
        assert!(PairElem::new(word(&[1], 2), word(&[1], 3)).is_err());
    }

    #[test]
    fn subgroup_membership() {
        assert!(pair(&[1, 2], &[1, 2]).in_a());
        assert!(pair(&[], &[2]).in_b());
        assert!(!pair(&[], &[2]).in_a());
        assert!(!pair(&[1], &[2]).in_a());
        assert!(!pair(&[1], &[2]).in_b());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(pair(&[1], &[1]).phi().unwrap(), pair(&[], &[1]));
        assert_eq!(
            pair(&[], &[2, 1]).phi_inv().unwrap(),
            pair(&[2, 1], &[2, 1])
        );
        assert!(pair(&[1], &[2]).phi().is_err());
        assert!(pair(&[1], &[2]).phi_inv().is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let p = PairElem::diagonal(Word::random_with(&mut rng, 6, 2).unwrap());
            assert_eq!(p.phi().unwrap().phi_inv().unwrap(), p);
        }
    }

    #[test]
    fn britton_examples() {
        let w = hnn(
            pair(&[], &[]),
            vec![(1, pair(&[1], &[1])), (-1, pair(&[], &[]))],
        );
        let r = w.britton_reduce();
        assert_eq!(r.t_count(), 0);
        assert_eq!(r.head(), &pair(&[], &[1]));
        assert!(r.is_britton_reduced());
        assert_eq!(r.to_string(), "(e | f1)");

        let w = hnn(
            pair(&[], &[]),
            vec![(1, pair(&[1], &[2])), (-1, pair(&[], &[]))],
        );
        let r = w.britton_reduce();
        assert_eq!(r.t_count(), 2);
        assert_eq!(r, w);

        let w = hnn(
            pair(&[], &[]),
            vec![(-1, pair(&[], &[2])), (1, pair(&[], &[]))],
        );
        assert_eq!(w.britton_reduce().to_string(), "(f2 | f2)");
    }

    #[test]
    fn nested_pinches_cascade() {
        // t t (f1|f1) t^-1 (e|f1^-1) t^-1  →  t (e|e) t^-1  →  (e|e)
        let w = hnn(
            pair(&[], &[]),
            vec![
                (1, pair(&[], &[])),
                (1, pair(&[1], &[1])),
                (-1, pair(&[], &[-1])),
                (-1, pair(&[], &[])),
            ],
        );
        assert!(w.is_trivial());
        let w = hnn(
            pair(&[], &[]),
            vec![
                (1, pair(&[], &[])),
                (1, pair(&[1], &[1])),
                (-1, pair(&[], &[2])),
                (-1, pair(&[], &[])),
            ],
        );
        // the outer middle (e | f1 f2) is not diagonal
        assert_eq!(w.britton_reduce().to_string(), "t (e | f1 f2) t^-1");
    }

    #[test]
    fn triviality_examples() {
        let rel = HnnWord::relator(&word(&[1], 2));
        assert!(rel.is_trivial());
        assert!(!HnnWord::stable(2, 1).unwrap().is_trivial());
        let a = HnnWord::from_pair(pair(&[1], &[]));
        let b = HnnWord::from_pair(pair(&[], &[2]));
        let c = a
            .multiply(&b)
            .unwrap()
            .multiply(&a.inverse())
            .unwrap()
            .multiply(&b.inverse())
            .unwrap();
        assert!(c.is_trivial());
    }

    #[test]
    fn inverse_and_split() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let w = HnnWord::random_with(&mut rng, 2, 4, 5).unwrap();
            assert!(w.multiply(&w.inverse()).unwrap().is_trivial());
            let at = rng.gen_range(0..=w.t_count());
            let (p, s) = w.split_at(at, rng.gen_range(0..6), rng.gen_range(0..6));
            let joined = p.multiply(&s).unwrap();
            assert_eq!(joined.t_count(), w.t_count());
            assert!(joined.multiply(&w.inverse()).unwrap().is_trivial());
        }
    }

    #[test]
    fn reduction_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let w = HnnWord::random_with(&mut rng, 2, 6, 4).unwrap();
            let r = w.britton_reduce();
            assert_eq!(r.clone().unmark().britton_reduce(), r);
        }
    }

    #[test]
    fn display() {
        let w = hnn(
            pair(&[1], &[]),
            vec![(1, pair(&[], &[])), (-1, pair(&[2], &[-1]))],
        );
        assert_eq!(w.to_string(), "(f1 | e) t t^-1 (f2 | f1^-1)");
        assert_eq!(HnnWord::identity(2).to_string(), "(e | e)");
    }

    #[test]
    fn json_shape() {
        let w = hnn(pair(&[1], &[]), vec![(-1, pair(&[2], &[-1]))]);
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(
            json,
            r#"{"rank":2,"head":[[1],[]],"tail":[[-1,[[2],[-1]]]]}"#
        );
        assert_eq!(serde_json::from_str::<HnnWord>(&json).unwrap(), w);
        assert!(
            serde_json::from_str::<HnnWord>(r#"{"rank":2,"head":[[3],[]],"tail":[]}"#).is_err()
        );
        assert!(serde_json::from_str::<HnnWord>(
            r#"{"rank":2,"head":[[],[]],"tail":[[2,[[],[]]]]}"#
        )
        .is_err());
    }
}
