//! Endomorphisms of `F_n` given by the images of the basis.
//!
//! Composition is a right action: `compose(a, b)` applies `a` first and then
//! `b`, so products of automorphisms are read left to right.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{push_reduced, Word};

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EndoMap {
    rank: u32,
    images: Vec<Word>,
}

impl EndoMap {
    /// Builds an endomorphism from the images of `f_1, ..., f_rank`.
    pub fn new(rank: u32, images: Vec<Word>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        if images.len() != rank as usize {
            return Err(Error::ArityMismatch {
                expected: rank as usize,
                got: images.len(),
            });
        }
        if let Some(w) = images.iter().find(|w| w.rank() != rank) {
            return Err(Error::RankMismatch {
                left: rank,
                right: w.rank(),
            });
        }
        Ok(EndoMap { rank, images })
    }

    pub fn identity(rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        let images = (1..=rank)
            .map(|k| Word::generator(k, rank))
            .collect::<Result<_>>()?;
        Ok(EndoMap { rank, images })
    }

    /// `g ↦ c^-1 g c`.
    pub fn inner(rank: u32, conjugator: &Word) -> Result<Self> {
        let c = conjugator.restrict(rank)?;
        let c_inv = c.inverse();
        let images = (1..=rank)
            .map(|k| {
                let f = Word::generator(k, rank)?;
                Ok(c_inv.mul_unchecked(&f).mul_unchecked(&c))
            })
            .collect::<Result<_>>()?;
        Ok(EndoMap { rank, images })
    }

    /// `τ_i`: conjugation by `f_i`.
    pub fn tau(rank: u32, i: u32) -> Result<Self> {
        EndoMap::inner(rank, &Word::generator(i, rank)?)
    }

    /// `σ_{2,1}` on `F_2`: fixes `f_1`, sends `f_2` to `f_1 f_2`.
    pub fn sigma() -> Self {
        EndoMap::nielsen(2, 2, 1, false).expect("valid indices")
    }

    /// The Nielsen map `f_i ↦ f_j f_i` (or `f_j^-1 f_i` when `inverse`),
    /// fixing the rest of the basis.
    pub fn nielsen(rank: u32, i: u32, j: u32, inverse: bool) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > rank || j > rank {
            return Err(Error::IndexViolation { i, j, rank });
        }
        let mut e = EndoMap::identity(rank)?;
        let fj = Word::generator(j, rank)?;
        let fj = if inverse { fj.inverse() } else { fj };
        e.images[i as usize - 1] = fj.mul_unchecked(&e.images[i as usize - 1]);
        Ok(e)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Image of `f_k`.
    pub fn image(&self, k: u32) -> &Word {
        &self.images[k as usize - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, w)| {
            w.len() == 1 && {
                let l = w.letters()[0];
                l.is_positive() && l.index() as usize == k + 1
            }
        })
    }

    fn check_rank(&self, rank: u32) -> Result<()> {
        if self.rank == rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                left: self.rank,
                right: rank,
            })
        }
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.check_rank(w.rank())?;
        Ok(substitute(&self.images, w, self.rank))
    }

    /// Right action: `a` first, then `b`.
    pub fn compose(&self, other: &EndoMap) -> Result<EndoMap> {
        self.check_rank(other.rank)?;
        Ok(EndoMap {
            rank: self.rank,
            images: self
                .images
                .iter()
                .map(|w| substitute(&other.images, w, self.rank))
                .collect(),
        })
    }
}

/// Substitutes `images[k-1]` for `f_k` in `w` and reduces. Only letters with
/// index `<= images.len()` may occur.
pub(crate) fn substitute(images: &[Word], w: &Word, rank: u32) -> Word {
    let mut out = Vec::with_capacity(w.len());
    for &l in w.letters() {
        let img = &images[l.index() as usize - 1];
        if l.is_positive() {
            for &x in img.letters() {
                push_reduced(&mut out, x);
            }
        } else {
            for &x in img.letters().iter().rev() {
                push_reduced(&mut out, x.inverse());
            }
        }
    }
    Word::from_reduced_unchecked(out, rank)
}

/// A named automorphism together with its inverse.
#[derive(Debug, Clone)]
pub struct NamedAuto {
    pub forward: EndoMap,
    pub backward: EndoMap,
}

/// Evaluates a word in named automorphisms, left factor first.
pub fn evaluate_endo_word(
    rank: u32,
    generators: &HashMap<String, NamedAuto>,
    word: &[(String, i8)],
) -> Result<EndoMap> {
    let mut acc = EndoMap::identity(rank)?;
    for (name, exp) in word {
        let gen = generators
            .get(name)
            .ok_or_else(|| Error::UnboundName(name.clone()))?;
        let factor = match exp {
            1 => &gen.forward,
            -1 => &gen.backward,
            other => return Err(Error::BadExponent(i64::from(*other))),
        };
        acc = acc.compose(factor)?;
    }
    Ok(acc)
}

/// `τ_1`, `τ_2` and `σ_{2,1}` of `Aut(F_2)` bound as `tau1`, `tau2`, `sigma`.
pub fn v3_generators() -> HashMap<String, NamedAuto> {
    let t1 = EndoMap::tau(2, 1).unwrap();
    let t2 = EndoMap::tau(2, 2).unwrap();
    let f1 = Word::generator(1, 2).unwrap();
    let f2 = Word::generator(2, 2).unwrap();
    HashMap::from([
        (
            "tau1".to_owned(),
            NamedAuto {
                forward: t1,
                backward: EndoMap::inner(2, &f1.inverse()).unwrap(),
            },
        ),
        (
            "tau2".to_owned(),
            NamedAuto {
                forward: t2,
                backward: EndoMap::inner(2, &f2.inverse()).unwrap(),
            },
        ),
        (
            "sigma".to_owned(),
            NamedAuto {
                forward: EndoMap::sigma(),
                backward: EndoMap::nielsen(2, 2, 1, true).unwrap(),
            },
        ),
    ])
}

impl fmt::Display for EndoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, w) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "f{} -> {}", k + 1, w)?;
        }
        Ok(())
    }
}

impl fmt::Debug for EndoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EndoMap[F{}]({})", self.rank, self)
    }
}

#[derive(Deserialize)]
struct RawEndo {
    rank: u32,
    images: Vec<Vec<i64>>,
}

impl<'de> Deserialize<'de> for EndoMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawEndo::deserialize(d)?;
        let images = raw
            .images
            .iter()
            .map(|w| Word::from_signed(w, raw.rank))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        EndoMap::new(raw.rank, images).map_err(serde::de::Error::custom)
    }
}
