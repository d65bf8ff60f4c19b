use super::{Context, Expr, Gen, Kind};
use crate::error::{Error, Result};
use crate::hnn::{HnnWord, PairElem};
use crate::morphism::EndoMap;
use crate::unitri::UniTri;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Word(Word),
    UniTri(UniTri),
    Endo(EndoMap),
    Hnn(HnnWord),
}

impl Value {
    pub fn kind(&self) -> Kind {
        match self {
            Value::Word(_) => Kind::Word,
            Value::UniTri(_) => Kind::LambdaWord,
            Value::Endo(_) => Kind::EndoWord,
            Value::Hnn(_) => Kind::HnnWord,
        }
    }

    fn mismatch(&self, expected: Kind) -> Error {
        Error::KindMismatch {
            expected: expected.name(),
            found: self.kind().name(),
        }
    }

    pub fn into_word(self) -> Result<Word> {
        match self {
            Value::Word(w) => Ok(w),
            other => Err(other.mismatch(Kind::Word)),
        }
    }

    pub fn into_unitri(self) -> Result<UniTri> {
        match self {
            Value::UniTri(x) => Ok(x),
            other => Err(other.mismatch(Kind::LambdaWord)),
        }
    }

    pub fn into_endo(self) -> Result<EndoMap> {
        match self {
            Value::Endo(x) => Ok(x),
            Value::UniTri(x) => Ok(x.to_endo()),
            other => Err(other.mismatch(Kind::EndoWord)),
        }
    }

    pub fn into_hnn(self) -> Result<HnnWord> {
        match self {
            Value::Hnn(x) => Ok(x),
            other => Err(other.mismatch(Kind::HnnWord)),
        }
    }
}

/// Group operations shared by every evaluation target.
trait Element: Sized + Clone {
    fn one(rank: u32) -> Result<Self>;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn inv(&self) -> Result<Self>;
    fn gen(g: Gen, rank: u32) -> Result<Self>;
    fn pair(_: &Expr, _: &Expr, _: u32) -> Result<Self> {
        Err(Error::Domain("pair literal outside an HNN word"))
    }
}

fn fold<T: Element>(expr: &Expr, rank: u32) -> Result<T> {
    match expr {
        Expr::Identity => T::one(rank),
        Expr::Gen(g) => T::gen(*g, rank),
        Expr::Product(items) => {
            let mut acc = T::one(rank)?;
            for x in items {
                acc = acc.mul(&fold(x, rank)?)?;
            }
            Ok(acc)
        }
        Expr::Inverse(x) => fold::<T>(x, rank)?.inv(),
        Expr::Power(x, n) => {
            let base = fold::<T>(x, rank)?;
            let base = if *n < 0 { base.inv()? } else { base };
            let mut acc = T::one(rank)?;
            for _ in 0..n.unsigned_abs() {
                acc = acc.mul(&base)?;
            }
            Ok(acc)
        }
        Expr::Commutator(a, b) => {
            let a = fold::<T>(a, rank)?;
            let b = fold::<T>(b, rank)?;
            a.mul(&b)?.mul(&a.inv()?)?.mul(&b.inv()?)
        }
        Expr::Pair(u, v) => T::pair(u, v, rank),
    }
}

fn wrong_gen(g: Gen) -> Error {
    Error::UnboundName(format!("{g:?}"))
}

impl Element for Word {
    fn one(rank: u32) -> Result<Self> {
        Ok(Word::identity(rank))
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        self.multiply(other)
    }
    fn inv(&self) -> Result<Self> {
        Ok(self.inverse())
    }
    fn gen(g: Gen, rank: u32) -> Result<Self> {
        match g {
            Gen::F(k) => Word::generator(k, rank),
            other => Err(wrong_gen(other)),
        }
    }
}

impl Element for UniTri {
    fn one(rank: u32) -> Result<Self> {
        UniTri::identity(rank)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        self.compose(other)
    }
    fn inv(&self) -> Result<Self> {
        Ok(self.inverse())
    }
    fn gen(g: Gen, rank: u32) -> Result<Self> {
        match g {
            Gen::Lambda(i, j) => UniTri::lambda(rank, i, j),
            other => Err(wrong_gen(other)),
        }
    }
}

impl Element for HnnWord {
    fn one(rank: u32) -> Result<Self> {
        Ok(HnnWord::identity(rank))
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        self.multiply(other)
    }
    fn inv(&self) -> Result<Self> {
        Ok(self.inverse())
    }
    fn gen(g: Gen, rank: u32) -> Result<Self> {
        match g {
            Gen::T => HnnWord::stable(rank, 1),
            other => Err(wrong_gen(other)),
        }
    }
    fn pair(u: &Expr, v: &Expr, rank: u32) -> Result<Self> {
        let p = PairElem::new(fold(u, rank)?, fold(v, rank)?)?;
        Ok(HnnWord::from_pair(p))
    }
}

/// An automorphism word kept symbolic until evaluation so that inverses are
/// taken generator by generator.
#[derive(Clone)]
struct Endo {
    forward: EndoMap,
    backward: EndoMap,
}

fn endo_gen(g: Gen, rank: u32) -> Result<Endo> {
    match g {
        Gen::Lambda(i, j) => Ok(Endo {
            forward: EndoMap::nielsen(rank, i, j, false)?,
            backward: EndoMap::nielsen(rank, i, j, true)?,
        }),
        Gen::Tau(i) => {
            let f = Word::generator(i, rank)?;
            Ok(Endo {
                forward: EndoMap::inner(rank, &f)?,
                backward: EndoMap::inner(rank, &f.inverse())?,
            })
        }
        Gen::Sigma => Ok(Endo {
            forward: EndoMap::nielsen(rank, 2, 1, false)?,
            backward: EndoMap::nielsen(rank, 2, 1, true)?,
        }),
        other => Err(wrong_gen(other)),
    }
}

impl Element for Endo {
    fn one(rank: u32) -> Result<Self> {
        let id = EndoMap::identity(rank)?;
        Ok(Endo {
            forward: id.clone(),
            backward: id,
        })
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        Ok(Endo {
            forward: self.forward.compose(&other.forward)?,
            backward: other.backward.compose(&self.backward)?,
        })
    }
    fn inv(&self) -> Result<Self> {
        Ok(Endo {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        })
    }
    fn gen(g: Gen, rank: u32) -> Result<Self> {
        endo_gen(g, rank)
    }
}

/// Evaluates a parsed expression in the given context.
pub fn eval(expr: &Expr, ctx: Context) -> Result<Value> {
    Ok(match ctx.kind {
        Kind::Word => Value::Word(fold(expr, ctx.rank)?),
        Kind::LambdaWord => Value::UniTri(fold(expr, ctx.rank)?),
        Kind::EndoWord => Value::Endo(fold::<Endo>(expr, ctx.rank)?.forward),
        Kind::HnnWord => Value::Hnn(fold(expr, ctx.rank)?),
    })
}
