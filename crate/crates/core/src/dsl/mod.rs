//! Expression language for words, automorphism words and HNN words.
//!
//! ```text
//! word := term { term }
//! term := atom [ "^" integer ]
//! atom := "e" | "f" index | "L(" i "," j ")" | "tau(" i ")" | "sigma" | "t"
//!       | "(" word ")" | "[" word "," word "]" | "(" word "|" word ")"
//! ```
//!
//! Juxtaposition multiplies left to right and `[u, v]` is `u v u^-1 v^-1`.
//! Which atoms are allowed depends on the [`Kind`] being parsed.

mod eval;
mod format;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

pub use eval::{eval, Value};
pub use format::{format_expr, format_hnn, format_unitri, format_value, format_word};
pub use parser::{parse, parse_bytes};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Word,
    LambdaWord,
    EndoWord,
    HnnWord,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Word => "word",
            Kind::LambdaWord => "lambda-word",
            Kind::EndoWord => "endo-word",
            Kind::HnnWord => "hnn-word",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Rank and kind an expression is read in. For HNN words `rank` is the rank
/// of the base free group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Context {
    pub rank: u32,
    pub kind: Kind,
}

impl Context {
    pub fn new(rank: u32, kind: Kind) -> Self {
        Context { rank, kind }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gen {
    /// `f_k`
    F(u32),
    /// `λ_{i,j}`
    Lambda(u32, u32),
    /// `τ_i`
    Tau(u32),
    Sigma,
    /// The stable letter.
    T,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Identity,
    Gen(Gen),
    Product(Vec<Expr>),
    Inverse(Box<Expr>),
    Power(Box<Expr>, i64),
    Commutator(Box<Expr>, Box<Expr>),
    /// `(u | v)`, an element of the HNN base group.
    Pair(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    /// An atom not allowed in the requested kind.
    Kind,
    /// An index outside the declared rank.
    Rank,
}

/// A parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

/// Parses and evaluates in one step.
pub fn read(input: &str, ctx: Context) -> crate::error::Result<Value> {
    eval(&parse(input, ctx)?, ctx)
}
