//! Symbolic calculus for free groups `F_n`, their unitriangular automorphism
//! groups `U_n`, and the HNN extension `H(F_m)` together with its
//! homomorphism into `U_4`.
//!
//! All products follow a right action: in `a·b`, `a` acts first.

pub mod dsl;
pub mod error;
pub mod fuzz;
pub mod hnn;
pub mod morphism;
pub mod unitri;
pub mod word;

pub use error::{Error, Result};
pub use hnn::{HnnWord, PairElem, STABLE_LETTER_SIGN};
pub use morphism::EndoMap;
pub use unitri::{LambdaLetter, LambdaWord, UniTri};
pub use word::{GeneratorId, Letter, Word};
