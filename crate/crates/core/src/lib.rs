//! HF-hash, a 256-bit iterated hash whose rounds evaluate a system of 32
//! quadratic Boolean polynomials in 64 variables, plus tooling to measure its
//! avalanche behaviour, message-expansion diffusion and throughput.
//!
//! ```
//! let d = hfhash::digest(b"abc");
//! assert_eq!(d.to_hex().len(), 64);
//! ```

pub mod analysis;
pub mod error;
pub mod hash;
pub mod poly;

pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use hash::{hash, AmbiguityConfig, Digest, Hasher, HfParams, Rounds};
pub use poly::{BooleanPolynomial, CompiledSystem, Monomial, PolynomialSystem, Var};

/// Hashes `data` with the canonical parameters.
pub fn digest(data: &[u8]) -> Digest {
    hash(data, &HfParams::canonical()).expect("canonical parameters hash any in-memory message")
}
