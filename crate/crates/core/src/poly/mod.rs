//! Quadratic Boolean polynomials over GF(2) and the 32-polynomial system that
//! realizes the 64-bit to 32-bit map `p` used by every compression round.
//!
//! Variables are `x_1 .. x_64`, with `x_1` the most significant bit of the
//! 64-bit input word and `x_64` the least significant. Output bit 31 of `p` is
//! `y_1`, bit 0 is `y_32`.

mod compiled;
mod parse;

pub use compiled::CompiledSystem;
pub use parse::parse_polynomial;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};

pub const NUM_VARIABLES: u8 = 64;
pub const NUM_POLYNOMIALS: usize = 32;

/// The shipped polynomial asset, one `y_{k} = ...` line per polynomial.
pub const SHIPPED_ASSET: &str = include_str!("../../assets/polynomials.txt");

/// Anything that can evaluate the full 64 -> 32 bit map.
pub trait PolyMap {
    fn eval_p(&self, x: u64) -> u32;
}

/// A variable `x_i`, `1 <= i <= 64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u8);

impl Var {
    pub fn new(index: u8) -> Option<Var> {
        (1..=NUM_VARIABLES).contains(&index).then_some(Var(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    /// Bit position (0 = least significant) of this variable in the input word.
    pub fn bit_position(self) -> u32 {
        u32::from(NUM_VARIABLES - self.0)
    }

    pub fn value_in(self, x: u64) -> bool {
        (x >> self.bit_position()) & 1 == 1
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_{{{}}}", self.0)
    }
}

/// One term of a polynomial in algebraic normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Monomial {
    /// `x_i x_j` with `i < j`.
    Quadratic(Var, Var),
    Linear(Var),
    One,
}

impl Monomial {
    /// Builds `x_a x_b` in either argument order. `None` when `a == b`.
    pub fn quadratic(a: Var, b: Var) -> Option<Monomial> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Monomial::Quadratic(a, b)),
            std::cmp::Ordering::Greater => Some(Monomial::Quadratic(b, a)),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn degree(self) -> usize {
        match self {
            Monomial::Quadratic(..) => 2,
            Monomial::Linear(_) => 1,
            Monomial::One => 0,
        }
    }

    pub fn eval(self, x: u64) -> bool {
        match self {
            Monomial::Quadratic(i, j) => i.value_in(x) & j.value_in(x),
            Monomial::Linear(i) => i.value_in(x),
            Monomial::One => true,
        }
    }

    // quadratic terms first, then linear, then the constant
    fn sort_key(self) -> (u8, u8, u8) {
        match self {
            Monomial::Quadratic(i, j) => (0, i.0, j.0),
            Monomial::Linear(i) => (1, i.0, 0),
            Monomial::One => (2, 0, 0),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::Quadratic(i, j) => write!(f, "{i}{j}"),
            Monomial::Linear(i) => write!(f, "{i}"),
            Monomial::One => f.write_str("1"),
        }
    }
}

/// Term counts of one polynomial, split by degree.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct TermStats {
    pub terms: usize,
    pub quadratic: usize,
    pub linear: usize,
    pub constant: usize,
}

/// `y_k` as a set of monomials. Addition is symmetric difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanPolynomial {
    index: u32,
    terms: BTreeSet<Monomial>,
}

impl BooleanPolynomial {
    pub fn zero(index: u32) -> Self {
        BooleanPolynomial {
            index,
            terms: BTreeSet::new(),
        }
    }

    /// Sums the given terms over GF(2): a term listed twice cancels.
    pub fn from_terms(index: u32, terms: impl IntoIterator<Item = Monomial>) -> Self {
        let mut poly = BooleanPolynomial::zero(index);
        for t in terms {
            poly.toggle(t);
        }
        poly
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn terms(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, term: Monomial) -> bool {
        self.terms.contains(&term)
    }

    pub fn has_constant(&self) -> bool {
        self.terms.contains(&Monomial::One)
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|t| t.degree()).max().unwrap_or(0)
    }

    fn toggle(&mut self, term: Monomial) {
        if !self.terms.remove(&term) {
            self.terms.insert(term);
        }
    }

    // used by the parser, which must reject rather than cancel repeats
    fn insert_new(&mut self, term: Monomial) -> bool {
        self.terms.insert(term)
    }

    /// Term-by-term evaluation. This is the correctness oracle for every
    /// faster evaluator.
    pub fn eval(&self, x: u64) -> bool {
        self.terms.iter().fold(false, |acc, t| acc ^ t.eval(x))
    }

    /// GF(2) sum; keeps the index of `self`.
    pub fn add(&self, other: &BooleanPolynomial) -> BooleanPolynomial {
        BooleanPolynomial {
            index: self.index,
            terms: self
                .terms
                .symmetric_difference(&other.terms)
                .copied()
                .collect(),
        }
    }

    pub fn stats(&self) -> TermStats {
        let mut s = TermStats {
            terms: self.terms.len(),
            ..TermStats::default()
        };
        for t in &self.terms {
            match t {
                Monomial::Quadratic(..) => s.quadratic += 1,
                Monomial::Linear(_) => s.linear += 1,
                Monomial::One => s.constant += 1,
            }
        }
        s
    }
}

/// Canonical text form: `y_{k} = ` followed by terms in canonical order, or `0`.
impl fmt::Display for BooleanPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y_{{{}}} = ", self.index)?;
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, t) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyAudit {
    pub index: u32,
    #[serde(flatten)]
    pub stats: TermStats,
}

/// Per-polynomial term counts of a loaded system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemAudit {
    pub polynomials: Vec<PolyAudit>,
}

impl SystemAudit {
    pub fn total_terms(&self) -> usize {
        self.polynomials.iter().map(|p| p.stats.terms).sum()
    }
}

/// The ordered system `y_1 .. y_32`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialSystem {
    polys: Vec<BooleanPolynomial>,
    // every non-constant term as the mask of its variables, for the
    // term-by-term oracle: the term is 1 exactly when all its bits are set
    term_table: Vec<(Vec<u64>, bool)>,
}

fn term_table(poly: &BooleanPolynomial) -> (Vec<u64>, bool) {
    let masks = poly
        .terms()
        .filter_map(|t| match t {
            Monomial::Quadratic(i, j) => Some(1 << i.bit_position() | 1 << j.bit_position()),
            Monomial::Linear(i) => Some(1 << i.bit_position()),
            Monomial::One => None,
        })
        .collect();
    (masks, poly.has_constant())
}

impl PolynomialSystem {
    pub fn new(polys: Vec<BooleanPolynomial>) -> Result<Self> {
        if polys.len() != NUM_POLYNOMIALS {
            return Err(Error::WrongPolynomialCount(polys.len()));
        }
        for (k, p) in polys.iter().enumerate() {
            let expected = k as u32 + 1;
            if p.index != expected {
                return Err(Error::IndexOutOfOrder {
                    expected,
                    found: p.index,
                });
            }
        }
        let term_table = polys.iter().map(term_table).collect();
        Ok(PolynomialSystem { polys, term_table })
    }

    /// Parses an asset document: one polynomial per line, `#` comments and
    /// blank lines ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut polys = Vec::with_capacity(NUM_POLYNOMIALS);
        for (n, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let poly = parse_polynomial(line).map_err(|source| Error::Parse {
                line: n + 1,
                source,
            })?;
            polys.push(poly);
        }
        PolynomialSystem::new(polys)
    }

    /// The system shipped with the crate.
    pub fn shipped() -> &'static PolynomialSystem {
        shipped_pair().0.as_ref()
    }

    pub fn polynomials(&self) -> &[BooleanPolynomial] {
        &self.polys
    }

    /// `y_k`, 1-based.
    pub fn get(&self, k: usize) -> Option<&BooleanPolynomial> {
        k.checked_sub(1).and_then(|i| self.polys.get(i))
    }

    pub fn audit(&self) -> SystemAudit {
        SystemAudit {
            polynomials: self
                .polys
                .iter()
                .map(|p| PolyAudit {
                    index: p.index,
                    stats: p.stats(),
                })
                .collect(),
        }
    }

    /// Assembles `p(x)` bit by bit, each bit an XOR over the individual
    /// terms of its polynomial. Same result as [`BooleanPolynomial::eval`]
    /// on every polynomial, but walks a flat term table.
    pub fn eval_oracle(&self, x: u64) -> u32 {
        self.term_table.iter().fold(0u32, |acc, (masks, constant)| {
            let sum = masks
                .iter()
                .fold(u32::from(*constant), |s, &m| s ^ u32::from(x & m == m));
            (acc << 1) | (sum & 1)
        })
    }

    pub fn compile(&self) -> CompiledSystem {
        CompiledSystem::new(self)
    }
}

impl PolyMap for PolynomialSystem {
    fn eval_p(&self, x: u64) -> u32 {
        self.eval_oracle(x)
    }
}

fn shipped_pair() -> &'static (Arc<PolynomialSystem>, Arc<CompiledSystem>) {
    static SHIPPED: OnceLock<(Arc<PolynomialSystem>, Arc<CompiledSystem>)> = OnceLock::new();
    SHIPPED.get_or_init(|| {
        let sys =
            PolynomialSystem::parse(SHIPPED_ASSET).expect("shipped polynomial asset is valid");
        let compiled = sys.compile();
        (Arc::new(sys), Arc::new(compiled))
    })
}

pub(crate) fn shipped_shared() -> (Arc<PolynomialSystem>, Arc<CompiledSystem>) {
    let (s, c) = shipped_pair();
    (Arc::clone(s), Arc::clone(c))
}
