use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{IV, ROUND_CONSTANTS};
use crate::error::{Error, Result};
use crate::poly::{CompiledSystem, PolyMap, PolynomialSystem};

/// Byte order of each 32-bit half of the 64-bit length field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Endianness {
    Big,
    Little,
}

/// Which half of the 64-bit length field comes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HalfOrder {
    HighFirst,
    LowFirst,
}

/// Placement of the 14 message words in the last block's schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LastBlockMap {
    /// `W_j = M_{j-1}` for `2 <= j <= 15`.
    Shifted,
    /// `W_j = M_j` for `2 <= j <= 15`; `M_15` does not exist, so every
    /// expansion of a last block fails.
    Literal,
}

/// Where the single padding 1-bit goes in the byte after the message.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PadBit {
    /// `0x80`
    MsbOfNextByte,
    /// `0x01`
    LsbOfNextByte,
}

impl PadBit {
    pub fn byte(self) -> u8 {
        match self {
            PadBit::MsbOfNextByte => 0x80,
            PadBit::LsbOfNextByte => 0x01,
        }
    }
}

/// Encoding choices the algorithm description leaves open.
///
/// None of the 16 combinations reproduces the three published test digests
/// (see `docs/reconciliation.md`), so [`AmbiguityConfig::CANONICAL`] is the
/// documented default: little-endian length, low half first, shifted
/// last-block map, padding bit in the most significant position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct AmbiguityConfig {
    pub length_endianness: Endianness,
    pub length_half_order: HalfOrder,
    pub lastblock_word_map: LastBlockMap,
    pub pad_bit_placement: PadBit,
}

impl AmbiguityConfig {
    pub const CANONICAL: AmbiguityConfig = AmbiguityConfig {
        length_endianness: Endianness::Little,
        length_half_order: HalfOrder::LowFirst,
        lastblock_word_map: LastBlockMap::Shifted,
        pad_bit_placement: PadBit::MsbOfNextByte,
    };

    /// All 16 combinations, canonical first.
    pub fn all() -> Vec<AmbiguityConfig> {
        let mut out = vec![Self::CANONICAL];
        for length_endianness in [Endianness::Little, Endianness::Big] {
            for length_half_order in [HalfOrder::LowFirst, HalfOrder::HighFirst] {
                for lastblock_word_map in [LastBlockMap::Shifted, LastBlockMap::Literal] {
                    for pad_bit_placement in [PadBit::MsbOfNextByte, PadBit::LsbOfNextByte] {
                        let cfg = AmbiguityConfig {
                            length_endianness,
                            length_half_order,
                            lastblock_word_map,
                            pad_bit_placement,
                        };
                        if cfg != Self::CANONICAL {
                            out.push(cfg);
                        }
                    }
                }
            }
        }
        out
    }

    /// The 8-byte length field as it appears at the end of the padded message.
    pub fn encode_length(&self, bits: u64) -> [u8; 8] {
        let hi = (bits >> 32) as u32;
        let lo = bits as u32;
        let (first, second) = match self.length_half_order {
            HalfOrder::HighFirst => (hi, lo),
            HalfOrder::LowFirst => (lo, hi),
        };
        let enc = |w: u32| match self.length_endianness {
            Endianness::Big => w.to_be_bytes(),
            Endianness::Little => w.to_le_bytes(),
        };
        let mut out = [0u8; 8];
        out[..4].copy_from_slice(&enc(first));
        out[4..].copy_from_slice(&enc(second));
        out
    }

    pub fn decode_length(&self, field: [u8; 8]) -> u64 {
        let dec = |b: &[u8]| {
            let b = [b[0], b[1], b[2], b[3]];
            match self.length_endianness {
                Endianness::Big => u32::from_be_bytes(b),
                Endianness::Little => u32::from_le_bytes(b),
            }
        };
        let (first, second) = (dec(&field[..4]), dec(&field[4..]));
        let (hi, lo) = match self.length_half_order {
            HalfOrder::HighFirst => (first, second),
            HalfOrder::LowFirst => (second, first),
        };
        (u64::from(hi) << 32) | u64::from(lo)
    }
}

impl Default for AmbiguityConfig {
    fn default() -> Self {
        Self::CANONICAL
    }
}

impl fmt::Display for AmbiguityConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = match self.length_endianness {
            Endianness::Big => "big",
            Endianness::Little => "little",
        };
        let h = match self.length_half_order {
            HalfOrder::HighFirst => "high-first",
            HalfOrder::LowFirst => "low-first",
        };
        let m = match self.lastblock_word_map {
            LastBlockMap::Shifted => "shifted",
            LastBlockMap::Literal => "literal",
        };
        let p = match self.pad_bit_placement {
            PadBit::MsbOfNextByte => "msb",
            PadBit::LsbOfNextByte => "lsb",
        };
        write!(f, "length={e}/{h} map={m} pad={p}")
    }
}

/// Number of rounds per block. Only 64 is the real hash; 32 and 48 exist to
/// compare diffusion and digests at reduced strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(into = "u32")]
pub enum Rounds {
    R32,
    R48,
    #[default]
    R64,
}

impl Rounds {
    pub fn count(self) -> usize {
        match self {
            Rounds::R32 => 32,
            Rounds::R48 => 48,
            Rounds::R64 => 64,
        }
    }
}

impl TryFrom<u32> for Rounds {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        match n {
            32 => Ok(Rounds::R32),
            48 => Ok(Rounds::R48),
            64 => Ok(Rounds::R64),
            other => Err(Error::InvalidRounds(other)),
        }
    }
}

impl From<Rounds> for u32 {
    fn from(r: Rounds) -> u32 {
        r.count() as u32
    }
}

/// How `p` is evaluated inside the rounds.
#[derive(Debug, Clone)]
pub enum Evaluator {
    Compiled(Arc<CompiledSystem>),
    /// Term-by-term sums; orders of magnitude slower, used as a reference.
    Oracle(Arc<PolynomialSystem>),
}

impl PolyMap for Evaluator {
    fn eval_p(&self, x: u64) -> u32 {
        match self {
            Evaluator::Compiled(c) => c.eval(x),
            Evaluator::Oracle(s) => s.eval_oracle(x),
        }
    }
}

/// Everything the compression function depends on.
#[derive(Debug, Clone)]
pub struct HfParams {
    pub iv: [u32; 8],
    pub constants: [u32; 64],
    pub evaluator: Evaluator,
    pub rounds: Rounds,
    pub layout: AmbiguityConfig,
}

impl HfParams {
    /// Shipped polynomial system, compiled evaluator, 64 rounds, canonical layout.
    pub fn canonical() -> Self {
        let (_, compiled) = crate::poly::shipped_shared();
        HfParams::with_evaluator(Evaluator::Compiled(compiled))
    }

    /// Same as [`HfParams::canonical`] but evaluating `p` term by term.
    pub fn oracle() -> Self {
        let (system, _) = crate::poly::shipped_shared();
        HfParams::with_evaluator(Evaluator::Oracle(system))
    }

    /// Canonical parameters over an alternative polynomial system.
    pub fn from_system(system: &PolynomialSystem) -> Self {
        HfParams::with_evaluator(Evaluator::Compiled(Arc::new(system.compile())))
    }

    pub fn with_evaluator(evaluator: Evaluator) -> Self {
        HfParams {
            iv: IV,
            constants: ROUND_CONSTANTS,
            evaluator,
            rounds: Rounds::R64,
            layout: AmbiguityConfig::CANONICAL,
        }
    }

    pub fn rounds(mut self, rounds: Rounds) -> Self {
        self.rounds = rounds;
        self
    }

    pub fn layout(mut self, layout: AmbiguityConfig) -> Self {
        self.layout = layout;
        self
    }
}

impl Default for HfParams {
    fn default() -> Self {
        HfParams::canonical()
    }
}
