//! The HF-hash pipeline: padding, parsing into 448-bit blocks, expansion of
//! each block together with two chaining words into a 64-word schedule, and
//! the 64-round transformation driven by the polynomial map `p`.

mod compress;
mod hasher;
mod pad;
mod params;
mod selftest;

pub use compress::{compress, expand, hash, round};
pub use hasher::Hasher;
pub use pad::{pad, padding, padding_zero_bits, parse_blocks};
pub use params::{
    AmbiguityConfig, Endianness, Evaluator, HalfOrder, HfParams, LastBlockMap, PadBit, Rounds,
};
pub use selftest::{
    reconciliation_sweep, self_test, SelfTestReport, SweepEntry, SweepReport, VectorCheck,
    TEST_VECTORS,
};

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;

/// Block size in bytes (448 bits).
pub const BLOCK_BYTES: usize = 56;
/// Message words per block.
pub const BLOCK_WORDS: usize = 14;
pub const SCHEDULE_WORDS: usize = 64;

/// Initial chaining value, the first 256 bits of the fractional part of pi.
pub const IV: [u32; 8] = [
    0x243F6A88, 0x85A308D3, 0x13198A2E, 0x03707344, 0xA4093822, 0x299F31D0, 0x082EFA98, 0xEC4E6C89,
];

/// Round constants, taken from the fractional part of e.
pub const ROUND_CONSTANTS: [u32; 64] = [
    0xAC211BEC, 0x5FEFE110, 0x112276F8, 0x8AE122A4, 0x18B3488B, 0x00921A36, 0x40C045F8, 0xC8C0A3DA,
    0xC4ABF676, 0x6A68C750, 0xA37AFE0F, 0x732806F3, 0x25722CB7, 0x3FF43825, 0xACDF96D7, 0x9B53BCD3,
    0xE34950DE, 0xD9780CCB, 0x8B5F9BB7, 0x3D1182ED, 0x1921B44A, 0x7003F30D, 0x42657E31, 0x231E7B55,
    0x91E3A28E, 0x95CD4AB0, 0x0A0AC2E3, 0xFCDEBE5E, 0xFCF1E321, 0x1D136560, 0x2974BF63, 0x70963992,
    0x4F5B5107, 0x0072C0C1, 0xC99F3C1D, 0xC56598D9, 0x77A1D027, 0x36675FB6, 0xA40C34E8, 0x46764EAD,
    0xF8823861, 0x19F66E64, 0x87E10299, 0x4311C8C2, 0x07C102B9, 0x9F4EC8CE, 0x29D81EBA, 0x992744F9,
    0x4CDA6790, 0x13DA5357, 0xBA6D7772, 0x80673F08, 0xB049EE4C, 0x839F8647, 0x736F658B, 0xEBE90F9B,
    0xFA6DC4D1, 0xE951630E, 0xAFC453E4, 0x159B7483, 0x45EABF9D, 0x4292A60E, 0x17AA0ABD, 0x94E81C30,
];

/// The eight working words `H_0 .. H_7`, also used as the chaining value
/// between blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ChainingState(pub [u32; 8]);

/// One parsed 448-bit block, words `M_1 .. M_14` stored at indices 0..14.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MessageBlock {
    pub words: [u32; BLOCK_WORDS],
    pub is_last: bool,
}

impl MessageBlock {
    /// Reads 56 bytes as 14 little-endian words.
    pub fn from_bytes(bytes: &[u8; BLOCK_BYTES], is_last: bool) -> Self {
        let mut words = [0u32; BLOCK_WORDS];
        for (w, chunk) in words.iter_mut().zip(bytes.chunks_exact(4)) {
            *w = u32::from_le_bytes([chunk[0], chunk[1], chunk[2], chunk[3]]);
        }
        MessageBlock { words, is_last }
    }
}

/// Expanded schedule `W_0 .. W_63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Schedule(pub [u32; SCHEDULE_WORDS]);

impl Schedule {
    pub fn words(&self) -> &[u32; SCHEDULE_WORDS] {
        &self.0
    }

    /// Checks `W_j = rotl3(W_{j-16} ^ W_{j-14} ^ W_{j-8} ^ W_{j-1})` for `16 <= j < 64`.
    pub fn satisfies_recurrence(&self) -> bool {
        let w = &self.0;
        (16..SCHEDULE_WORDS)
            .all(|j| w[j] == (w[j - 16] ^ w[j - 14] ^ w[j - 8] ^ w[j - 1]).rotate_left(3))
    }

    /// Bitwise difference against another schedule.
    pub fn xor(&self, other: &Schedule) -> Schedule {
        let mut out = [0u32; SCHEDULE_WORDS];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(other.0.iter())) {
            *o = a ^ b;
        }
        Schedule(out)
    }

    /// Hamming weight of the first `words` schedule words.
    pub fn weight(&self, words: usize) -> u32 {
        self.0[..words].iter().map(|w| w.count_ones()).sum()
    }
}

/// A 256-bit digest `h_0 .. h_7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Digest(pub [u32; 8]);

impl Digest {
    pub fn words(&self) -> &[u32; 8] {
        &self.0
    }

    /// Words `h_0 .. h_7`, each big-endian.
    pub fn to_bytes(&self) -> [u8; 32] {
        let mut out = [0u8; 32];
        for (chunk, w) in out.chunks_exact_mut(4).zip(self.0.iter()) {
            chunk.copy_from_slice(&w.to_be_bytes());
        }
        out
    }

    pub fn to_hex(&self) -> String {
        self.format(false, false)
    }

    /// `upper` switches to uppercase hex digits, `grouped` separates the
    /// eight words with single spaces.
    pub fn format(&self, upper: bool, grouped: bool) -> String {
        let words: Vec<String> = self
            .0
            .iter()
            .map(|w| {
                if upper {
                    format!("{w:08X}")
                } else {
                    format!("{w:08x}")
                }
            })
            .collect();
        words.join(if grouped { " " } else { "" })
    }

    pub fn hamming_distance(&self, other: &Digest) -> u32 {
        self.word_distances(other).iter().sum()
    }

    pub fn word_distances(&self, other: &Digest) -> [u32; 8] {
        let mut d = [0u32; 8];
        for (i, slot) in d.iter_mut().enumerate() {
            *slot = (self.0[i] ^ other.0[i]).count_ones();
        }
        d
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Accepts 64 hex digits, optionally split by whitespace.
impl FromStr for Digest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.len() != 64 || !compact.is_ascii() {
            return Err(Error::InvalidDigest(s.to_string()));
        }
        let mut words = [0u32; 8];
        for (i, w) in words.iter_mut().enumerate() {
            *w = u32::from_str_radix(&compact[8 * i..8 * i + 8], 16)
                .map_err(|_| Error::InvalidDigest(s.to_string()))?;
        }
        Ok(Digest(words))
    }
}

impl Serialize for Digest {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abcd_reads_little_endian() {
        let mut bytes = [0u8; BLOCK_BYTES];
        bytes[..4].copy_from_slice(b"abcd");
        let block = MessageBlock::from_bytes(&bytes, false);
        assert_eq!(block.words[0], 0x64636261);
    }

    #[test]
    fn digest_text_forms() {
        let d: Digest = "04EAF5F6 B215D974 B827FCC2 5ECA45C3 031524E8 472617D1 C14D9C85 6ACD1DC3"
            .parse()
            .unwrap();
        assert_eq!(
            d.to_hex(),
            "04eaf5f6b215d974b827fcc25eca45c3031524e8472617d1c14d9c856acd1dc3"
        );
        assert_eq!(d.to_hex().len(), 64);
        assert_eq!(
            d.format(true, true),
            "04EAF5F6 B215D974 B827FCC2 5ECA45C3 031524E8 472617D1 C14D9C85 6ACD1DC3"
        );
        assert_eq!(d.to_bytes()[..4], [0x04, 0xea, 0xf5, 0xf6]);
        assert!("04eaf5f6".parse::<Digest>().is_err());
        assert!("zz".repeat(32).parse::<Digest>().is_err());
    }

    #[test]
    fn distances() {
        let a = Digest([0; 8]);
        let b = Digest([1, 3, 0, 0, 0, 0, 0, u32::MAX]);
        assert_eq!(a.word_distances(&b), [1, 2, 0, 0, 0, 0, 0, 32]);
        assert_eq!(a.hamming_distance(&b), 35);
    }
}
