use std::fmt::Write as _;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hash::{hash, Digest, HfParams};

/// The experiment flips every bit of a single 448-bit block.
pub const AVALANCHE_INPUT_BYTES: usize = 56;

/// Seed of the documented pseudorandom input ("HF-hash!" as ASCII).
pub const DEFAULT_SEED: u64 = 0x4846_2d68_6173_6821;

const BUCKET_RADII: [u32; 4] = [5, 10, 15, 20];
const IDEAL_DISTANCE: u32 = 128;

/// 56 bytes from ChaCha8 seeded with `seed`.
pub fn default_input(seed: u64) -> [u8; AVALANCHE_INPUT_BYTES] {
    let mut out = [0u8; AVALANCHE_INPUT_BYTES];
    ChaCha8Rng::seed_from_u64(seed).fill_bytes(&mut out);
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct FlipDistance {
    /// 1-based bit index; bit 1 is the most significant bit of byte 0.
    pub bit: usize,
    pub digest_distance: u32,
    pub word_distances: [u32; 8],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistanceStats {
    pub max: u32,
    pub min: u32,
    /// Most frequent value, smallest one on ties.
    pub mode: u32,
    pub mean: f64,
}

impl DistanceStats {
    fn of(values: impl Iterator<Item = u32> + Clone) -> Self {
        let mut counts = std::collections::BTreeMap::new();
        let mut n = 0usize;
        let mut sum = 0u64;
        for v in values.clone() {
            *counts.entry(v).or_insert(0usize) += 1;
            n += 1;
            sum += u64::from(v);
        }
        // BTreeMap iterates ascending, so max_by_key's last-wins is undone by reversing
        let mode = counts
            .iter()
            .rev()
            .max_by_key(|(_, &c)| c)
            .map(|(&v, _)| v)
            .unwrap_or(0);
        DistanceStats {
            max: values.clone().max().unwrap_or(0),
            min: values.min().unwrap_or(0),
            mode,
            mean: if n == 0 { 0.0 } else { sum as f64 / n as f64 },
        }
    }
}

/// Number of flips whose digest distance lies within `128 +- radius`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bucket {
    pub radius: u32,
    pub count: usize,
    pub percentage: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AvalancheReport {
    pub rounds: u32,
    pub input: String,
    pub digest: Digest,
    pub per_flip_distances: Vec<FlipDistance>,
    pub digest_summary: DistanceStats,
    /// Column `i` compares digest word `h_i`.
    pub word_summaries: [DistanceStats; 8],
    pub buckets: Vec<Bucket>,
}

/// Hashes `message` and each of its 448 single-bit variants and records the
/// Hamming distances between the digests.
pub fn avalanche(message: &[u8], params: &HfParams) -> Result<AvalancheReport> {
    if message.len() != AVALANCHE_INPUT_BYTES {
        return Err(Error::InvalidInputLength {
            expected: AVALANCHE_INPUT_BYTES,
            found: message.len(),
        });
    }
    let base = hash(message, params)?;
    let mut variant = message.to_vec();
    let mut per_flip = Vec::with_capacity(AVALANCHE_INPUT_BYTES * 8);
    for bit in 1..=AVALANCHE_INPUT_BYTES * 8 {
        let (byte, mask) = ((bit - 1) / 8, 0x80u8 >> ((bit - 1) % 8));
        variant[byte] ^= mask;
        let d = hash(&variant, params)?;
        variant[byte] ^= mask;
        per_flip.push(FlipDistance {
            bit,
            digest_distance: base.hamming_distance(&d),
            word_distances: base.word_distances(&d),
        });
    }

    let digest_summary = DistanceStats::of(per_flip.iter().map(|f| f.digest_distance));
    let word_summaries = std::array::from_fn(|w| {
        DistanceStats::of(per_flip.iter().map(move |f| f.word_distances[w]))
    });
    let total = per_flip.len();
    let buckets = BUCKET_RADII
        .iter()
        .map(|&radius| {
            let count = per_flip
                .iter()
                .filter(|f| f.digest_distance.abs_diff(IDEAL_DISTANCE) <= radius)
                .count();
            Bucket {
                radius,
                count,
                percentage: 100.0 * count as f64 / total as f64,
            }
        })
        .collect();

    Ok(AvalancheReport {
        rounds: params.rounds.into(),
        input: message.iter().map(|b| format!("{b:02x}")).collect(),
        digest: base,
        per_flip_distances: per_flip,
        digest_summary,
        word_summaries,
        buckets,
    })
}

impl AvalancheReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "input   {}", self.input);
        let _ = writeln!(out, "digest  {}", self.digest);
        let _ = writeln!(out, "rounds  {}", self.rounds);
        let _ = write!(out, "\n{:<8}", "");
        for w in 1..=8 {
            let _ = write!(out, "{:>7}", format!("W{w}"));
        }
        let _ = writeln!(out, "{:>9}", "digest");
        type Pick = fn(&DistanceStats) -> String;
        let rows: [(&str, Pick); 4] = [
            ("max", |s| s.max.to_string()),
            ("min", |s| s.min.to_string()),
            ("mode", |s| s.mode.to_string()),
            ("mean", |s| format!("{:.2}", s.mean)),
        ];
        for (label, pick) in rows {
            let _ = write!(out, "{label:<8}");
            for s in &self.word_summaries {
                let _ = write!(out, "{:>7}", pick(s));
            }
            let _ = writeln!(out, "{:>9}", pick(&self.digest_summary));
        }
        let _ = writeln!(out, "\nrange     flips  percent");
        for b in &self.buckets {
            let _ = writeln!(
                out,
                "128+-{:<4}{:>6}  {:>7.2}",
                b.radius, b.count, b.percentage
            );
        }
        out
    }
}
