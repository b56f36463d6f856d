use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest as _, Sha256};

use crate::error::Result;
use crate::hash::{hash, Digest, Evaluator, HfParams};
use crate::poly::PolynomialSystem;

/// File sizes of the historical comparison, in MB (read as MiB here).
pub const REFERENCE_SIZES_MB: [f64; 5] = [1.4, 4.84, 7.48, 12.94, 24.3];

const MIB: f64 = 1024.0 * 1024.0;

pub fn mb_to_bytes(mb: f64) -> usize {
    (mb * MIB).round() as usize
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub sizes: Vec<usize>,
    /// Also time the term-by-term evaluator. It is two orders of magnitude
    /// slower, so it only runs on sizes up to `oracle_max_bytes`.
    pub include_oracle: bool,
    pub oracle_max_bytes: usize,
    pub seed: u64,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            sizes: REFERENCE_SIZES_MB
                .iter()
                .map(|&mb| mb_to_bytes(mb))
                .collect(),
            include_oracle: false,
            oracle_max_bytes: 1 << 20,
            seed: 0x62656e6368,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchEntry {
    pub bytes: usize,
    pub compiled_seconds: f64,
    pub oracle_seconds: Option<f64>,
    pub sha256_seconds: f64,
    /// MiB per second.
    pub compiled_mb_per_s: f64,
    pub oracle_mb_per_s: Option<f64>,
    pub sha256_mb_per_s: f64,
    /// `compiled_seconds / sha256_seconds`.
    pub hf_over_sha: f64,
    /// `oracle_seconds / compiled_seconds`.
    pub compiled_speedup: Option<f64>,
    pub digest: Digest,
    /// Compiled and oracle digests agree (vacuously true when the oracle is skipped).
    pub digests_agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub rounds: u32,
    pub entries: Vec<BenchEntry>,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    // a zero reading would break the ratios on tiny inputs
    (out, start.elapsed().as_secs_f64().max(1e-9))
}

/// Times one-shot hashing of a random buffer of each size with the compiled
/// evaluator, optionally the oracle evaluator, and SHA-256.
///
/// `system` supplies both evaluators; iv, constants, rounds and layout come
/// from `base`.
pub fn bench(
    options: &BenchOptions,
    system: &PolynomialSystem,
    base: &HfParams,
) -> Result<BenchReport> {
    let compiled = HfParams {
        evaluator: Evaluator::Compiled(Arc::new(system.compile())),
        ..base.clone()
    };
    let oracle = HfParams {
        evaluator: Evaluator::Oracle(Arc::new(system.clone())),
        ..base.clone()
    };

    let mut data = vec![0u8; options.sizes.iter().copied().max().unwrap_or(0)];
    ChaCha8Rng::seed_from_u64(options.seed).fill_bytes(&mut data);

    let mut entries = Vec::with_capacity(options.sizes.len());
    for &size in &options.sizes {
        let buf = &data[..size];
        let (digest, compiled_seconds) = timed(|| hash(buf, &compiled));
        let digest = digest?;
        let (_, sha256_seconds) = timed(|| Sha256::digest(buf));

        let mut oracle_seconds = None;
        let mut digests_agree = true;
        if options.include_oracle && size <= options.oracle_max_bytes {
            let (d, secs) = timed(|| hash(buf, &oracle));
            digests_agree = d? == digest;
            oracle_seconds = Some(secs);
        }

        let rate = |secs: f64| size as f64 / MIB / secs;
        entries.push(BenchEntry {
            bytes: size,
            compiled_seconds,
            oracle_seconds,
            sha256_seconds,
            compiled_mb_per_s: rate(compiled_seconds),
            oracle_mb_per_s: oracle_seconds.map(rate),
            sha256_mb_per_s: rate(sha256_seconds),
            hf_over_sha: compiled_seconds / sha256_seconds,
            compiled_speedup: oracle_seconds.map(|o| o / compiled_seconds),
            digest,
            digests_agree,
        });
    }
    Ok(BenchReport {
        rounds: base.rounds.into(),
        entries,
    })
}

impl BenchReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>12} {:>10} {:>10} {:>10} {:>9} {:>9}  agree",
            "bytes", "hf s", "oracle s", "sha256 s", "hf/sha", "speedup"
        );
        let opt = |v: Option<f64>, prec: usize| match v {
            Some(v) => format!("{v:.prec$}"),
            None => "-".to_string(),
        };
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{:>12} {:>10.4} {:>10} {:>10.4} {:>9.1} {:>9}  {}",
                e.bytes,
                e.compiled_seconds,
                opt(e.oracle_seconds, 4),
                e.sha256_seconds,
                e.hf_over_sha,
                opt(e.compiled_speedup, 1),
                if e.digests_agree { "yes" } else { "NO" }
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_sizes() {
        let o = BenchOptions::default();
        assert_eq!(o.sizes.len(), 5);
        assert_eq!(o.sizes[0], 1_468_006);
        assert_eq!(mb_to_bytes(1.0), 1 << 20);
    }

    #[test]
    fn small_run_is_consistent() {
        let options = BenchOptions {
            sizes: vec![0, 100, 2000],
            include_oracle: true,
            oracle_max_bytes: 200,
            seed: 1,
        };
        let report = bench(
            &options,
            PolynomialSystem::shipped(),
            &HfParams::canonical(),
        )
        .unwrap();
        assert_eq!(report.entries.len(), 3);
        for e in &report.entries {
            assert!(e.compiled_seconds > 0.0 && e.sha256_seconds > 0.0);
            assert!((e.hf_over_sha - e.compiled_seconds / e.sha256_seconds).abs() < 1e-9);
            assert!(e.digests_agree);
        }
        assert!(report.entries[1].oracle_seconds.is_some());
        assert!(report.entries[2].oracle_seconds.is_none());
        assert_eq!(report.entries[0].digest, crate::digest(b""));
        assert!(report.to_text().lines().count() == 4);
    }
}
