//! Measurements: the 448-flip avalanche experiment, diffusion of single-bit
//! differences through the message expansion, and throughput against SHA-256.

mod avalanche;
mod bench;
mod diffusion;

pub use avalanche::{
    avalanche, default_input, AvalancheReport, Bucket, DistanceStats, FlipDistance,
    AVALANCHE_INPUT_BYTES, DEFAULT_SEED,
};
pub use bench::{bench, mb_to_bytes, BenchEntry, BenchOptions, BenchReport, REFERENCE_SIZES_MB};
pub use diffusion::{diffusion, schedule_difference, DiffusionReport, ExpansionRule};
