use std::borrow::Cow;
use std::fs::File;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use hfhash::analysis::{self, BenchOptions, ExpansionRule};
use hfhash::hash::{reconciliation_sweep, self_test};
use hfhash::{Digest, Hasher, HfParams, PolynomialSystem, Rounds};

/// Environment variable naming an alternative polynomial file.
const ASSET_ENV: &str = "HFHASH_POLY_ASSET";

const DIFFUSION_FULL_MIN: u32 = 165;
const DIFFUSION_REDUCED_MAX: u32 = 75;
const AVALANCHE_MEAN: (f64, f64) = (125.0, 131.0);
const AVALANCHE_WORD_MEAN: (f64, f64) = (14.0, 18.0);

#[derive(Parser)]
#[command(name = "hfhash", version, about = "HF-hash digests and analysis tools")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit machine-readable JSON
    #[arg(long, global = true)]
    json: bool,
    /// Uppercase hex digits
    #[arg(long, global = true)]
    upper: bool,
    /// Separate the eight digest words with spaces
    #[arg(long, global = true)]
    grouped: bool,
    /// Number of rounds per block (32, 48 or 64)
    #[arg(long, global = true, value_parser = parse_rounds)]
    rounds: Option<Rounds>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the digest of each file (or standard input)
    Sum {
        /// Files to hash; `-` or nothing reads standard input
        paths: Vec<PathBuf>,
    },
    /// Hash the published reference inputs and compare
    Selftest {
        /// Repeat the check under all 16 encoding layouts
        #[arg(long)]
        sweep: bool,
    },
    /// Flip each bit of a 56-byte block and measure digest distances
    Avalanche {
        /// File holding exactly 56 bytes
        #[arg(long, conflicts_with = "seed")]
        input: Option<PathBuf>,
        /// Seed for the pseudorandom block
        #[arg(long)]
        seed: Option<u64>,
        /// Use the all-zero block
        #[arg(long, conflicts_with_all = ["input", "seed"])]
        zero: bool,
    },
    /// Weight of single-bit differences through the message expansion
    Diffusion {
        /// Word placement: non-last or last
        #[arg(long, default_value = "non-last")]
        rule: ExpansionRule,
    },
    /// Throughput against SHA-256
    Bench {
        /// Comma-separated sizes in MB (MiB)
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<f64>>,
        /// Also time the term-by-term evaluator (sizes up to 1 MiB)
        #[arg(long)]
        oracle: bool,
    },
    /// Inspect the polynomial system
    Poly {
        /// Polynomial index, 1 to 32
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=32))]
        index: Option<u32>,
        /// Evaluate at a 64-bit input given as 16 hex digits
        #[arg(long, value_parser = parse_hex16, conflicts_with = "stats")]
        eval: Option<u64>,
        /// Term counts
        #[arg(long)]
        stats: bool,
    },
}

fn parse_rounds(s: &str) -> Result<Rounds, String> {
    let n: u32 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    Rounds::try_from(n).map_err(|e| e.to_string())
}

fn parse_hex16(s: &str) -> Result<u64, String> {
    if s.len() != 16 || !s.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(format!("expected 16 hex digits, got `{s}`"));
    }
    u64::from_str_radix(s, 16).map_err(|e| e.to_string())
}

/// A failed check or a runtime error: exit status 1.
struct Failure;

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let system = match load_system() {
        Ok(s) => s,
        Err(msg) => {
            eprintln!("hfhash: {msg}");
            return ExitCode::from(2);
        }
    };
    let mut params = match &system {
        Cow::Borrowed(_) => HfParams::canonical(),
        Cow::Owned(s) => HfParams::from_system(s),
    };
    if let Some(r) = cli.global.rounds {
        params = params.rounds(r);
    }
    let g = &cli.global;
    let outcome = match cli.command {
        Command::Sum { paths } => cmd_sum(g, &params, &paths),
        Command::Selftest { sweep } => cmd_selftest(g, &params, sweep),
        Command::Avalanche { input, seed, zero } => cmd_avalanche(g, &params, input, seed, zero),
        Command::Diffusion { rule } => cmd_diffusion(g, rule),
        Command::Bench { sizes, oracle } => cmd_bench(g, &params, &system, sizes, oracle),
        Command::Poly { index, eval, stats } => cmd_poly(g, &system, index, eval, stats),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure) => ExitCode::from(1),
    }
}

fn load_system() -> Result<Cow<'static, PolynomialSystem>, String> {
    match std::env::var_os(ASSET_ENV) {
        None => Ok(Cow::Borrowed(PolynomialSystem::shipped())),
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| format!("{}: {e}", PathBuf::from(&path).display()))?;
            PolynomialSystem::parse(&text)
                .map(Cow::Owned)
                .map_err(|e| format!("{}: {e}", PathBuf::from(&path).display()))
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn fail(msg: impl std::fmt::Display) -> Failure {
    eprintln!("hfhash: {msg}");
    Failure
}

fn hash_reader(params: &HfParams, mut reader: impl Read) -> io::Result<Digest> {
    let mut hasher = Hasher::new(params.clone());
    let mut buf = vec![0u8; 64 * 1024];
    loop {
        let n = match reader.read(&mut buf) {
            Ok(0) => break,
            Ok(n) => n,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
            Err(e) => return Err(e),
        };
        hasher
            .update(&buf[..n])
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
    }
    hasher
        .finalize()
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))
}

#[derive(Serialize)]
struct SumLine {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn cmd_sum(g: &Global, params: &HfParams, paths: &[PathBuf]) -> Outcome {
    let stdin_only = [PathBuf::from("-")];
    let paths = if paths.is_empty() {
        &stdin_only[..]
    } else {
        paths
    };
    let mut lines = Vec::with_capacity(paths.len());
    let mut ok = true;
    let mut out = io::stdout().lock();
    for path in paths {
        let name = path.display().to_string();
        let result = if name == "-" {
            hash_reader(params, io::stdin().lock())
        } else {
            File::open(path).and_then(|f| hash_reader(params, f))
        };
        match result {
            Ok(d) => {
                let hex = d.format(g.upper, g.grouped);
                if !g.json {
                    let _ = writeln!(out, "{hex}  {name}");
                }
                lines.push(SumLine {
                    name,
                    digest: Some(hex),
                    error: None,
                });
            }
            Err(e) => {
                ok = false;
                eprintln!("hfhash: {name}: {e}");
                lines.push(SumLine {
                    name,
                    digest: None,
                    error: Some(e.to_string()),
                });
            }
        }
    }
    drop(out);
    if g.json {
        print_json(&lines);
    }
    if ok {
        Ok(())
    } else {
        Err(Failure)
    }
}

fn cmd_selftest(g: &Global, params: &HfParams, sweep: bool) -> Outcome {
    if sweep {
        let report = reconciliation_sweep(params);
        if g.json {
            print_json(&report);
        } else {
            print!("{}", report.to_text());
        }
        return if report.unique_match().is_some() {
            Ok(())
        } else {
            Err(Failure)
        };
    }
    let report = self_test(params);
    if g.json {
        print_json(&report);
    } else {
        for c in &report.checks {
            let got = match (&c.actual, &c.error) {
                (Some(d), _) => d.format(g.upper, g.grouped),
                (None, Some(e)) => format!("error: {e}"),
                (None, None) => "-".into(),
            };
            println!(
                "{:<4} {}\n     expected {}\n     got      {}",
                c.input,
                if c.pass { "ok" } else { "MISMATCH" },
                c.expected.format(g.upper, g.grouped),
                got
            );
        }
        println!("{}/{} vectors pass", report.passed(), report.checks.len());
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure)
    }
}

fn cmd_avalanche(
    g: &Global,
    params: &HfParams,
    input: Option<PathBuf>,
    seed: Option<u64>,
    zero: bool,
) -> Outcome {
    let message = match (input, zero) {
        (Some(path), _) => {
            std::fs::read(&path).map_err(|e| fail(format!("{}: {e}", path.display())))?
        }
        (None, true) => vec![0u8; analysis::AVALANCHE_INPUT_BYTES],
        (None, false) => analysis::default_input(seed.unwrap_or(analysis::DEFAULT_SEED)).to_vec(),
    };
    let report = analysis::avalanche(&message, params).map_err(fail)?;
    let in_band = |m: f64, (lo, hi): (f64, f64)| (lo..=hi).contains(&m);
    let pass = in_band(report.digest_summary.mean, AVALANCHE_MEAN)
        && report
            .word_summaries
            .iter()
            .all(|s| in_band(s.mean, AVALANCHE_WORD_MEAN));
    if g.json {
        print_json(&report);
    } else {
        print!("{}", report.to_text());
        println!(
            "\nmean digest distance {:.2} in [{}, {}], word means in [{}, {}]: {}",
            report.digest_summary.mean,
            AVALANCHE_MEAN.0,
            AVALANCHE_MEAN.1,
            AVALANCHE_WORD_MEAN.0,
            AVALANCHE_WORD_MEAN.1,
            if pass { "pass" } else { "FAIL" }
        );
    }
    if pass {
        Ok(())
    } else {
        Err(Failure)
    }
}

#[derive(Serialize)]
struct DiffusionCheck {
    #[serde(flatten)]
    report: analysis::DiffusionReport,
    bound: String,
    pass: bool,
}

fn cmd_diffusion(g: &Global, rule: ExpansionRule) -> Outcome {
    let rounds = match g.rounds {
        Some(r) => vec![r],
        None => vec![Rounds::R32, Rounds::R48, Rounds::R64],
    };
    let checks: Vec<DiffusionCheck> = rounds
        .into_iter()
        .map(|r| {
            let report = analysis::diffusion(r, rule);
            let (bound, pass) = if r == Rounds::R64 {
                (
                    format!(">= {DIFFUSION_FULL_MIN}"),
                    report.min_weight >= DIFFUSION_FULL_MIN,
                )
            } else {
                (
                    format!("< {DIFFUSION_REDUCED_MAX}"),
                    report.min_weight < DIFFUSION_REDUCED_MAX,
                )
            };
            DiffusionCheck {
                report,
                bound,
                pass,
            }
        })
        .collect();
    let pass = checks.iter().all(|c| c.pass);
    if g.json {
        print_json(&checks);
    } else {
        for c in &checks {
            print!("{}", c.report.to_text());
            println!(
                "min weight {} {}: {}\n",
                c.report.min_weight,
                c.bound,
                if c.pass { "pass" } else { "FAIL" }
            );
        }
    }
    if pass {
        Ok(())
    } else {
        Err(Failure)
    }
}

fn cmd_bench(
    g: &Global,
    params: &HfParams,
    system: &PolynomialSystem,
    sizes: Option<Vec<f64>>,
    oracle: bool,
) -> Outcome {
    let mut options = BenchOptions {
        include_oracle: oracle,
        ..BenchOptions::default()
    };
    if let Some(mb) = sizes {
        if let Some(bad) = mb.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(fail(format!("invalid size {bad}")));
        }
        options.sizes = mb.into_iter().map(analysis::mb_to_bytes).collect();
    }
    let report = analysis::bench(&options, system, params).map_err(fail)?;
    if g.json {
        print_json(&report);
    } else {
        print!("{}", report.to_text());
    }
    if report.entries.iter().all(|e| e.digests_agree) {
        Ok(())
    } else {
        Err(fail("compiled and oracle digests differ"))
    }
}

#[derive(Serialize)]
struct PolyEval {
    input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<u32>,
    value: String,
}

fn cmd_poly(
    g: &Global,
    system: &PolynomialSystem,
    index: Option<u32>,
    eval: Option<u64>,
    stats: bool,
) -> Outcome {
    let poly = index.map(|k| {
        system
            .get(k as usize)
            .expect("index validated by the parser")
    });
    match (poly, eval, stats) {
        (poly, Some(x), _) => {
            let value = match poly {
                Some(p) => u8::from(p.eval(x)).to_string(),
                None => format!("{:08x}", system.eval_oracle(x)),
            };
            if g.json {
                print_json(&PolyEval {
                    input: format!("{x:016x}"),
                    index,
                    value,
                });
            } else {
                println!("{value}");
            }
        }
        (Some(p), None, true) => {
            if g.json {
                print_json(&p.stats());
            } else {
                let s = p.stats();
                println!(
                    "y_{{{}}}: {} terms ({} quadratic, {} linear, {} constant)",
                    p.index(),
                    s.terms,
                    s.quadratic,
                    s.linear,
                    s.constant
                );
            }
        }
        (None, None, true) => {
            let audit = system.audit();
            if g.json {
                print_json(&audit);
            } else {
                println!(
                    "{:>4} {:>6} {:>6} {:>6} {:>6}",
                    "k", "terms", "quad", "lin", "const"
                );
                for a in &audit.polynomials {
                    println!(
                        "{:>4} {:>6} {:>6} {:>6} {:>6}",
                        a.index, a.stats.terms, a.stats.quadratic, a.stats.linear, a.stats.constant
                    );
                }
                println!("total {}", audit.total_terms());
            }
        }
        (Some(p), None, false) => {
            if g.json {
                print_json(&serde_json::json!({ "index": p.index(), "polynomial": p.to_string() }));
            } else {
                println!("{p}");
            }
        }
        (None, None, false) => {
            for p in system.polynomials() {
                println!("{p}");
            }
        }
    }
    Ok(())
}
