use serde::Serialize;

use super::{hash, AmbiguityConfig, Digest, HfParams};

/// Published reference digests.
pub const TEST_VECTORS: [(&str, &str); 3] = [
    (
        "a",
        "04EAF5F6B215D974B827FCC25ECA45C3031524E8472617D1C14D9C856ACD1DC3",
    ),
    (
        "ab",
        "F2DD83C834E96291E39040B9BCD3E624BA01846E0D5E5083492DC4BFC0720235",
    ),
    (
        "abc",
        "E9582019216033AA346E8D4611D131A7D0635A5E92D5B13D2DC481B8836774B6",
    ),
];

fn expected(hex: &str) -> Digest {
    hex.parse().expect("reference digest is well-formed")
}

#[derive(Debug, Clone, Serialize)]
pub struct VectorCheck {
    pub input: String,
    pub expected: Digest,
    pub actual: Option<Digest>,
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelfTestReport {
    pub layout: AmbiguityConfig,
    pub rounds: u32,
    pub checks: Vec<VectorCheck>,
}

impl SelfTestReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.checks.len()
    }
}

/// Hashes the three reference inputs under `params` and compares.
pub fn self_test(params: &HfParams) -> SelfTestReport {
    let checks = TEST_VECTORS
        .iter()
        .map(|(input, hex)| {
            let expected = expected(hex);
            let (actual, error) = match hash(input.as_bytes(), params) {
                Ok(d) => (Some(d), None),
                Err(e) => (None, Some(e.to_string())),
            };
            VectorCheck {
                input: input.to_string(),
                expected,
                pass: actual == Some(expected),
                actual,
                error,
            }
        })
        .collect();
    SelfTestReport {
        layout: params.layout,
        rounds: params.rounds.into(),
        checks,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepEntry {
    pub layout: AmbiguityConfig,
    pub report: SelfTestReport,
}

/// Outcome of hashing the reference inputs under every [`AmbiguityConfig`].
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub entries: Vec<SweepEntry>,
    /// Layouts that reproduce all three reference digests.
    pub matching: Vec<AmbiguityConfig>,
    /// The layout the library uses.
    pub canonical: AmbiguityConfig,
}

impl SweepReport {
    pub fn unique_match(&self) -> Option<AmbiguityConfig> {
        match self.matching[..] {
            [only] => Some(only),
            _ => None,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for entry in &self.entries {
            out.push_str(&format!(
                "{}  {}/{}\n",
                entry.layout,
                entry.report.passed(),
                entry.report.checks.len()
            ));
            for c in &entry.report.checks {
                let got = match (&c.actual, &c.error) {
                    (Some(d), _) => d.to_hex(),
                    (None, Some(e)) => format!("error: {e}"),
                    (None, None) => String::from("-"),
                };
                out.push_str(&format!("    {:<4} {}\n", c.input, got));
            }
        }
        out.push_str(&format!(
            "matching layouts: {}\ncanonical: {}\n",
            self.matching.len(),
            self.canonical
        ));
        out
    }
}

/// Enumerates all 16 layouts with the other parameters taken from `params`.
pub fn reconciliation_sweep(params: &HfParams) -> SweepReport {
    let entries: Vec<SweepEntry> = AmbiguityConfig::all()
        .into_iter()
        .map(|layout| SweepEntry {
            layout,
            report: self_test(&params.clone().layout(layout)),
        })
        .collect();
    let matching = entries
        .iter()
        .filter(|e| e.report.all_passed())
        .map(|e| e.layout)
        .collect();
    SweepReport {
        entries,
        matching,
        canonical: AmbiguityConfig::CANONICAL,
    }
}
