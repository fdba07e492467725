//! Timing harness comparing the fast iteration, the plain iteration and the
//! classical comparator on seeded random matrices.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::classical::classical_comparator;
use super::instances::split_squarefree;
use crate::eigen::{block_schur, simple_schur, verify_similarity, SchurResult};
use crate::error::{PadicError, Result};
use crate::matrix::{random_matrix_with, PadicMatrix};
use crate::padic::{counter, PadicContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Fast,
    Simple,
    Classical,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Fast, Method::Simple, Method::Classical];

    pub fn name(self) -> &'static str {
        match self {
            Method::Fast => "fast",
            Method::Simple => "simple",
            Method::Classical => "classical",
        }
    }

    pub fn run(self, m: &PadicMatrix) -> Result<SchurResult> {
        match self {
            Method::Fast => block_schur(m),
            Method::Simple => simple_schur(m),
            Method::Classical => classical_comparator(m),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = PadicError;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| PadicError::InvalidArgument(format!("unknown method `{s}`")))
    }
}

/// Which random matrices to draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Instances {
    /// Entries uniform in `[0, p^N)`.
    Uniform,
    /// Residue characteristic polynomial square-free and split.
    Split,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub p: u32,
    pub prec: i64,
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub methods: Vec<Method>,
    pub instances: Instances,
}

impl BenchConfig {
    fn validate(&self) -> Result<PadicContext> {
        if self.sizes.is_empty() || self.trials == 0 || self.methods.is_empty() {
            return Err(PadicError::InvalidArgument(
                "benchmark needs at least one size, one trial and one method".into(),
            ));
        }
        PadicContext::new(self.p, self.prec)
    }

    fn trial_matrix(&self, ctx: PadicContext, n: usize, trial: usize) -> Result<PadicMatrix> {
        let stream = (n as u64) << 32 | trial as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        match self.instances {
            Instances::Uniform => Ok(random_matrix_with(ctx, n, n, &mut rng)),
            Instances::Split => split_squarefree(ctx, n, &mut rng),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Failed,
    /// The method returned an error; the message is kept.
    Error(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        *self == Verdict::Verified
    }

    fn csv(&self) -> &'static str {
        match self {
            Verdict::Verified => "true",
            Verdict::Failed => "false",
            Verdict::Error(_) => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub method: Method,
    pub n: usize,
    pub trial: usize,
    pub rounds: usize,
    pub ops: u64,
    pub verdict: Verdict,
    pub seconds: f64,
}

/// Aggregate over the trials of one `(method, n)` pair.
#[derive(Clone, Debug)]
pub struct BenchCell {
    pub method: Method,
    pub n: usize,
    pub mean_seconds: f64,
    pub total_rounds: usize,
    pub total_ops: u64,
    pub passed: usize,
    pub trials: usize,
}

impl BenchCell {
    pub fn pass_rate(&self) -> f64 {
        self.passed as f64 / self.trials as f64
    }
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn cells(&self) -> Vec<BenchCell> {
        let mut out: Vec<BenchCell> = Vec::new();
        for r in &self.rows {
            let cell = match out.iter_mut().find(|c| c.method == r.method && c.n == r.n) {
                Some(c) => c,
                None => {
                    out.push(BenchCell {
                        method: r.method,
                        n: r.n,
                        mean_seconds: 0.0,
                        total_rounds: 0,
                        total_ops: 0,
                        passed: 0,
                        trials: 0,
                    });
                    out.last_mut().unwrap()
                }
            };
            cell.mean_seconds += r.seconds;
            cell.total_rounds += r.rounds;
            cell.total_ops += r.ops;
            cell.passed += usize::from(r.verdict.passed());
            cell.trials += 1;
        }
        for c in &mut out {
            c.mean_seconds /= c.trials as f64;
        }
        out
    }

    pub fn cell(&self, method: Method, n: usize) -> Option<BenchCell> {
        self.cells().into_iter().find(|c| c.method == method && c.n == n)
    }

    /// `method,n,trial,rounds,ops,verified,seconds`
    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,n,trial,rounds,ops,verified,seconds\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{:.6}\n",
                r.method,
                r.n,
                r.trial,
                r.rounds,
                r.ops,
                r.verdict.csv(),
                r.seconds
            ));
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "p = {}, N = {}, {} trials\n{:<10} {:>5} {:>12} {:>10} {:>14} {:>8}\n",
            self.config.p, self.config.prec, self.config.trials, "method", "n", "mean s", "rounds", "ops", "passed"
        );
        for c in self.cells() {
            out.push_str(&format!(
                "{:<10} {:>5} {:>12.6} {:>10} {:>14} {:>4}/{:<3}\n",
                c.method.name(),
                c.n,
                c.mean_seconds,
                c.total_rounds,
                c.total_ops,
                c.passed,
                c.trials
            ));
        }
        for r in &self.rows {
            if let Verdict::Error(e) = &r.verdict {
                out.push_str(&format!("# {} n={} trial {}: {e}\n", r.method, r.n, r.trial));
            }
        }
        out
    }
}

fn judge(m: &PadicMatrix, res: Result<SchurResult>) -> (Verdict, usize) {
    let prec = m.flat_precision();
    match res {
        Ok(r) => match verify_similarity(m, &r.u, &r.t, prec) {
            Ok(true) => (Verdict::Verified, r.rounds),
            Ok(false) => (Verdict::Failed, r.rounds),
            Err(e) => (Verdict::Error(e.to_string()), r.rounds),
        },
        Err(e) => (Verdict::Error(e.to_string()), 0),
    }
}

/// Every trial is verified; timing covers the method only. Each
/// `(method, n)` cell starts with an untimed warm-up run.
pub fn bench_run(cfg: &BenchConfig) -> Result<BenchReport> {
    let ctx = cfg.validate()?;
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        let matrices = (0..cfg.trials)
            .map(|t| cfg.trial_matrix(ctx, n, t))
            .collect::<Result<Vec<_>>>()?;
        for &method in &cfg.methods {
            let _ = method.run(&matrices[0]);
            for (trial, m) in matrices.iter().enumerate() {
                let start = Instant::now();
                let (res, ops) = counter::measure(|| method.run(m));
                let seconds = start.elapsed().as_secs_f64();
                let (verdict, rounds) = judge(m, res);
                rows.push(BenchRow {
                    method,
                    n,
                    trial,
                    rounds,
                    ops,
                    verdict,
                    seconds,
                });
            }
        }
    }
    Ok(BenchReport {
        config: cfg.clone(),
        rows,
    })
}
