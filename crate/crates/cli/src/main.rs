//! `qmarginal`: spectra of marginals, inequality catalogs, Schubert
//! coefficients, cubicle edges, plethysm and sampling campaigns.
//!
//! Every result is one JSON object per line carrying `"schema": 1` and a
//! `"kind"`. Exit codes: 0 success, 1 violation or failed search, 2 usage
//! or input error.

mod commands;
mod state;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "qmarginal", version, about = "Spectral constraints for quantum marginals")]
struct Cli {
    /// Worker threads for sampling campaigns.
    #[arg(long, global = true, env = "QMP_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Marginal spectra of a state file (`-` reads stdin).
    Reduce {
        #[arg(long)]
        state: PathBuf,
    },
    /// Evaluate an inequality family on spectra.
    Check {
        #[arg(long)]
        family: String,
        /// One site spectrum, comma separated; repeat per site.
        #[arg(long, allow_hyphen_values = true)]
        spectrum: Vec<String>,
        /// Global spectrum for mixed systems.
        #[arg(long)]
        global: Option<String>,
        /// Spectra record written by `reduce` (`-` reads stdin).
        #[arg(long, conflicts_with_all = ["spectrum", "global"])]
        input: Option<PathBuf>,
        #[arg(long)]
        system: Option<String>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Schubert coefficient of site permutations and `w` at an edge.
    Coeff {
        /// Site permutation, e.g. `21` or `2,1,3`; repeat per site.
        #[arg(long = "perm", required = true)]
        perms: Vec<String>,
        #[arg(long)]
        w: String,
        /// Test spectra, sites separated by `;`, entries by `,` (rationals allowed).
        #[arg(long, allow_hyphen_values = true)]
        edge: String,
        /// Particle number: treat the single site as `∧ⁿ` of its length.
        #[arg(long)]
        particles: Option<usize>,
    },
    /// Extremal edges of the cubicle arrangement.
    Edges {
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = qmarginal::chamber::DEFAULT_MAX_DIM)]
        max_dim: usize,
    },
    /// Inequalities generated from an edge, or from every edge.
    Generate {
        #[arg(long)]
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        edge: Option<String>,
        /// `one`, `odd` or `nonzero`.
        #[arg(long, default_value = "one")]
        filter: String,
        #[arg(long, default_value_t = 6)]
        max_length: usize,
        /// Qubit-array rule instead of coefficients: `pruned`, `all` or `none`.
        #[arg(long)]
        qubit_rule: Option<String>,
        #[arg(long, default_value_t = qmarginal::chamber::DEFAULT_MAX_DIM)]
        max_dim: usize,
    },
    /// Irreducible components of Sᵐ(∧ⁿCʳ).
    Plethysm {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: u32,
    },
    /// Hull of the normalized diagrams of Sᵐ(∧ⁿCʳ), m = 1..M.
    Hull {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        n: usize,
        #[arg(short = 'M', long = "max-m")]
        max_m: u32,
    },
    /// Sampling campaign for a family, or isospectrality with `--formats`.
    Verify {
        #[arg(long, required_unless_present = "formats")]
        family: Option<String>,
        #[arg(long, required_unless_present = "formats")]
        system: Option<String>,
        /// Bipartite formats such as `2x2,2x3`.
        #[arg(long, conflicts_with_all = ["family", "system"])]
        formats: Option<String>,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = qmarginal::verify::DEFAULT_TOLERANCE)]
        tol: f64,
        /// Fixed global spectrum for mixed systems.
        #[arg(long)]
        global: Option<String>,
    },
    /// Compare two families on shared random points.
    Equiv {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        system: Option<String>,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Search for a pure state with the given site spectra.
    Witness {
        #[arg(long)]
        system: String,
        /// One target site spectrum; repeat per site.
        #[arg(long, required = true)]
        target: Vec<String>,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 2000)]
        iters: usize,
        /// Write the state file here on success.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Collects output records for one invocation.
#[derive(Default)]
pub struct Emitter {
    lines: Vec<String>,
}

impl Emitter {
    pub fn emit(&mut self, kind: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("records serialize");
        let mut record = json!({ "schema": SCHEMA, "kind": kind });
        match v {
            Value::Object(map) => record.as_object_mut().unwrap().extend(map),
            other => {
                record["value"] = other;
            }
        }
        self.lines.push(record.to_string());
    }

    fn flush(&self) {
        let mut out = std::io::stdout().lock();
        for l in &self.lines {
            let _ = writeln!(out, "{l}");
        }
    }
}

pub enum Failure {
    Usage(String),
    Lib(qmarginal::Error),
}

impl From<qmarginal::Error> for Failure {
    fn from(e: qmarginal::Error) -> Self {
        Failure::Lib(e)
    }
}

fn error_record(out: &mut Emitter, f: &Failure) {
    let (error, message) = match f {
        Failure::Usage(m) => ("usage".to_string(), m.clone()),
        Failure::Lib(e) => (format!("{e:?}").split(['(', ' ', '{']).next().unwrap_or("error").to_string(), e.to_string()),
    };
    out.emit("error", json!({ "error": error, "message": message }));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let mut out = Emitter::default();
            error_record(&mut out, &Failure::Usage(e.to_string().trim().to_string()));
            out.flush();
            return ExitCode::from(2);
        }
    };
    let mut out = Emitter::default();
    if let Some(j) = cli.jobs {
        if j == 0 || rayon::ThreadPoolBuilder::new().num_threads(j).build_global().is_err() {
            error_record(&mut out, &Failure::Usage(format!("invalid job count {j}")));
            out.flush();
            return ExitCode::from(2);
        }
    }
    let code = match commands::run(cli.command, &mut out) {
        Ok(ok) => u8::from(!ok),
        Err(f) => {
            error_record(&mut out, &f);
            2
        }
    };
    out.flush();
    ExitCode::from(code)
}
