//! Command-line front end: reads a map-spec file, runs one analysis and
//! emits a JSON report whose exit code encodes the verdict.

pub mod commands;
pub mod dot;
pub mod spec_file;

use std::path::PathBuf;

use clap::Parser;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub use commands::{Command, Failure, Outcome, Params};
pub use spec_file::MapSpecFile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_INCOMPLETE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "padyn", version, about = "Exact p-adic dynamics reports")]
pub struct Cli {
    pub command: Command,
    /// Map-spec JSON file.
    pub input: PathBuf,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub kmax: Option<u32>,
    #[arg(long)]
    pub period_max: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also write the DOT rendering here (sigma and dot only).
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Also write the report here.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

pub struct Execution {
    /// Pretty-printed report, newline terminated.
    pub report: String,
    pub exit_code: i32,
    pub dot: Option<String>,
}

fn error_json(kind: &str, message: String) -> Value {
    json!({ "kind": kind, "message": message })
}

fn error_kind(e: &padyn::Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(['(', ' ', '{']).next().unwrap_or("Error").to_string()
}

/// Runs one command on the raw bytes of an input file.
pub fn execute(cmd: Command, input: &[u8], flags: &Params) -> Execution {
    let digest = hex::encode(Sha256::digest(input));
    let mut report = json!({
        "command": cmd.name(),
        "input_sha256": digest,
        "version": env!("CARGO_PKG_VERSION"),
        "result": null,
        "certificate": null,
        "error": null,
    });
    let parsed = std::str::from_utf8(input)
        .map_err(|e| e.to_string())
        .and_then(MapSpecFile::parse);
    let (code, dot) = match parsed {
        Err(msg) => {
            report["error"] = error_json("ParseError", msg);
            (EXIT_PARSE, None)
        }
        Ok(file) => {
            let params = Params {
                depth: flags.depth.or(file.depth),
                k_max: flags.k_max.or(file.k_max),
                period_max: flags.period_max.or(file.period_max),
                samples: flags.samples.or(file.samples),
                seed: flags.seed.or(file.seed),
            };
            report["parameters"] = json!({
                "depth": params.depth,
                "k_max": params.k_max,
                "period_max": params.period_max,
                "samples": params.samples,
                "seed": params.seed,
            });
            match commands::run(cmd, &file, &params) {
                Ok(out) => {
                    report["result"] = out.result;
                    report["certificate"] = json!(out.certificate);
                    (if out.incomplete { EXIT_INCOMPLETE } else { EXIT_OK }, out.dot)
                }
                Err(Failure::Parse(msg)) => {
                    report["error"] = error_json("ParseError", msg);
                    (EXIT_PARSE, None)
                }
                Err(Failure::Unsupported(e)) => {
                    report["error"] = error_json(&error_kind(&e), e.to_string());
                    (EXIT_UNSUPPORTED, None)
                }
            }
        }
    };
    report["exit_code"] = json!(code);
    let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
    text.push('\n');
    Execution { report: text, exit_code: code, dot }
}

impl Cli {
    pub fn params(&self) -> Params {
        Params {
            depth: self.depth,
            k_max: self.kmax,
            period_max: self.period_max,
            samples: self.samples,
            seed: self.seed,
        }
    }
}
