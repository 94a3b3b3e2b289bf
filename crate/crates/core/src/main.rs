use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use curvedist::elekes::distance_set;
use curvedist::harness::{analyze_config, io, run_scenario, verify_all, Caps, HarnessError, Mutation, DEFAULT_BUDGET};
use curvedist::symmetry::{find_symmetries_with, SymmetryBudget};

#[derive(Parser)]
#[command(name = "curvedist", version, about = "Exact distinct-distance computations for points on plane curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the seeded property suites.
    Verify {
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Inject a known defect; the suites should then fail.
        #[arg(long, hide = true)]
        mutate_f_sign: bool,
    },
    /// Run a scenario file over its size ladder.
    Scenario {
        file: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Count the distinct distances within a point set on a curve.
    Distances {
        /// A polynomial such as "y - x^2", or a JSON curve object.
        #[arg(long)]
        curve: String,
        /// A JSON array of points, a generator object, or a file holding one.
        #[arg(long)]
        points: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also list the squared distances.
        #[arg(long)]
        list: bool,
    },
    /// List the isometries fixing a curve.
    Symmetries {
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = SymmetryBudget::default().max_degree)]
        max_degree: u32,
    },
    /// Normalize a configuration and report quadruples, incidences and the
    /// partition.
    Elekes {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        caps: CapArgs,
    },
}

#[derive(clap::Args)]
struct CapArgs {
    /// Largest m or n for distance counting.
    #[arg(long, default_value_t = Caps::default().distances)]
    max_distances: usize,
    /// Largest m or n for incidence enumeration and the partition.
    #[arg(long, default_value_t = Caps::default().incidences)]
    max_incidences: usize,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps { distances: self.max_distances, incidences: self.max_incidences }
    }
}

fn read(path: &Path) -> Result<String, HarnessError> {
    fs::read_to_string(path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), HarnessError> {
    fs::write(path, text).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
}

/// JSON if it parses, otherwise the bare text (a polynomial).
fn spec_value(text: &str) -> Result<Value, HarnessError> {
    let text = if Path::new(text).is_file() { read(Path::new(text))? } else { text.to_string() };
    Ok(serde_json::from_str(&text).unwrap_or(Value::String(text.trim().to_string())))
}

fn print(v: &Value) {
    emit(&(serde_json::to_string_pretty(v).expect("values serialize") + "\n"));
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn run(cli: Cli) -> Result<i32, HarnessError> {
    match cli.command {
        Command::Verify { budget, mutate_f_sign } => {
            let report = verify_all(budget, mutate_f_sign.then_some(Mutation::FlipFSign));
            print(&serde_json::to_value(&report).expect("report serializes"));
            Ok(report.exit_code())
        }
        Command::Scenario { file, csv, json, caps } => {
            let s = io::scenario_from_json(&read(&file)?)?;
            let r = run_scenario(&s, &caps.caps())?;
            let text = io::report_to_json(&r);
            match json {
                Some(p) => write(&p, &text)?,
                None => emit(&text),
            }
            if let Some(p) = csv {
                write(&p, &io::report_to_csv(&r)?)?;
            }
            Ok(if r.invariants_hold && r.expectation_passed { 0 } else { 1 })
        }
        Command::Distances { curve, points, seed, list } => {
            let (c, base) = io::curve_from_value(&spec_value(&curve)?)?;
            let s = io::points_from_value(&spec_value(&points)?, &c, base.as_ref(), seed)?;
            let d = distance_set(&s, &s);
            let mut out = json!({"curve": io::curve_to_json(&c), "points": s.len(), "distinct": d.len()});
            if list {
                out["squared_distances"] = d.iter().map(io::scalar_to_json).collect();
            }
            print(&out);
            Ok(0)
        }
        Command::Symmetries { curve, max_degree } => {
            let (c, _) = io::curve_from_value(&spec_value(&curve)?)?;
            let budget = SymmetryBudget { max_degree, ..SymmetryBudget::default() };
            let list = find_symmetries_with(&c, &budget)?;
            print(&json!({"curve": io::curve_to_json(&c), "symmetries": io::symmetries_to_json(&list)}));
            Ok(0)
        }
        Command::Elekes { config, caps } => {
            let (cfg, seed) = io::config_from_json(&read(&config)?)?;
            let caps = caps.caps();
            let big = cfg.m().max(cfg.n());
            if big > caps.distances {
                return Err(HarnessError::Budget { what: "set size", limit: caps.distances, actual: big });
            }
            let out = analyze_config(&cfg, seed, &caps)?;
            let ok = out["cauchy_schwarz"].as_bool() == Some(true) && (out["I"].is_null() || out["I"] == out["|Q|"]);
            print(&out);
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
