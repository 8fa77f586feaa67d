// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! `ecadd`: synthesize, tabulate and verify fixed-point addition circuits.
//!
//! Exit codes: 0 success, 1 invalid input, 2 verification failure,
//! 3 internal invariant violation (including a violated resource bound).

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ecadd_core::ecoracle::{AffinePoint, Curve};
use ecadd_core::gf2field::{FieldElem, IrreduciblePoly};
use ecadd_core::pointadd::{fault_gate, synth_point_add, MultiplierVariant, PointAddition, SynthesisOptions};
use ecadd_core::presets::resolve_poly;
use ecadd_core::qcformat::write_qc;
use ecadd_core::report::JsonReport;
use ecadd_core::tables::{nist_table, table_row, TableKind, TableText};
use ecadd_core::verify::{verify_point_add, VerifyMode, MAX_VERIFY_DEGREE};
use ecadd_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "ecadd",
    version,
    about = "Reversible circuits for fixed-point addition on binary elliptic curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write `<out>.qc` and `<out>.report.json` for one curve and fixed point.
    Synth(SynthArgs),
    /// Print CNOT count and depth of the squaring or square-root map.
    Tables(TablesArgs),
    /// Simulate the circuit and compare it with the curve arithmetic.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Reduction polynomial such as "1+x+x^3", or a preset name like B233.
    #[arg(long)]
    poly: String,
    /// Curve coefficient a2, as 0x-hex or polynomial text.
    #[arg(long, default_value = "0x0")]
    a2: String,
    /// Curve coefficient a6 (nonzero).
    #[arg(long)]
    a6: String,
    /// Fixed point x-coordinate; with --y2 omitted too, a random point is used.
    #[arg(long, requires = "y2")]
    x2: Option<String>,
    #[arg(long, requires = "x2")]
    y2: Option<String>,
    /// Accept a fixed point that is not on the curve.
    #[arg(long)]
    allow_off_curve: bool,
    /// Let the first multiplier assume a zero accumulator.
    #[arg(long)]
    zero_accumulator: bool,
    #[arg(long, value_enum, default_value_t = Multiplier::ShiftAdd)]
    multiplier: Multiplier,
    /// Seed for every random choice.
    #[arg(long, env = "ECADD_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Multiplier {
    ShiftAdd,
}

#[derive(Args)]
struct SynthArgs {
    #[command(flatten)]
    job: JobArgs,
    /// Replace Toffoli gates by Clifford+T in the written circuit.
    #[arg(long)]
    decompose: bool,
    /// Write one flat gate block instead of named subcircuits.
    #[arg(long)]
    flat: bool,
    /// Output path; a trailing `.qc` is optional.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Squaring,
    Sqrt,
}

#[derive(Args)]
struct TablesArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// The five NIST binary-field polynomials.
    #[arg(long)]
    nist: bool,
    /// Additional polynomials (repeatable).
    #[arg(long)]
    poly: Vec<String>,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    job: JobArgs,
    /// Enumerate every admissible input.
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    /// Number of random inputs.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Append a NOT on the lowest X3 wire before simulating.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

enum Failure {
    Invalid(String),
    Verification(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BoundViolated { .. }
            | Error::IllNestedGroup(_)
            | Error::UnknownWire(_)
            | Error::DuplicateOperand
            | Error::RegisterOverlap
            | Error::UnsupportedGate(_) => Failure::Internal(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

fn io_err(path: &Path, e: impl Display) -> Failure {
    Failure::Invalid(format!("{}: {e}", path.display()))
}

fn elem(field: &IrreduciblePoly, what: &str, text: &str) -> Result<FieldElem, Failure> {
    field
        .parse_elem(text)
        .map_err(|e| Failure::Invalid(format!("--{what}: {e}")))
}

struct Job {
    curve: Curve,
    p2: AffinePoint,
    opts: SynthesisOptions,
    rng: ChaCha8Rng,
}

impl JobArgs {
    fn resolve(&self) -> Result<Job, Failure> {
        let field = resolve_poly(&self.poly).map_err(|e| Failure::Invalid(format!("--poly: {e}")))?;
        let curve = Curve::new(elem(&field, "a2", &self.a2)?, elem(&field, "a6", &self.a6)?)?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let p2 = match (&self.x2, &self.y2) {
            (Some(x), Some(y)) => {
                let (x, y) = (elem(&field, "x2", x)?, elem(&field, "y2", y)?);
                if self.allow_off_curve {
                    AffinePoint::new_unchecked(x, y)?
                } else {
                    curve.point(x, y)?
                }
            }
            _ => loop {
                let p = curve.random_point(&mut rng)?;
                if !p.is_infinity() {
                    break p;
                }
            },
        };
        let opts = SynthesisOptions {
            allow_off_curve: self.allow_off_curve,
            zero_accumulator_shortcut: self.zero_accumulator,
            multiplier: match self.multiplier {
                Multiplier::ShiftAdd => MultiplierVariant::ShiftAdd,
            },
            ..Default::default()
        };
        Ok(Job { curve, p2, opts, rng })
    }
}

fn output_paths(out: &Path) -> (PathBuf, PathBuf) {
    let stem = if out.extension().is_some_and(|e| e == "qc") {
        out.with_extension("")
    } else {
        out.to_path_buf()
    };
    let with = |suffix: &str| {
        let mut s = stem.clone().into_os_string();
        s.push(suffix);
        PathBuf::from(s)
    };
    (with(".qc"), with(".report.json"))
}

fn synth(args: &SynthArgs) -> Result<(), Failure> {
    let job = args.job.resolve()?;
    let opts = SynthesisOptions {
        decompose_toffoli: args.decompose,
        ..job.opts
    };
    let pa = synth_point_add(&job.curve, &job.p2, &opts)?;
    let report = JsonReport::new(&job.curve, &job.p2, &pa, args.decompose);
    let qc = write_qc(&pa.circuit, !args.flat)?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| Failure::Internal(e.to_string()))? + "\n";

    let (qc_path, json_path) = output_paths(&args.out);
    std::fs::write(&qc_path, qc).map_err(|e| io_err(&qc_path, e))?;
    std::fs::write(&json_path, json).map_err(|e| io_err(&json_path, e))?;
    print_summary(&pa);
    println!("wrote {} and {}", qc_path.display(), json_path.display());
    pa.check_bounds()?;
    Ok(())
}

fn print_summary(pa: &PointAddition) {
    let r = &pa.report;
    let ct = &pa.clifford_t;
    println!(
        "n={} width={} gates={} toffoli={} cnot={} depth={}",
        pa.n, r.width, r.total_gates, r.toffoli_count, r.cnot_count, r.depth
    );
    println!(
        "clifford+t: gates={} t_count={} t_depth={} depth={}",
        ct.total_gates, ct.t_count, ct.t_depth, ct.depth
    );
    for (name, b) in &r.bounds {
        let rel = if b.exact { "==" } else { "<=" };
        let mark = if b.holds() { "ok" } else { "VIOLATED" };
        println!("bound {name}: {} {rel} {} {mark}", b.achieved, b.bound);
    }
}

fn tables(args: &TablesArgs) -> Result<(), Failure> {
    if !args.nist && args.poly.is_empty() {
        return Err(Failure::Invalid("pass --nist or at least one --poly".into()));
    }
    let kind = match args.kind {
        Kind::Squaring => TableKind::Squaring,
        Kind::Sqrt => TableKind::Sqrt,
    };
    let mut rows = if args.nist { nist_table(kind)? } else { Vec::new() };
    for text in &args.poly {
        let p = resolve_poly(text)?;
        rows.push(table_row(kind, text.trim(), &p)?);
    }
    if args.json {
        let json = serde_json::to_string_pretty(&rows).map_err(|e| Failure::Internal(e.to_string()))?;
        println!("{json}");
    } else {
        print!("{}", TableText(&rows));
    }
    Ok(())
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    let mut job = args.job.resolve()?;
    let n = job.curve.field().degree();
    if n > MAX_VERIFY_DEGREE {
        return Err(Failure::Invalid(format!(
            "verification simulates 11n wires and is capped at n <= {MAX_VERIFY_DEGREE}, got n = {n}"
        )));
    }
    let mut pa = synth_point_add(&job.curve, &job.p2, &job.opts)?;
    if args.inject_fault {
        let g = fault_gate(&pa);
        pa.circuit.append(g)?;
    }
    let mode = if args.exhaustive {
        VerifyMode::Exhaustive
    } else {
        VerifyMode::Samples(args.samples)
    };
    let out = verify_point_add(&job.curve, &job.p2, &pa, mode, &mut job.rng)?;
    let (x2, y2) = job.p2.coords().expect("finite fixed point");
    println!("fixed point: ({}, {})", x2.to_hex(), y2.to_hex());
    println!("inputs checked: {} (digest {:016x})", out.checked, out.input_digest);
    match out.failure {
        None => {
            println!("PASS");
            Ok(())
        }
        Some(cx) => Err(Failure::Verification(format!("counterexample\n{cx}"))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Synth(a) => synth(a),
        Command::Tables(a) => tables(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(m)) => {
            println!("FAIL: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}
