//! `orbitcrit` command-line front end.

use clap::{Parser, Subcommand};
use orbitcrit::driver::{naive_system, OrbitSolution};
use orbitcrit::io::{OutputFile, ProblemFile};
use orbitcrit::oracle::brute_force_oracle;
use orbitcrit::{
    bounds_report, critical_points_per_orbit, naive_critical_points, verify_membership, BoundsReport, Error, Fp,
    ProblemInstance, SolveOptions,
};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "orbitcrit", version, about = "Critical points of symmetric polynomial maps, orbit by orbit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file and print the symmetric representation.
    Solve {
        file: PathBuf,
        /// Solve the unreduced system in the original variables instead.
        #[arg(long)]
        naive: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Solve partitions that carry no isolated point anyway.
        #[arg(long)]
        no_prune: bool,
    },
    /// Degree bounds for n variables, s equations and degree d.
    Bounds {
        n: usize,
        d: u32,
        s: usize,
        /// Print an aligned text table instead of JSON.
        #[arg(long)]
        table: bool,
    },
    /// Check a solver output against its problem file.
    Verify { output: PathBuf, input: PathBuf },
    /// Enumerate the critical points over a small prime field.
    Oracle { file: PathBuf },
    /// Print a random symmetric problem file.
    Gen {
        n: usize,
        s: usize,
        d: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 65521)]
        prime: u32,
    },
}

enum Failure {
    Domain(Error),
    Io(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

const EXIT_VERIFY: u8 = 2;
const EXIT_IO: u8 = 20;
const EXIT_USAGE: u8 = 64;

/// One code per error kind; 2 is reserved for failed verification.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::PositiveDimensional { .. } => 3,
        Error::Parse { .. } => 4,
        Error::InvalidInstance(_) => 5,
        Error::NotInvariant(_) => 6,
        Error::SeparationFailure { .. } => 7,
        Error::InvalidModulus(_) => 8,
        Error::ModulusTooSmall { .. } => 9,
        Error::InvalidPartition(_) => 10,
        Error::Dimension(_) => 11,
        Error::RingMismatch(_) => 12,
        Error::NotEquivariant(_) => 13,
        Error::IrrationalRoot(_) => 14,
        Error::ZeroPolynomial => 15,
        Error::ZeroInverse => 16,
        Error::NotDivisible { .. } => 17,
        Error::Internal(_) => 18,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_problem(path: &Path) -> Result<ProblemInstance, Failure> {
    Ok(ProblemFile::from_json(&read(path)?)?.to_instance()?)
}

fn emit(value: &impl serde::Serialize, out: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    match out {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => print_out(&text),
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn print_out(text: &str) -> Result<(), Failure> {
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Io(format!("stdout: {e}"))),
        _ => Ok(()),
    }
}

fn bounds_json(r: &BoundsReport) -> Value {
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            json!({
                "partition": row.partition,
                "length": row.length,
                "w": row.w.to_string(),
                "c": row.c.to_string(),
                "c_ceil": row.c_ceil.to_string(),
                "e": row.e.to_string(),
                "kappa": row.kappa.to_string(),
                "pruned": row.pruned.map(|p| p.as_str()),
            })
        })
        .collect();
    json!({
        "n": r.n, "d": r.d, "s": r.s,
        "rows": rows,
        "c": r.c_global.to_string(),
        "e": r.e_global.to_string(),
        "c_naive": r.c_naive.to_string(),
        "ceil_of_sum": r.ceil_of_sum.to_string(),
        "sum_of_ceils": r.sum_of_ceils.to_string(),
    })
}

fn bounds_table(r: &BoundsReport) -> String {
    let mut s = format!("n = {}, d = {}, s = {}\n", r.n, r.d, r.s);
    s += &format!("{:<16} {:>3} {:>6} {:>14} {:>8} {:>10}  pruned\n", "partition", "l", "w", "c", "ceil c", "kappa");
    for row in &r.rows {
        s += &format!(
            "{:<16} {:>3} {:>6} {:>14} {:>8} {:>10}  {}\n",
            row.partition.to_string(),
            row.length,
            row.w,
            row.c.to_string(),
            row.c_ceil,
            row.kappa,
            row.pruned.map_or("", |p| p.as_str())
        );
    }
    s += &format!("c = {}  c_naive = {}  e = {}\n", r.c_global, r.c_naive, r.e_global);
    s += &format!("ceil(sum c) = {}  sum ceil(c) = {}", r.ceil_of_sum, r.sum_of_ceils);
    s
}

fn solve(file: &Path, naive: bool, seed: u64, out: Option<&Path>, prune: bool) -> Result<(), Failure> {
    let inst = load_problem(file)?;
    let prime = inst.field().p();
    let output = if naive {
        OutputFile::from_naive(&naive_critical_points(&inst, seed)?, seed, prime)
    } else {
        let sol: OrbitSolution = critical_points_per_orbit(&inst, seed, SolveOptions { prune })?;
        OutputFile::from_solution(&sol, seed, prime)
    };
    emit(&output, out)
}

fn verify(output: &Path, input: &Path) -> Result<(), Failure> {
    let inst = load_problem(input)?;
    let out = OutputFile::from_json(&read(output)?)?;
    if out.meta.prime != inst.field().p() {
        return Err(Failure::Verification(format!("output prime {} differs from input prime {}", out.meta.prime, inst.field().p())));
    }
    let bad = |e: Error| Failure::Verification(e.to_string());
    if let Some(naive) = &out.naive {
        let f = inst.field();
        let r = naive.to_param(f).map_err(bad)?;
        let ok = r.nvars() == inst.n() && r.satisfies(f, &naive_system(&inst)?);
        emit(&json!({ "ok": ok, "naive": { "degree": r.degree(), "equations": ok } }), None)?;
        return if ok { Ok(()) } else { Err(Failure::Verification("naive parametrization fails the system".into())) };
    }
    let rep = out.representation().map_err(bad)?;
    let checks = verify_membership(&rep, inst.f(), inst.phi()).map_err(bad)?;
    let ok = checks.iter().all(|c| c.passed());
    let entries: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "partition": c.partition, "invariants": c.invariants, "equations": c.equations,
                "minors": c.minors, "exact_type": c.exact_type,
            })
        })
        .collect();
    emit(&json!({ "ok": ok, "entries": entries }), None)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification("some entries failed".into()))
    }
}

fn oracle(file: &Path) -> Result<(), Failure> {
    let inst = load_problem(file)?;
    if inst.field().p() > 101 || inst.n() > 4 {
        return Err(Error::InvalidInstance("the oracle needs p ≤ 101 and n ≤ 4".into()).into());
    }
    let o = brute_force_oracle(&inst)?;
    let by_type: Vec<Value> = o.by_type.iter().map(|(l, pts)| json!({ "partition": l, "points": pts })).collect();
    emit(&json!({ "prime": inst.field().p(), "count": o.points.len(), "by_type": by_type }), None)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve { file, naive, seed, out, no_prune } => solve(&file, naive, seed, out.as_deref(), !no_prune),
        Command::Bounds { n, d, s, table } => {
            if d < 2 || s == 0 || s >= n {
                return Err(Error::InvalidInstance("bounds need d ≥ 2 and 1 ≤ s < n".into()).into());
            }
            let r = bounds_report(n, d, s);
            if table {
                print_out(&bounds_table(&r))
            } else {
                emit(&bounds_json(&r), None)
            }
        }
        Command::Verify { output, input } => verify(&output, &input),
        Command::Oracle { file } => oracle(&file),
        Command::Gen { n, s, d, seed, prime } => {
            let inst = ProblemInstance::random(Fp::new(prime)?, n, s, d, seed)?;
            emit(&ProblemFile::from_instance(&inst), None)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_VERIFY)
        }
    }
}
