//! `qlift`: transpile qubit circuits onto qudits, sample them, and compare against a qubit baseline.
//!
//! Exit codes: 0 success, 1 I/O or other failure, 2 malformed input, 3 infeasible register or
//! mapping, 4 sampled outcome outside the encoded subspace.

use clap::{Args, Parser, Subcommand};
use qudit_lift::io::{self, CircuitFile, DecodedCounts};
use qudit_lift::transpile::{evaluate_mapping, DEFAULT_SEARCH_LIMIT};
use qudit_lift::{
    decode_counts, run, run_qubit, sample, select_mapping, Error, ErrorModel, QubitCircuit,
    TranspileReport,
};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qlift",
    version,
    about = "Qubit-to-qudit transpiler and emulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower a qubit circuit onto a qudit register.
    Transpile(TranspileArgs),
    /// Sample a qubit or qudit circuit.
    Simulate(SimulateArgs),
    /// Compare the best qudit mapping with the qubit baseline.
    Compare(CompareArgs),
}

#[derive(Args)]
struct TranspileArgs {
    #[arg(long)]
    circuit: PathBuf,
    /// Qudit dimensions, e.g. `4,4,3` or `4x4`.
    #[arg(long)]
    dims: String,
    /// Fixed mapping; without it the mapping is searched.
    #[arg(long)]
    mapping: Option<PathBuf>,
    #[arg(long)]
    error_model: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEARCH_LIMIT)]
    search_limit: usize,
    #[arg(long)]
    out_circuit: PathBuf,
    #[arg(long)]
    out_report: PathBuf,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long)]
    shots: u64,
    #[arg(long)]
    seed: u64,
    /// Mapping used to decode qudit outcomes into qubit bit strings.
    #[arg(long)]
    mapping: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long)]
    dims: String,
    #[arg(long)]
    error_model: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEARCH_LIMIT)]
    search_limit: usize,
    /// Print the report as JSON instead of a table.
    #[arg(long)]
    json: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Schema { .. } => 2,
        Error::SupportViolation { .. } => 4,
        e if e.is_infeasible() => 3,
        _ => 1,
    }
}

fn read(path: &Path) -> qudit_lift::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> qudit_lift::Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn parse_dims(text: &str) -> qudit_lift::Result<Vec<usize>> {
    let bad = || {
        Error::schema(
            "--dims",
            format!("expected `d0,d1,...` or `NxD`, got `{text}`"),
        )
    };
    let dims = if let Some((count, d)) = text.split_once(['x', 'X']) {
        let count: usize = count.trim().parse().map_err(|_| bad())?;
        let d: usize = d.trim().parse().map_err(|_| bad())?;
        vec![d; count]
    } else {
        text.split(',')
            .map(|s| s.trim().parse().map_err(|_| bad()))
            .collect::<qudit_lift::Result<Vec<usize>>>()?
    };
    qudit_lift::register::check_dims(&dims).map_err(|e| Error::schema("--dims", e.to_string()))?;
    Ok(dims)
}

fn qubit_circuit(path: &Path) -> qudit_lift::Result<QubitCircuit> {
    match io::parse_circuit(&read(path)?)? {
        CircuitFile::Qubit(c) => Ok(c),
        CircuitFile::Qudit(_) => Err(Error::schema("kind", "expected a qubit circuit")),
    }
}

fn error_model(path: Option<&Path>) -> qudit_lift::Result<ErrorModel> {
    match path {
        Some(p) => io::parse_error_model(&read(p)?),
        None => Ok(ErrorModel::default()),
    }
}

fn transpile(args: &TranspileArgs) -> qudit_lift::Result<()> {
    let c = qubit_circuit(&args.circuit)?;
    let dims = parse_dims(&args.dims)?;
    let em = error_model(args.error_model.as_deref())?;
    let (q, report) = match &args.mapping {
        Some(path) => {
            let m = io::parse_mapping(&read(path)?, &dims)?;
            if m.n() != c.n {
                return Err(Error::schema(
                    "mapping_opt",
                    format!("mapping places {} qubits, circuit has {}", m.n(), c.n),
                ));
            }
            evaluate_mapping(&c, &m, &em)?
        }
        None => {
            let out = select_mapping(&c, &dims, &em, args.search_limit)?;
            (out.circuit, out.report)
        }
    };
    write(&args.out_circuit, &io::qudit_circuit_to_json(&q))?;
    write(&args.out_report, &io::report_to_json(&report))
}

fn simulate(args: &SimulateArgs) -> qudit_lift::Result<()> {
    let circuit = io::parse_circuit(&read(&args.circuit)?)?;
    let text = match (circuit, &args.mapping) {
        (CircuitFile::Qubit(c), None) => {
            io::counts_to_json(&sample(&run_qubit(&c)?, args.shots, args.seed)?)
        }
        (CircuitFile::Qudit(c), None) => {
            io::counts_to_json(&sample(&run(&c)?, args.shots, args.seed)?)
        }
        (CircuitFile::Qudit(c), Some(path)) => {
            let m = io::parse_mapping(&read(path)?, &c.dims)?;
            let raw = sample(&run(&c)?, args.shots, args.seed)?;
            let decoded = decode_counts(&raw, &m)?;
            io::decoded_counts_to_json(&DecodedCounts {
                qudit_res: raw,
                qubit_res: decoded,
            })
        }
        (CircuitFile::Qubit(_), Some(_)) => {
            return Err(Error::schema("kind", "--mapping needs a qudit circuit"));
        }
    };
    write(&args.out, &text)
}

fn format_fidelity(f: Option<f64>) -> String {
    f.map_or_else(|| "n/a".to_string(), |f| format!("{f:.6}"))
}

fn format_table(r: &TranspileReport) -> String {
    let baseline = r
        .baseline_two_qubit_gates
        .map_or_else(|| "n/a".to_string(), |b| b.to_string());
    [
        format!("mapping            {:?}", r.mapping_opt),
        format!("two-qudit gates    {}", r.two_qudit_gates),
        format!("baseline two-qubit {baseline}"),
        format!(
            "F(opt)             {}",
            format_fidelity(Some(r.fidelity_opt))
        ),
        format!("F(trivial)         {}", format_fidelity(r.fidelity_trivial)),
    ]
    .join("\n")
}

fn compare(args: &CompareArgs) -> qudit_lift::Result<()> {
    let c = qubit_circuit(&args.circuit)?;
    let dims = parse_dims(&args.dims)?;
    let em = error_model(args.error_model.as_deref())?;
    let out = select_mapping(&c, &dims, &em, args.search_limit)?;
    if args.json {
        print!("{}", io::report_to_json(&out.report));
    } else {
        println!("{}", format_table(&out.report));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Transpile(a) => transpile(a),
        Command::Simulate(a) => simulate(a),
        Command::Compare(a) => compare(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qlift: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
