use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rbsd_cli::{load_inputs, run_job, CliError, CurveRecord, FieldRecord, JobKind, JobSpec, Report};

#[derive(Parser)]
#[command(
    name = "rbsd",
    version,
    about = "Exact theta elements, Gauss sums and p-adic congruence checks for elliptic curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one verification job
    Run {
        #[arg(value_enum)]
        kind: JobKind,
        #[command(flatten)]
        args: JobArgs,
    },
    /// Re-run the job echoed in a report
    Replay {
        report: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct JobArgs {
    /// Line-delimited JSON records: curves `{label?, ainvs}` and one field `{conductor, subgroup_generators}`
    #[arg(long)]
    curve: Option<PathBuf>,
    /// Curve label to select from the input file; the first curve otherwise
    #[arg(long)]
    label: Option<String>,
    /// Weierstrass coefficients "a1,a2,a3,a4,a6", instead of --curve
    #[arg(long, allow_hyphen_values = true)]
    ainvs: Option<String>,
    #[arg(long)]
    cond: Option<u64>,
    /// Generators of H in (Z/c)^x; empty means the maximal real subfield
    #[arg(long)]
    subgroup: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 10)]
    prec: u32,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Index of the embedding of roots of unity
    #[arg(long, default_value_t = 0)]
    embedding: usize,
    /// Place set S for the prediction, "p,l1,l2,..."
    #[arg(long)]
    places: Option<String>,
    /// Assert that the p-part of Sha over the field is trivial (or not)
    #[arg(long)]
    sha_trivial: Option<bool>,
    #[arg(long)]
    fixtures: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Parse { line: 0, message: format!("bad {what} entry {t:?}") }))
        .collect()
}

fn build_spec(kind: JobKind, args: &JobArgs) -> Result<JobSpec, CliError> {
    let mut spec = JobSpec::new(kind);
    let mut file_field = None;
    if let Some(path) = &args.curve {
        let inputs = load_inputs(path)?;
        let chosen = match &args.label {
            Some(label) => inputs.curves.into_iter().find(|(r, _)| r.label.as_deref() == Some(label)),
            None => inputs.curves.into_iter().next(),
        };
        spec.curve = chosen.map(|(r, _)| r);
        file_field = inputs.field.map(|(r, _)| r);
    }
    if let Some(text) = &args.ainvs {
        let a: Vec<i64> = parse_list(text, "ainvs")?;
        let ainvs: [i64; 5] = a.try_into().map_err(|_| CliError::InvalidCurve("expected five coefficients".into()))?;
        spec.curve = Some(CurveRecord { label: args.label.clone(), ainvs });
    }
    spec.field = match args.cond {
        Some(conductor) => {
            let subgroup_generators =
                args.subgroup.as_deref().map(|s| parse_list(s, "subgroup")).transpose()?.unwrap_or_default();
            Some(FieldRecord { conductor, subgroup_generators })
        }
        None => file_field,
    };
    spec.p = args.p;
    spec.precision = args.prec;
    spec.tolerance = args.tol;
    spec.seed = args.seed;
    spec.embedding = args.embedding;
    spec.places = args.places.as_deref().map(|s| parse_list(s, "places")).transpose()?.unwrap_or_default();
    spec.sha_trivial = args.sha_trivial;
    spec.fixtures = args.fixtures.clone();
    Ok(spec)
}

fn emit(report: &Report, out: Option<&PathBuf>) -> Result<(), CliError> {
    let text = report.to_json();
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => {
            use std::io::Write;
            // a closed pipe downstream is not an error for us
            let _ = writeln!(std::io::stdout(), "{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { kind, args } => {
            build_spec(kind, &args).and_then(|spec| run_job(&spec)).and_then(|r| emit(&r, args.report.as_ref()))
        }
        Command::Replay { report, out } => std::fs::read_to_string(&report)
            .map_err(|source| CliError::Io { path: report.display().to_string(), source })
            .and_then(|text| {
                serde_json::from_str::<Report>(&text).map_err(|e| CliError::Parse { line: 0, message: e.to_string() })
            })
            .and_then(|old| run_job(&old.job))
            .and_then(|r| emit(&r, out.as_ref())),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
