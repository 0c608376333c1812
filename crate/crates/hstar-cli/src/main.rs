//! `hstar`: exact h*-vector (delta-vector) computations for lattice
//! simplices given by Hermite normal forms.
//!
//! Exit codes: 0 success (including empty or negative mathematical
//! results), 1 oracle disagreement, 2 usage or parse error, 3 singular
//! input matrix, 4 oracle budget exceeded.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hstar_cli::format::{self, FormatError};
use hstar_core::{
    classify_detailed, congruence_indices, delta_bruteforce_with, delta_from_hnf, enumerate_hnf,
    hermite_normal_form, realizable, s_value, DecisionMethod, DeltaVector, FormFilter, HnfEnumSpec,
    OneRowForm, PointBudget, Simplex, SolutionForm,
};

#[derive(Parser)]
#[command(
    name = "hstar",
    version,
    about = "Delta-vectors of lattice simplices via Hermite normal forms"
)]
struct Cli {
    /// Emit machine-readable JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormArg {
    All,
    OneRow,
    TwoRow,
}

impl From<FormArg> for FormFilter {
    fn from(f: FormArg) -> FormFilter {
        match f {
            FormArg::All => FormFilter::All,
            FormArg::OneRow => FormFilter::OneRow,
            FormArg::TwoRow => FormFilter::TwoRow,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Hermite normal form, unimodular transform, and determinant of a matrix.
    Hnf {
        /// Matrix file (text format or {"dim": .., "rows": ..} JSON).
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Delta-vector of the simplex spanned by the rows of a matrix and the origin.
    Delta {
        #[arg(long)]
        matrix: PathBuf,
        /// List every congruence index with its first-hit dilation.
        #[arg(long)]
        s_values: bool,
        /// Re-derive the delta-vector by brute-force lattice-point counting
        /// and report AGREE/DISAGREE (disagreement exits with code 1).
        #[arg(long)]
        oracle: bool,
        /// Candidate-point cap for the oracle (overrides HSTAR_ORACLE_BUDGET).
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Stream every Hermite normal form with the given dimension and determinant as a JSON array.
    Enumerate {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        det: u64,
        /// Restrict to one-row or two-row diagonal shapes.
        #[arg(long, value_enum, default_value_t = FormArg::All)]
        form: FormArg,
        /// Annotate every matrix with its delta-vector.
        #[arg(long)]
        with_delta: bool,
    },
    /// All normal forms realizing a delta-vector (closed-form solvers for determinants 2-4).
    Classify {
        /// Dimension; inferred from the delta-vector when omitted.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        det: u64,
        /// Comma-separated delta-vector, e.g. 1,0,1,1,0,1,0.
        #[arg(long)]
        delta: String,
        /// List every matrix per solution instead of one canonical representative.
        #[arg(long)]
        expand_all: bool,
    },
    /// Decide whether a delta-vector of total mass at most 4 is realizable.
    Realize {
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        delta: String,
    },
    /// Shifted-symmetry report for a one-row normal form.
    Symmetry {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        det: u64,
        /// Use the form whose non-trivial row is (D-1, ..., D-1, D).
        #[arg(long, conflicts_with = "multiplicities")]
        all_dminus1: bool,
        /// Comma-separated multiplicities d_1, ..., d_{D-1}.
        #[arg(long)]
        multiplicities: Option<String>,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<hstar_core::Error> for CliError {
    fn from(e: hstar_core::Error) -> Self {
        let code = match e {
            hstar_core::Error::SingularMatrix => 3,
            hstar_core::Error::BudgetExceeded { .. } => 4,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        Self::usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Hnf { matrix } => cmd_hnf(&matrix, cli.json),
        Command::Delta {
            matrix,
            s_values,
            oracle,
            budget,
        } => cmd_delta(&matrix, s_values, oracle, budget, cli.json),
        Command::Enumerate {
            dim,
            det,
            form,
            with_delta,
        } => cmd_enumerate(dim, det, form.into(), with_delta),
        Command::Classify {
            dim,
            det,
            delta,
            expand_all,
        } => cmd_classify(dim, det, &delta, expand_all),
        Command::Realize { dim, delta } => cmd_realize(dim, &delta, cli.json),
        Command::Symmetry {
            dim,
            det,
            all_dminus1,
            multiplicities,
        } => cmd_symmetry(dim, det, all_dminus1, multiplicities.as_deref(), cli.json),
    }
}

fn read_matrix(path: &PathBuf) -> Result<hstar_core::IntMatrix, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(format::parse_matrix(&text)?)
}

fn oracle_budget(flag: Option<u128>) -> Result<PointBudget, CliError> {
    if let Some(cap) = flag {
        return Ok(PointBudget::new(cap));
    }
    match std::env::var("HSTAR_ORACLE_BUDGET") {
        Ok(s) => s
            .parse()
            .map(PointBudget::new)
            .map_err(|_| CliError::usage(format!("bad HSTAR_ORACLE_BUDGET value {s:?}"))),
        Err(_) => Ok(PointBudget::default()),
    }
}

fn cmd_hnf(path: &PathBuf, as_json: bool) -> Result<u8, CliError> {
    let m = read_matrix(path)?;
    let h = hermite_normal_form(&m)?;
    let det = m.determinant();
    if as_json {
        let out = json!({
            "det": format::bigint_json(&det)?,
            "hnf": format::matrix_json(h.matrix())?,
            "transform": format::matrix_json(h.transform())?,
        });
        println!("{out}");
    } else {
        println!("det: {det}");
        println!("hnf:");
        println!("{}", h.matrix());
        println!("transform:");
        println!("{}", h.transform());
    }
    Ok(0)
}

fn cmd_delta(
    path: &PathBuf,
    s_values: bool,
    oracle: bool,
    budget: Option<u128>,
    as_json: bool,
) -> Result<u8, CliError> {
    let m = read_matrix(path)?;
    let h = hermite_normal_form(&m)?;
    // the engine walks det(A) congruence classes, one per diagonal residue
    if h.diagonal().iter().any(|e| u64::try_from(e).is_err()) {
        return Err(CliError::usage(
            "a diagonal entry of the normal form exceeds the enumerable range",
        ));
    }
    let v = delta_from_hnf(&h);
    let table: Option<Vec<(Vec<u64>, usize)>> = if s_values {
        Some(
            congruence_indices(&h)
                .map(|idx| {
                    let s = s_value(&h, &idx).expect("enumerated indices are in bounds");
                    (idx.indices().to_vec(), s)
                })
                .collect(),
        )
    } else {
        None
    };
    // The oracle counts points of the *input* simplex, so it cross-checks
    // the normal-form reduction as well as the delta engine.
    let oracle_delta = if oracle {
        let budget = oracle_budget(budget)?;
        let s = Simplex::new(m.clone())?;
        Some(delta_bruteforce_with(&s, budget)?)
    } else {
        None
    };
    let agree = oracle_delta.as_ref().map(|o| *o == v);

    if as_json {
        let mut out = json!({
            "delta": format::delta_json(&v)?,
            "polynomial": v.polynomial_string(),
            "det": format::bigint_json(&h.det())?,
        });
        if let Some(table) = &table {
            out["s_values"] = Value::Array(
                table
                    .iter()
                    .map(|(idx, s)| json!({ "index": idx, "s": s }))
                    .collect(),
            );
        }
        if let Some(o) = &oracle_delta {
            out["oracle"] = json!({
                "delta": format::delta_json(o)?,
                "verdict": if agree == Some(true) { "AGREE" } else { "DISAGREE" },
            });
        }
        println!("{out}");
    } else {
        println!("delta: {v}");
        println!("polynomial: {}", v.polynomial_string());
        println!("det: {}", h.det());
        if let Some(table) = &table {
            println!("s-values:");
            for (idx, s) in table {
                let idx: Vec<String> = idx.iter().map(u64::to_string).collect();
                println!("({}) -> {s}", idx.join(","));
            }
        }
        if let Some(o) = &oracle_delta {
            println!("oracle delta: {o}");
            println!(
                "oracle: {}",
                if agree == Some(true) {
                    "AGREE"
                } else {
                    "DISAGREE"
                }
            );
        }
    }
    Ok(if agree == Some(false) { 1 } else { 0 })
}

fn cmd_enumerate(
    dim: usize,
    det: u64,
    filter: FormFilter,
    with_delta: bool,
) -> Result<u8, CliError> {
    if dim < 1 || det < 1 {
        return Err(CliError::usage("--dim and --det must be at least 1"));
    }
    let spec = HnfEnumSpec::new(dim, det).with_filter(filter);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "[")?;
    let mut first = true;
    for h in enumerate_hnf(&spec) {
        let mut obj = format::matrix_json(h.matrix())?;
        if with_delta {
            obj["delta"] = format::delta_json(&delta_from_hnf(&h))?;
        }
        if !first {
            writeln!(out, ",")?;
        }
        write!(out, "{obj}")?;
        first = false;
    }
    if !first {
        writeln!(out)?;
    }
    writeln!(out, "]")?;
    Ok(0)
}

fn resolve_dim(dim: Option<usize>, v: &DeltaVector) -> Result<usize, CliError> {
    if v.dim() < 1 {
        return Err(CliError::usage("the delta-vector must have dimension >= 1"));
    }
    match dim {
        Some(d) if d != v.dim() => Err(CliError::usage(format!(
            "--dim {d} does not match the delta-vector dimension {}",
            v.dim()
        ))),
        Some(d) => Ok(d),
        None => Ok(v.dim()),
    }
}

fn cmd_classify(
    dim: Option<usize>,
    det: u64,
    delta: &str,
    expand_all: bool,
) -> Result<u8, CliError> {
    if det < 1 {
        return Err(CliError::usage("--det must be at least 1"));
    }
    let v = format::parse_delta(delta)?;
    let dim = resolve_dim(dim, &v)?;
    let spec = HnfEnumSpec::new(dim, det);
    let records = classify_detailed(&spec, &v)?;
    let mut total = 0usize;
    let mut solutions = Vec::new();
    for r in &records {
        total += r.matrices.len();
        let shown: Vec<Value> = if expand_all {
            r.matrices
                .iter()
                .map(|h| format::matrix_json(h.matrix()))
                .collect::<Result<_, _>>()?
        } else {
            r.matrices
                .first()
                .map(|h| format::matrix_json(h.matrix()))
                .transpose()?
                .into_iter()
                .collect()
        };
        let mut obj = json!({
            "form": match r.form {
                SolutionForm::OneRow => "one-row",
                SolutionForm::TwoRow { .. } => "two-row",
                SolutionForm::Enumeration => "enumeration",
            },
            "families": r.families,
            "params": r.params,
            "matrix_count": r.matrices.len(),
            "matrices": shown,
        });
        if let SolutionForm::TwoRow { bar } = r.form {
            obj["bar"] = json!(u8::from(bar));
        }
        solutions.push(obj);
    }
    let out = json!({
        "dim": dim,
        "det": det,
        "delta": format::delta_json(&v)?,
        "solutions": solutions,
        "total_matrices": total,
    });
    println!("{out}");
    Ok(0)
}

fn cmd_realize(dim: Option<usize>, delta: &str, as_json: bool) -> Result<u8, CliError> {
    let v = format::parse_delta(delta)?;
    let dim = resolve_dim(dim, &v)?;
    let verdict = realizable(dim, &v)?;
    let method = match verdict.method {
        DecisionMethod::ClosedForm => "closed-form",
        DecisionMethod::Enumeration => "enumeration",
    };
    if as_json {
        let witness = verdict
            .witness
            .as_ref()
            .map(|h| format::matrix_json(h.matrix()))
            .transpose()?;
        let out = json!({
            "realizable": verdict.realizable,
            "reason": verdict.reason.as_str(),
            "method": method,
            "witness": witness,
        });
        println!("{out}");
    } else if verdict.realizable {
        println!("REALIZABLE");
        println!("method: {method}");
        println!("witness:");
        println!(
            "{}",
            verdict.witness.as_ref().expect("witness present").matrix()
        );
    } else {
        println!("NOT REALIZABLE");
        println!("reason: {}", verdict.reason.as_str());
        println!("method: {method}");
    }
    Ok(0)
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn cmd_symmetry(
    dim: usize,
    det: u64,
    all_dminus1: bool,
    multiplicities: Option<&str>,
    as_json: bool,
) -> Result<u8, CliError> {
    if dim < 1 {
        return Err(CliError::usage("--dim must be at least 1"));
    }
    if det < 2 {
        return Err(CliError::usage("--det must be at least 2"));
    }
    let mults: Vec<usize> = if all_dminus1 {
        let mut m = vec![0usize; (det - 1) as usize];
        *m.last_mut().expect("det >= 2") = dim - 1;
        m
    } else {
        let text = multiplicities
            .ok_or_else(|| CliError::usage("pass --multiplicities or --all-dminus1"))?;
        text.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::usage(format!("bad multiplicity {t:?}")))
            })
            .collect::<Result<_, _>>()?
    };
    let form = OneRowForm::new(dim, det, mults.clone())?;
    let v = form.delta();
    let conditions = form.symmetry_conditions();
    let dd_gcd = all_dminus1.then(|| gcd_u64(det, dim as u64));

    if as_json {
        let mut out = json!({
            "dim": dim,
            "det": det,
            "multiplicities": mults,
            "delta": format::delta_json(&v)?,
            "polynomial": v.polynomial_string(),
            "shifted_symmetric": v.is_shifted_symmetric(),
            "conditions": {
                "weight_coprime": conditions.weight_coprime,
                "weight_gcd": conditions.weight_gcd,
                "support_coprime": conditions.support_coprime,
                "full_count": conditions.full_count,
            },
        });
        if let Some(g) = dd_gcd {
            out["gcd_det_dim"] = json!(g);
        }
        println!("{out}");
    } else {
        let mults_text: Vec<String> = mults.iter().map(usize::to_string).collect();
        println!(
            "form: D = {det}, d = {dim}, multiplicities {}",
            mults_text.join(",")
        );
        println!("delta: {v}");
        println!("polynomial: {}", v.polynomial_string());
        println!("shifted symmetric: {}", v.is_shifted_symmetric());
        println!(
            "condition 1 (weighted count coprime with D): {} [gcd = {}]",
            conditions.weight_coprime, conditions.weight_gcd
        );
        println!(
            "condition 2 (values coprime with D): {}",
            conditions.support_coprime
        );
        println!(
            "condition 3 (all d-1 slots used): {}",
            conditions.full_count
        );
        if let Some(g) = dd_gcd {
            println!("gcd(D, d) = {g}");
        }
    }
    Ok(0)
}
