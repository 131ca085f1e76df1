//! Subcommands. Each returns the JSON document for stdout together with the
//! exit code, or a [`Failure`] whose message goes to stderr.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use painleve_core::auxhier::solve_kudryashov_params;
use painleve_core::classify::{classify, Status, DEFAULT_MAX_DEPTH};
use painleve_core::exactalg::{parse_scalar, Scalar};
use painleve_core::hierarchy::{residual, CouplingVariant, ParamVector, SolutionTuple, SystemKind, SystemSpec};
use painleve_core::miura::{p4_dressing_to_symmetric, p4_symmetric_to_dressing, p5_verify_transform};
use painleve_core::seeds::{p4_seed, p5_alpha_row, p5_constant_seed, Arrangement, Table};
use painleve_core::weyl::{apply_word, WeylWord, WordOptions, DEFAULT_DEGREE_CAP};
use painleve_core::Error;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::json::{self, JsonError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

pub const DEGREE_CAP_ENV: &str = "PAINLEVE_DEGREE_CAP";

#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Value,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn failed(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_FAILED,
            message: message.into(),
        }
    }
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        Failure::input(e.to_string())
    }
}

// Engine errors caused by the arguments rather than by the mathematics.
fn engine(e: Error) -> Failure {
    match e {
        Error::ZeroPivot { .. }
        | Error::DegreeOverflow { .. }
        | Error::VerificationFailed { .. }
        | Error::NoConstantSolution { .. }
        | Error::ZeroA { .. } => Failure::failed(e.to_string()),
        other => Failure::input(other.to_string()),
    }
}

#[derive(Debug, Parser)]
#[command(name = "painleve", version, about = "Exact rational solutions of the P4 and P5 hierarchies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a solution file against its system; exit 1 on a nonzero residual.
    Verify(VerifyArgs),
    /// Transport a table seed along a word of Bäcklund generators.
    Generate(GenerateArgs),
    /// Decide whether a parameter vector admits a rational solution.
    Classify(ClassifyArgs),
    /// Map a P4 tuple between the dressing-chain and symmetric forms.
    Convert(ConvertArgs),
    /// Check a proposed P5 dressing-chain to symmetric-form correspondence.
    P5Verify(P5VerifyArgs),
    /// Parameters for which sigma/x solves the second Kudryashov member.
    Kudryashov(KudryashovArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct SystemArgs {
    /// p4ny, p4dc, p5ny, p5dc or kudryashov2
    #[arg(long)]
    pub system: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated rationals, e.g. 1/3,1/3,1/3
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c1: Option<String>,
    /// literal_f0 or diagonal_fi
    #[arg(long)]
    pub variant: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Solution file, or - for stdin
    pub file: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Table row k
    #[arg(long)]
    pub row: usize,
    /// Zero pattern such as *00, with * for nonzero entries; defaults to the
    /// nonzero entries first
    #[arg(long)]
    pub arrangement: Option<String>,
    /// Free entry of a P5 row
    #[arg(long, allow_hyphen_values = true)]
    pub a0: Option<String>,
    /// Comma-separated letters s0, s1, .., pi, pi_inv
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub word: String,
    /// File with one word per line; emits an array in file order
    #[arg(long, conflicts_with = "word")]
    pub batch: Option<PathBuf>,
    /// Run the residual check after every letter
    #[arg(long)]
    pub verify_each: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
    pub max_depth: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ConvertArgs {
    /// P4 tuple (p4dc or p4ny), or - for stdin
    pub file: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct P5VerifyArgs {
    /// P5 dressing-chain tuple
    #[arg(long)]
    pub source: PathBuf,
    /// Candidate P5 symmetric-form tuple, components as functions of x
    #[arg(long)]
    pub candidate: PathBuf,
    /// The new variable z(x) as a JSON rational function; defaults to x
    #[arg(long)]
    pub z: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct KudryashovArgs {
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub sigma: String,
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::input(format!("stdin: {e}")))
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
    }
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = read_input(path)?;
    json::parse_document(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn scalar_flag(name: &str, text: &str) -> Result<Scalar, Failure> {
    parse_scalar(text).map_err(|_| Failure::input(format!("--{name}: not a rational: {text:?}")))
}

pub fn parse_params(text: &str) -> Result<ParamVector, Failure> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(ParamVector::new(Vec::new()));
    }
    text.split(',')
        .map(|t| scalar_flag("params", t))
        .collect::<Result<Vec<_>, _>>()
        .map(ParamVector::new)
}

impl SystemArgs {
    /// The system described by the flags, if `--system` was given.
    pub fn spec(&self) -> Result<Option<SystemSpec>, Failure> {
        let Some(name) = &self.system else {
            return Ok(None);
        };
        let kind = json::kind_from_name(name)
            .ok_or_else(|| Failure::input(format!("--system: unknown system {name:?}")))?;
        let opt = |name: &str, v: &Option<String>| v.as_deref().map(|t| scalar_flag(name, t)).transpose();
        let variant = match &self.variant {
            None => CouplingVariant::default(),
            Some(v) => json::variant_from_name(v)
                .ok_or_else(|| Failure::input(format!("--variant: unknown variant {v:?}")))?,
        };
        let n = match (kind, self.n) {
            (SystemKind::Kudryashov2, n) => n.unwrap_or(2),
            (_, Some(n)) => n,
            (_, None) => return Err(Failure::input("--n is required")),
        };
        let spec = SystemSpec {
            kind,
            n,
            c0: opt("c0", &self.c0)?,
            c1: opt("c1", &self.c1)?,
            variant,
            beta: opt("beta", &self.beta)?,
            delta: opt("delta", &self.delta)?,
        };
        spec.validate().map_err(|e| Failure::input(e.to_string()))?;
        Ok(Some(spec))
    }

    pub fn params(&self) -> Result<Option<ParamVector>, Failure> {
        self.params.as_deref().map(parse_params).transpose()
    }
}

fn agree<T: PartialEq>(what: &str, flag: Option<T>, file: Option<T>) -> Result<T, Failure> {
    match (flag, file) {
        (Some(a), Some(b)) if a != b => Err(Failure::input(format!(
            "{what} given on the command line differs from the file"
        ))),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Err(Failure::input(format!("{what} missing: pass it as a flag or in the file"))),
    }
}

pub fn degree_cap() -> Result<usize, Failure> {
    match std::env::var(DEGREE_CAP_ENV) {
        Err(_) => Ok(DEFAULT_DEGREE_CAP),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("{DEGREE_CAP_ENV}: not a nonnegative integer: {v:?}"))),
    }
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, Failure> {
    let doc = json::tuple_document_from_json(&read_json(&args.file)?)?;
    let system = agree("the system", args.system.spec()?, doc.system)?;
    let params = match (args.system.params()?, doc.params) {
        (None, None) if system.kind == SystemKind::Kudryashov2 => ParamVector::new(Vec::new()),
        (flag, file) => agree("the parameters", flag, file)?,
    };
    let tuple = SolutionTuple::new(system, params, doc.components).map_err(engine)?;
    let r = residual(&tuple).map_err(engine)?;
    let first = r.iter().position(|c| !c.is_zero());
    let report = json!({
        "first_nonzero": first.map(|i| json!({
            "index": i,
            "residual": json::ratfunc_to_json(&r[i]),
        })),
        "residuals_zero": first.is_none(),
        "solution": json::tuple_to_json(&tuple),
    });
    Ok(Outcome {
        code: if first.is_none() { EXIT_OK } else { EXIT_FAILED },
        stdout: report,
    })
}

fn seed_for(args: &GenerateArgs, spec: &SystemSpec) -> Result<SolutionTuple, Failure> {
    let table = match spec.kind {
        SystemKind::P4Ny => Table::P4,
        SystemKind::P5Ny => Table::P5,
        _ => return Err(Failure::input("generate works on p4ny and p5ny")),
    };
    let (len, slots) = table.geometry(spec.n, args.row).map_err(engine)?;
    let arrangement = match &args.arrangement {
        Some(text) => Arrangement::parse(text).map_err(engine)?,
        None => Arrangement::trivial(len, slots),
    };
    match table {
        Table::P4 => p4_seed(spec.n, args.row, &arrangement)
            .map_err(engine)?
            .solution()
            .ok_or_else(|| Failure::input("row without a seed solution")),
        Table::P5 => {
            let a0 = args
                .a0
                .as_deref()
                .ok_or_else(|| Failure::input("--a0 is required for p5ny"))
                .and_then(|t| scalar_flag("a0", t))?;
            let (p, warning) = p5_alpha_row(spec.n, args.row, &a0, &arrangement).map_err(engine)?;
            if let Some(w) = warning {
                eprintln!("warning: a0 = {} lies outside [0, {}]", w.a0, w.upper);
            }
            p5_constant_seed(spec, &p).map_err(engine)
        }
    }
}

fn generate_one(word: &str, seed: &SolutionTuple, options: WordOptions) -> Result<Value, Failure> {
    let word = WeylWord::parse(word, seed.components.len()).map_err(engine)?;
    let result = apply_word(&word, seed, options).map_err(engine)?;
    if !result.verified {
        return Err(Failure::failed(format!("word {word} produced a tuple that fails the residual check")));
    }
    Ok(json::entry_to_json(&result))
}

pub fn generate(args: &GenerateArgs) -> Result<Outcome, Failure> {
    let spec = args
        .system
        .spec()?
        .ok_or_else(|| Failure::input("--system is required"))?;
    let seed = seed_for(args, &spec)?;
    let options = WordOptions {
        verify_each: args.verify_each,
        degree_cap: degree_cap()?,
    };
    let Some(batch) = &args.batch else {
        let entry = generate_one(&args.word, &seed, options)?;
        return Ok(Outcome {
            code: EXIT_OK,
            stdout: entry,
        });
    };
    let text = read_input(batch)?;
    let words: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    // reject malformed words before doing any work
    for w in &words {
        WeylWord::parse(w, seed.components.len()).map_err(engine)?;
    }
    let results: Vec<Result<Value, Failure>> = words
        .par_iter()
        .map(|w| generate_one(w, &seed, options))
        .collect();
    let mut code = EXIT_OK;
    let out = words
        .iter()
        .zip(results)
        .map(|(w, r)| match r {
            Ok(entry) => entry,
            Err(f) => {
                code = EXIT_FAILED;
                json!({ "error": f.message, "word": w })
            }
        })
        .collect();
    Ok(Outcome {
        code,
        stdout: Value::Array(out),
    })
}

pub fn classify_cmd(args: &ClassifyArgs) -> Result<Outcome, Failure> {
    let spec = args
        .system
        .spec()?
        .ok_or_else(|| Failure::input("--system is required"))?;
    let params = args
        .system
        .params()?
        .ok_or_else(|| Failure::input("--params is required"))?;
    let verdict = classify(&spec, &params, args.max_depth).map_err(engine)?;
    let code = match verdict.status {
        Status::Admits => EXIT_OK,
        Status::NotInTables => EXIT_FAILED,
        Status::UndecidedAtDepth => EXIT_UNDECIDED,
    };
    Ok(Outcome {
        code,
        stdout: json::verdict_to_json(&verdict),
    })
}

pub fn convert(args: &ConvertArgs) -> Result<Outcome, Failure> {
    let tuple = json::tuple_from_json(&read_json(&args.file)?)?;
    let converted = match tuple.system.kind {
        SystemKind::P4Dc => p4_dressing_to_symmetric(&tuple),
        SystemKind::P4Ny => p4_symmetric_to_dressing(&tuple),
        other => return Err(Failure::input(format!("convert handles p4dc and p4ny, not {}", json::kind_name(other)))),
    }
    .map_err(engine)?;
    Ok(Outcome {
        code: EXIT_OK,
        stdout: json::tuple_to_json(&converted),
    })
}

pub fn p5_verify(args: &P5VerifyArgs) -> Result<Outcome, Failure> {
    let source = json::tuple_from_json(&read_json(&args.source)?)?;
    let candidate = json::tuple_from_json(&read_json(&args.candidate)?)?;
    let z = match &args.z {
        None => painleve_core::exactalg::RatFunc::x(),
        Some(text) => {
            let v = json::parse_document(text).map_err(|e| Failure::input(format!("--z: {e}")))?;
            json::ratfunc_from_json(&v, "--z")?
        }
    };
    let report = p5_verify_transform(&source, &candidate, &z).map_err(engine)?;
    Ok(Outcome {
        code: if report.forward_ok && report.residual_identity_ok { EXIT_OK } else { EXIT_FAILED },
        stdout: json::report_to_json(&report),
    })
}

pub fn kudryashov(args: &KudryashovArgs) -> Result<Outcome, Failure> {
    let sigma = scalar_flag("sigma", &args.sigma)?;
    let c = solve_kudryashov_params(&sigma).map_err(engine)?;
    let any = !c.points.is_empty() || !c.free_delta.is_empty() || c.curve.is_some();
    Ok(Outcome {
        code: if any { EXIT_OK } else { EXIT_FAILED },
        stdout: json::constraint_to_json(&c),
    })
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Generate(a) => generate(a),
        Command::Classify(a) => classify_cmd(a),
        Command::Convert(a) => convert(a),
        Command::P5Verify(a) => p5_verify(a),
        Command::Kudryashov(a) => kudryashov(a),
    }
}
