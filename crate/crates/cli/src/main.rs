//! `hspace-nilp`: command-line front end.
//!
//! JSON goes to stdout (or `--output`), human summaries to stderr.
//!
//! Exit codes: 0 success, 1 other failure, 2 bad input, 3 memo cap exceeded,
//! 4 below the construction threshold, 5 oracle disagreement.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hspace_nilp::engine::DEFAULT_MEMO_CAP;
use hspace_nilp::lie::parse_tag;
use hspace_nilp::{
    brute_force_nilpotency, build_smash_chain, degree_sequence, exact_nilpotency_with,
    load_known_cases, presentation_nilpotency, randomized_witness, table_nilpotency, threshold,
    verify_chain, DegreeSequence, EngineError, Family, FamilyTag, LieError, SearchConfig,
    SemigroupTable,
};
use serde::Serialize;
use serde_json::{json, Value};

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_MEMO_CAP: u8 = 3;
const EXIT_BELOW_THRESHOLD: u8 = 4;
const EXIT_DISAGREE: u8 = 5;

#[derive(Parser)]
#[command(name = "hspace-nilp")]
#[command(about = "Nilpotency of rationally trivial self-maps of finite H-spaces")]
#[command(version)]
struct Cli {
    /// Write the JSON result here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact t(X0) with a certificate for the deepest chain
    Nilpotency {
        #[command(flatten)]
        input: SpaceInput,
        /// Abort the search past this many memo entries
        #[arg(long, env = "HSPACE_NILP_MEMO_CAP", default_value_t = DEFAULT_MEMO_CAP)]
        memo_cap: usize,
    },
    /// Build the smash-product chain a_1..a_l for a classical group
    Chain {
        /// Family, e.g. SU:50, Sp:14, U:8, SO:29, Spin:29, O:30
        #[arg(long, value_parser = parse_family)]
        group: Family,
        #[arg(long)]
        level: u32,
        /// Also compose the chain and emit its certificate
        #[arg(long)]
        verify: bool,
    },
    /// Minimal group parameter for each level
    Threshold {
        /// su, sp, u, so (both parities), so_odd, so_even; spin and o alias so
        #[arg(long)]
        family: String,
        /// `N` for levels 1..=N, or a range `A..B`
        #[arg(long, value_parser = parse_levels)]
        level: LevelRange,
    },
    /// Nilpotency of a finite composition table
    Table {
        /// Table file: {"elements": [...], "zero": "0", "table": {"a,b": "c"}}
        #[arg(long, conflicts_with = "case", required_unless_present = "case")]
        file: Option<PathBuf>,
        /// A shipped case: S3xS3, SU(3), Sp(2), G2, S7xS7, SU(4), Sp(3)
        #[arg(long)]
        case: Option<String>,
    },
    /// Compare the tree search, brute force and randomized composition
    Oracle {
        #[command(flatten)]
        input: SpaceInput,
        #[arg(long, default_value_t = 3)]
        max_chain: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Brute-force coefficient set
        #[arg(long, value_delimiter = ',', default_value = "0,1", allow_negative_numbers = true)]
        coeffs: Vec<i64>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SpaceInput {
    /// Comma-separated odd generator degrees
    #[arg(long, value_parser = parse_degrees)]
    degrees: Option<DegreeSequence>,
    /// Classical group, e.g. SU:8
    #[arg(long, value_parser = parse_family)]
    group: Option<Family>,
}

impl SpaceInput {
    fn resolve(&self) -> (DegreeSequence, Option<Family>) {
        match (&self.degrees, &self.group) {
            (Some(ds), _) => (ds.clone(), None),
            (None, Some(f)) => (degree_sequence(f), Some(*f)),
            (None, None) => unreachable!("clap enforces one input"),
        }
    }
}

#[derive(Clone, Copy)]
struct LevelRange {
    first: u32,
    last: u32,
}

fn parse_degrees(s: &str) -> Result<DegreeSequence, String> {
    let trimmed = s.trim();
    let degrees = if trimmed.is_empty() {
        Vec::new()
    } else {
        trimmed
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| format!("`{p}` is not a positive integer"))
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    DegreeSequence::new(degrees).map_err(|e| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: LieError| e.to_string())
}

fn parse_levels(s: &str) -> Result<LevelRange, String> {
    let num = |p: &str| {
        p.trim()
            .parse::<u32>()
            .ok()
            .filter(|&l| l >= 1)
            .ok_or_else(|| format!("`{p}` is not a level >= 1"))
    };
    let range = match s.split_once("..") {
        Some((a, b)) => LevelRange {
            first: num(a)?,
            last: num(b.trim_start_matches('='))?,
        },
        None => LevelRange {
            first: 1,
            last: num(s)?,
        },
    };
    if range.first > range.last {
        return Err(format!("empty level range `{s}`"));
    }
    Ok(range)
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    meta: Value,
    #[serde(flatten)]
    payload: T,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        let code = match e {
            EngineError::MemoCapExceeded { .. } => EXIT_MEMO_CAP,
            _ => EXIT_FAILURE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<LieError> for Failure {
    fn from(e: LieError) -> Self {
        let code = match e {
            LieError::BelowThreshold { .. } => EXIT_BELOW_THRESHOLD,
            LieError::InvalidFamily(_) | LieError::InvalidParameter { .. } | LieError::ZeroLevel => {
                EXIT_PARSE
            }
            _ => EXIT_FAILURE,
        };
        Failure::new(code, e.to_string())
    }
}

/// A JSON payload plus an optional exit code for a result that is well-formed but failing.
type Outcome = (Value, Option<u8>);

fn run_nilpotency(input: &SpaceInput, memo_cap: usize) -> Result<Outcome, Failure> {
    let (ds, family) = input.resolve();
    let report = exact_nilpotency_with(&ds, &SearchConfig { memo_cap })?;
    match &family {
        Some(f) => eprintln!("t({f} rationalized) = {}", report.t),
        None => eprintln!("t(X0) = {} for degrees {:?}", report.t, ds.degrees()),
    }
    let mut value = serde_json::to_value(&report).expect("report serializes");
    if let Some(f) = family {
        value["group"] = json!(f.to_string());
    }
    Ok((value, None))
}

fn run_chain(group: &Family, level: u32, verify: bool) -> Result<Outcome, Failure> {
    let chain = build_smash_chain(group, level)?;
    let mut value = json!({ "chain": chain });
    if verify {
        let cert = verify_chain(&chain)?;
        eprintln!(
            "{group}: level-{level} chain composite sends generator {} to ({}) * {}, so t >= {}",
            cert.witness_generator,
            cert.witness_coefficient,
            cert.witness_monomial,
            cert.certified_t()
        );
        value["certificate"] = serde_json::to_value(&cert).expect("certificate serializes");
    } else {
        eprintln!("{group}: built level-{level} chain");
    }
    Ok((value, None))
}

fn run_threshold(family: &str, levels: LevelRange) -> Result<Outcome, Failure> {
    let lower = family.trim().to_ascii_lowercase();
    let tags = if matches!(lower.as_str(), "so" | "spin" | "o") {
        vec![FamilyTag::SOOdd, FamilyTag::SOEven]
    } else {
        vec![parse_tag(family, None)?]
    };
    let mut rows = Vec::new();
    for tag in tags {
        for level in levels.first..=levels.last {
            let parameter = threshold(tag, level)?;
            eprintln!("{tag} level {level}: parameter >= {parameter}");
            rows.push(json!({ "family": tag.to_string(), "level": level, "parameter": parameter }));
        }
    }
    Ok((json!({ "thresholds": rows }), None))
}

fn run_table(file: Option<&PathBuf>, case: Option<&str>) -> Result<Outcome, Failure> {
    if let Some(path) = file {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::new(EXIT_FAILURE, format!("{}: {e}", path.display())))?;
        let table = SemigroupTable::from_json(&text)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
        let t = table_nilpotency(&table).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
        eprintln!("{}: t = {t}", path.display());
        return Ok((json!({ "t": t, "elements": table.len() }), None));
    }
    let name = case.expect("clap requires --file or --case");
    let cases = load_known_cases();
    let found = cases
        .iter()
        .find(|c| c.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| {
            let names: Vec<&str> = cases.iter().map(|c| c.name).collect();
            Failure::new(EXIT_PARSE, format!("unknown case `{name}` (known: {})", names.join(", ")))
        })?;
    let t = presentation_nilpotency(&found.presentation)
        .map_err(|e| Failure::new(EXIT_FAILURE, e.to_string()))?;
    eprintln!("{}: t = {t}", found.name);
    Ok((
        json!({
            "t": t,
            "case": found,
        }),
        None,
    ))
}

fn run_oracle(input: &SpaceInput, max_chain: u32, seed: u64, coeffs: &[i64]) -> Result<Outcome, Failure> {
    let (ds, _) = input.resolve();
    let exact = exact_nilpotency_with(&ds, &SearchConfig::default())?;
    let brute = brute_force_nilpotency(&ds, coeffs, max_chain)?;
    let below = if exact.t >= 2 {
        Some(randomized_witness(&ds, exact.t - 1, seed)?.is_some())
    } else {
        None
    };
    let at = randomized_witness(&ds, exact.t, seed)?.is_some();
    // a capped brute force only shows t > max_chain
    let brute_ok = if brute.capped { exact.t > max_chain } else { brute.t == exact.t };
    let agree = brute_ok && below != Some(false) && !at;
    eprintln!(
        "exact t = {}, brute force t = {}{}, randomized: {} below, {} at t -> {}",
        exact.t,
        brute.t,
        if brute.capped { " (capped)" } else { "" },
        match below {
            Some(true) => "witness",
            Some(false) => "no witness",
            None => "n/a",
        },
        if at { "witness" } else { "none" },
        if agree { "agree" } else { "DISAGREE" }
    );
    let value = json!({
        "degrees": ds,
        "t": exact.t,
        "exact": { "t": exact.t },
        "brute_force": brute,
        "randomized": { "seed": seed, "witness_below_t": below, "witness_at_t": at },
        "agree": agree,
    });
    Ok((value, (!agree).then_some(EXIT_DISAGREE)))
}

fn emit(value: Value, output: Option<&PathBuf>) -> Result<(), Failure> {
    let envelope = Envelope {
        meta: json!({ "tool": "hspace-nilp", "version": env!("CARGO_PKG_VERSION") }),
        payload: value,
    };
    let text = serde_json::to_string(&envelope).expect("JSON values serialize");
    match output {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| Failure::new(EXIT_FAILURE, format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Nilpotency { input, memo_cap } => run_nilpotency(input, *memo_cap),
        Command::Chain { group, level, verify } => run_chain(group, *level, *verify),
        Command::Threshold { family, level } => run_threshold(family, *level),
        Command::Table { file, case } => run_table(file.as_ref(), case.as_deref()),
        Command::Oracle {
            input,
            max_chain,
            seed,
            coeffs,
        } => run_oracle(input, *max_chain, *seed, coeffs),
    };
    let outcome = result.and_then(|(value, code)| {
        emit(value, cli.output.as_ref())?;
        Ok(code)
    });
    match outcome {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(code)) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
