//! `janet-barcode`: Bar Codes, Janet decompositions, completeness checks and
//! ordering search from the command line.
//!
//! Exit codes: 0 success or complete, 1 negative answer (incomplete, no
//! ordering), 2 input error, 3 input is not an order ideal, 4 brute-force
//! cap exceeded, 5 internal invariant violation.

mod parse;
mod render;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use janet_barcode::gen::{random_order_ideal, random_term_set};
use janet_barcode::janet::{is_complete_barcode, is_complete_definition, mult_vars_barcode};
use janet_barcode::oracle::order_ideal_violation;
use janet_barcode::search::{brute_force_orderings, find_ordering, SearchError, SearchEvent};
use janet_barcode::{
    build_barcode, fmt_var_set, star_set, BarCodeError, JanetError, Term, TermSet, VariableOrdering,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use parse::{parse_ordering, parse_term_file, parse_term_list, ParseError};

#[derive(Parser)]
#[command(
    name = "janet-barcode",
    version,
    about = "Bar Codes and Janet completeness of term sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw the Bar Code with its stars.
    Render {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = RenderFormat::Text)]
        format: RenderFormat,
    },
    /// Decide completeness by the Bar Code criterion.
    Check {
        #[command(flatten)]
        input: Input,
        /// Cross-check against the definition; disagreement exits 5.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the multiplicative variables of each term.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the star set of an order ideal.
    StarSet {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Search for an ordering making the set complete.
    FindOrder {
        #[command(flatten)]
        input: Input,
        /// Also list every complete ordering, found by checking all n!.
        #[arg(long)]
        all: bool,
        /// Same as --all.
        #[arg(long)]
        brute_force: bool,
        /// Print the search decisions and revocations.
        #[arg(long)]
        trace: bool,
        /// Largest variable count the exhaustive check accepts.
        #[arg(long, default_value_t = janet_barcode::DEFAULT_BRUTE_FORCE_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Emit random term sets, one term per line, sets separated by blank lines.
    Gen {
        /// Number of variables.
        #[arg(long)]
        vars: usize,
        /// Number of terms per set (upper bound for --ideal).
        #[arg(long)]
        count: usize,
        /// Largest exponent of any variable.
        #[arg(long, default_value_t = 3)]
        max_exp: u32,
        /// Seed for the ChaCha8 generator; equal seeds give equal output.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// How many sets to emit.
        #[arg(long, default_value_t = 1)]
        sets: usize,
        /// Emit order ideals instead of arbitrary sets.
        #[arg(long)]
        ideal: bool,
    },
}

#[derive(Args)]
struct Input {
    /// File with one term per line; `#` starts a comment.
    file: Option<PathBuf>,
    /// Inline terms separated by commas, e.g. "x1^2, x1*x2".
    #[arg(long, conflicts_with = "file")]
    terms: Option<String>,
    /// Number of variables (default: the largest index used).
    #[arg(long)]
    vars: Option<usize>,
    /// `identity` or the variables from minimal to maximal, e.g. x1<x2<x4<x3.
    #[arg(long, default_value = "identity")]
    order: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Text,
    Svg,
    Json,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("not an order ideal: {term} is in the set but its divisor {missing} is not")]
    NotOrderIdeal { term: Term, missing: Term },
    #[error("{0}")]
    Cap(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Io { .. } | CliError::Usage(_) => 2,
            CliError::NotOrderIdeal { .. } => 3,
            CliError::Cap(_) => 4,
            CliError::Internal(_) => 5,
        }
    }
}

impl From<JanetError> for CliError {
    fn from(e: JanetError) -> Self {
        match e {
            JanetError::Empty => CliError::Usage("the term set is empty".into()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<BarCodeError> for CliError {
    fn from(e: BarCodeError) -> Self {
        match e {
            BarCodeError::Empty => CliError::Usage("the term set is empty".into()),
            BarCodeError::NotAdmissible { term, missing } => {
                CliError::NotOrderIdeal { term, missing }
            }
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Empty => CliError::Usage("the term set is empty".into()),
            SearchError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            SearchError::Janet(j) => j.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

/// Outcome of a command that ran to completion.
enum Answer {
    Yes,
    No,
}

impl Input {
    fn load(&self) -> Result<(TermSet, VariableOrdering), CliError> {
        let set = match (&self.file, &self.terms) {
            (Some(path), _) => {
                let read = if path.as_os_str() == "-" {
                    std::io::read_to_string(std::io::stdin())
                } else {
                    std::fs::read_to_string(path)
                };
                let text = read.map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                parse_term_file(&text, self.vars)?
            }
            (None, Some(list)) => parse_term_list(list, self.vars)?,
            (None, None) => return Err(CliError::Usage("give a term file or --terms".into())),
        };
        if set.is_empty() {
            return Err(CliError::Usage("the term set is empty".into()));
        }
        let ord = parse_ordering(&self.order, set.n())?;
        Ok((set, ord))
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn run(cli: Cli, out: &mut String) -> Result<Answer, CliError> {
    match cli.command {
        Command::Render { input, format } => {
            let (set, ord) = input.load()?;
            let d = build_barcode(&set, &ord)?.diagram();
            out.push_str(&match format {
                RenderFormat::Text => render::ascii(&d),
                RenderFormat::Svg => render::svg(&d),
                RenderFormat::Json => json(&d),
            });
            Ok(Answer::Yes)
        }
        Command::Check {
            input,
            verify,
            format,
        } => {
            let (set, ord) = input.load()?;
            let report = is_complete_barcode(&set, &ord)?;
            if verify {
                let oracle = is_complete_definition(&set, &ord)?;
                if oracle != report {
                    return Err(CliError::Internal(format!(
                        "Bar Code criterion and definition disagree under {ord}"
                    )));
                }
            }
            match format {
                Format::Json => out.push_str(&json(&report)),
                Format::Text => {
                    let verdict = if report.complete {
                        "complete"
                    } else {
                        "not complete"
                    };
                    let _ = writeln!(out, "{verdict} under {ord}");
                    for w in &report.witnesses {
                        let d = w
                            .divisor
                            .as_ref()
                            .map_or("none".to_string(), ToString::to_string);
                        let _ = writeln!(out, "  {} * ({}) -> {d}", w.var, w.term);
                    }
                    if let Some((t, x)) = &report.first_failure {
                        let _ =
                            writeln!(out, "first failure: {x} * ({t}) has no involutive divisor");
                    }
                }
            }
            Ok(if report.complete {
                Answer::Yes
            } else {
                Answer::No
            })
        }
        Command::Decompose { input, format } => {
            let (set, ord) = input.load()?;
            let dec = mult_vars_barcode(&set, &ord)?;
            match format {
                Format::Json => out.push_str(&json(&dec)),
                Format::Text => {
                    let width = dec
                        .entries
                        .iter()
                        .map(|e| e.term.to_string().len())
                        .max()
                        .unwrap_or(0);
                    let _ = writeln!(out, "under {ord}");
                    for e in &dec.entries {
                        let _ = writeln!(
                            out,
                            "  {:<width$}  mult {}  nonmult {}",
                            e.term.to_string(),
                            fmt_var_set(&e.mult),
                            fmt_var_set(&e.nonmult)
                        );
                    }
                }
            }
            Ok(Answer::Yes)
        }
        Command::StarSet { input, format } => {
            let (set, ord) = input.load()?;
            if let Some((term, missing)) = order_ideal_violation(&set) {
                return Err(CliError::NotOrderIdeal { term, missing });
            }
            let stars = star_set(&build_barcode(&set, &ord)?)?;
            match format {
                Format::Json => out.push_str(&json(&stars)),
                Format::Text => {
                    for t in &stars {
                        let _ = writeln!(out, "{t}");
                    }
                }
            }
            Ok(Answer::Yes)
        }
        Command::FindOrder {
            input,
            all,
            brute_force,
            trace,
            cap,
            format,
        } => {
            let (set, _) = input.load()?;
            let result = find_ordering(&set)?;
            let every: Option<BTreeSet<VariableOrdering>> = if all || brute_force {
                Some(brute_force_orderings(&set, cap)?)
            } else {
                None
            };
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Report<'a> {
                        ordering: &'a Option<VariableOrdering>,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        trace: Option<&'a [SearchEvent]>,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        all: Option<&'a BTreeSet<VariableOrdering>>,
                    }
                    out.push_str(&json(&Report {
                        ordering: &result.ordering,
                        trace: trace.then_some(&result.trace[..]),
                        all: every.as_ref(),
                    }));
                }
                Format::Text => {
                    if trace {
                        for e in &result.trace {
                            let _ = writeln!(out, "{}", describe(e));
                        }
                    }
                    match &result.ordering {
                        Some(o) => {
                            let _ = writeln!(out, "{o}");
                        }
                        None => out.push_str("none\n"),
                    }
                    if let Some(every) = &every {
                        let _ = writeln!(out, "complete orderings ({}):", every.len());
                        for o in every {
                            let _ = writeln!(out, "  {o}");
                        }
                    }
                }
            }
            Ok(if result.ordering.is_some() {
                Answer::Yes
            } else {
                Answer::No
            })
        }
        Command::Gen {
            vars,
            count,
            max_exp,
            seed,
            sets,
            ideal,
        } => {
            if vars == 0 {
                return Err(CliError::Usage("--vars must be at least 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in 0..sets {
                if i > 0 {
                    out.push('\n');
                }
                let s = if ideal {
                    loop {
                        let s = random_order_ideal(&mut rng, vars, 2, max_exp);
                        if s.len() <= count.max(1) {
                            break s;
                        }
                    }
                } else {
                    random_term_set(&mut rng, vars, count, max_exp)
                };
                for t in &s {
                    let _ = writeln!(out, "{t}");
                }
            }
            Ok(Answer::Yes)
        }
    }
}

fn describe(e: &SearchEvent) -> String {
    let list = |v: &[janet_barcode::Var]| {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    };
    match e {
        SearchEvent::Candidates { prefix, vars } => {
            format!("after [{}]: candidates [{}]", list(prefix), list(vars))
        }
        SearchEvent::Place { var } => format!("place {var}"),
        SearchEvent::Reject { var, reason } => format!("reject {var}: {reason}"),
        SearchEvent::Unitary { prefix } => format!("unitary after [{}]", list(prefix)),
        SearchEvent::Revoke { var } => format!("revoke {var}"),
        SearchEvent::Found { ordering } => format!("found {ordering}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    print!("{out}");
    match result {
        Ok(Answer::Yes) => ExitCode::SUCCESS,
        Ok(Answer::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
