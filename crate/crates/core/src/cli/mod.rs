//! Command-line front end: text format, reports and suites.

pub mod dsl;
pub mod report;
pub mod suites;

use clap::{Parser, Subcommand};
use dsl::{action_doc, parse_presentation, presentation_doc, Diagnostic};
use report::{Check, Report, Status};
use serde_json::json;
use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use suites::{catalog_entry, run_suite, Params, SuiteOptions, UsageError};

#[derive(Parser, Debug)]
#[command(name = "ptdhopf", version, about = "Exact checks for pointed Hopf algebra actions")]
pub struct Cli {
    /// Degree cap for relation and module-algebra checks.
    #[arg(long, global = true, default_value_t = 6)]
    pub degree_cap: usize,
    /// Write the full JSON report here.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Degree cap for the dimension count in `check` (default: top relation degree + 2, at least 6).
    #[arg(long, global = true)]
    pub dim_cap: Option<usize>,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a presentation (and its action block) given in the text format.
    Check {
        /// Input file, or - for stdin.
        #[arg(default_value = "-")]
        input: String,
    },
    /// Print a document in canonical form, or a catalog algebra given as key=value pairs.
    Print {
        /// Input file (default stdin), or key=value pairs naming a catalog algebra.
        args: Vec<String>,
    },
    /// Run a named suite: catalog-verify, dimensions, twists, jq-solver, classify, invariants.
    Suite { name: String, params: Vec<String> },
    /// Run the cyclic classifier: classify <family> [key=value…].
    Classify { family: String, params: Vec<String> },
    /// Twist checks for the J± twists and random bicharacters.
    Twist { params: Vec<String> },
    /// Solve for the twist J_Q: solve-jq type=A2 m=3 [basis=standard|adjoint|both].
    SolveJq { params: Vec<String> },
}

fn parse_params(items: &[String]) -> Result<Params, UsageError> {
    let mut out = BTreeMap::new();
    for it in items {
        let Some((k, v)) = it.split_once('=') else {
            return Err(UsageError(format!("expected key=value, found '{it}'")));
        };
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(UsageError(format!("parameter {k} given twice")));
        }
    }
    Ok(out)
}

fn read_input(path: &str) -> Result<String, UsageError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| UsageError(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| UsageError(format!("{path}: {e}")))
    }
}

/// Validate a text document: presentation checks, dimension, and the action if given.
pub fn check_document(text: &str, opt: SuiteOptions, dim_cap: Option<usize>) -> Result<Report, Diagnostic> {
    let doc = parse_presentation(text)?;
    let mut h = doc.to_presentation()?;
    if let Some(c) = dim_cap {
        h.dim_cap = c;
    }
    let action = doc.to_action(&h)?;
    let name = doc.name.text.clone();
    let mut report = Report::new("check", BTreeMap::from([("name".to_string(), name.clone())]), Some(text));
    let cap = opt.degree_cap;
    let rep = |call: &str| format!("ptdhopf::cli::dsl::parse_presentation(text)?.to_presentation()?{call}");
    report.push(suites::presentation_check(format!("{name}/presentation"), &h, cap, rep(&format!(".validate({cap})"))));
    let words = (h.smash.nx as f64).powi(h.dim_cap as i32);
    let c = if let Some(d) = h.normal_word_dimension() {
        Check::new(format!("{name}/dimension"), Status::Pass, rep(".normal_word_dimension()")).with_outcome(&json!({"dim": d, "method": "normal words"}))
    } else if dim_cap.is_none() && words > 2e5 {
        Check::new(format!("{name}/dimension"), Status::Inconclusive, rep(".truncated_dimension()"))
            .with_witness(format!("no rewrite system, and the degree-{} slice is too large to count by default; pass --dim-cap", h.dim_cap))
    } else {
        let d = h.truncated_dimension();
        let status = if d.stabilized { Status::Pass } else { Status::Inconclusive };
        let c = Check::new(format!("{name}/dimension"), status, rep(".truncated_dimension()"))
            .with_outcome(&json!({"dim": d.dim, "stabilized": d.stabilized, "cap": d.cap, "method": "truncated"}));
        if d.stabilized {
            c
        } else {
            c.with_witness(format!("slice dimension {} did not stabilize by degree {}", d.dim, d.cap))
        }
    };
    report.push(c);
    if let Some(a) = action {
        let call = "doc.to_action(&h)?.unwrap()";
        match crate::action::verify_all(&a, cap) {
            Ok(r) => {
                for c in suites::action_checks(&name, &r, call, cap) {
                    report.push(c);
                }
            }
            Err(e) => report.push(Check::new(format!("{name}/action"), Status::Fail, format!("ptdhopf::action::verify_all(&{call}, {cap})")).with_witness(e.to_string())),
        }
    }
    report.finish();
    Ok(report)
}

/// The canonical text of a document, or of a catalog algebra with its action.
pub fn print_document(args: &[String]) -> Result<String, String> {
    if args.iter().any(|a| a.contains('=')) {
        let p = parse_params(args).map_err(|e| e.to_string())?;
        let e = catalog_entry(&p).map_err(|e| e.to_string())?;
        let mut doc = presentation_doc(&e.hopf).map_err(|e| e.to_string())?;
        if let Some(row) = &e.action {
            doc.action = Some(action_doc(&row.action).map_err(|e| e.to_string())?);
        }
        return Ok(doc.to_string());
    }
    let path = args.first().map(|s| s.as_str()).unwrap_or("-");
    let text = read_input(path).map_err(|e| e.to_string())?;
    let doc = parse_presentation(&text).map_err(|e| format!("{path}:{e}"))?;
    doc.to_presentation().map_err(|e| format!("{path}:{e}"))?;
    Ok(doc.to_string())
}

fn emit(report: &Report, json_path: &Option<PathBuf>) -> i32 {
    print!("{}", report.summary());
    if let Some(p) = json_path {
        if let Err(e) = std::fs::write(p, report.to_json() + "\n") {
            eprintln!("error: {}: {e}", p.display());
            return 2;
        }
    }
    report.exit_code()
}

/// Parse arguments and run; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let opt = SuiteOptions { degree_cap: cli.degree_cap, seed: cli.seed };
    let suite = |name: &str, extra: Option<(&str, &str)>, params: &[String]| -> Result<Report, UsageError> {
        let mut p = parse_params(params)?;
        if let Some((k, v)) = extra {
            p.insert(k.into(), v.into());
        }
        run_suite(name, &p, opt)
    };
    let result = match &cli.command {
        Command::Check { input } => match read_input(input) {
            Ok(text) => check_document(&text, opt, cli.dim_cap).map_err(|d| format!("{input}:{d}")),
            Err(e) => Err(e.to_string()),
        },
        Command::Print { args } => {
            return match print_document(args) {
                Ok(s) => {
                    print!("{s}");
                    0
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            };
        }
        Command::Suite { name, params } => suite(name, None, params).map_err(|e| e.to_string()),
        Command::Classify { family, params } => suite("classify", Some(("family", family)), params).map_err(|e| e.to_string()),
        Command::Twist { params } => suite("twists", None, params).map_err(|e| e.to_string()),
        Command::SolveJq { params } => suite("jq-solver", None, params).map_err(|e| e.to_string()),
    };
    match result {
        Ok(r) => emit(&r, &cli.json),
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
