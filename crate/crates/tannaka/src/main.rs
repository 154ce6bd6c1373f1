//! Command-line front end: load a JSON model, validate it, reconstruct the
//! (weak) bialgebra on E_F, run axiom suites, and evaluate DSL terms.
//!
//! Exit codes: 0 pass, 1 axiom/validation failure, 2 input or typing error,
//! 3 construction failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tannaka::diagterm::{boundary_to_string, parse as parse_term, TermError};
use tannaka::model::{
    load_model, reconstruct_model, reconstruction_output, run_suites, validate_model, JsonMatrix,
    Model, SuiteName, ValidateOutcome,
};
use tannaka::reconstruct::MuOrder;
use tannaka::report::{AxiomReport, ValidationReport};

#[derive(Parser)]
#[command(name = "tannaka", version, about = "Exact Tannaka reconstruction and axiom checking")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Override the model's multiplication order convention
    #[arg(long, global = true, value_parser = parse_mu_order)]
    mu_order: Option<MuOrder>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn parse_mu_order(text: &str) -> Result<MuOrder, String> {
    MuOrder::parse(text)
        .ok_or_else(|| "expected 'left-acts-outer' or 'right-acts-outer'".to_string())
}

fn parse_suite(text: &str) -> Result<SuiteName, String> {
    SuiteName::parse(text).ok_or_else(|| {
        "expected one of functor, monoid, comonoid, bialgebra, weak-bialgebra, hopf, weak-hopf, all"
            .to_string()
    })
}

#[derive(Subcommand)]
enum Command {
    /// Check that the category, dual, and functor tables are coherent
    Validate { file: PathBuf },
    /// Compute E_F and its structure maps, emitting a result document
    Reconstruct {
        file: PathBuf,
        /// Write the result document here instead of stdout
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run an axiom suite against the reconstruction
    Check {
        file: PathBuf,
        #[arg(long, value_parser = parse_suite)]
        suite: SuiteName,
    },
    /// Evaluate a DSL term (or a named term from the model) to a matrix
    Eval {
        file: PathBuf,
        /// A term string, or the name of an entry in the model's terms block
        #[arg(long)]
        term: String,
    },
}

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CONSTRUCTION: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

type Failure = (u8, String);

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Validate { file } => cmd_validate(cli, file),
        Command::Reconstruct { file, out } => cmd_reconstruct(cli, file, out.as_deref()),
        Command::Check { file, suite } => cmd_check(cli, file, *suite),
        Command::Eval { file, term } => cmd_eval(cli, file, term),
    }
}

fn load(cli: &Cli, file: &std::path::Path) -> Result<Model, Failure> {
    let mut model = load_model(file).map_err(|e| (EXIT_INPUT, e.to_string()))?;
    if let Some(order) = cli.mu_order {
        model.mu_order = order;
    }
    Ok(model)
}

fn emit_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output documents always serialize")
}

// --------------------------------------------------------------------------
// validate
// --------------------------------------------------------------------------

#[derive(Serialize)]
struct ValidateDocument<'a> {
    axiom_suites: &'a [AxiomReport],
    tables: &'a [ValidationReport],
    well_formed: bool,
}

fn render_table_report(r: &ValidationReport, out: &mut String) {
    if r.ok() {
        out.push_str(&format!("table {}: ok\n", r.context));
    } else {
        out.push_str(&format!("table {}: FAIL\n", r.context));
        for v in &r.violations {
            out.push_str(&format!("  violation {}: {}\n", v.law, v.witness));
        }
    }
}

fn render_axiom_report(r: &AxiomReport, out: &mut String) {
    out.push_str(&format!(
        "suite {}: {}\n",
        r.suite,
        if r.all_pass() { "pass" } else { "FAIL" }
    ));
    for res in &r.results {
        if res.pass {
            out.push_str(&format!("  pass {}\n", res.name));
        } else if let Some(w) = &res.witness {
            out.push_str(&format!(
                "  FAIL {} at ({},{}): {} != {}\n",
                res.name, w.row, w.col, w.lhs, w.rhs
            ));
        } else {
            out.push_str(&format!("  FAIL {}\n", res.name));
        }
    }
}

fn cmd_validate(cli: &Cli, file: &std::path::Path) -> Result<u8, Failure> {
    let model = load(cli, file)?;
    let outcome: ValidateOutcome = validate_model(&model);
    match cli.format {
        Format::Json => {
            let doc = ValidateDocument {
                axiom_suites: &outcome.axiom_reports,
                tables: &outcome.reports,
                well_formed: outcome.well_formed(),
            };
            println!("{}", emit_json(&doc));
        }
        Format::Text => {
            let mut text = String::new();
            for r in &outcome.reports {
                render_table_report(r, &mut text);
            }
            for r in &outcome.axiom_reports {
                render_axiom_report(r, &mut text);
            }
            text.push_str(&format!(
                "well-formed: {}\n",
                if outcome.well_formed() { "yes" } else { "no" }
            ));
            print!("{text}");
        }
    }
    Ok(if outcome.well_formed() { 0 } else { EXIT_FAIL })
}

// --------------------------------------------------------------------------
// reconstruct
// --------------------------------------------------------------------------

fn cmd_reconstruct(
    cli: &Cli,
    file: &std::path::Path,
    out: Option<&std::path::Path>,
) -> Result<u8, Failure> {
    let model = load(cli, file)?;
    let outcome = validate_model(&model);
    if !outcome.well_formed() {
        return Err((EXIT_INPUT, "model tables are not well-formed; run validate".into()));
    }
    let recon = reconstruct_model(&model).map_err(|e| (EXIT_CONSTRUCTION, e.to_string()))?;
    let doc = reconstruction_output(&model, &recon);
    let rendered = emit_json(&doc);
    match out {
        Some(path) => {
            std::fs::write(path, format!("{rendered}\n"))
                .map_err(|e| (EXIT_INPUT, format!("cannot write {}: {e}", path.display())))?;
            if cli.format == Format::Text {
                println!("dim E_F = {}; wrote {}", doc.dim_end, path.display());
            }
        }
        None => println!("{rendered}"),
    }
    Ok(0)
}

// --------------------------------------------------------------------------
// check
// --------------------------------------------------------------------------

#[derive(Serialize)]
struct CheckDocument<'a> {
    pass: bool,
    suites: &'a [AxiomReport],
}

fn cmd_check(cli: &Cli, file: &std::path::Path, suite: SuiteName) -> Result<u8, Failure> {
    let model = load(cli, file)?;
    let outcome = validate_model(&model);
    if !outcome.well_formed() {
        return Err((EXIT_INPUT, "model tables are not well-formed; run validate".into()));
    }
    let recon = reconstruct_model(&model).map_err(|e| (EXIT_CONSTRUCTION, e.to_string()))?;
    let reports = run_suites(&model, &recon, suite);
    let pass = reports.iter().all(AxiomReport::all_pass);
    match cli.format {
        Format::Json => {
            let doc = CheckDocument { pass, suites: &reports };
            println!("{}", emit_json(&doc));
        }
        Format::Text => {
            let mut text = String::new();
            for r in &reports {
                render_axiom_report(r, &mut text);
            }
            text.push_str(&format!("result: {}\n", if pass { "pass" } else { "FAIL" }));
            print!("{text}");
        }
    }
    Ok(if pass { 0 } else { EXIT_FAIL })
}

// --------------------------------------------------------------------------
// eval
// --------------------------------------------------------------------------

#[derive(Serialize)]
struct EvalDocument {
    matrix: JsonMatrix,
    source: String,
    target: String,
    term: String,
}

fn term_failure(e: TermError) -> Failure {
    let code = match e {
        TermError::Parse { .. } | TermError::Type(_) => EXIT_INPUT,
        TermError::Eval(_) => EXIT_CONSTRUCTION,
    };
    (code, e.to_string())
}

fn cmd_eval(cli: &Cli, file: &std::path::Path, term: &str) -> Result<u8, Failure> {
    let model = load(cli, file)?;
    let outcome = validate_model(&model);
    if !outcome.well_formed() {
        return Err((EXIT_INPUT, "model tables are not well-formed; run validate".into()));
    }
    let recon = reconstruct_model(&model).map_err(|e| (EXIT_CONSTRUCTION, e.to_string()))?;
    let source_text = model.terms.get(term).map(String::as_str).unwrap_or(term);
    let parsed = parse_term(source_text).map_err(term_failure)?;
    let ctx = model.term_context(&recon);
    let (src, dst) = ctx.typecheck(&parsed).map_err(term_failure)?;
    let matrix = ctx.evaluate(&parsed).map_err(term_failure)?;
    let source = boundary_to_string(&src, &model.cat);
    let target = boundary_to_string(&dst, &model.cat);
    match cli.format {
        Format::Json => {
            let rows: JsonMatrix = (0..matrix.rows())
                .map(|i| (0..matrix.cols()).map(|j| matrix.get(i, j).to_string()).collect())
                .collect();
            let doc = EvalDocument {
                matrix: rows,
                source,
                target,
                term: parsed.to_string(),
            };
            println!("{}", emit_json(&doc));
        }
        Format::Text => {
            println!("{parsed} : {source} -> {target}");
            for i in 0..matrix.rows() {
                let row: Vec<String> =
                    (0..matrix.cols()).map(|j| matrix.get(i, j).to_string()).collect();
                println!("[{}]", row.join(", "));
            }
        }
    }
    Ok(0)
}
