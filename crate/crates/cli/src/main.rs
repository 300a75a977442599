//! `chainlet`: run the identity/convergence experiments, quantize chains into
//! element chains, integrate forms, and bracket natural norms.
//!
//! Exit codes: 0 all checks passed, 1 identity failure, 2 input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use chainlet_cli::experiments::{self, ExperimentId, ExperimentSpec};
use chainlet_core::io::{BracketJson, CertJson, ChainJson, ElementChainJson, FormJson};
use chainlet_core::norms::{bracket_poly, DecompositionCert};
use chainlet_core::quantize::quantize_chain;
use chainlet_core::region::AxisBox;
use chainlet_core::FormDictionary;

#[derive(Parser)]
#[command(name = "chainlet", about = "chainlet calculus experiment harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment (E1..E8, or `all`) and emit its result table.
    Run(RunArgs),
    /// Quantize a polyhedral chain into an element chain at a dyadic level.
    Quantize(QuantizeArgs),
    /// Integrate a form over a chain (polyhedral or element JSON).
    Integrate(IntegrateArgs),
    /// Bracket the r-natural norm of a chain, with an optional certificate.
    Norm(NormArgs),
}

#[derive(Args)]
struct RunArgs {
    /// E1..E8 or `all`
    experiment: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Level range `a..b` (inclusive)
    #[arg(long)]
    levels: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Dictionary monomial degree cap (exact norms exist up to 2)
    #[arg(long, default_value_t = 2)]
    dict_degree: u32,
    /// Directory for per-experiment output files; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct QuantizeArgs {
    chain: PathBuf,
    #[arg(long)]
    level: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IntegrateArgs {
    chain: PathBuf,
    form: PathBuf,
}

#[derive(Args)]
struct NormArgs {
    chain: PathBuf,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {}", message);
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Run(args) => run_experiments(args),
        Command::Quantize(args) => quantize_command(args).map(|()| true),
        Command::Integrate(args) => integrate_command(args).map(|()| true),
        Command::Norm(args) => norm_command(args).map(|()| true),
    }
}

fn parse_levels(text: &str) -> Result<(u32, u32), String> {
    let parts: Vec<&str> = text.split("..").collect();
    if parts.len() != 2 {
        return Err(format!("levels must look like `a..b`, got `{}`", text));
    }
    let a = parts[0].parse::<u32>().map_err(|e| e.to_string())?;
    let b = parts[1].parse::<u32>().map_err(|e| e.to_string())?;
    Ok((a, b))
}

fn run_experiments(args: RunArgs) -> Result<bool, String> {
    let ids: Vec<ExperimentId> = if args.experiment.eq_ignore_ascii_case("all") {
        ExperimentId::all().to_vec()
    } else {
        vec![ExperimentId::parse(&args.experiment)
            .ok_or_else(|| format!("unknown experiment `{}`", args.experiment))?]
    };
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    }
    let mut all_passed = true;
    for id in ids {
        let mut spec = ExperimentSpec::new(id);
        spec.n = args.n;
        spec.k = args.k;
        spec.seed = args.seed;
        spec.dict_degree = args.dict_degree;
        if let Some(levels) = &args.levels {
            spec.levels = parse_levels(levels)?;
        }
        let table = experiments::run(&spec).map_err(|e| e.to_string())?;
        eprintln!(
            "{}: {} rows, seed {}, {}",
            table.id,
            table.rows.len(),
            table.seed,
            if table.pass { "pass" } else { "FAIL" }
        );
        for note in &table.notes {
            eprintln!("  {}", note);
        }
        let output: Vec<u8> = {
            let mut buf = Vec::new();
            match args.format {
                Format::Csv => table.write_csv(&mut buf).map_err(|e| e.to_string())?,
                Format::Json => table.write_json(&mut buf).map_err(|e| e.to_string())?,
            }
            buf
        };
        match &args.out {
            Some(dir) => {
                let ext = match args.format {
                    Format::Csv => "csv",
                    Format::Json => "json",
                };
                let path = dir.join(format!("{}.{}", table.id, ext));
                fs::write(&path, output).map_err(|e| e.to_string())?;
            }
            None => {
                use std::io::Write;
                std::io::stdout()
                    .write_all(&output)
                    .map_err(|e| e.to_string())?;
            }
        }
        all_passed &= table.pass;
    }
    Ok(all_passed)
}

#[derive(Serialize)]
struct QuantizeOutput {
    chain: ElementChainJson,
    report: ReportJson,
}

#[derive(Serialize)]
struct ReportJson {
    level: u32,
    element_count: usize,
    total_mass: f64,
    bound: f64,
    deficit: f64,
}

fn quantize_command(args: QuantizeArgs) -> Result<(), String> {
    let text = fs::read_to_string(&args.chain).map_err(|e| e.to_string())?;
    let parsed: ChainJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let chain = parsed.to_chain().map_err(|e| e.to_string())?;
    let (elements, report) = quantize_chain(&chain, args.level).map_err(|e| e.to_string())?;
    let output = QuantizeOutput {
        chain: ElementChainJson::from_chain(&elements),
        report: ReportJson {
            level: report.level,
            element_count: report.element_count,
            total_mass: report.total_mass,
            bound: report.bound,
            deficit: report.deficit,
        },
    };
    let rendered = serde_json::to_string_pretty(&output).map_err(|e| e.to_string())?;
    match &args.out {
        Some(path) => fs::write(path, rendered).map_err(|e| e.to_string())?,
        None => println!("{}", rendered),
    }
    Ok(())
}

fn integrate_command(args: IntegrateArgs) -> Result<(), String> {
    let form_text = fs::read_to_string(&args.form).map_err(|e| e.to_string())?;
    let form_json: FormJson = serde_json::from_str(&form_text).map_err(|e| e.to_string())?;
    let form = form_json.to_form().map_err(|e| e.to_string())?;

    let chain_text = fs::read_to_string(&args.chain).map_err(|e| e.to_string())?;
    // accept either the polyhedral or the element-chain format
    let value = match serde_json::from_str::<ChainJson>(&chain_text) {
        Ok(parsed) => match parsed.to_chain() {
            Ok(chain) => chain.integrate(&form).map_err(|e| e.to_string())?,
            Err(_) => parse_element_and_integrate(&chain_text, &form)?,
        },
        Err(_) => parse_element_and_integrate(&chain_text, &form)?,
    };
    println!("{{\"value\": {}}}", value);
    Ok(())
}

fn parse_element_and_integrate(
    text: &str,
    form: &chainlet_core::DifferentialForm,
) -> Result<f64, String> {
    let parsed: ElementChainJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let chain = parsed.to_chain().map_err(|e| e.to_string())?;
    chain.integrate(form).map_err(|e| e.to_string())
}

fn norm_command(args: NormArgs) -> Result<(), String> {
    let text = fs::read_to_string(&args.chain).map_err(|e| e.to_string())?;
    let parsed: ChainJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let chain = parsed.to_chain().map_err(|e| e.to_string())?;

    let cert = match &args.cert {
        Some(path) => {
            let cert_text = fs::read_to_string(path).map_err(|e| e.to_string())?;
            let cert_json: CertJson =
                serde_json::from_str(&cert_text).map_err(|e| e.to_string())?;
            cert_json.to_cert().map_err(|e| e.to_string())?
        }
        None => DecompositionCert::trivial(&chain),
    };

    // dictionary over a box covering the support with margin
    let mut reach = 1.0f64;
    for p in chain.support_points() {
        for &x in p {
            reach = reach.max(x.abs() + 1.0);
        }
    }
    let region = AxisBox::centered(chain.n(), reach);
    let dict = FormDictionary::monomials_all_grades(chain.n(), 2, &region, args.r.max(1))
        .map_err(|e| e.to_string())?;
    let bracket = bracket_poly(&chain, &cert, args.r, &dict, "supplied certificate")
        .map_err(|e| e.to_string())?;
    let rendered = serde_json::to_string_pretty(&BracketJson::from_bracket(&bracket))
        .map_err(|e| e.to_string())?;
    println!("{}", rendered);
    Ok(())
}
