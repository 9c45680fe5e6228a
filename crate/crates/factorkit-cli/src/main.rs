//! `factorkit` — feasibility checks, certificates and extremal
//! constructions for fractional degree-prescribed subgraphs.
//!
//! Exit codes: 0 when a command ran to completion (the verdict itself,
//! true or false, lives in the report), 2 for input or usage errors,
//! 3 when an instance exceeds an enumeration cutoff.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use factorkit::{
    box_oracle, corner_oracle, fractional_gf_feasible, gen_mindegree_sharp, gen_neighborhood_sharp,
    has_all_fractional, has_all_fractional_ab, kano_tokushige_hypotheses,
    neighborhood_union_hypotheses, niessen_all_integral, verify_sharpness, worst_set_verdict,
    Cutoffs, DegreeFunc, Error, FactorOutcome, Graph, SharpnessFamily,
};
use report::{apply_verdict, certificate_json, indicator_json, labels_of, Report};

#[derive(Parser)]
#[command(
    name = "factorkit",
    version,
    about = "fractional degree-prescribed subgraph toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit the JSON report instead of human-readable text
    #[arg(long, global = true)]
    json: bool,

    /// Seed echoed into reports, for reproducible pipelines
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Raise the enumeration cutoffs (subset and pair labeling); the
    /// FACTORKIT_MAX_N environment variable does the same
    #[arg(long, global = true)]
    max_n: Option<u32>,

    /// Parallelism budget for the enumeration engines
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide fractional (g,f)-factor feasibility: witness or certificate
    Check {
        graph: PathBuf,
        /// Lower prescription: const:K or file:PATH
        #[arg(long = "g")]
        g: String,
        /// Upper prescription: const:K or file:PATH
        #[arg(long = "f")]
        f: String,
    },
    /// Decide the all-fractional-factors property
    CheckAll {
        graph: PathBuf,
        #[arg(long)]
        a: Option<u32>,
        #[arg(long)]
        b: Option<u32>,
        /// Lower prescription: const:K or file:PATH
        #[arg(long = "g")]
        g: Option<String>,
        /// Upper prescription: const:K or file:PATH
        #[arg(long = "f")]
        f: Option<String>,
        /// Engine: the worst-set minimizer or one of the definitional oracles
        #[arg(long, value_enum, default_value_t = OracleArg::Worst)]
        oracle: OracleArg,
        /// Skip the sufficient-condition shortcut and always enumerate
        #[arg(long)]
        no_fast_path: bool,
    },
    /// Evaluate the sufficient-condition hypotheses for [a, b]
    Analyze {
        graph: PathBuf,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        /// Check the minimum-degree f-factor hypotheses instead, with this
        /// prescription (const:K or file:PATH)
        #[arg(long = "f")]
        f: Option<String>,
    },
    /// Write a sharpness-family graph to a file
    Generate {
        #[arg(value_enum)]
        family: FamilyArg,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        /// Clique multiplier (neighborhood family)
        #[arg(long)]
        m: Option<u32>,
        /// Large-clique size (mindegree family)
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate and verify a sharpness construction
    Sharpness {
        #[arg(value_enum)]
        family: FamilyArg,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
    },
    /// Brute-force integral all-factors check (small n)
    Niessen {
        graph: PathBuf,
        /// Lower prescription: const:K or file:PATH
        #[arg(long = "g")]
        g: String,
        /// Upper prescription: const:K or file:PATH
        #[arg(long = "f")]
        f: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Worst,
    Box,
    Corner,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Neighborhood,
    Mindegree,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = resolve_cutoffs(&cli).and_then(|cutoffs| match cli.workers {
        Some(workers) => rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Domain(format!("cannot build worker pool: {e}")))?
            .install(|| dispatch(&cli, cutoffs)),
        None => dispatch(&cli, cutoffs),
    });
    match outcome {
        Ok(mut report) => {
            report.seed = cli.seed;
            report.elapsed_ms = Some(started.elapsed().as_millis());
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.to_json()).unwrap()
                );
            } else {
                print!("{}", report.render_human());
            }
            ExitCode::SUCCESS
        }
        Err(error) => {
            eprintln!("error: {error}");
            match error {
                Error::Resource(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn resolve_cutoffs(cli: &Cli) -> Result<Cutoffs, Error> {
    let mut cutoffs = Cutoffs::default();
    let from_env = match std::env::var("FACTORKIT_MAX_N") {
        Ok(text) => Some(text.parse::<u32>().map_err(|_| {
            Error::Domain(format!("FACTORKIT_MAX_N must be an integer, got `{text}`"))
        })?),
        Err(_) => None,
    };
    if let Some(max_n) = cli.max_n.or(from_env) {
        cutoffs = cutoffs.with_subset_max_n(max_n);
        cutoffs.labeling_max_n = max_n.min(32);
    }
    Ok(cutoffs)
}

fn parse_prescription(spec: &str, labels: &[String]) -> Result<DegreeFunc, Error> {
    if let Some(value) = spec.strip_prefix("const:") {
        let value = value
            .parse::<u32>()
            .map_err(|_| Error::Domain(format!("bad constant prescription `{spec}`")))?;
        Ok(DegreeFunc::constant(labels.len(), value))
    } else if let Some(path) = spec.strip_prefix("file:") {
        factorkit::io::load_prescription(path, labels)
    } else {
        Err(Error::Domain(format!(
            "prescription spec must be const:K or file:PATH, got `{spec}`"
        )))
    }
}

fn dispatch(cli: &Cli, cutoffs: Cutoffs) -> Result<Report, Error> {
    match &cli.command {
        Command::Check { graph, g, f } => {
            let (graph, labels) = factorkit::io::load_graph(graph)?;
            let lo = parse_prescription(g, &labels)?;
            let hi = parse_prescription(f, &labels)?;
            let mut report = Report::new("check", graph.n(), graph.edge_count());
            report.engine = Some("flow".into());
            match fractional_gf_feasible(&graph, &lo, &hi, cutoffs)? {
                FactorOutcome::Feasible(indicator) => {
                    report.verdict = Some(true);
                    report.indicator = Some(indicator_json(&indicator, &labels));
                }
                FactorOutcome::Infeasible(certificate) => {
                    report.verdict = Some(false);
                    report.certificate = Some(certificate_json(&certificate, &labels));
                }
            }
            Ok(report)
        }
        Command::CheckAll {
            graph,
            a,
            b,
            g,
            f,
            oracle,
            no_fast_path,
        } => {
            let (graph, labels) = factorkit::io::load_graph(graph)?;
            let (lo, hi, constant) = match (a, b, g, f) {
                (Some(a), Some(b), None, None) => (
                    DegreeFunc::constant(graph.n(), *a),
                    DegreeFunc::constant(graph.n(), *b),
                    Some((*a, *b)),
                ),
                (None, None, Some(g), Some(f)) => (
                    parse_prescription(g, &labels)?,
                    parse_prescription(f, &labels)?,
                    None,
                ),
                _ => {
                    return Err(Error::Domain(
                        "provide either --a and --b, or --g and --f".into(),
                    ))
                }
            };
            let verdict = match oracle {
                OracleArg::Box => box_oracle(&graph, &lo, &hi, cutoffs)?,
                OracleArg::Corner => corner_oracle(&graph, &lo, &hi, cutoffs)?,
                OracleArg::Worst if *no_fast_path => worst_set_verdict(&graph, &lo, &hi, cutoffs)?,
                OracleArg::Worst => match constant {
                    Some((a, b)) => has_all_fractional_ab(&graph, a, b, cutoffs)?,
                    None => has_all_fractional(&graph, &lo, &hi, cutoffs)?,
                },
            };
            let mut report = Report::new("check-all", graph.n(), graph.edge_count());
            apply_verdict(&mut report, &verdict, &labels);
            Ok(report)
        }
        Command::Analyze { graph, a, b, f } => {
            let (graph, labels) = factorkit::io::load_graph(graph)?;
            let conditions = match f {
                None => neighborhood_union_hypotheses(&graph, *a, *b)?,
                Some(f) => {
                    let f = parse_prescription(f, &labels)?;
                    kano_tokushige_hypotheses(&graph, *a, *b, &f)?
                }
            };
            let mut report = Report::new("analyze", graph.n(), graph.edge_count());
            report.verdict = Some(conditions.holds);
            report.hypotheses = conditions.hypotheses;
            report.engine = Some("predicate".into());
            Ok(report)
        }
        Command::Generate {
            family,
            a,
            b,
            m,
            r,
            out,
        } => {
            let graph = build_family(*family, *a, *b, *m, *r)?;
            factorkit::io::save_graph(out, &graph)?;
            let mut report = Report::new("generate", graph.n(), graph.edge_count());
            report
                .extra
                .insert("out_file".into(), json!(out.display().to_string()));
            Ok(report)
        }
        Command::Sharpness { family, a, b, m, r } => {
            let sharpness = verify_sharpness(*a, *b, family_params(*family, *m, *r)?, cutoffs)?;
            let labels: Vec<String> = (0..sharpness.n).map(|v| v.to_string()).collect();
            let mut report = Report::new("sharpness", sharpness.n, sharpness.edge_count);
            apply_verdict(&mut report, &sharpness.verdict, &labels);
            report.hypotheses = sharpness.checks.clone();
            report.extra.insert(
                "sharpness".into(),
                json!({
                    "construction": sharpness.construction,
                    "a": sharpness.a,
                    "b": sharpness.b,
                    "m": sharpness.m,
                    "r": sharpness.r,
                    "min_degree": sharpness.min_degree,
                    "nc_min": sharpness.nc_min,
                    "witness": certificate_json(&sharpness.witness, &labels),
                }),
            );
            Ok(report)
        }
        Command::Niessen { graph, g, f } => {
            let (graph, labels) = factorkit::io::load_graph(graph)?;
            let lo = parse_prescription(g, &labels)?;
            let hi = parse_prescription(f, &labels)?;
            let verdict = niessen_all_integral(&graph, &lo, &hi, cutoffs)?;
            let mut report = Report::new("niessen", graph.n(), graph.edge_count());
            report.verdict = Some(verdict.holds);
            report.engine = Some("niessen".into());
            report.certificate = Some(json!({
                "S": labels_of(&verdict.s, &labels),
                "T": labels_of(&verdict.t, &labels),
                "deficiency": verdict.value,
            }));
            report
                .extra
                .insert("threshold".into(), json!(verdict.threshold));
            Ok(report)
        }
    }
}

fn family_params(
    family: FamilyArg,
    m: Option<u32>,
    r: Option<u32>,
) -> Result<SharpnessFamily, Error> {
    match family {
        FamilyArg::Neighborhood => {
            let m = m.ok_or_else(|| Error::Domain("neighborhood family needs --m".into()))?;
            Ok(SharpnessFamily::Neighborhood { m })
        }
        FamilyArg::Mindegree => {
            let r = r.ok_or_else(|| Error::Domain("mindegree family needs --r".into()))?;
            Ok(SharpnessFamily::MinDegree { r })
        }
    }
}

fn build_family(
    family: FamilyArg,
    a: u32,
    b: u32,
    m: Option<u32>,
    r: Option<u32>,
) -> Result<Graph, Error> {
    match family_params(family, m, r)? {
        SharpnessFamily::Neighborhood { m } => gen_neighborhood_sharp(a, b, m),
        SharpnessFamily::MinDegree { r } => gen_mindegree_sharp(a, b, r),
    }
}
