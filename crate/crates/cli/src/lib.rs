//! Command-line front end: space and mapping documents in, verdicts and
//! machine-readable reports out.
//!
//! Exit codes: 0 when every requested check passes, 1 when a mathematical
//! check fails (the witness is in the report), 2 for usage or parse errors
//! and for inputs that exceed the configured budgets. `--json` mirrors the
//! human report as JSON; equal inputs produce byte-identical output. The
//! `SOFTTOP_SIZE_CAP` environment variable overrides the topology size cap.

pub mod docs;
pub mod error;
pub mod fuzz;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use softtop::{
    continuity, embedding, product_topology, ContinuityMethod, Error as EngineError, SoftMapping,
    SoftSpace, DEFAULT_SIZE_CAP,
};

use crate::docs::ResolvedSpace;
use crate::error::{CliError, CliResult};

#[derive(Parser)]
#[command(
    name = "softtop",
    version,
    about = "Finite soft sets, soft topologies, and embedding checks"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a space document and verify the soft topology axioms.
    CheckTopology {
        space: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compute the soft closure of a named soft set in a space.
    Closure {
        space: PathBuf,
        /// Name of the soft set inside the document.
        #[arg(long)]
        set: String,
        #[arg(long)]
        json: bool,
    },
    /// Check soft continuity of a mapping between two spaces.
    Continuity {
        mapping: PathBuf,
        /// Source space document (defaults to the mapping's `src` field).
        #[arg(long)]
        src: Option<PathBuf>,
        /// Target space document (defaults to the mapping's `dst` field).
        #[arg(long)]
        dst: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        #[arg(long)]
        json: bool,
    },
    /// Build the soft product topology of one or more spaces.
    Product {
        #[arg(required = true)]
        spaces: Vec<PathBuf>,
        /// Write the product space as a document to this path.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run the embedding-lemma verifier on a config document.
    EmbedLemma {
        config: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Sweep the differential property battery over seeded random instances.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        iters: u64,
        #[arg(long, default_value_t = 3)]
        max_universe: usize,
        #[arg(long, default_value_t = 2)]
        max_params: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Pointwise,
    Open,
    Closed,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<ContinuityMethod> {
        match self {
            MethodArg::Pointwise => vec![ContinuityMethod::Pointwise],
            MethodArg::Open => vec![ContinuityMethod::OpenPreimage],
            MethodArg::Closed => vec![ContinuityMethod::ClosedPreimage],
            MethodArg::All => vec![
                ContinuityMethod::Pointwise,
                ContinuityMethod::OpenPreimage,
                ContinuityMethod::ClosedPreimage,
            ],
        }
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap uses exit code 2 for usage errors and 0 for help/version.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn size_cap() -> usize {
    std::env::var("SOFTTOP_SIZE_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_SIZE_CAP)
}

fn dispatch(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::CheckTopology { space, json } => check_topology(&space, json),
        Command::Closure { space, set, json } => closure(&space, &set, json),
        Command::Continuity {
            mapping,
            src,
            dst,
            method,
            json,
        } => continuity_cmd(&mapping, src.as_deref(), dst.as_deref(), method, json),
        Command::Product { spaces, emit, json } => product(&spaces, emit.as_deref(), json),
        Command::EmbedLemma { config, json } => embed_lemma(&config, json),
        Command::Fuzz {
            seed,
            iters,
            max_universe,
            max_params,
            json,
        } => {
            let report = fuzz::run(&fuzz::FuzzOptions {
                seed,
                iters,
                max_universe,
                max_params,
            });
            if json {
                print_json(&report);
            } else {
                println!(
                    "fuzz seed={} iters={} max-universe={} max-params={}",
                    report.seed, report.iterations, report.max_universe, report.max_params
                );
                for stat in &report.properties {
                    println!(
                        "  {}: {} instances, {} failures",
                        stat.name, stat.instances, stat.failures
                    );
                }
                for failure in &report.failures {
                    println!(
                        "  FAIL instance {} property {}: {}",
                        failure.instance, failure.property, failure.detail
                    );
                }
                println!("result: {}", if report.ok { "ok" } else { "FAIL" });
            }
            Ok(if report.ok { 0 } else { 1 })
        }
    }
}

fn print_json<T: Serialize>(report: &T) {
    let mut text = serde_json::to_string_pretty(report).expect("reports always serialize");
    text.push('\n');
    print!("{text}");
}

#[derive(Serialize)]
struct CheckTopologyReport {
    command: &'static str,
    path: String,
    ok: bool,
    universe: usize,
    params: usize,
    opens: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    notices: Vec<String>,
}

fn check_topology(path: &Path, json: bool) -> CliResult<i32> {
    let report = match docs::parse_space(path, size_cap()) {
        Ok(resolved) => CheckTopologyReport {
            command: "check-topology",
            path: resolved.path.clone(),
            ok: true,
            universe: resolved.ctx.universe_len(),
            params: resolved.ctx.params_len(),
            opens: resolved.space.open_count(),
            witness: None,
            notices: resolved.notices,
        },
        Err(CliError::AxiomViolation { path, witness }) => CheckTopologyReport {
            command: "check-topology",
            path,
            ok: false,
            universe: 0,
            params: 0,
            opens: 0,
            witness: Some(witness),
            notices: Vec::new(),
        },
        Err(other) => return Err(other),
    };
    if json {
        print_json(&report);
    } else if report.ok {
        println!(
            "check-topology {}: ok ({} elements, {} parameters, {} opens)",
            report.path, report.universe, report.params, report.opens
        );
        for notice in &report.notices {
            println!("  note: {notice}");
        }
    } else {
        println!(
            "check-topology {}: FAIL — {}",
            report.path,
            report.witness.as_deref().unwrap_or("unknown")
        );
    }
    Ok(if report.ok { 0 } else { 1 })
}

#[derive(Serialize)]
struct ClosureReport {
    command: &'static str,
    path: String,
    set: String,
    input: String,
    closure: String,
    input_is_closed: bool,
}

fn closure(path: &Path, set_name: &str, json: bool) -> CliResult<i32> {
    let resolved = docs::parse_space(path, size_cap())?;
    let set = resolved
        .named_sets
        .get(set_name)
        .ok_or_else(|| CliError::UnknownName {
            path: resolved.path.clone(),
            name: set_name.to_string(),
        })?;
    let closure = resolved.space.closure(set)?;
    let report = ClosureReport {
        command: "closure",
        path: resolved.path.clone(),
        set: set_name.to_string(),
        input: set.to_string(),
        closure: closure.to_string(),
        input_is_closed: &closure == set,
    };
    if json {
        print_json(&report);
    } else {
        println!("closure of {:?} in {}", report.set, report.path);
        println!("  input:   {}", report.input);
        println!("  closure: {}", report.closure);
        println!("  input is closed: {}", report.input_is_closed);
    }
    Ok(0)
}

#[derive(Serialize)]
struct MethodVerdict {
    method: &'static str,
    continuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

#[derive(Serialize)]
struct ContinuityCmdReport {
    command: &'static str,
    mapping: String,
    src: String,
    dst: String,
    methods: Vec<MethodVerdict>,
    continuous: bool,
}

fn continuity_cmd(
    mapping_path: &Path,
    src: Option<&Path>,
    dst: Option<&Path>,
    method: MethodArg,
    json: bool,
) -> CliResult<i32> {
    let (doc_src, doc_dst) = docs::mapping_space_refs(mapping_path)?;
    let src_path = src
        .map(Path::to_path_buf)
        .or(doc_src)
        .ok_or_else(|| CliError::Parse {
            path: mapping_path.display().to_string(),
            detail: "no source space: pass --src or set the document's src field".into(),
        })?;
    let dst_path = dst
        .map(Path::to_path_buf)
        .or(doc_dst)
        .ok_or_else(|| CliError::Parse {
            path: mapping_path.display().to_string(),
            detail: "no target space: pass --dst or set the document's dst field".into(),
        })?;
    let src_space = docs::parse_space(&src_path, size_cap())?;
    let dst_space = docs::parse_space(&dst_path, size_cap())?;
    let mapping = docs::parse_mapping(mapping_path, &src_space, &dst_space)?;

    let mut verdicts = Vec::new();
    for m in method.methods() {
        let report = continuity::is_continuous(&mapping, &src_space.space, &dst_space.space, m)?;
        verdicts.push(MethodVerdict {
            method: m.name(),
            continuous: report.verdict,
            witness: report.witness.map(|w| match w {
                softtop::ContinuityWitness::Point(p) => format!("at soft point {p}"),
                softtop::ContinuityWitness::Open(o) => {
                    format!("open set {o} has a non-open inverse image")
                }
                softtop::ContinuityWitness::Closed(c) => {
                    format!("closed set {c} has a non-closed inverse image")
                }
            }),
        });
    }
    let continuous = verdicts.iter().all(|v| v.continuous);
    let report = ContinuityCmdReport {
        command: "continuity",
        mapping: mapping_path.display().to_string(),
        src: src_path.display().to_string(),
        dst: dst_path.display().to_string(),
        methods: verdicts,
        continuous,
    };
    if json {
        print_json(&report);
    } else {
        println!(
            "continuity {} from {} to {}",
            report.mapping, report.src, report.dst
        );
        for v in &report.methods {
            match &v.witness {
                Some(w) => println!("  {}: NOT continuous ({w})", v.method),
                None => println!("  {}: continuous", v.method),
            }
        }
        println!(
            "verdict: {}",
            if report.continuous {
                "continuous"
            } else {
                "NOT continuous"
            }
        );
    }
    Ok(if report.continuous { 0 } else { 1 })
}

#[derive(Serialize)]
struct ProductReport {
    command: &'static str,
    factors: Vec<String>,
    universe: usize,
    params: usize,
    opens: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    emitted: Option<String>,
}

fn product(space_paths: &[PathBuf], emit: Option<&Path>, json: bool) -> CliResult<i32> {
    let resolved: Vec<ResolvedSpace> = space_paths
        .iter()
        .map(|p| docs::parse_space(p, size_cap()))
        .collect::<CliResult<_>>()?;
    let spaces: Vec<&SoftSpace> = resolved.iter().map(|r| &r.space).collect();
    let (product, space) = product_topology::product_topology_capped(
        &spaces,
        softtop::DEFAULT_CELL_BUDGET,
        size_cap(),
    )?;
    let emitted = match emit {
        Some(path) => {
            let doc = docs::space_to_document(&space);
            docs::write_document(path, &doc)?;
            Some(path.display().to_string())
        }
        None => None,
    };
    let report = ProductReport {
        command: "product",
        factors: resolved.iter().map(|r| r.path.clone()).collect(),
        universe: product.ctx().universe_len(),
        params: product.ctx().params_len(),
        opens: space.open_count(),
        emitted,
    };
    if json {
        print_json(&report);
    } else {
        println!(
            "product of {}: {} opens over {} elements x {} parameters",
            report.factors.join(", "),
            report.opens,
            report.universe,
            report.params
        );
        if let Some(path) = &report.emitted {
            println!("  emitted to {path}");
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct EmbedLemmaReport {
    command: &'static str,
    config: String,
    map_continuity: Vec<bool>,
    separates_points: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    point_witness: Option<String>,
    separates_points_from_closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_witness: Option<String>,
    hypotheses_hold: bool,
    diagonal_continuous: bool,
    diagonal_injective: bool,
    diagonal_closed_into_image: bool,
    diagonal_route: &'static str,
    diagonal_overall: bool,
    diagonal_image_in_product: bool,
    lemma_violated: bool,
}

fn embed_lemma(config_path: &Path, json: bool) -> CliResult<i32> {
    let (config, base) = docs::parse_lemma_config(config_path)?;
    let domain = docs::parse_space(&base.join(&config.space), size_cap())?;
    let mut target_spaces = Vec::new();
    for target in &config.targets {
        let space = docs::parse_space(&base.join(&target.space), size_cap())?;
        target_spaces.push(space);
    }
    let mut mappings: Vec<SoftMapping> = Vec::new();
    for (target, space) in config.targets.iter().zip(&target_spaces) {
        mappings.push(docs::parse_mapping(
            &base.join(&target.mapping),
            &domain,
            space,
        )?);
    }
    let targets: Vec<(&SoftSpace, &SoftMapping)> = target_spaces
        .iter()
        .map(|r| &r.space)
        .zip(mappings.iter())
        .collect();

    let (lemma_report, violated) = match embedding::verify_embedding_lemma(&domain.space, &targets)
    {
        Ok(report) => (report, false),
        Err(EngineError::LemmaViolation(report)) => (*report, true),
        Err(other) => return Err(other.into()),
    };
    let report = EmbedLemmaReport {
        command: "embed-lemma",
        config: config_path.display().to_string(),
        map_continuity: lemma_report.map_continuity.clone(),
        separates_points: lemma_report.separation.separates_points,
        point_witness: lemma_report
            .separation
            .point_witness
            .as_ref()
            .map(|(p, q)| format!("{p} and {q} share every image")),
        separates_points_from_closed: lemma_report.separation.separates_points_from_closed,
        closed_witness: lemma_report
            .separation
            .closed_witness
            .as_ref()
            .map(|(c, p)| format!("point {p} outside {c} is not separated from it")),
        hypotheses_hold: lemma_report.hypotheses_hold,
        diagonal_continuous: lemma_report.diagonal.continuous,
        diagonal_injective: lemma_report.diagonal.injective,
        diagonal_closed_into_image: lemma_report.diagonal.closed_into_image,
        diagonal_route: match lemma_report.diagonal.route {
            embedding::EmbeddingRoute::CorestrictionHomeomorphism => "corestriction-homeomorphism",
            embedding::EmbeddingRoute::ContinuousInjectiveClosed => "continuous-injective-closed",
        },
        diagonal_overall: lemma_report.diagonal.overall,
        diagonal_image_in_product: lemma_report.diagonal_image_in_product,
        lemma_violated: violated,
    };
    if json {
        print_json(&report);
    } else {
        println!("embedding lemma on {}", report.config);
        println!("  mapping continuity: {:?}", report.map_continuity);
        match &report.point_witness {
            Some(w) => println!("  separates points: false ({w})"),
            None => println!("  separates points: {}", report.separates_points),
        }
        match &report.closed_witness {
            Some(w) => println!("  separates points from closed sets: false ({w})"),
            None => println!(
                "  separates points from closed sets: {}",
                report.separates_points_from_closed
            ),
        }
        println!(
            "  hypotheses: {}",
            if report.hypotheses_hold {
                "hold"
            } else {
                "do not hold"
            }
        );
        println!(
            "  diagonal: continuous={} injective={} closed-into-image={} route={} overall={}",
            report.diagonal_continuous,
            report.diagonal_injective,
            report.diagonal_closed_into_image,
            report.diagonal_route,
            report.diagonal_overall
        );
        println!(
            "  diagonal image within product of images: {}",
            report.diagonal_image_in_product
        );
        println!(
            "verdict: {}",
            if report.lemma_violated {
                "LEMMA VIOLATED"
            } else {
                "ok"
            }
        );
    }
    Ok(if report.lemma_violated { 1 } else { 0 })
}
