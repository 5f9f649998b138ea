//! Batch front door for the Ding projective dimension engine: parse
//! algebra/module/complex documents, dispatch computations, emit reports.
//!
//! Exit codes: 0 for computed verdicts (undetermined included), 1 for input
//! errors, 2 for internal certificate-replay failures.

mod cache;

use anyhow::Context;
use cache::Cache;
use clap::{Args, Parser, Subcommand, ValueEnum};
use dpd_core::complex::ExtInt;
use dpd_core::doc::{
    algebra_from_doc, complex_from_doc, complex_to_doc, complex_verdict_to_json,
    dp_verdict_to_json, matrix_to_rows, module_from_doc, module_to_doc, module_verdict_to_json,
    AlgebraDoc, ComplexDoc, ModuleDoc,
};
use dpd_core::error::EngineError;
use dpd_core::suite::{run_suite, Status};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "dpd", version, about = "Exact Ding projective dimension over bound quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Syzygy window for detection ladders.
    #[arg(long, global = true, default_value_t = 20)]
    window: i64,
    /// Seed for randomized batteries.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Report cache keyed by input content; needs the DPD_CACHE directory.
    #[arg(long, global = true, value_enum, default_value_t = Switch::On)]
    cache: Switch,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Args)]
struct AlgebraArg {
    /// Path to the algebra document (JSON).
    #[arg(long)]
    algebra: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Operations on algebra presentations.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Operations on modules.
    Module {
        #[command(subcommand)]
        cmd: ModuleCmd,
    },
    /// Operations on bounded complexes.
    Complex {
        #[command(subcommand)]
        cmd: ComplexCmd,
    },
    /// Materialize a projective resolution.
    Resolve {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long)]
        degree: usize,
    },
    /// Verify total acyclicity on a window: splice a certified module, or
    /// check a materialized complex window directly.
    CheckTa {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long)]
        complex: Option<PathBuf>,
    },
    /// Run the standing property battery.
    Suite,
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Build the algebra and report its basis and invariants.
    Check {
        #[command(flatten)]
        algebra: AlgebraArg,
    },
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// Decide Ding projectivity with a replayable certificate.
    IsDp {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        module: PathBuf,
    },
    /// Ding projective dimension of a module.
    Dpd {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        module: PathBuf,
    },
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// Per-degree homology with hsup and hinf.
    Homology {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        complex: PathBuf,
    },
    /// Ding projective dimension of a bounded complex.
    Dpd {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        complex: PathBuf,
    },
    /// Homology dimensions of RHom(X, U) over a degree range.
    Rhom {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, allow_hyphen_values = true)]
        hi: i64,
    },
}

fn read_doc<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<(T, String)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let doc = serde_json::from_str(&text)
        .with_context(|| format!("cannot parse {}", path.display()))?;
    Ok((doc, text))
}

fn ext_int_json(x: ExtInt) -> Value {
    match x {
        ExtInt::NegInf => json!("-inf"),
        ExtInt::Fin(n) => json!(n),
        ExtInt::PosInf => json!("+inf"),
    }
}

fn render(format: Format, payload: &Value) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(payload).expect("serializable"),
        Format::Text => render_text(payload),
    }
}

fn render_text(v: &Value) -> String {
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match v {
            Value::Object(map) => {
                for (k, val) in map {
                    match val {
                        Value::Object(_) | Value::Array(_) => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            go(val, indent + 1, out);
                        }
                        _ => out.push_str(&format!("{pad}{k}: {val}\n")),
                    }
                }
            }
            Value::Array(items) => {
                for item in items {
                    match item {
                        Value::Object(_) | Value::Array(_) => {
                            out.push_str(&format!("{pad}-\n"));
                            go(item, indent + 1, out);
                        }
                        _ => out.push_str(&format!("{pad}- {item}\n")),
                    }
                }
            }
            other => out.push_str(&format!("{pad}{other}\n")),
        }
    }
    let mut out = String::new();
    go(v, 0, &mut out);
    out
}

fn exit_code_for(err: &anyhow::Error) -> i32 {
    if let Some(e) = err.downcast_ref::<EngineError>() {
        match e {
            EngineError::CertificateReplay(_) => 2,
            _ => 1,
        }
    } else {
        1
    }
}

fn run(cli: Cli) -> anyhow::Result<String> {
    let cache = Cache::new(cli.cache == Switch::On);
    let payload: Value = match &cli.command {
        Command::Algebra { cmd: AlgebraCmd::Check { algebra } } => {
            let (doc, _): (AlgebraDoc, _) = read_doc(&algebra.algebra)?;
            let alg = algebra_from_doc(&doc)?;
            json!({
                "dim": alg.dim(),
                "vertices": alg.vertices(),
                "nilpotency": alg.nilpotency(),
                "commutative": alg.is_commutative(),
                "basis_paths": (0..alg.dim()).map(|i| {
                    let p = alg.basis_path(i);
                    json!({
                        "start": p.start,
                        "arrows": p.word.iter().map(|&a| alg.arrows()[a].id.clone()).collect::<Vec<_>>(),
                    })
                }).collect::<Vec<_>>(),
            })
        }
        Command::Module { cmd } => match cmd {
            ModuleCmd::IsDp { algebra, module } => {
                let (adoc, atext): (AlgebraDoc, _) = read_doc(&algebra.algebra)?;
                let (mdoc, mtext): (ModuleDoc, _) = read_doc(module)?;
                let key = Cache::key(&["is-dp", &atext, &mtext, &cli.window.to_string()]);
                if let Some(hit) = cache.get(&key) {
                    return Ok(hit);
                }
                let alg = algebra_from_doc(&adoc)?;
                let m = module_from_doc(&alg, &mdoc)?;
                let verdict = dpd_core::ding::is_ding_projective(&m, cli.window)?;
                let payload = dp_verdict_to_json(&verdict);
                let rendered = render(cli.format, &payload);
                cache.put(&key, &rendered);
                return Ok(rendered);
            }
            ModuleCmd::Dpd { algebra, module } => {
                let (adoc, atext): (AlgebraDoc, _) = read_doc(&algebra.algebra)?;
                let (mdoc, mtext): (ModuleDoc, _) = read_doc(module)?;
                let key = Cache::key(&["module-dpd", &atext, &mtext, &cli.window.to_string()]);
                if let Some(hit) = cache.get(&key) {
                    return Ok(hit);
                }
                let alg = algebra_from_doc(&adoc)?;
                let m = module_from_doc(&alg, &mdoc)?;
                let verdict = dpd_core::ding::dpd_module(&m, cli.window)?;
                let payload = module_verdict_to_json(&verdict);
                let rendered = render(cli.format, &payload);
                cache.put(&key, &rendered);
                return Ok(rendered);
            }
        },
        Command::Complex { cmd } => match cmd {
            ComplexCmd::Homology { algebra, complex } => {
                let (adoc, _): (AlgebraDoc, _) = read_doc(&algebra.algebra)?;
                let (cdoc, _): (ComplexDoc, _) = read_doc(complex)?;
                let alg = algebra_from_doc(&adoc)?;
                let x = complex_from_doc(&alg, &cdoc)?;
                let profile = x.homology_profile();
                json!({
                    "homology": profile.entries.iter()
                        .map(|(n, dims)| (n.to_string(), json!(dims)))
                        .collect::<serde_json::Map<String, Value>>(),
                    "hsup": ext_int_json(profile.hsup),
                    "hinf": ext_int_json(profile.hinf),
                })
            }
            ComplexCmd::Dpd { algebra, complex } => {
                let (adoc, atext): (AlgebraDoc, _) = read_doc(&algebra.algebra)?;
                let (cdoc, ctext): (ComplexDoc, _) = read_doc(complex)?;
                let key = Cache::key(&["complex-dpd", &atext, &ctext, &cli.window.to_string()]);
                if let Some(hit) = cache.get(&key) {
                    return Ok(hit);
                }
                let alg = algebra_from_doc(&adoc)?;
                let x = complex_from_doc(&alg, &cdoc)?;
                let verdict = dpd_core::ding::dpd_complex(&x, cli.window)?;
                let payload = complex_verdict_to_json(&verdict);
                let rendered = render(cli.format, &payload);
                cache.put(&key, &rendered);
                return Ok(rendered);
            }
            ComplexCmd::Rhom { algebra, complex, target, lo, hi } => {
                let (adoc, _): (AlgebraDoc, _) = read_doc(&algebra.algebra)?;
                let (cdoc, _): (ComplexDoc, _) = read_doc(complex)?;
                let (udoc, _): (ComplexDoc, _) = read_doc(target)?;
                let alg = algebra_from_doc(&adoc)?;
                let x = complex_from_doc(&alg, &cdoc)?;
                let u = complex_from_doc(&alg, &udoc)?;
                let dims = dpd_core::ding::rhom(&x, &u, *lo, *hi)?;
                json!({
                    "dims": dims.iter()
                        .map(|(n, d)| (n.to_string(), json!(d)))
                        .collect::<serde_json::Map<String, Value>>(),
                })
            }
        },
        Command::Resolve { algebra, module, complex, degree } => {
            let (adoc, atext): (AlgebraDoc, _) = read_doc(&algebra.algebra)?;
            let alg = algebra_from_doc(&adoc)?;
            match (module, complex) {
                (Some(mpath), None) => {
                    let (mdoc, mtext): (ModuleDoc, _) = read_doc(mpath)?;
                    let key = Cache::key(&["resolve", &atext, &mtext, &degree.to_string()]);
                    if let Some(hit) = cache.get(&key) {
                        return Ok(hit);
                    }
                    let m = module_from_doc(&alg, &mdoc)?;
                    let tail = dpd_core::resolution::minimal_projective_resolution(&m, *degree);
                    let payload = json!({
                        "complex": complex_to_doc(&tail.resolution.as_complex(0)),
                        "augmentation": tail.resolution.aug.blocks.iter()
                            .map(matrix_to_rows).collect::<Vec<_>>(),
                        "minimal": tail.minimal,
                        "target": module_to_doc(&m),
                    });
                    let rendered = render(cli.format, &payload);
                    cache.put(&key, &rendered);
                    return Ok(rendered);
                }
                (None, Some(cpath)) => {
                    let (cdoc, ctext): (ComplexDoc, _) = read_doc(cpath)?;
                    let key = Cache::key(&["resolve-complex", &atext, &ctext, &degree.to_string()]);
                    if let Some(hit) = cache.get(&key) {
                        return Ok(hit);
                    }
                    let x = complex_from_doc(&alg, &cdoc)?;
                    let res = dpd_core::resolution::dg_projective_resolution(&x, *degree as i64)?;
                    let payload = json!({
                        "complex": complex_to_doc(&res.complex),
                        "augmentation": (res.complex.lo..=res.complex.hi()).map(|n| {
                            res.augmentation.map_at(n).blocks.iter()
                                .map(matrix_to_rows).collect::<Vec<_>>()
                        }).collect::<Vec<_>>(),
                        "minimal": false,
                        "reused_input": res.reused_input,
                    });
                    let rendered = render(cli.format, &payload);
                    cache.put(&key, &rendered);
                    return Ok(rendered);
                }
                _ => anyhow::bail!("resolve needs exactly one of --module or --complex"),
            }
        }
        Command::CheckTa { algebra, module, complex } => {
            let (adoc, _): (AlgebraDoc, _) = read_doc(&algebra.algebra)?;
            let alg = algebra_from_doc(&adoc)?;
            let report = match (module, complex) {
                (Some(mpath), None) => {
                    let (mdoc, _): (ModuleDoc, _) = read_doc(mpath)?;
                    let m = module_from_doc(&alg, &mdoc)?;
                    let verdict = dpd_core::ding::is_ding_projective(&m, cli.window)?;
                    if !verdict.is_yes() {
                        return Err(EngineError::NotDingProjective.into());
                    }
                    let mut t = dpd_core::tacyclic::splice(&m, cli.window as usize)?;
                    dpd_core::tacyclic::check_totally_acyclic(&mut t, cli.window)?
                }
                (None, Some(cpath)) => {
                    let (cdoc, _): (ComplexDoc, _) = read_doc(cpath)?;
                    let x = complex_from_doc(&alg, &cdoc)?;
                    dpd_core::tacyclic::check_window_totally_acyclic(&x)?
                }
                _ => anyhow::bail!("check-ta needs exactly one of --module or --complex"),
            };
            json!({
                "all_pass": report.all_pass(),
                "checks": report.checks.iter()
                    .map(|c| json!({ "name": c.name, "pass": c.pass }))
                    .collect::<Vec<_>>(),
            })
        }
        Command::Suite => {
            let report = run_suite(cli.seed, cli.window);
            json!({
                "seed": report.seed,
                "window": report.window,
                "all_ok": report.all_ok(),
                "properties": report.entries.iter().map(|e| json!({
                    "name": e.name,
                    "status": match e.status {
                        Status::Pass => "pass",
                        Status::Fail => "fail",
                        Status::SkippedByWindow => "skipped-by-window",
                    },
                    "detail": e.detail,
                })).collect::<Vec<_>>(),
            })
        }
    };
    Ok(render(cli.format, &payload))
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            println!("{report}");
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(exit_code_for(&err));
        }
    }
}
