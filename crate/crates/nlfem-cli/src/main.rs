//! Command-line driver: single solves, the convergence tables, figure data,
//! and the kernel admissibility check. Results land as `results.csv` plus a
//! `manifest.json` under the output directory; CSV bodies are deterministic
//! for a fixed configuration.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use nlfem::harness::{
    emit_figure_data, run_combined, run_solve, run_table_coarsening, run_table_h,
    run_table_lambda, Case, RunConfig, Scale,
};
use nlfem::kernel::{check_kernel_conditions, KernelSpec};
use nlfem::quadrature::QuadConfig;
use nlfem::specfun::FractionalOrder;
use serde::Deserialize;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "nlfem",
    version,
    about = "1-D finite element solver for volume-constrained nonlocal diffusion with truncated fractional kernels"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// TOML file mirroring a run configuration (case, N, lambda, p, quad,
    /// surrogate); command-line flags override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for results.csv / manifest.json.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    /// Relative tolerance of the adaptive outer quadrature.
    #[arg(long, global = true)]
    quad_rel_tol: Option<f64>,

    /// Absolute tolerance of the adaptive outer quadrature.
    #[arg(long, global = true)]
    quad_abs_tol: Option<f64>,

    /// Worker threads for the assembly / sweep parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    /// Data set: Ia, Ib, IIa or IIb.
    #[arg(long)]
    case: Option<String>,

    /// Interior subinterval count N (grid size h = 2/N).
    #[arg(long = "N")]
    n: Option<usize>,

    /// Interaction radius.
    #[arg(long)]
    lambda: Option<f64>,

    /// Exterior coarsening exponent (0 = uniform).
    #[arg(long)]
    p: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one configuration and write (x, u(x)) samples.
    Solve {
        #[command(flatten)]
        run: RunArgs,
        /// Also write the mesh nodes as mesh.csv.
        #[arg(long)]
        dump_mesh: bool,
        /// Also write the dense stiffness matrix as matrix.csv.
        #[arg(long)]
        dump_matrix: bool,
    },
    /// Grid-size study vs a fine surrogate (cases Ia and Ib by default).
    TableH {
        #[arg(long)]
        case: Option<String>,
        #[arg(long, default_value = "desk")]
        scale: String,
    },
    /// Node counts (and optional solution differences) per (lambda, p).
    TableCoarsening {
        #[arg(long = "N", default_value_t = 128)]
        n: usize,
        /// Comma-separated interaction radii.
        #[arg(long, default_value = "4,8,16", value_delimiter = ',')]
        lambda: Vec<f64>,
        /// Comma-separated coarsening exponents.
        #[arg(long, default_value = "1.0,0.5,0.25,0.125,0.0", value_delimiter = ',')]
        p: Vec<f64>,
        /// Also solve each cell and report the coarse-vs-uniform difference.
        #[arg(long)]
        with_delta: bool,
    },
    /// Interaction-radius study vs a large-lambda surrogate.
    TableLambda {
        #[arg(long)]
        case: Option<String>,
        #[arg(long, default_value = "desk")]
        scale: String,
    },
    /// Simultaneous (h, lambda) refinement vs the analytic solution.
    TableCombined {
        #[arg(long)]
        case: Option<String>,
        #[arg(long, default_value = "desk")]
        scale: String,
    },
    /// Emit the (x, value) series of one published figure (1..=5).
    Figure {
        #[arg(long)]
        id: u32,
        #[arg(long, default_value = "desk")]
        scale: String,
    },
    /// Verify the kernel admissibility conditions on sampled point pairs.
    CheckKernel {
        /// Fractional order in (0, 1).
        #[arg(long, default_value_t = 0.5)]
        s: f64,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Dimension for the normalizing constant (1, 2 or 3).
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
    },
}

/// Optional config file; all fields individually optional so a partial file
/// plus flags works.
#[derive(Debug, Default, Deserialize)]
struct FileConfig {
    case: Option<String>,
    n: Option<usize>,
    lambda: Option<f64>,
    p: Option<f64>,
    quad: Option<QuadConfig>,
    surrogate: Option<Box<FileConfig>>,
}

fn load_file_config(path: &Path) -> Result<FileConfig> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn parse_case(flag: &Option<String>, file: &FileConfig, default: Case) -> Result<Case> {
    let source = flag.clone().or_else(|| file.case.clone());
    Ok(match source {
        Some(text) => text.parse::<Case>()?,
        None => default,
    })
}

/// Materialize a nested surrogate config from the file (defaults fall back
/// to the parent run's values).
fn surrogate_from_file(file: &FileConfig, parent: &RunConfig) -> Result<Option<Box<RunConfig>>> {
    match &file.surrogate {
        None => Ok(None),
        Some(nested) => {
            let case = match &nested.case {
                Some(text) => text.parse::<Case>()?,
                None => parent.case,
            };
            let mut cfg = RunConfig::new(
                case,
                nested.n.unwrap_or(parent.n),
                nested.lambda.unwrap_or(parent.lambda),
                nested.p.unwrap_or(parent.p),
            );
            cfg.quad = nested.quad.unwrap_or(parent.quad);
            cfg.surrogate = surrogate_from_file(nested, &cfg)?;
            Ok(Some(Box::new(cfg)))
        }
    }
}

fn cases_for(flag: &Option<String>, file: &FileConfig) -> Result<Vec<Case>> {
    match flag.clone().or_else(|| file.case.clone()) {
        Some(text) => Ok(vec![text.parse::<Case>()?]),
        None => Ok(vec![Case::Ia, Case::Ib]),
    }
}

fn main() -> Result<()> {
    let cli = Cli::parse();

    #[cfg(feature = "parallel")]
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("failed to configure the thread pool")?;
    }
    #[cfg(not(feature = "parallel"))]
    if cli.threads.is_some() {
        eprintln!("note: built without the `parallel` feature; --threads is ignored");
    }

    let file = match &cli.config {
        Some(path) => load_file_config(path)?,
        None => FileConfig::default(),
    };

    let mut quad = file.quad.unwrap_or_default();
    if let Some(tol) = cli.quad_rel_tol {
        quad.outer_rel_tol = tol;
    }
    if let Some(tol) = cli.quad_abs_tol {
        quad.outer_abs_tol = tol;
    }
    quad.validate()?;

    let out = &cli.out;
    fs::create_dir_all(out)?;

    match &cli.cmd {
        Cmd::Solve {
            run,
            dump_mesh,
            dump_matrix,
        } => {
            let case = parse_case(&run.case, &file, Case::Ia)?;
            let mut cfg = RunConfig::new(
                case,
                run.n.or(file.n).unwrap_or(128),
                run.lambda.or(file.lambda).unwrap_or(8.0),
                run.p.or(file.p).unwrap_or(0.5),
            );
            cfg.quad = quad;
            cfg.surrogate = surrogate_from_file(&file, &cfg)?;
            let output = run_solve(&cfg)?;

            let mut body = String::from("x,u\n");
            for (x, u) in &output.samples {
                body.push_str(&format!("{x:.16e},{u:.16e}\n"));
            }
            fs::write(out.join("results.csv"), body)?;
            output.manifest.write_json(&out.join("manifest.json"))?;
            if *dump_mesh {
                let mut buf = Vec::new();
                output.mesh.write_csv(&mut buf)?;
                fs::write(out.join("mesh.csv"), buf)?;
            }
            if *dump_matrix {
                let mut buf = Vec::new();
                output.system.matrix.write_csv(&mut buf)?;
                fs::write(out.join("matrix.csv"), buf)?;
            }
            let peak = output
                .samples
                .iter()
                .map(|&(_, u)| u)
                .fold(f64::NEG_INFINITY, f64::max);
            println!(
                "case {} N={} lambda={} p={}: {} dofs, peak u = {:.6}",
                case,
                cfg.n,
                cfg.lambda,
                cfg.p,
                output.mesh.n_free(),
                peak
            );
            println!("wrote {}", out.join("results.csv").display());
        }

        Cmd::TableH { case, scale } => {
            let scale: Scale = scale.parse()?;
            for case in cases_for(case, &file)? {
                let report = run_table_h(case, scale, &quad)?;
                let dir = out.join(format!("table-h-{case}"));
                report.write(&dir)?;
                print_table(&format!("h table, case {case}"), &report);
            }
        }

        Cmd::TableCoarsening {
            n,
            lambda,
            p,
            with_delta,
        } => {
            let report = run_table_coarsening(*n, lambda, p, &quad, *with_delta)?;
            report.write(out)?;
            println!("coarsening table (N = {n}):");
            println!("  lambda         p     nodes      delta_A");
            for c in &report.cells {
                if c.delta_a.is_nan() {
                    println!("  {:>6} {:>7.3} {:>9}            -", c.lambda, c.p, c.nodes);
                } else {
                    println!(
                        "  {:>6} {:>7.3} {:>9} {:>12.3e}",
                        c.lambda, c.p, c.nodes, c.delta_a
                    );
                }
            }
        }

        Cmd::TableLambda { case, scale } => {
            let scale: Scale = scale.parse()?;
            for case in cases_for(case, &file)? {
                let report = run_table_lambda(case, scale, &quad)?;
                let dir = out.join(format!("table-lambda-{case}"));
                report.write(&dir)?;
                print_table(&format!("lambda table, case {case}"), &report);
            }
        }

        Cmd::TableCombined { case, scale } => {
            let scale: Scale = scale.parse()?;
            for case in cases_for(case, &file)? {
                let report = run_combined(case, scale, &quad)?;
                let dir = out.join(format!("table-combined-{case}"));
                report.write(&dir)?;
                print_table(&format!("combined table, case {case}"), &report);
            }
        }

        Cmd::Figure { id, scale } => {
            let scale: Scale = scale.parse()?;
            emit_figure_data(*id, scale, &quad, out)?;
            println!("wrote {}", out.join(format!("figure{id}.csv")).display());
        }

        Cmd::CheckKernel {
            s,
            lambda,
            n,
            samples,
        } => {
            let spec = KernelSpec::new(*n, FractionalOrder::new(*s)?, *lambda)?;
            let report = check_kernel_conditions(&spec, *samples);
            println!("{report}");
            if !report.all_passed() {
                bail!("kernel conditions failed");
            }
        }
    }
    Ok(())
}

fn print_table(title: &str, report: &nlfem::harness::ConvergenceReport) {
    println!("{title}:");
    let has_energy = report.rows.iter().any(|r| r.record.energy_error.is_some());
    if has_energy {
        println!(
            "  {:>12} {:>12} {:>7} {:>12} {:>7}",
            report.param_name, "l2_error", "rate", "energy_err", "rate"
        );
    } else {
        println!("  {:>12} {:>12} {:>7}", report.param_name, "l2_error", "rate");
    }
    for row in &report.rows {
        let rate = row
            .record
            .rate_l2
            .map(|r| format!("{r:.2}"))
            .unwrap_or_else(|| "-".into());
        if has_energy {
            let erate = row
                .record
                .rate_energy
                .map(|r| format!("{r:.2}"))
                .unwrap_or_else(|| "-".into());
            println!(
                "  {:>12.4e} {:>12.4e} {:>7} {:>12.4e} {:>7}",
                row.record.param,
                row.record.l2_error,
                rate,
                row.record.energy_error.unwrap(),
                erate
            );
        } else {
            println!(
                "  {:>12.4e} {:>12.4e} {:>7}",
                row.record.param, row.record.l2_error, rate
            );
        }
    }
}
