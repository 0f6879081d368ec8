use crate::analytic::{exact_u_const_f, exact_u_via_green, GreensConfig};
use crate::error::{Error, Result};
use crate::harness::config::{Case, RunConfig, Scale};
use crate::harness::report::{write_series_csv, Manifest};
use crate::harness::runs::run_solve;
use crate::quadrature::QuadConfig;
use std::path::Path;

fn xgrid() -> Vec<f64> {
    // Uniform samples over [-1.2, 1.2]; curves vanish identically outside Ω.
    (0..=240).map(|k| -1.2 + 2.4 * k as f64 / 240.0).collect()
}

fn analytic_curve(case: Case, quad: &QuadConfig) -> Result<Vec<(f64, f64)>> {
    let s = case.s();
    let green = if case.constant_source() {
        None
    } else {
        Some(GreensConfig::calibrated(1, s, *quad)?.0)
    };
    xgrid()
        .into_iter()
        .map(|x| {
            let v = if x.abs() >= 1.0 {
                0.0
            } else {
                match &green {
                    None => exact_u_const_f(x, 1, s)?,
                    Some(g) => exact_u_via_green(x, case.source(), g)?,
                }
            };
            Ok((x, v))
        })
        .collect()
}

fn numerical_curve(case: Case, n: usize, lambda: f64, p: f64, quad: &QuadConfig) -> Result<Vec<(f64, f64)>> {
    let mut cfg = RunConfig::new(case, n, lambda, p);
    cfg.quad = *quad;
    let out = run_solve(&cfg)?;
    xgrid()
        .into_iter()
        .map(|x| {
            let v = if x.abs() > 1.0 + lambda {
                0.0
            } else {
                out.solution.eval(x)?
            };
            Ok((x, v))
        })
        .collect()
}

/// Write the (x, value) series of one published figure as
/// `<out>/figure<id>.csv` in long format (`curve,x,value`).
///
/// 1: analytic solutions of all four data sets.
/// 2: grid configurations for λ = 2³, N = 2⁴, p ∈ {0.5, 1, 1.5} (value = p).
/// 3: numerical vs analytic solutions, cases Ia and IIa.
/// 4: numerical solutions near the peak, cases Ib and IIb (λ × N grid).
/// 5: simultaneous (h, λ) refinement, cases Ib and IIb.
pub fn emit_figure_data(id: u32, scale: Scale, quad: &QuadConfig, out_dir: &Path) -> Result<()> {
    std::fs::create_dir_all(out_dir)?;
    let start = std::time::Instant::now();
    let mut series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    let mut notes = vec![format!("figure {id} at scale {scale}")];

    match id {
        1 => {
            for case in Case::all() {
                series.push((format!("{case}"), analytic_curve(case, quad)?));
            }
        }
        2 => {
            for p in [0.5, 1.0, 1.5] {
                let mesh = crate::mesh::build_mesh(16, 8.0, p)?;
                let pts: Vec<(f64, f64)> = mesh.nodes().iter().map(|&x| (x, p)).collect();
                series.push((format!("p={p}"), pts));
            }
            notes.push("node positions per grading exponent; value column holds p".into());
        }
        3 => {
            for case in [Case::Ia, Case::IIa] {
                series.push((format!("{case} analytic"), analytic_curve(case, quad)?));
                for (n, lambda) in [(32usize, 8.0), (32, 32.0), (128, 8.0), (128, 32.0)] {
                    series.push((
                        format!("{case} N={n} lambda={lambda}"),
                        numerical_curve(case, n, lambda, 0.5, quad)?,
                    ));
                }
            }
        }
        4 => {
            let (lambdas, ns, p): (Vec<f64>, Vec<usize>, f64) = match scale {
                Scale::Desk => (vec![8.0, 16.0, 32.0], vec![32, 64, 128], 0.5),
                Scale::Paper => (vec![512.0, 1024.0, 2048.0], vec![128, 256, 512], 1.25),
            };
            for case in [Case::Ib, Case::IIb] {
                series.push((format!("{case} analytic"), analytic_curve(case, quad)?));
                for &lambda in &lambdas {
                    for &n in &ns {
                        series.push((
                            format!("{case} N={n} lambda={lambda}"),
                            numerical_curve(case, n, lambda, p, quad)?,
                        ));
                    }
                }
            }
            notes.push("Cartesian pairing of the captioned lambda and N values".into());
        }
        5 => {
            let pairs: Vec<(usize, f64, f64)> = match scale {
                Scale::Desk => vec![(32, 8.0, 0.5), (64, 16.0, 0.5), (128, 32.0, 0.5)],
                Scale::Paper => vec![
                    (32, 8.0, 0.5),
                    (64, 16.0, 0.5),
                    (128, 32.0, 0.5),
                    (256, 64.0, 0.5),
                    (512, 128.0, 0.6),
                ],
            };
            for case in [Case::Ib, Case::IIb] {
                series.push((format!("{case} analytic"), analytic_curve(case, quad)?));
                for &(n, lambda, p) in &pairs {
                    series.push((
                        format!("{case} N={n} lambda={lambda}"),
                        numerical_curve(case, n, lambda, p, quad)?,
                    ));
                }
            }
        }
        other => return Err(Error::UnknownFigure(other)),
    }

    write_series_csv(&out_dir.join(format!("figure{id}.csv")), &series)?;
    let manifest = Manifest::new(
        &(id, scale),
        format!("figure{id}-{scale}"),
        start.elapsed().as_secs_f64(),
        notes,
    );
    manifest.write_json(&out_dir.join(format!("figure{id}.manifest.json")))?;
    Ok(())
}
