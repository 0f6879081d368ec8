use crate::error::Result;
use crate::metrics::ErrorRecord;
use serde::Serialize;
use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

/// Run metadata; the only place timestamps appear, so CSV bodies stay
/// byte-identical across reruns of the same configuration.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: String,
    pub tool_version: String,
    pub config: serde_json::Value,
    pub config_hash: String,
    pub wall_seconds: f64,
    pub unix_time: u64,
    pub notes: Vec<String>,
}

impl Manifest {
    pub fn new<C: Serialize>(config: &C, config_hash: String, wall_seconds: f64, notes: Vec<String>) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config: serde_json::to_value(config).expect("config serialization cannot fail"),
            config_hash,
            wall_seconds,
            unix_time: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            notes,
        }
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let body = serde_json::to_string_pretty(self).expect("manifest serialization cannot fail");
        fs::write(path, body + "\n")?;
        Ok(())
    }
}

/// One CSV row of a convergence table: the error record plus the hash of
/// the run that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    #[serde(flatten)]
    pub record: ErrorRecord,
    /// Second sweep parameter for combined tables (λ alongside h).
    pub extra_param: Option<f64>,
    pub config_hash: String,
}

/// Error/rate table plus manifest.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    /// Name of the swept parameter column ("h" or "lambda").
    pub param_name: String,
    /// Name of the secondary parameter column, when present.
    pub extra_param_name: Option<String>,
    pub rows: Vec<TableRow>,
    pub manifest: Manifest,
}

fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f).unwrap_or_default()
}

impl ConvergenceReport {
    pub fn csv_body(&self) -> String {
        let has_energy = self.rows.iter().any(|r| r.record.energy_error.is_some());
        let mut header = vec![self.param_name.clone()];
        if let Some(name) = &self.extra_param_name {
            header.push(name.clone());
        }
        header.push("l2_error".into());
        header.push("rate_l2".into());
        if has_energy {
            header.push("energy_error".into());
            header.push("rate_energy".into());
        }
        header.push("config_hash".into());

        let mut out = header.join(",") + "\n";
        for row in &self.rows {
            let mut cols = vec![fmt_f(row.record.param)];
            if self.extra_param_name.is_some() {
                cols.push(fmt_opt(row.extra_param));
            }
            cols.push(fmt_f(row.record.l2_error));
            cols.push(fmt_opt(row.record.rate_l2));
            if has_energy {
                cols.push(fmt_opt(row.record.energy_error));
                cols.push(fmt_opt(row.record.rate_energy));
            }
            cols.push(row.config_hash.clone());
            out.push_str(&cols.join(","));
            out.push('\n');
        }
        out
    }

    /// Write `results.csv` and `manifest.json` under `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("results.csv"), self.csv_body())?;
        self.manifest.write_json(&dir.join("manifest.json"))
    }
}

/// One cell of the coarsening study.
#[derive(Debug, Clone, Serialize)]
pub struct CoarseningCell {
    pub lambda: f64,
    pub p: f64,
    pub nodes: usize,
    /// ‖ũ_p - ũ_{p=0}‖_{L²(Ω)} on the same interior grid.
    pub delta_a: f64,
    pub config_hash: String,
}

#[derive(Debug, Clone)]
pub struct CoarseningReport {
    pub cells: Vec<CoarseningCell>,
    pub manifest: Manifest,
}

impl CoarseningReport {
    pub fn csv_body(&self) -> String {
        let mut out = String::from("lambda,p,nodes,delta_a,config_hash\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt_f(c.lambda),
                fmt_f(c.p),
                c.nodes,
                fmt_f(c.delta_a),
                c.config_hash
            ));
        }
        out
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("results.csv"), self.csv_body())?;
        self.manifest.write_json(&dir.join("manifest.json"))
    }
}

/// Write a long-format curve file: `curve,x,value`.
pub fn write_series_csv(path: &Path, series: &[(String, Vec<(f64, f64)>)]) -> Result<()> {
    let mut out = String::from("curve,x,value\n");
    for (name, pts) in series {
        for (x, v) in pts {
            out.push_str(&format!("{},{},{}\n", name, fmt_f(*x), fmt_f(*v)));
        }
    }
    fs::write(path, out)?;
    Ok(())
}
