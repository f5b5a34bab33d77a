//! File formats and report emission. Every float written as text carries 17
//! significant digits; JSON numbers use the shortest round-trip form.

mod graph_format;

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::certificate::Certificate;
use crate::error::Result;
use crate::frequency::FrequencyTrace;
use crate::heat::{residual_report, Coefficient, GrowthClass, Trajectory};
use crate::liouville::DichotomyReport;
use crate::spectral::SpectralDecomposition;

pub use graph_format::{emit_graph, parse_graph, read_graph};

/// `v` with 17 significant digits, enough to recover every `f64`.
pub fn float17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn opt17(v: Option<f64>) -> String {
    v.map(float17).unwrap_or_default()
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    Ok(result?)
}

/// `index,eigenvalue` rows in non-increasing order.
pub fn spectrum_csv(dec: &SpectralDecomposition) -> String {
    let mut out = String::from("index,eigenvalue\n");
    for (i, l) in dec.eigenvalues().iter().enumerate() {
        out.push_str(&format!("{i},{}\n", float17(*l)));
    }
    out
}

/// `t,vertex_index,value` rows.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::from("t,vertex_index,value\n");
    for (t, slice) in traj.grid().iter().zip(traj.slices()) {
        let t = float17(*t);
        for (x, v) in slice.values().iter().enumerate() {
            out.push_str(&format!("{t},{x},{}\n", float17(*v)));
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoefficientMeta {
    Static { values: Vec<f64> },
    TimeDependent { bound: f64 },
}

/// Metadata sidecar of an exported trajectory.
#[derive(Debug, Clone, Serialize)]
pub struct TrajectoryMeta {
    pub graph_hash: String,
    pub support: Vec<usize>,
    pub coefficient: CoefficientMeta,
    pub method: String,
    pub residual: f64,
    pub residual_tolerance: f64,
    pub seed: Option<u64>,
}

impl TrajectoryMeta {
    pub fn new(traj: &Trajectory, seed: Option<u64>) -> Self {
        let problem = traj.problem();
        let coefficient = match problem.coefficient() {
            Coefficient::Static(c) => CoefficientMeta::Static {
                values: c.values().to_vec(),
            },
            Coefficient::TimeDependent { bound, .. } => CoefficientMeta::TimeDependent { bound: *bound },
        };
        Self {
            graph_hash: format!("{:016x}", traj.graph().id()),
            support: problem.support().members().to_vec(),
            coefficient,
            method: traj.method().tag().to_owned(),
            residual: residual_report(traj),
            residual_tolerance: traj.residual_tolerance(),
            seed,
        }
    }
}

/// `t,I,D,U,dU,C` rows; undefined entries are left empty.
pub fn trace_csv(trace: &FrequencyTrace) -> String {
    let mut out = String::from("t,I,D,U,dU,C\n");
    for i in 0..trace.len() {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            float17(trace.time_grid[i]),
            float17(trace.mass[i]),
            float17(trace.energy[i]),
            opt17(trace.frequency[i]),
            opt17(trace.frequency_derivative[i]),
            float17(trace.perturbation[i]),
        ));
    }
    out
}

pub fn certificates_json(certs: &[Certificate]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(certs)?;
    s.push('\n');
    Ok(s)
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[derive(Debug, Clone, Serialize)]
struct GrowthJson {
    class: &'static str,
    rate: Option<f64>,
    degree: Option<f64>,
}

impl From<GrowthClass> for GrowthJson {
    fn from(g: GrowthClass) -> Self {
        match g {
            GrowthClass::Polynomial { degree, zero } => Self {
                class: if zero { "trivial" } else { "polynomial" },
                rate: None,
                degree: Some(degree),
            },
            GrowthClass::Exponential { rate } => Self {
                class: "exponential",
                rate: Some(rate),
                degree: None,
            },
        }
    }
}

#[derive(Serialize)]
struct EntryJson<'a> {
    label: &'a str,
    growth: GrowthJson,
    trivial: bool,
    q_r: f64,
    crossover_j: Option<usize>,
}

#[derive(Serialize)]
struct DichotomyJson<'a> {
    radius: usize,
    horizon: f64,
    c: f64,
    epsilon: f64,
    poincare_constant: f64,
    calibrated_constant: f64,
    r0: usize,
    degree: u32,
    r: usize,
    seed: Option<u64>,
    entries: Vec<EntryJson<'a>>,
}

pub fn dichotomy_json(report: &DichotomyReport, seed: Option<u64>) -> Result<String> {
    let json = DichotomyJson {
        radius: report.radius,
        horizon: report.horizon,
        c: report.c,
        epsilon: report.epsilon,
        poincare_constant: report.poincare_constant,
        calibrated_constant: report.constant,
        r0: report.r0,
        degree: report.degree,
        r: report.r,
        seed,
        entries: report
            .entries
            .iter()
            .map(|e| EntryJson {
                label: &e.label,
                growth: e.growth.into(),
                trivial: e.trivial,
                q_r: e.q_r,
                crossover_j: e.crossover,
            })
            .collect(),
    };
    to_json(&json)
}

/// One row of a Q-integral table.
#[derive(Debug, Clone, PartialEq)]
pub struct QRow {
    pub solution: usize,
    pub r: usize,
    pub big_r: usize,
    pub q_r: f64,
    pub q_big_r: f64,
    pub ratio: f64,
}

pub fn q_table_csv(rows: &[QRow]) -> String {
    let mut out = String::from("solution,r,R,Q_r,Q_R,ratio\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.solution,
            row.r,
            row.big_r,
            float17(row.q_r),
            float17(row.q_big_r),
            float17(row.ratio)
        ));
    }
    out
}
