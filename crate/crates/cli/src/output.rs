//! Report structures and deterministic formatting.

use dimer::correlations::CorrelationSet;
use dimer::model::{correlators, spectrum};
use dimer::{DimerParams, Result, ThermalPoint};
use serde::Serialize;
use std::io::Write;
use std::path::Path;

/// Format with a fixed number of significant digits; deterministic across
/// runs, scientific notation. Zero collapses to `0`.
pub fn format_sig(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".to_string();
    }
    format!("{:.*e}", digits.saturating_sub(1), v)
}

/// Write through a temporary sibling and rename, so a failed run never
/// leaves partial output behind.
pub fn write_atomic(path: &str, text: &str) -> std::io::Result<()> {
    let target = Path::new(path);
    let mut tmp = target.as_os_str().to_owned();
    tmp.push(format!(".tmp.{}", std::process::id()));
    let tmp_path = Path::new(&tmp);
    let result = (|| {
        let mut file = std::fs::File::create(tmp_path)?;
        file.write_all(text.as_bytes())?;
        file.sync_all()?;
        std::fs::rename(tmp_path, target)
    })();
    if result.is_err() {
        let _ = std::fs::remove_file(tmp_path);
    }
    result
}

#[derive(Serialize)]
pub struct SpectrumReport {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub e4: f64,
    pub ground: f64,
}

#[derive(Serialize)]
pub struct CorrelatorReport {
    pub m: f64,
    pub g_par: f64,
    pub g_perp: f64,
}

#[derive(Serialize)]
pub struct CorrelationReport {
    pub s_a: f64,
    pub s_ab: f64,
    #[serde(rename = "I")]
    pub mutual: f64,
    #[serde(rename = "Q1")]
    pub q1: f64,
    #[serde(rename = "Q2")]
    pub q2: f64,
    #[serde(rename = "Q")]
    pub discord: f64,
    #[serde(rename = "C")]
    pub classical: f64,
    pub concurrence: f64,
    #[serde(rename = "E")]
    pub entanglement: f64,
    #[serde(rename = "Qg")]
    pub geometric: Option<f64>,
}

/// Everything the `point` command reports for one thermal point.
#[derive(Serialize)]
pub struct PointReport {
    pub delta: f64,
    pub eta: f64,
    pub t: f64,
    pub x: Option<f64>,
    pub spectrum: SpectrumReport,
    pub correlators: CorrelatorReport,
    pub correlations: CorrelationReport,
}

impl PointReport {
    pub fn evaluate(params: &DimerParams, t: ThermalPoint) -> Result<Self> {
        let sp = spectrum(params)?;
        let c = correlators(params, t)?;
        let set = CorrelationSet::evaluate(params, t)?;
        Ok(Self {
            delta: params.delta(),
            eta: params.eta(),
            t: t.reduced_temperature(),
            x: t.x().is_finite().then_some(t.x()),
            spectrum: SpectrumReport {
                e1: sp.e1,
                e2: sp.e2,
                e3: sp.e3,
                e4: sp.e4,
                ground: sp.ground,
            },
            correlators: CorrelatorReport {
                m: c.m,
                g_par: c.g_par,
                g_perp: c.g_perp,
            },
            correlations: CorrelationReport {
                s_a: set.s_a,
                s_ab: set.s_ab,
                mutual: set.mutual,
                q1: set.q1,
                q2: set.q2,
                discord: set.discord,
                classical: set.classical,
                concurrence: set.concurrence,
                entanglement: set.entanglement,
                geometric: set.geometric,
            },
        })
    }

    /// One CSV row in the fixed scan column order.
    pub fn to_csv(&self, precision: usize) -> String {
        let f = |v: f64| format_sig(v, precision);
        let qg = self.correlations.geometric.map(f).unwrap_or_default();
        format!(
            "t,eta,m,g_par,g_perp,I,C,Q,Q1,Q2,E,Qg\n{},{},{},{},{},{},{},{},{},{},{},{}\n",
            f(self.t),
            f(self.eta),
            f(self.correlators.m),
            f(self.correlators.g_par),
            f(self.correlators.g_perp),
            f(self.correlations.mutual),
            f(self.correlations.classical),
            f(self.correlations.discord),
            f(self.correlations.q1),
            f(self.correlations.q2),
            f(self.correlations.entanglement),
            qg,
        )
    }
}
