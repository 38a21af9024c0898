//! Grid evaluation for the `scan` command: deterministic row order
//! (temperature outer, field inner), concurrent evaluation, CSV and JSON
//! emission.

use crate::output::format_sig;
use crate::CliError;
use dimer::correlations::CorrelationSet;
use dimer::model::correlators;
use dimer::{DimerParams, ThermalPoint};
use rayon::prelude::*;
use serde::Serialize;

/// One scan axis: either a fixed value or an inclusive range.
#[derive(Debug, Clone)]
pub struct Axis {
    values: Vec<f64>,
    /// When set, the sampled variable is x = D/(k_B T) and rows report 1/x.
    invert: bool,
}

impl Axis {
    pub fn fixed(value: f64) -> Self {
        Self {
            values: vec![value],
            invert: false,
        }
    }

    /// Inclusive range with a point count (default 101) or a step.
    pub fn range(lo: f64, hi: f64, points: Option<usize>, step: Option<f64>) -> Result<Self, String> {
        Self::build(lo, hi, points, step, 101)
    }

    /// Same, defaulting to 41 points (field axis).
    pub fn range_default_41(
        lo: f64,
        hi: f64,
        points: Option<usize>,
        step: Option<f64>,
    ) -> Result<Self, String> {
        Self::build(lo, hi, points, step, 41)
    }

    fn build(
        lo: f64,
        hi: f64,
        points: Option<usize>,
        step: Option<f64>,
        default_points: usize,
    ) -> Result<Self, String> {
        let values = match (points, step) {
            (Some(n), None) => {
                if n == 0 {
                    return Err("point count must be at least 1".into());
                }
                linspace(lo, hi, n)
            }
            (None, Some(s)) => {
                if s <= 0.0 || s.is_nan() {
                    return Err(format!("step must be positive, got {s}"));
                }
                let mut values = Vec::new();
                let mut k = 0usize;
                loop {
                    let v = lo + s * k as f64;
                    if v > hi + 1e-12 * s.max(1.0) {
                        break;
                    }
                    values.push(v.min(hi));
                    k += 1;
                }
                values
            }
            (None, None) => linspace(lo, hi, default_points),
            (Some(_), Some(_)) => unreachable!("clap conflict"),
        };
        if values.is_empty() {
            return Err("range produced no points".into());
        }
        Ok(Self {
            values,
            invert: false,
        })
    }

    /// Mark the axis as sampled in x; reported values become 1/x.
    pub fn inverted(mut self) -> Self {
        self.invert = true;
        self
    }

    /// Reported (row) values of the axis.
    pub fn values(&self) -> Vec<f64> {
        if self.invert {
            self.values
                .iter()
                .map(|&x| if x == 0.0 { f64::INFINITY } else { 1.0 / x })
                .collect()
        } else {
            self.values.clone()
        }
    }

    fn thermal_points(&self) -> Result<Vec<ThermalPoint>, CliError> {
        self.values
            .iter()
            .map(|&v| {
                if self.invert {
                    ThermalPoint::new(v)
                } else {
                    ThermalPoint::from_reduced_temperature(v)
                }
                .map_err(CliError::from)
            })
            .collect()
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// The scanned quantities, in the fixed column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    M,
    GPar,
    GPerp,
    I,
    C,
    Q,
    Q1,
    Q2,
    E,
    Qg,
}

impl Quantity {
    pub const ORDER: [Quantity; 10] = [
        Quantity::M,
        Quantity::GPar,
        Quantity::GPerp,
        Quantity::I,
        Quantity::C,
        Quantity::Q,
        Quantity::Q1,
        Quantity::Q2,
        Quantity::E,
        Quantity::Qg,
    ];

    pub fn all() -> Vec<Quantity> {
        Self::ORDER.to_vec()
    }

    pub fn token(&self) -> &'static str {
        match self {
            Quantity::M => "m",
            Quantity::GPar => "g_par",
            Quantity::GPerp => "g_perp",
            Quantity::I => "I",
            Quantity::C => "C",
            Quantity::Q => "Q",
            Quantity::Q1 => "Q1",
            Quantity::Q2 => "Q2",
            Quantity::E => "E",
            Quantity::Qg => "Qg",
        }
    }

    /// Parse user tokens into the canonical column order, deduplicated.
    pub fn parse_list(tokens: &[String]) -> Result<Vec<Quantity>, String> {
        let mut requested = Vec::new();
        for token in tokens {
            let q = Self::ORDER
                .iter()
                .find(|q| q.token() == token.trim())
                .copied()
                .ok_or_else(|| {
                    format!(
                        "unknown quantity `{token}`; choose from {}",
                        Self::ORDER.map(|q| q.token()).join(",")
                    )
                })?;
            if !requested.contains(&q) {
                requested.push(q);
            }
        }
        Ok(Self::ORDER
            .iter()
            .filter(|q| requested.contains(q))
            .copied()
            .collect())
    }
}

pub struct ScanConfig {
    pub delta: f64,
    pub t_axis: Axis,
    pub eta_axis: Axis,
    pub quantities: Vec<Quantity>,
    pub precision: usize,
}

#[derive(Serialize)]
struct JsonRow {
    t: f64,
    eta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g_par: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g_perp: Option<f64>,
    #[serde(rename = "I", skip_serializing_if = "Option::is_none")]
    mutual: Option<f64>,
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    classical: Option<f64>,
    #[serde(rename = "Q", skip_serializing_if = "Option::is_none")]
    discord: Option<f64>,
    #[serde(rename = "Q1", skip_serializing_if = "Option::is_none")]
    q1: Option<f64>,
    #[serde(rename = "Q2", skip_serializing_if = "Option::is_none")]
    q2: Option<f64>,
    #[serde(rename = "E", skip_serializing_if = "Option::is_none")]
    entanglement: Option<f64>,
    #[serde(rename = "Qg", skip_serializing_if = "Option::is_none")]
    geometric: Option<Option<f64>>,
}

struct RowValues {
    t: f64,
    eta: f64,
    set: CorrelationSet,
    m: f64,
    g_par: f64,
    g_perp: f64,
}

fn evaluate_grid(config: &ScanConfig) -> Result<Vec<RowValues>, CliError> {
    let t_points = config.t_axis.thermal_points()?;
    let t_values = config.t_axis.values();
    let eta_values = config.eta_axis.values();

    let mut cells = Vec::with_capacity(t_points.len() * eta_values.len());
    for (tp, tv) in t_points.iter().zip(&t_values) {
        for &eta in &eta_values {
            cells.push((*tp, *tv, eta));
        }
    }

    cells
        .into_par_iter()
        .map(|(tp, tv, eta)| {
            let params = DimerParams::new(config.delta, eta)?;
            let set = CorrelationSet::evaluate(&params, tp)?;
            let c = correlators(&params, tp)?;
            Ok(RowValues {
                t: tv,
                eta,
                set,
                m: c.m,
                g_par: c.g_par,
                g_perp: c.g_perp,
            })
        })
        .collect()
}

fn pick(row: &RowValues, q: Quantity) -> Option<f64> {
    match q {
        Quantity::M => Some(row.m),
        Quantity::GPar => Some(row.g_par),
        Quantity::GPerp => Some(row.g_perp),
        Quantity::I => Some(row.set.mutual),
        Quantity::C => Some(row.set.classical),
        Quantity::Q => Some(row.set.discord),
        Quantity::Q1 => Some(row.set.q1),
        Quantity::Q2 => Some(row.set.q2),
        Quantity::E => Some(row.set.entanglement),
        Quantity::Qg => row.set.geometric,
    }
}

pub fn run_csv(config: &ScanConfig) -> Result<String, CliError> {
    let rows = evaluate_grid(config)?;
    let mut out = String::from("t,eta");
    for q in &config.quantities {
        out.push(',');
        out.push_str(q.token());
    }
    out.push('\n');
    for row in &rows {
        out.push_str(&format_sig(row.t, config.precision));
        out.push(',');
        out.push_str(&format_sig(row.eta, config.precision));
        for q in &config.quantities {
            out.push(',');
            if let Some(v) = pick(row, *q) {
                out.push_str(&format_sig(v, config.precision));
            }
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn run_json(config: &ScanConfig) -> Result<String, CliError> {
    let rows = evaluate_grid(config)?;
    let wants = |q: Quantity| config.quantities.contains(&q);
    let json_rows: Vec<JsonRow> = rows
        .iter()
        .map(|row| JsonRow {
            t: row.t,
            eta: row.eta,
            m: wants(Quantity::M).then_some(row.m),
            g_par: wants(Quantity::GPar).then_some(row.g_par),
            g_perp: wants(Quantity::GPerp).then_some(row.g_perp),
            mutual: wants(Quantity::I).then_some(row.set.mutual),
            classical: wants(Quantity::C).then_some(row.set.classical),
            discord: wants(Quantity::Q).then_some(row.set.discord),
            q1: wants(Quantity::Q1).then_some(row.set.q1),
            q2: wants(Quantity::Q2).then_some(row.set.q2),
            entanglement: wants(Quantity::E).then_some(row.set.entanglement),
            geometric: wants(Quantity::Qg).then_some(row.set.geometric),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&json_rows).expect("serializable rows");
    s.push('\n');
    Ok(s)
}
