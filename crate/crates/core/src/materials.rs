//! SI-unit bridge: dipolar coupling constants of real proton dimers and the
//! temperatures at which their thermal discord peaks.
//!
//! The reduced-unit core never sees SI quantities; this module converts a
//! gyromagnetic ratio and an inter-spin distance into `D` via
//! `D = (mu0/4pi) gamma^2 hbar^2 / (2 r^3)` and scales the dimensionless
//! extremum results into kelvin.

use crate::correlations::discord_thermal_zero_field;
use crate::error::{DimerError, Result};
use crate::extremum::solve_zero_field_max;
use crate::model::DIPOLAR_DELTA;

/// Physical constants used by every conversion.
pub mod constants {
    /// Reduced Planck constant (J s).
    pub const HBAR: f64 = 1.054571817e-34;
    /// Boltzmann constant (J/K).
    pub const BOLTZMANN: f64 = 1.380649e-23;
    /// `mu0 / 4 pi` (T m / A).
    pub const MU0_OVER_4PI: f64 = 1e-7;
    /// Proton gyromagnetic ratio (rad s^-1 T^-1).
    pub const PROTON_GYROMAGNETIC: f64 = 2.675e8;
}

/// A spin-1/2 dimer in a real material: gyromagnetic ratio (rad s^-1 T^-1)
/// and inter-spin distance (m).
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialSpec {
    name: String,
    gamma: f64,
    r: f64,
}

impl MaterialSpec {
    pub fn new(name: impl Into<String>, gamma: f64, r: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(DimerError::NonPositiveParameter {
                name: "gamma",
                value: gamma,
            });
        }
        if !r.is_finite() || r <= 0.0 {
            return Err(DimerError::NonPositiveParameter { name: "r", value: r });
        }
        Ok(Self {
            name: name.into(),
            gamma,
            r,
        })
    }

    /// Proton pair in the water molecules of gypsum, r = 0.158 nm.
    pub fn gypsum() -> Self {
        Self::new("gypsum", constants::PROTON_GYROMAGNETIC, 0.158e-9).expect("valid preset")
    }

    /// Proton pair on one carbon of 1,2-dichloroethane, r = 0.17 nm.
    pub fn dichloroethane() -> Self {
        Self::new("dichloroethane", constants::PROTON_GYROMAGNETIC, 0.17e-9).expect("valid preset")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

/// The built-in material table.
pub fn presets() -> Vec<MaterialSpec> {
    vec![MaterialSpec::gypsum(), MaterialSpec::dichloroethane()]
}

/// Look up a preset by name (case-insensitive).
pub fn preset(name: &str) -> Option<MaterialSpec> {
    presets()
        .into_iter()
        .find(|m| m.name.eq_ignore_ascii_case(name))
}

/// Dipolar coupling constant of the dimer, as energy and as temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipolarConstant {
    /// D in joule.
    pub joule: f64,
    /// D / k_B in kelvin.
    pub kelvin: f64,
}

/// `D = (mu0/4pi) gamma^2 hbar^2 / (2 r^3)`.
pub fn dipolar_constant(spec: &MaterialSpec) -> DipolarConstant {
    let joule = constants::MU0_OVER_4PI * (spec.gamma * constants::HBAR).powi(2)
        / (2.0 * spec.r.powi(3));
    DipolarConstant {
        joule,
        kelvin: joule / constants::BOLTZMANN,
    }
}

/// Discord prediction for a material: coupling scale, the temperature of the
/// discord maximum, and optionally the discord at a requested temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialPrediction {
    /// D (J).
    pub d_joule: f64,
    /// D / k_B (K).
    pub d_kelvin: f64,
    /// Temperature of the discord maximum (K).
    pub t_max: f64,
    /// Discord at the maximum (bits); material-independent for fixed delta.
    pub q_max: f64,
    /// `(T, Q(T))` for the requested temperature, exact closed form.
    pub q_at: Option<(f64, f64)>,
    /// High-temperature estimate `x^2/(4 ln 2)` at the same temperature,
    /// reported alongside as a consistency number.
    pub q_at_high_t: Option<f64>,
}

/// Evaluate the dipolar-dimer (`delta = -2`) prediction for a material.
pub fn predict(spec: &MaterialSpec, temperature_kelvin: Option<f64>) -> Result<MaterialPrediction> {
    let d = dipolar_constant(spec);
    let extremum = solve_zero_field_max(DIPOLAR_DELTA)?;
    let (q_at, q_at_high_t) = match temperature_kelvin {
        Some(t) => {
            if !t.is_finite() || t <= 0.0 {
                return Err(DimerError::NonPositiveParameter {
                    name: "temperature",
                    value: t,
                });
            }
            let x = d.kelvin / t;
            (
                Some((t, discord_thermal_zero_field(DIPOLAR_DELTA, x))),
                Some(crate::asymptotics::high_t_discord(x)),
            )
        }
        None => (None, None),
    };
    Ok(MaterialPrediction {
        d_joule: d.joule,
        d_kelvin: d.kelvin,
        t_max: extremum.t_max * d.kelvin,
        q_max: extremum.q_max,
        q_at,
        q_at_high_t,
    })
}

/// Parse a plain-text material table: one record per line, `name gamma r`,
/// whitespace-separated; blank lines and `#` comments are skipped.
pub fn parse_material_table(text: &str) -> Result<Vec<MaterialSpec>> {
    let mut specs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(DimerError::MaterialTable {
                line: idx + 1,
                reason: format!("expected `name gamma r`, got {} fields", fields.len()),
            });
        }
        let gamma: f64 = fields[1].parse().map_err(|_| DimerError::MaterialTable {
            line: idx + 1,
            reason: format!("cannot parse gamma `{}`", fields[1]),
        })?;
        let r: f64 = fields[2].parse().map_err(|_| DimerError::MaterialTable {
            line: idx + 1,
            reason: format!("cannot parse r `{}`", fields[2]),
        })?;
        specs.push(
            MaterialSpec::new(fields[0], gamma, r).map_err(|e| DimerError::MaterialTable {
                line: idx + 1,
                reason: e.to_string(),
            })?,
        );
    }
    Ok(specs)
}
