//! High- and low-temperature expansions of the correlators and the discord,
//! used as independent checks of the exact expressions.
//!
//! The series are advisory: nothing enforces a validity range. The truncated
//! forms are accurate for roughly `x <= 0.1` (high temperature) and `x >= 10`
//! (low temperature, dipolar regime).

use crate::model::Correlators;
use std::f64::consts::LN_2;

/// Leading high-temperature behavior of the correlators:
/// `m = eta x / 2 - delta eta x^2 / 4`,
/// `g_par = -delta x / 2 - (1 - eta^2) x^2 / 4`,
/// `g_perp = -x/2 - delta x^2 / 4 + (1/3 + eta^2) x^3 / 8`.
pub fn high_t_correlators(delta: f64, eta: f64, x: f64) -> Correlators {
    Correlators {
        m: 0.5 * eta * x - 0.25 * delta * eta * x * x,
        g_par: -0.5 * delta * x - 0.25 * (1.0 - eta * eta) * x * x,
        g_perp: -0.5 * x - 0.25 * delta * x * x + 0.125 * (1.0 / 3.0 + eta * eta) * x * x * x,
    }
}

/// High-temperature discord branches:
/// `q1 = x^2/(4 ln 2) + delta x^3/(8 ln 2)`, `q2 = (1 + delta^2) x^2/(8 ln 2)`.
/// For `|delta| > 1` the minimum is taken by `q1` at small `x`.
pub fn high_t_discord_branches(delta: f64, x: f64) -> (f64, f64) {
    let x2 = x * x;
    (
        x2 / (4.0 * LN_2) + delta * x2 * x / (8.0 * LN_2),
        (1.0 + delta * delta) * x2 / (8.0 * LN_2),
    )
}

/// Leading high-temperature discord, `x^2 / (4 ln 2)`; independent of the
/// field and of the anisotropy.
pub fn high_t_discord(x: f64) -> f64 {
    x * x / (4.0 * LN_2)
}

/// Leading high-temperature classical correlation, `delta^2 x^2 / (8 ln 2)`.
pub fn high_t_classical(delta: f64, x: f64) -> f64 {
    delta * delta * x * x / (8.0 * LN_2)
}

/// Low-temperature correlators of the dipolar dimer (`delta = -2`).
/// In zero field `(g_par, g_perp) = (1 - e^{-x}, -e^{-x}/2)`; in a field the
/// ground-state change doubles the statistical weight:
/// `(1 - 2 e^{-x}, -e^{-x})`.
pub fn low_t_correlators(eta: f64, x: f64) -> (f64, f64) {
    let w = (-x).exp();
    if eta == 0.0 {
        (1.0 - w, -0.5 * w)
    } else {
        (1.0 - 2.0 * w, -w)
    }
}

/// Low-temperature discord of the dipolar dimer at zero field, `e^{-x}/2`.
pub fn low_t_discord(x: f64) -> f64 {
    0.5 * (-x).exp()
}
