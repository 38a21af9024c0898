//! Location of the discord maximum over temperature.
//!
//! At zero field the maximum solves the transcendental stationarity condition
//! `x (e^{delta x} + cosh x + delta sinh x) = (sinh x + delta cosh x) ln cosh x`;
//! the root is found by a bracketed bisection over a geometric grid and then
//! polished to residuals at machine level. In a field there is no closed
//! condition and the maximum is located by golden-section search over the
//! exact discord, refined against a finite-difference stationarity estimate.

use crate::correlations::{discord, discord_thermal_zero_field};
use crate::error::{DimerError, Result};
use crate::model::{gibbs_xstate, DimerParams, ThermalPoint};

/// Search window for the bracket scan, in `x = D/(k_B T)`.
const SCAN_LO: f64 = 1e-3;
const SCAN_HI: f64 = 50.0;
const SCAN_POINTS: usize = 256;

/// The discord maximum over temperature at fixed parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremumResult {
    /// Reduced inverse temperature of the maximum.
    pub x_max: f64,
    /// Reduced temperature `k_B T_m / D = 1/x_max`.
    pub t_max: f64,
    /// Discord at the maximum (bits).
    pub q_max: f64,
    /// Absolute residual of the zero-field stationarity condition at `x_max`;
    /// populated only by the transcendental solver.
    pub residual: Option<f64>,
}

/// Left-minus-right of the zero-field stationarity condition.
fn stationarity(delta: f64, x: f64) -> f64 {
    x * ((delta * x).exp() + x.cosh() + delta * x.sinh())
        - (x.sinh() + delta * x.cosh()) * x.cosh().ln()
}

/// Solve the zero-field stationarity condition for the discord maximum.
///
/// Valid in the `delta < -1` regime where the interior maximum exists; if no
/// sign change is bracketed in `x in (1e-3, 50)` a `NoBracket` error is
/// returned. The root is the authoritative answer; direct maximization of the
/// closed-form discord agrees with it to better than `1e-9` in `x`.
pub fn solve_zero_field_max(delta: f64) -> Result<ExtremumResult> {
    if !delta.is_finite() {
        return Err(DimerError::NonFiniteParameter {
            name: "delta",
            value: delta,
        });
    }
    let f = |x: f64| stationarity(delta, x);

    let (mut lo, mut hi) = bracket_sign_change(f)?;
    // Bisection to essentially the last bit of the bracket.
    let mut f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_lo * f_mid <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    // Secant polish, keeping the iterate with the smallest residual.
    let mut x0 = lo;
    let mut x1 = hi;
    let (mut f0, mut f1) = (f(x0), f(x1));
    let (mut best, mut best_f) = if f0.abs() < f1.abs() {
        (x0, f0)
    } else {
        (x1, f1)
    };
    for _ in 0..20 {
        if f1 == f0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !x2.is_finite() {
            break;
        }
        (x0, f0) = (x1, f1);
        (x1, f1) = (x2, f(x2));
        if f1.abs() < best_f.abs() {
            (best, best_f) = (x1, f1);
        }
        if (x1 - x0).abs() < 1e-15 * x1.abs() {
            break;
        }
    }

    Ok(ExtremumResult {
        x_max: best,
        t_max: 1.0 / best,
        q_max: discord_thermal_zero_field(delta, best),
        residual: Some(best_f.abs()),
    })
}

/// Locate the discord maximum over temperature at fixed field by direct
/// numerical maximization of `discord(gibbs_xstate)`.
///
/// The field enters only through `|eta|`, so the result is identical for
/// either sign. `residual` is not populated: there is no closed stationarity
/// condition away from zero field.
pub fn locate_max_in_field(delta: f64, eta: f64) -> Result<ExtremumResult> {
    let params = DimerParams::new(delta, eta.abs())?;
    let q = |x: f64| -> f64 {
        discord(&gibbs_xstate(&params, ThermalPoint::new(x).expect("x >= 0")).expect("theta = 0"))
    };

    // Geometric scan to bracket the interior maximum.
    let ratio = (SCAN_HI / SCAN_LO).powf(1.0 / (SCAN_POINTS - 1) as f64);
    let xs: Vec<f64> = (0..SCAN_POINTS).map(|i| SCAN_LO * ratio.powi(i as i32)).collect();
    let mut best_i = 0;
    let mut best_q = f64::NEG_INFINITY;
    for (i, &x) in xs.iter().enumerate() {
        let v = q(x);
        if v > best_q {
            (best_i, best_q) = (i, v);
        }
    }
    let lo = xs[best_i.saturating_sub(1)];
    let hi = xs[(best_i + 1).min(SCAN_POINTS - 1)];

    let x_golden = golden_section_max(&q, lo, hi, 1e-10);
    let x_max = polish_stationary_point(&q, x_golden, lo, hi);

    Ok(ExtremumResult {
        x_max,
        t_max: 1.0 / x_max,
        q_max: q(x_max),
        residual: None,
    })
}

fn bracket_sign_change(f: impl Fn(f64) -> f64) -> Result<(f64, f64)> {
    let ratio = (SCAN_HI / SCAN_LO).powf(1.0 / (SCAN_POINTS - 1) as f64);
    let mut prev_x = SCAN_LO;
    let mut prev_f = f(prev_x);
    for i in 1..SCAN_POINTS {
        let x = SCAN_LO * ratio.powi(i as i32);
        let fx = f(x);
        if prev_f == 0.0 {
            return Ok((prev_x, prev_x));
        }
        if prev_f * fx <= 0.0 {
            return Ok((prev_x, x));
        }
        (prev_x, prev_f) = (x, fx);
    }
    Err(DimerError::NoBracket {
        lo: SCAN_LO,
        hi: SCAN_HI,
    })
}

/// Golden-section maximization of `f` on `[a, b]` down to bracket width `tol`.
fn golden_section_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        }
    }
    0.5 * (a + b)
}

/// Refine a maximizer by driving the centered finite-difference derivative to
/// zero with a secant iteration. Golden section alone stalls on the rounding
/// plateau of width ~sqrt(eps); the derivative zero is sharper by several
/// orders of magnitude.
fn polish_stationary_point(f: &impl Fn(f64) -> f64, x: f64, lo: f64, hi: f64) -> f64 {
    let h = 8e-6 * x.abs().max(1.0);
    let df = |x: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    let mut x0 = x - 0.5 * h;
    let mut x1 = x + 0.5 * h;
    let mut d0 = df(x0);
    let mut d1 = df(x1);
    for _ in 0..60 {
        if d1 == d0 {
            break;
        }
        let x2 = x1 - d1 * (x1 - x0) / (d1 - d0);
        if !x2.is_finite() || x2 <= lo || x2 >= hi {
            return x1;
        }
        (x0, d0) = (x1, d1);
        (x1, d1) = (x2, df(x2));
        if (x1 - x0).abs() < 1e-13 * x1.abs() {
            break;
        }
    }
    x1
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn dipolar_maximum_matches_reference() {
        let r = solve_zero_field_max(-2.0).unwrap();
        assert_abs_diff_eq!(r.x_max, 1.1346907466313114, epsilon = 1e-10);
        assert_abs_diff_eq!(r.t_max, 0.88129739576075371, epsilon = 1e-10);
        assert_abs_diff_eq!(r.q_max, 0.083061243961921322, epsilon = 1e-12);
        assert!(r.residual.unwrap() <= 1e-12);
    }

    #[test]
    fn other_anisotropies_match_reference_roots() {
        let r = solve_zero_field_max(-1.5).unwrap();
        assert_abs_diff_eq!(r.x_max, 1.5822779300844877, epsilon = 1e-9);
        assert_abs_diff_eq!(r.q_max, 0.14433702255441797, epsilon = 1e-11);
        let r = solve_zero_field_max(-3.0).unwrap();
        assert_abs_diff_eq!(r.x_max, 0.74299426108092665, epsilon = 1e-9);
        assert_abs_diff_eq!(r.q_max, 0.037784489140654554, epsilon = 1e-11);
    }

    #[test]
    fn stationarity_holds_at_the_root() {
        let r = solve_zero_field_max(-2.0).unwrap();
        let h = 1e-5;
        let dq = (discord_thermal_zero_field(-2.0, r.x_max + h)
            - discord_thermal_zero_field(-2.0, r.x_max - h))
            / (2.0 * h);
        assert!(dq.abs() < 1e-8, "dQ/dx = {dq}");
    }

    #[test]
    fn root_and_direct_maximization_agree() {
        for delta in [-2.0, -1.5, -3.0] {
            let root = solve_zero_field_max(delta).unwrap();
            let search = locate_max_in_field(delta, 0.0).unwrap();
            assert!(
                (root.x_max - search.x_max).abs() <= 1e-9,
                "delta = {delta}: root {} vs search {}",
                root.x_max,
                search.x_max
            );
        }
    }

    #[test]
    fn in_field_maximum_against_zero_field() {
        let zero = solve_zero_field_max(-2.0).unwrap();
        let at = locate_max_in_field(-2.0, 0.0).unwrap();
        assert_abs_diff_eq!(at.x_max, zero.x_max, epsilon = 1e-8);
        assert!(at.residual.is_none());

        let half = locate_max_in_field(-2.0, 0.5).unwrap();
        assert!(half.t_max > zero.t_max);
        assert!(half.q_max < zero.q_max);
        // Frozen from the independent maximization oracle.
        assert_abs_diff_eq!(half.t_max, 0.982856329, epsilon = 1e-7);
        assert_abs_diff_eq!(half.q_max, 0.073926577, epsilon = 1e-9);

        let strong = locate_max_in_field(-2.0, 2.0).unwrap();
        assert!(strong.q_max < 0.083061);
        assert_abs_diff_eq!(strong.t_max, 1.599966993, epsilon = 1e-7);
        assert_abs_diff_eq!(strong.q_max, 0.036228820, epsilon = 1e-9);
    }

    #[test]
    fn field_sign_symmetry_is_exact() {
        let plus = locate_max_in_field(-2.0, 0.5).unwrap();
        let minus = locate_max_in_field(-2.0, -0.5).unwrap();
        assert_eq!(plus, minus);
    }

    #[test]
    fn monotone_field_trends() {
        let mut prev_t = 0.0;
        let mut prev_q = f64::INFINITY;
        for i in 0..=12 {
            let eta = 0.25 * i as f64;
            let r = locate_max_in_field(-2.0, eta).unwrap();
            assert!(r.t_max >= prev_t - 1e-9, "t_m not monotone at eta = {eta}");
            assert!(r.q_max <= prev_q + 1e-12, "q_m not monotone at eta = {eta}");
            (prev_t, prev_q) = (r.t_max, r.q_max);
        }
    }

    #[test]
    fn no_bracket_outside_regime() {
        // For delta >= -1 the zero-field discord grows monotonically toward
        // its T = 0 limit; the interior stationarity condition has no root.
        assert!(matches!(
            solve_zero_field_max(0.0),
            Err(DimerError::NoBracket { .. })
        ));
    }
}
