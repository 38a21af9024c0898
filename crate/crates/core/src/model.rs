//! Dimer Hamiltonian, spectrum, thermal X state, and spin correlators.
//!
//! Everything here works in reduced units: energies in units of the dipolar
//! coupling `D`, the field as `eta = h/D`, and the temperature through
//! `x = D/(k_B T)`. The thermal state of the longitudinal (`theta = 0`)
//! dimer is an X state with four independent elements `(a, b, d, v)`; all
//! Boltzmann weights are evaluated with exponents shifted by the ground-state
//! energy so that nothing overflows up to `x = 700` and beyond.

use crate::error::{DimerError, Result};
use nalgebra::Matrix4;

/// Model parameters of the spin-1/2 dimer: anisotropy `delta`, reduced
/// longitudinal field `eta = h/D`, and the polar angle `theta` between the
/// inter-spin axis and the field (0 for the longitudinal geometry).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimerParams {
    delta: f64,
    eta: f64,
    theta: f64,
}

/// Anisotropy of the dipole-dipole dimer.
pub const DIPOLAR_DELTA: f64 = -2.0;

impl DimerParams {
    /// Longitudinal-geometry parameters (`theta = 0`).
    pub fn new(delta: f64, eta: f64) -> Result<Self> {
        Self::with_theta(delta, eta, 0.0)
    }

    /// Parameters with an explicit polar angle `theta` in `[0, pi]`.
    pub fn with_theta(delta: f64, eta: f64, theta: f64) -> Result<Self> {
        if !delta.is_finite() {
            return Err(DimerError::NonFiniteParameter {
                name: "delta",
                value: delta,
            });
        }
        if !eta.is_finite() {
            return Err(DimerError::NonFiniteParameter {
                name: "eta",
                value: eta,
            });
        }
        if !theta.is_finite() || !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(DimerError::ThetaOutOfRange(theta));
        }
        Ok(Self { delta, eta, theta })
    }

    /// The dipole-dipole dimer (`delta = -2`) in a longitudinal field.
    pub fn dipolar(eta: f64) -> Result<Self> {
        Self::new(DIPOLAR_DELTA, eta)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub(crate) fn require_longitudinal(&self) -> Result<()> {
        if self.theta != 0.0 {
            return Err(DimerError::RequiresLongitudinalAxis(self.theta));
        }
        Ok(())
    }
}

impl Default for DimerParams {
    /// Dipolar dimer at zero field.
    fn default() -> Self {
        Self {
            delta: DIPOLAR_DELTA,
            eta: 0.0,
            theta: 0.0,
        }
    }
}

/// Reduced inverse temperature `x = D/(k_B T)`.
///
/// `x = 0` is the infinite-temperature limit and `x = infinity` encodes
/// `T = 0`, which all thermal operations treat as an exact analytic branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalPoint {
    x: f64,
}

impl ThermalPoint {
    pub fn new(x: f64) -> Result<Self> {
        if x.is_nan() || x < 0.0 {
            return Err(DimerError::NegativeInverseTemperature(x));
        }
        Ok(Self { x })
    }

    /// From the reduced temperature `t = k_B T / D`; `t = 0` maps to `x = infinity`.
    pub fn from_reduced_temperature(t: f64) -> Result<Self> {
        if t.is_nan() || t < 0.0 {
            return Err(DimerError::NegativeInverseTemperature(t));
        }
        Self::new(if t == 0.0 { f64::INFINITY } else { 1.0 / t })
    }

    /// The absolute-zero point (`x = infinity`).
    pub fn zero_temperature() -> Self {
        Self { x: f64::INFINITY }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn reduced_temperature(&self) -> f64 {
        if self.x == 0.0 {
            f64::INFINITY
        } else {
            1.0 / self.x
        }
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.x.is_infinite()
    }
}

/// The four independent elements of the thermal X state (Gibbs state of the
/// longitudinal dimer): occupations `a`, `b`, `d` and the real coherence `v`.
///
/// Invariants: `a, b, d >= 0`, `a + d + 2b = 1`, and `|v| <= b` so that all
/// four eigenvalues `a`, `d`, `b + v`, `b - v` are non-negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    a: f64,
    b: f64,
    d: f64,
    v: f64,
}

const STATE_TOL: f64 = 1e-12;

impl XState {
    /// Validating constructor; rejects violations of the invariants beyond
    /// `1e-12` and clamps smaller floating-point dust to the physical region.
    pub fn new(a: f64, b: f64, d: f64, v: f64) -> Result<Self> {
        for (name, p) in [("a", a), ("b", b), ("d", d)] {
            if !p.is_finite() || p < -STATE_TOL {
                return Err(DimerError::InvalidXState(format!(
                    "occupation {name} = {p} is negative or non-finite"
                )));
            }
        }
        if !v.is_finite() {
            return Err(DimerError::InvalidXState(format!(
                "coherence v = {v} is non-finite"
            )));
        }
        let norm = a + d + 2.0 * b;
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(DimerError::InvalidXState(format!(
                "normalization a + d + 2b = {norm} deviates from 1 beyond 1e-12"
            )));
        }
        let a = a.max(0.0);
        let b = b.max(0.0);
        let d = d.max(0.0);
        if v.abs() > b + STATE_TOL {
            return Err(DimerError::InvalidXState(format!(
                "|v| = {} exceeds b = {b}, the state is not positive",
                v.abs()
            )));
        }
        let v = v.clamp(-b, b);
        Ok(Self { a, b, d, v })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    /// Eigenvalues of the state: `a`, `d`, `b + v`, `b - v`.
    pub fn eigenvalues(&self) -> [f64; 4] {
        [self.a, self.d, self.b + self.v, self.b - self.v]
    }
}

/// Unary and binary spin correlators of the thermal state: magnetization
/// `m = <s1z>`, longitudinal `g_par = <s1z s2z>`, transverse `g_perp = <s1x s2x>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Correlators {
    pub m: f64,
    pub g_par: f64,
    pub g_perp: f64,
}

/// Energy levels of the longitudinal dimer in units of `D`.
///
/// `e1`, `e2` are the field-independent levels of the central block and
/// `e3`, `e4` the polarized corner levels; `ground` is the minimum of all four.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub e4: f64,
    pub ground: f64,
}

impl Spectrum {
    pub fn levels(&self) -> [f64; 4] {
        [self.e1, self.e2, self.e3, self.e4]
    }
}

/// Dimer Hamiltonian in units of `D`, for an arbitrary polar angle of the
/// inter-spin axis:
///
/// `H/D = [s1.s2 - (1 - delta) (n.s1)(n.s2)]/2 - (eta/2)(s1z + s2z)`,
///
/// with `n = (sin theta, 0, cos theta)`. At `theta = 0` this is the XXZ
/// block form with corners `delta/2 -+ eta` and central block `[[-delta/2, 1],
/// [1, -delta/2]]`; the dipolar dimer has `delta = -2`.
pub fn hamiltonian_matrix(params: &DimerParams) -> Matrix4<f64> {
    let (delta, eta, theta) = (params.delta, params.eta, params.theta);
    let (s, c) = theta.sin_cos();
    let kappa = 1.0 - delta;
    let diag = 0.5 * (1.0 - kappa * c * c);
    let anti = -0.5 * kappa * s * s;
    let flip = 1.0 + anti;
    let cross = -0.5 * kappa * s * c;

    #[rustfmt::skip]
    let h = Matrix4::new(
        diag - eta, cross,       cross,       anti,
        cross,      -diag,       flip,        -cross,
        cross,      flip,        -diag,       -cross,
        anti,       -cross,      -cross,      diag + eta,
    );
    h
}

/// Energy spectrum of the longitudinal (`theta = 0`) Hamiltonian in units
/// of `D`: `e1,2 = -delta/2 +- 1`, `e3,4 = delta/2 -+ eta`.
pub fn spectrum(params: &DimerParams) -> Result<Spectrum> {
    params.require_longitudinal()?;
    let (delta, eta) = (params.delta, params.eta);
    let e1 = -0.5 * delta + 1.0;
    let e2 = -0.5 * delta - 1.0;
    let e3 = 0.5 * delta - eta;
    let e4 = 0.5 * delta + eta;
    let ground = e1.min(e2).min(e3).min(e4);
    Ok(Spectrum {
        e1,
        e2,
        e3,
        e4,
        ground,
    })
}

/// Boltzmann weights relative to the ground level, `w_i = exp(-x (e_i - e0))`.
/// All exponents are non-positive, so the weights stay in `(0, 1]` for any `x`.
fn shifted_weights(spectrum: &Spectrum, x: f64) -> [f64; 4] {
    let e0 = spectrum.ground;
    [
        (-(x) * (spectrum.e1 - e0)).exp(),
        (-(x) * (spectrum.e2 - e0)).exp(),
        (-(x) * (spectrum.e3 - e0)).exp(),
        (-(x) * (spectrum.e4 - e0)).exp(),
    ]
}

/// Partition function `Z = 2 (cosh x + e^{-x delta} cosh(x eta)) e^{x delta / 2}`,
/// evaluated as `exp(ln Z)` with the ground-shifted sum of Boltzmann weights.
///
/// Rejects `x = infinity`; use [`gibbs_xstate`] for the analytic `T = 0` state.
pub fn partition_function(params: &DimerParams, t: ThermalPoint) -> Result<f64> {
    Ok(log_partition_function(params, t)?.exp())
}

/// `ln Z`, which stays representable even when `Z` itself would overflow.
pub fn log_partition_function(params: &DimerParams, t: ThermalPoint) -> Result<f64> {
    params.require_longitudinal()?;
    if t.is_zero_temperature() {
        return Err(DimerError::ZeroTemperature);
    }
    let sp = spectrum(params)?;
    let w = shifted_weights(&sp, t.x());
    let sum: f64 = w.iter().sum();
    Ok(-t.x() * sp.ground + sum.ln())
}

/// Thermal Gibbs X state of the longitudinal dimer.
///
/// For finite `x` the elements are the shifted Boltzmann weights
/// `a = w3/Z'`, `d = w4/Z'`, `b = (w1 + w2)/(2Z')`, `v = (w1 - w2)/(2Z')`.
/// At `x = infinity` the state is the exact ground-manifold limit: an equal
/// mixture over the degenerate ground levels, which reproduces
/// `a = d = 1/2` at `eta = 0` and the fully polarized `a = 1` (or `d = 1`)
/// product states at `eta > 0` (`eta < 0`) for `delta < -1`.
pub fn gibbs_xstate(params: &DimerParams, t: ThermalPoint) -> Result<XState> {
    params.require_longitudinal()?;
    let sp = spectrum(params)?;
    if t.is_zero_temperature() {
        return ground_manifold_state(&sp);
    }
    let [w1, w2, w3, w4] = shifted_weights(&sp, t.x());
    let z = w1 + w2 + w3 + w4;
    // b + v = w1/z and b - v = w2/z stay non-negative by construction.
    XState::new(w3 / z, (w1 + w2) / (2.0 * z), w4 / z, (w1 - w2) / (2.0 * z))
}

/// Equal mixture over the degenerate ground levels of the spectrum.
fn ground_manifold_state(sp: &Spectrum) -> Result<XState> {
    const TIE: f64 = 1e-12;
    let occupied = |e: f64| -> f64 {
        if e - sp.ground <= TIE {
            1.0
        } else {
            0.0
        }
    };
    let (n1, n2, n3, n4) = (
        occupied(sp.e1),
        occupied(sp.e2),
        occupied(sp.e3),
        occupied(sp.e4),
    );
    let n = n1 + n2 + n3 + n4;
    XState::new(n3 / n, (n1 + n2) / (2.0 * n), n4 / n, (n1 - n2) / (2.0 * n))
}

/// `sinh(arg) * exp(shift)` for `shift <= -|arg|`, computed without overflow
/// or saturation: `(e^{arg+shift} - e^{-arg+shift})/2 = -e^{arg+shift} expm1(-2 arg) / 2`.
/// The leading exponent is an exact-math non-positive quantity; rounding of
/// `arg + shift` can leave ulp-level dust above zero, which is clamped so the
/// result keeps its exact bound `|sinh(arg) e^shift| <= 1/2`.
fn sinh_shifted(arg: f64, shift: f64) -> f64 {
    debug_assert!(shift <= 1e-9 - arg.abs());
    let (a, sign) = if arg < 0.0 { (-arg, -1.0) } else { (arg, 1.0) };
    -sign * (a + shift).min(0.0).exp() * (-2.0 * a).exp_m1() / 2.0 + 0.0
}

/// `cosh(arg) * exp(shift)` under the same conditions; a sum of two
/// non-negative exponentials, so no cancellation.
fn cosh_shifted(arg: f64, shift: f64) -> f64 {
    let a = arg.abs();
    ((a + shift).min(0.0).exp() + (shift - a).exp()) / 2.0
}

/// Magnetization and correlation functions of the thermal state:
///
/// `m = (2/Z) e^{-x delta/2} sinh(x eta)`,
/// `g_par = 1 - (4/Z) e^{x delta/2} cosh x`,
/// `g_perp = -(2/Z) e^{x delta/2} sinh x`,
///
/// evaluated in ground-shifted form. At `x = infinity` the exact limits are
/// `(0, 1, 0)` for `eta = 0` and `(sign(eta), 1, 0)` otherwise.
pub fn correlators(params: &DimerParams, t: ThermalPoint) -> Result<Correlators> {
    params.require_longitudinal()?;
    let sp = spectrum(params)?;
    if t.is_zero_temperature() {
        let s = ground_manifold_state(&sp)?;
        return Ok(Correlators {
            m: s.a() - s.d(),
            g_par: 1.0 - 4.0 * s.b(),
            g_perp: 2.0 * s.v(),
        });
    }
    let x = t.x();
    let [w1, w2, w3, w4] = shifted_weights(&sp, x);
    let z = w1 + w2 + w3 + w4;
    // Corner pair: e^{-x(delta/2 - e0)} sinh(x eta), with delta/2 - e0 >= |eta|.
    let m = 2.0 * sinh_shifted(x * params.eta, -x * (0.5 * params.delta - sp.ground)) / z;
    // Central pair: e^{-x(-delta/2 - e0)} {cosh, sinh}(x), with -delta/2 - e0 >= 1.
    let central_shift = -x * (-0.5 * params.delta - sp.ground);
    let g_par = 1.0 - 4.0 * cosh_shifted(x, central_shift) / z;
    let g_perp = -2.0 * sinh_shifted(x, central_shift) / z;
    Ok(Correlators { m, g_par, g_perp })
}

/// Reconstruct the X state from the correlators:
/// `a = (1 + 2m + g_par)/4`, `b = (1 - g_par)/4`, `v = g_perp/2`,
/// `d = (1 - 2m + g_par)/4`. Fails if the result violates the state invariants.
pub fn xstate_from_correlators(c: &Correlators) -> Result<XState> {
    XState::new(
        0.25 * (1.0 + 2.0 * c.m + c.g_par),
        0.25 * (1.0 - c.g_par),
        0.25 * (1.0 - 2.0 * c.m + c.g_par),
        0.5 * c.g_perp,
    )
}
