//! Information correlations of the thermal X state: entropies, mutual
//! information, quantum discord, classical correlation, concurrence and
//! entanglement of formation, and the zero-field geometric discord.
//!
//! All entropic quantities are in bits (base-2 logarithms), so the discord of
//! a two-qubit state is bounded by 1. The convention `0 log 0 = 0` applies
//! throughout, and terms with a vanishing numerator in the conditional-entropy
//! sums contribute zero.

use crate::error::{DimerError, Result};
use crate::model::{self, DimerParams, ThermalPoint, XState};
use std::f64::consts::LN_2;

/// Tolerance below which a negative logarithm argument is treated as
/// floating-point dust and clamped to zero; larger violations are an error.
const LOG_DOMAIN_TOL: f64 = 1e-12;

/// `p log2 p` with `0 log 0 = 0`; tiny negative dust is clamped.
pub(crate) fn xlog2(p: f64) -> f64 {
    if p > 0.0 {
        p * p.log2()
    } else {
        debug_assert!(p >= -LOG_DOMAIN_TOL, "negative probability {p}");
        0.0
    }
}

/// Binary entropy in bits.
fn binary_entropy(p: f64) -> f64 {
    -xlog2(p) - xlog2(1.0 - p) + 0.0
}

/// Entropy of the reduced single-spin state, `S_A = H2(a + b)` since the
/// marginal is `diag(a + b, b + d)`.
pub fn entropy_sub(state: &XState) -> f64 {
    // `+ 0.0` normalizes the -0.0 produced by pure marginals.
    -xlog2(state.a() + state.b()) - xlog2(state.b() + state.d()) + 0.0
}

/// Joint entropy from the four eigenvalues `a`, `d`, `b + v`, `b - v`.
pub fn entropy_joint(state: &XState) -> f64 {
    state.eigenvalues().iter().map(|&p| -xlog2(p)).sum::<f64>() + 0.0
}

/// Total correlation `I = 2 S_A - S_AB` (the marginals of the X state are equal).
pub fn mutual_information(state: &XState) -> f64 {
    2.0 * entropy_sub(state) - entropy_joint(state)
}

/// The two measurement branches of the X-state discord.
///
/// `Q1` is the longitudinal branch,
/// `Q1 = S_A - S_AB - a log2(a/(a+b)) - b log2(b/(a+b)) - b log2(b/(b+d)) - d log2(d/(b+d))`,
/// and `Q2` the transverse one,
/// `Q2 = S_A - S_AB - d1 log2 d1 - d2 log2 d2` with
/// `d1,2 = [1 +- sqrt((a-d)^2 + 4 v^2)]/2`.
pub fn discord_branches(state: &XState) -> (f64, f64) {
    let base = entropy_sub(state) - entropy_joint(state);
    let (a, b, d, v) = (state.a(), state.b(), state.d(), state.v());

    let cond = |num: f64, den: f64| -> f64 {
        if num > 0.0 {
            num * (num / den).log2()
        } else {
            0.0
        }
    };
    let q1 = base - cond(a, a + b) - cond(b, a + b) - cond(b, b + d) - cond(d, b + d) + 0.0;

    let split = f64::hypot(a - d, 2.0 * v);
    let q2 = base + binary_entropy(0.5 * (1.0 + split));
    (q1, q2)
}

/// Quantum discord `Q = min(Q1, Q2)`, clamped against negative rounding dust.
pub fn discord(state: &XState) -> f64 {
    let (q1, q2) = discord_branches(state);
    q1.min(q2).max(0.0)
}

/// Classical correlation `C = I - Q`.
pub fn classical_correlation(state: &XState) -> f64 {
    (mutual_information(state) - discord(state)).max(0.0)
}

/// Zero-field classical correlation from the longitudinal correlator alone:
/// `C = [(1 + g) log2(1 + g) + (1 - g) log2(1 - g)] / 2`.
pub fn zero_field_classical(g_par: f64) -> f64 {
    0.5 * (xlog2(1.0 + g_par) + xlog2(1.0 - g_par))
}

/// Zero-field discord from the two correlators:
///
/// `Q = [(1 + 2gp - g) log2(1 + 2gp - g) - 2 (1 - g) log2(1 - g)
///       + (1 - 2gp - g) log2(1 - 2gp - g)] / 4`
///
/// with `g = g_par`, `gp = g_perp`. Valid for `g_par >= |g_perp|`; a logarithm
/// argument below `-1e-12` is a domain error.
pub fn zero_field_discord(g_par: f64, g_perp: f64) -> Result<f64> {
    let args = [
        1.0 + 2.0 * g_perp - g_par,
        1.0 - g_par,
        1.0 - 2.0 * g_perp - g_par,
    ];
    for &arg in &args {
        if arg < -LOG_DOMAIN_TOL {
            return Err(DimerError::LogDomain(arg));
        }
    }
    let [lo, mid, hi] = args.map(|a| xlog2(a.max(0.0)));
    Ok(0.25 * (lo - 2.0 * mid + hi))
}

/// Closed-form thermal discord at zero field as a function of `x = D/(k_B T)`:
///
/// `Q(x) = [x sinh x - cosh x ln cosh x] / [(cosh x + e^{-delta x}) ln 2]`.
///
/// Evaluated directly for `x <= 1`; for larger `x` every term is shifted by
/// `e^{-s x}` with `s = max(1, -delta)`, using the exact rewrite
/// `x sinh x - cosh x ln cosh x = cosh x (ln 2 - ln(1 + e^{-2x})) - x e^{-x}`,
/// so the result stays accurate and finite up to `x = 700` and beyond.
/// Returns 0 at `x = infinity`.
pub fn discord_thermal_zero_field(delta: f64, x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x.is_infinite() {
        return 0.0;
    }
    if x <= 1.0 {
        let num = x * x.sinh() - x.cosh() * ln_cosh(x);
        let den = (x.cosh() + (-delta * x).exp()) * LN_2;
        num / den
    } else {
        let s = (-delta).max(1.0);
        let cosh_shifted = (((1.0 - s) * x).exp() + (-(1.0 + s) * x).exp()) / 2.0;
        let num = cosh_shifted * (LN_2 - (-2.0 * x).exp().ln_1p()) - x * (-(1.0 + s) * x).exp();
        let den = (cosh_shifted + (-(delta + s) * x).exp()) * LN_2;
        num / den
    }
}

/// `ln cosh x` without overflow and without precision loss near zero.
fn ln_cosh(x: f64) -> f64 {
    let ax = x.abs();
    if ax > 20.0 {
        ax - LN_2 + (-2.0 * ax).exp().ln_1p()
    } else {
        let s = (0.5 * ax).sinh();
        (2.0 * s * s).ln_1p()
    }
}

/// Concurrence of the X state, `2 max(|v| - sqrt(a d), 0)`.
pub fn concurrence(state: &XState) -> f64 {
    (2.0 * (state.v().abs() - (state.a() * state.d()).sqrt())).max(0.0)
}

/// Entanglement of formation from the concurrence:
/// `E = H2((1 + sqrt(1 - c^2))/2)` in bits.
pub fn entanglement(concurrence: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&concurrence));
    binary_entropy(0.5 * (1.0 + (1.0 - concurrence * concurrence).sqrt()))
}

/// Geometric discord at zero field, `Q_g = g_perp^2`.
///
/// The formula is specific to the zero-field state; a non-zero `eta` context
/// is rejected rather than extrapolated.
pub fn geometric_discord_zero_field(eta: f64, g_perp: f64) -> Result<f64> {
    if eta != 0.0 {
        return Err(DimerError::NonzeroField(eta));
    }
    Ok(g_perp * g_perp)
}

/// All correlation measures of one thermal point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationSet {
    /// Subsystem entropy `S_A` (bits).
    pub s_a: f64,
    /// Joint entropy `S_AB` (bits).
    pub s_ab: f64,
    /// Total correlation `I` (bits).
    pub mutual: f64,
    /// Longitudinal discord branch (bits).
    pub q1: f64,
    /// Transverse discord branch (bits).
    pub q2: f64,
    /// Quantum discord `Q = min(Q1, Q2)` (bits).
    pub discord: f64,
    /// Classical correlation `C = I - Q` (bits).
    pub classical: f64,
    /// Concurrence in `[0, 1]`.
    pub concurrence: f64,
    /// Entanglement of formation (bits).
    pub entanglement: f64,
    /// Geometric discord; present only at zero field.
    pub geometric: Option<f64>,
}

impl CorrelationSet {
    /// Evaluate every measure for the thermal state at `(params, t)`.
    pub fn evaluate(params: &DimerParams, t: ThermalPoint) -> Result<Self> {
        let state = model::gibbs_xstate(params, t)?;
        let geometric = if params.eta() == 0.0 {
            let c = model::correlators(params, t)?;
            Some(geometric_discord_zero_field(params.eta(), c.g_perp)?)
        } else {
            None
        };
        Ok(Self::from_state(&state, geometric))
    }

    /// Assemble the set from an X state; `geometric` is supplied by the
    /// caller because it needs the zero-field context.
    pub fn from_state(state: &XState, geometric: Option<f64>) -> Self {
        let s_a = entropy_sub(state);
        let s_ab = entropy_joint(state);
        let mutual = 2.0 * s_a - s_ab;
        let (q1, q2) = discord_branches(state);
        let discord = q1.min(q2).max(0.0);
        let classical = (mutual - discord).max(0.0);
        let concurrence = concurrence(state);
        Self {
            s_a,
            s_ab,
            mutual,
            q1,
            q2,
            discord,
            classical,
            concurrence,
            entanglement: entanglement(concurrence),
            geometric,
        }
    }
}
