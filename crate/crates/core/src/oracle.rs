//! Brute-force verification machinery, independent of the closed forms:
//! generic 4x4 density matrices, partial traces, measurement-conditioned
//! states, numerical optimization of the classical correlation over all
//! rank-1 projective measurements on one spin, and the general two-qubit
//! concurrence.
//!
//! Nothing in this module reuses the X-state formulas; it exists to check
//! them. Complex arithmetic is carried throughout even though the
//! longitudinal states are real, so tilted-axis Gibbs states can be handled.

use crate::correlations::xlog2;
use crate::error::{DimerError, Result};
use crate::model::{hamiltonian_matrix, DimerParams, ThermalPoint, XState};
use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex;

pub type C64 = Complex<f64>;

/// Default measurement-direction grid resolution.
pub const DEFAULT_GRID_N: usize = 64;
/// Default number of shrinking-grid refinement iterations.
pub const DEFAULT_REFINE_ITERS: usize = 40;

/// Outcomes with probability below this weight are dropped.
const OUTCOME_TOL: f64 = 1e-14;

/// A validated two-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix4(Matrix4<C64>);

impl DensityMatrix4 {
    /// Validating constructor: Hermitian and unit trace within `1e-12`,
    /// eigenvalues above `-1e-10`.
    pub fn new(m: Matrix4<C64>) -> Result<Self> {
        let herm_err = (m - m.adjoint()).norm();
        if herm_err > 1e-12 {
            return Err(DimerError::InvalidDensityMatrix(format!(
                "not Hermitian, |m - m^+| = {herm_err:.3e}"
            )));
        }
        let trace = m.trace();
        if (trace.re - 1.0).abs() > 1e-12 || trace.im.abs() > 1e-12 {
            return Err(DimerError::InvalidDensityMatrix(format!(
                "trace {trace} deviates from 1"
            )));
        }
        let eigs = m.symmetric_eigen().eigenvalues;
        if let Some(bad) = eigs.iter().find(|&&e| e < -1e-10) {
            return Err(DimerError::InvalidDensityMatrix(format!(
                "negative eigenvalue {bad}"
            )));
        }
        Ok(Self(m))
    }

    /// Embed an X state into the full matrix (basis `00, 01, 10, 11`).
    pub fn from_xstate(s: &XState) -> Self {
        let mut m = Matrix4::zeros();
        m[(0, 0)] = C64::from(s.a());
        m[(1, 1)] = C64::from(s.b());
        m[(2, 2)] = C64::from(s.b());
        m[(3, 3)] = C64::from(s.d());
        m[(1, 2)] = C64::from(s.v());
        m[(2, 1)] = C64::from(s.v());
        Self(m)
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.0
    }

    /// Eigenvalues (unordered), with negative rounding dust clamped to zero.
    pub fn eigenvalues(&self) -> Vector4<f64> {
        let mut e = self.0.symmetric_eigen().eigenvalues;
        e.apply(|x| *x = x.max(0.0));
        e
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> f64 {
        self.eigenvalues().iter().map(|&p| -xlog2(p)).sum()
    }
}

/// Which spin of the pair to keep under a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// A rank-1 projective measurement direction on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementDirection {
    polar: f64,
    azimuth: f64,
}

impl MeasurementDirection {
    pub fn new(polar: f64, azimuth: f64) -> Result<Self> {
        if !polar.is_finite() || !(0.0..=std::f64::consts::PI).contains(&polar) {
            return Err(DimerError::ThetaOutOfRange(polar));
        }
        if !azimuth.is_finite() || !(0.0..2.0 * std::f64::consts::PI).contains(&azimuth) {
            return Err(DimerError::NonFiniteParameter {
                name: "azimuth",
                value: azimuth,
            });
        }
        Ok(Self { polar, azimuth })
    }

    pub fn polar(&self) -> f64 {
        self.polar
    }

    pub fn azimuth(&self) -> f64 {
        self.azimuth
    }

    /// The projector `(1 + n.sigma)/2` onto the `+` outcome.
    pub fn projector(&self) -> Matrix2<C64> {
        projector_from_angles(self.polar, self.azimuth)
    }
}

fn projector_from_angles(polar: f64, azimuth: f64) -> Matrix2<C64> {
    let (sp, cp) = polar.sin_cos();
    let (sa, ca) = azimuth.sin_cos();
    let (nx, ny, nz) = (sp * ca, sp * sa, cp);
    Matrix2::new(
        C64::new(0.5 * (1.0 + nz), 0.0),
        C64::new(0.5 * nx, -0.5 * ny),
        C64::new(0.5 * nx, 0.5 * ny),
        C64::new(0.5 * (1.0 - nz), 0.0),
    )
}

/// Thermal Gibbs state of the full Hamiltonian, any polar angle, by spectral
/// decomposition with the exponents shifted by the ground energy.
pub fn gibbs_general(params: &DimerParams, t: ThermalPoint) -> Result<DensityMatrix4> {
    if t.is_zero_temperature() {
        return Err(DimerError::ZeroTemperature);
    }
    let eig = hamiltonian_matrix(params).symmetric_eigen();
    let ground = eig.eigenvalues.min();
    let weights = eig.eigenvalues.map(|e| (-t.x() * (e - ground)).exp());
    let z: f64 = weights.iter().sum();
    let mut rho = Matrix4::<f64>::zeros();
    for i in 0..4 {
        let v = eig.eigenvectors.column(i);
        rho += (weights[i] / z) * v * v.transpose();
    }
    Ok(DensityMatrix4(rho.map(C64::from)))
}

/// Partial trace keeping the requested spin; basis index is `2 a + b`.
pub fn partial_trace(rho: &DensityMatrix4, keep: Subsystem) -> Matrix2<C64> {
    let m = &rho.0;
    match keep {
        Subsystem::A => Matrix2::new(
            m[(0, 0)] + m[(1, 1)],
            m[(0, 2)] + m[(1, 3)],
            m[(2, 0)] + m[(3, 1)],
            m[(2, 2)] + m[(3, 3)],
        ),
        Subsystem::B => Matrix2::new(
            m[(0, 0)] + m[(2, 2)],
            m[(0, 1)] + m[(2, 3)],
            m[(1, 0)] + m[(3, 2)],
            m[(1, 1)] + m[(3, 3)],
        ),
    }
}

/// Entropy of a 2x2 Hermitian density matrix from its closed-form eigenvalues.
pub fn entropy2(rho: &Matrix2<C64>) -> f64 {
    let mean = 0.5 * (rho[(0, 0)].re + rho[(1, 1)].re);
    let half_gap = f64::hypot(0.5 * (rho[(0, 0)].re - rho[(1, 1)].re), rho[(0, 1)].norm());
    -xlog2((mean + half_gap).max(0.0)) - xlog2((mean - half_gap).max(0.0))
}

/// Measurement of spin B along `direction`: outcome probabilities and the
/// conditional states of A. Outcomes with weight below `1e-14` are skipped.
pub fn conditioned_state(
    rho: &DensityMatrix4,
    direction: &MeasurementDirection,
) -> Vec<(f64, Matrix2<C64>)> {
    conditioned_by_projector(rho, &direction.projector())
}

fn conditioned_by_projector(rho: &DensityMatrix4, pi_plus: &Matrix2<C64>) -> Vec<(f64, Matrix2<C64>)> {
    let pi_minus = Matrix2::identity() - pi_plus;
    let mut outcomes = Vec::with_capacity(2);
    for pi in [pi_plus, &pi_minus] {
        let full = identity_kron(pi);
        let sub = DensityMatrix4(full * rho.0 * full);
        let p = sub.0.trace().re;
        if p < OUTCOME_TOL {
            continue;
        }
        outcomes.push((p, partial_trace(&sub, Subsystem::A) / C64::from(p)));
    }
    outcomes
}

/// `1 (x) op` acting on spin B.
fn identity_kron(op: &Matrix2<C64>) -> Matrix4<C64> {
    let mut m = Matrix4::zeros();
    for block in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                m[(2 * block + i, 2 * block + j)] = op[(i, j)];
            }
        }
    }
    m
}

/// The Henderson–Vedral objective `S(rho_A) - sum_i p_i S(rho_A^i)` for a
/// measurement of B along `(polar, azimuth)`.
fn measurement_objective(rho: &DensityMatrix4, s_a: f64, polar: f64, azimuth: f64) -> f64 {
    let conditional: f64 = conditioned_by_projector(rho, &projector_from_angles(polar, azimuth))
        .iter()
        .map(|(p, r)| p * entropy2(r))
        .sum();
    s_a - conditional
}

/// Classical correlation by maximizing the measurement objective over the
/// Bloch sphere: a `grid_n x grid_n` coarse grid over (polar, azimuth)
/// followed by `refine_iters` shrinking-grid iterations. The result is a
/// lower bound converging to the projective-measurement optimum.
pub fn classical_correlation_numeric(
    rho: &DensityMatrix4,
    grid_n: usize,
    refine_iters: usize,
) -> f64 {
    debug_assert!(grid_n >= 16, "measurement grid too coarse");
    let s_a = entropy2(&partial_trace(rho, Subsystem::A));
    let pi = std::f64::consts::PI;

    let mut best = f64::NEG_INFINITY;
    let (mut bp, mut ba) = (0.0, 0.0);
    for i in 0..grid_n {
        let polar = pi * i as f64 / (grid_n - 1) as f64;
        for j in 0..grid_n {
            let azimuth = 2.0 * pi * j as f64 / grid_n as f64;
            let val = measurement_objective(rho, s_a, polar, azimuth);
            if val > best {
                (best, bp, ba) = (val, polar, azimuth);
            }
        }
    }

    let mut wp = pi / (grid_n - 1) as f64;
    let mut wa = 2.0 * pi / grid_n as f64;
    for _ in 0..refine_iters {
        for dp in [-wp, 0.0, wp] {
            for da in [-wa, 0.0, wa] {
                if dp == 0.0 && da == 0.0 {
                    continue;
                }
                let polar = (bp + dp).clamp(0.0, pi);
                let azimuth = ba + da;
                let val = measurement_objective(rho, s_a, polar, azimuth);
                if val > best {
                    (best, bp, ba) = (val, polar, azimuth);
                }
            }
        }
        wp *= 0.55;
        wa *= 0.55;
    }
    best
}

/// Total correlation `I = S(rho_A) + S(rho_B) - S(rho_AB)` from eigenvalues.
pub fn mutual_information_numeric(rho: &DensityMatrix4) -> f64 {
    entropy2(&partial_trace(rho, Subsystem::A)) + entropy2(&partial_trace(rho, Subsystem::B))
        - rho.entropy()
}

/// Discord as the optimized measurement deficit, `Q = I - C_numeric`.
pub fn discord_numeric(rho: &DensityMatrix4, grid_n: usize, refine_iters: usize) -> f64 {
    mutual_information_numeric(rho) - classical_correlation_numeric(rho, grid_n, refine_iters)
}

/// General two-qubit concurrence by the spin-flip construction:
/// the decreasing square-rooted eigenvalues of
/// `sqrt(rho) (sy x sy) rho* (sy x sy) sqrt(rho)` give
/// `C = max(0, l1 - l2 - l3 - l4)`.
pub fn concurrence_general(rho: &DensityMatrix4) -> f64 {
    let flipped = spin_flip(&rho.0);
    let root = hermitian_sqrt(&rho.0);
    let mut m = root * flipped * root;
    // Symmetrize away rounding drift before the final eigensolve.
    m = (m + m.adjoint()) / C64::from(2.0);
    let mut lambdas: Vec<f64> = m
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|&e| e.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0)
}

/// `(sy x sy) rho* (sy x sy)`.
fn spin_flip(rho: &Matrix4<C64>) -> Matrix4<C64> {
    let mut yy = Matrix4::<C64>::zeros();
    yy[(0, 3)] = C64::from(-1.0);
    yy[(1, 2)] = C64::from(1.0);
    yy[(2, 1)] = C64::from(1.0);
    yy[(3, 0)] = C64::from(-1.0);
    yy * rho.map(|z| z.conj()) * yy
}

fn hermitian_sqrt(m: &Matrix4<C64>) -> Matrix4<C64> {
    let eig = m.symmetric_eigen();
    let mut out = Matrix4::zeros();
    for i in 0..4 {
        let v = eig.eigenvectors.column(i);
        out += v * v.adjoint() * C64::from(eig.eigenvalues[i].max(0.0).sqrt());
    }
    out
}
