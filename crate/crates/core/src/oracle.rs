//! Independent numerical routes used to cross-check the closed forms in
//! [`crate::dynamics`]: a generic matrix exponential, fixed-step RK4 on the
//! covariance ODE, and a vectorized Lyapunov solve.
//!
//! Nothing on the production path calls into this module.

use nalgebra::{Matrix4, SMatrix, SVector};

use crate::covariance::CovarianceMatrix;
use crate::dynamics::{DiffusionMatrix, DriftMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IntegrationMethod {
    #[default]
    Rk4,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    step: f64,
    pub method: IntegrationMethod,
}

impl IntegratorConfig {
    pub fn rk4(step: f64) -> Result<Self> {
        if !step.is_finite() || step <= 0.0 {
            return Err(Error::invalid(
                "step",
                step,
                "integration step must be positive",
            ));
        }
        Ok(IntegratorConfig {
            step,
            method: IntegrationMethod::Rk4,
        })
    }

    pub fn step(&self) -> f64 {
        self.step
    }
}

const TAYLOR_TERMS: usize = 30;

/// `exp(m)` by scaling and squaring around a truncated Taylor series.
///
/// The argument is scaled by `2^-s` until its 1-norm is at most 1/2, where
/// the series converges to round-off within about 18 terms.
pub fn expm_generic(m: &Matrix4<f64>) -> Result<Matrix4<f64>> {
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::NumericalDomain(
            "matrix exponential of non-finite matrix".into(),
        ));
    }
    let norm = (0..4)
        .map(|j| m.column(j).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = m / 2f64.powi(squarings);

    let mut sum = Matrix4::identity();
    let mut term = Matrix4::identity();
    for k in 1..=TAYLOR_TERMS {
        term = term * scaled / k as f64;
        sum += term;
        if term.amax() <= f64::EPSILON * 1e-3 * sum.amax() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    Ok(sum)
}

fn covariance_rhs(sigma: &Matrix4<f64>, y: &Matrix4<f64>, d2: &Matrix4<f64>) -> Matrix4<f64> {
    y * sigma + sigma * y.transpose() + d2
}

/// Integrates `dσ/dt = Yσ + σYᵀ + 2D` from `sigma0` over `[0, t]`.
///
/// The step is shrunk to `t/n` with `n = ⌈t / step⌉` so the endpoint is hit
/// exactly. `t = 0` returns `sigma0` without stepping.
pub fn rk4_evolve(
    sigma0: &CovarianceMatrix,
    y: &DriftMatrix,
    d: &DiffusionMatrix,
    t: f64,
    cfg: &IntegratorConfig,
) -> Result<CovarianceMatrix> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::invalid(
            "t",
            t,
            "time must be finite and non-negative",
        ));
    }
    if t == 0.0 {
        return Ok(*sigma0);
    }
    if cfg.step > t {
        return Err(Error::invalid(
            "step",
            cfg.step,
            "integration step exceeds total time",
        ));
    }
    let steps = (t / cfg.step).ceil() as usize;
    let h = t / steps as f64;
    let (y, d2) = (y.matrix(), d.matrix() * 2.0);
    let mut s = *sigma0.matrix();
    for _ in 0..steps {
        let k1 = covariance_rhs(&s, y, &d2);
        let k2 = covariance_rhs(&(s + k1 * (h / 2.0)), y, &d2);
        let k3 = covariance_rhs(&(s + k2 * (h / 2.0)), y, &d2);
        let k4 = covariance_rhs(&(s + k3 * h), y, &d2);
        s += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
    Ok(CovarianceMatrix::from_matrix(s))
}

/// Solves `Yσ + σYᵀ = −2D` through the 16×16 system
/// `(I ⊗ Y + Y ⊗ I) vec σ = −2 vec D`, returning the unsymmetrized solution.
pub fn lyapunov_solve_matrix(y: &DriftMatrix, d: &DiffusionMatrix) -> Result<Matrix4<f64>> {
    let ym = y.matrix();
    if let Some(z) = ym.complex_eigenvalues().iter().find(|z| z.re >= 0.0) {
        return Err(Error::Singular(format!(
            "drift matrix is not stable (eigenvalue {} + {}i)",
            z.re, z.im
        )));
    }
    let mut kron = SMatrix::<f64, 16, 16>::zeros();
    // column-major vec: row index i + 4j holds σ_ij
    for j in 0..4 {
        for i in 0..4 {
            let row = i + 4 * j;
            for k in 0..4 {
                kron[(row, k + 4 * j)] += ym[(i, k)];
                kron[(row, i + 4 * k)] += ym[(j, k)];
            }
        }
    }
    let rhs = SVector::<f64, 16>::from_iterator(d.matrix().iter().map(|v| -2.0 * v));
    let x = kron
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Singular("vectorized Lyapunov system".into()))?;
    Ok(Matrix4::from_iterator(x.iter().copied()))
}

pub fn lyapunov_solve(y: &DriftMatrix, d: &DiffusionMatrix) -> Result<CovarianceMatrix> {
    lyapunov_solve_matrix(y, d).map(CovarianceMatrix::from_matrix)
}
