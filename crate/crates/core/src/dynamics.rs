//! Linear covariance dynamics `dσ/dt = Yσ + σYᵀ + 2D` for two uncoupled
//! oscillators damped at rate `λ` into a common thermal bath.
//!
//! The drift `Y` is block diagonal, so the propagator `M(t) = exp(Yt)` is a
//! damped rotation per mode and is evaluated in closed form. With thermal
//! diffusion the steady state is the Gibbs product state, and
//!
//! ```text
//! σ(t) = M(t) [σ(0) − σ(∞)] Mᵀ(t) + σ(∞)
//! ```

use nalgebra::{Matrix2, Matrix4};

use crate::covariance::{CovarianceMatrix, SystemParams, PX, PY, X, Y};
use crate::error::{Error, Result};

/// Physicality tolerance applied to initial states handed to [`evolve`].
pub const INITIAL_STATE_TOL: f64 = 1e-8;

/// Bath temperature in units with `k = 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Temperature(f64);

impl Temperature {
    pub const ZERO: Temperature = Temperature(0.0);

    pub fn new(t: f64) -> Result<Self> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::invalid(
                "T",
                t,
                "temperature must be finite and non-negative",
            ));
        }
        Ok(Temperature(t))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `coth(ω / 2T)`, equal to one at `T = 0` and expanded as `1 + 2e^{−ω/T}`
/// once the argument exceeds 20.
pub fn thermal_coth(omega: f64, temperature: Temperature) -> f64 {
    let t = temperature.0;
    if t == 0.0 {
        return 1.0;
    }
    let x = omega / (2.0 * t);
    if x > 20.0 {
        1.0 + 2.0 * (-omega / t).exp()
    } else {
        1.0 / x.tanh()
    }
}

/// Drift matrix `Y`, one `[[−λ, 1/m], [−mω², −λ]]` block per mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftMatrix(Matrix4<f64>);

impl DriftMatrix {
    /// Wraps an arbitrary matrix. Stability is not checked; solvers that
    /// need it check themselves.
    pub fn from_matrix(m: Matrix4<f64>) -> Self {
        DriftMatrix(m)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }
}

pub fn drift_matrix(params: &SystemParams) -> DriftMatrix {
    let (m, l) = (params.m(), params.lambda());
    let mut y = Matrix4::zeros();
    for (offset, omega) in [(X, params.omega1()), (Y, params.omega2())] {
        let block = Matrix2::new(-l, 1.0 / m, -m * omega * omega, -l);
        y.fixed_view_mut::<2, 2>(offset, offset).copy_from(&block);
    }
    DriftMatrix(y)
}

/// Symmetric diffusion matrix `D` over `(x, p_x, y, p_y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionMatrix(Matrix4<f64>);

impl DiffusionMatrix {
    pub fn from_matrix(m: Matrix4<f64>) -> Self {
        DiffusionMatrix((m + m.transpose()) * 0.5)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn d_xx(&self) -> f64 {
        self.0[(X, X)]
    }
    pub fn d_xpx(&self) -> f64 {
        self.0[(X, PX)]
    }
    pub fn d_xy(&self) -> f64 {
        self.0[(X, Y)]
    }
    pub fn d_xpy(&self) -> f64 {
        self.0[(X, PY)]
    }
    pub fn d_pxpx(&self) -> f64 {
        self.0[(PX, PX)]
    }
    pub fn d_ypx(&self) -> f64 {
        self.0[(PX, Y)]
    }
    pub fn d_pxpy(&self) -> f64 {
        self.0[(PX, PY)]
    }
    pub fn d_yy(&self) -> f64 {
        self.0[(Y, Y)]
    }
    pub fn d_ypy(&self) -> f64 {
        self.0[(Y, PY)]
    }
    pub fn d_pypy(&self) -> f64 {
        self.0[(PY, PY)]
    }
}

/// Diffusion coefficients whose fixed point is the Gibbs state at `T`:
/// `mω D_xx = D_pp / (mω) = (λ/2) coth(ω/2T)` per mode, all others zero.
pub fn thermal_diffusion(params: &SystemParams, temperature: Temperature) -> DiffusionMatrix {
    let (m, l) = (params.m(), params.lambda());
    let mut d = Matrix4::zeros();
    for (offset, omega) in [(X, params.omega1()), (Y, params.omega2())] {
        let k = 0.5 * l * thermal_coth(omega, temperature);
        d[(offset, offset)] = k / (m * omega);
        d[(offset + 1, offset + 1)] = k * m * omega;
    }
    DiffusionMatrix(d)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionCheck {
    pub name: &'static str,
    /// `lhs − rhs` of the inequality; negative means violated.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionReport {
    pub checks: Vec<DiffusionCheck>,
    pub tol: f64,
}

impl DiffusionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.margin >= -self.tol)
    }
}

/// Checks the six Cauchy–Schwarz constraints that complete positivity
/// imposes on the diffusion coefficients.
pub fn validate_diffusion(d: &DiffusionMatrix, lambda: f64, tol: f64) -> DiffusionReport {
    let quarter_l2 = lambda * lambda / 4.0;
    let checks = vec![
        DiffusionCheck {
            name: "D_xx D_pxpx - D_xpx^2 >= lambda^2/4",
            margin: d.d_xx() * d.d_pxpx() - d.d_xpx().powi(2) - quarter_l2,
        },
        DiffusionCheck {
            name: "D_yy D_pypy - D_ypy^2 >= lambda^2/4",
            margin: d.d_yy() * d.d_pypy() - d.d_ypy().powi(2) - quarter_l2,
        },
        DiffusionCheck {
            name: "D_xx D_yy - D_xy^2 >= 0",
            margin: d.d_xx() * d.d_yy() - d.d_xy().powi(2),
        },
        DiffusionCheck {
            name: "D_pxpx D_pypy - D_pxpy^2 >= 0",
            margin: d.d_pxpx() * d.d_pypy() - d.d_pxpy().powi(2),
        },
        DiffusionCheck {
            name: "D_xx D_pypy - D_xpy^2 >= 0",
            margin: d.d_xx() * d.d_pypy() - d.d_xpy().powi(2),
        },
        DiffusionCheck {
            name: "D_yy D_pxpx - D_ypx^2 >= 0",
            margin: d.d_yy() * d.d_pxpx() - d.d_ypx().powi(2),
        },
    ];
    DiffusionReport { checks, tol }
}

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::invalid(
            "t",
            t,
            "time must be finite and non-negative",
        ));
    }
    Ok(())
}

/// `M(t) = exp(Yt)` in closed form: per mode
/// `e^{−λt}(cos ωt·I + sin ωt·[[0, 1/(mω)], [−mω, 0]])`.
pub fn propagator(params: &SystemParams, t: f64) -> Result<Matrix4<f64>> {
    check_time(t)?;
    let (m, decay) = (params.m(), (-params.lambda() * t).exp());
    let mut out = Matrix4::zeros();
    for (offset, omega) in [(X, params.omega1()), (Y, params.omega2())] {
        let (sin, cos) = (omega * t).sin_cos();
        let block = Matrix2::new(cos, sin / (m * omega), -m * omega * sin, cos) * decay;
        out.fixed_view_mut::<2, 2>(offset, offset).copy_from(&block);
    }
    Ok(out)
}

/// Gibbs product state: `mω σ_xx = σ_pp / (mω) = coth(ω/2T)/2` per mode,
/// no cross-correlations.
pub fn steady_state(params: &SystemParams, temperature: Temperature) -> CovarianceMatrix {
    let m = params.m();
    let mut s = Matrix4::zeros();
    for (offset, omega) in [(X, params.omega1()), (Y, params.omega2())] {
        let half = 0.5 * thermal_coth(omega, temperature);
        s[(offset, offset)] = half / (m * omega);
        s[(offset + 1, offset + 1)] = half * m * omega;
    }
    CovarianceMatrix::from_matrix(s)
}

/// Covariance matrix at time `t` for an initial state `sigma0` in a thermal bath.
pub fn evolve(
    sigma0: &CovarianceMatrix,
    params: &SystemParams,
    temperature: Temperature,
    t: f64,
) -> Result<CovarianceMatrix> {
    check_time(t)?;
    if !sigma0.is_physical(INITIAL_STATE_TOL) {
        return Err(Error::InvalidState(
            "initial covariance matrix violates the uncertainty principle".into(),
        ));
    }
    Ok(evolve_unchecked(sigma0, params, temperature, t))
}

/// [`evolve`] without the input checks, for callers that validated once
/// and then step along a grid.
pub(crate) fn evolve_unchecked(
    sigma0: &CovarianceMatrix,
    params: &SystemParams,
    temperature: Temperature,
    t: f64,
) -> CovarianceMatrix {
    if t == 0.0 {
        return *sigma0;
    }
    let inf = steady_state(params, temperature);
    let m = propagator(params, t).expect("time validated by caller");
    let deviation = sigma0.matrix() - inf.matrix();
    CovarianceMatrix::from_matrix(m * deviation * m.transpose() + inf.matrix())
}
