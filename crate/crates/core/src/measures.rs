//! Correlation quantifiers for two-mode Gaussian states.
//!
//! - Simon's separability function `S` (separable iff `S ≥ 0`)
//! - logarithmic negativity `E_N = −log₂ 2ν̃₋` (entangled iff `E_N > 0`)
//! - Gaussian quantum discord `D`, classical correlations `C` and mutual
//!   information `I`, with measurements on mode 2, so that `I = C + D`
//!
//! The entropy function `f` takes doubled symplectic eigenvalues: a pure
//! mode has argument one and zero entropy. `E_N` is always in bits; `f`
//! uses the configured [`EntropyLogBase`].

use std::f64::consts::LN_2;
use std::fmt;

use nalgebra::Matrix2;

use crate::covariance::{CovarianceMatrix, ExactInvariants, SystemParams, DISCRIMINANT_CLAMP};
use crate::dd::Dd;
use crate::dynamics::{thermal_coth, Temperature};
use crate::error::{Error, Result};

/// Physicality tolerance for inputs to the entropic measures.
pub const PHYSICAL_TOL: f64 = 1e-8;

/// Entropy arguments in `[1 − ENTROPY_CLAMP, 1]` are treated as exactly one.
pub const ENTROPY_CLAMP: f64 = 1e-12;

/// Below this `γ²` the state is treated as a product state and `ε = α`.
pub const PRODUCT_GAMMA_SQ: f64 = 1e-24;

/// Relative width of the band around zero in which the square-root
/// arguments of the `ε` branches, and the branch condition itself, are
/// considered tied.
pub const EPSILON_REL_BAND: f64 = 1e-12;

/// Agreement required between the two `ε` branches on the boundary.
pub const BRANCH_AGREEMENT: f64 = 1e-9;

/// Discord values in `[−DISCORD_CLAMP, 0)` are reported as zero.
pub const DISCORD_CLAMP: f64 = 1e-10;

/// Simon values smaller than this multiple of the summed term magnitudes
/// are below round-off and reported as exactly zero.
pub const SIMON_ZERO_BAND: f64 = 64.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EntropyLogBase {
    #[default]
    Natural,
    Base2,
}

impl EntropyLogBase {
    fn ln_base(self) -> f64 {
        match self {
            EntropyLogBase::Natural => 1.0,
            EntropyLogBase::Base2 => LN_2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EntropyLogBase::Natural => "natural",
            EntropyLogBase::Base2 => "base2",
        }
    }
}

impl fmt::Display for EntropyLogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which expression produced the conditional-state invariant `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpsilonBranch {
    Branch1,
    Branch2,
    ProductShortcut,
}

impl EpsilonBranch {
    pub fn name(self) -> &'static str {
        match self {
            EpsilonBranch::Branch1 => "branch1",
            EpsilonBranch::Branch2 => "branch2",
            EpsilonBranch::ProductShortcut => "product_shortcut",
        }
    }
}

impl fmt::Display for EpsilonBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// All quantifiers for one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub simon_s: f64,
    /// Bits.
    pub log_negativity: f64,
    pub discord: f64,
    /// Discord before clamping round-off negatives to zero.
    pub discord_raw: f64,
    pub classical: f64,
    pub mutual_information: f64,
    pub epsilon_branch: EpsilonBranch,
    pub nu_bar_minus: f64,
    pub nu_tilde_minus: f64,
    pub base: EntropyLogBase,
}

/// `f(x) = ((x+1)/2) log((x+1)/2) − ((x−1)/2) log((x−1)/2)`, with `f(1) = 0`.
pub fn entropy_f(x: f64, base: EntropyLogBase) -> Result<f64> {
    if x.is_nan() || x < 1.0 - ENTROPY_CLAMP {
        return Err(Error::NumericalDomain(format!(
            "entropy argument {x} is below 1"
        )));
    }
    if x <= 1.0 {
        return Ok(0.0);
    }
    let plus = 0.5 * (x + 1.0);
    let minus = 0.5 * (x - 1.0);
    Ok((plus * plus.ln() - minus * minus.ln()) / base.ln_base())
}

/// Entropy of an argument that is one or larger for physical states, with
/// the physicality tolerance absorbed.
fn entropy_of(x: f64, base: EntropyLogBase) -> Result<f64> {
    if (1.0 - PHYSICAL_TOL..1.0).contains(&x) {
        return entropy_f(1.0, base);
    }
    entropy_f(x, base)
}

fn check_physical(sigma: &CovarianceMatrix) -> Result<()> {
    if sigma.is_physical(PHYSICAL_TOL) {
        Ok(())
    } else {
        Err(Error::InvalidState(
            "covariance matrix is not a physical state".into(),
        ))
    }
}

const J: Matrix2<f64> = Matrix2::new(0.0, 1.0, -1.0, 0.0);

/// Simon's function `det A det B + (1/4 − |det C|)² − Tr[AJCJBJCᵀJ] − (det A + det B)/4`.
///
/// Results within [`SIMON_ZERO_BAND`] of zero, relative to the sum of the
/// term magnitudes, are returned as `0.0`.
pub fn simon_s(sigma: &CovarianceMatrix) -> f64 {
    let blocks = sigma.blocks();
    let e = sigma.exact_invariants();
    let trace = (blocks.a * J * blocks.c * J * blocks.b * J * blocks.c.transpose() * J).trace();
    let product = e.det_a * e.det_b;
    let square = (Dd::new(0.25) - e.det_c.abs()).square();
    let local = (e.det_a + e.det_b).scale(0.25);
    let s = (product + square - local - Dd::new(trace)).to_f64();
    let scale = product.to_f64().abs() + square.to_f64() + local.to_f64().abs() + trace.abs();
    if s.abs() <= SIMON_ZERO_BAND * scale {
        0.0
    } else {
        s
    }
}

/// Clamped discriminant `s² − 4 det σ`.
fn discriminant(s: Dd, det_sigma: Dd) -> Result<Dd> {
    let disc = s.square() - det_sigma.scale(4.0);
    if disc.hi >= 0.0 {
        return Ok(disc);
    }
    let band = DISCRIMINANT_CLAMP * s.to_f64().powi(2).max(1.0);
    if disc.to_f64() < -band {
        return Err(Error::NumericalDomain(format!(
            "negative partial-transpose discriminant {:e}",
            disc.to_f64()
        )));
    }
    Ok(Dd::ZERO)
}

/// Logarithmic negativity `−½ log₂[4g]` with
/// `g = Δ̃/2 − √((Δ̃/2)² − det σ)`, evaluated as `det σ / (Δ̃/2 + √(…))`.
pub fn log_negativity(sigma: &CovarianceMatrix) -> Result<f64> {
    let e = sigma.exact_invariants();
    let pt = e.pt_seralian();
    let disc = discriminant(pt, e.det_sigma)?;
    let denom = (pt + disc.sqrt()).scale(0.5);
    if denom.hi <= 0.0 || e.det_sigma.hi <= 0.0 {
        return Err(Error::NumericalDomain(
            "partial transpose is not positive definite".into(),
        ));
    }
    let g = e.det_sigma.div(denom).to_f64();
    // adding 0.0 turns -0.0 into 0.0
    Ok(-0.5 * (4.0 * g).log2() + 0.0)
}

/// Logarithmic negativity from the smallest partially transposed
/// symplectic eigenvalue, `−log₂ 2ν̃₋`. Cross-check for [`log_negativity`].
pub fn log_negativity_from_spectrum(sigma: &CovarianceMatrix) -> Result<f64> {
    let (nu_tilde_minus, _) = sigma.pt_symplectic_eigenvalues()?;
    Ok(-(2.0 * nu_tilde_minus).log2())
}

/// Square-root argument that cancels to zero on the branch boundary; values
/// within the relative band of `scale` are snapped to zero.
fn snapped_root_arg(value: Dd, scale: f64, what: &str) -> Result<Dd> {
    let band = EPSILON_REL_BAND * scale;
    let v = value.to_f64();
    if v.abs() <= band {
        return Ok(Dd::ZERO);
    }
    if v < 0.0 {
        return Err(Error::NumericalDomain(format!(
            "{what} square-root argument {v:e} is negative"
        )));
    }
    Ok(value)
}

fn epsilon_branch1(alpha: Dd, beta: Dd, gamma: Dd, delta: Dd) -> Result<f64> {
    let beta_m1 = beta - Dd::ONE;
    let gamma_sq = gamma.square();
    let cross = beta_m1 * (delta - alpha);
    let scale = gamma_sq.to_f64() + cross.to_f64().abs();
    let inner = snapped_root_arg(gamma_sq + cross, scale, "branch-1")?;
    let denom = beta_m1.square();
    if denom.hi == 0.0 {
        return Err(Error::NumericalDomain(
            "branch-1 denominator (β − 1)² vanishes for a correlated state".into(),
        ));
    }
    let num = gamma_sq.scale(2.0) + cross + (gamma.abs() * inner.sqrt()).scale(2.0);
    Ok(num.div(denom).to_f64())
}

fn epsilon_branch2(alpha: Dd, beta: Dd, gamma: Dd, delta: Dd) -> Result<f64> {
    let ab = alpha * beta;
    let gamma_sq = gamma.square();
    let gamma_4 = gamma_sq.square();
    let dab_sq = (delta - ab).square();
    let mixed = (gamma_sq * (delta + ab)).scale(2.0);
    let scale = gamma_4.to_f64() + dab_sq.to_f64() + mixed.to_f64().abs();
    let inner = snapped_root_arg(gamma_4 + dab_sq - mixed, scale, "branch-2")?;
    let num = ab - gamma_sq + delta - inner.sqrt();
    Ok(num.div(beta.scale(2.0)).to_f64())
}

/// Minimal determinant invariant `ε` of mode 1 conditioned on a Gaussian
/// measurement of mode 2.
pub(crate) fn epsilon(e: &ExactInvariants) -> Result<(f64, EpsilonBranch)> {
    let (alpha, beta, gamma, delta) = (e.alpha(), e.beta(), e.gamma(), e.delta());
    if gamma.to_f64().powi(2) < PRODUCT_GAMMA_SQ {
        return Ok((alpha.to_f64(), EpsilonBranch::ProductShortcut));
    }
    let lhs = (delta - alpha * beta).square();
    let rhs = (beta + Dd::ONE) * gamma.square() * (alpha + delta);
    let (l, r) = (lhs.to_f64(), rhs.to_f64());
    let tie = (l - r).abs() <= EPSILON_REL_BAND * l.abs().max(r.abs());
    if tie {
        let first = epsilon_branch1(alpha, beta, gamma, delta)?;
        let second = epsilon_branch2(alpha, beta, gamma, delta)?;
        if (first - second).abs() > BRANCH_AGREEMENT * first.abs().max(1.0) {
            return Err(Error::NumericalDomain(format!(
                "ε branches disagree on the boundary: {first} vs {second}"
            )));
        }
        Ok((first, EpsilonBranch::Branch1))
    } else if l <= r {
        Ok((
            epsilon_branch1(alpha, beta, gamma, delta)?,
            EpsilonBranch::Branch1,
        ))
    } else {
        Ok((
            epsilon_branch2(alpha, beta, gamma, delta)?,
            EpsilonBranch::Branch2,
        ))
    }
}

/// Entropy terms shared by D, C and I.
struct EntropyTerms {
    f_sqrt_alpha: f64,
    f_sqrt_beta: f64,
    f_nu_minus: f64,
    f_nu_plus: f64,
    f_sqrt_epsilon: f64,
    branch: EpsilonBranch,
    nu_bar_minus: f64,
}

impl EntropyTerms {
    fn new(sigma: &CovarianceMatrix, base: EntropyLogBase) -> Result<Self> {
        check_physical(sigma)?;
        let e = sigma.exact_invariants();
        let (nu_minus, nu_plus) = sigma.symplectic_eigenvalues()?;
        let (eps, branch) = epsilon(&e)?;
        Ok(EntropyTerms {
            f_sqrt_alpha: entropy_of(e.alpha().sqrt().to_f64(), base)?,
            f_sqrt_beta: entropy_of(e.beta().sqrt().to_f64(), base)?,
            f_nu_minus: entropy_of(nu_minus, base)?,
            f_nu_plus: entropy_of(nu_plus, base)?,
            f_sqrt_epsilon: entropy_of(eps.max(0.0).sqrt(), base)?,
            branch,
            nu_bar_minus: nu_minus,
        })
    }

    fn discord_raw(&self) -> f64 {
        self.f_sqrt_beta - self.f_nu_minus - self.f_nu_plus + self.f_sqrt_epsilon
    }

    fn discord(&self) -> Result<f64> {
        let raw = self.discord_raw();
        if raw >= 0.0 {
            Ok(raw)
        } else if raw >= -DISCORD_CLAMP {
            Ok(0.0)
        } else {
            Err(Error::NumericalDomain(format!("negative discord {raw:e}")))
        }
    }

    fn classical(&self) -> f64 {
        self.f_sqrt_alpha - self.f_sqrt_epsilon
    }

    fn mutual_information(&self) -> f64 {
        self.f_sqrt_alpha + self.f_sqrt_beta - self.f_nu_minus - self.f_nu_plus
    }
}

/// Gaussian quantum discord `f(√β) − f(ν̄₋) − f(ν̄₊) + f(√ε)` and the `ε` branch used.
pub fn discord(sigma: &CovarianceMatrix, base: EntropyLogBase) -> Result<(f64, EpsilonBranch)> {
    let terms = EntropyTerms::new(sigma, base)?;
    Ok((terms.discord()?, terms.branch))
}

/// `C = f(√α) − f(√ε)`.
pub fn classical_correlations(sigma: &CovarianceMatrix, base: EntropyLogBase) -> Result<f64> {
    Ok(EntropyTerms::new(sigma, base)?.classical())
}

/// `I = f(√α) + f(√β) − f(ν̄₋) − f(ν̄₊)`.
pub fn mutual_information(sigma: &CovarianceMatrix, base: EntropyLogBase) -> Result<f64> {
    Ok(EntropyTerms::new(sigma, base)?.mutual_information())
}

pub fn correlations(sigma: &CovarianceMatrix, base: EntropyLogBase) -> Result<CorrelationReport> {
    let terms = EntropyTerms::new(sigma, base)?;
    let (nu_tilde_minus, _) = sigma.pt_symplectic_eigenvalues()?;
    Ok(CorrelationReport {
        simon_s: simon_s(sigma),
        log_negativity: log_negativity(sigma)?,
        discord: terms.discord()?,
        discord_raw: terms.discord_raw(),
        classical: terms.classical(),
        mutual_information: terms.mutual_information(),
        epsilon_branch: terms.branch,
        nu_bar_minus: terms.nu_bar_minus,
        nu_tilde_minus,
        base,
    })
}

/// `coth²(ω/2T) − 1`, zero at `T = 0`.
fn coth_sq_minus_one(omega: f64, temperature: Temperature) -> f64 {
    let t = temperature.value();
    if t == 0.0 {
        return 0.0;
    }
    let x = omega / (2.0 * t);
    if x > 20.0 {
        let c = thermal_coth(omega, temperature);
        (c - 1.0) * (c + 1.0)
    } else {
        x.sinh().powi(2).recip()
    }
}

/// `S(∞) = (coth²(ω₁/2T) − 1)(coth²(ω₂/2T) − 1)/16`.
pub fn asymptotic_simon(params: &SystemParams, temperature: Temperature) -> f64 {
    coth_sq_minus_one(params.omega1(), temperature)
        * coth_sq_minus_one(params.omega2(), temperature)
        / 16.0
}

/// `E_N(∞) = −log₂ coth(ω_max/2T)`, zero at `T = 0`.
pub fn asymptotic_log_negativity(params: &SystemParams, temperature: Temperature) -> f64 {
    if temperature.value() == 0.0 {
        return 0.0;
    }
    let omega = params.omega1().max(params.omega2());
    // coth(ω/2T) − 1 = 2/(e^{ω/T} − 1), kept separate so low temperatures stay negative
    let excess = 2.0 / (omega / temperature.value()).exp_m1();
    -excess.ln_1p() / std::f64::consts::LN_2
}
