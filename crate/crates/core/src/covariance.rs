//! Two-mode covariance matrices.
//!
//! The quadrature basis is ordered `(x, p_x, y, p_y)` and the vacuum is
//! `I/2`. A state splits into the local blocks `A` (mode 1), `B` (mode 2)
//! and the cross block `C`:
//!
//! ```text
//!         | A   C |
//! sigma = |       |
//!         | Cᵀ  B |
//! ```
//!
//! Symplectic eigenvalues come in two conventions here. The state's own
//! spectrum is returned *doubled* (`ν̄ = 2ν`, so a pure mode has `ν̄ = 1`),
//! which is what the entropy function consumes. The partially transposed
//! spectrum is returned in the *half* convention (`ν̃ = 1/2` for vacuum),
//! which is what the logarithmic negativity consumes.

use nalgebra::{Matrix2, Matrix4};

use crate::dd::{self, Dd};
use crate::error::{Error, Result};

pub const X: usize = 0;
pub const PX: usize = 1;
pub const Y: usize = 2;
pub const PY: usize = 3;

/// Absolute allowance for negative symplectic discriminants, scaled up by
/// `Δ²` once the invariants exceed one.
pub const DISCRIMINANT_CLAMP: f64 = 1e-12;

/// Squeezing strength `r` of the initial-state constructors.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SqueezingParameter(f64);

impl SqueezingParameter {
    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::invalid("r", r, "squeezing parameter must be finite"));
        }
        if r < 0.0 {
            return Err(Error::invalid(
                "r",
                r,
                "squeezing parameter must be non-negative",
            ));
        }
        Ok(SqueezingParameter(r))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Mass, mode frequencies and dissipation constant, with `ħ = k = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    m: f64,
    omega1: f64,
    omega2: f64,
    lambda: f64,
}

impl SystemParams {
    pub fn new(m: f64, omega1: f64, omega2: f64, lambda: f64) -> Result<Self> {
        for (name, v) in [
            ("m", m),
            ("omega1", omega1),
            ("omega2", omega2),
            ("lambda", lambda),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::invalid(
                    name,
                    v,
                    "must be finite and strictly positive",
                ));
            }
        }
        Ok(SystemParams {
            m,
            omega1,
            omega2,
            lambda,
        })
    }

    /// `m = ω₁ = ω₂ = 1`, `λ = 0.1`: the configuration behind all four figures.
    pub fn figure_defaults() -> Self {
        SystemParams {
            m: 1.0,
            omega1: 1.0,
            omega2: 1.0,
            lambda: 0.1,
        }
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    pub fn omega2(&self) -> f64 {
        self.omega2
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        SystemParams::new(self.m, self.omega1, self.omega2, lambda)
    }
}

/// Local blocks `A`, `B` and the cross block `C` of a covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Blocks {
    pub a: Matrix2<f64>,
    pub b: Matrix2<f64>,
    pub c: Matrix2<f64>,
}

impl Blocks {
    pub fn reassemble(&self) -> CovarianceMatrix {
        CovarianceMatrix::from_blocks(&self.a, &self.b, &self.c)
    }
}

/// Local symplectic invariants of a two-mode state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticInvariants {
    pub det_a: f64,
    pub det_b: f64,
    pub det_c: f64,
    pub det_sigma: f64,
    /// `4 det A`
    pub alpha: f64,
    /// `4 det B`
    pub beta: f64,
    /// `4 det C`
    pub gamma: f64,
    /// `16 det σ`
    pub delta: f64,
    /// `Δ = det A + det B + 2 det C`
    pub seralian: f64,
    /// `Δ̃ = det A + det B − 2 det C`, the seralian of the partial transpose.
    pub pt_seralian: f64,
}

/// Determinants kept in double-double precision.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ExactInvariants {
    pub det_a: Dd,
    pub det_b: Dd,
    pub det_c: Dd,
    pub det_sigma: Dd,
}

impl ExactInvariants {
    pub fn alpha(&self) -> Dd {
        self.det_a.scale(4.0)
    }

    pub fn beta(&self) -> Dd {
        self.det_b.scale(4.0)
    }

    pub fn gamma(&self) -> Dd {
        self.det_c.scale(4.0)
    }

    pub fn delta(&self) -> Dd {
        self.det_sigma.scale(16.0)
    }

    pub fn seralian(&self) -> Dd {
        self.det_a + self.det_b + self.det_c.scale(2.0)
    }

    pub fn pt_seralian(&self) -> Dd {
        self.det_a + self.det_b - self.det_c.scale(2.0)
    }
}

/// Real symmetric 4×4 covariance matrix over `(x, p_x, y, p_y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix(Matrix4<f64>);

impl CovarianceMatrix {
    /// Wraps `m`, replacing it with `(m + mᵀ)/2`.
    pub fn from_matrix(m: Matrix4<f64>) -> Self {
        CovarianceMatrix((m + m.transpose()) * 0.5)
    }

    pub fn from_blocks(a: &Matrix2<f64>, b: &Matrix2<f64>, c: &Matrix2<f64>) -> Self {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(b);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(c);
        m.fixed_view_mut::<2, 2>(2, 0).copy_from(&c.transpose());
        CovarianceMatrix::from_matrix(m)
    }

    pub fn vacuum() -> Self {
        CovarianceMatrix(Matrix4::identity() * 0.5)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn blocks(&self) -> Blocks {
        Blocks {
            a: self.0.fixed_view::<2, 2>(0, 0).into_owned(),
            b: self.0.fixed_view::<2, 2>(2, 2).into_owned(),
            c: self.0.fixed_view::<2, 2>(0, 2).into_owned(),
        }
    }

    /// Largest absolute entry-wise difference.
    pub fn max_abs_diff(&self, other: &CovarianceMatrix) -> f64 {
        (self.0 - other.0).amax()
    }

    fn rows(&self) -> [[f64; 4]; 4] {
        let m = &self.0;
        std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)]))
    }

    pub(crate) fn exact_invariants(&self) -> ExactInvariants {
        let m = &self.0;
        ExactInvariants {
            det_a: dd::det2(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]),
            det_b: dd::det2(m[(2, 2)], m[(2, 3)], m[(3, 2)], m[(3, 3)]),
            det_c: dd::det2(m[(0, 2)], m[(0, 3)], m[(1, 2)], m[(1, 3)]),
            det_sigma: dd::det4(&self.rows()),
        }
    }

    pub fn invariants(&self) -> SymplecticInvariants {
        let e = self.exact_invariants();
        SymplecticInvariants {
            det_a: e.det_a.to_f64(),
            det_b: e.det_b.to_f64(),
            det_c: e.det_c.to_f64(),
            det_sigma: e.det_sigma.to_f64(),
            alpha: e.alpha().to_f64(),
            beta: e.beta().to_f64(),
            gamma: e.gamma().to_f64(),
            delta: e.delta().to_f64(),
            seralian: e.seralian().to_f64(),
            pt_seralian: e.pt_seralian().to_f64(),
        }
    }

    /// Doubled symplectic eigenvalues `(ν̄₋, ν̄₊)`, from `ν̄∓² = 2(Δ ∓ √(Δ² − 4 det σ))`.
    pub fn symplectic_eigenvalues(&self) -> Result<(f64, f64)> {
        let e = self.exact_invariants();
        let (lo, hi) = spectrum_squares(e.seralian(), e.det_sigma, "Δ")?;
        Ok((lo.scale(4.0).sqrt().to_f64(), hi.scale(4.0).sqrt().to_f64()))
    }

    /// Half-convention symplectic eigenvalues `(ν̃₋, ν̃₊)` of the partial transpose.
    pub fn pt_symplectic_eigenvalues(&self) -> Result<(f64, f64)> {
        let e = self.exact_invariants();
        let (lo, hi) = spectrum_squares(e.pt_seralian(), e.det_sigma, "Δ̃")?;
        Ok((lo.sqrt().to_f64(), hi.sqrt().to_f64()))
    }

    /// Robertson–Schrödinger check: `ν̄₋ ≥ 1 − tol` and positive definite local blocks.
    pub fn is_physical(&self, tol: f64) -> bool {
        let m = &self.0;
        if m.iter().any(|v| !v.is_finite()) {
            return false;
        }
        let e = self.exact_invariants();
        let local_ok = m[(0, 0)] > 0.0 && m[(2, 2)] > 0.0 && e.det_a.hi > 0.0 && e.det_b.hi > 0.0;
        if !local_ok {
            return false;
        }
        match self.symplectic_eigenvalues() {
            Ok((nu_minus, _)) => nu_minus >= 1.0 - tol,
            Err(_) => false,
        }
    }
}

/// Roots `ν∓²` (half convention) of `2ν² = s ∓ √(s² − 4 det σ)`.
fn spectrum_squares(s: Dd, det_sigma: Dd, label: &str) -> Result<(Dd, Dd)> {
    let disc = s.square() - det_sigma.scale(4.0);
    let band = DISCRIMINANT_CLAMP * s.to_f64().powi(2).max(1.0);
    let disc = if disc.hi < 0.0 {
        if disc.to_f64() < -band {
            return Err(Error::NumericalDomain(format!(
                "negative symplectic discriminant {:e} ({label} = {}, det σ = {})",
                disc.to_f64(),
                s.to_f64(),
                det_sigma.to_f64()
            )));
        }
        Dd::ZERO
    } else {
        disc
    };
    let root = disc.sqrt();
    let upper = (s + root).scale(0.5);
    let lower = (s - root).scale(0.5);
    if lower.hi < 0.0 || det_sigma.hi <= 0.0 {
        return Err(Error::NumericalDomain(format!(
            "covariance matrix is not positive definite ({label} = {}, det σ = {})",
            s.to_f64(),
            det_sigma.to_f64()
        )));
    }
    Ok((lower, upper))
}

pub fn block_decompose(sigma: &CovarianceMatrix) -> Blocks {
    sigma.blocks()
}

pub fn symplectic_invariants(sigma: &CovarianceMatrix) -> SymplecticInvariants {
    sigma.invariants()
}

/// Product of single-mode squeezed states, `(1/2)[[cosh r, sinh r], [sinh r, cosh r]]` per mode.
pub fn separable_squeezed(r: SqueezingParameter) -> CovarianceMatrix {
    let (c, s) = (0.5 * r.0.cosh(), 0.5 * r.0.sinh());
    let local = Matrix2::new(c, s, s, c);
    CovarianceMatrix::from_blocks(&local, &local, &Matrix2::zeros())
}

/// Two-mode squeezed vacuum: local blocks `(cosh r)/2·I`, cross block `(sinh r)/2·diag(1, −1)`.
pub fn two_mode_squeezed(r: SqueezingParameter) -> CovarianceMatrix {
    let (c, s) = (0.5 * r.0.cosh(), 0.5 * r.0.sinh());
    let local = Matrix2::new(c, 0.0, 0.0, c);
    let cross = Matrix2::new(s, 0.0, 0.0, -s);
    CovarianceMatrix::from_blocks(&local, &local, &cross)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: f64) -> SqueezingParameter {
        SqueezingParameter::new(v).unwrap()
    }

    /// Leibniz-formula determinant, independent of the Laplace expansion in `dd`.
    fn brute_det(m: &Matrix4<f64>) -> f64 {
        let mut total = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                        if !distinct {
                            continue;
                        }
                        let inv = (0..4)
                            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                            .filter(|&(i, j)| p[i] > p[j])
                            .count();
                        let sign = if inv % 2 == 0 { 1.0 } else { -1.0 };
                        total += sign * m[(0, a)] * m[(1, b)] * m[(2, c)] * m[(3, d)];
                    }
                }
            }
        }
        total
    }

    #[test]
    fn squeezing_parameter_rejects_bad_values() {
        assert!(SqueezingParameter::new(f64::NAN).is_err());
        assert!(SqueezingParameter::new(f64::INFINITY).is_err());
        assert!(SqueezingParameter::new(-0.1).is_err());
        assert!(SqueezingParameter::new(0.0).is_ok());
    }

    #[test]
    fn system_params_reject_zero_dissipation() {
        assert!(SystemParams::new(1.0, 1.0, 1.0, 0.0).is_err());
        assert!(SystemParams::new(0.0, 1.0, 1.0, 0.1).is_err());
        assert!(SystemParams::new(1.0, -1.0, 1.0, 0.1).is_err());
        assert!(SystemParams::new(1.0, 1.0, f64::NAN, 0.1).is_err());
    }

    #[test]
    fn zero_squeezing_is_vacuum() {
        assert_eq!(separable_squeezed(r(0.0)), CovarianceMatrix::vacuum());
        assert_eq!(two_mode_squeezed(r(0.0)), CovarianceMatrix::vacuum());
    }

    #[test]
    fn separable_squeezed_entries_at_r4() {
        let s = separable_squeezed(r(4.0));
        assert!((s.get(X, X) - 13.654_116_418).abs() < 1e-8);
        assert!((s.get(X, PX) - 13.644_958_599).abs() < 1e-8);
        assert_eq!(s.blocks().c, Matrix2::zeros());
        for v in [0.3, 1.0, 4.0] {
            let inv = separable_squeezed(r(v)).invariants();
            assert!((inv.det_a - 0.25).abs() < 1e-12);
            assert!((inv.det_b - 0.25).abs() < 1e-12);
            assert_eq!(inv.det_c, 0.0);
            let b = separable_squeezed(r(v)).blocks();
            assert!((b.a.determinant() - 0.25).abs() < 1e-10);
        }
    }

    #[test]
    fn two_mode_squeezed_is_pure() {
        let t = two_mode_squeezed(r(4.0));
        let expected = -(4.0f64.sinh().powi(2)) / 4.0;
        assert!((t.invariants().det_c - expected).abs() < 1e-9);
        assert!((t.invariants().det_c + 186.184_9).abs() < 1e-3);
        for v in [0.0, 0.5, 1.0, 2.0, 4.0] {
            let t = two_mode_squeezed(r(v));
            assert!(
                (16.0 * brute_det(t.matrix()) - 1.0).abs() < 1e-10,
                "r = {v}"
            );
            assert!((t.invariants().delta - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn block_decomposition() {
        let t = two_mode_squeezed(r(4.0));
        let b = block_decompose(&t);
        let s = 0.5 * 4.0f64.sinh();
        assert_eq!(b.c, Matrix2::new(s, 0.0, 0.0, -s));
        assert_eq!(b.reassemble(), t);
        assert_eq!(
            block_decompose(&separable_squeezed(r(2.0))).c,
            Matrix2::zeros()
        );
    }

    #[test]
    fn vacuum_invariants() {
        let inv = CovarianceMatrix::vacuum().invariants();
        assert_eq!(inv.alpha, 1.0);
        assert_eq!(inv.beta, 1.0);
        assert_eq!(inv.gamma, 0.0);
        assert_eq!(inv.delta, 1.0);
        assert_eq!(inv.seralian, 0.5);
        assert_eq!(inv.pt_seralian, 0.5);
    }

    #[test]
    fn two_mode_squeezed_invariants_at_r4() {
        let inv = symplectic_invariants(&two_mode_squeezed(r(4.0)));
        let (c2, s2) = (4.0f64.cosh().powi(2), 4.0f64.sinh().powi(2));
        assert!((inv.alpha - c2).abs() < 1e-9);
        assert!((inv.alpha - 745.739_580_626).abs() < 1e-8);
        assert!((inv.beta - c2).abs() < 1e-9);
        assert!((inv.gamma + s2).abs() < 1e-9);
        assert!((inv.gamma + 744.739_580_626).abs() < 1e-8);
        assert!((inv.delta - 1.0).abs() < 1e-10);
    }

    #[test]
    fn separable_squeezed_seralians() {
        for v in [0.5, 4.0] {
            let inv = separable_squeezed(r(v)).invariants();
            assert!((inv.seralian - 0.5).abs() < 1e-12);
            assert!((inv.pt_seralian - 0.5).abs() < 1e-12);
            assert!((inv.delta - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn symplectic_spectrum_examples() {
        assert_eq!(
            CovarianceMatrix::vacuum().symplectic_eigenvalues().unwrap(),
            (1.0, 1.0)
        );
        for v in [0.5, 1.0, 4.0] {
            let (lo, hi) = two_mode_squeezed(r(v)).symplectic_eigenvalues().unwrap();
            assert!(
                (lo - 1.0).abs() < 1e-10 && (hi - 1.0).abs() < 1e-10,
                "r = {v}: {lo} {hi}"
            );
        }
        let a = 0.5 / 0.5f64.tanh();
        let thermal = CovarianceMatrix::from_matrix(Matrix4::from_diagonal(
            &nalgebra::Vector4::new(a, a, a, a),
        ));
        let (lo, hi) = thermal.symplectic_eigenvalues().unwrap();
        assert!((lo - 2.0 * a).abs() < 1e-12);
        assert!((hi - 2.0 * a).abs() < 1e-12);
        assert!((lo - 2.163_953).abs() < 1e-6);
    }

    #[test]
    fn pt_spectrum_examples() {
        assert_eq!(
            CovarianceMatrix::vacuum()
                .pt_symplectic_eigenvalues()
                .unwrap(),
            (0.5, 0.5)
        );
        let (lo, _) = two_mode_squeezed(r(4.0))
            .pt_symplectic_eigenvalues()
            .unwrap();
        assert!((lo - (-4.0f64).exp() / 2.0).abs() < 1e-14);
        assert!((lo - 0.009_157_8).abs() < 1e-7);
        let a = 0.5 / 0.5f64.tanh();
        let thermal = CovarianceMatrix::from_matrix(Matrix4::identity() * a);
        let (lo, _) = thermal.pt_symplectic_eigenvalues().unwrap();
        assert!((lo - 1.081_98).abs() < 1e-5);
    }

    #[test]
    fn pt_spectrum_matches_brute_force_eigenvalues() {
        // |iΩσ̃| spectrum via the real matrix (Ωσ̃)², whose eigenvalues are −ν̃².
        let t = two_mode_squeezed(r(1.3));
        let flip = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, 1.0, -1.0));
        let pt = flip * t.matrix() * flip;
        let j = Matrix2::new(0.0, 1.0, -1.0, 0.0);
        let mut omega = Matrix4::zeros();
        omega.fixed_view_mut::<2, 2>(0, 0).copy_from(&j);
        omega.fixed_view_mut::<2, 2>(2, 2).copy_from(&j);
        let sq = (omega * pt) * (omega * pt);
        let mut nus: Vec<f64> = sq
            .complex_eigenvalues()
            .iter()
            .map(|z| (-z.re).sqrt())
            .collect();
        nus.sort_by(f64::total_cmp);
        let (lo, hi) = t.pt_symplectic_eigenvalues().unwrap();
        assert!((nus[0] - lo).abs() < 1e-9);
        assert!((nus[3] - hi).abs() < 1e-9);
    }

    #[test]
    fn physicality() {
        assert!(CovarianceMatrix::vacuum().is_physical(0.0));
        assert!(!CovarianceMatrix::from_matrix(Matrix4::identity() * 0.25).is_physical(1e-10));
        assert!(two_mode_squeezed(r(4.0)).is_physical(1e-10));
        let mut bad = *CovarianceMatrix::vacuum().matrix();
        bad[(0, 0)] = -1.0;
        assert!(!CovarianceMatrix::from_matrix(bad).is_physical(1e-10));
    }

    #[test]
    fn storage_is_symmetric() {
        let mut m = Matrix4::identity();
        m[(0, 3)] = 0.2;
        let s = CovarianceMatrix::from_matrix(m);
        assert_eq!(s.get(0, 3), s.get(3, 0));
        assert_eq!(s.get(0, 3), 0.1);
    }

    #[test]
    fn indefinite_local_block_is_rejected() {
        let mut m = Matrix4::identity();
        m[(0, 1)] = 2.0;
        m[(1, 0)] = 2.0;
        let s = CovarianceMatrix::from_matrix(m);
        assert!(s.symplectic_eigenvalues().is_err());
        assert!(!s.is_physical(1e-8));
    }

    #[test]
    fn negative_discriminant_is_a_domain_error() {
        // A = −I, B = I, C = diag(c, −c): Δ² − 4 det σ = −16c²
        let c = Matrix2::new(0.5, 0.0, 0.0, -0.5);
        let s = CovarianceMatrix::from_blocks(&(-Matrix2::identity()), &Matrix2::identity(), &c);
        match s.symplectic_eigenvalues() {
            Err(Error::NumericalDomain(msg)) => assert!(msg.contains("discriminant"), "{msg}"),
            other => panic!("expected domain error, got {other:?}"),
        }
    }
}
