//! Positivity conditions on the thermal diffusion coefficients, and what
//! a violating matrix looks like.

use nalgebra::Matrix4;
use twomode::covariance::SystemParams;
use twomode::dynamics::{thermal_diffusion, validate_diffusion, DiffusionMatrix, Temperature};

fn show(label: &str, d: &DiffusionMatrix, lambda: f64) {
    let report = validate_diffusion(d, lambda, 1e-12);
    println!(
        "{label}: {}",
        if report.passed() { "ok" } else { "violated" }
    );
    for check in &report.checks {
        println!("  {:<24} margin {:+.6e}", check.name, check.margin);
    }
}

fn main() -> twomode::Result<()> {
    let params = SystemParams::figure_defaults();
    for temp in [0.0, 1.0, 4.0] {
        let d = thermal_diffusion(&params, Temperature::new(temp)?);
        show(&format!("thermal T = {temp}"), &d, params.lambda());
    }
    let broken = DiffusionMatrix::from_matrix(Matrix4::from_diagonal_element(0.01));
    show("isotropic D = 0.01", &broken, params.lambda());
    Ok(())
}
