//! Closed-form propagator, evolution and steady state against generic
//! numerical routes.

use twomode::covariance::{two_mode_squeezed, SqueezingParameter, SystemParams};
use twomode::dynamics::{
    drift_matrix, evolve, propagator, steady_state, thermal_diffusion, Temperature,
};
use twomode::oracle::{expm_generic, lyapunov_solve, rk4_evolve, IntegratorConfig};

fn main() -> twomode::Result<()> {
    let params = SystemParams::figure_defaults();
    let temperature = Temperature::new(1.0)?;
    let y = drift_matrix(&params);
    let d = thermal_diffusion(&params, temperature);
    let sigma0 = two_mode_squeezed(SqueezingParameter::new(4.0)?);

    for t in [0.5, std::f64::consts::PI, 10.0] {
        let diff = (expm_generic(&(y.matrix() * t))? - propagator(&params, t)?).amax();
        println!("propagator  t = {t:<8.5} max |diff| = {diff:.2e}");
    }

    let t = 5.0;
    let exact = evolve(&sigma0, &params, temperature, t)?;
    let mut previous = None;
    for step in [0.1, 0.05, 0.025, 1e-4] {
        let approx = rk4_evolve(&sigma0, &y, &d, t, &IntegratorConfig::rk4(step)?)?;
        let err = approx.max_abs_diff(&exact);
        match previous {
            Some(p) => println!("rk4 step {step:<7} error {err:.3e}  ratio {:.2}", p / err),
            None => println!("rk4 step {step:<7} error {err:.3e}"),
        }
        previous = Some(err);
    }

    let ss = steady_state(&params, temperature);
    let lyap = lyapunov_solve(&y, &d)?;
    println!("lyapunov    max |diff| = {:.2e}", lyap.max_abs_diff(&ss));
    Ok(())
}
