//! The Gibbs state reached at long times, and the closed-form limits of
//! Simon's function and the logarithmic negativity.

use twomode::covariance::{two_mode_squeezed, SqueezingParameter, SystemParams};
use twomode::dynamics::{evolve, steady_state, Temperature};
use twomode::measures::{asymptotic_log_negativity, asymptotic_simon, log_negativity, simon_s};

fn main() -> twomode::Result<()> {
    let params = SystemParams::figure_defaults();
    let sigma0 = two_mode_squeezed(SqueezingParameter::new(4.0)?);
    let late = 100.0 / params.lambda();

    println!(
        "{:>5} {:>14} {:>14} {:>14} {:>12}",
        "T", "S(inf)", "E_N(inf)", "sigma_xx", "|evolve-ss|"
    );
    for temp in [0.0, 0.25, 0.5, 1.0, 2.0, 4.0] {
        let temperature = Temperature::new(temp)?;
        let ss = steady_state(&params, temperature);
        let far = evolve(&sigma0, &params, temperature, late)?;
        println!(
            "{temp:>5.2} {:>14.9} {:>14.9} {:>14.9} {:>12.2e}",
            asymptotic_simon(&params, temperature),
            asymptotic_log_negativity(&params, temperature),
            ss.get(0, 0),
            far.max_abs_diff(&ss)
        );
        assert!((simon_s(&ss) - asymptotic_simon(&params, temperature)).abs() < 1e-10);
        if temp > 0.0 {
            assert!(log_negativity(&ss)? < 0.0);
        }
    }
    Ok(())
}
