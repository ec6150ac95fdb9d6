//! Time at which the entanglement of a two-mode squeezed state vanishes,
//! compared with the closed form for equal unit frequencies.

use twomode::covariance::{two_mode_squeezed, SqueezingParameter, SystemParams};
use twomode::dynamics::{thermal_coth, Temperature};
use twomode::experiments::sudden_death_time;

fn main() -> twomode::Result<()> {
    let r = 4.0;
    let sigma0 = two_mode_squeezed(SqueezingParameter::new(r)?);
    let params = SystemParams::figure_defaults();

    for temp in [0.0, 0.5, 1.0, 2.0, 4.0] {
        let temperature = Temperature::new(temp)?;
        let res = sudden_death_time(&sigma0, &params, temperature, 200.0)?;
        match res.crossing_time {
            Some(t) => {
                let n = thermal_coth(1.0, temperature);
                let eta = (n - 1.0) / (n - (-r).exp());
                let closed = -eta.ln() / (2.0 * params.lambda());
                println!(
                    "T = {temp:<4} t* = {t:.10}  closed form {closed:.10}  bracket width {:.1e}",
                    res.tolerance
                );
            }
            None => println!("T = {temp:<4} no crossing up to t = {}", res.bracket.1),
        }
    }
    Ok(())
}
