//! Entangled state relaxing in baths of different temperatures.

use twomode::covariance::{two_mode_squeezed, SqueezingParameter, SystemParams};
use twomode::dynamics::{evolve, Temperature};
use twomode::measures::{log_negativity, simon_s};

fn main() -> twomode::Result<()> {
    let sigma0 = two_mode_squeezed(SqueezingParameter::new(4.0)?);
    let params = SystemParams::figure_defaults();

    println!("{:>6} {:>6} {:>14} {:>14}", "T", "t", "S", "E_N");
    for temp in [0.0, 0.5, 1.0, 2.0] {
        let temperature = Temperature::new(temp)?;
        for t in [0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
            let sigma = evolve(&sigma0, &params, temperature, t)?;
            println!(
                "{temp:>6.2} {t:>6.1} {:>14.6e} {:>14.6}",
                simon_s(&sigma),
                log_negativity(&sigma)?
            );
        }
    }
    Ok(())
}
