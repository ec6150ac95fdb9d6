//! Stronger dissipation kills entanglement sooner.

use twomode::covariance::{two_mode_squeezed, SqueezingParameter, SystemParams};
use twomode::dynamics::Temperature;
use twomode::experiments::{crossing_times_strictly_decreasing, lambda_sensitivity};

fn main() -> twomode::Result<()> {
    let sigma0 = two_mode_squeezed(SqueezingParameter::new(4.0)?);
    let base = SystemParams::figure_defaults();
    let lambdas = [0.025, 0.05, 0.1, 0.2, 0.4];
    let params: Vec<SystemParams> = lambdas
        .iter()
        .map(|&l| base.with_lambda(l))
        .collect::<twomode::Result<_>>()?;

    for temp in [0.0, 2.0] {
        let results = lambda_sensitivity(&sigma0, &params, Temperature::new(temp)?, 200.0)?;
        println!("T = {temp}");
        for (l, res) in lambdas.iter().zip(&results) {
            match res.crossing_time {
                Some(t) => println!("  lambda = {l:<6} t* = {t:.9}   lambda t* = {:.9}", l * t),
                None => println!("  lambda = {l:<6} none within horizon"),
            }
        }
        match crossing_times_strictly_decreasing(&results) {
            Some(ok) => println!("  strictly decreasing: {ok}"),
            None => println!("  ordering not checked"),
        }
    }
    Ok(())
}
