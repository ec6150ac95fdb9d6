//! Every quantifier for one evolved state, in both entropy bases.

use twomode::covariance::{two_mode_squeezed, SqueezingParameter, SystemParams};
use twomode::dynamics::{evolve, Temperature};
use twomode::measures::{correlations, EntropyLogBase};

fn main() -> twomode::Result<()> {
    let sigma0 = two_mode_squeezed(SqueezingParameter::new(2.0)?);
    let params = SystemParams::new(1.0, 1.0, 1.5, 0.1)?;
    let sigma = evolve(&sigma0, &params, Temperature::new(0.5)?, 3.0)?;

    println!("sigma(t = 3) =\n{}", sigma.matrix());
    for base in [EntropyLogBase::Natural, EntropyLogBase::Base2] {
        let r = correlations(&sigma, base)?;
        println!("[{base}]");
        println!("  S              {:.9}", r.simon_s);
        println!("  E_N            {:.9}", r.log_negativity);
        println!("  D              {:.9}", r.discord);
        println!("  C              {:.9}", r.classical);
        println!("  I              {:.9}", r.mutual_information);
        println!(
            "  I - C - D      {:.3e}",
            r.mutual_information - r.classical - r.discord
        );
        println!("  branch         {}", r.epsilon_branch.name());
        println!("  nu_bar_minus   {:.9}", r.nu_bar_minus);
        println!("  nu_tilde_minus {:.9}", r.nu_tilde_minus);
    }
    Ok(())
}
