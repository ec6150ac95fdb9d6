//! The two initial states used throughout: a product of single-mode
//! squeezed states and the two-mode squeezed vacuum.

use twomode::covariance::{separable_squeezed, two_mode_squeezed, SqueezingParameter};
use twomode::measures::{log_negativity, simon_s};

fn main() -> twomode::Result<()> {
    for r in [0.0, 1.0, 2.0, 4.0] {
        let r = SqueezingParameter::new(r)?;
        let sep = separable_squeezed(r);
        let tmss = two_mode_squeezed(r);
        let inv = tmss.invariants();
        let (nu_minus, nu_plus) = tmss.symplectic_eigenvalues()?;
        println!("r = {}", r.value());
        println!("  separable: S = {:e}", simon_s(&sep));
        println!(
            "  two-mode:  S = {:.6}  E_N = {:.9}  (r/ln 2 = {:.9})",
            simon_s(&tmss),
            log_negativity(&tmss)?,
            r.value() / std::f64::consts::LN_2
        );
        println!(
            "             det A = {:.6}  det C = {:.6}  det sigma = {:.3e}  nu = ({nu_minus:.9}, {nu_plus:.9})",
            inv.det_a, inv.det_c, inv.det_sigma
        );
    }
    Ok(())
}
