#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twomode::covariance::{
    separable_squeezed, two_mode_squeezed, CovarianceMatrix, SqueezingParameter, SystemParams,
};
use twomode::dynamics::{evolve, Temperature};

/// Sudden-death times for the two-mode squeezed state with r = 4,
/// m = ω₁ = ω₂ = 1. Obtained by integrating the covariance equation with
/// fixed-step RK4 (step 1e-4) and bisecting E_N = 0 to 45 halvings; the
/// closed form for equal unit frequencies agrees to better than 1e-11.
pub const T_STAR_LAMBDA_0_1: [(f64, f64); 4] = [
    (0.5, 7.098667720910),
    (1.0, 3.058072565856),
    (2.0, 1.382169351317),
    (4.0, 0.652560184785),
];

/// Same configuration at T = 2 with λ varied.
pub const T_STAR_T_2: [(f64, f64); 3] = [
    (0.05, 2.764338702634),
    (0.1, 1.382169351317),
    (0.2, 0.691084675659),
];

pub const FIG_R: f64 = 4.0;

pub fn sq(r: f64) -> SqueezingParameter {
    SqueezingParameter::new(r).unwrap()
}

pub fn temp(t: f64) -> Temperature {
    Temperature::new(t).unwrap()
}

pub fn tmss(r: f64) -> CovarianceMatrix {
    two_mode_squeezed(sq(r))
}

pub fn sep(r: f64) -> CovarianceMatrix {
    separable_squeezed(sq(r))
}

/// `f(x)` in natural log, written out independently of the library.
pub fn f_nat(x: f64) -> f64 {
    let (p, m) = ((x + 1.0) / 2.0, (x - 1.0) / 2.0);
    let tail = if m > 0.0 { m * m.ln() } else { 0.0 };
    p * p.ln() - tail
}

#[derive(Debug, Clone, Copy)]
pub struct Sample {
    pub r: f64,
    pub entangled_start: bool,
    pub params: SystemParams,
    pub temperature: f64,
    pub t: f64,
}

impl Sample {
    pub fn initial(&self) -> CovarianceMatrix {
        if self.entangled_start {
            tmss(self.r)
        } else {
            sep(self.r)
        }
    }

    pub fn state(&self) -> CovarianceMatrix {
        evolve(
            &self.initial(),
            &self.params,
            temp(self.temperature),
            self.t,
        )
        .unwrap()
    }
}

/// Physical states generated by evolving one of the two initial families
/// under random parameters.
pub fn random_samples(seed: u64, n: usize) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Sample {
            r: rng.random_range(0.0..4.0),
            entangled_start: rng.random_bool(0.75),
            params: SystemParams::new(
                rng.random_range(0.5..2.0),
                rng.random_range(0.5..2.0),
                rng.random_range(0.5..2.0),
                rng.random_range(0.01..0.5),
            )
            .unwrap(),
            temperature: if rng.random_bool(0.1) {
                0.0
            } else {
                rng.random_range(0.0..4.0)
            },
            t: if rng.random_bool(0.05) {
                0.0
            } else {
                rng.random_range(0.0..30.0)
            },
        })
        .collect()
}
