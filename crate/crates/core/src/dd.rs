//! Double-double arithmetic for the handful of invariants that cancel
//! catastrophically near pure states.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`,
//! giving roughly 106 bits of significand. Only the operations needed by
//! the determinant and discriminant code are provided.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact product of two doubles.
    #[inline]
    pub fn prod(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Multiplication by a power of two (or any value whose product is exact).
    #[inline]
    pub fn scale(self, k: f64) -> Self {
        Dd {
            hi: self.hi * k,
            lo: self.lo * k,
        }
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn square(self) -> Self {
        self * self
    }

    /// Square root; non-positive inputs give zero.
    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let s = self.hi.sqrt();
        let residual = (self - Dd::prod(s, s)).to_f64();
        let (hi, lo) = quick_two_sum(s, residual / (2.0 * s));
        Dd { hi, lo }
    }

    pub fn div(self, other: Dd) -> Self {
        let q1 = self.hi / other.hi;
        let r = self - other * Dd::new(q1);
        let q2 = r.hi / other.hi;
        let r = r - other * Dd::new(q2);
        let q3 = r.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

/// Exact 2×2 determinant `a·d − b·c` of double entries, rounded to double-double.
#[inline]
pub(crate) fn det2(a: f64, b: f64, c: f64, d: f64) -> Dd {
    Dd::prod(a, d) - Dd::prod(b, c)
}

/// 4×4 determinant by Laplace expansion along the first two rows.
pub(crate) fn det4(m: &[[f64; 4]; 4]) -> Dd {
    const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut acc = Dd::ZERO;
    for &(i, j) in &PAIRS {
        let (k, l) = complement(i, j);
        let top = det2(m[0][i], m[0][j], m[1][i], m[1][j]);
        let bottom = det2(m[2][k], m[2][l], m[3][k], m[3][l]);
        // sign of the permutation (i, j, k, l) relative to (0, 1, 2, 3)
        let sign = if (i + j) % 2 == 1 { 1.0 } else { -1.0 };
        acc = acc + (top * bottom).scale(sign);
    }
    acc
}

fn complement(i: usize, j: usize) -> (usize, usize) {
    let mut rest = (0..4).filter(|&x| x != i && x != j);
    (rest.next().unwrap(), rest.next().unwrap())
}
