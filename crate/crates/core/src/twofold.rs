//! Double-double arithmetic and argument reduction modulo 2π.
//!
//! Rest-energy phases `mc²Δτ/ħ` reach 10¹⁰–10¹⁸ rad, far past the point where a
//! single `f64` still carries the residue modulo 2π. Values here are kept as an
//! unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, built from error-free
//! transformations, and reduced against a four-word expansion of 2π.

use core::ops::{Add, Div, Mul, Neg, Sub};

/// 2π as a non-overlapping four-term expansion (about 210 bits).
const TWO_PI_PARTS: [f64; 4] = [
    core::f64::consts::TAU,
    2.449_293_598_294_706_4e-16,
    -5.989_539_619_436_679e-33,
    2.224_908_441_726_730_6e-49,
];

pub const TWO_PI: f64 = TWO_PI_PARTS[0];

/// Magnitude up to which [`reduce_two_pi`] keeps its 1e-10 rad guarantee.
pub const REDUCTION_LIMIT: f64 = 1.0e18;

#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = libm::fma(a, b, -p);
    (p, e)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };

    pub const fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Normalises an arbitrary pair.
    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    /// Exact product of two doubles.
    pub fn from_product(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Self { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn add_f64(self, b: f64) -> Self {
        let (s, e) = two_sum(self.hi, b);
        let (hi, lo) = fast_two_sum(s, e + self.lo);
        Self { hi, lo }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = fast_two_sum(p, e + self.lo * b);
        Self { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Self {
        self / Self::from_f64(b)
    }
}

impl Add for DoubleDouble {
    type Output = Self;

    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = fast_two_sum(s, e + t);
        let (hi, lo) = fast_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;

    fn div(self, other: Self) -> Self {
        let q1 = self.hi / other.hi;
        let r = self - other.mul_f64(q1);
        let q2 = r.hi / other.hi;
        let r = r - other.mul_f64(q2);
        let q3 = r.hi / other.hi;
        let (hi, lo) = fast_two_sum(q1, q2);
        Self { hi, lo }.add_f64(q3)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;

    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for DoubleDouble {
    type Output = Self;

    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = fast_two_sum(p, e);
        Self { hi, lo }
    }
}

/// Running sum with double-double accumulation.
///
/// Identical terms of opposite sign cancel exactly regardless of order.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    acc: DoubleDouble,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.acc = self.acc.add_f64(x);
    }

    pub fn push_dd(&mut self, x: DoubleDouble) {
        self.acc = self.acc + x;
    }

    pub fn value(&self) -> DoubleDouble {
        self.acc
    }

    pub fn total(&self) -> f64 {
        self.acc.to_f64()
    }
}

/// `x mod 2π` as a double-double in `[0, 2π)`.
fn reduce_dd(x: DoubleDouble) -> DoubleDouble {
    if !x.is_finite() {
        return DoubleDouble::from_f64(f64::NAN);
    }
    let k = libm::round(x.hi / TWO_PI_PARTS[0]);
    let mut acc = if k == 0.0 {
        x
    } else {
        // x.hi and k·P0 agree to within a few multiples of 2π, so the leading
        // difference is exact; the remaining terms are all small.
        let (p0, e0) = two_prod(k, TWO_PI_PARTS[0]);
        let (s, e) = two_sum(x.hi, -p0);
        let mut acc = DoubleDouble::new(s, e);
        acc = acc.add_f64(x.lo).add_f64(-e0);
        for part in &TWO_PI_PARTS[1..] {
            let (p, e) = two_prod(k, *part);
            acc = acc.add_f64(-p).add_f64(-e);
        }
        acc
    };
    let two_pi = DoubleDouble::new(TWO_PI_PARTS[0], TWO_PI_PARTS[1]);
    while acc.hi < 0.0 || (acc.hi == 0.0 && acc.lo < 0.0) {
        acc = acc + two_pi;
    }
    while acc.hi > TWO_PI_PARTS[0] || (acc.hi == TWO_PI_PARTS[0] && acc.lo >= TWO_PI_PARTS[1]) {
        acc = acc - two_pi;
    }
    acc
}

/// Reduces `hi + lo` into `[0, 2π)` with an absolute error below 1e-10 rad for
/// `|hi + lo| <= 1e18`.
pub fn reduce_two_pi(x: DoubleDouble) -> f64 {
    let r = reduce_dd(x).to_f64();
    // Rounding may land exactly on the f64 nearest 2π, which lies just below 2π.
    if r < 0.0 {
        0.0
    } else {
        r
    }
}

/// Reduces into `[-π, π]`, the range where `sin`/`cos` are most accurate.
pub fn reduce_symmetric(x: DoubleDouble) -> f64 {
    let r = reduce_dd(x);
    if r.hi > core::f64::consts::PI {
        (r - DoubleDouble::new(TWO_PI_PARTS[0], TWO_PI_PARTS[1])).to_f64()
    } else {
        r.to_f64()
    }
}

/// `(sin θ, cos θ)` for a double-double angle.
pub fn sin_cos(theta: DoubleDouble) -> (f64, f64) {
    let r = reduce_symmetric(theta);
    libm::sincos(r)
}

/// `a·b/ħ` as a double-double, the workhorse for `EΔτ/ħ` phases.
pub fn scaled_product(a: f64, b: f64, divisor: f64) -> DoubleDouble {
    DoubleDouble::from_product(a, b).div_f64(divisor)
}
