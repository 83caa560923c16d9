use core::ops::{Add, Mul};

/// A complex number carrying a characteristic-function value: the modulus is
/// the visibility, the argument the internal-energy contribution to the phase.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl ComplexValue {
    pub const ONE: Self = Self { re: 1.0, im: 0.0 };
    pub const ZERO: Self = Self { re: 0.0, im: 0.0 };

    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn from_polar(modulus: f64, arg: f64) -> Self {
        let (s, c) = libm::sincos(arg);
        Self::new(modulus * c, modulus * s)
    }

    pub fn modulus(self) -> f64 {
        libm::hypot(self.re, self.im)
    }

    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    /// Argument in `(-π, π]`.
    pub fn arg(self) -> f64 {
        libm::atan2(self.im, self.re)
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(self.re * k, self.im * k)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl Add for ComplexValue {
    type Output = Self;

    fn add(self, b: Self) -> Self {
        Self::new(self.re + b.re, self.im + b.im)
    }
}

impl Mul for ComplexValue {
    type Output = Self;

    fn mul(self, b: Self) -> Self {
        Self::new(
            self.re * b.re - self.im * b.im,
            self.re * b.im + self.im * b.re,
        )
    }
}
