//! Truncated Taylor arithmetic through fourth order.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Highest derivative order carried by a [`Jet`].
pub const JET_ORDER: usize = 4;

const N: usize = JET_ORDER + 1;
const FACTORIAL: [f64; N] = [1.0, 1.0, 2.0, 6.0, 24.0];

/// Value and first four derivatives of a scalar function at an expansion point.
///
/// Internally the jet stores normalized Taylor coefficients (`f^(k)/k!`), which
/// keeps products a plain Cauchy convolution. The public accessors speak in
/// derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    taylor: [f64; N],
}

impl Jet {
    /// Build a jet from derivatives `[f, f', f'', f''', f'''']`.
    pub fn from_derivatives(d: [f64; N]) -> Self {
        let mut taylor = [0.0; N];
        for k in 0..N {
            taylor[k] = d[k] / FACTORIAL[k];
        }
        Self { taylor }
    }

    pub fn from_taylor(taylor: [f64; N]) -> Self {
        Self { taylor }
    }

    pub fn constant(c: f64) -> Self {
        let mut taylor = [0.0; N];
        taylor[0] = c;
        Self { taylor }
    }

    /// The identity function expanded at `s0`.
    pub fn variable(s0: f64) -> Self {
        let mut taylor = [0.0; N];
        taylor[0] = s0;
        taylor[1] = 1.0;
        Self { taylor }
    }

    pub fn value(&self) -> f64 {
        self.taylor[0]
    }

    /// The `k`-th derivative at the expansion point. Panics if `k > 4`.
    pub fn derivative(&self, k: usize) -> f64 {
        self.taylor[k] * FACTORIAL[k]
    }

    pub fn derivatives(&self) -> [f64; N] {
        std::array::from_fn(|k| self.derivative(k))
    }

    pub fn taylor(&self) -> [f64; N] {
        self.taylor
    }

    /// Jet of the derivative. The fourth-order coefficient of the result is
    /// unknown and set to zero, so only orders 0..=3 are meaningful.
    pub fn differentiate(&self) -> Self {
        let taylor = std::array::from_fn(|k| {
            if k < JET_ORDER {
                self.taylor[k + 1] * (k + 1) as f64
            } else {
                0.0
            }
        });
        Self { taylor }
    }

    pub fn is_finite(&self) -> bool {
        self.taylor.iter().all(|c| c.is_finite())
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut taylor = self.taylor;
        for c in &mut taylor {
            *c *= k;
        }
        Self { taylor }
    }

    /// Compose an outer function with this jet, given the outer function's
    /// derivatives `[g, g', g'', g''', g'''']` evaluated at `self.value()`.
    pub fn compose(&self, outer: [f64; N]) -> Self {
        let mut delta = *self;
        delta.taylor[0] = 0.0;
        let mut out = Self::constant(outer[0]);
        let mut power = Self::constant(1.0);
        for k in 1..N {
            power = power * delta;
            out = out + power.scale(outer[k] / FACTORIAL[k]);
        }
        out
    }

    pub fn sin(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.compose([s, c, -s, -c, s])
    }

    pub fn cos(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.compose([c, -s, -c, s, c])
    }

    pub fn tan(&self) -> Self {
        let t = self.value().tan();
        let sec2 = 1.0 + t * t;
        self.compose([
            t,
            sec2,
            2.0 * t * sec2,
            sec2 * (2.0 + 6.0 * t * t),
            sec2 * (16.0 * t + 24.0 * t * t * t),
        ])
    }

    pub fn exp(&self) -> Self {
        let e = self.value().exp();
        self.compose([e; N])
    }

    pub fn ln(&self) -> Self {
        let x = self.value();
        let r = 1.0 / x;
        self.compose([x.ln(), r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r])
    }

    pub fn atan(&self) -> Self {
        let x = self.value();
        let w = 1.0 / (1.0 + x * x);
        self.compose([
            x.atan(),
            w,
            -2.0 * x * w * w,
            (6.0 * x * x - 2.0) * w * w * w,
            -24.0 * x * (x * x - 1.0) * w * w * w * w,
        ])
    }

    pub fn asin(&self) -> Self {
        let x = self.value();
        let w = 1.0 / (1.0 - x * x).sqrt();
        let w3 = w * w * w;
        let w5 = w3 * w * w;
        let w7 = w5 * w * w;
        self.compose([
            x.asin(),
            w,
            x * w3,
            (1.0 + 2.0 * x * x) * w5,
            (9.0 * x + 6.0 * x * x * x) * w7,
        ])
    }

    pub fn sqrt(&self) -> Self {
        self.powf(0.5)
    }

    /// Real power via the falling-factorial rule. Callers are responsible for
    /// keeping the base in the domain where every coefficient is finite.
    pub fn powf(&self, p: f64) -> Self {
        let x = self.value();
        let mut d = [0.0; N];
        let mut falling = 1.0;
        for (k, dk) in d.iter_mut().enumerate() {
            *dk = if falling == 0.0 {
                0.0
            } else {
                falling * x.powf(p - k as f64)
            };
            falling *= p - k as f64;
        }
        self.compose(d)
    }

    pub fn powi(&self, n: i32) -> Self {
        let x = self.value();
        let mut d = [0.0; N];
        let mut falling = 1.0;
        for (k, dk) in d.iter_mut().enumerate() {
            *dk = if falling == 0.0 {
                0.0
            } else {
                falling * x.powi(n - k as i32)
            };
            falling *= (n - k as i32) as f64;
        }
        self.compose(d)
    }

    pub fn abs(&self) -> Self {
        if self.value() < 0.0 {
            -*self
        } else {
            *self
        }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let mut taylor = self.taylor;
        for (a, b) in taylor.iter_mut().zip(rhs.taylor) {
            *a += b;
        }
        Jet { taylor }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        let mut taylor = self.taylor;
        for (a, b) in taylor.iter_mut().zip(rhs.taylor) {
            *a -= b;
        }
        Jet { taylor }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let taylor = std::array::from_fn(|k| (0..=k).map(|j| self.taylor[j] * rhs.taylor[k - j]).sum());
        Jet { taylor }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        let b0 = rhs.taylor[0];
        let mut taylor = [0.0; N];
        for k in 0..N {
            let acc: f64 = (1..=k).map(|j| rhs.taylor[j] * taylor[k - j]).sum();
            taylor[k] = (self.taylor[k] - acc) / b0;
        }
        Jet { taylor }
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, rhs: f64) -> Jet {
        self + Jet::constant(rhs)
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(self, rhs: f64) -> Jet {
        self - Jet::constant(rhs)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}
