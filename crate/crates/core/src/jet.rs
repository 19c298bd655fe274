//! Forward-mode differentiation on expression trees.
//!
//! `Jet3` carries a value and derivatives up to order three in one variable;
//! `Jet23` carries all partials up to total order three in two variables.
//! Frame computations need third derivatives of curve coordinates and third
//! partials of patch coordinates (the normal field gets differentiated
//! twice), so both types track order three.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Numeric type an expression can be evaluated over.
pub trait Calc:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn constant(c: f64) -> Self;
    /// Compose with a scalar function given its value and first three
    /// derivatives at the inner value.
    fn compose(self, f: [f64; 4]) -> Self;
    fn value(self) -> f64;

    fn sin(self) -> Self {
        let x = self.value();
        self.compose([x.sin(), x.cos(), -x.sin(), -x.cos()])
    }
    fn cos(self) -> Self {
        let x = self.value();
        self.compose([x.cos(), -x.sin(), -x.cos(), x.sin()])
    }
    fn tan(self) -> Self {
        let f = self.value().tan();
        let f1 = 1.0 + f * f;
        let f2 = 2.0 * f * f1;
        let f3 = 2.0 * f1 * f1 + 2.0 * f * f2;
        self.compose([f, f1, f2, f3])
    }
    fn sinh(self) -> Self {
        let x = self.value();
        self.compose([x.sinh(), x.cosh(), x.sinh(), x.cosh()])
    }
    fn cosh(self) -> Self {
        let x = self.value();
        self.compose([x.cosh(), x.sinh(), x.cosh(), x.sinh()])
    }
    fn tanh(self) -> Self {
        let f = self.value().tanh();
        let f1 = 1.0 - f * f;
        let f2 = -2.0 * f * f1;
        let f3 = -2.0 * f1 * f1 - 2.0 * f * f2;
        self.compose([f, f1, f2, f3])
    }
    fn exp(self) -> Self {
        let e = self.value().exp();
        self.compose([e, e, e, e])
    }
    fn ln(self) -> Self {
        let x = self.value();
        self.compose([x.ln(), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x)])
    }
    fn sqrt(self) -> Self {
        let r = self.value().sqrt();
        self.compose([
            r,
            0.5 / r,
            -0.25 / (r * r * r),
            0.375 / (r * r * r * r * r),
        ])
    }
    fn powf(self, p: f64) -> Self {
        let x = self.value();
        self.compose([
            x.powf(p),
            p * x.powf(p - 1.0),
            p * (p - 1.0) * x.powf(p - 2.0),
            p * (p - 1.0) * (p - 2.0) * x.powf(p - 3.0),
        ])
    }
    fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::constant(1.0);
        }
        let neg = n < 0;
        let mut acc = self;
        for _ in 1..n.unsigned_abs() {
            acc = acc * self;
        }
        if neg {
            Self::constant(1.0) / acc
        } else {
            acc
        }
    }
}

impl Calc for f64 {
    fn constant(c: f64) -> f64 {
        c
    }
    fn compose(self, f: [f64; 4]) -> f64 {
        f[0]
    }
    fn value(self) -> f64 {
        self
    }
}

/// Value and first three derivatives with respect to one variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3 {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl Jet3 {
    pub const fn new(v: f64, d1: f64, d2: f64, d3: f64) -> Self {
        Self { v, d1, d2, d3 }
    }
    /// The evaluation seed: identity function of the parameter.
    pub const fn variable(v: f64) -> Self {
        Self::new(v, 1.0, 0.0, 0.0)
    }
    pub const fn constant(v: f64) -> Self {
        Self::new(v, 0.0, 0.0, 0.0)
    }
}

impl Add for Jet3 {
    type Output = Jet3;
    fn add(self, o: Jet3) -> Jet3 {
        Jet3::new(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2, self.d3 + o.d3)
    }
}
impl Sub for Jet3 {
    type Output = Jet3;
    fn sub(self, o: Jet3) -> Jet3 {
        Jet3::new(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2, self.d3 - o.d3)
    }
}
impl Neg for Jet3 {
    type Output = Jet3;
    fn neg(self) -> Jet3 {
        Jet3::new(-self.v, -self.d1, -self.d2, -self.d3)
    }
}
impl Mul for Jet3 {
    type Output = Jet3;
    fn mul(self, o: Jet3) -> Jet3 {
        Jet3::new(
            self.v * o.v,
            self.d1 * o.v + self.v * o.d1,
            self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
            self.d3 * o.v + 3.0 * self.d2 * o.d1 + 3.0 * self.d1 * o.d2 + self.v * o.d3,
        )
    }
}
impl Div for Jet3 {
    type Output = Jet3;
    fn div(self, o: Jet3) -> Jet3 {
        let g = o.v;
        let recip = o.compose([
            1.0 / g,
            -1.0 / (g * g),
            2.0 / (g * g * g),
            -6.0 / (g * g * g * g),
        ]);
        self * recip
    }
}

impl Calc for Jet3 {
    fn constant(c: f64) -> Jet3 {
        Jet3::constant(c)
    }
    fn value(self) -> f64 {
        self.v
    }
    /// Faà di Bruno to order three.
    fn compose(self, f: [f64; 4]) -> Jet3 {
        let (g1, g2, g3) = (self.d1, self.d2, self.d3);
        Jet3::new(
            f[0],
            f[1] * g1,
            f[2] * g1 * g1 + f[1] * g2,
            f[3] * g1 * g1 * g1 + 3.0 * f[2] * g1 * g2 + f[1] * g3,
        )
    }
}

/// Value and all partials up to total order three in two variables (u, v).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet23 {
    pub v: f64,
    pub du: f64,
    pub dv: f64,
    pub duu: f64,
    pub duv: f64,
    pub dvv: f64,
    pub duuu: f64,
    pub duuv: f64,
    pub duvv: f64,
    pub dvvv: f64,
}

impl Jet23 {
    pub const fn constant(v: f64) -> Self {
        Self { v, du: 0.0, dv: 0.0, duu: 0.0, duv: 0.0, dvv: 0.0, duuu: 0.0, duuv: 0.0, duvv: 0.0, dvvv: 0.0 }
    }
    pub const fn var_u(v: f64) -> Self {
        Self { du: 1.0, ..Self::constant(v) }
    }
    pub const fn var_v(v: f64) -> Self {
        Self { dv: 1.0, ..Self::constant(v) }
    }
}

impl Add for Jet23 {
    type Output = Jet23;
    fn add(self, o: Jet23) -> Jet23 {
        Jet23 {
            v: self.v + o.v,
            du: self.du + o.du,
            dv: self.dv + o.dv,
            duu: self.duu + o.duu,
            duv: self.duv + o.duv,
            dvv: self.dvv + o.dvv,
            duuu: self.duuu + o.duuu,
            duuv: self.duuv + o.duuv,
            duvv: self.duvv + o.duvv,
            dvvv: self.dvvv + o.dvvv,
        }
    }
}
impl Sub for Jet23 {
    type Output = Jet23;
    fn sub(self, o: Jet23) -> Jet23 {
        self + (-o)
    }
}
impl Neg for Jet23 {
    type Output = Jet23;
    fn neg(self) -> Jet23 {
        Jet23 {
            v: -self.v,
            du: -self.du,
            dv: -self.dv,
            duu: -self.duu,
            duv: -self.duv,
            dvv: -self.dvv,
            duuu: -self.duuu,
            duuv: -self.duuv,
            duvv: -self.duvv,
            dvvv: -self.dvvv,
        }
    }
}
impl Mul for Jet23 {
    type Output = Jet23;
    fn mul(self, o: Jet23) -> Jet23 {
        let (f, g) = (self, o);
        Jet23 {
            v: f.v * g.v,
            du: f.du * g.v + f.v * g.du,
            dv: f.dv * g.v + f.v * g.dv,
            duu: f.duu * g.v + 2.0 * f.du * g.du + f.v * g.duu,
            duv: f.duv * g.v + f.du * g.dv + f.dv * g.du + f.v * g.duv,
            dvv: f.dvv * g.v + 2.0 * f.dv * g.dv + f.v * g.dvv,
            duuu: f.duuu * g.v + 3.0 * f.duu * g.du + 3.0 * f.du * g.duu + f.v * g.duuu,
            duuv: f.duuv * g.v
                + f.duu * g.dv
                + 2.0 * f.duv * g.du
                + 2.0 * f.du * g.duv
                + f.dv * g.duu
                + f.v * g.duuv,
            duvv: f.duvv * g.v
                + f.dvv * g.du
                + 2.0 * f.duv * g.dv
                + 2.0 * f.dv * g.duv
                + f.du * g.dvv
                + f.v * g.duvv,
            dvvv: f.dvvv * g.v + 3.0 * f.dvv * g.dv + 3.0 * f.dv * g.dvv + f.v * g.dvvv,
        }
    }
}
impl Div for Jet23 {
    type Output = Jet23;
    fn div(self, o: Jet23) -> Jet23 {
        let g = o.v;
        let recip = o.compose([
            1.0 / g,
            -1.0 / (g * g),
            2.0 / (g * g * g),
            -6.0 / (g * g * g * g),
        ]);
        self * recip
    }
}

impl Calc for Jet23 {
    fn constant(c: f64) -> Jet23 {
        Jet23::constant(c)
    }
    fn value(self) -> f64 {
        self.v
    }
    /// Bivariate Faà di Bruno to total order three.
    fn compose(self, f: [f64; 4]) -> Jet23 {
        let g = self;
        let (f1, f2, f3) = (f[1], f[2], f[3]);
        Jet23 {
            v: f[0],
            du: f1 * g.du,
            dv: f1 * g.dv,
            duu: f2 * g.du * g.du + f1 * g.duu,
            duv: f2 * g.du * g.dv + f1 * g.duv,
            dvv: f2 * g.dv * g.dv + f1 * g.dvv,
            duuu: f3 * g.du * g.du * g.du + 3.0 * f2 * g.du * g.duu + f1 * g.duuu,
            duuv: f3 * g.du * g.du * g.dv
                + f2 * (2.0 * g.du * g.duv + g.dv * g.duu)
                + f1 * g.duuv,
            duvv: f3 * g.du * g.dv * g.dv
                + f2 * (2.0 * g.dv * g.duv + g.du * g.dvv)
                + f1 * g.duvv,
            dvvv: f3 * g.dv * g.dv * g.dv + 3.0 * f2 * g.dv * g.dvv + f1 * g.dvvv,
        }
    }
}
