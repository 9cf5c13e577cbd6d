//! Real scalar abstraction used by the soliton evaluator.
//!
//! `f64` is the working precision everywhere. [`Dd`] (double-double, about 32
//! significant digits) exists so that finite-difference residuals of exact
//! solutions can be pushed below the `f64` rounding floor.
//!
//! `Dd` wraps `twofloat::TwoFloat` and delegates addition, subtraction and
//! multiplication to it. Two things are replaced: `TwoFloat / TwoFloat` in
//! twofloat 0.8 forms the reciprocal residual `1 - b (1/b)` without a fused
//! multiply-add and so is only `f64`-accurate, and its transcendental functions
//! are only accurate to roughly `1e-18`.

use std::fmt::{self, Debug};
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_complex::Complex;
use twofloat::TwoFloat;

/// Double-double scalar.
#[derive(Clone, Copy, Default, PartialEq, PartialOrd)]
pub struct Dd(TwoFloat);

impl Dd {
    pub fn hi(self) -> f64 {
        self.0.hi()
    }

    pub fn lo(self) -> f64 {
        self.0.lo()
    }
}

impl From<f64> for Dd {
    fn from(v: f64) -> Self {
        Dd(TwoFloat::from(v))
    }
}

impl From<TwoFloat> for Dd {
    fn from(v: TwoFloat) -> Self {
        Dd(v)
    }
}

impl Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.hi(), self.lo())
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&(self.hi() + self.lo()), f)
    }
}

macro_rules! delegate_op {
    ($trait:ident, $method:ident) => {
        impl $trait for Dd {
            type Output = Dd;
            fn $method(self, rhs: Dd) -> Dd {
                Dd($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<f64> for Dd {
            type Output = Dd;
            fn $method(self, rhs: f64) -> Dd {
                Dd($trait::$method(self.0, rhs))
            }
        }
    };
}

delegate_op!(Add, add);
delegate_op!(Sub, sub);
delegate_op!(Mul, mul);
delegate_op!(Rem, rem);

impl Div for Dd {
    type Output = Dd;
    /// Long division with three `f64` quotient digits; each remainder
    /// `a - q b` is formed from exact products, so the quotient carries full
    /// double-double accuracy.
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi() / rhs.hi();
        if !q1.is_finite() || q1 == 0.0 {
            return Dd::from(q1);
        }
        let r = self.0 - rhs.0 * q1;
        let q2 = r.hi() / rhs.hi();
        let r = r - rhs.0 * q2;
        let q3 = r.hi() / rhs.hi();
        Dd(TwoFloat::new_add(q1, q2) + q3)
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    fn div(self, rhs: f64) -> Dd {
        Dd(self.0 / rhs)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd(-self.0)
    }
}

impl num_traits::Zero for Dd {
    fn zero() -> Self {
        Dd::from(0.0)
    }
    fn is_zero(&self) -> bool {
        self.hi() == 0.0
    }
}

impl num_traits::One for Dd {
    fn one() -> Self {
        Dd::from(1.0)
    }
}

impl num_traits::Num for Dd {
    type FromStrRadixErr = <f64 as num_traits::Num>::FromStrRadixErr;
    /// Parses to `f64` precision only.
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        <f64 as num_traits::Num>::from_str_radix(s, radix).map(Dd::from)
    }
}

pub trait Real:
    Copy + Debug + PartialOrd + Send + Sync + num_traits::Num + Neg<Output = Self> + 'static
{
    fn from_f64(v: f64) -> Self;
    fn to_f64(self) -> f64;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sqrt(self) -> Self;
    fn pi() -> Self;

    fn abs(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }

    fn hypot(self, other: Self) -> Self {
        (self * self + other * other).sqrt()
    }
}

impl Real for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn hypot(self, other: Self) -> Self {
        f64::hypot(self, other)
    }
}

const EXP_HALVINGS: i32 = 10;
const EXP_TAYLOR_TERMS: usize = 12;
const TRIG_TAYLOR_TERMS: usize = 30;

fn dd(v: f64) -> TwoFloat {
    TwoFloat::from(v)
}

fn dd_exp(x: TwoFloat) -> TwoFloat {
    let hi = x.hi();
    if hi > 709.0 {
        return dd(f64::INFINITY);
    }
    if hi < -745.0 {
        return dd(0.0);
    }
    let n = (hi / std::f64::consts::LN_2).round();
    let r = x - twofloat::consts::LN_2 * n;
    let s = r * (0.5f64).powi(EXP_HALVINGS);
    // Horner form of exp(s) - 1.
    let mut em1 = dd(0.0);
    for k in (1..=EXP_TAYLOR_TERMS).rev() {
        em1 = s / (k as f64) * (em1 + 1.0);
    }
    for _ in 0..EXP_HALVINGS {
        em1 = em1 * (em1 + 2.0);
    }
    (em1 + 1.0) * (2.0f64).powi(n as i32)
}

fn dd_ln(x: TwoFloat) -> TwoFloat {
    if !(x.hi() > 0.0) {
        return dd(f64::NAN);
    }
    let mut y = dd(x.hi().ln());
    for _ in 0..2 {
        y = y + x * dd_exp(-y) - 1.0;
    }
    y
}

/// Returns (sin r, cos r) for |r| <= pi/4.
fn dd_sincos_reduced(r: TwoFloat) -> (TwoFloat, TwoFloat) {
    let r2 = r * r;
    let mut sin = dd(0.0);
    let mut cos = dd(0.0);
    // Horner on the odd and even Taylor series.
    let mut k = TRIG_TAYLOR_TERMS;
    while k >= 2 {
        let kf = k as f64;
        if k % 2 == 0 {
            cos = dd(1.0) - r2 / (kf * (kf - 1.0)) * cos;
        } else {
            sin = dd(1.0) - r2 / (kf * (kf - 1.0)) * sin;
        }
        k -= 1;
    }
    (r * sin, cos)
}

fn dd_sincos(x: TwoFloat) -> (TwoFloat, TwoFloat) {
    let n = (x.hi() / std::f64::consts::FRAC_PI_2).round();
    let r = x - twofloat::consts::FRAC_PI_2 * n;
    let (s, c) = dd_sincos_reduced(r);
    match (n as i64).rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

fn dd_sqrt(x: TwoFloat) -> TwoFloat {
    if x.hi() <= 0.0 {
        return dd(if x.hi() == 0.0 { 0.0 } else { f64::NAN });
    }
    let s = dd(x.hi().sqrt());
    s + (x - s * s) / (s * 2.0)
}

impl Real for Dd {
    fn from_f64(v: f64) -> Self {
        Dd::from(v)
    }
    fn to_f64(self) -> f64 {
        self.hi() + self.lo()
    }
    fn exp(self) -> Self {
        Dd(dd_exp(self.0))
    }
    fn ln(self) -> Self {
        Dd(dd_ln(self.0))
    }
    fn sin(self) -> Self {
        Dd(dd_sincos(self.0).0)
    }
    fn cos(self) -> Self {
        Dd(dd_sincos(self.0).1)
    }
    fn sqrt(self) -> Self {
        Dd(dd_sqrt(self.0))
    }
    fn pi() -> Self {
        Dd(twofloat::consts::PI)
    }
}

/// `exp(z)` for a complex number over any [`Real`].
pub fn cexp<T: Real>(z: Complex<T>) -> Complex<T> {
    let m = z.re.exp();
    Complex::new(m * z.im.cos(), m * z.im.sin())
}

/// Squared modulus as `f64`, used for pivot selection.
pub fn norm_sqr_f64<T: Real>(z: Complex<T>) -> f64 {
    let re = z.re.to_f64();
    let im = z.im.to_f64();
    re * re + im * im
}

pub fn to_c64<T: Real>(z: Complex<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

pub fn from_c64<T: Real>(z: Complex<f64>) -> Complex<T> {
    Complex::new(T::from_f64(z.re), T::from_f64(z.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(a: TwoFloat, b: TwoFloat) -> f64 {
        let d = a - b;
        (d.hi() + d.lo()).abs()
    }

    #[test]
    fn dd_exp_of_one_matches_e() {
        assert!(err(dd_exp(dd(1.0)), twofloat::consts::E) < 1e-30);
    }

    #[test]
    fn dd_ln_inverts_exp() {
        for &x in &[-30.0, -2.5, -1e-3, 0.3, 1.0, 7.25, 40.0] {
            let v = dd(x) + dd(1e-20);
            let back = dd_ln(dd_exp(v));
            assert!(err(back, v) < 1e-29 * (1.0 + x.abs()), "x = {x}");
        }
    }

    #[test]
    fn dd_trig_identities() {
        for &x in &[-12.0, -3.0, -0.5, 0.1, 0.7, 2.0, 5.5, 40.0] {
            let (s, c) = dd_sincos(dd(x));
            assert!(err(s * s + c * c, dd(1.0)) < 1e-30, "x = {x}");
        }
        let sixth = twofloat::consts::FRAC_PI_6;
        assert!(err(dd_sincos(sixth).0, dd(0.5)) < 1e-31);
        assert!(err(dd_sincos(twofloat::consts::PI).0, dd(0.0)) < 1e-31);
    }

    #[test]
    fn dd_sqrt_squares_back() {
        let two = dd(2.0);
        assert!(err(dd_sqrt(two) * dd_sqrt(two), two) < 1e-31);
        assert!(err(dd_sqrt(two), twofloat::consts::SQRT_2) < 1e-31);
    }

    #[test]
    fn f64_and_dd_agree_to_double_precision() {
        for &x in &[-3.0, 0.25, 1.5, 9.0] {
            assert!((Real::exp(Dd::from(x)).to_f64() - x.exp()).abs() <= 4e-16 * x.exp());
            assert!((Real::sin(Dd::from(x)).to_f64() - x.sin()).abs() <= 4e-16);
        }
    }

    #[test]
    fn division_is_double_double_accurate() {
        for &(a, b) in &[(1.0, 3.0), (2.0, 7.0), (-5.5, 0.1), (1e-20, 3e5), (123.456, -9.87)] {
            let (a, b) = (Dd::from(a), Dd::from(b));
            let q = a / b;
            assert!(err((q * b).0, a.0) < 1e-31 * a.hi().abs(), "{a:?} / {b:?}");
        }
        let third = Dd::from(1.0) / Dd::from(3.0);
        assert!(err((third * Dd::from(3.0)).0, dd(1.0)) < 1e-31);
        assert_eq!((Dd::from(1.0) / Dd::from(0.0)).hi(), f64::INFINITY);
    }
}
