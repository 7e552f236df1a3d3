//! Coefficient fields: exact Gaussian rationals and tolerance-pruned complex floats.

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

/// Rational type used by the exact backend.
pub type Q = Ratio<i128>;

/// Coefficient ring shared by every algebraic structure in the crate.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_q(re: Q, im: Q) -> Self;
    fn to_c64(&self) -> Complex64;
    /// Exact conversion where possible; `None` when the backend cannot hold the value.
    fn from_c64(c: Complex64) -> Option<Self>;
    /// Equality up to the backend's notion of zero.
    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }
    fn is_one(&self) -> bool {
        self.approx_eq(&Self::one())
    }
}

/// Exact Gaussian rational `re + i im`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Gauss {
    pub re: Q,
    pub im: Q,
}

impl Gauss {
    pub fn new(re: Q, im: Q) -> Self {
        Gauss { re, im }
    }
    pub fn int(v: i64) -> Self {
        Gauss::new(Q::from_integer(v as i128), Q::zero())
    }
    pub fn ratio(n: i64, d: i64) -> Self {
        Gauss::new(Q::new(n as i128, d as i128), Q::zero())
    }
    pub fn i() -> Self {
        Gauss::new(Q::zero(), Q::one())
    }
}

fn q_to_f64(q: &Q) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

fn fmt_q(q: &Q, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_q(&self.re, f),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-self.im).is_one() {
                    write!(f, "-i")
                } else {
                    fmt_q(&self.im, f)?;
                    write!(f, "i")
                }
            }
            (false, false) => {
                write!(f, "(")?;
                fmt_q(&self.re, f)?;
                let mag = self.im.abs();
                write!(f, "{}", if self.im.is_negative() { "-" } else { "+" })?;
                if !mag.is_one() {
                    fmt_q(&mag, f)?;
                }
                write!(f, "i)")
            }
        }
    }
}

impl Add for Gauss {
    type Output = Gauss;
    fn add(self, o: Gauss) -> Gauss {
        Gauss::new(self.re + o.re, self.im + o.im)
    }
}
impl Sub for Gauss {
    type Output = Gauss;
    fn sub(self, o: Gauss) -> Gauss {
        Gauss::new(self.re - o.re, self.im - o.im)
    }
}
impl Mul for Gauss {
    type Output = Gauss;
    fn mul(self, o: Gauss) -> Gauss {
        if self.im.is_zero() && o.im.is_zero() {
            return Gauss::new(self.re * o.re, Q::zero());
        }
        Gauss::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}
impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss::new(-self.re, -self.im)
    }
}

impl Scalar for Gauss {
    fn zero() -> Self {
        Gauss::new(Q::zero(), Q::zero())
    }
    fn one() -> Self {
        Gauss::int(1)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn conj(&self) -> Self {
        Gauss::new(self.re, -self.im)
    }
    fn from_i64(v: i64) -> Self {
        Gauss::int(v)
    }
    fn from_q(re: Q, im: Q) -> Self {
        Gauss::new(re, im)
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(q_to_f64(&self.re), q_to_f64(&self.im))
    }
    fn from_c64(c: Complex64) -> Option<Self> {
        let conv = |x: f64| -> Option<Q> {
            // Accept only dyadic values that survive the round trip exactly.
            for k in 0..=20 {
                let scaled = x * (1u64 << k) as f64;
                if scaled.fract() == 0.0 && scaled.abs() < 1e15 {
                    return Some(Q::new(scaled as i128, 1i128 << k));
                }
            }
            None
        };
        Some(Gauss::new(conv(c.re)?, conv(c.im)?))
    }
    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }
}

static TOLERANCE_BITS: AtomicU64 = AtomicU64::new(0x3D71_9799_812D_EA11); // 1e-12

/// Current zero tolerance of the float backend.
pub fn tolerance() -> f64 {
    f64::from_bits(TOLERANCE_BITS.load(Ordering::Relaxed))
}

/// Sets the zero tolerance of the float backend (process wide).
pub fn set_tolerance(tol: f64) {
    TOLERANCE_BITS.store(tol.to_bits(), Ordering::Relaxed);
}

/// Complex float coefficient; values below [`tolerance`] count as zero.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct Cplx(pub Complex64);

impl Cplx {
    pub fn new(re: f64, im: f64) -> Self {
        Cplx(Complex64::new(re, im))
    }
    pub fn real(re: f64) -> Self {
        Cplx::new(re, 0.0)
    }
    pub fn re(&self) -> f64 {
        self.0.re
    }
    pub fn im(&self) -> f64 {
        self.0.im
    }
    pub fn abs(&self) -> f64 {
        self.0.norm()
    }
}

fn fmt_f(x: f64) -> String {
    let r = x.round();
    if (x - r).abs() < 1e-12 {
        format!("{}", r as i64)
    } else {
        format!("{:.6}", x)
            .trim_end_matches('0')
            .trim_end_matches('.')
            .to_string()
    }
}

impl fmt::Display for Cplx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tol = tolerance();
        let (re, im) = (self.0.re, self.0.im);
        match (re.abs() < tol, im.abs() < tol) {
            (_, true) => write!(f, "{}", fmt_f(re)),
            (true, false) => write!(f, "{}i", fmt_f(im)),
            _ => {
                let sign = if im < 0.0 { "-" } else { "+" };
                write!(f, "({}{}{}i)", fmt_f(re), sign, fmt_f(im.abs()))
            }
        }
    }
}

impl Add for Cplx {
    type Output = Cplx;
    fn add(self, o: Cplx) -> Cplx {
        Cplx(self.0 + o.0)
    }
}
impl Sub for Cplx {
    type Output = Cplx;
    fn sub(self, o: Cplx) -> Cplx {
        Cplx(self.0 - o.0)
    }
}
impl Mul for Cplx {
    type Output = Cplx;
    fn mul(self, o: Cplx) -> Cplx {
        Cplx(self.0 * o.0)
    }
}
impl Neg for Cplx {
    type Output = Cplx;
    fn neg(self) -> Cplx {
        Cplx(-self.0)
    }
}

impl Scalar for Cplx {
    fn zero() -> Self {
        Cplx::new(0.0, 0.0)
    }
    fn one() -> Self {
        Cplx::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.0.norm() < tolerance()
    }
    fn conj(&self) -> Self {
        Cplx(self.0.conj())
    }
    fn from_i64(v: i64) -> Self {
        Cplx::new(v as f64, 0.0)
    }
    fn from_q(re: Q, im: Q) -> Self {
        Cplx::new(q_to_f64(&re), q_to_f64(&im))
    }
    fn to_c64(&self) -> Complex64 {
        self.0
    }
    fn from_c64(c: Complex64) -> Option<Self> {
        Some(Cplx(c))
    }
}

/// Lossless widening from the exact backend into any backend.
pub fn lift<S: Scalar>(g: &Gauss) -> S {
    S::from_q(g.re, g.im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_arithmetic() {
        let a = Gauss::new(Q::new(1, 2), Q::new(1, 3));
        let b = a.conj();
        let p = a.clone() * b;
        assert_eq!(p, Gauss::new(Q::new(13, 36), Q::zero()));
        assert_eq!(format!("{}", Gauss::i()), "i");
        assert_eq!(format!("{}", Gauss::ratio(-3, 4)), "-3/4");
    }

    #[test]
    fn default_tolerance() {
        assert_eq!(tolerance(), 1e-12);
        assert!(Cplx::new(1e-13, 0.0).is_zero());
        assert!(!Cplx::new(1e-11, 0.0).is_zero());
    }

    #[test]
    fn dyadic_conversion() {
        assert_eq!(
            Gauss::from_c64(Complex64::new(-0.5, 1.0)),
            Some(Gauss::new(Q::new(-1, 2), Q::one()))
        );
        assert_eq!(Gauss::from_c64(Complex64::new(0.1, 0.0)), None);
    }
}
