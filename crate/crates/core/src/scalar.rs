//! Number types that the algebraic formulas are generic over.
//!
//! Every norm, potential and product in this crate is written once against
//! [`Scalar`] and evaluated either on plain [`C64`] values or on jets
//! ([`crate::jet::Jet`], [`crate::jet::Grad`]) to obtain exact derivatives.
//!
//! Formulas never conjugate a scalar. Antiholomorphic quantities are passed in
//! as separate arguments (`zb` next to `z`), so a jet can perturb `z` and `z̄`
//! independently; this is what makes Wirtinger derivatives fall out of the
//! Taylor coefficients directly.

use num_complex::Complex64;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

pub type C64 = Complex64;

/// Commutative ring with constants in `C`, a point value, and analytic
/// elementary functions.
pub trait Scalar:
    Clone + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_c64(c: C64) -> Self;

    fn from_f64(x: f64) -> Self {
        Self::from_c64(C64::new(x, 0.0))
    }

    fn zero() -> Self {
        Self::from_c64(C64::new(0.0, 0.0))
    }

    fn one() -> Self {
        Self::from_c64(C64::new(1.0, 0.0))
    }

    /// Value at the expansion point (the constant term for jets).
    fn value(&self) -> C64;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;

    /// Multiplication by a constant.
    fn scale(&self, c: C64) -> Self;

    /// Structural zero test; jets report `true` only when no coefficient is stored.
    fn is_zero(&self) -> bool;

    /// Upper bound on `m` such that `(self - value)^m` can be nonzero.
    fn nil_degree(&self) -> usize;

    fn ln(&self) -> Self {
        apply_series(self, |v, m| {
            if m == 0 {
                v.ln()
            } else {
                let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
                sign / (m as f64 * v.powu(m as u32))
            }
        })
    }

    fn exp(&self) -> Self {
        apply_series(self, |v, m| v.exp() / factorial(m))
    }

    fn powf(&self, p: f64) -> Self {
        apply_series(self, |v, m| binomial(p, m) * v.powf(p - m as f64))
    }

    fn sqrt(&self) -> Self {
        self.powf(0.5)
    }

    fn recip(&self) -> Self {
        apply_series(self, |v, m| {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            sign / v.powu(m as u32 + 1)
        })
    }

    fn div_ref(&self, other: &Self) -> Self {
        self.mul_ref(&other.recip())
    }
}

/// Evaluates `f(x)` through its Taylor series at `x.value()`; `coeff(v, m)` must
/// return `f^(m)(v) / m!`. Exact for nilpotent infinitesimal parts.
pub fn apply_series<S: Scalar>(x: &S, coeff: impl Fn(C64, usize) -> C64) -> S {
    let v = x.value();
    let k = x.nil_degree();
    if k == 0 {
        return S::from_c64(coeff(v, 0));
    }
    let h = x.sub_ref(&S::from_c64(v));
    let mut acc = S::from_c64(coeff(v, k));
    for m in (0..k).rev() {
        acc = acc.mul_ref(&h).add_ref(&S::from_c64(coeff(v, m)));
    }
    acc
}

pub(crate) fn factorial(m: usize) -> f64 {
    (1..=m).map(|k| k as f64).product()
}

fn binomial(p: f64, m: usize) -> f64 {
    (0..m).fold(1.0, |acc, k| acc * (p - k as f64) / (k + 1) as f64)
}

impl Scalar for C64 {
    fn from_c64(c: C64) -> Self {
        c
    }

    fn value(&self) -> C64 {
        *self
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn scale(&self, c: C64) -> Self {
        self * c
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn nil_degree(&self) -> usize {
        0
    }

    fn ln(&self) -> Self {
        Complex64::ln(*self)
    }

    fn exp(&self) -> Self {
        Complex64::exp(*self)
    }

    fn powf(&self, p: f64) -> Self {
        Complex64::powf(*self, p)
    }

    fn sqrt(&self) -> Self {
        Complex64::sqrt(*self)
    }

    fn recip(&self) -> Self {
        Complex64::new(1.0, 0.0) / self
    }
}

// Free-function shorthands keep the algebraic formulas readable.

#[inline]
pub fn add<S: Scalar>(a: &S, b: &S) -> S {
    a.add_ref(b)
}

#[inline]
pub fn sub<S: Scalar>(a: &S, b: &S) -> S {
    a.sub_ref(b)
}

#[inline]
pub fn mul<S: Scalar>(a: &S, b: &S) -> S {
    a.mul_ref(b)
}

/// `Σ a_i b_i`.
pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc.add_ref(&x.mul_ref(y)))
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
