//! Complexified octonions `O ⊗ C` in the Cayley basis `{1, e_1, …, e_7}`.
//!
//! The product is the complex-bilinear extension of the real octonion product,
//! written as `ZW = (z0 w0 − ⟨z,w⟩, z0 w + w0 z + z × w)`. Nothing here
//! conjugates coefficients implicitly; [`Octonion::complex_conj`] is the only
//! place complex conjugation happens.

use crate::scalar::{add, mul, sub, Scalar, C64};
use std::array;

/// Oriented lines of the Fano plane: `e_a e_b = e_c` for each `(a, b, c)` and
/// its cyclic shifts. This is the `e_i e_{i+1} = e_{i+3}` convention (mod 7),
/// so `e1 e2 = e4`.
pub const FANO_TRIPLES: [(usize, usize, usize); 7] = [
    (1, 2, 4),
    (2, 3, 5),
    (3, 4, 6),
    (4, 5, 7),
    (5, 6, 1),
    (6, 7, 2),
    (7, 1, 3),
];

/// Imaginary part of an octonion, a vector in `C^7` (index 0 holds `e_1`).
#[derive(Clone, Debug, PartialEq)]
pub struct CrossVector<S = C64> {
    pub v: [S; 7],
}

/// Element of `O_C`: eight coefficients, index 0 the real unit.
#[derive(Clone, Debug, PartialEq)]
pub struct Octonion<S = C64> {
    pub c: [S; 8],
}

pub type ComplexOctonion = Octonion<C64>;

impl<S: Scalar> CrossVector<S> {
    pub fn new(v: [S; 7]) -> Self {
        CrossVector { v }
    }

    pub fn zero() -> Self {
        CrossVector {
            v: array::from_fn(|_| S::zero()),
        }
    }

    /// `⟨z, w⟩ = Σ z_j w_j`, bilinear.
    pub fn dot(&self, other: &Self) -> S {
        crate::scalar::dot(&self.v, &other.v)
    }

    /// Complex-bilinear Cayley cross product.
    pub fn cross(&self, other: &Self) -> Self {
        let mut out: [S; 7] = array::from_fn(|_| S::zero());
        for &(a, b, c) in &FANO_TRIPLES {
            for (i, j, k) in [(a, b, c), (b, c, a), (c, a, b)] {
                let (i, j, k) = (i - 1, j - 1, k - 1);
                let term = sub(&mul(&self.v[i], &other.v[j]), &mul(&self.v[j], &other.v[i]));
                out[k] = add(&out[k], &term);
            }
        }
        CrossVector { v: out }
    }
}

impl<S: Scalar> Octonion<S> {
    pub fn new(c: [S; 8]) -> Self {
        Octonion { c }
    }

    pub fn zero() -> Self {
        Octonion {
            c: array::from_fn(|_| S::zero()),
        }
    }

    pub fn scalar(s: S) -> Self {
        let mut o = Self::zero();
        o.c[0] = s;
        o
    }

    /// `e_i`, with `e_0 = 1`.
    pub fn unit(i: usize) -> Self {
        assert!(i < 8, "octonion basis index {i} out of range");
        let mut o = Self::zero();
        o.c[i] = S::one();
        o
    }

    pub fn real_part(&self) -> &S {
        &self.c[0]
    }

    pub fn imag(&self) -> CrossVector<S> {
        CrossVector {
            v: array::from_fn(|j| self.c[j + 1].clone()),
        }
    }

    pub fn from_parts(real: S, imag: CrossVector<S>) -> Self {
        let mut c: [S; 8] = array::from_fn(|_| S::zero());
        c[0] = real;
        for (slot, v) in c[1..].iter_mut().zip(imag.v) {
            *slot = v;
        }
        Octonion { c }
    }

    pub fn add(&self, other: &Self) -> Self {
        Octonion {
            c: array::from_fn(|i| add(&self.c[i], &other.c[i])),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Octonion {
            c: array::from_fn(|i| sub(&self.c[i], &other.c[i])),
        }
    }

    pub fn scale_by(&self, s: &S) -> Self {
        Octonion {
            c: array::from_fn(|i| mul(&self.c[i], s)),
        }
    }

    pub fn scale(&self, k: C64) -> Self {
        Octonion {
            c: array::from_fn(|i| self.c[i].scale(k)),
        }
    }

    /// `⟨Z, W⟩ = z0 w0 + ⟨z, w⟩`, bilinear.
    pub fn bilinear_form(&self, other: &Self) -> S {
        crate::scalar::dot(&self.c, &other.c)
    }

    /// Octonionic (Cayley) conjugation `Z̃ = z0 − z`.
    pub fn cayley_conj(&self) -> Self {
        Octonion {
            c: array::from_fn(|i| {
                if i == 0 {
                    self.c[0].clone()
                } else {
                    -self.c[i].clone()
                }
            }),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (z0, w0) = (&self.c[0], &other.c[0]);
        let (z, w) = (self.imag(), other.imag());
        let real = sub(&mul(z0, w0), &z.dot(&w));
        let cross = z.cross(&w);
        let imag = CrossVector {
            v: array::from_fn(|j| {
                let t = add(&mul(z0, &w.v[j]), &mul(w0, &z.v[j]));
                add(&t, &cross.v[j])
            }),
        };
        Self::from_parts(real, imag)
    }
}

impl Octonion<C64> {
    /// Coefficient-wise complex conjugate `Z̄`.
    pub fn complex_conj(&self) -> Self {
        Octonion {
            c: array::from_fn(|i| self.c[i].conj()),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Free-function forms mirroring the operation names used throughout the crate.
pub fn oct_mul<S: Scalar>(z: &Octonion<S>, w: &Octonion<S>) -> Octonion<S> {
    z.mul(w)
}

pub fn cayley_conj<S: Scalar>(z: &Octonion<S>) -> Octonion<S> {
    z.cayley_conj()
}

pub fn complex_conj(z: &ComplexOctonion) -> ComplexOctonion {
    z.complex_conj()
}

pub fn bilinear_form<S: Scalar>(z: &Octonion<S>, w: &Octonion<S>) -> S {
    z.bilinear_form(w)
}

pub fn cross_product<S: Scalar>(z: &CrossVector<S>, w: &CrossVector<S>) -> CrossVector<S> {
    z.cross(w)
}
