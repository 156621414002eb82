//! The 27-dimensional exceptional Jordan triple system and its 16-dimensional
//! type V subsystem.
//!
//! Elements are `(z1, z2, z3, Z1, Z2, Z3)` with `z_j ∈ C` and `Z_j ∈ O_C`.
//! The Freudenthal product and the adjoint are generic over [`Scalar`] because
//! the generic norms of types V and VI are built from them; the Hermitian
//! pairing and the triple product involve complex conjugation and are only
//! defined on plain complex elements.

use crate::error::{Error, Result};
use crate::octonion::Octonion;
use crate::scalar::{add, mul, sub, Scalar, C64};
use std::array;

pub const JORDAN_DIM: usize = 27;
pub const TYPE_V_DIM: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct JordanElement<S = C64> {
    pub s: [S; 3],
    pub o: [Octonion<S>; 3],
}

/// Element `(0, 0, 0, 0, Z2, Z3)` of the type V subsystem.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeVElement<S = C64> {
    pub z2: Octonion<S>,
    pub z3: Octonion<S>,
}

impl<S: Scalar> JordanElement<S> {
    pub fn zero() -> Self {
        JordanElement {
            s: array::from_fn(|_| S::zero()),
            o: array::from_fn(|_| Octonion::zero()),
        }
    }

    pub fn diagonal(z1: S, z2: S, z3: S) -> Self {
        JordanElement {
            s: [z1, z2, z3],
            o: array::from_fn(|_| Octonion::zero()),
        }
    }

    /// Canonical coordinates: `z1, z2, z3`, then the 8 coefficients of each of
    /// `Z1, Z2, Z3`.
    pub fn from_flat(v: &[S]) -> Self {
        assert_eq!(
            v.len(),
            JORDAN_DIM,
            "Jordan element needs {JORDAN_DIM} coordinates"
        );
        JordanElement {
            s: array::from_fn(|i| v[i].clone()),
            o: array::from_fn(|j| Octonion::new(array::from_fn(|k| v[3 + 8 * j + k].clone()))),
        }
    }

    pub fn to_flat(&self) -> Vec<S> {
        self.s
            .iter()
            .cloned()
            .chain(self.o.iter().flat_map(|o| o.c.iter().cloned()))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        JordanElement {
            s: array::from_fn(|i| add(&self.s[i], &other.s[i])),
            o: array::from_fn(|i| self.o[i].add(&other.o[i])),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        JordanElement {
            s: array::from_fn(|i| sub(&self.s[i], &other.s[i])),
            o: array::from_fn(|i| self.o[i].sub(&other.o[i])),
        }
    }

    pub fn scale(&self, k: C64) -> Self {
        JordanElement {
            s: array::from_fn(|i| self.s[i].scale(k)),
            o: array::from_fn(|i| self.o[i].scale(k)),
        }
    }

    pub fn scale_by(&self, k: &S) -> Self {
        JordanElement {
            s: array::from_fn(|i| mul(&self.s[i], k)),
            o: array::from_fn(|i| self.o[i].scale_by(k)),
        }
    }

    /// `Σ x_k y_k` over the 27 coordinates. With `y` replaced by its complex
    /// conjugate this is the Hermitian pairing `(x | y)`.
    pub fn bilinear_pairing(&self, other: &Self) -> S {
        let scalars = crate::scalar::dot(&self.s, &other.s);
        self.o
            .iter()
            .zip(&other.o)
            .fold(scalars, |acc, (a, b)| add(&acc, &a.bilinear_form(b)))
    }

    /// Freudenthal product `x × y`, symmetric and bilinear.
    pub fn freudenthal(&self, other: &Self) -> Self {
        let (z, w) = (&self.s, &other.s);
        let (zo, wo) = (&self.o, &other.o);
        // cyclic index triples (i, j, k) for the i-th scalar and octonion slot
        let cyc = [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)];
        let s = array::from_fn(|slot| {
            let (i, j, k) = cyc[slot];
            let t = add(&mul(&z[j], &w[k]), &mul(&z[k], &w[j]));
            sub(&t, &zo[i].bilinear_form(&wo[i]))
        });
        let o = array::from_fn(|slot| {
            let (i, j, k) = cyc[slot];
            let t = zo[j].mul(&wo[k]).add(&wo[j].mul(&zo[k]));
            let u = wo[i].cayley_conj().scale_by(&z[i]);
            let v = zo[i].cayley_conj().scale_by(&w[i]);
            t.sub(&u).sub(&v)
        });
        JordanElement { s, o }
    }

    /// Freudenthal adjoint `z♯ = ½ z × z`, from its explicit expression.
    pub fn adjoint(&self) -> Self {
        let z = &self.s;
        let zo = &self.o;
        let half = C64::new(0.5, 0.0);
        let cyc = [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)];
        let s = array::from_fn(|slot| {
            let (i, j, k) = cyc[slot];
            sub(&mul(&z[j], &z[k]), &zo[i].bilinear_form(&zo[i]).scale(half))
        });
        let o = array::from_fn(|slot| {
            let (i, j, k) = cyc[slot];
            zo[j].mul(&zo[k]).sub(&zo[i].cayley_conj().scale_by(&z[i]))
        });
        JordanElement { s, o }
    }
}

impl JordanElement<C64> {
    pub fn complex_conj(&self) -> Self {
        JordanElement {
            s: array::from_fn(|i| self.s[i].conj()),
            o: array::from_fn(|i| self.o[i].complex_conj()),
        }
    }

    /// `(x | y) = Σ z_j w̄_j + Σ ⟨Z_j, W̄_j⟩`.
    pub fn hermitian_pairing(&self, other: &Self) -> C64 {
        self.bilinear_pairing(&other.complex_conj())
    }

    /// `{x, y, z} = (x|y) z + (z|y) x − (x × z) × ȳ`.
    pub fn triple_product(x: &Self, y: &Self, z: &Self) -> Self {
        let first = z.scale(x.hermitian_pairing(y));
        let second = x.scale(z.hermitian_pairing(y));
        let cross = x.freudenthal(z).freudenthal(&y.complex_conj());
        first.add(&second).sub(&cross)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.to_flat()
            .iter()
            .zip(other.to_flat())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.hermitian_pairing(self).re
    }
}

impl<S: Scalar> TypeVElement<S> {
    pub fn zero() -> Self {
        TypeVElement {
            z2: Octonion::zero(),
            z3: Octonion::zero(),
        }
    }

    /// Coordinates: the 8 coefficients of `Z2`, then those of `Z3`.
    pub fn from_flat(v: &[S]) -> Self {
        assert_eq!(
            v.len(),
            TYPE_V_DIM,
            "type V element needs {TYPE_V_DIM} coordinates"
        );
        TypeVElement {
            z2: Octonion::new(array::from_fn(|k| v[k].clone())),
            z3: Octonion::new(array::from_fn(|k| v[8 + k].clone())),
        }
    }

    pub fn to_flat(&self) -> Vec<S> {
        self.z2.c.iter().chain(self.z3.c.iter()).cloned().collect()
    }

    pub fn embed(&self) -> JordanElement<S> {
        JordanElement {
            s: array::from_fn(|_| S::zero()),
            o: [Octonion::zero(), self.z2.clone(), self.z3.clone()],
        }
    }
}

pub fn embed_type_v<S: Scalar>(v: &TypeVElement<S>) -> JordanElement<S> {
    v.embed()
}

/// Inverse of [`embed_type_v`]; the complementary slots must vanish to `tol`.
pub fn project_type_v(x: &JordanElement<C64>, tol: f64) -> Result<TypeVElement<C64>> {
    let off =
        x.s.iter()
            .chain(x.o[0].c.iter())
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    if off > tol {
        return Err(Error::StructureViolation(format!(
            "complementary slots of magnitude {off:e} exceed {tol:e}"
        )));
    }
    Ok(TypeVElement {
        z2: x.o[1].clone(),
        z3: x.o[2].clone(),
    })
}

pub fn hermitian_pairing(x: &JordanElement<C64>, y: &JordanElement<C64>) -> C64 {
    x.hermitian_pairing(y)
}

pub fn freudenthal_product<S: Scalar>(
    x: &JordanElement<S>,
    y: &JordanElement<S>,
) -> JordanElement<S> {
    x.freudenthal(y)
}

pub fn adjoint<S: Scalar>(z: &JordanElement<S>) -> JordanElement<S> {
    z.adjoint()
}

pub fn triple_product(
    x: &JordanElement<C64>,
    y: &JordanElement<C64>,
    z: &JordanElement<C64>,
) -> JordanElement<C64> {
    JordanElement::triple_product(x, y, z)
}
