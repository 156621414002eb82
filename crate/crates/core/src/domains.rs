//! Cartan domains I–VI, their products, and Hartogs domains over them.
//!
//! Points are flat coordinate vectors. Per factor the layout is:
//! type I row-major `n × m` entries; type II the strictly upper triangle
//! (row-major, `Z_ji = −Z_ij`); type III the upper triangle with diagonal
//! (row-major, symmetric); type IV the vector itself; type V the 8 + 8
//! coefficients of `Z2, Z3`; type VI the 27 Jordan coordinates. Products
//! concatenate their factors in order.

use crate::error::{Error, Result};
use crate::jordan::{JordanElement, TypeVElement};
use crate::linalg;
use crate::scalar::{add, dot, mul, sub, Scalar, C64};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CartanKind {
    I { n: usize, m: usize },
    II { n: usize },
    III { n: usize },
    IV { n: usize },
    V,
    VI,
}

/// An irreducible factor. `relaxed` admits the small-`n` instances of types
/// II–IV that the classification excludes but the formulas still cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanDomainSpec {
    #[serde(flatten)]
    pub kind: CartanKind,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub relaxed: bool,
}

/// `(d, r, a, b, γ)`.
pub type InvariantTuple = (usize, usize, usize, usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainInvariants {
    pub d: usize,
    pub r: usize,
    pub a: usize,
    pub b: usize,
    pub gamma: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetricDomainSpec {
    pub factors: Vec<CartanDomainSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HartogsSpec {
    #[serde(flatten)]
    pub base: SymmetricDomainSpec,
    pub mu: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormMode {
    /// `N(z, z̄)`
    Diagonal,
    /// `N(z, −z̄)`
    DualDiagonal,
}

impl DomainInvariants {
    /// `2d = r(2b + 2 + a(r − 1))` and `γ = (r − 1)a + b + 2`, in integers.
    pub fn identities_hold(&self) -> bool {
        let (d, r, a, b, g) = (
            self.d as i64,
            self.r as i64,
            self.a as i64,
            self.b as i64,
            self.gamma as i64,
        );
        2 * d == r * (2 * b + 2 + a * (r - 1)) && g == (r - 1) * a + b + 2
    }

    pub fn as_tuple(&self) -> InvariantTuple {
        (self.d, self.r, self.a, self.b, self.gamma)
    }
}

impl CartanDomainSpec {
    pub fn new(kind: CartanKind) -> Result<Self> {
        let spec = CartanDomainSpec {
            kind,
            relaxed: false,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn relaxed(kind: CartanKind) -> Result<Self> {
        let spec = CartanDomainSpec {
            kind,
            relaxed: true,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The unit disc `Ω_I[1, 1]`.
    pub fn disc() -> Self {
        CartanDomainSpec {
            kind: CartanKind::I { n: 1, m: 1 },
            relaxed: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let relaxed = self.relaxed;
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        match self.kind {
            CartanKind::I { n, m } if n == 0 || n > m => {
                bad(format!("type I needs 1 <= n <= m, got n={n}, m={m}"))
            }
            CartanKind::II { n } if n < if relaxed { 2 } else { 5 } => {
                bad(format!("type II needs n >= 5, got {n}"))
            }
            CartanKind::III { n } if n < if relaxed { 1 } else { 2 } => {
                bad(format!("type III needs n >= 2, got {n}"))
            }
            CartanKind::IV { n } if n < if relaxed { 3 } else { 5 } => {
                bad(format!("type IV needs n >= 5, got {n}"))
            }
            _ => Ok(()),
        }
    }

    pub fn invariants(&self) -> Result<DomainInvariants> {
        self.validate()?;
        let inv = |d, r, a, b, gamma| DomainInvariants { d, r, a, b, gamma };
        Ok(match self.kind {
            CartanKind::I { n, m } => inv(n * m, n, if n >= 2 { 2 } else { 0 }, m - n, m + n),
            CartanKind::II { n } => inv(
                n * (n - 1) / 2,
                n / 2,
                4,
                if n % 2 == 0 { 0 } else { 2 },
                2 * n - 2,
            ),
            CartanKind::III { n } => inv(n * (n + 1) / 2, n, 1, 0, n + 1),
            CartanKind::IV { n } => inv(n, 2, n - 2, 0, n),
            CartanKind::V => inv(16, 2, 6, 4, 12),
            CartanKind::VI => inv(27, 3, 8, 0, 18),
        })
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            CartanKind::I { n, m } => n * m,
            CartanKind::II { n } => n * n.saturating_sub(1) / 2,
            CartanKind::III { n } => n * (n + 1) / 2,
            CartanKind::IV { n } => n,
            CartanKind::V => 16,
            CartanKind::VI => 27,
        }
    }

    pub fn rank(&self) -> usize {
        match self.kind {
            CartanKind::I { n, .. } | CartanKind::III { n } => n,
            CartanKind::II { n } => n / 2,
            CartanKind::IV { .. } | CartanKind::V => 2,
            CartanKind::VI => 3,
        }
    }

    pub fn label(&self) -> String {
        match self.kind {
            CartanKind::I { n, m } => format!("I({n},{m})"),
            CartanKind::II { n } => format!("II({n})"),
            CartanKind::III { n } => format!("III({n})"),
            CartanKind::IV { n } => format!("IV({n})"),
            CartanKind::V => "V".into(),
            CartanKind::VI => "VI".into(),
        }
    }

    /// Square matrix for types I–III (as `n × m` rows), from flat coordinates.
    fn matrix<S: Scalar>(&self, z: &[S]) -> Vec<Vec<S>> {
        match self.kind {
            CartanKind::I { n, m } => (0..n).map(|i| z[i * m..(i + 1) * m].to_vec()).collect(),
            CartanKind::II { n } => {
                let mut a = vec![vec![S::zero(); n]; n];
                let mut idx = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        a[i][j] = z[idx].clone();
                        a[j][i] = -z[idx].clone();
                        idx += 1;
                    }
                }
                a
            }
            CartanKind::III { n } => {
                let mut a = vec![vec![S::zero(); n]; n];
                let mut idx = 0;
                for i in 0..n {
                    for j in i..n {
                        a[i][j] = z[idx].clone();
                        a[j][i] = z[idx].clone();
                        idx += 1;
                    }
                }
                a
            }
            _ => unreachable!("matrix realization only for types I-III"),
        }
    }

    /// Polarized generic norm `N(z, w̄)` with `zb = w̄` passed separately.
    pub(crate) fn norm_polarized<S: Scalar>(&self, z: &[S], zb: &[S]) -> S {
        match self.kind {
            CartanKind::I { .. } | CartanKind::II { .. } | CartanKind::III { .. } => {
                let a = self.matrix(z);
                let ab = self.matrix(zb);
                let n = a.len();
                let m: Vec<Vec<S>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|k| {
                                let s = dot(&a[i], &ab[k]);
                                if i == k {
                                    sub(&S::one(), &s)
                                } else {
                                    -s
                                }
                            })
                            .collect()
                    })
                    .collect();
                let d = linalg::det(m);
                if matches!(self.kind, CartanKind::II { .. }) {
                    d.sqrt()
                } else {
                    d
                }
            }
            CartanKind::IV { .. } => {
                let lin = dot(z, zb).scale(C64::new(2.0, 0.0));
                let quad = mul(&dot(z, z), &dot(zb, zb));
                add(&sub(&S::one(), &lin), &quad)
            }
            CartanKind::V => {
                let x = TypeVElement::from_flat(z).embed();
                let y = TypeVElement::from_flat(zb).embed();
                let t = sub(&S::one(), &x.bilinear_pairing(&y));
                add(&t, &x.adjoint().bilinear_pairing(&y.adjoint()))
            }
            CartanKind::VI => {
                let x = JordanElement::from_flat(z);
                let y = JordanElement::from_flat(zb);
                let (xs, ys) = (x.adjoint(), y.adjoint());
                let t = add(
                    &sub(&S::one(), &x.bilinear_pairing(&y)),
                    &xs.bilinear_pairing(&ys),
                );
                let cubic = mul(&xs.bilinear_pairing(&x), &ys.bilinear_pairing(&y));
                sub(&t, &cubic.scale(C64::new(1.0 / 9.0, 0.0)))
            }
        }
    }

    pub fn membership(&self, z: &[C64]) -> bool {
        match self.kind {
            CartanKind::I { .. } | CartanKind::II { .. } | CartanKind::III { .. } => {
                let a = self.matrix(z);
                let rows = a.len();
                let cols = a[0].len();
                let m = DMatrix::from_fn(rows, cols, |i, j| a[i][j]);
                let g = DMatrix::<C64>::identity(rows, rows) - &m * m.adjoint();
                linalg::is_positive_definite(&g)
            }
            CartanKind::IV { .. } => {
                let s: f64 = z.iter().map(|c| c.norm_sqr()).sum();
                s < 1.0 && self.generic_norm(z, NormMode::Diagonal) > 0.0
            }
            CartanKind::V => {
                let x = TypeVElement::from_flat(z).embed();
                let p = x.norm_sqr();
                let q = x.adjoint().norm_sqr();
                1.0 - p + q > 0.0 && 2.0 - p > 0.0
            }
            CartanKind::VI => {
                let x = JordanElement::from_flat(z);
                let p = x.norm_sqr();
                let xs = x.adjoint();
                let q = xs.norm_sqr();
                let cubic = xs.bilinear_pairing(&x) / 3.0;
                1.0 - p + q - cubic.norm_sqr() > 0.0 && 3.0 - 2.0 * p + q > 0.0 && 3.0 - p > 0.0
            }
        }
    }

    pub fn generic_norm(&self, z: &[C64], mode: NormMode) -> f64 {
        self.norm_polarized(z, &conj_for(z, mode)).re
    }
}

/// `z̄` or `−z̄`.
pub(crate) fn conj_for(z: &[C64], mode: NormMode) -> Vec<C64> {
    match mode {
        NormMode::Diagonal => z.iter().map(|c| c.conj()).collect(),
        NormMode::DualDiagonal => z.iter().map(|c| -c.conj()).collect(),
    }
}

impl SymmetricDomainSpec {
    pub fn new(factors: Vec<CartanDomainSpec>) -> Result<Self> {
        let spec = SymmetricDomainSpec { factors };
        spec.validate()?;
        Ok(spec)
    }

    pub fn single(factor: CartanDomainSpec) -> Self {
        SymmetricDomainSpec {
            factors: vec![factor],
        }
    }

    /// `Δ^r` as a product of discs.
    pub fn polydisk(r: usize) -> Self {
        SymmetricDomainSpec {
            factors: vec![CartanDomainSpec::disc(); r],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.factors.is_empty() {
            return Err(Error::InvalidSpec(
                "a domain needs at least one factor".into(),
            ));
        }
        self.factors.iter().try_for_each(CartanDomainSpec::validate)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SymmetricDomainSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(CartanDomainSpec::dim).sum()
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(CartanDomainSpec::rank).sum()
    }

    pub fn label(&self) -> String {
        self.factors
            .iter()
            .map(CartanDomainSpec::label)
            .collect::<Vec<_>>()
            .join("x")
    }

    /// Coordinate ranges of the factors inside the flat point.
    pub fn factor_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.factors
            .iter()
            .map(|f| {
                let r = start..start + f.dim();
                start = r.end;
                r
            })
            .collect()
    }

    pub(crate) fn norm_polarized<S: Scalar>(&self, z: &[S], zb: &[S]) -> S {
        self.factors
            .iter()
            .zip(self.factor_ranges())
            .fold(S::one(), |acc, (f, r)| {
                mul(&acc, &f.norm_polarized(&z[r.clone()], &zb[r]))
            })
    }

    pub fn generic_norm(&self, z: &[C64], mode: NormMode) -> f64 {
        assert_eq!(z.len(), self.dim(), "point has wrong dimension");
        self.norm_polarized(z, &conj_for(z, mode)).re
    }

    pub fn membership(&self, z: &[C64]) -> bool {
        z.len() == self.dim()
            && self
                .factors
                .iter()
                .zip(self.factor_ranges())
                .all(|(f, r)| f.membership(&z[r]))
    }
}

impl HartogsSpec {
    pub fn new(base: SymmetricDomainSpec, mu: f64) -> Result<Self> {
        let spec = HartogsSpec { base, mu };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return Err(Error::InvalidSpec(format!(
                "mu must be positive, got {}",
                self.mu
            )));
        }
        self.base.validate()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: HartogsSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    /// `(z0, z) ∈ M_{Ω,μ}`: `z ∈ Ω` and `|z0|² < N(z, z̄)^μ`.
    pub fn membership(&self, z0: C64, z: &[C64]) -> bool {
        self.base.membership(z)
            && z0.norm_sqr() < self.base.generic_norm(z, NormMode::Diagonal).powf(self.mu)
    }
}

pub fn invariants(spec: &CartanDomainSpec) -> Result<DomainInvariants> {
    spec.invariants()
}

pub fn generic_norm(spec: &SymmetricDomainSpec, z: &[C64], mode: NormMode) -> f64 {
    spec.generic_norm(z, mode)
}

pub fn membership(spec: &SymmetricDomainSpec, z: &[C64]) -> bool {
    spec.membership(z)
}

pub fn hartogs_membership(spec: &HartogsSpec, z0: C64, z: &[C64]) -> bool {
    spec.membership(z0, z)
}
