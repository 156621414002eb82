//! Maximal-rank polydisk embeddings, their Hartogs and dual extensions, and
//! lifts of base automorphisms to Hartogs domains.

use crate::domains::{CartanDomainSpec, CartanKind, NormMode, SymmetricDomainSpec};
use crate::error::{Error, Result};
use crate::jet::Grad;
use crate::potential::{metric_at, AmbientPoint, PotentialKind};
use crate::scalar::{Scalar, C64};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

/// Linear map `Δ^r → Ω`, `z ↦ A z`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolydiskEmbedding {
    pub target: SymmetricDomainSpec,
    pub rank: usize,
    /// `d × r` matrix of the map.
    pub matrix: DMatrix<C64>,
}

/// Coordinates of the image subspace `Π`, a permutation moving them to the
/// front, and the `r × r` frame expressing the embedding in those coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardForm {
    pub retained: Vec<usize>,
    pub permutation: Vec<usize>,
    pub frame: DMatrix<C64>,
    /// `true` when the frame is the identity, i.e. `Π` is reached by a pure
    /// coordinate permutation.
    pub is_permutation: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub samples: usize,
    pub max_error: f64,
    pub max_error_dual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BaseAutomorphism {
    /// `z ↦ e^{iθ} z`, with cocycle `h ≡ 0`.
    Rotation { theta: f64 },
    /// `z_k ↦ (z_k − a_k) / (1 − ā_k z_k)` on each disc factor of `Δ^r`.
    Mobius { a: Vec<C64> },
}

/// `(z0, z) ↦ (e^{μ h(z)} z0, φ(z))`.
#[derive(Clone, Debug, PartialEq)]
pub struct AutomorphismLift {
    pub base: BaseAutomorphism,
    pub mu: f64,
}

/// `(z0, z) ↦ (z0, e^{iθ} z)` on a dual Hartogs domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualRotationLift {
    pub theta: f64,
}

fn strict_upper_index(n: usize, a: usize, b: usize) -> usize {
    (0..a).map(|r| n - 1 - r).sum::<usize>() + (b - a - 1)
}

fn upper_index(n: usize, i: usize) -> usize {
    (0..i).map(|r| n - r).sum()
}

fn factor_matrix(f: &CartanDomainSpec) -> DMatrix<C64> {
    let (d, r) = (f.dim(), f.rank());
    let mut a = DMatrix::zeros(d, r);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    match f.kind {
        CartanKind::I { m, .. } => (0..r).for_each(|k| a[(k * m + k, k)] = one),
        CartanKind::II { n } => {
            (0..r).for_each(|k| a[(strict_upper_index(n, 2 * k, 2 * k + 1), k)] = one)
        }
        CartanKind::III { n } => (0..r).for_each(|k| a[(upper_index(n, k), k)] = one),
        CartanKind::IV { .. } => {
            a[(0, 0)] = one * 0.5;
            a[(0, 1)] = one * 0.5;
            a[(1, 0)] = i * 0.5;
            a[(1, 1)] = -i * 0.5;
        }
        CartanKind::V => {
            let s = FRAC_1_SQRT_2;
            a[(0, 0)] = one * s;
            a[(0, 1)] = -one * s;
            a[(1, 0)] = i * s;
            a[(1, 1)] = i * s;
        }
        CartanKind::VI => (0..3).for_each(|k| a[(k, k)] = one),
    }
    a
}

impl PolydiskEmbedding {
    /// The standard embedding of `Δ^r`, `r = rank`, block by block.
    pub fn standard(target: &SymmetricDomainSpec) -> Self {
        let (d, r) = (target.dim(), target.rank());
        let mut matrix = DMatrix::zeros(d, r);
        let (mut row, mut col) = (0, 0);
        for f in &target.factors {
            let block = factor_matrix(f);
            matrix.view_mut((row, col), block.shape()).copy_from(&block);
            row += f.dim();
            col += f.rank();
        }
        PolydiskEmbedding {
            target: target.clone(),
            rank: r,
            matrix,
        }
    }

    pub fn apply(&self, z: &[C64]) -> Result<Vec<C64>> {
        if z.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: z.len(),
            });
        }
        Ok((0..self.matrix.nrows())
            .map(|row| (0..self.rank).map(|c| self.matrix[(row, c)] * z[c]).sum())
            .collect())
    }

    /// Coordinates touched by the image.
    pub fn retained(&self) -> Vec<usize> {
        (0..self.matrix.nrows())
            .filter(|&row| (0..self.rank).any(|c| self.matrix[(row, c)] != C64::new(0.0, 0.0)))
            .collect()
    }

    pub fn standard_form(&self) -> StandardForm {
        let retained = self.retained();
        let rest = (0..self.matrix.nrows()).filter(|i| !retained.contains(i));
        let permutation: Vec<usize> = retained.iter().copied().chain(rest).collect();
        let frame = DMatrix::from_fn(retained.len(), self.rank, |i, c| {
            self.matrix[(retained[i], c)]
        });
        let is_permutation =
            frame.nrows() == frame.ncols() && frame == DMatrix::identity(self.rank, self.rank);
        StandardForm {
            retained,
            permutation,
            frame,
            is_permutation,
        }
    }

    /// Numerical rank of the embedding matrix (injectivity witness).
    pub fn matrix_rank(&self) -> usize {
        self.matrix.clone().svd(false, false).rank(1e-12)
    }

    /// `(z0, z) ↦ (z0, f(z))` for a point of `M_{Δ^r,μ}`.
    pub fn hartogs_embed(&self, z0: C64, z: &[C64], mu: f64) -> Result<AmbientPoint> {
        let poly = SymmetricDomainSpec::polydisk(self.rank);
        if z.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: z.len(),
            });
        }
        if !(poly.membership(z)
            && z0.norm_sqr() < poly.generic_norm(z, NormMode::Diagonal).powf(mu))
        {
            return Err(Error::OutsideDomain);
        }
        Ok(AmbientPoint::new(z0, self.apply(z)?))
    }

    /// `(z0, z) ↦ (z0, f(z))` on all of `C^{r+1}`.
    pub fn dual_embed(&self, z0: C64, z: &[C64]) -> Result<AmbientPoint> {
        Ok(AmbientPoint::new(z0, self.apply(z)?))
    }

    /// Jacobian of the map between flat coordinates of `source` and `target`
    /// kinds (the fiber, if any, passes through).
    pub fn jacobian(&self, with_fiber: bool) -> DMatrix<C64> {
        let off = usize::from(with_fiber);
        let (d, r) = self.matrix.shape();
        let mut j = DMatrix::zeros(d + off, r + off);
        if with_fiber {
            j[(0, 0)] = C64::new(1.0, 0.0);
        }
        j.view_mut((off, off), (d, r)).copy_from(&self.matrix);
        j
    }
}

pub fn polydisk_embed(spec: &SymmetricDomainSpec, z: &[C64]) -> Result<Vec<C64>> {
    PolydiskEmbedding::standard(spec).apply(z)
}

pub fn standard_permutation(embedding: &PolydiskEmbedding) -> StandardForm {
    embedding.standard_form()
}

/// `|N(f(z), f(z)‾) − ∏(1 − |z_i|²)|` and `|N(f(z), −f(z)‾) − ∏(1 + |z_i|²)|`
/// over the given points of `Δ^r`.
pub fn factorization_check(
    spec: &SymmetricDomainSpec,
    samples: &[Vec<C64>],
    tol: f64,
) -> Result<FactorizationReport> {
    let emb = PolydiskEmbedding::standard(spec);
    let (mut worst, mut worst_dual) = (0.0f64, 0.0f64);
    for z in samples {
        let fz = emb.apply(z)?;
        let diag: f64 = z.iter().map(|c| 1.0 - c.norm_sqr()).product();
        let dual: f64 = z.iter().map(|c| 1.0 + c.norm_sqr()).product();
        worst = worst.max((spec.generic_norm(&fz, NormMode::Diagonal) - diag).abs());
        worst_dual = worst_dual.max((spec.generic_norm(&fz, NormMode::DualDiagonal) - dual).abs());
    }
    Ok(FactorizationReport {
        samples: samples.len(),
        max_error: worst,
        max_error_dual: worst_dual,
        tolerance: tol,
        passed: worst <= tol && worst_dual <= tol,
    })
}

/// `F^T g(F p) conj(F)` for a holomorphic linear map with Jacobian `F`.
pub fn pullback(g: &DMatrix<C64>, jac: &DMatrix<C64>) -> DMatrix<C64> {
    jac.transpose() * g * jac.map(|c| c.conj())
}

/// Largest entry of `(df)^* g_target (df) − g_source` at `point` (source
/// coordinates) relative to the largest entry of `g_source`, at least 1, for
/// the standard embedding of the target's base.
pub fn pullback_defect(
    source: &PotentialKind,
    target: &PotentialKind,
    point: &AmbientPoint,
) -> Result<f64> {
    let emb = PolydiskEmbedding::standard(&target.base_spec());
    let image = AmbientPoint::new(point.z0, emb.apply(&point.z)?);
    let g_target = metric_at(target, &image)?.g;
    let g_source = metric_at(source, point)?.g;
    let pulled = pullback(&g_target, &emb.jacobian(target.has_fiber()));
    Ok(scaled_defect(&pulled, &g_source))
}

/// `max |a − b|` over entries, divided by `max(max |b|, 1)`.
fn scaled_defect(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    let scale = b.iter().map(|c| c.norm()).fold(1.0, f64::max);
    (a - b).iter().map(|c| c.norm()).fold(0.0, f64::max) / scale
}

impl BaseAutomorphism {
    fn apply_generic<S: Scalar>(&self, z: &[S]) -> Vec<S> {
        match self {
            BaseAutomorphism::Rotation { theta } => {
                let u = C64::from_polar(1.0, *theta);
                z.iter().map(|x| x.scale(u)).collect()
            }
            BaseAutomorphism::Mobius { a } => z
                .iter()
                .zip(a)
                .map(|(x, &ak)| {
                    let num = x.sub_ref(&S::from_c64(ak));
                    let den = S::one().sub_ref(&x.scale(ak.conj()));
                    num.div_ref(&den)
                })
                .collect(),
        }
    }

    /// `h(z)` with `N(φ(z)) = N(z) |e^{h(z)}|²`.
    fn cocycle_generic<S: Scalar>(&self, z: &[S]) -> S {
        match self {
            BaseAutomorphism::Rotation { .. } => S::zero(),
            BaseAutomorphism::Mobius { a } => z.iter().zip(a).fold(S::zero(), |acc, (x, &ak)| {
                let c = S::from_f64(0.5 * (1.0 - ak.norm_sqr()).ln());
                let l = S::one().sub_ref(&x.scale(ak.conj())).ln();
                acc.add_ref(&c.sub_ref(&l))
            }),
        }
    }

    pub fn apply(&self, z: &[C64]) -> Vec<C64> {
        self.apply_generic(z)
    }

    pub fn cocycle(&self, z: &[C64]) -> C64 {
        self.cocycle_generic(z)
    }
}

impl AutomorphismLift {
    fn check_dim(&self, z_len: usize) -> Result<()> {
        if let BaseAutomorphism::Mobius { a } = &self.base {
            if a.len() != z_len {
                return Err(Error::RankMismatch {
                    expected: a.len(),
                    got: z_len,
                });
            }
        }
        Ok(())
    }

    fn apply_generic<S: Scalar>(&self, z0: &S, z: &[S]) -> (S, Vec<S>) {
        let h = self.base.cocycle_generic(z);
        let factor = h.scale(C64::new(self.mu, 0.0)).exp();
        (z0.mul_ref(&factor), self.base.apply_generic(z))
    }

    pub fn apply(&self, p: &AmbientPoint) -> Result<AmbientPoint> {
        self.check_dim(p.z.len())?;
        let (z0, z) = self.apply_generic(&p.z0, &p.z);
        Ok(AmbientPoint::new(z0, z))
    }

    /// Holomorphic Jacobian in flat coordinates `(z0, z)`.
    pub fn jacobian(&self, p: &AmbientPoint) -> Result<DMatrix<C64>> {
        self.check_dim(p.z.len())?;
        let n = p.z.len() + 1;
        let seed = |i: usize, v: C64| Grad::seeded(n, v, i, C64::new(1.0, 0.0));
        let z0 = seed(0, p.z0);
        let z: Vec<Grad> =
            p.z.iter()
                .enumerate()
                .map(|(i, &v)| seed(i + 1, v))
                .collect();
        let (w0, w) = self.apply_generic(&z0, &z);
        let rows: Vec<Grad> = std::iter::once(w0).chain(w).collect();
        Ok(DMatrix::from_fn(n, n, |i, j| rows[i].partial(j)))
    }

    /// Largest entry of `(dF)^* g(F p) (dF) − g(p)` relative to the largest
    /// entry of `g(p)` (at least 1), for a Hartogs kind.
    pub fn pullback_defect(&self, kind: &PotentialKind, p: &AmbientPoint) -> Result<f64> {
        let image = self.apply(p)?;
        let g_image = metric_at(kind, &image)?.g;
        let g = metric_at(kind, p)?.g;
        let pulled = pullback(&g_image, &self.jacobian(p)?);
        Ok(scaled_defect(&pulled, &g))
    }
}

/// Lift of the rotation `z ↦ e^{iθ} z`; the cocycle vanishes.
pub fn lift_rotation(theta: f64, mu: f64) -> AutomorphismLift {
    AutomorphismLift {
        base: BaseAutomorphism::Rotation { theta },
        mu,
    }
}

/// Lift of the per-factor disc automorphism `φ_a` on `Δ^r`.
pub fn lift_mobius(a: Vec<C64>, mu: f64) -> Result<AutomorphismLift> {
    if let Some(bad) = a.iter().find(|x| x.norm() >= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "Möbius parameter {bad} must lie in the unit disc"
        )));
    }
    Ok(AutomorphismLift {
        base: BaseAutomorphism::Mobius { a },
        mu,
    })
}

pub fn lift_dual_rotation(theta: f64) -> DualRotationLift {
    DualRotationLift { theta }
}

impl DualRotationLift {
    pub fn apply(&self, p: &AmbientPoint) -> AmbientPoint {
        let u = C64::from_polar(1.0, self.theta);
        AmbientPoint::new(p.z0, p.z.iter().map(|x| x * u).collect())
    }

    pub fn compose(&self, other: &DualRotationLift) -> DualRotationLift {
        DualRotationLift {
            theta: self.theta + other.theta,
        }
    }
}
