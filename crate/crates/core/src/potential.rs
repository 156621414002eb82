//! Kähler potentials and their exact derivatives.
//!
//! A potential `φ(w, w̄)` is evaluated in polarized form `φ(w, wb)` with `wb`
//! an independent argument. Seeding `w` and `wb` with separate jet variables
//! makes the Taylor coefficients the Wirtinger derivatives themselves:
//! `g_{jk̄} = ∂_{w_j} ∂_{wb_k} φ`. The real-coordinate route (seeding `x_j, y_j`
//! and assembling from the real Hessian) is available as an independent check.
//!
//! Flat coordinates of a point are `(z0, z_1, …, z_d)` for kinds with a fiber
//! and `(z_1, …, z_d)` for the base kinds.

use crate::domains::{HartogsSpec, SymmetricDomainSpec};
use crate::error::{Error, Result};
use crate::jet::{Directional, Grad, Jet, JetLayout, Mixed};
use crate::scalar::{mul, Scalar, C64};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Log arguments closer to zero than this are treated as outside the domain.
pub const LOG_ARGUMENT_FLOOR: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PotentialKind {
    /// `−log(N(z, z̄)^μ − |z0|²)` on `M_{Ω,μ}`.
    Hartogs(HartogsSpec),
    /// `log(N(z, −z̄)^μ + |z0|²)` on `C^{d+1}`.
    DualHartogs(HartogsSpec),
    /// `−log N(z, z̄)` on `Ω`.
    Base(SymmetricDomainSpec),
    /// `log N(z, −z̄)` on `C^d`.
    DualBase(SymmetricDomainSpec),
    /// Hartogs domain over `Δ^r`.
    Polydisk { r: usize, mu: f64 },
    /// Dual Hartogs domain over `Δ^r`.
    DualPolydisk { r: usize, mu: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct AmbientPoint {
    pub z0: C64,
    pub z: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMetric {
    pub g: DMatrix<C64>,
}

impl PotentialKind {
    pub fn hartogs(base: SymmetricDomainSpec, mu: f64) -> Self {
        PotentialKind::Hartogs(HartogsSpec { base, mu })
    }

    pub fn dual_hartogs(base: SymmetricDomainSpec, mu: f64) -> Self {
        PotentialKind::DualHartogs(HartogsSpec { base, mu })
    }

    pub fn base_spec(&self) -> SymmetricDomainSpec {
        match self {
            PotentialKind::Hartogs(h) | PotentialKind::DualHartogs(h) => h.base.clone(),
            PotentialKind::Base(s) | PotentialKind::DualBase(s) => s.clone(),
            PotentialKind::Polydisk { r, .. } | PotentialKind::DualPolydisk { r, .. } => {
                SymmetricDomainSpec::polydisk(*r)
            }
        }
    }

    pub fn mu(&self) -> f64 {
        match self {
            PotentialKind::Hartogs(h) | PotentialKind::DualHartogs(h) => h.mu,
            PotentialKind::Base(_) | PotentialKind::DualBase(_) => 1.0,
            PotentialKind::Polydisk { mu, .. } | PotentialKind::DualPolydisk { mu, .. } => *mu,
        }
    }

    pub fn has_fiber(&self) -> bool {
        !matches!(self, PotentialKind::Base(_) | PotentialKind::DualBase(_))
    }

    pub fn is_dual(&self) -> bool {
        matches!(
            self,
            PotentialKind::DualHartogs(_)
                | PotentialKind::DualBase(_)
                | PotentialKind::DualPolydisk { .. }
        )
    }

    /// Number of complex coordinates.
    pub fn dim(&self) -> usize {
        self.base_spec().dim() + usize::from(self.has_fiber())
    }

    /// The base domain with its own fiber, as the matching Hartogs kind.
    pub fn hartogs_spec(&self) -> Option<HartogsSpec> {
        self.has_fiber().then(|| HartogsSpec {
            base: self.base_spec(),
            mu: self.mu(),
        })
    }

    pub fn label(&self) -> String {
        let base = self.base_spec().label();
        match self {
            PotentialKind::Hartogs(h) => format!("hartogs[{base}, mu={}]", h.mu),
            PotentialKind::DualHartogs(h) => format!("dual_hartogs[{base}, mu={}]", h.mu),
            PotentialKind::Base(_) => format!("base[{base}]"),
            PotentialKind::DualBase(_) => format!("dual_base[{base}]"),
            PotentialKind::Polydisk { r, mu } => format!("polydisk[{r}, mu={mu}]"),
            PotentialKind::DualPolydisk { r, mu } => format!("dual_polydisk[{r}, mu={mu}]"),
        }
    }

    /// Whether the flat point lies where the potential is defined.
    pub fn contains(&self, w: &[C64]) -> bool {
        if w.len() != self.dim() {
            return false;
        }
        if self.is_dual() {
            return true;
        }
        match self.hartogs_spec() {
            Some(h) => h.membership(w[0], &w[1..]),
            None => self.base_spec().membership(w),
        }
    }

    /// Polarized potential `φ(w, wb)` over any scalar ring.
    pub fn eval<S: Scalar>(&self, w: &[S], wb: &[S]) -> Result<S> {
        assert_eq!(
            w.len(),
            self.dim(),
            "point has wrong dimension for {}",
            self.label()
        );
        assert_eq!(wb.len(), w.len());
        let base = self.base_spec();
        let fiber = usize::from(self.has_fiber());
        let (z, zb) = (&w[fiber..], &wb[fiber..]);
        let norm = if self.is_dual() {
            let neg: Vec<S> = zb.iter().map(|x| -x.clone()).collect();
            base.norm_polarized(z, &neg)
        } else {
            base.norm_polarized(z, zb)
        };
        check_log_argument(&norm)?;
        if !self.has_fiber() {
            let l = norm.ln();
            return Ok(if self.is_dual() { l } else { -l });
        }
        let fiber_term = mul(&w[0], &wb[0]);
        let scaled = norm.powf(self.mu());
        if self.is_dual() {
            let arg = scaled + fiber_term;
            check_log_argument(&arg)?;
            Ok(arg.ln())
        } else {
            let arg = scaled - fiber_term;
            check_log_argument(&arg)?;
            Ok(-arg.ln())
        }
    }
}

fn check_log_argument<S: Scalar>(x: &S) -> Result<()> {
    let v = x.value().re;
    if v > LOG_ARGUMENT_FLOOR {
        Ok(())
    } else {
        Err(Error::EvaluationOutsideDomain(v))
    }
}

impl AmbientPoint {
    pub fn new(z0: C64, z: Vec<C64>) -> Self {
        AmbientPoint { z0, z }
    }

    pub fn origin(kind: &PotentialKind) -> Self {
        AmbientPoint {
            z0: C64::new(0.0, 0.0),
            z: vec![C64::new(0.0, 0.0); kind.base_spec().dim()],
        }
    }

    /// Flat complex coordinates for `kind`; the fiber is dropped for base kinds.
    pub fn coords(&self, kind: &PotentialKind) -> Vec<C64> {
        if kind.has_fiber() {
            std::iter::once(self.z0)
                .chain(self.z.iter().copied())
                .collect()
        } else {
            self.z.clone()
        }
    }

    pub fn from_coords(kind: &PotentialKind, w: &[C64]) -> Self {
        if kind.has_fiber() {
            AmbientPoint::new(w[0], w[1..].to_vec())
        } else {
            AmbientPoint::new(C64::new(0.0, 0.0), w.to_vec())
        }
    }

    /// `(x_0, y_0, x_1, y_1, …)` with `z_j = x_j + i y_j`, fiber first.
    pub fn to_real(&self) -> Vec<f64> {
        std::iter::once(self.z0)
            .chain(self.z.iter().copied())
            .flat_map(|c| [c.re, c.im])
            .collect()
    }

    pub fn from_real(x: &[f64]) -> Self {
        assert!(
            x.len() >= 2 && x.len().is_multiple_of(2),
            "real view needs pairs"
        );
        let mut cs = x.chunks(2).map(|p| C64::new(p[0], p[1]));
        let z0 = cs.next().expect("non-empty");
        AmbientPoint::new(z0, cs.collect())
    }
}

impl HermitianMetric {
    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    /// `g(ξ, η̄) = Σ g_{jk̄} ξ^j conj(η^k)`.
    pub fn hermitian(&self, xi: &[C64], eta: &[C64]) -> C64 {
        let n = self.dim();
        let mut s = C64::new(0.0, 0.0);
        for j in 0..n {
            for k in 0..n {
                s += self.g[(j, k)] * xi[j] * eta[k].conj();
            }
        }
        s
    }

    /// Riemannian inner product `G(X, Y) = 2 Re g(ξ, η̄)` of real vectors given by
    /// their `(1,0)`-parts.
    pub fn real_inner(&self, xi: &[C64], eta: &[C64]) -> f64 {
        2.0 * self.hermitian(xi, eta).re
    }

    pub fn is_positive_definite(&self) -> bool {
        crate::linalg::is_positive_definite(&self.g)
    }

    pub fn max_hermitian_defect(&self) -> f64 {
        let n = self.dim();
        let mut m: f64 = 0.0;
        for j in 0..n {
            for k in 0..n {
                m = m.max((self.g[(j, k)] - self.g[(k, j)].conj()).norm());
            }
        }
        m
    }
}

type G2 = Mixed;

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

fn checked_coords(kind: &PotentialKind, point: &AmbientPoint) -> Result<Vec<C64>> {
    let w = point.coords(kind);
    if w.len() != kind.dim() {
        return Err(Error::InvalidParameter(format!(
            "point has {} coordinates, {} expects {}",
            w.len(),
            kind.label(),
            kind.dim()
        )));
    }
    Ok(w)
}

fn conj_all(w: &[C64]) -> Vec<C64> {
    w.iter().map(|c| c.conj()).collect()
}

/// `w` seeded in the outer gradient, `w̄` in the inner one.
fn mixed_seeds(w: &[C64]) -> (Vec<G2>, Vec<G2>) {
    let n = w.len();
    let z = (0..n).map(|j| Mixed::seed_z(n, w[j], j)).collect();
    let zb = (0..n).map(|k| Mixed::seed_zb(n, w[k].conj(), k)).collect();
    (z, zb)
}

fn hessian_block(phi: &G2, n: usize) -> DMatrix<C64> {
    DMatrix::from_fn(n, n, |j, k| phi.mixed(j, k))
}

fn hermitian_part(m: DMatrix<C64>) -> DMatrix<C64> {
    (&m + m.adjoint()).scale(0.5)
}

pub fn potential(kind: &PotentialKind, point: &AmbientPoint) -> Result<f64> {
    let w = checked_coords(kind, point)?;
    Ok(kind.eval(&w, &conj_all(&w))?.re)
}

/// `g_{jk̄} = ∂²φ / ∂w_j ∂w̄_k`.
pub fn metric_at(kind: &PotentialKind, point: &AmbientPoint) -> Result<HermitianMetric> {
    metric_of_coords(kind, &checked_coords(kind, point)?)
}

pub(crate) fn metric_of_coords(kind: &PotentialKind, w: &[C64]) -> Result<HermitianMetric> {
    let (z, zb) = mixed_seeds(w);
    let phi = kind.eval(&z, &zb)?;
    Ok(HermitianMetric {
        g: hermitian_part(hessian_block(&phi, w.len())),
    })
}

/// `∂g_{jk̄} / ∂w_l` as a matrix in `(j, k)`.
pub fn metric_derivative_at(
    kind: &PotentialKind,
    point: &AmbientPoint,
    l: usize,
) -> Result<DMatrix<C64>> {
    metric_derivative_of_coords(kind, &checked_coords(kind, point)?, l)
}

pub(crate) fn metric_derivative_of_coords(
    kind: &PotentialKind,
    w: &[C64],
    l: usize,
) -> Result<DMatrix<C64>> {
    let n = w.len();
    assert!(l < n, "direction {l} out of range");
    let (z, zb) = mixed_seeds(w);
    let z: Vec<Grad<G2>> = z
        .into_iter()
        .enumerate()
        .map(|(j, x)| {
            let eps = if j == l { G2::one() } else { G2::zero() };
            Grad::from_parts(x, vec![eps])
        })
        .collect();
    let zb: Vec<Grad<G2>> = zb.into_iter().map(Grad::constant).collect();
    let phi = kind.eval(&z, &zb)?;
    Ok(hessian_block(&phi.partial(0), n))
}

/// `∂²g_{ij̄} / ∂w_k ∂w̄_l` as a matrix in `(i, j)`.
pub fn metric_second_derivative_at(
    kind: &PotentialKind,
    point: &AmbientPoint,
    k: usize,
    l: usize,
) -> Result<DMatrix<C64>> {
    let w = checked_coords(kind, point)?;
    let n = w.len();
    assert!(k < n && l < n, "direction out of range");
    let (z, zb) = mixed_seeds(&w);
    type G4 = Grad<Grad<G2>>;
    let z: Vec<G4> = z
        .into_iter()
        .enumerate()
        .map(|(j, x)| {
            let eps = if j == k { G2::one() } else { G2::zero() };
            Grad::constant(Grad::from_parts(x, vec![eps]))
        })
        .collect();
    let zb: Vec<G4> = zb
        .into_iter()
        .enumerate()
        .map(|(j, x)| {
            let eps = if j == l {
                Grad::constant(G2::one())
            } else {
                Grad::constant(G2::zero())
            };
            Grad::from_parts(Grad::constant(x), vec![eps])
        })
        .collect();
    let phi = kind.eval(&z, &zb)?;
    Ok(hessian_block(&phi.partial(0).partial(0), n))
}

/// Metric together with `h_k = Σ_{l,j} v^l v^j ∂g_{jk̄}/∂w_l = ∂²_ε ∂_{w̄_k} φ(w + ε v)`,
/// the quantity the geodesic equation needs.
pub(crate) fn metric_and_contraction(
    kind: &PotentialKind,
    w: &[C64],
    v: &[C64],
) -> Result<(HermitianMetric, Vec<C64>)> {
    let metric = metric_of_coords(kind, w)?;
    let n = w.len();
    let z: Vec<Directional> = (0..n).map(|j| Directional::along(w[j], v[j])).collect();
    let zb: Vec<Directional> = (0..n)
        .map(|k| Directional::seed_zb(n, w[k].conj(), k))
        .collect();
    let phi = kind.eval(&z, &zb)?;
    let h = (0..n).map(|k| phi.derivative_zb(2, k)).collect();
    Ok((metric, h))
}

/// Jet of `φ` in the real coordinates listed in `vars` (index `2j` is `x_j`,
/// `2j + 1` is `y_j`, in flat coordinates), truncated at total `order`.
pub fn potential_real_jet(
    kind: &PotentialKind,
    point: &AmbientPoint,
    vars: &[usize],
    order: usize,
) -> Result<Jet> {
    let w = checked_coords(kind, point)?;
    let layout = JetLayout::total_degree(vars.len(), order);
    let i = C64::new(0.0, 1.0);
    let mut z: Vec<Jet> = w.iter().map(|&c| Jet::constant(c)).collect();
    let mut zb: Vec<Jet> = w.iter().map(|&c| Jet::constant(c.conj())).collect();
    for (slot, &var) in vars.iter().enumerate() {
        let j = var / 2;
        assert!(j < w.len(), "real variable {var} out of range");
        let dir = if var % 2 == 0 { one() } else { i };
        let dz = Jet::seeded(layout, C64::new(0.0, 0.0), slot, dir);
        let dzb = Jet::seeded(layout, C64::new(0.0, 0.0), slot, dir.conj());
        z[j] = z[j].add_ref(&dz);
        zb[j] = zb[j].add_ref(&dzb);
    }
    kind.eval(&z, &zb)
}

/// `g_{jk̄}` assembled from the real Hessian by
/// `¼[(φ_{x_j x_k} + φ_{y_j y_k}) + i(φ_{x_j y_k} − φ_{y_j x_k})]`.
pub fn metric_entry_real_hessian(
    kind: &PotentialKind,
    point: &AmbientPoint,
    j: usize,
    k: usize,
) -> Result<C64> {
    let mut vars = vec![2 * j, 2 * j + 1];
    if k != j {
        vars.extend([2 * k, 2 * k + 1]);
    }
    let jet = potential_real_jet(kind, point, &vars, 2)?;
    let (xj, yj) = (0, 1);
    let (xk, yk) = if k != j { (2, 3) } else { (0, 1) };
    let d2 = |a: usize, b: usize| {
        let mut e = vec![0u8; vars.len()];
        e[a] += 1;
        e[b] += 1;
        jet.derivative(&e).re
    };
    let re = d2(xj, xk) + d2(yj, yk);
    let im = d2(xj, yk) - d2(yj, xk);
    Ok(C64::new(re, im) * 0.25)
}

pub fn metric_at_real(kind: &PotentialKind, point: &AmbientPoint) -> Result<HermitianMetric> {
    let n = kind.dim();
    let mut g = DMatrix::zeros(n, n);
    for j in 0..n {
        for k in j..n {
            let v = metric_entry_real_hessian(kind, point, j, k)?;
            g[(j, k)] = v;
            g[(k, j)] = v.conj();
        }
    }
    Ok(HermitianMetric { g })
}
