//! Christoffel symbols, curvature and geodesics of a Kähler potential.
//!
//! Conventions: `g^{tk̄}` is the inverse metric with `Σ_k g^{tk̄} g_{jk̄} = δ_tj`,
//! `Γ^t_{lj} = Σ_k g^{tk̄} ∂_l g_{jk̄}`, and
//! `R_{ij̄kl̄} = −∂_k ∂̄_l g_{ij̄} + Σ g^{pq̄} ∂_k g_{iq̄} ∂̄_l g_{pj̄}`.
//! The Riemannian metric is `G = 2 Re g`, so the unit disc with
//! `g = (1 − |z|²)^{-2}` has Gaussian curvature −2, while the holomorphic
//! sectional curvature `2 R(ξ,ξ̄,ξ,ξ̄) / g(ξ,ξ̄)²` of the disc is −4.

use crate::error::{Error, Result};
use crate::linalg;
use crate::potential::{
    metric_and_contraction, metric_derivative_of_coords, metric_of_coords,
    metric_second_derivative_at, AmbientPoint, HermitianMetric, PotentialKind,
};
use crate::scalar::C64;
use nalgebra::DMatrix;
use std::fmt::Write as _;
use std::path::Path;

/// `Γ^t_{lj}` for every `t, j` and the `l` in `directions`.
#[derive(Clone, Debug)]
pub struct ChristoffelTensor {
    pub dim: usize,
    pub directions: Vec<usize>,
    // one matrix per direction l, indexed (j, t)
    blocks: Vec<DMatrix<C64>>,
}

/// `R_{ij̄kl̄}` for all four indices in `indices`; other entries are not stored.
#[derive(Clone, Debug)]
pub struct KahlerCurvature {
    pub indices: Vec<usize>,
    values: Vec<C64>,
}

/// Two real tangent vectors in the frame `(∂x_0, ∂y_0, ∂x_1, ∂y_1, …)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionalPlane {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct GeodesicTrajectory {
    pub times: Vec<f64>,
    pub positions: Vec<Vec<C64>>,
    pub velocities: Vec<Vec<C64>>,
    /// `g(γ', γ̄')` at each recorded time.
    pub energies: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TotallyGeodesicReport {
    pub samples: usize,
    pub max_violation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl ChristoffelTensor {
    pub fn get(&self, t: usize, l: usize, j: usize) -> C64 {
        let pos = self
            .directions
            .iter()
            .position(|&d| d == l)
            .unwrap_or_else(|| panic!("direction {l} was not computed"));
        self.blocks[pos][(j, t)]
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks
            .iter()
            .flat_map(|b| b.iter())
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// `Γ^t(v, v) = Σ_{l,j} Γ^t_{lj} v^l v^j`, for a tensor with all directions.
    pub fn contract(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(
            self.directions.len(),
            self.dim,
            "contraction needs every direction"
        );
        let mut out = vec![C64::new(0.0, 0.0); self.dim];
        for (&l, block) in self.directions.iter().zip(&self.blocks) {
            for j in 0..self.dim {
                let w = v[l] * v[j];
                for (t, o) in out.iter_mut().enumerate() {
                    *o += block[(j, t)] * w;
                }
            }
        }
        out
    }
}

impl KahlerCurvature {
    fn pos(&self, i: usize) -> usize {
        self.indices
            .iter()
            .position(|&d| d == i)
            .unwrap_or_else(|| panic!("index {i} was not computed"))
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        let m = self.indices.len();
        let (i, j, k, l) = (self.pos(i), self.pos(j), self.pos(k), self.pos(l));
        self.values[((i * m + j) * m + k) * m + l]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest defect of `R_{ij̄kl̄} = R_{kj̄il̄}` and `R_{ij̄kl̄} = conj(R_{jīlk̄})`,
    /// relative to the largest entry, at least 1.
    pub fn max_symmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for &i in &self.indices {
            for &j in &self.indices {
                for &k in &self.indices {
                    for &l in &self.indices {
                        let r = self.get(i, j, k, l);
                        worst = worst.max((r - self.get(k, j, i, l)).norm());
                        worst = worst.max((r - self.get(j, i, l, k).conj()).norm());
                    }
                }
            }
        }
        worst / self.max_abs().max(1.0)
    }
}

impl SectionalPlane {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        SectionalPlane { x, y }
    }

    /// Plane spanned by two real coordinate directions.
    pub fn coordinate(dim: usize, a: usize, b: usize) -> Self {
        let unit = |i: usize| {
            (0..2 * dim)
                .map(|k| if k == i { 1.0 } else { 0.0 })
                .collect()
        };
        SectionalPlane {
            x: unit(a),
            y: unit(b),
        }
    }
}

/// `(1,0)`-part `ξ_j = X_{x_j} + i X_{y_j}` of a real tangent vector.
pub fn holomorphic_part(x: &[f64]) -> Vec<C64> {
    x.chunks(2).map(|p| C64::new(p[0], p[1])).collect()
}

/// Inverse metric with `g_inv[(k, t)] = g^{tk̄}`.
fn inverse(metric: &HermitianMetric) -> Result<DMatrix<C64>> {
    linalg::inverse_hermitian(&metric.g)
}

fn coords(kind: &PotentialKind, point: &AmbientPoint) -> Result<Vec<C64>> {
    let w = point.coords(kind);
    if w.len() != kind.dim() {
        return Err(Error::InvalidParameter(format!(
            "point does not match {}",
            kind.label()
        )));
    }
    Ok(w)
}

pub fn christoffel_at(kind: &PotentialKind, point: &AmbientPoint) -> Result<ChristoffelTensor> {
    let all: Vec<usize> = (0..kind.dim()).collect();
    christoffel_in_directions(kind, point, &all)
}

/// Christoffel symbols restricted to the directions `l ∈ directions`;
/// `Γ^t_{lj}` is symmetrized over `l, j` whenever both lie in `directions`.
pub fn christoffel_in_directions(
    kind: &PotentialKind,
    point: &AmbientPoint,
    directions: &[usize],
) -> Result<ChristoffelTensor> {
    let w = coords(kind, point)?;
    let n = w.len();
    let metric = metric_of_coords(kind, &w)?;
    let inv = inverse(&metric)?;
    let mut blocks = directions
        .iter()
        .map(|&l| Ok(metric_derivative_of_coords(kind, &w, l)? * &inv))
        .collect::<Result<Vec<_>>>()?;
    for (a, &l) in directions.iter().enumerate() {
        for (b, &j) in directions.iter().enumerate().skip(a + 1) {
            for t in 0..n {
                let avg = (blocks[a][(j, t)] + blocks[b][(l, t)]) * 0.5;
                blocks[a][(j, t)] = avg;
                blocks[b][(l, t)] = avg;
            }
        }
    }
    Ok(ChristoffelTensor {
        dim: n,
        directions: directions.to_vec(),
        blocks,
    })
}

pub fn curvature_at(kind: &PotentialKind, point: &AmbientPoint) -> Result<KahlerCurvature> {
    let all: Vec<usize> = (0..kind.dim()).collect();
    curvature_on(kind, point, &all)
}

/// Kähler curvature with all four indices in `indices` (the contraction still
/// runs over every coordinate).
pub fn curvature_on(
    kind: &PotentialKind,
    point: &AmbientPoint,
    indices: &[usize],
) -> Result<KahlerCurvature> {
    let w = coords(kind, point)?;
    let metric = metric_of_coords(kind, &w)?;
    let inv = inverse(&metric)?;
    let derivs = indices
        .iter()
        .map(|&k| metric_derivative_of_coords(kind, &w, k))
        .collect::<Result<Vec<_>>>()?;
    let m = indices.len();
    let mut values = vec![C64::new(0.0, 0.0); m * m * m * m];
    for (kp, &k) in indices.iter().enumerate() {
        let left = &derivs[kp] * &inv;
        for (lp, &l) in indices.iter().enumerate() {
            let quad = &left * derivs[lp].adjoint();
            let second = metric_second_derivative_at(kind, point, k, l)?;
            for (ip, &i) in indices.iter().enumerate() {
                for (jp, &j) in indices.iter().enumerate() {
                    values[((ip * m + jp) * m + kp) * m + lp] = quad[(i, j)] - second[(i, j)];
                }
            }
        }
    }
    Ok(KahlerCurvature {
        indices: indices.to_vec(),
        values,
    })
}

fn support(vs: &[&[C64]]) -> Vec<usize> {
    let n = vs[0].len();
    (0..n)
        .filter(|&i| vs.iter().any(|v| v[i] != C64::new(0.0, 0.0)))
        .collect()
}

/// Riemannian sectional curvature `R(X,Y,Y,X) / (|X|²|Y|² − ⟨X,Y⟩²)`.
pub fn sectional_curvature(
    kind: &PotentialKind,
    point: &AmbientPoint,
    plane: &SectionalPlane,
) -> Result<f64> {
    let n = kind.dim();
    if plane.x.len() != 2 * n || plane.y.len() != 2 * n {
        return Err(Error::InvalidParameter(format!(
            "plane vectors need {} real components",
            2 * n
        )));
    }
    let xi = holomorphic_part(&plane.x);
    let eta = holomorphic_part(&plane.y);
    let metric = metric_at(kind, point)?;
    let (xx, yy, xy) = (
        metric.real_inner(&xi, &xi),
        metric.real_inner(&eta, &eta),
        metric.real_inner(&xi, &eta),
    );
    let gram = xx * yy - xy * xy;
    if !(gram > 1e-12 * (xx * yy).abs()) {
        return Err(Error::DegeneratePlane);
    }
    let idx = support(&[&xi, &eta]);
    let r = curvature_on(kind, point, &idx)?;
    let a = |i: usize, j: usize| xi[i] * eta[j].conj() - eta[i] * xi[j].conj();
    let mut num = C64::new(0.0, 0.0);
    for &i in &idx {
        for &j in &idx {
            for &k in &idx {
                for &l in &idx {
                    num += r.get(i, j, k, l) * a(i, j) * a(l, k).conj();
                }
            }
        }
    }
    Ok(num.re / gram)
}

/// `2 R(ξ, ξ̄, ξ, ξ̄) / g(ξ, ξ̄)²` for a `(1,0)`-vector `ξ`.
pub fn holomorphic_sectional_curvature(
    kind: &PotentialKind,
    point: &AmbientPoint,
    xi: &[C64],
) -> Result<f64> {
    let metric = metric_at(kind, point)?;
    let norm = metric.hermitian(xi, xi).re;
    if !(norm > 0.0) {
        return Err(Error::DegeneratePlane);
    }
    let idx = support(&[xi]);
    let r = curvature_on(kind, point, &idx)?;
    let mut num = C64::new(0.0, 0.0);
    for &i in &idx {
        for &j in &idx {
            for &k in &idx {
                for &l in &idx {
                    num += r.get(i, j, k, l) * xi[i] * xi[j].conj() * xi[k] * xi[l].conj();
                }
            }
        }
    }
    Ok(2.0 * num.re / (norm * norm))
}

fn metric_at(kind: &PotentialKind, point: &AmbientPoint) -> Result<HermitianMetric> {
    metric_of_coords(kind, &coords(kind, point)?)
}

/// Acceleration `−Γ(v, v)` and the metric at `w`.
fn acceleration(kind: &PotentialKind, w: &[C64], v: &[C64]) -> Result<(Vec<C64>, HermitianMetric)> {
    let (metric, h) = metric_and_contraction(kind, w, v)?;
    // Σ_k g^{tk̄} h_k solves conj(g) x = h
    let gt = metric.g.map(|c| c.conj());
    let x = linalg::solve_hermitian(&gt, &h)?;
    Ok((x.into_iter().map(|c| -c).collect(), metric))
}

fn axpy(a: &[C64], s: f64, b: &[C64]) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x + y * s).collect()
}

/// Integrates `ẅ^t + Γ^t_{lj} ẇ^l ẇ^j = 0` with classical RK4.
pub fn geodesic_integrate(
    kind: &PotentialKind,
    start: &AmbientPoint,
    velocity: &[C64],
    t_end: f64,
    step: f64,
) -> Result<GeodesicTrajectory> {
    if !(step > 0.0) || !(t_end >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need step > 0 and t_end >= 0, got {step}, {t_end}"
        )));
    }
    let mut w = coords(kind, start)?;
    if velocity.len() != w.len() {
        return Err(Error::InvalidParameter(format!(
            "velocity has {} components, expected {}",
            velocity.len(),
            w.len()
        )));
    }
    if !kind.contains(&w) {
        return Err(Error::OutsideDomain);
    }
    let mut v = velocity.to_vec();
    let steps = (t_end / step).round() as usize;
    let mut traj = GeodesicTrajectory {
        times: Vec::with_capacity(steps + 1),
        positions: Vec::with_capacity(steps + 1),
        velocities: Vec::with_capacity(steps + 1),
        energies: Vec::with_capacity(steps + 1),
    };
    let outside = |t: f64, w: &[C64]| {
        if kind.contains(w) {
            Ok(())
        } else {
            Err(Error::ExitedDomain(t))
        }
    };
    for s in 0..=steps {
        let t = s as f64 * step;
        let (a1, metric) = acceleration(kind, &w, &v)?;
        traj.times.push(t);
        traj.energies.push(metric.hermitian(&v, &v).re);
        traj.positions.push(w.clone());
        traj.velocities.push(v.clone());
        if s == steps {
            break;
        }
        let h = step;
        let w2 = axpy(&w, h / 2.0, &v);
        let v2 = axpy(&v, h / 2.0, &a1);
        outside(t + h / 2.0, &w2)?;
        let (a2, _) = acceleration(kind, &w2, &v2)?;
        let w3 = axpy(&w, h / 2.0, &v2);
        let v3 = axpy(&v, h / 2.0, &a2);
        outside(t + h / 2.0, &w3)?;
        let (a3, _) = acceleration(kind, &w3, &v3)?;
        let w4 = axpy(&w, h, &v3);
        let v4 = axpy(&v, h, &a3);
        outside(t + h, &w4)?;
        let (a4, _) = acceleration(kind, &w4, &v4)?;
        for i in 0..w.len() {
            w[i] += (v[i] + v2[i] * 2.0 + v3[i] * 2.0 + v4[i]) * (h / 6.0);
            v[i] += (a1[i] + a2[i] * 2.0 + a3[i] * 2.0 + a4[i]) * (h / 6.0);
        }
        outside(t + h, &w)?;
    }
    Ok(traj)
}

impl GeodesicTrajectory {
    /// `max_t |E(t) − E(0)| / |E(0)|`, or the absolute drift when `E(0) = 0`.
    pub fn energy_drift(&self) -> f64 {
        let e0 = self.energies[0];
        let drift = self
            .energies
            .iter()
            .map(|e| (e - e0).abs())
            .fold(0.0, f64::max);
        if e0 != 0.0 {
            drift / e0.abs()
        } else {
            drift
        }
    }

    /// Largest modulus reached by any coordinate outside `retained`.
    pub fn max_off_subspace(&self, retained: &[usize]) -> f64 {
        self.positions
            .iter()
            .flat_map(|p| {
                p.iter()
                    .enumerate()
                    .filter(|(i, _)| !retained.contains(i))
                    .map(|(_, c)| c.norm())
            })
            .fold(0.0, f64::max)
    }

    pub fn final_position(&self) -> &[C64] {
        self.positions
            .last()
            .expect("trajectory has at least one point")
    }

    /// Columns `t, re_0, im_0, …, energy`.
    pub fn to_csv(&self) -> String {
        let n = self.positions.first().map_or(0, Vec::len);
        let mut out = String::from("t");
        for i in 0..n {
            let _ = write!(out, ",re_{i},im_{i}");
        }
        out.push_str(",energy\n");
        for ((t, p), e) in self.times.iter().zip(&self.positions).zip(&self.energies) {
            let _ = write!(out, "{t}");
            for c in p {
                let _ = write!(out, ",{},{}", c.re, c.im);
            }
            let _ = writeln!(out, ",{e}");
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Checks `Γ^t_{lj} = 0` for `l, j ∈ retained`, `t ∉ retained` at each point.
pub fn totally_geodesic_check(
    kind: &PotentialKind,
    retained: &[usize],
    points: &[AmbientPoint],
    tol: f64,
) -> Result<TotallyGeodesicReport> {
    let n = kind.dim();
    let mut worst: f64 = 0.0;
    for p in points {
        let gamma = christoffel_in_directions(kind, p, retained)?;
        for &l in retained {
            for &j in retained {
                for t in (0..n).filter(|t| !retained.contains(t)) {
                    worst = worst.max(gamma.get(t, l, j).norm());
                }
            }
        }
    }
    Ok(TotallyGeodesicReport {
        samples: points.len(),
        max_violation: worst,
        tolerance: tol,
        passed: worst <= tol,
    })
}
