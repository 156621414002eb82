//! Scenario-driven check catalog and reports.
//!
//! A [`ScenarioConfig`] names a domain, a Hartogs exponent, a list of checks and
//! the sampling and tolerance parameters. [`run_verification`] executes the
//! checks in order, each on its own seeded stream (see [`crate::sampling`]), and
//! returns a [`VerificationReport`] whose JSON form depends only on the config.

use crate::domains::{
    CartanDomainSpec, CartanKind, HartogsSpec, InvariantTuple, NormMode, SymmetricDomainSpec,
};
use crate::embeddings::{
    factorization_check, lift_dual_rotation, lift_mobius, lift_rotation, pullback_defect,
    PolydiskEmbedding,
};
use crate::error::{Error, Result};
use crate::geometry::{
    geodesic_integrate, holomorphic_sectional_curvature, sectional_curvature,
    totally_geodesic_check, SectionalPlane,
};
use crate::jordan::{project_type_v, JordanElement, TypeVElement};
use crate::octonion::{CrossVector, Octonion};
use crate::potential::{
    metric_at, metric_derivative_at, metric_second_derivative_at, potential, potential_real_jet,
    AmbientPoint, PotentialKind,
};
use crate::sampling::{
    complex_normal, dual_slice_point, hartogs_point, hartogs_point_within, hartogs_slice_point,
    polydisk_point, stream, uniform_ball, uniform_disc, INTERIOR_RADIUS,
};
use crate::scalar::C64;
use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

/// Version of the JSON report layout.
pub const REPORT_SCHEMA: u32 = 1;

/// Sampling radius for points of the dual domains, which live on all of `C^n`.
pub const DUAL_RADIUS: f64 = 1.5;

/// Step of the central finite differences in `derivative_crosscheck`.
pub const FD_STEP: f64 = 1e-5;

/// Sampling radius of `derivative_crosscheck`, for base and fiber alike.
pub const CROSSCHECK_RADIUS: f64 = 0.5;

/// `g(v, v̄)` of every initial geodesic velocity.
pub const GEODESIC_ENERGY: f64 = 0.25;

/// Flat coordinates `(z0, s1, s2, Re-unit of Z1)` of the negative-control slice
/// of the Hartogs domain over the exceptional domain of dimension 27.
pub const NEGATIVE_CONTROL_SLICE: [usize; 4] = [0, 1, 2, 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    InvariantsTable,
    NormFactorization,
    DualNormFactorization,
    MetricBlockDiagonal,
    DualMetricBlockDiagonal,
    ChristoffelVanishing,
    GeodesicConfinement,
    PullbackIsometry,
    LiftInvariance,
    ConstantCurvature,
    CurvatureFormulaFiber,
    CurvatureFormulaRank2,
    CurvatureGrowth,
    JordanAlgebraSuite,
    OctonionSuite,
    DerivativeCrosscheck,
    NegativeControl,
}

impl Check {
    /// The checks run by `all`. The negative control is meant to fail and is
    /// only run when named.
    pub const ALL: [Check; 16] = [
        Check::InvariantsTable,
        Check::NormFactorization,
        Check::DualNormFactorization,
        Check::MetricBlockDiagonal,
        Check::DualMetricBlockDiagonal,
        Check::ChristoffelVanishing,
        Check::GeodesicConfinement,
        Check::PullbackIsometry,
        Check::LiftInvariance,
        Check::ConstantCurvature,
        Check::CurvatureFormulaFiber,
        Check::CurvatureFormulaRank2,
        Check::CurvatureGrowth,
        Check::JordanAlgebraSuite,
        Check::OctonionSuite,
        Check::DerivativeCrosscheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::InvariantsTable => "invariants_table",
            Check::NormFactorization => "norm_factorization",
            Check::DualNormFactorization => "dual_norm_factorization",
            Check::MetricBlockDiagonal => "metric_block_diagonal",
            Check::DualMetricBlockDiagonal => "dual_metric_block_diagonal",
            Check::ChristoffelVanishing => "christoffel_vanishing",
            Check::GeodesicConfinement => "geodesic_confinement",
            Check::PullbackIsometry => "pullback_isometry",
            Check::LiftInvariance => "lift_invariance",
            Check::ConstantCurvature => "constant_curvature",
            Check::CurvatureFormulaFiber => "curvature_formula_fiber",
            Check::CurvatureFormulaRank2 => "curvature_formula_rank2",
            Check::CurvatureGrowth => "curvature_growth",
            Check::JordanAlgebraSuite => "jordan_algebra_suite",
            Check::OctonionSuite => "octonion_suite",
            Check::DerivativeCrosscheck => "derivative_crosscheck",
            Check::NegativeControl => "negative_control",
        }
    }

    /// The statement a check exercises.
    pub fn anchor(self) -> &'static str {
        match self {
            Check::InvariantsTable => {
                "Cartan invariants (d, r, a, b, genus) and their two identities"
            }
            Check::NormFactorization => {
                "generic norm restricted to a maximal polydisk is prod(1 - |z_i|^2)"
            }
            Check::DualNormFactorization => {
                "dual generic norm restricted to a maximal polydisk is prod(1 + |z_i|^2)"
            }
            Check::MetricBlockDiagonal => "Hartogs metric is block diagonal along C x polydisk",
            Check::DualMetricBlockDiagonal => "dual Hartogs metric splits along C x polydisk",
            Check::ChristoffelVanishing => "second fundamental form of C x polydisk vanishes",
            Check::GeodesicConfinement => {
                "C x polydisk is totally geodesic in the Hartogs domain and its dual"
            }
            Check::PullbackIsometry => {
                "polydisk embedding pulls the metric back to the polydisk metric"
            }
            Check::LiftInvariance => "lifted automorphisms preserve the diastasis and the metric",
            Check::ConstantCurvature => {
                "disc metric has holomorphic sectional curvature -4, its dual +4"
            }
            Check::CurvatureFormulaFiber => {
                "sectional curvature (2 + 2(mu - 1)|w|^2)/mu of the dual Hartogs disc at (w, 0)"
            }
            Check::CurvatureFormulaRank2 => {
                "sectional curvature -|w|^2/2 of the dual Hartogs bidisc at (w, 0, 0)"
            }
            Check::CurvatureGrowth => {
                "curvature of the dual Hartogs disc increases without bound in |w| for mu != 1"
            }
            Check::JordanAlgebraSuite => {
                "Freudenthal product, adjoint and triple product of the exceptional system"
            }
            Check::OctonionSuite => "complex octonions are alternative and Z conj(Z) is scalar",
            Check::DerivativeCrosscheck => {
                "jet derivatives of orders 1-4 agree with central finite differences"
            }
            Check::NegativeControl => {
                "a coordinate slice that is not a polydisk is not totally geodesic"
            }
        }
    }

    pub fn from_name(name: &str) -> Option<Check> {
        Check::ALL
            .iter()
            .chain(std::iter::once(&Check::NegativeControl))
            .copied()
            .find(|c| c.name() == name)
    }

    fn tolerance(self, t: &Tolerances) -> f64 {
        match self {
            Check::InvariantsTable => 0.0,
            Check::NormFactorization | Check::DualNormFactorization => t.norm,
            Check::MetricBlockDiagonal
            | Check::DualMetricBlockDiagonal
            | Check::PullbackIsometry
            | Check::LiftInvariance => t.identity,
            Check::ChristoffelVanishing | Check::NegativeControl => t.christoffel,
            Check::GeodesicConfinement => t.geodesic,
            Check::ConstantCurvature => t.constant_curvature,
            Check::CurvatureFormulaFiber
            | Check::CurvatureFormulaRank2
            | Check::CurvatureGrowth => t.curvature,
            Check::JordanAlgebraSuite | Check::OctonionSuite => t.algebra,
            Check::DerivativeCrosscheck => t.derivative,
        }
    }
}

/// Domain fragment of a scenario: the factors, plus the Hartogs exponent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainConfig {
    #[serde(flatten)]
    pub base: SymmetricDomainSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub norm: f64,
    pub identity: f64,
    pub derivative: f64,
    pub christoffel: f64,
    pub geodesic: f64,
    pub curvature: f64,
    pub constant_curvature: f64,
    pub algebra: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            norm: 1e-12,
            identity: 1e-10,
            derivative: 1e-6,
            christoffel: 1e-8,
            geodesic: 1e-6,
            curvature: 1e-6,
            constant_curvature: 1e-8,
            algebra: 1e-12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Integrator {
    pub t_end: f64,
    pub step: f64,
}

impl Default for Integrator {
    fn default() -> Self {
        Integrator {
            t_end: 1.0,
            step: 1e-3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub domain: DomainConfig,
    #[serde(default = "defaults::checks")]
    pub checks: Vec<String>,
    /// Points per sampled identity check.
    #[serde(default = "defaults::samples")]
    pub samples: usize,
    /// Geodesics per kind in `geodesic_confinement`.
    #[serde(default = "defaults::trajectories")]
    pub trajectories: usize,
    /// Random elements per algebraic suite.
    #[serde(default = "defaults::algebra_samples")]
    pub algebra_samples: usize,
    /// Potential evaluations in `derivative_crosscheck`.
    #[serde(default = "defaults::derivative_samples")]
    pub derivative_samples: usize,
    #[serde(default = "defaults::seed")]
    pub seed: u64,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub integrator: Integrator,
    /// Exponents for the block-diagonality checks.
    #[serde(default = "defaults::block_mu_grid")]
    pub block_mu_grid: Vec<f64>,
    /// Exponents for the curvature formulas.
    #[serde(default = "defaults::mu_grid")]
    pub mu_grid: Vec<f64>,
    /// Fiber moduli `|w|` for the curvature formulas.
    #[serde(default = "defaults::w_grid")]
    pub w_grid: Vec<f64>,
    #[serde(default = "defaults::growth_mu")]
    pub growth_mu: f64,
    #[serde(default = "defaults::growth_grid")]
    pub growth_grid: Vec<f64>,
    /// Report destination; not echoed into the report or its hash.
    #[serde(default, skip_serializing)]
    pub output: Option<PathBuf>,
}

mod defaults {
    pub fn checks() -> Vec<String> {
        vec!["all".into()]
    }
    pub fn samples() -> usize {
        64
    }
    pub fn trajectories() -> usize {
        8
    }
    pub fn algebra_samples() -> usize {
        1000
    }
    pub fn derivative_samples() -> usize {
        50
    }
    pub fn seed() -> u64 {
        42
    }
    pub fn block_mu_grid() -> Vec<f64> {
        vec![0.5, 1.0, 2.0]
    }
    pub fn mu_grid() -> Vec<f64> {
        vec![0.5, 1.0, 2.0, 3.0]
    }
    pub fn w_grid() -> Vec<f64> {
        vec![0.0, 1.0, 2.0]
    }
    pub fn growth_mu() -> f64 {
        2.0
    }
    pub fn growth_grid() -> Vec<f64> {
        vec![1.0, 2.0, 5.0, 10.0]
    }
}

/// Default Hartogs exponent when the domain fragment has none.
pub const DEFAULT_MU: f64 = 1.0;

impl ScenarioConfig {
    /// A config with every default and the given domain.
    pub fn new(base: SymmetricDomainSpec, mu: f64) -> Self {
        ScenarioConfig {
            domain: DomainConfig { base, mu: Some(mu) },
            checks: defaults::checks(),
            samples: defaults::samples(),
            trajectories: defaults::trajectories(),
            algebra_samples: defaults::algebra_samples(),
            derivative_samples: defaults::derivative_samples(),
            seed: defaults::seed(),
            tolerances: Tolerances::default(),
            integrator: Integrator::default(),
            block_mu_grid: defaults::block_mu_grid(),
            mu_grid: defaults::mu_grid(),
            w_grid: defaults::w_grid(),
            growth_mu: defaults::growth_mu(),
            growth_grid: defaults::growth_grid(),
            output: None,
        }
    }

    pub fn with_checks(mut self, checks: &[&str]) -> Self {
        self.checks = checks.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn mu(&self) -> f64 {
        self.domain.mu.unwrap_or(DEFAULT_MU)
    }

    pub fn validate(&self) -> Result<()> {
        self.domain
            .base
            .validate()
            .map_err(|e| Error::Config(e.to_string()))?;
        let positive = |name: &str, x: f64| {
            if x > 0.0 && x.is_finite() {
                Ok(())
            } else {
                Err(Error::Config(format!(
                    "{name} must be positive and finite, got {x}"
                )))
            }
        };
        positive("mu", self.mu())?;
        positive("growth_mu", self.growth_mu)?;
        positive("integrator.step", self.integrator.step)?;
        if !(self.integrator.t_end >= 0.0 && self.integrator.t_end.is_finite()) {
            return Err(Error::Config(format!(
                "integrator.t_end must be >= 0, got {}",
                self.integrator.t_end
            )));
        }
        for mu in self.block_mu_grid.iter().chain(&self.mu_grid) {
            positive("mu grid entry", *mu)?;
        }
        for w in self.w_grid.iter().chain(&self.growth_grid) {
            if !(*w >= 0.0 && w.is_finite()) {
                return Err(Error::Config(format!(
                    "|w| grid entries must be >= 0, got {w}"
                )));
            }
        }
        let t = &self.tolerances;
        for (name, x) in [
            ("norm", t.norm),
            ("identity", t.identity),
            ("derivative", t.derivative),
            ("christoffel", t.christoffel),
            ("geodesic", t.geodesic),
            ("curvature", t.curvature),
            ("constant_curvature", t.constant_curvature),
            ("algebra", t.algebra),
        ] {
            if !(x >= 0.0) {
                return Err(Error::Config(format!(
                    "tolerance {name} must be >= 0, got {x}"
                )));
            }
        }
        self.resolved_checks().map(|_| ())
    }

    /// Named checks in order, with `all` expanded and duplicates dropped.
    pub fn resolved_checks(&self) -> Result<Vec<Check>> {
        let mut out: Vec<Check> = Vec::new();
        for name in &self.checks {
            let expanded: Vec<Check> = if name == "all" {
                Check::ALL.to_vec()
            } else {
                vec![Check::from_name(name)
                    .ok_or_else(|| Error::Config(format!("unknown check `{name}`")))?]
            };
            for c in expanded {
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
        Ok(out)
    }

    /// SHA-256 of the canonical JSON form, in hex.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        Sha256::digest(bytes)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub anchor: String,
    pub samples: usize,
    /// `null` in JSON when the check aborted.
    pub max_violation: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub note: String,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub version: String,
    pub config_hash: String,
    pub config: ScenarioConfig,
    pub rows: Vec<CheckRow>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn row(&self, name: &str) -> Option<&CheckRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Text,
}

struct Outcome {
    samples: usize,
    violation: f64,
    note: String,
}

struct Ctx<'a> {
    cfg: &'a ScenarioConfig,
    spec: SymmetricDomainSpec,
    mu: f64,
    emb: PolydiskEmbedding,
}

impl Ctx<'_> {
    fn hartogs(&self, mu: f64) -> PotentialKind {
        PotentialKind::hartogs(self.spec.clone(), mu)
    }

    fn dual(&self, mu: f64) -> PotentialKind {
        PotentialKind::dual_hartogs(self.spec.clone(), mu)
    }

    /// `C × Π` in flat Hartogs coordinates.
    fn retained(&self) -> Vec<usize> {
        std::iter::once(0)
            .chain(self.emb.retained().into_iter().map(|i| i + 1))
            .collect()
    }

    fn hartogs_spec(&self, mu: f64) -> Result<HartogsSpec> {
        HartogsSpec::new(self.spec.clone(), mu)
    }

    /// Tangent vector to `C × Π` with `g(v, v̄) = GEODESIC_ENERGY` at `p`.
    fn slice_velocity(
        &self,
        rng: &mut ChaCha8Rng,
        kind: &PotentialKind,
        p: &AmbientPoint,
    ) -> Result<Vec<C64>> {
        let v0 = complex_normal(rng);
        let vu: Vec<C64> = (0..self.emb.rank).map(|_| complex_normal(rng)).collect();
        let v: Vec<C64> = std::iter::once(v0).chain(self.emb.apply(&vu)?).collect();
        let e = metric_at(kind, p)?.hermitian(&v, &v).re.abs();
        Ok(v.into_iter()
            .map(|c| c * (GEODESIC_ENERGY / e).sqrt())
            .collect())
    }
}

/// Number of points where the metric of `kind` is not positive definite.
fn indefinite(kind: &PotentialKind, points: &[AmbientPoint]) -> Result<usize> {
    let mut count = 0;
    for p in points {
        if !metric_at(kind, p)?.is_positive_definite() {
            count += 1;
        }
    }
    Ok(count)
}

fn indefinite_note(counts: [usize; 2], total: usize) -> String {
    if counts == [0, 0] {
        String::new()
    } else {
        format!(
            "; metric not positive definite at {} Hartogs and {} dual points of {total}",
            counts[0], counts[1]
        )
    }
}

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn off_block(g: &DMatrix<C64>, retained: &[usize]) -> f64 {
    let mut worst: f64 = 0.0;
    for &j in retained {
        for k in (0..g.ncols()).filter(|k| !retained.contains(k)) {
            worst = worst.max(g[(j, k)].norm()).max(g[(k, j)].norm());
        }
    }
    worst
}

fn fmt_list(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| format!("{x:.6}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Runs every requested check of `cfg`.
pub fn run_verification(cfg: &ScenarioConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let checks = cfg.resolved_checks()?;
    let ctx = Ctx {
        cfg,
        spec: cfg.domain.base.clone(),
        mu: cfg.mu(),
        emb: PolydiskEmbedding::standard(&cfg.domain.base),
    };
    let rows: Vec<CheckRow> = checks.into_iter().map(|c| run_check(c, &ctx)).collect();
    Ok(VerificationReport {
        schema: REPORT_SCHEMA,
        version: crate::VERSION.to_string(),
        config_hash: cfg.hash(),
        config: cfg.clone(),
        passed: rows.iter().all(|r| r.passed),
        rows,
    })
}

fn run_check(check: Check, ctx: &Ctx) -> CheckRow {
    let start = Instant::now();
    let mut rng = stream(ctx.cfg.seed, check.name());
    let outcome = match check {
        Check::InvariantsTable => invariants_table(ctx),
        Check::NormFactorization => norm_factorization(ctx, &mut rng, NormMode::Diagonal),
        Check::DualNormFactorization => norm_factorization(ctx, &mut rng, NormMode::DualDiagonal),
        Check::MetricBlockDiagonal => metric_block_diagonal(ctx, &mut rng),
        Check::DualMetricBlockDiagonal => dual_metric_block_diagonal(ctx, &mut rng),
        Check::ChristoffelVanishing => christoffel_vanishing(ctx, &mut rng),
        Check::GeodesicConfinement => geodesic_confinement(ctx, &mut rng),
        Check::PullbackIsometry => pullback_isometry(ctx, &mut rng),
        Check::LiftInvariance => lift_invariance(ctx, &mut rng),
        Check::ConstantCurvature => constant_curvature(ctx, &mut rng),
        Check::CurvatureFormulaFiber => curvature_formula_fiber(ctx),
        Check::CurvatureFormulaRank2 => curvature_formula_rank2(ctx),
        Check::CurvatureGrowth => curvature_growth(ctx),
        Check::JordanAlgebraSuite => jordan_algebra_suite(ctx, &mut rng),
        Check::OctonionSuite => octonion_suite(ctx, &mut rng),
        Check::DerivativeCrosscheck => derivative_crosscheck(ctx, &mut rng),
        Check::NegativeControl => negative_control(ctx, &mut rng),
    };
    let tolerance = check.tolerance(&ctx.cfg.tolerances);
    let (samples, max_violation, note) = match outcome {
        Ok(o) => (o.samples, o.violation, o.note),
        Err(e) => (0, f64::INFINITY, format!("aborted: {e}")),
    };
    CheckRow {
        name: check.name().to_string(),
        anchor: check.anchor().to_string(),
        samples,
        max_violation,
        tolerance,
        passed: max_violation <= tolerance,
        note,
        wall_time: start.elapsed(),
    }
}

/// `(kind, (d, r, a, b, γ))` as tabulated for the standard instances.
pub const REFERENCE_INVARIANTS: [(CartanKind, InvariantTuple); 6] = [
    (CartanKind::I { n: 2, m: 3 }, (6, 2, 2, 1, 5)),
    (CartanKind::II { n: 6 }, (15, 3, 4, 0, 10)),
    (CartanKind::III { n: 3 }, (6, 3, 1, 0, 4)),
    (CartanKind::IV { n: 5 }, (5, 2, 3, 0, 5)),
    (CartanKind::V, (16, 2, 6, 4, 12)),
    (CartanKind::VI, (27, 3, 8, 0, 18)),
];

fn invariants_table(ctx: &Ctx) -> Result<Outcome> {
    let mut bad = Vec::new();
    for (kind, expected) in REFERENCE_INVARIANTS {
        let spec = CartanDomainSpec::new(kind)?;
        let inv = spec.invariants()?;
        if inv.as_tuple() != expected || !inv.identities_hold() {
            bad.push(format!("{} gives {:?}", spec.label(), inv.as_tuple()));
        }
    }
    let mut configured = Vec::new();
    for f in &ctx.spec.factors {
        let inv = f.invariants()?;
        if !inv.identities_hold() {
            bad.push(format!("{} violates the identities", f.label()));
        }
        configured.push(format!("{} {:?}", f.label(), inv.as_tuple()));
    }
    let note = if bad.is_empty() {
        format!("configured: {}", configured.join("; "))
    } else {
        bad.join("; ")
    };
    Ok(Outcome {
        samples: REFERENCE_INVARIANTS.len() + ctx.spec.factors.len(),
        violation: bad.len() as f64,
        note,
    })
}

fn norm_factorization(ctx: &Ctx, rng: &mut ChaCha8Rng, mode: NormMode) -> Result<Outcome> {
    let r = ctx.emb.rank;
    let points: Vec<Vec<C64>> = std::iter::once(vec![C64::new(0.0, 0.0); r])
        .chain((1..ctx.cfg.samples).map(|_| polydisk_point(rng, r, INTERIOR_RADIUS)))
        .collect();
    let report = factorization_check(&ctx.spec, &points, ctx.cfg.tolerances.norm)?;
    let violation = match mode {
        NormMode::Diagonal => report.max_error,
        NormMode::DualDiagonal => report.max_error_dual,
    };
    Ok(Outcome {
        samples: points.len(),
        violation,
        note: format!("{} polydisk points in {}", points.len(), ctx.spec.label()),
    })
}

fn metric_block_diagonal(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let retained = ctx.retained();
    let mut worst = Vec::new();
    for &mu in &ctx.cfg.block_mu_grid {
        let spec = ctx.hartogs_spec(mu)?;
        let kind = ctx.hartogs(mu);
        let mut w: f64 = 0.0;
        for _ in 0..ctx.cfg.samples {
            let (p, _) = hartogs_slice_point(rng, &spec, &ctx.emb);
            w = w.max(off_block(&metric_at(&kind, &p)?.g, &retained));
        }
        worst.push(w);
    }
    Ok(Outcome {
        samples: ctx.cfg.samples * ctx.cfg.block_mu_grid.len(),
        violation: worst.iter().copied().fold(0.0, f64::max),
        note: format!("per mu {:?}: {}", ctx.cfg.block_mu_grid, fmt_sci(&worst)),
    })
}

fn dual_metric_block_diagonal(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let retained = ctx.retained();
    let mut worst = Vec::new();
    for &mu in &ctx.cfg.block_mu_grid {
        let kind = ctx.dual(mu);
        let mut w: f64 = 0.0;
        for _ in 0..ctx.cfg.samples {
            let (p, _) = dual_slice_point(rng, &ctx.emb, DUAL_RADIUS);
            w = w.max(off_block(&metric_at(&kind, &p)?.g, &retained));
        }
        worst.push(w);
    }
    Ok(Outcome {
        samples: ctx.cfg.samples * ctx.cfg.block_mu_grid.len(),
        violation: worst.iter().copied().fold(0.0, f64::max),
        note: format!("per mu {:?}: {}", ctx.cfg.block_mu_grid, fmt_sci(&worst)),
    })
}

fn fmt_sci(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| format!("{x:.3e}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn christoffel_vanishing(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let retained = ctx.retained();
    let spec = ctx.hartogs_spec(ctx.mu)?;
    let n = ctx.cfg.samples;
    let inner: Vec<AmbientPoint> = (0..n)
        .map(|_| hartogs_slice_point(rng, &spec, &ctx.emb).0)
        .collect();
    let outer: Vec<AmbientPoint> = (0..n)
        .map(|_| dual_slice_point(rng, &ctx.emb, DUAL_RADIUS).0)
        .collect();
    let tol = ctx.cfg.tolerances.christoffel;
    let h = totally_geodesic_check(&ctx.hartogs(ctx.mu), &retained, &inner, tol)?;
    let d = totally_geodesic_check(&ctx.dual(ctx.mu), &retained, &outer, tol)?;
    let counts = [
        indefinite(&ctx.hartogs(ctx.mu), &inner)?,
        indefinite(&ctx.dual(ctx.mu), &outer)?,
    ];
    Ok(Outcome {
        samples: 2 * n,
        violation: h.max_violation.max(d.max_violation),
        note: format!(
            "Hartogs {:.3e}, dual {:.3e}{}",
            h.max_violation,
            d.max_violation,
            indefinite_note(counts, n)
        ),
    })
}

fn negative_control(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let vi = SymmetricDomainSpec::single(CartanDomainSpec::new(CartanKind::VI)?);
    let kind = PotentialKind::hartogs(vi.clone(), ctx.mu);
    let mut points = Vec::with_capacity(ctx.cfg.samples);
    while points.len() < ctx.cfg.samples {
        let mut z = vec![C64::new(0.0, 0.0); vi.dim()];
        for &i in &NEGATIVE_CONTROL_SLICE[1..] {
            z[i - 1] = uniform_disc(rng, 0.5);
        }
        if !vi.membership(&z) {
            continue;
        }
        let bound = vi.generic_norm(&z, NormMode::Diagonal).powf(ctx.mu / 2.0);
        points.push(AmbientPoint::new(uniform_disc(rng, 0.5 * bound), z));
    }
    let report = totally_geodesic_check(
        &kind,
        &NEGATIVE_CONTROL_SLICE,
        &points,
        ctx.cfg.tolerances.christoffel,
    )?;
    Ok(Outcome {
        samples: points.len(),
        violation: report.max_violation,
        note: format!(
            "slice {NEGATIVE_CONTROL_SLICE:?} of the Hartogs domain over VI; expected to fail"
        ),
    })
}

fn geodesic_confinement(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let retained = ctx.retained();
    let spec = ctx.hartogs_spec(ctx.mu)?;
    let Integrator { t_end, step } = ctx.cfg.integrator;
    let (mut off, mut drift) = ([0.0f64; 2], [0.0f64; 2]);
    let mut counts = [0usize; 2];
    for (slot, kind) in [ctx.hartogs(ctx.mu), ctx.dual(ctx.mu)].iter().enumerate() {
        for _ in 0..ctx.cfg.trajectories {
            let p = if slot == 0 {
                hartogs_slice_point(rng, &spec, &ctx.emb).0
            } else {
                dual_slice_point(rng, &ctx.emb, DUAL_RADIUS).0
            };
            counts[slot] += indefinite(kind, std::slice::from_ref(&p))?;
            let v = ctx.slice_velocity(rng, kind, &p)?;
            let traj = geodesic_integrate(kind, &p, &v, t_end, step)?;
            off[slot] = off[slot].max(traj.max_off_subspace(&retained));
            drift[slot] = drift[slot].max(traj.energy_drift());
        }
    }
    Ok(Outcome {
        samples: 2 * ctx.cfg.trajectories,
        violation: off.iter().chain(&drift).copied().fold(0.0, f64::max),
        note: format!(
            "off-slice Hartogs {:.3e} dual {:.3e}; energy drift Hartogs {:.3e} dual {:.3e}{}",
            off[0],
            off[1],
            drift[0],
            drift[1],
            indefinite_note(counts, ctx.cfg.trajectories)
        ),
    })
}

fn pullback_isometry(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let r = ctx.emb.rank;
    let spec = ctx.hartogs_spec(ctx.mu)?;
    let poly = SymmetricDomainSpec::polydisk(r);
    let pairs = [
        (
            PotentialKind::Base(poly),
            PotentialKind::Base(ctx.spec.clone()),
        ),
        (
            PotentialKind::Polydisk { r, mu: ctx.mu },
            ctx.hartogs(ctx.mu),
        ),
        (
            PotentialKind::DualPolydisk { r, mu: ctx.mu },
            ctx.dual(ctx.mu),
        ),
    ];
    let mut worst = [0.0f64; 3];
    for _ in 0..ctx.cfg.samples {
        let (hp, u) = hartogs_slice_point(rng, &spec, &ctx.emb);
        let (dp, du) = dual_slice_point(rng, &ctx.emb, DUAL_RADIUS);
        let points = [
            AmbientPoint::new(C64::new(0.0, 0.0), u.clone()),
            AmbientPoint::new(hp.z0, u),
            AmbientPoint::new(dp.z0, du),
        ];
        for (i, ((source, target), p)) in pairs.iter().zip(&points).enumerate() {
            worst[i] = worst[i].max(pullback_defect(source, target, p)?);
        }
    }
    Ok(Outcome {
        samples: 3 * ctx.cfg.samples,
        violation: worst.iter().copied().fold(0.0, f64::max),
        note: format!(
            "base {:.3e}, Hartogs {:.3e}, dual {:.3e}",
            worst[0], worst[1], worst[2]
        ),
    })
}

fn lift_invariance(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let spec = ctx.hartogs_spec(ctx.mu)?;
    let kind = ctx.hartogs(ctx.mu);
    let dual = ctx.dual(ctx.mu);
    let r = ctx.emb.rank;
    let poly = PotentialKind::Polydisk { r, mu: ctx.mu };
    let poly_spec = HartogsSpec::new(SymmetricDomainSpec::polydisk(r), ctx.mu)?;
    let mut worst = [0.0f64; 3];
    for _ in 0..ctx.cfg.samples {
        let p = hartogs_point(rng, &spec);
        let lift = lift_rotation(rng.gen::<f64>() * TAU, ctx.mu);
        let image = lift.apply(&p)?;
        if !spec.membership(image.z0, &image.z) {
            return Err(Error::OutsideDomain);
        }
        worst[0] = worst[0].max((potential(&kind, &image)? - potential(&kind, &p)?).abs());

        let a: Vec<C64> = (0..r).map(|_| uniform_disc(rng, 0.5)).collect();
        let q = hartogs_point(rng, &poly_spec);
        let mobius = lift_mobius(a, ctx.mu)?;
        let moved = mobius.apply(&q)?;
        if !poly_spec.membership(moved.z0, &moved.z) {
            return Err(Error::OutsideDomain);
        }
        worst[1] = worst[1].max(mobius.pullback_defect(&poly, &q)?);

        let d = AmbientPoint::new(
            uniform_disc(rng, DUAL_RADIUS),
            uniform_ball(rng, ctx.spec.dim(), DUAL_RADIUS),
        );
        let rot = lift_dual_rotation(rng.gen::<f64>() * TAU);
        worst[2] = worst[2].max((potential(&dual, &rot.apply(&d))? - potential(&dual, &d)?).abs());
    }
    Ok(Outcome {
        samples: 3 * ctx.cfg.samples,
        violation: worst.iter().copied().fold(0.0, f64::max),
        note: format!(
            "rotation potential {:.3e}, Mobius pullback {:.3e}, dual rotation potential {:.3e}",
            worst[0], worst[1], worst[2]
        ),
    })
}

fn constant_curvature(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let disc = PotentialKind::Base(SymmetricDomainSpec::polydisk(1));
    let dual = PotentialKind::DualBase(SymmetricDomainSpec::polydisk(1));
    let xi = [C64::new(1.0, 0.0)];
    let mut worst = [0.0f64; 2];
    for _ in 0..ctx.cfg.samples {
        let p = AmbientPoint::new(C64::new(0.0, 0.0), vec![uniform_disc(rng, INTERIOR_RADIUS)]);
        let q = AmbientPoint::new(C64::new(0.0, 0.0), vec![uniform_disc(rng, DUAL_RADIUS)]);
        worst[0] = worst[0].max((holomorphic_sectional_curvature(&disc, &p, &xi)? + 4.0).abs());
        worst[1] = worst[1].max((holomorphic_sectional_curvature(&dual, &q, &xi)? - 4.0).abs());
    }
    Ok(Outcome {
        samples: 2 * ctx.cfg.samples,
        violation: worst[0].max(worst[1]),
        note: format!("disc {:.3e}, dual {:.3e}", worst[0], worst[1]),
    })
}

/// Sectional curvature of the dual Hartogs disc at `(w, 0)` on the base plane.
pub fn fiber_curvature(mu: f64, w: f64) -> Result<f64> {
    let kind = PotentialKind::DualPolydisk { r: 1, mu };
    let p = AmbientPoint::new(C64::new(w, 0.0), vec![C64::new(0.0, 0.0)]);
    sectional_curvature(&kind, &p, &SectionalPlane::coordinate(2, 2, 3))
}

/// Sectional curvature of the dual Hartogs bidisc at `(w, 0, 0)` on the plane
/// `(∂x_1, ∂x_2)`.
pub fn rank2_curvature(mu: f64, w: f64) -> Result<f64> {
    let kind = PotentialKind::DualPolydisk { r: 2, mu };
    let p = AmbientPoint::new(C64::new(w, 0.0), vec![C64::new(0.0, 0.0); 2]);
    sectional_curvature(&kind, &p, &SectionalPlane::coordinate(3, 2, 4))
}

pub fn fiber_curvature_formula(mu: f64, w: f64) -> f64 {
    (2.0 + 2.0 * (mu - 1.0) * w * w) / mu
}

fn curvature_formula_fiber(ctx: &Ctx) -> Result<Outcome> {
    let (mut worst, mut flipped) = (0.0f64, 0.0f64);
    let mut count = 0;
    for &mu in &ctx.cfg.mu_grid {
        for &w in &ctx.cfg.w_grid {
            let k = fiber_curvature(mu, w)?;
            worst = worst.max((k - fiber_curvature_formula(mu, w)).abs());
            flipped = flipped.max((k - (2.0 - 2.0 * (mu - 1.0) * w * w) / mu).abs());
            count += 1;
        }
    }
    Ok(Outcome {
        samples: count,
        violation: worst,
        note: format!("distance to (2 - 2(mu - 1)|w|^2)/mu: {flipped:.3e}"),
    })
}

fn curvature_formula_rank2(ctx: &Ctx) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for &mu in &ctx.cfg.mu_grid {
        for &w in &ctx.cfg.w_grid {
            worst = worst.max((rank2_curvature(mu, w)? + w * w / 2.0).abs());
            count += 1;
        }
    }
    Ok(Outcome {
        samples: count,
        violation: worst,
        note: format!("mu in {:?}, |w| in {:?}", ctx.cfg.mu_grid, ctx.cfg.w_grid),
    })
}

fn curvature_growth(ctx: &Ctx) -> Result<Outcome> {
    let mu = ctx.cfg.growth_mu;
    let values = ctx
        .cfg
        .growth_grid
        .iter()
        .map(|&w| fiber_curvature(mu, w))
        .collect::<Result<Vec<_>>>()?;
    let formula = ctx
        .cfg
        .growth_grid
        .iter()
        .zip(&values)
        .map(|(&w, k)| (k - fiber_curvature_formula(mu, w)).abs())
        .fold(0.0, f64::max);
    // how far the sequence is from increasing
    let descent = values
        .windows(2)
        .map(|p| (p[0] - p[1]).max(0.0))
        .fold(0.0, f64::max);
    let increasing = values.windows(2).all(|p| p[1] > p[0]);
    Ok(Outcome {
        samples: values.len(),
        violation: formula.max(descent),
        note: format!(
            "K = [{}], strictly increasing: {increasing}, max |K| = {:.3}",
            fmt_list(&values),
            values.iter().map(|k| k.abs()).fold(0.0, f64::max)
        ),
    })
}

fn random_octonion(rng: &mut ChaCha8Rng) -> Octonion {
    Octonion::new(std::array::from_fn(|_| complex_normal(rng) * 0.5))
}

fn random_jordan(rng: &mut ChaCha8Rng) -> JordanElement {
    JordanElement::from_flat(
        &(0..27)
            .map(|_| complex_normal(rng) * 0.5)
            .collect::<Vec<_>>(),
    )
}

fn random_type_v(rng: &mut ChaCha8Rng) -> TypeVElement {
    TypeVElement::from_flat(
        &(0..16)
            .map(|_| complex_normal(rng) * 0.5)
            .collect::<Vec<_>>(),
    )
}

fn jordan_algebra_suite(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    // adjoint, symmetry, linearity, conjugate-linearity, (z#|z̄) on H', closure of H'
    let mut worst = [0.0f64; 6];
    for _ in 0..ctx.cfg.algebra_samples {
        let (x, y, z) = (random_jordan(rng), random_jordan(rng), random_jordan(rng));
        let (a, b) = (complex_normal(rng), complex_normal(rng));
        worst[0] = worst[0].max(
            x.adjoint()
                .max_abs_diff(&x.freudenthal(&x).scale(C64::new(0.5, 0.0))),
        );
        worst[1] = worst[1].max(x.freudenthal(&y).max_abs_diff(&y.freudenthal(&x)));

        let xp = random_jordan(rng);
        let mix = x.scale(a).add(&xp.scale(b));
        let lhs = JordanElement::triple_product(&mix, &y, &z);
        let rhs = JordanElement::triple_product(&x, &y, &z)
            .scale(a)
            .add(&JordanElement::triple_product(&xp, &y, &z).scale(b));
        let outer = lhs.max_abs_diff(&rhs);
        let lhs = JordanElement::triple_product(&x, &y, &mix);
        let rhs = JordanElement::triple_product(&x, &y, &x)
            .scale(a)
            .add(&JordanElement::triple_product(&x, &y, &xp).scale(b));
        worst[2] = worst[2].max(outer).max(lhs.max_abs_diff(&rhs));

        let lhs = JordanElement::triple_product(&y, &mix, &z);
        let rhs = JordanElement::triple_product(&y, &x, &z)
            .scale(a.conj())
            .add(&JordanElement::triple_product(&y, &xp, &z).scale(b.conj()));
        worst[3] = worst[3].max(lhs.max_abs_diff(&rhs));

        let (u, v, w) = (
            random_type_v(rng).embed(),
            random_type_v(rng).embed(),
            random_type_v(rng).embed(),
        );
        worst[4] = worst[4].max(u.adjoint().bilinear_pairing(&u).norm());
        let t = JordanElement::triple_product(&u, &v, &w);
        let back = project_type_v(&t, f64::INFINITY)?.embed();
        worst[5] = worst[5].max(t.max_abs_diff(&back));
    }
    Ok(Outcome {
        samples: ctx.cfg.algebra_samples,
        violation: worst.iter().copied().fold(0.0, f64::max),
        note: format!(
            "adjoint {:.1e}, symmetry {:.1e}, linearity {:.1e}, conjugate-linearity {:.1e}, (z#|z) on H' {:.1e}, closure of H' {:.1e}",
            worst[0], worst[1], worst[2], worst[3], worst[4], worst[5]
        ),
    })
}

fn octonion_suite(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    // alternativity, scalarization, bilinearity, cross-product consistency
    let mut worst = [0.0f64; 4];
    for _ in 0..ctx.cfg.algebra_samples {
        let (z, w, u) = (
            random_octonion(rng),
            random_octonion(rng),
            random_octonion(rng),
        );
        let (a, b) = (complex_normal(rng), complex_normal(rng));
        let zz = z.mul(&z);
        let left = zz.mul(&w).max_abs_diff(&z.mul(&z.mul(&w)));
        let right = w.mul(&z).mul(&z).max_abs_diff(&w.mul(&zz));
        worst[0] = worst[0].max(left).max(right);

        let s = z.mul(&z.cayley_conj());
        let expected: C64 = z.c.iter().map(|x| x * x).sum();
        worst[1] = worst[1].max(s.max_abs_diff(&Octonion::scalar(expected)));

        let mix = z.scale(a).add(&u.scale(b));
        let first = mix
            .mul(&w)
            .max_abs_diff(&z.mul(&w).scale(a).add(&u.mul(&w).scale(b)));
        let second = w
            .mul(&mix)
            .max_abs_diff(&w.mul(&z).scale(a).add(&w.mul(&u).scale(b)));
        let form =
            (mix.bilinear_form(&w) - (z.bilinear_form(&w) * a + u.bilinear_form(&w) * b)).norm();
        worst[2] = worst[2].max(first).max(second).max(form);

        let (p, q) = (z.imag(), w.imag());
        let pure = |v: &CrossVector| Octonion::from_parts(C64::new(0.0, 0.0), v.clone());
        let expected = Octonion::from_parts(-p.dot(&q), p.cross(&q));
        worst[3] = worst[3].max(pure(&p).mul(&pure(&q)).max_abs_diff(&expected));
    }
    Ok(Outcome {
        samples: ctx.cfg.algebra_samples,
        violation: worst.iter().copied().fold(0.0, f64::max),
        note: format!(
            "alternativity {:.1e}, scalarization {:.1e}, bilinearity {:.1e}, cross product {:.1e}",
            worst[0], worst[1], worst[2], worst[3]
        ),
    })
}

fn relative(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn relative_matrix(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    (a - b).norm() / max_abs(b).max(1.0) / (a.len() as f64).sqrt().max(1.0)
}

fn shifted(point: &AmbientPoint, kind: &PotentialKind, j: usize, delta: C64) -> AmbientPoint {
    let mut w = point.coords(kind);
    w[j] += delta;
    AmbientPoint::from_coords(kind, &w)
}

/// Compares every jet derivative of total order 1 to 4 in four random real
/// variables with the central difference of the order below, and the complex
/// metric, its first derivative and its mixed second derivative with central
/// differences of the order below.
fn derivative_crosscheck(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let h = FD_STEP;
    let spec = ctx.hartogs_spec(ctx.mu)?;
    let mut worst = [0.0f64; 4];
    for s in 0..ctx.cfg.derivative_samples {
        let (kind, p) = if s % 2 == 0 {
            (
                ctx.hartogs(ctx.mu),
                hartogs_point_within(rng, &spec, CROSSCHECK_RADIUS),
            )
        } else {
            let d = ctx.spec.dim();
            (
                ctx.dual(ctx.mu),
                AmbientPoint::new(
                    uniform_disc(rng, CROSSCHECK_RADIUS),
                    uniform_ball(rng, d, CROSSCHECK_RADIUS),
                ),
            )
        };
        let n = kind.dim();
        let mut vars: Vec<usize> = Vec::with_capacity(4);
        while vars.len() < 4.min(2 * n) {
            let v = rng.gen_range(0..2 * n);
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let jet = potential_real_jet(&kind, &p, &vars, 4)?;
        let layout = jet.layout().expect("jet has active variables");
        let mut shifted_jets = Vec::with_capacity(vars.len());
        for &var in &vars {
            let delta = if var % 2 == 0 {
                C64::new(h, 0.0)
            } else {
                C64::new(0.0, h)
            };
            let plus = potential_real_jet(&kind, &shifted(&p, &kind, var / 2, delta), &vars, 3)?;
            let minus = potential_real_jet(&kind, &shifted(&p, &kind, var / 2, -delta), &vars, 3)?;
            shifted_jets.push((plus, minus));
        }
        for alpha in layout
            .monomials()
            .iter()
            .filter(|m| m.iter().any(|&e| e > 0))
        {
            let i = alpha
                .iter()
                .position(|&e| e > 0)
                .expect("nonzero multi-index");
            let mut lower = alpha.clone();
            lower[i] -= 1;
            let (plus, minus) = &shifted_jets[i];
            let fd = (plus.derivative(&lower) - minus.derivative(&lower)) / (2.0 * h);
            worst[0] = worst[0].max(relative(jet.derivative(alpha), fd));
        }

        let j = rng.gen_range(0..n);
        let l = rng.gen_range(0..n);
        let wirtinger = |f: &dyn Fn(&AmbientPoint) -> Result<DMatrix<C64>>,
                         holomorphic: bool|
         -> Result<DMatrix<C64>> {
            let dx = (f(&shifted(&p, &kind, j, C64::new(h, 0.0)))?
                - f(&shifted(&p, &kind, j, C64::new(-h, 0.0)))?)
                / C64::new(2.0 * h, 0.0);
            let dy = (f(&shifted(&p, &kind, j, C64::new(0.0, h)))?
                - f(&shifted(&p, &kind, j, C64::new(0.0, -h)))?)
                / C64::new(2.0 * h, 0.0);
            let i = C64::new(0.0, 1.0);
            let sign = if holomorphic { -1.0 } else { 1.0 };
            Ok((dx + dy * (i * sign)) * C64::new(0.5, 0.0))
        };
        let metric = |q: &AmbientPoint| Ok(metric_at(&kind, q)?.g);
        let fd = wirtinger(&metric, true)?;
        worst[1] = worst[1].max(relative_matrix(&metric_derivative_at(&kind, &p, j)?, &fd));

        let first = |q: &AmbientPoint| metric_derivative_at(&kind, q, l);
        let fd = wirtinger(&first, false)?;
        worst[2] = worst[2].max(relative_matrix(
            &metric_second_derivative_at(&kind, &p, l, j)?,
            &fd,
        ));

        // the metric itself against the real Hessian of the potential
        let real = crate::potential::metric_entry_real_hessian(&kind, &p, j, l)?;
        worst[3] = worst[3].max(relative(metric_at(&kind, &p)?.g[(j, l)], real));
    }
    Ok(Outcome {
        samples: ctx.cfg.derivative_samples,
        violation: worst.iter().copied().fold(0.0, f64::max),
        note: format!(
            "real jets {:.1e}, dg {:.1e}, ddg {:.1e}, metric vs real Hessian {:.1e}",
            worst[0], worst[1], worst[2], worst[3]
        ),
    })
}

/// JSON form; stable across runs for a fixed config.
pub fn render_json(report: &VerificationReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Human-readable table with one row per check and notes below.
pub fn render_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    let cfg = &report.config;
    let _ = writeln!(
        out,
        "hartogs verify {}  config {}",
        report.version,
        &report.config_hash[..16]
    );
    let _ = writeln!(
        out,
        "domain {}  mu {}  seed {}  samples {}",
        cfg.domain.base.label(),
        cfg.mu(),
        cfg.seed,
        cfg.samples
    );
    let _ = writeln!(
        out,
        "{:<28} {:<4} {:>12} {:>9} {:>7} {:>9}  statement",
        "check", "ok", "violation", "tol", "samples", "time"
    );
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{:<28} {:<4} {:>12.3e} {:>9.0e} {:>7} {:>8.2}s  {}",
            r.name,
            if r.passed { "pass" } else { "FAIL" },
            r.max_violation,
            r.tolerance,
            r.samples,
            r.wall_time.as_secs_f64(),
            r.anchor
        );
    }
    out.push('\n');
    for r in &report.rows {
        let _ = writeln!(out, "{}: {}", r.name, r.note);
    }
    let passed = report.rows.iter().filter(|r| r.passed).count();
    let _ = writeln!(out, "\n{passed}/{} checks passed", report.rows.len());
    out
}

pub fn render(report: &VerificationReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => render_json(report),
        ReportFormat::Text => render_text(report),
    }
}

/// Writes the report to `path`.
pub fn emit_report(report: &VerificationReport, format: ReportFormat, path: &Path) -> Result<()> {
    std::fs::write(path, render(report, format)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
