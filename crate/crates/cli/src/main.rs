//! `hartogs`: seeded verification of Hartogs domains over bounded symmetric
//! domains, plus point queries for the metric, curvature and geodesics.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails,
//! 2 on a usage, configuration or I/O error.

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hartogs_core::geometry::{
    geodesic_integrate, holomorphic_sectional_curvature, sectional_curvature, SectionalPlane,
};
use hartogs_core::potential::metric_at;
use hartogs_core::verify::{
    emit_report, render, run_verification, DomainConfig, ReportFormat, ScenarioConfig, Tolerances,
    DEFAULT_MU, REFERENCE_INVARIANTS,
};
use hartogs_core::{AmbientPoint, CartanDomainSpec, PotentialKind, SymmetricDomainSpec, C64};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hartogs",
    version,
    about = "Verify Kähler geometry of Hartogs domains over bounded symmetric domains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the check catalog and write a report.
    Verify(VerifyArgs),
    /// Print the metric matrix g_{jk̄} at a point.
    Metric(QueryArgs),
    /// Print sectional curvatures at one or more points.
    Curvature(CurvatureArgs),
    /// Integrate a geodesic and write it as CSV.
    Geodesic(GeodesicArgs),
    /// Print the invariants (d, r, a, b, genus) and check their identities.
    Invariants(InvariantsArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Scenario file (JSON); flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Domain fragment, e.g. '{"factors":[{"kind":"VI"}],"mu":1.5}'.
    #[arg(long)]
    domain: Option<String>,
    #[arg(long)]
    mu: Option<f64>,
    /// Comma-separated check names, or `all`.
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// `VALUE` sets every tolerance; `NAME=VALUE` sets one. Repeatable.
    #[arg(long)]
    tol: Vec<String>,
    /// Report destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Text => ReportFormat::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Hartogs,
    Dual,
    Base,
    DualBase,
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    domain: String,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long, value_enum, default_value_t = Kind::Hartogs)]
    kind: Kind,
    /// Flat coordinates as JSON pairs `[[re, im], …]`, fiber first for the
    /// Hartogs kinds; the origin when absent.
    #[arg(long)]
    point: Option<String>,
}

#[derive(Args)]
struct CurvatureArgs {
    #[arg(long)]
    domain: String,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long, value_enum, default_value_t = Kind::Dual)]
    kind: Kind,
    /// Points as in `metric`. Repeatable; the origin when absent.
    #[arg(long)]
    point: Vec<String>,
    /// Real coordinate indices `a,b` spanning the plane (`2j` is `x_j`,
    /// `2j + 1` is `y_j`).
    #[arg(long, value_delimiter = ',', default_values_t = [0usize, 1])]
    plane: Vec<usize>,
}

#[derive(Args)]
struct GeodesicArgs {
    #[arg(long)]
    domain: String,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long, value_enum, default_value_t = Kind::Hartogs)]
    kind: Kind,
    /// Start point as in `metric`; the origin when absent.
    #[arg(long)]
    start: Option<String>,
    /// Initial velocity as JSON pairs; zero when absent.
    #[arg(long)]
    velocity: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    t_end: f64,
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InvariantsArgs {
    /// Domain fragment; the six reference Cartan domains when absent.
    #[arg(long)]
    domain: Option<String>,
}

/// Failure of the command itself, as opposed to a failed check.
struct UsageError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Metric(a) => metric(a).map(|_| true),
        Command::Curvature(a) => curvature(a).map(|_| true),
        Command::Geodesic(a) => geodesic(a).map(|_| true),
        Command::Invariants(a) => invariants(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_domain(text: &str) -> anyhow::Result<DomainConfig> {
    let domain: DomainConfig = serde_json::from_str(text).context("parsing --domain")?;
    domain.base.validate()?;
    Ok(domain)
}

fn scenario(a: &VerifyArgs) -> anyhow::Result<ScenarioConfig> {
    let mut cfg = match (&a.config, &a.domain) {
        (Some(path), _) => ScenarioConfig::from_file(path)?,
        (None, Some(text)) => {
            let domain = parse_domain(text)?;
            ScenarioConfig::new(domain.base, domain.mu.unwrap_or(DEFAULT_MU))
        }
        (None, None) => bail!("verify needs --config or --domain"),
    };
    if let (Some(_), Some(text)) = (&a.config, &a.domain) {
        let mu = cfg.domain.mu;
        cfg.domain = parse_domain(text)?;
        cfg.domain.mu = cfg.domain.mu.or(mu);
    }
    if let Some(mu) = a.mu {
        cfg.domain.mu = Some(mu);
    }
    if let Some(checks) = &a.checks {
        cfg.checks = checks.clone();
    }
    if let Some(n) = a.samples {
        cfg.samples = n;
    }
    if let Some(seed) = a.seed {
        cfg.seed = seed;
    }
    for t in &a.tol {
        cfg.tolerances = apply_tolerance(&cfg.tolerances, t)?;
    }
    if let Some(out) = &a.out {
        cfg.output = Some(out.clone());
    }
    cfg.validate()?;
    cfg.resolved_checks()?;
    Ok(cfg)
}

fn apply_tolerance(current: &Tolerances, spec: &str) -> anyhow::Result<Tolerances> {
    let mut value = serde_json::to_value(current)?;
    let fields = value
        .as_object_mut()
        .expect("tolerances serialize to an object");
    match spec.split_once('=') {
        Some((name, x)) => {
            let x: f64 = x.parse().with_context(|| format!("tolerance {name}"))?;
            if !fields.contains_key(name) {
                let known: Vec<&String> = fields.keys().collect();
                bail!("unknown tolerance {name:?}; expected one of {known:?}");
            }
            fields.insert(name.to_string(), x.into());
        }
        None => {
            let x: f64 = spec
                .parse()
                .with_context(|| format!("tolerance {spec:?}"))?;
            fields.values_mut().for_each(|v| *v = x.into());
        }
    }
    Ok(serde_json::from_value(value)?)
}

fn verify(a: VerifyArgs) -> Result<bool, UsageError> {
    let cfg = scenario(&a)?;
    let report = run_verification(&cfg)?;
    match &cfg.output {
        Some(path) => {
            emit_report(&report, a.format.into(), path)?;
            let failed: Vec<&str> = report.failures().map(|r| r.name.as_str()).collect();
            eprintln!(
                "{}/{} checks passed{}; report written to {}",
                report.rows.len() - failed.len(),
                report.rows.len(),
                if failed.is_empty() {
                    String::new()
                } else {
                    format!(" (failed: {})", failed.join(", "))
                },
                path.display()
            );
        }
        None => print!("{}", render(&report, a.format.into())),
    }
    Ok(report.passed)
}

fn kind_of(domain: &str, mu: Option<f64>, kind: Kind) -> anyhow::Result<PotentialKind> {
    let d = parse_domain(domain)?;
    let mu = mu.or(d.mu).unwrap_or(DEFAULT_MU);
    if !(mu > 0.0 && mu.is_finite()) {
        bail!("mu must be positive, got {mu}");
    }
    Ok(match kind {
        Kind::Hartogs => PotentialKind::hartogs(d.base, mu),
        Kind::Dual => PotentialKind::dual_hartogs(d.base, mu),
        Kind::Base => PotentialKind::Base(d.base),
        Kind::DualBase => PotentialKind::DualBase(d.base),
    })
}

fn parse_vector(text: &str, len: usize, what: &str) -> anyhow::Result<Vec<C64>> {
    let pairs: Vec<[f64; 2]> =
        serde_json::from_str(text).with_context(|| format!("parsing {what}"))?;
    if pairs.len() != len {
        bail!(
            "{what} needs {len} complex coordinates, got {}",
            pairs.len()
        );
    }
    Ok(pairs.iter().map(|[re, im]| C64::new(*re, *im)).collect())
}

fn point_of(kind: &PotentialKind, text: Option<&str>, what: &str) -> anyhow::Result<AmbientPoint> {
    match text {
        None => Ok(AmbientPoint::origin(kind)),
        Some(t) => Ok(AmbientPoint::from_coords(
            kind,
            &parse_vector(t, kind.dim(), what)?,
        )),
    }
}

fn fmt_complex(c: C64) -> String {
    // adding 0.0 turns -0.0 into +0.0
    format!("{:+.10e}{:+.10e}i", c.re + 0.0, c.im + 0.0)
}

fn metric(a: QueryArgs) -> Result<(), UsageError> {
    let kind = kind_of(&a.domain, a.mu, a.kind)?;
    let p = point_of(&kind, a.point.as_deref(), "--point")?;
    let g = metric_at(&kind, &p)?.g;
    let mut out = format!("# {} ({}x{})\n", kind.label(), g.nrows(), g.ncols());
    for i in 0..g.nrows() {
        let row: Vec<String> = (0..g.ncols()).map(|j| fmt_complex(g[(i, j)])).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    print!("{out}");
    Ok(())
}

fn curvature(a: CurvatureArgs) -> Result<(), UsageError> {
    let kind = kind_of(&a.domain, a.mu, a.kind)?;
    let n = kind.dim();
    let [x, y] = a.plane[..] else {
        return Err(anyhow!("--plane takes two indices, got {:?}", a.plane).into());
    };
    if x >= 2 * n || y >= 2 * n {
        return Err(anyhow!("plane indices must be below {}", 2 * n).into());
    }
    let plane = SectionalPlane::coordinate(n, x, y);
    let texts: Vec<Option<&str>> = if a.point.is_empty() {
        vec![None]
    } else {
        a.point.iter().map(|s| Some(s.as_str())).collect()
    };
    println!("# {} plane ({x}, {y})", kind.label());
    println!("point\tsectional\tholomorphic_x");
    for (i, text) in texts.into_iter().enumerate() {
        let p = point_of(&kind, text, "--point")?;
        let k = sectional_curvature(&kind, &p, &plane)?;
        let xi = hartogs_core::geometry::holomorphic_part(&plane.x);
        let h = holomorphic_sectional_curvature(&kind, &p, &xi)?;
        println!("{i}\t{k:.12}\t{h:.12}");
    }
    Ok(())
}

fn geodesic(a: GeodesicArgs) -> Result<(), UsageError> {
    let kind = kind_of(&a.domain, a.mu, a.kind)?;
    let start = point_of(&kind, a.start.as_deref(), "--start")?;
    let v = match &a.velocity {
        Some(t) => parse_vector(t, kind.dim(), "--velocity")?,
        None => vec![C64::new(0.0, 0.0); kind.dim()],
    };
    let traj = geodesic_integrate(&kind, &start, &v, a.t_end, a.step)?;
    match &a.out {
        Some(path) => traj.write_csv(path)?,
        None => print!("{}", traj.to_csv()),
    }
    Ok(())
}

fn invariants(a: InvariantsArgs) -> Result<bool, UsageError> {
    let factors: Vec<CartanDomainSpec> = match &a.domain {
        Some(text) => parse_domain(text)?.base.factors,
        None => REFERENCE_INVARIANTS
            .iter()
            .map(|(kind, _)| CartanDomainSpec::new(*kind))
            .collect::<hartogs_core::Result<_>>()?,
    };
    let mut ok = true;
    println!("domain\t(d, r, a, b, genus)\tidentities");
    for f in &factors {
        let inv = f.invariants()?;
        let holds = inv.identities_hold();
        ok &= holds;
        let (d, r, a, b, g) = inv.as_tuple();
        let verdict = if holds { "ok" } else { "FAIL" };
        println!("{}\t({d},{r},{a},{b},{g})\t{verdict}", f.label());
    }
    if factors.len() > 1 {
        let spec = SymmetricDomainSpec::new(factors)?;
        println!(
            "product {}: dim {}, rank {}",
            spec.label(),
            spec.dim(),
            spec.rank()
        );
    }
    Ok(ok)
}
