//! Seeded sampling of points.
//!
//! Every stream is a ChaCha8 generator whose 32-byte key is the SHA-256 digest
//! of the master seed (little-endian `u64`) followed by the UTF-8 stream name.
//! Independent checks draw from independently named streams, so running them in
//! any order or subset yields the same samples.

use crate::domains::{HartogsSpec, NormMode, SymmetricDomainSpec};
use crate::embeddings::PolydiskEmbedding;
use crate::potential::AmbientPoint;
use crate::scalar::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use sha2::{Digest, Sha256};

/// Radius of the sampling ball for interior points.
pub const INTERIOR_RADIUS: f64 = 0.9;

const MAX_REJECTIONS: usize = 1_000_000;

pub fn stream(seed: u64, name: &str) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(name.as_bytes());
    ChaCha8Rng::from_seed(h.finalize().into())
}

/// Uniform point of the ball of radius `radius` in `C^dim = R^{2 dim}`.
pub fn uniform_ball(rng: &mut impl Rng, dim: usize, radius: f64) -> Vec<C64> {
    let g: Vec<f64> = (0..2 * dim).map(|_| rng.sample(StandardNormal)).collect();
    let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
    let r = radius * rng.gen::<f64>().powf(1.0 / (2 * dim) as f64);
    g.chunks(2)
        .map(|p| C64::new(p[0], p[1]) * (r / norm))
        .collect()
}

/// Standard complex Gaussian, `E|z|² = 2`.
pub fn complex_normal(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Uniform point of the disc of radius `radius`.
pub fn uniform_disc(rng: &mut impl Rng, radius: f64) -> C64 {
    uniform_ball(rng, 1, radius)[0]
}

/// Each coordinate uniform in the disc of radius `radius`.
pub fn polydisk_point(rng: &mut impl Rng, r: usize, radius: f64) -> Vec<C64> {
    (0..r).map(|_| uniform_disc(rng, radius)).collect()
}

/// Rejection sampling: uniform in the ball of radius [`INTERIOR_RADIUS`],
/// accepted when inside the domain.
pub fn interior_point(rng: &mut impl Rng, spec: &SymmetricDomainSpec) -> Vec<C64> {
    interior_point_within(rng, spec, INTERIOR_RADIUS)
}

/// Rejection sampling from the ball of radius `radius`.
pub fn interior_point_within(
    rng: &mut impl Rng,
    spec: &SymmetricDomainSpec,
    radius: f64,
) -> Vec<C64> {
    let dim = spec.dim();
    for _ in 0..MAX_REJECTIONS {
        let z = uniform_ball(rng, dim, radius);
        if spec.membership(&z) {
            return z;
        }
    }
    panic!("rejection sampling failed for {}", spec.label());
}

/// Fiber coordinate with `|z0| < fraction · N(z, z̄)^{μ/2}`.
fn fiber_for(rng: &mut impl Rng, spec: &HartogsSpec, z: &[C64], fraction: f64) -> C64 {
    let bound = spec
        .base
        .generic_norm(z, NormMode::Diagonal)
        .powf(spec.mu / 2.0);
    uniform_disc(rng, fraction * bound)
}

pub fn hartogs_point(rng: &mut impl Rng, spec: &HartogsSpec) -> AmbientPoint {
    hartogs_point_within(rng, spec, INTERIOR_RADIUS)
}

/// Base point from the ball of radius `radius`, fiber within `radius` of the
/// fiber bound.
pub fn hartogs_point_within(rng: &mut impl Rng, spec: &HartogsSpec, radius: f64) -> AmbientPoint {
    let z = interior_point_within(rng, &spec.base, radius);
    let z0 = fiber_for(rng, spec, &z, radius);
    AmbientPoint::new(z0, z)
}

/// Point of `C × Π` inside `M_{Ω,μ}`, together with its polydisk preimage.
pub fn hartogs_slice_point(
    rng: &mut impl Rng,
    spec: &HartogsSpec,
    emb: &PolydiskEmbedding,
) -> (AmbientPoint, Vec<C64>) {
    let u = polydisk_point(rng, emb.rank, INTERIOR_RADIUS);
    let z = emb.apply(&u).expect("rank matches");
    let z0 = fiber_for(rng, spec, &z, INTERIOR_RADIUS);
    (AmbientPoint::new(z0, z), u)
}

/// Point of `C × Π*` in the dual, with its preimage.
pub fn dual_slice_point(
    rng: &mut impl Rng,
    emb: &PolydiskEmbedding,
    radius: f64,
) -> (AmbientPoint, Vec<C64>) {
    let u = polydisk_point(rng, emb.rank, radius);
    let z = emb.apply(&u).expect("rank matches");
    (AmbientPoint::new(uniform_disc(rng, radius), z), u)
}
