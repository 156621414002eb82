//! Worked examples for each module, checked against independent oracles.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use hartogs_core::domains::{hartogs_membership, invariants};
use hartogs_core::embeddings::{
    factorization_check, lift_dual_rotation, lift_mobius, lift_rotation, pullback_defect,
    PolydiskEmbedding,
};
use hartogs_core::geometry::{
    christoffel_at, geodesic_integrate, holomorphic_sectional_curvature, sectional_curvature,
    totally_geodesic_check, SectionalPlane,
};
use hartogs_core::jordan::project_type_v;
use hartogs_core::potential::{
    metric_at, metric_derivative_at, metric_second_derivative_at, potential,
};
use hartogs_core::sampling::{hartogs_point, polydisk_point, stream, uniform_ball, uniform_disc};
use hartogs_core::*;
use nalgebra::DMatrix;

fn unit(i: usize) -> Octonion {
    Octonion::unit(i)
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn real(x: f64) -> C64 {
    c(x, 0.0)
}

fn spec(json: &str) -> SymmetricDomainSpec {
    SymmetricDomainSpec::from_json(json).unwrap()
}

fn vi() -> SymmetricDomainSpec {
    spec(r#"{"factors":[{"kind":"VI"}]}"#)
}

fn iv5() -> SymmetricDomainSpec {
    spec(r#"{"factors":[{"kind":"IV","n":5}]}"#)
}

fn disc() -> SymmetricDomainSpec {
    SymmetricDomainSpec::polydisk(1)
}

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

fn random_octonion(rng: &mut impl rand::Rng) -> Octonion {
    Octonion::new(std::array::from_fn(|_| sampling::complex_normal(rng)))
}

/// `e_a e_b` from the rule `e_i e_{i+1} = e_{i+3}` (indices mod 7 in 1..=7),
/// built without the library table.
fn fano_oracle(a: usize, b: usize) -> (f64, usize) {
    if a == 0 {
        return (1.0, b);
    }
    if b == 0 {
        return (1.0, a);
    }
    if a == b {
        return (-1.0, 0);
    }
    let wrap = |k: usize| (k - 1) % 7 + 1;
    for i in 1..=7 {
        let line = [wrap(i), wrap(i + 1), wrap(i + 3)];
        for s in 0..3 {
            let (p, q, r) = (line[s], line[(s + 1) % 3], line[(s + 2) % 3]);
            if (p, q) == (a, b) {
                return (1.0, r);
            }
            if (q, p) == (a, b) {
                return (-1.0, r);
            }
        }
    }
    unreachable!("every pair of units lies on a line")
}

#[test]
fn octonion_units() {
    let e = unit;
    assert_eq!(e(0).mul(&e(1)), e(1));
    assert_eq!(e(1).mul(&e(1)), Octonion::scalar(real(-1.0)));
    assert_eq!(e(1).mul(&e(2)), e(4));
    assert_eq!(e(1).bilinear_form(&e(1)), real(1.0));
    assert_eq!(e(1).bilinear_form(&e(2)), real(0.0));
    let one_plus_e1 = e(0).add(&e(1));
    assert_eq!(one_plus_e1.cayley_conj(), e(0).sub(&e(1)));
    let ie3 = e(3).scale(c(0.0, 1.0));
    assert_eq!(ie3.complex_conj(), e(3).scale(c(0.0, -1.0)));
}

#[test]
fn octonion_table_matches_fano_oracle() {
    for a in 0..8 {
        for b in 0..8 {
            let (sign, k) = fano_oracle(a, b);
            let expected = unit(k).scale(real(sign));
            assert_eq!(unit(a).mul(&unit(b)), expected, "e{a} e{b}");
        }
    }
}

#[test]
fn octonion_conjugate_products() {
    let mut rng = stream(3, "octonion-examples");
    for _ in 0..50 {
        let z = random_octonion(&mut rng);
        let sum_sq: C64 = z.c[1..].iter().map(|x| x * x).sum();
        let z0sq = z.c[0] * z.c[0];
        let prod = z.mul(&z.cayley_conj());
        assert!(prod.max_abs_diff(&Octonion::scalar(z0sq + sum_sq)) < 1e-12);
        assert!((z.bilinear_form(&z.cayley_conj()) - (z0sq - sum_sq)).norm() < 1e-12);
        let v = z.imag();
        assert!(v.cross(&v).v.iter().all(|x| x.norm() < 1e-15));
    }
    let e1xe2 = unit(1).imag().cross(&unit(2).imag());
    assert_eq!(e1xe2, unit(1).mul(&unit(2)).imag());
}

#[test]
fn jordan_pairing_and_products() {
    let one = real(1.0);
    let x = JordanElement::diagonal(one, one, one);
    assert_eq!(x.hermitian_pairing(&x), real(3.0));
    let two = real(2.0);
    assert_eq!(x.freudenthal(&x), JordanElement::diagonal(two, two, two));
    assert_eq!(x.freudenthal(&JordanElement::zero()), JordanElement::zero());

    let (alpha, beta) = (c(0.3, -0.4), c(0.1, 0.7));
    let mut y = JordanElement::zero();
    y.o[1] = Octonion::scalar(alpha).add(&unit(1).scale(beta));
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    assert!((y.hermitian_pairing(&y) - real(norm)).norm() < 1e-15);
}

#[test]
fn jordan_adjoint_examples() {
    assert_eq!(
        JordanElement::<C64>::zero().adjoint(),
        JordanElement::zero()
    );
    let (z1, z2, z3) = (c(0.2, 0.1), c(-0.5, 0.3), c(0.7, -0.2));
    let d = JordanElement::diagonal(z1, z2, z3).adjoint();
    let expected = JordanElement::diagonal(z2 * z3, z3 * z1, z1 * z2);
    assert!(d.max_abs_diff(&expected) < 1e-15);

    let (alpha, beta) = (c(0.3, -0.4), c(0.1, 0.7));
    let mut y = JordanElement::zero();
    y.o[1] = Octonion::scalar(alpha).add(&unit(1).scale(beta));
    let expected =
        JordanElement::diagonal(real(0.0), -(alpha * alpha + beta * beta) * 0.5, real(0.0));
    assert!(y.adjoint().max_abs_diff(&expected) < 1e-15);
}

#[test]
fn jordan_triple_examples() {
    let x = JordanElement::diagonal(real(1.0), real(0.0), real(0.0));
    let t = JordanElement::triple_product(&x, &x, &x);
    assert!(t.max_abs_diff(&x.scale(real(2.0))) < 1e-15);
    let zero = JordanElement::zero();
    assert_eq!(JordanElement::triple_product(&zero, &x, &zero), zero);
}

#[test]
fn type_v_subsystem_round_trip_and_closure() {
    assert_eq!(TypeVElement::<C64>::zero().embed(), JordanElement::zero());
    let mut rng = stream(5, "type-v-examples");
    let mut v = || TypeVElement {
        z2: random_octonion(&mut rng),
        z3: random_octonion(&mut rng),
    };
    for _ in 0..20 {
        let (a, b, d) = (v(), v(), v());
        assert_eq!(project_type_v(&a.embed(), 0.0).unwrap(), a);
        let t = JordanElement::triple_product(&a.embed(), &b.embed(), &d.embed());
        assert!(project_type_v(&t, 1e-12).is_ok());
    }
    let mut off = JordanElement::zero();
    off.s[0] = real(1e-3);
    assert!(matches!(
        project_type_v(&off, 1e-12),
        Err(Error::StructureViolation(_))
    ));
}

#[test]
fn invariants_examples() {
    let cases = [
        (CartanKind::VI, (27, 3, 8, 0, 18)),
        (CartanKind::I { n: 2, m: 3 }, (6, 2, 2, 1, 5)),
        (CartanKind::IV { n: 5 }, (5, 2, 3, 0, 5)),
    ];
    for (kind, expected) in cases {
        let inv = invariants(&CartanDomainSpec::new(kind).unwrap()).unwrap();
        assert_eq!(inv.as_tuple(), expected);
        assert!(inv.identities_hold());
    }
}

#[test]
fn generic_norm_examples() {
    let mut z = vec![real(0.0); 5];
    assert_eq!(iv5().generic_norm(&z, NormMode::Diagonal), 1.0);
    z[0] = real(0.5);
    // 1 + |Σ z_j²|² − 2 Σ |z_j|²
    let oracle = 1.0 + 0.25f64.powi(2) - 2.0 * 0.25;
    assert!((iv5().generic_norm(&z, NormMode::Diagonal) - oracle).abs() < 1e-15);
    assert!((oracle - 0.5625).abs() < 1e-15);

    let mut w = vec![real(0.0); 27];
    w[0] = real(0.5);
    assert!((vi().generic_norm(&w, NormMode::Diagonal) - 0.75).abs() < 1e-15);
}

#[test]
fn membership_examples() {
    let vi = vi();
    assert!(vi.membership(&vec![real(0.0); 27]));
    assert!(!disc().membership(&[real(1.5)]));
    let f = PolydiskEmbedding::standard(&vi);
    let z = f.apply(&[real(0.9), real(0.9), real(0.9)]).unwrap();
    assert!(vi.membership(&z));

    let mu = 1.5;
    let hs = HartogsSpec::new(vi.clone(), mu).unwrap();
    assert!(hartogs_membership(&hs, real(0.0), &vec![real(0.0); 27]));
    let u = [c(0.5, 0.1), c(-0.3, 0.2), c(0.0, 0.4)];
    let z = f.apply(&u).unwrap();
    let bound: f64 = u
        .iter()
        .map(|x| 1.0 - x.norm_sqr())
        .product::<f64>()
        .powf(mu);
    for (scale, inside) in [(1.0 - 1e-9, true), (1.0 + 1e-9, false)] {
        let z0 = real((scale * bound).sqrt());
        assert_eq!(hartogs_membership(&hs, z0, &z), inside, "scale {scale}");
    }
}

#[test]
fn potential_examples() {
    for mu in [0.5, 1.0, 2.0] {
        let kind = PotentialKind::Polydisk { r: 1, mu };
        let origin = AmbientPoint::origin(&kind);
        assert_eq!(potential(&kind, &origin).unwrap(), 0.0);
        let t = 0.4;
        let p = AmbientPoint::new(real(0.0), vec![real(t)]);
        let expected = -mu * (1.0 - t * t).ln();
        assert!((potential(&kind, &p).unwrap() - expected).abs() < 1e-14);

        let dual = PotentialKind::DualPolydisk { r: 2, mu };
        let z = vec![c(0.3, -1.2), c(2.0, 0.5)];
        let p = AmbientPoint::new(real(0.0), z.clone());
        let expected: f64 = mu * z.iter().map(|x| (1.0 + x.norm_sqr()).ln()).sum::<f64>();
        assert!((potential(&dual, &p).unwrap() - expected).abs() < 1e-13);
    }
}

#[test]
fn metric_at_origin_examples() {
    let mu = 1.7;
    for kind in [
        PotentialKind::hartogs(disc(), mu),
        PotentialKind::dual_hartogs(disc(), mu),
        PotentialKind::hartogs(vi(), mu),
    ] {
        let g = metric_at(&kind, &AmbientPoint::origin(&kind)).unwrap().g;
        let mut expected = DMatrix::<C64>::identity(kind.dim(), kind.dim()) * real(mu);
        expected[(0, 0)] = real(1.0);
        assert!(max_abs(&(g - expected)) < 1e-14, "{}", kind.label());
    }
}

#[test]
fn metric_derivatives_vanish_at_origin() {
    for kind in [
        PotentialKind::hartogs(iv5(), 1.5),
        PotentialKind::dual_hartogs(vi(), 0.5),
        PotentialKind::Base(spec(r#"{"factors":[{"kind":"I","n":2,"m":3}]}"#)),
    ] {
        let origin = AmbientPoint::origin(&kind);
        for l in 0..kind.dim() {
            let d = metric_derivative_at(&kind, &origin, l).unwrap();
            assert!(max_abs(&d) < 1e-14, "{} direction {l}", kind.label());
        }
        assert!(christoffel_at(&kind, &origin).unwrap().max_abs() < 1e-14);
    }
}

#[test]
fn disc_metric_derivatives_match_closed_form() {
    let kind = PotentialKind::Base(disc());
    let t = c(0.3, -0.2);
    let p = AmbientPoint::new(real(0.0), vec![t]);
    let s = 1.0 - t.norm_sqr();
    // g = (1 − z z̄)^{−2}, so ∂g/∂z = 2 z̄ (1 − |z|²)^{−3}
    assert!((metric_at(&kind, &p).unwrap().g[(0, 0)] - real(s.powi(-2))).norm() < 1e-14);
    let dg = metric_derivative_at(&kind, &p, 0).unwrap()[(0, 0)];
    assert!((dg - t.conj() * (2.0 / s.powi(3))).norm() < 1e-13);
    let gamma = christoffel_at(&kind, &p).unwrap().get(0, 0, 0);
    assert!((gamma - t.conj() * (2.0 / s)).norm() < 1e-13);

    let origin = AmbientPoint::new(real(0.0), vec![real(0.0)]);
    let d2 = metric_second_derivative_at(&kind, &origin, 0, 0).unwrap()[(0, 0)];
    assert!((d2 - real(2.0)).norm() < 1e-13);
    let dual = PotentialKind::DualBase(disc());
    let d2 = metric_second_derivative_at(&dual, &origin, 0, 0).unwrap()[(0, 0)];
    assert!((d2 - real(-2.0)).norm() < 1e-13);
}

#[test]
fn metric_derivative_matches_finite_differences() {
    let kind = PotentialKind::hartogs(iv5(), 1.5);
    let mut rng = stream(11, "fd-examples");
    let hs = kind.hartogs_spec().unwrap();
    let h = 1e-5;
    for _ in 0..5 {
        let p = sampling::hartogs_point_within(&mut rng, &hs, 0.5);
        for l in 0..kind.dim() {
            let shift = |s: f64, dir: C64| {
                let mut w = p.coords(&kind);
                w[l] += dir * s;
                metric_at(&kind, &AmbientPoint::from_coords(&kind, &w))
                    .unwrap()
                    .g
            };
            let dx = (shift(h, real(1.0)) - shift(-h, real(1.0))) / real(2.0 * h);
            let dy = (shift(h, c(0.0, 1.0)) - shift(-h, c(0.0, 1.0))) / real(2.0 * h);
            // ∂/∂z = ½ (∂/∂x − i ∂/∂y)
            let fd = (dx - dy * c(0.0, 1.0)) * real(0.5);
            let jet = metric_derivative_at(&kind, &p, l).unwrap();
            let scale = max_abs(&fd).max(1.0);
            assert!(max_abs(&(jet - &fd)) / scale < 1e-6);
        }
    }
}

#[test]
fn disc_curvature_constants() {
    let mut rng = stream(13, "disc-curvature");
    for _ in 0..10 {
        let t = uniform_disc(&mut rng, 0.9);
        let p = AmbientPoint::new(real(0.0), vec![t]);
        let k = holomorphic_sectional_curvature(&PotentialKind::Base(disc()), &p, &[real(1.0)]);
        assert!((k.unwrap() + 4.0).abs() < 1e-8);
        let t = uniform_disc(&mut rng, 3.0);
        let p = AmbientPoint::new(real(0.0), vec![t]);
        let k = holomorphic_sectional_curvature(&PotentialKind::DualBase(disc()), &p, &[real(1.0)]);
        assert!((k.unwrap() - 4.0).abs() < 1e-8);
    }
}

/// `R_{11̄11̄} / g_{11̄}²` for the coordinate line `w_1`, from finite
/// differences of the metric only.
fn line_curvature_by_differences(kind: &PotentialKind, p: &AmbientPoint, line: usize) -> f64 {
    let h = 1e-4;
    let at = |dx: f64, dy: f64| {
        let mut w = p.coords(kind);
        w[line] += c(dx, dy);
        metric_at(kind, &AmbientPoint::from_coords(kind, &w))
            .unwrap()
            .g
    };
    let g = at(0.0, 0.0);
    let n = g.nrows();
    let dx = (at(h, 0.0) - at(-h, 0.0)) / real(2.0 * h);
    let dy = (at(0.0, h) - at(0.0, -h)) / real(2.0 * h);
    let dz = (&dx - &dy * c(0.0, 1.0)) * real(0.5);
    let dzb = (&dx + &dy * c(0.0, 1.0)) * real(0.5);
    let lap = (at(h, 0.0) + at(-h, 0.0) + at(0.0, h) + at(0.0, -h) - &g * real(4.0)) / real(h * h);
    let ddbar = lap[(line, line)] * 0.25;
    let inv = g.clone().try_inverse().unwrap();
    let a = DMatrix::from_fn(1, n, |_, q| dz[(line, q)]);
    let b = DMatrix::from_fn(n, 1, |q, _| dzb[(q, line)]);
    let contraction = (a * inv * b)[(0, 0)];
    let r = -ddbar + contraction;
    r.re / g[(line, line)].re.powi(2)
}

#[test]
fn fiber_plane_curvature_of_dual_polydisk() {
    for mu in [0.5, 1.0, 2.0, 3.0] {
        let kind = PotentialKind::DualPolydisk { r: 1, mu };
        for w in [0.0, 1.0, 2.0] {
            let p = AmbientPoint::new(real(w), vec![real(0.0)]);
            let k = sectional_curvature(&kind, &p, &SectionalPlane::coordinate(2, 2, 3)).unwrap();
            let oracle = line_curvature_by_differences(&kind, &p, 1);
            assert!(
                (k - oracle).abs() < 1e-5,
                "mu {mu} |w| {w}: {k} vs {oracle}"
            );
            let closed = (2.0 - 2.0 * (mu - 1.0) * w * w) / mu;
            assert!(
                (k - closed).abs() < 1e-8,
                "mu {mu} |w| {w}: {k} vs {closed}"
            );
        }
    }
    let kind = PotentialKind::DualPolydisk { r: 1, mu: 1.0 };
    for w in [0.0, 1.0, 2.0] {
        let p = AmbientPoint::new(real(w), vec![real(0.0)]);
        let k = sectional_curvature(&kind, &p, &SectionalPlane::coordinate(2, 2, 3)).unwrap();
        assert!((k - 2.0).abs() < 1e-6);
    }
}

#[test]
fn rank_two_plane_curvature_of_dual_polydisk() {
    let kind = PotentialKind::DualPolydisk { r: 2, mu: 2.0 };
    for w in [0.0f64, 1.0, 2.0] {
        let p = AmbientPoint::new(real(w), vec![real(0.0), real(0.0)]);
        let k = sectional_curvature(&kind, &p, &SectionalPlane::coordinate(3, 2, 4)).unwrap();
        assert!((k + w * w / 2.0).abs() < 1e-6, "|w| {w}: {k}");
    }
}

#[test]
fn disc_geodesic_follows_tanh_profile() {
    let kind = PotentialKind::Base(disc());
    let start = AmbientPoint::new(real(0.0), vec![real(0.0)]);
    for v in [0.3, 0.8, 1.5] {
        let traj = geodesic_integrate(&kind, &start, &[real(v)], 1.0, 1e-3).unwrap();
        // hyperbolic distance artanh|z| grows at the speed v
        let end = traj.final_position()[0];
        assert!((end - real(v.tanh())).norm() < 1e-9, "v {v}: {end}");
        assert!(traj.energy_drift() < 1e-9);
    }
    let traj = geodesic_integrate(&kind, &start, &[real(0.0)], 0.1, 1e-2).unwrap();
    assert!(traj.positions.iter().all(|p| p[0] == real(0.0)));
}

#[test]
fn hartogs_geodesic_stays_on_polydisk_slice() {
    let vi = vi();
    let kind = PotentialKind::hartogs(vi.clone(), 1.5);
    let f = PolydiskEmbedding::standard(&vi);
    let start = f.hartogs_embed(real(0.1), &[real(0.2), c(0.0, 0.1), real(-0.3)], 1.5);
    let mut velocity = vec![real(0.0); 28];
    velocity[..4].copy_from_slice(&[c(0.1, 0.1), real(0.2), c(-0.1, 0.2), real(0.15)]);
    let traj = geodesic_integrate(&kind, &start.unwrap(), &velocity, 1.0, 1e-3).unwrap();
    let retained: Vec<usize> = (0..4).collect();
    assert!(traj.max_off_subspace(&retained) < 1e-6);
    assert!(traj.energy_drift() < 1e-6);
}

#[test]
fn totally_geodesic_slices_and_negative_control() {
    let vi = vi();
    let mu = 1.5;
    let f = PolydiskEmbedding::standard(&vi);
    let retained = [0, 1, 2, 3];
    let mut rng = stream(17, "slices");
    let hs = HartogsSpec::new(vi.clone(), mu).unwrap();
    let slice: Vec<AmbientPoint> = (0..3)
        .map(|_| sampling::hartogs_slice_point(&mut rng, &hs, &f).0)
        .collect();
    let kind = PotentialKind::hartogs(vi.clone(), mu);
    let report = totally_geodesic_check(&kind, &retained, &slice, 1e-8).unwrap();
    assert!(report.passed, "{report:?}");

    let dual_slice: Vec<AmbientPoint> = (0..3)
        .map(|_| sampling::dual_slice_point(&mut rng, &f, 1.5).0)
        .collect();
    let dual = PotentialKind::dual_hartogs(vi.clone(), mu);
    let report = totally_geodesic_check(&dual, &retained, &dual_slice, 1e-8).unwrap();
    assert!(report.passed, "{report:?}");

    let wrong = [0, 1, 2, 5];
    let generic: Vec<AmbientPoint> = (0..3)
        .map(|_| {
            let mut z = vec![real(0.0); 27];
            for &i in &[0, 1, 4] {
                z[i] = uniform_disc(&mut rng, 0.3);
            }
            AmbientPoint::new(uniform_disc(&mut rng, 0.3), z)
        })
        .collect();
    let report = totally_geodesic_check(&kind, &wrong, &generic, 1e-8).unwrap();
    assert!(report.max_violation > 1e-3, "{report:?}");
}

#[test]
fn embedding_images_and_norms() {
    let f = PolydiskEmbedding::standard(&vi());
    let z = f.apply(&[real(0.5), real(0.0), real(0.0)]).unwrap();
    let mut expected = vec![real(0.0); 27];
    expected[0] = real(0.5);
    assert_eq!(z, expected);
    assert!((vi().generic_norm(&z, NormMode::Diagonal) - 0.75).abs() < 1e-15);

    let v = spec(r#"{"factors":[{"kind":"V"}]}"#);
    let z = PolydiskEmbedding::standard(&v)
        .apply(&[real(0.5), real(0.5)])
        .unwrap();
    assert!((v.generic_norm(&z, NormMode::Diagonal) - 0.5625).abs() < 1e-15);

    let t = c(0.4, -0.3);
    let z = PolydiskEmbedding::standard(&iv5())
        .apply(&[t, real(0.0)])
        .unwrap();
    let expected = vec![t * 0.5, t * c(0.0, 0.5), real(0.0), real(0.0), real(0.0)];
    assert!(z.iter().zip(&expected).all(|(a, b)| (a - b).norm() < 1e-16));
    let norm = iv5().generic_norm(&z, NormMode::Diagonal);
    assert!((norm - (1.0 - t.norm_sqr())).abs() < 1e-15);

    assert!(matches!(
        f.apply(&[real(0.1)]),
        Err(Error::RankMismatch {
            expected: 3,
            got: 1
        })
    ));
}

#[test]
fn factorization_examples() {
    let mut rng = stream(19, "factorization");
    for s in [vi(), spec(r#"{"factors":[{"kind":"II","n":6}]}"#)] {
        let r = s.rank();
        let mut samples = vec![vec![real(0.0); r]];
        samples.extend((0..100).map(|_| polydisk_point(&mut rng, r, 0.95)));
        let report = factorization_check(&s, &samples, 1e-12).unwrap();
        assert!(report.passed, "{}: {report:?}", s.label());
    }
}

#[test]
fn type_ii_block_determinant_is_a_perfect_square() {
    let u = [c(0.3, 0.4), c(-0.6, 0.1), c(0.2, -0.7)];
    // det(I − ZZ*) for Z = diag of blocks [[0, u],[−u, 0]] is ∏(1 − |u|²)²
    let s = spec(r#"{"factors":[{"kind":"II","n":6}]}"#);
    let z = PolydiskEmbedding::standard(&s).apply(&u).unwrap();
    let mut m = DMatrix::<C64>::zeros(6, 6);
    let mut idx = 0;
    for i in 0..6 {
        for j in i + 1..6 {
            m[(i, j)] = z[idx];
            m[(j, i)] = -z[idx];
            idx += 1;
        }
    }
    let det = (DMatrix::identity(6, 6) - &m * m.adjoint())
        .determinant()
        .re;
    let prod: f64 = u.iter().map(|x| 1.0 - x.norm_sqr()).product();
    assert!((det - prod * prod).abs() < 1e-14);
    assert!((s.generic_norm(&z, NormMode::Diagonal) - prod).abs() < 1e-14);
}

#[test]
fn hartogs_and_dual_embeddings() {
    let vi = vi();
    let mu = 1.5;
    let f = PolydiskEmbedding::standard(&vi);
    let hs = HartogsSpec::new(vi.clone(), mu).unwrap();
    let origin = f.hartogs_embed(real(0.0), &[real(0.0); 3], mu).unwrap();
    assert_eq!(origin, AmbientPoint::new(real(0.0), vec![real(0.0); 27]));
    let poly = HartogsSpec::new(SymmetricDomainSpec::polydisk(3), mu).unwrap();
    let mut rng = stream(23, "hartogs-embed");
    for _ in 0..100 {
        let p = hartogs_point(&mut rng, &poly);
        let q = f.hartogs_embed(p.z0, &p.z, mu).unwrap();
        assert!(hartogs_membership(&hs, q.z0, &q.z));
    }
    assert!(matches!(
        f.hartogs_embed(real(0.9), &[real(0.5); 3], mu),
        Err(Error::OutsideDomain)
    ));

    for _ in 0..20 {
        let z: Vec<C64> = uniform_ball(&mut rng, 3, 4.0);
        let neg: Vec<C64> = z.iter().map(|x| -x).collect();
        let a = f.dual_embed(real(0.0), &z).unwrap();
        let b = f.dual_embed(real(0.0), &neg).unwrap();
        assert!(a.z.iter().zip(&b.z).all(|(x, y)| x + y == real(0.0)));
    }
    let z0 = c(1.0, -2.0);
    let p = f.dual_embed(z0, &[real(0.0); 3]).unwrap();
    assert_eq!(p, AmbientPoint::new(z0, vec![real(0.0); 27]));
}

#[test]
fn pullback_isometry_examples() {
    let vi = vi();
    let mu = 1.5;
    let f = PolydiskEmbedding::standard(&vi);
    let mut rng = stream(29, "pullback");
    let poly = HartogsSpec::new(SymmetricDomainSpec::polydisk(3), mu).unwrap();
    for _ in 0..20 {
        let p = hartogs_point(&mut rng, &poly);
        let source = PotentialKind::Polydisk { r: 3, mu };
        let target = PotentialKind::hartogs(vi.clone(), mu);
        assert!(pullback_defect(&source, &target, &p).unwrap() < 1e-10);
        let q = AmbientPoint::new(
            uniform_disc(&mut rng, 2.0),
            polydisk_point(&mut rng, 3, 2.0),
        );
        let source = PotentialKind::DualPolydisk { r: 3, mu };
        let target = PotentialKind::dual_hartogs(vi.clone(), mu);
        assert!(pullback_defect(&source, &target, &q).unwrap() < 1e-10);
    }
    let z = f.apply(&[c(0.1, 0.2), real(0.3), real(-0.4)]).unwrap();
    assert!(vi.membership(&z));
}

#[test]
fn standard_forms() {
    let form = PolydiskEmbedding::standard(&vi()).standard_form();
    assert_eq!(form.retained, [0, 1, 2]);
    assert_eq!(form.permutation, (0..27).collect::<Vec<_>>());
    assert!(form.is_permutation);

    let form = PolydiskEmbedding::standard(&spec(r#"{"factors":[{"kind":"I","n":2,"m":3}]}"#))
        .standard_form();
    // matrix slots (1,1) and (2,2) of a 2 × 3 matrix stored row by row
    assert_eq!(form.retained, [0, 4]);
    assert_eq!(&form.permutation[..2], &[0, 4]);
    assert!(form.is_permutation);

    let form = PolydiskEmbedding::standard(&spec(r#"{"factors":[{"kind":"V"}]}"#)).standard_form();
    assert_eq!(form.retained, [0, 1]);
    assert!(!form.is_permutation);
    let s = FRAC_1_SQRT_2;
    let expected = DMatrix::from_row_slice(2, 2, &[real(s), real(-s), c(0.0, s), c(0.0, s)]);
    assert!(max_abs(&(&form.frame - expected)) < 1e-16);
    let gram = form.frame.adjoint() * &form.frame;
    assert!(max_abs(&(gram - DMatrix::identity(2, 2))) < 1e-15);
}

#[test]
fn rotation_lifts_preserve_the_potential() {
    let mu = 1.5;
    let kind = PotentialKind::hartogs(iv5(), mu);
    let hs = kind.hartogs_spec().unwrap();
    let mut rng = stream(31, "rotation-lift");
    let identity = lift_rotation(0.0, mu);
    let rot = lift_rotation(0.7, mu);
    for _ in 0..20 {
        let p = hartogs_point(&mut rng, &hs);
        assert_eq!(identity.apply(&p).unwrap(), p);
        let q = rot.apply(&p).unwrap();
        assert!(hs.membership(q.z0, &q.z));
        let (a, b) = (potential(&kind, &p).unwrap(), potential(&kind, &q).unwrap());
        assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
    }
}

#[test]
fn mobius_lift_is_an_isometry() {
    let mu = 1.5;
    let kind = PotentialKind::Polydisk { r: 1, mu };
    let hs = kind.hartogs_spec().unwrap();
    let lift = lift_mobius(vec![real(0.3)], mu).unwrap();
    let mut rng = stream(37, "mobius-lift");
    for _ in 0..20 {
        let p = hartogs_point(&mut rng, &hs);
        let q = lift.apply(&p).unwrap();
        assert!(hs.membership(q.z0, &q.z));
        // N(φ(z)) = N(z) |e^h|²
        let h = lift.base.cocycle(&p.z);
        let lhs = 1.0 - q.z[0].norm_sqr();
        let rhs = (1.0 - p.z[0].norm_sqr()) * (h + h.conj()).re.exp();
        assert!((lhs - rhs).abs() < 1e-14);
        assert!(lift.pullback_defect(&kind, &p).unwrap() < 1e-10);
    }
    assert!(matches!(
        lift_mobius(vec![real(1.0)], mu),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn dual_rotation_lift_preserves_the_potential() {
    let kind = PotentialKind::dual_hartogs(iv5(), 1.5);
    let lift = lift_dual_rotation(PI / 3.0);
    let mut rng = stream(41, "dual-rotation");
    for _ in 0..50 {
        let p = AmbientPoint::new(uniform_disc(&mut rng, 2.0), uniform_ball(&mut rng, 5, 2.0));
        let (a, b) = (
            potential(&kind, &p).unwrap(),
            potential(&kind, &lift.apply(&p)).unwrap(),
        );
        assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
        assert_eq!(lift_dual_rotation(0.0).apply(&p), p);
        let composed = lift.compose(&lift_dual_rotation(0.4)).apply(&p);
        let sequential = lift.apply(&lift_dual_rotation(0.4).apply(&p));
        assert!(composed
            .z
            .iter()
            .zip(&sequential.z)
            .all(|(x, y)| (x - y).norm() < 1e-14));
    }
}
