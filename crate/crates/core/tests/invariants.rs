//! Counted invariants: fixed sample sizes with seeded streams.

use std::f64::consts::{PI, TAU};

use linkprobe::chart::{build_family, chart_l, chart_l_inverse, verify_family, RADIUS_LADDER};
use linkprobe::degree::{divergence_identity_residual, test_catalog, Disk};
use linkprobe::geometry::{rotation_for_halfplane, wrap_angle_signed, CylPoint3, Mat3, Point3};
use linkprobe::harness::{run_property_l, to_json, MapSpec, PropertyLConfig};
use linkprobe::linking::{linking_crossings_auto, linking_gauss, sample_curve, ClosedPolyline3};
use linkprobe::rng::substream;
use linkprobe::sobolev::{catalog, catalog_orientation_preserving, restrict_to_halfplane, MapField3, CATALOG};
use linkprobe::torus::{chart_tilde, chart_xi_eta, mu_a, nu_b, phi, LinkParamA, LinkParamB};
use rand::Rng;

const SEED: u64 = 77;

fn canonical_pair<R: Rng>(rng: &mut R, n: usize) -> (ClosedPolyline3, ClosedPolyline3) {
    let (a, b) = (LinkParamA::sample(rng), LinkParamB::sample(rng));
    (
        sample_curve(|t| mu_a(a, t), n).unwrap(),
        sample_curve(|t| nu_b(b, t), n).unwrap(),
    )
}

fn random_anuloid_point<R: Rng>(rng: &mut R) -> Point3 {
    let s = rng.gen::<f64>().sqrt() * 0.999;
    let (psi, theta) = (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
    CylPoint3::new(2.0 + s * psi.cos(), theta, s * psi.sin())
        .unwrap()
        .to_cartesian()
}

#[test]
fn halfplane_rotation_on_a_grid_of_angles() {
    let mut rng = substream(SEED, 0);
    for _ in 0..100 {
        let theta = rng.gen_range(-PI..PI);
        let rot = rotation_for_halfplane(theta);
        assert!((rot.det() - 1.0).abs() < 1e-12);
        for _ in 0..100 {
            let p = CylPoint3::new(rng.gen_range(0.01..5.0), theta, rng.gen_range(-3.0..3.0))
                .unwrap()
                .to_cartesian();
            assert!(rot.apply(p).x3.abs() < 1e-12);
        }
    }
}

#[test]
fn torus_charts_on_ten_thousand_points() {
    let mut rng = substream(SEED, 1);
    for _ in 0..10_000 {
        let x = random_anuloid_point(&mut rng);
        let c = chart_xi_eta(x).unwrap();
        assert!(phi(c.xi, c.eta).unwrap().distance(x) < 1e-10);
        if let Ok((xt, et)) = chart_tilde(x) {
            assert!(phi(xt, et).unwrap().distance(x) < 1e-10);
        }
    }
}

#[test]
fn fibres_match_their_parameters() {
    let mut rng = substream(SEED, 2);
    for _ in 0..100 {
        let (a, b, t) = (
            LinkParamA::sample(&mut rng),
            LinkParamB::sample(&mut rng),
            rng.gen_range(0.0..TAU),
        );
        assert!(chart_xi_eta(mu_a(a, t)).unwrap().eta.distance(a.get()) < 1e-10);
        assert!(chart_tilde(nu_b(b, t)).unwrap().0.distance(b.get()) < 1e-10);
    }
}

#[test]
fn gauss_and_crossings_agree_on_canonical_links() {
    let mut rng = substream(SEED, 3);
    for i in 0..500 {
        let (mu, nu) = canonical_pair(&mut rng, 64);
        let g = linking_gauss(&mu, &nu).linking().unwrap();
        let c = linking_crossings_auto(&mu, &nu, i).unwrap().linking().unwrap();
        assert_eq!((g, c), (1, 1));
        assert_eq!(linking_gauss(&nu, &mu).linking().unwrap(), 1);
    }
}

#[test]
fn gauss_and_crossings_agree_on_perturbed_links() {
    let mut rng = substream(SEED, 4);
    for i in 0..100 {
        let (mu, nu) = canonical_pair(&mut rng, 128);
        let k: [f64; 3] = std::array::from_fn(|_| rng.gen_range(1.0..8.0));
        let eps = rng.gen_range(0.0..0.03);
        let wobble =
            |p: Point3| Ok(p + Point3::new((k[0] * p.x2).sin(), (k[1] * p.x3).sin(), (k[2] * p.x1).sin()) * eps);
        let (m2, n2) = (mu.map(wobble).unwrap(), nu.map(wobble).unwrap());
        let g = linking_gauss(&m2, &n2).linking().unwrap();
        let c = linking_crossings_auto(&m2, &n2, i).unwrap().linking().unwrap();
        assert_eq!(g, c);
    }
}

#[test]
fn linking_survives_rigid_motions_and_scalings() {
    let mut rng = substream(SEED, 5);
    let (mu, nu) = canonical_pair(&mut rng, 128);
    for _ in 0..20 {
        let (s, c) = rng.gen_range(-PI..PI).sin_cos();
        let rot = Mat3::from_rows([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
            .mul(&rotation_for_halfplane(rng.gen_range(-PI..PI)).transpose());
        let scale = rng.gen_range(0.01..100.0);
        let t = Point3::new(
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
        );
        let motion = |p: Point3| Ok(rot.apply(p) * scale + t);
        let (m2, n2) = (mu.map(motion).unwrap(), nu.map(motion).unwrap());
        assert_eq!(linking_gauss(&m2, &n2).linking().unwrap(), 1);
    }
    let refl = Mat3::diag(1.0, 1.0, -1.0);
    let flip = |p: Point3| Ok(refl.apply(p));
    assert_eq!(
        linking_gauss(&mu.map(flip).unwrap(), &nu.map(flip).unwrap())
            .linking()
            .unwrap(),
        -1
    );
}

#[test]
fn axisymmetric_maps_respect_halfplanes() {
    let mut rng = substream(SEED, 6);
    for name in CATALOG {
        let p = catalog(name).unwrap();
        for _ in 0..50 {
            let theta = rng.gen_range(-PI..PI);
            let x = CylPoint3::new(rng.gen_range(0.5..3.0), theta, rng.gen_range(-1.0..1.0))
                .unwrap()
                .to_cartesian();
            let y = p.eval(x).unwrap();
            assert!(
                wrap_angle_signed(y.x2.atan2(y.x1) - p.theta.eval(theta)).abs() < 1e-10,
                "{name}"
            );
        }
    }
}

#[test]
fn jacobians_match_finite_differences_and_stay_positive() {
    for name in CATALOG {
        let u = MapField3::Axisym(catalog(name).unwrap());
        let mut rng = substream(SEED, 7);
        for _ in 0..1000 {
            let x = random_anuloid_point(&mut rng);
            let analytic = u.jacobian(x).unwrap();
            let fd = u.fd_differential(x, 1e-6).unwrap().det();
            assert!(
                (analytic - fd).abs() / analytic.abs().max(1.0) < 1e-5,
                "{name}: {analytic} vs {fd}"
            );
        }
        if catalog_orientation_preserving(name) {
            for _ in 0..10_000 {
                assert!(u.jacobian(random_anuloid_point(&mut rng)).unwrap() > 0.0, "{name}");
            }
        }
    }
}

#[test]
fn halfplane_restrictions_satisfy_the_divergence_identities() {
    for name in CATALOG.into_iter().filter(|n| catalog_orientation_preserving(n)) {
        let w = restrict_to_halfplane(&MapField3::Axisym(catalog(name).unwrap()), 0.7, 2.0, 0.0, 1.0).unwrap();
        for (phi, g) in test_catalog(Disk::unit()) {
            let r = divergence_identity_residual(&w, &phi, &g, 256);
            assert!(r.abs() < 1e-5, "{name}: {r}");
        }
    }
}

#[test]
fn chart_inverse_and_plane_membership() {
    let mut rng = substream(SEED, 8);
    let x0 = CylPoint3::new(1.7, 0.4, -0.2).unwrap();
    let f = build_family(x0.to_cartesian()).unwrap();
    for _ in 0..100 {
        let dth = rng.gen_range(-0.05..0.05);
        let x = CylPoint3::new(
            x0.r + rng.gen_range(-0.05..0.05),
            x0.theta + dth,
            x0.z + rng.gen_range(-0.05..0.05),
        )
        .unwrap()
        .to_cartesian();
        let y = chart_l(f.x0, x).unwrap();
        assert!((y.x3 - dth).abs() < 1e-12);
        assert!(chart_l_inverse(f.x0, y).unwrap().distance(x) < 1e-10);
    }
    let rep = verify_family(&f, 500, RADIUS_LADDER, SEED);
    assert!(rep.all_pass && rep.decreasing);
}

fn small_sweep(map: &str) -> PropertyLConfig {
    let mut cfg = PropertyLConfig::new(MapSpec::Tag(map.into()));
    cfg.n_a = 20;
    cfg.n_b = 20;
    cfg.seed = SEED;
    cfg
}

#[test]
fn sweeps_are_deterministic_and_mostly_defined() {
    for map in ["axisym:twisted", "axisym:sine-angle", "axisym:oscillating"] {
        let cfg = small_sweep(map);
        let first = run_property_l(&cfg).unwrap();
        let second = run_property_l(&cfg).unwrap();
        assert_eq!(to_json(&first).unwrap(), to_json(&second).unwrap());
        let agg = &first.aggregate;
        assert!(agg.undefined_fraction() < 0.01, "{map}: {}", agg.undefined_fraction());
        assert_eq!(agg.disagreements, 0, "{map}");
        assert_eq!(agg.negative, 0, "{map}");
    }
}

#[test]
fn reversing_control_is_negative() {
    let agg = run_property_l(&small_sweep("axisym:axial-flip")).unwrap().aggregate;
    assert!(agg.minus_one_fraction() >= 0.99);
    assert_eq!(agg.disagreements, 0);
}
