//! Acceptance criteria 1-10. Each test prints one PASS/FAIL line to stdout,
//! bypassing the test harness capture, then asserts the criterion.

use std::f64::consts::{PI, TAU};
use std::io::Write;
use std::time::Instant;

use linkprobe::chart::{build_family, verify_family, RADIUS_LADDER};
use linkprobe::degree::{
    divergence_identity_residual, linking_from_planar_map, linking_via_planar_degree, preimage_count_degree,
    test_catalog, winding_number, Disk, PlanarCatalog, PlanarMap,
};
use linkprobe::geometry::{CylPoint3, Mat3, Point2, Point3};
use linkprobe::harness::{
    density_catalog, run_coarea_check, run_good_set, run_property_l, run_weak_limit, Fibration, GoodSetConfig,
    GoodSetStatus, MapSpec, Method, PropertyLConfig, SequenceTag, WeakLimitConfig, COAREA_TOLERANCE,
};
use linkprobe::linking::{
    linking_crossings_auto, linking_gauss, near_isometry_experiment, sample_curve, smallest_singular_value,
};
use linkprobe::rng::substream;
use linkprobe::sobolev::{catalog, HalfPlaneRestriction, MapField3};
use linkprobe::torus::{mu_a, nu_b, planar_slice, LinkParamA, LinkParamB};
use rand::Rng;

const SEED: u64 = 20_240_601;

fn report(criterion: u32, passed: bool, detail: &str) {
    let verdict = if passed { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "criterion {criterion:>2}: {verdict} | {detail}");
    let _ = out.flush();
}

fn single_thread<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn criterion_01_canonical_linking() {
    let start = Instant::now();
    let (failures, worst) = single_thread(|| {
        let mut rng = substream(SEED, 1);
        let mut failures = 0;
        let mut worst: f64 = 0.0;
        for i in 0..100u64 {
            let (a, b) = (LinkParamA::sample(&mut rng), LinkParamB::sample(&mut rng));
            let mu = sample_curve(|t| mu_a(a, t), 256).unwrap();
            let nu = sample_curve(|t| nu_b(b, t), 256).unwrap();
            let g = linking_gauss(&mu, &nu);
            let c = linking_crossings_auto(&mu, &nu, SEED + i).unwrap();
            worst = worst.max((g.raw - 1.0).abs());
            if g.linking().ok() != Some(1) || c.linking().ok() != Some(1) || (g.raw - 1.0).abs() >= 1e-6 {
                failures += 1;
            }
        }
        (failures, worst)
    });
    let secs = start.elapsed().as_secs_f64();
    let passed = failures == 0 && secs < 60.0;
    report(
        1,
        passed,
        &format!("100 pairs n=256, failures {failures}, max |raw-1| {worst:.2e} (< 1e-6), {secs:.2} s single-threaded (< 60 s)"),
    );
    assert!(passed);
}

/// Random matrix with the requested determinant sign and condition number at most 1e3.
fn random_matrix<R: Rng>(rng: &mut R, positive: bool) -> Mat3 {
    loop {
        let mut rows = [[0.0; 3]; 3];
        for row in rows.iter_mut() {
            for v in row.iter_mut() {
                *v = rng.gen_range(-2.0..2.0);
            }
        }
        let mut m = Mat3::from_rows(rows);
        if (m.det() > 0.0) != positive {
            rows[0] = rows[0].map(|v| -v);
            m = Mat3::from_rows(rows);
        }
        let Ok(m_star) = smallest_singular_value(&m) else {
            continue;
        };
        if m_star > 0.0 && m.norm() / m_star <= 1e3 {
            return m;
        }
    }
}

#[test]
fn criterion_02_near_isometries() {
    let mut rng = substream(SEED, 2);
    let mut agree = 0;
    for i in 0..200 {
        let positive = i < 100;
        let m = random_matrix(&mut rng, positive);
        let m_star = smallest_singular_value(&m).unwrap();
        let budget = m_star / 20.0;
        let freq: [Point3; 3] = std::array::from_fn(|_| {
            Point3::new(
                rng.gen_range(-6.0..6.0),
                rng.gen_range(-6.0..6.0),
                rng.gen_range(-6.0..6.0),
            )
        });
        let phase: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.0..TAU));
        let scale = budget / 3f64.sqrt();
        let p = move |z: Point3| {
            Point3::new(
                (freq[0].dot(z) + phase[0]).sin(),
                (freq[1].dot(z) + phase[1]).sin(),
                (freq[2].dot(z) + phase[2]).sin(),
            ) * scale
        };
        let (a, b) = (LinkParamA::sample(&mut rng), LinkParamB::sample(&mut rng));
        let rep = near_isometry_experiment(&m, p, a, b, 256).unwrap();
        assert!(rep.perturbation_sup <= budget);
        if rep.link.linking().ok() == Some(if positive { 1 } else { -1 }) {
            agree += 1;
        }
    }
    let passed = agree == 200;
    report(
        2,
        passed,
        &format!("linking = sgn det M in {agree}/200 cases, perturbation sup <= m*/20"),
    );
    assert!(passed);
}

#[test]
fn criterion_03_planar_pipeline() {
    let family = build_family(Point3::new(2.0, 0.0, 0.0)).unwrap();
    let r = family.r_prime;
    let mut summary = Vec::new();
    let mut passed = true;
    for name in ["twisted", "cubic-table", "exponential", "shear"] {
        let profile = catalog(name).unwrap();
        let u = MapField3::Axisym(profile.clone());
        let v = |z: Point3| u.eval(family.t_r(r, z)?);
        let mut rng = substream(SEED, 3);
        let mut equal = 0;
        for _ in 0..50 {
            let (a, b) = (LinkParamA::sample(&mut rng), LinkParamB::sample(&mut rng));
            let mu = sample_curve(|t| mu_a(a, t), 512).unwrap().map(v).unwrap();
            let nu = sample_curve(|t| nu_b(b, t), 512).unwrap().map(v).unwrap();
            let gauss = linking_gauss(&mu, &nu).linking().ok();
            let fitted = linking_via_planar_degree(&v, a, b, 512).unwrap().link.linking().ok();
            let slice = planar_slice(a, b).unwrap();
            let w = HalfPlaneRestriction::for_chart(&profile, &family, r, slice.z_level);
            let halfplane = linking_from_planar_map(&w, &slice, 512).unwrap().link.linking().ok();
            if gauss.is_some() && gauss == fitted && gauss == halfplane {
                equal += 1;
            }
        }
        passed &= equal == 50;
        summary.push(format!("{name} {equal}/50"));
    }
    report(
        3,
        passed,
        &format!("planar degree = Gauss exactly: {}", summary.join(", ")),
    );
    assert!(passed);
}

#[test]
fn criterion_04_degree_equals_preimage_count() {
    let mut summary = Vec::new();
    let mut passed = true;
    for (k, w) in PlanarCatalog::INJECTIVE.iter().enumerate() {
        let mut rng = substream(SEED, 40 + k as u64);
        let (mut agree, mut probes) = (0, 0);
        while probes < 100 {
            let center = Point2::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
            let radius = rng.gen_range(0.3..1.2);
            let disk = Disk::new(center, radius).unwrap();
            let x = center + Point2::new(rng.gen_range(-1.3..1.3), rng.gen_range(-1.3..1.3)) * radius;
            let y = w.eval(x);
            let wind = winding_number(w, disk, y, 256).unwrap();
            if !wind.defined || wind.boundary_clearance < 1e-6 {
                continue;
            }
            probes += 1;
            let pre = preimage_count_degree(w, disk, y, 64).unwrap();
            if pre.defined && pre.value == wind.value {
                agree += 1;
            }
        }
        passed &= agree == 100;
        summary.push(format!("{} {agree}/100", w.name()));
    }
    let sq = PlanarCatalog::ComplexSquare;
    let mut rng = substream(SEED, 49);
    let mut square_two = 0;
    for _ in 0..100 {
        let y = Point2::polar(rng.gen_range(0.05..0.95), rng.gen_range(-PI..PI));
        let wind = winding_number(&sq, Disk::unit(), y, 256).unwrap();
        let pre = preimage_count_degree(&sq, Disk::unit(), y, 64).unwrap();
        if wind.degree().ok() == Some(2) && pre.degree().ok() == Some(2) {
            square_two += 1;
        }
    }
    passed &= square_two == 100;
    report(
        4,
        passed,
        &format!(
            "winding = preimage count: {}; square degree 2 in {square_two}/100",
            summary.join(", ")
        ),
    );
    assert!(passed);
}

fn sweep(map: &str) -> linkprobe::harness::Aggregate {
    let mut cfg = PropertyLConfig::new(MapSpec::Tag(map.into()));
    cfg.n_curve = 128;
    cfg.seed = SEED;
    cfg.method = Method::Both;
    run_property_l(&cfg).unwrap().aggregate
}

#[test]
fn criterion_05_property_l() {
    let mut passed = true;
    let mut summary = Vec::new();
    for name in ["twisted", "cubic-table", "exponential"] {
        let agg = sweep(&format!("axisym:{name}"));
        assert_eq!(agg.samples, 10_000);
        passed &= agg.orientation_preserving && agg.negative == 0;
        summary.push(format!(
            "{name}: {} defined, {} negative, {} disagreements",
            agg.defined, agg.negative, agg.disagreements
        ));
    }
    let control = sweep("diag:1,1,-1");
    let frac = control.minus_one_fraction();
    passed &= frac >= 0.99;
    summary.push(format!("control diag(1,1,-1): {:.2}% are -1 (>= 99%)", 100.0 * frac));
    report(
        5,
        passed,
        &format!("10^4 samples per map at n_curve=128; {}", summary.join("; ")),
    );
    assert!(passed);
}

#[test]
fn criterion_06_coarea_audit() {
    let start = Instant::now();
    let eta = run_coarea_check(Fibration::Eta, 128).unwrap();
    let xi = run_coarea_check(Fibration::XiTilde, 128).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let (e, x) = (&eta.rows[0], &xi.rows[0]);
    let within = |v: f64, target: f64| (v - target).abs() / target < COAREA_TOLERANCE;
    let passed = within(e.lhs, 4.0 * PI * PI)
        && within(e.rhs, 4.0 * PI * PI)
        && within(x.lhs, 4.0 * PI * PI / 3.0)
        && within(x.rhs, 4.0 * PI * PI / 3.0)
        && eta.passed
        && xi.passed
        && x.mismatch_printed > 0.4
        && x.printed_flagged
        && secs < 120.0;
    report(
        6,
        passed,
        &format!(
            "eta {:.6}/{:.6} vs 4pi^2, xi {:.6}/{:.6} vs 4pi^2/3 (< 0.5%); printed xi mismatch {:.1}% flagged={} (> 40%); {secs:.2} s (< 120 s)",
            e.lhs,
            e.rhs,
            x.lhs,
            x.rhs,
            100.0 * x.mismatch_printed,
            x.printed_flagged
        ),
    );
    assert!(passed);
}

#[test]
fn criterion_07_parametrization() {
    let mut rng = substream(SEED, 7);
    let mut ok = 0;
    let mut worst_det: f64 = f64::INFINITY;
    for i in 0..20 {
        let x0 = CylPoint3::new(
            rng.gen_range(0.3..4.0),
            rng.gen_range(-PI..PI),
            rng.gen_range(-1.0..1.0),
        )
        .unwrap()
        .to_cartesian();
        let f = build_family(x0).unwrap();
        let rep = verify_family(&f, 1000, RADIUS_LADDER, SEED + i);
        assert_eq!(rep.rows.len(), RADIUS_LADDER);
        worst_det = rep.rows.iter().map(|r| r.min_det_ratio).fold(worst_det, f64::min);
        if rep.all_pass {
            ok += 1;
        }
    }
    let passed = ok == 20;
    report(
        7,
        passed,
        &format!("{ok}/20 base points pass containment, det and deviation checks on an 11-step ladder; min det ratio {worst_det:.3}"),
    );
    assert!(passed);
}

#[test]
fn criterion_08_weak_limit() {
    let rep = run_weak_limit(&WeakLimitConfig::new(SequenceTag::Oscillation)).unwrap();
    let last = |r: f64| {
        rep.rows
            .iter()
            .rfind(|row| row.radius == r)
            .map(|row| row.estimate)
            .unwrap()
    };
    let detail: Vec<String> = rep
        .summaries
        .iter()
        .map(|s| {
            format!(
                "r={:.4}: estimate at j=64 {:.3}, limit term {:.3}, j0 {:?}",
                s.radius,
                last(s.radius),
                s.limit_term,
                s.j0
            )
        })
        .collect();
    report(
        8,
        rep.passed,
        &format!(
            "threshold delta^3 = {:.3}; {}; limit Jacobian min {:.3e} (>= -1e-10)",
            rep.threshold,
            detail.join("; "),
            rep.limit_jacobian_min
        ),
    );
    assert!(rep.limit_nonnegative);
    assert!(
        rep.estimate_below_threshold,
        "no finite j0 <= 64 brings the estimate below delta^3"
    );
}

#[test]
fn criterion_09_divergence_identities() {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for w in PlanarCatalog::SMOOTH {
        for (phi, g) in test_catalog(Disk::unit()) {
            worst = worst.max(divergence_identity_residual(&w, &phi, &g, 512).abs());
            count += 1;
        }
    }
    let passed = worst < 1e-5;
    report(
        9,
        passed,
        &format!("{count} (map, test function) pairs at quad_n=512, max |R| {worst:.2e} (< 1e-5)"),
    );
    assert!(passed);
}

#[test]
fn criterion_10_good_set() {
    let mut passed = true;
    let mut summary = Vec::new();
    for alpha in [0.5, 0.25] {
        for f in density_catalog() {
            let mut cfg = GoodSetConfig::new(f.clone(), 0.01, alpha);
            cfg.seed = SEED;
            let rep = run_good_set(&cfg).unwrap();
            let ok = rep.hypothesis_holds
                && rep.delta_admissible
                && rep.status == GoodSetStatus::Pass
                && rep.fraction > 1.0 - alpha;
            passed &= ok;
            summary.push(format!(
                "alpha={alpha} {:?}: int f {:.2e} < {:.0e}, fraction {:.4} > {:.2}",
                f,
                rep.integral,
                rep.delta_cubed,
                rep.fraction,
                1.0 - alpha
            ));
        }
    }
    report(10, passed, &summary.join("; "));
    assert!(passed);
}
