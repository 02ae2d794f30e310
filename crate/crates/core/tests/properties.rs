use std::f64::consts::PI;

use linkprobe::chart::{build_family, chart_l, chart_l_inverse};
use linkprobe::degree::{winding_along, winding_number, Disk, PlanarCatalog, PlanarMap};
use linkprobe::geometry::{rotation_for_halfplane, to_cylindrical, wrap_angle_signed, CylPoint3, Mat3, Point2, Point3};
use linkprobe::linking::{linking_crossings_auto, linking_gauss, sample_curve, ClosedPolyline3};
use linkprobe::sobolev::{catalog, CATALOG};
use linkprobe::torus::{chart_tilde, chart_xi_eta, mu_a, nu_b, phi, LinkParamA, LinkParamB};
use proptest::prelude::*;

fn param_a() -> impl Strategy<Value = LinkParamA> {
    (0.0..0.0999f64, 0.0..2.0 * PI).prop_map(|(rho, t)| LinkParamA::new(rho * t.cos(), rho * t.sin()).unwrap())
}

fn param_b() -> impl Strategy<Value = LinkParamB> {
    (0.0..0.0999f64, 0.0..2.0 * PI).prop_filter_map("|b| < 1", |(rho, t)| {
        LinkParamB::new(1.0 + rho * t.cos(), rho * t.sin()).ok()
    })
}

fn link_pair(a: LinkParamA, b: LinkParamB, n: usize) -> (ClosedPolyline3, ClosedPolyline3) {
    (
        sample_curve(|t| mu_a(a, t), n).unwrap(),
        sample_curve(|t| nu_b(b, t), n).unwrap(),
    )
}

fn rotation(axis: [f64; 3], angle: f64) -> Mat3 {
    let k = Point3::from_array(axis)
        .normalized()
        .unwrap_or(Point3::new(0.0, 0.0, 1.0));
    let (s, c) = angle.sin_cos();
    let kx = Mat3::from_rows([[0.0, -k.x3, k.x2], [k.x3, 0.0, -k.x1], [-k.x2, k.x1, 0.0]]);
    Mat3::IDENTITY.add(&kx.scale(s)).add(&kx.mul(&kx).scale(1.0 - c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cylindrical_roundtrip(r in 1e-3..10.0f64, theta in -PI..PI, z in -5.0..5.0f64) {
        let p = CylPoint3::new(r, theta, z).unwrap().to_cartesian();
        let q = to_cylindrical(p).unwrap().to_cartesian();
        prop_assert!(p.distance(q) < 1e-12);
    }

    #[test]
    fn halfplane_rotation_flattens(angle in -PI..PI, r in 0.1..4.0f64, z in -2.0..2.0f64) {
        let rot = rotation_for_halfplane(angle);
        prop_assert!((rot.det() - 1.0).abs() < 1e-12);
        let p = CylPoint3::new(r, angle, z).unwrap().to_cartesian();
        prop_assert!(rot.apply(p).x3.abs() < 1e-12);
    }

    #[test]
    fn torus_charts_invert_phi(theta in -PI..PI, rho in 1e-3..1.0f64, phi_angle in -PI..PI) {
        let xi = Point2::polar(1.0, theta);
        let eta = Point2::polar(rho, phi_angle);
        let p = phi(xi, eta).unwrap();
        let back = chart_xi_eta(p).unwrap();
        prop_assert!(phi(back.xi, back.eta).unwrap().distance(p) < 1e-10);
        let (xt, et) = chart_tilde(p).unwrap();
        prop_assert!(phi(xt, et).unwrap().distance(p) < 1e-10);
    }

    #[test]
    fn circles_are_fibres(a in param_a(), b in param_b(), t in 0.0..2.0 * PI) {
        let eta = chart_xi_eta(mu_a(a, t)).unwrap().eta;
        prop_assert!(eta.distance(a.get()) < 1e-10);
        let (xt, _) = chart_tilde(nu_b(b, t)).unwrap();
        prop_assert!(xt.distance(b.get()) < 1e-10);
    }

    #[test]
    fn distinct_vertical_circles_are_disjoint(b in param_b(), c in param_b()) {
        prop_assume!(b.get().distance(c.get()) > 1e-6);
        let nb = sample_curve(|t| nu_b(b, t), 64).unwrap();
        let nc = sample_curve(|t| nu_b(c, t), 64).unwrap();
        prop_assert!(linkprobe::linking::polyline_distance(&nb, &nc) > 0.0);
    }

    #[test]
    fn linking_is_symmetric_and_methods_agree(a in param_a(), b in param_b(), seed in 0u64..1000) {
        let (mu, nu) = link_pair(a, b, 64);
        let g = linking_gauss(&mu, &nu);
        prop_assert_eq!(g.linking().unwrap(), 1);
        prop_assert_eq!(linking_gauss(&nu, &mu).linking().unwrap(), 1);
        prop_assert_eq!(linking_crossings_auto(&mu, &nu, seed).unwrap().linking().unwrap(), 1);
    }

    #[test]
    fn linking_invariant_under_rigid_motion_and_scaling(
        a in param_a(), b in param_b(),
        axis in prop::array::uniform3(-1.0..1.0f64), angle in -PI..PI,
        shift in prop::array::uniform3(-10.0..10.0f64), scale in 0.01..100.0f64,
    ) {
        let (mu, nu) = link_pair(a, b, 64);
        let rot = rotation(axis, angle);
        let t = Point3::from_array(shift);
        let motion = |p: Point3| Ok(rot.apply(p) * scale + t);
        let (m2, n2) = (mu.map(motion).unwrap(), nu.map(motion).unwrap());
        prop_assert_eq!(linking_gauss(&m2, &n2).linking().unwrap(), 1);
    }

    #[test]
    fn reflection_and_reversal_negate(a in param_a(), b in param_b()) {
        let (mu, nu) = link_pair(a, b, 64);
        let refl = Mat3::diag(1.0, 1.0, -1.0);
        let m2 = mu.map(|p| Ok(refl.apply(p))).unwrap();
        let n2 = nu.map(|p| Ok(refl.apply(p))).unwrap();
        prop_assert_eq!(linking_gauss(&m2, &n2).linking().unwrap(), -1);
        prop_assert_eq!(linking_gauss(&mu.reversed(), &nu).linking().unwrap(), -1);
    }

    #[test]
    fn winding_number_ignores_the_start_phase(
        shift in 0.0..1.0f64, y in prop::array::uniform2(-0.6..0.6f64), k in 0.0..0.9f64,
    ) {
        let w = PlanarCatalog::Wave { amp: k * 0.5 };
        let y = Point2::new(y[0], y[1]);
        let base = winding_number(&w, Disk::unit(), y, 128).unwrap();
        let shifted = winding_along(|t| w.eval(Disk::unit().boundary(2.0 * PI * (t + shift))), y, 128);
        prop_assert!(base.defined && shifted.defined);
        prop_assert_eq!(base.value, shifted.value);
    }

    #[test]
    fn degree_is_locally_constant(y in prop::array::uniform2(-1.5..1.5f64), dir in 0.0..2.0 * PI) {
        let w = PlanarCatalog::ComplexSquare;
        let y = Point2::new(y[0], y[1]);
        let d = winding_number(&w, Disk::unit(), y, 256).unwrap();
        prop_assume!(d.defined);
        let moved = y + Point2::polar(1e-3 * d.boundary_clearance, dir);
        prop_assert_eq!(winding_number(&w, Disk::unit(), moved, 256).unwrap().value, d.value);
    }

    #[test]
    fn chart_roundtrip(r0 in 0.5..4.0f64, th0 in -PI..PI, z0 in -1.0..1.0f64, y in prop::array::uniform3(-0.05..0.05f64)) {
        let x0 = CylPoint3::new(r0, th0, z0).unwrap().to_cartesian();
        let y = Point3::from_array(y);
        let x = chart_l_inverse(x0, y).unwrap();
        prop_assert!(chart_l(x0, x).unwrap().distance(y) < 1e-10);
    }

    #[test]
    fn chart_sends_halfplanes_to_planes(r0 in 0.5..4.0f64, th0 in -PI..PI, dth in -0.05..0.05f64, dr in -0.05..0.05f64, dz in -0.05..0.05f64) {
        let x0 = CylPoint3::new(r0, th0, 0.0).unwrap().to_cartesian();
        let x = CylPoint3::new(r0 + dr, th0 + dth, dz).unwrap().to_cartesian();
        let y = chart_l(x0, x).unwrap();
        prop_assert!((y.x3 - wrap_angle_signed(dth)).abs() < 1e-12);
    }

    #[test]
    fn axisymmetric_maps_send_halfplanes_to_halfplanes(
        idx in 0usize..CATALOG.len(), theta in -PI..PI, r in 0.2..3.0f64, z in -1.0..1.0f64,
    ) {
        let p = catalog(CATALOG[idx]).unwrap();
        let x = CylPoint3::new(r, theta, z).unwrap().to_cartesian();
        let image = p.eval(x).unwrap();
        let angle = image.x2.atan2(image.x1);
        prop_assert!(wrap_angle_signed(angle - p.theta.eval(theta)).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn refinement_keeps_the_value(a in param_a(), b in param_b()) {
        let (m1, n1) = link_pair(a, b, 256);
        let (m2, n2) = link_pair(a, b, 512);
        let (g1, g2) = (linking_gauss(&m1, &n1), linking_gauss(&m2, &n2));
        prop_assert_eq!(g1.linking().unwrap(), g2.linking().unwrap());
        prop_assert!((g2.raw - 1.0).abs() <= (g1.raw - 1.0).abs() + 1e-12);
    }

    #[test]
    fn chart_family_bounds_hold(r0 in 0.3..4.0f64, th0 in -PI..PI, z0 in -1.0..1.0f64) {
        let f = build_family(CylPoint3::new(r0, th0, z0).unwrap().to_cartesian()).unwrap();
        let rep = linkprobe::chart::verify_family(&f, 100, 11, 3);
        prop_assert!(rep.all_pass, "{:?}", rep.rows);
    }
}
