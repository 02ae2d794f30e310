use serde::{Deserialize, Serialize};

use super::{winding_number, DegreeResult, Disk, PlanarMap};
use crate::error::{Error, Result};
use crate::geometry::{Mat3, Point2, Point3};
use crate::linking::{polyline_distance, sample_curve, touch_threshold, LinkResult};
use crate::torus::{mu_a, nu_b, planar_slice, LinkParamA, LinkParamB, PlanarSlice};

/// Residual above which the image of the slice is not planar.
pub const PLANARITY_TOLERANCE: f64 = 1e-9;

/// The two degrees entering the planar formula and their difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarLinkOutcome {
    pub link: LinkResult,
    pub degree_p: DegreeResult,
    pub degree_q: DegreeResult,
}

/// `deg(w, S_a, w(p_ab)) - deg(w, S_a, w(q_ab))` for a planar map `w` on the
/// plane of the slice.
pub fn linking_from_planar_map(
    w: &(impl PlanarMap + ?Sized),
    slice: &PlanarSlice,
    n: usize,
) -> Result<PlanarLinkOutcome> {
    let circle = Disk::new(Point2::ZERO, slice.circle_radius)?;
    let degree_p = winding_number(w, circle, w.eval(slice.p_ab), n)?;
    let degree_q = winding_number(w, circle, w.eval(slice.q_ab), n)?;
    let defined = degree_p.defined && degree_q.defined;
    let value = degree_p.value - degree_q.value;
    let link = LinkResult {
        value,
        raw: value as f64,
        min_separation: degree_p.boundary_clearance.min(degree_q.boundary_clearance),
        defined,
    };
    Ok(PlanarLinkOutcome {
        link,
        degree_p,
        degree_q,
    })
}

/// Linking number of `(v o mu_a, v o nu_b)` through the planar formula, for a
/// map `v` that sends the plane `{x3 = a2}` into some affine plane.
///
/// The plane is fitted to samples of `v`; its normal is oriented so that `v`
/// moves forward along it as `x3` increases, and `w` is `v` expressed in a
/// right-handed frame of the plane.
pub fn linking_via_planar_degree(
    v: &(dyn Fn(Point3) -> Result<Point3> + Sync),
    a: LinkParamA,
    b: LinkParamB,
    n: usize,
) -> Result<PlanarLinkOutcome> {
    let slice = planar_slice(a, b)?;
    let z = slice.z_level;
    let lift = |p: Point2| Point3::new(p.x, p.y, z);

    let extent = slice.q_ab.norm().max(slice.circle_radius) * 1.05;
    let mut samples = Vec::new();
    for i in 0..=16 {
        for j in 0..=16 {
            let p = Point2::new(
                -extent + 2.0 * extent * i as f64 / 16.0,
                -extent + 2.0 * extent * j as f64 / 16.0,
            );
            if p.norm() <= extent {
                samples.push(v(lift(p))?);
            }
        }
    }
    let frame = fit_plane(&samples)?;

    // orientation: the normal component of v must increase with x3
    let probe = lift(slice.p_ab);
    let h = 1e-6;
    let climb = (v(probe + Point3::new(0.0, 0.0, h))? - v(probe - Point3::new(0.0, 0.0, h))?).dot(frame.normal);
    let (e1, normal) = if climb > 0.0 {
        (frame.e1, frame.normal)
    } else {
        (-frame.e1, -frame.normal)
    };
    let e2 = normal.cross(e1);
    let origin = frame.centroid;

    let mu = sample_curve(|t| mu_a(a, t), n)?.map(v)?;
    let nu = sample_curve(|t| nu_b(b, t), n)?.map(v)?;
    let sep = polyline_distance(&mu, &nu);
    if sep <= touch_threshold(&mu, &nu) {
        return Err(Error::ImagesTouch(sep));
    }

    let w = |p: Point2| match v(lift(p)) {
        Ok(q) => Point2::new((q - origin).dot(e1), (q - origin).dot(e2)),
        Err(_) => Point2::new(f64::NAN, f64::NAN),
    };
    linking_from_planar_map(&w, &slice, n.max(super::MIN_SAMPLES))
}

struct PlaneFrame {
    centroid: Point3,
    e1: Point3,
    normal: Point3,
}

fn fit_plane(points: &[Point3]) -> Result<PlaneFrame> {
    let n = points.len() as f64;
    let centroid = points.iter().fold(Point3::ZERO, |acc, p| acc + *p) * (1.0 / n);
    let mut cov = Mat3::ZERO;
    for p in points {
        let d = *p - centroid;
        let d = d.to_array();
        for i in 0..3 {
            for j in 0..3 {
                cov.m[i][j] += d[i] * d[j];
            }
        }
    }
    let (values, vectors) = cov.scale(1.0 / n).symmetric_eigen();
    let normal = vectors[0];
    let spread = values[2].max(0.0).sqrt().max(1.0);
    let residual = points
        .iter()
        .map(|p| (*p - centroid).dot(normal).abs())
        .fold(0.0, f64::max);
    if residual > PLANARITY_TOLERANCE * spread {
        return Err(Error::NotPlanar(residual));
    }
    Ok(PlaneFrame {
        centroid,
        e1: vectors[2],
        normal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linking::linking_gauss;

    fn canonical() -> (LinkParamA, LinkParamB) {
        (LinkParamA::new(0.0, 0.0).unwrap(), LinkParamB::canonical())
    }

    #[test]
    fn identity_gives_one() {
        let (a, b) = canonical();
        let out = linking_via_planar_degree(&|p| Ok(p), a, b, 128).unwrap();
        assert_eq!(out.degree_p.degree().unwrap(), 1);
        assert_eq!(out.degree_q.degree().unwrap(), 0);
        assert_eq!(out.link.linking().unwrap(), 1);
    }

    #[test]
    fn rotation_about_the_axis_gives_one() {
        let (a, b) = canonical();
        let (s, c) = 0.8f64.sin_cos();
        let rot = Mat3::from_rows([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]);
        let out = linking_via_planar_degree(&|p| Ok(rot.apply(p)), a, b, 128).unwrap();
        assert_eq!(out.link.linking().unwrap(), 1);
    }

    #[test]
    fn reflection_matches_gauss() {
        let (a, b) = (
            LinkParamA::new(0.05, 0.02).unwrap(),
            LinkParamB::new(0.97, 0.03).unwrap(),
        );
        let refl = Mat3::diag(1.0, -1.0, 1.0);
        let v = |p: Point3| Ok(refl.apply(p));
        let out = linking_via_planar_degree(&v, a, b, 128).unwrap();
        let mu = sample_curve(|t| mu_a(a, t), 128).unwrap().map(v).unwrap();
        let nu = sample_curve(|t| nu_b(b, t), 128).unwrap().map(v).unwrap();
        assert_eq!(out.link.linking().unwrap(), linking_gauss(&mu, &nu).linking().unwrap());
        assert_eq!(out.link.value, -1);
    }

    #[test]
    fn non_planar_map_is_rejected() {
        let (a, b) = canonical();
        let v = |p: Point3| Ok(Point3::new(p.x1, p.x2, p.x3 + 0.1 * p.x1 * p.x1));
        assert!(matches!(
            linking_via_planar_degree(&v, a, b, 64),
            Err(Error::NotPlanar(_))
        ));
    }
}
