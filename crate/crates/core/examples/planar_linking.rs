//! Linking through two planar degrees, compared with the Gauss integral, for
//! an axisymmetric map seen through the chart family at a base point.
//!
//! ```bash
//! cargo run --example planar_linking
//! ```

use linkprobe::chart::build_family;
use linkprobe::degree::{linking_from_planar_map, linking_via_planar_degree};
use linkprobe::geometry::Point3;
use linkprobe::linking::{linking_gauss, sample_curve};
use linkprobe::sobolev::{catalog, HalfPlaneRestriction, MapField3};
use linkprobe::torus::{mu_a, nu_b, planar_slice, LinkParamA, LinkParamB};

fn main() -> linkprobe::error::Result<()> {
    let family = build_family(Point3::new(2.0, 0.0, 0.0))?;
    let r = family.r_prime;
    let profile = catalog("twisted")?;
    let u = MapField3::Axisym(profile.clone());
    let v = |z: Point3| u.eval(family.t_r(r, z)?);

    for (a1, a2, b1, b2) in [
        (0.0, 0.0, 0.95, 0.0),
        (0.05, -0.04, 0.93, 0.03),
        (-0.06, 0.07, 0.98, -0.05),
    ] {
        let (a, b) = (LinkParamA::new(a1, a2)?, LinkParamB::new(b1, b2)?);
        let gauss = linking_gauss(
            &sample_curve(|t| mu_a(a, t), 512)?.map(v)?,
            &sample_curve(|t| nu_b(b, t), 512)?.map(v)?,
        );
        let fitted = linking_via_planar_degree(&v, a, b, 512)?;
        let slice = planar_slice(a, b)?;
        let w = HalfPlaneRestriction::for_chart(&profile, &family, r, slice.z_level);
        let half = linking_from_planar_map(&w, &slice, 512)?;
        println!(
            "a = ({a1:+.2}, {a2:+.2}) b = ({b1:.2}, {b2:+.2}): gauss {}, fitted plane {} - {} = {}, half-plane {} - {} = {}",
            gauss.value,
            fitted.degree_p.value,
            fitted.degree_q.value,
            fitted.link.value,
            half.degree_p.value,
            half.degree_q.value,
            half.link.value
        );
    }
    Ok(())
}
