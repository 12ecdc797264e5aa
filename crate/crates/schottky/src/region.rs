use hyperbolic::{bisector_arc, geodesic_point, BoundaryCircleArc, Complex64, MoebiusMap};

use crate::group::SchottkyError;
use crate::letter::Letter;
use crate::GAP_THRESHOLD;

/// The closed half-plane D(g) of points at least as close to g(0) as to 0,
/// bounded by the bisector circle C(g) in the disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlaneRegion {
    pub letter: Letter,
    pub center: Complex64,
    pub radius: f64,
    /// Boundary arc of D(g) on the unit circle.
    pub arc: BoundaryCircleArc,
    /// d(0, g 0).
    pub orbit_distance: f64,
}

impl HalfPlaneRegion {
    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() <= self.radius
    }

    pub fn contains_angle(&self, t: f64) -> bool {
        self.arc.contains(t)
    }

    /// Endpoints of C(g) on the unit circle, clockwise end first.
    pub fn endpoints(&self) -> (f64, f64) {
        let c = self.arc.center();
        let r = self.arc.radius();
        (hyperbolic::normalize_angle(c - r), hyperbolic::normalize_angle(c + r))
    }

    /// |C|^2 - R^2 - 1, zero when C(g) meets the unit circle at right angles.
    pub fn orthogonality_defect(&self) -> f64 {
        self.center.norm_sqr() - self.radius * self.radius - 1.0
    }

    /// Points along the geodesic C(g), spread evenly in hyperbolic arclength
    /// over [-span, span] around the point nearest 0.
    pub fn bisector_samples(&self, n: usize, span: f64) -> Vec<Complex64> {
        let (x, y) = self.endpoints();
        (0..n)
            .map(|k| {
                let t = if n == 1 { 0.0 } else { -span + 2.0 * span * k as f64 / (n - 1) as f64 };
                geodesic_point(x, y, t)
            })
            .collect()
    }

    /// Points of D(g): bisector samples pushed towards the boundary arc.
    pub fn interior_samples(&self, n: usize) -> Vec<Complex64> {
        let dir = Complex64::from_polar(1.0, self.arc.center());
        let side = ((n as f64).sqrt().ceil() as usize).max(1);
        let mut out = Vec::with_capacity(n);
        'outer: for on in self.bisector_samples(side, 2.5) {
            for j in 0..side {
                if out.len() == n {
                    break 'outer;
                }
                let s = (j as f64 + 0.5) / side as f64;
                // slide along the ray from `on` to the arc midpoint, staying inside
                out.push(on + (dir - on) * (0.9 * s));
            }
        }
        out
    }
}

/// Region D(g) for the map g labelled `letter`.
pub fn bisector(g: &MoebiusMap, letter: Letter) -> Result<HalfPlaneRegion, SchottkyError> {
    let d = g.base_displacement();
    if !(d > 1e-12) {
        return Err(SchottkyError::DegenerateBisector(letter));
    }
    let dir = g.base_direction();
    let (arc_center, half) = bisector_arc(d, dir);
    let rho = d / 2.0;
    Ok(HalfPlaneRegion {
        letter,
        center: Complex64::from_polar(1.0 / rho.tanh(), dir),
        radius: 1.0 / rho.sinh(),
        arc: BoundaryCircleArc::new(arc_center, half).expect("valid arc"),
        orbit_distance: d,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairGap {
    pub a: Letter,
    pub b: Letter,
    /// Euclidean gap between the closed discs; negative when they overlap.
    pub gap: f64,
    /// Smallest gap the pair is required to keep.
    pub required: f64,
    /// A disc point lying in both regions, when they overlap.
    pub witness: Option<Complex64>,
}

impl PairGap {
    pub fn ok(&self) -> bool {
        self.gap >= self.required
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PingPongReport {
    pub ok: bool,
    pub pairs: Vec<PairGap>,
    /// Smallest gap over the pairs that must be disjoint; the tangent pair
    /// D(p), D(p^-1) is left out.
    pub min_gap: f64,
    /// Distance from 0 to the nearest region, positive when 0 lies outside all.
    pub base_clearance: f64,
}

impl PingPongReport {
    pub fn worst_pair(&self) -> Option<&PairGap> {
        self.pairs.iter().filter(|p| !p.ok()).min_by(|x, y| (x.gap - x.required).total_cmp(&(y.gap - y.required)))
    }
}

/// Pairwise disjointness of the regions. The two regions of the parabolic
/// generator always touch at its fixed point, so that pair only has to avoid
/// overlapping.
pub fn validate_ping_pong(regions: &[HalfPlaneRegion]) -> PingPongReport {
    let mut pairs = Vec::new();
    for i in 0..regions.len() {
        for j in i + 1..regions.len() {
            let (r1, r2) = (&regions[i], &regions[j]);
            let gap = (r1.center - r2.center).norm() - r1.radius - r2.radius;
            let tangent = r1.letter.inverse() == r2.letter && r1.letter.base() == crate::Base::P;
            let required = if tangent { -1e-9 } else { GAP_THRESHOLD };
            let witness = if gap < 0.0 { overlap_witness(r1, r2) } else { None };
            pairs.push(PairGap { a: r1.letter, b: r2.letter, gap, required, witness });
        }
    }
    let min_gap = pairs.iter().filter(|p| p.required > 0.0).map(|p| p.gap).fold(f64::INFINITY, f64::min);
    let base_clearance = regions.iter().map(|r| r.center.norm() - r.radius).fold(f64::INFINITY, f64::min);
    let ok = pairs.iter().all(PairGap::ok) && base_clearance > 0.0;
    PingPongReport { ok, pairs, min_gap, base_clearance }
}

fn overlap_witness(r1: &HalfPlaneRegion, r2: &HalfPlaneRegion) -> Option<Complex64> {
    let d = (r2.center - r1.center).norm();
    if d + r1.radius.min(r2.radius) <= r1.radius.max(r2.radius) {
        // nested: the point of the inner region closest to 0
        let inner = if r1.radius < r2.radius { r1 } else { r2 };
        let u = inner.center / inner.center.norm();
        return Some(u * (inner.center.norm() - inner.radius));
    }
    let a = (r1.radius * r1.radius - r2.radius * r2.radius + d * d) / (2.0 * d);
    let h = (r1.radius * r1.radius - a * a).max(0.0).sqrt();
    let u = (r2.center - r1.center) / d;
    let base = r1.center + u * a;
    let perp = Complex64::new(-u.im, u.re) * h;
    [base + perp, base - perp].into_iter().min_by(|x, y| x.norm().total_cmp(&y.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{build_group, GroupParams};
    use hyperbolic::disc_dist;

    #[test]
    fn bisector_points_are_equidistant() {
        let g = build_group(GroupParams::default()).unwrap();
        for letter in Letter::ALL {
            let r = g.region(letter);
            let img = g.generator(letter).base_image();
            assert!(r.orthogonality_defect().abs() < 1e-9);
            assert!(r.contains(img));
            for z in r.bisector_samples(41, 4.0) {
                let zero = Complex64::new(0.0, 0.0);
                assert!((disc_dist(z, zero) - disc_dist(z, img)).abs() < 1e-9, "{letter}");
                assert!(((z - r.center).norm() - r.radius).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn generator_maps_opposite_region_outside() {
        let g = build_group(GroupParams::default()).unwrap();
        for letter in Letter::ALL {
            let map = g.generator(letter);
            let src = g.region(letter.inverse());
            let dst = g.region(letter);
            let pts = src.interior_samples(100);
            assert_eq!(pts.len(), 100);
            for z in pts {
                assert!(src.contains(z) && z.norm() < 1.0);
                let w = map.apply_complex(z);
                assert!((w - dst.center).norm() >= dst.radius - 1e-9, "{letter}");
            }
        }
    }

    #[test]
    fn h_regions_are_mirror_images() {
        let g = build_group(GroupParams { axis_angle: -0.3, ..GroupParams::default() }).unwrap();
        let a = g.region(Letter::H);
        let b = g.region(Letter::HInv);
        assert!((a.center + b.center).norm() < 1e-12);
        assert!((a.radius - b.radius).abs() < 1e-12);
    }

    #[test]
    fn default_gaps() {
        let g = build_group(GroupParams::default()).unwrap();
        let rep = validate_ping_pong(g.regions());
        assert!(rep.ok);
        assert!(rep.min_gap > 1e-6);
        assert!(rep.base_clearance > 0.0);
        // direct circle-distance oracle for D(h), D(p)
        let (a, b) = (g.region(Letter::H), g.region(Letter::P));
        let direct =
            ((a.center.re - b.center.re).powi(2) + (a.center.im - b.center.im).powi(2)).sqrt() - a.radius - b.radius;
        let listed = rep.pairs.iter().find(|p| p.a == Letter::H && p.b == Letter::P).unwrap();
        assert!((direct - listed.gap).abs() < 1e-15);
        let pp = rep.pairs.iter().find(|p| p.a == Letter::P && p.b == Letter::PInv).unwrap();
        assert!(pp.gap.abs() < 1e-9);
    }

    #[test]
    fn overlap_reports_witness() {
        let gp = build_group(GroupParams::default()).unwrap();
        let e = (0.005f64).exp();
        let h = MoebiusMap::new(e, 0.0, 0.0, 1.0 / e, hyperbolic::Model::Disc).unwrap();
        let regions = [
            bisector(&h, Letter::H).unwrap(),
            bisector(&h.inverse(), Letter::HInv).unwrap(),
            *gp.region(Letter::P),
            *gp.region(Letter::PInv),
        ];
        let rep = validate_ping_pong(&regions);
        assert!(!rep.ok);
        let worst = rep.worst_pair().unwrap();
        assert!(worst.gap < 0.0);
        let w = worst.witness.unwrap();
        assert!(w.norm() < 1.0);
        let find = |l: Letter| regions.iter().find(|r| r.letter == l).unwrap();
        assert!((w - find(worst.a).center).norm() <= find(worst.a).radius + 1e-9);
        assert!((w - find(worst.b).center).norm() <= find(worst.b).radius + 1e-9);
    }
}
