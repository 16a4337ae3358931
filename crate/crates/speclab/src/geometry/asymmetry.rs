//! Asymmetry functionals: Fraenkel asymmetry, the two-ball Fraenkel variant,
//! the inradius and two-ball-sandwich asymmetries and the alpha functional.

use super::clip::{disc_intersection_area, lens_area};
use super::optim::{chebyshev_center, minimal_enclosing_ball, nelder_mead, nelder_mead_2d};
use super::{Ball, Domain, Point};
use crate::{Error, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AsymmetryKind {
    Fraenkel,
    Fraenkel2,
    DN,
    DM,
    Alpha,
}

/// One asymmetry value together with the optimizer witness.
#[derive(Debug, Clone, Serialize)]
pub struct AsymmetryReport {
    pub kind: AsymmetryKind,
    pub value: f64,
    pub witness: Vec<Ball>,
    /// True when the value comes from a non-certified search and therefore
    /// only upper-bounds the true infimum.
    pub is_upper_bound: bool,
}

fn bbox(domain: &Domain) -> (Point, Point) {
    let mut lo = Point::new(f64::MAX, f64::MAX);
    let mut hi = Point::new(f64::MIN, f64::MIN);
    for p in domain.loops().flatten() {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

/// Fraenkel asymmetry: inf over equal-measure balls B of |Omega Delta B|/|Omega|.
///
/// The ball radius is fixed; the center is found by a deterministic
/// multi-start Nelder-Mead ascent of the overlap. The result is an upper
/// bound for the infimum (global optimality is not certified).
pub fn fraenkel_asymmetry(domain: &Domain, hint: Option<Point>) -> AsymmetryReport {
    let area = domain.measure();
    let radius = domain.equivalent_radius();
    let overlap = |c: Point| -> f64 {
        disc_intersection_area(domain, &Ball { center: c, radius })
    };
    let mut starts: Vec<Point> = vec![domain.barycenter(), domain.boundary_barycenter()];
    if let Some(h) = hint {
        starts.push(h);
    }
    let f = super::basic_functionals(domain);
    starts.push(f.inradius_center);
    // Coarse grid over the bounding box, keeping the most promising cells.
    let (lo, hi) = bbox(domain);
    let mut grid: Vec<(f64, Point)> = Vec::new();
    let g = 7;
    for i in 0..=g {
        for j in 0..=g {
            let p = Point::new(
                lo.x + (hi.x - lo.x) * i as f64 / g as f64,
                lo.y + (hi.y - lo.y) * j as f64 / g as f64,
            );
            grid.push((overlap(p), p));
        }
    }
    grid.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    starts.extend(grid.into_iter().take(4).map(|(_, p)| p));

    let mut best: Vec<(f64, Point)> = starts
        .iter()
        .map(|&s| {
            let (p, v) = nelder_mead_2d(|c| -overlap(c), s, 0.25 * radius, 400, 1e-11 * radius);
            (-v, p)
        })
        .collect();
    best.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .unwrap()
            .then(a.1.x.partial_cmp(&b.1.x).unwrap())
            .then(a.1.y.partial_cmp(&b.1.y).unwrap())
    });
    let (max_overlap, center) = best[0];
    let value = (2.0 * (area - max_overlap) / area).max(0.0);
    AsymmetryReport {
        kind: AsymmetryKind::Fraenkel,
        value,
        witness: vec![Ball { center, radius }],
        is_upper_bound: true,
    }
}

/// Fraenkel 2-asymmetry against pairs of disjoint balls of measure |Omega|/2.
pub fn fraenkel_2_asymmetry(domain: &Domain) -> AsymmetryReport {
    let area = domain.measure();
    let radius = (area / (2.0 * std::f64::consts::PI)).sqrt();
    let union_overlap = |cp: Point, cm: Point| -> f64 {
        let bp = Ball { center: cp, radius };
        let bm = Ball { center: cm, radius };
        let mut acc = disc_intersection_area(domain, &bp) + disc_intersection_area(domain, &bm);
        let lens = lens_area(&bp, &bm);
        if lens > 0.0 {
            // Inclusion-exclusion with the exact lens of the two balls; only
            // active while the penalized search is infeasible.
            acc -= lens;
        }
        acc
    };
    let penalized = |x: &[f64]| -> f64 {
        let cp = Point::new(x[0], x[1]);
        let cm = Point::new(x[2], x[3]);
        let d = cp.dist(cm);
        let gap = (2.0 * radius - d).max(0.0);
        -union_overlap(cp, cm) + area * (gap / radius).powi(2)
    };
    let c0 = domain.barycenter();
    let mut starts: Vec<[f64; 4]> = Vec::new();
    for k in 0..4 {
        let t = std::f64::consts::PI * k as f64 / 4.0;
        let v = Point::new(t.cos(), t.sin());
        for sep in [1.0, 1.6] {
            let off = v * (radius * sep);
            starts.push([c0.x + off.x, c0.y + off.y, c0.x - off.x, c0.y - off.y]);
        }
    }
    let mut best: Vec<(f64, Point, Point)> = starts
        .iter()
        .map(|s| {
            let (x, _) = nelder_mead(penalized, s, 0.3 * radius, 600, 1e-11 * radius);
            let mut cp = Point::new(x[0], x[1]);
            let mut cm = Point::new(x[2], x[3]);
            // Project onto the disjointness constraint before scoring.
            let d = cp.dist(cm);
            if d < 2.0 * radius {
                let axis = if d > 1e-12 {
                    (cp - cm) * (1.0 / d)
                } else {
                    Point::new(1.0, 0.0)
                };
                let mid = (cp + cm) * 0.5;
                cp = mid + axis * radius;
                cm = mid - axis * radius;
            }
            (union_overlap(cp, cm), cp, cm)
        })
        .collect();
    best.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .unwrap()
            .then(a.1.x.partial_cmp(&b.1.x).unwrap())
            .then(a.1.y.partial_cmp(&b.1.y).unwrap())
    });
    let (overlap, cp, cm) = best[0];
    let value = ((area + 2.0 * std::f64::consts::PI * radius * radius - 2.0 * overlap) / area).max(0.0);
    AsymmetryReport {
        kind: AsymmetryKind::Fraenkel2,
        value,
        witness: vec![Ball { center: cp, radius }, Ball { center: cm, radius }],
        is_upper_bound: true,
    }
}

/// The inradius asymmetry d_N = 1 - r_Omega / R_Omega.
pub fn dn_asymmetry(domain: &Domain) -> AsymmetryReport {
    let f = super::basic_functionals(domain);
    AsymmetryReport {
        kind: AsymmetryKind::DN,
        value: (1.0 - f.inradius / f.equivalent_radius).max(0.0),
        witness: vec![Ball { center: f.inradius_center, radius: f.inradius }],
        is_upper_bound: !f.inradius_exact,
    }
}

/// Two-ball sandwich asymmetry d_M over a finite candidate set of centers
/// (Chebyshev center, enclosing-ball center, barycenter, local scan), with
/// the exact inscribed and enclosing balls at each candidate.
///
/// Requires a convex domain: the candidate construction inscribes a ball at
/// distance-to-boundary, which needs convexity to stay inside.
pub fn dm_asymmetry(domain: &Domain) -> Result<AsymmetryReport> {
    if !domain.is_convex() {
        return Err(Error::UnsupportedInput(
            "d_M asymmetry is only computed on convex domains".into(),
        ));
    }
    let area = domain.measure();
    let verts: Vec<Point> = domain.outer.clone();
    let score = |c: Point| -> (f64, f64, f64) {
        let r1 = if domain.contains(c) { domain.boundary_distance(c) } else { 0.0 };
        let r2 = verts.iter().map(|p| p.dist(c)).fold(0.0f64, f64::max);
        let inner = 1.0 - std::f64::consts::PI * r1 * r1 / area;
        let outer = 1.0 - area / (std::f64::consts::PI * r2 * r2);
        (inner.max(outer), r1, r2)
    };
    let (cheb, _) = chebyshev_center(&domain.outer);
    let (meb, _) = minimal_enclosing_ball(&verts, 0x5eed);
    let mut candidates = vec![cheb, meb, domain.barycenter()];
    // Joint scan: polish the max criterion from the Chebyshev start.
    let (scan, _) = nelder_mead_2d(
        |c| score(c).0,
        cheb,
        0.2 * domain.equivalent_radius(),
        300,
        1e-10 * domain.equivalent_radius(),
    );
    candidates.push(scan);
    let mut best: Vec<(f64, Point, f64, f64)> = candidates
        .into_iter()
        .map(|c| {
            let (v, r1, r2) = score(c);
            (v, c, r1, r2)
        })
        .collect();
    best.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap()
            .then(a.1.x.partial_cmp(&b.1.x).unwrap())
            .then(a.1.y.partial_cmp(&b.1.y).unwrap())
    });
    let (value, c, r1, r2) = best[0];
    Ok(AsymmetryReport {
        kind: AsymmetryKind::DM,
        value: value.max(0.0),
        witness: vec![Ball { center: c, radius: r1 }, Ball { center: c, radius: r2 }],
        is_upper_bound: true,
    })
}

/// The alpha asymmetry: integral of |1 - |x - x_Omega|| over the symmetric
/// difference with the unit ball at the barycenter, evaluated on the copy of
/// the domain normalized to measure pi (so it is scale and translation
/// invariant by construction).
pub fn alpha_asymmetry(domain: &Domain) -> AsymmetryReport {
    let (norm, center, scale) = domain.normalized();
    let area = std::f64::consts::PI;
    let overlap = |rho: f64| -> f64 {
        if rho <= 0.0 {
            0.0
        } else {
            disc_intersection_area(&norm, &Ball { center: Point::new(0.0, 0.0), radius: rho })
        }
    };
    let rho_max = norm.loops().flatten().map(|p| p.norm()).fold(0.0f64, f64::max);
    // Layer-cake split: integral over Omega \ B_1 of (|x|-1) plus integral
    // over B_1 \ Omega of (1-|x|), both as 1D integrals of exact clip areas.
    let outer_part = if rho_max > 1.0 {
        crate::quad::gauss_integrate(|t| area - overlap(1.0 + t), 0.0, rho_max - 1.0, 16, 8)
    } else {
        0.0
    };
    let inner_part = crate::quad::gauss_integrate(
        |t| {
            let r = 1.0 - t;
            std::f64::consts::PI * r * r - overlap(r)
        },
        0.0,
        1.0,
        16,
        8,
    );
    AsymmetryReport {
        kind: AsymmetryKind::Alpha,
        value: (outer_part + inner_part).max(0.0),
        witness: vec![Ball { center, radius: 1.0 / scale }],
        is_upper_bound: false,
    }
}

/// The structured asymmetries bundle: d_N always, d_M on convex domains
/// (None otherwise), alpha always.
#[derive(Debug, Clone, Serialize)]
pub struct StructuredAsymmetries {
    pub dn: AsymmetryReport,
    pub dm: Option<AsymmetryReport>,
    pub alpha: AsymmetryReport,
}

pub fn structured_asymmetries(domain: &Domain) -> StructuredAsymmetries {
    StructuredAsymmetries {
        dn: dn_asymmetry(domain),
        dm: dm_asymmetry(domain).ok(),
        alpha: alpha_asymmetry(domain),
    }
}

/// Hausdorff distance between the domain and a ball, from dense boundary
/// sampling of both sets (exact in the limit for convex domains).
pub fn hausdorff_to_ball(domain: &Domain, ball: &Ball, resolution: f64) -> f64 {
    let poly_pts = domain.boundary_samples(resolution);
    let mut d1: f64 = 0.0; // sup over Omega of dist(x, ball)
    for p in &poly_pts {
        d1 = d1.max((p.dist(ball.center) - ball.radius).max(0.0));
    }
    let n = ((2.0 * std::f64::consts::PI * ball.radius / resolution).ceil() as usize).max(16);
    let mut d2: f64 = 0.0; // sup over ball of dist(y, Omega)
    for i in 0..n {
        let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
        let q = Point::new(
            ball.center.x + ball.radius * t.cos(),
            ball.center.y + ball.radius * t.sin(),
        );
        if !domain.contains(q) {
            d2 = d2.max(domain.boundary_distance(q));
        }
    }
    d1.max(d2)
}

/// Shell radii R_1 <= R_Omega <= R_2 of the symmetric difference with the
/// centered equal-measure ball; expects the domain already normalized so
/// that Omega* is centered at the origin.
pub fn shell_radii(domain: &Domain) -> (f64, f64) {
    let area = domain.measure();
    let r_eq = domain.equivalent_radius();
    let inter = disc_intersection_area(
        domain,
        &Ball { center: Point::new(0.0, 0.0), radius: r_eq },
    );
    let r1 = (inter / std::f64::consts::PI).sqrt();
    let r2 = ((2.0 * area - inter) / std::f64::consts::PI).sqrt();
    (r1, r2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rectangle, regular_polygon};
    use approx::assert_relative_eq;

    fn area_pi_square() -> Domain {
        let a = std::f64::consts::PI.sqrt() / 2.0;
        rectangle("square-pi", -a, -a, a, a)
    }

    #[test]
    fn fraenkel_near_ball_small() {
        let poly = regular_polygon("256-gon", 256, 1.0, Point::new(0.0, 0.0));
        let rep = fraenkel_asymmetry(&poly, None);
        assert!(rep.value < 1e-3, "got {}", rep.value);
        assert!(rep.is_upper_bound);
    }

    #[test]
    fn fraenkel_square_matches_segment_formula() {
        // For the square of measure pi the optimal ball sits at the center by
        // symmetry; the value follows from four circular segments of the unit
        // disc cut at distance a = sqrt(pi)/2:
        //   A = 2 * 4 * (acos(a) - a sqrt(1-a^2)) / pi.
        let sq = area_pi_square();
        let a = std::f64::consts::PI.sqrt() / 2.0;
        let seg = a.acos() - a * (1.0 - a * a).sqrt();
        let expect = 8.0 * seg / std::f64::consts::PI;
        let rep = fraenkel_asymmetry(&sq, None);
        assert_relative_eq!(rep.value, expect, max_relative = 1e-6);
        assert!(rep.witness[0].center.norm() < 1e-4);
        // Dense center-grid oracle cannot beat the symmetric center.
        let radius = sq.equivalent_radius();
        let mut best = 0.0f64;
        for i in -6..=6 {
            for j in -6..=6 {
                let c = Point::new(i as f64 * 0.05, j as f64 * 0.05);
                best = best.max(disc_intersection_area(&sq, &Ball { center: c, radius }));
            }
        }
        let grid_value = 2.0 * (sq.measure() - best) / sq.measure();
        assert!(rep.value <= grid_value + 1e-9);
    }

    #[test]
    fn fraenkel_scale_and_translation_invariant() {
        let l = crate::geometry::Domain::new(
            "l",
            vec![
                Point::new(0.0, 0.0),
                Point::new(2.0, 0.0),
                Point::new(2.0, 1.0),
                Point::new(1.0, 1.0),
                Point::new(1.0, 2.0),
                Point::new(0.0, 2.0),
            ],
            vec![],
        )
        .unwrap()
        .0;
        let base = fraenkel_asymmetry(&l, None).value;
        for t in [0.5, 2.0, 7.0] {
            let v = fraenkel_asymmetry(&l.scaled(t), None).value;
            assert_relative_eq!(v, base, max_relative = 1e-9);
        }
        let moved = l.translated(Point::new(3.25, -1.5));
        assert_relative_eq!(fraenkel_asymmetry(&moved, None).value, base, max_relative = 1e-7);
    }

    #[test]
    fn fraenkel2_two_far_discs_small() {
        // A connected thin-bridge shape is not needed: measure directly on a
        // polygonal pair approximation via a two-lobe domain from the family
        // generator is covered elsewhere; here use one disc (positivity) and
        // the trivial two-disc layout through the sweep module later.
        let disc = regular_polygon("disc-2pi", 256, 2.0f64.sqrt(), Point::new(0.0, 0.0));
        let rep = fraenkel_2_asymmetry(&disc);
        assert!(rep.value > 0.05, "single disc must be far from two-ball pairs");
        // Symmetric 1D scan oracle: centers at (+-d, 0).
        let area = disc.measure();
        let radius = (area / (2.0 * std::f64::consts::PI)).sqrt();
        let mut best = 0.0f64;
        let mut d = radius;
        while d < 2.5 * radius {
            let bp = Ball { center: Point::new(d, 0.0), radius };
            let bm = Ball { center: Point::new(-d, 0.0), radius };
            if bp.center.dist(bm.center) >= 2.0 * radius {
                best = best.max(
                    disc_intersection_area(&disc, &bp) + disc_intersection_area(&disc, &bm),
                );
            }
            d += 0.002 * radius;
        }
        let oracle = (area + 2.0 * std::f64::consts::PI * radius * radius - 2.0 * best) / area;
        assert!(rep.value <= oracle + 1e-6);
        assert_relative_eq!(rep.value, oracle, max_relative = 1e-3);
    }

    #[test]
    fn dn_dm_alpha_on_rectangle() {
        let r = rectangle("2x1", 0.0, 0.0, 2.0, 1.0);
        let s = structured_asymmetries(&r);
        assert_relative_eq!(s.dn.value, 0.3734, max_relative = 1e-3);
        let dm = s.dm.expect("rectangle is convex");
        assert!(dm.value > 0.0 && dm.value < 1.0);
        // Candidate-scan oracle: the center candidate bounds from above.
        let area = r.measure();
        let c = Point::new(1.0, 0.5);
        let r1 = 0.5;
        let r2 = (1.0f64 + 0.25).sqrt();
        let inner = 1.0 - std::f64::consts::PI * r1 * r1 / area;
        let outer = 1.0 - area / (std::f64::consts::PI * r2 * r2);
        assert!(dm.value <= inner.max(outer) + 1e-12);
        assert!(c.dist(dm.witness[0].center) < 1.0);
        assert!(s.alpha.value > 0.0);
    }

    #[test]
    fn dm_rejects_nonconvex() {
        let l = crate::geometry::Domain::new(
            "l",
            vec![
                Point::new(0.0, 0.0),
                Point::new(2.0, 0.0),
                Point::new(2.0, 1.0),
                Point::new(1.0, 1.0),
                Point::new(1.0, 2.0),
                Point::new(0.0, 2.0),
            ],
            vec![],
        )
        .unwrap()
        .0;
        assert!(dm_asymmetry(&l).is_err());
    }

    #[test]
    fn ball_like_all_small() {
        let poly = regular_polygon("256-gon", 256, 1.0, Point::new(0.0, 0.0));
        let s = structured_asymmetries(&poly);
        assert!(s.dn.value < 1e-2);
        assert!(s.dm.unwrap().value < 1e-2);
        assert!(s.alpha.value < 1e-2);
    }

    #[test]
    fn alpha_positive_for_square_and_invariant() {
        let sq = area_pi_square();
        let a = alpha_asymmetry(&sq);
        assert!(a.value > 1e-3);
        let scaled = sq.scaled(7.0).translated(Point::new(10.0, -3.0));
        assert_relative_eq!(alpha_asymmetry(&scaled).value, a.value, max_relative = 1e-9);
    }

    #[test]
    fn hausdorff_sagitta_case() {
        let poly = regular_polygon("256-gon", 256, 1.0, Point::new(0.0, 0.0));
        let ball = Ball { center: Point::new(0.0, 0.0), radius: 1.0 };
        let d = hausdorff_to_ball(&poly, &ball, 1e-3);
        let sagitta = 1.0 - (std::f64::consts::PI / 256.0).cos();
        assert_relative_eq!(d, sagitta, max_relative = 2e-2);
    }

    #[test]
    fn hausdorff_square_vs_disc_oracle() {
        let sq = area_pi_square();
        let ball = Ball { center: Point::new(0.0, 0.0), radius: 1.0 };
        let d = hausdorff_to_ball(&sq, &ball, 5e-4);
        // Farthest square corner from the unit disc vs deepest disc point
        // outside the square: corner distance = sqrt(2) a - 1.
        let a = std::f64::consts::PI.sqrt() / 2.0;
        let expect = (2.0f64.sqrt() * a - 1.0).max(1.0 - a);
        assert_relative_eq!(d, expect, max_relative = 1e-3);
    }

    #[test]
    fn shell_radii_cases() {
        let poly = regular_polygon("256-gon", 256, 1.0, Point::new(0.0, 0.0));
        let (r1, r2) = shell_radii(&poly);
        let r_eq = poly.equivalent_radius();
        assert_relative_eq!(r1, r_eq, max_relative = 1e-4);
        assert_relative_eq!(r2, r_eq, max_relative = 1e-4);
        // Translating decreases overlap: R1 down, R2 up.
        let moved = poly.translated(Point::new(0.3, 0.0));
        let (m1, m2) = shell_radii(&moved);
        assert!(m1 < r1 && m2 > r2);
        assert!(m1 <= moved.equivalent_radius() && moved.equivalent_radius() <= m2);
    }

    #[test]
    fn propagation_of_asymmetry() {
        // Clip so the removed fraction is at most A/4; the clipped set keeps
        // at least half the asymmetry (up to optimizer slack).
        let sq = area_pi_square();
        let a_full = fraenkel_asymmetry(&sq, None).value;
        let area = sq.measure();
        // Vertical halfplane cut removing just under a quarter of A.
        let keep_fraction = 1.0 - 0.24 * a_full;
        let half_side = std::f64::consts::PI.sqrt() / 2.0;
        let cut_x = half_side - (1.0 - keep_fraction) * area / (2.0 * half_side);
        let clipped = crate::geometry::clip_halfplane(&sq, Point::new(1.0, 0.0), cut_x).unwrap();
        assert!((sq.measure() - clipped.measure()) / sq.measure() <= a_full / 4.0 + 1e-12);
        let a_clip = fraenkel_asymmetry(&clipped, None).value;
        assert!(a_clip >= a_full / 2.0 - 1e-3, "A(U)={a_clip} vs A/2={}", a_full / 2.0);
    }

    #[test]
    fn comparison_chain_on_convex_corpus() {
        // d_N >= A/(2N), d_M >= A/2, d_M >= (N/2^N) d_N with N = 2.
        let corpus: Vec<Domain> = vec![
            area_pi_square(),
            rectangle("2x1", 0.0, 0.0, 2.0, 1.0),
            rectangle("4x1", 0.0, 0.0, 4.0, 1.0),
            regular_polygon("pentagon", 5, 1.0, Point::new(0.0, 0.0)),
            regular_polygon("hexagon", 6, 1.0, Point::new(0.3, 0.3)),
            regular_polygon("64-gon", 64, 1.0, Point::new(0.0, 0.0)),
        ];
        for dom in &corpus {
            let a = fraenkel_asymmetry(dom, None).value;
            let s = structured_asymmetries(dom);
            let dm = s.dm.expect("corpus is convex").value;
            assert!(a < 2.0 && s.dn.value < 1.0);
            assert!(s.dn.value >= a / 4.0 - 1e-6, "{}: dn chain", dom.label);
            assert!(dm >= a / 2.0 - 1e-6, "{}: dm chain", dom.label);
            assert!(dm >= 0.5 * s.dn.value - 1e-6, "{}: dm vs dn chain", dom.label);
            // Convex reverse bound: A >= (1/2) sqrt(omega_2/2) |Omega|^{1/2}/diam * dm^2.
            let rhs = 0.5
                * (std::f64::consts::PI / 2.0).sqrt()
                * dom.measure().sqrt()
                / dom.diameter()
                * dm
                * dm;
            assert!(a >= rhs - 1e-6, "{}: reverse chain {a} vs {rhs}", dom.label);
        }
    }

    #[test]
    fn hausdorff_blasphemy_bound_convex() {
        // Haus(Omega, B_R) >= R - r_Omega for convex Omega and any ball.
        let corpus = [
            area_pi_square(),
            rectangle("2x1", 0.0, 0.0, 2.0, 1.0),
            regular_polygon("pentagon", 5, 1.0, Point::new(0.0, 0.0)),
        ];
        for dom in &corpus {
            let f = crate::geometry::basic_functionals(dom);
            for (c, radius) in [
                (Point::new(0.0, 0.0), 1.5),
                (Point::new(1.0, 0.5), 0.9),
                (f.barycenter, 2.0),
            ] {
                let ball = Ball { center: c, radius };
                let d = hausdorff_to_ball(dom, &ball, 2e-3);
                assert!(
                    d >= radius - f.inradius - 5e-3,
                    "{}: {d} < {}",
                    dom.label,
                    radius - f.inradius
                );
            }
        }
    }
}
