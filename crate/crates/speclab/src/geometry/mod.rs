//! Polygonal domains and their exact geometric functionals.

pub mod asymmetry;
pub mod clip;
pub mod optim;

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

pub use asymmetry::{
    fraenkel_2_asymmetry, fraenkel_asymmetry, hausdorff_to_ball, shell_radii,
    structured_asymmetries, AsymmetryKind, AsymmetryReport, StructuredAsymmetries,
};

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}
impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}
impl std::ops::Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

/// A disc given by center and radius.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if radius <= 0.0 || !radius.is_finite() {
            return Err(Error::InvalidDomain(format!("ball radius {radius} must be positive")));
        }
        Ok(Ball { center, radius })
    }
    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.radius * self.radius
    }
    pub fn contains(&self, p: Point) -> bool {
        p.dist(self.center) <= self.radius
    }
}

/// A planar region bounded by one counterclockwise outer loop and optional
/// clockwise hole loops.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Domain {
    pub outer: Vec<Point>,
    pub holes: Vec<Vec<Point>>,
    pub label: String,
}

/// On-disk JSON form of a domain: coordinate pairs instead of point structs.
#[derive(Debug, Serialize, Deserialize)]
struct DomainFile {
    label: String,
    outer: Vec<[f64; 2]>,
    #[serde(default)]
    holes: Vec<Vec<[f64; 2]>>,
}

fn signed_area(loop_: &[Point]) -> f64 {
    let n = loop_.len();
    let mut acc = 0.0;
    for i in 0..n {
        let j = (i + 1) % n;
        acc += loop_[i].cross(loop_[j]);
    }
    0.5 * acc
}

fn loop_is_simple(pts: &[Point]) -> bool {
    let n = pts.len();
    for i in 0..n {
        let (a1, a2) = (pts[i], pts[(i + 1) % n]);
        for j in i + 1..n {
            // Skip adjacent edges (they share an endpoint).
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            let (b1, b2) = (pts[j], pts[(j + 1) % n]);
            if segments_properly_intersect(a1, a2, b1, b2) {
                return false;
            }
        }
    }
    true
}

fn segments_properly_intersect(a1: Point, a2: Point, b1: Point, b2: Point) -> bool {
    let d1 = (a2 - a1).cross(b1 - a1);
    let d2 = (a2 - a1).cross(b2 - a1);
    let d3 = (b2 - b1).cross(a1 - b1);
    let d4 = (b2 - b1).cross(a2 - b1);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

impl Domain {
    /// Builds a domain, enforcing orientation (outer CCW, holes CW) and
    /// loop simplicity. Returns the fixes applied while loading.
    pub fn new(
        label: impl Into<String>,
        mut outer: Vec<Point>,
        mut holes: Vec<Vec<Point>>,
    ) -> Result<(Self, Vec<String>)> {
        let label = label.into();
        let mut fixes = Vec::new();
        if outer.len() < 3 {
            return Err(Error::InvalidDomain("outer loop needs at least 3 vertices".into()));
        }
        let a = signed_area(&outer);
        if a == 0.0 {
            return Err(Error::InvalidDomain("outer loop has zero area".into()));
        }
        if a < 0.0 {
            outer.reverse();
            fixes.push("re-oriented outer loop counterclockwise".to_string());
        }
        if !loop_is_simple(&outer) {
            return Err(Error::InvalidDomain("outer loop self-intersects".into()));
        }
        for (k, h) in holes.iter_mut().enumerate() {
            if h.len() < 3 {
                return Err(Error::InvalidDomain(format!("hole {k} needs at least 3 vertices")));
            }
            let ha = signed_area(h);
            if ha == 0.0 {
                return Err(Error::InvalidDomain(format!("hole {k} has zero area")));
            }
            if ha > 0.0 {
                h.reverse();
                fixes.push(format!("re-oriented hole {k} clockwise"));
            }
            if !loop_is_simple(h) {
                return Err(Error::InvalidDomain(format!("hole {k} self-intersects")));
            }
        }
        let dom = Domain { outer, holes, label };
        for (k, h) in dom.holes.iter().enumerate() {
            for p in h {
                if !clip::point_in_loop(*p, &dom.outer) {
                    return Err(Error::InvalidDomain(format!(
                        "hole {k} is not strictly inside the outer loop"
                    )));
                }
            }
        }
        if dom.measure() <= 0.0 {
            return Err(Error::InvalidDomain("domain has nonpositive measure".into()));
        }
        Ok((dom, fixes))
    }

    pub fn from_json(text: &str) -> Result<(Self, Vec<String>)> {
        let file: DomainFile = serde_json::from_str(text)?;
        let outer = file.outer.iter().map(|p| Point::new(p[0], p[1])).collect();
        let holes = file
            .holes
            .iter()
            .map(|h| h.iter().map(|p| Point::new(p[0], p[1])).collect())
            .collect();
        Domain::new(file.label, outer, holes)
    }

    pub fn to_json(&self) -> String {
        let file = DomainFile {
            label: self.label.clone(),
            outer: self.outer.iter().map(|p| [p.x, p.y]).collect(),
            holes: self
                .holes
                .iter()
                .map(|h| h.iter().map(|p| [p.x, p.y]).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("domain serialization cannot fail")
    }

    pub fn loops(&self) -> impl Iterator<Item = &[Point]> {
        std::iter::once(self.outer.as_slice()).chain(self.holes.iter().map(|h| h.as_slice()))
    }

    /// Area by the shoelace formula, holes subtracted.
    pub fn measure(&self) -> f64 {
        signed_area(&self.outer) + self.holes.iter().map(|h| signed_area(h)).sum::<f64>()
    }

    /// Total boundary length over all loops.
    pub fn perimeter(&self) -> f64 {
        self.loops()
            .map(|lp| {
                (0..lp.len())
                    .map(|i| lp[i].dist(lp[(i + 1) % lp.len()]))
                    .sum::<f64>()
            })
            .sum()
    }

    /// Max pairwise distance over boundary vertices (exact for polygons).
    pub fn diameter(&self) -> f64 {
        let pts: Vec<Point> = self.loops().flatten().copied().collect();
        let mut best: f64 = 0.0;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                best = best.max(pts[i].dist(pts[j]));
            }
        }
        best
    }

    /// Area centroid, holes weighted with negative sign.
    pub fn barycenter(&self) -> Point {
        let mut cx = 0.0;
        let mut cy = 0.0;
        for lp in self.loops() {
            let n = lp.len();
            for i in 0..n {
                let j = (i + 1) % n;
                let w = lp[i].cross(lp[j]);
                cx += (lp[i].x + lp[j].x) * w;
                cy += (lp[i].y + lp[j].y) * w;
            }
        }
        let a = self.measure();
        Point::new(cx / (6.0 * a), cy / (6.0 * a))
    }

    /// Arclength-weighted centroid of the whole boundary.
    pub fn boundary_barycenter(&self) -> Point {
        let mut acc = Point::new(0.0, 0.0);
        let mut len = 0.0;
        for lp in self.loops() {
            let n = lp.len();
            for i in 0..n {
                let j = (i + 1) % n;
                let l = lp[i].dist(lp[j]);
                let mid = (lp[i] + lp[j]) * 0.5;
                acc = acc + mid * l;
                len += l;
            }
        }
        acc * (1.0 / len)
    }

    /// Radius of the equal-area disc: sqrt(|Omega| / pi).
    pub fn equivalent_radius(&self) -> f64 {
        (self.measure() / std::f64::consts::PI).sqrt()
    }

    /// True when the domain has no holes and the outer loop is convex.
    pub fn is_convex(&self) -> bool {
        if !self.holes.is_empty() {
            return false;
        }
        let n = self.outer.len();
        for i in 0..n {
            let a = self.outer[i];
            let b = self.outer[(i + 1) % n];
            let c = self.outer[(i + 2) % n];
            if (b - a).cross(c - b) < -1e-12 * (b - a).norm() * (c - b).norm() {
                return false;
            }
        }
        true
    }

    /// Signed containment test with holes.
    pub fn contains(&self, p: Point) -> bool {
        if !clip::point_in_loop(p, &self.outer) {
            return false;
        }
        !self.holes.iter().any(|h| clip::point_in_loop(p, h))
    }

    /// Distance from a point to the domain boundary (any loop).
    pub fn boundary_distance(&self, p: Point) -> f64 {
        let mut best = f64::INFINITY;
        for lp in self.loops() {
            let n = lp.len();
            for i in 0..n {
                best = best.min(clip::point_segment_distance(p, lp[i], lp[(i + 1) % n]));
            }
        }
        best
    }

    /// Quadratically weighted perimeter P_2 = integral of |x|^2 over the
    /// boundary, by the exact per-edge closed form.
    pub fn weighted_perimeter_p2(&self) -> f64 {
        let mut acc = 0.0;
        for lp in self.loops() {
            let n = lp.len();
            for i in 0..n {
                let a = lp[i];
                let b = lp[(i + 1) % n];
                let d = b - a;
                let len = d.norm();
                // int_0^1 |a + t d|^2 dt = |a|^2 + a.d + |d|^2/3
                acc += len * (a.dot(a) + a.dot(d) + d.dot(d) / 3.0);
            }
        }
        acc
    }

    /// Returns a copy translated by `t`.
    pub fn translated(&self, t: Point) -> Domain {
        Domain {
            outer: self.outer.iter().map(|p| *p + t).collect(),
            holes: self.holes.iter().map(|h| h.iter().map(|p| *p + t).collect()).collect(),
            label: self.label.clone(),
        }
    }

    /// Returns a copy scaled by `s` about the origin.
    pub fn scaled(&self, s: f64) -> Domain {
        Domain {
            outer: self.outer.iter().map(|p| *p * s).collect(),
            holes: self.holes.iter().map(|h| h.iter().map(|p| *p * s).collect()).collect(),
            label: self.label.clone(),
        }
    }

    /// Translates the barycenter to the origin and rescales to measure pi,
    /// so that the equal-area ball is the unit disc at the origin.
    /// Returns the normalized domain with the applied (shift, scale).
    pub fn normalized(&self) -> (Domain, Point, f64) {
        let c = self.barycenter();
        let s = (std::f64::consts::PI / self.measure()).sqrt();
        let dom = self.translated(Point::new(-c.x, -c.y)).scaled(s);
        (dom, c, s)
    }

    /// Uniform boundary samples (arclength spacing <= `spacing`), all loops.
    pub fn boundary_samples(&self, spacing: f64) -> Vec<Point> {
        let mut out = Vec::new();
        for lp in self.loops() {
            let n = lp.len();
            for i in 0..n {
                let a = lp[i];
                let b = lp[(i + 1) % n];
                let len = a.dist(b);
                let k = (len / spacing).ceil().max(1.0) as usize;
                for s in 0..k {
                    out.push(a + (b - a) * (s as f64 / k as f64));
                }
            }
        }
        out
    }
}

/// Geometric functionals bundled for reports.
#[derive(Debug, Clone, Serialize)]
pub struct BasicFunctionals {
    pub area: f64,
    pub perimeter: f64,
    pub diameter: f64,
    pub barycenter: Point,
    pub boundary_barycenter: Point,
    pub inradius: f64,
    pub inradius_exact: bool,
    pub inradius_center: Point,
    pub equivalent_radius: f64,
    pub p2: f64,
    pub convex: bool,
}

/// Perimeter, diameter, barycenters, inradius and equivalent radius.
///
/// The inradius comes from the exact Chebyshev-center LP on convex domains
/// and from a sampled distance-field maximum (flagged approximate) otherwise.
pub fn basic_functionals(domain: &Domain) -> BasicFunctionals {
    let convex = domain.is_convex();
    let (inradius, center, exact) = if convex {
        let (c, r) = optim::chebyshev_center(&domain.outer);
        (r, c, true)
    } else {
        let (c, r) = optim::sampled_inradius(domain);
        (r, c, false)
    };
    BasicFunctionals {
        area: domain.measure(),
        perimeter: domain.perimeter(),
        diameter: domain.diameter(),
        barycenter: domain.barycenter(),
        boundary_barycenter: domain.boundary_barycenter(),
        inradius,
        inradius_exact: exact,
        inradius_center: center,
        equivalent_radius: domain.equivalent_radius(),
        p2: domain.weighted_perimeter_p2(),
        convex,
    }
}

/// Clips the domain with the halfplane {x : n.x <= c} (keeps that side).
/// Supports only cuts for which each loop stays connected, which covers the
/// propagation-of-asymmetry experiments on convex domains.
pub fn clip_halfplane(domain: &Domain, normal: Point, offset: f64) -> Result<Domain> {
    let clip_loop = |lp: &[Point]| -> Vec<Point> {
        let mut out = Vec::new();
        let n = lp.len();
        for i in 0..n {
            let a = lp[i];
            let b = lp[(i + 1) % n];
            let da = normal.dot(a) - offset;
            let db = normal.dot(b) - offset;
            if da <= 0.0 {
                out.push(a);
            }
            if (da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0) {
                let t = da / (da - db);
                out.push(a + (b - a) * t);
            }
        }
        out
    };
    let outer = clip_loop(&domain.outer);
    if outer.len() < 3 {
        return Err(Error::InvalidDomain("halfplane clip removed the whole domain".into()));
    }
    let holes: Vec<Vec<Point>> = domain
        .holes
        .iter()
        .map(|h| clip_loop(h))
        .filter(|h| h.len() >= 3)
        .collect();
    Ok(Domain::new(format!("{}-clipped", domain.label), outer, holes)?.0)
}

/// Regular n-gon inscribed in the circle of given radius, centered at `c`.
pub fn regular_polygon(label: &str, n: usize, radius: f64, c: Point) -> Domain {
    let pts = (0..n)
        .map(|i| {
            let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            Point::new(c.x + radius * t.cos(), c.y + radius * t.sin())
        })
        .collect();
    Domain::new(label, pts, vec![]).expect("regular polygon is valid").0
}

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
pub fn rectangle(label: &str, x0: f64, y0: f64, x1: f64, y1: f64) -> Domain {
    let pts = vec![
        Point::new(x0, y0),
        Point::new(x1, y0),
        Point::new(x1, y1),
        Point::new(x0, y1),
    ];
    Domain::new(label, pts, vec![]).expect("rectangle is valid").0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_square() -> Domain {
        rectangle("unit-square", 0.0, 0.0, 1.0, 1.0)
    }

    #[test]
    fn measure_examples() {
        assert_relative_eq!(unit_square().measure(), 1.0, epsilon = 1e-15);
        // Square with centered 0.5 x 0.5 hole.
        let hole = vec![
            Point::new(0.25, 0.25),
            Point::new(0.75, 0.25),
            Point::new(0.75, 0.75),
            Point::new(0.25, 0.75),
        ];
        let (dom, fixes) = Domain::new("holed", unit_square().outer, vec![hole]).unwrap();
        assert_eq!(fixes.len(), 1); // hole given CCW gets re-oriented
        assert_relative_eq!(dom.measure(), 0.75, epsilon = 1e-15);
        // Regular 64-gon inscribed in the unit circle.
        let poly = regular_polygon("64-gon", 64, 1.0, Point::new(0.0, 0.0));
        let expect = 32.0 * (2.0 * std::f64::consts::PI / 64.0).sin();
        assert_relative_eq!(poly.measure(), expect, epsilon = 1e-12);
        assert_relative_eq!(poly.measure(), 3.1365, max_relative = 1e-4);
    }

    #[test]
    fn degenerate_loop_rejected() {
        let line = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(2.0, 0.0)];
        assert!(Domain::new("degenerate", line, vec![]).is_err());
    }

    #[test]
    fn self_intersecting_rejected() {
        let bowtie = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ];
        assert!(Domain::new("bowtie", bowtie, vec![]).is_err());
    }

    #[test]
    fn basic_functionals_unit_square() {
        let f = basic_functionals(&unit_square());
        assert_relative_eq!(f.perimeter, 4.0, epsilon = 1e-14);
        assert_relative_eq!(f.diameter, 2.0f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(f.inradius, 0.5, epsilon = 1e-9);
        assert!(f.inradius_exact);
        assert_relative_eq!(f.equivalent_radius, 1.0 / std::f64::consts::PI.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(f.barycenter.x, 0.5, epsilon = 1e-14);
        assert_relative_eq!(f.boundary_barycenter.y, 0.5, epsilon = 1e-14);
        assert!(f.convex);
    }

    #[test]
    fn inradius_64gon_is_apothem() {
        let poly = regular_polygon("64-gon", 64, 1.0, Point::new(0.0, 0.0));
        let f = basic_functionals(&poly);
        assert_relative_eq!(f.inradius, (std::f64::consts::PI / 64.0).cos(), epsilon = 1e-9);
    }

    #[test]
    fn rectangle_dn_closed_form() {
        let r = rectangle("2x1", 0.0, 0.0, 2.0, 1.0);
        let f = basic_functionals(&r);
        let dn = 1.0 - f.inradius / f.equivalent_radius;
        assert_relative_eq!(dn, 1.0 - 0.5 / (2.0 / std::f64::consts::PI).sqrt(), epsilon = 1e-9);
        assert_relative_eq!(dn, 0.3734, max_relative = 1e-3);
        assert_relative_eq!(f.barycenter.x, f.boundary_barycenter.x, epsilon = 1e-12);
        assert_relative_eq!(f.barycenter.y, f.boundary_barycenter.y, epsilon = 1e-12);
    }

    #[test]
    fn p2_square_and_translation() {
        let sq = rectangle("centered", -0.5, -0.5, 0.5, 0.5);
        assert_relative_eq!(sq.weighted_perimeter_p2(), 4.0 / 3.0, epsilon = 1e-13);
        // Parallel-axis expansion: P2(Omega + c) = P2 + 2 <c, bdry moment> + |c|^2 P.
        let moved = sq.translated(Point::new(1.0, 0.0));
        assert_relative_eq!(moved.weighted_perimeter_p2(), 4.0 / 3.0 + 4.0, epsilon = 1e-12);
        // Quadrature oracle along the boundary.
        let oracle: f64 = {
            let samples = moved.boundary_samples(1e-4);
            let ds = moved.perimeter() / samples.len() as f64;
            samples.iter().map(|p| p.dot(*p) * ds).sum()
        };
        assert_relative_eq!(moved.weighted_perimeter_p2(), oracle, max_relative = 1e-5);
    }

    #[test]
    fn p2_disc_near_two_pi() {
        let poly = regular_polygon("64-gon", 64, 1.0, Point::new(0.0, 0.0));
        assert_relative_eq!(poly.weighted_perimeter_p2(), 2.0 * std::f64::consts::PI, max_relative = 4e-3);
    }

    #[test]
    fn halfplane_clip_square() {
        let sq = unit_square();
        let clipped = clip_halfplane(&sq, Point::new(1.0, 0.0), 0.75).unwrap();
        assert_relative_eq!(clipped.measure(), 0.75, epsilon = 1e-12);
    }

    #[test]
    fn l_shape_not_convex_and_inradius() {
        let l = Domain::new(
            "l-shape",
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
        assert!(!l.is_convex());
        let f = basic_functionals(&l);
        assert!(!f.inradius_exact);
        // Largest disc touches x=0, y=0 and the reentrant corner: r = 2 - sqrt(2).
        assert_relative_eq!(f.inradius, 2.0 - 2.0f64.sqrt(), max_relative = 2e-2);
    }

    #[test]
    fn json_roundtrip_and_reorientation() {
        let text = r#"{"label":"cw-square","outer":[[0,0],[0,1],[1,1],[1,0]],"holes":[]}"#;
        let (dom, fixes) = Domain::from_json(text).unwrap();
        assert_eq!(fixes.len(), 1);
        assert!(dom.measure() > 0.0);
        let (dom2, fixes2) = Domain::from_json(&dom.to_json()).unwrap();
        assert!(fixes2.is_empty());
        assert_relative_eq!(dom2.measure(), 1.0, epsilon = 1e-15);
    }
}
