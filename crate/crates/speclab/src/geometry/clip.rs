//! Exact polygon-disc intersection areas and supporting predicates.

use super::{Ball, Domain, Point};

/// Crossing-number containment test for a single loop (orientation agnostic).
pub fn point_in_loop(p: Point, lp: &[Point]) -> bool {
    let n = lp.len();
    let mut inside = false;
    for i in 0..n {
        let a = lp[i];
        let b = lp[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let t = (p.y - a.y) / (b.y - a.y);
            let x = a.x + t * (b.x - a.x);
            if x > p.x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Euclidean distance from `p` to the segment `[a, b]`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
    p.dist(a + d * t)
}

/// Signed contribution of the triangle (O, a, b) clipped to the disc of
/// radius `r` centered at the origin. Summing over the edges of a loop gives
/// the signed area of (loop interior) intersect (disc).
fn triangle_disc_contribution(a: Point, b: Point, r: f64) -> f64 {
    let r2 = r * r;
    let ain = a.dot(a) <= r2;
    let bin = b.dot(b) <= r2;
    if ain && bin {
        return 0.5 * a.cross(b);
    }
    // Segment param p(t) = a + t (b - a); solve |p(t)|^2 = r^2.
    let d = b - a;
    let qa = d.dot(d);
    let qb = 2.0 * a.dot(d);
    let qc = a.dot(a) - r2;
    let disc = qb * qb - 4.0 * qa * qc;
    let sector = |p: Point, q: Point| -> f64 {
        let ang = p.cross(q).atan2(p.dot(q));
        0.5 * r2 * ang
    };
    if disc <= 0.0 {
        // Chord line misses the circle: pure sector.
        return sector(a, b);
    }
    let sd = disc.sqrt();
    let t1 = (-qb - sd) / (2.0 * qa);
    let t2 = (-qb + sd) / (2.0 * qa);
    let mut cuts: Vec<f64> = Vec::with_capacity(2);
    for t in [t1, t2] {
        if t > 0.0 && t < 1.0 {
            cuts.push(t);
        }
    }
    match (ain, bin, cuts.len()) {
        (true, false, _) => {
            // Leaves the disc at the first interior cut.
            let t = cuts.first().copied().unwrap_or(1.0);
            let p = a + d * t;
            0.5 * a.cross(p) + sector(p, b)
        }
        (false, true, _) => {
            let t = cuts.last().copied().unwrap_or(0.0);
            let p = a + d * t;
            sector(a, p) + 0.5 * p.cross(b)
        }
        (false, false, 2) => {
            // Dips through the disc between the two cuts.
            let p = a + d * cuts[0];
            let q = a + d * cuts[1];
            sector(a, p) + 0.5 * p.cross(q) + sector(q, b)
        }
        _ => sector(a, b),
    }
}

fn loop_disc_area(lp: &[Point], ball: &Ball) -> f64 {
    let n = lp.len();
    let mut acc = 0.0;
    for i in 0..n {
        let a = lp[i] - ball.center;
        let b = lp[(i + 1) % n] - ball.center;
        acc += triangle_disc_contribution(a, b, ball.radius);
    }
    acc
}

/// Exact area of `domain` intersect `ball`, additive with sign over holes.
pub fn disc_intersection_area(domain: &Domain, ball: &Ball) -> f64 {
    let raw: f64 = domain.loops().map(|lp| loop_disc_area(lp, ball)).sum();
    raw.clamp(0.0, domain.measure().min(ball.area()))
}

/// Area of the symmetric difference between the domain and a ball.
pub fn symmetric_difference_area(domain: &Domain, ball: &Ball) -> f64 {
    let inter = disc_intersection_area(domain, ball);
    domain.measure() + ball.area() - 2.0 * inter
}

/// Exact lens area of the intersection of two discs.
pub fn lens_area(b1: &Ball, b2: &Ball) -> f64 {
    let d = b1.center.dist(b2.center);
    let (r, s) = (b1.radius, b2.radius);
    if d >= r + s {
        return 0.0;
    }
    if d <= (r - s).abs() {
        let small = r.min(s);
        return std::f64::consts::PI * small * small;
    }
    let alpha = ((d * d + r * r - s * s) / (2.0 * d * r)).clamp(-1.0, 1.0).acos();
    let beta = ((d * d + s * s - r * r) / (2.0 * d * s)).clamp(-1.0, 1.0).acos();
    r * r * (alpha - alpha.sin() * alpha.cos()) + s * s * (beta - beta.sin() * beta.cos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rectangle, regular_polygon};
    use approx::assert_relative_eq;

    #[test]
    fn containment_cases() {
        let sq = rectangle("sq", 0.0, 0.0, 1.0, 1.0);
        // Ball containing the whole square.
        let big = Ball::new(Point::new(0.5, 0.5), 10.0).unwrap();
        assert_relative_eq!(disc_intersection_area(&sq, &big), 1.0, epsilon = 1e-12);
        // Disjoint ball.
        let far = Ball::new(Point::new(10.0, 10.0), 1.0).unwrap();
        assert_relative_eq!(disc_intersection_area(&sq, &far), 0.0, epsilon = 1e-12);
        // Unit disc at the corner: quarter disc.
        let corner = Ball::new(Point::new(0.0, 0.0), 1.0).unwrap();
        assert_relative_eq!(
            disc_intersection_area(&sq, &corner),
            std::f64::consts::PI / 4.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn disc_in_square_with_hole() {
        let hole = vec![
            Point::new(0.25, 0.25),
            Point::new(0.75, 0.25),
            Point::new(0.75, 0.75),
            Point::new(0.25, 0.75),
        ];
        let (dom, _) = crate::geometry::Domain::new(
            "holed",
            rectangle("sq", 0.0, 0.0, 1.0, 1.0).outer,
            vec![hole],
        )
        .unwrap();
        // Small disc fully inside the hole: zero intersection.
        let inside_hole = Ball::new(Point::new(0.5, 0.5), 0.2).unwrap();
        assert_relative_eq!(disc_intersection_area(&dom, &inside_hole), 0.0, epsilon = 1e-12);
        // Big disc covering everything: area of the domain.
        let big = Ball::new(Point::new(0.5, 0.5), 5.0).unwrap();
        assert_relative_eq!(disc_intersection_area(&dom, &big), 0.75, epsilon = 1e-12);
    }

    #[test]
    fn matches_monte_carlo_oracle() {
        use rand::{Rng, SeedableRng};
        let poly = regular_polygon("heptagon", 7, 1.3, Point::new(0.2, -0.1));
        let ball = Ball::new(Point::new(0.7, 0.4), 0.9).unwrap();
        let exact = disc_intersection_area(&poly, &ball);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let trials = 2_000_000;
        let mut hits = 0u64;
        // Sample the bounding box of the ball.
        for _ in 0..trials {
            let x = ball.center.x + rng.gen_range(-ball.radius..ball.radius);
            let y = ball.center.y + rng.gen_range(-ball.radius..ball.radius);
            let p = Point::new(x, y);
            if ball.contains(p) && point_in_loop(p, &poly.outer) {
                hits += 1;
            }
        }
        let box_area = 4.0 * ball.radius * ball.radius;
        let mc = hits as f64 / trials as f64 * box_area;
        assert_relative_eq!(exact, mc, max_relative = 5e-3);
    }

    #[test]
    fn lens_cases() {
        let a = Ball::new(Point::new(0.0, 0.0), 1.0).unwrap();
        let b = Ball::new(Point::new(3.0, 0.0), 1.0).unwrap();
        assert_eq!(lens_area(&a, &b), 0.0);
        let c = Ball::new(Point::new(0.0, 0.0), 0.5).unwrap();
        assert_relative_eq!(lens_area(&a, &c), std::f64::consts::PI * 0.25, epsilon = 1e-12);
        // Half-overlap sanity against small-circle formula d = r.
        let d = Ball::new(Point::new(1.0, 0.0), 1.0).unwrap();
        let expect = 2.0 * (std::f64::consts::PI / 3.0 - (3.0f64).sqrt() / 4.0);
        assert_relative_eq!(lens_area(&a, &d), expect, epsilon = 1e-12);
    }

    #[test]
    fn sliver_edges_consistent() {
        // Disc centered on an edge, partially overlapping.
        let sq = rectangle("sq", 0.0, 0.0, 1.0, 1.0);
        let half = Ball::new(Point::new(0.5, 0.0), 0.3).unwrap();
        assert_relative_eq!(
            disc_intersection_area(&sq, &half),
            0.5 * half.area(),
            epsilon = 1e-12
        );
    }
}
