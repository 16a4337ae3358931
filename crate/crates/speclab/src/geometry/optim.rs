//! Small optimizers used by the geometric functionals: a simplex LP for the
//! Chebyshev center, Welzl's minimal enclosing ball, a Nelder-Mead polisher
//! and a sampled inradius for non-convex domains.

use super::{Domain, Point};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Exact Chebyshev center (deepest point) of a convex polygon via the linear
/// program max r subject to n_i . c + r <= n_i . a_i over the edges.
pub fn chebyshev_center(outer: &[Point]) -> (Point, f64) {
    let n = outer.len();
    // Shift onto the vertex centroid so the zero vector is strictly feasible.
    let shift = {
        let mut s = Point::new(0.0, 0.0);
        for p in outer {
            s = s + *p;
        }
        s * (1.0 / n as f64)
    };
    // Rows: outward unit normal and offset per edge.
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let a = outer[i] - shift;
        let b = outer[(i + 1) % n] - shift;
        let e = b - a;
        let len = e.norm();
        // CCW loop: outward normal is the edge direction rotated by -90 deg.
        let nrm = Point::new(e.y / len, -e.x / len);
        rows.push((nrm, nrm.dot(a)));
    }
    let (c, r) = simplex_center(&rows);
    (c + shift, r)
}

/// Primal tableau simplex for: max r s.t. n_i.(x+ - x-) + r <= b_i, b_i > 0.
/// Variables: x+, y+, x-, y-, r (all nonnegative). Bland's rule, so it
/// terminates even on degenerate (parallel-edge) inputs.
fn simplex_center(rows: &[(Point, f64)]) -> (Point, f64) {
    let m = rows.len();
    let nv = 5;
    let width = nv + m + 1;
    // tableau[i] = [a_1..a_5 | slack 1..m | b]
    let mut t = vec![vec![0.0; width]; m];
    for (i, (nrm, b)) in rows.iter().enumerate() {
        t[i][0] = nrm.x;
        t[i][1] = nrm.y;
        t[i][2] = -nrm.x;
        t[i][3] = -nrm.y;
        t[i][4] = 1.0;
        t[i][nv + i] = 1.0;
        t[i][width - 1] = *b;
    }
    // Objective row: maximize r => minimize -r.
    let mut obj = vec![0.0; width];
    obj[4] = -1.0;
    let mut basis: Vec<usize> = (nv..nv + m).collect();
    for _ in 0..20_000 {
        // Entering column: first with negative reduced cost (Bland).
        let Some(col) = (0..width - 1).find(|&j| obj[j] < -1e-12) else {
            break;
        };
        // Ratio test with Bland tie-break on basis index.
        let mut pivot: Option<(usize, f64)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[col] > 1e-12 {
                let ratio = row[width - 1] / row[col];
                match pivot {
                    None => pivot = Some((i, ratio)),
                    Some((pi, pr)) => {
                        if ratio < pr - 1e-15
                            || ((ratio - pr).abs() <= 1e-15 && basis[i] < basis[pi])
                        {
                            pivot = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((prow, _)) = pivot else {
            break; // unbounded cannot happen for a bounded polygon
        };
        let pv = t[prow][col];
        for v in t[prow].iter_mut() {
            *v /= pv;
        }
        for i in 0..m {
            if i != prow && t[i][col].abs() > 0.0 {
                let f = t[i][col];
                for j in 0..width {
                    t[i][j] -= f * t[prow][j];
                }
            }
        }
        let f = obj[col];
        for j in 0..width {
            obj[j] -= f * t[prow][j];
        }
        basis[prow] = col;
    }
    let mut sol = [0.0; 5];
    for (i, &b) in basis.iter().enumerate() {
        if b < nv {
            sol[b] = t[i][width - 1];
        }
    }
    (Point::new(sol[0] - sol[2], sol[1] - sol[3]), sol[4])
}

/// Welzl-style randomized incremental smallest enclosing circle.
pub fn minimal_enclosing_ball(points: &[Point], seed: u64) -> (Point, f64) {
    let mut pts = points.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pts.shuffle(&mut rng);
    let eps = 1e-12;
    let contains = |c: Point, r: f64, p: Point| p.dist(c) <= r * (1.0 + eps) + 1e-14;
    let mut c = pts[0];
    let mut r = 0.0;
    for i in 1..pts.len() {
        if contains(c, r, pts[i]) {
            continue;
        }
        c = pts[i];
        r = 0.0;
        for j in 0..i {
            if contains(c, r, pts[j]) {
                continue;
            }
            c = (pts[i] + pts[j]) * 0.5;
            r = pts[i].dist(pts[j]) * 0.5;
            for k in 0..j {
                if contains(c, r, pts[k]) {
                    continue;
                }
                c = circumcenter(pts[i], pts[j], pts[k]);
                r = c.dist(pts[i]);
            }
        }
    }
    (c, r)
}

pub fn circumcenter(a: Point, b: Point, c: Point) -> Point {
    let d = 2.0 * ((b - a).cross(c - a));
    if d.abs() < 1e-30 {
        return (a + b + c) * (1.0 / 3.0);
    }
    let a2 = a.dot(a);
    let b2 = b.dot(b);
    let c2 = c.dot(c);
    let ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
    let uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
    Point::new(ux, uy)
}

/// Nelder-Mead minimization in two variables.
pub fn nelder_mead_2d<F: FnMut(Point) -> f64>(
    mut f: F,
    start: Point,
    scale: f64,
    max_iter: usize,
    xtol: f64,
) -> (Point, f64) {
    let mut simplex = vec![
        start,
        start + Point::new(scale, 0.0),
        start + Point::new(0.0, scale),
    ];
    let mut vals: Vec<f64> = simplex.iter().map(|&p| f(p)).collect();
    for _ in 0..max_iter {
        // Order ascending by value.
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap());
        let (best, mid, worst) = (idx[0], idx[1], idx[2]);
        let spread = simplex[best].dist(simplex[worst]).max(simplex[best].dist(simplex[mid]));
        if spread < xtol {
            break;
        }
        let centroid = (simplex[best] + simplex[mid]) * 0.5;
        let reflect = centroid + (centroid - simplex[worst]);
        let fr = f(reflect);
        if fr < vals[best] {
            let expand = centroid + (centroid - simplex[worst]) * 2.0;
            let fe = f(expand);
            if fe < fr {
                simplex[worst] = expand;
                vals[worst] = fe;
            } else {
                simplex[worst] = reflect;
                vals[worst] = fr;
            }
        } else if fr < vals[mid] {
            simplex[worst] = reflect;
            vals[worst] = fr;
        } else {
            let contract = centroid + (simplex[worst] - centroid) * 0.5;
            let fc = f(contract);
            if fc < vals[worst] {
                simplex[worst] = contract;
                vals[worst] = fc;
            } else {
                // Shrink toward the best vertex.
                for i in 0..3 {
                    if i != best {
                        simplex[i] = simplex[best] + (simplex[i] - simplex[best]) * 0.5;
                        vals[i] = f(simplex[i]);
                    }
                }
            }
        }
    }
    let mut bi = 0;
    for i in 1..3 {
        if vals[i] < vals[bi] {
            bi = i;
        }
    }
    (simplex[bi], vals[bi])
}

/// Nelder-Mead minimization in n variables (used for the two-ball search).
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    start: &[f64],
    scale: f64,
    max_iter: usize,
    xtol: f64,
) -> (Vec<f64>, f64) {
    let dim = start.len();
    let mut simplex: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..dim {
        let mut v = start.to_vec();
        v[i] += scale;
        simplex.push(v);
    }
    let mut vals: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
    let n = dim + 1;
    for _ in 0..max_iter {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap());
        let worst = order[n - 1];
        let best = order[0];
        let diam: f64 = (0..n)
            .map(|i| {
                simplex[i]
                    .iter()
                    .zip(simplex[best].iter())
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max);
        if diam < xtol {
            break;
        }
        let mut centroid = vec![0.0; dim];
        for (i, v) in simplex.iter().enumerate() {
            if i != worst {
                for (c, x) in centroid.iter_mut().zip(v.iter()) {
                    *c += x / dim as f64;
                }
            }
        }
        let blend = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
            a.iter().zip(b.iter()).map(|(x, y)| x + t * (y - x)).collect()
        };
        let reflect = blend(&centroid, &simplex[worst], -1.0);
        let fr = f(&reflect);
        if fr < vals[best] {
            let expand = blend(&centroid, &simplex[worst], -2.0);
            let fe = f(&expand);
            if fe < fr {
                simplex[worst] = expand;
                vals[worst] = fe;
            } else {
                simplex[worst] = reflect;
                vals[worst] = fr;
            }
        } else if fr < vals[order[n - 2]] {
            simplex[worst] = reflect;
            vals[worst] = fr;
        } else {
            let contract = blend(&centroid, &simplex[worst], 0.5);
            let fc = f(&contract);
            if fc < vals[worst] {
                simplex[worst] = contract;
                vals[worst] = fc;
            } else {
                for i in 0..n {
                    if i != best {
                        simplex[i] = blend(&simplex[best], &simplex[i], 0.5);
                        vals[i] = f(&simplex[i]);
                    }
                }
            }
        }
    }
    let mut bi = 0;
    for i in 1..n {
        if vals[i] < vals[bi] {
            bi = i;
        }
    }
    (simplex[bi].clone(), vals[bi])
}

/// Approximate inradius of a (possibly non-convex) domain: dense grid scan of
/// the distance-to-boundary field followed by Nelder-Mead polish from the top
/// candidates. The error is on the order of one grid cell before polish.
pub fn sampled_inradius(domain: &Domain) -> (Point, f64) {
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in domain.loops().flatten() {
        lo_x = lo_x.min(p.x);
        lo_y = lo_y.min(p.y);
        hi_x = hi_x.max(p.x);
        hi_y = hi_y.max(p.y);
    }
    let n = 80usize;
    let dx = (hi_x - lo_x) / n as f64;
    let dy = (hi_y - lo_y) / n as f64;
    let mut candidates: Vec<(f64, Point)> = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            let p = Point::new(lo_x + i as f64 * dx, lo_y + j as f64 * dy);
            if domain.contains(p) {
                candidates.push((domain.boundary_distance(p), p));
            }
        }
    }
    candidates.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    candidates.truncate(5);
    let mut best = (Point::new(0.0, 0.0), 0.0f64);
    for (_, start) in candidates {
        let (p, v) = nelder_mead_2d(
            |p| {
                if domain.contains(p) {
                    -domain.boundary_distance(p)
                } else {
                    domain.boundary_distance(p)
                }
            },
            start,
            0.5 * dx.max(dy),
            400,
            1e-10 * (hi_x - lo_x).max(hi_y - lo_y),
        );
        if -v > best.1 {
            best = (p, -v);
        }
    }
    best
}
