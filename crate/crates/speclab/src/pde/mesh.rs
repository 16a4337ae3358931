//! Conforming triangulation of polygonal domains: boundary subdivision,
//! hex-lattice interior seeding, incremental Delaunay (Bowyer-Watson) and
//! Ruppert-style quality refinement respecting holes.

use crate::geometry::{Domain, Point};
use crate::{Error, Result};
use std::collections::HashMap;

/// Quality floor for refinement, in degrees.
pub const MIN_ANGLE_DEG: f64 = 20.0;

#[derive(Debug, Clone)]
pub struct Mesh {
    pub vertices: Vec<Point>,
    pub triangles: Vec<[usize; 3]>,
    /// Boundary edges as (v0, v1, loop_tag); loop 0 is the outer loop.
    pub boundary_edges: Vec<(usize, usize, usize)>,
    pub h: f64,
    /// Set when corner exemptions left triangles below the angle floor
    /// (only possible near input corners sharper than 60 degrees).
    pub quality_note: Option<String>,
}

impl Mesh {
    pub fn is_boundary_vertex(&self) -> Vec<bool> {
        let mut flag = vec![false; self.vertices.len()];
        for &(a, b, _) in &self.boundary_edges {
            flag[a] = true;
            flag[b] = true;
        }
        flag
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangles[t];
        0.5 * (self.vertices[b] - self.vertices[a]).cross(self.vertices[c] - self.vertices[a])
    }

    pub fn min_angle_deg(&self) -> f64 {
        let mut best = f64::MAX;
        for t in 0..self.triangles.len() {
            best = best.min(self.triangle_min_angle_deg(t));
        }
        best
    }

    pub fn triangle_min_angle_deg(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangles[t];
        let (pa, pb, pc) = (self.vertices[a], self.vertices[b], self.vertices[c]);
        let mut angles = [0.0f64; 3];
        for (k, (v, (u, w))) in [(pa, (pb, pc)), (pb, (pc, pa)), (pc, (pa, pb))]
            .into_iter()
            .enumerate()
        {
            let d1 = u - v;
            let d2 = w - v;
            angles[k] = (d1.dot(d2) / (d1.norm() * d2.norm())).clamp(-1.0, 1.0).acos();
        }
        angles.iter().fold(f64::MAX, |m, &a| m.min(a)) * 180.0 / std::f64::consts::PI
    }

    /// Geometry Object File Format text, for external inspection.
    pub fn to_off(&self) -> String {
        let mut s = format!("OFF\n{} {} 0\n", self.vertices.len(), self.triangles.len());
        for p in &self.vertices {
            s.push_str(&format!("{} {} 0\n", p.x, p.y));
        }
        for t in &self.triangles {
            s.push_str(&format!("3 {} {} {}\n", t[0], t[1], t[2]));
        }
        s
    }

    /// Total area of all triangles.
    pub fn area(&self) -> f64 {
        (0..self.triangles.len()).map(|t| self.triangle_area(t)).sum()
    }
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

fn in_circumcircle(a: Point, b: Point, c: Point, p: Point) -> bool {
    // Lifted determinant; (a, b, c) counterclockwise.
    let (ax, ay) = (a.x - p.x, a.y - p.y);
    let (bx, by) = (b.x - p.x, b.y - p.y);
    let (cx, cy) = (c.x - p.x, c.y - p.y);
    let det = (ax * ax + ay * ay) * (bx * cy - cx * by)
        - (bx * bx + by * by) * (ax * cy - cx * ay)
        + (cx * cx + cy * cy) * (ax * by - bx * ay);
    det > 0.0
}

/// Incremental Delaunay triangulation with a super-triangle.
struct Delaunay {
    pts: Vec<Point>,
    tris: Vec<[usize; 3]>,
    adj: Vec<[Option<usize>; 3]>, // neighbor across edge opposite to vertex k
    alive: Vec<bool>,
    free: Vec<usize>,
    hint: usize,
}

impl Delaunay {
    fn new(bbox_lo: Point, bbox_hi: Point) -> Delaunay {
        let c = (bbox_lo + bbox_hi) * 0.5;
        let half = (bbox_hi - bbox_lo).norm().max(1e-9) * 8.0;
        let pts = vec![
            Point::new(c.x - 2.0 * half, c.y - half),
            Point::new(c.x + 2.0 * half, c.y - half),
            Point::new(c.x, c.y + 2.0 * half),
        ];
        Delaunay {
            pts,
            tris: vec![[0, 1, 2]],
            adj: vec![[None; 3]],
            alive: vec![true],
            free: vec![],
            hint: 0,
        }
    }

    fn locate(&self, p: Point) -> Option<usize> {
        let mut t = if self.alive.get(self.hint).copied().unwrap_or(false) {
            self.hint
        } else {
            self.alive.iter().position(|&a| a)?
        };
        for _ in 0..4 * self.tris.len() + 16 {
            let [a, b, c] = self.tris[t];
            // Step across the first edge that strictly separates p.
            let mut moved = false;
            for (k, (u, v)) in [(b, c), (c, a), (a, b)].into_iter().enumerate() {
                if orient(self.pts[u], self.pts[v], p) < 0.0 {
                    if let Some(nb) = self.adj[t][k] {
                        t = nb;
                        moved = true;
                        break;
                    } else {
                        return None;
                    }
                }
            }
            if !moved {
                return Some(t);
            }
        }
        // Walk got stuck (numerically flat region): linear fallback.
        (0..self.tris.len()).find(|&t| {
            self.alive[t] && {
                let [a, b, c] = self.tris[t];
                orient(self.pts[a], self.pts[b], p) >= 0.0
                    && orient(self.pts[b], self.pts[c], p) >= 0.0
                    && orient(self.pts[c], self.pts[a], p) >= 0.0
            }
        })
    }

    /// Inserts a point, returns its vertex index (or the index of an existing
    /// vertex if `p` coincides with one within `tol`).
    fn insert(&mut self, p: Point, tol: f64) -> Result<usize> {
        let t0 = self
            .locate(p)
            .ok_or_else(|| Error::Meshing(format!("point ({}, {}) fell outside the hull", p.x, p.y)))?;
        for &v in &self.tris[t0] {
            if self.pts[v].dist(p) <= tol {
                return Ok(v);
            }
        }
        // Grow the cavity of triangles whose circumcircle contains p.
        let mut bad = vec![t0];
        let mut seen = HashMap::new();
        seen.insert(t0, ());
        let mut stack = vec![t0];
        while let Some(t) = stack.pop() {
            for k in 0..3 {
                if let Some(nb) = self.adj[t][k] {
                    if !seen.contains_key(&nb) {
                        let [a, b, c] = self.tris[nb];
                        if in_circumcircle(self.pts[a], self.pts[b], self.pts[c], p) {
                            seen.insert(nb, ());
                            bad.push(nb);
                            stack.push(nb);
                        }
                    }
                }
            }
        }
        // Cavity boundary: edges of bad triangles whose neighbor is not bad.
        let vi = self.pts.len();
        self.pts.push(p);
        let mut boundary: Vec<(usize, usize, Option<usize>)> = Vec::new();
        for &t in &bad {
            let [a, b, c] = self.tris[t];
            for (k, (u, v)) in [(b, c), (c, a), (a, b)].into_iter().enumerate() {
                let nb = self.adj[t][k];
                if nb.is_none() || !seen.contains_key(&nb.unwrap()) {
                    boundary.push((u, v, nb));
                }
            }
        }
        for &t in &bad {
            self.alive[t] = false;
            self.free.push(t);
        }
        // Re-triangulate the cavity as a fan from the new vertex.
        let mut edge_to_tri: HashMap<(usize, usize), usize> = HashMap::new();
        let mut created = Vec::with_capacity(boundary.len());
        for &(u, v, nb) in &boundary {
            let idx = if let Some(idx) = self.free.pop() {
                self.tris[idx] = [vi, u, v];
                self.adj[idx] = [nb, None, None];
                self.alive[idx] = true;
                idx
            } else {
                self.tris.push([vi, u, v]);
                self.adj.push([nb, None, None]);
                self.alive.push(true);
                self.tris.len() - 1
            };
            // Fix the outside neighbor's back-pointer.
            if let Some(nbt) = nb {
                let [a2, b2, c2] = self.tris[nbt];
                for (k, (x, y)) in [(b2, c2), (c2, a2), (a2, b2)].into_iter().enumerate() {
                    if (x == v && y == u) || (x == u && y == v) {
                        self.adj[nbt][k] = Some(idx);
                    }
                }
            }
            edge_to_tri.insert((vi, u), idx);
            edge_to_tri.insert((v, vi), idx);
            created.push(idx);
        }
        // Stitch fan neighbors: triangle [vi, u, v] has edge (v, vi) opposite
        // to u (slot 1) and edge (vi, u) opposite to v (slot 2).
        for &idx in &created {
            let [_, u, v] = self.tris[idx];
            self.adj[idx][1] = edge_to_tri.get(&(vi, v)).copied();
            self.adj[idx][2] = edge_to_tri.get(&(u, vi)).copied();
        }
        if let Some(&t) = created.first() {
            self.hint = t;
        }
        Ok(vi)
    }
}

struct SegmentStore {
    // Each subsegment: endpoints, loop tag, the corner angle bookkeeping.
    segs: Vec<(usize, usize, usize)>,
    by_pair: HashMap<(usize, usize), usize>,
}

impl SegmentStore {
    fn key(a: usize, b: usize) -> (usize, usize) {
        (a.min(b), a.max(b))
    }
    fn insert(&mut self, a: usize, b: usize, tag: usize) {
        let id = self.segs.len();
        self.segs.push((a, b, tag));
        self.by_pair.insert(Self::key(a, b), id);
    }
}

/// Triangulates a domain with target edge length `h`.
pub fn triangulate(domain: &Domain, h: f64) -> Result<Mesh> {
    if h <= 0.0 || !h.is_finite() {
        return Err(Error::Meshing("target edge length must be positive".into()));
    }
    let mut lo = Point::new(f64::MAX, f64::MAX);
    let mut hi = Point::new(f64::MIN, f64::MIN);
    for p in domain.loops().flatten() {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    // Needle-like inputs cannot be meshed at any quality: reject corners
    // sharper than 15 degrees up front (sharp-but-workable corners down to
    // that limit are handled by the refinement exemption).
    for lp in domain.loops() {
        let n = lp.len();
        for i in 0..n {
            let prev = lp[(i + n - 1) % n];
            let here = lp[i];
            let next = lp[(i + 1) % n];
            let d1 = prev - here;
            let d2 = next - here;
            let deg = (d1.dot(d2) / (d1.norm() * d2.norm())).clamp(-1.0, 1.0).acos().to_degrees();
            if deg < 15.0 {
                return Err(Error::Meshing(format!(
                    "needle-like corner at ({:.6}, {:.6}): opening {deg:.3} degrees",
                    here.x, here.y
                )));
            }
        }
    }
    let mut dt = Delaunay::new(lo, hi);
    let merge_tol = 1e-9 * h;

    // Boundary vertices: subdivide each polygon edge to length <= h.
    let mut store = SegmentStore { segs: vec![], by_pair: HashMap::new() };
    let mut corner_angles: HashMap<usize, f64> = HashMap::new();
    for (tag, lp) in domain.loops().enumerate() {
        let n = lp.len();
        let mut chain: Vec<usize> = Vec::new();
        let mut corner_ids: Vec<usize> = Vec::new();
        for i in 0..n {
            let a = lp[i];
            let b = lp[(i + 1) % n];
            let len = a.dist(b);
            let pieces = (len / h).ceil().max(1.0) as usize;
            let ia = dt.insert(a, merge_tol)?;
            if chain.is_empty() || *chain.last().unwrap() != ia {
                chain.push(ia);
            }
            corner_ids.push(ia);
            for s in 1..pieces {
                let t = s as f64 / pieces as f64;
                let v = dt.insert(a + (b - a) * t, merge_tol)?;
                chain.push(v);
            }
        }
        // Interior corner angles (for the sharp-corner exemption).
        for i in 0..n {
            let prev = lp[(i + n - 1) % n];
            let here = lp[i];
            let next = lp[(i + 1) % n];
            let d1 = prev - here;
            let d2 = next - here;
            let ang = (d1.dot(d2) / (d1.norm() * d2.norm())).clamp(-1.0, 1.0).acos();
            corner_angles.insert(corner_ids[i], ang.to_degrees());
        }
        chain.push(chain[0]);
        for w in chain.windows(2) {
            if w[0] != w[1] {
                store.insert(w[0], w[1], tag);
            }
        }
    }

    // Interior seeds on a hex lattice, kept away from the boundary.
    let dy = h * 3.0f64.sqrt() / 2.0;
    let mut row = 0usize;
    let mut y = lo.y + 0.5 * dy;
    while y < hi.y {
        let offset = if row % 2 == 0 { 0.5 * h } else { 0.0 };
        let mut x = lo.x + offset;
        while x < hi.x {
            let p = Point::new(x, y);
            if domain.contains(p) && domain.boundary_distance(p) >= 0.7 * h {
                dt.insert(p, merge_tol)?;
            }
            x += h;
        }
        y += dy;
        row += 1;
    }

    // Segment recovery: split any subsegment that is not a Delaunay edge.
    let max_vertices = 200_000usize.max(60 * ((domain.measure() / (h * h)) as usize + 16));
    recover_segments(&mut dt, &mut store, merge_tol, max_vertices)?;

    // Encroachment pass, then quality refinement.
    split_encroached(&mut dt, &mut store, merge_tol, max_vertices, h)?;
    let note = refine_quality(&mut dt, &mut store, domain, &corner_angles, h, merge_tol, max_vertices)?;

    finalize(&dt, &store, domain, h, note)
}

fn recover_segments(
    dt: &mut Delaunay,
    store: &mut SegmentStore,
    tol: f64,
    max_vertices: usize,
) -> Result<()> {
    loop {
        // Adjacency set of Delaunay edges for a quick membership test.
        let mut edges: HashMap<(usize, usize), ()> = HashMap::new();
        for t in 0..dt.tris.len() {
            if dt.alive[t] {
                let [a, b, c] = dt.tris[t];
                for (u, v) in [(a, b), (b, c), (c, a)] {
                    edges.insert(SegmentStore::key(u, v), ());
                }
            }
        }
        let missing: Vec<usize> = (0..store.segs.len())
            .filter(|&i| !edges.contains_key(&SegmentStore::key(store.segs[i].0, store.segs[i].1)))
            .collect();
        if missing.is_empty() {
            return Ok(());
        }
        if dt.pts.len() > max_vertices {
            return Err(Error::Meshing("segment recovery exceeded the vertex budget".into()));
        }
        for id in missing {
            split_segment(dt, store, id, tol)?;
        }
    }
}

fn split_segment(dt: &mut Delaunay, store: &mut SegmentStore, id: usize, tol: f64) -> Result<usize> {
    let (a, b, tag) = store.segs[id];
    let mid = (dt.pts[a] + dt.pts[b]) * 0.5;
    let v = dt.insert(mid, tol)?;
    store.by_pair.remove(&SegmentStore::key(a, b));
    store.segs[id] = (a, v, tag);
    store.by_pair.insert(SegmentStore::key(a, v), id);
    store.insert(v, b, tag);
    Ok(v)
}

fn encroaches(dt: &Delaunay, store: &SegmentStore, p: Point, skip: &[usize]) -> Option<usize> {
    for (i, &(a, b, _)) in store.segs.iter().enumerate() {
        if skip.contains(&a) || skip.contains(&b) {
            continue;
        }
        let pa = dt.pts[a];
        let pb = dt.pts[b];
        let mid = (pa + pb) * 0.5;
        let r = 0.5 * pa.dist(pb);
        if p.dist(mid) < r * (1.0 - 1e-12) {
            return Some(i);
        }
    }
    None
}

fn split_encroached(
    dt: &mut Delaunay,
    store: &mut SegmentStore,
    tol: f64,
    max_vertices: usize,
    h: f64,
) -> Result<()> {
    let min_len = 1e-3 * h;
    loop {
        let mut split_any = false;
        'outer: for id in 0..store.segs.len() {
            let (a, b, _) = store.segs[id];
            let pa = dt.pts[a];
            let pb = dt.pts[b];
            if pa.dist(pb) < min_len {
                continue;
            }
            let mid = (pa + pb) * 0.5;
            let r = 0.5 * pa.dist(pb);
            for (v, p) in dt.pts.iter().enumerate() {
                if v != a && v != b && v >= 3 && p.dist(mid) < r * (1.0 - 1e-12) {
                    split_segment(dt, store, id, tol)?;
                    split_any = true;
                    continue 'outer;
                }
            }
        }
        if !split_any {
            return Ok(());
        }
        if dt.pts.len() > max_vertices {
            return Err(Error::Meshing("encroachment splitting exceeded the vertex budget".into()));
        }
    }
}

fn circumcenter_radius(a: Point, b: Point, c: Point) -> (Point, f64) {
    let cc = crate::geometry::optim::circumcenter(a, b, c);
    (cc, cc.dist(a))
}

#[allow(clippy::too_many_arguments)]
fn refine_quality(
    dt: &mut Delaunay,
    store: &mut SegmentStore,
    domain: &Domain,
    corner_angles: &HashMap<usize, f64>,
    h: f64,
    tol: f64,
    max_vertices: usize,
) -> Result<Option<String>> {
    let min_angle_rad = MIN_ANGLE_DEG.to_radians();
    let mut exempted = 0usize;
    for _pass in 0..200 {
        let mut inserted = false;
        let tri_ids: Vec<usize> = (0..dt.tris.len()).filter(|&t| dt.alive[t]).collect();
        for t in tri_ids {
            if !dt.alive[t] {
                continue;
            }
            let [ia, ib, ic] = dt.tris[t];
            if ia < 3 || ib < 3 || ic < 3 {
                continue; // super-triangle fan
            }
            let (a, b, c) = (dt.pts[ia], dt.pts[ib], dt.pts[ic]);
            let centroid = (a + b + c) * (1.0 / 3.0);
            if !domain.contains(centroid) {
                continue;
            }
            // Bad = skinny (circumradius / shortest edge > 1/(2 sin min_angle))
            // or oversized.
            let (cc, r) = circumcenter_radius(a, b, c);
            let shortest = a.dist(b).min(b.dist(c)).min(c.dist(a));
            let longest = a.dist(b).max(b.dist(c)).max(c.dist(a));
            let skinny = r / shortest > 0.5 / min_angle_rad.sin();
            let oversized = longest > 1.8 * h;
            if !(skinny || oversized) {
                continue;
            }
            // Corner exemption: sharp input corners cannot be refined past
            // their opening angle; leave their fan alone.
            if skinny && !oversized {
                let sharp = [ia, ib, ic].iter().any(|v| {
                    corner_angles.get(v).map(|&deg| deg < 60.0).unwrap_or(false)
                });
                if sharp && shortest < 0.5 * h {
                    exempted += 1;
                    continue;
                }
                if shortest < 2e-3 * h {
                    exempted += 1;
                    continue;
                }
            }
            if dt.pts.len() > max_vertices {
                return Err(Error::Meshing(format!(
                    "quality refinement exceeded the vertex budget near ({:.4}, {:.4}); input too thin for h = {h}",
                    cc.x, cc.y
                )));
            }
            // Circumcenter insertion, unless it would encroach a segment.
            if let Some(seg) = encroaches(dt, store, cc, &[]) {
                let (sa, sb, _) = store.segs[seg];
                if dt.pts[sa].dist(dt.pts[sb]) > 1e-3 * h {
                    split_segment(dt, store, seg, tol)?;
                    inserted = true;
                }
                continue;
            }
            if dt.locate(cc).is_some() {
                dt.insert(cc, tol)?;
                inserted = true;
            }
        }
        if !inserted {
            break;
        }
    }
    Ok(if exempted > 0 {
        Some(format!("{exempted} sharp-corner triangles exempted from the {MIN_ANGLE_DEG} degree floor"))
    } else {
        None
    })
}

fn finalize(
    dt: &Delaunay,
    store: &SegmentStore,
    domain: &Domain,
    h: f64,
    note: Option<String>,
) -> Result<Mesh> {
    // Keep triangles with centroid inside the domain and no super vertex.
    let mut keep: Vec<[usize; 3]> = Vec::new();
    for t in 0..dt.tris.len() {
        if !dt.alive[t] {
            continue;
        }
        let [a, b, c] = dt.tris[t];
        if a < 3 || b < 3 || c < 3 {
            continue;
        }
        let centroid = (dt.pts[a] + dt.pts[b] + dt.pts[c]) * (1.0 / 3.0);
        if domain.contains(centroid) {
            keep.push([a, b, c]);
        }
    }
    // Compact vertex numbering, remembering the original indices.
    let mut remap = vec![usize::MAX; dt.pts.len()];
    let mut orig: Vec<usize> = Vec::new();
    let mut vertices = Vec::new();
    for tri in &keep {
        for &v in tri {
            if remap[v] == usize::MAX {
                remap[v] = vertices.len();
                vertices.push(dt.pts[v]);
                orig.push(v);
            }
        }
    }
    let triangles: Vec<[usize; 3]> = keep
        .iter()
        .map(|&[a, b, c]| {
            // Enforce positive orientation.
            if orient(dt.pts[a], dt.pts[b], dt.pts[c]) > 0.0 {
                [remap[a], remap[b], remap[c]]
            } else {
                [remap[a], remap[c], remap[b]]
            }
        })
        .collect();
    // Edge -> triangle count for conformity and boundary extraction.
    let mut edge_count: HashMap<(usize, usize), usize> = HashMap::new();
    for tri in &triangles {
        for (u, v) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])] {
            *edge_count.entry(SegmentStore::key(u, v)).or_insert(0) += 1;
        }
    }
    if edge_count.values().any(|&c| c > 2) {
        return Err(Error::Meshing("non-conforming mesh: an edge is shared by 3+ triangles".into()));
    }
    let mut boundary_edges = Vec::new();
    for (&(u, v), &cnt) in &edge_count {
        if cnt == 1 {
            // Tag by the segment store; a boundary edge must be a subsegment.
            let tag = store
                .by_pair
                .get(&SegmentStore::key(orig[u], orig[v]))
                .map(|&id| store.segs[id].2)
                .unwrap_or(usize::MAX);
            if tag == usize::MAX {
                return Err(Error::Meshing(
                    "boundary edge does not lie on an input segment (recovery failed)".into(),
                ));
            }
            boundary_edges.push((u, v, tag));
        }
    }
    boundary_edges.sort_unstable();
    if triangles.is_empty() {
        return Err(Error::Meshing("no triangles inside the domain".into()));
    }
    let mesh = Mesh { vertices, triangles, boundary_edges, h, quality_note: note };
    // Area sanity: the triangulation must cover the polygon.
    let rel = (mesh.area() - domain.measure()).abs() / domain.measure();
    if rel > 1e-8 {
        return Err(Error::Meshing(format!(
            "triangulated area differs from the polygon area by {rel:.2e}"
        )));
    }
    if mesh.quality_note.is_none() && mesh.min_angle_deg() < MIN_ANGLE_DEG - 1e-9 {
        return Err(Error::Meshing(format!(
            "refinement finished below the quality floor: {:.2} degrees",
            mesh.min_angle_deg()
        )));
    }
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rectangle, regular_polygon, Domain};

    #[test]
    fn unit_square_mesh_statistics() {
        let sq = rectangle("sq", 0.0, 0.0, 1.0, 1.0);
        let mesh = triangulate(&sq, 0.1).unwrap();
        assert!(mesh.triangles.len() >= 200 && mesh.triangles.len() <= 400, "{} triangles", mesh.triangles.len());
        assert!(mesh.min_angle_deg() >= MIN_ANGLE_DEG);
        assert!((mesh.area() - 1.0).abs() < 1e-10);
        assert!(mesh.boundary_edges.iter().all(|&(_, _, tag)| tag == 0));
    }

    #[test]
    fn halving_h_quadruples_triangles() {
        let sq = rectangle("sq", 0.0, 0.0, 1.0, 1.0);
        let coarse = triangulate(&sq, 0.1).unwrap().triangles.len() as f64;
        let fine = triangulate(&sq, 0.05).unwrap().triangles.len() as f64;
        let ratio = fine / coarse;
        assert!((3.0..=5.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn hole_gets_its_own_tag() {
        let hole = vec![
            Point::new(0.35, 0.35),
            Point::new(0.65, 0.35),
            Point::new(0.65, 0.65),
            Point::new(0.35, 0.65),
        ];
        let (dom, _) = Domain::new("holed", rectangle("sq", 0.0, 0.0, 1.0, 1.0).outer, vec![hole]).unwrap();
        let mesh = triangulate(&dom, 0.07).unwrap();
        let tags: std::collections::BTreeSet<usize> =
            mesh.boundary_edges.iter().map(|&(_, _, t)| t).collect();
        assert_eq!(tags.into_iter().collect::<Vec<_>>(), vec![0, 1]);
        assert!((mesh.area() - dom.measure()).abs() < 1e-10);
        assert!(mesh.min_angle_deg() >= MIN_ANGLE_DEG);
    }

    #[test]
    fn disc_and_lshape_quality() {
        let disc = regular_polygon("disc", 64, 1.0, Point::new(0.0, 0.0));
        let mesh = triangulate(&disc, 0.12).unwrap();
        assert!(mesh.min_angle_deg() >= MIN_ANGLE_DEG);
        let l = Domain::new(
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
        let lm = triangulate(&l, 0.1).unwrap();
        assert!(lm.min_angle_deg() >= MIN_ANGLE_DEG);
        assert!((lm.area() - 3.0).abs() < 1e-10);
    }

    #[test]
    fn needle_input_errors() {
        let needle = Domain::new(
            "needle",
            vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.5, 2e-5)],
            vec![],
        )
        .unwrap()
        .0;
        assert!(triangulate(&needle, 0.2).is_err());
    }

    #[test]
    fn boundary_edges_lie_on_exactly_one_triangle() {
        let sq = rectangle("sq", 0.0, 0.0, 1.0, 1.0);
        let mesh = triangulate(&sq, 0.15).unwrap();
        let mut count: HashMap<(usize, usize), usize> = HashMap::new();
        for t in &mesh.triangles {
            for (u, v) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                *count.entry((u.min(v), u.max(v))).or_insert(0) += 1;
            }
        }
        for &(a, b, _) in &mesh.boundary_edges {
            assert_eq!(count[&(a.min(b), a.max(b))], 1);
        }
        // All triangles positively oriented.
        for t in 0..mesh.triangles.len() {
            assert!(mesh.triangle_area(t) > 0.0);
        }
    }

    #[test]
    fn off_export_shape() {
        let sq = rectangle("sq", 0.0, 0.0, 1.0, 1.0);
        let mesh = triangulate(&sq, 0.3).unwrap();
        let off = mesh.to_off();
        assert!(off.starts_with("OFF\n"));
        let header: Vec<usize> = off.lines().nth(1).unwrap().split_whitespace().map(|s| s.parse().unwrap()).collect();
        assert_eq!(header[0], mesh.vertices.len());
        assert_eq!(header[1], mesh.triangles.len());
    }
}
