//! P1 finite element assembly: stiffness, mass, boundary mass, load.

use super::mesh::Mesh;
use super::sparse::SymmCsr;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct DiscreteOperators {
    pub stiffness: SymmCsr,
    pub mass: SymmCsr,
    /// Boundary mass over all loops; entries only on boundary vertices.
    pub boundary_mass: SymmCsr,
    pub load: Vec<f64>,
    pub interior: Vec<usize>,
    pub boundary: Vec<usize>,
    pub n: usize,
}

/// Exact per-triangle closed-form integrals for linear elements.
pub fn assemble(mesh: &Mesh) -> Result<DiscreteOperators> {
    let n = mesh.vertices.len();
    let mut k_trip = Vec::with_capacity(9 * mesh.triangles.len());
    let mut m_trip = Vec::with_capacity(9 * mesh.triangles.len());
    let mut load = vec![0.0; n];
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let [i0, i1, i2] = *tri;
        let (p0, p1, p2) = (mesh.vertices[i0], mesh.vertices[i1], mesh.vertices[i2]);
        let area = 0.5 * (p1 - p0).cross(p2 - p0);
        if area <= 0.0 || !area.is_finite() {
            return Err(Error::Solver(format!("degenerate triangle {t} (area {area})")));
        }
        // Gradient coefficients: phi_i = (a_i + b_i x + c_i y) / (2 A).
        let b = [p1.y - p2.y, p2.y - p0.y, p0.y - p1.y];
        let c = [p2.x - p1.x, p0.x - p2.x, p1.x - p0.x];
        let idx = [i0, i1, i2];
        for i in 0..3 {
            for j in 0..3 {
                let kij = (b[i] * b[j] + c[i] * c[j]) / (4.0 * area);
                k_trip.push((idx[i], idx[j], kij));
                let mij = area / 12.0 * if i == j { 2.0 } else { 1.0 };
                m_trip.push((idx[i], idx[j], mij));
            }
            load[idx[i]] += area / 3.0;
        }
    }
    let mut bd_trip = Vec::with_capacity(4 * mesh.boundary_edges.len());
    for &(a, b, _) in &mesh.boundary_edges {
        let len = mesh.vertices[a].dist(mesh.vertices[b]);
        bd_trip.push((a, a, len / 3.0));
        bd_trip.push((b, b, len / 3.0));
        bd_trip.push((a, b, len / 6.0));
        bd_trip.push((b, a, len / 6.0));
    }
    let on_boundary = mesh.is_boundary_vertex();
    let boundary: Vec<usize> = (0..n).filter(|&v| on_boundary[v]).collect();
    let interior: Vec<usize> = (0..n).filter(|&v| !on_boundary[v]).collect();
    Ok(DiscreteOperators {
        stiffness: SymmCsr::from_triplets(n, k_trip),
        mass: SymmCsr::from_triplets(n, m_trip),
        boundary_mass: SymmCsr::from_triplets(n, bd_trip),
        load,
        interior,
        boundary,
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rectangle, Point};
    use crate::pde::mesh::{triangulate, Mesh};
    use approx::assert_relative_eq;

    fn reference_triangle_mesh() -> Mesh {
        Mesh {
            vertices: vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)],
            triangles: vec![[0, 1, 2]],
            boundary_edges: vec![(0, 1, 0), (1, 2, 0), (2, 0, 0)],
            h: 1.0,
            quality_note: None,
        }
    }

    #[test]
    fn reference_element_matrices() {
        let ops = assemble(&reference_triangle_mesh()).unwrap();
        // Stiffness of the unit right triangle: [[1, -1/2, -1/2], ...].
        assert_relative_eq!(ops.stiffness.get(0, 0), 1.0, epsilon = 1e-14);
        assert_relative_eq!(ops.stiffness.get(0, 1), -0.5, epsilon = 1e-14);
        assert_relative_eq!(ops.stiffness.get(1, 1), 0.5, epsilon = 1e-14);
        assert_relative_eq!(ops.stiffness.get(1, 2), 0.0, epsilon = 1e-14);
        // Mass: A/12 (1 + delta) with A = 1/2.
        assert_relative_eq!(ops.mass.get(0, 0), 1.0 / 12.0, epsilon = 1e-14);
        assert_relative_eq!(ops.mass.get(0, 1), 1.0 / 24.0, epsilon = 1e-14);
        assert_relative_eq!(ops.load[0], 1.0 / 6.0, epsilon = 1e-14);
    }

    #[test]
    fn partition_of_unity_sums() {
        let sq = rectangle("sq", 0.0, 0.0, 1.0, 1.0);
        let mesh = triangulate(&sq, 0.13).unwrap();
        let ops = assemble(&mesh).unwrap();
        // Row sums of K vanish (constants in the kernel).
        let ones = vec![1.0; ops.n];
        let mut ku = vec![0.0; ops.n];
        ops.stiffness.matvec(&ones, &mut ku);
        for v in &ku {
            assert!(v.abs() < 1e-12);
        }
        // Sum of all M entries = |Omega| = sum of the load vector.
        let m_total = ops.mass.quadratic_form(&ones, &ones);
        assert_relative_eq!(m_total, 1.0, epsilon = 1e-12);
        assert_relative_eq!(ops.load.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        // Boundary mass total = perimeter.
        let bd_total = ops.boundary_mass.quadratic_form(&ones, &ones);
        assert_relative_eq!(bd_total, 4.0, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_triangle_rejected() {
        let mut mesh = reference_triangle_mesh();
        mesh.vertices[2] = Point::new(0.5, 0.0);
        assert!(assemble(&mesh).is_err());
    }
}
