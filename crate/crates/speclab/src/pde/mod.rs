//! Planar P1 finite-element kernel: meshing, assembly and eigenvalue /
//! torsion solves for Dirichlet, Neumann, Steklov and Robin conditions,
//! plus the semilinear Dirichlet eigenvalue.

pub mod assemble;
pub mod eigen;
pub mod mesh;
pub mod sparse;

pub use assemble::{assemble, DiscreteOperators};
pub use mesh::{triangulate, Mesh};

use crate::{Error, Result};
use eigen::{dense_generalized, dot, subspace_smallest, SubspaceOptions};
use nalgebra::DMatrix;
use serde::Serialize;
use sparse::SkylineChol;

/// Residual bound every returned eigenpair must satisfy.
pub const EIG_RESIDUAL_TOL: f64 = 1e-8;
/// Largest eigenvalue index exposed by the solvers.
pub const MAX_EIGS: usize = 6;
/// Dense Steklov reduction cap on boundary unknowns.
pub const MAX_BOUNDARY_NODES: usize = 4000;

#[derive(Debug, Clone, Serialize)]
pub struct EigResult {
    pub values: Vec<f64>,
    #[serde(skip)]
    pub vectors: Vec<Vec<f64>>,
    pub residuals: Vec<f64>,
    pub h: f64,
    pub extrapolated: Option<Vec<f64>>,
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 || k > MAX_EIGS {
        return Err(Error::UnsupportedInput(format!("eigenvalue count {k} outside 1..={MAX_EIGS}")));
    }
    Ok(())
}

fn embed(full_len: usize, idx: &[usize], x: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; full_len];
    for (v, &i) in x.iter().zip(idx.iter()) {
        out[i] = *v;
    }
    out
}

fn check_residuals(res: &[f64], what: &str) -> Result<()> {
    if let Some(&worst) = res.iter().max_by(|a, b| a.partial_cmp(b).unwrap()) {
        if worst > EIG_RESIDUAL_TOL {
            return Err(Error::Solver(format!(
                "{what} residual {worst:.3e} exceeds {EIG_RESIDUAL_TOL:.0e}"
            )));
        }
    }
    Ok(())
}

/// Dirichlet eigenvalues by elimination of the boundary unknowns.
pub fn dirichlet_eigs(mesh: &Mesh, ops: &DiscreteOperators, k: usize) -> Result<EigResult> {
    check_k(k)?;
    let ki = ops.stiffness.restrict(&ops.interior);
    let mi = ops.mass.restrict(&ops.interior);
    let res = subspace_smallest(&ki, &mi, &[], &SubspaceOptions { k, seed: 0xD1, ..Default::default() })?;
    check_residuals(&res.residuals, "dirichlet")?;
    Ok(EigResult {
        values: res.values,
        vectors: res.vectors.iter().map(|x| embed(ops.n, &ops.interior, x)).collect(),
        residuals: res.residuals,
        h: mesh.h,
        extrapolated: None,
    })
}

/// First k nontrivial Neumann eigenvalues (mu_2, ..., mu_{k+1}); the zero
/// eigenvalue is removed by deflating the constant vector.
pub fn neumann_eigs(mesh: &Mesh, ops: &DiscreteOperators, k: usize) -> Result<EigResult> {
    check_k(k)?;
    let trace_k: f64 = (0..ops.n).map(|i| ops.stiffness.get(i, i)).sum();
    let trace_m: f64 = (0..ops.n).map(|i| ops.mass.get(i, i)).sum();
    let sigma = 1e-3 * trace_k / trace_m;
    let shifted = ops.stiffness.add_scaled(&ops.mass, sigma);
    let ones = vec![1.0; ops.n];
    let res = subspace_smallest(
        &shifted,
        &ops.mass,
        &[ones],
        &SubspaceOptions { k, seed: 0x8e, ..Default::default() },
    )?;
    // Shift back: mu = theta - sigma. The residual of the shifted pencil
    // equals the residual of (K, M) at the shifted-back value.
    let values: Vec<f64> = res.values.iter().map(|t| t - sigma).collect();
    check_residuals(&res.residuals, "neumann")?;
    Ok(EigResult {
        values,
        vectors: res.vectors,
        residuals: res.residuals,
        h: mesh.h,
        extrapolated: None,
    })
}

/// First Robin eigenvalue of (K + alpha Bd) u = lambda M u.
pub fn robin_eig1(mesh: &Mesh, ops: &DiscreteOperators, alpha: f64) -> Result<EigResult> {
    if alpha <= 0.0 {
        return Err(Error::UnsupportedInput("robin_eig1 requires alpha > 0".into()));
    }
    let a = ops.stiffness.add_scaled(&ops.boundary_mass, alpha);
    let res = subspace_smallest(&a, &ops.mass, &[], &SubspaceOptions { k: 1, seed: 0x40, ..Default::default() })?;
    check_residuals(&res.residuals, "robin")?;
    Ok(EigResult {
        values: res.values,
        vectors: res.vectors,
        residuals: res.residuals,
        h: mesh.h,
        extrapolated: None,
    })
}

/// Steklov eigenvalues via the dense Dirichlet-to-Neumann reduction on the
/// boundary unknowns: returns sigma_2, ..., sigma_{k+1}.
pub fn steklov_eigs(mesh: &Mesh, ops: &DiscreteOperators, k: usize) -> Result<EigResult> {
    check_k(k)?;
    let nb = ops.boundary.len();
    if nb == 0 {
        return Err(Error::UnsupportedInput("steklov needs a nonempty boundary".into()));
    }
    if nb > MAX_BOUNDARY_NODES {
        return Err(Error::UnsupportedInput(format!(
            "boundary has {nb} nodes, above the dense cap {MAX_BOUNDARY_NODES}"
        )));
    }
    let ki = ops.stiffness.restrict(&ops.interior);
    let chol = SkylineChol::factor(&ki)?;
    let mut int_pos = vec![usize::MAX; ops.n];
    for (p, &i) in ops.interior.iter().enumerate() {
        int_pos[i] = p;
    }
    let mut bnd_pos = vec![usize::MAX; ops.n];
    for (p, &b) in ops.boundary.iter().enumerate() {
        bnd_pos[b] = p;
    }
    // Dense DtN (Schur complement) S = K_bb - K_bi K_ii^{-1} K_ib.
    let mut s = DMatrix::zeros(nb, nb);
    let mut harmonic_cols: Vec<Vec<f64>> = Vec::with_capacity(nb);
    for (jj, &bj) in ops.boundary.iter().enumerate() {
        // Column K_ib e_j as an interior vector (symmetry: read row bj).
        let mut rhs = vec![0.0; ops.interior.len()];
        for t in ops.stiffness.row_ptr[bj]..ops.stiffness.row_ptr[bj + 1] {
            let col = ops.stiffness.cols[t];
            if int_pos[col] != usize::MAX {
                rhs[int_pos[col]] = ops.stiffness.vals[t];
            }
        }
        let x = chol.solve(&rhs);
        for (ii, &bi) in ops.boundary.iter().enumerate() {
            let mut acc = ops.stiffness.get(bi, bj);
            for t in ops.stiffness.row_ptr[bi]..ops.stiffness.row_ptr[bi + 1] {
                let col = ops.stiffness.cols[t];
                if int_pos[col] != usize::MAX {
                    acc -= ops.stiffness.vals[t] * x[int_pos[col]];
                }
            }
            s[(ii, jj)] = acc;
        }
        harmonic_cols.push(x);
    }
    let s = (&s + s.transpose()) * 0.5;
    let mut bd = DMatrix::zeros(nb, nb);
    for (ii, &bi) in ops.boundary.iter().enumerate() {
        for t in ops.boundary_mass.row_ptr[bi]..ops.boundary_mass.row_ptr[bi + 1] {
            let col = ops.boundary_mass.cols[t];
            if bnd_pos[col] != usize::MAX {
                bd[(ii, bnd_pos[col])] = ops.boundary_mass.vals[t];
            }
        }
    }
    let (vals, vecs) = dense_generalized(&s, &bd)?;
    // sigma_1 ~ 0 corresponds to the constant; drop it.
    let mut values = Vec::with_capacity(k);
    let mut vectors = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    for idx in 1..=k {
        if idx >= vals.len() {
            return Err(Error::Solver("not enough Steklov modes on this boundary".into()));
        }
        let sigma = vals[idx];
        let g = vecs.column(idx).into_owned();
        let r = (&s * &g - &bd * &g * sigma).norm() / g.norm();
        // Full-length vector: boundary data plus harmonic extension,
        // assembled from the cached interior columns.
        let mut u = vec![0.0; ops.n];
        for (ii, &bi) in ops.boundary.iter().enumerate() {
            u[bi] = g[ii];
        }
        let mut interior_vals = vec![0.0; ops.interior.len()];
        for (jj, gj) in g.iter().enumerate() {
            if *gj != 0.0 {
                for (p, v) in harmonic_cols[jj].iter().enumerate() {
                    interior_vals[p] -= gj * v;
                }
            }
        }
        for (p, &i) in ops.interior.iter().enumerate() {
            u[i] = interior_vals[p];
        }
        values.push(sigma);
        vectors.push(u);
        residuals.push(r);
    }
    check_residuals(&residuals, "steklov")?;
    // Interior harmonicity of the returned eigenvectors.
    for u in &vectors {
        let mut kv = vec![0.0; ops.n];
        ops.stiffness.matvec(u, &mut kv);
        let mut r2 = 0.0;
        let mut u2 = 0.0;
        for &i in &ops.interior {
            r2 += kv[i] * kv[i];
        }
        for v in u {
            u2 += v * v;
        }
        let r = (r2 / u2).sqrt();
        if r > EIG_RESIDUAL_TOL {
            return Err(Error::Solver(format!("steklov harmonic residual {r:.3e}")));
        }
    }
    Ok(EigResult { values, vectors, residuals, h: mesh.h, extrapolated: None })
}

#[derive(Debug, Clone, Serialize)]
pub struct TorsionResult {
    pub torsion: f64,
    #[serde(skip)]
    pub function: Vec<f64>,
    /// Most negative nodal value (discrete maximum-principle check; tiny
    /// negatives are reported, not fatal).
    pub min_value: f64,
    pub h: f64,
    pub extrapolated: Option<f64>,
}

/// Torsion function and torsional rigidity: solve K w = load on interior
/// unknowns, T = load . w.
pub fn torsion(mesh: &Mesh, ops: &DiscreteOperators) -> Result<TorsionResult> {
    let ki = ops.stiffness.restrict(&ops.interior);
    let chol = SkylineChol::factor(&ki)?;
    let rhs: Vec<f64> = ops.interior.iter().map(|&i| ops.load[i]).collect();
    let w_int = chol.solve(&rhs);
    let t = dot(&rhs, &w_int);
    let min_value = w_int.iter().copied().fold(f64::INFINITY, f64::min).min(0.0);
    Ok(TorsionResult {
        torsion: t,
        function: embed(ops.n, &ops.interior, &w_int),
        min_value,
        h: mesh.h,
        extrapolated: None,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SemilinearResult {
    pub value: f64,
    #[serde(skip)]
    pub vector: Vec<f64>,
    /// Eigenvalue iterate history of the winning start.
    pub history: Vec<f64>,
    pub h: f64,
}

/// Discrete L^q integral of the P1 interpolant by a degree-5 rule.
pub fn lq_integral(mesh: &Mesh, u: &[f64], q: f64) -> f64 {
    // 7-point Radon rule, degree 5 on the reference triangle.
    const PTS: [(f64, f64, f64); 7] = [
        (1.0 / 3.0, 1.0 / 3.0, 0.225),
        (0.059_715_871_789_77, 0.470_142_064_105_115, 0.132_394_152_788_506),
        (0.470_142_064_105_115, 0.059_715_871_789_77, 0.132_394_152_788_506),
        (0.470_142_064_105_115, 0.470_142_064_105_115, 0.132_394_152_788_506),
        (0.797_426_985_353_087, 0.101_286_507_323_456, 0.125_939_180_544_827),
        (0.101_286_507_323_456, 0.797_426_985_353_087, 0.125_939_180_544_827),
        (0.101_286_507_323_456, 0.101_286_507_323_456, 0.125_939_180_544_827),
    ];
    let mut acc = 0.0;
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let area = mesh.triangle_area(t);
        let (u0, u1, u2) = (u[tri[0]], u[tri[1]], u[tri[2]]);
        let mut local = 0.0;
        for &(l1, l2, w) in &PTS {
            let val = u0 * (1.0 - l1 - l2) + u1 * l1 + u2 * l2;
            local += w * val.abs().powf(q);
        }
        acc += area * local;
    }
    acc
}

/// Gradient of the L^q integral with respect to nodal values: the
/// variationally consistent right side int phi_i |u|^{q-2} u dx by the same
/// degree-5 rule (for q = 1 this reduces exactly to the load vector, for
/// q = 2 exactly to M u).
fn lq_gradient(mesh: &Mesh, u: &[f64], q: f64) -> Vec<f64> {
    const PTS: [(f64, f64, f64); 7] = [
        (1.0 / 3.0, 1.0 / 3.0, 0.225),
        (0.059_715_871_789_77, 0.470_142_064_105_115, 0.132_394_152_788_506),
        (0.470_142_064_105_115, 0.059_715_871_789_77, 0.132_394_152_788_506),
        (0.470_142_064_105_115, 0.470_142_064_105_115, 0.132_394_152_788_506),
        (0.797_426_985_353_087, 0.101_286_507_323_456, 0.125_939_180_544_827),
        (0.101_286_507_323_456, 0.797_426_985_353_087, 0.125_939_180_544_827),
        (0.101_286_507_323_456, 0.101_286_507_323_456, 0.125_939_180_544_827),
    ];
    let mut out = vec![0.0; u.len()];
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let area = mesh.triangle_area(t);
        let (u0, u1, u2) = (u[tri[0]], u[tri[1]], u[tri[2]]);
        for &(l1, l2, w) in &PTS {
            let l0 = 1.0 - l1 - l2;
            let val: f64 = u0 * l0 + u1 * l1 + u2 * l2;
            let f = val.abs().powf(q - 1.0) * val.signum();
            out[tri[0]] += area * w * f * l0;
            out[tri[1]] += area * w * f * l1;
            out[tri[2]] += area * w * f * l2;
        }
    }
    out
}

/// First semilinear Dirichlet eigenvalue by a normalized inverse-power fixed
/// point, multistarted from the torsion function and the linear ground state.
pub fn semilinear_eig(mesh: &Mesh, ops: &DiscreteOperators, q: f64) -> Result<SemilinearResult> {
    if q < 1.0 || !q.is_finite() {
        return Err(Error::UnsupportedInput(format!("semilinear exponent q={q} must be >= 1")));
    }
    let ki = ops.stiffness.restrict(&ops.interior);
    let mi = ops.mass.restrict(&ops.interior);
    let chol = SkylineChol::factor(&ki)?;
    let _ = &mi;
    let torsion_start = {
        let rhs: Vec<f64> = ops.interior.iter().map(|&i| ops.load[i]).collect();
        chol.solve(&rhs)
    };
    let ground_start = {
        let res = subspace_smallest(&ki, &mi, &[], &SubspaceOptions { k: 1, seed: 0x91, ..Default::default() })?;
        res.vectors.into_iter().next().unwrap()
    };
    let run = |start: &[f64]| -> Result<(f64, Vec<f64>, Vec<f64>)> {
        let mut u: Vec<f64> = start.to_vec();
        // Positive normalization (ground states are signless).
        if u.iter().sum::<f64>() < 0.0 {
            u.iter_mut().for_each(|v| *v = -*v);
        }
        let mut history = Vec::new();
        let mut lam_prev = f64::INFINITY;
        for _ in 0..600 {
            let norm = lq_integral(mesh, &embed(ops.n, &ops.interior, &u), q).powf(1.0 / q);
            u.iter_mut().for_each(|v| *v /= norm);
            let mut ku = vec![0.0; u.len()];
            ki.matvec(&u, &mut ku);
            let energy = dot(&u, &ku);
            let lq = lq_integral(mesh, &embed(ops.n, &ops.interior, &u), q);
            let lam = energy / lq.powf(2.0 / q);
            history.push(lam);
            if ((lam - lam_prev) / lam).abs() < 1e-10 {
                return Ok((lam, u, history));
            }
            // Next iterate: K v = grad(1/q int |u|^q), quadrature-consistent.
            let grad_full = lq_gradient(mesh, &embed(ops.n, &ops.interior, &u), q);
            let rhs: Vec<f64> = ops.interior.iter().map(|&i| grad_full[i]).collect();
            let v = chol.solve(&rhs);
            if lam > lam_prev && q > 2.0 {
                // Damp oscillation for super-quadratic exponents.
                u = u.iter().zip(v.iter()).map(|(a, b)| 0.5 * a + 0.5 * b).collect();
            } else {
                u = v;
            }
            lam_prev = lam;
        }
        Err(Error::NonConvergence { context: format!("semilinear q={q}"), history })
    };
    let (mut best, mut best_u, mut best_hist) = run(&torsion_start)?;
    let (lam2, u2, hist2) = run(&ground_start)?;
    if lam2 < best {
        best = lam2;
        best_u = u2;
        best_hist = hist2;
    }
    Ok(SemilinearResult {
        value: best,
        vector: embed(ops.n, &ops.interior, &best_u),
        history: best_hist,
        h: mesh.h,
    })
}

/// Standard h^2 Richardson extrapolation from mesh sizes (h, h/2); returns
/// the improved value and the error estimate |v_fine - v_coarse| / 3.
pub fn richardson(coarse: f64, fine: f64) -> (f64, f64) {
    let corr = (fine - coarse) / 3.0;
    (fine + corr, corr.abs())
}
