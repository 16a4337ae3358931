//! Generalized symmetric eigenvalue solvers: dense (Cholesky reduction) and
//! sparse (shift-inverted subspace iteration on a skyline factorization).

use super::sparse::{SkylineChol, SymmCsr};
use crate::{Error, Result};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Solves A x = theta B x for dense symmetric A and SPD B; eigenvalues
/// ascending, eigenvectors as columns of the returned matrix.
pub fn dense_generalized(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    let chol = nalgebra::Cholesky::new(b.clone())
        .ok_or_else(|| Error::Solver("right-hand matrix is not positive definite".into()))?;
    let l = chol.l();
    let w = l
        .solve_lower_triangular(a)
        .ok_or_else(|| Error::Solver("triangular solve failed".into()))?;
    let c = l
        .solve_lower_triangular(&w.transpose())
        .ok_or_else(|| Error::Solver("triangular solve failed".into()))?;
    // Symmetrize against roundoff before the dense eigensolve.
    let c = (&c + c.transpose()) * 0.5;
    let eig = nalgebra::SymmetricEigen::new(c);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let lt = l.transpose();
    let mut vectors = DMatrix::zeros(n, n);
    for (kk, &i) in order.iter().enumerate() {
        let y = eig.eigenvectors.column(i).into_owned();
        let x = lt
            .solve_upper_triangular(&y)
            .ok_or_else(|| Error::Solver("triangular back-solve failed".into()))?;
        vectors.set_column(kk, &x);
    }
    Ok((values, vectors))
}

/// Smallest `k` eigenpairs of A x = lambda B x with A factorizable SPD
/// (possibly after a shift folded into A by the caller) and B SPD (or PSD on
/// the deflated complement). `deflate` vectors are removed from all iterates
/// in the B-inner product.
pub struct SubspaceOptions {
    pub k: usize,
    pub seed: u64,
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for SubspaceOptions {
    fn default() -> Self {
        SubspaceOptions { k: 1, seed: 0x5eed, max_iter: 600, tol: 1e-13 }
    }
}

pub struct SubspaceResult {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub residuals: Vec<f64>,
    pub iterations: usize,
}

pub fn subspace_smallest(
    a: &SymmCsr,
    b: &SymmCsr,
    deflate: &[Vec<f64>],
    opts: &SubspaceOptions,
) -> Result<SubspaceResult> {
    let n = a.n;
    let k = opts.k;
    if k == 0 || k + deflate.len() >= n {
        return Err(Error::Solver(format!("subspace size {k} infeasible for n = {n}")));
    }
    let p = (k + 5).min(n - deflate.len());
    let chol = SkylineChol::factor(a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    // B-normalized deflation basis (assumed B-orthogonal inputs; typical use
    // is a single kernel vector).
    let mut defl: Vec<(Vec<f64>, f64)> = Vec::new();
    for d in deflate {
        let mut bd = vec![0.0; n];
        b.matvec(d, &mut bd);
        let norm2 = dot(d, &bd);
        defl.push((d.clone(), norm2));
    }
    let remove_deflated = |x: &mut Vec<f64>, b: &SymmCsr| {
        for (d, norm2) in &defl {
            let mut bx = vec![0.0; x.len()];
            b.matvec(x, &mut bx);
            let coef = dot(d, &bx) / norm2;
            for (xi, di) in x.iter_mut().zip(d.iter()) {
                *xi -= coef * di;
            }
        }
    };
    let mut xs: Vec<Vec<f64>> = (0..p)
        .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    for x in xs.iter_mut() {
        remove_deflated(x, b);
    }
    let mut prev: Vec<f64> = vec![f64::INFINITY; k];
    let mut stable = 0usize;
    let mut iterations = 0usize;
    let mut theta = vec![0.0; p];
    for it in 0..opts.max_iter {
        iterations = it + 1;
        // Power step through A^{-1} B.
        let mut ys: Vec<Vec<f64>> = Vec::with_capacity(p);
        for x in &xs {
            let mut bx = vec![0.0; n];
            b.matvec(x, &mut bx);
            let mut y = chol.solve(&bx);
            remove_deflated(&mut y, b);
            ys.push(y);
        }
        // Rayleigh-Ritz on span(ys).
        let mut ap = DMatrix::zeros(p, p);
        let mut bp = DMatrix::zeros(p, p);
        let mut ays: Vec<Vec<f64>> = Vec::with_capacity(p);
        let mut bys: Vec<Vec<f64>> = Vec::with_capacity(p);
        for y in &ys {
            let mut ay = vec![0.0; n];
            a.matvec(y, &mut ay);
            let mut by = vec![0.0; n];
            b.matvec(y, &mut by);
            ays.push(ay);
            bys.push(by);
        }
        for i in 0..p {
            for j in 0..p {
                ap[(i, j)] = dot(&ys[i], &ays[j]);
                bp[(i, j)] = dot(&ys[i], &bys[j]);
            }
        }
        // Regularize tiny asymmetry from roundoff.
        let (vals, w) = dense_generalized(&ap, &bp)?;
        theta = vals;
        // New block: X = Y W, B-normalized.
        let mut new_xs: Vec<Vec<f64>> = Vec::with_capacity(p);
        for col in 0..p {
            let mut x = vec![0.0; n];
            for (j, y) in ys.iter().enumerate() {
                let wj = w[(j, col)];
                if wj != 0.0 {
                    for (xi, yi) in x.iter_mut().zip(y.iter()) {
                        *xi += wj * yi;
                    }
                }
            }
            let mut bx = vec![0.0; n];
            b.matvec(&x, &mut bx);
            let nrm = dot(&x, &bx).max(1e-300).sqrt();
            for xi in x.iter_mut() {
                *xi /= nrm;
            }
            new_xs.push(x);
        }
        xs = new_xs;
        let change = (0..k)
            .map(|i| ((theta[i] - prev[i]) / theta[i].abs().max(1e-300)).abs())
            .fold(0.0f64, f64::max);
        prev[..k].copy_from_slice(&theta[..k]);
        if change < opts.tol {
            stable += 1;
            if stable >= 2 {
                break;
            }
        } else {
            stable = 0;
        }
    }
    // Residuals in the Euclidean norm.
    let mut residuals = Vec::with_capacity(k);
    for (i, x) in xs.iter().take(k).enumerate() {
        let mut ax = vec![0.0; n];
        a.matvec(x, &mut ax);
        let mut bx = vec![0.0; n];
        b.matvec(x, &mut bx);
        let mut r2 = 0.0;
        let mut x2 = 0.0;
        for j in 0..n {
            let r = ax[j] - theta[i] * bx[j];
            r2 += r * r;
            x2 += x[j] * x[j];
        }
        residuals.push((r2 / x2).sqrt());
    }
    Ok(SubspaceResult {
        values: theta[..k].to_vec(),
        vectors: xs.into_iter().take(k).collect(),
        residuals,
        iterations,
    })
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn dense_generalized_diag() {
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![3.0, 1.0, 2.0]));
        let b = DMatrix::identity(3, 3);
        let (vals, vecs) = dense_generalized(&a, &b).unwrap();
        assert_relative_eq!(vals[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(vals[2], 3.0, epsilon = 1e-12);
        assert_relative_eq!(vecs.column(0)[1].abs(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn subspace_finds_smallest_of_tridiagonal() {
        // 1D Dirichlet Laplacian vs identity mass: eigenvalues
        // 4 sin^2(pi j / (2(n+1))).
        let n = 120;
        let mut trip = Vec::new();
        for i in 0..n {
            trip.push((i, i, 2.0));
            if i + 1 < n {
                trip.push((i, i + 1, -1.0));
                trip.push((i + 1, i, -1.0));
            }
        }
        let a = SymmCsr::from_triplets(n, trip);
        let mut b_trip = Vec::new();
        for i in 0..n {
            b_trip.push((i, i, 1.0));
        }
        let b = SymmCsr::from_triplets(n, b_trip);
        let res = subspace_smallest(&a, &b, &[], &SubspaceOptions { k: 3, ..Default::default() }).unwrap();
        for j in 0..3 {
            let exact = 4.0 * (std::f64::consts::PI * (j as f64 + 1.0) / (2.0 * (n as f64 + 1.0))).sin().powi(2);
            assert_relative_eq!(res.values[j], exact, max_relative = 1e-10);
            assert!(res.residuals[j] < 1e-9);
        }
    }

    #[test]
    fn subspace_handles_degenerate_pairs() {
        // Block diagonal with a double eigenvalue.
        let diag = [1.0, 1.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0];
        let n = diag.len();
        let trip: Vec<_> = diag.iter().enumerate().map(|(i, &d)| (i, i, d)).collect();
        let a = SymmCsr::from_triplets(n, trip);
        let b = SymmCsr::from_triplets(n, (0..n).map(|i| (i, i, 1.0)).collect());
        let res = subspace_smallest(&a, &b, &[], &SubspaceOptions { k: 2, ..Default::default() }).unwrap();
        assert_relative_eq!(res.values[0], 1.0, epsilon = 1e-10);
        assert_relative_eq!(res.values[1], 1.0, epsilon = 1e-10);
    }
}
