//! Sparse symmetric storage, reverse Cuthill-McKee ordering and a profile
//! (skyline) Cholesky factorization for the FEM solves.

use crate::{Error, Result};

/// Symmetric sparse matrix in CSR form (full pattern stored).
#[derive(Debug, Clone)]
pub struct SymmCsr {
    pub n: usize,
    pub row_ptr: Vec<usize>,
    pub cols: Vec<usize>,
    pub vals: Vec<f64>,
}

impl SymmCsr {
    /// Builds from unordered (i, j, v) triplets, summing duplicates.
    pub fn from_triplets(n: usize, mut trip: Vec<(usize, usize, f64)>) -> Self {
        trip.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut row_counts = vec![0usize; n];
        let mut cols = Vec::with_capacity(trip.len());
        let mut vals: Vec<f64> = Vec::with_capacity(trip.len());
        let mut last: Option<(usize, usize)> = None;
        for (i, j, v) in trip {
            if last == Some((i, j)) {
                *vals.last_mut().unwrap() += v;
            } else {
                cols.push(j);
                vals.push(v);
                row_counts[i] += 1;
                last = Some((i, j));
            }
        }
        let mut row_ptr = vec![0usize; n + 1];
        for i in 0..n {
            row_ptr[i + 1] = row_ptr[i] + row_counts[i];
        }
        SymmCsr { n, row_ptr, cols, vals }
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        y.fill(0.0);
        for i in 0..self.n {
            let mut acc = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            y[i] = acc;
        }
    }

    pub fn quadratic_form(&self, x: &[f64], y: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += x[i] * self.vals[k] * y[self.cols[k]];
            }
        }
        acc
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        for k in self.row_ptr[i]..self.row_ptr[i + 1] {
            if self.cols[k] == j {
                return self.vals[k];
            }
        }
        0.0
    }

    /// Restriction to an index subset (for Dirichlet elimination).
    pub fn restrict(&self, keep: &[usize]) -> SymmCsr {
        let mut map = vec![usize::MAX; self.n];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let mut trip = Vec::new();
        for (new_i, &old_i) in keep.iter().enumerate() {
            for k in self.row_ptr[old_i]..self.row_ptr[old_i + 1] {
                let j = map[self.cols[k]];
                if j != usize::MAX {
                    trip.push((new_i, j, self.vals[k]));
                }
            }
        }
        SymmCsr::from_triplets(keep.len(), trip)
    }

    /// A + s*B with identical dimensions (patterns may differ).
    pub fn add_scaled(&self, other: &SymmCsr, s: f64) -> SymmCsr {
        let mut trip = Vec::new();
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                trip.push((i, self.cols[k], self.vals[k]));
            }
            for k in other.row_ptr[i]..other.row_ptr[i + 1] {
                trip.push((i, other.cols[k], s * other.vals[k]));
            }
        }
        SymmCsr::from_triplets(self.n, trip)
    }
}

/// Reverse Cuthill-McKee ordering from a pseudo-peripheral start node.
pub fn rcm_order(a: &SymmCsr) -> Vec<usize> {
    let n = a.n;
    if n == 0 {
        return vec![];
    }
    let degree = |i: usize| a.row_ptr[i + 1] - a.row_ptr[i];
    // Pseudo-peripheral: BFS twice from the minimum degree node.
    let start0 = (0..n).min_by_key(|&i| degree(i)).unwrap();
    let far = |s: usize| -> usize {
        let mut dist = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        dist[s] = 0;
        queue.push_back(s);
        let mut last = s;
        while let Some(u) = queue.pop_front() {
            last = u;
            for k in a.row_ptr[u]..a.row_ptr[u + 1] {
                let v = a.cols[k];
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        last
    };
    let start = far(far(start0));
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    // Components beyond the first are appended in index order.
    let mut seeds: Vec<usize> = vec![start];
    seeds.extend(0..n);
    for seed in seeds {
        if visited[seed] {
            continue;
        }
        visited[seed] = true;
        queue.push_back(seed);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            let mut nbrs: Vec<usize> = (a.row_ptr[u]..a.row_ptr[u + 1])
                .map(|k| a.cols[k])
                .filter(|&v| !visited[v])
                .collect();
            nbrs.sort_by_key(|&v| (degree(v), v));
            for v in nbrs {
                visited[v] = true;
                queue.push_back(v);
            }
        }
    }
    order.reverse();
    order
}

/// Profile (skyline) Cholesky factorization of a symmetric positive definite
/// matrix, with an RCM permutation to compress the envelope.
pub struct SkylineChol {
    n: usize,
    perm: Vec<usize>, // perm[new] = old
    first: Vec<usize>, // first stored column of each row
    offset: Vec<usize>,
    data: Vec<f64>,
}

impl SkylineChol {
    pub fn factor(a: &SymmCsr) -> Result<SkylineChol> {
        let n = a.n;
        let perm = rcm_order(a);
        let mut iperm = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            iperm[old] = new;
        }
        // Profile: first[i] = min over row entries (new indexing) of column.
        let mut first: Vec<usize> = (0..n).collect();
        for old_i in 0..n {
            let ni = iperm[old_i];
            for k in a.row_ptr[old_i]..a.row_ptr[old_i + 1] {
                let nj = iperm[a.cols[k]];
                if nj < ni {
                    first[ni] = first[ni].min(nj);
                }
            }
        }
        let mut offset = vec![0usize; n + 1];
        for i in 0..n {
            offset[i + 1] = offset[i] + (i - first[i] + 1);
        }
        let mut data = vec![0.0; offset[n]];
        for old_i in 0..n {
            let ni = iperm[old_i];
            for k in a.row_ptr[old_i]..a.row_ptr[old_i + 1] {
                let nj = iperm[a.cols[k]];
                if nj <= ni {
                    data[offset[ni] + (nj - first[ni])] = a.vals[k];
                }
            }
        }
        // In-place LL^T within the profile.
        for i in 0..n {
            let fi = first[i];
            for j in fi..i {
                let fj = first[j];
                let lo = fi.max(fj);
                let mut s = data[offset[i] + (j - fi)];
                for k in lo..j {
                    s -= data[offset[i] + (k - fi)] * data[offset[j] + (k - fj)];
                }
                let d = data[offset[j] + (j - fj)];
                data[offset[i] + (j - fi)] = s / d;
            }
            let mut s = data[offset[i] + (i - fi)];
            for k in fi..i {
                let v = data[offset[i] + (k - fi)];
                s -= v * v;
            }
            if s <= 0.0 || !s.is_finite() {
                return Err(Error::Solver(format!(
                    "skyline Cholesky broke down at row {i}: pivot {s}"
                )));
            }
            data[offset[i] + (i - fi)] = s.sqrt();
        }
        Ok(SkylineChol { n, perm, first, offset, data })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y = vec![0.0; n];
        for i in 0..n {
            y[i] = b[self.perm[i]];
        }
        // Forward substitution L y' = y.
        for i in 0..n {
            let fi = self.first[i];
            let mut s = y[i];
            for k in fi..i {
                s -= self.data[self.offset[i] + (k - fi)] * y[k];
            }
            y[i] = s / self.data[self.offset[i] + (i - fi)];
        }
        // Backward substitution L^T x = y'.
        for i in (0..n).rev() {
            let fi = self.first[i];
            y[i] /= self.data[self.offset[i] + (i - fi)];
            let yi = y[i];
            for k in fi..i {
                y[k] -= self.data[self.offset[i] + (k - fi)] * yi;
            }
        }
        let mut x = vec![0.0; n];
        for i in 0..n {
            x[self.perm[i]] = y[i];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn laplacian_1d(n: usize) -> SymmCsr {
        let mut trip = Vec::new();
        for i in 0..n {
            trip.push((i, i, 2.0));
            if i + 1 < n {
                trip.push((i, i + 1, -1.0));
                trip.push((i + 1, i, -1.0));
            }
        }
        SymmCsr::from_triplets(n, trip)
    }

    #[test]
    fn csr_matvec_and_duplicates() {
        let a = SymmCsr::from_triplets(2, vec![(0, 0, 1.0), (0, 0, 1.0), (0, 1, 3.0), (1, 0, 3.0), (1, 1, 4.0)]);
        assert_eq!(a.get(0, 0), 2.0);
        let mut y = vec![0.0; 2];
        a.matvec(&[1.0, 2.0], &mut y);
        assert_eq!(y, vec![8.0, 11.0]);
    }

    #[test]
    fn skyline_solves_poisson() {
        let n = 50;
        let a = laplacian_1d(n);
        let f = SkylineChol::factor(&a).unwrap();
        let b: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin()).collect();
        let x = f.solve(&b);
        let mut ax = vec![0.0; n];
        a.matvec(&x, &mut ax);
        for i in 0..n {
            assert_relative_eq!(ax[i], b[i], epsilon = 1e-10);
        }
    }

    #[test]
    fn skyline_random_spd() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let n = 40;
        // SPD = diag dominant random symmetric with scattered pattern.
        let mut trip = Vec::new();
        for i in 0..n {
            trip.push((i, i, 10.0 + rng.gen_range(0.0..1.0)));
            for _ in 0..3 {
                let j = rng.gen_range(0..n);
                if j != i {
                    let v = rng.gen_range(-0.5..0.5);
                    trip.push((i, j, v));
                    trip.push((j, i, v));
                }
            }
        }
        let a = SymmCsr::from_triplets(n, trip);
        let f = SkylineChol::factor(&a).unwrap();
        let b: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let x = f.solve(&b);
        let mut ax = vec![0.0; n];
        a.matvec(&x, &mut ax);
        for i in 0..n {
            assert_relative_eq!(ax[i], b[i], epsilon = 1e-8);
        }
    }

    #[test]
    fn restriction_keeps_submatrix() {
        let a = laplacian_1d(5);
        let r = a.restrict(&[1, 2, 3]);
        assert_eq!(r.n, 3);
        assert_eq!(r.get(0, 0), 2.0);
        assert_eq!(r.get(0, 1), -1.0);
        assert_eq!(r.get(0, 2), 0.0);
    }

    #[test]
    fn indefinite_rejected() {
        let a = SymmCsr::from_triplets(2, vec![(0, 0, 1.0), (1, 1, -1.0)]);
        assert!(SkylineChol::factor(&a).is_err());
    }
}
