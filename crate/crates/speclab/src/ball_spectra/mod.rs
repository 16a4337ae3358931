//! Closed-form spectra, torsion and explicit constants for N-dimensional balls.

pub mod bessel;

use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

pub use bessel::{bessel_j, bessel_j_prime, first_bessel_zero, first_neumann_zero};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 10;

fn check_dim(dim: usize) -> Result<()> {
    if !(MIN_DIM..=MAX_DIM).contains(&dim) {
        return Err(Error::UnsupportedInput(format!(
            "dimension {dim} outside supported range [{MIN_DIM}, {MAX_DIM}]"
        )));
    }
    Ok(())
}

/// Volume of the unit ball in R^N, by the recursion w_N = w_{N-2} * 2 pi / N.
pub fn unit_ball_volume(dim: usize) -> f64 {
    match dim {
        0 => 1.0,
        1 => 2.0,
        2 => std::f64::consts::PI,
        n => unit_ball_volume(n - 2) * 2.0 * std::f64::consts::PI / n as f64,
    }
}

/// j_{(N-2)/2, 1}: the first eigenvalue of the ball is (j/r)^2.
pub fn dirichlet_zero(dim: usize) -> Result<f64> {
    check_dim(dim)?;
    first_bessel_zero((dim as f64 - 2.0) / 2.0)
}

/// beta_{N/2, 1}: the first nontrivial Neumann eigenvalue of the ball is (beta/r)^2.
pub fn neumann_zero(dim: usize) -> Result<f64> {
    check_dim(dim)?;
    first_neumann_zero(dim as f64 / 2.0)
}

/// Closed-form spectral data of the ball B_r in R^N.
#[derive(Debug, Clone, Serialize)]
pub struct BallSpectrum {
    pub dim: usize,
    pub radius: f64,
    pub lambda1: f64,
    pub mu2: f64,
    pub sigma2: f64,
    pub torsion: f64,
    pub j_zero: f64,
    pub beta_zero: f64,
    pub omega_n: f64,
}

/// Spectrum, torsion and the underlying Bessel zeros of an N-ball of radius r.
pub fn ball_spectrum(dim: usize, radius: f64) -> Result<BallSpectrum> {
    check_dim(dim)?;
    if radius <= 0.0 {
        return Err(Error::UnsupportedInput("ball radius must be positive".into()));
    }
    let j_zero = dirichlet_zero(dim)?;
    let beta_zero = neumann_zero(dim)?;
    let omega_n = unit_ball_volume(dim);
    let n = dim as f64;
    Ok(BallSpectrum {
        dim,
        radius,
        lambda1: (j_zero / radius).powi(2),
        mu2: (beta_zero / radius).powi(2),
        sigma2: 1.0 / radius,
        torsion: omega_n * radius.powf(n + 2.0) / (n * (n + 2.0)),
        j_zero,
        beta_zero,
        omega_n,
    })
}

/// First Robin eigenvalue of the ball B_r: the root s of
/// alpha J_v(s r) = s J_{v+1}(s r) with v = (N-2)/2 gives lambda = s^2.
pub fn robin_ball_lambda1(dim: usize, radius: f64, alpha: f64) -> Result<f64> {
    check_dim(dim)?;
    if alpha <= 0.0 || radius <= 0.0 {
        return Err(Error::UnsupportedInput("robin_ball_lambda1 requires alpha > 0, r > 0".into()));
    }
    let v = (dim as f64 - 2.0) / 2.0;
    let j = first_bessel_zero(v)?;
    let upper = j / radius;
    let f = |s: f64| {
        alpha * bessel_j(v, s * radius).unwrap() - s * bessel_j(v + 1.0, s * radius).unwrap()
    };
    // f > 0 near 0 and f(j/r) < 0; bisect the first crossing.
    let mut lo = 1e-9 * upper;
    let mut hi = upper * (1.0 - 1e-12);
    if f(lo) <= 0.0 || f(hi) >= 0.0 {
        return Err(Error::Solver("robin ball bracketing failed".into()));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 * hi {
            break;
        }
    }
    let s = 0.5 * (lo + hi);
    Ok(s * s)
}

/// First semilinear Dirichlet eigenvalue of the unit ball, computed on a
/// radial grid (P1 elements with weight r^{N-1}, normalized fixed point).
pub fn lambda1_semilinear_unit_ball(dim: usize, q: f64) -> Result<f64> {
    check_dim(dim)?;
    check_exponent(dim, q)?;
    let key = ((dim as u64) << 32) | (q.to_bits() >> 32);
    static MEMO: OnceLock<Mutex<BTreeMap<(u64, u64), f64>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(BTreeMap::new()));
    let full_key = (key, q.to_bits());
    if let Some(&v) = memo.lock().unwrap().get(&full_key) {
        return Ok(v);
    }
    let v = radial_semilinear(dim, q, 3000)?;
    memo.lock().unwrap().insert(full_key, v);
    Ok(v)
}

fn check_exponent(dim: usize, q: f64) -> Result<()> {
    let ok = if dim == 2 {
        q >= 1.0 && q.is_finite()
    } else {
        q >= 1.0 && q < 2.0 * dim as f64 / (dim as f64 - 2.0)
    };
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedInput(format!(
            "exponent q={q} outside [1, 2N/(N-2)) for N={dim}"
        )))
    }
}

fn radial_semilinear(dim: usize, q: f64, m: usize) -> Result<f64> {
    let n = dim as f64;
    let h = 1.0 / m as f64;
    let nodes = m + 1;
    // Tridiagonal stiffness with weight r^{N-1}: exact per-element integral.
    let mut diag = vec![0.0; nodes];
    let mut off = vec![0.0; nodes - 1];
    let mut w_elem = vec![0.0; m]; // int_{e} r^{N-1} dr
    for e in 0..m {
        let r0 = e as f64 * h;
        let r1 = r0 + h;
        let k = (r1.powf(n) - r0.powf(n)) / (n * h * h);
        diag[e] += k;
        diag[e + 1] += k;
        off[e] -= k;
        w_elem[e] = (r1.powf(n) - r0.powf(n)) / n;
    }
    // Dirichlet at r=1: drop the last node.
    let sz = nodes - 1;
    let gauss = crate::quad::gauss_legendre(4);
    let int_pow = |u: &[f64], p: f64| -> f64 {
        let mut acc = 0.0;
        for e in 0..m {
            let r0 = e as f64 * h;
            let u0 = u[e];
            let u1 = if e + 1 < sz { u[e + 1] } else { 0.0 };
            for (x, w) in gauss.0.iter().zip(gauss.1.iter()) {
                let s = 0.5 * (x + 1.0);
                let r = r0 + s * h;
                let val = u0 + (u1 - u0) * s;
                acc += w * 0.5 * h * val.abs().powf(p) * r.powf(n - 1.0);
            }
        }
        acc
    };
    let energy = |u: &[f64]| -> f64 {
        let mut acc = 0.0;
        for i in 0..sz {
            acc += diag[i] * u[i] * u[i];
            if i + 1 < sz {
                acc += 2.0 * off[i] * u[i] * u[i + 1];
            } else {
                // coupling to the eliminated boundary node is zero
            }
        }
        acc
    };
    let surf = n * unit_ball_volume(dim);
    // Thomas solve for the tridiagonal (diag, off) restricted to sz unknowns.
    let solve = |rhs: &[f64]| -> Vec<f64> {
        let mut c = vec![0.0; sz];
        let mut d = vec![0.0; sz];
        let mut x = vec![0.0; sz];
        c[0] = off[0] / diag[0];
        d[0] = rhs[0] / diag[0];
        for i in 1..sz {
            let mden = diag[i] - off[i - 1] * c[i - 1];
            if i < sz - 1 {
                c[i] = off[i] / mden;
            }
            d[i] = (rhs[i] - off[i - 1] * d[i - 1]) / mden;
        }
        x[sz - 1] = d[sz - 1];
        for i in (0..sz - 1).rev() {
            x[i] = d[i] - c[i] * x[i + 1];
        }
        x
    };
    // Start from the torsion-like profile (1 - r^2)/4-ish: solve K u = weight load.
    let load: Vec<f64> = (0..sz)
        .map(|i| {
            let mut acc = 0.0;
            if i > 0 {
                acc += 0.5 * w_elem[i - 1];
            }
            acc += 0.5 * w_elem[i];
            acc
        })
        .collect();
    let mut u = solve(&load);
    let mut lambda_prev = f64::INFINITY;
    for iter in 0..4000 {
        let iq = int_pow(&u, q);
        let norm = (surf * iq).powf(1.0 / q);
        for v in u.iter_mut() {
            *v /= norm;
        }
        let iq = int_pow(&u, q); // now has unit L^q norm up to quadrature
        let lam = surf * energy(&u) / (surf * iq).powf(2.0 / q);
        if ((lam - lambda_prev) / lam).abs() < 1e-12 {
            return Ok(lam);
        }
        lambda_prev = lam;
        // rhs_i = int phi_i |u|^{q-2} u r^{N-1} dr by element quadrature
        let mut rhs = vec![0.0; sz];
        for e in 0..m {
            let r0 = e as f64 * h;
            let u0 = u[e];
            let u1 = if e + 1 < sz { u[e + 1] } else { 0.0 };
            for (x, w) in gauss.0.iter().zip(gauss.1.iter()) {
                let s = 0.5 * (x + 1.0);
                let r = r0 + s * h;
                let val: f64 = u0 + (u1 - u0) * s;
                let fval = val.abs().powf(q - 1.0) * val.signum();
                let contrib = w * 0.5 * h * fval * r.powf(n - 1.0);
                rhs[e] += contrib * (1.0 - s);
                if e + 1 < sz {
                    rhs[e + 1] += contrib * s;
                }
            }
        }
        u = solve(&rhs);
        if iter == 3999 {
            return Err(Error::NonConvergence {
                context: format!("radial semilinear N={dim} q={q}"),
                history: vec![lambda_prev, lam],
            });
        }
    }
    unreachable!()
}

/// The paper's explicit constants, assembled from ball data and the
/// configurable quantitative-isoperimetric constant `iso_beta`.
#[derive(Debug, Clone, Serialize)]
pub struct ConstantsTable {
    pub dim: usize,
    pub q: f64,
    pub iso_beta: f64,
    pub omega_n: f64,
    /// c_N of the boosted Polya-Szego lemma: 4^{1/N} beta_N N omega_N^{1/N} / 2.
    pub c_booster: f64,
    /// tau of the quantitative Saint-Venant inequality (measure-1 normalization).
    pub tau: f64,
    /// Exponent theta(q, N) of the Kohler-Jobin inequality.
    pub kj_theta: f64,
    /// tau_{N,q} of the quantitative Faber-Krahn family.
    pub tau_q: f64,
    /// Lower bound for rho_N (no Bessel quadrature).
    pub rho_lower: f64,
    /// Full rho_N of the quantitative Szego-Weinberger inequality.
    pub rho: f64,
    /// c_N of the weighted-perimeter (P_2) stability estimate.
    pub c_berry: f64,
    /// Constant of the quantitative Brock-Weinstock inequality.
    pub c_stek: f64,
    /// Constant of the quantitative mu_2/lambda_1 estimate.
    pub kappa: f64,
    /// theta_N = mu_2(B)/lambda_1(B) < 1.
    pub theta_ratio: f64,
    /// lambda_1^q of the unit ball (radial solve for q outside {1, 2}).
    pub lambda1_q_ball: f64,
}

/// Kohler-Jobin exponent theta(q, N) = (2 + 2N/q - N)/(N + 2).
pub fn kohler_jobin_theta(dim: usize, q: f64) -> f64 {
    let n = dim as f64;
    (2.0 + 2.0 * n / q - n) / (n + 2.0)
}

/// Evaluates every explicit constant of the paper for dimension N and
/// exponent q, with `iso_beta` the quantitative isoperimetric constant.
pub fn constants_table(dim: usize, q: f64, iso_beta: f64) -> Result<ConstantsTable> {
    check_dim(dim)?;
    check_exponent(dim, q)?;
    if iso_beta <= 0.0 {
        return Err(Error::UnsupportedInput("iso_beta must be positive".into()));
    }
    let n = dim as f64;
    let omega = unit_ball_volume(dim);
    let spec = ball_spectrum(dim, 1.0)?;

    let c_booster = 4.0f64.powf(1.0 / n) * iso_beta * n * omega.powf(1.0 / n) / 2.0;
    let tau = omega.powf(-2.0 / n) / (16.0 * n * (n + 2.0))
        * 1.0f64
            .min(c_booster / 16.0 * omega.powf(-2.0 / n) / n * (n + 2.0) / (3.0 * n + 2.0).powi(2))
            .min((n + 2.0) / (4.0 * n));

    let kj_theta = kohler_jobin_theta(dim, q);
    let lambda1_q_ball = if (q - 2.0).abs() < 1e-14 {
        spec.lambda1
    } else if (q - 1.0).abs() < 1e-14 {
        1.0 / spec.torsion
    } else {
        lambda1_semilinear_unit_ball(dim, q)?
    };
    let ball_fk = omega.powf(2.0 / n + 2.0 / q - 1.0) * lambda1_q_ball;
    let tau_q = (2.0f64.powf(kj_theta) - 1.0)
        * ball_fk
        * (tau * omega.powf((n + 2.0) / n) / spec.torsion).min(0.125);

    let ratio_factor = (n - 1.0) * (2.0f64.powf(1.0 / n) - 1.0).powi(2)
        / (8.0 * 2.0f64.powf(1.0 / n));
    let rho_lower = ratio_factor * omega.powf(2.0 / n);
    let half = n / 2.0;
    let beta = spec.beta_zero;
    let bessel_sq_int = crate::quad::adaptive_simpson(
        |rho| {
            let v = bessel_j(half, beta * rho).expect("order in range");
            v * v * rho
        },
        0.0,
        1.0,
        1e-13,
    );
    let jb = bessel_j(half, beta)?;
    let rho_full = rho_lower * jb * jb / bessel_sq_int;

    let c_berry = (n + 1.0) * n / omega.powf(1.0 / n) * (2.0f64.powf(1.0 / n) - 1.0).powi(2) / 8.0;
    let c_stek = omega.powf(1.0 / n) / 2.0 * (c_berry / n * omega.powf(1.0 / n)).min(0.25);

    let theta_ratio = (spec.beta_zero / spec.j_zero).powi(2);
    let kappa = 0.5 * (theta_ratio / 4.0).min(rho_full / (omega.powf(2.0 / n) * spec.lambda1));

    Ok(ConstantsTable {
        dim,
        q,
        iso_beta,
        omega_n: omega,
        c_booster,
        tau,
        kj_theta,
        tau_q,
        rho_lower,
        rho: rho_full,
        c_berry,
        c_stek,
        kappa,
        theta_ratio,
        lambda1_q_ball,
    })
}
