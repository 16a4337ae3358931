//! Bessel functions of the first kind and their first zeros.
//!
//! Only nonnegative real orders up to 5 are supported; every consumer in this
//! crate needs order at most N/2 with N <= 10. Evaluation uses the ascending
//! power series on the bulk of the range and the Hankel large-argument
//! expansion beyond it.

use crate::{Error, Result};
use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

pub const MAX_ORDER: f64 = 5.0;

/// Headroom for the derivative recurrences, which reach two orders above the
/// largest order exposed publicly.
const MAX_INTERNAL_ORDER: f64 = MAX_ORDER + 2.0;

/// Gamma function for positive arguments.
///
/// Orders used by the crate are multiples of 1/2, for which the value is
/// computed exactly by recursion from Gamma(1) = 1 and Gamma(1/2) = sqrt(pi);
/// other arguments fall back to a Lanczos approximation.
pub fn gamma(x: f64) -> f64 {
    assert!(x > 0.0, "gamma requires a positive argument");
    let twice = 2.0 * x;
    if (twice - twice.round()).abs() < 1e-13 && twice.round() >= 1.0 {
        let half_steps = twice.round() as i64;
        // x = base + k with base in {1/2, 1}.
        let (mut acc, mut arg) = if half_steps % 2 == 0 {
            (1.0, 1.0)
        } else {
            (std::f64::consts::PI.sqrt(), 0.5)
        };
        while arg + 0.5 < x {
            acc *= arg;
            arg += 1.0;
        }
        return acc;
    }
    lanczos_gamma(x)
}

fn lanczos_gamma(x: f64) -> f64 {
    // g = 7, n = 9 coefficients (Godfrey).
    const COEFFS: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    let x = x - 1.0;
    let mut a = COEFFS[0];
    let t = x + 7.5;
    for (i, c) in COEFFS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

fn check_order(order: f64) -> Result<()> {
    if !(0.0..=MAX_ORDER).contains(&order) {
        return Err(Error::UnsupportedInput(format!(
            "Bessel order {order} outside supported range [0, {MAX_ORDER}]"
        )));
    }
    Ok(())
}

/// J_order(t) for order in [0, 5] and t >= 0.
pub fn bessel_j(order: f64, t: f64) -> Result<f64> {
    check_order(order)?;
    if t < 0.0 {
        return Err(Error::UnsupportedInput("bessel_j requires t >= 0".into()));
    }
    Ok(bessel_j_internal(order, t))
}

fn bessel_j_internal(order: f64, t: f64) -> f64 {
    debug_assert!((0.0..=MAX_INTERNAL_ORDER).contains(&order));
    let split = 12.0f64.max(2.0 * order);
    if t <= split {
        series_j(order, t)
    } else {
        asymptotic_j(order, t)
    }
}

fn series_j(order: f64, t: f64) -> f64 {
    if t == 0.0 {
        return if order == 0.0 { 1.0 } else { 0.0 };
    }
    let half = 0.5 * t;
    let q = -half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 0..200 {
        let mf = m as f64;
        term *= q / ((mf + 1.0) * (mf + 1.0 + order));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1.0) {
            break;
        }
    }
    half.powf(order) / gamma(order + 1.0) * sum
}

/// Hankel expansion, valid for large t.
fn asymptotic_j(order: f64, t: f64) -> f64 {
    let mu = 4.0 * order * order;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..=16 {
        let kf = k as f64;
        a *= (mu - (2.0 * kf - 1.0) * (2.0 * kf - 1.0)) / (kf * 8.0 * t);
        if a.abs() > prev {
            break; // divergent tail of the asymptotic series
        }
        prev = a.abs();
        let quarter = k % 4;
        match quarter {
            1 => q += a,
            2 => p -= a,
            3 => q -= a,
            _ => p += a,
        }
    }
    let chi = t - (0.5 * order + 0.25) * std::f64::consts::PI;
    (2.0 / (std::f64::consts::PI * t)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Derivative J'_order(t) via the recurrence J'_v = (v/t) J_v - J_{v+1}.
pub fn bessel_j_prime(order: f64, t: f64) -> Result<f64> {
    check_order(order)?;
    if t == 0.0 {
        return Ok(if (order - 1.0).abs() < 1e-15 { 0.5 } else { 0.0 });
    }
    let jv = bessel_j_internal(order, t);
    let jv1 = bessel_j_internal(order + 1.0, t);
    Ok(order / t * jv - jv1)
}

fn memo() -> &'static Mutex<BTreeMap<(u64, bool), f64>> {
    static MEMO: OnceLock<Mutex<BTreeMap<(u64, bool), f64>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// First positive zero j_{order,1} of J_order.
pub fn first_bessel_zero(order: f64) -> Result<f64> {
    check_order(order)?;
    let key = (order.to_bits(), false);
    if let Some(&z) = memo().lock().unwrap().get(&key) {
        return Ok(z);
    }
    // J_v is positive on (0, j_{v,1}); scan unit steps for the sign change.
    let f = |t: f64| bessel_j(order, t).expect("order already validated");
    let z = first_root(f, 0.05, 1.0, 40.0)?;
    let z = newton_polish(z, f, |t| bessel_j_prime(order, t).unwrap());
    memo().lock().unwrap().insert(key, z);
    Ok(z)
}

/// First positive root of g(b) = b J'_{N/2}(b) + (2-N)/2 J_{N/2}(b), which by
/// the recurrence equals J_{N/2}(b) - b J_{N/2+1}(b).
pub fn first_neumann_zero(half_dim: f64) -> Result<f64> {
    check_order(half_dim)?;
    let key = (half_dim.to_bits(), true);
    if let Some(&z) = memo().lock().unwrap().get(&key) {
        return Ok(z);
    }
    let g = |b: f64| {
        let jv = bessel_j_internal(half_dim, b);
        let jv1 = bessel_j_internal(half_dim + 1.0, b);
        jv - b * jv1
    };
    let dg = |b: f64| {
        // g'(b) = J'_v(b) - J_{v+1}(b) - b J'_{v+1}(b)
        let jv = bessel_j_internal(half_dim, b);
        let jv1 = bessel_j_internal(half_dim + 1.0, b);
        let jv2 = bessel_j_internal(half_dim + 2.0, b);
        let jp = half_dim / b * jv - jv1;
        let jp1 = (half_dim + 1.0) / b * jv1 - jv2;
        jp - jv1 - b * jp1
    };
    let z = first_root(g, 0.05, 0.1, 40.0)?;
    let z = newton_polish(z, g, dg);
    memo().lock().unwrap().insert(key, z);
    Ok(z)
}

/// Scans from `start` in steps of `step` for the first sign change of `f`,
/// then bisects to 1e-13 relative width.
fn first_root<F: Fn(f64) -> f64>(f: F, start: f64, step: f64, max_t: f64) -> Result<f64> {
    let mut a = start;
    let mut fa = f(a);
    let mut b = a;
    loop {
        b += step;
        if b > max_t {
            return Err(Error::Solver("no Bessel sign change found in scan range".into()));
        }
        let fb = f(b);
        if fa.signum() != fb.signum() {
            break;
        }
        a = b;
        fa = fb;
    }
    let mut lo = a;
    let mut hi = b;
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if flo.signum() == fm.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo) < 1e-13 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn newton_polish<F: Fn(f64) -> f64, D: Fn(f64) -> f64>(x0: f64, f: F, df: D) -> f64 {
    let mut x = x0;
    for _ in 0..8 {
        let d = df(x);
        if d == 0.0 {
            break;
        }
        let dx = f(x) / d;
        x -= dx;
        if dx.abs() < 1e-15 * x.abs() {
            break;
        }
    }
    x
}
