//! Scalar minimization: Brent's golden-section/parabolic method plus a grid
//! pre-scan that guards against multimodal objectives.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const GOLDEN: f64 = 0.381_966_011_250_105_1;

/// Brent minimization on `[a, b]`. Non-finite objective values are treated
/// as `+inf` and force golden-section steps.
pub fn brent_min<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = if a < b { (a, b) } else { (b, a) };
    let mut eval = |x: f64| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut x = a + GOLDEN * (b - a);
    let mut w = x;
    let mut v = x;
    let mut fx = eval(x);
    let mut fw = fx;
    let mut fv = fx;
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    for _ in 0..500 {
        let xm = 0.5 * (a + b);
        let tol1 = tol.max(1e-15) + 1e-12 * x.abs();
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 && fx.is_finite() && fw.is_finite() && fv.is_finite() {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let etemp = e;
            if p.abs() < (0.5 * q * etemp).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= xm { a - x } else { b - x };
            d = GOLDEN * e;
        }
        let u = if d.abs() >= tol1 { x + d } else { x + tol1.copysign(d) };
        let fu = eval(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    (x, fx)
}

/// Outcome of [`minimize_scalar`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinResult {
    pub x: f64,
    pub fx: f64,
    /// Number of grid local minima that were refined.
    pub local_minima: usize,
    /// Set when the pre-scan found more than one local minimum.
    pub non_unimodal: bool,
    pub evaluations: usize,
}

/// Pre-scans `[a, b]` with `samples` points, refines every local minimum of
/// the scan with [`brent_min`] and returns the global best. Values of `None`
/// mark inadmissible points.
pub fn minimize_scalar<F: FnMut(f64) -> Option<f64>>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    samples: usize,
) -> Result<MinResult> {
    let samples = samples.max(3);
    let mut evaluations = 0usize;
    let mut eval = |x: f64| {
        evaluations += 1;
        f(x).filter(|v| v.is_finite()).unwrap_or(f64::INFINITY)
    };
    let xs: Vec<f64> = (0..samples)
        .map(|i| a + (b - a) * i as f64 / (samples - 1) as f64)
        .collect();
    let fs: Vec<f64> = xs.iter().map(|&x| eval(x)).collect();
    let mut minima = Vec::new();
    for i in 0..samples {
        if !fs[i].is_finite() {
            continue;
        }
        let left = if i == 0 { f64::INFINITY } else { fs[i - 1] };
        let right = if i + 1 == samples { f64::INFINITY } else { fs[i + 1] };
        if fs[i] <= left && fs[i] <= right {
            minima.push(i);
        }
    }
    if minima.is_empty() {
        return Err(Error::Inadmissible(format!(
            "no admissible point in [{a}, {b}]"
        )));
    }
    // Plateaus produce adjacent duplicates.
    minima.dedup_by(|j, i| *j == *i + 1 && fs[*j] == fs[*i]);
    let mut best = (f64::NAN, f64::INFINITY);
    for &i in &minima {
        let lo = xs[i.saturating_sub(1)];
        let hi = xs[(i + 1).min(samples - 1)];
        let (x, fx) = brent_min(&mut eval, lo, hi, tol);
        let (x, fx) = if fx <= fs[i] { (x, fx) } else { (xs[i], fs[i]) };
        if fx < best.1 {
            best = (x, fx);
        }
    }
    Ok(MinResult {
        x: best.0,
        fx: best.1,
        local_minima: minima.len(),
        non_unimodal: minima.len() > 1,
        evaluations,
    })
}
