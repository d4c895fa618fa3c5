use crate::error::{Error, Result};

/// Brent's bracketed root finder (inverse quadratic / secant steps guarded
/// by bisection). Returns `x` with bracket width at most `tol`.
pub fn find_root<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let fa = f(a);
    let fb = f(b);
    find_root_with_values(&mut f, a, fa, b, fb, tol)
}

/// As [`find_root`] when `f(a)` and `f(b)` are already known.
pub fn find_root_with_values<F: FnMut(f64) -> f64>(
    f: &mut F,
    mut a: f64,
    mut fa: f64,
    mut b: f64,
    mut fb: f64,
    tol: f64,
) -> Result<f64> {
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::NoRoot(format!(
            "no sign change on [{a}, {b}]: f = ({fa}, {fb})"
        )));
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::NoRoot(format!("non-finite value at {b}")));
        }
    }
    Ok(b)
}

/// Scans `[a, b]` on a uniform grid of `samples` points, brackets every sign
/// change of `f` and refines each with [`find_root`]. Grid points where `f`
/// is undefined (`None` or non-finite) break brackets.
pub fn scan_roots<F: FnMut(f64) -> Option<f64>>(
    mut f: F,
    a: f64,
    b: f64,
    samples: usize,
    tol: f64,
) -> Vec<f64> {
    let samples = samples.max(2);
    let mut roots = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..samples {
        let x = a + (b - a) * i as f64 / (samples - 1) as f64;
        let fx = f(x).filter(|v| v.is_finite());
        if let (Some((xp, fp)), Some(fv)) = (prev, fx) {
            if fv == 0.0 {
                roots.push(x);
            } else if fp != 0.0 && fp.signum() != fv.signum() {
                let mut g = |t: f64| f(t).unwrap_or(f64::NAN);
                if let Ok(r) = find_root_with_values(&mut g, xp, fp, x, fv, tol) {
                    roots.push(r);
                }
            }
        } else if let (None, Some(fv)) = (prev, fx) {
            if fv == 0.0 {
                roots.push(x);
            }
        }
        prev = fx.map(|v| (x, v));
    }
    roots
}

/// Bisection on a boolean predicate that is `false` at `a` and `true` at `b`.
pub fn bisect_predicate<F: FnMut(f64) -> bool>(mut p: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    while (b - a).abs() > tol {
        let m = 0.5 * (a + b);
        if p(m) {
            b = m;
        } else {
            a = m;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_root_matches_closed_form() {
        let r = find_root(|y| y - y * y - 0.1, 0.5, 1.0, 1e-14).unwrap();
        let exact = (1.0 + 0.6f64.sqrt()) / 2.0;
        assert!((r - exact).abs() < 1e-12);
        assert!((r - 0.88730).abs() < 1e-5);
    }

    #[test]
    fn cosine_root_is_half_pi() {
        let r = find_root(f64::cos, 1.0, 2.0, 1e-14).unwrap();
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
    }

    #[test]
    fn missing_sign_change_errors() {
        assert!(matches!(
            find_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::NoRoot(_))
        ));
    }

    #[test]
    fn scan_finds_all_roots() {
        let roots = scan_roots(|x| Some((x - 0.3) * (x - 0.7) * (x - 1.6)), 0.0, 2.0, 101, 1e-13);
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip([0.3, 0.7, 1.6]) {
            assert!((r - e).abs() < 1e-12);
        }
    }

    #[test]
    fn scan_skips_undefined_gaps() {
        // Sign differs across the undefined gap but no bracket spans it.
        let roots = scan_roots(
            |x| if (0.4..0.6).contains(&x) { None } else { Some(x - 0.5) },
            0.0,
            1.0,
            51,
            1e-12,
        );
        assert!(roots.is_empty());
    }

    #[test]
    fn predicate_bisection() {
        let x = bisect_predicate(|t| t * t > 2.0, 0.0, 2.0, 1e-12);
        assert!((x - 2f64.sqrt()).abs() < 1e-11);
    }
}
