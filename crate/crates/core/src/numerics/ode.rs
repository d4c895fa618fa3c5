//! Embedded Dormand–Prince 5(4) integrator for small autonomous systems.

use crate::error::{Error, Result};

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Step-size control settings.
#[derive(Debug, Clone, Copy)]
pub struct StepControl {
    pub rtol: f64,
    pub atol: f64,
    pub h_init: f64,
    pub h_max: f64,
    pub h_min: f64,
    pub max_steps: usize,
}

impl Default for StepControl {
    fn default() -> Self {
        Self {
            rtol: 1e-12,
            atol: 1e-13,
            h_init: 1e-3,
            h_max: 0.05,
            h_min: 1e-15,
            max_steps: 2_000_000,
        }
    }
}

impl StepControl {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            rtol: tol,
            atol: 0.1 * tol,
            ..Self::default()
        }
    }
}

/// A single DP5 step: returns the 5th-order solution and the error estimate.
pub fn dp5_step<const N: usize, F>(f: &F, y: &[f64; N], h: f64) -> ([f64; N], [f64; N])
where
    F: Fn(&[f64; N]) -> [f64; N],
{
    let comb = |terms: &[(f64, &[f64; N])]| {
        let mut out = *y;
        for (c, k) in terms {
            for i in 0..N {
                out[i] += h * c * k[i];
            }
        }
        out
    };
    let k1 = f(y);
    let k2 = f(&comb(&[(A21, &k1)]));
    let k3 = f(&comb(&[(A31, &k1), (A32, &k2)]));
    let k4 = f(&comb(&[(A41, &k1), (A42, &k2), (A43, &k3)]));
    let k5 = f(&comb(&[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
    let k6 = f(&comb(&[
        (A61, &k1),
        (A62, &k2),
        (A63, &k3),
        (A64, &k4),
        (A65, &k5),
    ]));
    let y_new = comb(&[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
    let k7 = f(&y_new);
    let mut err = [0.0; N];
    for i in 0..N {
        err[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
    }
    (y_new, err)
}

fn error_norm<const N: usize>(y: &[f64; N], y_new: &[f64; N], err: &[f64; N], ctl: &StepControl) -> f64 {
    let mut acc: f64 = 0.0;
    for i in 0..N {
        let sc = ctl.atol + ctl.rtol * y[i].abs().max(y_new[i].abs());
        acc = acc.max((err[i] / sc).abs());
    }
    acc
}

/// Result of an integration: accepted states with their independent-variable
/// values, and whether the stop predicate fired.
#[derive(Debug, Clone)]
pub struct Trajectory<const N: usize> {
    pub t: Vec<f64>,
    pub y: Vec<[f64; N]>,
    pub stopped: bool,
}

/// Integrates `y' = f(y)` from `t0` over a span of length `span` (≥ 0).
///
/// `cap` bounds each step from the current state (for approaching
/// singular sets), and `stop` ends the integration early after any accepted
/// step for which it returns `true`.
pub fn integrate<const N: usize, F, C, S>(
    f: F,
    t0: f64,
    y0: [f64; N],
    span: f64,
    ctl: &StepControl,
    cap: C,
    mut stop: S,
) -> Result<Trajectory<N>>
where
    F: Fn(&[f64; N]) -> [f64; N],
    C: Fn(&[f64; N]) -> f64,
    S: FnMut(f64, &[f64; N]) -> bool,
{
    let mut traj = Trajectory {
        t: vec![t0],
        y: vec![y0],
        stopped: false,
    };
    if span <= 0.0 {
        return Ok(traj);
    }
    let t_end = t0 + span;
    let mut t = t0;
    let mut y = y0;
    let mut h = ctl.h_init.min(span).min(ctl.h_max);
    let mut steps = 0usize;
    while t < t_end {
        steps += 1;
        if steps > ctl.max_steps {
            return Err(Error::StepFailure(format!("step budget exhausted at t = {t}")));
        }
        h = h.min(cap(&y)).min(ctl.h_max);
        // Absorb a remainder that would leave a sliver of a step.
        if t_end - t <= 1.01 * h {
            h = t_end - t;
        }
        if h < ctl.h_min {
            return Err(Error::StepFailure(format!("step size underflow at t = {t}")));
        }
        let (y_new, err) = dp5_step(&f, &y, h);
        let en = error_norm(&y, &y_new, &err, ctl);
        if !en.is_finite() || !y_new.iter().all(|v| v.is_finite()) {
            h *= 0.25;
            continue;
        }
        if en <= 1.0 {
            t = if t_end - t <= h { t_end } else { t + h };
            y = y_new;
            traj.t.push(t);
            traj.y.push(y);
            if stop(t, &y) {
                traj.stopped = true;
                break;
            }
            let fac = if en == 0.0 { 5.0 } else { (0.9 * en.powf(-0.2)).clamp(0.2, 5.0) };
            h *= fac;
        } else {
            h *= (0.9 * en.powf(-0.2)).clamp(0.1, 0.9);
        }
    }
    Ok(traj)
}

/// Integrates until `event(y)` changes sign (from its initial sign), then
/// locates the crossing by bisection on the length of a single step from the
/// last accepted state. Returns `(t_event, y_event)`.
pub fn integrate_to_event<const N: usize, F, E>(
    f: F,
    t0: f64,
    y0: [f64; N],
    max_span: f64,
    ctl: &StepControl,
    event: E,
) -> Result<(f64, [f64; N])>
where
    F: Fn(&[f64; N]) -> [f64; N],
    E: Fn(&[f64; N]) -> f64,
{
    let g0 = event(&y0);
    if g0 == 0.0 {
        return Ok((t0, y0));
    }
    let traj = integrate(&f, t0, y0, max_span, ctl, |_| f64::INFINITY, |_, y| {
        event(y).signum() != g0.signum()
    })?;
    if !traj.stopped {
        return Err(Error::NoRoot(format!("event not reached within span {max_span}")));
    }
    let k = traj.t.len() - 1;
    let (t_prev, y_prev) = (traj.t[k - 1], traj.y[k - 1]);
    let h_full = traj.t[k] - t_prev;
    let (mut lo, mut hi) = (0.0, h_full);
    for _ in 0..200 {
        if hi - lo <= 1e-15 * (1.0 + t_prev.abs()) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let (ym, _) = dp5_step(&f, &y_prev, mid);
        if event(&ym).signum() == g0.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (ye, _) = dp5_step(&f, &y_prev, hi);
    Ok((t_prev + hi, ye))
}
