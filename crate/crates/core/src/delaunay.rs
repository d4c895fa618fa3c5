//! Generating curves of Delaunay surfaces: rotationally invariant surfaces
//! of constant mean curvature in ℝⁿ, n ≥ 3.
//!
//! A generating curve is parametrized by arclength `s` as `(x(s), y(s))` in
//! the upper half-plane with tangent angle `σ`; it solves
//!
//! ```text
//! x' = cos σ,   y' = sin σ,   σ' = −(n−1)H + (n−2) cos σ / y
//! ```
//!
//! and conserves `T = y^{n−2} cos σ − H y^{n−1}`. The sign of `H` refers to
//! the normal `(sin σ, −cos σ)`: a curve traversed left to right over the
//! region it bounds has `H > 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::ode::{self, StepControl};
use crate::numerics::quad::{integrate_with, QuadOptions};
use crate::numerics::roots::find_root;

/// Default relative tolerance for the `T = 0` and `T = t_max` comparisons.
pub const CLASSIFY_TOL: f64 = 1e-12;

/// Ordinate at which profile integration stops short of the rotation axis.
pub const AXIS_EPS: f64 = 1e-10;

/// One member of the Delaunay family: dimension, mean curvature and the
/// first-integral constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelaunayParams {
    pub n: usize,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "T")]
    pub t: f64,
}

impl DelaunayParams {
    /// Validates `n ≥ 3`, `H ≥ 0` and `T ≤ t_max(n, H)` (up to the
    /// classification tolerance).
    pub fn new(n: usize, h: f64, t: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("dimension n = {n} < 3")));
        }
        if !(h >= 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!("invalid (H, T) = ({h}, {t})")));
        }
        if h > 0.0 {
            let tm = t_max(n, h)?;
            if t > tm && !approx_eq(t, tm, CLASSIFY_TOL) {
                return Err(Error::Domain(format!("T = {t} exceeds t_max = {tm}")));
            }
        }
        Ok(Self { n, h, t })
    }

    /// Ordinate of the cylinder with this dimension and mean curvature.
    pub fn cylinder_radius(&self) -> f64 {
        (self.n - 2) as f64 / ((self.n - 1) as f64 * self.h)
    }

    /// `cos σ` along the curve as a function of the ordinate.
    pub fn cos_sigma_at(&self, y: f64) -> f64 {
        let k = (self.n - 2) as i32;
        (self.t + self.h * y.powi(k + 1)) / y.powi(k)
    }

    fn rhs(&self) -> impl Fn(&[f64; 5]) -> [f64; 5] + '_ {
        let n = self.n;
        let h = self.h;
        move |s: &[f64; 5]| {
            let (y, sigma) = (s[1], s[2]);
            let (sn, cs) = sigma.sin_cos();
            let yk = y.powi((n - 2) as i32);
            [
                cs,
                sn,
                -((n - 1) as f64) * h + (n - 2) as f64 * cs / y,
                yk,
                yk * y * cs,
            ]
        }
    }
}

/// A point of an arclength-parametrized generating curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub s: f64,
    pub x: f64,
    pub y: f64,
    pub sigma: f64,
}

impl CurvePoint {
    pub fn new(s: f64, x: f64, y: f64, sigma: f64) -> Self {
        Self { s, x, y, sigma }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DelaunayClass {
    Cylinder,
    Unduloid,
    Sphere,
    Nodoid,
    Catenoid,
    Hyperplane,
}

impl std::fmt::Display for DelaunayClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Self::Cylinder => "cylinder",
            Self::Unduloid => "unduloid",
            Self::Sphere => "sphere",
            Self::Nodoid => "nodoid",
            Self::Catenoid => "catenoid",
            Self::Hyperplane => "hyperplane",
        };
        f.write_str(s)
    }
}

fn approx_eq(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Upper bound `(n−2)^{n−2} / ((n−1)^{n−1} H^{n−2})` of the first integral.
pub fn t_max(n: usize, h: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain(format!("dimension n = {n} < 3")));
    }
    if !(h > 0.0) {
        return Err(Error::Domain(format!("t_max needs H > 0, got {h}")));
    }
    let k = (n - 2) as i32;
    Ok(((n - 2) as f64 / h).powi(k) / ((n - 1) as f64).powi(k + 1))
}

/// Classifies with the default relative tolerance.
pub fn classify(p: &DelaunayParams) -> Result<DelaunayClass> {
    classify_with_tol(p, CLASSIFY_TOL)
}

/// `T` is compared against `0` relative to `t_max` and against `t_max`
/// relative to itself.
pub fn classify_with_tol(p: &DelaunayParams, tol: f64) -> Result<DelaunayClass> {
    if p.h > 0.0 {
        let tm = t_max(p.n, p.h)?;
        if approx_eq(p.t, tm, tol) {
            Ok(DelaunayClass::Cylinder)
        } else if p.t > tm {
            Err(Error::Domain(format!("T = {} exceeds t_max = {tm}", p.t)))
        } else if p.t.abs() <= tol * tm {
            Ok(DelaunayClass::Sphere)
        } else if p.t > 0.0 {
            Ok(DelaunayClass::Unduloid)
        } else {
            Ok(DelaunayClass::Nodoid)
        }
    } else if p.h == 0.0 {
        if p.t == 0.0 {
            Ok(DelaunayClass::Hyperplane)
        } else {
            Ok(DelaunayClass::Catenoid)
        }
    } else {
        Err(Error::Domain(format!("negative mean curvature {}", p.h)))
    }
}

/// `y^{n−2} cos σ − H y^{n−1} − T` at `pt`.
pub fn first_integral_residual(p: &DelaunayParams, pt: &CurvePoint) -> f64 {
    let yk = pt.y.powi((p.n - 2) as i32);
    yk * pt.sigma.cos() - p.h * yk * pt.y - p.t
}

fn root_rel(f: impl Fn(f64) -> f64, a: f64, b: f64) -> Result<f64> {
    let tol = 1e-12 * a.abs().max(b.abs()).max(1e-300);
    find_root(f, a, b, tol)
}

/// Extreme ordinates `(y_min, y_max)` of the full periodic profile.
pub fn profile_extrema(p: &DelaunayParams) -> Result<(f64, f64)> {
    let n = p.n;
    let h = p.h;
    let k = (n - 2) as i32;
    let top = |y: f64| y.powi(k) - h * y.powi(k + 1) - p.t;
    match classify(p)? {
        DelaunayClass::Cylinder => {
            let r = p.cylinder_radius();
            Ok((r, r))
        }
        DelaunayClass::Sphere => Ok((0.0, 1.0 / h)),
        DelaunayClass::Unduloid => {
            let ys = p.cylinder_radius();
            let lo = root_rel(top, 0.0, ys)?;
            let hi = root_rel(top, ys, 1.0 / h)?;
            Ok((lo, hi))
        }
        DelaunayClass::Nodoid => {
            let yv = (-p.t / h).powf(1.0 / (n - 1) as f64);
            let bottom = |y: f64| -y.powi(k) - h * y.powi(k + 1) - p.t;
            let lo = root_rel(bottom, 0.0, yv)?;
            let mut upper = 2.0 * yv.max(1.0 / h);
            while top(upper) > 0.0 {
                upper *= 2.0;
                if !upper.is_finite() {
                    return Err(Error::NoRoot("nodoid maximum not bracketed".into()));
                }
            }
            let hi = root_rel(top, yv.max(1.0 / h), upper)?;
            Ok((lo, hi))
        }
        c => Err(Error::NoRoot(format!("{c} profile has no bounded extrema"))),
    }
}

/// Integration result of a profile piece: the end state and the weighted
/// integrals `∫ y^{n−2} ds` and `∫ y^{n−1} dx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileIntegrals {
    pub end: CurvePoint,
    pub weighted_length: f64,
    pub weighted_x: f64,
}

fn check_start(p: &DelaunayParams, start: &CurvePoint) -> Result<()> {
    if !(start.y > 0.0) {
        return Err(Error::Domain(format!("start ordinate {} must be positive", start.y)));
    }
    let res = first_integral_residual(p, start);
    let scale = start.y.powi((p.n - 2) as i32).max(p.t.abs()).max(1.0);
    if res.abs() > 1e-10 * scale {
        return Err(Error::Domain(format!(
            "start point violates the first integral: residual {res}"
        )));
    }
    Ok(())
}

fn run_profile(
    p: &DelaunayParams,
    start: &CurvePoint,
    span: f64,
    ctl: &StepControl,
) -> Result<(Vec<f64>, Vec<[f64; 5]>)> {
    check_start(p, start)?;
    let f = p.rhs();
    let cap = |s: &[f64; 5]| {
        let sn = s[2].sin();
        if sn < 0.0 {
            0.5 * s[1] / -sn
        } else {
            f64::INFINITY
        }
    };
    let traj = ode::integrate(
        f,
        start.s,
        [start.x, start.y, start.sigma, 0.0, 0.0],
        span,
        ctl,
        cap,
        |_, s| s[1] < AXIS_EPS,
    )?;
    let (mut ts, mut ys) = (traj.t, traj.y);
    if traj.stopped {
        let last = *ys.last().expect("non-empty");
        let t_last = *ts.last().expect("non-empty");
        let sn = last[2].sin();
        let remaining = start.s + span - t_last;
        if remaining > 1e-6 || sn >= 0.0 {
            return Err(Error::Singularity {
                s: t_last,
                reason: "profile reached the rotation axis".into(),
            });
        }
        // Straight-line extrapolation of the last AXIS_EPS to the axis.
        let ds = last[1] / -sn;
        let mut end = last;
        end[0] += ds * last[2].cos();
        end[1] = 0.0;
        ts.push(t_last + ds);
        ys.push(end);
    }
    Ok((ts, ys))
}

/// Samples the solution of the generating-curve ODE from `start` over an
/// arclength `span`. Samples are the accepted adaptive steps.
pub fn integrate_profile(
    p: &DelaunayParams,
    start: &CurvePoint,
    span: f64,
    ctl: &StepControl,
) -> Result<Vec<CurvePoint>> {
    let (ts, ys) = run_profile(p, start, span, ctl)?;
    Ok(ts
        .iter()
        .zip(&ys)
        .map(|(&s, y)| CurvePoint::new(s, y[0], y[1], y[2]))
        .collect())
}

/// Integrates a profile piece and returns its end point together with the
/// weighted length and weighted axial integral.
pub fn profile_integrals(
    p: &DelaunayParams,
    start: &CurvePoint,
    span: f64,
    ctl: &StepControl,
) -> Result<ProfileIntegrals> {
    let (ts, ys) = run_profile(p, start, span, ctl)?;
    let last = ys.last().expect("non-empty");
    Ok(ProfileIntegrals {
        end: CurvePoint::new(*ts.last().expect("non-empty"), last[0], last[1], last[2]),
        weighted_length: last[3],
        weighted_x: last[4],
    })
}

/// Integrates from `start` until `σ` reaches `target` (σ must move
/// monotonically towards it, as on nodoid arcs and unduloid half-periods).
pub fn integrate_to_angle(
    p: &DelaunayParams,
    start: &CurvePoint,
    target: f64,
    max_span: f64,
    ctl: &StepControl,
) -> Result<CurvePoint> {
    check_start(p, start)?;
    let f = p.rhs();
    let (s, st) = ode::integrate_to_event(
        f,
        start.s,
        [start.x, start.y, start.sigma, 0.0, 0.0],
        max_span,
        ctl,
        |st| st[2] - target,
    )?;
    Ok(CurvePoint::new(s, st[0], st[1], st[2]))
}

/// Horizontal direction of a graph branch relative to its reference point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Left,
    Right,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Self::Left => -1.0,
            Self::Right => 1.0,
        }
    }
}

/// `(y + δ)^m − y^m` divided by `δ`, for the exact offset `δ`.
fn pow_diff_quotient(e: f64, y: f64, m: i32) -> f64 {
    let mut acc = 0.0;
    let mut yj = 1.0;
    for j in 0..m {
        acc += yj * e.powi(m - 1 - j);
        yj *= y;
    }
    acc
}

fn graph_quadrature(
    p: &DelaunayParams,
    ya: f64,
    yb: f64,
    tol: f64,
    weight: impl Fn(f64, f64) -> f64,
) -> Result<f64> {
    let (lo, hi) = if ya <= yb { (ya, yb) } else { (yb, ya) };
    if lo == hi {
        return Ok(0.0);
    }
    if !(lo > 0.0) {
        return Err(Error::Domain(format!("graph quadrature needs y > 0, got {lo}")));
    }
    let k = (p.n - 2) as i32;
    let h = p.h;
    let t = p.t;
    let w = hi - lo;
    // G = y^k − H y^{k+1} − T and F = y^k + H y^{k+1} + T vanish where
    // cos σ = 1 and cos σ = −1. Both are expanded around the nearer
    // endpoint with the exact offset, so nothing cancels when the
    // interval is short compared with y.
    let ends = [lo, hi].map(|e| {
        let ek = e.powi(k);
        (e, ek - h * ek * e - t, ek + h * ek * e + t)
    });
    let mut bad = None;
    let v = crate::numerics::quad::integrate(
        |u: f64| {
            if u <= 0.0 || u >= 1.0 {
                return 0.0;
            }
            let (side, du) = if u <= 0.5 { (0, u) } else { (1, 1.0 - u) };
            let mag = w * du * du * (3.0 - 2.0 * du);
            let delta = if side == 0 { mag } else { -mag };
            let (e, ge, fe) = ends[side];
            let y = e + delta;
            let a = pow_diff_quotient(e, y, k);
            let b = pow_diff_quotient(e, y, k + 1);
            let g = ge + delta * (a - h * b);
            let f = fe + delta * (a + h * b);
            let yk = y.powi(k);
            let d = g * f;
            if d <= 0.0 {
                // Roundoff right at an extremum; the substitution weight
                // vanishes there.
                if d < -1e-9 * yk * yk {
                    bad = Some(y);
                }
                return 0.0;
            }
            let c = 0.5 * (f - g) / yk;
            6.0 * w * du * (1.0 - du) * weight(y, c) * yk / d.sqrt()
        },
        0.0,
        1.0,
        tol,
    )?;
    if let Some(y) = bad {
        return Err(Error::Domain(format!(
            "graph integrand is not real at y = {y}"
        )));
    }
    Ok(v)
}

/// Abscissa on the graph branch through `(x0, y0)`:
/// `x0 ± ∫ [(t^{n−2}/(T + H t^{n−1}))² − 1]^{−1/2} dt` over `[y0, y]`,
/// with the sign of the integrand taken from `cos σ` and the horizontal
/// direction from `branch`.
pub fn x_of_y(p: &DelaunayParams, y0: f64, x0: f64, branch: Branch, y: f64) -> Result<f64> {
    x_of_y_tol(p, y0, x0, branch, y, 1e-12)
}

pub fn x_of_y_tol(
    p: &DelaunayParams,
    y0: f64,
    x0: f64,
    branch: Branch,
    y: f64,
    tol: f64,
) -> Result<f64> {
    let dx = graph_quadrature(p, y0, y, tol, |_, c| c)?;
    Ok(x0 + branch.sign() * dx)
}

/// Integrals over a monotone graph branch between ordinates `ya` and `yb`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphIntegrals {
    /// `∫ ds`
    pub length: f64,
    /// `∫ |dx|` signed by `cos σ`
    pub dx: f64,
    /// `∫ y^{n−2} ds`
    pub weighted_length: f64,
    /// `∫ y^{n−1} dx` (same sign convention as `dx`)
    pub weighted_x: f64,
}

pub fn graph_integrals(p: &DelaunayParams, ya: f64, yb: f64, tol: f64) -> Result<GraphIntegrals> {
    let k = (p.n - 2) as i32;
    Ok(GraphIntegrals {
        length: graph_quadrature(p, ya, yb, tol, |_, _| 1.0)?,
        dx: graph_quadrature(p, ya, yb, tol, |_, c| c)?,
        weighted_length: graph_quadrature(p, ya, yb, tol, |y, _| y.powi(k))?,
        weighted_x: graph_quadrature(p, ya, yb, tol, |y, c| y.powi(k + 1) * c)?,
    })
}

/// Kenmotsu's closed-form parametrization of three-dimensional Delaunay
/// curves, displaced by `c` along the axis:
/// `y(s) = √(1 + B² + 2B cos 2Hs) / (2H)` and
/// `x(s) = c + ∫₀ˢ (1 + B cos 2Ht) / √(1 + B² + 2B cos 2Ht) dt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KenmotsuParams {
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub c: f64,
}

impl KenmotsuParams {
    pub fn new(h: f64, b: f64, c: f64) -> Result<Self> {
        if h == 0.0 || !h.is_finite() || !b.is_finite() || !c.is_finite() {
            return Err(Error::Domain(format!("invalid Kenmotsu parameters ({h}, {b}, {c})")));
        }
        Ok(Self { h, b, c })
    }

    fn q(&self, s: f64) -> f64 {
        1.0 + self.b * self.b + 2.0 * self.b * (2.0 * self.h * s).cos()
    }

    pub fn y(&self, s: f64) -> f64 {
        self.q(s).max(0.0).sqrt() / (2.0 * self.h)
    }

    /// `(x'(s), y'(s))`, a unit vector away from the axis crossings.
    pub fn tangent(&self, s: f64) -> (f64, f64) {
        let arg = 2.0 * self.h * s;
        let sq = self.q(s).sqrt();
        ((1.0 + self.b * arg.cos()) / sq, -self.b * arg.sin() / sq)
    }

    pub fn sigma(&self, s: f64) -> f64 {
        let (dx, dy) = self.tangent(s);
        dy.atan2(dx)
    }

    /// Axial displacement `∫₀ˢ x'(t) dt` (without `c`).
    pub fn x_offset(&self, s: f64, tol: f64) -> Result<f64> {
        self.x_increment(0.0, s, tol)
    }

    /// `x(s1) − x(s0)`.
    pub fn x_increment(&self, s0: f64, s1: f64, tol: f64) -> Result<f64> {
        self.check_regular(s0, s1)?;
        let b = self.b;
        let w = 2.0 * self.h;
        integrate_with(
            |t| {
                let cs = (w * t).cos();
                (1.0 + b * cs) / (1.0 + b * b + 2.0 * b * cs).sqrt()
            },
            s0,
            s1,
            &QuadOptions::with_tol(tol),
        )
    }

    pub fn x(&self, s: f64, tol: f64) -> Result<f64> {
        Ok(self.c + self.x_offset(s, tol)?)
    }

    /// Rejects ranges that pass through an axis crossing (`|B| = 1`).
    pub fn check_regular(&self, s0: f64, s1: f64) -> Result<()> {
        if (self.b.abs() - 1.0).abs() > 1e-12 {
            return Ok(());
        }
        // Q vanishes where 2Hs ≡ π (B = 1) or 2Hs ≡ 0 (B = −1).
        let period = std::f64::consts::PI / self.h.abs();
        let phase = if self.b > 0.0 { 0.5 * period } else { 0.0 };
        let (lo, hi) = if s0 <= s1 { (s0, s1) } else { (s1, s0) };
        let k = ((lo - phase) / period).ceil();
        let s_zero = phase + k * period;
        if s_zero <= hi {
            return Err(Error::Singularity {
                s: s_zero,
                reason: "Kenmotsu curve meets the axis".into(),
            });
        }
        Ok(())
    }

    /// First-integral constant `(1 − B²)/(4H)` of the n = 3 profile.
    pub fn first_integral(&self) -> f64 {
        (1.0 - self.b * self.b) / (4.0 * self.h)
    }

    pub fn delaunay(&self) -> DelaunayParams {
        DelaunayParams {
            n: 3,
            h: self.h,
            t: self.first_integral(),
        }
    }

    pub fn curve_point(&self, s: f64, tol: f64) -> Result<CurvePoint> {
        Ok(CurvePoint::new(s, self.x(s, tol)?, self.y(s), self.sigma(s)))
    }

    /// Parameter `s ∈ (−π/(2H), π/(2H))` at which `dy/dx = slope`, on the
    /// concave side of the profile: the outer arc of a nodoid, or the part
    /// of an unduloid between its inflection and its crest.
    pub fn parameter_for_slope(&self, slope: f64) -> Option<f64> {
        let b = self.b;
        let disc = b * b + slope * slope * (b * b - 1.0);
        if disc < 0.0 {
            return None;
        }
        let den = b + disc.sqrt();
        if den == 0.0 {
            return None;
        }
        let u = -slope * (1.0 + b) / den;
        Some(u.atan() / self.h)
    }
}

/// Point `(x(s), y(s))` of the Kenmotsu curve.
pub fn kenmotsu_point(k: &KenmotsuParams, s: f64) -> Result<(f64, f64)> {
    Ok((k.x(s, 1e-13)?, k.y(s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn params(n: usize, h: f64, t: f64) -> DelaunayParams {
        DelaunayParams::new(n, h, t).unwrap()
    }

    #[test]
    fn t_max_values() {
        assert!((t_max(3, 1.0).unwrap() - 0.25).abs() < 1e-15);
        assert!((t_max(3, 2.0).unwrap() - 0.125).abs() < 1e-15);
        assert!((t_max(5, 1.0).unwrap() - 27.0 / 256.0).abs() < 1e-15);
        assert!(t_max(3, 0.0).is_err());
        assert!(t_max(3, -1.0).is_err());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&params(3, 1.0, 0.0)).unwrap(), DelaunayClass::Sphere);
        assert_eq!(classify(&params(5, 1.0, 27.0 / 256.0)).unwrap(), DelaunayClass::Cylinder);
        assert_eq!(classify(&params(3, 0.0, -1.0)).unwrap(), DelaunayClass::Catenoid);
        assert_eq!(classify(&params(3, 0.0, 0.0)).unwrap(), DelaunayClass::Hyperplane);
        assert_eq!(classify(&params(3, 1.0, 0.1)).unwrap(), DelaunayClass::Unduloid);
        assert_eq!(classify(&params(4, 1.0, -0.3)).unwrap(), DelaunayClass::Nodoid);
        let over = DelaunayParams { n: 3, h: 1.0, t: 0.3 };
        assert!(classify(&over).is_err());
        assert!(DelaunayParams::new(3, 1.0, 0.3).is_err());
        assert!(DelaunayParams::new(2, 1.0, 0.0).is_err());
    }

    #[test]
    fn classification_tolerance_is_configurable() {
        let p = DelaunayParams { n: 3, h: 1.0, t: 0.25 * (1.0 - 1e-9) };
        assert_eq!(classify(&p).unwrap(), DelaunayClass::Unduloid);
        assert_eq!(classify_with_tol(&p, 1e-6).unwrap(), DelaunayClass::Cylinder);
    }

    #[test]
    fn extrema_examples() {
        assert_eq!(profile_extrema(&params(3, 1.0, 0.0)).unwrap(), (0.0, 1.0));
        let (a, b) = profile_extrema(&params(3, 1.0, 0.25)).unwrap();
        assert!((a - 0.5).abs() < 1e-15 && (b - 0.5).abs() < 1e-15);
        // Oracle: roots of y − y² = 0.1.
        let (lo, hi) = profile_extrema(&params(3, 1.0, 0.1)).unwrap();
        let d = 0.6f64.sqrt();
        assert!((lo - (1.0 - d) / 2.0).abs() < 1e-12);
        assert!((hi - (1.0 + d) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn residual_examples() {
        let sphere = params(3, 1.0, 0.0);
        assert!(first_integral_residual(&sphere, &CurvePoint::new(0.0, 0.0, 1.0, 0.0)).abs() < 1e-15);
        assert!((first_integral_residual(&sphere, &CurvePoint::new(0.0, 0.0, 1.0, FRAC_PI_2)) + 1.0).abs() < 1e-15);
        let cyl = params(3, 1.0, 0.25);
        assert!(first_integral_residual(&cyl, &CurvePoint::new(0.0, 0.0, 0.5, 0.0)).abs() < 1e-15);
        assert!((first_integral_residual(&sphere, &CurvePoint::new(0.0, 0.0, 0.5, 0.0)) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn cylinder_profile_is_constant() {
        let p = params(3, 1.0, 0.25);
        let pts = integrate_profile(&p, &CurvePoint::new(0.0, 0.0, 0.5, 0.0), 1.0, &StepControl::default()).unwrap();
        for pt in &pts {
            assert!((pt.y - 0.5).abs() < 1e-14);
        }
        assert!((pts.last().unwrap().x - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sphere_profile_traces_unit_circle_to_the_axis() {
        let p = params(3, 1.0, 0.0);
        let pts = integrate_profile(&p, &CurvePoint::new(0.0, 0.0, 1.0, 0.0), FRAC_PI_2, &StepControl::default()).unwrap();
        for pt in &pts {
            assert!((pt.x * pt.x + pt.y * pt.y - 1.0).abs() < 1e-8, "{pt:?}");
        }
        let end = pts.last().unwrap();
        assert_eq!(end.y, 0.0);
        assert!((end.x - 1.0).abs() < 1e-8);
    }

    #[test]
    fn reaching_the_axis_early_is_a_singularity() {
        let p = params(3, 1.0, 0.0);
        let r = integrate_profile(&p, &CurvePoint::new(0.0, 0.0, 1.0, 0.0), 3.0, &StepControl::default());
        assert!(matches!(r, Err(Error::Singularity { .. })));
    }

    #[test]
    fn bad_start_point_is_rejected() {
        let p = params(3, 1.0, 0.1);
        let r = integrate_profile(&p, &CurvePoint::new(0.0, 0.0, 0.5, 0.0), 1.0, &StepControl::default());
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn unduloid_half_period_ends_at_minimum() {
        let p = params(3, 1.0, 0.1);
        let (lo, hi) = profile_extrema(&p).unwrap();
        let start = CurvePoint::new(0.0, 0.0, hi, 0.0);
        // σ returns to zero at the trough; locate it as the first event
        // after σ has gone negative.
        let first = integrate_profile(&p, &start, 0.05, &StepControl::default()).unwrap();
        let mid = *first.last().unwrap();
        assert!(mid.sigma < 0.0);
        let trough = integrate_to_angle(&p, &mid, 0.0, 10.0, &StepControl::default()).unwrap();
        assert!((trough.y - lo).abs() < 1e-8);
        // Integrating exactly the half-period arclength lands there too.
        let pts = integrate_profile(&p, &start, trough.s, &StepControl::default()).unwrap();
        assert!((pts.last().unwrap().y - lo).abs() < 1e-8);
    }

    #[test]
    fn x_of_y_examples() {
        let sphere = params(3, 1.0, 0.0);
        let x = x_of_y(&sphere, 1.0, 0.0, Branch::Left, 0.5).unwrap();
        assert!((x + 3f64.sqrt() / 2.0).abs() < 1e-10);
        let cyl = params(3, 1.0, 0.25);
        assert!(matches!(x_of_y(&cyl, 0.5, 0.0, Branch::Right, 0.7), Err(Error::Domain(_))));
    }

    #[test]
    fn x_of_y_matches_ode_on_unduloid_half_period() {
        let p = params(3, 1.0, 0.1);
        let (lo, hi) = profile_extrema(&p).unwrap();
        let pts = integrate_profile(&p, &CurvePoint::new(0.0, 0.0, hi, 0.0), 1.2, &StepControl::default()).unwrap();
        for pt in pts.iter().filter(|pt| pt.sigma < -1e-3 && pt.y > lo + 1e-6) {
            let x = x_of_y(&p, hi, 0.0, Branch::Right, pt.y).unwrap();
            assert!((x - pt.x).abs() < 1e-6, "{} vs {}", x, pt.x);
        }
    }

    #[test]
    fn kenmotsu_examples() {
        let cyl = KenmotsuParams::new(1.0, 0.0, 0.0).unwrap();
        let (x, y) = kenmotsu_point(&cyl, 2.0).unwrap();
        assert!((x - 2.0).abs() < 1e-13 && (y - 0.5).abs() < 1e-15);
        let sph = KenmotsuParams::new(1.0, 1.0, 0.0).unwrap();
        let (x, y) = kenmotsu_point(&sph, FRAC_PI_4).unwrap();
        assert!((y - 2f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((x - FRAC_PI_4.sin()).abs() < 1e-12);
        let k = KenmotsuParams::new(2.0, 0.5, 0.0).unwrap();
        let (x, y) = kenmotsu_point(&k, 0.0).unwrap();
        assert_eq!(x, 0.0);
        assert!((y - 0.375).abs() < 1e-15);
        // The sphere reaches the axis at 2Hs = π.
        assert!(matches!(kenmotsu_point(&sph, 2.0), Err(Error::Singularity { .. })));
    }

    #[test]
    fn kenmotsu_slope_parameter() {
        for &(h, b) in &[(1.0, 2.5), (2.0, 1.0), (1.3, 0.7), (0.8, -0.6)] {
            let k = KenmotsuParams::new(h, b, 0.0).unwrap();
            for &m in &[0.3, 1.0, -0.8, 2.0] {
                if let Some(s) = k.parameter_for_slope(m) {
                    let (dx, dy) = k.tangent(s);
                    assert!((dy / dx - m).abs() < 1e-10, "h={h} b={b} m={m}");
                    assert!(dx > 0.0);
                    assert!((h * s).abs() < PI / 2.0);
                }
            }
        }
    }
}
