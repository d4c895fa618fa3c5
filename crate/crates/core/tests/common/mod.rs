//! Per-case checks shared by the property suite and the acceptance run.
#![allow(dead_code)]

use cheeger_core::delaunay::{
    first_integral_residual, integrate_profile, profile_extrema, t_max, x_of_y, Branch, CurvePoint, DelaunayParams,
};
use cheeger_core::numerics::ode::StepControl;
use proptest::prelude::*;

/// `(n, H, T)` with `T` strictly inside the unduloid range or negative.
#[derive(Debug, Clone, Copy)]
pub struct Case {
    pub n: usize,
    pub h: f64,
    pub t: f64,
}

impl Case {
    pub fn params(&self) -> DelaunayParams {
        DelaunayParams::new(self.n, self.h, self.t).unwrap()
    }

    pub fn is_nodoid(&self) -> bool {
        self.t < 0.0
    }
}

pub fn unduloid() -> impl Strategy<Value = Case> {
    (3usize..=8, 0.8f64..3.0, 0.02f64..0.98).prop_map(|(n, h, f)| Case {
        n,
        h,
        t: f * t_max(n, h).unwrap(),
    })
}

pub fn nodoid() -> impl Strategy<Value = Case> {
    (3usize..=8, 0.8f64..3.0, 0.01f64..3.0).prop_map(|(n, h, q)| Case {
        n,
        h,
        t: -q / h.powi(n as i32 - 2),
    })
}

pub fn any_case() -> impl Strategy<Value = Case> {
    prop_oneof![unduloid(), nodoid()]
}

fn crest(c: &Case) -> CurvePoint {
    let (_, y_max) = profile_extrema(&c.params()).unwrap();
    CurvePoint::new(0.0, 0.0, y_max, 0.0)
}

/// Largest first-integral residual along a profile started at its crest.
pub fn first_integral_max(c: &Case, periods: f64) -> f64 {
    let p = c.params();
    let pts = integrate_profile(&p, &crest(c), periods / c.h, &StepControl::default()).unwrap();
    pts.iter()
        .map(|q| first_integral_residual(&p, q).abs())
        .fold(0.0, f64::max)
}

/// Largest gap between ODE samples and the graph quadrature on the branch
/// that leaves the crest with decreasing height.
pub fn oracle_gap(c: &Case) -> f64 {
    let p = c.params();
    let start = crest(c);
    let pts = integrate_profile(&p, &start, 4.0 / c.h, &StepControl::default()).unwrap();
    let (y_min, y_max) = profile_extrema(&p).unwrap();
    let mut worst: f64 = 0.0;
    for q in pts.iter().skip(1) {
        // Stop at the first point where the height stops decreasing.
        let monotone = if c.is_nodoid() {
            q.sigma > -std::f64::consts::FRAC_PI_2
        } else {
            q.sigma < 0.0
        };
        if !monotone {
            break;
        }
        let margin = 1e-9 * y_max;
        if q.y <= y_min + margin || q.y >= y_max - margin {
            continue;
        }
        let x = x_of_y(&p, y_max, 0.0, Branch::Right, q.y).unwrap();
        worst = worst.max((x - q.x).abs());
    }
    worst
}

/// Whether the extrema obey the unduloid or nodoid bounds.
pub fn extrema_bounds_hold(c: &Case) -> bool {
    let (lo, hi) = profile_extrema(&c.params()).unwrap();
    let (n, h) = (c.n as f64, c.h);
    if c.is_nodoid() {
        let yv = (-c.t / h).powf(1.0 / (n - 1.0));
        lo > 0.0 && lo < yv && hi > yv.max(1.0 / h)
    } else {
        let ys = (n - 2.0) / ((n - 1.0) * h);
        0.0 < lo && lo < ys && ys < hi && hi < 1.0 / h
    }
}
