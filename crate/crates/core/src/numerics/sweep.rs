//! Parameter sweep over the reflex-corner height `D` of the hourglass and
//! location of the values of `D` where the optimal structure changes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::candidates::{Glue, HourglassCase, Structure};
use crate::delaunay::{classify, DelaunayClass};
use crate::domains::{build_domain, Family};
use crate::error::{Error, Result};
use crate::numerics::cheeger::{cheeger, CheegerConfig};
use crate::numerics::roots::bisect_predicate;

/// Coarse description of an hourglass optimum, ordered as observed for
/// increasing `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    TwoComponents,
    ThroughCornersTrough,
    ThroughCornersCrest,
    ThroughCornersNodoid,
    Inscribed,
    Tangent,
}

impl Regime {
    fn of(case: HourglassCase, middle_b: Option<f64>) -> Self {
        match (case, middle_b) {
            (HourglassCase::TwoComponents, _) => Self::TwoComponents,
            (HourglassCase::Inscribed, _) => Self::Inscribed,
            (HourglassCase::Tangent, _) => Self::Tangent,
            (HourglassCase::ThroughCorners, Some(b)) if b < 0.0 => Self::ThroughCornersTrough,
            (HourglassCase::ThroughCorners, Some(b)) if b <= 1.0 => Self::ThroughCornersCrest,
            (HourglassCase::ThroughCorners, _) => Self::ThroughCornersNodoid,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    #[serde(rename = "D")]
    pub d: f64,
    pub h: f64,
    #[serde(rename = "H_opt")]
    pub h_opt: f64,
    pub structure: Structure,
    pub regime: Regime,
    /// Kenmotsu parameter of the middle arc (absent for two components).
    pub middle_b: Option<f64>,
    pub middle_class: Option<DelaunayClass>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalValue {
    pub value: f64,
    pub bracket: (f64, f64),
    pub from: Regime,
    pub to: Regime,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub points: Vec<SweepPoint>,
    pub critical: Vec<CriticalValue>,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub grid: Vec<f64>,
    pub cheeger: CheegerConfig,
    /// Bracket width at which critical values are reported.
    pub critical_tol: f64,
}

impl SweepConfig {
    /// Uniform grid `start, start + step, …` up to `end`.
    pub fn uniform(start: f64, end: f64, step: f64) -> Self {
        let count = ((end - start) / step + 1e-9).floor() as usize;
        Self {
            grid: (0..=count).map(|i| start + step * i as f64).collect(),
            ..Self::default()
        }
    }
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            grid: (1..=39).map(|i| 0.05 * i as f64).collect(),
            cheeger: CheegerConfig {
                samples: 32,
                skip_fixed_point: true,
                ..CheegerConfig::default()
            },
            critical_tol: 1e-4,
        }
    }
}

/// Optimal hourglass structure at one value of `D`.
pub fn sweep_point(a: f64, b: f64, c: f64, d: f64, cfg: &CheegerConfig) -> Result<SweepPoint> {
    let domain = build_domain(Family::Hourglass { a, b, c, d }, 3)?;
    let r = cheeger(&domain, cfg)?;
    let Structure::Hourglass { case, .. } = r.candidate.structure else {
        return Err(Error::Domain("hourglass optimum without hourglass structure".into()));
    };
    let middle_b = match &r.candidate.glue {
        Glue::Hourglass { middle, .. } => middle.map(|m| m.b),
        _ => None,
    };
    let middle_class = r.candidate.middle_params().and_then(|p| classify(&p).ok());
    Ok(SweepPoint {
        d,
        h: r.h,
        h_opt: r.h_opt,
        structure: r.candidate.structure,
        regime: Regime::of(case, middle_b),
        middle_b,
        middle_class,
    })
}

fn regime_at(a: f64, b: f64, c: f64, d: f64, cfg: &CheegerConfig) -> Option<Regime> {
    sweep_point(a, b, c, d, cfg).ok().map(|p| p.regime)
}

/// Bisects for the first change of regime in `(lo, hi)`, then continues
/// past it when the grid skipped an intermediate regime.
fn locate(a: f64, b: f64, c: f64, lo: (f64, Regime), hi: (f64, Regime), cfg: &SweepConfig, out: &mut Vec<CriticalValue>) {
    let from = lo.1;
    let tol = cfg.critical_tol;
    let value = bisect_predicate(
        |d| regime_at(a, b, c, d, &cfg.cheeger).is_some_and(|r| r != from),
        lo.0,
        hi.0,
        tol,
    );
    let probe = (value + tol).min(hi.0);
    let next = regime_at(a, b, c, probe, &cfg.cheeger).unwrap_or(hi.1);
    out.push(CriticalValue {
        value,
        bracket: (value - 0.5 * tol, value + 0.5 * tol),
        from,
        to: next,
    });
    if next != hi.1 && probe < hi.0 && next != from {
        locate(a, b, c, (probe, next), hi, cfg, out);
    }
}

pub fn hourglass_sweep(a: f64, b: f64, c: f64, cfg: &SweepConfig) -> Result<SweepResult> {
    if cfg.grid.iter().any(|&d| !(d > 0.0 && d < b)) {
        return Err(Error::Domain(format!("sweep values of D must lie in (0, {b})")));
    }
    let points: Vec<SweepPoint> = cfg
        .grid
        .par_iter()
        .map(|&d| sweep_point(a, b, c, d, &cfg.cheeger))
        .collect::<Result<_>>()?;

    let mut critical = Vec::new();
    for w in points.windows(2) {
        if w[0].regime != w[1].regime {
            locate(a, b, c, (w[0].d, w[0].regime), (w[1].d, w[1].regime), cfg, &mut critical);
        }
    }
    Ok(SweepResult { a, b, c, points, critical })
}
