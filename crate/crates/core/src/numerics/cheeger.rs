//! Cheeger constants as the minimum of `P/V` over one-parameter candidate
//! families indexed by the mean curvature `H`.

use serde::{Deserialize, Serialize};

use crate::candidates::{candidates_at, hourglass_candidates_for, BuildOptions, CandidateSet, HourglassCase};
use crate::domains::{domain_metrics, faber_krahn_bound, DomainSpec, Family};
use crate::error::{Error, Result};
use crate::numerics::minimize::minimize_scalar;
use crate::numerics::roots::{bisect_predicate, scan_roots};

/// Tolerances of the numerical layers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub quad: f64,
    pub root: f64,
    /// Bracket width at which the minimization over `H` stops.
    pub h_min: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            quad: 1e-10,
            root: 1e-10,
            h_min: 1e-8,
        }
    }
}

impl Tolerances {
    /// All three scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            quad: self.quad * factor,
            root: self.root * factor,
            h_min: self.h_min * factor,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheegerConfig {
    pub tol: Tolerances,
    /// Pre-scan points over the admissible interval.
    pub samples: usize,
    /// Restricts hourglass candidates to these cases (all when `None`).
    pub hourglass_cases: Option<Vec<HourglassCase>>,
    /// Skip the independent fixed-point solve.
    pub skip_fixed_point: bool,
}

impl Default for CheegerConfig {
    fn default() -> Self {
        Self {
            tol: Tolerances::default(),
            samples: 64,
            hourglass_cases: None,
            skip_fixed_point: false,
        }
    }
}

impl CheegerConfig {
    pub fn build_options(&self) -> BuildOptions {
        let mut o = BuildOptions::with_quad_tol(self.tol.quad);
        o.root_tol = (self.tol.root * 1e-3).max(1e-15);
        o
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Admissible interval of mean curvatures that was searched.
    pub interval: (f64, f64),
    pub evaluations: usize,
    pub local_minima: usize,
    pub non_unimodal: bool,
    /// `H` of the smallest root of `ratio(H) = (n−1)H`.
    pub fixed_point_h: Option<f64>,
    /// `|h − (n−1)·H_fp|`.
    pub fixed_point_gap: Option<f64>,
    /// `|h − (n−1)·H_opt|`.
    pub stationarity_gap: f64,
    pub faber_krahn: f64,
    pub domain_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheegerResult {
    pub domain: DomainSpec,
    pub h: f64,
    #[serde(rename = "H_opt")]
    pub h_opt: f64,
    pub candidate: CandidateSet,
    pub diagnostics: Diagnostics,
}

/// Evaluates the best candidate at one mean curvature.
pub fn best_candidate(domain: &DomainSpec, h: f64, cfg: &CheegerConfig) -> Option<CandidateSet> {
    let opts = cfg.build_options();
    let all = match (&cfg.hourglass_cases, domain.family) {
        (Some(cases), Family::Hourglass { .. }) => hourglass_candidates_for(domain, h, cases, &opts).ok()?,
        _ => candidates_at(domain, h, &opts).ok()?,
    };
    all.into_iter()
        .filter(|c| c.ratio().is_finite() && c.ratio() > 0.0)
        .min_by(|a, b| a.ratio().total_cmp(&b.ratio()))
}

fn ratio_at(domain: &DomainSpec, h: f64, cfg: &CheegerConfig) -> Option<f64> {
    best_candidate(domain, h, cfg).map(|c| c.ratio())
}

/// Bounds `[lo, hi]` on the optimal mean curvature: the Faber–Krahn bound
/// and the domain's own ratio, divided by `n − 1`, narrowed to where
/// candidates exist.
pub fn admissible_interval(domain: &DomainSpec, cfg: &CheegerConfig) -> Result<(f64, f64)> {
    let k = (domain.n - 1) as f64;
    let mut lo = faber_krahn_bound(domain)? / k;
    let hi = domain_metrics(domain)?.ratio / k;
    if let Family::Cylinder { r, .. } = domain.family {
        lo = lo.max(1.0 / r * (1.0 + 1e-12));
    }
    let n = cfg.samples.max(8);
    let grid: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
    let ok: Vec<bool> = grid.iter().map(|&h| ratio_at(domain, h, cfg).is_some()).collect();
    let first = ok
        .iter()
        .position(|&b| b)
        .ok_or_else(|| Error::Inadmissible(format!("no admissible candidate for H in [{lo}, {hi}]")))?;
    let last = ok.iter().rposition(|&b| b).expect("non-empty");
    let edge = cfg.tol.h_min;
    let a = if first == 0 {
        lo
    } else {
        bisect_predicate(|h| ratio_at(domain, h, cfg).is_some(), grid[first - 1], grid[first], edge)
    };
    let b = if last == n - 1 {
        hi
    } else {
        bisect_predicate(|h| ratio_at(domain, h, cfg).is_none(), grid[last], grid[last + 1], edge)
    };
    Ok((a, b))
}

/// The Cheeger constant of `domain`.
pub fn cheeger(domain: &DomainSpec, cfg: &CheegerConfig) -> Result<CheegerResult> {
    let k = (domain.n - 1) as f64;
    let fk = faber_krahn_bound(domain)?;
    let domain_ratio = domain_metrics(domain)?.ratio;
    if let Family::Ball { .. } = domain.family {
        let c = crate::candidates::ball_candidate(domain)?;
        let h = c.ratio();
        return Ok(CheegerResult {
            domain: domain.clone(),
            h,
            h_opt: c.h,
            diagnostics: Diagnostics {
                interval: (c.h, c.h),
                evaluations: 0,
                local_minima: 1,
                non_unimodal: false,
                fixed_point_h: None,
                fixed_point_gap: None,
                stationarity_gap: (h - k * c.h).abs(),
                faber_krahn: fk,
                domain_ratio,
            },
            candidate: c,
        });
    }
    let (lo, hi) = admissible_interval(domain, cfg)?;
    // Keep clear of the interval ends where the glue degenerates.
    let pad = (hi - lo) * 1e-9;
    let (lo, hi) = (lo + pad, hi - pad);
    let m = minimize_scalar(|h| ratio_at(domain, h, cfg), lo, hi, cfg.tol.h_min, cfg.samples)?;
    let mut candidate = best_candidate(domain, m.x, cfg)
        .ok_or_else(|| Error::Inadmissible(format!("optimum H = {} is not admissible", m.x)))?;

    let fixed_point_h = if cfg.skip_fixed_point {
        None
    } else {
        scan_roots(
            |x| ratio_at(domain, x, cfg).map(|r| r - k * x),
            lo,
            hi,
            cfg.samples,
            cfg.tol.root,
        )
        .into_iter()
        .find(|&x| ratio_at(domain, x, cfg).is_some_and(|r| (r - k * x).abs() < 1e-6))
    };
    // The minimizer is only located to about the square root of the ratio's
    // resolution; the fixed point is a simple root and far sharper. Use it
    // when it reaches the same minimum.
    if let Some(c) = fixed_point_h.and_then(|x| best_candidate(domain, x, cfg)) {
        if c.ratio() <= candidate.ratio() * (1.0 + 1e-10) {
            candidate = c;
        }
    }
    let h = candidate.ratio();
    Ok(CheegerResult {
        domain: domain.clone(),
        h,
        h_opt: candidate.h,
        diagnostics: Diagnostics {
            interval: (lo, hi),
            evaluations: m.evaluations,
            local_minima: m.local_minima,
            non_unimodal: m.non_unimodal,
            fixed_point_h,
            fixed_point_gap: fixed_point_h.map(|x| (h - k * x).abs()),
            stationarity_gap: (h - k * candidate.h).abs(),
            faber_krahn: fk,
            domain_ratio,
        },
        candidate,
    })
}
