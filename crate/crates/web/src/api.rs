use serde_json::{json, Value};

use cheeger_core::candidates::CandidateSet;
use cheeger_core::delaunay::{classify, profile_extrema, CurvePoint, DelaunayClass, DelaunayParams};
use cheeger_core::domains::{domain_metrics, faber_krahn_bound, DomainSpec};
use cheeger_core::numerics::cheeger::{admissible_interval, best_candidate};
use cheeger_core::numerics::{cheeger, CheegerConfig, Tolerances};
use cheeger_core::revolve::{DelaunayArc, GeneratrixPiece, PiecewiseCurve, RevolveOptions};

const PER_PIECE: usize = 96;

fn text<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Looser than the library default: interactive use favours speed.
fn config() -> CheegerConfig {
    CheegerConfig {
        tol: Tolerances::default().scaled(10.0),
        samples: 32,
        skip_fixed_point: true,
        ..CheegerConfig::default()
    }
}

fn points(c: &PiecewiseCurve) -> Result<Vec<[f64; 2]>, String> {
    let opts = RevolveOptions::default();
    let mut out = Vec::new();
    for p in &c.pieces {
        match p {
            GeneratrixPiece::Segment { from, to } => out.extend([*from, *to]),
            _ => out.extend(p.sample(PER_PIECE, &opts).map_err(text)?.iter().map(|q| [q.x, q.y])),
        }
    }
    Ok(out)
}

fn candidate_json(c: &CandidateSet) -> Result<Value, String> {
    let outlines = c
        .component_curves(&RevolveOptions::default())
        .map_err(text)?
        .iter()
        .map(points)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json!({
        "H": c.h,
        "ratio": c.ratio(),
        "structure": c.structure.to_string(),
        "outlines": outlines,
    }))
}

fn parse(domain: &str) -> Result<DomainSpec, String> {
    DomainSpec::from_json(domain).map_err(text)
}

pub fn delaunay_profile(n: usize, big_h: f64, t: f64, samples: usize) -> Result<String, String> {
    let p = DelaunayParams::new(n, big_h, t).map_err(text)?;
    let class = classify(&p).map_err(text)?;
    let (_, y_max) = profile_extrema(&p).map_err(text)?;
    let span = if class == DelaunayClass::Sphere {
        0.5 * std::f64::consts::PI / big_h
    } else {
        2.0 * std::f64::consts::PI / big_h
    };
    let start = CurvePoint::new(0.0, 0.0, y_max, 0.0);
    let arc = DelaunayArc::profile(p, start, span, &RevolveOptions::default()).map_err(text)?;
    let half = arc
        .sample(samples.max(4) / 2, &RevolveOptions::default())
        .map_err(text)?;
    let mut pts: Vec<[f64; 2]> = half.iter().rev().map(|q| [-q.x, q.y]).collect();
    pts.extend(half.iter().skip(1).map(|q| [q.x, q.y]));
    Ok(json!({ "class": class, "points": pts }).to_string())
}

pub fn cheeger_optimum(domain: &str) -> Result<String, String> {
    let spec = parse(domain)?;
    let cfg = config();
    let r = cheeger(&spec, &cfg).map_err(text)?;
    Ok(json!({
        "h": r.h,
        "H_opt": r.h_opt,
        "interval": r.diagnostics.interval,
        "faber_krahn": r.diagnostics.faber_krahn,
        "domain_ratio": r.diagnostics.domain_ratio,
        "domain": points(&spec.generatrix)?,
        "candidate": candidate_json(&r.candidate)?,
    })
    .to_string())
}

pub fn candidate_at(domain: &str, big_h: f64) -> Result<String, String> {
    let spec = parse(domain)?;
    let cfg = config();
    let c = best_candidate(&spec, big_h, &cfg).ok_or_else(|| format!("no admissible candidate at H = {big_h}"))?;
    let interval = admissible_interval(&spec, &cfg).ok();
    Ok(json!({
        "domain": points(&spec.generatrix)?,
        "candidate": candidate_json(&c)?,
        "interval": interval,
        "faber_krahn": faber_krahn_bound(&spec).map_err(text)?,
        "domain_ratio": domain_metrics(&spec).map_err(text)?.ratio,
    })
    .to_string())
}
