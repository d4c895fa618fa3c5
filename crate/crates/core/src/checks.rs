//! Certificates that test computed candidates against structural facts about
//! Cheeger sets of rotational domains.

use serde::{Deserialize, Serialize};

use crate::candidates::CandidateSet;
use crate::delaunay::{classify_with_tol, DelaunayClass};
use crate::domains::{faber_krahn_bound, DomainSpec};
use crate::error::Result;
use crate::numerics::cheeger::CheegerResult;
use crate::revolve::{unit_ball_volume, GeneratrixPiece, PiecewiseCurve, RevolveOptions};

/// Samples per piece used by the sampled certificates.
pub const DEFAULT_SAMPLES: usize = 2048;

/// Threshold for `T(s) ≤ 0`.
pub const T_SIGN_TOL: f64 = 1e-8;

/// Relative tolerance when naming the type of a computed arc. Looser than
/// the classifier's default because arcs at transitions are only located
/// to the accuracy of the outer solve.
pub const CLASS_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub piece: usize,
    pub s: f64,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub name: String,
    pub status: Status,
    pub max_residual: f64,
    pub threshold: f64,
    /// Where the largest residual occurred.
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

impl CertificateReport {
    fn new(name: &str, status: Status, max_residual: f64, threshold: f64) -> Self {
        Self {
            name: name.to_string(),
            status,
            max_residual,
            threshold,
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Samples `T = y^{n−2} cos σ − (h/(n−1)) y^{n−1}` on every piece of
/// `curve` that is not a straight segment and passes when `T ≤ 1e-8`
/// throughout. A curve without such pieces passes vacuously.
pub fn t_sign_certificate(curve: &PiecewiseCurve, h: f64, n: usize) -> Result<CertificateReport> {
    t_sign_certificate_with(curve, h, n, DEFAULT_SAMPLES)
}

pub fn t_sign_certificate_with(curve: &PiecewiseCurve, h: f64, n: usize, samples: usize) -> Result<CertificateReport> {
    let opts = RevolveOptions::default();
    let k = (n - 1) as f64;
    let mut worst = f64::NEG_INFINITY;
    let mut witness = None;
    let mut sampled = 0usize;
    for (i, p) in curve.pieces.iter().enumerate() {
        if matches!(p, GeneratrixPiece::Segment { .. }) {
            continue;
        }
        for q in p.sample(samples, &opts)? {
            let t = q.y.powf(k - 1.0) * q.sigma.cos() - h / k * q.y.powf(k);
            sampled += 1;
            if t > worst {
                worst = t;
                witness = Some(Witness {
                    piece: i,
                    s: q.s,
                    x: q.x,
                    y: q.y,
                });
            }
        }
    }
    if sampled == 0 {
        let mut r = CertificateReport::new("t-sign", Status::Pass, 0.0, T_SIGN_TOL);
        r.notes.push("no free boundary: vacuous".into());
        return Ok(r);
    }
    let status = if worst <= T_SIGN_TOL { Status::Pass } else { Status::Fail };
    let mut r = CertificateReport::new("t-sign", status, worst, T_SIGN_TOL);
    r.witness = witness;
    r.notes.push(format!("{sampled} samples"));
    Ok(r)
}

/// The T-sign certificate on the free boundary of a candidate.
pub fn t_sign_for_candidate(c: &CandidateSet, h: f64) -> Result<CertificateReport> {
    let free: Vec<GeneratrixPiece> = c.free_pieces().cloned().collect();
    t_sign_certificate(&PiecewiseCurve::new(c.generatrix.n, free), h, c.generatrix.n)
}

/// Height conditions guaranteeing nodoidal free boundaries for a domain
/// generated by a closed curve above the axis.
pub fn height_criterion(spec: &DomainSpec, h: f64) -> Result<CertificateReport> {
    let on_axis = |p: Option<[f64; 2]>| p.is_some_and(|p| p[1].abs() < 1e-12);
    if on_axis(spec.generatrix.start_point()) || on_axis(spec.generatrix.end_point()) {
        let mut r = CertificateReport::new("height-criterion", Status::NotApplicable, 0.0, 0.0);
        r.notes.push(format!("the {} generatrix touches the axis", spec.family.name()));
        return Ok(r);
    }
    height_criterion_curve(&spec.generatrix, h)
}

/// Evaluates `min η ≥ (n−1)/h` and the volume bound
/// `min η ≥ (n−1)/n · (|Ω|/ω_n)^{1/n}` for a closed generatrix.
pub fn height_criterion_curve(curve: &PiecewiseCurve, h: f64) -> Result<CertificateReport> {
    let opts = RevolveOptions::default();
    let n = curve.n;
    let pts = curve.sample(DEFAULT_SAMPLES, &opts)?;
    let min_eta = pts.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
    let closed = curve.check_bounds_region().is_ok()
        && curve
            .start_point()
            .zip(curve.end_point())
            .is_some_and(|(a, b)| (a[0] - b[0]).hypot(a[1] - b[1]) < 1e-9);
    if !closed || min_eta <= 0.0 {
        let mut r = CertificateReport::new("height-criterion", Status::NotApplicable, 0.0, 0.0);
        r.notes.push("the generatrix is not a closed curve above the axis".into());
        return Ok(r);
    }
    let i = curve.integrals(&opts)?;
    let volume = (unit_ball_volume(n - 1) * i.weighted_x).abs();
    let nf = n as f64;
    let direct = (nf - 1.0) / h;
    let via_volume = (nf - 1.0) / nf * (volume / unit_ball_volume(n)).powf(1.0 / nf);
    let (a, b) = (min_eta >= direct, min_eta >= via_volume);
    let status = if a || b { Status::Pass } else { Status::Fail };
    let mut r = CertificateReport::new("height-criterion", status, direct.min(via_volume) - min_eta, 0.0);
    r.notes.push(format!("min height {min_eta}"));
    r.notes.push(format!("(n-1)/h = {direct}: {}", if a { "holds" } else { "fails" }));
    r.notes.push(format!("volume bound {via_volume}: {}", if b { "holds" } else { "fails" }));
    Ok(r)
}

/// Whether a ball of radius `2/h` fits in the three-dimensional cone
/// `K_{l,θ}`. Passes when it does not (the spherical cap of the Cheeger
/// set is then not part of an inscribed ball).
pub fn rolling_ball_check(l: f64, theta: f64, h: f64) -> CertificateReport {
    let inradius = l * theta.sin() / (1.0 + theta.sin());
    let radius = 2.0 / h;
    let bound = 2.0 * l * theta.sin() / (3.0 * (1.0 + theta.cos()));
    let status = if radius > inradius { Status::Pass } else { Status::Fail };
    let mut r = CertificateReport::new("rolling-ball", status, radius - inradius, 0.0);
    r.notes.push(format!("2/h = {radius}, inradius = {inradius}"));
    r.notes.push(format!(
        "sufficient bound 2 l sin θ / (3 (1 + cos θ)) = {bound}: {}",
        if bound > inradius { "exceeds the inradius" } else { "does not exceed the inradius" }
    ));
    r
}

/// Types of the free Delaunay arcs and circular arcs of a candidate.
pub fn free_piece_classes(c: &CandidateSet, tol: f64) -> Result<Vec<DelaunayClass>> {
    let mut out = Vec::new();
    for p in c.free_pieces() {
        out.push(match p {
            GeneratrixPiece::Arc { .. } => DelaunayClass::Sphere,
            GeneratrixPiece::Delaunay(d) => classify_with_tol(&d.params(), tol)?,
            GeneratrixPiece::Segment { .. } => unreachable!("segments are not free"),
        });
    }
    Ok(out)
}

/// For convex families every free piece must be spherical or nodoidal;
/// for the hourglass the observed types are reported.
pub fn classification_certificate(result: &CheegerResult) -> Result<CertificateReport> {
    let classes = free_piece_classes(&result.candidate, CLASS_TOL)?;
    let bad = classes
        .iter()
        .filter(|c| !matches!(c, DelaunayClass::Sphere | DelaunayClass::Nodoid))
        .count();
    let convex = result.domain.family.is_convex();
    let status = if !convex || bad == 0 { Status::Pass } else { Status::Fail };
    let mut r = CertificateReport::new("classification", status, bad as f64, 0.0);
    r.notes = classes.iter().map(|c| c.to_string()).collect();
    if !convex {
        r.notes.push("nonconvex domain: every type allowed".into());
    }
    Ok(r)
}

/// `faber_krahn ≤ h ≤ P(Ω)/|Ω|`.
pub fn bounds_certificate(result: &CheegerResult) -> Result<CertificateReport> {
    let fk = faber_krahn_bound(&result.domain)?;
    let upper = result.diagnostics.domain_ratio;
    let slack = 1e-9 * upper;
    let excess = (fk - result.h).max(result.h - upper);
    let status = if excess <= slack { Status::Pass } else { Status::Fail };
    let mut r = CertificateReport::new("bounds", status, excess, slack);
    r.notes.push(format!("{fk} <= {} <= {upper}", result.h));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{build_domain, Family};
    use std::f64::consts::PI;

    #[test]
    fn ball_is_vacuous() {
        let d = build_domain(Family::Ball { radius: 1.0 }, 3).unwrap();
        let c = crate::candidates::ball_candidate(&d).unwrap();
        let r = t_sign_for_candidate(&c, 3.0).unwrap();
        assert!(r.passed() && r.max_residual == 0.0);
    }

    #[test]
    fn torus_satisfies_height_conditions() {
        let torus = PiecewiseCurve::new(3, vec![GeneratrixPiece::arc([0.0, 10.0], 1.0, PI, -PI)]);
        let vol = 2.0 * PI * PI * 10.0;
        let fk = 3.0 * (unit_ball_volume(3) / vol).cbrt();
        let r = height_criterion_curve(&torus, fk).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert!(r.notes.iter().filter(|n| n.ends_with("holds")).count() == 2, "{:?}", r.notes);
    }

    #[test]
    fn polygonal_domains_are_not_applicable() {
        let d = build_domain(Family::Cylinder { l: 1.0, r: 1.0 }, 3).unwrap();
        assert_eq!(height_criterion(&d, 3.7).unwrap().status, Status::NotApplicable);
    }

    #[test]
    fn rolling_ball_examples() {
        let r = rolling_ball_check(1.0, PI / 6.0, 7.85898);
        assert_eq!(r.status, Status::Fail);
        assert!((r.max_residual - (0.254485 - 1.0 / 3.0)).abs() < 1e-5);
        let r = rolling_ball_check(1.0, PI / 4.0, 5.86018);
        assert!(r.max_residual.is_finite());
    }
}
