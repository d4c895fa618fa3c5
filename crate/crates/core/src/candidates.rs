//! Candidate Cheeger sets: regions bounded by pieces of the domain boundary
//! and by free arcs of constant mean curvature `H`.
//!
//! Every builder returns a generatrix traversed clockwise around the
//! generating region, so that the free pieces have positive mean curvature.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::delaunay::{graph_integrals, integrate_to_angle, x_of_y_tol, Branch, CurvePoint, DelaunayParams, KenmotsuParams};
use crate::domains::{DomainSpec, Family};
use crate::error::{Error, Result};
use crate::numerics::roots::scan_roots;
use crate::revolve::{unit_ball_volume, DelaunayArc, GeneratrixPiece, PiecewiseCurve, RevolveOptions};

/// Accuracy and search settings shared by all builders.
#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub revolve: RevolveOptions,
    /// Grid spacing of the scan over the Kenmotsu parameter `B`.
    pub b_step: f64,
    /// Scan spacing for the hourglass arcs, whose `B` range is wider.
    pub hourglass_b_step: f64,
    /// Upper bound on the number of scan points; the spacing grows beyond it.
    pub max_b_samples: usize,
    pub root_tol: f64,
    /// Samples per free piece in the containment test.
    pub containment_samples: usize,
    /// Allowed protrusion beyond the domain boundary.
    pub slack: f64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            revolve: RevolveOptions::default(),
            b_step: 1e-3,
            hourglass_b_step: 1e-2,
            max_b_samples: 20_000,
            root_tol: 1e-13,
            containment_samples: 48,
            slack: 1e-9,
        }
    }
}

impl BuildOptions {
    pub fn with_quad_tol(tol: f64) -> Self {
        let mut o = Self::default();
        o.revolve.quad_tol = tol;
        o
    }

    fn quad(&self) -> f64 {
        self.revolve.quad_tol.min(1e-11)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HourglassCase {
    /// Arc inscribed in the corner at the peak `(0, B)`.
    Inscribed,
    /// Arc through the reflex corners `(±C, D)`.
    ThroughCorners,
    /// Arc tangent to both outer slopes.
    Tangent,
    /// Two mirror-image components, each cut off by a circular arc.
    TwoComponents,
}

impl HourglassCase {
    pub const ALL: [Self; 4] = [Self::Inscribed, Self::ThroughCorners, Self::Tangent, Self::TwoComponents];

    pub fn roman(self) -> &'static str {
        match self {
            Self::Inscribed => "i",
            Self::ThroughCorners => "ii",
            Self::Tangent => "iii",
            Self::TwoComponents => "iv",
        }
    }
}

/// How the corner at `(±A, B)` is rounded off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OuterCorner {
    /// Nodoid arc reaching the face `x = ±A` with a vertical tangent.
    Nodoid,
    /// Spherical arc from the outer slope down to the axis.
    Arc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Structure {
    Ball,
    Cylinder,
    DoubleCone { root: usize },
    Cone { root: usize },
    Hourglass { case: HourglassCase, outer: OuterCorner, root: usize },
}

impl std::fmt::Display for Structure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Ball => write!(f, "ball"),
            Self::Cylinder => write!(f, "cylinder"),
            Self::DoubleCone { root } => write!(f, "double-cone#{root}"),
            Self::Cone { root } => write!(f, "cone#{root}"),
            Self::Hourglass { case, outer, root } => {
                let o = match outer {
                    OuterCorner::Nodoid => "nodoid",
                    OuterCorner::Arc => "arc",
                };
                write!(f, "hourglass-({})-{o}#{root}", case.roman())
            }
        }
    }
}

/// A Kenmotsu arc `s ∈ [s0, s1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KenmotsuGlue {
    #[serde(rename = "B")]
    pub b: f64,
    pub c: f64,
    pub s0: f64,
    pub s1: f64,
}

impl KenmotsuGlue {
    pub fn params(&self, h: f64) -> KenmotsuParams {
        KenmotsuParams { h, b: self.b, c: self.c }
    }

    pub fn mirrored(&self) -> Self {
        Self {
            b: self.b,
            c: -self.c,
            s0: -self.s1,
            s1: -self.s0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OuterGlue {
    Nodoid { nodoid: KenmotsuGlue, touch: [f64; 2] },
    Arc { center: f64, touch: [f64; 2] },
}

impl OuterGlue {
    fn touch(&self) -> [f64; 2] {
        match self {
            Self::Nodoid { touch, .. } | Self::Arc { touch, .. } => *touch,
        }
    }
}

/// Parameters that fix the free pieces of a candidate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Glue {
    Ball {
        radius: f64,
    },
    Cylinder {
        #[serde(rename = "T")]
        t: f64,
        /// Radius of the disk on each end face.
        y1: f64,
        /// Arc length of each nodoid piece.
        s2: f64,
        /// Axial extent of each nodoid piece from the ODE and from the
        /// graph quadrature.
        x2: f64,
        x2_graph: f64,
    },
    DoubleCone {
        nodoid: KenmotsuGlue,
        left_touch: [f64; 2],
        right_touch: [f64; 2],
    },
    Cone {
        nodoid: KenmotsuGlue,
        left_touch: [f64; 2],
    },
    Hourglass {
        middle: Option<KenmotsuGlue>,
        /// Where the inner circular arc of a two-component candidate meets
        /// the outer slope.
        inner_touch: Option<[f64; 2]>,
        outer: OuterGlue,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub name: String,
    pub value: f64,
}

fn term(name: &str, value: f64) -> Term {
    Term {
        name: name.to_string(),
        value,
    }
}

/// Area and volume split into the pieces a candidate is made of.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioBreakdown {
    pub area_terms: Vec<Term>,
    pub volume_terms: Vec<Term>,
    /// Number of congruent copies the listed terms make up.
    pub copies: f64,
    pub area: f64,
    pub volume: f64,
    pub ratio: f64,
}

impl RatioBreakdown {
    fn new(area_terms: Vec<Term>, volume_terms: Vec<Term>, copies: f64) -> Self {
        let area = copies * area_terms.iter().map(|t| t.value).sum::<f64>();
        let volume = copies * volume_terms.iter().map(|t| t.value).sum::<f64>();
        Self {
            area_terms,
            volume_terms,
            copies,
            area,
            volume,
            ratio: area / volume,
        }
    }

    pub fn area_term(&self, name: &str) -> Option<f64> {
        self.area_terms.iter().find(|t| t.name == name).map(|t| t.value)
    }

    pub fn volume_term(&self, name: &str) -> Option<f64> {
        self.volume_terms.iter().find(|t| t.name == name).map(|t| t.value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateSet {
    pub domain: DomainSpec,
    #[serde(rename = "H")]
    pub h: f64,
    pub structure: Structure,
    pub glue: Glue,
    /// Generatrix of one connected component.
    pub generatrix: PiecewiseCurve,
    /// Number of components (mirror images of the generatrix in `x = 0`).
    pub components: usize,
    pub breakdown: RatioBreakdown,
}

impl CandidateSet {
    pub fn ratio(&self) -> f64 {
        self.breakdown.ratio
    }

    /// Pieces not lying on the domain boundary.
    pub fn free_pieces(&self) -> impl Iterator<Item = &GeneratrixPiece> {
        self.generatrix
            .pieces
            .iter()
            .filter(|p| !matches!(p, GeneratrixPiece::Segment { .. }))
    }

    /// Middle Delaunay piece of an hourglass candidate.
    pub fn middle_params(&self) -> Option<DelaunayParams> {
        match (&self.glue, self.structure) {
            (Glue::Hourglass { middle: Some(m), .. }, _) => Some(m.params(self.h).delaunay()),
            _ => None,
        }
    }

    /// All components, the second one mirrored in `x = 0`.
    pub fn component_curves(&self, opts: &RevolveOptions) -> Result<Vec<PiecewiseCurve>> {
        let mut out = vec![self.generatrix.clone()];
        if self.components == 2 {
            out.push(mirror_curve(&self.generatrix, opts)?);
        }
        Ok(out)
    }

    /// Total area and volume from generic revolution of every piece,
    /// re-deriving each free piece from its defining parameters.
    pub fn recompute(&self, opts: &RevolveOptions) -> Result<(f64, f64, f64)> {
        let mut pieces = Vec::with_capacity(self.generatrix.pieces.len());
        for p in &self.generatrix.pieces {
            pieces.push(match p {
                GeneratrixPiece::Delaunay(DelaunayArc::Profile { params, start, span, .. }) => {
                    GeneratrixPiece::Delaunay(DelaunayArc::profile(*params, *start, *span, opts)?)
                }
                GeneratrixPiece::Delaunay(DelaunayArc::Kenmotsu { params, s0, s1, .. }) => {
                    GeneratrixPiece::Delaunay(DelaunayArc::kenmotsu(*params, *s0, *s1, opts)?)
                }
                other => other.clone(),
            });
        }
        let curve = PiecewiseCurve::new(self.generatrix.n, pieces);
        let (a, v) = crate::revolve::curve_area_volume_with(&curve, opts)?;
        let k = self.components as f64;
        Ok((k * a, k * v, a / v))
    }
}

/// Free-boundary area and volume, `P/V`, of a candidate.
pub fn candidate_ratio(c: &CandidateSet) -> (f64, RatioBreakdown) {
    (c.ratio(), c.breakdown.clone())
}

fn mirror_piece(p: &GeneratrixPiece, opts: &RevolveOptions) -> Result<GeneratrixPiece> {
    Ok(match p {
        GeneratrixPiece::Segment { from, to } => GeneratrixPiece::segment([-to[0], to[1]], [-from[0], from[1]]),
        GeneratrixPiece::Arc { center, radius, from, to } => {
            GeneratrixPiece::arc([-center[0], center[1]], *radius, PI - to, PI - from)
        }
        GeneratrixPiece::Delaunay(DelaunayArc::Kenmotsu { params, s0, s1, .. }) => {
            let k = KenmotsuParams {
                c: -params.c,
                ..*params
            };
            GeneratrixPiece::Delaunay(DelaunayArc::kenmotsu(k, -s1, -s0, opts)?)
        }
        GeneratrixPiece::Delaunay(DelaunayArc::Profile { .. }) => {
            return Err(Error::Unsupported("mirroring ODE profile pieces".into()))
        }
    })
}

/// Mirror image in `x = 0`, with orientation preserved.
pub fn mirror_curve(c: &PiecewiseCurve, opts: &RevolveOptions) -> Result<PiecewiseCurve> {
    let pieces = c.pieces.iter().rev().map(|p| mirror_piece(p, opts)).collect::<Result<_>>()?;
    Ok(PiecewiseCurve::new(c.n, pieces))
}

fn inadmissible(msg: impl Into<String>) -> Error {
    Error::Inadmissible(msg.into())
}

fn push_segment(pieces: &mut Vec<GeneratrixPiece>, from: [f64; 2], to: [f64; 2]) {
    if (to[0] - from[0]).hypot(to[1] - from[1]) > 1e-14 {
        pieces.push(GeneratrixPiece::segment(from, to));
    }
}

fn kenmotsu_piece(h: f64, g: &KenmotsuGlue, opts: &BuildOptions) -> Result<GeneratrixPiece> {
    Ok(GeneratrixPiece::Delaunay(DelaunayArc::kenmotsu(
        g.params(h),
        g.s0,
        g.s1,
        &opts.revolve,
    )?))
}

fn piece_terms(n: usize, p: &GeneratrixPiece, opts: &BuildOptions) -> Result<(f64, f64)> {
    let i = p.integrals(n, &opts.revolve)?;
    let w = unit_ball_volume(n - 1);
    Ok(((n - 1) as f64 * w * i.weighted_length, w * i.weighted_x))
}

/// Rejects curves that leave the domain or have loose or kinked joins.
/// Joins at `kinks` may have a corner.
fn validate(domain: &DomainSpec, curve: &PiecewiseCurve, kinks: &[[f64; 2]], opts: &BuildOptions) -> Result<()> {
    for (i, w) in curve.pieces.windows(2).enumerate() {
        let (a, b) = (w[0].end_point(), w[1].start_point());
        let gap = (a[0] - b[0]).hypot(a[1] - b[1]);
        if gap > 1e-8 {
            return Err(inadmissible(format!("pieces {i} and {} are {gap} apart", i + 1)));
        }
        let exempt = kinks.iter().any(|k| (k[0] - a[0]).hypot(k[1] - a[1]) < 1e-8);
        let (s0, s1) = (w[0].tangent_angle(true), w[1].tangent_angle(false));
        let d = (s0 - s1).rem_euclid(2.0 * PI);
        let jump = d.min(2.0 * PI - d);
        if !exempt && jump > 1e-8 {
            return Err(inadmissible(format!("tangent jumps by {jump} at ({}, {})", a[0], a[1])));
        }
    }
    for p in &curve.pieces {
        let count = match p {
            GeneratrixPiece::Segment { .. } => 4,
            _ => opts.containment_samples,
        };
        for q in p.sample(count, &opts.revolve)? {
            if q.y < -opts.slack || !domain.contains([q.x, q.y], opts.slack) {
                return Err(inadmissible(format!("point ({}, {}) lies outside the domain", q.x, q.y)));
            }
        }
    }
    Ok(())
}

fn check_h(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("mean curvature H = {h} must be positive")))
    }
}

fn require_n3(domain: &DomainSpec) -> Result<()> {
    if domain.n == 3 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "{} candidates are built for n = 3 only (got n = {})",
            domain.family.name(),
            domain.n
        )))
    }
}

// ---------------------------------------------------------------- ball

/// The ball itself (its own Cheeger set).
pub fn ball_candidate(domain: &DomainSpec) -> Result<CandidateSet> {
    let Family::Ball { radius } = domain.family else {
        return Err(Error::Domain("not a ball".into()));
    };
    let n = domain.n;
    let area = n as f64 * unit_ball_volume(n) * radius.powi(n as i32 - 1);
    let volume = unit_ball_volume(n) * radius.powi(n as i32);
    Ok(CandidateSet {
        domain: domain.clone(),
        h: (n - 1) as f64 / radius,
        structure: Structure::Ball,
        glue: Glue::Ball { radius },
        generatrix: domain.generatrix.clone(),
        components: 1,
        breakdown: RatioBreakdown::new(vec![term("S", area)], vec![term("V", volume)], 1.0),
    })
}

// ------------------------------------------------------------ cylinder

/// Radius of the end-face disk, `y₁ = (r^{n−1} − r^{n−2}/H)^{1/(n−1)}`.
pub fn cylinder_disk_radius(n: usize, r: f64, h: f64) -> Result<f64> {
    let k = (n - 1) as f64;
    let v = r.powf(k) - r.powf(k - 1.0) / h;
    if v > 0.0 {
        Ok(v.powf(1.0 / k))
    } else {
        Err(inadmissible(format!("H = {h} ≤ 1/r = {}: no nodoid glue", 1.0 / r)))
    }
}

/// Axial extent `x(s₂)` of the nodoid arc of the cylinder candidate.
pub fn cylinder_arc_extent(n: usize, r: f64, h: f64, opts: &BuildOptions) -> Result<f64> {
    let y1 = cylinder_disk_radius(n, r, h)?;
    let t = r.powi(n as i32 - 2) - h * r.powi(n as i32 - 1);
    let p = DelaunayParams::new(n, h, t)?;
    x_of_y_tol(&p, y1, 0.0, Branch::Right, r, opts.quad())
}

pub fn cylinder_candidate(n: usize, l: f64, r: f64, h: f64) -> Result<CandidateSet> {
    let domain = crate::domains::build_domain(Family::Cylinder { l, r }, n)?;
    cylinder_candidate_in(&domain, h, &BuildOptions::default())
}

pub fn cylinder_candidate_in(domain: &DomainSpec, h: f64, opts: &BuildOptions) -> Result<CandidateSet> {
    let Family::Cylinder { l, r } = domain.family else {
        return Err(Error::Domain("not a cylinder".into()));
    };
    check_h(h)?;
    let n = domain.n;
    let y1 = cylinder_disk_radius(n, r, h)?;
    let t = r.powi(n as i32 - 2) - h * r.powi(n as i32 - 1);
    let p = DelaunayParams::new(n, h, t)?;
    let ctl = opts.revolve.step;

    let start = CurvePoint::new(0.0, 0.0, y1, FRAC_PI_2);
    let top = integrate_to_angle(&p, &start, 0.0, 2.0 * (l + r), &ctl)?;
    let (s2, x2) = (top.s, top.x);
    if (top.y - r).abs() > 1e-8 {
        return Err(Error::StepFailure(format!("nodoid arc ends at y = {}, expected {r}", top.y)));
    }
    let x2_graph = x_of_y_tol(&p, y1, 0.0, Branch::Right, r, opts.quad())?;
    if x2 > 0.5 * l + 1e-12 {
        return Err(inadmissible(format!("nodoid arcs need x(s₂) = {x2} ≤ l/2 = {}", 0.5 * l)));
    }

    let left = DelaunayArc::profile(p, start, s2, &opts.revolve)?;
    let right_start = CurvePoint::new(0.0, l - x2, r, 0.0);
    let right = DelaunayArc::profile(p, right_start, s2, &opts.revolve)?;
    let right_end = right.end();

    let mut pieces = Vec::new();
    push_segment(&mut pieces, [0.0, 0.0], [0.0, y1]);
    pieces.push(GeneratrixPiece::Delaunay(left));
    push_segment(&mut pieces, [x2, r], [l - x2, r]);
    pieces.push(GeneratrixPiece::Delaunay(right));
    push_segment(&mut pieces, [l, right_end.y], [l, 0.0]);
    let curve = PiecewiseCurve::new(n, pieces);
    validate(domain, &curve, &[], opts)?;

    // Left half: end disk, nodoid zone, flat band.
    let w = unit_ball_volume(n - 1);
    let k = (n - 1) as f64;
    let g = graph_integrals(&p, y1, r, opts.quad())?;
    let half = 0.5 * l - x2;
    let area = vec![
        term("S0", w * y1.powf(k)),
        term("S1", k * w * g.weighted_length),
        term("S2", k * w * r.powf(k - 1.0) * half),
    ];
    let volume = vec![term("V1", w * g.weighted_x), term("V2", w * r.powf(k) * half)];

    Ok(CandidateSet {
        domain: domain.clone(),
        h,
        structure: Structure::Cylinder,
        glue: Glue::Cylinder {
            t,
            y1,
            s2,
            x2,
            x2_graph,
        },
        generatrix: curve,
        components: 1,
        breakdown: RatioBreakdown::new(area, volume, 2.0),
    })
}

/// Evaluation of the ball-capped alternative for the cylinder: the curve
/// made of two quarter circles of radius `r` and a flat band would need
/// `(n−1)/r` to equal its own area-to-volume ratio.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereInfeasibility {
    pub n: usize,
    pub l: f64,
    pub r: f64,
    /// `(n−1)/r`.
    pub lhs: f64,
    /// Area-to-volume ratio of the capped candidate.
    pub rhs: f64,
    pub gap: f64,
    /// Smallest gap over radii `ρ ∈ (0, l/2]` sampled on a grid.
    pub min_gap_over_radii: f64,
    pub samples: usize,
    pub equality_possible: bool,
}

fn capped_gap(n: usize, l: f64, r: f64) -> (f64, f64) {
    let (wn, wk) = (unit_ball_volume(n), unit_ball_volume(n - 1));
    let nf = n as f64;
    let band = l - 2.0 * r;
    let num = nf * wn * r.powf(nf - 1.0) + (nf - 1.0) * wk * r.powf(nf - 2.0) * band;
    let den = wn * r.powf(nf) + wk * r.powf(nf - 1.0) * band;
    ((nf - 1.0) / r, num / den)
}

pub fn cylinder_sphere_infeasibility(n: usize, l: f64, r: f64) -> Result<SphereInfeasibility> {
    if n < 3 || !(l > 0.0 && r > 0.0) {
        return Err(Error::Domain(format!("invalid cylinder (n = {n}, l = {l}, r = {r})")));
    }
    let (lhs, rhs) = capped_gap(n, l, r);
    let samples = 1024;
    let min_gap = (1..=samples)
        .map(|i| {
            let rho = 0.5 * l * i as f64 / samples as f64;
            let (a, b) = capped_gap(n, l, rho);
            (b - a).abs()
        })
        .fold(f64::INFINITY, f64::min);
    Ok(SphereInfeasibility {
        n,
        l,
        r,
        lhs,
        rhs,
        gap: rhs - lhs,
        min_gap_over_radii: min_gap,
        samples,
        equality_possible: min_gap == 0.0 || (rhs - lhs) == 0.0,
    })
}

// ---------------------------------------------------- nodoid corners (n = 3)

/// Kenmotsu parameter range `(lo, hi)` scanned on a grid of spacing
/// `b_step` (capped in count), returning the refined roots of `f`.
fn b_roots<F: FnMut(f64) -> Option<f64>>(f: F, lo: f64, hi: f64, opts: &BuildOptions) -> Vec<f64> {
    b_roots_step(f, lo, hi, opts.b_step, opts)
}

fn b_roots_step<F: FnMut(f64) -> Option<f64>>(mut f: F, lo: f64, hi: f64, step: f64, opts: &BuildOptions) -> Vec<f64> {
    if !(hi > lo) {
        return Vec::new();
    }
    let samples = (((hi - lo) / step).ceil() as usize + 1).clamp(16, opts.max_b_samples);
    let mut roots = scan_roots(&mut f, lo, hi, samples, opts.root_tol);
    // Discard spurious sign changes across jumps.
    roots.retain(|&b| f(b).is_some_and(|v| v.abs() < 1e-7));
    roots
}

/// A nodoid arc rounding the corner between the rising line
/// `y = m (x − x0)` and the vertical face `x = face`: tangent to the line
/// at `s0 < 0`, vertical at the face at `s1 > 0`.
#[derive(Debug, Clone, Copy)]
struct SlantFace {
    m: f64,
    x0: f64,
    face: f64,
}

impl SlantFace {
    fn corner_height(&self) -> f64 {
        self.m * (self.face - self.x0)
    }

    fn glue(&self, h: f64, b: f64, tol: f64) -> Option<KenmotsuGlue> {
        let k = KenmotsuParams { h, b, c: 0.0 };
        let s0 = k.parameter_for_slope(self.m)?;
        let s1 = (-1.0 / b).acos() / (2.0 * h);
        let c = self.face - k.x_offset(s1, tol).ok()?;
        Some(KenmotsuGlue { b, c, s0, s1 })
    }

    fn residual(&self, h: f64, b: f64, tol: f64) -> Option<f64> {
        let g = self.glue(h, b, tol)?;
        let k = g.params(h);
        let x = k.x(g.s0, tol).ok()?;
        Some(k.y(g.s0) - self.m * (x - self.x0))
    }

    fn solve(&self, h: f64, step: f64, opts: &BuildOptions) -> Vec<KenmotsuGlue> {
        let tol = opts.quad();
        let hi = 2.0 * h * self.corner_height() - 1.0;
        b_roots_step(|b| self.residual(h, b, tol), 1.0 + 1e-9, hi, step, opts)
            .into_iter()
            .filter_map(|b| self.glue(h, b, tol))
            .collect()
    }
}

/// Circle of radius `R` centred on the axis and tangent from below to the
/// rising line `y = m (x − x0)`: centre abscissa and touch point.
fn tangent_circle_rising(m: f64, x0: f64, radius: f64) -> (f64, [f64; 2]) {
    let a = m.atan();
    let xc = x0 + radius / a.sin();
    (xc, [xc - radius * a.sin(), radius * a.cos()])
}

/// Same for the falling line `y = m (x0 − x)`.
fn tangent_circle_falling(m: f64, x0: f64, radius: f64) -> (f64, [f64; 2]) {
    let a = m.atan();
    let xc = x0 - radius / a.sin();
    (xc, [xc + radius * a.sin(), radius * a.cos()])
}

fn spherical_cap(radius: f64, sin_a: f64) -> (f64, f64) {
    let r2 = radius * radius;
    (
        2.0 * PI * r2 * (1.0 - sin_a),
        PI * r2 * radius / 3.0 * (2.0 - 3.0 * sin_a + sin_a.powi(3)),
    )
}

// --------------------------------------------------------- double cone

struct DoubleConeGeometry {
    l: f64,
    r: f64,
    theta: f64,
    phi: f64,
}

impl DoubleConeGeometry {
    fn glue(&self, h: f64, b: f64, tol: f64) -> Option<(KenmotsuGlue, f64)> {
        let (m1, m2) = (self.theta.tan(), self.phi.tan());
        let k = KenmotsuParams { h, b, c: 0.0 };
        let s1 = k.parameter_for_slope(m1)?;
        let s2 = k.parameter_for_slope(-m2)?;
        if !(s1 < 0.0 && s2 > 0.0) {
            return None;
        }
        let x1 = k.x_offset(s1, tol).ok()?;
        let x2 = k.x_offset(s2, tol).ok()?;
        let c = -self.l + k.y(s1) / m1 - x1;
        let res = k.y(s2) - m2 * (self.r - c - x2);
        Some((KenmotsuGlue { b, c, s0: s1, s1: s2 }, res))
    }
}

/// Every admissible double-cone candidate at mean curvature `H`, ordered by
/// the Kenmotsu parameter `B`.
pub fn double_cone_candidates(domain: &DomainSpec, h: f64, opts: &BuildOptions) -> Result<Vec<CandidateSet>> {
    let Family::DoubleCone { l, r, theta } = domain.family else {
        return Err(Error::Domain("not a double cone".into()));
    };
    require_n3(domain)?;
    check_h(h)?;
    let g = DoubleConeGeometry {
        l,
        r,
        theta,
        phi: domain.right_angle().expect("double cone"),
    };
    let tol = opts.quad();
    let apex = l * theta.tan();
    let roots = b_roots(|b| g.glue(h, b, tol).map(|v| v.1), 1.0 + 1e-9, 2.0 * h * apex - 1.0, opts);
    let mut out = Vec::new();
    for (i, b) in roots.into_iter().enumerate() {
        if let Some((nod, _)) = g.glue(h, b, tol) {
            if let Ok(c) = assemble_double_cone(domain, &g, h, nod, i, opts) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

pub fn double_cone_candidate(l: f64, r: f64, theta: f64, h: f64, root_index: usize) -> Result<CandidateSet> {
    let domain = crate::domains::build_domain(Family::DoubleCone { l, r, theta }, 3)?;
    let all = double_cone_candidates(&domain, h, &BuildOptions::default())?;
    let count = all.len();
    all.into_iter()
        .nth(root_index)
        .ok_or_else(|| Error::NoRoot(format!("{count} admissible double-cone candidate(s) at H = {h}")))
}

fn assemble_double_cone(
    domain: &DomainSpec,
    g: &DoubleConeGeometry,
    h: f64,
    nod: KenmotsuGlue,
    root: usize,
    opts: &BuildOptions,
) -> Result<CandidateSet> {
    let radius = 1.0 / h;
    let (m1, m2) = (g.theta.tan(), g.phi.tan());
    let (xl, t1) = tangent_circle_rising(m1, -g.l, radius);
    let (xr, t2) = tangent_circle_falling(m2, g.r, radius);
    let nodoid = kenmotsu_piece(h, &nod, opts)?;
    let (p1, p2) = (nodoid.start_point(), nodoid.end_point());
    if p1[0] < t1[0] - 1e-12 || p2[0] > t2[0] + 1e-12 {
        return Err(inadmissible("the nodoid overlaps a corner arc"));
    }
    let arc_l = GeneratrixPiece::arc([xl, 0.0], radius, PI, FRAC_PI_2 + g.theta);
    let arc_r = GeneratrixPiece::arc([xr, 0.0], radius, FRAC_PI_2 - g.phi, 0.0);
    let mut pieces = vec![arc_l.clone()];
    push_segment(&mut pieces, t1, p1);
    pieces.push(nodoid.clone());
    push_segment(&mut pieces, p2, t2);
    pieces.push(arc_r.clone());
    let curve = PiecewiseCurve::new(3, pieces);
    validate(domain, &curve, &[], opts)?;

    let (s1, v1) = spherical_cap(radius, g.theta.sin());
    let (s2, v2) = spherical_cap(radius, g.phi.sin());
    let (s3, v3) = piece_terms(3, &nodoid, opts)?;
    let (l, r, tt) = (g.l, g.r, g.theta.tan());
    let s4 = PI * tt / g.theta.cos() * ((l + p1[0]).powi(2) - (l + t1[0]).powi(2));
    let v4 = PI * tt * tt / 3.0 * ((l + p1[0]).powi(3) - (l + t1[0]).powi(3));
    let s5 = l * PI * tt / (r * r) * (r * r + l * l * tt * tt).sqrt() * ((r - p2[0]).powi(2) - (r - t2[0]).powi(2));
    let v5 = PI * l * l * tt * tt / (3.0 * r * r) * ((r - p2[0]).powi(3) - (r - t2[0]).powi(3));
    let area = vec![term("S1", s1), term("S2", s2), term("S3", s3), term("S4", s4), term("S5", s5)];
    let volume = vec![term("V1", v1), term("V2", v2), term("V3", v3), term("V4", v4), term("V5", v5)];

    Ok(CandidateSet {
        domain: domain.clone(),
        h,
        structure: Structure::DoubleCone { root },
        glue: Glue::DoubleCone {
            nodoid: nod,
            left_touch: t1,
            right_touch: t2,
        },
        generatrix: curve,
        components: 1,
        breakdown: RatioBreakdown::new(area, volume, 1.0),
    })
}

// ---------------------------------------------------------------- cone

pub fn cone_candidates(domain: &DomainSpec, h: f64, opts: &BuildOptions) -> Result<Vec<CandidateSet>> {
    let Family::Cone { l, theta } = domain.family else {
        return Err(Error::Domain("not a cone".into()));
    };
    require_n3(domain)?;
    check_h(h)?;
    let radius = 1.0 / h;
    if radius > crate::domains::inscribed_ball_radius(domain) + 1e-12 {
        return Err(inadmissible(format!("arc radius {radius} exceeds the cone's inradius")));
    }
    let corner = SlantFace {
        m: theta.tan(),
        x0: -l,
        face: 0.0,
    };
    let mut out = Vec::new();
    for (i, nod) in corner.solve(h, opts.b_step, opts).into_iter().enumerate() {
        if let Ok(c) = assemble_cone(domain, l, theta, h, nod, i, opts) {
            out.push(c);
        }
    }
    Ok(out)
}

pub fn cone_candidate(l: f64, theta: f64, h: f64) -> Result<CandidateSet> {
    let domain = crate::domains::build_domain(Family::Cone { l, theta }, 3)?;
    let all = cone_candidates(&domain, h, &BuildOptions::default())?;
    all.into_iter()
        .min_by(|a, b| a.ratio().total_cmp(&b.ratio()))
        .ok_or_else(|| inadmissible(format!("no admissible cone candidate at H = {h}")))
}

fn assemble_cone(
    domain: &DomainSpec,
    l: f64,
    theta: f64,
    h: f64,
    nod: KenmotsuGlue,
    root: usize,
    opts: &BuildOptions,
) -> Result<CandidateSet> {
    let radius = 1.0 / h;
    let (xl, t1) = tangent_circle_rising(theta.tan(), -l, radius);
    let nodoid = kenmotsu_piece(h, &nod, opts)?;
    let (p1, p2) = (nodoid.start_point(), nodoid.end_point());
    if p1[0] < t1[0] - 1e-12 {
        return Err(inadmissible("the nodoid overlaps the corner arc"));
    }
    let arc = GeneratrixPiece::arc([xl, 0.0], radius, PI, FRAC_PI_2 + theta);
    let mut pieces = vec![arc];
    push_segment(&mut pieces, t1, p1);
    pieces.push(nodoid.clone());
    push_segment(&mut pieces, [0.0, p2[1]], [0.0, 0.0]);
    let curve = PiecewiseCurve::new(3, pieces);
    validate(domain, &curve, &[], opts)?;

    let (s1, v1) = spherical_cap(radius, theta.sin());
    let (s3, v3) = piece_terms(3, &nodoid, opts)?;
    let tt = theta.tan();
    let s4 = PI * tt / theta.cos() * ((l + p1[0]).powi(2) - (l + t1[0]).powi(2));
    let v4 = PI * tt * tt / 3.0 * ((l + p1[0]).powi(3) - (l + t1[0]).powi(3));
    let area = vec![term("S0", PI * p2[1] * p2[1]), term("S1", s1), term("S3", s3), term("S4", s4)];
    let volume = vec![term("V1", v1), term("V3", v3), term("V4", v4)];
    Ok(CandidateSet {
        domain: domain.clone(),
        h,
        structure: Structure::Cone { root },
        glue: Glue::Cone {
            nodoid: nod,
            left_touch: t1,
        },
        generatrix: curve,
        components: 1,
        breakdown: RatioBreakdown::new(area, volume, 1.0),
    })
}

// ----------------------------------------------------------- hourglass

#[derive(Debug, Clone, Copy)]
struct Hourglass {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Hourglass {
    /// Slope of the inner segment on the right half (negative).
    fn m_in(&self) -> f64 {
        -(self.b - self.d) / self.c
    }

    /// Slope of the outer segment (positive).
    fn m_out(&self) -> f64 {
        (self.b - self.d) / (self.a - self.c)
    }

    /// Axis intercept of the outer segment's line.
    fn x0_out(&self) -> f64 {
        self.c - self.d / self.m_out()
    }

    fn outer_corner(&self) -> SlantFace {
        SlantFace {
            m: self.m_out(),
            x0: self.x0_out(),
            face: self.a,
        }
    }
}

/// A middle arc symmetric about `x = 0` (Kenmotsu with `c = 0`), given by
/// its right end parameter, and the abscissa where the candidate leaves
/// the inner part of the boundary.
#[derive(Debug, Clone, Copy)]
struct Middle {
    glue: KenmotsuGlue,
    /// Right end of the arc.
    end: [f64; 2],
}

fn middle_through_corners(g: &Hourglass, h: f64, b: f64, tol: f64) -> Option<(f64, f64)> {
    let k = KenmotsuParams { h, b, c: 0.0 };
    let s_max = if b > 1.0 {
        (-1.0 / b).acos() / (2.0 * h)
    } else {
        PI / (2.0 * h)
    };
    let x_max = k.x_offset(s_max, tol).ok()?;
    if x_max < g.c {
        return None;
    }
    // Safeguarded Newton on x(s) = C; x is increasing on [0, s_max].
    let (mut lo, mut hi) = (0.0, s_max);
    let (mut s, mut x) = (0.0, 0.0);
    for _ in 0..60 {
        let dx = k.tangent(s).0;
        let mut next = if dx > 1e-3 { s + (g.c - x) / dx } else { f64::NAN };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let xn = x + k.x_increment(s, next, tol).ok()?;
        if xn > g.c {
            hi = next;
        } else {
            lo = next;
        }
        let done = (next - s).abs() < 1e-14 * (1.0 + s.abs()) || hi - lo < 1e-14;
        s = next;
        x = xn;
        if done || (x - g.c).abs() < 1e-15 {
            break;
        }
    }
    Some((s, k.y(s) - g.d))
}

fn middle_candidates(g: &Hourglass, case: HourglassCase, h: f64, opts: &BuildOptions) -> Vec<Middle> {
    let tol = opts.quad();
    let step = opts.hourglass_b_step;
    let b_top = 2.0 * h * g.b - 1.0;
    let make = |b: f64, s: f64| {
        let k = KenmotsuParams { h, b, c: 0.0 };
        let x = k.x_offset(s, tol).ok()?;
        Some(Middle {
            glue: KenmotsuGlue { b, c: 0.0, s0: -s, s1: s },
            end: [x, k.y(s)],
        })
    };
    match case {
        HourglassCase::ThroughCorners => {
            let roots = b_roots_step(|b| middle_through_corners(g, h, b, tol).map(|v| v.1), -1.0 + 1e-9, b_top, step, opts);
            roots
                .into_iter()
                .filter_map(|b| {
                    let (s, _) = middle_through_corners(g, h, b, tol)?;
                    make(b, s)
                })
                .collect()
        }
        HourglassCase::Inscribed => {
            let m = g.m_in();
            let res = |b: f64| {
                let k = KenmotsuParams { h, b, c: 0.0 };
                let s = k.parameter_for_slope(m)?;
                let x = k.x_offset(s, tol).ok()?;
                (s > 0.0 && x <= g.c).then(|| k.y(s) - (g.b + m * x))
            };
            b_roots_step(res, 1e-6, b_top, step, opts)
                .into_iter()
                .filter_map(|b| {
                    let s = KenmotsuParams { h, b, c: 0.0 }.parameter_for_slope(m)?;
                    make(b, s)
                })
                .collect()
        }
        HourglassCase::Tangent => {
            let m = g.m_out();
            let res = |b: f64| {
                let k = KenmotsuParams { h, b, c: 0.0 };
                let s = k.parameter_for_slope(m)?;
                let x = k.x_offset(s, tol).ok()?;
                (s > 0.0 && x >= g.c).then(|| k.y(s) - (g.d + m * (x - g.c)))
            };
            b_roots_step(res, -1.0 + 1e-9, -1e-6, step, opts)
                .into_iter()
                .filter_map(|b| {
                    let s = KenmotsuParams { h, b, c: 0.0 }.parameter_for_slope(m)?;
                    make(b, s)
                })
                .collect()
        }
        HourglassCase::TwoComponents => Vec::new(),
    }
}

fn outer_options(g: &Hourglass, h: f64, opts: &BuildOptions) -> Vec<(OuterCorner, usize, OuterGlue)> {
    let mut out = Vec::new();
    for (i, nod) in g.outer_corner().solve(h, opts.hourglass_b_step, opts).into_iter().enumerate() {
        let k = nod.params(h);
        let Ok(x) = k.x(nod.s0, opts.quad()) else {
            continue;
        };
        out.push((
            OuterCorner::Nodoid,
            i,
            OuterGlue::Nodoid {
                nodoid: nod,
                touch: [x, k.y(nod.s0)],
            },
        ));
    }
    let (xc, touch) = tangent_circle_rising(g.m_out(), g.x0_out(), 1.0 / h);
    if xc + 1.0 / h <= g.a + 1e-12 {
        out.push((OuterCorner::Arc, 0, OuterGlue::Arc { center: xc, touch }));
    }
    out
}

/// Every admissible hourglass candidate at mean curvature `H`.
pub fn hourglass_candidates(domain: &DomainSpec, h: f64, opts: &BuildOptions) -> Result<Vec<CandidateSet>> {
    hourglass_candidates_for(domain, h, &HourglassCase::ALL, opts)
}

pub fn hourglass_candidates_for(
    domain: &DomainSpec,
    h: f64,
    cases: &[HourglassCase],
    opts: &BuildOptions,
) -> Result<Vec<CandidateSet>> {
    let Family::Hourglass { a, b, c, d } = domain.family else {
        return Err(Error::Domain("not an hourglass".into()));
    };
    require_n3(domain)?;
    check_h(h)?;
    let g = Hourglass { a, b, c, d };
    let outers = outer_options(&g, h, opts);
    let mut out = Vec::new();
    for &case in cases {
        if case == HourglassCase::TwoComponents {
            for (kind, idx, outer) in &outers {
                if *kind == OuterCorner::Arc {
                    continue;
                }
                if let Ok(cand) = assemble_two_components(domain, &g, h, *outer, *idx, opts) {
                    out.push(cand);
                }
            }
            continue;
        }
        for (mi, mid) in middle_candidates(&g, case, h, opts).into_iter().enumerate() {
            for (kind, idx, outer) in &outers {
                let root = mi * 4 + idx;
                if let Ok(cand) = assemble_hourglass(domain, &g, h, case, mid, *kind, *outer, root, opts) {
                    out.push(cand);
                }
            }
        }
    }
    Ok(out)
}

/// Right-half pieces from the end of the inner part to the axis.
fn outer_pieces(g: &Hourglass, h: f64, from: [f64; 2], outer: &OuterGlue, opts: &BuildOptions) -> Result<Vec<GeneratrixPiece>> {
    let touch = outer.touch();
    if touch[0] < from[0] - 1e-12 {
        return Err(inadmissible("outer corner piece starts before the inner part ends"));
    }
    let mut pieces = Vec::new();
    match outer {
        OuterGlue::Nodoid { nodoid, .. } => {
            let p = kenmotsu_piece(h, nodoid, opts)?;
            push_segment(&mut pieces, from, p.start_point());
            let top = p.end_point();
            pieces.push(p);
            push_segment(&mut pieces, [g.a, top[1]], [g.a, 0.0]);
        }
        OuterGlue::Arc { center, touch } => {
            push_segment(&mut pieces, from, *touch);
            pieces.push(GeneratrixPiece::arc([*center, 0.0], 1.0 / h, FRAC_PI_2 + g.m_out().atan(), 0.0));
        }
    }
    Ok(pieces)
}

#[allow(clippy::too_many_arguments)]
fn assemble_hourglass(
    domain: &DomainSpec,
    g: &Hourglass,
    h: f64,
    case: HourglassCase,
    mid: Middle,
    kind: OuterCorner,
    outer: OuterGlue,
    root: usize,
    opts: &BuildOptions,
) -> Result<CandidateSet> {
    let corner = [g.c, g.d];
    let mut right = Vec::new();
    let half_mid = kenmotsu_piece(
        h,
        &KenmotsuGlue {
            s0: 0.0,
            ..mid.glue
        },
        opts,
    )?;
    let from = match case {
        HourglassCase::Inscribed => {
            push_segment(&mut right, mid.end, corner);
            corner
        }
        _ => mid.end,
    };
    right.extend(outer_pieces(g, h, from, &outer, opts)?);

    let mut pieces = Vec::new();
    let left = right.iter().rev().map(|p| mirror_piece(p, &opts.revolve)).collect::<Result<Vec<_>>>()?;
    pieces.extend(left);
    pieces.push(kenmotsu_piece(h, &mid.glue, opts)?);
    pieces.extend(right.iter().cloned());
    let curve = PiecewiseCurve::new(3, pieces);
    let kinks = [corner, [-g.c, g.d]];
    validate(domain, &curve, &kinks, opts)?;

    let mut area = Vec::new();
    let mut volume = Vec::new();
    let (s, v) = piece_terms(3, &half_mid, opts)?;
    area.push(term("S_middle", s));
    volume.push(term("V_middle", v));
    for (i, p) in right.iter().enumerate() {
        let (s, v) = piece_terms(3, p, opts)?;
        area.push(term(&format!("S_{i}"), s));
        volume.push(term(&format!("V_{i}"), v));
    }
    Ok(CandidateSet {
        domain: domain.clone(),
        h,
        structure: Structure::Hourglass { case, outer: kind, root },
        glue: Glue::Hourglass {
            middle: Some(mid.glue),
            inner_touch: None,
            outer,
        },
        generatrix: curve,
        components: 1,
        breakdown: RatioBreakdown::new(area, volume, 2.0),
    })
}

fn assemble_two_components(
    domain: &DomainSpec,
    g: &Hourglass,
    h: f64,
    outer: OuterGlue,
    root: usize,
    opts: &BuildOptions,
) -> Result<CandidateSet> {
    let radius = 1.0 / h;
    let (xc, touch) = tangent_circle_rising(g.m_out(), g.x0_out(), radius);
    if xc - radius < -1e-12 {
        return Err(inadmissible("the two components overlap"));
    }
    if touch[0] < g.c - 1e-12 {
        return Err(inadmissible("inner arc touches the line beyond the outer segment"));
    }
    let mut pieces = vec![GeneratrixPiece::arc([xc, 0.0], radius, PI, FRAC_PI_2 + g.m_out().atan())];
    pieces.extend(outer_pieces(g, h, touch, &outer, opts)?);
    let curve = PiecewiseCurve::new(3, pieces);
    validate(domain, &curve, &[], opts)?;
    let mut area = Vec::new();
    let mut volume = Vec::new();
    for (i, p) in curve.pieces.iter().enumerate() {
        let (s, v) = piece_terms(3, p, opts)?;
        area.push(term(&format!("S_{i}"), s));
        volume.push(term(&format!("V_{i}"), v));
    }
    Ok(CandidateSet {
        domain: domain.clone(),
        h,
        structure: Structure::Hourglass {
            case: HourglassCase::TwoComponents,
            outer: OuterCorner::Nodoid,
            root,
        },
        glue: Glue::Hourglass {
            middle: None,
            inner_touch: Some(touch),
            outer,
        },
        generatrix: curve,
        components: 2,
        breakdown: RatioBreakdown::new(area, volume, 2.0),
    })
}

/// Every admissible candidate of any supported family at mean curvature `H`.
pub fn candidates_at(domain: &DomainSpec, h: f64, opts: &BuildOptions) -> Result<Vec<CandidateSet>> {
    match domain.family {
        Family::Ball { .. } => Ok(vec![ball_candidate(domain)?]),
        Family::Cylinder { .. } => Ok(cylinder_candidate_in(domain, h, opts).into_iter().collect()),
        Family::DoubleCone { .. } => double_cone_candidates(domain, h, opts),
        Family::Cone { .. } => cone_candidates(domain, h, opts),
        Family::Hourglass { .. } => hourglass_candidates(domain, h, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::first_integral_residual;
    use crate::domains::build_domain;
    use crate::revolve::curve_area_volume;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn cylinder_glue_closed_form() {
        let c = cylinder_candidate(3, 3.0, 1.0, 2.0).unwrap();
        let Glue::Cylinder { t, y1, x2, x2_graph, .. } = c.glue else {
            panic!()
        };
        assert!((y1 - 0.5f64.sqrt()).abs() < 1e-14);
        assert!((t + 1.0).abs() < 1e-14);
        assert!((t + 2.0 * y1 * y1).abs() < 1e-14);
        assert!((x2 - x2_graph).abs() < 1e-9, "{x2} vs {x2_graph}");
        for p in c.free_pieces() {
            let d = p.delaunay_arc().unwrap();
            let params = d.params();
            assert!(first_integral_residual(&params, &d.start()).abs() < 1e-12);
            assert!(first_integral_residual(&params, &d.end()).abs() < 1e-9);
        }
    }

    #[test]
    fn cylinder_rejects_small_curvature() {
        assert!(matches!(cylinder_candidate(3, 3.0, 1.0, 1.0), Err(Error::Inadmissible(_))));
    }

    #[test]
    fn cylinder_table_point_is_a_fixed_point() {
        let c = cylinder_candidate(3, 3.0, 1.0, 1.25659).unwrap();
        assert!((c.ratio() - 2.51318).abs() < 1e-4, "{}", c.ratio());
        let (a, v) = curve_area_volume(&c.generatrix).unwrap();
        assert!(rel(a / v, c.ratio()) < 1e-9);
        assert!(rel(a, c.breakdown.area) < 1e-9 && rel(v, c.breakdown.volume) < 1e-9);
    }

    #[test]
    fn sphere_alternative_never_balances() {
        let rep = cylinder_sphere_infeasibility(3, 3.0, 1.0).unwrap();
        assert!(rep.gap > 0.0 && !rep.equality_possible);
        let rep = cylinder_sphere_infeasibility(3, 2.0, 1.0).unwrap();
        assert!((rep.gap - 1.0).abs() < 1e-12);
        let rep = cylinder_sphere_infeasibility(5, 4.0, 1.0).unwrap();
        assert!(rep.gap > 0.0 && rep.min_gap_over_radii > 0.0);
    }

    #[test]
    fn double_cone_breakdown_matches_revolution() {
        let c = double_cone_candidate(1.0, 3.0, PI / 3.0, 1.11, 0).unwrap();
        let (a, v) = curve_area_volume(&c.generatrix).unwrap();
        assert!(rel(a, c.breakdown.area) < 1e-9, "{a} vs {}", c.breakdown.area);
        assert!(rel(v, c.breakdown.volume) < 1e-9, "{v} vs {}", c.breakdown.volume);
    }

    #[test]
    fn symmetric_double_cone_has_centred_crest() {
        let c = double_cone_candidate(1.0, 1.0, PI / 4.0, 2.0, 0).unwrap();
        let Glue::DoubleCone { nodoid, .. } = c.glue else { panic!() };
        assert!(nodoid.c.abs() < 1e-8, "c = {}", nodoid.c);
        assert!((nodoid.s0 + nodoid.s1).abs() < 1e-12);
    }

    #[test]
    fn cone_rejects_large_arcs() {
        assert!(matches!(cone_candidate(1.0, PI / 4.0, 0.1), Err(Error::Inadmissible(_))));
    }

    #[test]
    fn cone_candidate_is_consistent() {
        let c = cone_candidate(1.0, PI / 6.0, 3.93).unwrap();
        let (a, v) = curve_area_volume(&c.generatrix).unwrap();
        assert!(rel(a, c.breakdown.area) < 1e-9 && rel(v, c.breakdown.volume) < 1e-9);
        let end = c.generatrix.pieces[c.generatrix.pieces.len() - 2].end_point();
        assert!(end[0].abs() < 1e-10);
    }

    #[test]
    fn hourglass_has_candidates() {
        let d = build_domain(Family::Hourglass { a: 3.0, b: 2.0, c: 0.3, d: 0.6 }, 3).unwrap();
        let cs = hourglass_candidates(&d, 1.0666, &BuildOptions::default()).unwrap();
        assert!(!cs.is_empty());
        for c in &cs {
            let (a, v, _) = c.recompute(&RevolveOptions::default()).unwrap();
            assert!(rel(a, c.breakdown.area) < 1e-9, "{}: {a} vs {}", c.structure, c.breakdown.area);
            assert!(rel(v, c.breakdown.volume) < 1e-9);
        }
    }

    #[test]
    fn ball_ratio() {
        let d = build_domain(Family::Ball { radius: 1.0 }, 3).unwrap();
        assert!((ball_candidate(&d).unwrap().ratio() - 3.0).abs() < 1e-14);
    }
}
