//! Areas and volumes of hypersurfaces of revolution generated by piecewise
//! planar curves in the closed upper half-plane, rotated about the x-axis.
//!
//! Every piece reduces to two line integrals along its traversal:
//! `P_w = ∫ y^{n−2} ds` and `I = ∫ y^{n−1} dx`. The lateral area is
//! `(n−1) ω_{n−1} P_w` and the signed volume between the piece and the axis
//! is `ω_{n−1} I`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::delaunay::{self, CurvePoint, DelaunayParams, KenmotsuParams};
use crate::error::{Error, Result};
use crate::numerics::ode::StepControl;
use crate::numerics::quad::integrate;

/// Gap allowed between consecutive pieces.
pub const JOIN_TOL: f64 = 1e-9;

/// `ω_k`, the volume of the unit ball in ℝᵏ.
pub fn unit_ball_volume(k: usize) -> f64 {
    // ω_k = 2π/k · ω_{k−2}
    let (mut w, start) = if k % 2 == 0 { (1.0, 2) } else { (2.0, 3) };
    let mut j = start;
    while j <= k {
        w *= 2.0 * PI / j as f64;
        j += 2;
    }
    w
}

/// Accuracy settings for the quadrature- and ODE-backed pieces.
#[derive(Debug, Clone, Copy)]
pub struct RevolveOptions {
    pub quad_tol: f64,
    pub step: StepControl,
}

impl Default for RevolveOptions {
    fn default() -> Self {
        Self {
            quad_tol: 1e-10,
            step: StepControl::default(),
        }
    }
}

/// The two line integrals of a piece.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PieceIntegrals {
    /// `∫ y^{n−2} ds`
    pub weighted_length: f64,
    /// `∫ y^{n−1} dx`, signed by the traversal direction.
    pub weighted_x: f64,
}

/// A Delaunay arc of mean curvature `H`, traversed in the direction that
/// makes `H` positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum DelaunayArc {
    /// Solution of the generating-curve ODE from `start` over `span`.
    Profile {
        params: DelaunayParams,
        start: CurvePoint,
        span: f64,
        end: CurvePoint,
        integrals: PieceIntegrals,
    },
    /// Kenmotsu parametrization (n = 3) for `s ∈ [s0, s1]`.
    Kenmotsu {
        params: KenmotsuParams,
        s0: f64,
        s1: f64,
        start: CurvePoint,
        end: CurvePoint,
        integrals: PieceIntegrals,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratrixPiece {
    Segment {
        from: [f64; 2],
        to: [f64; 2],
    },
    /// Points `center + radius·(cos φ, sin φ)` for φ running from `from`
    /// to `to`.
    Arc {
        center: [f64; 2],
        radius: f64,
        from: f64,
        to: f64,
    },
    Delaunay(DelaunayArc),
}

fn pow_sum(a: f64, b: f64, m: usize) -> f64 {
    // Σ_{j=0}^{m} a^j b^{m−j}
    let mut acc = 0.0;
    let mut aj = 1.0;
    for j in 0..=m {
        acc += aj * b.powi((m - j) as i32);
        aj *= a;
    }
    acc
}

fn segment_integrals(n: usize, a: [f64; 2], b: [f64; 2]) -> PieceIntegrals {
    let len = (b[0] - a[0]).hypot(b[1] - a[1]);
    // y is linear along the segment, so both integrals are divided
    // differences of powers.
    PieceIntegrals {
        weighted_length: len * pow_sum(a[1], b[1], n - 2) / (n - 1) as f64,
        weighted_x: (b[0] - a[0]) * pow_sum(a[1], b[1], n - 1) / n as f64,
    }
}

fn arc_integrals(n: usize, center: [f64; 2], r: f64, from: f64, to: f64, tol: f64) -> Result<PieceIntegrals> {
    let upper = |phi: f64| (0.0..=PI).contains(&phi);
    if center[1] == 0.0 && n == 3 && upper(from) && upper(to) {
        let (c0, c1) = (from.cos(), to.cos());
        let anti = |c: f64| -c + c * c * c / 3.0;
        return Ok(PieceIntegrals {
            weighted_length: r * r * (c0 - c1).abs(),
            weighted_x: -r * r * r * (anti(c1) - anti(c0)),
        });
    }
    let k = (n - 2) as i32;
    let y = |phi: f64| (center[1] + r * phi.sin()).max(0.0);
    Ok(PieceIntegrals {
        weighted_length: integrate(|phi| y(phi).powi(k) * r, from.min(to), from.max(to), tol)?,
        weighted_x: integrate(|phi| y(phi).powi(k + 1) * (-r * phi.sin()), from, to, tol)?,
    })
}

fn kenmotsu_integrals(k: &KenmotsuParams, s0: f64, s1: f64, tol: f64) -> Result<PieceIntegrals> {
    k.check_regular(s0, s1)?;
    let (h, b) = (k.h, k.b);
    let q = move |t: f64| 1.0 + b * b + 2.0 * b * (2.0 * h * t).cos();
    Ok(PieceIntegrals {
        weighted_length: integrate(|t| q(t).sqrt() / (2.0 * h), s0, s1, tol)?,
        weighted_x: integrate(
            |t| (1.0 + b * (2.0 * h * t).cos()) * q(t).sqrt() / (4.0 * h * h),
            s0,
            s1,
            tol,
        )?,
    })
}

impl DelaunayArc {
    /// Integrates the profile ODE once and caches the end point and
    /// integrals.
    pub fn profile(params: DelaunayParams, start: CurvePoint, span: f64, opts: &RevolveOptions) -> Result<Self> {
        if !(span >= 0.0) {
            return Err(Error::Domain(format!("negative span {span}")));
        }
        let r = delaunay::profile_integrals(&params, &start, span, &opts.step)?;
        Ok(Self::Profile {
            params,
            start,
            span,
            end: r.end,
            integrals: PieceIntegrals {
                weighted_length: r.weighted_length,
                weighted_x: r.weighted_x,
            },
        })
    }

    pub fn kenmotsu(params: KenmotsuParams, s0: f64, s1: f64, opts: &RevolveOptions) -> Result<Self> {
        if !(s1 >= s0) {
            return Err(Error::Domain(format!("empty parameter range [{s0}, {s1}]")));
        }
        let integrals = kenmotsu_integrals(&params, s0, s1, opts.quad_tol)?;
        let start = params.curve_point(s0, opts.quad_tol)?;
        let end = params.curve_point(s1, opts.quad_tol)?;
        Ok(Self::Kenmotsu {
            params,
            s0,
            s1,
            start,
            end,
            integrals,
        })
    }

    pub fn params(&self) -> DelaunayParams {
        match self {
            Self::Profile { params, .. } => *params,
            Self::Kenmotsu { params, .. } => params.delaunay(),
        }
    }

    pub fn mean_curvature(&self) -> f64 {
        self.params().h
    }

    pub fn dimension(&self) -> usize {
        self.params().n
    }

    pub fn start(&self) -> CurvePoint {
        match self {
            Self::Profile { start, .. } | Self::Kenmotsu { start, .. } => *start,
        }
    }

    pub fn end(&self) -> CurvePoint {
        match self {
            Self::Profile { end, .. } | Self::Kenmotsu { end, .. } => *end,
        }
    }

    pub fn integrals(&self) -> PieceIntegrals {
        match self {
            Self::Profile { integrals, .. } | Self::Kenmotsu { integrals, .. } => *integrals,
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            Self::Profile { span, .. } => *span,
            Self::Kenmotsu { s0, s1, .. } => s1 - s0,
        }
    }

    /// `count + 1` points equally spaced in arclength.
    pub fn sample(&self, count: usize, opts: &RevolveOptions) -> Result<Vec<CurvePoint>> {
        let count = count.max(1);
        match self {
            Self::Profile { params, start, span, .. } => {
                let mut out = vec![*start];
                let ds = span / count as f64;
                let mut cur = *start;
                let ctl = StepControl {
                    h_max: opts.step.h_max.min(ds.max(1e-6)),
                    ..opts.step
                };
                for i in 1..=count {
                    let target = start.s + ds * i as f64;
                    let r = delaunay::profile_integrals(params, &cur, target - cur.s, &ctl)?;
                    cur = r.end;
                    out.push(cur);
                }
                Ok(out)
            }
            Self::Kenmotsu { params, s0, s1, .. } => {
                let ds = (s1 - s0) / count as f64;
                let mut x = params.x(*s0, opts.quad_tol)?;
                let mut out = Vec::with_capacity(count + 1);
                out.push(CurvePoint::new(*s0, x, params.y(*s0), params.sigma(*s0)));
                for i in 1..=count {
                    let a = s0 + ds * (i - 1) as f64;
                    let b = s0 + ds * i as f64;
                    x += params.x_increment(a, b, opts.quad_tol)?;
                    out.push(CurvePoint::new(b, x, params.y(b), params.sigma(b)));
                }
                Ok(out)
            }
        }
    }

    fn split(&self, frac: f64, opts: &RevolveOptions) -> Result<(Self, Self)> {
        match self {
            Self::Profile { params, start, span, .. } => {
                let first = Self::profile(*params, *start, span * frac, opts)?;
                let mid = first.end();
                let second = Self::profile(*params, mid, span * (1.0 - frac), opts)?;
                Ok((first, second))
            }
            Self::Kenmotsu { params, s0, s1, .. } => {
                let m = s0 + (s1 - s0) * frac;
                Ok((Self::kenmotsu(*params, *s0, m, opts)?, Self::kenmotsu(*params, m, *s1, opts)?))
            }
        }
    }

    fn scaled(&self, lambda: f64, opts: &RevolveOptions) -> Result<Self> {
        let sc = |p: &CurvePoint| CurvePoint::new(p.s * lambda, p.x * lambda, p.y * lambda, p.sigma);
        match self {
            Self::Profile { params, start, span, .. } => {
                let p = DelaunayParams {
                    n: params.n,
                    h: params.h / lambda,
                    t: params.t * lambda.powi((params.n - 2) as i32),
                };
                Self::profile(p, sc(start), span * lambda, opts)
            }
            Self::Kenmotsu { params, s0, s1, .. } => {
                let k = KenmotsuParams::new(params.h / lambda, params.b, params.c * lambda)?;
                Self::kenmotsu(k, s0 * lambda, s1 * lambda, opts)
            }
        }
    }
}

impl GeneratrixPiece {
    pub fn segment(from: [f64; 2], to: [f64; 2]) -> Self {
        Self::Segment { from, to }
    }

    pub fn arc(center: [f64; 2], radius: f64, from: f64, to: f64) -> Self {
        Self::Arc { center, radius, from, to }
    }

    pub fn start_point(&self) -> [f64; 2] {
        match self {
            Self::Segment { from, .. } => *from,
            Self::Arc { center, radius, from, .. } => [center[0] + radius * from.cos(), center[1] + radius * from.sin()],
            Self::Delaunay(d) => {
                let p = d.start();
                [p.x, p.y]
            }
        }
    }

    pub fn end_point(&self) -> [f64; 2] {
        match self {
            Self::Segment { to, .. } => *to,
            Self::Arc { center, radius, to, .. } => [center[0] + radius * to.cos(), center[1] + radius * to.sin()],
            Self::Delaunay(d) => {
                let p = d.end();
                [p.x, p.y]
            }
        }
    }

    /// Tangent angle of the traversal at the start (`at_end = false`) or
    /// end of the piece. Degenerate segments report `NaN`.
    pub fn tangent_angle(&self, at_end: bool) -> f64 {
        match self {
            Self::Segment { from, to } => {
                if from == to {
                    f64::NAN
                } else {
                    (to[1] - from[1]).atan2(to[0] - from[0])
                }
            }
            Self::Arc { from, to, .. } => {
                let phi = if at_end { *to } else { *from };
                let dir = (to - from).signum();
                (dir * phi.cos()).atan2(-dir * phi.sin())
            }
            Self::Delaunay(d) => {
                if at_end {
                    d.end().sigma
                } else {
                    d.start().sigma
                }
            }
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            Self::Segment { from, to } => (to[0] - from[0]).hypot(to[1] - from[1]),
            Self::Arc { radius, from, to, .. } => radius * (to - from).abs(),
            Self::Delaunay(d) => d.length(),
        }
    }

    /// Both line integrals for dimension `n`. Delaunay pieces carry their
    /// own dimension and reject any other.
    pub fn integrals(&self, n: usize, opts: &RevolveOptions) -> Result<PieceIntegrals> {
        if n < 2 {
            return Err(Error::Domain(format!("dimension n = {n} < 2")));
        }
        match self {
            Self::Segment { from, to } => Ok(segment_integrals(n, *from, *to)),
            Self::Arc { center, radius, from, to } => arc_integrals(n, *center, *radius, *from, *to, opts.quad_tol),
            Self::Delaunay(d) => {
                if d.dimension() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: d.dimension(),
                    });
                }
                Ok(d.integrals())
            }
        }
    }

    /// `count + 1` points equally spaced along the piece.
    pub fn sample(&self, count: usize, opts: &RevolveOptions) -> Result<Vec<CurvePoint>> {
        let count = count.max(1);
        match self {
            Self::Segment { from, to } => {
                let len = self.length();
                let sigma = self.tangent_angle(false);
                Ok((0..=count)
                    .map(|i| {
                        let t = i as f64 / count as f64;
                        CurvePoint::new(
                            t * len,
                            from[0] + t * (to[0] - from[0]),
                            from[1] + t * (to[1] - from[1]),
                            sigma,
                        )
                    })
                    .collect())
            }
            Self::Arc { center, radius, from, to } => {
                let dir = (to - from).signum();
                Ok((0..=count)
                    .map(|i| {
                        let phi = from + (to - from) * i as f64 / count as f64;
                        CurvePoint::new(
                            radius * (phi - from).abs(),
                            center[0] + radius * phi.cos(),
                            center[1] + radius * phi.sin(),
                            (dir * phi.cos()).atan2(-dir * phi.sin()),
                        )
                    })
                    .collect())
            }
            Self::Delaunay(d) => d.sample(count, opts),
        }
    }

    /// Splits at a fraction of the piece's parameter range.
    pub fn split(&self, frac: f64, opts: &RevolveOptions) -> Result<(Self, Self)> {
        if !(0.0..=1.0).contains(&frac) {
            return Err(Error::Domain(format!("split fraction {frac} outside [0, 1]")));
        }
        match self {
            Self::Segment { from, to } => {
                let m = [from[0] + frac * (to[0] - from[0]), from[1] + frac * (to[1] - from[1])];
                Ok((Self::segment(*from, m), Self::segment(m, *to)))
            }
            Self::Arc { center, radius, from, to } => {
                let m = from + frac * (to - from);
                Ok((Self::arc(*center, *radius, *from, m), Self::arc(*center, *radius, m, *to)))
            }
            Self::Delaunay(d) => {
                let (a, b) = d.split(frac, opts)?;
                Ok((Self::Delaunay(a), Self::Delaunay(b)))
            }
        }
    }

    /// The piece scaled by `lambda > 0` about the origin.
    pub fn scaled(&self, lambda: f64, opts: &RevolveOptions) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::Domain(format!("scale factor {lambda} must be positive")));
        }
        let sc = |p: [f64; 2]| [p[0] * lambda, p[1] * lambda];
        Ok(match self {
            Self::Segment { from, to } => Self::segment(sc(*from), sc(*to)),
            Self::Arc { center, radius, from, to } => Self::arc(sc(*center), radius * lambda, *from, *to),
            Self::Delaunay(d) => Self::Delaunay(d.scaled(lambda, opts)?),
        })
    }

    pub fn delaunay_arc(&self) -> Option<&DelaunayArc> {
        match self {
            Self::Delaunay(d) => Some(d),
            _ => None,
        }
    }
}

/// Lateral `(n−1)`-area of the surface generated by `piece`.
pub fn piece_area(n: usize, piece: &GeneratrixPiece) -> Result<f64> {
    let i = piece.integrals(n, &RevolveOptions::default())?;
    Ok((n - 1) as f64 * unit_ball_volume(n - 1) * i.weighted_length)
}

/// Signed volume swept between the piece and the axis, positive when the
/// piece is traversed towards increasing `x`.
pub fn piece_volume(n: usize, piece: &GeneratrixPiece) -> Result<f64> {
    let i = piece.integrals(n, &RevolveOptions::default())?;
    Ok(unit_ball_volume(n - 1) * i.weighted_x)
}

/// An ordered chain of pieces in dimension `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseCurve {
    pub n: usize,
    pub pieces: Vec<GeneratrixPiece>,
}

/// Worst C⁰ gap and worst tangent-angle jump over interior junctions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JunctionReport {
    pub max_gap: f64,
    pub max_angle_jump: f64,
    /// Index of the junction with the worst angle jump (between pieces
    /// `worst` and `worst + 1`).
    pub worst: usize,
}

fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

impl PiecewiseCurve {
    pub fn new(n: usize, pieces: Vec<GeneratrixPiece>) -> Self {
        Self { n, pieces }
    }

    pub fn start_point(&self) -> Option<[f64; 2]> {
        self.pieces.first().map(|p| p.start_point())
    }

    pub fn end_point(&self) -> Option<[f64; 2]> {
        self.pieces.last().map(|p| p.end_point())
    }

    pub fn junctions(&self) -> JunctionReport {
        let mut rep = JunctionReport {
            max_gap: 0.0,
            max_angle_jump: 0.0,
            worst: 0,
        };
        for (i, w) in self.pieces.windows(2).enumerate() {
            let (a, b) = (w[0].end_point(), w[1].start_point());
            rep.max_gap = rep.max_gap.max((a[0] - b[0]).hypot(a[1] - b[1]));
            let jump = angle_diff(w[0].tangent_angle(true), w[1].tangent_angle(false));
            if jump > rep.max_angle_jump {
                rep.max_angle_jump = jump;
                rep.worst = i;
            }
        }
        rep
    }

    /// Checks that the chain is connected and either closed or has both
    /// ends on the axis.
    pub fn check_bounds_region(&self) -> Result<()> {
        let (Some(a), Some(b)) = (self.start_point(), self.end_point()) else {
            return Err(Error::OpenCurve("empty curve".into()));
        };
        let gap = self.junctions().max_gap;
        if gap > JOIN_TOL {
            return Err(Error::OpenCurve(format!("consecutive pieces are {gap} apart")));
        }
        let closed = (a[0] - b[0]).hypot(a[1] - b[1]) <= JOIN_TOL;
        let on_axis = a[1].abs() <= JOIN_TOL && b[1].abs() <= JOIN_TOL;
        if closed || on_axis {
            Ok(())
        } else {
            Err(Error::OpenCurve(format!(
                "ends ({}, {}) and ({}, {}) neither meet nor lie on the axis",
                a[0], a[1], b[0], b[1]
            )))
        }
    }

    /// Sums of the piece integrals.
    pub fn integrals(&self, opts: &RevolveOptions) -> Result<PieceIntegrals> {
        let mut acc = PieceIntegrals::default();
        for p in &self.pieces {
            let i = p.integrals(self.n, opts)?;
            acc.weighted_length += i.weighted_length;
            acc.weighted_x += i.weighted_x;
        }
        Ok(acc)
    }

    pub fn scaled(&self, lambda: f64, opts: &RevolveOptions) -> Result<Self> {
        Ok(Self {
            n: self.n,
            pieces: self.pieces.iter().map(|p| p.scaled(lambda, opts)).collect::<Result<_>>()?,
        })
    }

    /// Mirror image in the line `x = x0`, traversed in the reverse order so
    /// that orientation is preserved.
    pub fn mirrored_segments(&self, x0: f64) -> Option<Self> {
        let mut out = Vec::with_capacity(self.pieces.len());
        for p in self.pieces.iter().rev() {
            match p {
                GeneratrixPiece::Segment { from, to } => out.push(GeneratrixPiece::segment(
                    [2.0 * x0 - to[0], to[1]],
                    [2.0 * x0 - from[0], from[1]],
                )),
                _ => return None,
            }
        }
        Some(Self::new(self.n, out))
    }

    pub fn sample(&self, per_piece: usize, opts: &RevolveOptions) -> Result<Vec<CurvePoint>> {
        let mut out = Vec::new();
        for p in &self.pieces {
            out.extend(p.sample(per_piece, opts)?);
        }
        Ok(out)
    }
}

/// Total area `P` and enclosed volume `V` of a curve that bounds a region.
pub fn curve_area_volume(curve: &PiecewiseCurve) -> Result<(f64, f64)> {
    curve_area_volume_with(curve, &RevolveOptions::default())
}

pub fn curve_area_volume_with(curve: &PiecewiseCurve, opts: &RevolveOptions) -> Result<(f64, f64)> {
    curve.check_bounds_region()?;
    let i = curve.integrals(opts)?;
    let w = unit_ball_volume(curve.n - 1);
    let v = (w * i.weighted_x).abs();
    if !(v > 0.0) {
        return Err(Error::OpenCurve("curve encloses no volume".into()));
    }
    Ok(((curve.n - 1) as f64 * w * i.weighted_length, v))
}

/// Weighted perimeter `∫ y^{n−2} ds` and weighted area `∫∫ y^{n−2} dx dy`
/// of the planar region bounded by the curve.
pub fn weighted_functionals(curve: &PiecewiseCurve) -> Result<(f64, f64)> {
    curve.check_bounds_region()?;
    let i = curve.integrals(&RevolveOptions::default())?;
    Ok((i.weighted_length, (i.weighted_x / (curve.n - 1) as f64).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_circle() -> GeneratrixPiece {
        GeneratrixPiece::arc([0.0, 0.0], 1.0, PI, 0.0)
    }

    fn closed_cylinder(l: f64, r: f64) -> PiecewiseCurve {
        PiecewiseCurve::new(
            3,
            vec![
                GeneratrixPiece::segment([0.0, 0.0], [0.0, r]),
                GeneratrixPiece::segment([0.0, r], [l, r]),
                GeneratrixPiece::segment([l, r], [l, 0.0]),
            ],
        )
    }

    #[test]
    fn unit_ball_volumes() {
        assert_eq!(unit_ball_volume(1), 2.0);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-15);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
        assert_eq!(unit_ball_volume(0), 1.0);
    }

    #[test]
    fn piece_area_examples() {
        let seg = GeneratrixPiece::segment([0.0, 1.0], [1.0, 1.0]);
        assert!((piece_area(3, &seg).unwrap() - 2.0 * PI).abs() < 1e-14);
        assert!((piece_area(3, &half_circle()).unwrap() - 4.0 * PI).abs() < 1e-14);
        let k = KenmotsuParams::new(1.0, 0.0, 0.0).unwrap();
        let d = GeneratrixPiece::Delaunay(DelaunayArc::kenmotsu(k, 0.0, 1.0, &RevolveOptions::default()).unwrap());
        assert!((piece_area(3, &d).unwrap() - PI).abs() < 1e-10);
    }

    #[test]
    fn piece_volume_examples() {
        let seg = GeneratrixPiece::segment([0.0, 1.0], [2.0, 1.0]);
        assert!((piece_volume(3, &seg).unwrap() - 2.0 * PI).abs() < 1e-14);
        assert!((piece_volume(3, &half_circle()).unwrap() - 4.0 * PI / 3.0).abs() < 1e-14);
        let k = KenmotsuParams::new(1.0, 0.0, 0.0).unwrap();
        let d = GeneratrixPiece::Delaunay(DelaunayArc::kenmotsu(k, 0.0, 4.0, &RevolveOptions::default()).unwrap());
        assert!((piece_volume(3, &d).unwrap() - PI).abs() < 1e-10);
    }

    #[test]
    fn closed_forms_match_quadrature_for_arcs() {
        // Off-axis centre forces the quadrature path; shifting a cap centre
        // by 0 must agree with the closed form.
        let closed = arc_integrals(3, [0.3, 0.0], 0.7, 2.0, 0.4, 1e-12).unwrap();
        let quad = arc_integrals(3, [0.3, 1e-300], 0.7, 2.0, 0.4, 1e-12).unwrap();
        assert!((closed.weighted_length - quad.weighted_length).abs() < 1e-12);
        assert!((closed.weighted_x - quad.weighted_x).abs() < 1e-12);
    }

    #[test]
    fn cap_formulas() {
        // Cap of a sphere of radius R cut at height R cos θ, as in the
        // corner arcs of cones.
        let (r, th) = (0.8, 0.6f64);
        let cap = GeneratrixPiece::arc([0.0, 0.0], r, PI, PI / 2.0 + th);
        let a = piece_area(3, &cap).unwrap();
        assert!((a - 2.0 * PI * r * r * (1.0 - th.sin())).abs() < 1e-13);
        // Volume between the arc and the axis.
        let expected = PI * r.powi(3) / 3.0 * (2.0 - 3.0 * th.sin() + th.sin().powi(3));
        assert!((piece_volume(3, &cap).unwrap() - expected).abs() < 1e-13);
        // The arc ends where it touches the line through the cone apex.
        let touch = cap.end_point();
        assert!((touch[1] - r * th.cos()).abs() < 1e-15);
        assert!((touch[1] / (touch[0] + r / th.sin()) - th.tan()).abs() < 1e-12);
    }

    #[test]
    fn curve_examples() {
        let ball = PiecewiseCurve::new(3, vec![half_circle()]);
        let (p, v) = curve_area_volume(&ball).unwrap();
        assert!((p - 4.0 * PI).abs() < 1e-13 && (v - 4.0 * PI / 3.0).abs() < 1e-13);
        assert!((p / v - 3.0).abs() < 1e-13);
        let (p, v) = curve_area_volume(&closed_cylinder(1.0, 1.0)).unwrap();
        assert!((p - 4.0 * PI).abs() < 1e-13 && (v - PI).abs() < 1e-13);
    }

    #[test]
    fn open_curves_are_rejected() {
        let c = PiecewiseCurve::new(3, vec![GeneratrixPiece::segment([0.0, 1.0], [1.0, 1.0])]);
        assert!(matches!(curve_area_volume(&c), Err(Error::OpenCurve(_))));
        let gap = PiecewiseCurve::new(
            3,
            vec![
                GeneratrixPiece::segment([0.0, 0.0], [0.0, 1.0]),
                GeneratrixPiece::segment([0.1, 1.0], [1.0, 0.0]),
            ],
        );
        assert!(matches!(curve_area_volume(&gap), Err(Error::OpenCurve(_))));
    }

    #[test]
    fn weighted_examples() {
        let square = PiecewiseCurve::new(
            3,
            vec![
                GeneratrixPiece::segment([0.0, 0.0], [0.0, 1.0]),
                GeneratrixPiece::segment([0.0, 1.0], [1.0, 1.0]),
                GeneratrixPiece::segment([1.0, 1.0], [1.0, 0.0]),
            ],
        );
        let (_, vw) = weighted_functionals(&square).unwrap();
        assert!((vw - 0.5).abs() < 1e-15);
        let (pw, _) = weighted_functionals(&PiecewiseCurve::new(3, vec![half_circle()])).unwrap();
        assert!((pw - 2.0).abs() < 1e-14);
        let (p, v) = curve_area_volume(&square).unwrap();
        let (pw, vw) = weighted_functionals(&square).unwrap();
        assert!((p / v - pw / vw).abs() < 1e-12);
    }

    #[test]
    fn profile_piece_matches_kenmotsu_sphere() {
        let opts = RevolveOptions::default();
        let sphere = DelaunayParams::new(3, 1.0, 0.0).unwrap();
        let start = CurvePoint::new(0.0, 0.0, 1.0, 0.0);
        let ode = DelaunayArc::profile(sphere, start, 1.0, &opts).unwrap();
        let ken = DelaunayArc::kenmotsu(KenmotsuParams::new(1.0, 1.0, 0.0).unwrap(), 0.0, 1.0, &opts).unwrap();
        let (a, b) = (ode.integrals(), ken.integrals());
        assert!((a.weighted_length - b.weighted_length).abs() < 1e-9);
        assert!((a.weighted_x - b.weighted_x).abs() < 1e-9);
        assert!((ode.end().x - ken.end().x).abs() < 1e-9);
        assert!((ode.end().y - ken.end().y).abs() < 1e-9);
        assert!((ode.end().sigma - ken.end().sigma).abs() < 1e-9);
    }

    #[test]
    fn delaunay_dimension_is_enforced() {
        let p = DelaunayParams::new(4, 1.0, 0.0).unwrap();
        let d = DelaunayArc::profile(p, CurvePoint::new(0.0, 0.0, 1.0, 0.0), 0.5, &RevolveOptions::default()).unwrap();
        let piece = GeneratrixPiece::Delaunay(d);
        assert!(matches!(piece_area(3, &piece), Err(Error::DimensionMismatch { .. })));
        assert!(piece_area(4, &piece).is_ok());
    }

    #[test]
    fn tangent_angles_of_arcs() {
        let a = half_circle();
        assert!((a.tangent_angle(false) - PI / 2.0).abs() < 1e-15);
        assert!((a.tangent_angle(true) + PI / 2.0).abs() < 1e-15);
        let s = a.sample(4, &RevolveOptions::default()).unwrap();
        assert!(s[2].sigma.abs() < 1e-15);
    }
}
