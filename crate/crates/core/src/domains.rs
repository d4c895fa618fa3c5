//! Rotationally invariant domains generated by polygonal (or circular)
//! curves in the upper half-plane.
//!
//! Conventions: the cylinder `Z_{l,r}` spans `x ∈ [0, l]`; the cone and
//! double cone have their apex above `x = 0` with the left base vertex at
//! `(−l, 0)`; the hourglass is symmetric about `x = 0` with faces at
//! `x = ±A`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::revolve::{curve_area_volume, unit_ball_volume, GeneratrixPiece, PiecewiseCurve};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "parameters", rename_all = "kebab-case")]
pub enum Family {
    Cylinder {
        l: f64,
        r: f64,
    },
    Cone {
        l: f64,
        theta: f64,
    },
    DoubleCone {
        l: f64,
        r: f64,
        theta: f64,
    },
    Hourglass {
        #[serde(rename = "A")]
        a: f64,
        #[serde(rename = "B")]
        b: f64,
        #[serde(rename = "C")]
        c: f64,
        #[serde(rename = "D")]
        d: f64,
    },
    Ball {
        radius: f64,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Cylinder { .. } => "cylinder",
            Self::Cone { .. } => "cone",
            Self::DoubleCone { .. } => "double-cone",
            Self::Hourglass { .. } => "hourglass",
            Self::Ball { .. } => "ball",
        }
    }

    pub fn is_convex(&self) -> bool {
        !matches!(self, Self::Hourglass { .. })
    }

    fn validate(&self) -> Result<()> {
        let pos = |v: f64| v > 0.0 && v.is_finite();
        let angle = |t: f64| t > 0.0 && t < PI / 2.0;
        let ok = match *self {
            Self::Cylinder { l, r } => pos(l) && pos(r),
            Self::Cone { l, theta } => pos(l) && angle(theta),
            Self::DoubleCone { l, r, theta } => pos(l) && pos(r) && angle(theta),
            Self::Hourglass { a, b, c, d } => pos(c) && pos(d) && a > c && b > d && a.is_finite() && b.is_finite(),
            Self::Ball { radius } => pos(radius),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("invalid {} parameters: {self:?}", self.name())))
        }
    }

    /// Polygon vertices of the generatrix from the left axis point to the
    /// right one. `None` for the ball.
    pub fn vertices(&self) -> Option<Vec<[f64; 2]>> {
        Some(match *self {
            Self::Cylinder { l, r } => vec![[0.0, 0.0], [0.0, r], [l, r], [l, 0.0]],
            Self::Cone { l, theta } => vec![[-l, 0.0], [0.0, l * theta.tan()], [0.0, 0.0]],
            Self::DoubleCone { l, r, theta } => vec![[-l, 0.0], [0.0, l * theta.tan()], [r, 0.0]],
            Self::Hourglass { a, b, c, d } => vec![
                [-a, 0.0],
                [-a, b],
                [-c, d],
                [0.0, b],
                [c, d],
                [a, b],
                [a, 0.0],
            ],
            Self::Ball { .. } => return None,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DomainDoc {
    #[serde(flatten)]
    family: Family,
    n: usize,
}

/// A domain family member in dimension `n` together with its generatrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DomainDoc", into = "DomainDoc")]
pub struct DomainSpec {
    pub family: Family,
    pub n: usize,
    pub generatrix: PiecewiseCurve,
}

impl TryFrom<DomainDoc> for DomainSpec {
    type Error = Error;
    fn try_from(d: DomainDoc) -> Result<Self> {
        build_domain(d.family, d.n)
    }
}

impl From<DomainSpec> for DomainDoc {
    fn from(s: DomainSpec) -> Self {
        Self {
            family: s.family,
            n: s.n,
        }
    }
}

pub fn build_domain(family: Family, n: usize) -> Result<DomainSpec> {
    if n < 3 {
        return Err(Error::Domain(format!("dimension n = {n} < 3")));
    }
    family.validate()?;
    let pieces = match family {
        Family::Ball { radius } => vec![GeneratrixPiece::arc([0.0, 0.0], radius, PI, 0.0)],
        _ => {
            let v = family.vertices().expect("polygonal family");
            v.windows(2).map(|w| GeneratrixPiece::segment(w[0], w[1])).collect()
        }
    };
    Ok(DomainSpec {
        family,
        n,
        generatrix: PiecewiseCurve::new(n, pieces),
    })
}

impl DomainSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Domain(e.to_string()))
    }

    /// Right base angle `φ = arctan((l/r) tan θ)` of a double cone.
    pub fn right_angle(&self) -> Option<f64> {
        match self.family {
            Family::DoubleCone { l, r, theta } => Some((l / r * theta.tan()).atan()),
            _ => None,
        }
    }

    /// Extent `[x_min, x_max]` of the domain along the axis.
    pub fn x_range(&self) -> (f64, f64) {
        match self.family {
            Family::Cylinder { l, .. } => (0.0, l),
            Family::Cone { l, .. } => (-l, 0.0),
            Family::DoubleCone { l, r, .. } => (-l, r),
            Family::Hourglass { a, .. } => (-a, a),
            Family::Ball { radius } => (-radius, radius),
        }
    }

    /// Height of the generatrix above abscissa `x` (0 outside the range).
    pub fn height_at(&self, x: f64) -> f64 {
        let (lo, hi) = self.x_range();
        if x < lo || x > hi {
            return 0.0;
        }
        match self.family {
            Family::Ball { radius } => (radius * radius - x * x).max(0.0).sqrt(),
            Family::Cylinder { r, .. } => r,
            Family::Cone { l, theta } => (l + x) * theta.tan(),
            Family::DoubleCone { l, r, theta } => {
                if x <= 0.0 {
                    (l + x) * theta.tan()
                } else {
                    l / r * (r - x) * theta.tan()
                }
            }
            Family::Hourglass { a, b, c, d } => {
                let ax = x.abs();
                if ax <= c {
                    b - (b - d) / c * ax
                } else {
                    (b - d) / (a - c) * (ax - c) + d
                }
            }
        }
    }

    /// The non-axis sides of the generatrix polygon.
    pub fn sides(&self) -> Vec<([f64; 2], [f64; 2])> {
        match self.family.vertices() {
            Some(v) => v
                .windows(2)
                .map(|w| (w[0], w[1]))
                .filter(|(a, b)| !(a[1] == 0.0 && b[1] == 0.0))
                .collect(),
            None => Vec::new(),
        }
    }

    /// Distance from `p` to the boundary of the doubled planar region,
    /// positive inside and negative outside.
    pub fn signed_distance(&self, p: [f64; 2]) -> f64 {
        let q = [p[0], p[1].abs()];
        let (dist, inside) = match self.family {
            Family::Ball { radius } => {
                let d = radius - q[0].hypot(q[1]);
                (d.abs(), d >= 0.0)
            }
            _ => {
                let d = self
                    .sides()
                    .iter()
                    .map(|(a, b)| point_segment_distance(q, *a, *b))
                    .fold(f64::INFINITY, f64::min);
                let (lo, hi) = self.x_range();
                (d, q[0] >= lo && q[0] <= hi && q[1] <= self.height_at(q[0]))
            }
        };
        if inside {
            dist
        } else {
            -dist
        }
    }

    pub fn contains(&self, p: [f64; 2], slack: f64) -> bool {
        self.signed_distance(p) >= -slack
    }
}

pub fn point_segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0)
    };
    (p[0] - a[0] - t * dx).hypot(p[1] - a[1] - t * dy)
}

/// Volume, boundary area and their ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainMetrics {
    pub volume: f64,
    pub area: f64,
    pub ratio: f64,
}

pub fn domain_metrics(spec: &DomainSpec) -> Result<DomainMetrics> {
    let (p, v) = curve_area_volume(&spec.generatrix)?;
    Ok(DomainMetrics {
        volume: v,
        area: p,
        ratio: p / v,
    })
}

/// Radius of the largest ball contained in the domain: the inradius of the
/// planar region doubled across the axis.
pub fn inscribed_ball_radius(spec: &DomainSpec) -> f64 {
    match spec.family {
        Family::Ball { radius } => radius,
        Family::Cylinder { l, r } => (0.5 * l).min(r),
        Family::Cone { l, theta } => l * theta.sin() / (1.0 + theta.sin()),
        _ => numeric_inradius(spec, 1e-10),
    }
}

/// Grid search followed by a shrinking compass search on the signed
/// distance.
pub fn numeric_inradius(spec: &DomainSpec, tol: f64) -> f64 {
    let (lo, hi) = spec.x_range();
    let top = spec
        .family
        .vertices()
        .map(|v| v.iter().map(|p| p[1]).fold(0.0, f64::max))
        .unwrap_or(hi - lo);
    let grid = 64;
    let mut seeds: Vec<([f64; 2], f64)> = Vec::new();
    for i in 0..=grid {
        for j in 0..=grid {
            let p = [lo + (hi - lo) * i as f64 / grid as f64, top * j as f64 / grid as f64];
            seeds.push((p, spec.signed_distance(p)));
        }
    }
    seeds.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut best = f64::NEG_INFINITY;
    for &(p0, d0) in seeds.iter().take(8) {
        let (mut p, mut d) = (p0, d0);
        let mut step = (hi - lo).max(top) / grid as f64;
        while step > tol {
            let mut moved = false;
            for dir in [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0], [0.7071, 0.7071], [-0.7071, 0.7071], [0.7071, -0.7071], [-0.7071, -0.7071]] {
                let q = [p[0] + step * dir[0], (p[1] + step * dir[1]).max(0.0)];
                let dq = spec.signed_distance(q);
                if dq > d {
                    p = q;
                    d = dq;
                    moved = true;
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        best = best.max(d);
    }
    best
}

/// Faber–Krahn lower bound `n (ω_n / |Ω|)^{1/n}` for the Cheeger constant.
pub fn faber_krahn_bound(spec: &DomainSpec) -> Result<f64> {
    let v = domain_metrics(spec)?.volume;
    let n = spec.n as f64;
    Ok(n * (unit_ball_volume(spec.n) / v).powf(1.0 / n))
}

fn segments_cross(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let orient = |p: [f64; 2], q: [f64; 2], r: [f64; 2]| (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

/// Whether the closed polygon (generatrix plus the axis) has no crossing
/// between non-adjacent edges.
pub fn is_simple(spec: &DomainSpec) -> bool {
    let Some(mut v) = spec.family.vertices() else {
        return true;
    };
    let first = v[0];
    let last = *v.last().expect("non-empty");
    if first != last {
        v.push(first);
    }
    let m = v.len() - 1;
    for i in 0..m {
        for j in i + 1..m {
            let adjacent = j == i + 1 || (i == 0 && j == m - 1);
            if !adjacent && segments_cross(v[i], v[i + 1], v[j], v[j + 1]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cylinder_generatrix() {
        let d = build_domain(Family::Cylinder { l: 3.0, r: 1.0 }, 3).unwrap();
        let ends: Vec<_> = d.generatrix.pieces.iter().map(|p| (p.start_point(), p.end_point())).collect();
        assert_eq!(
            ends,
            vec![([0.0, 0.0], [0.0, 1.0]), ([0.0, 1.0], [3.0, 1.0]), ([3.0, 1.0], [3.0, 0.0])]
        );
    }

    #[test]
    fn double_cone_right_angle() {
        let d = build_domain(Family::DoubleCone { l: 1.0, r: 3.0, theta: PI / 3.0 }, 3).unwrap();
        assert!((d.right_angle().unwrap() - PI / 6.0).abs() < 1e-15);
        // Both lines meet at the apex.
        let v = d.family.vertices().unwrap();
        assert!((v[1][1] - (PI / 3.0).tan()).abs() < 1e-12);
        let right_line = 1.0 / 3.0 * (3.0 - 0.0) * (PI / 3.0).tan();
        assert!((right_line - v[1][1]).abs() < 1e-12);
    }

    #[test]
    fn hourglass_corners() {
        let d = build_domain(Family::Hourglass { a: 3.0, b: 2.0, c: 0.3, d: 0.6 }, 3).unwrap();
        let v = d.family.vertices().unwrap();
        assert!(v.contains(&[0.0, 2.0]) && v.contains(&[0.3, 0.6]) && v.contains(&[3.0, 2.0]));
        assert!(v.contains(&[-0.3, 0.6]) && v.contains(&[-3.0, 2.0]));
        assert!(is_simple(&d));
    }

    #[test]
    fn invalid_parameters() {
        assert!(build_domain(Family::Cone { l: 1.0, theta: 2.0 }, 3).is_err());
        assert!(build_domain(Family::Hourglass { a: 0.2, b: 2.0, c: 0.3, d: 0.6 }, 3).is_err());
        assert!(build_domain(Family::Cylinder { l: 1.0, r: 1.0 }, 2).is_err());
    }

    #[test]
    fn metrics_examples() {
        let cone = build_domain(Family::Cone { l: 1.0, theta: PI / 4.0 }, 3).unwrap();
        let m = domain_metrics(&cone).unwrap();
        let th = PI / 4.0;
        assert!((m.ratio - 3.0 * (1.0 + th.cos()) / th.sin()).abs() < 1e-12);
        let cyl = build_domain(Family::Cylinder { l: 1.0, r: 1.0 }, 3).unwrap();
        let m = domain_metrics(&cyl).unwrap();
        assert!((m.volume - PI).abs() < 1e-14 && (m.area - 4.0 * PI).abs() < 1e-14);
        assert!((m.ratio - 4.0).abs() < 1e-14);
        let ball = build_domain(Family::Ball { radius: 1.0 }, 3).unwrap();
        assert!((domain_metrics(&ball).unwrap().ratio - 3.0).abs() < 1e-13);
    }

    #[test]
    fn inradius_examples() {
        let cone = build_domain(Family::Cone { l: 1.0, theta: PI / 3.0 }, 3).unwrap();
        let r = inscribed_ball_radius(&cone);
        assert!((r - 0.4641016151377546).abs() < 1e-12);
        assert!((numeric_inradius(&cone, 1e-11) - r).abs() < 1e-8);
        let cyl = build_domain(Family::Cylinder { l: 2.0, r: 1.0 }, 3).unwrap();
        assert_eq!(inscribed_ball_radius(&cyl), 1.0);
        assert!((numeric_inradius(&cyl, 1e-11) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn double_cone_inradius_matches_triangle_formula() {
        // Doubled region is a rhombus-like quadrilateral; for l = r it is a
        // rhombus whose inradius is the apex-to-side distance from the
        // centre.
        let th = PI / 4.0;
        let d = build_domain(Family::DoubleCone { l: 1.0, r: 1.0, theta: th }, 3).unwrap();
        assert!((inscribed_ball_radius(&d) - th.sin()).abs() < 1e-8);
    }

    #[test]
    fn faber_krahn_examples() {
        let ball = build_domain(Family::Ball { radius: 1.0 }, 3).unwrap();
        assert!((faber_krahn_bound(&ball).unwrap() - 3.0).abs() < 1e-12);
        let cyl = build_domain(Family::Cylinder { l: 1.0, r: 1.0 }, 3).unwrap();
        let fk = faber_krahn_bound(&cyl).unwrap();
        assert!((fk - 3.0 * (4.0f64 / 3.0).cbrt()).abs() < 1e-12);
        assert!((fk - 3.3019).abs() < 1e-4);
    }

    #[test]
    fn json_round_trip() {
        let s = r#"{"family":"hourglass","n":3,"parameters":{"A":3,"B":2,"C":0.3,"D":0.6}}"#;
        let d = DomainSpec::from_json(s).unwrap();
        assert_eq!(d.family, Family::Hourglass { a: 3.0, b: 2.0, c: 0.3, d: 0.6 });
        let back = serde_json::to_string(&d).unwrap();
        assert_eq!(DomainSpec::from_json(&back).unwrap(), d);
        assert!(DomainSpec::from_json(r#"{"family":"cone","n":3,"parameters":{"l":1,"theta":3}}"#).is_err());
    }

    #[test]
    fn signed_distance_signs() {
        let d = build_domain(Family::Cylinder { l: 2.0, r: 1.0 }, 3).unwrap();
        assert!((d.signed_distance([1.0, 0.0]) - 1.0).abs() < 1e-15);
        assert!(d.signed_distance([1.0, 1.5]) < 0.0);
        assert!(d.signed_distance([-0.5, 0.5]) < 0.0);
        let h = build_domain(Family::Hourglass { a: 3.0, b: 2.0, c: 0.3, d: 0.6 }, 3).unwrap();
        assert!(h.signed_distance([0.3, 0.7]) < 0.0);
        assert!(h.signed_distance([0.0, 1.9]) > 0.0);
    }
}
