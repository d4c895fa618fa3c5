//! SVG 1.1 output. Drawing happens in model coordinates inside a group whose
//! transform flips the y-axis, so coordinates in the emitted paths are the
//! model coordinates themselves.

use std::fmt::Write;

use cheeger_core::delaunay::CurvePoint;
use cheeger_core::numerics::CheegerResult;
use cheeger_core::revolve::{GeneratrixPiece, PiecewiseCurve, RevolveOptions};

const MARGIN: f64 = 16.0;
const PER_PIECE: usize = 160;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

struct Frame {
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
    scale: f64,
}

impl Frame {
    fn fit(points: impl Iterator<Item = [f64; 2]>, scale: f64) -> Self {
        let mut f = Frame {
            xmin: f64::INFINITY,
            xmax: f64::NEG_INFINITY,
            ymin: 0.0,
            ymax: 0.0,
            scale,
        };
        for [x, y] in points {
            f.xmin = f.xmin.min(x);
            f.xmax = f.xmax.max(x);
            f.ymin = f.ymin.min(y);
            f.ymax = f.ymax.max(y);
        }
        f
    }

    fn open(&self) -> String {
        let w = (self.xmax - self.xmin) * self.scale + 2.0 * MARGIN;
        let h = (self.ymax - self.ymin) * self.scale + 2.0 * MARGIN;
        let tx = MARGIN - self.xmin * self.scale;
        let ty = MARGIN + self.ymax * self.scale;
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.2}\" height=\"{h:.2}\" viewBox=\"0 0 {w:.2} {h:.2}\">\n\
             <g transform=\"translate({tx:.4} {ty:.4}) scale({s} {ns})\">\n",
            s = self.scale,
            ns = -self.scale,
        )
    }

    fn axis(&self) -> String {
        let pad = MARGIN / self.scale;
        format!(
            "<line class=\"axis\" x1=\"{}\" y1=\"0\" x2=\"{}\" y2=\"0\" stroke=\"#000\" stroke-width=\"1\" stroke-dasharray=\"4 3\" vector-effect=\"non-scaling-stroke\"/>\n",
            self.xmin - pad,
            self.xmax + pad
        )
    }
}

const CLOSE: &str = "</g>\n</svg>\n";

fn path_data(pts: &[[f64; 2]], close: bool) -> String {
    let mut d = String::new();
    for (i, [x, y]) in pts.iter().enumerate() {
        let _ = write!(d, "{}{x:.6} {y:.6} ", if i == 0 { "M" } else { "L" });
    }
    if close {
        d.push('Z');
    }
    d.trim_end().to_string()
}

fn curve_points(c: &PiecewiseCurve) -> cheeger_core::Result<Vec<[f64; 2]>> {
    let opts = RevolveOptions::default();
    let mut out: Vec<[f64; 2]> = Vec::new();
    for p in &c.pieces {
        let pts = match p {
            GeneratrixPiece::Segment { from, to } => vec![*from, *to],
            _ => p.sample(PER_PIECE, &opts)?.iter().map(|q| [q.x, q.y]).collect(),
        };
        // Consecutive pieces share their junction point.
        let skip = usize::from(out.last().is_some_and(|l| (l[0] - pts[0][0]).hypot(l[1] - pts[0][1]) < 1e-12));
        out.extend(pts.into_iter().skip(skip));
    }
    Ok(out)
}

/// The domain generatrix, the filled generating set of the optimal candidate
/// and the axis.
pub fn candidate(r: &CheegerResult, scale: f64) -> cheeger_core::Result<String> {
    let domain = curve_points(&r.domain.generatrix)?;
    let mut region = String::new();
    for c in r.candidate.component_curves(&RevolveOptions::default())? {
        region.push_str(&path_data(&curve_points(&c)?, true));
        region.push(' ');
    }
    let frame = Frame::fit(domain.iter().copied(), scale);
    let mut s = frame.open();
    let _ = writeln!(s, "<title>{} h = {:.6}</title>", r.domain.family.name(), r.h);
    let _ = writeln!(
        s,
        "<path class=\"candidate\" d=\"{}\" fill=\"#bbbbbb\" fill-rule=\"evenodd\" stroke=\"#555\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"/>",
        region.trim_end()
    );
    let _ = writeln!(
        s,
        "<path class=\"domain\" d=\"{}\" fill=\"none\" stroke=\"#000\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\"/>",
        path_data(&domain, false)
    );
    s.push_str(&frame.axis());
    s.push_str(CLOSE);
    Ok(s)
}

/// One polyline per first integral.
pub fn delaunay_family(curves: &[(f64, Vec<CurvePoint>)], scale: f64) -> String {
    let all = curves.iter().flat_map(|(_, c)| c.iter().map(|p| [p.x, p.y]));
    let frame = Frame::fit(all, scale);
    let mut s = frame.open();
    for (i, (t, c)) in curves.iter().enumerate() {
        let pts: String = c.iter().map(|p| format!("{:.6},{:.6} ", p.x, p.y)).collect();
        let _ = writeln!(
            s,
            "<polyline data-t=\"{t}\" points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\"/>",
            pts.trim_end(),
            PALETTE[i % PALETTE.len()]
        );
    }
    s.push_str(&frame.axis());
    s.push_str(CLOSE);
    s
}
