use serde::Serialize;

use cheeger_core::checks::{CertificateReport, Status};
use cheeger_core::domains::Family;
use cheeger_core::numerics::CheegerResult;
use cheeger_core::reference::ReferenceEntry;

/// JSON document printed by `cheeger cheeger …`: the full result plus the
/// certificates run on it.
#[derive(Debug, Serialize)]
pub struct CheegerReport<'a> {
    pub h: f64,
    #[serde(rename = "H_opt")]
    pub h_opt: f64,
    pub structure: String,
    pub certificate_pass: bool,
    pub certificates: Vec<CertificateReport>,
    pub result: &'a CheegerResult,
}

impl<'a> CheegerReport<'a> {
    pub fn new(result: &'a CheegerResult, certificates: Vec<CertificateReport>) -> Self {
        let convex = result.domain.family.is_convex();
        // The sign condition only holds for convex domains; elsewhere it is
        // informational, as is the rolling-ball comparison.
        let certificate_pass = certificates
            .iter()
            .filter(|c| c.name != "rolling-ball" && (convex || c.name != "t-sign"))
            .all(|c| c.status != Status::Fail);
        Self {
            h: result.h,
            h_opt: result.h_opt,
            structure: result.candidate.structure.to_string(),
            certificate_pass,
            certificates,
            result,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub family: &'static str,
    pub l: Option<f64>,
    pub r: Option<f64>,
    pub theta: Option<f64>,
    #[serde(rename = "A")]
    pub a: Option<f64>,
    #[serde(rename = "B")]
    pub b: Option<f64>,
    #[serde(rename = "C")]
    pub c: Option<f64>,
    #[serde(rename = "D")]
    pub d: Option<f64>,
    pub n: usize,
    #[serde(rename = "H_opt")]
    pub h_opt: f64,
    pub h: f64,
    pub structure: String,
    pub certificate_pass: bool,
    pub reference_h: Option<f64>,
    pub reference_big_h: Option<f64>,
    pub relative_delta_h: Option<f64>,
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl Row {
    pub const HEADER: &'static str = "family,l,r,theta,A,B,C,D,n,H_opt,h,structure,certificate_pass";
    pub const TABLE_HEADER: &'static str =
        "family,l,r,theta,A,B,C,D,n,H_opt,h,structure,certificate_pass,reference_H,reference_h,relative_delta_h";

    pub fn from_report(rep: &CheegerReport) -> Self {
        let mut row = Self {
            family: rep.result.domain.family.name(),
            l: None,
            r: None,
            theta: None,
            a: None,
            b: None,
            c: None,
            d: None,
            n: rep.result.domain.n,
            h_opt: rep.h_opt,
            h: rep.h,
            structure: rep.structure.clone(),
            certificate_pass: rep.certificate_pass,
            reference_h: None,
            reference_big_h: None,
            relative_delta_h: None,
        };
        match rep.result.domain.family {
            Family::Cylinder { l, r } => (row.l, row.r) = (Some(l), Some(r)),
            Family::Cone { l, theta } => (row.l, row.theta) = (Some(l), Some(theta)),
            Family::DoubleCone { l, r, theta } => (row.l, row.r, row.theta) = (Some(l), Some(r), Some(theta)),
            Family::Hourglass { a, b, c, d } => (row.a, row.b, row.c, row.d) = (Some(a), Some(b), Some(c), Some(d)),
            Family::Ball { radius } => row.r = Some(radius),
        }
        row
    }

    pub fn with_reference(mut self, e: &ReferenceEntry) -> Self {
        self.reference_h = Some(e.h);
        self.reference_big_h = e.big_h;
        self.relative_delta_h = Some(self.h / e.h - 1.0);
        self
    }

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.family,
            cell(self.l),
            cell(self.r),
            cell(self.theta),
            cell(self.a),
            cell(self.b),
            cell(self.c),
            cell(self.d),
            self.n,
            self.h_opt,
            self.h,
            self.structure,
            self.certificate_pass
        )
    }

    pub fn table_csv(&self) -> String {
        format!(
            "{},{},{},{}",
            self.csv(),
            cell(self.reference_big_h),
            cell(self.reference_h),
            cell(self.relative_delta_h)
        )
    }
}
