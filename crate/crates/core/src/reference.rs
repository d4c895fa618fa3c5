//! Published reference values of Cheeger constants for cylinders, double
//! cones and cones, with the parameters they were computed for.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::domains::Family;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Group {
    /// `Z_{1,1}` in several dimensions.
    CylinderL1,
    CylinderL2,
    CylinderL3,
    DoubleCone,
    Cone,
}

impl Group {
    pub const ALL: [Group; 5] = [
        Group::CylinderL1,
        Group::CylinderL2,
        Group::CylinderL3,
        Group::DoubleCone,
        Group::Cone,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Group::CylinderL1 => "cylinder-l1",
            Group::CylinderL2 => "cylinder-l2",
            Group::CylinderL3 => "cylinder-l3",
            Group::DoubleCone => "double-cone",
            Group::Cone => "cone",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceEntry {
    pub group: Group,
    pub family: Family,
    pub n: usize,
    /// How the angle was written, e.g. `asin(4/5)`.
    pub angle_label: Option<&'static str>,
    #[serde(rename = "H")]
    pub big_h: Option<f64>,
    pub h: f64,
}

const DIMS: [usize; 5] = [3, 4, 5, 10, 30];

const CYLINDERS: [(f64, [f64; 5], [f64; 5]); 3] = [
    (
        1.0,
        [1.86237, 1.53976, 1.38214, 1.13465, 1.02474],
        [3.72474, 4.61928, 5.52854, 10.2118, 29.7175],
    ),
    (
        2.0,
        [1.40106, 1.24549, 1.17083, 1.05746, 1.01027],
        [2.80212, 3.73646, 4.68334, 9.51714, 29.2978],
    ),
    (
        3.0,
        [1.25659, 1.15544, 1.10738, 1.03555, 1.00634],
        [2.51318, 3.46631, 4.42954, 9.31991, 29.184],
    ),
];

/// All reference entries, cylinders first.
pub fn entries() -> Vec<ReferenceEntry> {
    let mut out = Vec::new();
    let groups = [Group::CylinderL1, Group::CylinderL2, Group::CylinderL3];
    for (g, (l, hs, cs)) in groups.into_iter().zip(CYLINDERS) {
        for (i, n) in DIMS.into_iter().enumerate() {
            out.push(ReferenceEntry {
                group: g,
                family: Family::Cylinder { l, r: 1.0 },
                n,
                angle_label: None,
                big_h: Some(hs[i]),
                h: cs[i],
            });
        }
    }
    let asin = |v: f64| v.asin();
    let double = [
        (1.8, 3.2, asin(0.8), "asin(4/5)", 1.6502),
        (1.0, 3.0, PI / 3.0, "pi/3", 2.22333),
        (1.0, 1.0, 2.0 * PI / 5.0, "2pi/5", 2.38303),
        (1.0, 1.0, PI / 3.0, "pi/3", 3.00582),
        (1.0, 1.0, PI / 4.0, "pi/4", 4.00593),
        (1.0, 1.0, PI / 6.0, "pi/6", 5.75003),
    ];
    for (l, r, theta, label, h) in double {
        out.push(ReferenceEntry {
            group: Group::DoubleCone,
            family: Family::DoubleCone { l, r, theta },
            n: 3,
            angle_label: Some(label),
            big_h: None,
            h,
        });
    }
    let cones = [
        (4.0, asin(0.6), "asin(3/5)", 1.69452),
        (3.0, asin(0.8), "asin(4/5)", 1.71916),
        (1.0, PI / 3.0, "pi/3", 4.6575),
        (1.0, PI / 4.0, "pi/4", 5.86018),
        (1.0, PI / 6.0, "pi/6", 7.85898),
    ];
    for (l, theta, label, h) in cones {
        out.push(ReferenceEntry {
            group: Group::Cone,
            family: Family::Cone { l, theta },
            n: 3,
            angle_label: Some(label),
            big_h: None,
            h,
        });
    }
    out
}
