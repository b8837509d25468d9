//! Orbit seed points.

use serde::Serialize;

use crate::exactmath::consts::{i, int, sqrt3_i};
use crate::exactmath::{CycNum, ProjPoint};

/// A named seed point whose orbit under `group` has `orbit_length` points.
#[derive(Clone, Debug, Serialize)]
pub struct PointEntry {
    pub name: String,
    pub seed: ProjPoint,
    pub group: &'static str,
    pub orbit_length: usize,
}

pub const POINT_NAMES: [&str; 9] = [
    "Sigma4",
    "Sigma4prime",
    "Sigma4primeprime",
    "Sigma12",
    "Sigma12prime",
    "Sigma12primeprime",
    "Sigma12tripleprime",
    "Sigma16",
    "Sigma16prime",
];

fn pt(v: Vec<CycNum>) -> ProjPoint {
    ProjPoint::new(v).expect("catalog points are nonzero")
}

pub fn seed(name: &str) -> Option<ProjPoint> {
    let s = sqrt3_i();
    Some(match name {
        "Sigma4" => pt(vec![int(1), int(0), int(0), int(0)]),
        "Sigma4prime" => pt(vec![int(1), int(1), int(1), int(-1)]),
        "Sigma4primeprime" => pt(vec![int(1), int(1), int(1), int(1)]),
        "Sigma12" => pt(vec![int(0), int(0), int(1), int(1)]),
        "Sigma12prime" => pt(vec![int(0), int(0), i(), int(1)]),
        "Sigma12primeprime" => pt(vec![i(), i(), int(1), int(1)]),
        "Sigma12tripleprime" => pt(vec![-i(), i(), int(1), int(1)]),
        "Sigma16" => pt(vec![&int(-1) + &s, &int(-1) - &s, int(2), int(0)]),
        "Sigma16prime" => pt(vec![&int(-1) - &s, &int(-1) + &s, int(2), int(0)]),
        _ => return None,
    })
}

pub fn entry(name: &str) -> Option<PointEntry> {
    let seed = seed(name)?;
    let orbit_length = if name.starts_with("Sigma4") {
        4
    } else if name.starts_with("Sigma12") {
        12
    } else {
        16
    };
    Some(PointEntry { name: name.to_string(), seed, group: "G_48_50", orbit_length })
}

/// The seed `[1:1:1:t]` of the one-parameter family of length-16 orbits.
pub fn sigma16_t(t: &CycNum) -> ProjPoint {
    pt(vec![int(1), int(1), int(1), t.clone()])
}

/// The four coordinate points.
pub fn coordinate_points() -> Vec<ProjPoint> {
    (0..4)
        .map(|k| pt((0..4).map(|j| if j == k { int(1) } else { int(0) }).collect()))
        .collect()
}
