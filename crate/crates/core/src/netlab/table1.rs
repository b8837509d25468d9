//! Singular members of the quartic net, checked against the known orbits.

use rayon::prelude::*;
use serde::Serialize;

use super::{discriminant_factors, is_singular_at, net_discriminant, net_member, NetError, NetPoint};
use crate::catalog::{self, points};
use crate::exactmath::{CycNum, ProjPoint, SeededRng};

/// Orbit names whose union makes up the candidate set for singular points.
const CANDIDATE_SEEDS: [&str; 7] = [
    "Sigma4",
    "Sigma4prime",
    "Sigma4primeprime",
    "Sigma12",
    "Sigma12prime",
    "Sigma12primeprime",
    "Sigma12tripleprime",
];

/// One row of the singular-member table: the factor that vanishes, a
/// representative parameter and the orbits forming its singular locus.
#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub condition: String,
    /// Index into [`discriminant_factors`] of the factor that must vanish.
    pub factor: usize,
    pub parameter: NetPoint,
    pub expected: Vec<String>,
}

impl Table1Row {
    /// The parameter lies on its factor, off the cubic, and has `c != 0`
    /// unless the row is about `c = 0`.
    pub fn condition_holds(&self) -> bool {
        let f = discriminant_factors(&self.parameter);
        f[self.factor].is_zero() && !f[7].is_zero() && (self.factor == 0 || !f[0].is_zero())
    }
}

pub fn table1_rows() -> Vec<Table1Row> {
    const FACTORS: [&str; 7] = ["c=0", "b+2c=0", "b-2c=0", "a+2b-4c=0", "a-2b+4c=0", "a-6b-4c=0", "a+6b+4c=0"];
    let rows: [(usize, [i64; 3], &[&str]); 16] = [
        (0, [1, 1, 0], &["Sigma4"]),
        (0, [6, 1, 0], &["Sigma4", "Sigma4prime"]),
        (0, [-6, 1, 0], &["Sigma4", "Sigma4primeprime"]),
        (0, [2, 1, 0], &["Sigma4", "Sigma12tripleprime"]),
        (0, [-2, 1, 0], &["Sigma4", "Sigma12primeprime"]),
        (1, [1, -2, 1], &["Sigma12"]),
        (2, [1, 2, 1], &["Sigma12prime"]),
        (2, [16, 2, 1], &["Sigma4prime", "Sigma12prime"]),
        (2, [-16, 2, 1], &["Sigma4primeprime", "Sigma12prime"]),
        (3, [2, 1, 1], &["Sigma12primeprime"]),
        (3, [4, 0, 1], &["Sigma4prime", "Sigma12primeprime"]),
        (4, [-2, 1, 1], &["Sigma12tripleprime"]),
        (4, [-4, 0, 1], &["Sigma4primeprime", "Sigma12tripleprime"]),
        (5, [10, 1, 1], &["Sigma4prime"]),
        (5, [0, -2, 3], &["Sigma4prime", "Sigma4primeprime"]),
        (6, [-10, 1, 1], &["Sigma4primeprime"]),
    ];
    rows.iter()
        .map(|(k, [a, b, c], exp)| Table1Row {
            condition: format!("{} & [a:b:c]=[{a}:{b}:{c}]", FACTORS[*k]),
            factor: *k,
            parameter: NetPoint::from_ints(*a, *b, *c).expect("nonzero"),
            expected: exp.iter().map(|s| s.to_string()).collect(),
        })
        .collect()
}

/// The `G_48_50`-orbits of all length-4 and length-12 seeds.
pub fn candidate_orbits() -> Result<Vec<(String, Vec<ProjPoint>)>, NetError> {
    let g = catalog::group("G_48_50")?;
    CANDIDATE_SEEDS
        .iter()
        .map(|name| {
            let seed = points::seed(name).expect("catalog seed");
            Ok((name.to_string(), g.orbit(&seed)?.points))
        })
        .collect()
}

/// Orbits on which the surface is singular; an orbit where only some points
/// are singular is reported separately, since that would break the symmetry.
fn singular_orbits(
    f: &crate::exactmath::Form,
    orbits: &[(String, Vec<ProjPoint>)],
) -> Result<(Vec<String>, Vec<String>), NetError> {
    let mut full = Vec::new();
    let mut partial = Vec::new();
    for (name, pts) in orbits {
        let hits = pts.iter().map(|p| is_singular_at(f, p)).collect::<Result<Vec<_>, _>>()?;
        let n = hits.iter().filter(|&&h| h).count();
        if n == pts.len() {
            full.push(name.clone());
        } else if n > 0 {
            partial.push(name.clone());
        }
    }
    Ok((full, partial))
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub row: Table1Row,
    pub condition_holds: bool,
    pub discriminant_zero: bool,
    pub singular_orbits: Vec<String>,
    pub partial_orbits: Vec<String>,
    pub pass: bool,
}

pub fn verify_row(row: &Table1Row, orbits: &[(String, Vec<ProjPoint>)]) -> Result<RowReport, NetError> {
    let f = net_member(&row.parameter);
    let (mut found, partial) = singular_orbits(&f, orbits)?;
    found.sort();
    let mut expected = row.expected.clone();
    expected.sort();
    let condition_holds = row.condition_holds();
    let discriminant_zero = net_discriminant(&row.parameter).is_zero();
    let pass = condition_holds && discriminant_zero && partial.is_empty() && found == expected;
    Ok(RowReport { row: row.clone(), condition_holds, discriminant_zero, singular_orbits: found, partial_orbits: partial, pass })
}

/// Verifies every row in parallel; reports keep table order.
pub fn verify_table1() -> Result<Vec<RowReport>, NetError> {
    let orbits = candidate_orbits()?;
    table1_rows().par_iter().map(|r| verify_row(r, &orbits)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TFamilyReport {
    pub t: CycNum,
    pub parameter: NetPoint,
    pub discriminant_zero: bool,
    pub orbit_length: usize,
    pub singular_orbits: Vec<String>,
    pub pass: bool,
}

/// A member of the cubic family is singular exactly along the length-16
/// orbit of `[1:1:1:t]`.
pub fn t_family_check(t: &CycNum) -> Result<TFamilyReport, NetError> {
    let parameter = NetPoint::t_family(t);
    let g = catalog::group("G_48_50")?;
    let orbit = g.orbit(&points::sigma16_t(t))?;
    let mut orbits = candidate_orbits()?;
    orbits.push(("Sigma16_t".to_string(), orbit.points.clone()));
    let (found, partial) = singular_orbits(&net_member(&parameter), &orbits)?;
    let discriminant_zero = net_discriminant(&parameter).is_zero();
    let pass = discriminant_zero && partial.is_empty() && found == ["Sigma16_t"] && orbit.length == 16;
    Ok(TFamilyReport { t: t.clone(), parameter, discriminant_zero, orbit_length: orbit.length, singular_orbits: found, pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct OffLocusReport {
    pub parameters: Vec<NetPoint>,
    pub singular_hits: Vec<(NetPoint, String)>,
    pub pass: bool,
}

/// Random parameters off the discriminant: no candidate point (including the
/// base points) may be singular.
pub fn off_locus_scan(count: usize, seed: u64) -> Result<OffLocusReport, NetError> {
    let mut rng = SeededRng::new(seed);
    let mut parameters = Vec::new();
    while parameters.len() < count {
        let v = rng.int_vector(3, 30);
        let p = NetPoint::new(v[0].clone(), v[1].clone(), v[2].clone())?;
        if !net_discriminant(&p).is_zero() {
            parameters.push(p);
        }
    }
    let g = catalog::group("G_48_50")?;
    let mut orbits = candidate_orbits()?;
    for name in ["Sigma16", "Sigma16prime"] {
        orbits.push((name.to_string(), g.orbit(&points::seed(name).expect("catalog seed"))?.points));
    }
    let hits: Vec<Vec<(NetPoint, String)>> = parameters
        .par_iter()
        .map(|p| -> Result<_, NetError> {
            let f = net_member(p);
            let (full, partial) = singular_orbits(&f, &orbits)?;
            Ok(full.into_iter().chain(partial).map(|o| (p.clone(), o)).collect())
        })
        .collect::<Result<_, _>>()?;
    let singular_hits: Vec<_> = hits.into_iter().flatten().collect();
    Ok(OffLocusReport { pass: singular_hits.is_empty(), parameters, singular_hits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::consts::{frac, int};

    #[test]
    fn rows_satisfy_their_conditions() {
        for row in table1_rows() {
            assert!(row.condition_holds(), "{}", row.condition);
        }
    }

    #[test]
    fn t_family_member() {
        let r = t_family_check(&int(2)).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(t_family_check(&frac(1, 2)).unwrap().pass);
    }

    #[test]
    fn row_six_one_zero() {
        let orbits = candidate_orbits().unwrap();
        let r = verify_row(&table1_rows()[1], &orbits).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

#[cfg(test)]
mod full_table {
    use super::*;

    #[test]
    fn every_row_and_off_locus() {
        for r in verify_table1().unwrap() {
            assert!(r.pass, "{r:?}");
        }
        assert!(off_locus_scan(20, 0).unwrap().pass);
    }
}
