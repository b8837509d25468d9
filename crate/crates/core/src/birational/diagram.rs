//! Coordinate check of the square relating the double cover `V2`, the
//! product of three lines, projective space and the Fano-Enriques threefold
//! in `P^13`.

use rayon::prelude::*;
use serde::Serialize;

use super::{proportional, Result};
use crate::catalog::maps::{self, MapEntry};
use crate::exactmath::{CycNum, SeededRng};

#[derive(Clone, Debug, Serialize)]
pub struct ContractionCheck {
    pub plane: usize,
    /// Coordinate of `P^13` where the image of the plane sits.
    pub expected_index: usize,
    pub generic_points: usize,
    pub generic_points_ok: bool,
    /// The image is also `omega` of the listed point of `(P^1)^3`.
    pub omega_point_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramReport {
    pub samples: usize,
    /// Samples where `omega o zeta` and `psi o xi` agree.
    pub commuting: usize,
    /// Samples where every `eta_i o psi` agrees with the `i`-th projection
    /// of `zeta` followed by the squaring quotient of `P^1`.
    pub eta_matches: usize,
    pub all_ones_ok: bool,
    pub contractions: Vec<ContractionCheck>,
    pub pass: bool,
}

fn entry(name: &str) -> MapEntry {
    maps::entry(name).expect("catalog map")
}

fn eval(m: &MapEntry, x: &[CycNum]) -> Result<Vec<CycNum>> {
    Ok(m.components.iter().map(|c| c.eval(x)).collect::<std::result::Result<_, _>>()?)
}

struct Maps {
    psi: MapEntry,
    omega: MapEntry,
    zeta: MapEntry,
    xi: MapEntry,
    eta: [MapEntry; 3],
}

impl Maps {
    fn load() -> Maps {
        Maps {
            psi: entry("psi"),
            omega: entry("omega"),
            zeta: entry("zeta"),
            xi: entry("xi"),
            eta: [entry("eta1"), entry("eta2"), entry("eta3")],
        }
    }

    /// `(commutes, eta matches)` at a point `[x0:x1:x2:x3:w]` of `V2`.
    fn check(&self, p: &[CycNum]) -> Result<(bool, bool)> {
        let z = eval(&self.zeta, p)?;
        let x = eval(&self.xi, p)?;
        let commutes = proportional(&eval(&self.omega, &z)?, &eval(&self.psi, &x)?);
        let mut eta_ok = true;
        for (i, eta) in self.eta.iter().enumerate() {
            let (u, v) = (&z[2 * i], &z[2 * i + 1]);
            eta_ok &= proportional(&[u * u, v * v], &eval(eta, &x)?);
        }
        Ok((commutes, eta_ok))
    }
}

/// Seeded points of `V2 = {w^2 = x0 x1 x2 x3}` with all coordinates nonzero.
fn v2_samples(count: usize, seed: u64) -> Vec<Vec<CycNum>> {
    let mut rng = SeededRng::new(seed);
    (0..count)
        .map(|_| {
            let [w, x0, x1, x2] = [0; 4].map(|_| CycNum::from_rational(rng.nonzero_rational(12)));
            let x3 = (&w * &w).checked_div(&(&(&x0 * &x1) * &x2)).expect("nonzero");
            vec![x0, x1, x2, x3, w]
        })
        .collect()
}

/// Image coordinates of the planes `x_i = 0` and the points of `(P^1)^3`
/// that `omega` sends there.
const CONTRACTIONS: [(usize, [u8; 6]); 4] =
    [(12, [0, 1, 0, 1, 1, 0]), (10, [0, 1, 1, 0, 0, 1]), (4, [1, 0, 0, 1, 0, 1]), (0, [1, 0, 1, 0, 1, 0])];

fn unit(index: usize) -> Vec<CycNum> {
    (0..14).map(|k| CycNum::from_int((k == index) as i64)).collect()
}

fn contraction_checks(m: &Maps, per_plane: usize, seed: u64) -> Result<Vec<ContractionCheck>> {
    let mut rng = SeededRng::new(seed ^ 0x706c_616e);
    let mut out = Vec::new();
    for (plane, (index, uv)) in CONTRACTIONS.iter().enumerate() {
        let target = unit(*index);
        let mut ok = true;
        for _ in 0..per_plane {
            let x: Vec<CycNum> = (0..4)
                .map(|k| if k == plane { CycNum::zero() } else { CycNum::from_rational(rng.nonzero_rational(12)) })
                .collect();
            ok &= proportional(&eval(&m.psi, &x)?, &target);
        }
        let uv: Vec<CycNum> = uv.iter().map(|&b| CycNum::from_int(b as i64)).collect();
        let omega_point_ok = proportional(&eval(&m.omega, &uv)?, &target);
        out.push(ContractionCheck {
            plane,
            expected_index: *index,
            generic_points: per_plane,
            generic_points_ok: ok,
            omega_point_ok,
        });
    }
    Ok(out)
}

/// Checks `omega o zeta = psi o xi` and the three `eta_i o psi` formulas on
/// `samples` seeded points of `V2`, and the images of the four coordinate
/// planes under `psi` on five generic points each.
pub fn verify_quotient_diagram(samples: usize, seed: u64) -> Result<DiagramReport> {
    let m = Maps::load();
    let ones = vec![CycNum::one(); 5];
    let (c, e) = m.check(&ones)?;
    let all_ones_ok = c && e && eval(&m.psi, &ones[..4])?.iter().all(|v| v.is_one());
    let points = v2_samples(samples, seed);
    let results = points.par_iter().map(|p| m.check(p)).collect::<Result<Vec<_>>>()?;
    let commuting = results.iter().filter(|r| r.0).count();
    let eta_matches = results.iter().filter(|r| r.1).count();
    let contractions = contraction_checks(&m, 5, seed)?;
    let pass = all_ones_ok
        && commuting == samples
        && eta_matches == samples
        && contractions.iter().all(|c| c.generic_points_ok && c.omega_point_ok);
    Ok(DiagramReport { samples, commuting, eta_matches, all_ones_ok, contractions, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_lie_on_the_double_cover() {
        for p in v2_samples(10, 3) {
            assert_eq!(&p[4] * &p[4], &(&(&p[0] * &p[1]) * &p[2]) * &p[3]);
        }
    }

    #[test]
    fn diagram_commutes() {
        let r = verify_quotient_diagram(100, 0).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.commuting, 100);
    }

    #[test]
    fn a_wrong_square_root_breaks_commutativity() {
        let m = Maps::load();
        let mut p = v2_samples(1, 0).pop().unwrap();
        p[4] = &p[4] * &CycNum::from_int(2);
        assert!(!m.check(&p).unwrap().0);
    }
}
