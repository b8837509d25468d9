//! Generator tables for the monomial groups and the ambient groups around them.

use crate::exactmath::consts::{frac, i, int, zeta3};
use crate::exactmath::CycNum;
use crate::projgroup::ProjMap;

/// Every group key, with the order it must close up to.
pub const GROUP_ORDERS: &[(&str, usize)] = &[
    ("G_48_50", 48),
    ("G_48_3", 48),
    ("G_96_70", 96),
    ("G_96_72", 96),
    ("G_96_227", 96),
    ("G_96_227prime", 96),
    ("G_192_955", 192),
    ("G_192_185", 192),
    ("G_324_160", 324),
    ("G_324_160prime", 324),
    ("G_648_704", 648),
    ("G_648_704prime", 648),
    ("G_144_184", 144),
    ("G_288_1025", 288),
    ("G_576_8654", 576),
    ("H_16", 16),
    ("Gamma_12", 12),
    ("Gamma_64", 64),
];

/// The twelve monomial groups, in their customary order.
pub const MONOMIAL_GROUPS: [&str; 12] = [
    "G_48_50",
    "G_48_3",
    "G_96_70",
    "G_96_72",
    "G_96_227",
    "G_96_227prime",
    "G_192_955",
    "G_192_185",
    "G_324_160",
    "G_324_160prime",
    "G_648_704",
    "G_648_704prime",
];

fn z() -> CycNum {
    CycNum::zero()
}

fn o() -> CycNum {
    CycNum::one()
}

fn m(rows: [[CycNum; 4]; 4]) -> ProjMap {
    ProjMap::new(rows.into_iter().map(|r| r.into_iter().collect()).collect()).expect("catalog matrices are invertible")
}

fn ints(rows: [[i64; 4]; 4]) -> ProjMap {
    ProjMap::from_ints(&rows).expect("catalog matrices are invertible")
}

fn diag(a: i64, b: i64, c: i64) -> ProjMap {
    ProjMap::diagonal3([int(a), int(b), int(c)])
}

/// `rho`: the 3-cycle on the first three coordinates.
pub fn rho() -> ProjMap {
    ints([[0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
}

/// `varsigma`: the double transposition (01)(23).
pub fn varsigma() -> ProjMap {
    ints([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
}

/// `tau`: the 4-cycle.
pub fn tau() -> ProjMap {
    ints([[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
}

/// `sigma`: the transposition (01).
pub fn sigma() -> ProjMap {
    ints([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
}

pub fn mat_m() -> ProjMap {
    ProjMap::diagonal(&[int(-1), int(1), int(-1), int(1)]).unwrap()
}

pub fn mat_n() -> ProjMap {
    ProjMap::diagonal(&[int(-1), int(-1), int(1), int(1)]).unwrap()
}

pub fn mat_l() -> ProjMap {
    ProjMap::diagonal(&[int(-1), int(1), int(1), int(1)]).unwrap()
}

/// The raw 4x4 matrix of `R`, the order-three element permuting the three
/// desmic tetrahedra.
pub fn r_matrix() -> Vec<Vec<CycNum>> {
    let h = frac(1, 2);
    let n = frac(-1, 2);
    vec![
        vec![h.clone(), h.clone(), h.clone(), h.clone()],
        vec![h.clone(), h.clone(), n.clone(), n.clone()],
        vec![h.clone(), n.clone(), h.clone(), n.clone()],
        vec![n.clone(), h.clone(), h.clone(), n],
    ]
}

pub fn mat_r() -> ProjMap {
    ProjMap::new(r_matrix()).expect("R is invertible")
}

fn zeta3_diagonals() -> Vec<ProjMap> {
    vec![
        ProjMap::diagonal3([zeta3(), o(), o()]),
        ProjMap::diagonal3([o(), zeta3(), o()]),
        ProjMap::diagonal3([o(), o(), zeta3()]),
    ]
}

fn sign_diagonals() -> Vec<ProjMap> {
    vec![diag(-1, 1, 1), diag(1, -1, 1), diag(1, 1, -1)]
}

/// The generators of a catalog group, or `None` for an unknown name.
pub fn generators(name: &str) -> Option<Vec<ProjMap>> {
    let mut g = match name {
        "G_48_50" => vec![diag(-1, 1, -1), diag(1, -1, -1), rho(), varsigma()],
        "G_48_3" => vec![
            diag(-1, 1, -1),
            diag(1, -1, -1),
            rho(),
            m([[z(), i(), z(), z()], [o(), z(), z(), z()], [z(), z(), z(), -i()], [z(), z(), o(), z()]]),
        ],
        "G_96_70" => [sign_diagonals(), vec![rho(), varsigma()]].concat(),
        "G_96_72" => [
            sign_diagonals(),
            vec![rho(), m([[z(), i(), z(), z()], [o(), z(), z(), z()], [z(), z(), z(), i()], [z(), z(), o(), z()]])],
        ]
        .concat(),
        "G_96_227" => vec![diag(-1, 1, -1), diag(1, -1, -1), tau(), sigma()],
        "G_96_227prime" => vec![
            diag(-1, 1, -1),
            diag(1, -1, -1),
            ints([[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]),
            ints([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]]),
        ],
        "G_192_955" => [sign_diagonals(), vec![tau(), sigma()]].concat(),
        "G_192_185" => [
            sign_diagonals(),
            vec![
                m([[z(), z(), z(), i()], [o(), z(), z(), z()], [z(), o(), z(), z()], [z(), z(), o(), z()]]),
                m([[z(), o(), z(), z()], [o(), z(), z(), z()], [z(), z(), i(), z()], [z(), z(), z(), o()]]),
            ],
        ]
        .concat(),
        "G_324_160" => [zeta3_diagonals(), vec![rho(), varsigma()]].concat(),
        "G_324_160prime" => [
            zeta3_diagonals(),
            vec![rho(), ints([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])],
        ]
        .concat(),
        "G_648_704" => [zeta3_diagonals(), vec![tau(), sigma()]].concat(),
        "G_648_704prime" => [
            zeta3_diagonals(),
            vec![
                ints([[0, 0, 0, 1], [-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]),
                ints([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]),
            ],
        ]
        .concat(),
        "G_144_184" => vec![mat_m(), mat_n(), rho(), varsigma(), mat_r()],
        "G_288_1025" => vec![mat_m(), mat_n(), tau(), sigma(), mat_r()],
        "G_576_8654" => vec![mat_m(), mat_n(), mat_l(), tau(), sigma(), mat_r()],
        "H_16" => {
            let (a, b) = (rho(), varsigma());
            vec![mat_m(), mat_n(), b.clone(), a.compose(&b).compose(&a.power(2))]
        }
        "Gamma_12" => {
            let (a, b) = (rho(), varsigma());
            vec![a.compose(&b).compose(&a), b.compose(&mat_m()).compose(&mat_n())]
        }
        "Gamma_64" => vec![
            m([[z(), z(), z(), i()], [o(), z(), z(), z()], [z(), o(), z(), z()], [z(), z(), o(), z()]]),
            m([[z(), -o(), z(), z()], [i(), z(), z(), z()], [z(), z(), z(), i()], [z(), z(), o(), z()]]),
            m([[z(), z(), z(), i()], [z(), z(), -o(), z()], [z(), i(), z(), z()], [o(), z(), z(), z()]]),
        ],
        _ => return None,
    };
    g.dedup();
    Some(g)
}

/// Generators as raw (unnormalized) matrices of linear lifts, for the groups of
/// `GL_4` whose invariants are studied directly.
pub fn lifted_generators(name: &str) -> Option<Vec<Vec<Vec<CycNum>>>> {
    let raw = |p: ProjMap| p.matrix().clone();
    let (a, b) = (rho(), varsigma());
    let diag_raw = |d: [i64; 4]| -> Vec<Vec<CycNum>> {
        (0..4).map(|r| (0..4).map(|c| if r == c { int(d[r]) } else { z() }).collect()).collect()
    };
    let base = vec![diag_raw([-1, 1, -1, 1]), diag_raw([-1, -1, 1, 1])];
    Some(match name {
        "H_hat" => [base, vec![raw(b.clone()), raw(a.compose(&b).compose(&a.power(2)))]].concat(),
        "G_hat" => [base, vec![raw(a), raw(b)]].concat(),
        "G_96_227_hat" => [base, vec![raw(tau()), raw(sigma())]].concat(),
        "G_144_184_hat" => [base, vec![raw(a), raw(b), r_matrix()]].concat(),
        _ => return None,
    })
}

/// Names accepted by [`lifted_generators`].
pub const LIFTED_GROUPS: [&str; 4] = ["H_hat", "G_hat", "G_96_227_hat", "G_144_184_hat"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgroup::group_closure;

    #[test]
    fn small_groups_close() {
        for (name, order) in [("G_48_50", 48), ("H_16", 16), ("Gamma_12", 12), ("Gamma_64", 64)] {
            let g = group_closure(&generators(name).unwrap(), 10_000).unwrap();
            assert_eq!(g.order(), order, "{name}");
        }
    }

    #[test]
    fn r_has_order_three() {
        assert_eq!(mat_r().order(10), Some(3));
    }
}
