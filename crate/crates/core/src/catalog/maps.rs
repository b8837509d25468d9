//! Coordinate formulas of the explicit rational maps.

use serde::Serialize;

use crate::exactmath::consts::int;
use crate::exactmath::{CycNum, Form, Mono};

/// Where a map starts or lands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    /// Projective space with this many homogeneous coordinates.
    Projective(usize),
    /// `P^1 x P^1 x P^1` with coordinates `u1, v1, u2, v2, u3, v3`.
    P1Cubed,
    /// The double cover `w^2 = x0 x1 x2 x3` inside `P(1,1,1,1,2)`.
    DoubleCover,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapEntry {
    pub name: String,
    pub source: Space,
    pub target: Space,
    pub components: Vec<Form>,
}

pub const MAP_NAMES: [&str; 10] =
    ["iota", "iota_prime", "iota_double_prime", "psi", "omega", "zeta", "xi", "eta1", "eta2", "eta3"];

fn mono(nvars: usize, e: &[u16]) -> Form {
    Form::monomial(nvars, e, CycNum::one())
}

/// The standard Cremona involution twisted by `lambda`.
pub fn cremona(lambda: &[CycNum; 3]) -> Vec<Form> {
    vec![
        Form::monomial(4, &[0, 1, 1, 1], lambda[0].clone()),
        Form::monomial(4, &[1, 0, 1, 1], lambda[1].clone()),
        Form::monomial(4, &[1, 1, 0, 1], lambda[2].clone()),
        mono(4, &[1, 1, 1, 0]),
    ]
}

/// The cubic involutions conjugate to the Cremona involution; `sign` is the
/// coefficient of the product term.
fn cubic_involution(sign: i64) -> Vec<Form> {
    (0..4)
        .map(|k| {
            let others: Vec<usize> = (0..4).filter(|&j| j != k).collect();
            let mut terms = Vec::new();
            let mut e = [0u16; 4];
            e[k] = 3;
            terms.push((Mono::from_slice(&e), int(1)));
            for &j in &others {
                let mut e = [0u16; 4];
                e[k] = 1;
                e[j] = 2;
                terms.push((Mono::from_slice(&e), int(-1)));
            }
            let mut e = [1u16; 4];
            e[k] = 0;
            terms.push((Mono::from_slice(&e), int(2 * sign)));
            Form::from_terms(4, 3, terms).expect("cubic")
        })
        .collect()
}

/// Exponents of the fourteen sextic monomials of `psi`, in order.
pub const PSI_EXPONENTS: [[u16; 4]; 14] = [
    [2, 2, 2, 0],
    [3, 1, 1, 1],
    [2, 2, 1, 1],
    [1, 3, 1, 1],
    [2, 2, 0, 2],
    [2, 1, 2, 1],
    [1, 2, 2, 1],
    [2, 1, 1, 2],
    [1, 2, 1, 2],
    [1, 1, 3, 1],
    [2, 0, 2, 2],
    [1, 1, 2, 2],
    [0, 2, 2, 2],
    [1, 1, 1, 3],
];

/// Exponents of `omega` in `u1, v1, u2, v2, u3, v3`, in order.
pub const OMEGA_EXPONENTS: [[u16; 6]; 14] = [
    [2, 0, 2, 0, 2, 0],
    [2, 0, 2, 0, 0, 2],
    [2, 0, 1, 1, 1, 1],
    [2, 0, 0, 2, 2, 0],
    [2, 0, 0, 2, 0, 2],
    [1, 1, 2, 0, 1, 1],
    [1, 1, 1, 1, 2, 0],
    [1, 1, 1, 1, 0, 2],
    [1, 1, 0, 2, 1, 1],
    [0, 2, 2, 0, 2, 0],
    [0, 2, 2, 0, 0, 2],
    [0, 2, 1, 1, 1, 1],
    [0, 2, 0, 2, 2, 0],
    [0, 2, 0, 2, 0, 2],
];

pub fn psi_components() -> Vec<Form> {
    PSI_EXPONENTS.iter().map(|e| mono(4, e)).collect()
}

pub fn omega_components() -> Vec<Form> {
    OMEGA_EXPONENTS.iter().map(|e| mono(6, e)).collect()
}

fn weighted_mono(e: &[u16]) -> Form {
    Form::weighted_from_terms(5, 0, [(Mono::from_slice(e), CycNum::one())]).expect("monomial")
}

pub fn entry(name: &str) -> Option<MapEntry> {
    let p3 = Space::Projective(4);
    let (source, target, components) = match name {
        "iota" => (p3, p3, cremona(&[int(1), int(1), int(1)])),
        "iota_prime" => (p3, p3, cubic_involution(-1)),
        "iota_double_prime" => (p3, p3, cubic_involution(1)),
        "psi" => (p3, Space::Projective(14), psi_components()),
        "omega" => (Space::P1Cubed, Space::Projective(14), omega_components()),
        "zeta" => {
            let w = weighted_mono(&[0, 0, 0, 0, 1]);
            let c = vec![
                weighted_mono(&[1, 1, 0, 0, 0]),
                w.clone(),
                weighted_mono(&[1, 0, 1, 0, 0]),
                w.clone(),
                weighted_mono(&[0, 1, 1, 0, 0]),
                w,
            ];
            (Space::DoubleCover, Space::P1Cubed, c)
        }
        "xi" => (Space::DoubleCover, p3, (0..4).map(|k| weighted_mono(&Mono::var(k).0[..5])).collect()),
        "eta1" => (p3, Space::Projective(2), vec![mono(4, &[1, 1, 0, 0]), mono(4, &[0, 0, 1, 1])]),
        "eta2" => (p3, Space::Projective(2), vec![mono(4, &[1, 0, 1, 0]), mono(4, &[0, 1, 0, 1])]),
        "eta3" => (p3, Space::Projective(2), vec![mono(4, &[0, 1, 1, 0]), mono(4, &[1, 0, 0, 1])]),
        _ => return None,
    };
    Some(MapEntry { name: name.to_string(), source, target, components })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involution_formulas() {
        let f = cubic_involution(-1);
        assert_eq!(f[0].to_string(), "x0^3 + -1*x0*x1^2 + -1*x0*x2^2 + -1*x0*x3^2 + -2*x1*x2*x3");
        assert_eq!(entry("psi").unwrap().components.len(), 14);
        assert!(entry("psi").unwrap().components.iter().all(|c| c.degree() == 6));
        assert!(entry("omega").unwrap().components.iter().all(|c| c.degree() == 6));
        assert!(entry("zeta").unwrap().components.iter().all(|c| c.degree() == 2));
    }
}
