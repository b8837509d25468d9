//! Named surfaces: the ten fundamental quadrics, the invariant quartics and
//! the three desmic tetrahedra.

use serde::Serialize;

use crate::exactmath::consts::{int, sqrt3_i};
use crate::exactmath::{tetrahedra_planes, CycNum, Form, Mono};

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceEntry {
    pub name: String,
    pub form: Form,
    /// A catalog group whose generators pull the form back to multiples of itself.
    pub invariant_under: &'static str,
}

pub const SURFACE_NAMES: [&str; 23] = [
    "Q1", "Q2", "Q3", "Q4", "Q5", "Q6", "Q7", "Q8", "Q9", "Q10", "f1", "f2", "f3", "f4", "f5", "T", "Tprime",
    "Tprimeprime", "fermat", "P4_a", "P4_b", "sigma22", "sigma4",
];

/// Builds a quaternary form from `(coefficient, exponents)` pairs.
pub(crate) fn form4(terms: &[(CycNum, [u16; 4])]) -> Form {
    let deg = terms.first().map_or(0, |(_, e)| e.iter().map(|&x| x as u32).sum());
    Form::from_terms(4, deg, terms.iter().map(|(c, e)| (Mono::from_slice(e), c.clone()))).expect("homogeneous data")
}

fn ints(terms: &[(i64, [u16; 4])]) -> Form {
    form4(&terms.iter().map(|(c, e)| (int(*c), *e)).collect::<Vec<_>>())
}

fn sq(i: usize) -> [u16; 4] {
    let mut e = [0; 4];
    e[i] = 2;
    e
}

fn pair(i: usize, j: usize) -> [u16; 4] {
    let mut e = [0; 4];
    e[i] += 1;
    e[j] += 1;
    e
}

fn sq_pair(i: usize, j: usize) -> [u16; 4] {
    let mut e = [0; 4];
    e[i] = 2;
    e[j] = 2;
    e
}

/// `x0 x1 x2 x3`.
pub fn product_form() -> Form {
    ints(&[(1, [1, 1, 1, 1])])
}

/// `sum_{i<j} x_i^2 x_j^2`.
pub fn sigma22() -> Form {
    let mut t = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            t.push((1, sq_pair(a, b)));
        }
    }
    ints(&t)
}

/// `sum x_i^4`.
pub fn sigma4() -> Form {
    ints(&(0..4).map(|k| (1, { let mut e = [0; 4]; e[k] = 4; e })).collect::<Vec<_>>())
}

fn quadric(name: &str) -> Option<Form> {
    Some(match name {
        "Q1" => ints(&[(1, sq(0)), (1, sq(1)), (1, sq(2)), (1, sq(3))]),
        "Q2" => ints(&[(1, sq(0)), (1, sq(1)), (-1, sq(2)), (-1, sq(3))]),
        "Q3" => ints(&[(1, sq(0)), (-1, sq(1)), (-1, sq(2)), (1, sq(3))]),
        "Q4" => ints(&[(1, sq(0)), (-1, sq(1)), (1, sq(2)), (-1, sq(3))]),
        "Q5" => ints(&[(1, pair(0, 2)), (1, pair(1, 3))]),
        "Q6" => ints(&[(1, pair(0, 3)), (1, pair(1, 2))]),
        "Q7" => ints(&[(1, pair(0, 1)), (1, pair(2, 3))]),
        "Q8" => ints(&[(1, pair(0, 2)), (-1, pair(1, 3))]),
        "Q9" => ints(&[(1, pair(0, 3)), (-1, pair(1, 2))]),
        "Q10" => ints(&[(1, pair(0, 1)), (-1, pair(2, 3))]),
        _ => return None,
    })
}

/// The G_144_184-invariant quartics: the quadric `f1` and the four quartics `f2..f5`.
fn invariant_form(name: &str) -> Option<Form> {
    let s = sqrt3_i();
    let base23 = sigma22().scale(&int(2)).sub(&sigma4());
    let p = product_form().scale(&(&int(8) * &s));
    let a = ints(&[(1, sq_pair(0, 2)), (-1, sq_pair(0, 3)), (-1, sq_pair(1, 2)), (1, sq_pair(1, 3))]);
    let b = ints(&[(1, sq_pair(0, 1)), (-1, sq_pair(0, 2)), (-1, sq_pair(1, 3)), (1, sq_pair(2, 3))]);
    let b2 = b.scale(&int(-2));
    Some(match name {
        "f1" => quadric("Q1")?,
        "f2" => base23.add(&p),
        "f3" => base23.sub(&p),
        "f4" => a.scale(&(&int(-1) + &s)).add(&b2),
        "f5" => a.scale(&(&int(-1) - &s)).add(&b2),
        _ => return None,
    })
}

fn product_of(forms: &[Form]) -> Form {
    forms.iter().skip(1).fold(forms[0].clone(), |acc, f| acc.mul(f))
}

pub fn surface(name: &str) -> Option<Form> {
    if let Some(q) = quadric(name) {
        return Some(q);
    }
    if let Some(f) = invariant_form(name) {
        return Some(f);
    }
    let planes = tetrahedra_planes();
    Some(match name {
        "T" => product_of(&planes[0..4]),
        "Tprime" => product_of(&planes[4..8]),
        "Tprimeprime" => product_of(&planes[8..12]),
        "fermat" => sigma4(),
        "P4_a" => ints(&[(1, sq_pair(1, 2)), (-1, sq_pair(0, 1)), (-1, sq_pair(0, 3)), (-1, sq_pair(2, 3))]),
        "P4_b" => ints(&[(1, [4, 0, 0, 0]), (-1, [0, 4, 0, 0]), (1, [0, 0, 4, 0]), (-1, [0, 0, 0, 4])]),
        "sigma22" => sigma22(),
        "sigma4" => sigma4(),
        _ => return None,
    })
}

pub fn entry(name: &str) -> Option<SurfaceEntry> {
    let form = surface(name)?;
    let invariant_under = match name {
        n if n.starts_with('Q') => "H_16",
        "f1" | "f2" | "f3" | "f4" | "f5" => "G_144_184",
        "T" | "Tprime" | "Tprimeprime" | "sigma22" | "sigma4" => "G_48_50",
        _ => "Gamma_64",
    };
    Some(SurfaceEntry { name: name.to_string(), form, invariant_under })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_names_resolve() {
        for n in SURFACE_NAMES {
            assert!(entry(n).is_some(), "{n}");
        }
        assert!(entry("Q11").is_none());
    }

    #[test]
    fn degrees() {
        assert_eq!(surface("Q7").unwrap().degree(), 2);
        assert_eq!(surface("f4").unwrap().degree(), 4);
        assert_eq!(surface("Tprime").unwrap().degree(), 4);
    }
}
