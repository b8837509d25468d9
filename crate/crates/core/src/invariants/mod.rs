//! Invariant theory of finite subgroups of `GL_4`.
//!
//! A group acts on forms by `(g.f)(x) = f(g^-1 x)`, so that the zero set of
//! `g.f` is the image of the zero set of `f`. Invariants are found with the
//! averaging (Reynolds) projector, and one-dimensional characters as common
//! eigenvectors of the generators.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{self, groups};
use crate::exactmath::linalg::{self, Matrix};
use crate::exactmath::{monomials, CycNum, Form, FormSpan, MathError, DEFAULT_CONDUCTOR};
use crate::projgroup::ProjMap;

/// Largest group the closure will enumerate.
pub const LIFTED_CAP: usize = 5_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InvariantError {
    #[error("unknown lifted group `{0}`")]
    UnknownGroup(String),
    #[error("closure exceeded {0} elements")]
    CapExceeded(usize),
    #[error("generator {0} is not diagonalizable over the cyclotomic field of conductor {1}")]
    ConductorTooSmall(usize, u32),
    #[error(transparent)]
    Math(#[from] MathError),
}

/// A finite matrix group in `GL_4`, kept without projective normalization.
#[derive(Clone, Debug)]
pub struct LiftedGroup {
    pub name: String,
    generators: Vec<Matrix>,
    elements: Vec<Matrix>,
    inverses: Vec<Matrix>,
}

impl LiftedGroup {
    /// Closes `generators` under multiplication.
    pub fn new(name: &str, generators: Vec<Matrix>) -> Result<LiftedGroup, InvariantError> {
        let n = generators.first().map_or(4, |g| g.len());
        let id = linalg::identity(n);
        let mut elements = vec![id.clone()];
        let mut seen = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for g in &generators {
                let h = linalg::mat_mul(g, &elements[k]);
                if !seen.contains_key(&h) {
                    if elements.len() >= LIFTED_CAP {
                        return Err(InvariantError::CapExceeded(LIFTED_CAP));
                    }
                    seen.insert(h.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        let inverses = elements.iter().map(|e| linalg::inverse(e)).collect::<Result<_, _>>()?;
        Ok(LiftedGroup { name: name.to_string(), generators, elements, inverses })
    }

    /// One of the named lifts (`H_hat`, `G_hat`, `G_96_227_hat`,
    /// `G_144_184_hat`), or a catalog group lifted through the normalized
    /// matrices of its generators.
    pub fn named(name: &str) -> Result<LiftedGroup, InvariantError> {
        if let Some(gens) = groups::lifted_generators(name) {
            return LiftedGroup::new(name, gens);
        }
        let gens = groups::generators(name).ok_or_else(|| InvariantError::UnknownGroup(name.to_string()))?;
        LiftedGroup::from_projective(name, &gens)
    }

    pub fn from_projective(name: &str, gens: &[ProjMap]) -> Result<LiftedGroup, InvariantError> {
        LiftedGroup::new(name, gens.iter().map(|g| g.matrix().clone()).collect())
    }

    pub fn trivial() -> LiftedGroup {
        LiftedGroup::new("trivial", vec![linalg::identity(4)]).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.elements.contains(m)
    }

    pub fn contains_group(&self, other: &LiftedGroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }
}

/// `(g.f)(x) = f(g^-1 x)`, with `g` given by its inverse matrix.
fn act_by_inverse(g_inv: &Matrix, f: &Form) -> Result<Form, MathError> {
    f.linear_substitute(g_inv)
}

/// The action of the matrix `g` on a form.
pub fn act(g: &Matrix, f: &Form) -> Result<Form, MathError> {
    act_by_inverse(&linalg::inverse(g)?, f)
}

/// The averaging projector `(1/|G|) sum_g g.f`.
pub fn reynolds(g: &LiftedGroup, f: &Form) -> Result<Form, MathError> {
    let mut acc = Form::zero(f.nvars(), f.degree());
    for inv in &g.inverses {
        acc = acc.add(&act_by_inverse(inv, f)?);
    }
    Ok(acc.scale(&CycNum::from_rational(crate::exactmath::rat(1, g.order() as i64))))
}

/// A basis of the degree-`d` invariants, obtained by averaging every
/// monomial and row-reducing.
pub fn invariant_basis(g: &LiftedGroup, d: u32) -> Result<Vec<Form>, MathError> {
    let n = g.generators.first().map_or(4, |m| m.len());
    let averaged: Vec<Form> = monomials(n, d)
        .into_par_iter()
        .map(|m| reynolds(g, &Form::monomial(n, &m.0[..n], CycNum::one())))
        .collect::<Result<_, _>>()?;
    let mut span = FormSpan::new(n, d);
    for f in &averaged {
        span.insert(f)?;
    }
    Ok(span.basis())
}

/// A one-dimensional character, recorded by its values on the generators.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Character {
    pub values: Vec<CycNum>,
    /// `values[k] = zeta_24^exponents[k]`.
    pub exponents: Vec<u32>,
}

impl Character {
    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterBlock {
    pub character: Character,
    pub basis: Vec<Form>,
}

/// The one-dimensional isotypic pieces of a space of forms, plus the total
/// dimension of what is left (sums of irreducibles of dimension at least two).
#[derive(Clone, Debug, Serialize)]
pub struct CharacterSplit {
    pub degree: u32,
    pub ambient_dim: usize,
    pub blocks: Vec<CharacterBlock>,
    pub higher_dim: usize,
}

impl CharacterSplit {
    pub fn trivial_dim(&self) -> usize {
        self.blocks.iter().filter(|b| b.character.is_trivial()).map(|b| b.basis.len()).sum()
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &CharacterBlock> {
        self.blocks.iter().filter(|b| !b.character.is_trivial())
    }
}

fn root_table() -> Vec<CycNum> {
    (0..DEFAULT_CONDUCTOR as i64).map(|k| CycNum::root_of_unity(DEFAULT_CONDUCTOR, k)).collect()
}

fn root_exponent(c: &CycNum) -> Option<u32> {
    root_table().iter().position(|r| r == c).map(|k| k as u32)
}

/// Coordinates of `f` with respect to `basis`, which must span it.
fn coordinates(basis: &[Form], f: &Form) -> Result<Vec<CycNum>, MathError> {
    let mons: Vec<_> = {
        let mut all: Vec<_> = basis.iter().chain(std::iter::once(f)).flat_map(|b| b.terms().iter().map(|(m, _)| *m)).collect();
        all.sort();
        all.dedup();
        all
    };
    let m: Matrix = mons.iter().map(|mo| basis.iter().map(|b| b.coeff(mo)).collect()).collect();
    let rhs: Vec<CycNum> = mons.iter().map(|mo| f.coeff(mo)).collect();
    linalg::solve(&m, &rhs).ok_or_else(|| MathError::Degenerate("form outside the invariant subspace".into()))
}

fn combine(basis: &[Form], coeffs: &[CycNum]) -> Form {
    let mut acc = Form::zero(basis[0].nvars(), basis[0].degree());
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// Splits the degree-`d` forms (or only the `H_hat`-invariants when `g`
/// contains that group) into common eigenspaces of the generators.
pub fn semi_invariant_split(g: &LiftedGroup, d: u32) -> Result<CharacterSplit, InvariantError> {
    let h = LiftedGroup::named("H_hat")?;
    let space = if g.contains_group(&h) {
        invariant_basis(&h, d)?
    } else {
        monomials(4, d).into_iter().map(|m| Form::monomial(4, &m.0[..4], CycNum::one())).collect()
    };
    split_space(g, &space, d)
}

/// Common eigenspaces of the generators of `g` acting on the span of `space`,
/// which must be `g`-stable.
pub fn split_space(g: &LiftedGroup, space: &[Form], d: u32) -> Result<CharacterSplit, InvariantError> {
    let n = space.len();
    let roots = root_table();
    // Matrices of the generators on `space`, acting on column vectors.
    let mut actions = Vec::new();
    for gen in &g.generators {
        let inv = linalg::inverse(gen)?;
        let images: Vec<Vec<CycNum>> =
            space.iter().map(|f| coordinates(space, &act_by_inverse(&inv, f)?)).collect::<Result<_, _>>()?;
        actions.push(linalg::transpose(&images));
    }
    // Eigen-decomposition of each generator, checked for diagonalizability.
    let mut eigen: Vec<Vec<(u32, Vec<Vec<CycNum>>)>> = Vec::new();
    for (k, a) in actions.iter().enumerate() {
        let mut spaces = Vec::new();
        let mut total = 0;
        for (e, r) in roots.iter().enumerate() {
            let shifted: Matrix = (0..n)
                .map(|i| (0..n).map(|j| if i == j { &a[i][j] - r } else { a[i][j].clone() }).collect())
                .collect();
            let ker = linalg::kernel(&shifted, n);
            if !ker.is_empty() {
                total += ker.len();
                spaces.push((e as u32, ker));
            }
        }
        if total != n {
            return Err(InvariantError::ConductorTooSmall(k, DEFAULT_CONDUCTOR));
        }
        eigen.push(spaces);
    }
    // Intersect eigenspaces generator by generator.
    let mut partial: Vec<(Vec<u32>, Vec<Vec<CycNum>>)> = vec![(vec![], (0..n).map(|i| unit(n, i)).collect())];
    for spaces in &eigen {
        let mut next = Vec::new();
        for (exps, basis) in &partial {
            for (e, eig) in spaces {
                let meet = intersect(basis, eig, n);
                if !meet.is_empty() {
                    let mut ex = exps.clone();
                    ex.push(*e);
                    next.push((ex, meet));
                }
            }
        }
        partial = next;
    }
    let blocks: Vec<CharacterBlock> = partial
        .into_iter()
        .map(|(exps, vecs)| CharacterBlock {
            character: Character { values: exps.iter().map(|&e| roots[e as usize].clone()).collect(), exponents: exps },
            basis: vecs.iter().map(|v| combine(space, v)).collect(),
        })
        .collect();
    let found: usize = blocks.iter().map(|b| b.basis.len()).sum();
    Ok(CharacterSplit { degree: d, ambient_dim: n, blocks, higher_dim: n - found })
}

fn unit(n: usize, i: usize) -> Vec<CycNum> {
    (0..n).map(|j| if i == j { CycNum::one() } else { CycNum::zero() }).collect()
}

/// A basis of the intersection of two subspaces of `K^n`.
fn intersect(a: &[Vec<CycNum>], b: &[Vec<CycNum>], n: usize) -> Vec<Vec<CycNum>> {
    // Solve sum x_i a_i - sum y_j b_j = 0.
    let cols = a.len() + b.len();
    let m: Matrix = (0..n)
        .map(|r| a.iter().map(|v| v[r].clone()).chain(b.iter().map(|v| -v[r].clone())).collect())
        .collect();
    linalg::kernel(&m, cols)
        .into_iter()
        .map(|k| {
            (0..n)
                .map(|r| a.iter().zip(&k).fold(CycNum::zero(), |acc, (v, x)| &acc + &(&v[r] * x)))
                .collect()
        })
        .collect()
}

/// The character of `f` if every generator scales it, else `None`.
pub fn is_semi_invariant(g: &LiftedGroup, f: &Form) -> Result<Option<Character>, MathError> {
    let mut values = Vec::new();
    let mut exponents = Vec::new();
    for gen in &g.generators {
        let image = act(gen, f)?;
        let Some(c) = image.ratio_to(f) else { return Ok(None) };
        exponents.push(root_exponent(&c).unwrap_or(u32::MAX));
        values.push(c);
    }
    Ok(Some(Character { values, exponents }))
}

/// Whether every map sends the span of `forms` to itself (as zero sets move
/// under `push_forward`).
pub fn preserves_span(maps: &[ProjMap], forms: &[Form]) -> Result<bool, MathError> {
    let span = FormSpan::from_forms(forms)?;
    for g in maps {
        for f in forms {
            if !span.contains(&g.push_forward(f)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Catalog lift of a projective group: shorthand used by the command line.
pub fn lifted(name: &str) -> Result<LiftedGroup, InvariantError> {
    if catalog::expected_order(name).is_none() && groups::lifted_generators(name).is_none() {
        return Err(InvariantError::UnknownGroup(name.to_string()));
    }
    LiftedGroup::named(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::surface;

    #[test]
    fn lift_orders() {
        for (name, order) in [("H_hat", 32), ("G_hat", 96), ("G_96_227_hat", 192), ("G_144_184_hat", 288)] {
            assert_eq!(LiftedGroup::named(name).unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn quartic_invariants_of_h() {
        let h = LiftedGroup::named("H_hat").unwrap();
        assert_eq!(invariant_basis(&h, 4).unwrap().len(), 5);
        assert_eq!(invariant_basis(&h, 1).unwrap().len(), 0);
    }

    #[test]
    fn trivial_group_split() {
        let s = semi_invariant_split(&LiftedGroup::trivial(), 2).unwrap();
        assert_eq!(s.blocks.len(), 1);
        assert_eq!(s.trivial_dim(), 10);
    }

    #[test]
    fn product_form_is_semi_invariant() {
        let g = LiftedGroup::named("G_hat").unwrap();
        let t = crate::catalog::surfaces::product_form();
        assert!(is_semi_invariant(&g, &t).unwrap().is_some());
        assert!(is_semi_invariant(&g, &Form::var(4, 0)).unwrap().is_none());
        assert!(is_semi_invariant(&g, &surface("Q1").unwrap()).unwrap().unwrap().is_trivial());
    }
}

#[cfg(test)]
mod quartic_splits {
    use super::*;
    use crate::catalog::surface;

    #[test]
    fn splits_of_the_quartic_invariants() {
        let g = semi_invariant_split(&LiftedGroup::named("G_hat").unwrap(), 4).unwrap();
        assert_eq!((g.trivial_dim(), g.nontrivial().count(), g.higher_dim), (3, 2, 0));
        let g96 = semi_invariant_split(&LiftedGroup::named("G_96_227_hat").unwrap(), 4).unwrap();
        assert_eq!((g96.trivial_dim(), g96.nontrivial().count(), g96.higher_dim), (3, 0, 2));
        let g144 = semi_invariant_split(&LiftedGroup::named("G_144_184_hat").unwrap(), 4).unwrap();
        assert_eq!(g144.blocks.len(), 5);
        assert!(g144.blocks.iter().all(|b| b.basis.len() == 1));
        let expected = [surface("Q1").unwrap().pow(2), surface("f2").unwrap(), surface("f3").unwrap(), surface("f4").unwrap(), surface("f5").unwrap()];
        for f in &expected {
            assert_eq!(g144.blocks.iter().filter(|b| b.basis[0].ratio_to(f).is_some()).count(), 1, "{f}");
        }
    }
}
