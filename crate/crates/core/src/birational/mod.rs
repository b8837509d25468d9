//! Rational self-maps of projective space given by tuples of forms:
//! composition with fixed-component clearing, pullback of linear systems,
//! multiplicities at orbits and along curves, the untwisting ledger and the
//! decomposition of maps into the three cubic involutions.

use serde::Serialize;

use crate::catalog::{self, CatalogError, CurveCatalogEntry};
use crate::exactmath::{
    form_gcd, vanishing_order_along_line, vanishing_order_at_point, CycNum, Form, FormSpan, MathError, ProjPoint,
    SeededRng,
};
use crate::projgroup::{GroupError, MatrixGroup, OrbitRecord, ProjMap};

mod diagram;
mod ledger;

pub use diagram::{verify_quotient_diagram, ContractionCheck, DiagramReport};
pub use ledger::{
    compose_with_letter, sarkisov_decompose, untwist_ledger, word_map, Decomposition, Letter, SarkisovWord,
    UntwistLedger, DEFAULT_MAX_STEPS,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BirationalError {
    #[error(transparent)]
    Math(#[from] MathError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("bad map: {0}")]
    BadMap(String),
    #[error("every component vanishes after substitution: the inner map lands in the indeterminacy locus")]
    Degenerate,
    #[error("could not find {0} sample points off the indeterminacy loci")]
    Sampling(usize),
    #[error("the linear system has a fixed component of degree {0}")]
    FixedComponent(u32),
    #[error("the linear system is not invariant: {0}")]
    NotInvariant(String),
    #[error("no untwisting inequality holds at degree {0}; the map is outside the group")]
    NoPredicate(u32),
    #[error("several untwisting inequalities hold at degree {n}: {which:?}")]
    SeveralPredicates { n: u32, which: Vec<Letter> },
    #[error("the degree did not drop ({from} -> {to})")]
    DegreeDidNotDrop { from: u32, to: u32 },
    #[error("no decomposition within {0} steps")]
    TooManySteps(usize),
}

type Result<T> = std::result::Result<T, BirationalError>;

/// A rational map `P^(s-1) --> P^(t-1)` given by `t` forms of a common degree
/// in `s` variables, with no common factor.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RationalMap {
    source_vars: usize,
    target_vars: usize,
    components: Vec<Form>,
    degree: u32,
}

/// Divides out the common factor of the nonzero forms. Zero forms stay zero
/// but take the new degree.
fn clear_common_factor(forms: Vec<Form>) -> Result<Vec<Form>> {
    let nonzero: Vec<&Form> = forms.iter().filter(|f| !f.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return Err(BirationalError::Degenerate);
    };
    let nvars = first.nvars();
    let content = nonzero.iter().skip(1).fold(first.monomial_content(), |acc, f| acc.gcd(&f.monomial_content()));
    let mut out: Vec<Form> = forms.iter().map(|f| if f.is_zero() { f.clone() } else { f.divide_mono(&content) }).collect();
    let rest: Vec<Form> = out.iter().filter(|f| !f.is_zero()).cloned().collect();
    let g = form_gcd(&rest)?;
    if g.degree() > 0 {
        for f in out.iter_mut().filter(|f| !f.is_zero()) {
            *f = f.exact_div(&g).ok_or_else(|| BirationalError::BadMap("gcd does not divide".into()))?;
        }
    }
    let d = out.iter().find(|f| !f.is_zero()).map_or(0, |f| f.degree());
    Ok(out.into_iter().map(|f| if f.is_zero() { Form::zero(nvars, d) } else { f }).collect())
}

impl RationalMap {
    /// Checks shape and homogeneity, then clears any common factor.
    pub fn new(components: Vec<Form>) -> Result<RationalMap> {
        let first = components.first().ok_or_else(|| BirationalError::BadMap("no components".into()))?;
        let s = first.nvars();
        if components.iter().any(|f| f.nvars() != s || f.is_weighted()) {
            return Err(BirationalError::BadMap("components must be ordinary forms in the same variables".into()));
        }
        let d = components.iter().find(|f| !f.is_zero()).ok_or(BirationalError::Degenerate)?.degree();
        if components.iter().any(|f| !f.is_zero() && f.degree() != d) {
            return Err(BirationalError::BadMap("components of different degrees".into()));
        }
        let components = clear_common_factor(components)?;
        let degree = components.iter().find(|f| !f.is_zero()).map_or(0, |f| f.degree());
        Ok(RationalMap { source_vars: s, target_vars: components.len(), components, degree })
    }

    pub fn identity(n: usize) -> RationalMap {
        let components = (0..n).map(|k| Form::var(n, k)).collect();
        RationalMap { source_vars: n, target_vars: n, components, degree: 1 }
    }

    /// The map `x -> M x`.
    pub fn from_proj_map(g: &ProjMap) -> RationalMap {
        let components: Vec<Form> = g.matrix().iter().map(|row| Form::linear(row)).collect();
        RationalMap { source_vars: g.dim(), target_vars: g.dim(), components, degree: 1 }
    }

    /// The matrix of a degree-one self-map, if it is invertible.
    pub fn to_proj_map(&self) -> Option<ProjMap> {
        if self.degree != 1 || self.source_vars != self.target_vars {
            return None;
        }
        let n = self.source_vars;
        let m = self
            .components
            .iter()
            .map(|c| (0..n).map(|j| c.coeff(&crate::exactmath::Mono::var(j))).collect())
            .collect();
        ProjMap::new(m).ok()
    }

    /// Cremona involution twisted by `lambda`, `[l1 x1x2x3 : l2 x0x2x3 : l3 x0x1x3 : x0x1x2]`.
    pub fn cremona(lambda: &[CycNum; 3]) -> Result<RationalMap> {
        if lambda.iter().any(|l| l.is_zero()) {
            return Err(BirationalError::BadMap("twist parameters must be nonzero".into()));
        }
        RationalMap::new(catalog::maps::cremona(lambda))
    }

    /// A catalog map whose source is ordinary projective space.
    pub fn named(name: &str) -> Result<RationalMap> {
        let e = catalog::maps::entry(name).ok_or_else(|| CatalogError::UnknownKey(name.to_string()))?;
        if !matches!(e.source, catalog::maps::Space::Projective(_)) {
            return Err(BirationalError::BadMap(format!("`{name}` is not defined on projective space")));
        }
        RationalMap::new(e.components)
    }

    pub fn source_vars(&self) -> usize {
        self.source_vars
    }

    pub fn target_vars(&self) -> usize {
        self.target_vars
    }

    pub fn components(&self) -> &[Form] {
        &self.components
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn eval(&self, x: &[CycNum]) -> Result<Vec<CycNum>> {
        Ok(self.components.iter().map(|c| c.eval(x)).collect::<std::result::Result<_, _>>()?)
    }

    /// The image point, or `None` on the indeterminacy locus.
    pub fn apply(&self, p: &ProjPoint) -> Result<Option<ProjPoint>> {
        let v = self.eval(p.coords())?;
        if v.iter().all(|c| c.is_zero()) {
            return Ok(None);
        }
        Ok(Some(ProjPoint::new(v)?))
    }
}

/// `g o f`: substitutes the components of `f` into those of `g` and clears
/// the common factor.
pub fn map_compose(g: &RationalMap, f: &RationalMap) -> Result<RationalMap> {
    if f.target_vars != g.source_vars {
        return Err(MathError::DimensionMismatch { expected: g.source_vars, got: f.target_vars }.into());
    }
    let comps = g.components.iter().map(|c| c.substitute(&f.components)).collect::<std::result::Result<Vec<_>, _>>()?;
    RationalMap::new(comps)
}

pub(crate) fn proportional(a: &[CycNum], b: &[CycNum]) -> bool {
    a.len() == b.len() && (0..a.len()).all(|i| (i + 1..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

/// Rejection-samples integer points of the source where neither map is
/// indeterminate.
fn sample_points(maps: &[&RationalMap], count: usize, seed: u64) -> Result<Vec<Vec<CycNum>>> {
    let n = maps[0].source_vars;
    let mut rng = SeededRng::new(seed);
    let mut out = Vec::with_capacity(count);
    let mut misses = 0;
    while out.len() < count {
        let x = rng.int_vector(n, 20);
        let mut ok = true;
        for m in maps {
            ok &= m.eval(&x)?.iter().any(|c| !c.is_zero());
        }
        if ok {
            out.push(x);
            misses = 0;
        } else {
            misses += 1;
            if misses >= 64 {
                return Err(BirationalError::Sampling(count));
            }
        }
    }
    Ok(out)
}

/// Whether `f` and `g` agree projectively at `samples` seeded points.
pub fn maps_equal(f: &RationalMap, g: &RationalMap, samples: usize, seed: u64) -> Result<bool> {
    if f.source_vars != g.source_vars || f.target_vars != g.target_vars {
        return Err(MathError::DimensionMismatch { expected: f.source_vars, got: g.source_vars }.into());
    }
    for x in sample_points(&[f, g], samples, seed)? {
        if !proportional(&f.eval(&x)?, &g.eval(&x)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `m h m` is a linear map in `g` for every generator `h` of `g`.
pub fn conjugation_check(m: &RationalMap, g: &MatrixGroup) -> Result<bool> {
    for h in g.generators() {
        let c = map_compose(m, &map_compose(&RationalMap::from_proj_map(h), m)?)?;
        match c.to_proj_map() {
            Some(p) if g.contains(&p) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// A linear system of forms of one degree, kept as an independent basis.
#[derive(Clone, Debug, Serialize)]
pub struct LinearSystem {
    pub degree: u32,
    pub basis: Vec<Form>,
    pub tag: Option<String>,
}

impl LinearSystem {
    /// Extracts an independent basis; fails if the forms share a factor.
    pub fn new(forms: &[Form], tag: Option<String>) -> Result<LinearSystem> {
        let span = FormSpan::from_forms(forms)?;
        let basis = span.basis();
        if basis.is_empty() {
            return Err(BirationalError::BadMap("empty linear system".into()));
        }
        let g = form_gcd(&basis)?;
        if g.degree() > 0 {
            return Err(BirationalError::FixedComponent(g.degree()));
        }
        Ok(LinearSystem { degree: span.degree(), basis, tag })
    }

    /// `|O(1)|` on `P^(n-1)`.
    pub fn hyperplanes(n: usize) -> LinearSystem {
        LinearSystem { degree: 1, basis: (0..n).map(|k| Form::var(n, k)).collect(), tag: Some("|O(1)|".into()) }
    }

    /// The system cut out by the components of a map.
    pub fn of_map(m: &RationalMap) -> Result<LinearSystem> {
        LinearSystem::new(m.components(), Some("pullback of |O(1)|".into()))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Proper transform of `s` under `m`: substitute, clear the common factor of
/// the whole system, and re-extract a basis.
pub fn pullback_system(m: &RationalMap, s: &LinearSystem) -> Result<LinearSystem> {
    let forms = s.basis.iter().map(|f| f.substitute(m.components())).collect::<std::result::Result<Vec<_>, _>>()?;
    let cleared = clear_common_factor(forms)?;
    let tag = s.tag.as_ref().map(|t| format!("pullback of {t}"));
    LinearSystem::new(&cleared, tag)
}

/// Multiplicity of a general member at the points of an orbit; it must be
/// the same at every point.
pub fn system_mult_at_orbit(s: &LinearSystem, orbit: &OrbitRecord) -> Result<u32> {
    let mut value = None;
    for p in &orbit.points {
        let mut m = u32::MAX;
        for f in &s.basis {
            m = m.min(vanishing_order_at_point(f, p)?);
        }
        match value {
            None => value = Some(m),
            Some(v) if v != m => {
                return Err(BirationalError::NotInvariant(format!("multiplicities {v} and {m} on one orbit")));
            }
            _ => {}
        }
    }
    value.ok_or_else(|| BirationalError::BadMap("empty orbit".into()))
}

/// Multiplicity of a general member along a union of lines.
pub fn system_mult_along_curve(s: &LinearSystem, c: &CurveCatalogEntry, seed: u64) -> Result<u32> {
    let lines = c.lines().ok_or_else(|| BirationalError::BadMap(format!("{} is not a union of lines", c.name)))?;
    let mut m = u32::MAX;
    for l in lines {
        for f in &s.basis {
            m = m.min(vanishing_order_along_line(f, l, seed)?);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{curves, groups, points};
    use crate::exactmath::consts::int;

    fn iota() -> RationalMap {
        RationalMap::named("iota").unwrap()
    }

    #[test]
    fn involutions_square_to_identity() {
        let id = RationalMap::identity(4);
        for name in ["iota", "iota_prime", "iota_double_prime"] {
            let m = RationalMap::named(name).unwrap();
            let sq = map_compose(&m, &m).unwrap();
            assert_eq!(sq.degree(), 1, "{name}");
            assert!(maps_equal(&sq, &id, 5, 0).unwrap());
        }
    }

    #[test]
    fn iota_after_iota_prime_has_degree_nine() {
        let m = map_compose(&iota(), &RationalMap::named("iota_prime").unwrap()).unwrap();
        assert_eq!(m.degree(), 9);
    }

    #[test]
    fn conjugates_by_r() {
        let r = RationalMap::from_proj_map(&groups::mat_r());
        let r2 = RationalMap::from_proj_map(&groups::mat_r().power(2));
        let ip = map_compose(&r, &map_compose(&iota(), &r2).unwrap()).unwrap();
        let ipp = map_compose(&r2, &map_compose(&iota(), &r).unwrap()).unwrap();
        assert!(maps_equal(&ip, &RationalMap::named("iota_prime").unwrap(), 20, 1).unwrap());
        assert!(maps_equal(&ipp, &RationalMap::named("iota_double_prime").unwrap(), 20, 2).unwrap());
        assert!(!maps_equal(&iota(), &RationalMap::named("iota_prime").unwrap(), 3, 0).unwrap());
    }

    #[test]
    fn conjugation() {
        let m = RationalMap::cremona(&[int(1), int(1), int(1)]).unwrap();
        assert!(conjugation_check(&m, &catalog::group("G_48_50").unwrap()).unwrap());
        assert!(conjugation_check(&m, &catalog::group("G_96_227").unwrap()).unwrap());
        let cyclic = crate::projgroup::group_closure(&[groups::mat_r()], 10).unwrap();
        assert!(!conjugation_check(&m, &cyclic).unwrap());
    }

    #[test]
    fn pullbacks() {
        let o1 = LinearSystem::hyperplanes(4);
        let cubics = pullback_system(&iota(), &o1).unwrap();
        assert_eq!((cubics.degree, cubics.dim()), (3, 4));
        let back = pullback_system(&iota(), &cubics).unwrap();
        assert_eq!((back.degree, back.dim()), (1, 4));
        let ip = RationalMap::named("iota_prime").unwrap();
        let s = pullback_system(&ip, &o1).unwrap();
        let expected = FormSpan::from_forms(ip.components()).unwrap();
        assert!(FormSpan::from_forms(&s.basis).unwrap().same_as(&expected).unwrap());
    }

    #[test]
    fn multiplicities() {
        let g = catalog::group("G_48_50").unwrap();
        let o1 = LinearSystem::hyperplanes(4);
        let cubics = pullback_system(&iota(), &o1).unwrap();
        let sigma4 = g.orbit(&points::seed("Sigma4").unwrap()).unwrap();
        let sigma4p = g.orbit(&points::seed("Sigma4prime").unwrap()).unwrap();
        assert_eq!(system_mult_at_orbit(&cubics, &sigma4).unwrap(), 2);
        assert_eq!(system_mult_at_orbit(&o1, &sigma4).unwrap(), 0);
        let primed = pullback_system(&RationalMap::named("iota_prime").unwrap(), &o1).unwrap();
        assert_eq!(system_mult_at_orbit(&primed, &sigma4p).unwrap(), 2);
        let l6 = curves::entry("L6").unwrap();
        assert_eq!(system_mult_along_curve(&cubics, &l6, 0).unwrap(), 1);
        assert_eq!(system_mult_along_curve(&o1, &l6, 0).unwrap(), 0);
        let psi = LinearSystem::new(&catalog::systems::basis("psi").unwrap(), None).unwrap();
        assert_eq!(system_mult_along_curve(&psi, &l6, 0).unwrap(), 2);
    }

    #[test]
    fn fixed_component_is_rejected() {
        let x0 = Form::var(4, 0);
        let forms = [x0.mul(&Form::var(4, 1)), x0.mul(&Form::var(4, 2))];
        assert_eq!(LinearSystem::new(&forms, None).unwrap_err(), BirationalError::FixedComponent(1));
    }
}
