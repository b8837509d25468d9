//! The untwisting ledger of a linear system and the decomposition of a map
//! into the involutions `iota`, `iota'`, `iota''` and a linear tail.
//!
//! `iota'` and `iota''` are the conjugates `R iota R^2` and `R^2 iota R` by
//! the order-three element `R`, which sends `Sigma4` to `Sigma4'` and `L6` to
//! `L6'`. Composition with a letter is done in that factored form, and all
//! multiplicities are read off after pulling back by a power of `R`, where
//! the relevant points and lines are coordinate ones.

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use super::{clear_common_factor, maps_equal, BirationalError, LinearSystem, RationalMap, Result};
use crate::catalog::groups::mat_r;
use crate::exactmath::Form;
use crate::projgroup::ProjMap;

pub const DEFAULT_MAX_STEPS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Letter {
    Iota,
    IotaPrime,
    IotaDoublePrime,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::Iota, Letter::IotaPrime, Letter::IotaDoublePrime];

    pub fn as_str(self) -> &'static str {
        match self {
            Letter::Iota => "iota",
            Letter::IotaPrime => "iota_prime",
            Letter::IotaDoublePrime => "iota_double_prime",
        }
    }

    /// The power `a` of `R` with `letter = R^a iota R^-a`.
    fn r_power(self) -> u32 {
        match self {
            Letter::Iota => 0,
            Letter::IotaPrime => 1,
            Letter::IotaDoublePrime => 2,
        }
    }

    /// The coordinate formula from the catalog.
    pub fn map(self) -> RationalMap {
        RationalMap::named(self.as_str()).expect("catalog involution")
    }
}

impl std::fmt::Display for Letter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Letter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Letter::ALL.into_iter().find(|l| l.as_str() == s).ok_or_else(|| format!("unknown involution `{s}`"))
    }
}

fn pull_back_all(forms: &[Form], g: &ProjMap) -> Result<Vec<Form>> {
    Ok(forms.iter().map(|f| g.pull_back(f)).collect::<std::result::Result<_, _>>()?)
}

/// `current o letter`, computed as `current o R^a o iota o R^(3-a)`.
pub fn compose_with_letter(current: &RationalMap, letter: Letter) -> Result<RationalMap> {
    if current.source_vars() != 4 {
        return Err(BirationalError::BadMap("the involutions act on P^3".into()));
    }
    let a = letter.r_power();
    let r = mat_r();
    let mut comps = current.components().to_vec();
    if a > 0 {
        comps = pull_back_all(&comps, &r.power(a))?;
    }
    let iota = Letter::Iota.map();
    comps = comps.iter().map(|f| f.substitute(iota.components())).collect::<std::result::Result<Vec<_>, _>>()?;
    comps = clear_common_factor(comps)?;
    if a > 0 {
        comps = pull_back_all(&comps, &r.power(3 - a))?;
    }
    RationalMap::new(comps)
}

/// The map of a word read as a composition, `w[0] o w[1] o ...`.
pub fn word_map(word: &[Letter]) -> Result<RationalMap> {
    word.iter().try_fold(RationalMap::identity(4), |acc, &l| compose_with_letter(&acc, l))
}

fn ser_ratio<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

/// Degree and multiplicities of a `G_48_50`-invariant system at the three
/// length-four orbits and along the three six-line curves.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UntwistLedger {
    pub n: u32,
    pub m_sigma4: u32,
    pub m_sigma4p: u32,
    pub m_sigma4pp: u32,
    pub m_l6: u32,
    pub m_l6p: u32,
    pub m_l6pp: u32,
    /// `n/2 - m_l6`.
    #[serde(serialize_with = "ser_ratio")]
    pub k: Rational64,
    /// `(6k - n)/4`, the multiplicity on the Fano-Enriques side.
    #[serde(serialize_with = "ser_ratio")]
    pub m_e_phi: Rational64,
}

impl UntwistLedger {
    fn from_mults(n: u32, points: [u32; 3], lines: [u32; 3]) -> UntwistLedger {
        let k = Rational64::new(n as i64, 2) - Rational64::from(lines[0] as i64);
        let m_e_phi = (k * 6 - Rational64::from(n as i64)) / 4;
        UntwistLedger {
            n,
            m_sigma4: points[0],
            m_sigma4p: points[1],
            m_sigma4pp: points[2],
            m_l6: lines[0],
            m_l6p: lines[1],
            m_l6pp: lines[2],
            k,
            m_e_phi,
        }
    }

    fn untwists(&self, line: u32, point: u32) -> bool {
        (4 * line).max(2 * point) > self.n
    }

    /// `max(4 m_L6, 2 m_Sigma4) > n`: composing with `iota` lowers the degree.
    pub fn untwisted_by_iota(&self) -> bool {
        self.untwists(self.m_l6, self.m_sigma4)
    }

    pub fn untwisted_by_iota_prime(&self) -> bool {
        self.untwists(self.m_l6p, self.m_sigma4p)
    }

    pub fn untwisted_by_iota_double_prime(&self) -> bool {
        self.untwists(self.m_l6pp, self.m_sigma4pp)
    }

    /// The letters whose inequality holds.
    pub fn untwisting_letters(&self) -> Vec<Letter> {
        let flags = [self.untwisted_by_iota(), self.untwisted_by_iota_prime(), self.untwisted_by_iota_double_prime()];
        Letter::ALL.into_iter().zip(flags).filter(|(_, f)| *f).map(|(l, _)| l).collect()
    }

    /// The degree after composing with `iota`.
    pub fn degree_after_iota(&self) -> i64 {
        3 * self.n as i64 - 4 * self.m_sigma4 as i64
    }
}

/// Multiplicity at the coordinate points and along the coordinate lines,
/// read off the monomial supports. Both must be the same at all four points
/// and six lines, otherwise the system is not invariant.
fn coordinate_mults(forms: &[Form]) -> Result<(u32, u32)> {
    let mut at_points = [u32::MAX; 4];
    let mut along_lines = [u32::MAX; 6];
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
    for f in forms {
        let d = f.degree();
        for (m, _) in f.terms() {
            for (i, v) in at_points.iter_mut().enumerate() {
                *v = (*v).min(d - m.0[i] as u32);
            }
            // The line through P_a, P_b is cut out by the other two coordinates.
            for (k, &(a, b)) in pairs.iter().enumerate() {
                let order = (0..4).filter(|&j| j != a && j != b).map(|j| m.0[j] as u32).sum::<u32>();
                along_lines[k] = along_lines[k].min(order);
            }
        }
    }
    if at_points.iter().any(|&v| v != at_points[0]) || along_lines.iter().any(|&v| v != along_lines[0]) {
        return Err(BirationalError::NotInvariant(format!(
            "multiplicities {at_points:?} at the coordinate points, {along_lines:?} along the edges"
        )));
    }
    Ok((at_points[0], along_lines[0]))
}

pub fn untwist_ledger(s: &LinearSystem) -> Result<UntwistLedger> {
    if s.basis.iter().any(|f| f.nvars() != 4) {
        return Err(BirationalError::BadMap("the ledger is defined on P^3".into()));
    }
    let r = mat_r();
    let mut points = [0; 3];
    let mut lines = [0; 3];
    for a in 0..3 {
        let forms = if a == 0 { s.basis.clone() } else { pull_back_all(&s.basis, &r.power(a as u32))? };
        (points[a], lines[a]) = coordinate_mults(&forms)?;
    }
    Ok(UntwistLedger::from_mults(s.degree, points, lines))
}

/// A reduced word in the involutions, stored in application order, followed
/// by a linear tail: the map is `tail o letters[k-1] o ... o letters[0]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SarkisovWord {
    pub letters: Vec<Letter>,
    pub tail: ProjMap,
}

impl SarkisovWord {
    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1])
    }

    pub fn to_map(&self) -> Result<RationalMap> {
        self.letters
            .iter()
            .rev()
            .try_fold(RationalMap::from_proj_map(&self.tail), |acc, &l| compose_with_letter(&acc, l))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub word: SarkisovWord,
    /// The ledger of each system met while the degree was above one.
    pub ledgers: Vec<UntwistLedger>,
}

impl Decomposition {
    /// Rebuilds the map from the word and compares it with `m` at seeded points.
    pub fn round_trip(&self, m: &RationalMap, samples: usize, seed: u64) -> Result<bool> {
        maps_equal(&self.word.to_map()?, m, samples, seed)
    }
}

/// Strips involutions off the right of `m` until the degree is one. At each
/// step exactly one untwisting inequality must hold and the degree must drop.
pub fn sarkisov_decompose(m: &RationalMap, max_steps: usize) -> Result<Decomposition> {
    if m.source_vars() != 4 || m.target_vars() != 4 {
        return Err(BirationalError::BadMap("expected a self-map of P^3".into()));
    }
    let mut current = m.clone();
    let mut letters = Vec::new();
    let mut ledgers = Vec::new();
    while current.degree() > 1 {
        if letters.len() >= max_steps {
            return Err(BirationalError::TooManySteps(max_steps));
        }
        let ledger = untwist_ledger(&LinearSystem::of_map(&current)?)?;
        let which = ledger.untwisting_letters();
        let letter = match which.as_slice() {
            [] => return Err(BirationalError::NoPredicate(current.degree())),
            [l] => *l,
            _ => return Err(BirationalError::SeveralPredicates { n: current.degree(), which }),
        };
        let next = compose_with_letter(&current, letter)?;
        if next.degree() >= current.degree() {
            return Err(BirationalError::DegreeDidNotDrop { from: current.degree(), to: next.degree() });
        }
        ledgers.push(ledger);
        letters.push(letter);
        current = next;
    }
    let tail = current.to_proj_map().ok_or_else(|| BirationalError::BadMap("degree-one remainder is singular".into()))?;
    Ok(Decomposition { word: SarkisovWord { letters, tail }, ledgers })
}

#[cfg(test)]
mod tests {
    use super::super::{map_compose, pullback_system, system_mult_at_orbit};
    use super::*;
    use crate::catalog::{self, points};

    #[test]
    fn letters_match_catalog_formulas() {
        for l in Letter::ALL {
            let factored = compose_with_letter(&RationalMap::identity(4), l).unwrap();
            assert_eq!(factored.degree(), 3);
            assert!(maps_equal(&factored, &l.map(), 10, 7).unwrap(), "{l}");
        }
    }

    #[test]
    fn ledgers_of_small_systems() {
        let o1 = LinearSystem::hyperplanes(4);
        let l = untwist_ledger(&o1).unwrap();
        assert_eq!((l.m_sigma4, l.m_l6, l.m_sigma4p, l.m_l6pp), (0, 0, 0, 0));
        assert!(l.untwisting_letters().is_empty());

        let cubics = pullback_system(&Letter::Iota.map(), &o1).unwrap();
        let l = untwist_ledger(&cubics).unwrap();
        assert_eq!((l.n, l.m_sigma4, l.m_l6), (3, 2, 1));
        assert_eq!(l.k, Rational64::new(1, 2));
        assert_eq!(l.untwisting_letters(), [Letter::Iota]);

        let primed = pullback_system(&Letter::IotaPrime.map(), &o1).unwrap();
        let l = untwist_ledger(&primed).unwrap();
        assert_eq!(l.untwisting_letters(), [Letter::IotaPrime]);
        let g = catalog::group("G_48_50").unwrap();
        let orbit = g.orbit(&points::seed("Sigma4prime").unwrap()).unwrap();
        assert_eq!(system_mult_at_orbit(&primed, &orbit).unwrap(), l.m_sigma4p);
    }

    #[test]
    fn decompositions() {
        let d = sarkisov_decompose(&Letter::Iota.map(), DEFAULT_MAX_STEPS).unwrap();
        assert_eq!(d.word.letters, [Letter::Iota]);
        assert!(d.word.tail.is_identity());

        let m = map_compose(&Letter::IotaPrime.map(), &Letter::Iota.map()).unwrap();
        assert_eq!(m.degree(), 9);
        let d = sarkisov_decompose(&m, DEFAULT_MAX_STEPS).unwrap();
        assert_eq!(d.word.letters, [Letter::Iota, Letter::IotaPrime]);
        assert!(d.word.tail.is_identity());
        assert!(d.round_trip(&m, 5, 0).unwrap());

        let r = RationalMap::from_proj_map(&mat_r());
        let d = sarkisov_decompose(&r, DEFAULT_MAX_STEPS).unwrap();
        assert!(d.word.letters.is_empty());
        assert_eq!(d.word.tail, mat_r());
    }

    #[test]
    fn outside_the_group_is_rejected() {
        // A quadro-quadric map fixing none of the length-four orbits.
        let f = |s: &str| Form::parse(s, 4).unwrap();
        let m = RationalMap::new(vec![f("x0*x1"), f("x0*x2"), f("x1*x2"), f("x3^2")]).unwrap();
        assert!(sarkisov_decompose(&m, DEFAULT_MAX_STEPS).is_err());
    }
}
