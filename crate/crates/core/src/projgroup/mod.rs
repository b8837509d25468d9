//! Projective linear maps and finite subgroups of `PGL_4`, with orbits,
//! stabilizers, structural fingerprints and the permutation action on a
//! four-point orbit.

mod fingerprint;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactmath::linalg::{self, Matrix};
use crate::exactmath::{CycNum, Form, MathError, ProjLine, ProjPoint, DEFAULT_CONDUCTOR};

pub use fingerprint::{fingerprint, Fingerprint};

/// Default bound on enumerated group orders.
pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("closure exceeded {0} elements")]
    CapExceeded(usize),
    #[error("singular matrix")]
    Singular,
    #[error("the base points are not preserved by the group")]
    BaseNotInvariant,
    #[error("the base points do not form a single orbit")]
    BaseNotOrbit,
    #[error("bad group descriptor: {0}")]
    Descriptor(String),
    #[error(transparent)]
    Math(#[from] MathError),
}

/// An invertible matrix up to scalars, normalized so that the first nonzero
/// entry in row-major order is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjMap {
    matrix: Matrix,
}

impl ProjMap {
    pub fn new(matrix: Matrix) -> Result<ProjMap, GroupError> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(GroupError::Math(MathError::DimensionMismatch { expected: n, got: 0 }));
        }
        if linalg::det(&matrix).is_zero() {
            return Err(GroupError::Singular);
        }
        Ok(ProjMap::normalized(matrix))
    }

    fn normalized(mut matrix: Matrix) -> ProjMap {
        let pivot = matrix.iter().flatten().find(|c| !c.is_zero()).cloned().expect("nonzero matrix");
        if !pivot.is_one() {
            let inv = pivot.inv().expect("nonzero pivot");
            for row in matrix.iter_mut() {
                for c in row.iter_mut() {
                    if !c.is_zero() {
                        *c = &*c * &inv;
                    }
                }
            }
        }
        ProjMap { matrix }
    }

    pub fn from_ints(rows: &[[i64; 4]; 4]) -> Result<ProjMap, GroupError> {
        ProjMap::new(rows.iter().map(|r| r.iter().map(|&a| CycNum::from_int(a)).collect()).collect())
    }

    /// `diag(a0, a1, a2, 1)`, the shorthand `(a0, a1, a2)` for diagonal elements.
    pub fn diagonal3(a: [CycNum; 3]) -> ProjMap {
        let [a0, a1, a2] = a;
        ProjMap::diagonal(&[a0, a1, a2, CycNum::one()]).expect("nonzero diagonal")
    }

    pub fn diagonal(entries: &[CycNum]) -> Result<ProjMap, GroupError> {
        let n = entries.len();
        let m = (0..n)
            .map(|i| (0..n).map(|j| if i == j { entries[i].clone() } else { CycNum::zero() }).collect())
            .collect();
        ProjMap::new(m)
    }

    pub fn identity(n: usize) -> ProjMap {
        ProjMap { matrix: linalg::identity(n) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// `self * other`: apply `other` first.
    pub fn compose(&self, other: &ProjMap) -> ProjMap {
        ProjMap::normalized(linalg::mat_mul(&self.matrix, &other.matrix))
    }

    pub fn inverse(&self) -> ProjMap {
        ProjMap::normalized(linalg::inverse(&self.matrix).expect("projective maps are invertible"))
    }

    pub fn power(&self, k: u32) -> ProjMap {
        let mut acc = ProjMap::identity(self.dim());
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == linalg::identity(self.dim())
    }

    /// Order in `PGL`, searching up to `limit`.
    pub fn order(&self, limit: u32) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.compose(self);
        }
        None
    }

    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint, MathError> {
        p.apply(&self.matrix)
    }

    pub fn apply_line(&self, l: &ProjLine) -> Result<ProjLine, MathError> {
        l.apply(&self.matrix)
    }

    /// `self * h * self^-1`.
    pub fn conjugate(&self, h: &ProjMap) -> ProjMap {
        self.compose(h).compose(&self.inverse())
    }

    /// `f(g x)`: the equation of the preimage `g^-1(V(f))`.
    pub fn pull_back(&self, f: &Form) -> Result<Form, MathError> {
        f.linear_substitute(&self.matrix)
    }

    /// `f(g^-1 x)`: the equation of the image `g(V(f))`.
    pub fn push_forward(&self, f: &Form) -> Result<Form, MathError> {
        f.linear_substitute(self.inverse().matrix())
    }

    /// Whether every coordinate point is sent to a coordinate point.
    pub fn is_monomial(&self) -> bool {
        self.matrix.iter().all(|r| r.iter().filter(|c| !c.is_zero()).count() == 1)
    }
}

impl fmt::Display for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|r| {
                let cells: Vec<String> = r
                    .iter()
                    .map(|c| match c.as_rational() {
                        Some(q) if q.denom() == &1.into() => q.numer().to_string(),
                        _ => c.to_string(),
                    })
                    .collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ProjMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.matrix.serialize(s)
    }
}

/// A finite subgroup of `PGL_n` with all elements enumerated.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    generators: Vec<ProjMap>,
    elements: Vec<ProjMap>,
    index: HashMap<ProjMap, usize>,
    name: Option<String>,
}

/// Breadth-first closure of the generators under multiplication.
pub fn group_closure(gens: &[ProjMap], cap: usize) -> Result<MatrixGroup, GroupError> {
    let dim = gens.first().map_or(4, |g| g.dim());
    let id = ProjMap::identity(dim);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for g in gens {
            let h = g.compose(&elements[k]);
            if !index.contains_key(&h) {
                if elements.len() >= cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                index.insert(h.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(h);
            }
        }
    }
    Ok(MatrixGroup { generators: gens.to_vec(), elements, index, name: None })
}

impl MatrixGroup {
    /// Wraps an already closed set of elements (for example a kernel or stabilizer).
    pub fn from_elements(elements: Vec<ProjMap>) -> MatrixGroup {
        let index = elements.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
        MatrixGroup { generators: elements.clone(), elements, index, name: None }
    }

    pub fn with_name(mut self, name: &str) -> MatrixGroup {
        self.name = Some(name.to_string());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn generators(&self) -> &[ProjMap] {
        &self.generators
    }

    pub fn elements(&self) -> &[ProjMap] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &ProjMap) -> bool {
        self.index.contains_key(g)
    }

    pub fn is_subgroup_of(&self, other: &MatrixGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    /// Whether `self` is normalized by every generator of `other`.
    pub fn is_normalized_by(&self, other: &MatrixGroup) -> bool {
        other.generators.iter().all(|g| self.generators.iter().all(|h| self.contains(&g.conjugate(h))))
    }

    /// Full orbit of a point by breadth-first application of the generators.
    pub fn orbit(&self, p: &ProjPoint) -> Result<OrbitRecord, MathError> {
        let points = self.orbit_points(p)?;
        let stabilizer_order = self.stabilizer_elements(p)?.len();
        Ok(OrbitRecord { representative: p.clone(), length: points.len(), points, stabilizer_order })
    }

    fn orbit_points(&self, p: &ProjPoint) -> Result<Vec<ProjPoint>, MathError> {
        let mut seen = HashSet::from([p.clone()]);
        let mut points = vec![p.clone()];
        let mut k = 0;
        while k < points.len() {
            for g in &self.generators {
                let q = g.apply(&points[k])?;
                if seen.insert(q.clone()) {
                    points.push(q);
                }
            }
            k += 1;
        }
        Ok(points)
    }

    fn stabilizer_elements(&self, p: &ProjPoint) -> Result<Vec<ProjMap>, MathError> {
        let mut out = Vec::new();
        for g in &self.elements {
            if &g.apply(p)? == p {
                out.push(g.clone());
            }
        }
        Ok(out)
    }

    /// The subgroup fixing `p`.
    pub fn stabilizer(&self, p: &ProjPoint) -> Result<MatrixGroup, MathError> {
        Ok(MatrixGroup::from_elements(self.stabilizer_elements(p)?))
    }

    /// Orbit of a line under the group.
    pub fn line_orbit(&self, l: &ProjLine) -> Result<Vec<ProjLine>, MathError> {
        let mut seen = HashSet::from([l.clone()]);
        let mut lines = vec![l.clone()];
        let mut k = 0;
        while k < lines.len() {
            for g in &self.generators {
                let m = g.apply_line(&lines[k])?;
                if seen.insert(m.clone()) {
                    lines.push(m);
                }
            }
            k += 1;
        }
        Ok(lines)
    }

    /// The permutation action on a four-point orbit: the size of the image in
    /// the symmetric group and the kernel.
    pub fn sigma4_action(&self, base: &[ProjPoint]) -> Result<(usize, MatrixGroup), GroupError> {
        let perms = self.permutations_of(base)?;
        let orbit = self.orbit_points(&base[0])?;
        if orbit.len() != base.len() || !orbit.iter().all(|p| base.contains(p)) {
            return Err(GroupError::BaseNotOrbit);
        }
        let image: HashSet<&Vec<usize>> = perms.iter().collect();
        let identity: Vec<usize> = (0..base.len()).collect();
        let kernel = self
            .elements
            .iter()
            .zip(&perms)
            .filter(|(_, p)| **p == identity)
            .map(|(g, _)| g.clone())
            .collect();
        Ok((image.len(), MatrixGroup::from_elements(kernel)))
    }

    /// For every element, the permutation it induces on `base`.
    pub fn permutations_of(&self, base: &[ProjPoint]) -> Result<Vec<Vec<usize>>, GroupError> {
        let mut out = Vec::with_capacity(self.order());
        for g in &self.elements {
            let mut perm = Vec::with_capacity(base.len());
            for p in base {
                let q = g.apply(p)?;
                let k = base.iter().position(|b| *b == q).ok_or(GroupError::BaseNotInvariant)?;
                perm.push(k);
            }
            out.push(perm);
        }
        Ok(out)
    }

    pub fn index_of(&self, g: &ProjMap) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        GroupDescriptor::from_maps(&self.generators)
    }
}

/// An orbit together with its stabilizer order.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitRecord {
    pub representative: ProjPoint,
    pub points: Vec<ProjPoint>,
    pub length: usize,
    pub stabilizer_order: usize,
}

impl OrbitRecord {
    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.contains(p)
    }
}

/// JSON group descriptor: generator matrices with entries in cyclotomic text form.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GroupDescriptor {
    #[serde(default = "default_conductor")]
    pub conductor: u32,
    pub generators: Vec<Vec<Vec<String>>>,
}

fn default_conductor() -> u32 {
    DEFAULT_CONDUCTOR
}

impl GroupDescriptor {
    pub fn from_maps(maps: &[ProjMap]) -> GroupDescriptor {
        let generators = maps
            .iter()
            .map(|m| m.matrix.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect())
            .collect();
        GroupDescriptor { conductor: DEFAULT_CONDUCTOR, generators }
    }

    pub fn to_maps(&self) -> Result<Vec<ProjMap>, GroupError> {
        self.generators
            .iter()
            .map(|m| {
                if m.len() != 4 || m.iter().any(|r| r.len() != 4) {
                    return Err(GroupError::Descriptor("generators must be 4x4".into()));
                }
                let rows = m
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|s| CycNum::parse_with_default(s, self.conductor))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                ProjMap::new(rows)
            })
            .collect()
    }

    pub fn closure(&self, cap: usize) -> Result<MatrixGroup, GroupError> {
        let maps = self.to_maps()?;
        if maps.is_empty() {
            return Err(GroupError::Descriptor("no generators".into()));
        }
        group_closure(&maps, cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::consts::*;

    fn rho() -> ProjMap {
        ProjMap::from_ints(&[[0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]]).unwrap()
    }

    fn sigma() -> ProjMap {
        ProjMap::from_ints(&[[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]).unwrap()
    }

    fn g48() -> MatrixGroup {
        let gens = vec![
            ProjMap::diagonal3([int(-1), int(1), int(-1)]),
            ProjMap::diagonal3([int(1), int(-1), int(-1)]),
            rho(),
            sigma(),
        ];
        group_closure(&gens, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn normalization_forgets_scalars() {
        let a = ProjMap::diagonal(&[int(2), int(2), int(2), int(2)]).unwrap();
        assert!(a.is_identity());
        assert!(ProjMap::from_ints(&[[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]).is_err());
    }

    #[test]
    fn closure_of_identity_is_trivial() {
        let g = group_closure(&[ProjMap::identity(4)], 10).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let m = ProjMap::from_ints(&[[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]).unwrap();
        assert_eq!(group_closure(&[m], 50).unwrap_err(), GroupError::CapExceeded(50));
    }

    #[test]
    fn orbits_and_stabilizers() {
        let g = g48();
        assert_eq!(g.order(), 48);
        let o = g.orbit(&ProjPoint::from_ints(&[1, 0, 0, 0]).unwrap()).unwrap();
        assert_eq!((o.length, o.stabilizer_order), (4, 12));
        let o = g.orbit(&ProjPoint::from_ints(&[1, 1, 1, 2]).unwrap()).unwrap();
        assert_eq!((o.length, o.stabilizer_order), (16, 3));
        let s = g.stabilizer(&ProjPoint::from_ints(&[3, 1, 4, 7]).unwrap()).unwrap();
        assert_eq!(s.order(), 1);
    }

    #[test]
    fn permutation_action() {
        let g = g48();
        let base: Vec<ProjPoint> = (0..4)
            .map(|k| {
                let mut v = [0i64; 4];
                v[k] = 1;
                ProjPoint::from_ints(&v).unwrap()
            })
            .collect();
        let (image, kernel) = g.sigma4_action(&base).unwrap();
        assert_eq!((image, kernel.order()), (12, 4));
        let bad = vec![base[0].clone(), base[1].clone()];
        assert!(g.sigma4_action(&bad).is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        let g = g48();
        let d = g.descriptor();
        let text = serde_json::to_string(&d).unwrap();
        let back: GroupDescriptor = serde_json::from_str(&text).unwrap();
        assert_eq!(back.closure(DEFAULT_CAP).unwrap().order(), 48);
    }
}
