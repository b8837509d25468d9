use std::fmt;

use super::linalg::{self, Matrix};
use super::{CycNum, Form, MathError};

/// A point of projective space, normalized so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<CycNum>,
}

impl ProjPoint {
    pub fn new(coords: Vec<CycNum>) -> Result<ProjPoint, MathError> {
        let pivot = coords.iter().position(|c| !c.is_zero()).ok_or(MathError::ZeroPoint)?;
        let inv = coords[pivot].inv()?;
        let coords = coords
            .into_iter()
            .map(|c| if c.is_zero() { CycNum::zero() } else { &c * &inv })
            .collect();
        Ok(ProjPoint { coords })
    }

    pub fn from_ints(v: &[i64]) -> Result<ProjPoint, MathError> {
        ProjPoint::new(v.iter().map(|&a| CycNum::from_int(a)).collect())
    }

    pub fn coords(&self) -> &[CycNum] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Index of the first nonzero coordinate (which equals 1).
    pub fn pivot(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).expect("normalized point")
    }

    /// Image under a matrix acting on column vectors.
    pub fn apply(&self, m: &Matrix) -> Result<ProjPoint, MathError> {
        ProjPoint::new(linalg::mat_vec(m, &self.coords))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|c| match c.as_rational() {
                Some(q) if q.denom() == &1.into() => q.numer().to_string(),
                Some(q) => format!("{}/{}", q.numer(), q.denom()),
                None => c.to_string(),
            })
            .collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter())
    }
}

/// A line of projective 3-space.
///
/// Equality compares the spanned plane in reduced echelon form, so any two
/// spanning pairs of the same line compare equal.
#[derive(Clone)]
pub struct ProjLine {
    p: ProjPoint,
    q: ProjPoint,
    equations: [Form; 2],
    echelon: Matrix,
}

impl ProjLine {
    /// The line through two distinct points.
    pub fn through(p: ProjPoint, q: ProjPoint) -> Result<ProjLine, MathError> {
        if p.dim() != q.dim() {
            return Err(MathError::DimensionMismatch { expected: p.dim(), got: q.dim() });
        }
        let mut echelon: Matrix = vec![p.coords.clone(), q.coords.clone()];
        if linalg::rref(&mut echelon).len() != 2 {
            return Err(MathError::Degenerate("a line needs two distinct points".into()));
        }
        let ker = linalg::kernel(&echelon, p.dim());
        if ker.len() != 2 {
            return Err(MathError::Degenerate("lines live in projective 3-space".into()));
        }
        let equations = [Form::linear(&ker[0]), Form::linear(&ker[1])];
        Ok(ProjLine { p, q, equations, echelon })
    }

    /// The line cut out by two independent linear forms.
    pub fn from_equations(a: &Form, b: &Form) -> Result<ProjLine, MathError> {
        if a.degree() != 1 || b.degree() != 1 || a.nvars() != 4 || b.nvars() != 4 {
            return Err(MathError::Degenerate("a line needs two linear forms in four variables".into()));
        }
        let coeffs = |f: &Form| -> Vec<CycNum> {
            (0..4).map(|i| f.coeff(&super::Mono::var(i))).collect()
        };
        let ker = linalg::kernel(&vec![coeffs(a), coeffs(b)], 4);
        if ker.len() != 2 {
            return Err(MathError::Degenerate("dependent linear forms".into()));
        }
        ProjLine::through(ProjPoint::new(ker[0].clone())?, ProjPoint::new(ker[1].clone())?)
    }

    pub fn points(&self) -> (&ProjPoint, &ProjPoint) {
        (&self.p, &self.q)
    }

    pub fn equations(&self) -> &[Form; 2] {
        &self.equations
    }

    /// The point `s p + t q` of the line.
    pub fn point_at(&self, s: &CycNum, t: &CycNum) -> Result<ProjPoint, MathError> {
        ProjPoint::new(
            self.p.coords.iter().zip(&self.q.coords).map(|(a, b)| &(a * s) + &(b * t)).collect(),
        )
    }

    pub fn contains(&self, x: &ProjPoint) -> bool {
        self.equations.iter().all(|e| e.eval_point(x).map_or(false, |v| v.is_zero()))
    }

    /// Image under a matrix acting on column vectors.
    pub fn apply(&self, m: &Matrix) -> Result<ProjLine, MathError> {
        ProjLine::through(self.p.apply(m)?, self.q.apply(m)?)
    }

    /// The intersection point, or `None` for skew lines.
    pub fn intersect(&self, other: &ProjLine) -> Result<Option<ProjPoint>, MathError> {
        if self == other {
            return Err(MathError::Degenerate("intersecting a line with itself".into()));
        }
        let coeffs = |f: &Form| -> Vec<CycNum> {
            (0..4).map(|i| f.coeff(&super::Mono::var(i))).collect()
        };
        let rows: Matrix = self.equations.iter().chain(other.equations.iter()).map(coeffs).collect();
        let ker = linalg::kernel(&rows, 4);
        match ker.len() {
            0 => Ok(None),
            1 => Ok(Some(ProjPoint::new(ker[0].clone())?)),
            _ => Err(MathError::Degenerate("identical lines".into())),
        }
    }
}

impl PartialEq for ProjLine {
    fn eq(&self, other: &Self) -> bool {
        self.echelon == other.echelon
    }
}

impl Eq for ProjLine {}

impl std::hash::Hash for ProjLine {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.echelon.hash(state);
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line({} , {})", self.p, self.q)
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{} = {} = 0}}", self.equations[0], self.equations[1])
    }
}

impl serde::Serialize for ProjLine {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ProjLine", 2)?;
        st.serialize_field("through", &[&self.p, &self.q])?;
        st.serialize_field("equations", &self.equations)?;
        st.end()
    }
}

/// Free function form of [`ProjLine::intersect`].
pub fn line_intersect(a: &ProjLine, b: &ProjLine) -> Result<Option<ProjPoint>, MathError> {
    a.intersect(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::consts::*;

    fn pt(v: &[i64]) -> ProjPoint {
        ProjPoint::from_ints(v).unwrap()
    }

    #[test]
    fn normalization() {
        let p = ProjPoint::new(vec![int(0), int(2), int(4), int(-2)]).unwrap();
        assert_eq!(p, pt(&[0, 1, 2, -1]));
        assert!(ProjPoint::new(vec![int(0); 4]).is_err());
    }

    #[test]
    fn coordinate_lines() {
        let l12 = ProjLine::through(pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0])).unwrap();
        let l13 = ProjLine::through(pt(&[1, 0, 0, 0]), pt(&[0, 0, 1, 0])).unwrap();
        let l34 = ProjLine::through(pt(&[0, 0, 1, 0]), pt(&[0, 0, 0, 1])).unwrap();
        assert_eq!(l12.intersect(&l13).unwrap(), Some(pt(&[1, 0, 0, 0])));
        assert_eq!(l12.intersect(&l34).unwrap(), None);
        assert!(l12.intersect(&l12).is_err());
        let again = ProjLine::through(pt(&[1, 1, 0, 0]), pt(&[1, -1, 0, 0])).unwrap();
        assert_eq!(again, l12);
    }

    #[test]
    fn equations_vanish_on_span() {
        let l = ProjLine::through(pt(&[1, 2, 3, 4]), pt(&[0, 1, -1, 2])).unwrap();
        let (p, q) = l.points();
        for e in l.equations() {
            assert!(e.eval_point(p).unwrap().is_zero());
            assert!(e.eval_point(q).unwrap().is_zero());
        }
        let x = l.point_at(&int(3), &frac(1, 2)).unwrap();
        assert!(l.contains(&x));
    }

    #[test]
    fn from_equations_round_trip() {
        let a = Form::parse("x0 + [(1)*z^6@24]*x2", 4).unwrap();
        let b = Form::parse("x1 + [(1)*z^6@24]*x3", 4).unwrap();
        let l = ProjLine::from_equations(&a, &b).unwrap();
        let p = ProjPoint::new(vec![i(), int(0), int(-1), int(0)]).unwrap();
        assert!(l.contains(&p));
    }
}
