//! The net of `G_48_50`-invariant quartics and the small geometric probes
//! built on it: singular points among known orbits, base loci, containment
//! of curves in surfaces and intersections of line configurations.

use serde::Serialize;

use crate::catalog::{self, CatalogError};
use crate::exactmath::consts::int;
use crate::exactmath::{CycNum, Form, MathError, ProjPoint};

mod probe;
mod table1;

pub use probe::{
    base_locus_probe, curve_in_surface, curve_intersection, intersection_table, BaseLocusReport, IntersectionCheck,
};
pub use table1::{
    candidate_orbits, off_locus_scan, t_family_check, table1_rows, verify_row, verify_table1, OffLocusReport, RowReport,
    Table1Row, TFamilyReport,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NetError {
    #[error(transparent)]
    Math(#[from] MathError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("could not sample enough points: {0}")]
    Sampling(String),
}

/// A parameter `[a:b:c]` of the net, normalized like a projective point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NetPoint {
    pub a: CycNum,
    pub b: CycNum,
    pub c: CycNum,
}

impl NetPoint {
    pub fn new(a: CycNum, b: CycNum, c: CycNum) -> Result<NetPoint, MathError> {
        let p = ProjPoint::new(vec![a, b, c])?;
        let v = p.coords();
        Ok(NetPoint { a: v[0].clone(), b: v[1].clone(), c: v[2].clone() })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<NetPoint, MathError> {
        NetPoint::new(int(a), int(b), int(c))
    }

    /// The member `[2t^3+6t : -t^2-1 : 1]` of the singular cubic family.
    pub fn t_family(t: &CycNum) -> NetPoint {
        let t2 = t * t;
        let a = &(&(&t2 * t) * &int(2)) + &(t * &int(6));
        let b = -&(&t2 + &int(1));
        NetPoint::new(a, b, int(1)).expect("c = 1")
    }
}

impl std::fmt::Display for NetPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}:{}:{}]", self.a, self.b, self.c)
    }
}

impl std::str::FromStr for NetPoint {
    type Err = MathError;

    /// Parses `a,b,c` with cyclotomic entries.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(MathError::Parse(format!("expected a,b,c, got `{s}`")));
        }
        let v = parts.iter().map(|p| p.parse::<CycNum>()).collect::<Result<Vec<_>, _>>()?;
        NetPoint::new(v[0].clone(), v[1].clone(), v[2].clone())
    }
}

/// `x0x1x2x3`, the sum of the six `x_i^2 x_j^2`, and the sum of the `x_i^4`.
pub fn net_basis() -> [Form; 3] {
    let f = catalog::surfaces::product_form();
    let s22 = catalog::surfaces::sigma22();
    let s4 = catalog::surfaces::sigma4();
    [f, s22, s4]
}

pub fn net_member(p: &NetPoint) -> Form {
    let [t, s22, s4] = net_basis();
    t.scale(&p.a).add(&s22.scale(&p.b)).add(&s4.scale(&p.c))
}

/// The eight linear, cubic and constant factors whose product vanishes
/// exactly on singular members.
pub fn discriminant_factors(p: &NetPoint) -> [CycNum; 8] {
    let (a, b, c) = (&p.a, &p.b, &p.c);
    let k = |n: i64| int(n);
    let lin = |x: i64, y: i64, z: i64| &(&(a * &k(x)) + &(b * &k(y))) + &(c * &k(z));
    let cubic = &(&(&(a * a) * c) + &(&(&(b * b) * b) * &k(4)))
        + &(&(&(&(b * b) * c) * &k(-12)) + &(&(&(c * c) * c) * &k(16)));
    [
        c.clone(),
        lin(0, 1, 2),
        lin(0, 1, -2),
        lin(1, 2, -4),
        lin(1, -2, 4),
        lin(1, -6, -4),
        lin(1, 6, 4),
        cubic,
    ]
}

pub fn net_discriminant(p: &NetPoint) -> CycNum {
    discriminant_factors(p).iter().fold(CycNum::one(), |acc, f| &acc * f)
}

/// Whether every partial derivative of `f` vanishes at `p`.
pub fn is_singular_at(f: &Form, p: &ProjPoint) -> Result<bool, MathError> {
    for i in 0..f.nvars() {
        if !f.derivative(i).eval_point(p)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The candidates at which `f` is singular, in input order.
pub fn singular_points_among(f: &Form, candidates: &[ProjPoint]) -> Result<Vec<ProjPoint>, MathError> {
    let mut out = Vec::new();
    for p in candidates {
        if is_singular_at(f, p)? {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// Arithmetic genus `ab - a - b + 1` of a curve of bidegree `(a, b)` on a
/// smooth quadric.
pub fn genus_bidegree(a: i64, b: i64) -> i64 {
    a * b - a - b + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::surface;

    #[test]
    fn special_members() {
        assert_eq!(net_member(&NetPoint::from_ints(1, 0, 0).unwrap()), catalog::surfaces::product_form());
        let q = surface("Q1").unwrap();
        assert!(net_member(&NetPoint::from_ints(0, 2, 1).unwrap()).ratio_to(&q.mul(&q)).is_some());
        assert_eq!(net_member(&NetPoint::from_ints(-8, -2, 1).unwrap()).ratio_to(&surface("Tprime").unwrap()).map(|_| ()), Some(()));
    }

    #[test]
    fn discriminant_examples() {
        assert!(net_discriminant(&NetPoint::from_ints(1, 0, 0).unwrap()).is_zero());
        assert!(net_discriminant(&NetPoint::from_ints(0, 2, 1).unwrap()).is_zero());
        // 1 * 3 * (-1) * (-1) * 3 * (-9) * 11 * 9
        assert_eq!(net_discriminant(&NetPoint::from_ints(1, 1, 1).unwrap()), int(-8019));
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus_bidegree(4, 4), 9);
        assert_eq!(genus_bidegree(4, 8), 21);
        assert_eq!(genus_bidegree(1, 1), 0);
    }

    #[test]
    fn parse_parameter() {
        let p: NetPoint = "6, 1, 0".parse().unwrap();
        assert_eq!(p, NetPoint::from_ints(6, 1, 0).unwrap());
    }
}
