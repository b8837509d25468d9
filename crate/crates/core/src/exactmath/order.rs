use super::linalg::{self, Matrix};
use super::{CycNum, Form, MathError, ProjLine, ProjPoint, SeededRng};

/// Multiplicity of `f` at `p`: the lowest total degree of a nonzero term once `p`
/// is moved to the origin of the affine chart where its pivot coordinate is 1.
pub fn vanishing_order_at_point(f: &Form, p: &ProjPoint) -> Result<u32, MathError> {
    if f.nvars() != p.dim() {
        return Err(MathError::DimensionMismatch { expected: f.nvars(), got: p.dim() });
    }
    if f.is_zero() {
        return Err(MathError::Degenerate("vanishing order of the zero form".into()));
    }
    let piv = p.pivot();
    let mut g = f.clone();
    for (j, c) in p.coords().iter().enumerate() {
        if j != piv && !c.is_zero() {
            g = g.shear(j, piv, c);
        }
    }
    let top = g.terms().iter().map(|(m, _)| m.0[piv] as u32).max().unwrap_or(0);
    Ok(g.degree() - top)
}

/// Order in `eps` of `f(eps v + s a + t b)` for one direction `v`, where `a, b`
/// span the line. The substitution matrix has columns `(v, w, a, b)` with an
/// auxiliary `w` making it invertible; dropping every term containing `y1`
/// restricts to the plane spanned by `v` and the line.
fn order_along(f: &Form, line: &ProjLine, rng: &mut SeededRng) -> Result<u32, MathError> {
    let (a, b) = line.points();
    for _ in 0..64 {
        let v = rng.int_vector(4, 9);
        let w = rng.int_vector(4, 9);
        let m: Matrix = (0..4)
            .map(|i| vec![v[i].clone(), w[i].clone(), a.coords()[i].clone(), b.coords()[i].clone()])
            .collect();
        if linalg::det(&m).is_zero() {
            continue;
        }
        let g = f.linear_substitute(&m)?;
        let order = g.terms().iter().filter(|(mono, _)| mono.0[1] == 0).map(|(mono, _)| mono.0[0] as u32).min();
        if let Some(o) = order {
            return Ok(o);
        }
    }
    Err(MathError::Degenerate("no usable generic direction".into()))
}

/// Generic vanishing order of `f` along a line, from two seeded pseudo-generic
/// directions that must agree.
pub fn vanishing_order_along_line(f: &Form, line: &ProjLine, seed: u64) -> Result<u32, MathError> {
    if f.nvars() != 4 {
        return Err(MathError::DimensionMismatch { expected: 4, got: f.nvars() });
    }
    if f.is_zero() {
        return Err(MathError::Degenerate("vanishing order of the zero form".into()));
    }
    let mut rng = SeededRng::new(seed);
    let first = order_along(f, line, &mut rng)?;
    let second = order_along(f, line, &mut rng)?;
    if first != second {
        return Err(MathError::NonGenericDirection(first, second));
    }
    Ok(first)
}

/// Exact multiplicity along a line, by moving the line to `{y0 = y1 = 0}`.
/// Used to cross-check the seeded computation.
pub fn exact_order_along_line(f: &Form, line: &ProjLine) -> Result<u32, MathError> {
    let (a, b) = line.points();
    let mut cols = vec![a.coords().to_vec(), b.coords().to_vec()];
    for k in 0..4 {
        let mut e = vec![CycNum::zero(); 4];
        e[k] = CycNum::one();
        let mut trial = cols.clone();
        trial.push(e);
        if linalg::rank(&trial) == trial.len() {
            cols = trial;
        }
        if cols.len() == 4 {
            break;
        }
    }
    // new coordinates (y0, y1, y2, y3) = weights of (e, e', a, b)
    let m: Matrix = (0..4).map(|i| vec![cols[2][i].clone(), cols[3][i].clone(), cols[0][i].clone(), cols[1][i].clone()]).collect();
    let g = f.linear_substitute(&m)?;
    Ok(g.terms().iter().map(|(mono, _)| (mono.0[0] + mono.0[1]) as u32).min().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[i64]) -> ProjPoint {
        ProjPoint::from_ints(v).unwrap()
    }

    fn f(s: &str) -> Form {
        Form::parse(s, 4).unwrap()
    }

    #[test]
    fn orders_at_points() {
        assert_eq!(vanishing_order_at_point(&f("x0*x1*x2*x3"), &pt(&[1, 0, 0, 0])).unwrap(), 3);
        assert_eq!(vanishing_order_at_point(&f("x0^2 + x1^2 + x2^2 + x3^2"), &pt(&[1, 0, 0, 0])).unwrap(), 0);
        // a cone with vertex [1:1:1:1]
        let cone = f("x1^2 - 2*x1*x0 + x0^2 - x2^2 + 2*x2*x3 - x3^2");
        assert_eq!(vanishing_order_at_point(&cone, &pt(&[1, 1, 1, 1])).unwrap(), 2);
    }

    #[test]
    fn orders_along_lines() {
        let l34 = ProjLine::through(pt(&[0, 0, 1, 0]), pt(&[0, 0, 0, 1])).unwrap();
        let l12 = ProjLine::through(pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0])).unwrap();
        assert_eq!(vanishing_order_along_line(&f("x0*x1*x2*x3"), &l34, 0).unwrap(), 2);
        assert_eq!(vanishing_order_along_line(&f("x0^3*x1*x2*x3"), &l12, 0).unwrap(), 2);
        assert_eq!(vanishing_order_along_line(&f("x0^2 + x1^2 + x2^2 + x3^2"), &l12, 0).unwrap(), 0);
        assert_eq!(exact_order_along_line(&f("x0^3*x1*x2*x3"), &l12).unwrap(), 2);
    }

    #[test]
    fn slanted_line_matches_exact_route() {
        let l = ProjLine::through(pt(&[1, 1, 1, -1]), pt(&[1, 1, -1, 1])).unwrap();
        // (x0 - x1)^2 * (x2 + x3) vanishes to order 3 along the line
        let g = f("x0^2 - 2*x0*x1 + x1^2").mul(&f("x2 + x3"));
        for seed in 0..3 {
            assert_eq!(vanishing_order_along_line(&g, &l, seed).unwrap(), 3);
        }
        assert_eq!(exact_order_along_line(&g, &l).unwrap(), 3);
    }
}
