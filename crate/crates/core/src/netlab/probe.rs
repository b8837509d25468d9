//! Base loci, curves inside surfaces, and intersections of line configurations.

use serde::Serialize;

use super::NetError;
use crate::catalog::{self, curves, points, CurveCatalogEntry, CurveComponents};
use crate::exactmath::consts::sqrt3_i;
use crate::exactmath::linalg;
use crate::exactmath::{ideal_contains, CycNum, Form, MathError, ModP, Mono, ProjLine, ProjPoint, SeededRng};

#[derive(Clone, Debug, Serialize)]
pub struct BaseLocusReport {
    pub expected_points: usize,
    pub points_confirmed: usize,
    pub trials: usize,
    /// Trials whose random plane met the base locus.
    pub planes_meeting_base_locus: usize,
}

impl BaseLocusReport {
    pub fn points_ok(&self) -> bool {
        self.points_confirmed == self.expected_points
    }

    /// No base curve and no fixed component: random planes miss the base locus.
    pub fn base_locus_finite(&self) -> bool {
        self.planes_meeting_base_locus == 0
    }
}

/// Restriction of a form on `P^3` to the plane spanned by three points, in
/// plane coordinates `u0, u1, u2`.
fn restrict_to_plane(f: &Form, frame: &[Vec<CycNum>; 3]) -> Result<Form, MathError> {
    let m: Vec<Vec<CycNum>> = (0..4).map(|i| frame.iter().map(|p| p[i].clone()).collect()).collect();
    f.linear_substitute(&m)
}

fn random_frame(rng: &mut SeededRng) -> [Vec<CycNum>; 3] {
    loop {
        let frame = [rng.int_vector(4, 9), rng.int_vector(4, 9), rng.int_vector(4, 9)];
        if linalg::rank(&frame.to_vec()) == 3 {
            return frame;
        }
    }
}

/// Checks that the expected points lie on every basis form, then restricts
/// the system to `trials` random planes. A plane meets the base locus only
/// if that locus has a curve (or surface) in it; the restricted ideal then
/// fails to contain all forms of degree `3n - 2`. Ranks are taken modulo a
/// large prime, which can only overstate the Hilbert function, so a plane
/// reported as missing the base locus really does miss it.
pub fn base_locus_probe(basis: &[Form], expected: &[ProjPoint], trials: usize, seed: u64) -> Result<BaseLocusReport, MathError> {
    let mut points_confirmed = 0;
    for p in expected {
        let mut on_all = true;
        for f in basis {
            on_all &= f.eval_point(p)?.is_zero();
        }
        points_confirmed += on_all as usize;
    }
    let n = basis.iter().map(|f| f.degree()).max().unwrap_or(1);
    let mut rng = SeededRng::new(seed);
    let modp = ModP::for_conductor(basis.first().map_or(24, |f| f.terms()[0].1.conductor()));
    let mut hits = 0;
    for _ in 0..trials {
        let frame = random_frame(&mut rng);
        let restricted = basis.iter().map(|f| restrict_to_plane(f, &frame)).collect::<Result<Vec<_>, _>>()?;
        if modp.hilbert_function(&restricted, 3 * n - 2)? > 0 {
            hits += 1;
        }
    }
    Ok(BaseLocusReport { expected_points: expected.len(), points_confirmed, trials, planes_meeting_base_locus: hits })
}

/// Whether `f` vanishes identically on the line.
fn vanishes_on_line(f: &Form, l: &ProjLine) -> Result<bool, MathError> {
    let (p, q) = l.points();
    let m: Vec<Vec<CycNum>> = (0..4).map(|i| vec![p.coords()[i].clone(), q.coords()[i].clone()]).collect();
    Ok(f.linear_substitute(&m)?.is_zero())
}

/// Membership in the ideal, allowing multiplication by a power (up to 3) of
/// one variable so that unsaturated generator lists are handled.
fn in_saturation(gens: &[Form], f: &Form) -> Result<bool, MathError> {
    if ideal_contains(gens, f)? {
        return Ok(true);
    }
    for j in 0..f.nvars() {
        let mut g = f.clone();
        for _ in 0..3 {
            g = g.mul(&Form::var(f.nvars(), j));
            if ideal_contains(gens, &g)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Whether every component of the curve lies on the surface `f = 0`.
pub fn curve_in_surface(c: &CurveCatalogEntry, f: &Form) -> Result<bool, MathError> {
    match &c.components {
        CurveComponents::Lines { lines } => {
            for l in lines {
                if !vanishes_on_line(f, l)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        CurveComponents::Ideals { components } => {
            for comp in components {
                if !in_saturation(&comp.generators, f)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        CurveComponents::CoordinateLines { pairs, .. } => {
            // f vanishes on the line through e_a and e_b iff it has no
            // monomial supported on {a, b}.
            Ok(pairs.iter().all(|&(a, b)| {
                f.terms().iter().all(|(m, _): &(Mono, CycNum)| m.0.iter().enumerate().any(|(k, &e)| e > 0 && k != a && k != b))
            }))
        }
    }
}

/// Points shared by two unions of lines.
pub fn curve_intersection(a: &CurveCatalogEntry, b: &CurveCatalogEntry) -> Result<Vec<ProjPoint>, NetError> {
    let (Some(la), Some(lb)) = (a.lines(), b.lines()) else {
        return Err(NetError::Math(MathError::Degenerate("intersections are computed for unions of lines".into())));
    };
    let mut out: Vec<ProjPoint> = Vec::new();
    for x in la {
        for y in lb {
            if x == y {
                return Err(NetError::Math(MathError::Degenerate("curves share a line".into())));
            }
            if let Some(p) = x.intersect(y)? {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionCheck {
    pub left: String,
    pub right: String,
    pub expected: String,
    pub found_points: usize,
    pub pass: bool,
}

fn same_set(a: &[ProjPoint], b: &[ProjPoint]) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.contains(p))
}

/// Selected entries of the intersection table of the line configurations.
pub fn intersection_table() -> Result<Vec<IntersectionCheck>, NetError> {
    let g = catalog::group("G_48_50")?;
    let orbit_of = |p: &ProjPoint| -> Result<Vec<ProjPoint>, NetError> { Ok(g.orbit(p)?.points) };
    let named = |n: &str| orbit_of(&points::seed(n).expect("catalog seed"));
    let union = |names: &[&str]| -> Result<Vec<ProjPoint>, NetError> {
        let mut v = Vec::new();
        for n in names {
            v.extend(named(n)?);
        }
        Ok(v)
    };
    enum Want {
        Points(Vec<ProjPoint>),
        SingleOrbit(usize),
    }
    let cases: Vec<(&str, &str, &str, Want)> = vec![
        ("L4", "L4primeprime", "orbit of [1:1:1:sqrt(-3)]", Want::Points(orbit_of(&points::sigma16_t(&sqrt3_i()))?)),
        ("L4", "L4prime", "empty", Want::Points(vec![])),
        ("L4prime", "L4primeprime", "Sigma16", Want::Points(named("Sigma16")?)),
        ("L4", "L4tripleprime", "Sigma16prime", Want::Points(named("Sigma16prime")?)),
        (
            "L6tripleprime",
            "L6quadprime",
            "Sigma12prime + Sigma12primeprime + Sigma12tripleprime",
            Want::Points(union(&["Sigma12prime", "Sigma12primeprime", "Sigma12tripleprime"])?),
        ),
        ("L4", "L6quadprime", "one orbit of length 24", Want::SingleOrbit(24)),
        ("L6", "L6prime", "Sigma12", Want::Points(named("Sigma12")?)),
    ];
    let mut out = Vec::new();
    for (l, r, text, want) in cases {
        let pts = curve_intersection(&curves::entry(l)?, &curves::entry(r)?)?;
        let pass = match want {
            Want::Points(expected) => same_set(&pts, &expected),
            Want::SingleOrbit(len) => !pts.is_empty() && same_set(&pts, &orbit_of(&pts[0])?) && pts.len() == len,
        };
        out.push(IntersectionCheck { left: l.into(), right: r.into(), expected: text.into(), found_points: pts.len(), pass });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::surface;

    #[test]
    fn containments() {
        let c8 = curves::entry("C8_1").unwrap();
        assert!(curve_in_surface(&c8, &surface("Q1").unwrap()).unwrap());
        let l6 = curves::entry("L6").unwrap();
        assert!(curve_in_surface(&l6, &catalog::surfaces::product_form()).unwrap());
        let l4 = curves::entry("L4").unwrap();
        assert!(!curve_in_surface(&l4, &surface("Q2").unwrap()).unwrap());
        assert!(curve_in_surface(&l4, &surface("Q1").unwrap()).unwrap());
    }

    #[test]
    fn table_entries() {
        for c in intersection_table().unwrap() {
            assert!(c.pass, "{c:?}");
        }
    }
}

#[cfg(test)]
mod base_loci {
    use super::*;

    #[test]
    fn quartic_net_has_finite_base_locus() {
        let basis = super::super::net_basis().to_vec();
        let g = catalog::group("G_48_50").unwrap();
        let mut pts = g.orbit(&points::seed("Sigma16").unwrap()).unwrap().points;
        pts.extend(g.orbit(&points::seed("Sigma16prime").unwrap()).unwrap().points);
        let r = base_locus_probe(&basis, &pts, 5, 0).unwrap();
        assert_eq!(r.points_confirmed, 32);
        assert!(r.base_locus_finite(), "{r:?}");
    }

    #[test]
    fn sextic_system_has_base_curves() {
        let basis = catalog::systems::basis("M6").unwrap();
        let mut pts = Vec::new();
        for name in ["L6tripleprime", "L6quadprime"] {
            for l in curves::entry(name).unwrap().lines().unwrap() {
                pts.push(l.point_at(&CycNum::from_int(2), &CycNum::from_int(3)).unwrap());
            }
        }
        let r = base_locus_probe(&basis, &pts, 2, 0).unwrap();
        assert!(r.points_ok(), "{r:?}");
        assert_eq!(r.planes_meeting_base_locus, 2);
    }
}
