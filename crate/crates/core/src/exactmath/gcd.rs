//! Greatest common divisors of forms.
//!
//! Compositions of the Cremona-type involutions only ever acquire common factors
//! that are products of coordinate planes and of the planes of the other two
//! tetrahedra of the desmic configuration, so those are peeled off first. What
//! remains is certified coprime by restricting to a random line; only if that
//! certificate fails does the recursive primitive-remainder gcd run.

use std::collections::BTreeMap;

use super::linalg::Matrix;
use super::{CycNum, Form, MathError, ModP, Mono, SeededRng, MAX_VARS};

/// The twelve face planes of the three desmic tetrahedra: the coordinate
/// planes, then the faces through `[1:1:1:-1]`-type points, then the faces
/// through `[1:1:1:1]`-type points.
pub fn tetrahedra_planes() -> Vec<Form> {
    let signs: [[i64; 4]; 12] = [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [1, 1, 1, -1],
        [1, 1, -1, 1],
        [1, -1, 1, 1],
        [1, -1, -1, -1],
        [1, 1, 1, 1],
        [1, -1, -1, 1],
        [1, 1, -1, -1],
        [1, -1, 1, -1],
    ];
    signs
        .iter()
        .map(|s| Form::linear(&s.iter().map(|&a| CycNum::from_int(a)).collect::<Vec<_>>()))
        .collect()
}

/// A point on the plane `l = 0`, pseudo-random.
fn point_on_plane(l: &Form, rng: &mut SeededRng) -> Vec<CycNum> {
    let n = l.nvars();
    let coeffs: Vec<CycNum> = (0..n).map(|i| l.coeff(&Mono::var(i))).collect();
    let k = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero linear form");
    let mut x = rng.int_vector(n, 7);
    let mut s = CycNum::zero();
    for (i, c) in coeffs.iter().enumerate() {
        if i != k {
            s = &s + &(c * &x[i]);
        }
    }
    x[k] = -(&s / &coeffs[k]);
    x
}

fn divides_all(l: &Form, fs: &[Form], rng: &mut SeededRng) -> Option<Vec<Form>> {
    // cheap certain rejection first: a nonzero value on the plane
    for f in fs {
        for _ in 0..2 {
            let x = point_on_plane(l, rng);
            if !f.eval(&x).ok()?.is_zero() {
                return None;
            }
        }
    }
    fs.iter().map(|f| f.exact_div(l)).collect()
}

/// Univariate dense polynomials, low degree first.
fn uni_trim(mut p: Vec<CycNum>) -> Vec<CycNum> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn uni_rem(a: &[CycNum], b: &[CycNum]) -> Vec<CycNum> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor").inv().expect("nonzero leading coefficient");
    while r.len() >= b.len() {
        let q = r.last().unwrap() * &lb;
        let shift = r.len() - b.len();
        for (k, c) in b.iter().enumerate() {
            r[shift + k] = &r[shift + k] - &(&q * c);
        }
        r.pop();
        r = uni_trim(r);
    }
    r
}

fn uni_gcd_degree(polys: &[Vec<CycNum>]) -> usize {
    let mut g: Vec<CycNum> = Vec::new();
    for p in polys {
        let mut a = uni_trim(p.clone());
        let mut b = g;
        while !b.is_empty() {
            let r = uni_rem(&a, &b);
            a = b;
            b = r;
        }
        g = a;
        if g.len() == 1 {
            return 0;
        }
    }
    g.len().saturating_sub(1)
}

/// Modular version of the line certificate. Write `f(a + t b) = h q` for a
/// common factor `h`; when some `f(b)` survives reduction, Gauss's lemma at
/// the prime keeps the reduction of `h` of positive degree and dividing every
/// reduced restriction. So a constant gcd modulo `p` proves coprimality.
fn coprime_mod_p(fs: &[Form], rng: &mut SeededRng) -> bool {
    let Some(c) = fs.iter().flat_map(|f| f.terms()).map(|(_, c)| c.conductor()).next() else { return false };
    let field = ModP::for_conductor(c);
    let n = fs[0].nvars();
    for _ in 0..3 {
        let a: Vec<u64> = (0..n).map(|_| rng.next_u64() % field.p).collect();
        let b: Vec<u64> = (0..n).map(|_| rng.next_u64() % field.p).collect();
        let mut polys = Vec::with_capacity(fs.len());
        let mut full = false;
        for f in fs {
            let Ok(p) = field.restrict_to_line(f, &a, &b) else { return false };
            full |= p.last().is_some_and(|&c| c != 0);
            polys.push(p);
        }
        if full && field.gcd_degree(polys) == 0 {
            return true;
        }
    }
    false
}

/// Certifies that `fs` share no common factor by restricting to a line through
/// two random points; `false` means "not certified", not "not coprime".
fn coprime_on_random_line(fs: &[Form], rng: &mut SeededRng) -> bool {
    if coprime_mod_p(fs, rng) {
        return true;
    }
    let n = fs[0].nvars();
    for _ in 0..4 {
        let cols: Vec<Vec<CycNum>> = (0..n).map(|_| rng.int_vector(n, 9)).collect();
        let m: Matrix = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        if super::linalg::det(&m).is_zero() {
            continue;
        }
        let keep = [0usize, 1];
        let mut polys = Vec::new();
        let mut finite = false;
        for f in fs {
            let Ok(g) = f.linear_substitute(&m) else { return false };
            let g = g.restrict_to_vars(&keep);
            let d = g.degree() as usize;
            let mut p = vec![CycNum::zero(); d + 1];
            for (mono, c) in g.terms() {
                p[mono.0[1] as usize] = c.clone();
            }
            if !p[d].is_zero() {
                finite = true;
            }
            polys.push(p);
        }
        if finite && uni_gcd_degree(&polys) == 0 {
            return true;
        }
    }
    false
}

/// General sparse polynomial used by the recursive gcd.
#[derive(Clone, Debug, PartialEq)]
struct Poly {
    terms: BTreeMap<Mono, CycNum>,
}

impl Poly {
    fn from_form(f: &Form) -> Poly {
        Poly { terms: f.terms().iter().cloned().collect() }
    }

    fn constant(c: CycNum) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::default(), c);
        }
        Poly { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn deg_in(&self, v: usize) -> u16 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    fn coeff_in(&self, v: usize, k: u16) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[v] == k)
            .map(|(m, c)| {
                let mut m2 = *m;
                m2.0[v] = 0;
                (m2, c.clone())
            })
            .collect();
        Poly { terms }
    }

    fn add_term(&mut self, m: Mono, c: CycNum) {
        let gone = match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                v.is_zero()
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(m, c);
                }
                false
            }
        };
        if gone {
            self.terms.remove(&m);
        }
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly { terms: BTreeMap::new() };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    fn sub(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c);
        }
        out
    }

    fn shift(&self, v: usize, k: u16) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = *m;
                m2.0[v] += k;
                (m2, c.clone())
            })
            .collect();
        Poly { terms }
    }

    /// Exact division under lex order.
    fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.terms.last_key_value()?;
        let lc_inv = lc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Poly { terms: BTreeMap::new() };
        while let Some((m, c)) = rem.terms.last_key_value() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c * &lc_inv;
            for (dm, dc) in &d.terms {
                rem.add_term(qm.mul(dm), -(&qc * dc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    fn monic(&self) -> Poly {
        match self.terms.last_key_value() {
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero");
                Poly { terms: self.terms.iter().map(|(m, a)| (*m, a * &inv)).collect() }
            }
            None => self.clone(),
        }
    }

    fn main_var(&self) -> Option<usize> {
        (0..MAX_VARS).rev().find(|&v| self.deg_in(v) > 0)
    }

    fn content_in(&self, v: usize) -> Poly {
        let mut g = Poly { terms: BTreeMap::new() };
        for k in 0..=self.deg_in(v) {
            let c = self.coeff_in(v, k);
            if !c.is_zero() {
                g = poly_gcd(&g, &c);
                if g.main_var().is_none() {
                    break;
                }
            }
        }
        g
    }

    fn primitive_in(&self, v: usize) -> Poly {
        let c = self.content_in(v);
        self.exact_div(&c).expect("content divides")
    }

    fn prem(&self, b: &Poly, v: usize) -> Poly {
        let db = b.deg_in(v);
        let lb = b.coeff_in(v, db);
        let mut r = self.clone();
        while !r.is_zero() && r.deg_in(v) >= db {
            let dr = r.deg_in(v);
            let lr = r.coeff_in(v, dr);
            r = lb.mul(&r).sub(&lr.mul(b).shift(v, dr - db));
        }
        r
    }
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let v = match (a.main_var(), b.main_var()) {
        (None, _) | (_, None) => return Poly::constant(CycNum::one()),
        (Some(x), Some(y)) => x.max(y),
    };
    let (da, db) = (a.deg_in(v), b.deg_in(v));
    if da == 0 {
        return poly_gcd(&b.content_in(v), a);
    }
    if db == 0 {
        return poly_gcd(&a.content_in(v), b);
    }
    let c = poly_gcd(&a.content_in(v), &b.content_in(v));
    let (mut r0, mut r1) = if da >= db {
        (a.primitive_in(v), b.primitive_in(v))
    } else {
        (b.primitive_in(v), a.primitive_in(v))
    };
    loop {
        let r = r0.prem(&r1, v);
        if r.is_zero() {
            break;
        }
        if r.deg_in(v) == 0 {
            r1 = Poly::constant(CycNum::one());
            break;
        }
        r0 = r1;
        r1 = r.primitive_in(v);
    }
    c.mul(&r1).monic()
}

fn recursive_gcd(fs: &[Form]) -> Form {
    let nvars = fs[0].nvars();
    let mut g = Poly::from_form(&fs[0]);
    for f in &fs[1..] {
        g = poly_gcd(&g, &Poly::from_form(f));
        if g.main_var().is_none() {
            return Form::constant(nvars, CycNum::one());
        }
    }
    let degree = g.terms.keys().next().map_or(0, |m| m.total());
    Form::from_terms(nvars, degree, g.terms).expect("gcd of forms is homogeneous").monic()
}

/// A greatest common divisor of the given forms, normalized to leading
/// coefficient 1. Zero forms are ignored.
pub fn form_gcd(fs: &[Form]) -> Result<Form, MathError> {
    let forms: Vec<Form> = fs.iter().filter(|f| !f.is_zero()).cloned().collect();
    if forms.is_empty() {
        return Err(MathError::EmptyGcd);
    }
    let nvars = forms[0].nvars();
    if forms.iter().any(|f| f.nvars() != nvars || f.is_weighted()) {
        return Err(MathError::DimensionMismatch { expected: nvars, got: 0 });
    }
    if forms.len() == 1 {
        return Ok(forms[0].monic());
    }
    let (factor, _) = split_common_factor(&forms, 0);
    Ok(factor)
}

/// Returns the gcd of `forms` together with the forms divided by it.
pub(crate) fn split_common_factor(forms: &[Form], seed: u64) -> (Form, Vec<Form>) {
    let nvars = forms[0].nvars();
    let content = forms.iter().skip(1).fold(forms[0].monomial_content(), |acc, f| acc.gcd(&f.monomial_content()));
    let mut rest: Vec<Form> = forms.iter().map(|f| f.divide_mono(&content)).collect();
    let mut factor = Form::monomial(nvars, &content.0[..nvars], CycNum::one());
    let mut rng = SeededRng::new(seed ^ 0x6763_6421);
    if nvars == 4 {
        for plane in tetrahedra_planes().into_iter().skip(4) {
            while rest.iter().all(|f| f.degree() >= 1) {
                match divides_all(&plane, &rest, &mut rng) {
                    Some(q) => {
                        rest = q;
                        factor = factor.mul(&plane);
                    }
                    None => break,
                }
            }
        }
    }
    if rest.iter().any(|f| f.degree() == 0) || coprime_on_random_line(&rest, &mut rng) {
        return (factor.monic(), rest);
    }
    let g = recursive_gcd(&rest);
    if g.degree() > 0 {
        rest = rest.iter().map(|f| f.exact_div(&g).expect("gcd divides")).collect();
        factor = factor.mul(&g);
    }
    (factor.monic(), rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Form {
        Form::parse(s, 4).unwrap()
    }

    #[test]
    fn monomial_gcd() {
        assert_eq!(form_gcd(&[f("x0^2*x1"), f("x0*x1^2")]).unwrap(), f("x0*x1"));
        assert_eq!(form_gcd(&[f("x0"), f("x1")]).unwrap().degree(), 0);
        assert!(form_gcd(&[]).is_err());
        assert!(form_gcd(&[Form::zero(4, 2)]).is_err());
    }

    #[test]
    fn plane_factors_are_found() {
        let p = f("x0 + x1 + x2 + x3");
        let a = p.mul(&p).mul(&f("x0^2 + x3*x1"));
        let b = p.mul(&f("x2^3 - x0*x1*x3"));
        let g = form_gcd(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(g, p.monic());
        assert!(a.exact_div(&g).is_some() && b.exact_div(&g).is_some());
    }

    #[test]
    fn fallback_handles_irregular_factor() {
        let q = f("x0^2 + 2*x1*x2 - x3^2");
        let a = q.mul(&f("x0 + 2*x1 - x3"));
        let b = q.mul(&f("x2^2 + x1*x3"));
        let g = form_gcd(&[a, b]).unwrap();
        assert_eq!(g, q.monic());
    }

    #[test]
    fn coprime_certificate() {
        let mut rng = SeededRng::new(3);
        assert!(coprime_on_random_line(&[f("x0^2 + x1*x2"), f("x3^2 - x0*x1")], &mut rng));
    }
}
