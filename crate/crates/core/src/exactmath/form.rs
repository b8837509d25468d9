//! Sparse homogeneous polynomials over a cyclotomic field.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::One;
use rayon::prelude::*;

use super::linalg::{self, Matrix};
use super::{CycNum, MathError, ProjPoint, Rational};

/// Maximal number of variables a [`Form`] may carry.
pub const MAX_VARS: usize = 6;

/// Terms per parallel block when expanding large substitutions.
const PAR_BLOCK: usize = 1024;

/// An exponent vector. The derived order is lexicographic with `x0` most
/// significant, which is graded lexicographic among terms of one degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Mono(pub [u16; MAX_VARS]);

impl Mono {
    pub fn from_slice(e: &[u16]) -> Mono {
        let mut m = [0u16; MAX_VARS];
        m[..e.len()].copy_from_slice(e);
        Mono(m)
    }

    pub fn var(i: usize) -> Mono {
        let mut m = [0u16; MAX_VARS];
        m[i] = 1;
        Mono(m)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn weighted(&self, nvars: usize, weighted: bool) -> u32 {
        let mut d = self.total();
        if weighted {
            d += self.0[nvars - 1] as u32;
        }
        d
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0) {
            *a += b;
        }
        Mono(m)
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0).all(|(a, b)| *a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        let mut m = o.0;
        for (a, b) in m.iter_mut().zip(self.0) {
            *a -= b;
        }
        Mono(m)
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0) {
            *a = (*a).min(b);
        }
        Mono(m)
    }
}

/// A homogeneous form in `nvars` variables. When `weighted` is set the last
/// variable `w` has weight 2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    nvars: usize,
    weighted: bool,
    degree: u32,
    terms: Vec<(Mono, CycNum)>,
}

fn sorted_terms(map: HashMap<Mono, CycNum>) -> Vec<(Mono, CycNum)> {
    let mut terms: Vec<(Mono, CycNum)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort_by(|a, b| b.0.cmp(&a.0));
    terms
}

fn accumulate(map: &mut HashMap<Mono, CycNum>, m: Mono, c: CycNum) {
    match map.get_mut(&m) {
        Some(v) => *v = &*v + &c,
        None => {
            map.insert(m, c);
        }
    }
}

fn merge_maps(mut parts: Vec<HashMap<Mono, CycNum>>) -> HashMap<Mono, CycNum> {
    let mut out = parts.pop().unwrap_or_default();
    for p in parts {
        for (m, c) in p {
            accumulate(&mut out, m, c);
        }
    }
    out
}

/// Elementary column factor of an invertible matrix, as a variable substitution.
#[derive(Clone, Debug)]
enum Elementary {
    Swap(usize, usize),
    Scale(usize, CycNum),
    /// `x_i := x_i + c * x_j`
    Shear(usize, usize, CycNum),
}

/// Factors an invertible `M` as `E_1 ... E_k` with elementary `E`.
fn elementary_factors(m: &Matrix) -> Result<Vec<Elementary>, MathError> {
    let n = m.len();
    let mut a = m.clone();
    let mut ops = Vec::new();
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| MathError::Degenerate("singular substitution matrix".into()))?;
        if p != col {
            a.swap(p, col);
            ops.push(Elementary::Swap(col, p));
        }
        if !a[col][col].is_one() {
            let s = a[col][col].inv()?;
            for v in a[col].iter_mut() {
                *v = &*v * &s;
            }
            ops.push(Elementary::Scale(col, s));
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let c = -&a[r][col];
                for j in 0..n {
                    if !a[col][j].is_zero() {
                        let t = &a[col][j] * &c;
                        a[r][j] = &a[r][j] + &t;
                    }
                }
                ops.push(Elementary::Shear(r, col, c));
            }
        }
    }
    // R_k ... R_1 M = I, hence M = R_1^{-1} ... R_k^{-1}.
    ops.into_iter()
        .map(|op| {
            Ok(match op {
                Elementary::Swap(i, j) => Elementary::Swap(i, j),
                Elementary::Scale(i, s) => Elementary::Scale(i, s.inv()?),
                Elementary::Shear(i, j, c) => Elementary::Shear(i, j, -c),
            })
        })
        .collect()
}

impl Form {
    fn assemble(nvars: usize, weighted: bool, degree: u32, map: HashMap<Mono, CycNum>) -> Form {
        Form { nvars, weighted, degree, terms: sorted_terms(map) }
    }

    pub fn zero(nvars: usize, degree: u32) -> Form {
        Form { nvars, weighted: false, degree, terms: Vec::new() }
    }

    /// Builds a form from terms, merging repeats and checking homogeneity.
    /// The degree is read off the first term; `degree_hint` is used for the zero form.
    pub fn from_terms<I>(nvars: usize, degree_hint: u32, terms: I) -> Result<Form, MathError>
    where
        I: IntoIterator<Item = (Mono, CycNum)>,
    {
        Form::build(nvars, false, degree_hint, terms)
    }

    /// Same as [`Form::from_terms`] with the last variable of weight 2.
    pub fn weighted_from_terms<I>(nvars: usize, degree_hint: u32, terms: I) -> Result<Form, MathError>
    where
        I: IntoIterator<Item = (Mono, CycNum)>,
    {
        Form::build(nvars, true, degree_hint, terms)
    }

    fn build<I>(nvars: usize, weighted: bool, degree_hint: u32, terms: I) -> Result<Form, MathError>
    where
        I: IntoIterator<Item = (Mono, CycNum)>,
    {
        if nvars == 0 || nvars > MAX_VARS {
            return Err(MathError::DimensionMismatch { expected: MAX_VARS, got: nvars });
        }
        let mut map = HashMap::new();
        for (m, c) in terms {
            if m.0[nvars..].iter().any(|&e| e != 0) {
                return Err(MathError::DimensionMismatch { expected: nvars, got: MAX_VARS });
            }
            accumulate(&mut map, m, c);
        }
        let f = Form::assemble(nvars, weighted, degree_hint, map);
        let degree = f.terms.first().map_or(degree_hint, |(m, _)| m.weighted(nvars, weighted));
        if f.terms.iter().any(|(m, _)| m.weighted(nvars, weighted) != degree) {
            return Err(MathError::Inhomogeneous(format!("terms of several degrees in {f}")));
        }
        Ok(Form { degree, ..f })
    }

    /// Shorthand for integer-coefficient forms: `(exponents, coefficient)` pairs.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u16], i64)]) -> Result<Form, MathError> {
        let deg = terms.first().map_or(0, |(e, _)| e.iter().map(|&x| x as u32).sum());
        Form::from_terms(nvars, deg, terms.iter().map(|(e, c)| (Mono::from_slice(e), CycNum::from_int(*c))))
    }

    pub fn var(nvars: usize, i: usize) -> Form {
        Form { nvars, weighted: false, degree: 1, terms: vec![(Mono::var(i), CycNum::one())] }
    }

    pub fn monomial(nvars: usize, exps: &[u16], c: CycNum) -> Form {
        let m = Mono::from_slice(exps);
        let degree = m.total();
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Form { nvars, weighted: false, degree, terms }
    }

    pub fn constant(nvars: usize, c: CycNum) -> Form {
        Form::monomial(nvars, &[], c)
    }

    /// The linear form `sum c_i x_i`.
    pub fn linear(coeffs: &[CycNum]) -> Form {
        let n = coeffs.len();
        let map = coeffs.iter().enumerate().map(|(i, c)| (Mono::var(i), c.clone())).collect();
        Form::assemble(n, false, 1, map)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    /// Terms in graded lexicographic order, largest first.
    pub fn terms(&self) -> &[(Mono, CycNum)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> CycNum {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|k| self.terms[k].1.clone())
            .unwrap_or_else(|_| CycNum::zero())
    }

    pub fn leading(&self) -> Option<&(Mono, CycNum)> {
        self.terms.first()
    }

    fn check_compatible(&self, o: &Form) {
        assert_eq!(self.nvars, o.nvars, "forms in different variable counts");
        assert_eq!(self.weighted, o.weighted, "weighted and unweighted forms mixed");
    }

    pub fn add(&self, o: &Form) -> Form {
        self.check_compatible(o);
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, o.degree, "adding forms of different degrees");
        let mut map: HashMap<Mono, CycNum> = self.terms.iter().cloned().collect();
        for (m, c) in &o.terms {
            accumulate(&mut map, *m, c.clone());
        }
        Form::assemble(self.nvars, self.weighted, self.degree, map)
    }

    pub fn neg(&self) -> Form {
        Form { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(), ..self.clone() }
    }

    pub fn sub(&self, o: &Form) -> Form {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &CycNum) -> Form {
        if s.is_zero() {
            return Form { terms: Vec::new(), ..self.clone() };
        }
        Form { terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(), ..self.clone() }
    }

    pub fn mul(&self, o: &Form) -> Form {
        self.check_compatible(o);
        let mut map = HashMap::with_capacity(self.len() * o.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                accumulate(&mut map, m1.mul(m2), c1 * c2);
            }
        }
        Form::assemble(self.nvars, self.weighted, self.degree + o.degree, map)
    }

    pub fn pow(&self, k: u32) -> Form {
        let mut acc = Form::constant(self.nvars, CycNum::one());
        acc.weighted = self.weighted;
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Rescales so the leading coefficient is 1.
    pub fn monic(&self) -> Form {
        match self.terms.first() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    /// The scalar `c` with `self = c * other`, if there is one.
    pub fn ratio_to(&self, other: &Form) -> Option<CycNum> {
        if self.nvars != other.nvars || self.terms.len() != other.terms.len() {
            return None;
        }
        let ((m0, a0), (n0, b0)) = (self.terms.first()?, other.terms.first()?);
        if m0 != n0 {
            return None;
        }
        let c = a0.checked_div(b0).ok()?;
        let same = self.terms.iter().zip(&other.terms).all(|((m, a), (n, b))| m == n && *a == b * &c);
        same.then_some(c)
    }

    /// Evaluates at an affine coordinate vector.
    pub fn eval(&self, x: &[CycNum]) -> Result<CycNum, MathError> {
        if x.len() != self.nvars {
            return Err(MathError::DimensionMismatch { expected: self.nvars, got: x.len() });
        }
        let mut maxe = [0u16; MAX_VARS];
        for (m, _) in &self.terms {
            for (a, b) in maxe.iter_mut().zip(m.0) {
                *a = (*a).max(b);
            }
        }
        let powers: Vec<Vec<CycNum>> = (0..self.nvars)
            .map(|i| {
                let mut p = vec![CycNum::one()];
                for _ in 0..maxe[i] {
                    let next = p.last().unwrap() * &x[i];
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = CycNum::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..self.nvars {
                if m.0[i] > 0 {
                    t = &t * &powers[i][m.0[i] as usize];
                    if t.is_zero() {
                        break;
                    }
                }
            }
            if !t.is_zero() {
                acc = &acc + &t;
            }
        }
        Ok(acc)
    }

    pub fn eval_point(&self, p: &ProjPoint) -> Result<CycNum, MathError> {
        self.eval(p.coords())
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Form {
        let w = if self.weighted && i == self.nvars - 1 { 2 } else { 1 };
        let mut map = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            m2.0[i] -= 1;
            accumulate(&mut map, m2, c * &CycNum::from_int(e as i64));
        }
        Form::assemble(self.nvars, self.weighted, self.degree.saturating_sub(w), map)
    }

    /// Smallest exponent of each variable over all terms.
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.iter();
        match it.next() {
            None => Mono::default(),
            Some((m0, _)) => it.fold(*m0, |acc, (m, _)| acc.gcd(m)),
        }
    }

    /// Divides by a monomial that divides every term.
    pub fn divide_mono(&self, d: &Mono) -> Form {
        let terms = self.terms.iter().map(|(m, c)| (d.quotient_of(m), c.clone())).collect();
        Form { terms, degree: self.degree - d.weighted(self.nvars, self.weighted), ..self.clone() }
    }

    pub fn mul_mono(&self, d: &Mono) -> Form {
        let terms = self.terms.iter().map(|(m, c)| (m.mul(d), c.clone())).collect();
        Form { terms, degree: self.degree + d.weighted(self.nvars, self.weighted), ..self.clone() }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Form) -> Option<Form> {
        self.check_compatible(d);
        let (lm, lc) = d.terms.first()?.clone();
        if self.is_zero() {
            return Some(Form::zero(self.nvars, self.degree.saturating_sub(d.degree)));
        }
        if d.degree > self.degree {
            return None;
        }
        if d.len() == 1 {
            if !self.terms.iter().all(|(m, _)| lm.divides(m)) {
                return None;
            }
            let inv = lc.inv().ok()?;
            let terms = self.terms.iter().map(|(m, c)| (lm.quotient_of(m), c * &inv)).collect();
            return Some(Form { terms, degree: self.degree - d.degree, ..self.clone() });
        }
        let lc_inv = lc.inv().ok()?;
        let mut rem: BTreeMap<Mono, CycNum> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Mono, CycNum)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = &c * &lc_inv;
            for (dm, dc) in d.terms.iter().skip(1) {
                let key = qm.mul(dm);
                let t = &qc * dc;
                let gone = match rem.get_mut(&key) {
                    Some(v) => {
                        *v = &*v - &t;
                        v.is_zero()
                    }
                    None => {
                        rem.insert(key, -t);
                        false
                    }
                };
                if gone {
                    rem.remove(&key);
                }
            }
            quot.push((qm, qc));
        }
        let map = quot.into_iter().collect();
        Some(Form::assemble(self.nvars, self.weighted, self.degree - d.degree, map))
    }

    fn apply_elementary(&self, op: &Elementary) -> Form {
        match op {
            Elementary::Swap(i, j) => {
                let map = self
                    .terms
                    .iter()
                    .map(|(m, c)| {
                        let mut m2 = *m;
                        m2.0.swap(*i, *j);
                        (m2, c.clone())
                    })
                    .collect();
                Form::assemble(self.nvars, self.weighted, self.degree, map)
            }
            Elementary::Scale(i, s) => {
                let mut pows = vec![CycNum::one()];
                let terms = self
                    .terms
                    .iter()
                    .map(|(m, c)| {
                        let e = m.0[*i] as usize;
                        while pows.len() <= e {
                            let next = pows.last().unwrap() * s;
                            pows.push(next);
                        }
                        (*m, c * &pows[e])
                    })
                    .collect();
                Form { terms, ..self.clone() }
            }
            Elementary::Shear(i, j, s) => self.shear(*i, *j, s),
        }
    }

    /// Substitutes `x_i := x_i + s * x_j`.
    pub fn shear(&self, i: usize, j: usize, s: &CycNum) -> Form {
        let maxe = self.terms.iter().map(|(m, _)| m.0[i]).max().unwrap_or(0) as usize;
        let mut spow = vec![CycNum::one()];
        for _ in 0..maxe {
            let next = spow.last().unwrap() * s;
            spow.push(next);
        }
        // binomial rows as rationals
        let mut binom: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
        for n in 1..=maxe {
            let prev = &binom[n - 1];
            let mut row = vec![Rational::one(); n + 1];
            for k in 1..n {
                row[k] = &prev[k - 1] + &prev[k];
            }
            binom.push(row);
        }
        let expand = |chunk: &[(Mono, CycNum)]| {
            let mut map = HashMap::with_capacity(chunk.len() * 2);
            for (m, c) in chunk {
                let p = m.0[i] as usize;
                for k in 0..=p {
                    let mut m2 = *m;
                    m2.0[i] = (p - k) as u16;
                    m2.0[j] += k as u16;
                    let coef = if k == 0 { c.clone() } else { (c * &spow[k]).scale(&binom[p][k]) };
                    accumulate(&mut map, m2, coef);
                }
            }
            map
        };
        let map = if self.terms.len() > 2 * PAR_BLOCK {
            merge_maps(self.terms.par_chunks(PAR_BLOCK).map(expand).collect())
        } else {
            expand(&self.terms)
        };
        Form::assemble(self.nvars, self.weighted, self.degree, map)
    }

    /// `f(M y)`: substitutes `x_i := sum_j M[i][j] y_j`. The result lives in
    /// `M`'s column count of variables.
    pub fn linear_substitute(&self, m: &Matrix) -> Result<Form, MathError> {
        if self.weighted {
            return Err(MathError::Inhomogeneous("linear substitution into a weighted form".into()));
        }
        if m.len() != self.nvars {
            return Err(MathError::DimensionMismatch { expected: self.nvars, got: m.len() });
        }
        let cols = m.first().map_or(0, |r| r.len());
        if cols == self.nvars && linalg::rank(m) == cols {
            let mut g = self.clone();
            for op in elementary_factors(m)? {
                g = g.apply_elementary(&op);
            }
            return Ok(g);
        }
        let comps: Vec<Form> = m.iter().map(|row| Form::linear(row)).collect();
        self.substitute_generic(&comps, cols)
    }

    /// Substitutes `x_i := components[i]`; components must share one degree.
    pub fn substitute(&self, components: &[Form]) -> Result<Form, MathError> {
        if components.len() != self.nvars {
            return Err(MathError::DimensionMismatch { expected: self.nvars, got: components.len() });
        }
        if self.weighted || components.iter().any(|c| c.weighted) {
            return Err(MathError::Inhomogeneous("substitution with weighted forms".into()));
        }
        let m = components[0].nvars;
        if components.iter().any(|c| c.nvars != m) {
            return Err(MathError::DimensionMismatch { expected: m, got: 0 });
        }
        let d = components[0].degree;
        if components.iter().any(|c| c.degree != d) {
            return Err(MathError::Inhomogeneous("components of different degrees".into()));
        }
        if components.iter().all(|c| c.len() <= 1) {
            return Ok(self.substitute_monomial(components, d));
        }
        if d == 1 {
            let mat: Matrix = components
                .iter()
                .map(|c| (0..m).map(|j| c.coeff(&Mono::var(j))).collect())
                .collect();
            return self.linear_substitute(&mat);
        }
        self.substitute_generic(components, m)
    }

    fn substitute_monomial(&self, components: &[Form], d: u32) -> Form {
        let m = components[0].nvars;
        let mut map = HashMap::with_capacity(self.len());
        'terms: for (e, c) in &self.terms {
            let mut mono = Mono::default();
            let mut coef = c.clone();
            for (i, comp) in components.iter().enumerate() {
                let k = e.0[i];
                if k == 0 {
                    continue;
                }
                let Some((cm, cc)) = comp.terms.first() else {
                    continue 'terms;
                };
                for (a, b) in mono.0.iter_mut().zip(cm.0) {
                    *a += b * k;
                }
                if !cc.is_one() {
                    coef = &coef * &cc.pow(k as i64).expect("nonnegative power");
                }
            }
            accumulate(&mut map, mono, coef);
        }
        Form::assemble(m, false, self.degree * d, map)
    }

    fn substitute_generic(&self, components: &[Form], m: usize) -> Result<Form, MathError> {
        let d = components[0].degree;
        let mut maxe = [0u16; MAX_VARS];
        for (e, _) in &self.terms {
            for (a, b) in maxe.iter_mut().zip(e.0) {
                *a = (*a).max(b);
            }
        }
        let powers: Vec<Vec<Form>> = components
            .iter()
            .enumerate()
            .map(|(i, comp)| {
                let mut p = vec![Form::constant(m, CycNum::one())];
                for _ in 0..maxe[i] {
                    let next = p.last().unwrap().mul(comp);
                    p.push(next);
                }
                p
            })
            .collect();
        let expand = |chunk: &[(Mono, CycNum)]| {
            let mut map: HashMap<Mono, CycNum> = HashMap::new();
            for (e, c) in chunk {
                let mut t = Form::constant(m, c.clone());
                for i in 0..self.nvars {
                    if e.0[i] > 0 {
                        t = t.mul(&powers[i][e.0[i] as usize]);
                    }
                }
                for (mm, cc) in t.terms {
                    accumulate(&mut map, mm, cc);
                }
            }
            map
        };
        let map = if self.terms.len() > 64 {
            merge_maps(self.terms.par_chunks(16).map(expand).collect())
        } else {
            expand(&self.terms)
        };
        Ok(Form::assemble(m, false, self.degree * d, map))
    }

    /// Drops every term involving a variable outside `keep`.
    pub(crate) fn restrict_to_vars(&self, keep: &[usize]) -> Form {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| (0..self.nvars).all(|i| keep.contains(&i) || m.0[i] == 0))
            .cloned()
            .collect();
        Form { terms, ..self.clone() }
    }

    /// Variable names used by the text form.
    fn var_name(&self, i: usize) -> String {
        if self.weighted && i == self.nvars - 1 {
            "w".to_string()
        } else {
            format!("x{i}")
        }
    }

    /// Parses the text form written by `Display`, also accepting ` - ` between
    /// terms and plain rational coefficients.
    pub fn parse(s: &str, nvars: usize) -> Result<Form, MathError> {
        Form::parse_impl(s, nvars, false)
    }

    pub fn parse_weighted(s: &str, nvars: usize) -> Result<Form, MathError> {
        Form::parse_impl(s, nvars, true)
    }

    fn parse_impl(s: &str, nvars: usize, weighted: bool) -> Result<Form, MathError> {
        let bad = |why: &str| MathError::Parse(format!("{why} in form `{s}`"));
        let s = s.trim();
        if s == "0" {
            return Ok(Form { nvars, weighted, degree: 0, terms: Vec::new() });
        }
        // split at top-level + and - that follow an operand
        let mut pieces: Vec<String> = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        let mut last_sig: Option<char> = None;
        for ch in s.chars() {
            match ch {
                '[' | '(' => depth += 1,
                ']' | ')' => depth -= 1,
                _ => {}
            }
            let splits = depth == 0
                && (ch == '+' || ch == '-')
                && matches!(last_sig, Some(p) if p.is_ascii_alphanumeric() || p == ']' || p == ')');
            if splits {
                pieces.push(std::mem::take(&mut cur));
                if ch == '-' {
                    cur.push('-');
                }
            } else {
                cur.push(ch);
            }
            if !ch.is_whitespace() {
                last_sig = Some(ch);
            }
        }
        pieces.push(cur);
        let mut terms = Vec::new();
        for piece in pieces {
            let mut p = piece.trim().to_string();
            let mut coef = CycNum::one();
            if let Some(rest) = p.strip_prefix('-') {
                coef = -coef;
                p = rest.trim().to_string();
            }
            let mut mono = Mono::default();
            let mut depth = 0;
            let mut factors = Vec::new();
            let mut f = String::new();
            for ch in p.chars() {
                match ch {
                    '[' => depth += 1,
                    ']' => depth -= 1,
                    _ => {}
                }
                if ch == '*' && depth == 0 {
                    factors.push(std::mem::take(&mut f));
                } else {
                    f.push(ch);
                }
            }
            factors.push(f);
            for fac in factors {
                let fac = fac.trim();
                if fac.is_empty() {
                    return Err(bad("empty factor"));
                }
                if let Some(inner) = fac.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                    coef = &coef * &inner.parse::<CycNum>()?;
                } else if fac.starts_with('x') || fac.starts_with('w') {
                    let (name, exp) = match fac.split_once('^') {
                        Some((n, e)) => (n, e.trim().parse::<u16>().map_err(|_| bad("bad exponent"))?),
                        None => (fac, 1),
                    };
                    let idx = if name == "w" {
                        if !weighted {
                            return Err(bad("w in an unweighted form"));
                        }
                        nvars - 1
                    } else {
                        name[1..].parse::<usize>().map_err(|_| bad("bad variable"))?
                    };
                    if idx >= nvars {
                        return Err(bad("variable index out of range"));
                    }
                    mono.0[idx] += exp;
                } else {
                    coef = &coef * &fac.parse::<CycNum>()?;
                }
            }
            terms.push((mono, coef));
        }
        Form::build(nvars, weighted, 0, terms)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = (0..self.nvars)
                .filter(|&i| m.0[i] > 0)
                .map(|i| {
                    if m.0[i] == 1 {
                        self.var_name(i)
                    } else {
                        format!("{}^{}", self.var_name(i), m.0[i])
                    }
                })
                .collect();
            let coef = match c.as_rational() {
                Some(q) if q.is_one() && !vars.is_empty() => None,
                Some(q) if q.denom().is_one() => Some(q.numer().to_string()),
                Some(q) => Some(format!("{}/{}", q.numer(), q.denom())),
                None => Some(format!("[{c}]")),
            };
            match (coef, vars.is_empty()) {
                (Some(c), true) => write!(f, "{c}")?,
                (Some(c), false) => write!(f, "{c}*{}", vars.join("*"))?,
                (None, _) => write!(f, "{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Form {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::consts::*;

    fn x(i: usize) -> Form {
        Form::var(4, i)
    }

    #[test]
    fn cremona_substitution_expands() {
        let f = x(0).mul(&x(1));
        let comps = vec![
            Form::parse("x1*x2*x3", 4).unwrap(),
            Form::parse("x0*x2*x3", 4).unwrap(),
            Form::parse("x0*x1*x3", 4).unwrap(),
            Form::parse("x0*x1*x2", 4).unwrap(),
        ];
        let g = f.substitute(&comps).unwrap();
        assert_eq!(g, Form::parse("x0*x1*x2^2*x3^2", 4).unwrap());
        assert_eq!(g.degree(), 6);
    }

    #[test]
    fn identity_substitution() {
        let f = Form::parse("x0^2 - 3*x1*x3 + [(1)*z^6@24]*x2^2", 4).unwrap();
        let id: Vec<Form> = (0..4).map(x).collect();
        assert_eq!(f.substitute(&id).unwrap(), f);
    }

    #[test]
    fn linear_routes_agree() {
        let f = Form::parse("x0^3 + 2*x0*x1*x2 - x3^3 + x1^2*x3", 4).unwrap();
        let m: Matrix = vec![
            vec![int(1), int(2), int(0), int(1)],
            vec![int(0), int(1), int(-1), int(0)],
            vec![int(3), int(0), int(1), int(1)],
            vec![int(1), int(1), int(1), int(2)],
        ];
        let comps: Vec<Form> = m.iter().map(|r| Form::linear(r)).collect();
        let fast = f.linear_substitute(&m).unwrap();
        let slow = f.substitute_generic(&comps, 4).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn exact_division() {
        let a = Form::parse("x0 + x1", 4).unwrap();
        let b = Form::parse("x0^2 - x2*x3 + x1*x3", 4).unwrap();
        let p = a.mul(&b);
        assert_eq!(p.exact_div(&a).unwrap(), b);
        assert!(b.exact_div(&a).is_none());
    }

    #[test]
    fn text_round_trip() {
        let f = Form::parse("x0^2*x1 + [(1)*z^6 + (2)@24]*x2^3 - 1/3*x1*x3^2", 4).unwrap();
        let g = Form::parse(&f.to_string(), 4).unwrap();
        assert_eq!(f, g);
        assert!(Form::parse("x0 + x1^2", 4).is_err());
    }

    #[test]
    fn weighted_degree() {
        let f = Form::parse_weighted("w^2 - x0*x1*x2*x3", 5).unwrap();
        assert_eq!(f.degree(), 4);
        let v: Vec<CycNum> = [1, 1, 1, 1, 1].iter().map(|&a| int(a)).collect();
        assert!(f.eval(&v).unwrap().is_zero());
    }

    #[test]
    fn evaluation() {
        let f1 = Form::parse("x0^2 + x1^2 + x2^2 + x3^2", 4).unwrap();
        let p = ProjPoint::new(vec![int(1), int(1), int(1), int(1)]).unwrap();
        assert_eq!(f1.eval_point(&p).unwrap(), int(4));
        let q = ProjPoint::new(vec![int(0), int(0), i(), int(1)]).unwrap();
        assert!(f1.eval_point(&q).unwrap().is_zero());
    }

}
