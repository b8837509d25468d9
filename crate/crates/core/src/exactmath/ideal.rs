//! Finite-dimensional slices of polynomial ideals: spans of forms of one degree,
//! truncated ideals, membership and Hilbert functions.

use std::collections::{BTreeMap, HashMap};

use super::{CycNum, Form, MathError, Mono};

/// All exponent vectors of total degree `d` in `nvars` variables, in descending order.
pub fn monomials(nvars: usize, d: u32) -> Vec<Mono> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut [u16], out: &mut Vec<Mono>) {
        if i + 1 == nvars {
            cur[i] = left as u16;
            out.push(Mono::from_slice(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(nvars, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    rec(nvars, 0, d, &mut cur, &mut out);
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// Dimension of the space of degree-`d` forms in `nvars` variables.
pub fn form_space_dim(nvars: usize, d: u32) -> usize {
    binomial(d as u64 + nvars as u64 - 1, nvars as u64 - 1) as usize
}

type SparseRow = BTreeMap<usize, CycNum>;

/// The linear span of a family of forms of a common degree, kept in sparse
/// semi-echelon form over the monomial basis.
#[derive(Clone, Debug)]
pub struct FormSpan {
    nvars: usize,
    degree: u32,
    index: HashMap<Mono, usize>,
    monos: Vec<Mono>,
    /// pivot column -> row with a 1 in that column and zeros before it
    rows: BTreeMap<usize, SparseRow>,
}

impl FormSpan {
    pub fn new(nvars: usize, degree: u32) -> FormSpan {
        FormSpan { nvars, degree, index: HashMap::new(), monos: Vec::new(), rows: BTreeMap::new() }
    }

    pub fn from_forms(forms: &[Form]) -> Result<FormSpan, MathError> {
        let first = forms.first().ok_or(MathError::EmptyGcd)?;
        let mut span = FormSpan::new(first.nvars(), first.degree());
        for f in forms {
            span.insert(f)?;
        }
        Ok(span)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    fn check(&self, f: &Form) -> Result<(), MathError> {
        if f.nvars() != self.nvars {
            return Err(MathError::DimensionMismatch { expected: self.nvars, got: f.nvars() });
        }
        if !f.is_zero() && f.degree() != self.degree {
            return Err(MathError::Inhomogeneous(format!(
                "degree {} form in a span of degree {}",
                f.degree(),
                self.degree
            )));
        }
        Ok(())
    }

    fn to_row(&mut self, f: &Form) -> SparseRow {
        let mut row = SparseRow::new();
        for (m, c) in f.terms() {
            let next = self.monos.len();
            let k = *self.index.entry(*m).or_insert(next);
            if k == next {
                self.monos.push(*m);
            }
            row.insert(k, c.clone());
        }
        row
    }

    fn lookup_row(&self, f: &Form) -> Option<SparseRow> {
        let mut row = SparseRow::new();
        for (m, c) in f.terms() {
            row.insert(*self.index.get(m)?, c.clone());
        }
        Some(row)
    }

    /// Reduces a row against the pivots; what is left is zero iff the row is in the span.
    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut cursor = 0;
        loop {
            let hit = row.range(cursor..).find(|(k, _)| self.rows.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = hit else { return row };
            for (j, v) in &self.rows[&k] {
                let t = v * &c;
                let e = row.entry(*j).or_insert_with(CycNum::zero);
                *e = &*e - &t;
                if e.is_zero() {
                    row.remove(j);
                }
            }
            cursor = k + 1;
        }
    }

    /// Adds a form; returns whether the dimension grew.
    pub fn insert(&mut self, f: &Form) -> Result<bool, MathError> {
        self.check(f)?;
        let row = self.to_row(f);
        let row = self.reduce(row);
        let Some((&p, lead)) = row.iter().next() else { return Ok(false) };
        let inv = lead.inv()?;
        let row: SparseRow = row.iter().map(|(k, v)| (*k, v * &inv)).collect();
        self.rows.insert(p, row);
        Ok(true)
    }

    pub fn contains(&self, f: &Form) -> Result<bool, MathError> {
        self.check(f)?;
        if f.is_zero() {
            return Ok(true);
        }
        Ok(match self.lookup_row(f) {
            Some(row) => self.reduce(row).is_empty(),
            None => false,
        })
    }

    /// True when both spans are the same subspace.
    pub fn same_as(&self, other: &FormSpan) -> Result<bool, MathError> {
        if self.dim() != other.dim() || self.degree != other.degree || self.nvars != other.nvars {
            return Ok(false);
        }
        for f in other.basis() {
            if !self.contains(&f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// An echelon basis of the span.
    pub fn basis(&self) -> Vec<Form> {
        self.rows
            .values()
            .map(|row| {
                Form::from_terms(self.nvars, self.degree, row.iter().map(|(k, c)| (self.monos[*k], c.clone())))
                    .expect("rows come from homogeneous forms")
            })
            .collect()
    }
}

/// The degree-`d` part of the ideal generated by `gens`.
pub fn truncated_ideal(gens: &[Form], d: u32) -> Result<FormSpan, MathError> {
    let nvars = gens.first().ok_or(MathError::EmptyGcd)?.nvars();
    let mut span = FormSpan::new(nvars, d);
    for g in gens.iter().filter(|g| !g.is_zero()) {
        if g.degree() > d {
            continue;
        }
        for m in monomials(nvars, d - g.degree()) {
            span.insert(&g.mul_mono(&m))?;
        }
    }
    Ok(span)
}

/// Whether `f` lies in the ideal generated by `gens` (degree-`deg f` slice).
pub fn ideal_contains(gens: &[Form], f: &Form) -> Result<bool, MathError> {
    if f.is_zero() {
        return Ok(true);
    }
    truncated_ideal(gens, f.degree())?.contains(f)
}

/// Whether two generator lists span the same ideal in every degree from the
/// largest generator degree on.
pub fn same_ideal(a: &[Form], b: &[Form]) -> Result<bool, MathError> {
    let d = a.iter().chain(b).map(Form::degree).max().ok_or(MathError::EmptyGcd)?;
    truncated_ideal(a, d)?.same_as(&truncated_ideal(b, d)?)
}

/// The value at `t` of the Hilbert function of the quotient by the ideal.
pub fn hilbert_function(gens: &[Form], t: u32) -> Result<usize, MathError> {
    let nvars = gens.first().ok_or(MathError::EmptyGcd)?.nvars();
    Ok(form_space_dim(nvars, t) - truncated_ideal(gens, t)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Form {
        Form::parse(s, 4).unwrap()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(4, 4).len(), 35);
        assert_eq!(form_space_dim(4, 4), 35);
        assert_eq!(monomials(3, 0).len(), 1);
        let m = monomials(2, 2);
        assert_eq!(m, vec![Mono::from_slice(&[2, 0]), Mono::from_slice(&[1, 1]), Mono::from_slice(&[0, 2])]);
    }

    #[test]
    fn span_membership() {
        let s = FormSpan::from_forms(&[f("x0^2 + x1^2"), f("x0^2 - x1^2")]).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&f("x1^2")).unwrap());
        assert!(!s.contains(&f("x0*x1")).unwrap());
        assert!(!s.contains(&f("x2^2")).unwrap());
    }

    #[test]
    fn twisted_cubic_hilbert_polynomial() {
        // the 2x2 minors of [[x0,x1,x2],[x1,x2,x3]]
        let gens = [f("x0*x2 - x1^2"), f("x0*x3 - x1*x2"), f("x1*x3 - x2^2")];
        for t in 1..6 {
            assert_eq!(hilbert_function(&gens, t).unwrap(), 3 * t as usize + 1);
        }
    }

    #[test]
    fn ideal_equality_ignores_generators() {
        let a = [f("x0"), f("x1")];
        let b = [f("x0 + x1"), f("x0 - x1")];
        assert!(same_ideal(&a, &b).unwrap());
        assert!(ideal_contains(&a, &f("x0*x2 + x1^2")).unwrap());
        assert!(!ideal_contains(&a, &f("x2^2")).unwrap());
    }
}
