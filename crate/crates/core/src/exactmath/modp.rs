//! Reduction of cyclotomic numbers modulo a prime that splits completely in
//! `Q(zeta_c)`, for fast rank bounds.
//!
//! Reduction is a ring map, so ranks can only drop: a Hilbert function
//! computed modulo `p` is an upper bound for the true one. A zero value is
//! therefore a proof, while a positive value is correct unless `p` is
//! unlucky.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::ideal::{form_space_dim, monomials};
use super::{CycNum, Form, MathError, Mono};

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The field `F_p` with a chosen primitive `c`-th root of unity.
#[derive(Clone, Copy, Debug)]
pub struct ModP {
    pub p: u64,
    pub conductor: u32,
    zeta: u64,
}

impl ModP {
    /// The smallest prime `p >= 10^9` with `p = 1 mod c`.
    pub fn for_conductor(c: u32) -> ModP {
        let c64 = c as u64;
        let mut p = 1_000_000_000 / c64 * c64 + 1;
        while !is_prime(p) {
            p += c64;
        }
        let qs = prime_factors(c64);
        let zeta = (2..p)
            .map(|g| pow_mod(g, (p - 1) / c64, p))
            .find(|&w| qs.iter().all(|q| pow_mod(w, c64 / q, p) != 1))
            .expect("F_p* is cyclic");
        ModP { p, conductor: c, zeta }
    }

    fn big(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced below p")
    }

    pub fn reduce(&self, x: &CycNum) -> Result<u64, MathError> {
        if x.conductor() != self.conductor {
            return Err(MathError::ConductorMismatch(x.conductor(), self.conductor));
        }
        let mut acc = 0u64;
        let mut zk = 1u64;
        for q in x.coeffs() {
            if !q.is_zero() {
                let den = self.big(q.denom());
                if den == 0 {
                    return Err(MathError::DivisionByZero);
                }
                let v = self.big(q.numer()) * pow_mod(den, self.p - 2, self.p) % self.p;
                acc = (acc + v * zk) % self.p;
            }
            zk = zk * self.zeta % self.p;
        }
        Ok(acc)
    }

    /// Rank of a dense matrix over `F_p`.
    pub fn rank(&self, mut m: Vec<Vec<u64>>) -> usize {
        let p = self.p;
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
            m.swap(rank, piv);
            let inv = pow_mod(m[rank][col], p - 2, p);
            for v in m[rank].iter_mut() {
                *v = *v * inv % p;
            }
            let pivot_row = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let f = row[col];
                    for (a, b) in row.iter_mut().zip(&pivot_row) {
                        *a = (*a + p - f * b % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Coefficients (low degree first) of `f(a + t b)` in `F_p[t]`.
    pub(crate) fn restrict_to_line(&self, f: &Form, a: &[u64], b: &[u64]) -> Result<Vec<u64>, MathError> {
        let p = self.p;
        let d = f.degree() as usize;
        // powers[i][e] = (a_i + t b_i)^e
        let powers: Vec<Vec<Vec<u64>>> = (0..f.nvars())
            .map(|i| {
                let mut out = vec![vec![1u64]];
                for _ in 0..d {
                    let prev = out.last().unwrap();
                    let mut next = vec![0u64; prev.len() + 1];
                    for (k, c) in prev.iter().enumerate() {
                        next[k] = (next[k] + c * a[i]) % p;
                        next[k + 1] = (next[k + 1] + c * b[i]) % p;
                    }
                    out.push(next);
                }
                out
            })
            .collect();
        let mut acc = vec![0u64; d + 1];
        for (m, c) in f.terms() {
            let mut term = vec![self.reduce(c)?];
            for (i, pw) in powers.iter().enumerate() {
                let e = m.0[i] as usize;
                if e > 0 {
                    term = self.poly_mul(&term, &pw[e]);
                }
            }
            for (k, v) in term.iter().enumerate() {
                acc[k] = (acc[k] + v) % p;
            }
        }
        Ok(acc)
    }

    fn poly_mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; x.len() + y.len() - 1];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, b) in y.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        out
    }

    fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn poly_rem(&self, a: Vec<u64>, b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut r = a;
        let inv = pow_mod(*b.last().expect("nonzero divisor"), p - 2, p);
        while r.len() >= b.len() {
            let q = r.last().unwrap() * inv % p;
            let shift = r.len() - b.len();
            for (k, c) in b.iter().enumerate() {
                r[shift + k] = (r[shift + k] + p - q * c % p) % p;
            }
            r.pop();
            r = ModP::trim(r);
        }
        r
    }

    /// Degree of the gcd of univariate polynomials over `F_p`; zero
    /// polynomials are ignored.
    pub(crate) fn gcd_degree(&self, polys: Vec<Vec<u64>>) -> usize {
        let mut g: Vec<u64> = Vec::new();
        for poly in polys {
            let mut a = ModP::trim(poly);
            let mut b = g;
            while !b.is_empty() {
                let r = self.poly_rem(a, &b);
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

    /// Upper bound for the Hilbert function of the quotient at `t`, exact
    /// unless `p` is unlucky.
    pub fn hilbert_function(&self, gens: &[Form], t: u32) -> Result<usize, MathError> {
        let nvars = gens.first().ok_or(MathError::EmptyGcd)?.nvars();
        let cols: std::collections::HashMap<Mono, usize> =
            monomials(nvars, t).into_iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut rows = Vec::new();
        for g in gens.iter().filter(|g| !g.is_zero() && g.degree() <= t) {
            let reduced: Vec<(Mono, u64)> =
                g.terms().iter().map(|(m, c)| Ok((*m, self.reduce(c)?))).collect::<Result<_, MathError>>()?;
            for shift in monomials(nvars, t - g.degree()) {
                let mut row = vec![0u64; cols.len()];
                for (m, c) in &reduced {
                    row[cols[&m.mul(&shift)]] = *c;
                }
                rows.push(row);
            }
        }
        Ok(form_space_dim(nvars, t) - self.rank(rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::consts::{i, sqrt2};
    use crate::exactmath::hilbert_function;

    #[test]
    fn roots_reduce_consistently() {
        let f = ModP::for_conductor(24);
        assert_eq!(f.p % 24, 1);
        let ii = f.reduce(&i()).unwrap();
        assert_eq!(ii * ii % f.p, f.p - 1);
        let s = f.reduce(&sqrt2()).unwrap();
        assert_eq!(s * s % f.p, 2);
    }

    #[test]
    fn agrees_with_exact_hilbert_function() {
        let gens = [Form::parse("x0*x2 - x1^2", 4).unwrap(), Form::parse("x1*x3 - x2^2", 4).unwrap(), Form::parse("x0*x3 - x1*x2", 4).unwrap()];
        let f = ModP::for_conductor(24);
        for t in 1..5 {
            assert_eq!(f.hilbert_function(&gens, t).unwrap(), hilbert_function(&gens, t).unwrap());
        }
    }
}
