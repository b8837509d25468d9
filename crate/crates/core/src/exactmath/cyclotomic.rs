//! Exact elements of cyclotomic fields `Q(zeta_c)`.
//!
//! An element is stored on the power basis `1, z, ..., z^(phi(c)-1)` and is
//! always reduced modulo the `c`-th cyclotomic polynomial, so equality of values
//! is equality of coefficient vectors.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::MathError;

/// Exact rational numbers.
pub type Rational = BigRational;

/// Conductor used when nothing else is requested.
pub const DEFAULT_CONDUCTOR: u32 = 24;

/// Largest conductor accepted; keeps the integer reduction tables small.
const MAX_CONDUCTOR: u32 = 720;

/// Builds the rational `p/q`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Reduction data for one conductor.
struct Field {
    phi: usize,
    /// `red[j]` holds `z^(phi + j)` expressed on the power basis, for `j < c`.
    red: Vec<Vec<i64>>,
}

fn poly_divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // Both monic, integer coefficients, low degree first.
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qlen = num.len() - dn;
    let mut quo = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        quo[k] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    quo
}

fn cyclotomic_poly(c: u32) -> Vec<i64> {
    // x^c - 1 divided by every Phi_d with d a proper divisor of c.
    let mut p = vec![0i64; c as usize + 1];
    p[0] = -1;
    p[c as usize] = 1;
    for d in 1..c {
        if c % d == 0 {
            p = poly_divide_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

impl Field {
    fn build(c: u32) -> Field {
        let phi_poly = cyclotomic_poly(c);
        let phi = phi_poly.len() - 1;
        let mut red = Vec::with_capacity(c as usize);
        let mut cur: Vec<i64> = phi_poly[..phi].iter().map(|a| -a).collect();
        for _ in 0..c {
            red.push(cur.clone());
            // multiply by z and reduce the overflow coefficient
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            next[1..phi].copy_from_slice(&cur[..(phi - 1)]);
            for k in 0..phi {
                next[k] -= top * phi_poly[k];
            }
            cur = next;
        }
        Field { phi, red }
    }
}

fn field(c: u32) -> Arc<Field> {
    static F24: OnceLock<Arc<Field>> = OnceLock::new();
    if c == DEFAULT_CONDUCTOR {
        return F24.get_or_init(|| Arc::new(Field::build(DEFAULT_CONDUCTOR))).clone();
    }
    static REGISTRY: OnceLock<Mutex<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = reg.lock().expect("cyclotomic registry poisoned");
    guard.entry(c).or_insert_with(|| Arc::new(Field::build(c))).clone()
}

/// Euler's totient of `c`.
pub fn totient(c: u32) -> usize {
    field(c).phi
}

/// An exact element of `Q(zeta_c)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl CycNum {
    fn check_conductor(c: u32) -> Result<(), MathError> {
        if c == 0 || c > MAX_CONDUCTOR {
            return Err(MathError::UnsupportedConductor(c));
        }
        Ok(())
    }

    /// The zero of `Q(zeta_c)`.
    pub fn zero_in(c: u32) -> CycNum {
        let phi = field(c).phi;
        CycNum { conductor: c, coeffs: vec![Rational::zero(); phi] }
    }

    /// The zero of the default field.
    pub fn zero() -> CycNum {
        CycNum::zero_in(DEFAULT_CONDUCTOR)
    }

    pub fn one_in(c: u32) -> CycNum {
        CycNum::from_rational_in(Rational::one(), c)
    }

    pub fn one() -> CycNum {
        CycNum::one_in(DEFAULT_CONDUCTOR)
    }

    pub fn from_rational_in(q: Rational, c: u32) -> CycNum {
        let mut z = CycNum::zero_in(c);
        z.coeffs[0] = q;
        z
    }

    pub fn from_rational(q: Rational) -> CycNum {
        CycNum::from_rational_in(q, DEFAULT_CONDUCTOR)
    }

    pub fn from_int(n: i64) -> CycNum {
        CycNum::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_int_in(n: i64, c: u32) -> CycNum {
        CycNum::from_rational_in(Rational::from_integer(BigInt::from(n)), c)
    }

    /// `zeta_c^k` inside `Q(zeta_c)`.
    pub fn root_of_unity(c: u32, k: i64) -> CycNum {
        let e = k.rem_euclid(c as i64) as usize;
        let mut raw = vec![Rational::zero(); e + 1];
        raw[e] = Rational::one();
        CycNum::from_power_coeffs(c, &raw)
    }

    /// Reduces an arbitrary coefficient list on `1, z, z^2, ...`.
    pub fn from_power_coeffs(c: u32, raw: &[Rational]) -> CycNum {
        let f = field(c);
        let phi = f.phi;
        let mut out = vec![Rational::zero(); phi];
        for (k, a) in raw.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            add_power(&f, &mut out, k, a, c);
        }
        CycNum { conductor: c, coeffs: out }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coordinates on the power basis.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|a| a.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|a| a.is_zero())
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|a| a.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses the element in `Q(zeta_target)`; `target` must be a multiple of the conductor.
    pub fn promote(&self, target: u32) -> Result<CycNum, MathError> {
        if target == self.conductor {
            return Ok(self.clone());
        }
        CycNum::check_conductor(target)?;
        if target % self.conductor != 0 {
            return Err(MathError::ConductorMismatch(self.conductor, target));
        }
        let step = (target / self.conductor) as usize;
        let mut raw = vec![Rational::zero(); step * self.coeffs.len()];
        for (k, a) in self.coeffs.iter().enumerate() {
            raw[k * step] = a.clone();
        }
        Ok(CycNum::from_power_coeffs(target, &raw))
    }

    fn unify(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        let l = a.conductor.lcm(&b.conductor);
        (
            a.promote(l).expect("lcm conductor supported"),
            b.promote(l).expect("lcm conductor supported"),
        )
    }

    fn add_ref(&self, other: &CycNum) -> CycNum {
        if self.conductor != other.conductor {
            let (a, b) = CycNum::unify(self, other);
            return a.add_ref(&b);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CycNum { conductor: self.conductor, coeffs }
    }

    fn sub_ref(&self, other: &CycNum) -> CycNum {
        if self.conductor != other.conductor {
            let (a, b) = CycNum::unify(self, other);
            return a.sub_ref(&b);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        CycNum { conductor: self.conductor, coeffs }
    }

    fn mul_ref(&self, other: &CycNum) -> CycNum {
        if self.conductor != other.conductor {
            let (a, b) = CycNum::unify(self, other);
            return a.mul_ref(&b);
        }
        if let Some(q) = other.as_rational() {
            return self.scale(q);
        }
        if let Some(q) = self.as_rational() {
            return other.scale(q);
        }
        let f = field(self.conductor);
        let phi = f.phi;
        let mut raw = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        let mut out: Vec<Rational> = raw[..phi].to_vec();
        for (j, a) in raw[phi..].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, r) in f.red[j].iter().enumerate() {
                if *r != 0 {
                    out[k] += a * Rational::from_integer(BigInt::from(*r));
                }
            }
        }
        CycNum { conductor: self.conductor, coeffs: out }
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, q: &Rational) -> CycNum {
        if q.is_zero() {
            return CycNum::zero_in(self.conductor);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| if a.is_zero() { Rational::zero() } else { a * q })
            .collect();
        CycNum { conductor: self.conductor, coeffs }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<CycNum, MathError> {
        if self.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(CycNum::from_rational_in(q.recip(), self.conductor));
        }
        // Solve (multiplication by self) * x = 1 on the power basis.
        let phi = self.coeffs.len();
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(phi);
        for k in 0..phi {
            let basis = CycNum::root_of_unity(self.conductor, k as i64);
            cols.push(self.mul_ref(&basis).coeffs);
        }
        let mut m: Vec<Vec<Rational>> = (0..phi)
            .map(|r| {
                let mut row: Vec<Rational> = (0..phi).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..phi {
            let piv = (col..phi).find(|&r| !m[r][col].is_zero()).ok_or(MathError::DivisionByZero)?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v = &*v / &p;
            }
            for r in 0..phi {
                if r != col && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c2 in col..=phi {
                        let t = &m[col][c2] * &factor;
                        m[r][c2] -= t;
                    }
                }
            }
        }
        let coeffs = m.into_iter().map(|row| row[phi].clone()).collect();
        Ok(CycNum { conductor: self.conductor, coeffs })
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<CycNum, MathError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = CycNum::one_in(self.conductor);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_ref(&base);
            }
        }
        Ok(acc)
    }

    /// Checked division.
    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum, MathError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// Whether the element is a root of unity of the ambient field, and if so
    /// the exponent `k` with value `+-zeta_c^k` folded into a `2c`-th root index.
    pub fn root_of_unity_index(&self) -> Option<u32> {
        let c = self.conductor;
        let order = if c % 2 == 0 { c } else { 2 * c };
        let gen = if c % 2 == 0 {
            CycNum::root_of_unity(c, 1)
        } else {
            CycNum::root_of_unity(c, 1).mul_ref(&CycNum::from_int_in(-1, c))
        };
        let mut cur = CycNum::one_in(c);
        for k in 0..order {
            if &cur == self {
                return Some(k);
            }
            cur = cur.mul_ref(&gen);
        }
        None
    }
}

fn add_power(f: &Field, out: &mut [Rational], k: usize, a: &Rational, c: u32) {
    let k = k % c as usize;
    let phi = f.phi;
    if k < phi {
        out[k] += a;
    } else {
        for (i, r) in f.red[k - phi].iter().enumerate() {
            if *r != 0 {
                out[i] += a * Rational::from_integer(BigInt::from(*r));
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                self.$imp(rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$imp(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$imp(rhs)
            }
        }
        impl $tr<CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                self.$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl CycNum {
    fn div_ref(&self, rhs: &CycNum) -> CycNum {
        self.checked_div(rhs).expect("division by zero in cyclotomic field")
    }
}
forward_binop!(Div, div, div_ref);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { conductor: self.conductor, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

/// The four field operations, for callers that dispatch on a tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact field arithmetic with an explicit division-by-zero error.
pub fn cyc_arith(a: &CycNum, b: &CycNum, op: ArithOp) -> Result<CycNum, MathError> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}

/// Named constants of the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstName {
    I,
    Zeta3,
    Zeta6,
    Zeta8,
    Sqrt2,
    Sqrt3I,
    Rational(i64, i64),
    Zeta(u32, i64),
}

impl FromStr for ConstName {
    type Err = MathError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let args = |inner: &str| -> Result<(i64, i64), MathError> {
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if parts.len() != 2 {
                return Err(MathError::UnknownConstant(s.to_string()));
            }
            let a = parts[0].parse().map_err(|_| MathError::UnknownConstant(s.to_string()))?;
            let b = parts[1].parse().map_err(|_| MathError::UnknownConstant(s.to_string()))?;
            Ok((a, b))
        };
        match t {
            "i" => Ok(ConstName::I),
            "zeta3" => Ok(ConstName::Zeta3),
            "zeta6" => Ok(ConstName::Zeta6),
            "zeta8" => Ok(ConstName::Zeta8),
            "sqrt2" => Ok(ConstName::Sqrt2),
            "sqrt3_i" => Ok(ConstName::Sqrt3I),
            _ => {
                if let Some(inner) = t.strip_prefix("rational(").and_then(|r| r.strip_suffix(')')) {
                    let (p, q) = args(inner)?;
                    Ok(ConstName::Rational(p, q))
                } else if let Some(inner) = t.strip_prefix("zeta(").and_then(|r| r.strip_suffix(')')) {
                    let (c, k) = args(inner)?;
                    if c <= 0 {
                        return Err(MathError::UnsupportedConductor(0));
                    }
                    Ok(ConstName::Zeta(c as u32, k))
                } else {
                    Err(MathError::UnknownConstant(s.to_string()))
                }
            }
        }
    }
}

/// A named constant in the default field (conductor 24).
pub fn cyc_constant(name: &ConstName) -> Result<CycNum, MathError> {
    cyc_constant_in(name, DEFAULT_CONDUCTOR)
}

/// A named constant in `Q(zeta_conductor)`. Named constants need `24 | conductor`;
/// `Zeta(c, k)` needs `c | conductor`.
pub fn cyc_constant_in(name: &ConstName, conductor: u32) -> Result<CycNum, MathError> {
    CycNum::check_conductor(conductor)?;
    let z = |k: i64| -> Result<CycNum, MathError> {
        if conductor % 24 != 0 {
            return Err(MathError::UnsupportedConductor(conductor));
        }
        Ok(CycNum::root_of_unity(conductor, k * (conductor / 24) as i64))
    };
    match name {
        ConstName::I => z(6),
        ConstName::Zeta3 => z(8),
        ConstName::Zeta6 => z(4),
        ConstName::Zeta8 => z(3),
        ConstName::Sqrt2 => Ok(z(3)? + z(21)?),
        ConstName::Sqrt3I => Ok(z(8)? * CycNum::from_int_in(2, conductor) + CycNum::one_in(conductor)),
        ConstName::Rational(p, q) => {
            if *q == 0 {
                return Err(MathError::DivisionByZero);
            }
            Ok(CycNum::from_rational_in(rat(*p, *q), conductor))
        }
        ConstName::Zeta(c, k) => {
            if *c == 0 || conductor % c != 0 {
                return Err(MathError::UnsupportedConductor(*c));
            }
            Ok(CycNum::root_of_unity(conductor, k * (conductor / c) as i64))
        }
    }
}

/// Shorthand constructors for the default field.
pub mod consts {
    use super::*;

    pub fn i() -> CycNum {
        CycNum::root_of_unity(DEFAULT_CONDUCTOR, 6)
    }
    pub fn zeta3() -> CycNum {
        CycNum::root_of_unity(DEFAULT_CONDUCTOR, 8)
    }
    pub fn zeta6() -> CycNum {
        CycNum::root_of_unity(DEFAULT_CONDUCTOR, 4)
    }
    pub fn zeta8() -> CycNum {
        CycNum::root_of_unity(DEFAULT_CONDUCTOR, 3)
    }
    pub fn sqrt2() -> CycNum {
        zeta8() + CycNum::root_of_unity(DEFAULT_CONDUCTOR, 21)
    }
    /// The square root of -3 given by `2 zeta_3 + 1`.
    pub fn sqrt3_i() -> CycNum {
        zeta3() * CycNum::from_int(2) + CycNum::one()
    }
    pub fn int(n: i64) -> CycNum {
        CycNum::from_int(n)
    }
    pub fn frac(p: i64, q: i64) -> CycNum {
        CycNum::from_rational(rat(p, q))
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if k == 0 {
                parts.push(format!("({})", fmt_rational(a)));
            } else {
                parts.push(format!("({})*z^{}", fmt_rational(a), k));
            }
        }
        if parts.is_empty() {
            write!(f, "0@{}", self.conductor)
        } else {
            write!(f, "{}@{}", parts.join(" + "), self.conductor)
        }
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(Rational::new(p, q))
    } else {
        let p: BigInt = s.parse().ok()?;
        Some(Rational::from_integer(p))
    }
}

impl CycNum {
    /// Parses the canonical text form `(p/q)*z^k + ...@c`.
    ///
    /// Without an `@c` suffix the body is read in `default_conductor`. The body may
    /// also be a bare rational (`-1/2`) or a constant name understood by
    /// [`ConstName`], which is convenient in hand-written descriptors.
    pub fn parse_with_default(s: &str, default_conductor: u32) -> Result<CycNum, MathError> {
        let bad = || MathError::Parse(format!("bad cyclotomic literal `{s}`"));
        let (body, c) = match s.rsplit_once('@') {
            Some((b, c)) => (b.trim(), c.trim().parse::<u32>().map_err(|_| bad())?),
            None => (s.trim(), default_conductor),
        };
        CycNum::check_conductor(c)?;
        if body == "0" {
            return Ok(CycNum::zero_in(c));
        }
        if let Some(q) = parse_rational(body) {
            return Ok(CycNum::from_rational_in(q, c));
        }
        if !body.starts_with('(') {
            let name: ConstName = body.parse()?;
            return cyc_constant_in(&name, c);
        }
        let mut raw: Vec<Rational> = Vec::new();
        for term in body.split(" + ") {
            let term = term.trim();
            let close = term.find(')').ok_or_else(bad)?;
            if !term.starts_with('(') {
                return Err(bad());
            }
            let q = parse_rational(&term[1..close]).ok_or_else(bad)?;
            let rest = term[close + 1..].trim();
            let k = if rest.is_empty() {
                0usize
            } else {
                let e = rest.strip_prefix("*z^").ok_or_else(bad)?;
                e.trim().parse::<usize>().map_err(|_| bad())?
            };
            if raw.len() <= k {
                raw.resize(k + 1, Rational::zero());
            }
            raw[k] += q;
        }
        Ok(CycNum::from_power_coeffs(c, &raw))
    }
}

impl FromStr for CycNum {
    type Err = MathError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CycNum::parse_with_default(s, DEFAULT_CONDUCTOR)
    }
}

impl serde::Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for CycNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::consts::*;
    use super::*;

    #[test]
    fn defining_relations() {
        assert_eq!(&i() * &i(), int(-1));
        let z3 = zeta3();
        assert!((&(&z3 * &z3) + &z3 + one_()).is_zero());
        assert_eq!(&zeta8() * &zeta8(), i());
        assert_eq!(&sqrt3_i() * &sqrt3_i(), int(-3));
        assert_eq!(&sqrt2() * &sqrt2(), int(2));
    }

    fn one_() -> CycNum {
        CycNum::one()
    }

    #[test]
    fn cube_of_primitive_third_root() {
        let w = (&int(-1) + &sqrt3_i()) / int(2);
        assert_eq!(w.pow(3).unwrap(), int(1));
        assert_eq!(w, zeta3());
    }

    #[test]
    fn inverse_round_trip() {
        let a = &zeta8() + &frac(3, 7) + &(&i() * &sqrt3_i());
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert!(CycNum::zero().inv().is_err());
    }

    #[test]
    fn text_round_trip() {
        let a = &zeta8() * &frac(-5, 3) + int(2);
        let s = a.to_string();
        assert_eq!(s.parse::<CycNum>().unwrap(), a);
        assert_eq!("0@24".parse::<CycNum>().unwrap(), CycNum::zero());
        assert_eq!("i".parse::<CycNum>().unwrap(), i());
        assert_eq!("-1/2".parse::<CycNum>().unwrap(), frac(-1, 2));
    }

    #[test]
    fn promotion_preserves_value() {
        let z = CycNum::root_of_unity(3, 1);
        let p = z.promote(24).unwrap();
        assert_eq!(p, zeta3());
        assert!(z.promote(8).is_err());
        // mixed-conductor arithmetic goes through the common field
        assert_eq!(&z + &CycNum::one(), &zeta3() + &CycNum::one());
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(24), vec![1, 0, 0, 0, -1, 0, 0, 0, 1]);
        assert_eq!(totient(24), 8);
        assert_eq!(totient(7), 6);
    }

    #[test]
    fn constant_names() {
        assert_eq!(cyc_constant(&"zeta(8,1)".parse().unwrap()).unwrap(), zeta8());
        assert!("bogus".parse::<ConstName>().is_err());
        assert!(cyc_constant_in(&ConstName::I, 10).is_err());
        assert_eq!(cyc_constant(&ConstName::Rational(3, 4)).unwrap(), frac(3, 4));
    }

    #[test]
    fn root_index() {
        assert_eq!(i().root_of_unity_index(), Some(6));
        assert_eq!(int(2).root_of_unity_index(), None);
    }
}
