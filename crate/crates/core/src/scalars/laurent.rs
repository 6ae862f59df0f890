use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::Signed;

use crate::error::Error;
use crate::Result;

use super::unipoly::UniPoly;
use super::Scalar;

/// A Laurent monomial: finitely many variables with nonzero integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Monomial(BTreeMap<String, i64>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(name: &str, exp: i64) -> Self {
        let mut m = BTreeMap::new();
        if exp != 0 {
            m.insert(name.to_string(), exp);
        }
        Monomial(m)
    }

    pub fn exponents(&self) -> &BTreeMap<String, i64> {
        &self.0
    }

    pub fn exponent_of(&self, name: &str) -> i64 {
        self.0.get(name).copied().unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (v, e) in &other.0 {
            let entry = out.entry(v.clone()).or_insert(0);
            *entry += e;
            if *entry == 0 {
                out.remove(v);
            }
        }
        Monomial(out)
    }

    pub fn inv(&self) -> Self {
        Monomial(self.0.iter().map(|(v, e)| (v.clone(), -e)).collect())
    }

    /// Whether `self / other` has no negative exponents in the ordinary
    /// polynomial sense (used by exact division).
    fn divides_into(&self, other: &Self) -> bool {
        self.0.iter().all(|(v, e)| other.exponent_of(v) >= *e)
    }
}

/// A multivariate Laurent polynomial with [`Scalar`] coefficients.
///
/// No zero coefficients are stored; the zero polynomial has an empty term
/// map. Units are exactly the single-term polynomials `c·x^k` with `c ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        LaurentPoly { terms }
    }

    pub fn var(name: &str) -> Self {
        Self::term(Scalar::one(), Monomial::var(name, 1))
    }

    pub fn var_pow(name: &str, exp: i64) -> Self {
        Self::term(Scalar::one(), Monomial::var(name, exp))
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (m, c) in it {
            p.add_term(&m, &c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map_or(false, |c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            return Some(Scalar::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::unit()) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            out.extend(m.exponents().keys().cloned());
        }
        out
    }

    fn add_term(&mut self, m: &Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_zero() {
                    self.terms.remove(m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(&ma.mul(mb), &ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k.mul(c))).collect() }
    }

    /// Units of the Laurent ring are single terms `c·x^k` with `c ≠ 0`.
    pub fn as_unit(&self) -> Option<(Scalar, Monomial)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return Some((c.clone(), m.clone()));
        }
        None
    }

    pub fn inv(&self) -> Result<Self> {
        match self.as_unit() {
            Some((c, m)) => Ok(Self::term(c.inv()?, m.inv())),
            None => {
                if self.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Err(Error::Unsupported("only monomials are invertible in a Laurent ring".into()))
                }
            }
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(LaurentPoly::one());
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = LaurentPoly::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Exact substitution of nonzero scalar values for every variable.
    pub fn eval(&self, point: &BTreeMap<String, Scalar>) -> Result<Scalar> {
        for v in self.vars() {
            match point.get(&v) {
                None => return Err(Error::MissingAssignment(v)),
                Some(s) if s.is_zero() => return Err(Error::ZeroEvaluationPoint(v)),
                _ => {}
            }
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.exponents() {
                t = t.mul(&point[v].pow_i64(*e)?);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Substitute scalar values for a subset of the variables.
    pub fn eval_partial(&self, point: &BTreeMap<String, Scalar>) -> Result<LaurentPoly> {
        for (v, s) in point {
            if s.is_zero() {
                return Err(Error::ZeroEvaluationPoint(v.clone()));
            }
        }
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Monomial::unit();
            for (v, e) in m.exponents() {
                match point.get(v) {
                    Some(s) => coeff = coeff.mul(&s.pow_i64(*e)?),
                    None => rest = rest.mul(&Monomial::var(v, *e)),
                }
            }
            out.add_term(&rest, &coeff);
        }
        Ok(out)
    }

    /// The single variable of a univariate Laurent polynomial
    /// (None for constants; error when more than one variable occurs).
    pub fn univariate_var(&self) -> Result<Option<String>> {
        let vars = self.vars();
        match vars.len() {
            0 => Ok(None),
            1 => Ok(Some(vars.into_iter().next().unwrap())),
            _ => Err(Error::Unsupported(format!(
                "operation requires a univariate polynomial, found variables {:?}",
                vars
            ))),
        }
    }

    /// Write a univariate Laurent polynomial as `x^valuation · p(x)` with `p`
    /// an ordinary polynomial with nonzero constant term. Returns
    /// `(valuation, p)`. The zero polynomial yields `(0, 0)`.
    pub fn to_unipoly(&self, var: &str) -> Result<(i64, UniPoly)> {
        match self.univariate_var()? {
            Some(v) if v != var => {
                return Err(Error::Unsupported(format!(
                    "univariate polynomial is in `{v}`, expected `{var}`"
                )))
            }
            _ => {}
        }
        if self.is_zero() {
            return Ok((0, UniPoly::zero()));
        }
        let val = self.terms.keys().map(|m| m.exponent_of(var)).min().unwrap();
        let deg = self.terms.keys().map(|m| m.exponent_of(var)).max().unwrap();
        let mut coeffs = vec![Scalar::zero(); (deg - val + 1) as usize];
        for (m, c) in &self.terms {
            coeffs[(m.exponent_of(var) - val) as usize] = c.clone();
        }
        Ok((val, UniPoly::new(coeffs)))
    }

    pub fn from_unipoly(var: &str, valuation: i64, p: &UniPoly) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in p.coeffs().iter().enumerate() {
            out.add_term(&Monomial::var(var, valuation + e as i64), c);
        }
        out
    }

    /// Exact division within the Laurent ring; the quotient must exist.
    /// Used by fraction-free elimination, where exactness is guaranteed.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        if let Some((c, m)) = divisor.as_unit() {
            return Ok(self.mul(&Self::term(c.inv()?, m.inv())));
        }
        // multivariate exact division by the leading-term algorithm;
        // Laurent shifts are cleared first so ordinary division applies
        let shift = |p: &LaurentPoly| -> Monomial {
            let mut out: BTreeMap<String, i64> = BTreeMap::new();
            for m in p.terms.keys() {
                for (v, e) in m.exponents() {
                    let entry = out.entry(v.clone()).or_insert(0);
                    *entry = (*entry).min(*e);
                }
            }
            out.retain(|_, e| *e != 0);
            Monomial(out)
        };
        let sa = shift(self);
        let sb = shift(divisor);
        let a = self.mul(&Self::term(Scalar::one(), sa.inv()));
        let b = divisor.mul(&Self::term(Scalar::one(), sb.inv()));
        let lead = |p: &LaurentPoly| -> (Monomial, Scalar) {
            let (m, c) = p
                .terms
                .iter()
                .max_by(|(m1, _), (m2, _)| grlex_cmp(m1, m2))
                .unwrap();
            (m.clone(), c.clone())
        };
        let (bm, bc) = lead(&b);
        let bc_inv = bc.inv()?;
        let mut rem = a;
        let mut quot = LaurentPoly::zero();
        while !rem.is_zero() {
            let (rm, rc) = lead(&rem);
            if !bm.divides_into(&rm) {
                return Err(Error::Unsupported("inexact polynomial division".into()));
            }
            let qm = rm.mul(&bm.inv());
            let qc = rc.mul(&bc_inv);
            let t = Self::term(qc, qm);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(&b));
        }
        // reapply the Laurent shift difference
        Ok(quot.mul(&Self::term(Scalar::one(), sa.mul(&sb.inv()))))
    }
}

/// Graded-lexicographic monomial order for nonnegative exponent vectors
/// (total degree first, then variable-by-variable in name order).
fn grlex_cmp(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let da: i64 = a.exponents().values().sum();
    let db: i64 = b.exponents().values().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    let vars: BTreeSet<&String> = a.exponents().keys().chain(b.exponents().keys()).collect();
    for v in vars {
        match a.exponent_of(v).cmp(&b.exponent_of(v)) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    Ordering::Equal
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let (sign, body) = term_string(m, c);
            if first {
                if sign {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if sign {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

// (negative?, printed body without sign)
fn term_string(m: &Monomial, c: &Scalar) -> (bool, String) {
    let (neg, coeff) = match c {
        Scalar::Rational(r) if r.is_negative() => (true, Scalar::Rational(-r.clone())),
        _ => (false, c.clone()),
    };
    if m.is_unit() {
        return (neg, format!("{coeff}"));
    }
    if coeff.is_one() {
        return (neg, format!("{m}"));
    }
    let printed = format!("{coeff}");
    if printed.contains(' ') {
        (neg, format!("({printed})*{m}"))
    } else {
        (neg, format!("{printed}*{m}"))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Cyclotomic(c) => {
                let m = c.conductor();
                let mut first = true;
                for (e, coeff) in c.coeffs() {
                    let mag = coeff.abs();
                    let body = if *e == 0 {
                        format!("{mag}")
                    } else {
                        let zeta = if *e == 1 { format!("z{m}") } else { format!("z{m}^{e}") };
                        if mag == num::BigRational::from_integer(num::BigInt::from(1)) {
                            zeta
                        } else {
                            format!("{mag}*{zeta}")
                        }
                    };
                    let neg = coeff.is_negative();
                    if first {
                        write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
                        first = false;
                    } else {
                        write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn x() -> LaurentPoly {
        LaurentPoly::var("x")
    }

    #[test]
    fn eval_examples() {
        // x + x⁻¹ at 1 → 2; at 2 → 5/2; (x−1)² at 1 → 0
        let p = x().add(&LaurentPoly::var_pow("x", -1));
        let mut pt = BTreeMap::new();
        pt.insert("x".to_string(), Scalar::one());
        assert_eq!(p.eval(&pt).unwrap(), Scalar::from_i64(2));
        pt.insert("x".to_string(), Scalar::from_i64(2));
        assert_eq!(p.eval(&pt).unwrap(), Scalar::ratio(5, 2));
        let q = x().sub(&LaurentPoly::one());
        let q2 = q.mul(&q);
        pt.insert("x".to_string(), Scalar::one());
        assert_eq!(q2.eval(&pt).unwrap(), Scalar::zero());
    }

    #[test]
    fn eval_errors() {
        let p = x();
        let empty = BTreeMap::new();
        assert!(matches!(p.eval(&empty), Err(Error::MissingAssignment(_))));
        let mut zero_pt = BTreeMap::new();
        zero_pt.insert("x".to_string(), Scalar::zero());
        assert!(matches!(p.eval(&zero_pt), Err(Error::ZeroEvaluationPoint(_))));
    }

    #[test]
    fn units_and_inverses() {
        let u = LaurentPoly::term(Scalar::ratio(3, 2), Monomial::var("x", -2));
        let inv = u.inv().unwrap();
        assert!(u.mul(&inv).is_one());
        let nonunit = x().add(&LaurentPoly::one());
        assert!(nonunit.inv().is_err());
    }

    #[test]
    fn exact_division() {
        let p = x().add(&LaurentPoly::one()); // x + 1
        let q = x().sub(&LaurentPoly::one()); // x - 1
        let prod = p.mul(&q);
        assert_eq!(prod.div_exact(&p).unwrap(), q);
        assert_eq!(prod.div_exact(&q).unwrap(), p);
        // with Laurent shifts
        let shifted = prod.mul(&LaurentPoly::var_pow("x", -3));
        assert_eq!(shifted.div_exact(&p).unwrap(), q.mul(&LaurentPoly::var_pow("x", -3)));
    }

    #[test]
    fn multivariate_division() {
        let p = LaurentPoly::var("x").add(&LaurentPoly::var("y"));
        let q = LaurentPoly::var("x").sub(&LaurentPoly::var("y"));
        let prod = p.mul(&q);
        assert_eq!(prod.div_exact(&q).unwrap(), p);
    }

    #[test]
    fn display_roundtrip_shapes() {
        let p = LaurentPoly::term(Scalar::ratio(-1, 2), Monomial::var("x", -1))
            .add(&LaurentPoly::var("y"))
            .add(&LaurentPoly::constant(Scalar::from_i64(3)));
        let s = format!("{p}");
        let back = crate::scalars::parse_laurent(&s).unwrap();
        assert_eq!(back, p);
    }
}
