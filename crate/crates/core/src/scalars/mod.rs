//! Exact coefficient arithmetic: arbitrary-precision rationals, cyclotomic
//! field elements, and multivariate Laurent polynomials over them.

mod cyclotomic;
mod laurent;
mod parse;
mod unipoly;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, rat_i64, Cyclotomic, Rational};
pub use laurent::{LaurentPoly, Monomial};
pub use parse::{parse_laurent, parse_rational, parse_scalar};
pub use unipoly::UniPoly;

use num::{BigInt, One, Signed, Zero};

use crate::error::Error;
use crate::Result;

/// Gcd of univariate Laurent polynomials, normalized to the canonical
/// associate: a monic ordinary polynomial with nonzero constant term
/// (the distinguished representative among the unit multiples `c·x^k`).
pub fn laurent_gcd(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly> {
    let vp = p.univariate_var()?;
    let vq = q.univariate_var()?;
    let var = match (vp, vq) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::Unsupported(format!(
                "gcd of polynomials in different variables `{a}`, `{b}`"
            )))
        }
        (Some(a), _) => a,
        (None, Some(b)) => b,
        (None, None) => "x".to_string(),
    };
    let (_, a) = p.to_unipoly(&var)?;
    let (_, b) = q.to_unipoly(&var)?;
    let g = a.gcd(&b);
    let (_, stripped) = g.strip_x_power();
    Ok(LaurentPoly::from_unipoly(&var, 0, &stripped.monic()))
}

/// A scalar of the coefficient tower: an exact rational or a cyclotomic number.
///
/// All operations are exact field operations; mixed-conductor cyclotomics are
/// lifted into the least common conductor, and cyclotomic values that reduce
/// to rationals are demoted so equality and printing are canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(Rational),
    Cyclotomic(Cyclotomic),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Scalar::Rational(rat_i64(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Scalar::Rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// ζ_m^k as a scalar.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        Scalar::Cyclotomic(Cyclotomic::root_of_unity(m, k)).normalized()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyclotomic(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Cyclotomic(c) => c.is_rational(),
        }
    }

    fn normalized(self) -> Self {
        match self {
            Scalar::Cyclotomic(c) => match c.is_rational() {
                Some(r) => Scalar::Rational(r),
                None => Scalar::Cyclotomic(c),
            },
            s => s,
        }
    }

    fn as_cyclotomic(&self, conductor: u32) -> Cyclotomic {
        match self {
            Scalar::Rational(r) => Cyclotomic::from_rational(conductor, r.clone()),
            Scalar::Cyclotomic(c) => c.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (a, b) => {
                let (ca, cb) = (a.as_cyclotomic(1), b.as_cyclotomic(1));
                Scalar::Cyclotomic(ca.add(&cb)).normalized()
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r.clone()),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.neg()),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Rational(a), Scalar::Cyclotomic(b)) => Scalar::Cyclotomic(b.scale(a)).normalized(),
            (Scalar::Cyclotomic(a), Scalar::Rational(b)) => Scalar::Cyclotomic(a.scale(b)).normalized(),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => Scalar::Cyclotomic(a.mul(b)).normalized(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Cyclotomic(c) => Ok(Scalar::Cyclotomic(c.inv()?).normalized()),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// ζ ↦ ζ⁻¹ on cyclotomics, identity on rationals.
    pub fn conj(&self) -> Self {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.clone()),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.conj()).normalized(),
        }
    }

    pub fn pow_i64(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Scalar::one());
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// An exact square root of a positive rational, expressed with Gauss
    /// sums in a cyclotomic field. Returns one of the two square roots.
    pub fn sqrt_positive_rational(r: &Rational) -> Result<Scalar> {
        if r.is_zero() {
            return Ok(Scalar::zero());
        }
        if r.is_negative() {
            return Err(Error::Unsupported("square root of a negative rational".into()));
        }
        // sqrt(a/b) = sqrt(a*b)/b
        let a = r.numer().clone();
        let b = r.denom().clone();
        let n = &a * &b;
        let mut rational_part = Rational::new(BigInt::one(), b);
        let mut surd = Scalar::one();
        let mut m = n;
        let mut p = BigInt::from(2u32);
        while &p * &p <= m {
            let mut e = 0u32;
            while (&m % &p).is_zero() {
                m /= &p;
                e += 1;
            }
            if e > 0 {
                let half = BigInt::from(p.clone()).pow(e / 2);
                rational_part *= Rational::from_integer(half);
                if e % 2 == 1 {
                    surd = surd.mul(&Scalar::sqrt_prime(&p)?);
                }
            }
            p += 1;
        }
        if m > BigInt::one() {
            surd = surd.mul(&Scalar::sqrt_prime(&m)?);
        }
        Ok(Scalar::Rational(rational_part).mul(&surd))
    }

    fn sqrt_prime(p: &BigInt) -> Result<Scalar> {
        let p_u: u32 = p
            .try_into()
            .map_err(|_| Error::Unsupported("square root of a prime too large for cyclotomic expression".into()))?;
        if p_u == 2 {
            // √2 = ζ₈ + ζ₈⁻¹
            return Ok(Scalar::root_of_unity(8, 1).add(&Scalar::root_of_unity(8, -1)));
        }
        // Gauss sum g = Σ ζ_p^{j²} satisfies g² = (−1)^{(p−1)/2} p
        let mut g = Scalar::zero();
        for j in 0..p_u as i64 {
            g = g.add(&Scalar::root_of_unity(p_u, j * j));
        }
        if p_u % 4 == 1 {
            Ok(g)
        } else {
            // g² = −p, so (ζ₄³ g)² = p
            Ok(g.mul(&Scalar::root_of_unity(4, 3)))
        }
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_field_ops() {
        let a = Scalar::ratio(1, 2);
        let b = Scalar::ratio(1, 3);
        assert_eq!(a.add(&b), Scalar::ratio(5, 6));
        assert_eq!(a.mul(&b), Scalar::ratio(1, 6));
        assert_eq!(a.inv().unwrap(), Scalar::from_i64(2));
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn cyclotomic_relation() {
        let s = Scalar::root_of_unity(3, 0)
            .add(&Scalar::root_of_unity(3, 1))
            .add(&Scalar::root_of_unity(3, 2));
        assert!(s.is_zero());
    }

    #[test]
    fn conj_on_roots() {
        assert_eq!(Scalar::root_of_unity(5, 2).conj(), Scalar::root_of_unity(5, 3));
        assert_eq!(Scalar::ratio(2, 7).conj(), Scalar::ratio(2, 7));
    }

    #[test]
    fn mixed_conductor_demotion() {
        // ζ₆ − ζ₆ must be a plain rational zero
        let z = Scalar::root_of_unity(6, 1);
        assert_eq!(z.sub(&z), Scalar::zero());
        // ζ₄² = −1 demotes to Rational(-1)
        let i = Scalar::root_of_unity(4, 1);
        assert_eq!(i.mul(&i), Scalar::from_i64(-1));
    }

    #[test]
    fn sqrt_by_gauss_sums() {
        for n in [2i64, 3, 5, 6, 7, 8, 12] {
            let r = rat_i64(n);
            let s = Scalar::sqrt_positive_rational(&r).unwrap();
            assert_eq!(s.mul(&s), Scalar::from_i64(n), "sqrt({n})² != {n}");
        }
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let s = Scalar::sqrt_positive_rational(&half).unwrap();
        assert_eq!(s.mul(&s), Scalar::ratio(1, 2));
    }

    #[test]
    fn pow_with_negative_exponent() {
        let a = Scalar::ratio(2, 3);
        assert_eq!(a.pow_i64(-2).unwrap(), Scalar::ratio(9, 4));
        let z = Scalar::root_of_unity(5, 1);
        assert_eq!(z.pow_i64(-1).unwrap(), Scalar::root_of_unity(5, 4));
    }
}
