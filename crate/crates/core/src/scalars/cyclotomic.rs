use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num::{BigInt, One, Zero};

use crate::error::Error;
use crate::Result;

pub type Rational = num::BigRational;

pub fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn euler_phi(m: u32) -> u32 {
    let mut n = m;
    let mut phi = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

// dense polynomials over Q, lowest degree first
fn trim(p: &mut Vec<Rational>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim(&mut out);
    out
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!den.is_empty(), "division by zero polynomial");
    let mut rem: Vec<Rational> = num.to_vec();
    trim(&mut rem);
    let dd = den.len() - 1;
    let lead = den.last().unwrap().clone();
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let c = rem.last().unwrap() / &lead;
        quot[k] = c.clone();
        for (i, d) in den.iter().enumerate() {
            let v = &c * d;
            rem[k + i] -= v;
        }
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    trim(&mut quot);
    (quot, rem)
}

// u*a + v*phi = gcd; returns (gcd, u)
fn poly_half_ext_gcd(a: &[Rational], modulus: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0: Vec<Rational> = modulus.to_vec();
    let mut r1: Vec<Rational> = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut u0: Vec<Rational> = Vec::new();
    let mut u1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let qu = poly_mul(&q, &u1);
        let mut nu: Vec<Rational> = u0.clone();
        nu.resize(nu.len().max(qu.len()), Rational::zero());
        for (i, c) in qu.iter().enumerate() {
            nu[i] -= c;
        }
        trim(&mut nu);
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = nu;
    }
    (r0, u0)
}

/// Coefficients of the m-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<Rational>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let result = if m == 1 {
        vec![-rat_i64(1), rat_i64(1)]
    } else {
        // (x^m - 1) / prod_{d | m, d < m} Phi_d
        let mut num = vec![Rational::zero(); m as usize + 1];
        num[0] = -rat_i64(1);
        num[m as usize] = rat_i64(1);
        let mut den = vec![Rational::one()];
        for d in 1..m {
            if m % d == 0 {
                den = poly_mul(&den, &cyclotomic_polynomial(d));
            }
        }
        let (q, r) = poly_divmod(&num, &den);
        debug_assert!(r.is_empty());
        q
    };
    cache.lock().unwrap().insert(m, result.clone());
    result
}

/// An element of the cyclotomic field Q(ζ_m), stored in the power basis
/// 1, ζ, …, ζ^{φ(m)−1} reduced modulo the m-th cyclotomic polynomial.
///
/// Zero has an empty coefficient map. The conductor is not minimized;
/// equality and mixed arithmetic lift both operands into the field of the
/// least common conductor.
#[derive(Debug, Clone)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: BTreeMap<u32, Rational>,
}

impl Cyclotomic {
    pub fn zero(conductor: u32) -> Self {
        Cyclotomic { conductor, coeffs: BTreeMap::new() }
    }

    pub fn from_rational(conductor: u32, r: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !r.is_zero() {
            coeffs.insert(0, r);
        }
        Cyclotomic { conductor, coeffs }
    }

    /// ζ_m^k, reduced.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let e = k.rem_euclid(m as i64) as u32;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(e, Rational::one());
        Cyclotomic { conductor: m, coeffs }.reduced()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, Rational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_rational(&self) -> Option<Rational> {
        if self.coeffs.is_empty() {
            return Some(Rational::zero());
        }
        if self.coeffs.len() == 1 {
            if let Some(c) = self.coeffs.get(&0) {
                return Some(c.clone());
            }
        }
        None
    }

    fn to_dense(&self) -> Vec<Rational> {
        let deg = self.coeffs.keys().next_back().map_or(0, |k| *k as usize);
        let mut v = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.coeffs {
            v[*e as usize] = c.clone();
        }
        trim(&mut v);
        v
    }

    fn from_dense(conductor: u32, v: Vec<Rational>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in v.into_iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(e as u32, c);
            }
        }
        Cyclotomic { conductor, coeffs }
    }

    fn reduced(self) -> Self {
        let phi = euler_phi(self.conductor);
        if self.coeffs.keys().next_back().map_or(true, |k| *k < phi) {
            return self;
        }
        // exponents are first folded mod m (ζ^m = 1), then reduced mod Φ_m
        let m = self.conductor;
        let mut folded: BTreeMap<u32, Rational> = BTreeMap::new();
        for (e, c) in self.coeffs {
            let ee = e % m;
            let entry = folded.entry(ee).or_insert_with(Rational::zero);
            *entry += c;
        }
        folded.retain(|_, c| !c.is_zero());
        let tmp = Cyclotomic { conductor: m, coeffs: folded };
        let dense = tmp.to_dense();
        let modulus = cyclotomic_polynomial(m);
        let (_, rem) = poly_divmod(&dense, &modulus);
        Cyclotomic::from_dense(m, rem)
    }

    /// Embed into Q(ζ_M) for a multiple M of the conductor (ζ_m ↦ ζ_M^{M/m}).
    pub fn lift(&self, new_conductor: u32) -> Self {
        assert!(new_conductor % self.conductor == 0, "lift target must be a multiple of the conductor");
        if new_conductor == self.conductor {
            return self.clone();
        }
        let step = new_conductor / self.conductor;
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| (e * step, c.clone()))
            .collect();
        Cyclotomic { conductor: new_conductor, coeffs }.reduced()
    }

    fn lcm_pair(a: &Self, b: &Self) -> (Self, Self) {
        let l = num::integer::lcm(a.conductor, b.conductor);
        (a.lift(l), b.lift(l))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::lcm_pair(self, other);
        let mut coeffs = a.coeffs;
        for (e, c) in b.coeffs {
            let entry = coeffs.entry(e).or_insert_with(Rational::zero);
            *entry += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Cyclotomic { conductor: a.conductor, coeffs }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect();
        Cyclotomic { conductor: self.conductor, coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::lcm_pair(self, other);
        if a.is_zero() || b.is_zero() {
            return Cyclotomic::zero(a.conductor);
        }
        let prod = poly_mul(&a.to_dense(), &b.to_dense());
        let modulus = cyclotomic_polynomial(a.conductor);
        let (_, rem) = poly_divmod(&prod, &modulus);
        Cyclotomic::from_dense(a.conductor, rem)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Cyclotomic::zero(self.conductor);
        }
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, c * r)).collect();
        Cyclotomic { conductor: self.conductor, coeffs }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus = cyclotomic_polynomial(self.conductor);
        let (g, u) = poly_half_ext_gcd(&self.to_dense(), &modulus);
        // Φ_m is irreducible over Q, so the gcd is a nonzero constant
        debug_assert_eq!(g.len(), 1);
        let c = g[0].clone();
        let scaled: Vec<Rational> = u.into_iter().map(|x| x / &c).collect();
        let (_, rem) = poly_divmod(&scaled, &modulus);
        Ok(Cyclotomic::from_dense(self.conductor, rem))
    }

    /// The field automorphism ζ ↦ ζ⁻¹ (complex conjugation on root-of-unity data).
    pub fn conj(&self) -> Self {
        let m = self.conductor;
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| ((m - (e % m)) % m, c.clone()))
            .collect();
        Cyclotomic { conductor: m, coeffs }.reduced()
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::lcm_pair(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(2), 1);
        assert_eq!(euler_phi(3), 2);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(15), 8);
    }

    #[test]
    fn cyclotomic_polynomials() {
        // Φ_3 = 1 + x + x², Φ_4 = 1 + x², Φ_6 = 1 - x + x²
        assert_eq!(cyclotomic_polynomial(3), vec![rat_i64(1), rat_i64(1), rat_i64(1)]);
        assert_eq!(cyclotomic_polynomial(4), vec![rat_i64(1), rat_i64(0), rat_i64(1)]);
        assert_eq!(cyclotomic_polynomial(6), vec![rat_i64(1), rat_i64(-1), rat_i64(1)]);
    }

    #[test]
    fn sum_of_third_roots_vanishes() {
        let z = |k| Cyclotomic::root_of_unity(3, k);
        let s = z(0).add(&z(1)).add(&z(2));
        assert!(s.is_zero());
    }

    #[test]
    fn conjugation_inverts_roots() {
        let z2 = Cyclotomic::root_of_unity(5, 2);
        let z3 = Cyclotomic::root_of_unity(5, 3);
        assert_eq!(z2.conj(), z3);
        // conj is involutive
        assert_eq!(z2.conj().conj(), z2);
    }

    #[test]
    fn inverse_of_root() {
        let z = Cyclotomic::root_of_unity(7, 3);
        let inv = z.inv().unwrap();
        assert_eq!(z.mul(&inv), Cyclotomic::from_rational(7, Rational::one()));
    }

    #[test]
    fn lift_compatible_with_arithmetic() {
        let a = Cyclotomic::root_of_unity(3, 1);
        let b = Cyclotomic::root_of_unity(6, 2);
        // ζ₆² = ζ₃
        assert_eq!(a, b);
        let sum_small = a.add(&a);
        let sum_lifted = a.lift(12).add(&a.lift(12));
        assert_eq!(sum_small, sum_lifted);
    }

    #[test]
    fn unimodularity_of_roots() {
        for k in 0..8 {
            let z = Cyclotomic::root_of_unity(8, k);
            let n = z.mul(&z.conj());
            assert_eq!(n.is_rational(), Some(Rational::one()));
        }
    }
}
