use super::Scalar;
use crate::error::Error;
use crate::Result;

/// Dense univariate polynomial over [`Scalar`], lowest degree first.
/// The coefficient field makes the ring Euclidean; this backs the
/// univariate gcd and the Smith normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![Scalar::one()] }
    }

    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeffs.first().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero);
            out.push(a.add(&b));
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|k| k.mul(c)).collect())
    }

    pub fn shift(&self, by: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Scalar::zero(); by];
        out.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: out }
    }

    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = divisor.degree().unwrap();
        let lead_inv = divisor.leading().unwrap().inv()?;
        let mut rem = self.clone();
        let mut quot = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading().unwrap().mul(&lead_inv);
            let k = rd - dd;
            quot[k] = c.clone();
            let sub = divisor.scale(&c).shift(k);
            rem = rem.sub(&sub);
        }
        Ok((Self::new(quot), rem))
    }

    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::Unsupported("inexact univariate division".into()));
        }
        Ok(q)
    }

    /// Monic gcd via the Euclidean algorithm. gcd(0,0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient nonzero")),
        }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Strip the largest power of x dividing the polynomial; returns
    /// (power stripped, quotient).
    pub fn strip_x_power(&self) -> (usize, Self) {
        if self.is_zero() {
            return (0, Self::zero());
        }
        let v = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        (v, Self::new(self.coeffs[v..].to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| Scalar::from_i64(c)).collect())
    }

    #[test]
    fn divmod_and_gcd() {
        // gcd(x−1, x²−1) = x−1
        let a = poly(&[-1, 1]);
        let b = poly(&[-1, 0, 1]);
        assert_eq!(a.gcd(&b), a);
        let (q, r) = b.divmod(&a).unwrap();
        assert_eq!(q, poly(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_with_zero() {
        let p = poly(&[2, 4]);
        assert_eq!(p.gcd(&UniPoly::zero()), poly(&[1, 2]).monic());
        assert!(UniPoly::zero().gcd(&UniPoly::zero()).is_zero());
    }

    #[test]
    fn eval_horner() {
        let p = poly(&[1, -2, 1]); // (x-1)^2
        assert_eq!(p.eval(&Scalar::one()), Scalar::zero());
        assert_eq!(p.eval(&Scalar::from_i64(3)), Scalar::from_i64(4));
    }
}
