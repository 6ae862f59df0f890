//! Exact linear algebra over Laurent polynomial rings: determinants,
//! rank, corank at evaluation points via minor gcds, Smith normal form
//! over k[x,x⁻¹], and the moduli strata of the cyclic-graph Laplacian.

use std::collections::BTreeMap;
use std::fmt;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::fieldmat::Mat;
use crate::scalars::{parse_laurent, rat_i64, LaurentPoly, Rational, Scalar, UniPoly};
use crate::Result;

/// A rectangular matrix over a Laurent polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        LaurentMatrix { rows, cols, data: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(LaurentMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_scalar_mat(m: &Mat) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| LaurentPoly::constant(m.get(i, j).clone()))
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        LaurentMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| p.mul(c)).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    /// The single variable occurring in the matrix, if entries are at most
    /// univariate; `None` for constant matrices.
    pub fn single_var(&self) -> Result<Option<String>> {
        let mut var: Option<String> = None;
        for p in &self.data {
            for v in p.vars() {
                match &var {
                    None => var = Some(v),
                    Some(existing) if *existing != v => {
                        return Err(Error::Unsupported(format!(
                            "matrix has several variables: `{existing}`, `{v}`"
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(var)
    }

    /// Evaluate every entry at the given nonzero point.
    pub fn eval(&self, point: &BTreeMap<String, Scalar>) -> Result<Mat> {
        let mut out = Mat::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).eval(point)?);
            }
        }
        Ok(out)
    }

    pub fn as_constant(&self) -> Option<Mat> {
        let mut out = Mat::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).as_constant()?);
            }
        }
        Some(out)
    }

    /// Exact determinant: cofactor expansion for small matrices,
    /// fraction-free Bareiss elimination beyond n = 6.
    pub fn det(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows <= 6 {
            Ok(self.det_cofactor())
        } else {
            self.det_bareiss()
        }
    }

    fn det_cofactor(&self) -> LaurentPoly {
        let n = self.rows;
        if n == 0 {
            return LaurentPoly::one();
        }
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = LaurentPoly::zero();
        for j in 0..n {
            let a = self.get(0, j);
            if a.is_zero() {
                continue;
            }
            let minor = LaurentMatrix::from_fn(n - 1, n - 1, |r, c| {
                self.get(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = a.mul(&minor.det_cofactor());
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    fn det_bareiss(&self) -> Result<LaurentPoly> {
        let n = self.rows;
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = LaurentPoly::one();
        for k in 0..n {
            let pivot_row = (k..n).find(|&i| !m.get(i, k).is_zero());
            let Some(p) = pivot_row else {
                return Ok(LaurentPoly::zero());
            };
            if p != k {
                for j in 0..n {
                    let a = m.get(p, j).clone();
                    let b = m.get(k, j).clone();
                    m.set(p, j, b);
                    m.set(k, j, a);
                }
                sign = !sign;
            }
            let pivot = m.get(k, k).clone();
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = pivot.mul(m.get(i, j)).sub(&m.get(i, k).mul(m.get(k, j)));
                    m.set(i, j, num.div_exact(&prev)?);
                }
                m.set(i, k, LaurentPoly::zero());
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if sign { d.neg() } else { d })
    }

    /// Exact rank over the fraction field of the coefficient ring.
    pub fn rank(&self) -> Result<usize> {
        if let Some(m) = self.as_constant() {
            return Ok(m.rank());
        }
        let mut m = self.clone();
        let mut prev = LaurentPoly::one();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let pivot_row = (rank..m.rows).find(|&i| !m.get(i, col).is_zero());
            let Some(p) = pivot_row else { continue };
            if p != rank {
                for j in 0..m.cols {
                    let a = m.get(p, j).clone();
                    let b = m.get(rank, j).clone();
                    m.set(p, j, b);
                    m.set(rank, j, a);
                }
            }
            let pivot = m.get(rank, col).clone();
            for i in (rank + 1)..m.rows {
                for j in (col + 1)..m.cols {
                    let num = pivot.mul(m.get(i, j)).sub(&m.get(i, col).mul(m.get(rank, j)));
                    m.set(i, j, num.div_exact(&prev)?);
                }
                m.set(i, col, LaurentPoly::zero());
            }
            prev = pivot;
            rank += 1;
        }
        Ok(rank)
    }

    /// Gcd of all k×k minors, as the canonical associate (monic, nonzero
    /// constant term). Univariate matrices only. `d_0 = 1`; returns zero
    /// when every k×k minor vanishes.
    pub fn minor_gcd(&self, k: usize) -> Result<LaurentPoly> {
        if k == 0 {
            return Ok(LaurentPoly::one());
        }
        let var = self.single_var()?.unwrap_or_else(|| "x".to_string());
        let rows: Vec<Vec<usize>> = combinations(self.rows, k);
        let cols: Vec<Vec<usize>> = combinations(self.cols, k);
        let mut acc = UniPoly::zero();
        for rs in &rows {
            for cs in &cols {
                let sub = LaurentMatrix::from_fn(k, k, |i, j| self.get(rs[i], cs[j]).clone());
                let d = sub.det()?;
                if d.is_zero() {
                    continue;
                }
                let (_, p) = d.to_unipoly(&var)?;
                acc = acc.gcd(&p);
                if acc.degree() == Some(0) {
                    // gcd is already a unit
                    return Ok(LaurentPoly::one());
                }
            }
        }
        let (_, stripped) = acc.strip_x_power();
        Ok(LaurentPoly::from_unipoly(&var, 0, &stripped.monic()))
    }

    /// Corank at a nonzero evaluation point: `n − max{k : d_k(x₀) ≠ 0}`
    /// where `d_k` is the gcd of all k×k minors.
    pub fn corank_at(&self, point: &EvalPoint) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        if point.is_zero() {
            return Err(Error::ZeroEvaluationPoint("x".into()));
        }
        let n = self.rows;
        for k in (1..=n).rev() {
            let d = self.minor_gcd(k)?;
            if d.is_zero() {
                continue;
            }
            let var = self.single_var()?.unwrap_or_else(|| "x".to_string());
            let (_, p) = d.to_unipoly(&var)?;
            if !point.poly_vanishes(&p)? {
                return Ok(n - k);
            }
        }
        Ok(n)
    }

    pub fn to_json(&self) -> String {
        let file = MatrixFile {
            entries: (0..self.rows)
                .map(|i| (0..self.cols).map(|j| format!("{}", self.get(i, j))).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("matrix serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: MatrixFile = serde_json::from_str(text)?;
        let rows = file
            .entries
            .into_iter()
            .map(|row| row.iter().map(|lit| parse_laurent(lit)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows() {
            let row: Vec<String> = (0..self.ncols()).map(|j| format!("{}", self.get(i, j))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    entries: Vec<Vec<String>>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Element of the quadratic extension Q(√disc), disc a non-square rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExt {
    pub disc: Rational,
    pub a: Rational,
    pub b: Rational,
}

impl QuadExt {
    pub fn new(disc: Rational, a: Rational, b: Rational) -> Self {
        QuadExt { disc, a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadExt::new(self.disc.clone(), &self.a + &o.a, &self.b + &o.b)
    }

    pub fn add_rat(&self, r: &Rational) -> Self {
        QuadExt::new(self.disc.clone(), &self.a + r, self.b.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = &self.a * &o.a + &self.b * &o.b * &self.disc;
        let b = &self.a * &o.b + &self.b * &o.a;
        QuadExt::new(self.disc.clone(), a, b)
    }

    pub fn inv(&self) -> Result<Self> {
        // (a + b√d)⁻¹ = (a − b√d)/(a² − b²d); the norm is nonzero since d is not a square
        let norm = &self.a * &self.a - &self.b * &self.b * &self.disc;
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QuadExt::new(self.disc.clone(), &self.a / &norm, -(&self.b / &norm)))
    }
}

/// An evaluation point for corank computations: an exact scalar or a root
/// of an irreducible quadratic, represented in Q(√D).
#[derive(Debug, Clone)]
pub enum EvalPoint {
    Exact(Scalar),
    Quadratic(QuadExt),
}

impl EvalPoint {
    pub fn is_zero(&self) -> bool {
        match self {
            EvalPoint::Exact(s) => s.is_zero(),
            EvalPoint::Quadratic(q) => q.is_zero(),
        }
    }

    fn poly_vanishes(&self, p: &UniPoly) -> Result<bool> {
        match self {
            EvalPoint::Exact(s) => Ok(p.eval(s).is_zero()),
            EvalPoint::Quadratic(root) => {
                let mut acc = QuadExt::new(root.disc.clone(), Rational::zero(), Rational::zero());
                for c in p.coeffs().iter().rev() {
                    let r = c.as_rational().ok_or_else(|| {
                        Error::Unsupported("quadratic-root evaluation needs rational coefficients".into())
                    })?;
                    acc = acc.mul(root).add_rat(&r);
                }
                Ok(acc.is_zero())
            }
        }
    }
}

/// The Laplacian matrix of the cyclic graph C_n: ones on the diagonal,
/// s_{i,i+1} on the off-diagonals, and the wrap-around parameter carrying
/// the fundamental-group variable in the corners.
pub fn cyclic_laplacian(n: usize, s: &[Scalar]) -> Result<LaurentMatrix> {
    if n < 3 {
        return Err(Error::Precondition(format!("cyclic Laplacian needs n ≥ 3, got {n}")));
    }
    if s.len() != n {
        return Err(Error::ShapeMismatch(format!("expected {n} parameters, got {}", s.len())));
    }
    if s.iter().any(|v| v.is_zero()) {
        return Err(Error::Precondition("edge parameters must be nonzero".into()));
    }
    let mut m = LaurentMatrix::identity(n);
    for i in 0..(n - 1) {
        m.set(i, i + 1, LaurentPoly::constant(s[i].clone()));
        m.set(i + 1, i, LaurentPoly::constant(s[i].clone()));
    }
    let wrap = &s[n - 1];
    m.set(0, n - 1, LaurentPoly::constant(wrap.clone()).mul(&LaurentPoly::var_pow("x", -1)));
    m.set(n - 1, 0, LaurentPoly::constant(wrap.clone()).mul(&LaurentPoly::var_pow("x", 1)));
    Ok(m)
}

/// Description of a root of the cyclic determinant A·x² + B·x + A.
#[derive(Debug, Clone)]
pub enum RootDesc {
    Rational(Rational),
    /// (a ± b√disc) with disc not a perfect square.
    QuadraticPair { disc: Rational, a: Rational, b: Rational },
}

#[derive(Debug, Clone)]
pub struct RootReport {
    pub root: RootDesc,
    pub corank: usize,
}

/// Strata of the rank-1 moduli of the cyclic graph: determinant shape
/// A(x + x⁻¹) + B, its roots, and the coranks at them.
#[derive(Debug, Clone)]
pub struct StrataReport {
    pub n: usize,
    pub coeff_a: Scalar,
    pub coeff_b: Scalar,
    pub roots: Vec<RootReport>,
    /// Dimensions of minimal representations that actually occur.
    pub strata_dims: Vec<usize>,
}

pub fn cyclic_strata(n: usize, s: &[Scalar]) -> Result<StrataReport> {
    let m = cyclic_laplacian(n, s)?;
    let det = m.det()?;
    // extract A and B from det = A x + B + A x⁻¹
    let x = |e: i64| crate::scalars::Monomial::var("x", e);
    let mut coeff_a = Scalar::zero();
    let mut coeff_a_inv = Scalar::zero();
    let mut coeff_b = Scalar::zero();
    for (mono, c) in det.terms() {
        if *mono == x(1) {
            coeff_a = c.clone();
        } else if *mono == x(-1) {
            coeff_a_inv = c.clone();
        } else if mono.is_unit() {
            coeff_b = c.clone();
        } else {
            return Err(Error::Unsupported(format!(
                "cyclic determinant has unexpected term at {mono}"
            )));
        }
    }
    if coeff_a != coeff_a_inv {
        return Err(Error::Unsupported("cyclic determinant is not reciprocal".into()));
    }
    // A = ±∏ s_{i,i+1} exactly
    let mut prod = Scalar::one();
    for v in s {
        prod = prod.mul(v);
    }
    if coeff_a != prod && coeff_a != prod.neg() {
        return Err(Error::Unsupported(
            "cyclic determinant coefficient A does not match ±∏ s".into(),
        ));
    }
    let a_rat = coeff_a
        .as_rational()
        .ok_or_else(|| Error::Unsupported("strata root analysis needs rational parameters".into()))?;
    let b_rat = coeff_b
        .as_rational()
        .ok_or_else(|| Error::Unsupported("strata root analysis needs rational parameters".into()))?;
    // roots of A x² + B x + A = 0
    let disc = &b_rat * &b_rat - rat_i64(4) * &a_rat * &a_rat;
    let two_a = rat_i64(2) * &a_rat;
    let mut roots = Vec::new();
    if disc.is_zero() {
        let root = -(&b_rat / &two_a);
        let corank = m.corank_at(&EvalPoint::Exact(Scalar::Rational(root.clone())))?;
        roots.push(RootReport { root: RootDesc::Rational(root), corank });
    } else if let Some(sq) = rational_sqrt(&disc) {
        for sign in [1i64, -1] {
            let root = (-&b_rat + rat_i64(sign) * &sq) / &two_a;
            let corank = m.corank_at(&EvalPoint::Exact(Scalar::Rational(root.clone())))?;
            roots.push(RootReport { root: RootDesc::Rational(root), corank });
        }
    } else {
        let a0 = -(&b_rat / &two_a);
        for sign in [1i64, -1] {
            let b0 = rat_i64(sign) / &two_a;
            let point = QuadExt::new(disc.clone(), a0.clone(), b0.clone());
            let corank = m.corank_at(&EvalPoint::Quadratic(point))?;
            roots.push(RootReport {
                root: RootDesc::QuadraticPair { disc: disc.clone(), a: a0.clone(), b: b0 },
                corank,
            });
        }
    }
    // the (n−2)×(n−2) minor argument caps the corank at 2
    for r in &roots {
        if r.corank > 2 {
            return Err(Error::Unsupported(format!(
                "corank {} exceeds the bound 2 at a determinant root",
                r.corank
            )));
        }
    }
    let mut strata_dims = vec![n];
    for r in &roots {
        let dim = n - r.corank;
        if !strata_dims.contains(&dim) {
            strata_dims.push(dim);
        }
    }
    strata_dims.sort_unstable_by(|a, b| b.cmp(a));
    Ok(StrataReport { n, coeff_a, coeff_b, roots, strata_dims })
}

/// Square root of a nonnegative rational when it is again rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer();
    let den = r.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// Smith normal form over k[x, x⁻¹]: U·M·V = diag(d₁, …) with d₁ | d₂ | …,
/// the dᵢ normalized to monic polynomials with nonzero constant term, and
/// U, V unimodular over the Laurent ring.
#[derive(Debug, Clone)]
pub struct SNFResult {
    pub diag: Vec<LaurentPoly>,
    pub u: LaurentMatrix,
    pub v: LaurentMatrix,
    pub var: Option<String>,
}

impl SNFResult {
    /// Nonzero invariant factors.
    pub fn invariant_factors(&self) -> Vec<LaurentPoly> {
        self.diag.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    /// Invariant factors that are neither zero nor units.
    pub fn nontrivial_factors(&self) -> Vec<LaurentPoly> {
        self.diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect()
    }

    /// Rank of the free part of the cokernel.
    pub fn cokernel_free_rank(&self, rows: usize) -> usize {
        rows - self.invariant_factors().len()
    }

    /// Check U·M·V = diag, unimodularity of U and V, and the divisibility chain.
    pub fn verify(&self, m: &LaurentMatrix) -> Result<bool> {
        let prod = self.u.mul(m).mul(&self.v);
        let mut expected = LaurentMatrix::zero(m.nrows(), m.ncols());
        for (i, d) in self.diag.iter().enumerate() {
            expected.set(i, i, d.clone());
        }
        if prod != expected {
            return Ok(false);
        }
        if self.u.det()?.as_unit().is_none() || self.v.det()?.as_unit().is_none() {
            return Ok(false);
        }
        for w in self.diag.windows(2) {
            if w[0].is_zero() {
                if !w[1].is_zero() {
                    return Ok(false);
                }
                continue;
            }
            if !w[1].is_zero() && w[1].div_exact(&w[0]).is_err() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn smith_normal_form(m: &LaurentMatrix) -> Result<SNFResult> {
    let var = m.single_var()?;
    let x = var.clone().unwrap_or_else(|| "x".to_string());
    let mut a = m.clone();
    let mut u = LaurentMatrix::identity(m.nrows());
    let mut v = LaurentMatrix::identity(m.ncols());

    // clear Laurent valuations row by row (multiplication by units x^k)
    for i in 0..a.nrows() {
        let mut min_val: Option<i64> = None;
        for j in 0..a.ncols() {
            let p = a.get(i, j);
            if p.is_zero() {
                continue;
            }
            let (val, _) = p.to_unipoly(&x)?;
            min_val = Some(min_val.map_or(val, |m: i64| m.min(val)));
        }
        if let Some(val) = min_val {
            if val < 0 {
                let unit = LaurentPoly::var_pow(&x, -val);
                scale_row(&mut a, i, &unit);
                scale_row(&mut u, i, &unit);
            }
        }
    }

    let deg_of = |p: &LaurentPoly| -> Result<usize> {
        let (val, q) = p.to_unipoly(&x)?;
        debug_assert!(val >= 0);
        Ok(val as usize + q.degree().unwrap_or(0))
    };

    let size = a.nrows().min(a.ncols());
    let mut t = 0;
    while t < size {
        // pivot: nonzero entry of minimal degree in the remaining block
        let mut pivot: Option<(usize, usize, usize)> = None;
        for i in t..a.nrows() {
            for j in t..a.ncols() {
                if a.get(i, j).is_zero() {
                    continue;
                }
                let d = deg_of(a.get(i, j))?;
                if pivot.map_or(true, |(_, _, pd)| d < pd) {
                    pivot = Some((i, j, d));
                }
            }
        }
        let Some((pi, pj, _)) = pivot else { break };
        swap_rows(&mut a, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);

        let mut dirty = false;
        // clear the pivot column by Euclidean steps
        for i in (t + 1)..a.nrows() {
            if a.get(i, t).is_zero() {
                continue;
            }
            let (q, r) = divmod_poly(a.get(i, t), a.get(t, t), &x)?;
            row_sub_mul(&mut a, i, t, &q);
            row_sub_mul(&mut u, i, t, &q);
            if !r.is_zero() {
                dirty = true;
            }
        }
        // clear the pivot row
        for j in (t + 1)..a.ncols() {
            if a.get(t, j).is_zero() {
                continue;
            }
            let (q, r) = divmod_poly(a.get(t, j), a.get(t, t), &x)?;
            col_sub_mul(&mut a, j, t, &q);
            col_sub_mul(&mut v, j, t, &q);
            if !r.is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue; // a smaller-degree remainder appeared; pick pivots again
        }
        // pivot must divide the remaining block
        let mut offender: Option<usize> = None;
        'search: for i in (t + 1)..a.nrows() {
            for j in (t + 1)..a.ncols() {
                if a.get(i, j).is_zero() {
                    continue;
                }
                let (_, r) = divmod_poly(a.get(i, j), a.get(t, t), &x)?;
                if !r.is_zero() {
                    offender = Some(i);
                    break 'search;
                }
            }
        }
        if let Some(i) = offender {
            row_add(&mut a, t, i);
            row_add(&mut u, t, i);
            continue;
        }
        t += 1;
    }

    // canonical associates: scale each pivot by the inverse of its unit part
    let mut diag = Vec::with_capacity(size);
    for t in 0..size {
        let d = a.get(t, t).clone();
        if d.is_zero() {
            diag.push(LaurentPoly::zero());
            continue;
        }
        let (val, p) = d.to_unipoly(&x)?;
        let (extra, stripped) = p.strip_x_power();
        let lead = stripped.leading().expect("nonzero polynomial").clone();
        let unit = LaurentPoly::term(lead, crate::scalars::Monomial::var(&x, val + extra as i64));
        let unit_inv = unit.inv()?;
        scale_row(&mut a, t, &unit_inv);
        scale_row(&mut u, t, &unit_inv);
        diag.push(a.get(t, t).clone());
    }
    Ok(SNFResult { diag, u, v, var })
}

/// Cokernels as k[x,x⁻¹]-modules are isomorphic iff the free ranks and the
/// multisets of nontrivial invariant factors agree.
pub fn cokernel_iso(a: &SNFResult, a_rows: usize, b: &SNFResult, b_rows: usize) -> Result<bool> {
    match (&a.var, &b.var) {
        (Some(x), Some(y)) if x != y => {
            return Err(Error::Unsupported(format!(
                "cokernel comparison across different variables `{x}`, `{y}`"
            )))
        }
        _ => {}
    }
    if a.cokernel_free_rank(a_rows) != b.cokernel_free_rank(b_rows) {
        return Ok(false);
    }
    let mut fa: Vec<String> = a.nontrivial_factors().iter().map(|p| format!("{p}")).collect();
    let mut fb: Vec<String> = b.nontrivial_factors().iter().map(|p| format!("{p}")).collect();
    fa.sort();
    fb.sort();
    Ok(fa == fb)
}

fn scale_row(m: &mut LaurentMatrix, i: usize, c: &LaurentPoly) {
    for j in 0..m.ncols() {
        m.set(i, j, m.get(i, j).mul(c));
    }
}

fn swap_rows(m: &mut LaurentMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.ncols() {
        let x = m.get(a, j).clone();
        let y = m.get(b, j).clone();
        m.set(a, j, y);
        m.set(b, j, x);
    }
}

fn swap_cols(m: &mut LaurentMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.nrows() {
        let x = m.get(i, a).clone();
        let y = m.get(i, b).clone();
        m.set(i, a, y);
        m.set(i, b, x);
    }
}

// row_i -= q * row_t
fn row_sub_mul(m: &mut LaurentMatrix, i: usize, t: usize, q: &LaurentPoly) {
    for j in 0..m.ncols() {
        let v = m.get(i, j).sub(&q.mul(m.get(t, j)));
        m.set(i, j, v);
    }
}

// col_j -= q * col_t
fn col_sub_mul(m: &mut LaurentMatrix, j: usize, t: usize, q: &LaurentPoly) {
    for i in 0..m.nrows() {
        let v = m.get(i, j).sub(&q.mul(m.get(i, t)));
        m.set(i, j, v);
    }
}

// row_t += row_i
fn row_add(m: &mut LaurentMatrix, t: usize, i: usize) {
    for j in 0..m.ncols() {
        let v = m.get(t, j).add(m.get(i, j));
        m.set(t, j, v);
    }
}

fn divmod_poly(a: &LaurentPoly, b: &LaurentPoly, x: &str) -> Result<(LaurentPoly, LaurentPoly)> {
    let (va, pa) = a.to_unipoly(x)?;
    let (vb, pb) = b.to_unipoly(x)?;
    debug_assert!(va >= 0 && vb >= 0);
    let (q, r) = pa.shift(va as usize).divmod(&pb.shift(vb as usize))?;
    Ok((LaurentPoly::from_unipoly(x, 0, &q), LaurentPoly::from_unipoly(x, 0, &r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(text: &str) -> LaurentPoly {
        parse_laurent(text).unwrap()
    }

    fn mat(entries: &[&[&str]]) -> LaurentMatrix {
        LaurentMatrix::from_rows(
            entries.iter().map(|row| row.iter().map(|e| lp(e)).collect()).collect(),
        )
        .unwrap()
    }

    // Leibniz-formula determinant, independent of the elimination paths
    fn det_leibniz(m: &LaurentMatrix) -> LaurentPoly {
        fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
            if n == 0 {
                return vec![(vec![], false)];
            }
            let mut out = Vec::new();
            for (p, odd) in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    let swaps = (n - 1) - pos;
                    out.push((q, odd ^ (swaps % 2 == 1)));
                }
            }
            out
        }
        let n = m.nrows();
        let mut acc = LaurentPoly::zero();
        for (perm, odd) in perms(n) {
            let mut t = LaurentPoly::one();
            for i in 0..n {
                t = t.mul(m.get(i, perm[i]));
            }
            acc = if odd { acc.sub(&t) } else { acc.add(&t) };
        }
        acc
    }

    #[test]
    fn det_examples() {
        // C₃ Laplacian, symbolic: 1 − s₁² − s₂² − s₃² + s₁s₂s₃(x + x⁻¹)
        let m = mat(&[
            &["1", "s1", "s3*x^-1"],
            &["s1", "1", "s2"],
            &["s3*x", "s2", "1"],
        ]);
        let d = m.det().unwrap();
        let expected = lp("1 - s1^2 - s2^2 - s3^2 + s1*s2*s3*x + s1*s2*s3*x^-1");
        assert_eq!(d, expected);
        assert_eq!(det_leibniz(&m), expected);
        // identity
        assert!(LaurentMatrix::identity(4).det().unwrap().is_one());
    }

    #[test]
    fn det_bareiss_matches_cofactor() {
        // an 8×8 with Laurent entries exercises the Bareiss path
        let m = LaurentMatrix::from_fn(8, 8, |i, j| {
            if i == j {
                lp("1")
            } else if j == i + 1 {
                lp("x")
            } else if i == 7 && j == 0 {
                lp("x^-1")
            } else {
                LaurentPoly::zero()
            }
        });
        let bareiss = m.det().unwrap();
        assert_eq!(bareiss, det_leibniz(&m));
    }

    #[test]
    fn rank_with_symbolic_entries() {
        let m = mat(&[&["1", "x"], &["x^-1", "1"]]);
        assert_eq!(m.rank().unwrap(), 1);
        let m2 = mat(&[&["1", "x"], &["x", "1"]]);
        assert_eq!(m2.rank().unwrap(), 2);
    }

    #[test]
    fn corank_of_cyclic_laplacian() {
        let ones = vec![Scalar::one(); 3];
        let m = cyclic_laplacian(3, &ones).unwrap();
        // x = 1 gives the all-ones matrix (rank 1, corank 2)
        assert_eq!(m.corank_at(&EvalPoint::Exact(Scalar::one())).unwrap(), 2);
        // x = 2: det = 1/2 ≠ 0 up to sign conventions, so corank 0
        assert_eq!(m.corank_at(&EvalPoint::Exact(Scalar::from_i64(2))).unwrap(), 0);
        // identity has corank 0 anywhere
        assert_eq!(LaurentMatrix::identity(3).corank_at(&EvalPoint::Exact(Scalar::from_i64(5))).unwrap(), 0);
        // zero point rejected
        assert!(m.corank_at(&EvalPoint::Exact(Scalar::zero())).is_err());
    }

    #[test]
    fn corank_matches_evaluated_rank() {
        let s = [Scalar::from_i64(1), Scalar::ratio(1, 2), Scalar::from_i64(2), Scalar::ratio(2, 3)];
        let m = cyclic_laplacian(4, &s).unwrap();
        for x0 in [Scalar::one(), Scalar::from_i64(-1), Scalar::ratio(3, 2)] {
            let mut pt = BTreeMap::new();
            pt.insert("x".to_string(), x0.clone());
            let direct = m.eval(&pt).unwrap();
            let expected = 4 - direct.rank();
            assert_eq!(m.corank_at(&EvalPoint::Exact(x0)).unwrap(), expected);
        }
    }

    #[test]
    fn strata_c3_ones() {
        let report = cyclic_strata(3, &[Scalar::one(), Scalar::one(), Scalar::one()]).unwrap();
        assert_eq!(report.coeff_a, Scalar::one());
        assert_eq!(report.coeff_b, Scalar::from_i64(-2));
        assert_eq!(report.roots.len(), 1);
        match &report.roots[0].root {
            RootDesc::Rational(r) => assert_eq!(r, &rat_i64(1)),
            _ => panic!("expected a rational double root"),
        }
        assert_eq!(report.roots[0].corank, 2);
        assert_eq!(report.strata_dims, vec![3, 1]);
    }

    #[test]
    fn strata_generic_has_quadratic_roots() {
        let s = [Scalar::from_i64(1), Scalar::from_i64(2), Scalar::from_i64(3)];
        let report = cyclic_strata(3, &s).unwrap();
        assert_eq!(report.coeff_a, Scalar::from_i64(6));
        for r in &report.roots {
            assert!(r.corank <= 2);
            assert_eq!(r.corank, 1);
        }
        assert!(report.strata_dims.contains(&2));
    }

    #[test]
    fn snf_disc_2() {
        let m = mat(&[&["1", "-1"], &["-x", "1"]]);
        let snf = smith_normal_form(&m).unwrap();
        assert!(snf.verify(&m).unwrap());
        let factors: Vec<String> = snf.diag.iter().map(|d| format!("{d}")).collect();
        assert_eq!(factors, vec!["1", "-1 + x"]);
    }

    #[test]
    fn snf_identity_and_chain() {
        let id = LaurentMatrix::identity(3);
        let snf = smith_normal_form(&id).unwrap();
        assert!(snf.verify(&id).unwrap());
        assert!(snf.diag.iter().all(|d| d.is_one()));

        let m = mat(&[&["x - 1", "0"], &["0", "x^2 - 1"]]);
        let snf = smith_normal_form(&m).unwrap();
        assert!(snf.verify(&m).unwrap());
        let f: Vec<String> = snf.diag.iter().map(|d| format!("{d}")).collect();
        assert_eq!(f, vec!["-1 + x", "-1 + x^2"]);
    }

    #[test]
    fn snf_with_laurent_shifts() {
        // x is a unit, so diag(x, x) is equivalent to the identity
        let m = mat(&[&["x", "0"], &["0", "x^-2"]]);
        let snf = smith_normal_form(&m).unwrap();
        assert!(snf.verify(&m).unwrap());
        assert!(snf.nontrivial_factors().is_empty());
    }

    #[test]
    fn cokernel_comparison() {
        let a = mat(&[&["1", "0"], &["0", "x - 1"]]);
        let b = mat(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "x - 1"]]);
        let sa = smith_normal_form(&a).unwrap();
        let sb = smith_normal_form(&b).unwrap();
        assert!(cokernel_iso(&sa, 2, &sb, 3).unwrap());
        let c = mat(&[&["x + 1"]]);
        let sc = smith_normal_form(&c).unwrap();
        assert!(!cokernel_iso(&sa, 2, &sc, 1).unwrap());
    }

    #[test]
    fn snf_rejects_multivariate() {
        let m = mat(&[&["x", "y"], &["0", "1"]]);
        assert!(smith_normal_form(&m).is_err());
    }

    #[test]
    fn rational_sqrt_detection() {
        assert_eq!(rational_sqrt(&rat_i64(49)), Some(rat_i64(7)));
        assert_eq!(rational_sqrt(&Rational::new(4.into(), 9.into())), Some(Rational::new(2.into(), 3.into())));
        assert_eq!(rational_sqrt(&rat_i64(2)), None);
        assert_eq!(rational_sqrt(&rat_i64(-4)), None);
    }

    #[test]
    fn quadext_field_ops() {
        let d = rat_i64(5);
        let x = QuadExt::new(d.clone(), rat_i64(1), rat_i64(2)); // 1 + 2√5
        let inv = x.inv().unwrap();
        let prod = x.mul(&inv);
        assert_eq!(prod.a, rat_i64(1));
        assert!(prod.b.is_zero());
    }
}
