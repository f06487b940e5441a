//! Exact dense polynomials in `q`, truncated power series, factored rational
//! functions and polynomial matrices.
//!
//! Coefficients are arbitrary-precision integers throughout; q-binomials of
//! word powers grow combinatorially and must never overflow. Polynomials are
//! dense: the supports encountered here fill their degree window.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Errors from polynomial and matrix kernels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// `reciprocal(P, D)` requires `D >= deg P`.
    DegreeExceeded { degree: usize, window: usize },
    /// Matrix dimensions (or index selections) do not agree.
    DimensionMismatch,
    /// The matrix is not unitriangular.
    NotUnitriangular,
    /// An exact division left a remainder; indicates a construction bug.
    NonExactDivision,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DegreeExceeded { degree, window } => {
                write!(f, "degree {degree} exceeds reflection window {window}")
            }
            PolyError::DimensionMismatch => write!(f, "dimension mismatch"),
            PolyError::NotUnitriangular => write!(f, "matrix is not unitriangular"),
            PolyError::NonExactDivision => write!(f, "division is not exact"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Dense univariate polynomial over the integers, coefficients ascending by
/// exponent. Canonical form: trailing zeros trimmed, zero = empty list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> IntPoly {
        IntPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> IntPoly {
        IntPoly::from_coeffs(vec![c.into()])
    }

    /// `c * q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: usize) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c.into();
        IntPoly::from_coeffs(coeffs)
    }

    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> IntPoly {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    /// Convenience constructor from machine integers, ascending.
    pub fn from_ints(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `1 - q^e`.
    pub fn one_minus_q(e: usize) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[0] = BigInt::one();
        coeffs[e] += BigInt::from(-1);
        IntPoly::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `q^e` (zero beyond the stored range).
    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Value at `q = 1`: the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend_from_slice(&self.coeffs);
        IntPoly { coeffs }
    }

    /// Substitute `q -> q^r`. For `r = 0` this is evaluation at 1.
    pub fn dilate(&self, r: usize) -> IntPoly {
        if r == 0 {
            return IntPoly::from_coeffs(vec![self.eval_at_one()]);
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().saturating_sub(1) * r + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * r] = c.clone();
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    /// `q^D * P(1/q)`: reflect the coefficients within the window `0..=D`.
    pub fn reciprocal(&self, window: usize) -> Result<IntPoly, PolyError> {
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let degree = self.degree().unwrap();
        if degree > window {
            return Err(PolyError::DegreeExceeded { degree, window });
        }
        let mut coeffs = vec![BigInt::zero(); window + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[window - i] = c.clone();
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }

    /// Exact division, failing when a remainder is left.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<IntPoly, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::NonExactDivision);
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree().unwrap();
        let lead = &divisor.coeffs[dd];
        if rem.len() - 1 < dd {
            return Err(PolyError::NonExactDivision);
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (c, r) = num_integer::div_rem(top, lead.clone());
            if !r.is_zero() {
                return Err(PolyError::NonExactDivision);
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let sub = d * &c;
                rem[k + i] -= sub;
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::NonExactDivision);
        }
        Ok(IntPoly::from_coeffs(quot))
    }

    /// Divide by `q^e`; the low-order coefficients must vanish.
    pub fn div_exact_monomial(&self, e: usize) -> Result<IntPoly, PolyError> {
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        if self.coeffs.len() <= e || self.coeffs[..e].iter().any(|c| !c.is_zero()) {
            return Err(PolyError::NonExactDivision);
        }
        Ok(IntPoly::from_coeffs(self.coeffs[e..].to_vec()))
    }

    /// Content-free univariate gcd (primitive pseudo-remainder sequence),
    /// normalized to positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| num_integer::gcd(acc, c.abs()))
    }

    fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut content = self.content();
        if self.coeffs.last().unwrap().is_negative() {
            content = -content;
        }
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| c / &content).collect())
    }

    fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let dd = divisor.degree().expect("nonzero divisor");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let top = rem.coeffs[dr].clone();
            rem = &rem * &IntPoly::constant(lead.clone());
            let sub = divisor.shift(dr - dd) * IntPoly::constant(top);
            rem = &rem - &sub;
            // The leading term cancels exactly; trim keeps the form canonical.
        }
        rem
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl AddAssign<&IntPoly> for IntPoly {
    fn add_assign(&mut self, rhs: &IntPoly) {
        if rhs.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            self.coeffs[i] += c;
        }
        self.trim();
    }
}

impl fmt::Display for IntPoly {
    /// Descending exponents, e.g. `q^6+q^5+q^3+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if e == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}")?;
                }
                if e == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Truncated formal power series: coefficients of `q^0 .. q^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn new(order: usize, mut coeffs: Vec<BigInt>) -> TruncatedSeries {
        coeffs.resize(order + 1, BigInt::zero());
        TruncatedSeries { order, coeffs }
    }

    pub fn from_poly(p: &IntPoly, order: usize) -> TruncatedSeries {
        TruncatedSeries::new(order, p.coeffs().iter().take(order + 1).cloned().collect())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Truncated product with a polynomial.
    pub fn mul_poly(&self, p: &IntPoly) -> TruncatedSeries {
        let mut coeffs = vec![BigInt::zero(); self.order + 1];
        for (i, a) in p.coeffs().iter().enumerate() {
            if i > self.order || a.is_zero() {
                continue;
            }
            for (j, b) in self.coeffs.iter().take(self.order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedSeries::new(self.order, coeffs)
    }

    /// Divide by `1 - q^e`: cumulative sums with stride `e`.
    pub fn div_one_minus_q(&self, e: usize) -> TruncatedSeries {
        let mut coeffs = self.coeffs.clone();
        for i in e..=self.order {
            let prev = coeffs[i - e].clone();
            coeffs[i] += prev;
        }
        TruncatedSeries::new(self.order, coeffs)
    }
}

impl fmt::Display for TruncatedSeries {
    /// Ascending exponents with an order marker, e.g. `q^2+q^4+O(q^6)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if e == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}")?;
                }
                if e == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{e}")?;
                }
            }
        }
        if !first {
            write!(f, "+")?;
        }
        write!(f, "O(q^{})", self.order + 1)
    }
}

/// A rational function `numerator / prod (1 - q^e)^m`.
///
/// Only denominators that are products of `(1 - q^e)` factors arise here, so
/// no general normal form is kept: cancellation happens only between the
/// numerator and an identical `(1 - q^e)` factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredRational {
    numerator: IntPoly,
    /// exponent `e` of the factor `(1 - q^e)` -> multiplicity
    denominator: BTreeMap<usize, usize>,
}

impl FactoredRational {
    pub fn zero() -> FactoredRational {
        FactoredRational { numerator: IntPoly::zero(), denominator: BTreeMap::new() }
    }

    pub fn from_poly(p: IntPoly) -> FactoredRational {
        FactoredRational { numerator: p, denominator: BTreeMap::new() }
    }

    pub fn new(numerator: IntPoly, factors: impl IntoIterator<Item = usize>) -> FactoredRational {
        let mut denominator = BTreeMap::new();
        for e in factors {
            assert!(e >= 1, "factor exponents are positive");
            *denominator.entry(e).or_insert(0) += 1;
        }
        let mut r = FactoredRational { numerator, denominator };
        r.cancel();
        r
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.numerator
    }

    /// Denominator factors as (exponent, multiplicity), ascending.
    pub fn denominator(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.denominator.iter().map(|(&e, &m)| (e, m))
    }

    pub fn denominator_degree(&self) -> usize {
        self.denominator.iter().map(|(&e, &m)| e * m).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_empty()
    }

    /// Expanded denominator polynomial.
    pub fn denominator_poly(&self) -> IntPoly {
        let mut d = IntPoly::one();
        for (&e, &m) in &self.denominator {
            let f = IntPoly::one_minus_q(e);
            for _ in 0..m {
                d = &d * &f;
            }
        }
        d
    }

    /// Cancel denominator factors dividing the numerator exactly.
    fn cancel(&mut self) {
        if self.numerator.is_zero() {
            self.denominator.clear();
            return;
        }
        let exponents: Vec<usize> = self.denominator.keys().copied().collect();
        for e in exponents {
            let f = IntPoly::one_minus_q(e);
            while self.denominator.get(&e).copied().unwrap_or(0) > 0 {
                match self.numerator.div_exact(&f) {
                    Ok(q) => {
                        self.numerator = q;
                        let m = self.denominator.get_mut(&e).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.denominator.remove(&e);
                        }
                    }
                    Err(_) => break,
                }
            }
        }
    }

    pub fn mul_poly(&self, p: &IntPoly) -> FactoredRational {
        let mut r = FactoredRational {
            numerator: &self.numerator * p,
            denominator: self.denominator.clone(),
        };
        r.cancel();
        r
    }

    pub fn neg(&self) -> FactoredRational {
        FactoredRational { numerator: -&self.numerator, denominator: self.denominator.clone() }
    }

    /// Append a factor `1 / (1 - q^e)`.
    pub fn div_factor(&self, e: usize) -> FactoredRational {
        let mut denominator = self.denominator.clone();
        *denominator.entry(e).or_insert(0) += 1;
        let mut r = FactoredRational { numerator: self.numerator.clone(), denominator };
        r.cancel();
        r
    }

    pub fn add(&self, other: &FactoredRational) -> FactoredRational {
        // Common denominator: per-exponent maximum multiplicity.
        let mut common = self.denominator.clone();
        for (&e, &m) in &other.denominator {
            let entry = common.entry(e).or_insert(0);
            *entry = (*entry).max(m);
        }
        let complement = |own: &BTreeMap<usize, usize>| -> IntPoly {
            let mut p = IntPoly::one();
            for (&e, &m) in &common {
                let have = own.get(&e).copied().unwrap_or(0);
                let f = IntPoly::one_minus_q(e);
                for _ in have..m {
                    p = &p * &f;
                }
            }
            p
        };
        let numerator = &(&self.numerator * &complement(&self.denominator))
            + &(&other.numerator * &complement(&other.denominator));
        let mut r = FactoredRational { numerator, denominator: common };
        r.cancel();
        r
    }

    /// Convert to a polynomial; the denominator must cancel completely.
    pub fn into_poly(mut self) -> Result<IntPoly, PolyError> {
        self.cancel();
        if self.denominator.is_empty() {
            Ok(self.numerator)
        } else {
            Err(PolyError::NonExactDivision)
        }
    }

    /// First `order + 1` coefficients of the formal power series.
    ///
    /// Every denominator factor has constant term 1, so the expansion always
    /// exists.
    pub fn expand(&self, order: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::from_poly(&self.numerator, order);
        for (&e, &m) in &self.denominator {
            for _ in 0..m {
                s = s.div_one_minus_q(e);
            }
        }
        s
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        write!(f, "({}) / ", self.numerator)?;
        for (&e, &m) in &self.denominator {
            if m == 1 {
                write!(f, "(1-q^{e})")?;
            } else {
                write!(f, "(1-q^{e})^{m}")?;
            }
        }
        Ok(())
    }
}

/// Square matrix of polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    entries: Vec<IntPoly>,
}

impl PolyMatrix {
    pub fn identity(dim: usize) -> PolyMatrix {
        assert!(dim >= 1);
        let mut m = PolyMatrix { dim, entries: vec![IntPoly::zero(); dim * dim] };
        for i in 0..dim {
            m.entries[i * dim + i] = IntPoly::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<IntPoly>>) -> Result<PolyMatrix, PolyError> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(PolyError::DimensionMismatch);
        }
        Ok(PolyMatrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at 0-based (row, column).
    pub fn entry(&self, i: usize, j: usize) -> &IntPoly {
        &self.entries[i * self.dim + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, p: IntPoly) {
        self.entries[i * self.dim + j] = p;
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.dim != rhs.dim {
            return Err(PolyError::DimensionMismatch);
        }
        let n = self.dim;
        let mut out = PolyMatrix { dim: n, entries: vec![IntPoly::zero(); n * n] };
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.entry(k, j);
                    if !b.is_zero() {
                        let prod = a * b;
                        out.entries[i * n + j] += &prod;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise product.
    pub fn hadamard(&self, rhs: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.dim != rhs.dim {
            return Err(PolyError::DimensionMismatch);
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a * b)
            .collect();
        Ok(PolyMatrix { dim: self.dim, entries })
    }

    /// Mirror along the antidiagonal: `out[i][j] = self[n-1-j][n-1-i]`.
    pub fn antitranspose(&self) -> PolyMatrix {
        let n = self.dim;
        let mut out = PolyMatrix { dim: n, entries: vec![IntPoly::zero(); n * n] };
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = self.entry(n - 1 - j, n - 1 - i).clone();
            }
        }
        out
    }

    /// Substitute `q -> q^r` in every entry.
    pub fn dilate(&self, r: usize) -> PolyMatrix {
        PolyMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|p| p.dilate(r)).collect(),
        }
    }

    /// Apply `(-1)^{i+j}` checkerboard signs.
    pub fn checkerboard(&self) -> PolyMatrix {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                if (i + j) % 2 == 1 {
                    out.entries[i * n + j] = -&out.entries[i * n + j];
                }
            }
        }
        out
    }

    pub fn is_unitriangular(&self) -> bool {
        (0..self.dim).all(|i| {
            self.entry(i, i).is_one() && (0..i).all(|j| self.entry(i, j).is_zero())
        })
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                if i == j {
                    self.entry(i, j).is_one()
                } else {
                    self.entry(i, j).is_zero()
                }
            })
        })
    }

    /// Exact inverse of a unitriangular matrix by back-substitution.
    pub fn unitriangular_inverse(&self) -> Result<PolyMatrix, PolyError> {
        if !self.is_unitriangular() {
            return Err(PolyError::NotUnitriangular);
        }
        let n = self.dim;
        let mut inv = PolyMatrix::identity(n);
        for j in 0..n {
            for i in (0..j).rev() {
                // x_i = -sum_{k=i+1..=j} M[i][k] * x_k
                let mut acc = IntPoly::zero();
                for k in (i + 1)..=j {
                    let m = self.entry(i, k);
                    if !m.is_zero() {
                        let prod = m * inv.entry(k, j);
                        acc += &prod;
                    }
                }
                inv.set_entry(i, j, -&acc);
            }
        }
        Ok(inv)
    }

    /// Determinant of the submatrix selected by `rows` x `cols`
    /// (0-based, cofactor expansion).
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<IntPoly, PolyError> {
        if rows.len() != cols.len() {
            return Err(PolyError::DimensionMismatch);
        }
        if rows.iter().chain(cols).any(|&k| k >= self.dim) {
            return Err(PolyError::DimensionMismatch);
        }
        Ok(self.minor_rec(rows, cols))
    }

    fn minor_rec(&self, rows: &[usize], cols: &[usize]) -> IntPoly {
        match rows.len() {
            0 => IntPoly::one(),
            1 => self.entry(rows[0], cols[0]).clone(),
            _ => {
                let mut det = IntPoly::zero();
                let sub_rows = &rows[1..];
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.entry(rows[0], c);
                    if a.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols
                        .iter()
                        .enumerate()
                        .filter(|&(t, _)| t != k)
                        .map(|(_, &x)| x)
                        .collect();
                    let cofactor = a * &self.minor_rec(sub_rows, &sub_cols);
                    if k % 2 == 0 {
                        det += &cofactor;
                    } else {
                        det = &det - &cofactor;
                    }
                }
                det
            }
        }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim;
        let rendered: Vec<String> = self.entries.iter().map(|p| p.to_string()).collect();
        let mut widths = vec![0usize; n];
        for j in 0..n {
            widths[j] = (0..n).map(|i| rendered[i * n + j].len()).max().unwrap_or(0);
        }
        for i in 0..n {
            write!(f, "[ ")?;
            for j in 0..n {
                write!(f, "{:>width$}", rendered[i * n + j], width = widths[j])?;
                if j + 1 < n {
                    write!(f, "  ")?;
                }
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

/// Linear recurrence with polynomial coefficients:
/// `p[n+s] = sum_k coeffs[k-1] * p[n+s-k]` for `k = 1..=s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence {
    coeffs: Vec<IntPoly>,
}

impl Recurrence {
    pub fn new(coeffs: Vec<IntPoly>) -> Recurrence {
        assert!(
            coeffs.last().map(|c| !c.is_zero()).unwrap_or(false),
            "trailing recurrence coefficient must be nonzero"
        );
        Recurrence { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[IntPoly] {
        &self.coeffs
    }

    /// Check `p[n+s] = sum coeffs[k-1] p[n+s-k]` on a window of the sequence.
    pub fn satisfied_by(&self, sequence: &[IntPoly]) -> bool {
        let s = self.order();
        if sequence.len() <= s {
            return true;
        }
        (s..sequence.len()).all(|n| {
            let mut acc = IntPoly::zero();
            for (k, r) in self.coeffs.iter().enumerate() {
                let prod = r * &sequence[n - 1 - k];
                acc += &prod;
            }
            acc == sequence[n]
        })
    }

    /// Specialize the coefficients at `q = 1`.
    pub fn at_q_one(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(IntPoly::eval_at_one).collect()
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.order();
        write!(f, "p[n+{s}] = ")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let idx = s - 1 - k;
            if idx == 0 {
                write!(f, "({c})*p[n]")?;
            } else {
                write!(f, "({c})*p[n+{idx}]")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_ints(coeffs)
    }

    #[test]
    fn canonical_form() {
        assert!(IntPoly::from_ints(&[0, 0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 2]);
        let b = p(&[3, 0, 1]);
        assert_eq!(&a + &b, p(&[4, 2, 1]));
        assert_eq!(&a * &b, p(&[3, 6, 1, 2]));
        assert_eq!(&a - &a, IntPoly::zero());
        assert_eq!(a.shift(2), p(&[0, 0, 1, 2]));
        assert_eq!(p(&[1, 1]).dilate(3), p(&[1, 0, 0, 1]));
        assert_eq!(p(&[1, 2, 3]).dilate(0), IntPoly::constant(6));
        assert_eq!(p(&[2, -1, 3]).eval_at_one(), BigInt::from(4));
    }

    #[test]
    fn display_format() {
        // q^6+q^5+q^3+1
        let q = p(&[1, 0, 0, 1, 0, 1, 1]);
        assert_eq!(q.to_string(), "q^6+q^5+q^3+1");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(p(&[0, -2, 3]).to_string(), "3q^2-2q");
        assert_eq!(p(&[0, 1]).to_string(), "q");
    }

    #[test]
    fn reciprocal_reflects_within_window() {
        // q^6+q^5+q^3+1 reflected in degree 8 -> q^8+q^5+q^3+q^2
        let q = p(&[1, 0, 0, 1, 0, 1, 1]);
        let r = q.reciprocal(8).unwrap();
        assert_eq!(r, p(&[0, 0, 1, 1, 0, 1, 0, 0, 1]));
        assert_eq!(IntPoly::one().reciprocal(0).unwrap(), IntPoly::one());
        assert_eq!(IntPoly::monomial(1, 2).reciprocal(2).unwrap(), IntPoly::one());
        assert_eq!(
            p(&[1, 1, 1]).reciprocal(1),
            Err(PolyError::DegreeExceeded { degree: 2, window: 1 })
        );
        // Involution.
        assert_eq!(q.reciprocal(9).unwrap().reciprocal(9).unwrap(), q);
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 2, 1]);
        let b = p(&[1, 1]);
        assert_eq!(a.div_exact(&b).unwrap(), b);
        assert_eq!(p(&[1, 1, 1]).div_exact(&b), Err(PolyError::NonExactDivision));
        let f = IntPoly::one_minus_q(4);
        let prod = &f * &p(&[3, 0, 1]);
        assert_eq!(prod.div_exact(&f).unwrap(), p(&[3, 0, 1]));
        assert_eq!(p(&[0, 0, 5, 1]).div_exact_monomial(2).unwrap(), p(&[5, 1]));
        assert_eq!(p(&[0, 1]).div_exact_monomial(2), Err(PolyError::NonExactDivision));
    }

    #[test]
    fn gcd_reduction() {
        let a = &p(&[1, 1]) * &p(&[1, 0, 1]); // (1+q)(1+q^2)
        let b = &p(&[1, 1]) * &p(&[-1, 1]); // (1+q)(q-1)
        let g = a.gcd(&b);
        assert_eq!(g, p(&[1, 1]));
        assert_eq!(IntPoly::zero().gcd(&a), a);
    }

    #[test]
    fn series_expansion() {
        let big = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        // 1/(1-q^2) to order 5 -> 1+q^2+q^4
        let r = FactoredRational::new(IntPoly::one(), [2]);
        assert_eq!(r.expand(5).coeffs(), big(&[1, 0, 1, 0, 1, 0]));
        // (q^2+q)/(1-q^4) to order 9 -> q+q^2+q^5+q^6+q^9
        let r = FactoredRational::new(p(&[0, 1, 1]), [4]);
        assert_eq!(r.expand(9).coeffs(), big(&[0, 1, 1, 0, 0, 1, 1, 0, 0, 1]));
    }

    #[test]
    fn rational_arithmetic() {
        // 1/(1-q) + (-1)/(1-q) = 0
        let a = FactoredRational::new(IntPoly::one(), [1]);
        let b = a.neg();
        assert!(a.add(&b).is_zero());
        // (1-q^2)/(1-q^2) cancels to 1
        let c = FactoredRational::new(IntPoly::one_minus_q(2), [2]);
        assert!(c.is_polynomial());
        assert_eq!(c.numerator(), &IntPoly::one());
        // into_poly fails when the denominator is left over
        let d = FactoredRational::new(p(&[1, 1]), [3]);
        assert_eq!(d.into_poly(), Err(PolyError::NonExactDivision));
    }

    #[test]
    fn rational_add_common_denominator() {
        // 1/(1-q) + 1/(1-q^2) = ((1-q^2)+(1-q))/((1-q)(1-q^2))
        let a = FactoredRational::new(IntPoly::one(), [1]);
        let b = FactoredRational::new(IntPoly::one(), [2]);
        let sum = a.add(&b);
        let lhs = sum.expand(10);
        let ra = a.expand(10);
        let rb = b.expand(10);
        for e in 0..=10 {
            assert_eq!(lhs.coeff(e), ra.coeff(e) + rb.coeff(e));
        }
    }

    #[test]
    fn hadamard_and_antitranspose() {
        let i3 = PolyMatrix::identity(3);
        assert_eq!(i3.hadamard(&i3).unwrap(), i3);
        assert_eq!(i3.antitranspose(), i3);

        let m = PolyMatrix::from_rows(vec![
            vec![p(&[1]), p(&[2])],
            vec![p(&[3]), p(&[4])],
        ])
        .unwrap();
        let at = m.antitranspose();
        assert_eq!(at.entry(0, 0), &p(&[4]));
        assert_eq!(at.entry(0, 1), &p(&[2]));
        assert_eq!(at.entry(1, 0), &p(&[3]));
        assert_eq!(at.entry(1, 1), &p(&[1]));
        assert_eq!(at.antitranspose(), m);

        let u = PolyMatrix::from_rows(vec![
            vec![p(&[1]), p(&[0, 1])],
            vec![p(&[0]), p(&[1])],
        ])
        .unwrap();
        let h = u.hadamard(&u).unwrap();
        assert_eq!(h.entry(0, 1), &p(&[0, 0, 1]));
        assert!(i3.hadamard(&m).is_err());

        // Involution on an arbitrary 5x5.
        let mut big = PolyMatrix::identity(5);
        for i in 0..5 {
            for j in 0..5 {
                big.set_entry(i, j, p(&[(i * 5 + j) as i64, i as i64 - j as i64]));
            }
        }
        assert_eq!(big.antitranspose().antitranspose(), big);
    }

    #[test]
    fn unitriangular_inverse_3x3() {
        // [[1,a,b],[0,1,c],[0,0,1]]^-1 = [[1,-a,ac-b],[0,1,-c],[0,0,1]]
        let a = p(&[0, 1]);
        let b = p(&[0, 0, 3]);
        let c = p(&[2, 1]);
        let m = PolyMatrix::from_rows(vec![
            vec![IntPoly::one(), a.clone(), b.clone()],
            vec![IntPoly::zero(), IntPoly::one(), c.clone()],
            vec![IntPoly::zero(), IntPoly::zero(), IntPoly::one()],
        ])
        .unwrap();
        let inv = m.unitriangular_inverse().unwrap();
        assert_eq!(inv.entry(0, 1), &-&a);
        assert_eq!(inv.entry(0, 2), &(&(&a * &c) - &b));
        assert_eq!(inv.entry(1, 2), &-&c);
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());

        let id = PolyMatrix::identity(4);
        assert_eq!(id.unitriangular_inverse().unwrap(), id);

        let bad = PolyMatrix::from_rows(vec![
            vec![p(&[2]), p(&[0])],
            vec![p(&[0]), p(&[1])],
        ])
        .unwrap();
        assert_eq!(bad.unitriangular_inverse(), Err(PolyError::NotUnitriangular));
    }

    #[test]
    fn minor_selection() {
        let m = PolyMatrix::from_rows(vec![
            vec![p(&[1]), p(&[0, 1]), p(&[2])],
            vec![p(&[0]), p(&[1]), p(&[0, 0, 1])],
            vec![p(&[0]), p(&[0]), p(&[1])],
        ])
        .unwrap();
        assert_eq!(m.minor(&[0], &[1]).unwrap(), p(&[0, 1]));
        // Unitriangular diagonal block with vanishing off-diagonal entry.
        assert_eq!(m.minor(&[0, 2], &[0, 2]).unwrap(), p(&[1]));
        assert_eq!(m.minor(&[0, 1], &[0, 1]).unwrap(), p(&[1]));
        assert!(m.minor(&[0, 1], &[0]).is_err());
        assert!(m.minor(&[0, 3], &[0, 1]).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn poly_strategy() -> impl Strategy<Value = IntPoly> {
            proptest::collection::vec(-50i64..50, 0..10).prop_map(|v| IntPoly::from_ints(&v))
        }

        proptest! {
            #[test]
            fn reciprocal_is_an_involution(p in poly_strategy(), slack in 0usize..5) {
                let window = p.degree().unwrap_or(0) + slack;
                let twice = p.reciprocal(window).unwrap().reciprocal(window).unwrap();
                prop_assert_eq!(twice, p);
            }

            #[test]
            fn expansion_times_denominator_recovers_numerator(
                num in poly_strategy(),
                factors in proptest::collection::vec(1usize..6, 0..3),
            ) {
                let rational = FactoredRational::new(num, factors);
                let order = 20;
                let mut product = rational.expand(order);
                for (e, m) in rational.denominator() {
                    for _ in 0..m {
                        product = product.mul_poly(&IntPoly::one_minus_q(e));
                    }
                }
                for r in 0..=order {
                    prop_assert_eq!(product.coeff(r), rational.numerator().coeff(r));
                }
            }

            #[test]
            fn dilate_commutes_with_multiplication(
                a in poly_strategy(),
                b in poly_strategy(),
                r in 1usize..4,
            ) {
                prop_assert_eq!((&a * &b).dilate(r), &a.dilate(r) * &b.dilate(r));
            }
        }
    }

    #[test]
    fn recurrence_check() {
        // p[n+2] = 2 p[n+1] - p[n] holds for p[n] = n.
        let rec = Recurrence::new(vec![p(&[2]), p(&[-1])]);
        let seq: Vec<IntPoly> = (0..8).map(IntPoly::constant).collect();
        assert!(rec.satisfied_by(&seq));
        assert_eq!(rec.at_q_one(), vec![BigInt::from(2), BigInt::from(-1)]);
        let bad: Vec<IntPoly> = (0..8).map(|n| IntPoly::constant(n * n)).collect();
        assert!(!rec.satisfied_by(&bad));
    }
}
