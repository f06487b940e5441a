//! Limit power series of prefix q-binomials, closed forms and recurrences
//! for periodic words.
//!
//! For a left-infinite word `x` and a finite `z`, the coefficient of `q^r`
//! in `qbinom(prefix, z)` stabilizes once the prefix length reaches
//! `r + |z|`; the stabilized coefficients form the series of the pair. For
//! a periodic word `u^ω` the polynomial sequence `n -> qbinom(u^n, z)` has
//! an exact closed form as a sum of geometric partial sums with rational
//! weights, from which linear recurrences (polynomial and integer
//! coefficients), the limit rational function, and the vanishing residue
//! classes of the series coefficients all follow.

use crate::parikh::{parikh_matrix, triangular, ParikhError};
use crate::poly::{
    FactoredRational, IntPoly, PolyError, PolyMatrix, Recurrence, TruncatedSeries,
};
use crate::qbinom::{binom, qbinom};
use crate::words::{LeftInfiniteWord, Letter, Word};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Both the period and the pattern word must be nonempty.
    EmptyWord,
    /// A letter of `z` does not occur in `u`, so the series vanishes.
    LetterAbsent(Letter),
    /// The selected coefficient class is identically zero.
    AllZeroClass,
    /// Too few sample points on the residue class for a fit.
    InsufficientSamples { have: usize, need: usize },
    /// An exact division failed; signals a construction bug.
    NonExactDivision,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::EmptyWord => write!(f, "words must be nonempty"),
            SeriesError::LetterAbsent(a) => {
                write!(f, "letter '{a}' does not occur in the period")
            }
            SeriesError::AllZeroClass => write!(f, "coefficient class is identically zero"),
            SeriesError::InsufficientSamples { have, need } => {
                write!(f, "only {have} sample points on the class, need {need}")
            }
            SeriesError::NonExactDivision => write!(f, "division is not exact"),
        }
    }
}

impl std::error::Error for SeriesError {}

impl From<PolyError> for SeriesError {
    fn from(_: PolyError) -> Self {
        SeriesError::NonExactDivision
    }
}

/// Coefficients `c_0 .. c_N` of the limit series of `qbinom(prefix, z)`.
///
/// The coefficient of `q^r` is final once the prefix is `r + |z|` long, so
/// one q-binomial of the prefix of length `N + |z|` suffices.
pub fn series_coefficients(x: &LeftInfiniteWord, z: &Word, order: usize) -> TruncatedSeries {
    let prefix = x.prefix(order + z.len());
    TruncatedSeries::from_poly(&qbinom(&prefix, z), order)
}

/// Upper unitriangular matrix with `q^{(j-i)k}` above the diagonal,
/// dimension `|z| + 1`.
pub fn pow_matrix(z: &Word, k: usize) -> PolyMatrix {
    let dim = z.len() + 1;
    let mut m = PolyMatrix::identity(dim);
    for i in 0..dim {
        for j in (i + 1)..dim {
            m.set_entry(i, j, IntPoly::monomial(1, (j - i) * k));
        }
    }
    m
}

/// `H_{z,k}(u)`: the q-Parikh matrix of `u` with every atomic power raised
/// by `k`, i.e. the Hadamard product with [`pow_matrix`].
pub fn h_matrix(z: &Word, u: &Word, k: usize) -> Result<PolyMatrix, ParikhError> {
    let p = parikh_matrix(z, u)?;
    Ok(p.hadamard(&pow_matrix(z, k)).expect("equal dimensions"))
}

/// Exact closed form of `n -> qbinom(u^n, z)`:
///
/// ```text
/// q^{-s(|z|-1)} Σ_k R_k(q) (1 - q^{c_k n |u|}) / (1 - q^{c_k |u|})
/// ```
///
/// with pairwise distinct positive `c_k` and rational `R_k` whose
/// denominators are products of `(1 - q^{t|u|})` factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    terms: Vec<(FactoredRational, usize)>,
    prefactor_exponent: usize,
    period: usize,
}

impl ClosedForm {
    /// Terms `(R_k, c_k)`, `c_k` ascending and distinct, in units of the
    /// period length.
    pub fn terms(&self) -> &[(FactoredRational, usize)] {
        &self.terms
    }

    /// Exponent of the `q` power divided out at evaluation time.
    pub fn prefactor_exponent(&self) -> usize {
        self.prefactor_exponent
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// The rational function of the limit series, before the prefactor
    /// division: `Σ_k R_k / (1 - q^{c_k |u|})`.
    pub fn limit_rational(&self) -> FactoredRational {
        let mut sum = FactoredRational::zero();
        for (r, c) in &self.terms {
            sum = sum.add(&r.div_factor(c * self.period));
        }
        sum
    }

    /// Truncated expansion of the limit series itself (prefactor divided).
    pub fn limit_series(&self, order: usize) -> Result<TruncatedSeries, SeriesError> {
        let limit = self.limit_rational();
        let numerator = limit
            .numerator()
            .div_exact_monomial(self.prefactor_exponent)
            .map_err(|_| SeriesError::NonExactDivision)?;
        let shifted = FactoredRational::new(
            numerator,
            limit.denominator().flat_map(|(e, m)| std::iter::repeat_n(e, m)),
        );
        Ok(shifted.expand(order))
    }
}

/// Build the closed form of `n -> qbinom(u^n, z)` bottom-up along the last
/// column of the q-Parikh matrix of `u^n`: each level telescopes the
/// geometric sums of the previous ones.
pub fn periodic_closed_form(u: &Word, z: &Word) -> Result<ClosedForm, SeriesError> {
    if u.is_empty() || z.is_empty() {
        return Err(SeriesError::EmptyWord);
    }
    let ell = z.len();
    let period = u.len();
    // levels[j] holds the terms of p_{n,j} = q^{s(j-1)} qbinom(u^n, suffix of
    // length j of z), as pairs (R, c) meaning R (1-q^{c n |u|})/(1-q^{c |u|}).
    let mut levels: Vec<Vec<(FactoredRational, usize)>> = vec![Vec::new()];
    for j in 1..=ell {
        let mut raw: Vec<(FactoredRational, usize)> = Vec::new();
        for k in 1..=j {
            let factor = z.factor(ell - j, ell - j + k);
            let b = qbinom(u, &factor).shift(triangular(k as i64 - 1));
            if b.is_zero() {
                continue;
            }
            if k == j {
                // Bottom entry p_{n,0} = 1: a plain geometric sum.
                raw.push((FactoredRational::from_poly(b), j));
            } else {
                for (r, c) in &levels[j - k] {
                    let scaled = r.mul_poly(&b).div_factor(c * period);
                    if scaled.is_zero() {
                        continue;
                    }
                    raw.push((scaled.clone(), k));
                    raw.push((scaled.neg(), c + k));
                }
            }
        }
        levels.push(consolidate(raw));
    }
    Ok(ClosedForm {
        terms: levels.pop().unwrap(),
        prefactor_exponent: triangular(ell as i64 - 1),
        period,
    })
}

/// Merge terms sharing an exponent `c` (the construction produces repeats)
/// so the recurrence below sees pairwise distinct roots.
fn consolidate(terms: Vec<(FactoredRational, usize)>) -> Vec<(FactoredRational, usize)> {
    let mut by_c: Vec<(usize, FactoredRational)> = Vec::new();
    for (r, c) in terms {
        match by_c.iter_mut().find(|(e, _)| *e == c) {
            Some((_, acc)) => *acc = acc.add(&r),
            None => by_c.push((c, r)),
        }
    }
    by_c.sort_by_key(|(c, _)| *c);
    by_c
        .into_iter()
        .filter(|(_, r)| !r.is_zero())
        .map(|(c, r)| (r, c))
        .collect()
}

/// Evaluate the closed form at `n`, recovering the exact polynomial
/// `qbinom(u^n, z)`. The denominators cancel completely by construction.
pub fn closed_form_eval(cf: &ClosedForm, n: usize) -> Result<IntPoly, SeriesError> {
    let mut sum = FactoredRational::zero();
    for (r, c) in &cf.terms {
        let term = r
            .mul_poly(&IntPoly::one_minus_q(c * n * cf.period))
            .div_factor(c * cf.period);
        sum = sum.add(&term);
    }
    let poly = sum.into_poly().map_err(|_| SeriesError::NonExactDivision)?;
    poly.div_exact_monomial(cf.prefactor_exponent)
        .map_err(|_| SeriesError::NonExactDivision)
}

/// Order-(s+1) linear recurrence with polynomial coefficients satisfied by
/// `n -> qbinom(u^n, z)`, built from the signed elementary symmetric sums of
/// the root monomials `q^{c_k |u|}`.
pub fn recurrence_polynomial(cf: &ClosedForm) -> Recurrence {
    let exponents: Vec<usize> = cf.terms.iter().map(|(_, c)| c * cf.period).collect();
    let s = exponents.len();
    // e[k] = k-th elementary symmetric polynomial of the monomials.
    let mut e = vec![IntPoly::zero(); s + 1];
    e[0] = IntPoly::one();
    for &a in &exponents {
        for k in (1..=s).rev() {
            let add = e[k - 1].shift(a);
            e[k] += &add;
        }
    }
    // D_0 = -1, D_k = (-1)^{k-1} e_k, D_{s+1} = 0; coefficients D_k - D_{k-1}.
    let d = |k: usize| -> IntPoly {
        if k == 0 {
            -&IntPoly::one()
        } else if k > s {
            IntPoly::zero()
        } else if k % 2 == 1 {
            e[k].clone()
        } else {
            -&e[k]
        }
    };
    let coeffs: Vec<IntPoly> = (1..=s + 1).map(|k| &d(k) - &d(k - 1)).collect();
    Recurrence::new(coeffs)
}

/// Constant-coefficient recurrence `p[n+s] = Σ coeffs[k-1] p[n+s-k]`,
/// valid from index `valid_from` of the sequence it describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntRecurrence {
    coeffs: Vec<BigInt>,
    valid_from: usize,
}

impl IntRecurrence {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn valid_from(&self) -> usize {
        self.valid_from
    }

    /// Check the relation on every window of `sequence` starting at
    /// `valid_from` (interpreting `sequence[i]` as term `i`).
    pub fn satisfied_by(&self, sequence: &[BigInt]) -> bool {
        let s = self.order();
        let start = self.valid_from.max(s);
        (start..sequence.len()).all(|n| {
            let acc: BigInt = self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * &sequence[n - 1 - k])
                .sum();
            acc == sequence[n]
        })
    }
}

impl fmt::Display for IntRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c[n] = ")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            let shift = k + 1;
            if k == 0 {
                write!(f, "{c}*c[n-{shift}]")?;
            } else if c.is_negative() {
                write!(f, " - {}*c[n-{shift}]", c.abs())?;
            } else {
                write!(f, " + {c}*c[n-{shift}]")?;
            }
        }
        Ok(())
    }
}

/// The `q = 1` specialization of the polynomial recurrence together with the
/// first `max(order + 4, 11)` terms of the counting sequence
/// `n -> binom(u^n, z)`.
pub fn recurrence_integer(u: &Word, z: &Word) -> Result<(IntRecurrence, Vec<BigInt>), SeriesError> {
    let cf = periodic_closed_form(u, z)?;
    let rec = recurrence_polynomial(&cf);
    let coeffs = rec.at_q_one();
    let count = (rec.order() + 4).max(11);
    let terms: Vec<BigInt> = (0..count).map(|n| binom(&u.power(n), z)).collect();
    Ok((IntRecurrence { coeffs, valid_from: 0 }, terms))
}

/// Constant-coefficient recurrence for the coefficients of the limit series,
/// read off the reduced denominator of its rational function. The order is
/// the degree of that denominator.
pub fn coefficient_recurrence(cf: &ClosedForm) -> Result<IntRecurrence, SeriesError> {
    let limit = cf.limit_rational();
    let numerator = limit
        .numerator()
        .div_exact_monomial(cf.prefactor_exponent)
        .map_err(|_| SeriesError::NonExactDivision)?;
    if numerator.is_zero() {
        return Ok(IntRecurrence { coeffs: Vec::new(), valid_from: 0 });
    }
    let denominator = limit.denominator_poly();
    let g = numerator.gcd(&denominator);
    let mut num_red = numerator.div_exact(&g)?;
    let mut den_red = denominator.div_exact(&g)?;
    if den_red.coeff(0) == BigInt::from(-1) {
        num_red = -&num_red;
        den_red = -&den_red;
    }
    // Denominators built from (1-q^e) factors have constant term 1, and the
    // gcd preserves that up to sign.
    debug_assert!(den_red.coeff(0) == BigInt::from(1));
    let order = den_red.degree().unwrap_or(0);
    let coeffs: Vec<BigInt> = (1..=order).map(|k| -den_red.coeff(k)).collect();
    let valid_from = num_red.degree().unwrap_or(0) + 1;
    Ok(IntRecurrence { coeffs, valid_from: valid_from.max(order) })
}

/// Residue classes mod `|u|` on which the limit series coefficients are
/// eventually zero.
///
/// Reading `z` from the right, the letter `z_j` occurs in `u` at a set of
/// suffix distances; every admissible tuple of distances contributes the
/// residue `Σ t_j - |z|(|z|-1)/2` and every large coefficient index must hit
/// one of those residues to be nonzero.
pub fn vanishing_residues(u: &Word, z: &Word) -> Result<BTreeSet<usize>, SeriesError> {
    if u.is_empty() || z.is_empty() {
        return Err(SeriesError::EmptyWord);
    }
    let period = u.len();
    let ell = z.len();
    // Reachable residues of sums of suffix distances, one letter at a time.
    let mut reachable: BTreeSet<usize> = BTreeSet::new();
    reachable.insert(0);
    for j in 1..=ell {
        let letter = z.letter(ell - j);
        let distances: Vec<usize> = (0..period)
            .filter(|&t| u.letter(period - 1 - t) == letter)
            .collect();
        if distances.is_empty() {
            return Err(SeriesError::LetterAbsent(letter));
        }
        reachable = reachable
            .iter()
            .flat_map(|&r| distances.iter().map(move |&t| (r + t) % period))
            .collect();
    }
    let shift = triangular(ell as i64 - 1) % period;
    let admissible: BTreeSet<usize> = reachable
        .into_iter()
        .map(|r| (r + period - shift) % period)
        .collect();
    Ok((0..period).filter(|r| !admissible.contains(r)).collect())
}

/// Index beyond which the residue dichotomy is guaranteed:
/// `|z| * max(t_j) + (|u|-1) |z| (|z|-1) / 2`.
pub fn residue_cutoff(u: &Word, z: &Word) -> Result<usize, SeriesError> {
    if u.is_empty() || z.is_empty() {
        return Err(SeriesError::EmptyWord);
    }
    let period = u.len();
    let ell = z.len();
    let mut max_t = 0usize;
    for &letter in z.letters() {
        let t = (0..period)
            .filter(|&t| u.letter(period - 1 - t) == letter)
            .max()
            .ok_or(SeriesError::LetterAbsent(letter))?;
        max_t = max_t.max(t);
    }
    Ok(ell * max_t + (period - 1) * triangular(ell as i64 - 1))
}

/// Least-squares slope of `log c` against `log i` along the residue class
/// `residue + i |u|` of the series coefficients; estimates the polynomial
/// growth degree (which is `|z| - 1` on non-vanishing classes).
pub fn growth_fit(u: &Word, z: &Word, residue: usize, order: usize) -> Result<f64, SeriesError> {
    if u.is_empty() || z.is_empty() {
        return Err(SeriesError::EmptyWord);
    }
    let period = u.len();
    let stream = LeftInfiniteWord::Periodic(u.clone());
    let series = series_coefficients(&stream, z, order);
    let mut samples: Vec<(f64, f64)> = Vec::new();
    let mut have = 0usize;
    let mut i = 1usize;
    while residue + i * period <= order {
        let c = series.coeff(residue + i * period);
        have += 1;
        if c.is_positive() {
            let value = c.to_f64().unwrap_or(f64::MAX);
            samples.push(((i as f64).ln(), value.ln()));
        }
        i += 1;
    }
    if have < 40 {
        return Err(SeriesError::InsufficientSamples { have, need: 40 });
    }
    if samples.is_empty() {
        return Err(SeriesError::AllZeroClass);
    }
    let n = samples.len() as f64;
    let sx: f64 = samples.iter().map(|(x, _)| x).sum();
    let sy: f64 = samples.iter().map(|(_, y)| y).sum();
    let sxx: f64 = samples.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = samples.iter().map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < f64::EPSILON {
        // Single distinct abscissa; flat by convention.
        return Ok(0.0);
    }
    Ok((n * sxy - sx * sy) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_ints(coeffs)
    }

    fn big(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn thue_morse_series_start() {
        let t = LeftInfiniteWord::thue_morse();
        let s = series_coefficients(&t, &w("00"), 9);
        assert_eq!(s.coeffs(), &big(&[0, 0, 1, 0, 1, 1, 0, 1, 2, 1]));
    }

    #[test]
    fn absent_letter_series_is_zero() {
        let s = LeftInfiniteWord::periodic(w("a")).unwrap();
        assert!(series_coefficients(&s, &w("b"), 30).is_zero());
    }

    #[test]
    fn periodic_series_frozen_values() {
        // u = 0110, z = 01: coefficients of the limit series up to q^21.
        let s = LeftInfiniteWord::periodic(w("0110")).unwrap();
        let got = series_coefficients(&s, &w("01"), 21);
        assert_eq!(
            got.coeffs(),
            &big(&[0, 0, 0, 1, 2, 1, 0, 1, 2, 1, 0, 2, 4, 2, 0, 2, 4, 2, 0, 3, 6, 3])
        );
    }

    #[test]
    fn stabilization() {
        let t = LeftInfiniteWord::thue_morse();
        let z = w("010");
        for order in [5usize, 17] {
            let this = qbinom(&t.prefix(order + z.len()), &z);
            let longer = qbinom(&t.prefix(order + z.len() + 9), &z);
            for r in 0..=order {
                assert_eq!(this.coeff(r), longer.coeff(r), "r={r}");
            }
        }
    }

    #[test]
    fn pow_matrix_shape() {
        let m = pow_matrix(&w("ab"), 3);
        assert_eq!(m.entry(0, 1), &IntPoly::monomial(1, 3));
        assert_eq!(m.entry(0, 2), &IntPoly::monomial(1, 6));
        assert_eq!(m.entry(1, 2), &IntPoly::monomial(1, 3));
        let ones = pow_matrix(&w("abc"), 0);
        for i in 0..4 {
            for j in i..4 {
                assert!(ones.entry(i, j).is_one());
            }
        }
    }

    #[test]
    fn h_matrix_factorization() {
        let z = w("01");
        let u = w("0110");
        // H at k = 0 is the plain matrix.
        assert_eq!(h_matrix(&z, &u, 0).unwrap(), parikh_matrix(&z, &u).unwrap());
        let m = parikh_matrix(&z, &u).unwrap();
        assert_eq!(m.entry(0, 1), &p(&[1, 0, 0, 1])); // q^3+1
        assert_eq!(m.entry(0, 2), &p(&[0, 0, 0, 0, 1, 1])); // q^5+q^4
        assert_eq!(m.entry(1, 2), &p(&[0, 1, 1])); // q^2+q

        // H at any k is the atomic chain with every power raised by k.
        for k in [1usize, 3, 7] {
            let mut chain = PolyMatrix::identity(z.len() + 1);
            for (idx, &a) in u.letters().iter().enumerate() {
                let shifted = crate::parikh::atomic_matrix(&z, a, k + u.len() - 1 - idx);
                chain = chain.mul(&shifted).unwrap();
            }
            assert_eq!(h_matrix(&z, &u, k).unwrap(), chain, "k={k}");
        }

        // The matrix of u^n factors through the shifted H matrices.
        for n in 1..=4usize {
            let mut prod = PolyMatrix::identity(z.len() + 1);
            for k in (0..n).rev() {
                prod = h_matrix(&z, &u, k * u.len()).unwrap().mul(&prod).unwrap();
            }
            let direct = parikh_matrix(&z, &u.power(n)).unwrap();
            assert_eq!(prod, direct, "n={n}");
        }
    }

    #[test]
    fn closed_form_example_structure() {
        let cf = periodic_closed_form(&w("0110"), &w("01")).unwrap();
        assert_eq!(cf.prefactor_exponent(), 1);
        assert_eq!(cf.period(), 4);
        let cs: Vec<usize> = cf.terms().iter().map(|(_, c)| *c).collect();
        assert_eq!(cs, vec![1, 2]);
        // R_1 = (q^3+1)(q^2+q) / (1-q^4)
        let (r1, _) = &cf.terms()[0];
        assert_eq!(r1.numerator(), &(&p(&[1, 0, 0, 1]) * &p(&[0, 1, 1])));
        assert_eq!(r1.denominator().collect::<Vec<_>>(), vec![(4, 1)]);
        // R_2 = -R_1 + (q^5+q^4), over the same denominator.
        let (r2, _) = &cf.terms()[1];
        let expect = r1.neg().add(&FactoredRational::from_poly(p(&[0, 0, 0, 0, 1, 1])));
        assert_eq!(r2, &expect);
    }

    #[test]
    fn closed_form_eval_matches_qbinom() {
        let u = w("0110");
        let z = w("01");
        let cf = periodic_closed_form(&u, &z).unwrap();
        assert!(closed_form_eval(&cf, 0).unwrap().is_zero());
        assert_eq!(closed_form_eval(&cf, 1).unwrap(), p(&[0, 0, 0, 1, 1])); // q^4+q^3
        for n in 0..=6 {
            assert_eq!(closed_form_eval(&cf, n).unwrap(), qbinom(&u.power(n), &z), "n={n}");
        }
    }

    #[test]
    fn closed_form_eval_various_words() {
        for (u, z) in [("aba", "ab"), ("ab", "aab"), ("abc", "cb"), ("aa", "a")] {
            let u = w(u);
            let z = w(z);
            let cf = periodic_closed_form(&u, &z).unwrap();
            for n in 0..=5 {
                assert_eq!(closed_form_eval(&cf, n).unwrap(), qbinom(&u.power(n), &z));
            }
        }
    }

    #[test]
    fn closed_form_single_letter_pattern() {
        let cf = periodic_closed_form(&w("0110"), &w("1")).unwrap();
        assert_eq!(cf.terms().len(), 1);
        let (r, c) = &cf.terms()[0];
        assert_eq!(*c, 1);
        assert_eq!(r.numerator(), &p(&[0, 1, 1])); // qbinom(0110, 1) = q^2+q
        assert!(r.is_polynomial());
        assert_eq!(cf.prefactor_exponent(), 0);
    }

    #[test]
    fn closed_form_absent_letter() {
        let cf = periodic_closed_form(&w("aa"), &w("ab")).unwrap();
        assert!(cf.terms().is_empty());
        for n in 0..4 {
            assert!(closed_form_eval(&cf, n).unwrap().is_zero());
        }
        assert_eq!(periodic_closed_form(&w(""), &w("a")), Err(SeriesError::EmptyWord));
    }

    #[test]
    fn polynomial_recurrence_example() {
        let cf = periodic_closed_form(&w("0110"), &w("01")).unwrap();
        let rec = recurrence_polynomial(&cf);
        assert_eq!(rec.order(), 3);
        // p[n+3] = (1+q^4+q^8) p[n+2] - (q^4+q^8+q^12) p[n+1] + q^12 p[n]
        assert_eq!(rec.coeffs()[0], p(&[1, 0, 0, 0, 1, 0, 0, 0, 1]));
        assert_eq!(rec.coeffs()[1], -&p(&[0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1]));
        assert_eq!(rec.coeffs()[2], IntPoly::monomial(1, 12));
        let seq: Vec<IntPoly> = (0..rec.order() + 5)
            .map(|n| qbinom(&w("0110").power(n), &w("01")))
            .collect();
        assert!(rec.satisfied_by(&seq));
    }

    #[test]
    fn polynomial_recurrence_single_term() {
        // One term (R, c): p[n+2] = (1+q^{cL}) p[n+1] - q^{cL} p[n].
        let cf = periodic_closed_form(&w("0110"), &w("1")).unwrap();
        let rec = recurrence_polynomial(&cf);
        assert_eq!(rec.order(), 2);
        assert_eq!(rec.coeffs()[0], p(&[1, 0, 0, 0, 1]));
        assert_eq!(rec.coeffs()[1], -&IntPoly::monomial(1, 4));
        let seq: Vec<IntPoly> = (0..8).map(|n| qbinom(&w("0110").power(n), &w("1"))).collect();
        assert!(rec.satisfied_by(&seq));
    }

    #[test]
    fn integer_recurrence_example() {
        let (rec, terms) = recurrence_integer(&w("0110"), &w("01")).unwrap();
        assert_eq!(rec.coeffs(), &big(&[3, -3, 1]));
        assert_eq!(terms, big(&[0, 2, 8, 18, 32, 50, 72, 98, 128, 162, 200]));
        assert!(rec.satisfied_by(&terms));

        // Absent pattern: all-zero counting sequence.
        let (_, terms) = recurrence_integer(&w("aa"), &w("b")).unwrap();
        assert!(terms.iter().all(Zero::is_zero));

        // u = ab, z = ab: the counts are the triangular numbers, checked
        // against the occurrence enumeration.
        let (rec, terms) = recurrence_integer(&w("ab"), &w("ab")).unwrap();
        for (n, t) in terms.iter().enumerate() {
            assert_eq!(t, &BigInt::from((n * (n + 1) / 2) as u64));
            if n <= 6 {
                let occ = w("ab").power(n).occurrences(&w("ab")).len();
                assert_eq!(t, &BigInt::from(occ));
            }
        }
        assert!(rec.satisfied_by(&terms));
    }

    #[test]
    fn coefficient_recurrence_example() {
        let cf = periodic_closed_form(&w("0110"), &w("01")).unwrap();
        let rec = coefficient_recurrence(&cf).unwrap();
        assert_eq!(rec.order(), 10);
        assert_eq!(rec.coeffs(), &big(&[2, -3, 4, -4, 4, -4, 4, -3, 2, -1]));
        let stream = LeftInfiniteWord::periodic(w("0110")).unwrap();
        let series = series_coefficients(&stream, &w("01"), 60);
        assert!(rec.satisfied_by(series.coeffs()));
    }

    #[test]
    fn coefficient_recurrence_pure_geometric() {
        // Single geometric denominator: c[n] = c[n-e].
        let cf = periodic_closed_form(&w("ab"), &w("b")).unwrap();
        let rec = coefficient_recurrence(&cf).unwrap();
        assert_eq!(rec.coeffs(), &big(&[0, 1]));
        let stream = LeftInfiniteWord::periodic(w("ab")).unwrap();
        assert!(rec.satisfied_by(series_coefficients(&stream, &w("b"), 40).coeffs()));
    }

    #[test]
    fn limit_series_matches_coefficients() {
        for (u, z) in [("0110", "01"), ("aba", "ab"), ("ab", "ab"), ("abc", "ca")] {
            let u = w(u);
            let z = w(z);
            let cf = periodic_closed_form(&u, &z).unwrap();
            let by_rational = cf.limit_series(40).unwrap();
            let stream = LeftInfiniteWord::periodic(u.clone()).unwrap();
            let by_prefix = series_coefficients(&stream, &z, 40);
            assert_eq!(by_rational, by_prefix, "u={u} z={z}");
        }
    }

    #[test]
    fn limit_rational_of_the_example() {
        // Sum of the two terms collapses to q^4 / D with deg D = 10.
        let cf = periodic_closed_form(&w("0110"), &w("01")).unwrap();
        let limit = cf.limit_rational();
        let num = limit.numerator();
        let den = limit.denominator_poly();
        let g = num.gcd(&den);
        assert_eq!(num.div_exact(&g).unwrap(), IntPoly::monomial(1, 4));
        let d = den.div_exact(&g).unwrap();
        assert_eq!(d, p(&[1, -2, 3, -4, 4, -4, 4, -4, 3, -2, 1]));
    }

    #[test]
    fn vanishing_residues_example() {
        let got = vanishing_residues(&w("0110"), &w("01")).unwrap();
        assert_eq!(got, BTreeSet::from([2]));
        assert_eq!(
            vanishing_residues(&w("0110"), &w("21")),
            Err(SeriesError::LetterAbsent(Letter::from_char('2').unwrap()))
        );
    }

    #[test]
    fn vanishing_residues_small_cases() {
        // u = z = a: everything lives in residue 0 mod 1.
        assert!(vanishing_residues(&w("a"), &w("a")).unwrap().is_empty());
        // u = ab, z = a: letter a sits at odd suffix distance.
        assert_eq!(vanishing_residues(&w("ab"), &w("a")).unwrap(), BTreeSet::from([0]));
        // u = ab, z = ab.
        assert_eq!(vanishing_residues(&w("ab"), &w("ab")).unwrap(), BTreeSet::from([1]));
    }

    #[test]
    fn residues_match_series() {
        for (u, z) in [("0110", "01"), ("ab", "ab"), ("aab", "ab"), ("abc", "cb")] {
            let u = w(u);
            let z = w(z);
            let vanish = vanishing_residues(&u, &z).unwrap();
            let cutoff = residue_cutoff(&u, &z).unwrap();
            let order = cutoff + 20 * u.len();
            let stream = LeftInfiniteWord::periodic(u.clone()).unwrap();
            let series = series_coefficients(&stream, &z, order);
            for r in 0..u.len() {
                let tail_zero = (cutoff..=order)
                    .filter(|n| n % u.len() == r)
                    .all(|n| series.coeff(n).is_zero());
                assert_eq!(tail_zero, vanish.contains(&r), "u={u} z={z} r={r}");
            }
        }
    }

    #[test]
    fn growth_fit_example() {
        let u = w("0110");
        let z = w("01");
        for r in [0usize, 1, 3] {
            let slope = growth_fit(&u, &z, r, 400).unwrap();
            assert!((slope - 1.0).abs() <= 0.15, "residue {r}: slope {slope}");
        }
        assert_eq!(growth_fit(&u, &z, 2, 400), Err(SeriesError::AllZeroClass));
        assert!(matches!(
            growth_fit(&u, &z, 0, 50),
            Err(SeriesError::InsufficientSamples { .. })
        ));
        // Single-letter patterns have bounded coefficients.
        let slope = growth_fit(&u, &w("1"), 1, 400).unwrap();
        assert!(slope.abs() <= 0.15, "slope {slope}");
    }
}
