//! Reduction of q-Parikh matrices induced by an arbitrary word to the
//! canonical matrices over `1 2 .. |z|`.
//!
//! The position morphism of `z` sends each letter to the increasing word of
//! its 1-based occurrence positions within `z`. When every letter of `z`
//! occurs the same number of times and no two adjacent letters are equal,
//! two fixed Hadamard factors `Z` and `C` translate the matrix of any `u`
//! induced by `z` into the canonical matrix of the position image of `u`,
//! and likewise for the inverses.

use crate::parikh::{
    egecioglu_matrix, parikh_inverse_closed, parikh_matrix, triangular, ParikhError,
};
use crate::poly::{IntPoly, PolyMatrix};
use crate::qbinom::qbinom;
use crate::words::{Letter, Morphism, Word};
use num_traits::One;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionError {
    /// `z` must be nonempty.
    EmptyInducingWord,
    /// `z` has equal adjacent letters (first 1-based position).
    AdjacentRepeatedLetter(usize),
    /// A `Z` entry failed to be a monomial; impossible under the stated
    /// preconditions, so this flags an internal bug.
    NonMonomialEntry { row: usize, col: usize },
    /// A hypothesis of the reduction does not hold for the input.
    HypothesisViolated(String),
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::EmptyInducingWord => write!(f, "inducing word must be nonempty"),
            ReductionError::AdjacentRepeatedLetter(i) => {
                write!(f, "inducing word has equal adjacent letters at position {i}")
            }
            ReductionError::NonMonomialEntry { row, col } => {
                write!(f, "non-monomial Z entry at ({row}, {col})")
            }
            ReductionError::HypothesisViolated(detail) => {
                write!(f, "hypothesis violated: {detail}")
            }
        }
    }
}

impl std::error::Error for ReductionError {}

impl From<ParikhError> for ReductionError {
    fn from(e: ParikhError) -> Self {
        match e {
            ParikhError::EmptyInducingWord => ReductionError::EmptyInducingWord,
            ParikhError::AdjacentRepeatedLetter(i) => ReductionError::AdjacentRepeatedLetter(i),
            ParikhError::Poly(p) => ReductionError::HypothesisViolated(p.to_string()),
        }
    }
}

/// The position morphism of `z`: each letter maps to the increasing word of
/// its 1-based occurrence positions, as letters over `{1..|z|}`.
pub fn sigma(z: &Word) -> Result<Morphism, ReductionError> {
    if z.is_empty() {
        return Err(ReductionError::EmptyInducingWord);
    }
    let images = z.alphabet().into_iter().map(|a| {
        let image: Word = z
            .letters()
            .iter()
            .enumerate()
            .filter(|&(_, &b)| b == a)
            .map(|(i, _)| Letter::from_id(i as u32 + 1))
            .collect();
        (a, image)
    });
    Ok(Morphism::new(images).expect("occurrence images are nonempty"))
}

/// The fixed Hadamard factors of the reduction: `Z` with the monomials
/// `qbinom(sigma(z_i..z_j), i..j)` above the diagonal, `C` with the powers
/// `q^{s(j-i)}`.
pub fn zc_matrices(z: &Word) -> Result<(PolyMatrix, PolyMatrix), ReductionError> {
    if z.is_empty() {
        return Err(ReductionError::EmptyInducingWord);
    }
    if let Some(i) = z.adjacent_repeat() {
        return Err(ReductionError::AdjacentRepeatedLetter(i));
    }
    let ell = z.len();
    let morphism = sigma(z)?;
    let mut z_matrix = PolyMatrix::identity(ell + 1);
    let mut c_matrix = PolyMatrix::identity(ell + 1);
    for i in 0..ell {
        for j in i..ell {
            let image = morphism.apply(&z.factor(i, j + 1)).expect("letters of z");
            let pattern: Word = (i..=j).map(|t| Letter::from_id(t as u32 + 1)).collect();
            let entry = qbinom(&image, &pattern);
            let monomial = entry.coeffs().iter().filter(|c| !num_traits::Zero::is_zero(*c)).count() == 1
                && entry.coeffs().last().map(One::is_one).unwrap_or(false);
            if !monomial {
                return Err(ReductionError::NonMonomialEntry { row: i + 1, col: j + 2 });
            }
            z_matrix.set_entry(i, j + 1, entry);
            c_matrix.set_entry(i, j + 1, IntPoly::monomial(1, triangular(j as i64 - i as i64)));
        }
    }
    Ok((z_matrix, c_matrix))
}

/// Check the reduction hypotheses: every letter of `z` occurs exactly
/// `r = |z| / k` times (k distinct letters), no adjacent repeats, and `u`
/// stays within the alphabet of `z`. Returns `r`.
fn check_hypotheses(z: &Word, u: &Word) -> Result<usize, ReductionError> {
    if z.is_empty() {
        return Err(ReductionError::EmptyInducingWord);
    }
    if let Some(i) = z.adjacent_repeat() {
        return Err(ReductionError::AdjacentRepeatedLetter(i));
    }
    let alphabet = z.alphabet();
    let k = alphabet.len();
    if !z.len().is_multiple_of(k) {
        return Err(ReductionError::HypothesisViolated(format!(
            "|z| = {} is not a multiple of the alphabet size {k}",
            z.len()
        )));
    }
    let r = z.len() / k;
    for &a in &alphabet {
        let count = z.count(a);
        if count != r {
            return Err(ReductionError::HypothesisViolated(format!(
                "letter '{a}' occurs {count} times in z, expected {r}"
            )));
        }
    }
    if let Some(&outside) = u.letters().iter().find(|&&a| !alphabet.contains(&a)) {
        return Err(ReductionError::HypothesisViolated(format!(
            "letter '{outside}' of u does not occur in z"
        )));
    }
    Ok(r)
}

/// Verify both Hadamard identities of the canonical reduction:
///
/// ```text
/// C(q^{r-1}) ⊙ E_{|z|}(sigma(u))        = Z ⊙ P_z(u)(q^r)
/// C(q^{r-1}) ⊙ E_{|z|}(sigma(u))^{-1}   = Z ⊙ (P_z(u)(q^r))^{-1}
/// ```
pub fn check_canonical_reduction(z: &Word, u: &Word) -> Result<bool, ReductionError> {
    let r = check_hypotheses(z, u)?;
    let morphism = sigma(z)?;
    let image = morphism.apply(u).expect("u stays in the alphabet of z");
    let (z_matrix, c_matrix) = zc_matrices(z)?;
    let c_scaled = c_matrix.dilate(r - 1);

    let canonical = egecioglu_matrix(z.len() as u32, &image);
    let induced = parikh_matrix(z, u)?;
    let lhs = c_scaled.hadamard(&canonical).expect("equal dimensions");
    let rhs = z_matrix.hadamard(&induced.dilate(r)).expect("equal dimensions");
    if lhs != rhs {
        return Ok(false);
    }

    // Inverse side: both inverses via the closed form; substitution by q^r
    // commutes with inversion.
    let canonical_inv = parikh_inverse_closed(&Word::range_word(z.len() as u32), &image)?;
    let induced_inv = parikh_inverse_closed(z, u)?.dilate(r);
    let lhs = c_scaled.hadamard(&canonical_inv).expect("equal dimensions");
    let rhs = z_matrix.hadamard(&induced_inv).expect("equal dimensions");
    Ok(lhs == rhs)
}

/// Verify the entrywise factorizations behind the reduction for one pair
/// `1 <= i <= j <= |z|`:
///
/// ```text
/// (sigma(u) | i..j)          = (sigma(z_i..z_j) | i..j) · (u | z_i..z_j)(q^r)
/// (reverse(sigma(u)) | i..j) = (reverse(sigma(z_i..z_j)) | j..i) · (ũ | z_i..z_j)(q^r)
/// ```
pub fn extra_property_check(
    z: &Word,
    u: &Word,
    i: usize,
    j: usize,
) -> Result<bool, ReductionError> {
    let r = check_hypotheses(z, u)?;
    if i < 1 || i > j || j > z.len() {
        return Err(ReductionError::HypothesisViolated(format!(
            "indices ({i}, {j}) out of range for |z| = {}",
            z.len()
        )));
    }
    let morphism = sigma(z)?;
    let image = morphism.apply(u).expect("u stays in the alphabet of z");
    let block = z.factor(i - 1, j);
    let block_image = morphism.apply(&block).expect("letters of z");
    let ascending: Word = (i..=j).map(|t| Letter::from_id(t as u32)).collect();
    let descending = ascending.reversed();

    let lhs = qbinom(&image, &ascending);
    let rhs = &qbinom(&block_image, &ascending) * &qbinom(u, &block).dilate(r);
    if lhs != rhs {
        return Ok(false);
    }

    let lhs = qbinom(&image.reversed(), &ascending);
    let rhs = &qbinom(&block_image.reversed(), &descending)
        * &qbinom(&u.reversed(), &block).dilate(r);
    Ok(lhs == rhs)
}
