//! q-Parikh matrices induced by a word `z`.
//!
//! The matrix of a word `w` induced by `z` is the product of atomic
//! matrices, one per letter of `w`, where the letter at right-to-left index
//! `j` contributes `q^j` on the superdiagonal at every row `i` with
//! `z_i = w_j`. Its entries are, up to a triangular-number power of `q`,
//! q-binomials of `w` against the contiguous factors of `z`; that closed
//! form is kept as an independent construction so each route validates the
//! other.

use crate::poly::{IntPoly, PolyError, PolyMatrix};
use crate::qbinom::{qbinom, qbinom_prefixes};
use crate::words::{Letter, Word};
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParikhError {
    /// The inducing word `z` must be nonempty.
    EmptyInducingWord,
    /// Closed-form inversion requires `z` without adjacent equal letters;
    /// carries the first offending 1-based position.
    AdjacentRepeatedLetter(usize),
    /// Kernel-level failure (reflection window, dimensions).
    Poly(PolyError),
}

impl fmt::Display for ParikhError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParikhError::EmptyInducingWord => write!(f, "inducing word must be nonempty"),
            ParikhError::AdjacentRepeatedLetter(i) => {
                write!(f, "inducing word has equal adjacent letters at position {i}")
            }
            ParikhError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ParikhError {}

impl From<PolyError> for ParikhError {
    fn from(e: PolyError) -> Self {
        ParikhError::Poly(e)
    }
}

/// Triangular number `r (r + 1) / 2`; the exponent prefactor of the
/// matrix entries. `s(-1)` is taken as 0 via the `i64` argument.
pub fn triangular(r: i64) -> usize {
    if r <= 0 {
        0
    } else {
        (r * (r + 1) / 2) as usize
    }
}

fn require_nonempty(z: &Word) -> Result<(), ParikhError> {
    if z.is_empty() {
        Err(ParikhError::EmptyInducingWord)
    } else {
        Ok(())
    }
}

fn require_no_adjacent_repeat(z: &Word) -> Result<(), ParikhError> {
    match z.adjacent_repeat() {
        Some(i) => Err(ParikhError::AdjacentRepeatedLetter(i)),
        None => Ok(()),
    }
}

/// Atomic matrix of dimension `|z| + 1`: identity plus `q^j` at `(i, i+1)`
/// (1-based) for every `i` with `z_i = d`. Identity when `d` is absent
/// from `z`.
pub fn atomic_matrix(z: &Word, d: Letter, j: usize) -> PolyMatrix {
    let mut m = PolyMatrix::identity(z.len() + 1);
    for (i, &letter) in z.letters().iter().enumerate() {
        if letter == d {
            m.set_entry(i, i + 1, IntPoly::monomial(1, j));
        }
    }
    m
}

/// q-Parikh matrix of `w` induced by `z`: the product of the atomic
/// matrices of the letters of `w`, the leftmost letter carrying the highest
/// power.
pub fn parikh_matrix(z: &Word, w: &Word) -> Result<PolyMatrix, ParikhError> {
    require_nonempty(z)?;
    let n = w.len();
    let dim = z.len() + 1;
    let mut acc = PolyMatrix::identity(dim);
    for (k, &a) in w.letters().iter().enumerate() {
        let j = n - 1 - k;
        // Right-multiply by the atomic matrix of (a, j): column c gains
        // q^j * column (c-1) wherever z_{c-1} = a. Descending order keeps
        // the source columns untouched.
        for c in (1..dim).rev() {
            if z.letter(c - 1) == a {
                for r in 0..dim {
                    let add = acc.entry(r, c - 1).shift(j);
                    if !add.is_zero() {
                        let sum = acc.entry(r, c) + &add;
                        acc.set_entry(r, c, sum);
                    }
                }
            }
        }
    }
    Ok(acc)
}

/// Closed-form q-Parikh matrix: entry `(i, i+r)` (1-based) is
/// `q^{s(r-1)} * qbinom(w, z_i .. z_{i+r-1})`.
pub fn parikh_matrix_closed(z: &Word, w: &Word) -> Result<PolyMatrix, ParikhError> {
    require_nonempty(z)?;
    let ell = z.len();
    let mut m = PolyMatrix::identity(ell + 1);
    for i in 0..ell {
        // One DP run gives qbinom(w, z_i..z_{i+r-1}) for every r at once.
        let suffix = z.factor(i, ell);
        let prefixes = qbinom_prefixes(w, &suffix);
        for (r, prefix) in prefixes.iter().enumerate().skip(1) {
            m.set_entry(i, i + r, prefix.shift(triangular(r as i64 - 1)));
        }
    }
    Ok(m)
}

/// The canonical matrix over the word `1 2 .. k`. Letters of `w` outside
/// `{1..k}` act as the identity.
pub fn egecioglu_matrix(k: u32, w: &Word) -> PolyMatrix {
    parikh_matrix(&Word::range_word(k), w).expect("range word is nonempty")
}

/// Closed-form inverse: with `M` the matrix of the reversal of `u`,
/// entry `(i, j)` of the inverse is
/// `(-1)^{i+j} q^{(j-i)(|u|-1)} M_{i,j}(1/q)`.
///
/// Requires `z` without adjacent equal letters; otherwise rows of the
/// inverse pick up longer alternating blocks and this form breaks down.
pub fn parikh_inverse_closed(z: &Word, u: &Word) -> Result<PolyMatrix, ParikhError> {
    require_nonempty(z)?;
    require_no_adjacent_repeat(z)?;
    let m = parikh_matrix(z, &u.reversed())?;
    let dim = z.len() + 1;
    let mut inv = PolyMatrix::identity(dim);
    for i in 0..dim {
        for j in (i + 1)..dim {
            let entry = m.entry(i, j);
            if entry.is_zero() {
                continue;
            }
            let window = (j - i) * (u.len() - 1);
            let mut reflected = entry.reciprocal(window)?;
            if (i + j) % 2 == 1 {
                reflected = -&reflected;
            }
            inv.set_entry(i, j, reflected);
        }
    }
    Ok(inv)
}

/// Inverse via reversal duality: checkerboard signs on the antitranspose of
/// the matrix induced by the reversal of `z`.
pub fn parikh_inverse_reversal(z: &Word, u: &Word) -> Result<PolyMatrix, ParikhError> {
    require_nonempty(z)?;
    require_no_adjacent_repeat(z)?;
    let r = parikh_matrix(&z.reversed(), u)?;
    Ok(r.antitranspose().checkerboard())
}

/// Exact inverse for any inducing word: the closed form when `z` has no
/// adjacent repeats, back-substitution otherwise (the closed form breaks
/// down on repeated blocks, where rows of the inverse grow longer).
pub fn parikh_inverse(z: &Word, u: &Word) -> Result<PolyMatrix, ParikhError> {
    require_nonempty(z)?;
    if z.adjacent_repeat().is_none() {
        parikh_inverse_closed(z, u)
    } else {
        Ok(parikh_matrix(z, u)?
            .unitriangular_inverse()
            .expect("q-Parikh matrices are unitriangular"))
    }
}

/// Entrywise reversal duality:
/// `[P_z(ũ)]_{i,j} = q^{(j-i)(|u|-1)} [P_{z̃}(u)]_{l+2-j, l+2-i}(1/q)`.
///
/// Holds for every `z` (no adjacency restriction).
pub fn reverse_duality_check(z: &Word, u: &Word) -> Result<bool, ParikhError> {
    require_nonempty(z)?;
    let lhs = parikh_matrix(z, &u.reversed())?;
    let rhs = parikh_matrix(&z.reversed(), u)?;
    let dim = z.len() + 1;
    for i in 0..dim {
        for j in i..dim {
            let mirrored = rhs.entry(dim - 1 - j, dim - 1 - i);
            let expected = if mirrored.is_zero() {
                IntPoly::zero()
            } else {
                let window = (j - i) * (u.len().saturating_sub(1));
                match mirrored.reciprocal(window) {
                    Ok(p) => p,
                    Err(_) => return Ok(false),
                }
            };
            if lhs.entry(i, j) != &expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The telescoping sum over factorizations `z = xy`:
///
/// ```text
/// Σ (-1)^{|y|} q^{s(|x|-1) + s(|y|-1)} (u | x)(u | ỹ)
/// ```
///
/// It is identically zero when `z` has no adjacent equal letters; the
/// returned polynomial makes that checkable.
pub fn cancellation_identity(z: &Word, u: &Word) -> Result<IntPoly, ParikhError> {
    require_nonempty(z)?;
    require_no_adjacent_repeat(z)?;
    let n = z.len();
    let mut total = IntPoly::zero();
    for split in 0..=n {
        let x = z.factor(0, split);
        let y = z.factor(split, n);
        let exponent = triangular(x.len() as i64 - 1) + triangular(y.len() as i64 - 1);
        let mut term = &qbinom(u, &x) * &qbinom(u, &y.reversed());
        term = term.shift(exponent);
        if y.len() % 2 == 1 {
            term = -&term;
        }
        total += &term;
    }
    Ok(total)
}

/// The 2x2 minor polynomial
///
/// ```text
/// q^{s(|vw|-1)+s(|wx|-1)} (u|vw)(u|wx) - q^{s(|w|-1)+s(|vwx|-1)} (u|w)(u|vwx)
/// ```
///
/// which has non-negative coefficients, like every minor of a q-Parikh
/// matrix.
pub fn cauchy_minor(u: &Word, v: &Word, w: &Word, x: &Word) -> IntPoly {
    let vw = v.concat(w);
    let wx = w.concat(x);
    let vwx = v.concat(&wx);
    let pos = (&qbinom(u, &vw) * &qbinom(u, &wx))
        .shift(triangular(vw.len() as i64 - 1) + triangular(wx.len() as i64 - 1));
    let neg = (&qbinom(u, w) * &qbinom(u, &vwx))
        .shift(triangular(w.len() as i64 - 1) + triangular(vwx.len() as i64 - 1));
    &pos - &neg
}

/// The dual Cauchy polynomial `(xy|w)(yz|w) - (xyz|w)(y|w)`, again with
/// non-negative coefficients.
pub fn cauchy_dual(x: &Word, y: &Word, z: &Word, w: &Word) -> IntPoly {
    let xy = x.concat(y);
    let yz = y.concat(z);
    let xyz = xy.concat(z);
    &(&qbinom(&xy, w) * &qbinom(&yz, w)) - &(&qbinom(&xyz, w) * &qbinom(y, w))
}

/// Recover `w` from the second diagonal of its q-Parikh matrix: the entry
/// for letter `d` lists `q^j` exactly at the right-to-left positions `j`
/// where `w` carries `d`. Returns `None` if the entries are not a consistent
/// encoding (they always are for genuine matrices).
pub fn decode_from_second_diagonal(z: &Word, matrix: &PolyMatrix) -> Option<Word> {
    if matrix.dim() != z.len() + 1 {
        return None;
    }
    let mut length = 0usize;
    let mut seen: Vec<Letter> = Vec::new();
    let mut positions: Vec<(usize, Letter)> = Vec::new();
    for (i, &d) in z.letters().iter().enumerate() {
        if seen.contains(&d) {
            continue;
        }
        seen.push(d);
        let entry = matrix.entry(i, i + 1);
        for (j, c) in entry.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !c.is_one() {
                return None;
            }
            positions.push((j, d));
            length += 1;
        }
    }
    let mut letters = vec![None; length];
    for (j, d) in positions {
        if j >= length || letters[length - 1 - j].is_some() {
            return None;
        }
        letters[length - 1 - j] = Some(d);
    }
    letters.into_iter().collect::<Option<Vec<_>>>().map(Word::new)
}
