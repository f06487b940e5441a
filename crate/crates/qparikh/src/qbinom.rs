//! The q-binomial coefficient of two words.
//!
//! `qbinom(u, v)` is the polynomial defined by the q-deformed Pascal
//! identity on words:
//!
//! ```text
//! (u | ε) = 1,   (ε | v) = 0 for v ≠ ε,
//! (ua | vb) = q^{|vb|} (u | vb) + [a = b] (u | v).
//! ```
//!
//! Its value at `q = 1` is the number of occurrences of `v` as a scattered
//! subword of `u`. Each occurrence contributes `q^α` where `α` counts, over
//! the selected letters, the non-selected letters to their right; the
//! occurrence-sum form is the independent oracle [`qbinom_oracle`].

use crate::poly::IntPoly;
use crate::words::{Morphism, Word};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// Default cap on the number of occurrences the oracle will enumerate.
pub const DEFAULT_ORACLE_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QBinomError {
    /// The occurrence count exceeds the enumeration guard.
    TooManyOccurrences { count: BigInt, limit: usize },
    /// Morphisms feeding the composition formula must be non-erasing.
    ErasingMorphism,
    /// A letter of the outer word has no image under the morphism.
    MissingImage,
}

impl fmt::Display for QBinomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QBinomError::TooManyOccurrences { count, limit } => {
                write!(f, "occurrence count {count} exceeds enumeration limit {limit}")
            }
            QBinomError::ErasingMorphism => write!(f, "morphism must be non-erasing"),
            QBinomError::MissingImage => write!(f, "morphism image missing for a letter"),
        }
    }
}

impl std::error::Error for QBinomError {}

/// The q-binomial coefficient of `u` over `v`.
///
/// Streams over `u` keeping one polynomial per prefix of `v`; memory is
/// `O(|v|)` polynomials.
pub fn qbinom(u: &Word, v: &Word) -> IntPoly {
    qbinom_prefixes(u, v).pop().unwrap()
}

/// q-binomials of `u` over every prefix of `v`, from `ε` to `v` itself.
///
/// Index `j` of the result is the coefficient for the length-`j` prefix.
/// One run of the recursion yields them all.
pub fn qbinom_prefixes(u: &Word, v: &Word) -> Vec<IntPoly> {
    let mut dp = vec![IntPoly::zero(); v.len() + 1];
    dp[0] = IntPoly::one();
    for &a in u.letters() {
        for j in (1..=v.len()).rev() {
            let mut next = dp[j].shift(j);
            if v.letter(j - 1) == a {
                next += &dp[j - 1];
            }
            dp[j] = next;
        }
    }
    dp
}

/// The classical binomial coefficient of words: the occurrence count.
pub fn binom(u: &Word, v: &Word) -> BigInt {
    let mut dp = vec![BigInt::zero(); v.len() + 1];
    dp[0] = BigInt::one();
    for &a in u.letters() {
        for j in (1..=v.len()).rev() {
            if v.letter(j - 1) == a {
                let prev = dp[j - 1].clone();
                dp[j] += prev;
            }
        }
    }
    dp.pop().unwrap()
}

/// Occurrence-sum oracle with the default enumeration guard.
pub fn qbinom_oracle(u: &Word, v: &Word) -> Result<IntPoly, QBinomError> {
    qbinom_oracle_with_limit(u, v, DEFAULT_ORACLE_LIMIT)
}

/// Sum `q^α` over all occurrences of `v` in `u`.
///
/// For an occurrence at 0-based left-to-right positions `i_1 < .. < i_k`,
/// `α = Σ_m ((|u| - 1 - i_m) - (k - m))`: the letters to the right of each
/// selected position that are not themselves selected.
pub fn qbinom_oracle_with_limit(
    u: &Word,
    v: &Word,
    limit: usize,
) -> Result<IntPoly, QBinomError> {
    let count = binom(u, v);
    if count > BigInt::from(limit) {
        return Err(QBinomError::TooManyOccurrences { count, limit });
    }
    let occurrences = u.occurrences(v);
    let k = v.len();
    let mut poly = IntPoly::zero();
    for occ in occurrences {
        let alpha: usize = occ
            .iter()
            .enumerate()
            .map(|(m0, &i)| (u.len() - 1 - i) - (k - 1 - m0))
            .sum();
        poly += &IntPoly::monomial(1, alpha);
    }
    Ok(poly)
}

/// `q^{|v|(|u|-|v|)} * qbinom(u, v)(1/q)`, which equals
/// `qbinom(reverse(u), reverse(v))`.
pub fn qbinom_reversed(u: &Word, v: &Word) -> IntPoly {
    if v.len() > u.len() {
        return IntPoly::zero();
    }
    let window = v.len() * (u.len() - v.len());
    // deg qbinom(u, v) <= |v| (|u| - |v|), so the reflection always fits.
    qbinom(u, v).reciprocal(window).expect("degree bound")
}

/// q-binomial of a morphic image: `qbinom(phi(w), u)` computed without
/// materializing `phi(w)`, by the block-decomposition formula
///
/// ```text
/// Σ_{u = u_1..u_l} Σ_{w = w_0 a_1 w_1 .. a_l w_l}
///     Π_i (phi(a_i) | u_i) · q^{Σ_i |u_i| (|phi(w_i a_{i+1} .. a_l w_l)| - |u_{i+1}..u_l|)}
/// ```
///
/// over factorizations of `u` into nonempty blocks matched to selected
/// positions of `w`.
pub fn morphic_qbinom(phi: &Morphism, w: &Word, u: &Word) -> Result<IntPoly, QBinomError> {
    for a in phi.domain() {
        if phi.image(a).map(Word::is_empty).unwrap_or(true) {
            return Err(QBinomError::ErasingMorphism);
        }
    }
    if u.is_empty() {
        return Ok(IntPoly::one());
    }

    // Image length of every suffix of w; uniform morphisms get the direct
    // r * |suffix| form.
    let suffix_image_len: Vec<usize> = match phi.uniform_degree() {
        Some(r) => (0..=w.len()).map(|i| r * (w.len() - i)).collect(),
        None => {
            let mut lens = vec![0usize; w.len() + 1];
            for i in (0..w.len()).rev() {
                let img = phi.image(w.letter(i)).ok_or(QBinomError::MissingImage)?;
                lens[i] = lens[i + 1] + img.len();
            }
            lens
        }
    };
    // Resolve images up front so the recursion cannot fail.
    let images: Vec<&Word> = w
        .letters()
        .iter()
        .map(|&a| phi.image(a).ok_or(QBinomError::MissingImage))
        .collect::<Result<_, _>>()?;

    // Cache q-binomials (phi(a) | factor of u) per occurring letter.
    let mut total = IntPoly::zero();
    let mut state = SumState {
        w,
        u,
        images: &images,
        suffix_image_len: &suffix_image_len,
        total: &mut total,
    };
    state.descend(0, 0, &IntPoly::one());
    Ok(total)
}

struct SumState<'a> {
    w: &'a Word,
    u: &'a Word,
    images: &'a [&'a Word],
    suffix_image_len: &'a [usize],
    total: &'a mut IntPoly,
}

impl SumState<'_> {
    /// Extend a partial factorization: `u[..u_used]` has been matched inside
    /// images of selected positions `< w_next` of `w`, with the accumulated
    /// product already carrying the exponent corrections.
    fn descend(&mut self, w_next: usize, u_used: usize, acc: &IntPoly) {
        if u_used == self.u.len() {
            *self.total += acc;
            return;
        }
        if w_next == self.w.len() {
            return;
        }
        for m in w_next..self.w.len() {
            let image = self.images[m];
            let remaining = self.u.len() - u_used;
            for block in 1..=remaining.min(image.len()) {
                let rest = remaining - block;
                // The rest of u must fit inside the image of the rest of w.
                if rest > self.suffix_image_len[m + 1] {
                    continue;
                }
                let piece = self.u.factor(u_used, u_used + block);
                let inner = qbinom(image, &piece);
                if inner.is_zero() {
                    continue;
                }
                // |u_i| * (|phi(suffix after a_i)| - |u after this block|)
                let exponent = block * (self.suffix_image_len[m + 1] - rest);
                let term = &(acc * &inner) * &IntPoly::monomial(1, exponent);
                self.descend(m + 1, u_used + block, &term);
            }
        }
    }
}
