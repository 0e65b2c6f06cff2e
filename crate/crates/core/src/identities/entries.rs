//! Entries of the little q-Jacobi moment matrices and the closed-form
//! Pfaffian decomposition factors `t_i`, `o^i_j`, `e^i_j`.
//!
//! `A` is indexed from 1, `Ã` and `Ǎ` from 0; all three agree with
//! [`entry_a`] when both indices are positive.

use crate::error::{Error, Result};
use crate::qkit::qpoch_shifted;
use crate::scalar::Scalar;
use crate::skewpf::SkewMatrix;

/// Evaluation point `(a, b, q)` together with the integer shift `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point<S> {
    pub a: S,
    pub b: S,
    pub q: S,
    pub r: i64,
}

impl<S: Scalar> Point<S> {
    pub fn new(a: S, b: S, q: S, r: i64) -> Self {
        Point { a, b, q, r }
    }

    pub fn ab(&self) -> S {
        self.a.clone() * self.b.clone()
    }

    /// `q^e`.
    pub fn qe(&self, e: i64) -> Result<S> {
        self.q.powi(e)
    }

    /// `(c q^e; q)_n`.
    pub fn qp(&self, c: &S, e: i64, n: i64) -> Result<S> {
        qpoch_shifted(c, e, &self.q, n)
    }

    /// `(q^e; q)_n`.
    pub fn qq(&self, e: i64, n: i64) -> Result<S> {
        self.qp(&S::one(), e, n)
    }

    /// `(a q^e; q)_n`.
    pub fn qa(&self, e: i64, n: i64) -> Result<S> {
        self.qp(&self.a, e, n)
    }

    /// `(b q^e; q)_n`.
    pub fn qb(&self, e: i64, n: i64) -> Result<S> {
        self.qp(&self.b, e, n)
    }

    /// `(ab q^e; q)_n`.
    pub fn qab(&self, e: i64, n: i64) -> Result<S> {
        self.qp(&self.ab(), e, n)
    }

    pub fn with_r(&self, r: i64) -> Self {
        Point { r, ..self.clone() }
    }
}

/// `(q^(i-1) - q^(j-1)) (aq;q)_{i+j+r-2} / (abq^2;q)_{i+j+r-2}` for `i, j >= 1`.
pub fn entry_a<S: Scalar>(p: &Point<S>, i: i64, j: i64) -> Result<S> {
    if i < 1 || j < 1 {
        return Err(Error::Domain(format!("entry_a({i}, {j}) needs indices >= 1")));
    }
    if i == j {
        return Ok(S::zero());
    }
    let n = i + j + p.r - 2;
    let w = p.qe(i - 1)? - p.qe(j - 1)?;
    (w * p.qa(1, n)?).try_div(&p.qab(2, n)?)
}

/// Border entry of `Ã`:
/// `(abq^(r-1);q)_1 (aq;q)_{j+r-1} / (a q^r (1-b) (abq^2;q)_{j+r-2})`.
pub fn entry_a0<S: Scalar>(p: &Point<S>, j: i64) -> Result<S> {
    if j < 1 {
        return Err(Error::Domain(format!("entry_a0({j}) needs j >= 1")));
    }
    let r = p.r;
    let num = p.qab(r - 1, 1)? * p.qa(1, j + r - 1)?;
    let den = p.a.clone() * p.qe(r)? * p.b.one_minus() * p.qab(2, j + r - 2)?;
    num.try_div(&den)
}

/// Border entry of `Ǎ`: `(aq;q)_{j+r-1} / (abq^2;q)_{j+r-1}`.
pub fn entry_check0<S: Scalar>(p: &Point<S>, j: i64) -> Result<S> {
    if j < 1 {
        return Err(Error::Domain(format!("entry_check0({j}) needs j >= 1")));
    }
    let n = j + p.r - 1;
    p.qa(1, n)?.try_div(&p.qab(2, n)?)
}

/// Which bordered matrix a 0-indexed entry belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Border {
    /// `A`, indices from 1.
    None,
    /// `Ã`, row/column 0 from [`entry_a0`].
    Tilde,
    /// `Ǎ`, row/column 0 from [`entry_check0`].
    Check,
}

/// Antisymmetric entry `(i, j)` of `A`, `Ã` or `Ǎ`.
pub fn entry<S: Scalar>(p: &Point<S>, border: Border, i: i64, j: i64) -> Result<S> {
    match (border, i, j) {
        (_, i, j) if i == j => Ok(S::zero()),
        (Border::None, i, j) => entry_a(p, i, j),
        (Border::Tilde, 0, j) => entry_a0(p, j),
        (Border::Tilde, i, 0) => Ok(-entry_a0(p, i)?),
        (Border::Check, 0, j) => entry_check0(p, j),
        (Border::Check, i, 0) => Ok(-entry_check0(p, i)?),
        (_, i, j) => entry_a(p, i, j),
    }
}

/// Principal submatrix on the given labels (1-based for [`Border::None`],
/// 0-based otherwise).
pub fn bordered_matrix<S: Scalar>(
    p: &Point<S>,
    border: Border,
    labels: &[i64],
) -> Result<SkewMatrix<S>> {
    if labels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::IndexSet(format!("{labels:?} is not strictly increasing")));
    }
    SkewMatrix::try_from_upper(labels.len(), |x, y| entry(p, border, labels[x], labels[y]))
}

/// `f(i,j,r) = (1-q^(i-1))(1-aq^(i+r-1))(1-abq^(i+j+r-2))/(1-q)
///  + a q^(2i+r-3) (1-b)(1-q^(j-i+1))`.
pub fn f_poly<S: Scalar>(p: &Point<S>, i: i64, j: i64) -> Result<S> {
    let r = p.r;
    let first = p.qq(i - 1, 1)? * p.qa(i + r - 1, 1)? * p.qab(i + j + r - 2, 1)?;
    let first = first.try_div(&p.qq(1, 1)?)?;
    let second = p.a.clone() * p.qe(2 * i + r - 3)? * p.b.one_minus() * p.qq(j - i + 1, 1)?;
    Ok(first + second)
}

/// [`f_poly`] with `(1-q^(i-1))/(1-q)` expanded as a finite geometric sum,
/// so it is also defined at `q = 1`.
pub fn f_poly_expanded<S: Scalar>(p: &Point<S>, i: i64, j: i64) -> Result<S> {
    let r = p.r;
    let geo = if i >= 1 {
        (0..i - 1).try_fold(S::zero(), |acc, s| Ok::<S, Error>(acc + p.qe(s)?))?
    } else {
        let tail = (0..=-i).try_fold(S::zero(), |acc, s| Ok::<S, Error>(acc + p.qe(s)?))?;
        -(p.qe(i - 1)? * tail)
    };
    let first = geo
        * (S::one() - p.a.clone() * p.qe(i + r - 1)?)
        * (S::one() - p.ab() * p.qe(i + j + r - 2)?);
    let second = p.a.clone()
        * p.qe(2 * i + r - 3)?
        * (S::one() - p.b.clone())
        * (S::one() - p.qe(j - i + 1)?);
    Ok(first + second)
}

/// `t_i = a^(i-1) q^((i-1)(i+r)) (q;q)_i (aq;q)_{i+r} (bq;q)_{i-1}
///  / ((abq^2;q)_{2i+r-1} (abq^(i+r);q)_{i-1})`, any `i >= 0`.
pub fn t_formula<S: Scalar>(p: &Point<S>, i: i64) -> Result<S> {
    if i < 0 {
        return Err(Error::Domain(format!("t_{i}")));
    }
    let r = p.r;
    let num = p.a.powi(i - 1)?
        * p.qe((i - 1) * (i + r))?
        * p.qq(1, i)?
        * p.qa(1, i + r)?
        * p.qb(1, i - 1)?;
    let den = p.qab(2, 2 * i + r - 1)? * p.qab(i + r, i - 1)?;
    num.try_div(&den)
}

/// `o^i_j = (q^(j-i);q)_i / (q;q)_i * (aq^(i+r+1);q)_{j-i-1} / (abq^(2i+r+1);q)_{j-i-1}`.
///
/// Returns zero without touching the other factors when `(q^(j-i);q)_i`
/// vanishes, so that structurally zero entries never raise a pole.
pub fn o_formula<S: Scalar>(p: &Point<S>, i: i64, j: i64) -> Result<S> {
    if i < 0 {
        return Err(Error::Domain(format!("o^{i}_{j}")));
    }
    let lead = p.qq(j - i, i)?;
    if lead.is_zero() {
        return Ok(S::zero());
    }
    let r = p.r;
    let num = lead * p.qa(i + r + 1, j - i - 1)?;
    let den = p.qq(1, i)? * p.qab(2 * i + r + 1, j - i - 1)?;
    num.try_div(&den)
}

/// `e^i_j = q (q^(j-i);q)_1 (q^(j-i+2);q)_{i-2} / (q;q)_{i-1}
///  * (aq^(i+r);q)_{j-i} f(i,j,r) / ((abq^(2i+r-3);q)_1 (abq^(2i+r-1);q)_{j-i+1})`.
pub fn e_formula<S: Scalar>(p: &Point<S>, i: i64, j: i64) -> Result<S> {
    if i < 1 {
        return Err(Error::Domain(format!("e^{i}_{j}")));
    }
    let first = p.qq(j - i, 1)?;
    if first.is_zero() {
        return Ok(S::zero());
    }
    let second = p.qq(j - i + 2, i - 2)?;
    if second.is_zero() {
        return Ok(S::zero());
    }
    let r = p.r;
    let num = p.q.clone() * first * second * p.qa(i + r, j - i)? * f_poly(p, i, j)?;
    let den = p.qq(1, i - 1)? * p.qab(2 * i + r - 3, 1)? * p.qab(2 * i + r - 1, j - i + 1)?;
    num.try_div(&den)
}

/// Row parity convention for the closed-form `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityRule {
    /// `A`: odd rows use `o`, even rows use `e`.
    A,
    /// `Ã`: even rows use `o`, odd rows use `e`.
    ATilde,
}

pub fn v_formula<S: Scalar>(p: &Point<S>, rule: ParityRule, i: i64, j: i64) -> Result<S> {
    let odd = i.rem_euclid(2) == 1;
    match (rule, odd) {
        (ParityRule::A, true) | (ParityRule::ATilde, false) => o_formula(p, i, j),
        _ => e_formula(p, i, j),
    }
}
