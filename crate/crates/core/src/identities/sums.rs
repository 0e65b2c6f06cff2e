//! Terminating summation identities used to evaluate the decomposition:
//! the odd/even split sums, the Dougall-type lemma and a four-parameter
//! extension with free `c`, `d`.


use super::entries::Point;
use crate::error::{Error, Result};
use crate::qkit::phi_terminating;
use crate::scalar::{sign, Scalar};

/// Which terms of the split sum to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SumKind {
    Odd,
    Even,
    Add,
    Subtract,
}

/// The two transcriptions of the polynomial factor `g_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GForm {
    Direct,
    Rewritten,
}

/// `g_k(i, j)` in its defining form.
pub fn g_direct<S: Scalar>(p: &Point<S>, k: i64, i: i64, j: i64) -> Result<S> {
    let (a, b, ab) = (&p.a, &p.b, p.ab());
    let one = S::one();
    let inner = p.qe(-k)?
        * (one.clone() + ab.clone() * p.qe(2 * k)?)
        * (one.clone() + ab.clone() * p.qe(i + j - 1)?)
        - ab.clone() * (one.clone() + p.q.clone()) * (p.qe(i - 1)? + p.qe(j - 1)?);
    let first = p.qq(k, 1)? * p.qa(k, 1)? * inner;
    let second = a.clone()
        * p.qe(k - 1)?
        * b.one_minus()
        * p.qq(i - k, 1)?
        * p.qq(j - k, 1)?
        * p.qab(2 * k + 1, 1)?;
    Ok(first + second)
}

/// `g_k(i, j)` regrouped by powers of `(1-q^k)(1-abq^k)`.
pub fn g_rewritten<S: Scalar>(p: &Point<S>, k: i64, i: i64, j: i64) -> Result<S> {
    let (a, b, q, ab) = (&p.a, &p.b, &p.q, p.ab());
    let one = S::one();
    let qij = p.qe(i + j)?;
    let t1 = p.qe(-1 - k)?
        * (q.clone() + a.clone() * qij.clone())
        * p.qq(k, 1)?
        * p.qq(k - 1, 1)?
        * p.qab(k, 1)?
        * p.qab(k + 1, 1)?;
    let brace = a.clone() * (b.clone() * q.clone() - ab.clone() - one.clone() + b.clone()) * qij.one_minus()
        + a.one_minus() * (q.clone() - ab.clone())
        + a.clone() * (one.clone() + b.clone() * q.clone()) * p.qq(i, 1)? * p.qq(j, 1)?
        + (one.clone() + a.clone() * p.qe(i + j - 1)?) * q.one_minus() * p.qab(1, 1)?;
    let t2 = p.qe(-1)? * brace * p.qq(k, 1)? * p.qab(k, 1)?;
    let t3 = a.clone() * p.qe(k - 1)? * b.one_minus() * p.qab(1, 1)? * p.qq(i, 1)? * p.qq(j, 1)?;
    Ok(t1 + t2 + t3)
}

fn g<S: Scalar>(p: &Point<S>, form: GForm, k: i64, i: i64, j: i64) -> Result<S> {
    match form {
        GForm::Direct => g_direct(p, k, i, j),
        GForm::Rewritten => g_rewritten(p, k, i, j),
    }
}

/// `k`-th summand
/// `a^(k-1) q^(k(k-1)+1) (abq^2k;q)_1 (abq^2;q)_{k-2} (bq, q^(i-k+1), q^(j-k+1);q)_{k-1}
///  / (q, aq, abq^(i+1), abq^(j+1);q)_k * g_k`.
pub fn split_term<S: Scalar>(p: &Point<S>, form: GForm, k: i64, i: i64, j: i64) -> Result<S> {
    let vanish = p.qq(i - k + 1, k - 1)? * p.qq(j - k + 1, k - 1)?;
    if k >= 1 && vanish.is_zero() {
        return Ok(S::zero());
    }
    let num = p.a.powi(k - 1)?
        * p.qe(k * (k - 1) + 1)?
        * p.qab(2 * k, 1)?
        * p.qab(2, k - 2)?
        * p.qb(1, k - 1)?
        * p.qq(i - k + 1, k - 1)?
        * p.qq(j - k + 1, k - 1)?
        * g(p, form, k, i, j)?;
    let den = p.qq(1, k)? * p.qa(1, k)? * p.qab(i + 1, k)? * p.qab(j + 1, k)?;
    num.try_div(&den)
}

pub fn split_sum<S: Scalar>(p: &Point<S>, kind: SumKind, form: GForm, i: i64, j: i64) -> Result<S> {
    if i < 1 || j < 1 {
        return Err(Error::Domain(format!("split sum needs i, j >= 1, got ({i}, {j})")));
    }
    let mut acc = S::zero();
    for k in 0..=i.min(j) {
        let keep = match kind {
            SumKind::Odd => k % 2 == 1,
            SumKind::Even => k % 2 == 0,
            SumKind::Add | SumKind::Subtract => true,
        };
        if !keep {
            continue;
        }
        let mut t = split_term(p, form, k, i, j)?;
        if kind == SumKind::Subtract {
            t = sign::<S>(k) * t;
        }
        acc = acc + t;
    }
    Ok(acc)
}

/// Common value of the odd and even sums:
/// `(aq)_{i+j-2} (abq^2)_{i-1} (abq^2)_{j-1} / ((aq)_{i-1} (aq)_{j-1} (abq^2)_{i+j-2})`.
pub fn split_value<S: Scalar>(p: &Point<S>, i: i64, j: i64) -> Result<S> {
    let num = p.qa(1, i + j - 2)? * p.qab(2, i - 1)? * p.qab(2, j - 1)?;
    let den = p.qa(1, i - 1)? * p.qa(1, j - 1)? * p.qab(2, i + j - 2)?;
    num.try_div(&den)
}

pub fn split_rhs<S: Scalar>(p: &Point<S>, kind: SumKind, i: i64, j: i64) -> Result<S> {
    let v = split_value(p, i, j)?;
    Ok(match kind {
        SumKind::Odd | SumKind::Even => v,
        SumKind::Add => v.clone() + v,
        SumKind::Subtract => S::zero(),
    })
}

// ---- Dougall-type lemma ---------------------------------------------------

/// `k`-th summand of the lemma sum (`k >= m`).
pub fn dougall_term<S: Scalar>(p: &Point<S>, k: i64, m: i64, i: i64, j: i64) -> Result<S> {
    let vanish = p.qq(i - k + 1, k - 1)? * p.qq(j - k + 1, k - 1)?;
    if k >= 1 && vanish.is_zero() {
        return Ok(S::zero());
    }
    let num = p.a.powi(k - m)?
        * p.qe(k * (k - m))?
        * p.qab(2 * k, 1)?
        * p.qab(2, k + m - 2)?
        * p.qb(1, k - 1)?
        * p.qq(i - k + 1, k - 1)?
        * p.qq(j - k + 1, k - 1)?;
    let den = p.qq(1, k - m)? * p.qa(1, k)? * p.qab(i + 1, k)? * p.qab(j + 1, k)?;
    num.try_div(&den)
}

fn dougall_domain(m: i64, i: i64, j: i64) -> Result<()> {
    if m < 0 || i < m.max(1) || j < m.max(1) {
        return Err(Error::Domain(format!(
            "lemma needs 0 <= m <= i, j and i, j >= 1; got m={m}, i={i}, j={j}"
        )));
    }
    Ok(())
}

pub fn dougall_lhs<S: Scalar>(p: &Point<S>, m: i64, i: i64, j: i64) -> Result<S> {
    dougall_domain(m, i, j)?;
    (m..=i).try_fold(S::zero(), |acc, k| Ok(acc + dougall_term(p, k, m, i, j)?))
}

/// `(q^(i-m+1), q^(j-m+1), bq;q)_{m-1} (aq^(j+1);q)_{i-m} (abq^2;q)_{i-1}
///  / ((aq;q)_i (abq^(j+1);q)_i)`.
pub fn dougall_rhs<S: Scalar>(p: &Point<S>, m: i64, i: i64, j: i64) -> Result<S> {
    dougall_domain(m, i, j)?;
    let num = p.qq(i - m + 1, m - 1)?
        * p.qq(j - m + 1, m - 1)?
        * p.qb(1, m - 1)?
        * p.qa(j + 1, i - m)?
        * p.qab(2, i - 1)?;
    let den = p.qa(1, i)? * p.qab(j + 1, i)?;
    num.try_div(&den)
}

/// The lemma sum rewritten as its leading term times a very-well-poised
/// terminating `6phi5`, with `a <- abq^2m`, `b <- bq^m`, `c <- q^(m-j)` and
/// `n <- i-m`. `root` must satisfy `root^2 = ab`, so that the square root of
/// the first numerator parameter is `root * q^m`.
///
/// Returns `(term_m * 6phi5, term_m * closed 6phi5 sum)`.
pub fn dougall_via_phi<S: Scalar>(p: &Point<S>, root: &S, m: i64, i: i64, j: i64) -> Result<(S, S)> {
    dougall_domain(m, i, j)?;
    if root.clone() * root.clone() != p.ab() {
        return Err(Error::Domain("root^2 must equal ab".into()));
    }
    let q = &p.q;
    let big_a = p.ab() * p.qe(2 * m)?;
    let sa = root.clone() * p.qe(m)?;
    let big_b = p.b.clone() * p.qe(m)?;
    let big_c = p.qe(m - j)?;
    let nn = i - m;
    let num = vec![
        big_a.clone(),
        q.clone() * sa.clone(),
        -(q.clone() * sa.clone()),
        big_b.clone(),
        big_c.clone(),
        p.qe(-nn)?,
    ];
    let aq_b = p.a.clone() * p.qe(m + 1)?;
    let aq_c = p.ab() * p.qe(m + j + 1)?;
    let den = vec![sa.clone(), -sa, aq_b.clone(), aq_c.clone(), p.ab() * p.qe(m + i + 1)?];
    let z = p.a.clone() * p.qe(i + j + 1 - m)?;
    let lead = dougall_term(p, m, m, i, j)?;
    let phi = phi_terminating(&num, &den, q, &z, nn as usize)?;
    let aq = big_a * q.clone();
    let aq_bc = aq.clone() * big_b.try_inv()? * big_c.try_inv()?;
    let closed_num = crate::qkit::qpoch(&aq, q, nn)? * crate::qkit::qpoch(&aq_bc, q, nn)?;
    let closed_den = crate::qkit::qpoch(&aq_b, q, nn)? * crate::qkit::qpoch(&aq_c, q, nn)?;
    let closed = closed_num.try_div(&closed_den)?;
    Ok((lead.clone() * phi, lead * closed))
}

// ---- four-parameter extension ---------------------------------------------

/// Point with the two extra free parameters `c`, `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point4<S> {
    pub base: Point<S>,
    pub c: S,
    pub d: S,
}

/// `ĝ_k = (1-q^k)(1-aq^k){q^-k (1+abq^2k)(1+abcd/q) - (ab/q)(1+q)(c+d)}
///  + a q^(k-1) (1-b)(1-c q^-k)(1-d q^-k)(1-abq^(2k+1))`.
pub fn g_hat<S: Scalar>(p4: &Point4<S>, k: i64) -> Result<S> {
    let p = &p4.base;
    let (c, d, ab) = (&p4.c, &p4.d, p.ab());
    let one = S::one();
    let qinv = p.qe(-1)?;
    let inner = p.qe(-k)?
        * (one.clone() + ab.clone() * p.qe(2 * k)?)
        * (one.clone() + ab.clone() * c.clone() * d.clone() * qinv.clone())
        - ab * qinv * (one + p.q.clone()) * (c.clone() + d.clone());
    let first = p.qq(k, 1)? * p.qa(k, 1)? * inner;
    let second = p.a.clone()
        * p.qe(k - 1)?
        * p.b.one_minus()
        * p.qp(c, -k, 1)?
        * p.qp(d, -k, 1)?
        * p.qab(2 * k + 1, 1)?;
    Ok(first + second)
}

pub fn qv4_term<S: Scalar>(p4: &Point4<S>, k: i64) -> Result<S> {
    let p = &p4.base;
    let (c, d) = (&p4.c, &p4.d);
    let abc = p.ab() * c.clone();
    let abd = p.ab() * d.clone();
    let num = sign::<S>(k)
        * p.a.powi(k - 1)?
        * p.qe(k * (k - 1) + 1)?
        * p.qab(2 * k, 1)?
        * p.qab(2, k - 2)?
        * p.qb(1, k - 1)?
        * p.qp(c, 1 - k, k - 1)?
        * p.qp(d, 1 - k, k - 1)?
        * g_hat(p4, k)?;
    let den = p.qq(1, k)? * p.qa(1, k)? * p.qp(&abc, 1, k)? * p.qp(&abd, 1, k)?;
    num.try_div(&den)
}

pub fn qv4_lhs<S: Scalar>(p4: &Point4<S>, m: i64) -> Result<S> {
    if m < 0 {
        return Err(Error::Domain(format!("upper limit {m} < 0")));
    }
    (0..=m).try_fold(S::zero(), |acc, k| Ok(acc + qv4_term(p4, k)?))
}

/// `a^m c^m d^m (1-abq^(2m+1)) (abq^2;q)_{m-1} (bq, q/c, q/d;q)_m
///  / ((-q)^m (q, aq, abcq, abdq;q)_m)`.
pub fn qv4_rhs<S: Scalar>(p4: &Point4<S>, m: i64) -> Result<S> {
    let p = &p4.base;
    let (c, d) = (&p4.c, &p4.d);
    let q_c = p.q.clone() * c.try_inv()?;
    let q_d = p.q.clone() * d.try_inv()?;
    let num = (p.a.clone() * c.clone() * d.clone()).powi(m)?
        * p.qab(2 * m + 1, 1)?
        * p.qab(2, m - 1)?
        * p.qb(1, m)?
        * p.qp(&q_c, 0, m)?
        * p.qp(&q_d, 0, m)?;
    let abc = p.ab() * c.clone();
    let abd = p.ab() * d.clone();
    let den = (-p.q.clone()).powi(m)?
        * p.qq(1, m)?
        * p.qa(1, m)?
        * p.qp(&abc, 1, m)?
        * p.qp(&abd, 1, m)?;
    num.try_div(&den)
}

/// `rhs(m+1) - rhs(m)` equals the `(m+1)`-st summand.
pub fn qv4_increment_holds<S: Scalar>(p4: &Point4<S>, m: i64) -> Result<bool> {
    Ok(qv4_rhs(p4, m + 1)? - qv4_rhs(p4, m)? == qv4_term(p4, m + 1)?)
}
