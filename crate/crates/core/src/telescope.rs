//! Creative-telescoping certificate for the odd and even split sums, with
//! `q^i` generalised to a free parameter `c`.
//!
//! Functions take the summation index `k` in its original (unsplit) form; a
//! parity class is walked in steps of two via [`Parity::index`].


use crate::error::{Error, Result};
use crate::identities::Point;
use crate::qkit::qpoch_shifted;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct TelescopePoint<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub q: S,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    /// `2k-1` or `2k-2`.
    pub fn index(self, k: i64) -> i64 {
        match self {
            Parity::Odd => 2 * k - 1,
            Parity::Even => 2 * k - 2,
        }
    }
}

impl<S: Scalar> TelescopePoint<S> {
    fn qe(&self, e: i64) -> Result<S> {
        self.q.powi(e)
    }

    fn qp(&self, c: &S, e: i64, n: i64) -> Result<S> {
        qpoch_shifted(c, e, &self.q, n)
    }

    fn one_minus(&self, c: &S, e: i64) -> Result<S> {
        Ok(S::one() - c.clone() * self.qe(e)?)
    }

    fn ab(&self) -> S {
        self.a.clone() * self.b.clone()
    }

    fn abc(&self) -> S {
        self.ab() * self.c.clone()
    }

    fn ac(&self) -> S {
        self.a.clone() * self.c.clone()
    }

    /// Same `(a, b, q)` as a [`Point`] with `r = 0`.
    pub fn point(&self) -> Point<S> {
        Point::new(self.a.clone(), self.b.clone(), self.q.clone(), 0)
    }
}

/// `h_k(j) = (1-q^k)(1-aq^k){q^-k (1+abq^2k)(1+abcq^(j-1)) - ab(1+q)(c/q + q^(j-1))}
///  + a q^(k-1) (1-b)(1-c q^-k)(1-q^(j-k))(1-abq^(2k+1))`.
pub fn h<S: Scalar>(p: &TelescopePoint<S>, k: i64, j: i64) -> Result<S> {
    let one = S::one();
    let ab = p.ab();
    let inner = p.qe(-k)?
        * (one.clone() + ab.clone() * p.qe(2 * k)?)
        * (one.clone() + p.abc() * p.qe(j - 1)?)
        - ab.clone() * (one.clone() + p.q.clone()) * (p.c.clone() * p.qe(-1)? + p.qe(j - 1)?);
    let first = p.one_minus(&one, k)? * p.one_minus(&p.a, k)? * inner;
    let second = p.a.clone()
        * p.qe(k - 1)?
        * p.b.one_minus()
        * p.one_minus(&p.c, -k)?
        * p.one_minus(&one, j - k)?
        * p.one_minus(&ab, 2 * k + 1)?;
    Ok(first + second)
}

/// `F(j,k) = a^(k-1) c^(k-1) q^(j(k-1)+1) (abq^2k;q)_1 (abq^2;q)_{k-2}
///  (bq, q/c, q^(1-j);q)_{k-1} / (q, aq, abcq, abq^(j+1);q)_k * h_k(j)`.
pub fn f<S: Scalar>(p: &TelescopePoint<S>, j: i64, k: i64) -> Result<S> {
    let one = S::one();
    let stop = p.qp(&one, 1 - j, k - 1)?;
    if k >= 1 && stop.is_zero() {
        return Ok(S::zero());
    }
    let ab = p.ab();
    let q_c = p.q.clone() * p.c.try_inv()?;
    let num = p.a.powi(k - 1)?
        * p.c.powi(k - 1)?
        * p.qe(j * (k - 1) + 1)?
        * p.qp(&ab, 2 * k, 1)?
        * p.qp(&ab, 2, k - 2)?
        * p.qp(&p.b, 1, k - 1)?
        * p.qp(&q_c, 0, k - 1)?
        * stop
        * h(p, k, j)?;
    let den = p.qp(&one, 1, k)? * p.qp(&p.a, 1, k)? * p.qp(&p.abc(), 1, k)? * p.qp(&ab, j + 1, k)?;
    num.try_div(&den)
}

/// `(1-aq^j)(1-abcq^j) / ((1-abq^(j+1))(1-acq^(j-1)))`.
fn shift_ratio<S: Scalar>(p: &TelescopePoint<S>, j: i64) -> Result<S> {
    let num = p.one_minus(&p.a, j)? * p.one_minus(&p.abc(), j)?;
    let den = p.one_minus(&p.ab(), j + 1)? * p.one_minus(&p.ac(), j - 1)?;
    num.try_div(&den)
}

/// `T(j,k) = F(j,k) - shift_ratio(j) F(j+1,k)`.
pub fn t<S: Scalar>(p: &TelescopePoint<S>, j: i64, k: i64) -> Result<S> {
    Ok(f(p, j, k)? - shift_ratio(p, j)? * f(p, j + 1, k)?)
}

pub fn p_poly<S: Scalar>(p: &TelescopePoint<S>, j: i64, k: i64) -> Result<S> {
    let one = S::one();
    let c_inv = p.c.try_inv()?;
    let lead = (p.a.clone() * p.c.clone()).powi(2)? * p.qe(2 * j)?;
    Ok(lead
        * p.one_minus(&p.ab(), k)?
        * p.one_minus(&p.ab(), k + 1)?
        * p.one_minus(&p.b, k)?
        * p.one_minus(&p.b, k + 1)?
        * p.one_minus(&c_inv, k)?
        * p.one_minus(&c_inv, k + 1)?
        * p.one_minus(&one, k - j - 1)?
        * p.one_minus(&one, k - j)?)
}

pub fn q_poly<S: Scalar>(p: &TelescopePoint<S>, j: i64, k: i64) -> Result<S> {
    let one = S::one();
    Ok(p.one_minus(&one, k + 1)?
        * p.one_minus(&one, k + 2)?
        * p.one_minus(&p.a, k + 1)?
        * p.one_minus(&p.a, k + 2)?
        * p.one_minus(&p.abc(), k + 1)?
        * p.one_minus(&p.abc(), k + 2)?
        * p.one_minus(&p.ab(), j + k + 2)?
        * p.one_minus(&p.ab(), j + k + 3)?)
}

pub fn r_poly<S: Scalar>(p: &TelescopePoint<S>, j: i64, k: i64) -> Result<S> {
    let one = S::one();
    let ab = p.ab();
    let first = p.one_minus(&ab, j + k + 1)? * p.one_minus(&one, k - j - 1)? * h(p, k, j)?;
    let second = p.qe(k - 1)?
        * shift_ratio(p, j)?
        * p.one_minus(&ab, j + 1)?
        * p.one_minus(&one, -j)?
        * h(p, k, j + 1)?;
    Ok(p.one_minus(&ab, 2 * k)? * (first - second))
}

/// The certificate `X(j,k) = -q^-k / (1 - acq^(j-1))`.
pub fn x_cert<S: Scalar>(p: &TelescopePoint<S>, j: i64, k: i64) -> Result<S> {
    (-p.qe(-k)?).try_div(&p.one_minus(&p.ac(), j - 1)?)
}

/// `Λ(j,k) = Q(j,k-2) T(j,k) X(j,k) / R(j,k)` along one parity class.
pub fn lambda<S: Scalar>(p: &TelescopePoint<S>, j: i64, k: i64) -> Result<S> {
    let qv = q_poly(p, j, k - 2)?;
    if qv.is_zero() {
        return Ok(S::zero());
    }
    (qv * t(p, j, k)? * x_cert(p, j, k)?).try_div(&r_poly(p, j, k)?)
}

/// `T(j,k+2)/T(j,k) = P(j,k)/Q(j,k) * R(j,k+2)/R(j,k)`, cross-multiplied.
pub fn check_ratio<S: Scalar>(p: &TelescopePoint<S>, j: i64, k: i64) -> Result<bool> {
    let lhs = t(p, j, k + 2)? * q_poly(p, j, k)? * r_poly(p, j, k)?;
    let rhs = t(p, j, k)? * p_poly(p, j, k)? * r_poly(p, j, k + 2)?;
    Ok(lhs == rhs)
}

/// `P(j,k) X(j,k+2) - Q(j,k-2) X(j,k) = R(j,k)`.
pub fn check_gosper<S: Scalar>(p: &TelescopePoint<S>, j: i64, k: i64) -> Result<bool> {
    let lhs = p_poly(p, j, k)? * x_cert(p, j, k + 2)? - q_poly(p, j, k - 2)? * x_cert(p, j, k)?;
    Ok(lhs == r_poly(p, j, k)?)
}

/// Gosper equation with a caller-supplied certificate, for negative controls.
pub fn check_gosper_with<S: Scalar>(
    p: &TelescopePoint<S>,
    j: i64,
    k: i64,
    x: impl Fn(i64) -> Result<S>,
) -> Result<bool> {
    let lhs = p_poly(p, j, k)? * x(k + 2)? - q_poly(p, j, k - 2)? * x(k)?;
    Ok(lhs == r_poly(p, j, k)?)
}

/// `T(j,k) = Λ(j,k+2) - Λ(j,k)`.
pub fn check_recurrence<S: Scalar>(p: &TelescopePoint<S>, j: i64, k: i64) -> Result<bool> {
    Ok(t(p, j, k)? == lambda(p, j, k + 2)? - lambda(p, j, k)?)
}

/// `Λ` vanishes at the first index of each parity class.
pub fn check_lambda_start<S: Scalar>(p: &TelescopePoint<S>, j: i64) -> Result<bool> {
    Ok(lambda(p, j, Parity::Odd.index(1))?.is_zero() && lambda(p, j, Parity::Even.index(1))?.is_zero())
}

/// Sum of `F(j, k)` over one parity class; terms vanish once `k > j`.
pub fn parity_sum<S: Scalar>(p: &TelescopePoint<S>, parity: Parity, j: i64) -> Result<S> {
    if j < 1 {
        return Err(Error::Domain(format!("j = {j} < 1")));
    }
    let mut acc = S::zero();
    let mut k = 1;
    loop {
        let idx = parity.index(k);
        if idx > j {
            break;
        }
        acc = acc + f(p, j, idx)?;
        k += 1;
    }
    Ok(acc)
}

/// `(ac, abq^2;q)_{j-1} / (aq, abcq;q)_{j-1}`.
pub fn telescoped_rhs<S: Scalar>(p: &TelescopePoint<S>, j: i64) -> Result<S> {
    let num = p.qp(&p.ac(), 0, j - 1)? * p.qp(&p.ab(), 2, j - 1)?;
    let den = p.qp(&p.a, 1, j - 1)? * p.qp(&p.abc(), 1, j - 1)?;
    num.try_div(&den)
}

pub fn check_telescoped<S: Scalar>(p: &TelescopePoint<S>, parity: Parity, j: i64) -> Result<bool> {
    Ok(parity_sum(p, parity, j)? == telescoped_rhs(p, j)?)
}
