use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use super::Scalar;
use crate::error::{Error, Result};

/// How much of a [`QSeries`] is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precision {
    /// A polynomial known exactly (constants, and `q` before truncation).
    Exact,
    /// Known modulo `q^(K+1)`.
    Truncated(usize),
}

/// Univariate power series in `q` with rational coefficients.
///
/// A truncated series of order `K` stores exactly `K + 1` coefficients.
/// Two truncated series may only be combined when their orders agree; the
/// `std::ops` implementations panic on a mismatch, the `checked_*` methods
/// return [`Error::OrderMismatch`]. Exact polynomials combine with anything
/// and take on the order of the other operand.
#[derive(Debug, Clone)]
pub struct QSeries {
    coeffs: Vec<Rational>,
    precision: Precision,
}

impl QSeries {
    /// Series of order `order` from leading coefficients (missing ones are
    /// zero, surplus ones are dropped).
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        QSeries {
            coeffs,
            precision: Precision::Truncated(order),
        }
    }

    /// Exact polynomial with the given coefficients.
    pub fn exact(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QSeries {
            coeffs,
            precision: Precision::Exact,
        }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect(), order)
    }

    pub fn constant(c: Rational) -> Self {
        Self::exact(vec![c])
    }

    /// The variable `q` truncated at `order`.
    pub fn var(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    /// The exact polynomial `q`.
    pub fn exact_var() -> Self {
        Self::exact(vec![Rational::zero(), Rational::one()])
    }

    /// `c q^e` truncated at `order`.
    pub fn monomial(c: Rational, e: usize, order: usize) -> Self {
        let mut s = Self::new(Vec::new(), order);
        if e <= order {
            s.coeffs[e] = c;
        }
        s
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// Truncation order, `None` for exact polynomials.
    pub fn order(&self) -> Option<usize> {
        match self.precision {
            Precision::Exact => None,
            Precision::Truncated(k) => Some(k),
        }
    }

    /// Coefficient of `q^t` (zero beyond the stored coefficients).
    pub fn coeff(&self, t: usize) -> Rational {
        self.coeffs.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Re-truncates at a lower (or equal) order; exact inputs may be truncated
    /// at any order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if let Precision::Truncated(k) = self.precision {
            if order > k {
                return Err(Error::OrderMismatch {
                    left: k,
                    right: order,
                });
            }
        }
        Ok(Self::new(
            self.coeffs.iter().take(order + 1).cloned().collect(),
            order,
        ))
    }

    /// Multiplies by `q^e`.
    pub fn mul_q_power(&self, e: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        match self.precision {
            Precision::Exact => Self::exact(coeffs),
            Precision::Truncated(k) => Self::new(coeffs, k),
        }
    }

    /// Divides by `q^e`, which requires the first `e` coefficients to vanish.
    /// A truncated input of order `K` yields order `K - e`.
    pub fn div_q_power(&self, e: usize) -> Result<Self> {
        if let Some((t, _)) = self
            .coeffs
            .iter()
            .enumerate()
            .take(e)
            .find(|(_, c)| !c.is_zero())
        {
            return Err(Error::NonTruncatable(format!(
                "dividing by q^{e} leaves a nonzero coefficient at q^{}",
                t as i64 - e as i64
            )));
        }
        let rest: Vec<Rational> = self.coeffs.iter().skip(e).cloned().collect();
        match self.precision {
            Precision::Exact => Ok(Self::exact(rest)),
            Precision::Truncated(k) if k >= e => Ok(Self::new(rest, k - e)),
            Precision::Truncated(k) => Err(Error::NonTruncatable(format!(
                "order {k} too small to divide by q^{e}"
            ))),
        }
    }

    /// `[c0,c1,..,cK]` with every stored coefficient as `p/q`; exact series
    /// print only their stored coefficients.
    pub fn coeff_list(&self) -> String {
        let len = match self.precision {
            Precision::Truncated(k) => k + 1,
            Precision::Exact => self.coeffs.len(),
        };
        let items: Vec<String> = (0..len).map(|t| format_rational(&self.coeff(t))).collect();
        format!("[{}]", items.join(","))
    }

    /// Evaluates the stored coefficients as a polynomial at `x`.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    fn joint_precision(&self, other: &Self) -> Result<Precision> {
        match (self.precision, other.precision) {
            (Precision::Exact, p) | (p, Precision::Exact) => Ok(p),
            (Precision::Truncated(a), Precision::Truncated(b)) if a == b => {
                Ok(Precision::Truncated(a))
            }
            (Precision::Truncated(a), Precision::Truncated(b)) => {
                Err(Error::OrderMismatch { left: a, right: b })
            }
        }
    }

    fn build(coeffs: Vec<Rational>, precision: Precision) -> Self {
        match precision {
            Precision::Exact => Self::exact(coeffs),
            Precision::Truncated(k) => Self::new(coeffs, k),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let p = self.joint_precision(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|t| self.coeff(t) + other.coeff(t)).collect();
        Ok(Self::build(coeffs, p))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other.clone())
    }

    /// Truncated Cauchy product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let p = self.joint_precision(other)?;
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(Self::build(Vec::new(), p));
        }
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = match p {
            Precision::Exact => full,
            Precision::Truncated(k) => full.min(k + 1),
        };
        let mut out = vec![Rational::zero(); len];
        for (u, fu) in self.coeffs.iter().enumerate().take(len) {
            if fu.is_zero() {
                continue;
            }
            for (v, gv) in other.coeffs.iter().enumerate().take(len - u) {
                if !gv.is_zero() {
                    out[u + v] += fu * gv;
                }
            }
        }
        Ok(Self::build(out, p))
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let k = match self.precision {
            Precision::Exact if self.coeffs.len() == 1 => {
                return Ok(Self::constant(c0.recip()));
            }
            Precision::Exact => {
                return Err(Error::NonTruncatable(
                    "inverting an exact polynomial needs a truncation order".into(),
                ))
            }
            Precision::Truncated(k) => k,
        };
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(k + 1);
        out.push(inv0.clone());
        for t in 1..=k {
            let mut s = Rational::zero();
            for u in 1..=t.min(self.coeffs.len() - 1) {
                s += &self.coeffs[u] * &out[t - u];
            }
            out.push(-s * &inv0);
        }
        Ok(Self::new(out, k))
    }
}

impl PartialEq for QSeries {
    fn eq(&self, other: &Self) -> bool {
        let len = match (self.precision, other.precision) {
            (Precision::Truncated(a), Precision::Truncated(b)) if a != b => return false,
            (Precision::Truncated(k), _) | (_, Precision::Truncated(k)) => k + 1,
            (Precision::Exact, Precision::Exact) => self.coeffs.len().max(other.coeffs.len()),
        };
        (0..len).all(|t| self.coeff(t) == other.coeff(t))
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (t, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = match (t, mag.is_one()) {
                (0, _) => format_rational(&mag),
                (1, true) => "q".to_string(),
                (1, false) => format!("{}q", format_rational(&mag)),
                (_, true) => format!("q^{t}"),
                (_, false) => format!("{}q^{t}", format_rational(&mag)),
            };
            write!(f, "{sep}{body}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        if let Precision::Truncated(k) = self.precision {
            write!(f, " + O(q^{})", k + 1)?;
        }
        Ok(())
    }
}

impl Add for QSeries {
    type Output = QSeries;
    fn add(self, rhs: QSeries) -> QSeries {
        self.checked_add(&rhs).expect("QSeries addition")
    }
}

impl Sub for QSeries {
    type Output = QSeries;
    fn sub(self, rhs: QSeries) -> QSeries {
        self.checked_sub(&rhs).expect("QSeries subtraction")
    }
}

impl Mul for QSeries {
    type Output = QSeries;
    fn mul(self, rhs: QSeries) -> QSeries {
        self.checked_mul(&rhs).expect("QSeries multiplication")
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
            precision: self.precision,
        }
    }
}

impl Zero for QSeries {
    fn zero() -> Self {
        Self::exact(Vec::new())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for QSeries {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Scalar for QSeries {
    fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_int(n))
    }

    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }

    fn try_inv(&self) -> Result<Self> {
        self.invert()
    }
}
