//! Weighted profile sums of RPP generating functions and their product
//! evaluations, compared coefficientwise.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::gf::gf_tableaux_det;
use super::{Profile, StrictPartition};
use crate::error::{Error, Result};
use crate::identities::closed::exact_third;
use crate::identities::entries::{bordered_matrix, f_poly, Border, Point};
use crate::matrix::Matrix;
use crate::qkit::qpoch_inf_series;
use crate::scalar::{sign, QSeries, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RppTheorem {
    /// Staircase `(m, .., m-2n+1)`.
    Gf,
    /// `(l, m-1, .., m-2n+1)`, `l >= m`.
    Gf2,
    /// `(l, m, m-2, .., m-2n+1)`, `l > m`.
    Gf3,
    /// Staircase `(m, .., m-2n+2)` of odd length.
    Odd,
    /// `(l, m-1, .., m-2n+2)`, `l >= m`, `n >= 2`.
    Odd2,
    /// `(l, m, m-2, .., m-2n+2)`, `l > m`, `n >= 2`.
    Odd3,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RppParams {
    pub m: i64,
    pub n: i64,
    /// Only read by the `*2` and `*3` variants.
    pub l: i64,
    pub r: i64,
    pub a: Rational,
    pub b: Rational,
    pub order: usize,
}

impl RppTheorem {
    pub const ALL: [RppTheorem; 6] = [
        RppTheorem::Gf,
        RppTheorem::Gf2,
        RppTheorem::Gf3,
        RppTheorem::Odd,
        RppTheorem::Odd2,
        RppTheorem::Odd3,
    ];

    pub fn id(self) -> &'static str {
        match self {
            RppTheorem::Gf => "rpp-gf",
            RppTheorem::Gf2 => "rpp-gf2",
            RppTheorem::Gf3 => "rpp-gf3",
            RppTheorem::Odd => "rpp-odd",
            RppTheorem::Odd2 => "rpp-odd2",
            RppTheorem::Odd3 => "rpp-odd3",
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, RppTheorem::Odd | RppTheorem::Odd2 | RppTheorem::Odd3)
    }

    pub fn uses_l(self) -> bool {
        !matches!(self, RppTheorem::Gf | RppTheorem::Odd)
    }

    pub fn check_domain(self, p: &RppParams) -> Result<()> {
        let (m, n, l) = (p.m, p.n, p.l);
        let bad = |why: &str| Err(Error::Domain(format!("{}: {why}", self.id())));
        if n < 1 {
            return bad("n >= 1");
        }
        let min_m = if self.is_odd() { 2 * n - 1 } else { 2 * n };
        if m < min_m {
            return bad(&format!("m >= {min_m}"));
        }
        match self {
            RppTheorem::Gf | RppTheorem::Odd => Ok(()),
            RppTheorem::Gf2 if l < m => bad("l >= m"),
            RppTheorem::Gf3 if l <= m => bad("l > m"),
            RppTheorem::Odd2 | RppTheorem::Odd3 if n < 2 => bad("n >= 2"),
            RppTheorem::Odd2 if l < m => bad("l >= m"),
            RppTheorem::Odd3 if l <= m => bad("l > m"),
            _ => Ok(()),
        }
    }

    pub fn shape(self, p: &RppParams) -> Result<StrictPartition> {
        self.check_domain(p)?;
        let (m, n, l) = (p.m, p.n, p.l);
        let len = if self.is_odd() { 2 * n - 1 } else { 2 * n };
        let parts: Vec<i64> = match self {
            RppTheorem::Gf | RppTheorem::Odd => (0..len).map(|i| m - i).collect(),
            RppTheorem::Gf2 | RppTheorem::Odd2 => {
                std::iter::once(l).chain((1..len).map(|i| m - i)).collect()
            }
            RppTheorem::Gf3 | RppTheorem::Odd3 => {
                [l, m].into_iter().chain((2..len).map(|i| m - i)).collect()
            }
        };
        StrictPartition::new(parts.into_iter().map(|x| x as usize).collect())
    }

    /// Exponents `x` (and `y` for the odd case) of the profile weights.
    pub fn weight_exponents(self, p: &RppParams) -> (i64, i64) {
        let d = p.m - 2 * p.n;
        if self.is_odd() {
            (p.r - 2 * d - 3, p.r - d - 1)
        } else {
            (p.r - 2 * d - 1, 0)
        }
    }
}

impl fmt::Display for RppTheorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for RppTheorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RppTheorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| Error::Parse(format!("unknown RPP theorem {s:?}")))
    }
}

fn series_point(a: &Rational, b: &Rational, r: i64, order: usize) -> Point<QSeries> {
    Point::new(
        QSeries::constant(a.clone()),
        QSeries::constant(b.clone()),
        QSeries::var(order),
        r,
    )
}

/// `c q^e` modulo `q^(order+1)`, with `e >= 0` required.
fn scaled_monomial(c: Rational, e: i64, order: usize, what: &str) -> Result<QSeries> {
    if e < 0 {
        return Err(Error::NonTruncatable(format!("{what} has net q-degree {e}")));
    }
    Ok(QSeries::monomial(c, e as usize, order))
}

fn b_ratio(p: &Point<QSeries>, e: i64, n: i64) -> Result<QSeries> {
    p.qb(e, n)?.try_div(&p.qq(e, n)?)
}

/// `q^extra ω_x(ν)` for `ν ∈ P_n`.
pub fn omega_weight(
    nu: &Profile,
    x: i64,
    a: &Rational,
    b: &Rational,
    extra: i64,
    order: usize,
) -> Result<QSeries> {
    if !nu.in_p() {
        return Err(Error::Shape(format!("{:?} is not in P_n", nu.values())));
    }
    let half = (nu.total() / 2) as i64;
    let p = series_point(a, b, 0, order);
    let mut w = scaled_monomial(a.powi(half)?, x * half + extra, order, "omega weight")?;
    for (k, pair) in nu.values().chunks(2).enumerate() {
        w = w * b_ratio(&p, 2 * k as i64 + 1, pair[0] as i64)?;
    }
    Ok(w)
}

/// `q^extra ω'_x(μ)` for `μ ∈ P'_n`.
pub fn omega_prime_weight(
    mu: &Profile,
    x: i64,
    a: &Rational,
    b: &Rational,
    extra: i64,
    order: usize,
) -> Result<QSeries> {
    if !mu.in_p_prime() {
        return Err(Error::Shape(format!("{:?} is not in P'_n", mu.values())));
    }
    let n = mu.len() / 2;
    let half = ((mu.total() - n) / 2) as i64;
    let p = series_point(a, b, 0, order);
    let mut w = scaled_monomial(a.powi(half)?, x * half + extra, order, "omega' weight")?;
    for pair in mu.values().chunks(2) {
        w = w * b_ratio(&p, 1, pair[0] as i64)?;
    }
    Ok(w)
}

/// `q^extra ψ^(t)_{x,y}(ν)` for `ν ∈ Q^(t)_n`.
#[allow(clippy::too_many_arguments)]
pub fn psi_weight(
    nu: &Profile,
    t: usize,
    x: i64,
    y: i64,
    a: &Rational,
    b: &Rational,
    extra: i64,
    order: usize,
) -> Result<QSeries> {
    if !nu.in_q(t) {
        return Err(Error::Shape(format!("{:?} is not in Q^({t})", nu.values())));
    }
    let n = nu.len().div_ceil(2);
    let v = |i: usize| nu.values()[i - 1] as i64;
    let mid = v(2 * t - 1);
    let half = (nu.total() as i64 - mid) / 2;
    let p = series_point(a, b, 0, order);
    let mut w = scaled_monomial(a.powi(half + mid)?, x * half + y * mid + extra, order, "psi weight")?;
    w = w * b_ratio(&p, 2 * t as i64 - 1, mid)?;
    for k in 1..t {
        w = w * b_ratio(&p, 2 * k as i64, v(2 * k - 1) - 1)?;
    }
    for k in t..n {
        w = w * b_ratio(&p, 2 * k as i64, v(2 * k))?;
    }
    Ok(w)
}

/// Calls `f` on every `c` with `c_i >= c_(i-1) + gap`, `c_0 >= 0` and
/// `Σ slopes_i c_i <= budget`. All slopes must be positive.
fn for_each_coords(
    slopes: &[i64],
    gap: i64,
    budget: i64,
    f: &mut dyn FnMut(&[i64]) -> Result<()>,
) -> Result<()> {
    fn go(
        slopes: &[i64],
        gap: i64,
        budget: i64,
        lo: i64,
        cur: &mut Vec<i64>,
        f: &mut dyn FnMut(&[i64]) -> Result<()>,
    ) -> Result<()> {
        let i = cur.len();
        if i == slopes.len() {
            return f(cur);
        }
        let mut v = lo;
        loop {
            // cheapest completion: every later coordinate at its lower bound
            let rest: i64 = (i..slopes.len()).map(|j| slopes[j] * (v + gap * (j - i) as i64)).sum();
            if rest > budget {
                return Ok(());
            }
            cur.push(v);
            go(slopes, gap, budget - slopes[i] * v, v + gap, cur, f)?;
            cur.pop();
            v += 1;
        }
    }
    if budget < 0 {
        return Ok(());
    }
    go(slopes, gap, budget, 0, &mut Vec::new(), f)
}

fn require_positive(slopes: &[(String, i64)]) -> Result<()> {
    match slopes.iter().find(|(_, s)| *s <= 0) {
        Some((name, s)) => Err(Error::NonTruncatable(format!(
            "profile component {name} has degree slope {s}"
        ))),
        None => Ok(()),
    }
}

/// `q^(-Σλν) GF(R_{λ,ν})` modulo `q^(order+1)`.
fn gf_rpp_normalised(shape: &StrictPartition, nu: &Profile, order: usize) -> Result<QSeries> {
    let base = shape.n_lambda() + dot(shape, nu.values());
    gf_tableaux_det(shape, &nu.plus_epsilon(), order + base)?.div_q_power(base)
}

fn dot(shape: &StrictPartition, v: &[usize]) -> usize {
    shape.parts().iter().zip(v).map(|(l, v)| l * v).sum()
}

fn parts(shape: &StrictPartition) -> Vec<i64> {
    shape.parts().iter().map(|&x| x as i64).collect()
}

/// Profile terms of the left side, each already multiplied out.
fn lhs_terms(th: RppTheorem, p: &RppParams) -> Result<Vec<QSeries>> {
    let shape = th.shape(p)?;
    let lam = parts(&shape);
    let (x, y) = th.weight_exponents(p);
    let k = p.order;
    let n = p.n as usize;
    let mut terms = Vec::new();
    if !th.is_odd() {
        let slopes: Vec<(String, i64)> = (1..=n)
            .map(|k| (format!("v{k}"), x + lam[2 * k - 2] + lam[2 * k - 1]))
            .collect();
        require_positive(&slopes)?;
        let s: Vec<i64> = slopes.iter().map(|x| x.1).collect();
        for_each_coords(&s, 0, k as i64, &mut |c| {
            let nu = Profile::new(c.iter().flat_map(|&v| [v as usize, v as usize]).collect())?;
            let extra = dot(&shape, nu.values()) as i64;
            let w = omega_weight(&nu, x, &p.a, &p.b, extra, k)?;
            terms.push(w * gf_rpp_normalised(&shape, &nu, k)?);
            Ok(())
        })?;
        return Ok(terms);
    }
    let sp = series_point(&p.a, &p.b, p.r, k);
    for t in 1..=n {
        let shift = (p.r + 1) * (t as i64 - 1);
        let outer = QSeries::constant(p.a.powi(t as i64 - 1)?) * b_ratio(&sp, 1, 2 * (t as i64 - 1))?;
        let mut slopes = Vec::new();
        for j in 1..t {
            slopes.push((format!("u{j}"), x + lam[2 * j - 2] + lam[2 * j - 1]));
        }
        slopes.push(("w".to_string(), y + lam[2 * t - 2]));
        for j in t..n {
            slopes.push((format!("z{j}"), x + lam[2 * j - 1] + lam[2 * j]));
        }
        require_positive(&slopes)?;
        let s: Vec<i64> = slopes.iter().map(|x| x.1).collect();
        for_each_coords(&s, 0, k as i64 - shift, &mut |c| {
            let mut nu = Vec::with_capacity(2 * n - 1);
            for &u in &c[..t - 1] {
                nu.extend([u as usize, u as usize]);
            }
            nu.push(c[t - 1] as usize);
            for &z in &c[t..] {
                nu.extend([z as usize, z as usize]);
            }
            let nu = Profile::new(nu)?;
            let extra = dot(&shape, nu.values()) as i64 + shift;
            let w = psi_weight(&nu, t, x, y, &p.a, &p.b, extra, k)?;
            terms.push(outer.clone() * w * gf_rpp_normalised(&shape, &nu, k)?);
            Ok(())
        })?;
    }
    Ok(terms)
}

/// The weighted sum over profiles, truncated at `p.order`.
pub fn lhs_weighted_sum(th: RppTheorem, p: &RppParams) -> Result<QSeries> {
    lhs_weighted_sum_ordered(th, p, false)
}

/// As [`lhs_weighted_sum`], optionally adding the profile terms in reverse.
pub fn lhs_weighted_sum_ordered(th: RppTheorem, p: &RppParams, reverse: bool) -> Result<QSeries> {
    let mut terms = lhs_terms(th, p)?;
    if reverse {
        terms.reverse();
    }
    Ok(terms.into_iter().fold(QSeries::new(Vec::new(), p.order), |acc, t| acc + t))
}

/// `{(abq^2;q)_inf / (aq;q)_inf}^n`.
fn inf_ratio(a: &Rational, b: &Rational, n: i64, order: usize) -> Result<QSeries> {
    let num = qpoch_inf_series(&(a * b), 2, order)?;
    let den = qpoch_inf_series(a, 1, order)?;
    num.try_div(&den)?.powi(n)
}

struct Rhs<'a> {
    p: &'a Point<QSeries>,
}

impl Rhs<'_> {
    fn qf(&self, n: i64) -> Result<QSeries> {
        self.p.qq(1, n)
    }

    /// `1 / (q;q)_n`, zero for negative `n`.
    fn inv_qf(&self, n: i64) -> Result<QSeries> {
        if n < 0 {
            return Ok(QSeries::zero());
        }
        self.qf(n)?.try_inv()
    }

    fn prod(&self, range: std::ops::RangeInclusive<i64>, f: impl Fn(i64) -> Result<QSeries>) -> Result<QSeries> {
        range.into_iter().try_fold(QSeries::one(), |acc, k| Ok(acc * f(k)?))
    }

    /// `Π_{k=1}^{n-1} (aq)_{2k+r-1} / (abq^2)_{2(k+n)+r-3}` with the upper
    /// limit given.
    fn even_tail(&self, n: i64, upto: i64) -> Result<QSeries> {
        let r = self.p.r;
        self.prod(1..=upto, |k| self.p.qa(1, 2 * k + r - 1)?.try_div(&self.p.qab(2, 2 * (k + n) + r - 3)?))
    }

    fn r_factor(&self, n: i64, a: &Rational, b: &Rational, order: usize) -> Result<QSeries> {
        let p = self.p;
        let r = p.r;
        let head = inf_ratio(a, b, n, order)? * p.qa(1, r)?.try_div(&p.qab(2, r)?)?;
        let tail = self.prod(1..=n - 1, |k| {
            p.qa(1, 2 * k + r)?.try_div(&(p.qab(2, 4 * k + r - 1)? * p.qab(2 * k + r, 2 * k - 1)?))
        })?;
        Ok(head * tail)
    }
}

/// The product side, truncated at `p.order`.
pub fn rhs_series(th: RppTheorem, p: &RppParams) -> Result<QSeries> {
    th.check_domain(p)?;
    let (m, n, l, r) = (p.m, p.n, p.l, p.r);
    let k = p.order;
    let pt = series_point(&p.a, &p.b, r, k);
    let h = Rhs { p: &pt };
    match th {
        RppTheorem::Gf => {
            let stair = h.prod(1..=2 * n, |k| Ok(h.qf(k - 1)? * h.inv_qf(k + m - 2 * n - 1)?))?;
            Ok(inf_ratio(&p.a, &p.b, n, k)? * stair * h.even_tail(n, n)?)
        }
        RppTheorem::Gf2 => {
            let d = l - m;
            let lead = pt.qq(d + 1, 2 * n - 1)? * h.inv_qf(l - 1)?;
            let stair = h.prod(1..=2 * n - 1, |k| Ok(h.qf(k - 1)? * h.inv_qf(k + m - 2 * n - 1)?))?;
            let top = pt.qa(1, d + 2 * n + r - 1)?.try_div(&pt.qab(2, d + 4 * n + r - 3)?)?;
            Ok(inf_ratio(&p.a, &p.b, n, k)? * lead * stair * top * h.even_tail(n, n - 1)?)
        }
        RppTheorem::Gf3 => {
            let d = l - m;
            let lead = pt.qq(d, 1)? * pt.qq(d + 2, 2 * n - 2)? * h.inv_qf(l - 1)? * h.inv_qf(m - 1)?;
            let stair = h.prod(1..=2 * n - 1, |k| h.qf(k - 1))?
                * h.prod(1..=2 * n - 2, |k| h.inv_qf(k + m - 2 * n - 1))?;
            let top = (pt.qa(1, d + 2 * n + r - 1)? * f_poly(&pt, 2 * n, d + 2 * n)?)
                .try_div(&(pt.qab(4 * n + r - 3, 1)? * pt.qab(2, d + 4 * n + r - 2)?))?;
            Ok(inf_ratio(&p.a, &p.b, n, k)? * lead * stair * top * h.even_tail(n, n - 1)?)
        }
        RppTheorem::Odd => {
            let stair = h.prod(1..=2 * n - 1, |k| Ok(h.qf(k - 1)? * h.inv_qf(k + m - 2 * n)?))?;
            Ok(stair * h.r_factor(n, &p.a, &p.b, k)?)
        }
        RppTheorem::Odd2 => {
            let d = l - m;
            let stair = h.prod(1..=2 * n - 1, |k| h.qf(k - 1))?
                * h.inv_qf(l - 1)?
                * h.prod(1..=2 * n - 2, |k| h.inv_qf(k + m - 2 * n))?;
            let mid = (pt.qq(d + 1, 2 * n - 2)? * pt.qa(2 * n + r - 1, d)?)
                .try_div(&(h.qf(2 * n - 2)? * pt.qab(4 * n + r - 3, d)?))?;
            Ok(stair * mid * h.r_factor(n, &p.a, &p.b, k)?)
        }
        RppTheorem::Odd3 => {
            let d = l - m;
            let stair = f_poly(&pt, 2 * n - 1, d + 2 * n - 1)?
                * h.prod(1..=2 * n - 1, |k| h.qf(k - 1))?
                * h.inv_qf(l - 1)?
                * h.inv_qf(m - 1)?
                * h.prod(1..=2 * n - 3, |k| h.inv_qf(k + m - 2 * n))?;
            let mid = (pt.qq(d, 1)? * pt.qq(d + 2, 2 * n - 3)? * pt.qa(2 * n + r - 1, d)?).try_div(
                &(h.qf(2 * n - 2)? * pt.qab(4 * n + r - 5, 1)? * pt.qab(4 * n + r - 3, d + 1)?),
            )?;
            Ok(stair * mid * h.r_factor(n, &p.a, &p.b, k)?)
        }
    }
}

/// The tableau form of the staircase identity, with the q-power constants
/// kept apart from the series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauxGfCheck {
    /// Both sides agree once their leading q-powers are removed.
    pub series_equal: bool,
    /// Leading q-power of the weighted tableau sum.
    pub lhs_shift: i64,
    /// `mn + n(n-2)(4n-1)/3 + n(n-1)r`.
    pub printed_shift: i64,
    /// `ns + n(n-1)(4n+1)/3 + n(n-1)r` with `s = m-2n+1`.
    pub alternate_shift: i64,
}

impl TableauxGfCheck {
    pub fn ok(&self) -> bool {
        self.series_equal && self.lhs_shift == self.printed_shift && self.printed_shift == self.alternate_shift
    }
}

/// `Σ_{μ ∈ P'_n} ω'_x(μ) GF(T_{λ,μ})` against its product form, staircase
/// `λ = (m, .., m-2n+1)`.
pub fn check_tableaux_gf(m: i64, n: i64, r: i64, a: &Rational, b: &Rational, order: usize) -> Result<TableauxGfCheck> {
    let params = RppParams { m, n, l: m, r, a: a.clone(), b: b.clone(), order };
    let shape = RppTheorem::Gf.shape(&params)?;
    let lam = parts(&shape);
    let (x, _) = RppTheorem::Gf.weight_exponents(&params);
    let nl = shape.n_lambda() as i64;
    let lhs_shift = x * n * (n - 1) + nl;
    let printed_shift = m * n + exact_third(n * (n - 2) * (4 * n - 1))? + n * (n - 1) * r;
    let s = m - 2 * n + 1;
    let alternate_shift = n * s + exact_third(n * (n - 1) * (4 * n + 1))? + n * (n - 1) * r;

    let nu_slopes: Vec<(String, i64)> = (1..=n as usize)
        .map(|k| (format!("v{k}"), x + lam[2 * k - 2] + lam[2 * k - 1]))
        .collect();
    require_positive(&nu_slopes)?;
    let slopes: Vec<i64> = nu_slopes.iter().map(|x| x.1).collect();
    let mut lhs = QSeries::new(Vec::new(), order);
    for_each_coords(&slopes, 0, order as i64, &mut |c| {
        let nu = Profile::new(c.iter().flat_map(|&v| [v as usize, v as usize]).collect())?;
        let mu = Profile::new(nu.plus_epsilon())?;
        let base = dot(&shape, mu.values());
        let w = omega_prime_weight(&mu, x, a, b, base as i64 - lhs_shift, order)?;
        let g = gf_tableaux_det(&shape, mu.values(), order + base)?.div_q_power(base)?;
        lhs = lhs.clone() + w * g;
        Ok(())
    })?;

    let pt = series_point(a, b, r, order);
    let h = Rhs { p: &pt };
    let rhs = QSeries::constant(a.powi(n * (n - 1))?)
        * inf_ratio(a, b, n, order)?
        * h.prod(1..=2 * n, |k| h.inv_qf(k + m - 2 * n - 1))?
        * h.prod(1..=n - 1, |k| pt.qb(1, 2 * k))?
        * h.prod(1..=n, |k| {
            (h.qf(2 * k - 1)? * pt.qa(1, 2 * k + r - 1)?).try_div(&pt.qab(2, 2 * (k + n) + r - 3)?)
        })?;
    Ok(TableauxGfCheck { series_equal: lhs == rhs, lhs_shift, printed_shift, alternate_shift })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomExpansion {
    /// The profile sum of `det T_μ` equals the scaled Pfaffian of `A`.
    pub sum_matches: bool,
    /// Reversing the rows of the staircase determinant costs `(-1)^n`.
    pub row_reversal: bool,
}

impl BinomExpansion {
    pub fn ok(&self) -> bool {
        self.sum_matches && self.row_reversal
    }
}

/// `Σ_μ (aq^(r-2s+1))^(Σμ_odd) Π (bq)_{μ_odd}/(q)_{μ_odd} det T_μ` over
/// `μ = (u_1, u_1+1, u_2, u_2+1, ..)` strictly increasing, with
/// `T_ij = q^((i+s-1)j) / (q;q)_{i+s-2}`, against
/// `(-1)^n q^(ns) {..}^n Π_k 1/(q;q)_{k+s-2} Pf(A_[2n])`.
pub fn check_binom_expansion(n: i64, s: i64, r: i64, a: &Rational, b: &Rational, order: usize) -> Result<BinomExpansion> {
    if n < 1 || s < 1 {
        return Err(Error::Domain("binomial expansion needs n >= 1 and s >= 1".into()));
    }
    let dim = 2 * n as usize;
    let pt = series_point(a, b, r, order);
    let h = Rhs { p: &pt };
    let row_scale: Vec<QSeries> =
        (1..=dim as i64).map(|i| h.inv_qf(i + s - 2)).collect::<Result<_>>()?;
    let t_det = |mu: &[i64], k: usize| -> Result<QSeries> {
        let hk = Rhs { p: &series_point(a, b, r, k) };
        Matrix::try_from_fn(dim, dim, |i, j| {
            let e = (i as i64 + s) * mu[j];
            Ok(QSeries::monomial(Rational::one(), e as usize, k) * hk.inv_qf(i as i64 + s - 1)?)
        })?
        .det_division_free()
    };

    let slopes: Vec<i64> = (1..=n).map(|k| r + 4 * n - 4 * k + 2).collect();
    require_positive(&slopes.iter().enumerate().map(|(k, &s)| (format!("u{}", k + 1), s)).collect::<Vec<_>>())?;
    let base_const: i64 = (1..=n).map(|k| 2 * n - 2 * k + s).sum();
    let mut lhs = QSeries::new(Vec::new(), order);
    for_each_coords(&slopes, 2, order as i64 - base_const, &mut |u| {
        let mu: Vec<i64> = u.iter().flat_map(|&v| [v, v + 1]).collect();
        // lowest degree over all permutations: largest row weight on the smallest column
        let low: i64 = (0..dim).map(|j| (dim as i64 - j as i64 - 1 + s) * mu[j]).sum();
        let wq = (r - 2 * s + 1) * u.iter().sum::<i64>();
        let mut w = scaled_monomial(a.powi(u.iter().sum())?, wq + low, order, "binomial weight")?;
        for &v in u {
            w = w * b_ratio(&pt, 1, v)?;
        }
        let det = t_det(&mu, order + low as usize)?.div_q_power(low as usize)?;
        lhs = lhs.clone() + w * det;
        Ok(())
    })?;

    let labels: Vec<i64> = (1..=dim as i64).collect();
    let pf = bordered_matrix(&pt, Border::None, &labels)?.pf()?;
    let rhs = sign::<QSeries>(n)
        * QSeries::monomial(Rational::one(), (n * s) as usize, order)
        * inf_ratio(a, b, n, order)?
        * row_scale.iter().cloned().fold(QSeries::one(), |acc, x| acc * x)
        * pf;

    // rows m-i+1 top to bottom versus i+m-2n bottom to top
    let m = s + 2 * n - 1;
    let mu: Vec<usize> = (0..dim).map(|j| j + j / 2).collect();
    let shape = StrictPartition::staircase(m as usize, dim)?;
    let forward = gf_tableaux_det(&shape, &mu, order)?;
    let reversed = Matrix::try_from_fn(dim, dim, |i, j| {
        let row = i as i64 + 1 + m - 2 * n;
        Ok(QSeries::monomial(Rational::one(), (row as usize) * mu[j], order) * h.inv_qf(row - 1)?)
    })?
    .det_division_free()?;
    let row_reversal = forward == sign::<QSeries>(n) * reversed;

    Ok(BinomExpansion { sum_matches: lhs == rhs, row_reversal })
}
