//! Moment sequences and the skew matrices built from them.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qkit::{qbinom, qpoch, rising};
use crate::scalar::{Rational, Scalar};
use crate::skewpf::SkewMatrix;

/// `n!` for `n >= 0`.
pub fn factorial(n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::Domain(format!("{n}!")));
    }
    Ok((1..=n).fold(BigInt::one(), |acc, k| acc * k))
}

/// `n!! = n (n-2) (n-4) ..`, with `0!! = (-1)!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigInt> {
    if n < -1 {
        return Err(Error::Domain(format!("{n}!!")));
    }
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    Ok(acc)
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn int<S: Scalar>(x: BigInt) -> S {
    S::from_rational(&Rational::from_integer(x))
}

#[derive(Clone, Debug, PartialEq)]
pub enum SequenceKind<S> {
    /// `(aq;q)_n / (abq^2;q)_n`, any integer `n`.
    LittleQJacobi { a: S, b: S, q: S },
    /// `(alpha+1)_n / (alpha+beta+2)_n`, the `q -> 1` limit of the above.
    Jacobi { alpha: S, beta: S },
    Catalan,
    CentralBinomial,
    /// `(alpha+1)_n`.
    LaguerreMoment { alpha: S },
    /// `1 * 3 * .. * (2n+1)`.
    HermiteMoment,
    Motzkin,
    CentralDelannoy,
    Schroeder,
    /// `N_n(a)`, with `N_0 = 1`.
    NarayanaPoly { a: S },
    /// `G_n(a;q) = sum_k [n,k]_q a^k`, with `G_{-1} = 0`.
    AlSalamCarlitz { a: S, q: S },
    /// `binom(3n, n) / (2n+1)`.
    ThreeHalvesCatalan,
}

impl<S: Scalar> SequenceKind<S> {
    pub fn name(&self) -> &'static str {
        match self {
            SequenceKind::LittleQJacobi { .. } => "little-q-jacobi",
            SequenceKind::Jacobi { .. } => "jacobi",
            SequenceKind::Catalan => "catalan",
            SequenceKind::CentralBinomial => "central-binomial",
            SequenceKind::LaguerreMoment { .. } => "laguerre",
            SequenceKind::HermiteMoment => "hermite",
            SequenceKind::Motzkin => "motzkin",
            SequenceKind::CentralDelannoy => "delannoy",
            SequenceKind::Schroeder => "schroeder",
            SequenceKind::NarayanaPoly { .. } => "narayana",
            SequenceKind::AlSalamCarlitz { .. } => "al-salam-carlitz",
            SequenceKind::ThreeHalvesCatalan => "three-halves-catalan",
        }
    }

    /// The `n`-th term.
    pub fn moment(&self, n: i64) -> Result<S> {
        let nonneg = || {
            if n < 0 {
                Err(Error::Domain(format!("{} is undefined at n = {n}", self.name())))
            } else {
                Ok(())
            }
        };
        match self {
            SequenceKind::LittleQJacobi { a, b, q } => {
                let num = qpoch(&(a.clone() * q.clone()), q, n)?;
                let den = qpoch(&(a.clone() * b.clone() * q.clone() * q.clone()), q, n)?;
                num.try_div(&den)
            }
            SequenceKind::Jacobi { alpha, beta } => {
                let num = rising(&(alpha.clone() + S::one()), n)?;
                let den = rising(&(alpha.clone() + beta.clone() + S::from_int(2)), n)?;
                num.try_div(&den)
            }
            SequenceKind::Catalan => {
                nonneg()?;
                Ok(int(binomial(2 * n, n) / (n + 1)))
            }
            SequenceKind::CentralBinomial => {
                nonneg()?;
                Ok(int(binomial(2 * n, n)))
            }
            SequenceKind::LaguerreMoment { alpha } => {
                nonneg()?;
                rising(&(alpha.clone() + S::one()), n)
            }
            SequenceKind::HermiteMoment => {
                nonneg()?;
                Ok(int(double_factorial(2 * n + 1)?))
            }
            SequenceKind::Motzkin => {
                nonneg()?;
                let s: BigInt = (0..=n)
                    .map(|k| binomial(n, 2 * k) * binomial(2 * k, k) / (k + 1))
                    .sum();
                Ok(int(s))
            }
            SequenceKind::CentralDelannoy => {
                nonneg()?;
                let s: BigInt = (0..=n).map(|k| binomial(n, k) * binomial(n + k, k)).sum();
                Ok(int(s))
            }
            SequenceKind::Schroeder => {
                nonneg()?;
                let s: BigInt = (0..=n)
                    .map(|k| binomial(n + k, 2 * k) * binomial(2 * k, k) / (k + 1))
                    .sum();
                Ok(int(s))
            }
            SequenceKind::NarayanaPoly { a } => {
                nonneg()?;
                if n == 0 {
                    return Ok(S::one());
                }
                let mut acc = S::zero();
                for k in 0..=n {
                    let c = binomial(n, k) * binomial(n, k - 1) / n;
                    if !c.is_zero() {
                        acc = acc + int::<S>(c) * a.powi(k)?;
                    }
                }
                Ok(acc)
            }
            SequenceKind::AlSalamCarlitz { a, q } => {
                if n == -1 {
                    return Ok(S::zero());
                }
                nonneg()?;
                let mut acc = S::zero();
                for k in 0..=n {
                    acc = acc + qbinom(n, k, q)? * a.powi(k)?;
                }
                Ok(acc)
            }
            SequenceKind::ThreeHalvesCatalan => {
                nonneg()?;
                Ok(int(binomial(3 * n, n) / (2 * n + 1)))
            }
        }
    }
}

/// Antisymmetric factor in front of the moment.
#[derive(Clone, Debug, PartialEq)]
pub enum Weight<S> {
    /// `j - i`.
    Linear,
    /// `q^(i-1) - q^(j-1)`.
    QPower(S),
}

/// Skew matrix of size `size` with 1-based entries
/// `weight(i, j) * moment(i + j + shift)`.
///
/// The usual matrices take `shift = r - 2`; the catalog also uses `-3`, `-2`
/// and `-1`. Only `i < j` is evaluated, so the diagonal index is never
/// queried.
pub fn moment_matrix<S: Scalar>(
    kind: &SequenceKind<S>,
    size: usize,
    shift: i64,
    weight: &Weight<S>,
) -> Result<SkewMatrix<S>> {
    SkewMatrix::try_from_upper(size, |i0, j0| {
        let (i, j) = (i0 as i64 + 1, j0 as i64 + 1);
        let w = match weight {
            Weight::Linear => S::from_int(j - i),
            Weight::QPower(q) => q.powi(i - 1)? - q.powi(j - 1)?,
        };
        let mu = kind.moment(i + j + shift).map_err(|e| match e {
            Error::Domain(msg) => Error::Domain(format!("{msg} (entry ({i}, {j}), shift {shift})")),
            other => other,
        })?;
        Ok(w * mu)
    })
}
