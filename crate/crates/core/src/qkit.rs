//! q-series primitives: q-shifted factorials for any integer index, infinite
//! products as truncated series, Gaussian binomials, rising factorials and
//! terminating basic hypergeometric sums.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{QSeries, Rational, Scalar};

/// `(c q^e; q)_n`, the q-shifted factorial with base written as `c q^e`.
///
/// For `n >= 0` this is `prod_{k=0}^{n-1} (1 - c q^(e+k))`; for `n < 0` it is
/// `1 / prod_{k=n}^{-1} (1 - c q^(e+k))`. Keeping the q-power as an integer
/// lets series callers avoid ever forming `q^-1`.
pub fn qpoch_shifted<S: Scalar>(c: &S, e: i64, q: &S, n: i64) -> Result<S> {
    if n >= 0 {
        let mut acc = S::one();
        for k in 0..n {
            acc = acc * (c.clone() * q.powi(e + k)?).one_minus();
        }
        Ok(acc)
    } else {
        let mut den = S::one();
        for k in n..0 {
            den = den * (c.clone() * q.powi(e + k)?).one_minus();
        }
        if den.is_zero() {
            return Err(Error::Pole(format!(
                "({c} q^{e}; q)_{n} has a vanishing factor"
            )));
        }
        den.try_inv()
    }
}

/// `(a; q)_n` for any integer `n`.
pub fn qpoch<S: Scalar>(a: &S, q: &S, n: i64) -> Result<S> {
    qpoch_shifted(a, 0, q, n)
}

/// `(c q^e; q)_inf` modulo `q^(K+1)`.
pub fn qpoch_inf_series(c: &Rational, e: i64, order: usize) -> Result<QSeries> {
    if e <= 0 {
        return Err(Error::NonTruncatable(format!(
            "(c q^{e}; q)_inf with non-positive q-exponent"
        )));
    }
    let mut acc = QSeries::new(vec![Rational::one()], order);
    if c.is_zero() {
        return Ok(acc);
    }
    let mut k = e as usize;
    while k <= order {
        acc = acc.checked_mul(&(QSeries::one() - QSeries::monomial(c.clone(), k, order)))?;
        k += 1;
    }
    Ok(acc)
}

/// Gaussian binomial `[n, k]_q`, zero outside `0 <= k <= n`.
///
/// Built from the q-Pascal recurrence, so it never divides and is valid at
/// `q = 1` and for exact polynomial `q`.
pub fn qbinom<S: Scalar>(n: i64, k: i64, q: &S) -> Result<S> {
    if k < 0 || n < 0 || k > n {
        return Ok(S::zero());
    }
    let k = k.min(n - k) as usize;
    let n = n as usize;
    // row[j] = [m, j]_q for the current m
    let mut row: Vec<S> = vec![S::zero(); k + 1];
    row[0] = S::one();
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            row[j] = row[j - 1].clone() + q.powi(j as i64)? * row[j].clone();
        }
    }
    // [n,k] = [n,n-k]; the recurrence above produced [n, min(k, n-k)]
    Ok(row[k].clone())
}

/// Rising factorial `(alpha)_n` for any integer `n`.
pub fn rising<S: Scalar>(alpha: &S, n: i64) -> Result<S> {
    if n >= 0 {
        let mut acc = S::one();
        for i in 0..n {
            acc = acc * (alpha.clone() + S::from_int(i));
        }
        Ok(acc)
    } else {
        let mut den = S::one();
        for i in 1..=(-n) {
            den = den * (alpha.clone() + S::from_int(i + n - 1));
        }
        if den.is_zero() {
            return Err(Error::Pole(format!("({alpha})_{n} has a vanishing factor")));
        }
        den.try_inv()
    }
}

/// Terminating `_{r+1}phi_r` summed over `0..=terms`.
pub fn phi_terminating<S: Scalar>(
    num_params: &[S],
    den_params: &[S],
    q: &S,
    z: &S,
    terms: usize,
) -> Result<S> {
    let mut sum = S::one();
    let mut term = S::one();
    for n in 0..terms as i64 {
        let mut num = z.clone();
        for a in num_params {
            num = num * (a.clone() * q.powi(n)?).one_minus();
        }
        let mut den = q.powi(n + 1)?.one_minus();
        for b in den_params {
            den = den * (b.clone() * q.powi(n)?).one_minus();
        }
        if den.is_zero() {
            return Err(Error::Pole(format!("phi denominator vanishes at term {}", n + 1)));
        }
        term = term * num.try_div(&den)?;
        sum = sum + term.clone();
    }
    Ok(sum)
}

/// Checks `sum_k (a;q)_k/(q;q)_k x^k = (ax;q)_inf/(x;q)_inf` coefficientwise
/// modulo `q^(K+1)` with `x = q^x_exp`.
pub fn check_q_binomial_theorem(a: &Rational, x_exp: i64, order: usize) -> Result<bool> {
    if x_exp < 1 {
        return Err(Error::NonTruncatable(format!("x = q^{x_exp}")));
    }
    let q = QSeries::var(order);
    let a_s = QSeries::constant(a.clone());
    let mut lhs = QSeries::new(Vec::new(), order);
    let mut k = 0i64;
    while (k * x_exp) as usize <= order {
        let term = qpoch(&a_s, &q, k)?
            .checked_mul(&qpoch(&q, &q, k)?.invert()?)?
            .mul_q_power((k * x_exp) as usize);
        lhs = lhs.checked_add(&term)?;
        k += 1;
    }
    let rhs = qpoch_inf_series(a, x_exp, order)?
        .checked_mul(&qpoch_inf_series(&Rational::one(), x_exp, order)?.invert()?)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, sample_rational, trial_rng};
    use num_bigint::BigInt;

    fn r(p: i64, s: i64) -> Rational {
        rat(p, s).unwrap()
    }

    fn binomial(n: u64, k: u64) -> BigInt {
        (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn qpoch_examples() {
        let (a, q) = (r(2, 3), r(1, 5));
        assert_eq!(qpoch(&a, &q, 0).unwrap(), Rational::one());
        assert_eq!(
            qpoch(&a, &q, 2).unwrap(),
            (Rational::one() - &a) * (Rational::one() - &a * &q)
        );
        // (a;q)_{-1} = 1/(1 - a/q)
        assert_eq!(
            qpoch(&a, &q, -1).unwrap(),
            (Rational::one() - &a / &q).recip()
        );
        // a/q = 1 is a pole
        assert!(matches!(qpoch(&q, &q, -1), Err(Error::Pole(_))));
    }

    #[test]
    fn qpoch_inf_examples() {
        assert_eq!(qpoch_inf_series(&r(0, 1), 1, 4).unwrap(), QSeries::from_ints(&[1], 4));
        assert_eq!(
            qpoch_inf_series(&r(1, 1), 1, 2).unwrap(),
            QSeries::from_ints(&[1, -1, -1], 2)
        );
        assert_eq!(qpoch_inf_series(&r(3, 1), 5, 4).unwrap(), QSeries::from_ints(&[1], 4));
        assert!(qpoch_inf_series(&r(1, 1), 0, 4).is_err());
    }

    #[test]
    fn qpoch_inf_matches_finite_products() {
        let c = r(-2, 3);
        for e in 1..4 {
            let order = 9;
            let q = QSeries::var(order);
            let finite = qpoch_shifted(&QSeries::constant(c.clone()), e, &q, order as i64).unwrap();
            assert_eq!(qpoch_inf_series(&c, e, order).unwrap(), finite);
        }
    }

    #[test]
    fn qbinom_examples() {
        let q = r(3, 7);
        assert_eq!(qbinom(2, 1, &q).unwrap(), Rational::one() + &q);
        assert_eq!(qbinom(9, 0, &q).unwrap(), Rational::one());
        assert_eq!(qbinom(3, 5, &q).unwrap(), Rational::zero());
        assert_eq!(qbinom(3, -1, &q).unwrap(), Rational::zero());
        // q = 1 limit is the ordinary binomial
        for n in 0..8u64 {
            for k in 0..=n {
                assert_eq!(
                    qbinom(n as i64, k as i64, &Rational::one()).unwrap(),
                    Rational::from_integer(binomial(n, k))
                );
            }
        }
    }

    #[test]
    fn qbinom_matches_product_formula() {
        let q = r(-2, 5);
        for n in 0..7 {
            for k in 0..=n {
                let prod = qpoch(&q, &q, n).unwrap()
                    / (qpoch(&q, &q, k).unwrap() * qpoch(&q, &q, n - k).unwrap());
                assert_eq!(qbinom(n, k, &q).unwrap(), prod);
                assert_eq!(qbinom(n, k, &q).unwrap(), qbinom(n, n - k, &q).unwrap());
            }
        }
    }

    #[test]
    fn rising_examples() {
        let alpha = r(5, 2);
        assert_eq!(rising(&alpha, 0).unwrap(), Rational::one());
        assert_eq!(rising(&r(3, 1), 2).unwrap(), r(12, 1));
        assert_eq!(
            rising(&alpha, -1).unwrap(),
            (&alpha - Rational::one()).recip()
        );
        assert!(rising(&r(1, 1), -1).is_err());
        // (alpha)_{m+n} = (alpha)_m (alpha+m)_n
        for m in -3..4i64 {
            for n in -3..4i64 {
                let lhs = rising(&alpha, m + n).unwrap();
                let rhs = rising(&alpha, m).unwrap()
                    * rising(&(&alpha + Rational::from_int(m)), n).unwrap();
                assert_eq!(lhs, rhs, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn phi_trivial_cases() {
        let q = r(1, 3);
        let p = [r(2, 5), q.powi(-3).unwrap()];
        let d = [r(1, 7)];
        assert_eq!(phi_terminating(&p, &d, &q, &Rational::zero(), 5).unwrap(), Rational::one());
        assert_eq!(phi_terminating(&p, &d, &q, &r(3, 2), 0).unwrap(), Rational::one());
    }

    #[test]
    fn q_dougall_by_phi() {
        // 6phi5 with a = 1/4 (so sqrt(a) = 1/2), b = 1/3, c = 1/5, n = 2, q = 1/7
        let (a, sa, b, c, q) = (r(1, 4), r(1, 2), r(1, 3), r(1, 5), r(1, 7));
        let n = 2i64;
        let qn = q.powi(-n).unwrap();
        let num = [a.clone(), &q * &sa, -(&q * &sa), b.clone(), c.clone(), qn];
        let den = [
            sa.clone(),
            -sa.clone(),
            &a * &q / &b,
            &a * &q / &c,
            &a * q.powi(n + 1).unwrap(),
        ];
        let z = &a * q.powi(n + 1).unwrap() / (&b * &c);
        let lhs = phi_terminating(&num, &den, &q, &z, n as usize).unwrap();
        let rhs = qpoch(&(&a * &q), &q, n).unwrap() * qpoch(&(&a * &q / (&b * &c)), &q, n).unwrap()
            / (qpoch(&(&a * &q / &b), &q, n).unwrap() * qpoch(&(&a * &q / &c), &q, n).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_binomial_theorem() {
        assert!(check_q_binomial_theorem(&r(0, 1), 1, 8).unwrap());
        assert!(check_q_binomial_theorem(&r(0, 1), 3, 8).unwrap());
        let mut rng = trial_rng(11, 0);
        for x_exp in 1..4 {
            let a = sample_rational(&mut rng, 7, |_| false).unwrap();
            assert!(check_q_binomial_theorem(&a, x_exp, 10).unwrap());
        }
        assert!(check_q_binomial_theorem(&r(1, 1), 0, 8).is_err());
    }

    #[test]
    fn q_binomial_theorem_at_a_equal_q() {
        // a = q is not a constant, so check the telescoped form directly:
        // sum_k (q;q)_k/(q;q)_k x^k = 1/(1 - x)
        let order = 8;
        let q = QSeries::var(order);
        let x = QSeries::monomial(Rational::one(), 2, order);
        let mut lhs = QSeries::new(vec![], order);
        for k in 0..=4 {
            let t = qpoch(&q, &q, k).unwrap() * qpoch(&q, &q, k).unwrap().invert().unwrap();
            lhs = lhs + t * x.powi(k).unwrap();
        }
        assert_eq!(lhs, (QSeries::one() - x).invert().unwrap());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rat() -> impl Strategy<Value = Rational> {
            (1i64..=7, 1i64..=7, any::<bool>())
                .prop_map(|(p, s, neg)| rat(if neg { -p } else { p }, s).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn qpoch_splits(a in small_rat(), q in small_rat(), m in -4i64..=4, n in -4i64..=4) {
                prop_assume!(q != Rational::one() && q != -Rational::one());
                let whole = qpoch(&a, &q, m + n);
                let first = qpoch(&a, &q, m);
                let second = qpoch(&(&a * q.powi(m).unwrap()), &q, n);
                if let (Ok(w), Ok(f), Ok(s)) = (whole, first, second) {
                    prop_assert_eq!(w, f * s);
                }
            }

            #[test]
            fn qpoch_negative_index_inverts(a in small_rat(), q in small_rat(), n in 0i64..=5) {
                let fwd = qpoch(&a, &q, n).unwrap();
                if let Ok(back) = qpoch(&(&a * q.powi(n).unwrap()), &q, -n) {
                    prop_assert_eq!(fwd * back, Rational::one());
                }
            }

            #[test]
            fn q_pascal(q in small_rat(), n in 1i64..=8, k in 0i64..=8) {
                let lhs = qbinom(n, k, &q).unwrap();
                let rhs = qbinom(n - 1, k - 1, &q).unwrap()
                    + q.powi(k).unwrap() * qbinom(n - 1, k, &q).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
