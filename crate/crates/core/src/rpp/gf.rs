//! Truncated generating functions of shifted RPPs and tableaux with fixed
//! shape and profile.

use num_traits::One;

use super::{Profile, StrictPartition};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::qkit::{qbinom, qpoch_shifted};
use crate::scalar::{QSeries, Rational, Scalar};

/// Largest shape enumerated by brute force.
pub const BRUTE_CELL_GUARD: usize = 16;
/// Largest truncation order for brute force.
pub const BRUTE_ORDER_GUARD: usize = 12;

struct Enumerator<'a> {
    cells: Vec<(usize, usize)>,
    index: Vec<Vec<usize>>,
    profile: &'a [usize],
    strict: bool,
    order: usize,
    rest_min: Vec<usize>,
    counts: Vec<u64>,
}

impl Enumerator<'_> {
    fn run(&mut self, pos: usize, values: &mut Vec<usize>, weight: usize) {
        if pos == self.cells.len() {
            self.counts[weight] += 1;
            return;
        }
        let (i, off) = self.cells[pos];
        let mut lo = if off > 0 { values[self.index[i][off - 1]] } else { 0 };
        // cell above: row i-1, same column i+off, offset off+1
        if i > 0 {
            if let Some(&up) = self.index[i - 1].get(off + 1) {
                lo = lo.max(values[up] + usize::from(self.strict));
            }
        }
        let range = if off == 0 {
            let v = self.profile[i];
            if v < lo {
                return;
            }
            v..=v
        } else {
            lo..=self.order
        };
        for v in range {
            let w = weight + v;
            if w + self.rest_min[pos] > self.order {
                break;
            }
            values.push(v);
            self.run(pos + 1, values, w);
            values.pop();
        }
    }
}

fn enumerate(shape: &StrictPartition, profile: &[usize], order: usize, strict: bool) -> Result<QSeries> {
    if profile.len() != shape.len() {
        return Err(Error::Shape(format!(
            "profile of length {} for a shape of length {}",
            profile.len(),
            shape.len()
        )));
    }
    if shape.cells() > BRUTE_CELL_GUARD || order > BRUTE_ORDER_GUARD {
        return Err(Error::Guard(format!(
            "brute force limited to {BRUTE_CELL_GUARD} cells and order {BRUTE_ORDER_GUARD}"
        )));
    }
    let mut cells = Vec::new();
    let mut index = Vec::new();
    for (i, &len) in shape.parts().iter().enumerate() {
        let mut row = Vec::new();
        for off in 0..len {
            row.push(cells.len());
            cells.push((i, off));
        }
        index.push(row);
    }
    let mut rest_min = vec![0; cells.len()];
    for pos in (0..cells.len()).rev() {
        let next = if pos + 1 < cells.len() { rest_min[pos + 1] + profile[cells[pos + 1].0] } else { 0 };
        rest_min[pos] = next;
    }
    let mut e = Enumerator {
        cells,
        index,
        profile,
        strict,
        order,
        rest_min,
        counts: vec![0; order + 1],
    };
    e.run(0, &mut Vec::new(), 0);
    let coeffs = e.counts.iter().map(|&c| Rational::from_integer(c.into())).collect();
    Ok(QSeries::new(coeffs, order))
}

/// `Σ q^|π|` over shifted RPPs of the given shape and profile, by enumeration.
pub fn gf_rpp_bruteforce(shape: &StrictPartition, profile: &Profile, order: usize) -> Result<QSeries> {
    enumerate(shape, profile.values(), order, false)
}

/// `Σ q^|π|` over shifted tableaux of the given shape and profile, by enumeration.
pub fn gf_tableaux_bruteforce(shape: &StrictPartition, mu: &[usize], order: usize) -> Result<QSeries> {
    enumerate(shape, mu, order, true)
}

fn check_mu(shape: &StrictPartition, mu: &[usize]) -> Result<()> {
    if mu.len() != shape.len() {
        return Err(Error::Shape(format!(
            "profile of length {} for a shape of length {}",
            mu.len(),
            shape.len()
        )));
    }
    if mu.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Shape(format!("tableau profile {mu:?} is not strictly increasing")));
    }
    Ok(())
}

/// `det(q^(λ_i μ_j) / (q;q)_{λ_i - 1})` modulo `q^(order+1)`.
pub fn gf_tableaux_det(shape: &StrictPartition, mu: &[usize], order: usize) -> Result<QSeries> {
    check_mu(shape, mu)?;
    let q = QSeries::var(order);
    let one = QSeries::one();
    let inv: Vec<QSeries> = shape
        .parts()
        .iter()
        .map(|&l| qpoch_shifted(&one, 1, &q, l as i64 - 1)?.try_inv())
        .collect::<Result<_>>()?;
    let n = shape.len();
    let m = Matrix::from_fn(n, n, |i, j| {
        let e = shape.parts()[i] * mu[j];
        QSeries::monomial(Rational::one(), e, order) * inv[i].clone()
    });
    m.det_division_free()
}

/// Tableaux with every part at most `N`:
/// `det(q^(λ_i μ_j) [λ_i - 1 + N - μ_j, λ_i - 1]_q)`.
pub fn gf_tableaux_det_finite_n<S: Scalar>(
    shape: &StrictPartition,
    mu: &[usize],
    big_n: usize,
    q: &S,
) -> Result<S> {
    check_mu(shape, mu)?;
    if mu.iter().any(|&m| m > big_n) {
        return Err(Error::Domain(format!("N = {big_n} below a profile entry")));
    }
    let n = shape.len();
    let m = Matrix::try_from_fn(n, n, |i, j| {
        let l = shape.parts()[i] as i64;
        let mj = mu[j] as i64;
        Ok(q.powi(l * mj)? * qbinom(l - 1 + big_n as i64 - mj, l - 1, q)?)
    })?;
    m.det_division_free()
}

/// `GF(R_{λ,ν}) = q^(-n(λ)) GF(T_{λ,ν+ε})`, through the determinant.
pub fn gf_rpp(shape: &StrictPartition, nu: &Profile, order: usize) -> Result<QSeries> {
    let nl = shape.n_lambda();
    gf_tableaux_det(shape, &nu.plus_epsilon(), order + nl)?.div_q_power(nl)
}

/// `GF(T_{λ,ν+ε}) = q^n(λ) GF(R_{λ,ν})` with the left side from the
/// determinant and the right side by enumeration.
pub fn check_gf_rel(shape: &StrictPartition, nu: &Profile, order: usize) -> Result<bool> {
    let nl = shape.n_lambda();
    let t = gf_tableaux_det(shape, &nu.plus_epsilon(), order + nl)?;
    let r = gf_rpp_bruteforce(shape, nu, order)?;
    Ok(match t.div_q_power(nl) {
        Ok(shifted) => shifted == r,
        Err(Error::NonTruncatable(_)) => false,
        Err(e) => return Err(e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sh(p: &[usize]) -> StrictPartition {
        StrictPartition::new(p.to_vec()).unwrap()
    }

    fn pr(p: &[usize]) -> Profile {
        Profile::new(p.to_vec()).unwrap()
    }

    fn ints(s: &QSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn hand_enumerations() {
        assert_eq!(ints(&gf_rpp_bruteforce(&sh(&[1]), &pr(&[3]), 5).unwrap()), vec![0, 0, 0, 1, 0, 0]);
        assert_eq!(ints(&gf_rpp_bruteforce(&sh(&[2, 1]), &pr(&[0, 0]), 3).unwrap()), vec![1, 0, 0, 0]);
        assert_eq!(
            ints(&gf_rpp_bruteforce(&sh(&[2, 1]), &pr(&[0, 2]), 6).unwrap()),
            vec![0, 0, 1, 1, 1, 0, 0]
        );
    }

    #[test]
    fn guards() {
        let big = sh(&[6, 5, 4, 2]);
        assert!(matches!(gf_rpp_bruteforce(&big, &pr(&[0, 0, 0, 0]), 4), Err(Error::Guard(_))));
        assert!(matches!(gf_rpp_bruteforce(&sh(&[1]), &pr(&[0]), 13), Err(Error::Guard(_))));
        assert!(matches!(gf_rpp_bruteforce(&sh(&[2, 1]), &pr(&[0]), 4), Err(Error::Shape(_))));
    }

    #[test]
    fn determinant_matches_enumeration() {
        assert_eq!(gf_tableaux_det(&sh(&[1]), &[3], 6).unwrap(), QSeries::monomial(Rational::one(), 3, 6));
        for (shape, mu) in [(&[2usize, 1][..], &[0usize, 1][..]), (&[3, 1], &[0, 2]), (&[4, 2, 1], &[0, 1, 2])] {
            let s = sh(shape);
            assert_eq!(gf_tableaux_det(&s, mu, 8).unwrap(), gf_tableaux_bruteforce(&s, mu, 8).unwrap());
        }
    }

    #[test]
    fn gf_relation_examples() {
        assert!(check_gf_rel(&sh(&[2, 1]), &pr(&[0, 0]), 6).unwrap());
        assert!(check_gf_rel(&sh(&[3, 2, 1]), &pr(&[0, 0, 0]), 8).unwrap());
        assert!(check_gf_rel(&sh(&[1]), &pr(&[2]), 8).unwrap());
    }

    #[test]
    fn finite_n_counts() {
        let q = QSeries::exact_var();
        let s = gf_tableaux_det_finite_n(&sh(&[1]), &[0], 2, &q).unwrap();
        assert_eq!(s, QSeries::constant(Rational::one()));
        let s = gf_tableaux_det_finite_n(&sh(&[2]), &[0], 2, &q).unwrap();
        assert_eq!(s, QSeries::exact(vec![Rational::one(); 3]));
    }

    #[test]
    fn finite_n_stabilises() {
        let s = sh(&[3, 1]);
        let mu = [0, 2];
        let limit = gf_tableaux_det(&s, &mu, 8).unwrap();
        let q = QSeries::var(8);
        assert_eq!(gf_tableaux_det_finite_n(&s, &mu, 9, &q).unwrap(), limit);
        assert_ne!(gf_tableaux_det_finite_n(&s, &mu, 3, &q).unwrap(), limit);
    }
}
