//! Dense square and rectangular matrices over a [`Scalar`].

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    /// Builds a matrix from a 0-based entry function.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn try_from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<S>,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j)?);
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Submatrix on 0-based row and column lists (in the given order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Swaps rows `a` and `b`.
    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    ///
    /// Every division is exact in theory; with a field scalar it is also exact
    /// in practice. Over series the pivots must be units.
    pub fn det_bareiss(&self) -> Result<S> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(S::one());
        }
        let mut m = self.clone();
        let mut sign = S::one();
        let mut prev = S::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(S::zero()),
                }
            }
            let pivot = m.get(k, k).clone();
            let inv_prev = prev.try_inv()?;
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (pivot.clone() * m.get(i, j).clone()
                        - m.get(i, k).clone() * m.get(k, j).clone())
                        * inv_prev.clone();
                    m.set(i, j, v);
                }
                m.set(i, k, S::zero());
            }
            prev = pivot;
        }
        Ok(sign * m.get(n - 1, n - 1).clone())
    }

    /// Determinant without any division: Laplace expansion along rows,
    /// memoized on the set of remaining columns. Cost `O(n 2^n)`.
    pub fn det_division_free(&self) -> Result<S> {
        self.require_square()?;
        let n = self.rows;
        if n > 24 {
            return Err(Error::Guard(format!("division-free determinant with n = {n} > 24")));
        }
        // value[mask] = det of rows (n - |mask|)..n restricted to the columns in mask
        let mut memo: HashMap<u32, S> = HashMap::new();
        memo.insert(0, S::one());
        fn go<S: Scalar>(m: &Matrix<S>, mask: u32, memo: &mut HashMap<u32, S>) -> S {
            if let Some(v) = memo.get(&mask) {
                return v.clone();
            }
            let row = m.rows - mask.count_ones() as usize;
            let mut acc = S::zero();
            let mut seen = 0;
            for j in 0..m.cols {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let a = m.get(row, j);
                if !a.is_zero() {
                    let sub = go(m, mask & !(1 << j), memo);
                    let term = a.clone() * sub;
                    acc = if seen % 2 == 0 { acc + term } else { acc - term };
                }
                seen += 1;
            }
            memo.insert(mask, acc.clone());
            acc
        }
        let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
        Ok(go(self, full, &mut memo))
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Interchange form of a square rational matrix: `{"n": .., "entries": [[..]]}`
/// with every entry a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &Matrix<Rational>) -> Self {
        MatrixJson {
            n: m.rows(),
            entries: (0..m.rows())
                .map(|i| m.row(i).iter().map(format_rational).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix<Rational>> {
        if self.entries.len() != self.n || self.entries.iter().any(|r| r.len() != self.n) {
            return Err(Error::Dimension(format!(
                "declared n = {} does not match the entries",
                self.n
            )));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if self.n == 0 {
            return Ok(Matrix::zeros(0, 0));
        }
        Matrix::from_rows(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    use crate::scalar::{rat, sample_rational, trial_rng, QSeries};

    fn r(p: i64) -> Rational {
        Rational::from_int(p)
    }

    fn random(n: usize, seed: u64) -> Matrix<Rational> {
        let mut rng = trial_rng(seed, 0);
        Matrix::from_fn(n, n, |_, _| sample_rational(&mut rng, 7, |_| false).unwrap())
    }

    fn leibniz(m: &Matrix<Rational>) -> Rational {
        // permutation expansion, the slowest and plainest oracle
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.rows();
        let mut acc = Rational::from_int(0);
        for p in perms(n) {
            let inv = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut t = Rational::from_int(if inv % 2 == 0 { 1 } else { -1 });
            for (i, &pi) in p.iter().enumerate() {
                t *= m.get(i, pi);
            }
            acc += t;
        }
        acc
    }

    #[test]
    fn small_determinants() {
        let m = Matrix::from_rows(vec![vec![r(1), r(2)], vec![r(3), r(4)]]).unwrap();
        assert_eq!(m.det_bareiss().unwrap(), r(-2));
        assert_eq!(m.det_division_free().unwrap(), r(-2));
        assert_eq!(Matrix::<Rational>::identity(5).det_bareiss().unwrap(), r(1));
        assert_eq!(Matrix::<Rational>::zeros(0, 0).det_bareiss().unwrap(), r(1));
        assert_eq!(Matrix::<Rational>::zeros(0, 0).det_division_free().unwrap(), r(1));
    }

    #[test]
    fn determinants_match_leibniz() {
        for seed in 0..10 {
            for n in 1..=5 {
                let m = random(n, seed * 10 + n as u64);
                let want = leibniz(&m);
                assert_eq!(m.det_bareiss().unwrap(), want);
                assert_eq!(m.det_division_free().unwrap(), want);
            }
        }
    }

    #[test]
    fn zero_pivot_needs_row_swap() {
        let m = Matrix::from_rows(vec![
            vec![r(0), r(1), r(2)],
            vec![r(1), r(0), r(3)],
            vec![r(4), r(5), r(6)],
        ])
        .unwrap();
        assert_eq!(m.det_bareiss().unwrap(), leibniz(&m));
        let singular = Matrix::from_rows(vec![vec![r(1), r(2)], vec![r(2), r(4)]]).unwrap();
        assert_eq!(singular.det_bareiss().unwrap(), r(0));
    }

    #[test]
    fn product_and_transpose() {
        let a = random(3, 1);
        let b = random(3, 2);
        let ab = a.mul(&b).unwrap();
        assert_eq!(
            ab.det_bareiss().unwrap(),
            a.det_bareiss().unwrap() * b.det_bareiss().unwrap()
        );
        assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()).unwrap());
        assert!(a.mul(&Matrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn series_determinant() {
        // det [[1, q], [q, 1]] = 1 - q^2
        let k = 4;
        let q = QSeries::var(k);
        let m = Matrix::from_rows(vec![
            vec![QSeries::one(), q.clone()],
            vec![q.clone(), QSeries::one()],
        ])
        .unwrap();
        assert_eq!(m.det_division_free().unwrap(), QSeries::from_ints(&[1, 0, -1], k));
        assert_eq!(m.det_bareiss().unwrap(), QSeries::from_ints(&[1, 0, -1], k));
    }

    #[test]
    fn json_roundtrip() {
        let m = Matrix::from_rows(vec![
            vec![r(0), rat(1, 2).unwrap()],
            vec![rat(-1, 2).unwrap(), r(0)],
        ])
        .unwrap();
        let j = MatrixJson::from_matrix(&m);
        assert_eq!(j.entries[0][1], "1/2");
        assert_eq!(j.to_matrix().unwrap(), m);
        let bad = MatrixJson {
            n: 3,
            entries: j.entries.clone(),
        };
        assert!(bad.to_matrix().is_err());
    }
}
