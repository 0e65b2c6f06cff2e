//! Skew-symmetric matrices and their Pfaffians.
//!
//! Entries are stored 0-based; [`IndexSet`] and the subpfaffian helpers use
//! 1-based row/column labels.

use std::collections::HashMap;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, MatrixJson};
use crate::scalar::{sample_rational, sign, Rational, Scalar, TrialRng};

/// Largest dimension accepted by [`SkewMatrix::pf_combinatorial`].
pub const COMBINATORIAL_GUARD: usize = 12;

/// Largest dimension accepted by [`SkewMatrix::pf_expansion`].
pub const EXPANSION_GUARD: usize = 26;

#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrix<S> {
    m: Matrix<S>,
}

/// Strictly increasing list of 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(idx: Vec<usize>) -> Result<Self> {
        if idx.first() == Some(&0) {
            return Err(Error::IndexSet("indices are 1-based".into()));
        }
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::IndexSet(format!("{idx:?} is not strictly increasing")));
        }
        Ok(IndexSet(idx))
    }

    /// `[k] = {1, .., k}`.
    pub fn prefix(k: usize) -> Self {
        IndexSet((1..=k).collect())
    }

    /// `[k]` followed by `extra`, which must continue increasing.
    pub fn prefix_with(k: usize, extra: &[usize]) -> Result<Self> {
        let mut v: Vec<usize> = (1..=k).collect();
        v.extend_from_slice(extra);
        Self::new(v)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Pfaffian algorithm selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PfAlgorithm {
    Combinatorial,
    Expansion,
    Elimination,
}

impl FromStr for PfAlgorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "combinatorial" => Ok(PfAlgorithm::Combinatorial),
            "expansion" => Ok(PfAlgorithm::Expansion),
            "elimination" => Ok(PfAlgorithm::Elimination),
            _ => Err(Error::Parse(format!("unknown Pfaffian algorithm {s:?}"))),
        }
    }
}

impl<S: Scalar> SkewMatrix<S> {
    /// Wraps a square matrix, rejecting the first `(i, j)` with
    /// `a[i][j] != -a[j][i]`.
    pub fn new(m: Matrix<S>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!("{}x{} is not square", m.rows(), m.cols())));
        }
        for i in 0..m.rows() {
            for j in i..m.cols() {
                if *m.get(i, j) != -m.get(j, i).clone() {
                    return Err(Error::NotSkew { i, j });
                }
            }
        }
        Ok(SkewMatrix { m })
    }

    /// Builds the skew matrix whose strict upper triangle is `f(i, j)`, `i < j`
    /// 0-based.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        Self::try_from_upper(n, |i, j| Ok(f(i, j))).expect("infallible")
    }

    pub fn try_from_upper(
        n: usize,
        mut f: impl FnMut(usize, usize) -> Result<S>,
    ) -> Result<Self> {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j)?;
                m.set(j, i, -v.clone());
                m.set(i, j, v);
            }
        }
        Ok(SkewMatrix { m })
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &S {
        self.m.get(i, j)
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix<S> {
        self.m
    }

    /// Principal submatrix on 0-based indices, in the given order.
    pub fn restrict0(&self, idx: &[usize]) -> Self {
        SkewMatrix {
            m: self.m.select(idx, idx),
        }
    }

    /// Principal submatrix on a 1-based index set.
    pub fn restrict(&self, set: &IndexSet) -> Result<Self> {
        if set.as_slice().last().is_some_and(|&k| k > self.dim()) {
            return Err(Error::IndexSet(format!(
                "{:?} exceeds dimension {}",
                set.as_slice(),
                self.dim()
            )));
        }
        let idx: Vec<usize> = set.as_slice().iter().map(|k| k - 1).collect();
        Ok(self.restrict0(&idx))
    }

    fn require_even(&self) -> Result<()> {
        if self.dim() % 2 == 1 {
            Err(Error::OddDimension(self.dim()))
        } else {
            Ok(())
        }
    }

    /// Elimination, falling back to expansion when a pivot is not a unit
    /// (series whose constant term vanishes).
    pub fn pf(&self) -> Result<S> {
        match self.pf_elimination() {
            Err(Error::NotAUnit) => self.pf_expansion(),
            other => other,
        }
    }

    pub fn pf_with(&self, alg: PfAlgorithm) -> Result<S> {
        match alg {
            PfAlgorithm::Combinatorial => self.pf_combinatorial(),
            PfAlgorithm::Expansion => self.pf_expansion(),
            PfAlgorithm::Elimination => self.pf_elimination(),
        }
    }

    /// Signed sum over perfect matchings `{(s1,s2),(s3,s4),..}` with
    /// `s1 < s2`, `s3 < s4`, .. and `s1 < s3 < ..`; the sign is that of the
    /// permutation `s1 s2 s3 ..`.
    pub fn pf_combinatorial(&self) -> Result<S> {
        self.require_even()?;
        let n = self.dim();
        if n > COMBINATORIAL_GUARD {
            return Err(Error::Guard(format!(
                "combinatorial Pfaffian with n = {n} > {COMBINATORIAL_GUARD}"
            )));
        }
        let mut total = S::zero();
        let mut word = Vec::with_capacity(n);
        let mut used = vec![false; n];
        self.matchings(&mut word, &mut used, &mut total);
        Ok(total)
    }

    fn matchings(&self, word: &mut Vec<usize>, used: &mut [bool], total: &mut S) {
        let Some(i) = used.iter().position(|u| !u) else {
            let inversions = (0..word.len())
                .flat_map(|x| (x + 1..word.len()).map(move |y| (x, y)))
                .filter(|&(x, y)| word[x] > word[y])
                .count();
            let mut t = sign::<S>(inversions as i64);
            for pair in word.chunks(2) {
                t = t * self.get(pair[0], pair[1]).clone();
            }
            *total = total.clone() + t;
            return;
        };
        used[i] = true;
        for j in i + 1..used.len() {
            if used[j] {
                continue;
            }
            used[j] = true;
            word.push(i);
            word.push(j);
            self.matchings(word, used, total);
            word.truncate(word.len() - 2);
            used[j] = false;
        }
        used[i] = false;
    }

    /// Expansion along the first remaining row, memoized on the set of
    /// remaining indices. Division-free.
    pub fn pf_expansion(&self) -> Result<S> {
        self.require_even()?;
        let n = self.dim();
        if n > EXPANSION_GUARD {
            return Err(Error::Guard(format!(
                "Pfaffian expansion with n = {n} > {EXPANSION_GUARD}"
            )));
        }
        let mut memo: HashMap<u32, S> = HashMap::new();
        memo.insert(0, S::one());
        let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
        Ok(self.expand(full, &mut memo))
    }

    fn expand(&self, mask: u32, memo: &mut HashMap<u32, S>) -> S {
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut acc = S::zero();
        let mut pos = 0;
        for j in i + 1..self.dim() {
            if rest & (1 << j) == 0 {
                continue;
            }
            pos += 1;
            let a = self.get(i, j);
            if a.is_zero() {
                continue;
            }
            let term = a.clone() * self.expand(rest & !(1 << j), memo);
            acc = if pos % 2 == 1 { acc + term } else { acc - term };
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// Block elimination: with pivot `p = a[k][k+1]`,
    /// `Pf(A) = p * Pf(S)` where `S` is the Schur complement of the leading
    /// 2x2 block. A zero pivot is replaced by swapping index `k+1` with a
    /// later index, which negates the Pfaffian.
    pub fn pf_elimination(&self) -> Result<S> {
        self.require_even()?;
        let n = self.dim();
        let mut a = self.m.clone();
        let mut acc = S::one();
        for k in (0..n).step_by(2) {
            if a.get(k, k + 1).is_zero() {
                match (k + 2..n).find(|&j| !a.get(k, j).is_zero()) {
                    Some(j) => {
                        swap_both(&mut a, k + 1, j);
                        acc = -acc;
                    }
                    None => return Ok(S::zero()),
                }
            }
            let p = a.get(k, k + 1).clone();
            let inv = p.try_inv()?;
            acc = acc * p;
            for i in k + 2..n {
                for j in i + 1..n {
                    let upd = (a.get(i, k).clone() * a.get(k + 1, j).clone()
                        - a.get(i, k + 1).clone() * a.get(k, j).clone())
                        * inv.clone();
                    let v = a.get(i, j).clone() + upd;
                    a.set(j, i, -v.clone());
                    a.set(i, j, v);
                }
            }
        }
        Ok(acc)
    }

    /// `a_I`, the Pfaffian of the principal submatrix on a 1-based index set
    /// (one for the empty set).
    pub fn subpfaffian(&self, set: &IndexSet) -> Result<S> {
        if set.len() % 2 == 1 {
            return Err(Error::OddDimension(set.len()));
        }
        self.restrict(set)?.pf()
    }

    /// Pfaffian on an arbitrary 1-based index sequence: zero if an index
    /// repeats, otherwise the sign of the sorting permutation times the
    /// subpfaffian of the sorted set.
    pub fn pf_sequence(&self, seq: &[usize]) -> Result<S> {
        if seq.len() % 2 == 1 {
            return Err(Error::OddDimension(seq.len()));
        }
        let mut sorted = seq.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Ok(S::zero());
        }
        let inversions = (0..seq.len())
            .flat_map(|x| (x + 1..seq.len()).map(move |y| (x, y)))
            .filter(|&(x, y)| seq[x] > seq[y])
            .count();
        Ok(sign::<S>(inversions as i64) * self.subpfaffian(&IndexSet::new(sorted)?)?)
    }
}

fn swap_both<S: Scalar>(a: &mut Matrix<S>, x: usize, y: usize) {
    a.swap_rows(x, y);
    a.swap_cols(x, y);
}

impl SkewMatrix<Rational> {
    pub fn from_json(j: &MatrixJson) -> Result<Self> {
        Self::new(j.to_matrix()?)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson::from_matrix(&self.m)
    }
}

/// Random skew matrix with entries drawn by [`sample_rational`].
pub fn random_skew(rng: &mut TrialRng, n: usize, bound: i64) -> Result<SkewMatrix<Rational>> {
    SkewMatrix::try_from_upper(n, |_, _| sample_rational(rng, bound, |_| false))
}

/// The Pfaffian Desnanot-Jacobi identity for the leading `n x n` block:
///
/// `a[n-4] a[n] = a[n-4],n-3,n-2 a[n-4],n-1,n - a[n-4],n-3,n-1 a[n-4],n-2,n
///  + a[n-4],n-3,n a[n-4],n-2,n-1`.
pub fn check_pf_desnanot_jacobi<S: Scalar>(a: &SkewMatrix<S>) -> Result<bool> {
    let n = a.dim();
    if n < 4 || n % 2 == 1 {
        return Err(Error::Dimension(format!("need even n >= 4, got {n}")));
    }
    let b = n - 4;
    let sub = |extra: &[usize]| a.subpfaffian(&IndexSet::prefix_with(b, extra)?);
    let lhs = sub(&[])? * sub(&[n - 3, n - 2, n - 1, n])?;
    let rhs = sub(&[n - 3, n - 2])? * sub(&[n - 1, n])?
        - sub(&[n - 3, n - 1])? * sub(&[n - 2, n])?
        + sub(&[n - 3, n])? * sub(&[n - 2, n - 1])?;
    Ok(lhs == rhs)
}

/// `det A^[n-2]_[n-2] det A = det A^{[n-2],n-1}_{[n-2],n-1} det A^{[n-2],n}_{[n-2],n}
/// - det A^{[n-2],n-1}_{[n-2],n} det A^{[n-2],n}_{[n-2],n-1}`.
pub fn check_det_desnanot_jacobi<S: Scalar>(a: &Matrix<S>) -> Result<bool> {
    let n = a.rows();
    if n < 2 || !a.is_square() {
        return Err(Error::Dimension(format!("need a square matrix with n >= 2, got {n}")));
    }
    let base: Vec<usize> = (0..n - 2).collect();
    let with = |k: usize| {
        let mut v = base.clone();
        v.push(k);
        v
    };
    let minor = |r: &[usize], c: &[usize]| a.select(r, c).det_bareiss();
    let (p, l) = (with(n - 2), with(n - 1));
    let lhs = minor(&base, &base)? * a.det_bareiss()?;
    let rhs = minor(&p, &p)? * minor(&l, &l)? - minor(&p, &l)? * minor(&l, &p)?;
    Ok(lhs == rhs)
}

/// Both sides of the minor summation formula
/// `sum_{|I| = n} Pf(B_I) det(T_I) = Pf(T B tT)` for an `n x N` matrix `T`.
pub fn minor_summation<S: Scalar>(t: &Matrix<S>, b: &SkewMatrix<S>) -> Result<(S, S)> {
    let (n, big_n) = (t.rows(), t.cols());
    if n % 2 == 1 || n > big_n || big_n != b.dim() {
        return Err(Error::Dimension(format!(
            "T is {n}x{big_n}, B is {0}x{0}",
            b.dim()
        )));
    }
    if n > 8 || big_n > 10 {
        return Err(Error::Guard(format!("minor summation with (n, N) = ({n}, {big_n})")));
    }
    let rows: Vec<usize> = (0..n).collect();
    let mut lhs = S::zero();
    for subset in subsets(big_n, n) {
        let pf = b.restrict0(&subset).pf_expansion()?;
        if pf.is_zero() {
            continue;
        }
        lhs = lhs + pf * t.select(&rows, &subset).det_division_free()?;
    }
    let q = t.mul(b.matrix())?.mul(&t.transpose())?;
    let rhs = SkewMatrix::new(q)?.pf_expansion()?;
    Ok((lhs, rhs))
}

pub fn minor_summation_check<S: Scalar>(t: &Matrix<S>, b: &SkewMatrix<S>) -> Result<bool> {
    let (l, r) = minor_summation(t, b)?;
    Ok(l == r)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Tridiagonal skew matrix with `b[i][i+1] = alpha_i` (1-based; `alpha[0]` is
/// `alpha_1`).
pub fn tridiagonal<S: Scalar>(alpha: &[S], size: usize) -> Result<SkewMatrix<S>> {
    if size > alpha.len() + 1 {
        return Err(Error::Dimension(format!(
            "{} values cannot fill a tridiagonal of size {size}",
            alpha.len()
        )));
    }
    Ok(SkewMatrix::from_upper(size, |i, j| {
        if j == i + 1 {
            alpha[i].clone()
        } else {
            S::zero()
        }
    }))
}

/// Closed form of a subpfaffian of [`tridiagonal`]: the product of
/// `alpha_{i_1} alpha_{i_3} ..` when the indices pair up as consecutive
/// integers, zero otherwise.
pub fn tridiagonal_subpf<S: Scalar>(alpha: &[S], set: &IndexSet) -> Result<S> {
    if set.len() % 2 == 1 {
        return Err(Error::OddDimension(set.len()));
    }
    let mut acc = S::one();
    for pair in set.as_slice().chunks(2) {
        if pair[1] != pair[0] + 1 {
            return Ok(S::zero());
        }
        let a = alpha
            .get(pair[0] - 1)
            .ok_or_else(|| Error::IndexSet(format!("alpha_{} not supplied", pair[0])))?;
        acc = acc * a.clone();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, trial_rng, QSeries};

    fn r(p: i64) -> Rational {
        Rational::from_int(p)
    }

    fn j2n(n: usize) -> SkewMatrix<Rational> {
        SkewMatrix::from_upper(2 * n, |i, j| if i % 2 == 0 && j == i + 1 { r(1) } else { r(0) })
    }

    #[test]
    fn rejects_non_skew() {
        let m = Matrix::from_rows(vec![vec![r(0), r(1)], vec![r(1), r(0)]]).unwrap();
        assert_eq!(SkewMatrix::new(m), Err(Error::NotSkew { i: 0, j: 1 }));
        let d = Matrix::from_rows(vec![vec![r(1), r(0)], vec![r(0), r(0)]]).unwrap();
        assert_eq!(SkewMatrix::new(d), Err(Error::NotSkew { i: 0, j: 0 }));
    }

    #[test]
    fn small_pfaffians() {
        let empty = SkewMatrix::<Rational>::from_upper(0, |_, _| r(0));
        let x = rat(3, 5).unwrap();
        let two = SkewMatrix::from_upper(2, |_, _| x.clone());
        for alg in [PfAlgorithm::Combinatorial, PfAlgorithm::Expansion, PfAlgorithm::Elimination] {
            assert_eq!(empty.pf_with(alg).unwrap(), r(1));
            assert_eq!(two.pf_with(alg).unwrap(), x);
            assert_eq!(j2n(3).pf_with(alg).unwrap(), r(1));
        }
        let odd = SkewMatrix::from_upper(3, |_, _| r(1));
        assert_eq!(odd.pf(), Err(Error::OddDimension(3)));
        assert_eq!(odd.pf_combinatorial(), Err(Error::OddDimension(3)));
    }

    #[test]
    fn four_by_four_formula() {
        let mut rng = trial_rng(5, 0);
        let a = random_skew(&mut rng, 4, 7).unwrap();
        let g = |i: usize, j: usize| a.get(i - 1, j - 1).clone();
        let want = g(1, 2) * g(3, 4) - g(1, 3) * g(2, 4) + g(1, 4) * g(2, 3);
        for alg in [PfAlgorithm::Combinatorial, PfAlgorithm::Expansion, PfAlgorithm::Elimination] {
            assert_eq!(a.pf_with(alg).unwrap(), want);
        }
    }

    #[test]
    fn guards() {
        let big = SkewMatrix::from_upper(14, |_, _| r(1));
        assert!(matches!(big.pf_combinatorial(), Err(Error::Guard(_))));
        assert!(big.pf_expansion().is_ok());
    }

    #[test]
    fn zero_pivot_swap() {
        // a12 = 0 forces a swap in the elimination route
        let a = SkewMatrix::from_upper(4, |i, j| match (i, j) {
            (0, 1) => r(0),
            (0, 2) => r(2),
            (0, 3) => r(3),
            (1, 2) => r(5),
            (1, 3) => r(7),
            _ => r(11),
        });
        assert_eq!(a.pf_elimination().unwrap(), a.pf_combinatorial().unwrap());
        // singular: first row vanishes
        let s = SkewMatrix::from_upper(4, |i, _| if i == 0 { r(0) } else { r(1) });
        assert_eq!(s.pf_elimination().unwrap(), r(0));
    }

    #[test]
    fn swapping_paired_indices_negates() {
        let mut rng = trial_rng(9, 0);
        let a = random_skew(&mut rng, 4, 7).unwrap();
        let b = a.restrict0(&[0, 2, 1, 3]);
        assert_eq!(b.pf().unwrap(), -a.pf().unwrap());
        assert_eq!(a.pf_sequence(&[1, 3, 2, 4]).unwrap(), b.pf().unwrap());
        assert_eq!(a.pf_sequence(&[1, 1]).unwrap(), r(0));
    }

    #[test]
    fn subpfaffians() {
        let mut rng = trial_rng(2, 0);
        let a = random_skew(&mut rng, 6, 7).unwrap();
        assert_eq!(a.subpfaffian(&IndexSet::prefix(0)).unwrap(), r(1));
        assert_eq!(
            a.subpfaffian(&IndexSet::new(vec![2, 5]).unwrap()).unwrap(),
            a.get(1, 4).clone()
        );
        assert_eq!(a.subpfaffian(&IndexSet::prefix(6)).unwrap(), a.pf().unwrap());
        assert!(IndexSet::new(vec![2, 2]).is_err());
        assert!(IndexSet::new(vec![0, 1]).is_err());
        assert!(a.subpfaffian(&IndexSet::prefix(3)).is_err());
    }

    #[test]
    fn desnanot_jacobi_examples() {
        let mut rng = trial_rng(3, 0);
        for n in [4, 6] {
            assert!(check_pf_desnanot_jacobi(&random_skew(&mut rng, n, 7).unwrap()).unwrap());
        }
        assert!(check_pf_desnanot_jacobi(&SkewMatrix::from_upper(4, |_, _| r(0))).unwrap());
        assert!(check_pf_desnanot_jacobi(&SkewMatrix::from_upper(2, |_, _| r(1))).is_err());
        assert!(check_det_desnanot_jacobi(&Matrix::<Rational>::identity(3)).unwrap());
        let m = Matrix::from_fn(5, 5, |_, _| sample_rational(&mut rng, 7, |_| false).unwrap());
        assert!(check_det_desnanot_jacobi(&m).unwrap());
    }

    #[test]
    fn minor_summation_square_case() {
        let mut rng = trial_rng(4, 0);
        let b = random_skew(&mut rng, 4, 7).unwrap();
        let t = Matrix::from_fn(4, 4, |_, _| sample_rational(&mut rng, 7, |_| false).unwrap());
        let (l, rr) = minor_summation(&t, &b).unwrap();
        assert_eq!(l, b.pf().unwrap() * t.det_bareiss().unwrap());
        assert_eq!(l, rr);
    }

    #[test]
    fn tridiagonal_closed_form() {
        let alpha: Vec<Rational> = (1..=6).map(|k| rat(k, k + 1).unwrap()).collect();
        let b = tridiagonal(&alpha, 6).unwrap();
        let set = IndexSet::new(vec![1, 2, 3, 4]).unwrap();
        assert_eq!(tridiagonal_subpf(&alpha, &set).unwrap(), &alpha[0] * &alpha[2]);
        let set = IndexSet::new(vec![1, 3, 4, 5]).unwrap();
        assert_eq!(tridiagonal_subpf(&alpha, &set).unwrap(), r(0));
        for k in [0, 2, 4, 6] {
            for s in subsets(6, k) {
                let set = IndexSet::new(s.iter().map(|x| x + 1).collect()).unwrap();
                assert_eq!(
                    tridiagonal_subpf(&alpha, &set).unwrap(),
                    b.subpfaffian(&set).unwrap()
                );
            }
        }
    }

    #[test]
    fn series_pfaffian() {
        let k = 5;
        let q = QSeries::var(k);
        let a = SkewMatrix::from_upper(4, |i, j| {
            q.powi((i + j) as i64).unwrap() + QSeries::from_int(1 + i as i64)
        });
        let e = a.pf_expansion().unwrap();
        assert_eq!(a.pf_combinatorial().unwrap(), e);
        assert_eq!(a.pf_elimination().unwrap(), e);
    }
}
