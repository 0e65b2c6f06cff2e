//! LDU decomposition by minors and the Pfaffian decomposition `A = tV T V`.
//!
//! `T` is block diagonal with blocks `[[0, t_i], [-t_i, 0]]` and `V` is block
//! upper triangular with `J2 = [[0, 1], [-1, 0]]` on the diagonal.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{product, Scalar};
use crate::skewpf::{IndexSet, SkewMatrix};

/// Largest block count for which [`pf_decompose_by_subpf`] runs.
pub const SUBPF_ROUTE_GUARD: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct PfDecomposition<S> {
    t: Vec<S>,
    v: Matrix<S>,
}

/// `P A = L D U` with `L` lower and `U` upper unitriangular. Row `i` of
/// `P A` is row `perm[i]` of `A` (0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct LuDecomposition<S> {
    pub perm: Vec<usize>,
    pub l: Matrix<S>,
    pub d: Vec<S>,
    pub u: Matrix<S>,
}

/// `J_{2n}`.
pub fn j_matrix<S: Scalar>(n_blocks: usize) -> Matrix<S> {
    Matrix::from_fn(2 * n_blocks, 2 * n_blocks, |i, j| {
        if i % 2 == 0 && j == i + 1 {
            S::one()
        } else if i % 2 == 1 && j + 1 == i {
            -S::one()
        } else {
            S::zero()
        }
    })
}

/// Permutation matrix with `(P)_{i, perm[i]} = 1`.
pub fn permutation_matrix<S: Scalar>(perm: &[usize]) -> Matrix<S> {
    let n = perm.len();
    Matrix::from_fn(n, n, |i, j| if perm[i] == j { S::one() } else { S::zero() })
}

/// The pairing permutation `(12)(34)...` on `2n` letters, 0-based.
pub fn pair_swap(n_blocks: usize) -> Vec<usize> {
    (0..2 * n_blocks).map(|i| i ^ 1).collect()
}

impl<S: Scalar> PfDecomposition<S> {
    /// Validates the block shape of `v` (J2 diagonal blocks, zeros below).
    pub fn new(t: Vec<S>, v: Matrix<S>) -> Result<Self> {
        let d = PfDecomposition { t, v };
        if d.v.rows() != 2 * d.t.len() || !d.v.is_square() {
            return Err(Error::Dimension(format!(
                "{} t-values with a {}x{} V",
                d.t.len(),
                d.v.rows(),
                d.v.cols()
            )));
        }
        if let Some((i, j)) = d.block_shape_violation() {
            return Err(Error::Dimension(format!(
                "V is not block unitriangular at ({i}, {j})"
            )));
        }
        Ok(d)
    }

    pub fn n_blocks(&self) -> usize {
        self.t.len()
    }

    pub fn t(&self) -> &[S] {
        &self.t
    }

    pub fn v(&self) -> &Matrix<S> {
        &self.v
    }

    /// First 0-based position where `V` departs from the J2-diagonal,
    /// zero-below-diagonal block pattern.
    pub fn block_shape_violation(&self) -> Option<(usize, usize)> {
        let j = j_matrix::<S>(self.n_blocks());
        for r in 0..self.v.rows() {
            for c in 0..(r / 2 + 1) * 2 {
                if self.v.get(r, c) != j.get(r, c) {
                    return Some((r, c));
                }
            }
        }
        None
    }

    pub fn t_matrix(&self) -> Matrix<S> {
        let n = self.n_blocks();
        Matrix::from_fn(2 * n, 2 * n, |i, j| {
            if i % 2 == 0 && j == i + 1 {
                self.t[i / 2].clone()
            } else if i % 2 == 1 && j + 1 == i {
                -self.t[i / 2].clone()
            } else {
                S::zero()
            }
        })
    }

    /// `tV T V`.
    pub fn reconstruct(&self) -> Result<SkewMatrix<S>> {
        let m = self.v.transpose().mul(&self.t_matrix())?.mul(&self.v)?;
        SkewMatrix::new(m)
    }

    /// `Pf(A) = t_1 t_2 .. t_n`, since `det V = 1`.
    pub fn pf(&self) -> S {
        product(self.t.iter().cloned())
    }

    /// LDU decomposition of `P A` with `P = (12)(34)..`:
    /// `U = tJ V`, `D = P T`, `L = P tV J P`.
    pub fn to_lu(&self) -> Result<LuDecomposition<S>> {
        let n = self.n_blocks();
        let perm = pair_swap(n);
        let p = permutation_matrix::<S>(&perm);
        let j = j_matrix::<S>(n);
        let u = j.transpose().mul(&self.v)?;
        let dm = p.mul(&self.t_matrix())?;
        let l = p.mul(&self.v.transpose())?.mul(&j)?.mul(&p)?;
        let d = (0..2 * n).map(|i| dm.get(i, i).clone()).collect();
        Ok(LuDecomposition { perm, l, d, u })
    }

    /// The same LDU factors read off entrywise from `V` and `t` by parity.
    pub fn to_lu_entrywise(&self) -> LuDecomposition<S> {
        let n = 2 * self.n_blocks();
        let v = |i: usize, j: usize| self.v.get(i - 1, j - 1).clone();
        // 1-based formulas
        let u = Matrix::from_fn(n, n, |i0, j0| {
            let (i, j) = (i0 + 1, j0 + 1);
            if i % 2 == 1 {
                -v(i + 1, j)
            } else {
                v(i - 1, j)
            }
        });
        let l = Matrix::from_fn(n, n, |i0, j0| {
            let (i, j) = (i0 + 1, j0 + 1);
            match (i % 2 == 1, j % 2 == 1) {
                (true, true) => v(j, i + 1),
                (false, true) => v(j, i - 1),
                (true, false) => -v(j, i + 1),
                (false, false) => -v(j, i - 1),
            }
        });
        let d = (1..=n)
            .map(|i| {
                if i % 2 == 1 {
                    -self.t[i.div_ceil(2) - 1].clone()
                } else {
                    self.t[i / 2 - 1].clone()
                }
            })
            .collect();
        LuDecomposition {
            perm: pair_swap(self.n_blocks()),
            l,
            d,
            u,
        }
    }
}

/// Pfaffian decomposition from subpfaffians:
/// `t_i = a[2i] / a[2i-2]` and `v^k_l(i) = a_{[2i-2],k,l} / a[2i]`.
pub fn pf_decompose_by_subpf<S: Scalar>(a: &SkewMatrix<S>) -> Result<PfDecomposition<S>> {
    let dim = a.dim();
    if dim % 2 == 1 {
        return Err(Error::OddDimension(dim));
    }
    let n = dim / 2;
    if n > SUBPF_ROUTE_GUARD {
        return Err(Error::Guard(format!(
            "subpfaffian route with {n} blocks > {SUBPF_ROUTE_GUARD}"
        )));
    }
    let mut lead = vec![S::one()];
    for i in 1..=n {
        let p = a.subpfaffian(&IndexSet::prefix(2 * i))?;
        if p.is_zero() {
            return Err(Error::Pivot { index: i });
        }
        lead.push(p);
    }
    let t = (1..=n)
        .map(|i| lead[i].try_div(&lead[i - 1]))
        .collect::<Result<Vec<_>>>()?;
    let mut v = Matrix::zeros(dim, dim);
    for i in 1..=n {
        let base: Vec<usize> = (1..=2 * i - 2).collect();
        let inv = lead[i].try_inv()?;
        for k in [2 * i - 1, 2 * i] {
            for l in 2 * i - 1..=dim {
                let mut seq = base.clone();
                seq.push(k);
                seq.push(l);
                v.set(k - 1, l - 1, a.pf_sequence(&seq)? * inv.clone());
            }
        }
    }
    PfDecomposition::new(t, v)
}

/// Pfaffian decomposition by 2x2 block elimination. Same output as
/// [`pf_decompose_by_subpf`] at `O(n^3)` cost.
pub fn pf_decompose_elimination<S: Scalar>(a: &SkewMatrix<S>) -> Result<PfDecomposition<S>> {
    let dim = a.dim();
    if dim % 2 == 1 {
        return Err(Error::OddDimension(dim));
    }
    let n = dim / 2;
    let mut s = a.matrix().clone();
    let mut t = Vec::with_capacity(n);
    let mut v = j_matrix::<S>(n);
    for i in 0..n {
        let (r0, r1) = (2 * i, 2 * i + 1);
        let ti = s.get(r0, r1).clone();
        if ti.is_zero() {
            return Err(Error::Pivot { index: i + 1 });
        }
        let inv = ti.try_inv()?;
        for c in r1 + 1..dim {
            v.set(r0, c, s.get(r0, c).clone() * inv.clone());
            v.set(r1, c, s.get(r1, c).clone() * inv.clone());
        }
        for x in r1 + 1..dim {
            for y in x + 1..dim {
                let upd = ti.clone()
                    * (v.get(r0, x).clone() * v.get(r1, y).clone()
                        - v.get(r1, x).clone() * v.get(r0, y).clone());
                let val = s.get(x, y).clone() - upd;
                s.set(y, x, -val.clone());
                s.set(x, y, val);
            }
        }
        t.push(ti);
    }
    PfDecomposition::new(t, v)
}

impl<S: Scalar> LuDecomposition<S> {
    pub fn p_matrix(&self) -> Matrix<S> {
        permutation_matrix(&self.perm)
    }

    /// `L D U`.
    pub fn product(&self) -> Result<Matrix<S>> {
        let n = self.d.len();
        let dm = Matrix::from_fn(n, n, |i, j| if i == j { self.d[i].clone() } else { S::zero() });
        self.l.mul(&dm)?.mul(&self.u)
    }

    /// Checks `P A = L D U` and the unitriangular shapes of `L` and `U`.
    pub fn check(&self, a: &Matrix<S>) -> Result<bool> {
        let n = self.d.len();
        for i in 0..n {
            for j in 0..n {
                let unit = if i == j { S::one() } else { S::zero() };
                if (j >= i && *self.l.get(i, j) != unit) || (j <= i && *self.u.get(i, j) != unit) {
                    return Ok(false);
                }
            }
        }
        Ok(self.p_matrix().mul(a)? == self.product()?)
    }
}

/// LDU decomposition of `P A` read off from minors of `P A`:
/// `d_i = |PA|^[i]_[i] / |PA|^[i-1]_[i-1]`,
/// `l^i_j = |PA|^{[j-1],i}_[j] / |PA|^[j]_[j]`,
/// `u^i_j = |PA|^[i]_{[i-1],j} / |PA|^[i]_[i]`.
pub fn lu_by_minors<S: Scalar>(a: &Matrix<S>, perm: &[usize]) -> Result<LuDecomposition<S>> {
    let n = a.rows();
    if !a.is_square() || perm.len() != n {
        return Err(Error::Dimension(format!(
            "{}x{} matrix with a permutation of length {}",
            a.rows(),
            a.cols(),
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Domain(format!("{perm:?} is not a permutation")));
        }
    }
    let pa = permutation_matrix::<S>(perm).mul(a)?;
    let minor = |rows: &[usize], cols: &[usize]| pa.select(rows, cols).det_bareiss();
    let upto = |k: usize| (0..k).collect::<Vec<usize>>();
    let mut lead = vec![S::one()];
    for i in 1..=n {
        let m = minor(&upto(i), &upto(i))?;
        if m.is_zero() {
            return Err(Error::Pivot { index: i });
        }
        lead.push(m);
    }
    let d = (1..=n)
        .map(|i| lead[i].try_div(&lead[i - 1]))
        .collect::<Result<Vec<_>>>()?;
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for j in 1..=n {
        for i in j + 1..=n {
            let mut rows = upto(j - 1);
            rows.push(i - 1);
            l.set(i - 1, j - 1, minor(&rows, &upto(j))?.try_div(&lead[j])?);
            let mut cols = upto(j - 1);
            cols.push(i - 1);
            u.set(j - 1, i - 1, minor(&upto(j), &cols)?.try_div(&lead[j])?);
        }
    }
    Ok(LuDecomposition {
        perm: perm.to_vec(),
        l,
        d,
        u,
    })
}
