//! Shifted reverse plane partitions and shifted tableaux.
//!
//! Row `i` (1-based) of a shape `λ` occupies columns `i ..= i + λ_i - 1`, so
//! the diagonal cells `(i, i)` carry the profile.

mod gf;
mod theorems;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use gf::{
    check_gf_rel, gf_rpp, gf_rpp_bruteforce, gf_tableaux_bruteforce, gf_tableaux_det,
    gf_tableaux_det_finite_n, BRUTE_CELL_GUARD, BRUTE_ORDER_GUARD,
};
pub use theorems::{
    check_binom_expansion, check_tableaux_gf, lhs_weighted_sum, lhs_weighted_sum_ordered,
    omega_prime_weight, omega_weight, psi_weight, rhs_series, BinomExpansion, RppParams,
    RppTheorem, TableauxGfCheck,
};

fn parse_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("not a non-negative integer: {t:?}")))
        })
        .collect()
}

/// `λ_1 > λ_2 > .. > λ_n > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StrictPartition {
    parts: Vec<usize>,
}

impl StrictPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.last() == Some(&0) {
            return Err(Error::Shape(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Shape(format!("{parts:?} is not strictly decreasing")));
        }
        Ok(StrictPartition { parts })
    }

    /// Every strict partition with at most `max_cells` cells, nonempty,
    /// in lexicographic order of parts.
    pub fn all_up_to(max_cells: usize) -> Vec<Self> {
        fn go(max_part: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<StrictPartition>) {
            for p in 1..=max_part.min(left) {
                cur.push(p);
                out.push(StrictPartition { parts: cur.clone() });
                go(p - 1, left - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(max_cells, max_cells, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.parts.cmp(&b.parts));
        out
    }

    /// `(m, m-1, .., m-len+1)`.
    pub fn staircase(m: usize, len: usize) -> Result<Self> {
        if len > m {
            return Err(Error::Shape(format!("staircase of length {len} below {m}")));
        }
        Self::new((0..len).map(|i| m - i).collect())
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn cells(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_lambda(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    pub fn is_staircase(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] == w[1] + 1)
    }
}

impl FromStr for StrictPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_list(s)?)
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Nondecreasing sequence of non-negative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    values: Vec<usize>,
}

impl Profile {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Shape(format!("profile {values:?} is not nondecreasing")));
        }
        Ok(Profile { values })
    }

    pub fn zeros(len: usize) -> Self {
        Profile { values: vec![0; len] }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> usize {
        self.values.iter().sum()
    }

    /// Every profile of the given length with entries in `0..=max`.
    pub fn all_bounded(len: usize, max: usize) -> Vec<Self> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|p: Vec<usize>| {
                    let lo = p.last().copied().unwrap_or(0);
                    (lo..=max).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(|values| Profile { values }).collect()
    }

    /// `ν + ε`, with `ε = (0, 1, .., len-1)`; strictly increasing.
    pub fn plus_epsilon(&self) -> Vec<usize> {
        self.values.iter().enumerate().map(|(i, &v)| v + i).collect()
    }

    /// Member of `P_n`: even length and `ν_2k = ν_(2k-1)`.
    pub fn in_p(&self) -> bool {
        self.len().is_multiple_of(2) && self.values.chunks(2).all(|c| c[0] == c[1])
    }

    /// Member of `P'_n = P_n + ε`.
    pub fn in_p_prime(&self) -> bool {
        if self.len() % 2 == 1 {
            return false;
        }
        let nu: Vec<isize> = self.values.iter().enumerate().map(|(i, &v)| v as isize - i as isize).collect();
        nu.iter().all(|&v| v >= 0)
            && nu.windows(2).all(|w| w[0] <= w[1])
            && nu.chunks(2).all(|c| c[0] == c[1])
    }

    /// Member of `Q^(t)_n` (length `2n-1`): pairs `ν_2k = ν_(2k-1)` for
    /// `k < t` and `ν_(2k+1) = ν_2k` for `t <= k <= n-1` (1-based).
    pub fn in_q(&self, t: usize) -> bool {
        let len = self.len();
        if len.is_multiple_of(2) || t == 0 || 2 * t > len + 1 {
            return false;
        }
        let n = len.div_ceil(2);
        let v = |i: usize| self.values[i - 1];
        (1..t).all(|k| v(2 * k) == v(2 * k - 1)) && (t..n).all(|k| v(2 * k + 1) == v(2 * k))
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_list(s)?)
    }
}

/// A filled shifted shape satisfying the row and column conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedRpp {
    shape: StrictPartition,
    rows: Vec<Vec<u64>>,
    strict: bool,
}

impl ShiftedRpp {
    /// Checks row lengths, rows nondecreasing, and columns nondecreasing
    /// (strictly increasing when `strict`).
    pub fn validate(shape: StrictPartition, rows: Vec<Vec<u64>>, strict: bool) -> Result<Self> {
        if rows.len() != shape.len() {
            return Err(Error::Shape(format!(
                "{} rows for a shape of length {}",
                rows.len(),
                shape.len()
            )));
        }
        for (i, (row, &len)) in rows.iter().zip(shape.parts()).enumerate() {
            if row.len() != len {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, shape needs {len}",
                    i + 1,
                    row.len()
                )));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            for c in 1..row.len() {
                if row[c - 1] > row[c] {
                    return Err(Error::Monotonicity { condition: "ii", row: i + 1, col: i + c + 1 });
                }
            }
        }
        for i in 1..rows.len() {
            // cell (i+1, col) sits at offset col - i - 1 in row i+1 and
            // offset col - i in row i (all 1-based)
            for (off, &below) in rows[i].iter().enumerate() {
                let col = i + off;
                let Some(&above) = rows[i - 1].get(col - (i - 1)) else {
                    continue;
                };
                if strict && above >= below {
                    return Err(Error::Monotonicity { condition: "iii'", row: i + 1, col: col + 1 });
                }
                if above > below {
                    return Err(Error::Monotonicity { condition: "iii", row: i + 1, col: col + 1 });
                }
            }
        }
        Ok(ShiftedRpp { shape, rows, strict })
    }

    pub fn shape(&self) -> &StrictPartition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// `|π|`, the sum of parts.
    pub fn weight(&self) -> u64 {
        self.rows.iter().flatten().sum()
    }

    /// Diagonal entries.
    pub fn profile(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r[0]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> Vec<Vec<u64>> {
        vec![
            vec![0, 0, 0, 0, 1, 1, 1, 2, 2, 3, 4],
            vec![1, 1, 2, 2, 2, 3, 3, 4],
            vec![3, 3, 3, 4, 4, 5],
            vec![5, 5, 5],
        ]
    }

    #[test]
    fn worked_tableau() {
        let shape: StrictPartition = "11,8,6,3".parse().unwrap();
        let t = ShiftedRpp::validate(shape, example(), true).unwrap();
        assert_eq!(t.weight(), 69);
        assert_eq!(t.profile(), vec![0, 1, 3, 5]);
    }

    #[test]
    fn violations_are_located() {
        let shape = StrictPartition::new(vec![2, 1]).unwrap();
        let err = ShiftedRpp::validate(shape.clone(), vec![vec![1, 1], vec![1]], true).unwrap_err();
        assert_eq!(err, Error::Monotonicity { condition: "iii'", row: 2, col: 2 });
        assert!(ShiftedRpp::validate(shape.clone(), vec![vec![1, 1], vec![1]], false).is_ok());
        let err = ShiftedRpp::validate(shape.clone(), vec![vec![2, 1], vec![3]], false).unwrap_err();
        assert_eq!(err, Error::Monotonicity { condition: "ii", row: 1, col: 2 });
        let err = ShiftedRpp::validate(shape.clone(), vec![vec![0, 2], vec![1]], false).unwrap_err();
        assert_eq!(err, Error::Monotonicity { condition: "iii", row: 2, col: 2 });
        assert!(matches!(
            ShiftedRpp::validate(shape, vec![vec![0], vec![1]], false),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn small_weights() {
        let one = StrictPartition::new(vec![1]).unwrap();
        let t = ShiftedRpp::validate(one, vec![vec![4]], false).unwrap();
        assert_eq!(t.profile(), vec![4]);
        let shape = StrictPartition::new(vec![2, 1]).unwrap();
        let z = ShiftedRpp::validate(shape.clone(), vec![vec![0, 0], vec![0]], false).unwrap();
        assert_eq!(z.weight(), 0);
        let t = ShiftedRpp::validate(shape, vec![vec![0, 1], vec![1]], false).unwrap();
        assert_eq!(t.weight(), 2);
    }

    #[test]
    fn shapes_and_profiles() {
        assert!(StrictPartition::new(vec![3, 3]).is_err());
        assert!(StrictPartition::new(vec![2, 0]).is_err());
        assert!("3,x".parse::<StrictPartition>().is_err());
        let s = StrictPartition::new(vec![3, 2, 1]).unwrap();
        assert_eq!(s.n_lambda(), 4);
        assert!(s.is_staircase());
        assert!(!StrictPartition::new(vec![8, 4, 3, 2]).unwrap().is_staircase());
        assert!(Profile::new(vec![1, 0]).is_err());
        let p = Profile::new(vec![1, 1, 3, 3]).unwrap();
        assert!(p.in_p());
        assert!(Profile::new(p.plus_epsilon()).unwrap().in_p_prime());
        assert!(!Profile::new(vec![0, 1, 1, 1]).unwrap().in_p());
        // Q^(2)_2: ν1 = ν2, single ν3
        assert!(Profile::new(vec![1, 1, 4]).unwrap().in_q(2));
        assert!(!Profile::new(vec![1, 2, 4]).unwrap().in_q(2));
        // Q^(1)_2: single ν1, ν3 = ν2
        assert!(Profile::new(vec![0, 2, 2]).unwrap().in_q(1));
    }

    #[test]
    fn enumerations() {
        // strict partitions of 1..=4: (1) (2) (2,1) (3) (3,1) (4)
        let all = StrictPartition::all_up_to(4);
        let parts: Vec<&[usize]> = all.iter().map(|p| p.parts()).collect();
        assert_eq!(parts, vec![&[1][..], &[2], &[2, 1], &[3], &[3, 1], &[4]]);
        assert_eq!(StrictPartition::all_up_to(10).len(), 42);
        // multisets of size 3 from {0,1,2}
        assert_eq!(Profile::all_bounded(3, 2).len(), 10);
        assert_eq!(Profile::all_bounded(0, 2), vec![Profile::zeros(0)]);
    }

    #[test]
    fn staircase_n_lambda() {
        for m in 1..=10usize {
            for n in 1..=4usize {
                if m < 2 * n {
                    continue;
                }
                let s = StrictPartition::staircase(m, 2 * n).unwrap();
                let (m, n) = (m as i64, n as i64);
                let closed = m * n * (2 * n - 1) - n * (2 * n - 1) * (4 * n - 1) / 3;
                assert_eq!(s.n_lambda() as i64, closed);
            }
        }
    }
}
