use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rational::{rat, Rational};
use crate::error::{Error, Result};

/// Per-trial random state.
pub type TrialRng = ChaCha8Rng;

/// Numerator/denominator bound for random evaluation points.
pub const DEFAULT_BOUND: i64 = 7;

/// Rejections tolerated by [`sample_rational`] before giving up.
pub const RETRY_BUDGET: usize = 1000;

/// Random state for trial `index` under `seed`.
///
/// Each trial gets its own ChaCha stream, so trial `k` can be replayed without
/// running trials `0..k`.
pub fn trial_rng(seed: u64, index: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draws `p/s` with `1 <= |p| <= bound`, `1 <= s <= bound`, rejecting values
/// for which `exclude` returns true.
pub fn sample_rational<F>(rng: &mut TrialRng, bound: i64, exclude: F) -> Result<Rational>
where
    F: Fn(&Rational) -> bool,
{
    if bound < 2 {
        return Err(Error::Domain(format!("sampling bound {bound} < 2")));
    }
    for _ in 0..RETRY_BUDGET {
        let mut p = rng.random_range(1..=bound);
        if rng.random_bool(0.5) {
            p = -p;
        }
        let s = rng.random_range(1..=bound);
        let x = rat(p, s)?;
        if !exclude(&x) {
            return Ok(x);
        }
    }
    Err(Error::SamplingBudget(RETRY_BUDGET))
}

#[cfg(test)]
mod tests {
    use num_traits::{One, Signed};

    use super::*;

    #[test]
    fn deterministic_per_seed_and_index() {
        let draw = |seed, idx| {
            let mut rng = trial_rng(seed, idx);
            (0..5)
                .map(|_| sample_rational(&mut rng, 5, |_| false).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(42, 0), draw(42, 0));
        assert_eq!(draw(42, 3), draw(42, 3));
        assert_ne!(draw(42, 0), draw(42, 1));
    }

    #[test]
    fn respects_bounds_and_exclusions() {
        let mut rng = trial_rng(7, 0);
        for _ in 0..500 {
            let x = sample_rational(&mut rng, 3, |v| v.is_one()).unwrap();
            assert!(!x.is_one());
            assert!(x.numer().abs() <= 3.into() && x.denom() <= &3.into());
            assert!(x.numer().abs() >= 1.into());
        }
    }

    #[test]
    fn budget_exhaustion() {
        let mut rng = trial_rng(1, 0);
        assert_eq!(
            sample_rational(&mut rng, 3, |_| true),
            Err(Error::SamplingBudget(RETRY_BUDGET))
        );
        assert!(sample_rational(&mut rng, 1, |_| false).is_err());
    }
}
