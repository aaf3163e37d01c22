//! Candidate budgets for the exhaustive enumerators.

use thiserror::Error;

/// Default candidate budget shared by every enumerator.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Subset enumerations never go beyond `2^20` candidates regardless of cap.
pub const SUBSET_LIMIT: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("enumeration needs {needed} candidates but the cap is {cap}")]
pub struct CapExceeded {
    pub needed: u128,
    pub cap: u64,
}

pub fn check(needed: u128, cap: u64) -> Result<(), CapExceeded> {
    if needed > cap as u128 {
        Err(CapExceeded { needed, cap })
    } else {
        Ok(())
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn power(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Guard for enumerating all subsets of an `n`-element carrier.
pub fn check_subsets(n: usize, cap: u64) -> Result<(), CapExceeded> {
    let needed = power(2, n);
    check(needed, cap.min(1 << SUBSET_LIMIT))
}

/// Running counter for pruned searches, where the cap bounds the number of
/// search nodes visited instead of the raw candidate space.
#[derive(Debug)]
pub struct Budget {
    used: u128,
    cap: u64,
}

impl Budget {
    pub fn new(cap: u64) -> Self {
        Budget { used: 0, cap }
    }

    pub fn tick(&mut self) -> Result<(), CapExceeded> {
        self.used += 1;
        check(self.used, self.cap)
    }

    pub fn used(&self) -> u128 {
        self.used
    }
}
