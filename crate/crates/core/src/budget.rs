use crate::error::{Error, Result};

/// Cap on the number of items an exhaustive operation may enumerate
/// (windows, node pairs, subset states, candidate words).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(1 << 24);

    pub fn unlimited() -> Self {
        Budget(u64::MAX)
    }

    pub fn check(self, required: u128) -> Result<()> {
        if required > self.0 as u128 {
            Err(Error::ExhaustiveCheckInfeasible {
                required,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }

    /// Checks `base^exp` items without overflowing.
    pub fn check_pow(self, base: usize, exp: usize) -> Result<usize> {
        let required = checked_pow(base, exp);
        self.check(required)?;
        Ok(required as usize)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn checked_pow(base: usize, exp: usize) -> u128 {
    let exp = u32::try_from(exp).unwrap_or(u32::MAX);
    (base as u128).checked_pow(exp).unwrap_or(u128::MAX)
}
