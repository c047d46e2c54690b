//! Size limits for the exponential-time exact routines.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest vertex (or part) count for a full 2ⁿ subset scan.
    pub exact_subset: usize,
    /// Largest vertex (or part) count for a full scan over orders.
    pub exact_order: usize,
    /// Largest part count for exact cut-norm enumeration.
    pub cutnorm: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            exact_subset: 22,
            exact_order: 9,
            cutnorm: 20,
        }
    }
}

/// Hard ceilings; the scans use 64-bit masks and precomputed tables.
pub const MAX_EXACT_SUBSET: usize = 26;
pub const MAX_EXACT_ORDER: usize = 12;
pub const MAX_CUTNORM: usize = 26;

impl Limits {
    pub fn check_subset(&self, what: &'static str, size: usize) -> Result<()> {
        check(what, size, self.exact_subset.min(MAX_EXACT_SUBSET))
    }

    pub fn check_order(&self, what: &'static str, size: usize) -> Result<()> {
        check(what, size, self.exact_order.min(MAX_EXACT_ORDER))
    }

    pub fn check_cutnorm(&self, what: &'static str, size: usize) -> Result<()> {
        check(what, size, self.cutnorm.min(MAX_CUTNORM))
    }
}

fn check(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::SizeLimit { what, size, limit })
    } else {
        Ok(())
    }
}
