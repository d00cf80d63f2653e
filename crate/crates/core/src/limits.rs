use crate::error::{Error, Result};

/// Default cap on candidate morphisms visited by a single exhaustive search.
pub const DEFAULT_MAX_ENUM: u64 = 1_000_000;

/// Budget for exhaustive searches.
///
/// Every enumeration (hom-sets, candidate factorizations, chain selections,
/// bundle-morphism searches) counts the candidates it is about to visit and
/// fails loudly once the cap is exceeded. Nothing is ever silently truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_enum: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enum: DEFAULT_MAX_ENUM,
        }
    }
}

impl Limits {
    pub fn new(max_enum: u64) -> Self {
        Limits { max_enum }
    }

    /// Checks a candidate count against the cap, reporting it as an
    /// oversized universe (used by classification-style searches).
    pub fn check_universe(&self, candidates: u64) -> Result<()> {
        if candidates > self.max_enum {
            Err(Error::UniverseTooLarge {
                candidates,
                cap: self.max_enum,
            })
        } else {
            Ok(())
        }
    }

    /// Checks a candidate count against the cap, reporting it as an
    /// enumeration explosion (used by expansion-style searches).
    pub fn check_explosion(&self, candidates: u64) -> Result<()> {
        if candidates > self.max_enum {
            Err(Error::ExplosionGuard {
                candidates,
                cap: self.max_enum,
            })
        } else {
            Ok(())
        }
    }
}

/// Running tally for searches whose size is only known as they proceed.
#[derive(Debug, Default)]
pub struct Tally {
    count: u64,
}

impl Tally {
    pub fn new() -> Self {
        Tally::default()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn bump(&mut self, n: u64, limits: &Limits) -> Result<()> {
        self.count = self.count.saturating_add(n);
        limits.check_explosion(self.count)
    }
}
