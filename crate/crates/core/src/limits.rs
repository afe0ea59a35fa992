/// Size guards for the exhaustive enumerations.
///
/// Exceeding a limit is always reported as an error; nothing is silently
/// truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of items any single enumeration may produce
    /// (colored partitions, matrices, necklace multisets, words).
    pub enumeration: usize,
    /// Largest degree `n` for which `S_n` is enumerated permutation by
    /// permutation.
    pub brute_force_degree: usize,
}

impl Limits {
    pub const DEFAULT_ENUMERATION: usize = 10_000_000;
    pub const DEFAULT_BRUTE_FORCE_DEGREE: usize = 9;

    pub fn with_enumeration(mut self, limit: usize) -> Self {
        self.enumeration = limit;
        self
    }

    pub fn with_brute_force_degree(mut self, degree: usize) -> Self {
        self.brute_force_degree = degree;
        self
    }

    pub(crate) fn check_degree(&self, degree: usize) -> crate::Result<()> {
        if degree > self.brute_force_degree {
            return Err(crate::Error::BruteForceBound {
                degree,
                bound: self.brute_force_degree,
            });
        }
        Ok(())
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: Self::DEFAULT_ENUMERATION,
            brute_force_degree: Self::DEFAULT_BRUTE_FORCE_DEGREE,
        }
    }
}
