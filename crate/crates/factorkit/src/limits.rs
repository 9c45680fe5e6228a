/// Enumeration cutoffs for the exponential-cost checks.
///
/// The defaults keep worst cases around a minute on commodity hardware.
/// Callers (notably the CLI via `--max-n` / `FACTORKIT_MAX_N`) may raise
/// them explicitly; exceeding a cutoff is a [`crate::Error::Resource`]
/// error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cutoffs {
    /// Largest vertex count for 2^n subset enumeration (worst-set and
    /// certificate minimizers, corner prescriptions). Hard cap 62.
    pub subset_max_n: u32,
    /// Largest number of prescriptions the box oracle will check.
    pub box_max_prescriptions: u64,
    /// Largest vertex count for 3^n disjoint-pair labelings.
    pub labeling_max_n: u32,
}

impl Default for Cutoffs {
    fn default() -> Self {
        Cutoffs {
            subset_max_n: 24,
            box_max_prescriptions: 1_000_000,
            labeling_max_n: 16,
        }
    }
}

impl Cutoffs {
    /// Replaces the subset cutoff, clamping to the 62-bit mask limit.
    pub fn with_subset_max_n(mut self, n: u32) -> Self {
        self.subset_max_n = n.min(62);
        self
    }
}
