/// Size guards shared by the enumeration, brute-force and encoded-product paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of big-integer coordinates split-and-list may materialize.
    pub element_budget: u64,
    /// Largest rank the exhaustive CVP/SVP oracles accept.
    pub brute_force_max_rank: usize,
    /// Largest variable count the exhaustive Max-SAT oracle accepts.
    pub maxsat_max_vars: usize,
    /// Maximum total bits held by the positional encoding of the encoded triangle solver.
    pub encoded_bit_budget: u64,
}

pub const DEFAULT_ELEMENT_BUDGET: u64 = 1 << 28;
pub const ELEMENT_BUDGET_ENV: &str = "CVP01_ELEMENT_BUDGET";

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_budget: DEFAULT_ELEMENT_BUDGET,
            brute_force_max_rank: 24,
            maxsat_max_vars: 24,
            encoded_bit_budget: 1 << 33,
        }
    }
}

impl Limits {
    /// Defaults, with the element budget overridable through `CVP01_ELEMENT_BUDGET`.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(budget) = std::env::var(ELEMENT_BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            limits.element_budget = budget;
        }
        limits
    }
}
