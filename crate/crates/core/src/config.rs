/// Resource caps shared by the tree, Gröbner and Kronecker engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of nodes in a single constructible tree.
    pub node_budget: usize,
    /// Maximum number of S-pairs processed by one Buchberger run.
    pub max_pairs: usize,
    /// Largest `n` for which orbit certificates are built.
    pub orbit_max_n: usize,
    /// Largest orbit size `C(n, m)` for orbit certificates.
    pub orbit_max_size: usize,
    /// Maximum recursion depth (pf forks, R{f} factor recursion, grafts).
    pub max_depth: usize,
    /// Largest power tried when lifting through a localization.
    pub max_lift_power: u32,
}

pub const NODE_BUDGET_ENV: &str = "DYNNORM_NODE_BUDGET";

impl Default for Limits {
    fn default() -> Self {
        Limits {
            node_budget: 1 << 14,
            max_pairs: 100_000,
            orbit_max_n: 8,
            orbit_max_size: 70,
            max_depth: 64,
            max_lift_power: 256,
        }
    }
}

impl Limits {
    /// Defaults, with the node budget overridden by `DYNNORM_NODE_BUDGET`
    /// when it is set to a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Ok(v) = std::env::var(NODE_BUDGET_ENV) {
            if let Ok(n) = v.trim().parse::<usize>() {
                if n > 0 {
                    limits.node_budget = n;
                }
            }
        }
        limits
    }
}
