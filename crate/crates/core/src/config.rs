use std::time::Duration;

/// Environment variable overriding [`Limits::max_order`].
pub const MAX_ORDER_ENV: &str = "LAMBDA_MAX_ORDER";

pub const DEFAULT_MAX_ORDER: usize = 512;
pub const DEFAULT_EXACT_MAX_VERTICES: usize = 32;
/// Hard ceiling for the exact label search: domains are 128-bit masks and
/// any graph on n vertices has an L(2,1)-labelling of span 2(n-1).
pub const EXACT_SEARCH_CEILING: usize = 64;

/// Size caps and time budgets shared by constructors and searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order any constructor or parser will produce.
    pub max_order: usize,
    /// Largest vertex count handed to [`crate::labelling::exact_lambda`].
    pub exact_max_vertices: usize,
    /// Largest vertex count handed to the Hamiltonian path search.
    pub path_max_vertices: usize,
    /// Wall-clock budget per search instance.
    pub timeout: Duration,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: DEFAULT_MAX_ORDER,
            exact_max_vertices: DEFAULT_EXACT_MAX_VERTICES,
            path_max_vertices: DEFAULT_MAX_ORDER,
            timeout: Duration::from_secs(60),
        }
    }
}

impl Limits {
    /// Defaults, with `LAMBDA_MAX_ORDER` applied when it parses.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = std::env::var(MAX_ORDER_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            limits.max_order = n;
            limits.path_max_vertices = limits.path_max_vertices.max(n);
        }
        limits
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }
}
