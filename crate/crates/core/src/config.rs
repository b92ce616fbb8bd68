//! Resource caps shared by every enumeration in the crate.

/// Environment variable that may raise the element cap.
pub const MAX_ELEMENTS_ENV: &str = "POLYFORGE_MAX_ELEMENTS";

pub const DEFAULT_MAX_ELEMENTS: u64 = 1 << 22;
pub const DEFAULT_MAX_DEGREE: usize = 1 << 16;
pub const DEFAULT_MAX_POSET: u64 = 1 << 14;
pub const DEFAULT_MAX_COSETS: usize = 1 << 20;
pub const DEFAULT_MAX_RANK: usize = 7;

/// Caps on explicit enumeration. Exceeding any of them is an error, never a
/// silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group (or coset space) that may be enumerated element by element.
    pub max_elements: u64,
    /// Largest permutation degree accepted by constructions.
    pub max_degree: usize,
    /// Largest group order accepted when building a face poset.
    pub max_poset: u64,
    /// Largest rank for the exhaustive intersection-property check.
    pub max_rank: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: DEFAULT_MAX_ELEMENTS,
            max_degree: DEFAULT_MAX_DEGREE,
            max_poset: DEFAULT_MAX_POSET,
            max_rank: DEFAULT_MAX_RANK,
        }
    }
}

impl Limits {
    /// Defaults, with `max_elements` raised by `POLYFORGE_MAX_ELEMENTS` when set.
    /// The variable can only raise the cap.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = std::env::var(MAX_ELEMENTS_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
        {
            limits.max_elements = limits.max_elements.max(v);
        }
        limits
    }

    pub fn with_max_poset(mut self, max_poset: u64) -> Self {
        self.max_poset = max_poset;
        self
    }

    pub fn with_max_elements(mut self, max_elements: u64) -> Self {
        self.max_elements = max_elements;
        self
    }
}
