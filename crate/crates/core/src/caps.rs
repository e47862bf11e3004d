//! Enumeration and factorization budgets.

/// Budgets shared by the enumerating operations. `GLQV_CAP` overrides the
/// enumeration caps (all of them) when set to a positive integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest `n` for which all partitions of `n` are listed.
    pub partitions: u32,
    /// Largest number of candidate polynomials scanned by irreducible enumeration.
    pub poly_scan: u64,
    /// Largest `q^n` for which degree-`n` ν-maps are enumerated.
    pub numaps: u64,
    /// Largest group order the matrix-group oracle will enumerate.
    pub group_order: u64,
    /// Iteration budget for one Pollard rho run.
    pub rho_iterations: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            partitions: 60,
            poly_scan: 1 << 24,
            numaps: 1 << 20,
            group_order: 100_000,
            rho_iterations: 1 << 20,
        }
    }
}

impl Caps {
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(cap) = std::env::var("GLQV_CAP").ok().and_then(|v| v.trim().parse::<u64>().ok()) {
            if cap > 0 {
                caps.numaps = cap;
                caps.poly_scan = cap.max(caps.poly_scan);
                caps.group_order = cap;
                caps.partitions = u32::try_from(cap).unwrap_or(u32::MAX);
            }
        }
        caps
    }
}
