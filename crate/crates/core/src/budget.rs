//! Explicit resource budgets for exhaustive searches and enumerations.
//!
//! Every potentially expensive operation takes a [`Budget`] and fails with
//! [`Error::Budget`](crate::Error::Budget) before starting work that would
//! exceed it. There are no probabilistic fallbacks.

/// Caps for exhaustive computations. All fields must be positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of candidate tuples an enumeration may visit.
    pub max_enum_tuples: u64,
    /// Maximum size of a candidate-polynomial space in a factor search.
    pub max_candidate_polys: u64,
    /// Maximum field cardinality `q^r` that may be constructed.
    pub max_field_size: u64,
    /// Maximum degree tried by the auxiliary-polynomial search.
    pub max_aux_degree: u32,
    /// Maximum prime degree enumerated by the prime tables.
    pub max_prime_degree: u32,
    /// Maximum number of `s × s` minors enumerated directly when
    /// cross-checking a determinantal divisor against the Smith form.
    pub max_minor_combinations: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_enum_tuples: 1_000_000_000,
            max_candidate_polys: 1 << 22,
            max_field_size: 1 << 20,
            max_aux_degree: 64,
            max_prime_degree: 10,
            max_minor_combinations: 50_000,
        }
    }
}

impl Budget {
    /// `base^exp` if it stays within `limit`, otherwise a budget error.
    pub(crate) fn checked_pow(base: u64, exp: u32, limit: u64, what: &str) -> crate::Result<u64> {
        let mut acc: u64 = 1;
        for _ in 0..exp {
            acc = acc
                .checked_mul(base)
                .filter(|&v| v <= limit)
                .ok_or_else(|| {
                    crate::Error::budget(format!(
                        "{what}: {base}^{exp} exceeds the configured limit {limit}"
                    ))
                })?;
        }
        Ok(acc)
    }
}
