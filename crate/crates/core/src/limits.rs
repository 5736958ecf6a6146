//! Size guards. Exceeding any of these is reported as an error, never skipped.

/// Largest field order accepted by `field_construct` and `extend_field`.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Largest number of LP variables the exact simplex accepts.
pub const MAX_LP_VARIABLES: usize = 10_000;

/// Largest variable count Γ + K·T for the vertex-enumeration oracle.
pub const MAX_VERTEX_ENUM_VARIABLES: usize = 14;

/// Largest number of candidate vertices (constraint subsets) the oracle visits.
pub const MAX_VERTEX_ENUM_SUBSETS: u128 = 50_000_000;

/// Largest box size for which `is_half_mds` enumerates all subsets.
pub const MAX_EXHAUSTIVE_HALF_MDS_N: usize = 12;

/// Largest input space q^(K·R) for the exhaustive decode oracle.
pub const MAX_DECODE_STATES: u128 = 1 << 24;

/// Default number of encoder redraws before the extension degree is doubled.
pub const DEFAULT_ENCODER_RETRIES: u32 = 64;

/// Largest total qudit count Σ N_{t,s} of an integerized allocation.
pub const MAX_SCHEME_QUDITS: usize = 4096;
