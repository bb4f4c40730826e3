//! Exact-arithmetic feasibility engine and verifier for symmetric 2-designs
//! of prime order admitting flag-transitive almost simple automorphism groups.
//!
//! The crate is organised around the arithmetic pipeline that eliminates
//! candidate parameter sets and socles:
//!
//! - [`arith`] — unbounded integers, factorization, p-parts, binomials;
//! - [`design`] — symmetric 2-(v,k,λ) parameter identities, complements and
//!   the prime-order k*/λ* decomposition;
//! - [`brc`] — the Bruck–Ryser–Chowla existence gate, backed by a complete
//!   Legendre ternary-form solvability decision with witnesses;
//! - [`groups`] — exact orders, outer automorphism group orders, minimal
//!   permutation degrees and order envelopes for the classical and
//!   alternating simple groups;
//! - [`actions`] — degrees and subdegrees of subset, partition and coset
//!   actions;
//! - [`feasibility`] — the elimination engine: prime-part constraints,
//!   inequality grid scans, the alternating-group searches and the
//!   decomposition-stabilizer table;
//! - [`construct`] — explicit incidence structures, permutation groups and
//!   flag-orbit verification for the surviving designs;
//! - [`report`] — deterministic JSON-line records and the full
//!   reproduction suite.
//!
//! Everything is exact: no floating point is used anywhere in a decision.

pub mod actions;
pub mod arith;
pub mod brc;
pub mod construct;
pub mod design;
pub mod feasibility;
pub mod groups;
pub mod report;

pub use actions::{ActionSpec, SubdegreeList};
pub use arith::{binomial, factorize, p_parts, recognize_prime_power, Factorization, PrimePower};
pub use brc::{brc_check, legendre_solvable, normalize_ternary, BrcVerdict, LegendreForm};
pub use construct::{Flag, IncidenceStructure, PermGroup, Permutation};
pub use design::{DesignParams, PrimeOrderDecomposition};
pub use feasibility::{CandidateCase, SearchConfig};
pub use groups::GroupFamily;
