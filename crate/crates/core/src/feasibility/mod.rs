//! The elimination engine.
//!
//! Everything here is a finite, exact computation: the prime-part volume
//! constraints on a point stabilizer, inequality scans over explicit
//! parameter grids, the alternating-group searches, and the
//! decomposition-stabilizer table. Grid scans demonstrate emptiness on their
//! finite default grids; emptiness beyond a grid rests on the monotonicity
//! of the underlying inequalities and is not claimed by the scanner itself.

mod alternating;
mod predicates;
mod table2;

pub use alternating::{
    search_alternating_imprimitive, search_alternating_intransitive, search_m6_special,
    AltImprimitiveConfig, AltIntransitiveConfig, ImprimitivePreCandidate, ImprimitiveSearch,
    IntransitiveSearch, IntransitiveTuple, M6Candidate, M6Outcome, M6Report,
};
pub use predicates::{
    default_grid, predicate_ids, scan, GridConfig, GridPoint, Parity, ScanResult, Survivor,
};
pub use table2::{table2_lines, table2_scan, Table2Grid, Table2Line};

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, Factorization};
use crate::groups::{group_order, GroupError, GroupFamily};

#[derive(Debug, Error)]
pub enum FeasibilityError {
    #[error("unknown predicate id {0:?}")]
    UnknownPredicate(String),
    #[error("config does not cover the default grid: {0}")]
    ConfigTooNarrow(String),
    #[error("stabilizer order {0} does not divide |{1}|")]
    StabilizerNotDividing(String, String),
    #[error("{0} has no defining characteristic")]
    NotClassical(String),
    #[error("bad config: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A candidate (socle, stabilizer) case with its derived bounds. Every bound
/// carries a reference tag so reports stay citable.
#[derive(Debug, Clone, Serialize)]
pub struct CandidateCase {
    pub socle: GroupFamily,
    pub stabilizer_label: String,
    pub stabilizer_order: Option<Factorization>,
    pub v: ValueBound,
    pub n_max: Option<u64>,
    /// Cap on k* where a subdegree argument pins one.
    pub k_star_max: Option<u64>,
    pub notes: Vec<String>,
}

/// An exactly known value or a certified strict lower bound.
#[derive(Debug, Clone, Serialize)]
pub enum ValueBound {
    Exact(Factorization),
    Lower { value: String, reference: String },
}

/// Search configuration, loadable from a TOML file. All ranges are finite,
/// explicit and inclusive.
#[derive(Debug, Clone, Default, serde::Deserialize)]
pub struct SearchConfig {
    pub grid: Option<GridConfig>,
    pub alt_intransitive: Option<AltIntransitiveConfig>,
    pub alt_imprimitive: Option<AltImprimitiveConfig>,
    pub table2: Option<Table2Grid>,
}

impl SearchConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, FeasibilityError> {
        toml::from_str(text).map_err(|e| FeasibilityError::BadConfig(e.to_string()))
    }
}

/// Verdict on one of the volume inequalities of the prime-part constraint.
#[derive(Debug, Clone, Serialize)]
pub struct VolumeVerdict {
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
}

/// The prime-part constraints on a point stabilizer M₀ = M ∩ X inside a
/// classical socle of characteristic p:
/// the order n must be an odd prime dividing |M₀|_{p'}, and the volume
/// inequalities |X| < 2|M₀|·(|M₀|_{p'})² and |X| < |M₀|³ must hold.
#[derive(Debug, Clone, Serialize)]
pub struct PrimeOrderConstraints {
    pub characteristic: u64,
    pub allowed_n: Vec<u64>,
    pub n_max: Option<u64>,
    pub volume_2m_mp2: VolumeVerdict,
    pub volume_cube: VolumeVerdict,
}

pub fn prime_order_constraints(
    socle: &GroupFamily,
    stabilizer: &Factorization,
) -> Result<PrimeOrderConstraints, FeasibilityError> {
    let p = socle
        .characteristic()
        .ok_or_else(|| FeasibilityError::NotClassical(socle.to_string()))?;
    let order = group_order(socle)?;
    if order.div_exact(stabilizer).is_err() {
        return Err(FeasibilityError::StabilizerNotDividing(
            stabilizer.value().to_string(),
            socle.to_string(),
        ));
    }

    let m0 = stabilizer.value();
    let m0_p_prime = stabilizer.p_prime_part(&BigUint::from(p)).value();
    let x = order.value();

    let allowed_n: Vec<u64> = stabilizer
        .p_prime_part(&BigUint::from(p))
        .odd_primes()
        .iter()
        .filter_map(num_traits::ToPrimitive::to_u64)
        .collect();
    let n_max = allowed_n.iter().max().copied();

    let rhs1 = 2u32 * &m0 * &m0_p_prime * &m0_p_prime;
    let rhs2 = m0.pow(3);
    Ok(PrimeOrderConstraints {
        characteristic: p,
        allowed_n,
        n_max,
        volume_2m_mp2: VolumeVerdict { holds: x < rhs1, lhs: x.to_string(), rhs: rhs1.to_string() },
        volume_cube: VolumeVerdict { holds: x < rhs2, lhs: x.to_string(), rhs: rhs2.to_string() },
    })
}
