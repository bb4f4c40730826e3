//! Degrees and subdegrees of the primitive actions analysed by the
//! elimination engine: actions on s-subsets, on uniform partitions, and
//! generic coset actions described by a stabilizer order.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{binomial, ArithError, Factorization};
use crate::groups::{group_order, GroupError, GroupFamily};

/// One of the primitive action shapes handled at formula level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionSpec {
    /// S_m or A_m on the s-subsets of an m-set, 1 ≤ s < m.
    Subsets { m: u32, s: u32 },
    /// S_{st} on partitions of an st-set into t cells of size s, s,t ≥ 2.
    Partitions { s: u32, t: u32 },
    /// A coset action of X with point-stabilizer order `stabilizer`.
    Cosets { socle: GroupFamily, stabilizer: Factorization, label: String },
}

/// Non-trivial subdegrees of an action, in the indexing the analysis uses.
///
/// For subset actions the list is the complete orbit decomposition and the
/// residual is zero. For partition actions only the designated d_j family is
/// listed; whatever orbit mass it does not account for is reported in
/// `residual` and never assumed to vanish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdegreeList {
    pub degree: BigUint,
    pub subdegrees: Vec<BigUint>,
    pub residual: BigInt,
}

impl SubdegreeList {
    fn new(degree: BigUint, subdegrees: Vec<BigUint>) -> Self {
        let sum: BigUint = subdegrees.iter().sum();
        let residual = BigInt::from(degree.clone()) - BigInt::from(sum) - BigInt::one();
        SubdegreeList { degree, subdegrees, residual }
    }

    /// True when 1 + Σ d_j = degree.
    pub fn is_complete(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.subdegrees.len() + 1
    }
}

/// Degree and subdegrees of the s-subset action: v = C(m,s) and
/// d_{i+1} = C(s,i)·C(m−s,s−i) for i = 0..s−1, with d_0 = 1 left implicit.
pub fn subset_action(m: u32, s: u32) -> SubdegreeList {
    assert!(1 <= s && s < m, "subset action needs 1 <= s < m");
    let degree = binomial(m as u64, s as u64);
    let subdegrees: Vec<BigUint> = (0..s)
        .map(|i| binomial(s as u64, i as u64) * binomial((m - s) as u64, (s - i) as u64))
        .collect();
    SubdegreeList::new(degree, subdegrees)
}

/// The subdegree d_s = s(m−s) of the subset action.
pub fn subset_top_subdegree(m: u32, s: u32) -> u64 {
    s as u64 * (m - s) as u64
}

/// Degree of the partition action: v = (st)! / ((s!)^t · t!).
pub fn partition_degree(s: u32, t: u32) -> BigUint {
    let mut num = BigUint::one();
    for i in 2..=(s as u64 * t as u64) {
        num *= i;
    }
    let mut s_fact = BigUint::one();
    for i in 2..=(s as u64) {
        s_fact *= i;
    }
    let mut t_fact = BigUint::one();
    for i in 2..=(t as u64) {
        t_fact *= i;
    }
    num / (s_fact.pow(t) * t_fact)
}

/// Degree and designated subdegrees of the partition action:
/// d_j = 2^(j−1)·C(t,j) for s = 2 and d_j = s^j·C(t,j) for s ≥ 3, j = 1..t.
pub fn partition_action(s: u32, t: u32) -> SubdegreeList {
    assert!(s >= 2 && t >= 2, "partition action needs s, t >= 2");
    let degree = partition_degree(s, t);
    let subdegrees: Vec<BigUint> = (1..=t)
        .map(|j| {
            let choose = binomial(t as u64, j as u64);
            if s == 2 {
                choose << (j - 1)
            } else {
                choose * BigUint::from(s as u64).pow(j)
            }
        })
        .collect();
    SubdegreeList::new(degree, subdegrees)
}

/// The designated second subdegree d_2 of the partition action.
pub fn partition_d2(s: u32, t: u32) -> u64 {
    let t = t as u64;
    if s == 2 {
        t * (t - 1)
    } else {
        (s as u64).pow(2) * t * (t - 1) / 2
    }
}

/// Coset-action degree v = |X| / |M₀| as an exact factorization; a
/// non-dividing stabilizer order signals a wrong stabilizer.
pub fn coset_degree(socle: &GroupFamily, stabilizer: &Factorization) -> Result<Factorization, CosetError> {
    let order = group_order(socle)?;
    Ok(order.div_exact(stabilizer)?)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CosetError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// The exact p-part of v − 1.
pub fn v_minus_one_p_part(v: &BigUint, p: u64) -> BigUint {
    assert!(*v >= BigUint::from(2u32), "degree must be at least 2");
    let (vp, _) = crate::arith::p_parts(&(v - 1u32), p).expect("positive argument, prime p");
    vp
}

impl ActionSpec {
    /// Degree and subdegree data where the spec is formula-backed; coset
    /// actions report the degree only.
    pub fn degree(&self) -> Result<BigUint, CosetError> {
        match self {
            ActionSpec::Subsets { m, s } => Ok(binomial(*m as u64, *s as u64)),
            ActionSpec::Partitions { s, t } => Ok(partition_degree(*s, *t)),
            ActionSpec::Cosets { socle, stabilizer, .. } => {
                Ok(coset_degree(socle, stabilizer)?.value())
            }
        }
    }
}
