//! Symmetric 2-(v,k,λ) parameter arithmetic: validation, complements, and
//! the k*/λ* decomposition available when the order n = k − λ is prime.

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::arith::is_prime_u64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DesignError {
    #[error("parameters ({0},{1},{2}) violate λ(v-1) = k(k-1)")]
    InvalidParams(u64, u64, u64),
    #[error("complement of ({0},{1},{2}) would have non-positive λ")]
    DegenerateComplement(u64, u64, u64),
}

/// Parameters (v, k, λ) of a symmetric 2-design. Construction enforces the
/// counting identity λ(v−1) = k(k−1) together with 1 ≤ λ < k < v.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DesignParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
}

impl DesignParams {
    pub fn new(v: u64, k: u64, lambda: u64) -> Result<Self, DesignError> {
        let verdict = validate_symmetric(v, k, lambda);
        if !verdict.identity_counting || lambda == 0 || k <= lambda || v <= k {
            return Err(DesignError::InvalidParams(v, k, lambda));
        }
        Ok(DesignParams { v, k, lambda })
    }

    /// The order n = k − λ, shared with the complement.
    pub fn order(&self) -> u64 {
        self.k - self.lambda
    }

    /// 2 < k < v−1.
    pub fn is_nontrivial(&self) -> bool {
        2 < self.k && self.k < self.v - 1
    }
}

impl std::fmt::Display for DesignParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "2-({},{},{})", self.v, self.k, self.lambda)
    }
}

/// Outcome of checking a raw (v, k, λ) triple against the symmetric-design
/// identities. The two identities are reported independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymmetryVerdict {
    /// (v−k)λ = (k−1)(k−λ)
    pub identity_fisher: bool,
    /// λ(v−1) = k(k−1)
    pub identity_counting: bool,
    /// 2 < k < v−1
    pub nontrivial: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SymmetryOutcome {
    Ok,
    ViolatedIdentity,
    Trivial,
}

impl SymmetryVerdict {
    pub fn outcome(&self) -> SymmetryOutcome {
        if !(self.identity_fisher && self.identity_counting) {
            SymmetryOutcome::ViolatedIdentity
        } else if !self.nontrivial {
            SymmetryOutcome::Trivial
        } else {
            SymmetryOutcome::Ok
        }
    }

    pub fn is_ok(&self) -> bool {
        self.outcome() == SymmetryOutcome::Ok
    }
}

/// Checks both design identities and non-triviality on a raw triple.
pub fn validate_symmetric(v: u64, k: u64, lambda: u64) -> SymmetryVerdict {
    let (v, k, l) = (v as i128, k as i128, lambda as i128);
    SymmetryVerdict {
        identity_fisher: (v - k) * l == (k - 1) * (k - l),
        identity_counting: l * (v - 1) == k * (k - 1),
        nontrivial: 2 < k && k < v - 1,
    }
}

/// Complement parameters (v, v−k, v−2k+λ). An involution preserving the
/// order k − λ.
pub fn complement(params: DesignParams) -> Result<DesignParams, DesignError> {
    let DesignParams { v, k, lambda } = params;
    if v + lambda <= 2 * k {
        return Err(DesignError::DegenerateComplement(v, k, lambda));
    }
    DesignParams::new(v, v - k, v + lambda - 2 * k)
}

/// The decomposition k = g·k*, λ = g·λ* available when n = k − λ is prime;
/// g = gcd(k, λ) is then 1 or n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeOrderDecomposition {
    /// The prime order n = k − λ.
    pub n: u64,
    /// gcd(k, λ), either 1 or n.
    pub g: u64,
    pub k_star: u64,
    pub lambda_star: u64,
}

/// Decomposes valid parameters when the order is prime.
///
/// When g = n the identity v = n(k*+1) + (n−1)/(k*−1) holds exactly, with
/// (k*−1) | (n−1) implied; both are re-verified here.
pub fn decompose_prime_order(params: DesignParams) -> Option<PrimeOrderDecomposition> {
    let n = params.order();
    if !is_prime_u64(n) {
        return None;
    }
    let g = params.k.gcd(&params.lambda);
    debug_assert!(g == 1 || g == n);
    let decomp = PrimeOrderDecomposition {
        n,
        g,
        k_star: params.k / g,
        lambda_star: params.lambda / g,
    };
    if g == n {
        assert_eq!(decomp.k_star - decomp.lambda_star, 1);
        let ks = decomp.k_star;
        assert_eq!((n - 1) % (ks - 1), 0, "(k*-1) must divide (n-1)");
        assert_eq!(params.v, n * (ks + 1) + (n - 1) / (ks - 1));
    }
    Some(decomp)
}

/// The three divisibility conditions a non-trivial subdegree d must satisfy:
/// k | λd, k* | d and k* | gcd(v−1, d).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubdegreeVerdict {
    pub k_divides_lambda_d: bool,
    pub k_star_divides_d: bool,
    pub k_star_divides_gcd: bool,
}

impl SubdegreeVerdict {
    pub fn passes(&self) -> bool {
        self.k_divides_lambda_d && self.k_star_divides_d && self.k_star_divides_gcd
    }
}

/// Applies the subdegree divisibility filter for a candidate subdegree d of
/// a degree-v action, with k = g·k* and λ = g·λ* taken from the
/// decomposition.
pub fn subdegree_filter(decomp: &PrimeOrderDecomposition, d: u64, v: u64) -> SubdegreeVerdict {
    let k = (decomp.g as u128) * (decomp.k_star as u128);
    let lambda_d = (decomp.g as u128) * (decomp.lambda_star as u128) * (d as u128);
    SubdegreeVerdict {
        k_divides_lambda_d: lambda_d.is_multiple_of(k),
        k_star_divides_d: d.is_multiple_of(decomp.k_star),
        k_star_divides_gcd: (v - 1).gcd(&d).is_multiple_of(decomp.k_star),
    }
}

/// v ≤ 2k−1, which holds whenever gcd(k, λ) equals the prime order.
pub fn check_v_below_2k(v: u64, k: u64) -> bool {
    v < 2 * k
}
