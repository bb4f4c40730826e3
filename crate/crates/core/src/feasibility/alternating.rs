//! Searches over alternating and symmetric socles: the intransitive
//! (subset-action) grid, the imprimitive (partition-action) grid, and the
//! three exceptional degree-6 overgroups.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use super::FeasibilityError;
use crate::actions::{partition_d2, partition_degree, subset_top_subdegree};
use crate::arith::{binomial_u64, is_prime_u64, primes_below};

fn factorial(m: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=m as u64 {
        acc *= i;
    }
    acc
}

/// Grid for the subset-action search. The defaults are the ranges forced by
/// the counting bound C(m,s) < 2(m−s)³: s = 3 needs 7 ≤ m ≤ 32 and s = 4
/// needs 9 ≤ m ≤ 12.
#[derive(Debug, Clone, Deserialize)]
pub struct AltIntransitiveConfig {
    pub s3_m: [u32; 2],
    pub s4_m: [u32; 2],
}

impl Default for AltIntransitiveConfig {
    fn default() -> Self {
        AltIntransitiveConfig { s3_m: [7, 32], s4_m: [9, 12] }
    }
}

/// A parameter tuple passing the subset-action conditions
/// (a) v = C(m,s);
/// (b) k* | gcd(v−1, d_s) with d_s = s(m−s);
/// (c) n prime, n ≤ m−s;
/// (d) vk divides the group order (alternating or symmetric);
/// (e) λ = k(k−1)/(v−1) integral;
/// before the final prime-order filter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct IntransitiveTuple {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub s: u32,
    pub m: u32,
    pub n: u64,
    pub k_star: u64,
    pub divides_alternating: bool,
    pub divides_symmetric: bool,
    pub order: u64,
    pub order_prime: bool,
}

/// Rank-3 subset cases (s = 2) settled by the published classification of
/// rank-3 symmetric designs rather than re-derived here.
#[derive(Debug, Clone, Serialize)]
pub struct ExternallyClassified {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub socle: String,
    pub order: u64,
    pub order_prime: bool,
    pub reference: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntransitiveSearch {
    pub tuples: Vec<IntransitiveTuple>,
    /// Tuples whose order k − λ is prime; expected empty.
    pub survivors: Vec<IntransitiveTuple>,
    pub externally_classified: Vec<ExternallyClassified>,
}

pub fn search_alternating_intransitive(
    cfg: &AltIntransitiveConfig,
) -> Result<IntransitiveSearch, FeasibilityError> {
    let default = AltIntransitiveConfig::default();
    if cfg.s3_m[0] > default.s3_m[0]
        || cfg.s3_m[1] < default.s3_m[1]
        || cfg.s4_m[0] > default.s4_m[0]
        || cfg.s4_m[1] < default.s4_m[1]
    {
        return Err(FeasibilityError::ConfigTooNarrow(format!(
            "subset grid must cover s=3, m in {:?} and s=4, m in {:?}",
            default.s3_m, default.s4_m
        )));
    }

    let mut tuples: BTreeSet<IntransitiveTuple> = BTreeSet::new();
    let grids = [(3u32, cfg.s3_m), (4u32, cfg.s4_m)];
    for (s, [m_lo, m_hi]) in grids {
        for m in m_lo..=m_hi {
            if s * 2 >= m {
                continue; // the analysis assumes s < m/2
            }
            let v = binomial_u64(m as u64, s as u64);
            let d_s = subset_top_subdegree(m, s);
            let g = (v - 1).gcd(&d_s);
            let m_factorial = factorial(m);
            let half_factorial = &m_factorial / 2u32;

            for k_star in divisors(g) {
                for n in primes_below((m - s) as u64 + 1) {
                    let k = n * k_star;
                    if k < 2 || k >= v {
                        continue;
                    }
                    let num = k as u128 * (k as u128 - 1);
                    if !num.is_multiple_of(v as u128 - 1) {
                        continue;
                    }
                    let lambda = (num / (v as u128 - 1)) as u64;
                    let vk = BigUint::from(v) * BigUint::from(k);
                    let divides_alternating = (&half_factorial % &vk) == BigUint::ZERO;
                    let divides_symmetric = (&m_factorial % &vk) == BigUint::ZERO;
                    if !(divides_alternating || divides_symmetric) {
                        continue;
                    }
                    let order = k - lambda;
                    tuples.insert(IntransitiveTuple {
                        v,
                        k,
                        lambda,
                        s,
                        m,
                        n,
                        k_star,
                        divides_alternating,
                        divides_symmetric,
                        order,
                        order_prime: is_prime_u64(order),
                    });
                }
            }
        }
    }

    // Distinct (n, k*) splittings of the same k give the same parameter
    // tuple; keep one representative per (v, k, λ, s, m).
    let mut seen = BTreeSet::new();
    let tuples: Vec<IntransitiveTuple> = tuples
        .into_iter()
        .filter(|t| seen.insert((t.v, t.k, t.lambda, t.s, t.m)))
        .collect();

    let survivors = tuples.iter().filter(|t| t.order_prime).cloned().collect();
    Ok(IntransitiveSearch {
        tuples,
        survivors,
        externally_classified: vec![
            ExternallyClassified {
                v: 15,
                k: 7,
                lambda: 3,
                socle: "A(6)".into(),
                order: 4,
                order_prime: false,
                reference: "prop:8/case1/s=2".into(),
            },
            ExternallyClassified {
                v: 35,
                k: 17,
                lambda: 8,
                socle: "A(8)".into(),
                order: 9,
                order_prime: false,
                reference: "prop:8/case1/s=2".into(),
            },
        ],
    })
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Grid for the partition-action search; the defaults are the ranges left by
/// (t!)^(s−1) < s³t²(t−1).
#[derive(Debug, Clone, Deserialize)]
pub struct AltImprimitiveConfig {
    pub t2_s: [u32; 2],
    pub t3_s: [u32; 2],
    pub t4_s: [u32; 2],
}

impl Default for AltImprimitiveConfig {
    fn default() -> Self {
        AltImprimitiveConfig { t2_s: [3, 14], t3_s: [3, 5], t4_s: [3, 3] }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ImprimitivePreCandidate {
    pub t: u32,
    pub s: u32,
    pub v: u64,
    pub m: u32,
    pub d2: u64,
    /// v < 2·max(s,t)·d₂
    pub survives: bool,
}

/// A full parameter candidate on a surviving partition degree; expected
/// never to occur.
#[derive(Debug, Clone, Serialize)]
pub struct ImprimitiveCandidate {
    pub t: u32,
    pub s: u32,
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub order: u64,
}

/// The s = 2, t = 3 block-size candidates and their non-integral λ.
#[derive(Debug, Clone, Serialize)]
pub struct S2T3Elimination {
    pub k: u64,
    pub lambda_num: u64,
    pub lambda_den: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ImprimitiveSearch {
    pub pre_candidates: Vec<ImprimitivePreCandidate>,
    pub s2_t3_eliminations: Vec<S2T3Elimination>,
    /// Expected empty.
    pub candidates: Vec<ImprimitiveCandidate>,
}

pub fn search_alternating_imprimitive(
    cfg: &AltImprimitiveConfig,
) -> Result<ImprimitiveSearch, FeasibilityError> {
    let default = AltImprimitiveConfig::default();
    for (got, want) in [(cfg.t2_s, default.t2_s), (cfg.t3_s, default.t3_s), (cfg.t4_s, default.t4_s)] {
        if got[0] > want[0] || got[1] < want[1] {
            return Err(FeasibilityError::ConfigTooNarrow(
                "partition grid must cover t=2 s in [3,14], t=3 s in [3,5], t=4 s=3".into(),
            ));
        }
    }

    let mut pre_candidates = Vec::new();
    let grids = [(2u32, cfg.t2_s), (3, cfg.t3_s), (4, cfg.t4_s)];
    for (t, [s_lo, s_hi]) in grids {
        for s in s_lo..=s_hi {
            let v = partition_degree(s, t)
                .to_u64()
                .expect("partition degree fits a machine word on this grid");
            let d2 = partition_d2(s, t);
            let survives = BigUint::from(v) < BigUint::from(2 * s.max(t) as u64) * d2;
            pre_candidates.push(ImprimitivePreCandidate { t, s, v, m: s * t, d2, survives });
        }
    }

    let mut candidates = Vec::new();
    for pre in pre_candidates.iter().filter(|p| p.survives) {
        let m = pre.m;
        let m_factorial = factorial(m);
        let half_factorial = &m_factorial / 2u32;
        for k in 3..pre.v {
            let num = k as u128 * (k as u128 - 1);
            if !num.is_multiple_of(pre.v as u128 - 1) {
                continue;
            }
            let lambda = (num / (pre.v as u128 - 1)) as u64;
            let order = k - lambda;
            if !is_prime_u64(order) {
                continue;
            }
            let vk = BigUint::from(pre.v) * BigUint::from(k);
            if (&half_factorial % &vk) != BigUint::ZERO && (&m_factorial % &vk) != BigUint::ZERO {
                continue;
            }
            candidates.push(ImprimitiveCandidate {
                t: pre.t,
                s: pre.s,
                v: pre.v,
                k,
                lambda,
                order,
            });
        }
    }

    // s = 2 partitions: only t = 3 fits, v = 15, d₂ = 6; k = n·k* with n a
    // prime at most t and 2 ≤ k* | d₂, inside the non-trivial range.
    let v = 15u64;
    let d2 = 6u64;
    let mut ks = BTreeSet::new();
    for n in primes_below(4) {
        for k_star in divisors(d2).into_iter().filter(|d| *d >= 2) {
            let k = n * k_star;
            if 2 < k && k < v - 1 {
                ks.insert(k);
            }
        }
    }
    assert_eq!(ks.iter().copied().collect::<Vec<_>>(), vec![4, 6, 9, 12]);
    let s2_t3_eliminations = ks
        .into_iter()
        .map(|k| {
            let num = k * (k - 1);
            let g = num.gcd(&(v - 1));
            assert!(num % (v - 1) != 0, "λ must be non-integral here");
            S2T3Elimination { k, lambda_num: num / g, lambda_den: (v - 1) / g }
        })
        .collect();

    Ok(ImprimitiveSearch { pre_candidates, s2_t3_eliminations, candidates })
}

/// Outcome of a degree-6 exceptional-overgroup candidate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum M6Outcome {
    LambdaNonIntegral { num: u64, den: u64 },
    Trivial,
    ExceedsPointCount,
    Survivor { lambda: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct M6Candidate {
    pub v: u64,
    pub k_star: u64,
    pub n: u64,
    pub k: u64,
    /// The point-stabilizer order k divides (half or full overgroup).
    pub stabilizer_order: u64,
    pub outcome: M6Outcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct M6Report {
    pub candidates: Vec<M6Candidate>,
    pub survivors: Vec<M6Candidate>,
}

/// The exceptional degree-6 overgroups have maximal subgroups of index 2,
/// 10, 36 and 45; index 2 cannot carry a non-trivial design, and the other
/// three degrees are eliminated candidate by candidate. Group orders 720 and
/// 1440 give the two possible point-stabilizer orders per degree.
pub fn search_m6_special() -> M6Report {
    let mut candidates = Vec::new();
    for v in [10u64, 36, 45] {
        let stab_orders = [720 / v, 1440 / v];
        for k_star in divisors(v - 1).into_iter().filter(|d| *d >= 2) {
            for n in primes_below(stab_orders[1] + 1) {
                let k = n * k_star;
                let Some(stab) = stab_orders.iter().copied().find(|s| s % k == 0) else {
                    continue;
                };
                let outcome = if k > v - 1 {
                    M6Outcome::ExceedsPointCount
                } else if k == v - 1 {
                    M6Outcome::Trivial
                } else {
                    let num = k * (k - 1);
                    if num % (v - 1) == 0 {
                        M6Outcome::Survivor { lambda: num / (v - 1) }
                    } else {
                        let g = num.gcd(&(v - 1));
                        M6Outcome::LambdaNonIntegral { num: num / g, den: (v - 1) / g }
                    }
                };
                candidates.push(M6Candidate { v, k_star, n, k, stabilizer_order: stab, outcome });
            }
        }
    }
    let survivors = candidates
        .iter()
        .filter(|c| matches!(c.outcome, M6Outcome::Survivor { .. }))
        .cloned()
        .collect();
    M6Report { candidates, survivors }
}
