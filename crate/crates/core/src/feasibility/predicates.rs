//! Registry of the named inequality predicates behind the case
//! eliminations, evaluated exactly over finite grids.
//!
//! A predicate maps a grid point to an exact (lhs, rhs) integer pair; the
//! point survives when lhs < rhs, meaning the necessary condition chain is
//! still satisfiable there and the case is NOT eliminated at that point.
//! Callers assert the expected conclusion (emptiness, or a forced index such
//! as i = 2) over the default grid.

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::FeasibilityError;
use crate::arith::prime_powers_in;

/// One point of a scan grid. Fields a predicate does not use stay at their
/// defaults and are omitted from serialized records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GridPoint {
    pub m: u32,
    pub q: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<i8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Any,
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy)]
enum IndexRule {
    /// No index variable.
    None,
    /// lo ..= f(m)
    UpTo(u32, fn(u32) -> u32),
    /// Fixed single value.
    Fixed(u32),
}

#[derive(Debug, Clone, Copy)]
enum MParity {
    Any,
    Even,
    Odd,
}

struct PredicateSpec {
    id: &'static str,
    summary: &'static str,
    reference: &'static str,
    q_parity: Parity,
    m_parity: MParity,
    default_m: (u32, u32),
    default_q: (u64, u64),
    index: IndexRule,
    eps: bool,
    eval: fn(&GridPoint) -> (BigUint, BigUint),
}

/// Inclusive range overrides for a scan, loadable from TOML.
#[derive(Debug, Clone, Default, Deserialize)]
pub struct GridConfig {
    pub m: Option<[u32; 2]>,
    pub q: Option<[u64; 2]>,
    pub i: Option<[u32; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Survivor {
    pub point: GridPoint,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanResult {
    pub id: String,
    pub summary: String,
    pub reference: String,
    pub points_scanned: u64,
    pub survivors: Vec<Survivor>,
}

fn big(q: u64) -> BigUint {
    BigUint::from(q)
}

fn pow(q: u64, e: u32) -> BigUint {
    big(q).pow(e)
}

// q^(i(m−i))·(q−1)² < 2(q^(m−i) − 1)²  [linear socle, i-space stabilizer]
fn eval_331(p: &GridPoint) -> (BigUint, BigUint) {
    let (m, q, i) = (p.m, p.q, p.i.unwrap());
    let lhs = pow(q, i * (m - i)) * (big(q) - 1u32).pow(2);
    let rhs = 2u32 * (pow(q, m - i) - 1u32).pow(2);
    (lhs, rhs)
}

// q^(m²−2)·d³ < (m!)³·(q−1)^(3m−3)  [linear socle, fully split torus normalizer]
fn eval_332(p: &GridPoint) -> (BigUint, BigUint) {
    let (m, q) = (p.m, p.q);
    let d = num_integer::gcd(m as u64, q - 1);
    let mut fact = BigUint::one();
    for j in 2..=m as u64 {
        fact *= j;
    }
    let lhs = pow(q, m * m - 2) * big(d).pow(3);
    let rhs = fact.pow(3) * (big(q) - 1u32).pow(3 * m - 3);
    (lhs, rhs)
}

// q^(i(2m−3i)) < 2q³(q^(m−2) + 1)  [unitary socle, parabolic, even q]
fn eval_341(p: &GridPoint) -> (BigUint, BigUint) {
    let (m, q, i) = (p.m, p.q, p.i.unwrap());
    let lhs = pow(q, i * (2 * m - 3 * i));
    let rhs = 2u32 * pow(q, 3) * (pow(q, m - 2) + 1u32);
    (lhs, rhs)
}

// i = 1 refinement: q^(2m−3) < 2q²(q^(m−2) + 1), using (v−1)₂ = q²
fn eval_341_i1(p: &GridPoint) -> (BigUint, BigUint) {
    let (m, q) = (p.m, p.q);
    let lhs = pow(q, 2 * m - 3);
    let rhs = 2u32 * pow(q, 2) * (pow(q, m - 2) + 1u32);
    (lhs, rhs)
}

// i = 2 refinement: q^(4m−12) < 2²·q^(m+1)
fn eval_341_i2(p: &GridPoint) -> (BigUint, BigUint) {
    let (m, q) = (p.m, p.q);
    (pow(q, 4 * m - 12), 4u32 * pow(q, m + 1))
}

// q^(i(4m−3i))·(q−1) < 2q(q^m − 1)  [symplectic socle, parabolic, even q]
fn eval_351(p: &GridPoint) -> (BigUint, BigUint) {
    let (m, q, i) = (p.m, p.q, p.i.unwrap());
    let lhs = pow(q, i * (4 * m - 3 * i)) * (big(q) - 1u32);
    let rhs = 2u32 * big(q) * (pow(q, m) - 1u32);
    (lhs, rhs)
}

// index feasibility i² < i + 2 extracted from the same chain
fn eval_351_index(p: &GridPoint) -> (BigUint, BigUint) {
    let i = p.i.unwrap();
    (big((i * i) as u64), big((i + 2) as u64))
}

// q^m(q^m − 1)(q+1)² < 4(q^m + 1)²  [odd-dimension orthogonal, minus-type
// reflection stabilizer]
fn eval_361(p: &GridPoint) -> (BigUint, BigUint) {
    let (m, q) = (p.m, p.q);
    let qm = pow(q, m);
    let lhs = &qm * (&qm - 1u32) * (big(q) + 1u32).pow(2);
    let rhs = 4u32 * (&qm + 1u32).pow(2);
    (lhs, rhs)
}

// q^(i(4m−3i−1)/2) < 2⁶·q³·(q^(m−1) + 1)  [even-dimension orthogonal,
// parabolic, even q]
fn eval_371(p: &GridPoint) -> (BigUint, BigUint) {
    let (m, q, i) = (p.m, p.q, p.i.unwrap());
    let e = i * (4 * m - 3 * i - 1);
    debug_assert!(e % 2 == 0);
    let lhs = pow(q, e / 2);
    let rhs = 64u32 * pow(q, 3) * (pow(q, m - 1) + 1u32);
    (lhs, rhs)
}

/// Number of totally singular i-subspaces of the ε-type orthogonal space of
/// dimension 2m: ∏_{j=0}^{i−1} (q^(m−j) − ε)(q^(m−j−1) + ε) / ∏_{j=1}^i (q^j − 1).
fn totally_singular_count(m: u32, q: u64, i: u32, eps: i8) -> BigUint {
    let mut num = BigUint::one();
    for j in 0..i {
        let a = if eps > 0 { pow(q, m - j) - 1u32 } else { pow(q, m - j) + 1u32 };
        let b = if eps > 0 { pow(q, m - j - 1) + 1u32 } else { pow(q, m - j - 1) - 1u32 };
        num *= a * b;
    }
    let mut den = BigUint::one();
    for j in 1..=i {
        den *= pow(q, j) - 1u32;
    }
    assert!((&num % &den) == BigUint::ZERO, "subspace count must be integral");
    num / den
}

// exact coset degrees against the p-power subdegree bound: v_i < 2·k*·(q^(m−1)+1)
// with k* ≤ q for i ∈ {1, 2} and k* ≤ q³ for i = 3
fn eval_371_exact(p: &GridPoint) -> (BigUint, BigUint) {
    let (m, q, i) = (p.m, p.q, p.i.unwrap());
    let eps = p.eps.unwrap();
    let v = totally_singular_count(m, q, i, eps);
    let k_star_cap = if i <= 2 { big(q) } else { pow(q, 3) };
    let rhs = 2u32 * k_star_cap * (pow(q, m - 1) + 1u32);
    (v, rhs)
}

// plus-type maximal totally singular stabilizer, m even:
// q^(m(m−1)/2)·(q−1) < 2q(q^m − 1)
fn eval_pm_even(p: &GridPoint) -> (BigUint, BigUint) {
    let (m, q) = (p.m, p.q);
    let lhs = pow(q, m * (m - 1) / 2) * (big(q) - 1u32);
    let rhs = 2u32 * big(q) * (pow(q, m) - 1u32);
    (lhs, rhs)
}

// same stabilizer, m odd: q^(m(m−1)/2)·(q−1)² < 2(q^m − 1)²
fn eval_pm_odd(p: &GridPoint) -> (BigUint, BigUint) {
    let (m, q) = (p.m, p.q);
    let lhs = pow(q, m * (m - 1) / 2) * (big(q) - 1u32).pow(2);
    let rhs = 2u32 * (pow(q, m) - 1u32).pow(2);
    (lhs, rhs)
}

// triality-stable parabolic of the m = 4 plus-type socle. Its index is the
// flag count (q⁴−1)²(q⁶−1)/(q−1)³, an 11-dimensional variety; the predicate
// is v < 2(q+1)².
fn eval_p134(p: &GridPoint) -> (BigUint, BigUint) {
    let q = p.q;
    let num = (pow(q, 4) - 1u32).pow(2) * (pow(q, 6) - 1u32);
    let den = (big(q) - 1u32).pow(3);
    assert!((&num % &den) == BigUint::ZERO);
    (num / den, 2u32 * (big(q) + 1u32).pow(2))
}

fn half_m(m: u32) -> u32 {
    m / 2
}

fn full_m(m: u32) -> u32 {
    m
}

fn m_minus_1(m: u32) -> u32 {
    m - 1
}

const PREDICATES: &[PredicateSpec] = &[
    PredicateSpec {
        id: "3.3.1",
        summary: "linear socle, i-space stabilizer: q^(i(m-i))(q-1)^2 < 2(q^(m-i)-1)^2",
        reference: "eq:3.3.1",
        q_parity: Parity::Any,
        m_parity: MParity::Any,
        default_m: (5, 24),
        default_q_max: 32,
        index: IndexRule::UpTo(2, half_m),
        eps: false,
        eval: eval_331,
    },
    PredicateSpec {
        id: "3.3.2",
        summary: "linear socle, split torus normalizer: q^(m^2-2)d^3 < (m!)^3(q-1)^(3m-3)",
        reference: "eq:3.3.2",
        q_parity: Parity::Odd,
        m_parity: MParity::Any,
        default_m: (5, 24),
        default_q_max: 64,
        index: IndexRule::None,
        eps: false,
        eval: eval_332,
    },
    PredicateSpec {
        id: "3.4.1",
        summary: "unitary socle, parabolic, even q: q^(i(2m-3i)) < 2q^3(q^(m-2)+1)",
        reference: "eq:3.4.1",
        q_parity: Parity::Even,
        m_parity: MParity::Any,
        default_m: (5, 24),
        default_q_max: 64,
        index: IndexRule::UpTo(1, half_m),
        eps: false,
        eval: eval_341,
    },
    PredicateSpec {
        id: "3.4.1a",
        summary: "refinement at i = 1 with (v-1)_2 = q^2: q^(2m-3) < 2q^2(q^(m-2)+1)",
        reference: "eq:3.4.1/i=1",
        q_parity: Parity::Even,
        m_parity: MParity::Any,
        default_m: (5, 24),
        default_q_max: 64,
        index: IndexRule::Fixed(1),
        eps: false,
        eval: eval_341_i1,
    },
    PredicateSpec {
        id: "3.4.1b",
        summary: "refinement at i = 2: q^(4m-12) < 4q^(m+1)",
        reference: "eq:3.4.1/i=2",
        q_parity: Parity::Even,
        m_parity: MParity::Any,
        default_m: (5, 24),
        default_q_max: 64,
        index: IndexRule::Fixed(2),
        eps: false,
        eval: eval_341_i2,
    },
    PredicateSpec {
        id: "3.5.1",
        summary: "symplectic socle, parabolic, even q: q^(i(4m-3i))(q-1) < 2q(q^m-1)",
        reference: "eq:3.5.1",
        q_parity: Parity::Even,
        m_parity: MParity::Any,
        default_m: (2, 20),
        default_q_max: 64,
        index: IndexRule::UpTo(1, full_m),
        eps: false,
        eval: eval_351,
    },
    PredicateSpec {
        id: "3.5.1a",
        summary: "index feasibility extracted from the same chain: i^2 < i+2",
        reference: "eq:3.5.1/index",
        q_parity: Parity::Even,
        m_parity: MParity::Any,
        default_m: (2, 20),
        default_q_max: 64,
        index: IndexRule::UpTo(1, full_m),
        eps: false,
        eval: eval_351_index,
    },
    PredicateSpec {
        id: "3.6.1",
        summary: "odd-dim orthogonal socle, minus-type point stabilizer: q^m(q^m-1)(q+1)^2 < 4(q^m+1)^2",
        reference: "eq:3.6.1",
        q_parity: Parity::Odd,
        m_parity: MParity::Any,
        default_m: (3, 20),
        default_q_max: 64,
        index: IndexRule::None,
        eps: false,
        eval: eval_361,
    },
    PredicateSpec {
        id: "3.7.1",
        summary: "even-dim orthogonal socle, parabolic, even q: q^(i(4m-3i-1)/2) < 2^6 q^3 (q^(m-1)+1)",
        reference: "eq:3.7.1",
        q_parity: Parity::Even,
        m_parity: MParity::Any,
        default_m: (4, 20),
        default_q_max: 64,
        index: IndexRule::UpTo(1, m_minus_1),
        eps: false,
        eval: eval_371,
    },
    PredicateSpec {
        id: "3.7.1a",
        summary: "exact singular-subspace degrees at i <= 3 against the p-power subdegree cap",
        reference: "eq:3.7.1/exact",
        q_parity: Parity::Even,
        m_parity: MParity::Any,
        default_m: (4, 20),
        default_q_max: 64,
        index: IndexRule::UpTo(1, |_| 3),
        eps: true,
        eval: eval_371_exact,
    },
    PredicateSpec {
        id: "prop7-pm-even",
        summary: "plus-type maximal singular stabilizer, m even: q^(m(m-1)/2)(q-1) < 2q(q^m-1)",
        reference: "prop:7/pm-even",
        q_parity: Parity::Even,
        m_parity: MParity::Even,
        default_m: (4, 20),
        default_q_max: 64,
        index: IndexRule::None,
        eps: false,
        eval: eval_pm_even,
    },
    PredicateSpec {
        id: "prop7-pm-odd",
        summary: "plus-type maximal singular stabilizer, m odd: q^(m(m-1)/2)(q-1)^2 < 2(q^m-1)^2",
        reference: "prop:7/pm-odd",
        q_parity: Parity::Even,
        m_parity: MParity::Odd,
        default_m: (5, 21),
        default_q_max: 64,
        index: IndexRule::None,
        eps: false,
        eval: eval_pm_odd,
    },
    PredicateSpec {
        id: "prop7-p134",
        summary: "triality parabolic of the m = 4 plus-type socle: (q^6-1)(q^4-1)/(q-1)^3 < 2(q+1)^2",
        reference: "prop:7/p134",
        q_parity: Parity::Even,
        m_parity: MParity::Any,
        default_m: (4, 4),
        default_q_max: 64,
        index: IndexRule::None,
        eps: false,
        eval: eval_p134,
    },
];

fn spec_for(id: &str) -> Result<&'static PredicateSpec, FeasibilityError> {
    PREDICATES
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| FeasibilityError::UnknownPredicate(id.to_string()))
}

/// All registered predicate ids, in registry order.
pub fn predicate_ids() -> Vec<&'static str> {
    PREDICATES.iter().map(|s| s.id).collect()
}

/// Inclusive (m range, q range) pair.
pub type GridRanges = ((u32, u32), (u64, u64));

/// The default grid of a predicate.
pub fn default_grid(id: &str) -> Result<GridRanges, FeasibilityError> {
    let spec = spec_for(id)?;
    Ok((spec.default_m, (2, spec.default_q_max)))
}

/// Evaluates a registered predicate over its (possibly overridden) grid and
/// returns the surviving points, sorted.
pub fn scan(id: &str, cfg: Option<&GridConfig>) -> Result<ScanResult, FeasibilityError> {
    let spec = spec_for(id)?;
    let (m_lo, m_hi) = cfg.and_then(|c| c.m).map(|r| (r[0], r[1])).unwrap_or(spec.default_m);
    let (q_lo, q_hi) = cfg
        .and_then(|c| c.q)
        .map(|r| (r[0], r[1]))
        .unwrap_or((2, spec.default_q_max));
    if m_lo > m_hi || q_lo > q_hi {
        return Err(FeasibilityError::BadConfig("empty range".into()));
    }

    let qs: Vec<u64> = prime_powers_in(q_lo, q_hi)
        .into_iter()
        .filter(|q| match spec.q_parity {
            Parity::Any => true,
            Parity::Even => q.is_even(),
            Parity::Odd => q.is_odd(),
        })
        .filter_map(|q| q.value_u64())
        .collect();

    let ms: Vec<u32> = (m_lo..=m_hi)
        .filter(|m| match spec.m_parity {
            MParity::Any => true,
            MParity::Even => m % 2 == 0,
            MParity::Odd => m % 2 == 1,
        })
        .collect();

    let points: Vec<GridPoint> = ms
        .iter()
        .flat_map(|&m| {
            qs.iter().flat_map(move |&q| {
                let indices: Vec<Option<u32>> = match spec.index {
                    IndexRule::None => vec![None],
                    IndexRule::Fixed(i) => vec![Some(i)],
                    IndexRule::UpTo(lo, hi_fn) => {
                        let lo = cfg.and_then(|c| c.i).map(|r| r[0]).unwrap_or(lo);
                        let hi = cfg.and_then(|c| c.i).map(|r| r[1]).unwrap_or_else(|| hi_fn(m));
                        (lo..=hi.min(hi_fn(m))).map(Some).collect()
                    }
                };
                let eps_values: Vec<Option<i8>> =
                    if spec.eps { vec![Some(1), Some(-1)] } else { vec![None] };
                indices.into_iter().flat_map(move |i| {
                    eps_values
                        .clone()
                        .into_iter()
                        .map(move |eps| GridPoint { m, q, i, eps })
                })
            })
        })
        .collect();

    let mut survivors: Vec<Survivor> = points
        .par_iter()
        .filter_map(|p| {
            let (lhs, rhs) = (spec.eval)(p);
            (lhs < rhs).then(|| Survivor {
                point: *p,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            })
        })
        .collect();
    survivors.sort_by_key(|s| s.point);

    Ok(ScanResult {
        id: spec.id.to_string(),
        summary: spec.summary.to_string(),
        reference: spec.reference.to_string(),
        points_scanned: points.len() as u64,
        survivors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_predicate_is_rejected() {
        assert!(matches!(
            scan("9.9.9", None),
            Err(FeasibilityError::UnknownPredicate(_))
        ));
    }

    #[test]
    fn empty_grid_yields_no_survivors() {
        let cfg = GridConfig { m: Some([5, 5]), q: Some([31, 31]), i: None };
        let r = scan("3.3.1", Some(&cfg)).unwrap();
        assert!(r.survivors.is_empty());
    }

    #[test]
    fn linear_parabolic_survivors_force_i_2() {
        let r = scan("3.3.1", None).unwrap();
        assert!(!r.survivors.is_empty());
        for s in &r.survivors {
            assert_eq!(s.point.i, Some(2), "unexpected survivor {:?}", s.point);
        }
    }

    #[test]
    fn linear_parabolic_sides_are_exact() {
        // m = 5, q = 2, i = 2: 2^12·1 < 2·(2^3 − 1)^2 = 98
        let p = GridPoint { m: 5, q: 2, i: Some(2), eps: None };
        let (lhs, rhs) = eval_331(&p);
        assert_eq!(lhs, BigUint::from(64u32));
        assert_eq!(rhs, BigUint::from(98u32));
    }

    #[test]
    fn torus_normalizer_chain_is_empty() {
        let r = scan("3.3.2", None).unwrap();
        assert!(r.survivors.is_empty());
    }

    #[test]
    fn unitary_parabolic_chain() {
        let r = scan("3.4.1", None).unwrap();
        assert!(!r.survivors.is_empty());
        for s in &r.survivors {
            assert!(s.point.i.unwrap() <= 2);
        }
        assert!(scan("3.4.1a", None).unwrap().survivors.is_empty());
        assert!(scan("3.4.1b", None).unwrap().survivors.is_empty());
    }

    #[test]
    fn symplectic_parabolic_chain() {
        let exact = scan("3.5.1", None).unwrap();
        assert!(exact.survivors.is_empty());
        let index = scan("3.5.1a", None).unwrap();
        assert!(!index.survivors.is_empty());
        for s in &index.survivors {
            assert_eq!(s.point.i, Some(1));
        }
    }

    #[test]
    fn orthogonal_odd_reflection_chain_is_empty() {
        let r = scan("3.6.1", None).unwrap();
        assert!(r.survivors.is_empty());
        // the inequality itself is computed faithfully: at (m,q) = (3,3)
        // lhs = 27·26·16 = 11232 and rhs = 4·28² = 3136
        let p = GridPoint { m: 3, q: 3, i: None, eps: None };
        let (lhs, rhs) = eval_361(&p);
        assert_eq!(lhs, BigUint::from(11232u32));
        assert_eq!(rhs, BigUint::from(3136u32));
    }

    #[test]
    fn orthogonal_even_parabolic_chain() {
        let r = scan("3.7.1", None).unwrap();
        assert!(!r.survivors.is_empty());
        for s in &r.survivors {
            assert!(s.point.i.unwrap() <= 3, "unexpected survivor {:?}", s.point);
        }
        assert!(scan("3.7.1a", None).unwrap().survivors.is_empty());
    }

    #[test]
    fn maximal_singular_chains() {
        assert!(scan("prop7-pm-even", None).unwrap().survivors.is_empty());
        let odd = scan("prop7-pm-odd", None).unwrap();
        for s in &odd.survivors {
            assert_eq!(s.point.m, 5, "rank-3 case is the only survivor");
        }
        assert!(!odd.survivors.is_empty());
        assert!(scan("prop7-p134", None).unwrap().survivors.is_empty());
    }

    #[test]
    fn triality_parabolic_degree_is_the_chamber_ratio() {
        // at q = 2 the flag count is 14175 = 42525/3, one third of the
        // chamber count of the plus-type group of dimension 8
        let p = GridPoint { m: 4, q: 2, i: None, eps: None };
        let (v, _) = eval_p134(&p);
        assert_eq!(v, BigUint::from(14175u32));
    }

    #[test]
    fn singular_subspace_counts() {
        // isotropic points of the plus-type space of dimension 8 over F_2
        assert_eq!(totally_singular_count(4, 2, 1, 1), BigUint::from(135u32));
        // minus type: (q^m+1)(q^(m-1)-1)/(q-1)
        assert_eq!(totally_singular_count(4, 2, 1, -1), BigUint::from(119u32));
        // plus-type planes in dimension 8 over F_2
        assert_eq!(totally_singular_count(4, 2, 3, 1), BigUint::from(2025u32));
    }

    #[test]
    fn determinism_under_thread_count() {
        let sequential = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| scan("3.3.1", None).unwrap());
        let parallel = scan("3.3.1", None).unwrap();
        assert_eq!(
            serde_json::to_string(&sequential.survivors).unwrap(),
            serde_json::to_string(&parallel.survivors).unwrap()
        );
    }
}
