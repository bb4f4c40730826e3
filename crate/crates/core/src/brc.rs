//! Bruck–Ryser–Chowla existence gate.
//!
//! For even v the order n = k − λ must be a perfect square. For odd v the
//! equation n·x² + (−1)^((v−1)/2)·λ·y² = z² must have a non-trivial integer
//! solution. Solvability of the associated ternary form a·x² + b·y² + c·z² = 0
//! is decided by Legendre's criterion after an invertible normalization to a
//! squarefree, pairwise coprime form; witnesses found by bounded search map
//! back through the normalization exactly.

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{factorize_u64, is_perfect_square_u64, isqrt_u64};
use crate::design::DesignParams;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TernaryError {
    #[error("coefficients must be nonzero")]
    ZeroCoefficient,
    #[error("all coefficients have the same sign; the form is definite")]
    AllSameSign,
}

/// A ternary form a·x² + b·y² + c·z² with squarefree, pairwise coprime
/// coefficients of mixed signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LegendreForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl LegendreForm {
    /// Validates the normal-form invariants.
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self, TernaryError> {
        if a == 0 || b == 0 || c == 0 {
            return Err(TernaryError::ZeroCoefficient);
        }
        if (a > 0 && b > 0 && c > 0) || (a < 0 && b < 0 && c < 0) {
            return Err(TernaryError::AllSameSign);
        }
        for v in [a, b, c] {
            assert!(is_squarefree(v.unsigned_abs()), "{v} is not squarefree");
        }
        assert_eq!(a.gcd(&b), 1);
        assert_eq!(b.gcd(&c), 1);
        assert_eq!(a.gcd(&c), 1);
        Ok(LegendreForm { a, b, c })
    }

    pub fn evaluate(&self, x: i64, y: i64, z: i64) -> i128 {
        self.a as i128 * (x as i128) * (x as i128)
            + self.b as i128 * (y as i128) * (y as i128)
            + self.c as i128 * (z as i128) * (z as i128)
    }
}

impl std::fmt::Display for LegendreForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x² + {}y² + {}z² = 0", self.a, self.b, self.c)
    }
}

fn is_squarefree(n: u64) -> bool {
    factorize_u64(n).is_ok_and(|f| f.factors().iter().all(|(_, e)| *e == 1))
}

/// Maps a witness of the normalized form back to a witness of the original
/// form by per-component multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessTransform {
    pub mul: [u64; 3],
}

impl WitnessTransform {
    fn identity() -> Self {
        WitnessTransform { mul: [1, 1, 1] }
    }

    pub fn apply(&self, w: (i64, i64, i64)) -> (i64, i64, i64) {
        (
            w.0 * self.mul[0] as i64,
            w.1 * self.mul[1] as i64,
            w.2 * self.mul[2] as i64,
        )
    }
}

/// Reduces an arbitrary nonzero-coefficient form to Legendre normal form.
///
/// Two reduction moves are applied until stable, and both preserve
/// solvability in each direction:
/// - stripping a square factor α² from one coefficient multiplies the other
///   two witness components by α;
/// - a prime p dividing exactly two coefficients is divided out of them and
///   multiplied onto the third, whose witness component picks up a factor p.
pub fn normalize_ternary(
    a: i64,
    b: i64,
    c: i64,
) -> Result<(LegendreForm, WitnessTransform), TernaryError> {
    if a == 0 || b == 0 || c == 0 {
        return Err(TernaryError::ZeroCoefficient);
    }
    let mut coeff = [a, b, c];
    let mut transform = WitnessTransform::identity();

    loop {
        let mut changed = false;

        // common factor of all three
        let g = coeff[0].gcd(&coeff[1]).gcd(&coeff[2]);
        if g > 1 {
            for v in coeff.iter_mut() {
                *v /= g;
            }
            changed = true;
        }

        // square parts
        for (i, c) in coeff.iter_mut().enumerate() {
            let alpha = square_part(c.unsigned_abs());
            if alpha > 1 {
                *c /= (alpha * alpha) as i64;
                for (j, factor) in transform.mul.iter_mut().enumerate() {
                    if j != i {
                        *factor *= alpha;
                    }
                }
                changed = true;
            }
        }

        // prime shared by exactly two coefficients
        'pairs: for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let g = coeff[i].gcd(&coeff[j]);
            if g > 1 {
                let p = smallest_prime_factor(g as u64) as i64;
                let k = 3 - i - j;
                coeff[i] /= p;
                coeff[j] /= p;
                coeff[k] *= p;
                transform.mul[k] *= p as u64;
                changed = true;
                break 'pairs;
            }
        }

        if !changed {
            break;
        }
    }

    let [a, b, c] = coeff;
    let form = LegendreForm::new(a, b, c)?;
    Ok((form, transform))
}

fn square_part(n: u64) -> u64 {
    let f = factorize_u64(n).expect("positive");
    f.factors()
        .iter()
        .map(|(p, e)| p.to_u64().expect("word-size prime").pow(e / 2))
        .product()
}

fn smallest_prime_factor(n: u64) -> u64 {
    let f = factorize_u64(n).expect("positive");
    f.factors()[0].0.to_u64().expect("word-size prime")
}

/// A modulus and non-residue certifying local unsolvability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    /// Prime modulus at which the residue condition fails.
    pub modulus: u64,
    /// The value that is required to be (but is not) a square mod `modulus`.
    pub residue: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LegendreOutcome {
    /// Solvable, with a verified non-trivial witness of the form.
    Solvable { witness: (i64, i64, i64) },
    /// The residue criterion certifies solvability but the bounded witness
    /// search was capped before finding one.
    SolvableNoWitness { cap: u64 },
    Unsolvable { obstruction: Obstruction },
}

impl LegendreOutcome {
    pub fn is_solvable(&self) -> bool {
        !matches!(self, LegendreOutcome::Unsolvable { .. })
    }
}

/// Default cap on the (x, y) witness-search loop.
pub const WITNESS_SEARCH_CAP: u64 = 100_000_000;

/// Decides solvability of a normalized Legendre form.
///
/// The residue criterion is the decision procedure: the form is solvable iff
/// −bc, −ac and −ab are squares modulo |a|, |b| and |c| respectively. When it
/// reports solvable, a witness is searched within the size guarantee
/// |x| ≤ √|bc|, |y| ≤ √|ac|, |z| ≤ √|ab|, subject to `cap` loop iterations.
pub fn legendre_solvable(form: &LegendreForm) -> LegendreOutcome {
    legendre_solvable_capped(form, WITNESS_SEARCH_CAP)
}

pub fn legendre_solvable_capped(form: &LegendreForm, cap: u64) -> LegendreOutcome {
    let LegendreForm { a, b, c } = *form;
    for (m, r) in [(a, -b * c), (b, -a * c), (c, -a * b)] {
        if let Some(p) = non_residue_witness(r, m.unsigned_abs()) {
            return LegendreOutcome::Unsolvable {
                obstruction: Obstruction { modulus: p, residue: r },
            };
        }
    }
    match search_witness(form, cap) {
        Some(w) => LegendreOutcome::Solvable { witness: w },
        None => LegendreOutcome::SolvableNoWitness { cap },
    }
}

/// Smallest prime p | m for which r is not a square mod p, if any. The
/// modulus is squarefree, so squareness mod m reduces to each prime factor.
fn non_residue_witness(r: i64, m: u64) -> Option<u64> {
    if m == 1 {
        return None;
    }
    let f = factorize_u64(m).expect("positive modulus");
    for (p, _) in f.factors() {
        let p = p.to_u64().expect("word-size prime");
        if p == 2 {
            continue; // every residue is a square mod 2
        }
        let rp = r.rem_euclid(p as i64) as u64;
        if !is_square_mod_p(rp, p) {
            return Some(p);
        }
    }
    None
}

fn is_square_mod_p(r: u64, p: u64) -> bool {
    if r == 0 {
        return true;
    }
    // Euler's criterion
    powmod(r, (p - 1) / 2, p) == 1
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Bounded witness search within the Holzer-type box. Exactly one of the
/// coefficient signs differs from the other two; solving for that variable
/// keeps the loop two-dimensional.
fn search_witness(form: &LegendreForm, cap: u64) -> Option<(i64, i64, i64)> {
    let LegendreForm { a, b, c } = *form;
    // Solve for z when c is the odd sign out, else rotate.
    let (p, q, r, rotation) = if (a > 0) == (b > 0) {
        (a, b, c, 0)
    } else if (a > 0) == (c > 0) {
        (a, c, b, 1)
    } else {
        (b, c, a, 2)
    };
    // p·x² + q·y² = −r·w², with p, q same sign, r opposite
    let holzer = |u: i64, v: i64| {
        let prod = u.unsigned_abs() as u128 * v.unsigned_abs() as u128;
        isqrt_u64(prod.min(u64::MAX as u128) as u64)
    };
    let bound_x = holzer(q, r);
    let bound_y = holzer(p, r);
    let bound_w = holzer(p, q);
    let mut iterations = 0u64;
    for x in 0..=bound_x {
        let px = p as i128 * x as i128 * x as i128;
        for y in 0..=bound_y {
            iterations += 1;
            if iterations > cap {
                return None;
            }
            if x == 0 && y == 0 {
                continue;
            }
            let s = px + q as i128 * y as i128 * y as i128;
            let t = -s;
            // t = r·w², same sign as r (or zero)
            let w2 = t / r as i128;
            if w2 < 0 || w2 > u64::MAX as i128 || t % r as i128 != 0 {
                continue;
            }
            let w = isqrt_u64(w2 as u64);
            if (w * w) as i128 == w2 && w <= bound_w {
                let (x, y, w) = (x as i64, y as i64, w as i64);
                let witness = match rotation {
                    0 => (x, y, w),
                    1 => (x, w, y),
                    _ => (w, x, y),
                };
                debug_assert_eq!(form.evaluate(witness.0, witness.1, witness.2), 0);
                return Some(witness);
            }
        }
    }
    None
}

/// Evidence attached to a BRC verdict; every variant is independently
/// re-checkable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BrcEvidence {
    /// Even v: n = root².
    SquareOrder { n: u64, root: u64 },
    /// Even v: n is not a square.
    NonSquareOrder { n: u64 },
    /// Odd v: witness of n·x² + s·λ·y² − z² = 0 (s = ±1 from v mod 4).
    Witness { x: i64, y: i64, z: i64 },
    /// Odd v: solvable by the residue criterion, witness search capped.
    CriterionOnly { cap: u64 },
    /// Odd v: local obstruction at the given prime modulus.
    LocalObstruction { modulus: u64, residue: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrcVerdict {
    pub pass: bool,
    pub evidence: BrcEvidence,
}

/// The Bruck–Ryser–Chowla necessary existence condition.
pub fn brc_check(params: DesignParams) -> BrcVerdict {
    let n = params.order();
    if params.v.is_multiple_of(2) {
        if is_perfect_square_u64(n) {
            return BrcVerdict {
                pass: true,
                evidence: BrcEvidence::SquareOrder { n, root: isqrt_u64(n) },
            };
        }
        return BrcVerdict { pass: false, evidence: BrcEvidence::NonSquareOrder { n } };
    }

    // sign (−1)^((v−1)/2) from v mod 4, never via exponentiation
    let sign: i64 = if params.v % 4 == 1 { 1 } else { -1 };
    let (a, b, c) = (n as i64, sign * params.lambda as i64, -1i64);
    let (form, transform) = normalize_ternary(a, b, c).expect("mixed signs by construction");
    match legendre_solvable(&form) {
        LegendreOutcome::Solvable { witness } => {
            let (x, y, z) = transform.apply(witness);
            // witness soundness against the pre-normalization equation
            let original = a as i128 * (x as i128).pow(2)
                + b as i128 * (y as i128).pow(2)
                + c as i128 * (z as i128).pow(2);
            assert_eq!(original, 0, "witness fails the original equation");
            BrcVerdict { pass: true, evidence: BrcEvidence::Witness { x, y, z } }
        }
        LegendreOutcome::SolvableNoWitness { cap } => {
            BrcVerdict { pass: true, evidence: BrcEvidence::CriterionOnly { cap } }
        }
        LegendreOutcome::Unsolvable { obstruction } => BrcVerdict {
            pass: false,
            evidence: BrcEvidence::LocalObstruction {
                modulus: obstruction.modulus,
                residue: obstruction.residue,
            },
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_strips_shared_prime() {
        // (6, 2, -1): 2 divides a and b, z picks up the factor 2
        let (form, transform) = normalize_ternary(6, 2, -1).unwrap();
        assert_eq!(form, LegendreForm { a: 3, b: 1, c: -2 });
        assert_eq!(transform.mul, [1, 1, 2]);
    }

    #[test]
    fn normalize_keeps_normal_forms() {
        let (form, transform) = normalize_ternary(1, 1, -1).unwrap();
        assert_eq!(form, LegendreForm { a: 1, b: 1, c: -1 });
        assert_eq!(transform.mul, [1, 1, 1]);
    }

    #[test]
    fn normalize_strips_squares() {
        let (form, transform) = normalize_ternary(4, 9, -1).unwrap();
        assert_eq!(form, LegendreForm { a: 1, b: 1, c: -1 });
        // x lost factor 2 (applied to y, z), y lost factor 3 (applied to x, z)
        assert_eq!(transform.mul, [3, 2, 6]);
    }

    #[test]
    fn normalize_rejects_definite_forms() {
        assert_eq!(normalize_ternary(1, 2, 3), Err(TernaryError::AllSameSign));
        assert_eq!(normalize_ternary(-1, -2, -3), Err(TernaryError::AllSameSign));
        assert_eq!(normalize_ternary(0, 1, -1), Err(TernaryError::ZeroCoefficient));
    }

    #[test]
    fn solvable_examples() {
        let form = LegendreForm::new(1, 1, -2).unwrap();
        match legendre_solvable(&form) {
            LegendreOutcome::Solvable { witness: (x, y, z) } => {
                assert_eq!(form.evaluate(x, y, z), 0);
                assert_eq!((x, y, z), (1, 1, 1));
            }
            other => panic!("expected solvable, got {other:?}"),
        }
    }

    #[test]
    fn unsolvable_mod_3() {
        let form = LegendreForm::new(1, 1, -6).unwrap();
        match legendre_solvable(&form) {
            LegendreOutcome::Unsolvable { obstruction } => {
                assert_eq!(obstruction.modulus, 3);
            }
            other => panic!("expected unsolvable, got {other:?}"),
        }
        // exhaustive confirmation on a small box
        for x in 0..=60i64 {
            for y in 0..=60i64 {
                for z in 0..=60i64 {
                    if (x, y, z) != (0, 0, 0) {
                        assert_ne!(form.evaluate(x, y, z), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn normalized_form_from_6_neg2_neg1_has_unit_witness() {
        let (form, transform) = normalize_ternary(6, -2, -1).unwrap();
        assert_eq!(form, LegendreForm { a: 3, b: -1, c: -2 });
        assert_eq!(form.evaluate(1, 1, 1), 0);
        match legendre_solvable(&form) {
            LegendreOutcome::Solvable { witness } => {
                let (x, y, z) = transform.apply(witness);
                let original = 6 * x as i128 * x as i128
                    - 2 * y as i128 * y as i128
                    - z as i128 * z as i128;
                assert_eq!(original, 0);
            }
            other => panic!("expected solvable, got {other:?}"),
        }
    }

    #[test]
    fn brc_examples() {
        // order-6 projective plane does not exist
        let verdict = brc_check(DesignParams::new(43, 7, 1).unwrap());
        assert!(!verdict.pass);
        assert!(matches!(
            verdict.evidence,
            BrcEvidence::LocalObstruction { modulus: 3, .. }
        ));

        let verdict = brc_check(DesignParams::new(7, 3, 1).unwrap());
        assert!(verdict.pass);
        match verdict.evidence {
            BrcEvidence::Witness { x, y, z } => {
                // 2x² − y² = z²
                assert_eq!(2 * x * x - y * y - z * z, 0);
                assert_ne!((x, y, z), (0, 0, 0));
            }
            other => panic!("expected witness, got {other:?}"),
        }

        let verdict = brc_check(DesignParams::new(22, 7, 2).unwrap());
        assert!(!verdict.pass);
        assert_eq!(verdict.evidence, BrcEvidence::NonSquareOrder { n: 5 });
    }

    #[test]
    fn brc_passes_for_surviving_designs() {
        for (v, k, l) in [(11, 5, 2), (11, 6, 3), (7, 3, 1), (7, 4, 2), (13, 4, 1), (13, 9, 6)] {
            let verdict = brc_check(DesignParams::new(v, k, l).unwrap());
            assert!(verdict.pass, "BRC should pass for ({v},{k},{l})");
        }
    }

    #[test]
    fn even_v_verdict_agrees_with_complement() {
        // complements share the order, so the even-v square test must agree
        for v in (6..200u64).step_by(2) {
            for k in 3..v - 1 {
                let num = k as u128 * (k as u128 - 1);
                if !num.is_multiple_of(v as u128 - 1) {
                    continue;
                }
                let lambda = (num / (v as u128 - 1)) as u64;
                let Ok(params) = DesignParams::new(v, k, lambda) else { continue };
                let Ok(comp) = crate::design::complement(params) else { continue };
                assert_eq!(params.order(), comp.order());
                assert_eq!(brc_check(params).pass, brc_check(comp).pass, "at {params}");
            }
        }
    }

    #[test]
    fn descent_oracle_for_43_7_1() {
        // residues of z² + y² mod 3 force 3 | y and 3 | z; checked over a
        // full residue grid mod 9
        for y in 0..9i64 {
            for z in 0..9i64 {
                if (y * y + z * z) % 3 == 0 {
                    assert!(y % 3 == 0 && z % 3 == 0);
                }
            }
        }
    }
}
