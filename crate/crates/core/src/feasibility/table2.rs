//! The decomposition-stabilizer table: odd-dimensional orthogonal socles
//! whose point stabilizer preserves an orthonormal-frame decomposition, so
//! M₀ is 2^(2m)·A_(2m+1) or 2^(2m)·S_(2m+1) according to q mod 8. The
//! volume constraint |X| < 2|M₀|·(|M₀|_{p'})² leaves exactly four cases, and
//! every one of them has v > 2n² and dies.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{prime_order_constraints, CandidateCase, FeasibilityError, ValueBound};
use crate::actions::coset_degree;
use crate::arith::{prime_powers_in, Factorization};
use crate::groups::{group_order, GroupFamily};

/// Scan grid for the table; the defaults comfortably contain every case the
/// volume constraint can admit.
#[derive(Debug, Clone, Deserialize)]
pub struct Table2Grid {
    pub m: [u32; 2],
    pub q_max: u64,
}

impl Default for Table2Grid {
    fn default() -> Self {
        Table2Grid { m: [3, 8], q_max: 25 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Table2Line {
    pub case: CandidateCase,
    pub socle_order: Factorization,
    pub v: Factorization,
    pub n_max: u64,
    /// v > 2·n_max², the rejection that kills the line.
    pub v_exceeds_2n_sq: bool,
    /// The published order column for this line, where one exists.
    pub published_order: Option<Factorization>,
    /// Whether the published order column matches the order formula.
    pub published_order_consistent: Option<bool>,
}

/// Published columns of the four known lines, used to cross-check the scan.
/// The fourth printed |X| entry does not match the order formula (it repeats
/// the stabilizer order instead) and is flagged.
fn published_lines() -> Vec<(u32, u64, Factorization, Factorization)> {
    vec![
        (
            3,
            3,
            Factorization::from_u64_pairs(&[(2, 9), (3, 9), (5, 1), (7, 1), (13, 1)]),
            Factorization::from_u64_pairs(&[(3, 7), (13, 1)]),
        ),
        (
            3,
            5,
            Factorization::from_u64_pairs(&[(2, 9), (3, 4), (5, 9), (7, 1), (13, 1), (31, 1)]),
            Factorization::from_u64_pairs(&[(3, 2), (5, 8), (13, 1), (31, 1)]),
        ),
        (
            4,
            3,
            Factorization::from_u64_pairs(&[(2, 14), (3, 16), (5, 2), (7, 1), (13, 1), (41, 1)]),
            Factorization::from_u64_pairs(&[(3, 12), (5, 1), (13, 1), (41, 1)]),
        ),
        (
            5,
            3,
            Factorization::from_u64_pairs(&[(2, 17), (3, 4), (5, 2), (7, 1), (11, 1)]),
            Factorization::from_u64_pairs(&[(3, 21), (11, 1), (13, 1), (41, 1), (61, 1)]),
        ),
    ]
}

/// Scans the grid and returns every (X, M₀) pair passing the volume
/// constraint, with its degree, order bound and rejection check.
pub fn table2_scan(grid: &Table2Grid) -> Result<Vec<Table2Line>, FeasibilityError> {
    let published = published_lines();
    let mut lines = Vec::new();
    for m in grid.m[0]..=grid.m[1] {
        for q in prime_powers_in(3, grid.q_max) {
            if q.is_even() {
                continue;
            }
            let socle = GroupFamily::OrthogonalOdd { m, q };
            if socle.admissible().is_err() {
                continue;
            }
            let qv = q.value_u64().unwrap_or(0);
            let degree = 2 * m + 1;
            // orthonormal-frame stabilizer: alternating kernel quotient for
            // q = ±3 mod 8, symmetric otherwise
            let (perm_part, label) = if qv % 8 == 3 || qv % 8 == 5 {
                (
                    group_order(&GroupFamily::Alternating { m: degree })?,
                    format!("2^{}·A{}", 2 * m, degree),
                )
            } else {
                (
                    group_order(&GroupFamily::Symmetric { m: degree })?,
                    format!("2^{}·S{}", 2 * m, degree),
                )
            };
            let stabilizer =
                Factorization::from_u64_pairs(&[(2, 2 * m)]).mul(&perm_part);

            let order = group_order(&socle)?;
            if order.div_exact(&stabilizer).is_err() {
                continue; // no subgroup of that order fits
            }
            let constraints = prime_order_constraints(&socle, &stabilizer)?;
            if !constraints.volume_2m_mp2.holds {
                continue;
            }

            let v = coset_degree(&socle, &stabilizer)
                .map_err(|_| FeasibilityError::StabilizerNotDividing(
                    stabilizer.value().to_string(),
                    socle.to_string(),
                ))?;
            let n_max = constraints.n_max.unwrap_or(0);
            let v_value = v.value();
            let v_exceeds_2n_sq = v_value > BigUint::from(2 * n_max * n_max);

            let published_entry = published
                .iter()
                .find(|(pm, pq, _, _)| *pm == m && Some(*pq) == q.value_u64());
            let published_order = published_entry.map(|(_, _, o, _)| o.clone());
            let published_order_consistent =
                published_order.as_ref().map(|o| o.value() == order.value());
            if let Some((_, _, _, pv)) = published_entry {
                debug_assert_eq!(pv.value(), v_value, "degree column mismatch");
            }

            lines.push(Table2Line {
                case: CandidateCase {
                    socle,
                    stabilizer_label: label,
                    stabilizer_order: Some(stabilizer),
                    v: ValueBound::Exact(v.clone()),
                    n_max: Some(n_max),
                    k_star_max: None,
                    notes: vec!["prop:2".into(), "prop:6/case2".into()],
                },
                socle_order: order,
                v,
                n_max,
                v_exceeds_2n_sq,
                published_order,
                published_order_consistent,
            });
        }
    }
    Ok(lines)
}

/// The table over the default grid: exactly four lines.
pub fn table2_lines() -> Result<Vec<Table2Line>, FeasibilityError> {
    table2_scan(&Table2Grid::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn exactly_four_lines() {
        let lines = table2_lines().unwrap();
        assert_eq!(lines.len(), 4);
        let keys: Vec<(u32, u64)> = lines
            .iter()
            .map(|l| match l.case.socle {
                GroupFamily::OrthogonalOdd { m, q } => (m, q.value_u64().unwrap()),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(keys, vec![(3, 3), (3, 5), (4, 3), (5, 3)]);
    }

    #[test]
    fn degrees_match_published_columns() {
        let lines = table2_lines().unwrap();
        let expected = [
            Factorization::from_u64_pairs(&[(3, 7), (13, 1)]),
            Factorization::from_u64_pairs(&[(3, 2), (5, 8), (13, 1), (31, 1)]),
            Factorization::from_u64_pairs(&[(3, 12), (5, 1), (13, 1), (41, 1)]),
            Factorization::from_u64_pairs(&[(3, 21), (11, 1), (13, 1), (41, 1), (61, 1)]),
        ];
        for (line, want) in lines.iter().zip(&expected) {
            assert_eq!(&line.v, want);
        }
        assert_eq!(lines[0].v.value().to_u64(), Some(28431));
    }

    #[test]
    fn order_bounds_and_rejections() {
        let lines = table2_lines().unwrap();
        let n_max: Vec<u64> = lines.iter().map(|l| l.n_max).collect();
        assert_eq!(n_max, vec![7, 7, 7, 11]);
        for line in &lines {
            assert!(line.v_exceeds_2n_sq, "v > 2n² must hold on every line");
        }
    }

    #[test]
    fn published_order_typo_is_flagged() {
        let lines = table2_lines().unwrap();
        assert_eq!(lines[0].published_order_consistent, Some(true));
        assert_eq!(lines[1].published_order_consistent, Some(true));
        assert_eq!(lines[2].published_order_consistent, Some(true));
        // the fourth printed order column repeats the stabilizer order
        assert_eq!(lines[3].published_order_consistent, Some(false));
        assert_eq!(
            lines[3].published_order.as_ref().unwrap().value(),
            lines[3].case.stabilizer_order.as_ref().unwrap().value()
        );
    }

    #[test]
    fn wider_grid_adds_nothing() {
        let wide = table2_scan(&Table2Grid { m: [3, 6], q_max: 13 }).unwrap();
        assert_eq!(wide.len(), 4);
    }
}
