//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test -p symdes --test acceptance -- --nocapture` to see
//! the per-criterion lines.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use symdes::arith::{factorize_u64, is_prime_u64, prime_powers_in};
use symdes::actions::{partition_degree, subset_action};
use symdes::brc::{brc_check, legendre_solvable, BrcEvidence, LegendreForm};
use symdes::construct::{
    build_biplane_11, build_projective_plane, complement_structure, flag_transitive,
    parse_generators, plane_transvection_generators, PermGroup, BIPLANE_11_GENERATORS,
};
use symdes::design::DesignParams;
use symdes::feasibility::{
    scan, search_alternating_intransitive, search_m6_special, table2_lines, AltIntransitiveConfig,
    M6Outcome, SearchConfig,
};
use symdes::groups::{group_order, order_envelope, order_formula, GroupFamily};
use symdes::report::full_report;

fn pass(criterion: &str, elapsed: Duration, detail: &str) {
    println!("criterion {criterion}: PASS ({elapsed:.2?}) — {detail}");
}

#[test]
fn criterion_1_subset_search_reproduction() {
    let started = Instant::now();
    let search = search_alternating_intransitive(&AltIntransitiveConfig::default()).unwrap();
    let elapsed = started.elapsed();

    let got: BTreeSet<(u64, u64, u64, u32, u32)> =
        search.tuples.iter().map(|t| (t.v, t.k, t.lambda, t.s, t.m)).collect();
    let want = BTreeSet::from([
        (120, 35, 10, 3, 10),
        (1771, 60, 2, 3, 23),
        (4495, 322, 23, 3, 31),
    ]);
    assert_eq!(got, want, "exact tuple set");
    let orders: BTreeSet<u64> = search.tuples.iter().map(|t| t.order).collect();
    assert_eq!(orders, BTreeSet::from([25, 58, 299]));
    assert!(search.tuples.iter().all(|t| !t.order_prime));
    assert!(search.survivors.is_empty());
    assert!(elapsed < Duration::from_secs(5), "runtime {elapsed:.2?} exceeds 5 s");
    pass("1", elapsed, "3 tuples, all rejected with composite order");
}

#[test]
fn criterion_2_stabilizer_table_reproduction() {
    let started = Instant::now();
    let lines = table2_lines().unwrap();
    let elapsed = started.elapsed();

    assert_eq!(lines.len(), 4);
    let expected_v = [
        symdes::Factorization::from_u64_pairs(&[(3, 7), (13, 1)]),
        symdes::Factorization::from_u64_pairs(&[(3, 2), (5, 8), (13, 1), (31, 1)]),
        symdes::Factorization::from_u64_pairs(&[(3, 12), (5, 1), (13, 1), (41, 1)]),
        symdes::Factorization::from_u64_pairs(&[(3, 21), (11, 1), (13, 1), (41, 1), (61, 1)]),
    ];
    for (line, want) in lines.iter().zip(&expected_v) {
        assert_eq!(&line.v, want, "degree column");
    }
    let n_max: Vec<u64> = lines.iter().map(|l| l.n_max).collect();
    assert_eq!(n_max, vec![7, 7, 7, 11]);
    assert!(lines.iter().all(|l| l.v_exceeds_2n_sq), "v > 2n² on all lines");
    assert_eq!(
        lines.iter().map(|l| l.published_order_consistent).collect::<Vec<_>>(),
        vec![Some(true), Some(true), Some(true), Some(false)],
        "fourth published order column flagged inconsistent"
    );
    assert!(elapsed < Duration::from_secs(1), "runtime {elapsed:.2?} exceeds 1 s");
    pass("2", elapsed, "4 lines, degrees match, order column typo flagged");
}

#[test]
fn criterion_3_degree6_reproduction() {
    let started = Instant::now();
    let report = search_m6_special();
    let elapsed = started.elapsed();

    let fractions: BTreeSet<(u64, u64, u64)> = report
        .candidates
        .iter()
        .filter_map(|c| match c.outcome {
            M6Outcome::LambdaNonIntegral { num, den } => Some((c.v, num, den)),
            _ => None,
        })
        .collect();
    assert!(fractions.contains(&(10, 10, 3)), "λ = 10/3 at v = 10");
    assert!(fractions.contains(&(36, 18, 7)), "λ = 18/7 at v = 36");
    assert!(fractions.contains(&(45, 14, 11)), "λ = 14/11 at v = 45");
    assert!(report
        .candidates
        .iter()
        .any(|c| c.v == 10 && c.k == 9 && c.outcome == M6Outcome::Trivial));
    assert!(report.survivors.is_empty());
    pass("3", elapsed, "eliminations 10/3, 18/7, 14/11 and trivial (10,9,8); zero survivors");
}

/// Canonical mixed-sign squarefree pairwise-coprime triples with a ≥ b > 0 > c.
/// Every mixed-sign triple is a symmetry image of exactly one of these.
fn canonical_forms(bound: i64) -> Vec<LegendreForm> {
    let squarefree: Vec<i64> = (1..=bound)
        .filter(|&n| {
            factorize_u64(n as u64)
                .unwrap()
                .factors()
                .iter()
                .all(|(_, e)| *e == 1)
        })
        .collect();
    let mut forms = Vec::new();
    for &a in &squarefree {
        for &b in squarefree.iter().filter(|&&b| b <= a) {
            if num_integer::gcd(a, b) != 1 {
                continue;
            }
            for &c in &squarefree {
                if num_integer::gcd(c, a) == 1 && num_integer::gcd(c, b) == 1 {
                    forms.push(LegendreForm::new(a, b, -c).unwrap());
                }
            }
        }
    }
    forms
}

/// Independent exhaustive oracle: any solution with |x|, |y|, |z| ≤ bound.
///
/// Enumerates the full box, skipping only (x, y) pairs where divisibility of
/// a·x² + b·y² by |c| provably fails (the y-residues with b·y² ≡ −a·x²
/// mod |c| are precomputed) and y values whose t already exceeds c·bound²
/// (no z ≤ bound could match).
fn oracle_has_solution(form: &LegendreForm, bound: u64) -> bool {
    let (a, b) = (form.a as u64, form.b as u64);
    let c = form.c.unsigned_abs();
    let t_max = c * bound * bound;

    // roots[r] = y residues mod c with a·x² + b·y² ≡ 0 when a·x² ≡ r
    let roots: Vec<Vec<u64>> = (0..c)
        .map(|r| (0..c).filter(|y0| (b * y0 * y0 + r) % c == 0).collect())
        .collect();

    let is_square = |z2: u64| {
        let z = (z2 as f64).sqrt() as u64;
        (z.saturating_sub(1)..=z + 1).any(|cand| cand * cand == z2 && cand <= bound)
    };

    for x in 0..=bound {
        let ax2 = a * x * x;
        if ax2 > t_max {
            break;
        }
        for &y0 in &roots[(ax2 % c) as usize] {
            let mut y = y0;
            loop {
                if y > bound {
                    break;
                }
                if x == 0 && y == 0 {
                    y += c;
                    continue;
                }
                let t = ax2 + b * y * y;
                if t > t_max {
                    break;
                }
                debug_assert_eq!(t % c, 0);
                if is_square(t / c) {
                    return true;
                }
                y += c;
            }
        }
    }
    false
}

#[test]
fn criterion_4_legendre_oracle_equivalence() {
    let started = Instant::now();
    let forms = canonical_forms(50);
    let disagreements: Vec<String> = forms
        .par_iter()
        .filter_map(|form| {
            let decision = legendre_solvable(form).is_solvable();
            let oracle = oracle_has_solution(form, 2500);
            (decision != oracle).then(|| format!("{form}: criterion {decision}, oracle {oracle}"))
        })
        .collect();
    let elapsed = started.elapsed();
    assert!(disagreements.is_empty(), "disagreements: {disagreements:?}");

    // decision invariance under the symmetries that canonicalization quotients out
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sample: Vec<&LegendreForm> = forms.choose_multiple(&mut rng, 200).collect();
    for form in sample {
        let base = legendre_solvable(form).is_solvable();
        let permuted = [
            (form.b, form.a, form.c),
            (form.c, form.b, form.a),
            (-form.a, -form.b, -form.c),
            (form.a, form.c, form.b),
        ];
        for (a, b, c) in permuted {
            let image = LegendreForm::new(a, b, c).unwrap();
            assert_eq!(legendre_solvable(&image).is_solvable(), base, "symmetry at {form}");
        }
    }

    assert!(elapsed < Duration::from_secs(60), "runtime {elapsed:.2?} exceeds 60 s");
    pass(
        "4",
        elapsed,
        &format!("{} canonical forms, zero disagreements against the 2500-box oracle", forms.len()),
    );
}

/// All valid non-trivial (v,k,λ) with prime order, v ≤ v_max.
fn prime_order_tuples(v_max: u64) -> Vec<DesignParams> {
    let mut out = Vec::new();
    for v in 5..=v_max {
        for k in 3..v - 1 {
            let num = k as u128 * (k as u128 - 1);
            if !num.is_multiple_of(v as u128 - 1) {
                continue;
            }
            let lambda = (num / (v as u128 - 1)) as u64;
            if lambda >= 1 && lambda < k && is_prime_u64(k - lambda) {
                out.push(DesignParams::new(v, k, lambda).unwrap());
            }
        }
    }
    out
}

#[test]
fn criterion_5_brc_classical_gates() {
    let started = Instant::now();

    let order6_plane = brc_check(DesignParams::new(43, 7, 1).unwrap());
    assert!(!order6_plane.pass);
    assert!(matches!(order6_plane.evidence, BrcEvidence::LocalObstruction { modulus: 3, .. }));

    let fano = brc_check(DesignParams::new(7, 3, 1).unwrap());
    assert!(fano.pass);

    let even_v = brc_check(DesignParams::new(22, 7, 2).unwrap());
    assert!(!even_v.pass);
    assert_eq!(even_v.evidence, BrcEvidence::NonSquareOrder { n: 5 });

    let tuples = prime_order_tuples(4000);
    assert!(tuples.len() >= 1000, "need at least 1000 tuples, found {}", tuples.len());
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let sample: Vec<&DesignParams> = tuples.choose_multiple(&mut rng, 1000).collect();
    let mut even_count = 0u32;
    for params in sample {
        let verdict = brc_check(*params);
        if params.v % 2 == 0 {
            even_count += 1;
            assert!(!verdict.pass, "even v must fail for {params}");
            assert!(matches!(verdict.evidence, BrcEvidence::NonSquareOrder { .. }));
        }
    }
    assert!(even_count > 0, "sample contains no even-v tuples");
    let elapsed = started.elapsed();
    pass(
        "5",
        elapsed,
        &format!("classical gates hold; {even_count} even-v prime-order tuples all fail"),
    );
}

#[test]
fn criterion_6_elimination_scans_and_full_report() {
    let started = Instant::now();

    let r = scan("3.3.1", None).unwrap();
    assert!(!r.survivors.is_empty() && r.survivors.iter().all(|s| s.point.i == Some(2)));
    let r = scan("3.4.1", None).unwrap();
    assert!(r.survivors.iter().all(|s| s.point.i.unwrap() <= 2));
    assert!(scan("3.4.1a", None).unwrap().survivors.is_empty());
    assert!(scan("3.4.1b", None).unwrap().survivors.is_empty());
    assert!(scan("3.5.1", None).unwrap().survivors.is_empty());
    assert!(scan("3.6.1", None).unwrap().survivors.is_empty());
    let r = scan("3.7.1", None).unwrap();
    assert!(r.survivors.iter().all(|s| s.point.i.unwrap() <= 3));
    assert!(scan("3.7.1a", None).unwrap().survivors.is_empty());

    let report = full_report(&SearchConfig::default()).unwrap();
    assert!(report.succeeded(), "failures: {:?}", report.failures);

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(120), "runtime {elapsed:.2?} exceeds 120 s");
    pass(
        "6",
        elapsed,
        &format!("5 registered chains reproduce their conclusions; full report: {} records, success", report.records.len()),
    );
}

#[test]
fn criterion_7_flag_transitivity() {
    let started = Instant::now();

    let biplane = build_biplane_11();
    let gens = parse_generators(BIPLANE_11_GENERATORS).unwrap();
    let order = PermGroup::new(gens.clone()).unwrap().order(100_000).unwrap();
    assert_eq!(order, 660, "full closure of the degree-11 fixture");
    let ft = flag_transitive(&biplane, &gens).unwrap();
    assert_eq!((ft.flag_count, ft.orbit_size, ft.transitive), (55, 55, true));

    let complement = complement_structure(&build_projective_plane(3).unwrap());
    let gens = plane_transvection_generators(3).unwrap();
    let order = PermGroup::new(gens.clone()).unwrap().order(100_000).unwrap();
    assert_eq!(order, 5616, "full closure of the degree-13 transvections");
    let ft = flag_transitive(&complement, &gens).unwrap();
    assert_eq!((ft.flag_count, ft.orbit_size, ft.transitive), (117, 117, true));

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(10), "runtime {elapsed:.2?} exceeds 10 s");
    pass("7", elapsed, "orders 660 and 5616 by closure; flag orbits 55/55 and 117/117");
}

#[test]
fn criterion_8_subdegree_identities() {
    let started = Instant::now();

    for m in 2..=30u32 {
        for s in 1..=(m / 2) {
            let action = subset_action(m, s);
            assert!(
                action.is_complete(),
                "1 + Σ subdegrees must equal C({m},{s})"
            );
        }
    }

    // partition degrees against the factorial form and the odd-product form
    for t in 2..=10u32 {
        for s in 2..=6u32 {
            let v = partition_degree(s, t);
            let mut st_fact = BigUint::one();
            for i in 2..=(s as u64 * t as u64) {
                st_fact *= i;
            }
            let mut s_fact = BigUint::one();
            for i in 2..=(s as u64) {
                s_fact *= i;
            }
            let mut t_fact = BigUint::one();
            for i in 2..=(t as u64) {
                t_fact *= i;
            }
            assert_eq!(v * s_fact.pow(t) * t_fact, st_fact, "degree identity at ({s},{t})");
        }
        let mut odd_product = BigUint::one();
        let mut f = 3u64;
        while f < 2 * t as u64 {
            odd_product *= f;
            f += 2;
        }
        assert_eq!(partition_degree(2, t), odd_product, "odd product at t = {t}");
    }

    let elapsed = started.elapsed();
    pass("8", elapsed, "subset orbit sums exhaust C(m,s) for m ≤ 30; partition degrees match");
}

#[test]
fn criterion_9_order_crosschecks() {
    let started = Instant::now();

    for q in prime_powers_in(3, 27) {
        if q.is_even() {
            continue;
        }
        let o3 = order_formula(&GroupFamily::OrthogonalOdd { m: 1, q }).unwrap();
        let psl2 = order_formula(&GroupFamily::Linear { m: 2, q }).unwrap();
        assert_eq!(o3.value(), psl2.value(), "dimension-3 orthogonal vs PSL₂ at q = {q}");
        let o5 = order_formula(&GroupFamily::OrthogonalOdd { m: 2, q }).unwrap();
        let psp4 = order_formula(&GroupFamily::Symplectic { m: 2, q }).unwrap();
        assert_eq!(o5.value(), psp4.value(), "dimension-5 orthogonal vs PSp₄ at q = {q}");
    }

    let mut families = Vec::new();
    for q in prime_powers_in(2, 32) {
        for m in 2..=10u32 {
            families.push(GroupFamily::Linear { m, q });
            families.push(GroupFamily::Unitary { m, q });
            families.push(GroupFamily::Symplectic { m, q });
            families.push(GroupFamily::OrthogonalOdd { m, q });
            families.push(GroupFamily::OrthogonalPlus { m, q });
            families.push(GroupFamily::OrthogonalMinus { m, q });
        }
    }
    let checked: usize = families
        .par_iter()
        .filter(|family| family.admissible().is_ok())
        .map(|family| {
            let order = group_order(family).unwrap().value();
            let envelope = order_envelope(family).unwrap();
            assert!(
                envelope.contains(&order),
                "order of {family} escapes its envelope"
            );
            1usize
        })
        .sum();
    assert!(checked > 500, "expected hundreds of admissible families, got {checked}");

    let elapsed = started.elapsed();
    pass(
        "9",
        elapsed,
        &format!("order coincidences hold for q ≤ 27; {checked} admissible orders inside their envelopes"),
    );
}
