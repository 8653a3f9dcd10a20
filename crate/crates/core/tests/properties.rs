use orbihodge::hodge::{hodge_numbers, wps_hodge_numbers};
use orbihodge::invariants::{compare_with_wps_table, run_invariants};
use orbihodge::lattice::{det, half_open_parallelepiped, solve_rational, IntMatrix};
use orbihodge::rational::int;
use orbihodge::{Analysis, Rational, SimplexWeights};
use proptest::prelude::*;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn reduced_weights() -> impl Strategy<Value = Vec<u64>> {
    (1usize..=5)
        .prop_flat_map(|n| proptest::collection::vec(1u64..=12, n + 1))
        .prop_filter("gcd 1", |q| q.iter().fold(0, |g, &x| gcd(g, x)) == 1)
}

fn matrix(n: usize, range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(range, n), n)
}

/// Laplace expansion along the first column.
fn cofactor_det(cols: &[Vec<i64>]) -> i64 {
    let n = cols.len();
    if n == 1 {
        return cols[0][0];
    }
    (0..n)
        .map(|r| {
            let minor: Vec<Vec<i64>> = cols[1..]
                .iter()
                .map(|c| c.iter().enumerate().filter(|&(i, _)| i != r).map(|(_, &x)| x).collect())
                .collect();
            let sign = if r % 2 == 0 { 1 } else { -1 };
            sign * cols[0][r] * cofactor_det(&minor)
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wps_tables_agree(q in reduced_weights()) {
        let w = SimplexWeights::new(q.clone()).unwrap();
        let a = Analysis::from_weights(&w).unwrap();
        prop_assert_eq!(compare_with_wps_table(&a), Some(Ok(())));
        prop_assert_eq!(hodge_numbers(&a.sectors), wps_hodge_numbers(&w).unwrap());
        let failed: Vec<_> = run_invariants(&a).into_iter().filter(|c| !c.pass).collect();
        prop_assert!(failed.is_empty(), "{:?}: {:?}", q, failed);
    }

    #[test]
    fn det_matches_cofactor_expansion(cols in (1usize..=4).prop_flat_map(|n| matrix(n, -6..=6))) {
        let n = cols.len();
        let m = IntMatrix::from_columns(n, cols.clone()).unwrap();
        let d = det(&m).unwrap();
        prop_assert_eq!(d, cofactor_det(&cols));
        if n >= 2 {
            let mut swapped = cols.clone();
            swapped.swap(0, n - 1);
            prop_assert_eq!(det(&IntMatrix::from_columns(n, swapped).unwrap()).unwrap(), -d);
        }
    }

    #[test]
    fn solve_round_trip(
        cols in (1usize..=4).prop_flat_map(|n| matrix(n, -5..=5)),
        x in proptest::collection::vec(-7i64..=7, 4),
    ) {
        let n = cols.len();
        let m = IntMatrix::from_columns(n, cols.clone()).unwrap();
        prop_assume!(det(&m).unwrap() != 0);
        let v: Vec<i64> = (0..n).map(|r| (0..n).map(|c| cols[c][r] * x[c]).sum()).collect();
        let sol = solve_rational(&m, &v).unwrap().unwrap();
        prop_assert_eq!(sol, x[..n].iter().map(|&k| int(k)).collect::<Vec<Rational>>());
    }

    #[test]
    fn half_open_box_has_det_points(cols in (1usize..=4).prop_flat_map(|n| matrix(n, -4..=4))) {
        let n = cols.len();
        let m = IntMatrix::from_columns(n, cols).unwrap();
        let d = det(&m).unwrap();
        prop_assume!(d != 0);
        let pts = half_open_parallelepiped(&m).unwrap();
        prop_assert_eq!(pts.len() as i64, d.abs());
        for (p, coeffs) in &pts {
            prop_assert!(coeffs.iter().all(|c| *c >= int(0) && *c < int(1)));
            let rebuilt = m.apply(coeffs);
            prop_assert_eq!(rebuilt, p.iter().map(|&k| int(k)).collect::<Vec<_>>());
        }
    }
}
