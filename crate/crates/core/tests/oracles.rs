//! Values computed outside this crate (linear solves over Q(q), brute-force
//! set partitions, 60-digit direct summation) and frozen here.

use num_traits::Zero;
use qbell_core::carlitz::{carlitz_stirling, dobinski_numeric, q_bell, LambdaMode, QStirlingTable};
use qbell_core::cigl::{cigl_bell, cigl_stirling};
use qbell_core::classical;
use qbell_core::partition::{enumerate_partitions, weighted_sum, Statistic};
use qbell_core::psi::{psi_stirling_row, PsiSequence};
use qbell_core::{Poly, QPoly, Rational};

fn poly(c: &[i64]) -> QPoly {
    Poly::new(
        c.iter()
            .map(|&v| Rational::from_integer(v.into()))
            .collect(),
    )
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[test]
fn carlitz_row_five() {
    let expected = [
        poly(&[0]),
        poly(&[1]),
        poly(&[0, 4, 6, 4, 1]),
        poly(&[0, 0, 0, 6, 8, 7, 3, 1]),
        poly(&[0, 0, 0, 0, 0, 0, 4, 3, 2, 1]),
        poly(&[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    ];
    for (k, e) in expected.iter().enumerate() {
        assert_eq!(carlitz_stirling(5, k).unwrap(), *e, "k={k}");
    }
}

#[test]
fn q_bell_six() {
    let b6 = poly(&[1, 5, 10, 20, 25, 26, 29, 26, 20, 14, 12, 7, 4, 2, 1, 1]);
    assert_eq!(q_bell(6, LambdaMode::AtOne).poly, b6);
}

#[test]
fn cigl_six() {
    assert_eq!(
        cigl_bell(6).unwrap(),
        poly(&[52, 15, 15, 20, 20, 25, 12, 12, 9, 9, 5, 3, 3, 1, 1, 1])
    );
    assert_eq!(
        cigl_stirling(6, 3).unwrap(),
        poly(&[15, 7, 7, 10, 10, 13, 7, 7, 5, 5, 2, 1, 1])
    );
}

#[test]
fn fibonacci_row_four() {
    let row = psi_stirling_row(4, &PsiSequence::fibonacci()).unwrap();
    assert_eq!(row, [0, 1, 0, 7, 6].map(|v| r(v, 1)));
}

#[test]
fn certified_moment_encloses_direct_sum() {
    // 60-digit direct sum: 5.798090539315625...; exact B_5 value 1855388972581/320000000000.
    let exact = r(1855388972581, 320000000000);
    let v = dobinski_numeric(5, &r(9, 10), &r(1, 2), &r(1, 1_000_000_000_000)).unwrap();
    assert!(v.contains(&exact));
    assert!((v.estimate_f64() - 5.798090539315625).abs() < 1e-12);
    assert_eq!(
        q_bell(5, LambdaMode::Polynomial).eval(&r(9, 10), &r(1, 2)),
        exact
    );
}

#[test]
fn classical_limit_against_partition_counts() {
    let table = QStirlingTable::carlitz(10);
    let one = r(1, 1);
    for n in 1..=10 {
        let mut by_blocks = vec![0u64; n + 1];
        for p in enumerate_partitions(n, None).unwrap() {
            by_blocks[p.num_blocks()] += 1;
        }
        assert_eq!(
            by_blocks.iter().sum::<u64>(),
            classical::bell(n).try_into().unwrap()
        );
        for (k, &count) in by_blocks.iter().enumerate() {
            let count = r(count as i64, 1);
            assert_eq!(
                table.get(n, k).unwrap().eval(&one),
                count,
                "carlitz n={n} k={k}"
            );
            if k > 0 {
                assert_eq!(
                    cigl_stirling(n, k).unwrap().eval(&one),
                    count,
                    "cigl n={n} k={k}"
                );
            }
        }
    }
    assert_eq!(classical::bell(10), 115975.into());
}

#[test]
fn carlitz_is_shifted_inv_sum() {
    for n in 1..=8 {
        for k in 1..=n {
            let inv = weighted_sum(n, Some(k), Statistic::Inv).unwrap();
            assert_eq!(
                carlitz_stirling(n, k).unwrap(),
                inv.shift(k * (k - 1) / 2),
                "n={n} k={k}"
            );
        }
    }
    assert!(carlitz_stirling(4, 0).unwrap().is_zero());
}
