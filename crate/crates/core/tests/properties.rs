mod support;

use num_traits::Zero;
use proptest::prelude::*;
use seqspace::scalar::l1_norm;
use seqspace::*;
use support::{dot, q};

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| q(n, d))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |v| !v.is_zero())
}

fn params() -> impl Strategy<Value = ParameterTriple<Rational>> {
    (0usize..4, 1usize..8).prop_flat_map(|(m, n)| {
        (
            prop::collection::vec(nonzero(), n),
            nonzero(),
            prop::collection::vec(rational(), n - 1),
            prop::collection::vec(nonzero(), n),
        )
            .prop_map(move |(r, s0, rest, t)| {
                let s = std::iter::once(s0).chain(rest).collect();
                ParameterTriple::new(r, s, t, m, n).unwrap()
            })
    })
}

fn with_sequence() -> impl Strategy<Value = (ParameterTriple<Rational>, SequenceWindow<Rational>)> {
    params().prop_flat_map(|p| {
        let n = p.order();
        (
            Just(p),
            prop::collection::vec(rational(), n).prop_map(SequenceWindow::finite),
        )
    })
}

fn with_matrix() -> impl Strategy<
    Value = (
        ParameterTriple<Rational>,
        MatrixWindow<Rational>,
        SequenceWindow<Rational>,
    ),
> {
    params().prop_flat_map(|p| {
        let n = p.order();
        let rows = prop::collection::vec(prop::collection::vec(rational(), 1..=n), 1..5)
            .prop_map(MatrixWindow::finite);
        let x = prop::collection::vec(rational(), n).prop_map(SequenceWindow::finite);
        (Just(p), rows, x)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn triangles_invert((p, _) in with_sequence()) {
        prop_assert!(compose(&build_b(&p).unwrap(), &build_a(&p)).unwrap().is_identity(0.0));
        prop_assert!(compose(&build_s(&p).unwrap(), &build_t(&p).unwrap()).unwrap().is_identity(0.0));
        let dm = compose(&build_delta_inverse::<Rational>(p.m(), p.order()), &build_delta(p.m(), p.order())).unwrap();
        prop_assert!(dm.is_identity(0.0));
    }

    #[test]
    fn t_is_a_times_delta((p, _) in with_sequence()) {
        let t = compose(&build_a(&p), &build_delta(p.m(), p.order())).unwrap();
        prop_assert_eq!(t.to_dense(), build_t(&p).unwrap().to_dense());
    }

    #[test]
    fn recursion_matches_determinants(s0 in nonzero(), rest in prop::collection::vec(rational(), 0..6)) {
        let s: Vec<Rational> = std::iter::once(s0).chain(rest).collect();
        let d = toeplitz_inverse_coeffs(&s, s.len()).unwrap();
        for n in 0..s.len() {
            prop_assert_eq!(d.d(n), &det_oracle_d(&s, n).unwrap());
        }
    }

    #[test]
    fn transform_is_linear((p, x) in with_sequence(), alpha in rational(), beta in rational()) {
        let z = SequenceWindow::finite(x.values.iter().rev().cloned().collect());
        let lhs = transform(&p, &x.scaled_sum(&alpha, &z, &beta).unwrap()).unwrap();
        let rhs = transform(&p, &x).unwrap().scaled_sum(&alpha, &transform(&p, &z).unwrap(), &beta).unwrap();
        prop_assert_eq!(lhs.values, rhs.values);
    }

    #[test]
    fn composition_is_associative((p, _) in with_sequence()) {
        let (a, b, d) = (build_a(&p), build_b(&p).unwrap(), build_delta::<Rational>(p.m(), p.order()));
        let left = compose(&compose(&a, &d).unwrap(), &b).unwrap();
        let right = compose(&a, &compose(&d, &b).unwrap()).unwrap();
        prop_assert_eq!(left.to_dense(), right.to_dense());
    }

    #[test]
    fn round_trip_is_exact((p, x) in with_sequence()) {
        let back = inverse_transform(&p, &transform(&p, &x).unwrap()).unwrap();
        prop_assert_eq!(back.values, x.values);
    }

    #[test]
    fn associates_preserve_pairing((p, x) in with_sequence()) {
        let a = SequenceWindow::finite(x.values.iter().map(|v| v.clone() + q(1, 2)).collect());
        let y = transform(&p, &x).unwrap();
        let r = associate_row(&p, &a).unwrap();
        prop_assert_eq!(dot(&a.values, &x.values), dot(&r.values, &y.values));
        let assoc = Associates::new(&p).unwrap();
        prop_assert_eq!(
            assoc.associate_closed_form(&a.values),
            assoc.associate_by_definition(&a.values)
        );
    }

    #[test]
    fn basis_maps_to_units((p, _) in with_sequence()) {
        for b in basis(&p).unwrap() {
            let y = transform(&p, &b.values).unwrap().values;
            match b.index {
                BasisIndex::Limit => prop_assert!(y.iter().all(|v| *v == q(1, 1))),
                BasisIndex::Coordinate(j) => {
                    prop_assert_eq!(y, SequenceWindow::<Rational>::unit(p.order(), j).values)
                }
            }
        }
    }

    #[test]
    fn associate_matrix_intertwines((p, a, x) in with_matrix()) {
        let cfg = TrendConfig::default();
        let y = transform(&p, &x).unwrap();
        let at = associate_matrix(&p, &a, &cfg).unwrap();
        for n in 0..a.row_count() {
            prop_assert_eq!(dot(&a.rows[n], &x.values), dot(&at.matrix.rows[n], &y.values));
        }
    }

    #[test]
    fn operator_norm_is_sup_of_associate_rows((p, a, _) in with_matrix()) {
        let cfg = TrendConfig::default();
        let at = associate_matrix(&p, &a, &cfg).unwrap();
        let norm = operator_norm(&at, &cfg).unwrap();
        let sup = a
            .rows
            .iter()
            .map(|row| l1_norm(&associate_row(&p, &SequenceWindow::finite(row.clone())).unwrap().values))
            .fold(q(0, 1), |acc, v| if v > acc { v } else { acc });
        prop_assert_eq!(norm.value, sup);
    }

    #[test]
    fn zeroing_rows_never_raises_row_norms((p, a, _) in with_matrix(), keep in 0usize..4) {
        let cfg = TrendConfig::default();
        let mut zeroed = a.clone();
        for row in zeroed.rows.iter_mut().skip(keep) {
            row.iter_mut().for_each(|v| *v = q(0, 1));
        }
        let full = operator_norm(&associate_matrix(&p, &a, &cfg).unwrap(), &cfg).unwrap();
        let less = operator_norm(&associate_matrix(&p, &zeroed, &cfg).unwrap(), &cfg).unwrap();
        prop_assert!(less.value <= full.value);
    }
}
