use num_bigint::BigInt;
use proptest::prelude::*;
use qlab_core::algebra::*;

const ORDER: usize = 6;

fn arb_monomial() -> impl Strategy<Value = ParamMonomial> {
    prop::array::uniform5(-2i32..=2).prop_map(ParamMonomial::new)
}

fn arb_poly() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec((-5i64..=5, arb_monomial()), 0..4).prop_map(|ts| {
        let mut p = ParamPoly::zero();
        for (c, m) in ts {
            p.add_term(m, BigInt::from(c));
        }
        p
    })
}

fn arb_series() -> impl Strategy<Value = QSeries> {
    prop::collection::vec((0usize..=ORDER, arb_poly()), 0..5).prop_map(|ts| {
        let mut s = QSeries::zero(ORDER);
        for (e, p) in ts {
            *s.coeff_mut(e) += &p;
        }
        s
    })
}

/// A series with constant term `±m` for a Laurent monomial `m`.
fn arb_unit() -> impl Strategy<Value = QSeries> {
    (arb_series(), any::<bool>(), arb_monomial()).prop_map(|(mut s, neg, m)| {
        *s.coeff_mut(0) = ParamPoly::term(if neg { -1 } else { 1 }, m);
        s
    })
}

fn arb_laurent() -> impl Strategy<Value = LaurentZSeries> {
    prop::collection::vec((-3i32..=3, arb_series()), 0..4).prop_map(|ts| {
        let mut x = LaurentZSeries::zero(-3, 3, ORDER);
        for (e, s) in ts {
            let cur = x.zcoeff(e);
            x.set(e, cur.add(&s));
        }
        x
    })
}

proptest! {
    #[test]
    fn poly_ring_axioms(x in arb_poly(), y in arb_poly(), z in arb_poly()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn series_ring_axioms(x in arb_series(), y in arb_series(), z in arb_series()) {
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.add(&QSeries::zero(ORDER)), x.clone());
    }

    #[test]
    fn truncation_is_a_homomorphism(x in arb_series(), y in arb_series(), m in 0usize..=ORDER) {
        prop_assert_eq!(x.mul(&y).truncate(m), x.truncate(m).mul(&y.truncate(m)));
    }

    #[test]
    fn inverse_times_unit_is_one(x in arb_unit()) {
        let y = x.invert().unwrap();
        prop_assert_eq!(x.mul(&y), QSeries::one(ORDER));
    }

    #[test]
    fn zcoeff_is_linear(x in arb_laurent(), y in arb_laurent(), m in -5i32..=5) {
        prop_assert_eq!(x.add(&y).zcoeff(m), x.zcoeff(m).add(&y.zcoeff(m)));
    }

    #[test]
    fn product_window_and_coefficients(x in arb_laurent(), y in arb_laurent(), m in -6i32..=6) {
        let p = x.mul(&y);
        let (lo, hi) = p.window();
        prop_assert_eq!((lo, hi), (-6, 6));
        prop_assert_eq!(p.zcoeff(m), x.product_coeff(&y, m));
    }

    #[test]
    fn rational_field_laws(
        n1 in prop::collection::vec(-3i64..=3, 1..4),
        d1 in prop::collection::vec(-3i64..=3, 1..4),
        n2 in prop::collection::vec(-3i64..=3, 1..4),
    ) {
        let d1 = QPoly::from_i64s(&d1);
        prop_assume!(!d1.is_zero());
        let x = QRational::new(QPoly::from_i64s(&n1), d1).unwrap();
        let y = QRational::from_poly(QPoly::from_i64s(&n2));
        prop_assert_eq!(x.add(&y).sub(&y), x.clone());
        if !y.is_zero() {
            prop_assert_eq!(x.mul(&y).div(&y).unwrap(), x.clone());
        }
        let r = x.add(&y);
        prop_assert!(r.denominator().leading().unwrap() > &BigInt::from(0));
    }
}

#[test]
fn triangular_identities() {
    for m in -20i64..=20 {
        assert_eq!(triangular(m), triangular(-m - 1));
        for n in -20i64..=20 {
            assert_eq!(triangular(m + n), triangular(m) + triangular(n) + m * n);
        }
    }
}

#[test]
fn pochhammer_functional_equation() {
    let order = 40;
    let a = ParamMonomial::var(Param::A);
    let bases = [
        PochBase::new(1, a, 0),
        PochBase::new(-1, a, 1),
        PochBase::q_pow(1),
    ];
    for base in bases {
        for m in 0..=6i64 {
            for n in 0..=6i64 {
                let lhs = poch(base, PochLen::Finite(m + n), order).unwrap();
                let rhs = poch(base, PochLen::Finite(m), order)
                    .unwrap()
                    .mul(&poch(base.times_q(m), PochLen::Finite(n), order).unwrap());
                assert_eq!(lhs, rhs, "{:?} m={} n={}", base, m, n);
            }
        }
    }
}

#[test]
fn negative_length_inverts_the_shifted_product() {
    // (a)_{-n} (a q^{-n})_n = 1
    let order = 20;
    let a = PochBase::new(-1, ParamMonomial::var(Param::A), 4);
    for n in 1..=3 {
        let neg = poch(a, PochLen::Finite(-n), order).unwrap();
        let pos = poch(a.times_q(-n), PochLen::Finite(n), order).unwrap();
        assert_eq!(neg.mul(&pos), QSeries::one(order));
    }
}

#[test]
fn qbinomial_recurrences() {
    for m in 1..=12i64 {
        for i in 0..=m {
            let lhs = qbinomial_poly(m, i);
            let r1 = &qbinomial_poly(m - 1, i) + &qbinomial_poly(m - 1, i - 1).shift((m - i) as usize);
            let r2 = &qbinomial_poly(m - 1, i).shift(i as usize) + &qbinomial_poly(m - 1, i - 1);
            assert_eq!(lhs, r1, "first recurrence m={} i={}", m, i);
            assert_eq!(lhs, r2, "second recurrence m={} i={}", m, i);
            assert_eq!(lhs, qbinomial_poly(m, m - i));
        }
    }
}
