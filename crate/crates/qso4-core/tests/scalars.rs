use num_complex::Complex64;
use proptest::prelude::*;
use qso4_core::scalars::{evaluate, parse, qint, qplus, GaussInt, HalfInt, Scalar};

fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn s(k: i64) -> Scalar {
    Scalar::s_pow(k)
}

fn int(v: i64) -> Scalar {
    Scalar::from_i64(v)
}

#[test]
fn qint_examples() {
    assert!(qint(h(0)).is_zero());
    assert_eq!(qint(h(4)), s(2) + s(-2));
    assert_eq!(qint(h(1)), int(1) / (s(1) + s(-1)));
}

#[test]
fn qplus_examples() {
    let d = s(2) - s(-2);
    assert_eq!(qplus(h(0)), int(2) / d.clone());
    assert_eq!(qplus(h(1)), int(1) / (s(1) - s(-1)));
    assert_eq!(qplus(h(3)), qplus(h(-3)));
}

#[test]
fn qint_is_odd_and_recurrent() {
    for t in 0..12 {
        assert_eq!(qint(h(-t)), -qint(h(t)));
    }
    // [n+1] = (q + q^-1)[n] - [n-1]
    let q_sum = s(2) + s(-2);
    for n in 1..10 {
        assert_eq!(qint(h(2 * n + 2)), &q_sum * &qint(h(2 * n)) - qint(h(2 * n - 2)));
    }
}

#[test]
fn q_number_identities() {
    for a in 1..=6 {
        let lhs = qint(h(2 * a)) * qint(h(2 * a)) - qint(h(2 * a - 2)) * qint(h(2 * a + 2));
        assert!(lhs.is_one(), "a = {a}");
    }
    for t in 1..=4 {
        let qa = s(t) + s(-t);
        assert_eq!(qint(h(2 * t)), qint(h(t)) * qa);
    }
}

#[test]
fn evaluate_examples() {
    let close = |a: Complex64, b: f64| (a - Complex64::new(b, 0.0)).norm() < 1e-12;
    assert!(close(evaluate(&qint(h(4)), Complex64::new(2.0, 0.0), 8).unwrap(), 2.5));
    assert!(close(evaluate(&qint(h(0)), Complex64::new(3.0, 0.0), 8).unwrap(), 0.0));
    assert!(close(evaluate(&qint(h(1)), Complex64::new(4.0, 0.0), 8).unwrap(), 0.4));
}

#[test]
fn evaluate_rejects_roots_of_unity() {
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    assert!(evaluate(&qint(h(2)), w, 8).is_err());
    assert!(evaluate(&qint(h(2)), w, 2).is_ok());
}

#[test]
fn text_examples() {
    let x = s(2) + s(-2);
    assert_eq!(x.to_string(), "(1*s^2 + 1*s^-2)/(1)");
    assert_eq!(parse("(1*s^2 + 1*s^-2)/(1)").unwrap(), x);
    let y = parse("(1/2i*s^3 - 3)/(2*s^2 + (1+1i))").unwrap();
    assert_eq!(parse(&y.to_string()).unwrap(), y);
    assert_eq!(parse("3").unwrap(), int(3));
    assert_eq!(parse("i").unwrap(), Scalar::i());
    assert!(parse("(1)/(0)").is_err());
    assert!(parse("(1*s^)/(1)").is_err());
}

#[test]
fn canonical_form_is_structural() {
    // (s^2 - 1)/(s - 1) == s + 1 with the common factor removed
    let a = (s(2) - int(1)) / (s(1) - int(1));
    assert_eq!(a, s(1) + int(1));
    assert!(a.denominator().is_one());
    // scaling numerator and denominator by a Gaussian integer changes nothing
    let two_i = Scalar::from_gauss(GaussInt::new(2.into(), 2.into()));
    let b = (&(s(3) + int(5)) * &two_i) / (&(s(1) + Scalar::i()) * &two_i);
    assert_eq!(b, (s(3) + int(5)) / (s(1) + Scalar::i()));
}

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    let coeff = (-3i64..=3, -2i64..=2).prop_map(|(a, b)| GaussInt::new(a.into(), b.into()));
    (
        -3i64..=3,
        prop::collection::vec(coeff.clone(), 1..4),
        prop::collection::vec(coeff, 1..4),
    )
        .prop_filter_map("nonzero denominator", |(low, n, d)| {
            let den = Scalar::laurent(0, d);
            if den.is_zero() {
                return None;
            }
            Some(Scalar::laurent(low, n) / den)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a / &a).is_one());
        }
    }

    #[test]
    fn text_round_trip(a in arb_scalar()) {
        let t = a.to_string();
        let b = parse(&t).unwrap();
        prop_assert_eq!(&b, &a);
        prop_assert_eq!(b.to_string(), t);
    }

    #[test]
    fn evaluation_is_multiplicative(a in arb_scalar(), b in arb_scalar()) {
        let q0 = Complex64::new(1.37, 0.42);
        if let (Ok(x), Ok(y), Ok(z)) = (evaluate(&a, q0, 16), evaluate(&b, q0, 16), evaluate(&(&a * &b), q0, 16)) {
            prop_assert!((x * y - z).norm() <= 1e-12 * z.norm().max(1.0) * 10.0);
        }
    }
}

fn arb_poly(bound: i64, max_len: usize) -> impl Strategy<Value = Scalar> {
    let coeff = (-bound..=bound, -bound..=bound).prop_map(|(a, b)| GaussInt::new(a.into(), b.into()));
    prop::collection::vec(coeff, 2..max_len)
        .prop_map(|c| Scalar::laurent(0, c))
        .prop_filter("nonconstant", |p| p.denominator().is_one() && p.numerator().degree() > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn common_factors_cancel(a in arb_poly(4, 6), b in arb_poly(4, 6), c in arb_poly(4, 6)) {
        let direct = &a / &b;
        let padded = &(&a * &c) / &(&b * &c);
        prop_assert_eq!(&padded, &direct);
        // a second evaluation goes through the gcd cache
        prop_assert_eq!(&(&(&a * &c) / &(&b * &c)), &direct);
    }

    #[test]
    fn large_coefficients_cancel(a in arb_poly(1 << 40, 5), b in arb_poly(1 << 40, 5), c in arb_poly(1 << 40, 5)) {
        let padded = &(&a * &c) / &(&b * &c);
        prop_assert_eq!(&padded, &(&a / &b));
        prop_assert!((&(&padded * &b) - &a).is_zero());
    }
}

#[test]
fn repeated_factors_cancel() {
    // (s^2 - 1)^3 / ((s^2 - 1)^2 (s + i)) = (s^2 - 1) / (s + i)
    let f = s(2) - int(1);
    let num = &(&f * &f) * &f;
    let den = &(&f * &f) * &(s(1) + Scalar::i());
    assert_eq!(&num / &den, &f / &(s(1) + Scalar::i()));
}
