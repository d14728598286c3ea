use qso4_core::irreps::{build_irrep, classical_irrep, nonclassical_direct, IrrepLabel, Sign};
use qso4_core::acceptance::random_unimodular;
use qso4_core::ladder::{
    check_lemmas, classify_irrep, closed_form_determinant, decompose, highest_weights, hw_casimir_eigenvalues, ladder_determinant,
    monomial_intertwiner, string_lengths, Variant,
};
use qso4_core::so4core::{casimirs, So4Rep};
use qso4_core::{ExactQ, HalfInt, Scalar};
use rand::SeedableRng;

fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

const P: Sign = Sign::Plus;
const M: Sign = Sign::Minus;

#[test]
fn determinants_match_closed_form() {
    let q = ExactQ::generic();
    for tk in -3..=3 {
        for tl in -3..=3 {
            if (tk + tl) % 2 != 0 {
                continue;
            }
            let (k, l) = (h(tk), h(tl));
            assert_eq!(
                ladder_determinant(k, l, Variant::Classical, &q),
                closed_form_determinant(k, l, Variant::Classical, &q),
                "classical ({k}, {l})"
            );
        }
    }
    for (tk, tl) in [(1, 0), (1, 2), (3, -2), (-1, 4), (2, 1), (0, 3)] {
        let (k, l) = (h(tk), h(tl));
        assert_eq!(
            ladder_determinant(k, l, Variant::Nonclassical, &q),
            closed_form_determinant(k, l, Variant::Nonclassical, &q),
            "nonclassical ({k}, {l})"
        );
    }
}

#[test]
fn classify_round_trip() {
    let q = ExactQ::generic();
    let mut labels = vec![];
    for tj in 0..=3 {
        for tjp in 0..=3 {
            labels.push(IrrepLabel::classical(h(tj), h(tjp)).unwrap());
        }
    }
    for (tj, tjp) in [(1, 0), (2, 1), (3, 0), (3, 2), (4, 1)] {
        for eps in Sign::all_triples() {
            labels.push(IrrepLabel::nonclassical(h(tj), h(tjp), eps).unwrap());
        }
    }
    for label in labels {
        let r = build_irrep(&label, &q).unwrap();
        assert_eq!(classify_irrep(&r, &q).unwrap(), label);
    }
}

#[test]
fn casimirs_match_highest_weight() {
    let q = ExactQ::generic();
    for label in [
        IrrepLabel::classical(h(1), h(1)).unwrap(),
        IrrepLabel::classical(h(2), h(1)).unwrap(),
        IrrepLabel::nonclassical(h(1), h(0), [P, M, P]).unwrap(),
        IrrepLabel::nonclassical(h(2), h(1), [M, P, M]).unwrap(),
    ] {
        let r = build_irrep(&label, &q).unwrap();
        let c = casimirs(&r, &q).unwrap();
        let (c4, c4p) = hw_casimir_eigenvalues(&label, &q);
        assert_eq!(c.c4.as_scalar(), Some(c4), "{label}");
        assert_eq!(c.c4p_short.as_scalar(), Some(c4p), "{label}");
    }
}

#[test]
fn swapped_spins_are_equivalent() {
    let q = ExactQ::generic();
    for (tj, tjp) in [(1, 0), (1, 2), (3, 2)] {
        for eps in Sign::all_triples() {
            let a = nonclassical_direct(h(tj), h(tjp), eps, &q).unwrap();
            let b = nonclassical_direct(h(tjp), h(tj), [eps[0], eps[1], eps[2].flip()], &q);
            let Ok(b) = b else { continue };
            assert_eq!(classify_irrep(&a, &q).unwrap(), classify_irrep(&b, &q).unwrap());
        }
    }
}

#[test]
fn string_lengths_classical() {
    let q = ExactQ::generic();
    for (tj, tjp) in [(0, 0), (1, 0), (2, 1), (3, 2)] {
        let r = classical_irrep(h(tj), h(tjp), &q).unwrap();
        assert_eq!(string_lengths(&r, &q).unwrap(), ((tj + 1) as usize, (tjp + 1) as usize));
    }
}

#[test]
fn decompose_sums() {
    let q = ExactQ::generic();
    let a = classical_irrep(h(1), h(1), &q).unwrap();
    let b = classical_irrep(h(0), h(0), &q).unwrap();
    let s = So4Rep::direct_sum(&[&a, &b], "sum");
    assert_eq!(highest_weights(&s, &q).unwrap().len(), 2);
    let la = IrrepLabel::nonclassical(h(1), h(0), [P, P, P]).unwrap();
    let lb = IrrepLabel::nonclassical(h(1), h(0), [P, P, M]).unwrap();
    let s = So4Rep::direct_sum(&[&build_irrep(&la, &q).unwrap(), &build_irrep(&lb, &q).unwrap()], "sum");
    let mut got = decompose(&s, &q).unwrap().labels();
    got.sort();
    let mut want = vec![la, lb];
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn intertwiner_certifies() {
    let q = ExactQ::generic();
    let label = IrrepLabel::classical(h(2), h(1)).unwrap();
    let r = build_irrep(&label, &q).unwrap();
    let d = decompose(&r, &q).unwrap();
    let c = &d.components[0];
    assert!(monomial_intertwiner(&c.block, &c.weights, &r, &q).is_ok());
}

#[test]
fn lemmas_hold_on_small_irreps() {
    let q = ExactQ::generic();
    let labels = [
        IrrepLabel::classical(h(2), h(1)).unwrap(),
        IrrepLabel::classical(h(0), h(3)).unwrap(),
        IrrepLabel::nonclassical(h(3), h(2), [P, M, P]).unwrap(),
        IrrepLabel::nonclassical(h(1), h(0), [M, M, M]).unwrap(),
    ];
    for label in labels {
        let report = check_lemmas(&build_irrep(&label, &q).unwrap(), &q).unwrap();
        assert!(report.passes(), "{label}: {:?}", report.failures);
        assert_eq!(report.vectors, label.dim());
        assert!(report.identities > 0);
    }
}

#[test]
fn lemmas_reject_a_rescaled_generator() {
    let q = ExactQ::generic();
    let r = classical_irrep(h(2), h(2), &q).unwrap();
    let broken = So4Rep::new(r.i21.clone(), r.i32.scale(&Scalar::from_i64(2)), r.i43.clone(), "broken")
        .unwrap()
        .with_basis(r.basis.clone().unwrap());
    match check_lemmas(&broken, &q) {
        Ok(report) => assert!(!report.passes()),
        Err(e) => assert!(matches!(e, qso4_core::Error::NotScalar | qso4_core::Error::FormMismatch), "{e}"),
    }
}

#[test]
fn equal_weight_nonclassical_sum_splits() {
    // the summands share every weight and differ only in eps3
    let q = ExactQ::generic();
    let la = IrrepLabel::nonclassical(h(5), h(0), [P, M, M]).unwrap();
    let lb = IrrepLabel::nonclassical(h(5), h(0), [P, M, P]).unwrap();
    let s = So4Rep::direct_sum(&[&build_irrep(&la, &q).unwrap(), &build_irrep(&lb, &q).unwrap()], "sum");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let (p, pi) = random_unimodular(s.dim(), &mut rng);
    let mut got = decompose(&s.conjugate(&p, &pi, "conjugated"), &q).unwrap().labels();
    got.sort();
    let mut want = vec![la, lb];
    want.sort();
    assert_eq!(got, want);
}
