use qso4_core::homtensor::{decompose_tensor, TensorBuilder, ext_rep, phi, solve_x_quartic, spin_casimir, tensor, tensor_formula};
use qso4_core::irreps::{classical_irrep, IrrepLabel};
use qso4_core::ladder::classify_irrep;
use qso4_core::so4core::verify_relations;
use qso4_core::uqsl2::{build_sl2_irrep, Phase};
use proptest::prelude::*;
use qso4_core::{Error, ExactQ, HalfInt, Matrix, Scalar};

fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn cl(tj: i64, tjp: i64) -> IrrepLabel {
    IrrepLabel::classical(h(tj), h(tjp)).unwrap()
}

#[test]
fn ext_rep_admissibility() {
    let q = ExactQ::generic();
    let e = ext_rep(h(1), h(0), Phase::One, Phase::One, &q).unwrap();
    assert_eq!(e.dim(), 2);
    assert_eq!(e.denominators.len(), 6);
    assert!(matches!(
        ext_rep::<Scalar>(h(1), h(1), Phase::One, Phase::I, &q),
        Err(Error::NonInvertibleDenominator(_))
    ));
    assert!(ext_rep::<Scalar>(h(1), h(2), Phase::MinusI, Phase::One, &q).is_ok());
}

#[test]
fn phi_trivial_and_classical() {
    let q = ExactQ::generic();
    let r = phi(&ext_rep(h(0), h(0), Phase::One, Phase::One, &q).unwrap(), &q).unwrap();
    assert!(r.i21.is_zero() && r.i32.is_zero() && r.i43.is_zero());
    for (tj, tjp) in [(1, 0), (1, 2), (3, 1), (2, 2)] {
        let r = phi(&ext_rep(h(tj), h(tjp), Phase::One, Phase::One, &q).unwrap(), &q).unwrap();
        assert_eq!(classify_irrep(&r, &q).unwrap(), cl(tj, tjp));
    }
}

#[test]
fn theorem_two_all_phases() {
    let q = ExactQ::generic();
    for tl in 0..=2 {
        for tlp in 0..=2 {
            for a in Phase::ALL {
                for b in Phase::ALL {
                    match ext_rep(h(tl), h(tlp), a, b, &q) {
                        Ok(e) => assert!(verify_relations(&phi(&e, &q).unwrap(), false, &q).passes()),
                        Err(Error::NonInvertibleDenominator(_)) => {
                            assert!(a.is_imaginary() != b.is_imaginary() && (tl + tlp) % 2 == 0)
                        }
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }
}

#[test]
fn x_quartic_on_coupled_spins() {
    let q = ExactQ::generic();
    let c = Matrix::scalar(1, spin_casimir(h(0), &q));
    assert!(solve_x_quartic(&c, &q).unwrap().as_scalar().unwrap().is_one());
    // spin 1/2 (x) spin 1/2, weight-0 block: spins 1 and 0
    let a = build_sl2_irrep::<Scalar>(h(1), Phase::One, &q).unwrap();
    let k = a.qh.kron(&a.qh);
    let ki = a.qh_inv.kron(&a.qh_inv);
    let e = a.e.kron(&a.qh).add(&a.qh_inv.kron(&a.e));
    let f = a.f.kron(&a.qh).add(&a.qh_inv.kron(&a.f));
    let d2 = q.q_diff() * q.q_diff();
    let cas = e.mul(&f).add(&k.mul(&k).scale(&q.q_inv()).add(&ki.mul(&ki).scale(&q.q())).scale(&(Scalar::one() / d2.clone())));
    let x = solve_x_quartic(&cas, &q).unwrap();
    let x2 = x.mul(&x);
    let res = x2.mul(&x2).scale(&q.q_inv()).sub(&cas.mul(&x2).scale(&d2)).add(&Matrix::scalar(4, q.q()));
    assert!(res.is_zero());
    assert_eq!(x.trace(), q.q_inv() * Scalar::from_i64(3) + Scalar::one());
}

#[test]
fn tensor_examples() {
    let q = ExactQ::generic();
    let t = tensor(&cl(0, 0), &cl(0, 0), &q).unwrap();
    assert_eq!(t.rep.dim(), 1);
    assert_eq!(decompose_tensor(&cl(1, 0), &cl(0, 1), &q).unwrap(), vec![cl(1, 1)]);
    assert_eq!(decompose_tensor(&cl(1, 0), &cl(1, 0), &q).unwrap(), vec![cl(0, 0), cl(2, 0)]);
    let d = decompose_tensor(&cl(1, 1), &cl(1, 1), &q).unwrap();
    assert_eq!(d, vec![cl(0, 0), cl(0, 2), cl(2, 0), cl(2, 2)]);
    let dims: Vec<usize> = d.iter().map(|l| l.dim()).collect();
    assert_eq!(dims, vec![1, 3, 3, 9]);
    assert_eq!(decompose_tensor(&cl(0, 0), &cl(3, 1), &q).unwrap(), vec![cl(3, 1)]);
    assert_eq!(tensor_formula(&cl(2, 1), &cl(1, 1)).unwrap().len(), 4);
    let _ = classical_irrep::<Scalar>(h(0), h(0), &q);
}

#[test]
fn coupled_x_takes_q_to_minus_spin() {
    // spin 1/2 (x) spin 1/2 = spin 0 + spin 1: x has eigenvalues 1 and q^-1
    let q = ExactQ::generic();
    let t = tensor(&cl(1, 0), &cl(1, 0), &q).unwrap();
    let one = Matrix::identity(4);
    let res = t.x1.sub(&one).mul(&t.x1.sub(&one.scale(&q.q_inv())));
    assert!(res.is_zero());
    assert_eq!(t.x1.trace(), Scalar::one() + q.q_inv() * Scalar::from_i64(3));
    assert!(t.x2.sub(&one).is_zero());
    assert!(verify_relations(&t.rep, true, &q).passes());
}

#[test]
fn builder_reuses_factors() {
    let q = ExactQ::generic();
    let pairs = [(cl(1, 2), cl(2, 1)), (cl(2, 1), cl(1, 2)), (cl(1, 0), cl(3, 0))];
    let mut b = TensorBuilder::new(q.clone());
    b.prepare(&pairs).unwrap();
    for (x, y) in pairs {
        assert_eq!(b.decompose(&x, &y).unwrap(), decompose_tensor(&x, &y, &q).unwrap());
    }
    assert!(matches!(
        b.tensor(&IrrepLabel::nonclassical(h(1), h(0), [qso4_core::Sign::Plus; 3]).unwrap(), &cl(0, 0)),
        Err(Error::InvalidLabel(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn small_products_follow_the_formula(a in (0i64..3, 0i64..3), b in (0i64..3, 0i64..3)) {
        let q = ExactQ::generic();
        let (la, lb) = (cl(a.0, a.1), cl(b.0, b.1));
        let got = decompose_tensor(&la, &lb, &q).unwrap();
        prop_assert_eq!(got.iter().map(|l| l.dim()).sum::<usize>(), la.dim() * lb.dim());
        prop_assert_eq!(got, tensor_formula(&la, &lb).unwrap());
    }
}
