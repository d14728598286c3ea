use qso4_core::homtensor::{ext_rep, phi};
use qso4_core::irreps::{
    classical_irrep, nonclassical_direct, nonclassical_family, nonclassical_irrep, nonclassical_pullback_blocks,
    weight_spectrum, IrrepLabel, Sign, WeightType,
};
use qso4_core::so4core::verify_relations;
use qso4_core::uqsl2::Phase;
use qso4_core::{ExactQ, HalfInt, Scalar};

fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

const P: Sign = Sign::Plus;
const M: Sign = Sign::Minus;

#[test]
fn classical_examples() {
    let q = ExactQ::generic();
    let r = classical_irrep(h(0), h(0), &q).unwrap();
    assert_eq!(r.dim(), 1);
    assert!(r.i21.is_zero() && r.i32.is_zero() && r.i43.is_zero());

    let r = classical_irrep(h(1), h(1), &q).unwrap();
    let i = Scalar::i();
    assert_eq!(r.i21.diagonal(), vec![i.clone(), Scalar::zero(), Scalar::zero(), -i]);

    let r = classical_irrep(h(1), h(0), &q).unwrap();
    let expected = Scalar::from_i64(1) / (Scalar::s_pow(1) + Scalar::s_pow(-1));
    assert_eq!(r.i32[(0, 1)], expected);
}

#[test]
fn classical_relations_small() {
    let q = ExactQ::generic();
    for tj in 0..=3 {
        for tjp in 0..=3 {
            let r = classical_irrep(h(tj), h(tjp), &q).unwrap();
            let rep = verify_relations(&r, true, &q);
            assert!(rep.passes(), "({tj}/2, {tjp}/2) fails {:?}", rep.first_failure());
        }
    }
}

#[test]
fn nonclassical_one_dimensional() {
    let q = ExactQ::generic();
    let label = IrrepLabel::nonclassical(h(1), h(0), [P, P, P]).unwrap();
    let r = nonclassical_irrep(&label, &q).unwrap();
    assert_eq!(r.dim(), 1);
    let half_plus = Scalar::from_i64(1) / (Scalar::s_pow(1) - Scalar::s_pow(-1));
    assert_eq!(r.i21[(0, 0)], half_plus);
    assert_eq!(r.i43[(0, 0)], half_plus);
    assert_eq!(&r.i32[(0, 0)] * &r.i32[(0, 0)], &half_plus * &half_plus);
    assert!(verify_relations(&r, true, &q).passes());
}

#[test]
fn pullback_matches_closed_form() {
    let q = ExactQ::generic();
    for (tj, tjp) in [(1, 0), (1, 2), (3, 0), (2, 1), (3, 2), (2, 3), (1, 4), (4, 1)] {
        let [plus, minus] = nonclassical_pullback_blocks(h(tj), h(tjp), &q).unwrap();
        let dp = nonclassical_direct(h(tj), h(tjp), [P, P, P], &q).unwrap();
        let dm = nonclassical_direct(h(tj), h(tjp), [P, P, M], &q).unwrap();
        assert_eq!(plus.i32, dp.i32, "({tj}/2, {tjp}/2) eps3=+");
        assert_eq!(minus.i32, dm.i32, "({tj}/2, {tjp}/2) eps3=-");
        assert_eq!(plus.i21, dp.i21);
        assert_eq!(plus.i43, dp.i43);
    }
}

#[test]
fn nonclassical_relations_small() {
    let q = ExactQ::generic();
    for (tj, tjp) in [(1, 0), (1, 2), (3, 0), (2, 1), (3, 2)] {
        for r in nonclassical_family(h(tj), h(tjp), &q).unwrap() {
            let rep = verify_relations(&r, true, &q);
            assert!(rep.passes(), "{} fails {:?}", r.label.unwrap(), rep.first_failure());
        }
    }
}

#[test]
fn phi_classical_images() {
    let q = ExactQ::generic();
    let r = phi(&ext_rep(h(1), h(1), Phase::One, Phase::One, &q).unwrap(), &q).unwrap();
    let i = Scalar::i();
    assert_eq!(r.i21.diagonal(), vec![i.clone(), Scalar::zero(), Scalar::zero(), -i]);
    assert!(verify_relations(&r, true, &q).passes());
    assert!(ext_rep::<Scalar>(h(1), h(1), Phase::One, Phase::I, &q).is_err());
    assert!(ext_rep::<Scalar>(h(1), h(2), Phase::MinusI, Phase::One, &q).is_ok());
}

#[test]
fn spectrum_examples() {
    let q = ExactQ::generic();
    let t = weight_spectrum(&classical_irrep(h(2), h(0), &q).unwrap(), &q).unwrap();
    assert_eq!(t.kind, WeightType::Classical);
    let ks: Vec<HalfInt> = t.spaces.iter().map(|s| s.weight.k).collect();
    assert_eq!(ks, vec![h(2), h(0), h(-2)]);
    let label = IrrepLabel::nonclassical(h(1), h(0), [P, P, P]).unwrap();
    let t = weight_spectrum(&nonclassical_irrep(&label, &q).unwrap(), &q).unwrap();
    assert_eq!(t.kind, WeightType::Nonclassical);
    assert_eq!((t.spaces[0].weight.k, t.spaces[0].weight.l), (h(1), h(0)));
}

#[test]
fn label_text() {
    for s in ["classical:j=1/2,jp=3/2", "nonclassical:j=1,jp=1/2,eps=+,+,-"] {
        let l: IrrepLabel = s.parse().unwrap();
        assert_eq!(l.to_string(), s);
    }
    let l: IrrepLabel = "nonclassical:j=1/2,jp=1,eps=+,+,-".parse().unwrap();
    assert_eq!(l.to_string(), "nonclassical:j=1,jp=1/2,eps=+,+,+");
    assert!("nonclassical:j=1,jp=1,eps=+,+,+".parse::<IrrepLabel>().is_err());
}
