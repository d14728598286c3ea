use qso4_core::acceptance::{classical_catalog, nonclassical_catalog, reducibility_catalog, tensor_pairs};
use qso4_core::{HalfInt, IrrepLabel};
use std::collections::HashMap;

#[test]
fn classical_catalog_spans_spins_to_five_halves() {
    let c = classical_catalog();
    assert_eq!(c.len(), 36);
    let top = IrrepLabel::classical(HalfInt::from_twice(5), HalfInt::from_twice(5)).unwrap();
    assert!(c.contains(&top));
}

#[test]
fn nonclassical_catalog_has_all_signs() {
    let c = nonclassical_catalog(30);
    let mut per_spins: HashMap<(HalfInt, HalfInt), usize> = HashMap::new();
    for l in &c {
        assert!(!l.is_classical() && l.dim() <= 30);
        *per_spins.entry(l.spins()).or_default() += 1;
    }
    assert!(per_spins.values().all(|&n| n == 8));
    // (59/2, 0) has dimension 30, (61/2, 0) does not fit
    assert!(per_spins.contains_key(&(HalfInt::from_twice(59), HalfInt::ZERO)));
    assert!(!per_spins.contains_key(&(HalfInt::from_twice(61), HalfInt::ZERO)));
}

#[test]
fn tensor_pairs_cover_products_to_one_hundred() {
    let pairs = tensor_pairs(100);
    assert!(pairs.iter().all(|(a, b)| a.dim() * b.dim() <= 100));
    // a label of dimension d is one of the d(d) factorisations d = (2j+1)(2j'+1)
    let divisors = |d: usize| (1..=d).filter(|e| d % e == 0).count();
    let expected: usize = (1..=100usize)
        .flat_map(|x| (1..=100 / x).map(move |y| (x, y)))
        .map(|(x, y)| divisors(x) * divisors(y))
        .sum();
    assert_eq!(pairs.len(), expected);
}

#[test]
fn reducibility_catalog_is_small() {
    let c = reducibility_catalog();
    assert!(c.iter().all(|l| l.dim() <= 6));
    assert!(c.iter().any(|l| !l.is_classical()));
}
