//! The two tensor-induced instances beyond d = 6: the 8-dimensional
//! (t, r) = (2, 3) run with its 28-dimensional second Lie power, and the
//! 9-dimensional (3, 2) run whose third Lie power has dimension 240. The
//! latter exercises the randomised submodule strategy end to end.

use frattini_core::meataxe::MeataxeOptions;
use frattini_core::pipeline::{construct_group, Relation};
use frattini_core::subgroups::SubgroupSpec;
use frattini_core::PrimeField;

#[test]
fn tensor_induced_d8_r3() {
    let field = PrimeField::new(5).unwrap();
    let opts = MeataxeOptions::with_seed(81);
    let c = construct_group(SubgroupSpec::C7 { t: 2, r: 3 }, 8, field, 81, &opts).unwrap();
    let r = &c.report;
    // table row: n = 2, quotient dim C(2,2)^3 = 1, m = 8 + 1
    assert_eq!(r.n, 2);
    assert_eq!(r.quotient_dim, 1);
    assert_eq!(r.order_exponent, 9);
    assert_eq!(r.relation, Relation::Equal);
    assert!(r.all_checks_pass, "{:?}", r.checks);
}

#[test]
fn tensor_induced_d9_r2() {
    let field = PrimeField::new(5).unwrap();
    let opts = MeataxeOptions::with_seed(91);
    let c = construct_group(SubgroupSpec::C7 { t: 3, r: 2 }, 9, field, 91, &opts).unwrap();
    let r = &c.report;
    // table row: n = 3, quotient dim (t+1)t²(t−1)²(t−2)/9 = 16,
    // m = 9 + 36 + 16 = 61
    assert_eq!(r.n, 3);
    assert_eq!(r.quotient_dim, 16);
    assert_eq!(r.order_exponent, 61);
    assert_eq!(r.relation, Relation::Equal);
    assert!(!r.exhaustive);
    assert!(r.all_checks_pass, "{:?}", r.checks);
}
