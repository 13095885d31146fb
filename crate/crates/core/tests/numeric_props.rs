mod common;

use std::cmp::Ordering;
use std::sync::Arc;

use approx_codec::numeric::{IrrationalBasis, LinearForm, Rational};
use common::{q, RootSum};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ROOTS: [u64; 4] = [1, 2, 3, 5];
const DIGITS: u32 = 200;

fn basis() -> Arc<IrrationalBasis> {
    IrrationalBasis::from_names(&["1", "sqrt:2", "sqrt:3", "sqrt:5"], 1 << 16).unwrap()
}

fn form(b: &Arc<IrrationalBasis>, coeffs: &[Rational]) -> LinearForm {
    LinearForm::from_coeffs(b, coeffs.iter().cloned().enumerate().map(|(i, c)| (i as u32, c))).unwrap()
}

fn oracle(coeffs: &[Rational]) -> RootSum {
    RootSum {
        terms: ROOTS.iter().copied().zip(coeffs.iter().cloned()).collect(),
    }
}

fn rat() -> impl Strategy<Value = Rational> {
    (-1000i64..=1000, 1i64..=200).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn coeffs() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rat(), 4)
}

#[test]
fn listed_signs_and_comparisons() {
    let b = IrrationalBasis::from_names(&["1", "sqrt:2", "sqrt:3"], 1 << 16).unwrap();
    let a = LinearForm::symbol(&b, 1);
    let be = LinearForm::symbol(&b, 2);
    let one = LinearForm::integer(&b, 1);
    assert_eq!(LinearForm::zero(&b).sign().unwrap(), 0);
    assert_eq!(a.sub(&one).unwrap().sign().unwrap(), 1);
    assert_eq!(LinearForm::integer(&b, 3).sub(&a.scale(&q(2, 1))).unwrap().sign().unwrap(), 1);
    assert_eq!(LinearForm::integer(&b, 2).sub(&be).unwrap().compare(&one).unwrap(), Ordering::Less);
    assert_eq!(a.compare(&be).unwrap(), Ordering::Less);
    assert_eq!(a.compare(&a).unwrap(), Ordering::Equal);
    assert_eq!(one.floor_multiple(&be).unwrap(), (0, LinearForm::zero(&b)));
    assert_eq!(LinearForm::integer(&b, 2).floor_multiple(&be).unwrap(), (1, be.clone()));
    assert_eq!(LinearForm::integer(&b, 5).floor_multiple(&be).unwrap(), (2, be.scale(&q(2, 1))));
    let r = LinearForm::rational(&b, q(3, 2)).refine(9);
    assert_eq!((r.lo, r.hi), (q(3, 2), q(3, 2)));
    let r = a.refine(4);
    assert!(r.width() <= q(1, 16));
    assert!(&r.lo * &r.lo < q(2, 1) && q(2, 1) < &r.hi * &r.hi);
}

/// 10^5 random nonzero coefficient vectors: the exact sign agrees with a
/// 200-digit evaluation.
#[test]
fn zero_test_soundness() {
    let b = basis();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut near_zero = 0;
    for i in 0..100_000 {
        let c: Vec<Rational> = (0..4)
            .map(|_| {
                let n: i64 = rng.gen_range(-50..=50);
                let d: i64 = rng.gen_range(1..=20);
                Rational::new(n.into(), d.into())
            })
            .collect();
        if c.iter().all(|x| *x == q(0, 1)) {
            continue;
        }
        // every fourth vector is pushed close to zero
        let mut c = c;
        if i % 4 == 0 {
            let v = oracle(&c).value(60);
            c[0] -= v;
            near_zero += 1;
        }
        let s = form(&b, &c).sign().unwrap();
        let expect = oracle(&c).sign(DIGITS).expect("oracle resolves the sign");
        assert_ne!(s, 0, "nonzero vector {c:?} reported as zero");
        assert_eq!(s, expect, "sign of {c:?}");
    }
    assert!(near_zero > 20_000);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn refinement_is_nested(c in coeffs(), p in 1u32..200) {
        let f = form(&basis(), &c);
        let outer = f.refine(p);
        let inner = f.refine(p + 1);
        prop_assert!(outer.contains_interval(&inner));
        prop_assert!(inner.width() <= Rational::new(BigInt::from(1), BigInt::from(2).pow(p + 1)));
        let v = oracle(&c).value(DIGITS);
        let eps = Rational::new(BigInt::from(1), BigInt::from(10).pow(150));
        prop_assert!(inner.lo <= &v + &eps && &v - &eps <= inner.hi);
    }

    #[test]
    fn addition_is_a_homomorphism(c1 in coeffs(), c2 in coeffs()) {
        let b = basis();
        let sum = form(&b, &c1).add(&form(&b, &c2)).unwrap();
        let c3: Vec<Rational> = c1.iter().zip(&c2).map(|(x, y)| x + y).collect();
        prop_assert_eq!(&sum, &form(&b, &c3));
        let v = oracle(&c1).value(DIGITS) + oracle(&c2).value(DIGITS);
        let enc = sum.refine(300);
        let eps = Rational::new(BigInt::from(1), BigInt::from(10).pow(150));
        prop_assert!(enc.lo <= &v + &eps && &v - &eps <= enc.hi);
    }

    #[test]
    fn compare_is_the_sign_of_the_difference(c1 in coeffs(), c2 in coeffs()) {
        let b = basis();
        let (f1, f2) = (form(&b, &c1), form(&b, &c2));
        let d: Vec<Rational> = c1.iter().zip(&c2).map(|(x, y)| x - y).collect();
        let want = oracle(&d).sign(DIGITS).unwrap();
        prop_assert_eq!(f1.compare(&f2).unwrap(), want.cmp(&0));
        prop_assert_eq!(f2.compare(&f1).unwrap(), 0.cmp(&want));
    }

    #[test]
    fn floor_multiple_brackets(ca in coeffs(), cs in coeffs()) {
        let b = basis();
        let (a, s) = (form(&b, &ca), form(&b, &cs));
        let s = if s.sign().unwrap() < 0 { s.neg() } else { s };
        prop_assume!(s.sign().unwrap() > 0);
        // keep the quotient small enough for the oracle check below
        prop_assume!(a.to_f64().abs() / s.to_f64() < 1e9);
        let (k, v) = a.floor_multiple(&s).unwrap();
        prop_assert_eq!(&v, &s.scale(&Rational::from_integer(k.into())));
        let below = |j: u64| {
            let d: Vec<Rational> = ca.iter().zip(&cs).map(|(x, y)| {
                let y = if form(&b, &cs).sign().unwrap() < 0 { -y.clone() } else { y.clone() };
                x - y * Rational::from_integer(j.into())
            }).collect();
            oracle(&d).sign(DIGITS).unwrap() > 0
        };
        if k >= 1 {
            prop_assert!(below(k));
        }
        prop_assert!(!below(k + 1));
    }
}
