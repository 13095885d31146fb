mod common;

use std::collections::HashSet;

use approx_codec::numeric::{LinearForm, ParamReal, Rational};
use approx_codec::systems::{
    g, gap_lengths, verify_condition_ii, ApproximationSystem, FieldFormula, FieldSystem, KroneckerSystem, Limits,
    SineSystem,
};
use approx_codec::Error;
use common::{kron_f, q, Q3};

fn rq(p: i64, d: i64) -> Rational {
    q(p, d)
}

#[test]
fn kronecker_values_match_the_oracle() {
    let k = KroneckerSystem::sqrt2_sqrt3();
    let sqrt3 = k.basis().lookup("sqrt:3").unwrap();
    for n in (1..=500).chain([10_000, 123_456, 999_999]) {
        let f = k.f(n).unwrap();
        let o = kron_f(n);
        assert_eq!(f.coeff(0), o.a, "rational part of f({n})");
        assert_eq!(f.coeff(sqrt3), o.b, "sqrt 3 part of f({n})");
        assert_eq!(f.terms().len(), if o.b == q(0, 1) { 1 } else { 2 });
        assert_eq!(o.sign(), 1);
        assert!(o.lt(&Q3 { a: q(0, 1), b: q(1, 1) }));
    }
}

#[test]
fn condition_ii_on_small_depths() {
    let k = KroneckerSystem::sqrt2_sqrt3();
    let s = SineSystem::new(1000, Limits::default());
    let fd = FieldSystem::from_formula(FieldFormula::VanDerCorput, Limits::default());
    let systems: [&dyn ApproximationSystem; 3] = [&k, &s, &fd];
    for sys in systems {
        let b = sys.basis();
        let (a, bb) = (LinearForm::rational(b, rq(-1, 3)), LinearForm::rational(b, rq(2, 7)));
        for d in 1..=6 {
            for e in 1..=d {
                let iv = verify_condition_ii(sys, &a, &bb, d, e).unwrap();
                assert!(iv.lo < iv.hi);
                assert!(rq(-1, 3) <= iv.lo && iv.hi <= rq(2, 7));
                for x in [iv.midpoint(), (&iv.lo * rq(9, 10)) + (&iv.hi * rq(1, 10))] {
                    let c = ParamReal::Exact(LinearForm::rational(b, x));
                    assert_eq!(g(sys, &c, &a, &bb, d).unwrap(), e, "{:?} d={d} e={e}", sys.descriptor());
                }
            }
        }
        assert!(matches!(verify_condition_ii(sys, &a, &bb, 3, 4), Err(Error::InvalidInput(_))));
        assert!(matches!(verify_condition_ii(sys, &bb, &a, 3, 1), Err(Error::InvalidInput(_))));
        // g is 1 on a degenerate interval
        let c = ParamReal::Exact(LinearForm::zero(b));
        assert_eq!(g(sys, &c, &bb, &a, 5).unwrap(), 1);
    }
}

#[test]
fn h2_values_are_independent() {
    let k = KroneckerSystem::sqrt2_sqrt3();
    let s = SineSystem::new(1000, Limits::default());
    for (u, d) in [(rq(1, 2), 40), (rq(1, 9), 25)] {
        let kv = k.h2_all(&LinearForm::rational(k.basis(), u.clone()), d).unwrap();
        let sv = s.h2_all(&LinearForm::rational(s.basis(), u.clone()), d).unwrap();
        for vals in [kv, sv] {
            let distinct: HashSet<Vec<Rational>> = vals.iter().map(|v| v.coeff_vector()).collect();
            assert_eq!(distinct.len(), d as usize);
            for v in &vals {
                assert!(v.sign().unwrap() > 0);
                assert!(v.as_rational().is_none());
            }
        }
    }
    let u = LinearForm::rational(k.basis(), rq(1, 2));
    assert_eq!(k.h2(&u, 10, 3).unwrap(), k.h2_all(&u, 10).unwrap()[2]);
}

#[test]
fn three_distances_on_a_small_range() {
    let k = KroneckerSystem::sqrt2_sqrt3();
    for n in [1, 2, 3, 10, 57, 100] {
        let gaps = gap_lengths(&k, n).unwrap();
        assert!(!gaps.is_empty() && gaps.len() <= 3, "{n}: {} gap lengths", gaps.len());
    }
}

#[test]
fn field_h_maps_into_the_interval() {
    let fd = FieldSystem::from_formula(FieldFormula::VanDerCorput, Limits::default());
    let b = fd.basis();
    let (a, bb) = (LinearForm::rational(b, rq(-5, 3)), LinearForm::rational(b, rq(1, 4)));
    let mut seen = HashSet::new();
    for e in 1..=64 {
        let h = fd.field_h(&a, &bb, e).unwrap();
        assert!(a.lt(&h).unwrap() && h.lt(&bb).unwrap());
        assert!(seen.insert(h.as_rational().unwrap()));
    }
    assert_eq!(fd.field_h(&bb, &a, 3).unwrap(), bb);
    let t = FieldSystem::from_strs(&["1/2", "1/4", "1/2", "3/4"], Limits::default()).unwrap();
    assert_eq!(t.domain_len(), Some(3));
    assert_eq!(t.kept_indices().unwrap(), &[1, 2, 4]);
    assert!(matches!(t.f(4), Err(Error::DepthExhausted(_))));
    assert!(FieldSystem::from_strs(&["1"], Limits::default()).is_err());
}
