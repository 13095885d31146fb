mod common;

use std::sync::OnceLock;

use approx_codec::engine::{best_both, find_split, right_extension, splits_between, FiniteApproximation};
use approx_codec::numeric::{LinearForm, ParamReal, Rational};
use approx_codec::systems::{ApproximationSystem, KroneckerSystem};
use common::{kron_values, Q3};
use proptest::prelude::*;

fn kron() -> &'static KroneckerSystem {
    static K: OnceLock<KroneckerSystem> = OnceLock::new();
    K.get_or_init(KroneckerSystem::sqrt2_sqrt3)
}

fn vals() -> &'static [Q3] {
    static V: OnceLock<Vec<Q3>> = OnceLock::new();
    V.get_or_init(|| kron_values(2000))
}

fn c_in_u() -> impl Strategy<Value = Rational> {
    (1i64..=5000).prop_flat_map(|d| (1i64..(d * 1732 / 1000).max(2)).prop_map(move |n| Rational::new(n.into(), d.into())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn best_approximations_sandwich_c(c in c_in_u(), depth in 1u64..2000) {
        let k = kron();
        let p = ParamReal::Exact(LinearForm::rational(k.basis(), c.clone()));
        let (l, r) = best_both(k, &p, depth).unwrap();
        let cq = Q3::rational(c);
        let v = vals();
        if let (Some(&lm), Some(&rm)) = (l.last(), r.last()) {
            prop_assert!(v[lm as usize - 1].lt(&cq) && cq.lt(&v[rm as usize - 1]));
        }
        // the last of each side is the closest value on that side
        for e in 1..=depth {
            let fe = &v[e as usize - 1];
            if let Some(&lm) = l.last() {
                prop_assert!(!(v[lm as usize - 1].lt(fe) && fe.lt(&cq)));
            }
            if let Some(&rm) = r.last() {
                prop_assert!(!(cq.lt(fe) && fe.lt(&v[rm as usize - 1])));
            }
        }
    }

    #[test]
    fn right_extension_composes(c in c_in_u(), d in 1u64..200, s1 in 0u64..200, s2 in 0u64..200) {
        let k = kron();
        let p = ParamReal::Exact(LinearForm::rational(k.basis(), c));
        let (l, r) = best_both(k, &p, d).unwrap();
        let x = FiniteApproximation::new(l, r, d).unwrap();
        let (d1, d2) = (d + s1, d + s1 + s2);
        let once = right_extension(k, &x, d2).unwrap();
        let twice = right_extension(k, &right_extension(k, &x, d1).unwrap(), d2).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert!(once.extends(&x));
        prop_assert_eq!(right_extension(k, &x, d).unwrap(), x);
    }

    #[test]
    fn splitting_persists_to_larger_depths(d1 in 1u64..40, extra in 0u64..50) {
        let k = kron();
        let s = find_split(k, d1).unwrap();
        prop_assert!(splits_between(k, d1, s + extra).unwrap());
        prop_assert!(s == d1 + 1 || !splits_between(k, d1, s - 1).unwrap());
    }
}
