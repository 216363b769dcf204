use std::sync::OnceLock;

use proptest::prelude::*;
use sextic_core::local::{is_maximal_at, splitting_shape};
use sextic_core::{BinaryCubicForm, Model, PredictionModel, Predictor, Sign, UnimodularMap};

fn form() -> impl Strategy<Value = BinaryCubicForm> {
    (-30i64..=30, -30i64..=30, -30i64..=30, -30i64..=30).prop_map(|(a, b, c, d)| BinaryCubicForm::new(a, b, c, d))
}

fn generator(i: u8) -> UnimodularMap {
    match i % 5 {
        0 => UnimodularMap::translation(1),
        1 => UnimodularMap::translation(-1),
        2 => UnimodularMap::swap(),
        3 => UnimodularMap::reflection(),
        _ => UnimodularMap::inversion(),
    }
}

fn predictor() -> &'static Predictor {
    static P: OnceLock<Predictor> = OnceLock::new();
    P.get_or_init(|| Predictor::new(1e-8).unwrap())
}

fn map() -> impl Strategy<Value = UnimodularMap> {
    prop::collection::vec(any::<u8>(), 0..8).prop_map(|gens| {
        gens.into_iter().fold(UnimodularMap::identity(), |m, g| m.checked_mul(&generator(g)).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn discriminant_is_invariant(f in form(), g in map()) {
        prop_assert_eq!(f.apply(&g).unwrap().discriminant(), f.discriminant());
    }

    #[test]
    fn hessian_discriminant_identity(f in form()) {
        prop_assert_eq!(f.hessian().discriminant(), -3 * f.discriminant());
    }

    #[test]
    fn content_is_invariant(f in form(), g in map()) {
        prop_assume!(!f.is_zero());
        prop_assert_eq!(f.apply(&g).unwrap().content().unwrap(), f.content().unwrap());
    }

    #[test]
    fn canonical_form_is_constant_on_orbits(f in form(), g in map()) {
        prop_assume!(f.discriminant() != 0 && f.is_irreducible().unwrap());
        let h = f.apply(&g).unwrap();
        let canon = f.canonical_reduce().unwrap();
        prop_assert_eq!(h.canonical_reduce().unwrap(), canon);
        prop_assert_eq!(canon.canonical_reduce().unwrap(), canon);
        prop_assert!(f.is_equivalent(&h).unwrap());
    }

    #[test]
    fn local_invariants_are_constant_on_orbits(f in form(), g in map()) {
        prop_assume!(f.discriminant() != 0);
        let h = f.apply(&g).unwrap();
        for p in [2u64, 3, 5, 7] {
            prop_assert_eq!(is_maximal_at(&h, p).unwrap(), is_maximal_at(&f, p).unwrap());
            prop_assert_eq!(splitting_shape(&h, p), splitting_shape(&f, p));
        }
    }

    #[test]
    fn predictions_increase_with_x(e1 in 6.0f64..23.5, step in 0.01f64..2.0) {
        let p = predictor();
        let (x1, x2) = (10f64.powf(e1), 10f64.powf(e1 + step));
        for sign in [Sign::Positive, Sign::Negative] {
            for model in [Model::Main, Model::Strong, Model::Stronger] {
                let pm = PredictionModel::new(model, sign);
                let a = p.predict(x1, &pm, &[]).unwrap();
                let b = p.predict(x2, &pm, &[]).unwrap();
                prop_assert!(b.total > a.total);
                prop_assert!(a.secondary <= 0.0);
            }
        }
    }
}
