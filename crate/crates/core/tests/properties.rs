use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use thompson_core::brin2v::{
    compose_n, equals_n, equals_n_oracle, inverse_n, is_identity_n, maximal_extension_n,
    maximal_extension_n_saturating, random_ntable,
};
use thompson_core::circuits::{circuit_eval, cvp_decide, random_circuit, Circuit};
use thompson_core::codes::{complement, BitString, PrefixCode};
use thompson_core::eval_v::{evaluate, evaluate_universal, random_word, sequential_apply, word_to_element, GenSet};
use thompson_core::fixators::factor_pipeline;
use thompson_core::format::{format_vtable, parse_vtable};
use thompson_core::v_core::{random_maximal_code, random_table};
use thompson_core::{ApplyOutcome, Kraft, VTable};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn bits() -> impl Strategy<Value = BitString> {
    proptest::collection::vec(0u8..2, 0..7).prop_map(|b| BitString::from_bits(&b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complement_completes_any_subcode(seed: u64, keep in 0usize..8) {
        let mut r = rng(seed);
        let full = random_maximal_code(&mut r, 8, 5);
        let p = PrefixCode::new(full.members().iter().take(keep).cloned()).unwrap();
        let u = p.union(&complement(&p)).unwrap();
        prop_assert!(u.is_maximal());
        prop_assert_eq!(u.kraft::<Kraft>(), Kraft::from_integer(1.into()));
    }

    #[test]
    fn composition_matches_sequential_application(seed: u64, x in bits()) {
        let mut r = rng(seed);
        let (f, g) = (random_table(&mut r, 4), random_table(&mut r, 4));
        let fg = VTable::compose(&f, &g);
        let step = match g.apply(&x) {
            ApplyOutcome::Value(v) => f.apply(&v),
            other => other,
        };
        if let ApplyOutcome::Value(v) = &step {
            prop_assert_eq!(fg.apply(&x), ApplyOutcome::Value(v.clone()));
        }
        prop_assert!(VTable::compose(&f.inverse(), &f).is_identity());
    }

    #[test]
    fn extension_preserves_the_element(seed: u64) {
        let mut r = rng(seed);
        let f = random_table(&mut r, 5);
        let e = f.maximal_extension();
        prop_assert!(e.equals(&f));
        prop_assert!(e.size() <= f.size());
        prop_assert_eq!(e.maximal_extension(), e.clone());
    }

    #[test]
    fn table_files_round_trip(seed: u64) {
        let f = random_table(&mut rng(seed), 5);
        prop_assert_eq!(parse_vtable(&format_vtable(&f)).unwrap(), f);
    }

    #[test]
    fn deciders_agree_on_random_words(seed: u64, x in bits(), y in bits()) {
        let mut r = rng(seed);
        let g = GenSet::thompson_v();
        let w = random_word(&mut r, &g, 5, 2);
        let e = word_to_element(&w, &g).unwrap();
        let t = evaluate(&w, &x, &y, &g).unwrap();
        prop_assert_eq!(t, e.eval_oracle(&x, &y));
        prop_assert_eq!(t, evaluate_universal(&w, &x, &y, &g).unwrap());
        if let ApplyOutcome::Value(v) = sequential_apply(&w, &x, &g).unwrap() {
            prop_assert!(evaluate(&w, &x, &v, &g).unwrap());
        }
    }

    #[test]
    fn factorization_multiplies_back(seed: u64) {
        let g = random_table(&mut rng(seed), 4).maximal_extension();
        let fw = factor_pipeline(&g);
        prop_assert!(fw.product().equals(&g));
    }

    #[test]
    fn circuits_round_trip_and_compile(seed: u64) {
        let mut r = rng(seed);
        let c = random_circuit(&mut r, 4, 3, 8);
        let back: Circuit = c.to_string().parse().unwrap();
        prop_assert_eq!(back.to_string(), c.to_string());
        for x in BitString::all_of_length(c.inputs) {
            let y = circuit_eval(&c, &x).unwrap();
            prop_assert!(cvp_decide(&c, &x, &y).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn extension_in_2v_is_order_free(seed: u64, size in 1usize..6) {
        let mut r = rng(seed);
        let f = random_ntable(&mut r, size, 2);
        let e = maximal_extension_n(&f).unwrap();
        for _ in 0..3 {
            prop_assert_eq!(maximal_extension_n_saturating(&f, &mut r).unwrap(), e.clone());
        }
    }

    #[test]
    fn group_laws_in_2v(seed: u64, size in 1usize..6) {
        let mut r = rng(seed);
        let f = random_ntable(&mut r, size, 2);
        let g = random_ntable(&mut r, size, 2);
        prop_assert!(is_identity_n(&compose_n(&inverse_n(&f), &f).unwrap()).unwrap());
        let fg = compose_n(&f, &g).unwrap();
        prop_assert_eq!(equals_n(&fg, &f).unwrap(), equals_n_oracle(&fg, &f).unwrap());
        prop_assert!(equals_n(&f, &maximal_extension_n(&f).unwrap()).unwrap());
    }
}
