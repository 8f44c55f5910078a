use thompson_core::brin2v::{complement_init, is_essential, is_essential_oracle, table_checks, Tuple, TupleCode};
use thompson_core::codes::{bs, complement_single, PrefixCode};
use thompson_core::eval_v::{classify_input, GenSet, GenWord, InputClass};
use thompson_core::fixators::{eval_via_commutation, CommutationDecider};
use thompson_core::format::parse_ntable;
use thompson_core::monoid::{bracket, decompose_pushpop, eval_m, MGenSet};
use thompson_core::VTable;

fn code(items: &[&str]) -> TupleCode {
    TupleCode::new(2, items.iter().map(|s| s.parse::<Tuple>().unwrap())).unwrap()
}

#[test]
fn single_string_complements() {
    let c = complement_single(&bs("0110")).unwrap();
    assert_eq!(c, PrefixCode::new(["1", "00", "010", "0111"].map(bs)).unwrap());
}

#[test]
fn short_witness() {
    let w = GenWord::parse("A^-1 A").unwrap();
    assert_eq!(
        classify_input(&w, &bs(""), &GenSet::standard()).unwrap(),
        InputClass::Short
    );
}

#[test]
fn coset_test_alone_is_not_enough() {
    // g swaps 00 and 01 and fixes the 1-cylinder; g(0) = 0 as a set but not pointwise.
    let g = VTable::new([("00", "01"), ("01", "00"), ("1", "1")].map(|(a, b)| (bs(a), bs(b)))).unwrap();
    let mut d = CommutationDecider::new(&GenSet::thompson_v());
    let rep = d.eval_report(&g, &bs("0"), &bs("0")).unwrap();
    assert!(rep.coset.holds);
    assert!(!rep.conjugation.holds);
    assert!(!eval_via_commutation(&g, &bs("0"), &bs("0"), &GenSet::thompson_v()).unwrap());
    assert!(eval_via_commutation(&g, &bs("00"), &bs("01"), &GenSet::thompson_v()).unwrap());
}

#[test]
fn essential_but_not_joinless() {
    let s = code(&["(e,0)", "(0,e)", "(1,1)"]);
    assert!(s.is_initial_factor_code());
    assert!(!s.is_joinless());
    assert!(is_essential(&s).unwrap());
    assert!(is_essential_oracle(&s).unwrap());
}

#[test]
fn complementary_initial_factor_codes() {
    let p = code(&["(11,00)"]);
    assert_eq!(
        complement_init(&p).unwrap(),
        code(&["(0,e)", "(10,e)", "(e,1)", "(e,01)"])
    );
    assert_eq!(complement_init(&code(&["(e,0)", "(0,e)"])).unwrap(), code(&["(1,1)"]));
    assert_eq!(complement_init(&TupleCode::empty(2)).unwrap(), code(&["(e,e)"]));
}

#[test]
fn non_function_table() {
    let f = parse_ntable("n=2\n(0,e) -> (00,e)\n(e,0) -> (01,e)\n(1,1) -> (1,e)\n").unwrap();
    let q = table_checks(&f).unwrap();
    assert!(!q.q1);
    assert!(q.witness.is_some());
}

#[test]
fn brackets_from_push_and_pop() {
    let g = MGenSet::pushpop();
    let w = decompose_pushpop(&bs("01"), &bs("1"));
    assert_eq!(w.to_string(), "push0 push1 pop1");
    assert!(eval_m(&w, &bs("10"), &bs("010"), &g).unwrap());
    assert!(!eval_m(&w, &bs("0"), &bs("01"), &g).unwrap());
    assert_eq!(bracket(&bs("01"), &bs("1")).pairs(), &[(bs("1"), bs("01"))]);
}
