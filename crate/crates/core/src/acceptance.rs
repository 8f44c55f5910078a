//! The acceptance suite: ten criteria, each a pass/fail line with its
//! counts, tolerances and time limit. Shared by the `acceptance` test
//! target and the `selftest` subcommand.

use std::fmt;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::brin2v::{
    complement_init, embed_v_to_2v, eval2v, is_essential, is_essential_oracle, maximal_extension_n,
    random_joinless_code, random_ntable, table_checks, table_checks_oracle, NGenSet, NTable, Tuple, TupleCode,
};
use crate::circuits::{circuit_eval, compile_circuit, gadget_genset, random_circuit};
use crate::codes::{all_prefix_codes, complement, complement_single, BitString, PrefixCode};
use crate::eval_v::{
    all_words, classify_input, evaluate, evaluate_universal, long_input_threshold, random_word, sequential_apply,
    word_to_element, CompiledWord, GenSet, GenWord, InputClass,
};
use crate::fixators::{bridge_code, factor_pipeline, pfix_membership_direct, pi_p, CommutationDecider};
use crate::monoid::{
    action_equal_m, apply_m, bracket, decompose_pushpop, eval_m, eval_reduction_check, random_word_m, reduction_depth,
    word_to_element_m, MGenSet,
};
use crate::recognizer::{encode_forward, Recognizer};
use crate::v_core::{random_maximal_code, random_table, ApplyOutcome, VTable};

pub const DEFAULT_SEED: u64 = 0x5EED_2024;

/// Steps of the recognizer per (input symbol + push).
pub const RECOGNIZER_STEP_CONSTANT: f64 = 2.0;

/// size(w_C) ≤ c·|C|³ must hold with this c on the whole circuit corpus.
pub const CIRCUIT_SIZE_CONSTANT: f64 = 64.0;

pub const TIME_LIMIT_1: Duration = Duration::from_secs(1);
pub const TIME_LIMIT_2: Duration = Duration::from_secs(60);
pub const TIME_LIMIT_6: Duration = Duration::from_secs(120);
pub const TIME_LIMIT_7: Duration = Duration::from_secs(120);
pub const TIME_LIMIT_TOTAL: Duration = Duration::from_secs(600);

#[derive(Clone, Debug, serde::Serialize)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    /// Fitted constants and other figures for the run log.
    pub notes: Vec<String>,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.limit.is_none_or(|l| self.elapsed < l)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let limit = self.limit.map(|l| format!(" < {}s", l.as_secs())).unwrap_or_default();
        write!(
            f,
            "{verdict} {:>2} {}: {} checks, {} failures, {:.2}s{limit}",
            self.id,
            self.title,
            self.checked,
            self.failures,
            self.elapsed.as_secs_f64()
        )?;
        for n in &self.notes {
            write!(f, "; {n}")?;
        }
        if let Some(e) = &self.first_failure {
            write!(f, "; first failure: {e}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: usize,
    first_failure: Option<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    /// Records an error as a failure.
    fn ok<T>(&mut self, r: crate::Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", what()));
                None
            }
        }
    }
}

pub const TITLES: [&str; 10] = [
    "maximal extension reproduces F12",
    "three V evaluation deciders agree",
    "long-input semantics",
    "stack recognizer equivalence",
    "complementary prefix codes",
    "commutation tests",
    "circuit compiler",
    "2V suite",
    "factorization round trip",
    "monoid identities",
];

pub fn run(id: u8, seed: u64) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(id).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut t = Tally::default();
    let limit = match id {
        1 => {
            criterion_1(&mut t);
            Some(TIME_LIMIT_1)
        }
        2 => {
            criterion_2(&mut t, &mut rng);
            Some(TIME_LIMIT_2)
        }
        3 => {
            criterion_3(&mut t, &mut rng);
            None
        }
        4 => {
            criterion_4(&mut t);
            None
        }
        5 => {
            criterion_5(&mut t);
            None
        }
        6 => {
            criterion_6(&mut t, &mut rng);
            Some(TIME_LIMIT_6)
        }
        7 => {
            criterion_7(&mut t, &mut rng);
            Some(TIME_LIMIT_7)
        }
        8 => {
            criterion_8(&mut t, &mut rng);
            None
        }
        9 => {
            criterion_9(&mut t, &mut rng);
            None
        }
        10 => {
            criterion_10(&mut t, &mut rng);
            None
        }
        _ => panic!("criteria are numbered 1 to 10"),
    };
    Outcome {
        id,
        title: TITLES[usize::from(id) - 1],
        checked: t.checked,
        failures: t.failures,
        first_failure: t.first_failure,
        notes: t.notes,
        elapsed: start.elapsed(),
        limit,
    }
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    (1..=10).map(|id| run(id, seed)).collect()
}

fn tup(s: &str) -> Tuple {
    s.parse().expect("literal tuple")
}

fn ntable(items: &[(&str, &str)]) -> NTable {
    NTable::candidate(items.iter().map(|(a, b)| (tup(a), tup(b)))).expect("literal table")
}

fn criterion_1(t: &mut Tally) {
    let f = ntable(&[
        ("(0,0)", "(0,0)"),
        ("(1,0)", "(1,0)"),
        ("(0,1)", "(0,1)"),
        ("(1,10)", "(1,11)"),
        ("(1,11)", "(1,10)"),
    ]);
    let f1 = ntable(&[
        ("(e,0)", "(e,0)"),
        ("(0,1)", "(0,1)"),
        ("(1,10)", "(1,11)"),
        ("(1,11)", "(1,10)"),
    ]);
    let f2 = ntable(&[
        ("(0,e)", "(0,e)"),
        ("(1,0)", "(1,0)"),
        ("(1,10)", "(1,11)"),
        ("(1,11)", "(1,10)"),
    ]);
    let f12 = ntable(&[
        ("(e,0)", "(e,0)"),
        ("(0,e)", "(0,e)"),
        ("(1,10)", "(1,11)"),
        ("(1,11)", "(1,10)"),
    ]);
    for (name, table) in [("F", f), ("F1", f1), ("F2", f2)] {
        if let Some(e) = t.ok(maximal_extension_n(&table), || name.to_string()) {
            t.check(e == f12, || format!("{name} extends to {e}"));
        }
    }
}

/// All three deciders on one instance; a failure names the instance.
fn three_deciders(
    t: &mut Tally,
    dec: &mut CommutationDecider,
    w: &GenWord,
    g: &GenSet,
    e: &VTable,
    x: &BitString,
    y: &BitString,
) {
    let what = || format!("w={w} x={x} y={y}");
    let Some(a) = t.ok(evaluate(w, x, y, g), what) else {
        return;
    };
    let Some(b) = t.ok(evaluate_universal(w, x, y, g), what) else {
        return;
    };
    let Some(c) = t.ok(dec.eval(e, x, y), what) else { return };
    t.check(a == b && b == c, || {
        format!("{}: table={a} universal={b} commutation={c}", what())
    });
}

fn random_string<R: Rng + ?Sized>(rng: &mut R, min: usize, max: usize) -> BitString {
    let len = rng.gen_range(min..=max);
    BitString::from_bits(&(0..len).map(|_| rng.gen_range(0..2u8)).collect::<Vec<_>>())
}

/// y is E(x) half of the time (when defined), random otherwise.
fn target<R: Rng + ?Sized>(rng: &mut R, e: &VTable, x: &BitString, max: usize) -> BitString {
    if rng.gen_bool(0.5) {
        if let ApplyOutcome::Value(v) = e.apply(x) {
            return v;
        }
    }
    random_string(rng, 0, max)
}

fn criterion_2(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let mut dec = CommutationDecider::new(&GenSet::thompson_v());
    let std = GenSet::standard();
    let short: Vec<BitString> = BitString::all_up_to(2).collect();
    for w in all_words(&std, 3) {
        let e = word_to_element(&w, &std).expect("resolved word");
        for x in &short {
            for y in &short {
                three_deciders(t, &mut dec, &w, &std, &e, x, y);
            }
        }
    }
    let exhaustive = t.checked;
    let g = GenSet::thompson_v();
    let mut trues = 0;
    for _ in 0..10_000 {
        let w = random_word(rng, &g, 6, 0);
        let e = word_to_element(&w, &g).expect("resolved word");
        let x = random_string(rng, 0, 5);
        let y = target(rng, &e, &x, 5);
        trues += usize::from(e.eval_oracle(&x, &y));
        three_deciders(t, &mut dec, &w, &g, &e, &x, &y);
    }
    t.notes
        .push(format!("{exhaustive} exhaustive, 10000 random ({trues} true)"));
}

fn criterion_3(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let g = GenSet::thompson_v();
    let mut longs = 0;
    for _ in 0..10_000 {
        let w = random_word(rng, &g, 6, 3);
        let threshold = long_input_threshold(&w, &g);
        let x = random_string(rng, 0, threshold + 2);
        let what = || format!("w={w} x={x}");
        let Some(class) = t.ok(classify_input(&w, &x, &g), what) else {
            continue;
        };
        if x.len() >= threshold {
            t.check(class == InputClass::Long, || {
                format!("{}: |x| ≥ {threshold} but {class:?}", what())
            });
        }
        if class == InputClass::Long {
            longs += 1;
            let seq = sequential_apply(&w, &x, &g).expect("resolved word");
            let y = seq.value().expect("long input").clone();
            let agree = evaluate(&w, &x, &y, &g).expect("resolved word");
            t.check(agree, || {
                format!("{}: evaluate disagrees with sequential value {y}", what())
            });
        }
    }
    let w = GenWord::parse("A^-1 A").expect("literal word");
    let class = classify_input(&w, &BitString::empty(), &g).expect("resolved word");
    t.check(class == InputClass::Short, || {
        format!("A^-1 A on ε classified {class:?}")
    });
    t.notes.push(format!("{longs} long inputs"));
}

fn criterion_4(t: &mut Tally) {
    let g = GenSet::standard();
    let r = Recognizer::new(&g);
    let strings: Vec<BitString> = BitString::all_up_to(4).collect();
    let mut fitted: f64 = 0.0;
    for w in all_words(&g, 3).into_iter().filter(|w| !w.is_empty()) {
        let cw = CompiledWord::new(&w, &g).expect("resolved word");
        for x in &strings {
            let out = cw.apply(x);
            for y in &strings {
                let expect = out.value() == Some(y);
                let stream = encode_forward(x, &w, y);
                let Some((acc, trace)) = t.ok(r.recognize(&stream), || format!("w={w} x={x} y={y}")) else {
                    continue;
                };
                t.check(acc == expect, || format!("forward w={w} x={x} y={y}: {acc}"));
                let rev: Vec<_> = stream.iter().rev().cloned().collect();
                let Some((racc, _)) = t.ok(r.recognize_rev(&rev), || format!("reverse w={w} x={x} y={y}")) else {
                    continue;
                };
                t.check(racc == expect, || format!("reverse w={w} x={x} y={y}: {racc}"));
                let c = trace.steps() as f64 / (stream.len() + trace.pushes) as f64;
                fitted = fitted.max(c);
            }
        }
    }
    t.check(fitted <= RECOGNIZER_STEP_CONSTANT, || {
        format!("step constant {fitted:.3}")
    });
    t.notes.push(format!(
        "fitted step constant c = {fitted:.3} (bound {RECOGNIZER_STEP_CONSTANT})"
    ));
}

fn criterion_5(t: &mut Tally) {
    let codes = all_prefix_codes(4);
    let count = codes.len();
    for p in codes {
        let q = complement(&p);
        let what = || format!("P={p} P'={q}");
        match p.union(&q) {
            Ok(u) => t.check(u.kraft::<Ratio<i64>>().is_one(), || {
                format!("{}: Kraft sum ≠ 1", what())
            }),
            Err(_) => t.check(false, || format!("{}: not disjoint", what())),
        }
        t.check(q.maxlen() <= p.maxlen(), || format!("{}: maxlen grew", what()));
    }
    for u in BitString::all_up_to(8).filter(|u| !u.is_empty()) {
        let c = complement_single(&u).expect("nonempty");
        t.check(c.len() == u.len(), || format!("|complement({u})| = {}", c.len()));
    }
    t.notes.push(format!("{count} codes with maxlen ≤ 4"));
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every element of V whose two codes have members of length at most `maxlen`.
fn all_tables(maxlen: usize) -> Vec<VTable> {
    let maximal: Vec<PrefixCode> = all_prefix_codes(maxlen)
        .into_iter()
        .filter(|c| c.is_maximal())
        .collect();
    let mut out = Vec::new();
    for d in &maximal {
        for r in maximal.iter().filter(|r| r.len() == d.len()) {
            for perm in permutations(d.len()) {
                let pairs = d
                    .members()
                    .iter()
                    .cloned()
                    .zip(perm.iter().map(|&i| r.members()[i].clone()));
                out.push(VTable::new(pairs).expect("bijection of maximal codes"));
            }
        }
    }
    out
}

/// A random nonempty, non-maximal prefix code.
fn random_partial_code<R: Rng + ?Sized>(rng: &mut R, maxlen: usize) -> PrefixCode {
    let size = rng.gen_range(2..=(1usize << maxlen).min(6));
    let full = random_maximal_code(rng, size, maxlen);
    let mut members = full.members().to_vec();
    members.shuffle(rng);
    let keep = rng.gen_range(1..members.len());
    members.truncate(keep);
    PrefixCode::new(members).expect("subset of a code")
}

fn criterion_6(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let gens = GenSet::thompson_v();
    let mut dec = CommutationDecider::new(&gens);
    let tables = all_tables(2);
    let codes: Vec<PrefixCode> = all_prefix_codes(2)
        .into_iter()
        .filter(|c| !c.is_empty() && !c.is_maximal())
        .collect();
    let mut members = 0;
    for g in &tables {
        for p in &codes {
            let direct = pfix_membership_direct(g, p);
            members += usize::from(direct);
            if let Some(o) = t.ok(dec.membership(g, p), || format!("g={g} P={p}")) {
                t.check(o.holds == direct, || {
                    format!("g={g} P={p}: direct={direct} commutation={}", o.holds)
                });
            }
        }
    }
    for i in 0..500 {
        let p = random_partial_code(rng, 3);
        let g = if i % 2 == 0 {
            random_table(rng, 3)
        } else {
            let q = complement(&p);
            pi_p(&p, &q, &bridge_code(q.len()), &random_table(rng, 2))
        };
        let direct = pfix_membership_direct(&g, &p);
        members += usize::from(direct);
        if let Some(o) = t.ok(dec.membership(&g, &p), || format!("g={g} P={p}")) {
            t.check(o.holds == direct, || {
                format!("g={g} P={p}: direct={direct} commutation={}", o.holds)
            });
        }
    }
    let mut trues = 0;
    for _ in 0..500 {
        let g = random_table(rng, 3);
        let x = random_string(rng, 1, 3);
        let y = match g.apply(&x) {
            ApplyOutcome::Value(v) if rng.gen_bool(0.5) && !v.is_empty() && v.len() <= 3 => v,
            _ => random_string(rng, 1, 3),
        };
        let oracle = g.eval_oracle(&x, &y);
        trues += usize::from(oracle);
        if let Some(c) = t.ok(dec.eval(&g, &x, &y), || format!("g={g} x={x} y={y}")) {
            t.check(c == oracle, || {
                format!("g={g} x={x} y={y}: oracle={oracle} commutation={c}")
            });
        }
    }
    t.notes
        .push(format!("{members} fixator members, {trues} true evaluations"));
}

fn criterion_7(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let g = gadget_genset();
    let mut fitted: f64 = 0.0;
    for _ in 0..200 {
        let c = random_circuit(rng, 6, 4, 12);
        let Some(report) = t.ok(compile_circuit(&c), || c.to_string()) else {
            continue;
        };
        let cw = CompiledWord::new(&report.word, &g).expect("gadget word");
        for x in BitString::all_of_length(c.inputs) {
            let fx = circuit_eval(&c, &x).expect("input width");
            let zero = BitString::from_bits(&[0]);
            let expect = zero.concat(&fx).concat(&x);
            let out = cw.apply(&zero.concat(&x));
            let class = classify_input(&report.word, &zero.concat(&x), &g);
            t.check(class == Ok(InputClass::Long), || format!("0x = 0{x} is {class:?}"));
            t.check(out.value() == Some(&expect), || {
                format!("{} x={x}: {out:?}", c.to_string().replace('\n', "; "))
            });
            for y in BitString::all_of_length(c.outputs) {
                let decision = out.value() == Some(&zero.concat(&y).concat(&x));
                t.check(decision == (fx == y), || format!("cvp x={x} y={y}"));
            }
        }
        let ratio = report.size as f64 / (c.size() as f64).powi(3);
        fitted = fitted.max(ratio);
    }
    t.check(fitted <= CIRCUIT_SIZE_CONSTANT, || format!("size constant {fitted:.2}"));
    t.notes.push(format!(
        "fitted size constant c = {fitted:.2} (bound {CIRCUIT_SIZE_CONSTANT})"
    ));
}

fn tuples_up_to(len: usize) -> Vec<Tuple> {
    let strings: Vec<BitString> = BitString::all_up_to(len).collect();
    strings
        .iter()
        .flat_map(|a| strings.iter().map(move |b| Tuple::new(vec![a.clone(), b.clone()])))
        .collect()
}

/// A random initial-factor code with up to `size` members.
fn random_if_code<R: Rng + ?Sized>(rng: &mut R, size: usize, maxlen: usize) -> TupleCode {
    let mut members: Vec<Tuple> = Vec::new();
    for _ in 0..size {
        let t = Tuple::new(vec![random_string(rng, 0, maxlen), random_string(rng, 0, maxlen)]);
        if members
            .iter()
            .all(|m| !m.is_initial_factor_of(&t) && !t.is_initial_factor_of(m))
        {
            members.push(t);
        }
    }
    TupleCode::new(2, members).expect("pairs")
}

fn essentiality_agrees(t: &mut Tally, p: &TupleCode) {
    let what = || format!("P={p}");
    let (Some(a), Some(b)) = (t.ok(is_essential(p), what), t.ok(is_essential_oracle(p), what)) else {
        return;
    };
    t.check(a == b, || format!("P={p}: complement={a} oracle={b}"));
    let Some(c) = t.ok(complement_init(p), what) else {
        return;
    };
    let disjoint = c
        .members()
        .iter()
        .all(|x| p.members().iter().all(|q| x.join(q).is_none()));
    t.check(disjoint, || format!("P={p}: P'={c} meets P"));
    let union = TupleCode::new(2, p.members().iter().chain(c.members()).cloned()).expect("pairs");
    let covered = t.ok(is_essential_oracle(&union), what);
    t.check(covered == Some(true), || format!("P={p}: P ∪ P' not essential"));
}

fn random_candidate<R: Rng + ?Sized>(rng: &mut R) -> NTable {
    let size = rng.gen_range(1..=6);
    let valid = random_ntable(rng, size, 2);
    match rng.gen_range(0..4) {
        0 => valid,
        1 => {
            let mut pairs = valid.pairs().to_vec();
            let i = rng.gen_range(0..pairs.len());
            pairs[i].1 = Tuple::new(vec![random_string(rng, 0, 2), random_string(rng, 0, 2)]);
            NTable::candidate(pairs).expect("nonempty")
        }
        2 if valid.size() > 1 => {
            let mut pairs = valid.pairs().to_vec();
            pairs.remove(rng.gen_range(0..pairs.len()));
            NTable::candidate(pairs).expect("nonempty")
        }
        _ => {
            let dom = random_if_code(rng, 4, 2);
            let img = random_if_code(rng, 4, 2);
            let k = dom.len().min(img.len()).max(1);
            let pairs: Vec<(Tuple, Tuple)> = dom
                .members()
                .iter()
                .cloned()
                .zip(img.members().iter().cloned())
                .take(k)
                .collect();
            if pairs.is_empty() {
                valid
            } else {
                NTable::candidate(pairs).expect("nonempty")
            }
        }
    }
}

fn criterion_8(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let small = tuples_up_to(2);
    for u in &small {
        for v in &small {
            let comparable = u
                .coords()
                .iter()
                .zip(v.coords())
                .all(|(a, b)| a.is_prefix_of(b) || b.is_prefix_of(a));
            let j = u.join(v);
            let least = j.as_ref().is_none_or(|j| {
                u.is_initial_factor_of(j)
                    && v.is_initial_factor_of(j)
                    && j.total_len() == {
                        u.coords()
                            .iter()
                            .zip(v.coords())
                            .map(|(a, b)| a.len().max(b.len()))
                            .sum::<usize>()
                    }
            });
            t.check(j.is_some() == comparable && least, || format!("join {u} {v}"));
        }
    }
    let mut codes = 0;
    for i in 0..small.len() {
        for j in i..small.len() {
            for k in j..small.len() {
                let members: Vec<Tuple> = [i, j, k].iter().map(|&a| small[a].clone()).collect();
                let p = TupleCode::new(2, members).expect("pairs");
                if p.is_initial_factor_code() {
                    codes += 1;
                    essentiality_agrees(t, &p);
                }
            }
        }
    }
    for _ in 0..500 {
        let p = if rng.gen_bool(0.5) {
            {
                let size = rng.gen_range(1..=7);
                random_joinless_code(rng, 2, size, 3)
            }
        } else {
            random_if_code(rng, 6, 3)
        };
        essentiality_agrees(t, &p);
    }
    let mut groups = 0;
    for _ in 0..200 {
        let f = random_candidate(rng);
        let (Some(a), Some(b)) = (
            t.ok(table_checks(&f), || f.to_string()),
            t.ok(table_checks_oracle(&f), || f.to_string()),
        ) else {
            continue;
        };
        groups += usize::from(a.q5);
        t.check(a.answers() == b.answers(), || {
            format!("F={f}: {:?} vs oracle {:?}", a.answers(), b.answers())
        });
    }
    let vg = GenSet::standard();
    let ng = NGenSet::embedded(&vg).expect("embedded generators");
    let mut trues = 0;
    for _ in 0..200 {
        let w = random_word(rng, &vg, 3, 3);
        let e = word_to_element(&w, &vg).expect("resolved word");
        let x = random_string(rng, 0, 4);
        let y = target(rng, &e, &x, 4);
        let v = evaluate(&w, &x, &y, &vg).expect("resolved word");
        trues += usize::from(v);
        let pad = |s: &BitString| Tuple::new(vec![s.clone(), BitString::empty()]);
        let what = || format!("w={w} x={x} y={y}");
        if let Some(b) = t.ok(eval2v(&embed_v_to_2v(&w), &pad(&x), &pad(&y), &ng), what) {
            t.check(b == v, || format!("{}: V={v} 2V={b}", what()));
        }
    }
    t.notes.push(format!(
        "{codes} exhaustive codes, {groups} group tables among 200 candidates, {trues} true embedded evaluations"
    ));
}

fn criterion_9(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let mut max_ratio: f64 = 0.0;
    for _ in 0..500 {
        let g = random_table(rng, 4).maximal_extension();
        let fw = factor_pipeline(&g);
        t.check(fw.product().equals(&g), || format!("g={g}: product differs"));
        let n = g.size();
        t.check(fw.transposition_count() <= 3 * n, || {
            format!("g={g}: {} transpositions", fw.transposition_count())
        });
        max_ratio = max_ratio.max(fw.transposition_count() as f64 / n as f64);
    }
    t.notes
        .push(format!("max transpositions per table entry {max_ratio:.2}"));
}

fn criterion_10(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let g = MGenSet::pushpop();
    for u in BitString::all_up_to(3) {
        for v in BitString::all_up_to(3) {
            let e = word_to_element_m(&decompose_pushpop(&v, &u), &g).expect("push/pop word");
            let depth = u.len() + v.len() + 1;
            t.check(action_equal_m(&e, &bracket(&v, &u), depth), || format!("[{v} <- {u}]"));
        }
    }
    let mut g = MGenSet::pushpop();
    for (v, u) in [("01", "1"), ("", "10"), ("1", "0"), ("11", "")] {
        let (v, u): (BitString, BitString) = (v.parse().expect("bits"), u.parse().expect("bits"));
        g.insert(&format!("br_{v}_{u}"), bracket(&v, &u));
    }
    let mut trues = 0;
    for _ in 0..500 {
        let w = random_word_m(rng, &g, 4);
        let x = random_string(rng, 0, 3);
        let e = word_to_element_m(&w, &g).expect("resolved word").maximal_extension();
        let y = match apply_m(&e, &x) {
            ApplyOutcome::Value(v) if rng.gen_bool(0.5) => v,
            _ => random_string(rng, 0, 4),
        };
        let what = || format!("w={w} x={x} y={y}");
        let direct = eval_m(&w, &x, &y, &g).expect("resolved word");
        trues += usize::from(direct);
        let depth = reduction_depth(&w, &x, &g).expect("resolved word");
        for d in [depth, depth + 1] {
            if let Some(r) = t.ok(eval_reduction_check(&w, &x, &y, d, &g), what) {
                t.check(r == direct, || {
                    format!("{} at depth {d}: direct={direct} bracket={r}", what())
                });
            }
        }
    }
    t.notes.push(format!("{trues} true evaluations"));
}
