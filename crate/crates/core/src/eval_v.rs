//! Words over a finite generating set plus the bit transpositions τ_{i,i+1},
//! and the evaluation and word-problem deciders for V.
//!
//! A word `w_n … w_1` is written left to right and applied right to left:
//! `w_1` acts first.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::codes::{bs, BitString};
use crate::error::{Error, Result};
use crate::v_core::{ApplyOutcome, VTable};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Token {
    Gen {
        name: String,
        inverse: bool,
    },
    /// τ_{i,i+1}, swapping positions i and i+1 (1-based).
    Tau(usize),
}

impl Token {
    pub fn gen(name: &str) -> Token {
        Token::Gen {
            name: name.to_string(),
            inverse: false,
        }
    }

    pub fn gen_inv(name: &str) -> Token {
        Token::Gen {
            name: name.to_string(),
            inverse: true,
        }
    }

    pub fn inverse(&self) -> Token {
        match self {
            Token::Gen { name, inverse } => Token::Gen {
                name: name.clone(),
                inverse: !inverse,
            },
            Token::Tau(i) => Token::Tau(*i),
        }
    }

    /// 1 for a generator, i+1 for τ_{i,i+1}.
    pub fn size(&self) -> usize {
        match self {
            Token::Gen { .. } => 1,
            Token::Tau(i) => i + 1,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Gen { name, inverse: false } => write!(f, "{name}"),
            Token::Gen { name, inverse: true } => write!(f, "{name}^-1"),
            Token::Tau(i) => write!(f, "t{i}"),
        }
    }
}

impl FromStr for Token {
    type Err = Error;

    fn from_str(s: &str) -> Result<Token> {
        if let Some(rest) = s.strip_prefix('t') {
            let digits = rest.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(rest);
            if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
                let i: usize = digits
                    .parse()
                    .map_err(|_| Error::Format(format!("bad transposition index in `{s}`")))?;
                if i == 0 {
                    return Err(Error::Format("transposition index must be at least 1".into()));
                }
                return Ok(Token::Tau(i));
            }
        }
        if s.len() >= 2 && s.starts_with('a') && s.ends_with('a') && s[1..s.len() - 1].chars().all(|c| c == 'b') {
            return decode_tau(s);
        }
        let (name, inverse) = match s.strip_suffix("^-1") {
            Some(n) => (n, true),
            None => (s, false),
        };
        if name.is_empty()
            || !name
                .chars()
                .all(|c| c.is_alphanumeric() || c == '_' || c == '*' || c == '-')
        {
            return Err(Error::Format(format!("bad generator token `{s}`")));
        }
        Ok(Token::Gen {
            name: name.to_string(),
            inverse,
        })
    }
}

/// τ_{i,i+1} ↦ a b^{i+1} a.
pub fn encode_tau(i: usize) -> String {
    format!("a{}a", "b".repeat(i + 1))
}

pub fn decode_tau(s: &str) -> Result<Token> {
    let inner = s
        .strip_prefix('a')
        .and_then(|r| r.strip_suffix('a'))
        .ok_or_else(|| Error::MalformedEncoding(s.to_string()))?;
    if inner.len() < 2 || !inner.chars().all(|c| c == 'b') {
        return Err(Error::MalformedEncoding(s.to_string()));
    }
    Ok(Token::Tau(inner.len() - 1))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GenWord {
    tokens: Vec<Token>,
}

impl GenWord {
    pub fn new(tokens: Vec<Token>) -> GenWord {
        GenWord { tokens }
    }

    pub fn empty() -> GenWord {
        GenWord::default()
    }

    /// Builds a word from tokens listed in application order (first applied first).
    pub fn from_application_order(mut tokens: Vec<Token>) -> GenWord {
        tokens.reverse();
        GenWord { tokens }
    }

    /// Tokens as written: the first token is applied last.
    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    /// Tokens in the order they act.
    pub fn application_order(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn size(&self) -> usize {
        self.tokens.iter().map(Token::size).sum()
    }

    /// Largest i+1 over the τ tokens, 0 when there are none.
    pub fn maxindex_tau(&self) -> usize {
        self.tokens
            .iter()
            .filter_map(|t| match t {
                Token::Tau(i) => Some(i + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn inverse(&self) -> GenWord {
        GenWord {
            tokens: self.tokens.iter().rev().map(Token::inverse).collect(),
        }
    }

    /// `self · other`: `other` acts first.
    pub fn then_after(&self, other: &GenWord) -> GenWord {
        let mut tokens = self.tokens.clone();
        tokens.extend(other.tokens.iter().cloned());
        GenWord { tokens }
    }

    pub fn push_left(&mut self, t: Token) {
        self.tokens.insert(0, t);
    }

    /// Appends a token on the right, so it acts before everything already present.
    pub fn push_right(&mut self, t: Token) {
        self.tokens.push(t);
    }

    pub fn parse(s: &str) -> Result<GenWord> {
        let tokens = s
            .split_whitespace()
            .filter(|t| *t != "1")
            .map(Token::from_str)
            .collect::<Result<Vec<_>>>()?;
        Ok(GenWord { tokens })
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return f.write_str("1");
        }
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for GenWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<GenWord> {
        GenWord::parse(s)
    }
}

/// The transposition τ_{i,i+1} as a table on {0,1}^{i+1}.
pub fn tau_table(i: usize) -> VTable {
    assert!(i >= 1, "transposition index starts at 1");
    let pairs = BitString::all_of_length(i + 1).map(|x| {
        let mut bits = x.bits().to_vec();
        bits.swap(i - 1, i);
        (x, BitString::from_bits(&bits))
    });
    VTable::new(pairs).expect("transposition table")
}

fn std_table(pairs: &[(&str, &str)]) -> VTable {
    VTable::new(pairs.iter().map(|(p, q)| (bs(p), bs(q)))).expect("standard table")
}

/// x₀ = {(0,00),(10,01),(11,1)}.
pub fn table_a() -> VTable {
    std_table(&[("0", "00"), ("10", "01"), ("11", "1")])
}

/// x₁ = {(0,0),(10,100),(110,101),(111,11)}: x₀ acting inside the 1-cylinder.
pub fn table_b() -> VTable {
    std_table(&[("0", "0"), ("10", "100"), ("110", "101"), ("111", "11")])
}

/// The order-3 rotation {(0,11),(10,0),(11,10)}.
pub fn table_c() -> VTable {
    std_table(&[("0", "11"), ("10", "0"), ("11", "10")])
}

/// Swaps the 0- and 10-cylinders.
pub fn table_pi0() -> VTable {
    std_table(&[("0", "10"), ("10", "0"), ("11", "11")])
}

/// Swaps the 10- and 110-cylinders.
pub fn table_pi1() -> VTable {
    std_table(&[("0", "0"), ("10", "110"), ("110", "10"), ("111", "111")])
}

#[derive(Clone, Debug)]
struct Generator {
    table: VTable,
    inverse: VTable,
}

/// A finite set of named generators. Inverses are synthesized, so every set
/// is usable as if closed under inverse.
#[derive(Clone, Debug, Default)]
pub struct GenSet {
    gens: BTreeMap<String, Generator>,
}

impl GenSet {
    pub fn new() -> GenSet {
        GenSet::default()
    }

    /// The two generators of F: `A` = x₀ and `B` = x₁.
    pub fn standard() -> GenSet {
        let mut g = GenSet::new();
        g.insert("A", table_a());
        g.insert("B", table_b());
        g
    }

    /// `A`, `B`, `C`, `P0`, `P1`: a generating set of V.
    pub fn thompson_v() -> GenSet {
        let mut g = GenSet::standard();
        g.insert("C", table_c());
        g.insert("P0", table_pi0());
        g.insert("P1", table_pi1());
        g
    }

    pub fn insert(&mut self, name: &str, table: VTable) {
        let table = table.maximal_extension();
        let inverse = table.inverse();
        self.gens.insert(name.to_string(), Generator { table, inverse });
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.gens.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &VTable)> {
        self.gens.iter().map(|(n, g)| (n.as_str(), &g.table))
    }

    pub fn get(&self, name: &str, inverse: bool) -> Result<&VTable> {
        let g = self
            .gens
            .get(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(if inverse { &g.inverse } else { &g.table })
    }

    /// c_Γ: the longest string over all member tables.
    pub fn c_gamma(&self) -> usize {
        self.gens.values().map(|g| g.table.maxlen()).max().unwrap_or(0)
    }

    /// Whether every inverse is itself a named member.
    pub fn closed_under_inverse(&self) -> bool {
        self.gens
            .values()
            .all(|g| self.gens.values().any(|h| h.table.equals(&g.inverse)))
    }

    /// The table of one token.
    pub fn token_table(&self, t: &Token) -> Result<VTable> {
        match t {
            Token::Gen { name, inverse } => self.get(name, *inverse).cloned(),
            Token::Tau(i) => Ok(tau_table(*i)),
        }
    }

    pub fn check_word(&self, w: &GenWord) -> Result<()> {
        for t in w.tokens() {
            if let Token::Gen { name, .. } = t {
                self.get(name, false)?;
            }
        }
        Ok(())
    }
}

/// A table compiled into a binary trie over its domain code, for use on a
/// bit stack whose top is the first symbol of the string.
#[derive(Clone, Debug)]
pub(crate) struct StackTable {
    children: Vec<[u32; 2]>,
    leaf: Vec<u32>,
    /// Images stored reversed, ready to push.
    images_rev: Vec<Vec<u8>>,
}

const NONE: u32 = u32::MAX;

pub(crate) enum StepResult {
    Done,
    /// The stack ran out before a domain member was matched.
    Underflow,
    /// No domain member matches.
    Mismatch,
}

impl StackTable {
    pub(crate) fn new(t: &VTable) -> StackTable {
        let mut st = StackTable {
            children: vec![[NONE; 2]],
            leaf: vec![NONE],
            images_rev: Vec::with_capacity(t.size()),
        };
        for (p, q) in t.pairs() {
            let mut node = 0usize;
            for &b in p.bits() {
                let next = st.children[node][b as usize];
                node = if next == NONE {
                    st.children.push([NONE; 2]);
                    st.leaf.push(NONE);
                    let id = st.children.len() - 1;
                    st.children[node][b as usize] = id as u32;
                    id
                } else {
                    next as usize
                };
            }
            st.leaf[node] = st.images_rev.len() as u32;
            st.images_rev.push(q.bits().iter().rev().copied().collect());
        }
        st
    }

    /// Walks the trie from the root; returns the matched image index and the
    /// domain length, reading symbols through `peek(depth)`.
    pub(crate) fn matched(
        &self,
        mut peek: impl FnMut(usize) -> Option<u8>,
    ) -> std::result::Result<(usize, usize), StepResult> {
        let mut node = 0usize;
        let mut depth = 0usize;
        loop {
            let l = self.leaf[node];
            if l != NONE {
                return Ok((l as usize, depth));
            }
            let Some(b) = peek(depth) else {
                return Err(StepResult::Underflow);
            };
            let next = self.children[node][b as usize];
            if next == NONE {
                return Err(StepResult::Mismatch);
            }
            node = next as usize;
            depth += 1;
        }
    }

    pub(crate) fn image_rev(&self, idx: usize) -> &[u8] {
        &self.images_rev[idx]
    }

    pub(crate) fn step(&self, stack: &mut Vec<u8>) -> StepResult {
        let len = stack.len();
        match self.matched(|d| (d < len).then(|| stack[len - 1 - d])) {
            Ok((idx, depth)) => {
                stack.truncate(len - depth);
                stack.extend_from_slice(&self.images_rev[idx]);
                StepResult::Done
            }
            Err(e) => e,
        }
    }
}

#[derive(Clone, Debug)]
enum Op {
    Table(StackTable),
    Tau(usize),
}

/// A word resolved against a generating set, in application order.
#[derive(Clone, Debug)]
pub struct CompiledWord {
    ops: Vec<Op>,
}

impl CompiledWord {
    pub fn new(w: &GenWord, g: &GenSet) -> Result<CompiledWord> {
        let mut cache: BTreeMap<(String, bool), StackTable> = BTreeMap::new();
        let mut ops = Vec::with_capacity(w.len());
        for t in w.application_order() {
            ops.push(match t {
                Token::Tau(i) => Op::Tau(*i),
                Token::Gen { name, inverse } => {
                    let key = (name.clone(), *inverse);
                    if !cache.contains_key(&key) {
                        cache.insert(key.clone(), StackTable::new(g.get(name, *inverse)?));
                    }
                    Op::Table(cache[&key].clone())
                }
            });
        }
        Ok(CompiledWord { ops })
    }

    /// Runs on a reversed bit stack in place; false when some step is undefined.
    pub(crate) fn run(&self, stack: &mut Vec<u8>) -> bool {
        for op in &self.ops {
            match op {
                Op::Table(t) => {
                    if !matches!(t.step(stack), StepResult::Done) {
                        return false;
                    }
                }
                Op::Tau(i) => {
                    let len = stack.len();
                    if len < i + 1 {
                        return false;
                    }
                    stack.swap(len - i, len - 1 - i);
                }
            }
        }
        true
    }

    pub fn apply(&self, x: &BitString) -> ApplyOutcome {
        let mut stack: Vec<u8> = x.bits().iter().rev().copied().collect();
        if self.run(&mut stack) {
            stack.reverse();
            ApplyOutcome::Value(BitString::from_vec_unchecked(stack))
        } else {
            ApplyOutcome::TooShort
        }
    }
}

/// E_w as a maximally extended table: the composite of the token tables.
pub fn word_to_element(w: &GenWord, g: &GenSet) -> Result<VTable> {
    let mut acc = VTable::identity();
    for t in w.application_order() {
        acc = VTable::compose(&g.token_table(t)?, &acc);
    }
    Ok(acc)
}

/// w_n ∘ … ∘ w_1 applied one table at a time; any undefined step yields `TooShort`.
pub fn sequential_apply(w: &GenWord, x: &BitString, g: &GenSet) -> Result<ApplyOutcome> {
    Ok(CompiledWord::new(w, g)?.apply(x))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize)]
pub enum InputClass {
    Long,
    Short,
    TooShort,
}

pub fn classify_input(w: &GenWord, x: &BitString, g: &GenSet) -> Result<InputClass> {
    if sequential_apply(w, x, g)?.is_value() {
        return Ok(InputClass::Long);
    }
    Ok(if word_to_element(w, g)?.apply(x).is_value() {
        InputClass::Short
    } else {
        InputClass::TooShort
    })
}

/// c_{Γ,w}: the larger of c_Γ and the largest τ index plus one.
pub fn c_gamma_w(w: &GenWord, g: &GenSet) -> usize {
    g.c_gamma().max(w.maxindex_tau())
}

/// c_{Γ,w}·|w|. Each step shortens a string by at most c_{Γ,w}−1 and needs at
/// most c_{Γ,w} symbols, so inputs this long are long inputs.
pub fn long_input_threshold(w: &GenWord, g: &GenSet) -> usize {
    c_gamma_w(w, g) * w.len()
}

/// E_w(x) = y, decided on the composed table by the bounded-depth oracle.
pub fn evaluate(w: &GenWord, x: &BitString, y: &BitString, g: &GenSet) -> Result<bool> {
    Ok(word_to_element(w, g)?.eval_oracle(x, y))
}

/// Longest padding the universal check will enumerate.
pub const UNIVERSAL_PAD_CAP: usize = 30;

/// E_w(x) = y via ∀z with |xz| = c_{Γ,w}|w|: w_n ∘ … ∘ w_1(xz) = yz.
///
/// The bits of z are only branched on when a run runs out of input: a run
/// that succeeds on x·z′ succeeds on every x·z′z″ with the same shift, so
/// the answer equals that of enumerating every z.
pub fn evaluate_universal(w: &GenWord, x: &BitString, y: &BitString, g: &GenSet) -> Result<bool> {
    let cw = CompiledWord::new(w, g)?;
    let threshold = long_input_threshold(w, g);
    let pad = threshold.saturating_sub(x.len());
    let mut pending = vec![x.clone()];
    let mut stack = Vec::new();
    while let Some(xz) = pending.pop() {
        stack.clear();
        stack.extend(xz.bits().iter().rev());
        if cw.run(&mut stack) {
            stack.reverse();
            let read = &xz.bits()[x.len()..];
            if stack.len() != y.len() + read.len() || stack[..y.len()] != *y.bits() || stack[y.len()..] != *read {
                return Ok(false);
            }
        } else if xz.len() - x.len() == pad {
            return Ok(false);
        } else {
            pending.push(xz.pushed(1));
            pending.push(xz.pushed(0));
        }
    }
    Ok(true)
}

/// The universal check by enumerating every padding z.
pub fn evaluate_universal_exhaustive(w: &GenWord, x: &BitString, y: &BitString, g: &GenSet) -> Result<bool> {
    let cw = CompiledWord::new(w, g)?;
    let threshold = long_input_threshold(w, g);
    if x.len() > threshold {
        return Ok(cw.apply(x).value() == Some(y));
    }
    let pad = threshold - x.len();
    if pad > UNIVERSAL_PAD_CAP {
        return Err(Error::DepthCap(pad, UNIVERSAL_PAD_CAP));
    }
    let mut stack = Vec::with_capacity(threshold + 4 * w.len() * c_gamma_w(w, g) + y.len());
    for z in 0..1u64 << pad {
        stack.clear();
        // Stack top is the first symbol: push z reversed, then x reversed.
        stack.extend((0..pad).map(|i| ((z >> i) & 1) as u8));
        stack.extend(x.bits().iter().rev());
        if !cw.run(&mut stack) || stack.len() != y.len() + pad {
            return Ok(false);
        }
        let n = stack.len();
        let head_ok = (0..y.len()).all(|k| stack[n - 1 - k] == y.get(k));
        let tail_ok = (0..pad).all(|i| stack[i] == ((z >> i) & 1) as u8);
        if !head_ok || !tail_ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sequential application when it is defined, the table route otherwise.
pub fn decide(w: &GenWord, x: &BitString, y: &BitString, g: &GenSet) -> Result<bool> {
    match sequential_apply(w, x, g)? {
        ApplyOutcome::Value(v) => Ok(&v == y),
        _ => evaluate(w, x, y, g),
    }
}

pub fn word_problem(w: &GenWord, g: &GenSet) -> Result<bool> {
    Ok(word_to_element(w, g)?.is_identity())
}

/// w = 1 iff E_w(x) = x for every x ∈ {0,1}^N. Returns the first moved x otherwise.
pub fn word_problem_via_eval(w: &GenWord, n: usize, g: &GenSet) -> Result<(bool, Option<BitString>)> {
    let e = word_to_element(w, g)?;
    for x in BitString::all_of_length(n) {
        if !e.eval_oracle(&x, &x) {
            return Ok((false, Some(x)));
        }
    }
    Ok((true, None))
}

/// A random word of length at most `max_len` over `g` and its inverses, with
/// transpositions t1..t{max_tau} mixed in when `max_tau > 0`.
pub fn random_word<R: rand::Rng + ?Sized>(rng: &mut R, g: &GenSet, max_len: usize, max_tau: usize) -> GenWord {
    let names: Vec<&str> = g.names().collect();
    let len = rng.gen_range(0..=max_len);
    let tokens = (0..len)
        .map(|_| {
            if max_tau > 0 && rng.gen_bool(0.2) {
                Token::Tau(rng.gen_range(1..=max_tau))
            } else {
                Token::Gen {
                    name: names[rng.gen_range(0..names.len())].to_string(),
                    inverse: rng.gen_bool(0.5),
                }
            }
        })
        .collect();
    GenWord::new(tokens)
}

/// Every word of length at most `max_len` over `g` and its inverses.
pub fn all_words(g: &GenSet, max_len: usize) -> Vec<GenWord> {
    let letters: Vec<Token> = g.names().flat_map(|n| [Token::gen(n), Token::gen_inv(n)]).collect();
    let mut level = vec![Vec::new()];
    let mut out = vec![GenWord::empty()];
    for _ in 0..max_len {
        level = level
            .iter()
            .flat_map(|w: &Vec<Token>| {
                letters.iter().map(move |t| {
                    let mut w = w.clone();
                    w.push(t.clone());
                    w
                })
            })
            .collect();
        out.extend(level.iter().cloned().map(GenWord::new));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gset() -> GenSet {
        let mut g = GenSet::new();
        g.insert("g", table_a());
        g
    }

    fn w(s: &str) -> GenWord {
        GenWord::parse(s).unwrap()
    }

    #[test]
    fn tau_tables() {
        assert_eq!(
            tau_table(1),
            VTable::new(vec![
                (bs("00"), bs("00")),
                (bs("01"), bs("10")),
                (bs("10"), bs("01")),
                (bs("11"), bs("11"))
            ])
            .unwrap()
        );
        assert_eq!(tau_table(2).apply(&bs("1")), ApplyOutcome::TooShort);
        assert_eq!(tau_table(2).apply(&bs("0101")), ApplyOutcome::Value(bs("0011")));
    }

    #[test]
    fn tau_encoding() {
        assert_eq!(encode_tau(2), "abbba");
        assert_eq!(decode_tau("abba"), Ok(Token::Tau(1)));
        assert_eq!(decode_tau("aba"), Err(Error::MalformedEncoding("aba".into())));
        for i in 1..=64 {
            assert_eq!(decode_tau(&encode_tau(i)), Ok(Token::Tau(i)));
        }
        assert_eq!(
            w("abbba t{4} t5 g^-1").tokens(),
            &[Token::Tau(2), Token::Tau(4), Token::Tau(5), Token::gen_inv("g")]
        );
    }

    #[test]
    fn word_sizes() {
        let word = w("g t4 g^-1 t1");
        assert_eq!(word.len(), 4);
        assert_eq!(word.size(), 1 + 5 + 1 + 2);
        assert_eq!(word.maxindex_tau(), 5);
        assert_eq!(GenWord::empty().maxindex_tau(), 0);
    }

    #[test]
    fn word_to_element_examples() {
        let g = gset();
        assert!(word_to_element(&w("g g^-1"), &g).unwrap().is_identity());
        assert_eq!(word_to_element(&GenWord::empty(), &g).unwrap(), VTable::identity());
        assert!(word_to_element(&w("t1 t1"), &g).unwrap().is_identity());
        assert_eq!(word_to_element(&w("h"), &g), Err(Error::UnknownGenerator("h".into())));
    }

    #[test]
    fn sequential_examples() {
        let g = gset();
        assert_eq!(
            sequential_apply(&w("g"), &bs("10"), &g).unwrap(),
            ApplyOutcome::Value(bs("01"))
        );
        assert_eq!(
            sequential_apply(&w("g^-1 g"), &bs("e"), &g).unwrap(),
            ApplyOutcome::TooShort
        );
        assert_eq!(
            sequential_apply(&w("t1"), &bs("0"), &g).unwrap(),
            ApplyOutcome::TooShort
        );
        assert_eq!(
            sequential_apply(&w("t2"), &bs("0101"), &g).unwrap(),
            ApplyOutcome::Value(bs("0011"))
        );
    }

    #[test]
    fn classification() {
        let g = gset();
        assert_eq!(classify_input(&w("g^-1 g"), &bs("e"), &g).unwrap(), InputClass::Short);
        assert_eq!(classify_input(&w("g"), &bs("10"), &g).unwrap(), InputClass::Long);
        assert_eq!(classify_input(&w("g"), &bs("e"), &g).unwrap(), InputClass::TooShort);
    }

    #[test]
    fn thresholds() {
        let mut g = GenSet::new();
        g.insert("h", VTable::bit_swap());
        g.insert("k", table_pi0());
        assert_eq!(g.c_gamma(), 2);
        assert_eq!(long_input_threshold(&w("h h k"), &g), 6);
        assert_eq!(long_input_threshold(&w("t4 h"), &g), 10);
        assert_eq!(long_input_threshold(&GenWord::empty(), &g), 0);
    }

    #[test]
    fn deciders() {
        let g = gset();
        for (word, x, y, expect) in [
            ("g^-1 g", "e", "e", true),
            ("g", "10", "01", true),
            ("g", "e", "e", false),
            ("g", "10", "10", false),
        ] {
            let (word, x, y) = (w(word), bs(x), bs(y));
            assert_eq!(evaluate(&word, &x, &y, &g).unwrap(), expect);
            assert_eq!(evaluate_universal(&word, &x, &y, &g).unwrap(), expect);
            assert_eq!(evaluate_universal_exhaustive(&word, &x, &y, &g).unwrap(), expect);
            assert_eq!(decide(&word, &x, &y, &g).unwrap(), expect);
        }
    }

    #[test]
    fn word_problems() {
        let g = gset();
        assert!(word_problem(&w("g g^-1"), &g).unwrap());
        assert!(!word_problem(&w("t1"), &g).unwrap());
        assert_eq!(word_problem_via_eval(&w("g g^-1"), 3, &g).unwrap(), (true, None));
        assert_eq!(word_problem_via_eval(&w("t1"), 2, &g).unwrap(), (false, Some(bs("01"))));
        for word in ["g", "g g^-1", "t1 g"] {
            let word = w(word);
            assert_eq!(
                word_problem_via_eval(&word, 0, &g).unwrap().0,
                evaluate(&word, &bs("e"), &bs("e"), &g).unwrap()
            );
        }
    }

    #[test]
    fn standard_sets() {
        assert_eq!(GenSet::standard().c_gamma(), 3);
        assert_eq!(GenSet::thompson_v().len(), 5);
        assert!(!GenSet::standard().closed_under_inverse());
        let mut g = GenSet::new();
        g.insert("s", VTable::bit_swap());
        assert!(g.closed_under_inverse());
    }
}
