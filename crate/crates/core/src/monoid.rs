//! The Thompson monoid M_{2,1}: right ideal morphisms of {0,1}* given by
//! tables whose domain is a prefix code, with no maximality or injectivity
//! requirement. Equality is agreement of the action at a fixed depth.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::Rng;

use crate::codes::{BitString, PrefixCode};
use crate::error::{Error, Result};
use crate::eval_v::{GenWord, Token};
use crate::v_core::ApplyOutcome;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MTable {
    pairs: Vec<(BitString, BitString)>,
}

impl MTable {
    /// A table whose domain is a prefix code; images are unrestricted.
    pub fn new(pairs: impl IntoIterator<Item = (BitString, BitString)>) -> Result<MTable> {
        let mut pairs: Vec<(BitString, BitString)> = pairs.into_iter().collect();
        pairs.sort();
        pairs.dedup();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::NotAFunction(format!("{} has two images", w[0].0)));
            }
        }
        PrefixCode::new(pairs.iter().map(|(p, _)| p.clone()))?;
        Ok(MTable { pairs })
    }

    /// The empty morphism.
    pub fn zero() -> MTable {
        MTable { pairs: Vec::new() }
    }

    pub fn identity() -> MTable {
        bracket(&BitString::empty(), &BitString::empty())
    }

    pub fn pairs(&self) -> &[(BitString, BitString)] {
        &self.pairs
    }

    pub fn domain_maxlen(&self) -> usize {
        self.pairs.iter().map(|(p, _)| p.len()).max().unwrap_or(0)
    }

    pub fn maxlen(&self) -> usize {
        self.pairs.iter().map(|(p, q)| p.len().max(q.len())).max().unwrap_or(0)
    }

    /// Merges sibling pairs (p0 → q0, p1 → q1) into p → q.
    pub fn maximal_extension(&self) -> MTable {
        let maxlen = self.domain_maxlen();
        let mut by_len: Vec<HashMap<BitString, BitString>> = vec![HashMap::new(); maxlen + 1];
        for (p, q) in &self.pairs {
            by_len[p.len()].insert(p.clone(), q.clone());
        }
        for len in (1..=maxlen).rev() {
            let zeros: Vec<BitString> = by_len[len].keys().filter(|p| p.last() == Some(0)).cloned().collect();
            for p0 in zeros {
                let parent = p0.parent().expect("nonempty");
                let p1 = parent.pushed(1);
                let (Some(q0), Some(q1)) = (by_len[len].get(&p0), by_len[len].get(&p1)) else {
                    continue;
                };
                let (Some(a), Some(b)) = (q0.parent(), q1.parent()) else {
                    continue;
                };
                if q0.last() != Some(0) || q1.last() != Some(1) || a != b {
                    continue;
                }
                by_len[len].remove(&p0);
                by_len[len].remove(&p1);
                by_len[len - 1].insert(parent, a);
            }
        }
        let mut pairs: Vec<(BitString, BitString)> = by_len.into_iter().flatten().collect();
        pairs.sort();
        MTable { pairs }
    }
}

impl fmt::Display for MTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(p, q)| format!("({p},{q})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// [v ← u]: the one-pair table {(u, v)}.
pub fn bracket(v: &BitString, u: &BitString) -> MTable {
    MTable {
        pairs: vec![(u.clone(), v.clone())],
    }
}

pub fn push(bit: u8) -> MTable {
    bracket(&BitString::from_bits(&[bit]), &BitString::empty())
}

pub fn pop(bit: u8) -> MTable {
    bracket(&BitString::empty(), &BitString::from_bits(&[bit]))
}

pub fn apply_m(f: &MTable, x: &BitString) -> ApplyOutcome {
    if let Some((p, q)) = f.pairs.iter().find(|(p, _)| p.is_prefix_of(x)) {
        return ApplyOutcome::Value(q.concat(&x.suffix_from(p.len())));
    }
    if f.pairs.iter().any(|(p, _)| x.is_prefix_of(p)) {
        ApplyOutcome::TooShort
    } else {
        ApplyOutcome::NoPrefix
    }
}

/// f ∘ g: each pair of g is matched against the longest fitting part of f's domain.
pub fn compose_m(f: &MTable, g: &MTable) -> MTable {
    let mut out = Vec::new();
    for (p, q) in &g.pairs {
        if let Some((r, s)) = f.pairs.iter().find(|(r, _)| r.is_prefix_of(q)) {
            out.push((p.clone(), s.concat(&q.suffix_from(r.len()))));
            continue;
        }
        for (r, s) in f.pairs.iter().filter(|(r, _)| q.is_prefix_of(r)) {
            out.push((p.concat(&r.suffix_from(q.len())), s.clone()));
        }
    }
    MTable::new(out).expect("a composite of right ideal morphisms is one")
}

/// Agreement of the two actions on {0,1}^L.
pub fn action_equal_m(f: &MTable, g: &MTable, depth: usize) -> bool {
    BitString::all_of_length(depth).all(|x| apply_m(f, &x).value() == apply_m(g, &x).value())
}

pub const PUSH0: &str = "push0";
pub const PUSH1: &str = "push1";
pub const POP0: &str = "pop0";
pub const POP1: &str = "pop1";

fn push_name(bit: u8) -> &'static str {
    if bit == 0 {
        PUSH0
    } else {
        PUSH1
    }
}

fn pop_name(bit: u8) -> &'static str {
    if bit == 0 {
        POP0
    } else {
        POP1
    }
}

/// [v ← u] = [v ← ε]·[ε ← u] as push v₁ … push v_n pop u_m … pop u₁ (rightmost acts first).
pub fn decompose_pushpop(v: &BitString, u: &BitString) -> GenWord {
    let mut tokens: Vec<Token> = v.bits().iter().map(|&b| Token::gen(push_name(b))).collect();
    tokens.extend(u.bits().iter().rev().map(|&b| Token::gen(pop_name(b))));
    GenWord::new(tokens)
}

/// Named monoid generators.
#[derive(Clone, Debug, Default)]
pub struct MGenSet {
    tables: BTreeMap<String, MTable>,
}

impl MGenSet {
    pub fn new() -> MGenSet {
        MGenSet::default()
    }

    /// {[0 ← ε], [1 ← ε], [ε ← 0], [ε ← 1]}.
    pub fn pushpop() -> MGenSet {
        let mut g = MGenSet::new();
        g.insert(PUSH0, push(0));
        g.insert(PUSH1, push(1));
        g.insert(POP0, pop(0));
        g.insert(POP1, pop(1));
        g
    }

    pub fn insert(&mut self, name: &str, t: MTable) {
        self.tables.insert(name.to_string(), t);
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.tables.keys().map(String::as_str)
    }

    pub fn get(&self, name: &str) -> Result<&MTable> {
        self.tables
            .get(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn token_table(&self, t: &Token) -> Result<&MTable> {
        match t {
            Token::Gen { name, inverse: false } => self.get(name),
            _ => Err(Error::Format(format!("`{t}` is not a monoid generator"))),
        }
    }
}

/// E_w as one table.
pub fn word_to_element_m(w: &GenWord, g: &MGenSet) -> Result<MTable> {
    let mut acc = MTable::identity();
    for t in w.application_order() {
        acc = compose_m(g.token_table(t)?, &acc);
    }
    Ok(acc)
}

/// E_w(x) = y read directly: x lies in the domain of the extended E_w with value y.
pub fn eval_m(w: &GenWord, x: &BitString, y: &BitString, g: &MGenSet) -> Result<bool> {
    let e = word_to_element_m(w, g)?.maximal_extension();
    Ok(apply_m(&e, x).value() == Some(y))
}

/// E_w · id_x = [y ← x], compared on {0,1}^L.
pub fn eval_reduction_check(w: &GenWord, x: &BitString, y: &BitString, depth: usize, g: &MGenSet) -> Result<bool> {
    let e = word_to_element_m(w, g)?;
    let required = e.domain_maxlen().max(x.len());
    if depth < required {
        return Err(Error::DepthTooSmall { depth, required });
    }
    let lhs = compose_m(&e, &bracket(x, x));
    Ok(action_equal_m(&lhs, &bracket(y, x), depth))
}

/// The smallest depth at which `eval_reduction_check` is exact.
pub fn reduction_depth(w: &GenWord, x: &BitString, g: &MGenSet) -> Result<usize> {
    Ok(word_to_element_m(w, g)?.domain_maxlen().max(x.len()))
}

/// A random word over the generators of `g`.
pub fn random_word_m<R: Rng + ?Sized>(rng: &mut R, g: &MGenSet, max_len: usize) -> GenWord {
    let names: Vec<&str> = g.names().collect();
    let len = rng.gen_range(0..=max_len);
    GenWord::new(
        (0..len)
            .map(|_| Token::gen(names[rng.gen_range(0..names.len())]))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::bs;

    #[test]
    fn brackets() {
        let pop1 = bracket(&bs("e"), &bs("1"));
        assert_eq!(apply_m(&pop1, &bs("101")), ApplyOutcome::Value(bs("01")));
        assert_eq!(apply_m(&pop1, &bs("01")), ApplyOutcome::NoPrefix);
        let push0 = bracket(&bs("0"), &bs("e"));
        assert_eq!(apply_m(&push0, &bs("11")), ApplyOutcome::Value(bs("011")));
        let fix0 = bracket(&bs("0"), &bs("0"));
        assert_eq!(apply_m(&fix0, &bs("01")), ApplyOutcome::Value(bs("01")));
        assert_eq!(apply_m(&fix0, &bs("1")), ApplyOutcome::NoPrefix);
    }

    #[test]
    fn compositions() {
        assert!(action_equal_m(
            &compose_m(&push(0), &pop(0)),
            &bracket(&bs("0"), &bs("0")),
            2
        ));
        assert!(action_equal_m(&compose_m(&pop(0), &push(0)), &MTable::identity(), 3));
        assert_eq!(compose_m(&pop(0), &push(0)), MTable::identity());
    }

    #[test]
    fn decompositions() {
        let g = MGenSet::pushpop();
        assert_eq!(decompose_pushpop(&bs("e"), &bs("e")), GenWord::empty());
        assert_eq!(decompose_pushpop(&bs("1"), &bs("e")).to_string(), "push1");
        assert_eq!(decompose_pushpop(&bs("01"), &bs("1")).to_string(), "push0 push1 pop1");
        for u in BitString::all_up_to(3) {
            for v in BitString::all_up_to(3) {
                let e = word_to_element_m(&decompose_pushpop(&v, &u), &g).unwrap();
                assert!(
                    action_equal_m(&e, &bracket(&v, &u), u.len() + v.len() + 1),
                    "{v} <- {u}"
                );
            }
        }
    }

    #[test]
    fn reduction_examples() {
        let g = MGenSet::pushpop();
        let empty = GenWord::empty();
        assert!(eval_reduction_check(&empty, &bs("0"), &bs("0"), 1, &g).unwrap());
        let w = GenWord::parse("push1").unwrap();
        assert!(eval_reduction_check(&w, &bs("0"), &bs("10"), 2, &g).unwrap());
        assert!(eval_m(&w, &bs("0"), &bs("10"), &g).unwrap());
        let w = GenWord::parse("pop0").unwrap();
        for y in ["e", "0", "1"] {
            assert!(!eval_reduction_check(&w, &bs("1"), &bs(y), 1, &g).unwrap());
            assert!(!eval_m(&w, &bs("1"), &bs(y), &g).unwrap());
        }
        assert!(matches!(
            eval_reduction_check(&w, &bs("11"), &bs("1"), 1, &g),
            Err(Error::DepthTooSmall { .. })
        ));
    }

    #[test]
    fn non_injective_extension() {
        // pop0 ∪ pop1 merges to nothing, since both images are ε.
        let t = MTable::new([(bs("0"), bs("e")), (bs("1"), bs("e"))]).unwrap();
        assert_eq!(t.maximal_extension(), t);
        let t = MTable::new([(bs("0"), bs("10")), (bs("1"), bs("11"))]).unwrap();
        assert_eq!(t.maximal_extension(), bracket(&bs("1"), &bs("e")));
    }
}
