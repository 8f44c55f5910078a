//! One-pass stack recognizer for L_V = { x^rev w y : w_n ∘ … ∘ w_1(x) = y }
//! and for its reverse.
//!
//! In the stream the generators appear in the order they act, so the
//! leftmost generator token is w_1. The machine pushes x^rev, rewrites the
//! top of the stack once per generator, and finally pops against y.

use std::collections::HashMap;
use std::fmt;

use crate::codes::BitString;
use crate::error::{Error, Result};
use crate::eval_v::{GenSet, GenWord, StackTable, StepResult, Token};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Symbol {
    Bit(u8),
    Gen { name: String, inverse: bool },
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Bit(b) => write!(f, "{b}"),
            Symbol::Gen { name, inverse: false } => write!(f, "{name}"),
            Symbol::Gen { name, inverse: true } => write!(f, "{name}^-1"),
        }
    }
}

/// The three segments of a well-formed stream.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MixedInput {
    pub x_rev: BitString,
    /// Generators in stream order (application order for the forward language).
    pub w: Vec<(String, bool)>,
    pub y: BitString,
}

/// Splits text into symbols: runs of 0/1 become bits, other tokens generators.
pub fn parse_stream(text: &str) -> Result<Vec<Symbol>> {
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        if tok.chars().all(|c| c == '0' || c == '1') {
            out.extend(tok.bytes().map(|b| Symbol::Bit(b - b'0')));
            continue;
        }
        match tok.parse::<Token>() {
            Ok(Token::Gen { name, inverse }) => out.push(Symbol::Gen { name, inverse }),
            Ok(Token::Tau(_)) => {
                return Err(Error::Format(format!(
                    "transposition `{tok}` is not a stream generator"
                )))
            }
            Err(e) => return Err(Error::Format(e.to_string())),
        }
    }
    Ok(out)
}

pub fn format_stream(symbols: &[Symbol]) -> String {
    symbols.iter().map(Symbol::to_string).collect::<Vec<_>>().join(" ")
}

/// Checks membership in {0,1}* Γ⁺ {0,1}* and splits the segments.
pub fn check_format(symbols: &[Symbol]) -> Result<MixedInput> {
    let first_gen = symbols.iter().position(|s| matches!(s, Symbol::Gen { .. }));
    let Some(start) = first_gen else {
        return Err(Error::Format("the stream contains no generator".into()));
    };
    let mut end = start;
    while end < symbols.len() && matches!(symbols[end], Symbol::Gen { .. }) {
        end += 1;
    }
    if symbols[end..].iter().any(|s| matches!(s, Symbol::Gen { .. })) {
        return Err(Error::Format("generators must form one contiguous block".into()));
    }
    let bits = |ss: &[Symbol]| {
        let v: Vec<u8> = ss
            .iter()
            .map(|s| match s {
                Symbol::Bit(b) => *b,
                Symbol::Gen { .. } => unreachable!(),
            })
            .collect();
        BitString::from_bits(&v)
    };
    let w = symbols[start..end]
        .iter()
        .map(|s| match s {
            Symbol::Gen { name, inverse } => (name.clone(), *inverse),
            Symbol::Bit(_) => unreachable!(),
        })
        .collect();
    Ok(MixedInput {
        x_rev: bits(&symbols[..start]),
        w,
        y: bits(&symbols[end..]),
    })
}

/// The forward stream x^rev · (w in application order) · y.
pub fn encode_forward(x: &BitString, w: &GenWord, y: &BitString) -> Vec<Symbol> {
    let mut out: Vec<Symbol> = x.bits().iter().rev().map(|&b| Symbol::Bit(b)).collect();
    for t in w.application_order() {
        match t {
            Token::Gen { name, inverse } => out.push(Symbol::Gen {
                name: name.clone(),
                inverse: *inverse,
            }),
            Token::Tau(_) => panic!("transpositions cannot appear in a recognizer stream"),
        }
    }
    out.extend(y.bits().iter().map(|&b| Symbol::Bit(b)));
    out
}

/// Counters of one run. Every read, push and pop is one step.
#[derive(Clone, Copy, Default, PartialEq, Eq, Debug, serde::Serialize)]
pub struct Trace {
    pub reads: usize,
    pub pushes: usize,
    pub pops: usize,
    pub max_stack: usize,
}

impl Trace {
    pub fn steps(&self) -> usize {
        self.reads + self.pushes + self.pops
    }
}

/// The finite control: one compiled lookahead table per (generator, inverse) pair.
pub struct Recognizer {
    controls: HashMap<(String, bool), StackTable>,
}

enum Phase {
    Input,
    Word,
    Output,
    Reject,
}

impl Recognizer {
    pub fn new(g: &GenSet) -> Recognizer {
        let mut controls = HashMap::new();
        for name in g.names() {
            for inv in [false, true] {
                let t = g.get(name, inv).expect("listed generator");
                controls.insert((name.to_string(), inv), StackTable::new(t));
            }
        }
        Recognizer { controls }
    }

    /// Accepts iff the stream is x^rev w y with w_n ∘ … ∘ w_1(x) = y.
    pub fn recognize(&self, symbols: &[Symbol]) -> Result<(bool, Trace)> {
        self.run(symbols, false)
    }

    /// Accepts iff the stream is y^rev w^rev x with w₁⁻¹ ∘ … ∘ w_n⁻¹(y) = x.
    pub fn recognize_rev(&self, symbols: &[Symbol]) -> Result<(bool, Trace)> {
        self.run(symbols, true)
    }

    fn run(&self, symbols: &[Symbol], invert: bool) -> Result<(bool, Trace)> {
        check_format(symbols)?;
        for s in symbols {
            if let Symbol::Gen { name, .. } = s {
                if !self.controls.contains_key(&(name.clone(), false)) {
                    return Err(Error::UnknownGenerator(name.clone()));
                }
            }
        }
        let mut stack: Vec<u8> = Vec::new();
        let mut trace = Trace::default();
        let mut phase = Phase::Input;
        for s in symbols {
            trace.reads += 1;
            match (&phase, s) {
                (Phase::Reject, _) => {}
                (Phase::Input, Symbol::Bit(b)) => {
                    stack.push(*b);
                    trace.pushes += 1;
                }
                (Phase::Input | Phase::Word, Symbol::Gen { name, inverse }) => {
                    phase = Phase::Word;
                    let control = &self.controls[&(name.clone(), *inverse != invert)];
                    let len = stack.len();
                    match control.matched(|d| (d < len).then(|| stack[len - 1 - d])) {
                        Ok((idx, depth)) => {
                            stack.truncate(len - depth);
                            trace.pops += depth;
                            let img = control.image_rev(idx);
                            stack.extend_from_slice(img);
                            trace.pushes += img.len();
                        }
                        Err(StepResult::Underflow | StepResult::Mismatch) => phase = Phase::Reject,
                        Err(StepResult::Done) => unreachable!(),
                    }
                }
                (Phase::Word | Phase::Output, Symbol::Bit(b)) => {
                    phase = Phase::Output;
                    trace.pops += 1;
                    if stack.pop() != Some(*b) {
                        phase = Phase::Reject;
                    }
                }
                (Phase::Output, Symbol::Gen { .. }) => unreachable!("format checked"),
            }
            trace.max_stack = trace.max_stack.max(stack.len());
        }
        let accept = !matches!(phase, Phase::Reject) && stack.is_empty();
        Ok((accept, trace))
    }
}

pub fn recognize_lv(symbols: &[Symbol], g: &GenSet) -> Result<bool> {
    Ok(Recognizer::new(g).recognize(symbols)?.0)
}

pub fn recognize_lv_rev(symbols: &[Symbol], g: &GenSet) -> Result<bool> {
    Ok(Recognizer::new(g).recognize_rev(symbols)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::bs;
    use crate::eval_v::table_a;

    fn gset() -> GenSet {
        let mut g = GenSet::new();
        g.insert("g", table_a());
        g
    }

    fn run(s: &str) -> Result<bool> {
        recognize_lv(&parse_stream(s)?, &gset())
    }

    fn run_rev(s: &str) -> Result<bool> {
        recognize_lv_rev(&parse_stream(s)?, &gset())
    }

    #[test]
    fn forward_examples() {
        assert_eq!(run("01 g 01"), Ok(true));
        assert_eq!(run("1 g 0"), Ok(false));
        assert_eq!(run("1 g"), Ok(false));
        assert_eq!(run("0 g 00"), Ok(true));
    }

    #[test]
    fn reverse_examples() {
        // y = 01, x = 10: the stream is y^rev w^rev x.
        assert_eq!(run_rev("10 g 10"), Ok(true));
        assert_eq!(run_rev("10 g 11"), Ok(false));
        assert!(matches!(run_rev("10 11"), Err(Error::Format(_))));
    }

    #[test]
    fn format_errors() {
        assert!(matches!(run("0 g 1 g 0"), Err(Error::Format(_))));
        assert!(matches!(run("0 t1 0"), Err(Error::Format(_))));
        assert!(matches!(run("0 h 0"), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn encode_matches_segments() {
        let w = GenWord::parse("g^-1 g").unwrap();
        let s = encode_forward(&bs("10"), &w, &bs("01"));
        assert_eq!(format_stream(&s), "0 1 g g^-1 0 1");
        let m = check_format(&s).unwrap();
        assert_eq!(m.x_rev, bs("01"));
        assert_eq!(m.w, vec![("g".to_string(), false), ("g".to_string(), true)]);
    }

    #[test]
    fn trace_is_linear() {
        let (ok, trace) = Recognizer::new(&gset())
            .recognize(&parse_stream("0 g g g 0000").unwrap())
            .unwrap();
        assert!(ok);
        assert!(trace.steps() <= 2 * (8 + trace.pushes));
    }
}
