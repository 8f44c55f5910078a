//! Strictly layered boolean circuits and their compilation into words over V.
//!
//! Each gate has a simulation gadget Φ_f with Φ_f(0x) = 0 f(x) x. A layer
//! word realizes 0·Y^{ℓ−1} ↦ 0·Y^ℓ·Y^{ℓ−1} by routing each gate's inputs next
//! to the leading 0 with adjacent transpositions, applying the gadget, and
//! routing everything back.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::codes::{complement, refine_to_size, BitString, PrefixCode};
use crate::error::{Error, Result};
use crate::eval_v::{decide, GenSet, GenWord, Token};
use crate::v_core::VTable;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize)]
pub enum Gate {
    And,
    Or,
    Not,
    Fork,
    Swap,
    Id,
}

pub const ALL_GATES: [Gate; 6] = [Gate::And, Gate::Or, Gate::Not, Gate::Fork, Gate::Swap, Gate::Id];

impl Gate {
    pub fn arity_in(self) -> usize {
        match self {
            Gate::And | Gate::Or | Gate::Swap => 2,
            Gate::Not | Gate::Fork | Gate::Id => 1,
        }
    }

    pub fn arity_out(self) -> usize {
        match self {
            Gate::And | Gate::Or | Gate::Not | Gate::Id => 1,
            Gate::Fork | Gate::Swap => 2,
        }
    }

    pub fn eval(self, x: &[u8]) -> Vec<u8> {
        match self {
            Gate::And => vec![x[0] & x[1]],
            Gate::Or => vec![x[0] | x[1]],
            Gate::Not => vec![1 - x[0]],
            Gate::Fork => vec![x[0], x[0]],
            Gate::Swap => vec![x[1], x[0]],
            Gate::Id => vec![x[0]],
        }
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            Gate::And => "AND",
            Gate::Or => "OR",
            Gate::Not => "NOT",
            Gate::Fork => "FORK",
            Gate::Swap => "SWAP",
            Gate::Id => "ID",
        }
    }

    /// Name of the gadget generator.
    pub fn gadget_name(self) -> String {
        format!("phi_{}", self.mnemonic())
    }
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Gate> {
        ALL_GATES
            .into_iter()
            .find(|g| g.mnemonic() == s)
            .ok_or_else(|| Error::Format(format!("unknown gate `{s}`")))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct Circuit {
    pub inputs: usize,
    pub layers: Vec<Vec<Gate>>,
    pub outputs: usize,
}

impl Circuit {
    /// Builds a circuit and checks that the layer widths chain.
    pub fn new(inputs: usize, layers: Vec<Vec<Gate>>) -> Result<Circuit> {
        let mut c = Circuit {
            inputs,
            layers,
            outputs: 0,
        };
        c.outputs = *c.widths()?.last().expect("width list");
        Ok(c)
    }

    /// |Y^0| = m, |Y^1|, …, |Y^L| = n.
    pub fn widths(&self) -> Result<Vec<usize>> {
        if self.inputs == 0 || self.layers.is_empty() {
            return Err(Error::Format("a circuit needs at least one input and one layer".into()));
        }
        let mut widths = vec![self.inputs];
        for layer in &self.layers {
            let consumed: usize = layer.iter().map(|g| g.arity_in()).sum();
            let prev = *widths.last().expect("width list");
            if consumed != prev {
                return Err(Error::WidthMismatch {
                    expected: prev,
                    got: consumed,
                });
            }
            widths.push(layer.iter().map(|g| g.arity_out()).sum());
        }
        Ok(widths)
    }

    pub fn validate(&self) -> Result<()> {
        let widths = self.widths()?;
        let n = *widths.last().expect("width list");
        if n != self.outputs {
            return Err(Error::WidthMismatch {
                expected: self.outputs,
                got: n,
            });
        }
        Ok(())
    }

    /// |C|: the total gate count.
    pub fn size(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "inputs {}", self.inputs)?;
        for layer in &self.layers {
            let names: Vec<&str> = layer.iter().map(|g| g.mnemonic()).collect();
            writeln!(f, "layer {}", names.join(" "))?;
        }
        writeln!(f, "outputs {}", self.outputs)
    }
}

impl FromStr for Circuit {
    type Err = Error;

    /// `inputs m`, then one `layer G1 G2 …` line per layer, then `outputs n`.
    fn from_str(text: &str) -> Result<Circuit> {
        let mut inputs = None;
        let mut outputs = None;
        let mut layers = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let mut parts = line.split_whitespace();
            let key = parts.next().expect("nonempty line");
            let number = |p: Option<&str>| -> Result<usize> {
                p.and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(format!("expected a width after `{key}`")))
            };
            match key {
                "inputs" if inputs.is_none() && layers.is_empty() => inputs = Some(number(parts.next())?),
                "layer" if inputs.is_some() && outputs.is_none() => {
                    let gates = parts.map(str::parse).collect::<Result<Vec<Gate>>>();
                    layers.push(gates.map_err(|e| err(e.to_string()))?);
                }
                "outputs" if inputs.is_some() && outputs.is_none() => outputs = Some(number(parts.next())?),
                _ => return Err(err(format!("unexpected `{line}`"))),
            }
        }
        let inputs = inputs.ok_or_else(|| Error::Format("missing `inputs` line".into()))?;
        let outputs = outputs.ok_or_else(|| Error::Format("missing `outputs` line".into()))?;
        let c = Circuit {
            inputs,
            layers,
            outputs,
        };
        c.validate()?;
        Ok(c)
    }
}

/// Truth-table evaluation, layer by layer.
pub fn circuit_eval(c: &Circuit, x: &BitString) -> Result<BitString> {
    if x.len() != c.inputs {
        return Err(Error::WidthMismatch {
            expected: c.inputs,
            got: x.len(),
        });
    }
    let mut wires = x.bits().to_vec();
    for layer in &c.layers {
        let mut next = Vec::new();
        let mut at = 0;
        for g in layer {
            next.extend(g.eval(&wires[at..at + g.arity_in()]));
            at += g.arity_in();
        }
        wires = next;
    }
    Ok(BitString::from_bits(&wires))
}

/// Φ_f with Φ_f(0x) = 0 f(x) x; the rest of the domain (a refinement of the
/// 1-cylinder) is paired with the image-side complement in dictionary order.
pub fn simulation_gadget(m: usize, f: impl Fn(&[u8]) -> Vec<u8>) -> VTable {
    let mut pairs: Vec<(BitString, BitString)> = BitString::all_of_length(m)
        .map(|x| {
            let fx = f(x.bits());
            let img = BitString::from_bits(&[0]).concat(&BitString::from_bits(&fx)).concat(&x);
            (BitString::from_bits(&[0]).concat(&x), img)
        })
        .collect();
    let image = PrefixCode::new(pairs.iter().map(|p| p.1.clone())).expect("images differ in their x suffix");
    let q = complement(&image);
    let one = PrefixCode::new([BitString::from_bits(&[1])]).expect("code");
    let dom_rest = refine_to_size(&one, q.len());
    pairs.extend(dom_rest.members().iter().cloned().zip(q.members().iter().cloned()));
    VTable::new(pairs).expect("gadget is an element of V")
}

pub fn gate_gadget(g: Gate) -> VTable {
    simulation_gadget(g.arity_in(), |x| g.eval(x))
}

/// The six gate gadgets, named `phi_AND`, `phi_OR`, ….
pub fn gadget_genset() -> GenSet {
    let mut set = GenSet::new();
    for g in ALL_GATES {
        set.insert(&g.gadget_name(), gate_gadget(g));
    }
    set
}

/// Tokens in application order.
#[derive(Default)]
struct Emitter {
    ops: Vec<Token>,
}

impl Emitter {
    /// Left rotation of positions p..=q (1-based): the symbol at p moves to q.
    fn rotate_left(&mut self, p: usize, q: usize) {
        self.ops.extend((p..q).map(Token::Tau));
    }

    /// Moves the block at positions start..start+len left by dist.
    fn block_left(&mut self, start: usize, len: usize, dist: usize) {
        for e in 0..len {
            let p = start + e;
            self.ops.extend((p - dist..p).rev().map(Token::Tau));
        }
    }

    /// Moves the block at positions start..start+len right by dist.
    fn block_right(&mut self, start: usize, len: usize, dist: usize) {
        for e in (0..len).rev() {
            let p = start + e;
            self.ops.extend((p..p + dist).map(Token::Tau));
        }
    }

    fn word(self) -> GenWord {
        GenWord::from_application_order(self.ops)
    }
}

/// σ: b₁ b₂ … b_j ↦ b₂ … b_j b₁ on the first j symbols, as Tau(j−1) … Tau(1).
pub fn sigma_shift(j: usize) -> GenWord {
    sigma_shift_at(1, j)
}

/// Left rotation of positions p..=q.
pub fn sigma_shift_at(p: usize, q: usize) -> GenWord {
    assert!(1 <= p && p < q, "a shift needs at least two positions");
    let mut e = Emitter::default();
    e.rotate_left(p, q);
    e.word()
}

/// Word realizing 0·Y^{ℓ−1} ↦ 0·Y^ℓ·Y^{ℓ−1} on long inputs.
pub fn compile_layer(layer: &[Gate]) -> GenWord {
    let mut e = Emitter::default();
    let mut produced = 0;
    let mut consumed = 0;
    for &g in layer {
        let (a, b) = (g.arity_in(), g.arity_out());
        // 0 O X: bring the gate's inputs next to the leading 0.
        e.block_left(2 + produced + consumed, a, produced + consumed);
        e.ops.push(Token::gen(&g.gadget_name()));
        // 0 F B O X': bring O back to the front, then B back into place.
        e.block_left(2 + b + a, produced, b + a);
        e.block_right(2 + produced + b, a, consumed);
        produced += b;
        consumed += a;
    }
    e.word()
}

#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct CompileReport {
    #[serde(serialize_with = "display")]
    pub word: GenWord,
    /// Σ token sizes.
    pub size: usize,
    /// |Y^0|, …, |Y^L|.
    pub widths: Vec<usize>,
    /// |Z| = 1 + n + m + Σ_{ℓ=1}^{L−1} |Y^ℓ|.
    pub z_len: usize,
}

fn display<S: serde::Serializer>(w: &GenWord, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

/// w_C = π₂ (w_{C_{L−1}} … w_{C_1})^{−1} π₁ w_{C_L} … w_{C_1}.
pub fn compile_circuit(c: &Circuit) -> Result<CompileReport> {
    c.validate()?;
    let widths = c.widths()?;
    let (m, n) = (c.inputs, c.outputs);
    let depth = c.layers.len();
    let z_len = 1 + n + m + widths[1..depth].iter().sum::<usize>();
    let layers: Vec<GenWord> = c.layers.iter().map(|l| compile_layer(l)).collect();
    let mut w = GenWord::empty();
    for lw in &layers {
        w = lw.then_after(&w);
    }
    // 0 Y^L … Y^1 x ↦ 0 Y^{L−1} … Y^1 x Y^L.
    let mut pi1 = Emitter::default();
    for _ in 0..n {
        pi1.rotate_left(2, z_len);
    }
    w = pi1.word().then_after(&w);
    for lw in layers[..depth - 1].iter().rev() {
        w = lw.inverse().then_after(&w);
    }
    // 0 x Y^L ↦ 0 Y^L x.
    let mut pi2 = Emitter::default();
    for _ in 0..m {
        pi2.rotate_left(2, 1 + n + m);
    }
    w = pi2.word().then_after(&w);
    Ok(CompileReport {
        size: w.size(),
        word: w,
        widths,
        z_len,
    })
}

/// (w_C, 0x, 0yx): C(x) = y iff w_C(0x) = 0yx.
pub fn cvp_reduce(c: &Circuit, x: &BitString, y: &BitString) -> Result<(GenWord, BitString, BitString)> {
    let w = compile_circuit(c)?.word;
    let zero = BitString::from_bits(&[0]);
    Ok((w, zero.concat(x), zero.concat(y).concat(x)))
}

/// C(x) = y decided through the reduction; width mismatches answer no.
pub fn cvp_decide(c: &Circuit, x: &BitString, y: &BitString) -> Result<bool> {
    if x.len() != c.inputs || y.len() != c.outputs {
        return Ok(false);
    }
    let (w, a, b) = cvp_reduce(c, x, y)?;
    decide(&w, &a, &b, &gadget_genset())
}

/// A random strictly layered circuit with at most the given inputs, depth and size.
pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, max_inputs: usize, max_depth: usize, max_size: usize) -> Circuit {
    const MAX_WIDTH: usize = 8;
    loop {
        let m = rng.gen_range(1..=max_inputs);
        let depth = rng.gen_range(1..=max_depth);
        let mut width = m;
        let mut layers = Vec::new();
        let mut size = 0;
        for _ in 0..depth {
            let mut layer = Vec::new();
            let mut left = width;
            let mut out = 0;
            while left > 0 {
                let options: Vec<Gate> = ALL_GATES
                    .into_iter()
                    .filter(|g| g.arity_in() <= left && out + g.arity_out() + left - g.arity_in() <= MAX_WIDTH)
                    .collect();
                let g = options[rng.gen_range(0..options.len())];
                left -= g.arity_in();
                out += g.arity_out();
                layer.push(g);
            }
            size += layer.len();
            width = out;
            layers.push(layer);
        }
        if size <= max_size {
            return Circuit::new(m, layers).expect("widths chain by construction");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::bs;
    use crate::eval_v::{sequential_apply, tau_table};
    use crate::v_core::ApplyOutcome;

    fn circuit(m: usize, layers: &[&[Gate]]) -> Circuit {
        Circuit::new(m, layers.iter().map(|l| l.to_vec()).collect()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let and = circuit(2, &[&[Gate::And]]);
        assert_eq!(circuit_eval(&and, &bs("11")).unwrap(), bs("1"));
        assert_eq!(circuit_eval(&circuit(1, &[&[Gate::Not]]), &bs("0")).unwrap(), bs("1"));
        let fa = circuit(1, &[&[Gate::Fork], &[Gate::And]]);
        assert_eq!(circuit_eval(&fa, &bs("1")).unwrap(), bs("1"));
        assert_eq!(circuit_eval(&fa, &bs("0")).unwrap(), bs("0"));
        assert_eq!(
            circuit_eval(&and, &bs("1")),
            Err(Error::WidthMismatch { expected: 2, got: 1 })
        );
        assert!(Circuit::new(2, vec![vec![Gate::Not]]).is_err());
    }

    #[test]
    fn gadgets() {
        let not = gate_gadget(Gate::Not);
        assert_eq!(not.apply(&bs("00")), ApplyOutcome::Value(bs("010")));
        assert_eq!(not.apply(&bs("01")), ApplyOutcome::Value(bs("001")));
        let id = gate_gadget(Gate::Id);
        for b in ["0", "1"] {
            assert_eq!(
                id.apply(&bs(&format!("0{b}"))),
                ApplyOutcome::Value(bs(&format!("0{b}{b}")))
            );
        }
        let and = gate_gadget(Gate::And);
        assert_eq!(and.apply(&bs("011")), ApplyOutcome::Value(bs("0111")));
        assert_eq!(and.apply(&bs("001")), ApplyOutcome::Value(bs("0001")));
        for g in ALL_GATES {
            let t = gate_gadget(g);
            assert!(t.domain_code().is_maximal() && t.image_code().is_maximal());
            for x in BitString::all_of_length(g.arity_in()) {
                let expect = bs("0").concat(&BitString::from_bits(&g.eval(x.bits()))).concat(&x);
                assert_eq!(t.apply(&bs("0").concat(&x)), ApplyOutcome::Value(expect));
            }
        }
    }

    #[test]
    fn sigma_shifts() {
        assert_eq!(sigma_shift(2), GenWord::new(vec![Token::Tau(1)]));
        assert_eq!(sigma_shift(4).len(), 3);
        let mut g = GenSet::new();
        g.insert("t1", tau_table(1));
        for x in BitString::all_of_length(3) {
            let b = x.bits();
            let expect = BitString::from_bits(&[b[1], b[2], b[0]]);
            assert_eq!(
                sequential_apply(&sigma_shift(3), &x, &g).unwrap(),
                ApplyOutcome::Value(expect)
            );
        }
    }

    fn check_layer(layer: &[Gate], width: usize) {
        let w = compile_layer(layer);
        let c = circuit(width, &[layer]);
        for x in BitString::all_of_length(width) {
            let y = circuit_eval(&c, &x).unwrap();
            let expect = bs("0").concat(&y).concat(&x);
            let input = bs("0").concat(&x);
            assert_eq!(
                sequential_apply(&w, &input, &gadget_genset()).unwrap(),
                ApplyOutcome::Value(expect),
                "{x}"
            );
        }
    }

    #[test]
    fn layers() {
        check_layer(&[Gate::Not], 1);
        assert_eq!(compile_layer(&[Gate::Not]).to_string(), "phi_NOT");
        check_layer(&[Gate::And], 2);
        check_layer(&[Gate::Not, Gate::Not], 2);
        check_layer(&[Gate::Fork, Gate::Swap, Gate::Or], 5);
    }

    #[test]
    fn compile_examples() {
        let and = circuit(2, &[&[Gate::And]]);
        let r = compile_circuit(&and).unwrap();
        let out = sequential_apply(&r.word, &bs("011"), &gadget_genset()).unwrap();
        assert_eq!(out, ApplyOutcome::Value(bs("0111")));
        let id = circuit(3, &[&[Gate::Id, Gate::Id, Gate::Id]]);
        let r = compile_circuit(&id).unwrap();
        for x in BitString::all_of_length(3) {
            let expect = bs("0").concat(&x).concat(&x);
            assert_eq!(
                sequential_apply(&r.word, &bs("0").concat(&x), &gadget_genset()).unwrap(),
                ApplyOutcome::Value(expect)
            );
        }
        let c = circuit(3, &[&[Gate::Fork, Gate::And], &[Gate::Or, Gate::Not]]);
        let r = compile_circuit(&c).unwrap();
        assert_eq!(r.widths, vec![3, 3, 2]);
        assert_eq!(r.z_len, 1 + 2 + 3 + 3);
        for x in BitString::all_of_length(3) {
            let y = circuit_eval(&c, &x).unwrap();
            let expect = bs("0").concat(&y).concat(&x);
            assert_eq!(
                sequential_apply(&r.word, &bs("0").concat(&x), &gadget_genset()).unwrap(),
                ApplyOutcome::Value(expect)
            );
        }
    }

    #[test]
    fn cvp_examples() {
        let and = circuit(2, &[&[Gate::And]]);
        assert!(cvp_decide(&and, &bs("11"), &bs("1")).unwrap());
        assert!(!cvp_decide(&and, &bs("10"), &bs("1")).unwrap());
        assert!(!cvp_decide(&and, &bs("1"), &bs("1")).unwrap());
        let (_, a, b) = cvp_reduce(&and, &bs("11"), &bs("1")).unwrap();
        assert_eq!((a, b), (bs("011"), bs("0111")));
    }

    #[test]
    fn file_round_trip() {
        let text = "inputs 3\nlayer FORK AND\nlayer OR NOT # two outputs\noutputs 2\n";
        let c: Circuit = text.parse().unwrap();
        assert_eq!(c.size(), 4);
        assert_eq!(c.to_string().parse::<Circuit>().unwrap(), c);
        assert!("inputs 3\nlayer FORK AND\noutputs 2\n".parse::<Circuit>().is_err());
        assert!(matches!(
            "inputs 1\nlayer XOR\noutputs 1".parse::<Circuit>(),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
