//! Partial fixators pFix_V(P), their generators Π_P(Γ), the commutation
//! tests built on them, and the factorization g = β π α.

use std::collections::HashMap;
use std::fmt;

use crate::codes::{complement, complement_single, BitString, PrefixCode};
use crate::error::{Error, Result};
use crate::eval_v::{table_a, table_b, word_to_element, GenSet, GenWord, Token};
use crate::v_core::VTable;

/// Whether g fixes every point of the ideal P{0,1}* on which it is defined.
pub fn pfix_membership_direct(g: &VTable, p: &PrefixCode) -> bool {
    let depth = g.maxlen();
    p.members().iter().all(|m| {
        BitString::all_of_length(depth).all(|z| {
            let x = m.concat(&z);
            g.apply(&x).value() == Some(&x)
        })
    })
}

/// B = {0^{k−1}} ∪ { 0^j 1 : 0 ≤ j ≤ k−2 }, a maximal code of size k.
pub fn bridge_code(k: usize) -> PrefixCode {
    assert!(k >= 1);
    let mut members = vec![BitString::from_bits(&vec![0; k - 1])];
    for j in 0..k.saturating_sub(1) {
        let mut bits = vec![0; j];
        bits.push(1);
        members.push(BitString::from_bits(&bits));
    }
    PrefixCode::new(members).expect("bridge code")
}

/// Π_P(γ) = id_P ∪ f_{B,Q} ∘ γ_B ∘ f_{B,Q}⁻¹ with Q = complement(P).
pub fn pi_p(p: &PrefixCode, q: &PrefixCode, b: &PrefixCode, gamma: &VTable) -> VTable {
    let gamma_b = gamma.restrict_both_to_code(b);
    let index = |s: &BitString| {
        let m = b.prefix_of(s).expect("inside the bridge ideal");
        let i = b.members().binary_search(m).expect("member");
        (i, s.suffix_from(m.len()))
    };
    let mut pairs: Vec<(BitString, BitString)> = p.members().iter().map(|x| (x.clone(), x.clone())).collect();
    for (d, r) in gamma_b.pairs() {
        let (i, c) = index(d);
        let (j, e) = index(r);
        pairs.push((q.members()[i].concat(&c), q.members()[j].concat(&e)));
    }
    VTable::new(pairs)
        .expect("conjugated table is an element of V")
        .maximal_extension()
}

#[derive(Clone, Debug)]
pub struct FixatorGenerators {
    pub base_code: PrefixCode,
    pub complement_code: PrefixCode,
    pub bridge_code: PrefixCode,
    /// (generator name, Π_P(γ), its factorization).
    pub generators: Vec<(String, VTable, FactorWord)>,
}

fn check_base(p: &PrefixCode) -> Result<()> {
    if p.is_empty() || p.is_maximal() {
        return Err(Error::EmptyOrMaximalCode);
    }
    Ok(())
}

/// Generator tables Π_P(γ), one per member of `g`, in name order.
pub fn fixator_tables(p: &PrefixCode, g: &GenSet) -> Result<Vec<(String, VTable)>> {
    check_base(p)?;
    let q = complement(p);
    let b = bridge_code(q.len());
    Ok(g.iter().map(|(n, t)| (n.to_string(), pi_p(p, &q, &b, t))).collect())
}

/// Generators of pFix_V(P) with factorizations over the F generators and transpositions.
pub fn fixator_generators(p: &PrefixCode, g: &GenSet) -> Result<FixatorGenerators> {
    check_base(p)?;
    let q = complement(p);
    let b = bridge_code(q.len());
    let generators = g
        .iter()
        .map(|(n, t)| {
            let table = pi_p(p, &q, &b, t);
            let word = factor_pipeline(&table);
            (n.to_string(), table, word)
        })
        .collect();
    Ok(FixatorGenerators {
        base_code: p.clone(),
        complement_code: q,
        bridge_code: b,
        generators,
    })
}

/// Caches generator tables per code; the commutation deciders reuse them heavily.
pub struct CommutationDecider {
    gens: GenSet,
    cache: HashMap<PrefixCode, Vec<(String, VTable)>>,
}

/// The outcome of a commutation decision.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct CommutationOutcome {
    pub holds: bool,
    pub equalities_checked: usize,
    /// The first failing equality, when there is one.
    pub witness: Option<String>,
}

impl CommutationOutcome {
    fn yes(n: usize) -> Self {
        CommutationOutcome {
            holds: true,
            equalities_checked: n,
            witness: None,
        }
    }
}

fn commute(a: &VTable, b: &VTable) -> bool {
    VTable::compose(a, b) == VTable::compose(b, a)
}

/// g(x) = y, split into the coset conditions and the cylinder conjugation conditions.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct EvalCommutationReport {
    pub coset: CommutationOutcome,
    pub conjugation: CommutationOutcome,
}

impl EvalCommutationReport {
    pub fn holds(&self) -> bool {
        self.coset.holds && self.conjugation.holds
    }
}

impl CommutationDecider {
    pub fn new(gens: &GenSet) -> Self {
        CommutationDecider {
            gens: gens.clone(),
            cache: HashMap::new(),
        }
    }

    pub fn generators(&mut self, p: &PrefixCode) -> Result<&[(String, VTable)]> {
        if !self.cache.contains_key(p) {
            let t = fixator_tables(p, &self.gens)?;
            self.cache.insert(p.clone(), t);
        }
        Ok(&self.cache[p])
    }

    /// g ∈ pFix_V(P) iff g commutes with every generator of pFix_V(complement(P)).
    pub fn membership(&mut self, g: &VTable, p: &PrefixCode) -> Result<CommutationOutcome> {
        check_base(p)?;
        let g = g.maximal_extension();
        let q = complement(p);
        let gens = self.generators(&q)?;
        for (i, (name, h)) in gens.iter().enumerate() {
            if !commute(&g, h) {
                return Ok(CommutationOutcome {
                    holds: false,
                    equalities_checked: i + 1,
                    witness: Some(format!("Pi_{q}({name})")),
                });
            }
        }
        Ok(CommutationOutcome::yes(gens.len()))
    }

    /// The two commutation families: δ·gαg⁻¹ = gαg⁻¹·δ and γ·g⁻¹βg = g⁻¹βg·γ.
    ///
    /// They hold exactly when g maps the x-cylinder onto the y-cylinder as sets.
    pub fn coset_test(&mut self, g: &VTable, x: &BitString, y: &BitString) -> Result<CommutationOutcome> {
        let g = g.maximal_extension();
        let gi = g.inverse();
        let px = PrefixCode::new([x.clone()])?;
        let py = PrefixCode::new([y.clone()])?;
        let gamma_x = self.generators(&px)?.to_vec();
        let gamma_y = self.generators(&py)?.to_vec();
        let gamma_xbar = self.generators(&complement_single(x)?)?.to_vec();
        let gamma_ybar = self.generators(&complement_single(y)?)?.to_vec();
        let mut checked = 0;
        for (an, alpha) in &gamma_x {
            let h = VTable::compose(&g, &VTable::compose(alpha, &gi));
            for (dn, delta) in &gamma_ybar {
                checked += 1;
                if !commute(delta, &h) {
                    return Ok(CommutationOutcome {
                        holds: false,
                        equalities_checked: checked,
                        witness: Some(format!("delta={dn} alpha={an}")),
                    });
                }
            }
        }
        for (bn, beta) in &gamma_y {
            let h = VTable::compose(&gi, &VTable::compose(beta, &g));
            for (cn, gamma) in &gamma_xbar {
                checked += 1;
                if !commute(gamma, &h) {
                    return Ok(CommutationOutcome {
                        holds: false,
                        equalities_checked: checked,
                        witness: Some(format!("gamma={cn} beta={bn}")),
                    });
                }
            }
        }
        Ok(CommutationOutcome::yes(checked))
    }

    /// g·Π_x̄(γ)·g⁻¹ = Π_ȳ(γ) for every generator γ.
    ///
    /// Π_x̄(γ) is γ acting inside the x-cylinder, so these equalities pin the
    /// induced map between the two cylinders to the identity shift.
    pub fn conjugation_test(&mut self, g: &VTable, x: &BitString, y: &BitString) -> Result<CommutationOutcome> {
        let g = g.maximal_extension();
        let gi = g.inverse();
        let gamma_xbar = self.generators(&complement_single(x)?)?.to_vec();
        let gamma_ybar = self.generators(&complement_single(y)?)?.to_vec();
        for (i, ((n, a), (_, b))) in gamma_xbar.iter().zip(gamma_ybar.iter()).enumerate() {
            if VTable::compose(&g, &VTable::compose(a, &gi)) != *b {
                return Ok(CommutationOutcome {
                    holds: false,
                    equalities_checked: i + 1,
                    witness: Some(format!("conjugate of {n}")),
                });
            }
        }
        Ok(CommutationOutcome::yes(gamma_xbar.len()))
    }

    /// g(x) = y decided through commutation and conjugation equalities.
    pub fn eval_report(&mut self, g: &VTable, x: &BitString, y: &BitString) -> Result<EvalCommutationReport> {
        if x.is_empty() || y.is_empty() {
            // ε ∈ Dom(g) only for the identity; this is the word problem.
            let holds = g.maximal_extension().is_identity() && x == y;
            let o = CommutationOutcome {
                holds,
                equalities_checked: 0,
                witness: (!holds).then(|| "empty string: decided as a word problem".to_string()),
            };
            return Ok(EvalCommutationReport {
                coset: o.clone(),
                conjugation: o,
            });
        }
        let coset = self.coset_test(g, x, y)?;
        let conjugation = if coset.holds {
            self.conjugation_test(g, x, y)?
        } else {
            CommutationOutcome {
                holds: false,
                equalities_checked: 0,
                witness: None,
            }
        };
        Ok(EvalCommutationReport { coset, conjugation })
    }

    pub fn eval(&mut self, g: &VTable, x: &BitString, y: &BitString) -> Result<bool> {
        Ok(self.eval_report(g, x, y)?.holds())
    }
}

pub fn commutation_membership(g: &VTable, p: &PrefixCode, gens: &GenSet) -> Result<CommutationOutcome> {
    CommutationDecider::new(gens).membership(g, p)
}

pub fn eval_via_commutation(g: &VTable, x: &BitString, y: &BitString, gens: &GenSet) -> Result<bool> {
    CommutationDecider::new(gens).eval(g, x, y)
}

/// The same decision for a word: every equality becomes a word problem over
/// `gens` extended by the Π generators.
pub fn eval_via_commutation_word(w: &GenWord, x: &BitString, y: &BitString, gens: &GenSet) -> Result<bool> {
    let (ext, equations) = commutation_equations(w, x, y, gens)?;
    for (lhs, rhs) in &equations {
        if !word_to_element(&lhs.then_after(&rhs.inverse()), &ext)?.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Word equations lhs = rhs whose conjunction is equivalent to E_w(x) = y.
pub fn commutation_equations(
    w: &GenWord,
    x: &BitString,
    y: &BitString,
    gens: &GenSet,
) -> Result<(GenSet, Vec<(GenWord, GenWord)>)> {
    gens.check_word(w)?;
    let mut ext = gens.clone();
    if x.is_empty() || y.is_empty() {
        // ε is only in the domain of the identity.
        if x != y {
            let mut t = GenSet::new();
            t.insert("Id", VTable::identity());
            t.insert("Swap", VTable::bit_swap());
            return Ok((t, vec![(GenWord::parse("Id")?, GenWord::parse("Swap")?)]));
        }
        return Ok((ext, vec![(w.clone(), GenWord::empty())]));
    }
    let mut family = |tag: &str, p: &PrefixCode| -> Result<Vec<GenWord>> {
        let mut out = Vec::new();
        for (n, t) in fixator_tables(p, gens)? {
            let name = format!("{tag}_{n}");
            ext.insert(&name, t);
            out.push(GenWord::new(vec![Token::gen(&name)]));
        }
        Ok(out)
    };
    let gx = family("Fx", &PrefixCode::new([x.clone()])?)?;
    let gy = family("Fy", &PrefixCode::new([y.clone()])?)?;
    let gxb = family("Fxbar", &complement_single(x)?)?;
    let gyb = family("Fybar", &complement_single(y)?)?;
    let wi = w.inverse();
    let mut eqs = Vec::new();
    for alpha in &gx {
        let h = w.then_after(alpha).then_after(&wi);
        for delta in &gyb {
            eqs.push((delta.then_after(&h), h.then_after(delta)));
        }
    }
    for beta in &gy {
        let h = wi.then_after(beta).then_after(w);
        for gamma in &gxb {
            eqs.push((gamma.then_after(&h), h.then_after(gamma)));
        }
    }
    for (a, b) in gxb.iter().zip(gyb.iter()) {
        eqs.push((w.then_after(a).then_after(&wi), b.clone()));
    }
    Ok((ext, eqs))
}

/// An element fixing the u-cylinder and moving a point of the v-cylinder.
pub fn separating_witness(u: &BitString, v: &BitString) -> Result<VTable> {
    if u.is_prefix_of(v) {
        return Err(Error::PrefixHolds(u.to_string(), v.to_string()));
    }
    let with_identity = |mut pairs: Vec<(BitString, BitString)>, rest: &[BitString]| {
        pairs.extend(rest.iter().map(|z| (z.clone(), z.clone())));
        VTable::new(pairs).expect("witness table")
    };
    if !v.is_prefix_of(u) {
        let uv = PrefixCode::new([u.clone(), v.clone()])?;
        let q = complement(&uv);
        if q.is_empty() {
            // {u, v} = {0, 1}: swap the two halves of v's cylinder.
            let (a, b) = (v.pushed(0), v.pushed(1));
            return Ok(with_identity(
                vec![(a.clone(), b.clone()), (b, a)],
                std::slice::from_ref(u),
            ));
        }
        let q0 = q.members()[0].clone();
        return Ok(with_identity(
            vec![(u.clone(), u.clone()), (v.clone(), q0.clone()), (q0, v.clone())],
            &q.members()[1..],
        ));
    }
    // v is a strict prefix of u: swap the two children of v's child that avoids u.
    let a = u.get(v.len());
    let side = v.pushed(1 - a);
    let (c0, c1) = (side.pushed(0), side.pushed(1));
    let moved = PrefixCode::new([u.clone(), c0.clone(), c1.clone()])?;
    let rest = complement(&moved);
    Ok(with_identity(
        vec![(u.clone(), u.clone()), (c0.clone(), c1.clone()), (c1, c0)],
        rest.members(),
    ))
}

/// The symbols of a factorization.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FactorKind {
    A {
        inverse: bool,
    },
    B {
        inverse: bool,
    },
    /// (0^k | w): swaps the 0^k- and w-cylinders.
    Transposition {
        k: usize,
        w: BitString,
    },
}

impl FactorKind {
    fn inverse(&self) -> FactorKind {
        match self {
            FactorKind::A { inverse } => FactorKind::A { inverse: !inverse },
            FactorKind::B { inverse } => FactorKind::B { inverse: !inverse },
            t => t.clone(),
        }
    }

    fn table(&self) -> VTable {
        match self {
            FactorKind::A { inverse } => inverted(table_a(), *inverse),
            FactorKind::B { inverse } => inverted(table_b(), *inverse),
            FactorKind::Transposition { k, w } => transposition_table(*k, w).expect("valid transposition"),
        }
    }
}

fn inverted(t: VTable, inverse: bool) -> VTable {
    if inverse {
        t.inverse()
    } else {
        t
    }
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorKind::A { inverse: false } => write!(f, "A"),
            FactorKind::A { inverse: true } => write!(f, "A^-1"),
            FactorKind::B { inverse: false } => write!(f, "B"),
            FactorKind::B { inverse: true } => write!(f, "B^-1"),
            FactorKind::Transposition { k, w } => write!(f, "(0^{k}|{w})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factor {
    pub kind: FactorKind,
    pub table: VTable,
}

/// Factors written left to right; the rightmost acts first.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FactorWord {
    pub factors: Vec<Factor>,
}

impl FactorWord {
    fn from_kinds_written(kinds: Vec<FactorKind>) -> FactorWord {
        FactorWord {
            factors: kinds
                .into_iter()
                .map(|kind| Factor {
                    table: kind.table(),
                    kind,
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self) -> VTable {
        self.factors
            .iter()
            .rev()
            .fold(VTable::identity(), |acc, f| VTable::compose(&f.table, &acc))
    }

    pub fn transposition_count(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| matches!(f.kind, FactorKind::Transposition { .. }))
            .count()
    }

    /// A word over `A`, `B` and one named generator per distinct transposition.
    pub fn to_gen_word(&self) -> (GenWord, GenSet) {
        let mut g = GenSet::standard();
        let tokens = self
            .factors
            .iter()
            .map(|f| match &f.kind {
                FactorKind::A { inverse } => Token::Gen {
                    name: "A".into(),
                    inverse: *inverse,
                },
                FactorKind::B { inverse } => Token::Gen {
                    name: "B".into(),
                    inverse: *inverse,
                },
                FactorKind::Transposition { k, w } => {
                    let name = format!("T{k}_{w}");
                    g.insert(&name, f.table.clone());
                    Token::gen(&name)
                }
            })
            .collect();
        (GenWord::new(tokens), g)
    }
}

impl fmt::Display for FactorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let s: Vec<String> = self.factors.iter().map(|x| x.kind.to_string()).collect();
        f.write_str(&s.join(" "))
    }
}

/// (0^k | w) = {(0^k,w),(w,0^k)} ∪ {(0^i 1, 0^i 1) : i < k, i ≠ j} ∪ off-branch identities,
/// where w = 0^j 1 v.
pub fn transposition_table(k: usize, w: &BitString) -> Result<VTable> {
    let j = w
        .bits()
        .iter()
        .position(|&b| b == 1)
        .filter(|&j| j < k)
        .ok_or_else(|| Error::Format(format!("{w} is comparable with 0^{k}")))?;
    let zk = BitString::from_bits(&vec![0; k]);
    let branch = |i: usize| {
        let mut bits = vec![0; i];
        bits.push(1);
        BitString::from_bits(&bits)
    };
    let mut pairs = vec![(zk.clone(), w.clone()), (w.clone(), zk)];
    for i in (0..k).filter(|&i| i != j) {
        let s = branch(i);
        pairs.push((s.clone(), s));
    }
    let v = w.suffix_from(j + 1);
    for len in 0..v.len() {
        let s = branch(j).concat(&v.prefix(len)).pushed(1 - v.get(len));
        pairs.push((s.clone(), s));
    }
    VTable::new(pairs)
}

/// S_n: the size-n maximal code inside {0,1}^{k−1} ∪ {0,1}^k, k = ⌈log₂ n⌉,
/// whose split nodes are the leftmost ones (so 0^k ∈ S_n).
pub fn balanced_code(n: usize) -> PrefixCode {
    assert!(n >= 1);
    if n == 1 {
        return PrefixCode::new([BitString::empty()]).expect("code");
    }
    let k = (usize::BITS - (n - 1).leading_zeros()) as usize;
    let split = n - (1usize << (k - 1));
    let mut members = Vec::with_capacity(n);
    for (i, x) in BitString::all_of_length(k - 1).enumerate() {
        if i < split {
            members.push(x.pushed(0));
            members.push(x.pushed(1));
        } else {
            members.push(x);
        }
    }
    PrefixCode::new(members).expect("code")
}

/// Rewrites a symbolic transposition into other factors; `None` keeps it symbolic.
pub trait TranspositionRewriter {
    fn rewrite(&self, k: usize, w: &BitString) -> Option<Vec<Factor>>;
}

/// The default rewriter: transpositions stay symbolic.
pub struct Symbolic;

impl TranspositionRewriter for Symbolic {
    fn rewrite(&self, _k: usize, _w: &BitString) -> Option<Vec<Factor>> {
        None
    }
}

/// Rotations taking the tree of `code` to the right vine, in application order.
fn vine_ops(code: &PrefixCode) -> Vec<FactorKind> {
    let mut leaves: Vec<BitString> = code.members().to_vec();
    let mut ops = Vec::new();
    loop {
        // Smallest spine node 1^j whose left child is internal.
        let spine_j = leaves
            .iter()
            .filter_map(|m| {
                let j = m.bits().iter().take_while(|&&b| b == 1).count();
                (j + 1 < m.len()).then_some(j)
            })
            .min();
        let Some(j) = spine_j else { break };
        if j == 0 {
            ops.push(FactorKind::A { inverse: true });
        } else {
            ops.extend(std::iter::repeat_n(FactorKind::A { inverse: false }, j - 1));
            ops.push(FactorKind::B { inverse: true });
            ops.extend(std::iter::repeat_n(FactorKind::A { inverse: true }, j - 1));
        }
        let u = BitString::from_bits(&vec![1; j]);
        for m in leaves.iter_mut() {
            let Some(rest) = m.strip_prefix(&u) else { continue };
            let r = rest.bits();
            let mut bits = u.bits().to_vec();
            match (r[0], r.get(1)) {
                (0, Some(0)) => bits.extend_from_slice(&[0]),
                (0, Some(1)) => bits.extend_from_slice(&[1, 0]),
                (1, _) => bits.extend_from_slice(&[1, 1]),
                _ => unreachable!("left child of the rotated node is internal"),
            }
            let skip = if r[0] == 0 { 2 } else { 1 };
            bits.extend_from_slice(&r[skip..]);
            *m = BitString::from_bits(&bits);
        }
        leaves.sort();
    }
    ops
}

/// The order-preserving map dom → img as A/B factors, in application order.
fn order_preserving_ops(dom: &PrefixCode, img: &PrefixCode) -> Vec<FactorKind> {
    let mut ops = vine_ops(dom);
    ops.extend(vine_ops(img).into_iter().rev().map(|k| k.inverse()));
    let mut reduced: Vec<FactorKind> = Vec::with_capacity(ops.len());
    for op in ops {
        if reduced.last() == Some(&op.inverse()) && !matches!(op, FactorKind::Transposition { .. }) {
            reduced.pop();
        } else {
            reduced.push(op);
        }
    }
    reduced
}

/// Transpositions (0 a) whose product, written left to right, is the permutation `perm`.
fn pivot_transpositions(perm: &[usize]) -> Vec<usize> {
    let n = perm.len();
    let mut rho = perm.to_vec();
    let mut out = Vec::new();
    // Left-multiplying by (0 a) exchanges the values 0 and a.
    let mut swap_values = |rho: &mut Vec<usize>, a: usize| {
        for v in rho.iter_mut() {
            if *v == 0 {
                *v = a;
            } else if *v == a {
                *v = 0;
            }
        }
        out.push(a);
    };
    loop {
        let i0 = rho.iter().position(|&v| v == 0).expect("permutation");
        if i0 != 0 {
            swap_values(&mut rho, i0);
            continue;
        }
        match (1..n).find(|&i| rho[i] != i) {
            Some(i) => {
                let a = rho[i];
                swap_values(&mut rho, a);
            }
            None => break,
        }
    }
    out
}

/// g = β π α with α, β order-preserving and π a permutation of S_n cylinders.
pub fn factor_pipeline(g: &VTable) -> FactorWord {
    factor_pipeline_with(g, &Symbolic)
}

pub fn factor_pipeline_with(g: &VTable, rewriter: &dyn TranspositionRewriter) -> FactorWord {
    let g = g.maximal_extension();
    let n = g.size();
    let s = balanced_code(n);
    let dom = g.domain_code();
    let img = g.image_code();
    let k = s.members()[0].len();
    let perm: Vec<usize> = g
        .pairs()
        .iter()
        .map(|(_, r)| img.members().binary_search(r).expect("image member"))
        .collect();
    let mut written: Vec<Factor> = Vec::new();
    let push_ops = |out: &mut Vec<Factor>, ops: Vec<FactorKind>| {
        for kind in ops.into_iter().rev() {
            out.push(Factor {
                table: kind.table(),
                kind,
            });
        }
    };
    push_ops(&mut written, order_preserving_ops(&s, &img));
    for a in pivot_transpositions(&perm) {
        let w = s.members()[a].clone();
        match rewriter.rewrite(k, &w) {
            Some(fs) => written.extend(fs),
            None => {
                let kind = FactorKind::Transposition { k, w };
                written.push(Factor {
                    table: kind.table(),
                    kind,
                });
            }
        }
    }
    push_ops(&mut written, order_preserving_ops(&dom, &s));
    FactorWord { factors: written }
}

impl FactorWord {
    /// Builds a factor word from kinds written left to right.
    pub fn from_kinds(kinds: Vec<FactorKind>) -> FactorWord {
        FactorWord::from_kinds_written(kinds)
    }
}
