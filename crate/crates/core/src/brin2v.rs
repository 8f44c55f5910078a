//! The n-fold product monoid nA* over A = {0,1}, joinless and initial-factor
//! codes, right ideal morphisms given by tables, and the group 2V.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::codes::BitString;
use crate::error::{Error, Result};
use crate::eval_v::{GenSet, GenWord, InputClass, Token};
use crate::v_core::VTable;

/// Largest ℓ for which the oracles materialize nA^ℓ.
pub const ORACLE_DEPTH_CAP: usize = 6;

/// Largest candidate lattice the maximal extension will allocate.
const LATTICE_CAP: usize = 1 << 22;

/// An element of nA*: n bitstrings multiplied coordinatewise.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Tuple(Vec<BitString>);

impl Tuple {
    pub fn new(coords: Vec<BitString>) -> Tuple {
        assert!(!coords.is_empty(), "a tuple has at least one coordinate");
        Tuple(coords)
    }

    /// (ε, …, ε).
    pub fn empty(n: usize) -> Tuple {
        Tuple::new(vec![BitString::empty(); n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BitString] {
        &self.0
    }

    pub fn coord(&self, i: usize) -> &BitString {
        &self.0[i]
    }

    /// ℓ: the longest coordinate.
    pub fn ell(&self) -> usize {
        self.0.iter().map(BitString::len).max().unwrap_or(0)
    }

    pub fn min_len(&self) -> usize {
        self.0.iter().map(BitString::len).min().unwrap_or(0)
    }

    pub fn total_len(&self) -> usize {
        self.0.iter().map(BitString::len).sum()
    }

    pub fn concat(&self, other: &Tuple) -> Tuple {
        Tuple(self.0.iter().zip(&other.0).map(|(a, b)| a.concat(b)).collect())
    }

    /// self ≤_init other: self is an initial factor of other.
    pub fn is_initial_factor_of(&self, other: &Tuple) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a.is_prefix_of(b))
    }

    /// x with self·x = other.
    pub fn strip(&self, other: &Tuple) -> Option<Tuple> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| b.strip_prefix(a))
            .collect::<Option<Vec<_>>>()
            .map(Tuple)
    }

    /// The least common upper bound in ≤_init, when one exists.
    pub fn join(&self, other: &Tuple) -> Option<Tuple> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| {
                if a.is_prefix_of(b) {
                    Some(b.clone())
                } else if b.is_prefix_of(a) {
                    Some(a.clone())
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(Tuple)
    }

    /// Appends one bit to coordinate i.
    pub fn with_bit(&self, i: usize, bit: u8) -> Tuple {
        let mut t = self.clone();
        t.0[i].push(bit);
        t
    }

    /// Drops the last bit of coordinate i.
    pub fn parent(&self, i: usize) -> Option<Tuple> {
        let p = self.0[i].parent()?;
        let mut t = self.clone();
        t.0[i] = p;
        Some(t)
    }

    /// nA^ℓ: every tuple whose coordinates all have length ℓ.
    pub fn all_of_length(n: usize, ell: usize) -> impl Iterator<Item = Tuple> {
        let total = n * ell;
        assert!(total < 63, "enumeration too large");
        (0..1u64 << total).map(move |k| {
            Tuple(
                (0..n)
                    .map(|i| BitString::from_int((k >> (ell * (n - 1 - i))) & ((1u64 << ell) - 1), ell))
                    .collect(),
            )
        })
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Tuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tuple> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Format(format!("expected a tuple `(u,v)`, got `{s}`")))?;
        let coords = inner
            .split(',')
            .map(|c| c.trim().parse::<BitString>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Tuple::new(coords))
    }
}

pub fn join(u: &Tuple, v: &Tuple) -> Option<Tuple> {
    u.join(v)
}

/// A finite set of tuples in nA*, sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TupleCode {
    n: usize,
    members: Vec<Tuple>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub struct FlavorChecks {
    pub initial_factor: bool,
    pub joinless: bool,
}

impl TupleCode {
    pub fn new(n: usize, members: impl IntoIterator<Item = Tuple>) -> Result<TupleCode> {
        let mut members: Vec<Tuple> = members.into_iter().collect();
        if let Some(t) = members.iter().find(|t| t.n() != n) {
            return Err(Error::WidthMismatch {
                expected: n,
                got: t.n(),
            });
        }
        members.sort();
        members.dedup();
        Ok(TupleCode { n, members })
    }

    pub fn empty(n: usize) -> TupleCode {
        TupleCode { n, members: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Tuple] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The longest coordinate of any member.
    pub fn maxlen(&self) -> usize {
        self.members.iter().map(Tuple::ell).max().unwrap_or(0)
    }

    pub fn is_initial_factor_code(&self) -> bool {
        let m = &self.members;
        (0..m.len()).all(|i| (0..m.len()).all(|j| i == j || !m[i].is_initial_factor_of(&m[j])))
    }

    pub fn is_joinless(&self) -> bool {
        let m = &self.members;
        (0..m.len()).all(|i| (i + 1..m.len()).all(|j| m[i].join(&m[j]).is_none()))
    }

    /// Some member is an initial factor of x.
    pub fn covers(&self, x: &Tuple) -> bool {
        self.members.iter().any(|p| p.is_initial_factor_of(x))
    }
}

impl fmt::Display for TupleCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(Tuple::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn code_flavor_checks(s: &TupleCode) -> FlavorChecks {
    FlavorChecks {
        initial_factor: s.is_initial_factor_code(),
        joinless: s.is_joinless(),
    }
}

/// C₁ ∨ C₂ = { c₁ ∨ c₂ }: the joinless code of the intersection of the two ideals.
pub fn join_refine(c1: &TupleCode, c2: &TupleCode) -> Result<TupleCode> {
    for c in [c1, c2] {
        if !c.is_joinless() {
            return Err(Error::FlavorMismatch(format!("{c} is not joinless")));
        }
    }
    let joins = c1
        .members
        .iter()
        .flat_map(|a| c2.members.iter().filter_map(move |b| a.join(b)));
    TupleCode::new(c1.n, joins)
}

/// P^# = { sα : s open, α one symbol in one coordinate, sα joinless with
/// every member of P }. A tuple is open when it joins some member of P
/// without lying in the ideal of P; open tuples are reached from (ε,…,ε) by
/// one-symbol steps with coordinates bounded by maxlen(P). Starting only
/// from initial factors of members misses tuples such as (1,1) for
/// P = {(ε,0),(0,ε)}.
pub fn p_sharp(p: &TupleCode) -> Vec<Tuple> {
    let ell = p.maxlen();
    let joinless = |t: &Tuple| p.members.iter().all(|q| q.join(t).is_none());
    let mut out: Vec<Tuple> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut open = vec![Tuple::empty(p.n)];
    while let Some(s) = open.pop() {
        if joinless(&s) || p.covers(&s) || !seen.insert(s.clone()) {
            continue;
        }
        for i in 0..p.n {
            if s.coord(i).len() >= ell {
                continue;
            }
            for a in [0, 1] {
                let t = s.with_bit(i, a);
                if joinless(&t) {
                    out.push(t);
                } else {
                    open.push(t);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// P': the ≤_init-minimal elements of P^#; P' ∩ ideals of P = ∅ and P ∪ P' is essential.
pub fn complement_init(p: &TupleCode) -> Result<TupleCode> {
    if !p.is_initial_factor_code() {
        return Err(Error::FlavorMismatch(format!("{p} is not an initial factor code")));
    }
    if p.is_empty() {
        return TupleCode::new(p.n, [Tuple::empty(p.n)]);
    }
    let sharp = p_sharp(p);
    let minimal = sharp
        .iter()
        .filter(|t| !sharp.iter().any(|s| s != *t && s.is_initial_factor_of(t)))
        .cloned();
    TupleCode::new(p.n, minimal)
}

/// Decider A: P is essential iff its complementary initial factor code is
/// empty. Any finite set is accepted; its ≤_init-minimal members generate
/// the same ideal.
pub fn is_essential(p: &TupleCode) -> Result<bool> {
    let minimal = p
        .members
        .iter()
        .filter(|t| !p.members.iter().any(|s| s != *t && s.is_initial_factor_of(t)))
        .cloned();
    let p = TupleCode::new(p.n, minimal)?;
    Ok(!p.is_empty() && complement_init(&p)?.is_empty())
}

/// Decider B: every x ∈ nA^ℓ, ℓ = maxlen(P), lies in the ideal of P.
pub fn is_essential_oracle(p: &TupleCode) -> Result<bool> {
    let ell = p.maxlen();
    if ell > ORACLE_DEPTH_CAP {
        return Err(Error::DepthCap(ell, ORACLE_DEPTH_CAP));
    }
    Ok(!p.is_empty() && Tuple::all_of_length(p.n, ell).all(|x| p.covers(&x)))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ApplyOutcomeN {
    Value(Tuple),
    /// x is a proper initial factor of part of the domain ideal.
    TooShort,
    /// x avoids the domain ideal.
    NoPrefix,
}

impl ApplyOutcomeN {
    pub fn value(&self) -> Option<&Tuple> {
        match self {
            ApplyOutcomeN::Value(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_value(&self) -> bool {
        matches!(self, ApplyOutcomeN::Value(_))
    }
}

/// A finite table P → Q in nA*, read as the right ideal morphism p·z ↦ F(p)·z.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NTable {
    n: usize,
    pairs: Vec<(Tuple, Tuple)>,
}

impl NTable {
    /// Any finite relation; the decisions Q1–Q5 say what it is.
    pub fn candidate(pairs: impl IntoIterator<Item = (Tuple, Tuple)>) -> Result<NTable> {
        let mut pairs: Vec<(Tuple, Tuple)> = pairs.into_iter().collect();
        let n = pairs.first().ok_or(Error::EmptyInput)?.0.n();
        for (p, q) in &pairs {
            for t in [p, q] {
                if t.n() != n {
                    return Err(Error::WidthMismatch {
                        expected: n,
                        got: t.n(),
                    });
                }
            }
        }
        pairs.sort();
        pairs.dedup();
        Ok(NTable { n, pairs })
    }

    /// An element of 2V-style groups: a bijection between maximal joinless codes.
    pub fn group(pairs: impl IntoIterator<Item = (Tuple, Tuple)>) -> Result<NTable> {
        let t = NTable::candidate(pairs)?;
        let (dom, img) = (t.domain_code(), t.image_code());
        if dom.len() != t.pairs.len() || img.len() != t.pairs.len() {
            return Err(Error::NotBijective(t.to_string()));
        }
        for c in [&dom, &img] {
            if !c.is_joinless() {
                return Err(Error::FlavorMismatch(format!("{c} is not joinless")));
            }
            if !is_essential(c)? {
                return Err(Error::NotMaximal(c.to_string()));
            }
        }
        Ok(t)
    }

    pub fn identity(n: usize) -> NTable {
        NTable {
            n,
            pairs: vec![(Tuple::empty(n), Tuple::empty(n))],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(Tuple, Tuple)] {
        &self.pairs
    }

    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn domain_code(&self) -> TupleCode {
        TupleCode::new(self.n, self.pairs.iter().map(|p| p.0.clone())).expect("uniform width")
    }

    pub fn image_code(&self) -> TupleCode {
        TupleCode::new(self.n, self.pairs.iter().map(|p| p.1.clone())).expect("uniform width")
    }

    pub fn domain_maxlen(&self) -> usize {
        self.pairs.iter().map(|p| p.0.ell()).max().unwrap_or(0)
    }

    /// The longest coordinate on either side.
    pub fn maxlen(&self) -> usize {
        self.pairs.iter().map(|p| p.0.ell().max(p.1.ell())).max().unwrap_or(0)
    }

    pub fn apply(&self, x: &Tuple) -> ApplyOutcomeN {
        if let Some((p, q)) = self.pairs.iter().find(|(p, _)| p.is_initial_factor_of(x)) {
            return ApplyOutcomeN::Value(q.concat(&p.strip(x).expect("initial factor")));
        }
        if self.pairs.iter().any(|(p, _)| p.join(x).is_some()) {
            ApplyOutcomeN::TooShort
        } else {
            ApplyOutcomeN::NoPrefix
        }
    }

    pub fn inverse(&self) -> NTable {
        NTable::candidate(self.pairs.iter().map(|(p, q)| (q.clone(), p.clone()))).expect("nonempty")
    }
}

impl fmt::Display for NTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(p, q)| format!("({p},{q})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The answers to Q1 function, Q2 injective, Q3 total, Q4 surjective, Q5 group element.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct TableChecks {
    pub q1: bool,
    pub q2: bool,
    pub q3: bool,
    pub q4: bool,
    pub q5: bool,
    /// The first pair of table entries that breaks Q1 or Q2.
    pub witness: Option<String>,
}

impl TableChecks {
    /// Q1..Q5 without the witness, for comparisons.
    pub fn answers(&self) -> [bool; 5] {
        [self.q1, self.q2, self.q3, self.q4, self.q5]
    }
}

/// A pair of entries whose images disagree on the join of their domains.
fn join_conflict(pairs: &[(Tuple, Tuple)]) -> Option<String> {
    for (i, (p, a)) in pairs.iter().enumerate() {
        for (p2, b) in &pairs[i + 1..] {
            let Some(j) = p.join(p2) else { continue };
            let u = p.strip(&j).expect("join extends p");
            let v = p2.strip(&j).expect("join extends p'");
            let (x, y) = (a.concat(&u), b.concat(&v));
            if x != y {
                return Some(format!("F({j}) is both {x} (via {p}) and {y} (via {p2})"));
            }
        }
    }
    None
}

pub fn table_checks(f: &NTable) -> Result<TableChecks> {
    let inv = f.inverse();
    let c1 = join_conflict(&f.pairs);
    let c2 = join_conflict(&inv.pairs);
    let q3 = is_essential(&f.domain_code())?;
    let q4 = is_essential(&f.image_code())?;
    let (q1, q2) = (c1.is_none(), c2.is_none());
    Ok(TableChecks {
        q1,
        q2,
        q3,
        q4,
        q5: q1 && q2 && q3 && q4,
        witness: c1.or(c2),
    })
}

/// The same answers from the expansion to depth ℓ = max(maxlen P, maxlen Q).
pub fn table_checks_oracle(f: &NTable) -> Result<TableChecks> {
    let ell = f.maxlen();
    if ell > ORACLE_DEPTH_CAP {
        return Err(Error::DepthCap(ell, ORACLE_DEPTH_CAP));
    }
    let scan = |pairs: &[(Tuple, Tuple)]| {
        let mut function = true;
        let mut total = true;
        for x in Tuple::all_of_length(f.n, ell) {
            let mut values = pairs
                .iter()
                .filter(|(p, _)| p.is_initial_factor_of(&x))
                .map(|(p, q)| q.concat(&p.strip(&x).expect("initial factor")));
            match values.next() {
                None => total = false,
                Some(v) => function &= values.all(|w| w == v),
            }
        }
        (function, total)
    };
    let (q1, q3) = scan(&f.pairs);
    let (q2, q4) = scan(&f.inverse().pairs);
    Ok(TableChecks {
        q1,
        q2,
        q3,
        q4,
        q5: q1 && q2 && q3 && q4,
        witness: None,
    })
}

/// Tuples with every coordinate of length ≤ L, indexed densely.
struct Lattice {
    n: usize,
    depth: usize,
    radix: usize,
}

impl Lattice {
    fn new(n: usize, depth: usize) -> Result<Lattice> {
        let radix = (1usize << (depth + 1)) - 1;
        let fits = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(radix).filter(|&s| s <= LATTICE_CAP));
        if fits.is_none() {
            return Err(Error::DepthCap(depth, depth));
        }
        Ok(Lattice { n, depth, radix })
    }

    fn size(&self) -> usize {
        self.radix.pow(self.n as u32)
    }

    fn coord_index(s: &BitString) -> usize {
        let v = s.bits().iter().fold(0usize, |acc, &b| 2 * acc + b as usize);
        (1usize << s.len()) - 1 + v
    }

    fn coord_string(h: usize) -> BitString {
        let len = (usize::BITS - 1 - (h + 1).leading_zeros()) as usize;
        BitString::from_int((h + 1 - (1usize << len)) as u64, len)
    }

    fn index(&self, t: &Tuple) -> usize {
        t.coords()
            .iter()
            .fold(0, |acc, c| acc * self.radix + Self::coord_index(c))
    }

    fn tuple(&self, mut idx: usize) -> Tuple {
        let mut coords = vec![BitString::empty(); self.n];
        for i in (0..self.n).rev() {
            coords[i] = Self::coord_string(idx % self.radix);
            idx /= self.radix;
        }
        Tuple::new(coords)
    }

    /// All tuples, longest total length first.
    fn descending(&self) -> Vec<Tuple> {
        let mut all: Vec<Tuple> = (0..self.size()).map(|i| self.tuple(i)).collect();
        all.sort_by_key(|t| std::cmp::Reverse(t.total_len()));
        all
    }
}

struct Extender<'a> {
    f: &'a NTable,
    members: HashMap<&'a Tuple, &'a Tuple>,
    lattice: Lattice,
    vals: Vec<Option<Tuple>>,
}

impl<'a> Extender<'a> {
    fn new(f: &'a NTable) -> Result<Extender<'a>> {
        let checks = table_checks(f)?;
        if !checks.q1 {
            return Err(Error::NotAFunction(checks.witness.unwrap_or_default()));
        }
        if !checks.q2 {
            return Err(Error::NotInjective(checks.witness.unwrap_or_default()));
        }
        let lattice = Lattice::new(f.n, f.domain_maxlen())?;
        Ok(Extender {
            f,
            members: f.pairs.iter().map(|(p, q)| (p, q)).collect(),
            vals: vec![None; lattice.size()],
            lattice,
        })
    }

    /// The value at t obtained by merging the two children along coordinate i.
    fn merged(&self, t: &Tuple, i: usize) -> Option<Tuple> {
        let a = self.vals[self.lattice.index(&t.with_bit(i, 0))].as_ref()?;
        let b = self.vals[self.lattice.index(&t.with_bit(i, 1))].as_ref()?;
        if a.coord(i).last() != Some(0) || b.coord(i).last() != Some(1) {
            return None;
        }
        let y = a.parent(i).expect("nonempty coordinate");
        (b.parent(i).as_ref() == Some(&y)).then_some(y)
    }

    fn direct(&self, t: &Tuple) -> Option<Tuple> {
        if let Some(q) = self.members.get(t) {
            return Some((*q).clone());
        }
        if t.min_len() < self.lattice.depth {
            return None;
        }
        self.f
            .pairs
            .iter()
            .find(|(p, _)| p.is_initial_factor_of(t))
            .map(|(p, q)| q.concat(&p.strip(t).expect("initial factor")))
    }

    fn short_coords(&self, t: &Tuple) -> Vec<usize> {
        (0..self.lattice.n)
            .filter(|&i| t.coord(i).len() < self.lattice.depth)
            .collect()
    }

    /// The ≤_init-minimal tuples of the maximal domain, with their values.
    fn minimal(self) -> NTable {
        let mut pairs = Vec::new();
        for (idx, v) in self.vals.iter().enumerate() {
            let Some(v) = v else { continue };
            let t = self.lattice.tuple(idx);
            let has_defined_parent =
                (0..self.lattice.n).any(|i| t.parent(i).is_some_and(|p| self.vals[self.lattice.index(&p)].is_some()));
            if !has_defined_parent {
                pairs.push((t, v.clone()));
            }
        }
        NTable::candidate(pairs).expect("the table's own domain is defined")
    }
}

/// The unique maximal right ideal morphism extending f.
///
/// Every minimal element of the maximal domain has coordinates of length at
/// most L = maxlen(domC f), and t is in the maximal domain iff it is in the
/// ideal of domC f or both children along one coordinate shorter than L are,
/// with values y·0 and y·1 in that coordinate. The table is filled from the
/// longest tuples down.
pub fn maximal_extension_n(f: &NTable) -> Result<NTable> {
    let mut e = Extender::new(f)?;
    for t in e.lattice.descending() {
        let v = match e.short_coords(&t).first() {
            _ if e.members.contains_key(&t) => e.direct(&t),
            Some(&i) => e.merged(&t, i),
            None => e.direct(&t),
        };
        let idx = e.lattice.index(&t);
        e.vals[idx] = v;
    }
    Ok(e.minimal())
}

/// The same extension by saturation: sibling merges in random order until nothing changes.
pub fn maximal_extension_n_saturating<R: Rng + ?Sized>(f: &NTable, rng: &mut R) -> Result<NTable> {
    let mut e = Extender::new(f)?;
    let mut order: Vec<Tuple> = (0..e.lattice.size()).map(|i| e.lattice.tuple(i)).collect();
    loop {
        order.shuffle(rng);
        let mut changed = false;
        for t in &order {
            let idx = e.lattice.index(t);
            if e.vals[idx].is_some() {
                continue;
            }
            let mut coords = e.short_coords(t);
            coords.shuffle(rng);
            let v = e.direct(t).or_else(|| coords.iter().find_map(|&i| e.merged(t, i)));
            if v.is_some() {
                e.vals[idx] = v;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(e.minimal())
}

/// f ∘ g, maximally extended.
pub fn compose_n(f: &NTable, g: &NTable) -> Result<NTable> {
    maximal_extension_n(&compose_raw_n(f, g)?)
}

/// f ∘ g as an unreduced table: every (p → q) ∈ g meets every (r → s) ∈ f at q ∨ r.
pub fn compose_raw_n(f: &NTable, g: &NTable) -> Result<NTable> {
    let mut pairs = Vec::new();
    for (p, q) in &g.pairs {
        for (r, s) in &f.pairs {
            if let Some(j) = q.join(r) {
                let u = q.strip(&j).expect("join extends q");
                let v = r.strip(&j).expect("join extends r");
                pairs.push((p.concat(&u), s.concat(&v)));
            }
        }
    }
    let mut minimal: Vec<(Tuple, Tuple)> = Vec::new();
    pairs.sort();
    pairs.dedup();
    for (i, (a, b)) in pairs.iter().enumerate() {
        let dominated = pairs
            .iter()
            .enumerate()
            .any(|(k, (c, _))| k != i && c != a && c.is_initial_factor_of(a));
        if !dominated {
            minimal.push((a.clone(), b.clone()));
        }
    }
    if minimal.is_empty() {
        return Err(Error::EmptyInput);
    }
    NTable::candidate(minimal)
}

pub fn inverse_n(f: &NTable) -> NTable {
    f.inverse()
}

/// Equality as right ideal morphisms: the maximal extensions coincide.
pub fn equals_n(f: &NTable, g: &NTable) -> Result<bool> {
    Ok(maximal_extension_n(f)? == maximal_extension_n(g)?)
}

/// Equality by the action on nA^L, L = the longer domain depth.
pub fn equals_n_oracle(f: &NTable, g: &NTable) -> Result<bool> {
    let depth = f.domain_maxlen().max(g.domain_maxlen());
    if depth > ORACLE_DEPTH_CAP {
        return Err(Error::DepthCap(depth, ORACLE_DEPTH_CAP));
    }
    Ok(Tuple::all_of_length(f.n, depth).all(|x| f.apply(&x) == g.apply(&x)))
}

pub fn is_identity_n(f: &NTable) -> Result<bool> {
    equals_n(f, &NTable::identity(f.n))
}

fn pair(a: &str, b: &str) -> Tuple {
    Tuple::new(vec![a.parse().expect("bits"), b.parse().expect("bits")])
}

/// σ = {((ε,0),(0,ε)), ((ε,1),(1,ε))}: moves the head of coordinate 2 to the front of coordinate 1.
pub fn sigma_element() -> NTable {
    NTable::group([(pair("", "0"), pair("0", "")), (pair("", "1"), pair("1", ""))]).expect("σ")
}

/// γ × 1: (u, v) ↦ (γ(u), v).
pub fn times_one(g: &VTable) -> NTable {
    NTable::candidate(g.pairs().iter().map(|(p, q)| {
        (
            Tuple::new(vec![p.clone(), BitString::empty()]),
            Tuple::new(vec![q.clone(), BitString::empty()]),
        )
    }))
    .expect("nonempty table")
}

pub const SIGMA: &str = "sigma";
pub const TAU12: &str = "t12*1";

/// Name of γ × 1 in an embedded generating set.
pub fn embedded_name(name: &str) -> String {
    format!("{name}*1")
}

/// A finite generating set of 2V elements; tables are stored maximally extended.
#[derive(Clone, Default, Debug)]
pub struct NGenSet {
    tables: BTreeMap<String, (NTable, NTable)>,
}

impl NGenSet {
    pub fn new() -> NGenSet {
        NGenSet::default()
    }

    pub fn insert(&mut self, name: &str, table: &NTable) -> Result<()> {
        let t = maximal_extension_n(table)?;
        let inv = maximal_extension_n(&table.inverse())?;
        self.tables.insert(name.to_string(), (t, inv));
        Ok(())
    }

    /// {γ × 1 : γ ∈ Γ} ∪ {σ, τ₁₂ × 1}.
    pub fn embedded(g: &GenSet) -> Result<NGenSet> {
        let mut s = NGenSet::new();
        for (name, t) in g.iter() {
            s.insert(&embedded_name(name), &times_one(t))?;
        }
        s.insert(SIGMA, &sigma_element())?;
        s.insert(TAU12, &times_one(&crate::eval_v::tau_table(1)))?;
        Ok(s)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.tables.keys().map(String::as_str)
    }

    pub fn get(&self, name: &str, inverse: bool) -> Result<&NTable> {
        let (t, i) = self
            .tables
            .get(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(if inverse { i } else { t })
    }

    fn token_table(&self, t: &Token) -> Result<&NTable> {
        match t {
            Token::Gen { name, inverse } => self.get(name, *inverse),
            Token::Tau(_) => Err(Error::UnknownGenerator(t.to_string())),
        }
    }

    /// λ: the longest coordinate in any generator table.
    pub fn lambda(&self) -> usize {
        self.tables
            .values()
            .map(|(t, i)| t.maxlen().max(i.maxlen()))
            .max()
            .unwrap_or(0)
    }
}

/// w_n ∘ … ∘ w_1 applied one table at a time.
pub fn sequential_apply_n(w: &GenWord, x: &Tuple, g: &NGenSet) -> Result<ApplyOutcomeN> {
    let mut cur = x.clone();
    for t in w.application_order() {
        match g.token_table(t)?.apply(&cur) {
            ApplyOutcomeN::Value(v) => cur = v,
            _ => return Ok(ApplyOutcomeN::TooShort),
        }
    }
    Ok(ApplyOutcomeN::Value(cur))
}

/// E_w as a maximally extended table.
pub fn word_to_element_n(w: &GenWord, g: &NGenSet) -> Result<NTable> {
    let mut acc = NTable::identity(2);
    for t in w.application_order() {
        acc = compose_n(g.token_table(t)?, &acc)?;
    }
    Ok(acc)
}

/// λ·|w|; inputs whose shortest coordinate reaches this are long.
pub fn long_input_threshold_n(w: &GenWord, g: &NGenSet) -> usize {
    g.lambda() * w.len()
}

pub fn classify_n(w: &GenWord, x: &Tuple, g: &NGenSet) -> Result<InputClass> {
    if sequential_apply_n(w, x, g)?.is_value() {
        return Ok(InputClass::Long);
    }
    Ok(if word_to_element_n(w, g)?.apply(x).is_value() {
        InputClass::Short
    } else {
        InputClass::TooShort
    })
}

/// E_w(x) = y: sequential application when defined, the extended composite otherwise.
pub fn eval2v(w: &GenWord, x: &Tuple, y: &Tuple, g: &NGenSet) -> Result<bool> {
    if let ApplyOutcomeN::Value(v) = sequential_apply_n(w, x, g)? {
        return Ok(&v == y);
    }
    Ok(word_to_element_n(w, g)?.apply(x).value() == Some(y))
}

/// γ ↦ γ×1 and τ_{i,i+1} ↦ σ^{i−1} (τ₁₂×1) σ^{−(i−1)}.
pub fn embed_v_to_2v(w: &GenWord) -> GenWord {
    let mut out = Vec::new();
    for t in w.tokens() {
        match t {
            Token::Gen { name, inverse } => out.push(Token::Gen {
                name: embedded_name(name),
                inverse: *inverse,
            }),
            Token::Tau(i) => {
                out.extend(std::iter::repeat_n(Token::gen(SIGMA), i - 1));
                out.push(Token::gen(TAU12));
                out.extend(std::iter::repeat_n(Token::gen_inv(SIGMA), i - 1));
            }
        }
    }
    GenWord::new(out)
}

/// A random maximal joinless code built by splitting members along random coordinates.
pub fn random_joinless_code<R: Rng + ?Sized>(rng: &mut R, n: usize, size: usize, maxlen: usize) -> TupleCode {
    let mut members = vec![Tuple::empty(n)];
    while members.len() < size {
        let options: Vec<(usize, usize)> = (0..members.len())
            .flat_map(|k| (0..n).map(move |i| (k, i)))
            .filter(|&(k, i)| members[k].coord(i).len() < maxlen)
            .collect();
        let Some(&(k, i)) = options.choose(rng) else { break };
        let t = members.swap_remove(k);
        members.push(t.with_bit(i, 0));
        members.push(t.with_bit(i, 1));
    }
    TupleCode::new(n, members).expect("uniform width")
}

/// A random element of 2V: a bijection between two random maximal joinless codes.
pub fn random_ntable<R: Rng + ?Sized>(rng: &mut R, size: usize, maxlen: usize) -> NTable {
    loop {
        let dom = random_joinless_code(rng, 2, size, maxlen);
        let img = random_joinless_code(rng, 2, dom.len(), maxlen);
        if img.len() != dom.len() {
            continue;
        }
        let mut targets = img.members.clone();
        targets.shuffle(rng);
        return NTable::candidate(dom.members.iter().cloned().zip(targets)).expect("nonempty");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval_v::evaluate;
    use rand::SeedableRng;

    fn tup(s: &str) -> Tuple {
        s.parse().unwrap()
    }

    fn code(items: &[&str]) -> TupleCode {
        TupleCode::new(2, items.iter().map(|s| tup(s))).unwrap()
    }

    fn table(items: &[(&str, &str)]) -> NTable {
        NTable::candidate(items.iter().map(|(a, b)| (tup(a), tup(b)))).unwrap()
    }

    fn f_example() -> NTable {
        table(&[
            ("(0,0)", "(0,0)"),
            ("(1,0)", "(1,0)"),
            ("(0,1)", "(0,1)"),
            ("(1,10)", "(1,11)"),
            ("(1,11)", "(1,10)"),
        ])
    }

    fn f12() -> NTable {
        table(&[
            ("(e,0)", "(e,0)"),
            ("(0,e)", "(0,e)"),
            ("(1,10)", "(1,11)"),
            ("(1,11)", "(1,10)"),
        ])
    }

    #[test]
    fn joins() {
        assert_eq!(join(&tup("(0,e)"), &tup("(e,1)")), Some(tup("(0,1)")));
        assert_eq!(join(&tup("(0,0)"), &tup("(1,e)")), None);
        assert_eq!(join(&tup("(01,1)"), &tup("(01,1)")), Some(tup("(01,1)")));
        assert_eq!(tup("(e,01)").to_string(), "(e,01)");
    }

    #[test]
    fn flavors() {
        let s = code(&["(e,0)", "(0,e)", "(1,1)"]);
        assert_eq!(
            code_flavor_checks(&s),
            FlavorChecks {
                initial_factor: true,
                joinless: false
            }
        );
        assert!(code(&["(0,0)", "(1,0)"]).is_joinless());
        assert!(!code(&["(0,e)", "(00,e)"]).is_initial_factor_code());
    }

    #[test]
    fn join_refinement() {
        let c1 = code(&["(0,e)", "(1,e)"]);
        let c2 = code(&["(e,0)", "(e,1)"]);
        assert_eq!(join_refine(&c1, &c1).unwrap(), c1);
        assert_eq!(
            join_refine(&c1, &c2).unwrap(),
            code(&["(0,0)", "(0,1)", "(1,0)", "(1,1)"])
        );
        assert!(join_refine(&code(&["(0,0)"]), &code(&["(1,1)"])).unwrap().is_empty());
    }

    #[test]
    fn complements() {
        let p = code(&["(11,00)"]);
        let sharp = p_sharp(&p);
        assert!(sharp.contains(&tup("(10,0)")) && sharp.contains(&tup("(10,00)")));
        let c = complement_init(&p).unwrap();
        assert!(!c.members().contains(&tup("(10,00)")));
        assert!(c.members().iter().any(|t| t.is_initial_factor_of(&tup("(10,0)"))));
        assert!(c.len() <= 4);
        let mut all = c.members().to_vec();
        all.push(tup("(11,00)"));
        assert!(is_essential_oracle(&TupleCode::new(2, all).unwrap()).unwrap());
        assert!(complement_init(&code(&["(e,0)", "(0,e)", "(1,1)"])).unwrap().is_empty());
        assert_eq!(complement_init(&TupleCode::empty(2)).unwrap(), code(&["(e,e)"]));
        assert_eq!(complement_init(&code(&["(e,0)", "(0,e)"])).unwrap(), code(&["(1,1)"]));
        assert!(!is_essential(&code(&["(e,0)", "(0,e)"])).unwrap());
        assert!(is_essential(&code(&["(e,0)", "(e,01)", "(0,e)", "(1,1)"])).unwrap());
    }

    #[test]
    fn essentiality() {
        for (c, expect) in [
            (code(&["(e,0)", "(0,e)", "(1,1)"]), true),
            (code(&["(0,0)"]), false),
            (code(&["(e,e)"]), true),
        ] {
            assert_eq!(is_essential(&c).unwrap(), expect, "{c}");
            assert_eq!(is_essential_oracle(&c).unwrap(), expect, "{c}");
        }
    }

    #[test]
    fn table_check_examples() {
        let bad = table(&[("(0,e)", "(00,e)"), ("(e,0)", "(01,e)"), ("(1,1)", "(1,e)")]);
        let c = table_checks(&bad).unwrap();
        assert!(!c.q1);
        assert!(c.witness.is_some());
        assert_eq!(table_checks_oracle(&bad).unwrap().answers(), c.answers());
        let id = NTable::identity(2);
        assert_eq!(table_checks(&id).unwrap().answers(), [true; 5]);
        assert_eq!(table_checks(&f_example()).unwrap().answers(), [true; 5]);
        assert_eq!(table_checks(&sigma_element()).unwrap().answers(), [true; 5]);
    }

    #[test]
    fn example_extension() {
        assert_eq!(maximal_extension_n(&f_example()).unwrap(), f12());
        let f1 = table(&[
            ("(e,0)", "(e,0)"),
            ("(0,1)", "(0,1)"),
            ("(1,10)", "(1,11)"),
            ("(1,11)", "(1,10)"),
        ]);
        let f2 = table(&[
            ("(0,e)", "(0,e)"),
            ("(1,0)", "(1,0)"),
            ("(1,10)", "(1,11)"),
            ("(1,11)", "(1,10)"),
        ]);
        assert_eq!(maximal_extension_n(&f1).unwrap(), f12());
        assert_eq!(maximal_extension_n(&f2).unwrap(), f12());
        let frag = table(&[("(0,0)", "(0,0)"), ("(0,1)", "(0,1)"), ("(1,e)", "(1,e)")]);
        assert_eq!(maximal_extension_n(&frag).unwrap(), NTable::identity(2));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            assert_eq!(maximal_extension_n_saturating(&f_example(), &mut rng).unwrap(), f12());
        }
        let bad = table(&[("(0,e)", "(00,e)"), ("(e,0)", "(01,e)"), ("(1,1)", "(1,e)")]);
        assert!(matches!(maximal_extension_n(&bad), Err(Error::NotAFunction(_))));
    }

    #[test]
    fn sigma() {
        let s = sigma_element();
        assert_eq!(s.apply(&tup("(e,0)")), ApplyOutcomeN::Value(tup("(0,e)")));
        assert_eq!(s.apply(&tup("(e,01)")), ApplyOutcomeN::Value(tup("(0,1)")));
        assert_eq!(s.apply(&tup("(0,e)")), ApplyOutcomeN::TooShort);
        assert!(is_identity_n(&compose_n(&s, &s.inverse()).unwrap()).unwrap());
        let g = NGenSet::embedded(&GenSet::standard()).unwrap();
        let w = embed_v_to_2v(&GenWord::new(vec![Token::Tau(3)]));
        assert_eq!(w.len(), 5);
        for x in BitString::all_of_length(5) {
            let mut b = x.bits().to_vec();
            b.swap(2, 3);
            let expect = Tuple::new(vec![BitString::from_bits(&b), BitString::empty()]);
            let input = Tuple::new(vec![x, BitString::empty()]);
            assert_eq!(
                sequential_apply_n(&w, &input, &g).unwrap(),
                ApplyOutcomeN::Value(expect)
            );
        }
        assert_eq!(embed_v_to_2v(&GenWord::new(vec![Token::Tau(1)])).to_string(), TAU12);
    }

    #[test]
    fn eval2v_examples() {
        let g = NGenSet::embedded(&GenSet::standard()).unwrap();
        let w = GenWord::parse("A*1 A*1^-1").unwrap();
        assert!(eval2v(&w, &tup("(e,e)"), &tup("(e,e)"), &g).unwrap());
        let s = GenWord::parse("sigma").unwrap();
        assert!(eval2v(&s, &tup("(e,1)"), &tup("(1,e)"), &g).unwrap());
        assert!(!eval2v(&s, &tup("(e,1)"), &tup("(e,1)"), &g).unwrap());
        let long = GenWord::parse("sigma A*1 sigma^-1").unwrap();
        let t = long_input_threshold_n(&long, &g);
        let x = Tuple::new(vec![BitString::from_int(5, t), BitString::from_int(2, t)]);
        assert_eq!(classify_n(&long, &x, &g).unwrap(), InputClass::Long);
    }

    #[test]
    fn embedding_agrees() {
        let vg = GenSet::standard();
        let g = NGenSet::embedded(&vg).unwrap();
        let w = GenWord::parse("A B^-1 t2").unwrap();
        let ew = embed_v_to_2v(&w);
        for x in BitString::all_up_to(3) {
            for y in BitString::all_up_to(3) {
                let v = evaluate(&w, &x, &y, &vg).unwrap();
                let xx = Tuple::new(vec![x.clone(), BitString::empty()]);
                let yy = Tuple::new(vec![y.clone(), BitString::empty()]);
                assert_eq!(eval2v(&ew, &xx, &yy, &g).unwrap(), v, "{x} {y}");
            }
        }
    }

    #[test]
    fn compose_and_equality() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let f = random_ntable(&mut rng, 5, 2);
            let g = random_ntable(&mut rng, 4, 2);
            assert!(table_checks(&f).unwrap().q5);
            let id = compose_n(&f, &f.inverse()).unwrap();
            assert!(is_identity_n(&id).unwrap());
            let fg = compose_n(&f, &g).unwrap();
            for x in Tuple::all_of_length(2, 4) {
                let direct = g.apply(&x).value().and_then(|y| f.apply(y).value().cloned());
                assert_eq!(fg.apply(&x).value().cloned(), direct);
            }
            let fe = maximal_extension_n(&f).unwrap();
            assert!(equals_n(&f, &fe).unwrap());
            assert!(equals_n_oracle(&f, &fe).unwrap());
        }
    }
}
