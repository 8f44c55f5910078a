//! Bitstrings over {0,1} and finite prefix codes.
//!
//! Strings order in dictionary order (ε < 0 < 00 < 01 < 1 < ...), which is
//! the lexicographic order of the underlying symbol vectors. Every
//! set-valued result is sorted in that order and deduplicated.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{Num, One};

use crate::error::{Error, Result};
use crate::Kraft;

/// A finite word over {0,1}. The empty word is written `e`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString(Vec<u8>);

impl BitString {
    pub fn empty() -> Self {
        BitString(Vec::new())
    }

    /// Builds from symbols; panics on anything other than 0 or 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        assert!(bits.iter().all(|&b| b < 2), "bit out of range");
        BitString(bits.to_vec())
    }

    pub(crate) fn from_vec_unchecked(bits: Vec<u8>) -> Self {
        BitString(bits)
    }

    /// The `len`-bit string whose bits are those of `value`, most significant first.
    pub fn from_int(value: u64, len: usize) -> Self {
        let bits = (0..len).map(|i| ((value >> (len - 1 - i)) & 1) as u8).collect();
        BitString(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.0
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn push(&mut self, bit: u8) {
        assert!(bit < 2, "bit out of range");
        self.0.push(bit);
    }

    pub fn pushed(&self, bit: u8) -> Self {
        let mut s = self.clone();
        s.push(bit);
        s
    }

    pub fn concat(&self, other: &BitString) -> Self {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        BitString(v)
    }

    pub fn prefix(&self, n: usize) -> Self {
        BitString(self.0[..n].to_vec())
    }

    pub fn suffix_from(&self, n: usize) -> Self {
        BitString(self.0[n..].to_vec())
    }

    /// Drops the last symbol; the parent node in the binary tree.
    pub fn parent(&self) -> Option<Self> {
        if self.is_empty() {
            None
        } else {
            Some(self.prefix(self.len() - 1))
        }
    }

    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        other.0.starts_with(&self.0)
    }

    /// `Some(z)` with `self = p z` when `p` is a prefix of `self`.
    pub fn strip_prefix(&self, p: &BitString) -> Option<Self> {
        self.0.strip_prefix(p.0.as_slice()).map(|z| BitString(z.to_vec()))
    }

    pub fn reversed(&self) -> Self {
        BitString(self.0.iter().rev().copied().collect())
    }

    /// All strings of length `len` in dictionary order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = BitString> {
        assert!(len < 64, "enumeration length too large");
        (0..1u64 << len).map(move |v| BitString::from_int(v, len))
    }

    /// All strings of length at most `len`, shortest first.
    pub fn all_up_to(len: usize) -> impl Iterator<Item = BitString> {
        (0..=len).flat_map(BitString::all_of_length)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for &b in &self.0 {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "ε" {
            return Ok(BitString::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Format(format!("`{s}` is not a bitstring"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(BitString)
    }
}

/// Parses a bitstring literal; panics on malformed input. Intended for tests and constants.
pub fn bs(s: &str) -> BitString {
    s.parse().expect("bitstring literal")
}

pub fn is_prefix(u: &BitString, v: &BitString) -> bool {
    u.is_prefix_of(v)
}

/// Scalars in which a Kraft sum can be accumulated.
///
/// Decisions always use [`Kraft`]; other scalars (for instance `f64`) are
/// for reporting only.
pub trait KraftScalar: Num + Clone {}

impl<T: Num + Clone> KraftScalar for T {}

/// 2^{-len} in the scalar `T`.
pub fn kraft_weight<T: KraftScalar>(len: usize) -> T {
    let two = T::one() + T::one();
    T::one() / num_traits::pow(two, len)
}

/// A finite prefix code, kept sorted in dictionary order.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct PrefixCode {
    members: Vec<BitString>,
}

impl PrefixCode {
    pub fn empty() -> Self {
        PrefixCode { members: Vec::new() }
    }

    /// Validates that the set is prefix-free. Duplicates are merged.
    pub fn new(members: impl IntoIterator<Item = BitString>) -> Result<Self> {
        let mut members: Vec<BitString> = members.into_iter().collect();
        members.sort();
        members.dedup();
        // In dictionary order a prefix is immediately followed by one of its extensions.
        for w in members.windows(2) {
            if w[0].is_prefix_of(&w[1]) {
                return Err(Error::PrefixViolation(w[0].to_string(), w[1].to_string()));
            }
        }
        Ok(PrefixCode { members })
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<BitString>) -> Self {
        PrefixCode { members }
    }

    pub fn members(&self) -> &[BitString] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &BitString) -> bool {
        self.members.binary_search(s).is_ok()
    }

    pub fn maxlen(&self) -> usize {
        self.members.iter().map(BitString::len).max().unwrap_or(0)
    }

    pub fn kraft<T: KraftScalar>(&self) -> T {
        self.members
            .iter()
            .fold(T::zero(), |acc, p| acc + kraft_weight::<T>(p.len()))
    }

    pub fn is_maximal(&self) -> bool {
        self.kraft::<Kraft>().is_one()
    }

    /// The member that is a prefix of `x`, if any.
    pub fn prefix_of(&self, x: &BitString) -> Option<&BitString> {
        // The greatest member not above x is the only candidate.
        let idx = match self.members.binary_search(x) {
            Ok(i) => return Some(&self.members[i]),
            Err(i) => i,
        };
        if idx == 0 {
            return None;
        }
        let cand = &self.members[idx - 1];
        cand.is_prefix_of(x).then_some(cand)
    }

    /// Members having `x` as a strict prefix; a contiguous run in dictionary order.
    pub fn extensions_of(&self, x: &BitString) -> &[BitString] {
        let start = self.members.partition_point(|m| m <= x);
        let end = start + self.members[start..].partition_point(|m| x.is_prefix_of(m));
        &self.members[start..end]
    }

    /// Whether some member is a prefix of `x` or has `x` as a prefix.
    pub fn is_comparable_with(&self, x: &BitString) -> bool {
        self.prefix_of(x).is_some() || !self.extensions_of(x).is_empty()
    }

    pub fn union(&self, other: &PrefixCode) -> Result<PrefixCode> {
        PrefixCode::new(self.members.iter().chain(other.members.iter()).cloned())
    }

    /// All prefixes of members, members included.
    pub fn prefix_closure(&self) -> HashSet<BitString> {
        let mut out = HashSet::new();
        for m in &self.members {
            for i in 0..=m.len() {
                out.insert(m.prefix(i));
            }
        }
        out
    }
}

impl fmt::Display for PrefixCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

pub fn validate_prefix_code(s: impl IntoIterator<Item = BitString>) -> Result<PrefixCode> {
    PrefixCode::new(s)
}

/// The complementary code P' = { xa : x ∈ Spref(P), a ∈ {0,1}, xa ∉ pref(P) }.
///
/// P ∪ P' is maximal and the two ideals are disjoint. `complement(∅) = {ε}`.
pub fn complement(p: &PrefixCode) -> PrefixCode {
    if p.is_empty() {
        return PrefixCode::from_sorted_unchecked(vec![BitString::empty()]);
    }
    let pref = p.prefix_closure();
    let mut out = Vec::new();
    for x in &pref {
        if p.contains(x) {
            continue;
        }
        for a in 0..2 {
            let xa = x.pushed(a);
            if !pref.contains(&xa) {
                out.push(xa);
            }
        }
    }
    out.sort();
    out.dedup();
    PrefixCode::from_sorted_unchecked(out)
}

/// ū = ⋃_j u₁…u_j (flip u_{j+1}), the complement of the singleton {u}.
pub fn complement_single(u: &BitString) -> Result<PrefixCode> {
    if u.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut out: Vec<BitString> = (0..u.len()).map(|j| u.prefix(j).pushed(1 - u.get(j))).collect();
    out.sort();
    Ok(PrefixCode::from_sorted_unchecked(out))
}

/// Splits the shortest member (dictionary-least among the shortest) into its two children.
pub(crate) fn split_shortest(code: &mut Vec<BitString>) {
    let (idx, _) = code
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.len().cmp(&b.1.len()).then(a.1.cmp(b.1)))
        .expect("nonempty code");
    let x = code.remove(idx);
    code.push(x.pushed(0));
    code.push(x.pushed(1));
    code.sort();
}

/// Refines a maximal code until it has exactly `size` members.
pub(crate) fn refine_to_size(code: &PrefixCode, size: usize) -> PrefixCode {
    assert!(size >= code.len(), "cannot coarsen a code");
    let mut members = code.members.clone();
    while members.len() < size {
        split_shortest(&mut members);
    }
    PrefixCode::from_sorted_unchecked(members)
}

/// Complements Q_u of {u} and Q_v of {v} with |Q_u| = |Q_v| = max(|u|, |v|).
pub fn equalize_complements(u: &BitString, v: &BitString) -> Result<(PrefixCode, PrefixCode)> {
    let qu = complement_single(u)?;
    let qv = complement_single(v)?;
    let size = qu.len().max(qv.len());
    Ok((refine_to_size(&qu, size), refine_to_size(&qv, size)))
}

/// Every prefix code whose members have length at most `maxlen`, including ∅.
pub fn all_prefix_codes(maxlen: usize) -> Vec<PrefixCode> {
    // A prefix code is either {ε}, or a choice of sub-code under 0 and under 1.
    fn rec(depth: usize) -> Vec<Vec<BitString>> {
        let mut out = vec![Vec::new(), vec![BitString::empty()]];
        if depth == 0 {
            return out;
        }
        let sub = rec(depth - 1);
        for left in &sub {
            for right in &sub {
                if left.is_empty() && right.is_empty() {
                    continue;
                }
                let mut code: Vec<BitString> = left.iter().map(|s| BitString::from_bits(&[0]).concat(s)).collect();
                code.extend(right.iter().map(|s| BitString::from_bits(&[1]).concat(s)));
                out.push(code);
            }
        }
        out
    }
    rec(maxlen)
        .into_iter()
        .map(|mut m| {
            m.sort();
            PrefixCode::from_sorted_unchecked(m)
        })
        .collect()
}

/// The full binary tree {0,1}^len as a code.
pub fn uniform_code(len: usize) -> PrefixCode {
    PrefixCode::from_sorted_unchecked(BitString::all_of_length(len).collect())
}
