//! Elements of V as finite tables between maximal prefix codes.
//!
//! A table `{(p, q)}` denotes the right ideal morphism `pz ↦ qz`. Two tables
//! denote the same element of V when their maximal extensions coincide, so
//! the derived `PartialEq` is syntactic and [`VTable::equals`] is the group
//! equality.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::codes::{equalize_complements, BitString, PrefixCode};
use crate::error::{Error, Result};

/// Whether both codes are maximal (an element of V) or merely prefix codes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Flavor {
    Group,
    Relaxed,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ApplyOutcome {
    Value(BitString),
    /// The input is a strict prefix of a domain member.
    TooShort,
    /// No domain member is comparable with the input.
    NoPrefix,
}

impl ApplyOutcome {
    pub fn value(&self) -> Option<&BitString> {
        match self {
            ApplyOutcome::Value(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_value(&self) -> bool {
        matches!(self, ApplyOutcome::Value(_))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VTable {
    /// Sorted by domain in dictionary order.
    pairs: Vec<(BitString, BitString)>,
    flavor: Flavor,
}

impl VTable {
    /// Validates a table of V: prefix codes on both sides, a bijection, both codes maximal.
    pub fn new(pairs: impl IntoIterator<Item = (BitString, BitString)>) -> Result<Self> {
        let t = Self::relaxed(pairs)?;
        if !t.domain_code().is_maximal() {
            return Err(Error::NotMaximal(format!("domain code {}", t.domain_code())));
        }
        if !t.image_code().is_maximal() {
            return Err(Error::NotMaximal(format!("image code {}", t.image_code())));
        }
        Ok(VTable {
            flavor: Flavor::Group,
            ..t
        })
    }

    /// Validates a bijection between (not necessarily maximal) prefix codes.
    pub fn relaxed(pairs: impl IntoIterator<Item = (BitString, BitString)>) -> Result<Self> {
        let mut pairs: Vec<(BitString, BitString)> = pairs.into_iter().collect();
        pairs.sort();
        pairs.dedup();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::NotBijective(format!("{} has two images", w[0].0)));
            }
        }
        let mut images: Vec<&BitString> = pairs.iter().map(|(_, q)| q).collect();
        images.sort();
        for w in images.windows(2) {
            if w[0] == w[1] {
                return Err(Error::NotBijective(format!("{} is a repeated image", w[0])));
            }
        }
        PrefixCode::new(pairs.iter().map(|(p, _)| p.clone()))?;
        PrefixCode::new(pairs.iter().map(|(_, q)| q.clone()))?;
        Ok(VTable {
            pairs,
            flavor: Flavor::Relaxed,
        })
    }

    pub(crate) fn from_sorted_unchecked(pairs: Vec<(BitString, BitString)>, flavor: Flavor) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        VTable { pairs, flavor }
    }

    fn from_unsorted_unchecked(mut pairs: Vec<(BitString, BitString)>, flavor: Flavor) -> Self {
        pairs.sort();
        Self::from_sorted_unchecked(pairs, flavor)
    }

    pub fn identity() -> Self {
        VTable::from_sorted_unchecked(vec![(BitString::empty(), BitString::empty())], Flavor::Group)
    }

    /// {(0,1),(1,0)}.
    pub fn bit_swap() -> Self {
        let (z, o) = (BitString::from_bits(&[0]), BitString::from_bits(&[1]));
        VTable::from_sorted_unchecked(vec![(z.clone(), o.clone()), (o, z)], Flavor::Group)
    }

    pub fn pairs(&self) -> &[(BitString, BitString)] {
        &self.pairs
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// ‖g‖: number of pairs.
    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn domain_code(&self) -> PrefixCode {
        PrefixCode::from_sorted_unchecked(self.pairs.iter().map(|(p, _)| p.clone()).collect())
    }

    pub fn image_code(&self) -> PrefixCode {
        let mut v: Vec<BitString> = self.pairs.iter().map(|(_, q)| q.clone()).collect();
        v.sort();
        PrefixCode::from_sorted_unchecked(v)
    }

    pub fn domain_maxlen(&self) -> usize {
        self.pairs.iter().map(|(p, _)| p.len()).max().unwrap_or(0)
    }

    /// Longest string over both codes.
    pub fn maxlen(&self) -> usize {
        self.pairs.iter().map(|(p, q)| p.len().max(q.len())).max().unwrap_or(0)
    }

    fn find_prefix(&self, x: &BitString) -> Option<usize> {
        let idx = self.pairs.partition_point(|(p, _)| p <= x);
        if idx == 0 {
            return None;
        }
        self.pairs[idx - 1].0.is_prefix_of(x).then_some(idx - 1)
    }

    /// Indices of the pairs whose domain strictly extends `x`.
    fn extensions(&self, x: &BitString) -> Range<usize> {
        let start = self.pairs.partition_point(|(p, _)| p <= x);
        let len = self.pairs[start..].partition_point(|(p, _)| x.is_prefix_of(p));
        start..start + len
    }

    pub fn apply(&self, x: &BitString) -> ApplyOutcome {
        if let Some(i) = self.find_prefix(x) {
            let (p, q) = &self.pairs[i];
            let mut bits = q.bits().to_vec();
            bits.extend_from_slice(&x.bits()[p.len()..]);
            return ApplyOutcome::Value(BitString::from_vec_unchecked(bits));
        }
        if self.extensions(x).is_empty() {
            ApplyOutcome::NoPrefix
        } else {
            ApplyOutcome::TooShort
        }
    }

    /// Merges sibling pairs (p0→q0, p1→q1) into p→q until none remain.
    pub fn maximal_extension(&self) -> VTable {
        let maxlen = self.domain_maxlen();
        let mut by_len: Vec<HashMap<BitString, BitString>> = vec![HashMap::new(); maxlen + 1];
        for (p, q) in &self.pairs {
            by_len[p.len()].insert(p.clone(), q.clone());
        }
        // Merges at length l only create pairs of length l-1, so one sweep suffices.
        for len in (1..=maxlen).rev() {
            let zeros: Vec<BitString> = by_len[len].keys().filter(|p| p.last() == Some(0)).cloned().collect();
            for p0 in zeros {
                let parent = p0.parent().expect("nonempty");
                let p1 = parent.pushed(1);
                let (Some(q0), Some(q1)) = (by_len[len].get(&p0), by_len[len].get(&p1)) else {
                    continue;
                };
                if q0.last() != Some(0) || q1.last() != Some(1) {
                    continue;
                }
                let q = q0.parent().expect("nonempty");
                if q1.bits()[..q1.len() - 1] != *q.bits() {
                    continue;
                }
                by_len[len].remove(&p0);
                by_len[len].remove(&p1);
                by_len[len - 1].insert(parent, q);
            }
        }
        let pairs = by_len.into_iter().flat_map(|m| m.into_iter()).collect();
        VTable::from_unsorted_unchecked(pairs, self.flavor)
    }

    /// f∘g without the final extension: g's pairs are split along f's domain code.
    pub fn compose_raw(f: &VTable, g: &VTable) -> VTable {
        let mut out = Vec::with_capacity(g.size().max(f.size()));
        for (p, q) in &g.pairs {
            if let Some(i) = f.find_prefix(q) {
                let (r, s) = &f.pairs[i];
                out.push((p.clone(), s.concat(&q.suffix_from(r.len()))));
            } else {
                for (r, s) in &f.pairs[f.extensions(q)] {
                    out.push((p.concat(&r.suffix_from(q.len())), s.clone()));
                }
            }
        }
        let flavor = if f.flavor == Flavor::Group && g.flavor == Flavor::Group {
            Flavor::Group
        } else {
            Flavor::Relaxed
        };
        VTable::from_unsorted_unchecked(out, flavor)
    }

    /// f∘g (g applied first), maximally extended.
    pub fn compose(f: &VTable, g: &VTable) -> VTable {
        Self::compose_raw(f, g).maximal_extension()
    }

    /// `self ∘ other`.
    pub fn then_after(&self, other: &VTable) -> VTable {
        Self::compose(self, other)
    }

    pub fn inverse(&self) -> VTable {
        let pairs = self.pairs.iter().map(|(p, q)| (q.clone(), p.clone())).collect();
        VTable::from_unsorted_unchecked(pairs, self.flavor)
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.iter().all(|(p, q)| p == q)
    }

    /// Group equality: identical maximal extensions.
    pub fn equals(&self, other: &VTable) -> bool {
        self.maximal_extension().pairs == other.maximal_extension().pairs
    }

    /// The finite action on {0,1}^L, defined for `L ≥` the longest domain member.
    pub fn action_at_depth(&self, depth: usize) -> Result<BTreeMap<BitString, BitString>> {
        let required = self.domain_maxlen();
        if depth < required {
            return Err(Error::DepthTooSmall { depth, required });
        }
        Ok(BitString::all_of_length(depth)
            .filter_map(|x| match self.apply(&x) {
                ApplyOutcome::Value(y) => Some((x, y)),
                _ => None,
            })
            .collect())
    }

    /// Whether f(xz) = yz for every z of length maxlen(f); by the finite/infinite
    /// action equivalence this decides f(x) = y for the maximally extended f.
    pub fn eval_oracle(&self, x: &BitString, y: &BitString) -> bool {
        let depth = self.maxlen();
        BitString::all_of_length(depth).all(|z| {
            matches!(self.apply(&x.concat(&z)), ApplyOutcome::Value(v)
                if v.len() == y.len() + z.len()
                    && v.bits()[..y.len()] == *y.bits()
                    && v.bits()[y.len()..] == *z.bits())
        })
    }

    /// Restricts the domain to the ideal generated by the maximal code `b`.
    pub fn restrict_to_code(&self, b: &PrefixCode) -> VTable {
        let mut out = Vec::new();
        for (x, fx) in &self.pairs {
            if b.prefix_of(x).is_some() {
                out.push((x.clone(), fx.clone()));
            } else {
                for m in b.extensions_of(x) {
                    out.push((m.clone(), fx.concat(&m.suffix_from(x.len()))));
                }
            }
        }
        VTable::from_unsorted_unchecked(out, Flavor::Relaxed)
    }

    /// Splits pairs until every domain and image member lies in the ideal of the maximal code `b`.
    pub fn restrict_both_to_code(&self, b: &PrefixCode) -> VTable {
        let mut stack: Vec<(BitString, BitString)> = self.restrict_to_code(b).pairs;
        let mut out = Vec::new();
        while let Some((p, q)) = stack.pop() {
            if b.prefix_of(&q).is_some() {
                out.push((p, q));
            } else {
                for a in 0..2 {
                    stack.push((p.pushed(a), q.pushed(a)));
                }
            }
        }
        VTable::from_unsorted_unchecked(out, Flavor::Relaxed)
    }

    /// Relabels a relaxed table as an element of V after checking maximality.
    pub fn into_group(self) -> Result<VTable> {
        VTable::new(self.pairs)
    }

    /// The identity table on the members of a code.
    pub fn identity_on(code: &PrefixCode) -> VTable {
        let pairs = code.members().iter().map(|p| (p.clone(), p.clone())).collect();
        let flavor = if code.is_maximal() {
            Flavor::Group
        } else {
            Flavor::Relaxed
        };
        VTable::from_sorted_unchecked(pairs, flavor)
    }

    /// The order-preserving bijection between two codes of equal size.
    pub fn order_preserving(dom: &PrefixCode, img: &PrefixCode) -> Result<VTable> {
        if dom.len() != img.len() {
            return Err(Error::NotBijective(format!("{} and {} differ in size", dom, img)));
        }
        let pairs = dom
            .members()
            .iter()
            .cloned()
            .zip(img.members().iter().cloned())
            .collect();
        let flavor = if dom.is_maximal() && img.is_maximal() {
            Flavor::Group
        } else {
            Flavor::Relaxed
        };
        Ok(VTable::from_sorted_unchecked(pairs, flavor))
    }
}

impl fmt::Display for VTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (p, q)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({p},{q})")?;
        }
        write!(f, "}}")
    }
}

/// A table ψ with ψ(u) = v and ‖ψ‖ = 1 + max(|u|, |v|).
pub fn transitive_element(u: &BitString, v: &BitString) -> Result<VTable> {
    let (qu, qv) = equalize_complements(u, v)?;
    let mut pairs = vec![(u.clone(), v.clone())];
    pairs.extend(qu.members().iter().cloned().zip(qv.members().iter().cloned()));
    VTable::new(pairs)
}

/// A uniformly shaped random maximal prefix code with `size` members and
/// no member longer than `maxlen`.
pub fn random_maximal_code<R: Rng + ?Sized>(rng: &mut R, size: usize, maxlen: usize) -> PrefixCode {
    assert!(size >= 1 && (maxlen >= 63 || size <= 1usize << maxlen));
    let mut leaves = vec![BitString::empty()];
    while leaves.len() < size {
        let candidates: Vec<usize> = (0..leaves.len()).filter(|&i| leaves[i].len() < maxlen).collect();
        let i = *candidates.choose(rng).expect("room to split");
        let x = leaves.swap_remove(i);
        leaves.push(x.pushed(0));
        leaves.push(x.pushed(1));
    }
    leaves.sort();
    PrefixCode::from_sorted_unchecked(leaves)
}

/// A random element of V with both codes of depth at most `maxlen`.
pub fn random_table<R: Rng + ?Sized>(rng: &mut R, maxlen: usize) -> VTable {
    let cap = 1usize << maxlen.min(20);
    let size = rng.gen_range(1..=cap.min(3 * maxlen.max(1) + 1));
    let dom = random_maximal_code(rng, size, maxlen);
    let img = random_maximal_code(rng, size, maxlen);
    let mut targets = img.members().to_vec();
    targets.shuffle(rng);
    VTable::from_sorted_unchecked(dom.members().iter().cloned().zip(targets).collect(), Flavor::Group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::bs;

    fn t(pairs: &[(&str, &str)]) -> VTable {
        VTable::new(pairs.iter().map(|(p, q)| (bs(p), bs(q)))).unwrap()
    }

    fn gamma() -> VTable {
        t(&[("0", "00"), ("10", "01"), ("11", "1")])
    }

    #[test]
    fn validate_examples() {
        assert!(VTable::new(gamma().pairs().to_vec()).is_ok());
        assert!(matches!(
            VTable::new(vec![(bs("0"), bs("0")), (bs("1"), bs("0"))]),
            Err(Error::NotBijective(_))
        ));
        assert!(matches!(
            VTable::new(vec![(bs("0"), bs("00")), (bs("10"), bs("01"))]),
            Err(Error::NotMaximal(_))
        ));
    }

    #[test]
    fn apply_examples() {
        let g = gamma();
        assert_eq!(g.apply(&bs("101")), ApplyOutcome::Value(bs("011")));
        assert_eq!(g.apply(&bs("1")), ApplyOutcome::TooShort);
        assert_eq!(g.apply(&bs("0")), ApplyOutcome::Value(bs("00")));
        let partial = VTable::relaxed(vec![(bs("0"), bs("1"))]).unwrap();
        assert_eq!(partial.apply(&bs("1")), ApplyOutcome::NoPrefix);
    }

    #[test]
    fn extension_examples() {
        assert_eq!(
            t(&[("00", "10"), ("01", "11"), ("1", "0")]).maximal_extension(),
            t(&[("0", "1"), ("1", "0")])
        );
        assert_eq!(VTable::bit_swap().maximal_extension(), VTable::bit_swap());
        assert_eq!(
            t(&[("0", "0"), ("10", "10"), ("11", "11")]).maximal_extension(),
            VTable::identity()
        );
    }

    #[test]
    fn compose_examples() {
        let g = gamma();
        assert_eq!(VTable::compose(&g, &g.inverse()), VTable::identity());
        assert_eq!(VTable::compose(&VTable::identity(), &g), g.maximal_extension());
        let gg = VTable::compose(&g, &g);
        for x in BitString::all_of_length(4) {
            let once = g.apply(&x).value().cloned().unwrap();
            let twice = g.apply(&once).value().cloned().unwrap();
            assert_eq!(gg.apply(&x), ApplyOutcome::Value(twice));
        }
        assert_eq!(gg.apply(&bs("1011")), ApplyOutcome::Value(bs("00111")));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(VTable::bit_swap().inverse(), VTable::bit_swap());
        assert_eq!(VTable::identity().inverse(), VTable::identity());
        assert_eq!(gamma().inverse(), t(&[("00", "0"), ("01", "10"), ("1", "11")]));
    }

    #[test]
    fn identity_and_equality() {
        assert!(t(&[("0", "0"), ("10", "10"), ("11", "11")]).is_identity());
        assert!(!VTable::bit_swap().is_identity());
        assert!(VTable::identity().is_identity());
        let split = t(&[("00", "01"), ("01", "00"), ("1", "1")]);
        assert!(!split.equals(&gamma()));
        let refined = t(&[("00", "000"), ("01", "001"), ("10", "01"), ("11", "1")]);
        assert!(refined.equals(&gamma()));
        assert!(!VTable::identity().equals(&VTable::bit_swap()));
    }

    #[test]
    fn action_examples() {
        let id = VTable::identity().action_at_depth(2).unwrap();
        assert!(id.iter().all(|(x, y)| x == y) && id.len() == 4);
        let sw = VTable::bit_swap().action_at_depth(1).unwrap();
        assert_eq!(sw[&bs("0")], bs("1"));
        let g = gamma().action_at_depth(2).unwrap();
        assert_eq!(g[&bs("00")], bs("000"));
        assert_eq!(g[&bs("01")], bs("001"));
        assert_eq!(g[&bs("10")], bs("01"));
        assert_eq!(g[&bs("11")], bs("1"));
        assert_eq!(
            gamma().action_at_depth(1),
            Err(Error::DepthTooSmall { depth: 1, required: 2 })
        );
    }

    #[test]
    fn oracle_examples() {
        assert!(VTable::identity().eval_oracle(&bs("01"), &bs("01")));
        assert!(VTable::bit_swap().eval_oracle(&bs("0"), &bs("1")));
        assert!(!gamma().eval_oracle(&bs("0"), &bs("01")));
        assert!(gamma().eval_oracle(&bs("0"), &bs("00")));
        assert!(!gamma().eval_oracle(&bs("1"), &bs("0")));
    }

    #[test]
    fn restrict_examples() {
        let b2 = crate::codes::uniform_code(2);
        let r = gamma().restrict_to_code(&b2);
        assert_eq!(
            r.pairs(),
            t(&[("00", "000"), ("01", "001"), ("10", "01"), ("11", "1")]).pairs()
        );
        let b1 = crate::codes::uniform_code(1);
        assert_eq!(
            VTable::identity().restrict_to_code(&b1).pairs(),
            t(&[("0", "0"), ("1", "1")]).pairs()
        );
        assert_eq!(
            VTable::bit_swap().restrict_to_code(&b1).pairs(),
            VTable::bit_swap().pairs()
        );
    }

    #[test]
    fn transitive_examples() {
        let psi = transitive_element(&bs("0"), &bs("1")).unwrap();
        assert_eq!(psi, VTable::bit_swap());
        let psi = transitive_element(&bs("11"), &bs("0")).unwrap();
        assert_eq!(psi.size(), 3);
        assert!(psi.eval_oracle(&bs("11"), &bs("0")));
        let psi = transitive_element(&bs("0"), &bs("0")).unwrap();
        assert_eq!(psi.size(), 2);
        assert!(psi.pairs().contains(&(bs("0"), bs("0"))));
    }
}
