//! Bitset algebra on the power set of a finite group.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, MAX_ORDER};

/// Largest group order for which the Grassmannian is enumerated.
pub const GRASSMANNIAN_ORDER_CAP: usize = 24;

/// Largest number of sections `|b|^[Ω:b]` that will be enumerated.
pub const SECTION_CAP: u64 = 1 << 16;

/// A subset of a group of order `universe`, one bit per element.
///
/// Subsets are ordered by size, then by bit pattern, so sorted listings are stable.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    bits: u128,
    universe: u8,
}

impl Subset {
    pub fn empty(universe: usize) -> Self {
        debug_assert!(universe <= MAX_ORDER);
        Subset {
            bits: 0,
            universe: universe as u8,
        }
    }

    pub fn full(universe: usize) -> Self {
        let bits = if universe == 128 {
            u128::MAX
        } else {
            (1u128 << universe) - 1
        };
        Subset {
            bits,
            universe: universe as u8,
        }
    }

    pub fn singleton(universe: usize, e: Elem) -> Self {
        let mut s = Self::empty(universe);
        s.insert(e);
        s
    }

    pub fn from_bits(universe: usize, bits: u128) -> Self {
        Subset {
            bits: bits & Self::full(universe).bits,
            universe: universe as u8,
        }
    }

    pub fn from_elements(universe: usize, elems: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let mut s = Self::empty(universe);
        for e in elems {
            if e >= universe {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    order: universe,
                });
            }
            s.insert(e);
        }
        Ok(s)
    }

    pub(crate) fn from_iter_unchecked(universe: usize, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = Self::empty(universe);
        for e in elems {
            s.insert(e);
        }
        s
    }

    /// Parses `"0,2,4"`; `""` and `"{}"` denote the empty set.
    pub fn parse(universe: usize, literal: &str) -> Result<Self> {
        let trimmed = literal.trim();
        let body = trimmed
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .unwrap_or(trimmed);
        let mut elems = Vec::new();
        for token in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let e: usize = token
                .parse()
                .map_err(|_| Error::ParseSubset(literal.to_string()))?;
            elems.push(e);
        }
        Self::from_elements(universe, elems)
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        e < 128 && self.bits >> e & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, e: Elem) {
        self.bits |= 1u128 << e;
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> SubsetIter {
        SubsetIter { bits: self.bits }
    }

    pub fn min(&self) -> Option<Elem> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset {
            bits: self.bits | other.bits,
            universe: self.universe,
        }
    }

    /// `x ∧ y`.
    pub fn meet(&self, other: &Subset) -> Subset {
        Subset {
            bits: self.bits & other.bits,
            universe: self.universe,
        }
    }

    pub fn complement(&self) -> Subset {
        Subset::from_bits(self.universe(), !self.bits)
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersects(&self, other: &Subset) -> bool {
        self.bits & other.bits != 0
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.universe, self.len(), self.bits).cmp(&(other.universe, other.len(), other.bits))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub struct SubsetIter {
    bits: u128,
}

impl Iterator for SubsetIter {
    type Item = Elem;

    fn next(&mut self) -> Option<Elem> {
        if self.bits == 0 {
            return None;
        }
        let e = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(e)
    }
}

impl IntoIterator for &Subset {
    type Item = Elem;
    type IntoIter = SubsetIter;

    fn into_iter(self) -> SubsetIter {
        self.iter()
    }
}

/// Which side a graph or projection is taken on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

fn check2(g: &FiniteGroup, x: &Subset, y: &Subset) -> Result<()> {
    g.check(x)?;
    g.check(y)
}

/// `t + x`.
#[inline]
pub fn translate_left(g: &FiniteGroup, t: Elem, x: &Subset) -> Subset {
    let mut out = Subset::empty(g.order());
    for e in x {
        out.insert(g.add(t, e));
    }
    out
}

/// `x + t`.
#[inline]
pub fn translate_right(g: &FiniteGroup, x: &Subset, t: Elem) -> Subset {
    let mut out = Subset::empty(g.order());
    for e in x {
        out.insert(g.add(e, t));
    }
    out
}

/// `x + y = {ξ + η}`; empty if either operand is empty.
pub fn sumset(g: &FiniteGroup, x: &Subset, y: &Subset) -> Result<Subset> {
    check2(g, x, y)?;
    Ok(sumset_unchecked(g, x, y))
}

pub(crate) fn sumset_unchecked(g: &FiniteGroup, x: &Subset, y: &Subset) -> Subset {
    let mut out = Subset::empty(g.order());
    for xi in x {
        out = out.union(&translate_left(g, xi, y));
    }
    out
}

/// `-x = {-ξ}`.
pub fn negate(g: &FiniteGroup, x: &Subset) -> Result<Subset> {
    g.check(x)?;
    Ok(negate_unchecked(g, x))
}

pub(crate) fn negate_unchecked(g: &FiniteGroup, x: &Subset) -> Subset {
    Subset::from_iter_unchecked(g.order(), x.iter().map(|e| g.neg(e)))
}

pub fn is_symmetric(g: &FiniteGroup, x: &Subset) -> bool {
    negate_unchecked(g, x) == *x
}

/// `x ⊤ y`: every `ω` decomposes uniquely as `ξ + η` with `ξ ∈ x`, `η ∈ y`.
pub fn is_left_transversal(g: &FiniteGroup, x: &Subset, y: &Subset) -> Result<bool> {
    check2(g, x, y)?;
    Ok(transversal_unchecked(g, x, y))
}

pub(crate) fn transversal_unchecked(g: &FiniteGroup, x: &Subset, y: &Subset) -> bool {
    // |x|·|y| = |Ω| plus surjectivity of (ξ, η) ↦ ξ + η gives bijectivity
    x.len() * y.len() == g.order() && sumset_unchecked(g, x, y) == g.full()
}

/// `x ∈ ^⊤b`, i.e. `x ⊤ b`.
pub fn in_left_transversal_set(g: &FiniteGroup, x: &Subset, b: &Subset) -> bool {
    transversal_unchecked(g, x, b)
}

/// `x ∈ a^⊤`, i.e. `a ⊤ x`.
pub fn in_right_transversal_set(g: &FiniteGroup, a: &Subset, x: &Subset) -> bool {
    transversal_unchecked(g, a, x)
}

pub fn is_subgroup(g: &FiniteGroup, x: &Subset) -> Result<bool> {
    g.check(x)?;
    Ok(x.contains(g.identity())
        && x.iter()
            .all(|u| x.contains(g.neg(u)) && x.iter().all(|v| x.contains(g.add(u, v)))))
}

/// All subgroups, sorted by (size, bit pattern).
///
/// Starts from the cyclic subgroups and closes under joins with them.
pub fn grassmannian(g: &FiniteGroup) -> Result<Vec<Subset>> {
    if g.order() > GRASSMANNIAN_ORDER_CAP {
        return Err(Error::CorpusLimit {
            what: "group order for subgroup enumeration",
            size: g.order(),
            limit: GRASSMANNIAN_ORDER_CAP,
        });
    }
    Ok(grassmannian_unbounded(g))
}

pub(crate) fn grassmannian_unbounded(g: &FiniteGroup) -> Vec<Subset> {
    let mut cyclic: Vec<Subset> = g
        .elements()
        .map(|e| g.closure(Subset::singleton(g.order(), e)))
        .collect();
    cyclic.sort();
    cyclic.dedup();
    let mut found: std::collections::BTreeSet<Subset> = cyclic.iter().copied().collect();
    let mut frontier: Vec<Subset> = cyclic.clone();
    while let Some(h) = frontier.pop() {
        for c in &cyclic {
            if c.is_subset_of(&h) {
                continue;
            }
            let joined = g.closure(h.union(c));
            if found.insert(joined) {
                frontier.push(joined);
            }
        }
    }
    found.into_iter().collect()
}

/// The set `^⊤b = {x : x ⊤ b}` of sections of `Ω → Ω/b`, as choice
/// functions over the left cosets. Exactly `|b|^[Ω:b]` subsets.
pub fn left_transversal_set(g: &FiniteGroup, b: &Subset) -> Result<Vec<Subset>> {
    let cosets = g.left_cosets(b)?;
    choice_sets(g, &cosets)
}

/// The set `a^⊤ = {x : a ⊤ x}`, as choice functions over the right cosets.
pub fn right_transversal_set(g: &FiniteGroup, a: &Subset) -> Result<Vec<Subset>> {
    let cosets = g.right_cosets(a)?;
    choice_sets(g, &cosets)
}

fn choice_sets(g: &FiniteGroup, cosets: &[Subset]) -> Result<Vec<Subset>> {
    let size = cosets
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
        .unwrap_or(u64::MAX);
    if size > SECTION_CAP {
        return Err(Error::CorpusLimit {
            what: "section count",
            size: size.min(usize::MAX as u64) as usize,
            limit: SECTION_CAP as usize,
        });
    }
    let members: Vec<Vec<Elem>> = cosets.iter().map(|c| c.iter().collect()).collect();
    let mut out = Vec::with_capacity(size as usize);
    let mut pick = vec![0usize; members.len()];
    loop {
        out.push(Subset::from_iter_unchecked(
            g.order(),
            pick.iter().zip(&members).map(|(&i, m)| m[i]),
        ));
        // odometer increment
        let mut k = 0;
        loop {
            if k == pick.len() {
                out.sort();
                return Ok(out);
            }
            pick[k] += 1;
            if pick[k] < members[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

/// The subgroups of a group with both section families of each, computed once.
#[derive(Debug, Clone)]
pub struct SectionAtlas {
    pub subgroups: Vec<Subset>,
    /// `left[i]` is `^⊤b` (all `x` with `x ⊤ b`) for `b = subgroups[i]`.
    pub left: Vec<Vec<Subset>>,
    /// `right[i]` is `a^⊤` (all `x` with `a ⊤ x`) for `a = subgroups[i]`.
    pub right: Vec<Vec<Subset>>,
}

impl SectionAtlas {
    pub fn new(g: &FiniteGroup) -> Result<Self> {
        let subgroups = grassmannian(g)?;
        let left = subgroups
            .iter()
            .map(|b| left_transversal_set(g, b))
            .collect::<Result<_>>()?;
        let right = subgroups
            .iter()
            .map(|a| right_transversal_set(g, a))
            .collect::<Result<_>>()?;
        Ok(SectionAtlas {
            subgroups,
            left,
            right,
        })
    }

    /// `(subgroup, ^⊤subgroup, subgroup^⊤)` triples.
    pub fn iter(&self) -> impl Iterator<Item = (&Subset, &[Subset], &[Subset])> {
        self.subgroups
            .iter()
            .zip(&self.left)
            .zip(&self.right)
            .map(|((s, l), r)| (s, l.as_slice(), r.as_slice()))
    }
}

/// A map `F: y → b` between two subsets of one group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MapGraph {
    domain: Subset,
    codomain: Subset,
    values: Vec<Option<Elem>>,
}

impl fmt::Debug for MapGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.pairs()).finish()
    }
}

impl MapGraph {
    /// Builds `F` from `(η, F(η))` pairs; every `η ∈ domain` must be assigned exactly once.
    pub fn new(
        g: &FiniteGroup,
        domain: Subset,
        codomain: Subset,
        pairs: impl IntoIterator<Item = (Elem, Elem)>,
    ) -> Result<Self> {
        check2(g, &domain, &codomain)?;
        let mut values = vec![None; g.order()];
        for (eta, v) in pairs {
            if !domain.contains(eta) {
                return Err(Error::Map(format!("{eta} is not in the domain {domain}")));
            }
            if !codomain.contains(v) {
                return Err(Error::Map(format!("{v} is not in the codomain {codomain}")));
            }
            if values[eta].replace(v).is_some() {
                return Err(Error::Map(format!("{eta} is assigned twice")));
            }
        }
        if let Some(missing) = domain.iter().find(|&e| values[e].is_none()) {
            return Err(Error::Map(format!("{missing} has no value")));
        }
        Ok(MapGraph {
            domain,
            codomain,
            values,
        })
    }

    /// The constant map onto the identity.
    pub fn zero(g: &FiniteGroup, domain: Subset, codomain: Subset) -> Result<Self> {
        let o = g.identity();
        Self::new(g, domain, codomain, domain.iter().map(|e| (e, o)))
    }

    /// Every map `domain → codomain`, in odometer order.
    pub fn all(g: &FiniteGroup, domain: Subset, codomain: Subset) -> Result<Vec<MapGraph>> {
        let dom: Vec<Elem> = domain.iter().collect();
        let cod: Vec<Elem> = codomain.iter().collect();
        let count = (cod.len() as u64)
            .checked_pow(dom.len() as u32)
            .unwrap_or(u64::MAX);
        if count > SECTION_CAP {
            return Err(Error::CorpusLimit {
                what: "map count",
                size: count.min(usize::MAX as u64) as usize,
                limit: SECTION_CAP as usize,
            });
        }
        let mut out = Vec::with_capacity(count as usize);
        for mut code in 0..count {
            let pairs: Vec<(Elem, Elem)> = dom
                .iter()
                .map(|&d| {
                    let v = cod[(code % cod.len() as u64) as usize];
                    code /= cod.len() as u64;
                    (d, v)
                })
                .collect();
            out.push(Self::new(g, domain, codomain, pairs)?);
        }
        Ok(out)
    }

    pub fn domain(&self) -> Subset {
        self.domain
    }

    pub fn codomain(&self) -> Subset {
        self.codomain
    }

    pub fn get(&self, eta: Elem) -> Option<Elem> {
        self.values.get(eta).copied().flatten()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.domain.iter().map(|e| (e, self.values[e].unwrap()))
    }

    pub fn is_bijective(&self) -> bool {
        let image = Subset::from_iter_unchecked(self.domain.universe(), self.pairs().map(|p| p.1));
        image == self.codomain && self.domain.len() == self.codomain.len()
    }
}

/// Left graph `{η + F(η)}` or right graph `{F(η) + η}`.
pub fn graph_of_map(g: &FiniteGroup, f: &MapGraph, side: Side) -> Subset {
    Subset::from_iter_unchecked(
        g.order(),
        f.pairs().map(|(eta, v)| match side {
            Side::Left => g.add(eta, v),
            Side::Right => g.add(v, eta),
        }),
    )
}

/// The unique `F: y → b` whose left graph is `x`, given `x ⊤ b` and `y ⊤ b`.
pub fn map_from_transversal(g: &FiniteGroup, x: &Subset, y: &Subset, b: &Subset) -> Result<MapGraph> {
    check2(g, x, y)?;
    g.check(b)?;
    if !is_subgroup(g, b)? {
        return Err(Error::NotSubgroup(b.to_string()));
    }
    for (name, s) in [("y", y), ("x", x)] {
        if !transversal_unchecked(g, s, b) {
            return Err(Error::NotTransversal {
                left: format!("{name} = {s}"),
                right: format!("b = {b}"),
            });
        }
    }
    let pairs = y.iter().map(|eta| {
        // ξ is the representative of the coset η + b lying in x
        let coset = translate_left(g, eta, b);
        let xi = Subset::min(&coset.meet(x)).expect("x meets every coset of b");
        (eta, g.add(g.neg(eta), xi))
    });
    MapGraph::new(g, *y, *b, pairs.collect::<Vec<_>>())
}
