//! Finite groups given by Cayley tables.
//!
//! Elements are indices `0..n`. The group law is written additively
//! throughout the crate: [`FiniteGroup::add`] is the table lookup and
//! [`FiniteGroup::neg`] the inverse, whether or not the group is abelian.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::Subset;

/// Index of an element inside one [`FiniteGroup`].
pub type Elem = usize;

/// Largest order a group may have; subsets are stored as `u128` bitsets.
pub const MAX_ORDER: usize = 128;

/// Largest `n` accepted by [`FiniteGroup::symmetric`].
pub const MAX_SYMMETRIC_DEGREE: usize = 5;

/// Immutable finite group: Cayley table, identity and inverse table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<Elem>,
    identity: Elem,
    inv: Vec<Elem>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

/// On-disk group description: `{"name": "...", "table": [[...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub table: Vec<Vec<i64>>,
}

impl FiniteGroup {
    /// Validates a raw Cayley table. Identity and inverses are located, not supplied.
    ///
    /// Checks run in the order shape, closure, associativity, identity,
    /// inverses; the first failure is reported.
    pub fn from_cayley_table(name: impl Into<String>, raw: &[Vec<i64>]) -> Result<Self> {
        let n = raw.len();
        if n == 0 {
            return Err(Error::InvalidOrder(0));
        }
        if n > MAX_ORDER {
            return Err(Error::CorpusLimit {
                what: "group order",
                size: n,
                limit: MAX_ORDER,
            });
        }
        for (row, entries) in raw.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: entries.len(),
                    expected: n,
                });
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for (row, entries) in raw.iter().enumerate() {
            for (col, &value) in entries.iter().enumerate() {
                if value < 0 || value as usize >= n {
                    return Err(Error::NotClosed {
                        row,
                        col,
                        value,
                        order: n,
                    });
                }
                table.push(value as usize);
            }
        }
        Self::from_flat_table(name.into(), n, table)
    }

    fn from_flat_table(name: String, n: usize, table: Vec<Elem>) -> Result<Self> {
        let at = |g: Elem, h: Elem| table[g * n + h];
        for x in 0..n {
            for y in 0..n {
                let xy = at(x, y);
                for z in 0..n {
                    if at(xy, z) != at(x, at(y, z)) {
                        return Err(Error::NonAssociative(x, y, z));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or(Error::NoIdentity)?;
        let mut inv = Vec::with_capacity(n);
        for g in 0..n {
            let h = (0..n)
                .find(|&h| at(g, h) == identity && at(h, g) == identity)
                .ok_or(Error::MissingInverse(g))?;
            inv.push(h);
        }
        Ok(FiniteGroup {
            name,
            order: n,
            table,
            identity,
            inv,
        })
    }

    /// Parses the JSON group file format.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GroupFile =
            serde_json::from_str(text).map_err(|e| Error::GroupFile(e.to_string()))?;
        Self::from_cayley_table(file.name, &file.table)
    }

    pub fn to_group_file(&self) -> GroupFile {
        GroupFile {
            name: self.name.clone(),
            table: (0..self.order)
                .map(|g| (0..self.order).map(|h| self.add(g, h) as i64).collect())
                .collect(),
        }
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder(0));
        }
        if n > MAX_ORDER {
            return Err(Error::CorpusLimit {
                what: "group order",
                size: n,
                limit: MAX_ORDER,
            });
        }
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_flat_table(format!("z{n}"), n, table)
    }

    /// `g × h`, with `(u, v)` encoded as `u·|h| + v`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        let (m, k) = (g.order, h.order);
        let n = m * k;
        if n > MAX_ORDER {
            return Err(Error::CorpusLimit {
                what: "group order",
                size: n,
                limit: MAX_ORDER,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                let (u1, v1) = (p / k, p % k);
                let (u2, v2) = (q / k, q % k);
                table.push(g.add(u1, u2) * k + h.add(v1, v2));
            }
        }
        Self::from_flat_table(format!("{}x{}", g.name, h.name), n, table)
    }

    /// The symmetric group on `{0..n-1}`, elements in lexicographic rank order.
    ///
    /// The product is composition with the right factor applied first:
    /// `(σ·τ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder(0));
        }
        if n > MAX_SYMMETRIC_DEGREE {
            return Err(Error::CorpusLimit {
                what: "symmetric group degree",
                size: n,
                limit: MAX_SYMMETRIC_DEGREE,
            });
        }
        let perms = lexicographic_permutations(n);
        let rank: HashMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let order = perms.len();
        let mut table = Vec::with_capacity(order * order);
        for sigma in &perms {
            for tau in &perms {
                let composed: Vec<usize> = (0..n).map(|i| sigma[tau[i]]).collect();
                table.push(rank[composed.as_slice()]);
            }
        }
        Self::from_flat_table(format!("s{n}"), order, table)
    }

    /// The dihedral group of order `2n`: `r^i` is element `i`, `s·r^i` is element `n + i`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let order = 2 * n;
        if order > MAX_ORDER {
            return Err(Error::CorpusLimit {
                what: "group order",
                size: order,
                limit: MAX_ORDER,
            });
        }
        let mut table = Vec::with_capacity(order * order);
        for p in 0..order {
            for q in 0..order {
                let (ps, pi) = (p >= n, p % n);
                let (qs, qi) = (q >= n, q % n);
                // r^i s = s r^{-i}
                let exp = if qs { (qi + n - pi) % n } else { (pi + qi) % n };
                let reflection = ps ^ qs;
                table.push(if reflection { n + exp } else { exp });
            }
        }
        Self::from_flat_table(format!("d{n}"), order, table)
    }

    /// The quaternion group: `±1, ±i, ±j, ±k` as elements `0..8` in that order.
    pub fn quaternion() -> Self {
        // unit products in the basis (1, i, j, k): (sign, unit)
        const UNIT: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let mut table = Vec::with_capacity(64);
        for p in 0..8 {
            for q in 0..8 {
                let (pn, pu) = (p % 2 == 1, p / 2);
                let (qn, qu) = (q % 2 == 1, q / 2);
                let (un, u) = UNIT[pu][qu];
                table.push(2 * u + usize::from(pn ^ qn ^ un));
            }
        }
        Self::from_flat_table("q8".into(), 8, table).expect("quaternion table is a group")
    }

    /// Builtin names: `z<n>`, `s<n>`, `d<n>`, `q8`, `k4`, and products such as `z2xz4`.
    pub fn builtin(spec: &str) -> Result<Self> {
        let spec = spec.trim().to_ascii_lowercase();
        let factors: Vec<&str> = spec.split('x').collect();
        if factors.len() > 1 {
            let mut iter = factors.iter();
            let first = Self::builtin_factor(iter.next().unwrap_or(&""), &spec)?;
            return iter.try_fold(first, |acc, f| {
                Self::direct_product(&acc, &Self::builtin_factor(f, &spec)?)
            });
        }
        Self::builtin_factor(&spec, &spec)
    }

    fn builtin_factor(factor: &str, whole: &str) -> Result<Self> {
        let unknown = || Error::UnknownGroup(whole.to_string());
        match factor {
            "q8" => return Ok(Self::quaternion()),
            "k4" => {
                let z2 = Self::cyclic(2)?;
                return Ok(Self::direct_product(&z2, &z2)?.renamed("k4"));
            }
            _ => {}
        }
        let (kind, digits) = factor.split_at(factor.len().min(1));
        let n: usize = digits.parse().map_err(|_| unknown())?;
        match kind {
            "z" => Self::cyclic(n),
            "s" => Self::symmetric(n),
            "d" => Self::dihedral(n),
            _ => Err(unknown()),
        }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same elements with `x·y := y·x`; identity and inverses are unchanged.
    pub fn opposite(&self) -> Self {
        let n = self.order;
        let table = (0..n * n).map(|i| self.table[(i % n) * n + i / n]).collect();
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        FiniteGroup {
            name,
            order: n,
            table,
            identity: self.identity,
            inv: self.inv.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn add(&self, g: Elem, h: Elem) -> Elem {
        self.table[g * self.order + h]
    }

    #[inline]
    pub fn neg(&self, g: Elem) -> Elem {
        self.inv[g]
    }

    /// `g - h`, i.e. `g + (-h)`.
    #[inline]
    pub fn sub(&self, g: Elem, h: Elem) -> Elem {
        self.add(g, self.inv[h])
    }

    /// Ordered sum of a word of elements.
    pub fn sum(&self, word: impl IntoIterator<Item = Elem>) -> Elem {
        word.into_iter().fold(self.identity, |acc, g| self.add(acc, g))
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (0..g).all(|h| self.add(g, h) == self.add(h, g)))
    }

    pub fn commutes(&self, g: Elem, h: Elem) -> bool {
        self.add(g, h) == self.add(h, g)
    }

    pub fn element_order(&self, g: Elem) -> usize {
        let mut k = 1;
        let mut acc = g;
        while acc != self.identity {
            acc = self.add(acc, g);
            k += 1;
        }
        k
    }

    pub fn center(&self) -> Subset {
        Subset::from_iter_unchecked(
            self.order,
            self.elements()
                .filter(|&g| self.elements().all(|h| self.commutes(g, h))),
        )
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.order)
    }

    pub fn trivial(&self) -> Subset {
        Subset::singleton(self.order, self.identity)
    }

    /// Subset literal over this group, e.g. `"0,2,4"`.
    pub fn parse_subset(&self, literal: &str) -> Result<Subset> {
        Subset::parse(self.order, literal)
    }

    pub fn subset(&self, elems: impl IntoIterator<Item = Elem>) -> Result<Subset> {
        Subset::from_elements(self.order, elems)
    }

    pub fn check(&self, s: &Subset) -> Result<()> {
        if s.universe() == self.order {
            Ok(())
        } else {
            Err(Error::GroupMismatch(self.order, s.universe()))
        }
    }

    /// The subgroup generated by `gens` (breadth-first closure).
    pub fn closure(&self, gens: Subset) -> Subset {
        let mut out = self.trivial();
        let gens: Vec<Elem> = gens.iter().collect();
        let mut queue = VecDeque::from([self.identity]);
        while let Some(u) = queue.pop_front() {
            for &g in &gens {
                let v = self.add(u, g);
                if !out.contains(v) {
                    out.insert(v);
                    queue.push_back(v);
                }
            }
        }
        out
    }

    /// Left cosets `ω + b`, ordered by their minimal element.
    pub fn left_cosets(&self, b: &Subset) -> Result<Vec<Subset>> {
        self.cosets(b, true)
    }

    /// Right cosets `a + ω`, ordered by their minimal element.
    pub fn right_cosets(&self, a: &Subset) -> Result<Vec<Subset>> {
        self.cosets(a, false)
    }

    fn cosets(&self, h: &Subset, left: bool) -> Result<Vec<Subset>> {
        self.check(h)?;
        if !crate::subset::is_subgroup(self, h)? {
            return Err(Error::NotSubgroup(h.to_string()));
        }
        let mut covered = Subset::empty(self.order);
        let mut out = Vec::new();
        for w in self.elements() {
            if covered.contains(w) {
                continue;
            }
            let coset = Subset::from_iter_unchecked(
                self.order,
                h.iter()
                    .map(|e| if left { self.add(w, e) } else { self.add(e, w) }),
            );
            covered = covered.union(&coset);
            out.push(coset);
        }
        Ok(out)
    }

    /// The subgroup `b` as a standalone group, with the embedding of its elements.
    pub fn subgroup_as_group(&self, b: &Subset) -> Result<(FiniteGroup, Vec<Elem>)> {
        self.check(b)?;
        if !crate::subset::is_subgroup(self, b)? {
            return Err(Error::NotSubgroup(b.to_string()));
        }
        let embed: Vec<Elem> = b.iter().collect();
        let index: HashMap<Elem, usize> =
            embed.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let m = embed.len();
        let table = (0..m * m)
            .map(|i| index[&self.add(embed[i / m], embed[i % m])])
            .collect();
        let sub = Self::from_flat_table(format!("{}<{}>", self.name, b), m, table)?;
        Ok((sub, embed))
    }

    /// A small generating set, chosen greedily by descending element order.
    pub fn generators(&self) -> Vec<Elem> {
        let mut by_order: Vec<Elem> = self.elements().collect();
        by_order.sort_by_key(|&g| (std::cmp::Reverse(self.element_order(g)), g));
        let mut span = self.trivial();
        let mut gens = Vec::new();
        for g in by_order {
            if !span.contains(g) {
                gens.push(g);
                span = self.closure(Subset::from_iter_unchecked(self.order, gens.iter().copied()));
            }
        }
        gens
    }

    fn order_profile(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = self.elements().map(|g| self.element_order(g)).collect();
        orders.sort_unstable();
        orders
    }

    /// Brute-force isomorphism search: generators of `self` are sent to
    /// elements of `other` of the same order and the assignment is extended
    /// along the Cayley graph. Exponential in the number of generators.
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<Vec<Elem>> {
        if self.order != other.order || self.order_profile() != other.order_profile() {
            return None;
        }
        let gens = self.generators();
        let mut found = None;
        self.search_homs(other, &gens, &mut Vec::new(), &mut |map| {
            found = Some(map.to_vec());
            true
        });
        found
    }

    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        self.find_isomorphism(other).is_some()
    }

    /// All automorphisms, each as the image array of the elements.
    pub fn automorphisms(&self) -> Vec<Vec<Elem>> {
        let gens = self.generators();
        let mut all = Vec::new();
        self.search_homs(self, &gens, &mut Vec::new(), &mut |map| {
            all.push(map.to_vec());
            false
        });
        all.sort();
        all
    }

    /// The automorphism group, with product `(φ·ψ)(g) = φ(ψ(g))`.
    pub fn automorphism_group(&self) -> FiniteGroup {
        let autos = self.automorphisms();
        let index: HashMap<&[Elem], usize> = autos
            .iter()
            .enumerate()
            .map(|(i, a)| (a.as_slice(), i))
            .collect();
        let m = autos.len();
        let mut table = Vec::with_capacity(m * m);
        for phi in &autos {
            for psi in &autos {
                let composed: Vec<Elem> = psi.iter().map(|&g| phi[g]).collect();
                table.push(index[composed.as_slice()]);
            }
        }
        Self::from_flat_table(format!("Aut({})", self.name), m, table)
            .expect("automorphisms form a group")
    }

    fn search_homs(
        &self,
        target: &FiniteGroup,
        gens: &[Elem],
        images: &mut Vec<Elem>,
        visit: &mut dyn FnMut(&[Elem]) -> bool,
    ) -> bool {
        if images.len() == gens.len() {
            if let Some(map) = self.extend_to_isomorphism(target, gens, images) {
                return visit(&map);
            }
            return false;
        }
        let want = self.element_order(gens[images.len()]);
        for cand in target.elements() {
            if target.element_order(cand) != want || images.contains(&cand) {
                continue;
            }
            images.push(cand);
            let stop = self.search_homs(target, gens, images, visit);
            images.pop();
            if stop {
                return true;
            }
        }
        false
    }

    fn extend_to_isomorphism(
        &self,
        target: &FiniteGroup,
        gens: &[Elem],
        images: &[Elem],
    ) -> Option<Vec<Elem>> {
        let n = self.order;
        let mut map = vec![usize::MAX; n];
        map[self.identity] = target.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(u) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images) {
                let v = self.add(u, g);
                let fv = target.add(map[u], img);
                if map[v] == usize::MAX {
                    map[v] = fv;
                    queue.push_back(v);
                } else if map[v] != fv {
                    return None;
                }
            }
        }
        let mut seen = vec![false; n];
        for &m in &map {
            if m == usize::MAX || std::mem::replace(&mut seen[m], true) {
                return None;
            }
        }
        for g in 0..n {
            for h in 0..n {
                if map[self.add(g, h)] != target.add(map[g], map[h]) {
                    return None;
                }
            }
        }
        Some(map)
    }
}

fn lexicographic_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    loop {
        // next permutation in lexicographic order
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_is_group(raw: &[Vec<i64>]) -> bool {
        let n = raw.len();
        let at = |a: usize, b: usize| raw[a][b] as usize;
        if raw.iter().flatten().any(|&v| v < 0 || v as usize >= n) {
            return false;
        }
        let assoc = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| at(at(a, b), c) == at(a, at(b, c))))
        });
        let e = (0..n).find(|&e| (0..n).all(|g| at(e, g) == g && at(g, e) == g));
        assoc
            && e.is_some_and(|e| (0..n).all(|g| (0..n).any(|h| at(g, h) == e && at(h, g) == e)))
    }

    #[test]
    fn cyclic_groups() {
        let trivial = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(trivial.to_group_file().table, vec![vec![0]]);
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.add(1, 3), 0);
        assert_eq!(z4.neg(1), 3);
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!((0..6).map(|g| z6.neg(g)).collect::<Vec<_>>(), vec![0, 5, 4, 3, 2, 1]);
        assert_eq!(FiniteGroup::cyclic(0), Err(Error::InvalidOrder(0)));
    }

    #[test]
    fn direct_products() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let k4 = FiniteGroup::direct_product(&z2, &z2).unwrap();
        assert!(k4.elements().all(|g| k4.neg(g) == g));
        assert_eq!(k4.name(), "z2xz2");
        let z2z3 = FiniteGroup::direct_product(&z2, &z3).unwrap();
        assert!(z2z3.is_isomorphic(&FiniteGroup::cyclic(6).unwrap()));
        let s3z2 = FiniteGroup::direct_product(&FiniteGroup::symmetric(3).unwrap(), &z2).unwrap();
        assert_eq!(s3z2.order(), 12);
        assert!(!s3z2.is_abelian());
        // row-major encoding (u, v) -> u*|h| + v: (1,2) + (0,2) = (1,1)
        let enc = |u: usize, v: usize| u * 3 + v;
        assert_eq!(z2z3.add(enc(1, 2), enc(0, 2)), enc(1, 1));
    }

    #[test]
    fn symmetric_groups() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.identity(), 0);
        assert_eq!(FiniteGroup::symmetric(1).unwrap().order(), 1);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        assert!(matches!(
            FiniteGroup::symmetric(6),
            Err(Error::CorpusLimit { .. })
        ));
        // lexicographic ranks: 1 = [0,2,1], 2 = [1,0,2]; (1·2)(i) = p1(p2(i)) = [2,0,1] = rank 4
        assert_eq!(s3.add(1, 2), 4);
    }

    #[test]
    fn dihedral_groups() {
        let d2 = FiniteGroup::dihedral(2).unwrap();
        assert!(d2.is_isomorphic(&FiniteGroup::builtin("k4").unwrap()));
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        // brute-force center
        let center: Vec<Elem> = d4
            .elements()
            .filter(|&g| d4.elements().all(|h| d4.add(g, h) == d4.add(h, g)))
            .collect();
        assert_eq!(center.len(), 2);
        assert_eq!(d4.center().len(), 2);
        assert!(FiniteGroup::dihedral(3)
            .unwrap()
            .is_isomorphic(&FiniteGroup::symmetric(3).unwrap()));
    }

    #[test]
    fn quaternion_is_not_dihedral() {
        let q8 = FiniteGroup::quaternion();
        assert_eq!(q8.center().len(), 2);
        assert!(!q8.is_abelian());
        assert!(!q8.is_isomorphic(&FiniteGroup::dihedral(4).unwrap()));
        // exactly one element of order 2
        assert_eq!(q8.elements().filter(|&g| q8.element_order(g) == 2).count(), 1);
    }

    #[test]
    fn cayley_validation() {
        let z2 = FiniteGroup::from_cayley_table("z2", &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(z2.is_isomorphic(&FiniteGroup::cyclic(2).unwrap()));
        assert_eq!(
            FiniteGroup::from_cayley_table("bad", &[vec![0, 1], vec![1, 1]]),
            Err(Error::MissingInverse(1))
        );
        assert!(matches!(
            FiniteGroup::from_cayley_table("bad", &[vec![0, 2], vec![1, 0]]),
            Err(Error::NotClosed { row: 0, col: 1, .. })
        ));
        assert!(matches!(
            FiniteGroup::from_cayley_table("bad", &[vec![0, 1], vec![1]]),
            Err(Error::NotSquare { row: 1, .. })
        ));
        // a Latin square without associativity
        let nonassoc = [vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]];
        assert!(!brute_force_is_group(&nonassoc));
        assert!(FiniteGroup::from_cayley_table("bad", &nonassoc).is_err());

        let s3 = FiniteGroup::symmetric(3).unwrap();
        let file = s3.to_group_file();
        assert!(brute_force_is_group(&file.table));
        let back = FiniteGroup::from_cayley_table("s3", &file.table).unwrap();
        assert!(!back.is_abelian());
        assert_eq!(back, s3);
    }

    #[test]
    fn validation_matches_brute_force_on_all_order_3_tables() {
        // 3^9 tables over {0,1,2}
        for code in 0..3usize.pow(9) {
            let mut c = code;
            let raw: Vec<Vec<i64>> = (0..3)
                .map(|_| {
                    (0..3)
                        .map(|_| {
                            let v = (c % 3) as i64;
                            c /= 3;
                            v
                        })
                        .collect()
                })
                .collect();
            assert_eq!(
                FiniteGroup::from_cayley_table("t", &raw).is_ok(),
                brute_force_is_group(&raw),
                "{raw:?}"
            );
        }
    }

    #[test]
    fn opposite_group() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(z6.opposite().to_group_file().table, z6.to_group_file().table);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let op = s3.opposite();
        assert_ne!(op.to_group_file().table, s3.to_group_file().table);
        assert_eq!(op.opposite(), s3);
        assert!(FiniteGroup::from_cayley_table("op", &op.to_group_file().table).is_ok());
        assert!(s3.is_isomorphic(&op));
        // the inversion map is an explicit isomorphism onto the opposite group
        for g in s3.elements() {
            for h in s3.elements() {
                assert_eq!(s3.neg(s3.add(g, h)), op.add(s3.neg(g), s3.neg(h)));
            }
        }
    }

    #[test]
    fn cosets() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let b = z4.parse_subset("0,2").unwrap();
        let cosets: Vec<String> = z4.left_cosets(&b).unwrap().iter().map(|c| c.to_string()).collect();
        assert_eq!(cosets, ["0,2", "1,3"]);
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let cosets: Vec<String> = z6
            .left_cosets(&z6.parse_subset("0,3").unwrap())
            .unwrap()
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(cosets, ["0,3", "1,4", "2,5"]);
        assert!(matches!(
            z4.left_cosets(&z4.parse_subset("0,1").unwrap()),
            Err(Error::NotSubgroup(_))
        ));
    }

    #[test]
    fn s3_coset_partition_matches_enumeration() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        for t in s3.elements().filter(|&g| s3.element_order(g) == 2) {
            let b = s3.subset([0, t]).unwrap();
            let cosets = s3.left_cosets(&b).unwrap();
            assert_eq!(cosets.len(), 3);
            for w in s3.elements() {
                // the coset containing w is {w, w+t}
                let expected = s3.subset([w, s3.add(w, t)]).unwrap();
                assert_eq!(cosets.iter().filter(|c| **c == expected).count(), 1);
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(FiniteGroup::cyclic(2).unwrap().automorphisms().len(), 1);
        assert_eq!(FiniteGroup::cyclic(3).unwrap().automorphisms().len(), 2);
        assert_eq!(FiniteGroup::cyclic(8).unwrap().automorphisms().len(), 4);
        assert_eq!(FiniteGroup::builtin("k4").unwrap().automorphisms().len(), 6);
        assert_eq!(FiniteGroup::symmetric(3).unwrap().automorphisms().len(), 6);
        assert_eq!(FiniteGroup::dihedral(4).unwrap().automorphisms().len(), 8);
        assert_eq!(FiniteGroup::quaternion().automorphisms().len(), 24);
        let aut_k4 = FiniteGroup::builtin("k4").unwrap().automorphism_group();
        assert!(aut_k4.is_isomorphic(&FiniteGroup::symmetric(3).unwrap()));
    }

    #[test]
    fn builtin_names() {
        assert_eq!(FiniteGroup::builtin("z2xz4").unwrap().order(), 8);
        assert_eq!(FiniteGroup::builtin("s3xz2").unwrap().order(), 12);
        assert_eq!(FiniteGroup::builtin("D4").unwrap().order(), 8);
        assert!(matches!(FiniteGroup::builtin("w3"), Err(Error::UnknownGroup(_))));
        assert!(matches!(FiniteGroup::builtin("zz"), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn json_roundtrip() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let text = serde_json::to_string(&d4.to_group_file()).unwrap();
        assert_eq!(FiniteGroup::from_json(&text).unwrap(), d4);
        assert!(matches!(
            FiniteGroup::from_json("{\"name\": 3}"),
            Err(Error::GroupFile(_))
        ));
    }
}
