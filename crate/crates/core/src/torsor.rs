//! Ternary laws on the power set, their carriers and the torsor axioms.
//!
//! A semitorsor satisfies para-associativity `(xy(zuv)) = (x(uzy)v) = ((xyz)uv)`;
//! a torsor also satisfies `(xxy) = y = (yxx)`.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::subset::{self, is_subgroup, transversal_unchecked, Subset};
use crate::verdict::{decode, par_map, sample_rng, scan, Mode, Verdict, Witness};

/// Which structure map a law is built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Flavor {
    /// `(xyz)_ab = Γ(x,a,y,b,z)`.
    Balanced { a: Subset, b: Subset },
    /// `(xyz)ˇ_ab = Γ̌(x,a,y,b,z)`.
    BalancedOpposite { a: Subset, b: Subset },
    /// `(xyz)_b = Σ(b,x,y,z)`.
    Unbalanced { b: Subset },
    /// `(xyz)ˇ_b = Σ̌(b,x,y,z)`.
    UnbalancedOpposite { b: Subset },
    /// `(zyx)` of the named law.
    OppositeOf(String),
    Custom,
}

type LawFn<'a> = dyn Fn(&Subset, &Subset, &Subset) -> Subset + Send + Sync + 'a;

/// A named ternary operation on subsets of one group.
pub struct TernaryLaw<'a> {
    pub label: String,
    pub flavor: Flavor,
    eval: Box<LawFn<'a>>,
}

impl fmt::Debug for TernaryLaw<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TernaryLaw")
            .field("label", &self.label)
            .field("flavor", &self.flavor)
            .finish()
    }
}

impl<'a> TernaryLaw<'a> {
    pub fn custom(
        label: impl Into<String>,
        eval: impl Fn(&Subset, &Subset, &Subset) -> Subset + Send + Sync + 'a,
    ) -> Self {
        TernaryLaw {
            label: label.into(),
            flavor: Flavor::Custom,
            eval: Box::new(eval),
        }
    }

    pub fn balanced(engine: Engine<'a>, a: Subset, b: Subset) -> Self {
        TernaryLaw {
            label: format!("(xyz)_ab a={a} b={b}"),
            flavor: Flavor::Balanced { a, b },
            eval: Box::new(move |x, y, z| engine.gamma(x, &a, y, &b, z)),
        }
    }

    pub fn balanced_opposite(engine: Engine<'a>, a: Subset, b: Subset) -> Self {
        TernaryLaw {
            label: format!("(xyz)ˇ_ab a={a} b={b}"),
            flavor: Flavor::BalancedOpposite { a, b },
            eval: Box::new(move |x, y, z| engine.gamma_check(x, &a, y, &b, z)),
        }
    }

    pub fn unbalanced(engine: Engine<'a>, b: Subset) -> Self {
        TernaryLaw {
            label: format!("(xyz)_b b={b}"),
            flavor: Flavor::Unbalanced { b },
            eval: Box::new(move |x, y, z| engine.sigma(&b, x, y, z)),
        }
    }

    pub fn unbalanced_opposite(engine: Engine<'a>, b: Subset) -> Self {
        TernaryLaw {
            label: format!("(xyz)ˇ_b b={b}"),
            flavor: Flavor::UnbalancedOpposite { b },
            eval: Box::new(move |x, y, z| engine.sigma_check(&b, x, y, z)),
        }
    }

    /// The law `(x,y,z) ↦ (zyx)`.
    pub fn opposite(self) -> TernaryLaw<'a> {
        let label = format!("opp {}", self.label);
        let inner = self.eval;
        TernaryLaw {
            label,
            flavor: Flavor::OppositeOf(self.label),
            eval: Box::new(move |x, y, z| inner(z, y, x)),
        }
    }

    pub fn eval(&self, x: &Subset, y: &Subset, z: &Subset) -> Subset {
        (self.eval)(x, y, z)
    }
}

/// The elements a law is checked on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    Listed(Vec<Subset>),
    /// All `2^n` subsets of a group of order `n`.
    PowerSet(usize),
}

impl Domain {
    /// Largest order whose power set is listed explicitly for exhaustive scans.
    pub const LISTABLE_ORDER: usize = 16;

    pub fn len(&self) -> u128 {
        match self {
            Domain::Listed(v) => v.len() as u128,
            Domain::PowerSet(n) => 1u128.checked_shl(*n as u32).unwrap_or(u128::MAX),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn materialize(&self) -> Result<Vec<Subset>> {
        match self {
            Domain::Listed(v) => Ok(v.clone()),
            Domain::PowerSet(n) if *n <= Self::LISTABLE_ORDER => {
                Ok((0..1u128 << n).map(|bits| Subset::from_bits(*n, bits)).collect())
            }
            Domain::PowerSet(n) => Err(Error::CorpusLimit {
                what: "group order for power-set listing",
                size: *n,
                limit: Self::LISTABLE_ORDER,
            }),
        }
    }

    pub fn sample(&self, rng: &mut impl Rng) -> Subset {
        match self {
            Domain::Listed(v) => v[rng.gen_range(0..v.len())],
            Domain::PowerSet(n) => Subset::from_bits(*n, rng.gen()),
        }
    }
}

/// All `m³` values of a law on a listed domain, with reverse lookup.
struct LawTable<'l, 'a> {
    law: &'l TernaryLaw<'a>,
    elems: &'l [Subset],
    index: HashMap<Subset, usize>,
    values: Vec<Subset>,
}

impl<'l, 'a> LawTable<'l, 'a> {
    fn new(law: &'l TernaryLaw<'a>, elems: &'l [Subset]) -> Self {
        let m = elems.len();
        let values = par_map((m * m * m) as u64, |i| {
            let d = decode(i, m, 3);
            law.eval(&elems[d[0]], &elems[d[1]], &elems[d[2]])
        });
        let index = elems.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        LawTable {
            law,
            elems,
            index,
            values,
        }
    }

    fn at(&self, i: usize, j: usize, k: usize) -> Subset {
        let m = self.elems.len();
        self.values[(i * m + j) * m + k]
    }

    /// Law value where any argument may lie outside the domain.
    fn eval(&self, x: Slot, y: Slot, z: Slot) -> Subset {
        let resolve = |s: Slot| match s {
            Slot::Index(i) => Some(i),
            Slot::Value(v) => self.index.get(&v).copied(),
        };
        match (resolve(x), resolve(y), resolve(z)) {
            (Some(i), Some(j), Some(k)) => self.at(i, j, k),
            _ => self.law.eval(&self.value(x), &self.value(y), &self.value(z)),
        }
    }

    fn value(&self, s: Slot) -> Subset {
        match s {
            Slot::Index(i) => self.elems[i],
            Slot::Value(v) => v,
        }
    }
}

#[derive(Clone, Copy)]
enum Slot {
    Index(usize),
    Value(Subset),
}

fn para_witness(v: [&Subset; 5], sides: [Subset; 3]) -> Option<Witness> {
    if sides[0] == sides[1] && sides[1] == sides[2] {
        return None;
    }
    Some(
        Witness::new()
            .with("x", v[0])
            .with("y", v[1])
            .with("z", v[2])
            .with("u", v[3])
            .with("v", v[4])
            .with("(xy(zuv))", sides[0])
            .with("(x(uzy)v)", sides[1])
            .with("((xyz)uv)", sides[2]),
    )
}

/// Checks `(xy(zuv)) = (x(uzy)v) = ((xyz)uv)`.
pub fn check_para_associativity(law: &TernaryLaw<'_>, domain: &Domain, mode: Mode) -> Result<Verdict> {
    if domain.is_empty() {
        return Ok(Verdict::pass(0));
    }
    match mode {
        Mode::Exhaustive => {
            let elems = domain.materialize()?;
            let m = elems.len();
            let table = LawTable::new(law, &elems);
            let count = (m as u64).pow(5);
            Ok(scan(count, |i| {
                let d = decode(i, m, 5);
                let (x, y, z, u, v) = (d[0], d[1], d[2], d[3], d[4]);
                let zuv = table.at(z, u, v);
                let left = table.eval(Slot::Index(x), Slot::Index(y), Slot::Value(zuv));
                let uzy = table.at(u, z, y);
                let middle = table.eval(Slot::Index(x), Slot::Value(uzy), Slot::Index(v));
                let xyz = table.at(x, y, z);
                let right = table.eval(Slot::Value(xyz), Slot::Index(u), Slot::Index(v));
                para_witness(
                    [&elems[x], &elems[y], &elems[z], &elems[u], &elems[v]],
                    [left, middle, right],
                )
            }))
        }
        Mode::Random { seed, samples } => Ok(scan(samples, |i| {
            let mut rng = sample_rng(seed, i);
            let t: Vec<Subset> = (0..5).map(|_| domain.sample(&mut rng)).collect();
            let (x, y, z, u, v) = (&t[0], &t[1], &t[2], &t[3], &t[4]);
            let left = law.eval(x, y, &law.eval(z, u, v));
            let middle = law.eval(x, &law.eval(u, z, y), v);
            let right = law.eval(&law.eval(x, y, z), u, v);
            para_witness([x, y, z, u, v], [left, middle, right])
        })),
    }
}

fn idem_witness(law: &TernaryLaw<'_>, x: &Subset, y: &Subset) -> Option<Witness> {
    let xxy = law.eval(x, x, y);
    let yxx = law.eval(y, x, x);
    (xxy != *y || yxx != *y).then(|| {
        Witness::new()
            .with("x", x)
            .with("y", y)
            .with("(xxy)", xxy)
            .with("(yxx)", yxx)
    })
}

/// Checks `(xxy) = y = (yxx)`.
pub fn check_idempotent(law: &TernaryLaw<'_>, domain: &Domain, mode: Mode) -> Result<Verdict> {
    if domain.is_empty() {
        return Ok(Verdict::pass(0));
    }
    match mode {
        Mode::Exhaustive => {
            let elems = domain.materialize()?;
            let m = elems.len();
            Ok(scan((m * m) as u64, |i| {
                idem_witness(law, &elems[i as usize / m], &elems[i as usize % m])
            }))
        }
        Mode::Random { seed, samples } => Ok(scan(samples, |i| {
            let mut rng = sample_rng(seed, i);
            let (x, y) = (domain.sample(&mut rng), domain.sample(&mut rng));
            idem_witness(law, &x, &y)
        })),
    }
}

/// Checks that the law maps triples of `elements` back into `elements`.
pub fn check_closure(law: &TernaryLaw<'_>, elements: &[Subset], mode: Mode) -> Verdict {
    let members: std::collections::HashSet<Subset> = elements.iter().copied().collect();
    let m = elements.len();
    if m == 0 {
        return Verdict::pass(0);
    }
    let probe = |x: &Subset, y: &Subset, z: &Subset| {
        let w = law.eval(x, y, z);
        (!members.contains(&w)).then(|| {
            Witness::new()
                .with("x", x)
                .with("y", y)
                .with("z", z)
                .with("(xyz)", w)
        })
    };
    match mode {
        Mode::Exhaustive => scan((m * m * m) as u64, |i| {
            let d = decode(i, m, 3);
            probe(&elements[d[0]], &elements[d[1]], &elements[d[2]])
        }),
        Mode::Random { seed, samples } => scan(samples, |i| {
            let mut rng = sample_rng(seed, i);
            let d: Vec<usize> = (0..3).map(|_| rng.gen_range(0..m)).collect();
            probe(&elements[d[0]], &elements[d[1]], &elements[d[2]])
        }),
    }
}

/// A set of subsets closed under a ternary law.
#[derive(Debug)]
pub struct TorsorCarrier<'a> {
    pub label: String,
    pub elements: Vec<Subset>,
    pub law: TernaryLaw<'a>,
}

impl<'a> TorsorCarrier<'a> {
    /// Largest carrier whose closure is checked on every triple at construction.
    pub const EXHAUSTIVE_CLOSURE: usize = 64;

    /// Wraps `elements` without checking closure.
    pub fn new(label: impl Into<String>, elements: Vec<Subset>, law: TernaryLaw<'a>) -> Self {
        TorsorCarrier {
            label: label.into(),
            elements,
            law,
        }
    }

    /// Builds a carrier and verifies closure: on every triple when the carrier
    /// is small, otherwise on a fixed-seed sample.
    pub fn closed(label: impl Into<String>, elements: Vec<Subset>, law: TernaryLaw<'a>) -> Result<Self> {
        let c = Self::new(label, elements, law);
        let mode = if c.len() <= Self::EXHAUSTIVE_CLOSURE {
            Mode::Exhaustive
        } else {
            Mode::Random {
                seed: 0,
                samples: 4096,
            }
        };
        match check_closure(&c.law, &c.elements, mode).witness {
            None => Ok(c),
            Some(w) => Err(Error::TorsorViolation(format!("{} is not closed: {w}", c.label))),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, x: &Subset) -> Option<usize> {
        self.elements.iter().position(|e| e == x)
    }

    pub fn domain(&self) -> Domain {
        Domain::Listed(self.elements.clone())
    }

    /// Para-associativity and idempotency on the carrier.
    pub fn check_torsor(&self, mode: Mode) -> Result<Verdict> {
        let d = self.domain();
        Ok(check_para_associativity(&self.law, &d, mode)?.and(check_idempotent(&self.law, &d, mode)?))
    }

    /// `{(x, y, z, w) | w = (xyz)}`, with carrier indices.
    pub fn torsor_graph(&self) -> Result<Vec<[usize; 4]>> {
        let m = self.len();
        let mut out = Vec::with_capacity(m * m * m);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let w = self.law.eval(&self.elements[i], &self.elements[j], &self.elements[k]);
                    let l = self.index_of(&w).ok_or_else(|| {
                        Error::TorsorViolation(format!("{} is not closed at ({i},{j},{k})", self.label))
                    })?;
                    out.push([i, j, k, l]);
                }
            }
        }
        Ok(out)
    }
}

fn require_subgroup(g: &FiniteGroup, s: &Subset) -> Result<()> {
    g.check(s)?;
    if is_subgroup(g, s)? {
        Ok(())
    } else {
        Err(Error::NotSubgroup(s.to_string()))
    }
}

fn section_count(g: &FiniteGroup, h: &Subset) -> u128 {
    (h.len() as u128)
        .checked_pow((g.order() / h.len()) as u32)
        .unwrap_or(u128::MAX)
}

/// `{x | left ⊤ x, x ⊤ right}`, enumerated from whichever section family is smaller.
fn two_sided_sections(g: &FiniteGroup, left: &Subset, right: &Subset) -> Result<Vec<Subset>> {
    let mut out = if section_count(g, right) <= section_count(g, left) {
        subset::left_transversal_set(g, right)?
            .into_iter()
            .filter(|x| transversal_unchecked(g, left, x))
            .collect::<Vec<_>>()
    } else {
        subset::right_transversal_set(g, left)?
            .into_iter()
            .filter(|x| transversal_unchecked(g, x, right))
            .collect()
    };
    out.sort();
    Ok(out)
}

/// `U_ab = a^⊤ ∩ ^⊤b` under `(xyz)_ab`; may be empty.
pub fn carrier_u_ab<'a>(engine: Engine<'a>, a: &Subset, b: &Subset) -> Result<TorsorCarrier<'a>> {
    let g = engine.group;
    require_subgroup(g, a)?;
    require_subgroup(g, b)?;
    let elems = two_sided_sections(g, a, b)?;
    TorsorCarrier::closed(format!("U_ab a={a} b={b}"), elems, TernaryLaw::balanced(engine, *a, *b))
}

/// `Ǔ_ab = b^⊤ ∩ ^⊤a` under `(xyz)ˇ_ab`.
pub fn carrier_u_ab_check<'a>(engine: Engine<'a>, a: &Subset, b: &Subset) -> Result<TorsorCarrier<'a>> {
    let g = engine.group;
    require_subgroup(g, a)?;
    require_subgroup(g, b)?;
    let elems = two_sided_sections(g, b, a)?;
    TorsorCarrier::closed(
        format!("Ǔ_ab a={a} b={b}"),
        elems,
        TernaryLaw::balanced_opposite(engine, *a, *b),
    )
}

/// `U_b = ^⊤b` under `(xyz)_b`.
pub fn carrier_u_b<'a>(engine: Engine<'a>, b: &Subset) -> Result<TorsorCarrier<'a>> {
    let g = engine.group;
    require_subgroup(g, b)?;
    let elems = subset::left_transversal_set(g, b)?;
    TorsorCarrier::closed(format!("U_b b={b}"), elems, TernaryLaw::unbalanced(engine, *b))
}

/// `Ǔ_b = b^⊤` under `(xyz)ˇ_b`.
pub fn carrier_u_b_check<'a>(engine: Engine<'a>, b: &Subset) -> Result<TorsorCarrier<'a>> {
    let g = engine.group;
    require_subgroup(g, b)?;
    let elems = subset::right_transversal_set(g, b)?;
    TorsorCarrier::closed(
        format!("Ǔ_b b={b}"),
        elems,
        TernaryLaw::unbalanced_opposite(engine, *b),
    )
}

/// The group on a carrier with product `x·z = (xyz)` and neutral element `y`.
///
/// Element `i` of the result is `carrier.elements[i]`.
pub fn group_from_basepoint(carrier: &TorsorCarrier<'_>, y: &Subset) -> Result<FiniteGroup> {
    let yi = carrier
        .index_of(y)
        .ok_or_else(|| Error::TorsorViolation(format!("basepoint {y} is not in {}", carrier.label)))?;
    let m = carrier.len();
    let mut table = vec![vec![0i64; m]; m];
    for (i, row) in table.iter_mut().enumerate() {
        for (k, cell) in row.iter_mut().enumerate() {
            let w = carrier.law.eval(&carrier.elements[i], &carrier.elements[yi], &carrier.elements[k]);
            let idx = carrier.index_of(&w).ok_or_else(|| {
                Error::TorsorViolation(format!(
                    "({} {y} {}) = {w} leaves {}",
                    carrier.elements[i], carrier.elements[k], carrier.label
                ))
            })?;
            *cell = idx as i64;
        }
    }
    FiniteGroup::from_cayley_table(format!("{}@{y}", carrier.label), &table)
        .map_err(|e| Error::TorsorViolation(format!("{} with basepoint {y}: {e}", carrier.label)))
}

/// The pointwise torsor `Map(y,b)` compared with `U_b`: for every triple of
/// sections, the map of `(xx'x'')_b` is `F_x − F_x' + F_x''` pointwise.
pub fn check_pointwise_model(engine: Engine<'_>, b: &Subset, y: &Subset, mode: Mode) -> Result<Verdict> {
    let g = engine.group;
    let carrier = carrier_u_b(engine, b)?;
    if !carrier.elements.contains(y) {
        return Err(Error::NotTransversal {
            left: format!("y = {y}"),
            right: format!("b = {b}"),
        });
    }
    let maps: Vec<_> = carrier
        .elements
        .iter()
        .map(|x| subset::map_from_transversal(g, x, y, b))
        .collect::<Result<_>>()?;
    let m = carrier.len();
    let probe = |i: usize, j: usize, k: usize| {
        let w = carrier.law.eval(&carrier.elements[i], &carrier.elements[j], &carrier.elements[k]);
        let pairs = y.iter().map(|eta| {
            let v = g.add(
                g.sub(maps[i].get(eta).unwrap(), maps[j].get(eta).unwrap()),
                maps[k].get(eta).unwrap(),
            );
            (eta, v)
        });
        let expected = subset::MapGraph::new(g, *y, *b, pairs.collect::<Vec<_>>())
            .map(|f| subset::graph_of_map(g, &f, subset::Side::Left));
        (expected.as_ref() != Ok(&w)).then(|| {
            Witness::new()
                .with("x", carrier.elements[i])
                .with("x'", carrier.elements[j])
                .with("x''", carrier.elements[k])
                .with("(xx'x'')_b", w)
                .with(
                    "pointwise",
                    expected.map(|s| s.to_string()).unwrap_or_else(|e| e.to_string()),
                )
        })
    };
    Ok(match mode {
        Mode::Exhaustive => scan((m * m * m) as u64, |i| {
            let d = decode(i, m, 3);
            probe(d[0], d[1], d[2])
        }),
        Mode::Random { seed, samples } => scan(samples, |i| {
            let mut rng = sample_rng(seed, i);
            probe(rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m))
        }),
    })
}

/// `z ∘ y⁻¹ ∘ x` for relations `x, y, z ⊂ a × b`, identifying `Ω` with `a × b`
/// through `(α, β) ↦ α + β`.
pub fn compose_relations(
    g: &FiniteGroup,
    x: &Subset,
    y: &Subset,
    z: &Subset,
    a: &Subset,
    b: &Subset,
) -> Result<Subset> {
    for s in [x, y, z] {
        g.check(s)?;
    }
    require_subgroup(g, a)?;
    require_subgroup(g, b)?;
    if !transversal_unchecked(g, a, b) {
        return Err(Error::NotTransversal {
            left: format!("a = {a}"),
            right: format!("b = {b}"),
        });
    }
    let n = g.order();
    let mut pair_of = vec![(0, 0); n];
    for alpha in a {
        for beta in b {
            pair_of[g.add(alpha, beta)] = (alpha, beta);
        }
    }
    // x grouped by second coordinate, z by first coordinate
    let mut x_by_beta: HashMap<Elem, Vec<Elem>> = HashMap::new();
    for xi in x {
        let (al, be) = pair_of[xi];
        x_by_beta.entry(be).or_default().push(al);
    }
    let mut z_by_alpha: HashMap<Elem, Vec<Elem>> = HashMap::new();
    for zeta in z {
        let (al, be) = pair_of[zeta];
        z_by_alpha.entry(al).or_default().push(be);
    }
    let mut out = Subset::empty(n);
    for eta in y {
        let (a2, b2) = pair_of[eta];
        let (Some(alphas), Some(betas)) = (x_by_beta.get(&b2), z_by_alpha.get(&a2)) else {
            continue;
        };
        for &a1 in alphas {
            for &b1 in betas {
                out.insert(g.add(a1, b1));
            }
        }
    }
    Ok(out)
}

/// Result of examining a candidate transversal triple `(a, b, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleVerdict {
    /// Why `(a,b,c)` is not a transversal triple, if it is not.
    pub failure: Option<String>,
    /// `|U_ab ∩ Gras(Ω)|`.
    pub carrier_size: Option<usize>,
    /// `|Aut(a)|`.
    pub aut_size: Option<usize>,
    /// Whether the carrier with basepoint `c` is a group isomorphic to `Aut(a)`.
    pub isomorphic: Option<bool>,
}

impl TripleVerdict {
    pub fn is_triple(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks the transversal-triple conditions (`a`, `b` commute; `a ⊤ b`, `b ⊤ c`,
/// `c ⊤ a`) and, when they hold, compares `U_ab ∩ Gras(Ω)` based at `c` with `Aut(a)`.
pub fn check_transversal_triple(engine: Engine<'_>, a: &Subset, b: &Subset, c: &Subset) -> Result<TripleVerdict> {
    let g = engine.group;
    for s in [a, b, c] {
        require_subgroup(g, s)?;
    }
    let fail = |why: String| TripleVerdict {
        failure: Some(why),
        carrier_size: None,
        aut_size: None,
        isomorphic: None,
    };
    if let Some((u, v)) = a
        .iter()
        .flat_map(|u| b.iter().map(move |v| (u, v)))
        .find(|&(u, v)| !g.commutes(u, v))
    {
        return Ok(fail(format!("{u} ∈ a and {v} ∈ b do not commute")));
    }
    for (l, r, name) in [(a, b, "a ⊤ b"), (b, c, "b ⊤ c"), (c, a, "c ⊤ a")] {
        if !transversal_unchecked(g, l, r) {
            return Ok(fail(format!("{name} fails")));
        }
    }
    let u_ab = carrier_u_ab(engine, a, b)?;
    let gras = subset::grassmannian_unbounded(g);
    let elems: Vec<Subset> = u_ab.elements.iter().copied().filter(|x| gras.contains(x)).collect();
    let carrier = TorsorCarrier::new(
        format!("U'_ab a={a} b={b}"),
        elems,
        TernaryLaw::balanced(engine, *a, *b),
    );
    let (ag, _) = g.subgroup_as_group(a)?;
    let aut = ag.automorphism_group();
    let isomorphic = match group_from_basepoint(&carrier, c) {
        Ok(grp) => grp.is_isomorphic(&aut),
        Err(_) => false,
    };
    Ok(TripleVerdict {
        failure: None,
        carrier_size: Some(carrier.len()),
        aut_size: Some(aut.order()),
        isomorphic: Some(isomorphic),
    })
}

/// Every transversal triple among the subgroups of `g`.
pub fn transversal_triples(engine: Engine<'_>) -> Result<Vec<(Subset, Subset, Subset)>> {
    let gras = subset::grassmannian(engine.group)?;
    let mut out = Vec::new();
    for a in &gras {
        for b in &gras {
            for c in &gras {
                if check_transversal_triple(engine, a, b, c)?.is_triple() {
                    out.push((*a, *b, *c));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure;

    fn grp(name: &str) -> FiniteGroup {
        FiniteGroup::builtin(name).unwrap()
    }

    fn s(g: &FiniteGroup, lit: &str) -> Subset {
        g.parse_subset(lit).unwrap()
    }

    #[test]
    fn unbalanced_law_on_power_set_of_z2() {
        let g = grp("z2");
        let e = Engine::new(&g);
        for b in subset::grassmannian(&g).unwrap() {
            let law = TernaryLaw::unbalanced(e, b);
            let v = check_para_associativity(&law, &Domain::PowerSet(2), Mode::Exhaustive).unwrap();
            assert!(v.passed(), "{:?}", v.witness);
            assert_eq!(v.checked, 4u64.pow(5));
        }
    }

    #[test]
    fn extreme_subgroups_give_meet_and_pointwise_laws() {
        let g = grp("z3");
        let e = Engine::new(&g);
        let all = Domain::PowerSet(3).materialize().unwrap();
        let trivial = TernaryLaw::balanced(e, g.trivial(), g.trivial());
        let full = TernaryLaw::balanced(e, g.full(), g.full());
        for x in &all {
            for y in &all {
                for z in &all {
                    assert_eq!(trivial.eval(x, y, z), x.meet(y).meet(z));
                    // x − y + z
                    let expected = subset::sumset(
                        &g,
                        &subset::sumset(&g, x, &subset::negate(&g, y).unwrap()).unwrap(),
                        z,
                    )
                    .unwrap();
                    assert_eq!(full.eval(x, y, z), expected);
                }
            }
        }
        for law in [&trivial, &full] {
            assert!(check_para_associativity(law, &Domain::PowerSet(3), Mode::Exhaustive)
                .unwrap()
                .passed());
        }
    }

    #[test]
    fn degenerate_and_broken_laws() {
        let meet = TernaryLaw::custom("meet", |x: &Subset, y: &Subset, z: &Subset| x.meet(y).meet(z));
        assert!(check_para_associativity(&meet, &Domain::PowerSet(2), Mode::Exhaustive)
            .unwrap()
            .passed());
        // in an abelian group every bracketing of x+y+z+u+v agrees
        let z3 = grp("z3");
        let g = &z3;
        let sum = TernaryLaw::custom("sum", move |x: &Subset, y: &Subset, z: &Subset| {
            subset::sumset_unchecked(g, &subset::sumset_unchecked(g, x, y), z)
        });
        assert!(check_para_associativity(&sum, &Domain::PowerSet(3), Mode::Exhaustive)
            .unwrap()
            .passed());
        let s3 = grp("s3");
        let g = &s3;
        let sum = TernaryLaw::custom("sum", move |x: &Subset, y: &Subset, z: &Subset| {
            subset::sumset_unchecked(g, &subset::sumset_unchecked(g, x, y), z)
        });
        let mode = Mode::Random { seed: 4, samples: 2000 };
        let v = check_para_associativity(&sum, &Domain::PowerSet(6), mode).unwrap();
        let w = v.witness.expect("x+y+z is not para-associative on S3");
        assert_ne!(w.get("(xy(zuv))"), w.get("(x(uzy)v)"));
    }

    #[test]
    fn random_mode_is_deterministic() {
        let g = grp("s3");
        let e = Engine::new(&g);
        let b = s(&g, "0,1");
        let law = TernaryLaw::unbalanced(e, b);
        let mode = Mode::Random { seed: 1, samples: 300 };
        let v1 = check_para_associativity(&law, &Domain::PowerSet(6), mode).unwrap();
        let v2 = check_para_associativity(&law, &Domain::PowerSet(6), mode).unwrap();
        assert_eq!(v1, v2);
        assert!(v1.passed());
    }

    #[test]
    fn u_b_carriers() {
        let g = grp("z4");
        let e = Engine::new(&g);
        let c = carrier_u_b(e, &s(&g, "0,2")).unwrap();
        assert_eq!(c.len(), 4);
        let v = c.check_torsor(Mode::Exhaustive).unwrap();
        assert!(v.passed());
        let trivial = carrier_u_b(e, &g.trivial()).unwrap();
        assert_eq!(trivial.elements, vec![g.full()]);
        let grp1 = group_from_basepoint(&trivial, &g.full()).unwrap();
        assert_eq!(grp1.order(), 1);
        assert_eq!(trivial.torsor_graph().unwrap(), vec![[0, 0, 0, 0]]);
        assert!(matches!(carrier_u_b(e, &s(&g, "0,1")), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn full_power_set_is_not_a_torsor_under_the_unbalanced_law() {
        let g = grp("z4");
        let e = Engine::new(&g);
        let b = s(&g, "0,2");
        let law = TernaryLaw::unbalanced(e, b);
        let v = check_idempotent(&law, &Domain::PowerSet(4), Mode::Exhaustive).unwrap();
        let w = v.witness.unwrap();
        let x = s(&g, w.get("x").unwrap());
        assert!(!subset::is_left_transversal(&g, &x, &b).unwrap());
    }

    #[test]
    fn u_b_groups_are_abelian_of_order_four() {
        let g = grp("z4");
        let e = Engine::new(&g);
        let c = carrier_u_b(e, &s(&g, "0,2")).unwrap();
        for y in &c.elements {
            let h = group_from_basepoint(&c, y).unwrap();
            assert_eq!(h.order(), 4);
            assert!(h.is_abelian());
            assert_eq!(h.identity(), c.index_of(y).unwrap());
        }
    }

    #[test]
    fn pointwise_model_matches() {
        for name in ["z4", "s3", "d4", "z2xz4"] {
            let g = grp(name);
            let e = Engine::new(&g);
            for b in subset::grassmannian(&g).unwrap() {
                let secs = subset::left_transversal_set(&g, &b).unwrap();
                if secs.len() > 64 {
                    continue;
                }
                let v = check_pointwise_model(e, &b, &secs[0], Mode::Exhaustive).unwrap();
                assert!(v.passed(), "{name} b={b}: {:?}", v.witness);
            }
        }
    }

    #[test]
    fn u_ab_examples() {
        let k4 = grp("z2xz2");
        let e = Engine::new(&k4);
        let (a, b) = (s(&k4, "0,2"), s(&k4, "0,1"));
        let c = carrier_u_ab(e, &a, &b).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.check_torsor(Mode::Exhaustive).unwrap().passed());

        let z3z3 = grp("z3xz3");
        let e = Engine::new(&z3z3);
        let (a, b) = (s(&z3z3, "0,3,6"), s(&z3z3, "0,1,2"));
        let c = carrier_u_ab(e, &a, &b).unwrap();
        assert_eq!(c.len(), 6);
        assert!(c.check_torsor(Mode::Exhaustive).unwrap().passed());
        for y in &c.elements {
            let h = group_from_basepoint(&c, y).unwrap();
            assert!(!h.is_abelian());
            assert!(h.is_isomorphic(&grp("s3")));
        }

        let z4 = grp("z4");
        let e = Engine::new(&z4);
        let full = carrier_u_ab(e, &z4.full(), &z4.full()).unwrap();
        assert_eq!(full.elements, (0..4).map(|i| Subset::singleton(4, i)).collect::<Vec<_>>());
        // a section of {0,2} cannot be a singleton: carrier is legal but empty
        let none = carrier_u_ab(e, &s(&z4, "0,2"), &z4.full()).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn opposite_carrier_is_opposite_torsor() {
        let g = grp("s3");
        let e = Engine::new(&g);
        let gras = subset::grassmannian(&g).unwrap();
        for a in &gras {
            for b in &gras {
                let u = carrier_u_ab(e, a, b).unwrap();
                let uc = carrier_u_ab_check(e, b, a).unwrap();
                assert_eq!(u.elements, uc.elements);
                for x in &u.elements {
                    for y in &u.elements {
                        for z in &u.elements {
                            assert_eq!(uc.law.eval(x, y, z), u.law.eval(z, y, x));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn relation_composition_examples() {
        let k4 = grp("z2xz2");
        let (a, b) = (s(&k4, "0,2"), s(&k4, "0,1"));
        let zero = a;
        assert_eq!(compose_relations(&k4, &zero, &zero, &zero, &a, &b).unwrap(), zero);
        // bijections Z2 → Z2 as graphs in a × b
        let (id, swap) = (s(&k4, "0,3"), s(&k4, "1,2"));
        assert_eq!(compose_relations(&k4, &id, &id, &swap, &a, &b).unwrap(), swap);
        assert_eq!(compose_relations(&k4, &swap, &swap, &id, &a, &b).unwrap(), id);
        assert_eq!(compose_relations(&k4, &id, &swap, &id, &a, &b).unwrap(), swap);
        assert!(matches!(
            compose_relations(&k4, &zero, &zero, &zero, &a, &a),
            Err(Error::NotTransversal { .. })
        ));
    }

    #[test]
    fn relation_composition_matches_gamma_exhaustively_on_k4() {
        let g = grp("z2xz2");
        let all = Domain::PowerSet(4).materialize().unwrap();
        let gras = subset::grassmannian(&g).unwrap();
        for a in &gras {
            for b in &gras {
                if !subset::is_left_transversal(&g, a, b).unwrap() {
                    continue;
                }
                for x in &all {
                    for y in &all {
                        for z in &all {
                            assert_eq!(
                                compose_relations(&g, x, y, z, a, b).unwrap(),
                                structure::gamma(&g, x, a, y, b, z).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn transversal_triples_and_automorphisms() {
        let k4 = grp("z2xz2");
        let e = Engine::new(&k4);
        let v = check_transversal_triple(e, &s(&k4, "0,2"), &s(&k4, "0,1"), &s(&k4, "0,3")).unwrap();
        assert!(v.is_triple());
        assert_eq!(v.carrier_size, Some(1));
        assert_eq!(v.aut_size, Some(1));
        assert_eq!(v.isomorphic, Some(true));

        let z3z3 = grp("z3xz3");
        let e = Engine::new(&z3z3);
        let diag = s(&z3z3, "0,4,8");
        let v = check_transversal_triple(e, &s(&z3z3, "0,3,6"), &s(&z3z3, "0,1,2"), &diag).unwrap();
        assert!(v.is_triple());
        assert_eq!(v.carrier_size, Some(2));
        assert_eq!(v.isomorphic, Some(true));

        let s3 = grp("s3");
        let e = Engine::new(&s3);
        assert!(transversal_triples(e).unwrap().is_empty());
        let not = check_transversal_triple(e, &s3.trivial(), &s3.trivial(), &s3.trivial()).unwrap();
        assert!(!not.is_triple());
    }
}
