//! The structure maps Γ, Γ̌, Σ, Σ̌ and the structure space they project from.
//!
//! ```text
//! Γ(x,a,y,b,z)  = { ω | ∃α∈a, β∈b : α+ω+β ∈ y, α+ω ∈ z, ω+β ∈ x }
//! Γ̌(x,a,y,b,z)  = { ω | ∃α∈a, β∈b : β+ω+α ∈ y, ω+α ∈ z, β+ω ∈ x }
//! Σ(b,x,y,z)    = { ω | ∃β,β'∈b  : ω+β ∈ x, ω+β'+β ∈ y, ω+β' ∈ z }
//! Σ̌(b,x,y,z)    = { ω | ∃β,β'∈b  : β+ω ∈ x, β+β'+ω ∈ y, β'+ω ∈ z }
//! ```
//!
//! The first argument of Σ is always the quantified subset `b`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::subset::Subset;

/// The six letters in tuple order `(ξ,ζ; α,β; η,ω)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Xi,
    Zeta,
    Alpha,
    Beta,
    Eta,
    Omega,
}

impl Letter {
    pub const ALL: [Letter; 6] = [
        Letter::Xi,
        Letter::Zeta,
        Letter::Alpha,
        Letter::Beta,
        Letter::Eta,
        Letter::Omega,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        match self {
            Letter::Xi => 'ξ',
            Letter::Zeta => 'ζ',
            Letter::Alpha => 'α',
            Letter::Beta => 'β',
            Letter::Eta => 'η',
            Letter::Omega => 'ω',
        }
    }

    pub fn from_symbol(c: char) -> Option<Letter> {
        Letter::ALL.into_iter().find(|l| l.symbol() == c)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A point `(ξ,ζ; α,β; η,ω)` of `Ω⁶`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StructureTuple {
    pub xi: Elem,
    pub zeta: Elem,
    pub alpha: Elem,
    pub beta: Elem,
    pub eta: Elem,
    pub omega: Elem,
}

impl StructureTuple {
    pub fn from_array(v: [Elem; 6]) -> Self {
        StructureTuple {
            xi: v[0],
            zeta: v[1],
            alpha: v[2],
            beta: v[3],
            eta: v[4],
            omega: v[5],
        }
    }

    pub fn to_array(self) -> [Elem; 6] {
        [self.xi, self.zeta, self.alpha, self.beta, self.eta, self.omega]
    }

    pub fn get(&self, l: Letter) -> Elem {
        self.to_array()[l.index()]
    }

    /// The tuple determined by the free coordinates `(α, β, ω)`.
    pub fn from_free(g: &FiniteGroup, alpha: Elem, beta: Elem, omega: Elem) -> Self {
        let zeta = g.add(alpha, omega);
        StructureTuple {
            xi: g.add(omega, beta),
            zeta,
            alpha,
            beta,
            eta: g.add(zeta, beta),
            omega,
        }
    }

    /// Same, for the opposite structure space.
    pub fn from_free_opposite(g: &FiniteGroup, alpha: Elem, beta: Elem, omega: Elem) -> Self {
        let zeta = g.add(omega, alpha);
        StructureTuple {
            xi: g.add(beta, omega),
            zeta,
            alpha,
            beta,
            eta: g.add(beta, zeta),
            omega,
        }
    }
}

impl fmt::Display for StructureTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{};{},{};{},{})",
            self.xi, self.zeta, self.alpha, self.beta, self.eta, self.omega
        )
    }
}

/// `ζ = α+ω`, `η = α+ω+β`, `ξ = ω+β`.
pub fn is_structure_tuple(g: &FiniteGroup, t: &StructureTuple) -> bool {
    *t == StructureTuple::from_free(g, t.alpha, t.beta, t.omega)
}

/// `ζ = ω+α`, `η = β+ω+α`, `ξ = β+ω`.
pub fn is_opposite_structure_tuple(g: &FiniteGroup, t: &StructureTuple) -> bool {
    *t == StructureTuple::from_free_opposite(g, t.alpha, t.beta, t.omega)
}

/// Streams the structure space over its free coordinates; `|Ω|³` tuples.
pub fn structure_space(g: &FiniteGroup) -> impl Iterator<Item = StructureTuple> + '_ {
    let n = g.order();
    (0..n * n * n).map(move |k| StructureTuple::from_free(g, k / (n * n), k / n % n, k % n))
}

/// Six signs aligned with `(ξ,ζ; α,β; η,ω)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub [i8; 6]);

impl SignVector {
    pub const PLUS: SignVector = SignVector([1; 6]);
    pub const MINUS: SignVector = SignVector([-1; 6]);

    /// All 64 sign vectors; bit `i` of the index set means letter `i` is negated.
    pub fn all() -> impl Iterator<Item = SignVector> {
        (0u8..64).map(|m| {
            let mut s = [1i8; 6];
            for (i, v) in s.iter_mut().enumerate() {
                if m >> i & 1 == 1 {
                    *v = -1;
                }
            }
            SignVector(s)
        })
    }

    pub fn sign(&self, l: Letter) -> i8 {
        self.0[l.index()]
    }

    pub fn negatives(&self) -> usize {
        self.0.iter().filter(|&&s| s < 0).count()
    }

    /// `(s₁ξ, s₂ζ; s₃α, s₄β; s₅η, s₆ω)`.
    pub fn apply(&self, g: &FiniteGroup, t: &StructureTuple) -> StructureTuple {
        let mut v = t.to_array();
        for (e, &s) in v.iter_mut().zip(&self.0) {
            if s < 0 {
                *e = g.neg(*e);
            }
        }
        StructureTuple::from_array(v)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.0;
        write!(f, "({},{};{},{};{},{})", s[0], s[1], s[2], s[3], s[4], s[5])
    }
}

impl FromStr for SignVector {
    type Err = Error;

    /// Accepts `(1,-1;-1,1;1,1)` with any mix of `,` and `;` separators.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Map(format!("malformed sign vector {s:?}"));
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<i8> = body
            .split([',', ';'])
            .map(|p| match p.trim() {
                "1" | "+1" => Ok(1),
                "-1" | "−1" => Ok(-1),
                _ => Err(bad()),
            })
            .collect::<Result<_>>()?;
        let arr: [i8; 6] = parts.try_into().map_err(|_| bad())?;
        Ok(SignVector(arr))
    }
}

impl Serialize for SignVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Membership in the signed space `𝚪^s`.
pub fn signed_member(g: &FiniteGroup, s: SignVector, t: &StructureTuple) -> bool {
    is_structure_tuple(g, &s.apply(g, t))
}

/// `−t + s` for every `t`, indexed by `t`.
fn left_shifts(g: &FiniteGroup, s: &Subset) -> Vec<Subset> {
    g.elements()
        .map(|t| {
            let mt = g.neg(t);
            Subset::from_iter_unchecked(g.order(), s.iter().map(|e| g.add(mt, e)))
        })
        .collect()
}

/// `s − t` for every `t`, indexed by `t`.
fn right_shifts(g: &FiniteGroup, s: &Subset) -> Vec<Subset> {
    g.elements()
        .map(|t| {
            let mt = g.neg(t);
            Subset::from_iter_unchecked(g.order(), s.iter().map(|e| g.add(e, mt)))
        })
        .collect()
}

/// Shared shape of all four maps: `ω` is a member iff some `p ∈ outer` with
/// `c = pivot(ω, p) ∈ gate` leaves `inner ∩ first[ω]` meeting `second[c]`.
struct Scan<'a> {
    inner: &'a Subset,
    first: Vec<Subset>,
    outer: &'a Subset,
    gate: &'a Subset,
    second: Vec<Subset>,
}

impl Scan<'_> {
    fn run(&self, g: &FiniteGroup, pivot: impl Fn(Elem, Elem) -> Elem) -> Subset {
        let mut out = Subset::empty(g.order());
        if self.inner.is_empty() || self.outer.is_empty() {
            return out;
        }
        for w in g.elements() {
            let mask = self.inner.meet(&self.first[w]);
            if mask.is_empty() {
                continue;
            }
            let hit = self.outer.iter().any(|p| {
                let c = pivot(w, p);
                self.gate.contains(c) && mask.intersects(&self.second[c])
            });
            if hit {
                out.insert(w);
            }
        }
        out
    }
}

fn check_all(g: &FiniteGroup, sets: &[&Subset]) -> Result<()> {
    sets.iter().try_for_each(|s| g.check(s))
}

/// `Γ(x,a,y,b,z)`.
pub fn gamma(g: &FiniteGroup, x: &Subset, a: &Subset, y: &Subset, b: &Subset, z: &Subset) -> Result<Subset> {
    check_all(g, &[x, a, y, b, z])?;
    Ok(gamma_unchecked(g, x, a, y, b, z))
}

pub(crate) fn gamma_unchecked(g: &FiniteGroup, x: &Subset, a: &Subset, y: &Subset, b: &Subset, z: &Subset) -> Subset {
    // β ∈ b ∩ (−ω + x); α ∈ a with α+ω ∈ z; need β ∈ −(α+ω) + y
    Scan {
        inner: b,
        first: left_shifts(g, x),
        outer: a,
        gate: z,
        second: left_shifts(g, y),
    }
    .run(g, |w, alpha| g.add(alpha, w))
}

/// `Γ` with the sign of `β` flipped in the `ξ` condition (`ω − β ∈ x`).
///
/// Only used as a deliberately broken implementation to prove that the
/// checks are able to fail.
pub(crate) fn gamma_flipped_sign(g: &FiniteGroup, x: &Subset, a: &Subset, y: &Subset, b: &Subset, z: &Subset) -> Subset {
    let first: Vec<Subset> = left_shifts(g, x)
        .iter()
        .map(|s| crate::subset::negate_unchecked(g, s))
        .collect();
    Scan {
        inner: b,
        first,
        outer: a,
        gate: z,
        second: left_shifts(g, y),
    }
    .run(g, |w, alpha| g.add(alpha, w))
}

/// `Γ̌(x,a,y,b,z)`, which is `Γ` computed in the opposite group.
pub fn gamma_check(g: &FiniteGroup, x: &Subset, a: &Subset, y: &Subset, b: &Subset, z: &Subset) -> Result<Subset> {
    check_all(g, &[x, a, y, b, z])?;
    Ok(gamma_check_unchecked(g, x, a, y, b, z))
}

pub(crate) fn gamma_check_unchecked(
    g: &FiniteGroup,
    x: &Subset,
    a: &Subset,
    y: &Subset,
    b: &Subset,
    z: &Subset,
) -> Subset {
    // α ∈ a ∩ (−ω + z); β ∈ b with β+ω ∈ x; need α ∈ −(β+ω) + y
    Scan {
        inner: a,
        first: left_shifts(g, z),
        outer: b,
        gate: x,
        second: left_shifts(g, y),
    }
    .run(g, |w, beta| g.add(beta, w))
}

/// `Σ(b,x,y,z)`.
pub fn sigma(g: &FiniteGroup, b: &Subset, x: &Subset, y: &Subset, z: &Subset) -> Result<Subset> {
    check_all(g, &[b, x, y, z])?;
    Ok(sigma_unchecked(g, b, x, y, z))
}

pub(crate) fn sigma_unchecked(g: &FiniteGroup, b: &Subset, x: &Subset, y: &Subset, z: &Subset) -> Subset {
    // β ∈ b ∩ (−ω + x); β' ∈ b with ω+β' ∈ z; need β ∈ −(ω+β') + y
    Scan {
        inner: b,
        first: left_shifts(g, x),
        outer: b,
        gate: z,
        second: left_shifts(g, y),
    }
    .run(g, |w, bp| g.add(w, bp))
}

/// `Σ̌(b,x,y,z)`, which is `Σ` computed in the opposite group.
pub fn sigma_check(g: &FiniteGroup, b: &Subset, x: &Subset, y: &Subset, z: &Subset) -> Result<Subset> {
    check_all(g, &[b, x, y, z])?;
    Ok(sigma_check_unchecked(g, b, x, y, z))
}

pub(crate) fn sigma_check_unchecked(g: &FiniteGroup, b: &Subset, x: &Subset, y: &Subset, z: &Subset) -> Subset {
    // β ∈ b ∩ (x − ω); β' ∈ b with β'+ω ∈ z; need β ∈ y − (β'+ω)
    Scan {
        inner: b,
        first: right_shifts(g, x),
        outer: b,
        gate: z,
        second: right_shifts(g, y),
    }
    .run(g, |w, bp| g.add(bp, w))
}

/// Brute-force evaluations by projecting the structure space.
///
/// These share no code with the fast evaluators and serve as test oracles.
pub mod oracle {
    use super::*;

    pub fn gamma(g: &FiniteGroup, x: &Subset, a: &Subset, y: &Subset, b: &Subset, z: &Subset) -> Subset {
        let mut out = Subset::empty(g.order());
        for t in structure_space(g) {
            if a.contains(t.alpha)
                && b.contains(t.beta)
                && x.contains(t.xi)
                && y.contains(t.eta)
                && z.contains(t.zeta)
            {
                out.insert(t.omega);
            }
        }
        out
    }

    pub fn gamma_check(g: &FiniteGroup, x: &Subset, a: &Subset, y: &Subset, b: &Subset, z: &Subset) -> Subset {
        let n = g.order();
        let mut out = Subset::empty(n);
        for alpha in 0..n {
            for beta in 0..n {
                for omega in 0..n {
                    let t = StructureTuple::from_free_opposite(g, alpha, beta, omega);
                    if a.contains(alpha)
                        && b.contains(beta)
                        && x.contains(t.xi)
                        && y.contains(t.eta)
                        && z.contains(t.zeta)
                    {
                        out.insert(omega);
                    }
                }
            }
        }
        out
    }

    pub fn sigma(g: &FiniteGroup, b: &Subset, x: &Subset, y: &Subset, z: &Subset) -> Subset {
        let n = g.order();
        let mut out = Subset::empty(n);
        for omega in 0..n {
            for beta in 0..n {
                for bp in 0..n {
                    if b.contains(beta)
                        && b.contains(bp)
                        && x.contains(g.add(omega, beta))
                        && y.contains(g.add(g.add(omega, bp), beta))
                        && z.contains(g.add(omega, bp))
                    {
                        out.insert(omega);
                    }
                }
            }
        }
        out
    }

    pub fn sigma_check(g: &FiniteGroup, b: &Subset, x: &Subset, y: &Subset, z: &Subset) -> Subset {
        let n = g.order();
        let mut out = Subset::empty(n);
        for omega in 0..n {
            for beta in 0..n {
                for bp in 0..n {
                    if b.contains(beta)
                        && b.contains(bp)
                        && x.contains(g.add(beta, omega))
                        && y.contains(g.add(g.add(beta, bp), omega))
                        && z.contains(g.add(bp, omega))
                    {
                        out.insert(omega);
                    }
                }
            }
        }
        out
    }
}

/// One equation `lhs = ±l₁ ± l₂ …`, summed left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Letter,
    pub rhs: Vec<(i8, Letter)>,
}

impl Equation {
    fn eval_rhs(&self, g: &FiniteGroup, v: &[Option<Elem>; 6]) -> Option<Elem> {
        self.rhs.iter().try_fold(g.identity(), |acc, &(s, l)| {
            let e = v[l.index()]?;
            Some(g.add(acc, if s < 0 { g.neg(e) } else { e }))
        })
    }

    pub fn holds(&self, g: &FiniteGroup, t: &StructureTuple) -> bool {
        let v = t.to_array().map(Some);
        self.eval_rhs(g, &v) == Some(t.get(self.lhs))
    }

    /// Solves for the single unknown letter, if exactly one is unknown.
    fn solve(&self, g: &FiniteGroup, v: &[Option<Elem>; 6]) -> Option<(Letter, Elem)> {
        let letters = std::iter::once(self.lhs).chain(self.rhs.iter().map(|p| p.1));
        let unknown: Vec<Letter> = letters.filter(|l| v[l.index()].is_none()).collect();
        if unknown.len() != 1 {
            return None;
        }
        let u = unknown[0];
        if u == self.lhs {
            return Some((u, self.eval_rhs(g, v)?));
        }
        // lhs = P + s·u + S  ⇒  s·u = −P + lhs − S
        let k = self.rhs.iter().position(|p| p.1 == u)?;
        let signed = |(s, l): (i8, Letter)| {
            let e = v[l.index()].unwrap();
            if s < 0 {
                g.neg(e)
            } else {
                e
            }
        };
        let prefix = self.rhs[..k].iter().fold(g.identity(), |acc, &p| g.add(acc, signed(p)));
        let suffix = self.rhs[k + 1..].iter().fold(g.identity(), |acc, &p| g.add(acc, signed(p)));
        let lhs = v[self.lhs.index()].unwrap();
        let su = g.sub(g.add(g.neg(prefix), lhs), suffix);
        Some((u, if self.rhs[k].0 < 0 { g.neg(su) } else { su }))
    }
}

impl FromStr for Equation {
    type Err = Error;

    /// Parses `"ω=ξ-η+ζ"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Map(format!("malformed equation {s:?}"));
        let (lhs, rhs) = s.split_once('=').ok_or_else(bad)?;
        let mut lhs_chars = lhs.trim().chars();
        let lhs = lhs_chars.next().and_then(Letter::from_symbol).ok_or_else(bad)?;
        if lhs_chars.next().is_some() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut sign = 1i8;
        for c in rhs.chars().filter(|c| !c.is_whitespace()) {
            match c {
                '+' => sign = 1,
                '-' | '−' => sign = -1,
                _ => {
                    terms.push((sign, Letter::from_symbol(c).ok_or_else(bad)?));
                    sign = 1;
                }
            }
        }
        if terms.is_empty() {
            return Err(bad());
        }
        Ok(Equation { lhs, rhs: terms })
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}=", self.lhs)?;
        for (i, (s, l)) in self.rhs.iter().enumerate() {
            match (i, s) {
                (_, -1) => write!(f, "-{l}")?,
                (0, _) => write!(f, "{l}")?,
                _ => write!(f, "+{l}")?,
            }
        }
        Ok(())
    }
}

/// A named system of equations in the six letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct System {
    pub label: &'static str,
    pub equations: Vec<Equation>,
}

impl System {
    pub fn new(label: &'static str, equations: &[&str]) -> Self {
        System {
            label,
            equations: equations
                .iter()
                .map(|e| e.parse().expect("static equation literal"))
                .collect(),
        }
    }

    pub fn holds(&self, g: &FiniteGroup, t: &StructureTuple) -> bool {
        self.equations.iter().all(|e| e.holds(g, t))
    }

    /// Solves for all letters from the given ones by repeated single-unknown
    /// substitution; `None` if the system gets stuck.
    fn propagate(&self, g: &FiniteGroup, mut v: [Option<Elem>; 6]) -> Option<StructureTuple> {
        loop {
            if v.iter().all(Option::is_some) {
                return Some(StructureTuple::from_array(v.map(Option::unwrap)));
            }
            let (l, e) = self.equations.iter().find_map(|eq| eq.solve(g, &v))?;
            v[l.index()] = Some(e);
        }
    }

    /// Three letters from which the system determines all others, if any.
    pub fn free_letters(&self) -> Option<[Letter; 3]> {
        // the trivial group suffices: propagation success is independent of values
        let g = FiniteGroup::cyclic(1).unwrap();
        for i in 0..6 {
            for j in i + 1..6 {
                for k in j + 1..6 {
                    let mut v = [None; 6];
                    for idx in [i, j, k] {
                        v[idx] = Some(0);
                    }
                    if self.propagate(&g, v).is_some() {
                        return Some([Letter::ALL[i], Letter::ALL[j], Letter::ALL[k]]);
                    }
                }
            }
        }
        None
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eqs: Vec<String> = self.equations.iter().map(Equation::to_string).collect();
        write!(f, "{}: {{{}}}", self.label, eqs.join("; "))
    }
}

/// The alternative systems claimed to cut out exactly the structure space.
pub fn equivalent_systems() -> Vec<System> {
    vec![
        System::new("solved-for-alpha-omega-beta", &["α=η-ξ", "ω=ξ-η+ζ", "β=-ζ+η"]),
        System::new("eta-1", &["η=α+ω+β", "η=α+ξ", "η=ζ+β"]),
        System::new("eta-2", &["η=ζ-ω+ξ", "η=α+ξ", "η=ζ+β"]),
        System::new("omega-1", &["ω=ξ-η+ζ", "ω=ξ-β", "ω=-α+ζ"]),
        System::new("omega-2", &["ω=-α+η-β", "ω=ξ-β", "ω=-α+ζ"]),
        System::new("alpha-1", &["α=ζ+β-ξ", "α=η-ξ", "α=ζ-ω"]),
        System::new("alpha-2", &["α=η-β-ω", "α=η-ξ", "α=ζ-ω"]),
        System::new("beta-1", &["β=-ζ+α+ξ", "β=-ω+ξ", "β=-ζ+η"]),
        System::new("beta-2", &["β=-ω-α+η", "β=-ω+ξ", "β=-ζ+η"]),
        System::new("xi-1", &["ξ=-α+ζ+β", "ξ=-α+η", "ξ=ω+β"]),
        System::new("xi-2", &["ξ=ω-ζ+η", "ξ=-α+η", "ξ=ω+β"]),
        System::new("zeta-1", &["ζ=η-ξ+ω", "ζ=η-β", "ζ=α+ω"]),
        System::new("zeta-2", &["ζ=α+ξ-β", "ζ=η-β", "ζ=α+ω"]),
        System::new("mixed-1", &["η=α+ξ", "β=-ω+ξ", "ζ=α+ω"]),
        System::new("mixed-2", &["α=η-ξ", "ζ=η-β", "ω=ξ-β"]),
        System::new("mixed-3", &["α=ζ-ω", "ξ=ω+β", "η=ζ+β"]),
    ]
}

/// Why a system fails to describe the structure space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SystemFailure {
    /// A structure tuple that violates the system.
    Missing(StructureTuple),
    /// A solution of the system outside the structure space.
    Extra(StructureTuple),
    /// No three letters determine the rest.
    Underdetermined,
}

/// Decides whether `sys` has exactly the structure space as solution set.
///
/// Inclusion one way streams the structure space. For the other way, every
/// solution is fixed by its values on three free letters, so propagating all
/// `|Ω|³` assignments of those letters reaches every solution.
pub fn check_system(g: &FiniteGroup, sys: &System) -> std::result::Result<(), SystemFailure> {
    if let Some(t) = structure_space(g).find(|t| !sys.holds(g, t)) {
        return Err(SystemFailure::Missing(t));
    }
    let free = sys.free_letters().ok_or(SystemFailure::Underdetermined)?;
    let n = g.order();
    for k in 0..n * n * n {
        let mut v = [None; 6];
        v[free[0].index()] = Some(k / (n * n));
        v[free[1].index()] = Some(k / n % n);
        v[free[2].index()] = Some(k % n);
        let t = sys.propagate(g, v).expect("free letters propagate");
        if sys.holds(g, &t) && !is_structure_tuple(g, &t) {
            return Err(SystemFailure::Extra(t));
        }
    }
    Ok(())
}

/// Checks every system; returns the first failing label with its reason.
pub fn equivalent_systems_check(g: &FiniteGroup) -> std::result::Result<(), (String, SystemFailure)> {
    for sys in equivalent_systems() {
        check_system(g, &sys).map_err(|f| (sys.label.to_string(), f))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grp(name: &str) -> FiniteGroup {
        FiniteGroup::builtin(name).unwrap()
    }

    fn s(g: &FiniteGroup, lit: &str) -> Subset {
        g.parse_subset(lit).unwrap()
    }

    fn random_subset(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> Subset {
        Subset::from_bits(g.order(), rng.gen())
    }

    #[test]
    fn diagonal_values_on_z6() {
        let g = grp("z6");
        let (x, a, b) = (s(&g, "0,3"), s(&g, "0,2,4"), s(&g, "0,2,4"));
        assert_eq!(gamma(&g, &x, &a, &x, &b, &x).unwrap(), x);
        let (a, b) = (s(&g, "0,3"), s(&g, "0,2,4"));
        assert_eq!(gamma(&g, &a, &a, &s(&g, "0"), &b, &b).unwrap(), g.full());
    }

    #[test]
    fn gamma_matches_oracle_on_s3_two_element_inputs() {
        let g = grp("s3");
        let subgroups: Vec<Subset> = crate::subset::grassmannian(&g)
            .unwrap()
            .into_iter()
            .filter(|h| h.len() == 2)
            .collect();
        let pairs: Vec<Subset> = (0..64u128)
            .map(|bits| Subset::from_bits(6, bits))
            .filter(|x| x.len() == 2)
            .collect();
        for a in &subgroups {
            for b in &subgroups {
                for x in pairs.iter().step_by(2) {
                    for y in pairs.iter().step_by(3) {
                        for z in pairs.iter().step_by(2) {
                            assert_eq!(
                                gamma(&g, x, a, y, b, z).unwrap(),
                                oracle::gamma(&g, x, a, y, b, z)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn all_maps_match_oracles_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for name in ["z4", "s3", "d4", "q8", "z2xz4", "z5"] {
            let g = grp(name);
            for _ in 0..300 {
                let v: Vec<Subset> = (0..5).map(|_| random_subset(&g, &mut rng)).collect();
                let (x, a, y, b, z) = (&v[0], &v[1], &v[2], &v[3], &v[4]);
                assert_eq!(gamma(&g, x, a, y, b, z).unwrap(), oracle::gamma(&g, x, a, y, b, z));
                assert_eq!(
                    gamma_check(&g, x, a, y, b, z).unwrap(),
                    oracle::gamma_check(&g, x, a, y, b, z)
                );
                assert_eq!(sigma(&g, b, x, y, z).unwrap(), oracle::sigma(&g, b, x, y, z));
                assert_eq!(
                    sigma_check(&g, b, x, y, z).unwrap(),
                    oracle::sigma_check(&g, b, x, y, z)
                );
            }
        }
    }

    #[test]
    fn opposite_maps_are_maps_of_the_opposite_group() {
        let g = grp("s3");
        let op = g.opposite();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let v: Vec<Subset> = (0..5).map(|_| random_subset(&g, &mut rng)).collect();
            let (x, a, y, b, z) = (&v[0], &v[1], &v[2], &v[3], &v[4]);
            assert_eq!(gamma_check(&g, x, a, y, b, z), gamma(&op, x, a, y, b, z));
            // Γ̌(z,b,y,a,x) = Γ(x,a,y,b,z)
            assert_eq!(gamma_check(&g, z, b, y, a, x), gamma(&g, x, a, y, b, z));
        }
    }

    #[test]
    fn sigma_check_is_sigma_of_opposite_exhaustively_on_z2xz2_and_s3_samples() {
        let g = grp("k4");
        let all: Vec<Subset> = (0..16u128).map(|bits| Subset::from_bits(4, bits)).collect();
        for b in &all {
            for x in &all {
                for y in &all {
                    for z in &all {
                        assert_eq!(
                            sigma_check(&g, b, x, y, z).unwrap(),
                            sigma(&g.opposite(), b, x, y, z).unwrap()
                        );
                    }
                }
            }
        }
        let g = grp("s3");
        let op = g.opposite();
        let all: Vec<Subset> = (0..64u128).map(|bits| Subset::from_bits(6, bits)).collect();
        for b in all.iter().step_by(5) {
            for x in all.iter().step_by(3) {
                for y in all.iter().step_by(7) {
                    for z in all.iter().step_by(3) {
                        assert_eq!(sigma_check(&g, b, x, y, z), sigma(&op, b, x, y, z));
                    }
                }
            }
        }
    }

    #[test]
    fn abelian_groups_have_equal_opposite_maps() {
        let g = grp("z2xz4");
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..500 {
            let v: Vec<Subset> = (0..5).map(|_| random_subset(&g, &mut rng)).collect();
            assert_eq!(
                gamma(&g, &v[0], &v[1], &v[2], &v[3], &v[4]),
                gamma_check(&g, &v[0], &v[1], &v[2], &v[3], &v[4])
            );
            assert_eq!(sigma(&g, &v[0], &v[1], &v[2], &v[3]), sigma_check(&g, &v[0], &v[1], &v[2], &v[3]));
        }
    }

    #[test]
    fn nonabelian_opposite_maps_differ_somewhere() {
        let g = grp("s3");
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut gamma_differs = false;
        let mut sigma_differs = false;
        for _ in 0..2000 {
            let v: Vec<Subset> = (0..5).map(|_| random_subset(&g, &mut rng)).collect();
            gamma_differs |= gamma(&g, &v[0], &v[1], &v[2], &v[3], &v[4])
                != gamma_check(&g, &v[0], &v[1], &v[2], &v[3], &v[4]);
            sigma_differs |=
                sigma(&g, &v[0], &v[1], &v[2], &v[3]) != sigma_check(&g, &v[0], &v[1], &v[2], &v[3]);
        }
        assert!(gamma_differs && sigma_differs);
    }

    #[test]
    fn sigma_examples() {
        let g = grp("z4");
        let b = s(&g, "0,2");
        let (x, z) = (s(&g, "0,1"), s(&g, "2,3"));
        assert_eq!(sigma(&g, &b, &x, &x, &z).unwrap(), z);
        assert_eq!(sigma(&g, &b, &x, &x, &x).unwrap(), x);
        let (x, y, z) = (s(&g, "0,1"), s(&g, "0,3"), s(&g, "0,1"));
        assert_eq!(sigma(&g, &b, &x, &y, &z).unwrap(), oracle::sigma(&g, &b, &x, &y, &z));
    }

    #[test]
    fn empty_quantifier_sets_give_empty_results() {
        let g = grp("z4");
        let full = g.full();
        let e = Subset::empty(4);
        assert!(gamma(&g, &full, &e, &full, &full, &full).unwrap().is_empty());
        assert!(gamma(&g, &full, &full, &full, &e, &full).unwrap().is_empty());
        assert!(sigma(&g, &e, &full, &full, &full).unwrap().is_empty());
        assert_eq!(
            gamma(&g, &full, &full, &full, &full, &Subset::empty(6)),
            Err(Error::GroupMismatch(4, 6))
        );
    }

    #[test]
    fn structure_space_basics() {
        let z2 = grp("z2");
        assert_eq!(structure_space(&z2).count(), 8);
        let s3 = grp("s3");
        let all: Vec<StructureTuple> = structure_space(&s3).collect();
        assert_eq!(all.len(), 216);
        assert!(all.iter().all(|t| is_structure_tuple(&s3, t)));
        assert!(is_structure_tuple(&s3, &StructureTuple::from_array([0; 6])));
        let z4 = grp("z4");
        let t = StructureTuple::from_array([1, 2, 1, 0, 2, 1]);
        assert!(is_structure_tuple(&z4, &t));
    }

    #[test]
    fn sign_vectors() {
        let s3 = grp("s3");
        let t = StructureTuple::from_free(&s3, 1, 4, 3);
        assert_eq!(signed_member(&s3, SignVector::PLUS, &t), is_structure_tuple(&s3, &t));
        // 𝚪̌ = 𝚪^(−1,…,−1), and the two spaces have the same size
        let n = 6;
        for k in 0..n * n * n {
            let t = StructureTuple::from_free_opposite(&s3, k / 36, k / 6 % 6, k % 6);
            assert!(signed_member(&s3, SignVector::MINUS, &t));
            assert!(is_opposite_structure_tuple(&s3, &t));
        }
        let k4 = grp("k4");
        let base: Vec<StructureTuple> = structure_space(&k4).collect();
        for sv in SignVector::all() {
            assert!(base.iter().all(|t| signed_member(&k4, sv, t)));
        }
        assert_eq!(SignVector::all().count(), 64);
        let parsed: SignVector = "(1,-1;-1,1;1,1)".parse().unwrap();
        assert_eq!(parsed.to_string(), "(1,-1;-1,1;1,1)");
        assert!("(1,1,1)".parse::<SignVector>().is_err());
    }

    #[test]
    fn equation_parsing_and_solving() {
        let e: Equation = "ω=ξ-η+ζ".parse().unwrap();
        assert_eq!(e.to_string(), "ω=ξ-η+ζ");
        assert_eq!(e.rhs.len(), 3);
        assert!("ωξ=ξ".parse::<Equation>().is_err());
        assert!("ω=".parse::<Equation>().is_err());
        let g = grp("s3");
        // solve the middle unknown of a non-commutative word
        let e: Equation = "η=α+ω+β".parse().unwrap();
        for t in structure_space(&g) {
            let mut v = t.to_array().map(Some);
            v[Letter::Omega.index()] = None;
            assert_eq!(e.solve(&g, &v), Some((Letter::Omega, t.omega)));
        }
    }

    #[test]
    fn equivalent_systems_hold() {
        assert_eq!(equivalent_systems().len(), 16);
        for name in ["z1", "z2", "z3", "s3", "d4", "q8", "z2xz4"] {
            assert_eq!(equivalent_systems_check(&grp(name)), Ok(()), "{name}");
        }
        for sys in equivalent_systems() {
            assert!(sys.free_letters().is_some(), "{sys}");
        }
    }

    #[test]
    fn corrupted_system_is_rejected_with_witness() {
        let z3 = grp("z3");
        let sys = System::new("flipped", &["α=η+ξ", "ω=ξ-η+ζ", "β=-ζ+η"]);
        match check_system(&z3, &sys) {
            Err(SystemFailure::Missing(t)) => {
                assert!(is_structure_tuple(&z3, &t));
                assert!(!sys.holds(&z3, &t));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        // exponent 2 cannot see the flip
        assert_eq!(check_system(&grp("z2"), &sys), Ok(()));
        let weak = System::new("weak", &["ζ=α+ω", "ζ=α+ω", "ζ=α+ω"]);
        assert_eq!(check_system(&z3, &weak), Err(SystemFailure::Underdetermined));
    }

    #[test]
    fn flipped_gamma_differs_only_beyond_exponent_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let k4 = grp("k4");
        for _ in 0..200 {
            let v: Vec<Subset> = (0..5).map(|_| random_subset(&k4, &mut rng)).collect();
            assert_eq!(
                gamma_flipped_sign(&k4, &v[0], &v[1], &v[2], &v[3], &v[4]),
                gamma_unchecked(&k4, &v[0], &v[1], &v[2], &v[3], &v[4])
            );
        }
        let z4 = grp("z4");
        let differs = (0..200).any(|_| {
            let v: Vec<Subset> = (0..5).map(|_| random_subset(&z4, &mut rng)).collect();
            gamma_flipped_sign(&z4, &v[0], &v[1], &v[2], &v[3], &v[4])
                != gamma_unchecked(&z4, &v[0], &v[1], &v[2], &v[3], &v[4])
        });
        assert!(differs);
    }
}
