//! The Big Klein group: the 24 permutations of the six structure letters that preserve
//! the blocks `{α,β}`, `{ξ,ζ}`, `{η,ω}`, and the sign vectors with `σ.𝚪 = 𝚪^{s(σ)}`.
//!
//! Letters correspond to two-element subsets of `{1,2,3,4}`:
//! `α={1,2} β={3,4} ξ={1,3} ζ={2,4} η={1,4} ω={2,3}`, and `S₄` acts on them naturally.
//! A permutation acts on tuples by `(σ.t)[σ(L)] = t[L]`.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::structure::{is_structure_tuple, signed_member, structure_space, Letter, SignVector, StructureTuple};
use crate::subset::{is_symmetric, negate_unchecked, Subset};
use crate::torsor::TorsorCarrier;
use crate::verdict::{decode, sample_rng, scan, Mode, Verdict, Witness};

const PAIRS: [(Letter, [u8; 2]); 6] = [
    (Letter::Alpha, [1, 2]),
    (Letter::Beta, [3, 4]),
    (Letter::Xi, [1, 3]),
    (Letter::Zeta, [2, 4]),
    (Letter::Eta, [1, 4]),
    (Letter::Omega, [2, 3]),
];

/// Order in which six-letter cycles are written.
const CYCLE_ORDER: [Letter; 6] = [Letter::Alpha, Letter::Beta, Letter::Xi, Letter::Zeta, Letter::Eta, Letter::Omega];

const BLOCKS: [[Letter; 2]; 3] = [[Letter::Alpha, Letter::Beta], [Letter::Xi, Letter::Zeta], [Letter::Eta, Letter::Omega]];

fn letter_of_pair(mut p: [u8; 2]) -> Letter {
    p.sort_unstable();
    PAIRS.iter().find(|(_, q)| *q == p).expect("every pair names a letter").0
}

/// An element of the Big Klein group together with the permutation of `{1,2,3,4}` inducing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SixPermutation {
    /// `images[L.index()] = σ(L)`
    images: [Letter; 6],
    /// `s4[i-1] = π(i)`
    s4: [u8; 4],
}

impl SixPermutation {
    /// The permutation of the letters induced by `π ∈ S₄` (given by the images of 1..4).
    pub fn from_s4(pi: [u8; 4]) -> Result<Self> {
        let mut seen = pi;
        seen.sort_unstable();
        if seen != [1, 2, 3, 4] {
            return Err(Error::Map(format!("{pi:?} is not a permutation of 1..4")));
        }
        let mut images = [Letter::Xi; 6];
        for (l, [i, j]) in PAIRS {
            images[l.index()] = letter_of_pair([pi[i as usize - 1], pi[j as usize - 1]]);
        }
        Ok(SixPermutation { images, s4: pi })
    }

    pub fn apply(&self, l: Letter) -> Letter {
        self.images[l.index()]
    }

    /// `(σ.t)[σ(L)] = t[L]`.
    pub fn act(&self, t: &StructureTuple) -> StructureTuple {
        let src = t.to_array();
        let mut out = [0; 6];
        for l in Letter::ALL {
            out[self.apply(l).index()] = src[l.index()];
        }
        StructureTuple::from_array(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SixPermutation) -> SixPermutation {
        let mut images = [Letter::Xi; 6];
        for l in Letter::ALL {
            images[l.index()] = self.apply(other.apply(l));
        }
        let s4 = other.s4.map(|j| self.s4[j as usize - 1]);
        SixPermutation { images, s4 }
    }

    pub fn s4_images(&self) -> [u8; 4] {
        self.s4
    }

    pub fn is_even(&self) -> bool {
        let mut inversions = 0;
        for i in 0..6 {
            for j in i + 1..6 {
                if self.images[i] > self.images[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    pub fn preserves_blocks(&self) -> bool {
        BLOCKS.iter().all(|[p, q]| {
            let (sp, sq) = (self.apply(*p), self.apply(*q));
            BLOCKS.iter().any(|blk| blk.contains(&sp) && blk.contains(&sq))
        })
    }

    pub fn is_even_in_s4(&self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.s4[i] > self.s4[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    /// Cycle notation in `S₄`, each cycle starting at its least point: `(1243)`.
    pub fn s4_label(&self) -> String {
        cycles((1..=4u8).collect(), |i| self.s4[i as usize - 1], |i| i.to_string())
    }

    /// Cycle notation on the letters, cycles started in the order `α β ξ ζ η ω`: `(αωξ)(βηζ)`.
    pub fn letter_label(&self) -> String {
        cycles(CYCLE_ORDER.to_vec(), |l| self.apply(l), |l| l.symbol().to_string())
    }
}

fn cycles<T: Copy + PartialEq>(order: Vec<T>, f: impl Fn(T) -> T, show: impl Fn(T) -> String) -> String {
    let mut done: Vec<T> = Vec::new();
    let mut out = String::new();
    for &start in &order {
        if done.contains(&start) || f(start) == start {
            continue;
        }
        out.push('(');
        let mut cur = start;
        loop {
            done.push(cur);
            out.push_str(&show(cur));
            cur = f(cur);
            if cur == start {
                break;
            }
        }
        out.push(')');
    }
    if out.is_empty() {
        "id".to_string()
    } else {
        out
    }
}

impl fmt::Display for SixPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ↦ {}", self.s4_label(), self.letter_label())
    }
}

/// The 24 elements, one per permutation of `{1,2,3,4}` in lexicographic order.
pub fn big_klein_group() -> Vec<SixPermutation> {
    let mut out = Vec::with_capacity(24);
    for a in 1..=4u8 {
        for b in 1..=4u8 {
            for c in 1..=4u8 {
                for d in 1..=4u8 {
                    let pi = [a, b, c, d];
                    if let Ok(p) = SixPermutation::from_s4(pi) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// One row of the published sign table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignRow {
    pub s4: &'static str,
    pub letters: &'static str,
    /// The sign vector as printed.
    pub printed: &'static str,
    /// The sign vector that holds, when it differs from the printed one.
    pub erratum: Option<&'static str>,
}

const fn row(s4: &'static str, letters: &'static str, printed: &'static str) -> SignRow {
    SignRow { s4, letters, printed, erratum: None }
}

/// The table as published. The `(134)` row is printed with a `;` where a `,` belongs;
/// the parser accepts either separator. The `(13)` row is printed with the signs of `α`
/// and `β` exchanged: the printed vector breaks the cocycle law [`check_sign_cocycle`]
/// and is not a sign vector of that permutation on any group with an element of order > 2.
pub const SIGN_TABLE: [SignRow; 24] = [
    row("id", "id", "(1,1;1,1;1,1)"),
    row("(12)(34)", "(ξζ)(ηω)", "(1,1;-1,-1;1,1)"),
    row("(13)(24)", "(αβ)(ηω)", "(-1,-1;1,1;-1,-1)"),
    row("(14)(23)", "(αβ)(ξζ)", "(-1,-1;-1,-1;-1,-1)"),
    row("(123)", "(αωξ)(βηζ)", "(1,-1;-1,1;-1,-1)"),
    row("(132)", "(αξω)(βζη)", "(-1,1;-1,-1;-1,1)"),
    row("(124)", "(αζη)(βξω)", "(-1,1;1,1;1,-1)"),
    row("(142)", "(αηζ)(βωξ)", "(-1,1;1,-1;1,1)"),
    row("(134)", "(αωζ)(βηξ)", "(1,-1;-1,1;1;1)"),
    row("(143)", "(αζω)(βξη)", "(1,-1;1,1;1,-1)"),
    row("(234)", "(αξη)(βζω)", "(1,-1;-1,-1;-1,1)"),
    row("(243)", "(αηξ)(βωζ)", "(-1,1;1,-1;-1,-1)"),
    row("(12)", "(ξω)(ζη)", "(1,1;1,-1;1,1)"),
    SignRow {
        s4: "(13)",
        letters: "(αω)(βη)",
        printed: "(1,-1;1,-1;1,-1)",
        erratum: Some("(1,-1;-1,1;1,-1)"),
    },
    row("(14)", "(αζ)(βξ)", "(1,1;1,1;1,-1)"),
    row("(23)", "(αξ)(βζ)", "(-1,-1;-1,-1;-1,1)"),
    row("(24)", "(αη)(βω)", "(-1,1;1,-1;1,-1)"),
    row("(34)", "(ξη)(ζω)", "(1,1;-1,1;1,1)"),
    row("(1234)", "(αωβη)(ξζ)", "(1,-1;-1,1;-1,1)"),
    row("(1243)", "(αζβξ)(ηω)", "(-1,-1;1,1;1,-1)"),
    row("(1324)", "(αβ)(ξωζη)", "(-1,-1;1,-1;-1,-1)"),
    row("(1342)", "(αξβζ)(ηω)", "(1,1;-1,-1;-1,1)"),
    row("(1423)", "(αβ)(ξηζω)", "(-1,-1;-1,1;-1,-1)"),
    row("(1432)", "(αηβω)(ξζ)", "(-1,1;1,-1;-1,1)"),
];

impl SignRow {
    /// The sign vector that holds, taking the erratum into account.
    pub fn sign_vector(&self) -> SignVector {
        self.erratum.unwrap_or(self.printed).parse().expect("table entries are well formed")
    }

    pub fn printed_vector(&self) -> SignVector {
        self.printed.parse().expect("table entries are well formed")
    }

    pub fn permutation(&self) -> SixPermutation {
        *big_klein_group()
            .iter()
            .find(|p| p.s4_label() == self.s4)
            .expect("every row names an element of S₄")
    }
}

/// Every `s` with `σ.𝚪 = 𝚪^s`. Both sides have `|Ω|³` points, so inclusion suffices.
pub fn derive_sign_vectors(g: &FiniteGroup, sigma: &SixPermutation) -> Vec<SignVector> {
    let moved: Vec<StructureTuple> = structure_space(g).map(|t| sigma.act(&t)).collect();
    SignVector::all()
        .filter(|&s| moved.iter().all(|t| signed_member(g, s, t)))
        .collect()
}

/// Outcome of one table row on one group.
#[derive(Debug, Clone, Serialize)]
pub struct RowVerdict {
    pub s4: &'static str,
    pub letters: &'static str,
    pub expected: SignVector,
    pub printed: SignVector,
    pub derived: Vec<SignVector>,
    /// The computed letter permutation matches the printed one.
    pub letters_match: bool,
}

impl RowVerdict {
    pub fn passed(&self) -> bool {
        self.letters_match && self.derived.contains(&self.expected)
    }

    pub fn printed_holds(&self) -> bool {
        self.derived.contains(&self.printed)
    }

    pub fn unique(&self) -> bool {
        self.derived.len() == 1
    }
}

/// Re-derives all 24 rows. An empty derived set contradicts the theorem and is an error.
pub fn verify_sign_table(g: &FiniteGroup) -> Result<Vec<RowVerdict>> {
    SIGN_TABLE
        .iter()
        .map(|r| {
            let sigma = r.permutation();
            let derived = derive_sign_vectors(g, &sigma);
            if derived.is_empty() {
                return Err(Error::TheoremViolation(format!(
                    "no sign vector transforms the structure space of {} under {}",
                    g.name(),
                    r.s4
                )));
            }
            Ok(RowVerdict {
                s4: r.s4,
                letters: r.letters,
                expected: r.sign_vector(),
                printed: r.printed_vector(),
                derived,
                letters_match: sigma.letter_label() == r.letters,
            })
        })
        .collect()
}

/// Number of distinct spaces among `σ.𝚪` once sign changes in `α`, `β` are ignored.
///
/// The elements fixing the class of `𝚪` form a Klein four-group, so there are
/// `24/4 = 6` cosets; the count of distinct classes is larger because `σ` moves the
/// `α`, `β` slots. See [`class_stabilizer`].
pub fn orbit_count(g: &FiniteGroup) -> usize {
    space_classes(g).into_iter().collect::<BTreeSet<_>>().len()
}

/// The class of `σ.𝚪` with signs in `α`, `β` forgotten, for every `σ` in [`big_klein_group`] order.
pub fn space_classes(g: &FiniteGroup) -> Vec<Vec<StructureTuple>> {
    big_klein_group()
        .iter()
        .map(|sigma| {
            let mut pts: Vec<StructureTuple> = structure_space(g)
                .map(|t| {
                    let mut u = sigma.act(&t);
                    u.alpha = u.alpha.min(g.neg(u.alpha));
                    u.beta = u.beta.min(g.neg(u.beta));
                    u
                })
                .collect();
            pts.sort_unstable();
            pts.dedup();
            pts
        })
        .collect()
}

/// `S₄` labels of the `σ` with `σ.𝚪` in the class of `𝚪`, computed on `g`.
pub fn class_stabilizer_on(g: &FiniteGroup) -> Vec<String> {
    let classes = space_classes(g);
    let v = big_klein_group();
    let id = v.iter().position(|p| p.s4_label() == "id").expect("identity is listed");
    v.iter()
        .zip(&classes)
        .filter(|(_, c)| **c == classes[id])
        .map(|(p, _)| p.s4_label())
        .collect()
}

/// Same count on the published sign vectors: distinct `(s₁,s₂,s₅,s₆)` parts.
pub fn table_orbit_count() -> usize {
    SIGN_TABLE
        .iter()
        .map(|r| {
            let s = r.sign_vector().0;
            [s[0], s[1], s[4], s[5]]
        })
        .collect::<BTreeSet<_>>()
        .len()
}

/// The `σ` whose sign vector is trivial outside `α`, `β`.
pub fn class_stabilizer() -> Vec<&'static str> {
    SIGN_TABLE
        .iter()
        .filter(|r| {
            let s = r.sign_vector();
            [Letter::Xi, Letter::Zeta, Letter::Eta, Letter::Omega].iter().all(|&l| s.sign(l) == 1)
        })
        .map(|r| r.s4)
        .collect()
}

/// `σ` acting on a sign vector by moving entries: `(σ.s)[σ(L)] = s[L]`.
pub fn act_on_signs(sigma: &SixPermutation, s: SignVector) -> SignVector {
    let mut out = [1; 6];
    for l in Letter::ALL {
        out[sigma.apply(l).index()] = s.0[l.index()];
    }
    SignVector(out)
}

/// `s(στ) = s(σ) · σ.s(τ)` for every pair, with `s` given per element of `S₄`.
pub fn check_sign_cocycle(s: impl Fn(&SixPermutation) -> SignVector + Sync + Send) -> Verdict {
    let v = big_klein_group();
    let n = v.len() as u64;
    scan(n * n, |k| {
        let (p, q) = (&v[(k / n) as usize], &v[(k % n) as usize]);
        let lhs = s(&p.compose(q));
        let (sp, sq) = (s(p), act_on_signs(p, s(q)));
        let rhs = SignVector(std::array::from_fn(|i| sp.0[i] * sq.0[i]));
        (lhs != rhs).then(|| {
            Witness::new()
                .with("sigma", p.s4_label())
                .with("tau", q.s4_label())
                .with("s(sigma tau)", lhs)
                .with("product", rhs)
        })
    })
}

/// Sign vector of a table row looked up by permutation.
pub fn table_sign(sigma: &SixPermutation, printed: bool) -> SignVector {
    let label = sigma.s4_label();
    let r = SIGN_TABLE.iter().find(|r| r.s4 == label).expect("every element has a row");
    if printed {
        r.printed_vector()
    } else {
        r.sign_vector()
    }
}

/// The four identities relating `Γ` under the Klein group `{id,(14),(23),(14)(23)}`.
pub fn check_second_symmetry(engine: Engine<'_>, mode: Mode) -> Verdict {
    let g = engine.group;
    let n = g.order();
    let neg = |s: &Subset| negate_unchecked(g, s);
    let probe = |s: [Subset; 5]| -> Option<Witness> {
        let [x, a, y, b, z] = &s;
        let base = engine.gamma(x, a, y, b, z);
        let check = engine.gamma_check(x, a, y, b, z);
        let w = |what: &str| {
            Some(
                Witness::new()
                    .with("x", x)
                    .with("a", a)
                    .with("y", y)
                    .with("b", b)
                    .with("z", z)
                    .with("identity", what),
            )
        };
        if engine.gamma(b, z, y, x, a) != neg(&base) {
            return w("Γ(b,z,y,x,a) = −Γ(x,a,y,b,z)");
        }
        if engine.gamma(z, b, y, a, x) != check {
            return w("Γ(z,b,y,a,x) = Γ̌(x,a,y,b,z)");
        }
        if engine.gamma(a, x, y, z, b) != neg(&check) {
            return w("Γ(a,x,y,z,b) = −Γ̌(x,a,y,b,z)");
        }
        if s.iter().all(|t| is_symmetric(g, t)) && engine.gamma(a, x, y, z, b) != base {
            return w("Γ(a,x,y,z,b) = Γ(x,a,y,b,z) for symmetric subsets");
        }
        None
    };
    let symmetric: Vec<Subset> = (0..1u128 << n.min(20))
        .map(|bits| Subset::from_bits(n, bits))
        .filter(|s| is_symmetric(g, s))
        .take(1 << 12)
        .collect();
    match mode {
        Mode::Exhaustive => {
            let m = 1usize << n;
            scan((m as u64).pow(5), |i| {
                let d = decode(i, m, 5);
                probe([0, 1, 2, 3, 4].map(|k| Subset::from_bits(n, d[k] as u128)))
            })
        }
        Mode::Random { seed, samples } => scan(samples, |i| {
            let mut rng = sample_rng(seed, i);
            // every other sample draws symmetric subsets so the last clause is exercised
            let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
                if i % 2 == 1 && !symmetric.is_empty() {
                    symmetric[rng.gen_range(0..symmetric.len())]
                } else {
                    Subset::from_bits(n, rng.gen::<u128>() & mask(n))
                }
            };
            probe([pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng)])
        }),
    }
}

fn mask(n: usize) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// The torsor graph `{(x,y,z,(xyz))}` is invariant under `(12)(34)` and `(13)(24)`.
pub fn klein_invariance_check(carrier: &TorsorCarrier<'_>) -> Result<Verdict> {
    let graph: BTreeSet<[usize; 4]> = carrier.torsor_graph()?.into_iter().collect();
    let moves: [(&str, [usize; 4]); 2] = [("(12)(34)", [1, 0, 3, 2]), ("(13)(24)", [2, 3, 0, 1])];
    let tuples: Vec<[usize; 4]> = graph.iter().copied().collect();
    let count = (tuples.len() * moves.len()) as u64;
    Ok(scan(count, |i| {
        let t = tuples[i as usize / moves.len()];
        let (name, perm) = moves[i as usize % moves.len()];
        let moved = perm.map(|p| t[p]);
        (!graph.contains(&moved)).then(|| {
            let show = |u: [usize; 4]| {
                u.iter().map(|&k| carrier.elements[k].to_string()).collect::<Vec<_>>().join(" | ")
            };
            Witness::new().with("move", name).with("tuple", show(t)).with("image", show(moved))
        })
    }))
}

/// The `(ξ,η,ζ,ω)` coordinates of every structure tuple satisfy `ω = ξ − η + ζ`.
pub fn check_torsor_projection(g: &FiniteGroup) -> Verdict {
    let n = g.order() as u64;
    scan(n * n * n, |k| {
        let d = decode(k, g.order(), 3);
        let t = StructureTuple::from_free(g, d[0], d[1], d[2]);
        let w = g.add(g.sub(t.xi, t.eta), t.zeta);
        (w != t.omega || !is_structure_tuple(g, &t)).then(|| Witness::new().with("tuple", t))
    })
}
