//! The affine picture of `U_ab`: subsets transversal to `b` as maps `y → b`,
//! the deformed product `X + Z ∘ B`, and the near-ring `(Map(V,W), ·_A)`.

use rand::Rng;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::operator::{canonical_kernel, homomorphisms, product_factors, ElementMap};
use crate::structure::gamma_unchecked;
use crate::subset::{graph_of_map, map_from_transversal, transversal_unchecked, MapGraph, SectionAtlas, Side, Subset};
use crate::verdict::{decode, sample_rng, scan, tally, Mode, Verdict, Witness};

/// Largest `|b|^|y|` for which every map `y → b` is enumerated.
pub const MAP_ENUMERATION_CAP: u64 = 4096;

/// `X + Z ∘ B^{a,x,b}_y : y → b`, where `x` is the left graph of `X`.
pub fn affine_product(g: &FiniteGroup, x_map: &MapGraph, z_map: &MapGraph, a: &Subset, y: &Subset, b: &Subset) -> Result<MapGraph> {
    if x_map.domain() != *y || z_map.domain() != *y || x_map.codomain() != *b || z_map.codomain() != *b {
        return Err(Error::Map(format!("affine product needs maps {y} → {b}")));
    }
    let x = graph_of_map(g, x_map, Side::Left);
    let kernel = canonical_kernel(g, a, &x, b, y)?;
    let pairs = y.iter().map(|eta| {
        let moved = kernel.get(eta).expect("kernel is defined on y");
        let z = z_map.get(moved).expect("kernel maps y into y");
        (eta, g.add(x_map.get(eta).expect("X is total on y"), z))
    });
    MapGraph::new(g, *y, *b, pairs.collect::<Vec<_>>())
}

/// `Γ(G_X,a,y,b,G_Z) = G_{X + Z∘B}` for every subgroup pair, every `y ∈ a^⊤ ∩ ^⊤b` with
/// `|b|^|y| ≤ map_cap`, every `X` with `a ⊤ G_X` and every `Z`.
pub fn check_affine_picture(engine: Engine<'_>, atlas: &SectionAtlas, map_cap: u64) -> Result<Verdict> {
    let g = engine.group;
    tally(|n| {
        for (a, _, a_secs) in atlas.iter() {
            for (b, b_secs, _) in atlas.iter() {
                if (b.len() as u64).checked_pow((g.order() / b.len()) as u32).is_none_or(|c| c > map_cap) {
                    continue;
                }
                for y in b_secs.iter().filter(|y| a_secs.contains(y)) {
                    let maps = MapGraph::all(g, *y, *b)?;
                    let graphs: Vec<Subset> = maps.iter().map(|m| graph_of_map(g, m, Side::Left)).collect();
                    for (xm, x) in maps.iter().zip(&graphs) {
                        if !transversal_unchecked(g, a, x) {
                            continue;
                        }
                        for (zm, z) in maps.iter().zip(&graphs) {
                            let prod = affine_product(g, xm, zm, a, y, b)?;
                            let got = engine.gamma(x, a, y, b, z);
                            n.ensure(graph_of_map(g, &prod, Side::Left) == got, || {
                                Witness::new()
                                    .with("a", a)
                                    .with("y", y)
                                    .with("b", b)
                                    .with("x", x)
                                    .with("z", z)
                                    .with("gamma", got)
                            })?;
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

/// Subsets of `U_ab` (as `a^⊤ ∩ ^⊤b`) and `U_b` (as `^⊤b`) for one subgroup pair.
fn carriers(atlas: &SectionAtlas, ai: usize, bi: usize) -> (Vec<Subset>, &[Subset]) {
    let u_b = atlas.left[bi].as_slice();
    let u_ab = atlas.right[ai].iter().filter(|x| u_b.contains(x)).copied().collect();
    (u_ab, u_b)
}

/// Which distributive law to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distributivity {
    /// `(x y (uvw)_b)_ab = ((xyu)_ab (xyv)_ab (xyw)_ab)_b`
    Left,
    /// `((uvw)_b y x)_ab = ((uyx)_ab (vyx)_ab (wyx)_ab)_b`
    Right,
}

/// One distributive law for the subgroup pair `(subgroups[ai], subgroups[bi])`.
///
/// Returns `None` when `U_ab` is empty, so there is nothing to check.
pub fn check_distributive(
    engine: Engine<'_>,
    atlas: &SectionAtlas,
    ai: usize,
    bi: usize,
    side: Distributivity,
    mode: Mode,
) -> Option<Verdict> {
    let (a, b) = (&atlas.subgroups[ai], &atlas.subgroups[bi]);
    let (u_ab, u_b) = carriers(atlas, ai, bi);
    if u_ab.is_empty() {
        return None;
    }
    let gam = |p: &Subset, q: &Subset, r: &Subset| engine.gamma(p, a, q, b, r);
    let sig = |p: &Subset, q: &Subset, r: &Subset| engine.sigma(b, p, q, r);
    let probe = |x: &Subset, y: &Subset, u: &Subset, v: &Subset, w: &Subset| {
        let (lhs, rhs) = match side {
            Distributivity::Left => (gam(x, y, &sig(u, v, w)), sig(&gam(x, y, u), &gam(x, y, v), &gam(x, y, w))),
            Distributivity::Right => (gam(&sig(u, v, w), y, x), sig(&gam(u, y, x), &gam(v, y, x), &gam(w, y, x))),
        };
        (lhs != rhs).then(|| {
            Witness::new()
                .with("a", a)
                .with("b", b)
                .with("x", x)
                .with("y", y)
                .with("u", u)
                .with("v", v)
                .with("w", w)
                .with("lhs", lhs)
                .with("rhs", rhs)
        })
    };
    let (p, q) = (u_ab.len(), u_b.len());
    Some(match mode {
        Mode::Exhaustive => {
            let count = (p * p * q * q * q) as u64;
            scan(count, |i| {
                let [x, y, u, v, w] = decode5(i, [p, p, q, q, q]);
                probe(&u_ab[x], &u_ab[y], &u_b[u], &u_b[v], &u_b[w])
            })
        }
        Mode::Random { seed, samples } => scan(samples, |i| {
            let mut rng = sample_rng(seed, i);
            let x = &u_ab[rng.gen_range(0..p)];
            let y = &u_ab[rng.gen_range(0..p)];
            let u = &u_b[rng.gen_range(0..q)];
            let v = &u_b[rng.gen_range(0..q)];
            let w = &u_b[rng.gen_range(0..q)];
            probe(x, y, u, v, w)
        }),
    })
}

fn decode5(mut index: u64, radix: [usize; 5]) -> [usize; 5] {
    let mut out = [0; 5];
    for (slot, r) in out.iter_mut().zip(radix).rev() {
        *slot = (index % r as u64) as usize;
        index /= r as u64;
    }
    out
}

/// The kernel is a homomorphism into `Bij(y)` with opposite composition:
/// `B^{(x y z)} = B^z ∘ B^x` for `x, z ∈ U_ab` and base point `y ∈ U_ab`.
pub fn check_kernel_homomorphism(engine: Engine<'_>, atlas: &SectionAtlas) -> Result<Verdict> {
    let g = engine.group;
    tally(|n| {
        for ai in 0..atlas.subgroups.len() {
            for bi in 0..atlas.subgroups.len() {
                let (a, b) = (&atlas.subgroups[ai], &atlas.subgroups[bi]);
                let (u_ab, _) = carriers(atlas, ai, bi);
                for y in &u_ab {
                    let kernels: Vec<ElementMap> = u_ab.iter().map(|x| canonical_kernel(g, a, x, b, y)).collect::<Result<_>>()?;
                    for (x, bx) in u_ab.iter().zip(&kernels) {
                        for (z, bz) in u_ab.iter().zip(&kernels) {
                            let xz = engine.gamma(x, a, y, b, z);
                            let got = canonical_kernel(g, a, &xz, b, y)?;
                            n.ensure(got == bz.compose(bx)?, || {
                                Witness::new().with("a", a).with("b", b).with("y", y).with("x", x).with("z", z)
                            })?;
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

/// In `Ω = y × b` with `a = G_A`: `G_X ↦ −A∘X + id` turns `Γ(·,a,y,b,·)` into opposite
/// composition, and the affine formula reads `X + Z ∘ (−A∘X + id)`.
pub fn check_direct_product_homomorphism(y_factor: &FiniteGroup, b_factor: &FiniteGroup, mode: Mode) -> Result<Verdict> {
    let (g, y, b) = product_factors(y_factor, b_factor)?;
    let g = &g;
    let maps = MapGraph::all(g, y, b)?;
    let homs = homomorphisms(g, &b, &y)?;
    let kernel_of = |am: &ElementMap, xm: &MapGraph| -> Result<ElementMap> {
        let ax = am.compose(&ElementMap::from_graph(g, xm))?;
        Ok(ElementMap::from_fn(g, &y, |eta| g.add(g.neg(ax.get(eta).expect("total")), eta)))
    };
    let mut cases = Vec::new();
    for hom in &homs {
        let a = graph_of_map(g, hom, Side::Left);
        let am = ElementMap::from_graph(g, hom);
        let members: Vec<(&MapGraph, Subset, ElementMap)> = maps
            .iter()
            .map(|m| Ok((m, graph_of_map(g, m, Side::Left), kernel_of(&am, m)?)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|(_, x, _)| transversal_unchecked(g, &a, x))
            .collect();
        cases.push((a, members));
    }
    let probe = |ci: usize, i: usize, j: usize| -> Option<Witness> {
        let (a, members) = &cases[ci];
        let (xm, x, bx) = &members[i];
        let (zm, z, bz) = &members[j];
        let xz = gamma_unchecked(g, x, a, &y, &b, z);
        let expected_map = MapGraph::new(
            g,
            y,
            b,
            y.iter().map(|eta| (eta, g.add(xm.get(eta).unwrap(), zm.get(bx.get(eta).unwrap()).unwrap()))).collect::<Vec<_>>(),
        )
        .ok()?;
        let fail = |what: &str| Some(Witness::new().with("group", g.name()).with("a", a).with("x", x).with("z", z).with("identity", what));
        if graph_of_map(g, &expected_map, Side::Left) != xz {
            return fail("Γ(G_X,G_A,y,b,G_Z) = G_{X + Z(−AX + id)}");
        }
        let Ok(xz_map) = map_from_transversal(g, &xz, &y, &b) else {
            return fail("product lies in ^⊤b");
        };
        let hom = &homs[ci];
        let bxz = kernel_of(&ElementMap::from_graph(g, hom), &xz_map).ok()?;
        if Some(bxz) != bz.compose(bx).ok() {
            return fail("(−A(XZ) + id) = (−AZ + id)(−AX + id)");
        }
        None
    };
    let index: Vec<(usize, usize, usize)> = cases
        .iter()
        .enumerate()
        .flat_map(|(ci, (_, m))| (0..m.len()).flat_map(move |i| (0..m.len()).map(move |j| (ci, i, j))))
        .collect();
    if index.is_empty() {
        return Ok(Verdict::pass(0));
    }
    Ok(match mode {
        Mode::Exhaustive => scan(index.len() as u64, |k| {
            let (ci, i, j) = index[k as usize];
            probe(ci, i, j)
        }),
        Mode::Random { seed, samples } => scan(samples, |k| {
            let (ci, i, j) = index[sample_rng(seed, k).gen_range(0..index.len())];
            probe(ci, i, j)
        }),
    })
}

/// `Map(V,W)` with the product `X ·_A Y = Y + X ∘ (id_V + A ∘ Y)` for a homomorphism `A: W → V`.
///
/// Maps are value tables indexed by the elements of their domain.
#[derive(Debug, Clone)]
pub struct NearRing<'g> {
    v: &'g FiniteGroup,
    w: &'g FiniteGroup,
    a: Vec<Elem>,
}

impl<'g> NearRing<'g> {
    pub fn new(v: &'g FiniteGroup, w: &'g FiniteGroup, a: Vec<Elem>) -> Result<Self> {
        if a.len() != w.order() || a.iter().any(|&e| e >= v.order()) {
            return Err(Error::Map(format!("A must map the {} elements of W into V", w.order())));
        }
        for p in w.elements() {
            for q in w.elements() {
                if a[w.add(p, q)] != v.add(a[p], a[q]) {
                    return Err(Error::NotHomomorphism(format!("A({p} + {q}) ≠ A({p}) + A({q})")));
                }
            }
        }
        Ok(NearRing { v, w, a })
    }

    pub fn zero(&self) -> Vec<Elem> {
        vec![self.w.identity(); self.v.order()]
    }

    fn check_map(&self, x: &[Elem]) -> Result<()> {
        if x.len() != self.v.order() || x.iter().any(|&e| e >= self.w.order()) {
            return Err(Error::Map(format!("expected a map from {} elements of V into W", self.v.order())));
        }
        Ok(())
    }

    /// `id_V + A ∘ X : V → V`.
    pub fn kernel(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        self.check_map(x)?;
        Ok(self.v.elements().map(|p| self.v.add(p, self.a[x[p]])).collect())
    }

    pub fn product(&self, x: &[Elem], y: &[Elem]) -> Result<Vec<Elem>> {
        self.check_map(x)?;
        let k = self.kernel(y)?;
        Ok(self.v.elements().map(|p| self.w.add(y[p], x[k[p]])).collect())
    }

    pub fn is_invertible(&self, x: &[Elem]) -> Result<bool> {
        let mut k = self.kernel(x)?;
        k.sort_unstable();
        k.dedup();
        Ok(k.len() == self.v.order())
    }

    /// `−X ∘ (id_V + A ∘ X)⁻¹`, defined on `G_A`.
    pub fn quasi_inverse(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        if !self.is_invertible(x)? {
            return Err(Error::NotInvertible);
        }
        let k = self.kernel(x)?;
        let mut inv = vec![0; k.len()];
        for (p, &q) in k.iter().enumerate() {
            inv[q] = p;
        }
        Ok(inv.iter().map(|&p| self.w.neg(x[p])).collect())
    }

    /// Pointwise sum in `W`, left operand first.
    pub fn add(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        x.iter().zip(y).map(|(&p, &q)| self.w.add(p, q)).collect()
    }

    pub fn map_count(&self) -> u64 {
        (self.w.order() as u64).saturating_pow(self.v.order() as u32)
    }

    /// Map number `i` in odometer order.
    pub fn map(&self, i: u64) -> Vec<Elem> {
        decode(i, self.w.order(), self.v.order())
    }

    /// Associativity, neutrality of `0`, and the group laws on `G_A`.
    pub fn check_axioms(&self, mode: Mode) -> Verdict {
        let m = self.map_count();
        let zero = self.zero();
        let probe = |x: Vec<Elem>, y: Vec<Elem>, z: Vec<Elem>| -> Option<Witness> {
            let w = |what: &str| {
                Some(
                    Witness::new()
                        .with("x", format!("{x:?}"))
                        .with("y", format!("{y:?}"))
                        .with("z", format!("{z:?}"))
                        .with("law", what),
                )
            };
            let p = |l: &[Elem], r: &[Elem]| self.product(l, r).expect("maps are well formed");
            if p(&p(&x, &y), &z) != p(&x, &p(&y, &z)) {
                return w("associativity");
            }
            if p(&x, &zero) != x || p(&zero, &x) != x {
                return w("neutral zero");
            }
            if self.is_invertible(&x).ok()? && self.is_invertible(&y).ok()? {
                if !self.is_invertible(&p(&x, &y)).ok()? {
                    return w("G_A closed");
                }
                let xi = self.quasi_inverse(&x).ok()?;
                if p(&x, &xi) != zero || p(&xi, &x) != zero {
                    return w("quasi-inverse");
                }
            }
            None
        };
        match mode {
            Mode::Exhaustive => scan(m.saturating_pow(3), |i| {
                let d = decode(i, m as usize, 3);
                probe(self.map(d[0] as u64), self.map(d[1] as u64), self.map(d[2] as u64))
            }),
            Mode::Random { seed, samples } => scan(samples, |i| {
                let mut rng = sample_rng(seed, i);
                let mut pick = || self.map(rng.gen_range(0..m));
                probe(pick(), pick(), pick())
            }),
        }
    }
}

/// The near-ring of self-maps of a group under pointwise sum and composition:
/// `(x + y) ∘ z = x∘z + y∘z`, associativity of `∘`, and the group laws of `+`.
pub fn check_self_map_near_ring(g: &FiniteGroup, mode: Mode) -> Verdict {
    let n = g.order();
    let m = (n as u64).saturating_pow(n as u32);
    let map = |i: u64| decode(i, n, n);
    let probe = |x: Vec<Elem>, y: Vec<Elem>, z: Vec<Elem>| -> Option<Witness> {
        let comp = |f: &[Elem], h: &[Elem]| h.iter().map(|&e| f[e]).collect::<Vec<_>>();
        let add = |f: &[Elem], h: &[Elem]| f.iter().zip(h).map(|(&p, &q)| g.add(p, q)).collect::<Vec<_>>();
        let neg = |f: &[Elem]| f.iter().map(|&p| g.neg(p)).collect::<Vec<_>>();
        let zero = vec![g.identity(); n];
        let w = |what: &str| {
            Some(
                Witness::new()
                    .with("x", format!("{x:?}"))
                    .with("y", format!("{y:?}"))
                    .with("z", format!("{z:?}"))
                    .with("law", what),
            )
        };
        if comp(&add(&x, &y), &z) != add(&comp(&x, &z), &comp(&y, &z)) {
            return w("right distributive");
        }
        if comp(&comp(&x, &y), &z) != comp(&x, &comp(&y, &z)) {
            return w("composition associative");
        }
        if add(&add(&x, &y), &z) != add(&x, &add(&y, &z)) || add(&x, &neg(&x)) != zero || add(&zero, &x) != x {
            return w("pointwise group");
        }
        None
    };
    match mode {
        Mode::Exhaustive => scan(m.saturating_pow(3), |i| {
            let d = decode(i, m as usize, 3);
            probe(map(d[0] as u64), map(d[1] as u64), map(d[2] as u64))
        }),
        Mode::Random { seed, samples } => scan(samples, |i| {
            let mut rng = sample_rng(seed, i);
            let mut pick = || map(rng.gen_range(0..m));
            probe(pick(), pick(), pick())
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(name: &str) -> FiniteGroup {
        FiniteGroup::builtin(name).unwrap()
    }

    fn assert_pass(v: Verdict) {
        assert!(v.passed(), "{:?}", v.witness);
        assert!(v.checked > 0);
    }

    #[test]
    fn affine_product_degenerate_cases() {
        let g = grp("k4");
        let (y, b, a) = (g.parse_subset("0,2").unwrap(), g.parse_subset("0,1").unwrap(), g.parse_subset("0,3").unwrap());
        let zero = MapGraph::zero(&g, y, b).unwrap();
        for xm in MapGraph::all(&g, y, b).unwrap() {
            let x = graph_of_map(&g, &xm, Side::Left);
            if !transversal_unchecked(&g, &a, &x) {
                continue;
            }
            assert_eq!(affine_product(&g, &xm, &zero, &a, &y, &b).unwrap(), xm);
            assert_eq!(affine_product(&g, &zero, &xm, &a, &y, &b).unwrap(), xm);
        }
    }

    #[test]
    fn affine_picture_on_corpus() {
        for name in ["k4", "z4", "z6", "s3", "d4", "q8", "z2xz4"] {
            let g = grp(name);
            let atlas = SectionAtlas::new(&g).unwrap();
            assert_pass(check_affine_picture(Engine::new(&g), &atlas, 64).unwrap());
        }
    }

    #[test]
    fn left_distributive_holds() {
        for name in ["k4", "z4", "s3", "d4", "z3xz3"] {
            let g = grp(name);
            let atlas = SectionAtlas::new(&g).unwrap();
            let e = Engine::new(&g);
            for ai in 0..atlas.subgroups.len() {
                for bi in 0..atlas.subgroups.len() {
                    let mode = Mode::Random { seed: 11, samples: 300 };
                    if let Some(v) = check_distributive(e, &atlas, ai, bi, Distributivity::Left, mode) {
                        assert_pass(v);
                    }
                }
            }
        }
    }

    #[test]
    fn right_distributive_fails_for_nonaffine_maps() {
        // In Z_4 × Z_4 with a the diagonal, U_ab contains graphs of non-affine maps Z_4 → Z_4.
        let g = grp("z4xz4");
        let atlas = SectionAtlas::new(&g).unwrap();
        let a = g.parse_subset("0,5,10,15").unwrap();
        let b = g.parse_subset("0,1,2,3").unwrap();
        let ai = atlas.subgroups.iter().position(|s| *s == a).unwrap();
        let bi = atlas.subgroups.iter().position(|s| *s == b).unwrap();
        let e = Engine::new(&g);
        let mode = Mode::Random { seed: 2, samples: 2000 };
        assert_pass(check_distributive(e, &atlas, ai, bi, Distributivity::Left, mode).unwrap());
        let right = check_distributive(e, &atlas, ai, bi, Distributivity::Right, mode).unwrap();
        assert!(right.witness.is_some());
    }

    #[test]
    fn kernel_composition_law() {
        for name in ["k4", "z4", "s3", "d4", "z3xz3"] {
            let g = grp(name);
            let atlas = SectionAtlas::new(&g).unwrap();
            assert_pass(check_kernel_homomorphism(Engine::new(&g), &atlas).unwrap());
        }
    }

    #[test]
    fn direct_product_homomorphism() {
        for (y, b) in [("z2", "z2"), ("z3", "z3"), ("s3", "z2"), ("z2", "s3")] {
            assert_pass(check_direct_product_homomorphism(&grp(y), &grp(b), Mode::Exhaustive).unwrap());
        }
        assert_pass(check_direct_product_homomorphism(&grp("z2"), &grp("z4"), Mode::Random { seed: 5, samples: 200 }).unwrap());
    }

    #[test]
    fn near_ring_special_cases() {
        let z3 = grp("z3");
        let zero_hom = NearRing::new(&z3, &z3, vec![0, 0, 0]).unwrap();
        let x = vec![1, 2, 2];
        let y = vec![0, 1, 1];
        assert_eq!(zero_hom.product(&x, &y).unwrap(), zero_hom.add(&y, &x));
        assert_eq!(zero_hom.quasi_inverse(&x).unwrap(), vec![2, 1, 1]);
        assert!(matches!(NearRing::new(&z3, &z3, vec![0, 1, 1]), Err(Error::NotHomomorphism(_))));

        let z2 = grp("z2");
        let id = NearRing::new(&z2, &z2, vec![0, 1]).unwrap();
        assert!(id.is_invertible(&[1, 1]).unwrap());
        assert!(!id.is_invertible(&[1, 0]).unwrap());
        assert_eq!(id.quasi_inverse(&[1, 0]), Err(Error::NotInvertible));
    }

    #[test]
    fn invertible_count_is_factorial_for_identity_deformation() {
        for (n, fact) in [(2usize, 2u64), (3, 6), (4, 24)] {
            let zn = FiniteGroup::cyclic(n).unwrap();
            let ring = NearRing::new(&zn, &zn, (0..n).collect()).unwrap();
            let members: Vec<Vec<Elem>> = (0..ring.map_count())
                .map(|i| ring.map(i))
                .filter(|x| ring.is_invertible(x).unwrap())
                .collect();
            assert_eq!(members.len() as u64, fact);
            // X ↦ id + X is a homomorphism into Bij(V)
            for x in &members {
                for y in &members {
                    let k = ring.kernel(&ring.product(x, y).unwrap()).unwrap();
                    let (kx, ky) = (ring.kernel(x).unwrap(), ring.kernel(y).unwrap());
                    assert_eq!(k, ky.iter().map(|&p| kx[p]).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn near_ring_axioms() {
        let z3 = grp("z3");
        let ring = NearRing::new(&z3, &z3, vec![0, 1, 2]).unwrap();
        assert_pass(ring.check_axioms(Mode::Exhaustive));
        let s3 = grp("s3");
        let z2 = grp("z2");
        // V = S_3, W = Z_2, A picks an involution of S_3
        let inv = s3.elements().find(|&e| s3.element_order(e) == 2).unwrap();
        let ring = NearRing::new(&s3, &z2, vec![0, inv]).unwrap();
        assert_pass(ring.check_axioms(Mode::Random { seed: 3, samples: 1000 }));
        assert_pass(check_self_map_near_ring(&z3, Mode::Exhaustive));
        assert_pass(check_self_map_near_ring(&s3, Mode::Random { seed: 1, samples: 1000 }));
    }
}
