//! Values of `Γ` on subgroup tuples in terms of `∧ = ∩` and the sumset `+`.

use crate::engine::Engine;
use crate::subset::Subset;
use crate::verdict::{Mode, Verdict, Witness};

use super::{scan_tuples, Pool};

/// An identity `lhs = rhs` in the subgroup tuple `(x,a,y,b,z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeIdentity {
    /// `Γ(x,a,x,b,z) = ((x∧a)+z) ∧ (x+b)`
    DiagonalXY1,
    /// `Γ(x,a,x,b,z) = (x∧a) + (z ∧ (x+b))`
    DiagonalXY2,
    /// `Γ(x,a,y,b,a) = ((x ∧ (a+y)) + b) ∧ a`
    DiagonalAZ1,
    /// `Γ(x,a,y,b,a) = (x + ((y+a) ∧ b)) ∧ a`
    DiagonalAZ2,
    /// `Γ(x,a,y,b,b) = ((a + (y∧b)) ∧ x) + b`
    DiagonalBZ1,
    /// `Γ(x,a,y,b,b) = (a ∧ (x + (y∧b))) + b`
    DiagonalBZ2,
    /// `Γ(x,a,x,b,x) = x`
    Triple,
    /// `Γ(a,a,y,b,b) = a + b`
    Join,
    /// `Γ(b,a,y,b,a) = a ∧ b`
    Meet,
    /// `((x∧a)+z) ∧ x = (x∧a) + (z∧x)`
    Modular,
    /// `x + (z ∧ (x+b)) = (x+z) ∧ (x+b)`
    DualModular,
}

impl LatticeIdentity {
    pub const ALL: [LatticeIdentity; 11] = [
        LatticeIdentity::DiagonalXY1,
        LatticeIdentity::DiagonalXY2,
        LatticeIdentity::DiagonalAZ1,
        LatticeIdentity::DiagonalAZ2,
        LatticeIdentity::DiagonalBZ1,
        LatticeIdentity::DiagonalBZ2,
        LatticeIdentity::Triple,
        LatticeIdentity::Join,
        LatticeIdentity::Meet,
        LatticeIdentity::Modular,
        LatticeIdentity::DualModular,
    ];

    pub fn formula(self) -> &'static str {
        use LatticeIdentity::*;
        match self {
            DiagonalXY1 => "Γ(x,a,x,b,z) = ((x∧a)+z) ∧ (x+b)",
            DiagonalXY2 => "Γ(x,a,x,b,z) = (x∧a) + (z ∧ (x+b))",
            DiagonalAZ1 => "Γ(x,a,y,b,a) = ((x ∧ (a+y)) + b) ∧ a",
            DiagonalAZ2 => "Γ(x,a,y,b,a) = (x + ((y+a) ∧ b)) ∧ a",
            DiagonalBZ1 => "Γ(x,a,y,b,b) = ((a + (y∧b)) ∧ x) + b",
            DiagonalBZ2 => "Γ(x,a,y,b,b) = (a ∧ (x + (y∧b))) + b",
            Triple => "Γ(x,a,x,b,x) = x",
            Join => "Γ(a,a,y,b,b) = a + b",
            Meet => "Γ(b,a,y,b,a) = a ∧ b",
            Modular => "((x∧a)+z) ∧ x = (x∧a) + (z∧x)",
            DualModular => "x + (z ∧ (x+b)) = (x+z) ∧ (x+b)",
        }
    }

    /// Both sides at `(x,a,y,b,z)`. A lattice-swap mutation exchanges `∧` and `+` on the right.
    pub fn sides(self, engine: Engine<'_>, t: [Subset; 5]) -> (Subset, Subset) {
        use LatticeIdentity::*;
        let [x, a, y, b, z] = t;
        let swap = engine.swaps_lattice_ops();
        let meet = |p: Subset, q: Subset| if swap { engine.sumset(&p, &q) } else { p.meet(&q) };
        let join = |p: Subset, q: Subset| if swap { p.meet(&q) } else { engine.sumset(&p, &q) };
        let gam = |p: Subset, q: Subset, r: Subset, s: Subset, u: Subset| engine.gamma(&p, &q, &r, &s, &u);
        // left sides use the true operations
        let m = |p: Subset, q: Subset| p.meet(&q);
        let j = |p: Subset, q: Subset| engine.sumset(&p, &q);
        match self {
            DiagonalXY1 => (gam(x, a, x, b, z), meet(join(meet(x, a), z), join(x, b))),
            DiagonalXY2 => (gam(x, a, x, b, z), join(meet(x, a), meet(z, join(x, b)))),
            DiagonalAZ1 => (gam(x, a, y, b, a), meet(join(meet(x, join(a, y)), b), a)),
            DiagonalAZ2 => (gam(x, a, y, b, a), meet(join(x, meet(join(y, a), b)), a)),
            DiagonalBZ1 => (gam(x, a, y, b, b), join(meet(join(a, meet(y, b)), x), b)),
            DiagonalBZ2 => (gam(x, a, y, b, b), join(meet(a, join(x, meet(y, b))), b)),
            Triple => (gam(x, a, x, b, x), if swap { join(x, meet(x, x)) } else { x }),
            Join => (gam(a, a, y, b, b), join(a, b)),
            Meet => (gam(b, a, y, b, a), meet(a, b)),
            Modular => (m(j(m(x, a), z), x), join(meet(x, a), meet(z, x))),
            DualModular => (j(x, m(z, j(x, b))), meet(join(x, z), join(x, b))),
        }
    }

    pub fn check(self, engine: Engine<'_>, gras: &[Subset], mode: Mode) -> Verdict {
        scan_tuples::<5>(Pool::Listed(gras), mode, |t| {
            let (lhs, rhs) = self.sides(engine, t);
            (lhs != rhs).then(|| {
                let [x, a, y, b, z] = t;
                Witness::new()
                    .with("x", x)
                    .with("a", a)
                    .with("y", y)
                    .with("b", b)
                    .with("z", z)
                    .with("lhs", lhs)
                    .with("rhs", rhs)
            })
        })
    }
}

/// `x ∧ (x+y) = x` for any subset `x` and `y ∋ o`.
pub fn check_absorption_meet(engine: Engine<'_>, mode: Mode) -> Verdict {
    let g = engine.group;
    let n = g.order();
    let swap = engine.swaps_lattice_ops();
    // x ranges over the power set, y over 𝒫^o; encode the pair as one 2-tuple scan
    let pool_x = Pool::PowerSet(n);
    let pool_y = Pool::Pointed(n, g.identity());
    pair_scan(pool_x, pool_y, mode, |x, y| {
        let lhs = if swap { engine.sumset(&x, &x.meet(&y)) } else { x.meet(&engine.sumset(&x, &y)) };
        (lhs != x).then(|| Witness::new().with("x", x).with("y", y).with("x ∧ (x+y)", lhs))
    })
}

/// `x + (x∧y) = x = (x∧y) + x` for a subgroup `x` and `y ∋ o`.
pub fn check_absorption_join(engine: Engine<'_>, gras: &[Subset], mode: Mode) -> Verdict {
    let g = engine.group;
    let swap = engine.swaps_lattice_ops();
    pair_scan(Pool::Listed(gras), Pool::Pointed(g.order(), g.identity()), mode, |x, y| {
        let (l, r) = if swap {
            (x.meet(&engine.sumset(&x, &y)), engine.sumset(&x, &y).meet(&x))
        } else {
            (engine.sumset(&x, &x.meet(&y)), engine.sumset(&x.meet(&y), &x))
        };
        (l != x || r != x).then(|| {
            Witness::new()
                .with("x", x)
                .with("y", y)
                .with("x + (x∧y)", l)
                .with("(x∧y) + x", r)
        })
    })
}

fn pair_scan(
    px: Pool<'_>,
    py: Pool<'_>,
    mode: Mode,
    probe: impl Fn(Subset, Subset) -> Option<Witness> + Sync + Send,
) -> Verdict {
    use crate::verdict::{sample_rng, scan};
    match mode {
        Mode::Exhaustive => {
            let (mx, my) = (px.size(), py.size());
            scan(mx * my, |i| probe(px.at(i / my), py.at(i % my)))
        }
        Mode::Random { seed, samples } => scan(samples, |i| {
            let mut rng = sample_rng(seed, i);
            probe(px.sample(&mut rng), py.sample(&mut rng))
        }),
    }
}
