//! One line per acceptance criterion. Exits non-zero on any failure that is not a
//! documented erratum of the source table.

use std::process::{Command, ExitCode};
use std::time::Instant;

use torsorlab::engine::{Engine, Mutation};
use torsorlab::subset::grassmannian;
use torsorlab::suites::{run_checks, run_lattice_suite, CheckResult, Config, Report, Status, CORPUS};
use torsorlab::symmetry::{self, check_sign_cocycle, table_sign, verify_sign_table};
use torsorlab::torsor::{carrier_u_ab, group_from_basepoint};
use torsorlab::FiniteGroup;

struct Line {
    criterion: &'static str,
    title: &'static str,
    ok: bool,
    /// A failure that is known, explained, and does not fail the run.
    known: bool,
    detail: String,
}

fn grp(name: &str) -> FiniteGroup {
    FiniteGroup::builtin(name).unwrap()
}

fn suite(g: &FiniteGroup, ids: &[&str]) -> Report {
    run_checks(g, &Config::default(), |e| ids.iter().any(|id| e.id == *id || e.id.starts_with(&format!("{id}."))))
}

fn samples(c: &CheckResult) -> Option<u64> {
    c.mode.split("k=").nth(1)?.trim_end_matches(')').parse().ok()
}

fn first_failure<'a>(reports: impl IntoIterator<Item = &'a Report>) -> Option<String> {
    reports.into_iter().find_map(|r| {
        r.failures().next().map(|c| {
            let w = c.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
            format!("{} on {}: {w}", c.check_id, r.group)
        })
    })
}

fn secs(t: Instant) -> f64 {
    t.elapsed().as_secs_f64()
}

fn semitorsor_laws() -> Line {
    let t = Instant::now();
    let mut problems = Vec::new();
    let mut reports = Vec::new();
    for (name, exhaustive) in [("z2", true), ("z4", true), ("s3", false), ("d4", false), ("q8", false), ("z2xz4", false)] {
        let r = suite(&grp(name), &["semitorsor"]);
        for c in &r.checks {
            let ok_mode = if exhaustive { c.mode == "exhaustive" } else { samples(c).is_some_and(|k| k >= 10_000) };
            if !ok_mode {
                problems.push(format!("{} on {name} ran {}", c.check_id, c.mode));
            }
        }
        reports.push(r);
    }
    let elapsed = secs(t);
    let failure = first_failure(&reports);
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    Line {
        criterion: "1",
        title: "semitorsor laws",
        ok: failure.is_none() && problems.is_empty() && elapsed < 60.0,
        known: false,
        detail: match (failure, problems.first()) {
            (Some(f), _) => f,
            (None, Some(p)) => p.clone(),
            (None, None) => format!(
                "4 laws on z2, z4 exhaustive and s3, d4, q8, z2xz4 with ≥10⁴ seeded tuples: {checks} checks, 0 failures in {elapsed:.1} s"
            ),
        },
    }
}

fn torsor_axioms() -> Line {
    let ids = ["torsor.u-ab", "torsor.u-ab-opposite", "torsor.u-b", "torsor.u-b-opposite"];
    let mut problems = Vec::new();
    let mut reports = Vec::new();
    let (mut carriers, mut skipped) = (0, 0);
    for name in CORPUS {
        let g = grp(name);
        if g.order() > 8 {
            continue;
        }
        let r = suite(&g, &ids);
        for c in &r.checks {
            match c.status {
                Status::Skipped => skipped += 1,
                _ if c.mode != "exhaustive" => problems.push(format!("{} on {name} ran {}", c.check_id, c.mode)),
                _ => carriers += 1,
            }
        }
        // a common section of a and b exists iff |a| = |b|, so U_ab is skipped exactly then
        let gras = grassmannian(&g).unwrap();
        let unequal = gras.iter().flat_map(|a| gras.iter().map(move |b| (a, b))).filter(|(a, b)| a.len() != b.len()).count();
        let skips = r.checks.iter().filter(|c| c.check_id == "torsor.u-ab" && c.status == Status::Skipped).count();
        if skips != unequal {
            problems.push(format!("{name}: {skips} empty U_ab skipped, {unequal} pairs with |a| ≠ |b|"));
        }
        reports.push(r);
    }
    let failure = first_failure(&reports);
    Line {
        criterion: "2",
        title: "torsor axioms for U_ab and U_b",
        ok: failure.is_none() && problems.is_empty(),
        known: false,
        detail: failure.or(problems.first().cloned()).unwrap_or_else(|| {
            format!(
                "every subgroup pair of the {} corpus groups of order ≤ 8: {carriers} exhaustive checks pass, {skipped} empty carriers skipped with a reason",
                reports.len()
            )
        }),
    }
}

fn bijection_torsor() -> Line {
    let mut problems = Vec::new();
    let mut seen = Vec::new();
    for (name, a, b) in [("k4", "0,1", "0,2"), ("z3xz3", "0,1,2", "0,3,6")] {
        let g = grp(name);
        let (a, b) = (g.parse_subset(a).unwrap(), g.parse_subset(b).unwrap());
        let fact: usize = (1..=a.len()).product();
        let sym = FiniteGroup::symmetric(a.len()).unwrap();
        for (p, q) in [(a, b), (b, a)] {
            let u = carrier_u_ab(Engine::new(&g), &p, &q).unwrap();
            let grp_y = group_from_basepoint(&u, &u.elements[0]).unwrap();
            if u.len() != fact || !grp_y.is_isomorphic(&sym) {
                problems.push(format!("{name} a={p} b={q}: |U_ab| = {}, expected {fact}", u.len()));
            }
            if name == "z3xz3" && (grp_y.order() != 6 || grp_y.is_abelian()) {
                problems.push(format!("{name}: based group is not the non-abelian group of order 6"));
            }
        }
        seen.push(format!("{name} |U_ab| = {fact}"));
        let r = suite(&g, &["torsor.bijection-torsor"]);
        if let Some(f) = first_failure([&r]) {
            problems.push(f);
        }
    }
    Line {
        criterion: "3",
        title: "bijection torsor",
        ok: problems.is_empty(),
        known: false,
        detail: problems.first().cloned().unwrap_or_else(|| {
            format!("{}; based groups ≅ Bij(a), S_3 non-abelian for z3xz3", seen.join(", "))
        }),
    }
}

fn relation_composition() -> Line {
    let mut reports = Vec::new();
    let mut problems = Vec::new();
    let mut pairs = 0u64;
    for name in CORPUS {
        let r = suite(&grp(name), &["torsor.relation-composition"]);
        let c = &r.checks[0];
        let n: u64 = c.note.as_deref().and_then(|n| n.split(' ').next()?.parse().ok()).unwrap_or(0);
        pairs += n;
        let ok_mode = if name == "k4" { c.mode == "exhaustive" } else { c.mode == "exhaustive" || samples(c) == Some(1000 * n) };
        if !ok_mode {
            problems.push(format!("{name} ran {}", c.mode));
        }
        reports.push(r);
    }
    let failure = first_failure(&reports);
    Line {
        criterion: "4",
        title: "relation composition",
        ok: failure.is_none() && problems.is_empty(),
        known: false,
        detail: failure.or(problems.first().cloned()).unwrap_or_else(|| {
            format!("z ∘ y⁻¹ ∘ x = Γ(x,a,y,b,z) on {pairs} transversal pairs across the corpus, 10³ seeded triples each, exhaustive on k4")
        }),
    }
}

fn operator_calculus() -> Line {
    let ids = [
        "operator.projection-lemma",
        "operator.transvections",
        "operator.multiplication",
        "operator.idempotent",
        "operator.kernel-lemma",
        "operator.direct-product-kernel",
    ];
    let mut reports = Vec::new();
    let mut problems = Vec::new();
    let mut checked = 0;
    for name in CORPUS {
        let g = grp(name);
        if g.order() > 8 {
            continue;
        }
        let r = suite(&g, &ids);
        for c in &r.checks {
            if c.status == Status::Skipped || c.mode != "exhaustive" {
                problems.push(format!("{} on {name}: {} {}", c.check_id, c.status.as_str(), c.note.as_deref().unwrap_or("")));
            }
            checked += c.checked;
        }
        reports.push(r);
    }
    let failure = first_failure(&reports);
    Line {
        criterion: "5",
        title: "operator calculus",
        ok: failure.is_none() && problems.is_empty(),
        known: false,
        detail: failure.or(problems.first().cloned()).unwrap_or_else(|| {
            format!("projection, transvection, M/L/R, idempotent and kernel lemmas and B = −A∘X + id on {} groups: {checked} configurations, 0 failures", reports.len())
        }),
    }
}

fn affine_picture() -> Line {
    let mut reports = Vec::new();
    let mut problems = Vec::new();
    for name in ["k4", "z6", "z2xz4", "z2xz2xz2", "z3xz3"] {
        let r = suite(&grp(name), &["affine.picture", "affine.left-distributive"]);
        if name == "k4" && r.checks.iter().any(|c| c.mode != "exhaustive") {
            problems.push("distributive law on k4 was not exhaustive".to_string());
        }
        if r.checks.iter().any(|c| c.status == Status::Skipped) {
            problems.push(format!("{name}: a check was skipped"));
        }
        reports.push(r);
    }
    let failure = first_failure(&reports);
    Line {
        criterion: "6",
        title: "affine picture and left distributivity",
        ok: failure.is_none() && problems.is_empty(),
        known: false,
        detail: failure.or(problems.first().cloned()).unwrap_or_else(|| {
            "graph of X + Z∘B equals Γ whenever |b|^|y| ≤ 64 on k4, z6, z2xz4, z2xz2xz2, z3xz3; left distributivity exhaustive on k4, seeded elsewhere".to_string()
        }),
    }
}

fn sign_table() -> [Line; 2] {
    let t = Instant::now();
    let mut off_table = Vec::new();
    let mut corrected_problems = Vec::new();
    for name in ["s3", "d4", "z4"] {
        let rows = verify_sign_table(&grp(name)).unwrap();
        for r in &rows {
            if !r.printed_holds() {
                let derived: Vec<String> = r.derived.iter().map(|s| s.to_string()).collect();
                off_table.push(format!("{name} row {} printed {} ∉ {{{}}}", r.s4, r.printed, derived.join(", ")));
            }
            if !r.passed() {
                corrected_problems.push(format!("{name} row {}", r.s4));
            }
            if name == "s3" && !r.unique() {
                corrected_problems.push(format!("s3 row {} has {} sign vectors", r.s4, r.derived.len()));
            }
        }
    }
    let elapsed = secs(t);
    let printed_cocycle = check_sign_cocycle(|p| table_sign(p, true));
    let fixed_cocycle = check_sign_cocycle(|p| table_sign(p, false));
    // the failure is known iff it is exactly the (13) row on every group
    let known = off_table.len() == 3 && off_table.iter().all(|l| l.contains("row (13) "));
    let printed = Line {
        criterion: "7",
        title: "sign table as printed",
        ok: off_table.is_empty(),
        known,
        detail: if off_table.is_empty() {
            format!("all 24 printed vectors lie in the derived sets on s3, d4, z4 in {elapsed:.2} s")
        } else {
            format!(
                "{}; the printed α/β signs of this row are exchanged and break the cocycle law in {} of 576 products",
                off_table.join("; "),
                if printed_cocycle.passed() { 0 } else { printed_cocycle_failures() }
            )
        },
    };
    let corrected = Line {
        criterion: "7*",
        title: "sign table with the (13) erratum",
        ok: corrected_problems.is_empty() && fixed_cocycle.passed() && elapsed < 10.0,
        known: false,
        detail: corrected_problems.first().cloned().unwrap_or_else(|| {
            format!(
                "24/24 rows on s3, d4, z4 with (13) ↦ {}; singletons on s3; cocycle law holds; {elapsed:.2} s",
                symmetry::SIGN_TABLE[13].sign_vector()
            )
        }),
    };
    [printed, corrected]
}

fn printed_cocycle_failures() -> usize {
    let v = symmetry::big_klein_group();
    let mut n = 0;
    for p in &v {
        for q in &v {
            let lhs = table_sign(&p.compose(q), true);
            let (sp, sq) = (table_sign(p, true), symmetry::act_on_signs(p, table_sign(q, true)));
            let rhs = torsorlab::structure::SignVector(std::array::from_fn(|i| sp.0[i] * sq.0[i]));
            n += usize::from(lhs != rhs);
        }
    }
    n
}

fn lattice_identities() -> Line {
    let mut reports = Vec::new();
    let mut problems = Vec::new();
    for name in ["z4", "z6", "k4", "s3", "d4"] {
        let r = run_lattice_suite(&grp(name), &Config::default());
        for c in &r.checks {
            if c.mode != "exhaustive" || c.checked > 100_000 {
                problems.push(format!("{} on {name}: {} with {} tuples", c.check_id, c.mode, c.checked));
            }
        }
        reports.push(r);
    }
    let failure = first_failure(&reports);
    let n = reports[0].checks.len();
    Line {
        criterion: "8",
        title: "lattice identities",
        ok: failure.is_none() && problems.is_empty(),
        known: false,
        detail: failure.or(problems.first().cloned()).unwrap_or_else(|| {
            format!("{n} identities exhaustive over all subgroup 5-tuples of z4, z6, k4, s3, d4 (≤ 10⁵ each), 0 failures")
        }),
    }
}

fn mutation_controls() -> Line {
    let mut problems = Vec::new();
    let mut seen = Vec::new();
    for m in [Mutation::FlippedGammaSign, Mutation::SwappedSumsetOperands] {
        for name in ["s3", "d4"] {
            let g = grp(name);
            let r = run_checks(&g, &Config { mutation: Some(m), ..Config::default() }, |_| true);
            let fails: Vec<&CheckResult> = r.failures().collect();
            if fails.is_empty() {
                problems.push(format!("{} went unnoticed on {name}", m.name()));
            }
            if let Some(c) = fails.iter().find(|c| c.witness.is_none()) {
                problems.push(format!("{} failed without a witness under {}", c.check_id, m.name()));
            }
            let mut areas: Vec<&str> = fails.iter().map(|c| c.check_id.split('.').next().unwrap()).collect();
            areas.dedup();
            seen.push(format!("{} on {name}: {} failures in {}", m.name(), fails.len(), areas.join("/")));
        }
    }
    Line {
        criterion: "9",
        title: "mutation controls",
        ok: problems.is_empty(),
        known: false,
        detail: problems.first().cloned().unwrap_or_else(|| format!("{}; every failure carries a witness", seen.join("; "))),
    }
}

fn determinism() -> Line {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_torsorlab"))
            .args(["suite", "--group", "d4", "--seed", "7"])
            .env_remove("TORSORLAB_SEED")
            .output()
            .expect("binary runs")
    };
    let (one, two) = (run(), run());
    let same = one.stdout == two.stdout;
    let ok = same && one.status.success() && !one.stdout.is_empty();
    Line {
        criterion: "10",
        title: "determinism",
        ok,
        known: false,
        detail: if ok {
            format!("two runs of `suite --group d4 --seed 7` gave byte-identical {}-byte reports", one.stdout.len())
        } else {
            format!("identical: {same}, exit {:?}", one.status.code())
        },
    }
}

fn main() -> ExitCode {
    // libtest flags such as --nocapture are accepted and ignored
    let mut lines = vec![
        semitorsor_laws(),
        torsor_axioms(),
        bijection_torsor(),
        relation_composition(),
        operator_calculus(),
        affine_picture(),
    ];
    lines.extend(sign_table());
    lines.extend([lattice_identities(), mutation_controls(), determinism()]);
    let mut unexpected = 0;
    for l in &lines {
        let tag = match (l.ok, l.known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        unexpected += usize::from(!l.ok && !l.known);
        println!("[{tag}] criterion {} {}: {}", l.criterion, l.title, l.detail);
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
