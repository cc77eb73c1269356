//! Seeded property suites with deterministic reports.
//!
//! Suite `k` draws instance `i` from `derived_rng(seed, i)`, so reports do
//! not depend on scheduling.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::cofinality::{
    cofinal, left_n_cofinal, n_cosifted, n_sifted, preservation_probe_with,
    product_preservation_probe_with, replay_functor_counterexample, replay_product_counterexample,
    right_n_cofinal, CheckOptions, Direction, ProbeKind,
};
use crate::colimit::{
    colim_finset, colim_in_category, decompose_check, levels_diagram, reshape_colim_check,
};
use crate::delta::{delta_inclusion, delta_leq, delta_s_into_delta, delta_s_leq};
use crate::fincat::{category_of_elements, grothendieck, nerve, opposite, pullback, Functor};
use crate::fixtures::{self, no_coequalizer_reflexive, no_coequalizer_uv};
use crate::io::{to_text, Document};
use crate::par::{map_range, Exec};
use crate::random::{
    derived_rng, random_category, random_functor, random_set_diagram, random_sset,
    random_sset_diagram, Rand,
};
use crate::sset::SSet;
use crate::topology::{
    abelianization, circle, homology, pi0, pi1_presentation, projective_plane, weak_contractible,
    HomologyGroup, Verdict, DEFAULT_TIETZE_BUDGET,
};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
/// Size of the functor corpus shared by suites 4 and 5.
pub const CORPUS_SIZE: usize = 300;
/// Failure details kept per report.
const MAX_DETAILS: usize = 20;

pub const SUITES: [(u32, &str); 9] = [
    (1, "reshaping"),
    (2, "pi0-as-colimit"),
    (3, "fixtures"),
    (4, "cofinality-vs-probe"),
    (5, "siftedness-vs-products"),
    (6, "decomposition"),
    (7, "topology"),
    (8, "closure"),
    (9, "determinism"),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: u32,
    pub name: String,
    pub seed: u64,
    pub instances: usize,
    pub failures: usize,
    /// Counts of instance tags, such as verdicts seen.
    pub stats: BTreeMap<String, usize>,
    pub details: Vec<String>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn to_text(&self) -> String {
        crate::io::report_document("suite", self)
    }
}

struct Outcome {
    ok: bool,
    tags: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Outcome {
        Outcome {
            ok,
            tags: Vec::new(),
            detail: detail.into(),
        }
    }

    fn tag(mut self, t: impl Into<String>) -> Outcome {
        self.tags.push(t.into());
        self
    }
}

fn report(suite: u32, seed: u64, outcomes: Vec<Outcome>) -> SuiteReport {
    let mut stats = BTreeMap::new();
    let mut details = Vec::new();
    let mut failures = 0;
    for (i, o) in outcomes.iter().enumerate() {
        for t in &o.tags {
            *stats.entry(t.clone()).or_insert(0) += 1;
        }
        if !o.ok {
            failures += 1;
            if details.len() < MAX_DETAILS {
                details.push(format!("instance {i}: {}", o.detail));
            }
        }
    }
    SuiteReport {
        suite,
        name: SUITES[suite as usize - 1].1.to_string(),
        seed,
        instances: outcomes.len(),
        failures,
        stats,
        details,
        passed: failures == 0 && !outcomes.is_empty(),
    }
}

/// Runs suite `k` (1 to 9).
pub fn run_suite(k: u32, seed: u64, exec: Exec) -> Option<SuiteReport> {
    let outcomes = match k {
        1 => reshaping(seed, exec),
        2 => pi0_colimit(seed, exec),
        3 => fixture_checks(),
        4 => cofinality_vs_probe(seed, exec),
        5 => siftedness_vs_products(seed, exec),
        6 => decomposition(seed, exec),
        7 => topology(seed, exec),
        8 => closure(seed, exec),
        9 => {
            let first: Vec<SuiteReport> =
                (1..=8).filter_map(|k| run_suite(k, seed, exec)).collect();
            return Some(determinism(&first, exec));
        }
        _ => return None,
    };
    Some(report(k, seed, outcomes))
}

/// Reruns every suite in `first` with its seed and compares the printed
/// reports byte for byte.
pub fn determinism(first: &[SuiteReport], exec: Exec) -> SuiteReport {
    let outcomes = first
        .iter()
        .map(|r| {
            let again = run_suite(r.suite, r.seed, exec).expect("known suite");
            Outcome::new(
                again.to_text() == r.to_text(),
                format!("suite {} differs on rerun", r.suite),
            )
        })
        .collect();
    report(9, first.first().map_or(DEFAULT_SEED, |r| r.seed), outcomes)
}

fn reshaping(seed: u64, exec: Exec) -> Vec<Outcome> {
    map_range(exec, 500, |i| {
        let f = random_sset_diagram(&mut derived_rng(seed, i), 8, 4);
        match reshape_colim_check(&f) {
            Ok(r) => Outcome::new(
                r.holds,
                format!(
                    "{} vs {} classes: {:?}",
                    r.left_classes, r.right_classes, r.problems
                ),
            ),
            Err(e) => Outcome::new(false, e.to_string()),
        }
    })
}

fn pi0_colimit(seed: u64, exec: Exec) -> Vec<Outcome> {
    map_range(exec, 200, |i| {
        let s = random_sset(&mut derived_rng(seed, i), 12);
        let expected = pi0(&s).count;
        match levels_diagram(&s, 1) {
            Ok(d) => {
                let got = colim_finset(&d).classes;
                Outcome::new(
                    got == expected,
                    format!("{got} classes, {expected} components"),
                )
            }
            Err(e) => Outcome::new(false, e.to_string()),
        }
    })
}

fn yes(v: Verdict) -> bool {
    v == Verdict::Yes
}

fn fixture_checks() -> Vec<Outcome> {
    let mut out = Vec::new();
    let left = |p: Functor, what: &str| match left_n_cofinal(&p, 1) {
        Ok(r) => Outcome::new(yes(r.overall), format!("{what}: {:?}", r.overall)),
        Err(e) => Outcome::new(false, format!("{what}: {e}")),
    };
    out.push(left(delta_s_into_delta(1), "(a) injective inclusion at 1"));
    out.push(left(
        delta_inclusion(1, 2),
        "(a) truncation inclusion 1 to 2",
    ));
    out.push(
        match right_n_cofinal(&delta_inclusion(1, 2).opposite(), 1) {
            Ok(r) => Outcome::new(
                yes(r.overall),
                format!("(b) opposite inclusion: {:?}", r.overall),
            ),
            Err(e) => Outcome::new(false, format!("(b) {e}")),
        },
    );
    for n in [1, 2] {
        let r = n_cosifted(&Arc::new(delta_leq(n)), 1);
        out.push(Outcome::new(
            yes(r.overall),
            format!("(c) truncation {n} cosifted: {:?}", r.overall),
        ));
    }
    let r = n_sifted(&Arc::new(opposite(&delta_s_leq(1))), 1);
    let witness_ok = r.witness.as_ref().is_some_and(|w| {
        w.objects == ["[0]", "[1]"] && w.comma.object_count() == 2 && w.comma.component_count() == 2
    });
    out.push(Outcome::new(
        r.overall == Verdict::No && witness_ok,
        format!(
            "(d) not sifted: {:?}, witness {:?}",
            r.overall,
            r.witness.as_ref().map(|w| &w.objects)
        ),
    ));
    let reflexive = no_coequalizer_reflexive();
    let found =
        colim_in_category(&reflexive).map(|w| reflexive.codomain().object_id(w.object).to_string());
    out.push(Outcome::new(
        found.as_deref() == Some("c"),
        format!("(e) reflexive coequalizer: {found:?}"),
    ));
    let uv = colim_in_category(&no_coequalizer_uv());
    out.push(Outcome::new(
        uv.is_none(),
        format!("(e) coequalizer of u, v: {uv:?}"),
    ));
    out
}

/// Functor number `i` of the corpus: a random functor between random
/// categories with at most 3 objects and 8 morphisms.
pub fn corpus_functor(seed: u64, i: usize) -> Functor {
    let mut r = derived_rng(seed, i);
    loop {
        let c = Arc::new(random_category(&mut r, 3, 8));
        let d = Arc::new(random_category(&mut r, 3, 8));
        if let Some(f) = random_functor(&mut r, &c, &d) {
            return f;
        }
    }
}

fn verdict_tag(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "verdict yes",
        Verdict::No => "verdict no",
        Verdict::Unknown => "verdict unknown",
    }
}

fn cofinality_vs_probe(seed: u64, exec: Exec) -> Vec<Outcome> {
    map_range(exec, CORPUS_SIZE, |i| {
        let p = corpus_functor(seed, i);
        let verdict = match right_n_cofinal(&p, 1) {
            Ok(r) => r.overall,
            Err(e) => return Outcome::new(false, e.to_string()),
        };
        let probe = match preservation_probe_with(&p, 20, seed ^ i as u64, Exec::Sequential) {
            Ok(r) => r,
            Err(e) => return Outcome::new(false, e.to_string()),
        };
        let agrees = match verdict {
            Verdict::Yes => probe.passed(),
            Verdict::No => probe
                .counterexample
                .as_ref()
                .is_some_and(|cx| replay_functor_counterexample(ProbeKind::Preservation, &p, cx)),
            Verdict::Unknown => false,
        };
        Outcome::new(
            agrees && probe.consistent(),
            format!(
                "verdict {verdict:?}, probe passed {}, consistent {}",
                probe.passed(),
                probe.consistent()
            ),
        )
        .tag(verdict_tag(verdict))
    })
}

fn siftedness_vs_products(seed: u64, exec: Exec) -> Vec<Outcome> {
    map_range(exec, CORPUS_SIZE, |i| {
        let p = corpus_functor(seed, i);
        let c = p.domain();
        let verdict = n_sifted(c, 1).overall;
        let probe = product_preservation_probe_with(c, 50, seed ^ i as u64, Exec::Sequential);
        let agrees = match verdict {
            Verdict::Yes => probe.passed(),
            Verdict::No => probe.counterexample.as_ref().is_some_and(|cx| {
                cx.diagrams
                    .iter()
                    .all(|d| d.sizes().iter().all(|&k| k <= 3))
                    && replay_product_counterexample(cx)
            }),
            Verdict::Unknown => false,
        };
        Outcome::new(
            agrees && probe.consistent(),
            format!(
                "verdict {verdict:?}, probe passed {}, consistent {}",
                probe.passed(),
                probe.consistent()
            ),
        )
        .tag(verdict_tag(verdict))
    })
}

fn decomposition(seed: u64, exec: Exec) -> Vec<Outcome> {
    map_range(exec, 200, |i| {
        let mut r = derived_rng(seed, i);
        let k = Arc::new(random_category(&mut r, 3, 6));
        let x = random_set_diagram(&mut r, &k, 3);
        let g = grothendieck(&x);
        let f = random_set_diagram(&mut r, &g.category, 3);
        match decompose_check(&x, &g, &f) {
            Ok(rep) => Outcome::new(
                rep.holds,
                format!(
                    "{} vs {} classes: {:?}",
                    rep.left_classes, rep.right_classes, rep.problems
                ),
            ),
            Err(e) => Outcome::new(false, e.to_string()),
        }
    })
}

// Elementary divisors and rank of a finitely generated abelian group.
fn invariants(g: &HomologyGroup) -> (usize, Vec<u64>) {
    let mut out = Vec::new();
    for t in &g.torsion {
        let mut n = t.to_u64().expect("small torsion");
        let mut p = 2;
        while n > 1 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            if q > 1 {
                out.push(q);
            }
            p += 1;
        }
    }
    out.sort_unstable();
    (g.betti, out)
}

/// Compares `H₁` with the abelianized fundamental groups of all components.
fn abelianization_matches(s: &SSet) -> Outcome {
    let comps = pi0(s);
    let mut betti = 0;
    let mut torsion = Vec::new();
    for c in 0..comps.count {
        let v = comps
            .component
            .iter()
            .position(|&k| k == c)
            .expect("component vertex");
        match pi1_presentation(s, s.generator_id(0, v)) {
            Ok(p) => {
                let (b, t) = invariants(&abelianization(&p));
                betti += b;
                torsion.extend(t);
            }
            Err(e) => return Outcome::new(false, e.to_string()),
        }
    }
    torsion.sort_unstable();
    let h1 = homology(s)
        .get(1)
        .map(invariants)
        .unwrap_or((0, Vec::new()));
    Outcome::new(
        h1 == (betti, torsion.clone()),
        format!("H1 {h1:?}, abelianization ({betti}, {torsion:?})"),
    )
}

fn groups(s: &SSet, expect: &[(usize, &[u64])]) -> bool {
    let h = homology(s);
    h.len() >= expect.len()
        && h.iter().enumerate().all(|(k, g)| match expect.get(k) {
            Some((b, t)) => {
                g.betti == *b
                    && g.torsion.iter().map(|x| x.to_u64()).collect::<Vec<_>>()
                        == t.iter().map(|&x| Some(x)).collect::<Vec<_>>()
            }
            None => g.is_trivial(),
        })
}

fn topology(seed: u64, exec: Exec) -> Vec<Outcome> {
    let mut out = Vec::new();
    let b3 = SSet::boundary(3).expect("boundary");
    out.push(Outcome::new(
        groups(&b3, &[(1, &[]), (0, &[]), (1, &[])]),
        format!("boundary(3): {:?}", homology(&b3)),
    ));
    let rp2 = projective_plane();
    out.push(Outcome::new(
        groups(&rp2, &[(1, &[]), (0, &[2]), (0, &[])]),
        format!("projective plane: {:?}", homology(&rp2)),
    ));
    let s1 = circle();
    let ab = pi1_presentation(&s1, s1.generator_id(0, 0)).map(|p| abelianization(&p));
    out.push(Outcome::new(
        ab.as_ref()
            .is_ok_and(|g| g.betti == 1 && g.torsion.is_empty()),
        format!("circle abelianization: {ab:?}"),
    ));
    for n in 0..=4 {
        let r = weak_contractible(&SSet::standard(n), DEFAULT_TIETZE_BUDGET);
        out.push(
            Outcome::new(yes(r.verdict), format!("standard({n}): {:?}", r.verdict)).tag("standard"),
        );
    }
    for name in fixtures::names() {
        if let Ok(Document::SSet(s)) = fixtures::fixture(&name) {
            let o = abelianization_matches(&s);
            out.push(Outcome::new(o.ok, format!("{name}: {}", o.detail)).tag("fixture"));
        }
    }
    out.extend(map_range(exec, 100, |i| {
        let c = Arc::new(random_category(&mut derived_rng(seed, i), 3, 8));
        abelianization_matches(&nerve(&c, 2).sset).tag("random nerve")
    }));
    out
}

// A random functor between random categories that is 1-cofinal on the given
// side, or `None` if none turned up in a few draws.
fn cofinal_functor(r: &mut Rand, side: Direction) -> Option<Functor> {
    for _ in 0..40 {
        let a = Arc::new(random_category(r, 3, 6));
        let b = Arc::new(random_category(r, 3, 6));
        let f = random_functor(r, &a, &b)?;
        if level_one(&f, side) == Verdict::Yes {
            return Some(f);
        }
    }
    None
}

fn level_one(f: &Functor, side: Direction) -> Verdict {
    let opts = CheckOptions {
        exec: Exec::Sequential,
        ..CheckOptions::default()
    };
    cofinal(f, side, Some(1), &opts).map_or(Verdict::Unknown, |r| r.overall)
}

fn side_of(i: usize) -> Direction {
    if i.is_multiple_of(2) {
        Direction::Left
    } else {
        Direction::Right
    }
}

fn side_tag(side: Direction) -> &'static str {
    match side {
        Direction::Left => "left",
        Direction::Right => "right",
    }
}

fn closure(seed: u64, exec: Exec) -> Vec<Outcome> {
    let mut out = Vec::new();
    // f cofinal ⇒ (g cofinal ⇔ g ∘ f cofinal)
    out.extend(map_range(exec, 200, |i| {
        let mut r = derived_rng(seed, i);
        let side = side_of(i);
        let Some(f) = cofinal_functor(&mut r, side) else {
            return Outcome::new(false, "no cofinal functor drawn");
        };
        let c = Arc::new(random_category(&mut r, 3, 6));
        let Some(g) = random_functor(&mut r, f.codomain(), &c) else {
            return Outcome::new(false, "no functor drawn");
        };
        let gf = g.after(&f).expect("composable");
        let (vg, vgf) = (level_one(&g, side), level_one(&gf, side));
        Outcome::new(
            vg == vgf && vg != Verdict::Unknown,
            format!("{side:?}: g {vg:?}, g after f {vgf:?}"),
        )
        .tag(format!("composition {}", side_tag(side)))
        .tag(format!("composition g {}", verdict_tag(vg)))
    }));
    // f, f' cofinal ⇒ f × f' cofinal
    out.extend(map_range(exec, 200, |i| {
        let mut r = derived_rng(seed ^ 0x0b0e, i);
        let side = side_of(i);
        let (Some(f), Some(g)) = (cofinal_functor(&mut r, side), cofinal_functor(&mut r, side))
        else {
            return Outcome::new(false, "no cofinal functor drawn");
        };
        let v = level_one(&f.product(&g), side);
        Outcome::new(yes(v), format!("{side:?}: product {v:?}"))
            .tag(format!("product {}", side_tag(side)))
    }));
    // v cofinal, p a (co)cartesian projection ⇒ pullback of v along p cofinal
    out.extend(map_range(exec, 200, |i| {
        let mut r = derived_rng(seed ^ 0x0bac, i);
        let side = side_of(i);
        let Some(v) = cofinal_functor(&mut r, side) else {
            return Outcome::new(false, "no cofinal functor drawn");
        };
        let base = v.codomain();
        let g = match side {
            Direction::Left => {
                category_of_elements(&random_set_diagram(&mut r, &Arc::new(opposite(base)), 3))
            }
            Direction::Right => grothendieck(&random_set_diagram(&mut r, base, 3)),
        };
        let u = match pullback(&v, &g.projection) {
            Ok(pb) => pb.to_right,
            Err(e) => return Outcome::new(false, e.to_string()),
        };
        let vu = level_one(&u, side);
        Outcome::new(
            yes(vu),
            format!(
                "{side:?}: pulled back {vu:?} over {} objects",
                u.domain().object_count()
            ),
        )
        .tag(format!("pullback {}", side_tag(side)))
        .tag(if u.domain().object_count() > 0 {
            "pullback nonempty"
        } else {
            "pullback empty"
        })
    }));
    out
}

/// Runs suites 1 to 8, then suite 9 on their reports.
pub fn run_all(seed: u64, exec: Exec) -> Vec<SuiteReport> {
    let mut out: Vec<SuiteReport> = (1..=8).filter_map(|k| run_suite(k, seed, exec)).collect();
    let det = determinism(&out, exec);
    out.push(det);
    out
}

/// All reports as one canonical document.
pub fn reports_text(reports: &[SuiteReport]) -> String {
    to_text(&serde_json::json!({
        "format_version": crate::io::FORMAT_VERSION,
        "kind": "report",
        "report_type": "harness",
        "payload": reports,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_suite_passes_and_prints_stably() {
        let a = run_suite(3, DEFAULT_SEED, Exec::Auto).unwrap();
        assert!(a.passed, "{:?}", a.details);
        assert_eq!(a.instances, 8);
        let b = run_suite(3, DEFAULT_SEED, Exec::Sequential).unwrap();
        assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn reports_depend_on_the_seed_only() {
        let a = run_suite(2, 1, Exec::Auto).unwrap();
        let b = run_suite(2, 1, Exec::Sequential).unwrap();
        assert_eq!(a, b);
        assert!(a.passed);
        assert!(run_suite(10, 1, Exec::Auto).is_none());
        let det = determinism(&[a], Exec::Auto);
        assert!(det.passed);
    }

    #[test]
    fn elementary_divisors() {
        let g = HomologyGroup {
            betti: 1,
            torsion: vec![6.into(), 4.into()],
        };
        assert_eq!(invariants(&g), (1, vec![2, 3, 4]));
    }

    #[test]
    fn corpus_is_reproducible() {
        assert_eq!(corpus_functor(5, 3), corpus_functor(5, 3));
        assert!(corpus_functor(5, 3).is_valid());
    }
}
