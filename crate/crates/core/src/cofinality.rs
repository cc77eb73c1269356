//! Right and left `n`-cofinality of functors, `n`-siftedness of categories,
//! and probes that compare verdicts with colimit and limit preservation in
//! finite sets.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::colimit::{colim_finset, lim_finset};
use crate::diagram::{corepresentable_along, SetDiagram};
use crate::error::{Error, Result};
use crate::fincat::{
    coslice_along, multislice, nerve, opposite, slice_along, FinCategory, Functor,
};
use crate::par::{self, Exec};
use crate::random::{derived_rng, random_set_diagram};
use crate::topology::{
    connectivity, pi0, weak_contractible, ConnectivityReport, Verdict, Witness,
    DEFAULT_TIETZE_BUDGET,
};

/// Depth examined by the weak-contractibility proxy on categories whose
/// nerve has nondegenerate simplices in every dimension.
pub const PROXY_DEPTH: usize = 3;

/// Largest hom-set for which the limit probe builds `2^{Hom(−, d)}`.
const MAX_POWER_HOM: usize = 12;

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub exec: Exec,
    pub tietze_budget: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            exec: Exec::Auto,
            tietze_budget: DEFAULT_TIETZE_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Left,
    Right,
}

/// The objects a failing check was run at, with the category whose nerve
/// failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommaWitness {
    pub objects: Vec<String>,
    #[serde(serialize_with = "crate::io::serialize_category")]
    pub comma: Arc<FinCategory>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CofinalityReport {
    pub direction: Direction,
    /// `None` is the weak-contractibility proxy for `n = ∞`.
    pub level: Option<i64>,
    pub overall: Verdict,
    pub per_object: BTreeMap<String, ConnectivityReport>,
    pub witness: Option<CommaWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SiftednessReport {
    pub level: Option<i64>,
    pub cosifted: bool,
    /// Number of objects in each tuple; `n_sifted` uses pairs.
    pub tuple_size: usize,
    pub nonempty: bool,
    pub overall: Verdict,
    pub per_tuple: BTreeMap<String, ConnectivityReport>,
    pub witness: Option<CommaWitness>,
}

/// Whether every non-identity arrow goes strictly forward in some order of
/// the objects, in which case nondegenerate chains have bounded length.
/// Returns the length of the longest chain.
fn longest_chain(c: &FinCategory) -> Option<usize> {
    let n = c.object_count();
    let mut indeg = vec![0usize; n];
    for m in 0..c.morphism_count() {
        if !c.is_identity(m) {
            if c.source(m) == c.target(m) {
                return None;
            }
            indeg[c.target(m)] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&o| indeg[o] == 0).collect();
    let mut depth = vec![0usize; n];
    let mut seen = 0;
    while let Some(o) = queue.pop_front() {
        seen += 1;
        for &m in c.outgoing(o) {
            if c.is_identity(m) {
                continue;
            }
            let t = c.target(m);
            depth[t] = depth[t].max(depth[o] + 1);
            indeg[t] -= 1;
            if indeg[t] == 0 {
                queue.push_back(t);
            }
        }
    }
    (seen == n).then(|| depth.into_iter().max().unwrap_or(0))
}

/// Connectivity of the nerve of `c` at `level`, with the nerve truncated at
/// `max(n, 2)`. At `None` the nerve is examined in full when it is finite
/// dimensional; otherwise only refutations up to `PROXY_DEPTH` count.
pub fn nerve_connectivity(
    c: &Arc<FinCategory>,
    level: Option<i64>,
    budget: usize,
) -> ConnectivityReport {
    match level {
        Some(n) => {
            let t = n.max(2) as usize;
            connectivity(&nerve(c, t).sset, n, budget)
        }
        None => match longest_chain(c) {
            Some(l) => weak_contractible(&nerve(c, (l + 1).max(2)).sset, budget),
            None => {
                let mut r =
                    connectivity(&nerve(c, PROXY_DEPTH + 1).sset, PROXY_DEPTH as i64, budget);
                if r.verdict == Verdict::Yes {
                    r.verdict = Verdict::Unknown;
                    r.witness = Witness::InsufficientTruncation {
                        needed: PROXY_DEPTH + 2,
                        truncation: PROXY_DEPTH + 1,
                    };
                }
                r.level = None;
                r
            }
        },
    }
}

fn check_functor(p: &Functor) -> Result<()> {
    let v = p.validate();
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidFunctor(v))
    }
}

/// Right `n`-cofinality: every `d ↓ p` has `n`-connective nerve.
pub fn right_n_cofinal(p: &Functor, n: i64) -> Result<CofinalityReport> {
    cofinal(p, Direction::Right, Some(n), &CheckOptions::default())
}

/// Left `n`-cofinality: every `p ↓ d` has `n`-connective nerve.
pub fn left_n_cofinal(p: &Functor, n: i64) -> Result<CofinalityReport> {
    cofinal(p, Direction::Left, Some(n), &CheckOptions::default())
}

/// Cofinality on either side at a level, `None` standing for `∞`.
pub fn cofinal(
    p: &Functor,
    direction: Direction,
    level: Option<i64>,
    opts: &CheckOptions,
) -> Result<CofinalityReport> {
    check_functor(p)?;
    let d = p.codomain();
    let checks = par::map_range(opts.exec, d.object_count(), |o| {
        let (comma, _) = match direction {
            Direction::Right => coslice_along(p, o),
            Direction::Left => slice_along(p, o),
        }
        .expect("object of the codomain");
        let r = nerve_connectivity(&comma, level, opts.tietze_budget);
        (comma, r)
    });
    let overall = Verdict::all(checks.iter().map(|(_, r)| r.verdict));
    let witness = checks
        .iter()
        .position(|(_, r)| r.verdict == Verdict::No)
        .map(|o| CommaWitness {
            objects: vec![d.object_id(o).to_string()],
            comma: checks[o].0.clone(),
        });
    let per_object = checks
        .into_iter()
        .enumerate()
        .map(|(o, (_, r))| (d.object_id(o).to_string(), r))
        .collect();
    Ok(CofinalityReport {
        direction,
        level,
        overall,
        per_object,
        witness,
    })
}

pub(crate) fn tuple_key(c: &FinCategory, objs: &[usize]) -> String {
    let ids: Vec<&str> = objs.iter().map(|&o| c.object_id(o)).collect();
    format!("({})", ids.join(", "))
}

fn all_tuples(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |o| {
                    let mut t = t.clone();
                    t.push(o);
                    t
                })
            })
            .collect();
    }
    out
}

fn assemble(
    c: &FinCategory,
    level: Option<i64>,
    cosifted: bool,
    tuple_size: usize,
    tuples: &[Vec<usize>],
    checks: Vec<(Arc<FinCategory>, ConnectivityReport)>,
) -> SiftednessReport {
    let nonempty = c.object_count() > 0;
    let mut overall = Verdict::all(checks.iter().map(|(_, r)| r.verdict));
    let mut witness = checks
        .iter()
        .position(|(_, r)| r.verdict == Verdict::No)
        .map(|i| CommaWitness {
            objects: tuples[i]
                .iter()
                .map(|&o| c.object_id(o).to_string())
                .collect(),
            comma: checks[i].0.clone(),
        });
    if !nonempty {
        overall = Verdict::No;
        witness = Some(CommaWitness {
            objects: Vec::new(),
            comma: Arc::new(c.clone()),
        });
    }
    let per_tuple = tuples
        .iter()
        .zip(checks)
        .map(|(t, (_, r))| (tuple_key(c, t), r))
        .collect();
    SiftednessReport {
        level,
        cosifted,
        tuple_size,
        nonempty,
        overall,
        per_tuple,
        witness,
    }
}

/// `n`-siftedness: `C` is nonempty and every `C_{a/} ×_C C_{b/}`, computed
/// as a coslice of the diagonal, has `n`-connective nerve.
pub fn n_sifted(c: &Arc<FinCategory>, n: i64) -> SiftednessReport {
    sifted(c, Some(n), &CheckOptions::default())
}

/// `n`-siftedness of the opposite.
pub fn n_cosifted(c: &Arc<FinCategory>, n: i64) -> SiftednessReport {
    cosifted(c, Some(n), &CheckOptions::default())
}

pub fn sifted(c: &Arc<FinCategory>, level: Option<i64>, opts: &CheckOptions) -> SiftednessReport {
    sifted_impl(c, level, opts, false)
}

pub fn cosifted(c: &Arc<FinCategory>, level: Option<i64>, opts: &CheckOptions) -> SiftednessReport {
    sifted_impl(&Arc::new(opposite(c)), level, opts, true)
}

fn sifted_impl(
    c: &Arc<FinCategory>,
    level: Option<i64>,
    opts: &CheckOptions,
    co: bool,
) -> SiftednessReport {
    let n = c.object_count();
    let diag = Functor::diagonal(c);
    let tuples = all_tuples(n, 2);
    let checks = par::map(opts.exec, &tuples, |t| {
        let (comma, _) = coslice_along(&diag, t[0] * n + t[1]).expect("object of C × C");
        let r = nerve_connectivity(&comma, level, opts.tietze_budget);
        (comma, r)
    });
    assemble(c, level, co, 2, &tuples, checks)
}

/// Connectivity of `C_{a_1/} ×_C ⋯ ×_C C_{a_m/}` for every `m`-tuple, plus
/// nonemptiness of `C`. At `m = 0` the only tuple is empty and `C` itself
/// is checked.
pub fn multi_sifted(c: &Arc<FinCategory>, n: i64, m: usize) -> SiftednessReport {
    multi_sifted_with(c, Some(n), m, &CheckOptions::default())
}

pub fn multi_sifted_with(
    c: &Arc<FinCategory>,
    level: Option<i64>,
    m: usize,
    opts: &CheckOptions,
) -> SiftednessReport {
    let tuples = all_tuples(c.object_count(), m);
    let checks = par::map(opts.exec, &tuples, |t| {
        let (comma, _) = multislice(c, t).expect("objects of C");
        let r = nerve_connectivity(&comma, level, opts.tietze_budget);
        (comma, r)
    });
    assemble(c, level, false, m, &tuples, checks)
}

// ---------------------------------------------------------------------------
// Probes

/// The canonical comparison map between two finite colimits or limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub source: usize,
    pub target: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl Comparison {
    pub fn is_bijection(&self) -> bool {
        self.injective && self.surjective
    }

    fn of_map(
        source: usize,
        target: usize,
        map: impl Iterator<Item = (usize, usize)>,
    ) -> Comparison {
        let mut image: Vec<Option<usize>> = vec![None; source];
        let mut hit = vec![false; target];
        let mut well_defined = true;
        for (x, y) in map {
            match image[x] {
                Some(z) if z != y => well_defined = false,
                _ => image[x] = Some(y),
            }
            hit[y] = true;
        }
        assert!(well_defined, "comparison map is not well defined");
        let mut seen = vec![false; target];
        let mut injective = true;
        for y in image.into_iter().flatten() {
            injective &= !std::mem::replace(&mut seen[y], true);
        }
        Comparison {
            source,
            target,
            injective,
            surjective: hit.iter().all(|&h| h),
        }
    }
}

/// `colim_C (F ∘ p) → colim_D F`.
pub fn colim_comparison(f: &SetDiagram, p: &Functor) -> Result<Comparison> {
    let fp = f.precompose(p)?;
    let (qs, qt) = (colim_finset(&fp), colim_finset(f));
    let c = p.domain();
    let pairs = (0..c.object_count()).flat_map(|o| {
        let (qs, qt) = (&qs, &qt);
        (0..fp.size(o)).map(move |x| (qs.class_of(o, x), qt.class_of(p.on_object(o), x)))
    });
    Ok(Comparison::of_map(
        qs.classes,
        qt.classes,
        pairs.collect::<Vec<_>>().into_iter(),
    ))
}

/// `lim_D F → lim_C (F ∘ p)`, restricting families along `p`.
pub fn lim_comparison(f: &SetDiagram, p: &Functor) -> Result<Comparison> {
    let fp = f.precompose(p)?;
    let (ls, lt) = (lim_finset(f), lim_finset(&fp));
    let index: std::collections::HashMap<&Vec<usize>, usize> = lt
        .families
        .iter()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let pairs: Vec<(usize, usize)> = ls
        .families
        .iter()
        .enumerate()
        .map(|(i, fam)| {
            let r: Vec<usize> = p.object_map().iter().map(|&o| fam[o]).collect();
            (i, index[&r])
        })
        .collect();
    Ok(Comparison::of_map(ls.len(), lt.len(), pairs.into_iter()))
}

/// `colim (X × Y) → colim X × colim Y`.
pub fn product_comparison(x: &SetDiagram, y: &SetDiagram) -> Result<Comparison> {
    let xy = x.product(y)?;
    let (q, qx, qy) = (colim_finset(&xy), colim_finset(x), colim_finset(y));
    let mut pairs = Vec::new();
    for o in 0..xy.sizes().len() {
        let sy = y.size(o);
        for e in 0..xy.size(o) {
            pairs.push((
                q.class_of(o, e),
                qx.class_of(o, e / sy) * qy.classes + qy.class_of(o, e % sy),
            ));
        }
    }
    Ok(Comparison::of_map(
        q.classes,
        qx.classes * qy.classes,
        pairs.into_iter(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeKind {
    Preservation,
    Limits,
    Products,
}

/// A diagram, or pair of diagrams for products, on which the comparison map
/// is not a bijection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub origin: String,
    #[serde(serialize_with = "crate::io::serialize_diagrams")]
    pub diagrams: Vec<SetDiagram>,
    pub comparison: Comparison,
}

/// One exhaustive check at an object or tuple: the size of the probing
/// colimit or limit, the size a bijection needs, and the number of
/// components of the matching comma category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustiveCheck {
    pub objects: Vec<String>,
    pub value: usize,
    pub expected: usize,
    pub comma_components: usize,
    /// Whether `value` is what the comma components predict.
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub probe: ProbeKind,
    pub trials: usize,
    pub seed: u64,
    pub exhaustive: Vec<ExhaustiveCheck>,
    pub counterexample: Option<Counterexample>,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Whether every exhaustive value matches its comma category.
    pub fn consistent(&self) -> bool {
        self.exhaustive.iter().all(|e| e.consistent)
    }
}

fn components(c: &Arc<FinCategory>) -> usize {
    pi0(&nerve(c, 1).sset).count
}

/// Random diagrams `F` on `D` (sets of size at most 5) compared through
/// `colim (F ∘ p) → colim F`, then the corepresentables `Hom_D(d, −)`, whose
/// colimit over `D` is a point and over `C` is `π₀(d ↓ p)`.
pub fn preservation_probe(p: &Functor, trials: usize, seed: u64) -> Result<ProbeReport> {
    preservation_probe_with(p, trials, seed, Exec::Auto)
}

pub fn preservation_probe_with(
    p: &Functor,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> Result<ProbeReport> {
    check_functor(p)?;
    let d = p.codomain();
    let random = par::map_range(exec, trials, |i| {
        let f = random_set_diagram(&mut derived_rng(seed, i), d, 5);
        let cmp = colim_comparison(&f, p).expect("diagram on the codomain");
        (f, cmp)
    });
    let id = Functor::identity(d);
    let exhaustive = par::map_range(exec, d.object_count(), |o| {
        let f = corepresentable_along(&id, o);
        let cmp = colim_comparison(&f, p).expect("diagram on the codomain");
        let (comma, _) = coslice_along(p, o).expect("object of the codomain");
        let comps = components(&comma);
        let check = ExhaustiveCheck {
            objects: vec![d.object_id(o).to_string()],
            value: cmp.source,
            expected: 1,
            comma_components: comps,
            consistent: cmp.source == comps,
        };
        (f, cmp, check)
    });
    Ok(finish(
        ProbeKind::Preservation,
        trials,
        seed,
        random,
        exhaustive,
        |o| format!("corepresentable at {}", d.object_id(o)),
    ))
}

fn finish(
    probe: ProbeKind,
    trials: usize,
    seed: u64,
    random: Vec<(SetDiagram, Comparison)>,
    exhaustive: Vec<(SetDiagram, Comparison, ExhaustiveCheck)>,
    name: impl Fn(usize) -> String,
) -> ProbeReport {
    let mut counterexample = random
        .into_iter()
        .enumerate()
        .find(|(_, (_, c))| !c.is_bijection())
        .map(|(i, (f, c))| Counterexample {
            origin: format!("trial {i}"),
            diagrams: vec![f],
            comparison: c,
        });
    if counterexample.is_none() {
        counterexample = exhaustive
            .iter()
            .enumerate()
            .find(|(_, (_, c, _))| !c.is_bijection())
            .map(|(o, (f, c, _))| Counterexample {
                origin: name(o),
                diagrams: vec![f.clone()],
                comparison: *c,
            });
    }
    ProbeReport {
        probe,
        trials,
        seed,
        exhaustive: exhaustive.into_iter().map(|e| e.2).collect(),
        counterexample,
    }
}

/// `d' ↦ 2^{Hom_D(d', d)}`, covariant in `d'`. Subsets are bitmasks over
/// `hom_vec(d', d)`. `None` when a hom-set is too large to exponentiate.
pub fn power_of_representable(dcat: &Arc<FinCategory>, d: usize) -> Option<SetDiagram> {
    let homs: Vec<Vec<usize>> = (0..dcat.object_count())
        .map(|o| dcat.hom_vec(o, d))
        .collect();
    if homs.iter().any(|h| h.len() > MAX_POWER_HOM) {
        return None;
    }
    let sizes = homs.iter().map(|h| 1usize << h.len()).collect();
    let actions = (0..dcat.morphism_count())
        .map(|g| {
            let (a, b) = (dcat.source(g), dcat.target(g));
            // bit j of the image: h_j ∘ g lies in the subset
            let pulled: Vec<usize> = homs[b]
                .iter()
                .map(|&h| homs[a].iter().position(|&k| k == dcat.comp(h, g)).unwrap())
                .collect();
            (0..1usize << homs[a].len())
                .map(|s| {
                    pulled
                        .iter()
                        .enumerate()
                        .filter(|(_, &bit)| s >> bit & 1 == 1)
                        .fold(0, |acc, (j, _)| acc | 1 << j)
                })
                .collect()
        })
        .collect();
    Some(SetDiagram::new_unchecked(dcat.clone(), sizes, actions))
}

/// Random diagrams `F` on `D` compared through `lim F → lim (F ∘ p)`, then
/// the diagrams `2^{Hom_D(−, d)}`, whose limit over `D` has two elements and
/// over `C` has `2^{π₀(p ↓ d)}`.
pub fn limit_probe(p: &Functor, trials: usize, seed: u64) -> Result<ProbeReport> {
    limit_probe_with(p, trials, seed, Exec::Auto)
}

pub fn limit_probe_with(p: &Functor, trials: usize, seed: u64, exec: Exec) -> Result<ProbeReport> {
    check_functor(p)?;
    let d = p.codomain();
    let random = par::map_range(exec, trials, |i| {
        let f = random_set_diagram(&mut derived_rng(seed, i), d, 4);
        let cmp = lim_comparison(&f, p).expect("diagram on the codomain");
        (f, cmp)
    });
    let exhaustive: Vec<_> = par::map_range(exec, d.object_count(), |o| {
        let f = power_of_representable(d, o)?;
        let cmp = lim_comparison(&f, p).expect("diagram on the codomain");
        let (comma, _) = slice_along(p, o).expect("object of the codomain");
        let comps = components(&comma);
        let check = ExhaustiveCheck {
            objects: vec![d.object_id(o).to_string()],
            value: cmp.target,
            expected: 2,
            comma_components: comps,
            consistent: 1usize.checked_shl(comps as u32) == Some(cmp.target),
        };
        Some((f, cmp, check))
    })
    .into_iter()
    .flatten()
    .collect();
    let ids: Vec<String> = exhaustive.iter().map(|e| e.2.objects[0].clone()).collect();
    Ok(finish(
        ProbeKind::Limits,
        trials,
        seed,
        random,
        exhaustive,
        |i| format!("power of representable at {}", ids[i]),
    ))
}

/// Random pairs `X, Y` on `C` (sets of size at most 3) compared through
/// `colim (X × Y) → colim X × colim Y`, after the empty product check
/// `colim * = *`. Then, for every pair `(a, b)`, the corepresentables
/// `Hom(a, −), Hom(b, −)`, shrunk by quotients while the comparison still
/// fails, whose product has colimit `π₀(C_{a/} ×_C C_{b/})`.
pub fn product_preservation_probe(c: &Arc<FinCategory>, trials: usize, seed: u64) -> ProbeReport {
    product_preservation_probe_with(c, trials, seed, Exec::Auto)
}

pub fn product_preservation_probe_with(
    c: &Arc<FinCategory>,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> ProbeReport {
    let point = SetDiagram::constant(c, 1);
    let pq = colim_finset(&point);
    let empty = Comparison {
        source: pq.classes,
        target: 1,
        injective: pq.classes <= 1,
        surjective: pq.classes >= 1,
    };
    let mut exhaustive = vec![ExhaustiveCheck {
        objects: Vec::new(),
        value: pq.classes,
        expected: 1,
        comma_components: components(c),
        consistent: pq.classes == components(c),
    }];
    let mut counterexample = (!empty.is_bijection()).then(|| Counterexample {
        origin: "empty product".into(),
        diagrams: vec![point],
        comparison: empty,
    });

    let random = par::map_range(exec, trials, |i| {
        let mut r = derived_rng(seed, i);
        let x = random_set_diagram(&mut r, c, 3);
        let y = random_set_diagram(&mut r, c, 3);
        let cmp = product_comparison(&x, &y).expect("same shape");
        (x, y, cmp)
    });
    if counterexample.is_none() {
        counterexample = random
            .into_iter()
            .enumerate()
            .find(|(_, (_, _, cmp))| !cmp.is_bijection())
            .map(|(i, (x, y, cmp))| Counterexample {
                origin: format!("trial {i}"),
                diagrams: vec![x, y],
                comparison: cmp,
            });
    }

    let n = c.object_count();
    let id = Functor::identity(c);
    let tuples = all_tuples(n, 2);
    let pairs = par::map(exec, &tuples, |t| {
        let (x, y) = (
            corepresentable_along(&id, t[0]),
            corepresentable_along(&id, t[1]),
        );
        let cmp = product_comparison(&x, &y).expect("same shape");
        let (comma, _) = multislice(c, t).expect("objects of C");
        let comps = components(&comma);
        let check = ExhaustiveCheck {
            objects: t.iter().map(|&o| c.object_id(o).to_string()).collect(),
            value: cmp.source,
            expected: 1,
            comma_components: comps,
            consistent: cmp.source == comps,
        };
        (x, y, cmp, check)
    });
    if counterexample.is_none() {
        counterexample = pairs
            .iter()
            .zip(&tuples)
            .find(|((_, _, cmp, _), _)| !cmp.is_bijection())
            .map(|((x, y, _, _), t)| {
                let (x, y, cmp) = shrink_pair(x.clone(), y.clone(), 3);
                Counterexample {
                    origin: format!("corepresentables at {}", tuple_key(c, t)),
                    diagrams: vec![x, y],
                    comparison: cmp,
                }
            });
    }
    exhaustive.extend(pairs.into_iter().map(|p| p.3));
    ProbeReport {
        probe: ProbeKind::Products,
        trials,
        seed,
        exhaustive,
        counterexample,
    }
}

// Greedily identifies elements while the product comparison still fails,
// until every set has at most `bound` elements or no identification keeps
// the failure.
fn shrink_pair(
    mut x: SetDiagram,
    mut y: SetDiagram,
    bound: usize,
) -> (SetDiagram, SetDiagram, Comparison) {
    let mut cmp = product_comparison(&x, &y).expect("same shape");
    let too_big =
        |x: &SetDiagram, y: &SetDiagram| x.sizes().iter().chain(y.sizes()).any(|&k| k > bound);
    'outer: while too_big(&x, &y) {
        for side in 0..2 {
            let d = if side == 0 { &x } else { &y };
            for o in 0..d.sizes().len() {
                for a in 0..d.size(o) {
                    for b in a + 1..d.size(o) {
                        let q = d.quotient(o, a, b);
                        let (nx, ny) = if side == 0 {
                            (q, y.clone())
                        } else {
                            (x.clone(), q)
                        };
                        let nc = product_comparison(&nx, &ny).expect("same shape");
                        if !nc.is_bijection() {
                            x = nx;
                            y = ny;
                            cmp = nc;
                            continue 'outer;
                        }
                    }
                }
            }
        }
        break;
    }
    (x, y, cmp)
}

// ---------------------------------------------------------------------------
// Replay through independent code paths

// Components of the graph of elements, by breadth-first search.
fn element_classes(d: &SetDiagram) -> (usize, Vec<Vec<usize>>) {
    let c = d.shape();
    let n = c.object_count();
    let mut label: Vec<Vec<usize>> = (0..n).map(|o| vec![usize::MAX; d.size(o)]).collect();
    let mut classes = 0;
    for o in 0..n {
        for x in 0..d.size(o) {
            if label[o][x] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([(o, x)]);
            label[o][x] = classes;
            while let Some((a, e)) = queue.pop_front() {
                let out = c.outgoing(a).iter().map(|&m| (c.target(m), d.act(m, e)));
                let inc: Vec<(usize, usize)> = c
                    .incoming(a)
                    .iter()
                    .flat_map(|&m| {
                        let s = c.source(m);
                        (0..d.size(s))
                            .filter(move |&z| d.act(m, z) == e)
                            .map(move |z| (s, z))
                    })
                    .collect();
                for (b, z) in out.chain(inc) {
                    if label[b][z] == usize::MAX {
                        label[b][z] = classes;
                        queue.push_back((b, z));
                    }
                }
            }
            classes += 1;
        }
    }
    (classes, label)
}

// All compatible families by exhaustive enumeration of the product.
fn families(d: &SetDiagram) -> Vec<Vec<usize>> {
    let c = d.shape();
    let n = c.object_count();
    let total: usize = d.sizes().iter().product();
    (0..total)
        .filter_map(|mut code| {
            let mut fam = vec![0; n];
            for o in (0..n).rev() {
                fam[o] = code % d.size(o);
                code /= d.size(o);
            }
            (0..c.morphism_count())
                .all(|m| d.act(m, fam[c.source(m)]) == fam[c.target(m)])
                .then_some(fam)
        })
        .collect()
}

/// Recomputes a preservation or limit counterexample for `p` by breadth-first
/// search and exhaustive enumeration, and confirms the comparison fails.
pub fn replay_functor_counterexample(kind: ProbeKind, p: &Functor, cx: &Counterexample) -> bool {
    let Some(f) = cx.diagrams.first() else {
        return false;
    };
    if !f.is_valid() {
        return false;
    }
    let Ok(fp) = f.precompose(p) else {
        return false;
    };
    match kind {
        ProbeKind::Preservation => {
            let (ns, ls) = element_classes(&fp);
            let (nt, lt) = element_classes(f);
            let mut image = vec![usize::MAX; ns];
            let mut hit = vec![false; nt];
            let mut injective = true;
            for o in 0..p.domain().object_count() {
                for x in 0..fp.size(o) {
                    let y = lt[p.on_object(o)][x];
                    let cl = ls[o][x];
                    if image[cl] == usize::MAX {
                        image[cl] = y;
                        injective &= !std::mem::replace(&mut hit[y], true);
                    }
                }
            }
            !(injective && hit.iter().all(|&h| h))
        }
        ProbeKind::Limits => {
            let (fs, ft) = (families(f), families(&fp));
            let mut restricted: Vec<Vec<usize>> = fs
                .iter()
                .map(|fam| p.object_map().iter().map(|&o| fam[o]).collect())
                .collect();
            restricted.sort();
            let before = restricted.len();
            restricted.dedup();
            restricted.len() != before || restricted.len() != ft.len()
        }
        ProbeKind::Products => false,
    }
}

/// Recomputes a product counterexample by breadth-first search.
pub fn replay_product_counterexample(cx: &Counterexample) -> bool {
    match cx.diagrams.as_slice() {
        [point] => point.is_valid() && element_classes(point).0 != 1,
        [x, y] => {
            if !(x.is_valid() && y.is_valid()) {
                return false;
            }
            let Ok(xy) = x.product(y) else {
                return false;
            };
            let (n, _) = element_classes(&xy);
            let (nx, _) = element_classes(x);
            let (ny, _) = element_classes(y);
            // a surjection between sets of equal size is a bijection, and
            // the comparison is always surjective onto its image pairs
            n != nx * ny || !product_map_injective(x, y, &xy)
        }
        _ => false,
    }
}

fn product_map_injective(x: &SetDiagram, y: &SetDiagram, xy: &SetDiagram) -> bool {
    let (n, l) = element_classes(xy);
    let (_, lx) = element_classes(x);
    let (ny, ly) = element_classes(y);
    let mut image = vec![usize::MAX; n];
    let mut seen = std::collections::HashSet::new();
    for o in 0..xy.sizes().len() {
        let sy = y.size(o);
        for e in 0..xy.size(o) {
            let cl = l[o][e];
            if image[cl] == usize::MAX {
                image[cl] = lx[o][e / sy] * ny + ly[o][e % sy];
                if !seen.insert(image[cl]) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::{delta_inclusion, delta_leq, delta_s_into_delta, delta_s_leq};
    use crate::fincat::CategoryBuilder;

    fn yes(r: &CofinalityReport) -> bool {
        r.overall == Verdict::Yes
    }

    #[test]
    fn identity_is_cofinal() {
        let c = Arc::new(delta_leq(1));
        let id = Functor::identity(&c);
        for n in [-2, -1, 0, 1, 2, 3] {
            assert!(yes(&right_n_cofinal(&id, n).unwrap()));
            assert!(yes(&left_n_cofinal(&id, n).unwrap()));
        }
        let c = Arc::new(delta_leq(2));
        let id = Functor::identity(&c);
        assert!(yes(&right_n_cofinal(&id, 1).unwrap()));
    }

    #[test]
    fn terminal_object_inclusion() {
        let c = Arc::new(delta_leq(2));
        // [0] is terminal in the simplex category
        let t = c.object("[0]").unwrap();
        let p = Functor::point(&c, t);
        let r = cofinal(&p, Direction::Right, None, &CheckOptions::default()).unwrap();
        assert_eq!(r.overall, Verdict::Yes);
        assert_eq!(r.level, None);
    }

    #[test]
    fn simplex_truncations() {
        let p = delta_s_into_delta(1);
        assert!(yes(&left_n_cofinal(&p, 1).unwrap()));
        let q = delta_inclusion(1, 2);
        assert!(yes(&left_n_cofinal(&q, 1).unwrap()));
        assert!(yes(&right_n_cofinal(&q.opposite(), 1).unwrap()));
    }

    #[test]
    fn discrete_inclusion_fails() {
        let two = Arc::new(FinCategory::discrete(&["a", "b"]));
        let p = Functor::full_inclusion(&two, &[0]);
        let r = left_n_cofinal(&p, 0).unwrap();
        assert_eq!(r.overall, Verdict::No);
        let w = r.witness.unwrap();
        assert_eq!(w.objects, vec!["b".to_string()]);
        assert_eq!(w.comma.object_count(), 0);
        assert_eq!(r.per_object["b"].witness, Witness::Empty);
    }

    #[test]
    fn simplex_categories_cosifted() {
        for k in 1..=2 {
            let c = Arc::new(delta_leq(k));
            assert_eq!(n_cosifted(&c, 1).overall, Verdict::Yes);
        }
    }

    #[test]
    fn injective_simplex_category_not_sifted() {
        let c = Arc::new(opposite(&delta_s_leq(1)));
        let r = n_sifted(&c, 1);
        assert_eq!(r.overall, Verdict::No);
        let w = r.witness.unwrap();
        assert_eq!(w.objects, vec!["[0]".to_string(), "[1]".to_string()]);
        assert_eq!(w.comma.object_count(), 2);
        assert_eq!(w.comma.component_count(), 2);
    }

    fn with_coproducts() -> Arc<FinCategory> {
        // 0 → 1, the poset with joins
        let mut b = CategoryBuilder::new();
        let x = b.add_object("0");
        let y = b.add_object("1");
        b.add_identity("id0", x);
        b.add_identity("id1", y);
        b.add_morphism("u", x, y);
        Arc::new(
            b.build(|g, f| match (g, f) {
                (0, 0) => Some(0),
                (1, 1) => Some(1),
                (1, 2) | (2, 0) => Some(2),
                _ => None,
            })
            .unwrap(),
        )
    }

    #[test]
    fn coproducts_give_siftedness() {
        let c = with_coproducts();
        assert_eq!(n_sifted(&c, 1).overall, Verdict::Yes);
        assert_eq!(multi_sifted(&c, 1, 3).overall, Verdict::Yes);
        assert_eq!(multi_sifted(&c, 1, 0).overall, Verdict::Yes);
        assert!(product_preservation_probe(&c, 30, 1).passed());
    }

    #[test]
    fn multi_agrees_with_pairs() {
        let c = Arc::new(opposite(&delta_s_leq(1)));
        let a = n_sifted(&c, 1);
        let b = multi_sifted(&c, 1, 2);
        assert_eq!(a.overall, b.overall);
        let verdicts =
            |r: &SiftednessReport| r.per_tuple.values().map(|x| x.verdict).collect::<Vec<_>>();
        assert_eq!(verdicts(&a), verdicts(&b));
    }

    #[test]
    fn sequential_matches_parallel() {
        let c = Arc::new(delta_leq(1));
        let seq = CheckOptions {
            exec: Exec::Sequential,
            ..Default::default()
        };
        let a = sifted(&c, Some(1), &seq);
        let b = sifted(&c, Some(1), &CheckOptions::default());
        assert_eq!(a, b);
    }

    #[test]
    fn probes_on_cofinal_functor() {
        let p = delta_inclusion(1, 2).opposite();
        let r = preservation_probe(&p, 20, 5).unwrap();
        assert!(r.passed());
        assert!(r.consistent());
        let q = delta_s_into_delta(1);
        let l = limit_probe(&q, 20, 5).unwrap();
        assert!(l.passed(), "{:?}", l.counterexample);
        assert!(l.consistent());
    }

    #[test]
    fn probes_find_witnesses() {
        let two = Arc::new(FinCategory::discrete(&["a", "b"]));
        let p = Functor::full_inclusion(&two, &[0]);
        let r = preservation_probe(&p, 0, 1).unwrap();
        let cx = r.counterexample.clone().unwrap();
        assert_eq!(cx.comparison.source, 0);
        assert!(replay_functor_counterexample(
            ProbeKind::Preservation,
            &p,
            &cx
        ));
        assert!(r.consistent());
        let l = limit_probe(&p, 0, 1).unwrap();
        let cx = l.counterexample.clone().unwrap();
        assert!(replay_functor_counterexample(ProbeKind::Limits, &p, &cx));
        assert!(l.consistent());
    }

    #[test]
    fn disconnected_coslice_gives_two_classes() {
        // two parallel arrows x ⇉ y; the inclusion of y misses the coslice
        // structure at x: x ↓ p has the two arrows as objects
        let mut b = CategoryBuilder::new();
        let x = b.add_object("x");
        let y = b.add_object("y");
        b.add_identity("id_x", x);
        b.add_identity("id_y", y);
        b.add_morphism("f", x, y);
        b.add_morphism("g", x, y);
        let c = Arc::new(
            b.build(|g, f| match (g, f) {
                (0, 0) => Some(0),
                (1, 1) => Some(1),
                (1, f) if f >= 2 => Some(f),
                (g, 0) if g >= 2 => Some(g),
                _ => None,
            })
            .unwrap(),
        );
        let p = Functor::full_inclusion(&c, &[1]);
        let r = right_n_cofinal(&p, 1).unwrap();
        assert_eq!(r.overall, Verdict::No);
        let probe = preservation_probe(&p, 5, 2).unwrap();
        let e = probe
            .exhaustive
            .iter()
            .find(|e| e.objects == ["x"])
            .unwrap();
        assert_eq!(e.value, 2);
        assert!(e.consistent);
    }

    #[test]
    fn product_probe_finds_small_witness() {
        let c = Arc::new(opposite(&delta_s_leq(1)));
        let r = product_preservation_probe(&c, 10, 3);
        let cx = r.counterexample.clone().expect("not sifted");
        assert!(cx
            .diagrams
            .iter()
            .all(|d| d.sizes().iter().all(|&k| k <= 3)));
        assert!(replay_product_counterexample(&cx));
        assert!(r.consistent());
    }

    #[test]
    fn power_of_representable_is_functorial() {
        let c = Arc::new(delta_leq(2));
        for d in 0..3 {
            let f = power_of_representable(&c, d).unwrap();
            assert!(f.is_valid(), "{:?}", f.validate());
            assert_eq!(lim_finset(&f).len(), 2);
        }
    }

    #[test]
    fn longest_chain_detects_loops() {
        assert_eq!(longest_chain(&delta_s_leq(2)), Some(2));
        assert_eq!(longest_chain(&delta_leq(1)), None);
    }
}
