//! Exact colimits and limits of finite-set-valued diagrams, the reshaping of
//! a diagram on a simplicial set into a simplicial diagram, the decomposition
//! of a colimit over a category of elements, and brute-force colimits inside
//! a finite category.

use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::delta::{delta_leq, parse_morphism_id};
use crate::diagram::{corepresentable_along, representable_along, SSetDiagram, SetDiagram};
use crate::error::{Error, Result};
use crate::fincat::{
    category_of_simplices, coslice_along, nerve, opposite, slice_along, Functor, Grothendieck,
};
use crate::sset::{SSet, Simplex};
use crate::topology::pi0;

/// A colimit in finite sets: `classes` elements and one leg per object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quotient {
    pub classes: usize,
    pub legs: Vec<Vec<usize>>,
}

impl Quotient {
    pub fn class_of(&self, o: usize, x: usize) -> usize {
        self.legs[o][x]
    }

    /// Failures of the cocone conditions against `d`.
    pub fn check(&self, d: &SetDiagram) -> Vec<String> {
        let c = d.shape();
        let mut out = Vec::new();
        let mut hit = vec![false; self.classes];
        for leg in &self.legs {
            for &k in leg {
                hit[k] = true;
            }
        }
        if hit.iter().any(|h| !h) {
            out.push("legs are not jointly surjective".into());
        }
        for m in 0..c.morphism_count() {
            let (s, t) = (c.source(m), c.target(m));
            if (0..d.size(s)).any(|x| self.legs[t][d.act(m, x)] != self.legs[s][x]) {
                out.push(format!("legs do not coequalize `{}`", c.morphism_id(m)));
            }
        }
        out
    }
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(sizes.len() + 1);
    let mut acc = 0;
    off.push(0);
    for &s in sizes {
        acc += s;
        off.push(acc);
    }
    off
}

/// The colimit of `d`: the disjoint union modulo `x ~ d(f)(x)`. Classes are
/// numbered in order of first appearance along the disjoint union.
pub fn colim_finset(d: &SetDiagram) -> Quotient {
    let c = d.shape();
    let off = offsets(d.sizes());
    let total = off[off.len() - 1];
    let mut uf = UnionFind::<usize>::new(total);
    for m in 0..c.morphism_count() {
        if c.is_identity(m) {
            continue;
        }
        let (s, t) = (c.source(m), c.target(m));
        for x in 0..d.size(s) {
            uf.union(off[s] + x, off[t] + d.act(m, x));
        }
    }
    let mut label = vec![usize::MAX; total];
    let mut classes = 0;
    let legs = (0..c.object_count())
        .map(|o| {
            (0..d.size(o))
                .map(|x| {
                    let r = uf.find_mut(off[o] + x);
                    if label[r] == usize::MAX {
                        label[r] = classes;
                        classes += 1;
                    }
                    label[r]
                })
                .collect()
        })
        .collect();
    Quotient { classes, legs }
}

/// A limit in finite sets: the compatible families, in lexicographic order.
/// The leg to object `o` sends a family to its `o`-th entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Limit {
    pub families: Vec<Vec<usize>>,
}

impl Limit {
    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }
}

/// The limit of `d` by backtracking over objects in index order.
pub fn lim_finset(d: &SetDiagram) -> Limit {
    let c = d.shape();
    let n = c.object_count();
    // morphisms checkable once both endpoints are assigned
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); n];
    for m in 0..c.morphism_count() {
        if !c.is_identity(m) {
            due[c.source(m).max(c.target(m))].push(m);
        }
    }
    let mut families = Vec::new();
    let mut cur = vec![0; n];
    fn go(
        d: &SetDiagram,
        due: &[Vec<usize>],
        k: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let c = d.shape();
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..d.size(k) {
            cur[k] = x;
            if due[k]
                .iter()
                .all(|&m| d.act(m, cur[c.source(m)]) == cur[c.target(m)])
            {
                go(d, due, k + 1, cur, out);
            }
        }
    }
    go(d, &due, 0, &mut cur, &mut families);
    Limit { families }
}

/// The simplicial set itself as a diagram `(Δ^{≤n})^op → Set`: level `r` is
/// `all_simplices(s, r)` and `α` acts by restriction.
pub fn levels_diagram(s: &SSet, n_max: usize) -> Result<SetDiagram> {
    let constant = SSetDiagram::constant(s, 1);
    Ok(reshape_build(&constant, n_max)?.diagram)
}

/// The reshaped diagram with its bookkeeping.
#[derive(Clone, Debug)]
pub struct Reshaped {
    pub diagram: SetDiagram,
    /// Per level, the simplices in component order.
    pub simplices: Vec<Vec<Simplex>>,
    /// Per level, the offset of each component in the level's set.
    pub offsets: Vec<Vec<usize>>,
}

impl Reshaped {
    /// Position of `(σ, x)` in its level.
    pub fn element(&self, level: usize, component: usize, x: usize) -> usize {
        self.offsets[level][component] + x
    }
}

/// Level `r` is `⨿_{σ ∈ S_r} F(σ(0))`; for `α : [m] → [n]`, `α^*` sends
/// `(ρ, x)` to `(α^*ρ, (ρ|_{[0,α(0)]})_* x)`.
pub fn reshape_build(f: &SSetDiagram, n_max: usize) -> Result<Reshaped> {
    let s = f.base();
    if n_max > s.truncation() {
        return Err(Error::TruncationExceeded {
            requested: n_max,
            truncation: s.truncation(),
        });
    }
    if n_max == 0 {
        return Err(Error::IndexOutOfRange { index: 0, bound: 1 });
    }
    let shape = Arc::new(opposite(&delta_leq(n_max)));
    let mut simplices = Vec::new();
    let mut offs = Vec::new();
    let mut sizes = Vec::new();
    let mut firsts = Vec::new();
    for r in 0..=n_max {
        let all = s.all_simplices(r)?;
        let first: Vec<usize> = all
            .iter()
            .map(|x| s.vertex_via_map(x, 0).unwrap())
            .collect();
        let o = offsets(&first.iter().map(|&v| f.size(v)).collect::<Vec<_>>());
        sizes.push(o[o.len() - 1]);
        offs.push(o[..o.len() - 1].to_vec());
        simplices.push(all);
        firsts.push(first);
    }
    let index: Vec<std::collections::HashMap<&Simplex, usize>> = simplices
        .iter()
        .map(|level| level.iter().zip(0..).collect())
        .collect();
    let mut actions = Vec::with_capacity(shape.morphism_count());
    for m in 0..shape.morphism_count() {
        let alpha = parse_morphism_id(shape.morphism_id(m))?;
        let (lo, hi) = (alpha.source_rank(), alpha.target_rank());
        let mut act = Vec::with_capacity(sizes[hi]);
        for (k, rho) in simplices[hi].iter().enumerate() {
            let sigma = s.restrict(rho, &alpha);
            let j = index[lo][&sigma];
            for x in 0..f.size(firsts[hi][k]) {
                let y = f.path_apply(rho, 0, alpha.apply(0), x);
                act.push(offs[lo][j] + y);
            }
        }
        actions.push(act);
    }
    Ok(Reshaped {
        diagram: SetDiagram::new_unchecked(shape, sizes, actions),
        simplices,
        offsets: offs,
    })
}

/// Outcome of comparing two colimit computations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub left_classes: usize,
    pub right_classes: usize,
    /// Left class `i` corresponds to right class `bijection[i]`.
    pub bijection: Vec<usize>,
    pub cocones_commute: bool,
    pub holds: bool,
    pub problems: Vec<String>,
}

// Builds the comparison from the pairs (left class, right class) that the
// canonical cocones force to correspond.
fn compare(
    left_classes: usize,
    right_classes: usize,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> BijectionReport {
    let mut map = vec![usize::MAX; left_classes];
    let mut back = vec![usize::MAX; right_classes];
    let mut problems = Vec::new();
    let mut commute = true;
    for (l, r) in pairs {
        if map[l] == usize::MAX {
            map[l] = r;
        } else if map[l] != r {
            commute = false;
            problems.push(format!(
                "left class {l} meets right classes {} and {r}",
                map[l]
            ));
        }
        if back[r] == usize::MAX {
            back[r] = l;
        } else if back[r] != l {
            commute = false;
            problems.push(format!(
                "right class {r} meets left classes {} and {l}",
                back[r]
            ));
        }
    }
    if left_classes != right_classes {
        problems.push(format!(
            "class counts differ: {left_classes} vs {right_classes}"
        ));
    }
    if map.contains(&usize::MAX) || back.contains(&usize::MAX) {
        problems.push("some class is not reached by the comparison".into());
    }
    problems.sort();
    problems.dedup();
    BijectionReport {
        left_classes,
        right_classes,
        holds: problems.is_empty(),
        bijection: map,
        cocones_commute: commute,
        problems,
    }
}

/// The colimit of `F` over its base computed directly: over the opposite of
/// the 2-truncated category of simplices, `σ ↦ F(σ(0))`, with the opposite of
/// `α : σ → ρ` acting by `(ρ|_{[0,α(0)]})_*`.
pub fn direct_colim(f: &SSetDiagram) -> Result<(SetDiagram, Vec<Simplex>)> {
    let s = f.base();
    let cs = category_of_simplices(s, 2, false)?;
    let shape = Arc::new(opposite(&cs.category));
    let sizes = cs.first_vertex.iter().map(|&v| f.size(v)).collect();
    let actions = (0..shape.morphism_count())
        .map(|m| {
            let rho = &cs.simplices[cs.category.target(m)];
            let a0 = cs.maps[m].apply(0);
            (0..f.size(s.vertex_via_map(rho, 0).unwrap()))
                .map(|x| f.path_apply(rho, 0, a0, x))
                .collect()
        })
        .collect();
    Ok((
        SetDiagram::new_unchecked(shape, sizes, actions),
        cs.simplices,
    ))
}

/// Compares the colimit of `reshape_build(F, 1)` with the direct colimit.
/// The correspondence is forced by the cocones out of levels 0 and 1 on one
/// side and out of the 0- and 1-simplices on the other.
pub fn reshape_colim_check(f: &SSetDiagram) -> Result<BijectionReport> {
    let invalid = f.validate();
    if !invalid.is_empty() {
        return Err(Error::InvalidDiagram(invalid));
    }
    let s = f.base();
    if s.truncation() < 2 {
        return Err(Error::TruncationExceeded {
            requested: 2,
            truncation: s.truncation(),
        });
    }
    let reshaped = reshape_build(f, 1)?;
    let left = colim_finset(&reshaped.diagram);
    let (direct, objects) = direct_colim(f)?;
    let right = colim_finset(&direct);
    let pos: std::collections::HashMap<&Simplex, usize> = objects.iter().zip(0..).collect();
    // level r of the reshaped diagram is object [r], which keeps index r in the opposite
    let mut pairs = Vec::new();
    for r in 0..=1 {
        for (k, sigma) in reshaped.simplices[r].iter().enumerate() {
            let o = pos[sigma];
            for x in 0..direct.size(o) {
                pairs.push((
                    left.class_of(r, reshaped.element(r, k, x)),
                    right.class_of(o, x),
                ));
            }
        }
    }
    Ok(compare(left.classes, right.classes, pairs))
}

/// Compares `colim F` over `∫X` with `colim_{i ∈ K} ⨿_{x ∈ X(i)} F(i, x)`.
pub fn decompose_check(
    x: &SetDiagram,
    g: &Grothendieck,
    f: &SetDiagram,
) -> Result<BijectionReport> {
    if **f.shape() != *g.category {
        return Err(Error::ShapeMismatch(
            "diagram is not over the category of elements".into(),
        ));
    }
    if **x.shape() != **g.projection.codomain() {
        return Err(Error::ShapeMismatch(
            "category of elements is not built over this base".into(),
        ));
    }
    let k = x.shape();
    let e = &g.category;
    // outer diagram: G(i) = ⨿_x F(i, x)
    let fiber: Vec<Vec<usize>> = (0..k.object_count())
        .map(|i| (0..x.size(i)).map(|xx| g.object_of(i, xx)).collect())
        .collect();
    let fiber_off: Vec<Vec<usize>> = fiber
        .iter()
        .map(|objs| offsets(&objs.iter().map(|&o| f.size(o)).collect::<Vec<_>>()))
        .collect();
    let sizes = fiber_off.iter().map(|o| o[o.len() - 1]).collect();
    let mut actions = Vec::with_capacity(k.morphism_count());
    for m in 0..k.morphism_count() {
        let i = k.source(m);
        let mut act = Vec::new();
        for &src in &fiber[i] {
            // the morphism of ∫X over m starting at (i, xi)
            let lift = e
                .outgoing(src)
                .iter()
                .copied()
                .find(|&em| g.projection.on_morphism(em) == m)
                .expect("a discrete fibration lifts every arrow");
            let tgt = e.target(lift);
            let j = k.target(m);
            let xj = g.elements[tgt].1;
            for y in 0..f.size(src) {
                act.push(fiber_off[j][xj] + f.act(lift, y));
            }
        }
        actions.push(act);
    }
    let outer = SetDiagram::new_unchecked(k.clone(), sizes, actions);
    let left = colim_finset(f);
    let right = colim_finset(&outer);
    let mut pairs = Vec::new();
    for o in 0..e.object_count() {
        let (i, xi) = g.elements[o];
        for y in 0..f.size(o) {
            pairs.push((left.class_of(o, y), right.class_of(i, fiber_off[i][xi] + y)));
        }
    }
    Ok(compare(left.classes, right.classes, pairs))
}

/// A universal cocone found inside a finite category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColimitWitness {
    pub object: usize,
    pub legs: Vec<usize>,
}

/// Every cocone under `d` with apex `c`.
pub fn cocones(d: &Functor, c: usize) -> Vec<Vec<usize>> {
    let (j, cat) = (d.domain(), d.codomain());
    let n = j.object_count();
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); n];
    for m in 0..j.morphism_count() {
        if !j.is_identity(m) {
            due[j.source(m).max(j.target(m))].push(m);
        }
    }
    let homs: Vec<Vec<usize>> = (0..n).map(|o| cat.hom_vec(d.on_object(o), c)).collect();
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    fn go(
        d: &Functor,
        homs: &[Vec<usize>],
        due: &[Vec<usize>],
        k: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let (j, cat) = (d.domain(), d.codomain());
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for &h in &homs[k] {
            cur[k] = h;
            if due[k]
                .iter()
                .all(|&m| cat.comp(cur[j.target(m)], d.on_morphism(m)) == cur[j.source(m)])
            {
                go(d, homs, due, k + 1, cur, out);
            }
        }
    }
    go(d, &homs, &due, 0, &mut cur, &mut out);
    out
}

/// Brute-force colimit of `d` in its codomain: the first object, in index
/// order, carrying a cocone through which every cocone factors uniquely.
pub fn colim_in_category(d: &Functor) -> Option<ColimitWitness> {
    let cat = d.codomain();
    let all: Vec<Vec<Vec<usize>>> = (0..cat.object_count()).map(|c| cocones(d, c)).collect();
    for c in 0..cat.object_count() {
        'candidate: for legs in &all[c] {
            for (c2, cs) in all.iter().enumerate() {
                for mu in cs {
                    let mediators = cat
                        .hom(c, c2)
                        .filter(|&u| legs.iter().zip(mu).all(|(&l, &m)| cat.comp(u, l) == m))
                        .count();
                    if mediators != 1 {
                        continue 'candidate;
                    }
                }
            }
            return Some(ColimitWitness {
                object: c,
                legs: legs.clone(),
            });
        }
    }
    None
}

/// Cardinality of a representable colimit against the number of components
/// of the matching comma category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepresentableReport {
    pub object: String,
    pub colim_classes: usize,
    pub comma_components: usize,
    pub holds: bool,
}

/// `colim_{C^op} Hom_D(p(−), d)` against `π₀ N(C ×_D D_{/d})`.
pub fn representable_colim_check(p: &Functor, d: usize) -> Result<RepresentableReport> {
    let (slice, _) = slice_along(p, d)?;
    let c_op = Arc::new(opposite(p.domain()));
    let q = colim_finset(&representable_along(p, &c_op, d));
    let comps = pi0(&nerve(&slice, 1).sset).count;
    Ok(RepresentableReport {
        object: p.codomain().object_id(d).to_string(),
        colim_classes: q.classes,
        comma_components: comps,
        holds: q.classes == comps,
    })
}

/// `colim_C Hom_D(d, p(−))` against `π₀ N(C ×_D D_{d/})`.
pub fn corepresentable_colim_check(p: &Functor, d: usize) -> Result<RepresentableReport> {
    let (coslice, _) = coslice_along(p, d)?;
    let q = colim_finset(&corepresentable_along(p, d));
    let comps = pi0(&nerve(&coslice, 1).sset).count;
    Ok(RepresentableReport {
        object: p.codomain().object_id(d).to_string(),
        colim_classes: q.classes,
        comma_components: comps,
        holds: q.classes == comps,
    })
}
