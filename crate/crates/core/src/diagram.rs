//! Finite-set-valued diagrams over finite categories and over simplicial sets.
//!
//! A finite set of size `k` is always `{0, …, k-1}`; a function is stored as
//! its value table.

use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::delta::MonotoneMap;
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, Functor, Nerve};
use crate::sset::{SSet, Simplex};

/// A functor from a finite category to finite sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetDiagram {
    shape: Arc<FinCategory>,
    sizes: Vec<usize>,
    actions: Vec<Vec<usize>>,
}

impl SetDiagram {
    pub fn new_unchecked(
        shape: Arc<FinCategory>,
        sizes: Vec<usize>,
        actions: Vec<Vec<usize>>,
    ) -> SetDiagram {
        SetDiagram {
            shape,
            sizes,
            actions,
        }
    }

    pub fn new(
        shape: Arc<FinCategory>,
        sizes: Vec<usize>,
        actions: Vec<Vec<usize>>,
    ) -> Result<SetDiagram> {
        let d = SetDiagram::new_unchecked(shape, sizes, actions);
        let v = d.validate();
        if v.is_empty() {
            Ok(d)
        } else {
            Err(Error::InvalidDiagram(v))
        }
    }

    /// The constant diagram at a `k`-element set.
    pub fn constant(shape: &Arc<FinCategory>, k: usize) -> SetDiagram {
        SetDiagram {
            shape: shape.clone(),
            sizes: vec![k; shape.object_count()],
            actions: vec![(0..k).collect(); shape.morphism_count()],
        }
    }

    pub fn shape(&self) -> &Arc<FinCategory> {
        &self.shape
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn actions(&self) -> &[Vec<usize>] {
        &self.actions
    }

    pub fn size(&self, o: usize) -> usize {
        self.sizes[o]
    }

    pub fn action(&self, m: usize) -> &[usize] {
        &self.actions[m]
    }

    pub fn act(&self, m: usize, x: usize) -> usize {
        self.actions[m][x]
    }

    /// Total number of elements over all objects.
    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn validate(&self) -> Vec<String> {
        let c = &*self.shape;
        let mut out = Vec::new();
        if self.sizes.len() != c.object_count() || self.actions.len() != c.morphism_count() {
            out.push("diagram sizes do not match its shape".into());
            return out;
        }
        for m in 0..c.morphism_count() {
            let (s, t) = (self.sizes[c.source(m)], self.sizes[c.target(m)]);
            let a = &self.actions[m];
            if a.len() != s || a.iter().any(|&y| y >= t) {
                out.push(format!(
                    "action of `{}` is not a function of the right type",
                    c.morphism_id(m)
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for o in 0..c.object_count() {
            let a = &self.actions[c.identity(o)];
            if a.iter().enumerate().any(|(i, &y)| i != y) {
                out.push(format!(
                    "identity of `{}` does not act trivially",
                    c.object_id(o)
                ));
            }
        }
        for f in 0..c.morphism_count() {
            for &g in c.outgoing(c.target(f)) {
                let h = c.comp(g, f);
                let ok = (0..self.sizes[c.source(f)])
                    .all(|x| self.actions[h][x] == self.actions[g][self.actions[f][x]]);
                if !ok {
                    out.push(format!(
                        "composite ({}, {}) is not respected",
                        c.morphism_id(g),
                        c.morphism_id(f)
                    ));
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `self ∘ p`.
    pub fn precompose(&self, p: &Functor) -> Result<SetDiagram> {
        if !(Arc::ptr_eq(p.codomain(), &self.shape) || **p.codomain() == *self.shape) {
            return Err(Error::ShapeMismatch(
                "functor codomain is not the diagram shape".into(),
            ));
        }
        Ok(SetDiagram {
            shape: p.domain().clone(),
            sizes: p.object_map().iter().map(|&o| self.sizes[o]).collect(),
            actions: p
                .morphism_map()
                .iter()
                .map(|&m| self.actions[m].clone())
                .collect(),
        })
    }

    /// Pointwise product; the pair `(x, y)` is encoded as `x * |Y(c)| + y`.
    pub fn product(&self, other: &SetDiagram) -> Result<SetDiagram> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(
                "product of diagrams on different shapes".into(),
            ));
        }
        let c = &*self.shape;
        let sizes = (0..c.object_count())
            .map(|o| self.sizes[o] * other.sizes[o])
            .collect();
        let actions = (0..c.morphism_count())
            .map(|m| {
                let (sa, sb) = (self.sizes[c.source(m)], other.sizes[c.source(m)]);
                let tb = other.sizes[c.target(m)];
                (0..sa * sb)
                    .map(|xy| self.actions[m][xy / sb] * tb + other.actions[m][xy % sb])
                    .collect()
            })
            .collect();
        Ok(SetDiagram {
            shape: self.shape.clone(),
            sizes,
            actions,
        })
    }

    /// Disjoint union; `other`'s elements follow `self`'s at every object.
    pub fn coproduct(&self, other: &SetDiagram) -> Result<SetDiagram> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(
                "coproduct of diagrams on different shapes".into(),
            ));
        }
        let c = &*self.shape;
        let sizes = (0..c.object_count())
            .map(|o| self.sizes[o] + other.sizes[o])
            .collect();
        let actions = (0..c.morphism_count())
            .map(|m| {
                let shift = self.sizes[c.target(m)];
                let mut a = self.actions[m].clone();
                a.extend(other.actions[m].iter().map(|&y| y + shift));
                a
            })
            .collect();
        Ok(SetDiagram {
            shape: self.shape.clone(),
            sizes,
            actions,
        })
    }

    /// Quotient by the smallest action-closed equivalence identifying `x` and
    /// `y` in the set at `o`. Classes are numbered by first element.
    pub fn quotient(&self, o: usize, x: usize, y: usize) -> SetDiagram {
        let c = &*self.shape;
        let mut offset = Vec::with_capacity(self.sizes.len());
        let mut total = 0;
        for &s in &self.sizes {
            offset.push(total);
            total += s;
        }
        let mut uf = UnionFind::<usize>::new(total);
        uf.union(offset[o] + x, offset[o] + y);
        let mut changed = true;
        while changed {
            changed = false;
            for m in 0..c.morphism_count() {
                let (s, t) = (c.source(m), c.target(m));
                let mut image: HashMap<usize, usize> = HashMap::new();
                for (x, &fx) in self.actions[m].iter().enumerate() {
                    let r = uf.find(offset[s] + x);
                    match image.get(&r) {
                        Some(&first) => changed |= uf.union(offset[t] + first, offset[t] + fx),
                        None => {
                            image.insert(r, fx);
                        }
                    }
                }
            }
        }
        let mut class = vec![0; total];
        let mut sizes = vec![0; self.sizes.len()];
        for ob in 0..self.sizes.len() {
            let mut seen: HashMap<usize, usize> = HashMap::new();
            for e in 0..self.sizes[ob] {
                let r = uf.find(offset[ob] + e);
                let next = seen.len();
                class[offset[ob] + e] = *seen.entry(r).or_insert(next);
            }
            sizes[ob] = seen.len();
        }
        let actions = (0..c.morphism_count())
            .map(|m| {
                let (s, t) = (c.source(m), c.target(m));
                let mut a = vec![0; sizes[s]];
                for (x, &fx) in self.actions[m].iter().enumerate() {
                    a[class[offset[s] + x]] = class[offset[t] + fx];
                }
                a
            })
            .collect();
        SetDiagram {
            shape: self.shape.clone(),
            sizes,
            actions,
        }
    }

    /// The same diagram regarded as living on an equal shape value.
    pub fn with_shape(&self, shape: Arc<FinCategory>) -> Result<SetDiagram> {
        if *shape != *self.shape {
            return Err(Error::ShapeMismatch("shapes differ".into()));
        }
        Ok(SetDiagram {
            shape,
            sizes: self.sizes.clone(),
            actions: self.actions.clone(),
        })
    }
}

/// `c ↦ Hom_D(p(c), d)` as a diagram over `C^op` (given as `c_op`, whose
/// morphism indices agree with `C`'s). Elements of each set are numbered in
/// `hom_vec` order.
pub fn representable_along(p: &Functor, c_op: &Arc<FinCategory>, d: usize) -> SetDiagram {
    let (c, dd) = (p.domain(), p.codomain());
    let homs: Vec<Vec<usize>> = (0..c.object_count())
        .map(|o| dd.hom_vec(p.on_object(o), d))
        .collect();
    let sizes = homs.iter().map(|h| h.len()).collect();
    let actions = (0..c.morphism_count())
        .map(|m| {
            // f : a → b in C acts Hom(p b, d) → Hom(p a, d) by precomposition
            let (a, b) = (c.source(m), c.target(m));
            let pf = p.on_morphism(m);
            homs[b]
                .iter()
                .map(|&h| position(&homs[a], dd.comp(h, pf)))
                .collect()
        })
        .collect();
    SetDiagram::new_unchecked(c_op.clone(), sizes, actions)
}

/// `c ↦ Hom_D(d, p(c))` as a diagram over `C`.
pub fn corepresentable_along(p: &Functor, d: usize) -> SetDiagram {
    let (c, dd) = (p.domain(), p.codomain());
    let homs: Vec<Vec<usize>> = (0..c.object_count())
        .map(|o| dd.hom_vec(d, p.on_object(o)))
        .collect();
    let sizes = homs.iter().map(|h| h.len()).collect();
    let actions = (0..c.morphism_count())
        .map(|m| {
            let (a, b) = (c.source(m), c.target(m));
            let pf = p.on_morphism(m);
            homs[a]
                .iter()
                .map(|&h| position(&homs[b], dd.comp(pf, h)))
                .collect()
        })
        .collect();
    SetDiagram::new_unchecked(c.clone(), sizes, actions)
}

fn position(v: &[usize], x: usize) -> usize {
    v.iter()
        .position(|&y| y == x)
        .expect("composite lies in the hom-set")
}

/// A finite-set-valued diagram on a simplicial set: a set per vertex and a
/// function per nondegenerate edge, coherent on 2-simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSetDiagram {
    base: SSet,
    sizes: Vec<usize>,
    edge_actions: Vec<Vec<usize>>,
}

impl SSetDiagram {
    pub fn new_unchecked(
        base: SSet,
        sizes: Vec<usize>,
        edge_actions: Vec<Vec<usize>>,
    ) -> SSetDiagram {
        SSetDiagram {
            base,
            sizes,
            edge_actions,
        }
    }

    pub fn new(
        base: SSet,
        sizes: Vec<usize>,
        edge_actions: Vec<Vec<usize>>,
    ) -> Result<SSetDiagram> {
        let d = SSetDiagram::new_unchecked(base, sizes, edge_actions);
        let v = d.validate();
        if v.is_empty() {
            Ok(d)
        } else {
            Err(Error::InvalidDiagram(v))
        }
    }

    pub fn constant(base: &SSet, k: usize) -> SSetDiagram {
        SSetDiagram {
            base: base.clone(),
            sizes: vec![k; base.vertex_count()],
            edge_actions: vec![(0..k).collect(); base.generator_count(1)],
        }
    }

    /// A diagram on a category transported to its nerve: vertices are
    /// objects and each nondegenerate edge acts as its arrow.
    pub fn from_nerve(nerve: &Nerve, f: &SetDiagram) -> Result<SSetDiagram> {
        if **f.shape() != *nerve.category {
            return Err(Error::ShapeMismatch(
                "diagram does not live on the nerve's category".into(),
            ));
        }
        let s = &nerve.sset;
        let sizes = (0..s.vertex_count())
            .map(|v| f.size(nerve.simplex_objects(&Simplex::nondegenerate(0, v))[0]))
            .collect();
        let edge_actions = (0..s.generator_count(1))
            .map(|e| {
                f.action(nerve.simplex_arrows(&Simplex::nondegenerate(1, e))[0])
                    .to_vec()
            })
            .collect();
        SSetDiagram::new(s.clone(), sizes, edge_actions)
    }

    pub fn base(&self) -> &SSet {
        &self.base
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn edge_actions(&self) -> &[Vec<usize>] {
        &self.edge_actions
    }

    pub fn size(&self, v: usize) -> usize {
        self.sizes[v]
    }

    /// The action of any 1-simplex; degenerate edges act as identities.
    pub fn edge_action(&self, e: &Simplex) -> Vec<usize> {
        assert_eq!(e.dim(), 1, "edge action of a non-edge");
        if e.is_degenerate() {
            (0..self.sizes[e.gen]).collect()
        } else {
            self.edge_actions[e.gen].clone()
        }
    }

    /// Applies the composite of the spine edges of `s` from vertex `a` to
    /// vertex `b`, composing left to right.
    pub fn path_apply(&self, s: &Simplex, a: usize, b: usize, x: usize) -> usize {
        let mut x = x;
        for i in a..b {
            let e = self.base.restrict(s, &spine_edge(s.dim(), i));
            if !e.is_degenerate() {
                x = self.edge_actions[e.gen][x];
            }
        }
        x
    }

    /// `path_apply` with the composite assembled right to left first.
    pub fn path_apply_reversed(&self, s: &Simplex, a: usize, b: usize, x: usize) -> usize {
        let start = self.base.vertex_via_map(s, a).unwrap();
        let mut table: Vec<usize> = (0..self.sizes[start]).collect();
        let mut cod: Option<Vec<usize>> = None;
        for i in (a..b).rev() {
            let e = self.base.restrict(s, &spine_edge(s.dim(), i));
            let act = self.edge_action(&e);
            cod = Some(match cod {
                None => act,
                Some(after) => act.iter().map(|&y| after[y]).collect(),
            });
        }
        if let Some(c) = cod {
            table = c;
        }
        table[x]
    }

    pub fn validate(&self) -> Vec<String> {
        let s = &self.base;
        let mut out = Vec::new();
        if self.sizes.len() != s.vertex_count() || self.edge_actions.len() != s.generator_count(1) {
            out.push("diagram sizes do not match its base".into());
            return out;
        }
        for (e, act) in self.edge_actions.iter().enumerate() {
            let (a, b) = s.endpoints(&Simplex::nondegenerate(1, e));
            if act.len() != self.sizes[a] || act.iter().any(|&y| y >= self.sizes[b]) {
                out.push(format!(
                    "action of edge `{}` is not a function of the right type",
                    s.generator_id(1, e)
                ));
            }
        }
        if !out.is_empty() || s.truncation() < 2 {
            return out;
        }
        for t in s.nondegenerate(2) {
            let d0 = self.edge_action(&s.face(&t, 0).unwrap());
            let d1 = self.edge_action(&s.face(&t, 1).unwrap());
            let d2 = self.edge_action(&s.face(&t, 2).unwrap());
            if (0..d2.len()).any(|x| d0[d2[x]] != d1[x]) {
                out.push(format!(
                    "2-simplex `{}` does not commute",
                    s.generator_id(2, t.gen)
                ));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

/// The map `[1] → [n]` picking `i < i + 1`.
pub(crate) fn spine_edge(n: usize, i: usize) -> MonotoneMap {
    MonotoneMap::new_unchecked(n, vec![i, i + 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::CategoryBuilder;

    fn parallel_pair() -> Arc<FinCategory> {
        let mut b = CategoryBuilder::new();
        let x = b.add_object("x");
        let y = b.add_object("y");
        b.add_identity("id_x", x);
        b.add_identity("id_y", y);
        b.add_morphism("f", x, y);
        b.add_morphism("g", x, y);
        Arc::new(
            b.build(|g, f| match (g, f) {
                (0, f) => Some(f),
                (g, 1) => Some(g),
                (1, f) if f >= 2 => Some(f),
                (g, 0) if g >= 2 => Some(g),
                _ => None,
            })
            .unwrap(),
        )
    }

    #[test]
    fn quotient_closes_under_action() {
        let c = parallel_pair();
        let d = SetDiagram::new(
            c,
            vec![2, 3],
            vec![vec![0, 1], vec![0, 1, 2], vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        let q = d.quotient(0, 0, 1);
        assert!(q.is_valid());
        assert_eq!(q.sizes(), &[1, 1]);
        let e = d.coproduct(&d).unwrap();
        assert!(e.is_valid());
        assert_eq!(e.sizes(), &[4, 6]);
        assert_eq!(e.action(3), &[1, 2, 4, 5]);
    }

    #[test]
    fn validation_catches_bad_actions() {
        let c = parallel_pair();
        assert!(SetDiagram::new(
            c.clone(),
            vec![2, 2],
            vec![vec![0, 1], vec![0, 1], vec![0, 1], vec![1, 0]]
        )
        .is_ok());
        assert!(SetDiagram::new(
            c.clone(),
            vec![2, 2],
            vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![1, 0]]
        )
        .is_err());
        assert!(SetDiagram::new(
            c,
            vec![2, 1],
            vec![vec![0, 1], vec![0], vec![0, 1], vec![0, 0]]
        )
        .is_err());
    }

    #[test]
    fn product_sizes() {
        let c = parallel_pair();
        let a = SetDiagram::new(
            c.clone(),
            vec![2, 2],
            vec![vec![0, 1], vec![0, 1], vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        let b = SetDiagram::constant(&c, 3);
        let p = a.product(&b).unwrap();
        assert_eq!(p.sizes(), &[6, 6]);
        assert!(p.is_valid());
    }

    #[test]
    fn path_composites_agree() {
        let base = SSet::standard(2);
        let d = SSetDiagram::new(
            base.clone(),
            vec![2, 2, 1],
            vec![vec![1, 0], vec![0, 0], vec![0, 0]],
        )
        .unwrap();
        let top = Simplex::nondegenerate(2, 0);
        for x in 0..2 {
            assert_eq!(
                d.path_apply(&top, 0, 2, x),
                d.path_apply_reversed(&top, 0, 2, x)
            );
        }
        let bad = SSetDiagram::new(
            base,
            vec![2, 2, 2],
            vec![vec![1, 0], vec![0, 1], vec![0, 1]],
        );
        assert!(bad.is_err());
    }
}
