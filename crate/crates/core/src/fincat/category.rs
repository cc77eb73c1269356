use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category given by an explicit, total composition table.
///
/// Objects and morphisms are addressed by dense indices; their opaque string
/// ids are kept alongside for serialization and reporting. Composites are
/// stored per morphism `f`, one slot for each morphism leaving `target(f)`,
/// so memory is proportional to the number of composable pairs.
#[derive(Clone, Debug)]
pub struct FinCategory {
    objects: Vec<String>,
    object_index: HashMap<String, usize>,
    morphisms: Vec<Morphism>,
    morphism_index: HashMap<String, usize>,
    identities: Vec<usize>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
    out_pos: Vec<usize>,
    table: Vec<Vec<u32>>,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.table == other.table
    }
}

impl Eq for FinCategory {}

#[derive(Default, Debug, Clone)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<Option<usize>>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, id: impl Into<String>) -> usize {
        self.objects.push(id.into());
        self.identities.push(None);
        self.objects.len() - 1
    }

    pub fn add_morphism(&mut self, id: impl Into<String>, source: usize, target: usize) -> usize {
        self.morphisms.push(Morphism {
            id: id.into(),
            source,
            target,
        });
        self.morphisms.len() - 1
    }

    /// Adds a morphism and registers it as the identity of `object`.
    pub fn add_identity(&mut self, id: impl Into<String>, object: usize) -> usize {
        let m = self.add_morphism(id, object, object);
        self.identities[object] = Some(m);
        m
    }

    pub fn set_identity(&mut self, object: usize, morphism: usize) {
        self.identities[object] = Some(morphism);
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    /// Fills the composition table by calling `compose(g, f)` for every pair
    /// with `target(f) == source(g)`. Returning `None` leaves the slot empty,
    /// which `FinCategory::validate` reports.
    pub fn build<F>(self, mut compose: F) -> Result<FinCategory>
    where
        F: FnMut(usize, usize) -> Option<usize>,
    {
        let mut problems = Vec::new();
        let mut object_index = HashMap::with_capacity(self.objects.len());
        for (i, id) in self.objects.iter().enumerate() {
            if object_index.insert(id.clone(), i).is_some() {
                problems.push(format!("duplicate object id `{id}`"));
            }
        }
        let mut morphism_index = HashMap::with_capacity(self.morphisms.len());
        for (i, m) in self.morphisms.iter().enumerate() {
            if morphism_index.insert(m.id.clone(), i).is_some() {
                problems.push(format!("duplicate morphism id `{}`", m.id));
            }
            if m.source >= self.objects.len() || m.target >= self.objects.len() {
                problems.push(format!("morphism `{}` has an endpoint out of range", m.id));
            }
        }
        let mut identities = Vec::with_capacity(self.objects.len());
        for (o, id) in self.identities.iter().enumerate() {
            match id {
                Some(m) if *m < self.morphisms.len() => identities.push(*m),
                _ => problems.push(format!("object `{}` has no identity", self.objects[o])),
            }
        }
        if !problems.is_empty() {
            return Err(Error::InvalidCategory(problems));
        }

        let n = self.objects.len();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        let mut out_pos = vec![0; self.morphisms.len()];
        for (i, m) in self.morphisms.iter().enumerate() {
            out_pos[i] = outgoing[m.source].len();
            outgoing[m.source].push(i);
            incoming[m.target].push(i);
        }
        let mut table = Vec::with_capacity(self.morphisms.len());
        for (f, m) in self.morphisms.iter().enumerate() {
            let row: Vec<u32> = outgoing[m.target]
                .iter()
                .map(|&g| compose(g, f).map_or(NONE, |h| h as u32))
                .collect();
            table.push(row);
        }
        Ok(FinCategory {
            objects: self.objects,
            object_index,
            morphisms: self.morphisms,
            morphism_index,
            identities,
            outgoing,
            incoming,
            out_pos,
            table,
        })
    }
}

/// One broken category axiom, named by the offending ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    IdentityNotEndomorphism {
        object: String,
        morphism: String,
    },
    MissingComposite {
        g: String,
        f: String,
    },
    CompositeEndpoints {
        g: String,
        f: String,
        composite: String,
    },
    LeftIdentity {
        f: String,
    },
    RightIdentity {
        f: String,
    },
    Associativity {
        h: String,
        g: String,
        f: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IdentityNotEndomorphism { object, morphism } => {
                write!(
                    fm,
                    "identity `{morphism}` of `{object}` is not an endomorphism of it"
                )
            }
            Violation::MissingComposite { g, f } => write!(fm, "composite ({g}, {f}) is undefined"),
            Violation::CompositeEndpoints { g, f, composite } => write!(
                fm,
                "composite ({g}, {f}) = `{composite}` has the wrong endpoints"
            ),
            Violation::LeftIdentity { f } => write!(fm, "id ∘ `{f}` != `{f}`"),
            Violation::RightIdentity { f } => write!(fm, "`{f}` ∘ id != `{f}`"),
            Violation::Associativity { h, g, f } => {
                write!(fm, "associativity fails on ({h}, {g}, {f})")
            }
        }
    }
}

impl FinCategory {
    /// The category with one object and its identity.
    pub fn terminal() -> FinCategory {
        let mut b = CategoryBuilder::new();
        let o = b.add_object("*");
        b.add_identity("id_*", o);
        b.build(|_, _| Some(0)).expect("terminal category")
    }

    /// The empty category.
    pub fn empty() -> FinCategory {
        CategoryBuilder::new()
            .build(|_, _| None)
            .expect("empty category")
    }

    /// Discrete category on the given object ids.
    pub fn discrete<S: AsRef<str>>(ids: &[S]) -> FinCategory {
        let mut b = CategoryBuilder::new();
        for id in ids {
            let o = b.add_object(id.as_ref());
            b.add_identity(format!("id_{}", id.as_ref()), o);
        }
        b.build(|g, f| (g == f).then_some(f))
            .expect("discrete category")
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_id(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn object(&self, id: &str) -> Result<usize> {
        self.object_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownObject(id.to_string()))
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism_id(&self, m: usize) -> &str {
        &self.morphisms[m].id
    }

    pub fn morphism(&self, id: &str) -> Result<usize> {
        self.morphism_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownMorphism(id.to_string()))
    }

    pub fn source(&self, m: usize) -> usize {
        self.morphisms[m].source
    }

    pub fn target(&self, m: usize) -> usize {
        self.morphisms[m].target
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identities[self.morphisms[m].source] == m
    }

    pub fn outgoing(&self, o: usize) -> &[usize] {
        &self.outgoing[o]
    }

    pub fn incoming(&self, o: usize) -> &[usize] {
        &self.incoming[o]
    }

    /// Morphisms `a -> b`, in index order.
    pub fn hom(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        self.outgoing[a]
            .iter()
            .copied()
            .filter(move |&m| self.morphisms[m].target == b)
    }

    pub fn hom_vec(&self, a: usize, b: usize) -> Vec<usize> {
        self.hom(a, b).collect()
    }

    /// `g ∘ f`, or `None` when the pair is not composable or the table has a hole.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let fm = &self.morphisms[f];
        if self.morphisms[g].source != fm.target {
            return None;
        }
        let h = self.table[f][self.out_pos[g]];
        (h != NONE).then_some(h as usize)
    }

    /// `g ∘ f` for a pair known to be composable in a valid category.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose(g, f).unwrap_or_else(|| {
            panic!(
                "composite ({}, {}) undefined",
                self.morphisms[g].id, self.morphisms[f].id
            )
        })
    }

    /// Every broken axiom: identity shape, missing or mistargeted composites,
    /// unit laws, associativity on all composable triples.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let id = |m: usize| self.morphisms[m].id.clone();
        for (o, &i) in self.identities.iter().enumerate() {
            let m = &self.morphisms[i];
            if m.source != o || m.target != o {
                out.push(Violation::IdentityNotEndomorphism {
                    object: self.objects[o].clone(),
                    morphism: m.id.clone(),
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        let mut table_ok = true;
        for f in 0..self.morphisms.len() {
            for &g in &self.outgoing[self.morphisms[f].target] {
                match self.compose(g, f) {
                    None => {
                        table_ok = false;
                        out.push(Violation::MissingComposite { g: id(g), f: id(f) });
                    }
                    Some(h) => {
                        if self.source(h) != self.source(f) || self.target(h) != self.target(g) {
                            table_ok = false;
                            out.push(Violation::CompositeEndpoints {
                                g: id(g),
                                f: id(f),
                                composite: id(h),
                            });
                        }
                    }
                }
            }
        }
        if !table_ok {
            return out;
        }
        for f in 0..self.morphisms.len() {
            let (s, t) = (self.source(f), self.target(f));
            if self.comp(self.identities[t], f) != f {
                out.push(Violation::LeftIdentity { f: id(f) });
            }
            if self.comp(f, self.identities[s]) != f {
                out.push(Violation::RightIdentity { f: id(f) });
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in &self.outgoing[self.target(f)] {
                let gf = self.comp(g, f);
                for &h in &self.outgoing[self.target(g)] {
                    if self.comp(h, gf) != self.comp(self.comp(h, g), f) {
                        out.push(Violation::Associativity {
                            h: id(h),
                            g: id(g),
                            f: id(f),
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Returns the category itself or every violation as an error.
    pub fn checked(self) -> Result<Self> {
        let v = self.validate();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(Error::InvalidCategory(
                v.iter().map(|x| x.to_string()).collect(),
            ))
        }
    }

    /// Number of connected components of the underlying graph.
    pub fn component_count(&self) -> usize {
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(self.objects.len());
        for m in &self.morphisms {
            uf.union(m.source, m.target);
        }
        let mut roots: Vec<usize> = (0..self.objects.len()).map(|o| uf.find(o)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// Same category with objects and morphisms renumbered in lexicographic id
    /// order. Serialization and comparisons use this form.
    pub fn canonical(&self) -> FinCategory {
        let mut objs: Vec<usize> = (0..self.objects.len()).collect();
        objs.sort_by(|&a, &b| self.objects[a].cmp(&self.objects[b]));
        let mut obj_new = vec![0; objs.len()];
        for (new, &old) in objs.iter().enumerate() {
            obj_new[old] = new;
        }
        let mut mors: Vec<usize> = (0..self.morphisms.len()).collect();
        mors.sort_by(|&a, &b| self.morphisms[a].id.cmp(&self.morphisms[b].id));
        let mut mor_new = vec![0; mors.len()];
        for (new, &old) in mors.iter().enumerate() {
            mor_new[old] = new;
        }
        let mut b = CategoryBuilder::new();
        for &o in &objs {
            b.add_object(self.objects[o].clone());
        }
        for &m in &mors {
            let mm = &self.morphisms[m];
            b.add_morphism(mm.id.clone(), obj_new[mm.source], obj_new[mm.target]);
        }
        for (o, &i) in self.identities.iter().enumerate() {
            b.set_identity(obj_new[o], mor_new[i]);
        }
        b.build(|g, f| self.compose(mors[g], mors[f]).map(|h| mor_new[h]))
            .expect("renumbering preserves well-formedness")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // one object with an idempotent `e`, composed by `table(g, f)`
    fn monoid(table: impl Fn(usize, usize) -> Option<usize>) -> Result<FinCategory> {
        let mut b = CategoryBuilder::new();
        let x = b.add_object("x");
        b.add_identity("id", x);
        b.add_morphism("e", x, x);
        b.add_morphism("k", x, x);
        b.build(table)
    }

    #[test]
    fn small_categories_are_valid() {
        assert!(FinCategory::terminal().is_valid());
        assert!(FinCategory::empty().is_valid());
        let d = FinCategory::discrete(&["a", "b", "c"]);
        assert!(d.is_valid());
        assert_eq!(d.component_count(), 3);
        assert_eq!(d.hom_vec(0, 1), Vec::<usize>::new());
    }

    #[test]
    fn violations_are_reported() {
        // left zero semigroup on {e, k} with an identity adjoined
        let good = monoid(|g, f| {
            Some(if g == 0 {
                f
            } else if f == 0 {
                g
            } else {
                g
            })
        });
        assert!(good.unwrap().is_valid());
        let missing = monoid(|g, f| (g == 0 || f == 0).then_some(g.max(f))).unwrap();
        assert!(matches!(
            missing.validate()[0],
            Violation::MissingComposite { .. }
        ));
        // e∘k = k, k∘e = e, e∘e = k, k∘k = e breaks associativity
        let bad = monoid(|g, f| {
            Some(match (g, f) {
                (0, f) => f,
                (g, 0) => g,
                (1, 1) => 2,
                (2, 2) => 1,
                (1, 2) => 2,
                _ => 1,
            })
        })
        .unwrap();
        assert!(bad
            .validate()
            .iter()
            .any(|v| matches!(v, Violation::Associativity { .. })));
        assert!(bad.checked().is_err());
    }

    #[test]
    fn duplicate_ids_fail_to_build() {
        let mut b = CategoryBuilder::new();
        let x = b.add_object("x");
        b.add_object("x");
        b.add_identity("id", x);
        assert!(b.build(|_, f| Some(f)).is_err());
    }

    #[test]
    fn canonical_sorts_ids() {
        let mut b = CategoryBuilder::new();
        let y = b.add_object("y");
        let x = b.add_object("x");
        b.add_identity("1y", y);
        b.add_identity("1x", x);
        b.add_morphism("f", x, y);
        let c = b
            .build(|g, f| match (g, f) {
                (0, 2) | (2, 1) => Some(2),
                (g, f) if g == f => Some(g),
                _ => None,
            })
            .unwrap();
        assert!(c.is_valid());
        let k = c.canonical();
        assert!(k.is_valid());
        assert_eq!(k.objects(), ["x", "y"]);
        assert_eq!(k.morphism_id(0), "1x");
        assert_eq!(k.canonical(), k);
    }
}
