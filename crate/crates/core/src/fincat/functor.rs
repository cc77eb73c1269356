use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::category::FinCategory;
use crate::fincat::constructions::product;

/// A functor between finite categories, stored as index maps on objects and
/// morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    domain: Arc<FinCategory>,
    codomain: Arc<FinCategory>,
    object_map: Vec<usize>,
    morphism_map: Vec<usize>,
}

impl Functor {
    /// Builds a functor without checking the functor laws.
    pub fn new_unchecked(
        domain: Arc<FinCategory>,
        codomain: Arc<FinCategory>,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Functor {
        Functor {
            domain,
            codomain,
            object_map,
            morphism_map,
        }
    }

    pub fn new(
        domain: Arc<FinCategory>,
        codomain: Arc<FinCategory>,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Result<Functor> {
        let f = Functor::new_unchecked(domain, codomain, object_map, morphism_map);
        let v = f.validate();
        if v.is_empty() {
            Ok(f)
        } else {
            Err(Error::InvalidFunctor(v))
        }
    }

    /// Builds a functor from id-level maps, looking every id up by name.
    pub fn from_ids<'a>(
        domain: Arc<FinCategory>,
        codomain: Arc<FinCategory>,
        objects: impl IntoIterator<Item = (&'a str, &'a str)>,
        morphisms: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Functor> {
        let mut object_map = vec![usize::MAX; domain.object_count()];
        for (a, b) in objects {
            object_map[domain.object(a)?] = codomain.object(b)?;
        }
        let mut morphism_map = vec![usize::MAX; domain.morphism_count()];
        for (a, b) in morphisms {
            morphism_map[domain.morphism(a)?] = codomain.morphism(b)?;
        }
        Functor::new(domain, codomain, object_map, morphism_map)
    }

    pub fn identity(c: &Arc<FinCategory>) -> Functor {
        Functor {
            domain: c.clone(),
            codomain: c.clone(),
            object_map: (0..c.object_count()).collect(),
            morphism_map: (0..c.morphism_count()).collect(),
        }
    }

    /// The constant functor at `object`.
    pub fn constant(
        domain: &Arc<FinCategory>,
        codomain: &Arc<FinCategory>,
        object: usize,
    ) -> Functor {
        let id = codomain.identity(object);
        Functor {
            domain: domain.clone(),
            codomain: codomain.clone(),
            object_map: vec![object; domain.object_count()],
            morphism_map: vec![id; domain.morphism_count()],
        }
    }

    /// The functor from the terminal category picking out `object`.
    pub fn point(codomain: &Arc<FinCategory>, object: usize) -> Functor {
        Functor::constant(&Arc::new(FinCategory::terminal()), codomain, object)
    }

    /// Inclusion of the full subcategory spanned by `objects`, together with
    /// that subcategory.
    pub fn full_inclusion(c: &Arc<FinCategory>, objects: &[usize]) -> Functor {
        let sub = Arc::new(crate::fincat::constructions::full_subcategory(c, objects));
        let object_map = (0..sub.object_count())
            .map(|o| c.object(sub.object_id(o)).expect("subcategory object"))
            .collect();
        let morphism_map = (0..sub.morphism_count())
            .map(|m| {
                c.morphism(sub.morphism_id(m))
                    .expect("subcategory morphism")
            })
            .collect();
        Functor {
            domain: sub,
            codomain: c.clone(),
            object_map,
            morphism_map,
        }
    }

    pub fn domain(&self) -> &Arc<FinCategory> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FinCategory> {
        &self.codomain
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphism_map
    }

    pub fn on_object(&self, o: usize) -> usize {
        self.object_map[o]
    }

    pub fn on_morphism(&self, m: usize) -> usize {
        self.morphism_map[m]
    }

    /// Functor-law violations, as readable messages.
    pub fn validate(&self) -> Vec<String> {
        let (c, d) = (&*self.domain, &*self.codomain);
        let mut out = Vec::new();
        if self.object_map.len() != c.object_count()
            || self.morphism_map.len() != c.morphism_count()
        {
            out.push("map sizes do not match the domain".to_string());
            return out;
        }
        for (o, &x) in self.object_map.iter().enumerate() {
            if x >= d.object_count() {
                out.push(format!("object `{}` is unmapped", c.object_id(o)));
            }
        }
        for (m, &x) in self.morphism_map.iter().enumerate() {
            if x >= d.morphism_count() {
                out.push(format!("morphism `{}` is unmapped", c.morphism_id(m)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for m in 0..c.morphism_count() {
            let fm = self.morphism_map[m];
            if d.source(fm) != self.object_map[c.source(m)]
                || d.target(fm) != self.object_map[c.target(m)]
            {
                out.push(format!(
                    "morphism `{}` is sent to a mistyped morphism",
                    c.morphism_id(m)
                ));
            }
        }
        for o in 0..c.object_count() {
            if self.morphism_map[c.identity(o)] != d.identity(self.object_map[o]) {
                out.push(format!("identity of `{}` is not preserved", c.object_id(o)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in 0..c.morphism_count() {
            for &g in c.outgoing(c.target(f)) {
                let lhs = self.morphism_map[c.comp(g, f)];
                let rhs = d.compose(self.morphism_map[g], self.morphism_map[f]);
                if rhs != Some(lhs) {
                    out.push(format!(
                        "composite ({}, {}) is not preserved",
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

    /// `self ∘ first`.
    pub fn after(&self, first: &Functor) -> Result<Functor> {
        if !crate::fincat::constructions::same_category(&first.codomain, &self.domain) {
            return Err(Error::NotComposable);
        }
        Ok(Functor {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            object_map: first
                .object_map
                .iter()
                .map(|&o| self.object_map[o])
                .collect(),
            morphism_map: first
                .morphism_map
                .iter()
                .map(|&m| self.morphism_map[m])
                .collect(),
        })
    }

    /// The same functor between opposite categories.
    pub fn opposite(&self) -> Functor {
        Functor {
            domain: Arc::new(crate::fincat::constructions::opposite(&self.domain)),
            codomain: Arc::new(crate::fincat::constructions::opposite(&self.codomain)),
            object_map: self.object_map.clone(),
            morphism_map: self.morphism_map.clone(),
        }
    }

    /// `self × other : A × A' → B × B'`.
    pub fn product(&self, other: &Functor) -> Functor {
        let dom = Arc::new(product(&self.domain, &other.domain));
        let cod = Arc::new(product(&self.codomain, &other.codomain));
        let (n2, m2) = (other.domain.object_count(), other.domain.morphism_count());
        let (cn2, cm2) = (
            other.codomain.object_count(),
            other.codomain.morphism_count(),
        );
        let object_map = (0..dom.object_count())
            .map(|o| self.object_map[o / n2] * cn2 + other.object_map[o % n2])
            .collect();
        let morphism_map = (0..dom.morphism_count())
            .map(|m| self.morphism_map[m / m2] * cm2 + other.morphism_map[m % m2])
            .collect();
        Functor {
            domain: dom,
            codomain: cod,
            object_map,
            morphism_map,
        }
    }

    /// The diagonal `C → C × C`.
    pub fn diagonal(c: &Arc<FinCategory>) -> Functor {
        let cod = Arc::new(product(c, c));
        let (n, m) = (c.object_count(), c.morphism_count());
        Functor {
            domain: c.clone(),
            codomain: cod,
            object_map: (0..n).map(|o| o * n + o).collect(),
            morphism_map: (0..m).map(|f| f * m + f).collect(),
        }
    }

    /// Id-level description: `(object pairs, morphism pairs)`.
    pub fn id_maps(&self) -> (Vec<(String, String)>, Vec<(String, String)>) {
        let objs = self
            .object_map
            .iter()
            .enumerate()
            .map(|(o, &x)| {
                (
                    self.domain.object_id(o).to_string(),
                    self.codomain.object_id(x).to_string(),
                )
            })
            .collect();
        let mors = self
            .morphism_map
            .iter()
            .enumerate()
            .map(|(m, &x)| {
                (
                    self.domain.morphism_id(m).to_string(),
                    self.codomain.morphism_id(x).to_string(),
                )
            })
            .collect();
        (objs, mors)
    }
}

/// All functors `c → d`, in a deterministic order, stopping after `limit`.
pub fn enumerate_functors(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    limit: usize,
) -> Vec<Functor> {
    let mut out = Vec::new();
    let nc = c.object_count();
    let mut object_map = vec![0; nc];
    if nc == 0 {
        out.push(Functor::new_unchecked(c.clone(), d.clone(), vec![], vec![]));
        return out;
    }
    if d.object_count() == 0 {
        return out;
    }
    // Non-identity morphisms, assigned in index order once objects are fixed.
    let free: Vec<usize> = (0..c.morphism_count())
        .filter(|&m| !c.is_identity(m))
        .collect();
    loop {
        let mut morphism_map = vec![usize::MAX; c.morphism_count()];
        for o in 0..nc {
            morphism_map[c.identity(o)] = d.identity(object_map[o]);
        }
        assign(
            c,
            d,
            &object_map,
            &free,
            0,
            &mut morphism_map,
            &mut out,
            limit,
        );
        if out.len() >= limit {
            break;
        }
        // next object map in lexicographic order
        let mut i = nc;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            object_map[i] += 1;
            if object_map[i] < d.object_count() {
                break;
            }
            object_map[i] = 0;
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn assign(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    object_map: &[usize],
    free: &[usize],
    k: usize,
    morphism_map: &mut Vec<usize>,
    out: &mut Vec<Functor>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if k == free.len() {
        out.push(Functor::new_unchecked(
            c.clone(),
            d.clone(),
            object_map.to_vec(),
            morphism_map.clone(),
        ));
        return;
    }
    let m = free[k];
    let (s, t) = (object_map[c.source(m)], object_map[c.target(m)]);
    for x in d.hom(s, t) {
        morphism_map[m] = x;
        if consistent(c, d, m, morphism_map) {
            assign(c, d, object_map, free, k + 1, morphism_map, out, limit);
        }
    }
    morphism_map[m] = usize::MAX;
}

// Checks every composable triple involving `m` whose three images are known.
fn consistent(c: &FinCategory, d: &FinCategory, m: usize, map: &[usize]) -> bool {
    let known = |x: usize| map[x] != usize::MAX;
    let check = |g: usize, f: usize| {
        let h = c.comp(g, f);
        !(known(g) && known(f) && known(h)) || d.compose(map[g], map[f]) == Some(map[h])
    };
    for &g in c.outgoing(c.target(m)) {
        if !check(g, m) {
            return false;
        }
    }
    for &f in c.incoming(c.source(m)) {
        if !check(m, f) {
            return false;
        }
    }
    // m as a composite of known pairs
    for f in 0..c.morphism_count() {
        if c.source(f) != c.source(m) {
            continue;
        }
        for &g in c.outgoing(c.target(f)) {
            if c.comp(g, f) == m && !check(g, f) {
                return false;
            }
        }
    }
    true
}
