//! Nerves of finite categories and categories of simplices.

use std::collections::HashMap;
use std::sync::Arc;

use crate::delta::{enumerate_injections, enumerate_monotone, MonotoneMap};
use crate::error::{Error, Result};
use crate::fincat::category::{CategoryBuilder, FinCategory};
use crate::fincat::constructions::opposite;
use crate::fincat::functor::Functor;
use crate::sset::{SSet, SSetBuilder, Simplex};

/// The nerve of a category together with the chain behind every
/// nondegenerate simplex.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub sset: SSet,
    pub category: Arc<FinCategory>,
    // per level, per generator: the objects `c_0, …, c_k`
    objects: Vec<Vec<Vec<usize>>>,
    // per level, per generator: the arrows `f_1, …, f_k`
    arrows: Vec<Vec<Vec<usize>>>,
}

impl Nerve {
    /// Objects visited by a simplex, degenerate ones included.
    pub fn simplex_objects(&self, s: &Simplex) -> Vec<usize> {
        let objs = &self.objects[s.level()][s.gen];
        s.op.values().iter().map(|&v| objs[v]).collect()
    }

    /// Arrows of a simplex; a degenerate direction contributes an identity.
    pub fn simplex_arrows(&self, s: &Simplex) -> Vec<usize> {
        let objs = &self.objects[s.level()][s.gen];
        let arrows = &self.arrows[s.level()][s.gen];
        let v = s.op.values();
        (1..v.len())
            .map(|i| {
                if v[i] == v[i - 1] {
                    self.category.identity(objs[v[i]])
                } else {
                    arrows[v[i] - 1]
                }
            })
            .collect()
    }

    /// The composite arrow of a simplex from vertex `a` to vertex `b`.
    pub fn composite(&self, s: &Simplex, a: usize, b: usize) -> usize {
        let arrows = self.simplex_arrows(s);
        let objs = self.simplex_objects(s);
        let mut cur = self.category.identity(objs[a]);
        for &f in &arrows[a..b] {
            cur = self.category.comp(f, cur);
        }
        cur
    }
}

fn chain_id(c: &FinCategory, arrows: &[usize]) -> String {
    let parts: Vec<&str> = arrows.iter().map(|&f| c.morphism_id(f)).collect();
    format!("<{}>", parts.join("|"))
}

/// The nerve of `c` truncated at `dim_bound`. Vertices carry the object ids;
/// a nondegenerate `k`-simplex is a chain of `k` composable non-identity
/// arrows, named `<f1|…|fk>`.
pub fn nerve(c: &Arc<FinCategory>, dim_bound: usize) -> Nerve {
    let mut b = SSetBuilder::new(dim_bound);
    let mut objects: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim_bound + 1];
    let mut arrows: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim_bound + 1];
    let mut index: Vec<HashMap<Vec<usize>, usize>> = vec![HashMap::new(); dim_bound + 1];
    for o in 0..c.object_count() {
        b.add_vertex(c.object_id(o));
        objects[0].push(vec![o]);
        arrows[0].push(Vec::new());
    }
    for k in 1..=dim_bound {
        let mut next = Vec::new();
        if k == 1 {
            for f in 0..c.morphism_count() {
                if !c.is_identity(f) {
                    next.push(vec![f]);
                }
            }
        } else {
            for chain in &arrows[k - 1] {
                let last = c.target(*chain.last().unwrap());
                for &g in c.outgoing(last) {
                    if !c.is_identity(g) {
                        let mut ch = chain.clone();
                        ch.push(g);
                        next.push(ch);
                    }
                }
            }
        }
        for ch in next {
            let faces = (0..=k).map(|i| chain_face(c, &ch, i, &index)).collect();
            let g = b
                .add_simplex(chain_id(c, &ch), faces)
                .expect("nerve level within bound");
            let mut objs = vec![c.source(ch[0])];
            objs.extend(ch.iter().map(|&f| c.target(f)));
            objects[k].push(objs);
            index[k].insert(ch.clone(), g);
            arrows[k].push(ch);
        }
    }
    let sset = b.build().expect("nerves satisfy the simplicial identities");
    Nerve {
        sset,
        category: c.clone(),
        objects,
        arrows,
    }
}

// `d_i` of a chain, in normal form.
fn chain_face(
    c: &FinCategory,
    ch: &[usize],
    i: usize,
    index: &[HashMap<Vec<usize>, usize>],
) -> Simplex {
    let k = ch.len();
    let face: Vec<usize> = if i == 0 {
        ch[1..].to_vec()
    } else if i == k {
        ch[..k - 1].to_vec()
    } else {
        let mut f = ch[..i - 1].to_vec();
        f.push(c.comp(ch[i], ch[i - 1]));
        f.extend_from_slice(&ch[i + 1..]);
        f
    };
    if k == 1 {
        let o = if i == 0 {
            c.target(ch[0])
        } else {
            c.source(ch[0])
        };
        return Simplex::nondegenerate(0, o);
    }
    let mut surj = vec![0];
    let mut kept = Vec::new();
    for &f in &face {
        if !c.is_identity(f) {
            kept.push(f);
        }
        surj.push(kept.len());
    }
    let j = kept.len();
    let gen = if j == 0 {
        c.source(face[0])
    } else {
        index[j][&kept]
    };
    Simplex {
        op: MonotoneMap::new_unchecked(j, surj),
        gen,
    }
}

/// `Δ_{/S}` truncated at `dim_bound`, with vertex data.
#[derive(Clone, Debug)]
pub struct SimplexCategory {
    pub category: Arc<FinCategory>,
    /// The simplex behind each object.
    pub simplices: Vec<Simplex>,
    /// The monotone map behind each morphism.
    pub maps: Vec<MonotoneMap>,
    /// `σ ↦ σ(0)`, as vertex indices of `S`.
    pub first_vertex: Vec<usize>,
    /// `σ ↦ σ(dim σ)`.
    pub last_vertex: Vec<usize>,
}

/// The category of simplices of `s` up to `dim_bound`: objects are all
/// simplices (degenerate ones included), a morphism `σ → ρ` is a monotone
/// `α` with `α^* ρ = σ`. With `semisimplicial` only nondegenerate simplices
/// and injective maps are kept.
pub fn category_of_simplices(
    s: &SSet,
    dim_bound: usize,
    semisimplicial: bool,
) -> Result<SimplexCategory> {
    if dim_bound > s.truncation() {
        return Err(Error::TruncationExceeded {
            requested: dim_bound,
            truncation: s.truncation(),
        });
    }
    let mut simplices = Vec::new();
    for k in 0..=dim_bound {
        if semisimplicial {
            simplices.extend(s.nondegenerate(k));
        } else {
            simplices.extend(s.all_simplices(k)?);
        }
    }
    let names: Vec<String> = simplices
        .iter()
        .map(|x| format!("{}:{}", x.dim(), s.simplex_name(x)))
        .collect();
    let pos: HashMap<Simplex, usize> = simplices.iter().cloned().zip(0..).collect();
    let mut b = CategoryBuilder::new();
    for n in &names {
        b.add_object(n.clone());
    }
    let mut maps = Vec::new();
    let mut ends = Vec::new();
    let mut key: HashMap<(usize, usize, MonotoneMap), usize> = HashMap::new();
    for (t, rho) in simplices.iter().enumerate() {
        let n = rho.dim();
        for m in 0..=dim_bound {
            let alphas = if semisimplicial {
                enumerate_injections(m, n)
            } else {
                enumerate_monotone(m, n)
            };
            for alpha in alphas {
                let sigma = s.restrict(rho, &alpha);
                let Some(&src) = pos.get(&sigma) else {
                    continue;
                };
                let id =
                    b.add_morphism(format!("{alpha} : {} -> {}", names[src], names[t]), src, t);
                if alpha.is_identity() {
                    b.set_identity(t, id);
                }
                key.insert((src, t, alpha.clone()), id);
                maps.push(alpha);
                ends.push((src, t));
            }
        }
    }
    let category = b
        .build(|g, f| {
            let (src, _) = ends[f];
            let (_, tgt) = ends[g];
            key.get(&(src, tgt, maps[g].after(&maps[f]))).copied()
        })
        .expect("category of simplices");
    let first_vertex = simplices
        .iter()
        .map(|x| s.vertex_via_map(x, 0).unwrap())
        .collect();
    let last_vertex = simplices
        .iter()
        .map(|x| s.vertex_via_map(x, x.dim()).unwrap())
        .collect();
    Ok(SimplexCategory {
        category: Arc::new(category),
        simplices,
        maps,
        first_vertex,
        last_vertex,
    })
}

impl SimplexCategory {
    /// First vertex as a functor `(Δ_{/NC})^op → C`: the opposite of
    /// `α : σ → ρ` goes to the composite of `ρ` from `ρ(0)` to `ρ(α(0))`.
    pub fn first_vertex_functor(&self, nerve: &Nerve) -> Functor {
        let cat = &self.category;
        let morphism_map = (0..cat.morphism_count())
            .map(|m| {
                let rho = &self.simplices[cat.target(m)];
                nerve.composite(rho, 0, self.maps[m].apply(0))
            })
            .collect();
        Functor::new_unchecked(
            Arc::new(opposite(cat)),
            nerve.category.clone(),
            self.first_vertex.clone(),
            morphism_map,
        )
    }

    /// Last vertex as a functor `Δ_{/NC} → C`: `α : σ → ρ` goes to the
    /// composite of `ρ` from `ρ(α(m))` to its last vertex.
    pub fn last_vertex_functor(&self, nerve: &Nerve) -> Functor {
        let cat = &self.category;
        let morphism_map = (0..cat.morphism_count())
            .map(|m| {
                let alpha = &self.maps[m];
                let rho = &self.simplices[cat.target(m)];
                nerve.composite(rho, alpha.apply(alpha.source_rank()), rho.dim())
            })
            .collect();
        Functor::new_unchecked(
            cat.clone(),
            nerve.category.clone(),
            self.last_vertex.clone(),
            morphism_map,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::{delta_leq, delta_s_leq};
    use crate::fincat::constructions::product;

    #[test]
    fn nerve_of_point() {
        let n = nerve(&Arc::new(FinCategory::terminal()), 3);
        for k in 0..=3 {
            assert_eq!(n.sset.simplex_count(k).unwrap(), 1);
        }
        assert_eq!(n.sset.generator_count(1), 0);
    }

    #[test]
    fn nerve_of_injective_delta_op() {
        let c = Arc::new(opposite(&delta_s_leq(1)));
        let n = nerve(&c, 2);
        assert_eq!(
            (0..=2)
                .map(|k| n.sset.generator_count(k))
                .collect::<Vec<_>>(),
            vec![2, 2, 0]
        );
        assert!(n.sset.check_simplicial_identities().is_empty());
    }

    #[test]
    fn nerve_identities_on_delta2() {
        let n = nerve(&Arc::new(delta_leq(2)), 3);
        assert!(n.sset.check_simplicial_identities().is_empty());
    }

    #[test]
    fn nerve_of_product_counts() {
        let c = Arc::new(delta_leq(1));
        let cc = Arc::new(product(&c, &c));
        let nc = nerve(&c, 2);
        let ncc = nerve(&cc, 2);
        for k in 0..=2 {
            let a = nc.sset.simplex_count(k).unwrap();
            assert_eq!(ncc.sset.simplex_count(k).unwrap(), a * a);
        }
    }

    #[test]
    fn simplices_of_a_point() {
        let pt = SSet::standard(0).extend_truncation(1);
        let cs = category_of_simplices(&pt, 1, false).unwrap();
        assert_eq!(cs.category.object_count(), 2);
        // v->v 1, v->s0v 2, s0v->v 1, s0v->s0v 3
        assert_eq!(cs.category.morphism_count(), 7);
        assert!(cs.category.is_valid());
        let d1 = SSet::standard(1);
        let cs = category_of_simplices(&d1, 0, false).unwrap();
        assert_eq!(cs.category.object_count(), 2);
        assert_eq!(cs.category.morphism_count(), 2);
        assert!(category_of_simplices(&d1, 2, false).is_err());
    }

    #[test]
    fn vertex_functors_are_functors() {
        let c = Arc::new(delta_leq(1));
        let n = nerve(&c, 2);
        let cs = category_of_simplices(&n.sset, 2, false).unwrap();
        assert!(cs.category.is_valid());
        assert!(cs.first_vertex_functor(&n).is_valid());
        assert!(cs.last_vertex_functor(&n).is_valid());
        let ss = category_of_simplices(&n.sset, 2, true).unwrap();
        assert!(ss.category.is_valid());
        assert!(ss.first_vertex_functor(&n).is_valid());
    }
}
