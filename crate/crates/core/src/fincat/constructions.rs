//! Opposites, products, comma categories and their special cases, strict
//! pullbacks and multislices.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::category::{CategoryBuilder, FinCategory};
use crate::fincat::functor::Functor;

/// Reverses every arrow. Ids are kept, so `opposite(opposite(c)) == c`.
pub fn opposite(c: &FinCategory) -> FinCategory {
    let mut b = CategoryBuilder::new();
    for id in c.objects() {
        b.add_object(id.clone());
    }
    for m in c.morphisms() {
        b.add_morphism(m.id.clone(), m.target, m.source);
    }
    for o in 0..c.object_count() {
        b.set_identity(o, c.identity(o));
    }
    b.build(|g, f| c.compose(f, g))
        .expect("opposite of a well-formed category")
}

/// `c × d`. Object `(i, j)` has index `i * |ob d| + j`, morphism `(f, g)` has
/// index `f * |mor d| + g`.
pub fn product(c: &FinCategory, d: &FinCategory) -> FinCategory {
    let (nd, md) = (d.object_count(), d.morphism_count());
    let mut b = CategoryBuilder::new();
    for a in c.objects() {
        for x in d.objects() {
            b.add_object(format!("({a},{x})"));
        }
    }
    for f in c.morphisms() {
        for g in d.morphisms() {
            b.add_morphism(
                format!("({},{})", f.id, g.id),
                f.source * nd + g.source,
                f.target * nd + g.target,
            );
        }
    }
    for i in 0..c.object_count() {
        for j in 0..nd {
            b.set_identity(i * nd + j, c.identity(i) * md + d.identity(j));
        }
    }
    b.build(|g, f| {
        let (g1, g2) = (g / md, g % md);
        let (f1, f2) = (f / md, f % md);
        Some(c.compose(g1, f1)? * md + d.compose(g2, f2)?)
    })
    .expect("product of well-formed categories")
}

/// Full subcategory on `objects` (in the given order). Ids are inherited.
pub fn full_subcategory(c: &FinCategory, objects: &[usize]) -> FinCategory {
    let mut pos = HashMap::new();
    let mut b = CategoryBuilder::new();
    for &o in objects {
        pos.insert(o, b.add_object(c.object_id(o)));
    }
    let mut old = Vec::new();
    let mut new_of = HashMap::new();
    for &a in objects {
        for &m in c.outgoing(a) {
            if let Some(&t) = pos.get(&c.target(m)) {
                new_of.insert(m, b.add_morphism(c.morphism_id(m), pos[&a], t));
                old.push(m);
            }
        }
    }
    for &o in objects {
        b.set_identity(pos[&o], new_of[&c.identity(o)]);
    }
    b.build(|g, f| {
        c.compose(old[g], old[f])
            .and_then(|h| new_of.get(&h).copied())
    })
    .expect("full subcategory")
}

/// A comma category with its two projections.
#[derive(Clone, Debug)]
pub struct Comma {
    pub category: Arc<FinCategory>,
    pub to_left: Functor,
    pub to_right: Functor,
}

/// The comma category `(left ↓ right)`: objects `(a, b, h: left(a) → right(b))`,
/// morphisms the commuting squares `(x, y)`.
pub fn comma(left: &Functor, right: &Functor) -> Result<Comma> {
    let (a_cat, b_cat, c) = (left.domain(), right.domain(), left.codomain());
    if !same_category(c, right.codomain()) {
        return Err(Error::CodomainMismatch);
    }
    let mut b = CategoryBuilder::new();
    let mut objs: Vec<(usize, usize, usize)> = Vec::new();
    for a in 0..a_cat.object_count() {
        for bb in 0..b_cat.object_count() {
            for h in c.hom(left.on_object(a), right.on_object(bb)) {
                b.add_object(format!(
                    "({}, {}, {})",
                    a_cat.object_id(a),
                    b_cat.object_id(bb),
                    c.morphism_id(h)
                ));
                objs.push((a, bb, h));
            }
        }
    }
    // Group objects by their (a, b) pair for morphism enumeration.
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, &(a, bb, _)) in objs.iter().enumerate() {
        by_pair.entry((a, bb)).or_default().push(i);
    }
    let mut mors: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut key: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
    for (s, &(a, bb, h)) in objs.iter().enumerate() {
        for &x in a_cat.outgoing(a) {
            let fx = left.on_morphism(x);
            for &y in b_cat.outgoing(bb) {
                let gy = right.on_morphism(y);
                let lower = c.comp(gy, h);
                let Some(targets) = by_pair.get(&(a_cat.target(x), b_cat.target(y))) else {
                    continue;
                };
                for &t in targets {
                    let h2 = objs[t].2;
                    if c.comp(h2, fx) == lower {
                        let idx = b.add_morphism(
                            format!(
                                "({}, {}) : {} -> {}",
                                a_cat.morphism_id(x),
                                b_cat.morphism_id(y),
                                b_id(&objs, s, a_cat, b_cat, c),
                                b_id(&objs, t, a_cat, b_cat, c)
                            ),
                            s,
                            t,
                        );
                        key.insert((s, t, x, y), idx);
                        mors.push((s, t, x, y));
                    }
                }
            }
        }
    }
    for (o, &(a, bb, _)) in objs.iter().enumerate() {
        let id = key[&(o, o, a_cat.identity(a), b_cat.identity(bb))];
        b.set_identity(o, id);
    }
    let cat = Arc::new(
        b.build(|g, f| {
            let (s, _, x, y) = mors[f];
            let (_, t, x2, y2) = mors[g];
            key.get(&(s, t, a_cat.comp(x2, x), b_cat.comp(y2, y)))
                .copied()
        })
        .expect("comma category"),
    );
    let to_left = Functor::new_unchecked(
        cat.clone(),
        a_cat.clone(),
        objs.iter().map(|o| o.0).collect(),
        mors.iter().map(|m| m.2).collect(),
    );
    let to_right = Functor::new_unchecked(
        cat.clone(),
        b_cat.clone(),
        objs.iter().map(|o| o.1).collect(),
        mors.iter().map(|m| m.3).collect(),
    );
    Ok(Comma {
        category: cat,
        to_left,
        to_right,
    })
}

fn b_id(
    objs: &[(usize, usize, usize)],
    i: usize,
    a: &FinCategory,
    b: &FinCategory,
    c: &FinCategory,
) -> String {
    let (x, y, h) = objs[i];
    format!(
        "({}, {}, {})",
        a.object_id(x),
        b.object_id(y),
        c.morphism_id(h)
    )
}

pub(crate) fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn check_object(c: &FinCategory, d: usize) -> Result<()> {
    if d < c.object_count() {
        Ok(())
    } else {
        Err(Error::UnknownObject(format!("#{d}")))
    }
}

/// `p ↓ d`, i.e. `C ×_D D_{/d}`: objects `(c, f: p(c) → d)`. Returned with the
/// projection to the domain of `p`.
pub fn slice_along(p: &Functor, d: usize) -> Result<(Arc<FinCategory>, Functor)> {
    check_object(p.codomain(), d)?;
    let point = Functor::point(p.codomain(), d);
    let cm = comma(p, &point)?;
    Ok((cm.category, cm.to_left))
}

/// `d ↓ p`, i.e. `C ×_D D_{d/}`: objects `(c, f: d → p(c))`.
pub fn coslice_along(p: &Functor, d: usize) -> Result<(Arc<FinCategory>, Functor)> {
    check_object(p.codomain(), d)?;
    let point = Functor::point(p.codomain(), d);
    let cm = comma(&point, p)?;
    Ok((cm.category, cm.to_right))
}

/// `C_{/d}` with its projection.
pub fn slice(c: &Arc<FinCategory>, d: usize) -> Result<(Arc<FinCategory>, Functor)> {
    slice_along(&Functor::identity(c), d)
}

/// `C_{d/}` with its projection.
pub fn coslice(c: &Arc<FinCategory>, d: usize) -> Result<(Arc<FinCategory>, Functor)> {
    coslice_along(&Functor::identity(c), d)
}

/// A strict pullback with both projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub category: Arc<FinCategory>,
    pub to_left: Functor,
    pub to_right: Functor,
}

/// Strict pullback `A ×_C B`: objects `(a, b)` with `F a = G b`, morphisms
/// `(x, y)` with `F x = G y`.
pub fn pullback(left: &Functor, right: &Functor) -> Result<Pullback> {
    let (a_cat, b_cat) = (left.domain(), right.domain());
    if !same_category(left.codomain(), right.codomain()) {
        return Err(Error::CodomainMismatch);
    }
    let mut b = CategoryBuilder::new();
    let mut objs = Vec::new();
    let mut obj_key = HashMap::new();
    for a in 0..a_cat.object_count() {
        for bb in 0..b_cat.object_count() {
            if left.on_object(a) == right.on_object(bb) {
                let i = b.add_object(format!("({}, {})", a_cat.object_id(a), b_cat.object_id(bb)));
                obj_key.insert((a, bb), i);
                objs.push((a, bb));
            }
        }
    }
    let mut mors = Vec::new();
    let mut key = HashMap::new();
    for x in 0..a_cat.morphism_count() {
        let fx = left.on_morphism(x);
        for y in 0..b_cat.morphism_count() {
            if right.on_morphism(y) != fx {
                continue;
            }
            let s = obj_key[&(a_cat.source(x), b_cat.source(y))];
            let t = obj_key[&(a_cat.target(x), b_cat.target(y))];
            let i = b.add_morphism(
                format!("({}, {})", a_cat.morphism_id(x), b_cat.morphism_id(y)),
                s,
                t,
            );
            key.insert((x, y), i);
            mors.push((x, y));
        }
    }
    for (o, &(a, bb)) in objs.iter().enumerate() {
        b.set_identity(o, key[&(a_cat.identity(a), b_cat.identity(bb))]);
    }
    let cat = Arc::new(
        b.build(|g, f| {
            let (x, y) = mors[f];
            let (x2, y2) = mors[g];
            key.get(&(a_cat.comp(x2, x), b_cat.comp(y2, y))).copied()
        })
        .expect("pullback category"),
    );
    let to_left = Functor::new_unchecked(
        cat.clone(),
        a_cat.clone(),
        objs.iter().map(|o| o.0).collect(),
        mors.iter().map(|m| m.0).collect(),
    );
    let to_right = Functor::new_unchecked(
        cat.clone(),
        b_cat.clone(),
        objs.iter().map(|o| o.1).collect(),
        mors.iter().map(|m| m.1).collect(),
    );
    Ok(Pullback {
        category: cat,
        to_left,
        to_right,
    })
}

/// The wide pullback `C_{a_1/} ×_C ⋯ ×_C C_{a_m/}` with its projection to `C`.
/// For the empty tuple this is `C` itself.
pub fn multislice(c: &Arc<FinCategory>, objects: &[usize]) -> Result<(Arc<FinCategory>, Functor)> {
    let Some((&first, rest)) = objects.split_first() else {
        return Ok((c.clone(), Functor::identity(c)));
    };
    let (mut cat, mut proj) = coslice(c, first)?;
    for &a in rest {
        let (_, pa) = coslice(c, a)?;
        let pb = pullback(&proj, &pa)?;
        proj = proj.after(&pb.to_left)?;
        cat = pb.category;
    }
    Ok((cat, proj))
}
