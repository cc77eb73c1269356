//! Grothendieck constructions of finite-set-valued functors.

use std::collections::HashMap;
use std::sync::Arc;

use crate::diagram::SetDiagram;
use crate::fincat::category::{CategoryBuilder, FinCategory};
use crate::fincat::constructions::opposite;
use crate::fincat::functor::Functor;

/// A category of elements with its projection and the element behind each
/// object.
#[derive(Clone, Debug)]
pub struct Grothendieck {
    pub category: Arc<FinCategory>,
    pub projection: Functor,
    /// `(object of the base, element)` for each object.
    pub elements: Vec<(usize, usize)>,
}

impl Grothendieck {
    /// Object index of `(c, x)`.
    pub fn object_of(&self, c: usize, x: usize) -> usize {
        self.elements
            .iter()
            .position(|&e| e == (c, x))
            .expect("element of the diagram")
    }
}

/// `∫ X` for covariant `X : C → Set`: objects `(c, x)`, one morphism
/// `(c, x) → (c', X(f)(x))` per `f : c → c'`.
pub fn grothendieck(x: &SetDiagram) -> Grothendieck {
    let c = x.shape().clone();
    build(&c, x, false)
}

/// Category of elements of a presheaf `X : C^op → Set` given on the shape
/// `C^op`. Objects `(c, x)`, one morphism `(c, X(f)(x')) → (c', x')` per
/// `f : c → c'` in `C`; the projection lands in `C`.
pub fn category_of_elements(x: &SetDiagram) -> Grothendieck {
    let c = Arc::new(opposite(x.shape()));
    build(&c, x, true)
}

fn build(c: &Arc<FinCategory>, x: &SetDiagram, contravariant: bool) -> Grothendieck {
    let mut b = CategoryBuilder::new();
    let mut elements = Vec::new();
    let mut pos = HashMap::new();
    for o in 0..c.object_count() {
        for e in 0..x.size(o) {
            pos.insert((o, e), b.add_object(format!("({}, {e})", c.object_id(o))));
            elements.push((o, e));
        }
    }
    let mut mors: Vec<(usize, usize)> = Vec::new();
    let mut key = HashMap::new();
    for f in 0..c.morphism_count() {
        let (s, t) = (c.source(f), c.target(f));
        // (f, e) with e the element over the source
        let pairs: Vec<(usize, usize)> = if contravariant {
            (0..x.size(t)).map(|e2| (x.act(f, e2), e2)).collect()
        } else {
            (0..x.size(s)).map(|e| (e, x.act(f, e))).collect()
        };
        for (e, e2) in pairs {
            let (src, tgt) = (pos[&(s, e)], pos[&(t, e2)]);
            // a morphism is determined by its arrow and one endpoint
            let (anchor, label) = if contravariant { (tgt, e2) } else { (src, e) };
            let i = b.add_morphism(format!("({}, {label})", c.morphism_id(f)), src, tgt);
            if c.is_identity(f) {
                b.set_identity(src, i);
            }
            key.insert((f, anchor), i);
            mors.push((f, anchor));
        }
    }
    let category = Arc::new(
        b.build(|g, f| {
            let anchor = if contravariant { mors[g].1 } else { mors[f].1 };
            key.get(&(c.comp(mors[g].0, mors[f].0), anchor)).copied()
        })
        .expect("category of elements"),
    );
    let projection = Functor::new_unchecked(
        category.clone(),
        c.clone(),
        elements.iter().map(|e| e.0).collect(),
        mors.iter().map(|m| m.0).collect(),
    );
    Grothendieck {
        category,
        projection,
        elements,
    }
}
