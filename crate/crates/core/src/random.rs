//! Seeded generators for categories, functors, diagrams and simplicial sets.
//!
//! Every generator takes the caller's RNG, so a fixed seed reproduces a
//! whole suite.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::{corepresentable_along, SSetDiagram, SetDiagram};
use crate::fincat::{concrete_category, enumerate_functors, nerve, FinCategory, Functor, SetMap};
use crate::sset::{SSet, Simplex};

pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream number `i` under `seed`, so that instances can be
/// generated in any order.
pub fn derived_rng(seed: u64, i: usize) -> Rand {
    rng(seed ^ (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// A category of finite sets of size at most 3 generated by up to
/// `max_objects + 1` random maps, with at least one object. Generators are
/// dropped from the end until at most `max_morphisms` morphisms remain.
pub fn random_category(rng: &mut Rand, max_objects: usize, max_morphisms: usize) -> FinCategory {
    assert!(max_objects >= 1 && max_morphisms >= max_objects);
    let k = rng.gen_range(1..=max_objects);
    let objects: Vec<(String, usize)> = (0..k)
        .map(|i| (((b'a' + i as u8) as char).to_string(), rng.gen_range(1..=3)))
        .collect();
    let g = rng.gen_range(0..=k + 1);
    let mut gens: Vec<SetMap> = (0..g)
        .map(|i| {
            let (s, t) = (rng.gen_range(0..k), rng.gen_range(0..k));
            let values = (0..objects[s].1)
                .map(|_| rng.gen_range(0..objects[t].1))
                .collect();
            SetMap::new(format!("f{i}"), s, t, values)
        })
        .collect();
    loop {
        if let Ok(c) = concrete_category(&objects, &gens, max_morphisms) {
            return c;
        }
        gens.pop();
    }
}

/// A uniformly chosen functor among the first 512 in enumeration order.
pub fn random_functor(
    rng: &mut Rand,
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
) -> Option<Functor> {
    let all = enumerate_functors(c, d, 512);
    all.choose(rng).cloned()
}

/// A random diagram with sets of size at most `max_size`: a quotient of a
/// coproduct of up to three corepresentables and points.
pub fn random_set_diagram(rng: &mut Rand, shape: &Arc<FinCategory>, max_size: usize) -> SetDiagram {
    let n = shape.object_count();
    let id = Functor::identity(shape);
    let mut d = SetDiagram::constant(shape, 0);
    if n == 0 {
        return d;
    }
    for _ in 0..rng.gen_range(0..=3) {
        let summand = if rng.gen_bool(0.2) {
            SetDiagram::constant(shape, 1)
        } else {
            corepresentable_along(&id, rng.gen_range(0..n))
        };
        d = d.coproduct(&summand).expect("same shape");
    }
    for _ in 0..rng.gen_range(0..=2) {
        d = random_merge(rng, &d, None).unwrap_or(d);
    }
    loop {
        let big: Vec<usize> = (0..n).filter(|&o| d.size(o) > max_size).collect();
        let Some(&o) = big.first() else {
            return d;
        };
        d = random_merge(rng, &d, Some(o)).expect("set with two elements");
    }
}

fn random_merge(rng: &mut Rand, d: &SetDiagram, at: Option<usize>) -> Option<SetDiagram> {
    let o = match at {
        Some(o) => o,
        None => {
            let multi: Vec<usize> = (0..d.sizes().len()).filter(|&o| d.size(o) >= 2).collect();
            *multi.choose(rng)?
        }
    };
    let k = d.size(o);
    if k < 2 {
        return None;
    }
    let x = rng.gen_range(0..k);
    let mut y = rng.gen_range(0..k - 1);
    if y >= x {
        y += 1;
    }
    Some(d.quotient(o, x, y))
}

/// A random ordered simplicial complex on at most `max_vertices` vertices
/// with facets of dimension at most `max_dim`, truncated at `truncation`.
pub fn random_complex(
    rng: &mut Rand,
    max_vertices: usize,
    max_facets: usize,
    max_dim: usize,
    truncation: usize,
) -> SSet {
    let v = rng.gen_range(1..=max_vertices.max(1));
    let f = rng.gen_range(1..=max_facets.max(1));
    let mut facets: Vec<Vec<usize>> = (0..f)
        .map(|_| {
            let size = rng.gen_range(1..=(max_dim + 1).min(v));
            let mut all: Vec<usize> = (0..v).collect();
            all.shuffle(rng);
            all.truncate(size);
            all
        })
        .collect();
    // isolated vertices
    for i in 0..v {
        if rng.gen_bool(0.1) {
            facets.push(vec![i]);
        }
    }
    SSet::from_simplicial_complex(&facets, truncation.max(max_dim))
        .expect("facets within truncation")
}

fn nondegenerate_total(s: &SSet, up_to: usize) -> usize {
    (0..=up_to.min(s.truncation()))
        .map(|k| s.generator_count(k))
        .sum()
}

/// A random 2-truncated simplicial set with at most `max_simplices`
/// nondegenerate simplices: either a simplicial complex or the nerve of a
/// small random category.
pub fn random_sset(rng: &mut Rand, max_simplices: usize) -> SSet {
    loop {
        let s = if rng.gen_bool(0.5) {
            random_complex(rng, 4, 3, 2, 2)
        } else {
            let c = Arc::new(random_category(rng, 3, 5));
            nerve(&c, 2).sset
        };
        if nondegenerate_total(&s, 2) <= max_simplices {
            return s;
        }
    }
}

/// A random diagram on a random base with at most `max_simplices`
/// nondegenerate simplices and value sets of size at most `max_size`.
pub fn random_sset_diagram(rng: &mut Rand, max_simplices: usize, max_size: usize) -> SSetDiagram {
    loop {
        if rng.gen_bool(0.5) {
            let s = random_complex(rng, 4, 3, 2, 2);
            if nondegenerate_total(&s, 2) <= max_simplices {
                return solve_on_complex(rng, s, max_size);
            }
        } else {
            let c = Arc::new(random_category(rng, 3, 5));
            let nv = nerve(&c, 2);
            if nondegenerate_total(&nv.sset, 2) <= max_simplices {
                let f = random_set_diagram(rng, &c, max_size);
                return SSetDiagram::from_nerve(&nv, &f).expect("diagram on the nerve's category");
            }
        }
    }
}

// Assigns edges by increasing vertex distance, deriving the long edge of a
// triangle from its two short edges whenever both are known.
fn solve_on_complex(rng: &mut Rand, s: SSet, max_size: usize) -> SSetDiagram {
    let nv = s.vertex_count();
    let ne = s.generator_count(1);
    let mut order: Vec<usize> = (0..ne).collect();
    order.sort_by_key(|&e| {
        let (a, b) = s.endpoints(&Simplex::nondegenerate(1, e));
        (b.abs_diff(a), e)
    });
    let triangles: Vec<[Simplex; 3]> = if s.truncation() >= 2 {
        s.nondegenerate(2)
            .iter()
            .map(|t| [0, 1, 2].map(|i| s.face(t, i).unwrap()))
            .collect()
    } else {
        Vec::new()
    };
    for _ in 0..8 {
        let mut sizes: Vec<usize> = (0..nv).map(|_| rng.gen_range(0..=max_size)).collect();
        // a nonempty set cannot map to an empty one
        let mut changed = true;
        while changed {
            changed = false;
            for e in 0..ne {
                let (a, b) = s.endpoints(&Simplex::nondegenerate(1, e));
                if sizes[a] > 0 && sizes[b] == 0 {
                    sizes[b] = 1;
                    changed = true;
                }
            }
        }
        let mut actions: Vec<Option<Vec<usize>>> = vec![None; ne];
        for &e in &order {
            let derived = triangles.iter().find_map(|[d0, d1, d2]| {
                if d1.is_degenerate() || d1.gen != e || d0.is_degenerate() || d2.is_degenerate() {
                    return None;
                }
                let first = actions[d2.gen].as_ref()?;
                let second = actions[d0.gen].as_ref()?;
                Some(first.iter().map(|&x| second[x]).collect::<Vec<usize>>())
            });
            let act = derived.unwrap_or_else(|| {
                let (a, b) = s.endpoints(&Simplex::nondegenerate(1, e));
                (0..sizes[a]).map(|_| rng.gen_range(0..sizes[b])).collect()
            });
            actions[e] = Some(act);
        }
        let actions: Vec<Vec<usize>> = actions.into_iter().map(Option::unwrap).collect();
        if let Ok(d) = SSetDiagram::new(s.clone(), sizes, actions) {
            return d;
        }
    }
    let k = rng.gen_range(0..=max_size);
    SSetDiagram::constant(&s, k)
}
