//! Built-in documents addressable by name.

use std::sync::Arc;

use crate::delta::{
    delta_inclusion, delta_leq, delta_s_inclusion, delta_s_into_delta, delta_s_leq,
};
use crate::error::{Error, Result};
use crate::fincat::{concrete_category_with_maps, opposite, FinCategory, Functor, SetMap};
use crate::io::Document;
use crate::sset::SSet;
use crate::topology::{circle, projective_plane};

/// Largest `N` accepted by the simplex-category fixtures.
pub const MAX_DELTA: usize = 4;
/// Largest dimension accepted by the simplex fixtures.
pub const MAX_SIMPLEX: usize = 6;

/// Example names, one per family.
pub fn names() -> Vec<String> {
    let mut out = Vec::new();
    for n in 0..=2 {
        out.push(format!("delta_leq_{n}"));
        out.push(format!("delta_leq_{n}_op"));
        out.push(format!("delta_s_leq_{n}"));
        out.push(format!("delta_s_leq_{n}_op"));
        out.push(format!("incl_delta_s{n}_delta{n}"));
    }
    for (n, m) in [(0, 1), (1, 2), (0, 2)] {
        out.push(format!("incl_delta{n}_delta{m}"));
        out.push(format!("incl_delta{n}_delta{m}_op"));
        out.push(format!("incl_delta_s{n}_delta_s{m}"));
    }
    for n in 0..=3 {
        out.push(format!("standard_{n}"));
    }
    for n in 1..=3 {
        out.push(format!("boundary_{n}"));
    }
    for (n, k) in [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2), (3, 1)] {
        out.push(format!("horn_{n}_{k}"));
    }
    out.extend(
        [
            "circle",
            "rp2",
            "no-coequalizer",
            "no-coequalizer-reflexive",
            "no-coequalizer-uv",
        ]
        .map(String::from),
    );
    out
}

fn num(s: &str, max: usize) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok().filter(|&n| n <= max)
}

fn pair<'a>(s: &'a str, sep: &str) -> Option<(&'a str, &'a str)> {
    s.split_once(sep)
}

/// The fixture called `name`.
pub fn fixture(name: &str) -> Result<Document> {
    let unknown = || Error::UnknownFixture(name.to_string());
    let (base, op) = match name.strip_suffix("_op") {
        Some(b) => (b, true),
        None => (name, false),
    };
    let cat = |c: FinCategory| Document::Category(Arc::new(if op { opposite(&c) } else { c }));
    let fun = |f: Functor| Document::Functor(if op { f.opposite() } else { f });

    if let Some(n) = base.strip_prefix("delta_s_leq_") {
        return Ok(cat(delta_s_leq(num(n, MAX_DELTA).ok_or_else(unknown)?)));
    }
    if let Some(n) = base.strip_prefix("delta_leq_") {
        return Ok(cat(delta_leq(num(n, MAX_DELTA).ok_or_else(unknown)?)));
    }
    if let Some(rest) = base.strip_prefix("incl_delta_s") {
        let (n, rest) = pair(rest, "_delta").ok_or_else(unknown)?;
        let n = num(n, MAX_DELTA).ok_or_else(unknown)?;
        if let Some(m) = rest.strip_prefix("_s") {
            let m = num(m, MAX_DELTA).filter(|&m| m >= n).ok_or_else(unknown)?;
            return Ok(fun(delta_s_inclusion(n, m)));
        }
        num(rest, MAX_DELTA)
            .filter(|&m| m == n)
            .ok_or_else(unknown)?;
        return Ok(fun(delta_s_into_delta(n)));
    }
    if let Some(rest) = base.strip_prefix("incl_delta") {
        let (n, m) = pair(rest, "_delta").ok_or_else(unknown)?;
        let n = num(n, MAX_DELTA).ok_or_else(unknown)?;
        let m = num(m, MAX_DELTA).filter(|&m| m >= n).ok_or_else(unknown)?;
        return Ok(fun(delta_inclusion(n, m)));
    }
    if op {
        return Err(unknown());
    }
    if let Some(n) = name.strip_prefix("standard_") {
        return Ok(Document::SSet(SSet::standard(
            num(n, MAX_SIMPLEX).ok_or_else(unknown)?,
        )));
    }
    if let Some(n) = name.strip_prefix("boundary_") {
        let n = num(n, MAX_SIMPLEX).ok_or_else(unknown)?;
        return Ok(Document::SSet(SSet::boundary(n).map_err(|_| unknown())?));
    }
    if let Some(rest) = name.strip_prefix("horn_") {
        let (n, k) = pair(rest, "_").ok_or_else(unknown)?;
        let n = num(n, MAX_SIMPLEX).ok_or_else(unknown)?;
        let k = num(k, n).ok_or_else(unknown)?;
        return Ok(Document::SSet(SSet::horn(n, k).map_err(|_| unknown())?));
    }
    match name {
        "circle" => Ok(Document::SSet(circle())),
        "rp2" => Ok(Document::SSet(projective_plane())),
        "no-coequalizer" => Ok(Document::Category(no_coequalizer())),
        "no-coequalizer-reflexive" => Ok(Document::Functor(no_coequalizer_reflexive())),
        "no-coequalizer-uv" => Ok(Document::Functor(no_coequalizer_uv())),
        _ => Err(unknown()),
    }
}

// objects and generating maps of the no-coequalizer category
fn e_objects() -> Vec<(String, usize)> {
    [("a", 3), ("b", 2), ("c", 1), ("d", 3), ("e", 3)]
        .map(|(s, n)| (s.to_string(), n))
        .to_vec()
}

fn e_generators() -> Vec<SetMap> {
    vec![
        SetMap::new("f", 0, 1, vec![0, 1, 1]),
        SetMap::new("g", 0, 1, vec![0, 1, 0]),
        SetMap::new("s", 1, 0, vec![0, 1]),
        SetMap::new("r", 1, 2, vec![0, 0]),
        SetMap::new("u", 0, 3, vec![0, 1, 2]),
        SetMap::new("v", 0, 3, vec![1, 0, 2]),
        SetMap::new("q", 3, 4, vec![0, 1, 2]),
    ]
}

/// A category of finite sets with a reflexive pair `f, g : a → b`
/// (common section `s`) coequalized by `r : b → c`, and a pair
/// `u, v : a → d` with `q ∘ u ≠ q ∘ v` that nothing coequalizes.
pub fn no_coequalizer() -> Arc<FinCategory> {
    Arc::new(
        concrete_category_with_maps(&e_objects(), &e_generators(), 64)
            .expect("fixture")
            .0,
    )
}

// The subcategory generated by `gens` on the objects `keep`, mapped into the
// full category by matching underlying functions.
fn sub_diagram(keep: &[usize], gens: &[&str]) -> Functor {
    let objects = e_objects();
    let all = e_generators();
    let (big, big_maps) = concrete_category_with_maps(&objects, &all, 64).expect("fixture");
    let small_objects: Vec<(String, usize)> = keep.iter().map(|&o| objects[o].clone()).collect();
    let local = |o: usize| keep.iter().position(|&k| k == o).expect("kept object");
    let small_gens: Vec<SetMap> = all
        .iter()
        .filter(|m| gens.contains(&m.id.as_str()))
        .map(|m| {
            SetMap::new(
                m.id.clone(),
                local(m.source),
                local(m.target),
                m.values.clone(),
            )
        })
        .collect();
    let (small, small_maps) =
        concrete_category_with_maps(&small_objects, &small_gens, 64).expect("fixture");
    let morphism_map = small_maps
        .iter()
        .map(|m| {
            big_maps
                .iter()
                .position(|b| {
                    b.source == keep[m.source] && b.target == keep[m.target] && b.values == m.values
                })
                .expect("subcategory map")
        })
        .collect();
    Functor::new(Arc::new(small), Arc::new(big), keep.to_vec(), morphism_map)
        .expect("fixture functor")
}

/// The reflexive pair `f, g, s` as a diagram in [`no_coequalizer`].
pub fn no_coequalizer_reflexive() -> Functor {
    sub_diagram(&[0, 1], &["f", "g", "s"])
}

/// The parallel pair `u, v` as a diagram in [`no_coequalizer`].
pub fn no_coequalizer_uv() -> Functor {
    sub_diagram(&[0, 3], &["u", "v"])
}
