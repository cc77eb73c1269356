//! Subcategories of finite sets generated by explicit maps.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::fincat::category::{CategoryBuilder, FinCategory};

/// A generating map between two of the listed sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetMap {
    pub id: String,
    pub source: usize,
    pub target: usize,
    pub values: Vec<usize>,
}

impl SetMap {
    pub fn new(id: impl Into<String>, source: usize, target: usize, values: Vec<usize>) -> SetMap {
        SetMap {
            id: id.into(),
            source,
            target,
            values,
        }
    }
}

/// The smallest subcategory of finite sets containing the objects
/// `(id, cardinality)` and the generating maps. Morphisms are the distinct
/// maps between listed objects reachable by composition; identities are named
/// `id_<object>` and new composites `<g>.<f>`. Fails once more than
/// `max_morphisms` morphisms appear.
pub fn concrete_category(
    objects: &[(String, usize)],
    generators: &[SetMap],
    max_morphisms: usize,
) -> Result<FinCategory> {
    concrete_category_with_maps(objects, generators, max_morphisms).map(|(c, _)| c)
}

/// As [`concrete_category`], also returning the map realizing each morphism.
pub fn concrete_category_with_maps(
    objects: &[(String, usize)],
    generators: &[SetMap],
    max_morphisms: usize,
) -> Result<(FinCategory, Vec<SetMap>)> {
    let mut problems = Vec::new();
    for g in generators {
        if g.source >= objects.len() || g.target >= objects.len() {
            problems.push(format!("map `{}` has an endpoint out of range", g.id));
            continue;
        }
        if g.values.len() != objects[g.source].1 {
            problems.push(format!(
                "map `{}` has {} values, expected {}",
                g.id,
                g.values.len(),
                objects[g.source].1
            ));
        }
        if g.values.iter().any(|&v| v >= objects[g.target].1) {
            problems.push(format!("map `{}` leaves its target", g.id));
        }
    }
    if !problems.is_empty() {
        return Err(Error::InvalidCategory(problems));
    }

    let mut maps: Vec<SetMap> = Vec::new();
    let mut index: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    let mut add = |m: SetMap, maps: &mut Vec<SetMap>| -> Result<Option<usize>> {
        let key = (m.source, m.target, m.values.clone());
        if index.contains_key(&key) {
            return Ok(None);
        }
        if maps.len() == max_morphisms {
            return Err(Error::TooLarge {
                limit: max_morphisms,
            });
        }
        index.insert(key, maps.len());
        maps.push(m);
        Ok(Some(maps.len() - 1))
    };
    for (o, (id, n)) in objects.iter().enumerate() {
        add(
            SetMap::new(format!("id_{id}"), o, o, (0..*n).collect()),
            &mut maps,
        )?;
    }
    let mut queue: VecDeque<usize> = VecDeque::new();
    for g in generators {
        if let Some(i) = add(g.clone(), &mut maps)? {
            queue.push_back(i);
        }
    }
    // Every composite is a word in the generators, so closing under
    // pre- and post-composition with generators suffices.
    let gens: Vec<SetMap> = generators.to_vec();
    while let Some(i) = queue.pop_front() {
        let m = maps[i].clone();
        for g in &gens {
            if g.source == m.target {
                let values = m.values.iter().map(|&x| g.values[x]).collect();
                let c = SetMap::new(format!("{}.{}", g.id, m.id), m.source, g.target, values);
                if let Some(j) = add(c, &mut maps)? {
                    queue.push_back(j);
                }
            }
            if g.target == m.source {
                let values = g.values.iter().map(|&x| m.values[x]).collect();
                let c = SetMap::new(format!("{}.{}", m.id, g.id), g.source, m.target, values);
                if let Some(j) = add(c, &mut maps)? {
                    queue.push_back(j);
                }
            }
        }
    }

    let mut b = CategoryBuilder::new();
    for (id, _) in objects {
        b.add_object(id.clone());
    }
    for (i, m) in maps.iter().enumerate() {
        b.add_morphism(m.id.clone(), m.source, m.target);
        if i < objects.len() {
            b.set_identity(i, i);
        }
    }
    let c = b
        .build(|g, f| {
            let (mg, mf) = (&maps[g], &maps[f]);
            let values: Vec<usize> = mf.values.iter().map(|&x| mg.values[x]).collect();
            index.get(&(mf.source, mg.target, values)).copied()
        })?
        .checked()?;
    Ok((c, maps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn objs(v: &[(&str, usize)]) -> Vec<(String, usize)> {
        v.iter().map(|(s, n)| (s.to_string(), *n)).collect()
    }

    #[test]
    fn idempotent_monoid() {
        let c = concrete_category(
            &objs(&[("x", 2)]),
            &[SetMap::new("e", 0, 0, vec![0, 0])],
            10,
        )
        .unwrap();
        assert_eq!(c.morphism_count(), 2);
        let e = c.morphism("e").unwrap();
        assert_eq!(c.comp(e, e), e);
    }

    #[test]
    fn cyclic_group() {
        let c = concrete_category(
            &objs(&[("x", 3)]),
            &[SetMap::new("r", 0, 0, vec![1, 2, 0])],
            10,
        )
        .unwrap();
        assert_eq!(c.morphism_count(), 3);
        assert!(c.is_valid());
    }

    #[test]
    fn duplicate_maps_collapse() {
        let gens = [
            SetMap::new("f", 0, 1, vec![0]),
            SetMap::new("g", 0, 1, vec![0]),
        ];
        let c = concrete_category(&objs(&[("a", 1), ("b", 2)]), &gens, 10).unwrap();
        assert_eq!(c.morphism_count(), 3);
    }

    #[test]
    fn bound_is_enforced() {
        let gens = [SetMap::new("r", 0, 0, vec![1, 2, 3, 4, 0])];
        assert!(matches!(
            concrete_category(&objs(&[("x", 5)]), &gens, 3),
            Err(Error::TooLarge { limit: 3 })
        ));
    }

    #[test]
    fn bad_map_is_rejected() {
        let gens = [SetMap::new("f", 0, 1, vec![0, 5])];
        assert!(concrete_category(&objs(&[("a", 2), ("b", 2)]), &gens, 10).is_err());
    }
}
