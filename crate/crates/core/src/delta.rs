//! Arithmetic in the simplex category: monotone maps `[m] → [n]`, their
//! epi-mono factorization, and the truncated categories `Δ^{≤N}`, `Δ_s^{≤N}`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{CategoryBuilder, FinCategory, Functor};

/// A weakly increasing map `[m] → [n]`, stored as its value tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    target_rank: usize,
    values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(target_rank: usize, values: Vec<usize>) -> Result<MonotoneMap> {
        if values.is_empty() {
            return Err(Error::EmptyMap);
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NotMonotone(values));
        }
        if let Some(&v) = values.iter().find(|&&v| v > target_rank) {
            return Err(Error::ValueOutOfRange {
                value: v,
                target: target_rank,
            });
        }
        Ok(MonotoneMap {
            target_rank,
            values,
        })
    }

    pub(crate) fn new_unchecked(target_rank: usize, values: Vec<usize>) -> MonotoneMap {
        debug_assert!(MonotoneMap::new(target_rank, values.clone()).is_ok());
        MonotoneMap {
            target_rank,
            values,
        }
    }

    pub fn identity(n: usize) -> MonotoneMap {
        MonotoneMap {
            target_rank: n,
            values: (0..=n).collect(),
        }
    }

    /// The coface `d^i : [n-1] → [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> Result<MonotoneMap> {
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        Ok(MonotoneMap {
            target_rank: n,
            values: (0..=n).filter(|&v| v != i).collect(),
        })
    }

    /// The codegeneracy `s^i : [n+1] → [n]` hitting `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Result<MonotoneMap> {
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        Ok(MonotoneMap {
            target_rank: n,
            values: (0..=n + 1)
                .map(|v| if v <= i { v } else { v - 1 })
                .collect(),
        })
    }

    /// The vertex inclusion `[0] → [n]` at `i`.
    pub fn vertex(n: usize, i: usize) -> Result<MonotoneMap> {
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        Ok(MonotoneMap {
            target_rank: n,
            values: vec![i],
        })
    }

    pub fn source_rank(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.source_rank() == self.target_rank && self.is_injective()
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.target_rank
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &MonotoneMap) -> Result<MonotoneMap> {
        if f.target_rank != self.source_rank() {
            return Err(Error::RankMismatch {
                expected: self.source_rank(),
                found: f.target_rank,
            });
        }
        Ok(self.after(f))
    }

    /// `self ∘ f` for maps already known to be composable.
    pub(crate) fn after(&self, f: &MonotoneMap) -> MonotoneMap {
        MonotoneMap {
            target_rank: self.target_rank,
            values: f.values.iter().map(|&v| self.values[v]).collect(),
        }
    }

    /// Eilenberg–Zilber factorization `self = injection ∘ surjection`.
    pub fn ez_factor(&self) -> (MonotoneMap, MonotoneMap) {
        let mut image: Vec<usize> = Vec::with_capacity(self.values.len());
        let mut surj = Vec::with_capacity(self.values.len());
        for &v in &self.values {
            if image.last() != Some(&v) {
                image.push(v);
            }
            surj.push(image.len() - 1);
        }
        let k = image.len() - 1;
        (
            MonotoneMap {
                target_rank: k,
                values: surj,
            },
            MonotoneMap {
                target_rank: self.target_rank,
                values: image,
            },
        )
    }

    /// Reflection `i ↦ n - i` on both ends; the action of taking opposites.
    pub fn reversed(&self) -> MonotoneMap {
        let n = self.target_rank;
        MonotoneMap {
            target_rank: n,
            values: self.values.iter().rev().map(|&v| n - v).collect(),
        }
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}](", self.source_rank(), self.target_rank)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// All monotone maps `[m] → [n]` in lexicographic order of their values.
pub fn enumerate_monotone(m: usize, n: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut cur = vec![0; m + 1];
    loop {
        out.push(MonotoneMap {
            target_rank: n,
            values: cur.clone(),
        });
        // advance: rightmost position that can still grow
        let Some(i) = (0..=m).rev().find(|&i| cur[i] < n) else {
            return out;
        };
        let v = cur[i] + 1;
        for c in &mut cur[i..] {
            *c = v;
        }
    }
}

/// All monotone surjections `[m] ↠ [n]`.
pub fn enumerate_surjections(m: usize, n: usize) -> Vec<MonotoneMap> {
    if n > m {
        return Vec::new();
    }
    enumerate_monotone(m, n)
        .into_iter()
        .filter(|f| f.is_surjective())
        .collect()
}

/// All monotone injections `[m] ↣ [n]`.
pub fn enumerate_injections(m: usize, n: usize) -> Vec<MonotoneMap> {
    if m > n {
        return Vec::new();
    }
    enumerate_monotone(m, n)
        .into_iter()
        .filter(|f| f.is_injective())
        .collect()
}

pub fn object_id(n: usize) -> String {
    format!("[{n}]")
}

fn simplex_category(max: usize, injective_only: bool) -> FinCategory {
    let mut b = CategoryBuilder::new();
    for n in 0..=max {
        b.add_object(object_id(n));
    }
    let mut maps = Vec::new();
    let mut index = std::collections::HashMap::new();
    for m in 0..=max {
        for n in 0..=max {
            for f in enumerate_monotone(m, n) {
                if injective_only && !f.is_injective() {
                    continue;
                }
                let i = b.add_morphism(f.to_string(), m, n);
                if f.is_identity() {
                    b.set_identity(n, i);
                }
                index.insert(f.clone(), i);
                maps.push(f);
            }
        }
    }
    b.build(|g, f| index.get(&maps[g].after(&maps[f])).copied())
        .expect("simplex category")
}

/// `Δ^{≤N}`: objects `[0..N]`, all monotone maps.
pub fn delta_leq(max: usize) -> FinCategory {
    simplex_category(max, false)
}

/// `Δ_s^{≤N}`: objects `[0..N]`, injective monotone maps only.
pub fn delta_s_leq(max: usize) -> FinCategory {
    simplex_category(max, true)
}

/// Recovers the monotone map behind a morphism of `delta_leq`/`delta_s_leq`
/// (or their opposites), which are named by `MonotoneMap`'s display form.
pub fn parse_morphism_id(id: &str) -> Result<MonotoneMap> {
    let bad = || Error::parse(id, "not a simplex-category morphism id");
    let rest = id.strip_prefix('[').ok_or_else(bad)?;
    let (_m, rest) = rest.split_once("]->[").ok_or_else(bad)?;
    let (n, rest) = rest.split_once("](").ok_or_else(bad)?;
    let vals = rest.strip_suffix(')').ok_or_else(bad)?;
    let n: usize = n.parse().map_err(|_| bad())?;
    let values = vals
        .split(',')
        .map(|v| v.parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    MonotoneMap::new(n, values)
}

fn inclusion(small: FinCategory, large: FinCategory) -> Functor {
    let (small, large) = (Arc::new(small), Arc::new(large));
    let object_map = (0..small.object_count()).collect();
    let morphism_map = small
        .morphisms()
        .iter()
        .map(|m| {
            large
                .morphism(&m.id)
                .expect("inclusion of simplex categories")
        })
        .collect();
    Functor::new_unchecked(small, large, object_map, morphism_map)
}

/// `Δ^{≤n} ↪ Δ^{≤m}` for `n ≤ m`.
pub fn delta_inclusion(n: usize, m: usize) -> Functor {
    assert!(n <= m, "inclusion needs n <= m");
    inclusion(delta_leq(n), delta_leq(m))
}

/// `Δ_s^{≤n} ↪ Δ_s^{≤m}` for `n ≤ m`.
pub fn delta_s_inclusion(n: usize, m: usize) -> Functor {
    assert!(n <= m, "inclusion needs n <= m");
    inclusion(delta_s_leq(n), delta_s_leq(m))
}

/// `Δ_s^{≤n} ↪ Δ^{≤n}`.
pub fn delta_s_into_delta(n: usize) -> Functor {
    inclusion(delta_s_leq(n), delta_leq(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mm(n: usize, v: &[usize]) -> MonotoneMap {
        MonotoneMap::new(n, v.to_vec()).unwrap()
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn rejects_bad_values() {
        assert!(matches!(
            MonotoneMap::new(2, vec![1, 0]),
            Err(Error::NotMonotone(_))
        ));
        assert!(matches!(
            MonotoneMap::new(1, vec![0, 2]),
            Err(Error::ValueOutOfRange {
                value: 2,
                target: 1
            })
        ));
        assert_eq!(MonotoneMap::new(1, vec![]), Err(Error::EmptyMap));
    }

    #[test]
    fn cosimplicial_identity() {
        let s0 = MonotoneMap::codegeneracy(0, 0).unwrap();
        let d0 = MonotoneMap::coface(1, 0).unwrap();
        assert_eq!(s0.compose(&d0).unwrap(), MonotoneMap::identity(0));
    }

    #[test]
    fn identity_law() {
        let f = mm(3, &[0, 2, 2]);
        assert_eq!(MonotoneMap::identity(3).compose(&f).unwrap(), f);
        assert_eq!(f.compose(&MonotoneMap::identity(2)).unwrap(), f);
    }

    #[test]
    fn composite_of_cofaces() {
        let d2 = MonotoneMap::coface(3, 2).unwrap();
        let d0 = MonotoneMap::coface(2, 0).unwrap();
        // pointwise: d0 = (1,2), then d2 sends 1 -> 1, 2 -> 3
        assert_eq!(d2.compose(&d0).unwrap(), mm(3, &[1, 3]));
    }

    #[test]
    fn compose_rank_mismatch() {
        let f = mm(2, &[0, 1]);
        let g = mm(1, &[0, 1]);
        assert_eq!(
            g.compose(&f),
            Err(Error::RankMismatch {
                expected: 1,
                found: 2
            })
        );
    }

    #[test]
    fn ez_examples() {
        let f = mm(3, &[0, 2]);
        assert_eq!(f.ez_factor(), (MonotoneMap::identity(1), f.clone()));
        let s0 = MonotoneMap::codegeneracy(0, 0).unwrap();
        assert_eq!(s0.ez_factor(), (s0.clone(), MonotoneMap::identity(0)));
        let g = mm(2, &[0, 0, 2]);
        assert_eq!(g.ez_factor(), (mm(1, &[0, 0, 1]), mm(2, &[0, 2])));
    }

    #[test]
    fn ez_uniqueness_exhaustive() {
        // Brute force: count every (surjection, injection) pair multiplying to f.
        for m in 0..=4 {
            for n in 0..=4 {
                for f in enumerate_monotone(m, n) {
                    let mut hits = 0;
                    for k in 0..=m.min(n) {
                        for s in enumerate_surjections(m, k) {
                            for i in enumerate_injections(k, n) {
                                if i.compose(&s).unwrap() == f {
                                    hits += 1;
                                }
                            }
                        }
                    }
                    assert_eq!(hits, 1, "{f}");
                    let (s, i) = f.ez_factor();
                    assert!(s.is_surjective() && i.is_injective());
                    assert_eq!(i.compose(&s).unwrap(), f);
                }
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_monotone(0, 0).len(), 1);
        assert_eq!(
            enumerate_monotone(1, 1),
            vec![mm(1, &[0, 0]), mm(1, &[0, 1]), mm(1, &[1, 1])]
        );
        assert_eq!(enumerate_monotone(0, 2).len(), 3);
        for m in 0..=5 {
            for n in 0..=5 {
                assert_eq!(enumerate_monotone(m, n).len(), binomial(m + n + 1, m + 1));
            }
        }
    }

    #[test]
    fn truncated_simplex_categories() {
        let d0 = delta_leq(0);
        assert_eq!((d0.object_count(), d0.morphism_count()), (1, 1));
        let d1 = delta_leq(1);
        let hom = |c: &FinCategory, a: usize, b: usize| c.hom(a, b).count();
        assert_eq!(
            [
                hom(&d1, 0, 0),
                hom(&d1, 0, 1),
                hom(&d1, 1, 0),
                hom(&d1, 1, 1)
            ],
            [1, 2, 1, 3]
        );
        let s1 = delta_s_leq(1);
        assert_eq!(
            [
                hom(&s1, 0, 0),
                hom(&s1, 0, 1),
                hom(&s1, 1, 0),
                hom(&s1, 1, 1)
            ],
            [1, 2, 0, 1]
        );
        for n in 0..=4 {
            assert!(delta_leq(n).is_valid());
            assert!(delta_s_leq(n).is_valid());
        }
    }

    #[test]
    fn inclusions_are_functors() {
        assert!(delta_inclusion(1, 3).is_valid());
        assert!(delta_s_inclusion(0, 2).is_valid());
        assert!(delta_s_into_delta(2).is_valid());
    }

    #[test]
    fn morphism_ids_round_trip() {
        for f in enumerate_monotone(2, 3) {
            assert_eq!(parse_morphism_id(&f.to_string()).unwrap(), f);
        }
    }
}
