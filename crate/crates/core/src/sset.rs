//! Finite truncated simplicial sets stored in Eilenberg–Zilber normal form.
//!
//! Only nondegenerate simplices are stored. Each nondegenerate `k`-simplex
//! records its `k + 1` faces as `(surjection, nondegenerate generator)` pairs;
//! every other simplex is produced on demand as such a pair. The truncation
//! level is explicit: operations that would need a dimension above it fail.

use std::collections::HashMap;
use std::fmt;

use crate::delta::{enumerate_surjections, MonotoneMap};
use crate::error::{Error, Result};

/// A simplex `s^*(x)`: a degeneracy operator applied to a nondegenerate
/// generator. `op` is a surjection `[dim] ↠ [level of gen]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub op: MonotoneMap,
    pub gen: usize,
}

impl Simplex {
    pub fn nondegenerate(level: usize, gen: usize) -> Simplex {
        Simplex {
            op: MonotoneMap::identity(level),
            gen,
        }
    }

    pub fn dim(&self) -> usize {
        self.op.source_rank()
    }

    /// Dimension of the underlying generator.
    pub fn level(&self) -> usize {
        self.op.target_rank()
    }

    pub fn is_degenerate(&self) -> bool {
        self.dim() != self.level()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: String,
    pub faces: Vec<Simplex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSet {
    truncation: usize,
    levels: Vec<Vec<Generator>>,
    index: Vec<HashMap<String, usize>>,
}

/// Incremental construction; `build` validates.
#[derive(Clone, Debug)]
pub struct SSetBuilder {
    truncation: usize,
    levels: Vec<Vec<Generator>>,
}

impl SSetBuilder {
    pub fn new(truncation: usize) -> Self {
        SSetBuilder {
            truncation,
            levels: vec![Vec::new(); truncation + 1],
        }
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> usize {
        self.levels[0].push(Generator {
            id: id.into(),
            faces: Vec::new(),
        });
        self.levels[0].len() - 1
    }

    /// Adds a nondegenerate `k`-simplex with the given `k + 1` faces
    /// (`faces[i]` is `d_i`). Returns its index within level `k`.
    pub fn add_simplex(&mut self, id: impl Into<String>, faces: Vec<Simplex>) -> Result<usize> {
        let k = faces.len().saturating_sub(1);
        if faces.len() < 2 {
            return Err(Error::InvalidSSet(vec![
                "a positive-dimensional simplex needs at least two faces".into(),
            ]));
        }
        if k > self.truncation {
            return Err(Error::TruncationExceeded {
                requested: k,
                truncation: self.truncation,
            });
        }
        self.levels[k].push(Generator {
            id: id.into(),
            faces,
        });
        Ok(self.levels[k].len() - 1)
    }

    pub fn count(&self, k: usize) -> usize {
        self.levels.get(k).map_or(0, |l| l.len())
    }

    pub fn build(self) -> Result<SSet> {
        let s = SSet::from_levels(self.truncation, self.levels)?;
        let v = s.validate();
        if v.is_empty() {
            Ok(s)
        } else {
            Err(Error::InvalidSSet(v))
        }
    }
}

impl SSet {
    fn from_levels(truncation: usize, levels: Vec<Vec<Generator>>) -> Result<SSet> {
        let mut index = Vec::with_capacity(levels.len());
        let mut dups = Vec::new();
        for level in &levels {
            let mut m = HashMap::with_capacity(level.len());
            for (i, g) in level.iter().enumerate() {
                if m.insert(g.id.clone(), i).is_some() {
                    dups.push(format!("duplicate simplex id `{}`", g.id));
                }
            }
            index.push(m);
        }
        if !dups.is_empty() {
            return Err(Error::InvalidSSet(dups));
        }
        Ok(SSet {
            truncation,
            levels,
            index,
        })
    }

    /// Builds directly from levels, checking structure and simplicial identities.
    pub fn new(truncation: usize, levels: Vec<Vec<Generator>>) -> Result<SSet> {
        if levels.len() != truncation + 1 {
            return Err(Error::InvalidSSet(vec![format!(
                "expected {} levels, found {}",
                truncation + 1,
                levels.len()
            )]));
        }
        let s = SSet::from_levels(truncation, levels)?;
        let v = s.validate();
        if v.is_empty() {
            Ok(s)
        } else {
            Err(Error::InvalidSSet(v))
        }
    }

    pub fn empty(truncation: usize) -> SSet {
        SSet::from_levels(truncation, vec![Vec::new(); truncation + 1]).expect("empty")
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn generators(&self, k: usize) -> &[Generator] {
        self.levels.get(k).map_or(&[], |l| l.as_slice())
    }

    pub fn generator_count(&self, k: usize) -> usize {
        self.generators(k).len()
    }

    pub fn generator_id(&self, k: usize, g: usize) -> &str {
        &self.levels[k][g].id
    }

    pub fn generator(&self, k: usize, id: &str) -> Result<usize> {
        self.index
            .get(k)
            .and_then(|m| m.get(id))
            .copied()
            .ok_or_else(|| Error::UnknownSimplex(id.to_string()))
    }

    pub fn is_empty(&self) -> bool {
        self.levels[0].is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.levels[0].len()
    }

    /// Highest dimension carrying a nondegenerate simplex.
    pub fn dimension(&self) -> Option<usize> {
        (0..=self.truncation)
            .rev()
            .find(|&k| !self.levels[k].is_empty())
    }

    /// Nondegenerate `k`-simplices as `Simplex` values.
    pub fn nondegenerate(&self, k: usize) -> Vec<Simplex> {
        (0..self.generator_count(k))
            .map(|g| Simplex::nondegenerate(k, g))
            .collect()
    }

    /// Readable name of any simplex.
    pub fn simplex_name(&self, s: &Simplex) -> String {
        let id = &self.levels[s.level()][s.gen].id;
        if s.is_degenerate() {
            let vals: Vec<String> = s.op.values().iter().map(|v| v.to_string()).collect();
            format!("s[{}]({})", vals.join(","), id)
        } else {
            id.clone()
        }
    }

    fn check_dim(&self, k: usize) -> Result<()> {
        if k > self.truncation {
            Err(Error::TruncationExceeded {
                requested: k,
                truncation: self.truncation,
            })
        } else {
            Ok(())
        }
    }

    /// Every simplex of dimension `k`, degenerate ones included, ordered by
    /// generator level, then surjection, then generator.
    pub fn all_simplices(&self, k: usize) -> Result<Vec<Simplex>> {
        self.check_dim(k)?;
        let mut out = Vec::new();
        for j in 0..=k {
            let gens = self.generator_count(j);
            if gens == 0 {
                continue;
            }
            for s in enumerate_surjections(k, j) {
                for g in 0..gens {
                    out.push(Simplex {
                        op: s.clone(),
                        gen: g,
                    });
                }
            }
        }
        Ok(out)
    }

    pub fn simplex_count(&self, k: usize) -> Result<usize> {
        self.check_dim(k)?;
        Ok((0..=k)
            .map(|j| enumerate_surjections(k, j).len() * self.generator_count(j))
            .sum())
    }

    /// `α^* σ` for `α : [m] → [dim σ]`.
    pub fn restrict(&self, s: &Simplex, alpha: &MonotoneMap) -> Simplex {
        assert_eq!(
            alpha.target_rank(),
            s.dim(),
            "restriction along a mistyped map"
        );
        let (eps, eta) = s.op.after(alpha).ez_factor();
        let inner = self.restrict_generator(s.level(), s.gen, &eta);
        Simplex {
            op: inner.op.after(&eps),
            gen: inner.gen,
        }
    }

    // `x ∘ η` for a nondegenerate `x` at `level` and an injection `η`.
    fn restrict_generator(&self, level: usize, gen: usize, eta: &MonotoneMap) -> Simplex {
        if eta.source_rank() == level {
            return Simplex::nondegenerate(level, gen);
        }
        let vals = eta.values();
        let missing = (0..=level)
            .find(|v| vals.binary_search(v).is_err())
            .expect("a proper injection misses a vertex");
        let rest = MonotoneMap::new_unchecked(
            level - 1,
            vals.iter()
                .map(|&v| if v < missing { v } else { v - 1 })
                .collect(),
        );
        let face = &self.levels[level][gen].faces[missing];
        self.restrict(face, &rest)
    }

    /// `d_i σ`.
    pub fn face(&self, s: &Simplex, i: usize) -> Result<Simplex> {
        let n = s.dim();
        if n == 0 {
            return Err(Error::IndexOutOfRange { index: i, bound: 0 });
        }
        Ok(self.restrict(s, &MonotoneMap::coface(n, i)?))
    }

    /// `s_i σ`.
    pub fn degeneracy(&self, s: &Simplex, i: usize) -> Result<Simplex> {
        let n = s.dim();
        self.check_dim(n + 1)?;
        let sig = MonotoneMap::codegeneracy(n, i)?;
        Ok(Simplex {
            op: s.op.after(&sig),
            gen: s.gen,
        })
    }

    /// `σ(i) = d_0 ∘ ⋯ ∘ \hat{d_i} ∘ ⋯ ∘ d_n (σ)`, returned as a vertex index.
    pub fn vertex(&self, s: &Simplex, i: usize) -> Result<usize> {
        let n = s.dim();
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        let mut cur = s.clone();
        for j in (i + 1..=n).rev() {
            cur = self.face(&cur, j)?;
        }
        for _ in 0..i {
            cur = self.face(&cur, 0)?;
        }
        debug_assert_eq!(cur.dim(), 0);
        Ok(cur.gen)
    }

    /// The vertex as the image of the inclusion `[0] → [n]` at `i`.
    pub fn vertex_via_map(&self, s: &Simplex, i: usize) -> Result<usize> {
        let alpha = MonotoneMap::vertex(s.dim(), i)?;
        Ok(self.restrict(s, &alpha).gen)
    }

    /// Source and target vertices of a 1-simplex.
    pub fn endpoints(&self, s: &Simplex) -> (usize, usize) {
        (
            self.vertex_via_map(s, 0).unwrap(),
            self.vertex_via_map(s, 1).unwrap(),
        )
    }

    /// Structural problems plus `d_i d_j = d_{j-1} d_i` on every generator.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.levels.len() != self.truncation + 1 {
            out.push("level count does not match truncation".into());
            return out;
        }
        for (k, level) in self.levels.iter().enumerate() {
            for g in level {
                if k == 0 {
                    if !g.faces.is_empty() {
                        out.push(format!("vertex `{}` has faces", g.id));
                    }
                    continue;
                }
                if g.faces.len() != k + 1 {
                    out.push(format!(
                        "`{}` has {} faces, expected {}",
                        g.id,
                        g.faces.len(),
                        k + 1
                    ));
                    continue;
                }
                for (i, f) in g.faces.iter().enumerate() {
                    if f.dim() != k - 1 || !f.op.is_surjective() {
                        out.push(format!("face {i} of `{}` has a malformed operator", g.id));
                    } else if f.gen >= self.generator_count(f.level()) {
                        out.push(format!("face {i} of `{}` names a missing generator", g.id));
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for k in 2..=self.truncation {
            for (g, gen) in self.levels[k].iter().enumerate() {
                let s = Simplex::nondegenerate(k, g);
                for j in 1..=k {
                    for i in 0..j {
                        let a = self.face(&self.face(&s, j).unwrap(), i).unwrap();
                        let b = self.face(&self.face(&s, i).unwrap(), j - 1).unwrap();
                        if a != b {
                            out.push(format!("d_{i} d_{j} != d_{} d_{i} on `{}`", j - 1, gen.id));
                        }
                    }
                }
            }
        }
        out
    }

    /// All simplicial identities on the fully expanded structure up to the
    /// truncation level.
    pub fn check_simplicial_identities(&self) -> Vec<String> {
        let mut out = Vec::new();
        for n in 0..=self.truncation {
            for s in self.all_simplices(n).unwrap() {
                let name = self.simplex_name(&s);
                if n >= 2 {
                    for j in 1..=n {
                        for i in 0..j {
                            let a = self.face(&self.face(&s, j).unwrap(), i).unwrap();
                            let b = self.face(&self.face(&s, i).unwrap(), j - 1).unwrap();
                            if a != b {
                                out.push(format!("d{i}d{j} on {name}"));
                            }
                        }
                    }
                }
                if n < self.truncation {
                    for j in 0..=n {
                        let sj = self.degeneracy(&s, j).unwrap();
                        for i in 0..=n + 1 {
                            let lhs = self.face(&sj, i).unwrap();
                            let rhs = if i < j {
                                if n == 0 {
                                    continue;
                                }
                                self.degeneracy(&self.face(&s, i).unwrap(), j - 1).unwrap()
                            } else if i == j || i == j + 1 {
                                s.clone()
                            } else {
                                if n == 0 {
                                    continue;
                                }
                                self.degeneracy(&self.face(&s, i - 1).unwrap(), j).unwrap()
                            };
                            if lhs != rhs {
                                out.push(format!("d{i}s{j} on {name}"));
                            }
                        }
                    }
                }
                if n + 2 <= self.truncation {
                    for j in 0..=n {
                        for i in 0..=j {
                            let a = self
                                .degeneracy(&self.degeneracy(&s, j).unwrap(), i)
                                .unwrap();
                            let b = self
                                .degeneracy(&self.degeneracy(&s, i).unwrap(), j + 1)
                                .unwrap();
                            if a != b {
                                out.push(format!("s{i}s{j} on {name}"));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Same simplicial set with a higher truncation level and no new
    /// nondegenerate simplices.
    pub fn extend_truncation(&self, truncation: usize) -> SSet {
        let mut levels = self.levels.clone();
        levels.truncate(truncation + 1);
        while levels.len() < truncation + 1 {
            levels.push(Vec::new());
        }
        SSet::from_levels(truncation, levels).expect("ids unchanged")
    }

    /// Drops every nondegenerate simplex above dimension `k`; the truncation
    /// level is kept.
    pub fn skeleton(&self, k: usize) -> SSet {
        let levels = self
            .levels
            .iter()
            .enumerate()
            .map(|(j, l)| if j <= k { l.clone() } else { Vec::new() })
            .collect();
        SSet::from_levels(self.truncation, levels).expect("ids unchanged")
    }

    /// Reverses vertex order: `d_i ↦ d_{n-i}`, `s_i ↦ s_{n-i}`.
    pub fn opposite(&self) -> SSet {
        let levels = self
            .levels
            .iter()
            .map(|l| {
                l.iter()
                    .map(|g| Generator {
                        id: g.id.clone(),
                        faces: g
                            .faces
                            .iter()
                            .rev()
                            .map(|f| Simplex {
                                op: f.op.reversed(),
                                gen: f.gen,
                            })
                            .collect(),
                    })
                    .collect()
            })
            .collect();
        SSet::from_levels(self.truncation, levels).expect("ids unchanged")
    }

    /// `S × T` up to `dim_bound`; nondegenerate simplices are the pairs with
    /// no common degeneracy direction.
    pub fn product(&self, other: &SSet, dim_bound: usize) -> Result<SSet> {
        self.check_dim(dim_bound)?;
        other.check_dim(dim_bound)?;
        let mut levels: Vec<Vec<Generator>> = vec![Vec::new(); dim_bound + 1];
        let mut lookup: HashMap<(Simplex, Simplex), usize> = HashMap::new();
        for k in 0..=dim_bound {
            let left = self.all_simplices(k)?;
            let right = other.all_simplices(k)?;
            for a in &left {
                for b in &right {
                    if !jointly_nondegenerate(&a.op, &b.op) {
                        continue;
                    }
                    let faces = if k == 0 {
                        Vec::new()
                    } else {
                        (0..=k)
                            .map(|i| {
                                let fa = self.face(a, i).unwrap();
                                let fb = other.face(b, i).unwrap();
                                let (eps, na, nb) = pair_normal_form(&fa, &fb);
                                let g = lookup[&(na, nb)];
                                Simplex { op: eps, gen: g }
                            })
                            .collect()
                    };
                    let id = format!("({},{})", self.simplex_name(a), other.simplex_name(b));
                    lookup.insert((a.clone(), b.clone()), levels[k].len());
                    levels[k].push(Generator { id, faces });
                }
            }
        }
        SSet::from_levels(dim_bound, levels)
    }

    /// Standard simplex `Δ^n`, truncated at `n`.
    pub fn standard(n: usize) -> SSet {
        from_faces_of(n, |_| true)
    }

    /// `∂Δ^n` (`n ≥ 1`), truncated at `n`.
    pub fn boundary(n: usize) -> Result<SSet> {
        if n == 0 {
            return Err(Error::IndexOutOfRange { index: 0, bound: 0 });
        }
        Ok(from_faces_of(n, move |t| t.len() <= n))
    }

    /// Horn `Λ^n_k`: the boundary minus the face opposite vertex `k`.
    pub fn horn(n: usize, k: usize) -> Result<SSet> {
        if n == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, bound: n });
        }
        Ok(from_faces_of(n, move |t| {
            t.len() <= n && !(t.len() == n && !t.contains(&k))
        }))
    }

    /// The nerve-style simplicial set of an ordered simplicial complex: every
    /// subset of a facet becomes a nondegenerate simplex with vertices in
    /// increasing order. Ids are the vertex tuples `(v0,v1,…)`.
    pub fn from_simplicial_complex(facets: &[Vec<usize>], truncation: usize) -> Result<SSet> {
        let mut simplices: Vec<std::collections::BTreeSet<Vec<usize>>> =
            vec![Default::default(); truncation + 1];
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            let k = f.len();
            if k == 0 {
                continue;
            }
            if k - 1 > truncation {
                return Err(Error::TruncationExceeded {
                    requested: k - 1,
                    truncation,
                });
            }
            for mask in 1u64..(1u64 << k) {
                let sub: Vec<usize> = (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| f[i])
                    .collect();
                simplices[sub.len() - 1].insert(sub);
            }
        }
        let mut b = SSetBuilder::new(truncation);
        let mut idx: Vec<HashMap<Vec<usize>, usize>> = vec![HashMap::new(); truncation + 1];
        for (k, level) in simplices.iter().enumerate() {
            for t in level {
                let i = if k == 0 {
                    b.add_vertex(tuple_id(t))
                } else {
                    let faces = (0..=k)
                        .map(|i| {
                            let mut f = t.clone();
                            f.remove(i);
                            Simplex::nondegenerate(k - 1, idx[k - 1][&f])
                        })
                        .collect();
                    b.add_simplex(tuple_id(t), faces)?
                };
                idx[k].insert(t.clone(), i);
            }
        }
        b.build()
    }
}

fn tuple_id(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

fn from_faces_of(n: usize, keep: impl Fn(&[usize]) -> bool) -> SSet {
    let full: Vec<usize> = (0..=n).collect();
    let mut facets = Vec::new();
    for mask in 1u64..(1u64 << (n + 1)) {
        let t: Vec<usize> = full
            .iter()
            .copied()
            .filter(|&i| mask >> i & 1 == 1)
            .collect();
        if keep(&t) {
            facets.push(t);
        }
    }
    SSet::from_simplicial_complex(&facets, n).expect("subcomplex of a simplex")
}

fn jointly_nondegenerate(a: &MonotoneMap, b: &MonotoneMap) -> bool {
    (0..a.source_rank()).all(|i| a.apply(i) != a.apply(i + 1) || b.apply(i) != b.apply(i + 1))
}

// EZ form of a pair of simplices of equal dimension: the common degeneracy
// `eps` and the jointly nondegenerate pair it comes from.
fn pair_normal_form(a: &Simplex, b: &Simplex) -> (MonotoneMap, Simplex, Simplex) {
    let n = a.dim();
    let mut eps = Vec::with_capacity(n + 1);
    let mut cur = 0;
    eps.push(0);
    for i in 0..n {
        let collapse = a.op.apply(i) == a.op.apply(i + 1) && b.op.apply(i) == b.op.apply(i + 1);
        if !collapse {
            cur += 1;
        }
        eps.push(cur);
    }
    let l = cur;
    let mut va = vec![0; l + 1];
    let mut vb = vec![0; l + 1];
    for i in 0..=n {
        va[eps[i]] = a.op.apply(i);
        vb[eps[i]] = b.op.apply(i);
    }
    (
        MonotoneMap::new_unchecked(l, eps),
        Simplex {
            op: MonotoneMap::new_unchecked(a.level(), va),
            gen: a.gen,
        },
        Simplex {
            op: MonotoneMap::new_unchecked(b.level(), vb),
            gen: b.gen,
        },
    )
}

impl fmt::Display for SSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = self.levels.iter().map(|l| l.len().to_string()).collect();
        write!(
            f,
            "SSet(truncation {}, nondegenerate {})",
            self.truncation,
            counts.join("/")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn standard_counts() {
        let s = SSet::standard(3);
        for k in 0..=3 {
            assert_eq!(s.generator_count(k), binomial(4, k + 1));
        }
        assert!(s.check_simplicial_identities().is_empty());
    }

    #[test]
    fn boundary_and_horn() {
        let b = SSet::boundary(2).unwrap();
        assert_eq!(
            [
                b.generator_count(0),
                b.generator_count(1),
                b.generator_count(2)
            ],
            [3, 3, 0]
        );
        let h = SSet::horn(2, 1).unwrap();
        assert_eq!([h.generator_count(0), h.generator_count(1)], [3, 2]);
        assert!(h.generator(1, "(0,2)").is_err());
        assert!(SSet::horn(2, 3).is_err());
    }

    #[test]
    fn all_simplices_counts() {
        let d1 = SSet::standard(1).extend_truncation(2);
        assert_eq!(d1.all_simplices(1).unwrap().len(), 3);
        // one simplex per monotone map [2] -> [1]
        assert_eq!(
            d1.all_simplices(2).unwrap().len(),
            crate::delta::enumerate_monotone(2, 1).len()
        );
        assert_eq!(d1.all_simplices(2).unwrap().len(), 4);
        let d0 = SSet::standard(0).extend_truncation(5);
        for k in 0..=5 {
            assert_eq!(d0.all_simplices(k).unwrap().len(), 1);
        }
        // 3 vertices * 1 surjection [2]->[0] + 3 edges * 2 surjections [2]->[1]
        let b = SSet::boundary(2).unwrap();
        assert_eq!(b.all_simplices(2).unwrap().len(), 9);
        assert!(matches!(
            SSet::standard(1).all_simplices(2),
            Err(Error::TruncationExceeded { .. })
        ));
    }

    #[test]
    fn vertices() {
        let d2 = SSet::standard(2);
        let v = Simplex::nondegenerate(0, 1);
        assert_eq!(d2.vertex(&v, 0).unwrap(), 1);
        let top = Simplex::nondegenerate(2, 0);
        assert_eq!(d2.generator_id(0, d2.vertex(&top, 1).unwrap()), "(1)");
        for i in 0..=2 {
            assert_eq!(
                d2.vertex(&top, i).unwrap(),
                d2.vertex_via_map(&top, i).unwrap()
            );
        }
        let deg = d2.degeneracy(&v, 0).unwrap();
        assert_eq!(
            (d2.vertex(&deg, 0).unwrap(), d2.vertex(&deg, 1).unwrap()),
            (1, 1)
        );
        assert!(d2.vertex(&top, 3).is_err());
    }

    #[test]
    fn square_product() {
        let d1 = SSet::standard(1);
        let sq = d1.product(&d1, 1).unwrap();
        assert_eq!(sq.all_simplices(1).unwrap().len(), 9);
        assert_eq!(sq.generator_count(1), 5);
        let sq2 = d1
            .extend_truncation(2)
            .product(&d1.extend_truncation(2), 2)
            .unwrap();
        assert_eq!(sq2.generator_count(2), 2);
        assert!(sq2.check_simplicial_identities().is_empty());
    }

    #[test]
    fn product_with_point() {
        let b = SSet::boundary(2).unwrap();
        let p = b
            .product(&SSet::standard(0).extend_truncation(2), 2)
            .unwrap();
        for k in 0..=2 {
            assert_eq!(p.generator_count(k), b.generator_count(k));
        }
    }

    #[test]
    fn opposite_involution() {
        let s = SSet::horn(3, 1).unwrap();
        assert_eq!(s.opposite().opposite(), s);
        assert!(s.opposite().validate().is_empty());
    }

    #[test]
    fn rejects_incoherent_faces() {
        let mut b = SSetBuilder::new(2);
        for v in ["a", "b", "c"] {
            b.add_vertex(v);
        }
        let v = |g| Simplex::nondegenerate(0, g);
        b.add_simplex("ab", vec![v(1), v(0)]).unwrap();
        b.add_simplex("bc", vec![v(2), v(1)]).unwrap();
        b.add_simplex("ca", vec![v(0), v(2)]).unwrap();
        let e = |g| Simplex::nondegenerate(1, g);
        // d1 should run a -> c; "ca" runs c -> a
        b.add_simplex("t", vec![e(1), e(2), e(0)]).unwrap();
        assert!(matches!(b.build(), Err(Error::InvalidSSet(_))));
    }
}
