//! π₀, integral homology via Smith normal form, edge-path presentations of
//! π₁ with bounded Tietze elimination, and tri-valued connectivity verdicts.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::sset::{SSet, Simplex};

pub const DEFAULT_TIETZE_BUDGET: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi0 {
    pub count: usize,
    /// Component label of each vertex, numbered by first appearance.
    pub component: Vec<usize>,
}

pub fn pi0(s: &SSet) -> Pi0 {
    let n = s.vertex_count();
    let mut uf = UnionFind::<usize>::new(n);
    if s.truncation() >= 1 {
        for e in s.nondegenerate(1) {
            let (a, b) = s.endpoints(&e);
            uf.union(a, b);
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let component = (0..n)
        .map(|v| {
            let r = uf.find_mut(v);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            label[r]
        })
        .collect();
    Pi0 { count, component }
}

/// A dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += &self.data[i][k] * &other.data[k][j];
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }
}

/// Invariant factors, and unimodular `u`, `v` with `u · m · v` diagonal when
/// requested.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Nonzero diagonal entries, each dividing the next.
    pub factors: Vec<BigInt>,
    pub diagonal: IntMatrix,
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

pub fn smith_normal_form(m: &IntMatrix, witnesses: bool) -> Smith {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let mut u = witnesses.then(|| IntMatrix::identity(rows).data);
    let mut v = witnesses.then(|| IntMatrix::identity(cols).data);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        swap_rows(&mut a, u.as_mut(), t, bi);
        swap_cols(&mut a, v.as_mut(), t, bj);
        loop {
            // bring the smallest entry of row/column t to the pivot
            let mut pick = None;
            for i in t + 1..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[t][t].abs() {
                    pick = Some((i, true));
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[t][t].abs() {
                    pick = Some((j, false));
                }
            }
            match pick {
                Some((i, true)) => swap_rows(&mut a, u.as_mut(), t, i),
                Some((j, false)) => swap_cols(&mut a, v.as_mut(), t, j),
                None => {}
            }
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    add_row(&mut a, u.as_mut(), i, t, &-q);
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    add_col(&mut a, v.as_mut(), j, t, &-q);
                }
            }
            let clean = (t + 1..rows).all(|i| a[i][t].is_zero())
                && (t + 1..cols).all(|j| a[t][j].is_zero());
            if !clean {
                continue;
            }
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => add_row(&mut a, u.as_mut(), t, i, &BigInt::one()),
                None => break,
            }
        }
        if a[t][t].is_negative() {
            let minus = -BigInt::one();
            scale_row(&mut a, u.as_mut(), t, &minus);
        }
        t += 1;
    }
    let factors = (0..rows.min(cols))
        .map(|i| a[i][i].clone())
        .filter(|x| !x.is_zero())
        .collect();
    Smith {
        factors,
        diagonal: IntMatrix {
            rows,
            cols,
            data: a,
        },
        u: u.map(|data| IntMatrix {
            rows,
            cols: rows,
            data,
        }),
        v: v.map(|data| IntMatrix {
            rows: cols,
            cols,
            data,
        }),
    }
}

fn swap_rows(a: &mut [Vec<BigInt>], u: Option<&mut Vec<Vec<BigInt>>>, i: usize, j: usize) {
    if i != j {
        a.swap(i, j);
        if let Some(u) = u {
            u.swap(i, j);
        }
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], v: Option<&mut Vec<Vec<BigInt>>>, i: usize, j: usize) {
    if i != j {
        for r in a.iter_mut() {
            r.swap(i, j);
        }
        if let Some(v) = v {
            for r in v.iter_mut() {
                r.swap(i, j);
            }
        }
    }
}

// row_i += q * row_j
fn add_row(
    a: &mut [Vec<BigInt>],
    u: Option<&mut Vec<Vec<BigInt>>>,
    i: usize,
    j: usize,
    q: &BigInt,
) {
    fn go(m: &mut [Vec<BigInt>], i: usize, j: usize, q: &BigInt) {
        let src = m[j].clone();
        for (x, y) in m[i].iter_mut().zip(src) {
            *x += q * y;
        }
    }
    go(a, i, j, q);
    if let Some(u) = u {
        go(u, i, j, q);
    }
}

// col_i += q * col_j
fn add_col(
    a: &mut [Vec<BigInt>],
    v: Option<&mut Vec<Vec<BigInt>>>,
    i: usize,
    j: usize,
    q: &BigInt,
) {
    fn go(m: &mut [Vec<BigInt>], i: usize, j: usize, q: &BigInt) {
        for r in m.iter_mut() {
            let y = r[j].clone();
            r[i] += q * y;
        }
    }
    go(a, i, j, q);
    if let Some(v) = v {
        go(v, i, j, q);
    }
}

fn scale_row(a: &mut [Vec<BigInt>], u: Option<&mut Vec<Vec<BigInt>>>, i: usize, q: &BigInt) {
    for x in a[i].iter_mut() {
        *x *= q;
    }
    if let Some(u) = u {
        for x in u[i].iter_mut() {
            *x *= q;
        }
    }
}

/// The normalized chain complex: basis in degree `k` is the nondegenerate
/// `k`-simplices; `boundaries[k]` is `∂_k` as a `|S_{k-1}| × |S_k|` matrix
/// (`boundaries[0]` is the zero map out of degree 0).
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// `∂_{k-1} ∘ ∂_k = 0` for every `k`.
    pub fn is_complex(&self) -> bool {
        (2..self.boundaries.len())
            .all(|k| self.boundaries[k - 1].mul(&self.boundaries[k]).is_zero())
    }
}

pub fn chain_complex(s: &SSet) -> ChainComplex {
    let d = s.truncation();
    let ranks: Vec<usize> = (0..=d).map(|k| s.generator_count(k)).collect();
    let mut boundaries = vec![IntMatrix::zeros(0, ranks[0])];
    for k in 1..=d {
        let mut m = IntMatrix::zeros(ranks[k - 1], ranks[k]);
        for g in 0..ranks[k] {
            let sigma = Simplex::nondegenerate(k, g);
            for i in 0..=k {
                let f = s.face(&sigma, i).expect("positive dimension");
                if !f.is_degenerate() {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    m.data[f.gen][g] += sign;
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex { ranks, boundaries }
}

/// `ℤ^betti ⊕ ⨁ ℤ/t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn free(betti: usize) -> HomologyGroup {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl Serialize for HomologyGroup {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

/// `H_0, …, H_D` for truncation `D`, reading `S` as `D`-skeletal.
pub fn homology(s: &SSet) -> Vec<HomologyGroup> {
    let cc = chain_complex(s);
    let d = s.truncation();
    let snf: Vec<Smith> = cc
        .boundaries
        .iter()
        .map(|m| smith_normal_form(m, false))
        .collect();
    (0..=d)
        .map(|k| {
            let rank_out = snf[k].rank();
            let (rank_in, torsion) = if k < d {
                let f = &snf[k + 1].factors;
                (f.len(), f.iter().filter(|x| !x.is_one()).cloned().collect())
            } else {
                (0, Vec::new())
            };
            HomologyGroup {
                betti: cc.ranks[k] - rank_out - rank_in,
                torsion,
            }
        })
        .collect()
}

/// Reduced homology: `H̃_0` drops one free summand when `S` is nonempty.
pub fn reduced_homology(s: &SSet) -> Vec<HomologyGroup> {
    let mut h = homology(s);
    if s.vertex_count() > 0 {
        h[0].betti -= 1;
    }
    h
}

/// A word in the generators: generator `g` is `g + 1`, its inverse `-(g + 1)`.
pub type Word = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn validate(&self) -> Vec<String> {
        let n = self.generators.len() as i64;
        self.relators
            .iter()
            .enumerate()
            .filter(|(_, r)| r.iter().any(|&l| l == 0 || l.abs() > n))
            .map(|(i, _)| format!("relator {i} names a missing generator"))
            .collect()
    }
}

/// Edge-path presentation of `π₁(S, basepoint)` on the basepoint's component.
/// The spanning tree is grown breadth-first, scanning edges in id order.
pub fn pi1_presentation(s: &SSet, basepoint: &str) -> Result<GroupPresentation> {
    let base = s.generator(0, basepoint)?;
    let edges: Vec<Simplex> = if s.truncation() >= 1 {
        s.nondegenerate(1)
    } else {
        Vec::new()
    };
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by(|&a, &b| s.generator_id(1, a).cmp(s.generator_id(1, b)));
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); s.vertex_count()];
    for &e in &order {
        let (a, b) = s.endpoints(&edges[e]);
        incident[a].push(e);
        if b != a {
            incident[b].push(e);
        }
    }
    let mut seen = vec![false; s.vertex_count()];
    let mut in_tree = vec![false; edges.len()];
    let mut in_component = vec![false; edges.len()];
    let mut queue = VecDeque::from([base]);
    seen[base] = true;
    while let Some(v) = queue.pop_front() {
        for &e in &incident[v] {
            in_component[e] = true;
            let (a, b) = s.endpoints(&edges[e]);
            let w = if a == v { b } else { a };
            if !seen[w] {
                seen[w] = true;
                in_tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    let mut letter = vec![0i64; edges.len()];
    let mut generators = Vec::new();
    for &e in &order {
        if in_component[e] && !in_tree[e] {
            generators.push(s.generator_id(1, e).to_string());
            letter[e] = generators.len() as i64;
        }
    }
    let mut relators = Vec::new();
    if s.truncation() >= 2 {
        for t in s.nondegenerate(2) {
            if !seen[s.vertex_via_map(&t, 0).unwrap()] {
                continue;
            }
            let g = |i: usize| {
                let f = s.face(&t, i).unwrap();
                if f.is_degenerate() {
                    0
                } else {
                    letter[f.gen]
                }
            };
            let w: Word = [g(2), g(0), -g(1)]
                .into_iter()
                .filter(|&l| l != 0)
                .collect();
            relators.push(w);
        }
    }
    Ok(GroupPresentation {
        generators,
        relators,
    })
}

fn inverse(w: &[i64]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

fn free_reduce(w: &[i64]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(w: &[i64]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

fn rotate(w: &[i64], k: usize) -> Word {
    let mut r = w[k..].to_vec();
    r.extend_from_slice(&w[..k]);
    r
}

fn normalize(relators: &mut Vec<Word>) {
    for r in relators.iter_mut() {
        *r = cyclic_reduce(r);
    }
    relators.retain(|r| !r.is_empty());
}

/// One step of a Tietze trivialization, in terms of the original generator
/// numbering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TietzeStep {
    /// Relator `relator` contains `generator` exactly once; solve for it and
    /// substitute `solution` everywhere.
    Eliminate {
        relator: usize,
        generator: i64,
        solution: Word,
    },
    /// Replace relator `target` by the cyclic reduction of
    /// `rotate(target, a) · rotate(other, b)^(±1)`, which is shorter.
    Rewrite {
        target: usize,
        other: usize,
        rotate_target: usize,
        rotate_other: usize,
        inverted: bool,
        result: Word,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TietzeOutcome {
    pub certified: bool,
    pub trace: Vec<TietzeStep>,
    pub steps_used: usize,
    pub remaining_generators: usize,
}

struct TietzeState {
    live: Vec<bool>,
    relators: Vec<Word>,
}

impl TietzeState {
    fn new(p: &GroupPresentation) -> TietzeState {
        let mut relators = p.relators.clone();
        normalize(&mut relators);
        TietzeState {
            live: vec![true; p.generators.len()],
            relators,
        }
    }

    fn live_count(&self) -> usize {
        self.live.iter().filter(|&&l| l).count()
    }

    fn solve(r: &[i64], gen: i64) -> Option<Word> {
        let occ: Vec<usize> = (0..r.len()).filter(|&i| r[i].abs() == gen).collect();
        if occ.len() != 1 {
            return None;
        }
        let rot = rotate(r, occ[0]);
        let rest = &rot[1..];
        Some(if rot[0] > 0 {
            inverse(rest)
        } else {
            rest.to_vec()
        })
    }

    // returns the rewriting cost
    fn eliminate(&mut self, relator: usize, gen: i64, solution: &[i64]) -> usize {
        self.relators.remove(relator);
        self.live[(gen - 1) as usize] = false;
        let inv = inverse(solution);
        let mut cost = 1;
        for r in self.relators.iter_mut() {
            if r.iter().any(|l| l.abs() == gen) {
                let mut out = Vec::new();
                for &l in r.iter() {
                    if l == gen {
                        out.extend_from_slice(solution);
                    } else if l == -gen {
                        out.extend_from_slice(&inv);
                    } else {
                        out.push(l);
                    }
                }
                cost += out.len();
                *r = out;
            }
        }
        normalize(&mut self.relators);
        cost
    }

    fn rewrite_result(&self, t: usize, o: usize, a: usize, b: usize, inverted: bool) -> Word {
        let mut w = rotate(&self.relators[t], a);
        let other = rotate(&self.relators[o], b);
        if inverted {
            w.extend(inverse(&other));
        } else {
            w.extend(other);
        }
        cyclic_reduce(&w)
    }

    fn apply_rewrite(&mut self, t: usize, result: Word) {
        self.relators[t] = result;
        normalize(&mut self.relators);
    }
}

/// Generator elimination with bounded relator rewriting. Never certifies a
/// nontrivial group.
pub fn tietze_trivialize(p: &GroupPresentation, budget: usize) -> TietzeOutcome {
    let mut st = TietzeState::new(p);
    let mut trace = Vec::new();
    let mut used = 0;
    'outer: while st.live_count() > 0 && used < budget {
        // shortest relator offering a generator that occurs once
        let mut order: Vec<usize> = (0..st.relators.len()).collect();
        order.sort_by_key(|&i| st.relators[i].len());
        for &i in &order {
            let r = &st.relators[i];
            let mut gens: Vec<i64> = r.iter().map(|l| l.abs()).collect();
            gens.sort_unstable();
            gens.dedup();
            for g in gens {
                if let Some(sol) = TietzeState::solve(r, g) {
                    used += st.eliminate(i, g, &sol);
                    trace.push(TietzeStep::Eliminate {
                        relator: i,
                        generator: g,
                        solution: sol,
                    });
                    continue 'outer;
                }
            }
        }
        // no direct elimination: try to shorten a relator
        for &t in &order {
            for o in 0..st.relators.len() {
                if o == t {
                    continue;
                }
                for a in 0..st.relators[t].len() {
                    for b in 0..st.relators[o].len() {
                        for inverted in [false, true] {
                            used += 1;
                            if used >= budget {
                                break 'outer;
                            }
                            let w = st.rewrite_result(t, o, a, b, inverted);
                            if w.len() < st.relators[t].len() {
                                trace.push(TietzeStep::Rewrite {
                                    target: t,
                                    other: o,
                                    rotate_target: a,
                                    rotate_other: b,
                                    inverted,
                                    result: w.clone(),
                                });
                                st.apply_rewrite(t, w);
                                continue 'outer;
                            }
                        }
                    }
                }
            }
        }
        break;
    }
    TietzeOutcome {
        certified: st.live_count() == 0,
        trace,
        steps_used: used,
        remaining_generators: st.live_count(),
    }
}

/// Replays a trace from scratch and reports whether it trivializes `p`.
pub fn replay_tietze(p: &GroupPresentation, trace: &[TietzeStep]) -> bool {
    let mut st = TietzeState::new(p);
    for step in trace {
        match step {
            TietzeStep::Eliminate {
                relator,
                generator,
                solution,
            } => {
                let g = *generator;
                if *relator >= st.relators.len()
                    || g < 1
                    || g as usize > st.live.len()
                    || !st.live[(g - 1) as usize]
                {
                    return false;
                }
                // `solution` must satisfy g = solution modulo the relator
                let r = &st.relators[*relator];
                let occ = r.iter().filter(|l| l.abs() == g).count();
                if occ != 1 || solution.iter().any(|l| l.abs() == g) {
                    return false;
                }
                let mut check: Word = r
                    .iter()
                    .flat_map(|&l| {
                        if l == g {
                            solution.clone()
                        } else if l == -g {
                            inverse(solution)
                        } else {
                            vec![l]
                        }
                    })
                    .collect();
                check = cyclic_reduce(&check);
                if !check.is_empty() {
                    return false;
                }
                st.eliminate(*relator, g, solution);
            }
            TietzeStep::Rewrite {
                target,
                other,
                rotate_target,
                rotate_other,
                inverted,
                result,
            } => {
                let n = st.relators.len();
                if *target >= n || *other >= n || target == other {
                    return false;
                }
                if *rotate_target >= st.relators[*target].len()
                    || *rotate_other >= st.relators[*other].len()
                {
                    return false;
                }
                let w =
                    st.rewrite_result(*target, *other, *rotate_target, *rotate_other, *inverted);
                if &w != result || w.len() >= st.relators[*target].len() {
                    return false;
                }
                st.apply_rewrite(*target, w);
            }
        }
    }
    st.live_count() == 0
}

/// `(free rank, torsion)` of the abelianized group.
pub fn abelianization(p: &GroupPresentation) -> HomologyGroup {
    let n = p.generators.len();
    let mut m = IntMatrix::zeros(p.relators.len(), n);
    for (i, r) in p.relators.iter().enumerate() {
        for &l in r {
            let g = (l.unsigned_abs() - 1) as usize;
            m.data[i][g] += if l > 0 { 1 } else { -1 };
        }
    }
    let snf = smith_normal_form(&m, false);
    HomologyGroup {
        betti: n - snf.rank(),
        torsion: snf
            .factors
            .iter()
            .filter(|x| !x.is_one())
            .cloned()
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    /// `Yes` iff all are, `No` iff some is, `Unknown` otherwise.
    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Yes;
        for v in verdicts {
            match v {
                Verdict::No => return Verdict::No,
                Verdict::Unknown => out = Verdict::Unknown,
                Verdict::Yes => {}
            }
        }
        out
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Vacuous,
    Vertex {
        vertex: String,
    },
    Connected {
        vertices: usize,
    },
    Certificate {
        trace: Vec<TietzeStep>,
        vanishing_degrees: Vec<usize>,
    },
    Empty,
    Disconnected {
        a: String,
        b: String,
    },
    Homology {
        degree: usize,
        group: HomologyGroup,
    },
    Abelianization {
        group: HomologyGroup,
    },
    InsufficientTruncation {
        needed: usize,
        truncation: usize,
    },
    Uncertified {
        remaining_generators: usize,
        steps_used: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    /// `None` stands for weak contractibility.
    pub level: Option<i64>,
    pub verdict: Verdict,
    pub witness: Witness,
}

fn disconnected_pair(s: &SSet, comps: &Pi0) -> (String, String) {
    let b = comps
        .component
        .iter()
        .position(|&c| c != comps.component[0])
        .unwrap();
    (
        s.generator_id(0, 0).to_string(),
        s.generator_id(0, b).to_string(),
    )
}

/// Whether `s` is `n`-connective.
pub fn connectivity(s: &SSet, n: i64, budget: usize) -> ConnectivityReport {
    let report = |verdict, witness| ConnectivityReport {
        level: Some(n),
        verdict,
        witness,
    };
    if n <= -1 {
        return report(Verdict::Yes, Witness::Vacuous);
    }
    if s.is_empty() {
        return report(Verdict::No, Witness::Empty);
    }
    if n == 0 {
        return report(
            Verdict::Yes,
            Witness::Vertex {
                vertex: s.generator_id(0, 0).to_string(),
            },
        );
    }
    let comps = pi0(s);
    if comps.count > 1 {
        let (a, b) = disconnected_pair(s, &comps);
        return report(Verdict::No, Witness::Disconnected { a, b });
    }
    if n == 1 {
        return report(
            Verdict::Yes,
            Witness::Connected {
                vertices: s.vertex_count(),
            },
        );
    }
    let d = s.truncation();
    let h = homology(s);
    let top = (n as usize - 1).min(d);
    let p = pi1_presentation(s, s.generator_id(0, 0)).expect("vertex exists");
    let ab = abelianization(&p);
    if !ab.is_trivial() {
        return report(Verdict::No, Witness::Abelianization { group: ab });
    }
    for (k, hk) in h.iter().enumerate().take(top + 1).skip(1) {
        if !hk.is_trivial() {
            return report(
                Verdict::No,
                Witness::Homology {
                    degree: k,
                    group: hk.clone(),
                },
            );
        }
    }
    if (n as usize) > d {
        return report(
            Verdict::Unknown,
            Witness::InsufficientTruncation {
                needed: n as usize,
                truncation: d,
            },
        );
    }
    let t = tietze_trivialize(&p, budget);
    if t.certified {
        report(
            Verdict::Yes,
            Witness::Certificate {
                trace: t.trace,
                vanishing_degrees: (1..n as usize).collect(),
            },
        )
    } else {
        report(
            Verdict::Unknown,
            Witness::Uncertified {
                remaining_generators: t.remaining_generators,
                steps_used: t.steps_used,
            },
        )
    }
}

/// Whether `s`, read as a `D`-skeletal simplicial set, is weakly contractible.
pub fn weak_contractible(s: &SSet, budget: usize) -> ConnectivityReport {
    let report = |verdict, witness| ConnectivityReport {
        level: None,
        verdict,
        witness,
    };
    if s.is_empty() {
        return report(Verdict::No, Witness::Empty);
    }
    let comps = pi0(s);
    if comps.count > 1 {
        let (a, b) = disconnected_pair(s, &comps);
        return report(Verdict::No, Witness::Disconnected { a, b });
    }
    let p = pi1_presentation(s, s.generator_id(0, 0)).expect("vertex exists");
    let ab = abelianization(&p);
    if !ab.is_trivial() {
        return report(Verdict::No, Witness::Abelianization { group: ab });
    }
    let h = reduced_homology(s);
    for (k, hk) in h.iter().enumerate().skip(1) {
        if !hk.is_trivial() {
            return report(
                Verdict::No,
                Witness::Homology {
                    degree: k,
                    group: hk.clone(),
                },
            );
        }
    }
    let t = tietze_trivialize(&p, budget);
    if t.certified {
        report(
            Verdict::Yes,
            Witness::Certificate {
                trace: t.trace,
                vanishing_degrees: (1..=s.truncation()).collect(),
            },
        )
    } else {
        report(
            Verdict::Unknown,
            Witness::Uncertified {
                remaining_generators: t.remaining_generators,
                steps_used: t.steps_used,
            },
        )
    }
}

/// Ranks of `∂_k` over `GF(p)`, an independent path to `dim H_k(S; F_p)`.
pub fn mod_p_betti(s: &SSet, p: u64) -> Vec<usize> {
    let cc = chain_complex(s);
    let ranks: Vec<usize> = cc.boundaries.iter().map(|m| rank_mod_p(m, p)).collect();
    let d = s.truncation();
    (0..=d)
        .map(|k| cc.ranks[k] - ranks[k] - if k < d { ranks[k + 1] } else { 0 })
        .collect()
}

fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .data
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let y = x.mod_floor(&pb);
                    y.to_u64_digits().1.first().copied().unwrap_or(0)
                })
                .collect()
        })
        .collect();
    let mut rank = 0;
    for c in 0..m.cols {
        let Some(piv) = (rank..m.rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for r in 0..m.rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c] * inv % p;
                for j in c..m.cols {
                    let sub = f * a[rank][j] % p;
                    a[r][j] = (a[r][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rechecks a report through code paths independent of the ones that
/// produced it: breadth-first search for components, modular ranks for
/// homology, trace replay for certificates.
pub fn recheck(s: &SSet, r: &ConnectivityReport) -> bool {
    match &r.witness {
        Witness::Vacuous => r.level.is_some_and(|n| n <= -1),
        Witness::Vertex { vertex } => s.generator(0, vertex).is_ok(),
        Witness::Connected { .. } => {
            reachable_count(s, 0) == s.vertex_count() && s.vertex_count() > 0
        }
        Witness::Empty => s.vertex_count() == 0,
        Witness::Disconnected { a, b } => match (s.generator(0, a), s.generator(0, b)) {
            (Ok(a), Ok(b)) => !reachable(s, a)[b],
            _ => false,
        },
        Witness::Homology { degree, group } => {
            let primes: Vec<u64> = if group.betti > 0 {
                vec![1_000_003]
            } else {
                group
                    .torsion
                    .iter()
                    .map(smallest_prime_factor)
                    .collect()
            };
            primes.iter().any(|&p| mod_p_betti(s, p)[*degree] > 0)
        }
        Witness::Abelianization { group } => {
            let ok =
                pi1_presentation(s, s.generator_id(0, 0)).map(|p| abelianization(&p) == *group);
            ok.unwrap_or(false) && !group.is_trivial()
        }
        Witness::Certificate {
            trace,
            vanishing_degrees,
        } => {
            let Ok(p) = pi1_presentation(s, s.generator_id(0, 0)) else {
                return false;
            };
            let h = homology(s);
            replay_tietze(&p, trace)
                && reachable_count(s, 0) == s.vertex_count()
                && vanishing_degrees.iter().all(|&k| {
                    k < h.len()
                        && (if k == 0 {
                            h[0].betti == 1
                        } else {
                            h[k].is_trivial()
                        })
                })
        }
        Witness::InsufficientTruncation { needed, truncation } => {
            *truncation == s.truncation() && needed > truncation
        }
        Witness::Uncertified { .. } => r.verdict == Verdict::Unknown,
    }
}

fn smallest_prime_factor(t: &BigInt) -> u64 {
    let t: u64 = t.try_into().unwrap_or(u64::MAX);
    (2..=t).find(|p| t.is_multiple_of(*p)).unwrap_or(2)
}

fn reachable(s: &SSet, start: usize) -> Vec<bool> {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    if s.truncation() >= 1 {
        for e in s.nondegenerate(1) {
            let (a, b) = (s.vertex(&e, 0).unwrap(), s.vertex(&e, 1).unwrap());
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
    }
    let mut seen = vec![false; s.vertex_count()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &w in adj.get(&v).into_iter().flatten() {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

fn reachable_count(s: &SSet, start: usize) -> usize {
    if s.vertex_count() == 0 {
        return 0;
    }
    reachable(s, start).iter().filter(|&&x| x).count()
}

/// The circle: one vertex, one nondegenerate loop.
pub fn circle() -> SSet {
    let mut b = crate::sset::SSetBuilder::new(2);
    b.add_vertex("v");
    b.add_simplex(
        "e",
        vec![Simplex::nondegenerate(0, 0), Simplex::nondegenerate(0, 0)],
    )
    .expect("loop");
    b.build().expect("circle")
}

/// The minimal six-vertex triangulation of the real projective plane.
pub fn projective_plane() -> SSet {
    let facets: Vec<Vec<usize>> = [
        [1, 2, 4],
        [1, 2, 6],
        [1, 3, 5],
        [1, 3, 6],
        [1, 4, 5],
        [2, 3, 4],
        [2, 3, 5],
        [2, 5, 6],
        [3, 4, 6],
        [4, 5, 6],
    ]
    .iter()
    .map(|f| f.to_vec())
    .collect();
    SSet::from_simplicial_complex(&facets, 2).expect("triangulation")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn snf_examples() {
        let s = smith_normal_form(&IntMatrix::identity(3), true);
        assert!(s.factors.iter().all(|f| f.is_one()));
        assert_eq!(smith_normal_form(&IntMatrix::zeros(2, 3), false).rank(), 0);
        let a = m(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&a, true);
        assert_eq!(s.factors, vec![BigInt::from(2), BigInt::from(4)]);
        let (u, v) = (s.u.unwrap(), s.v.unwrap());
        assert_eq!(u.mul(&a).mul(&v), s.diagonal);
    }

    #[test]
    fn boundary_matrices() {
        let b2 = SSet::boundary(2).unwrap();
        let cc = chain_complex(&b2);
        assert_eq!(smith_normal_form(&cc.boundaries[1], false).rank(), 2);
        let cc = chain_complex(&SSet::standard(3));
        assert!(cc.is_complex());
    }

    #[test]
    fn homology_examples() {
        let h = homology(&SSet::boundary(3).unwrap());
        assert_eq!(h[0], HomologyGroup::free(1));
        assert!(h[1].is_trivial());
        assert_eq!(h[2], HomologyGroup::free(1));
        let h = homology(&projective_plane());
        assert_eq!(h[0], HomologyGroup::free(1));
        assert_eq!(h[1].betti, 0);
        assert_eq!(h[1].torsion, vec![BigInt::from(2)]);
        assert!(h[2].is_trivial());
        let rp2 = projective_plane();
        assert_ne!(mod_p_betti(&rp2, 2)[1], mod_p_betti(&rp2, 3)[1]);
        for n in 0..4 {
            assert!(reduced_homology(&SSet::standard(n))
                .iter()
                .all(|g| g.is_trivial()));
        }
    }

    #[test]
    fn presentations() {
        // one non-tree edge, killed by the single relator
        let p = pi1_presentation(&SSet::standard(2), "(0)").unwrap();
        assert_eq!(p.relators, vec![vec![1]]);
        assert!(tietze_trivialize(&p, 10).certified);
        let p = pi1_presentation(&circle(), "v").unwrap();
        assert_eq!((p.generators.len(), p.relators.len()), (1, 0));
        assert_eq!(abelianization(&p), HomologyGroup::free(1));
        let p = pi1_presentation(&SSet::boundary(2).unwrap(), "(0)").unwrap();
        assert_eq!((p.generators.len(), p.relators.len()), (1, 0));
        assert!(pi1_presentation(&circle(), "w").is_err());
    }

    #[test]
    fn tietze_examples() {
        let trivial = GroupPresentation {
            generators: vec![],
            relators: vec![],
        };
        let t = tietze_trivialize(&trivial, 10);
        assert!(t.certified && t.trace.is_empty());
        let a = GroupPresentation {
            generators: vec!["a".into()],
            relators: vec![vec![1]],
        };
        let t = tietze_trivialize(&a, 10);
        assert!(t.certified);
        assert!(replay_tietze(&a, &t.trace));
        let free = GroupPresentation {
            generators: vec!["a".into()],
            relators: vec![],
        };
        assert!(!tietze_trivialize(&free, 10).certified);
        assert!(!replay_tietze(&free, &[]));
        // ⟨a, b | a a b, a b⟩
        let p = GroupPresentation {
            generators: vec!["a".into(), "b".into()],
            relators: vec![vec![1, 1, 2], vec![1, 2]],
        };
        let t = tietze_trivialize(&p, 100);
        assert!(t.certified);
        assert!(replay_tietze(&p, &t.trace));
    }

    #[test]
    fn rewriting_helps() {
        // ⟨a | a², a³⟩: no relator contains a exactly once
        let p = GroupPresentation {
            generators: vec!["a".into()],
            relators: vec![vec![1, 1], vec![1, 1, 1]],
        };
        let t = tietze_trivialize(&p, 1000);
        assert!(t.certified);
        assert!(replay_tietze(&p, &t.trace));
    }

    #[test]
    fn connectivity_examples() {
        let empty = SSet::empty(1);
        assert_eq!(connectivity(&empty, 0, 100).verdict, Verdict::No);
        assert_eq!(connectivity(&empty, -1, 100).verdict, Verdict::Yes);
        let b3 = SSet::boundary(3).unwrap();
        let r = connectivity(&b3, 2, DEFAULT_TIETZE_BUDGET);
        assert_eq!(r.verdict, Verdict::Yes);
        assert!(recheck(&b3, &r));
        let r = connectivity(&b3, 3, DEFAULT_TIETZE_BUDGET);
        assert_eq!(r.verdict, Verdict::No);
        assert!(matches!(r.witness, Witness::Homology { degree: 2, .. }));
        assert!(recheck(&b3, &r));
        let r = connectivity(&circle(), 2, DEFAULT_TIETZE_BUDGET);
        assert!(matches!(r.witness, Witness::Abelianization { .. }));
        assert!(recheck(&circle(), &r));
        let r = connectivity(&SSet::standard(1), 3, DEFAULT_TIETZE_BUDGET);
        assert_eq!(r.verdict, Verdict::Unknown);
    }

    #[test]
    fn contractibility() {
        for n in 0..4 {
            let s = SSet::standard(n);
            let r = weak_contractible(&s, DEFAULT_TIETZE_BUDGET);
            assert_eq!(r.verdict, Verdict::Yes, "standard({n})");
            assert!(recheck(&s, &r));
        }
        assert_eq!(
            weak_contractible(&SSet::boundary(2).unwrap(), 100).verdict,
            Verdict::No
        );
    }
}
