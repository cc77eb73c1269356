//! Property tests over seeded random inputs, each checked against a
//! brute-force or independently computed oracle.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use ncofinal::cofinality::{cofinal, n_cosifted, CheckOptions, Direction};
use ncofinal::colimit::{colim_finset, lim_finset, reshape_build};
use ncofinal::diagram::{SSetDiagram, SetDiagram};
use ncofinal::fincat::{comma, coslice, nerve, opposite, pullback, slice, FinCategory, Functor};
use ncofinal::io::Document;
use ncofinal::par::Exec;
use ncofinal::random::{
    derived_rng, random_category, random_functor, random_set_diagram, random_sset,
    random_sset_diagram, rng,
};
use ncofinal::sset::SSet;
use ncofinal::topology::{
    chain_complex, connectivity, homology, pi0, smith_normal_form, IntMatrix, Verdict,
    DEFAULT_TIETZE_BUDGET,
};

fn cat(seed: u64, objects: usize, morphisms: usize) -> Arc<FinCategory> {
    Arc::new(random_category(&mut rng(seed), objects, morphisms))
}

fn functor(seed: u64, c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> Functor {
    random_functor(&mut rng(seed), c, d).expect("constant functors always exist")
}

fn commutes(c: &FinCategory, top: usize, right: usize, left: usize, bottom: usize) -> bool {
    c.comp(right, top) == c.comp(bottom, left)
}

// Object and morphism counts of `(f ↓ g)` by enumerating every candidate square.
fn comma_counts(f: &Functor, g: &Functor) -> (usize, usize) {
    let (a, b, c) = (f.domain(), g.domain(), f.codomain());
    let homs = |x: usize, y: usize| c.hom_vec(f.on_object(x), g.on_object(y));
    let mut objects = 0;
    for x in 0..a.object_count() {
        for y in 0..b.object_count() {
            objects += homs(x, y).len();
        }
    }
    let mut morphisms = 0;
    for u in 0..a.morphism_count() {
        for v in 0..b.morphism_count() {
            for h in homs(a.source(u), b.source(v)) {
                for h2 in homs(a.target(u), b.target(v)) {
                    if commutes(c, f.on_morphism(u), h2, h, g.on_morphism(v)) {
                        morphisms += 1;
                    }
                }
            }
        }
    }
    (objects, morphisms)
}

fn all_tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &k in sizes {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..k).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

// Laplace expansion along the first row.
fn det(m: &[Vec<i64>]) -> i64 {
    if m.is_empty() {
        return 1;
    }
    let mut total = 0;
    for j in 0..m.len() {
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][j] * det(&minor);
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..1usize << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
        .collect()
}

// gcd of all k × k minors
fn determinantal_divisor(m: &[Vec<i64>], k: usize) -> i64 {
    let (r, c) = (m.len(), m[0].len());
    let mut g = 0i64;
    for rows in subsets(r, k) {
        for cols in subsets(c, k) {
            let sub: Vec<Vec<i64>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| m[i][j]).collect())
                .collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

fn level_one(f: &Functor, side: Direction) -> Verdict {
    let opts = CheckOptions {
        exec: Exec::Sequential,
        ..CheckOptions::default()
    };
    cofinal(f, side, Some(1), &opts).unwrap().overall
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_categories_and_constructions_are_valid(seed in any::<u64>()) {
        let c = cat(seed, 4, 10);
        prop_assert!(c.is_valid());
        prop_assert!(opposite(&c).is_valid());
        for d in 0..c.object_count() {
            let (s, p) = slice(&c, d).unwrap();
            prop_assert!(s.is_valid() && p.is_valid());
            let (cs, q) = coslice(&c, d).unwrap();
            prop_assert!(cs.is_valid() && q.is_valid());
        }
    }

    #[test]
    fn comma_counts_match_enumeration(seed in any::<u64>()) {
        let (a, b, c) = (cat(seed, 3, 6), cat(seed ^ 1, 3, 6), cat(seed ^ 2, 4, 10));
        let (f, g) = (functor(seed, &a, &c), functor(seed ^ 3, &b, &c));
        let cm = comma(&f, &g).unwrap();
        prop_assert!(cm.category.is_valid());
        prop_assert!(cm.to_left.is_valid() && cm.to_right.is_valid());
        prop_assert_eq!((cm.category.object_count(), cm.category.morphism_count()), comma_counts(&f, &g));
        for d in 0..c.object_count() {
            let (s, _) = slice(&c, d).unwrap();
            let point = Functor::point(&c, d);
            prop_assert_eq!((s.object_count(), s.morphism_count()), comma_counts(&Functor::identity(&c), &point));
            let (cs, _) = coslice(&c, d).unwrap();
            prop_assert_eq!((cs.object_count(), cs.morphism_count()), comma_counts(&point, &Functor::identity(&c)));
        }
    }

    #[test]
    fn pullback_counts_match_enumeration(seed in any::<u64>()) {
        let (a, b, c) = (cat(seed, 3, 8), cat(seed ^ 1, 3, 8), cat(seed ^ 2, 3, 6));
        let (f, g) = (functor(seed, &a, &c), functor(seed ^ 3, &b, &c));
        let pb = pullback(&f, &g).unwrap();
        prop_assert!(pb.category.is_valid() && pb.to_left.is_valid() && pb.to_right.is_valid());
        let objects = (0..a.object_count())
            .flat_map(|x| (0..b.object_count()).map(move |y| (x, y)))
            .filter(|&(x, y)| f.on_object(x) == g.on_object(y))
            .count();
        let morphisms = (0..a.morphism_count())
            .flat_map(|x| (0..b.morphism_count()).map(move |y| (x, y)))
            .filter(|&(x, y)| f.on_morphism(x) == g.on_morphism(y))
            .count();
        prop_assert_eq!((pb.category.object_count(), pb.category.morphism_count()), (objects, morphisms));
    }

    #[test]
    fn nerves_satisfy_simplicial_identities(seed in any::<u64>()) {
        let c = cat(seed, 3, 8);
        let nv = nerve(&c, 3);
        prop_assert!(nv.sset.validate().is_empty());
        prop_assert!(nv.sset.check_simplicial_identities().is_empty());
        // composable k-chains, counted directly
        let mut chains: Vec<usize> = vec![c.object_count(), c.morphism_count()];
        let pairs = (0..c.morphism_count())
            .map(|f| c.outgoing(c.target(f)).len())
            .sum::<usize>();
        chains.push(pairs);
        for k in 0..=2 {
            prop_assert_eq!(nv.sset.simplex_count(k).unwrap(), chains[k]);
        }
    }

    #[test]
    fn nerve_of_opposite_is_opposite_of_nerve(seed in any::<u64>()) {
        let c = cat(seed, 3, 8);
        let a = nerve(&c, 2).sset.opposite();
        let b = nerve(&Arc::new(opposite(&c)), 2).sset;
        for k in 0..=2 {
            prop_assert_eq!(a.generator_count(k), b.generator_count(k));
            prop_assert_eq!(a.simplex_count(k).unwrap(), b.simplex_count(k).unwrap());
        }
    }

    #[test]
    fn random_ssets_are_coherent(seed in any::<u64>()) {
        let s = random_sset(&mut rng(seed), 12);
        prop_assert!(s.validate().is_empty());
        prop_assert!(s.check_simplicial_identities().is_empty());
        let t = random_sset(&mut rng(seed ^ 9), 6);
        let p = s.product(&t, 2).unwrap();
        prop_assert!(p.check_simplicial_identities().is_empty());
        for k in 0..=2 {
            prop_assert_eq!(p.simplex_count(k).unwrap(), s.simplex_count(k).unwrap() * t.simplex_count(k).unwrap());
        }
    }

    #[test]
    fn colimit_legs_are_surjective_and_coequalize(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = Arc::new(random_category(&mut r, 3, 8));
        let d = random_set_diagram(&mut r, &c, 4);
        let q = colim_finset(&d);
        prop_assert!(q.check(&d).is_empty());
        let mut hit = vec![false; q.classes];
        for o in 0..c.object_count() {
            for x in 0..d.size(o) {
                hit[q.class_of(o, x)] = true;
            }
        }
        prop_assert!(hit.into_iter().all(|h| h));
        for m in 0..c.morphism_count() {
            for x in 0..d.size(c.source(m)) {
                prop_assert_eq!(q.class_of(c.source(m), x), q.class_of(c.target(m), d.act(m, x)));
            }
        }
    }

    #[test]
    fn limits_are_the_compatible_families(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = Arc::new(random_category(&mut r, 3, 8));
        let d = random_set_diagram(&mut r, &c, 3);
        let naive: Vec<Vec<usize>> = all_tuples(d.sizes())
            .into_iter()
            .filter(|t| (0..c.morphism_count()).all(|m| d.act(m, t[c.source(m)]) == t[c.target(m)]))
            .collect();
        prop_assert_eq!(lim_finset(&d).families, naive);
    }

    #[test]
    fn reshaped_diagrams_are_functors(seed in any::<u64>(), n_max in 1usize..=3) {
        let f = random_sset_diagram(&mut rng(seed), 8, 3);
        let base = f.base().extend_truncation(3);
        let f = SSetDiagram::new(base, f.sizes().to_vec(), f.edge_actions().to_vec()).unwrap();
        let rd = reshape_build(&f, n_max).unwrap();
        prop_assert!(rd.diagram.is_valid(), "{:?}", rd.diagram.validate());
    }

    #[test]
    fn boundaries_square_to_zero_and_count_components(seed in any::<u64>()) {
        let s = random_sset(&mut rng(seed), 12);
        prop_assert!(chain_complex(&s).is_complex());
        prop_assert_eq!(homology(&s)[0].betti, pi0(&s).count);
    }

    #[test]
    fn connectivity_is_monotone(seed in any::<u64>()) {
        let s = random_sset(&mut rng(seed), 10);
        let verdicts: Vec<Verdict> = (-2..=3).map(|n| connectivity(&s, n, DEFAULT_TIETZE_BUDGET).verdict).collect();
        for i in 0..verdicts.len() {
            for j in 0..verdicts.len() {
                if i < j && verdicts[j] == Verdict::Yes {
                    prop_assert_eq!(verdicts[i], Verdict::Yes);
                }
                if i < j && verdicts[i] == Verdict::No {
                    prop_assert_eq!(verdicts[j], Verdict::No);
                }
            }
        }
    }

    #[test]
    fn smith_factors_match_minors(
        rows in 1usize..=6,
        cols in 1usize..=6,
        entries in prop::collection::vec(-3i64..=3, 36),
    ) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * 6..i * 6 + cols].to_vec()).collect();
        let snf = smith_normal_form(&IntMatrix::from_i64(&m), false);
        for w in snf.factors.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(snf.factors.iter().all(|f| f.is_positive()));
        let mut prefix = BigInt::from(1);
        for k in 1..=rows.min(cols) {
            let dk = determinantal_divisor(&m, k);
            if k <= snf.factors.len() {
                prefix *= &snf.factors[k - 1];
                prop_assert_eq!(prefix.clone(), BigInt::from(dk));
            } else {
                prop_assert!(BigInt::from(dk).is_zero());
            }
        }
    }

    #[test]
    fn cofinal_composites(seed in any::<u64>(), left in any::<bool>()) {
        let side = if left { Direction::Left } else { Direction::Right };
        let (a, b, c) = (cat(seed, 3, 6), cat(seed ^ 1, 3, 6), cat(seed ^ 2, 3, 6));
        let (p, q) = (functor(seed, &a, &b), functor(seed ^ 3, &b, &c));
        let qp = q.after(&p).unwrap();
        let (vp, vq, vqp) = (level_one(&p, side), level_one(&q, side), level_one(&qp, side));
        if vp == Verdict::Yes && vq == Verdict::Yes {
            prop_assert_eq!(vqp, Verdict::Yes);
        }
        if vp == Verdict::Yes {
            prop_assert_eq!(vq, vqp);
        }
    }

    #[test]
    fn cofinal_maps_transport_cosiftedness(seed in any::<u64>()) {
        let (a, b) = (cat(seed, 3, 6), cat(seed ^ 1, 3, 6));
        let f = functor(seed, &a, &b);
        if level_one(&f, Direction::Left) == Verdict::Yes && n_cosifted(&a, 1).overall == Verdict::Yes {
            prop_assert_eq!(n_cosifted(&b, 1).overall, Verdict::Yes);
        }
    }
}

fn random_document(i: usize) -> Document {
    let mut r = derived_rng(0xd0c, i);
    match i % 5 {
        0 => Document::Category(Arc::new(random_category(&mut r, 4, 10))),
        1 => {
            let c = Arc::new(random_category(&mut r, 3, 8));
            let d = Arc::new(random_category(&mut r, 3, 8));
            Document::Functor(random_functor(&mut r, &c, &d).unwrap())
        }
        2 => Document::SSet(random_sset(&mut r, 12)),
        3 => {
            let c = Arc::new(random_category(&mut r, 3, 8));
            Document::SetDiagram(random_set_diagram(&mut r, &c, 4))
        }
        _ => Document::SSetDiagram(random_sset_diagram(&mut r, 8, 4)),
    }
}

#[test]
fn random_documents_round_trip() {
    for i in 0..200 {
        let doc = random_document(i);
        assert!(doc.validate().is_empty(), "document {i}");
        let text = doc.print();
        let back = Document::parse(&text).unwrap_or_else(|e| panic!("document {i}: {e}"));
        assert_eq!(back.print(), text, "document {i}");
        assert_eq!(back.kind(), doc.kind());
    }
}

#[test]
fn standard_simplices_have_binomial_levels() {
    for n in 0..=4 {
        let s = SSet::standard(n);
        for k in 0..=n {
            // monotone maps [k] → [n]
            let expected = (1..=k + 1).fold(1usize, |acc, i| acc * (n + i) / i);
            assert_eq!(s.simplex_count(k).unwrap(), expected, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn diagrams_from_set_maps() {
    let c = Arc::new(FinCategory::discrete(&["a", "b"]));
    let d = SetDiagram::new(c, vec![2, 0], vec![vec![0, 1], vec![]]).unwrap();
    assert_eq!(colim_finset(&d).classes, 2);
    assert!(lim_finset(&d).is_empty());
}
