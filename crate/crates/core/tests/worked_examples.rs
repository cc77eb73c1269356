//! Small worked examples with hand-checkable answers.

use std::sync::Arc;

use num_bigint::BigInt;

use ncofinal::cofinality::{
    cosifted, left_n_cofinal, limit_probe, multi_sifted, n_sifted, product_preservation_probe,
    right_n_cofinal, CheckOptions,
};
use ncofinal::colimit::{
    colim_finset, colim_in_category, lim_finset, representable_colim_check, reshape_build,
};
use ncofinal::delta::{
    delta_inclusion, delta_leq, delta_s_into_delta, delta_s_leq, enumerate_injections,
    enumerate_monotone, enumerate_surjections, MonotoneMap,
};
use ncofinal::diagram::{SSetDiagram, SetDiagram};
use ncofinal::fincat::{
    category_of_elements, category_of_simplices, concrete_category, concrete_category_with_maps,
    coslice, coslice_along, multislice, nerve, opposite, product, slice_along, FinCategory,
    Functor, SetMap,
};
use ncofinal::fixtures::{no_coequalizer_reflexive, no_coequalizer_uv};
use ncofinal::random::{random_category, rng};
use ncofinal::sset::SSet;
use ncofinal::topology::{
    circle, connectivity, homology, mod_p_betti, pi1_presentation, projective_plane,
    smith_normal_form, weak_contractible, IntMatrix, Verdict, DEFAULT_TIETZE_BUDGET,
};

fn arc(c: FinCategory) -> Arc<FinCategory> {
    Arc::new(c)
}

fn obj(c: &FinCategory, id: &str) -> usize {
    c.object(id).unwrap()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn mm(target: usize, values: &[usize]) -> MonotoneMap {
    MonotoneMap::new(target, values.to_vec()).unwrap()
}

// The category generated by `maps`, with each object's set acting on itself.
fn tautological(objects: &[(&str, usize)], maps: &[SetMap]) -> SetDiagram {
    let objects: Vec<(String, usize)> = objects.iter().map(|&(n, k)| (n.to_string(), k)).collect();
    let (c, all) = concrete_category_with_maps(&objects, maps, 64).unwrap();
    let sizes = objects.iter().map(|o| o.1).collect();
    let actions = all.iter().map(|m| m.values.clone()).collect();
    SetDiagram::new(Arc::new(c), sizes, actions).unwrap()
}

#[test]
fn composing_cofaces() {
    let d2 = MonotoneMap::coface(3, 2).unwrap();
    let d0 = MonotoneMap::coface(2, 0).unwrap();
    let g = d2.compose(&d0).unwrap();
    // pointwise: 0 ↦ 1 ↦ 1, 1 ↦ 2 ↦ 3
    let pointwise: Vec<usize> = (0..2).map(|i| d2.apply(d0.apply(i))).collect();
    assert_eq!(g.values(), pointwise.as_slice());
    assert_eq!(g, mm(3, &[1, 3]));
}

#[test]
fn epi_mono_factorization_is_unique() {
    let f = mm(2, &[0, 0, 2]);
    let (s, i) = f.ez_factor();
    assert_eq!((s, i), (mm(1, &[0, 0, 1]), mm(2, &[0, 2])));
    let mut found = Vec::new();
    for k in 0..=2 {
        for s in enumerate_surjections(2, k) {
            for i in enumerate_injections(k, 2) {
                if i.compose(&s).unwrap() == f {
                    found.push((s.clone(), i));
                }
            }
        }
    }
    assert_eq!(found.len(), 1);
}

#[test]
fn monotone_map_counts() {
    for (m, n) in [(1, 1), (0, 2), (2, 3), (3, 2)] {
        assert_eq!(enumerate_monotone(m, n).len(), binomial(m + n + 1, m + 1));
    }
    assert_eq!(enumerate_monotone(1, 1).len(), 3);
    assert_eq!(enumerate_monotone(0, 2).len(), 3);
}

#[test]
fn truncated_simplex_categories() {
    let d = delta_leq(1);
    let ds = delta_s_leq(1);
    let (a, b) = (obj(&d, "[0]"), obj(&d, "[1]"));
    let sizes =
        |c: &FinCategory| [(a, a), (a, b), (b, a), (b, b)].map(|(x, y)| c.hom_vec(x, y).len());
    assert_eq!(sizes(&d), [1, 2, 1, 3]);
    assert_eq!(sizes(&ds), [1, 2, 0, 1]);
}

#[test]
fn products_multiply_hom_sets() {
    let d = delta_leq(1);
    let p = product(&d, &d);
    assert!(p.is_valid());
    assert_eq!(p.object_count(), 4);
    let mut expected = 0;
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for e in 0..2 {
                    expected += d.hom_vec(a, c).len() * d.hom_vec(b, e).len();
                }
            }
        }
    }
    assert_eq!(expected, 49);
    assert_eq!(p.morphism_count(), expected);
}

#[test]
fn coslices_of_the_injective_opposite() {
    let c = arc(opposite(&delta_s_leq(1)));
    let (u0, _) = coslice(&c, obj(&c, "[0]")).unwrap();
    let (u1, _) = coslice(&c, obj(&c, "[1]")).unwrap();
    assert_eq!(u0.object_count(), 1);
    assert_eq!(u1.object_count(), 3);
}

#[test]
fn diagonal_coslices() {
    let c = arc(opposite(&delta_s_leq(1)));
    let diag = Functor::diagonal(&c);
    let d = diag.codomain().object("([0],[1])").unwrap();
    let (k, _) = coslice_along(&diag, d).unwrap();
    assert_eq!(k.object_count(), 2);
    assert_eq!(k.morphism_count(), 2);
    assert_eq!(k.component_count(), 2);

    let c = arc(delta_leq(1));
    let diag = Functor::diagonal(&c);
    let d = diag.codomain().object("([1],[1])").unwrap();
    // pairs of maps out of [1]: 1·1 into [0], 3·3 into [1]
    let (k, _) = coslice_along(&diag, d).unwrap();
    assert_eq!(k.object_count(), 1 + 3 * 3);
    // pairs of maps into [1]: 2·2 from [0], 3·3 from [1]
    let (k, _) = slice_along(&diag, d).unwrap();
    assert_eq!(k.object_count(), 2 * 2 + 3 * 3);
}

#[test]
fn multislice_of_the_sifting_counterexample() {
    let c = arc(opposite(&delta_s_leq(1)));
    let (m, _) = multislice(&c, &[obj(&c, "[0]"), obj(&c, "[1]")]).unwrap();
    assert_eq!(m.object_count(), 2);
    assert_eq!(m.morphism_count(), 2);
    assert_eq!(ncofinal::topology::pi0(&nerve(&m, 1).sset).count, 2);
}

#[test]
fn nerve_of_the_injective_opposite() {
    let c = arc(opposite(&delta_s_leq(1)));
    let s = nerve(&c, 2).sset;
    assert_eq!(s.generator_count(0), 2);
    assert_eq!(s.generator_count(1), 2);
    assert_eq!(s.generator_count(2), 0);
}

#[test]
fn simplices_of_a_point() {
    let sc = category_of_simplices(&SSet::standard(0).extend_truncation(1), 1, false).unwrap();
    let c = &sc.category;
    assert_eq!(c.object_count(), 2);
    let (v, e) = if sc.simplices[0].dim() == 0 {
        (0, 1)
    } else {
        (1, 0)
    };
    assert_eq!(c.hom_vec(v, e).len() + c.hom_vec(e, v).len(), 3);
    assert_eq!(c.hom_vec(e, e).len(), 3);
}

#[test]
fn elements_over_the_walking_arrow() {
    let x = tautological(&[("a", 2), ("b", 1)], &[SetMap::new("f", 0, 1, vec![0, 0])]);
    let g = category_of_elements(&x);
    assert_eq!(g.category.object_count(), 3);
    let non_identity = (0..g.category.morphism_count())
        .filter(|&m| !g.category.is_identity(m))
        .count();
    assert_eq!(non_identity, 2);
}

#[test]
fn simplex_level_counts() {
    let d1 = SSet::standard(1).extend_truncation(2);
    assert_eq!(d1.simplex_count(2).unwrap(), enumerate_monotone(2, 1).len());
    assert_eq!(d1.simplex_count(2).unwrap(), 4);

    let b2 = SSet::boundary(2).unwrap();
    // three vertices with one surjection [2] ↠ [0], three edges with two [2] ↠ [1]
    let expected = 3 * enumerate_surjections(2, 0).len() + 3 * enumerate_surjections(2, 1).len();
    assert_eq!(b2.simplex_count(2).unwrap(), expected);
    assert_eq!(expected, 9);

    let d1 = SSet::standard(1).extend_truncation(2);
    let sq = d1.product(&d1, 2).unwrap();
    assert_eq!(sq.simplex_count(1).unwrap(), 9);
    assert_eq!(sq.generator_count(1), 5);
    assert_eq!(sq.generator_count(2), 2);
}

#[test]
fn parallel_pair_colimit_and_limit() {
    let x = tautological(
        &[("s", 2), ("t", 2)],
        &[
            SetMap::new("f", 0, 1, vec![0, 1]),
            SetMap::new("g", 0, 1, vec![1, 0]),
        ],
    );
    assert_eq!(colim_finset(&x).classes, 1);
    assert_eq!(lim_finset(&x).len(), 0);
}

#[test]
fn reshaping_a_diagram_over_an_edge() {
    let base = SSet::standard(1).extend_truncation(2);
    let f = SSetDiagram::new(base, vec![1, 1], vec![vec![0]]).unwrap();
    let r = reshape_build(&f, 1).unwrap();
    assert_eq!(r.simplices[0].len(), 2);
    assert_eq!(r.simplices[1].len(), 3);
    assert_eq!(
        r.simplices[1].iter().filter(|s| s.is_degenerate()).count(),
        2
    );
    assert_eq!(colim_finset(&r.diagram).classes, 1);
}

#[test]
fn colimits_inside_finite_categories() {
    let w = colim_in_category(&no_coequalizer_reflexive()).expect("reflexive coequalizer");
    assert_eq!(
        no_coequalizer_reflexive().codomain().object_id(w.object),
        "c"
    );
    assert!(colim_in_category(&no_coequalizer_uv()).is_none());

    let d = arc(delta_leq(1));
    let two = arc(FinCategory::discrete(&["x", "y"]));
    let pair = Functor::constant(&two, &d, obj(&d, "[0]"));
    assert!(colim_in_category(&pair).is_none());
}

#[test]
fn representable_colimit_with_a_disconnected_slice() {
    let arrow = arc(concrete_category(
        &[("a".into(), 1), ("b".into(), 1)],
        &[SetMap::new("f", 0, 1, vec![0])],
        8,
    )
    .unwrap());
    let two = arc(FinCategory::discrete(&["x", "y"]));
    let p = Functor::new(
        two.clone(),
        arrow.clone(),
        vec![0, 1],
        vec![arrow.identity(0), arrow.identity(1)],
    )
    .unwrap();
    let r = representable_colim_check(&p, 1).unwrap();
    assert_eq!(r.comma_components, 2);
    assert_eq!(r.colim_classes, 2);
    assert!(r.holds);
}

#[test]
fn smith_form_of_a_small_matrix() {
    let s = smith_normal_form(&IntMatrix::from_i64(&[vec![2, 4], vec![6, 8]]), true);
    assert_eq!(s.factors, vec![BigInt::from(2), BigInt::from(4)]);
    // |det| = 2·8 − 4·6 in absolute value
    assert_eq!(&s.factors[0] * &s.factors[1], BigInt::from(8));
}

#[test]
fn homology_of_small_spaces() {
    let h = homology(&SSet::boundary(3).unwrap());
    assert_eq!((h[0].betti, h[1].betti, h[2].betti), (1, 0, 1));
    assert!(h.iter().all(|g| g.torsion.is_empty()));

    let rp2 = projective_plane();
    let h = homology(&rp2);
    assert_eq!((h[0].betti, h[1].betti), (1, 0));
    assert_eq!(h[1].torsion, vec![BigInt::from(2)]);
    assert_ne!(mod_p_betti(&rp2, 2), mod_p_betti(&rp2, 3));
}

#[test]
fn fundamental_group_presentations() {
    let s = circle();
    let p = pi1_presentation(&s, s.generator_id(0, 0)).unwrap();
    assert_eq!((p.generators.len(), p.relators.len()), (1, 0));
    let b = SSet::boundary(2).unwrap();
    let p = pi1_presentation(&b, b.generator_id(0, 0)).unwrap();
    assert_eq!((p.generators.len(), p.relators.len()), (1, 0));
}

#[test]
fn connectivity_verdicts() {
    let b3 = SSet::boundary(3).unwrap();
    assert_eq!(
        connectivity(&b3, 2, DEFAULT_TIETZE_BUDGET).verdict,
        Verdict::Yes
    );
    assert_eq!(
        connectivity(&b3, 3, DEFAULT_TIETZE_BUDGET).verdict,
        Verdict::No
    );
    assert_eq!(
        connectivity(&circle(), 2, DEFAULT_TIETZE_BUDGET).verdict,
        Verdict::No
    );
    assert_eq!(
        weak_contractible(&SSet::boundary(2).unwrap(), DEFAULT_TIETZE_BUDGET).verdict,
        Verdict::No
    );
}

#[test]
fn cofinality_of_simplex_inclusions() {
    assert_eq!(
        right_n_cofinal(&delta_inclusion(1, 2).opposite(), 1)
            .unwrap()
            .overall,
        Verdict::Yes
    );
    assert_eq!(
        left_n_cofinal(&delta_s_into_delta(1), 1).unwrap().overall,
        Verdict::Yes
    );
    assert_eq!(
        left_n_cofinal(&delta_inclusion(1, 2), 1).unwrap().overall,
        Verdict::Yes
    );
}

#[test]
fn limit_probes() {
    assert!(limit_probe(&delta_s_into_delta(1), 20, 1).unwrap().passed());
    // [1] alone: nothing in the image maps to [0], so the slice over [0] is empty
    let ds = arc(delta_s_leq(1));
    let p = Functor::full_inclusion(&ds, &[obj(&ds, "[1]")]);
    assert_eq!(left_n_cofinal(&p, 0).unwrap().overall, Verdict::No);
    assert!(limit_probe(&p, 20, 1).unwrap().counterexample.is_some());
}

#[test]
fn siftedness_of_truncations() {
    let d = arc(delta_leq(1));
    assert_eq!(
        cosifted(&d, Some(1), &CheckOptions::default()).overall,
        Verdict::Yes
    );
    let c = arc(opposite(&delta_s_leq(1)));
    let r = n_sifted(&c, 1);
    assert_eq!(r.overall, Verdict::No);
    assert_eq!(
        r.witness.unwrap().objects,
        vec!["[0]".to_string(), "[1]".to_string()]
    );
}

#[test]
fn product_probes() {
    let c = arc(opposite(&delta_s_leq(1)));
    let r = product_preservation_probe(&c, 20, 3);
    assert!(r.counterexample.is_some());
    let sifted = arc(opposite(&delta_leq(1)));
    assert!(product_preservation_probe(&sifted, 20, 3).passed());
}

#[test]
fn pair_tuples_agree_with_siftedness() {
    for seed in 0..50u64 {
        let c = arc(random_category(&mut rng(seed), 3, 7));
        for n in [0, 1] {
            assert_eq!(
                multi_sifted(&c, n, 2).overall,
                n_sifted(&c, n).overall,
                "seed {seed}, n {n}"
            );
        }
    }
}
