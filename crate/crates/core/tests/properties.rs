use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bwo_core::amalgam::{BookAutomorphism, BookGroup, Generator, NormalForm, Symbol, Word};
use bwo_core::jsj::{self, Permutation};
use bwo_core::repvar;
use bwo_core::rtree::{self, ArcSystem, Base, Chord, MetricLabeledTree, Rational, Spoke};
use bwo_core::teich::{self, CurveClass, PantsDecomposition};
use bwo_core::verifier::{self, BlockConstraints};

const PAGES: usize = 4;
const GENUS: usize = 2;

fn group() -> BookGroup {
    BookGroup::uniform(PAGES, GENUS).unwrap()
}

fn symbol() -> impl Strategy<Value = Symbol> {
    prop_oneof![
        8 => (1..=PAGES, 1..=GENUS, any::<bool>(), any::<bool>()).prop_map(|(p, s, is_a, inv)| {
            let g = if is_a { Generator::a(p, s) } else { Generator::b(p, s) };
            Symbol::Gen(if inv { g.inv() } else { g })
        }),
        1 => any::<bool>().prop_map(Symbol::Core),
    ]
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(symbol(), 0..max).prop_map(Word)
}

fn surface_word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((prop::sample::select(vec![1usize, 3]), 1..=GENUS, any::<bool>(), any::<bool>()), 0..max).prop_map(|xs| {
        Word(
            xs.into_iter()
                .map(|(p, s, is_a, inv)| {
                    let g = if is_a { Generator::a(p, s) } else { Generator::b(p, s) };
                    Symbol::Gen(if inv { g.inv() } else { g })
                })
                .collect(),
        )
    })
}

fn random_weight(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(1..=9), rng.gen_range(1..=4))
}

fn random_arc_system(seed: u64) -> ArcSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=8);
    let mut order: Vec<u32> = (1..=n as u32).collect();
    order.shuffle(&mut rng);
    let base = [Base::Disc, Base::Annulus, Base::Cone { order: 3 }][rng.gen_range(0..3)];
    let mut s = ArcSystem::empty(base, order);
    if base != Base::Disc && base != Base::Annulus {
        let mut gaps: Vec<usize> = (0..n).collect();
        gaps.shuffle(&mut rng);
        s.spokes = gaps[..2].iter().map(|&gap| Spoke { gap, weight: random_weight(&mut rng) }).collect();
    }
    for _ in 0..rng.gen_range(0..20) {
        let from = rng.gen_range(0..n);
        let to = rng.gen_range(from + 1..=n);
        s.chords.push(Chord { from, to, weight: random_weight(&mut rng) });
        if s.validate().is_err() {
            s.chords.pop();
        }
    }
    s
}

/// Rebuilds `t` with vertex ids permuted.
fn relabel_vertices(t: &MetricLabeledTree, seed: u64) -> MetricLabeledTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..t.vertices.len()).collect();
    perm.shuffle(&mut rng);
    let mut labels = vec![Vec::new(); perm.len()];
    for (old, &new) in perm.iter().enumerate() {
        labels[new] = t.vertices[old].labels.clone();
    }
    let refs: Vec<&[u32]> = labels.iter().map(Vec::as_slice).collect();
    let edges: Vec<(usize, usize, Rational)> = t.edges.iter().map(|e| (perm[e.v], perm[e.u], e.len)).collect();
    let mut u = MetricLabeledTree::from_parts(&refs, &edges).unwrap();
    for (old, &new) in perm.iter().enumerate() {
        u.vertices[new].peripheral = t.vertices[old].peripheral;
    }
    u.cone = t.cone.iter().map(|&v| perm[v]).collect();
    u.cone_vertex = t.cone_vertex.map(|v| perm[v]);
    u.cone_order = t.cone_order;
    u
}

fn brute_force_feasible(c: &BlockConstraints, order: &[u32]) -> bool {
    let mut parts = vec![Vec::<Vec<u32>>::new()];
    for l in 1..=order.len() as u32 {
        parts = parts
            .into_iter()
            .flat_map(|p| {
                (0..=p.len()).map(move |k| {
                    let mut q = p.clone();
                    if k == q.len() {
                        q.push(vec![l]);
                    } else {
                        q[k].push(l);
                    }
                    q
                })
            })
            .collect();
    }
    parts.iter().any(|p| verifier::is_noncrossing(order, p) && c.satisfied_by(p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduce_is_a_homomorphism(u in word(14), v in word(14)) {
        let g = group();
        prop_assert_eq!(g.reduce(&u.concat(&v)), g.mul(&g.reduce(&u), &g.reduce(&v)));
    }

    #[test]
    fn reduce_is_idempotent(w in word(20)) {
        let g = group();
        let nf = g.reduce(&w);
        prop_assert_eq!(g.reduce(&nf.to_word()), nf.clone());
        prop_assert!(g.mul(&nf, &g.inverse(&nf)).is_identity());
    }

    #[test]
    fn boundary_relator_is_trivial(u in word(10), v in word(10), page in 1..=PAGES) {
        let g = group();
        let with = u.concat(&g.boundary(page)).concat(&Word::core_power(-1)).concat(&v);
        prop_assert_eq!(g.reduce(&with), g.reduce(&u.concat(&v)));
    }

    #[test]
    fn twists_are_homomorphisms_and_invert(u in word(10), v in word(10), page in 1..=PAGES) {
        let g = group();
        let f = BookAutomorphism::twist(&g, page, 1).unwrap();
        let back = BookAutomorphism::twist(&g, page, -1).unwrap();
        let (nu, nv) = (g.reduce(&u), g.reduce(&v));
        prop_assert_eq!(f.apply(&g, &g.mul(&nu, &nv)), g.mul(&f.apply(&g, &nu), &f.apply(&g, &nv)));
        prop_assert_eq!(back.apply(&g, &f.apply(&g, &nu)), nu);
    }

    #[test]
    fn trace_is_a_class_function(w in word(8), h in word(6), seed in 0u64..4) {
        let g = group();
        let rep = repvar::build_rep(&g, seed).unwrap();
        let (nw, nh) = (g.reduce(&w), g.reduce(&h));
        let a = repvar::evaluate_class(&rep, &g, &nw);
        let b = repvar::evaluate_class(&rep, &g, &g.conjugate(&nh, &nw));
        prop_assume!(!a.overflow && !b.overflow);
        prop_assert!((a.trace - b.trace).norm() <= 1e-6 * a.trace.norm().max(1.0), "{} vs {}", a.trace, b.trace);
    }

    #[test]
    fn phi_fixes_surface_traces(w in surface_word(10), i in 1usize..8) {
        let g = BookGroup::uniform(PAGES, GENUS).unwrap();
        let phi = verifier::counterexample_automorphism(&g).unwrap();
        let rep = repvar::build_rep(&g, 11).unwrap();
        let nw = g.reduce(&w);
        let mut x = nw.clone();
        for _ in 0..i {
            x = phi.apply(&g, &x);
        }
        let d = (repvar::evaluate_class(&rep, &g, &x).trace - repvar::evaluate_class(&rep, &g, &nw).trace).norm();
        prop_assert!(d <= 1e-6);
    }

    #[test]
    fn representation_matrices_are_unimodular(w in word(12), seed in 0u64..8) {
        let g = group();
        let rep = repvar::build_rep(&g, seed).unwrap();
        let e = repvar::evaluate(&rep, &g.reduce(&w));
        prop_assume!(!e.overflow);
        // ad - bc loses digits in proportion to the entry products
        let scale = e.matrix.max_norm().powi(2).max(1.0);
        prop_assert!((e.matrix.det() - num_complex::Complex64::new(1.0, 0.0)).norm() < 1e-9 * scale, "det {} at scale {scale:e}", e.matrix.det());
        prop_assert!(rep.relator_residual() < repvar::RESIDUAL_TOL);
    }

    #[test]
    fn shuffle_by_inverse_restores(images in Just((1..=6).collect::<Vec<usize>>()).prop_shuffle()) {
        let book = jsj::build_book(6, (1..=6).map(|k| jsj::PageSpec::new(k).unwrap()).collect(), 1).unwrap();
        let p = Permutation::from_images(images).unwrap();
        let there = jsj::shuffle(&book, &p).unwrap();
        let back = jsj::shuffle(&there, &p.inverse()).unwrap();
        prop_assert_eq!(jsj::classify_pair(&book, &back), jsj::PairClass::Homeomorphic);
        prop_assert_eq!(jsj::window(&there).len(), 6);
    }

    #[test]
    fn dihedral_canonical_is_invariant(word in prop::collection::vec(0u8..4, 1..9), r in 0usize..9, flip in any::<bool>()) {
        let n = word.len();
        let mut moved: Vec<u8> = (0..n).map(|k| word[(k + r) % n]).collect();
        if flip {
            moved.reverse();
        }
        prop_assert_eq!(jsj::dihedral_canonical(&moved), jsj::dihedral_canonical(&word));
    }

    #[test]
    fn feasibility_matches_enumeration(
        order in Just((1..=6u32).collect::<Vec<u32>>()).prop_shuffle(),
        same in prop::collection::vec((1..=6u32, 1..=6u32), 0..3),
        distinct in prop::collection::vec((1..=6u32, 1..=6u32), 0..3),
    ) {
        let same: Vec<_> = same.into_iter().filter(|(a, b)| a != b).collect();
        let distinct: Vec<_> = distinct.into_iter().filter(|(a, b)| a != b).collect();
        let Ok(c) = BlockConstraints::new(6, &same, &distinct) else { return Ok(()) };
        let fast = verifier::noncrossing_feasibility(&c, &order).unwrap();
        prop_assert_eq!(fast.is_some(), brute_force_feasible(&c, &order));
        if let Some(p) = fast {
            prop_assert!(verifier::is_noncrossing(&order, &p) && c.satisfied_by(&p));
        }
    }

    #[test]
    fn arc_systems_round_trip(seed in any::<u64>()) {
        let s = random_arc_system(seed);
        let json = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(&ArcSystem::from_json(&json).unwrap(), &s);
        let t = rtree::dual_tree(&s).unwrap();
        prop_assert_eq!(t.total_length(), s.total_weight());
        let back = rtree::dual_tree(&rtree::realize(&t, s.order.len()).unwrap().arcs).unwrap();
        prop_assert!(rtree::trees_isomorphic(&back, &t));
    }

    #[test]
    fn canonical_form_ignores_vertex_ids(seed in any::<u64>(), perm_seed in any::<u64>()) {
        let t = rtree::dual_tree(&random_arc_system(seed)).unwrap();
        let u = relabel_vertices(&t, perm_seed);
        prop_assert!(rtree::trees_isomorphic(&t, &u));
        let back = MetricLabeledTree::from_json(&u.to_json()).unwrap();
        prop_assert_eq!(rtree::canonical_form(&back), rtree::canonical_form(&t));
    }

    #[test]
    fn surviving_subsurface_is_stable(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pants = rng.gen_range(1..=5);
        let mut slots: Vec<(usize, usize)> = (0..pants).flat_map(|p| (0..3).map(move |s| (p, s))).collect();
        slots.shuffle(&mut rng);
        let k = rng.gen_range(0..=slots.len() / 2);
        let p = PantsDecomposition {
            pants,
            curves: (0..k).map(|i| teich::Curve { name: format!("c{i}"), ends: [slots[2 * i], slots[2 * i + 1]] }).collect(),
            boundary: slots[2 * k..].iter().enumerate().map(|(i, &at)| teich::BoundaryLeg { name: format!("d{i}"), at }).collect(),
        };
        let choices = [CurveClass::Converges, CurveClass::Shrinks, CurveClass::TwistDiverges];
        let classes: BTreeMap<String, CurveClass> = p.curves.iter().map(|c| (c.name.clone(), choices[rng.gen_range(0..3)])).collect();
        let s = teich::surviving_subsurface(&p, &classes).unwrap();
        let q = teich::induced_decomposition(&p, &s);
        prop_assert!(q.validate().is_ok());
        let again = teich::surviving_subsurface(&q, &classes).unwrap();
        prop_assert_eq!(&again.kept_curves, &s.kept_curves);
        prop_assert_eq!(&again.components, &s.components);
        prop_assert!(again.frontier_curves.is_empty());
    }
}

#[test]
fn identity_is_a_fixed_point() {
    let g = group();
    let id = BookAutomorphism::identity(&g);
    let w = g.reduce(&g.parse("a1 b2 T a3.2 t B4").unwrap());
    assert_eq!(id.apply(&g, &w), w);
    assert_eq!(NormalForm::identity(), g.reduce(&Word::identity()));
}
