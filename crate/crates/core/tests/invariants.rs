mod common;

use metrize::bns::is_t0;
use metrize::builtin::{er_plus, er_well_above, ExtendedRational};
use metrize::continuity::{all_maps, finite_space, preorder_space};
use metrize::omega::{
    enumerate_omega, enumerate_omega_width, flagg_distance, flagg_family, flagg_space, omega_join, omega_le,
    omega_meet, omega_plus, omega_well_above, OmegaElement,
};
use metrize::topology::{enumerate_preorders, enumerate_topologies, FiniteTopology};
use metrize::{FiniteLattice, Quantale};
use proptest::prelude::*;

#[test]
fn meet_criterion_matches_definition_oracle() {
    for (name, l) in common::small_lattices().into_iter().filter(|(_, l)| l.size() <= 12) {
        for y in 0..l.size() {
            for x in 0..l.size() {
                assert_eq!(l.well_above(y, x), common::oracle_well_above(&l, y, x), "{name}: {x} ≺ {y}");
            }
        }
    }
}

#[test]
fn well_above_is_monotone_and_below_order() {
    for (name, l) in common::small_lattices() {
        let n = l.size();
        for y in 0..n {
            for x in 0..n {
                if !l.well_above(y, x) {
                    continue;
                }
                assert!(l.leq(x, y), "{name}: x ≺ y must give x ≤ y");
                for x2 in (0..n).filter(|&x2| l.leq(x2, x)) {
                    for y2 in (0..n).filter(|&y2| l.leq(y, y2)) {
                        assert!(l.well_above(y2, x2), "{name}");
                    }
                }
            }
        }
    }
}

#[test]
fn distributivity_flags_on_known_lattices() {
    assert!(FiniteLattice::powerset(3).unwrap().is_completely_distributive());
    assert!(FiniteLattice::chain(5).unwrap().is_value_distributive());
    assert!(!common::m3().is_completely_distributive());
    assert!(!common::n5().is_completely_distributive());
    // B2: the positives {a, b, inf} are not closed under meet.
    assert!(!FiniteLattice::powerset(2).unwrap().is_value_distributive());
}

#[test]
fn flagg_distances_are_principal_and_satisfy_the_closed_form_triangle() {
    for n in 0..=4 {
        for t in enumerate_topologies(n).unwrap() {
            let w = t.opens().len();
            for x in 0..n {
                for y in 0..n {
                    let d = flagg_distance(&t, x, y).unwrap();
                    assert!(d.is_principal());
                    for z in 0..n {
                        // Gmax(x,y) ∩ Gmax(y,z) ⊆ Gmax(x,z), i.e. d(x,z) ≤ d(x,y) + d(y,z).
                        let lhs = flagg_family(&t, x, y) & flagg_family(&t, y, z);
                        assert_eq!(lhs & !flagg_family(&t, x, z), 0, "{t}");
                        let sum = omega_plus(&d, &flagg_distance(&t, y, z).unwrap()).unwrap();
                        assert!(omega_le(&flagg_distance(&t, x, z).unwrap(), &sum).unwrap());
                    }
                }
                assert!(flagg_distance(&t, x, x).unwrap() == OmegaElement::zero(w));
            }
            assert!(flagg_space(&t).unwrap().check_axioms().passed);
        }
    }
}

#[test]
fn omega_well_above_matches_the_lattice_criterion() {
    for width in 1..=4 {
        let e = enumerate_omega_width(width).unwrap();
        let l = e.quantale.lattice();
        for (i, eps) in e.elements.iter().enumerate() {
            for (j, d) in e.elements.iter().enumerate() {
                assert_eq!(omega_well_above(eps, d).unwrap(), l.well_above(i, j), "width {width}: {d:?} ≺ {eps:?}");
            }
        }
    }
}

#[test]
fn omega_tables_match_a_validated_lattice() {
    for width in 1..=4 {
        let e = enumerate_omega_width(width).unwrap();
        let n = e.size();
        let leq: Vec<Vec<bool>> =
            (0..n).map(|a| (0..n).map(|b| omega_le(&e.elements[a], &e.elements[b]).unwrap()).collect()).collect();
        let checked = FiniteLattice::new(e.quantale.lattice().names().to_vec(), leq).unwrap();
        assert_eq!(checked.leq_table(), e.quantale.lattice().leq_table());
        for a in 0..n {
            for b in 0..n {
                let (ea, eb) = (&e.elements[a], &e.elements[b]);
                assert_eq!(e.elements[checked.meet2(a, b)], omega_meet(ea, eb).unwrap());
                assert_eq!(e.elements[checked.join2(a, b)], omega_join(ea, eb).unwrap());
                assert_eq!(e.elements[e.quantale.add(a, b)], omega_plus(ea, eb).unwrap());
            }
        }
        assert!(e.elements[0].is_zero() && e.elements[n - 1].is_top());
    }
}

#[test]
fn omega_sizes_are_dedekind_numbers() {
    let sizes: Vec<usize> = (1..=4).map(|w| enumerate_omega_width(w).unwrap().size()).collect();
    assert_eq!(sizes, vec![3, 6, 20, 168]);
    assert_eq!(enumerate_omega(&FiniteTopology::sierpinski()).unwrap().size(), 20);
}

#[test]
fn specialization_preorder_is_antisymmetric_iff_t0() {
    for n in 0..=4 {
        for t in enumerate_topologies(n).unwrap() {
            let r = t.specialization_preorder();
            assert!(r.is_preorder());
            assert_eq!(r.is_antisymmetric(), is_t0(&t), "{t}");
        }
    }
}

#[test]
fn balls_grow_with_the_radius() {
    for t in enumerate_topologies(3).unwrap() {
        let s = flagg_space(&t).unwrap();
        let basis = s.basis().to_vec();
        for x in 0..3 {
            for a in &basis {
                for b in &basis {
                    if s.quantale().le(a, b) {
                        let (ba, bb) = (s.open_ball(x, a).unwrap(), s.open_ball(x, b).unwrap());
                        assert_eq!(ba & !bb, 0, "B_a ⊆ B_b when a ≤ b");
                    }
                }
            }
        }
    }
}

#[test]
fn preorders_and_alexandrov_topologies_correspond() {
    for n in 1..=3 {
        for r in enumerate_preorders(n).unwrap() {
            let s = preorder_space(&r).unwrap();
            let t = s.open_sets().unwrap();
            assert_eq!(t, r.alexandrov_topology().unwrap());
            assert_eq!(t.specialization_preorder(), r);
        }
    }
}

#[test]
fn finite_chain_spaces_are_discrete_when_separated() {
    let q = metrize::builtin::make_chain(3).unwrap();
    let s = finite_space(q, vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]]).unwrap();
    assert_eq!(s.open_sets().unwrap(), FiniteTopology::discrete(3).unwrap());
    assert_eq!(all_maps(3, 3).count(), 27);
}

fn omega_element(width: usize) -> impl Strategy<Value = OmegaElement> {
    let mask = (1u64 << width) - 1;
    prop::collection::vec(0..=mask, 0..5).prop_map(move |fams| OmegaElement::new(width, fams).unwrap())
}

fn ext_rational() -> impl Strategy<Value = ExtendedRational> {
    prop_oneof![
        1 => Just(ExtendedRational::Infinity),
        6 => (0i64..1000, 1i64..50).prop_map(|(p, q)| ExtendedRational::ratio(p, q).unwrap()),
    ]
}

proptest! {
    #[test]
    fn omega_lattice_laws(a in omega_element(5), b in omega_element(5), c in omega_element(5)) {
        let meet = |x: &OmegaElement, y: &OmegaElement| omega_meet(x, y).unwrap();
        let join = |x: &OmegaElement, y: &OmegaElement| omega_join(x, y).unwrap();
        let le = |x: &OmegaElement, y: &OmegaElement| omega_le(x, y).unwrap();
        prop_assert_eq!(meet(&a, &b), meet(&b, &a));
        prop_assert_eq!(join(&a, &join(&b, &c)), join(&join(&a, &b), &c));
        prop_assert_eq!(meet(&a, &join(&a, &b)), a.clone());
        prop_assert!(le(&meet(&a, &b), &a) && le(&a, &join(&a, &b)));
        prop_assert_eq!(le(&a, &b), meet(&a, &b) == a);
        // + distributes over binary meets
        prop_assert_eq!(omega_plus(&a, &meet(&b, &c)).unwrap(), meet(&join(&a, &b), &join(&a, &c)));
        prop_assert!(le(&OmegaElement::zero(5), &a) && le(&a, &OmegaElement::top(5)));
    }

    #[test]
    fn omega_well_above_is_below_and_monotone(a in omega_element(4), b in omega_element(4), c in omega_element(4)) {
        if omega_well_above(&b, &a).unwrap() {
            prop_assert!(omega_le(&a, &b).unwrap());
            if omega_le(&c, &a).unwrap() {
                prop_assert!(omega_well_above(&b, &c).unwrap());
            }
        }
    }

    #[test]
    fn extended_rational_arithmetic(a in ext_rational(), b in ext_rational(), c in ext_rational()) {
        prop_assert_eq!(er_plus(&a, &b), er_plus(&b, &a));
        prop_assert_eq!(er_plus(&a, &er_plus(&b, &c)), er_plus(&er_plus(&a, &b), &c));
        prop_assert_eq!(er_plus(&a, &ExtendedRational::zero()), a.clone());
        if a <= b {
            prop_assert!(er_plus(&a, &c) <= er_plus(&b, &c));
        }
        prop_assert_eq!(er_well_above(&b, &a), a < b);
        let text = a.to_string();
        prop_assert_eq!(text.parse::<ExtendedRational>().unwrap(), a);
    }

    #[test]
    fn topology_documents_round_trip(n in 0usize..=4, pick in any::<prop::sample::Index>()) {
        let all = enumerate_topologies(n).unwrap();
        let t = &all[pick.index(all.len())];
        let doc = metrize::formats::TopologyDoc::from_topology(t, metrize::formats::TopologyDoc::default_names(n));
        let text = serde_json::to_string(&doc).unwrap();
        let back: metrize::formats::TopologyDoc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back.to_topology().unwrap(), t);
    }

    #[test]
    fn meets_are_greatest_lower_bounds(which in 0usize..4, xs in prop::collection::vec(0usize..64, 0..6)) {
        let l = vec![FiniteLattice::powerset(3).unwrap(), common::n5(), common::m3(), FiniteLattice::chain(7).unwrap()]
            .swap_remove(which);
        let set: Vec<usize> = xs.iter().map(|x| x % l.size()).collect();
        let m = l.meet(&set).unwrap();
        prop_assert!(set.iter().all(|&s| l.leq(m, s)));
        for z in 0..l.size() {
            if set.iter().all(|&s| l.leq(z, s)) {
                prop_assert!(l.leq(z, m));
            }
        }
    }
}
