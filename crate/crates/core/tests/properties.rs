//! Property tests for the structural invariants.

use proptest::prelude::*;

use ngrpd::fincat::{FinMap, FinSetObj, Site};
use ngrpd::formats;
use ngrpd::galois::{cover_from_action, fiber_functor, pull_out_action, push_in_action, PermAction};
use ngrpd::grpd::{is_n_groupoid, small_simplicial_sets, Dim};
use ngrpd::gset::{FiniteGroup, GroupSpec};
use ngrpd::localization::{
    check_hammock, hammock_simplices, span_components, validate_marked_category, MarkedRelCategory,
};
use ngrpd::report::{to_sorted_json, Status};
use ngrpd::simp::{OrdinalMap, SimplicialObject};

/// A poset on `n` points from a strict upper-triangular relation, closed
/// transitively, with `W` the arrows between equally coloured points.
fn poset(n: usize, rel: &[bool], colour: &[usize], h_is_w: bool) -> Option<MarkedRelCategory> {
    let mut le = vec![vec![false; n]; n];
    let mut k = 0;
    for i in 0..n {
        le[i][i] = true;
        for j in i + 1..n {
            le[i][j] = rel[k];
            k += 1;
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][m] && le[m][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let mut arrows = Vec::new();
    let mut index = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        for j in 0..n {
            if le[i][j] {
                index[i][j] = arrows.len();
                arrows.push((format!("{i}<={j}"), i, j));
            }
        }
    }
    if arrows.len() > 12 {
        return None;
    }
    let identity = (0..n).map(|i| index[i][i]).collect();
    let w: Vec<bool> = arrows.iter().map(|(_, i, j)| colour[*i] == colour[*j]).collect();
    let h = if h_is_w { w.clone() } else { arrows.iter().map(|(_, i, j)| i == j).collect() };
    let f = vec![true; arrows.len()];
    let src: Vec<(usize, usize)> = arrows.iter().map(|(_, i, j)| (*i, *j)).collect();
    let compose = |a: usize, b: usize| {
        let ((i, j), (j2, k)) = (src[a], src[b]);
        (j == j2).then(|| index[i][k])
    };
    Some(
        MarkedRelCategory::from_parts((0..n).map(|i| format!("P{i}")).collect(), arrows, identity, compose, w, h, f)
            .unwrap(),
    )
}

/// The transformation monoid on three points generated by `gens`, with `W`
/// its bijections.
fn monoid(gens: &[[usize; 3]], h_is_w: bool) -> Option<MarkedRelCategory> {
    let mut elems: Vec<[usize; 3]> = vec![[0, 1, 2]];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let e = elems[i];
            let next = [g[e[0]], g[e[1]], g[e[2]]];
            if !elems.contains(&next) {
                elems.push(next);
            }
        }
        i += 1;
        if elems.len() > 12 {
            return None;
        }
    }
    let bij = |e: &[usize; 3]| {
        let mut s = *e;
        s.sort();
        s == [0, 1, 2]
    };
    let w: Vec<bool> = elems.iter().map(bij).collect();
    let h = if h_is_w { w.clone() } else { (0..elems.len()).map(|a| a == 0).collect() };
    let arrows = (0..elems.len()).map(|a| (format!("t{a}"), 0, 0)).collect();
    let compose = |a: usize, b: usize| {
        let (f, g) = (elems[a], elems[b]);
        let gf = [g[f[0]], g[f[1]], g[f[2]]];
        elems.iter().position(|e| *e == gf)
    };
    Some(
        MarkedRelCategory::from_parts(vec!["M".into()], arrows, vec![0], compose, w, h, vec![true; elems.len()]).unwrap(),
    )
}

fn arb_poset(h_is_w: bool) -> impl Strategy<Value = MarkedRelCategory> {
    (1usize..=4)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(any::<bool>(), n * (n - 1) / 2), prop::collection::vec(0usize..2, n)))
        .prop_filter_map("at most 12 arrows", move |(n, rel, colour)| poset(n, &rel, &colour, h_is_w))
}

fn arb_monoid(h_is_w: bool) -> impl Strategy<Value = MarkedRelCategory> {
    prop::collection::vec(prop::array::uniform3(0usize..3), 1..=2)
        .prop_filter_map("at most 12 elements", move |gens| monoid(&gens, h_is_w))
}

fn arb_category(h_is_w: bool) -> impl Strategy<Value = MarkedRelCategory> {
    prop_oneof![arb_poset(h_is_w), arb_monoid(h_is_w)]
}

fn arb_status() -> impl Strategy<Value = Status> {
    prop_oneof![Just(Status::Pass), Just(Status::Fail), Just(Status::Refused), Just(Status::Inconclusive)]
}

fn arb_action() -> impl Strategy<Value = PermAction> {
    (0usize..=4).prop_flat_map(|n| {
        let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        prop::collection::vec(perm, 2).prop_map(move |perms| PermAction::new(FinSetObj::numbered(n), perms).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_marked_categories_validate(c in arb_category(true)) {
        let v = validate_marked_category(&c);
        prop_assert!(v.passed, "{:?}", v.violations);
        for a in 0..c.arrow_count() {
            prop_assert!(!c.in_h(a) || (c.in_w(a) && c.in_f(a)));
        }
    }

    #[test]
    fn spans_with_identity_left_legs_are_the_hom_set(c in arb_category(false)) {
        for x in 0..c.object_count() {
            for y in 0..c.object_count() {
                prop_assert_eq!(span_components(&c, x, y).count, c.hom(x, y).len());
            }
        }
    }

    #[test]
    fn enumerated_hammocks_pass_the_checker(c in arb_category(true), n in 0usize..=2, k in 0usize..=1) {
        for x in 0..c.object_count() {
            for y in 0..c.object_count() {
                for h in hammock_simplices(&c, x, y, n, k).unwrap() {
                    prop_assert_eq!(check_hammock(&c, x, y, &h), Vec::<String>::new());
                }
            }
        }
    }

    #[test]
    fn status_combination_is_max_precedence(a in arb_status(), b in arb_status(), c in arb_status()) {
        prop_assert_eq!(a.combine(b), b.combine(a));
        prop_assert_eq!(a.combine(b).combine(c), a.combine(b.combine(c)));
        prop_assert_eq!(a.combine(Status::Pass), a);
        prop_assert_eq!(a.combine(Status::Fail), Status::Fail);
    }

    #[test]
    fn report_json_is_key_sorted(keys in prop::collection::hash_set("[a-z]{1,6}", 0..8)) {
        let map: std::collections::HashMap<String, usize> = keys.iter().map(|k| (k.clone(), k.len())).collect();
        let text = to_sorted_json(&map).unwrap();
        let mut sorted: Vec<&String> = keys.iter().collect();
        sorted.sort();
        let positions: Vec<usize> = sorted.iter().map(|k| text.find(&format!("\"{k}\"")).unwrap()).collect();
        prop_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(text, to_sorted_json(&map).unwrap());
    }

    #[test]
    fn finite_sets_are_sorted_and_distinct(atoms in prop::collection::btree_set("[a-z0-9]{1,4}", 0..8)) {
        let mut shuffled: Vec<&String> = atoms.iter().collect();
        shuffled.reverse();
        let set = FinSetObj::from_atoms(&shuffled).unwrap();
        prop_assert_eq!(set.len(), atoms.len());
        prop_assert!(set.labels().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn finmap_round_trips_through_json(n in 0usize..5, m in 1usize..5, seed in prop::collection::vec(0usize..100, 5)) {
        let map: Vec<usize> = (0..n).map(|i| seed[i] % m).collect();
        let f = FinMap::from_indices(FinSetObj::numbered(n), FinSetObj::numbered(m), map).unwrap();
        prop_assert_eq!(formats::finmap_from_json(&formats::finmap_to_json(&f)).unwrap(), f);
    }

    #[test]
    fn actions_round_trip_through_json_and_covers(a in arb_action()) {
        prop_assert_eq!(&formats::action_from_json(&formats::action_to_json(&a)).unwrap(), &a);
        let site = Site::graph_covers(ngrpd::galois::BasedGraph::figure_eight());
        let cover = cover_from_action(&site, &a).unwrap();
        prop_assert_eq!(fiber_functor(&site, &cover).unwrap(), a);
        let j = formats::cover_to_json(&site, &cover).unwrap();
        prop_assert_eq!(formats::cover_from_json(&site, &j).unwrap(), cover);
    }

    #[test]
    fn nerves_round_trip_through_json(g in 0usize..8, n in 1usize..=3) {
        let groups = FiniteGroup::all_of_order_at_most_six();
        let x = SimplicialObject::nerve(&Site::finsets(), &groups[g % groups.len()], n).unwrap();
        prop_assert_eq!(formats::simplicial_from_json(&formats::simplicial_to_json(&x)).unwrap(), x);
    }

    #[test]
    fn gset_objects_round_trip_through_json(g in 0usize..8, seed in 0usize..1000) {
        let groups = FiniteGroup::all_of_order_at_most_six();
        let group = groups[g % groups.len()].clone();
        let site = Site::gsets(GroupSpec::Finite(group));
        let objects = site.small_objects(3).unwrap();
        let o = &objects[seed % objects.len()];
        prop_assert_eq!(&formats::object_from_json(&site, &formats::object_to_json(&site, o)).unwrap(), o);
        prop_assert_eq!(&formats::gset_from_json(&site, &formats::gset_to_json(&site, o).unwrap()).unwrap(), o);
        let x = SimplicialObject::constant(&site, o, 2).unwrap();
        let e = pull_out_action(&x).unwrap();
        prop_assert_eq!(push_in_action(&e).unwrap(), x);
    }

    #[test]
    fn ordinal_maps_are_monotone(m in 0usize..5, k in 0usize..5) {
        for a in OrdinalMap::all(m, k) {
            prop_assert!(a.values().windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(a.values().iter().all(|&v| v <= k));
        }
    }

    #[test]
    fn group_actions_obey_the_laws(g in 0usize..8) {
        let groups = FiniteGroup::all_of_order_at_most_six();
        let group = &groups[g % groups.len()];
        let site = Site::gsets(GroupSpec::Finite(group.clone()));
        for o in site.small_objects(3).unwrap() {
            for x in 0..o.len() {
                prop_assert_eq!(o.op(group.identity(), x), Some(x));
                for a in 0..group.order() {
                    for b in 0..group.order() {
                        let ab = o.op(group.mul(a, b), x).unwrap();
                        prop_assert_eq!(o.op(a, o.op(b, x).unwrap()), Some(ab));
                    }
                }
            }
        }
    }
}

#[test]
fn groupoid_verdicts_are_monotone_in_n() {
    for x in small_simplicial_sets(2, 3).unwrap() {
        let mut previous = false;
        for n in [Dim::Finite(0), Dim::Finite(1), Dim::Infinite] {
            let now = is_n_groupoid(&x, n).unwrap().passed;
            assert!(!previous || now, "{:?} at {n:?}", x.level_sizes());
            previous = now;
        }
    }
}
