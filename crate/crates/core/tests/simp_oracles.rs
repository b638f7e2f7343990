use ngrpd::fincat::{FinSetObj, Site};
use ngrpd::gset::FiniteGroup;
use ngrpd::simp::{extend_by_fillers, hom_into, FiniteSimplicialSet, SimplicialObject};

fn shapes(n: usize) -> Vec<(String, FiniteSimplicialSet)> {
    let mut out = Vec::new();
    for k in 0..=n {
        out.push((format!("Δ^{k}"), FiniteSimplicialSet::standard_simplex(k, n)));
        out.push((format!("∂Δ^{k}"), FiniteSimplicialSet::boundary(k, n).unwrap()));
        for i in 0..=k {
            if k > 0 {
                out.push((format!("Λ^{k}_{i}"), FiniteSimplicialSet::horn(k, i, n).unwrap()));
            }
        }
    }
    out
}

fn targets(n: usize) -> Vec<(String, SimplicialObject)> {
    let site = Site::finsets();
    let a = site.plain_object(FinSetObj::numbered(3)).unwrap();
    let b = site.plain_object(FinSetObj::numbered(2)).unwrap();
    let f = site.morphism(&a, &b, vec![0, 0, 1]).unwrap();
    vec![
        ("BZ2".into(), SimplicialObject::nerve(&site, &FiniteGroup::cyclic(2), n).unwrap()),
        ("BZ3".into(), SimplicialObject::nerve(&site, &FiniteGroup::cyclic(3), n).unwrap()),
        ("Cech".into(), SimplicialObject::cech(&site, &f, n).unwrap()),
        ("Δ^1".into(), SimplicialObject::from_simplicial_set(&site, &FiniteSimplicialSet::standard_simplex(1, n)).unwrap()),
    ]
}

/// The limit construction agrees with a direct search over simplicial maps.
#[test]
fn hom_object_matches_enumerated_simplicial_maps() {
    let n = 3;
    let site = Site::finsets();
    for (xname, x) in targets(n) {
        for (sname, s) in shapes(n) {
            let direct = SimplicialObject::from_simplicial_set(&site, &s).unwrap().hom_set(&x, 1_000_000).unwrap().len();
            let via_limit = hom_into(&s, &x).unwrap().object().len();
            assert_eq!(via_limit, direct, "Hom({sname}, {xname})");
        }
    }
}

#[test]
fn filler_extension_rebuilds_classifying_spaces() {
    let site = Site::finsets();
    for order in [2, 3] {
        let g = FiniteGroup::cyclic(order);
        let x = SimplicialObject::nerve(&site, &g, 2).unwrap();
        let ext = extend_by_fillers(&x, 1, 4).unwrap();
        let full = SimplicialObject::nerve(&site, &g, 4).unwrap();
        assert_eq!(ext.level_sizes(), full.level_sizes());
        assert!(ext.is_isomorphic(&full).unwrap());
    }
}

#[test]
fn filler_extension_of_a_cech_nerve() {
    let site = Site::finsets();
    let a = site.plain_object(FinSetObj::numbered(3)).unwrap();
    let b = site.plain_object(FinSetObj::numbered(2)).unwrap();
    let f = site.morphism(&a, &b, vec![0, 0, 1]).unwrap();
    let x = SimplicialObject::cech(&site, &f, 2).unwrap();
    let ext = extend_by_fillers(&x, 1, 3).unwrap();
    assert!(ext.is_isomorphic(&SimplicialObject::cech(&site, &f, 3).unwrap()).unwrap());
}

#[test]
fn filler_extension_refuses_non_groupoids() {
    let site = Site::finsets();
    let x = SimplicialObject::nerve(&site, &FiniteGroup::cyclic(2), 2).unwrap();
    assert!(extend_by_fillers(&x, 0, 3).is_err());
}

#[test]
fn first_and_last_horn_fillers_agree() {
    use ngrpd::simp::{extend_by_fillers_with, FillerHorn};
    let site = Site::finsets();
    let a = site.plain_object(FinSetObj::numbered(3)).unwrap();
    let b = site.plain_object(FinSetObj::numbered(2)).unwrap();
    let f = site.morphism(&a, &b, vec![0, 0, 1]).unwrap();
    let seeds = [
        SimplicialObject::nerve(&site, &FiniteGroup::cyclic(2), 2).unwrap(),
        SimplicialObject::nerve(&site, &FiniteGroup::symmetric(3), 2).unwrap(),
        SimplicialObject::cech(&site, &f, 2).unwrap(),
    ];
    for x in &seeds {
        let first = extend_by_fillers_with(x, 1, 3, FillerHorn::First).unwrap();
        let last = extend_by_fillers_with(x, 1, 3, FillerHorn::Last).unwrap();
        assert!(first.is_isomorphic(&last).unwrap());
    }
}
