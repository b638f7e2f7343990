//! The fiber functor applied level-wise to simplicial objects, and the
//! passage between objects of `G`-sets and `G`-equivariant objects of sets.

use serde::Serialize;

use super::{base_of, fiber_functor, fiber_functor_map};
use crate::error::{Error, Result};
use crate::fincat::{Morphism, Site, SiteKind};
use crate::gset::GroupSpec;
use crate::grpd::{verify_exact_functor, CfoInstance, ExactnessReport, LevelFunctor};
use crate::simp::{SimplicialMorphism, SimplicialObject};

/// The `F_r`-sets site the fiber functor of a graph-cover site lands in.
pub fn fiber_site(site: &Site) -> Result<Site> {
    Ok(Site::gsets(GroupSpec::free(base_of(site)?.rank())))
}

/// The fiber functor as a level functor `GraphCov(base) → F_r-FinSets`.
pub fn fiber_level_functor(site: &Site) -> Result<LevelFunctor<'_>> {
    let target = fiber_site(site)?;
    let t = target.clone();
    Ok(LevelFunctor {
        name: "fiber".into(),
        target,
        object: Box::new(move |o| {
            let a = fiber_functor(site, o)?;
            t.object(a.fiber.clone(), vec![0; a.fiber.len()], a.perms)
        }),
        morphism: Box::new(move |f, a, b| {
            let (_, _, map) = fiber_functor_map(site, f)?;
            Ok(Morphism::new_unchecked(a.clone(), b.clone(), map))
        }),
    })
}

pub fn fiber_functor_ngrpd(site: &Site, x: &SimplicialObject) -> Result<SimplicialObject> {
    fiber_level_functor(site)?.apply_object(x)
}

pub fn fiber_functor_ngrpd_map(site: &Site, f: &SimplicialMorphism) -> Result<SimplicialMorphism> {
    let func = fiber_level_functor(site)?;
    let fx = func.apply_object(f.source())?;
    let fy = func.apply_object(f.target())?;
    func.apply_morphism(f, &fx, &fy)
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceReport {
    pub exactness: ExactnessReport,
    pub cover_reflection: Vec<CfoInstance>,
    pub essential_surjectivity: Vec<CfoInstance>,
    pub passed: bool,
}

/// Exactness of the level-wise fiber functor on the sample, reflection of
/// level-wise covers, and that every supplied target is isomorphic to the
/// image of some sample object.
pub fn verify_correspondence_exactness(
    site: &Site,
    objects: &[(String, SimplicialObject)],
    morphisms: &[(String, SimplicialMorphism)],
    targets: &[(String, SimplicialObject)],
) -> Result<CorrespondenceReport> {
    let func = fiber_level_functor(site)?;
    let exactness = verify_exact_functor(&func, site, objects, morphisms)?;
    let mut cover_reflection = Vec::new();
    for (name, f) in morphisms {
        let image = fiber_functor_ngrpd_map(site, f)?;
        let bad = (0..=f.source().truncation()).find(|&m| site.is_cover(f.level(m)) != func.target.is_cover(image.level(m)));
        cover_reflection.push(CfoInstance {
            axiom: "cover-reflection".into(),
            subject: name.clone(),
            passed: bad.is_none(),
            witness: bad.map(|m| format!("level {m}: cover status differs from its image")),
        });
    }
    let images = objects.iter().map(|(_, x)| func.apply_object(x)).collect::<Result<Vec<_>>>()?;
    let mut essential_surjectivity = Vec::new();
    for (name, t) in targets {
        let mut hit = None;
        for (i, img) in images.iter().enumerate() {
            if img.is_isomorphic(t)? {
                hit = Some(i);
                break;
            }
        }
        essential_surjectivity.push(CfoInstance {
            axiom: "essential-surjectivity".into(),
            subject: match hit {
                Some(i) => format!("{name} ≅ F({})", objects[i].0),
                None => name.clone(),
            },
            passed: hit.is_some(),
            witness: hit.is_none().then(|| "no sample object has an isomorphic image".into()),
        });
    }
    let passed = exactness.passed && cover_reflection.iter().chain(&essential_surjectivity).all(|i| i.passed);
    Ok(CorrespondenceReport { exactness, cover_reflection, essential_surjectivity, passed })
}

/// A simplicial finite set with a level-wise action commuting with every
/// structure map: `actions[m][k]` is the permutation of `X_m` by operation `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantObject {
    pub object: SimplicialObject,
    pub group: GroupSpec,
    pub actions: Vec<Vec<Vec<usize>>>,
}

/// Forgets the action level-wise, recording it alongside.
pub fn pull_out_action(x: &SimplicialObject) -> Result<EquivariantObject> {
    let group = match x.site().kind() {
        SiteKind::GFinSets(g) => (**g).clone(),
        _ => return Err(Error::Precondition("pulling out an action needs an object of G-sets".into())),
    };
    let sets = Site::finsets();
    let n = x.truncation();
    let levels = x.levels().iter().map(|o| sets.plain_object(o.set.clone())).collect::<Result<Vec<_>>>()?;
    let tables = |f: &Morphism| f.map().to_vec();
    let d = (0..=n).map(|m| (0..if m == 0 { 0 } else { m + 1 }).map(|i| tables(x.face(m, i))).collect()).collect();
    let s = (0..=n).map(|m| (0..if m == n { 0 } else { m + 1 }).map(|j| tables(x.degeneracy(m, j))).collect()).collect();
    let object = SimplicialObject::from_tables(&sets, levels, d, s)?;
    let actions = x.levels().iter().map(|o| o.ops.iter().map(|t| t.to_vec()).collect()).collect();
    Ok(EquivariantObject { object, group, actions })
}

/// Reassembles an object of `G`-sets, refusing actions that do not commute
/// with a structure map.
pub fn push_in_action(e: &EquivariantObject) -> Result<SimplicialObject> {
    let site = Site::gsets(e.group.clone());
    let x = &e.object;
    let n = x.truncation();
    if e.actions.len() != n + 1 {
        return Err(Error::InvalidObject("one action per level is required".into()));
    }
    let check = |f: &Morphism, from: usize, to: usize, what: String| -> Result<()> {
        for (k, (p, q)) in e.actions[from].iter().zip(&e.actions[to]).enumerate() {
            if let Some(a) = (0..f.source().len()).find(|&a| f.apply(p[a]) != q[f.apply(a)]) {
                return Err(Error::InvalidObject(format!(
                    "{what} does not commute with operation {k} at element {}",
                    f.source().label(a)
                )));
            }
        }
        Ok(())
    };
    for m in 0..=n {
        if m > 0 {
            for i in 0..=m {
                check(x.face(m, i), m, m - 1, format!("d{i} at level {m}"))?;
            }
        }
        if m < n {
            for j in 0..=m {
                check(x.degeneracy(m, j), m, m + 1, format!("s{j} at level {m}"))?;
            }
        }
    }
    let levels = x
        .levels()
        .iter()
        .zip(&e.actions)
        .map(|(o, ops)| site.object(o.set.clone(), vec![0; o.len()], ops.clone()))
        .collect::<Result<Vec<_>>>()?;
    let rebase = |f: &Morphism, a: usize, b: usize| Morphism::new_unchecked(levels[a].clone(), levels[b].clone(), f.map().to_vec());
    let d = (0..=n).map(|m| (0..if m == 0 { 0 } else { m + 1 }).map(|i| rebase(x.face(m, i), m, m - 1)).collect()).collect();
    let s = (0..=n).map(|m| (0..if m == n { 0 } else { m + 1 }).map(|j| rebase(x.degeneracy(m, j), m, m + 1)).collect()).collect();
    SimplicialObject::new(&site, levels.clone(), d, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinSetObj;
    use crate::galois::{cover_from_action, BasedGraph, PermAction};
    use crate::gset::{regular_gset, FiniteGroup};

    fn double_cover(site: &Site) -> crate::fincat::Object {
        let a = PermAction::new(FinSetObj::numbered(2), vec![vec![1, 0], vec![0, 1]]).unwrap();
        cover_from_action(site, &a).unwrap()
    }

    #[test]
    fn constant_trivial_cover_goes_to_the_point() {
        let site = Site::graph_covers(BasedGraph::figure_eight());
        let x = SimplicialObject::terminal(&site, 2);
        let fx = fiber_functor_ngrpd(&site, &x).unwrap();
        assert!(fx.is_isomorphic(&SimplicialObject::terminal(&fiber_site(&site).unwrap(), 2)).unwrap());
        assert_eq!(fx.level_sizes(), vec![1, 1, 1]);
    }

    #[test]
    fn cech_nerve_of_a_double_cover_maps_to_the_cech_nerve_of_its_fiber() {
        let site = Site::graph_covers(BasedGraph::figure_eight());
        let c = double_cover(&site);
        let f = site.to_terminal(&c);
        let x = SimplicialObject::cech(&site, &f, 2).unwrap();
        let fx = fiber_functor_ngrpd(&site, &x).unwrap();
        let target = fiber_site(&site).unwrap();
        let fc = fiber_level_functor(&site).unwrap();
        let fib = (fc.object)(&c).unwrap();
        let expect = SimplicialObject::cech(&target, &target.to_terminal(&fib), 2).unwrap();
        assert!(fx.is_isomorphic(&expect).unwrap());
        assert_eq!(fx.level_sizes(), vec![2, 4, 8]);
    }

    #[test]
    fn pull_out_and_push_in_round_trip() {
        let z2 = FiniteGroup::cyclic(2);
        let site = Site::gsets(GroupSpec::Finite(z2.clone()));
        let reg = regular_gset(&site, &z2).unwrap();
        let x = SimplicialObject::cech(&site, &site.to_terminal(&reg), 2).unwrap();
        let e = pull_out_action(&x).unwrap();
        assert_eq!(e.object.site(), &Site::finsets());
        assert_eq!(push_in_action(&e).unwrap(), x);
    }

    #[test]
    fn push_in_refuses_non_commuting_actions() {
        let z2 = FiniteGroup::cyclic(2);
        let site = Site::gsets(GroupSpec::Finite(z2.clone()));
        let reg = regular_gset(&site, &z2).unwrap();
        let x = SimplicialObject::cech(&site, &site.to_terminal(&reg), 1).unwrap();
        let mut e = pull_out_action(&x).unwrap();
        // make the generator act trivially on level 0 only
        for k in 0..e.actions[0].len() {
            e.actions[0][k] = vec![0, 1];
        }
        let err = push_in_action(&e).unwrap_err();
        assert!(err.to_string().contains("does not commute"), "{err}");
    }
}
