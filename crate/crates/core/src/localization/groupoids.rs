//! The marked category of small `n`-groupoids over a site.

use std::collections::HashMap;

use serde::Serialize;

use super::category::MarkedRelCategory;
use crate::error::{Error, Result};
use crate::fincat::{CoverClass, Object, Site};
use crate::grpd::{is_fibration, is_hypercover, is_n_groupoid, is_weak_equivalence, path_object, Dim};
use crate::simp::{SimplicialMorphism, SimplicialObject};

#[derive(Clone, Debug)]
pub struct LocalizeOptions {
    pub n: usize,
    /// Size bound on the base objects the groupoids are built from.
    pub bound: usize,
    /// Defaults to `n + 2`, the depth at which weak equivalences of
    /// `n`-groupoids are certified.
    pub truncation: Option<usize>,
    /// Cover class deciding `H`; defaults to the site's own.
    pub hypercover_class: Option<CoverClass>,
    /// Extra base objects beyond the small ones.
    pub seeds: Vec<Object>,
}

impl LocalizeOptions {
    pub fn new(n: usize, bound: usize) -> LocalizeOptions {
        LocalizeOptions { n, bound, truncation: None, hypercover_class: None, seeds: Vec::new() }
    }
}

#[derive(Clone, Debug)]
pub struct LocalizedCategory {
    pub category: MarkedRelCategory,
    /// The objects, named as in the category, with how each was built.
    pub objects: Vec<(String, SimplicialObject)>,
    pub descriptions: Vec<String>,
    pub morphisms: Vec<(String, SimplicialMorphism)>,
}

impl LocalizedCategory {
    /// `H` recomputed under another cover class, objects and morphisms kept.
    pub fn hypercovers_under(&self, class: CoverClass) -> Result<Vec<bool>> {
        let site = self.objects.first().map(|(_, x)| x.site().clone().with_cover_class(class));
        self.morphisms
            .iter()
            .map(|(_, f)| Ok(is_hypercover(&f.in_site(site.as_ref().expect("morphisms have objects"))?, Dim::Infinite)?.passed))
            .collect()
    }
}

/// Every `n`-groupoid built as a constant object or a Čech nerve of a cover
/// between base objects, one per isomorphism class, with all simplicial
/// morphisms between them. `W` and `F` use the site's cover class; `H` is the
/// hypercovers under the selected class.
pub fn localize_groupoid_category(site: &Site, opts: &LocalizeOptions) -> Result<LocalizedCategory> {
    let cap = crate::max_cells();
    let n = opts.n;
    let top = opts.truncation.unwrap_or(n + 2);
    let mut base: Vec<Object> = site.small_objects(opts.bound)?;
    for s in &opts.seeds {
        site.validate_object(s)?;
        let mut fresh = true;
        for b in &base {
            if site.are_isomorphic(b, s)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            base.push(s.clone());
        }
    }
    let mut candidates: Vec<(String, SimplicialObject)> = Vec::new();
    for (i, a) in base.iter().enumerate() {
        candidates.push((format!("const(b{i})"), SimplicialObject::constant(site, a, top)?));
    }
    for (i, a) in base.iter().enumerate() {
        for (j, b) in base.iter().enumerate() {
            for (k, f) in site.hom_set(a, b, cap)?.into_iter().enumerate() {
                if site.is_cover(&f) && !site.is_iso(&f) {
                    candidates.push((format!("cech(b{i}->b{j}#{k})"), SimplicialObject::cech(site, &f, top)?));
                }
            }
        }
    }
    let mut kept: Vec<(String, SimplicialObject)> = Vec::new();
    for (desc, x) in candidates {
        let mut fresh = true;
        for (_, y) in &kept {
            if x.is_isomorphic(y)? {
                fresh = false;
                break;
            }
        }
        if fresh && is_n_groupoid(&x, Dim::Finite(n))?.passed {
            kept.push((desc, x));
        }
    }
    let names: Vec<String> = (0..kept.len()).map(|i| format!("X{i}")).collect();

    let mut morphisms: Vec<(usize, usize, SimplicialMorphism)> = Vec::new();
    for (i, (_, a)) in kept.iter().enumerate() {
        for (j, (_, b)) in kept.iter().enumerate() {
            for f in a.hom_set(b, cap)? {
                morphisms.push((i, j, f));
                if morphisms.len() > cap {
                    return Err(Error::CapExceeded { cap, what: "morphisms of the groupoid category".into() });
                }
            }
        }
    }
    let key = |i: usize, j: usize, f: &SimplicialMorphism| -> (usize, usize, Vec<Vec<usize>>) {
        (i, j, f.levels().iter().map(|l| l.map().to_vec()).collect())
    };
    let index: HashMap<(usize, usize, Vec<Vec<usize>>), usize> =
        morphisms.iter().enumerate().map(|(k, (i, j, f))| (key(*i, *j, f), k)).collect();
    let identity = (0..kept.len())
        .map(|i| {
            let id = SimplicialMorphism::identity(&kept[i].1);
            index.get(&key(i, i, &id)).copied().ok_or_else(|| Error::InvalidObject("identity missing from a hom set".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out_of: Vec<Vec<usize>> = vec![Vec::new(); kept.len()];
    for (k, (i, _, _)) in morphisms.iter().enumerate() {
        out_of[*i].push(k);
    }
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for (a, (i, j, f)) in morphisms.iter().enumerate() {
        for &b in &out_of[*j] {
            let (_, l, g) = &morphisms[b];
            let gf = f.then(g)?;
            let c = index.get(&key(*i, *l, &gf)).copied().ok_or_else(|| Error::InvalidMorphism("composite missing".into()))?;
            table.insert((a, b), c);
        }
    }

    let paths = kept.iter().map(|(_, x)| path_object(x)).collect::<Result<Vec<_>>>()?;
    let hyper_site = site.clone().with_cover_class(opts.hypercover_class.unwrap_or(site.cover_class()));
    let mut w = Vec::with_capacity(morphisms.len());
    let mut h = Vec::with_capacity(morphisms.len());
    let mut fib = Vec::with_capacity(morphisms.len());
    for (_, j, f) in &morphisms {
        fib.push(is_fibration(f)?.passed);
        w.push(is_weak_equivalence(f, Some(&paths[*j]))?.passed);
        h.push(is_hypercover(&f.in_site(&hyper_site)?, Dim::Infinite)?.passed);
    }
    let arrows = morphisms.iter().enumerate().map(|(k, (i, j, _))| (format!("m{k}"), *i, *j)).collect();
    let category = MarkedRelCategory::from_parts(
        names.clone(),
        arrows,
        identity,
        |a, b| table.get(&(a, b)).copied(),
        w,
        h,
        fib,
    )?;
    Ok(LocalizedCategory {
        category,
        descriptions: kept.iter().map(|(d, _)| d.clone()).collect(),
        objects: names.into_iter().zip(kept.into_iter().map(|(_, x)| x)).collect(),
        morphisms: morphisms.into_iter().enumerate().map(|(k, (_, _, f))| (format!("m{k}"), f)).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HypercoverClassComparison {
    pub larger: String,
    pub smaller: String,
    pub larger_count: usize,
    pub smaller_count: usize,
    /// Morphisms in the larger `H` and not the smaller, with their source
    /// and target names.
    pub witnesses: Vec<String>,
    /// Morphisms in the smaller `H` and not the larger; expected empty.
    pub reversed: Vec<String>,
}

/// Marks `H` on the same objects and morphisms under two cover classes.
pub fn hypercover_class_witnesses(
    lc: &LocalizedCategory,
    larger: CoverClass,
    smaller: CoverClass,
) -> Result<HypercoverClassComparison> {
    let big = lc.hypercovers_under(larger)?;
    let small = lc.hypercovers_under(smaller)?;
    let c = &lc.category;
    let describe = |k: usize| {
        let (s, t) = (c.source(k), c.target(k));
        format!("{}: {} -> {} ({} -> {})", lc.morphisms[k].0, c.object_name(s), c.object_name(t), lc.descriptions[s], lc.descriptions[t])
    };
    Ok(HypercoverClassComparison {
        larger: larger.name().into(),
        smaller: smaller.name().into(),
        larger_count: big.iter().filter(|&&b| b).count(),
        smaller_count: small.iter().filter(|&&b| b).count(),
        witnesses: (0..big.len()).filter(|&k| big[k] && !small[k]).map(describe).collect(),
        reversed: (0..big.len()).filter(|&k| small[k] && !big[k]).map(describe).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localization::validate_marked_category;

    #[test]
    fn finite_sets_zero_groupoids() {
        let lc = localize_groupoid_category(&Site::finsets(), &LocalizeOptions::new(0, 2)).unwrap();
        let c = &lc.category;
        // only the constant objects on 0, 1 and 2 points are 0-groupoids
        assert_eq!(c.object_count(), 3);
        assert_eq!(c.arrow_count(), 3 + 1 + 2 + 1 + 4);
        assert!(validate_marked_category(c).passed);
        for a in 0..c.arrow_count() {
            assert_eq!(c.in_w(a), c.inverse(a).is_some(), "{}", c.arrow_name(a));
            assert_eq!(c.in_h(a), c.in_w(a));
        }
    }

    #[test]
    fn category_file_round_trips() {
        let lc = localize_groupoid_category(&Site::finsets(), &LocalizeOptions::new(0, 2)).unwrap();
        let again = MarkedRelCategory::from_file(&lc.category.to_file()).unwrap();
        assert_eq!(again.to_file(), lc.category.to_file());
        assert_eq!(again.arrow_count(), lc.category.arrow_count());
    }

    #[test]
    fn bound_zero_is_a_single_object() {
        let lc = localize_groupoid_category(&Site::finsets(), &LocalizeOptions::new(0, 0)).unwrap();
        assert_eq!((lc.category.object_count(), lc.category.arrow_count()), (1, 1));
    }

    #[test]
    fn one_groupoids_include_cech_nerves() {
        let lc = localize_groupoid_category(&Site::finsets(), &LocalizeOptions::new(1, 2)).unwrap();
        let c = &lc.category;
        assert!(lc.descriptions.iter().any(|d| d.starts_with("cech")));
        assert!(validate_marked_category(c).passed);
        // the augmentation of the Čech nerve of 2 → 1 is in H
        let cech = lc.descriptions.iter().position(|d| d.starts_with("cech")).unwrap();
        let point = (0..c.object_count())
            .find(|&i| lc.objects[i].1.level_sizes().iter().all(|&s| s == 1))
            .unwrap();
        let aug = c.hom(cech, point)[0];
        assert!(c.in_h(aug) && !c.is_identity(aug));
    }
}

#[cfg(test)]
mod two_classes {
    use super::*;
    use crate::fincat::FinSetObj;
    use crate::galois::{cover_from_action, BasedGraph, PermAction};

    pub(crate) fn trivial_cover(site: &Site, sheets: usize) -> Object {
        let id: Vec<usize> = (0..sheets).collect();
        let a = PermAction::new(FinSetObj::numbered(sheets), vec![id.clone(), id]).unwrap();
        cover_from_action(site, &a).unwrap()
    }

    #[test]
    fn constant_fiber_class_has_fewer_hypercovers() {
        let site = Site::graph_covers(BasedGraph::figure_eight());
        let mut opts = LocalizeOptions::new(1, 0);
        opts.seeds = (1..=3).map(|k| trivial_cover(&site, k)).collect();
        let lc = localize_groupoid_category(&site, &opts).unwrap();
        let cmp = hypercover_class_witnesses(&lc, CoverClass::Surjective, CoverClass::ConstantFiber).unwrap();
        assert!(cmp.reversed.is_empty());
        assert!(!cmp.witnesses.is_empty());
        assert!(cmp.smaller_count < cmp.larger_count);
        // the fold of three sheets onto two, augmented to the base
        assert!(cmp.witnesses.iter().any(|w| w.contains("cech(b3->b2")), "{:?}", cmp.witnesses);
    }
}
