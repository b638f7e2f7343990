//! Path objects, the mapping-path factorization and weak equivalences.

use super::{is_fibration, is_hypercover, Certificate, Dim};
use crate::error::{Error, Result};
use crate::fincat::Morphism;
use crate::simp::{evaluate, hom_into, restrict_along, restrict_level, FiniteSimplicialSet, HomObject, OrdinalMap, SimplicialMorphism, SimplicialObject};

/// `P_n Y` with `(P_n Y)_m = Hom(Δ^m × Δ^n, Y)` for `m ≤ N - n`.
#[derive(Clone, Debug)]
pub struct PathObject {
    pub dir: usize,
    /// `Y` truncated at `N - n`.
    pub base: SimplicialObject,
    pub object: SimplicialObject,
    /// Evaluation at the vertex 0 (`d_1^*` for `n = 1`).
    pub start: SimplicialMorphism,
    /// Evaluation at the vertex `n` (`d_0^*` for `n = 1`).
    pub end: SimplicialMorphism,
    /// Constant paths `Y → P_1 Y`.
    pub constant: SimplicialMorphism,
}

pub fn path_object(y: &SimplicialObject) -> Result<PathObject> {
    path_object_dim(y, 1)
}

pub fn path_object_dim(y: &SimplicialObject, dir: usize) -> Result<PathObject> {
    let n = y.truncation();
    if n < dir {
        return Err(Error::TruncationTooShallow(format!("P_{dir} needs truncation at least {dir}, got {n}")));
    }
    let top = n - dir;
    let homs: Vec<HomObject> = (0..=top)
        .map(|m| hom_into(&FiniteSimplicialSet::product_simplex(m, dir, (m + dir + 1).min(n)), y))
        .collect::<Result<_>>()?;
    let levels = homs.iter().map(|h| h.object().clone()).collect::<Vec<_>>();
    let mut d = vec![Vec::new()];
    for m in 1..=top {
        let faces = (0..=m)
            .map(|i| {
                let delta = OrdinalMap::coface(i, m);
                restrict_along(y, &homs[m], &homs[m - 1], |c| vec![delta.after(&c[0]), c[1].clone()]).map(|f| f.map().to_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        d.push(faces);
    }
    let mut s = Vec::new();
    for m in 0..=top {
        if m == top {
            s.push(Vec::new());
            continue;
        }
        let degs = (0..=m)
            .map(|j| {
                let sigma = OrdinalMap::codegeneracy(j, m);
                restrict_along(y, &homs[m], &homs[m + 1], |c| vec![sigma.after(&c[0]), c[1].clone()]).map(|f| f.map().to_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        s.push(degs);
    }
    let object = SimplicialObject::from_tables(y.site(), levels, d, s)?;
    let base = y.truncate(top);
    let endpoint = |eps: usize| -> Result<SimplicialMorphism> {
        let maps = (0..=top)
            .map(|m| {
                let shape = homs[m].shape();
                let cell = shape
                    .cell_index(m, &[OrdinalMap::identity(m), OrdinalMap::constant(m, eps, dir)])
                    .expect("the endpoint cell exists");
                evaluate(y, &homs[m], m, cell)
            })
            .collect();
        SimplicialMorphism::new(&object, &base, rebase(&object, &base, maps))
    };
    let start = endpoint(0)?;
    let end = endpoint(dir)?;
    let maps = (0..=top).map(|m| restrict_level(y, m, &homs[m], 0)).collect::<Result<Vec<_>>>()?;
    let constant = SimplicialMorphism::new(&base, &object, rebase(&base, &object, maps))?;
    Ok(PathObject { dir, base, object, start, end, constant })
}

/// Re-anchors level maps on the levels of the given objects.
fn rebase(x: &SimplicialObject, y: &SimplicialObject, maps: Vec<Morphism>) -> Vec<Morphism> {
    maps.into_iter()
        .enumerate()
        .map(|(m, f)| Morphism::new_unchecked(x.level(m).clone(), y.level(m).clone(), f.map().to_vec()))
        .collect()
}

/// `f = q ∘ r` through `P(f) = X ×_Y P_1 Y`, all truncated at `N - 1`.
#[derive(Clone, Debug)]
pub struct Factorization {
    /// `f` truncated at `N - 1`.
    pub f: SimplicialMorphism,
    pub middle: SimplicialObject,
    pub r: SimplicialMorphism,
    pub q: SimplicialMorphism,
}

/// The mapping-path factorization, reusing a path object of the target
/// when one is supplied.
pub fn mapping_path_factorization(f: &SimplicialMorphism, path: Option<&PathObject>) -> Result<Factorization> {
    factor(f, path, false)
}

/// The same construction with the endpoints exchanged:
/// `X ×_{f, Y, d_0^*} P_1 Y → Y` through `d_1^*`.
pub fn mirrored_path_factorization(f: &SimplicialMorphism, path: Option<&PathObject>) -> Result<Factorization> {
    factor(f, path, true)
}

fn factor(f: &SimplicialMorphism, path: Option<&PathObject>, mirrored: bool) -> Result<Factorization> {
    let owned;
    let path = match path {
        Some(p) => p,
        None => {
            owned = path_object(f.target())?;
            &owned
        }
    };
    if path.dir != 1 {
        return Err(Error::Precondition("the factorization uses P_1".into()));
    }
    let top = path.base.truncation();
    let ft = f.truncate(top);
    let (glue, exit) = if mirrored { (&path.end, &path.start) } else { (&path.start, &path.end) };
    if ft.target() != &path.base {
        return Err(Error::Precondition("the path object belongs to a different target".into()));
    }
    let pb = SimplicialMorphism::pullback(&ft, glue)?;
    let q = pb.right.then(exit)?;
    let x = ft.source();
    let site = x.site();
    let r_levels = (0..=top)
        .map(|m| {
            let c = site.compose(ft.level(m), path.constant.level(m))?;
            pb.levels[m].mediate(&site.identity(x.level(m)), &c)
        })
        .collect::<Result<Vec<_>>>()?;
    let r = SimplicialMorphism::new(x, &pb.apex, rebase(x, &pb.apex, r_levels))?;
    let qr = r.then(&q)?;
    if qr.levels() != ft.levels() {
        return Err(Error::NotFunctorial("q ∘ r differs from f".into()));
    }
    Ok(Factorization { f: ft, middle: pb.apex, r, q })
}

/// Verdict on a weak equivalence: `q(f)` is a hypercover on levels
/// `0..=N-1`.
#[derive(Clone, Debug)]
pub struct WeakEquivalence {
    pub passed: bool,
    pub hypercover: Certificate,
}

pub fn is_weak_equivalence(f: &SimplicialMorphism, path: Option<&PathObject>) -> Result<WeakEquivalence> {
    let fact = mapping_path_factorization(f, path)?;
    let hypercover = is_hypercover(&fact.q, Dim::Infinite)?;
    Ok(WeakEquivalence { passed: hypercover.passed, hypercover })
}

impl Factorization {
    /// Whether `q` is a fibration on the factorization's range.
    pub fn q_is_fibration(&self) -> Result<Certificate> {
        is_fibration(&self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{FinSetObj, Site};
    use crate::gset::FiniteGroup;

    fn bz(n: usize, trunc: usize) -> SimplicialObject {
        SimplicialObject::nerve(&Site::finsets(), &FiniteGroup::cyclic(n), trunc).unwrap()
    }

    #[test]
    fn path_object_of_a_classifying_space() {
        let y = bz(2, 2);
        let p = path_object(&y).unwrap();
        // a path is a start vertex and a group element at level 0
        assert_eq!(p.object.level_sizes()[0], 2);
        assert_eq!(p.object.level_sizes()[1], 8);
        for m in 0..=1 {
            let c = p.constant.then(&p.start).unwrap();
            assert!(c.level(m).map().iter().enumerate().all(|(a, &b)| a == b));
        }
    }

    #[test]
    fn path_object_of_a_constant_set_is_constant() {
        let site = Site::finsets();
        let a = site.plain_object(FinSetObj::numbered(3)).unwrap();
        let y = SimplicialObject::constant(&site, &a, 2).unwrap();
        let p = path_object(&y).unwrap();
        assert_eq!(p.object.level_sizes(), vec![3, 3]);
        assert!(p.constant.is_iso());
    }

    #[test]
    fn factorization_of_a_map_to_the_point() {
        let y = bz(2, 3);
        let t = SimplicialMorphism::to_terminal(&y);
        let fact = mapping_path_factorization(&t, None).unwrap();
        assert!(fact.q_is_fibration().unwrap().passed);
        assert!(!is_weak_equivalence(&t, None).unwrap().passed);
    }

    #[test]
    fn identities_and_isos_are_weak_equivalences() {
        let y = bz(3, 2);
        assert!(is_weak_equivalence(&SimplicialMorphism::identity(&y), None).unwrap().passed);
    }

    #[test]
    fn cech_augmentation_is_a_weak_equivalence() {
        let site = Site::finsets();
        let a = site.plain_object(FinSetObj::numbered(3)).unwrap();
        let b = site.plain_object(FinSetObj::numbered(2)).unwrap();
        let f = site.morphism(&a, &b, vec![0, 0, 1]).unwrap();
        let aug = SimplicialObject::cech_augmentation(&site, &f, 2).unwrap();
        assert!(is_weak_equivalence(&aug, None).unwrap().passed);
    }

    #[test]
    fn zero_dimensional_paths_are_the_object_itself() {
        let y = bz(3, 2);
        let p = path_object_dim(&y, 0).unwrap();
        assert_eq!(p.object.level_sizes(), y.level_sizes());
        assert!(p.start.is_iso() && p.end.is_iso());
    }

    #[test]
    fn paths_in_the_point_are_the_point() {
        let t = SimplicialObject::terminal(&Site::finsets(), 3);
        let p = path_object(&t).unwrap();
        assert_eq!(p.object.level_sizes(), vec![1, 1, 1]);
    }

    #[test]
    fn identity_factors_through_the_path_object() {
        let y = bz(2, 3);
        let fact = mapping_path_factorization(&SimplicialMorphism::identity(&y), None).unwrap();
        let p = path_object(&y).unwrap();
        assert!(fact.middle.is_isomorphic(&p.object).unwrap());
        assert!(fact.q_is_fibration().unwrap().passed);
        assert!(is_hypercover(&fact.q, Dim::Infinite).unwrap().passed);
    }

    #[test]
    fn empty_object_to_the_point() {
        let site = Site::finsets();
        let e = SimplicialObject::constant(&site, &site.plain_object(FinSetObj::empty()).unwrap(), 2).unwrap();
        let f = SimplicialMorphism::to_terminal(&e);
        let fact = mapping_path_factorization(&f, None).unwrap();
        assert_eq!(fact.middle.level_sizes(), vec![0, 0]);
        assert!(fact.q_is_fibration().unwrap().passed);
        let h = is_hypercover(&fact.q, Dim::Infinite).unwrap();
        assert_eq!(h.first_failure().map(|v| v.k), Some(0));
    }

    #[test]
    fn classifying_space_to_point_fails_at_triangles() {
        let t = SimplicialMorphism::to_terminal(&bz(2, 3));
        let w = is_weak_equivalence(&t, None).unwrap();
        let bad = w.hypercover.first_failure().unwrap();
        // loops fill edges over the point; triangles with a non-composable
        // boundary have no filler
        assert_eq!((bad.k, bad.source_size, bad.target_size), (2, 4, 8));
    }

    #[test]
    fn mirrored_factorization_gives_the_same_verdicts() {
        let site = Site::finsets();
        let a = site.plain_object(FinSetObj::numbered(3)).unwrap();
        let b = site.plain_object(FinSetObj::numbered(2)).unwrap();
        let f = site.morphism(&a, &b, vec![0, 0, 1]).unwrap();
        let maps = vec![
            SimplicialMorphism::to_terminal(&bz(2, 3)),
            SimplicialMorphism::identity(&bz(3, 3)),
            SimplicialObject::cech_augmentation(&site, &f, 3).unwrap(),
        ];
        for g in &maps {
            let lit = mapping_path_factorization(g, None).unwrap();
            let mir = mirrored_path_factorization(g, None).unwrap();
            assert!(lit.middle.is_isomorphic(&mir.middle).unwrap());
            assert_eq!(is_hypercover(&lit.q, Dim::Infinite).unwrap().passed, is_hypercover(&mir.q, Dim::Infinite).unwrap().passed);
        }
    }
}
