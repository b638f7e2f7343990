//! n-groupoids, fibrations, hypercovers and weak equivalences.
//!
//! Every verdict records the range of levels it was checked on; nothing is
//! asserted beyond the truncation.

mod cfo;
mod enumerate;
mod path;

pub use cfo::{verify_cfo_axioms, verify_exact_functor, CfoAudit, CfoInstance, ExactnessReport, LevelFunctor};
pub use enumerate::small_simplicial_sets;
pub use path::{
    is_weak_equivalence, mapping_path_factorization, mirrored_path_factorization, path_object, path_object_dim, Factorization, PathObject,
    WeakEquivalence,
};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::Morphism;
use crate::simp::{boundary_matching_map, matching_map, relative_matching_map, FiniteSimplicialSet, SimplicialMorphism, SimplicialObject};

/// A dimension bound: a natural number or unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dim {
    Finite(usize),
    Infinite,
}

impl Dim {
    /// Whether `k` lies at or above the bound.
    pub fn at_most(self, k: usize) -> bool {
        matches!(self, Dim::Finite(n) if n <= k)
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{n}"),
            Dim::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Dim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Dim> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Dim::Infinite),
            _ => s.parse().map(Dim::Finite).map_err(|_| Error::Format(format!("not a dimension: {s:?}"))),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dim::Finite(n) => s.serialize_u64(*n as u64),
            Dim::Infinite => s.serialize_str("inf"),
        }
    }
}

/// One matching-map check: a horn `(k, i)` or a boundary `(k, None)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingVerdict {
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    pub cover: bool,
    pub iso: bool,
    pub iso_required: bool,
    pub passed: bool,
    pub source_size: usize,
    pub target_size: usize,
}

impl MatchingVerdict {
    fn new(k: usize, i: Option<usize>, map: &Morphism, site: &crate::fincat::Site, iso_required: bool) -> MatchingVerdict {
        let cover = site.is_cover(map);
        let iso = site.is_iso(map);
        MatchingVerdict {
            k,
            i,
            cover,
            iso,
            iso_required,
            passed: cover && (iso || !iso_required),
            source_size: map.source().len(),
            target_size: map.target().len(),
        }
    }

    pub fn describe(&self) -> String {
        let what = if !self.cover { "is not a cover" } else { "is not an isomorphism" };
        match self.i {
            Some(i) => format!("matching map at (k={}, i={i}) {what} ({} → {})", self.k, self.source_size, self.target_size),
            None => format!("boundary matching map at k={} {what} ({} → {})", self.k, self.source_size, self.target_size),
        }
    }
}

/// Per-instance verdicts of one of the checks below.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub property: String,
    pub n: Dim,
    pub truncation: usize,
    /// Levels `k` that were checked, inclusive.
    pub verified_range: (usize, usize),
    pub instances: Vec<MatchingVerdict>,
    pub passed: bool,
}

impl Certificate {
    fn new(property: &str, n: Dim, truncation: usize, range: (usize, usize), instances: Vec<MatchingVerdict>) -> Certificate {
        let passed = instances.iter().all(|v| v.passed);
        Certificate { property: property.into(), n, truncation, verified_range: range, instances, passed }
    }

    pub fn first_failure(&self) -> Option<&MatchingVerdict> {
        self.instances.iter().find(|v| !v.passed)
    }
}

pub type GroupoidCertificate = Certificate;

/// Horn matching maps are covers for `1 ≤ k ≤ N` and isomorphisms for
/// `k > n`. Needs `N ≥ n + 1`.
pub fn is_n_groupoid(x: &SimplicialObject, n: Dim) -> Result<GroupoidCertificate> {
    let top = x.truncation();
    if let Dim::Finite(n) = n {
        if top < n + 1 {
            return Err(Error::TruncationTooShallow(format!(
                "certifying a {n}-groupoid needs truncation at least {}, got {top}",
                n + 1
            )));
        }
    }
    let mut instances = Vec::new();
    for k in 1..=top {
        for i in 0..=k {
            let (_, map) = matching_map(x, k, i)?;
            instances.push(MatchingVerdict::new(k, Some(i), &map, x.site(), n < Dim::Finite(k)));
        }
    }
    Ok(Certificate::new("groupoid", n, top, (1, top), instances))
}

/// Relative horn matching maps are covers for `1 ≤ k ≤ N`.
pub fn is_fibration(f: &SimplicialMorphism) -> Result<Certificate> {
    let top = f.source().truncation();
    let mut instances = Vec::new();
    for k in 1..=top {
        for i in 0..=k {
            let horn = FiniteSimplicialSet::horn(k, i, k - 1)?;
            let (_, map) = relative_matching_map(f, k, &horn)?;
            instances.push(MatchingVerdict::new(k, Some(i), &map, f.source().site(), false));
        }
    }
    Ok(Certificate::new("fibration", Dim::Infinite, top, (1, top), instances))
}

/// `μ_k(f)` is a cover for `0 ≤ k ≤ N` and an isomorphism for `k ≥ n`.
pub fn is_hypercover(f: &SimplicialMorphism, n: Dim) -> Result<Certificate> {
    let top = f.source().truncation();
    let mut instances = Vec::new();
    for k in 0..=top {
        let (_, map) = boundary_matching_map(f, k)?;
        instances.push(MatchingVerdict::new(k, None, &map, f.source().site(), n.at_most(k)));
    }
    Ok(Certificate::new("hypercover", n, top, (0, top), instances))
}

/// Everything known about a morphism at its truncation.
#[derive(Clone, Debug, Serialize)]
pub struct MapClassification {
    pub is_fibration: bool,
    pub is_hypercover: bool,
    pub is_weak_equivalence: bool,
    pub is_trivial_fibration: bool,
    pub fibration: Certificate,
    pub hypercover: Certificate,
    /// Hypercover certificate of `q(f)`, one level shorter.
    pub weak_equivalence: Certificate,
}

/// Classifies `f`, reusing a path object of its target when supplied.
pub fn classify_map(f: &SimplicialMorphism, n: Dim, path: Option<&PathObject>) -> Result<MapClassification> {
    let fibration = is_fibration(f)?;
    let hypercover = is_hypercover(f, n)?;
    let weak_equivalence = is_weak_equivalence(f, path)?.hypercover;
    Ok(MapClassification {
        is_fibration: fibration.passed,
        is_hypercover: hypercover.passed,
        is_weak_equivalence: weak_equivalence.passed,
        is_trivial_fibration: fibration.passed && weak_equivalence.passed,
        fibration,
        hypercover,
        weak_equivalence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{FinSetObj, Site};
    use crate::gset::FiniteGroup;

    fn fold() -> (Site, Morphism) {
        let site = Site::finsets();
        let a = site.plain_object(FinSetObj::numbered(3)).unwrap();
        let b = site.plain_object(FinSetObj::numbered(2)).unwrap();
        let f = site.morphism(&a, &b, vec![0, 0, 1]).unwrap();
        (site, f)
    }

    #[test]
    fn terminal_is_a_zero_groupoid() {
        let t = SimplicialObject::terminal(&Site::finsets(), 2);
        for n in 0..2 {
            assert!(is_n_groupoid(&t, Dim::Finite(n)).unwrap().passed);
        }
    }

    #[test]
    fn nerve_of_z2() {
        let x = SimplicialObject::nerve(&Site::finsets(), &FiniteGroup::cyclic(2), 3).unwrap();
        assert!(is_n_groupoid(&x, Dim::Finite(1)).unwrap().passed);
        let c0 = is_n_groupoid(&x, Dim::Finite(0)).unwrap();
        let w = c0.first_failure().unwrap();
        assert_eq!((w.k, w.i), (1, Some(0)));
        assert!(w.cover && !w.iso);
    }

    #[test]
    fn shallow_truncation_refused() {
        let x = SimplicialObject::nerve(&Site::finsets(), &FiniteGroup::cyclic(2), 1).unwrap();
        assert!(matches!(is_n_groupoid(&x, Dim::Finite(1)), Err(Error::TruncationTooShallow(_))));
    }

    #[test]
    fn cech_nerve_is_a_one_groupoid_not_zero() {
        let (site, f) = fold();
        let x = SimplicialObject::cech(&site, &f, 3).unwrap();
        assert!(is_n_groupoid(&x, Dim::Finite(1)).unwrap().passed);
        assert!(!is_n_groupoid(&x, Dim::Finite(0)).unwrap().passed);
    }

    #[test]
    fn cech_augmentation_is_a_hypercover_but_not_a_zero_hypercover() {
        let (site, f) = fold();
        let aug = SimplicialObject::cech_augmentation(&site, &f, 3).unwrap();
        let h = is_hypercover(&aug, Dim::Infinite).unwrap();
        assert!(h.passed, "{:?}", h.first_failure());
        let h0 = is_hypercover(&aug, Dim::Finite(0)).unwrap();
        assert_eq!(h0.first_failure().map(|v| v.k), Some(0));
    }

    #[test]
    fn classifying_space_to_point() {
        let x = SimplicialObject::nerve(&Site::finsets(), &FiniteGroup::cyclic(2), 3).unwrap();
        let t = SimplicialMorphism::to_terminal(&x);
        assert!(is_fibration(&t).unwrap().passed);
        let h = is_hypercover(&t, Dim::Infinite).unwrap();
        let w = h.first_failure().unwrap();
        assert_eq!(w.k, 2);
        assert_eq!((w.source_size, w.target_size), (4, 8));
    }

    #[test]
    fn identities_are_fibrations_and_hypercovers() {
        let x = SimplicialObject::nerve(&Site::finsets(), &FiniteGroup::cyclic(3), 2).unwrap();
        let id = SimplicialMorphism::identity(&x);
        assert!(is_fibration(&id).unwrap().passed);
        assert!(is_hypercover(&id, Dim::Finite(0)).unwrap().passed);
    }

    #[test]
    fn monotone_in_n() {
        let x = SimplicialObject::nerve(&Site::finsets(), &FiniteGroup::cyclic(3), 3).unwrap();
        assert!(is_n_groupoid(&x, Dim::Finite(1)).unwrap().passed);
        assert!(is_n_groupoid(&x, Dim::Finite(2)).unwrap().passed);
        assert!(is_n_groupoid(&x, Dim::Infinite).unwrap().passed);
    }

    #[test]
    fn dim_parsing() {
        assert_eq!("inf".parse::<Dim>().unwrap(), Dim::Infinite);
        assert_eq!("2".parse::<Dim>().unwrap(), Dim::Finite(2));
        assert!("x".parse::<Dim>().is_err());
        assert!(Dim::Finite(1) < Dim::Infinite);
    }
}
