//! Categories with covers and finite limits, over finite data.
//!
//! Every built-in site is a category of finite sets carrying extra unary
//! structure: a grading over a fixed finite set (the base vertices of a graph,
//! or a single point) and a family of partial bijections between grades (group
//! generators, or transport along the edges of a base graph). Limits,
//! coequalizers and hom-set enumeration are implemented once for that shape.

mod audit;
mod enumerate;
pub(crate) mod limits;
mod maps;
pub(crate) mod search;
mod site;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::label::Label;

pub use audit::{audit_site_axioms, AxiomInstance, Probe, SiteAudit};
pub use limits::{Coequalizer, Limit, Pullback};
pub use site::{CoverClass, Morphism, Object, ObjectData, OpSig, Signature, Site, SiteKind, UNDEF};

/// A finite set of labelled atoms, stored in canonical (sorted) order.
#[derive(Clone, Eq, Hash)]
pub struct FinSetObj {
    labels: Arc<[Label]>,
}

impl PartialEq for FinSetObj {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl FinSetObj {
    /// Sorts the labels; duplicates are rejected.
    pub fn new(mut labels: Vec<Label>) -> Result<FinSetObj> {
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidObject(format!("duplicate label {}", w[0])));
        }
        Ok(FinSetObj { labels: labels.into() })
    }

    pub(crate) fn from_sorted(labels: Vec<Label>) -> FinSetObj {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]), "labels not strictly sorted");
        FinSetObj { labels: labels.into() }
    }

    pub fn from_atoms<S: AsRef<str>>(atoms: &[S]) -> Result<FinSetObj> {
        let labels = atoms.iter().map(|a| Label::atom(a.as_ref())).collect::<Result<Vec<_>>>()?;
        FinSetObj::new(labels)
    }

    /// The set `{0, 1, ..., n-1}` with decimal labels.
    pub fn numbered(n: usize) -> FinSetObj {
        FinSetObj::new((0..n).map(|i| Label::from_static(&i.to_string())).collect())
            .expect("distinct numerals")
    }

    pub fn empty() -> FinSetObj {
        FinSetObj::from_sorted(Vec::new())
    }

    pub fn singleton() -> FinSetObj {
        FinSetObj::from_sorted(vec![Label::star()])
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.labels.binary_search(label).ok()
    }
}

impl fmt::Debug for FinSetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels.iter()).finish()
    }
}

/// A total function between finite sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinMap {
    source: FinSetObj,
    target: FinSetObj,
    map: Arc<[usize]>,
}

impl FinMap {
    pub fn new(source: FinSetObj, target: FinSetObj, assignment: &BTreeMap<Label, Label>) -> Result<FinMap> {
        let mut map = Vec::with_capacity(source.len());
        for l in source.labels() {
            let v = assignment
                .get(l)
                .ok_or_else(|| Error::InvalidMorphism(format!("label {l} is not assigned")))?;
            let j = target
                .index_of(v)
                .ok_or_else(|| Error::InvalidMorphism(format!("{v} is not a target label")))?;
            map.push(j);
        }
        if assignment.len() != source.len() {
            return Err(Error::InvalidMorphism("assignment mentions labels outside the source".into()));
        }
        Ok(FinMap { source, target, map: map.into() })
    }

    pub fn from_indices(source: FinSetObj, target: FinSetObj, map: Vec<usize>) -> Result<FinMap> {
        if map.len() != source.len() || map.iter().any(|&j| j >= target.len()) {
            return Err(Error::InvalidMorphism("index map out of range".into()));
        }
        Ok(FinMap { source, target, map: map.into() })
    }

    pub fn identity(set: &FinSetObj) -> FinMap {
        FinMap { source: set.clone(), target: set.clone(), map: (0..set.len()).collect::<Vec<_>>().into() }
    }

    pub fn source(&self) -> &FinSetObj {
        &self.source
    }

    pub fn target(&self) -> &FinSetObj {
        &self.target
    }

    pub fn indices(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, label: &Label) -> Option<&Label> {
        self.source.index_of(label).map(|i| self.target.label(self.map[i]))
    }

    pub fn assignment(&self) -> BTreeMap<Label, Label> {
        self.source
            .labels()
            .iter()
            .zip(self.map.iter())
            .map(|(l, &j)| (l.clone(), self.target.label(j).clone()))
            .collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinMap) -> Result<FinMap> {
        if self.target != other.source {
            return Err(Error::InvalidMorphism("maps are not composable".into()));
        }
        let map: Vec<usize> = self.map.iter().map(|&j| other.map[j]).collect();
        Ok(FinMap { source: self.source.clone(), target: other.target.clone(), map: map.into() })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        self.map.iter().for_each(|&j| hit[j] = true);
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        self.map.iter().all(|&j| !std::mem::replace(&mut hit[j], true))
    }
}

impl fmt::Debug for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.assignment()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[&str]) -> FinSetObj {
        FinSetObj::from_atoms(xs).unwrap()
    }

    #[test]
    fn objects_are_canonically_sorted() {
        assert_eq!(set(&["b", "a"]), set(&["a", "b"]));
        assert!(FinSetObj::from_atoms(&["a", "a"]).is_err());
    }

    #[test]
    fn map_requires_total_assignment() {
        let mut m = BTreeMap::new();
        m.insert(Label::atom("x").unwrap(), Label::atom("c").unwrap());
        assert!(FinMap::new(set(&["x", "y"]), set(&["c"]), &m).is_err());
        m.insert(Label::atom("y").unwrap(), Label::atom("d").unwrap());
        assert!(FinMap::new(set(&["x", "y"]), set(&["c"]), &m).is_err());
    }

    #[test]
    fn surjective_and_injective() {
        let f = FinMap::from_indices(set(&["x", "y"]), set(&["c"]), vec![0, 0]).unwrap();
        assert!(f.is_surjective() && !f.is_injective());
        let g = FinMap::from_indices(set(&["x"]), set(&["c", "d"]), vec![0]).unwrap();
        assert!(!g.is_surjective() && g.is_injective());
    }
}
