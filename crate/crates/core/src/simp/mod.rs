//! Δ-combinatorics and truncated simplicial objects in a site.

mod extend;
mod hom;
mod object;

pub use extend::{extend_by_fillers, extend_by_fillers_with, FillerHorn};
pub use hom::{
    boundary_matching_map, evaluate, hom_into, matching_map, post_compose, relative_matching_map, restrict_along, restrict_level, HomObject,
};
pub use object::{LevelPullback, SimplicialMorphism, SimplicialObject};

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::label::Label;

/// A nondecreasing map `[m] → [k]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrdinalMap {
    values: Vec<usize>,
    k: usize,
}

impl OrdinalMap {
    pub fn new(values: Vec<usize>, k: usize) -> Result<OrdinalMap> {
        if values.is_empty() {
            return Err(Error::Precondition("an ordinal map has a nonempty domain".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) || values.iter().any(|&v| v > k) {
            return Err(Error::Precondition(format!("{values:?} is not a nondecreasing map into [{k}]")));
        }
        Ok(OrdinalMap { values, k })
    }

    pub fn identity(m: usize) -> OrdinalMap {
        OrdinalMap { values: (0..=m).collect(), k: m }
    }

    pub fn constant(m: usize, value: usize, k: usize) -> OrdinalMap {
        OrdinalMap { values: vec![value; m + 1], k }
    }

    /// The coface `δ^i: [m-1] → [m]`, skipping `i`.
    pub fn coface(i: usize, m: usize) -> OrdinalMap {
        OrdinalMap { values: (0..=m).filter(|&v| v != i).collect(), k: m }
    }

    /// The codegeneracy `σ^j: [m+1] → [m]`, hitting `j` twice.
    pub fn codegeneracy(j: usize, m: usize) -> OrdinalMap {
        OrdinalMap { values: (0..=m + 1).map(|v| if v <= j { v } else { v - 1 }).collect(), k: m }
    }

    /// Every nondecreasing map `[m] → [k]`, lexicographically.
    pub fn all(m: usize, k: usize) -> Vec<OrdinalMap> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m + 1);
        fn rec(m: usize, k: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<OrdinalMap>) {
            if cur.len() == m + 1 {
                out.push(OrdinalMap { values: cur.clone(), k });
                return;
            }
            for v in lo..=k {
                cur.push(v);
                rec(m, k, v, cur, out);
                cur.pop();
            }
        }
        rec(m, k, 0, &mut cur, &mut out);
        out
    }

    pub fn dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn codim(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &OrdinalMap) -> OrdinalMap {
        assert_eq!(other.k, self.dim(), "ordinal maps are not composable");
        OrdinalMap { values: other.values.iter().map(|&v| self.values[v]).collect(), k: self.k }
    }

    pub fn is_surjective(&self) -> bool {
        (0..=self.k).all(|v| self.values.contains(&v))
    }

    pub fn image(&self) -> Vec<usize> {
        let mut im = self.values.clone();
        im.dedup();
        im
    }

    fn render(&self) -> String {
        let sep = if self.k >= 10 { "." } else { "" };
        self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
    }
}

impl fmt::Debug for OrdinalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→[{}]", self.render(), self.k)
    }
}

/// A finite simplicial set truncated at level `N`. Cells are tuples of
/// ordinal maps (one component for sub-simplicial sets of `Δ^k`, two for
/// products), degenerate cells included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSimplicialSet {
    n: usize,
    factors: Vec<usize>,
    coords: Vec<Vec<Vec<OrdinalMap>>>,
    labels: Vec<Vec<Label>>,
    index: Vec<HashMap<Vec<OrdinalMap>, usize>>,
    /// `d[m][i]`, for `m ≥ 1`.
    d: Vec<Vec<Vec<usize>>>,
    /// `s[m][j]`, for `m < N`.
    s: Vec<Vec<Vec<usize>>>,
    nondegenerate: Vec<Vec<bool>>,
}

impl FiniteSimplicialSet {
    /// The sub-simplicial set of `Δ^{k_1} × … × Δ^{k_r}` of cells satisfying
    /// `keep`, which must be closed under faces and degeneracies.
    pub fn from_predicate(n: usize, factors: &[usize], keep: impl Fn(&[OrdinalMap]) -> bool) -> Result<FiniteSimplicialSet> {
        let mut coords = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut level: Vec<Vec<OrdinalMap>> = vec![Vec::new()];
            for &k in factors {
                let choices = OrdinalMap::all(m, k);
                level = level
                    .into_iter()
                    .flat_map(|prefix| {
                        choices.iter().map(move |c| {
                            let mut v = prefix.clone();
                            v.push(c.clone());
                            v
                        })
                    })
                    .collect();
            }
            level.retain(|c| keep(c));
            level.sort();
            coords.push(level);
        }
        let index: Vec<HashMap<Vec<OrdinalMap>, usize>> = coords
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
            .collect();
        let lookup = |m: usize, c: Vec<OrdinalMap>| {
            index[m].get(&c).copied().ok_or_else(|| Error::Precondition("cell set is not closed under structure maps".into()))
        };
        let mut d = vec![Vec::new()];
        for m in 1..=n {
            let mut faces = Vec::new();
            for i in 0..=m {
                let delta = OrdinalMap::coface(i, m);
                let table = coords[m]
                    .iter()
                    .map(|c| lookup(m - 1, c.iter().map(|a| a.after(&delta)).collect()))
                    .collect::<Result<Vec<_>>>()?;
                faces.push(table);
            }
            d.push(faces);
        }
        let mut s = Vec::new();
        for m in 0..n {
            let mut degs = Vec::new();
            for j in 0..=m {
                let sigma = OrdinalMap::codegeneracy(j, m);
                let table = coords[m]
                    .iter()
                    .map(|c| lookup(m + 1, c.iter().map(|a| a.after(&sigma)).collect()))
                    .collect::<Result<Vec<_>>>()?;
                degs.push(table);
            }
            s.push(degs);
        }
        s.push(Vec::new());
        let mut nondegenerate: Vec<Vec<bool>> = coords.iter().map(|l| vec![true; l.len()]).collect();
        for m in 0..n {
            for table in &s[m] {
                for &c in table {
                    nondegenerate[m + 1][c] = false;
                }
            }
        }
        let labels = coords
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|c| {
                        if c.len() == 1 {
                            Label::from_static(&c[0].render())
                        } else {
                            Label::tuple(c.iter().map(|a| Label::from_static(&a.render())))
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(FiniteSimplicialSet { n, factors: factors.to_vec(), coords, labels, index, d, s, nondegenerate })
    }

    /// `Δ^k`: every ordinal map `[m] → [k]`.
    pub fn standard_simplex(k: usize, n: usize) -> FiniteSimplicialSet {
        Self::from_predicate(n, &[k], |_| true).expect("Δ^k is closed")
    }

    /// `∂Δ^k`: the non-surjective maps.
    pub fn boundary(k: usize, n: usize) -> Result<FiniteSimplicialSet> {
        if k == 0 {
            return Self::from_predicate(n, &[0], |_| false);
        }
        Self::from_predicate(n, &[k], |c| !c[0].is_surjective())
    }

    /// `Λ^k_i`: maps whose image together with `i` misses some vertex.
    pub fn horn(k: usize, i: usize, n: usize) -> Result<FiniteSimplicialSet> {
        if k == 0 || i > k {
            return Err(Error::Precondition(format!("no horn Λ^{k}_{i}")));
        }
        Self::from_predicate(n, &[k], |c| {
            let im = c[0].values();
            (0..=k).any(|v| v != i && !im.contains(&v))
        })
    }

    /// `Δ^m × Δ^n`.
    pub fn product_simplex(m: usize, n: usize, trunc: usize) -> FiniteSimplicialSet {
        Self::from_predicate(trunc, &[m, n], |_| true).expect("products are closed")
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn level_len(&self, m: usize) -> usize {
        self.coords[m].len()
    }

    pub fn cells(&self, m: usize) -> &[Label] {
        &self.labels[m]
    }

    pub fn coords(&self, m: usize, c: usize) -> &[OrdinalMap] {
        &self.coords[m][c]
    }

    pub fn cell_index(&self, m: usize, coords: &[OrdinalMap]) -> Option<usize> {
        self.index.get(m)?.get(coords).copied()
    }

    pub fn face(&self, m: usize, i: usize) -> &[usize] {
        &self.d[m][i]
    }

    pub fn degeneracy(&self, m: usize, j: usize) -> &[usize] {
        &self.s[m][j]
    }

    pub fn is_nondegenerate(&self, m: usize, c: usize) -> bool {
        self.nondegenerate[m][c]
    }

    /// Highest level carrying a nondegenerate cell, if any cell exists.
    pub fn dimension(&self) -> Option<usize> {
        (0..=self.n).rev().find(|&m| self.nondegenerate[m].iter().any(|&b| b))
    }

    /// Some `(j, c')` with `c = s_j c'`, for a degenerate cell `c` at level `m`.
    pub(crate) fn degeneracy_source(&self, m: usize, c: usize) -> Option<(usize, usize)> {
        if m == 0 {
            return None;
        }
        for (j, table) in self.s[m - 1].iter().enumerate() {
            if let Some(src) = table.iter().position(|&x| x == c) {
                return Some((j, src));
            }
        }
        None
    }

    /// Checks every simplicial identity on every cell.
    pub fn check_identities(&self) -> Result<()> {
        object::check_identities(
            self.n,
            |m| self.level_len(m),
            |m, i, x| self.d[m][i][x],
            |m, j, x| self.s[m][j][x],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_simplex_counts() {
        assert!((0..4).all(|m| FiniteSimplicialSet::standard_simplex(0, 3).level_len(m) == 1));
        assert_eq!(FiniteSimplicialSet::standard_simplex(2, 2).level_len(1), 6);
        assert_eq!(FiniteSimplicialSet::standard_simplex(1, 2).level_len(2), 4);
    }

    #[test]
    fn boundary_counts() {
        let b2 = FiniteSimplicialSet::boundary(2, 2).unwrap();
        assert_eq!((b2.level_len(1), b2.level_len(2)), (6, 9));
        let b1 = FiniteSimplicialSet::boundary(1, 4).unwrap();
        assert!((0..=4).all(|m| b1.level_len(m) == 2));
        assert_eq!(FiniteSimplicialSet::boundary(0, 3).unwrap().dimension(), None);
    }

    #[test]
    fn horn_counts() {
        assert_eq!(FiniteSimplicialSet::horn(1, 0, 1).unwrap().cells(0), &[Label::atom("0").unwrap()]);
        assert_eq!(FiniteSimplicialSet::horn(2, 1, 2).unwrap().level_len(1), 5);
    }

    #[test]
    fn product_counts() {
        let p = FiniteSimplicialSet::product_simplex(1, 1, 2);
        assert_eq!(p.level_len(1), 9);
        assert_eq!((0..p.level_len(2)).filter(|&c| p.is_nondegenerate(2, c)).count(), 2);
        let q = FiniteSimplicialSet::product_simplex(2, 0, 3);
        let d = FiniteSimplicialSet::standard_simplex(2, 3);
        assert!((0..=3).all(|m| q.level_len(m) == d.level_len(m)));
    }

    #[test]
    fn identities_hold() {
        for k in 0..4 {
            FiniteSimplicialSet::standard_simplex(k, 4).check_identities().unwrap();
            if k > 0 {
                FiniteSimplicialSet::boundary(k, 4).unwrap().check_identities().unwrap();
                for i in 0..=k {
                    FiniteSimplicialSet::horn(k, i, 4).unwrap().check_identities().unwrap();
                }
            }
        }
        FiniteSimplicialSet::product_simplex(2, 1, 3).check_identities().unwrap();
    }

    #[test]
    fn composition_of_cofaces() {
        // δ^j δ^i = δ^i δ^{j-1} for i < j
        for m in 2..5 {
            for j in 1..=m {
                for i in 0..j {
                    let lhs = OrdinalMap::coface(j, m).after(&OrdinalMap::coface(i, m - 1));
                    let rhs = OrdinalMap::coface(i, m).after(&OrdinalMap::coface(j - 1, m - 1));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
