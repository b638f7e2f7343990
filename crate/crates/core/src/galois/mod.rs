//! Covers of based finite graphs and their monodromy actions.
//!
//! The fiber functor sends a cover to the fiber over the basepoint with the
//! free fundamental group acting by path lifting; `cover_from_action` is its
//! quasi-inverse.

mod graph;
mod lifted;

pub use graph::{BasedGraph, Graph, GraphCover, GraphEdge, Step};
pub use lifted::{
    fiber_functor_ngrpd, fiber_functor_ngrpd_map, fiber_level_functor, fiber_site, pull_out_action, push_in_action, verify_correspondence_exactness,
    CorrespondenceReport, EquivariantObject,
};

use crate::error::{Error, Result};
use crate::fincat::{FinSetObj, Morphism, Object, Site, SiteKind, UNDEF};
use crate::gset::GroupSpec;
use crate::label::Label;

/// An action of the free group on the generators of a based graph: one
/// permutation of the fiber per non-tree edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermAction {
    pub fiber: FinSetObj,
    pub perms: Vec<Vec<usize>>,
}

impl PermAction {
    pub fn new(fiber: FinSetObj, perms: Vec<Vec<usize>>) -> Result<PermAction> {
        let n = fiber.len();
        for (i, p) in perms.iter().enumerate() {
            let mut seen = vec![false; n];
            if p.len() != n || p.iter().any(|&y| y >= n || std::mem::replace(&mut seen[y], true)) {
                return Err(Error::InvalidObject(format!("generator {i} is not a bijection of the fiber")));
            }
        }
        Ok(PermAction { fiber, perms })
    }

    pub fn rank(&self) -> usize {
        self.perms.len()
    }

    /// The action as an object of `F_r`-FinSets.
    pub fn to_gset(&self) -> (Site, Object) {
        let site = Site::gsets(GroupSpec::free(self.rank()));
        let obj = site
            .object(self.fiber.clone(), vec![0; self.fiber.len()], self.perms.clone())
            .expect("permutations were validated");
        (site, obj)
    }

    pub fn from_gset(obj: &Object) -> PermAction {
        PermAction { fiber: obj.set.clone(), perms: obj.ops.iter().map(|t| t.to_vec()).collect() }
    }

    /// Every action of `F_rank` on `{1..n}`, in lexicographic order of the
    /// permutation lists.
    pub fn enumerate(rank: usize, n: usize) -> Vec<PermAction> {
        let mut perms = Vec::new();
        crate::gset::permutations_of(n, &mut perms);
        let fiber = FinSetObj::numbered(n);
        let mut out = vec![Vec::new()];
        for _ in 0..rank {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Vec<usize>>| {
                    perms.iter().map(move |p| {
                        let mut v = prefix.clone();
                        v.push(p.clone());
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|p| PermAction { fiber: fiber.clone(), perms: p }).collect()
    }

    /// Canonical form under relabelling of the fiber: the lexicographically
    /// least conjugate.
    pub fn canonical(&self) -> Vec<Vec<usize>> {
        let n = self.fiber.len();
        let mut sigmas = Vec::new();
        crate::gset::permutations_of(n, &mut sigmas);
        sigmas
            .iter()
            .map(|s| {
                let mut inv = vec![0; n];
                for (x, &y) in s.iter().enumerate() {
                    inv[y] = x;
                }
                self.perms.iter().map(|p| (0..n).map(|y| s[p[inv[y]]]).collect::<Vec<_>>()).collect::<Vec<_>>()
            })
            .min()
            .unwrap_or_else(|| self.perms.clone())
    }

    /// A bijection `s` of the fiber with `s ∘ p = q ∘ s` for every generator.
    pub fn conjugacy(&self, other: &PermAction) -> Option<Vec<usize>> {
        if self.rank() != other.rank() {
            return None;
        }
        let ((site, a), (_, b)) = (self.to_gset(), other.to_gset());
        site.find_isomorphism(&a, &b).ok().flatten().map(|m| m.map().to_vec())
    }
}

fn base_of(site: &Site) -> Result<&BasedGraph> {
    match site.kind() {
        SiteKind::GraphCov(b) => Ok(b),
        _ => Err(Error::InvalidObject("expected a graph-cover site".into())),
    }
}

fn inverse_op(obj: &Object, k: usize, y: usize) -> usize {
    obj.ops[k].iter().position(|&z| z == y).unwrap_or(UNDEF)
}

/// Transport `x` along a path of steps starting at its vertex.
fn walk(obj: &Object, path: &[Step], x: usize) -> usize {
    path.iter().fold(x, |y, &(e, fwd)| if fwd { obj.ops[e][y] } else { inverse_op(obj, e, y) })
}

fn walk_back(obj: &Object, path: &[Step], x: usize) -> usize {
    path.iter().rev().fold(x, |y, &(e, fwd)| if fwd { inverse_op(obj, e, y) } else { obj.ops[e][y] })
}

/// The basepoint fiber of a cover with its monodromy. Generator `e` sends `x`
/// to the endpoint of the lift of (tree path to `s(e)`) · `e` · (tree path
/// back) starting at `x`.
pub fn fiber_functor(site: &Site, cover: &Object) -> Result<PermAction> {
    let base = base_of(site)?;
    site.validate_object(cover)?;
    let fiber_idx = cover.fiber(base.base());
    let fiber = FinSetObj::from_sorted(fiber_idx.iter().map(|&x| cover.label(x).clone()).collect());
    let local = |x: usize| fiber_idx.binary_search(&x).expect("monodromy stays in the fiber");
    let perms = base
        .generators()
        .iter()
        .map(|&e| {
            let edge = &base.edges()[e];
            fiber_idx
                .iter()
                .map(|&x| {
                    let y = walk(cover, base.tree_path(edge.source), x);
                    let z = cover.ops[e][y];
                    local(walk_back(cover, base.tree_path(edge.target), z))
                })
                .collect()
        })
        .collect();
    PermAction::new(fiber, perms)
}

/// The fiber functor on a morphism of covers: restriction to basepoint fibers.
pub fn fiber_functor_map(site: &Site, f: &Morphism) -> Result<(PermAction, PermAction, Vec<usize>)> {
    let base = base_of(site)?;
    let a = fiber_functor(site, f.source())?;
    let b = fiber_functor(site, f.target())?;
    let src = f.source().fiber(base.base());
    let tgt = f.target().fiber(base.base());
    let map = src.iter().map(|&x| tgt.binary_search(&f.apply(x)).expect("grade preserved")).collect();
    Ok((a, b, map))
}

/// The cover with vertex set `fiber × vertices`, spread along the tree. The
/// copy of `x` over the basepoint keeps the label `x`; over any other vertex
/// `v` it is labelled `(x,v)`.
pub fn cover_from_action(site: &Site, action: &PermAction) -> Result<Object> {
    let base = base_of(site)?;
    if action.rank() != base.rank() {
        return Err(Error::InvalidObject(format!(
            "action has {} generators, the base has rank {}",
            action.rank(),
            base.rank()
        )));
    }
    let n = action.fiber.len();
    let nv = base.vertices().len();
    let label = |x: usize, v: usize| {
        if v == base.base() {
            action.fiber.label(x).clone()
        } else {
            Label::pair(action.fiber.label(x), base.vertices().label(v))
        }
    };
    let mut raw = Vec::with_capacity(n * nv);
    for v in 0..nv {
        for x in 0..n {
            raw.push((label(x, v), x, v));
        }
    }
    let set = FinSetObj::new(raw.iter().map(|r| r.0.clone()).collect())?;
    let mut at = vec![vec![0; n]; nv];
    for (l, x, v) in &raw {
        at[*v][*x] = set.index_of(l).unwrap();
    }
    let mut grade = vec![0; set.len()];
    for (v, row) in at.iter().enumerate() {
        for &i in row {
            grade[i] = v;
        }
    }
    let mut gen_of = vec![None; base.edges().len()];
    for (g, &e) in base.generators().iter().enumerate() {
        gen_of[e] = Some(g);
    }
    let ops = base
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            let mut t = vec![UNDEF; set.len()];
            for x in 0..n {
                let y = gen_of[e].map_or(x, |g| action.perms[g][x]);
                t[at[edge.source][x]] = at[edge.target][y];
            }
            t
        })
        .collect();
    site.object(set, grade, ops)
}

/// The permutation of the fiber induced by lifting a closed walk at the
/// basepoint, computed from an action relative to the tree of `base`: tree
/// edges act trivially, generators by their permutations (inverted when
/// walked backwards), composed in traversal order.
pub fn loop_monodromy(base: &BasedGraph, action: &PermAction, walk: &[Step]) -> Vec<usize> {
    let n = action.fiber.len();
    let mut gen_of = vec![None; base.edges().len()];
    for (g, &e) in base.generators().iter().enumerate() {
        gen_of[e] = Some(g);
    }
    (0..n)
        .map(|x| {
            walk.iter().fold(x, |y, &(e, fwd)| match gen_of[e] {
                None => y,
                Some(g) if fwd => action.perms[g][y],
                Some(g) => action.perms[g].iter().position(|&z| z == y).unwrap(),
            })
        })
        .collect()
}

/// The loop at the basepoint defining generator `e`: tree path to `s(e)`,
/// then `e`, then the tree path from `t(e)` back.
pub fn generator_loop(base: &BasedGraph, e: usize) -> Vec<Step> {
    let edge = &base.edges()[e];
    let mut walk = base.tree_path(edge.source).to_vec();
    walk.push((e, true));
    walk.extend(base.tree_path(edge.target).iter().rev().map(|&(f, fwd)| (f, !fwd)));
    walk
}

/// An isomorphism `cover ≅ cover_from_action(fiber_functor(cover))`.
pub fn roundtrip_iso(site: &Site, cover: &Object) -> Result<Option<Morphism>> {
    let rebuilt = cover_from_action(site, &fiber_functor(site, cover)?)?;
    site.find_isomorphism(cover, &rebuilt)
}

/// Whether the total graph of a cover is connected.
pub fn is_connected(site: &Site, cover: &Object) -> Result<bool> {
    Ok(GraphCover::from_object(site, cover)?.total.component_count() == 1)
}

/// Every cover of degree `degree`, one per isomorphism class.
pub fn covers_of_degree(site: &Site, degree: usize) -> Result<Vec<Object>> {
    let base = base_of(site)?;
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for a in PermAction::enumerate(base.rank(), degree) {
        if seen.insert(a.canonical()) {
            out.push(cover_from_action(site, &a)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gset::orbits;

    fn fig8() -> Site {
        Site::graph_covers(BasedGraph::figure_eight())
    }

    fn action(n: usize, perms: Vec<Vec<usize>>) -> PermAction {
        PermAction::new(FinSetObj::numbered(n), perms).unwrap()
    }

    #[test]
    fn trivial_cover_has_trivial_monodromy() {
        let site = fig8();
        let a = fiber_functor(&site, &site.terminal()).unwrap();
        assert_eq!(a.fiber.len(), 1);
        assert_eq!(a.perms, vec![vec![0], vec![0]]);
    }

    #[test]
    fn swap_double_cover_by_path_lifting() {
        let site = fig8();
        let a = action(2, vec![vec![1, 0], vec![0, 1]]);
        let c = cover_from_action(&site, &a).unwrap();
        assert_eq!(c.len(), 2);
        let g = GraphCover::from_object(&site, &c).unwrap();
        assert_eq!(g.total.edges().len(), 4);
        assert!(is_connected(&site, &c).unwrap());
        // lift the loop a from each vertex by hand: the a-edge leaving x
        let ai = g.total.edges().iter().filter(|e| g.proj_e[g.total.edge_index(&e.label).unwrap()] == 0);
        let targets: Vec<usize> = ai.map(|e| e.target).collect();
        assert_eq!(targets, vec![1, 0]);
        assert_eq!(fiber_functor(&site, &c).unwrap(), a);
    }

    #[test]
    fn disjoint_trivial_covers() {
        let site = fig8();
        let a = action(2, vec![vec![0, 1], vec![0, 1]]);
        let c = cover_from_action(&site, &a).unwrap();
        assert!(!is_connected(&site, &c).unwrap());
        let (_, g) = fiber_functor(&site, &c).unwrap().to_gset();
        assert_eq!(orbits(&g).len(), 2);
    }

    #[test]
    fn theta_roundtrip_and_tree_change_rewrites_generators() {
        let base = BasedGraph::theta();
        let site = Site::graph_covers(base.clone());
        let a = action(3, vec![vec![1, 2, 0], vec![1, 0, 2]]);
        let c = cover_from_action(&site, &a).unwrap();
        assert_eq!(fiber_functor(&site, &c).unwrap(), a);
        for tree in base.spanning_trees() {
            let other = Site::graph_covers(base.with_tree(&tree).unwrap());
            let c2 = other.object(c.set.clone(), c.grade.clone(), c.ops.iter().map(|t| t.to_vec()).collect()).unwrap();
            let b = fiber_functor(&other, &c2).unwrap();
            let new_base = match other.kind() {
                SiteKind::GraphCov(g) => g.clone(),
                _ => unreachable!(),
            };
            for (g, &e) in new_base.generators().iter().enumerate() {
                let walk = generator_loop(&new_base, e);
                assert_eq!(loop_monodromy(&base, &a, &walk), b.perms[g], "tree {tree:?}");
            }
        }
    }

    #[test]
    fn degree_three_connected_roundtrip() {
        let site = fig8();
        let a = action(3, vec![vec![1, 2, 0], vec![1, 0, 2]]);
        let c = cover_from_action(&site, &a).unwrap();
        assert!(roundtrip_iso(&site, &c).unwrap().is_some());
    }

    #[test]
    fn iso_class_counts() {
        let site = fig8();
        assert_eq!(covers_of_degree(&site, 1).unwrap().len(), 1);
        assert_eq!(covers_of_degree(&site, 2).unwrap().len(), 4);
        // pairs of permutations of 3 points up to simultaneous conjugation
        assert_eq!(covers_of_degree(&site, 3).unwrap().len(), 11);
    }
}
