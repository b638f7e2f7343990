//! Finite directed graphs, based graphs with spanning trees, and covers.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::fincat::{FinSetObj, Object, Site, SiteKind, UNDEF};
use crate::label::Label;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphEdge {
    pub label: Label,
    pub source: usize,
    pub target: usize,
}

/// A finite directed multigraph. Edges are sorted by label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: FinSetObj,
    edges: Vec<GraphEdge>,
}

impl Graph {
    /// Edges are given as `(label, source, target)` by vertex label.
    pub fn new(vertices: FinSetObj, edges: Vec<(Label, Label, Label)>) -> Result<Graph> {
        let mut out = Vec::with_capacity(edges.len());
        for (label, s, t) in edges {
            let find = |v: &Label| {
                vertices
                    .index_of(v)
                    .ok_or_else(|| Error::InvalidObject(format!("edge {label} uses unknown vertex {v}")))
            };
            out.push(GraphEdge { source: find(&s)?, target: find(&t)?, label: label.clone() });
        }
        out.sort_by(|a, b| a.label.cmp(&b.label));
        if out.windows(2).any(|w| w[0].label == w[1].label) {
            return Err(Error::InvalidObject("duplicate edge label".into()));
        }
        Ok(Graph { vertices, edges: out })
    }

    pub fn vertices(&self) -> &FinSetObj {
        &self.vertices
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn edge_index(&self, label: &Label) -> Option<usize> {
        self.edges.binary_search_by(|e| e.label.cmp(label)).ok()
    }

    /// Connected components of the underlying undirected graph.
    pub fn component_count(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut count = n;
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.source), find(&mut parent, e.target));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }
}

/// A step along an edge, forwards or backwards.
pub type Step = (usize, bool);

/// A connected graph with a basepoint and a spanning tree. The edges outside
/// the tree, in label order, freely generate the fundamental group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasedGraph {
    graph: Graph,
    base: usize,
    tree: Vec<usize>,
    /// Path from the basepoint to each vertex along the tree.
    paths: Vec<Vec<Step>>,
    generators: Vec<usize>,
}

impl BasedGraph {
    pub fn new(graph: Graph, base: Label, tree: &[Label]) -> Result<BasedGraph> {
        let bad = |m: String| Err(Error::InvalidObject(m));
        let Some(base) = graph.vertices.index_of(&base) else {
            return bad(format!("basepoint {base} is not a vertex"));
        };
        let mut tree_idx = Vec::new();
        for l in tree {
            match graph.edge_index(l) {
                Some(i) => tree_idx.push(i),
                None => return bad(format!("tree edge {l} is not an edge")),
            }
        }
        tree_idx.sort_unstable();
        tree_idx.dedup();
        let n = graph.vertices.len();
        if tree_idx.len() + 1 != n {
            return bad(format!("a spanning tree on {n} vertices has {} edges, got {}", n.saturating_sub(1), tree_idx.len()));
        }
        let mut paths: Vec<Option<Vec<Step>>> = vec![None; n];
        paths[base] = Some(Vec::new());
        let mut queue = VecDeque::from([base]);
        while let Some(v) = queue.pop_front() {
            for &e in &tree_idx {
                let edge = &graph.edges[e];
                let next = if edge.source == v {
                    Some((edge.target, (e, true)))
                } else if edge.target == v {
                    Some((edge.source, (e, false)))
                } else {
                    None
                };
                if let Some((w, step)) = next {
                    if paths[w].is_none() {
                        let mut p = paths[v].clone().unwrap();
                        p.push(step);
                        paths[w] = Some(p);
                        queue.push_back(w);
                    }
                }
            }
        }
        if paths.iter().any(Option::is_none) {
            return bad("tree does not span the graph".into());
        }
        let generators = (0..graph.edges.len()).filter(|e| tree_idx.binary_search(e).is_err()).collect();
        Ok(BasedGraph { graph, base, tree: tree_idx, paths: paths.into_iter().map(Option::unwrap).collect(), generators })
    }

    /// One vertex `o` with loops `a` and `b`.
    pub fn figure_eight() -> BasedGraph {
        let v = FinSetObj::from_atoms(&["o"]).unwrap();
        let o = Label::from_static("o");
        let edges = vec![
            (Label::from_static("a"), o.clone(), o.clone()),
            (Label::from_static("b"), o.clone(), o.clone()),
        ];
        BasedGraph::new(Graph::new(v, edges).unwrap(), o, &[]).unwrap()
    }

    /// Two vertices `p`, `q` joined by three edges `a`, `b`, `c` from `p` to
    /// `q`; the tree is `{a}`.
    pub fn theta() -> BasedGraph {
        let v = FinSetObj::from_atoms(&["p", "q"]).unwrap();
        let (p, q) = (Label::from_static("p"), Label::from_static("q"));
        let edges = ["a", "b", "c"].iter().map(|e| (Label::from_static(e), p.clone(), q.clone())).collect();
        BasedGraph::new(Graph::new(v, edges).unwrap(), p, &[Label::from_static("a")]).unwrap()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertices(&self) -> &FinSetObj {
        &self.graph.vertices
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.graph.edges
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn tree(&self) -> &[usize] {
        &self.tree
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.tree.binary_search(&e).is_ok()
    }

    /// Non-tree edges in label order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn tree_path(&self, v: usize) -> &[Step] {
        &self.paths[v]
    }

    /// The same graph with a different spanning tree.
    pub fn with_tree(&self, tree: &[Label]) -> Result<BasedGraph> {
        BasedGraph::new(self.graph.clone(), self.graph.vertices.label(self.base).clone(), tree)
    }

    /// Every spanning tree, as edge-label lists.
    pub fn spanning_trees(&self) -> Vec<Vec<Label>> {
        let m = self.graph.edges.len();
        let need = self.graph.vertices.len() - 1;
        let mut out = Vec::new();
        let mut pick = Vec::new();
        fn rec(g: &BasedGraph, start: usize, m: usize, need: usize, pick: &mut Vec<Label>, out: &mut Vec<Vec<Label>>) {
            if pick.len() == need {
                if g.with_tree(pick).is_ok() {
                    out.push(pick.clone());
                }
                return;
            }
            for e in start..m {
                pick.push(g.graph.edges[e].label.clone());
                rec(g, e + 1, m, need, pick, out);
                pick.pop();
            }
        }
        rec(self, 0, m, need, &mut pick, &mut out);
        out
    }
}

/// A finite cover of a based graph, presented by its total graph and the
/// projection. Converting to a site object checks the star condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCover {
    pub total: Graph,
    pub proj_v: Vec<usize>,
    pub proj_e: Vec<usize>,
}

impl GraphCover {
    pub fn new(total: Graph, proj_v: &BTreeMap<Label, Label>, proj_e: &BTreeMap<Label, Label>, base: &BasedGraph) -> Result<GraphCover> {
        let bad = |m: String| Err(Error::InvalidObject(m));
        let mut pv = Vec::new();
        for v in total.vertices.labels() {
            match proj_v.get(v).and_then(|b| base.vertices().index_of(b)) {
                Some(b) => pv.push(b),
                None => return bad(format!("vertex {v} has no valid projection")),
            }
        }
        let mut pe = Vec::new();
        for e in &total.edges {
            match proj_e.get(&e.label).and_then(|b| base.graph.edge_index(b)) {
                Some(b) => pe.push(b),
                None => return bad(format!("edge {} has no valid projection", e.label)),
            }
        }
        if proj_v.len() != pv.len() || proj_e.len() != pe.len() {
            return bad("projection mentions unknown cells".into());
        }
        Ok(GraphCover { total, proj_v: pv, proj_e: pe })
    }

    /// The cover as an object of `GraphCov(base)`: an element per total
    /// vertex, graded by its image, with each base edge acting by lifting.
    pub fn to_object(&self, site: &Site) -> Result<Object> {
        let SiteKind::GraphCov(base) = site.kind() else {
            return Err(Error::InvalidObject("covers live in a graph-cover site".into()));
        };
        let n = self.total.vertices.len();
        let mut ops = vec![vec![UNDEF; n]; base.edges().len()];
        for (k, e) in self.total.edges.iter().enumerate() {
            let b = &base.edges()[self.proj_e[k]];
            if self.proj_v[e.source] != b.source || self.proj_v[e.target] != b.target {
                return Err(Error::InvalidObject(format!("edge {} does not lie over {}", e.label, b.label)));
            }
            let slot = &mut ops[self.proj_e[k]][e.source];
            if *slot != UNDEF {
                return Err(Error::InvalidObject(format!(
                    "two lifts of {} start at {}",
                    b.label,
                    self.total.vertices.label(e.source)
                )));
            }
            *slot = e.target;
        }
        site.object(self.total.vertices.clone(), self.proj_v.clone(), ops)
    }

    /// The canonical total graph of a site object: edges are labelled
    /// `(e,x)` for the lift of base edge `e` starting at `x`.
    pub fn from_object(site: &Site, obj: &Object) -> Result<GraphCover> {
        let SiteKind::GraphCov(base) = site.kind() else {
            return Err(Error::InvalidObject("covers live in a graph-cover site".into()));
        };
        let mut edges = Vec::new();
        let mut proj = Vec::new();
        for (k, e) in base.edges().iter().enumerate() {
            for x in 0..obj.len() {
                if let Some(y) = obj.op(k, x) {
                    let label = Label::pair(&e.label, obj.label(x));
                    edges.push((label.clone(), obj.label(x).clone(), obj.label(y).clone()));
                    proj.push((label, k));
                }
            }
        }
        let total = Graph::new(obj.set.clone(), edges)?;
        let lookup: BTreeMap<Label, usize> = proj.into_iter().collect();
        let proj_e = total.edges.iter().map(|e| lookup[&e.label]).collect();
        Ok(GraphCover { total, proj_v: obj.grade.clone(), proj_e })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_eight_has_rank_two() {
        let g = BasedGraph::figure_eight();
        assert_eq!(g.rank(), 2);
        assert_eq!(g.spanning_trees(), vec![Vec::<Label>::new()]);
    }

    #[test]
    fn theta_has_three_trees_and_rank_two() {
        let g = BasedGraph::theta();
        assert_eq!(g.rank(), 2);
        assert_eq!(g.spanning_trees().len(), 3);
        assert_eq!(g.tree_path(1), &[(0, true)]);
    }

    #[test]
    fn non_spanning_tree_rejected() {
        let g = BasedGraph::theta();
        assert!(g.with_tree(&[]).is_err());
        assert!(g.with_tree(&[Label::atom("a").unwrap(), Label::atom("b").unwrap()]).is_err());
    }

    #[test]
    fn star_condition_enforced() {
        let base = BasedGraph::figure_eight();
        let site = Site::graph_covers(base.clone());
        let v = FinSetObj::from_atoms(&["1", "2"]).unwrap();
        let l = |s: &str| Label::atom(s).unwrap();
        // two a-lifts at vertex 1, none at 2
        let total = Graph::new(
            v,
            vec![
                (l("a1"), l("1"), l("1")),
                (l("a2"), l("1"), l("2")),
                (l("b1"), l("1"), l("1")),
                (l("b2"), l("2"), l("2")),
            ],
        )
        .unwrap();
        let pv = [("1", "o"), ("2", "o")].iter().map(|(a, b)| (l(a), l(b))).collect();
        let pe = [("a1", "a"), ("a2", "a"), ("b1", "b"), ("b2", "b")].iter().map(|(a, b)| (l(a), l(b))).collect();
        let c = GraphCover::new(total, &pv, &pe, &base).unwrap();
        assert!(c.to_object(&site).is_err());
    }
}
