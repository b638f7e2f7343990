use std::collections::HashMap;
use std::sync::Arc;

use super::search::Search;
use super::site::{Morphism, Object, ObjectData, Site, UNDEF};
use super::FinSetObj;
use crate::error::{Error, Result};
use crate::label::Label;

/// The canonical fiber product `A ×_C B`, elements labelled `(a,b)`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub apex: Object,
    pub left: Morphism,
    pub right: Morphism,
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl Pullback {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn index_of(&self, a: usize, b: usize) -> Option<usize> {
        self.index.get(&(a, b)).copied()
    }

    /// The unique factorization of a compatible cone `(u: D → A, v: D → B)`.
    pub fn mediate(&self, u: &Morphism, v: &Morphism) -> Result<Morphism> {
        if u.source() != v.source() || u.target() != self.left.target() || v.target() != self.right.target() {
            return Err(Error::InvalidMorphism("cone does not match the pullback".into()));
        }
        let map = (0..u.source().len())
            .map(|d| {
                self.index_of(u.apply(d), v.apply(d)).ok_or_else(|| {
                    Error::InvalidMorphism(format!("cone does not commute at {}", u.source().label(d)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism::new_unchecked(u.source().clone(), self.apex.clone(), map))
    }
}

/// The limit of a finite diagram, as the object of compatible families.
#[derive(Clone, Debug)]
pub struct Limit {
    pub object: Object,
    pub families: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Limit {
    pub fn index_of(&self, family: &[usize]) -> Option<usize> {
        self.index.get(family).copied()
    }

    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Coequalizer {
    pub object: Object,
    pub quotient: Morphism,
}

/// Description of a finite diagram: nodes are objects, each edge `(u, v, m)`
/// demands `x_v = m(x_u)`.
pub(crate) struct DiagramSpec<'a> {
    pub nodes: Vec<&'a Object>,
    pub edges: Vec<(usize, usize, Arc<[usize]>)>,
    /// Visiting order for the search; defaults to node order.
    pub order: Option<Vec<usize>>,
}

impl Site {
    pub fn pullback(&self, f: &Morphism, g: &Morphism) -> Result<Pullback> {
        if f.target() != g.target() {
            return Err(Error::InvalidMorphism("pullback legs must share a target".into()));
        }
        let (a, b) = (f.source(), g.source());
        let mut by_image: HashMap<usize, Vec<usize>> = HashMap::new();
        for y in 0..b.len() {
            by_image.entry(g.apply(y)).or_default().push(y);
        }
        let mut pairs = Vec::new();
        for x in 0..a.len() {
            if let Some(ys) = by_image.get(&f.apply(x)) {
                pairs.extend(ys.iter().map(|&y| (x, y)));
            }
        }
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let labels = pairs.iter().map(|&(x, y)| Label::pair(a.label(x), b.label(y))).collect();
        let grade = pairs.iter().map(|&(x, _)| a.grade[x]).collect();
        let ops = (0..self.op_count())
            .map(|k| {
                pairs
                    .iter()
                    .map(|&(x, y)| match (a.op(k, x), b.op(k, y)) {
                        (Some(x2), Some(y2)) => index[&(x2, y2)],
                        _ => UNDEF,
                    })
                    .collect::<Vec<_>>()
                    .into()
            })
            .collect();
        let apex = Object::from_data(ObjectData { set: FinSetObj::from_sorted(labels), grade, ops });
        let left = Morphism::new_unchecked(apex.clone(), a.clone(), pairs.iter().map(|p| p.0).collect());
        let right = Morphism::new_unchecked(apex.clone(), b.clone(), pairs.iter().map(|p| p.1).collect());
        Ok(Pullback { apex, left, right, pairs, index })
    }

    /// Binary product, i.e. the pullback over the terminal object.
    pub fn product(&self, a: &Object, b: &Object) -> Result<Pullback> {
        self.pullback(&self.to_terminal(a), &self.to_terminal(b))
    }

    pub(crate) fn limit(&self, spec: &DiagramSpec<'_>, cap: usize) -> Result<Limit> {
        if spec.nodes.is_empty() {
            let object = self.terminal();
            let families = vec![Vec::new(); object.len()];
            // one empty family per grade; the terminal already carries the labels
            let index = HashMap::new();
            return Ok(Limit { object, families, index });
        }
        let mut families = Vec::new();
        for g in 0..self.grade_count() {
            let domains = spec.nodes.iter().map(|o| o.fiber(g)).collect();
            let mut search = Search::new(domains);
            for (u, v, m) in &spec.edges {
                search.constrain(*u, *v, m.clone());
            }
            if let Some(order) = &spec.order {
                search.order = order.clone();
            }
            let remaining = cap.saturating_sub(families.len());
            families.extend(search.collect(remaining)?);
        }
        families.sort();
        let index: HashMap<Vec<usize>, usize> = families.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        let labels = families
            .iter()
            .map(|f| Label::tuple(f.iter().zip(&spec.nodes).map(|(&x, o)| o.label(x).clone())))
            .collect();
        let first = spec.nodes[0];
        let grade = families.iter().map(|f| first.grade[f[0]]).collect();
        let ops = (0..self.op_count())
            .map(|k| {
                families
                    .iter()
                    .map(|f| {
                        let image: Option<Vec<usize>> =
                            f.iter().zip(&spec.nodes).map(|(&x, o)| o.op(k, x)).collect();
                        image.and_then(|i| index.get(&i).copied()).unwrap_or(UNDEF)
                    })
                    .collect::<Vec<_>>()
                    .into()
            })
            .collect();
        let object = Object::from_data(ObjectData { set: FinSetObj::from_sorted(labels), grade, ops });
        Ok(Limit { object, families, index })
    }

    /// Coequalizer of a parallel pair `f, g: A ⇉ B`: the quotient of `B` by
    /// the smallest congruence identifying `f(a)` with `g(a)`. Classes are
    /// labelled by their least member.
    pub fn coequalizer(&self, f: &Morphism, g: &Morphism) -> Result<Coequalizer> {
        if f.source() != g.source() || f.target() != g.target() {
            return Err(Error::InvalidMorphism("coequalizer needs a parallel pair".into()));
        }
        let b = f.target();
        let n = b.len();
        let mut uf = UnionFind::new(n);
        for a in 0..f.source().len() {
            uf.union(f.apply(a), g.apply(a));
        }
        let inverses: Vec<Vec<usize>> = (0..self.op_count())
            .map(|k| {
                let mut inv = vec![UNDEF; n];
                for x in 0..n {
                    if let Some(y) = b.op(k, x) {
                        inv[y] = x;
                    }
                }
                inv
            })
            .collect();
        // close under the operations and their inverses
        loop {
            let mut changed = false;
            for x in 0..n {
                let r = uf.find(x);
                if r == x {
                    continue;
                }
                for k in 0..self.op_count() {
                    for table in [&b.ops[k][..], &inverses[k][..]] {
                        let (tx, tr) = (table[x], table[r]);
                        if tx != UNDEF && tr != UNDEF && uf.union(tx, tr) {
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut rep_of_class: Vec<usize> = Vec::new();
        let mut class_of = vec![UNDEF; n];
        let mut root_to_class: HashMap<usize, usize> = HashMap::new();
        for x in 0..n {
            let r = uf.find(x);
            let c = *root_to_class.entry(r).or_insert_with(|| {
                rep_of_class.push(x);
                rep_of_class.len() - 1
            });
            class_of[x] = c;
        }
        let labels = rep_of_class.iter().map(|&x| b.label(x).clone()).collect();
        let grade = rep_of_class.iter().map(|&x| b.grade[x]).collect();
        let ops = (0..self.op_count())
            .map(|k| {
                rep_of_class
                    .iter()
                    .map(|&x| b.op(k, x).map_or(UNDEF, |y| class_of[y]))
                    .collect::<Vec<_>>()
                    .into()
            })
            .collect();
        let object = Object::from_data(ObjectData { set: FinSetObj::from_sorted(labels), grade, ops });
        let quotient = Morphism::new_unchecked(b.clone(), object.clone(), class_of);
        Ok(Coequalizer { object, quotient })
    }

    /// Kernel pair `A ×_B A ⇉ A` of `f`.
    pub fn kernel_pair(&self, f: &Morphism) -> Result<Pullback> {
        self.pullback(f, f)
    }

    /// Whether `f` is the coequalizer of its kernel pair.
    pub fn is_effective_epi(&self, f: &Morphism) -> Result<bool> {
        let kp = self.kernel_pair(f)?;
        let coeq = self.coequalizer(&kp.left, &kp.right)?;
        // f factors through the quotient since it coequalizes its kernel pair
        let q = &coeq.quotient;
        let mut comparison = vec![UNDEF; coeq.object.len()];
        for x in 0..f.source().len() {
            let c = q.apply(x);
            if comparison[c] != UNDEF && comparison[c] != f.apply(x) {
                return Ok(false);
            }
            comparison[c] = f.apply(x);
        }
        let cmp = Morphism::new_unchecked(coeq.object.clone(), f.target().clone(), comparison);
        Ok(self.is_iso(&cmp))
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Merges the classes, keeping the smaller root. Returns whether they were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::Label;

    fn set(xs: &[&str]) -> Object {
        Site::finsets().plain_object(FinSetObj::from_atoms(xs).unwrap()).unwrap()
    }

    fn map(a: &Object, b: &Object, m: &[usize]) -> Morphism {
        Site::finsets().morphism(a, b, m.to_vec()).unwrap()
    }

    /// Brute-force oracle: all pairs with equal image.
    fn oracle_pairs(f: &Morphism, g: &Morphism) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..f.source().len() {
            for y in 0..g.source().len() {
                if f.apply(x) == g.apply(y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    #[test]
    fn pullback_of_sets() {
        let site = Site::finsets();
        let (a, b, c) = (set(&["x", "y"]), set(&["z"]), set(&["c"]));
        let f = map(&a, &c, &[0, 0]);
        let g = map(&b, &c, &[0]);
        let pb = site.pullback(&f, &g).unwrap();
        assert_eq!(pb.pairs(), oracle_pairs(&f, &g).as_slice());
        let labels: Vec<String> = pb.apex.set.labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(labels, vec!["(x,z)", "(y,z)"]);
    }

    #[test]
    fn pullback_along_identity_is_source() {
        let site = Site::finsets();
        let (a, c) = (set(&["x", "y", "w"]), set(&["c", "d"]));
        let f = map(&a, &c, &[0, 1, 0]);
        let pb = site.pullback(&f, &site.identity(&c)).unwrap();
        assert_eq!(pb.apex.len(), a.len());
        assert!(site.is_iso(&pb.left));
        assert_eq!(site.compose(&pb.left, &f).unwrap(), pb.right);
    }

    #[test]
    fn pullback_is_symmetric_up_to_swap() {
        let site = Site::finsets();
        let (a, b, c) = (set(&["p", "q", "r"]), set(&["s", "t"]), set(&["c", "d"]));
        let f = map(&a, &c, &[0, 1, 1]);
        let g = map(&b, &c, &[1, 0]);
        let ab = site.pullback(&f, &g).unwrap();
        let ba = site.pullback(&g, &f).unwrap();
        let swap = ba.mediate(&ab.right, &ab.left).unwrap();
        assert!(site.is_iso(&swap));
    }

    #[test]
    fn mediating_morphism_is_unique_and_commutes() {
        let site = Site::finsets();
        let (a, b, c, d) = (set(&["x", "y"]), set(&["z", "w"]), set(&["c"]), set(&["u", "v"]));
        let f = map(&a, &c, &[0, 0]);
        let g = map(&b, &c, &[0, 0]);
        let pb = site.pullback(&f, &g).unwrap();
        let u = map(&d, &a, &[0, 1]);
        let v = map(&d, &b, &[1, 1]);
        let m = pb.mediate(&u, &v).unwrap();
        assert_eq!(site.compose(&m, &pb.left).unwrap(), u);
        assert_eq!(site.compose(&m, &pb.right).unwrap(), v);
        let all = site.hom_set(&d, &pb.apex, usize::MAX).unwrap();
        let matching: Vec<_> = all
            .iter()
            .filter(|h| site.compose(h, &pb.left).unwrap() == u && site.compose(h, &pb.right).unwrap() == v)
            .collect();
        assert_eq!(matching.len(), 1);
    }

    #[test]
    fn empty_pullback_is_legal() {
        let site = Site::finsets();
        let (a, b, c) = (set(&["x"]), set(&["z"]), set(&["c", "d"]));
        let pb = site.pullback(&map(&a, &c, &[0]), &map(&b, &c, &[1])).unwrap();
        assert!(pb.apex.is_empty());
    }

    #[test]
    fn effective_epis_in_sets() {
        let site = Site::finsets();
        let (a, c) = (set(&["x", "y"]), set(&["c"]));
        assert!(site.is_effective_epi(&map(&a, &c, &[0, 0])).unwrap());
        let (x, cd) = (set(&["x"]), set(&["c", "d"]));
        assert!(!site.is_effective_epi(&map(&x, &cd, &[0])).unwrap());
    }

    #[test]
    fn coequalizer_labels_by_least_member() {
        let site = Site::finsets();
        let (a, b) = (set(&["p"]), set(&["u", "v", "w"]));
        let f = map(&a, &b, &[2]);
        let g = map(&a, &b, &[0]);
        let q = site.coequalizer(&f, &g).unwrap();
        assert_eq!(q.object.set.labels(), &[Label::atom("u").unwrap(), Label::atom("v").unwrap()]);
        assert_eq!(q.quotient.map(), &[0, 1, 0]);
    }
}
