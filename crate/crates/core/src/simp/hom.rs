//! `Hom(S, X)` for a finite simplicial set `S`, computed as the limit of `X`
//! over the cells of `S`, and the restriction maps between such limits.

use std::sync::Arc;

use super::{FiniteSimplicialSet, OrdinalMap, SimplicialMorphism, SimplicialObject};
use crate::error::{Error, Result};
use crate::fincat::limits::DiagramSpec;
use crate::fincat::{Limit, Morphism, Object, Pullback, UNDEF};

/// The object of compatible families `Hom(S, X)`.
///
/// Only cells up to the dimension of `S` enter the diagram: above it every
/// cell is degenerate and its value is forced by the simplicial identities
/// of `X`.
#[derive(Clone, Debug)]
pub struct HomObject {
    pub limit: Limit,
    /// Diagram nodes as `(level, cell)`.
    nodes: Vec<(usize, usize)>,
    node_of: Vec<Vec<usize>>,
    shape: Arc<FiniteSimplicialSet>,
}

impl HomObject {
    pub fn object(&self) -> &Object {
        &self.limit.object
    }

    pub fn shape(&self) -> &FiniteSimplicialSet {
        &self.shape
    }

    /// Index of the family taking the given values, with terminal handling
    /// for an empty shape.
    fn lookup(&self, family: &[usize], grade: usize) -> Option<usize> {
        if self.nodes.is_empty() {
            return Some(grade);
        }
        self.limit.index_of(family)
    }

    /// Value of family `e` at cell `c` of level `m`, unfolding degenerate
    /// cells above the diagram.
    pub fn value_at(&self, x: &SimplicialObject, e: usize, m: usize, c: usize) -> usize {
        let node = self.node_of.get(m).map_or(UNDEF, |row| row[c]);
        if node != UNDEF {
            return self.limit.families[e][node];
        }
        let (j, src) = self.shape.degeneracy_source(m, c).expect("cells above the diagram are degenerate");
        x.degeneracy(m - 1, j).apply(self.value_at(x, e, m - 1, src))
    }
}

/// `Hom(S, X)`.
pub fn hom_into(shape: &FiniteSimplicialSet, x: &SimplicialObject) -> Result<HomObject> {
    let top = match shape.dimension() {
        Some(d) => d,
        None => {
            return build(shape, x, Vec::new(), &[]);
        }
    };
    if top > x.truncation() {
        return Err(Error::TruncationTooShallow(format!(
            "the shape has cells of dimension {top}, the object is truncated at {}",
            x.truncation()
        )));
    }
    let mut nodes = Vec::new();
    for m in (0..=top).rev() {
        for c in 0..shape.level_len(m) {
            if shape.is_nondegenerate(m, c) {
                nodes.push((m, c));
            }
        }
    }
    for m in 0..=top {
        for c in 0..shape.level_len(m) {
            if !shape.is_nondegenerate(m, c) {
                nodes.push((m, c));
            }
        }
    }
    build(shape, x, nodes, &[top])
}

fn build(shape: &FiniteSimplicialSet, x: &SimplicialObject, search_order: Vec<(usize, usize)>, top: &[usize]) -> Result<HomObject> {
    let top = top.first().copied();
    let levels = top.map_or(0, |t| t + 1);
    // nodes are laid out level by level so labels read in cell order
    let mut nodes = Vec::new();
    let mut node_of = vec![Vec::new(); levels];
    for m in 0..levels {
        node_of[m] = vec![UNDEF; shape.level_len(m)];
        for c in 0..shape.level_len(m) {
            node_of[m][c] = nodes.len();
            nodes.push((m, c));
        }
    }
    let objects: Vec<&Object> = nodes.iter().map(|&(m, _)| x.level(m)).collect();
    let mut edges = Vec::new();
    for &(m, c) in &nodes {
        let u = node_of[m][c];
        if m > 0 {
            for i in 0..=m {
                edges.push((u, node_of[m - 1][shape.face(m, i)[c]], x.face(m, i).map_arc()));
            }
        }
        if m + 1 < levels {
            for j in 0..=m {
                edges.push((u, node_of[m + 1][shape.degeneracy(m, j)[c]], x.degeneracy(m, j).map_arc()));
            }
        }
    }
    let order = search_order.iter().map(|&(m, c)| node_of[m][c]).collect();
    let spec = DiagramSpec { nodes: objects, edges, order: Some(order) };
    let limit = x.site().limit(&spec, crate::max_cells())?;
    Ok(HomObject { limit, nodes, node_of, shape: Arc::new(shape.clone()) })
}

/// `X_k → Hom(S, X)` for `S ⊆ Δ^k` (component `comp` of the cell
/// coordinates lands in `[k]`): `x ↦ (α^* x)_α`.
pub fn restrict_level(x: &SimplicialObject, k: usize, hom: &HomObject, comp: usize) -> Result<Morphism> {
    let src = x.level(k);
    let map = (0..src.len())
        .map(|e| {
            let family: Vec<usize> =
                hom.nodes.iter().map(|&(m, c)| x.act(&hom.shape.coords(m, c)[comp], e)).collect();
            hom.lookup(&family, src.grade[e]).ok_or_else(|| Error::NotFunctorial(format!("restriction of {} is not compatible", src.label(e))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Morphism::new_unchecked(src.clone(), hom.object().clone(), map))
}

/// `Hom(T, X) → Hom(S, X)` induced by a simplicial map `S → T` given on
/// cell coordinates.
pub fn restrict_along(
    x: &SimplicialObject,
    from: &HomObject,
    to: &HomObject,
    phi: impl Fn(&[OrdinalMap]) -> Vec<OrdinalMap>,
) -> Result<Morphism> {
    let targets: Vec<(usize, usize)> = to
        .nodes
        .iter()
        .map(|&(m, c)| {
            let image = phi(to.shape.coords(m, c));
            from.shape
                .cell_index(m, &image)
                .map(|t| (m, t))
                .ok_or_else(|| Error::Precondition("coordinate map leaves the source shape".into()))
        })
        .collect::<Result<_>>()?;
    let src = from.object();
    let map = (0..src.len())
        .map(|e| {
            let family: Vec<usize> = targets.iter().map(|&(m, t)| from.value_at(x, e, m, t)).collect();
            to.lookup(&family, src.grade[e]).ok_or_else(|| Error::NotFunctorial("restricted family is not compatible".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Morphism::new_unchecked(src.clone(), to.object().clone(), map))
}

/// `Hom(S, X) → X_m`, evaluation at a cell.
pub fn evaluate(x: &SimplicialObject, hom: &HomObject, m: usize, cell: usize) -> Morphism {
    let src = hom.object();
    let map = (0..src.len()).map(|e| hom.value_at(x, e, m, cell)).collect();
    Morphism::new_unchecked(src.clone(), x.level(m).clone(), map)
}

/// `Hom(S, f): Hom(S, X) → Hom(S, Y)`.
pub fn post_compose(f: &SimplicialMorphism, hx: &HomObject, hy: &HomObject) -> Result<Morphism> {
    let src = hx.object();
    let map = (0..src.len())
        .map(|e| {
            let family: Vec<usize> = hx.nodes.iter().map(|&(m, c)| f.level(m).apply(hx.value_at(f.source(), e, m, c))).collect();
            hy.lookup(&family, src.grade[e]).ok_or_else(|| Error::NotFunctorial("image family is not compatible".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Morphism::new_unchecked(src.clone(), hy.object().clone(), map))
}

/// The horn matching map `λ^k_i(X): X_k → Hom(Λ^k_i, X)`.
pub fn matching_map(x: &SimplicialObject, k: usize, i: usize) -> Result<(HomObject, Morphism)> {
    if k == 0 || k > x.truncation() {
        return Err(Error::Precondition(format!("matching maps need 1 ≤ k ≤ {}", x.truncation())));
    }
    let horn = FiniteSimplicialSet::horn(k, i, k - 1)?;
    let hom = hom_into(&horn, x)?;
    let map = restrict_level(x, k, &hom, 0)?;
    Ok((hom, map))
}

/// The relative matching map `X_k → Hom(S, X) ×_{Hom(S, Y)} Y_k` of
/// `f: X → Y` for a shape `S ⊆ Δ^k`.
pub fn relative_matching_map(f: &SimplicialMorphism, k: usize, shape: &FiniteSimplicialSet) -> Result<(Pullback, Morphism)> {
    let (x, y) = (f.source(), f.target());
    let site = x.site();
    let hx = hom_into(shape, x)?;
    let hy = hom_into(shape, y)?;
    let lx = restrict_level(x, k, &hx, 0)?;
    let ly = restrict_level(y, k, &hy, 0)?;
    let hf = post_compose(f, &hx, &hy)?;
    let pb = site.pullback(&hf, &ly)?;
    let map = pb.mediate(&lx, f.level(k))?;
    Ok((pb, map))
}

/// `μ_k(f): X_k → Hom(∂Δ^k, X) ×_{Hom(∂Δ^k, Y)} Y_k`.
pub fn boundary_matching_map(f: &SimplicialMorphism, k: usize) -> Result<(Pullback, Morphism)> {
    if k > f.source().truncation() {
        return Err(Error::Precondition(format!("μ_k needs k ≤ {}", f.source().truncation())));
    }
    let shape = FiniteSimplicialSet::boundary(k, k.saturating_sub(1))?;
    relative_matching_map(f, k, &shape)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{FinSetObj, Site};
    use crate::gset::FiniteGroup;

    fn bz2(n: usize) -> SimplicialObject {
        SimplicialObject::nerve(&Site::finsets(), &FiniteGroup::cyclic(2), n).unwrap()
    }

    #[test]
    fn yoneda_sizes() {
        let x = bz2(3);
        for k in 0..=3 {
            let h = hom_into(&FiniteSimplicialSet::standard_simplex(k, 3), &x).unwrap();
            assert_eq!(h.object().len(), x.level(k).len());
            let r = restrict_level(&x, k, &h, 0).unwrap();
            assert!(r.is_bijective());
        }
    }

    #[test]
    fn inner_horn_of_nerve() {
        let x = bz2(2);
        let h = hom_into(&FiniteSimplicialSet::horn(2, 1, 2).unwrap(), &x).unwrap();
        assert_eq!(h.object().len(), 4);
        let (_, l) = matching_map(&x, 2, 1).unwrap();
        assert!(l.is_bijective());
        let (_, l10) = matching_map(&x, 1, 0).unwrap();
        assert_eq!((l10.source().len(), l10.target().len()), (2, 1));
        assert!(l10.is_surjective() && !l10.is_injective());
    }

    #[test]
    fn empty_boundary_gives_terminal() {
        let site = Site::finsets();
        let a = site.plain_object(FinSetObj::numbered(3)).unwrap();
        let b = site.plain_object(FinSetObj::numbered(2)).unwrap();
        let f = site.morphism(&a, &b, vec![0, 0, 1]).unwrap();
        let aug = SimplicialObject::cech_augmentation(&site, &f, 2).unwrap();
        let (pb, mu0) = boundary_matching_map(&aug, 0).unwrap();
        assert_eq!(pb.apex.len(), 2);
        assert_eq!(mu0.map(), f.map());
    }

    #[test]
    fn nerve_boundary_triangles() {
        let x = bz2(2);
        let h = hom_into(&FiniteSimplicialSet::boundary(2, 1).unwrap(), &x).unwrap();
        assert_eq!(h.object().len(), 8);
    }
}
