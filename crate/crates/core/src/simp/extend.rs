use std::collections::HashMap;

use super::hom::{evaluate, hom_into, restrict_level};
use super::{FiniteSimplicialSet, OrdinalMap, SimplicialObject};
use crate::error::{Error, Result};
use crate::fincat::Morphism;
use crate::grpd::{is_n_groupoid, Dim};

/// Which horn the new levels are built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FillerHorn {
    /// `Λ^K_0`.
    First,
    /// `Λ^K_K`.
    Last,
}

/// Extends a certified `n`-groupoid to level `target` by `X_K := Hom(Λ^K_0, X)`.
///
/// Faces `d_i` (`i ≥ 1`) evaluate the horn at the corresponding face; `d_0`
/// is the unique `(K-1)`-cell with the boundary the other faces prescribe;
/// degeneracies `s_j` send `y` to the family `(σ_j α)^* y`.
pub fn extend_by_fillers(x: &SimplicialObject, n: usize, target: usize) -> Result<SimplicialObject> {
    extend_by_fillers_with(x, n, target, FillerHorn::First)
}

pub fn extend_by_fillers_with(x: &SimplicialObject, n: usize, target: usize, which: FillerHorn) -> Result<SimplicialObject> {
    let cert = is_n_groupoid(x, Dim::Finite(n))?;
    if !cert.passed {
        return Err(Error::Precondition(format!("not certified as a {n}-groupoid at truncation {}", x.truncation())));
    }
    let mut out = x.clone();
    for k in x.truncation() + 1..=target {
        let missing = if which == FillerHorn::First { 0 } else { k };
        let horn = FiniteSimplicialSet::horn(k, missing, k - 1)?;
        let hom = hom_into(&horn, &out)?;
        let new = hom.object().clone();
        let prev = out.level(k - 1).clone();
        let cell = |alpha: OrdinalMap| horn.cell_index(alpha.dim(), &[alpha]).expect("face lies in the horn");
        let mut faces: Vec<Morphism> = (0..=k)
            .map(|i| {
                if i == missing {
                    Morphism::new_unchecked(new.clone(), prev.clone(), vec![0; new.len()])
                } else {
                    evaluate(&out, &hom, k - 1, cell(OrdinalMap::coface(i, k)))
                }
            })
            .collect();
        // the missing face y = d_i σ satisfies d_j y = d_{i-1} d_j σ (j < i)
        // and d_j y = d_i d_{j+1} σ (j ≥ i)
        let i = missing;
        let mut by_faces: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for y in 0..prev.len() {
            let key: Vec<usize> = (0..k).map(|j| out.face(k - 1, j).apply(y)).collect();
            by_faces.entry(key).or_default().push(y);
        }
        let mut filled = Vec::with_capacity(new.len());
        for e in 0..new.len() {
            let key: Vec<usize> = (0..k)
                .map(|j| if j < i { out.face(k - 1, i - 1).apply(faces[j].apply(e)) } else { out.face(k - 1, i).apply(faces[j + 1].apply(e)) })
                .collect();
            match by_faces.get(&key).map(Vec::as_slice) {
                Some([y]) => filled.push(*y),
                _ => {
                    return Err(Error::Precondition(format!(
                        "the missing face of horn family {} is not determined by its boundary",
                        new.label(e)
                    )))
                }
            }
        }
        faces[i] = Morphism::new_unchecked(new.clone(), prev.clone(), filled);
        let degeneracies = (0..k)
            .map(|j| {
                let sigma = OrdinalMap::codegeneracy(j, k - 1);
                let family_of = |y: usize| {
                    (0..k)
                        .flat_map(|m| (0..horn.level_len(m)).map(move |c| (m, c)))
                        .map(|(m, c)| out.act(&sigma.after(&horn.coords(m, c)[0]), y))
                        .collect::<Vec<_>>()
                };
                let map = (0..prev.len())
                    .map(|y| hom.limit.index_of(&family_of(y)).ok_or_else(|| Error::NotFunctorial("degenerate family is not compatible".into())))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Morphism::new_unchecked(prev.clone(), new.clone(), map))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push_level(new, faces, degeneracies)?;
        // each family must restrict back to itself
        let back = restrict_level(&out, k, &hom, 0)?;
        if back.map().iter().enumerate().any(|(e, &b)| e != b) {
            return Err(Error::NotFunctorial(format!("filler level {k} does not restrict to its horn families")));
        }
    }
    Ok(out)
}
