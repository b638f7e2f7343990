//! The span model `H⁻¹C`: mapping spaces are nerves of categories of spans
//! `X ← Z → Y` whose left leg is in `H`.

use serde::Serialize;

use super::category::MarkedRelCategory;
use super::UnionFind;
use crate::error::{Error, Result};
use crate::fincat::{FinSetObj, Site};
use crate::simp::SimplicialObject;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Span {
    /// Left leg `Z → X`, marked in `H`.
    pub left: usize,
    /// Right leg `Z → Y`.
    pub right: usize,
}

impl Span {
    pub fn apex(&self, c: &MarkedRelCategory) -> usize {
        c.source(self.left)
    }

    pub fn render(&self, c: &MarkedRelCategory) -> String {
        format!(
            "{} <-{}- {} -{}-> {}",
            c.object_name(c.target(self.left)),
            c.arrow_name(self.left),
            c.object_name(self.apex(c)),
            c.arrow_name(self.right),
            c.object_name(c.target(self.right))
        )
    }
}

/// Every span from `x` to `y`, ordered by apex and legs.
pub fn spans(c: &MarkedRelCategory, x: usize, y: usize) -> Vec<Span> {
    let mut out = Vec::new();
    for z in 0..c.object_count() {
        for &left in c.hom(z, x) {
            if !c.in_h(left) {
                continue;
            }
            for &right in c.hom(z, y) {
                out.push(Span { left, right });
            }
        }
    }
    out
}

/// A morphism of spans `s → t`: an apex map `φ` with `t.left ∘ φ = s.left`
/// and `t.right ∘ φ = s.right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpanMap {
    pub from: usize,
    pub to: usize,
    pub apex_map: usize,
}

pub fn span_maps(c: &MarkedRelCategory, all: &[Span]) -> Vec<SpanMap> {
    let mut out = Vec::new();
    for (i, s) in all.iter().enumerate() {
        for (j, t) in all.iter().enumerate() {
            for &phi in c.hom(s.apex(c), t.apex(c)) {
                if c.then(phi, t.left) == Some(s.left) && c.then(phi, t.right) == Some(s.right) {
                    out.push(SpanMap { from: i, to: j, apex_map: phi });
                }
            }
        }
    }
    out
}

/// The nerve of the span category truncated at `truncation`, as a
/// simplicial finite set. Level `m` is the set of chains of `m` composable
/// span maps, numbered in lexicographic order.
pub fn span_mapping_space(c: &MarkedRelCategory, x: usize, y: usize, truncation: usize) -> Result<SimplicialObject> {
    let cap = crate::max_cells();
    let objs = spans(c, x, y);
    let maps = span_maps(c, &objs);
    let mut out_of: Vec<Vec<usize>> = vec![Vec::new(); objs.len()];
    for (k, m) in maps.iter().enumerate() {
        out_of[m.from].push(k);
    }
    let identity: Vec<usize> = (0..objs.len())
        .map(|i| {
            maps.iter()
                .position(|m| m.from == i && m.to == i && c.is_identity(m.apex_map))
                .expect("identity span map")
        })
        .collect();
    let compose = |a: usize, b: usize| -> usize {
        let phi = c.then(maps[a].apex_map, maps[b].apex_map).expect("composable apex maps");
        maps.iter()
            .position(|m| m.from == maps[a].from && m.to == maps[b].to && m.apex_map == phi)
            .expect("span maps compose")
    };
    // level 0: span indices as one-element chains of objects; level m ≥ 1:
    // chains of maps
    let mut chains: Vec<Vec<Vec<usize>>> = vec![(0..objs.len()).map(|i| vec![i]).collect()];
    if truncation >= 1 {
        chains.push((0..maps.len()).map(|k| vec![k]).collect());
    }
    for m in 2..=truncation {
        let next: Vec<Vec<usize>> = chains[m - 1]
            .iter()
            .flat_map(|ch| {
                let end = maps[*ch.last().expect("nonempty chain")].to;
                out_of[end].iter().map(move |&k| [ch.as_slice(), &[k]].concat())
            })
            .collect();
        if next.len() > cap {
            return Err(Error::CapExceeded { cap, what: format!("level {m} of a span nerve") });
        }
        chains.push(next);
    }
    for ch in chains.iter_mut() {
        ch.sort();
    }
    let find = |m: usize, ch: &[usize]| chains[m].binary_search_by(|c| c.as_slice().cmp(ch)).expect("chain exists");
    let site = Site::finsets();
    let levels = chains
        .iter()
        .map(|l| site.plain_object(FinSetObj::numbered(l.len())))
        .collect::<Result<Vec<_>>>()?;
    let mut d = vec![Vec::new()];
    let mut s = Vec::new();
    for m in 1..=truncation {
        let faces = (0..=m)
            .map(|i| {
                chains[m]
                    .iter()
                    .map(|ch| {
                        if m == 1 {
                            let map = &maps[ch[0]];
                            return if i == 0 { map.to } else { map.from };
                        }
                        let mut f = ch.clone();
                        if i == 0 {
                            f.remove(0);
                        } else if i == m {
                            f.pop();
                        } else {
                            let joined = compose(f[i - 1], f[i]);
                            f.splice(i - 1..=i, [joined]);
                        }
                        find(m - 1, &f)
                    })
                    .collect()
            })
            .collect();
        d.push(faces);
    }
    for m in 0..truncation {
        let degs = (0..=m)
            .map(|j| {
                chains[m]
                    .iter()
                    .map(|ch| {
                        if m == 0 {
                            return find(1, &[identity[ch[0]]]);
                        }
                        let mut f = ch.clone();
                        let at = if j < m { maps[f[j]].from } else { maps[f[m - 1]].to };
                        f.insert(j, identity[at]);
                        find(m + 1, &f)
                    })
                    .collect()
            })
            .collect();
        s.push(degs);
    }
    s.push(Vec::new());
    SimplicialObject::from_tables(&site, levels, d, s)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanComponents {
    pub spans: Vec<Span>,
    pub component: Vec<usize>,
    pub count: usize,
}

/// Components of the span category, numbered by first occurrence.
pub fn span_components(c: &MarkedRelCategory, x: usize, y: usize) -> SpanComponents {
    let all = spans(c, x, y);
    let mut uf = UnionFind::new(all.len());
    for m in span_maps(c, &all) {
        uf.union(m.from, m.to);
    }
    let (component, count) = uf.canonical();
    SpanComponents { spans: all, component, count }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpd::{is_n_groupoid, Dim};

    fn cat(json: &str) -> MarkedRelCategory {
        MarkedRelCategory::from_json(json).unwrap()
    }

    #[test]
    fn identities_only_gives_the_hom_set() {
        let c = cat(
            r#"{"objects":["X","Y"],
                "morphisms":[{"name":"f","source":"X","target":"Y"},{"name":"g","source":"X","target":"Y"}]}"#,
        );
        let nerve = span_mapping_space(&c, 0, 1, 2).unwrap();
        assert_eq!(nerve.level_sizes(), vec![2, 2, 2]);
        assert_eq!(span_components(&c, 0, 1).count, 2);
    }

    #[test]
    fn walking_trivial_fibration() {
        // h: Z → X in H, g: Z → Y; the only spans X → Y have apex Z
        let c = cat(
            r#"{"objects":["X","Y","Z"],
                "morphisms":[{"name":"h","source":"Z","target":"X"},{"name":"g","source":"Z","target":"Y"}],
                "W":["h"],"H":["h"],"F":["h"]}"#,
        );
        let sp = span_components(&c, 0, 1);
        assert_eq!(sp.spans.len(), 1);
        assert_eq!(sp.spans[0].render(&c), "X <-h- Z -g-> Y");
        assert_eq!(sp.count, 1);
        // X → X: id_X and h ⇒ (h, h) maps to (id, id) via h
        let sx = span_components(&c, 0, 0);
        assert_eq!((sx.spans.len(), sx.count), (2, 1));
    }

    #[test]
    fn no_apex_gives_the_empty_nerve() {
        let c = cat(r#"{"objects":["X","Y"],"morphisms":[]}"#);
        let nerve = span_mapping_space(&c, 0, 1, 2).unwrap();
        assert_eq!(nerve.level_sizes(), vec![0, 0, 0]);
        assert_eq!(span_components(&c, 0, 1).count, 0);
    }

    #[test]
    fn nerve_of_an_isomorphism_is_contractible_groupoid() {
        // two spans identified by an invertible apex map: the nerve of the
        // walking isomorphism is a 1-groupoid
        let c = cat(
            r#"{"objects":["X","Y","A","B"],
                "morphisms":[{"name":"a","source":"A","target":"X"},{"name":"b","source":"B","target":"X"},
                             {"name":"p","source":"A","target":"Y"},{"name":"q","source":"B","target":"Y"},
                             {"name":"u","source":"A","target":"B"},{"name":"v","source":"B","target":"A"}],
                "compose":[["u","b","a"],["v","a","b"],["u","q","p"],["v","p","q"],["u","v","id_A"],["v","u","id_B"]],
                "W":["a","b","u","v"],"H":["a","b","u","v"],"F":["a","b","u","v"]}"#,
        );
        let nerve = span_mapping_space(&c, 0, 1, 3).unwrap();
        assert_eq!(nerve.level_sizes(), vec![2, 4, 8, 16]);
        assert!(is_n_groupoid(&nerve, Dim::Finite(1)).unwrap().passed);
    }
}
