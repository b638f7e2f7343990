//! JSON encodings of sites, objects, maps, simplicial data, graphs, covers
//! and actions. Every decoder validates fully and every encoder emits sorted
//! labels, so decode ∘ encode is the identity. Schemas are in
//! `docs/formats.md`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{CoverClass, FinMap, FinSetObj, Morphism, Object, Site, SiteKind, UNDEF};
use crate::galois::{BasedGraph, Graph, GraphCover, PermAction};
use crate::gset::{FiniteGroup, GroupSpec};
use crate::label::Label;
use crate::simp::{FiniteSimplicialSet, SimplicialMorphism, SimplicialObject};

fn labels(xs: &[String]) -> Result<Vec<Label>> {
    xs.iter().map(|s| Label::parse(s)).collect()
}

fn strings(set: &FinSetObj) -> Vec<String> {
    set.labels().iter().map(|l| l.to_string()).collect()
}

/// A set of labels, sorted, together with where each listed label landed.
fn sorted_set(xs: &[String]) -> Result<(FinSetObj, Vec<usize>)> {
    let set = FinSetObj::new(labels(xs)?)?;
    if set.len() != xs.len() {
        return Err(Error::Format("duplicate label in a set".into()));
    }
    let pos = xs
        .iter()
        .map(|s| set.index_of(&Label::parse(s).expect("parsed above")).expect("present"))
        .collect();
    Ok((set, pos))
}

/// Rewrites a table given in listed order into sorted order.
fn remap(table: &[usize], from: &[usize], to: &[usize]) -> Result<Vec<usize>> {
    if table.len() != from.len() {
        return Err(Error::Format(format!("table has {} entries, expected {}", table.len(), from.len())));
    }
    let mut out = vec![0; table.len()];
    for (i, &v) in table.iter().enumerate() {
        out[from[i]] = *to.get(v).ok_or_else(|| Error::Format(format!("index {v} out of range")))?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinMapJson {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub map: BTreeMap<String, String>,
}

pub fn finmap_from_json(j: &FinMapJson) -> Result<FinMap> {
    let (s, _) = sorted_set(&j.source)?;
    let (t, _) = sorted_set(&j.target)?;
    let assignment = j
        .map
        .iter()
        .map(|(a, b)| Ok((Label::parse(a)?, Label::parse(b)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    FinMap::new(s, t, &assignment)
}

pub fn finmap_to_json(f: &FinMap) -> FinMapJson {
    FinMapJson {
        source: strings(f.source()),
        target: strings(f.target()),
        map: f.assignment().into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupJson {
    Finite { elements: Vec<String>, table: Vec<Vec<usize>> },
    Free { rank: usize },
}

pub fn group_from_json(j: &GroupJson) -> Result<GroupSpec> {
    match j {
        GroupJson::Finite { elements, table } => {
            Ok(GroupSpec::Finite(FiniteGroup::new(labels(elements)?, table.clone())?))
        }
        GroupJson::Free { rank } if *rank > crate::max_cells() => {
            Err(Error::Format(format!("free group of rank {rank} exceeds the cell limit")))
        }
        GroupJson::Free { rank } => Ok(GroupSpec::free(*rank)),
    }
}

pub fn group_to_json(g: &GroupSpec) -> GroupJson {
    match g {
        GroupSpec::Finite(g) => GroupJson::Finite {
            elements: g.elements().iter().map(|l| l.to_string()).collect(),
            table: g.table().to_vec(),
        },
        GroupSpec::Free { generators } => GroupJson::Free { rank: generators.len() },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub s: String,
    pub t: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<Vec<String>>,
}

pub fn graph_from_json(j: &GraphJson) -> Result<Graph> {
    let (v, _) = sorted_set(&j.vertices)?;
    let edges = j
        .edges
        .iter()
        .map(|e| Ok((Label::parse(&e.label)?, Label::parse(&e.s)?, Label::parse(&e.t)?)))
        .collect::<Result<Vec<_>>>()?;
    Graph::new(v, edges)
}

pub fn graph_to_json(g: &Graph) -> GraphJson {
    let v = g.vertices();
    GraphJson {
        vertices: strings(v),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeJson {
                s: v.label(e.source).to_string(),
                t: v.label(e.target).to_string(),
                label: e.label.to_string(),
            })
            .collect(),
        base: None,
        tree: None,
    }
}

pub fn based_graph_from_json(j: &GraphJson) -> Result<BasedGraph> {
    let g = graph_from_json(j)?;
    let base = j.base.as_ref().ok_or_else(|| Error::Format("a based graph needs \"base\"".into()))?;
    let tree = j.tree.as_ref().ok_or_else(|| Error::Format("a based graph needs \"tree\"".into()))?;
    BasedGraph::new(g, Label::parse(base)?, &labels(tree)?)
}

pub fn based_graph_to_json(b: &BasedGraph) -> GraphJson {
    let mut j = graph_to_json(b.graph());
    j.base = Some(b.vertices().label(b.base()).to_string());
    let mut tree: Vec<String> = b.tree().iter().map(|&e| b.edges()[e].label.to_string()).collect();
    tree.sort();
    j.tree = Some(tree);
    j
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SiteJson {
    Finsets {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cover_class: Option<String>,
    },
    Gfinsets {
        group: GroupJson,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cover_class: Option<String>,
    },
    Graphcov {
        base: GraphJson,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cover_class: Option<String>,
    },
}

pub fn site_from_json(j: &SiteJson) -> Result<Site> {
    let (site, class) = match j {
        SiteJson::Finsets { cover_class } => (Site::finsets(), cover_class),
        SiteJson::Gfinsets { group, cover_class } => (Site::gsets(group_from_json(group)?), cover_class),
        SiteJson::Graphcov { base, cover_class } => (Site::graph_covers(based_graph_from_json(base)?), cover_class),
    };
    match class {
        None => Ok(site),
        Some(c) => {
            let c = CoverClass::parse(c).ok_or_else(|| Error::Format(format!("unknown cover class {c}")))?;
            Ok(site.with_cover_class(c))
        }
    }
}

pub fn site_to_json(site: &Site) -> SiteJson {
    let cover_class = (site.cover_class() != CoverClass::Surjective).then(|| site.cover_class().name().to_string());
    match site.kind() {
        SiteKind::FinSets => SiteJson::Finsets { cover_class },
        SiteKind::GFinSets(g) => SiteJson::Gfinsets { group: group_to_json(g), cover_class },
        SiteKind::GraphCov(b) => SiteJson::Graphcov { base: based_graph_to_json(b), cover_class },
    }
}

/// A site object: a bare label list for sites without structure, or the
/// full record with grades and operation tables (`null` off the domain).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObjectJson {
    Plain(Vec<String>),
    Full {
        set: Vec<String>,
        grade: Vec<usize>,
        ops: Vec<Vec<Option<usize>>>,
    },
}

/// Decodes an object, also returning the listed-to-sorted positions.
fn object_from_json_pos(site: &Site, j: &ObjectJson) -> Result<(Object, Vec<usize>)> {
    match j {
        ObjectJson::Plain(xs) => {
            let (set, pos) = sorted_set(xs)?;
            Ok((site.plain_object(set)?, pos))
        }
        ObjectJson::Full { set, grade, ops } => {
            let (s, pos) = sorted_set(set)?;
            if grade.len() != s.len() {
                return Err(Error::Format("one grade per element is required".into()));
            }
            let mut g = vec![0; s.len()];
            for (i, &v) in grade.iter().enumerate() {
                g[pos[i]] = v;
            }
            let mut tables = Vec::with_capacity(ops.len());
            for t in ops {
                if t.len() != s.len() {
                    return Err(Error::Format("operation tables need one entry per element".into()));
                }
                let mut out = vec![UNDEF; s.len()];
                for (i, v) in t.iter().enumerate() {
                    if let Some(v) = v {
                        out[pos[i]] = *pos.get(*v).ok_or_else(|| Error::Format(format!("index {v} out of range")))?;
                    }
                }
                tables.push(out);
            }
            Ok((site.object(s, g, tables)?, pos))
        }
    }
}

pub fn object_from_json(site: &Site, j: &ObjectJson) -> Result<Object> {
    Ok(object_from_json_pos(site, j)?.0)
}

pub fn object_to_json(site: &Site, o: &Object) -> ObjectJson {
    if site.op_count() == 0 && site.grade_count() == 1 {
        return ObjectJson::Plain(strings(&o.set));
    }
    ObjectJson::Full {
        set: strings(&o.set),
        grade: o.grade.clone(),
        ops: o.ops.iter().map(|t| t.iter().map(|&v| (v != UNDEF).then_some(v)).collect()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub site: Option<SiteJson>,
    #[serde(rename = "N")]
    pub n: usize,
    pub levels: Vec<ObjectJson>,
    /// `d[m][i]` is the table of `d_i: X_m → X_{m-1}`; `d[0]` is empty.
    pub d: Vec<Vec<Vec<usize>>>,
    /// `s[m][j]` is the table of `s_j: X_m → X_{m+1}`; `s[N]` is empty.
    pub s: Vec<Vec<Vec<usize>>>,
}

pub fn simplicial_from_json(j: &SimplicialJson) -> Result<SimplicialObject> {
    let site = match &j.site {
        Some(s) => site_from_json(s)?,
        None => Site::finsets(),
    };
    let n = j.n;
    if j.levels.len() != n + 1 || j.d.len() != n + 1 || j.s.len() != n + 1 {
        return Err(Error::Format(format!("levels, d and s need {} entries each", n + 1)));
    }
    let mut levels = Vec::new();
    let mut pos = Vec::new();
    for l in &j.levels {
        let (o, p) = object_from_json_pos(&site, l)?;
        levels.push(o);
        pos.push(p);
    }
    let mut d = Vec::new();
    let mut s = Vec::new();
    for m in 0..=n {
        let nd = if m == 0 { 0 } else { m + 1 };
        let ns = if m == n { 0 } else { m + 1 };
        if j.d[m].len() != nd || j.s[m].len() != ns {
            return Err(Error::Format(format!("level {m} needs {nd} faces and {ns} degeneracies")));
        }
        d.push(
            j.d[m]
                .iter()
                .map(|t| Ok(Morphism::new_unchecked(levels[m].clone(), levels[m - 1].clone(), remap(t, &pos[m], &pos[m - 1])?)))
                .collect::<Result<Vec<_>>>()?,
        );
        s.push(
            j.s[m]
                .iter()
                .map(|t| Ok(Morphism::new_unchecked(levels[m].clone(), levels[m + 1].clone(), remap(t, &pos[m], &pos[m + 1])?)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    for f in d.iter().chain(&s).flatten() {
        site.validate_morphism(f)?;
    }
    SimplicialObject::new(&site, levels, d, s)
}

pub fn simplicial_to_json(x: &SimplicialObject) -> SimplicialJson {
    let site = x.site();
    let n = x.truncation();
    SimplicialJson {
        site: (*site != Site::finsets()).then(|| site_to_json(site)),
        n,
        levels: x.levels().iter().map(|o| object_to_json(site, o)).collect(),
        d: (0..=n).map(|m| (0..if m == 0 { 0 } else { m + 1 }).map(|i| x.face(m, i).map().to_vec()).collect()).collect(),
        s: (0..=n).map(|m| (0..if m == n { 0 } else { m + 1 }).map(|j| x.degeneracy(m, j).map().to_vec()).collect()).collect(),
    }
}

pub fn simplicial_set_to_json(shape: &FiniteSimplicialSet) -> Result<SimplicialJson> {
    Ok(simplicial_to_json(&SimplicialObject::from_simplicial_set(&Site::finsets(), shape)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialMorphismJson {
    pub source: SimplicialJson,
    pub target: SimplicialJson,
    /// Index tables per level, in the listed order of the levels.
    pub levels: Vec<Vec<usize>>,
}

pub fn simplicial_morphism_from_json(j: &SimplicialMorphismJson) -> Result<SimplicialMorphism> {
    let src = simplicial_from_json(&j.source)?;
    let tgt = simplicial_from_json(&j.target)?;
    if src.site() != tgt.site() {
        return Err(Error::Format("source and target live in different sites".into()));
    }
    let n = src.truncation();
    if tgt.truncation() != n || j.levels.len() != n + 1 {
        return Err(Error::Format("source, target and map need the same truncation".into()));
    }
    let positions = |sj: &SimplicialJson, site: &Site| -> Result<Vec<Vec<usize>>> {
        sj.levels.iter().map(|l| Ok(object_from_json_pos(site, l)?.1)).collect()
    };
    let (ps, pt) = (positions(&j.source, src.site())?, positions(&j.target, tgt.site())?);
    let levels = (0..=n)
        .map(|m| src.site().morphism(src.level(m), tgt.level(m), remap(&j.levels[m], &ps[m], &pt[m])?))
        .collect::<Result<Vec<_>>>()?;
    SimplicialMorphism::new(&src, &tgt, levels)
}

pub fn simplicial_morphism_to_json(f: &SimplicialMorphism) -> SimplicialMorphismJson {
    SimplicialMorphismJson {
        source: simplicial_to_json(f.source()),
        target: simplicial_to_json(f.target()),
        levels: f.levels().iter().map(|l| l.map().to_vec()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverJson {
    pub total: GraphJson,
    pub proj_v: BTreeMap<String, String>,
    pub proj_e: BTreeMap<String, String>,
}

fn label_map(m: &BTreeMap<String, String>) -> Result<BTreeMap<Label, Label>> {
    m.iter().map(|(a, b)| Ok((Label::parse(a)?, Label::parse(b)?))).collect()
}

/// Decodes a cover of the site's base graph into a site object.
pub fn cover_from_json(site: &Site, j: &CoverJson) -> Result<Object> {
    let SiteKind::GraphCov(base) = site.kind() else {
        return Err(Error::Format("covers need a graph-cover site".into()));
    };
    let total = graph_from_json(&j.total)?;
    GraphCover::new(total, &label_map(&j.proj_v)?, &label_map(&j.proj_e)?, base)?.to_object(site)
}

pub fn cover_to_json(site: &Site, o: &Object) -> Result<CoverJson> {
    let SiteKind::GraphCov(base) = site.kind() else {
        return Err(Error::Format("covers need a graph-cover site".into()));
    };
    let c = GraphCover::from_object(site, o)?;
    let tv = c.total.vertices();
    Ok(CoverJson {
        proj_v: (0..tv.len()).map(|v| (tv.label(v).to_string(), base.vertices().label(c.proj_v[v]).to_string())).collect(),
        proj_e: c
            .total
            .edges()
            .iter()
            .enumerate()
            .map(|(k, e)| (e.label.to_string(), base.edges()[c.proj_e[k]].label.to_string()))
            .collect(),
        total: graph_to_json(&c.total),
    })
}

/// A free-group action: `perms[k][x]` is the image of point `x` under
/// generator `k`, points being `fiber` (default `0..n`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionJson {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber: Option<Vec<String>>,
    pub perms: Vec<Vec<usize>>,
}

pub fn action_from_json(j: &ActionJson) -> Result<PermAction> {
    if j.perms.len() != j.rank {
        return Err(Error::Format(format!("rank {} needs {} permutations", j.rank, j.rank)));
    }
    let n = j.perms.first().map_or(0, |p| p.len());
    let (fiber, pos) = match &j.fiber {
        Some(xs) => sorted_set(xs)?,
        None => (FinSetObj::numbered(n), (0..n).collect()),
    };
    let perms = j.perms.iter().map(|p| remap(p, &pos, &pos)).collect::<Result<Vec<_>>>()?;
    PermAction::new(fiber, perms)
}

pub fn action_to_json(a: &PermAction) -> ActionJson {
    let numbered = a.fiber == FinSetObj::numbered(a.fiber.len());
    ActionJson { rank: a.rank(), fiber: (!numbered).then(|| strings(&a.fiber)), perms: a.perms.clone() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GSetJson {
    pub carrier: Vec<String>,
    pub action: BTreeMap<String, BTreeMap<String, String>>,
}

/// Decodes a `G`-set over the finite group of a `G`-sets site.
pub fn gset_from_json(site: &Site, j: &GSetJson) -> Result<Object> {
    let SiteKind::GFinSets(g) = site.kind() else {
        return Err(Error::Format("G-sets need a G-sets site".into()));
    };
    let GroupSpec::Finite(group) = &**g else {
        return Err(Error::Format("this encoding needs a finite group; use an action for free groups".into()));
    };
    let (set, _) = sorted_set(&j.carrier)?;
    let mut action = Vec::with_capacity(group.order());
    for el in group.elements() {
        let row = j
            .action
            .get(&el.to_string())
            .ok_or_else(|| Error::Format(format!("no action given for {el}")))?;
        let m = FinMap::new(set.clone(), set.clone(), &label_map(row)?)?;
        action.push(m.indices().to_vec());
    }
    if j.action.len() != group.order() {
        return Err(Error::Format("action mentions unknown group elements".into()));
    }
    crate::gset::gset(site, set, action)
}

pub fn gset_to_json(site: &Site, o: &Object) -> Result<GSetJson> {
    let SiteKind::GFinSets(g) = site.kind() else {
        return Err(Error::Format("G-sets need a G-sets site".into()));
    };
    let GroupSpec::Finite(group) = &**g else {
        return Err(Error::Format("this encoding needs a finite group".into()));
    };
    let l = |x: usize| o.label(x).to_string();
    Ok(GSetJson {
        carrier: strings(&o.set),
        action: group
            .elements()
            .iter()
            .enumerate()
            .map(|(k, el)| (el.to_string(), (0..o.len()).map(|x| (l(x), l(o.ops[k][x]))).collect()))
            .collect(),
    })
}

/// Parses `text` as `T`, reporting the line and column of malformed input.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(format!("line {}, column {}: {e}", e.line(), e.column())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::cover_from_action;

    #[test]
    fn simplicial_round_trip_over_gsets() {
        let z2 = FiniteGroup::cyclic(2);
        let site = Site::gsets(GroupSpec::Finite(z2.clone()));
        let reg = crate::gset::regular_gset(&site, &z2).unwrap();
        let x = SimplicialObject::cech(&site, &site.to_terminal(&reg), 2).unwrap();
        let j = simplicial_to_json(&x);
        let text = serde_json::to_string(&j).unwrap();
        let back = simplicial_from_json(&parse(&text).unwrap()).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn unsorted_listing_is_normalised() {
        // Δ^0 → two points, listed backwards
        let j: SimplicialJson = parse(r#"{"N":1,"levels":[["b","a"],["bb","aa"]],"d":[[],[[0,1],[0,1]]],"s":[[[0,1]],[]]}"#).unwrap();
        let x = simplicial_from_json(&j).unwrap();
        assert_eq!(x.level(0).label(0), &Label::parse("a").unwrap());
        assert_eq!(x.face(1, 0).map(), &[0, 1]);
        assert_eq!(simplicial_from_json(&simplicial_to_json(&x)).unwrap(), x);
    }

    #[test]
    fn bad_face_tables_are_refused() {
        let j: SimplicialJson = parse(r#"{"N":1,"levels":[["a"],["e"]],"d":[[],[[0],[5]]],"s":[[[0]],[]]}"#).unwrap();
        assert!(simplicial_from_json(&j).is_err());
    }

    #[test]
    fn cover_and_action_round_trip() {
        let site = Site::graph_covers(BasedGraph::figure_eight());
        let a = PermAction::new(FinSetObj::numbered(2), vec![vec![1, 0], vec![0, 1]]).unwrap();
        let c = cover_from_action(&site, &a).unwrap();
        let j = cover_to_json(&site, &c).unwrap();
        assert_eq!(cover_from_json(&site, &j).unwrap(), c);
        assert_eq!(action_from_json(&action_to_json(&a)).unwrap(), a);
        let sj = site_to_json(&site);
        assert_eq!(site_from_json(&sj).unwrap(), site);
    }

    #[test]
    fn gset_round_trip() {
        let s3 = FiniteGroup::symmetric(3);
        let site = Site::gsets(GroupSpec::Finite(s3.clone()));
        let reg = crate::gset::regular_gset(&site, &s3).unwrap();
        let j = gset_to_json(&site, &reg).unwrap();
        assert_eq!(gset_from_json(&site, &j).unwrap(), reg);
    }

    #[test]
    fn malformed_json_reports_a_location() {
        let err = parse::<SimplicialJson>("{\n  \"N\": }").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }
}
