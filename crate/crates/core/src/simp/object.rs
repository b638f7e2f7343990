use std::collections::HashMap;

use super::OrdinalMap;
use crate::error::{Error, Result};
use crate::fincat::{FinSetObj, Morphism, Object, Pullback, Site, UNDEF};
use crate::fincat::search::Search;
use crate::gset::FiniteGroup;
use crate::label::Label;

/// Checks `d_i d_j = d_{j-1} d_i` (i < j), the mixed relations and
/// `s_i s_j = s_{j+1} s_i` (i ≤ j) on every element up to level `n`.
pub(crate) fn check_identities(
    n: usize,
    len: impl Fn(usize) -> usize,
    d: impl Fn(usize, usize, usize) -> usize,
    s: impl Fn(usize, usize, usize) -> usize,
) -> Result<()> {
    let fail = |what: String| Err(Error::SimplicialIdentity(what));
    for m in 2..=n {
        for x in 0..len(m) {
            for j in 1..=m {
                for i in 0..j {
                    if d(m - 1, i, d(m, j, x)) != d(m - 1, j - 1, d(m, i, x)) {
                        return fail(format!("d{i} d{j} ≠ d{} d{i} at level {m}, element {x}", j - 1));
                    }
                }
            }
        }
    }
    for m in 1..=n {
        // x at level m-1, s_j: m-1 → m, d_i: m → m-1
        for x in 0..len(m - 1) {
            for j in 0..m {
                for i in 0..=m {
                    let lhs = d(m, i, s(m - 1, j, x));
                    let rhs = if i == j || i == j + 1 {
                        x
                    } else if i < j {
                        s(m - 2, j - 1, d(m - 1, i, x))
                    } else {
                        s(m - 2, j, d(m - 1, i - 1, x))
                    };
                    if lhs != rhs {
                        return fail(format!("d{i} s{j} relation fails at level {}, element {x}", m - 1));
                    }
                }
            }
        }
    }
    for m in 0..n.saturating_sub(1) {
        for x in 0..len(m) {
            for j in 0..=m {
                for i in 0..=j {
                    if s(m + 1, i, s(m, j, x)) != s(m + 1, j + 1, s(m, i, x)) {
                        return fail(format!("s{i} s{j} ≠ s{} s{i} at level {m}, element {x}", j + 1));
                    }
                }
            }
        }
    }
    Ok(())
}

/// A simplicial object of a site truncated at level `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialObject {
    site: Site,
    levels: Vec<Object>,
    /// `d[m][i]: X_m → X_{m-1}`, empty for `m = 0`.
    d: Vec<Vec<Morphism>>,
    /// `s[m][j]: X_m → X_{m+1}`, empty for `m = N`.
    s: Vec<Vec<Morphism>>,
}

impl SimplicialObject {
    pub fn new(site: &Site, levels: Vec<Object>, d: Vec<Vec<Morphism>>, s: Vec<Vec<Morphism>>) -> Result<SimplicialObject> {
        let x = SimplicialObject { site: site.clone(), levels, d, s };
        x.validate()?;
        Ok(x)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidObject(m));
        if self.levels.is_empty() {
            return bad("a simplicial object has at least level 0".into());
        }
        let n = self.truncation();
        if self.d.len() != n + 1 || self.s.len() != n + 1 {
            return bad("structure maps do not match the truncation".into());
        }
        for (m, level) in self.levels.iter().enumerate() {
            self.site.validate_object(level)?;
            let nd = if m == 0 { 0 } else { m + 1 };
            let ns = if m == n { 0 } else { m + 1 };
            if self.d[m].len() != nd || self.s[m].len() != ns {
                return bad(format!("level {m} has the wrong number of faces or degeneracies"));
            }
            for (i, f) in self.d[m].iter().enumerate() {
                if f.source() != level || f.target() != &self.levels[m - 1] {
                    return bad(format!("d{i} at level {m} has the wrong endpoints"));
                }
                self.site.validate_morphism(f)?;
            }
            for (j, f) in self.s[m].iter().enumerate() {
                if f.source() != level || f.target() != &self.levels[m + 1] {
                    return bad(format!("s{j} at level {m} has the wrong endpoints"));
                }
                self.site.validate_morphism(f)?;
            }
        }
        check_identities(
            n,
            |m| self.levels[m].len(),
            |m, i, x| self.d[m][i].apply(x),
            |m, j, x| self.s[m][j].apply(x),
        )
    }

    /// The object built from raw index tables, validated.
    pub(crate) fn from_tables(
        site: &Site,
        levels: Vec<Object>,
        d: Vec<Vec<Vec<usize>>>,
        s: Vec<Vec<Vec<usize>>>,
    ) -> Result<SimplicialObject> {
        let n = levels.len() - 1;
        let dm = (0..=n)
            .map(|m| {
                d[m].iter()
                    .map(|t| Morphism::new_unchecked(levels[m].clone(), levels[m - 1].clone(), t.clone()))
                    .collect()
            })
            .collect();
        let sm = (0..=n)
            .map(|m| {
                s[m].iter()
                    .map(|t| Morphism::new_unchecked(levels[m].clone(), levels[m + 1].clone(), t.clone()))
                    .collect()
            })
            .collect();
        SimplicialObject::new(site, levels, dm, sm)
    }

    /// A finite simplicial set regarded as a simplicial finite set.
    pub fn from_simplicial_set(site: &Site, shape: &super::FiniteSimplicialSet) -> Result<SimplicialObject> {
        let n = shape.truncation();
        let levels = (0..=n)
            .map(|m| site.plain_object(FinSetObj::new(shape.cells(m).to_vec())?))
            .collect::<Result<Vec<_>>>()?;
        let d = (0..=n).map(|m| if m == 0 { Vec::new() } else { (0..=m).map(|i| shape.face(m, i).to_vec()).collect() }).collect();
        let s = (0..=n).map(|m| if m == n { Vec::new() } else { (0..=m).map(|j| shape.degeneracy(m, j).to_vec()).collect() }).collect();
        SimplicialObject::from_tables(site, levels, d, s)
    }

    /// The constant simplicial object: every structure map the identity.
    pub fn constant(site: &Site, obj: &Object, n: usize) -> Result<SimplicialObject> {
        let id = site.identity(obj);
        let d = (0..=n).map(|m| vec![id.clone(); if m == 0 { 0 } else { m + 1 }]).collect();
        let s = (0..=n).map(|m| vec![id.clone(); if m == n { 0 } else { m + 1 }]).collect();
        SimplicialObject::new(site, vec![obj.clone(); n + 1], d, s)
    }

    pub fn terminal(site: &Site, n: usize) -> SimplicialObject {
        SimplicialObject::constant(site, &site.terminal(), n).expect("the terminal object is valid")
    }

    /// The nerve of a finite group: level `m` is `G^m` with tuple labels,
    /// carried as objects with trivial structure in a one-grade site.
    pub fn nerve(site: &Site, group: &FiniteGroup, n: usize) -> Result<SimplicialObject> {
        let order = group.order();
        let mut tuples: Vec<Vec<Vec<usize>>> = Vec::new();
        for m in 0..=n {
            let mut level = vec![Vec::new()];
            for _ in 0..m {
                level = level
                    .into_iter()
                    .flat_map(|t: Vec<usize>| {
                        (0..order).map(move |g| {
                            let mut v = t.clone();
                            v.push(g);
                            v
                        })
                    })
                    .collect();
            }
            tuples.push(level);
        }
        let mut levels = Vec::new();
        let mut index: Vec<HashMap<Vec<usize>, usize>> = Vec::new();
        for level in &tuples {
            let labels: Vec<Label> =
                level.iter().map(|t| Label::tuple(t.iter().map(|&g| group.elements()[g].clone()))).collect();
            let set = FinSetObj::new(labels.clone())?;
            let idx = level.iter().zip(&labels).map(|(t, l)| (t.clone(), set.index_of(l).unwrap())).collect();
            levels.push(discrete(site, set)?);
            index.push(idx);
        }
        let pos = |m: usize, t: &[usize]| index[m][t];
        let mut d = vec![Vec::new()];
        for m in 1..=n {
            let faces = (0..=m)
                .map(|i| {
                    let mut table = vec![0; tuples[m].len()];
                    for t in &tuples[m] {
                        let face: Vec<usize> = if i == 0 {
                            t[1..].to_vec()
                        } else if i == m {
                            t[..m - 1].to_vec()
                        } else {
                            let mut f = t[..i - 1].to_vec();
                            f.push(group.mul(t[i - 1], t[i]));
                            f.extend_from_slice(&t[i + 1..]);
                            f
                        };
                        table[pos(m, t)] = pos(m - 1, &face);
                    }
                    table
                })
                .collect();
            d.push(faces);
        }
        let mut s = Vec::new();
        for m in 0..=n {
            if m == n {
                s.push(Vec::new());
                continue;
            }
            let degs = (0..=m)
                .map(|j| {
                    let mut table = vec![0; tuples[m].len()];
                    for t in &tuples[m] {
                        let mut up = t[..j].to_vec();
                        up.push(group.identity());
                        up.extend_from_slice(&t[j..]);
                        table[pos(m, t)] = pos(m + 1, &up);
                    }
                    table
                })
                .collect();
            s.push(degs);
        }
        SimplicialObject::from_tables(site, levels, d, s)
    }

    /// The Čech nerve of `f: A → B`: level `m` is the `(m+1)`-fold fiber
    /// product of `A` over `B`, level 0 being `A` itself.
    pub fn cech(site: &Site, f: &Morphism, n: usize) -> Result<SimplicialObject> {
        let a = f.source();
        let mut by_image: Vec<Vec<usize>> = vec![Vec::new(); f.target().len()];
        for x in 0..a.len() {
            by_image[f.apply(x)].push(x);
        }
        let mut tuples: Vec<Vec<Vec<usize>>> = vec![(0..a.len()).map(|x| vec![x]).collect()];
        for m in 1..=n {
            let next = tuples[m - 1]
                .iter()
                .flat_map(|t| by_image[f.apply(t[0])].iter().map(move |&x| [t.as_slice(), &[x]].concat()))
                .collect();
            tuples.push(next);
        }
        let mut levels = Vec::new();
        let mut index: Vec<HashMap<Vec<usize>, usize>> = Vec::new();
        for (m, level) in tuples.iter().enumerate() {
            if m == 0 {
                levels.push(a.clone());
                index.push(level.iter().map(|t| (t.clone(), t[0])).collect());
                continue;
            }
            let labels: Vec<Label> = level.iter().map(|t| Label::tuple(t.iter().map(|&x| a.label(x).clone()))).collect();
            let set = FinSetObj::new(labels.clone())?;
            let idx: HashMap<Vec<usize>, usize> =
                level.iter().zip(&labels).map(|(t, l)| (t.clone(), set.index_of(l).unwrap())).collect();
            let mut grade = vec![0; level.len()];
            for t in level {
                grade[idx[t]] = a.grade[t[0]];
            }
            let ops = (0..site.op_count())
                .map(|k| {
                    let mut table = vec![UNDEF; level.len()];
                    for t in level {
                        let image: Option<Vec<usize>> = t.iter().map(|&x| a.op(k, x)).collect();
                        if let Some(im) = image {
                            table[idx[t]] = idx[&im];
                        }
                    }
                    table
                })
                .collect();
            levels.push(site.object(set, grade, ops)?);
            index.push(idx);
        }
        let mut d = vec![Vec::new()];
        for m in 1..=n {
            d.push(
                (0..=m)
                    .map(|i| {
                        let mut table = vec![0; tuples[m].len()];
                        for t in &tuples[m] {
                            let mut face = t.clone();
                            face.remove(i);
                            table[index[m][t]] = index[m - 1][&face];
                        }
                        table
                    })
                    .collect(),
            );
        }
        let mut s = Vec::new();
        for m in 0..=n {
            if m == n {
                s.push(Vec::new());
                continue;
            }
            s.push(
                (0..=m)
                    .map(|j| {
                        let mut table = vec![0; tuples[m].len()];
                        for t in &tuples[m] {
                            let mut up = t.clone();
                            up.insert(j, t[j]);
                            table[index[m][t]] = index[m + 1][&up];
                        }
                        table
                    })
                    .collect(),
            );
        }
        SimplicialObject::from_tables(site, levels, d, s)
    }

    /// The augmentation `Čech(f) → const(B)`, `(a_0,…,a_m) ↦ f(a_0)`.
    pub fn cech_augmentation(site: &Site, f: &Morphism, n: usize) -> Result<SimplicialMorphism> {
        let x = SimplicialObject::cech(site, f, n)?;
        let y = SimplicialObject::constant(site, f.target(), n)?;
        let levels = (0..=n)
            .map(|m| {
                let map = (0..x.levels[m].len()).map(|c| f.apply(x.vertex0(m, c))).collect();
                Morphism::new_unchecked(x.levels[m].clone(), y.levels[m].clone(), map)
            })
            .collect();
        SimplicialMorphism::new(&x, &y, levels)
    }

    /// Vertex 0 of an `m`-simplex: apply the last face `m` times.
    pub fn vertex0(&self, m: usize, c: usize) -> usize {
        (1..=m).rev().fold(c, |x, l| self.d[l][l].apply(x))
    }

    pub fn site(&self) -> &Site {
        &self.site
    }

    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, m: usize) -> &Object {
        &self.levels[m]
    }

    pub fn levels(&self) -> &[Object] {
        &self.levels
    }

    pub fn face(&self, m: usize, i: usize) -> &Morphism {
        &self.d[m][i]
    }

    pub fn degeneracy(&self, m: usize, j: usize) -> &Morphism {
        &self.s[m][j]
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Object::len).collect()
    }

    /// `α^* x` for `α: [m] → [k]` and `x ∈ X_k`: faces for the vertices
    /// missed by `α` (largest first), then degeneracies where `α` repeats.
    pub fn act(&self, alpha: &OrdinalMap, x: usize) -> usize {
        let k = alpha.codim();
        let image = alpha.image();
        let mut y = x;
        let mut level = k;
        for v in (0..=k).rev() {
            if image.binary_search(&v).is_err() {
                y = self.d[level][v].apply(y);
                level -= 1;
            }
        }
        let values = alpha.values();
        for t in 0..alpha.dim() {
            if values[t] == values[t + 1] {
                y = self.s[level][t].apply(y);
                level += 1;
            }
        }
        y
    }

    /// Levels `0..=m` only.
    pub fn truncate(&self, m: usize) -> SimplicialObject {
        assert!(m <= self.truncation());
        let mut s: Vec<Vec<Morphism>> = self.s[..=m].to_vec();
        s[m].clear();
        SimplicialObject { site: self.site.clone(), levels: self.levels[..=m].to_vec(), d: self.d[..=m].to_vec(), s }
    }

    /// Appends a level with its faces and the degeneracies into it.
    pub(crate) fn push_level(&mut self, obj: Object, faces: Vec<Morphism>, degeneracies: Vec<Morphism>) -> Result<()> {
        let n = self.truncation();
        self.levels.push(obj);
        self.d.push(faces);
        self.s[n] = degeneracies;
        self.s.push(Vec::new());
        self.validate()
    }

    /// The same object regarded in another site with identical signature,
    /// e.g. after changing the cover class.
    pub fn in_site(&self, site: &Site) -> Result<SimplicialObject> {
        SimplicialObject::new(site, self.levels.clone(), self.d.clone(), self.s.clone())
    }

    /// Every simplicial morphism `self → other`.
    pub fn hom_set(&self, other: &SimplicialObject, cap: usize) -> Result<Vec<SimplicialMorphism>> {
        let search = self.morphism_search(other)?;
        let sols = search.collect(cap)?;
        Ok(sols.into_iter().map(|v| self.morphism_from_flat(other, &v)).collect())
    }

    /// An isomorphism `self ≅ other`, if one exists.
    pub fn find_isomorphism(&self, other: &SimplicialObject) -> Result<Option<SimplicialMorphism>> {
        if self.level_sizes() != other.level_sizes() {
            return Ok(None);
        }
        let mut search = self.morphism_search(other)?;
        let mut groups = Vec::new();
        for (m, l) in self.levels.iter().enumerate() {
            groups.extend(std::iter::repeat(m).take(l.len()));
        }
        search.distinct = Some(groups);
        Ok(search.first()?.map(|v| self.morphism_from_flat(other, &v)))
    }

    pub fn is_isomorphic(&self, other: &SimplicialObject) -> Result<bool> {
        Ok(self.find_isomorphism(other)?.is_some())
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = vec![0];
        for l in &self.levels {
            off.push(off.last().unwrap() + l.len());
        }
        off
    }

    fn morphism_search(&self, other: &SimplicialObject) -> Result<Search> {
        if self.truncation() != other.truncation() || self.site.signature() != other.site.signature() {
            return Err(Error::InvalidMorphism("simplicial objects differ in truncation or site".into()));
        }
        let off = self.offsets();
        let mut domains = Vec::new();
        for (m, l) in self.levels.iter().enumerate() {
            for x in 0..l.len() {
                domains.push(other.levels[m].fiber(l.grade[x]));
            }
        }
        let mut search = Search::new(domains);
        for m in 0..=self.truncation() {
            for x in 0..self.levels[m].len() {
                let var = off[m] + x;
                for (i, f) in self.d[m].iter().enumerate() {
                    search.constrain(var, off[m - 1] + f.apply(x), other.d[m][i].map_arc());
                }
                for (j, f) in self.s[m].iter().enumerate() {
                    search.constrain(var, off[m + 1] + f.apply(x), other.s[m][j].map_arc());
                }
                for k in 0..self.site.op_count() {
                    if let Some(y) = self.levels[m].op(k, x) {
                        search.constrain(var, off[m] + y, other.levels[m].ops[k].clone());
                    }
                }
            }
        }
        Ok(search)
    }

    fn morphism_from_flat(&self, other: &SimplicialObject, v: &[usize]) -> SimplicialMorphism {
        let off = self.offsets();
        let levels = (0..=self.truncation())
            .map(|m| Morphism::new_unchecked(self.levels[m].clone(), other.levels[m].clone(), v[off[m]..off[m + 1]].to_vec()))
            .collect();
        SimplicialMorphism { source: self.clone(), target: other.clone(), levels }
    }
}

/// An object of a one-grade site with every operation acting trivially.
pub(crate) fn discrete(site: &Site, set: FinSetObj) -> Result<Object> {
    let n = set.len();
    let ops = vec![(0..n).collect(); site.op_count()];
    site.object(set, vec![0; n], ops)
}

/// A morphism of truncated simplicial objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMorphism {
    source: SimplicialObject,
    target: SimplicialObject,
    levels: Vec<Morphism>,
}

impl SimplicialMorphism {
    pub fn new(source: &SimplicialObject, target: &SimplicialObject, levels: Vec<Morphism>) -> Result<SimplicialMorphism> {
        let f = SimplicialMorphism { source: source.clone(), target: target.clone(), levels };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: &SimplicialObject, target: &SimplicialObject, levels: Vec<Morphism>) -> SimplicialMorphism {
        SimplicialMorphism { source: source.clone(), target: target.clone(), levels }
    }

    fn validate(&self) -> Result<()> {
        let (x, y) = (&self.source, &self.target);
        let bad = |m: String| Err(Error::InvalidMorphism(m));
        if x.truncation() != y.truncation() || self.levels.len() != x.levels.len() {
            return bad("levels do not match the truncation".into());
        }
        for (m, f) in self.levels.iter().enumerate() {
            if f.source() != &x.levels[m] || f.target() != &y.levels[m] {
                return bad(format!("level {m} has the wrong endpoints"));
            }
            x.site.validate_morphism(f)?;
            for e in 0..x.levels[m].len() {
                for (i, d) in x.d[m].iter().enumerate() {
                    if self.levels[m - 1].apply(d.apply(e)) != y.d[m][i].apply(f.apply(e)) {
                        return bad(format!("does not commute with d{i} at level {m}"));
                    }
                }
                for (j, s) in x.s[m].iter().enumerate() {
                    if self.levels[m + 1].apply(s.apply(e)) != y.s[m][j].apply(f.apply(e)) {
                        return bad(format!("does not commute with s{j} at level {m}"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: &SimplicialObject) -> SimplicialMorphism {
        let levels = x.levels.iter().map(|l| x.site.identity(l)).collect();
        SimplicialMorphism { source: x.clone(), target: x.clone(), levels }
    }

    pub fn to_terminal(x: &SimplicialObject) -> SimplicialMorphism {
        let t = SimplicialObject::terminal(&x.site, x.truncation());
        let levels = x.levels.iter().zip(&t.levels).map(|(l, tl)| Morphism::new_unchecked(l.clone(), tl.clone(), l.grade.clone())).collect();
        SimplicialMorphism { source: x.clone(), target: t, levels }
    }

    pub fn source(&self) -> &SimplicialObject {
        &self.source
    }

    pub fn target(&self) -> &SimplicialObject {
        &self.target
    }

    pub fn level(&self, m: usize) -> &Morphism {
        &self.levels[m]
    }

    pub fn levels(&self) -> &[Morphism] {
        &self.levels
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SimplicialMorphism) -> Result<SimplicialMorphism> {
        if self.target != g.source {
            return Err(Error::InvalidMorphism("simplicial morphisms are not composable".into()));
        }
        let site = &self.source.site;
        let levels = self.levels.iter().zip(&g.levels).map(|(f, g)| site.compose(f, g)).collect::<Result<_>>()?;
        Ok(SimplicialMorphism { source: self.source.clone(), target: g.target.clone(), levels })
    }

    pub fn truncate(&self, m: usize) -> SimplicialMorphism {
        let (x, y) = (self.source.truncate(m), self.target.truncate(m));
        let levels = (0..=m)
            .map(|l| Morphism::new_unchecked(x.levels[l].clone(), y.levels[l].clone(), self.levels[l].map().to_vec()))
            .collect();
        SimplicialMorphism { source: x, target: y, levels }
    }

    pub fn is_iso(&self) -> bool {
        self.levels.iter().all(Morphism::is_bijective)
    }

    /// The same morphism between the objects regarded in another site.
    pub fn in_site(&self, site: &Site) -> Result<SimplicialMorphism> {
        let x = self.source.in_site(site)?;
        let y = self.target.in_site(site)?;
        Ok(SimplicialMorphism::new_unchecked(&x, &y, rebase(&x, &y, &self.levels)))
    }
}

fn rebase(x: &SimplicialObject, y: &SimplicialObject, levels: &[Morphism]) -> Vec<Morphism> {
    levels
        .iter()
        .enumerate()
        .map(|(m, f)| Morphism::new_unchecked(x.levels[m].clone(), y.levels[m].clone(), f.map().to_vec()))
        .collect()
}

/// Level-wise fiber product of `f: X → Z` and `g: Y → Z`.
#[derive(Clone, Debug)]
pub struct LevelPullback {
    pub apex: SimplicialObject,
    pub left: SimplicialMorphism,
    pub right: SimplicialMorphism,
    pub levels: Vec<Pullback>,
}

impl SimplicialMorphism {
    pub fn pullback(f: &SimplicialMorphism, g: &SimplicialMorphism) -> Result<LevelPullback> {
        if f.target != g.target {
            return Err(Error::InvalidMorphism("pullback legs must share a target".into()));
        }
        let site = f.source.site.clone();
        let (x, y) = (&f.source, &g.source);
        let n = x.truncation();
        let pbs = (0..=n).map(|m| site.pullback(&f.levels[m], &g.levels[m])).collect::<Result<Vec<_>>>()?;
        let levels: Vec<Object> = pbs.iter().map(|p| p.apex.clone()).collect();
        let table = |m: usize, to: usize, fx: &Morphism, fy: &Morphism| -> Vec<usize> {
            pbs[m].pairs().iter().map(|&(a, b)| pbs[to].index_of(fx.apply(a), fy.apply(b)).expect("faces commute")).collect()
        };
        let d = (0..=n).map(|m| (0..x.d[m].len()).map(|i| table(m, m - 1, &x.d[m][i], &y.d[m][i])).collect()).collect();
        let s = (0..=n).map(|m| (0..x.s[m].len()).map(|j| table(m, m + 1, &x.s[m][j], &y.s[m][j])).collect()).collect();
        let apex = SimplicialObject::from_tables(&site, levels, d, s)?;
        let left = (0..=n)
            .map(|m| Morphism::new_unchecked(apex.levels[m].clone(), x.levels[m].clone(), pbs[m].left.map().to_vec()))
            .collect();
        let right = (0..=n)
            .map(|m| Morphism::new_unchecked(apex.levels[m].clone(), y.levels[m].clone(), pbs[m].right.map().to_vec()))
            .collect();
        Ok(LevelPullback {
            left: SimplicialMorphism::new_unchecked(&apex, x, left),
            right: SimplicialMorphism::new_unchecked(&apex, y, right),
            apex,
            levels: pbs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simp::FiniteSimplicialSet;

    /// `Δ^k` as a simplicial object of finite sets.
    fn simplex_object(k: usize, n: usize) -> SimplicialObject {
        SimplicialObject::from_simplicial_set(&Site::finsets(), &FiniteSimplicialSet::standard_simplex(k, n)).unwrap()
    }

    #[test]
    fn act_is_precomposition_on_simplices() {
        for k in 0..4 {
            let x = simplex_object(k, 3);
            let s = FiniteSimplicialSet::standard_simplex(k, 3);
            let top = s.cell_index(k.min(3), &[OrdinalMap::identity(k)]);
            let Some(top) = top else { continue };
            for m in 0..=3 {
                for alpha in OrdinalMap::all(m, k) {
                    let y = x.act(&alpha, top);
                    assert_eq!(s.coords(m, y), &[alpha.clone()], "{alpha:?}");
                }
            }
        }
    }

    #[test]
    fn nerve_sizes_and_identities() {
        let x = SimplicialObject::nerve(&Site::finsets(), &FiniteGroup::cyclic(2), 3).unwrap();
        assert_eq!(x.level_sizes(), vec![1, 2, 4, 8]);
        let s3 = SimplicialObject::nerve(&Site::finsets(), &FiniteGroup::symmetric(3), 2).unwrap();
        assert_eq!(s3.level_sizes(), vec![1, 6, 36]);
    }

    #[test]
    fn cech_sizes() {
        let site = Site::finsets();
        let a = site.plain_object(FinSetObj::numbered(3)).unwrap();
        let b = site.plain_object(FinSetObj::numbered(2)).unwrap();
        let f = site.morphism(&a, &b, vec![0, 0, 1]).unwrap();
        let x = SimplicialObject::cech(&site, &f, 3).unwrap();
        let expect: Vec<usize> = (0..4u32).map(|k| 2usize.pow(k + 1) + 1).collect();
        assert_eq!(x.level_sizes(), expect);
        SimplicialObject::cech_augmentation(&site, &f, 3).unwrap();
    }

    #[test]
    fn nerve_morphisms_are_group_homomorphisms() {
        let site = Site::finsets();
        let z2 = SimplicialObject::nerve(&site, &FiniteGroup::cyclic(2), 2).unwrap();
        let z3 = SimplicialObject::nerve(&site, &FiniteGroup::cyclic(3), 2).unwrap();
        assert_eq!(z3.hom_set(&z3, 100).unwrap().len(), 3);
        assert_eq!(z2.hom_set(&z3, 100).unwrap().len(), 1);
        assert_eq!(z2.hom_set(&z2, 100).unwrap().len(), 2);
        let auts = z3.hom_set(&z3, 100).unwrap().into_iter().filter(|f| f.is_iso()).count();
        assert_eq!(auts, 2);
        assert!(z3.is_isomorphic(&z3).unwrap());
        assert!(!z2.is_isomorphic(&z3).unwrap());
    }

    #[test]
    fn level_pullback_of_terminal_maps_is_product() {
        let site = Site::finsets();
        let z2 = SimplicialObject::nerve(&site, &FiniteGroup::cyclic(2), 2).unwrap();
        let t = SimplicialMorphism::to_terminal(&z2);
        let p = SimplicialMorphism::pullback(&t, &t).unwrap();
        assert_eq!(p.apex.level_sizes(), vec![1, 4, 16]);
    }
}
