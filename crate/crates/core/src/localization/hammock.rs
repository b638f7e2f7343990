//! Zigzags and hammocks: the bounded hammock model of the mapping spaces of
//! `L(C, W)`.

use serde::Serialize;

use super::category::MarkedRelCategory;
use super::UnionFind;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Step {
    pub arrow: usize,
    /// `true` for `→`, `false` for `←` (a weak equivalence read backwards).
    pub forward: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Zigzag {
    pub from: usize,
    pub to: usize,
    pub steps: Vec<Step>,
}

impl Zigzag {
    pub fn empty(x: usize) -> Zigzag {
        Zigzag { from: x, to: x, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The objects `X = O_0, …, O_n = Y` along the zigzag.
    pub fn objects(&self, c: &MarkedRelCategory) -> Vec<usize> {
        let mut out = vec![self.from];
        for s in &self.steps {
            out.push(if s.forward { c.target(s.arrow) } else { c.source(s.arrow) });
        }
        out
    }

    pub fn is_reduced(&self, c: &MarkedRelCategory) -> bool {
        self.steps.iter().all(|s| !c.is_identity(s.arrow)) && self.steps.windows(2).all(|w| w[0].forward != w[1].forward)
    }

    /// Drops identities and composes adjacent arrows of one direction until
    /// neither move applies.
    pub fn reduce(&self, c: &MarkedRelCategory) -> Zigzag {
        let mut out: Vec<Step> = Vec::with_capacity(self.steps.len());
        for &s in &self.steps {
            if c.is_identity(s.arrow) {
                continue;
            }
            match out.last().copied() {
                Some(p) if p.forward == s.forward => {
                    out.pop();
                    let arrow = if s.forward {
                        c.then(p.arrow, s.arrow)
                    } else {
                        c.then(s.arrow, p.arrow)
                    }
                    .expect("adjacent zigzag arrows compose");
                    if !c.is_identity(arrow) {
                        out.push(Step { arrow, forward: s.forward });
                    }
                }
                _ => out.push(s),
            }
        }
        // a dropped composite can make its neighbours adjacent
        let z = Zigzag { from: self.from, to: self.to, steps: out };
        if z.is_reduced(c) {
            z
        } else {
            z.reduce(c)
        }
    }

    pub fn render(&self, c: &MarkedRelCategory) -> String {
        let mut s = c.object_name(self.from).to_string();
        for (step, o) in self.steps.iter().zip(self.objects(c).into_iter().skip(1)) {
            let a = c.arrow_name(step.arrow);
            if step.forward {
                s.push_str(&format!(" -{a}-> "));
            } else {
                s.push_str(&format!(" <-{a}- "));
            }
            s.push_str(c.object_name(o));
        }
        s
    }
}

/// Every zigzag of exactly `len` steps from `x` to `y`, backward steps in
/// `W`. With `reduced` only reduced ones, otherwise only those whose
/// directions alternate.
fn zigzags_of_length(c: &MarkedRelCategory, x: usize, y: usize, len: usize, reduced: bool) -> Vec<Zigzag> {
    fn rec(
        c: &MarkedRelCategory,
        at: usize,
        y: usize,
        left: usize,
        reduced: bool,
        cur: &mut Vec<Step>,
        out: &mut Vec<Vec<Step>>,
    ) {
        if left == 0 {
            if at == y {
                out.push(cur.clone());
            }
            return;
        }
        let last = cur.last().map(|s| s.forward);
        for forward in [true, false] {
            if last == Some(forward) {
                continue;
            }
            for next in 0..c.object_count() {
                let arrows = if forward { c.hom(at, next) } else { c.hom(next, at) };
                for &a in arrows {
                    if (!forward && !c.in_w(a)) || (reduced && c.is_identity(a)) {
                        continue;
                    }
                    cur.push(Step { arrow: a, forward });
                    rec(c, next, y, left - 1, reduced, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(c, x, y, len, reduced, &mut Vec::new(), &mut out);
    let mut zs: Vec<Zigzag> = out.into_iter().map(|steps| Zigzag { from: x, to: y, steps }).collect();
    zs.sort();
    zs
}

/// All reduced zigzags `x → y` of length at most `max_length`, ordered by
/// length and then by their step sequence.
pub fn enumerate_zigzags(c: &MarkedRelCategory, x: usize, y: usize, max_length: usize) -> Vec<Zigzag> {
    (0..=max_length).flat_map(|n| zigzags_of_length(c, x, y, n, true)).collect()
}

/// A grid of `k + 1` rows of one length, with vertical maps from each row
/// to the next; the first and last columns of verticals are identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hammock {
    pub rows: Vec<Zigzag>,
    /// `verticals[r][j]` goes from column `j` of row `r` to column `j` of row `r + 1`.
    pub verticals: Vec<Vec<usize>>,
}

impl Hammock {
    pub fn height(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn length(&self) -> usize {
        self.rows[0].len()
    }
}

/// Every row below `row` making a height-one hammock with it: same
/// direction word, verticals in `W`, every square commuting.
fn rows_below(c: &MarkedRelCategory, row: &Zigzag, reduced: bool) -> Vec<(Zigzag, Vec<usize>)> {
    let objs = row.objects(c);
    let n = row.len();
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(n);
    let mut verts = vec![c.identity(row.from)];
    fill_row(c, row, &objs, n, reduced, &mut steps, &mut verts, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn fill_row(
    c: &MarkedRelCategory,
    row: &Zigzag,
    objs: &[usize],
    n: usize,
    reduced: bool,
    steps: &mut Vec<Step>,
    verts: &mut Vec<usize>,
    out: &mut Vec<(Zigzag, Vec<usize>)>,
) {
    let j = steps.len();
    if j == n {
        out.push((Zigzag { from: row.from, to: row.to, steps: steps.clone() }, verts.clone()));
        return;
    }
    let Step { arrow: a, forward } = row.steps[j];
    let v = verts[j];
    let p = c.target(v);
    let candidates: Vec<usize> = if j + 1 == n {
        vec![c.identity(row.to)]
    } else {
        (0..c.object_count()).flat_map(|q| c.hom(objs[j + 1], q).iter().copied()).filter(|&u| c.in_w(u)).collect()
    };
    for u in candidates {
        let q = c.target(u);
        let arrows = if forward { c.hom(p, q) } else { c.hom(q, p) };
        for &b in arrows {
            if (reduced && c.is_identity(b)) || (!forward && !c.in_w(b)) {
                continue;
            }
            let commutes = if forward {
                // b ∘ v = u ∘ a
                c.then(v, b) == c.then(a, u)
            } else {
                // v ∘ a = b ∘ u
                c.then(a, v) == c.then(u, b)
            };
            if commutes {
                steps.push(Step { arrow: b, forward });
                verts.push(u);
                fill_row(c, row, objs, n, reduced, steps, verts, out);
                steps.pop();
                verts.pop();
            }
        }
    }
}

/// Height-`k` hammocks on reduced rows of length `n` from `x` to `y`.
pub fn hammock_simplices(c: &MarkedRelCategory, x: usize, y: usize, n: usize, k: usize) -> Result<Vec<Hammock>> {
    let cap = crate::max_cells();
    let mut layer: Vec<Hammock> = zigzags_of_length(c, x, y, n, true)
        .into_iter()
        .map(|r| Hammock { rows: vec![r], verticals: Vec::new() })
        .collect();
    for _ in 0..k {
        let mut next = Vec::new();
        for hm in &layer {
            for (row, vs) in rows_below(c, hm.rows.last().expect("a hammock has a row"), true) {
                let mut grown = hm.clone();
                grown.rows.push(row);
                grown.verticals.push(vs);
                next.push(grown);
                if next.len() > cap {
                    return Err(Error::CapExceeded { cap, what: format!("height-{k} hammocks of length {n}") });
                }
            }
        }
        layer = next;
    }
    Ok(layer)
}

/// Independent validity check of a hammock, returning every violated
/// constraint.
pub fn check_hammock(c: &MarkedRelCategory, x: usize, y: usize, h: &Hammock) -> Vec<String> {
    let mut bad = Vec::new();
    if h.rows.is_empty() || h.verticals.len() + 1 != h.rows.len() {
        return vec!["grid shape".into()];
    }
    let n = h.rows[0].len();
    for (r, row) in h.rows.iter().enumerate() {
        if row.from != x || row.to != y || row.len() != n {
            bad.push(format!("row {r} does not run from X to Y with length {n}"));
            continue;
        }
        // recompute the objects independently of `Zigzag::objects`
        let mut at = x;
        for (j, s) in row.steps.iter().enumerate() {
            let (src, tgt) = (c.source(s.arrow), c.target(s.arrow));
            let ok = if s.forward { src == at } else { tgt == at };
            if !ok {
                bad.push(format!("row {r} column {j} does not attach"));
            }
            at = if s.forward { tgt } else { src };
            if !s.forward && !c.in_w(s.arrow) {
                bad.push(format!("row {r} column {j}: leftward arrow not in W"));
            }
            if c.is_identity(s.arrow) {
                bad.push(format!("row {r} column {j}: identity in a reduced row"));
            }
            if j > 0 && row.steps[j - 1].forward == s.forward {
                bad.push(format!("row {r} columns {} and {j} share a direction", j - 1));
            }
            if s.forward != h.rows[0].steps[j].forward {
                bad.push(format!("column {j} mixes directions"));
            }
        }
        if at != y {
            bad.push(format!("row {r} does not end at Y"));
        }
    }
    if !bad.is_empty() {
        return bad;
    }
    for (r, vs) in h.verticals.iter().enumerate() {
        if vs.len() != n + 1 {
            bad.push(format!("verticals {r} have the wrong count"));
            continue;
        }
        if vs[0] != c.identity(x) || vs[n] != c.identity(y) {
            bad.push(format!("verticals {r} are not identities at the ends"));
        }
        let (top, bottom) = (h.rows[r].objects(c), h.rows[r + 1].objects(c));
        for (j, &v) in vs.iter().enumerate() {
            if !c.in_w(v) {
                bad.push(format!("vertical {r},{j} not in W"));
            }
            if c.source(v) != top[j] || c.target(v) != bottom[j] {
                bad.push(format!("vertical {r},{j} has the wrong endpoints"));
            }
        }
        for j in 0..n {
            let (a, b) = (h.rows[r].steps[j], h.rows[r + 1].steps[j]);
            let square = if a.forward {
                c.then(vs[j], b.arrow) == c.then(a.arrow, vs[j + 1])
            } else {
                c.then(a.arrow, vs[j]) == c.then(vs[j + 1], b.arrow)
            };
            if !square {
                bad.push(format!("square {r},{j} does not commute"));
            }
        }
    }
    bad
}

/// Components of the hammock model at length bound `max_length`: vertices
/// are the reduced zigzags, joined when two rows of a height-one hammock
/// with alternating (not necessarily reduced) rows reduce to them.
#[derive(Clone, Debug, Serialize)]
pub struct HammockComponents {
    pub vertices: Vec<Zigzag>,
    /// Component index of each vertex, numbered by first occurrence.
    pub component: Vec<usize>,
    pub count: usize,
}

impl HammockComponents {
    pub fn component_of(&self, z: &Zigzag) -> Option<usize> {
        self.vertices.binary_search_by(|v| (v.len(), v).cmp(&(z.len(), z))).ok().map(|i| self.component[i])
    }
}

pub fn hammock_components(c: &MarkedRelCategory, x: usize, y: usize, max_length: usize) -> Result<HammockComponents> {
    let cap = crate::max_cells();
    let vertices = enumerate_zigzags(c, x, y, max_length);
    if vertices.len() > cap {
        return Err(Error::CapExceeded { cap, what: format!("zigzags of length ≤ {max_length}") });
    }
    let index = |z: &Zigzag| {
        vertices
            .binary_search_by(|v| (v.len(), v).cmp(&(z.len(), z)))
            .expect("a reduced row of bounded length is a vertex")
    };
    let mut uf = UnionFind::new(vertices.len());
    let mut work = 0usize;
    for len in 1..=max_length {
        for row in zigzags_of_length(c, x, y, len, false) {
            let top = index(&row.reduce(c));
            for (below, _) in rows_below(c, &row, false) {
                uf.union(top, index(&below.reduce(c)));
                work += 1;
            }
            if work > cap.saturating_mul(10) {
                return Err(Error::CapExceeded { cap, what: format!("hammocks of length ≤ {max_length}") });
            }
        }
    }
    let (component, count) = uf.canonical();
    Ok(HammockComponents { vertices, component, count })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(json: &str) -> MarkedRelCategory {
        MarkedRelCategory::from_json(json).unwrap()
    }

    fn single_arrow() -> MarkedRelCategory {
        cat(r#"{"objects":["X","Y"],"morphisms":[{"name":"f","source":"X","target":"Y"}]}"#)
    }

    #[test]
    fn empty_zigzag_only_at_length_zero() {
        let c = single_arrow();
        assert_eq!(enumerate_zigzags(&c, 0, 0, 0), vec![Zigzag::empty(0)]);
    }

    #[test]
    fn single_arrow_gives_one_zigzag() {
        let c = single_arrow();
        let zs = enumerate_zigzags(&c, 0, 1, 2);
        assert_eq!(zs.len(), 1);
        assert_eq!(zs[0].render(&c), "X -f-> Y");
    }

    #[test]
    fn span_zigzag_is_enumerated() {
        let c = cat(
            r#"{"objects":["X","Y","Z"],
                "morphisms":[{"name":"w","source":"Z","target":"X"},{"name":"g","source":"Z","target":"Y"}],
                "W":["w"]}"#,
        );
        let zs = enumerate_zigzags(&c, 0, 1, 2);
        assert!(zs.iter().any(|z| z.render(&c) == "X <-w- Z -g-> Y"));
    }

    #[test]
    fn height_zero_hammocks_are_reduced_zigzags() {
        let c = single_arrow();
        let hs = hammock_simplices(&c, 0, 1, 1, 0).unwrap();
        assert_eq!(hs.len(), 1);
        assert_eq!(hs[0].rows[0], enumerate_zigzags(&c, 0, 1, 1)[0]);
    }

    #[test]
    fn discrete_category_has_only_the_empty_hammock() {
        let c = cat(r#"{"objects":["X","Y"],"morphisms":[]}"#);
        assert_eq!(hammock_simplices(&c, 0, 0, 0, 0).unwrap().len(), 1);
        assert_eq!(hammock_simplices(&c, 0, 0, 0, 2).unwrap().len(), 1);
        for n in 0..3 {
            assert!(hammock_simplices(&c, 0, 1, n, 1).unwrap().is_empty());
        }
    }

    #[test]
    fn one_weak_equivalence_between_two_spans() {
        // two spans X ← Z → Y and X ← Z' → Y related by w: Z → Z' in W
        let c = cat(
            r#"{"objects":["X","Y","Z","Z2"],
                "morphisms":[{"name":"h","source":"Z","target":"X"},{"name":"g","source":"Z","target":"Y"},
                             {"name":"h2","source":"Z2","target":"X"},{"name":"g2","source":"Z2","target":"Y"},
                             {"name":"w","source":"Z","target":"Z2"}],
                "compose":[["w","h2","h"],["w","g2","g"]],
                "W":["h","h2","w"]}"#,
        );
        let hs = hammock_simplices(&c, 0, 1, 2, 1).unwrap();
        let off_diagonal: Vec<&Hammock> = hs.iter().filter(|h| h.rows[0] != h.rows[1]).collect();
        assert_eq!(off_diagonal.len(), 1);
        assert_eq!(off_diagonal[0].rows[0].render(&c), "X <-h- Z -g-> Y");
        assert_eq!(off_diagonal[0].rows[1].render(&c), "X <-h2- Z2 -g2-> Y");
        for h in &hs {
            assert!(check_hammock(&c, 0, 1, h).is_empty());
        }
    }

    #[test]
    fn reduction_composes_and_drops_identities() {
        let c = cat(
            r#"{"objects":["A","B","C"],
                "morphisms":[{"name":"f","source":"A","target":"B"},{"name":"g","source":"B","target":"C"},
                             {"name":"gf","source":"A","target":"C"}],
                "compose":[["f","g","gf"]]}"#,
        );
        let f = c.arrow_index("f").unwrap();
        let g = c.arrow_index("g").unwrap();
        let id = c.identity(1);
        let z = Zigzag {
            from: 0,
            to: 2,
            steps: vec![
                Step { arrow: f, forward: true },
                Step { arrow: id, forward: false },
                Step { arrow: g, forward: true },
            ],
        };
        assert_eq!(z.reduce(&c).render(&c), "A -gf-> C");
    }
}
