//! Finite categories with marked weak equivalences, trivial fibrations and
//! fibrations.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::UNDEF;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// The on-disk form. `compose` lists `[f, g, h]` meaning `g ∘ f = h`.
/// Identities are implicit: `id_X` is added for every object `X` unless an
/// endomorphism of that name is declared, and they compose and are marked
/// automatically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<Arrow>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
    #[serde(rename = "W", default)]
    pub w: Vec<String>,
    #[serde(rename = "H", default)]
    pub h: Vec<String>,
    #[serde(rename = "F", default)]
    pub f: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedRelCategory {
    objects: Vec<String>,
    names: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    identity: Vec<usize>,
    /// `table[f][g] = g ∘ f`, `UNDEF` unless `target(f) = source(g)`.
    table: Vec<Vec<usize>>,
    w: Vec<bool>,
    h: Vec<bool>,
    f: Vec<bool>,
    hom: Vec<Vec<Vec<usize>>>,
}

impl MarkedRelCategory {
    /// Assembles a category from index data. `compose(f, g)` must return
    /// `g ∘ f` for every composable pair.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        objects: Vec<String>,
        arrows: Vec<(String, usize, usize)>,
        identity: Vec<usize>,
        compose: impl Fn(usize, usize) -> Option<usize>,
        w: Vec<bool>,
        h: Vec<bool>,
        f: Vec<bool>,
    ) -> Result<MarkedRelCategory> {
        let cap = crate::max_cells();
        if arrows.len() * arrows.len() > cap.saturating_mul(100) {
            return Err(Error::CapExceeded { cap, what: format!("composition table of {} morphisms", arrows.len()) });
        }
        let n = arrows.len();
        if identity.len() != objects.len() || w.len() != n || h.len() != n || f.len() != n {
            return Err(Error::InvalidObject("marks and identities must match the morphism and object lists".into()));
        }
        let mut names = Vec::with_capacity(n);
        let mut source = Vec::with_capacity(n);
        let mut target = Vec::with_capacity(n);
        for (name, s, t) in arrows {
            if s >= objects.len() || t >= objects.len() {
                return Err(Error::InvalidMorphism(format!("{name} has an endpoint outside the object list")));
            }
            names.push(name);
            source.push(s);
            target.push(t);
        }
        for (x, &i) in identity.iter().enumerate() {
            if i >= n || source[i] != x || target[i] != x {
                return Err(Error::InvalidMorphism(format!("identity of {} is not an endomorphism of it", objects[x])));
            }
        }
        let mut hom = vec![vec![Vec::new(); objects.len()]; objects.len()];
        for a in 0..n {
            hom[source[a]][target[a]].push(a);
        }
        let mut table = vec![vec![UNDEF; n]; n];
        for a in 0..n {
            for b in 0..n {
                if target[a] != source[b] {
                    continue;
                }
                let c = compose(a, b).ok_or_else(|| {
                    Error::InvalidMorphism(format!("no composite declared for {} ∘ {}", names[b], names[a]))
                })?;
                if c >= n || source[c] != source[a] || target[c] != target[b] {
                    return Err(Error::InvalidMorphism(format!(
                        "composite of {} ∘ {} has the wrong endpoints",
                        names[b], names[a]
                    )));
                }
                table[a][b] = c;
            }
        }
        Ok(MarkedRelCategory { objects, names, source, target, identity, table, w, h, f, hom })
    }

    pub fn from_file(file: &CategoryFile) -> Result<MarkedRelCategory> {
        let mut obj_index = HashMap::new();
        for (i, o) in file.objects.iter().enumerate() {
            if obj_index.insert(o.as_str(), i).is_some() {
                return Err(Error::Format(format!("object {o} declared twice")));
            }
        }
        let obj = |s: &str| obj_index.get(s).copied().ok_or_else(|| Error::Format(format!("unknown object {s}")));
        let mut arrows = Vec::new();
        let mut arrow_index: HashMap<String, usize> = HashMap::new();
        for a in &file.morphisms {
            let (s, t) = (obj(&a.source)?, obj(&a.target)?);
            if arrow_index.insert(a.name.clone(), arrows.len()).is_some() {
                return Err(Error::Format(format!("morphism {} declared twice", a.name)));
            }
            arrows.push((a.name.clone(), s, t));
        }
        let mut identity = Vec::new();
        for (x, o) in file.objects.iter().enumerate() {
            let name = format!("id_{o}");
            match arrow_index.get(&name) {
                Some(&i) if arrows[i].1 == x && arrows[i].2 == x => identity.push(i),
                Some(_) => return Err(Error::Format(format!("{name} is reserved for the identity of {o}"))),
                None => {
                    arrow_index.insert(name.clone(), arrows.len());
                    identity.push(arrows.len());
                    arrows.push((name, x, x));
                }
            }
        }
        let arrow = |s: &str| arrow_index.get(s).copied().ok_or_else(|| Error::Format(format!("unknown morphism {s}")));
        let mut declared: HashMap<(usize, usize), usize> = HashMap::new();
        for [a, b, c] in &file.compose {
            let key = (arrow(a)?, arrow(b)?);
            let c = arrow(c)?;
            if declared.insert(key, c).is_some_and(|old| old != c) {
                return Err(Error::Format(format!("conflicting composites for {b} ∘ {a}")));
            }
        }
        let is_id: Vec<bool> = (0..arrows.len()).map(|a| identity.contains(&a)).collect();
        for (&(a, b), &c) in &declared {
            let implied = if is_id[a] { Some(b) } else if is_id[b] { Some(a) } else { None };
            if implied.is_some_and(|i| i != c) {
                return Err(Error::Format(format!(
                    "composite {} ∘ {} contradicts the identity law",
                    arrows[b].0, arrows[a].0
                )));
            }
        }
        let marks = |list: &[String]| -> Result<Vec<bool>> {
            let mut v = is_id.clone();
            for s in list {
                v[arrow(s)?] = true;
            }
            Ok(v)
        };
        let (w, h, f) = (marks(&file.w)?, marks(&file.h)?, marks(&file.f)?);
        let compose = |a: usize, b: usize| {
            if is_id[a] {
                Some(b)
            } else if is_id[b] {
                Some(a)
            } else {
                declared.get(&(a, b)).copied()
            }
        };
        MarkedRelCategory::from_parts(file.objects.clone(), arrows, identity, compose, w, h, f)
    }

    pub fn from_json(text: &str) -> Result<MarkedRelCategory> {
        let file: CategoryFile = serde_json::from_str(text)?;
        MarkedRelCategory::from_file(&file)
    }

    /// The on-disk form, omitting identities and their composites.
    /// Identities that arise as composites are written as `id_<object>`.
    pub fn to_file(&self) -> CategoryFile {
        let is_id = |a: usize| self.identity[self.source[a]] == a;
        let name = |a: usize| if is_id(a) { format!("id_{}", self.objects[self.source[a]]) } else { self.names[a].clone() };
        let keep: Vec<usize> = (0..self.arrow_count()).filter(|&a| !is_id(a)).collect();
        let list = |marks: &[bool]| keep.iter().filter(|&&a| marks[a]).map(|&a| self.names[a].clone()).collect();
        let mut compose = Vec::new();
        for &a in &keep {
            for &b in &keep {
                let c = self.table[a][b];
                if c != UNDEF {
                    compose.push([name(a), name(b), name(c)]);
                }
            }
        }
        CategoryFile {
            objects: self.objects.clone(),
            morphisms: keep
                .iter()
                .map(|&a| Arrow {
                    name: self.names[a].clone(),
                    source: self.objects[self.source[a]].clone(),
                    target: self.objects[self.target[a]].clone(),
                })
                .collect(),
            compose,
            w: list(&self.w),
            h: list(&self.h),
            f: list(&self.f),
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.names.len()
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|o| o == name)
    }

    pub fn source(&self, a: usize) -> usize {
        self.source[a]
    }

    pub fn target(&self, a: usize) -> usize {
        self.target[a]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, a: usize) -> bool {
        self.identity[self.source[a]] == a
    }

    /// `g ∘ f`, when `target(f) = source(g)`.
    pub fn then(&self, f: usize, g: usize) -> Option<usize> {
        let c = self.table[f][g];
        (c != UNDEF).then_some(c)
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.hom[x][y]
    }

    pub fn in_w(&self, a: usize) -> bool {
        self.w[a]
    }

    pub fn in_h(&self, a: usize) -> bool {
        self.h[a]
    }

    pub fn in_f(&self, a: usize) -> bool {
        self.f[a]
    }

    /// A two-sided inverse of `a`, if any.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.hom[self.target[a]][self.source[a]].iter().copied().find(|&b| {
            self.table[a][b] == self.identity[self.source[a]] && self.table[b][a] == self.identity[self.target[a]]
        })
    }

    /// The same category with a different trivial-fibration marking.
    pub fn with_h(&self, h: Vec<bool>) -> Result<MarkedRelCategory> {
        if h.len() != self.arrow_count() {
            return Err(Error::InvalidObject("one mark per morphism is required".into()));
        }
        Ok(MarkedRelCategory { h, ..self.clone() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: String,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CategoryValidation {
    pub violations: Vec<Violation>,
    pub passed: bool,
}

/// Associativity, identity laws, isomorphisms in `W`, two-out-of-three for
/// `W` on every composable pair, and `H ⊆ W ∩ F`.
pub fn validate_marked_category(c: &MarkedRelCategory) -> CategoryValidation {
    let mut violations = Vec::new();
    let mut push = |rule: &str, witness: String| violations.push(Violation { rule: rule.into(), witness });
    let n = c.arrow_count();
    let name = |a: usize| c.arrow_name(a);
    for a in 0..n {
        let (s, t) = (c.source(a), c.target(a));
        if c.then(c.identity(s), a) != Some(a) || c.then(a, c.identity(t)) != Some(a) {
            push("identity", format!("{} does not compose neutrally with identities", name(a)));
        }
    }
    for a in 0..n {
        for &b in c.hom[c.target(a)].iter().flatten() {
            let ab = c.table[a][b];
            for &d in c.hom[c.target(b)].iter().flatten() {
                if c.table[ab][d] != c.table[a][c.table[b][d]] {
                    push("associativity", format!("({} ∘ {}) ∘ {}", name(d), name(b), name(a)));
                }
            }
            let marked = [c.w[a], c.w[b], c.w[ab]];
            if marked.iter().filter(|&&m| m).count() == 2 {
                push(
                    "two-out-of-three",
                    format!("{} ∘ {} = {} has exactly two of three in W", name(b), name(a), name(ab)),
                );
            }
        }
    }
    for a in 0..n {
        if !c.w[a] && c.inverse(a).is_some() {
            push("isomorphisms-in-W", format!("{} is an isomorphism not in W", name(a)));
        }
        if c.h[a] && !(c.w[a] && c.f[a]) {
            push("H-in-W-and-F", format!("{} is in H but not in both W and F", name(a)));
        }
    }
    let passed = violations.is_empty();
    CategoryValidation { violations, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn file(json: &str) -> MarkedRelCategory {
        MarkedRelCategory::from_json(json).unwrap()
    }

    #[test]
    fn discrete_category_is_valid() {
        let c = file(r#"{"objects":["A","B","C"],"morphisms":[]}"#);
        assert_eq!(c.arrow_count(), 3);
        assert!(validate_marked_category(&c).passed);
    }

    #[test]
    fn missing_isomorphism_in_w() {
        let c = file(
            r#"{"objects":["A","B","C"],
                "morphisms":[{"name":"u","source":"A","target":"B"},{"name":"v","source":"B","target":"A"}],
                "compose":[["u","v","id_A"],["v","u","id_B"]],
                "W":["u"]}"#,
        );
        let r = validate_marked_category(&c);
        assert!(!r.passed);
        assert!(r.violations.iter().any(|v| v.rule == "isomorphisms-in-W" && v.witness.starts_with("v ")));
    }

    #[test]
    fn two_out_of_three_names_the_triple() {
        let c = file(
            r#"{"objects":["A","B","C"],
                "morphisms":[{"name":"f","source":"A","target":"B"},{"name":"g","source":"B","target":"C"},
                             {"name":"gf","source":"A","target":"C"}],
                "compose":[["f","g","gf"]],
                "W":["f","gf"]}"#,
        );
        let r = validate_marked_category(&c);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].witness, "g ∘ f = gf has exactly two of three in W");
    }

    #[test]
    fn missing_composite_is_refused() {
        let err = MarkedRelCategory::from_json(
            r#"{"objects":["A","B","C"],
                "morphisms":[{"name":"f","source":"A","target":"B"},{"name":"g","source":"B","target":"C"}]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("no composite declared for g ∘ f"), "{err}");
    }

    #[test]
    fn file_round_trip() {
        let c = file(
            r#"{"objects":["A","B"],
                "morphisms":[{"name":"f","source":"A","target":"B"}],
                "W":["f"],"H":["f"],"F":["f"]}"#,
        );
        let again = MarkedRelCategory::from_file(&c.to_file()).unwrap();
        assert_eq!(again, c);
        assert!(validate_marked_category(&c).passed);
    }
}
