//! The canonical map from span components to hammock components.

use serde::Serialize;

use super::category::MarkedRelCategory;
use super::hammock::{hammock_components, HammockComponents, Step, Zigzag};
use super::span::span_components;
use crate::error::Result;
use crate::report::Status;

pub const ASSUMPTIONS: [&str; 2] = [
    "assumes homotopy calculus of right fractions",
    "π₀ only: higher homotopy of the mapping spaces is not compared",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Hammock { max_length: usize },
    Span,
}

#[derive(Clone, Debug, Serialize)]
pub struct Pi0 {
    pub model: String,
    pub vertices: Vec<String>,
    pub component: Vec<usize>,
    pub count: usize,
}

pub fn pi0_mapping_space(c: &MarkedRelCategory, model: Model, x: usize, y: usize) -> Result<Pi0> {
    Ok(match model {
        Model::Span => {
            let s = span_components(c, x, y);
            Pi0 {
                model: "span".into(),
                vertices: s.spans.iter().map(|sp| sp.render(c)).collect(),
                component: s.component,
                count: s.count,
            }
        }
        Model::Hammock { max_length } => {
            let h = hammock_components(c, x, y, max_length)?;
            Pi0 {
                model: format!("hammock(max_length={max_length})"),
                vertices: h.vertices.iter().map(|z| z.render(c)).collect(),
                component: h.component,
                count: h.count,
            }
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelComparison {
    pub from: String,
    pub to: String,
    pub max_length: usize,
    pub status: Status,
    pub span_components: usize,
    pub hammock_components: usize,
    /// Whether the partition at `max_length` survives at `max_length + 1`.
    pub stable: bool,
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
    pub suggested_max_length: Option<usize>,
    pub witness: Option<String>,
    pub assumptions: Vec<String>,
}

/// `π₀` at bound `L` agrees with `π₀` at `L + 1` on the zigzags of length
/// `≤ L`, and every component at `L + 1` already contains one of them.
fn is_stable(at: &HammockComponents, next: &HammockComponents) -> bool {
    let mut fwd = vec![usize::MAX; at.count];
    let mut back = vec![usize::MAX; next.count];
    for (v, &k) in at.vertices.iter().zip(&at.component) {
        let Some(m) = next.component_of(v) else { return false };
        if (fwd[k] != usize::MAX && fwd[k] != m) || (back[m] != usize::MAX && back[m] != k) {
            return false;
        }
        fwd[k] = m;
        back[m] = k;
    }
    back.iter().all(|&k| k != usize::MAX)
}

/// Sends each span `X ← Z → Y` to its reduced two-arrow zigzag and checks
/// the induced map on components is well defined and bijective, provided
/// the hammock bound is certified by stabilization.
pub fn compare_localization_models(c: &MarkedRelCategory, x: usize, y: usize, max_length: usize) -> Result<ModelComparison> {
    let sp = span_components(c, x, y);
    let at = hammock_components(c, x, y, max_length)?;
    let next = hammock_components(c, x, y, max_length + 1)?;
    let stable = is_stable(&at, &next);
    let mut report = ModelComparison {
        from: c.object_name(x).to_string(),
        to: c.object_name(y).to_string(),
        max_length,
        status: Status::Pass,
        span_components: sp.count,
        hammock_components: at.count,
        stable,
        well_defined: true,
        injective: true,
        surjective: true,
        suggested_max_length: None,
        witness: None,
        assumptions: ASSUMPTIONS.iter().map(|s| s.to_string()).collect(),
    };
    let mut image: Vec<Option<usize>> = Vec::with_capacity(sp.spans.len());
    for s in &sp.spans {
        let z = Zigzag {
            from: x,
            to: y,
            steps: vec![Step { arrow: s.left, forward: false }, Step { arrow: s.right, forward: true }],
        }
        .reduce(c);
        image.push(at.component_of(&z));
    }
    if !stable || image.iter().any(Option::is_none) {
        report.status = Status::Inconclusive;
        report.suggested_max_length = Some((max_length + 1).max(2));
        report.witness = Some(if stable {
            "a span's zigzag is longer than the bound".into()
        } else {
            format!(
                "hammock components change from {} at length {max_length} to {} at length {}",
                at.count,
                next.count,
                max_length + 1
            )
        });
        return Ok(report);
    }
    let image: Vec<usize> = image.into_iter().map(|i| i.expect("checked above")).collect();
    let mut by_span = vec![usize::MAX; sp.count];
    let mut owner = vec![usize::MAX; at.count];
    for (i, &k) in sp.component.iter().enumerate() {
        let h = image[i];
        if by_span[k] == usize::MAX {
            by_span[k] = h;
        } else if by_span[k] != h {
            report.well_defined = false;
            report.witness.get_or_insert_with(|| format!("{} lands in a second component", sp.spans[i].render(c)));
        }
        if owner[h] == usize::MAX {
            owner[h] = k;
        } else if owner[h] != k {
            report.injective = false;
            report
                .witness
                .get_or_insert_with(|| format!("{} is identified with another span component", sp.spans[i].render(c)));
        }
    }
    if let Some(h) = owner.iter().position(|&k| k == usize::MAX) {
        report.surjective = false;
        let v = at.component.iter().position(|&k| k == h).expect("components are inhabited");
        report.witness.get_or_insert_with(|| format!("{} is not hit by any span", at.vertices[v].render(c)));
    }
    report.status = Status::from_bool(report.well_defined && report.injective && report.surjective);
    Ok(report)
}

/// The comparison for every ordered pair of objects.
pub fn compare_all_pairs(c: &MarkedRelCategory, max_length: usize) -> Result<Vec<ModelComparison>> {
    let mut out = Vec::new();
    for x in 0..c.object_count() {
        for y in 0..c.object_count() {
            out.push(compare_localization_models(c, x, y, max_length)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(json: &str) -> MarkedRelCategory {
        MarkedRelCategory::from_json(json).unwrap()
    }

    #[test]
    fn isomorphisms_only() {
        let c = cat(
            r#"{"objects":["X","Y"],
                "morphisms":[{"name":"f","source":"X","target":"Y"},{"name":"g","source":"X","target":"Y"}]}"#,
        );
        for r in compare_all_pairs(&c, 2).unwrap() {
            assert_eq!(r.status, Status::Pass, "{r:?}");
        }
        let r = compare_localization_models(&c, 0, 1, 2).unwrap();
        assert_eq!((r.span_components, r.hammock_components), (2, 2));
    }

    #[test]
    fn pi0_of_a_discrete_category() {
        let c = cat(r#"{"objects":["X"],"morphisms":[]}"#);
        for model in [Model::Span, Model::Hammock { max_length: 3 }] {
            let p = pi0_mapping_space(&c, model, 0, 0).unwrap();
            assert_eq!(p.count, 1);
        }
    }
}
