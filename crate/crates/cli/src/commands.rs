//! One function per subcommand, each producing JSON plus a text summary.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use ngrpd::acceptance::{self, Fixtures};
use ngrpd::fincat::{audit_site_axioms, CoverClass, Object, Probe, Site};
use ngrpd::formats::{self, CoverJson, GraphJson, SimplicialJson, SimplicialMorphismJson};
use ngrpd::galois::{
    cover_from_action, fiber_functor, fiber_functor_ngrpd, is_connected, roundtrip_iso, verify_correspondence_exactness,
    BasedGraph,
};
use ngrpd::grpd::{
    classify_map, is_fibration, is_hypercover, is_n_groupoid, is_weak_equivalence, mapping_path_factorization,
    mirrored_path_factorization, verify_cfo_axioms, Certificate, Dim,
};
use ngrpd::gset::{FiniteGroup, GroupSpec};
use ngrpd::localization::{
    check_hammock, compare_all_pairs, compare_localization_models, hammock_simplices, localize_groupoid_category,
    validate_marked_category, Hammock, LocalizeOptions, MarkedRelCategory,
};
use ngrpd::report::{to_sorted_json, Status};
use ngrpd::simp::{FiniteSimplicialSet, SimplicialMorphism, SimplicialObject};
use ngrpd::{Error, Result};

use crate::{
    AuditSiteArgs, BuildCoverArgs, CheckArgs, CheckKind, CompareArgs, DeltaArgs, FactorizeArgs, FiberArgs,
    GaloisAuditArgs, HammocksArgs, LocalizeArgs, SampleArgs, SelftestArgs,
};

pub struct Output {
    pub status: Status,
    /// Reports get the command echo and status added; artifacts are
    /// emitted as they are.
    pub is_report: bool,
    pub json: Value,
    pub text: Vec<String>,
}

impl Output {
    fn report(status: Status, json: Value, text: Vec<String>) -> Output {
        Output { status, is_report: true, json, text }
    }

    fn artifact(json: Value, text: Vec<String>) -> Output {
        Output { status: Status::Pass, is_report: false, json, text }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

/// Parses a JSON file, prefixing errors with its path.
fn load<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> Result<T> {
    formats::parse(&read(path)?).map_err(|e| Error::Format(format!("{}: {}", path.display(), strip(e))))
}

fn strip(e: Error) -> String {
    match e {
        Error::Format(m) => m,
        other => other.to_string(),
    }
}

fn value<T: serde::Serialize>(t: &T) -> Result<Value> {
    Ok(serde_json::to_value(t)?)
}

fn parse_dim(s: &str) -> Result<Dim> {
    match s {
        "inf" | "infinity" | "∞" => Ok(Dim::Infinite),
        _ => s.parse().map(Dim::Finite).map_err(|_| Error::Format(format!("--n expects a number or inf, got {s:?}"))),
    }
}

/// A site by name or from a JSON file.
pub fn site_named(s: &str) -> Result<Site> {
    Ok(match s {
        "finsets" => Site::finsets(),
        "z2" => Site::gsets(GroupSpec::Finite(FiniteGroup::cyclic(2))),
        "z3" => Site::gsets(GroupSpec::Finite(FiniteGroup::cyclic(3))),
        "s3" => Site::gsets(GroupSpec::Finite(FiniteGroup::symmetric(3))),
        "figure-eight" => Site::graph_covers(BasedGraph::figure_eight()),
        "theta" => Site::graph_covers(BasedGraph::theta()),
        path => formats::site_from_json(&load(Path::new(path))?)?,
    })
}

fn cover_class(s: &str) -> Result<CoverClass> {
    CoverClass::parse(s).ok_or_else(|| Error::Format(format!("unknown cover class {s:?}")))
}

fn certificate_lines(c: &Certificate) -> Vec<String> {
    let mut lines = vec![format!(
        "{} (n = {}) checked for k in {}..={} at truncation {}",
        c.property,
        match c.n {
            Dim::Finite(n) => n.to_string(),
            Dim::Infinite => "inf".into(),
        },
        c.verified_range.0,
        c.verified_range.1,
        c.truncation
    )];
    if let Some(v) = c.first_failure() {
        lines.push(format!("witness: {}", v.describe()));
    }
    lines
}

pub fn delta(a: &DeltaArgs) -> Result<Output> {
    let (name, shape) = match (a.boundary, a.horn) {
        (true, _) => (format!("∂Δ^{}", a.k), FiniteSimplicialSet::boundary(a.k, a.n)?),
        (false, Some(i)) => (format!("Λ^{}_{i}", a.k), FiniteSimplicialSet::horn(a.k, i, a.n)?),
        (false, None) => (format!("Δ^{}", a.k), FiniteSimplicialSet::standard_simplex(a.k, a.n)),
    };
    let sizes: Vec<String> = (0..=a.n).map(|m| shape.level_len(m).to_string()).collect();
    let json = value(&formats::simplicial_set_to_json(&shape)?)?;
    Ok(Output::artifact(json, vec![format!("{name} truncated at {}: level sizes {}", a.n, sizes.join(", "))]))
}

fn load_object(path: &Path) -> Result<SimplicialObject> {
    formats::simplicial_from_json(&load::<SimplicialJson>(path)?).map_err(|e| with_path(path, e))
}

fn load_morphism(path: &Path) -> Result<SimplicialMorphism> {
    formats::simplicial_morphism_from_json(&load::<SimplicialMorphismJson>(path)?).map_err(|e| with_path(path, e))
}

fn with_path(path: &Path, e: Error) -> Error {
    Error::Format(format!("{}: {}", path.display(), strip(e)))
}

fn required<'a>(p: &'a Option<PathBuf>, flag: &str, kind: &str) -> Result<&'a Path> {
    p.as_deref().ok_or_else(|| Error::Format(format!("--kind {kind} needs --{flag}")))
}

pub fn check(a: &CheckArgs) -> Result<Output> {
    let n = parse_dim(&a.n)?;
    if a.kind == CheckKind::Groupoid {
        let x = load_object(required(&a.input, "input", "groupoid")?)?;
        let cert = is_n_groupoid(&x, n)?;
        let text = certificate_lines(&cert);
        return Ok(Output::report(Status::from_bool(cert.passed), json!({ "certificate": value(&cert)? }), text));
    }
    let kind = match a.kind {
        CheckKind::Fibration => "fibration",
        CheckKind::Hypercover => "hypercover",
        CheckKind::WeakEquivalence => "weak-equivalence",
        _ => "classify",
    };
    let f = load_morphism(required(&a.map, "map", kind)?)?;
    let cert = match a.kind {
        CheckKind::Fibration => is_fibration(&f)?,
        CheckKind::Hypercover => is_hypercover(&f, n)?,
        CheckKind::WeakEquivalence => is_weak_equivalence(&f, None)?.hypercover,
        _ => {
            let c = classify_map(&f, n, None)?;
            let text = vec![
                format!("fibration: {}", c.is_fibration),
                format!("hypercover: {}", c.is_hypercover),
                format!("weak equivalence: {} (on levels 0..={})", c.is_weak_equivalence, c.weak_equivalence.truncation),
                format!("trivial fibration: {}", c.is_trivial_fibration),
            ];
            return Ok(Output::report(Status::Pass, json!({ "classification": value(&c)? }), text));
        }
    };
    let mut text = certificate_lines(&cert);
    if a.kind == CheckKind::WeakEquivalence {
        text.insert(0, "weak equivalence: q(f) is a hypercover".into());
    }
    Ok(Output::report(Status::from_bool(cert.passed), json!({ "certificate": value(&cert)? }), text))
}

pub fn factorize(a: &FactorizeArgs) -> Result<Output> {
    let f = load_morphism(&a.map)?;
    let fact = if a.mirrored { mirrored_path_factorization(&f, None)? } else { mapping_path_factorization(&f, None)? };
    let composite_ok = fact.r.then(&fact.q)? == fact.f;
    let q_fib = fact.q_is_fibration()?;
    let r_weq = is_weak_equivalence(&fact.r, None)?;
    let status = Status::from_bool(composite_ok && q_fib.passed && r_weq.passed);
    if let Some(prefix) = &a.out_prefix {
        let files = [
            ("middle", value(&formats::simplicial_to_json(&fact.middle))?),
            ("r", value(&formats::simplicial_morphism_to_json(&fact.r))?),
            ("q", value(&formats::simplicial_morphism_to_json(&fact.q))?),
        ];
        for (name, v) in files {
            let path = format!("{prefix}{name}.json");
            std::fs::write(&path, to_sorted_json(&v)? + "\n").map_err(|e| Error::Format(format!("{path}: {e}")))?;
        }
    }
    let text = vec![
        format!("middle level sizes {:?}", fact.middle.level_sizes()),
        format!("q ∘ r = f: {composite_ok}"),
        format!("q fibration: {}", q_fib.passed),
        format!("r weak equivalence: {}", r_weq.passed),
    ];
    let json = json!({
        "middle_level_sizes": fact.middle.level_sizes(),
        "composite_is_f": composite_ok,
        "q_fibration": value(&q_fib)?,
        "r_weak_equivalence": value(&r_weq.hypercover)?,
        "truncation": fact.f.source().truncation(),
    });
    Ok(Output::report(status, json, text))
}

/// Every `*.json` file of a directory in name order, with its stem.
fn json_files(dir: &Path) -> Result<Vec<(String, PathBuf)>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::Format(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<(String, PathBuf)> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| (p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(), p))
        .collect();
    files.sort();
    Ok(files)
}

fn all_morphisms(objects: &[(String, SimplicialObject)]) -> Result<Vec<(String, SimplicialMorphism)>> {
    let mut out = Vec::new();
    for (an, a) in objects {
        for (bn, b) in objects {
            for (k, f) in a.hom_set(b, ngrpd::max_cells())?.into_iter().enumerate() {
                out.push((format!("{an}->{bn}#{k}"), f));
            }
        }
    }
    Ok(out)
}

pub fn audit_cfo(a: &SampleArgs) -> Result<Output> {
    let objects =
        json_files(&a.sample)?.into_iter().map(|(n, p)| Ok((n, load_object(&p)?))).collect::<Result<Vec<_>>>()?;
    let morphisms = all_morphisms(&objects)?;
    let audit = verify_cfo_axioms(&objects, &morphisms)?;
    let mut text = vec![format!("{} objects, {} morphisms, {} instances", objects.len(), morphisms.len(), audit.instances.len())];
    for axiom in ["F1", "F2", "F3", "F4"] {
        text.push(format!("{axiom}: {} instances", audit.count(axiom)));
    }
    text.extend(audit.failures().take(10).map(|i| format!("fail {} {}: {}", i.axiom, i.subject, i.witness.clone().unwrap_or_default())));
    Ok(Output::report(Status::from_bool(audit.passed), json!({ "audit": value(&audit)?, "objects": objects.len(), "morphisms": morphisms.len() }), text))
}

pub fn audit_site(a: &AuditSiteArgs) -> Result<Output> {
    let site = site_named(&a.site)?;
    let mut objects = site.small_objects(a.bound)?;
    if a.nonempty {
        objects.retain(|o| !o.is_empty());
    }
    let probe = Probe::exhaustive(&site, objects, ngrpd::max_cells())?;
    let audit = audit_site_axioms(&site, &probe)?;
    let mut counts = serde_json::Map::new();
    let mut text = vec![audit.site.clone(), audit.scope.clone()];
    for axiom in ["C0", "C1", "C2", "C3", "C4"] {
        let failed = audit.failures().filter(|i| i.axiom == axiom).count();
        counts.insert(axiom.into(), json!({ "instances": audit.count(axiom), "failures": failed }));
        text.push(format!("{axiom}: {} instances, {failed} failures", audit.count(axiom)));
    }
    let failures: Vec<Value> = audit.failures().take(20).map(value).collect::<Result<_>>()?;
    text.extend(audit.failures().take(10).map(|i| format!("fail {} {}: {}", i.axiom, i.subject, i.witness.clone().unwrap_or_default())));
    let json = json!({ "site": audit.site, "scope": audit.scope, "axioms": counts, "failures": failures });
    Ok(Output::report(Status::from_bool(audit.passed()), json, text))
}

fn load_base(path: &Path) -> Result<Site> {
    let g: GraphJson = load(path)?;
    Ok(Site::graph_covers(formats::based_graph_from_json(&g).map_err(|e| with_path(path, e))?))
}

fn load_cover(site: &Site, path: &Path) -> Result<Object> {
    let c: CoverJson = load(path)?;
    formats::cover_from_json(site, &c).map_err(|e| with_path(path, e))
}

pub fn fiber(a: &FiberArgs) -> Result<Output> {
    let site = load_base(&a.base)?;
    let cover = load_cover(&site, &a.cover)?;
    let action = fiber_functor(&site, &cover)?;
    let text = action.perms.iter().enumerate().map(|(k, p)| format!("generator {k}: {p:?}")).collect();
    Ok(Output::artifact(value(&formats::action_to_json(&action))?, text))
}

pub fn build_cover(a: &BuildCoverArgs) -> Result<Output> {
    let site = load_base(&a.base)?;
    let action = formats::action_from_json(&load(&a.action)?).map_err(|e| with_path(&a.action, e))?;
    let cover = cover_from_action(&site, &action)?;
    let text = vec![format!("cover of degree {} with {} total vertices", action.fiber.len(), cover.len())];
    Ok(Output::artifact(value(&formats::cover_to_json(&site, &cover)?)?, text))
}

pub fn galois_audit(a: &GaloisAuditArgs) -> Result<Output> {
    let files = json_files(&a.sample)?;
    let base = files
        .iter()
        .find(|(n, _)| n == "base")
        .ok_or_else(|| Error::Format(format!("{}: no base.json", a.sample.display())))?;
    let site = load_base(&base.1)?;
    let mut covers = Vec::new();
    for (name, path) in files.iter().filter(|(n, _)| n != "base") {
        covers.push((name.clone(), load_cover(&site, path)?));
    }
    let mut instances = Vec::new();
    let mut ok = true;
    for (name, c) in &covers {
        let action = fiber_functor(&site, c)?;
        let back = fiber_functor(&site, &cover_from_action(&site, &action)?)? == action;
        let iso = roundtrip_iso(&site, c)?.is_some();
        ok &= back && iso;
        instances.push(json!({
            "cover": name,
            "degree": action.fiber.len(),
            "connected": is_connected(&site, c)?,
            "action_round_trip": back,
            "cover_round_trip": iso,
        }));
    }
    let mut objects = Vec::new();
    for (name, c) in &covers {
        objects.push((format!("const({name})"), SimplicialObject::constant(&site, c, a.n)?));
        let t = site.to_terminal(c);
        if site.is_cover(&t) && !site.is_iso(&t) {
            objects.push((format!("cech({name})"), SimplicialObject::cech(&site, &t, a.n)?));
        }
    }
    let morphisms = all_morphisms(&objects)?;
    let targets = objects
        .iter()
        .map(|(n, x)| Ok((format!("F({n})"), fiber_functor_ngrpd(&site, x)?)))
        .collect::<Result<Vec<_>>>()?;
    let report = verify_correspondence_exactness(&site, &objects, &morphisms, &targets)?;
    ok &= report.passed;
    let text = vec![
        format!("{} covers, {} lifted objects at truncation {}, {} morphisms", covers.len(), objects.len(), a.n, morphisms.len()),
        format!("round trips: {}", instances.len()),
        format!("exactness: {}", report.exactness.passed),
        format!("cover reflection failures: {}", report.cover_reflection.iter().filter(|i| !i.passed).count()),
    ];
    let json = json!({ "round_trips": instances, "correspondence": value(&report)? });
    Ok(Output::report(Status::from_bool(ok), json, text))
}

pub fn localize(a: &LocalizeArgs) -> Result<Output> {
    let site = site_named(&a.site)?;
    let mut opts = LocalizeOptions::new(a.n, a.bound);
    opts.truncation = a.truncation;
    opts.hypercover_class = a.hypercover_class.as_deref().map(cover_class).transpose()?;
    let lc = localize_groupoid_category(&site, &opts)?;
    let c = &lc.category;
    let mut text = vec![format!("{} objects, {} morphisms", c.object_count(), c.arrow_count())];
    for (i, d) in lc.descriptions.iter().enumerate() {
        text.push(format!("{}: {d}, level sizes {:?}", c.object_name(i), lc.objects[i].1.level_sizes()));
    }
    Ok(Output::artifact(value(&c.to_file())?, text))
}

fn load_category(path: &Path) -> Result<MarkedRelCategory> {
    MarkedRelCategory::from_json(&read(path)?).map_err(|e| with_path(path, e))
}

fn object(c: &MarkedRelCategory, name: &str) -> Result<usize> {
    c.object_index(name).ok_or_else(|| Error::Format(format!("no object named {name:?}")))
}

fn render_hammock(c: &MarkedRelCategory, h: &Hammock) -> Value {
    json!({
        "rows": h.rows.iter().map(|r| r.render(c)).collect::<Vec<_>>(),
        "verticals": h.verticals.iter().map(|vs| vs.iter().map(|&v| c.arrow_name(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn hammocks(a: &HammocksArgs) -> Result<Output> {
    let c = load_category(&a.cat)?;
    let (x, y) = (object(&c, &a.from)?, object(&c, &a.to)?);
    let all = hammock_simplices(&c, x, y, a.n, a.k)?;
    let mut bad = Vec::new();
    for (i, h) in all.iter().enumerate() {
        for v in check_hammock(&c, x, y, h) {
            bad.push(format!("hammock {i}: {v}"));
        }
    }
    let mut text = vec![format!("{} hammocks of length {} and height {} from {} to {}", all.len(), a.n, a.k, a.from, a.to)];
    text.extend(all.iter().take(20).map(|h| h.rows.iter().map(|r| r.render(&c)).collect::<Vec<_>>().join("  |  ")));
    text.extend(bad.iter().cloned());
    let json = json!({
        "count": all.len(),
        "hammocks": all.iter().map(|h| render_hammock(&c, h)).collect::<Vec<_>>(),
        "violations": bad,
    });
    Ok(Output::report(Status::from_bool(bad.is_empty()), json, text))
}

pub fn compare_models(a: &CompareArgs) -> Result<Output> {
    let c = load_category(&a.cat)?;
    let validation = validate_marked_category(&c);
    if !validation.passed {
        let text = validation.violations.iter().map(|v| format!("{}: {}", v.rule, v.witness)).collect();
        return Ok(Output::report(Status::Refused, json!({ "validation": value(&validation)? }), text));
    }
    let pairs: Vec<(usize, usize)> = match (&a.from, &a.to) {
        (Some(f), Some(t)) => vec![(object(&c, f)?, object(&c, t)?)],
        _ => (0..c.object_count()).flat_map(|x| (0..c.object_count()).map(move |y| (x, y))).collect(),
    };
    let reports = if pairs.len() == c.object_count() * c.object_count() && a.from.is_none() {
        compare_all_pairs(&c, a.max_length)?
    } else {
        pairs.iter().map(|&(x, y)| compare_localization_models(&c, x, y, a.max_length)).collect::<Result<Vec<_>>>()?
    };
    // π₀ only needs heights ≤ 1; taller hammocks are enumerated and checked
    let mut checked = 0;
    let mut bad = Vec::new();
    for &(x, y) in &pairs {
        for n in 0..=a.max_length {
            for k in 2..=a.max_height {
                for h in hammock_simplices(&c, x, y, n, k)? {
                    checked += 1;
                    bad.extend(check_hammock(&c, x, y, &h));
                }
            }
        }
    }
    let status = reports.iter().map(|r| r.status).chain([Status::from_bool(bad.is_empty())]).collect();
    let mut text = Vec::new();
    for r in &reports {
        let mut line = format!(
            "{} -> {}: {} ({} span, {} hammock components)",
            r.from,
            r.to,
            r.status.name(),
            r.span_components,
            r.hammock_components
        );
        if let Some(s) = r.suggested_max_length {
            line.push_str(&format!("; try --max-length {s}"));
        }
        if let Some(w) = &r.witness {
            line.push_str(&format!("; {w}"));
        }
        text.push(line);
    }
    if let Some(r) = reports.first() {
        text.extend(r.assumptions.iter().map(|s| format!("note: {s}")));
    }
    text.push(format!("{checked} hammocks of height 2..={} checked", a.max_height));
    let json = json!({
        "max_length": a.max_length,
        "max_height": a.max_height,
        "comparisons": value(&reports)?,
        "taller_hammocks_checked": checked,
        "hammock_violations": bad,
    });
    Ok(Output::report(status, json, text))
}

pub fn selftest(a: &SelftestArgs, jobs: usize) -> Result<Output> {
    let fixtures = match &a.fixtures {
        Some(dir) => Fixtures::with_overrides(dir)?,
        None => Fixtures::bundled(),
    };
    let report = acceptance::run(a.filter.as_deref(), &fixtures, jobs)?;
    let text = report.criteria.iter().map(|c| c.line()).collect();
    Ok(Output::report(report.status, value(&report)?, text))
}
