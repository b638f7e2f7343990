//! The acceptance suite: ten end-to-end criteria, each an exhaustive check
//! at desk scale with its own oracle. Shared by the `acceptance` test target
//! and `ngrpd selftest`.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{audit_site_axioms, CoverClass, FinSetObj, Object, Probe, Site};
use crate::formats;
use crate::galois::{
    covers_of_degree, cover_from_action, fiber_functor, fiber_site, pull_out_action, push_in_action, roundtrip_iso,
    verify_correspondence_exactness, EquivariantObject, PermAction,
};
use crate::grpd::{
    is_fibration, is_hypercover, is_n_groupoid, is_weak_equivalence, mapping_path_factorization, path_object,
    small_simplicial_sets, verify_cfo_axioms, Dim,
};
use crate::gset::{FiniteGroup, GroupSpec};
use crate::localization::{
    compare_all_pairs, hypercover_class_witnesses, localize_groupoid_category, validate_marked_category, LocalizeOptions,
    MarkedRelCategory,
};
use crate::report::{to_sorted_json, Status};
use crate::simp::{matching_map, FiniteSimplicialSet, SimplicialMorphism, SimplicialObject};

/// Input files the suite reads, by name.
#[derive(Clone, Debug)]
pub struct Fixtures {
    files: BTreeMap<&'static str, String>,
}

pub const FIXTURE_NAMES: [&str; 3] = ["corrupted_site.json", "desk_cfo.json", "figure_eight.json"];

impl Fixtures {
    pub fn bundled() -> Fixtures {
        let mut files = BTreeMap::new();
        files.insert("corrupted_site.json", include_str!("../fixtures/corrupted_site.json").to_string());
        files.insert("desk_cfo.json", include_str!("../fixtures/desk_cfo.json").to_string());
        files.insert("figure_eight.json", include_str!("../fixtures/figure_eight.json").to_string());
        Fixtures { files }
    }

    /// The bundled set with any same-named file in `dir` taking precedence.
    pub fn with_overrides(dir: &std::path::Path) -> Result<Fixtures> {
        let mut f = Fixtures::bundled();
        for name in FIXTURE_NAMES {
            let p = dir.join(name);
            if p.exists() {
                let text = std::fs::read_to_string(&p).map_err(|e| Error::Format(format!("{}: {e}", p.display())))?;
                f.files.insert(name, text);
            }
        }
        Ok(f)
    }

    pub fn replace(&mut self, name: &'static str, text: String) {
        self.files.insert(name, text);
    }

    fn load<T>(&self, name: &str, decode: impl FnOnce(&str) -> Result<T>) -> Result<T> {
        let text = self.files.get(name).ok_or_else(|| Error::Format(format!("fixture {name} is missing")))?;
        decode(text).map_err(|e| Error::Format(format!("fixture {name}: {e}")))
    }

    fn figure_eight(&self) -> Result<Site> {
        self.load("figure_eight.json", |t| {
            Ok(Site::graph_covers(formats::based_graph_from_json(&formats::parse(t)?)?))
        })
    }

    fn desk_cfo(&self) -> Result<MarkedRelCategory> {
        self.load("desk_cfo.json", |t| {
            let c = MarkedRelCategory::from_json(t)?;
            let v = validate_marked_category(&c);
            match v.violations.first() {
                None => Ok(c),
                Some(w) => Err(Error::InvalidObject(format!("{}: {}", w.rule, w.witness))),
            }
        })
    }

    fn corrupted_site(&self) -> Result<Site> {
        self.load("corrupted_site.json", |t| formats::site_from_json(&formats::parse(t)?))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: String,
    pub modules: Vec<String>,
    pub status: Status,
    /// What was enumerated, with bounds.
    pub scope: String,
    pub instances: usize,
    /// The first few failing instances.
    pub failures: Vec<String>,
}

impl CriterionReport {
    /// One line: `criterion 3 [pass] fibration-hypercover: …`.
    pub fn line(&self) -> String {
        let mut s = format!(
            "criterion {} [{}] {}: {} instances; {}",
            self.id,
            self.status.name(),
            self.name,
            self.instances,
            self.scope
        );
        if let Some(f) = self.failures.first() {
            s.push_str(&format!("; first failure: {f}"));
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AcceptanceReport {
    pub criteria: Vec<CriterionReport>,
    pub status: Status,
}

impl AcceptanceReport {
    pub fn to_json(&self) -> Result<String> {
        to_sorted_json(self)
    }
}

/// Tallies instances and keeps the first few failures.
#[derive(Default)]
struct Outcome {
    instances: usize,
    failed: bool,
    failures: Vec<String>,
    scope: String,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failed = true;
            if self.failures.len() < 5 {
                self.failures.push(what());
            }
        }
    }
}

struct Criterion {
    id: usize,
    name: &'static str,
    modules: &'static [&'static str],
    run: fn(&Fixtures, &mut Outcome) -> Result<()>,
}

const CRITERIA: [Criterion; 9] = [
    Criterion { id: 1, name: "delta-combinatorics", modules: &["simp"], run: delta_combinatorics },
    Criterion { id: 2, name: "nerves-are-groupoids", modules: &["grpd", "simp", "gset"], run: nerves_are_groupoids },
    Criterion { id: 3, name: "fibration-hypercover", modules: &["grpd"], run: fibration_hypercover },
    Criterion { id: 4, name: "cfo-axioms", modules: &["grpd"], run: cfo_axioms },
    Criterion { id: 5, name: "site-axioms", modules: &["fincat", "gset", "galois"], run: site_axioms },
    Criterion { id: 6, name: "galois-round-trip", modules: &["galois"], run: galois_round_trip },
    Criterion { id: 7, name: "lifted-fiber-functor", modules: &["galois", "grpd"], run: lifted_fiber_functor },
    Criterion { id: 8, name: "pull-out-action", modules: &["galois", "gset"], run: pull_out },
    Criterion { id: 9, name: "localization-comparison", modules: &["localization"], run: localization },
];

const DETERMINISM: (usize, &str, &[&str]) = (10, "determinism", &["cli"]);

fn selected(filter: Option<&str>, id: usize, name: &str, modules: &[&str]) -> bool {
    match filter {
        None => true,
        Some(f) => f == id.to_string() || name.contains(f) || modules.contains(&f),
    }
}

fn run_one(c: &Criterion, fixtures: &Fixtures) -> CriterionReport {
    let mut out = Outcome::default();
    let result = (c.run)(fixtures, &mut out);
    let mut failures = std::mem::take(&mut out.failures);
    let status = match result {
        Ok(()) => Status::from_bool(!out.failed),
        Err(e) => {
            failures.insert(0, e.to_string());
            Status::Fail
        }
    };
    CriterionReport {
        id: c.id,
        name: c.name.into(),
        modules: c.modules.iter().map(|s| s.to_string()).collect(),
        status,
        scope: out.scope.clone(),
        instances: out.instances,
        failures,
    }
}

fn run_criteria(ids: &[usize], fixtures: &Fixtures, jobs: usize) -> Vec<CriterionReport> {
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<CriterionReport>> = Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..jobs.max(1).min(ids.len().max(1)) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                let Some(&id) = ids.get(k) else { break };
                let c = CRITERIA.iter().find(|c| c.id == id).expect("known criterion");
                let r = run_one(c, fixtures);
                results.lock().expect("no panics while holding the lock").push(r);
            });
        }
    });
    let mut v = results.into_inner().expect("threads joined");
    v.sort_by_key(|r| r.id);
    v
}

/// Runs the criteria whose id, name or module matches `filter` (all when
/// `None`), on up to `jobs` threads. Criterion 10 re-runs the others and
/// compares the JSON byte for byte.
pub fn run(filter: Option<&str>, fixtures: &Fixtures, jobs: usize) -> Result<AcceptanceReport> {
    let ids: Vec<usize> = CRITERIA.iter().filter(|c| selected(filter, c.id, c.name, c.modules)).map(|c| c.id).collect();
    let mut criteria = run_criteria(&ids, fixtures, jobs);
    let (id, name, modules) = DETERMINISM;
    if selected(filter, id, name, modules) {
        criteria.push(determinism(&criteria, fixtures, jobs)?);
    }
    let status = criteria.iter().map(|c| c.status).collect();
    Ok(AcceptanceReport { criteria, status })
}

/// A single criterion by id, 1 to 10.
pub fn run_criterion(id: usize, fixtures: &Fixtures) -> Result<CriterionReport> {
    if id == DETERMINISM.0 {
        return determinism(&[], fixtures, 1);
    }
    let c = CRITERIA.iter().find(|c| c.id == id).ok_or_else(|| Error::Precondition(format!("no criterion {id}")))?;
    Ok(run_one(c, fixtures))
}

/// Re-runs the given reports' criteria (a fast subset when none are given)
/// and compares their JSON.
fn determinism(first: &[CriterionReport], fixtures: &Fixtures, jobs: usize) -> Result<CriterionReport> {
    let (first, ids): (Vec<CriterionReport>, Vec<usize>) = if first.is_empty() {
        let ids = vec![1, 2, 5, 6, 8];
        (run_criteria(&ids, fixtures, jobs), ids)
    } else {
        (first.to_vec(), first.iter().map(|c| c.id).collect())
    };
    let again = run_criteria(&ids, fixtures, jobs);
    let (a, b) = (to_sorted_json(&first)?, to_sorted_json(&again)?);
    let (id, name, modules) = DETERMINISM;
    let same = a == b;
    Ok(CriterionReport {
        id,
        name: name.into(),
        modules: modules.iter().map(|s| s.to_string()).collect(),
        status: Status::from_bool(same),
        scope: format!("criteria {ids:?} run twice, {} bytes of report JSON compared", a.len()),
        instances: ids.len(),
        failures: if same { Vec::new() } else { vec!["report JSON differs between runs".into()] },
    })
}

// ---------------------------------------------------------------------------
// 1. Δ combinatorics against brute force

/// Every `(m+1)`-tuple over `[k]`, nondecreasing ones only, by odometer.
fn brute_force_maps(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut t = vec![0; m + 1];
    loop {
        if t.windows(2).all(|w| w[0] <= w[1]) {
            out.push(t.clone());
        }
        let mut i = m + 1;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if t[i] < k {
                t[i] += 1;
                for x in t.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

fn delta_combinatorics(_: &Fixtures, out: &mut Outcome) -> Result<()> {
    let top = 4;
    out.scope = format!("Δ^k, ∂Δ^k, Λ^k_i for k ≤ {top}, levels m ≤ {top}");
    for k in 0..=top {
        let mut shapes: Vec<(String, FiniteSimplicialSet, Box<dyn Fn(&[usize]) -> bool>)> = vec![
            (format!("Δ^{k}"), FiniteSimplicialSet::standard_simplex(k, top), Box::new(|_: &[usize]| true)),
            (
                format!("∂Δ^{k}"),
                FiniteSimplicialSet::boundary(k, top)?,
                Box::new(move |v: &[usize]| (0..=k).any(|x| !v.contains(&x))),
            ),
        ];
        for i in (0..=k).filter(|_| k >= 1) {
            shapes.push((
                format!("Λ^{k}_{i}"),
                FiniteSimplicialSet::horn(k, i, top)?,
                Box::new(move |v: &[usize]| (0..=k).any(|x| x != i && !v.contains(&x))),
            ));
        }
        for (name, shape, keep) in &shapes {
            for m in 0..=top {
                let mut expected: Vec<Vec<usize>> = brute_force_maps(m, k).into_iter().filter(|v| keep(v)).collect();
                expected.sort();
                let mut got: Vec<Vec<usize>> =
                    (0..shape.level_len(m)).map(|c| shape.coords(m, c)[0].values().to_vec()).collect();
                got.sort();
                out.check(got == expected, || {
                    format!("{name} level {m}: {} cells, brute force {}", got.len(), expected.len())
                });
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 2. Nerves of small groups

fn nerves_are_groupoids(_: &Fixtures, out: &mut Outcome) -> Result<()> {
    let groups = FiniteGroup::all_of_order_at_most_six();
    out.scope = format!("{} groups of order ≤ 6, nerves truncated at 3", groups.len());
    let site = Site::finsets();
    for g in &groups {
        let x = SimplicialObject::nerve(&site, g, 3)?;
        let one = is_n_groupoid(&x, Dim::Finite(1))?;
        out.check(one.passed, || format!("nerve of a group of order {} is not a 1-groupoid", g.order()));
        let zero = is_n_groupoid(&x, Dim::Finite(0))?;
        out.check(zero.passed == (g.order() == 1), || {
            format!("order {}: 0-groupoid verdict {}", g.order(), zero.passed)
        });
        for k in 2..=3 {
            for i in 0..=k {
                let (_, map) = matching_map(&x, k, i)?;
                // Λ^k_i ⊇ the spine for k ≥ 2, so horns in a nerve are
                // k-tuples of group elements
                let expect = g.order().pow(k as u32);
                let mut hit = vec![0usize; map.target().len()];
                for c in 0..map.source().len() {
                    hit[map.apply(c)] += 1;
                }
                let ok = map.source().len() == expect && map.target().len() == expect && hit.iter().all(|&h| h == 1);
                out.check(ok, || format!("order {}: matching map at (k={k}, i={i}) is not a bijection", g.order()));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 3. A fibration is a weak equivalence iff it is a hypercover

fn fibration_hypercover(_: &Fixtures, out: &mut Outcome) -> Result<()> {
    let objects = small_simplicial_sets(2, 2)?;
    let cap = crate::max_cells();
    let mut fibrations = 0;
    for a in &objects {
        for b in &objects {
            let path = path_object(b)?;
            for f in a.hom_set(b, cap)? {
                if !is_fibration(&f)?.passed {
                    continue;
                }
                fibrations += 1;
                let weak = is_weak_equivalence(&f, Some(&path))?;
                let hyper = is_hypercover(&f.truncate(weak.hypercover.truncation), Dim::Infinite)?;
                out.check(weak.passed == hyper.passed, || {
                    format!("{:?} → {:?}: weak equivalence {}, hypercover {}", a.level_sizes(), b.level_sizes(), weak.passed, hyper.passed)
                });
            }
        }
    }
    out.scope = format!(
        "{} simplicial sets truncated at 2 with levels ≤ 2, {fibrations} fibrations, compared on levels 0..1",
        objects.len()
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// 4. CFO axioms on a sample

pub fn cfo_sample() -> Result<(Vec<(String, SimplicialObject)>, Vec<(String, SimplicialMorphism)>)> {
    let site = Site::finsets();
    let n = 3;
    let three = site.plain_object(FinSetObj::numbered(3))?;
    let two = site.plain_object(FinSetObj::numbered(2))?;
    let fold = site.morphism(&three, &two, vec![0, 0, 1])?;
    let objects = vec![
        ("point".to_string(), SimplicialObject::terminal(&site, n)),
        ("BZ2".to_string(), SimplicialObject::nerve(&site, &FiniteGroup::cyclic(2), n)?),
        ("BZ3".to_string(), SimplicialObject::nerve(&site, &FiniteGroup::cyclic(3), n)?),
        ("C(3->2)".to_string(), SimplicialObject::cech(&site, &fold, n)?),
    ];
    let mut morphisms = Vec::new();
    for (an, a) in &objects {
        for (bn, b) in &objects {
            for (k, f) in a.hom_set(b, crate::max_cells())?.into_iter().enumerate() {
                morphisms.push((format!("{an}->{bn}#{k}"), f));
            }
        }
    }
    Ok((objects, morphisms))
}

fn cfo_axioms(_: &Fixtures, out: &mut Outcome) -> Result<()> {
    let (objects, morphisms) = cfo_sample()?;
    out.scope = format!("{{point, BZ2, BZ3, Čech(3→2)}} at truncation 3, {} morphisms", morphisms.len());
    let audit = verify_cfo_axioms(&objects, &morphisms)?;
    for i in &audit.instances {
        out.check(i.passed, || format!("{} on {}: {}", i.axiom, i.subject, i.witness.clone().unwrap_or_default()));
    }
    let paths: Vec<_> = objects.iter().map(|(_, x)| path_object(x)).collect::<Result<_>>()?;
    for (name, f) in &morphisms {
        let t = objects.iter().position(|(_, x)| x == f.target()).expect("sample target");
        let fact = mapping_path_factorization(f, Some(&paths[t]))?;
        let composite = fact.r.then(&fact.q)?;
        out.check(composite == fact.f, || format!("{name}: q ∘ r ≠ f"));
        out.check(fact.q_is_fibration()?.passed, || format!("{name}: q is not a fibration"));
        out.check(is_weak_equivalence(&fact.r, None)?.passed, || format!("{name}: r is not a weak equivalence"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 5. Site axioms

fn site_axioms(fixtures: &Fixtures, out: &mut Outcome) -> Result<()> {
    let cap = crate::max_cells();
    let fig8 = fixtures.figure_eight()?;
    let sites: Vec<(String, Site, usize)> = vec![
        ("FinSets".into(), Site::finsets(), 3),
        ("Z/2-FinSets".into(), Site::gsets(GroupSpec::Finite(FiniteGroup::cyclic(2))), 4),
        ("S3-FinSets".into(), Site::gsets(GroupSpec::Finite(FiniteGroup::symmetric(3))), 4),
        ("GraphCov(figure-eight)".into(), fig8, 3),
    ];
    let mut scope = Vec::new();
    for (name, site, bound) in &sites {
        // ∅ → e is never a surjection, so C1 is audited on nonempty objects
        // and the empty object is checked to be its only counterexample
        let (nonempty, empty): (Vec<Object>, Vec<Object>) =
            site.small_objects(*bound)?.into_iter().partition(|o| !o.is_empty());
        let probe = Probe::exhaustive(site, nonempty, cap)?;
        scope.push(format!("{name} ≤ {bound} ({} nonempty objects)", probe.objects.len()));
        let audit = audit_site_axioms(site, &probe)?;
        for i in &audit.instances {
            out.check(i.passed, || format!("{name} {} {}: {}", i.axiom, i.subject, i.witness.clone().unwrap_or_default()));
        }
        let with_empty = Probe::exhaustive(site, empty.into_iter().chain([site.terminal()]).collect(), cap)?;
        let audit = audit_site_axioms(site, &with_empty)?;
        let only_empty_c1 = audit.failures().count() == 1
            && audit.failures().all(|i| i.axiom == "C1" && i.subject.starts_with("{}"));
        out.check(only_empty_c1, || format!("{name}: the empty object is not exactly one C1 failure"));
    }
    scope.push("∅ → e is the only C1 failure".into());
    let bad = fixtures.corrupted_site()?;
    let probe = Probe::exhaustive(&bad, bad.small_objects(3)?, cap)?;
    let audit = audit_site_axioms(&bad, &probe)?;
    let c4 = audit.failures().find(|i| i.axiom == "C4");
    out.check(c4.is_some_and(|i| i.witness.is_some()), || {
        format!("the {} cover class is not refuted by a C4 witness", bad.cover_class().name())
    });
    scope.push(format!("{}-cover fixture refuted by C4", bad.cover_class().name()));
    out.scope = scope.join("; ");
    Ok(())
}

// ---------------------------------------------------------------------------
// 6. Galois round trip

fn galois_round_trip(fixtures: &Fixtures, out: &mut Outcome) -> Result<()> {
    let site = fixtures.figure_eight()?;
    let rank = fiber_site(&site)?.op_count();
    let mut actions = 0;
    for n in 0..=4 {
        let mut seen = std::collections::BTreeSet::new();
        for a in PermAction::enumerate(rank, n) {
            if !seen.insert(a.canonical()) {
                continue;
            }
            actions += 1;
            let back = fiber_functor(&site, &cover_from_action(&site, &a)?)?;
            out.check(back == a, || format!("action {:?} comes back as {:?}", a.perms, back.perms));
        }
    }
    let mut covers = 0;
    for d in 0..=3 {
        for c in covers_of_degree(&site, d)? {
            covers += 1;
            out.check(roundtrip_iso(&site, &c)?.is_some(), || format!("degree-{d} cover {c:?} has no round-trip isomorphism"));
        }
    }
    out.scope = format!("{actions} F2-actions on ≤ 4 points up to relabelling; {covers} figure-eight covers of degree ≤ 3");
    Ok(())
}

// ---------------------------------------------------------------------------
// 7. Exactness of the lifted fiber functor

fn lifted_fiber_functor(fixtures: &Fixtures, out: &mut Outcome) -> Result<()> {
    let site = fixtures.figure_eight()?;
    let n = 2;
    let covers: Vec<Object> = (0..=2).map(|d| covers_of_degree(&site, d)).collect::<Result<Vec<_>>>()?.concat();
    let mut objects = Vec::new();
    for (i, c) in covers.iter().enumerate() {
        objects.push((format!("const(c{i})"), SimplicialObject::constant(&site, c, n)?));
        let to_point = site.to_terminal(c);
        if site.is_cover(&to_point) && !site.is_iso(&to_point) {
            objects.push((format!("cech(c{i})"), SimplicialObject::cech(&site, &to_point, n)?));
        }
    }
    for (name, x) in &objects {
        out.check(is_n_groupoid(x, Dim::Finite(1))?.passed, || format!("{name} is not a 1-groupoid"));
    }
    let mut morphisms = Vec::new();
    for (an, a) in &objects {
        for (bn, b) in &objects {
            for (k, f) in a.hom_set(b, crate::max_cells())?.into_iter().enumerate() {
                morphisms.push((format!("{an}->{bn}#{k}"), f));
            }
        }
    }
    let target_site = fiber_site(&site)?;
    let rank = target_site.op_count();
    let mut targets = Vec::new();
    for d in 0..=2 {
        let mut seen = std::collections::BTreeSet::new();
        for a in PermAction::enumerate(rank, d) {
            if seen.insert(a.canonical()) {
                let obj = target_site.object(a.fiber.clone(), vec![0; d], a.perms.clone())?;
                targets.push((format!("action{:?}", a.perms), SimplicialObject::constant(&target_site, &obj, n)?));
            }
        }
    }
    let r = verify_correspondence_exactness(&site, &objects, &morphisms, &targets)?;
    for i in r.exactness.instances.iter().chain(&r.cover_reflection).chain(&r.essential_surjectivity) {
        out.check(i.passed, || format!("{} on {}: {}", i.axiom, i.subject, i.witness.clone().unwrap_or_default()));
    }
    out.scope = format!(
        "{} objects over degree-≤ 2 covers, {} morphisms, {} F2-actions on ≤ 2 points as targets",
        objects.len(),
        morphisms.len(),
        targets.len()
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// 8. Pulling out and pushing in a group action

/// Every permutation of `0..n`, lexicographically.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Every action of `Z/p` on `x` commuting with its structure maps, as
/// `actions[m][g] = σ_m^g` for a level-wise `σ` with `σ^p = 1`.
fn cyclic_actions(x: &SimplicialObject, p: usize) -> Vec<Vec<Vec<Vec<usize>>>> {
    let n = x.truncation();
    let order_divides = |s: &Vec<usize>| (0..s.len()).all(|v| (0..p).fold(v, |y, _| s[y]) == v);
    let candidates: Vec<Vec<Vec<usize>>> =
        (0..=n).map(|m| permutations(x.level(m).len()).into_iter().filter(order_divides).collect()).collect();
    let commutes = |m: usize, s: &[usize], below: &[usize]| {
        (0..=m).all(|i| {
            let d = x.face(m, i);
            (0..s.len()).all(|c| d.apply(s[c]) == below[d.apply(c)])
        }) && (0..m).all(|j| {
            let e = x.degeneracy(m - 1, j);
            (0..below.len()).all(|c| e.apply(below[c]) == s[e.apply(c)])
        })
    };
    let mut sigmas: Vec<Vec<Vec<usize>>> = candidates[0].iter().map(|s| vec![s.clone()]).collect();
    for m in 1..=n {
        sigmas = sigmas
            .into_iter()
            .flat_map(|prefix| {
                candidates[m]
                    .iter()
                    .filter(|s| commutes(m, s, &prefix[m - 1]))
                    .map(|s| {
                        let mut v = prefix.clone();
                        v.push(s.clone());
                        v
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    sigmas
        .into_iter()
        .map(|sigma| {
            sigma
                .iter()
                .map(|s| (0..p).map(|g| (0..s.len()).map(|v| (0..g).fold(v, |y, _| s[y])).collect()).collect())
                .collect()
        })
        .collect()
}

fn pull_out(_: &Fixtures, out: &mut Outcome) -> Result<()> {
    let mut base = Vec::new();
    for x in small_simplicial_sets(2, 4)? {
        if is_n_groupoid(&x, Dim::Finite(1))?.passed {
            base.push(x);
        }
    }
    let mut scope = Vec::new();
    for p in [2, 3] {
        let group = FiniteGroup::cyclic(p);
        let spec = GroupSpec::Finite(group.clone());
        let mut count = 0;
        for x in &base {
            for actions in cyclic_actions(x, p) {
                let e = EquivariantObject { object: x.clone(), group: spec.clone(), actions };
                let pushed = push_in_action(&e)?;
                let back = pull_out_action(&pushed)?;
                out.check(back == e, || format!("Z/{p} on {:?}: pull-out of push-in differs", x.level_sizes()));
                out.check(push_in_action(&back)? == pushed, || {
                    format!("Z/{p} on {:?}: push-in of pull-out differs", x.level_sizes())
                });
                count += 1;
            }
        }
        scope.push(format!("{count} Z/{p}-equivariant objects"));
    }
    out.scope = format!(
        "{} 1-groupoids truncated at 2 with levels ≤ 4, with every commuting cyclic action: {}",
        base.len(),
        scope.join(", ")
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// 9. Localization models

fn localization(fixtures: &Fixtures, out: &mut Outcome) -> Result<()> {
    let max_length = 4;
    let desk = fixtures.desk_cfo()?;
    let finsets = localize_groupoid_category(&Site::finsets(), &LocalizeOptions::new(0, 2))?;
    for (name, c) in [("desk CFO", &desk), ("0-groupoids in FinSets ≤ 2", &finsets.category)] {
        let v = validate_marked_category(c);
        for w in &v.violations {
            out.check(false, || format!("{name}: {} {}", w.rule, w.witness));
        }
        out.check(v.passed, || format!("{name} is not a valid marked category"));
        for r in compare_all_pairs(c, max_length)? {
            out.check(r.status == Status::Pass, || {
                format!(
                    "{name} ({}, {}): {} with {} span and {} hammock components: {}",
                    r.from,
                    r.to,
                    r.status.name(),
                    r.span_components,
                    r.hammock_components,
                    r.witness.clone().unwrap_or_default()
                )
            });
        }
    }
    let site = fixtures.figure_eight()?;
    let mut opts = LocalizeOptions::new(1, 0);
    let rank = fiber_site(&site)?.op_count();
    for sheets in 1..=3 {
        let id: Vec<usize> = (0..sheets).collect();
        let a = PermAction::new(FinSetObj::numbered(sheets), vec![id; rank])?;
        opts.seeds.push(cover_from_action(&site, &a)?);
    }
    let lc = localize_groupoid_category(&site, &opts)?;
    let cmp = hypercover_class_witnesses(&lc, CoverClass::Surjective, CoverClass::ConstantFiber)?;
    out.check(!cmp.witnesses.is_empty(), || "no morphism separates the two hypercover classes".into());
    out.check(cmp.reversed.is_empty(), || format!("{} is a constant-fiber hypercover only", cmp.reversed[0]));
    out.scope = format!(
        "desk CFO ({} objects) and {} 0-groupoids in FinSets at max length {max_length}, stabilized; \
         GraphCov(figure-eight) 1-groupoids: {} surjective vs {} constant-fiber hypercovers. \
         Compared on π₀ only, assuming a homotopy calculus of right fractions",
        desk.object_count(),
        finsets.category.object_count(),
        cmp.larger_count,
        cmp.smaller_count
    );
    Ok(())
}
