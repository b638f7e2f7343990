//! Audits of the fibration-category axioms and of exact functors on a finite
//! sample of objects and morphisms.

use serde::Serialize;

use super::path::{is_weak_equivalence, mapping_path_factorization, path_object, PathObject};
use super::{is_fibration, Certificate};
use crate::error::{Error, Result};
use crate::fincat::{Morphism, Object, Site};
use crate::simp::{SimplicialMorphism, SimplicialObject};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CfoInstance {
    pub axiom: String,
    pub subject: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CfoInstance {
    fn new(axiom: &str, subject: String, passed: bool, witness: Option<String>) -> CfoInstance {
        CfoInstance { axiom: axiom.into(), subject, passed, witness: if passed { None } else { witness } }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CfoAudit {
    pub instances: Vec<CfoInstance>,
    pub passed: bool,
}

impl CfoAudit {
    fn new(instances: Vec<CfoInstance>) -> CfoAudit {
        let passed = instances.iter().all(|i| i.passed);
        CfoAudit { instances, passed }
    }

    pub fn count(&self, axiom: &str) -> usize {
        self.instances.iter().filter(|i| i.axiom == axiom).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CfoInstance> {
        self.instances.iter().filter(|i| !i.passed)
    }
}

fn witness(cert: &Certificate) -> Option<String> {
    cert.first_failure().map(|v| v.describe())
}

/// Caches path objects per distinct target.
#[derive(Default)]
struct PathCache {
    entries: Vec<(SimplicialObject, PathObject)>,
}

impl PathCache {
    fn get(&mut self, y: &SimplicialObject) -> Result<&PathObject> {
        if let Some(i) = self.entries.iter().position(|(k, _)| k == y) {
            return Ok(&self.entries[i].1);
        }
        let p = path_object(y)?;
        self.entries.push((y.clone(), p));
        Ok(&self.entries.last().expect("just pushed").1)
    }

    fn weak_equivalence(&mut self, f: &SimplicialMorphism) -> Result<Certificate> {
        let p = self.get(f.target())?;
        Ok(is_weak_equivalence(f, Some(p))?.hypercover)
    }
}

struct Classified {
    fibration: Certificate,
    weak: Certificate,
}

fn classify(morphisms: &[(String, SimplicialMorphism)], cache: &mut PathCache) -> Result<Vec<Classified>> {
    morphisms
        .iter()
        .map(|(_, f)| Ok(Classified { fibration: is_fibration(f)?, weak: cache.weak_equivalence(f)? }))
        .collect()
}

/// Checks, on the sample:
/// `F1` every object is fibrant; `F2`/`F3` pullbacks of fibrations and of
/// trivial fibrations along sample morphisms stay so; `F4` every morphism
/// factors as a weak equivalence followed by a fibration.
pub fn verify_cfo_axioms(objects: &[(String, SimplicialObject)], morphisms: &[(String, SimplicialMorphism)]) -> Result<CfoAudit> {
    let mut cache = PathCache::default();
    let mut out = Vec::new();
    for (name, x) in objects {
        let cert = is_fibration(&SimplicialMorphism::to_terminal(x))?;
        out.push(CfoInstance::new("F1", format!("{name} → 1"), cert.passed, witness(&cert)));
    }
    let classes = classify(morphisms, &mut cache)?;
    for (pi, (pname, p)) in morphisms.iter().enumerate() {
        if !classes[pi].fibration.passed {
            continue;
        }
        let trivial = classes[pi].weak.passed;
        for (gname, g) in morphisms {
            if g.target() != p.target() {
                continue;
            }
            let pb = SimplicialMorphism::pullback(p, g)?;
            let subject = format!("{pname} pulled back along {gname}");
            let fib = is_fibration(&pb.right)?;
            out.push(CfoInstance::new("F2", subject.clone(), fib.passed, witness(&fib)));
            if trivial {
                let weak = cache.weak_equivalence(&pb.right)?;
                let passed = fib.passed && weak.passed;
                let w = witness(&fib).or_else(|| witness(&weak).map(|s| format!("not a weak equivalence: {s}")));
                out.push(CfoInstance::new("F3", subject, passed, w));
            }
        }
    }
    for (name, f) in morphisms {
        let path = cache.get(f.target())?.clone();
        let fact = mapping_path_factorization(f, Some(&path))?;
        let q = is_fibration(&fact.q)?;
        let r = match fact.r.target().truncation() {
            0 => None,
            _ => Some(cache.weak_equivalence(&fact.r)?),
        };
        let r_ok = r.as_ref().map_or(true, |c| c.passed);
        let w = witness(&q)
            .map(|s| format!("q is not a fibration: {s}"))
            .or_else(|| r.as_ref().and_then(witness).map(|s| format!("r is not a weak equivalence: {s}")));
        out.push(CfoInstance::new("F4", name.clone(), q.passed && r_ok, w));
    }
    Ok(CfoAudit::new(out))
}

/// A functor given level-wise on the underlying site.
pub struct LevelFunctor<'a> {
    pub name: String,
    pub target: Site,
    pub object: Box<dyn Fn(&Object) -> Result<Object> + 'a>,
    /// `F(f)` given `F` of its endpoints.
    pub morphism: Box<dyn Fn(&Morphism, &Object, &Object) -> Result<Morphism> + 'a>,
}

impl LevelFunctor<'_> {
    pub fn apply_object(&self, x: &SimplicialObject) -> Result<SimplicialObject> {
        let n = x.truncation();
        let levels = x.levels().iter().map(|o| (self.object)(o)).collect::<Result<Vec<_>>>()?;
        let map = |f: &Morphism, a: usize, b: usize| (self.morphism)(f, &levels[a], &levels[b]);
        let d = (0..=n)
            .map(|m| (0..if m == 0 { 0 } else { m + 1 }).map(|i| map(x.face(m, i), m, m - 1)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let s = (0..=n)
            .map(|m| (0..if m == n { 0 } else { m + 1 }).map(|j| map(x.degeneracy(m, j), m, m + 1)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        SimplicialObject::new(&self.target, levels, d, s).map_err(|e| match e {
            Error::SimplicialIdentity(m) => Error::NotFunctorial(format!("{}: image violates a simplicial identity: {m}", self.name)),
            other => other,
        })
    }

    pub fn apply_morphism(&self, f: &SimplicialMorphism, fx: &SimplicialObject, fy: &SimplicialObject) -> Result<SimplicialMorphism> {
        let levels = f
            .levels()
            .iter()
            .enumerate()
            .map(|(m, g)| (self.morphism)(g, fx.level(m), fy.level(m)))
            .collect::<Result<Vec<_>>>()?;
        SimplicialMorphism::new(fx, fy, levels).map_err(|e| Error::NotFunctorial(format!("{}: {e}", self.name)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub functor: String,
    pub instances: Vec<CfoInstance>,
    pub passed: bool,
}

/// Whether the pullback comparison `F(X ×_Z Y) → F X ×_{F Z} F Y` is an
/// isomorphism at every level.
fn comparison_is_iso(func: &LevelFunctor<'_>, p: &SimplicialMorphism, g: &SimplicialMorphism) -> Result<bool> {
    let pb = SimplicialMorphism::pullback(p, g)?;
    let fx = func.apply_object(p.source())?;
    let fy = func.apply_object(g.source())?;
    let fz = func.apply_object(p.target())?;
    let fapex = func.apply_object(&pb.apex)?;
    let fp = func.apply_morphism(p, &fx, &fz)?;
    let fg = func.apply_morphism(g, &fy, &fz)?;
    let fl = func.apply_morphism(&pb.left, &fapex, &fx)?;
    let fr = func.apply_morphism(&pb.right, &fapex, &fy)?;
    let image = SimplicialMorphism::pullback(&fp, &fg)?;
    for m in 0..=p.source().truncation() {
        let c = image.levels[m].mediate(fl.level(m), fr.level(m))?;
        if !func.target.is_iso(&c) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that `F` preserves the terminal object, fibrations, trivial
/// fibrations, weak equivalences, binary products and pullbacks along
/// fibrations on the sample. A functor that is not functorial on the sample
/// is an error rather than a failed instance.
pub fn verify_exact_functor(
    func: &LevelFunctor<'_>,
    source: &Site,
    objects: &[(String, SimplicialObject)],
    morphisms: &[(String, SimplicialMorphism)],
) -> Result<ExactnessReport> {
    let mut images = Vec::new();
    for (name, f) in morphisms {
        let fx = func.apply_object(f.source())?;
        let fy = func.apply_object(f.target())?;
        let ff = func.apply_morphism(f, &fx, &fy)?;
        let id_image = func.apply_morphism(&SimplicialMorphism::identity(f.source()), &fx, &fx)?;
        if !id_image.levels().iter().all(|g| g.map().iter().enumerate().all(|(a, &b)| a == b)) {
            return Err(Error::NotFunctorial(format!("{}: F(id) is not the identity on the source of {name}", func.name)));
        }
        images.push(ff);
    }
    for (i, (fname, f)) in morphisms.iter().enumerate() {
        for (j, (gname, g)) in morphisms.iter().enumerate() {
            if f.target() != g.source() {
                continue;
            }
            let gf = f.then(g)?;
            let fx = images[i].source().clone();
            let fz = images[j].target().clone();
            let image = func.apply_morphism(&gf, &fx, &fz)?;
            if image.levels() != images[i].then(&images[j])?.levels() {
                return Err(Error::NotFunctorial(format!("{}: F({gname} ∘ {fname}) ≠ F({gname}) ∘ F({fname})", func.name)));
            }
        }
    }
    let mut out = Vec::new();
    let n = objects.first().map_or(1, |(_, x)| x.truncation());
    let ft = func.apply_object(&SimplicialObject::terminal(source, n))?;
    let terminal_ok = ft.levels().iter().all(|o| func.target.is_iso(&func.target.to_terminal(o)));
    out.push(CfoInstance::new("terminal", "F(1)".into(), terminal_ok, Some("F(1) is not terminal".into())));

    let mut src_cache = PathCache::default();
    let mut dst_cache = PathCache::default();
    let classes = classify(morphisms, &mut src_cache)?;
    for (i, (name, _)) in morphisms.iter().enumerate() {
        let fib = classes[i].fibration.passed;
        let weak = classes[i].weak.passed;
        if !fib && !weak {
            continue;
        }
        let image_fib = is_fibration(&images[i])?;
        let image_weak = dst_cache.weak_equivalence(&images[i])?;
        if fib {
            out.push(CfoInstance::new("fibration", name.clone(), image_fib.passed, witness(&image_fib)));
        }
        if weak {
            out.push(CfoInstance::new("weak-equivalence", name.clone(), image_weak.passed, witness(&image_weak)));
        }
        if fib && weak {
            let passed = image_fib.passed && image_weak.passed;
            out.push(CfoInstance::new("trivial-fibration", name.clone(), passed, witness(&image_fib).or_else(|| witness(&image_weak))));
        }
    }
    for (pi, (pname, p)) in morphisms.iter().enumerate() {
        if !classes[pi].fibration.passed {
            continue;
        }
        for (gname, g) in morphisms {
            if g.target() != p.target() {
                continue;
            }
            let ok = comparison_is_iso(func, p, g)?;
            out.push(CfoInstance::new(
                "pullback",
                format!("{pname} ×_Z {gname}"),
                ok,
                Some("the comparison map is not an isomorphism".into()),
            ));
        }
    }
    for (xi, (xname, x)) in objects.iter().enumerate() {
        for (yname, y) in &objects[xi..] {
            let ok = comparison_is_iso(func, &SimplicialMorphism::to_terminal(x), &SimplicialMorphism::to_terminal(y))?;
            out.push(CfoInstance::new("product", format!("{xname} × {yname}"), ok, Some("the comparison map is not an isomorphism".into())));
        }
    }
    let passed = out.iter().all(|i| i.passed);
    Ok(ExactnessReport { functor: func.name.clone(), instances: out, passed })
}
