//! Instance-wise auditing of the axioms of a category with covers.
//!
//! The axioms quantify over all objects and morphisms; an audit only checks
//! the instances expressible inside a finite probe, and says so in its scope.

use std::collections::HashMap;

use serde::Serialize;

use super::site::{Morphism, Object, Site};
use crate::error::Result;

/// A finite family of objects and morphisms. Morphisms should be closed under
/// the composites the audit mentions; [`Probe::exhaustive`] guarantees that.
#[derive(Clone, Debug, Default)]
pub struct Probe {
    pub objects: Vec<Object>,
    pub morphisms: Vec<Morphism>,
}

impl Probe {
    /// All morphisms between the given objects.
    pub fn exhaustive(site: &Site, objects: Vec<Object>, cap: usize) -> Result<Probe> {
        let mut morphisms = Vec::new();
        for a in &objects {
            for b in &objects {
                morphisms.extend(site.hom_set(a, b, cap)?);
            }
        }
        Ok(Probe { objects, morphisms })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomInstance {
    pub axiom: &'static str,
    pub subject: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SiteAudit {
    pub site: String,
    pub scope: String,
    pub instances: Vec<AxiomInstance>,
}

impl SiteAudit {
    pub fn passed(&self) -> bool {
        self.instances.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomInstance> {
        self.instances.iter().filter(|i| !i.passed)
    }

    pub fn count(&self, axiom: &str) -> usize {
        self.instances.iter().filter(|i| i.axiom == axiom).count()
    }
}

fn describe(m: &Morphism) -> String {
    format!("{:?}: {:?} -> {:?}", m, m.source(), m.target())
}

pub fn audit_site_axioms(site: &Site, probe: &Probe) -> Result<SiteAudit> {
    let mut instances = Vec::new();
    let ms = &probe.morphisms;

    // morphisms bucketed by (source, target) position in the probe
    let k = probe.objects.len();
    let position = |o: &Object| probe.objects.iter().position(|p| p.ptr_eq(o) || p == o);
    let mut hom: Vec<Vec<Vec<&Morphism>>> = vec![vec![Vec::new(); k]; k];
    for m in ms {
        if let (Some(a), Some(b)) = (position(m.source()), position(m.target())) {
            hom[a][b].push(m);
        }
    }

    // for each g: B → C and apex W, the maps v: W → B keyed by g ∘ v
    let mut by_composite: Vec<Vec<HashMap<Vec<usize>, Vec<&Morphism>>>> = Vec::with_capacity(ms.len());
    for g in ms {
        let b = position(g.source());
        by_composite.push(
            (0..k)
                .map(|w| {
                    let mut buckets: HashMap<Vec<usize>, Vec<&Morphism>> = HashMap::new();
                    for v in b.map_or(&[][..], |b| &hom[w][b][..]) {
                        buckets.entry(v.map().iter().map(|&x| g.apply(x)).collect()).or_default().push(v);
                    }
                    buckets
                })
                .collect(),
        );
    }

    // C0: pullbacks of cospans exist and are universal for the probe's cones
    for f in ms {
        for (gi, g) in ms.iter().enumerate().filter(|(_, g)| g.target() == f.target()) {
            let pb = site.pullback(f, g)?;
            let commutes = site.compose(&pb.left, f)? == site.compose(&pb.right, g)?;
            let mut witness = (!commutes).then(|| "square does not commute".to_string());
            if let (None, Some(a)) = (&witness, position(f.source())) {
                let (mut key, mut mediator) = (Vec::new(), Vec::new());
                let width = g.source().len();
                let mut dense = vec![usize::MAX; f.source().len() * width];
                for (i, &(x, y)) in pb.pairs().iter().enumerate() {
                    dense[x * width + y] = i;
                }
                'cones: for w in 0..k {
                    for u in &hom[w][a] {
                        key.clear();
                        key.extend(u.map().iter().map(|&x| f.apply(x)));
                        for v in by_composite[gi][w].get(&key).map_or(&[][..], |vs| &vs[..]) {
                            // the unique candidate factorization, checked to be a morphism
                            mediator.clear();
                            mediator.extend(
                                (0..u.map().len())
                                    .map(|x| dense[u.apply(x) * width + v.apply(x)])
                                    .take_while(|&m| m != usize::MAX),
                            );
                            let ok = mediator.len() == u.map().len()
                                && site.is_structure_map(u.source(), &pb.apex, &mediator)
                                && mediator.iter().enumerate().all(|(x, &m)| {
                                    pb.left.apply(m) == u.apply(x) && pb.right.apply(m) == v.apply(x)
                                });
                            if !ok {
                                witness = Some(format!("cone ({}, {}) has no factorization", describe(u), describe(v)));
                                break 'cones;
                            }
                        }
                    }
                }
            }
            instances.push(AxiomInstance {
                axiom: "C0",
                subject: format!("pullback of {} and {}", describe(f), describe(g)),
                passed: witness.is_none(),
                witness,
            });
        }
    }

    // C1: maps to the terminal object are covers
    for x in &probe.objects {
        let t = site.to_terminal(x);
        let passed = site.is_cover(&t);
        instances.push(AxiomInstance {
            axiom: "C1",
            subject: format!("{x:?} -> e"),
            passed,
            witness: (!passed).then(|| format!("{x:?} -> e is not a cover")),
        });
    }

    // C2: pullbacks of covers along arbitrary maps are covers
    for f in ms.iter().filter(|f| site.is_cover(f)) {
        for g in ms.iter().filter(|g| g.target() == f.target()) {
            let pb = site.pullback(f, g)?;
            let passed = site.is_cover(&pb.right);
            instances.push(AxiomInstance {
                axiom: "C2",
                subject: format!("pullback of cover {} along {}", describe(f), describe(g)),
                passed,
                witness: (!passed).then(|| format!("projection {:?} is not a cover", pb.right)),
            });
        }
    }

    // C3: f and g∘f covers imply g cover
    for f in ms.iter().filter(|f| site.is_cover(f)) {
        for g in ms.iter().filter(|g| g.source() == f.target()) {
            let gf = site.compose(f, g)?;
            if !site.is_cover(&gf) {
                continue;
            }
            let passed = site.is_cover(g);
            instances.push(AxiomInstance {
                axiom: "C3",
                subject: format!("f = {}, g = {}", describe(f), describe(g)),
                passed,
                witness: (!passed).then(|| format!("{} is not a cover", describe(g))),
            });
        }
    }

    // C4: covers are effective epimorphisms
    for f in ms.iter().filter(|f| site.is_cover(f)) {
        let passed = site.is_effective_epi(f)?;
        instances.push(AxiomInstance {
            axiom: "C4",
            subject: describe(f),
            passed,
            witness: (!passed).then(|| "comparison from the coequalizer of the kernel pair is not an isomorphism".into()),
        });
    }

    Ok(SiteAudit {
        site: format!("{} ({} covers)", site.name(), site.cover_class().name()),
        scope: format!(
            "instances expressible inside a probe of {} objects and {} morphisms",
            probe.objects.len(),
            probe.morphisms.len()
        ),
        instances,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{CoverClass, FinSetObj};

    fn sets(site: &Site, sizes: std::ops::RangeInclusive<usize>) -> Vec<Object> {
        sizes.map(|n| site.plain_object(FinSetObj::numbered(n)).unwrap()).collect()
    }

    #[test]
    fn finsets_up_to_three_pass() {
        let site = Site::finsets();
        let probe = Probe::exhaustive(&site, sets(&site, 1..=3), 1000).unwrap();
        let audit = audit_site_axioms(&site, &probe).unwrap();
        assert!(audit.passed(), "{:?}", audit.failures().next());
        for ax in ["C0", "C1", "C2", "C3", "C4"] {
            assert!(audit.count(ax) > 0, "{ax} not exercised");
        }
    }

    #[test]
    fn injections_as_covers_break_effectiveness() {
        let site = Site::finsets().with_cover_class(CoverClass::Injective);
        let probe = Probe::exhaustive(&site, sets(&site, 1..=2), 1000).unwrap();
        let audit = audit_site_axioms(&site, &probe).unwrap();
        assert!(audit.failures().any(|i| i.axiom == "C4"));
    }

    #[test]
    fn empty_probe_passes_vacuously() {
        let audit = audit_site_axioms(&Site::finsets(), &Probe::default()).unwrap();
        assert!(audit.instances.is_empty() && audit.passed());
    }

    #[test]
    fn empty_set_fails_c1() {
        let site = Site::finsets();
        let probe = Probe::exhaustive(&site, sets(&site, 0..=1), 10).unwrap();
        let audit = audit_site_axioms(&site, &probe).unwrap();
        assert!(audit.failures().all(|i| i.axiom == "C1"));
        assert_eq!(audit.failures().count(), 1);
    }
}
