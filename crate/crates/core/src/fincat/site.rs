use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Deref;
use std::sync::Arc;

use super::FinSetObj;
use crate::error::{Error, Result};
use crate::galois::BasedGraph;
use crate::gset::GroupSpec;
use crate::label::Label;

/// Marks an element outside the domain of a partial operation.
pub const UNDEF: usize = usize::MAX;

/// A unary operation of a site's signature, defined on grade `from` and
/// landing in grade `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpSig {
    pub name: Label,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub grades: Vec<Label>,
    pub ops: Vec<OpSig>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ObjectData {
    pub set: FinSetObj,
    /// Grade of each element.
    pub grade: Vec<usize>,
    /// One table per signature operation, `UNDEF` off its domain grade.
    pub ops: Vec<Arc<[usize]>>,
}

/// An object of a [`Site`]. Cheap to clone.
#[derive(Clone)]
pub struct Object(Arc<ObjectData>);

impl Object {
    pub(crate) fn from_data(data: ObjectData) -> Object {
        Object(Arc::new(data))
    }

    pub fn len(&self) -> usize {
        self.0.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.set.is_empty()
    }

    pub fn label(&self, i: usize) -> &Label {
        self.0.set.label(i)
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.0.set.index_of(l)
    }

    /// Elements of grade `g`, ascending.
    pub fn fiber(&self, g: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.0.grade[x] == g).collect()
    }

    pub fn op(&self, k: usize, x: usize) -> Option<usize> {
        let y = self.0.ops[k][x];
        (y != UNDEF).then_some(y)
    }

    pub fn ptr_eq(&self, other: &Object) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Deref for Object {
    type Target = ObjectData;
    fn deref(&self) -> &ObjectData {
        &self.0
    }
}

impl PartialEq for Object {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Object {}

impl Hash for Object {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.set.hash(state);
    }
}

impl fmt::Debug for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.set)
    }
}

/// A structure-preserving map between objects of a site.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    source: Object,
    target: Object,
    map: Arc<[usize]>,
}

impl Morphism {
    pub(crate) fn new_unchecked(source: Object, target: Object, map: Vec<usize>) -> Morphism {
        debug_assert_eq!(map.len(), source.len());
        Morphism { source, target, map: map.into() }
    }

    pub fn source(&self) -> &Object {
        &self.source
    }

    pub fn target(&self) -> &Object {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub(crate) fn map_arc(&self) -> Arc<[usize]> {
        self.map.clone()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn to_finmap(&self) -> super::FinMap {
        super::FinMap::from_indices(self.source.set.clone(), self.target.set.clone(), self.map.to_vec())
            .expect("morphism indices are in range")
    }

    pub fn is_surjective(&self) -> bool {
        self.fiber_sizes().iter().all(|&n| n > 0)
    }

    pub fn is_injective(&self) -> bool {
        self.fiber_sizes().iter().all(|&n| n <= 1)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective()
    }

    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.target.len()];
        self.map.iter().for_each(|&j| sizes[j] += 1);
        sizes
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.map.iter().enumerate().map(|(i, &j)| (self.source.label(i), self.target.label(j))))
            .finish()
    }
}

#[derive(Clone, Debug)]
pub enum SiteKind {
    FinSets,
    GFinSets(Arc<GroupSpec>),
    GraphCov(Arc<BasedGraph>),
}

/// Which morphisms count as covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoverClass {
    /// Surjections (equivariant surjections, surjective cover morphisms).
    Surjective,
    /// Surjections all of whose fibers have the same cardinality.
    ConstantFiber,
    /// Injections. Violates effectiveness; kept as a fault-injection fixture.
    Injective,
}

impl CoverClass {
    pub fn name(self) -> &'static str {
        match self {
            CoverClass::Surjective => "surjective",
            CoverClass::ConstantFiber => "constant-fiber",
            CoverClass::Injective => "injective",
        }
    }

    pub fn parse(s: &str) -> Option<CoverClass> {
        match s {
            "surjective" => Some(CoverClass::Surjective),
            "constant-fiber" => Some(CoverClass::ConstantFiber),
            "injective" => Some(CoverClass::Injective),
            _ => None,
        }
    }
}

/// A category with covers and finite limits.
#[derive(Clone, Debug)]
pub struct Site {
    kind: SiteKind,
    sig: Arc<Signature>,
    class: CoverClass,
}

impl PartialEq for Site {
    fn eq(&self, other: &Self) -> bool {
        self.class == other.class && self.sig == other.sig && self.name() == other.name()
    }
}

impl Eq for Site {}

impl Site {
    pub fn finsets() -> Site {
        let sig = Signature { grades: vec![Label::star()], ops: Vec::new() };
        Site { kind: SiteKind::FinSets, sig: Arc::new(sig), class: CoverClass::Surjective }
    }

    pub fn gsets(group: GroupSpec) -> Site {
        let ops = group
            .op_names()
            .into_iter()
            .map(|name| OpSig { name, from: 0, to: 0 })
            .collect();
        let sig = Signature { grades: vec![Label::star()], ops };
        Site { kind: SiteKind::GFinSets(Arc::new(group)), sig: Arc::new(sig), class: CoverClass::Surjective }
    }

    pub fn graph_covers(base: BasedGraph) -> Site {
        let grades = base.vertices().labels().to_vec();
        let ops = base
            .edges()
            .iter()
            .map(|e| OpSig { name: e.label.clone(), from: e.source, to: e.target })
            .collect();
        let sig = Signature { grades, ops };
        Site { kind: SiteKind::GraphCov(Arc::new(base)), sig: Arc::new(sig), class: CoverClass::Surjective }
    }

    pub fn with_cover_class(mut self, class: CoverClass) -> Site {
        self.class = class;
        self
    }

    pub fn kind(&self) -> &SiteKind {
        &self.kind
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn cover_class(&self) -> CoverClass {
        self.class
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            SiteKind::FinSets => "finsets",
            SiteKind::GFinSets(_) => "gfinsets",
            SiteKind::GraphCov(_) => "graphcov",
        }
    }

    pub fn grade_count(&self) -> usize {
        self.sig.grades.len()
    }

    pub fn op_count(&self) -> usize {
        self.sig.ops.len()
    }

    /// Builds and validates an object.
    pub fn object(&self, set: FinSetObj, grade: Vec<usize>, ops: Vec<Vec<usize>>) -> Result<Object> {
        let obj = Object::from_data(ObjectData { set, grade, ops: ops.into_iter().map(Into::into).collect() });
        self.validate_object(&obj)?;
        Ok(obj)
    }

    /// An object with no structure beyond the grading; only valid when the
    /// signature has no operations.
    pub fn plain_object(&self, set: FinSetObj) -> Result<Object> {
        let n = set.len();
        let ops = vec![Vec::new(); 0];
        if self.op_count() != 0 || self.grade_count() != 1 {
            return Err(Error::InvalidObject(format!("{} objects carry structure", self.name())));
        }
        self.object(set, vec![0; n], ops)
    }

    pub fn validate_object(&self, obj: &Object) -> Result<()> {
        let n = obj.len();
        let bad = |m: String| Err(Error::InvalidObject(m));
        if obj.grade.len() != n {
            return bad("grade table has the wrong length".into());
        }
        if let Some(&g) = obj.grade.iter().find(|&&g| g >= self.grade_count()) {
            return bad(format!("grade {g} out of range"));
        }
        if obj.ops.len() != self.op_count() {
            return bad(format!("expected {} operations, found {}", self.op_count(), obj.ops.len()));
        }
        for (k, sig) in self.sig.ops.iter().enumerate() {
            let table = &obj.ops[k];
            if table.len() != n {
                return bad(format!("operation {} has the wrong length", sig.name));
            }
            let mut hit = vec![false; n];
            for x in 0..n {
                let y = table[x];
                if obj.grade[x] == sig.from {
                    if y == UNDEF || y >= n || obj.grade[y] != sig.to {
                        return bad(format!("operation {} is not defined correctly at {}", sig.name, obj.label(x)));
                    }
                    if std::mem::replace(&mut hit[y], true) {
                        return bad(format!("operation {} is not injective", sig.name));
                    }
                } else if y != UNDEF {
                    return bad(format!("operation {} defined off its domain at {}", sig.name, obj.label(x)));
                }
            }
            let domain = obj.grade.iter().filter(|&&g| g == sig.from).count();
            let codomain = obj.grade.iter().filter(|&&g| g == sig.to).count();
            if domain != codomain {
                return bad(format!("operation {} is not a bijection between fibers", sig.name));
            }
        }
        if let SiteKind::GFinSets(group) = &self.kind {
            group.check_action(obj)?;
        }
        Ok(())
    }

    pub fn terminal(&self) -> Object {
        let grades = self.grade_count();
        let (set, grade) = match self.kind {
            SiteKind::GraphCov(_) => (FinSetObj::from_sorted(self.sig.grades.clone()), (0..grades).collect()),
            _ => (FinSetObj::singleton(), vec![0]),
        };
        let ops = self
            .sig
            .ops
            .iter()
            .map(|s| {
                let mut t = vec![UNDEF; grades];
                t[s.from] = s.to;
                t.into()
            })
            .collect();
        Object::from_data(ObjectData { set, grade, ops })
    }

    pub fn to_terminal(&self, obj: &Object) -> Morphism {
        let t = self.terminal();
        Morphism::new_unchecked(obj.clone(), t, obj.grade.clone())
    }

    pub fn identity(&self, obj: &Object) -> Morphism {
        Morphism::new_unchecked(obj.clone(), obj.clone(), (0..obj.len()).collect())
    }

    /// Builds and validates a morphism.
    pub fn morphism(&self, source: &Object, target: &Object, map: Vec<usize>) -> Result<Morphism> {
        let m = Morphism { source: source.clone(), target: target.clone(), map: map.into() };
        self.validate_morphism(&m)?;
        Ok(m)
    }

    pub fn validate_morphism(&self, m: &Morphism) -> Result<()> {
        let (a, b) = (&m.source, &m.target);
        let bad = |s: String| Err(Error::InvalidMorphism(s));
        if m.map.len() != a.len() {
            return bad("map has the wrong length".into());
        }
        for x in 0..a.len() {
            let y = m.map[x];
            if y >= b.len() {
                return bad(format!("image of {} out of range", a.label(x)));
            }
            if a.grade[x] != b.grade[y] {
                return bad(format!("{} changes grade", a.label(x)));
            }
            for (k, sig) in self.sig.ops.iter().enumerate() {
                if a.grade[x] == sig.from && m.map[a.ops[k][x]] != b.ops[k][y] {
                    return bad(format!("does not commute with {} at {}", sig.name, a.label(x)));
                }
            }
        }
        Ok(())
    }

    /// Whether `map` is a morphism `a → b`, without building one.
    pub(crate) fn is_structure_map(&self, a: &Object, b: &Object, map: &[usize]) -> bool {
        map.len() == a.len()
            && (0..a.len()).all(|x| {
                let y = map[x];
                y < b.len()
                    && a.grade[x] == b.grade[y]
                    && self.sig.ops.iter().enumerate().all(|(k, sig)| a.grade[x] != sig.from || map[a.ops[k][x]] == b.ops[k][y])
            })
    }

    /// `g ∘ f`.
    pub fn compose(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        if f.target != g.source {
            return Err(Error::InvalidMorphism("morphisms are not composable".into()));
        }
        let map = f.map.iter().map(|&y| g.map[y]).collect();
        Ok(Morphism::new_unchecked(f.source.clone(), g.target.clone(), map))
    }

    pub fn is_cover(&self, f: &Morphism) -> bool {
        match self.class {
            CoverClass::Surjective => f.is_surjective(),
            CoverClass::ConstantFiber => {
                let sizes = f.fiber_sizes();
                sizes.iter().all(|&s| s > 0 && s == sizes[0])
            }
            CoverClass::Injective => f.is_injective(),
        }
    }

    pub fn is_iso(&self, f: &Morphism) -> bool {
        f.is_bijective()
    }
}
