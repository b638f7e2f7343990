//! Simplicial localization at desk scale: the hammock model `L(C, W)`
//! enumerated up to a length bound, the span model `H⁻¹C`, and the
//! canonical comparison between them on components.

mod category;
mod compare;
mod groupoids;
mod hammock;
mod span;

pub use category::{validate_marked_category, Arrow, CategoryFile, CategoryValidation, MarkedRelCategory, Violation};
pub use compare::{compare_all_pairs, compare_localization_models, pi0_mapping_space, Model, ModelComparison, Pi0};
pub use groupoids::{
    hypercover_class_witnesses, localize_groupoid_category, HypercoverClassComparison, LocalizeOptions, LocalizedCategory,
};
pub use hammock::{
    check_hammock, enumerate_zigzags, hammock_components, hammock_simplices, Hammock, HammockComponents, Step, Zigzag,
};
pub use span::{span_components, span_maps, span_mapping_space, spans, Span, SpanComponents, SpanMap};

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            // keep the smaller root so the result is order independent
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
        }
    }

    /// Component numbers by first occurrence, and the component count.
    pub(crate) fn canonical(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut number = vec![usize::MAX; n];
        let mut out = Vec::with_capacity(n);
        let mut count = 0;
        for x in 0..n {
            let r = self.find(x);
            if number[r] == usize::MAX {
                number[r] = count;
                count += 1;
            }
            out.push(number[r]);
        }
        (out, count)
    }
}
