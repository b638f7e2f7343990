use super::search::Search;
use super::site::{Morphism, Object, Site};
use crate::error::Result;

impl Site {
    fn map_search(&self, a: &Object, b: &Object) -> Search {
        let domains = (0..a.len()).map(|x| b.fiber(a.grade[x])).collect();
        let mut search = Search::new(domains);
        // f(op x) = op f(x): the value at `op x` is forced by the value at `x`
        for k in 0..self.op_count() {
            let table = b.ops[k].clone();
            for x in 0..a.len() {
                if let Some(y) = a.op(k, x) {
                    search.constrain(x, y, table.clone());
                }
            }
        }
        search
    }

    /// Every morphism `a → b`, in lexicographic order of the index maps.
    pub fn hom_set(&self, a: &Object, b: &Object, cap: usize) -> Result<Vec<Morphism>> {
        let sols = self.map_search(a, b).collect(cap)?;
        Ok(sols.into_iter().map(|m| Morphism::new_unchecked(a.clone(), b.clone(), m)).collect())
    }

    /// Exhaustive search for an isomorphism `a → b`.
    pub fn find_isomorphism(&self, a: &Object, b: &Object) -> Result<Option<Morphism>> {
        if a.len() != b.len() {
            return Ok(None);
        }
        let mut search = self.map_search(a, b);
        search.distinct = Some(vec![0; a.len()]);
        Ok(search.first()?.map(|m| Morphism::new_unchecked(a.clone(), b.clone(), m)))
    }

    pub fn are_isomorphic(&self, a: &Object, b: &Object) -> Result<bool> {
        Ok(self.find_isomorphism(a, b)?.is_some())
    }
}

#[cfg(test)]
mod tests {
    use crate::fincat::{FinSetObj, Site};

    #[test]
    fn hom_set_sizes_in_sets() {
        let site = Site::finsets();
        let a = site.plain_object(FinSetObj::numbered(2)).unwrap();
        let b = site.plain_object(FinSetObj::numbered(3)).unwrap();
        assert_eq!(site.hom_set(&a, &b, 1000).unwrap().len(), 9);
        assert_eq!(site.hom_set(&b, &a, 1000).unwrap().len(), 8);
        let e = site.plain_object(FinSetObj::empty()).unwrap();
        assert_eq!(site.hom_set(&e, &a, 1000).unwrap().len(), 1);
        assert_eq!(site.hom_set(&a, &e, 1000).unwrap().len(), 0);
    }

    #[test]
    fn every_set_has_one_map_to_the_terminal() {
        let site = Site::finsets();
        for n in 0..4 {
            let a = site.plain_object(FinSetObj::numbered(n)).unwrap();
            assert_eq!(site.hom_set(&a, &site.terminal(), 10).unwrap().len(), 1);
        }
    }
}
