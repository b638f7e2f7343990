//! Finite groups, finite G-sets and permutation actions of free groups.
//!
//! A group acts on a carrier through one permutation per operation of the
//! site signature: every element for a finite group, one per generator for a
//! free group. Equivariance against those operations is equivalence against
//! the whole group.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fincat::{FinMap, FinSetObj, Object, Site};
use crate::label::Label;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    elements: Vec<Label>,
    /// `table[g][h]` is the index of `g·h`.
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Checks associativity, identity and inverses.
    pub fn new(elements: Vec<Label>, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = elements.len();
        let bad = |m: &str| Err(Error::InvalidObject(format!("group: {m}")));
        if n == 0 {
            return bad("empty");
        }
        if FinSetObj::new(elements.clone()).is_err() {
            return bad("duplicate element labels");
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("table is not n×n over the elements");
        }
        let identity = match (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g)) {
            Some(e) => e,
            None => return bad("no identity"),
        };
        let mut inverse = vec![0; n];
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity) {
                Some(h) => inverse[g] = h,
                None => return bad("missing inverse"),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad("not associative");
                    }
                }
            }
        }
        Ok(FiniteGroup { elements, table, identity, inverse })
    }

    /// The cyclic group of order `n`, elements labelled `0..n`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        let elements = (0..n).map(|i| Label::from_static(&i.to_string())).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(elements, table).expect("cyclic group")
    }

    /// The symmetric group on `{0,..,k-1}`, elements labelled by one-line
    /// notation (`012`, `102`, ...), composed as functions `(g·h)(x) = g(h(x))`.
    pub fn symmetric(k: usize) -> FiniteGroup {
        let mut perms = Vec::new();
        permutations(k, &mut Vec::new(), &mut perms);
        perms.sort();
        let labels: Vec<Label> = perms
            .iter()
            .map(|p| Label::from_static(&p.iter().map(|d| d.to_string()).collect::<String>()))
            .collect();
        let table = perms
            .iter()
            .map(|g| {
                perms
                    .iter()
                    .map(|h| {
                        let gh: Vec<usize> = h.iter().map(|&x| g[x]).collect();
                        perms.iter().position(|p| *p == gh).unwrap()
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::new(labels, table).expect("symmetric group")
    }

    /// The direct product `Z/2 × Z/2`, elements `00, 01, 10, 11`.
    pub fn klein_four() -> FiniteGroup {
        let elements = ["00", "01", "10", "11"].iter().map(|s| Label::from_static(s)).collect();
        let table = (0..4).map(|a: usize| (0..4).map(|b: usize| a ^ b).collect()).collect();
        FiniteGroup::new(elements, table).expect("klein four")
    }

    /// One representative of every isomorphism class of groups of order ≤ 6.
    pub fn all_of_order_at_most_six() -> Vec<FiniteGroup> {
        vec![
            FiniteGroup::cyclic(1),
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::cyclic(4),
            FiniteGroup::klein_four(),
            FiniteGroup::cyclic(5),
            FiniteGroup::cyclic(6),
            FiniteGroup::symmetric(3),
        ]
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Label] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// All permutations of `0..k` in lexicographic order.
pub(crate) fn permutations_of(k: usize, out: &mut Vec<Vec<usize>>) {
    permutations(k, &mut Vec::new(), out);
}

fn permutations(k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == k {
        out.push(prefix.clone());
        return;
    }
    for x in 0..k {
        if !prefix.contains(&x) {
            prefix.push(x);
            permutations(k, prefix, out);
            prefix.pop();
        }
    }
}

/// The acting group of a G-FinSets site.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Finite(FiniteGroup),
    /// Free group on the named generators.
    Free { generators: Vec<Label> },
}

impl GroupSpec {
    pub fn free(rank: usize) -> GroupSpec {
        let names = ["a", "b", "c", "d", "e", "f", "g", "h"];
        let generators = (0..rank)
            .map(|i| Label::from_static(&names.get(i).map_or_else(|| format!("x{i}"), |s| s.to_string())))
            .collect();
        GroupSpec::Free { generators }
    }

    pub(crate) fn op_names(&self) -> Vec<Label> {
        match self {
            GroupSpec::Finite(g) => g.elements.clone(),
            GroupSpec::Free { generators } => generators.clone(),
        }
    }

    pub fn rank(&self) -> Option<usize> {
        match self {
            GroupSpec::Free { generators } => Some(generators.len()),
            GroupSpec::Finite(_) => None,
        }
    }

    /// Action laws for finite groups: `e·x = x`, `g·(h·x) = (gh)·x`.
    pub(crate) fn check_action(&self, obj: &Object) -> Result<()> {
        let GroupSpec::Finite(group) = self else {
            return Ok(());
        };
        for x in 0..obj.len() {
            if obj.ops[group.identity][x] != x {
                return Err(Error::InvalidObject(format!("identity moves {}", obj.label(x))));
            }
            for g in 0..group.order() {
                for h in 0..group.order() {
                    if obj.ops[g][obj.ops[h][x]] != obj.ops[group.mul(g, h)][x] {
                        return Err(Error::InvalidObject(format!(
                            "action law fails for {}, {} at {}",
                            group.elements[g],
                            group.elements[h],
                            obj.label(x)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A G-set over a finite group: `action[g][x]` is `g·x`.
pub fn gset(site: &Site, carrier: FinSetObj, action: Vec<Vec<usize>>) -> Result<Object> {
    let n = carrier.len();
    site.object(carrier, vec![0; n], action)
}

/// The left-regular action of a finite group on itself.
pub fn regular_gset(site: &Site, group: &FiniteGroup) -> Result<Object> {
    let carrier = FinSetObj::new(group.elements().to_vec())?;
    // carrier is sorted; element order of the group may differ
    let pos: Vec<usize> = group.elements().iter().map(|l| carrier.index_of(l).unwrap()).collect();
    let mut action = vec![vec![0; group.order()]; group.order()];
    for g in 0..group.order() {
        for h in 0..group.order() {
            action[g][pos[h]] = pos[group.mul(g, h)];
        }
    }
    gset(site, carrier, action)
}

/// A finite set with the trivial action.
pub fn trivial_gset(site: &Site, carrier: FinSetObj) -> Result<Object> {
    let n = carrier.len();
    let action = vec![(0..n).collect(); site.op_count()];
    gset(site, carrier, action)
}

/// An action of the free group of rank `perms.len()` on `carrier`, one
/// permutation (as an index map) per generator.
pub fn free_group_action(carrier: FinSetObj, perms: Vec<Vec<usize>>) -> Result<(Site, Object)> {
    let n = carrier.len();
    for (i, p) in perms.iter().enumerate() {
        let mut seen = vec![false; n];
        if p.len() != n || p.iter().any(|&y| y >= n || std::mem::replace(&mut seen[y], true)) {
            return Err(Error::InvalidObject(format!("generator {i} is not a bijection of the carrier")));
        }
    }
    let site = Site::gsets(GroupSpec::free(perms.len()));
    let obj = site.object(carrier, vec![0; n], perms)?;
    Ok((site, obj))
}

/// A reduced word in a free group: `(generator, exponent sign)` letters.
pub type Word = Vec<(usize, bool)>;

/// Action of a word on the left: `w = g1 g2 ... gk` sends `x` to
/// `g1(g2(...gk(x)))`. Inverse letters use the inverse permutation.
pub fn act_word(obj: &Object, word: &[(usize, bool)], x: usize) -> usize {
    word.iter().rev().fold(x, |y, &(g, positive)| {
        if positive {
            obj.ops[g][y]
        } else {
            obj.ops[g].iter().position(|&z| z == y).expect("permutation")
        }
    })
}

/// All reduced words of length at most `max_len`, shortlex order.
pub fn reduced_words(rank: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..rank {
                for sign in [true, false] {
                    if w.last() == Some(&(g, !sign)) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push((g, sign));
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Words of length at most `max_len` fixing `x`.
pub fn stabilizer_words(obj: &Object, x: usize, max_len: usize) -> Vec<Word> {
    let rank = obj.ops.len();
    reduced_words(rank, max_len).into_iter().filter(|w| act_word(obj, w, x) == x).collect()
}

/// Orbit partition, each orbit sorted, orbits ordered by least element.
pub fn orbits(obj: &Object) -> Vec<Vec<usize>> {
    let n = obj.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = BTreeSet::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            orbit.insert(x);
            for table in obj.ops.iter() {
                let y = table[x];
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
                if let Some(z) = table.iter().position(|&t| t == x) {
                    if !seen[z] {
                        seen[z] = true;
                        stack.push(z);
                    }
                }
            }
        }
        out.push(orbit.into_iter().collect());
    }
    out
}

/// Whether `f(g·x) = g·f(x)` for every operation and element.
pub fn is_equivariant(f: &FinMap, src: &Object, tgt: &Object) -> bool {
    if f.source() != &src.set || f.target() != &tgt.set || src.ops.len() != tgt.ops.len() {
        return false;
    }
    let m = f.indices();
    (0..src.len()).all(|x| src.ops.iter().zip(tgt.ops.iter()).all(|(s, t)| m[s[x]] == t[m[x]]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> (Site, FiniteGroup) {
        let g = FiniteGroup::cyclic(2);
        (Site::gsets(GroupSpec::Finite(g.clone())), g)
    }

    #[test]
    fn group_constructors_satisfy_axioms() {
        for g in FiniteGroup::all_of_order_at_most_six() {
            FiniteGroup::new(g.elements().to_vec(), g.table().to_vec()).unwrap();
        }
        assert_eq!(FiniteGroup::symmetric(3).order(), 6);
    }

    #[test]
    fn rejects_non_group_tables() {
        let els = vec![Label::atom("a").unwrap(), Label::atom("b").unwrap()];
        assert!(FiniteGroup::new(els, vec![vec![0, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn free_action_orbits() {
        let carrier = FinSetObj::from_atoms(&["1", "2"]).unwrap();
        let (_, a) = free_group_action(carrier.clone(), vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(orbits(&a).len(), 1);
        let (_, t) = free_group_action(carrier, vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(orbits(&t).len(), 2);
    }

    #[test]
    fn three_cycle_stabilizer_is_generated_by_cube() {
        let carrier = FinSetObj::from_atoms(&["1", "2", "3"]).unwrap();
        let (_, a) = free_group_action(carrier, vec![vec![1, 2, 0]]).unwrap();
        assert_eq!(orbits(&a).len(), 1);
        let stab = stabilizer_words(&a, 0, 3);
        assert_eq!(stab, vec![vec![], vec![(0, true); 3], vec![(0, false); 3]]);
    }

    #[test]
    fn non_bijective_generator_rejected() {
        let carrier = FinSetObj::from_atoms(&["1", "2"]).unwrap();
        assert!(free_group_action(carrier, vec![vec![0, 0]]).is_err());
    }

    #[test]
    fn regular_actions_are_transitive() {
        let (site, g) = z2();
        assert_eq!(orbits(&regular_gset(&site, &g).unwrap()).len(), 1);
        let s3 = FiniteGroup::symmetric(3);
        let site3 = Site::gsets(GroupSpec::Finite(s3.clone()));
        let reg = regular_gset(&site3, &s3).unwrap();
        assert_eq!(orbits(&reg), vec![(0..6).collect::<Vec<_>>()]);
    }

    #[test]
    fn equivariance_examples() {
        let (site, g) = z2();
        let reg = regular_gset(&site, &g).unwrap();
        let id = FinMap::identity(&reg.set);
        assert!(is_equivariant(&id, &reg, &reg));
        let pt = site.terminal();
        let collapse = FinMap::from_indices(reg.set.clone(), pt.set.clone(), vec![0, 0]).unwrap();
        assert!(is_equivariant(&collapse, &reg, &pt));
        let fixed = trivial_gset(&site, FinSetObj::from_atoms(&["p", "q"]).unwrap()).unwrap();
        let f = FinMap::from_indices(reg.set.clone(), fixed.set.clone(), vec![0, 1]).unwrap();
        assert!(!is_equivariant(&f, &reg, &fixed));
    }

    #[test]
    fn pullback_carries_diagonal_action() {
        let (site, g) = z2();
        let reg = regular_gset(&site, &g).unwrap();
        let c = site.to_terminal(&reg);
        let pb = site.pullback(&c, &c).unwrap();
        assert_eq!(pb.apex.len(), 4);
        site.validate_object(&pb.apex).unwrap();
        assert_eq!(orbits(&pb.apex).len(), 2);
        // brute-force orbit count of the pair set under the diagonal action
        let mut seen = std::collections::BTreeSet::new();
        let mut count = 0;
        for x in 0..2 {
            for y in 0..2 {
                if seen.insert((x, y)) {
                    count += 1;
                    for h in 0..2 {
                        seen.insert((reg.ops[h][x], reg.ops[h][y]));
                    }
                }
            }
        }
        assert_eq!(count, 2);
    }

    #[test]
    fn equivariant_surjection_is_effective() {
        let (site, g) = z2();
        let reg = regular_gset(&site, &g).unwrap();
        assert!(site.is_effective_epi(&site.to_terminal(&reg)).unwrap());
    }
}
