//! Small objects of a site, one per isomorphism class.

use super::{FinSetObj, Object, Site, SiteKind};
use crate::error::Result;
use crate::gset::{FiniteGroup, GroupSpec};

impl Site {
    /// Every object with at most `max` elements per grade, up to
    /// isomorphism, by increasing size.
    pub fn small_objects(&self, max: usize) -> Result<Vec<Object>> {
        match self.kind() {
            SiteKind::FinSets => (0..=max).map(|k| self.plain_object(FinSetObj::numbered(k))).collect(),
            SiteKind::GFinSets(g) => match &**g {
                GroupSpec::Finite(group) => finite_gsets(self, group, max),
                GroupSpec::Free { generators } => {
                    let mut out = Vec::new();
                    for k in 0..=max {
                        let mut seen = std::collections::BTreeSet::new();
                        for a in crate::galois::PermAction::enumerate(generators.len(), k) {
                            if seen.insert(a.canonical()) {
                                out.push(self.object(a.fiber, vec![0; k], a.perms)?);
                            }
                        }
                    }
                    Ok(out)
                }
            },
            SiteKind::GraphCov(_) => {
                let mut out = Vec::new();
                for d in 0..=max {
                    out.extend(crate::galois::covers_of_degree(self, d)?);
                }
                Ok(out)
            }
        }
    }
}

/// Left cosets of every subgroup, one per conjugacy class, as permutation
/// actions on coset indices.
fn transitive_actions(site: &Site, group: &FiniteGroup) -> Result<Vec<Vec<Vec<usize>>>> {
    let n = group.order();
    let mut types: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut objects: Vec<Object> = Vec::new();
    for mask in 1u32..(1 << n) {
        let sub: Vec<usize> = (0..n).filter(|&g| mask >> g & 1 == 1).collect();
        if !sub.contains(&group.identity()) || !sub.iter().all(|&a| sub.iter().all(|&b| mask >> group.mul(a, b) & 1 == 1)) {
            continue;
        }
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for g in 0..n {
            let mut c: Vec<usize> = sub.iter().map(|&h| group.mul(g, h)).collect();
            c.sort_unstable();
            if !cosets.contains(&c) {
                cosets.push(c);
            }
        }
        let action: Vec<Vec<usize>> = (0..n)
            .map(|g| {
                cosets
                    .iter()
                    .map(|c| {
                        let x = group.mul(g, c[0]);
                        cosets.iter().position(|d| d.contains(&x)).expect("cosets partition the group")
                    })
                    .collect()
            })
            .collect();
        let obj = site.object(FinSetObj::numbered(cosets.len()), vec![0; cosets.len()], action.clone())?;
        let mut fresh = true;
        for o in &objects {
            if site.are_isomorphic(o, &obj)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            objects.push(obj);
            types.push(action);
        }
    }
    types.sort_by_key(|t| t[0].len());
    Ok(types)
}

fn finite_gsets(site: &Site, group: &FiniteGroup, max: usize) -> Result<Vec<Object>> {
    let types = transitive_actions(site, group)?;
    let mut out = Vec::new();
    // multisets of orbit types as nondecreasing index sequences
    fn rec(types: &[Vec<Vec<usize>>], start: usize, room: usize, cur: &mut Vec<usize>, acc: &mut Vec<Vec<usize>>) {
        acc.push(cur.clone());
        for t in start..types.len() {
            let size = types[t][0].len();
            if size <= room {
                cur.push(t);
                rec(types, t, room - size, cur, acc);
                cur.pop();
            }
        }
    }
    let mut combos = Vec::new();
    rec(&types, 0, max, &mut Vec::new(), &mut combos);
    let size = |c: &Vec<usize>| c.iter().map(|&t| types[t][0].len()).sum::<usize>();
    combos.sort_by_key(|c| (size(c), c.clone()));
    for combo in combos {
        let total = size(&combo);
        let mut action = vec![Vec::with_capacity(total); group.order()];
        let mut offset = 0;
        for &t in &combo {
            for (g, row) in types[t].iter().enumerate() {
                action[g].extend(row.iter().map(|&x| x + offset));
            }
            offset += types[t][0].len();
        }
        out.push(site.object(FinSetObj::numbered(total), vec![0; total], action)?);
    }
    Ok(out)
}
