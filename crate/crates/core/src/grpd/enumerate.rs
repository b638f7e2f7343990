//! Exhaustive enumeration of small truncated simplicial sets.

use crate::error::Result;
use crate::fincat::{FinSetObj, Site};
use crate::simp::SimplicialObject;

/// A structure map slot: `(is_face, level, index)` with tables `level → level ∓ 1`.
type Slot = (bool, usize, usize);

/// Every simplicial finite set truncated at `n` whose levels have at most
/// `max` elements, one per isomorphism class.
pub fn small_simplicial_sets(n: usize, max: usize) -> Result<Vec<SimplicialObject>> {
    let site = Site::finsets();
    let mut out: Vec<SimplicialObject> = Vec::new();
    let mut sizes = vec![0; n + 1];
    loop {
        // s_0 is injective, so sizes never decrease; an empty level 0 forces
        // every level empty
        let ok = sizes.windows(2).all(|w| w[0] <= w[1]) && (sizes[0] > 0 || sizes.iter().all(|&s| s == 0));
        if ok {
            for x in with_sizes(&site, &sizes)? {
                let mut seen = false;
                for y in out.iter().rev() {
                    if y.level_sizes() != sizes {
                        break;
                    }
                    if x.is_isomorphic(y)? {
                        seen = true;
                        break;
                    }
                }
                if !seen {
                    out.push(x);
                }
            }
        }
        // odometer over size vectors, last level fastest
        let mut m = n as isize;
        while m >= 0 && sizes[m as usize] == max {
            sizes[m as usize] = 0;
            m -= 1;
        }
        if m < 0 {
            break;
        }
        sizes[m as usize] += 1;
    }
    Ok(out)
}

fn with_sizes(site: &Site, sizes: &[usize]) -> Result<Vec<SimplicialObject>> {
    let n = sizes.len() - 1;
    // degeneracies first: they are injective and pin down most of the faces
    let mut slots: Vec<Slot> = Vec::new();
    for m in 0..n {
        for j in 0..=m {
            slots.push((false, m, j));
        }
        for i in 0..=m + 1 {
            slots.push((true, m + 1, i));
        }
    }
    let mut tables: Vec<Option<Vec<usize>>> = vec![None; slots.len()];
    let mut found = Vec::new();
    fill(sizes, &slots, 0, &mut tables, &mut found);
    let levels = sizes
        .iter()
        .map(|&k| site.plain_object(FinSetObj::numbered(k)))
        .collect::<Result<Vec<_>>>()?;
    found
        .into_iter()
        .map(|tables| {
            let mut d = vec![Vec::new(); n + 1];
            let mut s = vec![Vec::new(); n + 1];
            for (slot, t) in slots.iter().zip(tables) {
                match slot {
                    (true, m, _) => d[*m].push(t),
                    (false, m, _) => s[*m].push(t),
                }
            }
            SimplicialObject::from_tables(site, levels.clone(), d, s)
        })
        .collect()
}

fn fill(sizes: &[usize], slots: &[Slot], k: usize, tables: &mut Vec<Option<Vec<usize>>>, found: &mut Vec<Vec<Vec<usize>>>) {
    if k == slots.len() {
        found.push(tables.iter().map(|t| t.clone().expect("assigned")).collect());
        return;
    }
    let (face, m, _) = slots[k];
    let (from, to) = if face { (sizes[m], sizes[m - 1]) } else { (sizes[m], sizes[m + 1]) };
    let mut t = vec![0; from];
    loop {
        if face || is_injective(&t) {
            tables[k] = Some(t.clone());
            if consistent(slots, tables) {
                fill(sizes, slots, k + 1, tables, found);
            }
            tables[k] = None;
        }
        if !next_function(&mut t, to) {
            break;
        }
    }
}

fn is_injective(t: &[usize]) -> bool {
    let mut seen = t.to_vec();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}

fn next_function(t: &mut [usize], to: usize) -> bool {
    for v in t.iter_mut().rev() {
        if *v + 1 < to {
            *v += 1;
            return true;
        }
        *v = 0;
    }
    false
}

/// Checks every simplicial identity whose maps are all assigned.
fn consistent(slots: &[Slot], tables: &[Option<Vec<usize>>]) -> bool {
    let get = |face: bool, m: usize, i: usize| -> Option<&Vec<usize>> {
        slots.iter().position(|&s| s == (face, m, i)).and_then(|p| tables[p].as_ref())
    };
    let levels = slots.iter().map(|s| s.1).max().unwrap_or(0);
    for m in 2..=levels {
        for j in 1..=m {
            for i in 0..j {
                if let (Some(a), Some(b), Some(c), Some(e)) = (get(true, m, j), get(true, m - 1, i), get(true, m, i), get(true, m - 1, j - 1)) {
                    if (0..a.len()).any(|x| b[a[x]] != e[c[x]]) {
                        return false;
                    }
                }
            }
        }
    }
    for m in 1..=levels {
        for j in 0..m {
            let Some(sj) = get(false, m - 1, j) else { continue };
            for i in 0..=m {
                let Some(di) = get(true, m, i) else { continue };
                for x in 0..sj.len() {
                    let lhs = di[sj[x]];
                    let rhs = if i == j || i == j + 1 {
                        Some(x)
                    } else if i < j {
                        match (get(true, m - 1, i), get(false, m - 2, j - 1)) {
                            (Some(d), Some(s)) => Some(s[d[x]]),
                            _ => None,
                        }
                    } else {
                        match (get(true, m - 1, i - 1), get(false, m - 2, j)) {
                            (Some(d), Some(s)) => Some(s[d[x]]),
                            _ => None,
                        }
                    };
                    if rhs.is_some_and(|r| r != lhs) {
                        return false;
                    }
                }
            }
        }
    }
    for m in 0..levels.saturating_sub(1) {
        for j in 0..=m {
            for i in 0..=j {
                if let (Some(a), Some(b), Some(c), Some(e)) = (get(false, m, j), get(false, m + 1, i), get(false, m, i), get(false, m + 1, j + 1)) {
                    if (0..a.len()).any(|x| b[a[x]] != e[c[x]]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_truncated_sets_with_small_levels() {
        // reflexive graphs: (0,0), (1,1), (1,2) loop, (2,2) discrete
        let all = small_simplicial_sets(1, 2).unwrap();
        let shapes: Vec<Vec<usize>> = all.iter().map(|x| x.level_sizes()).collect();
        assert_eq!(shapes, vec![vec![0, 0], vec![1, 1], vec![1, 2], vec![2, 2]]);
    }

    #[test]
    fn two_truncated_sets_are_valid_and_pairwise_distinct() {
        let all = small_simplicial_sets(2, 2).unwrap();
        for (i, x) in all.iter().enumerate() {
            for y in &all[i + 1..] {
                assert!(!x.is_isomorphic(y).unwrap());
            }
        }
        // a nondegenerate edge forces two distinct degenerate triangles on it
        let shapes: Vec<Vec<usize>> = all.iter().map(|x| x.level_sizes()).collect();
        assert_eq!(shapes, vec![vec![0, 0, 0], vec![1, 1, 1], vec![1, 1, 2], vec![2, 2, 2]]);
    }

    #[test]
    fn classifying_space_of_z2_appears_once() {
        let all = small_simplicial_sets(2, 4).unwrap();
        let bz2 = SimplicialObject::nerve(&Site::finsets(), &crate::gset::FiniteGroup::cyclic(2), 2).unwrap();
        assert_eq!(all.iter().filter(|x| x.is_isomorphic(&bz2).unwrap()).count(), 1);
    }
}
