//! Backtracking enumeration of assignments subject to functional constraints.
//!
//! Variables take values from finite candidate lists. A constraint
//! `(u, v, table)` demands `value[v] == table[value[u]]`. Variables are visited
//! in a caller-chosen order; a variable with an already-assigned predecessor
//! is forced, otherwise its candidates are tried in order. Every constraint is
//! checked as soon as both endpoints are assigned.

use std::sync::Arc;

use super::site::UNDEF;
use crate::error::{Error, Result};

pub(crate) struct Constraint {
    pub from: usize,
    pub to: usize,
    pub table: Arc<[usize]>,
}

pub(crate) struct Search {
    pub domains: Vec<Vec<usize>>,
    pub constraints: Vec<Constraint>,
    pub order: Vec<usize>,
    /// When set, variables sharing a group id must take distinct values.
    pub distinct: Option<Vec<usize>>,
}

struct Plan {
    forcing: Vec<Vec<usize>>,
    checks: Vec<Vec<usize>>,
}

impl Search {
    pub fn new(domains: Vec<Vec<usize>>) -> Search {
        let order = (0..domains.len()).collect();
        Search { domains, constraints: Vec::new(), order, distinct: None }
    }

    pub fn constrain(&mut self, from: usize, to: usize, table: Arc<[usize]>) {
        self.constraints.push(Constraint { from, to, table });
    }

    fn plan(&self) -> Plan {
        let n = self.domains.len();
        let mut position = vec![usize::MAX; n];
        for (p, &v) in self.order.iter().enumerate() {
            position[v] = p;
        }
        let mut forcing = vec![Vec::new(); n];
        let mut checks = vec![Vec::new(); n];
        for (ci, c) in self.constraints.iter().enumerate() {
            let (pu, pv) = (position[c.from], position[c.to]);
            let later = pu.max(pv);
            checks[self.order[later]].push(ci);
            if pu < pv {
                forcing[c.to].push(ci);
            }
        }
        Plan { forcing, checks }
    }

    /// Calls `visit` for each solution in enumeration order; stops early when
    /// `visit` returns false. Errors once more than `cap` solutions are seen.
    pub fn run(&self, cap: usize, mut visit: impl FnMut(&[usize]) -> bool) -> Result<usize> {
        let plan = self.plan();
        let mut values = vec![UNDEF; self.domains.len()];
        let groups = self.distinct.as_ref().map(|g| g.iter().copied().max().map_or(0, |m| m + 1));
        let mut used: Vec<Vec<bool>> = match groups {
            Some(k) => {
                let width = self.domains.iter().flatten().copied().max().map_or(0, |m| m + 1);
                vec![vec![false; width]; k]
            }
            None => Vec::new(),
        };
        let mut count = 0usize;
        let mut stop = false;
        self.descend(0, &plan, &mut values, &mut used, &mut count, cap, &mut stop, &mut visit)?;
        Ok(count)
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        depth: usize,
        plan: &Plan,
        values: &mut Vec<usize>,
        used: &mut Vec<Vec<bool>>,
        count: &mut usize,
        cap: usize,
        stop: &mut bool,
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> Result<()> {
        if depth == self.order.len() {
            *count += 1;
            if *count > cap {
                return Err(Error::CapExceeded { cap, what: "solutions".into() });
            }
            if !visit(values) {
                *stop = true;
            }
            return Ok(());
        }
        let var = self.order[depth];
        let forced = plan.forcing[var].first().map(|&ci| {
            let c = &self.constraints[ci];
            c.table[values[c.from]]
        });
        let candidates: &[usize] = &self.domains[var];
        let single;
        let iter: &[usize] = match forced {
            Some(UNDEF) => return Ok(()),
            Some(v) => {
                if candidates.binary_search(&v).is_err() {
                    return Ok(());
                }
                single = [v];
                &single
            }
            None => candidates,
        };
        for &value in iter {
            if let (Some(groups), false) = (&self.distinct, used.is_empty()) {
                if used[groups[var]][value] {
                    continue;
                }
            }
            values[var] = value;
            let ok = plan.checks[var].iter().all(|&ci| {
                let c = &self.constraints[ci];
                let src = values[c.from];
                src != UNDEF && values[c.to] != UNDEF && c.table[src] == values[c.to]
            });
            if ok {
                if let Some(groups) = &self.distinct {
                    used[groups[var]][value] = true;
                }
                self.descend(depth + 1, plan, values, used, count, cap, stop, visit)?;
                if let Some(groups) = &self.distinct {
                    used[groups[var]][value] = false;
                }
                if *stop {
                    break;
                }
            }
        }
        values[var] = UNDEF;
        Ok(())
    }

    pub fn collect(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        self.run(cap, |v| {
            out.push(v.to_vec());
            true
        })?;
        Ok(out)
    }

    pub fn first(&self) -> Result<Option<Vec<usize>>> {
        let mut out = None;
        self.run(usize::MAX, |v| {
            out = Some(v.to_vec());
            false
        })?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_values_propagate() {
        // v1 = t[v0], v0 free in {0,1,2}, t = [2,0,1]
        let mut s = Search::new(vec![vec![0, 1, 2], vec![0, 1, 2]]);
        s.constrain(0, 1, vec![2, 0, 1].into());
        let sols = s.collect(100).unwrap();
        assert_eq!(sols, vec![vec![0, 2], vec![1, 0], vec![2, 1]]);
    }

    #[test]
    fn distinct_groups_give_permutations() {
        let mut s = Search::new(vec![vec![0, 1, 2]; 3]);
        s.distinct = Some(vec![0, 0, 0]);
        assert_eq!(s.collect(100).unwrap().len(), 6);
    }

    #[test]
    fn cap_is_enforced() {
        let s = Search::new(vec![vec![0, 1]; 4]);
        assert!(matches!(s.collect(3), Err(Error::CapExceeded { .. })));
    }
}
