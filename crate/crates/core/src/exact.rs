//! Exhaustive search over charging orderings.
//!
//! Every ordering is a port assignment vector plus one permutation per port.
//! For `n` trucks and `c` ports there are `n! * C(n+c-1, c-1)` of them, so
//! the search is guarded by a truck limit.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::SolveError;
use crate::inner::{inner_solve_with, InnerConfig, InnerSolution};
use crate::model::{Instance, Ordering, TruckId};

/// Default limit on the fleet size accepted by [`exact_solve`].
pub const EXACT_MAX_TRUCKS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactConfig {
    pub max_trucks: usize,
    /// Skip orderings that only relabel ports. Only applied when all ports
    /// have the same power, where such orderings cost the same.
    pub symmetry_pruning: bool,
    pub inner: InnerConfig,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig {
            max_trucks: EXACT_MAX_TRUCKS,
            symmetry_pruning: false,
            inner: InnerConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactSolution {
    pub ordering: Ordering,
    pub solution: InnerSolution,
    /// Orderings passed to the inner solver.
    pub evaluated: u64,
    /// Of those, how many had no feasible schedule.
    pub infeasible: u64,
}

/// Number of distinct orderings of `n` trucks over `c` ports, or `None` on overflow.
pub fn ordering_count(n: usize, c: usize) -> Option<u128> {
    if c == 0 {
        return Some(u128::from(n == 0));
    }
    let mut total: u128 = 1;
    for k in 1..=n as u128 {
        total = total.checked_mul(k)?;
    }
    // C(n+c-1, c-1) built up incrementally stays integral at each step.
    let mut binom: u128 = 1;
    for k in 1..c as u128 {
        binom = binom.checked_mul(n as u128 + k)? / k;
    }
    total.checked_mul(binom)
}

/// Every ordering of `n` trucks over `c` ports, each exactly once.
///
/// Order: assignment vectors lexicographically (truck 1 most significant),
/// then the per-port permutations lexicographically, port 1 most significant.
pub fn enumerate_orderings(n: usize, c: usize) -> Result<Orderings, SolveError> {
    guard(n, c, EXACT_MAX_TRUCKS)?;
    Ok(Orderings::new(n, c, false))
}

fn guard(n: usize, c: usize, limit: usize) -> Result<(), SolveError> {
    if n > limit {
        let count = ordering_count(n, c).map_or_else(|| "more than 2^128".into(), |k| format!("{k}"));
        return Err(SolveError::SizeGuard {
            what: "trucks",
            got: n,
            limit,
            detail: format!("{n} trucks on {c} ports give {count} orderings to evaluate"),
        });
    }
    Ok(())
}

/// Iterator returned by [`enumerate_orderings`].
#[derive(Debug, Clone)]
pub struct Orderings {
    ports: usize,
    assignment: Vec<usize>,
    groups: Vec<Vec<TruckId>>,
    /// Only emit restricted growth assignment vectors (one per port relabeling class).
    canonical: bool,
    done: bool,
}

impl Orderings {
    fn new(n: usize, ports: usize, canonical: bool) -> Self {
        let mut it = Orderings {
            ports,
            assignment: vec![0; n],
            groups: Vec::new(),
            canonical,
            done: ports == 0,
        };
        it.regroup();
        it
    }

    fn regroup(&mut self) {
        self.groups = vec![Vec::new(); self.ports];
        for (i, &port) in self.assignment.iter().enumerate() {
            self.groups[port].push(TruckId::from_index(i));
        }
    }

    /// Next assignment vector; false once all have been visited.
    fn next_assignment(&mut self) -> bool {
        let n = self.assignment.len();
        for i in (0..n).rev() {
            let limit = if self.canonical {
                // A truck may open at most one new port beyond those used before it.
                let used = self.assignment[..i].iter().max().map_or(0, |&m| m + 1);
                used.min(self.ports - 1)
            } else {
                self.ports - 1
            };
            if self.assignment[i] < limit {
                self.assignment[i] += 1;
                for a in &mut self.assignment[i + 1..] {
                    *a = 0;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Orderings {
    type Item = Ordering;

    fn next(&mut self) -> Option<Ordering> {
        if self.done {
            return None;
        }
        let current = Ordering::new(self.groups.clone());
        // Odometer over the per-port permutations, last port fastest.
        let advanced = self.groups.iter_mut().rev().any(|g| {
            if next_permutation(g) {
                true
            } else {
                g.sort_unstable();
                false
            }
        });
        if !advanced {
            if self.next_assignment() {
                self.regroup();
            } else {
                self.done = true;
            }
        }
        Some(current)
    }
}

/// Rearranges `v` into the next lexicographic permutation; false (leaving `v`
/// in its last permutation) when there is none.
fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|x| *x > v[i]).expect("v[i + 1] > v[i]");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// [`exact_solve_with`] under the default configuration.
pub fn exact_solve(instance: &Instance) -> Result<ExactSolution, SolveError> {
    exact_solve_with(instance, &ExactConfig::default())
}

/// Cheapest ordering by inner cost; ties go to the first in enumeration order.
pub fn exact_solve_with(instance: &Instance, config: &ExactConfig) -> Result<ExactSolution, SolveError> {
    let (n, c) = (instance.num_trucks(), instance.num_ports());
    guard(n, c, config.max_trucks)?;
    let powers = &instance.station().port_powers;
    let canonical = config.symmetry_pruning && powers.windows(2).all(|w| w[0] == w[1]);

    let mut best: Option<(Ordering, InnerSolution)> = None;
    let mut evaluated = 0u64;
    let mut infeasible = 0u64;
    let mut last_error = None;
    for ordering in Orderings::new(n, c, canonical) {
        evaluated += 1;
        match inner_solve_with(instance, &ordering, &config.inner) {
            Ok(solution) => {
                if best.as_ref().is_none_or(|(_, b)| solution.cost.total < b.cost.total) {
                    best = Some((ordering, solution));
                }
            }
            Err(e) => {
                infeasible += 1;
                last_error = Some(e);
            }
        }
    }
    match best {
        Some((ordering, solution)) => Ok(ExactSolution {
            ordering,
            solution,
            evaluated,
            infeasible,
        }),
        None => Err(last_error.unwrap_or(SolveError::InfeasibleInstance { stage: 0 })),
    }
}

#[cfg(test)]
mod tests {
    use alloc::collections::BTreeSet;

    use super::*;
    use crate::inner::inner_solve;
    use crate::model::instance::fixtures::flat_instance;
    use crate::policies::{base_order, PolicyKind};
    use crate::rollout::rollout_solve;

    fn ids(v: &[u32]) -> Vec<TruckId> {
        v.iter().map(|&i| TruckId(i)).collect()
    }

    fn all(n: usize, c: usize) -> Vec<Vec<Vec<TruckId>>> {
        enumerate_orderings(n, c).unwrap().map(|o| o.per_port).collect()
    }

    #[test]
    fn two_trucks_one_port() {
        assert_eq!(all(2, 1), vec![vec![ids(&[1, 2])], vec![ids(&[2, 1])]]);
    }

    #[test]
    fn two_trucks_two_ports() {
        let got = all(2, 2);
        let expected = vec![
            vec![ids(&[1, 2]), vec![]],
            vec![ids(&[2, 1]), vec![]],
            vec![ids(&[1]), ids(&[2])],
            vec![ids(&[2]), ids(&[1])],
            vec![vec![], ids(&[1, 2])],
            vec![vec![], ids(&[2, 1])],
        ];
        assert_eq!(got, expected);
    }

    #[test]
    fn one_truck_three_ports() {
        assert_eq!(all(1, 3).len(), 3);
    }

    #[test]
    fn counts_match_closed_form_without_duplicates() {
        for n in 0..=5 {
            for c in 1..=3 {
                let list = all(n, c);
                let distinct: BTreeSet<_> = list.iter().cloned().collect();
                assert_eq!(distinct.len(), list.len(), "n={n} c={c}");
                assert_eq!(list.len() as u128, ordering_count(n, c).unwrap(), "n={n} c={c}");
                for o in &list {
                    assert!(Ordering::new(o.clone()).validate(n, c).is_ok());
                }
            }
        }
        assert_eq!(ordering_count(8, 3), Some(40320 * 45));
    }

    #[test]
    fn canonical_enumeration_covers_each_relabeling_class_once() {
        // Set partitions of 4 labeled trucks into at most 2 blocks: S(4,1) + S(4,2) = 8,
        // each with its within-block permutations.
        let pruned: Vec<_> = Orderings::new(4, 2, true).collect();
        let classes: BTreeSet<_> = all(4, 2)
            .into_iter()
            .map(|mut o| {
                o.sort();
                o
            })
            .collect();
        assert_eq!(pruned.len(), classes.len());
    }

    #[test]
    fn guard_refuses_large_fleets() {
        let err = enumerate_orderings(9, 2).unwrap_err();
        assert!(matches!(err, SolveError::SizeGuard { got: 9, limit: 8, .. }));
        let inst = flat_instance(9, &[350.0, 350.0], 1000.0, 288);
        assert!(matches!(exact_solve(&inst), Err(SolveError::SizeGuard { .. })));
    }

    #[test]
    fn single_truck_is_the_best_singleton() {
        let inst = flat_instance(1, &[300.0, 350.0, 300.0], 1000.0, 48);
        let exact = exact_solve(&inst).unwrap();
        assert_eq!(exact.evaluated, 3);
        let best = (0..3)
            .map(|p| {
                let mut per_port = vec![vec![]; 3];
                per_port[p] = ids(&[1]);
                inner_solve(&inst, &Ordering::new(per_port)).unwrap().cost.total
            })
            .fold(f64::INFINITY, f64::min);
        assert_eq!(exact.solution.cost.total, best);
    }

    #[test]
    fn beats_every_heuristic_and_matches_on_symmetric_instances() {
        let inst = flat_instance(4, &[350.0, 350.0], 1000.0, 96);
        let exact = exact_solve(&inst).unwrap();
        for kind in PolicyKind::ALL {
            let base = inner_solve(&inst, &base_order(&inst, kind)).unwrap();
            assert!(exact.solution.cost.total <= base.cost.total);
            let rollout = rollout_solve(&inst, kind).unwrap();
            assert!((rollout.solution.cost.total - exact.solution.cost.total).abs() < 1e-9);
        }
    }

    #[test]
    fn pruning_agrees_with_full_search() {
        let inst = flat_instance(4, &[350.0, 350.0, 350.0], 700.0, 96);
        let full = exact_solve(&inst).unwrap();
        let pruned = exact_solve_with(
            &inst,
            &ExactConfig {
                symmetry_pruning: true,
                ..ExactConfig::default()
            },
        )
        .unwrap();
        assert!(pruned.evaluated < full.evaluated);
        assert!((pruned.solution.cost.total - full.solution.cost.total).abs() < 1e-9);
    }

    #[test]
    fn permutation_step() {
        let mut v = [1, 2, 3];
        let mut seen = vec![v];
        while next_permutation(&mut v) {
            seen.push(v);
        }
        assert_eq!(seen, vec![[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]]);
    }
}
