//! Rollout over charging orderings.
//!
//! The ordering is built one decision at a time: a decision appends an
//! unassigned truck to the end of one port's queue. At every stage each
//! possible decision is scored by completing the resulting partial state with
//! a base policy and solving the inner problem for the completed ordering;
//! the cheapest decision is applied.
//!
//! Since the base policies extend their own prefixes consistently, the
//! decision the base policy itself would take is always among the candidates,
//! so the chosen scores never increase from stage to stage and the final
//! ordering costs no more than the base ordering.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::SolveError;
use crate::inner::{inner_solve_with, InnerConfig, InnerSolution, InnerStats};
use crate::model::{CostBreakdown, Instance, Ordering, TruckId};
use crate::policies::{complete_in_order, earliest_port, next_free, PolicyKind};

/// A partially built ordering: per-port queues over a subset of the trucks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialState {
    per_port: Vec<Vec<TruckId>>,
    assigned: Vec<bool>,
    stage: usize,
}

impl PartialState {
    /// The empty state for `num_trucks` trucks and `num_ports` ports.
    pub fn new(num_trucks: usize, num_ports: usize) -> Self {
        PartialState {
            per_port: vec![Vec::new(); num_ports],
            assigned: vec![false; num_trucks],
            stage: 0,
        }
    }

    pub fn per_port(&self) -> &[Vec<TruckId>] {
        &self.per_port
    }

    /// Number of trucks assigned so far.
    pub fn stage(&self) -> usize {
        self.stage
    }

    pub fn num_ports(&self) -> usize {
        self.per_port.len()
    }

    pub fn num_trucks(&self) -> usize {
        self.assigned.len()
    }

    pub fn is_assigned(&self, id: TruckId) -> bool {
        self.assigned.get(id.index()).copied().unwrap_or(false)
    }

    pub fn is_complete(&self) -> bool {
        self.stage == self.assigned.len()
    }

    /// Unassigned trucks in ascending id order.
    pub fn unassigned(&self) -> impl Iterator<Item = TruckId> + '_ {
        self.assigned
            .iter()
            .enumerate()
            .filter(|(_, &done)| !done)
            .map(|(i, _)| TruckId::from_index(i))
    }

    /// Applies `action` in place.
    pub fn apply(&mut self, action: Action) -> Result<(), SolveError> {
        if action.port >= self.per_port.len() {
            return Err(SolveError::InvalidAction(format!(
                "port {} out of range for {} ports",
                action.port,
                self.per_port.len()
            )));
        }
        match self.assigned.get(action.truck.index()) {
            None => {
                return Err(SolveError::InvalidAction(format!("unknown truck {}", action.truck)));
            }
            Some(true) => {
                return Err(SolveError::InvalidAction(format!("truck {} is already assigned", action.truck)));
            }
            Some(false) => {}
        }
        self.assigned[action.truck.index()] = true;
        self.per_port[action.port].push(action.truck);
        self.stage += 1;
        Ok(())
    }

    /// The state after `action`.
    pub fn transition(&self, action: Action) -> Result<PartialState, SolveError> {
        let mut next = self.clone();
        next.apply(action)?;
        Ok(next)
    }

    /// The ordering of a complete state.
    pub fn into_ordering(self) -> Option<Ordering> {
        self.is_complete().then(|| Ordering::new(self.per_port))
    }
}

/// Append `truck` to the queue of `port` (zero-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Action {
    pub truck: TruckId,
    pub port: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RolloutConfig {
    pub inner: InnerConfig,
}

/// One scored decision. Infeasible completions score `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub action: Action,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StageRecord {
    /// Candidates in evaluation order: trucks by id, then ports.
    pub candidates: Vec<Candidate>,
    pub chosen: Action,
    pub chosen_cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RolloutTrace {
    pub base: PolicyKind,
    pub stages: Vec<StageRecord>,
    /// The returned ordering; the base ordering if the guard fired.
    pub ordering: Ordering,
    pub solution: InnerSolution,
    /// Ordering built by the base policy alone and its cost.
    pub base_ordering: Ordering,
    pub base_cost: CostBreakdown,
    /// Calls to the inner solver, including the final re-solve.
    pub inner_evaluations: u64,
    /// Summed statistics of all inner solves.
    pub inner_stats: InnerStats,
    /// Set when the rollout ordering came out more expensive than the base
    /// ordering and the latter was returned instead.
    pub guard_triggered: bool,
}

impl RolloutTrace {
    /// Cost reduction relative to the base ordering, in percent.
    pub fn reduction_percent(&self) -> f64 {
        if self.base_cost.total > 0.0 && self.base_cost.total.is_finite() {
            100.0 * (self.base_cost.total - self.solution.cost.total) / self.base_cost.total
        } else {
            0.0
        }
    }
}

/// [`rollout_solve_with`] under the default configuration.
pub fn rollout_solve(instance: &Instance, base: PolicyKind) -> Result<RolloutTrace, SolveError> {
    rollout_solve_with(instance, base, &RolloutConfig::default())
}

pub fn rollout_solve_with(
    instance: &Instance,
    base: PolicyKind,
    config: &RolloutConfig,
) -> Result<RolloutTrace, SolveError> {
    let priority = base.priority(instance);
    let mut state = PartialState::new(instance.num_trucks(), instance.num_ports());
    let mut stages = Vec::with_capacity(instance.num_trucks());
    let mut evaluations = 0u64;
    let mut inner_stats = InnerStats::default();
    let mut base_run: Option<(Ordering, Option<InnerSolution>)> = None;

    while !state.is_complete() {
        let base_action = base_action(instance, &state, &priority);
        let mut candidates = Vec::new();
        let mut best: Option<Candidate> = None;
        for truck in state.unassigned() {
            for port in 0..instance.num_ports() {
                let action = Action { truck, port };
                let next = state.transition(action)?;
                let ordering = complete_in_order(instance, &next, &priority);
                evaluations += 1;
                let outcome = inner_solve_with(instance, &ordering, &config.inner);
                let cost = match &outcome {
                    Ok(solution) => {
                        inner_stats += solution.stats;
                        solution.cost.total
                    }
                    Err(_) => f64::INFINITY,
                };
                // The base policy's own first decision completes to the base ordering.
                if state.stage() == 0 && action == base_action {
                    base_run = Some((ordering, outcome.ok()));
                }
                let candidate = Candidate { action, cost };
                // Strict improvement keeps the first minimum in (truck, port) order.
                if best.is_none_or(|b| cost < b.cost) {
                    best = Some(candidate);
                }
                candidates.push(candidate);
            }
        }
        let chosen = best.expect("an incomplete state has candidates");
        if chosen.cost.is_infinite() {
            return Err(SolveError::InfeasibleInstance { stage: state.stage() });
        }
        state.apply(chosen.action)?;
        stages.push(StageRecord {
            candidates,
            chosen: chosen.action,
            chosen_cost: chosen.cost,
        });
    }

    let (base_ordering, base_solution) = base_run.expect("stage 0 scores the base decision");
    let ordering = state.into_ordering().expect("loop ends on a complete state");
    evaluations += 1;
    let solution = inner_solve_with(instance, &ordering, &config.inner)?;
    inner_stats += solution.stats;

    let base_cost = base_solution.as_ref().map_or(CostBreakdown::INFEASIBLE, |s| s.cost);
    let (ordering, solution, guard_triggered) = match base_solution {
        Some(base) if base.cost.total < solution.cost.total => (base_ordering.clone(), base, true),
        _ => (ordering, solution, false),
    };

    Ok(RolloutTrace {
        base,
        stages,
        ordering,
        solution,
        base_ordering,
        base_cost,
        inner_evaluations: evaluations,
        inner_stats,
        guard_triggered,
    })
}

/// Expected number of inner solves for `n` trucks and `c` ports.
pub fn expected_evaluations(n: usize, c: usize) -> u64 {
    (c * n * (n + 1) / 2) as u64 + 1
}

/// The decision the base policy takes next from `state`.
fn base_action(instance: &Instance, state: &PartialState, priority: &[TruckId]) -> Action {
    let truck = *priority
        .iter()
        .find(|&&id| !state.is_assigned(id))
        .expect("state is incomplete");
    let available: Vec<usize> = state
        .per_port()
        .iter()
        .enumerate()
        .map(|(port, seq)| seq.iter().fold(0, |free, &id| next_free(instance, free, id, port)))
        .collect();
    Action {
        truck,
        port: earliest_port(&available),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inner::inner_solve;
    use crate::model::instance::fixtures::{flat_instance, table_tariff};
    use crate::model::{StationSpec, Timeline, TruckSpec};
    use crate::policies::{base_order, complete_partial};
    use crate::units::{Energy, Power};

    fn ids(v: &[u32]) -> Vec<TruckId> {
        v.iter().map(|&i| TruckId(i)).collect()
    }

    fn mixed_instance(n: u32, ports: &[f64], cap_kw: f64) -> Instance {
        let trucks = (1..=n)
            .map(|i| {
                let demand = 90.0 + (i * 37 % 200) as f64;
                let arrival = 480 + (i as i64 * 13) % 30;
                TruckSpec {
                    id: TruckId(i),
                    arrival,
                    initial_energy: Energy::from_kwh(468.0 - demand),
                    demand: Energy::from_kwh(demand),
                    capacity: Energy::from_kwh(468.0),
                    deadline: arrival as f64 + 1.5 * demand / 350.0 * 60.0,
                    power_cap: Power::from_kw(350.0),
                    waiting_rate: 2.0,
                    tardiness_rate: 10.0,
                }
            })
            .collect();
        let station = StationSpec::new(ports.iter().map(|&p| Power::from_kw(p)).collect(), Power::from_kw(cap_kw)).unwrap();
        Instance::new(trucks, station, table_tariff(), Timeline::new(0, 5, 288).unwrap()).unwrap()
    }

    #[test]
    fn transition_appends() {
        let s = PartialState::new(3, 2).transition(Action { truck: TruckId(3), port: 1 }).unwrap();
        assert_eq!(s.per_port(), &[vec![], ids(&[3])]);
        assert_eq!(s.stage(), 1);

        let mut s = PartialState::new(3, 2);
        s.apply(Action { truck: TruckId(1), port: 0 }).unwrap();
        s.apply(Action { truck: TruckId(2), port: 1 }).unwrap();
        let s = s.transition(Action { truck: TruckId(3), port: 0 }).unwrap();
        assert_eq!(s.per_port(), &[ids(&[1, 3]), ids(&[2])]);
        assert!(s.is_complete());
        assert!(s.into_ordering().unwrap().validate(3, 2).is_ok());
    }

    #[test]
    fn transition_rejects_bad_actions() {
        let s = PartialState::new(2, 2).transition(Action { truck: TruckId(1), port: 0 }).unwrap();
        assert!(matches!(s.transition(Action { truck: TruckId(1), port: 1 }), Err(SolveError::InvalidAction(_))));
        assert!(matches!(s.transition(Action { truck: TruckId(2), port: 2 }), Err(SolveError::InvalidAction(_))));
        assert!(matches!(s.transition(Action { truck: TruckId(3), port: 0 }), Err(SolveError::InvalidAction(_))));
        assert_eq!(s.unassigned().collect::<Vec<_>>(), ids(&[2]));
    }

    #[test]
    fn single_truck_prefers_the_first_of_equal_ports() {
        let inst = flat_instance(1, &[350.0, 350.0], 1000.0, 48);
        let trace = rollout_solve(&inst, PolicyKind::Fcfs).unwrap();
        assert_eq!(trace.ordering.per_port, vec![ids(&[1]), vec![]]);
        let direct = inner_solve(&inst, &Ordering::new(vec![ids(&[1]), vec![]])).unwrap();
        assert_eq!(trace.stages[0].candidates[0].cost, direct.cost.total);
        assert_eq!(trace.inner_evaluations, 3);
    }

    #[test]
    fn single_truck_prefers_the_stronger_port() {
        let inst = flat_instance(1, &[300.0, 350.0], 1000.0, 48);
        let trace = rollout_solve(&inst, PolicyKind::Fcfs).unwrap();
        // Same energy either way, but 350 kW finishes sooner: no tardiness vs. some.
        assert!(trace.stages[0].candidates[1].cost <= trace.stages[0].candidates[0].cost);
    }

    #[test]
    fn stage_zero_matches_direct_completion() {
        let inst = mixed_instance(3, &[350.0], 1000.0);
        let trace = rollout_solve(&inst, PolicyKind::Fcfs).unwrap();
        let stage = &trace.stages[0];
        assert_eq!(stage.candidates.len(), 3);
        for c in &stage.candidates {
            let state = PartialState::new(3, 1).transition(c.action).unwrap();
            let ordering = complete_partial(&inst, &state, PolicyKind::Fcfs).unwrap();
            assert_eq!(c.cost, inner_solve(&inst, &ordering).unwrap().cost.total);
        }
        let min = stage.candidates.iter().map(|c| c.cost).fold(f64::INFINITY, f64::min);
        assert_eq!(stage.chosen_cost, min);
    }

    #[test]
    fn last_stage_scores_the_complete_ordering() {
        let inst = mixed_instance(4, &[350.0, 300.0], 1000.0);
        let trace = rollout_solve(&inst, PolicyKind::Edf).unwrap();
        let last = trace.stages.last().unwrap();
        assert_eq!(last.candidates.len(), 2);
        assert_eq!(last.chosen_cost, trace.solution.cost.total);
    }

    #[test]
    fn counts_inner_evaluations() {
        for (n, ports) in [(1, &[350.0][..]), (3, &[350.0, 300.0][..]), (5, &[350.0, 300.0, 350.0][..])] {
            let inst = mixed_instance(n, ports, 1000.0);
            let trace = rollout_solve(&inst, PolicyKind::Scdf).unwrap();
            assert_eq!(trace.inner_evaluations, expected_evaluations(n as usize, ports.len()));
        }
    }

    #[test]
    fn never_worse_than_the_base() {
        for n in 2..=6 {
            let inst = mixed_instance(n, &[350.0, 300.0, 350.0], 1000.0);
            for kind in PolicyKind::ALL {
                let trace = rollout_solve(&inst, kind).unwrap();
                let base = inner_solve(&inst, &base_order(&inst, kind)).unwrap();
                assert_eq!(trace.base_ordering, base_order(&inst, kind));
                assert_eq!(trace.base_cost, base.cost);
                assert!(trace.solution.cost.total <= base.cost.total * (1.0 + 1e-9));
                assert!(!trace.guard_triggered);
                // Chosen scores never increase.
                for pair in trace.stages.windows(2) {
                    assert!(pair[1].chosen_cost <= pair[0].chosen_cost);
                }
            }
        }
    }

    #[test]
    fn deterministic() {
        let inst = mixed_instance(5, &[350.0, 300.0], 600.0);
        assert_eq!(rollout_solve(&inst, PolicyKind::Edf).unwrap(), rollout_solve(&inst, PolicyKind::Edf).unwrap());
    }

    #[test]
    fn infeasible_instance() {
        // Twelve trucks on one port cannot all finish inside a 2-hour horizon.
        let inst = flat_instance(12, &[350.0], 1000.0, 24);
        assert!(matches!(rollout_solve(&inst, PolicyKind::Fcfs), Err(SolveError::InfeasibleInstance { stage: 0 })));
    }
}
