//! Named solving pipelines: `fcfs`, `edf`, `scdf`, `rollout:<base>` and `exact`.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use fleetcharge_core::exact::exact_solve;
use fleetcharge_core::{base_order, inner_solve, rollout_solve, Instance, InnerSolution, Ordering, PolicyKind, RolloutTrace, SolveError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Policy {
    Base(PolicyKind),
    Rollout(PolicyKind),
    Exact,
}

impl Policy {
    /// The three base policies followed by their rollouts.
    pub const HEURISTICS: [Policy; 6] = [
        Policy::Base(PolicyKind::Fcfs),
        Policy::Base(PolicyKind::Edf),
        Policy::Base(PolicyKind::Scdf),
        Policy::Rollout(PolicyKind::Fcfs),
        Policy::Rollout(PolicyKind::Edf),
        Policy::Rollout(PolicyKind::Scdf),
    ];
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::Base(kind) => write!(f, "{kind}"),
            Policy::Rollout(kind) => write!(f, "rollout:{kind}"),
            Policy::Exact => f.write_str("exact"),
        }
    }
}

impl FromStr for Policy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        let unknown = || format!("unknown policy `{s}`; expected fcfs, edf, scdf, rollout:<fcfs|edf|scdf> or exact");
        if s == "exact" {
            return Ok(Policy::Exact);
        }
        if let Some(base) = s.strip_prefix("rollout:") {
            return base.parse().map(Policy::Rollout).map_err(|_| unknown());
        }
        s.parse().map(Policy::Base).map_err(|_| unknown())
    }
}

/// What one pipeline produced.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub policy: Policy,
    pub ordering: Ordering,
    pub solution: InnerSolution,
    /// Inner solver calls made by the pipeline.
    pub inner_evaluations: u64,
    /// Wall time of the solve alone.
    pub elapsed: Duration,
    pub trace: Option<RolloutTrace>,
}

pub fn run_policy(instance: &Instance, policy: Policy) -> Result<RunOutcome, SolveError> {
    let started = Instant::now();
    let (ordering, solution, inner_evaluations, trace) = match policy {
        Policy::Base(kind) => {
            let ordering = base_order(instance, kind);
            let solution = inner_solve(instance, &ordering)?;
            (ordering, solution, 1, None)
        }
        Policy::Rollout(kind) => {
            let trace = rollout_solve(instance, kind)?;
            (trace.ordering.clone(), trace.solution.clone(), trace.inner_evaluations, Some(trace))
        }
        Policy::Exact => {
            let exact = exact_solve(instance)?;
            (exact.ordering, exact.solution, exact.evaluated, None)
        }
    };
    Ok(RunOutcome {
        policy,
        ordering,
        solution,
        inner_evaluations,
        elapsed: started.elapsed(),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for p in Policy::HEURISTICS.into_iter().chain([Policy::Exact]) {
            assert_eq!(p.to_string().parse::<Policy>(), Ok(p));
        }
        assert_eq!("Rollout:EDF".parse::<Policy>(), Ok(Policy::Rollout(PolicyKind::Edf)));
        assert!("rollout:exact".parse::<Policy>().is_err());
        assert!("lifo".parse::<Policy>().is_err());
    }
}
