//! The inner layer: start times and per-slot power for a fixed ordering.
//!
//! [`inner_solve`] runs three phases:
//!
//! 1. **Timing** – per port, a small DP picks each truck's slot window
//!    (start and length), ignoring the station cap.
//! 2. **Allocation** – inside the fixed windows, energy goes to the cheapest
//!    slots; a min-cost flow takes over when the station cap binds.
//! 3. **Repair** – while demand is still unmet, the truck with the largest
//!    unmet fraction gets one more slot at its tail and its successors on the
//!    same port slide right.
//!
//! When repair was needed, the cap binds and the cap-blind windows may be
//! far from good. The timing DP is then rerun port by port against the
//! capacity left by the ports planned before, once for each rotation of the
//! port order, and the cheapest resulting schedule wins.
//!
//! [`inner_bruteforce`] enumerates every window combination on tiny
//! instances and is used to measure how far the heuristic is from the best
//! slot-aligned schedule.

mod allocate;
mod bruteforce;
mod flow;
mod timing;
mod window;

use alloc::vec::Vec;
use core::iter;

use crate::error::SolveError;
use crate::model::{evaluate_cost, CostBreakdown, Instance, Ordering, Schedule, SlotEnergy};

pub use bruteforce::{inner_bruteforce, BRUTEFORCE_MAX_SLOTS, BRUTEFORCE_MAX_TRUCKS};

use allocate::allocate;
use window::{build_entry, entry_cost, truck_contexts, TruckCtx, Window};

/// Tuning knobs of [`inner_solve_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InnerConfig {
    /// Price changes after the earliest start that are tried as delayed starts.
    pub lookahead_breakpoints: usize,
    /// Extra slots a window may take beyond its full-power length.
    /// `None` allows up to the full-power length again.
    pub max_tail_extension: Option<usize>,
}

impl Default for InnerConfig {
    fn default() -> Self {
        InnerConfig {
            lookahead_breakpoints: 3,
            max_tail_extension: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct InnerStats {
    /// Candidate windows priced by the timing DP.
    pub timing_states: u64,
    /// Augmenting paths found by the min-cost flow.
    pub flow_augmentations: u64,
    /// Window extensions made by the repair loop.
    pub repair_iterations: u64,
}

impl core::ops::AddAssign for InnerStats {
    fn add_assign(&mut self, rhs: InnerStats) {
        self.timing_states += rhs.timing_states;
        self.flow_augmentations += rhs.flow_augmentations;
        self.repair_iterations += rhs.repair_iterations;
    }
}

/// A feasible schedule for one ordering and its cost.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerSolution {
    pub schedule: Schedule,
    pub cost: CostBreakdown,
    pub stats: InnerStats,
}

/// [`inner_solve_with`] under the default configuration.
pub fn inner_solve(instance: &Instance, ordering: &Ordering) -> Result<InnerSolution, SolveError> {
    inner_solve_with(instance, ordering, &InnerConfig::default())
}

pub fn inner_solve_with(
    instance: &Instance,
    ordering: &Ordering,
    config: &InnerConfig,
) -> Result<InnerSolution, SolveError> {
    ordering.validate(instance.num_trucks(), instance.num_ports())?;
    check_total_demand(instance)?;

    let ctxs = truck_contexts(instance, ordering);
    let mut stats = InnerStats::default();
    let windows = timing::plan_windows(instance, ordering, &ctxs, config, &mut stats)?;
    let first = allocate_and_repair(instance, ordering, &ctxs, windows, &mut stats);
    if stats.repair_iterations == 0 {
        return first.map(|profiles| assemble(instance, ordering, &ctxs, profiles, stats));
    }

    let ports = instance.num_ports();
    let mut best: Option<(f64, Vec<Vec<SlotEnergy>>)> = None;
    let mut first_error = None;
    let plans = iter::once(first).chain((0..ports).map(|r| {
        let order = (0..ports).map(|k| (r + k) % ports);
        match timing::plan_windows_residual(instance, ordering, &ctxs, config, order, &mut stats) {
            Some(windows) => allocate_and_repair(instance, ordering, &ctxs, windows, &mut stats),
            None => Err(SolveError::HorizonExceeded {
                truck: ctxs[0].id,
                num_slots: instance.num_slots(),
            }),
        }
    }));
    for plan in plans.collect::<Vec<_>>() {
        match plan {
            Ok(profiles) => {
                let cost = profile_cost(instance, &ctxs, &profiles);
                if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                    best = Some((cost, profiles));
                }
            }
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    match best {
        Some((_, profiles)) => Ok(assemble(instance, ordering, &ctxs, profiles, stats)),
        None => Err(first_error.expect("the cap-blind plan ran")),
    }
}

/// Allocates inside `windows`, extending windows until every demand is met.
fn allocate_and_repair(
    instance: &Instance,
    ordering: &Ordering,
    ctxs: &[TruckCtx],
    mut windows: Vec<Window>,
    stats: &mut InnerStats,
) -> Result<Vec<Vec<SlotEnergy>>, SolveError> {
    loop {
        let allocation = allocate(instance, ctxs, &windows, stats);
        if allocation.complete {
            return Ok(allocation.profiles);
        }
        repair_step(instance, ordering, ctxs, &mut windows, &allocation)?;
        stats.repair_iterations += 1;
    }
}

fn profile_cost(instance: &Instance, ctxs: &[TruckCtx], profiles: &[Vec<SlotEnergy>]) -> f64 {
    ctxs.iter()
        .zip(profiles)
        .map(|(ctx, profile)| entry_cost(instance, &build_entry(instance, ctx, profile.clone())))
        .sum()
}

fn check_total_demand(instance: &Instance) -> Result<(), SolveError> {
    let demand = instance.total_demand();
    let deliverable = instance.station_slot_energy().watt_minutes() as u128 * instance.num_slots() as u128;
    if demand.watt_minutes() as u128 > deliverable {
        return Err(SolveError::InfeasibleDemand {
            demand_kwh: demand.kwh(),
            deliverable_kwh: deliverable as f64 / 60_000.0,
        });
    }
    Ok(())
}

/// Gives the truck with the largest unmet share of its demand one more slot,
/// then pushes later trucks on its port right so they do not overlap.
fn repair_step(
    instance: &Instance,
    ordering: &Ordering,
    ctxs: &[TruckCtx],
    windows: &mut [Window],
    allocation: &allocate::Allocation,
) -> Result<(), SolveError> {
    let horizon = instance.num_slots();
    let unmet = |i: usize| ctxs[i].demand.saturating_sub(allocation.delivered(i)).watt_minutes() as u128;
    let mut worst = None;
    for i in 0..ctxs.len() {
        if unmet(i) == 0 {
            continue;
        }
        // unmet_i / demand_i > unmet_w / demand_w, compared exactly.
        let better = worst.is_none_or(|w: usize| {
            unmet(i) * ctxs[w].demand.watt_minutes() as u128 > unmet(w) * ctxs[i].demand.watt_minutes() as u128
        });
        if better {
            worst = Some(i);
        }
    }
    let worst = worst.expect("an incomplete allocation leaves some demand unmet");

    let ctx = &ctxs[worst];
    if windows[worst].end + 1 > horizon {
        return Err(SolveError::HorizonExceeded {
            truck: ctx.id,
            num_slots: horizon,
        });
    }
    windows[worst].end += 1;

    let seq = &ordering.per_port[ctx.port];
    let position = seq.iter().position(|&id| id == ctx.id).expect("truck is on its port");
    let mut previous_end = windows[worst].end;
    for &next in &seq[position + 1..] {
        let w = &mut windows[next.index()];
        if w.start >= previous_end {
            break;
        }
        let shift = previous_end - w.start;
        w.start += shift;
        w.end += shift;
        if w.end > horizon {
            return Err(SolveError::HorizonExceeded {
                truck: next,
                num_slots: horizon,
            });
        }
        previous_end = w.end;
    }
    Ok(())
}

fn assemble(
    instance: &Instance,
    ordering: &Ordering,
    ctxs: &[TruckCtx],
    profiles: Vec<Vec<SlotEnergy>>,
    stats: InnerStats,
) -> InnerSolution {
    let trucks = ctxs
        .iter()
        .zip(profiles)
        .map(|(ctx, profile)| build_entry(instance, ctx, profile))
        .collect();
    let schedule = Schedule {
        ordering: ordering.clone(),
        trucks,
    };
    let cost = evaluate_cost(instance, &schedule);
    InnerSolution { schedule, cost, stats }
}

#[cfg(test)]
mod tests;
