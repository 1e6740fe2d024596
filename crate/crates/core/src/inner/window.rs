use alloc::vec::Vec;

use crate::model::{Instance, Ordering, SlotEnergy, TruckId, TruckSchedule};
use crate::units::Energy;

/// Half-open slot range `[start, end)` reserved for one truck on its port.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Window {
    pub start: usize,
    pub end: usize,
}

/// Per-truck data the inner layer needs once the port is known.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TruckCtx {
    pub id: TruckId,
    pub port: usize,
    pub slot_cap: Energy,
    pub demand: Energy,
    pub arrival_slot: usize,
    pub nominal_slots: usize,
}

pub(crate) fn truck_contexts(instance: &Instance, ordering: &Ordering) -> Vec<TruckCtx> {
    let ports = ordering.port_of_each(instance.num_trucks());
    instance
        .trucks()
        .iter()
        .map(|t| {
            let port = ports[t.id.index()];
            TruckCtx {
                id: t.id,
                port,
                slot_cap: instance.slot_energy_cap(t.id, port),
                demand: t.demand,
                arrival_slot: instance.arrival_slot(t.id),
                nominal_slots: instance.nominal_slots(t.id, port),
            }
        })
        .collect()
}

/// Cost key of giving one unit of energy to a truck in `slot`: price first,
/// then earlier slots, so equal-price energy is packed towards the front and
/// the truck finishes as early as possible.
#[inline]
pub(crate) fn slot_cost_key(instance: &Instance, slot: usize) -> i64 {
    instance.slot_price_key(slot) * (instance.num_slots() as i64 + 1) + slot as i64
}

/// Cheapest-slots-first fill of one truck inside `window`, ignoring the
/// station cap. This is the exact min-cost allocation for a single truck.
/// Returns `None` when the window is too short.
pub(crate) fn greedy_fill(instance: &Instance, ctx: &TruckCtx, window: Window) -> Option<Vec<SlotEnergy>> {
    greedy_fill_within(instance, ctx, window, None)
}

/// [`greedy_fill`] with each slot further limited to `free[slot]`.
pub(crate) fn greedy_fill_within(
    instance: &Instance,
    ctx: &TruckCtx,
    window: Window,
    free: Option<&[Energy]>,
) -> Option<Vec<SlotEnergy>> {
    let mut slots: Vec<usize> = (window.start..window.end).collect();
    slots.sort_unstable_by_key(|&s| slot_cost_key(instance, s));
    let mut remaining = ctx.demand;
    let mut profile = Vec::new();
    for slot in slots {
        if remaining == Energy::ZERO {
            break;
        }
        let cap = free.map_or(ctx.slot_cap, |f| f[slot].min(ctx.slot_cap));
        let energy = remaining.min(cap);
        if energy == Energy::ZERO {
            continue;
        }
        remaining -= energy;
        profile.push(SlotEnergy { slot, energy });
    }
    if remaining > Energy::ZERO {
        return None;
    }
    profile.sort_unstable_by_key(|s| s.slot);
    Some(profile)
}

/// Schedule entry for a truck given its non-zero slot energies (ascending).
///
/// Charging starts at the first active slot. Inside the last active slot the
/// truck charges at its effective cap until the demand is met, which places
/// the finish time proportionally inside that slot.
pub(crate) fn build_entry(instance: &Instance, ctx: &TruckCtx, profile: Vec<SlotEnergy>) -> TruckSchedule {
    let timeline = instance.timeline();
    let delta = timeline.slot_minutes as f64;
    let first = profile.first().expect("positive demand gives a non-empty profile");
    let last = profile.last().expect("positive demand gives a non-empty profile");
    let fraction = last.energy.watt_minutes() as f64 / ctx.slot_cap.watt_minutes() as f64;
    TruckSchedule {
        truck: ctx.id,
        port: ctx.port,
        start_time: timeline.slot_start(first.slot) as f64,
        finish_time: timeline.slot_start(last.slot) as f64 + delta * fraction,
        profile,
    }
}

/// Waiting + tardiness + energy cost of one entry, without price grouping.
pub(crate) fn entry_cost(instance: &Instance, entry: &TruckSchedule) -> f64 {
    let truck = instance.truck(entry.truck);
    let energy: f64 = entry
        .profile
        .iter()
        .map(|s| instance.slot_price(s.slot) * s.energy.kwh())
        .sum();
    let late = entry.finish_time - truck.deadline;
    let tardiness = if late > 0.0 { truck.tardiness_rate * late } else { 0.0 };
    energy + truck.waiting_rate * (entry.start_time - truck.arrival as f64) + tardiness
}
