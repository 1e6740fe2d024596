//! Phase 2: power allocation inside fixed windows.
//!
//! When the per-truck cheapest-slot fills fit under the station cap they are
//! already the min-cost allocation. Otherwise a min-cost flow
//! `source -> truck -> slot -> sink` decides, with truck arcs capped by the
//! demand, truck-slot arcs by the effective cap and slot arcs by the station cap.

use alloc::vec;
use alloc::vec::Vec;

use crate::inner::flow::MinCostFlow;
use crate::inner::window::{greedy_fill, slot_cost_key, TruckCtx, Window};
use crate::inner::InnerStats;
use crate::model::{Instance, SlotEnergy};
use crate::units::Energy;

pub(crate) struct Allocation {
    /// Non-zero slot energies per truck, ascending by slot.
    pub profiles: Vec<Vec<SlotEnergy>>,
    /// Whether every demand is met.
    pub complete: bool,
}

impl Allocation {
    pub fn delivered(&self, truck: usize) -> Energy {
        self.profiles[truck].iter().map(|s| s.energy).sum()
    }
}

pub(crate) fn allocate(instance: &Instance, ctxs: &[TruckCtx], windows: &[Window], stats: &mut InnerStats) -> Allocation {
    if let Some(profiles) = independent_fill(instance, ctxs, windows) {
        return Allocation {
            profiles,
            complete: true,
        };
    }
    flow_fill(instance, ctxs, windows, stats)
}

fn independent_fill(instance: &Instance, ctxs: &[TruckCtx], windows: &[Window]) -> Option<Vec<Vec<SlotEnergy>>> {
    let cap = instance.station_slot_energy();
    let mut totals = vec![Energy::ZERO; instance.num_slots()];
    let mut profiles = Vec::with_capacity(ctxs.len());
    for (ctx, window) in ctxs.iter().zip(windows) {
        let profile = greedy_fill(instance, ctx, *window)?;
        for s in &profile {
            totals[s.slot] += s.energy;
            if totals[s.slot] > cap {
                return None;
            }
        }
        profiles.push(profile);
    }
    Some(profiles)
}

fn flow_fill(instance: &Instance, ctxs: &[TruckCtx], windows: &[Window], stats: &mut InnerStats) -> Allocation {
    let n = ctxs.len();
    let first_slot = windows.iter().map(|w| w.start).min().unwrap_or(0);
    let last_slot = windows.iter().map(|w| w.end).max().unwrap_or(0);
    let source = 0;
    let sink = 1 + n + (last_slot - first_slot);
    let slot_node = |slot: usize| 1 + n + (slot - first_slot);

    let mut graph = MinCostFlow::new(sink + 1);
    let mut truck_arcs = Vec::with_capacity(n);
    for (i, (ctx, window)) in ctxs.iter().zip(windows).enumerate() {
        graph.add_arc(source, 1 + i, ctx.demand.watt_minutes(), 0);
        let arcs: Vec<(usize, usize)> = (window.start..window.end)
            .map(|slot| {
                let id = graph.add_arc(
                    1 + i,
                    slot_node(slot),
                    ctx.slot_cap.watt_minutes(),
                    slot_cost_key(instance, slot),
                );
                (slot, id)
            })
            .collect();
        truck_arcs.push(arcs);
    }
    let station = instance.station_slot_energy().watt_minutes();
    for slot in first_slot..last_slot {
        graph.add_arc(slot_node(slot), sink, station, 0);
    }

    let outcome = graph.run(source, sink);
    stats.flow_augmentations += outcome.augmentations;

    let profiles = truck_arcs
        .iter()
        .map(|arcs| {
            arcs.iter()
                .filter_map(|&(slot, id)| {
                    let energy = Energy::from_watt_minutes(graph.flow_on(id));
                    (energy > Energy::ZERO).then_some(SlotEnergy { slot, energy })
                })
                .collect()
        })
        .collect();
    let demand: u64 = ctxs.iter().map(|c| c.demand.watt_minutes()).sum();
    Allocation {
        profiles,
        complete: outcome.flow == demand,
    }
}
