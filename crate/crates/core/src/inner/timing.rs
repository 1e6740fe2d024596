//! Phase 1: charging windows per port, ignoring the station cap or, in the
//! residual variant, against the capacity earlier ports left free.
//!
//! Trucks on a port are processed in sequence. A truck may start at its
//! earliest slot (arrival, or the end of its predecessor's window) or at one
//! of the next few price changes, and its window may run past the
//! full-power length when later slots are cheaper. Each candidate window is
//! priced exactly for that truck alone (cheapest slots first). States are
//! keyed by window end, since that is all a successor depends on, and only
//! the Pareto front of (end, cost) is kept per position.

use alloc::vec;
use alloc::vec::Vec;
use core::iter;

use crate::error::SolveError;
use crate::inner::window::{build_entry, entry_cost, greedy_fill_within, slot_cost_key, TruckCtx, Window};
use crate::inner::{InnerConfig, InnerStats};
use crate::model::{Instance, Ordering, TruckId};
use crate::units::Energy;

#[derive(Debug, Clone, Copy)]
struct Node {
    end: usize,
    cost: f64,
    parent: usize,
    window: Window,
}

pub(crate) fn plan_windows(
    instance: &Instance,
    ordering: &Ordering,
    ctxs: &[TruckCtx],
    config: &InnerConfig,
    stats: &mut InnerStats,
) -> Result<Vec<Window>, SolveError> {
    let mut windows = vec![Window { start: 0, end: 0 }; instance.num_trucks()];
    for seq in &ordering.per_port {
        plan_port(instance, seq, ctxs, config, None, &mut windows, stats)?;
    }
    Ok(windows)
}

/// Plans the ports one at a time in `port_order`, pricing each window
/// against the station capacity the ports planned before it left free.
/// Returns `None` when some truck finds no window with enough free capacity.
pub(crate) fn plan_windows_residual(
    instance: &Instance,
    ordering: &Ordering,
    ctxs: &[TruckCtx],
    config: &InnerConfig,
    port_order: impl IntoIterator<Item = usize>,
    stats: &mut InnerStats,
) -> Option<Vec<Window>> {
    let mut windows = vec![Window { start: 0, end: 0 }; instance.num_trucks()];
    let mut free = vec![instance.station_slot_energy(); instance.num_slots()];
    for port in port_order {
        let seq = &ordering.per_port[port];
        plan_port(instance, seq, ctxs, config, Some(&free), &mut windows, stats).ok()?;
        for &id in seq {
            let ctx = &ctxs[id.index()];
            let profile = greedy_fill_within(instance, ctx, windows[id.index()], Some(&free))?;
            for s in profile {
                free[s.slot] -= s.energy;
            }
        }
    }
    Some(windows)
}

fn plan_port(
    instance: &Instance,
    seq: &[TruckId],
    ctxs: &[TruckCtx],
    config: &InnerConfig,
    free: Option<&[Energy]>,
    windows: &mut [Window],
    stats: &mut InnerStats,
) -> Result<(), SolveError> {
    if seq.is_empty() {
        return Ok(());
    }
    let horizon = instance.num_slots();
    let changes = instance.price_change_slots();
    let mut layers: Vec<Vec<Node>> = Vec::with_capacity(seq.len() + 1);
    layers.push(vec![Node {
        end: 0,
        cost: 0.0,
        parent: usize::MAX,
        window: Window { start: 0, end: 0 },
    }]);

    for &id in seq {
        let ctx = &ctxs[id.index()];
        let extension = config.max_tail_extension.unwrap_or(ctx.nominal_slots);
        let previous = layers.last().expect("layers start non-empty");
        let mut candidates = Vec::new();

        for (parent, node) in previous.iter().enumerate() {
            let earliest = ctx.arrival_slot.max(node.end);
            let next_change = changes.partition_point(|&s| s <= earliest);
            let starts = iter::once(earliest).chain(
                changes[next_change..]
                    .iter()
                    .copied()
                    .take(config.lookahead_breakpoints),
            );
            for start in starts {
                let shortest = start + ctx.nominal_slots;
                if shortest > horizon {
                    break;
                }
                // Without a capacity limit the shortest window always fits;
                // with one, the extension counts from the first window that fits.
                let mut longest = (shortest + extension).min(horizon);
                let mut fitted = false;
                let mut most_expensive_used = i64::MAX;
                let mut end = shortest;
                while end <= longest {
                    // A longer window only changes the fill if the new
                    // slot beats the priciest slot in use.
                    if fitted && slot_cost_key(instance, end - 1) >= most_expensive_used {
                        end += 1;
                        continue;
                    }
                    let window = Window { start, end };
                    stats.timing_states += 1;
                    let Some(profile) = greedy_fill_within(instance, ctx, window, free) else {
                        if !fitted {
                            longest = (end + 1 + extension).min(horizon);
                        }
                        end += 1;
                        continue;
                    };
                    fitted = true;
                    most_expensive_used = profile
                        .iter()
                        .map(|s| slot_cost_key(instance, s.slot))
                        .max()
                        .unwrap_or(i64::MIN);
                    let entry = build_entry(instance, ctx, profile);
                    candidates.push(Node {
                        end,
                        cost: node.cost + entry_cost(instance, &entry),
                        parent,
                        window,
                    });
                    end += 1;
                }
            }
        }

        if candidates.is_empty() {
            return Err(SolveError::HorizonExceeded {
                truck: id,
                num_slots: horizon,
            });
        }
        layers.push(pareto_front(candidates));
    }

    // The front is sorted by end with strictly falling cost: the last node is cheapest.
    let mut position = layers.len() - 1;
    let mut node = *layers[position].last().expect("non-empty front");
    loop {
        windows[seq[position - 1].index()] = node.window;
        position -= 1;
        if position == 0 {
            break;
        }
        node = layers[position][node.parent];
    }
    Ok(())
}

/// Keeps the nodes no other node beats on both end slot and cost.
fn pareto_front(mut candidates: Vec<Node>) -> Vec<Node> {
    candidates.sort_by(|a, b| a.end.cmp(&b.end).then(a.cost.total_cmp(&b.cost)));
    let mut front: Vec<Node> = Vec::new();
    for node in candidates {
        if front.last().is_none_or(|best| node.cost < best.cost) {
            if front.last().is_some_and(|best| best.end == node.end) {
                continue;
            }
            front.push(node);
        }
    }
    front
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(end: usize, cost: f64) -> Node {
        Node {
            end,
            cost,
            parent: 0,
            window: Window { start: 0, end },
        }
    }

    #[test]
    fn front_drops_dominated_states() {
        let front = pareto_front(vec![node(5, 10.0), node(4, 12.0), node(6, 11.0), node(7, 9.0), node(4, 11.0)]);
        let kept: Vec<_> = front.iter().map(|n| (n.end, n.cost)).collect();
        assert_eq!(kept, vec![(4, 11.0), (5, 10.0), (7, 9.0)]);
    }
}
