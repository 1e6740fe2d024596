use alloc::collections::BTreeMap;

use crate::model::{Instance, Schedule, TruckSchedule};

/// The objective split into its three parts, in euros.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CostBreakdown {
    pub energy: f64,
    pub waiting: f64,
    pub tardiness: f64,
    /// `energy + waiting + tardiness`, summed in that order.
    pub total: f64,
}

impl CostBreakdown {
    pub fn new(energy: f64, waiting: f64, tardiness: f64) -> Self {
        CostBreakdown {
            energy,
            waiting,
            tardiness,
            total: energy + waiting + tardiness,
        }
    }

    pub const INFEASIBLE: CostBreakdown = CostBreakdown {
        energy: f64::INFINITY,
        waiting: f64::INFINITY,
        tardiness: f64::INFINITY,
        total: f64::INFINITY,
    };
}

/// Energy is grouped by price before converting to euros, so the energy
/// cost under a constant price is exactly `price * total_kwh`, whatever
/// the power profiles look like.
fn energy_cost<'a>(instance: &Instance, entries: impl Iterator<Item = &'a TruckSchedule>) -> f64 {
    let mut by_price: BTreeMap<u64, u64> = BTreeMap::new();
    for entry in entries.flat_map(|t| t.profile.iter()) {
        let price = instance.slot_price(entry.slot);
        *by_price.entry(price.to_bits()).or_default() += entry.energy.watt_minutes();
    }
    by_price
        .into_iter()
        .map(|(bits, wmin)| f64::from_bits(bits) * crate::units::Energy::from_watt_minutes(wmin).kwh())
        .sum()
}

fn waiting_and_tardiness(instance: &Instance, entry: &TruckSchedule) -> (f64, f64) {
    let truck = instance.truck(entry.truck);
    let waiting = truck.waiting_rate * (entry.start_time - truck.arrival as f64);
    let late = entry.finish_time - truck.deadline;
    let tardiness = if late > 0.0 { truck.tardiness_rate * late } else { 0.0 };
    (waiting, tardiness)
}

/// Cost of a full schedule.
pub fn evaluate_cost(instance: &Instance, schedule: &Schedule) -> CostBreakdown {
    let energy = energy_cost(instance, schedule.trucks.iter());
    let (mut waiting, mut tardiness) = (0.0, 0.0);
    for entry in &schedule.trucks {
        let (w, t) = waiting_and_tardiness(instance, entry);
        waiting += w;
        tardiness += t;
    }
    CostBreakdown::new(energy, waiting, tardiness)
}

/// Cost contributed by a single truck.
pub fn evaluate_truck(instance: &Instance, entry: &TruckSchedule) -> CostBreakdown {
    let energy = energy_cost(instance, core::iter::once(entry));
    let (waiting, tardiness) = waiting_and_tardiness(instance, entry);
    CostBreakdown::new(energy, waiting, tardiness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::instance::fixtures::flat_instance;
    use crate::model::{Ordering, SlotEnergy, TruckId};
    use crate::units::Power;
    use alloc::vec;
    use alloc::vec::Vec;

    fn full_power_profile(first_slot: usize, slots: usize) -> Vec<SlotEnergy> {
        let per_slot = Power::from_kw(350.0).over_minutes(5);
        (first_slot..first_slot + slots)
            .map(|slot| SlotEnergy { slot, energy: per_slot })
            .collect()
    }

    fn single(start: f64, finish: f64, first_slot: usize) -> (crate::model::Instance, Schedule) {
        let inst = flat_instance(1, &[350.0], 1000.0, 48);
        let schedule = Schedule {
            ordering: Ordering::new(vec![vec![TruckId(1)]]),
            trucks: vec![TruckSchedule {
                truck: TruckId(1),
                port: 0,
                start_time: start,
                finish_time: finish,
                profile: full_power_profile(first_slot, 6),
            }],
        };
        (inst, schedule)
    }

    #[test]
    fn flat_price_single_truck() {
        // 175 kWh at 0.1 EUR/kWh.
        let (inst, schedule) = single(0.0, 30.0, 0);
        let cost = evaluate_cost(&inst, &schedule);
        assert_eq!(cost.energy, 0.1 * 175.0);
        assert_eq!(cost.waiting, 0.0);
        assert_eq!(cost.tardiness, 0.0);
        assert_eq!(cost.total, cost.energy);
    }

    #[test]
    fn waiting_five_minutes_at_two_euros() {
        let (inst, schedule) = single(5.0, 35.0, 1);
        assert_eq!(evaluate_cost(&inst, &schedule).waiting, 10.0);
    }

    #[test]
    fn three_minutes_late_at_ten_euros() {
        // Deadline of the sample truck is minute 60.
        let (inst, schedule) = single(0.0, 63.0, 0);
        let cost = evaluate_cost(&inst, &schedule);
        assert!((cost.tardiness - 30.0).abs() < 1e-12);
        assert_eq!(cost.total, cost.energy + cost.waiting + cost.tardiness);
    }

    #[test]
    fn single_truck_matches_schedule_cost() {
        let (inst, schedule) = single(5.0, 35.0, 1);
        assert_eq!(evaluate_truck(&inst, &schedule.trucks[0]), evaluate_cost(&inst, &schedule));
    }
}
