use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::model::{Instance, Schedule, TruckId};
use crate::units::{Energy, Power};

/// Largest accepted gap between delivered energy and demand.
pub const DEMAND_TOLERANCE: Energy = Energy::WATT_HOUR;

/// Slack on the aggregate station limit, in kW.
pub const STATION_CAP_TOLERANCE_KW: f64 = 1e-6;

const TIME_TOLERANCE: f64 = 1e-9;

/// Which constraint a schedule breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// Malformed schedule: wrong truck set, ports that disagree with the
    /// ordering, slots outside the horizon or outside the charging interval.
    Structure,
    /// Delivered energy differs from the demand.
    Demand,
    /// Initial energy plus demand exceeds the battery.
    Capacity,
    /// Slot power above the effective cap.
    PowerCap,
    /// Aggregate power above the station cap.
    StationCap,
    /// Start before arrival, or finish before start.
    Timing,
    /// A truck starts before its predecessor on the same port finishes.
    Precedence,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ViolationKind::Structure => "structure",
            ViolationKind::Demand => "demand",
            ViolationKind::Capacity => "battery capacity",
            ViolationKind::PowerCap => "power cap",
            ViolationKind::StationCap => "station cap",
            ViolationKind::Timing => "timing",
            ViolationKind::Precedence => "precedence",
        };
        f.write_str(name)
    }
}

/// One broken constraint. `magnitude` is in kWh for energy constraints,
/// kW for power constraints and minutes for timing constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub trucks: Vec<TruckId>,
    pub slot: Option<usize>,
    pub magnitude: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated by {:.6}", self.kind, self.magnitude)?;
        if !self.trucks.is_empty() {
            f.write_str(" (trucks")?;
            for t in &self.trucks {
                write!(f, " {t}")?;
            }
            f.write_str(")")?;
        }
        if let Some(slot) = self.slot {
            write!(f, " in slot {slot}")?;
        }
        Ok(())
    }
}

/// Every constraint the schedule breaks; empty when it is feasible.
pub fn validate_schedule(instance: &Instance, schedule: &Schedule) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |kind, trucks: Vec<TruckId>, slot, magnitude| {
        out.push(Violation {
            kind,
            trucks,
            slot,
            magnitude,
        })
    };

    let n = instance.num_trucks();
    if schedule.ordering.validate(n, instance.num_ports()).is_err() {
        push(ViolationKind::Structure, vec![], None, 0.0);
        return out;
    }
    if schedule.trucks.len() != n
        || schedule
            .trucks
            .iter()
            .enumerate()
            .any(|(i, t)| t.truck != TruckId::from_index(i))
    {
        push(ViolationKind::Structure, vec![], None, 0.0);
        return out;
    }

    let timeline = instance.timeline();
    let delta = timeline.slot_minutes;
    let ports = schedule.ordering.port_of_each(n);

    for entry in &schedule.trucks {
        let id = entry.truck;
        let truck = instance.truck(id);
        let one = vec![id];

        if entry.port != ports[id.index()] {
            push(ViolationKind::Structure, one.clone(), None, 0.0);
            continue;
        }

        let cap = instance.slot_energy_cap(id, entry.port);
        let mut previous_slot = None;
        for se in &entry.profile {
            if se.slot >= timeline.num_slots || previous_slot.is_some_and(|p| p >= se.slot) {
                push(ViolationKind::Structure, one.clone(), Some(se.slot), se.energy.kwh());
                continue;
            }
            previous_slot = Some(se.slot);
            let start = timeline.slot_start(se.slot) as f64;
            let end = start + delta as f64;
            let overlaps = start < entry.finish_time && end > entry.start_time;
            if se.energy > Energy::ZERO && !overlaps {
                push(ViolationKind::Structure, one.clone(), Some(se.slot), se.energy.kwh());
            }
            if se.energy > cap {
                let excess = Power::average_kw(se.energy - cap, delta);
                push(ViolationKind::PowerCap, one.clone(), Some(se.slot), excess);
            }
        }

        let delivered = entry.delivered();
        let gap = delivered.abs_diff(truck.demand);
        if gap > DEMAND_TOLERANCE {
            push(ViolationKind::Demand, one.clone(), None, gap.kwh());
        }
        if truck.initial_energy + truck.demand > truck.capacity {
            let excess = (truck.initial_energy + truck.demand) - truck.capacity;
            push(ViolationKind::Capacity, one.clone(), None, excess.kwh());
        }
        let early = truck.arrival as f64 - entry.start_time;
        if early > TIME_TOLERANCE {
            push(ViolationKind::Timing, one.clone(), None, early);
        }
        let backwards = entry.start_time - entry.finish_time;
        if backwards > TIME_TOLERANCE || !entry.start_time.is_finite() || !entry.finish_time.is_finite() {
            push(ViolationKind::Timing, one.clone(), None, backwards);
        }
    }

    let station_kw = instance.station().station_cap.kw();
    for (slot, total) in schedule.slot_totals(timeline.num_slots).into_iter().enumerate() {
        let kw = Power::average_kw(total, delta);
        if kw > station_kw + STATION_CAP_TOLERANCE_KW {
            let mut trucks: Vec<TruckId> = schedule
                .trucks
                .iter()
                .filter(|t| t.profile.iter().any(|s| s.slot == slot && s.energy > Energy::ZERO))
                .map(|t| t.truck)
                .collect();
            trucks.sort();
            push(ViolationKind::StationCap, trucks, Some(slot), kw - station_kw);
        }
    }

    for (before, after) in schedule.ordering.precedence_arcs() {
        let finish = schedule.trucks[before.index()].finish_time;
        let start = schedule.trucks[after.index()].start_time;
        if finish - start > TIME_TOLERANCE {
            push(ViolationKind::Precedence, vec![before, after], None, finish - start);
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::instance::fixtures::flat_instance;
    use crate::model::{Ordering, SlotEnergy, TruckSchedule};

    fn block(id: u32, first_slot: usize, start: f64, finish: f64) -> TruckSchedule {
        let per_slot = Power::from_kw(350.0).over_minutes(5);
        TruckSchedule {
            truck: TruckId(id),
            port: 0,
            start_time: start,
            finish_time: finish,
            profile: (first_slot..first_slot + 6)
                .map(|slot| SlotEnergy { slot, energy: per_slot })
                .collect(),
        }
    }

    fn sequential() -> (Instance, Schedule) {
        let inst = flat_instance(2, &[350.0], 1000.0, 48);
        let schedule = Schedule {
            ordering: Ordering::new(vec![vec![TruckId(1), TruckId(2)]]),
            trucks: vec![block(1, 0, 0.0, 30.0), block(2, 6, 30.0, 60.0)],
        };
        (inst, schedule)
    }

    #[test]
    fn feasible_schedule_is_clean() {
        let (inst, schedule) = sequential();
        assert_eq!(validate_schedule(&inst, &schedule), vec![]);
    }

    #[test]
    fn overlap_on_one_port_is_a_precedence_violation() {
        let (inst, mut schedule) = sequential();
        schedule.trucks[1] = block(2, 3, 15.0, 45.0);
        let v = validate_schedule(&inst, &schedule);
        assert_eq!(v.len(), 1, "{v:?}");
        assert_eq!(v[0].kind, ViolationKind::Precedence);
        assert_eq!(v[0].trucks, vec![TruckId(1), TruckId(2)]);
        assert_eq!(v[0].magnitude, 15.0);
    }

    #[test]
    fn one_kwh_short_is_a_demand_violation() {
        let (inst, mut schedule) = sequential();
        let last = schedule.trucks[0].profile.last_mut().unwrap();
        last.energy -= Energy::from_kwh(1.0);
        let v = validate_schedule(&inst, &schedule);
        assert_eq!(v.len(), 1, "{v:?}");
        assert_eq!(v[0].kind, ViolationKind::Demand);
        assert!((v[0].magnitude - 1.0).abs() < 1e-12);
    }

    #[test]
    fn station_cap_is_checked_per_slot() {
        let inst = flat_instance(2, &[350.0, 350.0], 500.0, 48);
        let schedule = Schedule {
            ordering: Ordering::new(vec![vec![TruckId(1)], vec![TruckId(2)]]),
            trucks: vec![block(1, 0, 0.0, 30.0), {
                let mut b = block(2, 0, 0.0, 30.0);
                b.port = 1;
                b
            }],
        };
        let v = validate_schedule(&inst, &schedule);
        assert_eq!(v.len(), 6);
        assert!(v.iter().all(|x| x.kind == ViolationKind::StationCap));
        assert!((v[0].magnitude - 200.0).abs() < 1e-9);
    }

    #[test]
    fn over_power_and_early_start() {
        let (inst, mut schedule) = sequential();
        schedule.trucks[0].profile[0].energy += Energy::from_wh(1000);
        schedule.trucks[0].profile[1].energy -= Energy::from_wh(1000);
        schedule.trucks[1].start_time = -1.0;
        let kinds: Vec<_> = validate_schedule(&inst, &schedule).iter().map(|v| v.kind).collect();
        assert!(kinds.contains(&ViolationKind::PowerCap));
        assert!(kinds.contains(&ViolationKind::Timing));
    }

    #[test]
    fn energy_outside_charging_interval() {
        let (inst, mut schedule) = sequential();
        schedule.trucks[1].profile[5].slot = 20;
        let v = validate_schedule(&inst, &schedule);
        assert!(v.iter().any(|x| x.kind == ViolationKind::Structure && x.slot == Some(20)));
    }
}
