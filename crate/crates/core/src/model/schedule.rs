use alloc::vec::Vec;

use crate::model::{Ordering, TruckId};
use crate::units::{Energy, Power};

/// Energy delivered to one truck during one slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlotEnergy {
    pub slot: usize,
    pub energy: Energy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruckSchedule {
    pub truck: TruckId,
    pub port: usize,
    /// Start of charging, in absolute minutes.
    pub start_time: f64,
    /// Moment the demand is met, in absolute minutes.
    pub finish_time: f64,
    /// Non-zero slot energies, ascending by slot.
    pub profile: Vec<SlotEnergy>,
}

impl TruckSchedule {
    pub fn delivered(&self) -> Energy {
        self.profile.iter().map(|s| s.energy).sum()
    }

    /// Charging duration in minutes.
    pub fn duration(&self) -> f64 {
        self.finish_time - self.start_time
    }

    /// Average power in `slot`, in kW.
    pub fn power_kw(&self, slot: usize, slot_minutes: u32) -> f64 {
        self.profile
            .iter()
            .find(|s| s.slot == slot)
            .map_or(0.0, |s| Power::average_kw(s.energy, slot_minutes))
    }
}

/// Start/finish times and per-slot energy for every truck, plus the ordering
/// they were planned for. `trucks[i]` belongs to truck `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    pub ordering: Ordering,
    pub trucks: Vec<TruckSchedule>,
}

impl Schedule {
    /// Energy drawn from the station per slot, over `num_slots` slots.
    pub fn slot_totals(&self, num_slots: usize) -> Vec<Energy> {
        let mut totals = alloc::vec![Energy::ZERO; num_slots];
        for entry in self.trucks.iter().flat_map(|t| t.profile.iter()) {
            if let Some(total) = totals.get_mut(entry.slot) {
                *total += entry.energy;
            }
        }
        totals
    }
}
