use core::fmt;

use crate::error::ModelError;
use crate::units::{Energy, Power};

/// One-based truck identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TruckId(pub u32);

impl TruckId {
    /// Position of this truck in zero-based arrays.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    #[inline]
    pub fn from_index(index: usize) -> Self {
        TruckId(index as u32 + 1)
    }
}

impl fmt::Display for TruckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// What the coordinator knows about one truck when it reaches the station.
#[derive(Debug, Clone, PartialEq)]
pub struct TruckSpec {
    pub id: TruckId,
    /// Arrival, in absolute minutes.
    pub arrival: i64,
    /// Battery energy on arrival.
    pub initial_energy: Energy,
    /// Energy that must be delivered.
    pub demand: Energy,
    /// Battery capacity.
    pub capacity: Energy,
    /// Latest departure, in absolute minutes.
    pub deadline: f64,
    /// Highest power the truck accepts.
    pub power_cap: Power,
    /// Cost per minute spent waiting before charging starts, in euros.
    pub waiting_rate: f64,
    /// Cost per minute of finishing after the deadline, in euros.
    pub tardiness_rate: f64,
}

impl TruckSpec {
    pub fn validate(&self) -> Result<(), ModelError> {
        let fail = |reason| Err(ModelError::InvalidTruck { truck: self.id, reason });
        if self.id.0 == 0 {
            return fail("ids start at 1");
        }
        if self.demand == Energy::ZERO {
            return fail("demand must be positive");
        }
        if self.initial_energy + self.demand > self.capacity {
            return fail("initial energy plus demand exceeds battery capacity");
        }
        if self.power_cap == Power::ZERO {
            return fail("power cap must be positive");
        }
        if !(self.waiting_rate >= 0.0 && self.waiting_rate.is_finite()) {
            return fail("waiting rate must be finite and non-negative");
        }
        if !(self.tardiness_rate >= 0.0 && self.tardiness_rate.is_finite()) {
            return fail("tardiness rate must be finite and non-negative");
        }
        if !self.deadline.is_finite() || self.deadline < self.arrival as f64 {
            return fail("deadline must not precede arrival");
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) fn sample_truck(id: u32) -> TruckSpec {
    TruckSpec {
        id: TruckId(id),
        arrival: 0,
        initial_energy: Energy::from_kwh(100.0),
        demand: Energy::from_kwh(175.0),
        capacity: Energy::from_kwh(468.0),
        deadline: 60.0,
        power_cap: Power::from_kw(350.0),
        waiting_rate: 2.0,
        tardiness_rate: 10.0,
    }
}
