use alloc::vec::Vec;

use crate::error::ModelError;
use crate::model::{StationSpec, Tariff, Timeline, TruckId, TruckSpec};
use crate::units::Energy;

/// A complete, validated problem: fleet, station, tariff and slot grid.
///
/// Per-slot prices are resolved once at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    trucks: Vec<TruckSpec>,
    station: StationSpec,
    tariff: Tariff,
    timeline: Timeline,
    slot_prices: Vec<f64>,
    slot_price_keys: Vec<i64>,
    price_change_slots: Vec<usize>,
    arrival_slots: Vec<usize>,
}

impl Instance {
    pub fn new(
        mut trucks: Vec<TruckSpec>,
        station: StationSpec,
        tariff: Tariff,
        timeline: Timeline,
    ) -> Result<Self, ModelError> {
        station.validate()?;
        timeline.validate()?;

        trucks.sort_by_key(|t| t.id);
        for (i, truck) in trucks.iter().enumerate() {
            if truck.id != TruckId::from_index(i) {
                return Err(ModelError::TruckIds {
                    expected: trucks.len(),
                    found: truck.id,
                });
            }
            truck.validate()?;
            if truck.arrival < timeline.origin || truck.arrival >= timeline.end() {
                return Err(ModelError::ArrivalOutsideHorizon {
                    truck: truck.id,
                    arrival: truck.arrival,
                    start: timeline.origin,
                    end: timeline.end(),
                });
            }
        }

        if tariff.period().is_none() && tariff.segments()[0].start > timeline.origin {
            return Err(ModelError::InvalidTariff("first segment starts after the timeline origin"));
        }
        for bp in tariff.breakpoints_between(timeline.origin, timeline.end()) {
            if !timeline.is_aligned(bp) {
                return Err(ModelError::MisalignedBreakpoint {
                    minute: bp,
                    slot_minutes: timeline.slot_minutes,
                });
            }
        }

        let slot_prices = (0..timeline.num_slots)
            .map(|s| tariff.price_at(timeline.slot_start(s)))
            .collect::<Result<Vec<_>, _>>()?;
        let slot_price_keys = slot_prices
            .iter()
            .map(|p| libm::round(p * 1e6) as i64)
            .collect::<Vec<_>>();
        let price_change_slots = (1..timeline.num_slots)
            .filter(|&s| slot_prices[s] != slot_prices[s - 1])
            .collect();
        let arrival_slots = trucks
            .iter()
            .map(|t| timeline.first_slot_from(t.arrival as f64))
            .collect();

        Ok(Instance {
            trucks,
            station,
            tariff,
            timeline,
            slot_prices,
            slot_price_keys,
            price_change_slots,
            arrival_slots,
        })
    }

    #[inline]
    pub fn trucks(&self) -> &[TruckSpec] {
        &self.trucks
    }

    #[inline]
    pub fn truck(&self, id: TruckId) -> &TruckSpec {
        &self.trucks[id.index()]
    }

    #[inline]
    pub fn station(&self) -> &StationSpec {
        &self.station
    }

    #[inline]
    pub fn tariff(&self) -> &Tariff {
        &self.tariff
    }

    #[inline]
    pub fn timeline(&self) -> &Timeline {
        &self.timeline
    }

    #[inline]
    pub fn num_trucks(&self) -> usize {
        self.trucks.len()
    }

    #[inline]
    pub fn num_ports(&self) -> usize {
        self.station.num_ports()
    }

    #[inline]
    pub fn num_slots(&self) -> usize {
        self.timeline.num_slots
    }

    /// Price of slot `slot` in euros per kWh.
    #[inline]
    pub fn slot_price(&self, slot: usize) -> f64 {
        self.slot_prices[slot]
    }

    /// Price of slot `slot` in micro-euros per kWh, used as an exact ordering key.
    #[inline]
    pub fn slot_price_key(&self, slot: usize) -> i64 {
        self.slot_price_keys[slot]
    }

    /// Slots whose price differs from the previous slot, ascending.
    #[inline]
    pub fn price_change_slots(&self) -> &[usize] {
        &self.price_change_slots
    }

    /// First slot a truck can use: the first slot boundary at or after its arrival.
    #[inline]
    pub fn arrival_slot(&self, id: TruckId) -> usize {
        self.arrival_slots[id.index()]
    }

    /// Energy the station can deliver in one slot.
    #[inline]
    pub fn station_slot_energy(&self) -> Energy {
        self.station.station_cap.over_minutes(self.timeline.slot_minutes)
    }

    /// Energy truck `id` can take in one slot at port `port`.
    #[inline]
    pub fn slot_energy_cap(&self, id: TruckId, port: usize) -> Energy {
        self.truck(id)
            .power_cap
            .min(self.station.port_powers[port])
            .over_minutes(self.timeline.slot_minutes)
    }

    /// Number of full-power slots truck `id` needs at port `port`.
    pub fn nominal_slots(&self, id: TruckId, port: usize) -> usize {
        let cap = self.slot_energy_cap(id, port).watt_minutes();
        self.truck(id).demand.watt_minutes().div_ceil(cap) as usize
    }

    pub fn total_demand(&self) -> Energy {
        self.trucks.iter().map(|t| t.demand).sum()
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::model::truck::sample_truck;
    use crate::model::{TariffSegment, DAY_MINUTES};
    use crate::units::Power;
    use alloc::vec;

    /// `n` copies of the sample truck on a flat tariff.
    pub fn flat_instance(n: u32, ports: &[f64], cap_kw: f64, slots: usize) -> Instance {
        let trucks = (1..=n).map(sample_truck).collect();
        let station = StationSpec::new(
            ports.iter().map(|p| Power::from_kw(*p)).collect(),
            Power::from_kw(cap_kw),
        )
        .unwrap();
        Instance::new(
            trucks,
            station,
            Tariff::flat(0.1).unwrap(),
            Timeline::new(0, 5, slots).unwrap(),
        )
        .unwrap()
    }

    pub fn table_tariff() -> Tariff {
        let seg = |h: i64, price| TariffSegment { start: h * 60, price };
        Tariff::new(
            vec![
                seg(0, 0.101),
                seg(6, 0.174),
                seg(9, 0.128),
                seg(12, 0.110),
                seg(17, 0.202),
                seg(21, 0.101),
            ],
            Some(DAY_MINUTES),
        )
        .unwrap()
    }
}
