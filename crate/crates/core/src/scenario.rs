//! Seeded instance generation.
//!
//! All randomness comes from one PCG-64 stream (XSL-RR output on a 128-bit
//! LCG) seeded with the config's seed, consumed in a fixed order: one draw
//! per port for its power, then per truck one draw for the initial state of
//! charge followed by one for the arrival minute. Draws are turned into
//! numbers with plain arithmetic documented on [`ScenarioRng`], so the
//! instances can be reproduced in any language that has PCG-64.

use alloc::vec::Vec;

use rand_core::Rng;
use rand_pcg::Pcg64;

use crate::error::ModelError;
use crate::model::{
    Instance, StationSpec, Tariff, TariffSegment, Timeline, TruckId, TruckSpec, DAY_MINUTES,
};
use crate::units::{Energy, Power};

/// Stream selector of the generator. The PCG reference default increment.
pub const PCG_STREAM: u128 = 0x5851_f42d_4c95_7f2d_1405_7b7e_f767_814f;

/// Time-of-use tariff repeated every day: (start minute, EUR/kWh).
pub const DEFAULT_TARIFF: [(i64, f64); 6] = [
    (0, 0.101),
    (6 * 60, 0.174),
    (9 * 60, 0.128),
    (12 * 60, 0.110),
    (17 * 60, 0.202),
    (21 * 60, 0.101),
];

pub fn default_tariff() -> Tariff {
    let segments = DEFAULT_TARIFF
        .iter()
        .map(|&(start, price)| TariffSegment { start, price })
        .collect();
    Tariff::new(segments, Some(DAY_MINUTES)).expect("the default tariff is well formed")
}

/// Deterministic number source for [`generate_instance`].
#[derive(Debug, Clone)]
pub struct ScenarioRng(Pcg64);

impl ScenarioRng {
    pub fn new(seed: u64) -> Self {
        ScenarioRng(Pcg64::new(u128::from(seed), PCG_STREAM))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)`: the top 53 bits of a draw times 2^-53.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.unit() * (hi - lo)
    }

    /// Uniform integer in `0..n` as `floor(unit * n)`.
    pub fn below(&mut self, n: u64) -> u64 {
        ((self.unit() * n as f64) as u64).min(n.saturating_sub(1))
    }
}

/// The two experiment regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// 3 ports, 1000 kW, arrivals within 08:00-08:30, slack 1.5.
    Small,
    /// 10 ports, 3350 kW, arrivals within 06:00-12:00, slack 2.
    Large,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Small => "small",
            Preset::Large => "large",
        }
    }

    pub fn parse(name: &str) -> Option<Preset> {
        match name {
            "small" => Some(Preset::Small),
            "large" => Some(Preset::Large),
            _ => None,
        }
    }
}

/// How port powers are chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum PortPowers {
    /// One power per port, in kW.
    Fixed(Vec<f64>),
    /// Each port draws uniformly from these powers (kW).
    Sampled(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub n_trucks: usize,
    pub n_ports: usize,
    pub port_powers: PortPowers,
    pub station_cap_kw: f64,
    /// Deadline slack; a truck charging alone at full power meets it when ≥ 1.
    pub slack: f64,
    /// Inclusive range of arrival minutes.
    pub arrival_window: (i64, i64),
    pub battery_capacity_kwh: f64,
    pub truck_power_cap_kw: f64,
    pub initial_soc_range: (f64, f64),
    /// EUR per minute.
    pub waiting_rate: f64,
    /// EUR per minute.
    pub tardiness_rate: f64,
    pub seed: u64,
    /// Minute of slot 0.
    pub origin: i64,
    pub slot_minutes: u32,
    pub horizon_slots: usize,
}

impl ScenarioConfig {
    pub fn preset(preset: Preset, n_trucks: usize, seed: u64) -> Self {
        let base = ScenarioConfig {
            n_trucks,
            n_ports: 3,
            port_powers: PortPowers::Sampled(alloc::vec![300.0, 350.0]),
            station_cap_kw: 1000.0,
            slack: 1.5,
            arrival_window: (8 * 60, 8 * 60 + 30),
            battery_capacity_kwh: 468.0,
            truck_power_cap_kw: 350.0,
            initial_soc_range: (0.2, 0.8),
            waiting_rate: 2.0,
            tardiness_rate: 10.0,
            seed,
            origin: 0,
            slot_minutes: 5,
            horizon_slots: 288,
        };
        match preset {
            Preset::Small => base,
            Preset::Large => ScenarioConfig {
                n_ports: 10,
                station_cap_kw: 3350.0,
                slack: 2.0,
                arrival_window: (6 * 60, 12 * 60),
                horizon_slots: 576,
                ..base
            },
        }
    }

    /// Changes the slot length while keeping the horizon length in minutes
    /// (rounded up to whole slots).
    pub fn with_slot_minutes(mut self, slot_minutes: u32) -> Self {
        if slot_minutes > 0 {
            let horizon = self.horizon_slots as u64 * u64::from(self.slot_minutes);
            self.horizon_slots = horizon.div_ceil(u64::from(slot_minutes)) as usize;
            self.slot_minutes = slot_minutes;
        }
        self
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let fail = |what| Err(ModelError::InvalidScenario(what));
        if self.n_trucks == 0 {
            return fail("at least one truck is required");
        }
        if self.n_ports == 0 {
            return fail("at least one port is required");
        }
        match &self.port_powers {
            PortPowers::Fixed(p) if p.len() != self.n_ports => return fail("one fixed power per port is required"),
            PortPowers::Sampled(p) if p.is_empty() => return fail("the port power choice set is empty"),
            PortPowers::Fixed(p) | PortPowers::Sampled(p) if p.iter().any(|&x| !(x > 0.0 && x.is_finite())) => {
                return fail("port powers must be positive");
            }
            _ => {}
        }
        if !(self.slack >= 1.0 && self.slack.is_finite()) {
            return fail("slack must be at least 1");
        }
        let (lo, hi) = self.initial_soc_range;
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
            return fail("state of charge range must lie within [0, 1] and be non-empty");
        }
        if self.arrival_window.0 > self.arrival_window.1 {
            return fail("arrival window is empty");
        }
        if !(self.battery_capacity_kwh > 0.0 && self.truck_power_cap_kw > 0.0 && self.station_cap_kw > 0.0) {
            return fail("capacity and power limits must be positive");
        }
        if !(self.waiting_rate >= 0.0 && self.tardiness_rate >= 0.0) {
            return fail("cost rates must be non-negative");
        }
        Ok(())
    }
}

/// Deadline of a truck charging `demand` at up to `power_cap` with the given slack.
pub fn slack_deadline(arrival: i64, demand: Energy, power_cap: Power, slack: f64) -> f64 {
    // W·min / W = minutes at full power.
    arrival as f64 + slack * (demand.watt_minutes() as f64 / power_cap.watts() as f64)
}

pub fn generate_instance(config: &ScenarioConfig) -> Result<Instance, ModelError> {
    config.validate()?;
    let mut rng = ScenarioRng::new(config.seed);

    let port_powers = match &config.port_powers {
        PortPowers::Fixed(p) => p.iter().map(|&kw| Power::from_kw(kw)).collect(),
        PortPowers::Sampled(choices) => (0..config.n_ports)
            .map(|_| Power::from_kw(choices[rng.below(choices.len() as u64) as usize]))
            .collect(),
    };
    let station = StationSpec::new(port_powers, Power::from_kw(config.station_cap_kw))?;

    let capacity = Energy::from_kwh(config.battery_capacity_kwh);
    let power_cap = Power::from_kw(config.truck_power_cap_kw);
    let (soc_lo, soc_hi) = config.initial_soc_range;
    let (arr_lo, arr_hi) = config.arrival_window;
    let trucks = (0..config.n_trucks)
        .map(|i| {
            let soc = rng.uniform(soc_lo, soc_hi);
            let arrival = arr_lo + rng.below((arr_hi - arr_lo + 1) as u64) as i64;
            let initial_energy = Energy::from_kwh(config.battery_capacity_kwh * soc);
            let demand = capacity - initial_energy;
            TruckSpec {
                id: TruckId::from_index(i),
                arrival,
                initial_energy,
                demand,
                capacity,
                deadline: slack_deadline(arrival, demand, power_cap, config.slack),
                power_cap,
                waiting_rate: config.waiting_rate,
                tardiness_rate: config.tardiness_rate,
            }
        })
        .collect();

    let timeline = Timeline::new(config.origin, config.slot_minutes, config.horizon_slots)?;
    Instance::new(trucks, station, default_tariff(), timeline)
}
