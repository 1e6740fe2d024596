//! The `fleetcharge/1` instance file.
//!
//! A JSON document with energies in kWh, powers in kW and times as absolute
//! minutes or `HH:MM`:
//!
//! ```json
//! {
//!   "format": "fleetcharge/1",
//!   "trucks": [{ "id": 1, "arrival": "08:05", "initial_energy": 234.0, "demand": 234.0,
//!                "capacity": 468.0, "deadline": 545.2, "power_cap": 350.0,
//!                "waiting_rate": 2.0, "tardiness_rate": 10.0 }],
//!   "station": { "port_powers_kw": [300.0, 350.0], "station_cap_kw": 1000.0 },
//!   "tariff": [{ "start": "00:00", "price_eur_per_kwh": 0.101 }],
//!   "tariff_period_minutes": 1440,
//!   "timeline": { "origin": "00:00", "slot_minutes": 5, "num_slots": 288 }
//! }
//! ```
//!
//! `tariff_period_minutes` is optional; when present the tariff repeats with
//! that period.

use std::fs;
use std::path::Path;

use fleetcharge_core::{Energy, Instance, Power, StationSpec, Tariff, TariffSegment, Timeline, TruckId, TruckSpec};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::clock::TimeValue;
use crate::error::CliError;

pub const FORMAT: &str = "fleetcharge/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub format: String,
    pub trucks: Vec<TruckRecord>,
    pub station: StationRecord,
    pub tariff: Vec<TariffRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tariff_period_minutes: Option<i64>,
    pub timeline: TimelineRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruckRecord {
    pub id: u32,
    pub arrival: TimeValue,
    pub initial_energy: f64,
    pub demand: f64,
    pub capacity: f64,
    pub deadline: TimeValue,
    pub power_cap: f64,
    pub waiting_rate: f64,
    pub tardiness_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StationRecord {
    pub port_powers_kw: Vec<f64>,
    pub station_cap_kw: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TariffRecord {
    pub start: TimeValue,
    pub price_eur_per_kwh: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimelineRecord {
    pub origin: TimeValue,
    pub slot_minutes: u32,
    pub num_slots: usize,
}

impl InstanceFile {
    pub fn from_instance(instance: &Instance) -> Self {
        let trucks = instance
            .trucks()
            .iter()
            .map(|t| TruckRecord {
                id: t.id.0,
                arrival: TimeValue::Minutes(t.arrival as f64),
                initial_energy: t.initial_energy.kwh(),
                demand: t.demand.kwh(),
                capacity: t.capacity.kwh(),
                deadline: TimeValue::Minutes(t.deadline),
                power_cap: t.power_cap.kw(),
                waiting_rate: t.waiting_rate,
                tardiness_rate: t.tardiness_rate,
            })
            .collect();
        let station = instance.station();
        let timeline = instance.timeline();
        InstanceFile {
            format: FORMAT.to_string(),
            trucks,
            station: StationRecord {
                port_powers_kw: station.port_powers.iter().map(|p| p.kw()).collect(),
                station_cap_kw: station.station_cap.kw(),
            },
            tariff: instance
                .tariff()
                .segments()
                .iter()
                .map(|s| TariffRecord {
                    start: TimeValue::from_minute(s.start),
                    price_eur_per_kwh: s.price,
                })
                .collect(),
            tariff_period_minutes: instance.tariff().period(),
            timeline: TimelineRecord {
                origin: TimeValue::Minutes(timeline.origin as f64),
                slot_minutes: timeline.slot_minutes,
                num_slots: timeline.num_slots,
            },
        }
    }

    /// Builds and validates the instance; `path` only labels errors.
    pub fn to_instance(&self, path: &Path) -> Result<Instance, CliError> {
        let bad = |message: String| CliError::format(path, message);
        if self.format != FORMAT {
            return Err(bad(format!("unsupported format `{}`, expected `{FORMAT}`", self.format)));
        }
        let trucks = self
            .trucks
            .iter()
            .map(|t| {
                let label = |e| bad(format!("truck {}: {e}", t.id));
                Ok(TruckSpec {
                    id: TruckId(t.id),
                    arrival: t.arrival.whole_minutes().map_err(label)?,
                    initial_energy: energy(t.initial_energy).ok_or_else(|| bad(format!("truck {}: bad initial_energy", t.id)))?,
                    demand: energy(t.demand).ok_or_else(|| bad(format!("truck {}: bad demand", t.id)))?,
                    capacity: energy(t.capacity).ok_or_else(|| bad(format!("truck {}: bad capacity", t.id)))?,
                    deadline: t.deadline.minutes().map_err(label)?,
                    power_cap: power(t.power_cap).ok_or_else(|| bad(format!("truck {}: bad power_cap", t.id)))?,
                    waiting_rate: t.waiting_rate,
                    tardiness_rate: t.tardiness_rate,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let port_powers = self
            .station
            .port_powers_kw
            .iter()
            .map(|&kw| power(kw).ok_or_else(|| bad(format!("bad port power {kw}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let cap = power(self.station.station_cap_kw).ok_or_else(|| bad("bad station_cap_kw".into()))?;
        let station = StationSpec::new(port_powers, cap)?;
        let segments = self
            .tariff
            .iter()
            .map(|s| {
                Ok(TariffSegment {
                    start: s.start.whole_minutes().map_err(|e| bad(format!("tariff: {e}")))?,
                    price: s.price_eur_per_kwh,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let tariff = Tariff::new(segments, self.tariff_period_minutes)?;
        let origin = self.timeline.origin.whole_minutes().map_err(|e| bad(format!("timeline: {e}")))?;
        let timeline = Timeline::new(origin, self.timeline.slot_minutes, self.timeline.num_slots)?;
        Ok(Instance::new(trucks, station, tariff, timeline)?)
    }
}

fn energy(kwh: f64) -> Option<Energy> {
    (kwh.is_finite() && kwh >= 0.0).then(|| Energy::from_kwh(kwh))
}

fn power(kw: f64) -> Option<Power> {
    (kw.is_finite() && kw >= 0.0).then(|| Power::from_kw(kw))
}

/// Hex SHA-256 of `bytes`.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Pretty JSON with a trailing newline; the same instance always gives the same bytes.
pub fn to_bytes(instance: &Instance) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(&InstanceFile::from_instance(instance)).expect("instance files serialize");
    bytes.push(b'\n');
    bytes
}

/// Writes `instance` to `path` and returns the hash of the written bytes.
pub fn write_instance(instance: &Instance, path: &Path) -> Result<String, CliError> {
    let bytes = to_bytes(instance);
    crate::write_file(path, &bytes)?;
    Ok(sha256_hex(&bytes))
}

/// An instance read from disk, with the hash of its exact bytes.
#[derive(Debug, Clone)]
pub struct LoadedInstance {
    pub instance: Instance,
    pub sha256: String,
}

pub fn parse_instance(bytes: &[u8], path: &Path) -> Result<LoadedInstance, CliError> {
    let file: InstanceFile = serde_json::from_slice(bytes).map_err(|e| CliError::format(path, e))?;
    Ok(LoadedInstance {
        instance: file.to_instance(path)?,
        sha256: sha256_hex(bytes),
    })
}

pub fn read_instance(path: &Path) -> Result<LoadedInstance, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    parse_instance(&bytes, path)
}
