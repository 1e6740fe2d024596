use alloc::vec::Vec;

use crate::error::ModelError;
use crate::model::TruckSpec;
use crate::units::Power;

#[derive(Debug, Clone, PartialEq)]
pub struct StationSpec {
    /// Power available at each port; the length is the port count.
    pub port_powers: Vec<Power>,
    /// Aggregate limit across all ports.
    pub station_cap: Power,
}

impl StationSpec {
    pub fn new(port_powers: Vec<Power>, station_cap: Power) -> Result<Self, ModelError> {
        let station = StationSpec {
            port_powers,
            station_cap,
        };
        station.validate()?;
        Ok(station)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.port_powers.is_empty() {
            return Err(ModelError::InvalidStation("at least one port is required"));
        }
        if self.port_powers.contains(&Power::ZERO) {
            return Err(ModelError::InvalidStation("port powers must be positive"));
        }
        if self.station_cap == Power::ZERO {
            return Err(ModelError::InvalidStation("station cap must be positive"));
        }
        Ok(())
    }

    #[inline]
    pub fn num_ports(&self) -> usize {
        self.port_powers.len()
    }
}

/// Charging power of `truck` when plugged into port `port_index`: the smaller
/// of the truck's and the port's limit.
pub fn effective_cap(
    truck: &TruckSpec,
    port_index: usize,
    station: &StationSpec,
) -> Result<Power, ModelError> {
    let port = station
        .port_powers
        .get(port_index)
        .ok_or(ModelError::PortOutOfRange {
            index: port_index,
            ports: station.num_ports(),
        })?;
    Ok(truck.power_cap.min(*port))
}
