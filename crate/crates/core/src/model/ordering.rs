use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::ModelError;
use crate::model::TruckId;

/// Which port serves each truck, and in which order.
///
/// Port membership is the only assignment information kept; a truck is
/// connected to its port exactly while it charges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ordering {
    pub per_port: Vec<Vec<TruckId>>,
}

impl Ordering {
    pub fn new(per_port: Vec<Vec<TruckId>>) -> Self {
        Ordering { per_port }
    }

    pub fn empty(num_ports: usize) -> Self {
        Ordering {
            per_port: vec![Vec::new(); num_ports],
        }
    }

    #[inline]
    pub fn num_ports(&self) -> usize {
        self.per_port.len()
    }

    /// Total number of trucks across ports.
    pub fn len(&self) -> usize {
        self.per_port.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.per_port.iter().all(Vec::is_empty)
    }

    /// Checks that the sequences partition `1..=num_trucks` over exactly `num_ports` ports.
    pub fn validate(&self, num_trucks: usize, num_ports: usize) -> Result<(), ModelError> {
        if self.per_port.len() != num_ports {
            return Err(ModelError::InvalidOrdering(format!(
                "{} port sequences for {} ports",
                self.per_port.len(),
                num_ports
            )));
        }
        let mut seen = vec![false; num_trucks];
        for id in self.per_port.iter().flatten() {
            let slot = (id.0 as usize)
                .checked_sub(1)
                .and_then(|i| seen.get_mut(i))
                .ok_or_else(|| ModelError::InvalidOrdering(format!("unknown truck {id}")))?;
            if *slot {
                return Err(ModelError::InvalidOrdering(format!("truck {id} appears twice")));
            }
            *slot = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(ModelError::InvalidOrdering(format!(
                "truck {} is not assigned",
                TruckId::from_index(missing)
            )));
        }
        Ok(())
    }

    /// Consecutive pairs on each port: `(i, j)` means `i` charges before `j`.
    pub fn precedence_arcs(&self) -> Vec<(TruckId, TruckId)> {
        self.per_port
            .iter()
            .flat_map(|seq| seq.windows(2).map(|w| (w[0], w[1])))
            .collect()
    }

    /// Port of every truck, indexed by truck index. Assumes a valid ordering.
    pub fn port_of_each(&self, num_trucks: usize) -> Vec<usize> {
        let mut ports = vec![usize::MAX; num_trucks];
        for (port, seq) in self.per_port.iter().enumerate() {
            for id in seq {
                ports[id.index()] = port;
            }
        }
        ports
    }
}
