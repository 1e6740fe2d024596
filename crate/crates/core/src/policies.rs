//! List-scheduling base policies.
//!
//! Each policy sorts trucks by a single key and hands them out one at a time
//! to the port that frees up first, where a port's availability is simulated
//! with nominal (full-power) charging durations and the station cap ignored.
//! Because [`complete_partial`] uses the very same rule, extending a base
//! ordering's prefix by the policy reproduces the base ordering itself.

use alloc::vec::Vec;
use core::cmp::Ordering as CmpOrdering;
use core::fmt;
use core::str::FromStr;

use crate::error::ModelError;
use crate::model::{Instance, Ordering, TruckId};
use crate::rollout::PartialState;

/// Priority rule of a base policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolicyKind {
    /// First come, first served: earliest arrival first.
    Fcfs,
    /// Earliest deadline first.
    Edf,
    /// Smallest charging demand first.
    Scdf,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 3] = [PolicyKind::Fcfs, PolicyKind::Edf, PolicyKind::Scdf];

    pub fn name(self) -> &'static str {
        match self {
            PolicyKind::Fcfs => "fcfs",
            PolicyKind::Edf => "edf",
            PolicyKind::Scdf => "scdf",
        }
    }

    /// Compares two trucks by this policy's key, then by id.
    pub fn compare(self, instance: &Instance, a: TruckId, b: TruckId) -> CmpOrdering {
        let (ta, tb) = (instance.truck(a), instance.truck(b));
        let by_key = match self {
            PolicyKind::Fcfs => ta.arrival.cmp(&tb.arrival),
            PolicyKind::Edf => ta.deadline.total_cmp(&tb.deadline),
            PolicyKind::Scdf => ta.demand.cmp(&tb.demand),
        };
        by_key.then(a.cmp(&b))
    }

    /// All trucks, highest priority first.
    pub fn priority(self, instance: &Instance) -> Vec<TruckId> {
        let mut ids: Vec<TruckId> = instance.trucks().iter().map(|t| t.id).collect();
        ids.sort_by(|&a, &b| self.compare(instance, a, b));
        ids
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Returned when a policy name is not one of `fcfs`, `edf`, `scdf`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownPolicy;

impl fmt::Display for UnknownPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected one of fcfs, edf, scdf")
    }
}

impl FromStr for PolicyKind {
    type Err = UnknownPolicy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fcfs" => Ok(PolicyKind::Fcfs),
            "edf" => Ok(PolicyKind::Edf),
            "scdf" => Ok(PolicyKind::Scdf),
            _ => Err(UnknownPolicy),
        }
    }
}

/// The ordering a policy builds from scratch.
pub fn base_order(instance: &Instance, kind: PolicyKind) -> Ordering {
    let empty = PartialState::new(instance.num_trucks(), instance.num_ports());
    complete_partial(instance, &empty, kind).expect("the empty state fits every instance")
}

/// Appends the unassigned trucks of `partial` in policy order.
pub fn complete_partial(instance: &Instance, partial: &PartialState, kind: PolicyKind) -> Result<Ordering, ModelError> {
    check_shape(instance, partial)?;
    Ok(complete_in_order(instance, partial, &kind.priority(instance)))
}

/// [`complete_partial`] with the policy's priority list computed once by the caller.
pub(crate) fn complete_in_order(instance: &Instance, partial: &PartialState, priority: &[TruckId]) -> Ordering {
    let mut per_port: Vec<Vec<TruckId>> = partial.per_port().to_vec();
    let mut available: Vec<usize> = per_port
        .iter()
        .enumerate()
        .map(|(port, seq)| seq.iter().fold(0, |free, &id| next_free(instance, free, id, port)))
        .collect();
    for &id in priority.iter().filter(|&&id| !partial.is_assigned(id)) {
        let port = earliest_port(&available);
        available[port] = next_free(instance, available[port], id, port);
        per_port[port].push(id);
    }
    Ordering::new(per_port)
}

/// The port a policy gives its next truck, given each port's free slot.
pub(crate) fn earliest_port(available: &[usize]) -> usize {
    // min_by_key keeps the first minimum, i.e. the lowest port index.
    available
        .iter()
        .enumerate()
        .min_by_key(|&(_, &free)| free)
        .map(|(port, _)| port)
        .expect("instances have at least one port")
}

/// Slot at which `port` frees up again after serving `id` at full power.
pub(crate) fn next_free(instance: &Instance, free: usize, id: TruckId, port: usize) -> usize {
    free.max(instance.arrival_slot(id)) + instance.nominal_slots(id, port)
}

fn check_shape(instance: &Instance, partial: &PartialState) -> Result<(), ModelError> {
    if partial.num_ports() != instance.num_ports() {
        return Err(ModelError::InvalidOrdering(alloc::format!(
            "partial state has {} ports, instance has {}",
            partial.num_ports(),
            instance.num_ports()
        )));
    }
    if partial.num_trucks() != instance.num_trucks() {
        return Err(ModelError::InvalidOrdering(alloc::format!(
            "partial state covers {} trucks, instance has {}",
            partial.num_trucks(),
            instance.num_trucks()
        )));
    }
    Ok(())
}
