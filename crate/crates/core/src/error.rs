use alloc::string::String;
use thiserror::Error;

use crate::model::TruckId;

/// Rejected input data.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("truck {truck}: {reason}")]
    InvalidTruck { truck: TruckId, reason: &'static str },
    #[error("truck ids must be exactly 1..={expected}, found {found}")]
    TruckIds { expected: usize, found: TruckId },
    #[error("truck {truck} arrives at minute {arrival}, outside the timeline [{start}, {end})")]
    ArrivalOutsideHorizon {
        truck: TruckId,
        arrival: i64,
        start: i64,
        end: i64,
    },
    #[error("station: {0}")]
    InvalidStation(&'static str),
    #[error("tariff: {0}")]
    InvalidTariff(&'static str),
    #[error("tariff breakpoint at minute {minute} is not on a {slot_minutes}-minute slot boundary")]
    MisalignedBreakpoint { minute: i64, slot_minutes: u32 },
    #[error("timeline: {0}")]
    InvalidTimeline(&'static str),
    #[error("no tariff price before minute {first}, requested minute {minute}")]
    PriceOutOfRange { minute: i64, first: i64 },
    #[error("port index {index} out of range for {ports} ports")]
    PortOutOfRange { index: usize, ports: usize },
    #[error("ordering: {0}")]
    InvalidOrdering(String),
    #[error("scenario: {0}")]
    InvalidScenario(&'static str),
}

/// Failures of the inner and outer solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("truck {truck} cannot be scheduled inside the {num_slots}-slot horizon")]
    HorizonExceeded { truck: TruckId, num_slots: usize },
    #[error("total demand {demand_kwh:.3} kWh exceeds what the station cap delivers over the horizon ({deliverable_kwh:.3} kWh)")]
    InfeasibleDemand {
        demand_kwh: f64,
        deliverable_kwh: f64,
    },
    #[error("size guard: {what} is {got}, limit is {limit} ({detail})")]
    SizeGuard {
        what: &'static str,
        got: usize,
        limit: usize,
        detail: String,
    },
    #[error("every candidate ordering at stage {stage} is infeasible")]
    InfeasibleInstance { stage: usize },
    #[error("invalid action: {0}")]
    InvalidAction(String),
}
