//! Charging schedules for electric truck fleets sharing one station.
//!
//! A fleet of trucks queues at a station with a handful of ports and an
//! aggregate power limit. The scheduling problem splits in two layers:
//!
//! - the **outer** layer picks an [`Ordering`]: which port each truck uses and
//!   in which sequence;
//! - the **inner** layer ([`inner::inner_solve`]) fixes start times and the
//!   per-slot power of every truck for a given ordering.
//!
//! The outer layer is searched either by the one-step lookahead rollout in
//! [`rollout`], by the list-scheduling heuristics in [`policies`], or
//! exhaustively by [`exact`] for small fleets.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reporting and
//! the command line live in the `fleetcharge` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod exact;
pub mod inner;
pub mod model;
pub mod policies;
pub mod rollout;
pub mod scenario;
pub mod units;

pub use error::{ModelError, SolveError};
pub use inner::{inner_bruteforce, inner_solve, InnerConfig, InnerSolution, InnerStats};
pub use model::{
    effective_cap, evaluate_cost, validate_schedule, CostBreakdown, Instance, Ordering, Schedule,
    StationSpec, Tariff, TariffSegment, Timeline, TruckId, TruckSchedule, TruckSpec, Violation,
    ViolationKind,
};
pub use policies::{base_order, complete_partial, PolicyKind};
pub use rollout::{rollout_solve, Action, PartialState, RolloutConfig, RolloutTrace};
pub use units::{Energy, Power};
