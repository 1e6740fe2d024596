//! Problem data, schedules, the cost function and the constraint checker.
//!
//! Time is measured in minutes. Charging happens on a uniform grid of
//! [`Timeline`] slots and power is constant inside a slot. A truck's finish
//! time is the instant its cumulative energy reaches the demand, assuming it
//! charges at its effective cap inside its last active slot; this keeps
//! finish times continuous instead of rounding them up to the slot end.

mod cost;
pub(crate) mod instance;
mod ordering;
mod schedule;
mod station;
mod tariff;
mod timeline;
mod truck;
mod validate;

pub use cost::{evaluate_cost, evaluate_truck, CostBreakdown};
pub use instance::Instance;
pub use ordering::Ordering;
pub use schedule::{Schedule, SlotEnergy, TruckSchedule};
pub use station::{effective_cap, StationSpec};
pub use tariff::{Tariff, TariffSegment, DAY_MINUTES};
pub use timeline::Timeline;
pub use truck::{TruckId, TruckSpec};
pub use validate::{validate_schedule, Violation, ViolationKind, DEMAND_TOLERANCE, STATION_CAP_TOLERANCE_KW};
