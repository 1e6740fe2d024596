//! Exact integer energy and power.
//!
//! Energy is counted in watt-minutes and power in watts. With integer-minute
//! slots, the energy a port can deliver in one slot (`watts * minutes`) is an
//! exact integer, so demand checks and flow capacities never drift. The public
//! API speaks kWh and kW; conversions round to the nearest watt-hour and watt.

use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Sub, SubAssign};

const WMIN_PER_WH: u64 = 60;
const WMIN_PER_KWH: f64 = 60_000.0;

/// An amount of energy, stored as integer watt-minutes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Energy(u64);

impl Energy {
    pub const ZERO: Energy = Energy(0);

    /// One watt-hour, the resolution of every kWh value crossing the API.
    pub const WATT_HOUR: Energy = Energy(WMIN_PER_WH);

    #[inline]
    pub const fn from_watt_minutes(wmin: u64) -> Self {
        Energy(wmin)
    }

    #[inline]
    pub const fn from_wh(wh: u64) -> Self {
        Energy(wh * WMIN_PER_WH)
    }

    /// Rounds to the nearest watt-hour. Negative and non-finite inputs map to zero.
    pub fn from_kwh(kwh: f64) -> Self {
        if !kwh.is_finite() || kwh <= 0.0 {
            return Energy::ZERO;
        }
        Energy::from_wh(libm::round(kwh * 1000.0) as u64)
    }

    #[inline]
    pub const fn watt_minutes(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn kwh(self) -> f64 {
        self.0 as f64 / WMIN_PER_KWH
    }

    #[inline]
    pub fn wh(self) -> f64 {
        self.0 as f64 / WMIN_PER_WH as f64
    }

    #[inline]
    pub fn saturating_sub(self, rhs: Energy) -> Energy {
        Energy(self.0.saturating_sub(rhs.0))
    }

    /// Absolute difference.
    #[inline]
    pub fn abs_diff(self, rhs: Energy) -> Energy {
        Energy(self.0.abs_diff(rhs.0))
    }
}

impl Add for Energy {
    type Output = Energy;
    fn add(self, rhs: Energy) -> Energy {
        Energy(self.0 + rhs.0)
    }
}

impl AddAssign for Energy {
    fn add_assign(&mut self, rhs: Energy) {
        self.0 += rhs.0;
    }
}

impl Sub for Energy {
    type Output = Energy;
    fn sub(self, rhs: Energy) -> Energy {
        Energy(self.0 - rhs.0)
    }
}

impl SubAssign for Energy {
    fn sub_assign(&mut self, rhs: Energy) {
        self.0 -= rhs.0;
    }
}

impl Sum for Energy {
    fn sum<I: Iterator<Item = Energy>>(iter: I) -> Energy {
        iter.fold(Energy::ZERO, Add::add)
    }
}

impl fmt::Display for Energy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.3} kWh", self.kwh())
    }
}

/// A charging power, stored as integer watts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Power(u64);

impl Power {
    pub const ZERO: Power = Power(0);

    #[inline]
    pub const fn from_watts(watts: u64) -> Self {
        Power(watts)
    }

    /// Rounds to the nearest watt. Negative and non-finite inputs map to zero.
    pub fn from_kw(kw: f64) -> Self {
        if !kw.is_finite() || kw <= 0.0 {
            return Power::ZERO;
        }
        Power(libm::round(kw * 1000.0) as u64)
    }

    #[inline]
    pub const fn watts(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn kw(self) -> f64 {
        self.0 as f64 / 1000.0
    }

    /// Energy delivered at this power over `minutes`.
    #[inline]
    pub const fn over_minutes(self, minutes: u32) -> Energy {
        Energy(self.0 * minutes as u64)
    }

    /// Average power that delivers `energy` in `minutes`, in kW.
    #[inline]
    pub fn average_kw(energy: Energy, minutes: u32) -> f64 {
        energy.0 as f64 / minutes as f64 / 1000.0
    }
}

impl fmt::Display for Power {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.3} kW", self.kw())
    }
}
