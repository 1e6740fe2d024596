use alloc::vec::Vec;

use crate::error::ModelError;

pub const DAY_MINUTES: i64 = 24 * 60;

/// A price that applies from `start` until the next segment begins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TariffSegment {
    /// Minute at which the segment starts (inclusive).
    pub start: i64,
    /// Price in euros per kWh.
    pub price: f64,
}

/// Piecewise-constant electricity price.
///
/// Segments are left-closed and right-open. With a `period`, segment starts
/// are offsets inside one period and the pattern repeats forever in both
/// directions; without one, the last segment extends to infinity and prices
/// before the first segment are undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct Tariff {
    segments: Vec<TariffSegment>,
    period: Option<i64>,
}

impl Tariff {
    pub fn new(segments: Vec<TariffSegment>, period: Option<i64>) -> Result<Self, ModelError> {
        if segments.is_empty() {
            return Err(ModelError::InvalidTariff("at least one segment is required"));
        }
        if segments.windows(2).any(|w| w[0].start >= w[1].start) {
            return Err(ModelError::InvalidTariff("segment starts must be strictly ascending"));
        }
        if segments.iter().any(|s| !(s.price >= 0.0 && s.price.is_finite())) {
            return Err(ModelError::InvalidTariff("prices must be finite and non-negative"));
        }
        if let Some(period) = period {
            if period <= 0 {
                return Err(ModelError::InvalidTariff("period must be positive"));
            }
            if segments.iter().any(|s| s.start < 0 || s.start >= period) {
                return Err(ModelError::InvalidTariff("periodic segment starts must lie in [0, period)"));
            }
        }
        Ok(Tariff { segments, period })
    }

    /// A single price at all times.
    pub fn flat(price: f64) -> Result<Self, ModelError> {
        Tariff::new(alloc::vec![TariffSegment { start: 0, price }], Some(DAY_MINUTES))
    }

    #[inline]
    pub fn segments(&self) -> &[TariffSegment] {
        &self.segments
    }

    #[inline]
    pub fn period(&self) -> Option<i64> {
        self.period
    }

    /// Price of the segment containing `minute`.
    pub fn price_at(&self, minute: i64) -> Result<f64, ModelError> {
        let (offset, first) = match self.period {
            Some(period) => (minute.rem_euclid(period), None),
            None => (minute, Some(self.segments[0].start)),
        };
        match self.segments.partition_point(|s| s.start <= offset) {
            // Before the first segment: wraps to the previous period's tail.
            0 => match first {
                Some(first) => Err(ModelError::PriceOutOfRange { minute, first }),
                None => Ok(self.segments[self.segments.len() - 1].price),
            },
            n => Ok(self.segments[n - 1].price),
        }
    }

    /// Absolute minutes in `(from, to)` where a segment begins.
    pub fn breakpoints_between(&self, from: i64, to: i64) -> Vec<i64> {
        let mut out = Vec::new();
        match self.period {
            None => out.extend(
                self.segments
                    .iter()
                    .map(|s| s.start)
                    .filter(|m| *m > from && *m < to),
            ),
            Some(period) => {
                let mut base = from.div_euclid(period) * period;
                while base < to {
                    out.extend(
                        self.segments
                            .iter()
                            .map(|s| base + s.start)
                            .filter(|m| *m > from && *m < to),
                    );
                    base += period;
                }
            }
        }
        out
    }
}
