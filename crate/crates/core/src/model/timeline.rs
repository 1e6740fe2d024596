use crate::error::ModelError;

/// Uniform slot grid. Slot `s` covers `[origin + s*slot_minutes, origin + (s+1)*slot_minutes)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Timeline {
    pub origin: i64,
    pub slot_minutes: u32,
    pub num_slots: usize,
}

impl Timeline {
    pub fn new(origin: i64, slot_minutes: u32, num_slots: usize) -> Result<Self, ModelError> {
        let timeline = Timeline {
            origin,
            slot_minutes,
            num_slots,
        };
        timeline.validate()?;
        Ok(timeline)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.slot_minutes == 0 {
            return Err(ModelError::InvalidTimeline("slot length must be at least one minute"));
        }
        if self.num_slots == 0 {
            return Err(ModelError::InvalidTimeline("at least one slot is required"));
        }
        Ok(())
    }

    #[inline]
    pub fn slot_start(&self, slot: usize) -> i64 {
        self.origin + slot as i64 * self.slot_minutes as i64
    }

    /// First minute after the horizon.
    #[inline]
    pub fn end(&self) -> i64 {
        self.slot_start(self.num_slots)
    }

    /// Index of the first slot starting at or after `minute`; may equal
    /// `num_slots` (or exceed it) when no such slot exists.
    pub fn first_slot_from(&self, minute: f64) -> usize {
        let rel = (minute - self.origin as f64) / self.slot_minutes as f64;
        if rel <= 0.0 {
            0
        } else {
            libm::ceil(rel) as usize
        }
    }

    #[inline]
    pub fn is_aligned(&self, minute: i64) -> bool {
        (minute - self.origin).rem_euclid(self.slot_minutes as i64) == 0
    }
}
