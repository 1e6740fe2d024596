//! Minute values written either as plain numbers or as `HH:MM`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Parses `HH:MM` into minutes. Hours may exceed 23 for multi-day horizons.
pub fn parse_clock(text: &str) -> Option<i64> {
    let (h, m) = text.trim().split_once(':')?;
    if h.is_empty() || m.len() != 2 || !h.bytes().all(|b| b.is_ascii_digit()) || !m.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let (h, m): (i64, i64) = (h.parse().ok()?, m.parse().ok()?);
    (m < 60).then_some(h * 60 + m)
}

/// Formats non-negative minutes as `HH:MM`.
pub fn format_clock(minutes: i64) -> String {
    format!("{:02}:{:02}", minutes / 60, minutes % 60)
}

/// A point in time in an instance file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TimeValue {
    Minutes(f64),
    Clock(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BadTime(pub String);

impl fmt::Display for BadTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}` is neither a minute count nor HH:MM", self.0)
    }
}

impl TimeValue {
    pub fn minutes(&self) -> Result<f64, BadTime> {
        match self {
            TimeValue::Minutes(m) if m.is_finite() => Ok(*m),
            TimeValue::Minutes(m) => Err(BadTime(m.to_string())),
            TimeValue::Clock(s) => parse_clock(s).map(|m| m as f64).ok_or_else(|| BadTime(s.clone())),
        }
    }

    /// The value as a whole minute.
    pub fn whole_minutes(&self) -> Result<i64, BadTime> {
        let m = self.minutes()?;
        if m.fract() == 0.0 && m.abs() < 1e15 {
            Ok(m as i64)
        } else {
            Err(BadTime(format!("{m} (whole minutes required)")))
        }
    }

    /// Clock text for times within the first day, a number otherwise.
    pub fn from_minute(minute: i64) -> Self {
        if (0..24 * 60).contains(&minute) {
            TimeValue::Clock(format_clock(minute))
        } else {
            TimeValue::Minutes(minute as f64)
        }
    }
}
