//! Calendar months as a totally ordered integer index.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonthParseError {
    #[error("expected YYYY-MM, got {0:?}")]
    Format(String),
    #[error("month {month} out of range 1-12 in {text:?}")]
    InvalidMonth { text: String, month: u32 },
}

/// A calendar month, stored as `year * 12 + (month - 1)`.
///
/// Differences between two months are exact integer month counts, so every
/// duration in the crate is computed with integer arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Month(i32);

impl Month {
    pub fn new(year: i32, month: u32) -> Option<Self> {
        if (1..=12).contains(&month) {
            Some(Month(year * 12 + month as i32 - 1))
        } else {
            None
        }
    }

    pub const fn from_ordinal(ordinal: i32) -> Self {
        Month(ordinal)
    }

    pub const fn ordinal(self) -> i32 {
        self.0
    }

    pub fn year(self) -> i32 {
        self.0.div_euclid(12)
    }

    /// Calendar month, 1-12.
    pub fn month(self) -> u32 {
        self.0.rem_euclid(12) as u32 + 1
    }

    /// Signed number of months from `earlier` to `self`.
    pub fn months_since(self, earlier: Month) -> i32 {
        self.0 - earlier.0
    }
}

impl Add<i32> for Month {
    type Output = Month;
    fn add(self, rhs: i32) -> Month {
        Month(self.0 + rhs)
    }
}

impl Sub<i32> for Month {
    type Output = Month;
    fn sub(self, rhs: i32) -> Month {
        Month(self.0 - rhs)
    }
}

impl Sub for Month {
    type Output = i32;
    fn sub(self, rhs: Month) -> i32 {
        self.0 - rhs.0
    }
}

impl fmt::Display for Month {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year(), self.month())
    }
}

impl FromStr for Month {
    type Err = MonthParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        let (y, m) = text
            .split_once('-')
            .ok_or_else(|| MonthParseError::Format(text.to_string()))?;
        if y.len() != 4 || m.len() != 2 {
            return Err(MonthParseError::Format(text.to_string()));
        }
        let year: i32 = y
            .parse()
            .map_err(|_| MonthParseError::Format(text.to_string()))?;
        let month: u32 = m
            .parse()
            .map_err(|_| MonthParseError::Format(text.to_string()))?;
        Month::new(year, month).ok_or(MonthParseError::InvalidMonth {
            text: text.to_string(),
            month,
        })
    }
}

impl Serialize for Month {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Month {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Inclusive range of months.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub start: Month,
    pub end: Month,
}

impl Window {
    /// Returns `None` when `end < start`.
    pub fn new(start: Month, end: Month) -> Option<Self> {
        (end >= start).then_some(Window { start, end })
    }

    pub fn len(&self) -> usize {
        (self.end - self.start + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, m: Month) -> bool {
        m >= self.start && m <= self.end
    }

    /// Position of `m` in the window, if inside.
    pub fn offset(&self, m: Month) -> Option<usize> {
        self.contains(m).then(|| (m - self.start) as usize)
    }

    pub fn months(&self) -> impl Iterator<Item = Month> {
        let start = self.start;
        (0..self.len() as i32).map(move |i| start + i)
    }
}

impl Default for Window {
    /// June 2022 through June 2024.
    fn default() -> Self {
        Window {
            start: Month::new(2022, 6).unwrap(),
            end: Month::new(2024, 6).unwrap(),
        }
    }
}
