//! Tick generation for linear and time axes.
//!
//! Ticks are an arithmetic progression `start + k * step` for
//! `k = 0..=intervals`. The first and last tick bound the scale domain, so
//! every data value lies inside `[tick 0, tick intervals]`.

use chrono::{DateTime, Datelike, NaiveDate};
use serde::{Deserialize, Serialize};

use super::spec::AxisType;

pub const DEFAULT_X_TICKS: usize = 10;
pub const DEFAULT_Y_TICKS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "unit", rename_all = "camelCase")]
pub enum TickStep {
    /// Plain numeric progression.
    #[serde(rename_all = "camelCase")]
    Linear { start: f64, step: f64 },
    /// Whole calendar years; ticks fall on January 1st, UTC.
    #[serde(rename_all = "camelCase")]
    Years { start_year: i64, years: i64 },
    /// Fixed number of seconds on a time axis.
    #[serde(rename_all = "camelCase")]
    Seconds { start: f64, seconds: f64 },
}

impl TickStep {
    pub fn doubled(self) -> Self {
        match self {
            Self::Linear { start, step } => Self::Linear {
                start,
                step: step * 2.0,
            },
            Self::Years { start_year, years } => Self::Years {
                start_year,
                years: years * 2,
            },
            Self::Seconds { start, seconds } => Self::Seconds {
                start,
                seconds: seconds * 2.0,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AxisTicks {
    pub step: TickStep,
    pub intervals: usize,
}

impl AxisTicks {
    /// Builds ticks covering `[min, max]` with roughly `count` intervals.
    pub fn generate(kind: AxisType, min: f64, max: f64, count: usize) -> Self {
        let count = count.max(1);
        let (min, max) = pad_degenerate(min, max);
        match kind {
            AxisType::Linear => linear_ticks(min, max, count),
            AxisType::Time => time_ticks(min, max, count),
        }
    }

    pub fn len(&self) -> usize {
        self.intervals + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self, k: usize) -> f64 {
        match self.step {
            TickStep::Linear { start, step } => start + k as f64 * step,
            TickStep::Seconds { start, seconds } => start + k as f64 * seconds,
            TickStep::Years { start_year, years } => year_start(start_year + k as i64 * years),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..=self.intervals).map(|k| self.value(k)).collect()
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.value(0), self.value(self.intervals))
    }

    /// Keeps every second tick starting from the first. When the last tick
    /// would drop out, the domain grows by one step so that its end still
    /// carries a tick.
    pub fn doubled(&self) -> Self {
        Self {
            step: self.step.doubled(),
            intervals: self.intervals.div_ceil(2),
        }
    }

    pub fn label(&self, k: usize) -> String {
        let v = self.value(k);
        match self.step {
            TickStep::Linear { step, .. } => format_number(v, decimals_for(step)),
            TickStep::Years { .. } => DateTime::from_timestamp(v as i64, 0)
                .map(|d| d.year().to_string())
                .unwrap_or_default(),
            TickStep::Seconds { seconds, .. } => {
                let Some(d) = DateTime::from_timestamp(v as i64, 0) else {
                    return String::new();
                };
                if seconds >= 86_400.0 {
                    d.format("%Y-%m-%d").to_string()
                } else if seconds >= 60.0 {
                    d.format("%H:%M").to_string()
                } else {
                    d.format("%H:%M:%S").to_string()
                }
            }
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..=self.intervals).map(|k| self.label(k)).collect()
    }
}

fn pad_degenerate(min: f64, max: f64) -> (f64, f64) {
    if max > min {
        (min, max)
    } else if min == 0.0 {
        (-1.0, 1.0)
    } else {
        let pad = min.abs() * 0.1;
        (min - pad, max + pad)
    }
}

/// 1-2-5 step closest to `span / count`.
pub fn nice_step(span: f64, count: usize) -> f64 {
    let raw = span / count as f64;
    let power = 10f64.powf(raw.log10().floor());
    let err = raw / power;
    let factor = if err >= 50f64.sqrt() {
        10.0
    } else if err >= 10f64.sqrt() {
        5.0
    } else if err >= 2f64.sqrt() {
        2.0
    } else {
        1.0
    };
    factor * power
}

fn linear_ticks(min: f64, max: f64, count: usize) -> AxisTicks {
    let step = nice_step(max - min, count);
    let lo = snap_floor(min / step);
    let hi = snap_ceil(max / step).max(lo + 1);
    AxisTicks {
        step: TickStep::Linear {
            start: lo as f64 * step,
            step,
        },
        intervals: (hi - lo) as usize,
    }
}

// Ratios that should be integral but carry rounding noise are snapped first.
fn snap_floor(r: f64) -> i64 {
    let n = r.round();
    if (r - n).abs() < 1e-9 {
        n as i64
    } else {
        r.floor() as i64
    }
}

fn snap_ceil(r: f64) -> i64 {
    let n = r.round();
    if (r - n).abs() < 1e-9 {
        n as i64
    } else {
        r.ceil() as i64
    }
}

const SECOND_STEPS: [f64; 24] = [
    1.0, 2.0, 5.0, 10.0, 15.0, 30.0, 60.0, 120.0, 300.0, 600.0, 900.0, 1800.0, 3600.0, 10_800.0,
    21_600.0, 43_200.0, 86_400.0, 172_800.0, 604_800.0, 1_209_600.0, 2_592_000.0, 5_184_000.0,
    7_776_000.0, 15_552_000.0,
];

const YEAR_SECONDS: f64 = 365.2425 * 86_400.0;

fn time_ticks(min: f64, max: f64, count: usize) -> AxisTicks {
    let raw = (max - min) / count as f64;
    if raw >= YEAR_SECONDS * 0.75 {
        let years = nice_step((max - min) / YEAR_SECONDS, count).round().max(1.0) as i64;
        let first_year = year_of(min);
        let origin = first_year.div_euclid(years) * years;
        let mut last_year = year_of(max);
        if year_start(last_year) < max {
            last_year += 1;
        }
        let intervals = ((last_year - origin) as f64 / years as f64).ceil().max(1.0) as usize;
        return AxisTicks {
            step: TickStep::Years {
                start_year: origin,
                years,
            },
            intervals,
        };
    }
    let seconds = SECOND_STEPS
        .iter()
        .copied()
        .find(|&s| s >= raw)
        .unwrap_or(SECOND_STEPS[SECOND_STEPS.len() - 1]);
    let lo = snap_floor(min / seconds);
    let hi = snap_ceil(max / seconds).max(lo + 1);
    AxisTicks {
        step: TickStep::Seconds {
            start: lo as f64 * seconds,
            seconds,
        },
        intervals: (hi - lo) as usize,
    }
}

fn year_of(epoch: f64) -> i64 {
    DateTime::from_timestamp(epoch.floor() as i64, 0)
        .map(|d| d.year() as i64)
        .unwrap_or(1970)
}

/// Epoch seconds of January 1st of `year`, UTC.
pub fn year_start(year: i64) -> f64 {
    NaiveDate::from_ymd_opt(year as i32, 1, 1)
        .and_then(|d| d.and_hms_opt(0, 0, 0))
        .map(|d| d.and_utc().timestamp() as f64)
        .unwrap_or(0.0)
}

fn decimals_for(step: f64) -> usize {
    (0..=8)
        .find(|&d| {
            let scaled = step * 10f64.powi(d as i32);
            (scaled - scaled.round()).abs() < 1e-6 * scaled.abs().max(1.0)
        })
        .unwrap_or(8)
}

/// Fixed-precision formatting without a negative zero.
pub fn format_number(v: f64, decimals: usize) -> String {
    let s = format!("{v:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}
