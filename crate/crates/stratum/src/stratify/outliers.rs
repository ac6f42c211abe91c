//! Robust outlier detection on scalar fields via the median absolute
//! deviation.

use crate::error::{Error, Result};

/// Which tail of the field counts as outlying.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Only values far above the median.
    High,
    /// Only values far below the median.
    Low,
    /// Both tails.
    TwoSided,
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "high" => Ok(Direction::High),
            "low" => Ok(Direction::Low),
            "two-sided" => Ok(Direction::TwoSided),
            other => Err(Error::InvalidParameter {
                name: "direction",
                reason: format!("expected high, low, or two-sided, got {other:?}"),
            }),
        }
    }
}

/// Median of a slice; mean of the two central order statistics for even
/// lengths.
fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Indices whose field value deviates from the median by more than
/// `z` scaled median-absolute-deviations on the requested side.
///
/// The MAD is scaled by 1.4826 to be consistent with the standard
/// deviation under normality. A field with MAD exactly zero (at least
/// half the values equal to the median) yields no outliers: the scale
/// estimate carries no information there, and flagging everything
/// off-median would be arbitrary.
pub fn detect_outliers(field: &[f64], z: f64, direction: Direction) -> Result<Vec<usize>> {
    if field.is_empty() {
        return Err(Error::EmptyInput("outlier detection needs a nonempty field"));
    }
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::InvalidParameter {
            name: "z",
            reason: format!("threshold must be a finite positive number, got {z}"),
        });
    }
    if let Some(bad) = field.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "field",
            reason: format!("field contains a non-finite value {bad}"),
        });
    }
    let mut sorted = field.to_vec();
    sorted.sort_unstable_by(|a, b| a.total_cmp(b));
    let med = median(&sorted);
    let mut deviations: Vec<f64> = field.iter().map(|v| (v - med).abs()).collect();
    deviations.sort_unstable_by(|a, b| a.total_cmp(b));
    let mad = median(&deviations);
    if mad == 0.0 {
        return Ok(Vec::new());
    }
    let cutoff = z * 1.4826 * mad;
    let out = field
        .iter()
        .enumerate()
        .filter(|(_, &v)| match direction {
            Direction::High => v - med > cutoff,
            Direction::Low => med - v > cutoff,
            Direction::TwoSided => (v - med).abs() > cutoff,
        })
        .map(|(i, _)| i)
        .collect();
    Ok(out)
}
