//! Criticality metrics.
//!
//! Each metric maps a pair of road-user states (plus its parameter record) to
//! a [`MetricVerdict`]: the raw metric value, the formula sub-case that was
//! applied, and the boolean threshold decision. Metrics are total functions —
//! configurations a metric cannot judge yield a non-critical verdict with an
//! infinite raw value instead of an error.

pub mod lsm;
pub mod rss;
pub mod sacred;
pub mod time_based;

use std::fmt;
use thiserror::Error;

/// Which formula variant a metric applied for a given pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubCase {
    /// Time-to-collision against a (near-)stationary target: gap / ego speed.
    TtcStationaryTarget,
    /// Time-to-collision in the same-direction case: gap / |speed difference|.
    TtcSameDirection,
    /// Time-to-collision heads-on: gap / (speed sum).
    TtcHeadsOn,
    /// Time-to-collision on a crossing course: gap / closing speed.
    TtcCrossing,
    /// Relative motion is opening (or holding); no collision course.
    NotApproaching,
    /// The metric does not apply to this pair configuration.
    NotApplicable,
    /// Modified TTC with negligible relative acceleration (linear limit).
    MttcLinear,
    /// Modified TTC via the relative-motion quadratic.
    MttcQuadratic,
    /// Quadratic has no positive real root.
    MttcNoRoot,
    Ttb,
    Tta,
    Cif,
    /// Required longitudinal perception range vs. gap.
    LsmRange,
    /// RSS longitudinal safety distance, same direction.
    RssLongitudinalSame,
    /// RSS longitudinal safety distance, opposite directions.
    RssLongitudinalOpposite,
    /// RSS lateral safety distance.
    RssLateral,
    /// SACRED / SURE-Val minimum-distance sub-metric.
    Sacred,
}

impl fmt::Display for SubCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SubCase::TtcStationaryTarget => "ttc_stationary_target",
            SubCase::TtcSameDirection => "ttc_same_direction",
            SubCase::TtcHeadsOn => "ttc_heads_on",
            SubCase::TtcCrossing => "ttc_crossing",
            SubCase::NotApproaching => "not_approaching",
            SubCase::NotApplicable => "not_applicable",
            SubCase::MttcLinear => "mttc_linear",
            SubCase::MttcQuadratic => "mttc_quadratic",
            SubCase::MttcNoRoot => "mttc_no_root",
            SubCase::Ttb => "ttb",
            SubCase::Tta => "tta",
            SubCase::Cif => "cif",
            SubCase::LsmRange => "lsm_range",
            SubCase::RssLongitudinalSame => "rss_longitudinal_same",
            SubCase::RssLongitudinalOpposite => "rss_longitudinal_opposite",
            SubCase::RssLateral => "rss_lateral",
            SubCase::Sacred => "sacred",
        };
        f.write_str(s)
    }
}

/// Outcome of one metric applied to one (actor, target) pair in one frame.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricVerdict {
    /// Metric family name as it appears in reports (e.g. "TTC").
    pub metric_name: String,
    pub sub_case: SubCase,
    /// Raw metric value. `+inf` encodes "no demand" for time/distance
    /// metrics and is always non-critical.
    pub raw_value: f64,
    pub critical: bool,
}

impl MetricVerdict {
    pub fn new(metric_name: &str, sub_case: SubCase, raw_value: f64, critical: bool) -> Self {
        MetricVerdict {
            metric_name: metric_name.to_owned(),
            sub_case,
            raw_value,
            critical,
        }
    }

    /// Non-critical verdict for a pair the metric cannot judge.
    pub fn not_applicable(metric_name: &str) -> Self {
        MetricVerdict::new(metric_name, SubCase::NotApplicable, f64::INFINITY, false)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("crash index undefined: MTTC is {mttc} (needs a finite positive value)")]
    UndefinedCrashIndex { mttc: f64 },
    #[error("wrong configuration for {metric}: {reason}")]
    WrongConfiguration {
        metric: &'static str,
        reason: String,
    },
}
