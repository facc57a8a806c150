//! Time-to-X metrics: TTC with its three sub-cases, modified TTC with the
//! Crash Index, time-to-brake, time-to-accident, and the criticality index
//! function.

use super::{MetricError, MetricVerdict, SubCase};
use crate::geometry::{decompose, Configuration, RelativeGeometry};
use crate::types::ObjectState;

/// Denominators at or below this are treated as no relative motion, m/s.
pub const SPEED_EPS: f64 = 1e-6;

/// Relative accelerations at or below this collapse MTTC to its linear
/// (TTC) limit, m/s².
pub const ACCEL_EPS: f64 = 1e-9;

/// Which radicand the MTTC quadratic uses. `RelativeSpeed` is the form that
/// degenerates to TTC and zeroes the projected gap at the root;
/// `EgoSpeedForensic` keeps the other published variant selectable for
/// comparison runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MttcRadicand {
    #[default]
    RelativeSpeed,
    EgoSpeedForensic,
}

/// How the mean speed entering the TTA formula is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MeanSpeedMode {
    /// Mean of both road users' speed magnitudes.
    #[default]
    PairMean,
    /// Ego speed only.
    EgoOnly,
}

/// Thresholds and kinematic parameters for the time-based metrics.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeMetricConfig {
    /// TTC criticality threshold, seconds.
    pub ttc_threshold: f64,
    /// MTTC criticality threshold, seconds.
    pub mttc_threshold: f64,
    /// TTB criticality threshold, seconds.
    pub ttb_threshold: f64,
    /// TTA criticality threshold, seconds.
    pub tta_threshold: f64,
    /// CIF criticality threshold, m²/s³ (above-threshold metric).
    pub cif_threshold: f64,
    pub tta_mean_speed_mode: MeanSpeedMode,
    /// Braking deceleration assumed by TTB, m/s², > 0.
    pub ttb_brake_decel: f64,
    pub mttc_radicand: MttcRadicand,
}

impl Default for TimeMetricConfig {
    fn default() -> Self {
        TimeMetricConfig {
            ttc_threshold: 4.0,
            mttc_threshold: 4.0,
            ttb_threshold: 1.0,
            tta_threshold: 1.5,
            cif_threshold: 100.0,
            tta_mean_speed_mode: MeanSpeedMode::default(),
            // Hard braking on dry asphalt.
            ttb_brake_decel: 8.0,
            mttc_radicand: MttcRadicand::default(),
        }
    }
}

impl TimeMetricConfig {
    pub fn validate(&self) -> Result<(), MetricError> {
        let all_positive = self.ttc_threshold > 0.0
            && self.mttc_threshold > 0.0
            && self.ttb_threshold > 0.0
            && self.tta_threshold > 0.0
            && self.cif_threshold > 0.0
            && self.ttb_brake_decel > 0.0;
        if all_positive {
            Ok(())
        } else {
            Err(MetricError::WrongConfiguration {
                metric: "time_based",
                reason: "all thresholds and ttb_brake_decel must be > 0".into(),
            })
        }
    }
}

/// Time-to-collision. The sub-case follows the pair configuration:
/// stationary target divides the gap by the ego speed, same-direction by the
/// absolute speed difference, heads-on by the speed sum, and a crossing
/// course by the closing speed. Opening pairs and vanishing denominators
/// yield `+inf`. Critical iff the value is strictly below the threshold.
pub fn ttc(geom: &RelativeGeometry, cfg: &TimeMetricConfig) -> MetricVerdict {
    let (sub_case, denominator) = match geom.configuration {
        Configuration::Diverging => (SubCase::NotApproaching, 0.0),
        Configuration::StationaryTarget => (SubCase::TtcStationaryTarget, geom.ego_speed),
        Configuration::LeadFollowSameDirection | Configuration::LateralAdjacent => (
            SubCase::TtcSameDirection,
            (geom.ego_speed - geom.other_speed).abs(),
        ),
        Configuration::HeadsOn => (SubCase::TtcHeadsOn, geom.ego_speed + geom.other_speed),
        Configuration::Crossing => (SubCase::TtcCrossing, geom.closing_speed),
    };

    // A receding ego w.r.t. a stationary target is still not on a collision
    // course even though the configuration names the target.
    let approaching = geom.closing_speed > 0.0 || geom.gap == 0.0;
    let value = if sub_case == SubCase::NotApproaching || !approaching || denominator <= SPEED_EPS
    {
        f64::INFINITY
    } else {
        geom.gap / denominator
    };

    MetricVerdict::new("TTC", sub_case, value, value < cfg.ttc_threshold)
}

/// Smallest positive root of `0.5*da*t^2 + dv*t - gap = 0`, the time at
/// which the projected gap under constant relative speed `dv` and relative
/// acceleration `da` reaches zero. Numerically stable for small `da`.
pub fn smallest_positive_root(
    dv: f64,
    da: f64,
    gap: f64,
    radicand: MttcRadicand,
    ego_speed: f64,
) -> Option<f64> {
    if da.abs() <= ACCEL_EPS {
        if dv > SPEED_EPS {
            return Some(gap / dv);
        }
        return None;
    }

    let speed_term = match radicand {
        MttcRadicand::RelativeSpeed => dv * dv,
        MttcRadicand::EgoSpeedForensic => ego_speed * ego_speed,
    };
    let disc = speed_term + 2.0 * da * gap;
    if disc < 0.0 {
        return None;
    }
    // Stable quadratic roots for a = da/2, b = dv, c = -gap.
    let sqrt_disc = disc.sqrt();
    let q = -0.5 * (dv + dv.signum() * sqrt_disc);
    let a = 0.5 * da;
    let c = -gap;
    let mut roots = [f64::NAN, f64::NAN];
    if q.abs() > 0.0 {
        roots[0] = c / q;
    }
    if a.abs() > 0.0 && q.abs() > 0.0 {
        roots[1] = q / a;
    } else if a.abs() > 0.0 {
        // dv == 0: t^2 = gap / (0.5*da)
        let t2 = -c / a;
        if t2 >= 0.0 {
            roots = [t2.sqrt(), -t2.sqrt()];
        }
    }
    roots
        .into_iter()
        .filter(|t| t.is_finite() && *t >= 0.0)
        .fold(None, |best: Option<f64>, t| match best {
            Some(b) if b <= t => Some(b),
            _ => Some(t),
        })
}

/// Modified time-to-collision: accounts for the relative acceleration by
/// solving the quadratic gap projection. Degenerates to TTC as the relative
/// acceleration vanishes; pairs with no positive real root (and opening
/// pairs) yield `+inf`.
pub fn mttc(geom: &RelativeGeometry, cfg: &TimeMetricConfig) -> MetricVerdict {
    if geom.configuration == Configuration::Diverging {
        return MetricVerdict::new("MTTC", SubCase::NotApproaching, f64::INFINITY, false);
    }
    let linear = geom.relative_accel.abs() <= ACCEL_EPS;
    let root = smallest_positive_root(
        geom.closing_speed,
        geom.relative_accel,
        geom.gap,
        cfg.mttc_radicand,
        geom.ego_speed,
    );
    let (sub_case, value) = match (root, linear) {
        (Some(t), true) => (SubCase::MttcLinear, t),
        (Some(t), false) => (SubCase::MttcQuadratic, t),
        (None, _) => (SubCase::MttcNoRoot, f64::INFINITY),
    };
    MetricVerdict::new("MTTC", sub_case, value, value < cfg.mttc_threshold)
}

/// Crash Index: potential collision severity at the projected MTTC instant,
/// `[(v1 + a1*MTTC)^2 - (v2 + a2*MTTC)^2] / (2*MTTC)`, with speeds and
/// accelerations taken as longitudinal scalars in the ego lane frame.
pub fn crash_index(
    ego: &ObjectState,
    other: &ObjectState,
    mttc: f64,
) -> Result<f64, MetricError> {
    if !mttc.is_finite() || mttc <= 0.0 {
        return Err(MetricError::UndefinedCrashIndex { mttc });
    }
    let lon = ego.heading_axis();
    let v1 = ego.velocity.dot(lon);
    let v2 = other.velocity.dot(lon);
    let a1 = ego.acceleration.dot(lon);
    let a2 = other.acceleration.dot(lon);
    let s1 = v1 + a1 * mttc;
    let s2 = v2 + a2 * mttc;
    Ok((s1 * s1 - s2 * s2) / (2.0 * mttc))
}

/// Time-to-brake: time budget before the ego must begin a braking maneuver
/// at `ttb_brake_decel` to avoid the vehicle ahead,
/// `[-(v1-v2) + sqrt((v1-v2)^2 + 2*a*gap)] / a`. Applies only to targets
/// ahead in the ego lane frame; opening pairs yield `+inf`.
pub fn ttb(
    ego: &ObjectState,
    other: &ObjectState,
    gap: f64,
    cfg: &TimeMetricConfig,
) -> MetricVerdict {
    let lane = decompose(ego, other);
    if lane.lon_offset <= 0.0 {
        return MetricVerdict::not_applicable("TTB");
    }
    let dv = lane.ego_vel.0 - lane.other_vel.0;
    if dv <= 0.0 && gap > 0.0 {
        return MetricVerdict::new("TTB", SubCase::NotApproaching, f64::INFINITY, false);
    }
    let a = cfg.ttb_brake_decel;
    let disc = dv * dv + 2.0 * a * gap;
    let value = if disc < 0.0 {
        f64::INFINITY
    } else {
        (-dv + disc.sqrt()) / a
    };
    MetricVerdict::new("TTB", SubCase::Ttb, value, value < cfg.ttb_threshold)
}

/// Time-to-accident: `1.5 * v1 / (16.7 * exp(-0.0306 * 0.5 * V_m))` with the
/// mean speed `V_m` supplied by the caller. Critical iff strictly below the
/// threshold.
pub fn tta(ego: &ObjectState, mean_speed: f64, cfg: &TimeMetricConfig) -> MetricVerdict {
    let v1 = ego.speed();
    let value = 1.5 * v1 / (16.7 * (-0.0306 * 0.5 * mean_speed).exp());
    MetricVerdict::new("TTA", SubCase::Tta, value, value < cfg.tta_threshold)
}

/// Mean speed per the configured mode, for the TTA formula.
pub fn mean_speed(ego: &ObjectState, other: &ObjectState, mode: MeanSpeedMode) -> f64 {
    match mode {
        MeanSpeedMode::PairMean => 0.5 * (ego.speed() + other.speed()),
        MeanSpeedMode::EgoOnly => ego.speed(),
    }
}

/// Criticality index function: `v1^2 / TTC`, a severity-weighted companion
/// to TTC. Critical iff strictly *above* the threshold; an infinite TTC
/// yields zero (no demand).
pub fn cif(ego: &ObjectState, ttc: f64, cfg: &TimeMetricConfig) -> MetricVerdict {
    let v1 = ego.speed();
    let value = if ttc.is_finite() && ttc > 0.0 {
        v1 * v1 / ttc
    } else {
        0.0
    };
    MetricVerdict::new("CIF", SubCase::Cif, value, value > cfg.cif_threshold)
}
