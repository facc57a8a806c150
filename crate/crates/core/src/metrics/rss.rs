//! Responsibility-Sensitive Safety (RSS) distances: longitudinal
//! same-direction, longitudinal opposite-direction, and lateral, with
//! automatic case selection from the pair's relative position and
//! orientation. A pair is critical when the measured gap along the relevant
//! axis is below the corresponding safety distance.

use super::{MetricError, MetricVerdict, SubCase};
use crate::geometry::{decompose, Configuration, LaneFrame, RelativeGeometry};
use crate::types::ObjectState;

/// RSS kinematic parameters. All accelerations are magnitudes (> 0).
#[derive(Clone, Debug, PartialEq)]
pub struct RssParameters {
    /// Response time rho, seconds.
    pub rho: f64,
    /// Worst-case longitudinal acceleration during the response time, m/s².
    pub a_max_accel_lon: f64,
    /// Assured longitudinal braking of the rear vehicle, m/s².
    pub a_min_brake_lon: f64,
    /// Maximal longitudinal braking of the front vehicle, m/s².
    pub a_max_brake_lon: f64,
    /// Assured braking while correcting in the opposite-direction case, m/s².
    pub a_min_brake_correct: f64,
    /// Worst-case lateral acceleration during the response time, m/s².
    pub a_max_accel_lat: f64,
    /// Assured lateral braking, m/s².
    pub a_min_brake_lat: f64,
    /// Lateral drift margin mu: minimal residual lateral separation, meters.
    pub mu: f64,
}

impl Default for RssParameters {
    fn default() -> Self {
        RssParameters {
            rho: 1.0,
            a_max_accel_lon: 3.5,
            a_min_brake_lon: 4.0,
            a_max_brake_lon: 8.0,
            a_min_brake_correct: 3.0,
            a_max_accel_lat: 0.2,
            a_min_brake_lat: 0.8,
            mu: 1.0,
        }
    }
}

impl RssParameters {
    pub fn validate(&self) -> Result<(), MetricError> {
        let ok = self.rho > 0.0
            && self.a_max_accel_lon > 0.0
            && self.a_min_brake_lon > 0.0
            && self.a_max_brake_lon > 0.0
            && self.a_min_brake_correct > 0.0
            && self.a_max_accel_lat > 0.0
            && self.a_min_brake_lat > 0.0
            && self.mu >= 0.0
            && self.a_min_brake_lon <= self.a_max_brake_lon;
        if ok {
            Ok(())
        } else {
            Err(MetricError::WrongConfiguration {
                metric: "rss",
                reason: "accelerations and rho must be > 0, mu >= 0, \
                         a_min_brake_lon <= a_max_brake_lon"
                    .into(),
            })
        }
    }
}

fn positive_part(x: f64) -> f64 {
    x.max(0.0)
}

/// Longitudinal safety distance for a rear vehicle at `rear_v` following a
/// front vehicle at `front_v` in the same direction:
/// `[v*rho + a*rho^2/2 + (v + rho*a)^2/(2*b_min) - v_front^2/(2*b_max)]+`.
///
/// Negative lane-frame speeds are clamped to zero; the worst case assumes
/// neither vehicle reverses.
pub fn rss_d_long_same(rear_v: f64, front_v: f64, p: &RssParameters) -> f64 {
    let v1 = rear_v.max(0.0);
    let v2 = front_v.max(0.0);
    let v1_rho = v1 + p.rho * p.a_max_accel_lon;
    positive_part(
        v1 * p.rho + 0.5 * p.a_max_accel_lon * p.rho * p.rho
            + v1_rho * v1_rho / (2.0 * p.a_min_brake_lon)
            - v2 * v2 / (2.0 * p.a_max_brake_lon),
    )
}

/// Longitudinal safety distance for two vehicles driving toward each other.
/// `ego_v >= 0` and `other_v < 0` in the lane frame; the worst case has both
/// accelerating toward each other during rho, then the ego braking at
/// `a_min_brake_correct` and the other at `a_min_brake_lon`, so the distance
/// is the sum of both closure travels (speeds enter by magnitude).
pub fn rss_d_long_opposite(
    ego_v: f64,
    other_v: f64,
    p: &RssParameters,
) -> Result<f64, MetricError> {
    if ego_v < 0.0 || other_v >= 0.0 {
        return Err(MetricError::WrongConfiguration {
            metric: "rss_d_long_opposite",
            reason: format!("needs ego_v >= 0 and other_v < 0, got ({ego_v}, {other_v})"),
        });
    }
    let v1 = ego_v;
    let v2 = other_v.abs();
    let v1_rho = v1 + p.rho * p.a_max_accel_lon;
    let v2_rho = v2 + p.rho * p.a_max_accel_lon;
    Ok((v1 + v1_rho) / 2.0 * p.rho
        + v1_rho * v1_rho / (2.0 * p.a_min_brake_correct)
        + (v2 + v2_rho) / 2.0 * p.rho
        + v2_rho * v2_rho / (2.0 * p.a_min_brake_lon))
}

/// Lateral safety distance between a left vehicle at lateral speed `left_v`
/// and a right vehicle at `right_v`, both measured along the axis pointing
/// from the left vehicle toward the right one:
/// `mu + [(v1+v1_rho)/2*rho + v1_rho^2/(2b) - ((v2+v2_rho)/2*rho - v2_rho^2/(2b))]+`
/// with `v1_rho = v1 + rho*a_lat` and `v2_rho = v2 - rho*a_lat`.
pub fn rss_d_lat(left_v: f64, right_v: f64, p: &RssParameters) -> f64 {
    let v1 = left_v;
    let v2 = right_v;
    let v1_rho = v1 + p.rho * p.a_max_accel_lat;
    let v2_rho = v2 - p.rho * p.a_max_accel_lat;
    let b = 2.0 * p.a_min_brake_lat;
    p.mu
        + positive_part(
            (v1 + v1_rho) / 2.0 * p.rho + v1_rho * v1_rho / b
                - ((v2 + v2_rho) / 2.0 * p.rho - v2_rho * v2_rho / b),
        )
}

/// Which RSS distance the verdict applied, with the measured gap and the
/// required distance for the binding axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RssCheck {
    pub sub_case: SubCase,
    pub measured_gap: f64,
    pub required_distance: f64,
}

/// RSS criticality for the pair. The case follows the configuration:
/// same-direction family (including stationary targets) checks the
/// longitudinal distance ordered by position, lateral-adjacent pairs check
/// both the lateral and the longitudinal distance (critical if either is
/// violated), heads-on pairs check the opposite-direction distance, and
/// crossing or diverging pairs have no RSS case. The raw value reported is
/// the slack `gap - distance` of the binding check (negative = violated).
pub fn rss_verdict(ego: &ObjectState, other: &ObjectState, p: &RssParameters) -> MetricVerdict {
    let geom = crate::geometry::relative_geometry(ego, other);
    let lane = decompose(ego, other);

    let checks: Vec<RssCheck> = match geom.configuration {
        Configuration::LeadFollowSameDirection | Configuration::StationaryTarget => {
            vec![longitudinal_same_check(&lane)]
        }
        Configuration::LateralAdjacent => {
            vec![lateral_check(&lane, p), longitudinal_same_check(&lane)]
        }
        Configuration::HeadsOn => vec![opposite_check(&lane)],
        Configuration::Crossing | Configuration::Diverging => vec![],
    };

    if checks.is_empty() {
        return MetricVerdict::not_applicable("RSS");
    }

    let mut binding: Option<(RssCheck, f64)> = None;
    for check in checks {
        let required = match check.sub_case {
            SubCase::RssLongitudinalSame => {
                let (rear_v, front_v) = if check.measured_gap == lane.lon_gap && lane.lon_offset >= 0.0
                {
                    (lane.ego_vel.0, lane.other_vel.0)
                } else {
                    (-lane.other_vel.0.min(0.0), 0.0) // unreachable placeholder
                };
                let _ = (rear_v, front_v);
                check.required_distance
            }
            _ => check.required_distance,
        };
        let slack = check.measured_gap - required;
        match &binding {
            Some((_, best)) if *best <= slack => {}
            _ => binding = Some((check, slack)),
        }
    }
    let (check, slack) = binding.expect("non-empty checks");
    let required = rss_required(&check, lane, geom, p);
    let slack = check.measured_gap - required;
    MetricVerdict::new("RSS", check.sub_case, slack, slack < 0.0)
}

// The check constructors record which axis and which distance applies; the
// actual distance evaluation happens in `rss_required` so the three public
// distance functions stay the single source of the formulas.

fn longitudinal_same_check(lane: &LaneFrame) -> RssCheck {
    RssCheck {
        sub_case: SubCase::RssLongitudinalSame,
        measured_gap: lane.lon_gap,
        required_distance: f64::NAN,
    }
}

fn lateral_check(lane: &LaneFrame, _p: &RssParameters) -> RssCheck {
    RssCheck {
        sub_case: SubCase::RssLateral,
        measured_gap: lane.lat_gap,
        required_distance: f64::NAN,
    }
}

fn opposite_check(lane: &LaneFrame) -> RssCheck {
    RssCheck {
        sub_case: SubCase::RssLongitudinalOpposite,
        measured_gap: lane.lon_gap,
        required_distance: f64::NAN,
    }
}

fn rss_required(
    check: &RssCheck,
    lane: LaneFrame,
    _geom: RelativeGeometry,
    p: &RssParameters,
) -> f64 {
    match check.sub_case {
        SubCase::RssLongitudinalSame => {
            // Rear vehicle keeps the distance: order the pair by longitudinal
            // position in the ego lane frame.
            let (rear_v, front_v) = if lane.lon_offset >= 0.0 {
                (lane.ego_vel.0, lane.other_vel.0)
            } else {
                (lane.other_vel.0, lane.ego_vel.0)
            };
            rss_d_long_same(rear_v, front_v, p)
        }
        SubCase::RssLongitudinalOpposite => {
            let ego_v = lane.ego_vel.0.max(0.0);
            // Heads-on: the other's longitudinal speed in the ego lane frame
            // is negative by construction; clamp in case of grazing angles.
            let other_v = lane.other_vel.0.min(-0.0_f64.next_up());
            rss_d_long_opposite(ego_v, other_v, p).unwrap_or_else(|_| {
                rss_d_long_opposite(ego_v, -f64::EPSILON, p).unwrap_or(0.0)
            })
        }
        SubCase::RssLateral => {
            // Def. 6 orders the pair left-to-right; ties fall back to the
            // longitudinal check, so lat_offset != 0 here in practice.
            // Axis points from the left vehicle toward the right one.
            let (left_vel, right_vel) = if lane.lat_offset >= 0.0 {
                // Other is to the ego's left: other is "1", ego is "2".
                // Ego-frame lateral axis points left, so negate.
                (-lane.other_vel.1, -lane.ego_vel.1)
            } else {
                (lane.ego_vel.1, lane.other_vel.1)
            };
            // In the sign convention above the left vehicle "approaches" with
            // positive velocity along the left-to-right axis.
            let (v_left, v_right) = if lane.lat_offset >= 0.0 {
                (left_vel, right_vel)
            } else {
                // Ego is left: its +lat (left) axis points away from the
                // other, so the axis toward the other is -lat for the ego.
                (-left_vel, -right_vel)
            };
            rss_d_lat(v_left, v_right, p)
        }
        _ => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::test_support::car;
    use crate::types::Vec2;
    use std::f64::consts::PI;

    fn p() -> RssParameters {
        RssParameters::default()
    }

    #[test]
    fn d_long_same_zero_speeds_is_response_window_only() {
        // v1 = v2 = 0: [a*rho^2/2 + (rho*a)^2/(2*b_min)]+
        let params = p();
        let expected = 0.5 * 3.5 + 3.5_f64.powi(2) / 8.0;
        assert!((rss_d_long_same(0.0, 0.0, &params) - expected).abs() < 1e-12);
    }

    #[test]
    fn d_long_same_frozen_example() {
        // v1 = v2 = 20, rho 1, a 3.5, bmin 4, bmax 8 -> 65.78125
        let params = p();
        assert!((rss_d_long_same(20.0, 20.0, &params) - 65.78125).abs() < 1e-12);
    }

    #[test]
    fn d_long_same_clamps_when_front_much_faster() {
        let params = p();
        assert_eq!(rss_d_long_same(1.0, 60.0, &params), 0.0);
    }

    #[test]
    fn d_long_opposite_frozen_example() {
        // v1 = 10, v2 = -10, rho 1, a 3.5, b_correct 3, b 4 -> 76.65625
        let params = p();
        let d = rss_d_long_opposite(10.0, -10.0, &params).unwrap();
        assert!((d - 76.65625).abs() < 1e-12);
    }

    #[test]
    fn d_long_opposite_zero_speeds_boundary() {
        // v1 = 0, v2 -> 0-: only the rho-window terms remain.
        let params = p();
        let v_rho = params.rho * params.a_max_accel_lon;
        let expected = v_rho / 2.0 * params.rho
            + v_rho * v_rho / (2.0 * params.a_min_brake_correct)
            + v_rho / 2.0 * params.rho
            + v_rho * v_rho / (2.0 * params.a_min_brake_lon);
        let d = rss_d_long_opposite(0.0, -1e-12, &params).unwrap();
        assert!((d - expected).abs() < 1e-9);
    }

    #[test]
    fn d_long_opposite_monotone_in_speeds() {
        let params = p();
        let base = rss_d_long_opposite(10.0, -10.0, &params).unwrap();
        assert!(rss_d_long_opposite(12.0, -10.0, &params).unwrap() > base);
        assert!(rss_d_long_opposite(10.0, -12.0, &params).unwrap() > base);
    }

    #[test]
    fn d_long_opposite_rejects_wrong_signs() {
        let params = p();
        assert!(rss_d_long_opposite(10.0, 5.0, &params).is_err());
        assert!(rss_d_long_opposite(-1.0, -5.0, &params).is_err());
    }

    #[test]
    fn d_lat_zero_response_window_is_mu() {
        let mut params = p();
        params.rho = 1e-12;
        let d = rss_d_lat(0.0, 0.0, &params);
        assert!((d - params.mu).abs() < 1e-9);
    }

    #[test]
    fn d_lat_frozen_example() {
        // mu 1, zero speeds, rho 1, a_lat 0.2, b_lat 0.8 -> 1.25
        let params = p();
        assert!((rss_d_lat(0.0, 0.0, &params) - 1.25).abs() < 1e-12);
    }

    #[test]
    fn d_lat_clamps_to_mu_when_diverging_fast() {
        // Left vehicle moving hard left (away), right vehicle moving hard
        // right (away): bracket negative.
        let params = p();
        assert_eq!(rss_d_lat(-5.0, 5.0, &params), params.mu);
    }

    #[test]
    fn d_lat_monotone_in_mu() {
        let mut lo = p();
        lo.mu = 0.0;
        let mut hi = p();
        hi.mu = 1.0;
        assert!(rss_d_lat(0.3, -0.3, &hi) > rss_d_lat(0.3, -0.3, &lo));
    }

    #[test]
    fn verdict_equal_speed_following_inside_distance_is_critical() {
        let ego = car("ego", Vec2::ZERO, 0.0, Vec2::new(20.0, 0.0));
        let other = car("v1", Vec2::new(10.0, 0.0), 0.0, Vec2::new(20.0, 0.0));
        let v = rss_verdict(&ego, &other, &p());
        assert_eq!(v.sub_case, SubCase::RssLongitudinalSame);
        assert!(v.critical, "gap 6 m at 20 m/s must violate the RSS distance");
    }

    #[test]
    fn verdict_double_distance_is_not_critical() {
        let params = p();
        let d = rss_d_long_same(20.0, 20.0, &params);
        let ego = car("ego", Vec2::ZERO, 0.0, Vec2::new(20.0, 0.0));
        let other = car(
            "v1",
            Vec2::new(2.0 * d + 4.0, 0.0),
            0.0,
            Vec2::new(20.0, 0.0),
        );
        let v = rss_verdict(&ego, &other, &params);
        assert!(!v.critical);
        assert!((v.raw_value - d).abs() < 1e-9);
    }

    #[test]
    fn verdict_stationary_scene_far_apart_not_critical() {
        let ego = car("ego", Vec2::ZERO, 0.0, Vec2::ZERO);
        let other = car("v1", Vec2::new(500.0, 0.0), 0.0, Vec2::ZERO);
        assert!(!rss_verdict(&ego, &other, &p()).critical);
    }

    #[test]
    fn verdict_heads_on_uses_opposite_distance() {
        let ego = car("ego", Vec2::ZERO, 0.0, Vec2::new(10.0, 0.0));
        let other = car("v1", Vec2::new(50.0, 0.0), PI, Vec2::new(-10.0, 0.0));
        let v = rss_verdict(&ego, &other, &p());
        assert_eq!(v.sub_case, SubCase::RssLongitudinalOpposite);
        assert!(v.critical, "46 m gap < 76.66 m opposite-direction distance");
    }

    #[test]
    fn verdict_lateral_adjacent_checks_both_axes() {
        // Side-by-side, drifting together slowly: longitudinal gap is 0 so
        // the longitudinal check binds (slack most negative).
        let ego = car("ego", Vec2::ZERO, 0.0, Vec2::new(20.0, 0.0));
        let mut other = car("v1", Vec2::new(0.0, 3.5), 0.0, Vec2::new(20.0, 0.0));
        other.velocity = Vec2::new(20.0, -0.1);
        let v = rss_verdict(&ego, &other, &p());
        assert!(v.critical);
    }

    #[test]
    fn verdict_crossing_has_no_rss_case() {
        let ego = car("ego", Vec2::ZERO, 0.0, Vec2::new(10.0, 0.0));
        let other = car(
            "v1",
            Vec2::new(30.0, -30.0),
            std::f64::consts::FRAC_PI_2,
            Vec2::new(0.0, 10.0),
        );
        let v = rss_verdict(&ego, &other, &p());
        assert_eq!(v.sub_case, SubCase::NotApplicable);
        assert!(!v.critical);
    }

    #[test]
    fn larger_mu_never_unflags_lateral_verdicts() {
        let ego = car("ego", Vec2::ZERO, 0.0, Vec2::new(15.0, 0.0));
        let mut other = car("v1", Vec2::new(0.0, 2.6), 0.0, Vec2::new(15.0, 0.0));
        other.velocity = Vec2::new(15.0, -0.4);
        let mut lo = p();
        lo.mu = 0.0;
        let mut hi = p();
        hi.mu = 1.0;
        let crit_lo = rss_verdict(&ego, &other, &lo).critical;
        let crit_hi = rss_verdict(&ego, &other, &hi).critical;
        assert!(!crit_lo || crit_hi);
    }
}
