//! Relative kinematics between two road users: extent-adjusted gaps, closing
//! speed, interaction configuration, and the ego lane-frame decomposition
//! every metric builds on.

use crate::types::{ObjectState, Vec2};

/// Other-object speed below which the pair is classified as
/// `StationaryTarget`, m/s.
pub const STATIONARY_SPEED_EPS: f64 = 0.1;

/// Heading-difference bound for the same-direction family, radians (45°).
pub const SAME_DIRECTION_MAX: f64 = std::f64::consts::FRAC_PI_4;

/// Heading-difference bound above which a pair counts as heads-on,
/// radians (135°).
pub const HEADS_ON_MIN: f64 = 3.0 * std::f64::consts::FRAC_PI_4;

/// How two road users relate kinematically. Total classification: every
/// state pair maps to exactly one configuration.
///
/// Precedence: a near-stationary target wins, then a strictly opening pair is
/// `Diverging`, then the heading difference decides among the moving classes.
/// `LateralAdjacent` is the same-direction case with longitudinally
/// overlapping spans and clear lateral separation (side-by-side traffic).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Configuration {
    LeadFollowSameDirection,
    HeadsOn,
    LateralAdjacent,
    Crossing,
    Diverging,
    StationaryTarget,
}

impl std::fmt::Display for Configuration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Configuration::LeadFollowSameDirection => "lead_follow_same_direction",
            Configuration::HeadsOn => "heads_on",
            Configuration::LateralAdjacent => "lateral_adjacent",
            Configuration::Crossing => "crossing",
            Configuration::Diverging => "diverging",
            Configuration::StationaryTarget => "stationary_target",
        };
        f.write_str(s)
    }
}

/// Relative geometry of an (ego, other) pair.
///
/// `gap` is the extent-adjusted separation along the center-connecting axis,
/// clamped at zero: contact means `gap == 0`. `center_distance` is kept
/// alongside because the SACRED family subtracts extents through its own
/// formulas instead.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelativeGeometry {
    /// Extent-adjusted separation, meters, >= 0.
    pub gap: f64,
    /// Center-to-center distance, meters.
    pub center_distance: f64,
    /// Rate at which the separation shrinks, m/s. Positive = approaching.
    pub closing_speed: f64,
    /// Rate at which the closing speed grows, m/s². Positive = closing
    /// accelerates.
    pub relative_accel: f64,
    pub configuration: Configuration,
    /// Ego speed magnitude, m/s.
    pub ego_speed: f64,
    /// Other-object speed magnitude, m/s.
    pub other_speed: f64,
    /// Ego half-extent projected onto the center axis, meters.
    pub ego_half_extent: f64,
    /// Other half-extent projected onto the center axis, meters.
    pub other_half_extent: f64,
}

/// Half-extent of an oriented box along the unit direction `axis`
/// (the box's support radius in that direction).
pub fn projected_half_extent(state: &ObjectState, axis: Vec2) -> f64 {
    let along = axis.dot(state.heading_axis()).abs();
    let across = axis.dot(state.heading_axis().perp()).abs();
    0.5 * state.length * along + 0.5 * state.width * across
}

/// Smallest absolute angular difference between two headings, in [0, pi].
pub fn heading_difference(a: f64, b: f64) -> f64 {
    let mut d = (a - b) % std::f64::consts::TAU;
    if d < 0.0 {
        d += std::f64::consts::TAU;
    }
    if d > std::f64::consts::PI {
        d = std::f64::consts::TAU - d;
    }
    d
}

/// Relative geometry of the pair as seen from `ego`.
///
/// Total over finite states: coincident centers fall back to the ego heading
/// as the separation axis and report the relative speed magnitude as the
/// closing speed.
pub fn relative_geometry(ego: &ObjectState, other: &ObjectState) -> RelativeGeometry {
    let delta = other.position - ego.position;
    let center_distance = delta.norm();
    let rel_vel = other.velocity - ego.velocity;
    let rel_acc = other.acceleration - ego.acceleration;

    let (axis, closing_speed, relative_accel) = if center_distance > f64::EPSILON {
        let axis = delta * (1.0 / center_distance);
        // d/dt |delta| = (delta . rel_vel)/|delta|; approaching when negative.
        (axis, -axis.dot(rel_vel), -axis.dot(rel_acc))
    } else {
        (ego.heading_axis(), rel_vel.norm(), -rel_acc.norm())
    };

    let ego_half_extent = projected_half_extent(ego, axis);
    let other_half_extent = projected_half_extent(other, axis);
    let gap = (center_distance - ego_half_extent - other_half_extent).max(0.0);

    let configuration = classify(ego, other, closing_speed);

    RelativeGeometry {
        gap,
        center_distance,
        closing_speed,
        relative_accel,
        configuration,
        ego_speed: ego.speed(),
        other_speed: other.speed(),
        ego_half_extent,
        other_half_extent,
    }
}

fn classify(ego: &ObjectState, other: &ObjectState, closing_speed: f64) -> Configuration {
    if other.speed() < STATIONARY_SPEED_EPS {
        return Configuration::StationaryTarget;
    }
    // Strictly opening pairs diverge; a pair holding its distance (e.g. a
    // follower matching the lead's speed) keeps its heading-based class.
    if closing_speed < 0.0 {
        return Configuration::Diverging;
    }
    let dh = heading_difference(ego.heading, other.heading);
    if dh < SAME_DIRECTION_MAX {
        let lane = decompose(ego, other);
        if lane.lon_gap <= 0.0 && lane.lat_gap > 0.0 {
            Configuration::LateralAdjacent
        } else {
            Configuration::LeadFollowSameDirection
        }
    } else if dh > HEADS_ON_MIN {
        Configuration::HeadsOn
    } else {
        Configuration::Crossing
    }
}

/// The pair decomposed into the ego lane frame (ego heading = longitudinal
/// axis, left perpendicular = lateral axis).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaneFrame {
    /// Extent-adjusted longitudinal separation, meters, >= 0.
    pub lon_gap: f64,
    /// Extent-adjusted lateral separation, meters, >= 0.
    pub lat_gap: f64,
    /// Signed longitudinal center offset of the other, meters. Positive =
    /// other ahead of the ego.
    pub lon_offset: f64,
    /// Signed lateral center offset of the other, meters. Positive = other to
    /// the ego's left.
    pub lat_offset: f64,
    /// Ego velocity in the lane frame: (longitudinal, lateral), m/s.
    pub ego_vel: (f64, f64),
    /// Other velocity in the lane frame: (longitudinal, lateral), m/s.
    pub other_vel: (f64, f64),
}

/// Decompose the pair into the ego lane frame. Gaps are extent-adjusted per
/// axis and clamped at zero.
pub fn decompose(ego: &ObjectState, other: &ObjectState) -> LaneFrame {
    let lon_axis = ego.heading_axis();
    let lat_axis = lon_axis.perp();
    let delta = other.position - ego.position;

    let lon_offset = delta.dot(lon_axis);
    let lat_offset = delta.dot(lat_axis);

    let ego_lon_half = 0.5 * ego.length;
    let ego_lat_half = 0.5 * ego.width;
    let other_lon_half = projected_half_extent(other, lon_axis);
    let other_lat_half = projected_half_extent(other, lat_axis);

    let lon_gap = (lon_offset.abs() - ego_lon_half - other_lon_half).max(0.0);
    let lat_gap = (lat_offset.abs() - ego_lat_half - other_lat_half).max(0.0);

    LaneFrame {
        lon_gap,
        lat_gap,
        lon_offset,
        lat_offset,
        ego_vel: (ego.velocity.dot(lon_axis), ego.velocity.dot(lat_axis)),
        other_vel: (other.velocity.dot(lon_axis), other.velocity.dot(lat_axis)),
    }
}
