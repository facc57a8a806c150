//! Domain types: road-user states, frames, and scenarios.
//!
//! All quantities are SI: meters, seconds, radians, m/s, m/s². Positions and
//! velocities live in a planar world frame; headings are measured
//! counter-clockwise from the world x axis.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Planar vector. Enough vector algebra for trajectory kinematics without
/// pulling in a linear-algebra crate.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    /// Unit vector pointing along `angle` (radians, CCW from +x).
    pub fn from_angle(angle: f64) -> Self {
        Vec2::new(angle.cos(), angle.sin())
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Left-perpendicular (90° CCW rotation).
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    /// Rotate by `angle` radians CCW.
    pub fn rotated(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Opaque road-user identifier. Kept as a string so dataset adapters can
/// carry whatever id scheme the source uses.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectId(pub String);

impl ObjectId {
    pub fn new(id: impl Into<String>) -> Self {
        ObjectId(id.into())
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<&str> for ObjectId {
    fn from(s: &str) -> Self {
        ObjectId(s.to_owned())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectClass {
    Car,
    Truck,
    Pedestrian,
    Cyclist,
    Other,
}

impl fmt::Display for ObjectClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ObjectClass::Car => "car",
            ObjectClass::Truck => "truck",
            ObjectClass::Pedestrian => "pedestrian",
            ObjectClass::Cyclist => "cyclist",
            ObjectClass::Other => "other",
        };
        f.write_str(s)
    }
}

/// Pose, dynamics, and extent of one road user at one instant.
#[derive(Clone, Debug, PartialEq)]
pub struct ObjectState {
    pub object_id: ObjectId,
    /// Center position in the world frame, meters.
    pub position: Vec2,
    /// Orientation, radians CCW from world +x.
    pub heading: f64,
    pub velocity: Vec2,
    pub acceleration: Vec2,
    /// Extent along the heading axis, meters. Must be positive.
    pub length: f64,
    /// Extent across the heading axis, meters. Must be positive.
    pub width: f64,
    pub object_class: ObjectClass,
}

impl ObjectState {
    /// Speed magnitude, m/s.
    pub fn speed(&self) -> f64 {
        self.velocity.norm()
    }

    /// Unit vector along the heading.
    pub fn heading_axis(&self) -> Vec2 {
        Vec2::from_angle(self.heading)
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        let check = |ok: bool, field: &'static str, message: String| {
            if ok {
                Ok(())
            } else {
                Err(ValidationError::InvalidObjectState {
                    object: self.object_id.clone(),
                    field,
                    message,
                })
            }
        };
        check(
            self.position.is_finite(),
            "position",
            format!("{:?}", self.position),
        )?;
        check(self.heading.is_finite(), "heading", self.heading.to_string())?;
        check(
            self.velocity.is_finite(),
            "velocity",
            format!("{:?}", self.velocity),
        )?;
        check(
            self.acceleration.is_finite(),
            "acceleration",
            format!("{:?}", self.acceleration),
        )?;
        check(
            self.length.is_finite() && self.length > 0.0,
            "length",
            format!("{} (must be > 0)", self.length),
        )?;
        check(
            self.width.is_finite() && self.width > 0.0,
            "width",
            format!("{} (must be > 0)", self.width),
        )?;
        Ok(())
    }
}

/// All road-user states observed at one timestamp.
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioFrame {
    /// Seconds; strictly increasing within a scenario.
    pub timestamp: f64,
    pub states: Vec<ObjectState>,
}

impl ScenarioFrame {
    pub fn state(&self, id: &ObjectId) -> Option<&ObjectState> {
        self.states.iter().find(|s| &s.object_id == id)
    }
}

/// Clearances to a declared static obstacle, used by the SURE-Val
/// static-obstacle distance. Optional scenario metadata.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StaticObstacle {
    /// Distance the ego travels to clear the obstacle, meters.
    pub ego_clearance: f64,
    /// Corresponding clearance distance for the oncoming vehicle, meters.
    pub other_clearance: f64,
}

/// A time-indexed sequence of frames plus collision metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub scenario_id: String,
    pub frames: Vec<ScenarioFrame>,
    pub ego_id: ObjectId,
    /// The object whose criticality is evaluated against the ego.
    pub collider_id: ObjectId,
    /// Seconds; absent for non-accident scenarios.
    pub collision_time: Option<f64>,
    /// Nominal frame spacing, seconds.
    pub frame_period: f64,
    /// Posted speed limit, m/s, when the source provides one.
    pub speed_limit: Option<f64>,
    pub static_obstacle: Option<StaticObstacle>,
    /// Free-form provenance (e.g. generator template and resolved parameters).
    pub generator_note: Option<String>,
}

/// Relative tolerance on frame spacing vs. the nominal frame period.
const FRAME_SPACING_TOLERANCE: f64 = 0.01;

impl Scenario {
    /// Build and validate a scenario. Every invariant violation names the
    /// scenario and the offending field.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        scenario_id: String,
        frames: Vec<ScenarioFrame>,
        ego_id: ObjectId,
        collider_id: ObjectId,
        collision_time: Option<f64>,
        frame_period: f64,
        speed_limit: Option<f64>,
        static_obstacle: Option<StaticObstacle>,
        generator_note: Option<String>,
    ) -> Result<Self, ValidationError> {
        let s = Scenario {
            scenario_id,
            frames,
            ego_id,
            collider_id,
            collision_time,
            frame_period,
            speed_limit,
            static_obstacle,
            generator_note,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        let err = |field: &'static str, message: String| ValidationError::InvalidScenario {
            scenario: self.scenario_id.clone(),
            field,
            message,
        };

        if self.frames.is_empty() {
            return Err(err("frames", "scenario has no frames".into()));
        }
        if !(self.frame_period.is_finite() && self.frame_period > 0.0) {
            return Err(err("frame_period", format!("{} (must be > 0)", self.frame_period)));
        }
        if self.ego_id == self.collider_id {
            return Err(err("collider_id", format!("equals ego_id {}", self.ego_id)));
        }

        let mut prev: Option<f64> = None;
        for frame in &self.frames {
            if let Some(p) = prev {
                let dt = frame.timestamp - p;
                if dt <= 0.0 {
                    return Err(err(
                        "frames.timestamp",
                        format!("timestamps not strictly increasing at t={}", frame.timestamp),
                    ));
                }
                if (dt - self.frame_period).abs() > FRAME_SPACING_TOLERANCE * self.frame_period {
                    return Err(err(
                        "frames.timestamp",
                        format!(
                            "spacing {dt} at t={} deviates more than 1% from frame_period {}",
                            frame.timestamp, self.frame_period
                        ),
                    ));
                }
            }
            prev = Some(frame.timestamp);

            let ego_count = frame
                .states
                .iter()
                .filter(|s| s.object_id == self.ego_id)
                .count();
            if ego_count != 1 {
                return Err(err(
                    "frames.states",
                    format!(
                        "frame t={} carries {} states for ego {} (expected exactly 1)",
                        frame.timestamp, ego_count, self.ego_id
                    ),
                ));
            }
            for (i, state) in frame.states.iter().enumerate() {
                if frame.states[..i].iter().any(|s| s.object_id == state.object_id) {
                    return Err(err(
                        "frames.states",
                        format!("duplicate object id {} at t={}", state.object_id, frame.timestamp),
                    ));
                }
                state.validate()?;
            }
        }

        if !self
            .frames
            .iter()
            .any(|f| f.state(&self.collider_id).is_some())
        {
            return Err(err(
                "collider_id",
                format!("collider {} appears in no frame", self.collider_id),
            ));
        }

        if let Some(tc) = self.collision_time {
            if !tc.is_finite() {
                return Err(err("collision_time", format!("{tc}")));
            }
            if tc < self.frames[0].timestamp {
                return Err(err(
                    "collision_time",
                    format!("{} precedes first timestamp {}", tc, self.frames[0].timestamp),
                ));
            }
        }
        Ok(())
    }

    pub fn first_timestamp(&self) -> f64 {
        self.frames[0].timestamp
    }

    pub fn last_timestamp(&self) -> f64 {
        self.frames[self.frames.len() - 1].timestamp
    }
}

#[derive(Debug, Error)]
pub enum ValidationError {
    #[error("object {object}: invalid {field}: {message}")]
    InvalidObjectState {
        object: ObjectId,
        field: &'static str,
        message: String,
    },
    #[error("scenario {scenario}: invalid {field}: {message}")]
    InvalidScenario {
        scenario: String,
        field: &'static str,
        message: String,
    },
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    /// A 4 m x 2 m car at `pos` heading along `heading` with velocity `vel`.
    pub fn car(id: &str, pos: Vec2, heading: f64, vel: Vec2) -> ObjectState {
        ObjectState {
            object_id: ObjectId::from(id),
            position: pos,
            heading,
            velocity: vel,
            acceleration: Vec2::ZERO,
            length: 4.0,
            width: 2.0,
            object_class: ObjectClass::Car,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::test_support::car;
    use super::*;

    fn frame(t: f64, states: Vec<ObjectState>) -> ScenarioFrame {
        ScenarioFrame {
            timestamp: t,
            states,
        }
    }

    fn two_car_scenario() -> Scenario {
        let mk = |t: f64| {
            frame(
                t,
                vec![
                    car("ego", Vec2::new(10.0 * t, 0.0), 0.0, Vec2::new(10.0, 0.0)),
                    car("v1", Vec2::new(50.0, 0.0), 0.0, Vec2::ZERO),
                ],
            )
        };
        Scenario::new(
            "s0".into(),
            (0..10).map(|k| mk(k as f64 * 0.1)).collect(),
            "ego".into(),
            "v1".into(),
            Some(0.8),
            0.1,
            None,
            None,
            None,
        )
        .unwrap()
    }

    #[test]
    fn valid_scenario_passes() {
        let s = two_car_scenario();
        assert_eq!(s.frames.len(), 10);
        assert_eq!(s.first_timestamp(), 0.0);
    }

    #[test]
    fn rejects_nonpositive_extent() {
        let mut st = car("a", Vec2::ZERO, 0.0, Vec2::ZERO);
        st.length = 0.0;
        assert!(st.validate().is_err());
        st.length = 4.0;
        st.width = -1.0;
        assert!(st.validate().is_err());
    }

    #[test]
    fn rejects_non_finite_kinematics() {
        let mut st = car("a", Vec2::ZERO, 0.0, Vec2::ZERO);
        st.velocity = Vec2::new(f64::NAN, 0.0);
        assert!(st.validate().is_err());
    }

    #[test]
    fn rejects_duplicate_ids_in_frame() {
        let mut s = two_car_scenario();
        let dup = s.frames[0].states[1].clone();
        s.frames[0].states.push(dup);
        assert!(matches!(
            s.validate(),
            Err(ValidationError::InvalidScenario { field: "frames.states", .. })
        ));
    }

    #[test]
    fn rejects_missing_ego() {
        let mut s = two_car_scenario();
        s.frames[3].states.retain(|st| st.object_id != ObjectId::from("ego"));
        assert!(s.validate().is_err());
    }

    #[test]
    fn rejects_irregular_spacing() {
        let mut s = two_car_scenario();
        s.frames[5].timestamp += 0.05;
        assert!(s.validate().is_err());
    }

    #[test]
    fn rejects_collision_before_start() {
        let mut s = two_car_scenario();
        s.collision_time = Some(-1.0);
        assert!(s.validate().is_err());
    }

    #[test]
    fn rejects_ego_equals_collider() {
        let mut s = two_car_scenario();
        s.collider_id = ObjectId::from("ego");
        assert!(s.validate().is_err());
    }

    #[test]
    fn vec2_rotation_identities() {
        let v = Vec2::new(3.0, 4.0);
        let r = v.rotated(std::f64::consts::FRAC_PI_2);
        assert!((r.x - -4.0).abs() < 1e-12);
        assert!((r.y - 3.0).abs() < 1e-12);
        assert!((v.perp().x - r.x).abs() < 1e-12);
        assert!((v.norm() - 5.0).abs() < 1e-12);
    }
}
