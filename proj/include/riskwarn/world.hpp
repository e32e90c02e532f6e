#pragma once

#include <Eigen/Core>

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace riskwarn {

using Vec2 = Eigen::Vector2d;

struct Pose {
  Vec2 position = Vec2::Zero();
  double heading = 0.0;  // [rad]
};

/// Polyline with arc-length parametrization. Positions between vertices are
/// linearly interpolated; the heading at arc length s is the direction of the
/// segment containing s (a vertex belongs to the segment that starts there).
class DrivingPath {
 public:
  /// Throws InvalidInput for fewer than two points or zero-length segments.
  explicit DrivingPath(std::vector<Vec2> points);

  double length() const { return arc_.back(); }

  /// Pose at arc length `arc`, clamped to [0, length()].
  Pose pose_at(double arc) const;

  /// Arc length of the point on the path closest to `point`.
  double project(const Vec2& point) const;

  std::span<const Vec2> points() const { return points_; }
  std::span<const double> arc_lengths() const { return arc_; }
  std::span<const double> headings() const { return headings_; }

  bool operator==(const DrivingPath& other) const { return points_ == other.points_; }

 private:
  std::size_t segment_index(double arc) const;

  std::vector<Vec2> points_;
  std::vector<double> arc_;
  std::vector<double> headings_;
};

using PathPtr = std::shared_ptr<const DrivingPath>;

/// Point-mass vehicle on a path.
struct VehicleState {
  PathPtr path;
  double arc_position = 0.0;     // [m]
  double speed = 0.0;            // [m/s]
  double footprint_radius = 1.0; // [m], used by the criticality oracle only

  /// Throws InvalidInput when the path is missing, speed < 0 or the arc
  /// position is outside [0, path length].
  void validate() const;

  bool operator==(const VehicleState& other) const;
};

struct MotionSegment {
  double acceleration = 0.0;  // [m/s^2]
  double duration = 0.0;      // [s]

  bool operator==(const MotionSegment&) const = default;
};

/// Piecewise-constant acceleration profile. After the last segment the final
/// speed is held; speed never drops below zero.
struct MotionPlan {
  std::vector<MotionSegment> segments;

  bool empty() const { return segments.empty(); }
  double total_duration() const;

  /// The part of the plan that remains after `elapsed` seconds.
  MotionPlan remaining_after(double elapsed) const;

  /// Throws InvalidInput for non-positive durations.
  void validate() const;

  bool operator==(const MotionPlan&) const = default;
};

/// Constant-acceleration ramp from `current` to `target` at |accel|, or an
/// empty plan when the speeds are equal.
MotionPlan ramp_to(double current, double target, double accel);

struct KinematicState {
  double arc_advance = 0.0;  // [m] distance covered since t = 0
  double speed = 0.0;        // [m/s]
};

/// Closed-form integration of `plan` starting at `speed` for `t` seconds.
KinematicState integrate(double speed, const MotionPlan& plan, double t);

struct PredictedSample {
  double time = 0.0;  // future offset s
  Pose pose;
  double arc_position = 0.0;
  double speed = 0.0;
};

using Prediction = std::vector<PredictedSample>;

Pose world_position(const VehicleState& state);

/// Samples at 0, dt, 2 dt, ..., horizon. The vehicle stops at the path end.
Prediction predict(const VehicleState& state, const MotionPlan& plan, double horizon, double dt);

/// Advances `state` by `dt` seconds under `plan`; the path end clamps arc
/// position and zeroes the speed.
VehicleState advance(const VehicleState& state, const MotionPlan& plan, double dt);

std::size_t sample_count(double horizon, double dt);

}  // namespace riskwarn
