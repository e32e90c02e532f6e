#include "riskwarn/world.hpp"

#include "riskwarn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace riskwarn {

DrivingPath::DrivingPath(std::vector<Vec2> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw InvalidInput("driving path needs at least 2 points");
  }
  arc_.reserve(points_.size());
  headings_.reserve(points_.size());
  arc_.push_back(0.0);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const Vec2 d = points_[i] - points_[i - 1];
    const double len = d.norm();
    if (!(len > 0.0)) {
      throw InvalidInput("driving path has a zero-length segment at point " + std::to_string(i));
    }
    arc_.push_back(arc_.back() + len);
    headings_.push_back(std::atan2(d.y(), d.x()));
  }
  headings_.push_back(headings_.back());
}

std::size_t DrivingPath::segment_index(double arc) const {
  // Segment i spans [arc_[i], arc_[i+1]); the final point maps to the last segment.
  const auto it = std::upper_bound(arc_.begin(), arc_.end(), arc);
  std::size_t idx = it == arc_.begin() ? 0 : static_cast<std::size_t>(it - arc_.begin()) - 1;
  return std::min(idx, points_.size() - 2);
}

Pose DrivingPath::pose_at(double arc) const {
  arc = std::clamp(arc, 0.0, length());
  const std::size_t i = segment_index(arc);
  const double seg_len = arc_[i + 1] - arc_[i];
  const double u = (arc - arc_[i]) / seg_len;
  Pose pose;
  pose.position = points_[i] + u * (points_[i + 1] - points_[i]);
  pose.heading = headings_[i];
  return pose;
}

double DrivingPath::project(const Vec2& point) const {
  double best_dist = std::numeric_limits<double>::infinity();
  double best_arc = 0.0;
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    const Vec2 a = points_[i];
    const Vec2 ab = points_[i + 1] - a;
    const double seg_len = arc_[i + 1] - arc_[i];
    const double u = std::clamp((point - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
    const double dist = (a + u * ab - point).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best_arc = arc_[i] + u * seg_len;
    }
  }
  return best_arc;
}

void VehicleState::validate() const {
  if (!path) {
    throw InvalidInput("vehicle state has no path");
  }
  if (!(speed >= 0.0)) {
    throw InvalidInput("vehicle speed must be >= 0");
  }
  if (!(arc_position >= 0.0 && arc_position <= path->length())) {
    throw InvalidInput("vehicle arc position outside the path");
  }
}

bool VehicleState::operator==(const VehicleState& other) const {
  const bool same_path = path == other.path || (path && other.path && *path == *other.path);
  return same_path && arc_position == other.arc_position && speed == other.speed &&
         footprint_radius == other.footprint_radius;
}

double MotionPlan::total_duration() const {
  double total = 0.0;
  for (const auto& seg : segments) total += seg.duration;
  return total;
}

MotionPlan MotionPlan::remaining_after(double elapsed) const {
  MotionPlan rest;
  double t = elapsed;
  for (const auto& seg : segments) {
    if (t >= seg.duration) {
      t -= seg.duration;
      continue;
    }
    rest.segments.push_back({seg.acceleration, seg.duration - t});
    t = 0.0;
  }
  return rest;
}

void MotionPlan::validate() const {
  for (const auto& seg : segments) {
    if (!(seg.duration > 0.0)) {
      throw InvalidInput("motion plan segment durations must be > 0");
    }
  }
}

MotionPlan ramp_to(double current, double target, double accel) {
  MotionPlan plan;
  if (target == current) return plan;
  const double a = std::abs(accel);
  if (!(a > 0.0)) {
    throw InvalidParameter("ramp acceleration must be non-zero");
  }
  const double dv = target - current;
  plan.segments.push_back({dv > 0.0 ? a : -a, std::abs(dv) / a});
  return plan;
}

KinematicState integrate(double speed, const MotionPlan& plan, double t) {
  KinematicState out{0.0, speed};
  double left = t;
  for (const auto& seg : plan.segments) {
    if (left <= 0.0) break;
    const double span = std::min(left, seg.duration);
    const double v0 = out.speed;
    const double a = seg.acceleration;
    if (a < 0.0 && v0 + a * span < 0.0) {
      // Stops inside this segment and stays at rest.
      const double t_stop = -v0 / a;
      out.arc_advance += v0 * t_stop + 0.5 * a * t_stop * t_stop;
      out.speed = 0.0;
    } else {
      out.arc_advance += v0 * span + 0.5 * a * span * span;
      out.speed = v0 + a * span;
    }
    left -= span;
  }
  if (left > 0.0) {
    out.arc_advance += out.speed * left;
  }
  return out;
}

Pose world_position(const VehicleState& state) { return state.path->pose_at(state.arc_position); }

std::size_t sample_count(double horizon, double dt) {
  return static_cast<std::size_t>(std::llround(horizon / dt)) + 1;
}

Prediction predict(const VehicleState& state, const MotionPlan& plan, double horizon, double dt) {
  const std::size_t n = sample_count(horizon, dt);
  const double length = state.path->length();
  Prediction out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    PredictedSample sample;
    sample.time = static_cast<double>(i) * dt;
    const KinematicState k = integrate(state.speed, plan, sample.time);
    sample.arc_position = state.arc_position + k.arc_advance;
    sample.speed = k.speed;
    if (sample.arc_position >= length) {
      sample.arc_position = length;
      sample.speed = 0.0;
    }
    sample.pose = state.path->pose_at(sample.arc_position);
    out.push_back(sample);
  }
  return out;
}

VehicleState advance(const VehicleState& state, const MotionPlan& plan, double dt) {
  VehicleState next = state;
  const KinematicState k = integrate(state.speed, plan, dt);
  next.arc_position = state.arc_position + k.arc_advance;
  next.speed = k.speed;
  if (next.arc_position >= state.path->length()) {
    next.arc_position = state.path->length();
    next.speed = 0.0;
  }
  return next;
}

}  // namespace riskwarn
