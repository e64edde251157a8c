#pragma once

#include <array>
#include <json.hpp>
#include <variant>
#include <vector>

#include "heli/types.hpp"

namespace heli {

// Reference trajectory segments in the local-horizon (N, E, A) frame.
struct HoldSegment {
  Vec3 point;       // ft; must coincide with the current endpoint
  double duration;  // s
};
struct LineSegment {
  Vec3 to;       // ft
  double speed;  // ft/s, > 0
};
struct ArcSegment {
  Vec3 center;          // ft; same altitude as the current endpoint
  double radius;        // ft, > 0
  double angular_rate;  // rad/s, > 0
  double sweep;         // rad, signed, != 0
};
using Segment = std::variant<HoldSegment, LineSegment, ArcSegment>;

// Piecewise reference position, continuous across segment boundaries.
// position_at clamps to the start point before t = 0 and holds the final
// point after the last segment.
class ReferenceTrajectory {
 public:
  // Throws std::invalid_argument on a continuity break, a zero-length line,
  // an arc whose start is off the circle, or non-positive rates/durations.
  ReferenceTrajectory(const Vec3& start, std::vector<Segment> segments);

  Vec3 position_at(double t) const;
  double total_duration() const;
  Vec3 start() const { return start_; }
  Vec3 end() const;

 private:
  struct Compiled {
    double t0;
    double duration;
    Vec3 from;
    Segment seg;
    double theta0;  // arc start angle in the N-E plane, unused otherwise
  };

  Vec3 start_;
  std::vector<Compiled> segs_;
};

ReferenceTrajectory make_hold(const Vec3& point, double duration);

// Closed circuit visiting the four corners in order with a hold at each one:
// traversal time = perimeter / speed + 4 * hold_time. Throws
// std::invalid_argument when any two corners coincide or speed <= 0.
ReferenceTrajectory make_rectangle(const std::array<Vec3, 4>& corners, double speed,
                                   double hold_time);

// The rectangle above continued by a circular arc that starts at the closing
// corner. The center must put that corner on the circle and the arc's initial
// direction must continue the final leg (tangency), else std::invalid_argument.
ReferenceTrajectory make_rect_circle(const std::array<Vec3, 4>& corners, double speed,
                                     double hold_time, const Vec3& center, double radius,
                                     double angular_rate, double sweep);

// Parse a trajectory document: {"type": "rectangle"|"rect_circle"|"hold", ...}.
// For rect_circle the circle center may be omitted, in which case it is placed
// tangentially off the closing corner.
ReferenceTrajectory load_trajectory(const nlohmann::json& doc);

}  // namespace heli
