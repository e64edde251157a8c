#include "heli/reference.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "heli/errors.hpp"

namespace heli {
namespace {

// 90 degree rotation in the N-E plane, altitude untouched
Vec3 rot90_ne(const Vec3& v) { return Vec3(-v[1], v[0], v[2] * 0.0); }

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

// center that makes the circle through `point` tangent to direction `dir`
Vec3 tangent_center(const Vec3& point, const Vec3& dir, double radius, double sweep) {
  Vec3 d = dir;
  d[2] = 0.0;
  if (d.norm() == 0.0)
    throw std::invalid_argument("trajectory: cannot place a tangent circle after a vertical leg");
  d /= d.norm();
  return point + radius * sgn(sweep) * rot90_ne(d);
}

Vec3 parse_vec3(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3)
    throw ConfigError("trajectory: '" + what + "' must be an array of 3 numbers");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number())
      throw ConfigError("trajectory: '" + what + "' must be an array of 3 numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

double require_number(const nlohmann::json& doc, const std::string& key) {
  if (!doc.contains(key) || !doc.at(key).is_number())
    throw ConfigError("trajectory: missing numeric field '" + key + "'");
  return doc.at(key).get<double>();
}

}  // namespace

ReferenceTrajectory::ReferenceTrajectory(const Vec3& start, std::vector<Segment> segments)
    : start_(start) {
  Vec3 from = start;
  double t0 = 0.0;
  segs_.reserve(segments.size());
  for (std::size_t i = 0; i < segments.size(); ++i) {
    Compiled c;
    c.t0 = t0;
    c.from = from;
    c.theta0 = 0.0;
    const std::string where = "segment " + std::to_string(i);

    if (const auto* hold = std::get_if<HoldSegment>(&segments[i])) {
      if (!(hold->duration > 0.0))
        throw std::invalid_argument("trajectory " + where + ": hold duration must be > 0");
      const double tol = 1e-9 * std::max(1.0, from.norm());
      if ((hold->point - from).norm() > tol)
        throw std::invalid_argument("trajectory " + where +
                                    ": hold point breaks continuity with the previous endpoint");
      c.duration = hold->duration;
    } else if (const auto* line = std::get_if<LineSegment>(&segments[i])) {
      if (!(line->speed > 0.0))
        throw std::invalid_argument("trajectory " + where + ": line speed must be > 0");
      const double len = (line->to - from).norm();
      if (!(len > 0.0))
        throw std::invalid_argument("trajectory " + where + ": line has zero length");
      c.duration = len / line->speed;
      from = line->to;
    } else {
      const auto& arc = std::get<ArcSegment>(segments[i]);
      if (!(arc.radius > 0.0))
        throw std::invalid_argument("trajectory " + where + ": arc radius must be > 0");
      if (!(arc.angular_rate > 0.0))
        throw std::invalid_argument("trajectory " + where + ": arc angular rate must be > 0");
      if (arc.sweep == 0.0)
        throw std::invalid_argument("trajectory " + where + ": arc sweep must be nonzero");
      if (std::abs(arc.center[2] - from[2]) > 1e-9 * std::max(1.0, std::abs(from[2])))
        throw std::invalid_argument("trajectory " + where +
                                    ": arc center must be at the segment's altitude");
      const double dn = from[0] - arc.center[0];
      const double de = from[1] - arc.center[1];
      const double dist = std::hypot(dn, de);
      if (std::abs(dist - arc.radius) > 1e-6 * std::max(1.0, arc.radius))
        throw std::invalid_argument("trajectory " + where +
                                    ": arc start point is not on the circle");
      c.theta0 = std::atan2(de, dn);
      c.duration = std::abs(arc.sweep) / arc.angular_rate;
      const double theta1 = c.theta0 + arc.sweep;
      from = Vec3(arc.center[0] + arc.radius * std::cos(theta1),
                  arc.center[1] + arc.radius * std::sin(theta1), from[2]);
    }
    c.seg = segments[i];
    t0 += c.duration;
    segs_.push_back(c);
  }
}

Vec3 ReferenceTrajectory::position_at(double t) const {
  if (segs_.empty() || t <= 0.0) return start_;
  // last segment with t0 <= t; holds the final point past the end
  std::size_t idx = segs_.size() - 1;
  for (std::size_t i = 0; i < segs_.size(); ++i) {
    if (t < segs_[i].t0 + segs_[i].duration) {
      idx = i;
      break;
    }
  }
  const Compiled& c = segs_[idx];
  const double s = std::min(std::max((t - c.t0) / c.duration, 0.0), 1.0);

  if (std::holds_alternative<HoldSegment>(c.seg)) return c.from;
  if (const auto* line = std::get_if<LineSegment>(&c.seg))
    return c.from * (1.0 - s) + line->to * s;
  const auto& arc = std::get<ArcSegment>(c.seg);
  const double theta = c.theta0 + s * arc.sweep;
  return Vec3(arc.center[0] + arc.radius * std::cos(theta),
              arc.center[1] + arc.radius * std::sin(theta), c.from[2]);
}

double ReferenceTrajectory::total_duration() const {
  if (segs_.empty()) return 0.0;
  return segs_.back().t0 + segs_.back().duration;
}

Vec3 ReferenceTrajectory::end() const {
  if (segs_.empty()) return start_;
  return position_at(total_duration());
}

ReferenceTrajectory make_hold(const Vec3& point, double duration) {
  return ReferenceTrajectory(point, {HoldSegment{point, duration}});
}

namespace {

std::vector<Segment> rectangle_segments(const std::array<Vec3, 4>& corners, double speed,
                                        double hold_time) {
  if (!(speed > 0.0)) throw std::invalid_argument("rectangle: speed must be > 0");
  if (hold_time < 0.0) throw std::invalid_argument("rectangle: hold time must be >= 0");
  std::vector<Segment> segs;
  for (int i = 0; i < 4; ++i) {
    const Vec3& a = corners[i];
    const Vec3& b = corners[(i + 1) % 4];
    if ((b - a).norm() == 0.0)
      throw std::invalid_argument("rectangle: corners " + std::to_string(i) + " and " +
                                  std::to_string((i + 1) % 4) + " coincide");
    if (hold_time > 0.0) segs.push_back(HoldSegment{a, hold_time});
    segs.push_back(LineSegment{b, speed});
  }
  return segs;
}

}  // namespace

ReferenceTrajectory make_rectangle(const std::array<Vec3, 4>& corners, double speed,
                                   double hold_time) {
  return ReferenceTrajectory(corners[0], rectangle_segments(corners, speed, hold_time));
}

ReferenceTrajectory make_rect_circle(const std::array<Vec3, 4>& corners, double speed,
                                     double hold_time, const Vec3& center, double radius,
                                     double angular_rate, double sweep) {
  auto segs = rectangle_segments(corners, speed, hold_time);

  // the circle picks up where the closing leg ends; require tangency there
  Vec3 d = corners[0] - corners[3];
  d[2] = 0.0;
  if (d.norm() == 0.0)
    throw std::invalid_argument("rect_circle: closing leg has no horizontal direction");
  d /= d.norm();
  const double dn = corners[0][0] - center[0];
  const double de = corners[0][1] - center[1];
  const double theta0 = std::atan2(de, dn);
  const Vec3 vdir(sgn(sweep) * -std::sin(theta0), sgn(sweep) * std::cos(theta0), 0.0);
  if (vdir.dot(d) < 1.0 - 1e-9)
    throw std::invalid_argument(
        "rect_circle: circle is not tangent to the closing leg at its start point");

  segs.push_back(ArcSegment{center, radius, angular_rate, sweep});
  return ReferenceTrajectory(corners[0], std::move(segs));
}

ReferenceTrajectory load_trajectory(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("type") || !doc.at("type").is_string())
    throw ConfigError("trajectory: missing string field 'type'");
  const std::string type = doc.at("type").get<std::string>();

  try {
    if (type == "hold") {
      return make_hold(parse_vec3(doc.at("point"), "point"), require_number(doc, "duration"));
    }

    if (type == "rectangle" || type == "rect_circle") {
      if (!doc.contains("corners") || !doc.at("corners").is_array() || doc.at("corners").size() != 4)
        throw ConfigError("trajectory: 'corners' must be an array of 4 points");
      std::array<Vec3, 4> corners;
      for (int i = 0; i < 4; ++i)
        corners[i] = parse_vec3(doc.at("corners")[i], "corners[" + std::to_string(i) + "]");
      const double speed = require_number(doc, "speed");
      const double hold_time = doc.contains("hold_time") ? require_number(doc, "hold_time") : 3.0;
      if (type == "rectangle") return make_rectangle(corners, speed, hold_time);

      const double radius = require_number(doc, "radius");
      if (!(radius > 0.0)) throw ConfigError("trajectory: 'radius' must be > 0");
      const double sweep = doc.contains("sweep") ? require_number(doc, "sweep") : 2.0 * kPi;
      const double angular_rate =
          doc.contains("angular_rate") ? require_number(doc, "angular_rate") : speed / radius;
      Vec3 center;
      if (doc.contains("center")) {
        center = parse_vec3(doc.at("center"), "center");
      } else {
        center = tangent_center(corners[0], corners[0] - corners[3], radius, sweep);
      }
      return make_rect_circle(corners, speed, hold_time, center, radius, angular_rate, sweep);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("trajectory: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  throw ConfigError("trajectory: unknown type '" + type +
                    "' (expected hold, rectangle, or rect_circle)");
}

}  // namespace heli
