#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace gson {

/// Thrown when a scenario, map, or manifest file is malformed.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a planner cannot produce a path (unreachable goal, exhausted budget).
class PlanningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by estimators on transport or parse failure; callers keep the last estimate.
class EstimatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Wraps an angle into (-pi, pi].
inline double normalize_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  double squared_norm() const { return x * x + y * y; }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Planar pose; theta kept in (-pi, pi].
struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Vec2 position() const { return {x, y}; }
  Vec2 heading() const { return {std::cos(theta), std::sin(theta)}; }
};

inline Pose2D make_pose(double x, double y, double theta) {
  return Pose2D{x, y, normalize_angle(theta)};
}

/// Differential-drive state: pose plus commanded-speed memory.
struct RobotState {
  Pose2D pose;
  double v = 0.0;      // m/s
  double omega = 0.0;  // rad/s
};

struct ControlInput {
  double v = 0.0;      // m/s
  double omega = 0.0;  // rad/s
};

struct PedestrianState {
  int id = 0;
  Vec2 position;
  Vec2 velocity;
  double heading = 0.0;  // rad
};

enum class Activity { queue, conversation, photography, walking };

inline std::string to_string(Activity a) {
  switch (a) {
    case Activity::queue: return "queue";
    case Activity::conversation: return "conversation";
    case Activity::photography: return "photography";
    case Activity::walking: return "walking";
  }
  return "walking";
}

/// Parses an activity label; tolerant of common synonyms, defaults to walking.
inline Activity activity_from_string(const std::string& s) {
  if (s == "queue" || s == "queuing" || s == "queueing") return Activity::queue;
  if (s == "conversation" || s == "chatting" || s == "talking" || s == "conversing")
    return Activity::conversation;
  if (s == "photography" || s == "photo" || s == "taking pictures" || s == "photographing")
    return Activity::photography;
  return Activity::walking;
}

/// A set of pedestrian (or track) ids engaged in one interaction.
struct SocialGroup {
  int group_id = 0;
  std::vector<int> member_ids;  // kept sorted, unique
  Activity activity = Activity::walking;
};

/// Timestamped robot states at fixed dt spacing.
struct Trajectory {
  struct Sample {
    double t = 0.0;
    RobotState state;
  };
  std::vector<Sample> samples;

  bool empty() const { return samples.empty(); }
  std::size_t size() const { return samples.size(); }
};

}  // namespace gson
