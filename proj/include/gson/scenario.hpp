#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "gson/params.hpp"
#include "gson/types.hpp"

namespace gson {

struct QueueScript {
  Pose2D anchor;                  // head position, theta = facing/advance direction
  double spacing = 1.5;           // m between successive members
  double advance_period = 20.0;   // s between head departures
  double exit_distance = 3.0;     // m the departing head walks before stopping
  double walk_speed = 1.0;        // m/s while advancing
};

struct ConversationScript {
  Vec2 center;
  double radius = 1.2;  // members stand on this circle facing the center
};

struct PhotographyScript {
  Pose2D photographer;           // theta points toward the subjects
  double gap = 3.0;              // m, photographer-to-subject-line distance (the sight line)
  double subject_spacing = 1.2;  // m between subjects along their line
};

struct WalkingScript {
  std::vector<Vec2> waypoints;
  double speed = 1.0;            // m/s along the waypoint polyline
  double lateral_spacing = 1.0;  // m between members, perpendicular to travel
};

using ActivityScript =
    std::variant<QueueScript, ConversationScript, PhotographyScript, WalkingScript>;

struct GroupSpec {
  int id = 0;
  Activity activity = Activity::walking;
  std::vector<int> members;  // pedestrian ids, ascending
  ActivityScript script;
};

/// An ungrouped pedestrian following its own waypoint script.
struct IndividualSpec {
  int id = 0;
  WalkingScript script;
};

struct ScenarioConfig {
  std::string name;
  std::filesystem::path map_path;
  Pose2D start;
  Pose2D goal;
  double dt = 0.1;
  double time_limit = 60.0;
  std::uint64_t seed = 0;
  double position_jitter = 0.0;  // m, seed-dependent perturbation of initial positions
  std::vector<GroupSpec> groups;
  std::vector<IndividualSpec> individuals;
  PlannerParams params;
  nlohmann::json raw;  // resolved document, embedded in episode logs for replay
};

namespace detail {

using json = nlohmann::json;

inline void check_keys(const json& j, std::initializer_list<const char*> allowed,
                       const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items())
    if (!ok.count(key)) throw ConfigError(where + ": unknown key \"" + key + "\"");
}

inline Vec2 parse_vec2(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(where + ": expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Pose2D parse_pose(const json& j, const std::string& where) {
  if (!j.is_array() || (j.size() != 2 && j.size() != 3))
    throw ConfigError(where + ": expected [x, y] or [x, y, theta]");
  return make_pose(j[0].get<double>(), j[1].get<double>(),
                   j.size() == 3 ? j[2].get<double>() : 0.0);
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

inline ActivityScript parse_script(Activity activity, const json& j, const std::string& where) {
  switch (activity) {
    case Activity::queue: {
      check_keys(j, {"anchor", "spacing", "advance_period", "exit_distance", "walk_speed"}, where);
      QueueScript s;
      s.anchor = parse_pose(j.at("anchor"), where + ".anchor");
      read(j, "spacing", s.spacing);
      read(j, "advance_period", s.advance_period);
      read(j, "exit_distance", s.exit_distance);
      read(j, "walk_speed", s.walk_speed);
      return s;
    }
    case Activity::conversation: {
      check_keys(j, {"center", "radius"}, where);
      ConversationScript s;
      s.center = parse_vec2(j.at("center"), where + ".center");
      read(j, "radius", s.radius);
      return s;
    }
    case Activity::photography: {
      check_keys(j, {"photographer", "gap", "subject_spacing"}, where);
      PhotographyScript s;
      s.photographer = parse_pose(j.at("photographer"), where + ".photographer");
      read(j, "gap", s.gap);
      read(j, "subject_spacing", s.subject_spacing);
      return s;
    }
    case Activity::walking: {
      check_keys(j, {"waypoints", "speed", "lateral_spacing"}, where);
      WalkingScript s;
      for (const auto& w : j.at("waypoints")) s.waypoints.push_back(parse_vec2(w, where + ".waypoints"));
      if (s.waypoints.empty()) throw ConfigError(where + ": walking script needs waypoints");
      read(j, "speed", s.speed);
      read(j, "lateral_spacing", s.lateral_spacing);
      return s;
    }
  }
  throw ConfigError(where + ": unknown activity");
}

inline void parse_params(const json& j, PlannerParams& p, const std::string& where) {
  check_keys(j,
             {"sensor", "tracker", "keyframe", "social", "global", "midlevel", "nmpc", "crowd",
              "executive"},
             where);
  if (j.contains("sensor")) {
    const auto& s = j["sensor"];
    check_keys(s, {"range", "fov", "noise_sigma", "dropout_prob"}, where + ".sensor");
    read(s, "range", p.sensor.range);
    read(s, "fov", p.sensor.fov);
    read(s, "noise_sigma", p.sensor.noise_sigma);
    read(s, "dropout_prob", p.sensor.dropout_prob);
  }
  if (j.contains("tracker")) {
    const auto& s = j["tracker"];
    check_keys(s,
               {"gate", "max_misses", "confirm_hits", "accel_sigma", "meas_sigma", "init_pos_var",
                "init_vel_var"},
               where + ".tracker");
    read(s, "gate", p.tracker.gate);
    read(s, "max_misses", p.tracker.max_misses);
    read(s, "confirm_hits", p.tracker.confirm_hits);
    read(s, "accel_sigma", p.tracker.accel_sigma);
    read(s, "meas_sigma", p.tracker.meas_sigma);
    read(s, "init_pos_var", p.tracker.init_pos_var);
    read(s, "init_vel_var", p.tracker.init_vel_var);
  }
  if (j.contains("keyframe")) {
    const auto& s = j["keyframe"];
    check_keys(s, {"window"}, where + ".keyframe");
    read(s, "window", p.keyframe.window);
  }
  if (j.contains("social")) {
    const auto& s = j["social"];
    check_keys(s, {"margin"}, where + ".social");
    read(s, "margin", p.social.margin);
  }
  if (j.contains("global")) {
    const auto& s = j["global"];
    check_keys(s, {"robot_radius", "inflation_decay", "max_segment"}, where + ".global");
    read(s, "robot_radius", p.global.robot_radius);
    read(s, "inflation_decay", p.global.inflation_decay);
    read(s, "max_segment", p.global.max_segment);
  }
  if (j.contains("midlevel")) {
    const auto& s = j["midlevel"];
    check_keys(s, {"goal_offset", "batches", "samples_per_batch", "eta"}, where + ".midlevel");
    read(s, "goal_offset", p.midlevel.goal_offset);
    read(s, "batches", p.midlevel.bitstar.batches);
    read(s, "samples_per_batch", p.midlevel.bitstar.samples_per_batch);
    read(s, "eta", p.midlevel.bitstar.eta);
  }
  if (j.contains("nmpc")) {
    const auto& s = j["nmpc"];
    check_keys(s,
               {"horizon", "dt", "pf", "qu", "lambda", "d_safe", "v_max", "omega_max",
                "carrot_distance", "max_inner_iterations", "max_outer_iterations", "kkt_tol",
                "feas_tol", "slack_weight", "recovery_v_cap"},
               where + ".nmpc");
    read(s, "horizon", p.nmpc.horizon);
    read(s, "dt", p.nmpc.dt);
    read(s, "pf", p.nmpc.pf);
    read(s, "qu", p.nmpc.qu);
    read(s, "lambda", p.nmpc.lambda);
    read(s, "d_safe", p.nmpc.d_safe);
    read(s, "v_max", p.nmpc.v_max);
    read(s, "omega_max", p.nmpc.omega_max);
    read(s, "carrot_distance", p.nmpc.carrot_distance);
    read(s, "max_inner_iterations", p.nmpc.max_inner_iterations);
    read(s, "max_outer_iterations", p.nmpc.max_outer_iterations);
    read(s, "kkt_tol", p.nmpc.kkt_tol);
    read(s, "feas_tol", p.nmpc.feas_tol);
    read(s, "slack_weight", p.nmpc.slack_weight);
    read(s, "recovery_v_cap", p.nmpc.recovery_v_cap);
  }
  if (j.contains("crowd")) {
    const auto& s = j["crowd"];
    check_keys(s, {"max_speed", "repulsion_gain", "repulsion_cutoff", "min_spacing"},
               where + ".crowd");
    read(s, "max_speed", p.crowd.max_speed);
    read(s, "repulsion_gain", p.crowd.repulsion_gain);
    read(s, "repulsion_cutoff", p.crowd.repulsion_cutoff);
    read(s, "min_spacing", p.crowd.min_spacing);
  }
  if (j.contains("executive")) {
    const auto& s = j["executive"];
    check_keys(s, {"goal_tolerance", "brake_decel"}, where + ".executive");
    read(s, "goal_tolerance", p.executive.goal_tolerance);
    read(s, "brake_decel", p.executive.brake_decel);
  }
}

}  // namespace detail

/// Parses a scenario document. Unknown keys anywhere are rejected. `base_dir`
/// resolves the map path relative to the scenario file's location.
inline ScenarioConfig parse_scenario(const nlohmann::json& j,
                                     const std::filesystem::path& base_dir) {
  using detail::check_keys;
  check_keys(j,
             {"name", "map", "robot", "dt", "time_limit", "seed", "position_jitter", "groups",
              "individuals", "params"},
             "scenario");
  ScenarioConfig cfg;
  cfg.raw = j;
  detail::read(j, "name", cfg.name);
  if (cfg.name.empty()) throw ConfigError("scenario: missing name");
  if (!j.contains("map")) throw ConfigError("scenario: missing map");
  cfg.map_path = j.at("map").get<std::string>();
  if (cfg.map_path.is_relative()) cfg.map_path = base_dir / cfg.map_path;

  if (!j.contains("robot")) throw ConfigError("scenario: missing robot");
  check_keys(j.at("robot"), {"start", "goal"}, "scenario.robot");
  cfg.start = detail::parse_pose(j.at("robot").at("start"), "scenario.robot.start");
  cfg.goal = detail::parse_pose(j.at("robot").at("goal"), "scenario.robot.goal");

  detail::read(j, "dt", cfg.dt);
  detail::read(j, "time_limit", cfg.time_limit);
  detail::read(j, "seed", cfg.seed);
  detail::read(j, "position_jitter", cfg.position_jitter);
  if (cfg.dt <= 0.0) throw ConfigError("scenario: dt must be positive");
  if (cfg.time_limit <= 0.0) throw ConfigError("scenario: time_limit must be positive");

  std::set<int> seen_ids;
  if (j.contains("groups")) {
    for (std::size_t gi = 0; gi < j["groups"].size(); ++gi) {
      const auto& g = j["groups"][gi];
      const std::string where = "scenario.groups[" + std::to_string(gi) + "]";
      check_keys(g, {"id", "activity", "members", "script"}, where);
      GroupSpec spec;
      spec.id = g.at("id").get<int>();
      spec.activity = activity_from_string(g.at("activity").get<std::string>());
      for (const auto& m : g.at("members")) spec.members.push_back(m.get<int>());
      if (spec.members.empty()) throw ConfigError(where + ": empty member list");
      std::sort(spec.members.begin(), spec.members.end());
      for (int id : spec.members)
        if (!seen_ids.insert(id).second)
          throw ConfigError(where + ": pedestrian id " + std::to_string(id) + " used twice");
      spec.script = detail::parse_script(spec.activity, g.at("script"), where + ".script");
      cfg.groups.push_back(std::move(spec));
    }
  }
  if (j.contains("individuals")) {
    for (std::size_t ii = 0; ii < j["individuals"].size(); ++ii) {
      const auto& s = j["individuals"][ii];
      const std::string where = "scenario.individuals[" + std::to_string(ii) + "]";
      check_keys(s, {"id", "waypoints", "speed"}, where);
      IndividualSpec spec;
      spec.id = s.at("id").get<int>();
      if (!seen_ids.insert(spec.id).second)
        throw ConfigError(where + ": pedestrian id " + std::to_string(spec.id) + " used twice");
      for (const auto& w : s.at("waypoints"))
        spec.script.waypoints.push_back(detail::parse_vec2(w, where + ".waypoints"));
      if (spec.script.waypoints.empty()) throw ConfigError(where + ": needs waypoints");
      detail::read(s, "speed", spec.script.speed);
      spec.script.lateral_spacing = 0.0;
      cfg.individuals.push_back(std::move(spec));
    }
  }

  if (j.contains("params")) detail::parse_params(j.at("params"), cfg.params, "scenario.params");
  // The control loop runs at the simulation rate.
  cfg.params.nmpc.dt = cfg.dt;
  return cfg;
}

inline ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario: " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad scenario " + path.string() + ": " + e.what());
  }
  return parse_scenario(j, path.parent_path());
}

}  // namespace gson
