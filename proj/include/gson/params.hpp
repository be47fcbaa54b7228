#pragma once

#include <array>
#include <cstdint>
#include <numbers>

namespace gson {

/// Simulated 2D person sensor replacing the LiDAR/camera front end.
struct SensorParams {
  double range = 10.0;                      // m
  double fov = 2.0 * std::numbers::pi;      // rad, centered on robot heading
  double noise_sigma = 0.05;                // m, per-axis Gaussian
  double dropout_prob = 0.05;               // per-detection miss probability
};

struct TrackerParams {
  double gate = 1.0;           // m, association gate
  int max_misses = 10;         // consecutive misses before a track is dropped
  int confirm_hits = 2;        // consecutive associations before a track is reported
  double accel_sigma = 0.5;    // m/s^2, white-acceleration process noise
  double meas_sigma = 0.05;    // m, measurement noise std
  double init_pos_var = 0.25;  // m^2, new-track position variance
  double init_vel_var = 1.0;   // (m/s)^2, new-track velocity variance
};

struct KeyframeParams {
  double window = 3.0;  // s, trailing window for the max-count frame
};

struct SocialParams {
  double margin = 0.5;  // m, ellipse minor radius around hull edges
};

struct GlobalPlannerParams {
  double robot_radius = 0.3;     // m, footprint inflation before search
  double inflation_decay = 0.3;  // m, graded cost band beyond the hard ring
  double max_segment = 0.5;      // m, waypoint spacing after smoothing
};

struct BitStarParams {
  int batches = 5;
  int samples_per_batch = 200;
  double eta = 1.1;  // RGG radius scale
};

struct MidlevelParams {
  double goal_offset = 1.0;  // m, lateral distance of the sampled new goal
  BitStarParams bitstar;
};

struct NmpcParams {
  int horizon = 20;
  double dt = 0.1;
  std::array<double, 3> pf = {10.0, 10.0, 1.0};  // terminal weight diagonal (x, y, theta)
  std::array<double, 2> qu = {0.5, 0.1};         // control weight diagonal (v, omega)
  double lambda = 0.2;                           // CBF decay rate, in (0, 1]
  double d_safe = 0.6;                           // m
  double v_max = 0.8;                            // m/s
  double omega_max = 1.0;                        // rad/s
  double carrot_distance = 1.5;                  // m, lookahead along the active path
  int max_inner_iterations = 50;                 // quasi-Newton steps per penalty round
  int max_outer_iterations = 10;                 // multiplier update rounds
  double kkt_tol = 1e-4;                         // projected-gradient norm for optimality
  double feas_tol = 1e-9;                        // constraint violation target
  double slack_weight = 1e4;                     // penalty for already-violated obstacles
  double recovery_v_cap = 0.2;                   // m/s speed cap while any h(x0) < 0
};

struct CrowdParams {
  double max_speed = 1.5;        // m/s pedestrian speed cap
  double repulsion_gain = 0.8;   // 1/s
  double repulsion_cutoff = 1.0; // m
  double min_spacing = 0.4;      // m, required initial pairwise separation
};

struct ExecutiveParams {
  double goal_tolerance = 0.3;  // m
  double brake_decel = 1.5;     // m/s^2 used when the solver reports infeasible
};

/// All tunable blocks, populated from the scenario's "params" object.
struct PlannerParams {
  SensorParams sensor;
  TrackerParams tracker;
  KeyframeParams keyframe;
  SocialParams social;
  GlobalPlannerParams global;
  MidlevelParams midlevel;
  NmpcParams nmpc;
  CrowdParams crowd;
  ExecutiveParams executive;
};

}  // namespace gson
