#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "gson/params.hpp"
#include "gson/types.hpp"

namespace gson {

struct Detection {
  Vec2 position;
  double timestamp = 0.0;
};

/// Constant-velocity track over [x, y, vx, vy].
struct Track {
  int track_id = 0;
  Eigen::Vector4d state = Eigen::Vector4d::Zero();
  Eigen::Matrix4d covariance = Eigen::Matrix4d::Identity();
  double last_update = 0.0;
  int misses = 0;

  Vec2 position() const { return {state(0), state(1)}; }
  Vec2 velocity() const { return {state(2), state(3)}; }
};

/// White-acceleration process noise for one axis pair (pos, vel).
inline Eigen::Matrix4d process_noise(double dt, double accel_sigma) {
  const double s2 = accel_sigma * accel_sigma;
  const double q11 = 0.25 * dt * dt * dt * dt * s2;
  const double q12 = 0.5 * dt * dt * dt * s2;
  const double q22 = dt * dt * s2;
  Eigen::Matrix4d q = Eigen::Matrix4d::Zero();
  q(0, 0) = q11; q(0, 2) = q12;
  q(1, 1) = q11; q(1, 3) = q12;
  q(2, 0) = q12; q(2, 2) = q22;
  q(3, 1) = q12; q(3, 3) = q22;
  return q;
}

inline Eigen::Matrix4d transition_matrix(double dt) {
  Eigen::Matrix4d f = Eigen::Matrix4d::Identity();
  f(0, 2) = dt;
  f(1, 3) = dt;
  return f;
}

/// Constant-velocity propagation by dt; covariance grows by process noise.
inline Track kalman_predict(const Track& track, double dt, double accel_sigma) {
  if (dt < 0.0) throw std::invalid_argument("kalman_predict: negative dt");
  Track out = track;
  const Eigen::Matrix4d f = transition_matrix(dt);
  out.state = f * track.state;
  out.covariance = f * track.covariance * f.transpose() + process_noise(dt, accel_sigma);
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose().eval());
  return out;
}

/// Position measurement update (Joseph form keeps the covariance PSD).
inline Track kalman_update(const Track& track, const Detection& det, double meas_sigma) {
  if (!std::isfinite(det.position.x) || !std::isfinite(det.position.y))
    throw std::invalid_argument("kalman_update: non-finite detection");
  Track out = track;
  Eigen::Matrix<double, 2, 4> h = Eigen::Matrix<double, 2, 4>::Zero();
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;
  const Eigen::Matrix2d r = Eigen::Matrix2d::Identity() * (meas_sigma * meas_sigma);
  const Eigen::Vector2d z(det.position.x, det.position.y);
  const Eigen::Vector2d innovation = z - h * track.state;
  const Eigen::Matrix2d s = h * track.covariance * h.transpose() + r;
  const Eigen::Matrix<double, 4, 2> k = track.covariance * h.transpose() * s.inverse();
  out.state = track.state + k * innovation;
  const Eigen::Matrix4d ikh = Eigen::Matrix4d::Identity() - k * h;
  out.covariance = ikh * track.covariance * ikh.transpose() + k * r * k.transpose();
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose().eval());
  out.last_update = det.timestamp;
  out.misses = 0;
  return out;
}

}  // namespace gson
