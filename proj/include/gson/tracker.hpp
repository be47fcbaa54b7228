#pragma once

#include <random>
#include <vector>

#include "gson/hungarian.hpp"
#include "gson/kalman.hpp"
#include "gson/params.hpp"
#include "gson/types.hpp"

namespace gson {

struct SensedDetection {
  Detection detection;
  int truth_id = 0;  // simulation-side provenance, used by the oracle estimator
};

/// Range/FOV-limited point sensor with additive Gaussian noise and dropout;
/// stands in for the LiDAR/camera detection front end.
class SensorModel {
 public:
  explicit SensorModel(SensorParams params) : params_(params) {}

  std::vector<SensedDetection> sense(const Pose2D& robot,
                                     const std::vector<PedestrianState>& pedestrians,
                                     double now, std::mt19937_64& rng) const {
    std::vector<SensedDetection> out;
    std::normal_distribution<double> noise(0.0, params_.noise_sigma);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& ped : pedestrians) {
      const Vec2 rel = ped.position - robot.position();
      if (rel.norm() > params_.range) continue;
      if (params_.fov < 2.0 * std::numbers::pi - 1e-9) {
        const double bearing = normalize_angle(std::atan2(rel.y, rel.x) - robot.theta);
        if (std::abs(bearing) > 0.5 * params_.fov) continue;
      }
      // Draw noise before the dropout test so the stream layout per pedestrian
      // is fixed and dropout never shifts another pedestrian's noise.
      const double nx = params_.noise_sigma > 0.0 ? noise(rng) : 0.0;
      const double ny = params_.noise_sigma > 0.0 ? noise(rng) : 0.0;
      const double drop = unit(rng);
      if (drop < params_.dropout_prob) continue;
      out.push_back({Detection{{ped.position.x + nx, ped.position.y + ny}, now}, ped.id});
    }
    return out;
  }

 private:
  SensorParams params_;
};

/// Result of one tracker step; `matches` maps track ids to the index of the
/// detection that updated them (used to maintain track/truth correspondence).
struct TrackerStep {
  std::vector<std::pair<int, int>> matches;
  std::vector<int> dropped;
};

/// Multi-object tracker: gated Hungarian association over predicted tracks,
/// two-hit confirmation, miss-count retirement.
class Tracker {
 public:
  explicit Tracker(TrackerParams params) : params_(params) {}

  TrackerStep step(const std::vector<Detection>& detections, double now) {
    TrackerStep result;
    const double dt = tracks_.empty() ? 0.0 : now - last_step_;
    for (auto& slot : tracks_) slot.track = kalman_predict(slot.track, std::max(0.0, dt), params_.accel_sigma);
    last_step_ = now;

    const int nt = static_cast<int>(tracks_.size());
    const int nd = static_cast<int>(detections.size());
    std::vector<double> dist(static_cast<std::size_t>(std::max(nt, 1)) * std::max(nd, 1), 0.0);
    for (int i = 0; i < nt; ++i)
      for (int j = 0; j < nd; ++j)
        dist[i * std::max(nd, 1) + j] = distance(tracks_[i].track.position(), detections[j].position);
    const Assignment assignment =
        (nt > 0 && nd > 0) ? match_within_gate(dist, nt, nd, params_.gate) : Assignment{};

    std::vector<char> det_used(nd, false);
    for (const auto& [ti, dj] : assignment.pairs) {
      auto& slot = tracks_[ti];
      slot.track = kalman_update(slot.track, detections[dj], params_.meas_sigma);
      slot.hits += 1;
      if (slot.hits >= params_.confirm_hits) slot.confirmed = true;
      det_used[dj] = true;
      if (slot.confirmed) result.matches.emplace_back(slot.track.track_id, dj);
    }

    // Miss handling: tentative tracks need consecutive hits, so one miss kills them.
    std::vector<Slot> kept;
    kept.reserve(tracks_.size());
    std::vector<char> matched(nt, false);
    for (const auto& [ti, dj] : assignment.pairs) matched[ti] = true;
    for (int i = 0; i < nt; ++i) {
      auto& slot = tracks_[i];
      if (!matched[i]) {
        if (!slot.confirmed) {
          continue;
        }
        slot.track.misses += 1;
        if (slot.track.misses >= params_.max_misses) {
          result.dropped.push_back(slot.track.track_id);
          continue;
        }
      }
      kept.push_back(std::move(slot));
    }
    tracks_ = std::move(kept);

    for (int j = 0; j < nd; ++j) {
      if (det_used[j]) continue;
      Slot slot;
      slot.track.track_id = next_id_++;
      slot.track.state << detections[j].position.x, detections[j].position.y, 0.0, 0.0;
      slot.track.covariance = Eigen::Matrix4d::Zero();
      slot.track.covariance(0, 0) = slot.track.covariance(1, 1) = params_.init_pos_var;
      slot.track.covariance(2, 2) = slot.track.covariance(3, 3) = params_.init_vel_var;
      slot.track.last_update = now;
      slot.hits = 1;
      slot.confirmed = params_.confirm_hits <= 1;
      tracks_.push_back(std::move(slot));
    }
    return result;
  }

  /// Confirmed tracks only; tentative ones are invisible to consumers.
  std::vector<Track> tracks() const {
    std::vector<Track> out;
    for (const auto& slot : tracks_)
      if (slot.confirmed) out.push_back(slot.track);
    return out;
  }

  /// Confirmed tracks that were associated with a detection at the given step.
  std::vector<Track> visible_tracks(const TrackerStep& step) const {
    std::vector<Track> out;
    for (const auto& slot : tracks_) {
      if (!slot.confirmed) continue;
      for (const auto& [tid, _] : step.matches)
        if (tid == slot.track.track_id) {
          out.push_back(slot.track);
          break;
        }
    }
    return out;
  }

 private:
  struct Slot {
    Track track;
    int hits = 0;
    bool confirmed = false;
  };

  TrackerParams params_;
  std::vector<Slot> tracks_;
  double last_step_ = 0.0;
  int next_id_ = 1;
};

}  // namespace gson
