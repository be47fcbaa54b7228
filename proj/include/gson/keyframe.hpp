#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "gson/params.hpp"
#include "gson/types.hpp"

namespace gson {

struct TrackSnapshot {
  int track_id = 0;
  Vec2 position;
  Vec2 velocity;
};

/// One tick's view of the tracked crowd.
struct CrowdFrame {
  double t = 0.0;
  std::vector<TrackSnapshot> tracks;

  int count() const { return static_cast<int>(tracks.size()); }
};

/// The frame with the most visible people in the trailing window; estimator
/// queries fire only when this changes.
struct Keyframe {
  double timestamp = 0.0;
  std::vector<TrackSnapshot> tracks;
};

/// Maintains the max-count frame over a sliding window. The current keyframe
/// is kept while it stays in the window and still ties the maximum count;
/// otherwise the newest frame among the argmax candidates is selected and the
/// change signals "query the estimator". Empty frames never become keyframes.
class KeyframeBuffer {
 public:
  explicit KeyframeBuffer(KeyframeParams params) : params_(params) {}

  /// Pushes this tick's frame; returns the new keyframe exactly when it changed.
  std::optional<Keyframe> push(const CrowdFrame& frame) {
    frames_.push_back(frame);
    const double cutoff = frame.t - params_.window;
    while (!frames_.empty() && frames_.front().t < cutoff - 1e-9) frames_.pop_front();

    int max_count = 0;
    for (const auto& f : frames_) max_count = std::max(max_count, f.count());

    if (max_count == 0) {
      current_.reset();
      return std::nullopt;
    }
    if (current_) {
      // Still valid: in window and not beaten by a higher count.
      for (const auto& f : frames_) {
        if (f.t == current_->timestamp && f.count() == max_count) return std::nullopt;
      }
    }
    const CrowdFrame* best = nullptr;
    for (const auto& f : frames_)
      if (f.count() == max_count) best = &f;  // ties resolve toward the newest
    current_ = Keyframe{best->t, best->tracks};
    return current_;
  }

  const std::optional<Keyframe>& current() const { return current_; }

 private:
  KeyframeParams params_;
  std::deque<CrowdFrame> frames_;
  std::optional<Keyframe> current_;
};

}  // namespace gson
