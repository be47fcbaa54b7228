#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gson/types.hpp"

namespace gson {

/// Cost conventions shared by every planning layer.
/// 0 free, 1-252 graded inflation, 253 footprint-inflated, 254 social space, 255 lethal.
namespace cost {
inline constexpr std::uint8_t kFree = 0;
inline constexpr std::uint8_t kInflated = 253;
inline constexpr std::uint8_t kSocial = 254;
inline constexpr std::uint8_t kLethal = 255;
inline constexpr std::uint8_t kBlockedMin = 253;  // >= this blocks planning
}  // namespace cost

struct GridIndex {
  int ix = 0;
  int iy = 0;
  bool operator==(const GridIndex&) const = default;
};

/// Row-major planar cost grid. Origin is the world position of the (0,0) cell
/// corner; cell (ix,iy) covers [ix*res, (ix+1)*res) x [iy*res, (iy+1)*res)
/// relative to the origin. Immutable in normal use: social inflation copies.
class CostMap {
 public:
  CostMap() = default;
  CostMap(int width, int height, double resolution, Pose2D origin,
          std::uint8_t fill = cost::kFree)
      : width_(width),
        height_(height),
        resolution_(resolution),
        origin_(origin),
        cells_(static_cast<std::size_t>(width) * height, fill) {
    if (width <= 0 || height <= 0 || resolution <= 0.0)
      throw ConfigError("CostMap: non-positive dimensions or resolution");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  const Pose2D& origin() const { return origin_; }
  double width_m() const { return width_ * resolution_; }
  double height_m() const { return height_ * resolution_; }

  bool in_bounds(GridIndex c) const {
    return c.ix >= 0 && c.ix < width_ && c.iy >= 0 && c.iy < height_;
  }

  bool contains(const Vec2& p) const {
    const double lx = p.x - origin_.x;
    const double ly = p.y - origin_.y;
    return lx >= 0.0 && ly >= 0.0 && lx < width_m() && ly < height_m();
  }

  /// Cell containing p. Throws std::out_of_range for points outside the map.
  GridIndex world_to_grid(const Vec2& p) const {
    if (!contains(p)) throw std::out_of_range("world_to_grid: point outside map");
    return {static_cast<int>(std::floor((p.x - origin_.x) / resolution_)),
            static_cast<int>(std::floor((p.y - origin_.y) / resolution_))};
  }

  /// Center of cell c.
  Vec2 grid_to_world(GridIndex c) const {
    return {origin_.x + (c.ix + 0.5) * resolution_, origin_.y + (c.iy + 0.5) * resolution_};
  }

  std::uint8_t at(GridIndex c) const { return cells_[index_of(c)]; }
  void set(GridIndex c, std::uint8_t v) { cells_[index_of(c)] = v; }

  /// Cost at a world point; out-of-bounds queries are lethal by contract.
  std::uint8_t cost_at(const Vec2& p) const {
    if (!contains(p)) return cost::kLethal;
    return cells_[index_of({static_cast<int>(std::floor((p.x - origin_.x) / resolution_)),
                            static_cast<int>(std::floor((p.y - origin_.y) / resolution_))})];
  }

  bool blocked_at(const Vec2& p) const { return cost_at(p) >= cost::kBlockedMin; }

  const std::vector<std::uint8_t>& cells() const { return cells_; }

  bool operator==(const CostMap&) const = default;

 private:
  std::size_t index_of(GridIndex c) const {
    return static_cast<std::size_t>(c.iy) * width_ + c.ix;
  }

  int width_ = 0;
  int height_ = 0;
  double resolution_ = 0.05;
  Pose2D origin_;
  std::vector<std::uint8_t> cells_;
};

/// Copies the map, hard-blocking cells within `radius` of any blocked cell
/// (footprint inflation) and, when decay > 0, adding a graded 1..252 band
/// that falls off linearly over `decay` meters beyond the hard ring.
inline CostMap inflate(const CostMap& map, double radius, double decay = 0.0) {
  CostMap out = map;
  if (radius <= 0.0 && decay <= 0.0) return out;
  const double res = map.resolution();
  const int reach = static_cast<int>(std::ceil((radius + decay) / res));

  // Precompute stamp offsets with their center distances.
  struct Offset {
    int dx, dy;
    double dist;
  };
  std::vector<Offset> stamp;
  for (int dy = -reach; dy <= reach; ++dy)
    for (int dx = -reach; dx <= reach; ++dx) {
      const double d = std::hypot(dx * res, dy * res);
      if (d <= radius + decay) stamp.push_back({dx, dy, d});
    }

  for (int iy = 0; iy < map.height(); ++iy)
    for (int ix = 0; ix < map.width(); ++ix) {
      if (map.at({ix, iy}) < cost::kBlockedMin) continue;
      for (const auto& o : stamp) {
        const GridIndex c{ix + o.dx, iy + o.dy};
        if (!out.in_bounds(c)) continue;
        std::uint8_t v;
        if (o.dist <= radius) {
          v = cost::kInflated;
        } else {
          const double frac = 1.0 - (o.dist - radius) / decay;
          v = static_cast<std::uint8_t>(std::clamp(frac * 252.0, 0.0, 252.0));
        }
        if (v > out.at(c)) out.set(c, v);
      }
    }
  return out;
}

namespace detail {

struct PgmImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<std::uint8_t> pixels;  // row 0 = top
};

inline PgmImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open map image: " + path.string());

  auto next_token = [&in, &path]() -> std::string {
    std::string tok;
    while (in >> tok) {
      if (tok[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      return tok;
    }
    throw ConfigError("truncated PGM header: " + path.string());
  };

  const std::string magic = next_token();
  if (magic != "P5" && magic != "P2") throw ConfigError("unsupported image format (want PGM P5/P2)");
  PgmImage img;
  img.width = std::stoi(next_token());
  img.height = std::stoi(next_token());
  img.maxval = std::stoi(next_token());
  if (img.width <= 0 || img.height <= 0 || img.maxval <= 0 || img.maxval > 255)
    throw ConfigError("bad PGM dimensions: " + path.string());
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  img.pixels.resize(n);
  if (magic == "P5") {
    in.get();  // single whitespace after maxval
    in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
      throw ConfigError("truncated PGM data: " + path.string());
  } else {
    for (std::size_t i = 0; i < n; ++i) img.pixels[i] = static_cast<std::uint8_t>(std::stoi(next_token()));
  }
  return img;
}

}  // namespace detail

/// Loads a map from an 8-bit grayscale PGM (0 = occupied, 255 = free) and its
/// sidecar JSON (same stem, .json) carrying resolution, origin, and thresholds:
///   { "resolution": 0.05, "origin": {"x":0,"y":0}, "occupied_max":127, "free_min":200 }
/// Pixels <= occupied_max become lethal, >= free_min become free, and the band
/// between maps linearly onto graded costs 252..1. Image row 0 is the top of
/// the map (max y), matching the usual image convention.
inline CostMap load_map(const std::filesystem::path& image_path) {
  const auto img = detail::read_pgm(image_path);

  std::filesystem::path meta_path = image_path;
  meta_path.replace_extension(".json");
  std::ifstream meta_in(meta_path);
  if (!meta_in) throw ConfigError("cannot open map metadata: " + meta_path.string());
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(meta_in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad map metadata " + meta_path.string() + ": " + e.what());
  }

  const double resolution = meta.at("resolution").get<double>();
  Pose2D origin;
  if (meta.contains("origin")) {
    origin.x = meta["origin"].value("x", 0.0);
    origin.y = meta["origin"].value("y", 0.0);
  }
  const int occupied_max = meta.value("occupied_max", 127);
  const int free_min = meta.value("free_min", 200);
  if (occupied_max >= free_min) throw ConfigError("map thresholds overlap: " + meta_path.string());

  CostMap map(img.width, img.height, resolution, origin);
  for (int iy = 0; iy < img.height; ++iy) {
    for (int ix = 0; ix < img.width; ++ix) {
      // Flip rows: image top row is the highest-y map row.
      const std::uint8_t px = img.pixels[static_cast<std::size_t>(img.height - 1 - iy) * img.width + ix];
      std::uint8_t c;
      if (px <= occupied_max) {
        c = cost::kLethal;
      } else if (px >= free_min) {
        c = cost::kFree;
      } else {
        const double frac = double(free_min - px) / double(free_min - occupied_max);
        c = static_cast<std::uint8_t>(std::clamp(frac * 252.0, 1.0, 252.0));
      }
      map.set({ix, iy}, c);
    }
  }
  return map;
}

}  // namespace gson
