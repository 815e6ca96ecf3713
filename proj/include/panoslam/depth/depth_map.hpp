#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace panoslam::depth {

// Per-pixel ray-range depth with a validity mask. Pixels outside the region
// the pipeline can estimate (the LiDAR overlap) stay invalid.
class DenseDepthMap {
 public:
  DenseDepthMap() = default;
  DenseDepthMap(int width, int height)
      : width_(width),
        height_(height),
        depth_(static_cast<std::size_t>(width) * height, 0.0),
        valid_(static_cast<std::size_t>(width) * height, 0) {
    if (width <= 0 || height <= 0)
      throw std::invalid_argument("DenseDepthMap: non-positive size");
  }

  int width() const { return width_; }
  int height() const { return height_; }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }

  double at(int x, int y) const { return depth_[index(x, y)]; }
  bool valid(int x, int y) const { return valid_[index(x, y)] != 0; }
  void set(int x, int y, double d) {
    depth_[index(x, y)] = d;
    valid_[index(x, y)] = 1;
  }
  void invalidate(int x, int y) { valid_[index(x, y)] = 0; }

  std::vector<double>& depths() { return depth_; }
  const std::vector<double>& depths() const { return depth_; }
  std::vector<std::uint8_t>& validity() { return valid_; }
  const std::vector<std::uint8_t>& validity() const { return valid_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> depth_;
  std::vector<std::uint8_t> valid_;
};

// Additive correction field; same layout as DenseDepthMap but semantically a
// delta in meters.
using CorrectionMap = DenseDepthMap;

// Projected LiDAR: at most one positive range per integer pixel.
class SparseDepthMap {
 public:
  struct Entry {
    int x = 0;
    int y = 0;
    double depth = 0.0;
  };

  SparseDepthMap() = default;
  SparseDepthMap(int width, int height) : width_(width), height_(height) {
    if (width <= 0 || height <= 0)
      throw std::invalid_argument("SparseDepthMap: non-positive size");
  }

  int width() const { return width_; }
  int height() const { return height_; }

  // Keeps the nearer return on collision, mirroring a depth buffer.
  void insert(int x, int y, double depth) {
    if (!(depth > 0.0))
      throw std::invalid_argument("SparseDepthMap: depth must be > 0");
    if (x < 0 || x >= width_ || y < 0 || y >= height_)
      throw std::invalid_argument("SparseDepthMap: pixel out of bounds");
    const std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
        static_cast<std::uint32_t>(y);
    auto it = lookup_.find(key);
    if (it == lookup_.end()) {
      lookup_.emplace(key, entries_.size());
      entries_.push_back({x, y, depth});
    } else if (depth < entries_[it->second].depth) {
      entries_[it->second].depth = depth;
    }
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  const Entry* find(int x, int y) const {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
        static_cast<std::uint32_t>(y);
    const auto it = lookup_.find(key);
    return it == lookup_.end() ? nullptr : &entries_[it->second];
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Entry> entries_;
  std::unordered_map<std::uint64_t, std::size_t> lookup_;
};

// Binary grid format: magic "PSDG", u32 width, u32 height (little endian),
// row-major float64 depths, then a validity bitmap (LSB-first, row-major,
// padded to whole bytes).
void save_depth_map(const DenseDepthMap& map, const std::string& path);
DenseDepthMap load_depth_map(const std::string& path);

// Radius-dilated validity mask, one byte per pixel. Pixels within Euclidean
// distance `radius` of a valid sparse entry are set.
std::vector<std::uint8_t> overlap_region(const SparseDepthMap& sparse,
                                         int radius);

}  // namespace panoslam::depth
