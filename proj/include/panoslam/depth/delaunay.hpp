#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace panoslam::depth {

// Delaunay triangulation of integer 2D sites (pixel coordinates), built with
// Bowyer-Watson insertion. Orientation and in-circle tests are evaluated in
// 128-bit integer arithmetic, which is exact for |coordinate| <= 2^20, so the
// structure never degrades on the regular, highly cocircular grids produced
// by projected LiDAR.
class DelaunayTriangulation {
 public:
  struct Triangle {
    std::array<int, 3> v;    // CCW vertex indices; >= site_count() => super
    std::array<int, 3> nbr;  // nbr[k] faces the edge opposite v[k]; -1 none
    bool alive = true;
  };

  // Sites must be unique. Throws std::invalid_argument on duplicates or
  // coordinates out of range.
  static DelaunayTriangulation build(std::vector<std::array<int, 2>> sites);

  int site_count() const { return static_cast<int>(num_sites_); }
  const std::array<int, 2>& site(int i) const {
    return points_[static_cast<std::size_t>(i)];
  }

  // True when fewer than 3 non-collinear sites exist (no finite triangle).
  bool degenerate() const { return finite_triangles_ == 0; }

  // Triangle containing (x, y), or -1 when the point is outside the convex
  // hull of the sites. `hint` is a triangle index to start walking from.
  int locate(int x, int y, int hint = 0) const;

  const std::vector<Triangle>& triangles() const { return triangles_; }
  bool is_finite(const Triangle& t) const {
    return t.v[0] < site_count() && t.v[1] < site_count() &&
           t.v[2] < site_count();
  }

  // Barycentric weights of (x, y) in triangle `tri` (assumed containing).
  std::array<double, 3> barycentric(int tri, int x, int y) const;

 private:
  std::vector<std::array<int, 2>> points_;  // sites then 3 super vertices
  std::vector<Triangle> triangles_;
  std::size_t num_sites_ = 0;
  int finite_triangles_ = 0;

  int walk(int x, int y, int hint) const;
};

// Piecewise-linear interpolation over the Delaunay triangulation of the
// sites, extended by nearest-site value outside the convex hull. Queries are
// resolved to (site index triple, weights) once, so re-evaluating with new
// site values is a three-term dot product.
class ScatteredInterpolator {
 public:
  struct Query {
    std::array<int, 3> idx{{-1, -1, -1}};
    std::array<double, 3> w{{0.0, 0.0, 0.0}};
  };

  static ScatteredInterpolator build(
      const std::vector<std::array<int, 2>>& sites);

  bool degenerate() const { return degenerate_; }
  int site_count() const { return static_cast<int>(sites_.size()); }

  // Weights for an integer pixel. A query at a site returns that site with
  // weight one, so the interpolant reproduces its data exactly.
  Query query(int x, int y) const;

  double evaluate(const Query& q, const std::vector<double>& values) const {
    return q.w[0] * values[static_cast<std::size_t>(q.idx[0])] +
           (q.idx[1] >= 0
                ? q.w[1] * values[static_cast<std::size_t>(q.idx[1])] +
                      q.w[2] * values[static_cast<std::size_t>(q.idx[2])]
                : 0.0);
  }

 private:
  std::vector<std::array<int, 2>> sites_;
  DelaunayTriangulation tri_;
  bool degenerate_ = true;
  std::unordered_map<std::uint64_t, int> site_lookup_;
  mutable int walk_hint_ = 0;

  // Uniform grid over sites for exact nearest-site queries.
  int cell_size_ = 16;
  int grid_min_x_ = 0, grid_min_y_ = 0, grid_w_ = 0, grid_h_ = 0;
  std::vector<std::vector<int>> grid_cells_;

  int nearest_site(int x, int y) const;
};

}  // namespace panoslam::depth
