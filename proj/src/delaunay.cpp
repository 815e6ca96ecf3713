#include "panoslam/depth/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <stdexcept>

namespace panoslam::depth {

namespace {

using I128 = __int128;

constexpr int kCoordLimit = 1 << 20;

inline std::uint64_t pixel_key(int x, int y) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
         static_cast<std::uint32_t>(y);
}

// > 0 : c left of a->b (CCW), exact.
inline I128 orient2d(const std::array<int, 2>& a, const std::array<int, 2>& b,
                     const std::array<int, 2>& c) {
  const I128 abx = static_cast<I128>(b[0]) - a[0];
  const I128 aby = static_cast<I128>(b[1]) - a[1];
  const I128 acx = static_cast<I128>(c[0]) - a[0];
  const I128 acy = static_cast<I128>(c[1]) - a[1];
  return abx * acy - aby * acx;
}

// > 0 : d strictly inside the circumcircle of CCW triangle (a, b, c), exact.
inline I128 incircle(const std::array<int, 2>& a, const std::array<int, 2>& b,
                     const std::array<int, 2>& c,
                     const std::array<int, 2>& d) {
  const I128 adx = static_cast<I128>(a[0]) - d[0];
  const I128 ady = static_cast<I128>(a[1]) - d[1];
  const I128 bdx = static_cast<I128>(b[0]) - d[0];
  const I128 bdy = static_cast<I128>(b[1]) - d[1];
  const I128 cdx = static_cast<I128>(c[0]) - d[0];
  const I128 cdy = static_cast<I128>(c[1]) - d[1];
  const I128 ad2 = adx * adx + ady * ady;
  const I128 bd2 = bdx * bdx + bdy * bdy;
  const I128 cd2 = cdx * cdx + cdy * cdy;
  return adx * (bdy * cd2 - cdy * bd2) - ady * (bdx * cd2 - cdx * bd2) +
         ad2 * (bdx * cdy - cdx * bdy);
}

}  // namespace

DelaunayTriangulation DelaunayTriangulation::build(
    std::vector<std::array<int, 2>> sites) {
  for (const auto& s : sites) {
    if (std::abs(s[0]) > kCoordLimit || std::abs(s[1]) > kCoordLimit)
      throw std::invalid_argument("DelaunayTriangulation: coordinate range");
  }
  {
    auto sorted = sites;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("DelaunayTriangulation: duplicate sites");
  }

  DelaunayTriangulation d;
  d.num_sites_ = sites.size();
  d.points_ = std::move(sites);

  // Row-major insertion order keeps consecutive walks short.
  std::vector<int> order(d.num_sites_);
  for (std::size_t i = 0; i < d.num_sites_; ++i)
    order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int l, int r) {
    const auto& a = d.points_[static_cast<std::size_t>(l)];
    const auto& b = d.points_[static_cast<std::size_t>(r)];
    return a[1] != b[1] ? a[1] < b[1] : a[0] < b[0];
  });

  // Enclosing super triangle; its vertices take indices n, n+1, n+2.
  const int s = kCoordLimit + 3;
  const int n = static_cast<int>(d.num_sites_);
  d.points_.push_back({-4 * s, -4 * s});
  d.points_.push_back({4 * s, -4 * s});
  d.points_.push_back({0, 4 * s});
  d.triangles_.push_back({{n, n + 1, n + 2}, {-1, -1, -1}, true});

  std::vector<int> stack, cavity;
  std::vector<std::uint32_t> visit_mark(1, 0);
  std::uint32_t epoch = 0;
  int last = 0;

  for (const int pi : order) {
    const auto& p = d.points_[static_cast<std::size_t>(pi)];
    const int t0 = d.walk(p[0], p[1], last);

    // Grow the cavity: every triangle whose circumcircle strictly contains p.
    ++epoch;
    visit_mark.resize(d.triangles_.size(), 0);
    stack.clear();
    cavity.clear();
    stack.push_back(t0);
    visit_mark[static_cast<std::size_t>(t0)] = epoch;
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      cavity.push_back(t);
      for (int k = 0; k < 3; ++k) {
        const int nb = d.triangles_[static_cast<std::size_t>(t)].nbr[k];
        if (nb < 0 || visit_mark[static_cast<std::size_t>(nb)] == epoch)
          continue;
        const auto& tv = d.triangles_[static_cast<std::size_t>(nb)].v;
        if (incircle(d.points_[static_cast<std::size_t>(tv[0])],
                     d.points_[static_cast<std::size_t>(tv[1])],
                     d.points_[static_cast<std::size_t>(tv[2])], p) > 0) {
          visit_mark[static_cast<std::size_t>(nb)] = epoch;
          stack.push_back(nb);
        }
      }
    }

    // Collect boundary edges (oriented with the cavity on the left) and the
    // outside triangle across each.
    struct BoundaryEdge {
      int a, b, outside;
    };
    std::vector<BoundaryEdge> boundary;
    for (const int t : cavity) {
      const auto& tri = d.triangles_[static_cast<std::size_t>(t)];
      for (int k = 0; k < 3; ++k) {
        const int nb = tri.nbr[k];
        if (nb >= 0 && visit_mark[static_cast<std::size_t>(nb)] == epoch)
          continue;
        boundary.push_back({tri.v[(k + 1) % 3], tri.v[(k + 2) % 3], nb});
      }
    }
    for (const int t : cavity)
      d.triangles_[static_cast<std::size_t>(t)].alive = false;

    // Retriangulate the cavity as a fan around p.
    std::map<std::pair<int, int>, std::pair<int, int>> open_edges;
    int first_new = -1;
    for (const auto& e : boundary) {
      const int nt = static_cast<int>(d.triangles_.size());
      if (first_new < 0) first_new = nt;
      d.triangles_.push_back({{e.a, e.b, pi}, {e.outside, -1, -1}, true});
      if (e.outside >= 0) {
        // The shared edge appears reversed in the outside triangle.
        auto& out = d.triangles_[static_cast<std::size_t>(e.outside)];
        for (int k = 0; k < 3; ++k) {
          if (out.v[(k + 1) % 3] == e.b && out.v[(k + 2) % 3] == e.a) {
            out.nbr[k] = nt;
            break;
          }
        }
      }
      // Spoke edges (b, p) and (p, a) pair up between adjacent fan triangles.
      for (int k = 1; k < 3; ++k) {
        const int va = d.triangles_.back().v[(k + 1) % 3];
        const int vb = d.triangles_.back().v[(k + 2) % 3];
        const auto key = std::minmax(va, vb);
        const auto it = open_edges.find(key);
        if (it == open_edges.end()) {
          open_edges.emplace(key, std::make_pair(nt, k));
        } else {
          d.triangles_[static_cast<std::size_t>(nt)].nbr[k] = it->second.first;
          d.triangles_[static_cast<std::size_t>(it->second.first)]
              .nbr[it->second.second] = nt;
          open_edges.erase(it);
        }
      }
    }
    last = first_new;
  }

  for (const auto& t : d.triangles_)
    if (t.alive && d.is_finite(t)) ++d.finite_triangles_;
  return d;
}

int DelaunayTriangulation::walk(int x, int y, int hint) const {
  const std::array<int, 2> q{x, y};
  int cur = hint;
  if (cur < 0 || cur >= static_cast<int>(triangles_.size()) ||
      !triangles_[static_cast<std::size_t>(cur)].alive)
    cur = static_cast<int>(triangles_.size()) - 1;
  while (!triangles_[static_cast<std::size_t>(cur)].alive) --cur;

  // Visibility walk; terminates on Delaunay triangulations.
  while (true) {
    const Triangle& t = triangles_[static_cast<std::size_t>(cur)];
    bool moved = false;
    for (int k = 0; k < 3; ++k) {
      const auto& a = points_[static_cast<std::size_t>(t.v[(k + 1) % 3])];
      const auto& b = points_[static_cast<std::size_t>(t.v[(k + 2) % 3])];
      if (orient2d(a, b, q) < 0) {
        const int nb = t.nbr[k];
        if (nb < 0) return cur;  // outside the super triangle; unreachable
                                 // for in-range queries
        cur = nb;
        moved = true;
        break;
      }
    }
    if (!moved) return cur;
  }
}

int DelaunayTriangulation::locate(int x, int y, int hint) const {
  if (degenerate()) return -1;
  const int t = walk(x, y, hint);
  return is_finite(triangles_[static_cast<std::size_t>(t)]) ? t : -1;
}

std::array<double, 3> DelaunayTriangulation::barycentric(int tri, int x,
                                                         int y) const {
  const Triangle& t = triangles_[static_cast<std::size_t>(tri)];
  const std::array<int, 2> q{x, y};
  const auto& a = points_[static_cast<std::size_t>(t.v[0])];
  const auto& b = points_[static_cast<std::size_t>(t.v[1])];
  const auto& c = points_[static_cast<std::size_t>(t.v[2])];
  // Signed subareas sum to the total exactly in integer arithmetic.
  const double wa = static_cast<double>(orient2d(q, b, c));
  const double wb = static_cast<double>(orient2d(a, q, c));
  const double wc = static_cast<double>(orient2d(a, b, q));
  const double total = wa + wb + wc;
  return {wa / total, wb / total, wc / total};
}

ScatteredInterpolator ScatteredInterpolator::build(
    const std::vector<std::array<int, 2>>& sites) {
  ScatteredInterpolator s;
  s.sites_ = sites;
  if (sites.empty()) return s;

  s.site_lookup_.reserve(sites.size() * 2);
  int min_x = std::numeric_limits<int>::max(), min_y = min_x;
  int max_x = std::numeric_limits<int>::min(), max_y = max_x;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    s.site_lookup_.emplace(pixel_key(sites[i][0], sites[i][1]),
                           static_cast<int>(i));
    min_x = std::min(min_x, sites[i][0]);
    min_y = std::min(min_y, sites[i][1]);
    max_x = std::max(max_x, sites[i][0]);
    max_y = std::max(max_y, sites[i][1]);
  }

  s.grid_min_x_ = min_x;
  s.grid_min_y_ = min_y;
  s.grid_w_ = (max_x - min_x) / s.cell_size_ + 1;
  s.grid_h_ = (max_y - min_y) / s.cell_size_ + 1;
  s.grid_cells_.assign(
      static_cast<std::size_t>(s.grid_w_) * static_cast<std::size_t>(s.grid_h_),
      {});
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const int cx = (sites[i][0] - min_x) / s.cell_size_;
    const int cy = (sites[i][1] - min_y) / s.cell_size_;
    s.grid_cells_[static_cast<std::size_t>(cy) *
                      static_cast<std::size_t>(s.grid_w_) +
                  static_cast<std::size_t>(cx)]
        .push_back(static_cast<int>(i));
  }

  s.tri_ = DelaunayTriangulation::build(sites);
  s.degenerate_ = s.tri_.degenerate();
  return s;
}

int ScatteredInterpolator::nearest_site(int x, int y) const {
  // Ring search over grid cells, exact within the expanded radius bound.
  const int cx = std::clamp((x - grid_min_x_) / cell_size_, 0, grid_w_ - 1);
  const int cy = std::clamp((y - grid_min_y_) / cell_size_, 0, grid_h_ - 1);
  long long best_d2 = std::numeric_limits<long long>::max();
  int best = -1;
  const int max_ring = std::max(grid_w_, grid_h_);
  for (int ring = 0; ring <= max_ring; ++ring) {
    if (best >= 0) {
      // Any site in a farther ring is at least this far away.
      const long long ring_min =
          static_cast<long long>(ring - 1) * cell_size_;
      if (ring_min > 0 && ring_min * ring_min > best_d2) break;
    }
    for (int gy = cy - ring; gy <= cy + ring; ++gy) {
      if (gy < 0 || gy >= grid_h_) continue;
      for (int gx = cx - ring; gx <= cx + ring; ++gx) {
        if (gx < 0 || gx >= grid_w_) continue;
        if (std::max(std::abs(gx - cx), std::abs(gy - cy)) != ring) continue;
        for (const int i : grid_cells_[static_cast<std::size_t>(gy) *
                                           static_cast<std::size_t>(grid_w_) +
                                       static_cast<std::size_t>(gx)]) {
          const long long dx = sites_[static_cast<std::size_t>(i)][0] - x;
          const long long dy = sites_[static_cast<std::size_t>(i)][1] - y;
          const long long d2 = dx * dx + dy * dy;
          if (d2 < best_d2 || (d2 == best_d2 && i < best)) {
            best_d2 = d2;
            best = i;
          }
        }
      }
    }
  }
  return best;
}

ScatteredInterpolator::Query ScatteredInterpolator::query(int x, int y) const {
  Query q;
  if (sites_.empty()) return q;

  // Exact reproduction at data sites.
  const auto it = site_lookup_.find(pixel_key(x, y));
  if (it != site_lookup_.end()) {
    q.idx[0] = it->second;
    q.w[0] = 1.0;
    return q;
  }

  if (!degenerate_) {
    const int t = tri_.locate(x, y, walk_hint_);
    if (t >= 0) {
      walk_hint_ = t;
      const auto& tv = tri_.triangles()[static_cast<std::size_t>(t)].v;
      const auto w = tri_.barycentric(t, x, y);
      q.idx = {tv[0], tv[1], tv[2]};
      q.w = w;
      return q;
    }
  }

  q.idx[0] = nearest_site(x, y);
  q.w[0] = 1.0;
  return q;
}

}  // namespace panoslam::depth
