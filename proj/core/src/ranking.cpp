#include "dancing/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dancing {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_positive(double angle) {
  double w = std::fmod(angle, kTwoPi);
  if (w < 0) w += kTwoPi;
  return w;
}

struct NormalizedVertex {
  std::size_t index = 0;     // into Pattern::vertices()
  double radius = 0.0;       // distance from circle center, in circle radii
  double angle = 0.0;        // atan2 direction from the center
  int cardinality = 1;
  std::size_t cluster = 0;   // radial projection this vertex belongs to
};

}  // namespace

int compare(const VertexKey& a, const VertexKey& b, double eps,
            double eps_angle) {
  if (std::abs(a.rho - b.rho) > eps) return a.rho < b.rho ? -1 : 1;
  if (std::abs(a.theta - b.theta) > eps_angle) return a.theta < b.theta ? -1 : 1;
  if (a.cardinality != b.cardinality) {
    return a.cardinality < b.cardinality ? -1 : 1;
  }
  return 0;
}

int compare(const std::vector<VertexKey>& a, const std::vector<VertexKey>& b,
            double eps, double eps_angle) {
  const std::size_t common = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < common; ++i) {
    const int c = compare(a[i], b[i], eps, eps_angle);
    if (c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

std::size_t Ranking::class_of(std::size_t vertex_index) const {
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (std::size_t v : classes[c]) {
      if (v == vertex_index) return c;
    }
  }
  throw std::out_of_range("vertex index not present in ranking");
}

Ranking rank(const Pattern& pattern, double eps, double eps_angle) {
  if (classify(pattern, eps).tag != PatternTag::n_points) {
    throw std::invalid_argument("ranking defined only for NPoints");
  }
  const Circle circle = sec(pattern);
  const auto& vertices = pattern.vertices();

  std::vector<NormalizedVertex> off_center;
  std::size_t center_index = vertices.size();  // sentinel: no center vertex
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Point z{(vertices[i].position.x - circle.center.x) / circle.radius,
                  (vertices[i].position.y - circle.center.y) / circle.radius};
    const double r = norm(z);
    if (r <= eps) {
      center_index = i;
      continue;
    }
    off_center.push_back(
        {i, r, std::atan2(z.y, z.x), vertices[i].cardinality, 0});
  }

  // Group off-center vertices into radial projections: equal directions from
  // the center within eps_angle (wrapping across the -pi/pi seam).
  std::vector<std::size_t> by_angle(off_center.size());
  for (std::size_t i = 0; i < by_angle.size(); ++i) by_angle[i] = i;
  std::sort(by_angle.begin(), by_angle.end(),
            [&](std::size_t a, std::size_t b) {
              return off_center[a].angle < off_center[b].angle;
            });
  std::vector<double> cluster_angle;  // representative direction per cluster
  for (std::size_t pos = 0; pos < by_angle.size(); ++pos) {
    NormalizedVertex& v = off_center[by_angle[pos]];
    if (pos > 0) {
      const NormalizedVertex& prev = off_center[by_angle[pos - 1]];
      if (v.angle - prev.angle <= eps_angle) {
        v.cluster = prev.cluster;
        continue;
      }
    }
    v.cluster = cluster_angle.size();
    cluster_angle.push_back(v.angle);
  }
  // The first and last clusters may straddle the atan2 seam.
  if (cluster_angle.size() > 1) {
    const NormalizedVertex& first = off_center[by_angle.front()];
    const NormalizedVertex& last = off_center[by_angle.back()];
    if (first.angle + kTwoPi - last.angle <= eps_angle) {
      const std::size_t merged = last.cluster;
      for (NormalizedVertex& v : off_center) {
        if (v.cluster == 0) v.cluster = merged;
      }
      cluster_angle.erase(cluster_angle.begin());
      for (NormalizedVertex& v : off_center) --v.cluster;
    }
  }
  const std::size_t clusters = cluster_angle.size();

  // Angular gap from each projection to its clockwise and counterclockwise
  // neighbour (full turn when the projection is alone).
  std::vector<double> gap_cw(clusters, kTwoPi);
  std::vector<double> gap_ccw(clusters, kTwoPi);
  if (clusters > 1) {
    for (std::size_t j = 0; j < clusters; ++j) {
      const std::size_t prev = (j + clusters - 1) % clusters;
      const std::size_t next = (j + 1) % clusters;
      gap_cw[j] = wrap_positive(cluster_angle[j] - cluster_angle[prev]);
      gap_ccw[j] = wrap_positive(cluster_angle[next] - cluster_angle[j]);
    }
  }

  // Cyclic orders over the off-center vertices: clockwise (descending
  // direction) and counterclockwise (ascending direction). Vertices sharing
  // a projection are read boundary-first in both directions.
  std::vector<std::size_t> order_ccw(off_center.size());
  for (std::size_t i = 0; i < order_ccw.size(); ++i) order_ccw[i] = i;
  std::sort(order_ccw.begin(), order_ccw.end(),
            [&](std::size_t a, std::size_t b) {
              const NormalizedVertex& va = off_center[a];
              const NormalizedVertex& vb = off_center[b];
              if (va.cluster != vb.cluster) return va.cluster < vb.cluster;
              return va.radius > vb.radius;
            });
  std::vector<std::size_t> order_cw(order_ccw);
  std::sort(order_cw.begin(), order_cw.end(),
            [&](std::size_t a, std::size_t b) {
              const NormalizedVertex& va = off_center[a];
              const NormalizedVertex& vb = off_center[b];
              if (va.cluster != vb.cluster) return va.cluster > vb.cluster;
              return va.radius > vb.radius;
            });

  auto key_cw = [&](const NormalizedVertex& v) {
    return VertexKey{1.0 - v.radius, gap_cw[v.cluster], v.cardinality};
  };
  auto key_ccw = [&](const NormalizedVertex& v) {
    return VertexKey{1.0 - v.radius, gap_ccw[v.cluster], v.cardinality};
  };
  auto string_from = [&](const std::vector<std::size_t>& order,
                         std::size_t start_slot,
                         auto&& key) {
    std::vector<VertexKey> s;
    s.reserve(order.size());
    for (std::size_t step = 0; step < order.size(); ++step) {
      s.push_back(key(off_center[order[(start_slot + step) % order.size()]]));
    }
    return s;
  };

  std::vector<std::size_t> slot_cw(off_center.size());
  std::vector<std::size_t> slot_ccw(off_center.size());
  for (std::size_t s = 0; s < off_center.size(); ++s) {
    slot_cw[order_cw[s]] = s;
    slot_ccw[order_ccw[s]] = s;
  }

  Ranking out;
  out.keys.assign(vertices.size(), {});
  for (std::size_t i = 0; i < off_center.size(); ++i) {
    std::vector<VertexKey> cw = string_from(order_cw, slot_cw[i], key_cw);
    std::vector<VertexKey> ccw = string_from(order_ccw, slot_ccw[i], key_ccw);
    out.keys[off_center[i].index] =
        compare(cw, ccw, eps, eps_angle) <= 0 ? std::move(cw) : std::move(ccw);
  }
  if (center_index < vertices.size()) {
    out.keys[center_index] = {
        VertexKey{1.0, 0.0, vertices[center_index].cardinality}};
  }

  std::vector<std::size_t> sorted(vertices.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) sorted[i] = i;
  std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
    return compare(out.keys[a], out.keys[b], eps, eps_angle) < 0;
  });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i == 0 || compare(out.keys[sorted[i]], out.keys[sorted[i - 1]], eps,
                          eps_angle) != 0) {
      out.classes.emplace_back();
    }
    out.classes.back().push_back(sorted[i]);
  }
  for (auto& cls : out.classes) std::sort(cls.begin(), cls.end());
  return out;
}

bool rank_preserved_under(const Similarity& t, const Pattern& pattern,
                          double eps, double eps_angle) {
  const Ranking before = rank(pattern, eps, eps_angle);
  const Pattern image = apply(t, pattern);
  const Ranking after = rank(image, eps, eps_angle);
  if (before.classes.size() != after.classes.size()) return false;

  const auto& src = pattern.vertices();
  const auto& dst = image.vertices();
  std::vector<std::size_t> map(src.size(), dst.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Point target = t(src[i].position);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < dst.size(); ++j) {
      const double d = dist(target, dst[j].position);
      if (d < best) {
        best = d;
        map[i] = j;
      }
    }
    if (map[i] == dst.size() ||
        src[i].cardinality != dst[map[i]].cardinality) {
      return false;
    }
  }
  for (std::size_t c = 0; c < before.classes.size(); ++c) {
    if (before.classes[c].size() != after.classes[c].size()) return false;
    for (std::size_t v : before.classes[c]) {
      if (after.class_of(map[v]) != c) return false;
    }
  }
  return true;
}

}  // namespace dancing
