#include "steiner/sausage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "steiner/srf.hpp"

namespace steiner {

namespace {

constexpr double kPi = 3.141592653589793238;
constexpr double kCoincidentEps = 1e-14;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Neighbors of steiner[j]: its terminal and the two path neighbors.
struct Neighbors {
  Point3 terminal;
  Point3 left;
  Point3 right;
};

Neighbors neighbors_of(const SausageTree& t, int j) {
  const int ns = static_cast<int>(t.steiner.size());
  Neighbors nb;
  nb.terminal = t.terminals[static_cast<size_t>(j) + 1];
  nb.left = j == 0 ? t.terminals.front() : t.steiner[static_cast<size_t>(j) - 1];
  nb.right = j == ns - 1 ? t.terminals.back() : t.steiner[static_cast<size_t>(j) + 1];
  return nb;
}

}  // namespace

std::vector<EdgeRef> sausage_edges(int n) {
  require(n >= 3, "sausage_edges: n must be >= 3");
  std::vector<EdgeRef> e;
  e.reserve(2 * static_cast<size_t>(n) - 3);
  const int s0 = n;  // id of first Steiner node
  e.push_back({0, s0});
  for (int j = 0; j < n - 2; ++j) e.push_back({j + 1, s0 + j});
  for (int j = 0; j + 1 < n - 2; ++j) e.push_back({s0 + j, s0 + j + 1});
  e.push_back({n - 1, s0 + n - 3});
  return e;
}

double tree_length(const SausageTree& t) {
  double len = 0.0;
  const int ns = static_cast<int>(t.steiner.size());
  len += distance(t.terminals.front(), t.steiner.front());
  len += distance(t.terminals.back(), t.steiner.back());
  for (int j = 0; j < ns; ++j) len += distance(t.terminals[static_cast<size_t>(j) + 1], t.steiner[static_cast<size_t>(j)]);
  for (int j = 0; j + 1 < ns; ++j) len += distance(t.steiner[static_cast<size_t>(j)], t.steiner[static_cast<size_t>(j) + 1]);
  return len;
}

SausageTree make_sausage(std::vector<Point3> terminals, std::vector<Point3> steiner) {
  require(terminals.size() >= 3, "make_sausage: need at least 3 terminals");
  require(steiner.size() == terminals.size() - 2, "make_sausage: need n-2 Steiner points");
  SausageTree t;
  t.n = static_cast<int>(terminals.size());
  t.terminals = std::move(terminals);
  t.steiner = std::move(steiner);
  t.total_length = tree_length(t);
  return t;
}

SausageTree build_sausage(int n, const HelixParams& params, SeedKind seed) {
  require(n >= 3, "build_sausage: n must be >= 3");
  require(params.valid(), "build_sausage: invalid helix parameters");

  std::vector<Point3> steiner;
  steiner.reserve(static_cast<size_t>(n) - 2);
  if (seed == SeedKind::analytic) {
    const auto ps = build_point_set(n, 1, params);
    SausageTree t = make_sausage(ps.terminals, ps.steiner_seed);
    t.params = params;
    return t;
  }
  std::vector<Point3> terminals;
  terminals.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) terminals.push_back(terminal_point(i, params));
  for (int i = 1; i <= n - 2; ++i) {
    Point3 p = terminals[static_cast<size_t>(i)];
    steiner.push_back({0.99 * p.x, 0.99 * p.y, p.z});
  }
  SausageTree t = make_sausage(std::move(terminals), std::move(steiner));
  t.params = params;
  return t;
}

Point3 fermat_point(const Point3& p1, const Point3& p2, const Point3& p3) {
  require(finite(p1) && finite(p2) && finite(p3), "fermat_point: non-finite input");
  const double a = distance(p2, p3);
  const double b = distance(p1, p3);
  const double c = distance(p1, p2);
  // Coincident pairs: the duplicated point carries weight 2 and wins.
  if (c <= kCoincidentEps || b <= kCoincidentEps) return p1;
  if (a <= kCoincidentEps) return p2;

  const auto clamp1 = [](double v) { return std::clamp(v, -1.0, 1.0); };
  const double cos_a = clamp1((b * b + c * c - a * a) / (2.0 * b * c));
  const double cos_b = clamp1((a * a + c * c - b * b) / (2.0 * a * c));
  const double cos_c = clamp1((a * a + b * b - c * c) / (2.0 * a * b));
  // Wide-angle rule (covers collinear: the middle point sees 180 degrees).
  if (cos_a <= -0.5) return p1;
  if (cos_b <= -0.5) return p2;
  if (cos_c <= -0.5) return p3;

  // Interior junction via the isogonic-point barycentric weights
  // w_i = (opposite side) / sin(angle_i + 60 deg); affine combination is
  // exact in 3-D since the junction lies in the triangle plane.
  const double wa = a / std::sin(std::acos(cos_a) + kPi / 3.0);
  const double wb = b / std::sin(std::acos(cos_b) + kPi / 3.0);
  const double wc = c / std::sin(std::acos(cos_c) + kPi / 3.0);
  const double ws = wa + wb + wc;
  return {(wa * p1.x + wb * p2.x + wc * p3.x) / ws,
          (wa * p1.y + wb * p2.y + wc * p3.y) / ws,
          (wa * p1.z + wb * p2.z + wc * p3.z) / ws};
}

SausageTree optimize_steiner(SausageTree tree, const OptimizeOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("optimize_steiner: tol must be > 0");
  const int ns = static_cast<int>(tree.steiner.size());
  tree.converged = false;
  int sweep = 0;
  double maxd = std::numeric_limits<double>::infinity();
  for (; sweep < opts.max_iter; ++sweep) {
    maxd = 0.0;
    const bool forward = sweep % 2 == 0;
    for (int k = 0; k < ns; ++k) {
      const int j = forward ? k : ns - 1 - k;
      const auto nb = neighbors_of(tree, j);
      const Point3 f = fermat_point(nb.terminal, nb.left, nb.right);
      maxd = std::max(maxd, distance(f, tree.steiner[static_cast<size_t>(j)]));
      tree.steiner[static_cast<size_t>(j)] = f;
    }
    if (maxd < opts.tol) {
      tree.converged = true;
      ++sweep;
      break;
    }
  }
  tree.sweeps = sweep;
  tree.last_max_displacement = maxd;
  tree.total_length = tree_length(tree);
  return tree;
}

AngleReport check_angles(const SausageTree& tree, double tol_deg) {
  AngleReport report;
  const int ns = static_cast<int>(tree.steiner.size());
  report.nodes.resize(static_cast<size_t>(ns));
  report.all_within = true;
  for (int j = 0; j < ns; ++j) {
    const auto nb = neighbors_of(tree, j);
    const Point3 s = tree.steiner[static_cast<size_t>(j)];
    const Point3 e[3] = {nb.terminal - s, nb.left - s, nb.right - s};
    const double len[3] = {norm(e[0]), norm(e[1]), norm(e[2])};
    auto& node = report.nodes[static_cast<size_t>(j)];
    if (std::min({len[0], len[1], len[2]}) <= kCoincidentEps) {
      node.degenerate = true;
      report.all_within = false;
      continue;
    }
    int k = 0;
    for (int x = 0; x < 3; ++x) {
      for (int y = x + 1; y < 3; ++y, ++k) {
        const double cosv = std::clamp(dot(e[x], e[y]) / (len[x] * len[y]), -1.0, 1.0);
        const double deg = std::acos(cosv) * 180.0 / kPi;
        node.angles_deg[static_cast<size_t>(k)] = deg;
        const double dev = std::abs(deg - 120.0);
        report.max_deviation_deg = std::max(report.max_deviation_deg, dev);
        if (dev > tol_deg) report.all_within = false;
      }
    }
  }
  return report;
}

LadderTree build_ladder(int n, int m, const HelixParams& params) {
  require(n >= 3, "build_ladder: n must be >= 3");
  require(m >= 1 && m < n, "build_ladder: need 1 <= m < n");
  require(params.valid(), "build_ladder: invalid helix parameters");

  std::vector<Point3> pts;
  pts.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) pts.push_back(terminal_point(i, params));

  LadderTree ladder;
  ladder.n = n;
  ladder.m = m;
  ladder.edges.reserve(static_cast<size_t>(n) - 1);
  for (const auto& seq : make_skip_sequences(n, m, SequenceKind::terminal)) {
    for (int l = 0; l < seq.l_max; ++l) {
      ladder.edges.push_back({seq.offset + l * m, seq.offset + (l + 1) * m});
    }
  }
  for (int j = 0; j + 1 < m; ++j) ladder.edges.push_back({j, j + 1});

  double len = 0.0;
  for (const auto& e : ladder.edges) {
    len += distance(pts[static_cast<size_t>(e.u)], pts[static_cast<size_t>(e.v)]);
  }
  ladder.total_length = len;
  return ladder;
}

double mst_length(std::span<const Point3> points) {
  const int n = static_cast<int>(points.size());
  require(n >= 2, "mst_length: need at least 2 points");
  // Dense Prim over squared distances; O(n^2) time, O(n) memory.
  std::vector<double> best_sq(static_cast<size_t>(n), std::numeric_limits<double>::infinity());
  std::vector<char> in_tree(static_cast<size_t>(n), 0);
  double total = 0.0;
  int current = 0;
  in_tree[0] = 1;
  for (int added = 1; added < n; ++added) {
    const Point3 p = points[static_cast<size_t>(current)];
    int next = -1;
    double next_sq = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (in_tree[static_cast<size_t>(i)]) continue;
      const Point3 d = points[static_cast<size_t>(i)] - p;
      const double sq = dot(d, d);
      if (sq < best_sq[static_cast<size_t>(i)]) best_sq[static_cast<size_t>(i)] = sq;
      if (best_sq[static_cast<size_t>(i)] < next_sq) {
        next_sq = best_sq[static_cast<size_t>(i)];
        next = i;
      }
    }
    in_tree[static_cast<size_t>(next)] = 1;
    total += std::sqrt(next_sq);
    current = next;
  }
  return total;
}

double finite_ratio(int n, const HelixParams& params, double tol) {
  SausageTree tree = optimize_steiner(build_sausage(n, params, SeedKind::analytic), {tol, 100000});
  if (!tree.converged) {
    throw std::runtime_error("finite_ratio: optimizer did not converge after " +
                             std::to_string(tree.sweeps) +
                             " sweeps (last displacement " +
                             std::to_string(tree.last_max_displacement) + ")");
  }
  return tree.total_length / mst_length(tree.terminals);
}

}  // namespace steiner
