#include "steiner/helix.hpp"

#include <cmath>
#include <string>

namespace steiner {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

std::vector<int> SkipSequence::indices() const {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(l_max) + 1);
  for (int l = 0; l <= l_max; ++l) out.push_back(offset + l * skip);
  return out;
}

double a_coefficient(int m, double omega) {
  require(m >= 1, "a_coefficient: m must be >= 1");
  require(std::isfinite(omega), "a_coefficient: omega must be finite");
  return 1.0 - 2.0 * std::cos(static_cast<double>(m) * omega);
}

std::optional<double> steiner_radius(int m, const HelixParams& params) {
  require(params.valid(), "steiner_radius: invalid helix parameters");
  const double am = a_coefficient(m, params.omega);
  if (am <= 0.0) return std::nullopt;
  return m * params.a * params.omega / std::sqrt(am * (1.0 + am));
}

bool full_tree_feasible(int m, const HelixParams& params) {
  require(params.valid(), "full_tree_feasible: invalid helix parameters");
  const double am = a_coefficient(m, params.omega);
  if (am <= 0.0) return false;
  const double t = m * params.a * params.omega;
  return (1.0 + am) * (1.0 + am) >= t * t + 1.0 + am;
}

std::vector<SkipSequence> make_skip_sequences(int n, int m, SequenceKind kind) {
  require(n >= 3, "make_skip_sequences: n must be >= 3");
  require(m >= 1, "make_skip_sequences: m must be >= 1");
  require(m < n, "make_skip_sequences: m must be < n");
  // Top index is n-1 for terminals, n-2 for the Steiner range.
  const int top = kind == SequenceKind::terminal ? n - 1 : n - 2;
  std::vector<SkipSequence> out;
  out.reserve(static_cast<size_t>(m));
  for (int offset = 0; offset < m; ++offset) {
    SkipSequence seq;
    seq.offset = offset;
    seq.skip = m;
    seq.l_max = (top - offset) / m;
    seq.kind = kind;
    out.push_back(seq);
  }
  return out;
}

Point3 terminal_point(int index, const HelixParams& params) {
  require(index >= 0, "terminal_point: index must be >= 0");
  require(params.valid(), "terminal_point: invalid helix parameters");
  // i*omega is evaluated directly in double precision; no 2*pi reduction.
  const double theta = static_cast<double>(index) * params.omega;
  return {std::cos(theta), std::sin(theta), params.a * theta};
}

std::optional<Point3> steiner_point_analytic(int index, int m, const HelixParams& params) {
  require(index >= 0, "steiner_point_analytic: index must be >= 0");
  const auto r = steiner_radius(m, params);
  if (!r) return std::nullopt;
  const double theta = static_cast<double>(index) * params.omega;
  return Point3{*r * std::cos(theta), *r * std::sin(theta), params.a * theta};
}

PointSet build_point_set(int n, int m, const HelixParams& params) {
  require(n >= 3, "build_point_set: n must be >= 3");
  require(m >= 1 && m < n, "build_point_set: need 1 <= m < n");
  require(params.valid(), "build_point_set: invalid helix parameters");

  const auto r = steiner_radius(m, params);
  if (!r) {
    throw infeasible_error("build_point_set: Steiner helix undefined (A_m <= 0) for m=" +
                           std::to_string(m));
  }

  PointSet ps;
  ps.n = n;
  ps.params = params;
  ps.steiner_seed_radius = *r;
  ps.radius_exceeds_cylinder = *r > 1.0;
  ps.terminals.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) ps.terminals.push_back(terminal_point(i, params));
  ps.steiner_seed.reserve(static_cast<size_t>(n) - 2);
  for (int i = 1; i <= n - 2; ++i) {
    const double theta = static_cast<double>(i) * params.omega;
    ps.steiner_seed.push_back({*r * std::cos(theta), *r * std::sin(theta), params.a * theta});
  }
  return ps;
}

}  // namespace steiner
