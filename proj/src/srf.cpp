#include "steiner/srf.hpp"

#include <cmath>

namespace steiner {

double spanning_density(int m, const HelixParams& params) {
  if (m < 1) throw std::invalid_argument("spanning_density: m must be >= 1");
  if (!params.valid()) throw std::invalid_argument("spanning_density: invalid parameters");
  const double t = m * params.a * params.omega;
  return std::sqrt(t * t + 1.0 + a_coefficient(m, params.omega));
}

std::optional<double> steiner_density(int m, const HelixParams& params) {
  if (m < 1) throw std::invalid_argument("steiner_density: m must be >= 1");
  if (!params.valid()) throw std::invalid_argument("steiner_density: invalid parameters");
  const double am = a_coefficient(m, params.omega);
  if (am <= 0.0) return std::nullopt;
  return 1.0 + m * params.a * params.omega * std::sqrt(am / (1.0 + am));
}

MinSpanningResult min_spanning_density(const HelixParams& params) {
  if (!params.valid()) throw std::invalid_argument("min_spanning_density: invalid parameters");
  const double t1 = params.a * params.omega;
  MinSpanningResult best{0, 0.0};
  for (int m = 1;; ++m) {
    if (m > kSkipSearchCap) {
      throw search_cap_error("min_spanning_density: skip search cap reached (a*omega too small)");
    }
    const double d = spanning_density(m, params);
    if (best.m_star == 0 || d < best.value) best = {m, d};
    // Any larger skip has density >= (m+1)*a*omega; once that exceeds the
    // incumbent no improvement is possible.
    if ((m + 1) * t1 > best.value) break;
  }
  return best;
}

std::optional<SrfSample> srf(const HelixParams& params) {
  const auto num = steiner_density(1, params);
  if (!num) return std::nullopt;
  const auto min_sp = min_spanning_density(params);

  SrfSample s;
  s.params = params;
  s.m_star = min_sp.m_star;
  s.min_spanning = min_sp.value;
  s.rho = *num / min_sp.value;
  s.densities.reserve(static_cast<size_t>(min_sp.m_star) + 2);
  for (int m = 1; m <= min_sp.m_star + 2; ++m) {
    s.densities.push_back({m, spanning_density(m, params), steiner_density(m, params)});
  }
  return s;
}

std::pair<double, double> graham_hwang_window() {
  const double lo = std::acos(0.25);
  const double two_pi = 6.283185307179586477;
  return {lo, two_pi - lo};
}

CriticalPoint critical_point() {
  const double pi = 3.141592653589793238;
  const double omega = pi - std::acos(2.0 / 3.0);
  const double a = std::sqrt(30.0) / (9.0 * omega);
  const double rho = (3.0 * std::sqrt(3.0) + std::sqrt(7.0)) / 10.0;
  return {omega, a, rho};
}

std::optional<int> steiner_density_below_m1(const HelixParams& params, int m_max) {
  const auto base = steiner_density(1, params);
  if (!base) return std::nullopt;
  for (int m = 2; m <= m_max; ++m) {
    const auto d = steiner_density(m, params);
    if (d && *d < *base) return m;
  }
  return std::nullopt;
}

std::vector<int> feasible_skips(const HelixParams& params, int m_max) {
  std::vector<int> out;
  for (int m = 1; m <= m_max; ++m) {
    if (full_tree_feasible(m, params)) out.push_back(m);
  }
  return out;
}

}  // namespace steiner
