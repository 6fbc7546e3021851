#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "steiner/helix.hpp"

namespace steiner {

/// Thrown when the min-over-skips search hits its hard iteration cap
/// (only reachable for a*omega vanishingly small).
class search_cap_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kSkipSearchCap = 1'000'000;

/// Per-point asymptotic lengths for one skip value.
struct DensityPair {
  int m = 0;
  double spanning = 0.0;                 // sqrt((m a w)^2 + 1 + A_m)
  std::optional<double> steiner;         // 1 + m a w sqrt(A_m/(1+A_m)), A_m > 0
};

struct MinSpanningResult {
  int m_star = 0;
  double value = 0.0;
};

/// One SRF evaluation: densities for m = 1..m_star+2, the minimizing skip,
/// and rho = steiner density at m=1 over the minimal spanning density.
struct SrfSample {
  HelixParams params;
  std::vector<DensityPair> densities;
  int m_star = 0;
  double min_spanning = 0.0;
  double rho = 0.0;
};

/// The conjectured global minimum of the SRF surface in closed form.
struct CriticalPoint {
  double omega = 0.0;  // pi - arccos(2/3)
  double a = 0.0;      // sqrt(30) / (9 omega)
  double rho = 0.0;    // (3 sqrt 3 + sqrt 7) / 10
};

/// Per-point length of the skip-m spanning ladder (always defined).
double spanning_density(int m, const HelixParams& params);

/// Per-point length of the skip-m Steiner construction; nullopt when the
/// Steiner helix does not exist (A_m <= 0).
std::optional<double> steiner_density(int m, const HelixParams& params);

/// Exact minimum of spanning_density over all m >= 1. Terminates via
/// m*a*omega > current best (1 + A_m >= 0 makes the bound sound); smallest
/// m wins ties. Throws search_cap_error if kSkipSearchCap binds.
MinSpanningResult min_spanning_density(const HelixParams& params);

/// SRF value at (omega, a); nullopt when A_1 <= 0 (no m=1 Steiner helix,
/// the ratio's numerator is undefined).
std::optional<SrfSample> srf(const HelixParams& params);

/// Omega window where the ratio can reach down to the 3-D lower bound
/// sqrt(3)/3: [arccos(1/4), 2 pi - arccos(1/4)].
std::pair<double, double> graham_hwang_window();

CriticalPoint critical_point();

/// Diagnostic: smallest m in [2, m_max] whose defined Steiner density is
/// below the m=1 value, if any. The SRF numerator is fixed at m=1; this
/// reports where that restriction is not the pointwise optimum.
std::optional<int> steiner_density_below_m1(const HelixParams& params, int m_max);

/// Diagnostic: skips in [1, m_max] that admit a full Steiner tree.
std::vector<int> feasible_skips(const HelixParams& params, int m_max);

}  // namespace steiner
