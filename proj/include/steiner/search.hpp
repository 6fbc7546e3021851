#pragma once

#include <string>
#include <vector>

#include "steiner/srf.hpp"

namespace steiner {

/// Rectangular evaluation grid. Omega nodes are inclusive of both ends
/// (omega_lo only, when omega_steps == 1); a nodes exclude a_lo and include
/// a_hi: a_j = a_lo + (a_hi - a_lo) * (j+1) / a_steps.
struct GridSpec {
  double omega_lo = 0.0;
  double omega_hi = 0.0;
  int omega_steps = 0;
  double a_lo = 0.0;
  double a_hi = 0.0;
  int a_steps = 0;
};

/// Largest t = a*omega under (or on) the rho_1 = 1 hypograph curve at this
/// omega: sqrt(A_1 (1 + A_1)).
double hypograph_upper_t(double omega);

struct LowerCurve {
  double t = 0.0;   // max over m >= 2 of the top root of rho_m = 1 in t
  bool exact = true;  // false if the search stopped below t_floor
};

/// Lower envelope of the excluded m >= 2 hypographs at this omega. Exact
/// whenever the returned t >= t_floor; below t_floor larger skips are not
/// pursued (their curves cannot reach t_floor).
LowerCurve hypograph_lower_t(double omega, double t_floor);

/// Study-region membership: omega inside the Graham-Hwang window, the point
/// on or under the rho_1 = 1 curve, and strictly above every rho_m = 1
/// curve for m >= 2. Throws search_cap_error only for a*omega below ~2e-6.
bool domain_contains(double omega, double a);

struct ScanRow {
  double omega = 0.0;
  double a = 0.0;
  double rho = 0.0;
  int m_star = 0;
  bool in_domain = false;
};

struct ScanResult {
  GridSpec grid;
  std::vector<ScanRow> rows;  // omega-major: rows[i*a_steps + j]
  int in_domain_count = 0;
  bool has_minimum = false;   // false when no grid node lies in the domain
  ScanRow minimum;            // first in-domain row attaining the min rho
};

/// Evaluates the SRF on every grid node and records the in-domain minimum.
/// Deterministic for a given spec: rows are written by grid index and the
/// reduction runs in index order regardless of thread count.
ScanResult scan(const GridSpec& spec, int threads = 1);

struct RefinedCritical {
  double omega = 0.0;
  double a = 0.0;
  double rho = 0.0;
  double residual_12 = 0.0;  // d1 - d2 at the solution
  double residual_13 = 0.0;  // d1 - d3 at the solution
  int iterations = 0;
  bool converged = false;
  std::string diagnostic;    // non-empty on failure
};

/// Damped Newton (finite-difference Jacobian) on the spanning-density
/// equalities d1 = d2, d1 = d3, from the given start. Residual targets are
/// absolute; tol below ~1e-15 sits under the double-precision floor.
RefinedCritical refine_critical(double omega0, double a0, double tol = 1e-12,
                                int max_iter = 60);

struct Violation {
  double omega = 0.0;
  double a = 0.0;
  double rho = 0.0;
  std::string reason;
};

struct BoundarySample {
  double omega = 0.0;
  double a = 0.0;
  double rho = 0.0;
  std::string side;  // "lower-curve", "upper-curve", "a-cap", "omega-edge"
};

struct Certificate {
  int schema_version = 1;
  GridSpec grid;
  RefinedCritical refined;
  ScanRow scan_minimum;
  int in_domain_count = 0;
  double min_in_domain_rho = 0.0;
  double boundary_margin = 0.0;  // min boundary rho minus refined rho
  int boundary_sample_count = 0;
  double a_cap = 0.0;
  bool pass = false;
  std::string diagnostic;
  std::vector<Violation> violations;
  std::vector<BoundarySample> boundary;
};

/// Assembles the global-minimum certificate: the refinement must not beat
/// the scan minimum beyond tolerance, every in-domain sample must sit at or
/// above the refined minimum (and the sqrt(3)/3 floor), and domain boundary
/// samples must sit strictly above it.
Certificate certify_minimum(const ScanResult& scan_result, const RefinedCritical& refined);

}  // namespace steiner
