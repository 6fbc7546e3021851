#include "steiner/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace steiner {

namespace {

constexpr double kCertSlack = 1e-9;
constexpr double kGhFloorSlack = 1e-12;

double gh_floor() { return std::sqrt(3.0) / 3.0; }

// Upper bound on any rho_m = 1 root for skip m: (2m+1)/(m^2-1) >= t_up(m).
double root_envelope(int m) {
  return (2.0 * m + 1.0) / (static_cast<double>(m) * m - 1.0);
}

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

double hypograph_upper_t(double omega) {
  const double a1 = a_coefficient(1, omega);
  if (a1 <= 0.0) return 0.0;
  return std::sqrt(a1 * (1.0 + a1));
}

LowerCurve hypograph_lower_t(double omega, double t_floor) {
  require(t_floor > 0.0, "hypograph_lower_t: t_floor must be > 0");
  const double a1 = a_coefficient(1, omega);
  require(a1 > 0.0, "hypograph_lower_t: needs A_1 > 0");
  const double s2 = a1 / (1.0 + a1);
  const double s = std::sqrt(s2);
  LowerCurve out;
  for (int m = 2;; ++m) {
    if (m > kSkipSearchCap) {
      throw search_cap_error("hypograph_lower_t: skip search cap reached");
    }
    const double env = root_envelope(m);
    if (env <= out.t) break;  // no further skip can raise the envelope
    if (env < t_floor) {
      out.exact = out.t >= t_floor;
      break;
    }
    const double mm = static_cast<double>(m) * m - s2;
    const double disc = s2 - mm * a_coefficient(m, omega);
    if (disc >= 0.0) {
      out.t = std::max(out.t, (s + std::sqrt(disc)) / mm);
    }
  }
  return out;
}

bool domain_contains(double omega, double a) {
  if (!std::isfinite(omega) || !std::isfinite(a) || a <= 0.0) return false;
  const auto [lo, hi] = graham_hwang_window();
  if (omega < lo || omega > hi) return false;
  const double t = a * omega;
  if (t > hypograph_upper_t(omega)) return false;

  const double a1 = a_coefficient(1, omega);
  const double s2 = a1 / (1.0 + a1);
  const double s = std::sqrt(s2);
  for (int m = 2;; ++m) {
    if (m > kSkipSearchCap) {
      throw search_cap_error("domain_contains: skip search cap reached (a*omega too small)");
    }
    if (root_envelope(m) < t) return true;  // no larger skip can exclude
    const double mm = static_cast<double>(m) * m - s2;
    const double disc = s2 - mm * a_coefficient(m, omega);
    if (disc >= 0.0 && t <= (s + std::sqrt(disc)) / mm) return false;
  }
}

ScanResult scan(const GridSpec& spec, int threads) {
  const auto [wlo, whi] = graham_hwang_window();
  require(spec.omega_steps >= 1, "scan: omega_steps must be >= 1");
  require(spec.a_steps >= 1, "scan: a_steps must be >= 1");
  require(std::isfinite(spec.omega_lo) && std::isfinite(spec.omega_hi) &&
              spec.omega_lo <= spec.omega_hi,
          "scan: bad omega range");
  require(spec.omega_lo >= wlo - 1e-12 && spec.omega_hi <= whi + 1e-12,
          "scan: omega range must lie inside the Graham-Hwang window");
  require(spec.a_lo >= 0.0 && spec.a_hi > spec.a_lo, "scan: bad a range");
  const double a_first = spec.a_lo + (spec.a_hi - spec.a_lo) / spec.a_steps;
  require(a_first * spec.omega_lo > 1e-5, "scan: smallest grid a*omega too small");
  if (spec.omega_steps == 1) {
    require(spec.omega_lo == spec.omega_hi, "scan: omega_steps == 1 needs omega_lo == omega_hi");
  }

  ScanResult result;
  result.grid = spec;
  result.rows.resize(static_cast<size_t>(spec.omega_steps) * spec.a_steps);

  const auto omega_at = [&](int i) {
    if (spec.omega_steps == 1) return spec.omega_lo;
    return spec.omega_lo + (spec.omega_hi - spec.omega_lo) * i / (spec.omega_steps - 1);
  };
  const auto a_at = [&](int j) {
    return spec.a_lo + (spec.a_hi - spec.a_lo) * (j + 1) / spec.a_steps;
  };

  const auto run_columns = [&](int col_begin, int col_end) {
    for (int i = col_begin; i < col_end; ++i) {
      const double w = omega_at(i);
      const double t_up = hypograph_upper_t(w);
      const double t_lo = hypograph_lower_t(w, a_at(0) * w).t;
      for (int j = 0; j < spec.a_steps; ++j) {
        const double a = a_at(j);
        const double t = a * w;
        ScanRow& row = result.rows[static_cast<size_t>(i) * spec.a_steps + j];
        row.omega = w;
        row.a = a;
        row.in_domain = t_lo < t && t <= t_up;
        const auto sample = srf({w, a});
        // A_1 > 0 throughout the window, so srf is defined on every node.
        row.rho = sample->rho;
        row.m_star = sample->m_star;
      }
    }
  };

  threads = std::clamp(threads, 1, spec.omega_steps);
  if (threads == 1) {
    run_columns(0, spec.omega_steps);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    const int chunk = (spec.omega_steps + threads - 1) / threads;
    for (int k = 0; k < threads; ++k) {
      const int b = k * chunk;
      const int e = std::min(spec.omega_steps, b + chunk);
      if (b >= e) break;
      pool.emplace_back(run_columns, b, e);
    }
    for (auto& th : pool) th.join();
  }

  // Reduce in grid-index order; ties keep the earliest row.
  for (const auto& row : result.rows) {
    if (!row.in_domain) continue;
    ++result.in_domain_count;
    if (!result.has_minimum || row.rho < result.minimum.rho) {
      result.has_minimum = true;
      result.minimum = row;
    }
  }
  return result;
}

namespace {

// Residuals of the triple-intersection system.
void density_residuals(double omega, double a, double out[2]) {
  const HelixParams p{omega, a};
  const double d1 = spanning_density(1, p);
  out[0] = d1 - spanning_density(2, p);
  out[1] = d1 - spanning_density(3, p);
}

}  // namespace

RefinedCritical refine_critical(double omega0, double a0, double tol, int max_iter) {
  require(tol > 0.0, "refine_critical: tol must be > 0");
  RefinedCritical out;
  double x[2] = {omega0, a0};
  double f[2];
  density_residuals(x[0], x[1], f);

  int it = 0;
  for (; it < max_iter; ++it) {
    if (std::max(std::abs(f[0]), std::abs(f[1])) < tol) break;

    double jac[2][2];
    for (int col = 0; col < 2; ++col) {
      const double h = 1e-7 * std::max(std::abs(x[col]), 1.0);
      double xp[2] = {x[0], x[1]};
      xp[col] += h;
      double fp[2];
      density_residuals(xp[0], xp[1], fp);
      jac[0][col] = (fp[0] - f[0]) / h;
      jac[1][col] = (fp[1] - f[1]) / h;
    }
    const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    const double scale = std::max({std::abs(jac[0][0]), std::abs(jac[0][1]),
                                   std::abs(jac[1][0]), std::abs(jac[1][1]), 1e-300});
    if (std::abs(det) < 1e-14 * scale * scale) {
      out.diagnostic = "singular Jacobian at omega=" + std::to_string(x[0]) +
                       " a=" + std::to_string(x[1]);
      break;
    }
    const double dx0 = (f[0] * jac[1][1] - f[1] * jac[0][1]) / det;
    const double dx1 = (jac[0][0] * f[1] - jac[1][0] * f[0]) / det;

    // Damping: halve the step until the residual norm stops growing.
    const double f_norm = std::max(std::abs(f[0]), std::abs(f[1]));
    double lambda = 1.0;
    double xn[2];
    double fn[2];
    for (int back = 0; back < 25; ++back) {
      xn[0] = x[0] - lambda * dx0;
      xn[1] = x[1] - lambda * dx1;
      density_residuals(xn[0], xn[1], fn);
      if (std::max(std::abs(fn[0]), std::abs(fn[1])) <= f_norm) break;
      lambda *= 0.5;
    }
    x[0] = xn[0];
    x[1] = xn[1];
    f[0] = fn[0];
    f[1] = fn[1];
  }

  out.omega = x[0];
  out.a = x[1];
  out.residual_12 = f[0];
  out.residual_13 = f[1];
  out.iterations = it;
  out.converged = out.diagnostic.empty() &&
                  std::max(std::abs(f[0]), std::abs(f[1])) < tol;
  if (!out.converged && out.diagnostic.empty()) {
    out.diagnostic = "no convergence after " + std::to_string(it) +
                     " iterations; residuals " + std::to_string(f[0]) + ", " +
                     std::to_string(f[1]);
  }
  const auto sample = srf({x[0], x[1]});
  out.rho = sample ? sample->rho : std::numeric_limits<double>::quiet_NaN();
  return out;
}

Certificate certify_minimum(const ScanResult& scan_result, const RefinedCritical& refined) {
  Certificate cert;
  cert.grid = scan_result.grid;
  cert.refined = refined;
  cert.scan_minimum = scan_result.minimum;
  cert.in_domain_count = scan_result.in_domain_count;
  cert.a_cap = scan_result.grid.a_hi;

  if (!refined.converged) {
    cert.diagnostic = "refinement did not converge: " + refined.diagnostic;
    return cert;
  }
  if (!scan_result.has_minimum) {
    cert.diagnostic = "empty domain: no in-domain grid node";
    return cert;
  }

  bool ok = true;
  if (refined.rho > scan_result.minimum.rho + kCertSlack) {
    ok = false;
    cert.diagnostic = "refined minimum exceeds scan minimum";
  }

  cert.min_in_domain_rho = std::numeric_limits<double>::infinity();
  const double floor = gh_floor();
  for (const auto& row : scan_result.rows) {
    if (!row.in_domain) continue;
    cert.min_in_domain_rho = std::min(cert.min_in_domain_rho, row.rho);
    if (row.rho < refined.rho - kCertSlack) {
      ok = false;
      cert.violations.push_back({row.omega, row.a, row.rho, "below refined minimum"});
    }
    if (row.rho < floor - kGhFloorSlack) {
      ok = false;
      cert.violations.push_back({row.omega, row.a, row.rho, "below Graham-Hwang floor"});
    }
  }

  // Boundary of the study region: the two hypograph curves per column (the
  // a-cap replaces the upper curve where it binds) plus the in-domain nodes
  // of the first and last omega columns.
  const GridSpec& g = scan_result.grid;
  const auto omega_at = [&](int i) {
    if (g.omega_steps == 1) return g.omega_lo;
    return g.omega_lo + (g.omega_hi - g.omega_lo) * i / (g.omega_steps - 1);
  };
  const double a_first = g.a_lo + (g.a_hi - g.a_lo) / g.a_steps;
  for (int i = 0; i < g.omega_steps; ++i) {
    const double w = omega_at(i);
    const double t_up = hypograph_upper_t(w);
    const double t_cap = g.a_hi * w;
    const auto lower = hypograph_lower_t(w, a_first * w);
    if (lower.t >= t_up) continue;  // empty slice
    if (lower.exact && lower.t > 0.0) {
      const auto s = srf({w, lower.t / w});
      cert.boundary.push_back({w, lower.t / w, s->rho, "lower-curve"});
    }
    const double t_b = std::min(t_up, t_cap);
    if (t_b > lower.t) {
      const auto s = srf({w, t_b / w});
      cert.boundary.push_back({w, t_b / w, s->rho, t_up <= t_cap ? "upper-curve" : "a-cap"});
    }
  }
  for (int i : {0, g.omega_steps - 1}) {
    for (int j = 0; j < g.a_steps; ++j) {
      const auto& row = scan_result.rows[static_cast<size_t>(i) * g.a_steps + j];
      if (row.in_domain) cert.boundary.push_back({row.omega, row.a, row.rho, "omega-edge"});
    }
    if (g.omega_steps == 1) break;
  }

  cert.boundary_sample_count = static_cast<int>(cert.boundary.size());
  double min_boundary = std::numeric_limits<double>::infinity();
  for (const auto& b : cert.boundary) min_boundary = std::min(min_boundary, b.rho);
  cert.boundary_margin = min_boundary - refined.rho;
  if (!(cert.boundary_margin > 0.0)) {
    ok = false;
    if (cert.diagnostic.empty()) cert.diagnostic = "boundary margin not positive";
  }

  cert.pass = ok;
  return cert;
}

}  // namespace steiner
