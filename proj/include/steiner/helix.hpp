#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "steiner/geometry.hpp"

namespace steiner {

/// Thrown when a requested construction does not exist for the given
/// parameters (e.g. the analytic Steiner helix with A_m <= 0).
class infeasible_error : public std::domain_error {
  using std::domain_error::domain_error;
};

/// Parameters of the generating helix: angular step per point (radians)
/// and pitch coefficient (height gained per unit angle). The terminal
/// helix radius is normalized to 1.
struct HelixParams {
  double omega = 0.0;
  double a = 0.0;

  bool valid() const {
    return std::isfinite(omega) && omega > 0.0 && omega < 6.283185307179586477 &&
           std::isfinite(a) && a > 0.0;
  }
};

enum class SequenceKind { terminal, steiner };

/// Indexed subsequence of helix points: offset, offset+skip, offset+2*skip, ...
/// up to offset + l_max*skip.
struct SkipSequence {
  int offset = 0;
  int skip = 1;
  int l_max = 0;
  SequenceKind kind = SequenceKind::terminal;

  std::vector<int> indices() const;
};

/// A_m = 1 - 2 cos(m*omega). Controls skip-m chord lengths; the analytic
/// Steiner helix for skip m exists only when A_m > 0.
double a_coefficient(int m, double omega);

/// Radius of the analytic Steiner helix for skip m, or nullopt when it
/// does not exist (A_m <= 0). May exceed 1 for steep helices.
std::optional<double> steiner_radius(int m, const HelixParams& params);

/// True iff the skip-m configuration admits a full Steiner tree:
/// (1+A_m)^2 >= (m a omega)^2 + 1 + A_m and A_m > 0.
bool full_tree_feasible(int m, const HelixParams& params);

/// Splits an index range into the `m` skip subsequences with offsets
/// 0..m-1. Terminal sequences partition {0..n-1}; steiner sequences
/// partition {0..n-2}. Throws std::invalid_argument for m >= n or n < 3.
std::vector<SkipSequence> make_skip_sequences(int n, int m, SequenceKind kind);

/// i-th terminal: (cos(i w), sin(i w), a i w). Lies on the unit cylinder.
Point3 terminal_point(int index, const HelixParams& params);

/// i-th analytic Steiner point for skip m: same angle and height as the
/// i-th terminal, radius steiner_radius(m). nullopt when the radius is
/// undefined.
std::optional<Point3> steiner_point_analytic(int index, int m, const HelixParams& params);

/// n terminals plus the n-2 analytic Steiner seeds (interior indices
/// 1..n-2) for a given skip.
struct PointSet {
  int n = 0;
  HelixParams params;
  std::vector<Point3> terminals;
  std::vector<Point3> steiner_seed;
  double steiner_seed_radius = 0.0;
  // Warning channel: the Steiner helix lies outside the terminal cylinder.
  bool radius_exceeds_cylinder = false;
};

/// Builds the full point set for (n, m). Throws infeasible_error when the
/// Steiner radius is undefined, std::invalid_argument on bad n/m.
PointSet build_point_set(int n, int m, const HelixParams& params);

}  // namespace steiner
