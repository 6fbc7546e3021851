#pragma once

#include <array>
#include <span>
#include <vector>

#include "steiner/helix.hpp"

namespace steiner {

/// Edge between node ids. Terminals occupy ids 0..n-1; Steiner nodes occupy
/// ids n..2n-3, with id n+j holding the Steiner point attached to terminal
/// j+1.
struct EdgeRef {
  int u = 0;
  int v = 0;
};

/// Edge list of the 3-sausage topology on n terminals: Steiner nodes form a
/// path, each attached to its terminal, with the path ends picking up
/// terminals 0 and n-1. 2n-3 edges, every Steiner node degree 3.
std::vector<EdgeRef> sausage_edges(int n);

enum class SeedKind { analytic, collapsed };

/// Fixed-topology tree: positions plus optimizer state.
struct SausageTree {
  int n = 0;
  HelixParams params;
  std::vector<Point3> terminals;
  std::vector<Point3> steiner;  // steiner[j] attaches to terminals[j+1]
  double total_length = 0.0;
  bool converged = false;
  int sweeps = 0;
  double last_max_displacement = 0.0;

  std::vector<EdgeRef> edges() const { return sausage_edges(n); }
};

/// Sausage on helix terminals. The analytic seed places Steiner points on
/// the skip-1 Steiner helix (throws infeasible_error when A_1 <= 0); the
/// collapsed seed parks each one just inside its terminal, at radius 0.99.
SausageTree build_sausage(int n, const HelixParams& params, SeedKind seed);

/// Sausage over arbitrary positions (terminals.size() >= 3, steiner.size()
/// == terminals.size() - 2).
SausageTree make_sausage(std::vector<Point3> terminals, std::vector<Point3> steiner);

/// Point minimizing summed distance to three points. Interior 120-degree
/// junction when every triangle angle is below 120 degrees, otherwise the
/// wide-angle vertex; coincident pairs collapse to the duplicated point.
Point3 fermat_point(const Point3& p1, const Point3& p2, const Point3& p3);

struct OptimizeOptions {
  double tol = 1e-10;     // max single-point displacement per sweep
  int max_iter = 100000;  // sweep cap
};

/// Cyclic coordinate descent: each sweep relocates every Steiner point to
/// the Fermat point of its current neighbors (alternating sweep direction).
/// Total length is non-increasing across sweeps. Convergence state is
/// reported on the returned tree; non-convergence is not an error here.
SausageTree optimize_steiner(SausageTree tree, const OptimizeOptions& opts = {});

/// Total edge length recomputed from positions.
double tree_length(const SausageTree& tree);

struct SteinerAngles {
  std::array<double, 3> angles_deg{};  // pairwise angles of the three edges
  bool degenerate = false;             // zero-length edge at this node
};

struct AngleReport {
  std::vector<SteinerAngles> nodes;  // aligned with SausageTree::steiner
  bool all_within = false;
  double max_deviation_deg = 0.0;
};

/// Meeting angles at every Steiner node; all_within is true iff every angle
/// of every non-degenerate node is within tol_deg of 120.
AngleReport check_angles(const SausageTree& tree, double tol_deg);

/// Spanning tree realizing the skip-m chord structure: the m skip paths
/// joined by the consecutive edges P_0-P_1 ... P_{m-2}-P_{m-1}.
struct LadderTree {
  int n = 0;
  int m = 0;
  std::vector<EdgeRef> edges;  // n-1 edges over terminal ids
  double total_length = 0.0;
};

LadderTree build_ladder(int n, int m, const HelixParams& params);

/// Exact Euclidean MST length (dense Prim; fine at desk scale).
double mst_length(std::span<const Point3> points);

/// Optimized sausage length over MST length for n helix terminals.
/// Throws std::runtime_error if the optimizer fails to converge.
double finite_ratio(int n, const HelixParams& params, double tol = 1e-10);

}  // namespace steiner
