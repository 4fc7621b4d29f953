#pragma once

#include <vector>

#include "conemink/measure.hpp"

namespace conemink {

/// Piecewise-linear convex function on a chart domain: the convex envelope
/// of interior node values together with zero boundary data.
struct ConvexPLFunction {
  ChartDomain domain;
  std::vector<Vec> nodes;      // strictly interior, pairwise distinct
  std::vector<double> values;  // <= 0
};

struct SubdifferentialCell {
  int node = -1;
  double volume = 0.0;
  bool active = true;  // false: node value lies above the envelope of the rest
  Polygon2 poly;       // 2D gradient-space cell
  double lo = 0.0, hi = 0.0;  // 1D cell interval
};

/// Brute-force subdifferential cell: exact half-space intersection over all
/// other nodes and all boundary vertices, no locality shortcuts.
SubdifferentialCell cell_oracle(const ConvexPLFunction& f, int i);

std::vector<double> cell_volumes(const ConvexPLFunction& f);

struct SolveOptions {
  double tol = 1e-9;          // relative mass residual per node
  long max_sweeps = 100000;
  double depth_factor = 1e3;  // |u| limit = depth_factor * diam(domain)
  bool newton = false;        // opt-in damped-Newton full-system mode
  int boundary_vertex_count = 64;  // circular3d chart discretization
};

struct SolveReport {
  bool converged = false;
  long sweeps = 0;
  long updates = 0;
  std::vector<double> residual_history;  // max relative residual per sweep
  std::vector<double> achieved;          // converged cell volumes
};

/// Prescribed subdifferential masses at interior nodes, zero boundary data.
/// Monotone raising iteration: initial values are set deep enough that every
/// cell volume exceeds its target, then values only increase.
ConvexPLFunction solve_dirichlet(const ChartDomain& domain,
                                 const std::vector<Vec>& nodes,
                                 const std::vector<double>& masses,
                                 const SolveOptions& opts = {},
                                 SolveReport* report = nullptr);

/// K = ⋂_i {z : <z, v_i> <= <v_i, e1> * u_i} over the chart nodes.
PseudoCone lift(const ConvexPLFunction& f, ConePtr cone);

struct ChartProblem {
  ChartDomain domain;
  std::vector<Vec> nodes;
  std::vector<double> masses;
};

/// Transport an atomic measure to the chart: nodes are the chart images of
/// the atom directions, masses carry the |<v,e1>| factor.
ChartProblem chart_problem(const DiscreteMeasure& mu, int boundary_vertex_count = 64);

/// Solve S_K = mu for a finite measure via the chart solver, returning the
/// asymptotic pseudo cone (and the chart function when requested).
PseudoCone solve_minkowski(const DiscreteMeasure& mu, const SolveOptions& opts = {},
                           SolveReport* report = nullptr,
                           ConvexPLFunction* function_out = nullptr);

struct DominatedOptions {
  SolveOptions solver;
  std::vector<double> heights;  // slice heights for the Cauchy gap report
  int max_stages = 8;
  double domination_tol = 1e-9;
};

struct DominatedStage {
  int i = 0;  // truncation index: atoms with delta >= 1/i
  size_t atom_count = 0;
  double dist_origin = 0.0;
  double min_support_slack = 0.0;  // min over checked dirs of h_K - h_L
  std::vector<double> dh_prev;     // per-height gap to the previous stage
};

struct DominatedResult {
  PseudoCone K;
  std::vector<DominatedStage> stages;
  bool gaps_monotone = true;  // flagged false when Cauchy gaps increase
};

/// Truncation scheme for a dominated measure: solves mu restricted to
/// delta >= 1/i for increasing i, verifying h_K >= h_L at every stage.
/// Requires mu <= S_L atomwise; throws "domination hypothesis failed ..."
/// otherwise.
DominatedResult solve_dominated(const DiscreteMeasure& mu, const PseudoCone& L,
                                const DominatedOptions& opts = {});

/// The unique asymptotic set with S = S_K + S_L (exact merge in 2D, the
/// dominated scheme against the Minkowski sum in 3D).
PseudoCone blaschke_sum(const PseudoCone& K, const PseudoCone& L,
                        const SolveOptions& opts = {});

}  // namespace conemink
