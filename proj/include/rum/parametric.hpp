#ifndef RUM_PARAMETRIC_HPP
#define RUM_PARAMETRIC_HPP

#include <functional>
#include <optional>
#include <string>

#include "rum/ryser.hpp"

namespace rum {

// Smooth parametric model: theta -> distribution over orders, as doubles.
// The regularity assumptions on the parameterization (injectivity,
// smoothness, closedness) are the caller's responsibility; reports carry a
// caveat describing the scope of the local test.
struct ParametricModel {
  enum class Kind { Logit, Mixture, External };

  int dim_theta = 0;
  Kind kind = Kind::External;
  std::function<std::vector<double>(const std::vector<double>&)> evaluate;
  std::function<bool(const std::vector<double>&)> domain_check;
  // mixture models keep their exact components for the rational rank oracle
  std::vector<Distribution> components;
};

// i.i.d. extreme-value shocks: order probabilities factor into successive
// softmax choices. Parameters are utilities for every alternative except
// `base`, which is pinned at zero.
ParametricModel logit_model(const UniverseContext& ctx, int base);

// evaluate(theta) = sum theta_i * component_i with the last barycentric
// coordinate implied; Theta is the open simplex interior.
ParametricModel mixture_model(const UniverseContext& ctx,
                              std::vector<Distribution> components);

// Tabulated model: exact lookup of pre-evaluated (theta, distribution)
// rows; evaluation at any other theta throws DomainError.
struct ExternalRow {
  std::vector<double> theta;
  std::vector<double> weights;
};
ParametricModel external_model(const UniverseContext& ctx,
                               std::vector<ExternalRow> rows);

struct JacobianReport {
  std::vector<double> theta;
  std::vector<std::vector<double>> jacobian;  // k x k, rows major
  std::vector<double> singular_values;        // descending
  int rank = 0;
  bool full_rank = false;
  std::string caveat;  // empty for mixtures (local test is global there)
};

// Central-difference Jacobian of the projected map theta -> pi(F(theta)),
// reduced to k x k coordinates via the leading left singular directions.
// Singular values at or below max(tol * sigma_max, tol) do not count
// toward the rank.
JacobianReport jacobian_fbar(const RyserContext& rc,
                             const ParametricModel& model,
                             const std::vector<double>& theta,
                             double h = 1e-6, double tol = 1e-8);

struct ScanResult {
  std::vector<JacobianReport> reports;  // grid order
  int min_rank = 0;
  bool full_rank_everywhere = false;
  std::vector<std::size_t> failure_points;  // grid indices without full rank
  // mixtures: exact rational rank of {pi(component_i - component_0)}, which
  // the sampled ranks must match
  std::optional<int> exact_mixture_rank;
  bool exact_agrees = true;
};

ScanResult scan_identification(const RyserContext& rc,
                               const ParametricModel& model,
                               const std::vector<std::vector<double>>& grid,
                               double h = 1e-6, double tol = 1e-8);

// Axis-aligned grid helper: the cartesian product of `points` values per
// axis over [lo, hi]^k.
std::vector<std::vector<double>> cartesian_grid(int dim, double lo, double hi,
                                                int points);

}  // namespace rum

#endif
