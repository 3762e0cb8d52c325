#include "rum/parametric.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace rum {

namespace {

void check_weights(const std::vector<double>& w) {
  double total = 0;
  for (double x : w) {
    if (x < 0) throw DomainError("parametric model produced a negative weight");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw DomainError("parametric model mass deviates from 1 by more than 1e-12");
}

std::vector<double> normalized(std::vector<double> w) {
  check_weights(w);
  double total = 0;
  for (double x : w) total += x;
  for (double& x : w) x /= total;
  return w;
}

}  // namespace

ParametricModel logit_model(const UniverseContext& ctx, int base) {
  if (base < 0 || base >= ctx.n()) throw DomainError("base alternative not in universe");
  const int n = ctx.n();
  ParametricModel m;
  m.kind = ParametricModel::Kind::Logit;
  m.dim_theta = n - 1;
  m.domain_check = [](const std::vector<double>& theta) {
    for (double t : theta)
      if (!std::isfinite(t)) return false;
    return true;
  };
  // copy of the order table; the model must stay valid on its own
  std::vector<std::vector<std::uint8_t>> rankings;
  for (const auto& o : ctx.orders()) rankings.push_back(o.ranking);
  m.evaluate = [n, base, rankings](const std::vector<double>& theta) {
    if (static_cast<int>(theta.size()) != n - 1)
      throw DomainError("theta has wrong dimension");
    std::vector<double> util(n);
    int j = 0;
    for (int x = 0; x < n; ++x) util[x] = (x == base) ? 0.0 : theta[j++];
    std::vector<double> w(rankings.size());
    for (std::size_t oid = 0; oid < rankings.size(); ++oid) {
      // successive-softmax decomposition of the order probability
      double p = 1.0, denom = 0.0;
      for (int pos = n - 1; pos >= 0; --pos) denom += std::exp(util[rankings[oid][pos]]);
      for (int pos = 0; pos < n - 1; ++pos) {
        double e = std::exp(util[rankings[oid][pos]]);
        p *= e / denom;
        denom -= e;
      }
      w[oid] = p;
    }
    return normalized(std::move(w));
  };
  return m;
}

ParametricModel mixture_model(const UniverseContext& ctx,
                              std::vector<Distribution> components) {
  if (components.size() < 2)
    throw DomainError("mixture model needs at least two components");
  for (const auto& c : components)
    if (c.w.size() != ctx.order_count())
      throw DomainError("component over the wrong universe");
  ParametricModel m;
  m.kind = ParametricModel::Kind::Mixture;
  m.dim_theta = static_cast<int>(components.size()) - 1;
  m.components = components;
  std::vector<std::vector<double>> comp_f;
  for (const auto& c : components) {
    std::vector<double> v(c.w.size());
    for (std::size_t o = 0; o < c.w.size(); ++o) v[o] = to_double(c.w[o]);
    comp_f.push_back(std::move(v));
  }
  const int k = m.dim_theta;
  m.domain_check = [k](const std::vector<double>& theta) {
    if (static_cast<int>(theta.size()) != k) return false;
    double total = 0;
    for (double t : theta) {
      if (t <= 0) return false;
      total += t;
    }
    return total < 1.0;
  };
  m.evaluate = [k, comp_f](const std::vector<double>& theta) {
    if (static_cast<int>(theta.size()) != k)
      throw DomainError("theta has wrong dimension");
    double rest = 1.0;
    for (double t : theta) rest -= t;
    std::vector<double> w(comp_f[0].size(), 0.0);
    for (int i = 0; i < k; ++i)
      for (std::size_t o = 0; o < w.size(); ++o) w[o] += theta[i] * comp_f[i][o];
    for (std::size_t o = 0; o < w.size(); ++o) w[o] += rest * comp_f[k][o];
    return normalized(std::move(w));
  };
  return m;
}

ParametricModel external_model(const UniverseContext& ctx,
                               std::vector<ExternalRow> rows) {
  if (rows.empty()) throw DomainError("external model table is empty");
  const int k = static_cast<int>(rows[0].theta.size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.theta.size()) != k)
      throw DomainError("external model rows have inconsistent theta dimension");
    if (r.weights.size() != ctx.order_count())
      throw DomainError("external model row over the wrong universe");
    check_weights(r.weights);
  }
  ParametricModel m;
  m.kind = ParametricModel::Kind::External;
  m.dim_theta = k;
  auto table = std::make_shared<std::vector<ExternalRow>>(std::move(rows));
  auto lookup = [table](const std::vector<double>& theta) -> const ExternalRow* {
    for (const auto& r : *table) {
      bool match = true;
      for (std::size_t i = 0; i < theta.size() && match; ++i)
        if (std::abs(r.theta[i] - theta[i]) > 1e-12) match = false;
      if (match) return &r;
    }
    return nullptr;
  };
  m.domain_check = [lookup, k](const std::vector<double>& theta) {
    return static_cast<int>(theta.size()) == k && lookup(theta) != nullptr;
  };
  m.evaluate = [lookup](const std::vector<double>& theta) {
    const ExternalRow* row = lookup(theta);
    if (!row) throw DomainError("theta not present in the external model table");
    return normalized(row->weights);
  };
  return m;
}

namespace {

std::vector<double> project_float(const RyserContext& rc,
                                  const std::vector<double>& v) {
  const auto& p = rc.float_projector();
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t r = 0; r < out.size(); ++r) {
    double acc = 0;
    const auto& row = p[r];
    for (std::size_t c = 0; c < row.size(); ++c) acc += row[c] * v[c];
    out[r] = acc;
  }
  return out;
}

int rank_from_singulars(const std::vector<double>& sv, double tol) {
  double smax = sv.empty() ? 0.0 : sv.front();
  double cutoff = std::max(tol * smax, tol);
  int rank = 0;
  for (double s : sv)
    if (s > cutoff) ++rank;
  return rank;
}

}  // namespace

JacobianReport jacobian_fbar(const RyserContext& rc,
                             const ParametricModel& model,
                             const std::vector<double>& theta, double h,
                             double tol) {
  if (static_cast<int>(theta.size()) != model.dim_theta)
    throw DomainError("theta has wrong dimension");
  if (h <= 0) throw DomainError("step size must be positive");
  const int k = model.dim_theta;
  const std::size_t cnt = rc.universe().order_count();

  Eigen::MatrixXd cols(cnt, k);
  for (int i = 0; i < k; ++i) {
    auto up = theta, down = theta;
    up[i] += h;
    down[i] -= h;
    if (!model.domain_check(up) || !model.domain_check(down))
      throw DomainError("theta +- h leaves the parameter domain");
    auto fu = model.evaluate(up);
    auto fd = model.evaluate(down);
    std::vector<double> diff(cnt);
    for (std::size_t o = 0; o < cnt; ++o) diff[o] = (fu[o] - fd[o]) / (2 * h);
    auto proj = project_float(rc, diff);
    for (std::size_t o = 0; o < cnt; ++o) cols(o, i) = proj[o];
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  JacobianReport rep;
  rep.theta = theta;
  // coordinates in the leading k left singular directions
  Eigen::MatrixXd reduced = svd.matrixU().transpose() * cols;
  rep.jacobian.assign(k, std::vector<double>(k, 0.0));
  for (int r = 0; r < k && r < reduced.rows(); ++r)
    for (int c = 0; c < k; ++c) rep.jacobian[r][c] = reduced(r, c);
  rep.singular_values.assign(svd.singularValues().data(),
                             svd.singularValues().data() +
                                 svd.singularValues().size());
  rep.rank = rank_from_singulars(rep.singular_values, tol);
  rep.full_rank = rep.rank == k;
  if (model.kind != ParametricModel::Kind::Mixture)
    rep.caveat =
        "local test: global identification additionally needs the projected "
        "model manifold to be simply connected";
  return rep;
}

ScanResult scan_identification(const RyserContext& rc,
                               const ParametricModel& model,
                               const std::vector<std::vector<double>>& grid,
                               double h, double tol) {
  if (grid.empty()) throw DomainError("scan grid is empty");
  ScanResult out;
  out.min_rank = model.dim_theta;
  out.full_rank_everywhere = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.reports.push_back(jacobian_fbar(rc, model, grid[i], h, tol));
    const auto& rep = out.reports.back();
    out.min_rank = std::min(out.min_rank, rep.rank);
    if (!rep.full_rank) {
      out.full_rank_everywhere = false;
      out.failure_points.push_back(i);
    }
  }
  if (model.kind == ParametricModel::Kind::Mixture) {
    // exact oracle: rank of the projected component differences; mixtures
    // have a constant Jacobian, so every sampled rank must match
    const auto& comps = model.components;
    std::vector<RatVec> diffs;
    for (std::size_t i = 1; i < comps.size(); ++i) {
      RatVec d(comps[i].w.size());
      for (std::size_t o = 0; o < d.size(); ++o)
        d[o] = comps[i].w[o] - comps[0].w[o];
      diffs.push_back(rc.projector().apply(d));
    }
    out.exact_mixture_rank = static_cast<int>(span_rank(diffs));
    for (const auto& rep : out.reports)
      if (rep.rank != *out.exact_mixture_rank) out.exact_agrees = false;
  }
  return out;
}

std::vector<std::vector<double>> cartesian_grid(int dim, double lo, double hi,
                                                int points) {
  if (dim < 1 || points < 1) throw DomainError("bad grid specification");
  std::vector<std::vector<double>> grid;
  std::vector<int> idx(dim, 0);
  for (;;) {
    std::vector<double> theta(dim);
    for (int i = 0; i < dim; ++i)
      theta[i] = points == 1 ? lo : lo + (hi - lo) * idx[i] / (points - 1);
    grid.push_back(std::move(theta));
    int d = dim - 1;
    while (d >= 0 && ++idx[d] == points) idx[d--] = 0;
    if (d < 0) break;
  }
  return grid;
}

}  // namespace rum
