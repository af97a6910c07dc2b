#include "eprgames/grid_search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "eprgames/errors.hpp"

namespace eprgames {

namespace {

struct PayoffTables {
  int n = 0;
  std::vector<double> pa, pb;  // row-major, index i*n + j for profile (i, j)

  static PayoffTables build(const PayoffFn& payoff, int n) {
    PayoffTables t;
    t.n = n;
    t.pa.resize(static_cast<size_t>(n) * n);
    t.pb.resize(static_cast<size_t>(n) * n);
    double step = 1.0 / (n - 1);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        PayoffPair p = payoff(i * step, j * step);
        t.pa[static_cast<size_t>(i) * n + j] = p.a;
        t.pb[static_cast<size_t>(i) * n + j] = p.b;
      }
    }
    return t;
  }

  std::vector<double> col_max_a() const {
    std::vector<double> out(n, -1e300);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out[j] = std::max(out[j], pa[static_cast<size_t>(i) * n + j]);
    return out;
  }

  std::vector<double> row_max_b() const {
    std::vector<double> out(n, -1e300);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out[i] = std::max(out[i], pb[static_cast<size_t>(i) * n + j]);
    return out;
  }

  /// Largest single-step payoff change along the cross through (i0, j0):
  /// steps within one cell of the candidate in one coordinate, the full grid
  /// range in the other. This bounds how far the candidate's cell can sit
  /// below the row/column maxima when it brackets a true equilibrium, without
  /// letting payoff jumps far away (a discontinuous g) inflate the estimate.
  double max_cross_delta(int i0, int j0) const {
    double d = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = std::max(0, j0 - 1); j <= std::min(n - 2, j0 + 1); ++j) {
        size_t k = static_cast<size_t>(i) * n + j;
        d = std::max(d, std::abs(pa[k + 1] - pa[k]));
        d = std::max(d, std::abs(pb[k + 1] - pb[k]));
      }
    for (int j = 0; j < n; ++j)
      for (int i = std::max(0, i0 - 1); i <= std::min(n - 2, i0 + 1); ++i) {
        size_t k = static_cast<size_t>(i) * n + j;
        d = std::max(d, std::abs(pa[k + n] - pa[k]));
        d = std::max(d, std::abs(pb[k + n] - pb[k]));
      }
    return d;
  }

  bool is_eps_ne(int i, int j, const std::vector<double>& colmax,
                 const std::vector<double>& rowmax, double eps) const {
    size_t k = static_cast<size_t>(i) * n + j;
    return pa[k] >= colmax[j] - eps && pb[k] >= rowmax[i] - eps;
  }
};

}  // namespace

GridSearchResult ne_grid_search(const PayoffFn& payoff, int grid_n, double tol) {
  if (grid_n < 2) throw std::invalid_argument("grid_n must be at least 2");
  PayoffTables t = PayoffTables::build(payoff, grid_n);
  std::vector<double> colmax = t.col_max_a();
  std::vector<double> rowmax = t.row_max_b();
  GridSearchResult result;
  double step = 1.0 / (grid_n - 1);
  for (int i = 0; i < grid_n; ++i)
    for (int j = 0; j < grid_n; ++j)
      if (t.is_eps_ne(i, j, colmax, rowmax, tol))
        result.equilibria.push_back({i * step, j * step});
  result.continuum =
      result.equilibria.size() == static_cast<size_t>(grid_n) * grid_n;
  return result;
}

PayoffFn probability_payoff_fn(const CorrelationGameSpec& spec) {
  if (spec.model.kind() == CorrelationKind::classical) {
    // Classical correlations reduce the game to its bilinear form for any g.
    BilinearCoeffs a = spec.game.coeffs_a();
    BilinearCoeffs b = spec.game.coeffs_b();
    return [a, b](double pa, double pb) -> PayoffPair {
      return {a.eval(pa, pb), b.eval(pa, pb)};
    };
  }
  if (!spec.g.invertible())
    throw PreconditionError(
        "probability-space payoffs need an invertible g; choose directions instead");
  BilinearCoeffs a = spec.game.coeffs_a();
  BilinearCoeffs b = spec.game.coeffs_b();
  GFunction g = spec.g;
  CorrelationModel model = spec.model;
  // Grid sweeps revisit the same axis values n times each; memoize the
  // transform. Not safe to share one returned function across threads.
  auto memo = std::make_shared<std::map<double, double>>();
  return [a, b, g, model, memo](double pa, double pb) -> PayoffPair {
    auto transformed = [&](double p) {
      auto it = memo->find(p);
      if (it != memo->end()) return it->second;
      Preimage pre = g.inverse_set(p);
      if (pre.angles.empty())
        throw NoSolutionError("probability not attained by g");
      double value = g.big_g(model.corr_vs_z(pre.angles.front()));
      (*memo)[p] = value;
      return value;
    };
    double x = transformed(pa), y = transformed(pb);
    return {a.eval(x, y), b.eval(x, y)};
  };
}

GridSearchResult ne_grid_search(const CorrelationGameSpec& spec, int grid_n,
                                double tol) {
  return ne_grid_search(probability_payoff_fn(spec), grid_n, tol);
}

double max_deviation_gain(const PayoffFn& payoff, const MixedProfile& at,
                          int grid_n) {
  PayoffPair base = payoff(at.pa, at.pb);
  double gain = 0.0;
  double step = 1.0 / (grid_n - 1);
  for (int i = 0; i < grid_n; ++i) {
    gain = std::max(gain, payoff(i * step, at.pb).a - base.a);
    gain = std::max(gain, payoff(at.pa, i * step).b - base.b);
  }
  return gain;
}

bool confirm_equilibrium_by_grid(const PayoffFn& payoff, const MixedProfile& at,
                                 int grid_n, double tol) {
  if (max_deviation_gain(payoff, at, grid_n) > tol) return false;

  PayoffTables t = PayoffTables::build(payoff, grid_n);
  std::vector<double> colmax = t.col_max_a();
  std::vector<double> rowmax = t.row_max_b();
  double step = 1.0 / (grid_n - 1);
  int i0 = static_cast<int>(std::floor(at.pa / step));
  int j0 = static_cast<int>(std::floor(at.pb / step));
  double eps = std::max(tol, 3.0 * t.max_cross_delta(i0, j0));
  for (int i = std::max(0, i0); i <= std::min(grid_n - 1, i0 + 1); ++i)
    for (int j = std::max(0, j0); j <= std::min(grid_n - 1, j0 + 1); ++j)
      if (t.is_eps_ne(i, j, colmax, rowmax, eps)) return true;
  return false;
}

bool confirm_equilibrium_by_grid(const CorrelationGameSpec& spec,
                                 const MixedProfile& at, int grid_n, double tol) {
  return confirm_equilibrium_by_grid(probability_payoff_fn(spec), at, grid_n, tol);
}

}  // namespace eprgames
