#pragma once

#include <functional>
#include <vector>

#include "eprgames/bimatrix.hpp"
#include "eprgames/correlation.hpp"

namespace eprgames {

struct GridSearchResult {
  std::vector<MixedProfile> equilibria;  // sorted by (pa, pb)
  bool continuum = false;                // every grid profile qualified
};

using PayoffFn = std::function<PayoffPair(double, double)>;

/// Exhaustive check over an n x n grid on [0,1]^2: keeps profiles where no
/// unilateral grid deviation improves the deviator's payoff by more than tol.
GridSearchResult ne_grid_search(const PayoffFn& payoff, int grid_n,
                                double tol = 1e-9);

/// Grid search on the spec's payoff landscape in probability space. The
/// classical model needs no inverse; other models require invertible g
/// (throws PreconditionError otherwise -- choose directions first instead).
GridSearchResult ne_grid_search(const CorrelationGameSpec& spec, int grid_n,
                                double tol = 1e-9);

/// Payoff landscape of a correlation game over probability space; classical
/// games reduce to the bilinear form, other models go through the transformed
/// probability (invertible g required).
PayoffFn probability_payoff_fn(const CorrelationGameSpec& spec);

/// Best payoff improvement available to either player against `at`, deviating
/// over an n-point grid. Zero (up to noise) certifies an equilibrium.
double max_deviation_gain(const PayoffFn& payoff, const MixedProfile& at,
                          int grid_n = 1001);

/// Confirms an analytic equilibrium: `at` itself admits no grid deviation
/// gain beyond tol, and some grid profile within one grid step of `at`
/// survives an eps-equilibrium sweep whose eps absorbs the payoff variation
/// across one grid cell.
bool confirm_equilibrium_by_grid(const PayoffFn& payoff, const MixedProfile& at,
                                 int grid_n, double tol = 1e-9);
bool confirm_equilibrium_by_grid(const CorrelationGameSpec& spec,
                                 const MixedProfile& at, int grid_n,
                                 double tol = 1e-9);

}  // namespace eprgames
