#include "eprgames/solve.hpp"

#include <algorithm>
#include <cmath>

#include "eprgames/errors.hpp"
#include "eprgames/grid_search.hpp"

namespace eprgames {

namespace {

constexpr double kNashTol = 1e-9;

bool near(const MixedProfile& p, const MixedProfile& q) {
  return std::abs(p.pa - q.pa) <= kNashTol && std::abs(p.pb - q.pb) <= kNashTol;
}

}  // namespace

CorrGameSolution solve_correlation_game(const CorrelationGameSpec& spec, int grid_n) {
  CorrGameSolution sol;
  sol.classical_pure = spec.game.pure_nash();
  sol.classical_mixed = spec.game.mixed_nash();
  sol.grid_n = grid_n;

  PayoffFn payoff = probability_payoff_fn(spec);

  std::vector<MixedProfile> candidates;
  for (const MixedProfile& classical : sol.classical_mixed.profiles) {
    std::vector<double> xs = q_inverse_model(spec.g, spec.model, classical.pa);
    std::vector<double> ys = q_inverse_model(spec.g, spec.model, classical.pb);
    for (double x : xs)
      for (double y : ys) {
        MixedProfile cand{x, y};
        bool dup = false;
        for (const MixedProfile& seen : candidates) dup = dup || near(seen, cand);
        if (!dup) candidates.push_back(cand);
      }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const MixedProfile& p, const MixedProfile& q) {
              return p.pa != q.pa ? p.pa < q.pa : p.pb < q.pb;
            });

  for (const MixedProfile& cand : candidates) {
    if (max_deviation_gain(payoff, cand, 1001) > kNashTol) continue;
    sol.quantum_ne.push_back(cand);
    sol.quantum_payoffs.push_back(quantum_payoff(spec, cand));
    sol.grid_confirmed.push_back(confirm_equilibrium_by_grid(payoff, cand, grid_n));
  }
  return sol;
}

}  // namespace eprgames
