#pragma once

#include <vector>

#include "eprgames/bimatrix.hpp"
#include "eprgames/correlation.hpp"

namespace eprgames {

/// Full equilibrium picture of a correlation game.
struct CorrGameSolution {
  std::vector<PureNash> classical_pure;
  MixedNashResult classical_mixed;  // corner profiles + interior point

  /// Classical equilibria pushed through the model's probability transform,
  /// kept only when a 1001-point unilateral deviation scan finds no gain.
  std::vector<MixedProfile> quantum_ne;
  std::vector<std::vector<PayoffPair>> quantum_payoffs;  // per equilibrium

  int grid_n = 0;
  std::vector<bool> grid_confirmed;  // per quantum equilibrium
};

/// Transforms every classical equilibrium through q_inverse_model, validates
/// the candidates by deviation scan, and cross-checks against an eps-aware
/// grid search at resolution grid_n. Non-classical models require an
/// invertible g (PreconditionError otherwise); with the classical model the
/// transform is the identity and the classical equilibria are returned.
CorrGameSolution solve_correlation_game(const CorrelationGameSpec& spec,
                                        int grid_n = 1001);

}  // namespace eprgames
