#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eprgames/bimatrix.hpp"
#include "eprgames/correlation.hpp"
#include "eprgames/gfunction.hpp"

namespace eprgames {

enum class Axis : uint8_t { z = 0, own = 1 };

/// One run of the protocol: chosen axes and the +/-1 outcomes.
struct RunRecord {
  Axis alice = Axis::z;
  Axis bob = Axis::z;
  int8_t a = 0;
  int8_t b = 0;
};

struct ProtocolConfig {
  double theta_a = 0.0;  // Alice's alternative axis, angle from z in the x-z plane
  double theta_b = 0.0;  // Bob's alternative axis, angle from z in the y-z plane
  double pa = 0.0;       // probability of the identity move (measure along z)
  double pb = 0.0;
  CorrelationModel model = CorrelationModel::singlet();
  uint64_t runs = 0;
  uint64_t seed = 0;
};

/// Draws one record. Axes are chosen independently (z with probability p);
/// outcomes follow the two-outcome joint law P(a,b) = (1 + a*b*C)/4 with C
/// the model correlation of the chosen axes, so both marginals are uniform.
/// Pure in (config, run_index): chunked and serial generation agree.
RunRecord sample_run(const ProtocolConfig& config, uint64_t run_index);

/// Throws std::invalid_argument if runs == 0 or probabilities are invalid.
std::vector<RunRecord> run_protocol(const ProtocolConfig& config);

/// Sphere-LHV sampler for the classical model only: a hidden unit vector is
/// drawn per run and outcomes are the signs of its projections (Bob's half
/// carries the opposite momentum). Cross-check oracle for sample_run.
RunRecord sample_run_lambda_sphere(const ProtocolConfig& config, uint64_t run_index);

struct PairEstimate {
  uint64_t count = 0;
  double value = 0.0;  // mean of outcome products over this axis pair
};

/// Arbiter's digest of a list of records. Correlations are averaged over
/// exactly the records with the matching axis pair; pairs that never occurred
/// are absent (not zero).
struct ArbiterReport {
  uint64_t runs = 0;
  uint64_t n_alice_z = 0;
  uint64_t n_bob_z = 0;
  double pa_hat = 0.0;  // fraction of runs with Alice on z
  double pb_hat = 0.0;
  std::optional<PairEstimate> ac;  // Alice own, Bob z
  std::optional<PairEstimate> cb;  // Alice z, Bob own
  std::optional<PairEstimate> ab;  // both own
  std::optional<PairEstimate> cc;  // both z
};

/// Throws std::invalid_argument on an empty list.
ArbiterReport arbiter_report(const std::vector<RunRecord>& records);

/// Plugs the estimated <ac>, <cb> into the correlation-form payoff relations.
/// Throws InsufficientDataError when either estimate is absent.
PayoffPair reward(const ArbiterReport& report, const BimatrixGame& game,
                  const GFunction& g);

}  // namespace eprgames
