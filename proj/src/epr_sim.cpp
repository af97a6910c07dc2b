#include "eprgames/epr_sim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eprgames/correlation.hpp"
#include "eprgames/errors.hpp"
#include "eprgames/rng.hpp"

namespace eprgames {

namespace {

constexpr double kPi = std::numbers::pi;

// Per-run random streams: u_k(run) = draw(seed, run, k). Three draws per run
// (two axis choices, one joint outcome); the sphere oracle uses two more.
enum : uint64_t { kAxisA = 0, kAxisB = 1, kJoint = 2, kSphereZ = 3, kSpherePhi = 4 };

void check_config(const ProtocolConfig& c) {
  if (c.pa < 0 || c.pa > 1 || c.pb < 0 || c.pb > 1)
    throw std::invalid_argument("axis probabilities must lie in [0,1]");
  if (c.theta_a < 0 || c.theta_a > kPi || c.theta_b < 0 || c.theta_b > kPi)
    throw std::invalid_argument("direction angles must lie in [0,pi]");
}

Vec3 alice_axis(const ProtocolConfig& c, Axis axis) {
  return axis == Axis::z ? z_axis() : axis_in_plane_a(c.theta_a);
}

Vec3 bob_axis(const ProtocolConfig& c, Axis axis) {
  return axis == Axis::z ? z_axis() : axis_in_plane_b(c.theta_b);
}

}  // namespace

RunRecord sample_run(const ProtocolConfig& config, uint64_t run_index) {
  RunRecord rec;
  rec.alice = rng::draw_unit(config.seed, run_index, kAxisA) < config.pa ? Axis::z
                                                                         : Axis::own;
  rec.bob = rng::draw_unit(config.seed, run_index, kAxisB) < config.pb ? Axis::z
                                                                       : Axis::own;
  double c = config.model.corr_pair(alice_axis(config, rec.alice),
                                    bob_axis(config, rec.bob));
  // Joint law P(a,b) = (1 + a*b*c)/4: uniform marginals, correlation c.
  double u = rng::draw_unit(config.seed, run_index, kJoint);
  double p_pp = (1 + c) / 4, p_pm = (1 - c) / 4, p_mp = (1 - c) / 4;
  if (u < p_pp) {
    rec.a = 1, rec.b = 1;
  } else if (u < p_pp + p_pm) {
    rec.a = 1, rec.b = -1;
  } else if (u < p_pp + p_pm + p_mp) {
    rec.a = -1, rec.b = 1;
  } else {
    rec.a = -1, rec.b = -1;
  }
  return rec;
}

RunRecord sample_run_lambda_sphere(const ProtocolConfig& config, uint64_t run_index) {
  if (config.model.kind() != CorrelationKind::classical)
    throw PreconditionError("lambda-sphere sampling models classical pairs only");
  RunRecord rec;
  rec.alice = rng::draw_unit(config.seed, run_index, kAxisA) < config.pa ? Axis::z
                                                                         : Axis::own;
  rec.bob = rng::draw_unit(config.seed, run_index, kAxisB) < config.pb ? Axis::z
                                                                       : Axis::own;
  // Hidden direction of Alice's half; Bob's half carries the opposite.
  double z = 1 - 2 * rng::draw_unit(config.seed, run_index, kSphereZ);
  double phi = 2 * kPi * rng::draw_unit(config.seed, run_index, kSpherePhi);
  double rho = std::sqrt(std::max(0.0, 1 - z * z));
  Vec3 lambda{rho * std::cos(phi), rho * std::sin(phi), z};
  rec.a = dot(alice_axis(config, rec.alice), lambda) >= 0 ? 1 : -1;
  rec.b = dot(bob_axis(config, rec.bob), lambda) >= 0 ? -1 : 1;
  return rec;
}

std::vector<RunRecord> run_protocol(const ProtocolConfig& config) {
  check_config(config);
  if (config.runs < 1) throw std::invalid_argument("runs must be at least 1");
  std::vector<RunRecord> records;
  records.reserve(config.runs);
  for (uint64_t i = 0; i < config.runs; ++i) records.push_back(sample_run(config, i));
  return records;
}

ArbiterReport arbiter_report(const std::vector<RunRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no records to report on");
  ArbiterReport rep;
  rep.runs = records.size();
  struct Acc {
    uint64_t n = 0;
    double sum = 0.0;
  } ac, cb, ab, cc;
  for (const RunRecord& r : records) {
    if (r.alice == Axis::z) ++rep.n_alice_z;
    if (r.bob == Axis::z) ++rep.n_bob_z;
    double prod = static_cast<double>(r.a) * r.b;
    Acc& acc = r.alice == Axis::own ? (r.bob == Axis::z ? ac : ab)
                                    : (r.bob == Axis::z ? cc : cb);
    ++acc.n;
    acc.sum += prod;
  }
  rep.pa_hat = static_cast<double>(rep.n_alice_z) / static_cast<double>(rep.runs);
  rep.pb_hat = static_cast<double>(rep.n_bob_z) / static_cast<double>(rep.runs);
  auto finish = [](const Acc& acc) -> std::optional<PairEstimate> {
    if (acc.n == 0) return std::nullopt;
    return PairEstimate{acc.n, acc.sum / static_cast<double>(acc.n)};
  };
  rep.ac = finish(ac);
  rep.cb = finish(cb);
  rep.ab = finish(ab);
  rep.cc = finish(cc);
  return rep;
}

PayoffPair reward(const ArbiterReport& report, const BimatrixGame& game,
                  const GFunction& g) {
  if (!report.ac || !report.cb)
    throw InsufficientDataError(
        "reward needs both <ac> and <cb>; some axis pair never occurred");
  return payoff_from_correlations(game, g, report.ac->value, report.cb->value);
}

}  // namespace eprgames
