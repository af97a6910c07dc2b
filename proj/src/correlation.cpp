#include "eprgames/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eprgames/errors.hpp"
#include "eprgames/grid_search.hpp"

namespace eprgames {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-9;
constexpr double kClampSlack = 1e-12;

double clamp_corr(double c) {
  if (c < -1 - 1e-9 || c > 1 + 1e-9)
    throw std::domain_error("correlation outside [-1,1]");
  return std::clamp(c, -1.0, 1.0);
}

void append_unique(std::vector<double>& xs, double x) {
  for (double y : xs)
    if (std::abs(x - y) <= kTol) return;
  xs.push_back(x);
}

}  // namespace

CorrelationModel CorrelationModel::classical() {
  return CorrelationModel(CorrelationKind::classical, "classical",
                          [](const Vec3& a, const Vec3& b) {
                            return -1.0 + 2.0 * angle_between(a, b) / kPi;
                          });
}

CorrelationModel CorrelationModel::singlet() {
  return CorrelationModel(CorrelationKind::singlet, "singlet",
                          [](const Vec3& a, const Vec3& b) { return -dot(a, b); });
}

CorrelationModel CorrelationModel::mixture() {
  return CorrelationModel(CorrelationKind::mixture, "mixture",
                          [](const Vec3& a, const Vec3& b) { return -dot(a, b) / 3.0; });
}

CorrelationModel CorrelationModel::custom(PairFn fn, std::string name) {
  return CorrelationModel(CorrelationKind::custom, std::move(name), std::move(fn));
}

CorrelationModel CorrelationModel::by_name(const std::string& name) {
  if (name == "classical") return classical();
  if (name == "singlet") return singlet();
  if (name == "mixture") return mixture();
  throw std::invalid_argument("unknown correlation model: " + name);
}

double CorrelationModel::corr_pair(const Vec3& a, const Vec3& b) const {
  double c = fn_(a, b);
  if (std::abs(c) > 1 + kClampSlack)
    throw std::domain_error("correlation model produced a value outside [-1,1]");
  return std::clamp(c, -1.0, 1.0);
}

double CorrelationModel::corr_vs_z(double theta) const {
  if (theta < -kTol || theta > kPi + kTol)
    throw std::domain_error("angle outside [0,pi]");
  theta = std::clamp(theta, 0.0, kPi);
  switch (kind_) {
    case CorrelationKind::classical:
      return -1.0 + 2.0 * theta / kPi;
    case CorrelationKind::singlet:
      return -std::cos(theta);
    case CorrelationKind::mixture:
      return -std::cos(theta) / 3.0;
    case CorrelationKind::custom:
      return corr_pair(axis_in_plane_a(theta), z_axis());
  }
  return 0.0;
}

std::optional<double> CorrelationModel::angle_for_corr(double corr) const {
  switch (kind_) {
    case CorrelationKind::classical:
      if (corr < -1 - kClampSlack || corr > 1 + kClampSlack) return std::nullopt;
      return kPi / 2 * (1 + std::clamp(corr, -1.0, 1.0));
    case CorrelationKind::singlet:
      if (std::abs(corr) > 1 + kClampSlack) return std::nullopt;
      return std::acos(std::clamp(-corr, -1.0, 1.0));
    case CorrelationKind::mixture:
      if (std::abs(3 * corr) > 1 + kClampSlack) return std::nullopt;
      return std::acos(std::clamp(-3 * corr, -1.0, 1.0));
    case CorrelationKind::custom:
      return std::nullopt;
  }
  return std::nullopt;
}

PayoffPair payoff_from_correlations(const BimatrixGame& game, const GFunction& g,
                                    double corr_ac, double corr_cb) {
  double x = g.big_g(clamp_corr(corr_ac));
  double y = g.big_g(clamp_corr(corr_cb));
  return {game.coeffs_a().eval(x, y), game.coeffs_b().eval(x, y)};
}

PayoffPair payoff_at_angles(const CorrelationGameSpec& spec, double theta_a,
                            double theta_b) {
  return payoff_from_correlations(spec.game, spec.g, spec.model.corr_vs_z(theta_a),
                                  spec.model.corr_vs_z(theta_b));
}

std::vector<double> q_transform_model(const GFunction& g,
                                      const CorrelationModel& model, double p) {
  std::vector<double> out;
  for (double theta : g.inverse_set(p).angles)
    append_unique(out, g.big_g(model.corr_vs_z(theta)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PayoffPair> quantum_payoff(const CorrelationGameSpec& spec,
                                       const MixedProfile& profile) {
  std::vector<double> xs = q_transform_model(spec.g, spec.model, profile.pa);
  std::vector<double> ys = q_transform_model(spec.g, spec.model, profile.pb);
  std::vector<PayoffPair> out;
  for (double x : xs)
    for (double y : ys)
      out.push_back({spec.game.coeffs_a().eval(x, y), spec.game.coeffs_b().eval(x, y)});
  std::sort(out.begin(), out.end(), [](const PayoffPair& p, const PayoffPair& q) {
    return p.a != q.a ? p.a < q.a : p.b < q.b;
  });
  return out;
}

std::vector<double> q_inverse_model(const GFunction& g,
                                    const CorrelationModel& model, double y) {
  std::vector<double> out;
  for (double psi : g.inverse_set(y).angles) {
    // big_g(corr) = y requires corr = 2 psi/pi - 1 for some psi in g^-1(y).
    std::optional<double> theta = model.angle_for_corr(2 * psi / kPi - 1);
    if (theta) append_unique(out, g.eval(*theta));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool has_dominant_defect_ne(const BimatrixGame& game) {
  const BilinearCoeffs a = game.coeffs_a();
  const BilinearCoeffs b = game.coeffs_b();
  // Move 2 strictly dominates move 1 for both players: the move-1 advantage
  // K*y + L (A) resp. K*x + M (B) stays negative over the opponent range.
  return a.l < 0 && a.k + a.l < 0 && b.m < 0 && b.k + b.m < 0;
}

QuantumPureNe quantum_pure_ne(const CorrelationGameSpec& spec, int fallback_grid) {
  QuantumPureNe result;
  if (!has_dominant_defect_ne(spec.game)) {
    result.via_formula = false;
    result.profiles = ne_grid_search(spec, fallback_grid).equilibria;
    return result;
  }
  std::vector<double> values = q_inverse_model(spec.g, spec.model, 0.0);
  if (values.empty())
    throw NoSolutionError("no probability maps to 0 under the transformed game");
  for (double x : values)
    for (double y : values) result.profiles.push_back({x, y});
  std::sort(result.profiles.begin(), result.profiles.end(),
            [](const MixedProfile& p, const MixedProfile& q) {
              return p.pa != q.pa ? p.pa < q.pa : p.pb < q.pb;
            });
  return result;
}

std::vector<MixedProfile> bos_quantum_mixed_ne(double alpha, double beta,
                                               double gamma, const GFunction& g) {
  if (!(alpha > beta && beta > gamma))
    throw std::invalid_argument("BoS requires alpha > beta > gamma");
  double den = alpha + beta - 2 * gamma;
  double pa_star = (alpha - gamma) / den;
  double pb_star = (beta - gamma) / den;
  std::vector<double> xs = g.q_inverse(pa_star);
  std::vector<double> ys = g.q_inverse(pb_star);
  if (xs.empty() || ys.empty())
    throw NoSolutionError("classical mixed equilibrium unreachable under Q_g");
  std::vector<MixedProfile> out;
  for (double x : xs)
    for (double y : ys) out.push_back({x, y});
  std::sort(out.begin(), out.end(), [](const MixedProfile& p, const MixedProfile& q) {
    return p.pa != q.pa ? p.pa < q.pa : p.pb < q.pb;
  });
  return out;
}

double chsh_model(const CorrelationModel& model, const Vec3& a, const Vec3& a_prime,
                  const Vec3& b, const Vec3& b_prime) {
  return model.corr_pair(a, b) + model.corr_pair(a_prime, b_prime) +
         model.corr_pair(a_prime, b) - model.corr_pair(a, b_prime);
}

}  // namespace eprgames
