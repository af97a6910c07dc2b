#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eprgames/bimatrix.hpp"
#include "eprgames/gfunction.hpp"
#include "eprgames/vec3.hpp"

namespace eprgames {

enum class CorrelationKind { classical, singlet, mixture, custom };

/// Outcome-correlation rule for a pair of measurement axes on one shared
/// anti-correlated pair. Values lie in [-1,1].
///
///   classical : -1 + 2*angle(a,b)/pi   (sphere sign model)
///   singlet   : -a.b
///   mixture   : -(1/3) a.b             (isotropic product-state mixture)
class CorrelationModel {
 public:
  using PairFn = std::function<double(const Vec3&, const Vec3&)>;

  static CorrelationModel classical();
  static CorrelationModel singlet();
  static CorrelationModel mixture();
  static CorrelationModel custom(PairFn fn, std::string name = "custom");

  static CorrelationModel by_name(const std::string& name);

  CorrelationKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  /// Correlation between two measurement axes (unit vectors).
  double corr_pair(const Vec3& a, const Vec3& b) const;

  /// Correlation of an axis at angle theta from z against the z axis itself.
  /// The built-in models depend on the angle only; custom models are probed
  /// in Alice's x-z plane. Throws std::domain_error outside [0,pi].
  double corr_vs_z(double theta) const;

  /// Inverts corr_vs_z: angle whose z-correlation equals corr, when one
  /// exists. Unsupported (nullopt) for custom models.
  std::optional<double> angle_for_corr(double corr) const;

 private:
  CorrelationModel(CorrelationKind kind, std::string name, PairFn fn)
      : kind_(kind), name_(std::move(name)), fn_(std::move(fn)) {}

  CorrelationKind kind_;
  std::string name_;
  PairFn fn_;
};

/// A correlation game: payoffs of `game` re-expressed through measured
/// correlations via `g`, played on input pairs described by `model`.
struct CorrelationGameSpec {
  BimatrixGame game;
  GFunction g;
  CorrelationModel model;
};

/// Payoff relations in correlation form: bilinear in G(<ac>), G(<cb>).
/// For symmetric games B's value equals A's with L and M swapped.
PayoffPair payoff_from_correlations(const BimatrixGame& game, const GFunction& g,
                                    double corr_ac, double corr_cb);

/// Direction-first payoff: correlations taken from the model at the chosen
/// angles. Works for non-invertible g.
PayoffPair payoff_at_angles(const CorrelationGameSpec& spec, double theta_a,
                            double theta_b);

/// Effective substitution p -> G(model correlation at g^-1(p)); the
/// singlet model reproduces Q_g. Set-valued when g is non-invertible,
/// empty when p is not attained by g.
std::vector<double> q_transform_model(const GFunction& g,
                                      const CorrelationModel& model, double p);

/// Payoffs with each probability pushed through q_transform_model;
/// one entry per combination of branch choices, sorted by (a, b).
std::vector<PayoffPair> quantum_payoff(const CorrelationGameSpec& spec,
                                       const MixedProfile& profile);

/// All p with the model-transformed probability equal to y, i.e. the
/// solutions of big_g(corr_vs_z(g^-1(p))) = y. For the singlet model this is
/// Q_g^-1(y) = { g(arccos(1 - 2 psi/pi)) : psi in g^-1(y) }.
std::vector<double> q_inverse_model(const GFunction& g,
                                    const CorrelationModel& model, double y);

struct QuantumPureNe {
  std::vector<MixedProfile> profiles;  // sorted by (pa, pb)
  bool via_formula = true;
};

/// New location(s) of the dominant-strategy equilibrium at (0,0):
/// componentwise q_inverse_model at 0 (for the singlet model the paper's
/// g(arccos(1 - (2/pi) g^-1(0)))). Requires the classical game to have (0,0)
/// as its strictly dominant equilibrium; falls back to a grid scan otherwise
/// (via_formula = false). Throws NoSolutionError when no probability maps
/// to 0.
QuantumPureNe quantum_pure_ne(const CorrelationGameSpec& spec, int fallback_grid = 1001);

/// Classical game has a strictly dominant NE at (0,0): K*y+L < 0 for both
/// players over the whole opponent range.
bool has_dominant_defect_ne(const BimatrixGame& game);

/// BoS mixed equilibrium pushed through Q_g^-1 componentwise. Requires
/// alpha > beta > gamma. Set-valued (bifurcation) for non-invertible g.
std::vector<MixedProfile> bos_quantum_mixed_ne(double alpha, double beta,
                                               double gamma, const GFunction& g);

/// CHSH combination C(a,b)+C(a',b')+C(a',b)-C(a,b') under a correlation model.
double chsh_model(const CorrelationModel& model, const Vec3& a, const Vec3& a_prime,
                  const Vec3& b, const Vec3& b_prime);

}  // namespace eprgames
