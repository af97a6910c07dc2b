#pragma once

#include <optional>
#include <string>
#include <vector>

namespace eprgames {

/// One linear piece of a strategy-to-probability map. The segment covers
/// [th0, th1] with values running linearly from v0 to v1; closed_left says
/// whether th0 itself belongs to this piece. Right-endpoint ownership is
/// derived: a piece owns its right endpoint iff it is the last piece or the
/// next piece does not own its left endpoint.
struct GSegment {
  double th0 = 0.0;
  double th1 = 0.0;
  double v0 = 0.0;
  double v1 = 0.0;
  bool closed_left = true;
};

/// Set of angles solving g(theta) = p. `non_unique` marks that a constant
/// segment was hit, in which case the segment's two endpoints stand in for
/// the whole interval of solutions.
struct Preimage {
  std::vector<double> angles;
  bool non_unique = false;
};

/// Piecewise-linear map g : [0,pi] -> [0,1] tying a chosen direction angle to
/// the probability of playing the identity move.
class GFunction {
 public:
  /// Segments must tile [0,pi] with values inside [0,1].
  /// Throws std::invalid_argument on gaps, overlaps or range violations.
  static GFunction from_segments(std::vector<GSegment> segments,
                                 std::string name = "custom");

  /// Built-ins g1..g8. g3, g6, g7 take (delta, eps); g4, g5 take delta only;
  /// g1, g2, g8 take no parameters. delta must lie in (0,1), eps in (0,pi).
  static GFunction builtin(const std::string& name,
                           std::optional<double> delta = std::nullopt,
                           std::optional<double> eps = std::nullopt);

  /// Parses "g3?delta=0.5&eps=0.7853981634" style addresses.
  static GFunction parse(const std::string& spec);

  const std::string& name() const { return name_; }
  const std::vector<GSegment>& segments() const { return segments_; }
  std::optional<double> delta() const { return delta_; }
  std::optional<double> eps() const { return eps_; }

  /// Value at theta; at a breakpoint the owning piece decides.
  /// Throws std::domain_error outside [0,pi] (beyond a 1e-9 slack).
  double eval(double theta) const;

  /// G(x) = g(pi/2 * (1+x)) for x in [-1,1].
  double big_g(double x) const;

  /// All theta with g(theta) = p, honoring endpoint ownership.
  Preimage inverse_set(double p) const;

  /// Like inverse_set but also admits values attained only in the limit at an
  /// unowned segment endpoint (the closure of the graph). Needed where a
  /// discontinuous g reaches a value "from one side" only.
  Preimage inverse_set_closure(double p) const;

  /// Q_g(p) candidates: { g(pi/2*(1-cos theta)) : theta in g^-1(p) },
  /// sorted and deduplicated. Empty when p is not attained.
  std::vector<double> q_transform(double p) const;

  /// All p with Q_g(p) = y: { g(arccos(1 - 2 psi/pi)) : psi in g^-1(y) },
  /// sorted and deduplicated. Multi-valued for non-invertible g.
  std::vector<double> q_inverse(double y) const;

  /// True iff g is injective over [0,pi] under the literal endpoint ownership.
  bool invertible() const;

 private:
  GFunction() = default;

  bool owns_right(size_t i) const;
  int segment_index(double theta) const;
  double snap_to_breakpoint(double theta) const;

  std::vector<GSegment> segments_;
  std::string name_;
  std::optional<double> delta_;
  std::optional<double> eps_;
};

}  // namespace eprgames
