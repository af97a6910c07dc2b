#include "eprgames/gfunction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eprgames {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleTol = 1e-9;  // angle comparison tolerance
constexpr double kSnapTol = 1e-12;

void append_unique(std::vector<double>& xs, double x, double tol) {
  for (double y : xs)
    if (std::abs(x - y) <= tol) return;
  xs.push_back(x);
}

}  // namespace

GFunction GFunction::from_segments(std::vector<GSegment> segments, std::string name) {
  if (segments.empty()) throw std::invalid_argument("g-function needs at least one piece");
  if (std::abs(segments.front().th0) > kSnapTol)
    throw std::invalid_argument("g-function pieces must start at 0");
  if (std::abs(segments.back().th1 - kPi) > kSnapTol)
    throw std::invalid_argument("g-function pieces must end at pi");
  if (!segments.front().closed_left)
    throw std::invalid_argument("first piece must own theta = 0");
  segments.front().th0 = 0.0;
  segments.back().th1 = kPi;
  for (size_t i = 0; i < segments.size(); ++i) {
    GSegment& s = segments[i];
    if (!(s.th1 > s.th0)) throw std::invalid_argument("piece has non-positive width");
    if (i + 1 < segments.size()) {
      if (std::abs(s.th1 - segments[i + 1].th0) > kSnapTol)
        throw std::invalid_argument("pieces must tile [0,pi] without gaps or overlaps");
      segments[i + 1].th0 = s.th1;
    }
    for (double v : {s.v0, s.v1})
      if (v < -kSnapTol || v > 1 + kSnapTol)
        throw std::invalid_argument("piece values must lie in [0,1]");
    s.v0 = std::clamp(s.v0, 0.0, 1.0);
    s.v1 = std::clamp(s.v1, 0.0, 1.0);
  }
  GFunction g;
  g.segments_ = std::move(segments);
  g.name_ = std::move(name);
  return g;
}

GFunction GFunction::builtin(const std::string& name, std::optional<double> delta,
                             std::optional<double> eps) {
  auto need_delta = [&]() {
    if (!delta) throw std::invalid_argument(name + " requires parameter delta");
    if (*delta <= 0.0 || *delta >= 1.0)
      throw std::invalid_argument("delta must lie in (0,1)");
    return *delta;
  };
  auto need_eps = [&]() {
    if (!eps) throw std::invalid_argument(name + " requires parameter eps");
    if (*eps <= 0.0 || *eps >= kPi) throw std::invalid_argument("eps must lie in (0,pi)");
    return *eps;
  };

  std::vector<GSegment> segs;
  if (name == "g1") {
    segs = {{0, kPi, 0, 1, true}};
  } else if (name == "g2") {
    segs = {{0, kPi, 1, 0, true}};
  } else if (name == "g3") {
    double d = need_delta(), e = need_eps();
    segs = {{0, e, d, 0, true}, {e, kPi, d, 1, false}};
  } else if (name == "g4") {
    double d = need_delta();
    segs = {{0, kPi / 2, d, 0, true}, {kPi / 2, kPi, 1, d, false}};
  } else if (name == "g5") {
    double d = need_delta();
    segs = {{0, kPi / 2, d, 1, true}, {kPi / 2, kPi, 0, d, false}};
  } else if (name == "g6") {
    double d = need_delta(), e = need_eps();
    segs = {{0, e, d, 1, true}, {e, kPi, d, 0, false}};
  } else if (name == "g7") {
    double d = need_delta(), e = need_eps();
    segs = {{0, e, 1, d, true}, {e, kPi, 0, d, false}};
  } else if (name == "g8") {
    segs = {{0, kPi / 2, 0, 1, true}, {kPi / 2, kPi, 1, 0, false}};
  } else {
    throw std::invalid_argument("unknown g-function: " + name);
  }
  GFunction g = from_segments(std::move(segs), name);
  g.delta_ = delta;
  g.eps_ = eps;
  return g;
}

GFunction GFunction::parse(const std::string& spec) {
  std::string name = spec;
  std::optional<double> delta, eps;
  auto qpos = spec.find('?');
  if (qpos != std::string::npos) {
    name = spec.substr(0, qpos);
    std::string query = spec.substr(qpos + 1);
    size_t pos = 0;
    while (pos < query.size()) {
      size_t amp = query.find('&', pos);
      std::string kv = query.substr(pos, amp == std::string::npos ? amp : amp - pos);
      pos = amp == std::string::npos ? query.size() : amp + 1;
      auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("bad g-function parameter: " + kv);
      std::string key = kv.substr(0, eq);
      double value = std::stod(kv.substr(eq + 1));
      if (key == "delta")
        delta = value;
      else if (key == "eps")
        eps = value;
      else
        throw std::invalid_argument("unknown g-function parameter: " + key);
    }
  }
  return builtin(name, delta, eps);
}

bool GFunction::owns_right(size_t i) const {
  return i + 1 == segments_.size() || !segments_[i + 1].closed_left;
}

int GFunction::segment_index(double theta) const {
  for (size_t i = 0; i < segments_.size(); ++i) {
    const GSegment& s = segments_[i];
    bool left_ok = theta > s.th0 || (theta == s.th0 && s.closed_left);
    bool right_ok = theta < s.th1 || (theta == s.th1 && owns_right(i));
    if (left_ok && right_ok) return static_cast<int>(i);
  }
  return -1;
}

double GFunction::eval(double theta) const {
  if (theta < -kAngleTol || theta > kPi + kAngleTol)
    throw std::domain_error("g-function argument outside [0,pi]");
  theta = std::clamp(theta, 0.0, kPi);
  int i = segment_index(theta);
  const GSegment& s = segments_[i];
  double t = (theta - s.th0) / (s.th1 - s.th0);
  return s.v0 + t * (s.v1 - s.v0);
}

double GFunction::big_g(double x) const {
  if (x < -1 - kAngleTol || x > 1 + kAngleTol)
    throw std::domain_error("G argument outside [-1,1]");
  x = std::clamp(x, -1.0, 1.0);
  return eval(snap_to_breakpoint(kPi / 2 * (1 + x)));
}

Preimage GFunction::inverse_set(double p) const {
  Preimage out;
  for (size_t i = 0; i < segments_.size(); ++i) {
    const GSegment& s = segments_[i];
    if (s.v0 == s.v1) {
      if (std::abs(p - s.v0) <= kSnapTol) {
        append_unique(out.angles, s.th0, kAngleTol);
        append_unique(out.angles, s.th1, kAngleTol);
        out.non_unique = true;
      }
      continue;
    }
    double t = (p - s.v0) / (s.v1 - s.v0);
    if (t < -kSnapTol || t > 1 + kSnapTol) continue;
    double theta = s.th0 + std::clamp(t, 0.0, 1.0) * (s.th1 - s.th0);
    if (std::abs(theta - s.th0) <= kSnapTol) {
      if (!s.closed_left) continue;
      theta = s.th0;
    } else if (std::abs(theta - s.th1) <= kSnapTol) {
      if (!owns_right(i)) continue;
      theta = s.th1;
    }
    append_unique(out.angles, theta, kAngleTol);
  }
  std::sort(out.angles.begin(), out.angles.end());
  return out;
}

Preimage GFunction::inverse_set_closure(double p) const {
  Preimage out = inverse_set(p);
  for (const GSegment& s : segments_) {
    if (s.v0 == s.v1) continue;
    double t = (p - s.v0) / (s.v1 - s.v0);
    if (t < -kSnapTol || t > 1 + kSnapTol) continue;
    double theta = s.th0 + std::clamp(t, 0.0, 1.0) * (s.th1 - s.th0);
    if (std::abs(theta - s.th0) <= kSnapTol)
      append_unique(out.angles, s.th0, kAngleTol);
    else if (std::abs(theta - s.th1) <= kSnapTol)
      append_unique(out.angles, s.th1, kAngleTol);
  }
  std::sort(out.angles.begin(), out.angles.end());
  return out;
}

double GFunction::snap_to_breakpoint(double theta) const {
  // Composed angle maps (arccos chains) can land a rounding error away from
  // a breakpoint; within the angle tolerance the breakpoint itself is meant.
  for (const GSegment& s : segments_) {
    if (std::abs(theta - s.th0) <= kAngleTol) return s.th0;
    if (std::abs(theta - s.th1) <= kAngleTol) return s.th1;
  }
  return theta;
}

std::vector<double> GFunction::q_transform(double p) const {
  std::vector<double> out;
  for (double theta : inverse_set(p).angles) {
    double x = std::clamp(kPi / 2 * (1 - std::cos(theta)), 0.0, kPi);
    append_unique(out, eval(snap_to_breakpoint(x)), kAngleTol);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> GFunction::q_inverse(double y) const {
  std::vector<double> out;
  for (double psi : inverse_set(y).angles) {
    double c = std::clamp(1 - 2 * psi / kPi, -1.0, 1.0);
    append_unique(out, eval(snap_to_breakpoint(std::acos(c))), kAngleTol);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool GFunction::invertible() const {
  struct ValueSpan {
    double lo, hi;
    bool lo_incl, hi_incl;
    bool attains(double v) const {
      return (v > lo && v < hi) || (v == lo && lo_incl) || (v == hi && hi_incl);
    }
  };
  std::vector<ValueSpan> spans;
  for (size_t i = 0; i < segments_.size(); ++i) {
    const GSegment& s = segments_[i];
    if (s.v0 == s.v1) return false;  // constant over an interval
    bool left_att = s.closed_left;
    bool right_att = owns_right(i);
    ValueSpan span;
    if (s.v0 < s.v1)
      span = {s.v0, s.v1, left_att, right_att};
    else
      span = {s.v1, s.v0, right_att, left_att};
    spans.push_back(span);
  }
  for (size_t i = 0; i < spans.size(); ++i) {
    for (size_t j = i + 1; j < spans.size(); ++j) {
      double lo = std::max(spans[i].lo, spans[j].lo);
      double hi = std::min(spans[i].hi, spans[j].hi);
      if (lo < hi) return false;  // overlap with interior
      if (lo == hi && spans[i].attains(lo) && spans[j].attains(lo)) return false;
    }
  }
  return true;
}

}  // namespace eprgames
