// Independent reference implementations used to pin expected values. These
// deliberately avoid the library's own code paths.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

// Exhaustive 2x2 pure Nash check straight off the cells.
struct Cell {
  double a, b;
};
using Cells = std::array<std::array<Cell, 2>, 2>;

inline std::vector<std::pair<int, int>> pure_nash(const Cells& c, double tol = 1e-9) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (c[1 - i][j].a <= c[i][j].a + tol && c[i][1 - j].b <= c[i][j].b + tol)
        out.push_back({i, j});
  return out;
}

// Expected payoff by direct cell averaging (no bilinear-coefficient detour).
inline std::pair<double, double> mixed_payoff(const Cells& c, double pa, double pb) {
  double w[2][2] = {{pa * pb, pa * (1 - pb)}, {(1 - pa) * pb, (1 - pa) * (1 - pb)}};
  double a = 0, b = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      a += w[i][j] * c[i][j].a;
      b += w[i][j] * c[i][j].b;
    }
  return {a, b};
}

// No unilateral deviation over a dense grid improves either payoff.
inline bool is_equilibrium(const std::function<std::pair<double, double>(double, double)>& payoff,
                           double pa, double pb, int grid = 1001, double tol = 1e-9) {
  auto [base_a, base_b] = payoff(pa, pb);
  for (int i = 0; i < grid; ++i) {
    double p = double(i) / (grid - 1);
    if (payoff(p, pb).first > base_a + tol) return false;
    if (payoff(pa, p).second > base_b + tol) return false;
  }
  return true;
}

// All preimages of p under f on [0,pi] by dense scan plus bisection to the
// crossing; constant stretches report their endpoints.
inline std::vector<double> scan_preimages(const std::function<double(double)>& f,
                                          double p, int scan = 200000,
                                          double tol = 1e-10) {
  const double pi = 3.14159265358979323846;
  std::vector<double> out;
  auto push = [&](double x) {
    for (double y : out)
      if (std::abs(x - y) < 1e-7) return;
    out.push_back(x);
  };
  double prev_x = 0.0, prev_d = f(0.0) - p;
  if (std::abs(prev_d) <= tol) push(0.0);
  for (int i = 1; i <= scan; ++i) {
    double x = pi * i / scan;
    double d = f(x) - p;
    if (std::abs(d) <= tol) {
      push(x);
    } else if (prev_d != 0 && ((prev_d < 0) != (d < 0)) && std::abs(prev_d) > tol) {
      double lo = prev_x, hi = x, dlo = prev_d;
      for (int it = 0; it < 80; ++it) {
        double mid = (lo + hi) / 2, dm = f(mid) - p;
        if (dm == 0) {
          lo = hi = mid;
          break;
        }
        if ((dm < 0) == (dlo < 0)) {
          lo = mid;
          dlo = dm;
        } else {
          hi = mid;
        }
      }
      // only a genuine crossing (continuous there) counts
      double root = (lo + hi) / 2;
      if (std::abs(f(root) - p) <= 1e-7) push(root);
    }
    prev_x = x;
    prev_d = d;
  }
  return out;
}

// 4x4 matrix helpers with their own arithmetic, for the entangled-game oracle.
using C = std::complex<double>;
using M4 = std::array<std::array<C, 4>, 4>;
using V4 = std::array<C, 4>;

inline M4 m4_mul(const M4& x, const M4& y) {
  M4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      C s = 0;
      for (int k = 0; k < 4; ++k) s += x[i][k] * y[k][j];
      r[i][j] = s;
    }
  return r;
}

inline V4 m4_vec(const M4& x, const V4& v) {
  V4 r{};
  for (int i = 0; i < 4; ++i) {
    C s = 0;
    for (int k = 0; k < 4; ++k) s += x[i][k] * v[k];
    r[i] = s;
  }
  return r;
}

inline M4 m4_dagger(const M4& x) {
  M4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = std::conj(x[j][i]);
  return r;
}

// exp(A) by scaled Taylor series.
inline M4 m4_exp(const M4& a) {
  M4 r{};
  for (int i = 0; i < 4; ++i) r[i][i] = 1;
  M4 term = r;
  for (int k = 1; k <= 40; ++k) {
    term = m4_mul(term, a);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) term[i][j] /= double(k);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r[i][j] += term[i][j];
  }
  return r;
}

inline M4 kron2(const std::array<std::array<C, 2>, 2>& x,
                const std::array<std::array<C, 2>, 2>& y) {
  M4 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) r[2 * i + k][2 * j + l] = x[i][j] * y[k][l];
  return r;
}

// Eisert-style payoff through the series-exponential route.
inline std::pair<double, double> eisert_reference(double r, double s, double t,
                                                  double u, double ta, double fa,
                                                  double tb, double fb, double gamma) {
  const C I{0, 1};
  auto U = [&](double th, double ph) {
    std::array<std::array<C, 2>, 2> m;
    m[0][0] = std::exp(I * ph) * std::cos(th / 2);
    m[0][1] = std::sin(th / 2);
    m[1][0] = -std::sin(th / 2);
    m[1][1] = std::exp(-I * ph) * std::cos(th / 2);
    return m;
  };
  M4 dd = kron2(U(3.14159265358979323846, 0), U(3.14159265358979323846, 0));
  M4 arg{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) arg[i][j] = I * (gamma / 2) * dd[i][j];
  M4 J = m4_exp(arg);
  V4 fin = m4_vec(m4_dagger(J), m4_vec(kron2(U(ta, fa), U(tb, fb)), m4_vec(J, {1, 0, 0, 0})));
  double w[4];
  for (int i = 0; i < 4; ++i) w[i] = std::norm(fin[i]);
  return {r * w[0] + s * w[1] + t * w[2] + u * w[3],
          r * w[0] + t * w[1] + s * w[2] + u * w[3]};
}

}  // namespace oracle
