#include "eprgames/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eprgames {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNormTol = 1e-12;
constexpr double kUnitTol = 1e-9;
constexpr double kSepTol = 1e-10;
const Complex kI{0.0, 1.0};

void check_range(double v, double lo, double hi, const char* what) {
  if (v < lo - kUnitTol || v > hi + kUnitTol)
    throw std::domain_error(std::string(what) + " outside its allowed range");
}

}  // namespace

Mat2c ident2() { return {{{1, 0}, {0, 1}}}; }
Mat2c sigma_x() { return {{{0, 1}, {1, 0}}}; }
Mat2c sigma_y() { return {{{0, -kI}, {kI, 0}}}; }
Mat2c sigma_z() { return {{{1, 0}, {0, -1}}}; }

Mat2c spin_along(const Vec3& n) {
  if (std::abs(norm(n) - 1.0) > kUnitTol)
    throw std::domain_error("measurement direction must be a unit vector");
  return {{{n.z, Complex{n.x, -n.y}}, {Complex{n.x, n.y}, -n.z}}};
}

Mat2c mul(const Mat2c& a, const Mat2c& b) {
  Mat2c c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Mat4c mul(const Mat4c& a, const Mat4c& b) {
  Mat4c c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Mat4c dagger(const Mat4c& a) {
  Mat4c c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c[i][j] = std::conj(a[j][i]);
  return c;
}

Mat4c tensor(const Mat2c& a, const Mat2c& b) {
  Mat4c c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) c[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
  return c;
}

Vec4c tensor(const Vec2c& a, const Vec2c& b) {
  return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

Vec2c mul(const Mat2c& a, const Vec2c& v) {
  return {a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]};
}

Vec4c mul(const Mat4c& a, const Vec4c& v) {
  Vec4c out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i] += a[i][j] * v[j];
  return out;
}

bool is_unitary(const Mat2c& a, double tol) {
  Mat2c adag{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) adag[i][j] = std::conj(a[j][i]);
  Mat2c p = mul(adag, a);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (std::abs(p[i][j] - (i == j ? 1.0 : 0.0)) > tol) return false;
  return true;
}

bool is_unitary(const Mat4c& a, double tol) {
  Mat4c p = mul(dagger(a), a);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (std::abs(p[i][j] - (i == j ? 1.0 : 0.0)) > tol) return false;
  return true;
}

double TwoQubitState::squared_norm() const {
  double s = 0.0;
  for (const Complex& c : amp) s += std::norm(c);
  return s;
}

TwoQubitState TwoQubitState::normalized(const Vec4c& amp) {
  TwoQubitState st{amp};
  if (std::abs(st.squared_norm() - 1.0) > kNormTol)
    throw std::invalid_argument("state is not normalized");
  return st;
}

TwoQubitState singlet_state() {
  double inv = 1.0 / std::sqrt(2.0);
  return {{0.0, inv, -inv, 0.0}};
}

bool is_separable(const TwoQubitState& state) {
  Complex det = state.coeff(0, 0) * state.coeff(1, 1) -
                state.coeff(0, 1) * state.coeff(1, 0);
  return std::abs(det) <= kSepTol;
}

double pair_expectation(const TwoQubitState& state, const Vec3& a, const Vec3& b) {
  Mat4c obs = tensor(spin_along(a), spin_along(b));
  Vec4c applied = mul(obs, state.amp);
  Complex expect = 0.0;
  for (int i = 0; i < 4; ++i) expect += std::conj(state.amp[i]) * applied[i];
  return expect.real();
}

double singlet_correlation(const Vec3& a, const Vec3& b) {
  return pair_expectation(singlet_state(), a, b);
}

double benenti_correlation(double c00, double c11, const Vec3& a, const Vec3& b) {
  return a.z * b.z + 2 * c00 * c11 * (a.x * b.x - a.y * b.y);
}

ChshSettings ChshSettings::family(double xb, double zb) {
  return {{1, 0, 0}, {0, 0, 1}, {xb, 0, zb}, {-xb, 0, zb}};
}

double chsh_quantum(double c00, double c11, const ChshSettings& s) {
  if (std::abs(c00 * c00 + c11 * c11 - 1.0) > kUnitTol)
    throw std::domain_error("state coefficients must satisfy c00^2 + c11^2 = 1");
  return benenti_correlation(c00, c11, s.a, s.b) +
         benenti_correlation(c00, c11, s.a_prime, s.b_prime) +
         benenti_correlation(c00, c11, s.a_prime, s.b) -
         benenti_correlation(c00, c11, s.a, s.b_prime);
}

double chsh_quantum_operator(double c00, double c11, const ChshSettings& s) {
  if (std::abs(c00 * c00 + c11 * c11 - 1.0) > kUnitTol)
    throw std::domain_error("state coefficients must satisfy c00^2 + c11^2 = 1");
  TwoQubitState state{{c00, 0.0, 0.0, c11}};
  return pair_expectation(state, s.a, s.b) +
         pair_expectation(state, s.a_prime, s.b_prime) +
         pair_expectation(state, s.a_prime, s.b) -
         pair_expectation(state, s.a, s.b_prime);
}

double meyer_q_win_probability(double picard_flip_prob) {
  check_range(picard_flip_prob, 0, 1, "flip probability");
  double f = std::clamp(picard_flip_prob, 0.0, 1.0);
  double inv = 1.0 / std::sqrt(2.0);
  Mat2c h{{{inv, inv}, {inv, -inv}}};
  Vec2c start{1.0, 0.0};
  double win = 0.0;
  const Mat2c picard[2] = {ident2(), sigma_x()};
  const double weight[2] = {1 - f, f};
  for (int k = 0; k < 2; ++k) {
    Vec2c v = mul(h, mul(picard[k], mul(h, start)));
    win += weight[k] * std::norm(v[0]);
  }
  return win;
}

double meyer_classical_q_win_probability(double picard_flip_prob) {
  check_range(picard_flip_prob, 0, 1, "flip probability");
  double f = std::clamp(picard_flip_prob, 0.0, 1.0);
  const Mat2c moves[2] = {ident2(), sigma_x()};
  const double picard_w[2] = {1 - f, f};
  Vec2c start{1.0, 0.0};
  double win = 0.0;
  for (int q1 = 0; q1 < 2; ++q1)
    for (int k = 0; k < 2; ++k)
      for (int q2 = 0; q2 < 2; ++q2) {
        Vec2c v = mul(moves[q2], mul(moves[k], mul(moves[q1], start)));
        win += 0.25 * picard_w[k] * std::norm(v[0]);
      }
  return win;
}

Mat2c eisert_u(double theta, double phi) {
  check_range(theta, 0, kPi, "theta");
  check_range(phi, 0, kPi / 2, "phi");
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {{{std::exp(kI * phi) * c, s}, {-s, std::exp(-kI * phi) * c}}};
}

Mat4c eisert_j(double gamma) {
  check_range(gamma, 0, kPi / 2, "gamma");
  // D x D squares to the identity, so the exponential closes after one term.
  Mat4c dd = tensor(eisert_u(kPi, 0), eisert_u(kPi, 0));
  Mat4c j{};
  double c = std::cos(gamma / 2), s = std::sin(gamma / 2);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) j[i][k] = (i == k ? c : 0.0) + kI * s * dd[i][k];
  return j;
}

PayoffPair eisert_payoff(double r, double s, double t, double u, double theta_a,
                         double phi_a, double theta_b, double phi_b, double gamma) {
  Mat4c j = eisert_j(gamma);
  Mat4c moves = tensor(eisert_u(theta_a, phi_a), eisert_u(theta_b, phi_b));
  Vec4c fin = mul(dagger(j), mul(moves, mul(j, Vec4c{1.0, 0.0, 0.0, 0.0})));
  double w[4];
  for (int i = 0; i < 4; ++i) w[i] = std::norm(fin[i]);
  return {r * w[0] + s * w[1] + t * w[2] + u * w[3],
          r * w[0] + t * w[1] + s * w[2] + u * w[3]};
}

}  // namespace eprgames
