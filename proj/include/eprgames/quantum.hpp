#pragma once

#include <array>
#include <complex>

#include "eprgames/bimatrix.hpp"
#include "eprgames/vec3.hpp"

namespace eprgames {

using Complex = std::complex<double>;
using Vec2c = std::array<Complex, 2>;
using Vec4c = std::array<Complex, 4>;
using Mat2c = std::array<std::array<Complex, 2>, 2>;
using Mat4c = std::array<std::array<Complex, 4>, 4>;

Mat2c ident2();
Mat2c sigma_x();
Mat2c sigma_y();
Mat2c sigma_z();

/// sigma . n for a unit vector n. Throws std::domain_error when |n| deviates
/// from 1 by more than 1e-9.
Mat2c spin_along(const Vec3& n);

Mat2c mul(const Mat2c& a, const Mat2c& b);
Mat4c mul(const Mat4c& a, const Mat4c& b);
Mat4c dagger(const Mat4c& a);
Mat4c tensor(const Mat2c& a, const Mat2c& b);
Vec4c tensor(const Vec2c& a, const Vec2c& b);
Vec2c mul(const Mat2c& a, const Vec2c& v);
Vec4c mul(const Mat4c& a, const Vec4c& v);
bool is_unitary(const Mat2c& a, double tol = 1e-12);
bool is_unitary(const Mat4c& a, double tol = 1e-12);

/// Two-qubit pure state, amplitudes in basis order |00>,|01>,|10>,|11>.
struct TwoQubitState {
  Vec4c amp{};

  double squared_norm() const;
  Complex coeff(int i, int j) const { return amp[2 * i + j]; }

  /// Validates normalization to 1e-12; throws std::invalid_argument.
  static TwoQubitState normalized(const Vec4c& amp);
};

/// (|01> - |10>)/sqrt(2).
TwoQubitState singlet_state();

/// Product state test: rank of the 2x2 coefficient matrix is 1, i.e.
/// |c00*c11 - c01*c10| <= 1e-10.
bool is_separable(const TwoQubitState& state);

/// <psi| (sigma.a) x (sigma.b) |psi>; imaginary part is discarded (it
/// vanishes for Hermitian observables).
double pair_expectation(const TwoQubitState& state, const Vec3& a, const Vec3& b);

/// Correlation of spin measurements on the singlet, computed through the
/// operator expectation (equals -a.b).
double singlet_correlation(const Vec3& a, const Vec3& b);

/// Correlation on c00|00> + c11|11> (c00, c11 real, c00^2+c11^2 = 1):
/// z_a z_b + 2 c00 c11 (x_a x_b - y_a y_b).
double benenti_correlation(double c00, double c11, const Vec3& a, const Vec3& b);

struct ChshSettings {
  Vec3 a, a_prime, b, b_prime;

  /// a=(1,0,0), a'=(0,0,1), b=(xb,0,zb), b'=(-xb,0,zb); xb^2+zb^2 must be 1.
  static ChshSettings family(double xb, double zb);
};

/// Delta = C(a,b) + C(a',b') + C(a',b) - C(a,b') on c00|00> + c11|11>,
/// via the closed-form correlation. Throws std::domain_error when
/// c00^2 + c11^2 deviates from 1.
double chsh_quantum(double c00, double c11, const ChshSettings& settings);

/// Same combination evaluated through full operator expectations.
double chsh_quantum_operator(double c00, double c11, const ChshSettings& settings);

/// Penny-flip with Q playing Hadamard twice around Picard's mixed flip:
/// probability that the final measurement shows heads (always 1).
double meyer_q_win_probability(double picard_flip_prob);

/// Q restricted to flipping or not with probability 1/2 each: heads
/// probability of the resulting classical chain (always 1/2).
double meyer_classical_q_win_probability(double picard_flip_prob);

/// U(theta, phi) = [[e^{i phi} cos(theta/2), sin(theta/2)],
///                  [-sin(theta/2), e^{-i phi} cos(theta/2)]].
/// theta in [0,pi], phi in [0,pi/2].
Mat2c eisert_u(double theta, double phi);

/// Entangling operator J = exp(i gamma D x D / 2) with D = U(pi, 0).
Mat4c eisert_j(double gamma);

/// Payoffs of the entangled 2x2 game: |psi_fin> = J^dag (U_A x U_B) J |00>,
/// projections weighted by the cells (r,s,t,u); Bob swaps s and t.
/// gamma in [0,pi/2]. Throws std::domain_error on out-of-range parameters.
PayoffPair eisert_payoff(double r, double s, double t, double u, double theta_a,
                         double phi_a, double theta_b, double phi_b, double gamma);

}  // namespace eprgames
