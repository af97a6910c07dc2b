#include "eprgames/bimatrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eprgames {

namespace {

constexpr double kNashTol = 1e-9;   // deviations may not improve beyond this
constexpr double kProbSlack = 1e-12;

BilinearCoeffs coeffs_from_entries(double e11, double e12, double e21, double e22) {
  return {e11 - e12 - e21 + e22, e12 - e22, e21 - e22, e22};
}

}  // namespace

BilinearCoeffs coeffs_from_cells(double r, double s, double t, double u) {
  return coeffs_from_entries(r, s, t, u);
}

BimatrixGame::BimatrixGame(const Cells& cells, std::array<std::string, 2> row_labels,
                           std::array<std::string, 2> col_labels)
    : cells_(cells), row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)) {}

BimatrixGame BimatrixGame::symmetric(double r, double s, double t, double u,
                                     std::array<std::string, 2> labels) {
  Cells c{{{{{r, r}, {s, t}}}, {{{t, s}, {u, u}}}}};
  return BimatrixGame(c, labels, labels);
}

BimatrixGame BimatrixGame::named(const std::string& name) {
  if (name == "pd1") return symmetric(3, 0, 5, 1, {"C", "D"});
  if (name == "pd2") return symmetric(3, 0, 5, 0.2, {"C", "D"});
  if (name == "matching-pennies") {
    Cells c{{{{{-1, 1}, {1, -1}}}, {{{1, -1}, {-1, 1}}}}};
    return BimatrixGame(c, {"H", "T"}, {"H", "T"});
  }
  if (name == "bos") {
    // alpha > beta > gamma; numeric values are this library's defaults.
    const double alpha = 2, beta = 1, gamma = 0;
    Cells c{{{{{alpha, beta}, {gamma, gamma}}}, {{{gamma, gamma}, {beta, alpha}}}}};
    return BimatrixGame(c, {"I", "S"}, {"I", "S"});
  }
  if (name == "model-of-entry") {
    Cells c{{{{{2, 0}, {-1, -1}}}, {{{2, 0}, {1, 1}}}}};
    return BimatrixGame(c, {"Fight", "Accommodate"}, {"Out", "In"});
  }
  throw std::invalid_argument("unknown game name: " + name);
}

std::vector<std::string> BimatrixGame::builtin_names() {
  return {"pd1", "pd2", "matching-pennies", "bos", "model-of-entry"};
}

BilinearCoeffs BimatrixGame::coeffs_a() const {
  return coeffs_from_entries(cells_[0][0].a, cells_[0][1].a, cells_[1][0].a,
                             cells_[1][1].a);
}

BilinearCoeffs BimatrixGame::coeffs_b() const {
  // In B's bilinear form the L-slot multiplies pa and the M-slot pb.
  return coeffs_from_entries(cells_[0][0].b, cells_[0][1].b, cells_[1][0].b,
                             cells_[1][1].b);
}

bool BimatrixGame::symmetric_payoffs() const {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (cells_[i][j].a != cells_[j][i].b) return false;
  return true;
}

PayoffPair BimatrixGame::payoff(const MixedProfile& profile) const {
  double pa = profile.pa, pb = profile.pb;
  if (pa < -kProbSlack || pa > 1 + kProbSlack || pb < -kProbSlack || pb > 1 + kProbSlack)
    throw std::domain_error("mixed profile probabilities must lie in [0,1]");
  pa = std::clamp(pa, 0.0, 1.0);
  pb = std::clamp(pb, 0.0, 1.0);
  return {coeffs_a().eval(pa, pb), coeffs_b().eval(pa, pb)};
}

std::vector<PureNash> BimatrixGame::pure_nash() const {
  std::vector<PureNash> out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      double a_gain = cells_[1 - i][j].a - cells_[i][j].a;
      double b_gain = cells_[i][1 - j].b - cells_[i][j].b;
      if (a_gain <= kNashTol && b_gain <= kNashTol)
        out.push_back({{i, j}, a_gain < -kNashTol && b_gain < -kNashTol});
    }
  }
  return out;
}

MixedNashResult BimatrixGame::mixed_nash() const {
  MixedNashResult result;
  for (const PureNash& ne : pure_nash())
    result.profiles.push_back({ne.cell.row == 0 ? 1.0 : 0.0, ne.cell.col == 0 ? 1.0 : 0.0});

  // A is indifferent when Ka*pb + La = 0, B when Kb*pa + Mb = 0.
  const BilinearCoeffs ca = coeffs_a();
  const BilinearCoeffs cb = coeffs_b();
  if (ca.k == 0.0 && ca.l == 0.0) result.continuum = true;
  if (cb.k == 0.0 && cb.m == 0.0) result.continuum = true;
  if (!result.continuum && ca.k != 0.0 && cb.k != 0.0) {
    double pb_star = -ca.l / ca.k;
    double pa_star = -cb.m / cb.k;
    if (pa_star > 0.0 && pa_star < 1.0 && pb_star > 0.0 && pb_star < 1.0)
      result.profiles.push_back({pa_star, pb_star});
  }

  std::sort(result.profiles.begin(), result.profiles.end(),
            [](const MixedProfile& x, const MixedProfile& y) {
              return x.pa != y.pa ? x.pa < y.pa : x.pb < y.pb;
            });
  return result;
}

bool BimatrixGame::pareto_optimal(CellRef cell) const {
  const PayoffPair& at = cells_[cell.row][cell.col];
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (i == cell.row && j == cell.col) continue;
      const PayoffPair& other = cells_[i][j];
      bool weakly_better = other.a >= at.a && other.b >= at.b;
      bool strictly_better = other.a > at.a || other.b > at.b;
      if (weakly_better && strictly_better) return false;
    }
  }
  return true;
}

}  // namespace eprgames
