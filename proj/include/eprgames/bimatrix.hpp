#pragma once

#include <array>
#include <string>
#include <vector>

namespace eprgames {

struct PayoffPair {
  double a = 0.0;
  double b = 0.0;
};

/// Mixed strategy profile: probability of playing the first move (row/column 1).
struct MixedProfile {
  double pa = 0.0;
  double pb = 0.0;
};

struct CellRef {
  int row = 0;
  int col = 0;
  friend bool operator==(const CellRef&, const CellRef&) = default;
};

/// Coefficients of the bilinear payoff K*x*y + L*x + M*y + N, where x is the
/// owner's probability of move 1 and y the opponent's.
struct BilinearCoeffs {
  double k = 0.0, l = 0.0, m = 0.0, n = 0.0;
  double eval(double x, double y) const { return k * x * y + l * x + m * y + n; }
};

/// Inverts r=K+L+M+N, s=L+N, t=M+N, u=N for the cells of a symmetric game
/// (r,s,t,u) = row-player payoffs read row-wise.
BilinearCoeffs coeffs_from_cells(double r, double s, double t, double u);

struct PureNash {
  CellRef cell;
  bool strict = false;
};

struct MixedNashResult {
  std::vector<MixedProfile> profiles;  // pure NE as corner profiles, then interior
  bool continuum = false;              // some player is indifferent everywhere
};

/// A 2x2 bimatrix game. Rows belong to player A, columns to player B; the
/// `cells` view stores per-cell payoff pairs while `coeffs_a`/`coeffs_b`
/// expose the derived bilinear-form view (the two views coincide only through
/// the corner identities, and some sources use the same letters K,L,M,N for
/// cell entries -- see lhv.hpp's GameEntries for that convention).
class BimatrixGame {
 public:
  using Cells = std::array<std::array<PayoffPair, 2>, 2>;

  BimatrixGame(const Cells& cells,
               std::array<std::string, 2> row_labels = {"1", "2"},
               std::array<std::string, 2> col_labels = {"1", "2"});

  /// Symmetric game from row-player cells (r,s,t,u):
  /// [[(r,r),(s,t)],[(t,s),(u,u)]].
  static BimatrixGame symmetric(double r, double s, double t, double u,
                                std::array<std::string, 2> labels = {"1", "2"});

  /// Built-ins: "pd1", "pd2", "matching-pennies", "bos", "model-of-entry".
  /// Throws std::invalid_argument for unknown names.
  static BimatrixGame named(const std::string& name);
  static std::vector<std::string> builtin_names();

  const Cells& cells() const { return cells_; }
  const PayoffPair& cell(CellRef c) const { return cells_[c.row][c.col]; }
  const std::string& row_label(int r) const { return row_labels_[r]; }
  const std::string& col_label(int c) const { return col_labels_[c]; }

  /// Bilinear coefficients in each player's own payoffs; eval(pa, pb) for A
  /// and eval(pa, pb) for B (B's x-variable is still pa).
  BilinearCoeffs coeffs_a() const;
  BilinearCoeffs coeffs_b() const;

  /// P_A(i,j) == P_B(j,i) for all cells.
  bool symmetric_payoffs() const;

  /// Expected payoffs under a mixed profile; exact at corner profiles.
  /// Throws std::domain_error if a probability is outside [0,1].
  PayoffPair payoff(const MixedProfile& profile) const;

  /// All cells where neither player gains by a unilateral switch (weak NE);
  /// strict is set when both inequalities are strict.
  std::vector<PureNash> pure_nash() const;

  /// Closed-form 2x2 equilibria: all pure NE as corner profiles plus the
  /// interior indifference point when it lies in (0,1)^2.
  MixedNashResult mixed_nash() const;

  bool pareto_optimal(CellRef cell) const;

 private:
  Cells cells_;
  std::array<std::string, 2> row_labels_;
  std::array<std::string, 2> col_labels_;
};

}  // namespace eprgames
