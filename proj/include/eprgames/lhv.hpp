#pragma once

#include <array>

#include "eprgames/bimatrix.hpp"

namespace eprgames {

/// Cell entries of the four-coin game matrix [[(K,K),(L,M)],[(M,L),(N,N)]].
/// Here K,L,M,N are the payoffs themselves, not bilinear coefficients.
struct GameEntries {
  double k = 0.0, l = 0.0, m = 0.0, n = 0.0;

  /// Prisoners' Dilemma class: M > K > N > L.
  bool pd_class() const { return m > k && k > n && n > l; }

  static GameEntries pd_rep1() { return {3.0, 0.0, 5.0, 1.0}; }
  static GameEntries pd_rep2() { return {3.0, 0.0, 5.0, 0.2}; }
};

/// Strategy pairs in block order: (S1,S1'), (S1,S2'), (S2,S1'), (S2,S2').
enum class StrategyPair { s1s1 = 0, s1s2 = 1, s2s1 = 2, s2s2 = 3 };

/// Joint head/tail statistics of the four coins: 16 probabilities in four
/// blocks of four, block b cell order (H,H),(H,T),(T,H),(T,T). Indexed 0..15
/// here, matching p_1..p_16 in 1-based notation.
struct FourCoinStats {
  std::array<double, 16> p{};

  /// Product-form stats from head probabilities (r, s, r', s') of the four
  /// coins S1, S2, S1', S2'.
  static FourCoinStats product_form(double r, double s, double rp, double sp);
};

struct StatsValidation {
  bool normalized = false;   // each block sums to 1
  bool consistent = false;   // the four cross-block marginal identities hold
  bool nonnegative = false;  // all p_i in [0,1]
  std::array<double, 4> block_residuals{};        // block sum - 1
  std::array<double, 4> consistency_residuals{};  // lhs - rhs per identity
};

StatsValidation validate_stats(const FourCoinStats& stats);

struct HeadProbs {
  double r = 0.0, s = 0.0, rp = 0.0, sp = 0.0;
};

/// r = p1+p2, s = p9+p10, r' = p1+p3, s' = p5+p7.
/// Throws PreconditionError when the consistency identities fail beyond 1e-9.
HeadProbs extract_head_probs(const FourCoinStats& stats);

/// Referee's recipe: P_A = K*p1 + L*p2 + M*p3 + N*p4 over the pair's block;
/// B swaps L and M. Equals the bilinear form at the extracted head
/// probabilities whenever the stats are consistent.
PayoffPair payoff_from_stats(const FourCoinStats& stats, const GameEntries& entries,
                             StrategyPair pair);

/// Signed weights over the 16 deterministic outcome assignments
/// (S1, S1', S2, S2') -> {+1,-1}^4; indexed 0..15 for Lambda_1..Lambda_16.
struct LhvMeasure {
  std::array<double, 16> m{};

  double sum() const;
  bool nonnegative() const;
};

/// Outcome sign of observable `obs` (0:S1, 1:S1', 2:S2, 3:S2') on subset
/// Lambda_{i+1}; the subsets enumerate {+,-}^4 in binary order, + first.
int lhv_sign(int subset, int obs);

/// The 16 joint probabilities induced by a measure; each is a sum of four
/// weights, so the result satisfies the block and consistency identities by
/// construction (though entries may be negative for signed measures).
FourCoinStats lhv_to_stats(const LhvMeasure& measure);

struct PerfectCorrReduction {
  double r = 1.0, rp = 1.0;
  double s = 0.0, sp = 0.0;
  /// m1+m2+m3+m4 == 1, the strict p1=1 branch identity. Always true for
  /// nonnegative measures (enforced); signed measures may break it and are
  /// carried through formally with the flag cleared.
  bool p1_branch_identity = false;
};

/// Perfect-correlation reduction (p2 = p3 = 0 branch with p1 = 1):
/// requires m5..m12 = 0 and a normalized measure; returns
/// s = m1+m2+m13+m14, s' = m1+m3+m13+m15, r = r' = 1.
/// Throws PreconditionError when m5..m12 are nonzero, the measure is not
/// normalized, or a nonnegative measure is not in the p1=1 branch.
PerfectCorrReduction perfect_corr_reduce(const LhvMeasure& measure);

/// The (m1+m2), (m1+m3), (m13+m14), (m13+m15) decomposition of s and s'.
struct SplitInputs {
  double s1 = 0.0, sp1 = 0.0;  // m1+m2, m1+m3
  double s2 = 0.0, sp2 = 0.0;  // m13+m14, m13+m15

  static SplitInputs from_measure(const LhvMeasure& measure);
  double s() const { return s1 + s2; }
  double sp() const { return sp1 + sp2; }
};

struct SplitPayoff {
  double full = 0.0;
  double part_a = 0.0;  // m1..m4-driven part
  double part_b = 0.0;  // m13..m16-driven part; zero when those weights vanish
};

/// Payoffs of all four strategy pairs at the reduced probabilities
/// (r = r' = 1), each split into the part_a + part_b decomposition.
struct CorrelatedPayoffs {
  std::array<SplitPayoff, 4> alice{};  // indexed by StrategyPair
  std::array<SplitPayoff, 4> bob{};
};

CorrelatedPayoffs correlated_payoffs(const GameEntries& entries,
                                     const SplitInputs& in);

/// Delta = C(S1,S1') + C(S2,S2') + C(S2,S1') - C(S1,S2') with
/// C(X,Y) = sum_i m_i * sign_X(i) * sign_Y(i).
double chsh_from_measure(const LhvMeasure& measure);

struct PdNeAnalysis {
  double s2 = 0.0, sp2 = 0.0;  // m13+m14, m13+m15
  /// Payoff change from unilaterally deviating to the first coin (r = r' = 1):
  /// gain_a = (1-s2)*((K-L-M+N)*sp2 + (L-N)) and the mirrored gain_b.
  /// (s2, sp2) survives as an equilibrium iff both gains are <= 0.
  double gain_a = 0.0, gain_b = 0.0;
  bool ne_exists = false;
  /// gain_a + gain_b <= 0; for the N=0.2 representation this is exactly
  /// (1/9)(4(s2+sp2)+1) >= s2*sp2. Necessary for ne_exists; on the
  /// s2 == sp2 diagonal the two conditions coincide.
  bool sum_inequality_holds = false;
  bool displaced = false;  // (s2, sp2) moved off (0,0)
  bool in_range = true;    // |s2| <= 1 and |sp2| <= 1
  PayoffPair payoffs;      // at (S2, S2')
};

/// Equilibrium analysis of a PD representation played on perfectly
/// correlated particles. Requires a normalized measure with m5..m12 = 0 and
/// m1 = m2 = m3 = 0 (the regime where (0,0) is the classical equilibrium).
PdNeAnalysis pd_ne_analysis(const GameEntries& entries, const LhvMeasure& measure);

/// One-parameter family m4 = 1-2x, m13 = m16 = x (rest zero), giving
/// s2 = s2' = x. Negative x realizes the signed regime.
LhvMeasure diagonal_measure_family(double x);

}  // namespace eprgames
