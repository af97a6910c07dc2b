#include "eprgames/lhv.hpp"

#include <cmath>
#include <string>

#include "eprgames/errors.hpp"

namespace eprgames {

namespace {

constexpr double kZeroTol = 1e-12;       // "= 0" preconditions
constexpr double kConsistencyTol = 1e-9; // extract_head_probs gate

// Observable column order (S1, S1', S2, S2') for a strategy pair index.
constexpr int kPairObsA[4] = {0, 0, 2, 2};
constexpr int kPairObsB[4] = {1, 3, 1, 3};

double block_sum(const FourCoinStats& st, int block) {
  return st.p[4 * block] + st.p[4 * block + 1] + st.p[4 * block + 2] +
         st.p[4 * block + 3];
}

}  // namespace

int lhv_sign(int subset, int obs) {
  return ((subset >> (3 - obs)) & 1) ? -1 : 1;
}

FourCoinStats FourCoinStats::product_form(double r, double s, double rp, double sp) {
  FourCoinStats st;
  const double row[2] = {r, s};
  const double col[2] = {rp, sp};
  for (int br = 0; br < 2; ++br) {
    for (int bc = 0; bc < 2; ++bc) {
      int b = 4 * (2 * br + bc);
      st.p[b + 0] = row[br] * col[bc];
      st.p[b + 1] = row[br] * (1 - col[bc]);
      st.p[b + 2] = (1 - row[br]) * col[bc];
      st.p[b + 3] = (1 - row[br]) * (1 - col[bc]);
    }
  }
  return st;
}

StatsValidation validate_stats(const FourCoinStats& stats) {
  StatsValidation v;
  v.normalized = true;
  for (int b = 0; b < 4; ++b) {
    v.block_residuals[b] = block_sum(stats, b) - 1.0;
    if (std::abs(v.block_residuals[b]) > kConsistencyTol) v.normalized = false;
  }
  const double lhs[4] = {stats.p[0] + stats.p[1], stats.p[0] + stats.p[2],
                         stats.p[8] + stats.p[9], stats.p[4] + stats.p[6]};
  const double rhs[4] = {stats.p[4] + stats.p[5], stats.p[8] + stats.p[10],
                         stats.p[12] + stats.p[13], stats.p[12] + stats.p[14]};
  v.consistent = true;
  for (int i = 0; i < 4; ++i) {
    v.consistency_residuals[i] = lhs[i] - rhs[i];
    if (std::abs(v.consistency_residuals[i]) > kConsistencyTol) v.consistent = false;
  }
  v.nonnegative = true;
  for (double p : stats.p)
    if (p < -kZeroTol || p > 1 + kZeroTol) v.nonnegative = false;
  return v;
}

HeadProbs extract_head_probs(const FourCoinStats& stats) {
  StatsValidation v = validate_stats(stats);
  if (!v.consistent) {
    std::string msg = "stats violate the marginal consistency relations; residuals:";
    for (double r : v.consistency_residuals) msg += " " + std::to_string(r);
    throw PreconditionError(msg);
  }
  return {stats.p[0] + stats.p[1], stats.p[8] + stats.p[9], stats.p[0] + stats.p[2],
          stats.p[4] + stats.p[6]};
}

PayoffPair payoff_from_stats(const FourCoinStats& stats, const GameEntries& entries,
                             StrategyPair pair) {
  int b = 4 * static_cast<int>(pair);
  double a = entries.k * stats.p[b] + entries.l * stats.p[b + 1] +
             entries.m * stats.p[b + 2] + entries.n * stats.p[b + 3];
  double bb = entries.k * stats.p[b] + entries.m * stats.p[b + 1] +
              entries.l * stats.p[b + 2] + entries.n * stats.p[b + 3];
  return {a, bb};
}

double LhvMeasure::sum() const {
  double s = 0.0;
  for (double x : m) s += x;
  return s;
}

bool LhvMeasure::nonnegative() const {
  for (double x : m)
    if (x < -kZeroTol) return false;
  return true;
}

FourCoinStats lhv_to_stats(const LhvMeasure& measure) {
  FourCoinStats st;
  st.p.fill(0.0);
  for (int pair = 0; pair < 4; ++pair) {
    for (int i = 0; i < 16; ++i) {
      int sa = lhv_sign(i, kPairObsA[pair]);
      int sb = lhv_sign(i, kPairObsB[pair]);
      int cell = (sa == 1 ? 0 : 2) + (sb == 1 ? 0 : 1);
      st.p[4 * pair + cell] += measure.m[i];
    }
  }
  return st;
}

PerfectCorrReduction perfect_corr_reduce(const LhvMeasure& measure) {
  if (std::abs(measure.sum() - 1.0) > kZeroTol)
    throw PreconditionError("measure weights must sum to 1");
  for (int i = 4; i < 12; ++i)
    if (std::abs(measure.m[i]) > kZeroTol)
      throw PreconditionError("perfect correlation requires m5..m12 = 0 (m" +
                              std::to_string(i + 1) + " is nonzero)");
  const auto& m = measure.m;
  double head_block = m[0] + m[1] + m[2] + m[3];
  PerfectCorrReduction red;
  red.p1_branch_identity = std::abs(head_block - 1.0) <= kZeroTol;
  if (!red.p1_branch_identity && measure.nonnegative())
    throw PreconditionError(
        "nonnegative measure is not in the p1 = 1 branch (m1+m2+m3+m4 != 1)");
  red.r = red.rp = 1.0;
  red.s = m[0] + m[1] + m[12] + m[13];
  red.sp = m[0] + m[2] + m[12] + m[14];
  return red;
}

SplitInputs SplitInputs::from_measure(const LhvMeasure& measure) {
  for (int i = 4; i < 12; ++i)
    if (std::abs(measure.m[i]) > kZeroTol)
      throw PreconditionError("split decomposition requires m5..m12 = 0");
  const auto& m = measure.m;
  return {m[0] + m[1], m[0] + m[2], m[12] + m[13], m[12] + m[14]};
}

CorrelatedPayoffs correlated_payoffs(const GameEntries& entries,
                                     const SplitInputs& in) {
  const double k = entries.k, l = entries.l, m = entries.m, n = entries.n;
  CorrelatedPayoffs out;

  auto fill = [&](StrategyPair pair, SplitPayoff a, SplitPayoff b) {
    out.alice[static_cast<int>(pair)] = a;
    out.bob[static_cast<int>(pair)] = b;
  };

  fill(StrategyPair::s1s1, {k, k, 0.0}, {k, k, 0.0});

  // P(S1,S2') = L + (K-L) s'; the m13..m16 share rides on s2'.
  fill(StrategyPair::s1s2,
       {l + (k - l) * in.sp(), l + (k - l) * in.sp1, (k - l) * in.sp2},
       {m + (k - m) * in.sp(), m + (k - m) * in.sp1, (k - m) * in.sp2});

  fill(StrategyPair::s2s1,
       {m + (k - m) * in.s(), m + (k - m) * in.s1, (k - m) * in.s2},
       {l + (k - l) * in.s(), l + (k - l) * in.s1, (k - l) * in.s2});

  double q = k - l - m + n;
  double s = in.s(), sp = in.sp();
  SplitPayoff a22;
  a22.full = q * s * sp + (l - n) * s + (m - n) * sp + n;
  a22.part_a = q * in.s1 * in.sp1 + (l - n) * in.s1 + (m - n) * in.sp1 + n;
  a22.part_b = q * (in.s1 * in.sp2 + in.sp1 * in.s2 + in.s2 * in.sp2) +
               (l - n) * in.s2 + (m - n) * in.sp2;
  SplitPayoff b22;
  b22.full = q * s * sp + (m - n) * s + (l - n) * sp + n;
  b22.part_a = q * in.s1 * in.sp1 + (m - n) * in.s1 + (l - n) * in.sp1 + n;
  b22.part_b = q * (in.s1 * in.sp2 + in.sp1 * in.s2 + in.s2 * in.sp2) +
               (m - n) * in.s2 + (l - n) * in.sp2;
  fill(StrategyPair::s2s2, a22, b22);
  return out;
}

double chsh_from_measure(const LhvMeasure& measure) {
  auto corr = [&](int obs_a, int obs_b) {
    double c = 0.0;
    for (int i = 0; i < 16; ++i)
      c += measure.m[i] * lhv_sign(i, obs_a) * lhv_sign(i, obs_b);
    return c;
  };
  // a -> S1, a' -> S2, b -> S1', b' -> S2'.
  return corr(0, 1) + corr(2, 3) + corr(2, 1) - corr(0, 3);
}

PdNeAnalysis pd_ne_analysis(const GameEntries& entries, const LhvMeasure& measure) {
  if (std::abs(measure.sum() - 1.0) > kZeroTol)
    throw PreconditionError("measure weights must sum to 1");
  for (int i = 4; i < 12; ++i)
    if (std::abs(measure.m[i]) > kZeroTol)
      throw PreconditionError("perfect correlation requires m5..m12 = 0");
  for (int i = 0; i < 3; ++i)
    if (std::abs(measure.m[i]) > kZeroTol)
      throw PreconditionError(
          "the (0,0)-equilibrium regime requires m1 = m2 = m3 = 0");

  PdNeAnalysis out;
  out.s2 = measure.m[12] + measure.m[13];
  out.sp2 = measure.m[12] + measure.m[14];
  out.in_range = std::abs(out.s2) <= 1 + kZeroTol && std::abs(out.sp2) <= 1 + kZeroTol;

  // Gain from a unilateral deviation to the first coin (r = r' = 1); an
  // equilibrium tolerates no positive gain.
  double coupling = entries.k - entries.l - entries.m + entries.n;
  double offset = entries.l - entries.n;
  out.gain_a = (1 - out.s2) * (coupling * out.sp2 + offset);
  out.gain_b = (1 - out.sp2) * (coupling * out.s2 + offset);
  out.ne_exists = out.gain_a <= kConsistencyTol && out.gain_b <= kConsistencyTol;
  out.sum_inequality_holds = out.gain_a + out.gain_b <= kConsistencyTol;
  out.displaced = std::abs(out.s2) > kZeroTol || std::abs(out.sp2) > kZeroTol;

  double q = entries.k - entries.l - entries.m + entries.n;
  out.payoffs = {q * out.s2 * out.sp2 + (entries.l - entries.n) * out.s2 +
                     (entries.m - entries.n) * out.sp2 + entries.n,
                 q * out.s2 * out.sp2 + (entries.m - entries.n) * out.s2 +
                     (entries.l - entries.n) * out.sp2 + entries.n};
  return out;
}

LhvMeasure diagonal_measure_family(double x) {
  LhvMeasure m;
  m.m.fill(0.0);
  m.m[3] = 1 - 2 * x;
  m.m[12] = x;
  m.m[15] = x;
  return m;
}

}  // namespace eprgames
