#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eprgames/errors.hpp"
#include "eprgames/lhv.hpp"
#include "eprgames/rng.hpp"
#include "oracles.hpp"

using namespace eprgames;

namespace {

LhvMeasure random_signed_measure(rng::Stream& rs) {
  LhvMeasure m;
  double sum = 0;
  for (int i = 0; i < 16; ++i) {
    m.m[i] = 2 * rs.next_unit() - 1;
    sum += m.m[i];
  }
  m.m[15] += 1 - sum;  // normalize
  return m;
}

LhvMeasure random_nonneg_measure(rng::Stream& rs) {
  LhvMeasure m;
  double sum = 0;
  for (int i = 0; i < 16; ++i) {
    m.m[i] = rs.next_unit();
    sum += m.m[i];
  }
  for (int i = 0; i < 16; ++i) m.m[i] /= sum;
  return m;
}

oracle::Cells entry_cells(const GameEntries& e) {
  return {{{{{e.k, e.k}, {e.l, e.m}}}, {{{e.m, e.l}, {e.n, e.n}}}}};
}

}  // namespace

TEST_CASE("stats validation") {
  SUBCASE("product stats pass all three checks") {
    FourCoinStats st = FourCoinStats::product_form(0.3, 0.7, 0.4, 0.6);
    StatsValidation v = validate_stats(st);
    CHECK(v.normalized);
    CHECK(v.consistent);
    CHECK(v.nonnegative);
  }
  SUBCASE("uniform blocks") {
    FourCoinStats st;
    st.p.fill(0.25);
    StatsValidation v = validate_stats(st);
    CHECK(v.normalized);
    CHECK(v.consistent);
    CHECK(v.nonnegative);
  }
  SUBCASE("perturbing one entry breaks normalization") {
    FourCoinStats st = FourCoinStats::product_form(0.3, 0.7, 0.4, 0.6);
    st.p[0] += 0.1;
    CHECK_FALSE(validate_stats(st).normalized);
  }
}

TEST_CASE("head probabilities") {
  FourCoinStats st = FourCoinStats::product_form(0.3, 0.7, 0.4, 0.6);
  HeadProbs hp = extract_head_probs(st);
  CHECK(hp.r == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(hp.s == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(hp.rp == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(hp.sp == doctest::Approx(0.6).epsilon(1e-12));

  SUBCASE("heads-everywhere stats") {
    FourCoinStats ones = FourCoinStats::product_form(1, 1, 1, 1);
    HeadProbs h = extract_head_probs(ones);
    CHECK(h.r == 1.0);
    CHECK(h.rp == 1.0);
  }

  SUBCASE("inconsistent stats are rejected with residuals") {
    FourCoinStats st2 = FourCoinStats::product_form(0.3, 0.7, 0.4, 0.6);
    st2.p[0] += 0.05;
    st2.p[1] -= 0.05;  // keeps block normalized, breaks r = p1+p2 vs p5+p6
    CHECK_THROWS_AS(extract_head_probs(st2), PreconditionError);
  }
}

TEST_CASE("referee recipe vs bilinear form") {
  GameEntries pd1 = GameEntries::pd_rep1();

  SUBCASE("heads-locked coins give K") {
    FourCoinStats st = FourCoinStats::product_form(1, 0, 1, 0);
    PayoffPair p = payoff_from_stats(st, pd1, StrategyPair::s1s1);
    CHECK(p.a == doctest::Approx(3).epsilon(1e-12));
    CHECK(p.b == doctest::Approx(3).epsilon(1e-12));
  }

  SUBCASE("uniform blocks average the entries") {
    FourCoinStats st;
    st.p.fill(0.25);
    for (int pair = 0; pair < 4; ++pair) {
      PayoffPair p = payoff_from_stats(st, pd1, static_cast<StrategyPair>(pair));
      CHECK(p.a == doctest::Approx(2.25).epsilon(1e-12));
      CHECK(p.b == doctest::Approx(2.25).epsilon(1e-12));
    }
  }

  SUBCASE("constant entries pay N everywhere") {
    GameEntries flat{2, 2, 2, 2};
    FourCoinStats st = FourCoinStats::product_form(0.3, 0.7, 0.4, 0.6);
    for (int pair = 0; pair < 4; ++pair) {
      PayoffPair p = payoff_from_stats(st, flat, static_cast<StrategyPair>(pair));
      CHECK(p.a == doctest::Approx(2).epsilon(1e-12));
    }
  }

  SUBCASE("equals the bilinear payoff on random product stats") {
    rng::Stream rs(61, 0);
    for (int n = 0; n < 2000; ++n) {
      double r = rs.next_unit(), s = rs.next_unit();
      double rp = rs.next_unit(), sp = rs.next_unit();
      GameEntries e{std::floor(rs.next_unit() * 11) - 5, std::floor(rs.next_unit() * 11) - 5,
                    std::floor(rs.next_unit() * 11) - 5, std::floor(rs.next_unit() * 11) - 5};
      FourCoinStats st = FourCoinStats::product_form(r, s, rp, sp);
      const double rows[2] = {r, s}, cols[2] = {rp, sp};
      for (int pair = 0; pair < 4; ++pair) {
        PayoffPair got = payoff_from_stats(st, e, static_cast<StrategyPair>(pair));
        auto [ea, eb] =
            oracle::mixed_payoff(entry_cells(e), rows[pair / 2], cols[pair % 2]);
        CHECK(std::abs(got.a - ea) <= 1e-12);
        CHECK(std::abs(got.b - eb) <= 1e-12);
      }
    }
  }
}

TEST_CASE("measure to stats") {
  SUBCASE("point mass on the all-plus subset") {
    LhvMeasure m;
    m.m.fill(0);
    m.m[0] = 1;
    FourCoinStats st = lhv_to_stats(m);
    for (int i = 0; i < 16; ++i)
      CHECK(st.p[i] == ((i % 4 == 0) ? 1.0 : 0.0));  // p1, p5, p9, p13
  }

  SUBCASE("uniform measure gives uniform blocks") {
    LhvMeasure m;
    m.m.fill(1.0 / 16);
    FourCoinStats st = lhv_to_stats(m);
    for (int i = 0; i < 16; ++i) CHECK(st.p[i] == doctest::Approx(0.25).epsilon(1e-12));
  }

  SUBCASE("induced stats always satisfy the identities") {
    rng::Stream rs(71, 0);
    for (int n = 0; n < 10000; ++n) {
      StatsValidation v = validate_stats(lhv_to_stats(random_signed_measure(rs)));
      CHECK(v.normalized);
      CHECK(v.consistent);
    }
  }

  SUBCASE("sign table enumerates plus-first binary order") {
    CHECK(lhv_sign(0, 0) == 1);
    CHECK(lhv_sign(1, 3) == -1);  // Lambda_2 = (+,+,+,-)
    CHECK(lhv_sign(4, 1) == -1);  // Lambda_5 = (+,-,+,+)
    CHECK(lhv_sign(15, 0) == -1);
  }

  SUBCASE("each p_i is exactly its four-weight sum") {
    // 1-based weight indices per joint probability, transcribed by hand.
    const int sums[16][4] = {
        {1, 2, 3, 4},    {5, 6, 7, 8},    {9, 10, 11, 12}, {13, 14, 15, 16},
        {1, 3, 5, 7},    {2, 4, 6, 8},    {9, 11, 13, 15}, {10, 12, 14, 16},
        {1, 2, 9, 10},   {5, 6, 13, 14},  {3, 4, 11, 12},  {7, 8, 15, 16},
        {1, 5, 9, 13},   {2, 6, 10, 14},  {3, 7, 11, 15},  {4, 8, 12, 16}};
    rng::Stream rs(271828, 0);
    for (int trial = 0; trial < 200; ++trial) {
      LhvMeasure m = random_signed_measure(rs);
      FourCoinStats st = lhv_to_stats(m);
      for (int i = 0; i < 16; ++i) {
        double want = 0;
        for (int k = 0; k < 4; ++k) want += m.m[sums[i][k] - 1];
        CHECK(st.p[i] == doctest::Approx(want).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("perfect correlation reduction") {
  SUBCASE("point mass m1") {
    LhvMeasure m;
    m.m.fill(0);
    m.m[0] = 1;
    PerfectCorrReduction red = perfect_corr_reduce(m);
    CHECK(red.s == 1.0);
    CHECK(red.sp == 1.0);
    CHECK(red.r == 1.0);
    CHECK(red.p1_branch_identity);
  }
  SUBCASE("point mass m4") {
    LhvMeasure m;
    m.m.fill(0);
    m.m[3] = 1;
    PerfectCorrReduction red = perfect_corr_reduce(m);
    CHECK(red.s == 0.0);
    CHECK(red.sp == 0.0);
  }
  SUBCASE("signed measure goes through formally") {
    LhvMeasure m;
    m.m.fill(0);
    m.m[0] = 0.5;
    m.m[3] = 0.7;
    m.m[12] = -0.2;
    PerfectCorrReduction red = perfect_corr_reduce(m);
    CHECK(red.s == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(red.sp == doctest::Approx(0.3).epsilon(1e-12));
    CHECK_FALSE(red.p1_branch_identity);
  }
  SUBCASE("nonzero middle weights are rejected") {
    LhvMeasure m;
    m.m.fill(0);
    m.m[0] = 0.5;
    m.m[6] = 0.5;
    CHECK_THROWS_AS(perfect_corr_reduce(m), PreconditionError);
  }
  SUBCASE("nonnegative measure outside the p1=1 branch is rejected") {
    LhvMeasure m;
    m.m.fill(0);
    m.m[12] = 1;  // p1 = 0 branch
    CHECK_THROWS_AS(perfect_corr_reduce(m), PreconditionError);
  }
  SUBCASE("unnormalized measure is rejected") {
    LhvMeasure m;
    m.m.fill(0);
    m.m[0] = 0.5;
    CHECK_THROWS_AS(perfect_corr_reduce(m), PreconditionError);
  }
}

TEST_CASE("correlated payoffs and splitting") {
  GameEntries pd1 = GameEntries::pd_rep1();

  SUBCASE("no m13..m16 share means no part_b") {
    rng::Stream rs(83, 0);
    for (int n = 0; n < 1000; ++n) {
      double w[4], sum = 0;
      for (double& x : w) {
        x = rs.next_unit();
        sum += x;
      }
      LhvMeasure m;
      m.m.fill(0);
      for (int i = 0; i < 4; ++i) m.m[i] = w[i] / sum;
      CorrelatedPayoffs cp = correlated_payoffs(pd1, SplitInputs::from_measure(m));
      for (int pair = 0; pair < 4; ++pair) {
        CHECK(cp.alice[pair].part_b == 0.0);
        CHECK(cp.bob[pair].part_b == 0.0);
        CHECK(std::abs(cp.alice[pair].part_a + cp.alice[pair].part_b -
                       cp.alice[pair].full) <= 1e-12);
      }
    }
  }

  SUBCASE("split parts always add up to the full payoff") {
    rng::Stream rs(91, 0);
    for (int n = 0; n < 2000; ++n) {
      LhvMeasure m = random_signed_measure(rs);
      for (int i = 4; i < 12; ++i) {
        m.m[3] += m.m[i];  // fold the middle weights away, keep the sum
        m.m[i] = 0;
      }
      SplitInputs in = SplitInputs::from_measure(m);
      CorrelatedPayoffs cp = correlated_payoffs(pd1, in);
      for (int pair = 0; pair < 4; ++pair) {
        CHECK(std::abs(cp.alice[pair].part_a + cp.alice[pair].part_b -
                       cp.alice[pair].full) <= 1e-12);
        CHECK(std::abs(cp.bob[pair].part_a + cp.bob[pair].part_b - cp.bob[pair].full) <=
              1e-12);
      }
    }
  }

  SUBCASE("worked values at (S2,S2')") {
    // s = s' = 0: both coins tails, payoff N
    CorrelatedPayoffs cp = correlated_payoffs(pd1, {0, 0, 0, 0});
    CHECK(cp.alice[3].full == doctest::Approx(1).epsilon(1e-12));
    CHECK(cp.bob[3].full == doctest::Approx(1).epsilon(1e-12));
    CHECK(cp.alice[0].full == doctest::Approx(3).epsilon(1e-12));  // always K

    // both negative shares keep the payoff at or below N
    for (double x : {-0.05, -0.1, -0.2}) {
      CorrelatedPayoffs neg = correlated_payoffs(pd1, {0, 0, x, x});
      CHECK(neg.alice[3].full <= 1.0 + 1e-12);
      CHECK(neg.bob[3].full <= 1.0 + 1e-12);
    }
  }

  SUBCASE("matches the direct s2-only payoff formula") {
    // with m1=m2=m3=0: P_A = s2'(4 - s2) - s2 + 1 for representation 1
    for (double s2 : {-0.2, 0.0, 0.3})
      for (double sp2 : {-0.1, 0.25}) {
        CorrelatedPayoffs cp = correlated_payoffs(pd1, {0, 0, s2, sp2});
        CHECK(cp.alice[3].full ==
              doctest::Approx(sp2 * (4 - s2) - s2 + 1).epsilon(1e-12));
        CHECK(cp.bob[3].full ==
              doctest::Approx(s2 * (4 - sp2) - sp2 + 1).epsilon(1e-12));
      }
  }
}

TEST_CASE("chsh from a measure") {
  SUBCASE("point mass gives 2") {
    LhvMeasure m;
    m.m.fill(0);
    m.m[0] = 1;
    CHECK(chsh_from_measure(m) == doctest::Approx(2).epsilon(1e-12));
  }
  SUBCASE("uniform measure gives 0") {
    LhvMeasure m;
    m.m.fill(1.0 / 16);
    CHECK(chsh_from_measure(m) == doctest::Approx(0).epsilon(1e-12));
  }
  SUBCASE("nonnegative measures respect the bound and stay physical") {
    rng::Stream rs(101, 0);
    for (int n = 0; n < 10000; ++n) {
      LhvMeasure m = random_nonneg_measure(rs);
      CHECK(std::abs(chsh_from_measure(m)) <= 2 + 1e-12);
      CHECK(validate_stats(lhv_to_stats(m)).nonnegative);
    }
  }
  SUBCASE("signed measures can exceed it") {
    // Lambda_1 carries CHSH weight +2 and Lambda_5 weight -2; a negative
    // share on the latter pushes past the classical bound.
    LhvMeasure m;
    m.m.fill(0);
    m.m[0] = 1.2;
    m.m[4] = -0.2;
    CHECK(chsh_from_measure(m) == doctest::Approx(2.8).epsilon(1e-12));
  }

  SUBCASE("the diagonal family sits exactly on the bound") {
    // All three populated subsets carry weight +2, so delta = 2 regardless
    // of the sign of m13.
    for (double x : {-0.3, -0.1, 0.0, 0.1})
      CHECK(chsh_from_measure(diagonal_measure_family(x)) ==
            doctest::Approx(2).epsilon(1e-12));
  }
}

TEST_CASE("pd equilibrium analysis") {
  GameEntries pd1 = GameEntries::pd_rep1();
  GameEntries pd2 = GameEntries::pd_rep2();
  CHECK(pd1.pd_class());
  CHECK(pd2.pd_class());

  SUBCASE("representation 1 keeps the equilibrium under negative shares") {
    PdNeAnalysis ne = pd_ne_analysis(pd1, diagonal_measure_family(-0.1));
    CHECK(ne.s2 == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(ne.ne_exists);
    CHECK(ne.displaced);
  }

  SUBCASE("representation 2 loses it when the inequality fails") {
    PdNeAnalysis ne = pd_ne_analysis(pd2, diagonal_measure_family(-0.15));
    CHECK_FALSE(ne.ne_exists);
    CHECK_FALSE(ne.sum_inequality_holds);
    // (1/9)(4(s2+sp2)+1) < s2*sp2 here
    CHECK((4 * (ne.s2 + ne.sp2) + 1) / 9 < ne.s2 * ne.sp2);
  }

  SUBCASE("zero shares recover the classical equilibrium and payoff N") {
    for (const GameEntries& e : {pd1, pd2}) {
      PdNeAnalysis ne = pd_ne_analysis(e, diagonal_measure_family(0));
      CHECK(ne.ne_exists);
      CHECK_FALSE(ne.displaced);
      CHECK(ne.payoffs.a == doctest::Approx(e.n).epsilon(1e-12));
      CHECK(ne.payoffs.b == doctest::Approx(e.n).epsilon(1e-12));
    }
  }

  SUBCASE("representation 1 is robust over random in-range measures") {
    rng::Stream rs(113, 0);
    for (int n = 0; n < 10000; ++n) {
      LhvMeasure m;
      m.m.fill(0);
      double m13 = 2 * rs.next_unit() - 1;
      double m14 = rs.next_unit() * (1 - m13);
      double m15 = rs.next_unit() * (1 - m13);
      double m16 = rs.next_unit();
      m.m[12] = m13;
      m.m[13] = m14;
      m.m[14] = m15;
      m.m[15] = m16;
      m.m[3] = 1 - m13 - m14 - m15 - m16;
      PdNeAnalysis ne = pd_ne_analysis(pd1, m);
      CHECK(ne.in_range);
      CHECK(ne.gain_a <= 1e-12);
      CHECK(ne.gain_b <= 1e-12);
    }
  }

  SUBCASE("preconditions") {
    LhvMeasure bad;
    bad.m.fill(0);
    bad.m[0] = 0.5;
    bad.m[3] = 0.5;
    CHECK_THROWS_AS(pd_ne_analysis(pd1, bad), PreconditionError);  // m1 nonzero
    bad.m.fill(0);
    bad.m[7] = 1;
    CHECK_THROWS_AS(pd_ne_analysis(pd1, bad), PreconditionError);  // middle weight
  }

  SUBCASE("diagonal family crosses at s2 = -1/9 for representation 2") {
    double x_lo = -1.0 / 9 - 1e-4, x_hi = -1.0 / 9 + 1e-4;
    CHECK_FALSE(pd_ne_analysis(pd2, diagonal_measure_family(x_lo)).ne_exists);
    CHECK(pd_ne_analysis(pd2, diagonal_measure_family(x_hi)).ne_exists);
    // representation 1 is untouched on both sides
    CHECK(pd_ne_analysis(pd1, diagonal_measure_family(x_lo)).ne_exists);
    CHECK(pd_ne_analysis(pd1, diagonal_measure_family(x_hi)).ne_exists);
  }
}
