#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eprgames/epr_sim.hpp"
#include "eprgames/errors.hpp"
#include "oracles.hpp"

using namespace eprgames;

namespace {
constexpr double kPi = std::numbers::pi;

ProtocolConfig singlet_config(double ta, double tb, double pa, double pb,
                              uint64_t runs, uint64_t seed) {
  return {ta, tb, pa, pb, CorrelationModel::singlet(), runs, seed};
}
}  // namespace

TEST_CASE("run protocol basics") {
  ProtocolConfig cfg = singlet_config(kPi / 3, kPi / 4, 0.5, 0.5, 1, 7);
  CHECK(run_protocol(cfg).size() == 1);

  cfg.runs = 0;
  CHECK_THROWS_AS(run_protocol(cfg), std::invalid_argument);

  cfg.runs = 10;
  cfg.pa = 1.2;
  CHECK_THROWS_AS(run_protocol(cfg), std::invalid_argument);

  SUBCASE("same seed, same records") {
    ProtocolConfig a = singlet_config(1.0, 2.0, 0.3, 0.7, 5000, 42);
    auto r1 = run_protocol(a);
    auto r2 = run_protocol(a);
    REQUIRE(r1.size() == r2.size());
    for (size_t i = 0; i < r1.size(); ++i) {
      CHECK(r1[i].alice == r2[i].alice);
      CHECK(r1[i].bob == r2[i].bob);
      CHECK(r1[i].a == r2[i].a);
      CHECK(r1[i].b == r2[i].b);
    }
    auto r3 = run_protocol(singlet_config(1.0, 2.0, 0.3, 0.7, 5000, 43));
    bool same = true;
    for (size_t i = 0; i < r1.size(); ++i)
      same = same && r1[i].a == r3[i].a && r1[i].alice == r3[i].alice;
    CHECK_FALSE(same);
  }

  SUBCASE("pa = 1 pins Alice to the z axis") {
    ProtocolConfig cfg1 = singlet_config(1.0, 1.0, 1.0, 0.5, 2000, 3);
    for (const RunRecord& r : run_protocol(cfg1)) CHECK(r.alice == Axis::z);
  }
}

TEST_CASE("joint outcome law") {
  SUBCASE("singlet on (z,z) is perfectly anti-correlated") {
    ProtocolConfig cfg = singlet_config(1.0, 1.0, 1.0, 1.0, 5000, 11);
    for (const RunRecord& r : run_protocol(cfg)) {
      CHECK(r.a == -r.b);
      CHECK((r.a == 1 || r.a == -1));
    }
  }

  SUBCASE("marginals are unbiased") {
    ProtocolConfig cfg = singlet_config(2.0, 0.7, 0.4, 0.6, 100000, 17);
    double mean_a = 0, mean_b = 0;
    for (const RunRecord& r : run_protocol(cfg)) {
      mean_a += r.a;
      mean_b += r.b;
    }
    mean_a /= cfg.runs;
    mean_b /= cfg.runs;
    CHECK(std::abs(mean_a) <= 4.0 / std::sqrt((double)cfg.runs));
    CHECK(std::abs(mean_b) <= 4.0 / std::sqrt((double)cfg.runs));
  }

  SUBCASE("the cell law is a valid distribution for every axis choice") {
    for (const CorrelationModel& model :
         {CorrelationModel::classical(), CorrelationModel::singlet(),
          CorrelationModel::mixture()}) {
      for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= 20; ++j) {
          double c = model.corr_pair(axis_in_plane_a(kPi * i / 20),
                                     axis_in_plane_b(kPi * j / 20));
          CHECK(std::abs(c) <= 1.0);
          CHECK((1 + c) / 4 >= 0.0);
          CHECK((1 - c) / 4 >= 0.0);
          CHECK((1 + c) / 4 <= 1.0);
        }
    }
  }

  SUBCASE("empirical cell frequencies match (1 + ab C)/4") {
    ProtocolConfig cfg = singlet_config(kPi / 5, kPi / 3, 0.0, 0.0, 200000, 23);
    // both always measure their own axes; C = -cos(ta)cos(tb)
    double c = -std::cos(kPi / 5) * std::cos(kPi / 3);
    double n_pp = 0, n_pm = 0, n_mp = 0, n_mm = 0;
    for (const RunRecord& r : run_protocol(cfg)) {
      if (r.a == 1 && r.b == 1) ++n_pp;
      if (r.a == 1 && r.b == -1) ++n_pm;
      if (r.a == -1 && r.b == 1) ++n_mp;
      if (r.a == -1 && r.b == -1) ++n_mm;
    }
    double n = static_cast<double>(cfg.runs);
    double err = 4.0 / std::sqrt(n);
    CHECK(std::abs(n_pp / n - (1 + c) / 4) <= err);
    CHECK(std::abs(n_pm / n - (1 - c) / 4) <= err);
    CHECK(std::abs(n_mp / n - (1 - c) / 4) <= err);
    CHECK(std::abs(n_mm / n - (1 + c) / 4) <= err);
  }
}

TEST_CASE("arbiter report") {
  SUBCASE("all-(z,z) lists have no <ac> estimate") {
    std::vector<RunRecord> records(100, RunRecord{Axis::z, Axis::z, 1, -1});
    ArbiterReport rep = arbiter_report(records);
    CHECK(rep.pa_hat == 1.0);
    CHECK(rep.pb_hat == 1.0);
    CHECK_FALSE(rep.ac.has_value());
    CHECK_FALSE(rep.cb.has_value());
    REQUIRE(rep.cc.has_value());
    CHECK(rep.cc->value == -1.0);
  }

  SUBCASE("synthetic (own,z) list averages to 1") {
    std::vector<RunRecord> records;
    for (int i = 0; i < 50; ++i) {
      records.push_back({Axis::own, Axis::z, 1, 1});
      records.push_back({Axis::own, Axis::z, -1, -1});
    }
    ArbiterReport rep = arbiter_report(records);
    REQUIRE(rep.ac.has_value());
    CHECK(rep.ac->value == 1.0);
    CHECK(rep.ac->count == 100);
    CHECK(rep.pa_hat == 0.0);
  }

  SUBCASE("empty list rejected") {
    CHECK_THROWS_AS(arbiter_report({}), std::invalid_argument);
  }

  SUBCASE("axis frequencies converge to the configured probabilities") {
    for (uint64_t seed : {1ull, 2ull, 3ull}) {
      ProtocolConfig cfg = singlet_config(1.2, 0.9, 0.3, 0.8, 100000, seed);
      ArbiterReport rep = arbiter_report(run_protocol(cfg));
      CHECK(std::abs(rep.pa_hat - 0.3) <=
            4 * std::sqrt(0.3 * 0.7 / (double)cfg.runs));
      CHECK(std::abs(rep.pb_hat - 0.8) <=
            4 * std::sqrt(0.8 * 0.2 / (double)cfg.runs));
    }
  }

  SUBCASE("correlation estimates are consistent across models and seeds") {
    struct Case {
      CorrelationModel model;
      double expected_ac;  // at theta_a = pi/3
    };
    const Case cases[] = {
        {CorrelationModel::singlet(), -std::cos(kPi / 3)},
        {CorrelationModel::classical(), -1 + 2 * (kPi / 3) / kPi},
        {CorrelationModel::mixture(), -std::cos(kPi / 3) / 3},
    };
    for (const Case& c : cases) {
      int hits = 0;
      const int seeds = 100;
      for (int seed = 0; seed < seeds; ++seed) {
        ProtocolConfig cfg{kPi / 3, kPi / 5, 0.5,   0.5,
                           c.model, 100000,  (uint64_t)seed};
        ArbiterReport rep = arbiter_report(run_protocol(cfg));
        REQUIRE(rep.ac.has_value());
        double bound = 4.0 / std::sqrt((double)rep.ac->count);
        if (std::abs(rep.ac->value - c.expected_ac) <= bound) ++hits;
      }
      CHECK(hits >= 99);
    }
  }
}

TEST_CASE("lambda-sphere oracle agrees with the cell law") {
  ProtocolConfig cfg{2 * kPi / 5, 2 * kPi / 5, 0.3, 0.3,
                     CorrelationModel::classical(), 200000, 77};
  std::vector<RunRecord> direct, sphere;
  for (uint64_t i = 0; i < cfg.runs; ++i) {
    direct.push_back(sample_run(cfg, i));
    sphere.push_back(sample_run_lambda_sphere(cfg, i));
  }
  ArbiterReport a = arbiter_report(direct);
  ArbiterReport b = arbiter_report(sphere);
  for (auto pick : {&ArbiterReport::ac, &ArbiterReport::cb, &ArbiterReport::ab,
                    &ArbiterReport::cc}) {
    REQUIRE((a.*pick).has_value());
    REQUIRE((b.*pick).has_value());
    double err = 4.0 / std::sqrt((double)(a.*pick)->count) +
                 4.0 / std::sqrt((double)(b.*pick)->count);
    CHECK(std::abs((a.*pick)->value - (b.*pick)->value) <= err);
  }

  SUBCASE("orthogonal own axes decorrelate classically") {
    ProtocolConfig ortho{kPi / 2, kPi / 2, 0.0, 0.0,
                         CorrelationModel::classical(), 100000, 5};
    ArbiterReport rep = arbiter_report(run_protocol(ortho));
    REQUIRE(rep.ab.has_value());
    CHECK(std::abs(rep.ab->value) <= 4.0 / std::sqrt((double)rep.ab->count));
  }

  SUBCASE("sphere sampling rejects quantum models") {
    ProtocolConfig bad = singlet_config(1, 1, 0.5, 0.5, 10, 1);
    CHECK_THROWS_AS(sample_run_lambda_sphere(bad, 0), PreconditionError);
  }
}

TEST_CASE("reward") {
  BimatrixGame pd = BimatrixGame::named("pd1");
  GFunction g1 = GFunction::builtin("g1");

  SUBCASE("classical play converges to the bilinear payoff") {
    // p = g1(theta) ties the knobs together: pa = pb = 1/2 at theta = pi/2
    ProtocolConfig cfg{kPi / 2, kPi / 2, 0.5, 0.5,
                       CorrelationModel::classical(), 400000, 123};
    PayoffPair got = reward(arbiter_report(run_protocol(cfg)), pd, g1);
    PayoffPair want = pd.payoff({0.5, 0.5});
    CHECK(std::abs(got.a - want.a) <= 0.05);
    CHECK(std::abs(got.b - want.b) <= 0.05);
  }

  SUBCASE("singlet play converges to the quantum payoff") {
    ProtocolConfig cfg{kPi / 3, kPi / 3, g1.eval(kPi / 3), g1.eval(kPi / 3),
                       CorrelationModel::singlet(), 400000, 321};
    PayoffPair got = reward(arbiter_report(run_protocol(cfg)), pd, g1);
    PayoffPair want = payoff_from_correlations(pd, g1, -std::cos(kPi / 3),
                                               -std::cos(kPi / 3));
    CHECK(std::abs(got.a - want.a) <= 0.05);
    CHECK(std::abs(got.b - want.b) <= 0.05);
  }

  SUBCASE("missing axis pairs surface as insufficient data") {
    ProtocolConfig cfg = singlet_config(1, 1, 1.0, 1.0, 1000, 9);
    ArbiterReport rep = arbiter_report(run_protocol(cfg));
    CHECK_THROWS_AS(reward(rep, pd, g1), InsufficientDataError);
  }
}
