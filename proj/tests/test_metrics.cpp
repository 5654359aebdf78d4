#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "prio/construct.hpp"
#include "prio/fixtures.hpp"
#include "prio/metrics.hpp"
#include "support/generators.hpp"

using namespace prio;

TEST_CASE("objective values") {
  GameInstance g = pos_g3(3);
  GameView view(g);
  Profile ne = ne_identical_machines(g);
  CHECK(objective_value(view, ne, Objective::Makespan) == 5);
  CHECK(objective_value(view, ne, Objective::SumCompletionTimes) > 0);
  CHECK_THROWS_AS(objective_value(view, ne, Objective::SumWeightedCosts), DomainError);

  CongestionInstance cg = condorcet();
  GameView cview(cg);
  Profile shared;
  shared.choice = {0, 0, 1};
  CHECK(objective_value(cview, shared, Objective::SumWeightedCosts) == 12);  // 4+5+3
  CHECK_THROWS_AS(objective_value(cview, shared, Objective::Makespan), DomainError);
}

TEST_CASE("social optimum by brute force") {
  GameInstance g3 = pos_g3(3);
  GameView v3(g3);
  CHECK(social_optimum(v3, Objective::Makespan, BigInt(100000)).second == 3);

  GameInstance g2 = pos_g2(Rational(2));
  GameView v2(g2);
  CHECK(social_optimum(v2, Objective::Makespan, BigInt(100)).second == 2);

  GameInstance solo;
  solo.job_ids = {"j"};
  solo.job_weights = {Rational(5)};
  solo.machine_ids = {"M1"};
  solo.machine_delays = {Rational(2)};
  solo.machine_priority = {PriorityList::from_order({0}, 1)};
  GameView vs(solo);
  auto [profile, value] = social_optimum(vs, Objective::Makespan, BigInt(10));
  CHECK(profile.choice == std::vector<int>{0});
  CHECK(value == 10);

  CHECK_THROWS_AS(social_optimum(v3, Objective::Makespan, BigInt(10)), BudgetExceeded);
}

TEST_CASE("inefficiency reports the heavy-job ratio") {
  GameInstance g = pos_g3(3);
  GameView view(g);
  auto report = inefficiency(view, Objective::Makespan, BigInt(100000));
  REQUIRE(report.has_value());
  CHECK(report->poa == Rational(5, 3));
  CHECK(report->pos == Rational(5, 3));
  CHECK(report->opt_value == 3);
}

TEST_CASE("inefficiency on the two-machine stability-gap instance") {
  GameInstance g = pos_g2(Rational(2));
  GameView view(g);
  auto report = inefficiency(view, Objective::Makespan, BigInt(100));
  REQUIRE(report.has_value());
  CHECK(report->pos == Rational(3, 2));  // 1 + 1/c at c = 2
}

TEST_CASE("inefficiency is absent without equilibria") {
  GameInstance g = gstar5();
  CHECK_FALSE(inefficiency(GameView(g), Objective::Makespan, BigInt(1000)));
}

TEST_CASE("report invariants on random instances") {
  std::mt19937_64 rng(112);
  for (int trial = 0; trial < 30; ++trial) {
    GameInstance g = gen::random_sched(rng, 4, 3);
    auto report = inefficiency(GameView(g), Objective::Makespan, BigInt(100000));
    if (!report) continue;
    CHECK(report->opt_value <= report->best_ne_value);
    CHECK(report->best_ne_value <= report->worst_ne_value);
    CHECK(Rational(1) <= report->pos);
    CHECK(report->pos <= report->poa);
  }
}

TEST_CASE("golden ratio bracket") {
  RationalInterval phi = golden_ratio_bracket();
  CHECK(phi.hi - phi.lo <= Rational(1, 1000000000));
  CHECK(phi.lo * phi.lo < phi.lo + 1);  // sign change across the bracket
  CHECK(phi.hi * phi.hi > phi.hi + 1);
  CHECK(phi.lo > Rational(1618, 1001));
  CHECK(phi.hi < Rational(1619, 1000));
}

TEST_CASE("degree-1 inefficiency root bracket") {
  RationalInterval b = poly_poa_bound(1);
  // The root solves x^2 = 2(x+1), so x = 1+sqrt(3) and x^2 = 4+2*sqrt(3).
  CHECK(b.lo > Rational(746, 100));
  CHECK(b.hi < Rational(747, 100));
  CHECK(b.lo <= b.hi);
  RationalInterval b3 = poly_poa_bound(3);
  CHECK(b3.lo > 0);
  CHECK(b3.lo <= b3.hi);
  CHECK_THROWS_AS(poly_poa_bound(0), DomainError);
}

TEST_CASE("class bounds hold on random instances") {
  std::mt19937_64 rng(334);
  gen::SchedOptions unit;
  unit.unit_weights = true;
  for (int trial = 0; trial < 25; ++trial) {
    GameInstance g = gen::random_sched(rng, 3 + trial % 3, 2 + trial % 2, unit);
    CHECK(check_bound(GameView(g), Objective::Makespan, BoundId::UnitWeightsExact,
                      BigInt(100000)));
  }
  gen::SchedOptions ident;
  ident.identical_delays = true;
  for (int trial = 0; trial < 25; ++trial) {
    GameInstance g = gen::random_sched(rng, 3 + trial % 4, 2 + trial % 2, ident);
    CHECK(check_bound(GameView(g), Objective::Makespan, BoundId::IdenticalMakespan,
                      BigInt(100000)));
    CHECK(check_bound(GameView(g), Objective::SumCompletionTimes,
                      BoundId::IdenticalSumCompletion, BigInt(100000)));
  }
  for (int trial = 0; trial < 25; ++trial) {
    GameInstance g = gen::random_sched(rng, 3 + trial % 4, 2);
    CHECK(check_bound(GameView(g), Objective::Makespan, BoundId::TwoMachinesMakespan,
                      BigInt(100000)));
  }
  for (int trial = 0; trial < 20; ++trial) {
    CongestionInstance g = gen::random_linear_congestion(rng, 3, 4);
    CHECK(check_bound(GameView(g), Objective::SumWeightedCosts,
                      BoundId::CongestionLinear, BigInt(100000)));
  }
}

TEST_CASE("bound checks pass vacuously without equilibria") {
  GameInstance g = gstar5();
  CHECK(check_bound(GameView(g), Objective::Makespan,
                    BoundId::IdenticalMakespan, BigInt(1000)));
}

TEST_CASE("three-job two-machine family attains the below-threshold bound") {
  GameInstance g = pos_g2_three(Rational(3, 2));
  auto report = inefficiency(GameView(g), Objective::Makespan, BigInt(1000));
  REQUIRE(report.has_value());
  CHECK(report->pos == Rational(8, 5));  // 1 + c/(c+1) at c = 3/2
}

TEST_CASE("smoothness inequality") {
  std::mt19937_64 rng(556);
  for (int trial = 0; trial < 10; ++trial) {
    CongestionInstance g = gen::random_linear_congestion(rng, 4, 4);
    GameView view(g);
    std::vector<int> counts;
    for (int i = 0; i < 4; ++i) counts.push_back(view.strategy_count(i));
    auto random_profile = [&]() {
      Profile s;
      for (int i = 0; i < 4; ++i) {
        std::uniform_int_distribution<int> pick(0, counts[i] - 1);
        s.choice.push_back(pick(rng));
      }
      return s;
    };
    for (int pair = 0; pair < 50; ++pair) {
      Profile s = random_profile();
      Profile sp = random_profile();
      CHECK(smoothness_check(g, s, sp));
      CHECK(smoothness_check(g, s, s));  // reduces to cost <= (5/2) cost
    }
  }
  CongestionInstance quad = gen::random_linear_congestion(rng, 2, 3);
  quad.resource_costs[0] = CostPolynomial::monomial(2);
  Profile s;
  s.choice = {0, 0};
  CHECK_THROWS_AS(smoothness_check(quad, s, s), UnsupportedError);
}

TEST_CASE("power-sum inequality behind the polynomial bound") {
  // (sum w)^{d+1} <= (d+1) * sum_k w_k (sum_{j<=k} w_j)^d
  std::mt19937_64 rng(778);
  auto pow = [](Rational base, int e) {
    Rational acc(1);
    for (int k = 0; k < e; ++k) acc *= base;
    return acc;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    std::uniform_int_distribution<int> len(1, 6);
    std::uniform_int_distribution<int> deg(1, 4);
    int k = len(rng);
    int d = deg(rng);
    std::vector<Rational> w;
    Rational total(0);
    for (int i = 0; i < k; ++i) {
      w.push_back(gen::random_rational(rng));
      total += w.back();
    }
    Rational rhs(0);
    Rational prefix(0);
    for (int i = 0; i < k; ++i) {
      prefix += w[i];
      rhs += w[i] * pow(prefix, d);
    }
    CHECK(pow(total, d + 1) <= Rational(d + 1) * rhs);
  }
}
