#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "prio/construct.hpp"
#include "prio/fixtures.hpp"
#include "prio/metrics.hpp"
#include "support/generators.hpp"

using namespace prio;

TEST_CASE("classifier tags") {
  CHECK(classify(gstar5()).empty());

  GameInstance all;
  all.job_ids = {"j1", "j2"};
  all.job_weights = {Rational(1), Rational(1)};
  all.machine_ids = {"M1", "M2"};
  all.machine_delays = {Rational(1), Rational(1)};
  all.machine_priority = {PriorityList::from_order({0, 1}, 2),
                          PriorityList::from_order({0, 1}, 2)};
  CHECK(classify(all) == std::set<ClassTag>{ClassTag::UnitWeights, ClassTag::TwoMachines,
                                            ClassTag::IdenticalDelays,
                                            ClassTag::GlobalList});

  CHECK(classify(pos_g3(3)) == std::set<ClassTag>{ClassTag::IdenticalDelays});

  CHECK(classify(condorcet()).empty());
  std::mt19937_64 rng(1);
  CHECK(classify(gen::random_matroid_unit(rng, 3, 4)) ==
        std::set<ClassTag>{ClassTag::MatroidUnit});

  GameInstance unrelated = unrelated3();
  CHECK_FALSE(classify(unrelated).count(ClassTag::UnitWeights));
}

TEST_CASE("two-machine construction on the stability-gap instance") {
  GameInstance g = pos_g2(Rational(2));
  Profile s = ne_two_machines(g);
  CHECK(s.choice == std::vector<int>{0, 0});  // both on the fast machine
  GameView view(g);
  CHECK(view.cost(s, 1) == 3);
  CHECK(is_nash(view, s).stable);
}

TEST_CASE("two-machine construction handles a single job") {
  GameInstance g;
  g.job_ids = {"j"};
  g.job_weights = {Rational(3)};
  g.machine_ids = {"M1", "M2"};
  g.machine_delays = {Rational(4), Rational(2)};
  g.machine_priority = {PriorityList::from_order({0}, 1),
                        PriorityList::from_order({0}, 1)};
  Profile s = ne_two_machines(g);
  CHECK(s.choice == std::vector<int>{1});  // M2 is the fast machine here
}

TEST_CASE("two-machine construction is sound on random instances") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 60; ++trial) {
    GameInstance g = gen::random_sched(rng, 2 + trial % 7, 2);
    Profile s = ne_two_machines(g);
    GameView view(g);
    CHECK(is_nash(view, s).stable);
    auto all = enumerate_nash(view, BigInt(1000));
    CHECK(std::find(all.begin(), all.end(), s) != all.end());
    // The proof's two claims, asserted directly on the output.
    int fast = (g.machine_delays[1] < g.machine_delays[0]) ? 1 : 0;
    for (int i = 0; i < g.job_count(); ++i) {
      Rational here = view.cost(s, i);
      CHECK(view.deviation_cost(s, i, fast) >= here);
      CHECK(view.deviation_cost(s, i, 1 - fast) >= here);
    }
  }
}

TEST_CASE("unit-weight greedy balances identical machines") {
  gen::SchedOptions opt;
  opt.unit_weights = true;
  std::mt19937_64 rng(2222);
  GameInstance g = gen::random_sched(rng, 4, 2, opt);
  g.machine_delays = {Rational(1), Rational(1)};
  Profile s = ne_greedy_singleton(g);
  int on_m1 = static_cast<int>(std::count(s.choice.begin(), s.choice.end(), 0));
  CHECK(on_m1 == 2);
  CHECK(objective_value(GameView(g), s, Objective::Makespan) == 2);
}

TEST_CASE("unit-weight greedy resolves the (1,3) delay case exactly") {
  GameInstance g;
  g.job_ids = {"j1", "j2", "j3"};
  g.job_weights = {Rational(1), Rational(1), Rational(1)};
  g.machine_ids = {"M1", "M2"};
  g.machine_delays = {Rational(1), Rational(3)};
  auto order = PriorityList::from_order({0, 1, 2}, 3);
  g.machine_priority = {order, order};
  Profile s = ne_greedy_singleton(g);
  CHECK(s.choice == std::vector<int>{0, 0, 0});  // next-slot costs 1,2,3 beat 3
  GameView view(g);
  CHECK(is_nash(view, s).stable);
  CHECK(objective_value(view, s, Objective::Makespan) == 3);
  CHECK(social_optimum(view, Objective::Makespan, BigInt(100)).second == 3);
}

TEST_CASE("all unit-weight equilibria share the greedy's sorted cost vector") {
  std::mt19937_64 rng(606);
  gen::SchedOptions opt;
  opt.unit_weights = true;
  for (int trial = 0; trial < 40; ++trial) {
    GameInstance g = gen::random_sched(rng, 2 + trial % 5, 2 + trial % 3, opt);
    GameView view(g);
    Profile greedy = ne_greedy_singleton(g);
    CHECK(is_nash(view, greedy).stable);
    auto sorted_costs = [&](const Profile& s) {
      std::vector<Rational> costs;
      for (int i = 0; i < g.job_count(); ++i) costs.push_back(view.cost(s, i));
      std::sort(costs.begin(), costs.end());
      return costs;
    };
    auto reference = sorted_costs(greedy);
    for (const Profile& ne : enumerate_nash(view, BigInt(100000))) {
      CHECK(sorted_costs(ne) == reference);
    }
  }
}

TEST_CASE("identical-delay construction on the heavy-job family") {
  GameInstance g = pos_g3(3);
  Profile s = ne_identical_machines(g);
  GameView view(g);
  CHECK(is_nash(view, s).stable);
  CHECK(objective_value(view, s, Objective::Makespan) == 5);  // 2m-1
}

TEST_CASE("identical-delay construction, single machine") {
  GameInstance g;
  g.job_ids = {"j1", "j2"};
  g.job_weights = {Rational(2), Rational(3)};
  g.machine_ids = {"M1"};
  g.machine_delays = {Rational(1)};
  g.machine_priority = {PriorityList::from_order({1, 0}, 2)};
  Profile s = ne_identical_machines(g);
  CHECK(s.choice == std::vector<int>{0, 0});
  CHECK(is_nash(GameView(g), s).stable);
}

TEST_CASE("identical-delay construction is sound on random instances") {
  std::mt19937_64 rng(303);
  gen::SchedOptions opt;
  opt.identical_delays = true;
  for (int trial = 0; trial < 60; ++trial) {
    GameInstance g = gen::random_sched(rng, 2 + trial % 6, 2 + trial % 2, opt);
    Profile s = ne_identical_machines(g);
    CHECK(is_nash(GameView(g), s).stable);
  }
}

TEST_CASE("global-list construction seats the leading jobs first") {
  GameInstance g = pos_g4_sumct(4, Rational(2), Rational(1, 100));
  Profile s = ne_global_list(g);
  GameView view(g);
  CHECK(is_nash(view, s).stable);
  CHECK(s.choice[0] == 0);                       // a first on the fast machine
  CHECK(s.choice[1] == 1);                       // b first on the slow machine
  CHECK(view.cost(s, 0) == 1);
  CHECK(view.cost(s, 1) == 1);                   // c * 1/c
}

TEST_CASE("global-list construction is an equilibrium member on random instances") {
  std::mt19937_64 rng(707);
  gen::SchedOptions opt;
  opt.global_list = true;
  for (int trial = 0; trial < 40; ++trial) {
    GameInstance g = gen::random_sched(rng, 2 + trial % 5, 2 + trial % 2, opt);
    Profile s = ne_global_list(g);
    GameView view(g);
    CHECK(is_nash(view, s).stable);
    auto all = enumerate_nash(view, BigInt(100000));
    CHECK(std::find(all.begin(), all.end(), s) != all.end());
  }
}

TEST_CASE("counter construction splits the paired-triplet instance") {
  // Two unit players over six linear resources, partition matroids pairing
  // opposite slots; the rotating priorities of the 3-player gadget.
  CongestionInstance g;
  g.player_ids = {"p1", "p2"};
  g.player_weights = {Rational(1), Rational(1)};
  for (int e = 1; e <= 6; ++e) {
    g.resource_ids.push_back("e" + std::to_string(e));
    g.resource_costs.push_back(CostPolynomial::linear(Rational(1)));
    int r1 = (1 + e - 2) % 3;
    int r2 = (2 + e - 2) % 3;
    g.resource_priority.push_back(
        PriorityList::from_order(r1 < r2 ? std::vector<int>{0, 1} : std::vector<int>{1, 0}, 2));
  }
  StrategySpace sp;
  sp.matroid = MatroidPartition{{{0, 3}, {1, 4}, {2, 5}}, {1, 1, 1}};
  g.strategies = {sp, sp};
  g.validate();
  Profile s = ne_matroid_unit(g);
  GameView view(g);
  CHECK(is_nash(view, s).stable);
  CHECK(view.cost(s, 0) == 3);
  CHECK(view.cost(s, 1) == 3);
  auto s1 = chosen_set(g, s, 0);
  auto s2 = chosen_set(g, s, 1);
  std::vector<int> overlap;
  std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(),
                        std::back_inserter(overlap));
  CHECK(overlap.empty());
}

TEST_CASE("counter construction matches the unit greedy for rank-1 matroids") {
  // Rank-1 uniform matroids over all machines == unit-weight singleton
  // scheduling; the two constructions must agree on sorted costs.
  std::mt19937_64 rng(808);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + trial % 4;
    int m = 2 + trial % 3;
    gen::SchedOptions opt;
    opt.unit_weights = true;
    opt.global_list = true;
    GameInstance sched = gen::random_sched(rng, n, m, opt);
    CongestionInstance cong;
    cong.player_ids = sched.job_ids;
    cong.player_weights.assign(n, Rational(1));
    cong.resource_ids = sched.machine_ids;
    std::vector<int> ground(m);
    std::iota(ground.begin(), ground.end(), 0);
    for (int j = 0; j < m; ++j) {
      cong.resource_costs.push_back(CostPolynomial::linear(sched.machine_delays[j]));
      cong.resource_priority.push_back(sched.machine_priority[j]);
    }
    StrategySpace sp;
    sp.matroid = MatroidUniform{1, ground};
    cong.strategies.assign(n, sp);
    cong.validate();

    GameView sched_view(sched);
    GameView cong_view(cong);
    Profile a = ne_greedy_singleton(sched);
    Profile b = ne_matroid_unit(cong);
    auto sorted_costs = [](const GameView& v, const Profile& s) {
      std::vector<Rational> costs;
      for (int i = 0; i < v.players(); ++i) costs.push_back(v.cost(s, i));
      std::sort(costs.begin(), costs.end());
      return costs;
    };
    CHECK(sorted_costs(sched_view, a) == sorted_costs(cong_view, b));
  }
}

TEST_CASE("counter construction gives one player a cheapest basis") {
  CongestionInstance g;
  g.player_ids = {"p"};
  g.player_weights = {Rational(1)};
  for (int e = 1; e <= 4; ++e) {
    g.resource_ids.push_back("e" + std::to_string(e));
    g.resource_costs.push_back(CostPolynomial::linear(Rational(e)));
    g.resource_priority.push_back(PriorityList::from_order({0}, 1));
  }
  StrategySpace sp;
  sp.matroid = MatroidUniform{2, {0, 1, 2, 3}};
  g.strategies = {sp};
  g.validate();
  Profile s = ne_matroid_unit(g);
  CHECK(chosen_set(g, s, 0) == std::vector<int>{0, 1});  // costs 1 and 2
}

TEST_CASE("constructions refuse out-of-class instances") {
  CHECK_THROWS_AS(ne_two_machines(gstar5()), UnsupportedError);
  CHECK_THROWS_AS(ne_greedy_singleton(gstar5()), UnsupportedError);
  CHECK_THROWS_AS(ne_identical_machines(gstar5()), UnsupportedError);
  CHECK_THROWS_AS(ne_global_list(gstar5()), UnsupportedError);
  CHECK_THROWS_AS(ne_matroid_unit(condorcet()), UnsupportedError);
  CongestionInstance weighted = approx32();
  CHECK_THROWS_AS(ne_matroid_unit(weighted), UnsupportedError);
}
