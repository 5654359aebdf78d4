#include "prio/metrics.hpp"

#include <algorithm>

namespace prio {

Rational objective_value(const GameView& g, const Profile& s, Objective objective) {
  if (objective == Objective::SumWeightedCosts) {
    if (g.is_scheduling()) {
      throw DomainError("sum of weighted costs applies to congestion instances");
    }
  } else if (!g.is_scheduling()) {
    throw DomainError("makespan objectives apply to scheduling instances");
  }
  Rational acc(0);
  for (int i = 0; i < g.players(); ++i) {
    Rational c = g.cost(s, i);
    if (objective == Objective::Makespan) {
      if (c > acc) acc = c;
    } else {
      acc += c;
    }
  }
  return acc;
}

std::pair<Profile, Rational> social_optimum(const GameView& g, Objective objective,
                                            const BigInt& profile_budget) {
  BigInt space = g.profile_space();
  if (space > profile_budget) {
    throw BudgetExceeded("profile space of " + space.str() +
                             " exceeds budget of " + profile_budget.str(),
                         space);
  }
  int n = g.players();
  Profile s;
  s.choice.assign(n, 0);
  std::optional<Rational> best;
  Profile best_profile = s;
  while (true) {
    Rational v = objective_value(g, s, objective);
    if (!best || v < *best) {
      best = v;
      best_profile = s;
    }
    int i = n - 1;
    while (i >= 0 && s.choice[i] + 1 >= g.strategy_count(i)) {
      s.choice[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++s.choice[i];
  }
  return {best_profile, *best};
}

std::optional<InefficiencyReport> inefficiency(const GameView& g, Objective objective,
                                               const BigInt& profile_budget) {
  std::vector<Profile> nash = enumerate_nash(g, profile_budget);
  if (nash.empty()) return std::nullopt;
  auto [opt_profile, opt_value] = social_optimum(g, objective, profile_budget);
  InefficiencyReport report;
  report.ne_count = static_cast<long>(nash.size());
  report.opt_value = opt_value;
  report.opt_profile = opt_profile;
  bool first = true;
  for (const Profile& s : nash) {
    Rational v = objective_value(g, s, objective);
    if (first || v < report.best_ne_value) {
      report.best_ne_value = v;
      report.best_ne_profile = s;
    }
    if (first || v > report.worst_ne_value) {
      report.worst_ne_value = v;
      report.worst_ne_profile = s;
    }
    first = false;
  }
  report.poa = report.worst_ne_value / opt_value;
  report.pos = report.best_ne_value / opt_value;
  return report;
}

namespace {

// Bisect the sign change of `f` over [lo, hi] to width <= `width`.
template <typename F>
RationalInterval bisect(F f, Rational lo, Rational hi, const Rational& width) {
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    if (f(mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

Rational pow_rational(const Rational& base, int exp) {
  Rational acc(1);
  for (int k = 0; k < exp; ++k) acc *= base;
  return acc;
}

const Rational kBisectWidth = Rational(1, 1000000000);

}  // namespace

RationalInterval golden_ratio_bracket() {
  auto f = [](const Rational& x) { return x * x - x - 1; };
  return bisect(f, Rational(1), Rational(2), kBisectWidth);
}

RationalInterval poly_poa_bound(int degree) {
  if (degree < 1) throw DomainError("degree must be at least 1");
  auto f = [degree](const Rational& x) {
    return pow_rational(x, degree + 1) -
           Rational(degree + 1) * pow_rational(x + 1, degree);
  };
  Rational lo(1);
  Rational hi(2);
  while (f(hi) < 0) hi *= 2;
  RationalInterval root = bisect(f, lo, hi, kBisectWidth);
  return {pow_rational(root.lo, degree + 1), pow_rational(root.hi, degree + 1)};
}

bool check_bound(const GameView& g, Objective objective, BoundId bound,
                 const BigInt& profile_budget) {
  auto report = inefficiency(g, objective, profile_budget);
  if (!report) return true;  // vacuous without an NE
  const Rational& poa = report->poa;
  switch (bound) {
    case BoundId::UnitWeightsExact:
      return poa == 1 && report->pos == 1;
    case BoundId::TwoMachinesMakespan: {
      const GameInstance& inst = g.scheduling();
      if (inst.machine_count() != 2) throw DomainError("bound needs two machines");
      Rational c_fast = std::min(inst.machine_delays[0], inst.machine_delays[1]);
      Rational c_slow = std::max(inst.machine_delays[0], inst.machine_delays[1]);
      Rational c = c_slow / c_fast;  // normalized slow-machine delay
      Rational below = 1 + c / (c + 1);
      Rational above = 1 + 1 / c;
      RationalInterval phi = golden_ratio_bracket();
      if (c <= phi.lo) return poa <= below;
      if (c >= phi.hi) return poa <= above;
      // c lies inside the bracket; both regimes agree up to its width.
      return poa <= std::max(below, above);
    }
    case BoundId::IdenticalMakespan: {
      int m = g.scheduling().machine_count();
      return poa <= 2 - Rational(1, m);
    }
    case BoundId::IdenticalSumCompletion: {
      int n = g.scheduling().job_count();
      int m = g.scheduling().machine_count();
      return poa <= Rational(n - 1, m) + 1;
    }
    case BoundId::CongestionLinear:
      return poa <= 4;
  }
  throw DomainError("unknown bound id");
}

bool smoothness_check(const CongestionInstance& g, const Profile& s,
                      const Profile& s_prime) {
  for (const auto& poly : g.resource_costs) {
    for (std::size_t k = 2; k < poly.coeffs.size(); ++k) {
      if (poly.coeffs[k] != 0) {
        throw UnsupportedError("smoothness constants (2, 1/2) are affine-specific");
      }
    }
  }
  GameView view(g);
  validate_profile(g, s);
  validate_profile(g, s_prime);
  Rational deviation_sum(0);
  for (int i = 0; i < g.player_count(); ++i) {
    deviation_sum += view.deviation_cost(s, i, s_prime.choice[i]);
  }
  Rational cost_s = objective_value(view, s, Objective::SumWeightedCosts);
  Rational cost_sp = objective_value(view, s_prime, Objective::SumWeightedCosts);
  return deviation_sum <= 2 * cost_sp + cost_s / 2;
}

}  // namespace prio
