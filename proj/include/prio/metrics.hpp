#pragma once

#include <optional>

#include "prio/equilibria.hpp"
#include "prio/model.hpp"

namespace prio {

enum class Objective {
  Makespan,            // scheduling: max completion time
  SumCompletionTimes,  // scheduling: total completion time
  SumWeightedCosts,    // congestion: sum of weighted player costs
};

Rational objective_value(const GameView& g, const Profile& s, Objective objective);

// Exhaustive minimizer; ties keep the first profile in lexicographic order.
std::pair<Profile, Rational> social_optimum(const GameView& g, Objective objective,
                                            const BigInt& profile_budget);

struct InefficiencyReport {
  BigInt ne_count;
  Rational opt_value;
  Rational best_ne_value;
  Rational worst_ne_value;
  Rational poa;  // worst NE / OPT
  Rational pos;  // best NE / OPT
  Profile opt_profile;
  Profile best_ne_profile;
  Profile worst_ne_profile;
};

// nullopt when the instance has no NE.
std::optional<InefficiencyReport> inefficiency(const GameView& g, Objective objective,
                                               const BigInt& profile_budget);

// Exact rational bracket [lo, hi] around an irrational value.
struct RationalInterval {
  Rational lo;
  Rational hi;
};

// Bracket of the golden ratio (sqrt(5)+1)/2, width <= 1e-9.
RationalInterval golden_ratio_bracket();

enum class BoundId {
  UnitWeightsExact,       // PoA = 1, both objectives
  TwoMachinesMakespan,    // PoA <= 1+c/(c+1) below the golden ratio, else 1+1/c
  IdenticalMakespan,      // PoA <= 2 - 1/m
  IdenticalSumCompletion, // PoA <= (n-1)/m + 1
  CongestionLinear,       // PoA <= 4
};

// Evaluates the class-specific inefficiency bound against the exact PoA.
// Instances without an NE vacuously pass. Bounds at an irrational
// threshold are decided by rational-interval comparison.
bool check_bound(const GameView& g, Objective objective, BoundId bound,
                 const BigInt& profile_budget);

// (2, 1/2)-smoothness inequality for one profile pair on a linear-cost
// congestion instance: sum_i cost_i(s'_i, s_{-i}) <= 2 cost(s') + cost(s)/2.
bool smoothness_check(const CongestionInstance& g, const Profile& s,
                      const Profile& s_prime);

// Bracket of phi^(d+1) where phi is the unique positive solution of
// x^(d+1) = (d+1)(x+1)^d; bisection to width <= 1e-9 before powering.
RationalInterval poly_poa_bound(int degree);

}  // namespace prio
