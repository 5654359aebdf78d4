#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "prio/model.hpp"

namespace prio {

// Uniform read-only view over both instance kinds. Congestion strategy
// lists are materialized once per view, so repeated cost queries (dynamics,
// exhaustive scans) do not re-enumerate matroid bases.
class GameView {
 public:
  explicit GameView(const GameInstance& g);
  explicit GameView(const CongestionInstance& g);
  // Views borrow the instance; constructing one over a temporary dangles.
  explicit GameView(GameInstance&&) = delete;
  explicit GameView(CongestionInstance&&) = delete;

  bool is_scheduling() const { return sched_ != nullptr; }
  const GameInstance& scheduling() const { return *sched_; }
  const CongestionInstance& congestion() const { return *cong_; }

  int players() const;
  int strategy_count(int player) const;
  const std::vector<int>& strategy_set(int player, int index) const;  // congestion
  BigInt profile_space() const;

  Rational cost(const Profile& s, int player) const;
  // Cost of `player` if it alone switched to `strategy`.
  Rational deviation_cost(const Profile& s, int player, int strategy) const;

 private:
  const GameInstance* sched_ = nullptr;
  const CongestionInstance* cong_ = nullptr;
  std::vector<std::vector<std::vector<int>>> lists_;  // congestion only
};

enum class TieBreak { KeepCurrent, LowestIndex };

struct BestResponse {
  int strategy;
  Rational cost;
};

// Cost-minimizing strategy. Ties keep the current strategy (weak NE
// semantics) unless TieBreak::LowestIndex is requested.
BestResponse best_response(const GameView& g, const Profile& s, int player,
                           TieBreak tie = TieBreak::KeepCurrent);

struct NashWitness {
  int player;
  int strategy;  // improving deviation
};

struct NashResult {
  bool stable;
  std::optional<NashWitness> witness;  // set when !stable
  explicit operator bool() const { return stable; }
};

NashResult is_nash(const GameView& g, const Profile& s);
// Same check, but players probed in `check_order` (useful for fail-fast
// scans over structured instances).
NashResult is_nash(const GameView& g, const Profile& s,
                   const std::vector<int>& check_order);

// alpha >= 1. Stable iff no deviation has cost(dev) < cost(current)/alpha;
// an improvement by a factor of exactly alpha is tolerated.
NashResult is_alpha_nash(const GameView& g, const Profile& s, const Rational& alpha);

// All NE profiles in lexicographic order (player 0 most significant).
// Refuses with BudgetExceeded when the profile space exceeds the budget.
std::vector<Profile> enumerate_nash(const GameView& g, const BigInt& profile_budget);

enum class SelectionRule { RoundRobin, LowestId, PriorityOrder };

struct DynamicsPolicy {
  SelectionRule rule = SelectionRule::RoundRobin;
  // Machine/resource whose priority list orders the scan under PriorityOrder.
  int priority_source = 0;
  TieBreak tie_break = TieBreak::KeepCurrent;
};

struct DynamicsMove {
  int player;
  int from;
  int to;
  Rational old_cost;
  Rational new_cost;
};

enum class TerminalStatus { Converged, CycleDetected, StepLimit };

struct DynamicsTrace {
  std::vector<DynamicsMove> moves;
  TerminalStatus status;
  Profile final_profile;
  // Step index (into the visited-profile sequence) of the first occurrence
  // of the repeated profile; -1 unless status == CycleDetected.
  long cycle_start = -1;
};

long default_step_limit(const GameView& g);

DynamicsTrace run_dynamics(const GameView& g, Profile initial,
                           const DynamicsPolicy& policy, long step_limit);

// Single-resource exchange improving move for unit-weight matroid games.
struct LazyMove {
  int player;
  int new_strategy;  // index into the player's canonical strategy list
  std::vector<int> enters;  // singleton, the entering resource
  std::vector<int> leaves;  // singleton, the leaving resource
};

// Deterministic: lowest player id, then cheapest entering resource (by its
// marginal cost in the new profile), then lowest entering/leaving id.
// Returns nullopt when no lazy move improves.
std::optional<LazyMove> lazy_better_response_step(const CongestionInstance& g,
                                                  const Profile& s);

int index_of_strategy(const CongestionInstance& g, int player,
                      const std::vector<int>& set);

// Multiset of (cost, rank) incidences underlying the lazy-dynamics
// potential: for each resource, its t-th user contributes the resource cost
// at load t and the user's global priority rank.
struct PotentialSignature {
  std::vector<std::pair<Rational, int>> elements;  // sorted by (cost, rank)
};

PotentialSignature potential_signature(const CongestionInstance& g, const Profile& s);

enum class PotentialOrder { Less, Equal, Greater, Incomparable };

// Order of `a` relative to `b`: Less means a precedes b (a is reached from
// b by improving lazy moves). Unit-weight instances only.
PotentialOrder potential_compare(const CongestionInstance& g, const Profile& a,
                                 const Profile& b);

// Exhaustive NE scan over a restricted profile space. Supports a custom
// assignment order, per-player candidate strategies, canonical
// (nondecreasing-choice) enumeration within groups of interchangeable
// players, and a pruning hook invoked after each partial assignment.
struct ScanSpec {
  std::vector<int> order;                          // default: 0..n-1
  std::vector<std::vector<int>> allowed;           // default: all strategies
  std::vector<std::vector<int>> symmetric_groups;  // players in canonical order
  // depth = number of assigned players (prefix of `order`); return false to cut.
  std::function<bool(int depth, const Profile& partial)> prune;
  std::vector<int> check_order;  // deviation probe order at leaves
};

std::vector<Profile> scan_nash(const GameView& g, const ScanSpec& spec);

}  // namespace prio
