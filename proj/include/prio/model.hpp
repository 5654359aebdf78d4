#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "prio/errors.hpp"
#include "prio/rational.hpp"

namespace prio {

// Total order over the players of one machine/resource. Rank 1 is processed
// first; ranks are dense 1..n over exactly the instance's player set.
struct PriorityList {
  std::vector<int> order;  // player indices, highest priority first
  std::vector<int> rank;   // player index -> 1..n

  static PriorityList from_order(std::vector<int> order, int player_count);

  int size() const { return static_cast<int>(order.size()); }
  bool precedes_or_equal(int a, int b) const { return rank[a] <= rank[b]; }
};

// Scheduling game: jobs pick one machine each; each machine processes its
// jobs in its own priority order, completion = delay * predecessor weight.
struct GameInstance {
  std::vector<std::string> job_ids;
  std::vector<Rational> job_weights;
  std::vector<std::string> machine_ids;
  std::vector<Rational> machine_delays;
  std::vector<PriorityList> machine_priority;
  // Unrelated extension: weight_on(job, machine) overrides job_weights.
  // When present the matrix must cover every (job, machine) pair.
  std::optional<std::vector<std::vector<Rational>>> unrelated_weights;

  int job_count() const { return static_cast<int>(job_ids.size()); }
  int machine_count() const { return static_cast<int>(machine_ids.size()); }
  const Rational& weight_on(int job, int machine) const;
  void validate() const;
};

// Nonnegative-coefficient polynomial; index k holds the coefficient of x^k.
struct CostPolynomial {
  std::vector<Rational> coeffs;

  static CostPolynomial linear(Rational slope) { return {{Rational(0), std::move(slope)}}; }
  static CostPolynomial monomial(int degree, Rational coeff = Rational(1));

  int degree() const;
  bool is_linear() const { return degree() <= 1; }
  Rational eval(const Rational& load) const;  // Horner; load must be >= 0
};

struct MatroidUniform {
  int rank = 0;
  std::vector<int> ground;  // sorted resource indices
};
struct MatroidPartition {
  std::vector<std::vector<int>> blocks;  // disjoint, sorted
  std::vector<int> quotas;               // one per block
};
struct MatroidBases {
  std::vector<std::vector<int>> bases;  // each sorted; all same size
};
using MatroidDescriptor = std::variant<MatroidUniform, MatroidPartition, MatroidBases>;

int matroid_rank(const MatroidDescriptor& m);
// Independence test; `set` must be sorted. Elements outside the matroid's
// ground set make the set dependent.
bool matroid_independent(const MatroidDescriptor& m, const std::vector<int>& set);
bool matroid_contains(const MatroidDescriptor& m, int resource);
// All bases, lexicographically ordered by sorted element list.
std::vector<std::vector<int>> matroid_bases(const MatroidDescriptor& m);

// Per-player strategy universe: explicit subsets or the bases of a matroid.
struct StrategySpace {
  std::optional<std::vector<std::vector<int>>> explicit_sets;  // each sorted
  std::optional<MatroidDescriptor> matroid;

  bool is_matroid() const { return matroid.has_value(); }
};

struct CongestionInstance {
  std::vector<std::string> player_ids;
  std::vector<Rational> player_weights;
  std::vector<std::string> resource_ids;
  std::vector<CostPolynomial> resource_costs;
  std::vector<PriorityList> resource_priority;
  std::vector<StrategySpace> strategies;  // per player

  int player_count() const { return static_cast<int>(player_ids.size()); }
  int resource_count() const { return static_cast<int>(resource_ids.size()); }
  bool all_matroid() const;
  bool unit_weights() const;
  void validate() const;
};

// Canonical strategy list of one player: explicit sets in declared order,
// matroid bases in lexicographic order. Strategy indices used in Profile
// refer to this list.
std::vector<std::vector<int>> strategy_list(const CongestionInstance& g, int player);

// One chosen strategy per player: a machine index for scheduling instances,
// an index into strategy_list() for congestion instances.
struct Profile {
  std::vector<int> choice;

  bool operator==(const Profile&) const = default;
  auto operator<=>(const Profile&) const = default;
};

void validate_profile(const GameInstance& g, const Profile& s);
void validate_profile(const CongestionInstance& g, const Profile& s);

// Players on job's machine with priority rank <= the job's own (the job
// itself included).
std::vector<int> predecessors(const GameInstance& g, const Profile& s, int job);
std::vector<int> predecessors(const CongestionInstance& g, const Profile& s,
                              int player, int resource);

// Completion time: delay of the chosen machine times total predecessor
// weight (machine-specific weights under the unrelated extension).
Rational job_cost(const GameInstance& g, const Profile& s, int job);

// w_i * sum over chosen resources of c_e(predecessor weight on e).
Rational player_cost(const CongestionInstance& g, const Profile& s, int player);

// Chosen resource subset of a player under a profile.
std::vector<int> chosen_set(const CongestionInstance& g, const Profile& s, int player);

}  // namespace prio
