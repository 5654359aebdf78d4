#include "prio/model.hpp"

#include <algorithm>
#include <set>

namespace prio {

PriorityList PriorityList::from_order(std::vector<int> order, int player_count) {
  if (static_cast<int>(order.size()) != player_count) {
    throw InvalidInstance("priority list does not cover the player set");
  }
  PriorityList pl;
  pl.rank.assign(player_count, 0);
  for (int pos = 0; pos < player_count; ++pos) {
    int p = order[pos];
    if (p < 0 || p >= player_count) {
      throw InvalidInstance("priority list references unknown player");
    }
    if (pl.rank[p] != 0) {
      throw InvalidInstance("priority list repeats a player");
    }
    pl.rank[p] = pos + 1;
  }
  pl.order = std::move(order);
  return pl;
}

const Rational& GameInstance::weight_on(int job, int machine) const {
  if (unrelated_weights) return (*unrelated_weights)[job][machine];
  return job_weights[job];
}

void GameInstance::validate() const {
  int n = job_count();
  int m = machine_count();
  if (n < 1) throw InvalidInstance("instance needs at least one job");
  if (m < 1) throw InvalidInstance("instance needs at least one machine");
  if (static_cast<int>(job_weights.size()) != n ||
      static_cast<int>(machine_delays.size()) != m ||
      static_cast<int>(machine_priority.size()) != m) {
    throw InvalidInstance("mismatched field lengths");
  }
  std::set<std::string> seen;
  for (const auto& id : job_ids) {
    if (!seen.insert(id).second) throw InvalidInstance("duplicate job id: " + id);
  }
  seen.clear();
  for (const auto& id : machine_ids) {
    if (!seen.insert(id).second) throw InvalidInstance("duplicate machine id: " + id);
  }
  for (const auto& w : job_weights) {
    if (w <= 0) throw InvalidInstance("job weights must be positive");
  }
  for (const auto& c : machine_delays) {
    if (c <= 0) throw InvalidInstance("machine delays must be positive");
  }
  for (int j = 0; j < m; ++j) {
    if (machine_priority[j].size() != n || machine_priority[j].rank.empty()) {
      throw InvalidInstance("priority list of machine " + machine_ids[j] +
                            " does not cover the job set");
    }
  }
  if (unrelated_weights) {
    if (static_cast<int>(unrelated_weights->size()) != n) {
      throw InvalidInstance("unrelated weight matrix must cover all jobs");
    }
    for (const auto& row : *unrelated_weights) {
      if (static_cast<int>(row.size()) != m) {
        throw InvalidInstance("unrelated weight matrix must cover all machines");
      }
      for (const auto& w : row) {
        if (w <= 0) throw InvalidInstance("unrelated weights must be positive");
      }
    }
  }
}

CostPolynomial CostPolynomial::monomial(int degree, Rational coeff) {
  CostPolynomial p;
  p.coeffs.assign(degree + 1, Rational(0));
  p.coeffs[degree] = std::move(coeff);
  return p;
}

int CostPolynomial::degree() const {
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
    if (coeffs[k] != 0) return k;
  }
  return 0;
}

Rational CostPolynomial::eval(const Rational& load) const {
  if (load < 0) throw DomainError("cost polynomial evaluated at negative load");
  Rational acc(0);
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
    acc = acc * load + coeffs[k];
  }
  return acc;
}

int matroid_rank(const MatroidDescriptor& m) {
  return std::visit(
      [](const auto& d) -> int {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, MatroidUniform>) {
          return d.rank;
        } else if constexpr (std::is_same_v<T, MatroidPartition>) {
          int r = 0;
          for (int q : d.quotas) r += q;
          return r;
        } else {
          return d.bases.empty() ? 0 : static_cast<int>(d.bases.front().size());
        }
      },
      m);
}

bool matroid_contains(const MatroidDescriptor& m, int resource) {
  return std::visit(
      [resource](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, MatroidUniform>) {
          return std::binary_search(d.ground.begin(), d.ground.end(), resource);
        } else if constexpr (std::is_same_v<T, MatroidPartition>) {
          for (const auto& block : d.blocks) {
            if (std::binary_search(block.begin(), block.end(), resource)) return true;
          }
          return false;
        } else {
          for (const auto& basis : d.bases) {
            if (std::binary_search(basis.begin(), basis.end(), resource)) return true;
          }
          return false;
        }
      },
      m);
}

bool matroid_independent(const MatroidDescriptor& m, const std::vector<int>& set) {
  return std::visit(
      [&set](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, MatroidUniform>) {
          if (static_cast<int>(set.size()) > d.rank) return false;
          for (int e : set) {
            if (!std::binary_search(d.ground.begin(), d.ground.end(), e)) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, MatroidPartition>) {
          for (std::size_t b = 0; b < d.blocks.size(); ++b) {
            int in_block = 0;
            for (int e : set) {
              if (std::binary_search(d.blocks[b].begin(), d.blocks[b].end(), e)) {
                ++in_block;
              }
            }
            if (in_block > d.quotas[b]) return false;
          }
          for (int e : set) {
            bool found = false;
            for (const auto& block : d.blocks) {
              if (std::binary_search(block.begin(), block.end(), e)) {
                found = true;
                break;
              }
            }
            if (!found) return false;
          }
          return true;
        } else {
          for (const auto& basis : d.bases) {
            if (std::includes(basis.begin(), basis.end(), set.begin(), set.end())) {
              return true;
            }
          }
          return false;
        }
      },
      m);
}

namespace {

void collect_subsets(const std::vector<int>& universe, int k, std::size_t from,
                     std::vector<int>& acc, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(acc.size()) == k) {
    out.push_back(acc);
    return;
  }
  for (std::size_t i = from; i < universe.size(); ++i) {
    acc.push_back(universe[i]);
    collect_subsets(universe, k, i + 1, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> matroid_bases(const MatroidDescriptor& m) {
  std::vector<std::vector<int>> out;
  std::visit(
      [&out](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, MatroidUniform>) {
          std::vector<int> acc;
          collect_subsets(d.ground, d.rank, 0, acc, out);
        } else if constexpr (std::is_same_v<T, MatroidPartition>) {
          std::vector<std::vector<std::vector<int>>> per_block;
          for (std::size_t b = 0; b < d.blocks.size(); ++b) {
            std::vector<std::vector<int>> sets;
            std::vector<int> acc;
            collect_subsets(d.blocks[b], d.quotas[b], 0, acc, sets);
            per_block.push_back(std::move(sets));
          }
          std::vector<std::vector<int>> partial{{}};
          for (const auto& sets : per_block) {
            std::vector<std::vector<int>> next;
            for (const auto& head : partial) {
              for (const auto& tail : sets) {
                auto merged = head;
                merged.insert(merged.end(), tail.begin(), tail.end());
                next.push_back(std::move(merged));
              }
            }
            partial = std::move(next);
          }
          out = std::move(partial);
          for (auto& basis : out) std::sort(basis.begin(), basis.end());
        } else {
          out = d.bases;
        }
      },
      m);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool CongestionInstance::all_matroid() const {
  for (const auto& sp : strategies) {
    if (!sp.is_matroid()) return false;
  }
  return true;
}

bool CongestionInstance::unit_weights() const {
  for (const auto& w : player_weights) {
    if (w != 1) return false;
  }
  return true;
}

void CongestionInstance::validate() const {
  int n = player_count();
  int r = resource_count();
  if (n < 1) throw InvalidInstance("instance needs at least one player");
  if (r < 1) throw InvalidInstance("instance needs at least one resource");
  if (static_cast<int>(player_weights.size()) != n ||
      static_cast<int>(resource_costs.size()) != r ||
      static_cast<int>(resource_priority.size()) != r ||
      static_cast<int>(strategies.size()) != n) {
    throw InvalidInstance("mismatched field lengths");
  }
  std::set<std::string> seen;
  for (const auto& id : player_ids) {
    if (!seen.insert(id).second) throw InvalidInstance("duplicate player id: " + id);
  }
  seen.clear();
  for (const auto& id : resource_ids) {
    if (!seen.insert(id).second) throw InvalidInstance("duplicate resource id: " + id);
  }
  for (const auto& w : player_weights) {
    if (w <= 0) throw InvalidInstance("player weights must be positive");
  }
  for (const auto& poly : resource_costs) {
    for (const auto& c : poly.coeffs) {
      if (c < 0) throw InvalidInstance("cost coefficients must be nonnegative");
    }
  }
  for (int e = 0; e < r; ++e) {
    if (resource_priority[e].size() != n) {
      throw InvalidInstance("priority list of resource " + resource_ids[e] +
                            " does not cover the player set");
    }
  }
  for (int i = 0; i < n; ++i) {
    const auto& sp = strategies[i];
    if (sp.explicit_sets.has_value() == sp.matroid.has_value()) {
      throw InvalidInstance("player " + player_ids[i] +
                            " needs exactly one of explicit strategies or a matroid");
    }
    if (sp.explicit_sets) {
      if (sp.explicit_sets->empty()) {
        throw InvalidInstance("player " + player_ids[i] + " has an empty strategy set");
      }
      for (const auto& set : *sp.explicit_sets) {
        if (set.empty()) {
          throw InvalidInstance("player " + player_ids[i] + " has an empty strategy");
        }
        for (std::size_t k = 0; k < set.size(); ++k) {
          if (set[k] < 0 || set[k] >= r) {
            throw InvalidInstance("strategy references unknown resource");
          }
          if (k > 0 && set[k] <= set[k - 1]) {
            throw InvalidInstance("strategy subsets must be strictly sorted");
          }
        }
      }
    } else {
      if (matroid_rank(*sp.matroid) < 1) {
        throw InvalidInstance("player " + player_ids[i] + " has a rank-0 matroid");
      }
      const auto& md = *sp.matroid;
      auto check_elems = [&](const std::vector<int>& elems) {
        for (std::size_t k = 0; k < elems.size(); ++k) {
          if (elems[k] < 0 || elems[k] >= r) {
            throw InvalidInstance("matroid references unknown resource");
          }
          if (k > 0 && elems[k] <= elems[k - 1]) {
            throw InvalidInstance("matroid element lists must be strictly sorted");
          }
        }
      };
      if (const auto* u = std::get_if<MatroidUniform>(&md)) {
        check_elems(u->ground);
        if (u->rank > static_cast<int>(u->ground.size())) {
          throw InvalidInstance("uniform matroid rank exceeds ground size");
        }
      } else if (const auto* p = std::get_if<MatroidPartition>(&md)) {
        if (p->blocks.size() != p->quotas.size()) {
          throw InvalidInstance("partition matroid needs one quota per block");
        }
        std::set<int> all;
        for (std::size_t b = 0; b < p->blocks.size(); ++b) {
          check_elems(p->blocks[b]);
          if (p->quotas[b] < 0 ||
              p->quotas[b] > static_cast<int>(p->blocks[b].size())) {
            throw InvalidInstance("partition quota out of range");
          }
          for (int e : p->blocks[b]) {
            if (!all.insert(e).second) {
              throw InvalidInstance("partition blocks must be disjoint");
            }
          }
        }
      } else {
        const auto& bs = std::get<MatroidBases>(md);
        if (bs.bases.empty()) throw InvalidInstance("explicit-bases matroid is empty");
        std::size_t card = bs.bases.front().size();
        for (const auto& basis : bs.bases) {
          check_elems(basis);
          if (basis.size() != card) {
            throw InvalidInstance("all bases must have the same cardinality");
          }
        }
      }
    }
  }
}

std::vector<std::vector<int>> strategy_list(const CongestionInstance& g, int player) {
  if (player < 0 || player >= g.player_count()) {
    throw InvalidReference("unknown player index");
  }
  const auto& sp = g.strategies[player];
  if (sp.explicit_sets) return *sp.explicit_sets;
  return matroid_bases(*sp.matroid);
}

void validate_profile(const GameInstance& g, const Profile& s) {
  if (static_cast<int>(s.choice.size()) != g.job_count()) {
    throw InvalidReference("profile does not assign every job");
  }
  for (int c : s.choice) {
    if (c < 0 || c >= g.machine_count()) {
      throw InvalidReference("profile references unknown machine");
    }
  }
}

void validate_profile(const CongestionInstance& g, const Profile& s) {
  if (static_cast<int>(s.choice.size()) != g.player_count()) {
    throw InvalidReference("profile does not assign every player");
  }
  for (int i = 0; i < g.player_count(); ++i) {
    auto list = strategy_list(g, i);
    if (s.choice[i] < 0 || s.choice[i] >= static_cast<int>(list.size())) {
      throw InvalidReference("profile references unknown strategy of player " +
                             g.player_ids[i]);
    }
  }
}

std::vector<int> predecessors(const GameInstance& g, const Profile& s, int job) {
  if (job < 0 || job >= g.job_count()) throw InvalidReference("unknown job index");
  validate_profile(g, s);
  const PriorityList& pl = g.machine_priority[s.choice[job]];
  std::vector<int> out;
  for (int other : pl.order) {
    if (s.choice[other] == s.choice[job] && pl.precedes_or_equal(other, job)) {
      out.push_back(other);
    }
  }
  return out;
}

std::vector<int> predecessors(const CongestionInstance& g, const Profile& s,
                              int player, int resource) {
  if (player < 0 || player >= g.player_count()) {
    throw InvalidReference("unknown player index");
  }
  if (resource < 0 || resource >= g.resource_count()) {
    throw InvalidReference("unknown resource index");
  }
  validate_profile(g, s);
  auto own = chosen_set(g, s, player);
  if (!std::binary_search(own.begin(), own.end(), resource)) {
    throw InvalidReference("resource not part of the player's chosen strategy");
  }
  const PriorityList& pl = g.resource_priority[resource];
  std::vector<int> out;
  for (int other : pl.order) {
    if (!pl.precedes_or_equal(other, player)) continue;
    auto other_set = chosen_set(g, s, other);
    if (std::binary_search(other_set.begin(), other_set.end(), resource)) {
      out.push_back(other);
    }
  }
  return out;
}

Rational job_cost(const GameInstance& g, const Profile& s, int job) {
  Rational total(0);
  for (int p : predecessors(g, s, job)) total += g.weight_on(p, s.choice[job]);
  return g.machine_delays[s.choice[job]] * total;
}

Rational player_cost(const CongestionInstance& g, const Profile& s, int player) {
  validate_profile(g, s);
  auto own = chosen_set(g, s, player);
  Rational total(0);
  for (int e : own) {
    Rational load(0);
    for (int p : predecessors(g, s, player, e)) load += g.player_weights[p];
    total += g.resource_costs[e].eval(load);
  }
  return g.player_weights[player] * total;
}

std::vector<int> chosen_set(const CongestionInstance& g, const Profile& s, int player) {
  auto list = strategy_list(g, player);
  if (s.choice[player] < 0 || s.choice[player] >= static_cast<int>(list.size())) {
    throw InvalidReference("profile references unknown strategy");
  }
  return list[s.choice[player]];
}

}  // namespace prio
