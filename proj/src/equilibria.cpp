#include "prio/equilibria.hpp"

#include <algorithm>
#include <map>

namespace prio {

GameView::GameView(const GameInstance& g) : sched_(&g) { g.validate(); }

GameView::GameView(const CongestionInstance& g) : cong_(&g) {
  g.validate();
  lists_.reserve(g.player_count());
  for (int i = 0; i < g.player_count(); ++i) {
    lists_.push_back(strategy_list(g, i));
  }
}

int GameView::players() const {
  return sched_ ? sched_->job_count() : cong_->player_count();
}

int GameView::strategy_count(int player) const {
  if (sched_) return sched_->machine_count();
  return static_cast<int>(lists_[player].size());
}

const std::vector<int>& GameView::strategy_set(int player, int index) const {
  if (sched_) throw UnsupportedError("strategy_set is for congestion instances");
  return lists_[player][index];
}

BigInt GameView::profile_space() const {
  BigInt total = 1;
  for (int i = 0; i < players(); ++i) total *= strategy_count(i);
  return total;
}

Rational GameView::cost(const Profile& s, int player) const {
  return deviation_cost(s, player, s.choice[player]);
}

Rational GameView::deviation_cost(const Profile& s, int player, int strategy) const {
  if (sched_) {
    const GameInstance& g = *sched_;
    int j = strategy;
    const PriorityList& pl = g.machine_priority[j];
    Rational total(0);
    for (int other = 0; other < g.job_count(); ++other) {
      if (other == player) continue;
      if (s.choice[other] == j && pl.precedes_or_equal(other, player)) {
        total += g.weight_on(other, j);
      }
    }
    total += g.weight_on(player, j);
    return g.machine_delays[j] * total;
  }
  const CongestionInstance& g = *cong_;
  const std::vector<int>& own = lists_[player][strategy];
  Rational total(0);
  for (int e : own) {
    const PriorityList& pl = g.resource_priority[e];
    Rational load = g.player_weights[player];
    for (int other = 0; other < g.player_count(); ++other) {
      if (other == player || !pl.precedes_or_equal(other, player)) continue;
      const std::vector<int>& other_set = lists_[other][s.choice[other]];
      if (std::binary_search(other_set.begin(), other_set.end(), e)) {
        load += g.player_weights[other];
      }
    }
    total += g.resource_costs[e].eval(load);
  }
  return g.player_weights[player] * total;
}

BestResponse best_response(const GameView& g, const Profile& s, int player,
                           TieBreak tie) {
  int count = g.strategy_count(player);
  if (count == 0) throw InvalidInstance("player has an empty strategy set");
  int best = -1;
  Rational best_cost;
  for (int k = 0; k < count; ++k) {
    Rational c = g.deviation_cost(s, player, k);
    if (best < 0 || c < best_cost) {
      best = k;
      best_cost = c;
    } else if (tie == TieBreak::KeepCurrent && c == best_cost &&
               k == s.choice[player]) {
      best = k;
    }
  }
  return {best, best_cost};
}

NashResult is_nash(const GameView& g, const Profile& s,
                   const std::vector<int>& check_order) {
  for (int player : check_order) {
    Rational current = g.cost(s, player);
    for (int k = 0; k < g.strategy_count(player); ++k) {
      if (k == s.choice[player]) continue;
      if (g.deviation_cost(s, player, k) < current) {
        return {false, NashWitness{player, k}};
      }
    }
  }
  return {true, std::nullopt};
}

NashResult is_nash(const GameView& g, const Profile& s) {
  std::vector<int> order(g.players());
  for (int i = 0; i < g.players(); ++i) order[i] = i;
  return is_nash(g, s, order);
}

NashResult is_alpha_nash(const GameView& g, const Profile& s, const Rational& alpha) {
  if (alpha < 1) throw DomainError("alpha must be at least 1");
  for (int player = 0; player < g.players(); ++player) {
    Rational current = g.cost(s, player);
    for (int k = 0; k < g.strategy_count(player); ++k) {
      if (k == s.choice[player]) continue;
      // Forbidden: an improvement by a factor of more than alpha.
      if (g.deviation_cost(s, player, k) * alpha < current) {
        return {false, NashWitness{player, k}};
      }
    }
  }
  return {true, std::nullopt};
}

std::vector<Profile> enumerate_nash(const GameView& g, const BigInt& profile_budget) {
  BigInt space = g.profile_space();
  if (space > profile_budget) {
    throw BudgetExceeded("profile space of " + space.str() +
                             " exceeds budget of " + profile_budget.str(),
                         space);
  }
  int n = g.players();
  std::vector<Profile> out;
  Profile s;
  s.choice.assign(n, 0);
  while (true) {
    if (is_nash(g, s).stable) out.push_back(s);
    int i = n - 1;
    while (i >= 0 && s.choice[i] + 1 >= g.strategy_count(i)) {
      s.choice[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++s.choice[i];
  }
  return out;
}

long default_step_limit(const GameView& g) {
  BigInt limit = 10 * g.profile_space();
  if (limit > 1000000) return 1000000;
  return limit.convert_to<long>();
}

namespace {

std::vector<int> scan_order(const GameView& g, const DynamicsPolicy& policy) {
  int n = g.players();
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  if (policy.rule == SelectionRule::PriorityOrder) {
    const PriorityList& pl =
        g.is_scheduling() ? g.scheduling().machine_priority[policy.priority_source]
                          : g.congestion().resource_priority[policy.priority_source];
    order = pl.order;
  }
  return order;
}

}  // namespace

DynamicsTrace run_dynamics(const GameView& g, Profile initial,
                           const DynamicsPolicy& policy, long step_limit) {
  DynamicsTrace trace;
  std::map<std::vector<int>, long> visited;
  visited.emplace(initial.choice, 0);
  std::vector<int> order = scan_order(g, policy);
  int n = g.players();
  int cursor = 0;  // round-robin position into `order`
  long steps = 0;
  while (true) {
    int mover = -1;
    BestResponse br{0, Rational(0)};
    Rational old_cost;
    for (int probe = 0; probe < n; ++probe) {
      int idx = (policy.rule == SelectionRule::RoundRobin) ? (cursor + probe) % n
                                                           : probe;
      int player = order[idx];
      Rational current = g.cost(initial, player);
      BestResponse cand = best_response(g, initial, player, policy.tie_break);
      if (cand.strategy != initial.choice[player] && cand.cost < current) {
        mover = player;
        br = cand;
        old_cost = current;
        if (policy.rule == SelectionRule::RoundRobin) cursor = (idx + 1) % n;
        break;
      }
    }
    if (mover < 0) {
      trace.status = TerminalStatus::Converged;
      break;
    }
    if (steps >= step_limit) {
      trace.status = TerminalStatus::StepLimit;
      break;
    }
    trace.moves.push_back(
        {mover, initial.choice[mover], br.strategy, old_cost, br.cost});
    initial.choice[mover] = br.strategy;
    ++steps;
    auto [it, inserted] = visited.emplace(initial.choice, steps);
    if (!inserted) {
      // Exact-equality confirmation: the map key is the full profile.
      trace.status = TerminalStatus::CycleDetected;
      trace.cycle_start = it->second;
      break;
    }
  }
  trace.final_profile = std::move(initial);
  return trace;
}

int index_of_strategy(const CongestionInstance& g, int player,
                      const std::vector<int>& set) {
  auto list = strategy_list(g, player);
  auto it = std::find(list.begin(), list.end(), set);
  if (it == list.end()) throw InvalidReference("strategy set not in player's space");
  return static_cast<int>(it - list.begin());
}

std::optional<LazyMove> lazy_better_response_step(const CongestionInstance& g,
                                                  const Profile& s) {
  if (!g.all_matroid()) {
    throw UnsupportedError("lazy better responses need matroid strategies");
  }
  if (!g.unit_weights()) {
    throw UnsupportedError("lazy better responses need unit weights");
  }
  GameView view(g);
  for (int player = 0; player < g.player_count(); ++player) {
    const MatroidDescriptor& md = *g.strategies[player].matroid;
    const std::vector<int>& current = view.strategy_set(player, s.choice[player]);
    Rational current_cost = view.cost(s, player);
    struct Candidate {
      Rational entering_cost;
      int enters;
      int leaves;
      int strategy;
    };
    std::optional<Candidate> best;
    for (int e = 0; e < g.resource_count(); ++e) {
      if (std::binary_search(current.begin(), current.end(), e)) continue;
      if (!matroid_contains(md, e)) continue;
      for (int r : current) {
        std::vector<int> swapped;
        swapped.reserve(current.size());
        for (int x : current) {
          if (x != r) swapped.push_back(x);
        }
        swapped.insert(std::upper_bound(swapped.begin(), swapped.end(), e), e);
        if (!matroid_independent(md, swapped)) continue;
        int idx = index_of_strategy(g, player, swapped);
        if (view.deviation_cost(s, player, idx) >= current_cost) continue;
        // Marginal cost of the entering resource in the new profile.
        Rational load(1);
        const PriorityList& pl = g.resource_priority[e];
        for (int other = 0; other < g.player_count(); ++other) {
          if (other == player || !pl.precedes_or_equal(other, player)) continue;
          const auto& other_set = view.strategy_set(other, s.choice[other]);
          if (std::binary_search(other_set.begin(), other_set.end(), e)) load += 1;
        }
        Rational entering = g.resource_costs[e].eval(load);
        Candidate cand{entering, e, r, idx};
        if (!best || cand.entering_cost < best->entering_cost ||
            (cand.entering_cost == best->entering_cost &&
             (cand.enters < best->enters ||
              (cand.enters == best->enters && cand.leaves < best->leaves)))) {
          best = cand;
        }
      }
    }
    if (best) {
      return LazyMove{player, best->strategy, {best->enters}, {best->leaves}};
    }
  }
  return std::nullopt;
}

PotentialSignature potential_signature(const CongestionInstance& g, const Profile& s) {
  if (!g.unit_weights()) {
    throw UnsupportedError("potential signature is defined for unit weights");
  }
  GameView view(g);
  PotentialSignature sig;
  for (int e = 0; e < g.resource_count(); ++e) {
    const PriorityList& pl = g.resource_priority[e];
    int load = 0;
    for (int player : pl.order) {
      const auto& set = view.strategy_set(player, s.choice[player]);
      if (std::binary_search(set.begin(), set.end(), e)) {
        ++load;
        sig.elements.emplace_back(g.resource_costs[e].eval(Rational(load)),
                                  pl.rank[player]);
      }
    }
  }
  std::sort(sig.elements.begin(), sig.elements.end());
  return sig;
}

PotentialOrder potential_compare(const CongestionInstance& g, const Profile& a,
                                 const Profile& b) {
  PotentialSignature sa = potential_signature(g, a);
  PotentialSignature sb = potential_signature(g, b);
  if (sa.elements == sb.elements) return PotentialOrder::Equal;
  // Sweep thresholds u in ascending cost order; at the first u where the
  // prefix statistics (count, rank sum) differ, more-and-cheaper elements
  // win, and on equal counts the smaller rank sum wins.
  std::size_t ia = 0, ib = 0;
  long cnt_a = 0, cnt_b = 0, rsum_a = 0, rsum_b = 0;
  while (ia < sa.elements.size() || ib < sb.elements.size()) {
    Rational u;
    if (ia == sa.elements.size()) {
      u = sb.elements[ib].first;
    } else if (ib == sb.elements.size()) {
      u = sa.elements[ia].first;
    } else {
      u = std::min(sa.elements[ia].first, sb.elements[ib].first);
    }
    while (ia < sa.elements.size() && sa.elements[ia].first == u) {
      ++cnt_a;
      rsum_a += sa.elements[ia].second;
      ++ia;
    }
    while (ib < sb.elements.size() && sb.elements[ib].first == u) {
      ++cnt_b;
      rsum_b += sb.elements[ib].second;
      ++ib;
    }
    if (cnt_a != cnt_b) {
      return cnt_a > cnt_b ? PotentialOrder::Less : PotentialOrder::Greater;
    }
    if (rsum_a != rsum_b) {
      return rsum_a < rsum_b ? PotentialOrder::Less : PotentialOrder::Greater;
    }
  }
  return PotentialOrder::Incomparable;
}

namespace {

struct ScanState {
  const GameView* view;
  const ScanSpec* spec;
  std::vector<std::vector<int>> allowed;
  std::vector<int> group_pred;  // player -> previous player in its group, or -1
  std::vector<int> check_order;
  std::vector<Profile>* out;
};

void scan_rec(ScanState& st, Profile& s, int depth) {
  const auto& order = st.spec->order;
  if (depth == static_cast<int>(order.size())) {
    if (is_nash(*st.view, s, st.check_order).stable) st.out->push_back(s);
    return;
  }
  int player = order[depth];
  for (int k : st.allowed[player]) {
    int pred = st.group_pred[player];
    if (pred >= 0 && k < s.choice[pred]) continue;  // canonical within group
    s.choice[player] = k;
    if (st.spec->prune && !st.spec->prune(depth + 1, s)) continue;
    scan_rec(st, s, depth + 1);
  }
}

}  // namespace

std::vector<Profile> scan_nash(const GameView& g, const ScanSpec& spec) {
  int n = g.players();
  ScanSpec local = spec;
  if (local.order.empty()) {
    local.order.resize(n);
    for (int i = 0; i < n; ++i) local.order[i] = i;
  }
  ScanState st;
  st.view = &g;
  st.spec = &local;
  st.allowed.assign(n, {});
  for (int i = 0; i < n; ++i) {
    if (i < static_cast<int>(spec.allowed.size()) && !spec.allowed[i].empty()) {
      st.allowed[i] = spec.allowed[i];
      std::sort(st.allowed[i].begin(), st.allowed[i].end());
    } else {
      st.allowed[i].resize(g.strategy_count(i));
      for (int k = 0; k < g.strategy_count(i); ++k) st.allowed[i][k] = k;
    }
  }
  st.group_pred.assign(n, -1);
  for (const auto& group : spec.symmetric_groups) {
    for (std::size_t k = 1; k < group.size(); ++k) {
      st.group_pred[group[k]] = group[k - 1];
    }
  }
  st.check_order = spec.check_order;
  if (st.check_order.empty()) {
    st.check_order.resize(n);
    for (int i = 0; i < n; ++i) st.check_order[i] = i;
  }
  std::vector<Profile> out;
  st.out = &out;
  Profile s;
  s.choice.assign(n, 0);
  scan_rec(st, s, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace prio
