#include "prio/construct.hpp"

#include <algorithm>

namespace prio {

std::set<ClassTag> classify(const GameInstance& g) {
  g.validate();
  std::set<ClassTag> tags;
  if (!g.unrelated_weights) {
    bool unit = true;
    for (const auto& w : g.job_weights) {
      if (w != g.job_weights.front()) unit = false;
    }
    if (unit) tags.insert(ClassTag::UnitWeights);
  }
  if (g.machine_count() == 2) tags.insert(ClassTag::TwoMachines);
  bool identical = true;
  for (const auto& c : g.machine_delays) {
    if (c != g.machine_delays.front()) identical = false;
  }
  if (identical) tags.insert(ClassTag::IdenticalDelays);
  bool global = true;
  for (const auto& pl : g.machine_priority) {
    if (pl.order != g.machine_priority.front().order) global = false;
  }
  if (global) tags.insert(ClassTag::GlobalList);
  return tags;
}

std::set<ClassTag> classify(const CongestionInstance& g) {
  g.validate();
  std::set<ClassTag> tags;
  if (g.all_matroid() && g.unit_weights()) tags.insert(ClassTag::MatroidUnit);
  return tags;
}

Profile ne_two_machines(const GameInstance& g) {
  g.validate();
  if (g.machine_count() != 2) {
    throw UnsupportedError("two-machine construction needs exactly 2 machines");
  }
  int fast = (g.machine_delays[1] < g.machine_delays[0]) ? 1 : 0;
  int slow = 1 - fast;
  GameView view(g);
  Profile s;
  s.choice.assign(g.job_count(), fast);
  for (int job : g.machine_priority[slow].order) {
    Rational here = view.cost(s, job);
    Rational there = view.deviation_cost(s, job, slow);
    if (there < here) s.choice[job] = slow;
  }
  return s;
}

Profile ne_greedy_singleton(const GameInstance& g) {
  g.validate();
  if (g.unrelated_weights) {
    throw UnsupportedError("greedy singleton construction needs related machines");
  }
  for (const auto& w : g.job_weights) {
    if (w != g.job_weights.front()) {
      throw UnsupportedError("greedy singleton construction needs equal weights");
    }
  }
  int n = g.job_count();
  int m = g.machine_count();
  std::vector<int> count(m, 0);
  std::vector<bool> assigned(n, false);
  Profile s;
  s.choice.assign(n, 0);
  for (int step = 0; step < n; ++step) {
    int best = 0;
    Rational best_cost = g.machine_delays[0] * (count[0] + 1);
    for (int j = 1; j < m; ++j) {
      Rational c = g.machine_delays[j] * (count[j] + 1);
      if (c < best_cost) {
        best = j;
        best_cost = c;
      }
    }
    int job = -1;
    for (int cand : g.machine_priority[best].order) {
      if (!assigned[cand]) {
        job = cand;
        break;
      }
    }
    s.choice[job] = best;
    assigned[job] = true;
    ++count[best];
  }
  return s;
}

Profile ne_identical_machines(const GameInstance& g) {
  g.validate();
  if (g.unrelated_weights) {
    throw UnsupportedError("identical-machine construction needs related machines");
  }
  for (const auto& c : g.machine_delays) {
    if (c != g.machine_delays.front()) {
      throw UnsupportedError("identical-machine construction needs equal delays");
    }
  }
  int n = g.job_count();
  int m = g.machine_count();
  std::vector<Rational> load(m, Rational(0));
  std::vector<bool> assigned(n, false);
  Profile s;
  s.choice.assign(n, 0);
  for (int step = 0; step < n; ++step) {
    int best = 0;
    for (int j = 1; j < m; ++j) {
      if (load[j] < load[best]) best = j;
    }
    int job = -1;
    for (int cand : g.machine_priority[best].order) {
      if (!assigned[cand]) {
        job = cand;
        break;
      }
    }
    s.choice[job] = best;
    assigned[job] = true;
    load[best] += g.job_weights[job];
  }
  // Best-response polish; convergence is guaranteed for identical delays.
  GameView view(g);
  DynamicsTrace trace =
      run_dynamics(view, std::move(s), DynamicsPolicy{}, default_step_limit(view));
  if (trace.status != TerminalStatus::Converged) {
    throw Error("identical-machine polish did not converge");
  }
  return trace.final_profile;
}

Profile ne_global_list(const GameInstance& g) {
  g.validate();
  if (g.unrelated_weights) {
    throw UnsupportedError("global-list construction needs related machines");
  }
  for (const auto& pl : g.machine_priority) {
    if (pl.order != g.machine_priority.front().order) {
      throw UnsupportedError("global-list construction needs one shared list");
    }
  }
  int m = g.machine_count();
  std::vector<Rational> load(m, Rational(0));
  Profile s;
  s.choice.assign(g.job_count(), 0);
  for (int job : g.machine_priority.front().order) {
    int best = 0;
    Rational best_cost = g.machine_delays[0] * (load[0] + g.job_weights[job]);
    for (int j = 1; j < m; ++j) {
      Rational c = g.machine_delays[j] * (load[j] + g.job_weights[job]);
      if (c < best_cost) {
        best = j;
        best_cost = c;
      }
    }
    s.choice[job] = best;
    load[best] += g.job_weights[job];
  }
  return s;
}

Profile ne_matroid_unit(const CongestionInstance& g) {
  g.validate();
  if (!g.all_matroid()) {
    throw UnsupportedError("matroid construction needs matroid strategies");
  }
  if (!g.unit_weights()) {
    throw UnsupportedError("matroid construction needs unit weights");
  }
  int n = g.player_count();
  int r = g.resource_count();
  std::vector<int> counter(r, 1);
  // Per-resource remaining priority list (players not yet struck).
  std::vector<std::vector<bool>> struck(r, std::vector<bool>(n, false));
  std::vector<int> remaining(r, n);
  std::vector<std::vector<int>> sets(n);
  std::vector<int> need(n);
  for (int i = 0; i < n; ++i) need[i] = matroid_rank(*g.strategies[i].matroid);
  int incomplete = n;
  while (incomplete > 0) {
    int pick = -1;
    for (int e = 0; e < r; ++e) {
      if (remaining[e] == 0) continue;
      if (pick < 0 || g.resource_costs[e].eval(Rational(counter[e])) <
                          g.resource_costs[pick].eval(Rational(counter[pick]))) {
        pick = e;
      }
    }
    if (pick < 0) {
      throw InvalidInstance("matroid construction exhausted all priority lists");
    }
    int player = -1;
    for (int cand : g.resource_priority[pick].order) {
      if (!struck[pick][cand]) {
        player = cand;
        break;
      }
    }
    struck[pick][player] = true;
    --remaining[pick];
    if (static_cast<int>(sets[player].size()) < need[player]) {
      auto& set = sets[player];
      std::vector<int> extended = set;
      extended.insert(std::upper_bound(extended.begin(), extended.end(), pick), pick);
      if (matroid_independent(*g.strategies[player].matroid, extended)) {
        set = std::move(extended);
        ++counter[pick];
        if (static_cast<int>(set.size()) == need[player]) --incomplete;
      }
    }
  }
  Profile s;
  s.choice.assign(n, 0);
  for (int i = 0; i < n; ++i) s.choice[i] = index_of_strategy(g, i, sets[i]);
  return s;
}

}  // namespace prio
