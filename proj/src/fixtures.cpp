#include "prio/fixtures.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace prio {

namespace {

struct SchedBuilder {
  GameInstance g;
  std::map<std::string, int> job_index;

  int add_job(const std::string& id, Rational weight) {
    job_index[id] = static_cast<int>(g.job_ids.size());
    g.job_ids.push_back(id);
    g.job_weights.push_back(std::move(weight));
    return job_index[id];
  }

  void add_machine(const std::string& id, Rational delay,
                   const std::vector<std::string>& priority) {
    g.machine_ids.push_back(id);
    g.machine_delays.push_back(std::move(delay));
    std::vector<int> order;
    order.reserve(priority.size());
    for (const auto& job : priority) order.push_back(job_index.at(job));
    g.machine_priority.push_back(
        PriorityList::from_order(std::move(order), static_cast<int>(g.job_ids.size())));
  }

  GameInstance finish() {
    g.validate();
    return std::move(g);
  }
};

std::vector<std::string> ids(const std::string& prefix, int count, int from = 1) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.push_back(prefix + std::to_string(from + i));
  return out;
}

std::vector<std::string> cat(std::initializer_list<std::vector<std::string>> parts) {
  std::vector<std::string> out;
  for (const auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

}  // namespace

void ThreeDMInstance::validate() const {
  if (n < 1) throw DomainError("3DM instance needs n >= 1");
  if (static_cast<int>(triples.size()) < n) {
    throw DomainError("3DM instance needs |T| >= n");
  }
  std::map<std::pair<int, int>, int> occurrences;  // (axis, element) -> count
  std::set<std::array<int, 3>> seen;
  for (const auto& t : triples) {
    for (int axis = 0; axis < 3; ++axis) {
      if (t[axis] < 0 || t[axis] >= n) throw DomainError("3DM element out of range");
      if (++occurrences[{axis, t[axis]}] > 3) {
        throw DomainError("3DM element occurs in more than 3 triples");
      }
    }
    if (!seen.insert(t).second) throw DomainError("duplicate triple");
  }
}

void ExactCoverInstance::validate() const {
  if (set_size != 3 && set_size != 4) {
    throw DomainError("exact cover needs 3- or 4-element sets");
  }
  if (n < 1) throw DomainError("exact cover needs n >= 1");
  for (const auto& set : sets) {
    if (static_cast<int>(set.size()) != set_size) {
      throw DomainError("cover set of wrong size");
    }
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (set[k] < 0 || set[k] >= set_size * n) {
        throw DomainError("cover element out of range");
      }
      if (k > 0 && set[k] <= set[k - 1]) {
        throw DomainError("cover sets must be strictly sorted");
      }
    }
  }
}

GameInstance gstar5() {
  SchedBuilder b;
  b.add_job("a", Rational(5));
  b.add_job("b", Rational(4));
  b.add_job("c", Rational(9, 2));
  b.add_job("d", Rational(37, 4));
  b.add_job("e", Rational(2));
  b.add_machine("M1", Rational(1), {"a", "b", "c", "d", "e"});
  b.add_machine("M2", Rational(2), {"e", "d", "b", "c", "a"});
  b.add_machine("M3", Rational(2), {"e", "d", "b", "c", "a"});
  return b.finish();
}

GameInstance ghat4() {
  SchedBuilder b;
  b.add_job("a", Rational(5));
  b.add_job("b", Rational(4));
  b.add_job("c", Rational(13, 3));
  b.add_job("d", Rational(37, 4));
  b.add_machine("M1", Rational(1), {"a", "b", "c", "d"});
  b.add_machine("M2", Rational(2), {"d", "b", "c", "a"});
  b.add_machine("M3", Rational(3), {"d", "b", "c", "a"});
  return b.finish();
}

GameInstance unrelated3() {
  SchedBuilder b;
  b.add_job("a", Rational(5));
  b.add_job("b", Rational(7));
  b.add_job("c", Rational(1));
  b.add_machine("M1", Rational(1), {"a", "b", "c"});
  b.add_machine("M2", Rational(1), {"c", "a", "b"});
  b.g.unrelated_weights = {{Rational(5), Rational(4)},
                           {Rational(7), Rational(4)},
                           {Rational(1), Rational(7)}};
  return b.finish();
}

namespace {

// Rotating 3-player gadget rank: player i on resource j (both 1-based)
// ranks ((i + j - 2) mod 3) + 1. This is the mapping that reproduces the
// 4/5 cost split when two players share a triplet.
std::vector<int> condorcet_order(int resource_1based, const std::vector<int>& players) {
  std::vector<std::pair<int, int>> ranked;
  for (int k = 0; k < 3; ++k) {
    int rank = ((k + 1 + resource_1based - 2) % 3) + 1;
    ranked.emplace_back(rank, players[k]);
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<int> order;
  for (const auto& [rank, p] : ranked) order.push_back(p);
  return order;
}

}  // namespace

CongestionInstance condorcet() {
  CongestionInstance g;
  g.player_ids = ids("p", 3);
  g.player_weights.assign(3, Rational(1));
  g.resource_ids = ids("e", 6);
  g.resource_costs.assign(6, CostPolynomial::linear(Rational(1)));
  for (int j = 1; j <= 6; ++j) {
    g.resource_priority.push_back(
        PriorityList::from_order(condorcet_order(j, {0, 1, 2}), 3));
  }
  StrategySpace sp;
  sp.explicit_sets = {{0, 1, 2}, {3, 4, 5}};
  g.strategies.assign(3, sp);
  g.validate();
  return g;
}

CongestionInstance approx32() {
  CongestionInstance g;
  g.player_ids = ids("p", 2);
  g.player_weights.assign(2, Rational(1));
  g.resource_ids = ids("e", 4);
  g.resource_costs.assign(4, CostPolynomial::linear(Rational(8, 9)));
  // e1, e3: player 2 first; e2, e4: player 1 first.
  g.resource_priority.push_back(PriorityList::from_order({1, 0}, 2));
  g.resource_priority.push_back(PriorityList::from_order({0, 1}, 2));
  g.resource_priority.push_back(PriorityList::from_order({1, 0}, 2));
  g.resource_priority.push_back(PriorityList::from_order({0, 1}, 2));
  StrategySpace p1;
  p1.explicit_sets = {{0, 1}, {2, 3}};
  StrategySpace p2;
  p2.explicit_sets = {{0, 3}, {1, 2}};
  g.strategies = {p1, p2};
  g.validate();
  return g;
}

GameInstance pos_g2(const Rational& c) {
  if (c < 1) throw DomainError("pos_g2 needs c >= 1");
  SchedBuilder b;
  b.add_job("a", Rational(1));
  b.add_job("b", c);
  b.add_machine("M1", Rational(1), {"a", "b"});
  b.add_machine("M2", c, {"a", "b"});
  return b.finish();
}

GameInstance pos_g2_three(const Rational& c) {
  if (c < 1) throw DomainError("pos_g2_three needs c >= 1");
  Rational wy = (1 + c - c * c) / (c * c);
  if (wy <= 0) {
    throw DomainError("pos_g2_three needs c below the golden ratio");
  }
  SchedBuilder b;
  b.add_job("x", Rational(1));
  b.add_job("y", wy);
  b.add_job("z", (1 + c) / c);
  b.add_machine("M1", Rational(1), {"x", "y", "z"});
  b.add_machine("M2", c, {"x", "y", "z"});
  return b.finish();
}

GameInstance pos_g3(int m) {
  if (m < 2) throw DomainError("pos_g3 needs m >= 2");
  SchedBuilder b;
  int units = m * (m - 1);
  auto unit_ids = ids("u", units);
  for (const auto& id : unit_ids) b.add_job(id, Rational(1));
  b.add_job("heavy", Rational(m));
  for (int j = 0; j < m; ++j) {
    // Unit jobs rotated per machine (any order works), heavy job last.
    std::vector<std::string> order;
    for (int t = 0; t < units; ++t) order.push_back(unit_ids[(t + j) % units]);
    order.push_back("heavy");
    b.add_machine("M" + std::to_string(j + 1), Rational(1), order);
  }
  return b.finish();
}

GameInstance pos_g3_sumct(int m, int k, const Rational& eps) {
  if (m < 2 || k < 1) throw DomainError("pos_g3_sumct needs m >= 2, k >= 1");
  if (eps <= 0) throw DomainError("eps must be positive");
  SchedBuilder b;
  auto unit_ids = ids("j", m);
  auto eps_ids = ids("z", (k - 1) * m);
  for (const auto& id : unit_ids) b.add_job(id, Rational(1));
  for (const auto& id : eps_ids) b.add_job(id, eps);
  for (int j = 0; j < m; ++j) {
    std::vector<std::string> order{unit_ids[j]};
    order.insert(order.end(), eps_ids.begin(), eps_ids.end());
    for (int t = 0; t < m; ++t) {
      if (t != j) order.push_back(unit_ids[t]);
    }
    b.add_machine("M" + std::to_string(j + 1), Rational(1), order);
  }
  return b.finish();
}

GameInstance pos_g4_sumct(int n, const Rational& c, const Rational& eps) {
  if (n < 2) throw DomainError("pos_g4_sumct needs n >= 2");
  if (c < 1 || eps <= 0) throw DomainError("pos_g4_sumct needs c >= 1, eps > 0");
  SchedBuilder b;
  b.add_job("a", Rational(1));
  b.add_job("b", 1 / c);
  auto eps_ids = ids("z", n - 2);
  for (const auto& id : eps_ids) b.add_job(id, eps);
  auto order = cat({{"a", "b"}, eps_ids});
  b.add_machine("M1", Rational(1), order);
  b.add_machine("M2", c, order);
  return b.finish();
}

CongestionInstance poly_lower(int d, int k) {
  if (d < 1 || k < 1) throw DomainError("poly_lower needs d >= 1, k >= 1");
  int n = (d + 2) * k;
  CongestionInstance g;
  g.player_ids = ids("p", n);
  g.player_weights.assign(n, Rational(1));
  g.resource_ids = ids("e", n);
  g.resource_costs.assign(n, CostPolynomial::monomial(d));
  for (int j = 1; j <= n; ++j) {
    std::vector<std::pair<int, int>> ranked;
    for (int i = 1; i <= n; ++i) {
      int v = ((j + (d + 1) * k + 1 - i) % n + n) % n;
      if (v == 0) v = n;
      ranked.emplace_back(v, i - 1);
    }
    std::sort(ranked.begin(), ranked.end());
    std::vector<int> order;
    for (const auto& [rank, p] : ranked) order.push_back(p);
    g.resource_priority.push_back(PriorityList::from_order(std::move(order), n));
  }
  for (int i = 1; i <= n; ++i) {
    auto wrap = [n](int idx) { return ((idx - 1) % n + n) % n; };
    std::vector<int> short_set, long_set;
    for (int t = 0; t < k; ++t) short_set.push_back(wrap(i + t));
    for (int t = 0; t < (d + 1) * k; ++t) long_set.push_back(wrap(i + k + t));
    std::sort(short_set.begin(), short_set.end());
    std::sort(long_set.begin(), long_set.end());
    StrategySpace sp;
    sp.explicit_sets = {short_set, long_set};
    g.strategies.push_back(sp);
  }
  g.validate();
  return g;
}

namespace {

void desk_scale_guard(std::size_t count, bool allow_large, const char* what) {
  if (count > 4 && !allow_large) {
    throw DomainError(std::string(what) +
                      " above 4 refused at desk scale (pass allow_large to override)");
  }
}

struct DmNames {
  std::vector<std::string> x, y, z;
  std::vector<std::string> all;  // x1..xn, y1..yn, z1..zn
};

DmNames element_names(int n) {
  DmNames names;
  names.x = ids("x", n);
  names.y = ids("y", n);
  names.z = ids("z", n);
  names.all = cat({names.x, names.y, names.z});
  return names;
}

std::vector<std::string> without(const std::vector<std::string>& v,
                                 const std::string& skip) {
  std::vector<std::string> out;
  for (const auto& s : v) {
    if (s != skip) out.push_back(s);
  }
  return out;
}

}  // namespace

GameInstance reduce_3dm_to_ne_existence(const ThreeDMInstance& dm, const Rational& eps,
                                        bool allow_large) {
  dm.validate();
  if (eps <= 0) throw DomainError("eps must be positive");
  desk_scale_guard(dm.triples.size(), allow_large, "|T|");
  int n = dm.n;
  int t_count = static_cast<int>(dm.triples.size());
  DmNames names = element_names(n);
  auto d_ids = ids("D", t_count - n);
  auto u_ids = ids("U", t_count + 1);

  SchedBuilder b;
  b.add_job("a", Rational(5));
  b.add_job("b", Rational(4));
  b.add_job("c", Rational(9, 2));
  b.add_job("d", Rational(37, 4));
  b.add_job("e", Rational(2));
  b.add_job("f", Rational(2));
  for (const auto& id : d_ids) b.add_job(id, Rational(3));
  for (const auto& id : u_ids) b.add_job(id, Rational(20));
  for (const auto& id : names.all) b.add_job(id, Rational(1));

  b.add_machine("M1", Rational(1),
                cat({{"a", "b", "c", "d", "e", "f"}, u_ids, names.all, d_ids}));
  auto second = cat({{"e", "d", "b", "c", "a", "f"}, u_ids, names.all, d_ids});
  b.add_machine("M2", Rational(2), second);
  b.add_machine("M3", Rational(2), second);
  b.add_machine("M4", Rational(1),
                cat({{"f"}, names.all, {"e"}, u_ids, d_ids, {"a", "b", "c", "d"}}));
  for (int t = 0; t < t_count; ++t) {
    const auto& triple = dm.triples[t];
    std::string xt = names.x[triple[0]];
    std::string yt = names.y[triple[1]];
    std::string zt = names.z[triple[2]];
    b.add_machine("T" + std::to_string(t + 1), Rational(1),
                  cat({d_ids,
                       {xt, yt, zt},
                       u_ids,
                       {"f"},
                       without(names.x, xt),
                       without(names.y, yt),
                       without(names.z, zt),
                       {"a", "b", "c", "d", "e"}}));
  }
  return b.finish();
}

GameInstance reduce_3dm_to_cmax(const ThreeDMInstance& dm, const Rational& eps,
                                bool allow_large) {
  dm.validate();
  if (eps <= 0) throw DomainError("eps must be positive");
  desk_scale_guard(dm.triples.size(), allow_large, "|T|");
  int n = dm.n;
  int t_count = static_cast<int>(dm.triples.size());
  int m = t_count + 2;
  DmNames names = element_names(n);
  auto d_ids = ids("D", t_count - n);
  auto u_ids = ids("U", (m - 1) * (m - 1));

  SchedBuilder b;
  b.add_job("a", Rational(m));
  b.add_job("b", Rational(m - 1));
  for (const auto& id : d_ids) b.add_job(id, 3 * eps);
  b.add_job("d1", 2 * eps);
  b.add_job("d2", 2 * eps);
  for (const auto& id : u_ids) b.add_job(id, Rational(1));
  for (const auto& id : names.all) b.add_job(id, eps);

  b.add_machine("M1", Rational(1),
                cat({{"d1", "b", "a"}, u_ids, names.all, d_ids, {"d2"}}));
  b.add_machine("M2", Rational(1),
                cat({{"d2"}, names.all, {"b"}, u_ids, {"a", "d1"}, d_ids}));
  for (int t = 0; t < t_count; ++t) {
    const auto& triple = dm.triples[t];
    std::string xt = names.x[triple[0]];
    std::string yt = names.y[triple[1]];
    std::string zt = names.z[triple[2]];
    b.add_machine("T" + std::to_string(t + 1), Rational(1),
                  cat({d_ids,
                       {xt, yt, zt},
                       u_ids,
                       without(names.x, xt),
                       without(names.y, yt),
                       without(names.z, zt),
                       {"d1", "d2", "a", "b"}}));
  }
  return b.finish();
}

int sumct_reduction_k(const Rational& r, int m) {
  if (r <= 1) throw DomainError("sum-of-completion reduction needs r > 1");
  // Smallest integer k with (m + k) / (m + 1) > r.
  int k = 1;
  while (Rational(m + k) / Rational(m + 1) <= r) ++k;
  return k;
}

Rational sumct_reduction_eps(int k, int m) {
  // Small enough that every epsilon-scale contribution to the sum of
  // completion times stays below 1 in the cheap equilibrium: per machine
  // the tiny jobs add at most 6*eps among themselves and delay each of the
  // m unit jobs by at most 6*eps, and the k tail jobs finish by (k+3)*eps.
  return Rational(1, static_cast<long long>(k) * k + 3 * k + 12 * m + 1);
}

GameInstance reduce_3dm_to_sumct(const ThreeDMInstance& dm, const Rational& r,
                                 bool allow_large) {
  dm.validate();
  desk_scale_guard(dm.triples.size(), allow_large, "|T|");
  int n = dm.n;
  int t_count = static_cast<int>(dm.triples.size());
  int m = t_count + 2;
  int k = sumct_reduction_k(r, m);
  Rational eps = sumct_reduction_eps(k, m);
  DmNames names = element_names(n);
  auto d_ids = ids("D", t_count - n);
  auto u_ids = ids("U", m - 1);
  auto k_ids = ids("K", k);

  SchedBuilder b;
  b.add_job("a", eps);
  b.add_job("b", Rational(1));
  for (const auto& id : d_ids) b.add_job(id, 3 * eps);
  b.add_job("d1", 2 * eps);
  b.add_job("d2", 2 * eps);
  for (const auto& id : u_ids) b.add_job(id, Rational(1));
  for (const auto& id : names.all) b.add_job(id, eps);
  for (const auto& id : k_ids) b.add_job(id, eps);

  // Trailing "remaining jobs" segments are in ascending id-group order.
  b.add_machine("M1", Rational(1),
                cat({{"d1", "b", "a"}, k_ids, u_ids, {"d2"}, d_ids, names.all}));
  b.add_machine("M2", Rational(1),
                cat({{"d2"}, names.all, {"b"}, u_ids, {"a"}, k_ids, {"d1"}, d_ids}));
  for (int t = 0; t < t_count; ++t) {
    const auto& triple = dm.triples[t];
    std::string xt = names.x[triple[0]];
    std::string yt = names.y[triple[1]];
    std::string zt = names.z[triple[2]];
    b.add_machine("T" + std::to_string(t + 1), Rational(1),
                  cat({d_ids,
                       {xt, yt, zt, "a"},
                       u_ids,
                       k_ids,
                       {"b", "d1", "d2"},
                       without(names.x, xt),
                       without(names.y, yt),
                       without(names.z, zt)}));
  }
  return b.finish();
}

CongestionInstance reduce_4xc_to_congestion(const ExactCoverInstance& xc,
                                            bool allow_large) {
  xc.validate();
  if (xc.set_size != 4) throw DomainError("this reduction needs 4-element sets");
  desk_scale_guard(xc.sets.size(), allow_large, "|Q|");
  int n = xc.n;
  int elements = 4 * n;
  CongestionInstance g;
  // Players P1_k, P2_k, P3_k grouped per gadget copy.
  for (int k = 1; k <= n; ++k) {
    for (int p = 1; p <= 3; ++p) {
      g.player_ids.push_back("P" + std::to_string(p) + "_" + std::to_string(k));
    }
  }
  g.player_weights.assign(3 * n, Rational(1));
  for (int a = 1; a <= elements; ++a) g.resource_ids.push_back("u" + std::to_string(a));
  for (int k = 1; k <= n; ++k) {
    for (int j = 1; j <= 6; ++j) {
      g.resource_ids.push_back("e" + std::to_string(j) + "_" + std::to_string(k));
    }
  }
  g.resource_costs.assign(g.resource_ids.size(), CostPolynomial::linear(Rational(1)));
  // Element resources: ascending priorities (any order works).
  std::vector<int> ascending(3 * n);
  for (int i = 0; i < 3 * n; ++i) ascending[i] = i;
  for (int a = 0; a < elements; ++a) {
    g.resource_priority.push_back(PriorityList::from_order(ascending, 3 * n));
  }
  for (int k = 0; k < n; ++k) {
    std::vector<int> gadget = {3 * k, 3 * k + 1, 3 * k + 2};
    for (int j = 1; j <= 6; ++j) {
      std::vector<int> order = condorcet_order(j, gadget);
      for (int other : ascending) {
        if (std::find(gadget.begin(), gadget.end(), other) == gadget.end()) {
          order.push_back(other);
        }
      }
      g.resource_priority.push_back(PriorityList::from_order(std::move(order), 3 * n));
    }
  }
  for (int k = 0; k < n; ++k) {
    int base = elements + 6 * k;
    std::vector<int> first_triplet = {base, base + 1, base + 2};
    std::vector<int> second_triplet = {base + 3, base + 4, base + 5};
    StrategySpace p1;
    p1.explicit_sets = std::vector<std::vector<int>>{};
    for (const auto& set : xc.sets) p1.explicit_sets->push_back(set);
    p1.explicit_sets->push_back(first_triplet);
    p1.explicit_sets->push_back(second_triplet);
    StrategySpace rest;
    rest.explicit_sets = {first_triplet, second_triplet};
    g.strategies.push_back(p1);
    g.strategies.push_back(rest);
    g.strategies.push_back(rest);
  }
  g.validate();
  return g;
}

CongestionInstance reduce_3xc_to_approx(const ExactCoverInstance& xc,
                                        bool allow_large) {
  xc.validate();
  if (xc.set_size != 3) throw DomainError("this reduction needs 3-element sets");
  desk_scale_guard(xc.sets.size(), allow_large, "|Q|");
  int n = xc.n;
  int elements = 3 * n;
  CongestionInstance g;
  for (int k = 1; k <= n; ++k) {
    g.player_ids.push_back("P1_" + std::to_string(k));
    g.player_ids.push_back("P2_" + std::to_string(k));
  }
  g.player_weights.assign(2 * n, Rational(1));
  for (int a = 1; a <= elements; ++a) g.resource_ids.push_back("u" + std::to_string(a));
  for (int k = 1; k <= n; ++k) {
    for (int j = 1; j <= 4; ++j) {
      g.resource_ids.push_back("e" + std::to_string(j) + "_" + std::to_string(k));
    }
  }
  g.resource_costs.assign(elements, CostPolynomial::linear(Rational(201, 300)));
  g.resource_costs.resize(g.resource_ids.size(), CostPolynomial::linear(Rational(8, 9)));
  std::vector<int> ascending(2 * n);
  for (int i = 0; i < 2 * n; ++i) ascending[i] = i;
  for (int a = 0; a < elements; ++a) {
    g.resource_priority.push_back(PriorityList::from_order(ascending, 2 * n));
  }
  for (int k = 0; k < n; ++k) {
    int p1 = 2 * k;
    int p2 = 2 * k + 1;
    for (int j = 1; j <= 4; ++j) {
      // e1, e3: P2 before P1; e2, e4: P1 before P2.
      std::vector<int> order =
          (j % 2 == 1) ? std::vector<int>{p2, p1} : std::vector<int>{p1, p2};
      for (int other : ascending) {
        if (other != p1 && other != p2) order.push_back(other);
      }
      g.resource_priority.push_back(PriorityList::from_order(std::move(order), 2 * n));
    }
  }
  for (int k = 0; k < n; ++k) {
    int base = elements + 4 * k;
    StrategySpace p1;
    p1.explicit_sets = std::vector<std::vector<int>>{};
    for (const auto& set : xc.sets) p1.explicit_sets->push_back(set);
    p1.explicit_sets->push_back({base, base + 1});
    p1.explicit_sets->push_back({base + 2, base + 3});
    StrategySpace p2;
    p2.explicit_sets = {{base, base + 3}, {base + 1, base + 2}};
    g.strategies.push_back(p1);
    g.strategies.push_back(p2);
  }
  g.validate();
  return g;
}

AnyInstance build_fixture(const std::string& name, const FixtureParams& p) {
  if (name == "gstar5") return gstar5();
  if (name == "ghat4") return ghat4();
  if (name == "unrelated3") return unrelated3();
  if (name == "condorcet") return condorcet();
  if (name == "approx32") return approx32();
  if (name == "pos_g2") return pos_g2(p.c);
  if (name == "pos_g2_three") return pos_g2_three(p.c);
  if (name == "pos_g3") return pos_g3(p.m);
  if (name == "pos_g3_sumct") return pos_g3_sumct(p.m, p.k, p.eps);
  if (name == "pos_g4_sumct") return pos_g4_sumct(p.n, p.c, p.eps);
  if (name == "poly_lower") return poly_lower(p.d, p.k);
  throw DomainError("unknown fixture: " + name);
}

}  // namespace prio
