#include "prio/io.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <json.hpp>

namespace prio {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void reject(const std::string& path, const std::string& why) {
  throw InvalidInstance(path + ": " + why);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) reject(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) reject(path + "." + key, "missing");
  return *it;
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) reject(path, "expected a string");
  return v.get<std::string>();
}

Rational get_rational(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (!v.is_string()) reject(path, "expected a rational string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const ParseError& e) {
    reject(path, e.what());
  }
}

const json& get_array(const json& v, const std::string& path) {
  if (!v.is_array()) reject(path, "expected an array");
  return v;
}

// Resolve an id array against an id->index map; every id must be known.
std::vector<int> resolve_ids(const json& arr, const std::map<std::string, int>& index,
                             const std::string& path) {
  get_array(arr, path);
  std::vector<int> out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    std::string id = get_string(arr[k], path + "[" + std::to_string(k) + "]");
    auto it = index.find(id);
    if (it == index.end()) {
      reject(path + "[" + std::to_string(k) + "]", "unknown id \"" + id + "\"");
    }
    out.push_back(it->second);
  }
  return out;
}

PriorityList parse_priority(const json& arr, const std::map<std::string, int>& index,
                            const std::string& path) {
  std::vector<int> order = resolve_ids(arr, index, path);
  if (order.size() != index.size()) {
    reject(path, "priority list must cover every id exactly once");
  }
  std::vector<bool> seen(index.size(), false);
  for (int i : order) {
    if (seen[i]) reject(path, "duplicate id in priority list");
    seen[i] = true;
  }
  return PriorityList::from_order(std::move(order), static_cast<int>(index.size()));
}

std::map<std::string, int> index_ids(const std::vector<std::string>& ids,
                                     const std::string& path) {
  std::map<std::string, int> index;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (!index.emplace(ids[k], static_cast<int>(k)).second) {
      reject(path, "duplicate id \"" + ids[k] + "\"");
    }
  }
  return index;
}

GameInstance parse_scheduling(const json& doc) {
  GameInstance g;
  const json& jobs = get_array(field(doc, "jobs", "$"), "$.jobs");
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    std::string path = "$.jobs[" + std::to_string(k) + "]";
    g.job_ids.push_back(get_string(field(jobs[k], "id", path), path + ".id"));
    g.job_weights.push_back(get_rational(field(jobs[k], "weight", path), path + ".weight"));
  }
  auto job_index = index_ids(g.job_ids, "$.jobs");
  const json& machines = get_array(field(doc, "machines", "$"), "$.machines");
  for (std::size_t k = 0; k < machines.size(); ++k) {
    std::string path = "$.machines[" + std::to_string(k) + "]";
    g.machine_ids.push_back(get_string(field(machines[k], "id", path), path + ".id"));
    g.machine_delays.push_back(
        get_rational(field(machines[k], "delay", path), path + ".delay"));
    g.machine_priority.push_back(
        parse_priority(field(machines[k], "priority", path), job_index,
                       path + ".priority"));
  }
  index_ids(g.machine_ids, "$.machines");
  if (doc.contains("unrelated_weights")) {
    const json& rows =
        get_array(doc["unrelated_weights"], "$.unrelated_weights");
    if (rows.size() != g.job_ids.size()) {
      reject("$.unrelated_weights", "needs one row per job");
    }
    std::vector<std::vector<Rational>> matrix(g.job_ids.size());
    std::vector<bool> filled(g.job_ids.size(), false);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      std::string path = "$.unrelated_weights[" + std::to_string(k) + "]";
      std::string id = get_string(field(rows[k], "job", path), path + ".job");
      auto it = job_index.find(id);
      if (it == job_index.end()) reject(path + ".job", "unknown id \"" + id + "\"");
      if (filled[it->second]) reject(path + ".job", "duplicate row for \"" + id + "\"");
      filled[it->second] = true;
      const json& ws = get_array(field(rows[k], "weights", path), path + ".weights");
      if (ws.size() != g.machine_ids.size()) {
        reject(path + ".weights", "needs one weight per machine");
      }
      for (std::size_t l = 0; l < ws.size(); ++l) {
        matrix[it->second].push_back(
            get_rational(ws[l], path + ".weights[" + std::to_string(l) + "]"));
      }
    }
    g.unrelated_weights = std::move(matrix);
  }
  try {
    g.validate();
  } catch (const InvalidInstance& e) {
    reject("$", e.what());
  }
  return g;
}

MatroidDescriptor parse_matroid(const json& m, const std::map<std::string, int>& rindex,
                                const std::string& path) {
  std::string type = get_string(field(m, "type", path), path + ".type");
  if (type == "uniform") {
    MatroidUniform u;
    const json& rank = field(m, "rank", path);
    if (!rank.is_number_integer()) reject(path + ".rank", "expected an integer");
    u.rank = rank.get<int>();
    u.ground = resolve_ids(field(m, "ground", path), rindex, path + ".ground");
    std::sort(u.ground.begin(), u.ground.end());
    return u;
  }
  if (type == "partition") {
    MatroidPartition p;
    const json& blocks = get_array(field(m, "blocks", path), path + ".blocks");
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      auto block =
          resolve_ids(blocks[k], rindex, path + ".blocks[" + std::to_string(k) + "]");
      std::sort(block.begin(), block.end());
      p.blocks.push_back(std::move(block));
    }
    const json& quotas = get_array(field(m, "quotas", path), path + ".quotas");
    for (std::size_t k = 0; k < quotas.size(); ++k) {
      if (!quotas[k].is_number_integer()) {
        reject(path + ".quotas[" + std::to_string(k) + "]", "expected an integer");
      }
      p.quotas.push_back(quotas[k].get<int>());
    }
    return p;
  }
  if (type == "bases") {
    MatroidBases b;
    const json& bases = get_array(field(m, "bases", path), path + ".bases");
    for (std::size_t k = 0; k < bases.size(); ++k) {
      auto basis =
          resolve_ids(bases[k], rindex, path + ".bases[" + std::to_string(k) + "]");
      std::sort(basis.begin(), basis.end());
      b.bases.push_back(std::move(basis));
    }
    return b;
  }
  reject(path + ".type", "unknown matroid type \"" + type + "\"");
}

CongestionInstance parse_congestion(const json& doc) {
  CongestionInstance g;
  const json& resources = get_array(field(doc, "resources", "$"), "$.resources");
  for (std::size_t k = 0; k < resources.size(); ++k) {
    std::string path = "$.resources[" + std::to_string(k) + "]";
    g.resource_ids.push_back(get_string(field(resources[k], "id", path), path + ".id"));
  }
  auto rindex = index_ids(g.resource_ids, "$.resources");
  const json& players = get_array(field(doc, "players", "$"), "$.players");
  for (std::size_t k = 0; k < players.size(); ++k) {
    std::string path = "$.players[" + std::to_string(k) + "]";
    g.player_ids.push_back(get_string(field(players[k], "id", path), path + ".id"));
    g.player_weights.push_back(
        get_rational(field(players[k], "weight", path), path + ".weight"));
    const json& sp = field(players[k], "strategies", path);
    StrategySpace space;
    if (sp.is_object() && sp.contains("matroid")) {
      space.matroid = parse_matroid(sp["matroid"], rindex, path + ".strategies.matroid");
    } else if (sp.is_object() && sp.contains("sets")) {
      const json& sets = get_array(sp["sets"], path + ".strategies.sets");
      std::vector<std::vector<int>> parsed;
      for (std::size_t l = 0; l < sets.size(); ++l) {
        auto set = resolve_ids(sets[l], rindex,
                               path + ".strategies.sets[" + std::to_string(l) + "]");
        std::sort(set.begin(), set.end());
        parsed.push_back(std::move(set));
      }
      space.explicit_sets = std::move(parsed);
    } else {
      reject(path + ".strategies", "expected {\"sets\": ...} or {\"matroid\": ...}");
    }
    g.strategies.push_back(std::move(space));
  }
  auto pindex = index_ids(g.player_ids, "$.players");
  for (std::size_t k = 0; k < resources.size(); ++k) {
    std::string path = "$.resources[" + std::to_string(k) + "]";
    const json& cost = get_array(field(resources[k], "cost", path), path + ".cost");
    CostPolynomial poly;
    for (std::size_t l = 0; l < cost.size(); ++l) {
      poly.coeffs.push_back(get_rational(cost[l], path + ".cost[" + std::to_string(l) + "]"));
    }
    g.resource_costs.push_back(std::move(poly));
    g.resource_priority.push_back(parse_priority(field(resources[k], "priority", path),
                                                 pindex, path + ".priority"));
  }
  try {
    g.validate();
  } catch (const InvalidInstance& e) {
    reject("$", e.what());
  }
  return g;
}

// Permutation sorting ids; out[k] = original index of the k-th sorted id.
std::vector<int> sorted_order(const std::vector<std::string>& ids) {
  std::vector<int> perm(ids.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&ids](int a, int b) { return ids[a] < ids[b]; });
  return perm;
}

json priority_to_json(const PriorityList& pl, const std::vector<std::string>& ids) {
  json arr = json::array();
  for (int i : pl.order) arr.push_back(ids[i]);
  return arr;
}

json id_set_to_json(const std::vector<int>& set, const std::vector<std::string>& ids) {
  std::vector<std::string> named;
  for (int e : set) named.push_back(ids[e]);
  std::sort(named.begin(), named.end());
  json arr = json::array();
  for (auto& s : named) arr.push_back(std::move(s));
  return arr;
}

json scheduling_to_json(const GameInstance& g) {
  auto jperm = sorted_order(g.job_ids);
  auto mperm = sorted_order(g.machine_ids);
  json doc;
  doc["kind"] = "scheduling";
  doc["jobs"] = json::array();
  for (int j : jperm) {
    doc["jobs"].push_back(
        {{"id", g.job_ids[j]}, {"weight", format_rational(g.job_weights[j])}});
  }
  doc["machines"] = json::array();
  for (int m : mperm) {
    doc["machines"].push_back({{"id", g.machine_ids[m]},
                               {"delay", format_rational(g.machine_delays[m])},
                               {"priority", priority_to_json(g.machine_priority[m],
                                                             g.job_ids)}});
  }
  if (g.unrelated_weights) {
    doc["unrelated_weights"] = json::array();
    for (int j : jperm) {
      json ws = json::array();
      for (int m : mperm) ws.push_back(format_rational(g.weight_on(j, m)));
      doc["unrelated_weights"].push_back(
          {{"job", g.job_ids[j]}, {"weights", std::move(ws)}});
    }
  }
  return doc;
}

json matroid_to_json(const MatroidDescriptor& m, const std::vector<std::string>& ids) {
  if (const auto* u = std::get_if<MatroidUniform>(&m)) {
    return {{"type", "uniform"},
            {"rank", u->rank},
            {"ground", id_set_to_json(u->ground, ids)}};
  }
  if (const auto* p = std::get_if<MatroidPartition>(&m)) {
    json blocks = json::array();
    for (const auto& block : p->blocks) blocks.push_back(id_set_to_json(block, ids));
    json quotas = json::array();
    for (int q : p->quotas) quotas.push_back(q);
    return {{"type", "partition"}, {"blocks", std::move(blocks)},
            {"quotas", std::move(quotas)}};
  }
  const auto& b = std::get<MatroidBases>(m);
  json bases = json::array();
  for (const auto& basis : b.bases) bases.push_back(id_set_to_json(basis, ids));
  return {{"type", "bases"}, {"bases", std::move(bases)}};
}

json polynomial_to_json(const CostPolynomial& poly) {
  json arr = json::array();
  int top = poly.degree();
  for (int k = 0; k <= top; ++k) arr.push_back(format_rational(poly.coeffs[k]));
  return arr;
}

json congestion_to_json(const CongestionInstance& g) {
  auto pperm = sorted_order(g.player_ids);
  auto rperm = sorted_order(g.resource_ids);
  json doc;
  doc["kind"] = "congestion";
  doc["players"] = json::array();
  for (int p : pperm) {
    json strategies;
    const StrategySpace& sp = g.strategies[p];
    if (sp.is_matroid()) {
      strategies = {{"matroid", matroid_to_json(*sp.matroid, g.resource_ids)}};
    } else {
      json sets = json::array();
      for (const auto& set : *sp.explicit_sets) {
        sets.push_back(id_set_to_json(set, g.resource_ids));
      }
      strategies = {{"sets", std::move(sets)}};
    }
    doc["players"].push_back({{"id", g.player_ids[p]},
                              {"weight", format_rational(g.player_weights[p])},
                              {"strategies", std::move(strategies)}});
  }
  doc["resources"] = json::array();
  for (int r : rperm) {
    doc["resources"].push_back(
        {{"id", g.resource_ids[r]},
         {"cost", polynomial_to_json(g.resource_costs[r])},
         {"priority", priority_to_json(g.resource_priority[r], g.player_ids)}});
  }
  return doc;
}

}  // namespace

AnyInstance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInstance(std::string("invalid JSON: ") + e.what());
  }
  std::string kind = get_string(field(doc, "kind", "$"), "$.kind");
  if (kind == "scheduling") return parse_scheduling(doc);
  if (kind == "congestion") return parse_congestion(doc);
  reject("$.kind", "expected \"scheduling\" or \"congestion\"");
}

std::string serialize_instance(const GameInstance& g) {
  g.validate();
  return scheduling_to_json(g).dump(2) + "\n";
}

std::string serialize_instance(const CongestionInstance& g) {
  g.validate();
  return congestion_to_json(g).dump(2) + "\n";
}

std::string serialize_instance(const AnyInstance& g) {
  return std::visit([](const auto& inst) { return serialize_instance(inst); }, g);
}

std::string instance_digest(const AnyInstance& g) {
  std::string text = serialize_instance(g);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) {
    out[k] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

Profile parse_profile(const AnyInstance& g, const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInstance(std::string("invalid JSON: ") + e.what());
  }
  const json& assignment = field(doc, "assignment", "$");
  if (!assignment.is_object()) reject("$.assignment", "expected an object");
  if (const auto* sched = std::get_if<GameInstance>(&g)) {
    auto jindex = index_ids(sched->job_ids, "$");
    auto mindex = index_ids(sched->machine_ids, "$");
    Profile s;
    s.choice.assign(sched->job_count(), -1);
    for (const auto& [job, machine] : assignment.items()) {
      auto jit = jindex.find(job);
      if (jit == jindex.end()) reject("$.assignment", "unknown job \"" + job + "\"");
      std::string mid = get_string(machine, "$.assignment." + job);
      auto mit = mindex.find(mid);
      if (mit == mindex.end()) {
        reject("$.assignment." + job, "unknown machine \"" + mid + "\"");
      }
      s.choice[jit->second] = mit->second;
    }
    for (int j = 0; j < sched->job_count(); ++j) {
      if (s.choice[j] < 0) {
        reject("$.assignment", "missing job \"" + sched->job_ids[j] + "\"");
      }
    }
    return s;
  }
  const auto& cong = std::get<CongestionInstance>(g);
  auto pindex = index_ids(cong.player_ids, "$");
  auto rindex = index_ids(cong.resource_ids, "$");
  Profile s;
  s.choice.assign(cong.player_count(), -1);
  for (const auto& [player, set_json] : assignment.items()) {
    auto pit = pindex.find(player);
    if (pit == pindex.end()) reject("$.assignment", "unknown player \"" + player + "\"");
    auto set = resolve_ids(set_json, rindex, "$.assignment." + player);
    std::sort(set.begin(), set.end());
    auto list = strategy_list(cong, pit->second);
    auto found = std::find(list.begin(), list.end(), set);
    if (found == list.end()) {
      reject("$.assignment." + player, "not an available strategy");
    }
    s.choice[pit->second] = static_cast<int>(found - list.begin());
  }
  for (int i = 0; i < cong.player_count(); ++i) {
    if (s.choice[i] < 0) {
      reject("$.assignment", "missing player \"" + cong.player_ids[i] + "\"");
    }
  }
  return s;
}

std::string serialize_profile(const AnyInstance& g, const Profile& s) {
  json doc;
  json assignment;
  if (const auto* sched = std::get_if<GameInstance>(&g)) {
    validate_profile(*sched, s);
    for (int j : sorted_order(sched->job_ids)) {
      assignment[sched->job_ids[j]] = sched->machine_ids[s.choice[j]];
    }
  } else {
    const auto& cong = std::get<CongestionInstance>(g);
    validate_profile(cong, s);
    for (int p : sorted_order(cong.player_ids)) {
      assignment[cong.player_ids[p]] =
          id_set_to_json(chosen_set(cong, s, p), cong.resource_ids);
    }
  }
  doc["assignment"] = std::move(assignment);
  return doc.dump(2) + "\n";
}

}  // namespace prio
