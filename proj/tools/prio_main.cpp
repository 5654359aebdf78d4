// Command-line front end: analyze, construct, brd, verify, fixture,
// reduce, bounds. JSON on stdout, diagnostics on stderr.
// Exit codes: 0 success, 1 no NE where one was required (or a failed
// verdict), 2 validation/usage error, 3 profile-budget refusal.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "prio/construct.hpp"
#include "prio/io.hpp"
#include "prio/metrics.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace prio;

constexpr int kOk = 0;
constexpr int kNoNash = 1;
constexpr int kInvalid = 2;
constexpr int kBudget = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw InvalidInstance("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw InvalidInstance("cannot write " + out_path);
  out << text;
}

BigInt default_budget() {
  if (const char* env = std::getenv("PRIO_BUDGET")) return BigInt(env);
  return BigInt(1000000);
}

Objective parse_objective(const std::string& name) {
  if (name == "makespan") return Objective::Makespan;
  if (name == "sumct") return Objective::SumCompletionTimes;
  if (name == "weighted") return Objective::SumWeightedCosts;
  throw DomainError("unknown objective: " + name);
}

json profile_json(const AnyInstance& inst, const Profile& s) {
  return json::parse(serialize_profile(inst, s));
}

struct CommonArgs {
  std::string instance_path;
  std::string out_path;
  std::string budget_text;

  BigInt budget() const {
    return budget_text.empty() ? default_budget() : BigInt(budget_text);
  }
};

// --- analyze ---------------------------------------------------------------

int run_analyze(const CommonArgs& common, const std::string& objective_name,
                int list_cap, bool table) {
  AnyInstance inst = parse_instance(read_input(common.instance_path));
  Objective objective = parse_objective(objective_name);
  GameView view = std::visit([](const auto& g) { return GameView(g); }, inst);
  BigInt budget = common.budget();

  json doc;
  doc["digest"] = instance_digest(inst);
  doc["kind"] = view.is_scheduling() ? "scheduling" : "congestion";
  doc["objective"] = objective_name;
  std::vector<Profile> nash = enumerate_nash(view, budget);
  doc["ne_count"] = std::to_string(nash.size());
  auto [opt_profile, opt_value] = social_optimum(view, objective, budget);
  doc["opt_value"] = format_rational(opt_value);
  doc["opt_profile"] = profile_json(inst, opt_profile)["assignment"];
  auto report = inefficiency(view, objective, budget);
  if (report) {
    doc["best_ne_value"] = format_rational(report->best_ne_value);
    doc["worst_ne_value"] = format_rational(report->worst_ne_value);
    doc["pos"] = format_rational(report->pos);
    doc["poa"] = format_rational(report->poa);
    doc["best_ne_profile"] = profile_json(inst, report->best_ne_profile)["assignment"];
    doc["worst_ne_profile"] = profile_json(inst, report->worst_ne_profile)["assignment"];
  }
  if (list_cap > 0) {
    json list = json::array();
    for (std::size_t k = 0; k < nash.size() && k < static_cast<std::size_t>(list_cap);
         ++k) {
      list.push_back(profile_json(inst, nash[k])["assignment"]);
    }
    doc["ne_profiles"] = std::move(list);
  }
  if (table) {
    std::ostringstream tsv;
    tsv << "field\tvalue\n";
    for (const auto& [key, value] : doc.items()) {
      if (value.is_string()) tsv << key << '\t' << value.get<std::string>() << '\n';
    }
    emit(tsv.str(), common.out_path);
  } else {
    emit(doc.dump(2) + "\n", common.out_path);
  }
  return nash.empty() ? kNoNash : kOk;
}

// --- construct -------------------------------------------------------------

Profile construct_for_class(const AnyInstance& inst, const std::string& cls,
                            std::string& chosen) {
  if (const auto* cong = std::get_if<CongestionInstance>(&inst)) {
    if (cls != "auto" && cls != "matroid") {
      throw UnsupportedError("class " + cls + " applies to scheduling instances");
    }
    if (!classify(*cong).count(ClassTag::MatroidUnit)) {
      throw UnsupportedError("instance is not a unit-weight matroid game");
    }
    chosen = "matroid";
    return ne_matroid_unit(*cong);
  }
  const auto& sched = std::get<GameInstance>(inst);
  auto tags = classify(sched);
  auto pick = [&](const std::string& name) {
    chosen = name;
    if (name == "g1") return ne_greedy_singleton(sched);
    if (name == "g2") return ne_two_machines(sched);
    if (name == "g3") return ne_identical_machines(sched);
    if (name == "g4") return ne_global_list(sched);
    throw UnsupportedError("class " + name + " applies to congestion instances");
  };
  if (cls != "auto") return pick(cls);
  if (tags.count(ClassTag::UnitWeights)) return pick("g1");
  if (tags.count(ClassTag::TwoMachines)) return pick("g2");
  if (tags.count(ClassTag::IdenticalDelays)) return pick("g3");
  if (tags.count(ClassTag::GlobalList)) return pick("g4");
  throw UnsupportedError("instance matches no guaranteed-existence class");
}

int run_construct(const CommonArgs& common, const std::string& cls) {
  AnyInstance inst = parse_instance(read_input(common.instance_path));
  std::string chosen;
  Profile s = construct_for_class(inst, cls, chosen);
  json doc = profile_json(inst, s);
  json out;
  out["class"] = chosen;
  out["assignment"] = doc["assignment"];
  emit(out.dump(2) + "\n", common.out_path);
  return kOk;
}

// --- brd -------------------------------------------------------------------

json strategy_name(const AnyInstance& inst, const GameView& view, int player,
                   int strategy) {
  if (const auto* sched = std::get_if<GameInstance>(&inst)) {
    return sched->machine_ids[strategy];
  }
  const auto& cong = std::get<CongestionInstance>(inst);
  json arr = json::array();
  std::vector<std::string> named;
  for (int e : view.strategy_set(player, strategy)) named.push_back(cong.resource_ids[e]);
  std::sort(named.begin(), named.end());
  for (auto& s : named) arr.push_back(std::move(s));
  return arr;
}

int run_brd(const CommonArgs& common, const std::string& start,
            const std::string& policy_name, int priority_source, long limit) {
  AnyInstance inst = parse_instance(read_input(common.instance_path));
  GameView view = std::visit([](const auto& g) { return GameView(g); }, inst);
  Profile initial;
  if (start == "all-on-fastest") {
    const auto* sched = std::get_if<GameInstance>(&inst);
    if (!sched) throw DomainError("all-on-fastest start needs a scheduling instance");
    int fast = 0;
    for (int j = 1; j < sched->machine_count(); ++j) {
      if (sched->machine_delays[j] < sched->machine_delays[fast]) fast = j;
    }
    initial.choice.assign(view.players(), fast);
  } else if (start == "construct") {
    std::string chosen;
    initial = construct_for_class(inst, "auto", chosen);
  } else if (start == "first") {
    initial.choice.assign(view.players(), 0);
  } else {
    initial = parse_profile(inst, read_input(start));
  }

  DynamicsPolicy policy;
  if (policy_name == "round-robin") {
    policy.rule = SelectionRule::RoundRobin;
  } else if (policy_name == "lowest-id") {
    policy.rule = SelectionRule::LowestId;
  } else if (policy_name == "priority") {
    policy.rule = SelectionRule::PriorityOrder;
    policy.priority_source = priority_source;
  } else {
    throw DomainError("unknown policy: " + policy_name);
  }
  if (limit <= 0) limit = default_step_limit(view);
  const std::string& ipath = common.instance_path;
  DynamicsTrace trace = run_dynamics(view, std::move(initial), policy, limit);

  json doc;
  doc["digest"] = instance_digest(inst);
  doc["policy"] = policy_name;
  switch (trace.status) {
    case TerminalStatus::Converged: doc["status"] = "converged"; break;
    case TerminalStatus::CycleDetected: doc["status"] = "cycle"; break;
    case TerminalStatus::StepLimit: doc["status"] = "step-limit"; break;
  }
  doc["steps"] = trace.moves.size();
  if (trace.cycle_start >= 0) doc["cycle_start"] = trace.cycle_start;
  json moves = json::array();
  std::vector<std::string> player_ids = std::visit(
      [](const auto& g) {
        if constexpr (std::is_same_v<std::decay_t<decltype(g)>, GameInstance>) {
          return g.job_ids;
        } else {
          return g.player_ids;
        }
      },
      inst);
  for (const DynamicsMove& mv : trace.moves) {
    moves.push_back({{"player", player_ids[mv.player]},
                     {"from", strategy_name(inst, view, mv.player, mv.from)},
                     {"to", strategy_name(inst, view, mv.player, mv.to)},
                     {"old_cost", format_rational(mv.old_cost)},
                     {"new_cost", format_rational(mv.new_cost)}});
  }
  doc["moves"] = std::move(moves);
  doc["final"] = profile_json(inst, trace.final_profile)["assignment"];
  (void)ipath;
  emit(doc.dump(2) + "\n", common.out_path);
  return kOk;
}

// --- verify ----------------------------------------------------------------

int run_verify(const CommonArgs& common, const std::string& profile_path,
               const std::string& alpha_text) {
  AnyInstance inst = parse_instance(read_input(common.instance_path));
  GameView view = std::visit([](const auto& g) { return GameView(g); }, inst);
  Profile s = parse_profile(inst, read_input(profile_path));
  Rational alpha = alpha_text.empty() ? Rational(1) : parse_rational(alpha_text);
  NashResult result = is_alpha_nash(view, s, alpha);
  json doc;
  doc["digest"] = instance_digest(inst);
  doc["alpha"] = format_rational(alpha);
  doc["stable"] = result.stable;
  if (result.witness) {
    std::vector<std::string> player_ids = std::visit(
        [](const auto& g) {
          if constexpr (std::is_same_v<std::decay_t<decltype(g)>, GameInstance>) {
            return g.job_ids;
          } else {
            return g.player_ids;
          }
        },
        inst);
    doc["witness"] = {
        {"player", player_ids[result.witness->player]},
        {"deviation", strategy_name(inst, view, result.witness->player,
                                    result.witness->strategy)},
        {"current_cost", format_rational(view.cost(s, result.witness->player))},
        {"deviation_cost",
         format_rational(view.deviation_cost(s, result.witness->player,
                                             result.witness->strategy))}};
  }
  emit(doc.dump(2) + "\n", common.out_path);
  return result.stable ? kOk : kNoNash;
}

// --- fixture / reduce ------------------------------------------------------

int run_fixture(const std::string& name, const FixtureParams& params,
                const std::string& out_path) {
  emit(serialize_instance(build_fixture(name, params)), out_path);
  return kOk;
}

ThreeDMInstance parse_3dm(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("n") ||
      !doc.contains("triples")) {
    throw InvalidInstance("matching input needs {\"n\": ..., \"triples\": [[x,y,z]...]}");
  }
  ThreeDMInstance dm;
  dm.n = doc["n"].get<int>();
  for (const auto& t : doc["triples"]) {
    if (!t.is_array() || t.size() != 3) throw InvalidInstance("triples must have 3 entries");
    dm.triples.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
  }
  return dm;
}

ExactCoverInstance parse_xc(const std::string& text, int set_size) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("n") ||
      !doc.contains("sets")) {
    throw InvalidInstance("cover input needs {\"n\": ..., \"sets\": [[...]...]}");
  }
  ExactCoverInstance xc;
  xc.set_size = set_size;
  xc.n = doc["n"].get<int>();
  for (const auto& s : doc["sets"]) {
    std::vector<int> set;
    for (const auto& e : s) set.push_back(e.get<int>());
    xc.sets.push_back(std::move(set));
  }
  return xc;
}

int run_reduce(const std::string& type, const std::string& input_path,
               const std::string& eps_text, const std::string& r_text,
               bool allow_large, const std::string& out_path) {
  std::string text = read_input(input_path);
  Rational eps = eps_text.empty() ? Rational(1, 100) : parse_rational(eps_text);
  AnyInstance out;
  if (type == "3dm-ne") {
    out = reduce_3dm_to_ne_existence(parse_3dm(text), eps, allow_large);
  } else if (type == "3dm-cmax") {
    out = reduce_3dm_to_cmax(parse_3dm(text), eps, allow_large);
  } else if (type == "3dm-sumct") {
    Rational r = r_text.empty() ? Rational(11, 10) : parse_rational(r_text);
    out = reduce_3dm_to_sumct(parse_3dm(text), r, allow_large);
  } else if (type == "4xc") {
    out = reduce_4xc_to_congestion(parse_xc(text, 4), allow_large);
  } else if (type == "3xc") {
    out = reduce_3xc_to_approx(parse_xc(text, 3), allow_large);
  } else {
    throw DomainError("unknown reduction type: " + type);
  }
  emit(serialize_instance(out), out_path);
  return kOk;
}

// --- bounds ----------------------------------------------------------------

int run_bounds(const CommonArgs& common, const std::string& objective_name,
               const std::string& bound_name) {
  AnyInstance inst = parse_instance(read_input(common.instance_path));
  GameView view = std::visit([](const auto& g) { return GameView(g); }, inst);
  Objective objective = parse_objective(objective_name);
  BigInt budget = common.budget();

  std::vector<std::pair<std::string, BoundId>> to_check;
  auto add = [&](const std::string& name, BoundId id) { to_check.emplace_back(name, id); };
  if (bound_name == "auto") {
    auto tags = std::visit([](const auto& g) { return classify(g); }, inst);
    if (view.is_scheduling()) {
      if (tags.count(ClassTag::UnitWeights)) add("unit-exact", BoundId::UnitWeightsExact);
      if (tags.count(ClassTag::TwoMachines) && objective == Objective::Makespan) {
        add("two-machines-makespan", BoundId::TwoMachinesMakespan);
      }
      if (tags.count(ClassTag::IdenticalDelays)) {
        if (objective == Objective::Makespan) {
          add("identical-makespan", BoundId::IdenticalMakespan);
        } else {
          add("identical-sumct", BoundId::IdenticalSumCompletion);
        }
      }
    } else {
      bool linear = true;
      for (const auto& poly : view.congestion().resource_costs) {
        if (!poly.is_linear()) linear = false;
      }
      if (linear) add("congestion-linear", BoundId::CongestionLinear);
    }
  } else if (bound_name == "unit-exact") {
    add(bound_name, BoundId::UnitWeightsExact);
  } else if (bound_name == "two-machines-makespan") {
    add(bound_name, BoundId::TwoMachinesMakespan);
  } else if (bound_name == "identical-makespan") {
    add(bound_name, BoundId::IdenticalMakespan);
  } else if (bound_name == "identical-sumct") {
    add(bound_name, BoundId::IdenticalSumCompletion);
  } else if (bound_name == "congestion-linear") {
    add(bound_name, BoundId::CongestionLinear);
  } else {
    throw DomainError("unknown bound: " + bound_name);
  }

  json doc;
  doc["digest"] = instance_digest(inst);
  doc["objective"] = objective_name;
  json verdicts = json::array();
  bool all_hold = true;
  for (const auto& [name, id] : to_check) {
    bool holds = check_bound(view, objective, id, budget);
    all_hold = all_hold && holds;
    verdicts.push_back({{"bound", name}, {"holds", holds}});
  }
  doc["verdicts"] = std::move(verdicts);
  emit(doc.dump(2) + "\n", common.out_path);
  return all_hold ? kOk : kNoNash;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of scheduling and congestion games with priority lists"};
  app.require_subcommand(1);

  CommonArgs common;
  std::string objective = "makespan";
  std::string cls = "auto";
  std::string start = "first";
  std::string policy = "round-robin";
  std::string profile_path;
  std::string alpha;
  std::string fixture_name;
  std::string reduce_type;
  std::string reduce_input = "-";
  std::string eps_text;
  std::string r_text;
  std::string bound_name = "auto";
  long limit = 0;
  int list_cap = 0;
  int priority_source = 0;
  bool table = false;
  bool allow_large = false;
  FixtureParams params;
  std::string c_text, eps_param;

  auto add_common = [&](CLI::App* cmd, bool needs_instance = true) {
    if (needs_instance) {
      cmd->add_option("--instance", common.instance_path, "instance JSON ('-' = stdin)")
          ->required();
    }
    cmd->add_option("--out", common.out_path, "output path (default stdout)");
    cmd->add_option("--budget", common.budget_text,
                    "profile-space budget (default $PRIO_BUDGET or 10^6)");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "NE census, optimum, PoA/PoS");
  add_common(analyze);
  analyze->add_option("--objective", objective, "makespan | sumct | weighted");
  analyze->add_option("--list-ne", list_cap, "include up to N NE profiles");
  analyze->add_flag("--table", table, "emit an aligned TSV instead of JSON");

  CLI::App* construct = app.add_subcommand("construct", "build an NE for a known class");
  add_common(construct);
  construct->add_option("--class", cls, "auto | g1 | g2 | g3 | g4 | matroid");

  CLI::App* brd = app.add_subcommand("brd", "best-response dynamics trace");
  add_common(brd);
  brd->add_option("--start", start,
                  "profile file | construct | all-on-fastest | first");
  brd->add_option("--policy", policy, "round-robin | lowest-id | priority");
  brd->add_option("--priority-source", priority_source,
                  "machine/resource index for --policy priority");
  brd->add_option("--limit", limit, "step limit (default 10x profile space)");

  CLI::App* verify = app.add_subcommand("verify", "check a profile for (alpha-)stability");
  add_common(verify);
  verify->add_option("--profile", profile_path, "profile JSON")->required();
  verify->add_option("--alpha", alpha, "approximation factor (default 1)");

  CLI::App* fixture = app.add_subcommand("fixture", "emit a named built-in instance");
  fixture->add_option("name", fixture_name, "fixture name")->required();
  fixture->add_option("--out", common.out_path, "output path (default stdout)");
  fixture->add_option("--c", c_text, "delay/weight ratio parameter");
  fixture->add_option("--m", params.m, "machine count");
  fixture->add_option("--k", params.k, "multiplicity parameter");
  fixture->add_option("--eps", eps_param, "epsilon weight");
  fixture->add_option("--d", params.d, "cost-polynomial degree");
  fixture->add_option("--n", params.n, "job/player count");

  CLI::App* reduce = app.add_subcommand("reduce", "emit a hardness-reduction instance");
  reduce->add_option("--type", reduce_type,
                     "3dm-ne | 3dm-cmax | 3dm-sumct | 4xc | 3xc")
      ->required();
  reduce->add_option("--input", reduce_input, "source-problem JSON ('-' = stdin)");
  reduce->add_option("--eps", eps_text, "epsilon (default 1/100)");
  reduce->add_option("--r", r_text, "approximation target (default 11/10)");
  reduce->add_flag("--allow-large", allow_large, "lift the desk-scale size guard");
  reduce->add_option("--out", common.out_path, "output path (default stdout)");

  CLI::App* bounds = app.add_subcommand("bounds", "check class-specific PoA bounds");
  add_common(bounds);
  bounds->add_option("--objective", objective, "makespan | sumct | weighted");
  bounds->add_option("--bound", bound_name,
                     "auto | unit-exact | two-machines-makespan | "
                     "identical-makespan | identical-sumct | congestion-linear");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (!c_text.empty()) params.c = parse_rational(c_text);
    if (!eps_param.empty()) params.eps = parse_rational(eps_param);
    if (analyze->parsed()) return run_analyze(common, objective, list_cap, table);
    if (construct->parsed()) return run_construct(common, cls);
    if (brd->parsed()) return run_brd(common, start, policy, priority_source, limit);
    if (verify->parsed()) return run_verify(common, profile_path, alpha);
    if (fixture->parsed()) return run_fixture(fixture_name, params, common.out_path);
    if (reduce->parsed()) {
      return run_reduce(reduce_type, reduce_input, eps_text, r_text, allow_large,
                        common.out_path);
    }
    if (bounds->parsed()) return run_bounds(common, objective, bound_name);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
