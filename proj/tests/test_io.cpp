#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <random>
#include <string>

#include "prio/fixtures.hpp"
#include "prio/io.hpp"
#include "prio/model.hpp"
#include "support/generators.hpp"

using namespace prio;

namespace {

// Canonical-form round trip: serializing, reparsing, and serializing again
// must be a fixed point.
void check_roundtrip(const AnyInstance& g) {
  std::string text = serialize_instance(g);
  AnyInstance back = parse_instance(text);
  CHECK(serialize_instance(back) == text);
  CHECK(instance_digest(back) == instance_digest(g));
}

bool mentions(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

template <typename Fn>
std::string rejection_message(Fn&& parse_call) {
  try {
    parse_call();
  } catch (const InvalidInstance& e) {
    return e.what();
  }
  FAIL("expected InvalidInstance");
  return {};
}

}  // namespace

TEST_CASE("worked-example instances round-trip through JSON") {
  check_roundtrip(gstar5());
  check_roundtrip(ghat4());
  check_roundtrip(unrelated3());
  check_roundtrip(condorcet());
  check_roundtrip(approx32());
}

TEST_CASE("every fixture round-trips through JSON") {
  for (const char* name :
       {"gstar5", "ghat4", "unrelated3", "condorcet", "approx32", "pos_g2",
        "pos_g2_three", "pos_g3", "pos_g3_sumct", "pos_g4_sumct", "poly_lower"}) {
    FixtureParams p;
    if (std::string(name) == "pos_g2_three") p.c = Rational(3, 2);
    check_roundtrip(build_fixture(name, p));
  }
}

TEST_CASE("reduction outputs round-trip through JSON") {
  ThreeDMInstance dm{2, {{0, 0, 0}, {1, 1, 1}, {0, 1, 1}}};
  check_roundtrip(reduce_3dm_to_ne_existence(dm, Rational(1, 100)));
  check_roundtrip(reduce_3dm_to_cmax(dm, Rational(1, 100)));
  check_roundtrip(reduce_3dm_to_sumct(dm, Rational(11, 10)));
  ExactCoverInstance xc4{4, 1, {{0, 1, 2, 3}}};
  check_roundtrip(reduce_4xc_to_congestion(xc4));
  ExactCoverInstance xc3{3, 1, {{0, 1, 2}}};
  check_roundtrip(reduce_3xc_to_approx(xc3));
}

TEST_CASE("random instances round-trip through JSON") {
  std::mt19937_64 rng(20240818);
  for (int trial = 0; trial < 40; ++trial) {
    check_roundtrip(gen::random_sched(rng, 2 + trial % 5, 2 + trial % 3));
    check_roundtrip(gen::random_linear_congestion(rng, 2 + trial % 4, 3 + trial % 3));
    check_roundtrip(gen::random_matroid_unit(rng, 2 + trial % 3, 3 + trial % 3));
  }
}

TEST_CASE("parsing preserves exact rationals") {
  GameInstance g = gstar5();
  std::string text = serialize_instance(g);
  CHECK(mentions(text, "\"37/4\""));
  AnyInstance back = parse_instance(text);
  const GameInstance& gb = std::get<GameInstance>(back);
  int d = -1;
  for (int i = 0; i < gb.job_count(); ++i) {
    if (gb.job_ids[i] == "d") d = i;
  }
  REQUIRE(d >= 0);
  CHECK(gb.job_weights[d] == Rational(37, 4));
}

TEST_CASE("serialization emits lowest terms") {
  GameInstance g = gstar5();
  g.job_weights[0] = Rational(74, 8);
  std::string text = serialize_instance(g);
  CHECK(mentions(text, "\"37/4\""));
  CHECK_FALSE(mentions(text, "74/8"));
}

TEST_CASE("matroid strategy spaces survive the round trip") {
  std::mt19937_64 rng(7);
  CongestionInstance g = gen::random_matroid_unit(rng, 3, 4);
  std::string text = serialize_instance(g);
  AnyInstance back = parse_instance(text);
  const CongestionInstance& gb = std::get<CongestionInstance>(back);
  for (int i = 0; i < gb.player_count(); ++i) {
    CHECK(gb.strategies[i].matroid.has_value() ==
          g.strategies[i].matroid.has_value());
    CHECK(strategy_list(gb, i) == strategy_list(g, i));
  }
}

TEST_CASE("digest is deterministic and pinned for the worked example") {
  AnyInstance g = AnyInstance(gstar5());
  CHECK(instance_digest(g) == instance_digest(g));
  CHECK(instance_digest(g) == "68f14ff5b94110d0");
  AnyInstance h = AnyInstance(ghat4());
  CHECK(instance_digest(g) != instance_digest(h));
}

TEST_CASE("profile documents round-trip for both kinds") {
  AnyInstance sched = AnyInstance(gstar5());
  Profile s;
  s.choice = {0, 1, 0, 0, 2};
  std::string stext = serialize_profile(sched, s);
  CHECK(mentions(stext, "\"assignment\""));
  CHECK(parse_profile(sched, stext).choice == s.choice);

  AnyInstance cong = AnyInstance(condorcet());
  Profile c;
  c.choice = {0, 1, 1};
  std::string ctext = serialize_profile(cong, c);
  CHECK(parse_profile(cong, ctext).choice == c.choice);
}

TEST_CASE("profile parsing rejects unavailable strategies") {
  AnyInstance cong = AnyInstance(condorcet());
  // e1 alone is not a strategy of p1 (both strategies are triples).
  std::string bad = R"({"assignment": {"p1": ["e1"], "p2": ["e1","e2","e3"],
                        "p3": ["e1","e2","e3"]}})";
  CHECK_THROWS_AS(parse_profile(cong, bad), InvalidInstance);
  AnyInstance sched = AnyInstance(gstar5());
  std::string badm = R"({"assignment": {"a":"M9","b":"M1","c":"M1","d":"M1","e":"M1"}})";
  CHECK_THROWS_AS(parse_profile(sched, badm), InvalidInstance);
}

TEST_CASE("rejections name the offending path") {
  std::string base = serialize_instance(AnyInstance(gstar5()));

  SUBCASE("invalid JSON") {
    CHECK_THROWS_AS(parse_instance("{"), InvalidInstance);
  }
  SUBCASE("unknown kind") {
    std::string msg = rejection_message(
        [] { parse_instance(R"({"kind": "auction"})"); });
    CHECK(mentions(msg, "$.kind"));
  }
  SUBCASE("bad rational") {
    std::string text = base;
    auto pos = text.find("\"37/4\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 6, "\"37/0\"");
    std::string msg = rejection_message([&] { parse_instance(text); });
    CHECK(mentions(msg, "$.jobs"));
    CHECK(mentions(msg, "weight"));
  }
  SUBCASE("duplicate job id") {
    nlohmann::json doc = nlohmann::json::parse(base);
    doc["jobs"][1]["id"] = doc["jobs"][0]["id"];
    std::string msg = rejection_message([&] { parse_instance(doc.dump()); });
    CHECK(mentions(msg, "$.jobs"));
  }
  SUBCASE("priority list missing a job") {
    nlohmann::json doc = nlohmann::json::parse(base);
    doc["machines"][0]["priority"].erase(0);
    std::string msg = rejection_message([&] { parse_instance(doc.dump()); });
    CHECK(mentions(msg, "$.machines[0].priority"));
  }
  SUBCASE("unknown machine in a priority list") {
    nlohmann::json doc = nlohmann::json::parse(base);
    doc["machines"][1]["priority"][0] = "zz";
    std::string msg = rejection_message([&] { parse_instance(doc.dump()); });
    CHECK(mentions(msg, "$.machines[1].priority"));
  }
  SUBCASE("negative delay") {
    nlohmann::json doc = nlohmann::json::parse(base);
    doc["machines"][0]["delay"] = "-1";
    CHECK_THROWS_AS(parse_instance(doc.dump()), InvalidInstance);
  }
}

TEST_CASE("congestion rejections name the offending path") {
  std::string base = serialize_instance(AnyInstance(condorcet()));
  nlohmann::json doc = nlohmann::json::parse(base);
  SUBCASE("strategy referencing an unknown resource") {
    doc["players"][0]["strategies"]["sets"][0][0] = "nope";
    std::string msg = rejection_message([&] { parse_instance(doc.dump()); });
    CHECK(mentions(msg, "$.players[0].strategies"));
  }
  SUBCASE("resource priority missing a player") {
    doc["resources"][0]["priority"].erase(0);
    std::string msg = rejection_message([&] { parse_instance(doc.dump()); });
    CHECK(mentions(msg, "$.resources[0].priority"));
  }
  SUBCASE("negative cost coefficient") {
    doc["resources"][0]["cost"][0] = "-2";
    CHECK_THROWS_AS(parse_instance(doc.dump()), InvalidInstance);
  }
}

TEST_CASE("canonical serialization sorts identifiers") {
  GameInstance g;
  g.job_ids = {"zz", "aa"};
  g.job_weights = {Rational(1), Rational(2)};
  g.machine_ids = {"M2", "M1"};
  g.machine_delays = {Rational(1), Rational(3)};
  g.machine_priority = {PriorityList::from_order({0, 1}, 2),
                        PriorityList::from_order({1, 0}, 2)};
  g.validate();
  std::string text = serialize_instance(g);
  CHECK(text.find("\"aa\"") < text.find("\"zz\""));
  CHECK(text.find("\"M1\"") < text.find("\"M2\""));
  AnyInstance back = parse_instance(text);
  const GameInstance& gb = std::get<GameInstance>(back);
  // Same game after relabeling: job aa (weight 2) first on machine M1
  // (delay 3) still completes at 6.
  Profile s;
  s.choice = {0, 0};
  int aa = gb.job_ids[0] == "aa" ? 0 : 1;
  CHECK(job_cost(gb, s, aa) == 6);
}
