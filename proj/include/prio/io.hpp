#pragma once

#include <string>

#include "prio/fixtures.hpp"

namespace prio {

// JSON interchange. Documents carry a "kind" of "scheduling" or
// "congestion"; rationals travel as strings ("p/q" or an integer),
// priorities and strategies as id arrays. Parsing validates fully and
// names the offending path on rejection.
AnyInstance parse_instance(const std::string& text);

// Canonical form: ids sorted, rationals in lowest terms, stable key
// order. parse(serialize(g)) reproduces g up to the canonical relabeling.
std::string serialize_instance(const GameInstance& g);
std::string serialize_instance(const CongestionInstance& g);
std::string serialize_instance(const AnyInstance& g);

// FNV-1a 64-bit hash of the canonical serialization, as 16 hex digits.
std::string instance_digest(const AnyInstance& g);

// Profile documents: {"assignment": {job: machine}} for scheduling,
// {"assignment": {player: [resources...]}} for congestion.
Profile parse_profile(const AnyInstance& g, const std::string& text);
std::string serialize_profile(const AnyInstance& g, const Profile& s);

}  // namespace prio
