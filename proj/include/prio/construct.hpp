#pragma once

#include <set>

#include "prio/equilibria.hpp"
#include "prio/model.hpp"

namespace prio {

// Guaranteed-existence classes. An instance may belong to several or none.
enum class ClassTag {
  UnitWeights,       // all job weights equal
  TwoMachines,       // m == 2
  IdenticalDelays,   // all machine delays equal
  GlobalList,        // all machines share one priority list
  MatroidUnit,       // congestion, matroid strategies, unit weights
};

std::set<ClassTag> classify(const GameInstance& g);
std::set<ClassTag> classify(const CongestionInstance& g);

// Two related machines: place everything on the fast machine, then sweep
// the slow machine's priority list offering each job one strictly-improving
// migration. The result is an NE without any polish.
Profile ne_two_machines(const GameInstance& g);

// Equal job weights: greedily give the machine with the cheapest next slot
// (ties: lowest machine id) its highest-priority unassigned job.
Profile ne_greedy_singleton(const GameInstance& g);

// Identical delays: least-loaded machine takes its top unassigned priority
// job; a best-response polish pass finishes the construction.
Profile ne_identical_machines(const GameInstance& g);

// One global priority list: list scheduling in that order, each job taking
// a completion-time-minimizing machine (ties: lowest machine id).
Profile ne_global_list(const GameInstance& g);

// Unit-weight matroid congestion: the counter algorithm. Per-resource
// counters start at 1; the globally cheapest resource at its counter is
// offered to the highest-priority remaining player on its list, who takes
// it iff it keeps the player's set independent and the set is not yet a
// basis; otherwise the player is struck from that resource's list.
Profile ne_matroid_unit(const CongestionInstance& g);

}  // namespace prio
