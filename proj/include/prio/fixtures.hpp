#pragma once

#include <array>
#include <string>
#include <variant>

#include "prio/model.hpp"

namespace prio {

using AnyInstance = std::variant<GameInstance, CongestionInstance>;

// 3-bounded 3-dimensional matching instance: triples over three disjoint
// universes of size n, each element occurring in at most 3 triples.
struct ThreeDMInstance {
  int n = 0;
  std::vector<std::array<int, 3>> triples;  // (x, y, z), each in 0..n-1

  void validate() const;
};

// Exact cover by 3- or 4-element sets over a universe of size set_size * n.
struct ExactCoverInstance {
  int set_size = 0;  // 3 or 4
  int n = 0;
  std::vector<std::vector<int>> sets;  // sorted subsets of 0..set_size*n-1

  void validate() const;
};

// --- Paper example instances ------------------------------------------------

// 5 jobs on 3 machines with no pure NE (243 profiles).
GameInstance gstar5();
// 4 jobs on 3 machines with no pure NE (81 profiles).
GameInstance ghat4();
// 3 jobs on 2 unrelated machines with no pure NE (8 profiles).
GameInstance unrelated3();
// 3 players, 6 unit-cost resources, rotating priorities; no pure NE.
CongestionInstance condorcet();
// 2 players, 4 resources of delay 8/9; a 3/2-approximate NE exists but no
// exact (or better-than-3/2-approximate) one.
CongestionInstance approx32();

// --- Lower-bound families ---------------------------------------------------

// Two machines with delays (1, c), jobs of weight 1 and c on one shared
// list; the unique NE stacks both on the fast machine (needs c above the
// golden ratio for the stated PoS value).
GameInstance pos_g2(const Rational& c);
// Three-job family for c below the golden ratio.
GameInstance pos_g2_three(const Rational& c);
// Identical machines: one heavy job of weight m behind m(m-1) unit jobs;
// PoS = 2 - 1/m for the makespan.
GameInstance pos_g3(int m);
// Identical machines, sum of completion times: m unit jobs pinned first on
// distinct machines ahead of (k-1)m epsilon jobs.
GameInstance pos_g3_sumct(int m, int k, const Rational& eps);
// Global list on two machines, sum of completion times: jobs of weight 1
// and 1/c ahead of n-2 epsilon jobs.
GameInstance pos_g4_sumct(int n, const Rational& c, const Rational& eps);
// Polynomial-cost PoA lower bound: (d+2)k unit players on (d+2)k resources
// with cost x^d and rotating priorities.
CongestionInstance poly_lower(int d, int k);

// --- Hardness-reduction gadgets ---------------------------------------------
// The generators refuse |T| (resp. |Q|) above 4 unless allow_large is set,
// keeping downstream exhaustive verification tractable.

// Scheduling game that has an NE iff the matching instance has a perfect
// matching (the no-NE core plus triplet machines and dummies).
GameInstance reduce_3dm_to_ne_existence(const ThreeDMInstance& dm, const Rational& eps,
                                        bool allow_large = false);
// Identical machines; best NE makespan m+3*eps iff a matching exists, else
// every NE has makespan at least 2m-1.
GameInstance reduce_3dm_to_cmax(const ThreeDMInstance& dm, const Rational& eps,
                                bool allow_large = false);
// Identical machines, sum of completion times gap m+1 versus m+k; k and
// eps are derived from the approximation target r.
GameInstance reduce_3dm_to_sumct(const ThreeDMInstance& dm, const Rational& r,
                                 bool allow_large = false);
// Unit-weight congestion game with an NE iff a 4-exact cover exists.
CongestionInstance reduce_4xc_to_congestion(const ExactCoverInstance& xc,
                                            bool allow_large = false);
// Congestion game with a 3/2-approximate NE iff a 3-exact cover exists.
CongestionInstance reduce_3xc_to_approx(const ExactCoverInstance& xc,
                                        bool allow_large = false);

// k and eps chosen by reduce_3dm_to_sumct for a given r and machine count.
int sumct_reduction_k(const Rational& r, int m);
Rational sumct_reduction_eps(int k, int m);

// --- CLI-facing dispatcher --------------------------------------------------

struct FixtureParams {
  Rational c = Rational(2);
  int m = 3;
  int k = 3;
  Rational eps = Rational(1, 1000);
  int d = 1;
  int n = 4;
};

AnyInstance build_fixture(const std::string& name, const FixtureParams& params);

}  // namespace prio
