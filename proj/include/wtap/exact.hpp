#pragma once

#include "wtap/core.hpp"

#include <span>
#include <vector>

namespace wtap {

struct ExactSolution {
  Rational cost;
  std::vector<LinkId> links;  // sorted ascending
};

inline constexpr int kDefaultBruteForceCap = 24;

/// Minimum-cost feasible link set by exhaustive search with pruning; ties go to
/// the lexicographically smallest sorted id sequence.
ExactSolution brute_force_opt(const Instance& inst, int link_cap = kDefaultBruteForceCap);

/// Exact optimum for instances whose links are all up-links, via a bottom-up
/// tree DP over "highest ancestor depth already reached".
ExactSolution uplink_dp_opt(const Instance& inst);

/// Cheapest subset of `allowed` (up-links only) covering every edge of
/// `q_edges`, which must be connected with a single highest edge.
ExactSolution add_q(const Instance& inst, std::span<const EdgeId> q_edges, std::span<const LinkId> allowed);

}  // namespace wtap
