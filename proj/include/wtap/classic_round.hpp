#pragma once

#include "wtap/exact.hpp"
#include "wtap/lp.hpp"

#include <span>
#include <vector>

namespace wtap {

struct PartitionPiece {
  VertexId root = 0;
  std::vector<VertexId> vertex_set;  // root first, then BFS order
  std::vector<EdgeId> edges;
  std::vector<LinkId> links;
};

/// Cut LP, split every cross/in-link of its support into its two up-link
/// halves, and solve the up-link instance exactly. Cost <= 2 * Cut LP.
ExactSolution split_round_2approx(const Instance& inst);

/// One piece per vertex i: i, its uncorrelated children, and the correlated
/// components hanging below them. `support` links must already be up-links
/// or uncorrelated.
std::vector<PartitionPiece> build_partition(const Instance& inst, std::span<const VertexId> v_cor,
                                            std::span<const LinkId> support);

struct OddCutRoundingOptions {
  /// Solve each piece's Odd Cut LP and take its (integral) vertex instead of
  /// brute-forcing the piece.
  bool lp_route = false;
};

/// Split correlated links of supp(z), partition, solve every piece integrally.
/// Cost <= 2 c(z(L_C)) + c(z(L_U)).
ExactSolution odd_cut_rounding(const Instance& inst, const FractionalSolution& z, std::span<const VertexId> v_cor,
                               const OddCutRoundingOptions& options = {});

/// 2 c(z(L_C)) + c(z(L_U)).
Rational odd_cut_rounding_bound(const Instance& inst, const FractionalSolution& z, std::span<const VertexId> v_cor);

}  // namespace wtap
