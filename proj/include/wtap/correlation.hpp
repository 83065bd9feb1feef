#pragma once

#include "wtap/core.hpp"

#include <span>
#include <vector>

namespace wtap {

/// Membership mask for a correlated vertex set. e_v is correlated iff v is in
/// the set; the root and its children may not be.
std::vector<char> correlated_mask(const Instance& inst, std::span<const VertexId> v_cor);

bool edge_correlated(const std::vector<char>& mask, EdgeId e);

/// A link is correlated iff one of its leading edges is.
bool link_correlated(const Instance& inst, const std::vector<char>& mask, LinkId id);

/// Links in the uncorrelated class that are up-links (L_UP).
bool link_uncorrelated_up(const Instance& inst, const std::vector<char>& mask, LinkId id);

/// True iff some uncorrelated edge on the link's path is not one of its
/// leading edges (equivalently, the link covers e_v and an uncorrelated child
/// edge of v for some v).
bool covers_non_leading_uncorrelated(const Instance& inst, const std::vector<char>& mask, LinkId id);

}  // namespace wtap
