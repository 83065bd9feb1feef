#include "wtap/correlation.hpp"

#include <algorithm>
#include <string>

namespace wtap {

std::vector<char> correlated_mask(const Instance& inst, std::span<const VertexId> v_cor) {
  std::vector<char> mask(inst.num_vertices(), 0);
  for (VertexId v : v_cor) {
    if (v < 0 || v >= inst.num_vertices()) throw Error(ErrorCode::InvalidVertex, "vertex " + std::to_string(v));
    if (v == inst.root() || inst.parent(v) == inst.root()) {
      throw Error(ErrorCode::InvalidCorrelatedSet, "vertex " + std::to_string(v) + " hangs off the root");
    }
    mask[v] = 1;
  }
  return mask;
}

bool edge_correlated(const std::vector<char>& mask, EdgeId e) { return e.child > 0 && mask[e.child]; }

bool link_correlated(const Instance& inst, const std::vector<char>& mask, LinkId id) {
  const auto& lead = inst.info(id).leading_edges;
  return std::any_of(lead.begin(), lead.end(), [&](EdgeId e) { return edge_correlated(mask, e); });
}

bool link_uncorrelated_up(const Instance& inst, const std::vector<char>& mask, LinkId id) {
  return inst.info(id).cls == LinkClass::Up && !link_correlated(inst, mask, id);
}

bool covers_non_leading_uncorrelated(const Instance& inst, const std::vector<char>& mask, LinkId id) {
  const LinkInfo& info = inst.info(id);
  for (EdgeId e : info.path) {
    if (edge_correlated(mask, e)) continue;
    if (std::find(info.leading_edges.begin(), info.leading_edges.end(), e) == info.leading_edges.end()) return true;
  }
  return false;
}

}  // namespace wtap
