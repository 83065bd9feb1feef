#pragma once

#include "wtap/error.hpp"
#include "wtap/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace wtap {

using VertexId = int;
using LinkId = int;

/// Tree edge {parent(v), v}, named by its child vertex v. The root's id denotes
/// the dummy edge e_r, which no link covers.
struct EdgeId {
  VertexId child = 0;

  auto operator<=>(const EdgeId&) const = default;
};

/// A candidate link. `origin` is the link whose cover path this one is a
/// sub-path of (itself for original links).
struct LinkRecord {
  LinkId id = 0;
  VertexId u = 0;
  VertexId v = 0;
  Rational cost;
  LinkId origin = 0;
};

enum class LinkClass { Up, Cross, In };

const char* to_string(LinkClass c);

struct LinkInfo {
  VertexId apex = 0;
  LinkClass cls = LinkClass::Up;
  std::vector<EdgeId> leading_edges;  // 1 for up-links, 2 otherwise
  std::vector<EdgeId> path;           // from apex down to u, then apex down to v
};

struct LinkSpec {
  VertexId u = 0;
  VertexId v = 0;
  Rational cost;
};

/// Rooted tree (root = vertex 0) plus a weighted link set. Immutable after
/// construction; ancestry and per-link metadata are precomputed.
class Instance {
 public:
  Instance() = default;

  int num_vertices() const { return static_cast<int>(parent_.size()); }
  int num_links() const { return static_cast<int>(links_.size()); }
  VertexId root() const { return 0; }
  EdgeId dummy_root_edge() const { return EdgeId{0}; }

  VertexId parent(VertexId v) const { return parent_[v]; }
  int depth(VertexId v) const { return depth_[v]; }
  const std::vector<VertexId>& children(VertexId v) const { return children_[v]; }
  /// Vertices in BFS order from the root.
  const std::vector<VertexId>& bfs_order() const { return bfs_order_; }
  /// All real tree edges, ordered by child id.
  std::vector<EdgeId> edges() const;

  bool is_ancestor(VertexId a, VertexId b) const;  // a is an ancestor of b (or a == b)
  VertexId lca(VertexId a, VertexId b) const;
  /// Edges of the a-b tree path: from lca(a, b) down to a, then from
  /// lca(a, b) down to b.
  std::vector<EdgeId> tree_path(VertexId a, VertexId b) const;

  const std::vector<LinkRecord>& links() const { return links_; }
  const LinkRecord& link(LinkId id) const;
  const LinkInfo& info(LinkId id) const { return infos_[id]; }
  const Rational& cost(LinkId id) const { return links_[id].cost; }
  /// Links covering e_child (ascending ids). Empty for the dummy edge.
  const std::vector<LinkId>& covering(VertexId child) const { return covering_[child]; }
  bool covers(LinkId id, EdgeId e) const;
  /// Bit v set iff the link covers e_v. Requires num_vertices() <= 64.
  std::uint64_t path_mask(LinkId id) const { return masks_[id]; }
  bool masks_available() const { return num_vertices() <= 64; }

  /// Link with the given endpoints (either order), if any.
  std::optional<LinkId> find_link(VertexId a, VertexId b) const;

  Rational total_cost(std::span<const LinkId> chosen) const;

  friend Instance build_instance(int n, const std::vector<std::pair<VertexId, VertexId>>& parent_list,
                                 const std::vector<LinkSpec>& links);
  friend Instance make_instance_with_records(const Instance& tree_source,
                                             std::vector<LinkRecord> records);

 private:
  void finalize_links();

  std::vector<VertexId> parent_;
  std::vector<int> depth_;
  std::vector<std::vector<VertexId>> children_;
  std::vector<VertexId> bfs_order_;
  std::vector<std::vector<VertexId>> up_;  // binary lifting table
  std::vector<LinkRecord> links_;
  std::vector<LinkInfo> infos_;
  std::vector<std::vector<LinkId>> covering_;
  std::vector<std::uint64_t> masks_;
};

/// Builds an instance from `(parent, child)` tree edges. Vertex 0 is the root.
Instance build_instance(int n, const std::vector<std::pair<VertexId, VertexId>>& parent_list,
                        const std::vector<LinkSpec>& links);

/// Same tree as `tree_source`, with the given link records (ids and origins
/// are taken as given and must be consistent).
Instance make_instance_with_records(const Instance& tree_source, std::vector<LinkRecord> records);

LinkInfo classify_link(const Instance& inst, LinkId link);

/// Adds every shadow of every link, keeping the cheapest link per endpoint
/// pair (ties: smallest originating link id). Output links are ordered by
/// canonical endpoint pair.
Instance shadow_complete(const Instance& inst);

/// The two up-link halves {u, apex} and {v, apex} of a cross- or in-link,
/// both carrying the original cost; `id` is -1 and `origin` is `link`.
std::pair<LinkRecord, LinkRecord> split_link(const Instance& inst, LinkId link);

std::vector<LinkId> covering_links(const Instance& inst, EdgeId edge);

/// True iff every real tree edge is covered by at least one chosen link.
bool is_feasible(const Instance& inst, std::span<const LinkId> chosen);

/// Up-link test straight from the endpoints.
bool is_uplink(const Instance& inst, LinkId link);

}  // namespace wtap
