#include "wtap/core.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>

namespace wtap {

const char* to_string(LinkClass c) {
  switch (c) {
    case LinkClass::Up: return "Up";
    case LinkClass::Cross: return "Cross";
    case LinkClass::In: return "In";
  }
  return "?";
}

std::vector<EdgeId> Instance::edges() const {
  std::vector<EdgeId> out;
  out.reserve(parent_.empty() ? 0 : parent_.size() - 1);
  for (VertexId v = 1; v < num_vertices(); ++v) out.push_back(EdgeId{v});
  return out;
}

bool Instance::is_ancestor(VertexId a, VertexId b) const {
  if (depth_[a] > depth_[b]) return false;
  int diff = depth_[b] - depth_[a];
  for (int k = 0; diff > 0; ++k, diff >>= 1) {
    if (diff & 1) b = up_[k][b];
  }
  return a == b;
}

VertexId Instance::lca(VertexId a, VertexId b) const {
  if (depth_[a] < depth_[b]) std::swap(a, b);
  int diff = depth_[a] - depth_[b];
  for (int k = 0; diff > 0; ++k, diff >>= 1) {
    if (diff & 1) a = up_[k][a];
  }
  if (a == b) return a;
  for (int k = static_cast<int>(up_.size()) - 1; k >= 0; --k) {
    if (up_[k][a] != up_[k][b]) {
      a = up_[k][a];
      b = up_[k][b];
    }
  }
  return parent_[a];
}

std::vector<EdgeId> Instance::tree_path(VertexId a, VertexId b) const {
  const VertexId top = lca(a, b);
  std::vector<EdgeId> out;
  auto descend = [&](VertexId x) {
    std::vector<EdgeId> side;
    for (; x != top; x = parent_[x]) side.push_back(EdgeId{x});
    out.insert(out.end(), side.rbegin(), side.rend());
  };
  descend(a);
  descend(b);
  return out;
}

const LinkRecord& Instance::link(LinkId id) const {
  if (id < 0 || id >= num_links()) throw Error(ErrorCode::UnknownLink, "link " + std::to_string(id));
  return links_[id];
}

bool Instance::covers(LinkId id, EdgeId e) const {
  if (e.child == root()) return false;
  const auto& cov = covering_[e.child];
  return std::binary_search(cov.begin(), cov.end(), id);
}

std::optional<LinkId> Instance::find_link(VertexId a, VertexId b) const {
  for (const auto& l : links_) {
    if ((l.u == a && l.v == b) || (l.u == b && l.v == a)) return l.id;
  }
  return std::nullopt;
}

Rational Instance::total_cost(std::span<const LinkId> chosen) const {
  Rational total = 0;
  for (LinkId id : chosen) total += link(id).cost;
  return total;
}

void Instance::finalize_links() {
  const int n = num_vertices();
  infos_.clear();
  covering_.assign(n, {});
  masks_.assign(links_.size(), 0);
  for (const auto& l : links_) {
    infos_.push_back(classify_link(*this, l.id));
    for (EdgeId e : infos_.back().path) {
      covering_[e.child].push_back(l.id);
      if (n <= 64) masks_[l.id] |= std::uint64_t{1} << e.child;
    }
  }
}

Instance build_instance(int n, const std::vector<std::pair<VertexId, VertexId>>& parent_list,
                        const std::vector<LinkSpec>& links) {
  if (n < 1) throw Error(ErrorCode::InvalidVertex, "instance needs at least one vertex");
  Instance inst;
  inst.parent_.assign(n, -1);
  inst.children_.assign(n, {});
  std::set<std::pair<VertexId, VertexId>> seen;
  for (auto [p, c] : parent_list) {
    if (p < 0 || p >= n || c < 0 || c >= n) {
      throw Error(ErrorCode::InvalidVertex, "edge (" + std::to_string(p) + "," + std::to_string(c) + ")");
    }
    if (p == c) throw Error(ErrorCode::CycleDetected, "self-loop tree edge at " + std::to_string(p));
    if (c == 0) throw Error(ErrorCode::CycleDetected, "root 0 given a parent");
    if (!seen.insert({std::min(p, c), std::max(p, c)}).second) {
      throw Error(ErrorCode::MultiEdge, "repeated tree edge {" + std::to_string(p) + "," + std::to_string(c) + "}");
    }
    if (inst.parent_[c] != -1) throw Error(ErrorCode::CycleDetected, "vertex " + std::to_string(c) + " has two parents");
    inst.parent_[c] = p;
  }
  if (static_cast<int>(parent_list.size()) > n - 1) throw Error(ErrorCode::CycleDetected, "more than n-1 tree edges");

  // Every non-root vertex must reach the root by following parents.
  for (VertexId v = 1; v < n; ++v) {
    if (inst.parent_[v] == -1) throw Error(ErrorCode::DisconnectedTree, "vertex " + std::to_string(v) + " has no parent");
  }
  for (VertexId v = 1; v < n; ++v) {
    VertexId x = v;
    for (int steps = 0; x != 0; ++steps) {
      if (steps > n) throw Error(ErrorCode::CycleDetected, "parent chain from " + std::to_string(v) + " loops");
      x = inst.parent_[x];
    }
  }
  inst.parent_[0] = 0;
  for (VertexId v = 1; v < n; ++v) inst.children_[inst.parent_[v]].push_back(v);
  for (auto& ch : inst.children_) std::sort(ch.begin(), ch.end());

  inst.depth_.assign(n, 0);
  std::queue<VertexId> queue;
  queue.push(0);
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop();
    inst.bfs_order_.push_back(v);
    for (VertexId c : inst.children_[v]) {
      inst.depth_[c] = inst.depth_[v] + 1;
      queue.push(c);
    }
  }

  int levels = 1;
  while ((1 << levels) < n) ++levels;
  inst.up_.assign(levels, std::vector<VertexId>(n));
  inst.up_[0] = inst.parent_;
  for (int k = 1; k < levels; ++k) {
    for (VertexId v = 0; v < n; ++v) inst.up_[k][v] = inst.up_[k - 1][inst.up_[k - 1][v]];
  }

  for (const auto& spec : links) {
    if (spec.u < 0 || spec.u >= n || spec.v < 0 || spec.v >= n) {
      throw Error(ErrorCode::InvalidVertex, "link endpoint out of range");
    }
    if (spec.u == spec.v) throw Error(ErrorCode::SelfLoopLink, "link {" + std::to_string(spec.u) + "," + std::to_string(spec.v) + "}");
    if (sgn(spec.cost) < 0) throw Error(ErrorCode::NegativeCost, "link cost " + spec.cost.get_str());
    const LinkId id = static_cast<LinkId>(inst.links_.size());
    inst.links_.push_back(LinkRecord{id, spec.u, spec.v, spec.cost, id});
  }
  inst.finalize_links();
  return inst;
}

Instance make_instance_with_records(const Instance& tree_source, std::vector<LinkRecord> records) {
  Instance inst = tree_source;
  for (size_t i = 0; i < records.size(); ++i) records[i].id = static_cast<LinkId>(i);
  inst.links_ = std::move(records);
  inst.finalize_links();
  return inst;
}

LinkInfo classify_link(const Instance& inst, LinkId link) {
  if (link < 0 || link >= static_cast<int>(inst.links().size())) {
    throw Error(ErrorCode::UnknownLink, "link " + std::to_string(link));
  }
  const LinkRecord& l = inst.links()[link];
  LinkInfo info;
  info.apex = inst.lca(l.u, l.v);
  info.path = inst.tree_path(l.u, l.v);
  const bool up = info.apex == l.u || info.apex == l.v;
  if (up) {
    info.cls = LinkClass::Up;
  } else if (info.apex == inst.root()) {
    info.cls = LinkClass::Cross;
  } else {
    info.cls = LinkClass::In;
  }
  // First edge below the apex on each side.
  for (VertexId end : {l.u, l.v}) {
    if (end == info.apex) continue;
    VertexId x = end;
    while (inst.parent(x) != info.apex) x = inst.parent(x);
    info.leading_edges.push_back(EdgeId{x});
  }
  return info;
}

bool is_uplink(const Instance& inst, LinkId link) { return inst.info(link).cls == LinkClass::Up; }

Instance shadow_complete(const Instance& inst) {
  struct Candidate {
    Rational cost;
    LinkId source;  // id in `inst` of the link contributing this candidate
  };
  std::map<std::pair<VertexId, VertexId>, Candidate> best;
  auto offer = [&](VertexId a, VertexId b, const Rational& cost, LinkId source) {
    const auto key = std::make_pair(std::min(a, b), std::max(a, b));
    auto it = best.find(key);
    if (it == best.end()) {
      best.emplace(key, Candidate{cost, source});
    } else if (cost < it->second.cost || (cost == it->second.cost && source < it->second.source)) {
      it->second = Candidate{cost, source};
    }
  };
  for (const auto& l : inst.links()) {
    // Vertices on the path, in order from u to v.
    std::vector<VertexId> verts;
    const VertexId top = inst.lca(l.u, l.v);
    for (VertexId x = l.u; x != top; x = inst.parent(x)) verts.push_back(x);
    verts.push_back(top);
    std::vector<VertexId> tail;
    for (VertexId x = l.v; x != top; x = inst.parent(x)) tail.push_back(x);
    verts.insert(verts.end(), tail.rbegin(), tail.rend());
    for (size_t i = 0; i < verts.size(); ++i) {
      for (size_t j = i + 1; j < verts.size(); ++j) offer(verts[i], verts[j], l.cost, l.id);
    }
  }
  std::map<std::pair<VertexId, VertexId>, LinkId> new_id;
  for (const auto& [key, cand] : best) {
    const LinkId id = static_cast<LinkId>(new_id.size());
    new_id.emplace(key, id);
  }
  std::vector<LinkRecord> records;
  records.reserve(best.size());
  for (const auto& [key, cand] : best) {
    const LinkRecord& src = inst.links()[cand.source];
    const auto src_key = std::make_pair(std::min(src.u, src.v), std::max(src.u, src.v));
    LinkRecord rec;
    rec.u = key.first;
    rec.v = key.second;
    rec.cost = cand.cost;
    rec.origin = new_id.at(src_key);
    records.push_back(rec);
  }
  return make_instance_with_records(inst, std::move(records));
}

std::pair<LinkRecord, LinkRecord> split_link(const Instance& inst, LinkId link) {
  const LinkRecord& l = inst.link(link);
  const LinkInfo& info = inst.info(link);
  if (info.cls == LinkClass::Up) throw Error(ErrorCode::NotSplittable, "link " + std::to_string(link) + " is an up-link");
  LinkRecord a{-1, l.u, info.apex, l.cost, link};
  LinkRecord b{-1, l.v, info.apex, l.cost, link};
  return {a, b};
}

std::vector<LinkId> covering_links(const Instance& inst, EdgeId edge) {
  if (edge.child < 0 || edge.child >= inst.num_vertices()) {
    throw Error(ErrorCode::UnknownEdge, "edge e_" + std::to_string(edge.child));
  }
  if (edge.child == inst.root()) return {};
  return inst.covering(edge.child);
}

bool is_feasible(const Instance& inst, std::span<const LinkId> chosen) {
  std::vector<char> covered(inst.num_vertices(), 0);
  for (LinkId id : chosen) {
    inst.link(id);  // validates the id
    for (EdgeId e : inst.info(id).path) covered[e.child] = 1;
  }
  for (VertexId v = 1; v < inst.num_vertices(); ++v) {
    if (!covered[v]) return false;
  }
  return true;
}

}  // namespace wtap
