#include "wtap/classic_round.hpp"

#include "wtap/correlation.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace wtap {

namespace {

// Link of `inst` standing in for a derived (split) record: the link with the
// same endpoints if it is no more expensive, otherwise the record's origin.
LinkId real_link_for(const Instance& inst, const LinkRecord& rec) {
  if (auto same = inst.find_link(rec.u, rec.v); same && inst.cost(*same) <= rec.cost) return *same;
  return rec.origin;
}

ExactSolution map_back(const Instance& inst, const Instance& derived, const std::vector<LinkId>& chosen) {
  ExactSolution out;
  for (LinkId id : chosen) out.links.push_back(real_link_for(inst, derived.link(id)));
  std::sort(out.links.begin(), out.links.end());
  out.links.erase(std::unique(out.links.begin(), out.links.end()), out.links.end());
  out.cost = inst.total_cost(out.links);
  return out;
}

// Vertex-induced sub-instance of one piece, re-rooted at the piece root.
struct PieceInstance {
  Instance inst;
  std::vector<LinkId> link_of;  // piece link id -> derived link id
};

PieceInstance piece_instance(const Instance& derived, const PartitionPiece& piece) {
  std::map<VertexId, VertexId> local;
  for (VertexId v : piece.vertex_set) local.emplace(v, static_cast<VertexId>(local.size()));
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (EdgeId e : piece.edges) edges.emplace_back(local.at(derived.parent(e.child)), local.at(e.child));
  std::vector<LinkSpec> links;
  PieceInstance out;
  for (LinkId id : piece.links) {
    const LinkRecord& l = derived.link(id);
    links.push_back(LinkSpec{local.at(l.u), local.at(l.v), l.cost});
    out.link_of.push_back(id);
  }
  out.inst = build_instance(static_cast<int>(local.size()), edges, links);
  return out;
}

}  // namespace

ExactSolution split_round_2approx(const Instance& inst) {
  const FractionalSolution x = cut_lp(inst);
  std::vector<LinkRecord> records;
  for (const auto& l : inst.links()) {
    if (sgn(x.values[l.id]) == 0) continue;
    if (inst.info(l.id).cls == LinkClass::Up) {
      records.push_back(LinkRecord{-1, l.u, l.v, l.cost, l.id});
    } else {
      auto [a, b] = split_link(inst, l.id);
      records.push_back(a);
      records.push_back(b);
    }
  }
  const Instance derived = make_instance_with_records(inst, std::move(records));
  return map_back(inst, derived, uplink_dp_opt(derived).links);
}

std::vector<PartitionPiece> build_partition(const Instance& inst, std::span<const VertexId> v_cor,
                                            std::span<const LinkId> support) {
  const std::vector<char> mask = correlated_mask(inst, v_cor);
  const int n = inst.num_vertices();
  std::vector<VertexId> owner(n, -1);  // piece owning e_v
  std::vector<PartitionPiece> pieces(n);
  for (VertexId v = 0; v < n; ++v) {
    pieces[v].root = v;
    pieces[v].vertex_set.push_back(v);
  }
  for (VertexId v : inst.bfs_order()) {
    if (v == inst.root()) continue;
    owner[v] = mask[v] ? owner[inst.parent(v)] : inst.parent(v);
    pieces[owner[v]].edges.push_back(EdgeId{v});
    pieces[owner[v]].vertex_set.push_back(v);
  }
  for (LinkId id : support) {
    const LinkInfo& info = inst.info(id);
    if (covers_non_leading_uncorrelated(inst, mask, id)) {
      throw Error(ErrorCode::SupportViolation, "link " + std::to_string(id) + " covers a non-leading uncorrelated edge");
    }
    const VertexId p = owner[info.path.front().child];
    for (EdgeId e : info.path) {
      if (owner[e.child] != p) {
        throw Error(ErrorCode::SupportViolation, "link " + std::to_string(id) + " spans two pieces");
      }
    }
    if (info.cls != LinkClass::Up && info.apex != p) {
      throw Error(ErrorCode::SupportViolation, "link " + std::to_string(id) + " is an in-link inside its piece");
    }
    pieces[p].links.push_back(id);
  }
  return pieces;
}

Rational odd_cut_rounding_bound(const Instance& inst, const FractionalSolution& z, std::span<const VertexId> v_cor) {
  const std::vector<char> mask = correlated_mask(inst, v_cor);
  Rational bound = 0;
  for (LinkId id = 0; id < inst.num_links(); ++id) {
    if (sgn(z.values[id]) == 0) continue;
    const Rational c = inst.cost(id) * z.values[id];
    bound += link_correlated(inst, mask, id) ? 2 * c : c;
  }
  return bound;
}

ExactSolution odd_cut_rounding(const Instance& inst, const FractionalSolution& z, std::span<const VertexId> v_cor,
                               const OddCutRoundingOptions& options) {
  const std::vector<char> mask = correlated_mask(inst, v_cor);
  std::vector<LinkRecord> records;
  std::vector<Rational> values;
  for (const auto& l : inst.links()) {
    if (sgn(z.values[l.id]) == 0) continue;
    if (covers_non_leading_uncorrelated(inst, mask, l.id)) {
      throw Error(ErrorCode::SupportViolation, "link " + std::to_string(l.id) + " covers a non-leading uncorrelated edge");
    }
    if (link_correlated(inst, mask, l.id) && inst.info(l.id).cls != LinkClass::Up) {
      auto [a, b] = split_link(inst, l.id);
      records.push_back(a);
      records.push_back(b);
      values.push_back(z.values[l.id]);
      values.push_back(z.values[l.id]);
    } else {
      records.push_back(LinkRecord{-1, l.u, l.v, l.cost, l.id});
      values.push_back(z.values[l.id]);
    }
  }
  const Instance derived = make_instance_with_records(inst, std::move(records));
  std::vector<LinkId> all(derived.num_links());
  for (LinkId id = 0; id < derived.num_links(); ++id) all[id] = id;

  std::vector<LinkId> chosen;
  for (const PartitionPiece& piece : build_partition(derived, v_cor, all)) {
    if (piece.edges.empty()) continue;
    PieceInstance sub = piece_instance(derived, piece);
    Rational budget = 0;
    for (LinkId id : piece.links) budget += derived.cost(id) * values[id];

    std::vector<LinkId> local;
    Rational cost;
    if (options.lp_route || sub.inst.num_links() > kDefaultBruteForceCap) {
      FractionalSolution v = odd_cut_lp(sub.inst);
      if (!is_integral(v)) throw std::logic_error("piece Odd Cut LP vertex is fractional");
      for (LinkId id = 0; id < sub.inst.num_links(); ++id) {
        if (v.values[id] == 1) local.push_back(id);
      }
      cost = v.objective_value;
    } else {
      ExactSolution s = brute_force_opt(sub.inst);
      local = s.links;
      cost = s.cost;
    }
    if (cost > budget) throw std::logic_error("piece solution exceeds its fractional budget");
    for (LinkId id : local) chosen.push_back(sub.link_of[id]);
  }
  return map_back(inst, derived, chosen);
}

}  // namespace wtap
