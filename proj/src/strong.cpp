#include "wtap/strong.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <optional>
#include <set>

namespace wtap {

namespace {

std::uint64_t bit(VertexId v) { return std::uint64_t{1} << v; }

std::uint64_t edge_mask(std::span<const EdgeId> edges) {
  std::uint64_t m = 0;
  for (EdgeId e : edges) m |= bit(e.child);
  return m;
}

std::vector<EdgeId> mask_edges(std::uint64_t m) {
  std::vector<EdgeId> out;
  for (; m; m &= m - 1) out.push_back(EdgeId{std::countr_zero(m)});
  return out;
}

void require_masks(const Instance& inst) {
  if (!inst.masks_available()) throw Error(ErrorCode::TooLarge, "strong LP needs at most 64 vertices");
}

std::vector<int> degrees(const Instance& inst, std::uint64_t m) {
  std::vector<int> deg(inst.num_vertices(), 0);
  for (; m; m &= m - 1) {
    const VertexId c = std::countr_zero(m);
    ++deg[c];
    ++deg[inst.parent(c)];
  }
  return deg;
}

int count_leaves(const Instance& inst, std::uint64_t m) {
  int k = 0;
  for (int d : degrees(inst, m)) k += d == 1;
  return k;
}

void check_edges(const Instance& inst, std::span<const EdgeId> edges) {
  for (EdgeId e : edges) {
    if (e.child <= 0 || e.child >= inst.num_vertices()) {
      throw Error(ErrorCode::UnknownEdge, "edge " + std::to_string(e.child));
    }
  }
}

// Edges of Q incident to w.
std::vector<VertexId> incident(const Instance& inst, std::uint64_t q, VertexId w) {
  std::vector<VertexId> out;
  if (w != inst.root() && (q & bit(w))) out.push_back(w);
  for (VertexId c : inst.children(w)) {
    if (q & bit(c)) out.push_back(c);
  }
  return out;
}

VertexId far_end(const Instance& inst, VertexId edge, VertexId near) {
  return near == edge ? inst.parent(edge) : edge;
}

// Q oriented away from c: per edge, the edges continuing past its far end.
struct Oriented {
  std::vector<VertexId> first;                    // edges at c
  std::vector<std::vector<VertexId>> next;        // indexed by edge child id
  std::vector<VertexId> prev;                     // edge before, -1 at c
  std::vector<VertexId> far;                      // far endpoint per edge
};

Oriented orient(const Instance& inst, std::uint64_t q, VertexId c) {
  const int n = inst.num_vertices();
  Oriented o;
  o.next.assign(n, {});
  o.prev.assign(n, -1);
  o.far.assign(n, -1);
  std::deque<std::pair<VertexId, VertexId>> queue;  // (vertex, edge used to reach it)
  queue.emplace_back(c, -1);
  while (!queue.empty()) {
    auto [w, via] = queue.front();
    queue.pop_front();
    for (VertexId g : incident(inst, q, w)) {
      if (g == via) continue;
      o.prev[g] = via;
      o.far[g] = far_end(inst, g, w);
      if (via < 0) {
        o.first.push_back(g);
      } else {
        o.next[via].push_back(g);
      }
      queue.emplace_back(o.far[g], g);
    }
  }
  return o;
}

std::vector<LinkId> links_touching(const Instance& inst, std::uint64_t m) {
  std::vector<LinkId> out;
  for (LinkId id = 0; id < inst.num_links(); ++id) {
    if (inst.path_mask(id) & m) out.push_back(id);
  }
  return out;
}

std::vector<LinkId> restrict_to(const Instance& inst, const std::vector<LinkId>& links, std::uint64_t m) {
  std::vector<LinkId> out;
  for (LinkId id : links) {
    if (inst.path_mask(id) & m) out.push_back(id);
  }
  return out;
}

bool sorted_contains(const std::vector<LinkId>& v, LinkId id) { return std::binary_search(v.begin(), v.end(), id); }

std::string edge_list(std::span<const EdgeId> edges) {
  std::string s = "{";
  for (size_t i = 0; i < edges.size(); ++i) s += (i ? "," : "") + std::to_string(edges[i].child);
  return s + "}";
}

std::string link_list(std::span<const LinkId> links) {
  std::string s = "{";
  for (size_t i = 0; i < links.size(); ++i) s += (i ? "," : "") + std::to_string(links[i]);
  return s + "}";
}

std::string event_name(const StrongEvent& ev) {
  return "F(" + edge_list(ev.R) + "," + edge_list(ev.R_small) + "," + link_list(ev.L_small) + ")";
}

}  // namespace

int StrongModel::find_event(int subtree, std::uint64_t small, const std::vector<LinkId>& links) const {
  auto it = index_.find({subtree, small, links});
  return it == index_.end() ? -1 : it->second;
}

int StrongModel::relevant_index(int event, LinkId id) const {
  const auto& r = relevant[event];
  auto it = std::lower_bound(r.begin(), r.end(), id);
  return it != r.end() && *it == id ? static_cast<int>(it - r.begin()) : -1;
}

std::vector<std::vector<EdgeId>> enumerate_subtrees(const Instance& inst, int beta, long cap) {
  require_masks(inst);
  if (beta < 0) throw Error(ErrorCode::NotApplicable, "beta must be non-negative");
  const int max_leaves = beta + 3;
  const int n = inst.num_vertices();
  std::set<std::uint64_t> seen;
  std::deque<std::uint64_t> queue;
  for (VertexId c = 1; c < n; ++c) {
    seen.insert(bit(c));
    queue.push_back(bit(c));
  }
  while (!queue.empty()) {
    const std::uint64_t m = queue.front();
    queue.pop_front();
    // Vertices touched by m; any edge at one of them keeps the set connected.
    std::uint64_t verts = 0;
    for (std::uint64_t r = m; r; r &= r - 1) {
      const VertexId c = std::countr_zero(r);
      verts |= bit(c) | bit(inst.parent(c));
    }
    for (VertexId c = 1; c < n; ++c) {
      if (m & bit(c)) continue;
      if (!(verts & (bit(c) | bit(inst.parent(c))))) continue;
      const std::uint64_t grown = m | bit(c);
      if (seen.count(grown)) continue;
      // Leaf count never drops as a subtree grows.
      if (count_leaves(inst, grown) > max_leaves) continue;
      seen.insert(grown);
      if (static_cast<long>(seen.size()) > cap) {
        throw Error(ErrorCode::SubtreeExplosion, "more than " + std::to_string(cap) + " subtrees");
      }
      queue.push_back(grown);
    }
  }
  std::vector<std::vector<EdgeId>> out;
  out.reserve(seen.size());
  for (std::uint64_t m : seen) out.push_back(mask_edges(m));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<VertexId> subtree_leaves(const Instance& inst, std::span<const EdgeId> edges) {
  check_edges(inst, edges);
  const auto deg = degrees(inst, edge_mask(edges));
  std::vector<VertexId> out;
  for (VertexId v = 0; v < inst.num_vertices(); ++v) {
    if (deg[v] == 1) out.push_back(v);
  }
  return out;
}

std::vector<EdgeId> leaf_edges(const Instance& inst, std::span<const EdgeId> edges) {
  check_edges(inst, edges);
  const auto deg = degrees(inst, edge_mask(edges));
  std::vector<EdgeId> out;
  for (EdgeId e : edges) {
    if (deg[e.child] == 1 || deg[inst.parent(e.child)] == 1) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

VertexId extension_center(const Instance& inst, std::span<const EdgeId> R, std::span<const EdgeId> Q) {
  check_edges(inst, R);
  check_edges(inst, Q);
  if (R.empty()) throw Error(ErrorCode::NotApplicable, "empty subtree");
  const std::uint64_t r = edge_mask(R);
  const std::uint64_t q = edge_mask(Q);
  if ((r & q) != r) throw Error(ErrorCode::NotNested, "R is not contained in Q");
  // Root u of R: upper end of its highest edge.
  VertexId top = R.front().child;
  for (EdgeId e : R) {
    if (inst.depth(e.child) < inst.depth(top)) top = e.child;
  }
  const VertexId u = inst.parent(top);
  const auto deg_r = degrees(inst, r);
  if (deg_r[u] >= 2) return u;
  const VertexId v = top;
  if (std::popcount(r) >= 2) return v;
  return degrees(inst, q)[u] >= 2 ? u : v;
}

StrongModel build_strong_model(const Instance& inst, int beta, int rho, long subtree_cap, long event_cap) {
  require_masks(inst);
  if (rho < 1) throw Error(ErrorCode::NotApplicable, "rho must be positive");
  StrongModel m;
  m.inst = inst;
  m.beta = beta;
  m.rho = rho;
  m.subtrees = enumerate_subtrees(inst, beta, subtree_cap);
  m.events_of_subtree.resize(m.subtrees.size());
  for (size_t s = 0; s < m.subtrees.size(); ++s) {
    const std::uint64_t mask = edge_mask(m.subtrees[s]);
    m.subtree_mask.push_back(mask);
    m.subtree_index.emplace(mask, static_cast<int>(s));
  }
  for (size_t s = 0; s < m.subtrees.size(); ++s) {
    const auto& R = m.subtrees[s];
    const std::vector<LinkId> rel = links_touching(inst, m.subtree_mask[s]);
    const std::vector<EdgeId> le = leaf_edges(inst, R);
    const int k = static_cast<int>(le.size());
    for (std::uint32_t sub = 0; sub < (1u << k); ++sub) {
      std::uint64_t small = 0;
      for (int i = 0; i < k; ++i) {
        if (sub >> i & 1) small |= bit(le[i].child);
      }
      const std::vector<LinkId> cand = restrict_to(inst, rel, small);
      const std::vector<EdgeId> small_edges = mask_edges(small);
      std::vector<int> count(inst.num_vertices(), 0);
      std::vector<LinkId> chosen;
      std::function<void(size_t)> rec = [&](size_t i) {
        if (i == cand.size()) {
          for (EdgeId e : small_edges) {
            if (count[e.child] == 0) return;
          }
          const int id = static_cast<int>(m.events.size());
          if (id >= event_cap) {
            throw Error(ErrorCode::EventExplosion, "more than " + std::to_string(event_cap) + " strong events");
          }
          m.events.push_back(StrongEvent{static_cast<int>(s), R, small_edges, chosen});
          m.small_mask.push_back(small);
          m.relevant.push_back(rel);
          m.events_of_subtree[s].push_back(id);
          m.index_.emplace(std::make_tuple(static_cast<int>(s), small, chosen), id);
          return;
        }
        rec(i + 1);
        const std::uint64_t hit = inst.path_mask(cand[i]) & small;
        for (std::uint64_t h = hit; h; h &= h - 1) {
          if (count[std::countr_zero(h)] >= rho) return;
        }
        for (std::uint64_t h = hit; h; h &= h - 1) ++count[std::countr_zero(h)];
        chosen.push_back(cand[i]);
        rec(i + 1);
        chosen.pop_back();
        for (std::uint64_t h = hit; h; h &= h - 1) --count[std::countr_zero(h)];
      };
      rec(0);
    }
  }
  return m;
}

std::vector<int> ext_set(const StrongModel& model, int event, int q_subtree) {
  const Instance& inst = model.inst;
  const StrongEvent& f = model.events.at(event);
  const std::uint64_t r = model.subtree_mask[f.subtree];
  const std::uint64_t q = model.subtree_mask.at(q_subtree);
  const std::uint64_t r_small = model.small_mask[event];
  const VertexId c = extension_center(inst, f.R, model.subtrees[q_subtree]);
  const Oriented o = orient(inst, q, c);

  // Every edge at c is in R'; a huge edge pulls in everything past it, a
  // small one ends its branch. Edges of R keep their status from F.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> shapes;
  std::function<void(std::vector<VertexId>, std::uint64_t, std::uint64_t)> grow =
      [&](std::vector<VertexId> pending, std::uint64_t in, std::uint64_t small) {
        if (pending.empty()) {
          shapes.emplace_back(in, small);
          return;
        }
        const VertexId g = pending.back();
        pending.pop_back();
        const bool in_r = r & bit(g);
        if (!in_r || (r_small & bit(g))) grow(pending, in | bit(g), small | bit(g));
        if (!in_r || !(r_small & bit(g))) {
          auto more = pending;
          more.insert(more.end(), o.next[g].begin(), o.next[g].end());
          grow(std::move(more), in | bit(g), small);
        }
      };
  grow(o.first, 0, 0);

  std::vector<int> out;
  for (const auto& [in, small] : shapes) {
    if ((r & small) != r_small) continue;
    auto it = model.subtree_index.find(in);
    if (it == model.subtree_index.end()) continue;
    for (int ev : model.events_of_subtree[it->second]) {
      if (model.small_mask[ev] != small) continue;
      if (restrict_to(inst, model.events[ev].L_small, r_small) == f.L_small) out.push_back(ev);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> ext_set_naive(const StrongModel& model, int event, int q_subtree) {
  const Instance& inst = model.inst;
  const StrongEvent& f = model.events.at(event);
  const std::uint64_t r = model.subtree_mask[f.subtree];
  const std::uint64_t q = model.subtree_mask.at(q_subtree);
  const std::uint64_t r_small = model.small_mask[event];
  const VertexId c = extension_center(inst, f.R, model.subtrees[q_subtree]);
  const Oriented o = orient(inst, q, c);

  // Every path from c to a leaf of Q, as an edge sequence starting at c.
  std::vector<std::vector<VertexId>> paths;
  const auto deg_q = degrees(inst, q);
  for (VertexId g = 1; g < inst.num_vertices(); ++g) {
    if (!(q & bit(g)) || deg_q[o.far[g]] != 1) continue;
    std::vector<VertexId> p;
    for (VertexId h = g; h >= 0; h = o.prev[h]) p.push_back(h);
    std::reverse(p.begin(), p.end());
    paths.push_back(std::move(p));
  }

  std::vector<int> out;
  for (int ev = 0; ev < static_cast<int>(model.events.size()); ++ev) {
    const std::uint64_t rp = model.subtree_mask[model.events[ev].subtree];
    const std::uint64_t sp = model.small_mask[ev];
    if ((rp & q) != rp) continue;
    if ((r & sp) != r_small) continue;
    if (restrict_to(inst, model.events[ev].L_small, r_small) != f.L_small) continue;
    bool ok = true;
    for (const auto& p : paths) {
      size_t k = 0;
      while (k < p.size() && (rp & bit(p[k]))) ++k;
      for (size_t i = k; i < p.size() && ok; ++i) ok = !(rp & bit(p[i]));
      int small_on_prefix = 0;
      for (size_t i = 0; i < k; ++i) small_on_prefix += (sp & bit(p[i])) != 0;
      if (!ok) break;
      if (k == p.size() && small_on_prefix == 0) continue;
      ok = k > 0 && small_on_prefix == 1 && (sp & bit(p[k - 1]));
      if (!ok) break;
    }
    if (ok) out.push_back(ev);
  }
  return out;
}

namespace {

struct Columns {
  int num_links = 0;
  std::vector<int> y;                    // per event
  std::vector<std::vector<int>> y_link;  // per event, parallel to relevant; -1 when substituted
};

// y_l(F) as (column, coefficient): y(F) for l in L_small, nothing for the
// rest of L(R_small), its own column otherwise.
void add_y_link(const StrongModel& m, const Columns& cols, int ev, int pos, const Rational& coef,
                std::map<int, Rational>& row) {
  const LinkId id = m.relevant[ev][pos];
  if (cols.y_link[ev][pos] >= 0) {
    row[cols.y_link[ev][pos]] += coef;
  } else if (sorted_contains(m.events[ev].L_small, id)) {
    row[cols.y[ev]] += coef;
  }
}

std::vector<std::pair<int, Rational>> to_terms(const std::map<int, Rational>& row) {
  std::vector<std::pair<int, Rational>> terms;
  for (const auto& [col, coef] : row) {
    if (sgn(coef) != 0) terms.emplace_back(col, coef);
  }
  return terms;
}

}  // namespace

StrongLp build_strong_lp(const Instance& inst, int beta, int rho, long subtree_cap, long event_cap) {
  auto model = std::make_shared<StrongModel>(build_strong_model(inst, beta, rho, subtree_cap, event_cap));
  const StrongModel& m = *model;
  StrongLp out;
  out.model = model;
  LinearProgram& lp = out.lp;
  Columns cols;
  for (const auto& l : inst.links()) lp.add_variable("x" + std::to_string(l.id), l.cost, 0, Rational(1));
  const int ne = static_cast<int>(m.events.size());
  cols.y.resize(ne);
  cols.y_link.resize(ne);
  for (int ev = 0; ev < ne; ++ev) cols.y[ev] = lp.add_variable("y" + std::to_string(ev), 0);
  for (int ev = 0; ev < ne; ++ev) {
    const std::uint64_t small = m.small_mask[ev];
    for (LinkId id : m.relevant[ev]) {
      if (inst.path_mask(id) & small) {
        cols.y_link[ev].push_back(-1);
      } else {
        cols.y_link[ev].push_back(
            lp.add_variable("yl" + std::to_string(ev) + "_" + std::to_string(id), 0));
      }
    }
  }

  // Seed odd cuts: 2 x(L_e) >= 2.
  for (VertexId v = 1; v < inst.num_vertices(); ++v) {
    std::vector<std::pair<int, Rational>> terms;
    for (LinkId id : inst.covering(v)) terms.emplace_back(id, 2);
    lp.add_constraint(std::move(terms), Relation::GreaterEqual, 2, "odd_e" + std::to_string(v));
  }
  // Cover and marginal rows over single-edge events.
  for (VertexId v = 1; v < inst.num_vertices(); ++v) {
    auto it = m.subtree_index.find(bit(v));
    const auto& evs = m.events_of_subtree[it->second];
    std::vector<std::pair<int, Rational>> cover;
    for (int ev : evs) cover.emplace_back(cols.y[ev], 1);
    lp.add_constraint(std::move(cover), Relation::Equal, 1, "cover_e" + std::to_string(v));
    for (LinkId id : inst.covering(v)) {
      std::map<int, Rational> row;
      row[id] += 1;
      for (int ev : evs) add_y_link(m, cols, ev, m.relevant_index(ev, id), Rational(-1), row);
      lp.add_constraint(to_terms(row), Relation::Equal, 0,
                        "marg_e" + std::to_string(v) + "_l" + std::to_string(id));
    }
  }
  // Huge edges.
  for (int ev = 0; ev < ne; ++ev) {
    const std::uint64_t huge = m.subtree_mask[m.events[ev].subtree] & ~m.small_mask[ev];
    for (std::uint64_t h = huge; h; h &= h - 1) {
      const VertexId v = std::countr_zero(h);
      std::map<int, Rational> row;
      row[cols.y[ev]] -= rho;
      for (LinkId id : inst.covering(v)) add_y_link(m, cols, ev, m.relevant_index(ev, id), Rational(1), row);
      lp.add_constraint(to_terms(row), Relation::GreaterEqual, 0,
                        "huge_F" + std::to_string(ev) + "_e" + std::to_string(v));
    }
  }
  // Extension rows for every strict superset Q.
  for (int ev = 0; ev < ne; ++ev) {
    const std::uint64_t r = m.subtree_mask[m.events[ev].subtree];
    for (size_t qs = 0; qs < m.subtrees.size(); ++qs) {
      const std::uint64_t q = m.subtree_mask[qs];
      if (q == r || (r & q) != r) continue;
      const std::vector<int> ext = ext_set(m, ev, static_cast<int>(qs));
      const std::string tag = "F" + std::to_string(ev) + "_Q" + std::to_string(qs);
      {
        std::map<int, Rational> row;
        row[cols.y[ev]] += 1;
        for (int e2 : ext) row[cols.y[e2]] -= 1;
        auto terms = to_terms(row);
        if (!terms.empty()) lp.add_constraint(std::move(terms), Relation::Equal, 0, "ext_" + tag);
      }
      for (size_t pos = 0; pos < m.relevant[ev].size(); ++pos) {
        const LinkId id = m.relevant[ev][pos];
        std::map<int, Rational> row;
        add_y_link(m, cols, ev, static_cast<int>(pos), Rational(1), row);
        for (int e2 : ext) add_y_link(m, cols, e2, m.relevant_index(e2, id), Rational(-1), row);
        auto terms = to_terms(row);
        if (!terms.empty()) {
          lp.add_constraint(std::move(terms), Relation::Equal, 0, "extl_" + tag + "_l" + std::to_string(id));
        }
      }
    }
  }
  return out;
}

StrongCandidate intended_solution(const StrongModel& model, std::span<const LinkId> lstar) {
  const Instance& inst = model.inst;
  for (LinkId id : lstar) {
    if (id < 0 || id >= inst.num_links()) throw Error(ErrorCode::UnknownLink, "link " + std::to_string(id));
  }
  if (!is_feasible(inst, lstar)) throw Error(ErrorCode::InfeasibleLstar, "link set does not cover every edge");
  std::vector<LinkId> chosen(lstar.begin(), lstar.end());
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());

  StrongCandidate out;
  out.x.values.assign(inst.num_links(), Rational(0));
  for (LinkId id : chosen) out.x.values[id] = 1;
  out.x.objective_value = inst.total_cost(chosen);
  const int ne = static_cast<int>(model.events.size());
  out.y.assign(ne, Rational(0));
  out.y_link.resize(ne);
  for (int ev = 0; ev < ne; ++ev) {
    const StrongEvent& f = model.events[ev];
    bool consistent = true;
    for (EdgeId e : f.R) {
      const std::vector<LinkId> here = restrict_to(inst, chosen, bit(e.child));
      const int cnt = static_cast<int>(here.size());
      if (model.small_mask[ev] & bit(e.child)) {
        consistent = cnt <= model.rho && restrict_to(inst, f.L_small, bit(e.child)) == here;
      } else {
        consistent = cnt > model.rho;
      }
      if (!consistent) break;
    }
    out.y[ev] = consistent ? 1 : 0;
    out.y_link[ev].assign(model.relevant[ev].size(), Rational(0));
    if (!consistent) continue;
    for (size_t pos = 0; pos < model.relevant[ev].size(); ++pos) {
      if (sorted_contains(chosen, model.relevant[ev][pos])) out.y_link[ev][pos] = 1;
    }
  }
  return out;
}

std::vector<StrongViolation> check_strong_feasibility(const StrongModel& model, const StrongCandidate& cand) {
  const Instance& inst = model.inst;
  const int n = inst.num_vertices();
  const int ne = static_cast<int>(model.events.size());
  if (static_cast<int>(cand.x.values.size()) != inst.num_links() || static_cast<int>(cand.y.size()) != ne ||
      static_cast<int>(cand.y_link.size()) != ne) {
    throw Error(ErrorCode::NotApplicable, "candidate does not match the model");
  }
  for (int ev = 0; ev < ne; ++ev) {
    if (cand.y_link[ev].size() != model.relevant[ev].size()) {
      throw Error(ErrorCode::NotApplicable, "candidate does not match the model");
    }
  }
  if (n > kDefaultSeparationCap) throw Error(ErrorCode::TooLarge, "odd-cut check enumerates at most 18 vertices");

  std::vector<StrongViolation> out;
  auto report = [&](int c, std::string where, Rational deficit) {
    out.push_back(StrongViolation{c, std::move(where), std::move(deficit)});
  };
  auto yl = [&](int ev, LinkId id) -> const Rational& { return cand.y_link[ev][model.relevant_index(ev, id)]; };

  // Odd cuts and x >= 0.
  for (LinkId id = 0; id < inst.num_links(); ++id) {
    if (sgn(cand.x.values[id]) < 0) report(kRowOddCut, "x" + std::to_string(id) + " >= 0", -cand.x.values[id]);
  }
  for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << (n - 1)); ++rest) {
    const std::uint64_t s = (rest << 1) | 1;
    auto [terms, rhs] = odd_cut_row(inst, s);
    std::uint64_t d = 0;
    for (VertexId v = 1; v < n; ++v) {
      if (((s >> v) ^ (s >> inst.parent(v))) & 1) d |= bit(v);
    }
    if (!(std::popcount(d) & 1)) continue;
    Rational lhs = 0;
    for (const auto& [id, coef] : terms) lhs += coef * cand.x.values[id];
    if (lhs < rhs) {
      std::string set = "{";
      for (VertexId v = 0; v < n; ++v) {
        if (s >> v & 1) set += (set.size() > 1 ? "," : "") + std::to_string(v);
      }
      report(kRowOddCut, "odd cut S=" + set + "}", rhs - lhs);
    }
  }
  // Single-edge cover and marginals.
  for (VertexId v = 1; v < n; ++v) {
    const auto& evs = model.events_of_subtree[model.subtree_index.at(bit(v))];
    Rational total = 0;
    for (int ev : evs) total += cand.y[ev];
    if (total != 1) report(kRowEdgeCover, "edge " + std::to_string(v), abs(Rational(1 - total)));
    for (LinkId id : inst.covering(v)) {
      Rational sum = 0;
      for (int ev : evs) sum += yl(ev, id);
      if (sum != cand.x.values[id]) {
        report(kRowEdgeMarginal, "edge " + std::to_string(v) + " link " + std::to_string(id), abs(Rational(sum - cand.x.values[id])));
      }
    }
  }
  for (int ev = 0; ev < ne; ++ev) {
    const StrongEvent& f = model.events[ev];
    const std::string name = event_name(f);
    // Nonnegativity.
    if (sgn(cand.y[ev]) < 0) report(kRowEventNonneg, "y " + name, -cand.y[ev]);
    for (size_t pos = 0; pos < model.relevant[ev].size(); ++pos) {
      const LinkId id = model.relevant[ev][pos];
      const Rational& v = cand.y_link[ev][pos];
      if (sgn(v) < 0) report(kRowLinkNonneg, "y_l " + name + " link " + std::to_string(id), -v);
      if (!(inst.path_mask(id) & model.small_mask[ev])) continue;
      // Small links.
      if (sorted_contains(f.L_small, id)) {
        if (v != cand.y[ev]) report(kRowSmallIn, name + " link " + std::to_string(id), abs(Rational(v - cand.y[ev])));
      } else if (sgn(v) != 0) {
        report(kRowSmallOut, name + " link " + std::to_string(id), abs(v));
      }
    }
    // Huge edges.
    const std::uint64_t huge = model.subtree_mask[f.subtree] & ~model.small_mask[ev];
    for (std::uint64_t h = huge; h; h &= h - 1) {
      const VertexId v = std::countr_zero(h);
      Rational sum = 0;
      for (LinkId id : inst.covering(v)) sum += yl(ev, id);
      const Rational need = model.rho * cand.y[ev];
      if (sum < need) report(kRowHuge, name + " edge " + std::to_string(v), need - sum);
    }
    // Extensions.
    const std::uint64_t r = model.subtree_mask[f.subtree];
    for (size_t qs = 0; qs < model.subtrees.size(); ++qs) {
      const std::uint64_t q = model.subtree_mask[qs];
      if ((r & q) != r) continue;
      const std::vector<int> ext = ext_set(model, ev, static_cast<int>(qs));
      const std::string where = name + " Q=" + edge_list(model.subtrees[qs]);
      Rational sum = 0;
      for (int e2 : ext) sum += cand.y[e2];
      if (sum != cand.y[ev]) report(kRowExtEvent, where, abs(Rational(sum - cand.y[ev])));
      for (size_t pos = 0; pos < model.relevant[ev].size(); ++pos) {
        const LinkId id = model.relevant[ev][pos];
        Rational s2 = 0;
        for (int e2 : ext) s2 += yl(e2, id);
        if (s2 != cand.y_link[ev][pos]) {
          report(kRowExtLink, where + " link " + std::to_string(id), abs(Rational(s2 - cand.y_link[ev][pos])));
        }
      }
    }
  }
  return out;
}

namespace {

bool lazy_row(const LinearConstraint& row) {
  return row.name.rfind("ext_", 0) == 0 || row.name.rfind("extl_", 0) == 0;
}

bool satisfied(const LinearConstraint& row, const std::vector<Rational>& point) {
  Rational lhs = 0;
  for (const auto& [col, coef] : row.terms) lhs += coef * point[col];
  switch (row.relation) {
    case Relation::GreaterEqual: return lhs >= row.rhs;
    case Relation::LessEqual: return lhs <= row.rhs;
    case Relation::Equal: return lhs == row.rhs;
  }
  return false;
}

}  // namespace

StrongLpValue solve_strong_lp(const Instance& inst, int beta, int rho, long subtree_cap, long event_cap,
                              const SolveOptions& options) {
  if (inst.num_vertices() > kDefaultSeparationCap) {
    throw Error(ErrorCode::TooLarge, "odd-cut separation enumerates at most 18 vertices");
  }
  StrongLp built = build_strong_lp(inst, beta, rho, subtree_cap, event_cap);
  PresolvedProgram pre = presolve(built.lp);
  // Extension rows enter only once violated; the final point satisfies every
  // row of the program, so its optimum is the full optimum.
  LinearProgram lp = pre.lp;
  lp.constraints.clear();
  std::vector<const LinearConstraint*> pending;
  for (const auto& row : pre.lp.constraints) {
    if (lazy_row(row)) {
      pending.push_back(&row);
    } else {
      lp.constraints.push_back(row);
    }
  }
  StrongLpValue out;
  out.events = built.model->events.size();
  out.rows = built.lp.constraints.size();
  out.columns = static_cast<size_t>(built.lp.num_variables());
  for (int round = 0;; ++round) {
    LpResult r = solve_lp(lp, options);
    out.iterations += r.iterations;
    bool added = false;
    std::vector<const LinearConstraint*> still;
    for (const LinearConstraint* row : pending) {
      if (satisfied(*row, r.point)) {
        still.push_back(row);
      } else {
        lp.constraints.push_back(*row);
        added = true;
      }
    }
    pending = std::move(still);
    std::vector<Rational> x(inst.num_links(), Rational(0));
    for (LinkId id = 0; id < inst.num_links(); ++id) {
      if (pre.map[id] >= 0) x[id] = r.point[pre.map[id]];
    }
    if (auto viol = separate_odd_cut(inst, x)) {
      std::uint64_t mask = 0;
      for (VertexId v : viol->vertex_set) mask |= bit(v);
      auto [terms, rhs] = odd_cut_row(inst, mask);
      std::map<int, Rational> mapped;
      for (const auto& [id, coef] : terms) {
        if (pre.map[id] >= 0) mapped[pre.map[id]] += coef;
      }
      lp.add_constraint({mapped.begin(), mapped.end()}, Relation::GreaterEqual, rhs,
                        "odd_cut" + std::to_string(round));
      ++out.rows;
      added = true;
    }
    if (!added) {
      out.x.values = std::move(x);
      out.x.objective_value = objective_of(inst, out.x.values);
      out.objective = r.objective;
      return out;
    }
  }
}

}  // namespace wtap
