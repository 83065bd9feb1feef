#include "wtap/cleanup.hpp"

#include "wtap/correlation.hpp"

#include <algorithm>
#include <string>

namespace wtap {

namespace {

void check_gamma(const Rational& gamma) {
  if (sgn(gamma) <= 0 || gamma > Rational(3, 4)) {
    throw Error(ErrorCode::GammaOutOfRange, "gamma must lie in (0, 3/4], got " + format_rational(gamma));
  }
}

bool contains(std::span<const EdgeId> sorted_edges, EdgeId e) {
  return std::binary_search(sorted_edges.begin(), sorted_edges.end(), e);
}

std::uint64_t edge_mask(std::span<const EdgeId> edges) {
  std::uint64_t m = 0;
  for (EdgeId e : edges) m |= std::uint64_t{1} << e.child;
  return m;
}

bool uncorrelated_non_up(const StructuredModel& m, LinkId id) {
  return m.inst.info(id).cls != LinkClass::Up && !link_correlated(m.inst, m.correlated, id);
}

}  // namespace

int CleanupContext::index_of(VertexId child) const {
  auto it = std::find(uncorrelated_children.begin(), uncorrelated_children.end(), child);
  if (it == uncorrelated_children.end()) return -1;
  return static_cast<int>(it - uncorrelated_children.begin());
}

std::vector<char> draw_protected_vertices(const StructuredModel& model, Rng& rng) {
  const int n = model.inst.num_vertices();
  std::vector<char> out(n, 0);
  const Rational half(1, 2);
  for (VertexId v = 1; v < n; ++v) {
    if (!model.correlated[v]) out[v] = bernoulli(rng, half) ? 1 : 0;
  }
  return out;
}

ProtectionState protection_state(const StructuredModel& model, const std::vector<LinkCopy>& copies,
                                 std::vector<char> protected_vertex) {
  ProtectionState st;
  st.protected_vertex = std::move(protected_vertex);
  for (const auto& c : copies) {
    if (copy_protected(st, c)) st.covered |= model.inst.path_mask(c.link);
  }
  return st;
}

bool copy_protected(const ProtectionState& prot, const LinkCopy& copy) {
  return copy.owner >= 0 && prot.protected_vertex[copy.owner];
}

std::vector<EdgeId> compute_Zi(const Instance& inst, const std::vector<char>& correlated, VertexId child) {
  std::vector<EdgeId> out{EdgeId{child}};
  std::vector<VertexId> stack{child};
  while (!stack.empty()) {
    const VertexId w = stack.back();
    stack.pop_back();
    for (VertexId c : inst.children(w)) {
      if (!correlated[c]) continue;
      out.push_back(EdgeId{c});
      stack.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EdgeId> compute_Ai(const StructuredSolution& sol, int event, VertexId v, VertexId child,
                               const Rational& gamma) {
  check_gamma(gamma);
  const StructuredModel& m = *sol.model;
  const Instance& inst = m.inst;
  if (inst.parent(child) != v || m.correlated[child]) {
    throw Error(ErrorCode::NotApplicable, "vertex " + std::to_string(child) + " is not an uncorrelated child of " +
                                              std::to_string(v));
  }
  const bool at_root = v == inst.root();
  const std::vector<EdgeId> z = compute_Zi(inst, m.correlated, child);

  std::vector<char> in_event(z.size(), 0);
  if (!at_root) {
    for (size_t k = 0; k < z.size(); ++k) {
      for (LinkId id : m.events[event].links) {
        if (inst.covers(id, z[k])) in_event[k] = 1;
      }
    }
  }

  // Probability that no other child's sampled event covers z[k].
  std::vector<Rational> miss(z.size(), Rational(1));
  for (VertexId j : inst.children(v)) {
    if (j == child || m.correlated[j]) continue;
    const int star = at_root ? m.singleton[j] : m.extended.at({v, j});
    const std::vector<int>& cands = at_root ? m.events_of_star[star] : m.agreeing(event, star);
    Rational base = 0;
    if (at_root) {
      for (int ev : cands) base += sol.y[ev];
    } else {
      base = sol.y[event];
    }
    if (sgn(base) == 0) continue;
    for (size_t k = 0; k < z.size(); ++k) {
      Rational mass = 0;
      for (int ev : cands) {
        if (sgn(sol.y[ev]) == 0) continue;
        for (LinkId id : m.events[ev].links) {
          if (inst.covers(id, EdgeId{j}) && inst.covers(id, z[k])) {
            mass += sol.y[ev];
            break;
          }
        }
      }
      miss[k] *= 1 - mass / base;
    }
  }

  std::vector<EdgeId> out;
  for (size_t k = 0; k < z.size(); ++k) {
    if (in_event[k] || 1 - miss[k] >= gamma) out.push_back(z[k]);
  }
  return out;
}

std::vector<Subtree> compute_Qi(const Instance& inst, std::span<const EdgeId> z, std::span<const EdgeId> a) {
  for (EdgeId e : a) {
    if (!contains(z, e)) throw Error(ErrorCode::NotAncestorClosed, "A contains an edge outside Z");
    const EdgeId up{inst.parent(e.child)};
    if (contains(z, up) && !contains(a, up)) {
      throw Error(ErrorCode::NotAncestorClosed,
                  "edge e_" + std::to_string(e.child) + " is in A but its parent edge is not");
    }
  }
  std::vector<Subtree> out;
  std::map<VertexId, int> label;  // child vertex of an edge in Z \ A -> subtree
  for (VertexId w : inst.bfs_order()) {
    const EdgeId e{w};
    if (w == inst.root() || !contains(z, e) || contains(a, e)) continue;
    auto it = label.find(inst.parent(w));
    if (it != label.end()) {
      label[w] = it->second;
      out[it->second].edges.push_back(e);
    } else {
      label[w] = static_cast<int>(out.size());
      out.push_back(Subtree{e, {e}});
    }
  }
  for (auto& s : out) std::sort(s.edges.begin(), s.edges.end());
  std::sort(out.begin(), out.end(), [](const Subtree& x, const Subtree& y) { return x.root_edge < y.root_edge; });
  return out;
}

CleanupContext make_cleanup_context(const StructuredSolution& sol, VertexId v, int event, const Rational& gamma) {
  check_gamma(gamma);
  const StructuredModel& m = *sol.model;
  const Instance& inst = m.inst;
  CleanupContext ctx;
  ctx.vertex = v;
  ctx.event = event;
  ctx.gamma = gamma;
  for (VertexId c : inst.children(v)) {
    if (m.correlated[c]) continue;
    ctx.uncorrelated_children.push_back(c);
    ctx.Z.push_back(compute_Zi(inst, m.correlated, c));
    ctx.A.push_back(compute_Ai(sol, event, v, c, gamma));
    ctx.Q.push_back(compute_Qi(inst, ctx.Z.back(), ctx.A.back()));
    std::vector<LinkId> allowed;
    for (LinkId id = 0; id < inst.num_links(); ++id) {
      const LinkInfo& info = inst.info(id);
      if (info.cls == LinkClass::Up && contains(ctx.Z.back(), info.leading_edges.front())) allowed.push_back(id);
    }
    std::vector<ExactSolution> add;
    for (const Subtree& q : ctx.Q.back()) add.push_back(add_q(inst, q.edges, allowed));
    ctx.allowed.push_back(std::move(allowed));
    ctx.add.push_back(std::move(add));
  }
  return ctx;
}

bool subtree_active(const Instance& inst, const Subtree& q, const ProtectionState& prot) {
  const VertexId r = inst.parent(q.root_edge.child);
  if (r == inst.root()) return false;
  return (prot.covered >> r & 1) != 0;
}

bool is_dominated(const StructuredSolution& sol, const LinkCopy& copy, const CleanupContext& ctx,
                  const ProtectionState& prot) {
  const StructuredModel& m = *sol.model;
  const Instance& inst = m.inst;
  if (copy.owner < 0 || !uncorrelated_non_up(m, copy.link)) {
    throw Error(ErrorCode::NotApplicable, "domination applies to sampled uncorrelated non-up link copies");
  }
  const int i = ctx.index_of(copy.owner);
  if (i < 0) throw Error(ErrorCode::NotApplicable, "copy owner is not an uncorrelated child of the context vertex");
  if (prot.protected_vertex[copy.owner]) return false;
  const auto& z = ctx.Z[i];
  const auto& a = ctx.A[i];
  std::uint64_t in_a = 0;
  bool inside = true;
  for (EdgeId e : inst.info(copy.link).path) {
    if (!contains(z, e)) continue;
    if (contains(a, e)) {
      in_a |= std::uint64_t{1} << e.child;
    } else {
      inside = false;
    }
  }
  if (inside) return (in_a & ~prot.covered) == 0;
  const std::uint64_t path = inst.path_mask(copy.link);
  for (const Subtree& q : ctx.Q[i]) {
    if (path & edge_mask(q.edges)) return subtree_active(inst, q, prot);
  }
  return false;
}

Cleaner::Cleaner(std::shared_ptr<const StructuredSolution> sol, Rational gamma)
    : sol_(std::move(sol)), gamma_(std::move(gamma)) {
  check_gamma(gamma_);
}

const CleanupContext& Cleaner::context(VertexId v, int event) {
  auto it = cache_.find({v, event});
  if (it == cache_.end()) it = cache_.emplace(std::make_pair(v, event), make_cleanup_context(*sol_, v, event, gamma_)).first;
  return it->second;
}

CleanupResult Cleaner::run(const RoundingResult& rounding, const ProtectionState& prot,
                           std::span<const VertexId> order) {
  const StructuredModel& m = *sol_->model;
  const Instance& inst = m.inst;
  const std::vector<LinkCopy>& copies = rounding.copies;
  std::vector<char> alive(copies.size(), 1);
  CleanupResult out;

  std::vector<VertexId> todo;
  for (VertexId w : order.empty() ? std::span<const VertexId>(inst.bfs_order()) : order) {
    if (w != inst.root() && !m.correlated[w] && !prot.protected_vertex[w]) todo.push_back(w);
  }

  for (VertexId vi : todo) {
    const VertexId v = inst.parent(vi);
    const CleanupContext& ctx = context(v, rounding.trace.vertices[v].core_event);
    const int i = ctx.index_of(vi);
    const auto& z = ctx.Z[i];
    const auto& a = ctx.A[i];
    const std::uint64_t outside_a = edge_mask(z) & ~edge_mask(a);

    for (size_t k = 0; k < copies.size(); ++k) {
      if (!alive[k] || copies[k].owner != vi || !uncorrelated_non_up(m, copies[k].link)) continue;
      if (inst.path_mask(copies[k].link) & outside_a) continue;
      if (is_dominated(*sol_, copies[k], ctx, prot)) {
        alive[k] = 0;
        out.removed.push_back(copies[k]);
      }
    }

    for (size_t qi = 0; qi < ctx.Q[i].size(); ++qi) {
      const Subtree& q = ctx.Q[i][qi];
      if (!subtree_active(inst, q, prot)) continue;
      const std::uint64_t qmask = edge_mask(q.edges);
      std::vector<size_t> hit;
      Rational current = 0;
      for (size_t k = 0; k < copies.size(); ++k) {
        if (alive[k] && copies[k].owner == vi && (inst.path_mask(copies[k].link) & qmask)) {
          hit.push_back(k);
          current += inst.cost(copies[k].link);
        }
      }
      const ExactSolution& add = ctx.add[i][qi];
      if (!(add.cost < current)) continue;
      for (size_t k : hit) {
        alive[k] = 0;
        out.removed.push_back(copies[k]);
      }
      for (LinkId id : add.links) out.added.push_back(LinkCopy{id, kAddedOwner});
    }
  }

  for (size_t k = 0; k < copies.size(); ++k) {
    if (alive[k]) out.copies.push_back(copies[k]);
  }
  out.copies.insert(out.copies.end(), out.added.begin(), out.added.end());
  return out;
}

CleanupResult cleanup(const StructuredSolution& sol, const RoundingResult& rounding, const ProtectionState& prot,
                      const Rational& gamma) {
  Cleaner cleaner(std::make_shared<StructuredSolution>(sol), gamma);
  return cleaner.run(rounding, prot);
}

Analysis149 analyze_149(const Params149& params) {
  const Rational& g = params.gamma;
  const Rational& p = params.p;
  Analysis149 a;
  a.K = g * g / (1 - 2 * g);
  a.C1 = (1 - p) * (1 + a.K);
  a.C2 = (1 - p) * (2 - g / 2);
  a.ratio = a.C1 + 2 * p;
  return a;
}

Combiner::Combiner(const Instance& inst, const StructuredSolution& sol, const Params149& params)
    : inst_(inst),
      sol_(std::make_shared<StructuredSolution>(sol)),
      params_(params),
      odd_cut_(odd_cut_rounding(inst, sol.z, sol.v_cor)),
      cleaner_(sol_, params.gamma) {}

CombinedRun Combiner::structured_branch(std::uint64_t seed, bool with_cleanup) {
  CombinedRun run;
  RoundingResult rounding = structured_rounding(*sol_, derive_seed(seed, {0}));
  run.pre_cleanup_cost = multiset_cost(inst_, rounding.copies);
  std::vector<LinkCopy> final_copies = rounding.copies;
  if (with_cleanup) {
    Rng rng(derive_seed(seed, {1}));
    ProtectionState prot =
        protection_state(*sol_->model, rounding.copies, draw_protected_vertices(*sol_->model, rng));
    CleanupResult res = cleaner_.run(rounding, prot);
    for (const auto& c : res.removed) run.protected_removed = run.protected_removed || copy_protected(prot, c);
    run.removed_copies = std::move(res.removed);
    final_copies = std::move(res.copies);
  }
  run.multiset_cost = multiset_cost(inst_, final_copies);
  run.solution.links = copies_to_links(final_copies);
  run.solution.cost = inst_.total_cost(run.solution.links);
  return run;
}

CombinedRun Combiner::run_15(std::uint64_t seed) {
  Rng rng(derive_seed(seed, {0}));
  if (bernoulli(rng, Rational(1, 2))) {
    CombinedRun run;
    run.odd_cut_branch = true;
    run.solution = odd_cut_;
    run.multiset_cost = run.pre_cleanup_cost = odd_cut_.cost;
    return run;
  }
  return structured_branch(derive_seed(seed, {1}), false);
}

CombinedRun Combiner::run_149(std::uint64_t seed) {
  Rng rng(derive_seed(seed, {0}));
  if (bernoulli(rng, params_.p)) {
    CombinedRun run;
    run.odd_cut_branch = true;
    run.solution = odd_cut_;
    run.multiset_cost = run.pre_cleanup_cost = odd_cut_.cost;
    return run;
  }
  return structured_branch(derive_seed(seed, {1}), true);
}

ExactSolution run_15(const Instance& inst, const StructuredSolution& sol, std::uint64_t seed) {
  return Combiner(inst, sol).run_15(seed).solution;
}

ExactSolution run_149(const Instance& inst, const StructuredSolution& sol, const Params149& params,
                      std::uint64_t seed) {
  return Combiner(inst, sol, params).run_149(seed).solution;
}

}  // namespace wtap
