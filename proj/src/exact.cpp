#include "wtap/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

namespace wtap {

namespace {

// Depth-first search over links in id order, include-first. Stopping as soon as
// every edge is covered makes the first optimum found the lexicographically
// smallest one.
template <typename Cost>
class CoverSearch {
 public:
  CoverSearch(std::vector<std::uint64_t> masks, std::vector<Cost> costs, std::uint64_t full)
      : masks_(std::move(masks)), costs_(std::move(costs)), full_(full) {
    const size_t m = masks_.size();
    suffix_.assign(m + 1, 0);
    for (size_t k = m; k-- > 0;) suffix_[k] = suffix_[k + 1] | masks_[k];
  }

  void run(std::uint64_t start_mask, Cost start_cost, std::vector<int> forced) {
    chosen_ = std::move(forced);
    dfs(0, start_mask, start_cost);
  }

  void set_forced(std::vector<char> forced) { forced_ = std::move(forced); }

  bool found() const { return found_; }
  const Cost& best_cost() const { return best_; }
  const std::vector<int>& best_set() const { return best_set_; }

 private:
  void dfs(size_t k, std::uint64_t mask, const Cost& cost) {
    if (found_ && !(cost < best_)) return;
    if (mask == full_) {
      found_ = true;
      best_ = cost;
      best_set_ = chosen_;
      return;
    }
    if ((mask | suffix_[k]) != full_) return;
    // Cheapest remaining link covering the lowest-index uncovered edge.
    const std::uint64_t missing = full_ & ~mask;
    const std::uint64_t low = missing & (~missing + 1);
    if (found_) {
      bool any = false;
      Cost cheapest{};
      for (size_t j = k; j < masks_.size(); ++j) {
        if ((masks_[j] & low) && !forced_[j] && (!any || costs_[j] < cheapest)) {
          cheapest = costs_[j];
          any = true;
        }
      }
      if (!any || !(cost + cheapest < best_)) return;
    }
    size_t j = k;
    while (j < masks_.size() && forced_[j]) ++j;
    if (j == masks_.size()) return;
    if ((masks_[j] & ~mask) != 0) {
      chosen_.push_back(static_cast<int>(j));
      dfs(j + 1, mask | masks_[j], cost + costs_[j]);
      chosen_.pop_back();
    }
    dfs(j + 1, mask, cost);
  }

  std::vector<std::uint64_t> masks_;
  std::vector<Cost> costs_;
  std::vector<std::uint64_t> suffix_;
  std::vector<char> forced_;
  std::uint64_t full_;
  std::vector<int> chosen_;
  bool found_ = false;
  Cost best_{};
  std::vector<int> best_set_;
};

// Costs scaled to a common denominator, if they fit comfortably in 64 bits.
std::optional<std::vector<std::int64_t>> scaled_costs(const std::vector<Rational>& costs) {
  mpz_class den = 1;
  for (const auto& c : costs) den = lcm(den, mpz_class(c.get_den()));
  std::vector<std::int64_t> out;
  mpz_class total = 0;
  for (const auto& c : costs) {
    mpz_class scaled = c.get_num() * (den / c.get_den());
    total += scaled;
    if (!scaled.fits_slong_p()) return std::nullopt;
    out.push_back(scaled.get_si());
  }
  if (total >= mpz_class(std::numeric_limits<std::int64_t>::max() / 4)) return std::nullopt;
  return out;
}

}  // namespace

ExactSolution brute_force_opt(const Instance& inst, int link_cap) {
  const int m = inst.num_links();
  if (m > link_cap) {
    throw Error(ErrorCode::TooLarge, std::to_string(m) + " links exceed the brute-force cap of " + std::to_string(link_cap));
  }
  if (!inst.masks_available()) throw Error(ErrorCode::TooLarge, "brute force needs at most 64 vertices");
  const int n = inst.num_vertices();
  std::uint64_t full = 0;
  for (VertexId v = 1; v < n; ++v) full |= std::uint64_t{1} << v;

  std::vector<std::uint64_t> masks(m);
  std::vector<Rational> costs(m);
  std::uint64_t reachable = 0;
  for (LinkId id = 0; id < m; ++id) {
    masks[id] = inst.path_mask(id);
    costs[id] = inst.cost(id);
    reachable |= masks[id];
  }
  if (reachable != full) {
    for (VertexId v = 1; v < n; ++v) {
      if (!(reachable >> v & 1)) throw Error(ErrorCode::Infeasible, "edge e_" + std::to_string(v) + " is covered by no link");
    }
  }

  // Links that are the unique cover of some edge belong to every solution.
  std::vector<char> forced(m, 0);
  for (VertexId v = 1; v < n; ++v) {
    const auto& cov = inst.covering(v);
    if (cov.size() == 1) forced[cov.front()] = 1;
  }
  std::uint64_t start_mask = 0;
  Rational start_cost = 0;
  std::vector<int> forced_ids;
  for (LinkId id = 0; id < m; ++id) {
    if (forced[id]) {
      start_mask |= masks[id];
      start_cost += costs[id];
      forced_ids.push_back(id);
    }
  }

  ExactSolution out;
  std::vector<int> chosen;
  if (auto scaled = scaled_costs(costs)) {
    std::int64_t start = 0;
    for (int id : forced_ids) start += (*scaled)[id];
    CoverSearch<std::int64_t> search(masks, *scaled, full);
    search.set_forced(forced);
    search.run(start_mask, start, forced_ids);
    chosen = search.best_set();
  } else {
    CoverSearch<Rational> search(masks, costs, full);
    search.set_forced(forced);
    search.run(start_mask, start_cost, forced_ids);
    chosen = search.best_set();
  }
  std::sort(chosen.begin(), chosen.end());
  out.links.assign(chosen.begin(), chosen.end());
  out.cost = inst.total_cost(out.links);
  return out;
}

namespace {

struct DpCell {
  bool feasible = false;
  Rational cost;
  LinkId via_link = -1;    // reach provided by a link whose lower endpoint is v
  VertexId via_child = -1; // reach provided by this child's subtree
};

// Cheapest set of allowed up-links covering every required edge. dp[v][k]:
// cover required edges inside T_v and reach up to the ancestor at depth k.
std::optional<ExactSolution> uplink_cover(const Instance& inst, const std::vector<char>& required,
                                          const std::vector<char>& allowed) {
  const int n = inst.num_vertices();
  std::vector<std::vector<LinkId>> lower_links(n);
  for (const auto& l : inst.links()) {
    if (!allowed[l.id]) continue;
    const VertexId lower = inst.depth(l.u) > inst.depth(l.v) ? l.u : l.v;
    lower_links[lower].push_back(l.id);
  }
  std::vector<std::vector<DpCell>> dp(n);
  const auto& order = inst.bfs_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    const int dv = inst.depth(v);
    dp[v].assign(dv + 1, DpCell{});
    // Contribution of each child when it only needs to take care of itself.
    bool base_ok = true;
    Rational base = 0;
    std::vector<const DpCell*> child_base;
    for (VertexId c : inst.children(v)) {
      const DpCell& cell = required[c] ? dp[c][dv] : dp[c][dv + 1];
      child_base.push_back(&cell);
      if (!cell.feasible) base_ok = false;
      else base += cell.cost;
    }
    dp[v][dv].feasible = base_ok;
    dp[v][dv].cost = base;
    for (int k = dv - 1; k >= 0; --k) {
      DpCell best;
      for (LinkId id : lower_links[v]) {
        const LinkRecord& l = inst.links()[id];
        const VertexId upper = l.u == v ? l.v : l.u;
        if (inst.depth(upper) > k || !base_ok) continue;
        Rational total = base + l.cost;
        if (!best.feasible || total < best.cost) best = DpCell{true, total, id, -1};
      }
      const auto& ch = inst.children(v);
      for (size_t i = 0; i < ch.size(); ++i) {
        const DpCell& reach = dp[ch[i]][k];
        if (!reach.feasible) continue;
        bool ok = true;
        Rational total = reach.cost;
        for (size_t j = 0; j < ch.size(); ++j) {
          if (j == i) continue;
          if (!child_base[j]->feasible) { ok = false; break; }
          total += child_base[j]->cost;
        }
        if (ok && (!best.feasible || total < best.cost)) best = DpCell{true, total, -1, ch[i]};
      }
      dp[v][k] = best;
    }
  }
  const DpCell& top = dp[inst.root()][0];
  if (!top.feasible) return std::nullopt;

  ExactSolution out;
  out.cost = top.cost;
  // Unwind the choices.
  std::vector<std::pair<VertexId, int>> stack{{inst.root(), 0}};
  while (!stack.empty()) {
    auto [v, k] = stack.back();
    stack.pop_back();
    const int dv = inst.depth(v);
    const DpCell& cell = dp[v][k];
    if (cell.via_link >= 0) out.links.push_back(cell.via_link);
    for (VertexId c : inst.children(v)) {
      if (c == cell.via_child) stack.push_back({c, k});
      else stack.push_back({c, required[c] ? dv : dv + 1});
    }
  }
  std::sort(out.links.begin(), out.links.end());
  return out;
}

}  // namespace

ExactSolution uplink_dp_opt(const Instance& inst) {
  for (const auto& l : inst.links()) {
    if (!is_uplink(inst, l.id)) throw Error(ErrorCode::NonUplinkPresent, "link " + std::to_string(l.id) + " is not an up-link");
  }
  std::vector<char> required(inst.num_vertices(), 1);
  required[inst.root()] = 0;
  std::vector<char> allowed(inst.num_links(), 1);
  auto sol = uplink_cover(inst, required, allowed);
  if (!sol) throw Error(ErrorCode::Infeasible, "some edge is covered by no link");
  return *sol;
}

ExactSolution add_q(const Instance& inst, std::span<const EdgeId> q_edges, std::span<const LinkId> allowed) {
  std::vector<char> required(inst.num_vertices(), 0);
  for (EdgeId e : q_edges) {
    if (e.child <= 0 || e.child >= inst.num_vertices()) throw Error(ErrorCode::UnknownEdge, "edge e_" + std::to_string(e.child));
    required[e.child] = 1;
  }
  std::vector<char> allow(inst.num_links(), 0);
  for (LinkId id : allowed) {
    inst.link(id);
    if (!is_uplink(inst, id)) throw Error(ErrorCode::NonUplinkPresent, "ADD(Q) accepts up-links only");
    allow[id] = 1;
  }
  auto sol = uplink_cover(inst, required, allow);
  if (!sol) throw Error(ErrorCode::Uncoverable, "allowed up-links do not cover Q");
  return *sol;
}

}  // namespace wtap
