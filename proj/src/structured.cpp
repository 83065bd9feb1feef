#include "wtap/structured.hpp"

#include "wtap/correlation.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace wtap {

const std::vector<int>& StructuredModel::agreeing(int base, int s2) const {
  auto it = nested.find({events[base].star, s2});
  if (it == nested.end()) throw Error(ErrorCode::NotNested, "target star does not contain the base event's star");
  return it->second.groups[local_index[base]];
}

int StructuredModel::project(int event, int s1) const {
  const int s2 = events[event].star;
  if (s2 == s1) return event;
  auto it = nested.find({s1, s2});
  if (it == nested.end()) throw Error(ErrorCode::NotNested, "star is not contained in the event's star");
  return it->second.projection[local_index[event]];
}

bool StructuredModel::link_in_event(int event, LinkId id) const {
  const auto& l = events[event].links;
  return std::binary_search(l.begin(), l.end(), id);
}

std::vector<VertexId> select_vcor(const Instance& inst, const FractionalSolution& x0, const Rational& delta) {
  std::vector<VertexId> out;
  for (VertexId v = 1; v < inst.num_vertices(); ++v) {
    const VertexId u = inst.parent(v);
    if (u == inst.root()) continue;
    Rational shared = 0;
    for (LinkId id : inst.covering(v)) {
      if (inst.covers(id, EdgeId{u})) shared += x0.values[id];
    }
    if (shared >= delta) out.push_back(v);
  }
  return out;
}

namespace {

std::vector<char> fixed_links(const Instance& inst, const std::vector<char>& mask) {
  std::vector<char> fixed(inst.num_links(), 0);
  for (LinkId id = 0; id < inst.num_links(); ++id) fixed[id] = covers_non_leading_uncorrelated(inst, mask, id);
  return fixed;
}

struct StarList {
  std::vector<Star> stars;
  std::map<std::vector<EdgeId>, int> index;

  int add(VertexId center, std::vector<EdgeId> edges) {
    std::sort(edges.begin(), edges.end());
    auto [it, fresh] = index.emplace(edges, static_cast<int>(stars.size()));
    if (fresh) stars.push_back(Star{center, std::move(edges)});
    return it->second;
  }
};

// Stars in a fixed order: per vertex, {e_v}, then E*(v) plus up to two
// uncorrelated child edges.
StarList star_list(const Instance& inst, const std::vector<char>& mask) {
  StarList list;
  for (VertexId v = 0; v < inst.num_vertices(); ++v) {
    std::vector<EdgeId> core;
    std::vector<EdgeId> free;
    if (v != inst.root()) {
      list.add(v, {EdgeId{v}});
      core.push_back(EdgeId{v});
    }
    for (VertexId c : inst.children(v)) (mask[c] ? core : free).push_back(EdgeId{c});
    if (!core.empty()) list.add(v, core);
    for (size_t a = 0; a < free.size(); ++a) {
      auto one = core;
      one.push_back(free[a]);
      list.add(v, one);
      for (size_t b = a + 1; b < free.size(); ++b) {
        auto two = one;
        two.push_back(free[b]);
        list.add(v, two);
      }
    }
  }
  return list;
}

// Link sets L' of L(F) with 1 <= |L' n L_e| <= rho for every e in F.
class EventEnumerator {
 public:
  EventEnumerator(const Instance& inst, const Star& star, const std::vector<char>& fixed, int rho, long cap)
      : rho_(rho), cap_(cap) {
    for (EdgeId e : star.edges) edge_bits_.push_back(std::uint64_t{1} << e.child);
    std::uint64_t fmask = 0;
    for (auto b : edge_bits_) fmask |= b;
    for (LinkId id = 0; id < inst.num_links(); ++id) {
      if (!fixed[id] && (inst.path_mask(id) & fmask)) {
        links_.push_back(id);
        masks_.push_back(inst.path_mask(id) & fmask);
      }
    }
    suffix_.assign(links_.size() + 1, 0);
    for (size_t k = links_.size(); k-- > 0;) suffix_[k] = suffix_[k + 1] | masks_[k];
    count_.assign(edge_bits_.size(), 0);
  }

  std::vector<std::vector<LinkId>> run() {
    dfs(0);
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  void dfs(size_t k) {
    // Every edge still lacking a link must be reachable from the suffix.
    std::uint64_t missing = 0;
    for (size_t i = 0; i < edge_bits_.size(); ++i) {
      if (count_[i] == 0) missing |= edge_bits_[i];
    }
    if ((missing & ~suffix_[k]) != 0) return;
    if (k == links_.size()) {
      if (static_cast<long>(out_.size()) >= cap_) {
        throw Error(ErrorCode::CombinatorialBlowup, "a single star exceeds the event cap");
      }
      out_.push_back(chosen_);
      return;
    }
    bool fits = true;
    for (size_t i = 0; i < edge_bits_.size(); ++i) {
      if ((masks_[k] & edge_bits_[i]) && count_[i] >= rho_) fits = false;
    }
    if (fits) {
      for (size_t i = 0; i < edge_bits_.size(); ++i) count_[i] += (masks_[k] & edge_bits_[i]) ? 1 : 0;
      chosen_.push_back(links_[k]);
      dfs(k + 1);
      chosen_.pop_back();
      for (size_t i = 0; i < edge_bits_.size(); ++i) count_[i] -= (masks_[k] & edge_bits_[i]) ? 1 : 0;
    }
    dfs(k + 1);
  }

  int rho_;
  long cap_;
  std::vector<std::uint64_t> edge_bits_;
  std::vector<LinkId> links_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::uint64_t> suffix_;
  std::vector<int> count_;
  std::vector<LinkId> chosen_;
  std::vector<std::vector<LinkId>> out_;
};

std::shared_ptr<StructuredModel> build_model(const Instance& inst, std::span<const VertexId> v_cor, int rho_prime,
                                             long event_cap) {
  if (!inst.masks_available()) throw Error(ErrorCode::TooLarge, "structured LP needs at most 64 vertices");
  auto model = std::make_shared<StructuredModel>();
  StructuredModel& m = *model;
  m.inst = inst;
  m.v_cor.assign(v_cor.begin(), v_cor.end());
  std::sort(m.v_cor.begin(), m.v_cor.end());
  m.correlated = correlated_mask(inst, v_cor);
  m.fixed_zero = fixed_links(inst, m.correlated);
  m.rho_prime = rho_prime;
  if (rho_prime < 1) throw Error(ErrorCode::NoSmallCover, "rho' must be at least 1");
  for (VertexId v = 1; v < inst.num_vertices(); ++v) {
    const auto& cov = inst.covering(v);
    if (std::all_of(cov.begin(), cov.end(), [&](LinkId id) { return m.fixed_zero[id]; })) {
      throw Error(ErrorCode::NoSmallCover, "edge e_" + std::to_string(v) + " has no admissible covering link");
    }
  }

  StarList list = star_list(inst, m.correlated);
  m.stars = std::move(list.stars);
  const int n = inst.num_vertices();
  m.singleton.assign(n, -1);
  m.core.assign(n, -1);
  for (VertexId v = 1; v < n; ++v) {
    m.singleton[v] = list.index.at({EdgeId{v}});
    std::vector<EdgeId> core{EdgeId{v}};
    for (VertexId c : inst.children(v)) {
      if (m.correlated[c]) core.push_back(EdgeId{c});
    }
    std::sort(core.begin(), core.end());
    m.core[v] = list.index.at(core);
    for (VertexId c : inst.children(v)) {
      if (m.correlated[c]) continue;
      auto ext = core;
      ext.push_back(EdgeId{c});
      std::sort(ext.begin(), ext.end());
      m.extended[{v, c}] = list.index.at(ext);
    }
  }

  m.events_of_star.resize(m.stars.size());
  for (size_t s = 0; s < m.stars.size(); ++s) {
    EventEnumerator en(inst, m.stars[s], m.fixed_zero, rho_prime, event_cap);
    for (auto& links : en.run()) {
      if (static_cast<long>(m.events.size()) >= event_cap) {
        throw Error(ErrorCode::EventExplosion, "more than " + std::to_string(event_cap) + " events");
      }
      m.events_of_star[s].push_back(static_cast<int>(m.events.size()));
      m.local_index.push_back(static_cast<int>(m.events_of_star[s].size()) - 1);
      m.events.push_back(StructuredEvent{static_cast<int>(s), std::move(links)});
    }
  }

  // Nested pairs and the induced projections.
  for (size_t s1 = 0; s1 < m.stars.size(); ++s1) {
    const auto& e1 = m.stars[s1].edges;
    std::uint64_t mask1 = 0;
    for (EdgeId e : e1) mask1 |= std::uint64_t{1} << e.child;
    std::map<std::vector<LinkId>, int> lookup;
    for (int ev : m.events_of_star[s1]) lookup.emplace(m.events[ev].links, ev);
    for (size_t s2 = 0; s2 < m.stars.size(); ++s2) {
      const auto& e2 = m.stars[s2].edges;
      if (s1 == s2 || e1.size() >= e2.size() || !std::includes(e2.begin(), e2.end(), e1.begin(), e1.end())) continue;
      StructuredModel::Nesting nest;
      nest.groups.resize(m.events_of_star[s1].size());
      for (int ev : m.events_of_star[s2]) {
        std::vector<LinkId> proj;
        for (LinkId id : m.events[ev].links) {
          if (inst.path_mask(id) & mask1) proj.push_back(id);
        }
        const int base = lookup.at(proj);
        nest.projection.push_back(base);
        nest.groups[m.local_index[base]].push_back(ev);
      }
      m.nested.emplace(std::make_pair(static_cast<int>(s1), static_cast<int>(s2)), std::move(nest));
    }
  }
  return model;
}

}  // namespace

std::vector<Star> enumerate_stars(const Instance& inst, std::span<const VertexId> v_cor) {
  return star_list(inst, correlated_mask(inst, v_cor)).stars;
}

int default_rho_prime(const Instance& inst, std::span<const VertexId> v_cor) {
  const auto fixed = fixed_links(inst, correlated_mask(inst, v_cor));
  int best = 0;
  for (VertexId v = 1; v < inst.num_vertices(); ++v) {
    int count = 0;
    for (LinkId id : inst.covering(v)) count += fixed[id] ? 0 : 1;
    best = std::max(best, count);
  }
  return best;
}

StructuredLp build_structured_lp(const Instance& inst, std::span<const VertexId> v_cor, int rho_prime, long event_cap) {
  StructuredLp out;
  out.model = build_model(inst, v_cor, rho_prime, event_cap);
  const StructuredModel& m = *out.model;
  LinearProgram& lp = out.lp;
  const int links = inst.num_links();

  for (LinkId id = 0; id < links; ++id) {
    lp.add_variable("x" + std::to_string(id), 0, 0,
                    m.fixed_zero[id] ? std::optional<Rational>(0) : std::nullopt);
  }
  for (size_t k = 0; k < m.events.size(); ++k) lp.add_variable("y" + std::to_string(k), 0);
  for (LinkId id = 0; id < links; ++id) {
    lp.add_variable("z" + std::to_string(id), inst.cost(id), 0, Rational(m.fixed_zero[id] ? 0 : 1));
  }

  for (VertexId v = 1; v < inst.num_vertices(); ++v) {
    const auto& evs = m.events_of_star[m.singleton[v]];
    std::vector<std::pair<int, Rational>> cover;
    for (int ev : evs) cover.emplace_back(m.y_offset() + ev, 1);
    lp.add_constraint(std::move(cover), Relation::Equal, 1, "coverage_e" + std::to_string(v));
    for (LinkId id : inst.covering(v)) {
      if (m.fixed_zero[id]) continue;
      std::vector<std::pair<int, Rational>> row{{id, 1}};
      for (int ev : evs) {
        if (m.link_in_event(ev, id)) row.emplace_back(m.y_offset() + ev, -1);
      }
      lp.add_constraint(std::move(row), Relation::Equal, 0,
                        "marginal_e" + std::to_string(v) + "_l" + std::to_string(id));
    }
  }
  // Rows for the covering pairs only: projections compose, so consistency
  // along E1 inside E3 inside E2 implies it for E1 inside E2.
  auto implied = [&](int s1, int s2) {
    for (int s3 = 0; s3 < static_cast<int>(m.stars.size()); ++s3) {
      if (m.nested.count({s1, s3}) && m.nested.count({s3, s2})) return true;
    }
    return false;
  };
  for (const auto& [pair, nest] : m.nested) {
    if (implied(pair.first, pair.second)) continue;
    const auto& base_events = m.events_of_star[pair.first];
    for (size_t i = 0; i < base_events.size(); ++i) {
      std::vector<std::pair<int, Rational>> row{{m.y_offset() + base_events[i], -1}};
      for (int ev : nest.groups[i]) row.emplace_back(m.y_offset() + ev, 1);
      lp.add_constraint(std::move(row), Relation::Equal, 0,
                        "consistency_s" + std::to_string(pair.first) + "_s" + std::to_string(pair.second) + "_" +
                            std::to_string(i));
    }
  }
  for (VertexId v = 1; v < inst.num_vertices(); ++v) {
    std::vector<std::pair<int, Rational>> row;
    for (LinkId id : inst.covering(v)) row.emplace_back(m.z_offset() + id, 2);
    lp.add_constraint(std::move(row), Relation::GreaterEqual, 2, "odd_e" + std::to_string(v));
  }
  std::vector<std::pair<int, Rational>> total;
  std::vector<std::pair<int, Rational>> uncorrelated;
  for (LinkId id = 0; id < links; ++id) {
    const Rational& c = inst.cost(id);
    if (sgn(c) == 0) continue;
    total.emplace_back(id, c);
    total.emplace_back(m.z_offset() + id, -c);
    if (!link_correlated(inst, m.correlated, id)) {
      if (inst.info(id).cls != LinkClass::Up) uncorrelated.emplace_back(id, c);
      uncorrelated.emplace_back(m.z_offset() + id, -c);
    }
  }
  std::sort(uncorrelated.begin(), uncorrelated.end());
  lp.add_constraint(std::move(total), Relation::LessEqual, 0, "cost_total");
  lp.add_constraint(std::move(uncorrelated), Relation::LessEqual, 0, "cost_uncorrelated");
  return out;
}

StructuredSolution solve_structured(const Instance& inst, std::span<const VertexId> v_cor, int rho_prime,
                                    long event_cap, const SolveOptions& options) {
  StructuredLp built = build_structured_lp(inst, v_cor, rho_prime, event_cap);
  const StructuredModel& m = *built.model;
  const int links = inst.num_links();
  PresolvedProgram pre = presolve(built.lp);
  for (int round = 0;; ++round) {
    LpResult r = solve_lp(pre.lp, options);
    std::vector<Rational> point(pre.map.size(), Rational(0));
    for (size_t j = 0; j < point.size(); ++j) {
      if (pre.map[j] >= 0) point[j] = r.point[pre.map[j]];
    }
    StructuredSolution sol;
    sol.x.values.assign(point.begin(), point.begin() + links);
    sol.y.assign(point.begin() + m.y_offset(), point.begin() + m.z_offset());
    sol.z.values.assign(point.begin() + m.z_offset(), point.end());
    auto viol = separate_odd_cut(inst, sol.z.values, std::max(kDefaultSeparationCap, inst.num_vertices()));
    if (!viol) {
      sol.x.objective_value = objective_of(inst, sol.x.values);
      sol.z.objective_value = objective_of(inst, sol.z.values);
      sol.v_cor = m.v_cor;
      sol.rho_prime = rho_prime;
      sol.model = built.model;
      return sol;
    }
    std::uint64_t mask = 0;
    for (VertexId v : viol->vertex_set) mask |= std::uint64_t{1} << v;
    auto [terms, rhs] = odd_cut_row(inst, mask);
    std::map<int, Rational> mapped;
    for (const auto& [id, coef] : terms) {
      const int col = pre.map[m.z_offset() + id];
      if (col >= 0) mapped[col] += coef;
    }
    pre.lp.add_constraint({mapped.begin(), mapped.end()}, Relation::GreaterEqual, rhs, "odd_cut" + std::to_string(round));
  }
}

int conditional_sample(const StructuredModel& model, const std::vector<Rational>& y, int base_event, int target_star,
                       Rng& rng) {
  if (model.events[base_event].star == target_star) return base_event;
  const std::vector<int>& cands = model.agreeing(base_event, target_star);
  if (sgn(y[base_event]) <= 0) throw Error(ErrorCode::ZeroMassBase, "conditioning on an event of mass zero");
  std::vector<Rational> w;
  w.reserve(cands.size());
  for (int ev : cands) w.push_back(y[ev]);
  return cands[sample_index(rng, w, y[base_event])];
}

namespace {

int unconditional_sample(const StructuredModel& model, const std::vector<Rational>& y, int star, Rng& rng) {
  const auto& cands = model.events_of_star[star];
  std::vector<Rational> w;
  Rational total = 0;
  for (int ev : cands) {
    w.push_back(y[ev]);
    total += y[ev];
  }
  return cands[sample_index(rng, w, total)];
}

}  // namespace

RoundingResult structured_rounding(const StructuredSolution& sol, std::uint64_t seed) {
  const StructuredModel& m = *sol.model;
  const Instance& inst = m.inst;
  const int n = inst.num_vertices();
  RoundingResult out;
  out.trace.vertices.resize(n);
  std::vector<int> incoming(n, -1);
  for (VertexId v : inst.bfs_order()) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(v)}));
    VertexTrace& t = out.trace.vertices[v];
    const bool at_root = v == inst.root();
    int event = -1;
    if (!at_root) {
      t.call_event = incoming[v];
      event = incoming[v];
      if (m.core[v] != m.singleton[v]) {
        event = conditional_sample(m, sol.y, incoming[v], m.core[v], rng);
        for (LinkId id : m.events[event].links) {
          if (!inst.covers(id, EdgeId{v})) out.copies.push_back(LinkCopy{id, -1});
        }
      }
      t.core_event = event;
      for (VertexId c : inst.children(v)) {
        if (m.correlated[c]) incoming[c] = m.project(event, m.singleton[c]);
      }
    }
    for (VertexId c : inst.children(v)) {
      if (m.correlated[c]) continue;
      const int sampled = at_root ? unconditional_sample(m, sol.y, m.singleton[c], rng)
                                  : conditional_sample(m, sol.y, event, m.extended.at({v, c}), rng);
      t.child_events[c] = sampled;
      for (LinkId id : m.events[sampled].links) {
        if (inst.covers(id, EdgeId{c}) && (at_root || !m.link_in_event(event, id))) {
          out.copies.push_back(LinkCopy{id, c});
        }
      }
      incoming[c] = m.project(sampled, m.singleton[c]);
    }
  }
  return out;
}

std::vector<LinkId> copies_to_links(const std::vector<LinkCopy>& copies) {
  std::vector<LinkId> out;
  for (const auto& c : copies) out.push_back(c.link);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational multiset_cost(const Instance& inst, const std::vector<LinkCopy>& copies) {
  Rational total = 0;
  for (const auto& c : copies) total += inst.cost(c.link);
  return total;
}

Rational expected_rounding_cost(const StructuredSolution& sol) {
  const StructuredModel& m = *sol.model;
  Rational total = 0;
  for (LinkId id = 0; id < m.inst.num_links(); ++id) {
    if (sgn(sol.x.values[id]) == 0) continue;
    const Rational c = m.inst.cost(id) * sol.x.values[id];
    const bool doubled = !link_correlated(m.inst, m.correlated, id) && m.inst.info(id).cls != LinkClass::Up;
    total += doubled ? 2 * c : c;
  }
  return total;
}

void write_structured(std::ostream& os, const StructuredSolution& sol) {
  const StructuredModel& m = *sol.model;
  os << "structured rho_prime " << sol.rho_prime << " v_cor";
  for (VertexId v : sol.v_cor) os << " " << v;
  os << "\n";
  for (LinkId id = 0; id < static_cast<LinkId>(sol.x.values.size()); ++id) {
    if (sgn(sol.x.values[id]) != 0) os << "x " << id << " " << format_rational(sol.x.values[id]) << "\n";
  }
  for (LinkId id = 0; id < static_cast<LinkId>(sol.z.values.size()); ++id) {
    if (sgn(sol.z.values[id]) != 0) os << "z " << id << " " << format_rational(sol.z.values[id]) << "\n";
  }
  for (size_t k = 0; k < m.events.size(); ++k) {
    if (sgn(sol.y[k]) == 0) continue;
    const auto& ev = m.events[k];
    os << "y edges";
    for (EdgeId e : m.stars[ev.star].edges) os << " " << e.child;
    os << " links";
    for (LinkId id : ev.links) os << " " << id;
    os << " " << format_rational(sol.y[k]) << "\n";
  }
}

}  // namespace wtap
