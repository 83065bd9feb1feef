#include "wtap/lp.hpp"

#include <bit>
#include <string>

namespace wtap {

namespace {

std::uint64_t cut_edges(const Instance& inst, std::uint64_t vertex_mask) {
  std::uint64_t d = 0;
  for (VertexId v = 1; v < inst.num_vertices(); ++v) {
    if (((vertex_mask >> v) ^ (vertex_mask >> inst.parent(v))) & 1) d |= std::uint64_t{1} << v;
  }
  return d;
}

LinearProgram base_program(const Instance& inst, const std::vector<char>& fixed_zero) {
  LinearProgram lp;
  for (const auto& l : inst.links()) {
    const bool zero = !fixed_zero.empty() && fixed_zero[l.id];
    lp.add_variable("x" + std::to_string(l.id), l.cost, 0, Rational(zero ? 0 : 1));
  }
  return lp;
}

FractionalSolution to_solution(const Instance& inst, const LpResult& r) {
  FractionalSolution out;
  out.values.assign(r.point.begin(), r.point.begin() + inst.num_links());
  out.objective_value = objective_of(inst, out.values);
  return out;
}

}  // namespace

LinearProgram cut_lp_program(const Instance& inst) {
  LinearProgram lp = base_program(inst, {});
  for (VertexId v = 1; v < inst.num_vertices(); ++v) {
    std::vector<std::pair<int, Rational>> terms;
    for (LinkId id : inst.covering(v)) terms.emplace_back(id, 1);
    lp.add_constraint(std::move(terms), Relation::GreaterEqual, 1, "cover_e" + std::to_string(v));
  }
  return lp;
}

FractionalSolution cut_lp(const Instance& inst) { return to_solution(inst, solve_lp(cut_lp_program(inst))); }

LinearProgram odd_cut_lp_program(const Instance& inst, int separation_cap) {
  const int n = inst.num_vertices();
  if (n > separation_cap || n > 63) {
    throw Error(ErrorCode::TooLarge, std::to_string(n) + " vertices exceed the separation cap");
  }
  LinearProgram lp = base_program(inst, {});
  for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << (n - 1)); ++rest) {
    const std::uint64_t mask = (rest << 1) | 1;
    if (!(std::popcount(cut_edges(inst, mask)) & 1)) continue;
    auto [terms, rhs] = odd_cut_row(inst, mask);
    lp.add_constraint(std::move(terms), Relation::GreaterEqual, rhs, "odd_S" + std::to_string(mask));
  }
  return lp;
}

std::pair<std::vector<std::pair<int, Rational>>, Rational> odd_cut_row(const Instance& inst,
                                                                       std::uint64_t vertex_mask) {
  const std::uint64_t d = cut_edges(inst, vertex_mask);
  std::vector<std::pair<int, Rational>> terms;
  for (const auto& l : inst.links()) {
    const int hits = std::popcount(inst.path_mask(l.id) & d);
    // An odd number of cut edges on the path means the link itself crosses S.
    const int coef = hits + (hits & 1);
    if (coef) terms.emplace_back(l.id, coef);
  }
  return {std::move(terms), Rational(std::popcount(d) + 1)};
}

std::optional<OddCutViolation> separate_odd_cut(const Instance& inst, const std::vector<Rational>& values,
                                                int separation_cap) {
  const int n = inst.num_vertices();
  if (n > separation_cap || n > 63) {
    throw Error(ErrorCode::TooLarge, "odd-cut separation enumerates at most " + std::to_string(separation_cap) + " vertices");
  }
  // Work with integers scaled to a common denominator over the support.
  mpz_class den = 1;
  std::vector<std::pair<std::uint64_t, mpz_class>> support;
  for (LinkId id = 0; id < static_cast<LinkId>(values.size()); ++id) {
    if (sgn(values[id]) != 0) den = lcm(den, mpz_class(values[id].get_den()));
  }
  for (LinkId id = 0; id < static_cast<LinkId>(values.size()); ++id) {
    if (sgn(values[id]) == 0) continue;
    support.emplace_back(inst.path_mask(id), values[id].get_num() * (den / values[id].get_den()));
  }
  std::vector<VertexId> parent(n);
  for (VertexId v = 0; v < n; ++v) parent[v] = inst.parent(v);

  std::optional<OddCutViolation> best;
  mpz_class best_gap = 0;  // (rhs * den - lhs), scaled
  mpz_class lhs;
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  for (std::uint64_t rest = 0; rest < total; ++rest) {
    const std::uint64_t mask = (rest << 1) | 1;
    std::uint64_t d = 0;
    for (VertexId v = 1; v < n; ++v) {
      if (((mask >> v) ^ (mask >> parent[v])) & 1) d |= std::uint64_t{1} << v;
    }
    const int k = std::popcount(d);
    if (!(k & 1)) continue;
    lhs = 0;
    for (const auto& [pm, w] : support) {
      const int hits = std::popcount(pm & d);
      if (hits) lhs += w * (hits + (hits & 1));
    }
    mpz_class gap = mpz_class(k + 1) * den - lhs;
    if (sgn(gap) > 0 && gap > best_gap) {
      best_gap = gap;
      OddCutViolation viol;
      for (VertexId v = 0; v < n; ++v) {
        if (mask >> v & 1) viol.vertex_set.push_back(v);
      }
      viol.deficit = Rational(gap, den);
      viol.deficit.canonicalize();
      best = std::move(viol);
    }
  }
  return best;
}

FractionalSolution odd_cut_lp(const Instance& inst, const OddCutOptions& options) {
  const int n = inst.num_vertices();
  if (n > options.separation_cap) {
    throw Error(ErrorCode::TooLarge, std::to_string(n) + " vertices exceed the separation cap");
  }
  LinearProgram lp = base_program(inst, options.fixed_zero);
  // Sets V \ V(T_v) cut only e_v: 2 x(L_e) >= 2.
  for (VertexId v = 1; v < n; ++v) {
    std::vector<std::pair<int, Rational>> terms;
    for (LinkId id : inst.covering(v)) terms.emplace_back(id, 2);
    lp.add_constraint(std::move(terms), Relation::GreaterEqual, 2, "odd_e" + std::to_string(v));
  }
  for (int round = 0;; ++round) {
    FractionalSolution sol = to_solution(inst, solve_lp(lp, options.solve));
    auto viol = separate_odd_cut(inst, sol.values, options.separation_cap);
    if (!viol) return sol;
    std::uint64_t mask = 0;
    for (VertexId v : viol->vertex_set) mask |= std::uint64_t{1} << v;
    auto [terms, rhs] = odd_cut_row(inst, mask);
    lp.add_constraint(std::move(terms), Relation::GreaterEqual, rhs, "odd_cut" + std::to_string(round));
  }
}

bool is_integral(const FractionalSolution& x) {
  for (const auto& v : x.values) {
    if (v != 0 && v != 1) return false;
  }
  return true;
}

Rational objective_of(const Instance& inst, const std::vector<Rational>& values) {
  Rational total = 0;
  for (LinkId id = 0; id < static_cast<LinkId>(values.size()); ++id) {
    if (sgn(values[id]) != 0) total += inst.cost(id) * values[id];
  }
  return total;
}

}  // namespace wtap
