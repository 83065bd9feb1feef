// Acceptance checks. Prints one PASS/FAIL line per criterion; arguments select
// a subset by number.

#include "wtap/cleanup.hpp"
#include "wtap/classic_round.hpp"
#include "wtap/correlation.hpp"
#include "wtap/exact.hpp"
#include "wtap/harness.hpp"
#include "wtap/random.hpp"
#include "wtap/strong.hpp"
#include "wtap/structured.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace wtap;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  int failures = 0;

  void fail(const std::string& what) {
    if (failures++ < 5) detail += (detail.empty() ? "" : "; ") + what;
    pass = false;
  }
};

std::string str(const Rational& r) { return format_rational_short(r); }

// Running mean and variance.
struct Stats {
  long long n = 0;
  double mean = 0;
  double m2 = 0;

  void add(double v) {
    ++n;
    const double d = v - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (v - mean);
  }
  double sigma_of_mean() const { return n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0; }
};

// Random instance with at most `max_links` links after shadow completion.
Instance corpus_instance(std::uint64_t seed, int n_min, int n_max, int max_links) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(derive_seed(seed, {attempt}));
    const int n = n_min + static_cast<int>(rng() % static_cast<std::uint64_t>(n_max - n_min + 1));
    const Rational density(2 + static_cast<int>(rng() % 4), 10);
    Instance inst = gen_random_instance(n, density, 1, 9, derive_seed(seed, {attempt, 1}));
    if (inst.num_links() <= max_links) return inst;
  }
}

std::vector<Instance> main_corpus() {
  std::vector<Instance> out;
  for (std::uint64_t i = 0; i < 500; ++i) out.push_back(corpus_instance(derive_seed(1001, {i}), 3, 8, 24));
  return out;
}

StructuredSolution pipeline(const Instance& inst) {
  const auto v_cor = select_vcor(inst, odd_cut_lp(inst), Rational(1, 4));
  return solve_structured(inst, v_cor, default_rho_prime(inst, v_cor));
}

// L_C membership recomputed from the leading edges and the correlated set.
bool correlated_link(const Instance& inst, const std::vector<VertexId>& v_cor, LinkId id) {
  const std::set<VertexId> cor(v_cor.begin(), v_cor.end());
  for (EdgeId e : inst.info(id).leading_edges) {
    if (cor.count(e.child)) return true;
  }
  return false;
}

Verdict c1(const std::vector<Instance>& corpus) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  for (size_t i = 0; i < corpus.size(); ++i) {
    const Instance up = uplink_restriction(corpus[i]);
    const Rational dp = uplink_dp_opt(up).cost;
    const Rational bf = brute_force_opt(up).cost;
    if (dp != bf) v.fail("instance " + std::to_string(i) + ": dp " + str(dp) + " vs brute force " + str(bf));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= 60) v.fail("took " + std::to_string(secs) + " s");
  v.detail = "500 up-link restrictions, " + std::to_string(secs).substr(0, 5) + " s" + (v.pass ? "" : "; " + v.detail);
  return v;
}

Verdict c2(const std::vector<Instance>& corpus) {
  Verdict v;
  int strong_built = 0, strict = 0;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const Instance& inst = corpus[i];
    const Rational cut = cut_lp(inst).objective_value;
    const Rational odd = odd_cut_lp(inst).objective_value;
    const Rational opt = brute_force_opt(inst).cost;
    Rational upper = opt;
    if (inst.num_vertices() <= 5) {
      const Rational strong = solve_strong_lp(inst, 1, 2).objective;
      ++strong_built;
      if (odd > strong) v.fail("instance " + std::to_string(i) + ": oddcut " + str(odd) + " > strong " + str(strong));
      if (strong > opt) v.fail("instance " + std::to_string(i) + ": strong " + str(strong) + " > opt " + str(opt));
      if (strong > odd) ++strict;
      upper = strong;
    }
    if (cut > odd) v.fail("instance " + std::to_string(i) + ": cut " + str(cut) + " > oddcut " + str(odd));
    if (odd > upper) v.fail("instance " + std::to_string(i) + ": oddcut above optimum");
  }
  v.detail = "500 instances, strong LP on " + std::to_string(strong_built) + " (strictly above oddcut on " +
             std::to_string(strict) + ")" + (v.pass ? "" : "; " + v.detail);
  return v;
}

// Links only between ancestor pairs or pairs whose lca is the root.
Instance cross_up_instance(std::uint64_t seed) {
  Rng rng(seed);
  const int n = 2 + static_cast<int>(rng() % 7);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int c = 1; c < n; ++c) edges.emplace_back(static_cast<VertexId>(rng() % static_cast<std::uint64_t>(c)), c);
  const Instance tree = build_instance(n, edges, {});
  std::vector<LinkSpec> links;
  std::vector<char> covered(n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (tree.parent(b) == a) continue;
      const bool up = tree.is_ancestor(a, b);
      if (!up && tree.lca(a, b) != 0) continue;
      if (rng() % 10 >= 4) continue;
      links.push_back({a, b, Rational(1 + static_cast<int>(rng() % 9))});
      for (EdgeId e : tree.tree_path(a, b)) covered[e.child] = 1;
    }
  }
  for (int c = 1; c < n; ++c) {
    if (!covered[c]) links.push_back({tree.parent(c), c, Rational(9)});
  }
  return build_instance(n, edges, links);
}

Verdict c3() {
  Verdict v;
  for (std::uint64_t i = 0; i < 200; ++i) {
    try {
      const Instance inst = cross_up_instance(derive_seed(3003, {i}));
      for (LinkId id = 0; id < inst.num_links(); ++id) {
        if (inst.info(id).cls == LinkClass::In) throw std::logic_error("generator produced an in-link");
      }
      const FractionalSolution z = odd_cut_lp(inst);
      const Rational opt = brute_force_opt(inst).cost;
      if (!is_integral(z)) v.fail("instance " + std::to_string(i) + ": fractional vertex");
      if (z.objective_value != opt) {
        v.fail("instance " + std::to_string(i) + ": oddcut " + str(z.objective_value) + " vs opt " + str(opt));
      }
    } catch (const std::exception& e) {
      v.fail("instance " + std::to_string(i) + ": " + e.what());
    }
  }
  v.detail = "200 cross/up-link instances" + (v.pass ? "" : "; " + v.detail);
  return v;
}

Verdict c4() {
  Verdict v;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const Instance inst = corpus_instance(derive_seed(4004, {i}), 2, 10, 40);
    const ExactSolution s = split_round_2approx(inst);
    const Rational cut = cut_lp(inst).objective_value;
    if (!is_feasible(inst, s.links)) v.fail("trial " + std::to_string(i) + ": infeasible");
    if (s.cost != inst.total_cost(s.links)) v.fail("trial " + std::to_string(i) + ": reported cost mismatch");
    if (s.cost > 2 * cut) v.fail("trial " + std::to_string(i) + ": " + str(s.cost) + " > 2*" + str(cut));
  }
  v.detail = "500 trials" + (v.pass ? "" : "; " + v.detail);
  return v;
}

Verdict c5() {
  Verdict v;
  for (std::uint64_t i = 0; i < 300; ++i) {
    const Instance inst = corpus_instance(derive_seed(5005, {i}), 2, 6, 30);
    const StructuredSolution sol = pipeline(inst);
    const ExactSolution s = odd_cut_rounding(inst, sol.z, sol.v_cor);
    Rational bound = 0;
    for (LinkId id = 0; id < inst.num_links(); ++id) {
      const Rational c = inst.cost(id) * sol.z.values[id];
      bound += correlated_link(inst, sol.v_cor, id) ? 2 * c : c;
    }
    if (!is_feasible(inst, s.links)) v.fail("trial " + std::to_string(i) + ": infeasible");
    if (s.cost > bound) v.fail("trial " + std::to_string(i) + ": " + str(s.cost) + " > " + str(bound));
  }
  v.detail = "300 trials" + (v.pass ? "" : "; " + v.detail);
  return v;
}

// Root 0 with children 1, 2, 3; vertex 4 hangs below 3 and is correlated.
// Every link costs 3. The optimum spreads 1/3 over six links.
const char* kFixture =
    "wtap 5 10\n"
    "edge 0 1\nedge 0 2\nedge 0 3\nedge 3 4\n"
    "link 0 1 3\nlink 0 2 3\nlink 0 3 3\nlink 0 4 3\nlink 1 2 3\n"
    "link 1 3 3\nlink 1 4 3\nlink 2 3 3\nlink 2 4 3\nlink 3 4 3\n";

// (star edges, event links) carrying mass 1/3 in the frozen optimum.
const std::vector<std::pair<std::vector<int>, std::vector<LinkId>>> kFixtureEvents = {
    {{1}, {4}},       {{1}, {5}},       {{1}, {6}},       {{1, 2}, {1, 5}}, {{1, 2}, {4}},    {{1, 2}, {6, 8}},
    {{1, 3}, {4, 8}}, {{1, 3}, {5}},    {{1, 3}, {6}},    {{2}, {1}},       {{2}, {4}},       {{2}, {8}},
    {{2, 3}, {1, 6}}, {{2, 3}, {4, 5}}, {{2, 3}, {8}},    {{3}, {5}},       {{3}, {6}},       {{3}, {8}},
    {{3, 4}, {5, 9}}, {{3, 4}, {6}},    {{3, 4}, {8}},    {{4}, {6}},       {{4}, {8}},       {{4}, {9}},
};
const std::vector<LinkId> kFixtureSupport = {1, 4, 5, 6, 8, 9};
// An integral cover of the same cost for z.
const std::vector<LinkId> kFixtureZ = {1, 6};

// The frozen point is built by hand, then checked against every structured LP
// row and the odd cuts, and its cost against the solver's optimum.
struct FixtureSolution {
  Instance inst = parse_instance(kFixture);
  StructuredSolution sol;
  std::string mismatch;

  FixtureSolution() {
    const std::vector<VertexId> v_cor{4};
    const int rho_prime = default_rho_prime(inst, v_cor);
    const StructuredLp built = build_structured_lp(inst, v_cor, rho_prime);
    const StructuredModel& m = *built.model;
    const int links = inst.num_links();
    std::vector<Rational> point(built.lp.num_variables(), Rational(0));
    for (LinkId id : kFixtureSupport) point[id] = Rational(1, 3);
    for (LinkId id : kFixtureZ) point[m.z_offset() + id] = 1;
    for (const auto& [edges, ls] : kFixtureEvents) {
      int found = -1;
      for (size_t ev = 0; ev < m.events.size(); ++ev) {
        std::vector<int> e;
        for (EdgeId x : m.stars[m.events[ev].star].edges) e.push_back(x.child);
        if (e == edges && m.events[ev].links == ls) found = static_cast<int>(ev);
      }
      if (found < 0) {
        mismatch = "fixture event missing from the model";
        return;
      }
      point[m.y_offset() + found] = Rational(1, 3);
    }
    for (const LinearConstraint& row : built.lp.constraints) {
      Rational lhs = 0;
      for (const auto& [j, a] : row.terms) lhs += a * point[j];
      const bool ok = row.relation == Relation::Equal        ? lhs == row.rhs
                      : row.relation == Relation::LessEqual ? lhs <= row.rhs
                                                            : lhs >= row.rhs;
      if (!ok) mismatch = "fixture violates row " + row.name;
    }
    for (int j = 0; j < built.lp.num_variables(); ++j) {
      if (point[j] < built.lp.lower[j] || (built.lp.upper[j] && point[j] > *built.lp.upper[j])) {
        mismatch = "fixture violates the bounds of " + built.lp.variable_names[j];
      }
    }
    sol.x.values.assign(point.begin(), point.begin() + links);
    sol.y.assign(point.begin() + m.y_offset(), point.begin() + m.z_offset());
    sol.z.values.assign(point.begin() + m.z_offset(), point.end());
    if (separate_odd_cut(inst, sol.z.values, inst.num_vertices())) mismatch = "fixture z violates an odd cut";
    sol.x.objective_value = inst.total_cost(kFixtureSupport) / 3;
    sol.z.objective_value = inst.total_cost(kFixtureZ);
    sol.v_cor = v_cor;
    sol.rho_prime = rho_prime;
    sol.model = built.model;
    const StructuredSolution solved = solve_structured(inst, v_cor, rho_prime);
    if (solved.x.objective_value != sol.x.objective_value) {
      mismatch = "fixture cost " + str(sol.x.objective_value) + " but the LP optimum is " + str(solved.x.objective_value);
    }
  }
};

constexpr int kRoundingRuns = 100000;

Verdict c6(const FixtureSolution& f) {
  Verdict v;
  if (!f.mismatch.empty()) {
    v.fail(f.mismatch);
    return v;
  }
  const StructuredModel& m = *f.sol.model;
  const int n = f.inst.num_vertices();
  std::map<std::pair<VertexId, int>, long long> calls;
  std::vector<long long> present(f.inst.num_links(), 0);
  std::vector<Stats> multiplicity(f.inst.num_links());
  for (int run = 0; run < kRoundingRuns; ++run) {
    const RoundingResult r = structured_rounding(f.sol, derive_seed(6006, {static_cast<std::uint64_t>(run)}));
    for (VertexId u = 1; u < n; ++u) ++calls[{u, r.trace.vertices[u].call_event}];
    std::vector<int> count(f.inst.num_links(), 0);
    for (const auto& c : r.copies) ++count[c.link];
    for (LinkId id = 0; id < f.inst.num_links(); ++id) {
      present[id] += count[id] > 0;
      multiplicity[id].add(count[id]);
    }
  }
  const double runs = kRoundingRuns;
  auto within = [&](double freq, double p, const std::string& what) {
    const double sigma = std::sqrt(p * (1 - p) / runs);
    if (std::abs(freq - p) > 3 * sigma || (sigma == 0 && freq != p)) {
      v.fail(what + ": " + std::to_string(freq) + " vs " + std::to_string(p));
    }
  };
  int bands = 0;
  for (VertexId u = 1; u < n; ++u) {
    const int star = m.singleton[u];
    long long seen = 0;
    for (int ev : m.events_of_star[star]) {
      const auto it = calls.find({u, ev});
      const long long hits = it == calls.end() ? 0 : it->second;
      seen += hits;
      within(static_cast<double>(hits) / runs, f.sol.y[ev].get_d(), "vertex " + std::to_string(u) + " event " + std::to_string(ev));
      ++bands;
    }
    if (seen != kRoundingRuns) v.fail("vertex " + std::to_string(u) + " called with an event outside its star");
  }
  for (LinkId id = 0; id < f.inst.num_links(); ++id) {
    const double x = f.sol.x.values[id].get_d();
    const bool cor = correlated_link(f.inst, f.sol.v_cor, id);
    if (cor || f.inst.info(id).cls == LinkClass::Up) {
      within(static_cast<double>(present[id]) / runs, x, "link " + std::to_string(id) + " frequency");
    } else {
      const Stats& s = multiplicity[id];
      if (std::abs(s.mean - 2 * x) > 3 * s.sigma_of_mean() || (x == 0 && s.mean != 0)) {
        v.fail("link " + std::to_string(id) + " multiplicity " + std::to_string(s.mean) + " vs " + std::to_string(2 * x));
      }
    }
    ++bands;
  }
  v.detail = std::to_string(kRoundingRuns) + " runs, " + std::to_string(bands) + " bands" + (v.pass ? "" : "; " + v.detail);
  return v;
}

Verdict c7(const FixtureSolution& f) {
  Verdict v;
  if (!f.mismatch.empty()) {
    v.fail(f.mismatch);
    return v;
  }
  Rational expected = 0;
  for (LinkId id = 0; id < f.inst.num_links(); ++id) {
    const Rational c = f.inst.cost(id) * f.sol.x.values[id];
    const bool single = correlated_link(f.inst, f.sol.v_cor, id) || f.inst.info(id).cls == LinkClass::Up;
    expected += single ? c : 2 * c;
  }
  if (expected != 10) v.fail("expected cost " + str(expected) + ", hand value 10");
  if (expected_rounding_cost(f.sol) != expected) v.fail("library expectation " + str(expected_rounding_cost(f.sol)));
  Stats s;
  for (int run = 0; run < kRoundingRuns; ++run) {
    const RoundingResult r = structured_rounding(f.sol, derive_seed(7007, {static_cast<std::uint64_t>(run)}));
    s.add(multiset_cost(f.inst, r.copies).get_d());
  }
  const double e = expected.get_d();
  if (std::abs(s.mean - e) > 3 * s.sigma_of_mean()) {
    v.fail("mean " + std::to_string(s.mean) + " outside " + std::to_string(e) + " ± " + std::to_string(3 * s.sigma_of_mean()));
  }
  v.detail = "mean " + std::to_string(s.mean) + ", exact " + str(expected) + ", 3σ " + std::to_string(3 * s.sigma_of_mean()) +
             (v.pass ? "" : "; " + v.detail);
  return v;
}

Verdict c8() {
  Verdict v;
  long long runs = 0, removals = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Instance inst = corpus_instance(derive_seed(8008, {i}), 3, 7, 30);
    const StructuredSolution sol = pipeline(inst);
    Cleaner cleaner(std::make_shared<StructuredSolution>(sol), Rational(3, 20));
    for (std::uint64_t seed = 0; seed < 200; ++seed, ++runs) {
      const RoundingResult r = structured_rounding(sol, derive_seed(seed, {i}));
      Rng prng(derive_seed(seed, {i, 1}));
      const ProtectionState prot = protection_state(*sol.model, r.copies, draw_protected_vertices(*sol.model, prng));
      const CleanupResult res = cleaner.run(r, prot);
      const std::string where = "instance " + std::to_string(i) + " seed " + std::to_string(seed);
      if (!is_feasible(inst, copies_to_links(res.copies))) v.fail(where + ": infeasible");
      if (multiset_cost(inst, res.copies) > multiset_cost(inst, r.copies)) v.fail(where + ": cost increased");
      for (const auto& c : res.removed) {
        if (copy_protected(prot, c)) v.fail(where + ": protected copy of link " + std::to_string(c.link) + " removed");
      }
      removals += static_cast<long long>(res.removed.size());
    }
  }
  v.detail = std::to_string(runs) + " runs on 50 instances, " + std::to_string(removals) + " copies removed" +
             (v.pass ? "" : "; " + v.detail);
  return v;
}

Verdict c9() {
  Verdict v;
  const Analysis149 a = analyze_149(Params149{Rational(3, 20), Rational(25, 53)});
  const Rational p(25, 53);
  if (a.K != Rational(9, 280)) v.fail("K = " + str(a.K));
  if (a.C1 != Rational(289, 530)) v.fail("C1 = " + str(a.C1));
  if (a.C2 != Rational(539, 530)) v.fail("C2 = " + str(a.C2));
  if (a.C2 - p != a.C1) v.fail("C2 - p = " + str(a.C2 - p));
  if (a.ratio != Rational(789, 530)) v.fail("ratio = " + str(a.ratio));
  if (a.C1 + 2 * p != Rational(789, 530)) v.fail("C1 + 2p = " + str(a.C1 + 2 * p));
  v.detail = "K=" + str(a.K) + " C1=" + str(a.C1) + " C2=" + str(a.C2) + " ratio=" + str(a.ratio) + (v.pass ? "" : "; " + v.detail);
  return v;
}

Verdict c10() {
  Verdict v;
  constexpr int kRuns = 10000;
  const auto start = std::chrono::steady_clock::now();
  double worst149 = -1e9, worst15 = -1e9;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const Instance inst = corpus_instance(derive_seed(1010, {i}), 4, 6, 30);
    const StructuredSolution sol = pipeline(inst);
    Combiner comb(inst, sol);
    const double z = sol.z.objective_value.get_d();
    Stats cost149, multi149, cost15, multi15;
    for (std::uint64_t seed = 0; seed < kRuns; ++seed) {
      const CombinedRun a = comb.run_149(derive_seed(seed, {i}));
      if (!is_feasible(inst, a.solution.links)) v.fail("run_149 infeasible on instance " + std::to_string(i));
      cost149.add(a.solution.cost.get_d());
      multi149.add(a.multiset_cost.get_d());
      const CombinedRun b = comb.run_15(derive_seed(seed, {i, 1}));
      if (!is_feasible(inst, b.solution.links)) v.fail("run_15 infeasible on instance " + std::to_string(i));
      cost15.add(b.solution.cost.get_d());
      multi15.add(b.multiset_cost.get_d());
    }
    const double b149 = 789.0 / 530.0 * z;
    const double b15 = 1.5 * z;
    auto check = [&](const Stats& s, double bound, const char* what, double& worst) {
      const double slack = s.mean - (bound + 3 * s.sigma_of_mean());
      worst = std::max(worst, s.mean / z);
      if (slack > 0) {
        v.fail(std::string(what) + " on instance " + std::to_string(i) + ": mean " + std::to_string(s.mean) + " > " +
               std::to_string(bound) + " + 3σ");
      }
    };
    check(cost149, b149, "run_149 cost", worst149);
    check(multi149, b149, "run_149 multiset cost", worst149);
    check(cost15, b15, "run_15 cost", worst15);
    check(multi15, b15, "run_15 multiset cost", worst15);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > 600) v.fail("took " + std::to_string(secs) + " s");
  v.detail = "20 instances x " + std::to_string(kRuns) + " runs, worst mean/z " + std::to_string(worst149) + " (1.49), " +
             std::to_string(worst15) + " (1.5), " + std::to_string(static_cast<int>(secs)) + " s" + (v.pass ? "" : "; " + v.detail);
  return v;
}

Verdict c11() {
  Verdict v;
  long long pairs = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Instance inst = corpus_instance(derive_seed(1111, {i}), 2, 5, 24);
    const StrongModel m = build_strong_model(inst, 1, 2);
    const ExactSolution opt = brute_force_opt(inst);
    const StrongCandidate c = intended_solution(m, opt.links);
    for (const auto& viol : check_strong_feasibility(m, c)) {
      v.fail("instance " + std::to_string(i) + ": constraint " + std::to_string(viol.constraint) + " at " + viol.where);
    }
    for (int ev = 0; ev < static_cast<int>(m.events.size()); ++ev) {
      if (c.y[ev] != 1) continue;
      const std::uint64_t r = m.subtree_mask[m.events[ev].subtree];
      for (int qs = 0; qs < static_cast<int>(m.subtrees.size()); ++qs) {
        if ((r & m.subtree_mask[qs]) != r) continue;
        ++pairs;
        int ones = 0;
        for (int e2 : ext_set(m, ev, qs)) ones += c.y[e2] == 1;
        if (ones != 1) {
          v.fail("instance " + std::to_string(i) + " event " + std::to_string(ev) + " subtree " + std::to_string(qs) + ": " +
                 std::to_string(ones) + " consistent extensions");
        }
      }
    }
  }
  v.detail = "100 optima, " + std::to_string(pairs) + " (event, subtree) pairs" + (v.pass ? "" : "; " + v.detail);
  return v;
}

Verdict c12() {
  Verdict v;
  const char* configs[] = {
      "seed = 12\ntrials = 6\nn_min = 3\nn_max = 6\nstrong_max_n = 4\nrepetitions = 3\n",
      "seed = 99\ntrials = 4\nn_min = 5\nn_max = 7\nlink_density = 1/2\nalgorithms = split2, oddcut, full149\n",
  };
  for (const char* text : configs) {
    const BenchConfig cfg = parse_bench_config(text);
    std::ostringstream a, b;
    run_benchmark(cfg, a);
    run_benchmark(cfg, b);
    if (a.str() != b.str()) v.fail("output differs for seed " + std::to_string(cfg.seed));
    if (a.str().empty()) v.fail("empty output");
  }
  v.detail = "2 configs re-run" + (v.pass ? "" : "; " + v.detail);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  auto wanted = [&](int k) { return selected.empty() || selected.count(k) > 0; };

  std::vector<Instance> corpus;
  if (wanted(1) || wanted(2)) corpus = main_corpus();
  std::unique_ptr<FixtureSolution> fixture;
  if (wanted(6) || wanted(7)) fixture = std::make_unique<FixtureSolution>();

  const std::vector<std::pair<int, std::function<Verdict()>>> criteria = {
      {1, [&] { return c1(corpus); }},  {2, [&] { return c2(corpus); }},  {3, c3},  {4, c4},
      {5, c5},                          {6, [&] { return c6(*fixture); }}, {7, [&] { return c7(*fixture); }},
      {8, c8},                          {9, c9},                           {10, c10}, {11, c11}, {12, c12},
  };
  int failed = 0;
  for (const auto& [k, fn] : criteria) {
    if (!wanted(k)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict verdict;
    try {
      verdict = fn();
    } catch (const std::exception& e) {
      verdict.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d: %s  %s  [%.1f s]\n", k, verdict.pass ? "PASS" : "FAIL", verdict.detail.c_str(), secs);
    std::fflush(stdout);
    failed += verdict.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
