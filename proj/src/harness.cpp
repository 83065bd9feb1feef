#include "wtap/harness.hpp"

#include "wtap/cleanup.hpp"
#include "wtap/classic_round.hpp"
#include "wtap/exact.hpp"
#include "wtap/random.hpp"
#include "wtap/strong.hpp"
#include "wtap/structured.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

namespace wtap {

namespace {

using Json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
bool parse_int(std::string_view text, T& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::string q(const Rational& r) { return format_rational(r); }

Rational rational_of(const Json& j) {
  Rational r;
  if (!j.is_string() || !parse_rational(j.get<std::string>(), r)) {
    throw Error(ErrorCode::ParseError, "expected a p/q string");
  }
  return r;
}

std::optional<Rational> optional_rational(const Json& obj, const char* key) {
  if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
  return rational_of(obj[key]);
}

}  // namespace

Instance gen_random_instance(int n, const Rational& density, int cost_min, int cost_max, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::InvalidConfig, "n must be at least 2");
  if (sgn(density) <= 0 || density > 1) throw Error(ErrorCode::InvalidConfig, "density must lie in (0, 1]");
  if (cost_min < 0 || cost_min > cost_max) throw Error(ErrorCode::InvalidConfig, "bad cost range");
  Rng rng(seed);
  std::vector<VertexId> parent(n, 0);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 1; v < n; ++v) {
    parent[v] = std::uniform_int_distribution<VertexId>(0, v - 1)(rng);
    edges.emplace_back(parent[v], v);
  }
  const Instance tree = build_instance(n, edges, {});
  std::uniform_int_distribution<int> cost(cost_min, cost_max);
  std::vector<LinkSpec> links;
  std::vector<char> covered(n, 0);
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) {
      if (parent[b] == a) continue;
      if (!bernoulli(rng, density)) continue;
      links.push_back({a, b, Rational(cost(rng))});
      for (EdgeId e : tree.tree_path(a, b)) covered[e.child] = 1;
    }
  }
  for (VertexId v = 1; v < n; ++v) {
    if (!covered[v]) links.push_back({parent[v], v, Rational(cost_max)});
  }
  return shadow_complete(build_instance(n, edges, links));
}

Instance parse_instance(std::string_view text) {
  int n = -1, m = -1;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<LinkSpec> links;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(std::string_view(raw).substr(0, hash));
    if (body.empty()) continue;
    std::istringstream words(body);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (n < 0) {
      if (tok.size() != 3 || tok[0] != "wtap" || !parse_int(tok[1], n) || !parse_int(tok[2], m) || n < 1 || m < 0) {
        parse_fail(line, "expected header `wtap <n> <m>`");
      }
      continue;
    }
    if (tok[0] == "edge") {
      VertexId p = 0, c = 0;
      if (tok.size() != 3 || !parse_int(tok[1], p) || !parse_int(tok[2], c)) parse_fail(line, "expected `edge <p> <c>`");
      if (static_cast<int>(edges.size()) == n - 1) parse_fail(line, "more than n-1 edges");
      if (!links.empty()) parse_fail(line, "edge after links");
      edges.emplace_back(p, c);
    } else if (tok[0] == "link") {
      VertexId u = 0, v = 0;
      Rational cost;
      if (tok.size() != 4 || !parse_int(tok[1], u) || !parse_int(tok[2], v)) parse_fail(line, "expected `link <u> <v> <cost>`");
      if (!parse_rational(tok[3], cost)) parse_fail(line, "malformed cost `" + tok[3] + "`");
      if (static_cast<int>(links.size()) == m) parse_fail(line, "more than m links");
      links.push_back({u, v, cost});
    } else {
      parse_fail(line, "unknown record `" + tok[0] + "`");
    }
  }
  if (n < 0) parse_fail(line, "missing header");
  if (static_cast<int>(edges.size()) != n - 1) parse_fail(line, "expected " + std::to_string(n - 1) + " edges");
  if (static_cast<int>(links.size()) != m) parse_fail(line, "expected " + std::to_string(m) + " links");
  return build_instance(n, edges, links);
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream os;
  os << "wtap " << inst.num_vertices() << " " << inst.num_links() << "\n";
  for (VertexId v = 1; v < inst.num_vertices(); ++v) os << "edge " << inst.parent(v) << " " << v << "\n";
  for (const auto& l : inst.links()) os << "link " << l.u << " " << l.v << " " << q(l.cost) << "\n";
  return os.str();
}

bool same_structure(const Instance& a, const Instance& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_links() != b.num_links()) return false;
  for (VertexId v = 1; v < a.num_vertices(); ++v) {
    if (a.parent(v) != b.parent(v)) return false;
  }
  for (LinkId id = 0; id < a.num_links(); ++id) {
    const auto& x = a.link(id);
    const auto& y = b.link(id);
    if (x.u != y.u || x.v != y.v || x.cost != y.cost) return false;
  }
  return true;
}

Instance uplink_restriction(const Instance& inst) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 1; v < inst.num_vertices(); ++v) edges.emplace_back(inst.parent(v), v);
  std::vector<LinkSpec> links;
  for (const auto& l : inst.links()) {
    if (is_uplink(inst, l.id)) links.push_back({l.u, l.v, l.cost});
  }
  return build_instance(inst.num_vertices(), edges, links);
}

BenchConfig parse_bench_config(std::string_view text) {
  BenchConfig cfg;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(line) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++line;
    const std::string body = trim(std::string_view(raw).substr(0, raw.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    auto as_int = [&](int& out) {
      if (!parse_int(value, out)) fail("bad integer for " + key);
    };
    auto as_rational = [&](Rational& out) {
      if (!parse_rational(value, out)) fail("bad rational for " + key);
    };
    if (key == "seed") {
      if (!parse_int(value, cfg.seed)) fail("bad seed");
    } else if (key == "trials") {
      as_int(cfg.trials);
    } else if (key == "n_min") {
      as_int(cfg.n_min);
    } else if (key == "n_max") {
      as_int(cfg.n_max);
    } else if (key == "link_density") {
      as_rational(cfg.link_density);
    } else if (key == "cost_min") {
      as_int(cfg.cost_min);
    } else if (key == "cost_max") {
      as_int(cfg.cost_max);
    } else if (key == "algorithms") {
      cfg.algorithms.clear();
      std::istringstream parts(value);
      for (std::string a; std::getline(parts, a, ',');) {
        a = trim(a);
        if (std::find(kBenchAlgorithms.begin(), kBenchAlgorithms.end(), a) == kBenchAlgorithms.end()) {
          fail("unknown algorithm `" + a + "`");
        }
        if (std::find(cfg.algorithms.begin(), cfg.algorithms.end(), a) == cfg.algorithms.end()) {
          cfg.algorithms.push_back(a);
        }
      }
    } else if (key == "gamma") {
      as_rational(cfg.gamma);
    } else if (key == "p") {
      as_rational(cfg.p);
    } else if (key == "delta") {
      as_rational(cfg.delta);
    } else if (key == "rho_prime") {
      as_int(cfg.rho_prime);
    } else if (key == "beta") {
      as_int(cfg.beta);
    } else if (key == "rho") {
      as_int(cfg.rho);
    } else if (key == "strong_max_n") {
      as_int(cfg.strong_max_n);
    } else if (key == "repetitions") {
      as_int(cfg.repetitions);
    } else if (key == "record_runtime") {
      if (value == "1" || value == "true") {
        cfg.record_runtime = true;
      } else if (value == "0" || value == "false") {
        cfg.record_runtime = false;
      } else {
        fail("bad boolean for record_runtime");
      }
    } else {
      fail("unknown key `" + key + "`");
    }
  }
  validate_config(cfg);
  return cfg;
}

void apply_seed_override(BenchConfig& cfg, const char* value) {
  if (!value) return;
  if (!parse_int(std::string_view(value), cfg.seed)) {
    throw Error(ErrorCode::InvalidConfig, std::string("WTAP_SEED is not an unsigned integer: ") + value);
  }
}

void validate_config(const BenchConfig& cfg) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (cfg.trials < 1) fail("trials must be at least 1");
  if (cfg.n_min < 2 || cfg.n_min > cfg.n_max) fail("n_range must satisfy 2 <= n_min <= n_max");
  if (cfg.n_max > kDefaultSeparationCap) fail("n_max exceeds the odd-cut separation cap");
  if (sgn(cfg.link_density) <= 0 || cfg.link_density > 1) fail("link_density must lie in (0, 1]");
  if (cfg.cost_min < 0 || cfg.cost_min > cfg.cost_max) fail("cost range must satisfy 0 <= cost_min <= cost_max");
  if (cfg.algorithms.empty()) fail("no algorithms selected");
  if (sgn(cfg.gamma) <= 0 || cfg.gamma > Rational(3, 4)) fail("gamma must lie in (0, 3/4]");
  if (sgn(cfg.p) < 0 || cfg.p > 1) fail("p must lie in [0, 1]");
  if (sgn(cfg.delta) <= 0 || cfg.delta > 1) fail("delta must lie in (0, 1]");
  if (cfg.rho_prime < 0) fail("rho_prime must be non-negative");
  if (cfg.beta < 0 || cfg.rho < 1) fail("need beta >= 0 and rho >= 1");
  if (cfg.strong_max_n < 0) fail("strong_max_n must be non-negative");
  if (cfg.repetitions < 1) fail("repetitions must be at least 1");
}

TrialReport run_trial(const BenchConfig& cfg, int trial) {
  using Clock = std::chrono::steady_clock;
  TrialReport rep;
  rep.instance_id = trial;
  rep.seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(trial)});
  Rng size_rng(derive_seed(rep.seed, {0}));
  const int n = std::uniform_int_distribution<int>(cfg.n_min, cfg.n_max)(size_rng);
  const Instance inst = gen_random_instance(n, cfg.link_density, cfg.cost_min, cfg.cost_max, derive_seed(rep.seed, {1}));
  rep.n = n;
  rep.m = inst.num_links();

  auto guarded = [&](const std::string& what, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      rep.errors.push_back(what + ": " + e.what());
    }
  };
  std::optional<ExactSolution> opt;
  guarded("opt", [&] {
    opt = brute_force_opt(inst);
    rep.opt = opt->cost;
  });
  FractionalSolution odd;
  guarded("cut", [&] { rep.cut = cut_lp(inst).objective_value; });
  guarded("oddcut", [&] {
    odd = odd_cut_lp(inst);
    rep.oddcut = odd.objective_value;
  });
  if (n <= cfg.strong_max_n) {
    guarded("strong", [&] { rep.strong = solve_strong_lp(inst, cfg.beta, cfg.rho).objective; });
  }
  if (rep.cut && rep.oddcut && *rep.cut > *rep.oddcut) rep.violations.push_back("lp: cut > oddcut");
  if (rep.oddcut && rep.strong && *rep.oddcut > *rep.strong) rep.violations.push_back("lp: oddcut > strong");
  if (rep.strong && rep.opt && *rep.strong > *rep.opt) rep.violations.push_back("lp: strong > opt");
  if (rep.oddcut && rep.opt && *rep.oddcut > *rep.opt) rep.violations.push_back("lp: oddcut > opt");

  const auto wants = [&](const char* a) {
    return std::find(cfg.algorithms.begin(), cfg.algorithms.end(), a) != cfg.algorithms.end();
  };
  std::shared_ptr<StructuredSolution> sol;
  std::vector<VertexId> v_cor;
  if (rep.oddcut && (wants("oddcut") || wants("structured15") || wants("full149"))) {
    guarded("structured", [&] {
      v_cor = select_vcor(inst, odd, cfg.delta);
      const int rho_prime = cfg.rho_prime > 0 ? cfg.rho_prime : default_rho_prime(inst, v_cor);
      sol = std::make_shared<StructuredSolution>(solve_structured(inst, v_cor, rho_prime));
      rep.z_cost = sol->z.objective_value;
    });
  }
  std::unique_ptr<Combiner> combiner;

  for (size_t ai = 0; ai < kBenchAlgorithms.size(); ++ai) {
    const std::string& name = kBenchAlgorithms[ai];
    if (!wants(name.c_str())) continue;
    AlgorithmReport a;
    a.name = name;
    const auto t0 = Clock::now();
    try {
      auto check = [&](const Instance& where, const ExactSolution& s) {
        a.feasible = a.feasible && is_feasible(where, s.links) && where.total_cost(s.links) == s.cost;
      };
      if (name == "exact") {
        if (!opt) throw Error(ErrorCode::TooLarge, "no optimum");
        a.cost = opt->cost;
        a.lp = rep.oddcut;
        check(inst, *opt);
      } else if (name == "dp") {
        const Instance up = uplink_restriction(inst);
        ExactSolution s = uplink_dp_opt(up);
        a.cost = s.cost;
        a.lp = rep.oddcut;
        check(up, s);
        if (rep.opt && s.cost < *rep.opt) a.bound_ok = false;
      } else if (name == "split2") {
        ExactSolution s = split_round_2approx(inst);
        a.cost = s.cost;
        a.lp = rep.cut;
        check(inst, s);
        if (!rep.cut) throw Error(ErrorCode::Infeasible, "no cut LP value");
        a.bound = 2 * *rep.cut;
        a.bound_ok = s.cost <= *a.bound;
      } else if (name == "oddcut") {
        if (!sol) throw Error(ErrorCode::Infeasible, "no structured solution");
        ExactSolution s = odd_cut_rounding(inst, sol->z, v_cor);
        a.cost = s.cost;
        a.lp = rep.z_cost;
        a.bound = odd_cut_rounding_bound(inst, sol->z, v_cor);
        a.bound_ok = s.cost <= *a.bound;
        check(inst, s);
      } else {
        if (!sol) throw Error(ErrorCode::Infeasible, "no structured solution");
        if (!combiner) combiner = std::make_unique<Combiner>(inst, *sol, Params149{cfg.gamma, cfg.p});
        Rational total = 0, multiset = 0;
        for (int r = 0; r < cfg.repetitions; ++r) {
          const std::uint64_t seed = derive_seed(rep.seed, {2, ai, static_cast<std::uint64_t>(r)});
          a.seeds.push_back(seed);
          CombinedRun run = name == "structured15" ? combiner->run_15(seed) : combiner->run_149(seed);
          check(inst, run.solution);
          total += run.solution.cost;
          multiset += run.multiset_cost;
          if (name == "full149" && (run.multiset_cost > run.pre_cleanup_cost || run.protected_removed)) {
            a.bound_ok = false;
          }
        }
        a.cost = total / cfg.repetitions;
        a.multiset_cost = multiset / cfg.repetitions;
        a.lp = rep.z_cost;
      }
    } catch (const std::exception& e) {
      a.error = e.what();
    }
    a.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    if (a.error.empty()) {
      if (!a.feasible) rep.violations.push_back(name + ": infeasible output");
      if (!a.bound_ok) rep.violations.push_back(name + ": bound violated");
    } else {
      rep.errors.push_back(name + ": " + a.error);
    }
    rep.algorithms.push_back(std::move(a));
  }
  return rep;
}

std::string report_to_json(const TrialReport& r, bool with_runtime) {
  auto opt_q = [](const std::optional<Rational>& v) { return v ? Json(q(*v)) : Json(nullptr); };
  Json j;
  j["instance_id"] = r.instance_id;
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["m"] = r.m;
  j["opt"] = opt_q(r.opt);
  Json lp = Json::object();
  lp["cut"] = opt_q(r.cut);
  lp["oddcut"] = opt_q(r.oddcut);
  if (r.strong) lp["strong"] = q(*r.strong);
  j["lp_values"] = lp;
  j["z_cost"] = opt_q(r.z_cost);
  Json costs = Json::object(), multiset = Json::object(), bounds = Json::object(), ratios = Json::object(),
       feasible = Json::object(), bound_ok = Json::object(), runtime = Json::object(), streams = Json::object(),
       lps = Json::object(), errors = Json::object();
  for (const auto& a : r.algorithms) {
    if (!a.error.empty()) {
      errors[a.name] = a.error;
      continue;
    }
    costs[a.name] = q(a.cost);
    if (a.multiset_cost) multiset[a.name] = q(*a.multiset_cost);
    if (a.bound) bounds[a.name] = q(*a.bound);
    if (a.lp) lps[a.name] = q(*a.lp);
    Json ratio = Json::object();
    if (r.opt && sgn(*r.opt) > 0) ratio["opt"] = Rational(a.cost / *r.opt).get_d();
    if (a.lp && sgn(*a.lp) > 0) ratio["lp"] = Rational(a.cost / *a.lp).get_d();
    ratios[a.name] = ratio;
    feasible[a.name] = a.feasible;
    bound_ok[a.name] = a.bound_ok;
    if (with_runtime) runtime[a.name] = a.runtime_ms;
    if (!a.seeds.empty()) streams[a.name] = a.seeds;
  }
  j["costs"] = costs;
  j["multiset_costs"] = multiset;
  j["bounds"] = bounds;
  j["reference_lp"] = lps;
  j["ratios"] = ratios;
  j["feasible"] = feasible;
  j["bound_ok"] = bound_ok;
  if (with_runtime) j["runtime_ms"] = runtime;
  j["rng_streams"] = streams;
  j["algorithm_errors"] = errors;
  j["violations"] = r.violations;
  j["errors"] = r.errors;
  return j.dump();
}

TrialReport report_from_json(std::string_view line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("report line: ") + e.what());
  }
  TrialReport r;
  r.instance_id = j.at("instance_id").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.n = j.at("n").get<int>();
  r.m = j.at("m").get<int>();
  r.opt = optional_rational(j, "opt");
  const Json& lp = j.at("lp_values");
  r.cut = optional_rational(lp, "cut");
  r.oddcut = optional_rational(lp, "oddcut");
  r.strong = optional_rational(lp, "strong");
  r.z_cost = optional_rational(j, "z_cost");
  for (const auto& name : kBenchAlgorithms) {
    const bool ran = j.at("costs").contains(name);
    const bool failed = j.at("algorithm_errors").contains(name);
    if (!ran && !failed) continue;
    AlgorithmReport a;
    a.name = name;
    if (failed) {
      a.error = j["algorithm_errors"][name].get<std::string>();
    } else {
      a.cost = rational_of(j["costs"][name]);
      a.multiset_cost = optional_rational(j["multiset_costs"], name.c_str());
      a.bound = optional_rational(j["bounds"], name.c_str());
      a.lp = optional_rational(j["reference_lp"], name.c_str());
      a.feasible = j["feasible"][name].get<bool>();
      a.bound_ok = j["bound_ok"][name].get<bool>();
      if (j.contains("runtime_ms")) a.runtime_ms = j["runtime_ms"][name].get<double>();
      if (j["rng_streams"].contains(name)) a.seeds = j["rng_streams"][name].get<std::vector<std::uint64_t>>();
    }
    r.algorithms.push_back(std::move(a));
  }
  r.violations = j.at("violations").get<std::vector<std::string>>();
  r.errors = j.at("errors").get<std::vector<std::string>>();
  return r;
}

bool BenchSummary::operator==(const BenchSummary& o) const {
  if (trials != o.trials || violations != o.violations || errors != o.errors ||
      algorithms.size() != o.algorithms.size()) {
    return false;
  }
  for (size_t i = 0; i < algorithms.size(); ++i) {
    const auto& a = algorithms[i];
    const auto& b = o.algorithms[i];
    if (a.name != b.name || a.runs != b.runs || a.infeasible != b.infeasible ||
        a.bound_violations != b.bound_violations || a.errors != b.errors ||
        a.mean_ratio_opt != b.mean_ratio_opt || a.mean_ratio_lp != b.mean_ratio_lp ||
        a.ci95_ratio_opt != b.ci95_ratio_opt) {
      return false;
    }
  }
  return true;
}

BenchSummary summarize(const std::vector<TrialReport>& reports, const std::vector<std::string>& algorithms) {
  BenchSummary s;
  s.trials = static_cast<int>(reports.size());
  for (const auto& r : reports) {
    s.violations += static_cast<int>(r.violations.size());
    s.errors += static_cast<int>(r.errors.size());
  }
  for (const auto& name : kBenchAlgorithms) {
    if (std::find(algorithms.begin(), algorithms.end(), name) == algorithms.end()) continue;
    AlgorithmSummary a;
    a.name = name;
    std::vector<Rational> to_opt, to_lp;
    for (const auto& r : reports) {
      for (const auto& x : r.algorithms) {
        if (x.name != name) continue;
        if (!x.error.empty()) {
          ++a.errors;
          continue;
        }
        ++a.runs;
        a.infeasible += !x.feasible;
        a.bound_violations += !x.bound_ok;
        if (r.opt && sgn(*r.opt) > 0) to_opt.push_back(x.cost / *r.opt);
        if (x.lp && sgn(*x.lp) > 0) to_lp.push_back(x.cost / *x.lp);
      }
    }
    auto mean = [](const std::vector<Rational>& v) -> std::optional<Rational> {
      if (v.empty()) return std::nullopt;
      Rational t = 0;
      for (const auto& x : v) t += x;
      return Rational(t / static_cast<long>(v.size()));
    };
    a.mean_ratio_opt = mean(to_opt);
    a.mean_ratio_lp = mean(to_lp);
    if (to_opt.size() >= 2) {
      const double m = a.mean_ratio_opt->get_d();
      double ss = 0;
      for (const auto& x : to_opt) ss += (x.get_d() - m) * (x.get_d() - m);
      const double k = static_cast<double>(to_opt.size());
      a.ci95_ratio_opt = 1.96 * std::sqrt(ss / (k - 1)) / std::sqrt(k);
    }
    s.algorithms.push_back(std::move(a));
  }
  return s;
}

void print_summary(std::ostream& os, const BenchSummary& s) {
  os << "trials " << s.trials << ", violations " << s.violations << ", errors " << s.errors << "\n";
  os << std::left << std::setw(14) << "algorithm" << std::right << std::setw(6) << "runs" << std::setw(12) << "infeasible"
     << std::setw(10) << "bound" << std::setw(8) << "errors" << std::setw(14) << "cost/opt" << std::setw(12) << "±95%"
     << std::setw(12) << "cost/lp" << "\n";
  auto dec = [](const std::optional<Rational>& v) {
    if (!v) return std::string("-");
    std::ostringstream o;
    o << std::fixed << std::setprecision(4) << v->get_d();
    return o.str();
  };
  for (const auto& a : s.algorithms) {
    std::ostringstream ci;
    ci << std::fixed << std::setprecision(4) << a.ci95_ratio_opt;
    os << std::left << std::setw(14) << a.name << std::right << std::setw(6) << a.runs << std::setw(12) << a.infeasible
       << std::setw(10) << a.bound_violations << std::setw(8) << a.errors << std::setw(14) << dec(a.mean_ratio_opt)
       << std::setw(12) << ci.str() << std::setw(12) << dec(a.mean_ratio_lp) << "\n";
  }
}

BenchResult run_benchmark(const BenchConfig& cfg, std::ostream& jsonl) {
  validate_config(cfg);
  BenchResult out;
  for (int t = 0; t < cfg.trials; ++t) {
    TrialReport r = run_trial(cfg, t);
    jsonl << report_to_json(r, cfg.record_runtime) << "\n";
    out.reports.push_back(std::move(r));
  }
  out.summary = summarize(out.reports, cfg.algorithms);
  return out;
}

}  // namespace wtap
