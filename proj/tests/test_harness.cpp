#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "wtap/harness.hpp"

#include <sstream>

using namespace wtap;
using fixtures::q;

namespace {

std::vector<TrialReport> read_lines(const std::string& text) {
  std::vector<TrialReport> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(report_from_json(line));
  return out;
}

BenchConfig small_config() {
  BenchConfig cfg;
  cfg.seed = 99;
  cfg.trials = 6;
  cfg.n_min = 3;
  cfg.n_max = 5;
  cfg.repetitions = 3;
  cfg.strong_max_n = 4;
  return cfg;
}

}  // namespace

TEST_CASE("two vertices, full density, unit costs") {
  Instance inst = gen_random_instance(2, 1, 1, 1, 7);
  CHECK(inst.num_vertices() == 2);
  REQUIRE(inst.num_links() == 1);
  CHECK(inst.link(0).u == 0);
  CHECK(inst.link(0).v == 1);
  CHECK(inst.cost(0) == 1);
}

TEST_CASE("full density on four vertices keeps every non-tree pair") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance inst = gen_random_instance(4, 1, 1, 5, seed);
    int pairs = 0;
    for (VertexId a = 0; a < 4; ++a) {
      for (VertexId b = a + 1; b < 4; ++b) {
        if (inst.parent(b) == a) continue;
        ++pairs;
        CHECK(inst.find_link(a, b).has_value());
      }
    }
    CHECK(pairs == 3);
  }
}

TEST_CASE("generated instances are coverable, in range and reproducible") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    Instance a = gen_random_instance(n, q("3/10"), 2, 9, seed);
    Instance b = gen_random_instance(n, q("3/10"), 2, 9, seed);
    CHECK(serialize_instance(a) == serialize_instance(b));
    for (VertexId v = 1; v < n; ++v) CHECK(a.parent(v) < v);
    std::vector<LinkId> all;
    for (const auto& l : a.links()) {
      all.push_back(l.id);
      CHECK(l.cost >= 2);
      CHECK(l.cost <= 9);
    }
    CHECK(is_feasible(a, all));
    CHECK(serialize_instance(shadow_complete(a)) == serialize_instance(a));
  }
  CHECK_THROWS_AS(gen_random_instance(1, 1, 1, 1, 0), Error);
  CHECK_THROWS_AS(gen_random_instance(3, 0, 1, 1, 0), Error);
}

TEST_CASE("parse a small instance") {
  Instance inst = parse_instance("wtap 2 1\nedge 0 1\nlink 0 1 3/2\n");
  CHECK(inst.num_vertices() == 2);
  REQUIRE(inst.num_links() == 1);
  CHECK(inst.cost(0) == q("3/2"));
  Instance commented = parse_instance("# demo\nwtap 3 1\n\nedge 0 1\nedge 1 2  # second\nlink 0 2 4\n");
  CHECK(commented.cost(0) == 4);
}

TEST_CASE("parse errors carry the line number") {
  CHECK_THROWS_WITH_AS(parse_instance("wtap 2 1\nedge 0 1\nlink 0 1 1/0\n"), doctest::Contains("line 3"), Error);
  CHECK_THROWS_WITH_AS(parse_instance("wtap 2 1\nedge 0 1\nlink 0 1 1/0\n"), doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(parse_instance("wtp 2 1\n"), doctest::Contains("line 1"), Error);
  CHECK_THROWS_WITH_AS(parse_instance("wtap 3 0\nedge 0 1\n"), doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(parse_instance("wtap 2 1\nedge 0 1\nlink 0 1 1\nlink 0 1 2\n"), doctest::Contains("line 4"),
                       Error);
  CHECK_THROWS_WITH_AS(parse_instance("wtap 2 0\nedge 0 1\nvertex 3\n"), doctest::Contains("line 3"), Error);
  CHECK_THROWS_WITH_AS(parse_instance("wtap 2 1\nedge 0 x\n"), doctest::Contains("line 2"), Error);
  CHECK_THROWS_WITH_AS(parse_instance(""), doctest::Contains("missing header"), Error);
}

TEST_CASE("serialize and parse round-trip") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Instance inst = gen_random_instance(2 + static_cast<int>(seed % 8), q("2/5"), 1, 12, seed);
    const std::string text = serialize_instance(inst);
    Instance back = parse_instance(text);
    CHECK(same_structure(inst, back));
    CHECK(serialize_instance(back) == text);
  }
  Instance frac = build_instance(3, fixtures::path_edges(3), {{0, 2, q("7/3")}, {1, 2, q("1/2")}});
  CHECK(serialize_instance(frac) == "wtap 3 2\nedge 0 1\nedge 1 2\nlink 0 2 7/3\nlink 1 2 1/2\n");
  CHECK(same_structure(parse_instance(serialize_instance(frac)), frac));
}

TEST_CASE("up-link restriction") {
  Instance inst = build_instance(3, fixtures::star_edges(3), {{1, 2, 1}, {0, 1, 2}, {0, 2, 3}});
  Instance up = uplink_restriction(inst);
  REQUIRE(up.num_links() == 2);
  CHECK(up.cost(0) == 2);
  CHECK(up.cost(1) == 3);
}

TEST_CASE("bench config parsing") {
  BenchConfig cfg = parse_bench_config(
      "# trial settings\nseed = 5\ntrials=3\nn_min = 3\nn_max = 5\nlink_density = 1/3\ncost_min = 2\ncost_max = 4\n"
      "algorithms = split2, oddcut\ngamma = 1/10\np = 1/2\ndelta = 1/3\nrho_prime = 2\nbeta = 0\nrho = 1\n"
      "strong_max_n = 4\nrepetitions = 2\nrecord_runtime = true\n");
  CHECK(cfg.seed == 5);
  CHECK(cfg.trials == 3);
  CHECK(cfg.n_min == 3);
  CHECK(cfg.n_max == 5);
  CHECK(cfg.link_density == q("1/3"));
  CHECK(cfg.cost_min == 2);
  CHECK(cfg.cost_max == 4);
  CHECK(cfg.algorithms == std::vector<std::string>{"split2", "oddcut"});
  CHECK(cfg.gamma == q("1/10"));
  CHECK(cfg.p == q("1/2"));
  CHECK(cfg.delta == q("1/3"));
  CHECK(cfg.rho_prime == 2);
  CHECK(cfg.beta == 0);
  CHECK(cfg.rho == 1);
  CHECK(cfg.strong_max_n == 4);
  CHECK(cfg.repetitions == 2);
  CHECK(cfg.record_runtime);
  apply_seed_override(cfg, "123");
  CHECK(cfg.seed == 123);
  apply_seed_override(cfg, nullptr);
  CHECK(cfg.seed == 123);
  CHECK_THROWS_WITH_AS(apply_seed_override(cfg, "12x"), doctest::Contains("InvalidConfig"), Error);
}

TEST_CASE("bench config errors") {
  CHECK_THROWS_WITH_AS(parse_bench_config("colour = red\n"), doctest::Contains("unknown key"), Error);
  CHECK_THROWS_WITH_AS(parse_bench_config("algorithms = exact, magic\n"), doctest::Contains("magic"), Error);
  CHECK_THROWS_WITH_AS(parse_bench_config("trials = 0\n"), doctest::Contains("InvalidConfig"), Error);
  CHECK_THROWS_WITH_AS(parse_bench_config("n_min = 5\nn_max = 4\n"), doctest::Contains("n_range"), Error);
  CHECK_THROWS_WITH_AS(parse_bench_config("n_max = 30\n"), doctest::Contains("InvalidConfig"), Error);
  CHECK_THROWS_WITH_AS(parse_bench_config("link_density = 3/2\n"), doctest::Contains("InvalidConfig"), Error);
  CHECK_THROWS_WITH_AS(parse_bench_config("gamma = 4/5\n"), doctest::Contains("InvalidConfig"), Error);
  CHECK_THROWS_WITH_AS(parse_bench_config("seed 4\n"), doctest::Contains("line 1"), Error);
  CHECK_THROWS_WITH_AS(parse_bench_config("trials = many\n"), doctest::Contains("InvalidConfig"), Error);
}

TEST_CASE("one trial on a single edge: every algorithm pays the one link") {
  BenchConfig cfg;
  cfg.trials = 1;
  cfg.n_min = cfg.n_max = 2;
  cfg.link_density = 1;
  cfg.cost_min = cfg.cost_max = 1;
  cfg.strong_max_n = 2;
  cfg.repetitions = 4;
  std::ostringstream out;
  BenchResult res = run_benchmark(cfg, out);
  REQUIRE(res.reports.size() == 1);
  const TrialReport& r = res.reports[0];
  CHECK(r.errors.empty());
  CHECK(r.violations.empty());
  CHECK(*r.opt == 1);
  CHECK(*r.cut == 1);
  CHECK(*r.oddcut == 1);
  CHECK(*r.strong == 1);
  REQUIRE(r.algorithms.size() == kBenchAlgorithms.size());
  for (const auto& a : r.algorithms) {
    CHECK(a.error.empty());
    CHECK(a.cost == 1);
    CHECK(a.feasible);
  }
  for (const auto& a : res.summary.algorithms) {
    CHECK(a.mean_ratio_opt == Rational(1));
    CHECK(a.mean_ratio_lp == Rational(1));
  }
}

TEST_CASE("split2 stays within twice the cut LP") {
  BenchConfig cfg;
  cfg.seed = 2024;
  cfg.trials = 200;
  cfg.n_min = 3;
  cfg.n_max = 7;
  cfg.algorithms = {"split2"};
  std::ostringstream out;
  BenchResult res = run_benchmark(cfg, out);
  CHECK(res.summary.violations == 0);
  CHECK(res.summary.errors == 0);
  REQUIRE(res.summary.algorithms.size() == 1);
  CHECK(res.summary.algorithms[0].runs == 200);
  CHECK(res.summary.algorithms[0].bound_violations == 0);
}

TEST_CASE("bench output is byte-identical for a fixed seed") {
  BenchConfig cfg = small_config();
  std::ostringstream a, b, c;
  run_benchmark(cfg, a);
  run_benchmark(cfg, b);
  CHECK(a.str() == b.str());
  CHECK(!a.str().empty());
  apply_seed_override(cfg, "100");
  run_benchmark(cfg, c);
  CHECK(a.str() != c.str());
}

TEST_CASE("summary recomputed from the JSON lines matches") {
  BenchConfig cfg = small_config();
  std::ostringstream out;
  BenchResult res = run_benchmark(cfg, out);
  CHECK(res.summary.violations == 0);
  const auto back = read_lines(out.str());
  REQUIRE(back.size() == res.reports.size());
  CHECK(summarize(back, cfg.algorithms) == res.summary);
  for (size_t i = 0; i < back.size(); ++i) CHECK(report_to_json(back[i], false) == report_to_json(res.reports[i], false));
  std::ostringstream table;
  print_summary(table, res.summary);
  CHECK(table.str().find("full149") != std::string::npos);
}

TEST_CASE("runtime appears only on request") {
  BenchConfig cfg = small_config();
  cfg.trials = 1;
  std::ostringstream plain, timed;
  run_benchmark(cfg, plain);
  cfg.record_runtime = true;
  run_benchmark(cfg, timed);
  CHECK(plain.str().find("runtime_ms") == std::string::npos);
  CHECK(timed.str().find("runtime_ms") != std::string::npos);
}

TEST_CASE("report lines carry rationals as p/q strings") {
  BenchConfig cfg = small_config();
  cfg.trials = 1;
  std::ostringstream out;
  run_benchmark(cfg, out);
  CHECK(out.str().find("\"opt\":\"") != std::string::npos);
  CHECK(out.str().find("/1\"") != std::string::npos);
  CHECK_THROWS_WITH_AS(report_from_json("{not json"), doctest::Contains("ParseError"), Error);
}
