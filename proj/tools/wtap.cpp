#include "wtap/cleanup.hpp"
#include "wtap/classic_round.hpp"
#include "wtap/exact.hpp"
#include "wtap/harness.hpp"
#include "wtap/strong.hpp"
#include "wtap/structured.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace wtap;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Rational rational_arg(const std::string& text, const char* what) {
  Rational r;
  if (!parse_rational(text, r)) throw Error(ErrorCode::InvalidConfig, std::string("bad rational for ") + what);
  return r;
}

void print_solution(const ExactSolution& s) {
  std::cout << "cost " << format_rational_short(s.cost) << "\nlinks";
  for (LinkId id : s.links) std::cout << " " << id;
  std::cout << "\n";
}

void print_values(const FractionalSolution& x) {
  std::cout << "objective " << format_rational_short(x.objective_value) << "\n";
  for (LinkId id = 0; id < static_cast<LinkId>(x.values.size()); ++id) {
    if (sgn(x.values[id]) != 0) std::cout << "x " << id << " " << format_rational_short(x.values[id]) << "\n";
  }
}

struct StructuredArgs {
  std::string delta = "1/4";
  int rho_prime = 0;
};

StructuredSolution structured_for(const Instance& inst, const StructuredArgs& a, std::vector<VertexId>& v_cor) {
  v_cor = select_vcor(inst, odd_cut_lp(inst), rational_arg(a.delta, "delta"));
  const int rho_prime = a.rho_prime > 0 ? a.rho_prime : default_rho_prime(inst, v_cor);
  return solve_structured(inst, v_cor, rho_prime);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted tree augmentation laboratory"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  int gen_n = 6, gen_cmin = 1, gen_cmax = 10;
  std::string gen_density = "3/10", gen_out;
  std::uint64_t gen_seed = 1;
  gen->add_option("-n,--n", gen_n, "Vertices")->check(CLI::Range(2, 64));
  gen->add_option("--density", gen_density, "Link probability per non-tree pair (p/q)");
  gen->add_option("--cost-min", gen_cmin, "Smallest link cost");
  gen->add_option("--cost-max", gen_cmax, "Largest link cost");
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("-o,--out", gen_out, "Output file (stdout when absent)");

  // solve
  auto* solve = app.add_subcommand("solve", "Run one algorithm on an instance");
  std::string solve_in, solve_algo = "exact";
  std::uint64_t solve_seed = 1;
  std::string solve_gamma = "3/20", solve_p = "25/53";
  StructuredArgs solve_sargs;
  solve->add_option("--in", solve_in, "Instance file")->required();
  solve->add_option("--algo", solve_algo, "Algorithm")
      ->check(CLI::IsMember({"exact", "dp", "split2", "oddcut", "structured15", "full149"}));
  solve->add_option("--seed", solve_seed, "Seed for randomized algorithms");
  solve->add_option("--gamma", solve_gamma, "Cleanup threshold (p/q)");
  solve->add_option("--p", solve_p, "Odd-cut branch probability for full149 (p/q)");
  solve->add_option("--delta", solve_sargs.delta, "Correlation threshold (p/q)");
  solve->add_option("--rho-prime", solve_sargs.rho_prime, "Structured LP smallness bound (0: automatic)");

  // lp
  auto* lp = app.add_subcommand("lp", "Solve or dump an LP relaxation");
  std::string lp_in, lp_which = "oddcut";
  int lp_beta = 1, lp_rho = 2;
  bool dump_lp = false, dump_strong_lp = false;
  StructuredArgs lp_sargs;
  lp->add_option("--in", lp_in, "Instance file")->required();
  lp->add_option("--which", lp_which, "Relaxation")->check(CLI::IsMember({"cut", "oddcut", "structured", "strong"}));
  lp->add_option("--beta", lp_beta, "Strong LP leaf slack (subtrees have at most beta+3 leaves)");
  lp->add_option("--rho", lp_rho, "Strong LP smallness bound");
  lp->add_option("--delta", lp_sargs.delta, "Correlation threshold (p/q)");
  lp->add_option("--rho-prime", lp_sargs.rho_prime, "Structured LP smallness bound (0: automatic)");
  lp->add_flag("--dump-lp", dump_lp, "Print the program instead of solving it");
  lp->add_flag("--dump-strong-lp", dump_strong_lp, "Print the Strong LP");

  // check
  auto* check = app.add_subcommand("check", "Check that a link set covers every edge");
  std::string check_in, check_links;
  check->add_option("--in", check_in, "Instance file")->required();
  check->add_option("--links", check_links, "File of link ids")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Run a benchmark configuration");
  std::string bench_config, bench_out;
  bench->add_option("--config", bench_config, "key=value configuration file")->required();
  bench->add_option("-o,--out", bench_out, "JSON-lines report (stdout when absent)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      Instance inst = gen_random_instance(gen_n, rational_arg(gen_density, "density"), gen_cmin, gen_cmax, gen_seed);
      const std::string text = serialize_instance(inst);
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream(gen_out) << text;
      }
      return 0;
    }
    if (*solve) {
      Instance inst = parse_instance(read_file(solve_in));
      if (solve_algo == "exact") {
        print_solution(brute_force_opt(inst));
      } else if (solve_algo == "dp") {
        print_solution(uplink_dp_opt(inst));
      } else if (solve_algo == "split2") {
        print_solution(split_round_2approx(inst));
      } else {
        std::vector<VertexId> v_cor;
        StructuredSolution sol = structured_for(inst, solve_sargs, v_cor);
        if (solve_algo == "oddcut") {
          print_solution(odd_cut_rounding(inst, sol.z, v_cor));
        } else {
          Params149 params{rational_arg(solve_gamma, "gamma"), rational_arg(solve_p, "p")};
          Combiner combiner(inst, sol, params);
          CombinedRun run = solve_algo == "structured15" ? combiner.run_15(solve_seed) : combiner.run_149(solve_seed);
          print_solution(run.solution);
          std::cout << "branch " << (run.odd_cut_branch ? "oddcut" : "structured") << "\nmultiset_cost "
                    << format_rational_short(run.multiset_cost) << "\nz_cost "
                    << format_rational_short(sol.z.objective_value) << "\n";
        }
      }
      return 0;
    }
    if (*lp) {
      Instance inst = parse_instance(read_file(lp_in));
      if (dump_strong_lp || (dump_lp && lp_which == "strong")) {
        write_lp(std::cout, build_strong_lp(inst, lp_beta, lp_rho).lp);
        return 0;
      }
      if (dump_lp) {
        if (lp_which == "cut") {
          write_lp(std::cout, cut_lp_program(inst));
        } else if (lp_which == "oddcut") {
          write_lp(std::cout, odd_cut_lp_program(inst));
        } else {
          std::vector<VertexId> v_cor = select_vcor(inst, odd_cut_lp(inst), rational_arg(lp_sargs.delta, "delta"));
          const int rho_prime = lp_sargs.rho_prime > 0 ? lp_sargs.rho_prime : default_rho_prime(inst, v_cor);
          write_lp(std::cout, build_structured_lp(inst, v_cor, rho_prime).lp);
        }
        return 0;
      }
      if (lp_which == "cut") {
        print_values(cut_lp(inst));
      } else if (lp_which == "oddcut") {
        print_values(odd_cut_lp(inst));
      } else if (lp_which == "structured") {
        std::vector<VertexId> v_cor;
        write_structured(std::cout, structured_for(inst, lp_sargs, v_cor));
      } else {
        StrongLpValue v = solve_strong_lp(inst, lp_beta, lp_rho);
        std::cout << "events " << v.events << "\nrows " << v.rows << "\ncolumns " << v.columns << "\n";
        print_values(v.x);
      }
      return 0;
    }
    if (*check) {
      Instance inst = parse_instance(read_file(check_in));
      std::istringstream ids(read_file(check_links));
      std::vector<LinkId> links;
      for (std::string tok; ids >> tok;) {
        try {
          links.push_back(std::stoi(tok));
        } catch (const std::exception&) {
          throw Error(ErrorCode::ParseError, "bad link id `" + tok + "`");
        }
        if (links.back() < 0 || links.back() >= inst.num_links()) {
          throw Error(ErrorCode::UnknownLink, "link " + tok);
        }
      }
      const bool ok = is_feasible(inst, links);
      std::cout << (ok ? "feasible" : "infeasible") << "\ncost " << format_rational_short(inst.total_cost(links))
                << "\n";
      return ok ? 0 : 1;
    }
    if (*bench) {
      BenchConfig cfg = parse_bench_config(read_file(bench_config));
      apply_seed_override(cfg, std::getenv("WTAP_SEED"));
      BenchResult res;
      if (bench_out.empty()) {
        res = run_benchmark(cfg, std::cout);
        print_summary(std::cerr, res.summary);
      } else {
        std::ofstream out(bench_out);
        res = run_benchmark(cfg, out);
        print_summary(std::cout, res.summary);
      }
      return res.summary.violations == 0 ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
